use std::fmt::Display;
use std::path::PathBuf;

use lfa_core::composite::{
    composite_scores, factor_contributions, region_scores, scores_csv, sweep, top_k, v_score,
    CompositeDefinition, CompositeScores, Dimension, RankKey,
};
use lfa_core::datamodel::{describe, parse_table, standardize, AttributeTable};
use lfa_core::engine::{dominant_attributes, factor_scores, fit, DominantAttributeMap, FactorModel, FactorScores};
use lfa_core::format::f6;
use lfa_core::synth::{self, PlantedStructure};

use crate::config::RunConfig;
use crate::manifest::{sha256_hex, CompositeSummary, FitSummary, RunManifest};
use crate::CliError;

/// One subcommand invocation: writes files into the output directory, prints progress
/// to stdout unless quiet, and mirrors every warning to stderr and the manifest.
pub struct Session {
    pub config: RunConfig,
    pub quiet: bool,
    manifest: RunManifest,
}

struct Loaded {
    table: AttributeTable,
}

struct Fitted {
    model: FactorModel,
    dominant: DominantAttributeMap,
    scores: FactorScores,
}

impl Session {
    pub fn new(command: &str, config: RunConfig, quiet: bool) -> Result<Self, CliError> {
        config.validate()?;
        let manifest = RunManifest::new(command, &config);
        Ok(Self {
            config,
            quiet,
            manifest,
        })
    }

    fn info(&self, msg: impl Display) {
        if !self.quiet {
            println!("{msg}");
        }
    }

    fn warn(&mut self, w: impl Display) {
        let text = w.to_string();
        eprintln!("warning: {text}");
        self.manifest.warnings.push(text);
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let dir = &self.config.out;
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.manifest.outputs.push(name.to_string());
        Ok(())
    }

    fn finish(mut self) -> Result<(), CliError> {
        let json = self.manifest.to_json();
        self.write("manifest.json", &json)?;
        Ok(())
    }

    fn load(&mut self) -> Result<Loaded, CliError> {
        let path = self.config.input_path()?.to_path_buf();
        let bytes = std::fs::read(&path).map_err(|e| CliError::io(&path, e))?;
        let table = parse_table(bytes.as_slice(), &self.config.ingest())?;
        self.manifest.input_sha256 = Some(sha256_hex(&bytes));
        self.manifest.n_attributes = Some(table.n_attributes());
        self.manifest.n_regions = Some(table.n_regions());
        let touched = table.provenance().len();
        if touched > 0 {
            self.warn(format!(
                "missing-value policy `{}` changed {touched} cell(s); see provenance.log",
                missing_label(&self.config)
            ));
        }
        let log = table.provenance_log();
        self.write("provenance.log", &log)?;
        Ok(Loaded { table })
    }

    fn fit(&mut self, loaded: &Loaded) -> Result<Fitted, CliError> {
        let a = standardize(&loaded.table)?;
        let fitted = fit(&a, &self.config.engine())?;
        let mut model = fitted.model;
        if let Some(order) = &self.config.factor_order {
            let zero_based: Vec<usize> = order.iter().map(|q| q - 1).collect();
            model = model.reorder(&zero_based)?;
        }
        for w in model.warnings.clone() {
            self.warn(w);
        }
        let dominant = dominant_attributes(&model.rotated_loadings, &model.attribute_names);
        for w in dominant.warnings.clone() {
            self.warn(w);
        }
        let scores = factor_scores(&model.scoring_weights, &a)?;
        self.manifest.fit = Some(FitSummary {
            converged: model.converged,
            iterations_used: model.iterations_used,
            n_factors: model.n_factors(),
            retention: format!(
                "eigenvalue >= {} on the first reduced correlation matrix, held fixed",
                self.config.kaiser_threshold
            ),
            eigenvalues: model.eigenvalues.clone(),
            cumulative_variance_percent: model.cumulative_variance_percent.clone(),
        });
        Ok(Fitted {
            model,
            dominant,
            scores,
        })
    }

    fn write_fit(&mut self, f: &Fitted) -> Result<(), CliError> {
        let m = &f.model;
        self.write("loadings.csv", &m.loadings_csv(&f.dominant))?;
        self.write("eigenvalues.csv", &m.eigenvalues_csv())?;
        self.write("weights.csv", &m.weights_csv())?;
        self.info(format!(
            "M={} converged={} iterations={} cumulative_variance={}%",
            m.n_factors(),
            m.converged,
            m.iterations_used,
            f6(m.cumulative_variance_percent.last().copied().unwrap_or(0.0))
        ));
        Ok(())
    }

    fn composites(&mut self, f: &Fitted) -> Result<(CompositeDefinition, CompositeScores), CliError> {
        let def = self.config.composite_definition()?;
        def.check_factor_count(f.model.n_factors())?;
        self.manifest.composite = Some(
            def.entries()
                .iter()
                .enumerate()
                .map(|(k, e)| CompositeSummary {
                    factor: k + 1,
                    dimension: match e.dimension {
                        Dimension::Suitability => "suitability".into(),
                        Dimension::Attractiveness => "attractiveness".into(),
                    },
                    sign: e.sign,
                })
                .collect(),
        );
        let comp = composite_scores(&f.scores, &def)?;
        Ok((def, comp))
    }
}

pub fn cmd_describe(config: RunConfig, quiet: bool) -> Result<(), CliError> {
    let mut s = Session::new("describe", config, quiet)?;
    let loaded = s.load()?;
    let stats = describe(&loaded.table);
    for w in stats.warnings.clone() {
        s.warn(w);
    }
    s.write("stats.csv", &stats.to_csv())?;
    // the summary line is the command's result, so it ignores --quiet
    println!("N={} R={}", loaded.table.n_attributes(), loaded.table.n_regions());
    s.finish()
}

pub fn cmd_fit(config: RunConfig, quiet: bool) -> Result<(), CliError> {
    let mut s = Session::new("fit", config, quiet)?;
    let loaded = s.load()?;
    let fitted = s.fit(&loaded)?;
    s.write_fit(&fitted)?;
    s.finish()
}

pub fn cmd_score(config: RunConfig, quiet: bool) -> Result<(), CliError> {
    let mut s = Session::new("score", config, quiet)?;
    // reject a bad alpha before doing any work
    v_score(0.0, 0.0, s.config.alpha)?;
    let loaded = s.load()?;
    let fitted = s.fit(&loaded)?;
    s.write_fit(&fitted)?;
    let (def, comp) = s.composites(&fitted)?;
    let alpha = s.config.alpha;
    let rows = region_scores(&fitted.scores, &def, alpha, &s.config.typology())?;
    s.write("scores.csv", &scores_csv(&rows))?;

    let k = s.config.top_k.min(comp.len());
    let mut ranked = String::from("key,rank,region_id,value\n");
    let mut best_v = Vec::new();
    for (label, key) in [
        ("suitability", RankKey::Suitability),
        ("attractiveness", RankKey::Attractiveness),
        ("v_score", RankKey::VScore(alpha)),
    ] {
        let top = top_k(&comp, k, key)?;
        for (rank, r) in top.iter().enumerate() {
            ranked.push_str(&format!("{label},{},{},{}\n", rank + 1, r.region_id, f6(r.value)));
        }
        if matches!(key, RankKey::VScore(_)) {
            best_v = top.into_iter().map(|r| r.region_id).collect();
        }
    }
    s.write("top_k.csv", &ranked)?;

    let contrib = factor_contributions(&fitted.scores, &def, &best_v)?;
    let mut out = String::from("region_id");
    for q in 1..=fitted.model.n_factors() {
        out.push_str(&format!(",f_{q}_pct"));
    }
    out.push('\n');
    for c in contrib {
        out.push_str(&c.region_id);
        for p in c.percent {
            out.push(',');
            out.push_str(&f6(p));
        }
        out.push('\n');
    }
    s.write("contributions.csv", &out)?;
    s.info(format!("scored {} regions at alpha={alpha}", comp.len()));
    s.finish()
}

pub fn cmd_sweep(config: RunConfig, quiet: bool) -> Result<(), CliError> {
    let mut s = Session::new("sweep", config, quiet)?;
    let loaded = s.load()?;
    let fitted = s.fit(&loaded)?;
    s.write_fit(&fitted)?;
    let (_, comp) = s.composites(&fitted)?;
    let alphas = s.config.alphas()?;
    let grid = sweep(&comp, &alphas, &s.config.thetas)?;
    s.write("sweep_wide.csv", &grid.wide_csv())?;
    s.write("sweep_long.csv", &grid.long_csv())?;

    let k = s.config.top_v.min(comp.len());
    let mut out = String::from("alpha,rank,region_id,v_score\n");
    for &alpha in &alphas {
        for (rank, r) in top_k(&comp, k, RankKey::VScore(alpha))?.iter().enumerate() {
            out.push_str(&format!("{alpha:?},{},{},{}\n", rank + 1, r.region_id, f6(r.value)));
        }
    }
    s.write("top_v_scores.csv", &out)?;
    s.info(format!(
        "swept {} thetas x {} alphas over {} regions",
        grid.thetas.len(),
        grid.alphas.len(),
        grid.n_regions
    ));
    s.finish()
}

/// Writes `synthetic.csv` drawn from the planted urban structure.
pub fn cmd_synth(config: RunConfig, quiet: bool) -> Result<PathBuf, CliError> {
    let mut s = Session::new("synth", config, quiet)?;
    let planted = PlantedStructure::urban();
    let cfg = s.config.synth();
    let table = synth::generate(&planted, &cfg)?;
    let text = synth::to_csv(&table, &planted, &cfg);
    s.write("synthetic.csv", &text)?;
    s.manifest.n_attributes = Some(table.n_attributes());
    s.manifest.n_regions = Some(table.n_regions());
    let path = s.config.out.join("synthetic.csv");
    s.info(format!("wrote {}", path.display()));
    s.finish()?;
    Ok(path)
}

fn missing_label(config: &RunConfig) -> String {
    serde_json::to_value(config.missing)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}
