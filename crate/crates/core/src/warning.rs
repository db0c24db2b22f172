use std::fmt;

/// Non-fatal conditions surfaced by the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// A communality estimate left [0, 1] and was clamped.
    Heywood {
        attribute: String,
        iteration: usize,
        value: f64,
    },
    /// A ridge term was added to an ill-conditioned correlation matrix.
    Ridge { condition: f64, ridge: f64 },
    /// Principal-axis iteration hit the cap before the communality change fell below epsilon.
    NonConvergence { iterations: usize, last_change: f64 },
    /// An attribute loads equally on several factors; the lowest index was kept.
    DominantTie { attribute: String, factors: Vec<usize> },
    /// A moment could not be computed (zero variance or too few observations).
    UndefinedMoment { attribute: String, moment: &'static str },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Heywood {
                attribute,
                iteration,
                value,
            } => write!(
                f,
                "heywood case: communality of `{attribute}` was {value} at iteration {iteration}, clamped to [0, 1]"
            ),
            Warning::Ridge { condition, ridge } => write!(
                f,
                "ridge fallback: correlation condition number {condition:e}, added {ridge:e} to the diagonal"
            ),
            Warning::NonConvergence {
                iterations,
                last_change,
            } => write!(
                f,
                "non-convergence: stopped after {iterations} iterations with communality change {last_change:e}"
            ),
            Warning::DominantTie { attribute, factors } => {
                let list: Vec<String> = factors.iter().map(|m| (m + 1).to_string()).collect();
                write!(
                    f,
                    "dominant tie: `{attribute}` loads equally on factors {}, kept factor {}",
                    list.join(", "),
                    list[0]
                )
            }
            Warning::UndefinedMoment { attribute, moment } => {
                write!(f, "undefined moment: {moment} of `{attribute}` reported as NaN")
            }
        }
    }
}
