pub mod invariants;
pub mod oracle;
pub mod reference;
