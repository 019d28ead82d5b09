//! Exact modular data for rational conformal field theories: cyclotomic
//! arithmetic, fusion rules, Galois symmetries and the congruence test.

pub mod arith;
pub mod bantay;
pub mod catalog;
pub mod cli;
pub mod congruence;
pub mod cyclo;
pub mod format;
pub mod galois;
pub mod matrix;
pub mod moddata;

pub use cyclo::{Cyclo, CycloError, Rational};
pub use matrix::Matrix;
pub use moddata::{DataError, ModularData};

/// Outcome of a check that may not apply to every input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    NotApplicable(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(why) => write!(f, "fail: {why}"),
            Verdict::NotApplicable(why) => write!(f, "not applicable: {why}"),
        }
    }
}
