//! Exact arithmetic in cyclotomic fields Q[ξ_M].

mod coeffs;
mod field;
mod literal;
mod number;

use std::sync::atomic::{AtomicU32, Ordering};

pub use field::{divisors, euler_phi, units_mod};
pub use literal::{format_literal, parse_literal};
pub use number::Cyclo;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub const DEFAULT_ORDER_LIMIT: u32 = 10_000;

static ORDER_LIMIT: AtomicU32 = AtomicU32::new(DEFAULT_ORDER_LIMIT);

pub fn order_limit() -> u32 {
    ORDER_LIMIT.load(Ordering::Relaxed)
}

/// Largest field order any operation may create.
pub fn set_order_limit(limit: u32) {
    ORDER_LIMIT.store(limit.max(1), Ordering::Relaxed);
}

pub(crate) fn check_order(m: u32) -> Result<(), CycloError> {
    let limit = order_limit();
    if m > limit {
        Err(CycloError::OrderLimit {
            order: m as u64,
            limit,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("field order {order} exceeds the limit {limit}")]
    OrderLimit { order: u64, limit: u32 },
    #[error("{ell} is not coprime to the field order {order}")]
    NotCoprime { ell: i64, order: u32 },
    #[error("cannot embed order {from} into order {to}")]
    NotMultiple { from: u32, to: u32 },
    #[error("column {col}: {msg}")]
    Parse { col: usize, msg: String },
}
