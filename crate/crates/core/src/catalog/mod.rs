//! Example families: lattice, affine A1/A2, and quantum doubles of finite groups.

mod affine;
mod double;
mod group;
mod lattice;

pub use affine::{affine_data, affine_galois_weight, affine_metadata, affine_weights, Algebra};
pub use double::{
    double_galois_check, double_labels, double_metadata, quantum_double_data, DoubleLabel,
};
pub use group::{builtin_group, from_table, ClassData, GroupData, GroupError};
pub use lattice::{
    gauss_reciprocity_check, gauss_sum, lattice_data, lattice_metadata, Reciprocity,
};

use num_integer::Integer;

use crate::arith::factorize;
use crate::cyclo::{Cyclo, CycloError, Rational};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("lattice size must be even and at least 2, got {0}")]
    OddLattice(u32),
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("Gauss sum modulus must be nonzero")]
    ZeroModulus,
    #[error("reciprocity needs ac ≠ 0 and ac + b even")]
    ReciprocityDomain,
    #[error("{ell} has no Galois image here: {why}")]
    NoGaloisImage { ell: i64, why: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Data(#[from] crate::moddata::DataError),
    #[error(transparent)]
    Galois(#[from] crate::galois::GaloisError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// True central charge and conformal weights, which T only fixes mod 24 and mod 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub c: Rational,
    pub h: Vec<Rational>,
    pub note: Option<String>,
}

/// √n exactly. √2 = ξ₈ + ξ₈⁻¹; odd primes go through the quadratic Gauss sum g_p.
pub fn sqrt_int(n: u64) -> Result<Cyclo, CycloError> {
    let mut out = Cyclo::one();
    for (p, e) in factorize(n) {
        let whole = Cyclo::from_int((p as i64).pow(e / 2));
        out = out.checked_mul(&whole)?;
        if e % 2 == 1 {
            out = out.checked_mul(&sqrt_prime(p)?)?;
        }
    }
    Ok(out)
}

fn sqrt_prime(p: u64) -> Result<Cyclo, CycloError> {
    if p == 2 {
        return Cyclo::root_of_unity(8, 1).checked_add(&Cyclo::root_of_unity(8, 7));
    }
    let p32 = p as u32;
    let mut g = Cyclo::zero();
    for k in 0..p {
        g = g.checked_add(&Cyclo::try_root_of_unity(p32, ((k * k) % p) as i64)?)?;
    }
    if p % 4 == 1 {
        Ok(g)
    } else {
        // g_p = i√p
        g.checked_mul(&Cyclo::root_of_unity(4, 3))
    }
}

/// Re-express every entry at the smallest common order.
pub(crate) fn minimize_matrix(s: &Matrix) -> Result<(Matrix, u32), CycloError> {
    let cond = s
        .entries()
        .iter()
        .fold(1u64, |acc, z| acc.lcm(&(z.conductor() as u64))) as u32;
    let m = s.try_map(|z| {
        z.with_order(cond).ok_or(CycloError::NotMultiple {
            from: z.order(),
            to: cond,
        })
    })?;
    Ok((m, cond))
}
