use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{minimize_matrix, sqrt_int, CatalogError, Metadata};
use crate::cyclo::{Cyclo, Rational};
use crate::matrix::Matrix;
use crate::moddata::ModularData;

/// Compactified boson on the lattice √n·Z: S_ab = ξ_n^{ab}/√n, r_a = a²/(2n) − 1/24.
pub fn lattice_data(n: u32) -> Result<ModularData, CatalogError> {
    if n < 2 || n % 2 == 1 {
        return Err(CatalogError::OddLattice(n));
    }
    let inv_sqrt = sqrt_int(n as u64)?.inv()?;
    let nn = n as usize;
    let s = Matrix::try_from_fn(nn, |a, b| {
        Cyclo::try_root_of_unity(n, (a * b % nn) as i64)?.checked_mul(&inv_sqrt)
    })?;
    let (s, m) = minimize_matrix(&s)?;
    let t = (0..n as i64)
        .map(|a| {
            Rational::new((a * a).into(), (2 * n as i64).into()) - Rational::new(1.into(), 24.into())
        })
        .collect();
    Ok(ModularData::with_order(s, t, m)?)
}

/// c = 1 and h_a = min(a, n − a)²/(2n).
pub fn lattice_metadata(n: u32) -> Metadata {
    let n = n as i64;
    Metadata {
        c: Rational::from_integer(1.into()),
        h: (0..n)
            .map(|a| {
                let m = a.min(n - a);
                Rational::new((m * m).into(), (2 * n).into())
            })
            .collect(),
        note: Some(format!("lattice n = {n}")),
    }
}

/// Σ_{k=0}^{|c|−1} e^{πi(ak² + bk)/c}, in Q[ξ_{2|c|}].
pub fn gauss_sum(a: i64, b: i64, c: i64) -> Result<Cyclo, CatalogError> {
    if c == 0 {
        return Err(CatalogError::ZeroModulus);
    }
    let m = 2 * c.unsigned_abs();
    let sign = c.signum();
    let mut terms = Vec::with_capacity(c.unsigned_abs() as usize);
    for k in 0..c.abs() {
        let e = (a as i128 * (k as i128) * (k as i128) + b as i128 * k as i128) * sign as i128;
        let e = e.rem_euclid(m as i128) as i64;
        terms.push((BigRational::from_integer(1.into()), e));
    }
    let m32 = u32::try_from(m).map_err(|_| CatalogError::ZeroModulus)?;
    Ok(Cyclo::from_terms(m32, &terms)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reciprocity {
    /// Largest coordinate difference between the two sides.
    pub error: f64,
    /// |LHS|² and |RHS|² agree exactly.
    pub exact_modulus: bool,
}

impl Reciprocity {
    pub fn holds(&self, tol: f64) -> bool {
        self.error < tol && self.exact_modulus
    }
}

/// S(a,b,c) = √|c/a|·e^{πi(sgn(ac) − b²/(ac))/4}·S(−c,−b,a).
pub fn gauss_reciprocity_check(a: i64, b: i64, c: i64) -> Result<Reciprocity, CatalogError> {
    let ac = a as i128 * c as i128;
    if ac == 0 || (ac + b as i128).rem_euclid(2) != 0 {
        return Err(CatalogError::ReciprocityDomain);
    }
    let lhs = gauss_sum(a, b, c)?;
    let inner = gauss_sum(-c, -b, a)?;
    let (ir, ii) = inner.to_complex();
    let scale = (c as f64 / a as f64).abs().sqrt();
    let phase = std::f64::consts::PI
        * (ac.signum() as f64 - (b as f64) * (b as f64) / (ac as f64))
        / 4.0;
    let (pr, pi) = (phase.cos() * scale, phase.sin() * scale);
    let rhs = (pr * ir - pi * ii, pr * ii + pi * ir);
    let (lr, li) = lhs.to_complex();
    let error = (lr - rhs.0).abs().max((li - rhs.1).abs());

    let lhs_sq = lhs.checked_mul(&lhs.conj())?;
    let ratio = Cyclo::from_rational(&BigRational::new(
        BigInt::from(c).abs(),
        BigInt::from(a).abs(),
    ));
    let rhs_sq = inner.checked_mul(&inner.conj())?.checked_mul(&ratio)?;
    Ok(Reciprocity {
        error,
        exact_modulus: lhs_sq == rhs_sq,
    })
}
