//! Galois symmetries of S: σ_ℓ(S_ab) = ε_ℓ(a)·S_{σa,b}.

use num_integer::Integer;

use crate::arith::{inv_mod, lift_unit};
use crate::cyclo::{Cyclo, CycloError, Rational};
use crate::matrix::Matrix;
use crate::moddata::{frac_mod1, ModularData};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaloisError {
    #[error("{ell} is not coprime to {modulus}")]
    NotCoprime { ell: i64, modulus: u64 },
    #[error("σ_{ell} of row {row} is not a signed row of S")]
    NoMatch { ell: i64, row: usize },
    #[error("σ_{ell} of row {row} matches rows {candidates:?}")]
    AmbiguousMatch {
        ell: i64,
        row: usize,
        candidates: Vec<usize>,
    },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisSymmetry {
    /// ℓ reduced into [1, M].
    pub ell: i64,
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl GaloisSymmetry {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(a, &b)| a == b) && self.signs.iter().all(|&s| s == 1)
    }
}

/// Find the signed permutation with σ_ℓ(S) = G_ℓ S, comparing whole rows.
pub fn extract_galois(md: &ModularData, ell: i64) -> Result<GaloisSymmetry, GaloisError> {
    let m = md.order() as i64;
    let l = ell.rem_euclid(m);
    let l = if l == 0 { m } else { l };
    if (l as u64).gcd(&(m as u64)) != 1 {
        return Err(GaloisError::NotCoprime {
            ell,
            modulus: m as u64,
        });
    }
    let n = md.size();
    let s = md.s();
    let neg: Vec<Vec<Cyclo>> = (0..n).map(|b| s.row(b).iter().map(|z| -z).collect()).collect();
    let mut perm = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for a in 0..n {
        let img: Vec<Cyclo> = s
            .row(a)
            .iter()
            .map(|z| z.galois(l))
            .collect::<Result<_, _>>()?;
        let mut found = Vec::new();
        for b in 0..n {
            if img.as_slice() == s.row(b) {
                found.push((b, 1i8));
            } else if img == neg[b] {
                found.push((b, -1i8));
            }
        }
        match found.as_slice() {
            [] => return Err(GaloisError::NoMatch { ell, row: a }),
            [(b, e)] => {
                perm.push(*b);
                signs.push(*e);
            }
            _ => {
                return Err(GaloisError::AmbiguousMatch {
                    ell,
                    row: a,
                    candidates: found.iter().map(|&(b, _)| b).collect(),
                })
            }
        }
    }
    Ok(GaloisSymmetry {
        ell: l,
        perm,
        signs,
    })
}

/// (G_ℓ)_ab = ε_ℓ(a)·δ_{b,σa}.
pub fn g_matrix(gs: &GaloisSymmetry) -> Matrix {
    Matrix::monomial(&gs.perm, &gs.signs)
}

/// Lift ℓ, given mod N, to an integer coprime to the whole field order lcm(M, N).
pub fn lift_for(md: &ModularData, ell: i64) -> Result<i64, GaloisError> {
    let n = md.t_order();
    lift_unit(ell, n, md.full_order()).ok_or(GaloisError::NotCoprime { ell, modulus: n })
}

/// Galois symmetry for ℓ taken mod N.
pub fn galois_mod_n(md: &ModularData, ell: i64) -> Result<GaloisSymmetry, GaloisError> {
    extract_galois(md, lift_for(md, ell)?)
}

/// r_{σ_ℓ a} ≡ ℓ²·r_a (mod 1) for every a.
pub fn check_condition6(md: &ModularData, ell: i64) -> Result<bool, GaloisError> {
    let gs = extract_galois(md, ell)?;
    let t = md.t_exponents();
    let l2 = Rational::from_integer((ell as i128 * ell as i128).into());
    Ok((0..md.size()).all(|a| t[gs.perm[a]] == frac_mod1(&(&t[a] * &l2))))
}

fn inverse_mod_n(md: &ModularData, ell: i64) -> Result<u64, GaloisError> {
    let n = md.t_order();
    inv_mod(ell, n).ok_or(GaloisError::NotCoprime { ell, modulus: n })
}

fn word(md: &ModularData, parts: &[Part]) -> Result<Matrix, GaloisError> {
    let mut acc = Matrix::identity(md.size());
    for p in parts {
        acc = match p {
            Part::S => acc.checked_mul(md.s())?,
            Part::Diag(d) => acc.mul_diag(d)?,
        };
    }
    Ok(acc)
}

enum Part {
    S,
    Diag(Vec<Cyclo>),
}

/// S·T^{1/ℓ}·S·T^ℓ·S·T^{1/ℓ} with 1/ℓ the inverse mod N.
pub fn g_via_word(md: &ModularData, ell: i64) -> Result<Matrix, GaloisError> {
    let n = md.t_order();
    let u = inverse_mod_n(md, ell)? as i64;
    let l = ell.rem_euclid(n as i64);
    let tu = md.t_pow(u)?;
    let tl = md.t_pow(l)?;
    word(
        md,
        &[
            Part::S,
            Part::Diag(tu.clone()),
            Part::S,
            Part::Diag(tl),
            Part::S,
            Part::Diag(tu),
        ],
    )
}

/// Exponents of T_(ℓ) = G_ℓ T^{1/ℓ²} G_ℓ⁻¹: r'_a = (1/ℓ² mod N)·r_{σa}.
pub fn t_twisted(md: &ModularData, ell: i64) -> Result<Vec<Rational>, GaloisError> {
    let u = inverse_mod_n(md, ell)? as i128;
    let gs = galois_mod_n(md, ell)?;
    let n = md.t_order() as i128;
    let u2 = Rational::from_integer(((u * u) % n.max(1)).into());
    let t = md.t_exponents();
    Ok((0..md.size())
        .map(|a| frac_mod1(&(&t[gs.perm[a]] * &u2)))
        .collect())
}

fn diag_of(exps: &[Rational], k: i64) -> Result<Vec<Cyclo>, CycloError> {
    let k = Rational::from_integer(k.into());
    exps.iter()
        .map(|r| crate::moddata::exp_2pi_i(&(r * &k)))
        .collect()
}

/// The four products for G_ℓ built from T and the twisted T_(ℓ), T_(1/ℓ).
pub fn eq7_expressions(md: &ModularData, ell: i64) -> Result<[Matrix; 4], GaloisError> {
    let n = md.t_order() as i64;
    let u = inverse_mod_n(md, ell)? as i64;
    let l = ell.rem_euclid(n.max(1));
    let t_l = md.t_pow(l)?;
    let t_u = md.t_pow(u)?;
    let tw_l = diag_of(&t_twisted(md, l)?, l)?;
    let tw_u = diag_of(&t_twisted(md, u)?, u)?;
    use Part::{Diag, S};
    let e1 = word(md, &[S, Diag(t_u.clone()), S, Diag(tw_l.clone()), S, Diag(t_u.clone())])?;
    let e2 = word(md, &[Diag(t_l.clone()), S, Diag(tw_u.clone()), S, Diag(t_l.clone()), S])?;
    let e3 = word(md, &[S, Diag(tw_u.clone()), S, Diag(t_l), S, Diag(tw_u)])?;
    let e4 = word(md, &[Diag(tw_l.clone()), S, Diag(t_u), S, Diag(tw_l), S])?;
    Ok([e1, e2, e3, e4])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_theory() {
        let md = ModularData::trivial();
        let gs = extract_galois(&md, 1).unwrap();
        assert!(gs.is_identity());
        assert!(check_condition6(&md, 1).unwrap());
        assert!(g_via_word(&md, 1).unwrap().is_identity());
        assert_eq!(t_twisted(&md, 1).unwrap(), md.t_exponents());
    }
}
