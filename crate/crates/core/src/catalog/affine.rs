use num_integer::Integer;

use super::{minimize_matrix, sqrt_int, CatalogError, Metadata};
use crate::cyclo::{Cyclo, CycloError, Rational};
use crate::matrix::Matrix;
use crate::moddata::{exp_2pi_i, ModularData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algebra {
    A1,
    A2,
}

impl Algebra {
    pub fn rank(self) -> usize {
        match self {
            Algebra::A1 => 1,
            Algebra::A2 => 2,
        }
    }

    pub fn dual_coxeter(self) -> i64 {
        self.rank() as i64 + 1
    }

    pub fn dim(self) -> i64 {
        match self {
            Algebra::A1 => 3,
            Algebra::A2 => 8,
        }
    }

    fn positive_roots(self) -> u32 {
        match self {
            Algebra::A1 => 1,
            Algebra::A2 => 3,
        }
    }

    fn cartan(self) -> Vec<Vec<i64>> {
        match self {
            Algebra::A1 => vec![vec![2]],
            Algebra::A2 => vec![vec![2, -1], vec![-1, 2]],
        }
    }

    /// Highest root in Dynkin labels.
    fn theta(self) -> Vec<i64> {
        match self {
            Algebra::A1 => vec![2],
            Algebra::A2 => vec![1, 1],
        }
    }

    /// (x, y) for weights in Dynkin labels.
    fn inner(self, x: &[i64], y: &[i64]) -> Rational {
        match self {
            Algebra::A1 => Rational::new((x[0] * y[0]).into(), 2.into()),
            Algebra::A2 => Rational::new(
                (2 * x[0] * y[0] + x[0] * y[1] + x[1] * y[0] + 2 * x[1] * y[1]).into(),
                3.into(),
            ),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::A1 => "a1",
            Algebra::A2 => "a2",
        }
    }
}

impl std::str::FromStr for Algebra {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(Algebra::A1),
            "a2" => Ok(Algebra::A2),
            other => Err(format!("unknown algebra `{other}` (expected a1 or a2)")),
        }
    }
}

/// Weyl group as (matrix acting on Dynkin labels, determinant).
fn weyl_group(alg: Algebra) -> Vec<(Vec<Vec<i64>>, i8)> {
    let r = alg.rank();
    let a = alg.cartan();
    let simple: Vec<Vec<Vec<i64>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    (0..r)
                        .map(|k| i64::from(j == k) - if k == i { a[i][j] } else { 0 })
                        .collect()
                })
                .collect()
        })
        .collect();
    let id: Vec<Vec<i64>> = (0..r)
        .map(|j| (0..r).map(|k| i64::from(j == k)).collect())
        .collect();
    let mut group = vec![(id, 1i8)];
    let mut i = 0;
    while i < group.len() {
        for s in &simple {
            let (g, d) = &group[i];
            let prod: Vec<Vec<i64>> = (0..r)
                .map(|j| (0..r).map(|k| (0..r).map(|m| s[j][m] * g[m][k]).sum()).collect())
                .collect();
            if !group.iter().any(|(h, _)| *h == prod) {
                group.push((prod, -d));
            }
        }
        i += 1;
    }
    group
}

fn apply(w: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    w.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// P₊ᵏ in Dynkin labels (λ₁, …), vacuum first, then lexicographic.
pub fn affine_weights(alg: Algebra, k: u32) -> Vec<Vec<i64>> {
    let k = k as i64;
    match alg {
        Algebra::A1 => (0..=k).map(|a| vec![a]).collect(),
        Algebra::A2 => {
            let mut out = Vec::new();
            for a in 0..=k {
                for b in 0..=(k - a) {
                    out.push(vec![a, b]);
                }
            }
            out
        }
    }
}

fn label_of(k: i64, lam: &[i64]) -> String {
    let l0 = k - lam.iter().sum::<i64>();
    let parts: Vec<String> = std::iter::once(l0)
        .chain(lam.iter().copied())
        .map(|x| x.to_string())
        .collect();
    format!("({})", parts.join(","))
}

fn shifted(lam: &[i64]) -> Vec<i64> {
    lam.iter().map(|x| x + 1).collect()
}

/// i^{−|Δ+|} / √((r+1)κ^r): the constant in front of the Weyl-group sum.
fn prefactor(alg: Algebra, kappa: i64) -> Result<Cyclo, CycloError> {
    let r = alg.rank() as u32;
    let vol = (r as u64 + 1) * (kappa as u64).pow(r);
    let phase = Cyclo::root_of_unity(4, -(alg.positive_roots() as i64));
    phase.checked_mul(&sqrt_int(vol)?.inv()?)
}

/// Affine A_r at level k with the Kac–Peterson S in the (ST)³ = I convention,
/// i.e. the complex conjugate of the usual e^{−2πi(·,·)/κ} form.
pub fn affine_data(alg: Algebra, k: u32) -> Result<ModularData, CatalogError> {
    if k == 0 {
        return Err(CatalogError::ZeroLevel);
    }
    let kappa = k as i64 + alg.dual_coxeter();
    let weights = affine_weights(alg, k);
    let n = weights.len();
    let weyl = weyl_group(alg);
    let pre = prefactor(alg, kappa)?;
    let kq = Rational::from_integer(kappa.into());
    let s = Matrix::try_from_fn(n, |a, b| {
        let x = shifted(&weights[a]);
        let y = shifted(&weights[b]);
        let mut sum = Cyclo::zero();
        for (w, det) in &weyl {
            let e = exp_2pi_i(&(alg.inner(&apply(w, &x), &y) / &kq))?;
            sum = if *det > 0 {
                sum.checked_add(&e)?
            } else {
                sum.checked_sub(&e)?
            };
        }
        sum.checked_mul(&pre)
    })?;
    let (s, m) = minimize_matrix(&s)?;
    let c24 = Rational::new(alg.dim().into(), 24.into());
    let t = weights
        .iter()
        .map(|lam| {
            let x = shifted(lam);
            alg.inner(&x, &x) / (&kq * Rational::from_integer(2.into())) - &c24
        })
        .collect();
    let labels = weights.iter().map(|l| label_of(k as i64, l)).collect();
    Ok(ModularData::with_order(s, t, m)?.with_labels(labels))
}

/// c = k·dim/(k + h∨) and h_λ = ((λ+ρ)² − ρ²)/(2(k + h∨)).
pub fn affine_metadata(alg: Algebra, k: u32) -> Metadata {
    let kappa = k as i64 + alg.dual_coxeter();
    let rho = vec![1; alg.rank()];
    let rho2 = alg.inner(&rho, &rho);
    let denom = Rational::from_integer((2 * kappa).into());
    Metadata {
        c: Rational::new((k as i64 * alg.dim()).into(), kappa.into()),
        h: affine_weights(alg, k)
            .iter()
            .map(|lam| {
                let x = shifted(lam);
                (alg.inner(&x, &x) - &rho2) / &denom
            })
            .collect(),
        note: Some(format!("{} level {k}", alg.name())),
    }
}

/// Solve λ⁺ + ρ = w(ℓ(λ+ρ)) + κα by folding into the fundamental alcove.
/// Returns λ⁺ and the Galois sign ε_ℓ(λ) = det(w)·σ_ℓ(c)/c, with c the S prefactor.
/// ℓ must be coprime to 4(r+1)κ so that σ_ℓ acts on c.
pub fn affine_galois_weight(
    alg: Algebra,
    k: u32,
    ell: i64,
    lam: &[i64],
) -> Result<(Vec<i64>, i8), CatalogError> {
    let kappa = k as i64 + alg.dual_coxeter();
    let a = alg.cartan();
    let theta = alg.theta();
    let r = alg.rank();
    let guard = 4 * (r as i64 + 1) * kappa;
    if ell.gcd(&guard) != 1 {
        return Err(CatalogError::NoGaloisImage {
            ell,
            why: format!("not coprime to {guard}"),
        });
    }
    let mut v: Vec<i64> = shifted(lam).iter().map(|x| x * ell).collect();
    let mut det = 1i8;
    loop {
        if let Some(i) = (0..r).find(|&i| v[i] < 0) {
            let vi = v[i];
            for j in 0..r {
                v[j] -= vi * a[i][j];
            }
            det = -det;
            continue;
        }
        // (θ, v) is the sum of the labels for A1 and A2 alike.
        let v0 = kappa - v.iter().sum::<i64>();
        if v0 < 0 {
            for j in 0..r {
                v[j] += v0 * theta[j];
            }
            det = -det;
            continue;
        }
        if v0 == 0 || v.iter().any(|&x| x == 0) {
            return Err(CatalogError::NoGaloisImage {
                ell,
                why: format!("ℓ(λ+ρ) lies on an alcove wall for κ = {kappa}"),
            });
        }
        break;
    }
    let pre = prefactor(alg, kappa)?;
    let ratio = pre.galois(ell)?.checked_div(&pre)?;
    let unit = match ratio.as_i64() {
        Some(1) => 1i8,
        Some(-1) => -1i8,
        _ => {
            return Err(CatalogError::NoGaloisImage {
                ell,
                why: "prefactor ratio is not ±1".into(),
            })
        }
    };
    Ok((v.iter().map(|x| x - 1).collect(), det * unit))
}
