//! Modular data (S, T), its axioms, Verlinde fusion and the commutant of ⟨S, T⟩.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::{units_mod, Cyclo, CycloError, Rational};
use crate::matrix::{coordinates, nullspace, rref, Matrix};
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DataError {
    #[error("modular data needs at least one primary")]
    Empty,
    #[error("S is {s}x{s} but T has {t} entries")]
    Dimension { s: usize, t: usize },
    #[error("S entry ({a}, {b}) has order {entry}, which does not divide the field order {order}")]
    EntryOrder {
        a: usize,
        b: usize,
        entry: u32,
        order: u32,
    },
    #[error("fusion coefficient N_{{{a},{b}}}^{c} = {value} is not a nonnegative integer")]
    NonIntegralFusion {
        a: usize,
        b: usize,
        c: usize,
        value: String,
    },
    #[error("S_0{d} vanishes")]
    ZeroVacuumRow { d: usize },
    #[error("σ_{ell} maps commutant element {index} outside the commutant")]
    GaloisClosureFailure { index: usize, ell: u32 },
    #[error("averaged commutant element {index} is not rational")]
    NotRational { index: usize },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// S over Q[ξ_M] and T as exponents r_a ∈ [0, 1), T_aa = e^{2πi r_a}.
#[derive(Clone, PartialEq, Eq)]
pub struct ModularData {
    order: u32,
    s: Matrix,
    t: Vec<Rational>,
    labels: Vec<String>,
}

pub(crate) fn frac_mod1(q: &Rational) -> Rational {
    let f = q - q.floor();
    if f.is_negative() {
        f + Rational::one()
    } else {
        f
    }
}

/// e^{2πi q}.
pub fn exp_2pi_i(q: &Rational) -> Result<Cyclo, CycloError> {
    let q = frac_mod1(q);
    let den = q.denom().to_u32().ok_or(CycloError::OrderLimit {
        order: u64::MAX,
        limit: crate::cyclo::order_limit(),
    })?;
    let num = q.numer().to_i64().expect("numerator below denominator");
    Cyclo::try_root_of_unity(den, num)
}

impl ModularData {
    /// Field order is the lcm of the entry orders.
    pub fn new(s: Matrix, t: Vec<Rational>) -> Result<Self, DataError> {
        let m = s
            .entries()
            .iter()
            .fold(1u64, |acc, z| acc.lcm(&(z.order() as u64)));
        let m = u32::try_from(m).map_err(|_| CycloError::OrderLimit {
            order: m,
            limit: crate::cyclo::order_limit(),
        })?;
        Self::with_order(s, t, m)
    }

    /// Data over a declared field Q[ξ_M]; every entry is re-embedded at order M.
    pub fn with_order(s: Matrix, t: Vec<Rational>, m: u32) -> Result<Self, DataError> {
        let n = s.size();
        if n == 0 {
            return Err(DataError::Empty);
        }
        if t.len() != n {
            return Err(DataError::Dimension { s: n, t: t.len() });
        }
        for a in 0..n {
            for b in 0..n {
                let z = s.get(a, b);
                if m % z.order() != 0 {
                    return Err(DataError::EntryOrder {
                        a,
                        b,
                        entry: z.order(),
                        order: m,
                    });
                }
            }
        }
        let s = s.try_map(|z| z.embed(m))?;
        let t = t.iter().map(frac_mod1).collect();
        Ok(ModularData {
            order: m,
            s,
            t,
            labels: (0..n).map(|a| a.to_string()).collect(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size(), "one label per primary");
        self.labels = labels;
        self
    }

    /// The one-primary theory S = (1), T = (1).
    pub fn trivial() -> Self {
        Self::new(Matrix::identity(1), vec![Rational::zero()]).expect("trivial data")
    }

    pub fn size(&self) -> usize {
        self.s.size()
    }

    /// Order M of the field Q[ξ_M] holding S.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn t_exponents(&self) -> &[Rational] {
        &self.t
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .or_else(|| name.parse::<usize>().ok().filter(|&i| i < self.size()))
    }

    /// Least N with N·r_a ∈ Z for every a.
    pub fn t_order(&self) -> u64 {
        self.t.iter().fold(1u64, |acc, r| {
            acc.lcm(&r.denom().to_u64().expect("T order fits in u64"))
        })
    }

    /// lcm(M, N): a field containing every entry of S and T.
    pub fn full_order(&self) -> u64 {
        (self.order as u64).lcm(&self.t_order())
    }

    /// Diagonal of T^x for rational x: e^{2πi·x·r_a}.
    pub fn t_power(&self, x: &Rational) -> Result<Vec<Cyclo>, CycloError> {
        self.t.iter().map(|r| exp_2pi_i(&(r * x))).collect()
    }

    pub fn t_pow(&self, k: i64) -> Result<Vec<Cyclo>, CycloError> {
        self.t_power(&Rational::from_integer(k.into()))
    }

    pub fn t_diag(&self) -> Result<Vec<Cyclo>, CycloError> {
        self.t_pow(1)
    }

    /// S⁻¹, which equals conj(S) for unitary symmetric S.
    pub fn s_inv(&self) -> Matrix {
        self.s.conj()
    }

    /// Same S with T exponents replaced; used to build perturbed data in tests and tools.
    pub fn with_t(&self, t: Vec<Rational>) -> Result<Self, DataError> {
        let mut out = Self::with_order(self.s.clone(), t, self.order)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// Charge conjugation from S² when it is a permutation.
    pub fn charge_conjugation(&self) -> Result<Option<Vec<usize>>, CycloError> {
        Ok(self.s.checked_mul(&self.s)?.as_permutation())
    }
}

impl fmt::Debug for ModularData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModularData")
            .field("order", &self.order)
            .field("size", &self.size())
            .field("t", &self.t.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// First index pair where the identity fails.
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub axioms: Vec<AxiomCheck>,
    pub t_order: u64,
    pub conjugation: Option<Vec<usize>>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.axioms.iter().find(|a| !a.passed)
    }
}

pub const AXIOM_SYMMETRIC: &str = "S symmetric";
pub const AXIOM_UNITARY: &str = "S unitary";
pub const AXIOM_CONJUGATION: &str = "S^2 is an involutive permutation";
pub const AXIOM_C_T: &str = "C commutes with T";
pub const AXIOM_C_S: &str = "C commutes with S";
pub const AXIOM_ST3: &str = "(ST)^3 = I";

fn check(name: &'static str, witness: Option<(usize, usize)>) -> AxiomCheck {
    AxiomCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

/// Check every axiom of modular data exactly.
pub fn validate(md: &ModularData) -> Result<ValidationReport, CycloError> {
    let n = md.size();
    let s = md.s();
    let mut axioms = Vec::new();

    let sym = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| s.get(i, j) != s.get(j, i));
    axioms.push(check(AXIOM_SYMMETRIC, sym));

    let sbar_t = s.conj().transpose();
    let unit = s.checked_mul(&sbar_t)?;
    axioms.push(check(
        AXIOM_UNITARY,
        unit.first_difference(&Matrix::identity(n)),
    ));

    let c = s.checked_mul(s)?;
    let perm = c.as_permutation();
    let conj_witness = match &perm {
        None => Some(
            (0..n * n)
                .map(|k| (k / n, k % n))
                .find(|&(i, j)| {
                    let z = c.get(i, j);
                    !(z.is_zero() || z.is_one())
                })
                .unwrap_or((0, 0)),
        ),
        Some(p) => (0..n).find(|&a| p[p[a]] != a).map(|a| (a, p[a])),
    };
    axioms.push(check(AXIOM_CONJUGATION, conj_witness));

    let t = md.t_diag()?;
    let ct = c.mul_diag(&t)?;
    let tc = c.diag_mul(&t)?;
    axioms.push(check(AXIOM_C_T, ct.first_difference(&tc)));

    let cs = c.checked_mul(s)?;
    let sc = s.checked_mul(&c)?;
    axioms.push(check(AXIOM_C_S, cs.first_difference(&sc)));

    let st = s.mul_diag(&t)?;
    let st3 = st.checked_mul(&st)?.checked_mul(&st)?;
    axioms.push(check(AXIOM_ST3, st3.first_difference(&Matrix::identity(n))));

    Ok(ValidationReport {
        axioms,
        t_order: md.t_order(),
        conjugation: perm,
    })
}

/// Fusion coefficients N_{ab}^c.
#[derive(Clone, PartialEq, Eq)]
pub struct Fusion {
    n: usize,
    data: Vec<u64>,
}

impl Fusion {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    data.push(f(a, b, c));
                }
            }
        }
        Fusion { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> u64 {
        self.data[(a * self.n + b) * self.n + c]
    }

    /// Unit, commutativity and associativity of the fusion ring.
    pub fn ring_axioms_hold(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                if self.get(0, a, b) != u64::from(a == b) {
                    return false;
                }
                for c in 0..n {
                    if self.get(a, b, c) != self.get(b, a, c) {
                        return false;
                    }
                    for d in 0..n {
                        let lhs: u64 = (0..n).map(|e| self.get(a, b, e) * self.get(e, c, d)).sum();
                        let rhs: u64 = (0..n).map(|e| self.get(b, c, e) * self.get(a, e, d)).sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Fusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fusion(n = {})", self.n)
    }
}

/// Verlinde's formula N_{ab}^c = Σ_d S_ad S_bd conj(S_cd) / S_0d.
pub fn verlinde(md: &ModularData) -> Result<Fusion, DataError> {
    let n = md.size();
    let s = md.s();
    let mut inv0 = Vec::with_capacity(n);
    for d in 0..n {
        if s.get(0, d).is_zero() {
            return Err(DataError::ZeroVacuumRow { d });
        }
        inv0.push(s.get(0, d).inv()?);
    }
    let sbar = s.conj();
    let mut data = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            let w: Vec<Cyclo> = (0..n)
                .map(|d| s.get(a, d).checked_mul(s.get(b, d))?.checked_mul(&inv0[d]))
                .collect::<Result<_, _>>()?;
            for c in 0..n {
                let v = Cyclo::dot(w.iter().zip(sbar.row(c).iter()))?;
                let value = v
                    .as_integer()
                    .filter(|k| !k.is_negative())
                    .and_then(|k| k.to_u64());
                match value {
                    Some(k) => data.push(k),
                    None => {
                        return Err(DataError::NonIntegralFusion {
                            a,
                            b,
                            c,
                            value: v.to_string(),
                        })
                    }
                }
            }
        }
    }
    Ok(Fusion { n, data })
}

/// S_a0 / S_00.
pub fn quantum_dimensions(md: &ModularData) -> Result<Vec<Cyclo>, DataError> {
    let s00 = md.s().get(0, 0);
    if s00.is_zero() {
        return Err(DataError::ZeroVacuumRow { d: 0 });
    }
    let inv = s00.inv()?;
    (0..md.size())
        .map(|a| Ok(md.s().get(a, 0).checked_mul(&inv)?))
        .collect()
}

/// With rational quantum dimensions the central charge is an integer,
/// i.e. the order of T_00 divides 24.
pub fn central_charge_integrality_check(md: &ModularData) -> Result<Verdict, DataError> {
    let dims = quantum_dimensions(md)?;
    if let Some(a) = dims.iter().position(|d| d.as_rational().is_none()) {
        return Ok(Verdict::NotApplicable(format!(
            "quantum dimension of {} is irrational",
            md.labels()[a]
        )));
    }
    let den = md.t_exponents()[0].denom().clone();
    if (BigInt::from(24) % &den).is_zero() {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::Fail(format!(
            "T_00 has order {den}, which does not divide 24"
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop3c {
    pub k: u64,
    pub m: u64,
    /// M_b/K_b divides 24.
    pub divides_24: bool,
    /// M_b/K_b is coprime to K_b.
    pub coprime: bool,
    pub passed: bool,
}

/// K_b = conductor of the ratios S_ab/S_0b, M_b = lcm(K_b, order T_bb);
/// M_b/K_b must divide 24 and be coprime to K_b.
pub fn prop3c_check(md: &ModularData, b: usize) -> Result<Prop3c, DataError> {
    let s = md.s();
    let s0b = s.get(0, b);
    if s0b.is_zero() {
        return Err(DataError::ZeroVacuumRow { d: b });
    }
    let inv = s0b.inv()?;
    let mut k = 1u64;
    for a in 0..md.size() {
        let ratio = s.get(a, b).checked_mul(&inv)?;
        k = k.lcm(&(ratio.conductor() as u64));
    }
    let tb = md.t_exponents()[b].denom().to_u64().expect("T order fits");
    let m = k.lcm(&tb);
    let q = m / k;
    let divides_24 = 24 % q == 0;
    let coprime = q.gcd(&k) == 1;
    Ok(Prop3c {
        k,
        m,
        divides_24,
        coprime,
        passed: divides_24 && coprime,
    })
}

fn flatten(m: &Matrix) -> Vec<Cyclo> {
    m.entries().to_vec()
}

fn unflatten(n: usize, v: &[Cyclo]) -> Matrix {
    Matrix::from_fn(n, |i, j| v[i * n + j].clone())
}

/// Basis of {X : XS = SX, XT = TX}.
pub fn commutant_basis(md: &ModularData) -> Result<Vec<Matrix>, DataError> {
    let n = md.size();
    let s = md.s();
    let t = md.t_exponents();
    // XT = TX forces X_ab = 0 unless T_aa = T_bb, so only those entries are unknowns.
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| t[a] == t[b])
        .collect();
    let idx = |a: usize, b: usize| unknowns.iter().position(|&p| p == (a, b));
    let w = unknowns.len();
    let mut rows = Vec::with_capacity(n * n);
    // (XS − SX)_ab = Σ_k X_ak S_kb − S_ak X_kb
    for a in 0..n {
        for b in 0..n {
            let mut row = vec![Cyclo::zero(); w];
            for k in 0..n {
                if let Some(u) = idx(a, k) {
                    row[u] = row[u].checked_add(s.get(k, b))?;
                }
                if let Some(u) = idx(k, b) {
                    row[u] = row[u].checked_sub(s.get(a, k))?;
                }
            }
            rows.push(row);
        }
    }
    let basis = nullspace(rows, w)?;
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(n);
            for (u, &(a, b)) in unknowns.iter().enumerate() {
                m.set(a, b, v[u].clone());
            }
            m
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct IntegralBasis {
    pub matrices: Vec<Matrix>,
    /// Common denominator cleared from the Galois-averaged basis.
    pub denominator: BigInt,
}

/// Triangularize the commutant basis, average each element over the Galois
/// group and clear one common denominator.
pub fn integral_commutant_basis(md: &ModularData) -> Result<IntegralBasis, DataError> {
    let n = md.size();
    let basis = commutant_basis(md)?;
    let mut rows: Vec<Vec<Cyclo>> = basis.iter().map(flatten).collect();
    let pivots = rref(&mut rows)?;
    let l = rows
        .iter()
        .flatten()
        .fold(1u64, |acc, z| acc.lcm(&(z.order() as u64))) as u32;
    let units = units_mod(l);
    let phi = BigRational::from_integer(BigInt::from(units.len()));
    let mut averaged = Vec::with_capacity(rows.len());
    for (index, v) in rows.iter().enumerate() {
        let mut sum = vec![Cyclo::zero(); v.len()];
        for &ell in &units {
            let w: Vec<Cyclo> = v
                .iter()
                .map(|z| z.galois(ell as i64))
                .collect::<Result<_, _>>()?;
            if coordinates(&rows, &pivots, &w).is_none() {
                return Err(DataError::GaloisClosureFailure { index, ell });
            }
            for (acc, z) in sum.iter_mut().zip(w.iter()) {
                *acc = acc.checked_add(z)?;
            }
        }
        let q: Vec<BigRational> = sum
            .iter()
            .map(|z| z.as_rational().map(|q| q / &phi))
            .collect::<Option<_>>()
            .ok_or(DataError::NotRational { index })?;
        averaged.push(q);
    }
    let den = averaged
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let matrices = averaged
        .iter()
        .map(|q| {
            let ints: Vec<Cyclo> = q
                .iter()
                .map(|x| Cyclo::from_rational(&(x * BigRational::from_integer(den.clone()))))
                .collect();
            unflatten(n, &ints)
        })
        .collect();
    Ok(IntegralBasis {
        matrices,
        denominator: den,
    })
}

/// Whether two families of matrices span the same space (mutual membership).
pub fn same_span(a: &[Matrix], b: &[Matrix]) -> Result<bool, CycloError> {
    let contains = |basis: &[Matrix], others: &[Matrix]| -> Result<bool, CycloError> {
        let mut rows: Vec<Vec<Cyclo>> = basis.iter().map(flatten).collect();
        rows.retain(|r| r.iter().any(|z| !z.is_zero()));
        let pivots = if rows.is_empty() {
            Vec::new()
        } else {
            rref(&mut rows)?
        };
        Ok(others
            .iter()
            .all(|m| coordinates(&rows, &pivots, &flatten(m)).is_some()))
    };
    Ok(contains(a, b)? && contains(b, a)?)
}

/// True when X commutes with both S and T.
pub fn commutes_with_st(md: &ModularData, x: &Matrix) -> Result<bool, CycloError> {
    let s = md.s();
    if x.checked_mul(s)? != s.checked_mul(x)? {
        return Ok(false);
    }
    let t = md.t_diag()?;
    Ok(x.mul_diag(&t)? == x.diag_mul(&t)?)
}
