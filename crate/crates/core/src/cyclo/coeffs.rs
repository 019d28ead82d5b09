//! Integer coefficient vectors with a shared denominator.
//!
//! Values live in `i128` while they fit and fall back to `BigInt` on the first
//! overflow. The normalized form (content divided out, positive denominator,
//! small whenever it fits) is canonical, so equality is structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::field::FieldData;

pub(crate) trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        // gcd of i128 values can only overflow for i128::MIN, which normalization avoids.
        a as i128
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

/// Numerator vector (power basis modulo Φ_M, length φ(M)) over a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Small { num: Vec<i128>, den: i128 },
    Big { num: Vec<BigInt>, den: BigInt },
}

pub(crate) type Frac<C> = (Vec<C>, C);

impl Repr {
    pub fn zero(degree: usize) -> Self {
        Repr::Small {
            num: vec![0; degree],
            den: 1,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Repr::Small { num, .. } => num.len(),
            Repr::Big { num, .. } => num.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Repr::Small { num, .. } => num.iter().all(|c| *c == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    pub fn small(&self) -> Option<(&[i128], &i128)> {
        match self {
            Repr::Small { num, den } => Some((num, den)),
            Repr::Big { .. } => None,
        }
    }

    pub fn big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Repr::Small { num, den } => (
                num.iter().map(|&c| BigInt::from(c)).collect(),
                BigInt::from(*den),
            ),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn from_small(f: Frac<i128>) -> Self {
        let (num, den) = normalize(f.0, f.1);
        Repr::Small { num, den }
    }

    pub fn from_big(f: Frac<BigInt>) -> Self {
        let (num, den) = normalize(f.0, f.1);
        shrink(num, den)
    }

    /// Coefficient `k` as (numerator, denominator) before cancelling.
    pub fn coeff_big(&self, k: usize) -> (BigInt, BigInt) {
        match self {
            Repr::Small { num, den } => (BigInt::from(num[k]), BigInt::from(*den)),
            Repr::Big { num, den } => (num[k].clone(), den.clone()),
        }
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        match self {
            Repr::Small { num, den } => num.iter().map(|&c| c as f64 / *den as f64).collect(),
            Repr::Big { num, den } => {
                let d = den.to_f64().unwrap_or(f64::INFINITY);
                num.iter()
                    .map(|c| {
                        let r = num_rational::BigRational::new(c.clone(), den.clone());
                        r.to_f64().unwrap_or_else(|| c.to_f64().unwrap_or(0.0) / d)
                    })
                    .collect()
            }
        }
    }
}

fn shrink(num: Vec<BigInt>, den: BigInt) -> Repr {
    let small_den = den.to_i128();
    let small_num: Option<Vec<i128>> = num.iter().map(|c| c.to_i128()).collect();
    match (small_num, small_den) {
        // Keep headroom: i128::MIN cannot be negated.
        (Some(n), Some(d)) if n.iter().all(|&c| c != i128::MIN) && d != i128::MIN => {
            Repr::Small { num: n, den: d }
        }
        _ => Repr::Big { num, den },
    }
}

pub(crate) fn normalize<C: Coef>(mut num: Vec<C>, mut den: C) -> (Vec<C>, C) {
    if num.iter().all(Coef::is_zero) {
        return (num, C::from_i64(1));
    }
    let mut g = den.clone();
    for c in &num {
        if g == C::from_i64(1) {
            break;
        }
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if den.is_negative() {
        g = g.neg().expect("gcd negation");
    }
    if g != C::from_i64(1) {
        for c in num.iter_mut() {
            *c = c.div_exact(&g);
        }
        den = den.div_exact(&g);
    }
    (num, den)
}

/// Reduce a polynomial (low degree first) modulo Φ_M in place, truncating to φ(M).
pub(crate) fn reduce<C: Coef>(mut p: Vec<C>, f: &FieldData) -> Option<Vec<C>> {
    let deg = f.degree;
    if p.len() > deg {
        for i in (deg..p.len()).rev() {
            if p[i].is_zero() {
                continue;
            }
            let c = p[i].clone();
            let base = i - deg;
            for &(j, pj) in &f.phi_terms {
                let t = c.mul(&C::from_i64(pj))?;
                p[base + j] = p[base + j].sub(&t)?;
            }
            p[i] = C::zero();
        }
        p.truncate(deg);
    }
    while p.len() < deg {
        p.push(C::zero());
    }
    Some(p)
}

fn lcm_scale<C: Coef>(da: &C, db: &C) -> Option<(C, C, C)> {
    let g = da.gcd(db);
    let sa = db.div_exact(&g);
    let sb = da.div_exact(&g);
    let l = da.mul(&sa)?;
    Some((l, sa, sb))
}

pub(crate) fn add<C: Coef>(a: (&[C], &C), b: (&[C], &C), negate_b: bool) -> Option<Frac<C>> {
    let (l, sa, sb) = lcm_scale(a.1, b.1)?;
    let mut out = Vec::with_capacity(a.0.len());
    for (x, y) in a.0.iter().zip(b.0.iter()) {
        let xs = x.mul(&sa)?;
        let ys = y.mul(&sb)?;
        out.push(if negate_b { xs.sub(&ys)? } else { xs.add(&ys)? });
    }
    Some((out, l))
}

/// Raw (unreduced) polynomial product of two numerator vectors.
pub(crate) fn convolve<C: Coef>(a: &[C], b: &[C], acc: &mut [C]) -> Option<()> {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            acc[i + j] = acc[i + j].add(&x.mul(y)?)?;
        }
    }
    Some(())
}

pub(crate) fn mul<C: Coef>(a: (&[C], &C), b: (&[C], &C), f: &FieldData) -> Option<Frac<C>> {
    let n = a.0.len();
    let mut acc = vec![C::zero(); (2 * n).saturating_sub(1).max(1)];
    convolve(a.0, b.0, &mut acc)?;
    let num = reduce(acc, f)?;
    Some((num, a.1.mul(b.1)?))
}

/// Σ a_i · b_i with one reduction and one normalization at the end.
pub(crate) fn dot<C: Coef>(pairs: &[((&[C], &C), (&[C], &C))], f: &FieldData) -> Option<Frac<C>> {
    let n = f.degree;
    let mut acc = vec![C::zero(); (2 * n).saturating_sub(1).max(1)];
    let mut den = C::from_i64(1);
    let mut term = vec![C::zero(); acc.len()];
    for (a, b) in pairs {
        if a.0.iter().all(Coef::is_zero) || b.0.iter().all(Coef::is_zero) {
            continue;
        }
        for t in term.iter_mut() {
            *t = C::zero();
        }
        convolve(a.0, b.0, &mut term)?;
        let tden = a.1.mul(b.1)?;
        if tden == den {
            for (s, t) in acc.iter_mut().zip(term.iter()) {
                *s = s.add(t)?;
            }
        } else {
            let (l, sa, sb) = lcm_scale(&den, &tden)?;
            for (s, t) in acc.iter_mut().zip(term.iter()) {
                *s = s.mul(&sa)?.add(&t.mul(&sb)?)?;
            }
            den = l;
        }
    }
    let num = reduce(acc, f)?;
    Some((num, den))
}

/// Re-index the terms a_j x^j as a_j x^{map(j) mod L} and reduce modulo Φ_L.
pub(crate) fn reindex<C: Coef>(
    a: &[C],
    target: &FieldData,
    map: impl Fn(usize) -> usize,
) -> Option<Vec<C>> {
    let l = target.order as usize;
    let mut p = vec![C::zero(); l.max(target.degree)];
    for (j, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = map(j) % l;
        p[k] = p[k].add(c)?;
    }
    reduce(p, target)
}

pub(crate) fn scale<C: Coef>(a: &[C], by: &C) -> Option<Vec<C>> {
    a.iter().map(|c| c.mul(by)).collect()
}
