use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::coeffs::{self, Frac, Repr};
use super::field::{divisors, field, FieldData};
use super::{check_order, CycloError};

/// An exact element of Q[ξ_M], stored in the power basis modulo Φ_M.
///
/// Values of different orders compare equal when they agree after embedding
/// at a common order.
#[derive(Clone)]
pub struct Cyclo {
    order: u32,
    repr: Repr,
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

fn apply<C: coeffs::Coef>(op: Op, a: (&[C], &C), b: (&[C], &C), f: &FieldData) -> Option<Frac<C>> {
    match op {
        Op::Add => coeffs::add(a, b, false),
        Op::Sub => coeffs::add(a, b, true),
        Op::Mul => coeffs::mul(a, b, f),
    }
}

fn binop(op: Op, a: &Repr, b: &Repr, f: &FieldData) -> Repr {
    if let (Some(x), Some(y)) = (a.small(), b.small()) {
        if let Some(r) = apply(op, x, y, f) {
            return small_or_big(r);
        }
    }
    let (an, ad) = a.big();
    let (bn, bd) = b.big();
    let r = apply(op, (&an, &ad), (&bn, &bd), f).expect("bigint arithmetic is total");
    Repr::from_big(r)
}

fn small_or_big(r: Frac<i128>) -> Repr {
    if r.1 == i128::MIN || r.0.iter().any(|&c| c == i128::MIN) {
        let num = r.0.into_iter().map(BigInt::from).collect();
        Repr::from_big((num, BigInt::from(r.1)))
    } else {
        Repr::from_small(r)
    }
}

fn reindex_repr(r: &Repr, target: &FieldData, map: impl Fn(usize) -> usize + Copy) -> Repr {
    if let Some((num, den)) = r.small() {
        if let Some(v) = coeffs::reindex(num, target, map) {
            return small_or_big((v, *den));
        }
    }
    let (num, den) = r.big();
    let v = coeffs::reindex(&num, target, map).expect("bigint arithmetic is total");
    Repr::from_big((v, den))
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo {
            order: 1,
            repr: Repr::zero(1),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyclo {
            order: 1,
            repr: Repr::from_small((vec![v as i128], 1)),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Cyclo {
            order: 1,
            repr: Repr::from_big((vec![q.numer().clone()], q.denom().clone())),
        }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rational(&BigRational::new(p.into(), q.into()))
    }

    /// ξ_M^k, stored at the smallest order that contains it.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        Self::try_root_of_unity(m, k).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_root_of_unity(m: u32, k: i64) -> Result<Self, CycloError> {
        if m == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let k = k.rem_euclid(m as i64) as u64;
        let g = (k as u64).gcd(&(m as u64));
        let (mut k, mut m) = (k / g, m as u64 / g);
        let mut sign = 1i128;
        if m % 4 == 2 {
            // ξ_{2m'}^k = −ξ_{m'}^{(k+m')/2} for odd m'
            let h = m / 2;
            k = ((k + h) / 2) % h;
            m = h;
            sign = -1;
        }
        let m = m as u32;
        check_order(m)?;
        Ok(Self::monomial(m, k as usize, sign))
    }

    /// ξ_M^k at exactly order M, without minimizing.
    pub fn root_at(m: u32, k: i64) -> Result<Self, CycloError> {
        if m == 0 {
            return Err(CycloError::ZeroOrder);
        }
        check_order(m)?;
        Ok(Self::monomial(m, k.rem_euclid(m as i64) as usize, 1))
    }

    fn monomial(m: u32, k: usize, c: i128) -> Self {
        let f = field(m);
        let mut p = vec![0i128; (m as usize).max(f.degree)];
        p[k] = c;
        let num = coeffs::reduce(p, &f).expect("monomial reduction fits");
        Cyclo {
            order: m,
            repr: Repr::from_small((num, 1)),
        }
    }

    /// Σ q_j ξ_M^{k_j}.
    pub fn from_terms(m: u32, terms: &[(BigRational, i64)]) -> Result<Self, CycloError> {
        if m == 0 {
            return Err(CycloError::ZeroOrder);
        }
        check_order(m)?;
        let f = field(m);
        let mut den = BigInt::one();
        for (q, _) in terms {
            den = den.lcm(q.denom());
        }
        let mut p = vec![BigInt::zero(); (m as usize).max(f.degree)];
        for (q, k) in terms {
            let idx = k.rem_euclid(m as i64) as usize;
            p[idx] += q.numer() * (&den / q.denom());
        }
        let num = coeffs::reduce(p, &f).expect("bigint arithmetic is total");
        Ok(Cyclo {
            order: m,
            repr: Repr::from_big((num, den)),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Coefficient of ξ_M^k in the reduced power basis.
    pub fn coeff(&self, k: usize) -> BigRational {
        let (n, d) = self.repr.coeff_big(k);
        BigRational::new(n, d)
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.repr.len()).map(|k| self.coeff(k)).collect()
    }

    /// The same number presented at order `l`, which must be a multiple of the current order.
    pub fn embed(&self, l: u32) -> Result<Self, CycloError> {
        if l == self.order {
            return Ok(self.clone());
        }
        if l == 0 || l % self.order != 0 {
            return Err(CycloError::NotMultiple {
                from: self.order,
                to: l,
            });
        }
        check_order(l)?;
        let step = (l / self.order) as usize;
        let f = field(l);
        Ok(Cyclo {
            order: l,
            repr: reindex_repr(&self.repr, &f, move |j| j * step),
        })
    }

    fn common(&self, other: &Self) -> Result<(u32, Repr, Repr), CycloError> {
        if self.order == other.order {
            return Ok((self.order, self.repr.clone(), other.repr.clone()));
        }
        let l = super::field::lcm_u32(self.order, other.order);
        let l = u32::try_from(l).map_err(|_| CycloError::OrderLimit {
            order: l,
            limit: super::order_limit(),
        })?;
        Ok((l, self.embed(l)?.repr, other.embed(l)?.repr))
    }

    fn checked_op(&self, other: &Self, op: Op) -> Result<Self, CycloError> {
        // Rational operands never force an embedding.
        if other.order == 1 && self.order != 1 || self.order == 1 && other.order != 1 {
            let (big, small, swapped) = if other.order == 1 {
                (self, other, false)
            } else {
                (other, self, true)
            };
            if let Op::Mul = op {
                let q = small.as_rational().expect("order 1 is rational");
                return Ok(big.scale(&q));
            }
            let lifted = small.embed(big.order)?;
            let f = field(big.order);
            let repr = if swapped {
                binop(op, &lifted.repr, &big.repr, &f)
            } else {
                binop(op, &big.repr, &lifted.repr, &f)
            };
            return Ok(Cyclo {
                order: big.order,
                repr,
            });
        }
        let (l, a, b) = self.common(other)?;
        let f = field(l);
        Ok(Cyclo {
            order: l,
            repr: binop(op, &a, &b, &f),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.checked_op(other, Op::Add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.checked_op(other, Op::Sub)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.checked_op(other, Op::Mul)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Cyclo {
                order: self.order,
                repr: Repr::zero(self.repr.len()),
            };
        }
        let (num, den) = self.repr.big();
        let num = coeffs::scale(&num, q.numer()).expect("bigint arithmetic is total");
        Cyclo {
            order: self.order,
            repr: Repr::from_big((num, den * q.denom())),
        }
    }

    /// Σ a_i·b_i, reducing once. Much cheaper than folding `+` and `*` for matrix products.
    pub fn dot<'a, I>(pairs: I) -> Result<Self, CycloError>
    where
        I: IntoIterator<Item = (&'a Cyclo, &'a Cyclo)>,
    {
        let pairs: Vec<(&Cyclo, &Cyclo)> = pairs
            .into_iter()
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .collect();
        if pairs.is_empty() {
            return Ok(Cyclo::zero());
        }
        let mut l = 1u64;
        for (a, b) in &pairs {
            l = l.lcm(&(a.order as u64)).lcm(&(b.order as u64));
        }
        let l = u32::try_from(l).map_err(|_| CycloError::OrderLimit {
            order: l,
            limit: super::order_limit(),
        })?;
        check_order(l)?;
        let f = field(l);
        let lifted: Vec<(Repr, Repr)> = pairs
            .iter()
            .map(|(a, b)| Ok((a.embed(l)?.repr, b.embed(l)?.repr)))
            .collect::<Result<_, CycloError>>()?;
        let all_small = lifted
            .iter()
            .all(|(a, b)| a.small().is_some() && b.small().is_some());
        if all_small {
            let args: Vec<_> = lifted
                .iter()
                .map(|(a, b)| (a.small().unwrap(), b.small().unwrap()))
                .collect();
            if let Some(r) = coeffs::dot(&args, &f) {
                return Ok(Cyclo {
                    order: l,
                    repr: small_or_big(r),
                });
            }
        }
        let bigs: Vec<_> = lifted.iter().map(|(a, b)| (a.big(), b.big())).collect();
        let args: Vec<_> = bigs
            .iter()
            .map(|((an, ad), (bn, bd))| ((an.as_slice(), ad), (bn.as_slice(), bd)))
            .collect();
        let r = coeffs::dot(&args, &f).expect("bigint arithmetic is total");
        Ok(Cyclo {
            order: l,
            repr: Repr::from_big(r),
        })
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φ_M.
    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyclo::from_rational(&q.recip()));
        }
        let f = field(self.order);
        let a: Vec<BigRational> = self.coeffs();
        let m: Vec<BigRational> = f
            .phi_poly
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let u = poly_inverse_mod(&a, &m);
        let den = u.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut num: Vec<BigInt> = u.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        num.resize(f.degree, BigInt::zero());
        Ok(Cyclo {
            order: self.order,
            repr: Repr::from_big((num, den)),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclo::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// σ_ℓ: ξ_M ↦ ξ_M^ℓ.
    pub fn galois(&self, ell: i64) -> Result<Self, CycloError> {
        let m = self.order as i64;
        let l = ell.rem_euclid(m);
        if (l as u64).gcd(&(m as u64)) != 1 {
            return Err(CycloError::NotCoprime {
                ell,
                order: self.order,
            });
        }
        if l == 1 % m {
            return Ok(self.clone());
        }
        let f = field(self.order);
        let l = l as usize;
        Ok(Cyclo {
            order: self.order,
            repr: reindex_repr(&self.repr, &f, move |j| j * l),
        })
    }

    pub fn conj(&self) -> Self {
        self.galois(-1).expect("−1 is a unit")
    }

    /// The rational value, if the number is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        let (num, den) = self.repr.big();
        if num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(num[0].clone(), den))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|v| v.to_i64())
    }

    /// Smallest m dividing the order with the number in Q[ξ_m].
    pub fn conductor(&self) -> u32 {
        if self.as_rational().is_some() {
            return 1;
        }
        let big_m = self.order;
        for m in divisors(big_m) {
            if m == big_m {
                return m;
            }
            if self.fixed_by_kernel(m) {
                return m;
            }
        }
        big_m
    }

    fn fixed_by_kernel(&self, m: u32) -> bool {
        let big_m = self.order;
        let mut l = 1 + m;
        while l < big_m + 1 {
            if l as u64 % big_m as u64 != 1 && (l as u64).gcd(&(big_m as u64)) == 1 {
                match self.galois(l as i64) {
                    Ok(z) if z.repr == self.repr => {}
                    _ => return false,
                }
            }
            l += m;
        }
        true
    }

    /// Rewrite at order `m`, when the number lies in Q[ξ_m].
    pub fn with_order(&self, m: u32) -> Option<Self> {
        if m == self.order {
            return Some(self.clone());
        }
        if m == 0 {
            return None;
        }
        if let Some(q) = self.as_rational() {
            let z = Cyclo::from_rational(&q);
            return if m == 1 { Some(z) } else { z.embed(m).ok() };
        }
        if self.order % m != 0 {
            let l = super::field::lcm_u32(self.order, m) as u32;
            return self.embed(l).ok()?.with_order(m);
        }
        let fm = field(m);
        let step = self.order / m;
        // Columns: images of ξ_m^j in the power basis of order M.
        let cols: Vec<Vec<BigRational>> = (0..fm.degree)
            .map(|j| {
                Cyclo::monomial(self.order, j * step as usize % self.order as usize, 1).coeffs()
            })
            .collect();
        let x = solve_columns(&cols, &self.coeffs())?;
        let den = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num: Vec<BigInt> = x.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Some(Cyclo {
            order: m,
            repr: Repr::from_big((num, den)),
        })
    }

    /// Present the number at its conductor.
    pub fn minimize(&self) -> Self {
        let c = self.conductor();
        self.with_order(c).expect("conductor order contains the number")
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.repr.to_f64_coeffs().into_iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let th = 2.0 * std::f64::consts::PI * (j as f64) / m;
            re += c * th.cos();
            im += c * th.sin();
        }
        (re, im)
    }

    /// Numerical value for diagnostics. Double precision caps useful `bits` at about 48.
    pub fn embed_complex(&self, bits: u32) -> (f64, f64) {
        let _ = bits;
        self.to_complex()
    }
}

/// Solve Σ x_j·cols[j] = rhs over Q; None if inconsistent.
fn solve_columns(cols: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = rhs.len();
    let n = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let t = &a[row][c] * &f;
                    a[r][c] = &a[r][c] - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][n].clone();
    }
    Some(x)
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                r[i + j] = &r[i + j] - t;
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    poly_trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    poly_trim(&mut out);
    out
}

/// u with u·a ≡ 1 (mod m), for a coprime to m.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    poly_trim(&mut r1);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant gcd
    let c = r0[0].recip();
    let (_, u) = poly_divrem(&s0, m);
    u.into_iter().map(|x| x * &c).collect()
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.repr == other.repr;
        }
        match self.common(other) {
            Ok((_, a, b)) => a == b,
            Err(_) => {
                let d = self
                    .checked_sub(other)
                    .expect("difference at common order");
                d.is_zero()
            }
        }
    }
}

impl Eq for Cyclo {}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

impl From<i64> for Cyclo {
    fn from(v: i64) -> Self {
        Cyclo::from_int(v)
    }
}

impl From<BigRational> for Cyclo {
    fn from(q: BigRational) -> Self {
        Cyclo::from_rational(&q)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        let (num, den) = self.repr.big();
        let num = num.into_iter().map(|c| -c).collect();
        Cyclo {
            order: self.order,
            repr: Repr::from_big((num, den)),
        }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                (&self).$method(rhs)
            }
        }
        impl $tr<Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(m: u32, k: i64) -> Cyclo {
        Cyclo::root_of_unity(m, k)
    }

    #[test]
    fn gaussian_integer_product() {
        let i = xi(4, 1);
        let a = Cyclo::one() + &i;
        let b = Cyclo::one() - &i;
        assert_eq!(a * b, Cyclo::from_int(2));
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        assert_eq!(xi(3, 1) + xi(3, 2), Cyclo::from_int(-1));
    }

    #[test]
    fn inverse_in_q_zeta5() {
        let a = Cyclo::one() + xi(5, 1);
        let inv = a.inv().unwrap();
        assert_eq!(&inv * &a, Cyclo::one());
        assert!(Cyclo::zero().inv().is_err());
    }

    #[test]
    fn roots_are_minimized() {
        assert_eq!(Cyclo::root_of_unity(1, 0), Cyclo::one());
        assert_eq!(Cyclo::root_of_unity(2, 1), Cyclo::from_int(-1));
        let z = Cyclo::root_of_unity(8, 2);
        assert_eq!(z.order(), 4);
        assert_eq!(z, xi(4, 1));
        assert_eq!(Cyclo::root_of_unity(6, 1).order(), 3);
    }

    #[test]
    fn galois_examples() {
        assert_eq!(xi(8, 1).galois(-1).unwrap(), xi(8, 7));
        let z = xi(7, 1) + Cyclo::from_frac(1, 3);
        assert_eq!(z.galois(1).unwrap(), z);
        assert_eq!(
            xi(7, 1).galois(3).unwrap().galois(2).unwrap(),
            xi(7, 1).galois(6).unwrap()
        );
        assert!(xi(4, 1).galois(2).is_err());
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(Cyclo::from_int(2).conductor(), 1);
        assert_eq!(Cyclo::root_at(8, 2).unwrap().conductor(), 4);
        let eta = xi(5, 1) + xi(5, 4);
        assert_eq!(eta.conductor(), 5);
        // √2 = ξ8 + ξ8⁻¹ lives in Q[ξ8] but in no smaller field.
        assert_eq!((xi(8, 1) + xi(8, 7)).conductor(), 8);
        let i_at_24 = Cyclo::root_at(24, 6).unwrap();
        assert_eq!(i_at_24.conductor(), 4);
        assert_eq!(i_at_24.minimize().order(), 4);
        assert_eq!(i_at_24.minimize(), xi(4, 1));
    }

    #[test]
    fn rational_detection() {
        assert_eq!(
            Cyclo::from_frac(3, 2).as_rational(),
            Some(BigRational::new(3.into(), 2.into()))
        );
        assert_eq!(xi(3, 1).as_rational(), None);
        let z = Cyclo::root_at(6, 1).unwrap() + Cyclo::root_at(6, 5).unwrap();
        assert_eq!(z.as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn complex_embedding() {
        let (re, im) = xi(4, 1).to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
        let (re, im) = Cyclo::from_int(-1).to_complex();
        assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        let (re, im) = xi(8, 1).to_complex();
        let h = 2f64.sqrt() / 2.0;
        assert!((re - h).abs() < 1e-12 && (im - h).abs() < 1e-12);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let mut z = Cyclo::from_int(3) + xi(7, 1);
        for _ in 0..7 {
            z = &z * &z;
        }
        // 128th power: coefficients far beyond i128.
        let w = z.pow(-1).unwrap();
        assert_eq!(&z * &w, Cyclo::one());
        let back = z.galois(3).unwrap().galois(5).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn mixed_orders_and_dot() {
        let a = xi(3, 1);
        let b = xi(4, 1);
        let s = &a + &b;
        assert_eq!(s.order(), 12);
        assert_eq!(&s - &b, a);
        let d = Cyclo::dot([(&a, &b), (&b, &b), (&a, &a)]).unwrap();
        assert_eq!(d, &(&a * &b) + &(&(&b * &b) + &(&a * &a)));
    }

    #[test]
    fn with_order_roundtrip() {
        let z = xi(5, 2) + Cyclo::from_frac(-2, 7);
        let up = z.embed(30).unwrap();
        assert_eq!(up.order(), 30);
        let down = up.with_order(5).unwrap();
        assert_eq!(down.order(), 5);
        assert_eq!(down.repr, z.repr);
        assert!(up.with_order(3).is_none());
    }
}
