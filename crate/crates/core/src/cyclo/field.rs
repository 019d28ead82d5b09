//! Per-order data for Q[ξ_M]: the cyclotomic polynomial Φ_M and its degree.
//!
//! Tables are built once per order and shared through a process-wide cache.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

#[derive(Debug)]
pub(crate) struct FieldData {
    pub order: u32,
    /// φ(order), the degree of Φ_order.
    pub degree: usize,
    /// Coefficients of Φ_order, low degree first; monic, length `degree + 1`.
    pub phi_poly: Vec<i64>,
    /// Nonzero (index, coefficient) pairs of Φ_order below the leading term.
    pub phi_terms: Vec<(usize, i64)>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn field(order: u32) -> Arc<FieldData> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(f) = cache().read().unwrap().get(&order) {
        return Arc::clone(f);
    }
    let poly = cyclotomic_polynomial(order);
    let degree = poly.len() - 1;
    let phi_terms = poly[..degree]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let data = Arc::new(FieldData {
        order,
        degree,
        phi_poly: poly,
        phi_terms,
    });
    cache()
        .write()
        .unwrap()
        .entry(order)
        .or_insert(data)
        .clone()
}

/// Φ_n via x^n − 1 = Π_{d | n} Φ_d, dividing out the proper divisors.
pub(crate) fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = field(d).phi_poly.clone();
        num = exact_div_monic(&num, &den);
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2u32;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn lcm_u32(a: u32, b: u32) -> u64 {
    (a as u64).lcm(&(b as u64))
}

/// Units of Z/nZ in increasing order.
pub fn units_mod(n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|&l| l.gcd(&n) == 1).collect()
}
