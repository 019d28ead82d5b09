//! Small integer helpers shared by the Galois and congruence code.

use num_integer::Integer;

/// Inverse of `a` modulo `n` in [0, n), if it exists. Every residue is invertible mod 1.
pub fn inv_mod(a: i64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let n_i = n as i128;
    let a = (a as i128).rem_euclid(n_i);
    let e = a.extended_gcd(&n_i);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(n_i) as u64)
}

/// Smallest positive ℓ' ≡ ℓ (mod `modulus`) with gcd(ℓ', `coprime_to`) = 1.
pub fn lift_unit(ell: i64, modulus: u64, coprime_to: u64) -> Option<i64> {
    let m = modulus.max(1) as i64;
    let base = ell.rem_euclid(m);
    if (base as u64).gcd(&modulus.max(1)) != 1 && modulus > 1 {
        return None;
    }
    let bound = coprime_to.max(1) as i64 * m + m;
    let mut l = if base == 0 { m } else { base };
    while l <= bound {
        if (l as u64).gcd(&coprime_to.max(1)) == 1 {
            return Some(l);
        }
        l += m;
    }
    None
}

/// Prime factors with multiplicity exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Units of Z/n as signed integers.
pub fn units(n: u64) -> Vec<i64> {
    if n == 1 {
        return vec![1];
    }
    (1..n as i64).filter(|&l| (l as u64).gcd(&n) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 15), Some(8));
        assert_eq!(inv_mod(-1, 7), Some(6));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(5, 1), Some(0));
    }

    #[test]
    fn lifts() {
        assert_eq!(lift_unit(2, 15, 60), Some(17));
        assert_eq!(lift_unit(3, 4, 24), Some(7));
        assert_eq!(lift_unit(-1, 24, 24), Some(23));
        assert_eq!(lift_unit(2, 4, 8), None);
    }

    #[test]
    fn factors() {
        assert_eq!(factorize(24), vec![(2, 3), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
    }
}
