//! Exact integer and rational linear algebra.

pub mod hnf;
pub mod lattice;
pub mod lp;
pub mod rational;
pub mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = core::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = core::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = core::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// gcd of a slice of machine integers (0 for an all-zero slice).
pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(3i64, 5i64), (12, -18), (0, 7), (-4, 0), (0, 0), (35, 14)] {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let (g, s, t) = ext_gcd(&a, &b);
            assert_eq!(&s * &a + &t * &b, g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn gcd_of_generators() {
        assert_eq!(gcd_slice(&[3, 5, 7]), 1);
        assert_eq!(gcd_slice(&[6, -4, 10]), 2);
        assert_eq!(gcd_slice(&[0, 0]), 0);
    }
}
