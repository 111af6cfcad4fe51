//! Gcd of rational polynomials through primitive integer remainder
//! sequences, with a modular shortcut for coprime inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::roots::primitive_parts;
use super::{Poly, Rat};

const PRIMES: [u64; 3] = [4_294_967_291, 4_294_967_279, 4_294_967_231];

pub(crate) fn rat_poly_gcd(p: &Poly<Rat>, q: &Poly<Rat>) -> Poly<Rat> {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.deg() == 0 || q.deg() == 0 {
        return Poly::one();
    }
    let a = primitive_parts(p).1;
    let b = primitive_parts(q).1;
    if coprime_mod_prime(&a, &b) {
        return Poly::one();
    }
    let g = primitive_prs(a, b);
    Poly::new(g.into_iter().map(Rat::from_integer).collect()).monic()
}

fn reduce_mod(a: &[BigInt], p: u64) -> Vec<u64> {
    let m = BigInt::from(p);
    a.iter().map(|c| c.mod_floor(&m).to_u64().expect("residue fits")).collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a mod p, b mod p)`; `a`, `b` nonzero with nonzero leading
/// coefficients mod `p`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % p;
            let k = a.len() - b.len();
            for (j, bc) in b.iter().enumerate() {
                a[k + j] = (a[k + j] + p - c * bc % p) % p;
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

/// True if some prime not dividing the leading coefficients certifies
/// `gcd(a, b) = 1`. A false result is inconclusive.
fn coprime_mod_prime(a: &[BigInt], b: &[BigInt]) -> bool {
    for &p in &PRIMES {
        let (ra, rb) = (reduce_mod(a, p), reduce_mod(b, p));
        if ra.last() == Some(&0) || rb.last() == Some(&0) {
            continue;
        }
        return gcd_degree_mod(ra, rb, p) == 0;
    }
    false
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let Some(last) = v.last() else {
        return v;
    };
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if last.is_negative() {
        g = -g;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let k = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// Primitive gcd of two nonzero primitive integer polynomials.
fn primitive_prs(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::from(1)];
        }
        let r = primitive(pseudo_rem(&a, &b));
        a = std::mem::replace(&mut b, r);
    }
    primitive(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::euclid_gcd;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_ints(cs)
    }

    #[test]
    fn agrees_with_euclid() {
        let f = p(&[1, 1]).mul(&p(&[-3, 0, 2]));
        let g = p(&[1, 1]).mul(&p(&[5, 7])).mul(&p(&[-3, 0, 2]));
        assert_eq!(rat_poly_gcd(&f, &g), euclid_gcd(&f, &g));
        assert_eq!(rat_poly_gcd(&f, &g), p(&[-3, 0, 2]).mul(&p(&[1, 1])).monic());
        let h = p(&[2, 0, 0, 1]);
        assert_eq!(rat_poly_gcd(&f, &h), Poly::one());
        assert_eq!(rat_poly_gcd(&Poly::zero(), &g), g.monic());
        assert_eq!(rat_poly_gcd(&p(&[4]), &g), Poly::one());
    }

    #[test]
    fn modular_shortcut_is_sound() {
        // common factor x - 1; the cofactors share a root mod the first prime
        let f = p(&[-1, 1]).mul(&p(&[4_294_967_291, 1]));
        let g = p(&[-1, 1]).mul(&p(&[0, 1]));
        assert_eq!(rat_poly_gcd(&f, &g), p(&[-1, 1]));
        // coprime over Q but with a common root mod the first prime
        let f = p(&[4_294_967_291, 1]);
        let g = p(&[0, 1]);
        assert_eq!(rat_poly_gcd(&f, &g), Poly::one());
    }

    proptest::proptest! {
        #[test]
        fn matches_euclid_on_random_inputs(
            f in proptest::collection::vec(-6i64..=6, 1..5),
            g in proptest::collection::vec(-6i64..=6, 1..5),
            c in proptest::collection::vec(-3i64..=3, 1..4),
        ) {
            let (f, g, c) = (p(&f), p(&g), p(&c));
            proptest::prop_assume!(!c.is_zero());
            let (a, b) = (f.mul(&c), g.mul(&c));
            proptest::prop_assert_eq!(rat_poly_gcd(&a, &b), euclid_gcd(&a, &b));
        }
    }
}
