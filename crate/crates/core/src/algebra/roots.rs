//! Rational roots, squarefree decomposition, denominator atoms and shift
//! dispersion. Atoms are found by rational-root search plus gcd splitting of
//! the remaining cofactors against their integer shifts; cofactors that do not
//! split this way are kept whole.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, Poly, Rat, RatFunc};

/// `p = scale * prim` with `prim` integral, primitive and with positive
/// leading coefficient.
pub(crate) fn primitive_parts(p: &Poly<Rat>) -> (Rat, Vec<BigInt>) {
    if p.is_zero() {
        return (<Rat as Zero>::zero(), Vec::new());
    }
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
    (Rat::new(g, l), prim)
}

/// Primitive integer coefficient vector of `p` (ascending).
pub fn integer_content(p: &Poly<Rat>) -> Vec<BigInt> {
    primitive_parts(p).1
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Integer upper bound on the absolute value of every complex root
/// (Fujiwara-style, rounded up).
pub(crate) fn root_bound(p: &Poly<Rat>) -> BigInt {
    let c = integer_content(p);
    let n = c.len() - 1;
    if n == 0 {
        return BigInt::zero();
    }
    let an = c[n].abs();
    let mut best = BigInt::zero();
    for i in 1..=n {
        let a = c[n - i].abs();
        if a.is_zero() {
            continue;
        }
        let q = ceil_div(&a, &an);
        let r = q.nth_root(i as u32) + 1;
        if r > best {
            best = r;
        }
    }
    best * 2
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u128()?;
    if n == 0 || n > 1_000_000_000_000u128 {
        return None;
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut d = 2u128;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u128];
    for (p, e) in primes {
        let cur = divs.clone();
        let mut pk = 1u128;
        for _ in 0..e {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.sort();
    Some(divs.into_iter().map(BigInt::from).collect())
}

fn eval_int_at(c: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    // q^n * poly(p/q)
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    let n = c.len();
    let mut terms = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        terms[i] = qpow.clone();
        qpow *= q;
    }
    let mut ppow = BigInt::one();
    for i in 0..n {
        acc += &c[i] * &ppow * &terms[i];
        ppow *= p;
    }
    acc
}

/// All distinct rational roots of a nonzero polynomial, ascending.
pub fn rational_roots(p: &Poly<Rat>) -> Vec<Rat> {
    let mut roots = BTreeSet::new();
    if p.deg() <= 0 {
        return Vec::new();
    }
    let tz = p.trailing_degree();
    if tz > 0 {
        roots.insert(<Rat as Zero>::zero());
    }
    let q = p.shift_down(tz);
    if q.deg() >= 1 {
        let c = integer_content(&q);
        let a0 = c[0].clone();
        let an = c[c.len() - 1].clone();
        let bound = root_bound(&q);
        let dens = small_divisors(&an);
        let nums = small_divisors(&a0);
        let dens = match dens {
            Some(d) => d,
            None => vec![BigInt::one()],
        };
        for den in &dens {
            let limit = &bound * den;
            let mut test = |num: BigInt| {
                if num.gcd(den).is_one() && eval_int_at(&c, &num, den).is_zero() {
                    roots.insert(Rat::new(num, den.clone()));
                }
            };
            match &nums {
                Some(ns) => {
                    for n in ns {
                        if *n <= limit {
                            test(n.clone());
                            test(-n.clone());
                        }
                    }
                }
                None => {
                    let mut k = BigInt::one();
                    while k <= limit {
                        if (&a0 % &k).is_zero() {
                            test(k.clone());
                            test(-k.clone());
                        }
                        k += 1;
                    }
                }
            }
        }
    }
    roots.into_iter().collect()
}

/// The natural numbers `n` with `p(n) = 0`.
pub fn nonneg_integer_roots(p: &Poly<Rat>) -> Result<BTreeSet<u64>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(rational_roots(p)
        .into_iter()
        .filter(|r| r.is_integer() && !r.is_negative())
        .filter_map(|r| r.to_integer().to_u64())
        .collect())
}

pub fn squarefree_part(p: &Poly<Rat>) -> Poly<Rat> {
    if p.deg() <= 0 {
        return Poly::one();
    }
    let g = p.gcd(&p.derivative());
    p.exact_div(&g).monic()
}

/// Yun's squarefree decomposition of a monic polynomial: `(factor, multiplicity)`
/// with pairwise coprime, squarefree factors.
fn squarefree_decomposition(p: &Poly<Rat>) -> Vec<(Poly<Rat>, usize)> {
    let mut out = Vec::new();
    if p.deg() <= 0 {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.exact_div(&a);
    let mut c = df.exact_div(&a);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        a = b.gcd(&d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn linear(root: &Rat) -> Poly<Rat> {
    Poly::new(vec![-root.clone(), <Rat as One>::one()])
}

/// Splits squarefree nonlinear cofactors by gcds with integer shifts of each
/// other, so shift-related factors end up in separate atoms.
fn refine_by_shifts(mut parts: Vec<Poly<Rat>>) -> Vec<Poly<Rat>> {
    loop {
        let mut changed = false;
        'outer: for i in 0..parts.len() {
            for j in 0..parts.len() {
                let bound = root_bound(&parts[i]) + root_bound(&parts[j]);
                let bound = bound.to_i64().unwrap_or(i64::MAX).min(10_000);
                for h in -bound..=bound {
                    if i == j && h == 0 {
                        continue;
                    }
                    let shifted = parts[j].shift(&Rat::from_integer(h.into()));
                    let g = parts[i].gcd(&shifted);
                    if g.deg() > 0 && g.deg() < parts[i].deg() {
                        let rest = parts[i].exact_div(&g);
                        parts[i] = g;
                        parts.push(rest.monic());
                        changed = true;
                        break 'outer;
                    }
                }
            }
        }
        if !changed {
            return parts;
        }
    }
}

fn atom_key(p: &Poly<Rat>) -> (isize, Vec<Rat>) {
    (p.deg(), p.coeffs().to_vec())
}

/// Monic atoms of the denominator with multiplicities; their product with
/// multiplicities is `den(f)`.
pub fn partial_fraction_atoms(f: &RatFunc) -> Vec<(Poly<Rat>, usize)> {
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(f.den()) {
        let mut rest = factor.clone();
        for r in rational_roots(&factor) {
            let l = linear(&r);
            rest = rest.exact_div(&l);
            out.push((l, mult));
        }
        if rest.deg() > 0 {
            for part in refine_by_shifts(vec![rest.monic()]) {
                out.push((part, mult));
            }
        }
    }
    out.sort_by(|a, b| atom_key(&a.0).cmp(&atom_key(&b.0)).then(a.1.cmp(&b.1)));
    out
}

/// Canonical representative of the shift class of a monic atom `a`: the
/// shift `a(x + k)` whose subleading coefficient divided by the degree lies in
/// `(0, 1]`. Returns the representative and `k`.
pub fn shift_class_rep(a: &Poly<Rat>) -> (Poly<Rat>, i64) {
    let n = a.deg();
    if n <= 0 {
        return (a.clone(), 0);
    }
    let c = a.coeff(n as usize - 1) / Rat::from_integer(BigInt::from(n));
    // want c + k in (0, 1]
    let k: BigInt = -(c.ceil().to_integer()) + 1;
    let k = k.to_i64().expect("shift out of range");
    (a.shift(&Rat::from_integer(k.into())), k)
}

/// Nonnegative integers `h` with `gcd(a(x), b(x + h)) != 1`.
pub fn dispersion_set(a: &Poly<Rat>, b: &Poly<Rat>) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    if a.deg() <= 0 || b.deg() <= 0 {
        return out;
    }
    let sa = squarefree_part(a);
    let sb = squarefree_part(b);
    let ra = rational_roots(&sa);
    let rb = rational_roots(&sb);
    for alpha in &ra {
        for beta in &rb {
            let h = beta - alpha;
            if h.is_integer() && !h.is_negative() {
                if let Some(v) = h.to_integer().to_u64() {
                    out.insert(v);
                }
            }
        }
    }
    let mut na = sa.clone();
    for r in &ra {
        na = na.exact_div(&linear(r));
    }
    let mut nb = sb.clone();
    for r in &rb {
        nb = nb.exact_div(&linear(r));
    }
    if na.deg() > 0 && nb.deg() > 0 {
        let bound = (root_bound(&na) + root_bound(&nb)).to_u64().unwrap_or(u64::MAX).min(100_000);
        for h in 0..=bound {
            let g = na.gcd(&nb.shift(&Rat::from_integer(h.into())));
            if g.deg() > 0 {
                out.insert(h);
            }
        }
    }
    out
}
