//! Parameterized first-order solving over `Q(x)`.

use num_traits::{Signed, ToPrimitive};

use crate::algebra::{dispersion_set, nullspace, Field, Poly, Rat, RatFunc};

fn lcm(a: &Poly<Rat>, b: &Poly<Rat>) -> Poly<Rat> {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    a.mul(&b.exact_div(&a.gcd(b))).monic()
}

fn shift_int(p: &Poly<Rat>, h: i64) -> Poly<Rat> {
    p.shift(&Rat::from_integer(h.into()))
}

/// Abramov's universal denominator for `a1 y(x+1) + a0 y(x) = rhs`: every
/// rational solution has denominator dividing the returned polynomial.
pub(crate) fn universal_denominator(a1: &Poly<Rat>, a0: &Poly<Rat>) -> Poly<Rat> {
    let mut a = shift_int(a1, -1);
    let mut b = a0.clone();
    let mut u = Poly::one();
    let disp = dispersion_set(&a, &b);
    for &i in disp.iter().rev() {
        let i = i as i64;
        let d = a.gcd(&shift_int(&b, i));
        if d.deg() <= 0 {
            continue;
        }
        a = a.exact_div(&d);
        b = b.exact_div(&shift_int(&d, -i));
        for j in 0..=i {
            u = u.mul(&shift_int(&d, -j));
        }
    }
    u.monic()
}

/// Upper bound on `deg P` for polynomial solutions of
/// `a sigma(P) + b P = rhs` with `deg rhs <= deg_rhs`; `None` if only `P = 0`
/// is possible.
fn degree_bound(a: &Poly<Rat>, b: &Poly<Rat>, deg_rhs: isize) -> Option<usize> {
    let s = a.add(b);
    let da = a.deg();
    let ds = s.deg();
    let bound = if s.is_zero() || ds < da - 1 {
        deg_rhs - da + 1
    } else if ds >= da {
        deg_rhs - ds
    } else {
        // ds = da - 1: leading terms may cancel at d = -lc(s)/lc(a).
        let d0 = -(s.lc() / a.lc());
        let special = if d0.is_integer() && !d0.is_negative() { d0.to_integer().to_isize().unwrap_or(-1) } else { -1 };
        (deg_rhs - ds).max(special)
    };
    (bound >= 0).then_some(bound as usize)
}

/// Basis of the `Q`-space of pairs `(c, g)` with
/// `gamma sigma(g) - g = sum_k c_k rhs_k`, `c` in `Q^K`, `g` in `Q(x)`.
pub fn base_param_solve(gamma: &RatFunc, rhs: &[RatFunc]) -> Vec<(Vec<Rat>, RatFunc)> {
    assert!(!gamma.is_zero(), "gamma must be nonzero");
    let k = rhs.len();
    let (ga, gb) = (gamma.num(), gamma.den());
    let mut q = Poly::one();
    for f in rhs {
        q = lcm(&q, f.den());
    }
    let a1 = q.mul(ga);
    let a0 = q.mul(gb).neg();
    let r: Vec<Poly<Rat>> = rhs.iter().map(|f| gb.mul(f.num()).mul(&q.exact_div(f.den()))).collect();

    let u = universal_denominator(&a1, &a0);
    let su = shift_int(&u, 1);
    let mut ap = a1.mul(&u);
    let mut bp = a0.mul(&su);
    let uu = u.mul(&su);
    let mut rp: Vec<Poly<Rat>> = r.iter().map(|x| x.mul(&uu)).collect();
    let mut g = ap.gcd(&bp);
    for x in &rp {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if g.deg() > 0 {
        ap = ap.exact_div(&g);
        bp = bp.exact_div(&g);
        rp = rp.iter().map(|x| x.exact_div(&g)).collect();
    }

    let deg_rhs = rp.iter().map(|x| x.deg()).max().unwrap_or(-1);
    let dmax = degree_bound(&ap, &bp, deg_rhs);
    let npoly = dmax.map_or(0, |d| d + 1);

    // columns: c_1..c_K, p_0..p_d
    let mut cols: Vec<Poly<Rat>> = rp.iter().map(|x| x.neg()).collect();
    let step = Poly::from_ints(&[1, 1]);
    let mut sx = Poly::one();
    let mut x = Poly::one();
    for _ in 0..npoly {
        cols.push(ap.mul(&sx).add(&bp.mul(&x)));
        sx = sx.mul(&step);
        x = x.shift_up(1);
    }
    let nrows = cols.iter().map(|c| c.deg() + 1).max().unwrap_or(0).max(0) as usize;
    let rows: Vec<Vec<Rat>> = (0..nrows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let ncols = cols.len();
    let ns = if nrows == 0 {
        (0..ncols)
            .map(|j| (0..ncols).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect()
    } else {
        nullspace(&rows, ncols)
    };
    ns.into_iter()
        .map(|v| {
            let c = v[..k].to_vec();
            let p = Poly::new(v[k..].to_vec());
            (c, RatFunc::new(p, u.clone()))
        })
        .collect()
}
