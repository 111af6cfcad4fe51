//! Expression fixtures shared by the integration tests.
#![allow(dead_code)]

/// Depth-4 nested harmonic sum.
pub const NESTED: &str =
    "sum(r,1,n,(sum(l,1,r,(sum(i,1,l,1/i)^2+sum(i,1,l,1/i^2))/l)+sum(l,1,r,sum(i,1,l,1/i)/l))/r)";

/// Its depth-2 closed form.
pub const NESTED_CLOSED: &str = "1/12*(H(n)^4+2*H(n)^3+6*(H(n)+1)*H(2,n)*H(n)+3*H(2,n)^2+(8*H(n)+4)*H(3,n)+6*H(4,n))";

/// Recurrence solutions with their closed forms.
pub const DALEMBERT_A4: &str = "sum(i,2,n,sum(j,2,i,(2*j-1)*sum(k,1,j,1/((2*k-3)*(2*k-1)))/((j-1)*j))/i)";
pub const DALEMBERT_A4_CLOSED: &str = "1/2*(H(2,n)-H(n)^2)";

pub const DALEMBERT_A5: &str = "sum(i,3,n,sum(j,3,i,(2*j-1)*sum(k,3,j,(2*(k-2)*(k-1)*k*H(k)-(2*k-1)*(3*k^2-6*k+2))/((k-2)*(k-1)*k*(2*k-3)*(2*k-1)))/((j-1)*j))/i)";
pub const DALEMBERT_A5_CLOSED: &str = "1/2*(-H(n)^2+2*H(2,n)*H(n)-H(n))";

pub const DALEMBERT_B: &str = "sum(i,4,n,sum(j,4,i,(2*j-1)*sum(k,4,j,sum(l,4,k,(2*l-3)*(l^2-3*l+6)*sum(r,3,l,-(2*(2*r^6-27*r^5+117*r^4-254*r^3+398*r^2+2*(r-3)*(r-2)*(r-1)*(r+2)*H(r)*r-446*r+204))/((r-2)*(r-1)*r*(r^2-5*r+10)*(r^2-3*r+6)))/((l-3)*(l-2)*(l-1)*l))/((2*k-3)*(2*k-1)))/((j-1)*j))/i)";
pub const DALEMBERT_B_CLOSED: &str = "1/24*H(n)^2-2*H(n)*sum(k,1,n,H(k)/k^2)+16/3*H(n)-1/2*H(2,n)^2+(1/2*H(n)-69/24)*H(2,n)-1/2*H(4,n)";

/// `H_{2n}` and `H_{2n}^{(2)}` written as sums over `n`.
pub const H2N: &str = "sum(i,1,n,1/(2*i-1)+1/(2*i))";
pub const H2N2: &str = "sum(i,1,n,1/(2*i-1)^2+1/(2*i)^2)";

pub const BINOMIAL_A1: &str = "sum(i,1,n,(4*i-3)/(i*(2*i-1)))";
pub const BINOMIAL_A2: &str = "sum(i,2,n,(4*i-3)*sum(j,2,i,(64*j^4-288*j^3+468*j^2-323*j+84)/((j-1)*j*(2*j-3)*(4*j-7)*(4*j-3)))/(i*(2*i-1)))";
pub const BINOMIAL_B: &str = "-sum(i,2,n,(4*i-3)*sum(j,2,i,(64*j^4-288*j^3+468*j^2-323*j+84)*sum(k,1,j,-(3*(2*k-3)*(2*k-1)*(4*k-7)*(576*k^6-5472*k^5+20980*k^4-41559*k^3+44882*k^2-25113*k+5760))/(k*(64*k^4-544*k^3+1716*k^2-2379*k+1227)*(64*k^4-288*k^3+468*k^2-323*k+84))*prod(m,1,k,m/(2*(2*m-1))))/((j-1)*j*(2*j-3)*(4*j-7)*(4*j-3)))/(i*(2*i-1)))";

pub fn binomial_a1_closed() -> String {
    format!("2*(2*H(n)-{H2N})")
}

pub fn binomial_a2_closed() -> String {
    format!("2*(4*H(n)^2+4*H(n)+{H2N}^2+(-4*H(n)-2)*{H2N}-{H2N2})")
}

pub fn binomial_b_closed() -> String {
    format!(
        "3/14*(44*H(n)^2+16*H(n)+11*{H2N}^2-(44*H(n)+8)*{H2N}-11*{H2N2}+14*sum(i,1,n,1/i^2*prod(j,1,i,j/(2*(2*j-1)))))"
    )
}

use nsopt::algebra::{Field, Poly, Rat, RatFunc};
use nsopt::dfield::{adjoin_pi, adjoin_sigma_star, Tower, TowerElem, DEFAULT_PI_MAX_POWER};
use nsopt::expr::EvalSpec;
use rand::Rng;

pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
}

/// Random polynomial of degree at most `deg` with small integer coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, deg: usize) -> Poly<Rat> {
    let cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-4i64..=4)).collect();
    Poly::from_ints(&cs)
}

/// Random rational function; denominators favour factors `x - a` with small
/// `a >= 0` so that evaluation poles occur.
pub fn random_ratfunc<R: Rng>(rng: &mut R, deg: usize) -> RatFunc {
    let num = random_poly(rng, deg);
    let mut den = Poly::one();
    for _ in 0..rng.gen_range(0..=deg) {
        let f = if rng.gen_bool(0.5) {
            Poly::from_ints(&[-rng.gen_range(0i64..=4), 1])
        } else {
            Poly::from_ints(&[rng.gen_range(1i64..=5), rng.gen_range(1i64..=3)])
        };
        den = den.mul(&f);
    }
    RatFunc::new(num, den)
}

/// `Q(x)(b)(h)(h2)` with `b(n) = 1/binom(2n, n)`, `h = H_n`, `h2 = H_n^(2)`.
pub fn standard_tower() -> (Tower, EvalSpec) {
    let alpha = TowerElem::Base(RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[2, 4])));
    let t = adjoin_pi(&Tower::new(), &alpha, DEFAULT_PI_MAX_POWER).unwrap();
    let t = adjoin_sigma_star(&t, &TowerElem::Base(RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1])))).unwrap();
    let t = adjoin_sigma_star(&t, &TowerElem::Base(RatFunc::new(Poly::one(), Poly::from_ints(&[1, 2, 1])))).unwrap();
    let mut spec = EvalSpec::new();
    spec.extend_default(&t);
    (t, spec)
}

/// Random polynomial part of [`standard_tower`]: a sparse combination of
/// `b^i h^j h2^k` with `i` in `-1..=1` and `j + k <= 2`.
pub fn random_poly_part<R: Rng>(rng: &mut R, tower: &Tower) -> TowerElem {
    let (b, h, h2) = (tower.gen_elem(1), tower.gen_elem(2), tower.gen_elem(3));
    let mut f = TowerElem::zero();
    for i in -1..=1 {
        for j in 0..=2 {
            for k in 0..=2 - j {
                if rng.gen_bool(0.3) {
                    let c = TowerElem::Base(random_ratfunc(rng, 2));
                    let m = b.powi(i).mul(&h.powi(j)).mul(&h2.powi(k));
                    f = f.add(&c.mul(&m));
                }
            }
        }
    }
    f
}

/// Random element of [`standard_tower`], possibly divided by `c*g + r` with
/// `g` one of `h`, `h2` and `r` in `Q(x)`.
pub fn random_elem<R: Rng>(rng: &mut R, tower: &Tower) -> TowerElem {
    let f = random_poly_part(rng, tower);
    if rng.gen_bool(0.3) {
        let g = tower.gen_elem(rng.gen_range(2..=3));
        let c = small_rat(rng);
        if !Field::is_zero(&c) {
            let r = TowerElem::Base(random_ratfunc(rng, 1));
            return f.div(&g.scale_rat(&c).add(&r));
        }
    }
    f
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !Field::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..rows {
            if i != r && !Field::is_zero(&m[i][c]) {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
