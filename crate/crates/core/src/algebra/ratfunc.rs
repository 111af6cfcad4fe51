use num_traits::{One, Zero};

use super::{AlgebraError, Field, Poly, Rat};

/// Reduced rational function over the rationals: coprime numerator and monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly<Rat>,
    den: Poly<Rat>,
}

/// Reduces `num/den` to lowest terms with a monic denominator.
pub fn ratfunc_normalize(num: Poly<Rat>, den: Poly<Rat>) -> Result<RatFunc, AlgebraError> {
    if den.is_zero() {
        return Err(AlgebraError::ZeroDenominator);
    }
    Ok(RatFunc::reduce(num, den))
}

impl RatFunc {
    fn reduce(num: Poly<Rat>, den: Poly<Rat>) -> RatFunc {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lc = den.lc();
        if One::is_one(&lc) {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Builds a fraction; panics on a zero denominator.
    pub fn new(num: Poly<Rat>, den: Poly<Rat>) -> RatFunc {
        ratfunc_normalize(num, den).expect("zero denominator")
    }

    pub fn from_poly(p: Poly<Rat>) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn x() -> RatFunc {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<Rat> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Rat> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `f(x + c)`.
    pub fn shift(&self, c: &Rat) -> RatFunc {
        if Zero::is_zero(c) || self.is_constant() {
            return self.clone();
        }
        RatFunc::reduce(self.num.shift(c), self.den.shift(c))
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, at: &Rat) -> Option<Rat> {
        let d = self.den.eval(at);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    /// Polynomial part and proper remainder: `f = q + r/den` with `deg r < deg den`.
    pub fn split_polynomial(&self) -> (Poly<Rat>, RatFunc) {
        let (q, r) = self.num.divrem(&self.den);
        (q, RatFunc { num: r, den: self.den.clone() })
    }

    pub fn pow(&self, e: i32) -> RatFunc {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Renders as `num` or `(num)/(den)` with integer coefficients in `var`.
    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        let (sn, pn) = self.num.primitive();
        let (sd, pd) = self.den.primitive();
        let scale = sn / sd;
        let n = Poly::new(pn.into_iter().map(Rat::from_integer).collect()).scale(&Rat::from_integer(scale.numer().clone()));
        let d = Poly::new(pd.into_iter().map(Rat::from_integer).collect()).scale(&Rat::from_integer(scale.denom().clone()));
        let ns = n.render(var);
        let ds = d.render(var);
        let terms = |p: &Poly<Rat>| p.coeffs().iter().filter(|c| !Zero::is_zero(*c)).count();
        let ns = if terms(&n) > 1 { format!("({ns})") } else { ns };
        let bare = terms(&d) == 1 && !ds.starts_with('-') && !ds.contains('*') && !ds.contains('^');
        let ds = if bare { ds } else { format!("({ds})") };
        format!("{ns}/{ds}")
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc { num: self.num.add(&o.num), den: Poly::one() };
            }
            return RatFunc::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFunc { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = self.den.gcd(&o.den);
        let a = self.den.exact_div(&g);
        let b = o.den.exact_div(&g);
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        RatFunc::reduce(num, a.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: Poly::one() };
        }
        // Cross-cancel before multiplying to keep degrees small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1) };
        let d2 = if g1.is_one() { o.den.clone() } else { o.den.exact_div(&g1) };
        let n2 = if g2.is_one() { o.num.clone() } else { o.num.exact_div(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2) };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.lc();
        let inv = lc.recip();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "division by zero rational function");
        RatFunc::reduce(self.den.clone(), self.num.clone())
    }
    fn from_rat(r: &Rat) -> Self {
        RatFunc::constant(r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_ints(cs)
    }

    #[test]
    fn normalize_examples() {
        let f = ratfunc_normalize(p(&[2, 2]), p(&[-2, 0, 2])).unwrap();
        assert_eq!(f.num(), &p(&[1]));
        assert_eq!(f.den(), &p(&[-1, 1]));
        let z = ratfunc_normalize(Poly::zero(), p(&[0, 1])).unwrap();
        assert!(z.num().is_zero() && z.den().is_one());
        let h = ratfunc_normalize(p(&[0, 3]), p(&[6])).unwrap();
        assert_eq!(h.num(), &Poly::new(vec![rat(0, 1), rat(1, 2)]));
        assert!(h.den().is_one());
        assert_eq!(ratfunc_normalize(p(&[1]), Poly::zero()), Err(AlgebraError::ZeroDenominator));
    }

    #[test]
    fn idempotent() {
        let f = RatFunc::new(p(&[3, 1]), p(&[2, 3, 1]));
        let g = ratfunc_normalize(f.num().clone(), f.den().clone()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn render_forms() {
        let f = RatFunc::new(p(&[1]), p(&[-1, 2]));
        assert_eq!(f.render("x"), "1/(2*x-1)");
        let g = RatFunc::new(p(&[0, 1]), p(&[2]));
        assert_eq!(g.render("x"), "1/2*x");
        let h = RatFunc::new(p(&[-3]), p(&[0, 0, 4]));
        assert_eq!(h.render("k"), "-3/(4*k^2)");
    }
}
