use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{euclid_gcd, poly_gcd, rat, Field, Poly, Rat, RatFunc};

/// Element of a tower field in recursive normal form.
///
/// `Base` holds a reduced rational function in `x`. `Ext` is a reduced
/// fraction of polynomials in the generator of its level whose coefficients
/// are elements of strictly lower level. Canonical forms are unique, so
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TowerElem {
    Base(RatFunc),
    Ext(Arc<ExtElem>),
}

/// Fraction `num/den` in the generator `t_level`; `den` is monic, coprime to
/// `num`, and the element is not a plain lower-level value.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtElem {
    pub(crate) level: usize,
    pub(crate) num: Poly<TowerElem>,
    pub(crate) den: Poly<TowerElem>,
}

/// Exponent vector (one entry per generator, negative only for products)
/// mapped to its rational-function coefficient.
pub type Terms = BTreeMap<Vec<i32>, RatFunc>;

impl ExtElem {
    pub fn level(&self) -> usize {
        self.level
    }
    pub fn num(&self) -> &Poly<TowerElem> {
        &self.num
    }
    pub fn den(&self) -> &Poly<TowerElem> {
        &self.den
    }
}

fn poly_is_monomial(p: &Poly<TowerElem>) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 && p.lc().is_one()
}

impl TowerElem {
    pub fn constant(c: Rat) -> TowerElem {
        TowerElem::Base(RatFunc::constant(c))
    }

    pub fn x() -> TowerElem {
        TowerElem::Base(RatFunc::x())
    }

    /// The generator `t_level` itself (`level >= 1`).
    pub fn generator(level: usize) -> TowerElem {
        assert!(level >= 1);
        TowerElem::Ext(Arc::new(ExtElem {
            level,
            num: Poly::x(),
            den: Poly::one(),
        }))
    }

    /// 0 for base elements, otherwise the index of the top generator.
    pub fn level(&self) -> usize {
        match self {
            TowerElem::Base(_) => 0,
            TowerElem::Ext(e) => e.level,
        }
    }

    pub fn as_base(&self) -> Option<&RatFunc> {
        match self {
            TowerElem::Base(r) => Some(r),
            TowerElem::Ext(_) => None,
        }
    }

    pub fn as_ext(&self) -> Option<&ExtElem> {
        match self {
            TowerElem::Base(_) => None,
            TowerElem::Ext(e) => Some(e),
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.as_base().and_then(|r| r.as_constant())
    }

    /// Numerator and denominator as polynomials in `t_level`, for any
    /// `level >= self.level()`.
    pub fn parts_at(&self, level: usize) -> (Poly<TowerElem>, Poly<TowerElem>) {
        match self {
            TowerElem::Ext(e) if e.level == level => (e.num.clone(), e.den.clone()),
            _ => {
                debug_assert!(self.level() < level);
                (Poly::constant(self.clone()), Poly::one())
            }
        }
    }

    /// Builds the canonical element `num/den` at `level`.
    pub fn from_parts(level: usize, num: Poly<TowerElem>, den: Poly<TowerElem>) -> TowerElem {
        assert!(!den.is_zero(), "zero denominator in tower element");
        if level == 0 {
            let n = num.coeff(0);
            let d = den.coeff(0);
            return n.div(&d);
        }
        if num.is_zero() {
            return TowerElem::zero();
        }
        let (num, den) = if den.is_constant() {
            let d = den.coeff(0);
            if d.is_one() {
                (num, den)
            } else {
                (num.scale(&d.inv()), Poly::one())
            }
        } else if poly_is_monomial(&den) {
            let k = den.deg() as usize;
            let tz = num.trailing_degree().min(k);
            (num.shift_down(tz), Poly::monomial(TowerElem::one(), k - tz))
        } else {
            let g = num.gcd(&den);
            let (n, d) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
            let lc = d.lc();
            if lc.is_one() {
                (n, d)
            } else {
                let inv = lc.inv();
                (n.scale(&inv), d.scale(&inv))
            }
        };
        if den.is_one() && num.is_constant() {
            return num.coeff(0);
        }
        TowerElem::Ext(Arc::new(ExtElem { level, num, den }))
    }

    /// True if the representation has no nontrivial denominator at any
    /// level above the base.
    pub fn is_polynomial_above_base(&self) -> bool {
        match self {
            TowerElem::Base(_) => true,
            TowerElem::Ext(e) => {
                e.den.is_one() && e.num.coeffs().iter().all(|c| c.is_polynomial_above_base())
            }
        }
    }

    /// Expands into a sum of monomials in the generators with base
    /// coefficients. Denominators are allowed only where `allow_den(level)`
    /// holds and must be a power of the generator. `None` otherwise.
    pub fn terms_with(&self, ngens: usize, allow_den: &dyn Fn(usize) -> bool) -> Option<Terms> {
        let mut out = Terms::new();
        self.collect_terms(ngens, allow_den, &mut vec![0; ngens], &mut out)?;
        Some(out)
    }

    fn collect_terms(
        &self,
        ngens: usize,
        allow_den: &dyn Fn(usize) -> bool,
        exps: &mut Vec<i32>,
        out: &mut Terms,
    ) -> Option<()> {
        match self {
            TowerElem::Base(r) => {
                if !r.is_zero() {
                    let entry = out.entry(exps.clone()).or_insert_with(RatFunc::zero);
                    *entry = entry.add(r);
                    if entry.is_zero() {
                        out.remove(exps);
                    }
                }
                Some(())
            }
            TowerElem::Ext(e) => {
                let shift = if e.den.is_one() {
                    0
                } else if poly_is_monomial(&e.den) && allow_den(e.level) {
                    e.den.deg() as i32
                } else {
                    return None;
                };
                let slot = e.level - 1;
                for (i, c) in e.num.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    exps[slot] = i as i32 - shift;
                    c.collect_terms(ngens, allow_den, exps, out)?;
                }
                exps[slot] = 0;
                Some(())
            }
        }
    }

    /// Rebuilds an element from its monomial expansion.
    pub fn from_terms(terms: &Terms) -> TowerElem {
        let mut acc = TowerElem::zero();
        for (exps, c) in terms {
            let mut m = TowerElem::Base(c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e != 0 {
                    m = m.mul(&TowerElem::generator(i + 1).powi(e));
                }
            }
            acc = acc.add(&m);
        }
        acc
    }

    pub fn powi(&self, e: i32) -> TowerElem {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = TowerElem::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Every base-level rational function occurring as a coefficient.
    pub fn base_coefficients(&self, out: &mut Vec<RatFunc>) {
        match self {
            TowerElem::Base(r) => out.push(r.clone()),
            TowerElem::Ext(e) => {
                for c in e.num.coeffs().iter().chain(e.den.coeffs()) {
                    if !c.is_zero() {
                        c.base_coefficients(out);
                    }
                }
            }
        }
    }

    /// Levels of all generators occurring in the representation.
    pub fn occurring_levels(&self, out: &mut std::collections::BTreeSet<usize>) {
        if let TowerElem::Ext(e) = self {
            out.insert(e.level);
            for c in e.num.coeffs().iter().chain(e.den.coeffs()) {
                c.occurring_levels(out);
            }
        }
    }

    /// Renders with the given generator names (index `level - 1`).
    pub fn render(&self, names: &[String]) -> String {
        match self {
            TowerElem::Base(r) => r.render("x"),
            TowerElem::Ext(e) => {
                let var = &names[e.level - 1];
                let n = render_poly(&e.num, var, names);
                if e.den.is_one() {
                    n
                } else {
                    format!("({n})/({})", render_poly(&e.den, var, names))
                }
            }
        }
    }
}

fn render_poly(p: &Poly<TowerElem>, var: &str, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = c.render(names);
        let s = if mono.is_empty() {
            cs
        } else if c.is_one() {
            mono
        } else if cs == "-1" {
            format!("-{mono}")
        } else {
            format!("({cs})*{mono}")
        };
        parts.push(s);
    }
    let mut out = String::new();
    for s in parts {
        if !out.is_empty() && !s.starts_with('-') {
            out.push('+');
        }
        out.push_str(&s);
    }
    out
}

impl From<RatFunc> for TowerElem {
    fn from(r: RatFunc) -> Self {
        TowerElem::Base(r)
    }
}

impl Field for TowerElem {
    fn zero() -> Self {
        TowerElem::Base(RatFunc::zero())
    }
    fn one() -> Self {
        TowerElem::Base(RatFunc::one())
    }
    fn is_zero(&self) -> bool {
        matches!(self, TowerElem::Base(r) if r.is_zero())
    }
    fn is_one(&self) -> bool {
        matches!(self, TowerElem::Base(r) if r.is_one())
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if let (TowerElem::Base(a), TowerElem::Base(b)) = (self, o) {
            return TowerElem::Base(a.add(b));
        }
        let level = self.level().max(o.level());
        let (an, ad) = self.parts_at(level);
        let (bn, bd) = o.parts_at(level);
        if ad == bd {
            return TowerElem::from_parts(level, an.add(&bn), ad);
        }
        if ad.is_one() {
            return TowerElem::from_parts(level, an.mul(&bd).add(&bn), bd);
        }
        if bd.is_one() {
            return TowerElem::from_parts(level, bn.mul(&ad).add(&an), ad);
        }
        let g = ad.gcd(&bd);
        let a = ad.exact_div(&g);
        let b = bd.exact_div(&g);
        TowerElem::from_parts(level, an.mul(&b).add(&bn.mul(&a)), a.mul(&bd))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return TowerElem::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if let (TowerElem::Base(a), TowerElem::Base(b)) = (self, o) {
            return TowerElem::Base(a.mul(b));
        }
        let level = self.level().max(o.level());
        let (an, ad) = self.parts_at(level);
        let (bn, bd) = o.parts_at(level);
        if ad.is_one() && bd.is_one() {
            return TowerElem::from_parts(level, an.mul(&bn), ad);
        }
        // Cross-cancel so the final gcd works on smaller polynomials.
        let g1 = an.gcd(&bd);
        let g2 = bn.gcd(&ad);
        let (an, bd) = if g1.is_one() { (an, bd) } else { (an.exact_div(&g1), bd.exact_div(&g1)) };
        let (bn, ad) = if g2.is_one() { (bn, ad) } else { (bn.exact_div(&g2), ad.exact_div(&g2)) };
        TowerElem::from_parts(level, an.mul(&bn), ad.mul(&bd))
    }
    fn neg(&self) -> Self {
        match self {
            TowerElem::Base(r) => TowerElem::Base(r.neg()),
            TowerElem::Ext(e) => TowerElem::Ext(Arc::new(ExtElem {
                level: e.level,
                num: e.num.neg(),
                den: e.den.clone(),
            })),
        }
    }
    fn inv(&self) -> Self {
        match self {
            TowerElem::Base(r) => TowerElem::Base(r.inv()),
            TowerElem::Ext(e) => TowerElem::from_parts(e.level, e.den.clone(), e.num.clone()),
        }
    }
    fn from_rat(r: &Rat) -> Self {
        TowerElem::constant(r.clone())
    }
    fn poly_gcd(p: &Poly<Self>, q: &Poly<Self>) -> Poly<Self> {
        if p.deg() > 0 && q.deg() > 0 && coprime_by_specialization(p, q) {
            return Poly::one();
        }
        euclid_gcd(p, q)
    }
}

/// Sample points for [`coprime_by_specialization`]: the value of `x` and of
/// the generator at `level`.
fn sample_value(point: usize, level: usize) -> Rat {
    let l = level as i64;
    match point {
        0 => rat(3 * l + 5, 2 * l + 7),
        _ => rat(-(5 * l + 11), 3 * l + 4),
    }
}

impl TowerElem {
    /// Value with `x` and every generator replaced by a sample value; `None`
    /// if a denominator vanishes on the way.
    fn eval_sample(&self, point: usize) -> Option<Rat> {
        match self {
            TowerElem::Base(r) => r.eval(&sample_value(point, 0)),
            TowerElem::Ext(e) => {
                let at = sample_value(point, e.level);
                let horner = |p: &Poly<TowerElem>| -> Option<Rat> {
                    let mut acc = Rat::zero();
                    for c in p.coeffs().iter().rev() {
                        acc = acc * &at + c.eval_sample(point)?;
                    }
                    Some(acc)
                };
                let d = horner(&e.den)?;
                if d.is_zero() {
                    return None;
                }
                Some(horner(&e.num)? / d)
            }
        }
    }
}

/// Sound test for `gcd(p, q) = 1`. Specializing the coefficients at a point
/// where both leading coefficients stay nonzero cannot lower the degree of
/// the gcd, so a constant gcd of the images proves coprimality. A false
/// result is inconclusive.
fn coprime_by_specialization(p: &Poly<TowerElem>, q: &Poly<TowerElem>) -> bool {
    let image = |f: &Poly<TowerElem>, point: usize| -> Option<Poly<Rat>> {
        let v = f.coeffs().iter().map(|c| c.eval_sample(point)).collect::<Option<Vec<_>>>()?;
        let img = Poly::new(v);
        (img.deg() == f.deg()).then_some(img)
    };
    (0..2).any(|point| match (image(p, point), image(q, point)) {
        (Some(a), Some(b)) => poly_gcd(&a, &b).deg() == 0,
        _ => false,
    })
}

impl TowerElem {
    pub fn scale_rat(&self, c: &Rat) -> TowerElem {
        if c.is_zero() {
            return TowerElem::zero();
        }
        self.mul(&TowerElem::constant(c.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    fn h() -> TowerElem {
        TowerElem::generator(1)
    }

    #[test]
    fn demotes_constant_fractions() {
        let a = h().add(&TowerElem::x());
        let b = a.sub(&h());
        assert_eq!(b, TowerElem::x());
        assert!(h().div(&h()).is_one());
    }

    #[test]
    fn cancels_common_factors() {
        // (h^2 - 1)/(h + 1) = h - 1
        let one = TowerElem::one();
        let num = h().mul(&h()).sub(&one);
        let q = num.div(&h().add(&one));
        assert_eq!(q, h().sub(&one));
    }

    #[test]
    fn specialization_never_hides_a_common_factor() {
        let x = TowerElem::x();
        // common factor t - h*x in Q(x)(h)[t]
        let common = Poly::new(vec![h().mul(&x).neg(), TowerElem::one()]);
        let a = common.mul(&Poly::new(vec![x.clone(), h()]));
        let b = common.mul(&Poly::new(vec![h().add(&TowerElem::one()), TowerElem::one()]));
        assert!(!coprime_by_specialization(&a, &b));
        assert_eq!(poly_gcd(&a, &b), common);
        let d = Poly::new(vec![h(), TowerElem::one()]);
        assert!(coprime_by_specialization(&a, &d));
        assert_eq!(poly_gcd(&a, &d), euclid_gcd(&a, &d));
    }

    #[test]
    fn terms_round_trip() {
        let e = h().mul(&h()).scale_rat(&rat(1, 2)).add(&TowerElem::generator(2).scale_rat(&rat(1, 2)));
        let t = e.terms_with(2, &|_| false).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[&vec![2, 0]], RatFunc::constant(rat(1, 2)));
        assert_eq!(TowerElem::from_terms(&t), e);
        assert!(h().inv().terms_with(1, &|_| false).is_none());
        let m = h().inv().scale_rat(&rat_int(3));
        assert_eq!(m.terms_with(1, &|_| true).unwrap()[&vec![-1]], RatFunc::constant(rat_int(3)));
    }
}
