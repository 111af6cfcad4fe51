//! Exact evaluation of expressions and of tower elements under an embedding.

use num_traits::{One, Zero};

use super::ast::SumExpr;
use super::ExprError;
use crate::algebra::{nonneg_integer_roots, Poly, Rat, RatFunc};
use crate::dfield::{GenKind, Tower, TowerElem};

fn rat_k(k: u64) -> Rat {
    Rat::from_integer(k.into())
}

/// Value of a rational function at `k`, 0 at poles.
pub fn eval_ratfunc(r: &RatFunc, k: u64) -> Rat {
    r.eval(&rat_k(k)).unwrap_or_else(Rat::zero)
}

/// Values of `e` at `0..=n`.
pub fn evaluate_seq(e: &SumExpr, n: u64) -> Vec<Rat> {
    let len = n as usize + 1;
    match e {
        SumExpr::Const(c) => vec![c.clone(); len],
        SumExpr::Base(r) => (0..=n).map(|k| eval_ratfunc(r, k)).collect(),
        SumExpr::Plus(v) => {
            let mut acc = vec![Rat::zero(); len];
            for c in v {
                for (a, b) in acc.iter_mut().zip(evaluate_seq(c, n)) {
                    *a += b;
                }
            }
            acc
        }
        SumExpr::Times(v) => {
            let mut acc = vec![Rat::one(); len];
            for c in v {
                for (a, b) in acc.iter_mut().zip(evaluate_seq(c, n)) {
                    *a *= b;
                }
            }
            acc
        }
        SumExpr::Power(b, k) => {
            evaluate_seq(b, n).into_iter().map(|x| num_traits::pow(x, *k as usize)).collect()
        }
        SumExpr::Sum { lower, body, .. } => {
            let vals = evaluate_seq(body, n);
            let mut acc = Rat::zero();
            (0..len)
                .map(|k| {
                    if k as u64 >= *lower {
                        acc += &vals[k];
                    }
                    acc.clone()
                })
                .collect()
        }
        SumExpr::Prod { lower, body, .. } => {
            let vals = evaluate_seq(body, n);
            let mut acc = Rat::one();
            (0..len)
                .map(|k| {
                    if k as u64 >= *lower {
                        acc *= &vals[k];
                    }
                    acc.clone()
                })
                .collect()
        }
    }
}

/// Value of `e` at `k`.
pub fn evaluate(e: &SumExpr, k: u64) -> Rat {
    evaluate_seq(e, k).pop().unwrap()
}

fn pole_bound(p: &Poly<Rat>) -> u64 {
    if p.is_constant() {
        return 0;
    }
    nonneg_integer_roots(p).ok().and_then(|s| s.last().copied()).map_or(0, |r| r + 1)
}

/// Smallest `l` such that `f` has no pole at any `k >= l`.
pub fn o_function_base(f: &RatFunc) -> u64 {
    pole_bound(f.den())
}

/// Smallest `l` such that `f(k) != 0` for all `k >= l`.
pub fn z_function_base(f: &RatFunc) -> Result<u64, ExprError> {
    if f.num().is_zero() {
        return Err(ExprError::ZeroElement);
    }
    Ok(pole_bound(&f.num().mul(f.den())))
}

/// Lower bound and constant of one generator's sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub lower: u64,
    pub constant: Rat,
}

/// Evaluation data for every generator of a tower, in level order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvalSpec {
    gens: Vec<GenSpec>,
}

impl EvalSpec {
    pub fn new() -> EvalSpec {
        EvalSpec::default()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Spec of generator `level` (1-based).
    pub fn get(&self, level: usize) -> &GenSpec {
        &self.gens[level - 1]
    }

    pub fn push(&mut self, g: GenSpec) {
        self.gens.push(g);
    }

    /// Extends the spec to cover new generators with the default choice:
    /// `r = L(beta) + 1, c = 0` for sums and `r = max(L(alpha), Z(alpha)) + 1,
    /// c = 1` for products.
    pub fn extend_default(&mut self, tower: &Tower) {
        for level in self.gens.len() + 1..=tower.len() {
            let g = tower.generator(level);
            let spec = match g.kind {
                GenKind::SigmaStar => {
                    GenSpec { lower: o_function(tower, self, &g.shift_part) + 1, constant: Rat::zero() }
                }
                GenKind::Pi => GenSpec { lower: product_lower_bound(tower, self, &g.shift_part), constant: Rat::one() },
            };
            self.gens.push(spec);
        }
    }
}

/// `max(L(alpha), Z(alpha)) + 1` for a product factor.
pub(crate) fn product_lower_bound(tower: &Tower, spec: &EvalSpec, alpha: &TowerElem) -> u64 {
    let z = alpha.as_base().and_then(|a| z_function_base(a).ok()).unwrap_or(0);
    o_function(tower, spec, alpha).max(z) + 1
}

/// o-function of a tower element: the largest base bound among its
/// coefficients and `r - 1` over the generators that occur in it.
pub fn o_function(tower: &Tower, spec: &EvalSpec, f: &TowerElem) -> u64 {
    match f {
        TowerElem::Base(r) => o_function_base(r),
        TowerElem::Ext(e) => {
            let mut l = spec.get(e.level()).lower.saturating_sub(1);
            for c in e.num().coeffs().iter().chain(e.den().coeffs()) {
                l = l.max(o_function(tower, spec, c));
            }
            l
        }
    }
}

/// Evaluation session with per-generator memo tables.
pub struct Evaluator<'a> {
    tower: &'a Tower,
    spec: &'a EvalSpec,
    memo: Vec<Vec<Rat>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(tower: &'a Tower, spec: &'a EvalSpec) -> Evaluator<'a> {
        assert!(spec.len() >= tower.len(), "evaluation spec does not cover the tower");
        Evaluator { tower, spec, memo: vec![Vec::new(); tower.len()] }
    }

    /// `ev'(t_level, k)`.
    pub fn generator(&mut self, level: usize, k: u64) -> Rat {
        let k = k as usize;
        while self.memo[level - 1].len() <= k {
            let i = self.memo[level - 1].len();
            let GenSpec { lower, constant } = self.spec.get(level).clone();
            let v = if (i as u64) < lower {
                constant
            } else {
                let g = self.tower.generator(level);
                let kind = g.kind;
                let shift = g.shift_part.clone();
                let prev = if i as u64 == lower { constant } else { self.memo[level - 1][i - 1].clone() };
                let s = self.eval(&shift, i as u64 - 1);
                match kind {
                    GenKind::SigmaStar => prev + s,
                    GenKind::Pi => prev * s,
                }
            };
            self.memo[level - 1].push(v);
        }
        self.memo[level - 1][k].clone()
    }

    /// `ev'(f, k)`; a vanishing denominator gives 0.
    pub fn eval(&mut self, f: &TowerElem, k: u64) -> Rat {
        match f {
            TowerElem::Base(r) => eval_ratfunc(r, k),
            TowerElem::Ext(e) => {
                let t = self.generator(e.level(), k);
                let den = self.eval_poly(e.den(), &t, k);
                if den.is_zero() {
                    return Rat::zero();
                }
                self.eval_poly(e.num(), &t, k) / den
            }
        }
    }

    fn eval_poly(&mut self, p: &Poly<TowerElem>, t: &Rat, k: u64) -> Rat {
        let mut acc = Rat::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc * t + self.eval(c, k);
        }
        acc
    }
}

/// One-shot `ev'(f, k)`.
pub fn eval_field(tower: &Tower, spec: &EvalSpec, f: &TowerElem, k: u64) -> Rat {
    Evaluator::new(tower, spec).eval(f, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Field};
    use crate::dfield::{adjoin_pi, adjoin_sigma_star, DEFAULT_PI_MAX_POWER};
    use crate::expr::parse;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    #[test]
    fn expression_values() {
        assert_eq!(evaluate(&parse("sum(i,1,n,1/i)").unwrap(), 3), rat(11, 6));
        assert_eq!(evaluate(&SumExpr::Base(rf(&[1], &[-2, 1])), 2), rat(0, 1));
        assert_eq!(evaluate(&parse("prod(i,1,n,i)").unwrap(), 5), rat(120, 1));
        assert_eq!(evaluate(&parse("prod(i,3,n,i)").unwrap(), 1), rat(1, 1));
    }

    #[test]
    fn o_and_z_functions() {
        assert_eq!(o_function_base(&rf(&[1], &[-3, 1])), 4);
        assert_eq!(o_function_base(&rf(&[1, 0, 1], &[1])), 0);
        assert_eq!(z_function_base(&rf(&[-5, 1], &[-2, 1])).unwrap(), 6);
        assert_eq!(z_function_base(&RatFunc::one()).unwrap(), 0);
        assert_eq!(z_function_base(&RatFunc::x()).unwrap(), 1);
        assert_eq!(z_function_base(&RatFunc::zero()), Err(ExprError::ZeroElement));

        let h = TowerElem::Base(rf(&[1], &[1, 1]));
        let t = adjoin_sigma_star(&Tower::new(), &h).unwrap();
        let t = adjoin_sigma_star(&t, &TowerElem::Base(rf(&[1], &[1, 2, 1]))).unwrap();
        let mut spec = EvalSpec::new();
        spec.extend_default(&t);
        let f = t.gen_elem(1).mul(&TowerElem::Base(rf(&[1], &[-3, 1]))).add(&t.gen_elem(2));
        assert_eq!(o_function(&t, &spec, &f), 4);
    }

    #[test]
    fn harmonic_and_central_binomial() {
        let t = adjoin_sigma_star(&Tower::new(), &TowerElem::Base(rf(&[1], &[1, 1]))).unwrap();
        let mut spec = EvalSpec::new();
        spec.extend_default(&t);
        let mut ev = Evaluator::new(&t, &spec);
        let mut hk = rat(0, 1);
        for k in 0..20u64 {
            if k > 0 {
                hk += rat(1, k as i64);
            }
            assert_eq!(ev.eval(&t.gen_elem(1), k), hk);
        }

        let alpha = TowerElem::Base(rf(&[1, 1], &[2, 4]));
        let t = adjoin_pi(&Tower::new(), &alpha, DEFAULT_PI_MAX_POWER).unwrap();
        let mut spec = EvalSpec::new();
        spec.extend_default(&t);
        assert_eq!(spec.get(1), &GenSpec { lower: 1, constant: rat(1, 1) });
        let mut ev = Evaluator::new(&t, &spec);
        let mut binom = num_bigint::BigInt::from(1);
        for k in 0..20i64 {
            if k > 0 {
                binom = binom * (2 * k) * (2 * k - 1) / (k * k);
            }
            assert_eq!(ev.eval(&t.gen_elem(1), k as u64), Rat::new(1.into(), binom.clone()));
        }
    }
}
