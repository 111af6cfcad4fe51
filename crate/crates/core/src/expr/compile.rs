//! Compilation of expressions into tower elements with a validity bound.

use std::collections::HashMap;

use super::ast::SumExpr;
use super::eval::{evaluate_seq, o_function, product_lower_bound, EvalSpec, Evaluator, GenSpec};
use super::ExprError;
use crate::algebra::{Field, Rat, RatFunc};
use crate::dfield::{adjoin_pi, depth, sigma, DFieldError, GenKind, Tower, TowerElem, DEFAULT_PI_MAX_POWER};
use crate::telescope::{telescope_depth_optimal, SearchConfig};

/// Output of [`compile`]: `ev'(a, k)` equals the input at every `k >= lambda`.
#[derive(Clone, Debug)]
pub struct CompileResult {
    pub tower: Tower,
    pub spec: EvalSpec,
    pub a: TowerElem,
    pub lambda: u64,
    /// False if some generator came from the non-certified fallback.
    pub optimality_certified: bool,
}

/// Compilation state: the growing tower, its evaluation data and a cache of
/// already compiled sums.
pub struct Compiler {
    tower: Tower,
    spec: EvalSpec,
    cfg: SearchConfig,
    sums: HashMap<SumExpr, (TowerElem, u64)>,
    certified: bool,
}

impl Default for Compiler {
    fn default() -> Self {
        Compiler::new(SearchConfig::default())
    }
}

impl Compiler {
    pub fn new(cfg: SearchConfig) -> Compiler {
        Compiler { tower: Tower::new(), spec: EvalSpec::new(), cfg, sums: HashMap::new(), certified: true }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn spec(&self) -> &EvalSpec {
        &self.spec
    }

    /// Registers a product generator with `sigma(t) = alpha t`, `ev'(t, k) =
    /// prod_{i=lower}^k alpha(i-1)`. Returns its level.
    pub fn with_product(&mut self, alpha: &RatFunc, lower: Option<u64>) -> Result<usize, ExprError> {
        let alpha = TowerElem::Base(alpha.clone());
        if let Some(l) = self.product_level(&alpha) {
            return Ok(l);
        }
        let t = adjoin_pi(&self.tower, &alpha, DEFAULT_PI_MAX_POWER).map_err(|e| match e {
            DFieldError::PiCriterionFails(m, w) => ExprError::UnsupportedShape(format!(
                "product factor {} is not transcendental (power {m}, witness {})",
                alpha.render(&[]),
                self.tower.render(&w)
            )),
            other => other.into(),
        })?;
        let rb = product_lower_bound(&self.tower, &self.spec, &alpha);
        let r = lower.unwrap_or(rb);
        if r < rb {
            return Err(ExprError::UnsupportedShape(format!(
                "product lower bound {r} is below the admissible bound {rb}"
            )));
        }
        self.tower = t;
        self.spec.push(GenSpec { lower: r, constant: Rat::one() });
        Ok(self.tower.len())
    }

    fn product_level(&self, alpha: &TowerElem) -> Option<usize> {
        (1..=self.tower.len()).find(|&l| {
            let g = self.tower.generator(l);
            g.kind == GenKind::Pi && g.shift_part == *alpha
        })
    }

    fn register_products(&mut self, e: &SumExpr) -> Result<(), ExprError> {
        match e {
            SumExpr::Const(_) | SumExpr::Base(_) => Ok(()),
            SumExpr::Plus(v) | SumExpr::Times(v) => v.iter().try_for_each(|c| self.register_products(c)),
            SumExpr::Power(b, _) => self.register_products(b),
            SumExpr::Sum { body, .. } => self.register_products(body),
            SumExpr::Prod { body, .. } => {
                let phi = body
                    .leaf_value()
                    .ok_or_else(|| ExprError::UnsupportedShape("product body must be a rational function".into()))?;
                if phi.is_zero() {
                    return Err(ExprError::UnsupportedShape("zero product body".into()));
                }
                self.with_product(&phi.shift(&Rat::one()), None).map(|_| ())
            }
        }
    }

    fn l(&self, f: &TowerElem) -> u64 {
        o_function(&self.tower, &self.spec, f)
    }

    /// Compiles `e` and tightens the validity bound against exact values.
    pub fn compile(&mut self, e: &SumExpr) -> Result<CompileResult, ExprError> {
        self.certified = true;
        self.register_products(e)?;
        let (a, mut lambda) = self.node(e)?;
        let vals = evaluate_seq(e, lambda);
        let mut ev = Evaluator::new(&self.tower, &self.spec);
        while lambda > 0 && ev.eval(&a, lambda - 1) == vals[lambda as usize - 1] {
            lambda -= 1;
        }
        debug_assert!(depth(&self.tower, &a) <= e.depth());
        Ok(CompileResult {
            tower: self.tower.clone(),
            spec: self.spec.clone(),
            a,
            lambda,
            optimality_certified: self.certified,
        })
    }

    /// `(a, lambda)` with `ev'(a, k) = e(k)` for `k >= lambda`.
    fn node(&mut self, e: &SumExpr) -> Result<(TowerElem, u64), ExprError> {
        match e {
            SumExpr::Const(c) => Ok((TowerElem::constant(c.clone()), 0)),
            SumExpr::Base(r) => {
                let a = TowerElem::Base(r.clone());
                let l = self.l(&a);
                Ok((a, l))
            }
            SumExpr::Plus(v) | SumExpr::Times(v) => {
                let is_plus = matches!(e, SumExpr::Plus(_));
                let mut acc = if is_plus { TowerElem::zero() } else { TowerElem::one() };
                let mut lambda = 0;
                for c in v {
                    let (a, l) = self.node(c)?;
                    lambda = lambda.max(l).max(self.l(&a));
                    acc = if is_plus { acc.add(&a) } else { acc.mul(&a) };
                }
                Ok((acc.clone(), lambda.max(self.l(&acc))))
            }
            SumExpr::Power(b, k) => {
                let (a, l) = self.node(b)?;
                let p = a.powi(*k as i32);
                Ok((p.clone(), l.max(self.l(&a)).max(self.l(&p))))
            }
            SumExpr::Sum { lower, body, .. } => {
                let key = e.rename_indices();
                if let Some(hit) = self.sums.get(&key) {
                    return Ok(hit.clone());
                }
                let out = self.sum(*lower, body)?;
                self.sums.insert(key, out.clone());
                Ok(out)
            }
            SumExpr::Prod { lower, body, .. } => {
                let phi = body.leaf_value().expect("product bodies are checked on registration");
                let alpha = TowerElem::Base(phi.shift(&Rat::one()));
                let level = self.product_level(&alpha).expect("products are registered before compiling");
                let r = self.spec.get(level).lower;
                if *lower < r {
                    return Err(ExprError::UnsupportedShape(format!(
                        "product lower bound {lower} is below the admissible bound {r}"
                    )));
                }
                let v = Evaluator::new(&self.tower, &self.spec).generator(level, lower - 1);
                let a = self.tower.gen_elem(level).scale_rat(&v.recip());
                Ok((a, lower - 1))
            }
        }
    }

    fn sum(&mut self, lower: u64, body: &SumExpr) -> Result<(TowerElem, u64), ExprError> {
        let (f, lb) = self.node(body)?;
        let sf = sigma(&self.tower, &f, 1);
        let res = telescope_depth_optimal(&self.tower, &sf, &self.cfg)?;
        self.certified &= res.optimality_certified;
        self.tower = res.tower;
        self.spec.extend_default(&self.tower);
        let g = res.g;
        let r1 = lower.max(lb).max(self.l(&f) + 1).max(self.l(&g) + 1);
        let vals = evaluate_seq(body, r1 - 1);
        let prefix: Rat = vals[lower as usize..].iter().sum();
        let c = prefix - Evaluator::new(&self.tower, &self.spec).eval(&g, r1 - 1);
        let a = g.add(&TowerElem::constant(c));
        let l = r1.max(self.l(&a));
        Ok((a, l))
    }
}

/// Compiles `e` with the default search configuration.
pub fn compile(e: &SumExpr) -> Result<CompileResult, ExprError> {
    Compiler::default().compile(e)
}
