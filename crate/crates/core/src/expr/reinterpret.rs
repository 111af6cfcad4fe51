//! Tower elements back to expressions through the evaluation data.

use std::cmp::Reverse;

use super::ast::{rat_one, SumExpr};
use super::eval::EvalSpec;
use super::ExprError;
use crate::algebra::Field;
use crate::dfield::{terms, GenKind, Tower, TowerElem};

struct Gens<'a> {
    tower: &'a Tower,
    spec: &'a EvalSpec,
    /// Expression of `t` and, for products, of `1/t`.
    cache: Vec<Option<(SumExpr, Option<SumExpr>)>>,
}

impl Gens<'_> {
    fn get(&mut self, level: usize, inverse: bool) -> Result<SumExpr, ExprError> {
        if self.cache[level - 1].is_none() {
            let g = self.tower.generator(level);
            let s = self.spec.get(level);
            let entry = match g.kind {
                GenKind::SigmaStar => {
                    let body = reinterpret(self.tower, self.spec, &g.inv_shift_part)?;
                    let sum = SumExpr::sum(s.lower, "i", body);
                    (SumExpr::plus(vec![sum, SumExpr::Const(s.constant.clone())]), None)
                }
                GenKind::Pi => {
                    let phi = g
                        .inv_shift_part
                        .as_base()
                        .ok_or_else(|| ExprError::UnsupportedShape("product factor outside Q(x)".into()))?;
                    let c = &s.constant;
                    let t = SumExpr::times(vec![
                        SumExpr::Const(c.clone()),
                        SumExpr::prod(s.lower, "i", SumExpr::base(phi.clone())),
                    ]);
                    let inv = SumExpr::times(vec![
                        SumExpr::Const(rat_one() / c),
                        SumExpr::prod(s.lower, "i", SumExpr::base(phi.inv())),
                    ]);
                    (t, Some(inv))
                }
            };
            self.cache[level - 1] = Some(entry);
        }
        let (t, inv) = self.cache[level - 1].as_ref().unwrap();
        Ok(if inverse { inv.clone().expect("only products have inverses") } else { t.clone() })
    }
}

/// Expression `H` with `H(k) = ev'(a, k)` for all `k`. Monomials are ordered
/// by their highest generator, then by exponents from the top down.
pub fn reinterpret(tower: &Tower, spec: &EvalSpec, a: &TowerElem) -> Result<SumExpr, ExprError> {
    let ts = terms(tower, a).ok_or(ExprError::NotPolynomialPart)?;
    let mut gens = Gens { tower, spec, cache: vec![None; tower.len()] };
    let mut monos: Vec<(&Vec<i32>, _)> = ts.iter().collect();
    let key = |e: &Vec<i32>| {
        let top = e.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
        (top, Reverse(e.iter().rev().copied().collect::<Vec<_>>()))
    };
    monos.sort_by_key(|(e, _)| key(e));
    let mut parts = Vec::new();
    for (exps, coeff) in monos {
        if coeff.is_zero() {
            continue;
        }
        let mut factors = vec![SumExpr::base(coeff.clone())];
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                let g = gens.get(i + 1, e < 0)?;
                factors.push(SumExpr::power(g, e.unsigned_abs()));
            }
        }
        parts.push(SumExpr::times(factors));
    }
    Ok(SumExpr::plus(parts).rename_indices())
}
