//! Parameterized first-order solving over a tower, level by level.

use std::collections::BTreeMap;


use super::base::base_param_solve;
use super::TelescopeError;
use crate::algebra::{Field, Poly, Rat, RatFunc};
use crate::dfield::{sigma, GenKind, Tower, TowerElem};

/// A solution under construction: parameters and the coefficients of the
/// current generator fixed so far, with their shifts.
#[derive(Clone)]
struct Partial {
    c: Vec<Rat>,
    g: BTreeMap<i32, TowerElem>,
    sg: BTreeMap<i32, TowerElem>,
}

fn lin_comb(d: &[Rat], items: &[&TowerElem]) -> TowerElem {
    let mut acc = TowerElem::zero();
    for (x, e) in d.iter().zip(items) {
        if !x.is_zero() {
            acc = acc.add(&e.scale_rat(x));
        }
    }
    acc
}

fn combine(basis: &[Partial], sols: Vec<(Vec<Rat>, TowerElem)>, exp: i32, tower: &Tower) -> Vec<Partial> {
    let k = basis.first().map_or(0, |p| p.c.len());
    sols.into_iter()
        .map(|(d, gm)| {
            let mut c = vec![Rat::zero(); k];
            let mut g: BTreeMap<i32, TowerElem> = BTreeMap::new();
            let mut sg: BTreeMap<i32, TowerElem> = BTreeMap::new();
            for (dj, pj) in d.iter().zip(basis) {
                if dj.is_zero() {
                    continue;
                }
                for (ci, pc) in c.iter_mut().zip(&pj.c) {
                    *ci += dj * pc;
                }
                for (e, v) in &pj.g {
                    let slot = g.entry(*e).or_insert_with(TowerElem::zero);
                    *slot = slot.add(&v.scale_rat(dj));
                }
                for (e, v) in &pj.sg {
                    let slot = sg.entry(*e).or_insert_with(TowerElem::zero);
                    *slot = slot.add(&v.scale_rat(dj));
                }
            }
            if !gm.is_zero() {
                sg.insert(exp, sigma(tower, &gm, 1));
                g.insert(exp, gm);
            }
            Partial { c, g, sg }
        })
        .collect()
}

fn binomial(n: i32, k: i32) -> Rat {
    let mut r = Rat::from_integer(1.into());
    for i in 0..k {
        r = r * Rat::from_integer((n - i).into()) / Rat::from_integer((i + 1).into());
    }
    r
}

/// Basis of the `Q`-space of pairs `(c, g)` with `c` in `Q^K`, `g` in the
/// field of `level`, and `gamma sigma(g) - g = sum_k c_k rhs_k`.
///
/// Sum levels require `gamma = 1` and polynomial right-hand sides in their
/// generator; product levels require a base-rational factor and Laurent
/// polynomial right-hand sides. Solutions at product levels are searched
/// only at exponents occurring in the right-hand sides and at 0.
pub fn param_solve(
    tower: &Tower,
    level: usize,
    gamma: &RatFunc,
    rhs: &[TowerElem],
) -> Result<Vec<(Vec<Rat>, TowerElem)>, TelescopeError> {
    if level == 0 {
        let base: Vec<RatFunc> = rhs
            .iter()
            .map(|f| f.as_base().cloned())
            .collect::<Option<_>>()
            .expect("right-hand side above the solving level");
        return Ok(base_param_solve(gamma, &base)
            .into_iter()
            .map(|(c, g)| (c, TowerElem::Base(g)))
            .collect());
    }
    let gen = tower.generator(level);
    let k = rhs.len();
    let mut basis: Vec<Partial> = (0..k)
        .map(|i| {
            let mut c = vec![Rat::zero(); k];
            c[i] = Rat::from_integer(1.into());
            Partial { c, g: BTreeMap::new(), sg: BTreeMap::new() }
        })
        .collect();
    let mut expansions: Vec<BTreeMap<i32, TowerElem>> = Vec::with_capacity(k);
    for f in rhs {
        let (num, den) = f.parts_at(level);
        let shift = if den.is_one() {
            0
        } else if gen.kind == GenKind::Pi && den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
            den.deg() as i32
        } else {
            return Err(TelescopeError::UnsupportedShape(format!(
                "generator {} occurs in a denominator",
                gen.name
            )));
        };
        let mut m = BTreeMap::new();
        for (i, c) in num.coeffs().iter().enumerate() {
            if !c.is_zero() {
                m.insert(i as i32 - shift, c.clone());
            }
        }
        expansions.push(m);
    }
    let zero = TowerElem::zero();
    let coeff_rhs = |basis: &[Partial], e: i32| -> Vec<TowerElem> {
        basis
            .iter()
            .map(|p| {
                let items: Vec<&TowerElem> = expansions.iter().map(|m| m.get(&e).unwrap_or(&zero)).collect();
                lin_comb(&p.c, &items)
            })
            .collect()
    };
    match gen.kind {
        GenKind::SigmaStar => {
            if !gamma.is_one() {
                return Err(TelescopeError::UnsupportedShape(format!(
                    "first-order factor other than 1 at sum generator {}",
                    gen.name
                )));
            }
            let beta = &gen.shift_part;
            let dmax = expansions.iter().filter_map(|m| m.keys().next_back().copied()).max().unwrap_or(-1);
            if expansions.iter().any(|m| m.keys().any(|&e| e < 0)) {
                unreachable!("negative exponent at a sum level");
            }
            let top = dmax + 1;
            let mut beta_pows = vec![TowerElem::one()];
            for i in 1..=top {
                let next = beta_pows[i as usize - 1].mul(beta);
                beta_pows.push(next);
            }
            for m in (0..=top).rev() {
                let mut r = coeff_rhs(&basis, m);
                for (rj, p) in r.iter_mut().zip(&basis) {
                    for (&i, sgi) in p.sg.range(m + 1..) {
                        let term = sgi.mul(&beta_pows[(i - m) as usize]).scale_rat(&binomial(i, i - m));
                        *rj = rj.sub(&term);
                    }
                }
                let sols = param_solve(tower, level - 1, gamma, &r)?;
                basis = combine(&basis, sols, m, tower);
            }
        }
        GenKind::Pi => {
            let alpha = gen.shift_part.as_base().cloned().ok_or_else(|| {
                TelescopeError::UnsupportedShape(format!("product generator {} is not over Q(x)", gen.name))
            })?;
            let mut exps: Vec<i32> = expansions.iter().flat_map(|m| m.keys().copied()).collect();
            exps.push(0);
            exps.sort();
            exps.dedup();
            for &e in &exps {
                let r = coeff_rhs(&basis, e);
                let ge = gamma.mul(&alpha.pow(e));
                let sols = param_solve(tower, level - 1, &ge, &r)?;
                basis = combine(&basis, sols, e, tower);
            }
        }
    }
    Ok(basis
        .into_iter()
        .map(|p| {
            let lo = p.g.keys().next().copied().unwrap_or(0).min(0);
            let hi = p.g.keys().next_back().copied().unwrap_or(0);
            let mut coeffs = vec![TowerElem::zero(); (hi - lo + 1) as usize];
            for (e, v) in p.g {
                coeffs[(e - lo) as usize] = v;
            }
            let den = Poly::monomial(TowerElem::one(), (-lo) as usize);
            (p.c, TowerElem::from_parts(level, Poly::new(coeffs), den))
        })
        .collect())
}
