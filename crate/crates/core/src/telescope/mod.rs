//! Telescoping `sigma(g) - g = f` over rational functions and towers, first
//! order equations over `Q(x)`, and the depth-optimal extension search.

mod base;
mod search;
mod solve;

use thiserror::Error;

use crate::algebra::{Field, Rat, RatFunc};
use crate::dfield::{sigma, Tower, TowerElem};

pub use base::base_param_solve;
pub use search::{telescope_depth_optimal, telescope_depth_optimal_strict, DepthOptResult, SearchConfig};
pub use solve::param_solve;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TeleResult {
    Solved(TowerElem),
    /// No solution exists; the string records where the search failed.
    NoSolution(String),
}

impl TeleResult {
    pub fn solution(&self) -> Option<&TowerElem> {
        match self {
            TeleResult::Solved(g) => Some(g),
            TeleResult::NoSolution(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TelescopeError {
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
}

/// The constant term of a polynomial part: the coefficient of the empty
/// monomial, then the constant coefficient of its polynomial part in `x`.
pub fn constant_term(f: &TowerElem) -> Rat {
    match f {
        TowerElem::Base(r) => r.split_polynomial().0.coeff(0),
        TowerElem::Ext(e) => {
            let den = e.den();
            if den.is_one() {
                constant_term(&e.num().coeff(0))
            } else if den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
                constant_term(&e.num().coeff(den.deg() as usize))
            } else {
                Rat::zero()
            }
        }
    }
}

/// Picks the solution with `c_0 = 1` from a parameterized basis for a single
/// right-hand side and removes its constant term.
fn pick_solution(basis: Vec<(Vec<Rat>, TowerElem)>) -> Option<TowerElem> {
    let (c, g) = basis.into_iter().find(|(c, _)| !c[0].is_zero())?;
    let g = g.scale_rat(&c[0].recip());
    let k = constant_term(&g);
    Some(if k.is_zero() { g } else { g.sub(&TowerElem::constant(k)) })
}

fn assert_telescopes(tower: &Tower, g: &TowerElem, f: &TowerElem) {
    let residual = sigma(tower, g, 1).sub(g).sub(f);
    assert!(residual.is_zero(), "telescoping residual does not vanish");
}

/// Rational telescoping: `g` in `Q(x)` with `g(x+1) - g(x) = f`.
pub fn telescope_rational(f: &RatFunc) -> TeleResult {
    match pick_solution(
        base_param_solve(&RatFunc::one(), std::slice::from_ref(f))
            .into_iter()
            .map(|(c, g)| (c, TowerElem::Base(g)))
            .collect(),
    ) {
        Some(g) => {
            assert_telescopes(&Tower::new(), &g, &TowerElem::Base(f.clone()));
            TeleResult::Solved(g)
        }
        None => TeleResult::NoSolution(format!("no rational g with sigma(g) - g = {}", f.render("x"))),
    }
}

/// `w` in `Q(x)` with `gamma w(x+1) - w(x) = phi`.
pub fn solve_first_order(gamma: &RatFunc, phi: &RatFunc) -> TeleResult {
    let basis = base_param_solve(gamma, std::slice::from_ref(phi));
    match basis.into_iter().find(|(c, _)| !c[0].is_zero()) {
        Some((c, w)) => TeleResult::Solved(TowerElem::Base(w.mul(&RatFunc::constant(c[0].recip())))),
        None => TeleResult::NoSolution(format!(
            "no rational w with ({}) sigma(w) - w = {}",
            gamma.render("x"),
            phi.render("x")
        )),
    }
}

/// Basis of the rational solutions of `w(x+1) = gamma w(x)`.
pub fn solve_homogeneous(gamma: &RatFunc) -> Vec<RatFunc> {
    base_param_solve(&gamma.inv(), &[]).into_iter().map(|(_, w)| w).collect()
}

/// Telescoping over the whole tower by layered reduction.
pub fn telescope_tower(tower: &Tower, f: &TowerElem) -> Result<TeleResult, TelescopeError> {
    let basis = param_solve(tower, tower.len(), &RatFunc::one(), std::slice::from_ref(f))?;
    Ok(match pick_solution(basis) {
        Some(g) => {
            assert_telescopes(tower, &g, f);
            TeleResult::Solved(g)
        }
        None => TeleResult::NoSolution(format!(
            "no solution over {} generator(s) for {}",
            tower.len(),
            tower.render(f)
        )),
    })
}
