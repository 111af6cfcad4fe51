//! Towers of product and sum extensions over `(Q(x), x -> x+1)`.
//!
//! A [`Tower`] is an append-only list of generators. Level 0 is the rational
//! base field, level `i` is the field generated by the first `i` generators.
//! Elements are [`TowerElem`] values in recursive normal form.

mod elem;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Field, Poly, Rat, RatFunc};
use crate::telescope::{self, TeleResult, TelescopeError};

pub use elem::{ExtElem, Terms, TowerElem};

/// Default bound on `m` in the product check.
pub const DEFAULT_PI_MAX_POWER: u32 = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GenKind {
    Pi,
    SigmaStar,
}

/// How a generator was admitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// Telescoping the summand failed in the tower below.
    NoTelescoper {
        trace: String,
        /// False when the generator came from the naive fallback rather than
        /// the depth-optimal search.
        optimality_certified: bool,
    },
    /// No `g` with `sigma(g) = alpha^m g` for `m` up to `max_power`.
    PiCheck { max_power: u32 },
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
    /// `alpha` for products (`sigma(t) = alpha t`), `beta` for sums
    /// (`sigma(t) = t + beta`).
    pub shift_part: TowerElem,
    /// `sigma^-1` of the shift part.
    pub inv_shift_part: TowerElem,
    pub depth: usize,
    pub certificate: Certificate,
}

impl Generator {
    pub fn optimality_certified(&self) -> bool {
        match &self.certificate {
            Certificate::NoTelescoper { optimality_certified, .. } => *optimality_certified,
            Certificate::PiCheck { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DFieldError {
    #[error("telescoper exists: {0:?}")]
    TelescoperExists(TowerElem),
    #[error("product criterion fails for m = {0} with witness {1:?}")]
    PiCriterionFails(u32, TowerElem),
    #[error("not yet supported: {0}")]
    NotYetSupported(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
}

impl From<TelescopeError> for DFieldError {
    fn from(e: TelescopeError) -> Self {
        match e {
            TelescopeError::UnsupportedShape(s) => DFieldError::UnsupportedShape(s),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Tower {
    gens: Vec<Arc<Generator>>,
}

impl Tower {
    pub fn new() -> Tower {
        Tower::default()
    }

    /// Number of generators above the base.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generator of `level` (1-based).
    pub fn generator(&self, level: usize) -> &Generator {
        &self.gens[level - 1]
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter().map(|g| g.as_ref())
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    /// The element `t_level`.
    pub fn gen_elem(&self, level: usize) -> TowerElem {
        assert!(level >= 1 && level <= self.len());
        TowerElem::generator(level)
    }

    pub fn level_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name).map(|i| i + 1)
    }

    /// Levels carrying product generators.
    pub fn pi_levels(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&l| self.generator(l).kind == GenKind::Pi).collect()
    }

    /// Truncation to the first `len` generators.
    pub fn prefix(&self, len: usize) -> Tower {
        Tower { gens: self.gens[..len].to_vec() }
    }

    fn fresh_name(&self, kind: GenKind, shift_part: &TowerElem) -> String {
        let taken = |n: &str| self.gens.iter().any(|g| g.name == n);
        if kind == GenKind::SigmaStar {
            if let Some(o) = harmonic_order(shift_part) {
                let n = if o == 1 { "h".to_string() } else { format!("h{o}") };
                if !taken(&n) {
                    return n;
                }
            }
        }
        let prefix = if kind == GenKind::Pi { "p" } else { "s" };
        (1..).map(|i| format!("{prefix}{i}")).find(|n| !taken(n)).unwrap()
    }

    /// Appends a generator without any check. The caller is responsible for
    /// the extension being a genuine product or sum extension.
    pub(crate) fn push_unchecked(
        &self,
        name: Option<String>,
        kind: GenKind,
        shift_part: TowerElem,
        certificate: Certificate,
    ) -> Tower {
        assert!(shift_part.level() <= self.len());
        let name = name.unwrap_or_else(|| self.fresh_name(kind, &shift_part));
        assert!(self.level_of(&name).is_none(), "duplicate generator name {name}");
        let inv_shift_part = sigma(self, &shift_part, -1);
        let depth = depth(self, &shift_part) + 1;
        let mut gens = self.gens.clone();
        gens.push(Arc::new(Generator { name, kind, shift_part, inv_shift_part, depth, certificate }));
        Tower { gens }
    }

    /// Canonical JSON summary: generator list in tower order.
    pub fn summary(&self) -> TowerSummary {
        let mut names = Vec::new();
        let mut generators = Vec::new();
        for g in &self.gens {
            generators.push(GeneratorSummary {
                name: g.name.clone(),
                kind: g.kind,
                shift_part: g.shift_part.render(&names),
                depth: g.depth,
                optimality_certified: g.optimality_certified(),
            });
            names.push(g.name.clone());
        }
        TowerSummary { generators }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.summary()).expect("tower summary serializes")
    }

    pub fn render(&self, f: &TowerElem) -> String {
        f.render(&self.names())
    }
}

/// `Some(o)` if `beta = 1/(x+1)^o`.
fn harmonic_order(beta: &TowerElem) -> Option<usize> {
    let r = beta.as_base()?;
    let o = r.den().deg();
    if o >= 1 && r.num().is_one() && *r.den() == Poly::from_ints(&[1, 1]).pow(o as u32) {
        Some(o as usize)
    } else {
        None
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeneratorSummary {
    pub name: String,
    pub kind: GenKind,
    pub shift_part: String,
    pub depth: usize,
    pub optimality_certified: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TowerSummary {
    pub generators: Vec<GeneratorSummary>,
}

fn map_coeffs(p: &Poly<TowerElem>, f: impl Fn(&TowerElem) -> TowerElem) -> Poly<TowerElem> {
    Poly::new(p.coeffs().iter().map(f).collect())
}

fn sigma_once(tower: &Tower, f: &TowerElem, inverse: bool) -> TowerElem {
    let e = match f {
        TowerElem::Base(r) => {
            let c = if inverse { Rat::from_integer((-1).into()) } else { Rat::from_integer(1.into()) };
            return TowerElem::Base(r.shift(&c));
        }
        TowerElem::Ext(e) => e,
    };
    let g = tower.generator(e.level);
    let num = map_coeffs(&e.num, |c| sigma_once(tower, c, inverse));
    let den = map_coeffs(&e.den, |c| sigma_once(tower, c, inverse));
    let (num, den) = match g.kind {
        GenKind::SigmaStar => {
            // t -> t + beta, or t -> t - sigma^-1(beta)
            let b = if inverse { g.inv_shift_part.neg() } else { g.shift_part.clone() };
            let sub = Poly::new(vec![b, TowerElem::one()]);
            (num.compose(&sub), den.compose(&sub))
        }
        GenKind::Pi => {
            // t -> alpha t, or t -> t / sigma^-1(alpha)
            let a = if inverse { g.inv_shift_part.inv() } else { g.shift_part.clone() };
            let scale = |p: &Poly<TowerElem>| {
                let mut pw = TowerElem::one();
                let mut v = Vec::with_capacity(p.coeffs().len());
                for c in p.coeffs() {
                    v.push(c.mul(&pw));
                    pw = pw.mul(&a);
                }
                Poly::new(v)
            };
            let (n, d) = (scale(&num), scale(&den));
            let lc = d.lc();
            if lc.is_one() {
                (n, d)
            } else {
                let inv = lc.inv();
                (n.scale(&inv), d.scale(&inv))
            }
        }
    };
    TowerElem::Ext(Arc::new(ExtElem { level: e.level, num, den }))
}

/// `sigma^j(f)`.
pub fn sigma(tower: &Tower, f: &TowerElem, j: i64) -> TowerElem {
    let mut out = f.clone();
    for _ in 0..j.unsigned_abs() {
        out = sigma_once(tower, &out, j < 0);
    }
    out
}

/// Depth of an element: 0 for constants, 1 for other base elements, the
/// largest generator depth occurring otherwise.
pub fn depth(tower: &Tower, f: &TowerElem) -> usize {
    match f {
        TowerElem::Base(r) => usize::from(!r.is_constant()),
        TowerElem::Ext(e) => {
            let mut d = tower.generator(e.level).depth;
            for c in e.num.coeffs().iter().chain(e.den.coeffs()) {
                d = d.max(depth(tower, c));
            }
            d
        }
    }
}

/// True iff no sum generator occurs in a denominator at any level.
pub fn is_polynomial_part(tower: &Tower, f: &TowerElem) -> bool {
    match f {
        TowerElem::Base(_) => true,
        TowerElem::Ext(e) => {
            if !e.den.is_one() && tower.generator(e.level).kind == GenKind::SigmaStar {
                return false;
            }
            e.num.coeffs().iter().chain(e.den.coeffs()).all(|c| is_polynomial_part(tower, c))
        }
    }
}

/// Levels of the generators occurring in `f`.
pub fn occurring_levels(f: &TowerElem) -> BTreeSet<usize> {
    let mut s = BTreeSet::new();
    f.occurring_levels(&mut s);
    s
}

/// Expansion of a polynomial part into monomials over base coefficients.
/// Negative exponents appear only for product generators.
pub fn terms(tower: &Tower, f: &TowerElem) -> Option<Terms> {
    f.terms_with(tower.len(), &|l| tower.generator(l).kind == GenKind::Pi)
}

/// Adjoins `t` with `sigma(t) = t + beta` after checking that `beta` has no
/// telescoper in the current tower.
pub fn adjoin_sigma_star(tower: &Tower, beta: &TowerElem) -> Result<Tower, DFieldError> {
    adjoin_sigma_star_named(tower, beta, None)
}

pub fn adjoin_sigma_star_named(
    tower: &Tower,
    beta: &TowerElem,
    name: Option<String>,
) -> Result<Tower, DFieldError> {
    adjoin_sigma_star_with(tower, beta, name, true)
}

pub(crate) fn adjoin_sigma_star_with(
    tower: &Tower,
    beta: &TowerElem,
    name: Option<String>,
    optimality_certified: bool,
) -> Result<Tower, DFieldError> {
    match telescope::telescope_tower(tower, beta)? {
        TeleResult::Solved(g) => Err(DFieldError::TelescoperExists(g)),
        TeleResult::NoSolution(trace) => Ok(tower.push_unchecked(
            name,
            GenKind::SigmaStar,
            beta.clone(),
            Certificate::NoTelescoper { trace, optimality_certified },
        )),
    }
}

/// Adjoins `t` with `sigma(t) = alpha t` after the restricted product check.
///
/// `alpha` must be a base rational function. For each `m` in
/// `1..=max_power` and each exponent vector `j` over the existing product
/// generators with entries in `-max_power..=max_power`, the equation
/// `sigma(w) = alpha^m prod alpha_i^j_i w` must have no nonzero rational
/// solution `w`.
pub fn adjoin_pi(tower: &Tower, alpha: &TowerElem, max_power: u32) -> Result<Tower, DFieldError> {
    adjoin_pi_named(tower, alpha, max_power, None)
}

pub fn adjoin_pi_named(
    tower: &Tower,
    alpha: &TowerElem,
    max_power: u32,
    name: Option<String>,
) -> Result<Tower, DFieldError> {
    let a = alpha
        .as_base()
        .ok_or_else(|| DFieldError::NotYetSupported("product factor outside Q(x)".into()))?;
    if a.is_zero() {
        return Err(DFieldError::NotYetSupported("zero product factor".into()));
    }
    let others: Vec<RatFunc> = tower
        .pi_levels()
        .into_iter()
        .map(|l| tower.generator(l).shift_part.as_base().cloned())
        .collect::<Option<_>>()
        .ok_or_else(|| DFieldError::NotYetSupported("existing product outside Q(x)".into()))?;
    let mp = max_power as i32;
    for m in 1..=max_power {
        let am = a.pow(m as i32);
        let mut exps = vec![-mp; others.len()];
        loop {
            let mut gamma = am.clone();
            for (o, &e) in others.iter().zip(&exps) {
                gamma = gamma.mul(&o.pow(e));
            }
            if let Some(w) = telescope::solve_homogeneous(&gamma).into_iter().next() {
                let mut witness = TowerElem::Base(w);
                for (o, &e) in tower.pi_levels().into_iter().zip(&exps) {
                    witness = witness.mul(&tower.gen_elem(o).powi(-e));
                }
                return Err(DFieldError::PiCriterionFails(m, witness));
            }
            // next exponent vector
            let mut i = 0;
            loop {
                if i == exps.len() {
                    break;
                }
                if exps[i] < mp {
                    exps[i] += 1;
                    break;
                }
                exps[i] = -mp;
                i += 1;
            }
            if i == exps.len() {
                break;
            }
        }
    }
    Ok(tower.push_unchecked(name, GenKind::Pi, alpha.clone(), Certificate::PiCheck { max_power }))
}

#[cfg(test)]
mod tests;
