//! Depth-optimal extension search.
//!
//! When `f` has no telescoper in the tower, candidate summands
//! `beta = rho * sigma(mu)` are tried in stages. `rho = x^j / a^e` runs over
//! the shift-class representatives `a` of the denominator atoms of `f`, and
//! `mu` over monomials in existing generators that are shallow enough to keep
//! the new generator within the depth of `f`. Each stage solves one
//! parameterized problem `sigma(g) - g = f + sum_k c_k beta_k` and adjoins the
//! sparsest set of candidates that closes it.


use super::{param_solve, telescope_tower, TeleResult, TelescopeError};
use crate::algebra::{nullspace, partial_fraction_atoms, shift_class_rep, Field, Poly, Rat, RatFunc};
use crate::dfield::{self, adjoin_sigma_star_with, depth, sigma, DFieldError, GenKind, Generator, Tower, TowerElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest `e` in the atom powers `1/a^e`.
    pub max_atom_power: u32,
    /// Largest total degree of the monomial factor `mu`.
    pub max_monomial_degree: u32,
    /// Cap on the number of candidates considered.
    pub max_candidates: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_atom_power: 6, max_monomial_degree: 3, max_candidates: 64 }
    }
}

#[derive(Clone, Debug)]
pub struct DepthOptResult {
    pub tower: Tower,
    pub g: TowerElem,
    pub adjoined: Vec<Generator>,
    /// False when the naive fallback generator had to be used.
    pub optimality_certified: bool,
}

struct Candidate {
    /// (depth of beta, highest level in mu, degree of mu, atom power)
    key: (usize, usize, u32, u32),
    beta: TowerElem,
}

fn atom_key(p: &Poly<Rat>) -> (isize, Vec<Rat>) {
    (p.deg(), p.coeffs().to_vec())
}

/// Shift-class representatives of all denominator atoms of `f`.
fn atoms_of(f: &TowerElem) -> Vec<Poly<Rat>> {
    let mut coeffs = Vec::new();
    f.base_coefficients(&mut coeffs);
    let mut reps: Vec<Poly<Rat>> = Vec::new();
    for r in coeffs {
        if r.den().is_one() {
            continue;
        }
        for (a, _) in partial_fraction_atoms(&r) {
            let (rep, _) = shift_class_rep(&a);
            if !reps.contains(&rep) {
                reps.push(rep);
            }
        }
    }
    reps.sort_by_key(atom_key);
    reps
}

/// Monomials (exponent vectors over the tower) with generators of depth at
/// most `max_depth`, exponents bounded by those occurring in `f`, and total
/// degree at most `max_deg`.
fn monomials(tower: &Tower, f: &TowerElem, max_depth: usize, max_deg: u32) -> Vec<Vec<i32>> {
    let n = tower.len();
    let mut lo = vec![0i32; n];
    let mut hi = vec![0i32; n];
    if let Some(t) = dfield::terms(tower, f) {
        for exps in t.keys() {
            for (i, &e) in exps.iter().enumerate() {
                lo[i] = lo[i].min(e);
                hi[i] = hi[i].max(e);
            }
        }
    }
    for (l, g) in tower.generators().enumerate() {
        if g.depth > max_depth {
            lo[l] = 0;
            hi[l] = 0;
        }
    }
    let mut out = vec![vec![0i32; n]];
    for i in 0..n {
        let mut next = Vec::new();
        for m in &out {
            for e in lo[i]..=hi[i] {
                let mut v = m.clone();
                v[i] = e;
                if v.iter().map(|x| x.unsigned_abs()).sum::<u32>() <= max_deg {
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.unsigned_abs()).sum::<u32>(), std::cmp::Reverse(v.clone())));
    out
}

fn monomial_elem(tower: &Tower, exps: &[i32]) -> TowerElem {
    let mut m = TowerElem::one();
    for (i, &e) in exps.iter().enumerate() {
        if e != 0 {
            m = m.mul(&tower.gen_elem(i + 1).powi(e));
        }
    }
    m
}

fn candidates(tower: &Tower, f: &TowerElem, max_depth: usize, cfg: &SearchConfig) -> Vec<Candidate> {
    let atoms = atoms_of(f);
    let monos = monomials(tower, f, max_depth, cfg.max_monomial_degree);
    let existing: Vec<&TowerElem> =
        tower.generators().filter(|g| g.kind == GenKind::SigmaStar).map(|g| &g.shift_part).collect();
    let mut out = Vec::new();
    for e in 1..=cfg.max_atom_power {
        for a in &atoms {
            let ae = a.pow(e);
            for j in 0..a.deg().max(1) as usize {
                let rho = TowerElem::Base(RatFunc::new(Poly::monomial(Rat::from_integer(1.into()), j), ae.clone()));
                for m in &monos {
                    let mu = monomial_elem(tower, m);
                    let beta = rho.mul(&sigma(tower, &mu, 1));
                    let d = depth(tower, &beta);
                    if d > max_depth || existing.contains(&&beta) {
                        continue;
                    }
                    let deg = m.iter().map(|x| x.unsigned_abs()).sum();
                    let top = m.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
                    out.push(Candidate { key: (d, top, deg, e), beta });
                }
            }
        }
    }
    // stable: ties keep atom, numerator and monomial order
    out.sort_by_key(|c| c.key);
    out.truncate(cfg.max_candidates);
    out
}

/// Sparsest support `T` (as candidate indices) such that some solution has
/// `c_0 = 1` and `c_j = 0` outside `T`. Sizes are tried in increasing order
/// and supports of equal size lexicographically.
fn sparsest_support(cvecs: &[Vec<Rat>], k: usize) -> Option<Vec<usize>> {
    if cvecs.iter().all(|c| c[0].is_zero()) {
        return None;
    }
    let feasible = |support: &[usize]| -> bool {
        // constraints on the combination weights: c_j = 0 for j outside support
        let rows: Vec<Vec<Rat>> = (1..=k)
            .filter(|j| !support.contains(&(j - 1)))
            .map(|j| cvecs.iter().map(|c| c[j].clone()).collect())
            .collect();
        let ns = nullspace(&rows, cvecs.len());
        ns.iter().any(|w| {
            let c0: Rat = w.iter().zip(cvecs).map(|(wi, c)| wi * &c[0]).sum();
            !c0.is_zero()
        })
    };
    let max_size = if k <= 24 { 3 } else { 2 };
    for size in 0..=max_size.min(k) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if feasible(&idx) {
                return Some(idx);
            }
            if !next_combination(&mut idx, k) {
                break;
            }
        }
    }
    // Larger supports: shrink the full support to an irreducible one.
    let mut support: Vec<usize> = (0..k).collect();
    for j in (0..k).rev() {
        let trial: Vec<usize> = support.iter().copied().filter(|&i| i != j).collect();
        if feasible(&trial) {
            support = trial;
        }
    }
    Some(support)
}

fn next_combination(idx: &mut [usize], k: usize) -> bool {
    let s = idx.len();
    for i in (0..s).rev() {
        if idx[i] < k - s + i {
            idx[i] += 1;
            for t in i + 1..s {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Tries the candidate stages. `Ok(None)` when no stage closes.
fn search(
    tower: &Tower,
    f: &TowerElem,
    max_depth: usize,
    cfg: &SearchConfig,
    certified: bool,
) -> Result<Option<DepthOptResult>, TelescopeError> {
    let cands = candidates(tower, f, max_depth, cfg);
    let mut end = 0;
    while end < cands.len() {
        let key = cands[end].key;
        while end < cands.len() && cands[end].key == key {
            end += 1;
        }
        let mut rhs = vec![f.clone()];
        rhs.extend(cands[..end].iter().map(|c| c.beta.clone()));
        let basis = param_solve(tower, tower.len(), &RatFunc::one(), &rhs)?;
        let cvecs: Vec<Vec<Rat>> = basis.into_iter().map(|(c, _)| c).collect();
        let Some(support) = sparsest_support(&cvecs, end) else {
            continue;
        };
        let mut t = tower.clone();
        for &i in &support {
            match adjoin_sigma_star_with(&t, &cands[i].beta, None, certified) {
                Ok(next) => t = next,
                Err(DFieldError::TelescoperExists(_)) => {}
                Err(DFieldError::UnsupportedShape(s)) => return Err(TelescopeError::UnsupportedShape(s)),
                Err(e) => unreachable!("unexpected adjunction error {e}"),
            }
        }
        if let TeleResult::Solved(g) = telescope_tower(&t, f)? {
            let adjoined = t.generators().skip(tower.len()).cloned().collect();
            return Ok(Some(DepthOptResult { tower: t, g, adjoined, optimality_certified: certified }));
        }
    }
    Ok(None)
}

/// Telescopes `f`, extending the tower by sum generators of depth at most
/// `max(depth(f), 2)` from the candidate family when needed. If that fails,
/// candidates of depth `depth(f) + 1` are tried, and finally `f` itself is
/// adjoined. Both late stages are flagged non-certified unless `f` lies in
/// `Q(x)`, where any sum generator has depth 2 anyway.
pub fn telescope_depth_optimal(
    tower: &Tower,
    f: &TowerElem,
    cfg: &SearchConfig,
) -> Result<DepthOptResult, TelescopeError> {
    if let Some(r) = depth_optimal_inner(tower, f, cfg, false)? {
        return Ok(r);
    }
    let d = depth(tower, f);
    let certified = d <= 1;
    // candidates one level deeper give the same depth as adjoining f itself
    if d > 1 {
        if let Some(r) = search(tower, f, d, cfg, certified)? {
            return Ok(r);
        }
    }
    let t = match adjoin_sigma_star_with(tower, f, None, certified) {
        Ok(t) => t,
        Err(DFieldError::UnsupportedShape(s)) => return Err(TelescopeError::UnsupportedShape(s)),
        Err(e) => unreachable!("fallback adjunction failed: {e}"),
    };
    let g = t.gen_elem(t.len());
    let adjoined = vec![t.generator(t.len()).clone()];
    Ok(DepthOptResult { tower: t, g, adjoined, optimality_certified: certified })
}

/// Strict variant: only generators of depth at most `depth(f)` are allowed
/// and there is no fallback. `Ok(None)` means no telescoper was found within
/// the candidate family.
pub fn telescope_depth_optimal_strict(
    tower: &Tower,
    f: &TowerElem,
    cfg: &SearchConfig,
) -> Result<Option<DepthOptResult>, TelescopeError> {
    depth_optimal_inner(tower, f, cfg, true)
}

fn depth_optimal_inner(
    tower: &Tower,
    f: &TowerElem,
    cfg: &SearchConfig,
    strict: bool,
) -> Result<Option<DepthOptResult>, TelescopeError> {
    if let TeleResult::Solved(g) = telescope_tower(tower, f)? {
        return Ok(Some(DepthOptResult { tower: tower.clone(), g, adjoined: Vec::new(), optimality_certified: true }));
    }
    let d = depth(tower, f);
    let max_depth = if strict { d.saturating_sub(1) } else { d.saturating_sub(1).max(1) };
    if max_depth == 0 {
        return Ok(None);
    }
    search(tower, f, max_depth, cfg, true)
}
