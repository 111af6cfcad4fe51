//! One pass/fail line per acceptance criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use nsopt::algebra::{rat, Field, Poly, Rat, RatFunc};
use nsopt::cli::{self, Options, Report};
use nsopt::dfield::{
    adjoin_sigma_star, depth, is_polynomial_part, occurring_levels, sigma, Tower, TowerElem,
};
use nsopt::expr::{compile, evaluate_seq, parse, reinterpret, Evaluator};
use nsopt::telescope::{
    telescope_depth_optimal, telescope_rational, telescope_tower, SearchConfig, TeleResult,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned limits.
const FLAGSHIP_TIME: Duration = Duration::from_secs(5);
const FLAGSHIP_RANGE: u64 = 100;
const TELESCOPE_TIME: Duration = Duration::from_secs(1);
const FIXTURE_RANGE: u64 = 60;
const AUTOMORPHISM_SAMPLES: usize = 1000;
const EVAL_SAMPLES: usize = 500;
const EVAL_WINDOW: u64 = 8;
const RATIONAL_SAMPLES: usize = 200;
const RATIONAL_DEGREE: usize = 3;
const NO_SOLUTION_SAMPLES: usize = 50;
const INTERP_POINTS: u64 = 40;
const INTERP_DEGREE: usize = 8;

fn harm(o: u32) -> TowerElem {
    TowerElem::Base(RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1]).pow(o)))
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> T {
    let t0 = Instant::now();
    let out = f();
    let dt = t0.elapsed();
    assert!(dt < limit, "{what} took {dt:?}, limit {limit:?}");
    out
}

fn equal_on(a: &str, b: &str, range: u64) {
    let x = evaluate_seq(&parse(a).unwrap(), range);
    let y = evaluate_seq(&parse(b).unwrap(), range);
    if let Some(k) = (0..x.len()).find(|&k| x[k] != y[k]) {
        panic!("values differ at n = {k}: {} vs {}\n  {a}\n  {b}", x[k], y[k]);
    }
}

fn simplify(src: &str) -> Report {
    cli::simplify(src, FIXTURE_RANGE, &Options::default()).expect("simplify succeeds")
}

fn criterion_1() -> String {
    let bin = env!("CARGO_BIN_EXE_nsopt");
    let t0 = Instant::now();
    let out = Command::new(bin)
        .args(["simplify", "--json", "--verify-range", &FLAGSHIP_RANGE.to_string(), NESTED])
        .output()
        .expect("binary runs");
    let dt = t0.elapsed();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert!(dt < FLAGSHIP_TIME, "took {dt:?}");
    let report: Report = serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!((report.input_depth, report.output_depth, report.lambda), (4, 2, 0));
    assert!(report.optimality_certified);
    assert_eq!(report.verification.len() as u64, FLAGSHIP_RANGE + 1);
    assert!(report.verification.iter().all(|r| r.equal));
    assert_eq!(parse(&report.output_text).unwrap().depth(), 2);
    equal_on(&report.output_text, NESTED, FLAGSHIP_RANGE);
    equal_on(NESTED_CLOSED, NESTED, FLAGSHIP_RANGE);

    // canonical polynomial form in h, h2, h3, h4
    let res = compile(&parse(NESTED).unwrap()).unwrap();
    let t = &res.tower;
    let g = |name: &str| t.gen_elem(t.level_of(name).unwrap_or_else(|| panic!("no generator {name}")));
    for (name, o) in [("h", 1), ("h2", 2), ("h3", 3), ("h4", 4)] {
        assert_eq!(t.generator(t.level_of(name).unwrap()).shift_part, harm(o));
    }
    let (h, h2, h3, h4) = (g("h"), g("h2"), g("h3"), g("h4"));
    let c = |n: i64| TowerElem::constant(rat(n, 1));
    let want = h
        .powi(4)
        .add(&c(2).mul(&h.powi(3)))
        .add(&c(6).mul(&h.add(&c(1))).mul(&h2).mul(&h))
        .add(&c(3).mul(&h2.powi(2)))
        .add(&c(8).mul(&h).add(&c(4)).mul(&h3))
        .add(&c(6).mul(&h4))
        .scale_rat(&rat(1, 12));
    assert_eq!(res.a, want);
    format!("depth 4 -> 2, lambda 0, n = 0..{FLAGSHIP_RANGE} exact, {dt:.2?}")
}

fn criterion_2() -> String {
    let cfg = SearchConfig::default();
    let t = adjoin_sigma_star(&Tower::new(), &harm(1)).unwrap();
    let h = t.gen_elem(1);
    let sh_over = sigma(&t, &h, 1).mul(&harm(1));

    // 2s - h^2 in Q(x)(h)(s), sigma(s) = s + sigma(h)/(x+1)
    timed(TELESCOPE_TIME, "2s - h^2", || {
        let ts = adjoin_sigma_star(&t, &sh_over).unwrap();
        let s = ts.gen_elem(2);
        let g = telescope_tower(&ts, &harm(2)).unwrap();
        assert_eq!(g, TeleResult::Solved(s.scale_rat(&rat(2, 1)).sub(&h.mul(&h))));
    });

    let (t2, h2) = timed(TELESCOPE_TIME, "s'", || {
        let r = telescope_depth_optimal(&t, &sh_over, &cfg).unwrap();
        let h2 = r.tower.gen_elem(2);
        assert_eq!(r.tower.generator(2).shift_part, harm(2));
        assert_eq!(r.g, h.mul(&h).add(&h2).scale_rat(&rat(1, 2)));
        (r.tower, h2)
    });

    timed(TELESCOPE_TIME, "t'", || {
        let f = sigma(&t2, &h.mul(&h).add(&h2), 1).mul(&harm(1));
        let r = telescope_depth_optimal(&t2, &f, &cfg).unwrap();
        let h3 = r.tower.gen_elem(3);
        assert_eq!(r.tower.generator(3).shift_part, harm(3));
        let want = h.powi(3).add(&h.mul(&h2).scale_rat(&rat(3, 1))).add(&h3.scale_rat(&rat(2, 1)));
        assert_eq!(r.g, want.scale_rat(&rat(1, 3)));
    });

    timed(TELESCOPE_TIME, "no solutions", || {
        let one_over = RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1]));
        assert!(matches!(telescope_rational(&one_over), TeleResult::NoSolution(_)));
        assert!(matches!(telescope_tower(&t, &sh_over).unwrap(), TeleResult::NoSolution(_)));
    });
    "2s-h^2, s', t' exact; NoSolution for 1/(x+1) and sigma(h)/(x+1)".into()
}

fn criterion_3() -> String {
    for (src, closed, want) in [
        (DALEMBERT_A4, DALEMBERT_A4_CLOSED, "1/2*(H(2,n)-H(n)^2)"),
        (DALEMBERT_A5, DALEMBERT_A5_CLOSED, "1/2*(-H(n)^2+2*H(2,n)*H(n)-H(n))"),
    ] {
        let r = simplify(src);
        assert_eq!(r.output_depth, 2, "{src}");
        assert_eq!(parse(&r.output_text).unwrap().depth(), 2);
        equal_on(&r.output_text, closed, FIXTURE_RANGE);
        equal_on(src, closed, FIXTURE_RANGE);
        // same polynomial in h, h2 as the closed form
        let diff = compile(&parse(&format!("({})-({want})", r.output_text)).unwrap()).unwrap();
        assert!(diff.a.is_zero(), "{} is not {want}", r.output_text);
    }

    let e = parse(DALEMBERT_B).unwrap();
    assert_eq!(e.depth(), 7);
    let res = compile(&e).unwrap();
    assert_eq!(depth(&res.tower, &res.a), 3);
    let t = &res.tower;
    let h = t.gen_elem(t.level_of("h").unwrap());
    let target = sigma(t, &h, 1).mul(&harm(2));
    let level = (1..=t.len()).find(|&l| t.generator(l).shift_part == target).expect("generator sum H_k/k^2");
    assert!(occurring_levels(&res.a).contains(&level));
    let out = reinterpret(t, &res.spec, &res.a).unwrap();
    assert_eq!(out.depth(), 3);
    equal_on(&out.print(), DALEMBERT_B_CLOSED, FIXTURE_RANGE);
    equal_on(DALEMBERT_B, DALEMBERT_B_CLOSED, FIXTURE_RANGE);
    format!("A4, A5 at depth 2, B 7 -> 3 with sum H_k/k^2, n = 0..{FIXTURE_RANGE} exact")
}

fn criterion_4() -> String {
    for (src, closed) in [(BINOMIAL_A1, binomial_a1_closed()), (BINOMIAL_A2, binomial_a2_closed())] {
        let r = simplify(src);
        assert_eq!(r.output_depth, 2, "{src}");
        assert_eq!(parse(&r.output_text).unwrap().depth(), 2);
        equal_on(&r.output_text, &closed, FIXTURE_RANGE);
    }
    let r = simplify(BINOMIAL_B);
    let alpha = RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[2, 4]));
    let b = &r.tower_summary.generators[0];
    assert_eq!(b.shift_part, alpha.render("x"));
    equal_on(&r.output_text, &binomial_b_closed(), FIXTURE_RANGE);
    assert!(r.output_depth == 3 || !r.optimality_certified, "B at depth {} claimed optimal", r.output_depth);
    format!(
        "A1, A2 at depth 2, n = 0..{FIXTURE_RANGE} exact; B 5 -> {} (certified: {})",
        r.output_depth, r.optimality_certified
    )
}

fn criterion_5() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (t, spec) = standard_tower();

    for _ in 0..AUTOMORPHISM_SAMPLES {
        let f = random_elem(&mut rng, &t);
        let g = random_elem(&mut rng, &t);
        assert_eq!(sigma(&t, &sigma(&t, &f, -1), 1), f);
        assert_eq!(sigma(&t, &f.add(&g), 1), sigma(&t, &f, 1).add(&sigma(&t, &g, 1)));
        assert_eq!(sigma(&t, &f.mul(&g), 1), sigma(&t, &f, 1).mul(&sigma(&t, &g, 1)));
    }

    let mut ev = Evaluator::new(&t, &spec);
    for _ in 0..EVAL_SAMPLES {
        let f = random_poly_part(&mut rng, &t);
        let g = random_poly_part(&mut rng, &t);
        let lf = nsopt::expr::o_function(&t, &spec, &f);
        let lg = nsopt::expr::o_function(&t, &spec, &g);
        let k = lf.max(lg) + rng.gen_range(0..EVAL_WINDOW);
        let (a, b) = (ev.eval(&f, k), ev.eval(&g, k));
        assert_eq!(ev.eval(&f.add(&g), k), &a + &b);
        assert_eq!(ev.eval(&f.mul(&g), k), &a * &b);
        let j = rng.gen_range(-2i64..=2);
        let k = lf + j.min(0).unsigned_abs() + rng.gen_range(0..EVAL_WINDOW);
        assert_eq!(ev.eval(&sigma(&t, &f, j), k), ev.eval(&f, (k as i64 + j) as u64));
    }

    // telescoping residual, depth bounds and polynomial closure on
    // depth-optimal results over Q(x)(h)(h2)
    let base = adjoin_sigma_star(&adjoin_sigma_star(&Tower::new(), &harm(1)).unwrap(), &harm(2)).unwrap();
    let cfg = SearchConfig::default();
    let mut solved = 0;
    for _ in 0..40 {
        let (h, h2) = (base.gen_elem(1), base.gen_elem(2));
        let c = |rng: &mut ChaCha8Rng| TowerElem::Base(RatFunc::new(random_poly(rng, 1), Poly::from_ints(&[rng.gen_range(1i64..=3), 1])));
        let f = c(&mut rng).mul(&h).add(&c(&mut rng).mul(&h2)).add(&c(&mut rng));
        let r = telescope_depth_optimal(&base, &f, &cfg).unwrap();
        let rt = &r.tower;
        assert!(sigma(rt, &r.g, 1).sub(&r.g).sub(&f).is_zero());
        let (df, dg) = (depth(rt, &f), depth(rt, &r.g));
        assert!(df <= dg && dg <= df + 1, "depth {df} -> {dg}");
        assert!(is_polynomial_part(rt, &r.g));
        solved += 1;
    }

    let fixtures = [NESTED, DALEMBERT_A4, DALEMBERT_A5, BINOMIAL_A1, BINOMIAL_A2, BINOMIAL_B, DALEMBERT_B];
    for src in fixtures {
        let res = compile(&parse(src).unwrap()).unwrap();
        let out = reinterpret(&res.tower, &res.spec, &res.a).unwrap();
        assert_eq!(out.depth(), depth(&res.tower, &res.a), "{src}");
    }
    format!(
        "{AUTOMORPHISM_SAMPLES} automorphism, {EVAL_SAMPLES} evaluation samples, {solved} depth-optimal solves, {} fixtures",
        fixtures.len()
    )
}

fn partial_sums(f: &RatFunc, n: u64) -> Vec<Rat> {
    let mut acc = Rat::zero();
    (0..=n)
        .map(|k| {
            acc = &acc + f.eval(&rat(k as i64, 1)).unwrap_or_else(Rat::zero);
            acc.clone()
        })
        .collect()
}

/// True if `q(n) s(n) = p(n)` on all sample points for some `p`, `q` of
/// degree at most `deg`, not both zero.
fn rational_interpolation_exists(s: &[Rat], deg: usize) -> bool {
    let rows: Vec<Vec<Rat>> = s
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let n = rat(n as i64, 1);
            let pw: Vec<Rat> = (0..=deg).scan(Rat::one(), |acc, _| {
                let cur = acc.clone();
                *acc = &*acc * &n;
                Some(cur)
            }).collect();
            pw.iter().map(|p| p * v).chain(pw.iter().map(|p| -p)).collect()
        })
        .collect();
    rank(rows) < 2 * (deg + 1)
}

fn criterion_6() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..RATIONAL_SAMPLES {
        let w = RatFunc::new(random_poly(&mut rng, RATIONAL_DEGREE), {
            let dd = rng.gen_range(0..=RATIONAL_DEGREE);
            let d = random_poly(&mut rng, dd);
            if d.is_zero() { Poly::one() } else { d }
        });
        let f = w.shift(&Rat::one()).sub(&w);
        match telescope_rational(&f) {
            TeleResult::Solved(g) => {
                let g = g.as_base().expect("rational solution").clone();
                assert!(g.sub(&w).is_constant(), "g - w not constant for w = {}", w.render("x"));
            }
            TeleResult::NoSolution(s) => panic!("no solution for a rational difference: {s}"),
        }
    }
    let mut found = 0;
    let mut tries = 0;
    while found < NO_SOLUTION_SAMPLES {
        tries += 1;
        assert!(tries < 100 * NO_SOLUTION_SAMPLES, "too few NoSolution samples");
        let f = random_ratfunc(&mut rng, 3);
        if f.is_zero() || f.den().is_constant() {
            continue;
        }
        if let TeleResult::NoSolution(_) = telescope_rational(&f) {
            let s = partial_sums(&f, INTERP_POINTS);
            assert!(!rational_interpolation_exists(&s, INTERP_DEGREE), "interpolated: {}", f.render("x"));
            found += 1;
        }
    }
    format!(
        "{RATIONAL_SAMPLES} rational differences solved, {NO_SOLUTION_SAMPLES} NoSolution sums not rational up to degree {INTERP_DEGREE} on n = 0..{INTERP_POINTS}"
    )
}

fn main() {
    // plain binary so the per-criterion lines always print
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [(u32, &str, fn() -> String); 6] = [
        (1, "flagship identity", criterion_1),
        (2, "telescoping fixtures", criterion_2),
        (3, "d'Alembertian fixtures", criterion_3),
        (4, "binomial fixtures", criterion_4),
        (5, "property suites", criterion_5),
        (6, "rational solver completeness", criterion_6),
    ];
    let mut failed = Vec::new();
    for (n, name, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("criterion {n} ({name}): PASS - {detail}"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {n} ({name}): FAIL - {msg}");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
