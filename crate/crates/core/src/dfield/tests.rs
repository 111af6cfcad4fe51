use super::*;
use crate::algebra::{rat, rat_int, Poly};

fn base(num: &[i64], den: &[i64]) -> TowerElem {
    TowerElem::Base(RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)))
}

/// 1/(x+1)^o
fn harm(o: u32) -> TowerElem {
    TowerElem::Base(RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1]).pow(o)))
}

fn tower_h() -> Tower {
    adjoin_sigma_star(&Tower::new(), &harm(1)).unwrap()
}

#[test]
fn sigma_base_and_generator() {
    let t = tower_h();
    assert_eq!(sigma(&t, &base(&[1], &[0, 1]), 1), harm(1));
    let h = t.gen_elem(1);
    assert_eq!(sigma(&t, &h, 1), h.add(&harm(1)));
    assert_eq!(sigma(&t, &sigma(&t, &h, 1), -1), h);
    assert_eq!(t.generator(1).name, "h");
}

#[test]
fn depth_examples() {
    let t = tower_h();
    assert_eq!(depth(&t, &TowerElem::x()), 1);
    assert_eq!(depth(&t, &t.gen_elem(1)), 2);
    assert_eq!(depth(&t, &TowerElem::constant(rat(7, 3))), 0);
}

#[test]
fn naive_tower_depths() {
    // h, s, t, a with the summands of the naive construction
    let t = tower_h();
    let h = t.gen_elem(1);
    let x1 = base(&[1], &[1, 1]);
    let sh = sigma(&t, &h, 1);
    let t = adjoin_sigma_star(&t, &sh.mul(&x1)).unwrap();
    let s = t.gen_elem(2);
    let ss = sigma(&t, &s, 1);
    let t = adjoin_sigma_star(&t, &ss.mul(&x1).scale_rat(&rat_int(2))).unwrap();
    let tt = t.gen_elem(3);
    let st = sigma(&t, &s.add(&tt), 1);
    let t = adjoin_sigma_star(&t, &st.mul(&x1)).unwrap();
    let a = t.gen_elem(4);
    assert_eq!(depth(&t, &s), 3);
    assert_eq!(depth(&t, &tt), 4);
    assert_eq!(depth(&t, &a), 5);
}

#[test]
fn telescoper_blocks_adjunction() {
    let t = tower_h();
    let h = t.gen_elem(1);
    let sh = sigma(&t, &h, 1);
    let t = adjoin_sigma_star(&t, &sh.mul(&harm(1))).unwrap();
    let s = t.gen_elem(2);
    match adjoin_sigma_star(&t, &harm(2)) {
        Err(DFieldError::TelescoperExists(g)) => {
            assert_eq!(g, s.scale_rat(&rat_int(2)).sub(&h.mul(&h)));
        }
        other => panic!("expected telescoper, got {other:?}"),
    }
    assert_eq!(
        adjoin_sigma_star(&t, &TowerElem::zero()).unwrap_err(),
        DFieldError::TelescoperExists(TowerElem::zero())
    );
}

#[test]
fn product_adjunction() {
    let alpha = base(&[1, 1], &[2, 4]);
    let t = adjoin_pi(&Tower::new(), &alpha, DEFAULT_PI_MAX_POWER).unwrap();
    assert_eq!(t.generator(1).kind, GenKind::Pi);
    assert_eq!(t.generator(1).depth, 2);
    let b = t.gen_elem(1);
    assert_eq!(sigma(&t, &b, 1), b.mul(&alpha));
    assert_eq!(sigma(&t, &sigma(&t, &b.inv(), 1), -1), b.inv());

    match adjoin_pi(&Tower::new(), &TowerElem::one(), 6) {
        Err(DFieldError::PiCriterionFails(1, w)) => assert!(w.as_constant().is_some()),
        other => panic!("{other:?}"),
    }
    match adjoin_pi(&Tower::new(), &base(&[1, 1], &[0, 1]), 6) {
        Err(DFieldError::PiCriterionFails(1, w)) => {
            let c = w.as_base().unwrap().num().lc();
            assert_eq!(w.scale_rat(&c.recip()), TowerElem::x());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn polynomial_parts() {
    let t = tower_h();
    let t = adjoin_sigma_star(&t, &harm(2)).unwrap();
    let h = t.gen_elem(1);
    let h2 = t.gen_elem(2);
    assert!(is_polynomial_part(&t, &h.mul(&h).add(&h2)));
    assert!(!is_polynomial_part(&t, &h.inv()));
    let tb = adjoin_pi(&Tower::new(), &base(&[1, 1], &[2, 4]), 6).unwrap();
    let b = tb.gen_elem(1);
    assert!(is_polynomial_part(&tb, &b.mul(&base(&[0, 0, 1], &[1])).inv()));
}

#[test]
fn tower_json_is_stable() {
    let t = adjoin_sigma_star(&tower_h(), &harm(2)).unwrap();
    let js = t.to_json();
    assert_eq!(js, t.to_json());
    let back: TowerSummary = serde_json::from_str(&js).unwrap();
    assert_eq!(back, t.summary());
    assert_eq!(back.generators[1].name, "h2");
    assert_eq!(back.generators[1].shift_part, "1/(x^2+2*x+1)");
}
