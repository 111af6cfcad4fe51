//! Tower elements as sequences: evaluation data, validity bounds and the
//! way back to expressions.

use nsopt::algebra::{fmt_rat, Field, Poly, RatFunc};
use nsopt::dfield::{adjoin_sigma_star, Tower, TowerElem};
use nsopt::expr::{o_function, reinterpret, EvalSpec, Evaluator};

fn main() {
    let h = TowerElem::Base(RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1])));
    let t = adjoin_sigma_star(&Tower::new(), &h).unwrap();
    let mut spec = EvalSpec::new();
    spec.extend_default(&t);

    // h/(x - 3) has a pole at 3, so its values are meaningful from 4 on
    let f = t.gen_elem(1).mul(&TowerElem::Base(RatFunc::new(Poly::one(), Poly::from_ints(&[-3, 1]))));
    let l = o_function(&t, &spec, &f);
    let mut ev = Evaluator::new(&t, &spec);
    let vals: Vec<String> = (l..l + 5).map(|k| fmt_rat(&ev.eval(&f, k))).collect();
    println!("{} for n >= {l}: {}", t.render(&f), vals.join(", "));
    println!("as an expression: {}", reinterpret(&t, &spec, &f).unwrap().print_with_h_sugar());
}
