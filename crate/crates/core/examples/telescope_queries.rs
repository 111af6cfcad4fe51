//! Telescoping in the base field and over harmonic-number towers.

use nsopt::algebra::{Field, Poly, RatFunc};
use nsopt::dfield::{adjoin_sigma_star, sigma, Tower, TowerElem};
use nsopt::telescope::{telescope_depth_optimal, telescope_rational, telescope_tower, SearchConfig, TeleResult};

fn show(label: &str, t: &Tower, r: &TeleResult) {
    match r {
        TeleResult::Solved(g) => println!("{label}: g = {}", t.render(g)),
        TeleResult::NoSolution(why) => println!("{label}: no solution ({why})"),
    }
}

fn main() {
    let empty = Tower::new();
    let one_over = |k: u32| RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1]).pow(k));

    // 1/((x+1)(x+2)) telescopes, 1/(x+1) does not
    let f = RatFunc::new(Poly::one(), Poly::from_ints(&[2, 3, 1]));
    show("1/((x+1)(x+2))", &empty, &telescope_rational(&f));
    show("1/(x+1)", &empty, &telescope_rational(&one_over(1)));

    // sigma(h)/(x+1) needs a new generator; the search picks h2 = H(2,n)
    let t = adjoin_sigma_star(&empty, &TowerElem::Base(one_over(1))).unwrap();
    let f = sigma(&t, &t.gen_elem(1), 1).mul(&TowerElem::Base(one_over(1)));
    show("sigma(h)/(x+1) in Q(x)(h)", &t, &telescope_tower(&t, &f).unwrap());
    let r = telescope_depth_optimal(&t, &f, &SearchConfig::default()).unwrap();
    println!("depth-optimal: g = {}", r.tower.render(&r.g));
    for g in &r.adjoined {
        println!("  adjoined {}: sigma({}) = {} + {}", g.name, g.name, g.name, r.tower.render(&g.shift_part));
    }
}
