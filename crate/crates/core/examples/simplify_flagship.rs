//! Rewrites a depth-4 nested harmonic sum at depth 2.
//!
//! Run with `cargo run --example simplify_flagship`.

use nsopt::cli::{simplify, Options};

const NESTED: &str =
    "sum(r,1,n,(sum(l,1,r,(sum(i,1,l,1/i)^2+sum(i,1,l,1/i^2))/l)+sum(l,1,r,sum(i,1,l,1/i)/l))/r)";

fn main() {
    let opts = Options { h_sugar: true, ..Options::default() };
    let report = simplify(NESTED, 100, &opts).expect("simplifies");
    println!("{}", report.input_text);
    println!("  = {}", report.output_text);
    println!(
        "depth {} -> {}, valid for n >= {}, certified optimal: {}",
        report.input_depth, report.output_depth, report.lambda, report.optimality_certified
    );
    for g in &report.tower_summary.generators {
        println!("  {}: sigma({}) = {} + {}", g.name, g.name, g.name, g.shift_part);
    }
}
