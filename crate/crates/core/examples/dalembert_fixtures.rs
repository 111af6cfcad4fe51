//! Nested sums whose inner summands come from d'Alembertian solutions.

use nsopt::cli::{simplify, Options};

const FIXTURES: [(&str, &str); 3] = [
    ("A4", "sum(i,2,n,sum(j,2,i,(2*j-1)*sum(k,1,j,1/((2*k-3)*(2*k-1)))/((j-1)*j))/i)"),
    (
        "A5",
        "sum(i,3,n,sum(j,3,i,(2*j-1)*sum(k,3,j,(2*(k-2)*(k-1)*k*H(k)-(2*k-1)*(3*k^2-6*k+2))/((k-2)*(k-1)*k*(2*k-3)*(2*k-1)))/((j-1)*j))/i)",
    ),
    (
        "B",
        "sum(i,4,n,sum(j,4,i,(2*j-1)*sum(k,4,j,sum(l,4,k,(2*l-3)*(l^2-3*l+6)*sum(r,3,l,-(2*(2*r^6-27*r^5+117*r^4-254*r^3+398*r^2+2*(r-3)*(r-2)*(r-1)*(r+2)*H(r)*r-446*r+204))/((r-2)*(r-1)*r*(r^2-5*r+10)*(r^2-3*r+6)))/((l-3)*(l-2)*(l-1)*l))/((2*k-3)*(2*k-1)))/((j-1)*j))/i)",
    ),
];

fn main() {
    let opts = Options { h_sugar: true, ..Options::default() };
    for (name, src) in FIXTURES {
        let r = simplify(src, 60, &opts).expect("simplifies");
        println!("{name}: depth {} -> {} (n >= {})", r.input_depth, r.output_depth, r.lambda);
        println!("  {}", r.output_text);
    }
}
