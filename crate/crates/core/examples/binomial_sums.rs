//! Sums over the reciprocal central binomial coefficient, registered as a
//! product generator.

use nsopt::algebra::{Poly, RatFunc};
use nsopt::cli::{simplify, Options};

const SUMS: [&str; 2] = [
    "sum(k,1,n,prod(i,1,k,i/(2*(2*i-1))))",
    "-sum(i,2,n,(4*i-3)*sum(j,2,i,(64*j^4-288*j^3+468*j^2-323*j+84)*sum(k,1,j,-(3*(2*k-3)*(2*k-1)*(4*k-7)*(576*k^6-5472*k^5+20980*k^4-41559*k^3+44882*k^2-25113*k+5760))/(k*(64*k^4-544*k^3+1716*k^2-2379*k+1227)*(64*k^4-288*k^3+468*k^2-323*k+84))*prod(m,1,k,m/(2*(2*m-1))))/((j-1)*j*(2*j-3)*(4*j-7)*(4*j-3)))/(i*(2*i-1)))",
];

fn main() {
    // b(n+1) = b(n) * (n+1)/(2(2n+1)), b(0) = 1
    let alpha = RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[2, 4]));
    let opts = Options { products: vec![(alpha, Some(1))], h_sugar: true, ..Options::default() };
    for src in SUMS {
        let r = simplify(src, 40, &opts).expect("simplifies");
        println!("depth {} -> {}, certified: {}", r.input_depth, r.output_depth, r.optimality_certified);
        println!("  {}", r.output_text);
    }
}
