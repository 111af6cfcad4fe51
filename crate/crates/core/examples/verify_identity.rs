//! Exact comparison of two expressions on an initial range.

use nsopt::cli::verify;

fn main() {
    let pairs = [
        ("sum(k,1,n,1/(k*(k+1)))", "n/(n+1)"),
        ("sum(k,1,n,H(k))", "(n+1)*H(n)-n"),
        ("sum(k,1,n,H(k)/k)", "1/2*H(n)^2+1/2*H(2,n)"),
        // wrong on purpose
        ("sum(k,1,n,H(k)^2)", "n*H(n)^2"),
    ];
    for (lhs, rhs) in pairs {
        let v = verify(lhs, rhs, 50).expect("parses");
        match v.counterexample {
            None => println!("{lhs} = {rhs} on n = 0..{}", v.checked - 1),
            Some((k, a, b)) => println!("{lhs} != {rhs}: at n = {k}, {a} vs {b}"),
        }
    }
}
