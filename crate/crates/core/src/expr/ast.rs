use std::fmt::Write as _;

use num_traits::{One, Signed};

use crate::algebra::{fmt_rat, Field, Poly, Rat, RatFunc};

/// Nested product-sum expression.
///
/// `Base` is a rational function in the innermost bound variable (`n` at top
/// level, otherwise the index of the enclosing `Sum`/`Prod`). The upper bound
/// of every `Sum`/`Prod` is the enclosing variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SumExpr {
    Const(Rat),
    Base(RatFunc),
    Plus(Vec<SumExpr>),
    Times(Vec<SumExpr>),
    Power(Box<SumExpr>, u32),
    Sum { lower: u64, index: String, body: Box<SumExpr> },
    Prod { lower: u64, index: String, body: Box<SumExpr> },
}

/// Index names by nesting depth.
const INDEX_NAMES: [&str; 11] = ["i", "j", "k", "l", "m", "p", "q", "r", "u", "v", "w"];

pub fn index_name(depth: usize) -> String {
    match INDEX_NAMES.get(depth) {
        Some(s) => s.to_string(),
        None => format!("i{}", depth - INDEX_NAMES.len() + 1),
    }
}

impl SumExpr {
    pub fn constant(c: Rat) -> SumExpr {
        SumExpr::Const(c)
    }

    pub fn int(c: i64) -> SumExpr {
        SumExpr::Const(Rat::from_integer(c.into()))
    }

    /// A rational function of the bound variable; constants become `Const`.
    pub fn base(r: RatFunc) -> SumExpr {
        match r.as_constant() {
            Some(c) => SumExpr::Const(c),
            None => SumExpr::Base(r),
        }
    }

    /// The bound variable itself.
    pub fn var() -> SumExpr {
        SumExpr::Base(RatFunc::x())
    }

    fn as_ratfunc(&self) -> Option<RatFunc> {
        match self {
            SumExpr::Const(c) => Some(RatFunc::constant(c.clone())),
            SumExpr::Base(r) => Some(r.clone()),
            _ => None,
        }
    }

    /// Rational-function value if the expression is a leaf.
    pub fn leaf_value(&self) -> Option<RatFunc> {
        self.as_ratfunc()
    }

    /// Sum with flattening; all leaves fold into one leading leaf.
    pub fn plus(children: Vec<SumExpr>) -> SumExpr {
        let mut leaf = RatFunc::zero();
        let mut rest = Vec::new();
        for c in children {
            match c {
                SumExpr::Plus(inner) => {
                    for d in inner {
                        match d.as_ratfunc() {
                            Some(r) => leaf = leaf.add(&r),
                            None => rest.push(d),
                        }
                    }
                }
                other => match other.as_ratfunc() {
                    Some(r) => leaf = leaf.add(&r),
                    None => rest.push(other),
                },
            }
        }
        let mut out = Vec::new();
        if !leaf.is_zero() {
            out.push(SumExpr::base(leaf));
        }
        out.extend(rest);
        match out.len() {
            0 => SumExpr::int(0),
            1 => out.pop().unwrap(),
            _ => SumExpr::Plus(out),
        }
    }

    /// Product with flattening; all leaves fold into one leading leaf.
    pub fn times(children: Vec<SumExpr>) -> SumExpr {
        let mut leaf = RatFunc::one();
        let mut rest = Vec::new();
        for c in children {
            match c {
                SumExpr::Times(inner) => {
                    for d in inner {
                        match d.as_ratfunc() {
                            Some(r) => leaf = leaf.mul(&r),
                            None => rest.push(d),
                        }
                    }
                }
                other => match other.as_ratfunc() {
                    Some(r) => leaf = leaf.mul(&r),
                    None => rest.push(other),
                },
            }
        }
        if leaf.is_zero() {
            return SumExpr::int(0);
        }
        let mut out = Vec::new();
        if !leaf.is_one() {
            out.push(SumExpr::base(leaf));
        }
        out.extend(rest);
        match out.len() {
            0 => SumExpr::int(1),
            1 => out.pop().unwrap(),
            _ => SumExpr::Times(out),
        }
    }

    pub fn power(e: SumExpr, k: u32) -> SumExpr {
        match k {
            0 => return SumExpr::int(1),
            1 => return e,
            _ => {}
        }
        if let Some(r) = e.as_ratfunc() {
            return SumExpr::base(r.pow(k as i32));
        }
        match e {
            SumExpr::Power(inner, j) => SumExpr::Power(inner, j * k),
            other => SumExpr::Power(Box::new(other), k),
        }
    }

    pub fn neg(e: SumExpr) -> SumExpr {
        SumExpr::times(vec![SumExpr::int(-1), e])
    }

    pub fn sum(lower: u64, index: impl Into<String>, body: SumExpr) -> SumExpr {
        SumExpr::Sum { lower, index: index.into(), body: Box::new(body) }
    }

    pub fn prod(lower: u64, index: impl Into<String>, body: SumExpr) -> SumExpr {
        SumExpr::Prod { lower, index: index.into(), body: Box::new(body) }
    }

    /// `Sum(1, 1/i^o)`, the harmonic number of order `o`.
    pub fn harmonic(o: u32, index: impl Into<String>) -> SumExpr {
        let den = Poly::x().pow(o);
        SumExpr::sum(1, index, SumExpr::Base(RatFunc::new(Poly::one(), den)))
    }

    /// Renames every binder by its nesting depth.
    pub fn rename_indices(&self) -> SumExpr {
        self.rename_at(0)
    }

    fn rename_at(&self, depth: usize) -> SumExpr {
        match self {
            SumExpr::Const(_) | SumExpr::Base(_) => self.clone(),
            SumExpr::Plus(v) => SumExpr::Plus(v.iter().map(|c| c.rename_at(depth)).collect()),
            SumExpr::Times(v) => SumExpr::Times(v.iter().map(|c| c.rename_at(depth)).collect()),
            SumExpr::Power(b, k) => SumExpr::Power(Box::new(b.rename_at(depth)), *k),
            SumExpr::Sum { lower, body, .. } => SumExpr::Sum {
                lower: *lower,
                index: index_name(depth),
                body: Box::new(body.rename_at(depth + 1)),
            },
            SumExpr::Prod { lower, body, .. } => SumExpr::Prod {
                lower: *lower,
                index: index_name(depth),
                body: Box::new(body.rename_at(depth + 1)),
            },
        }
    }

    /// Nesting depth: 0 for constants, 1 for other leaves, one more than the
    /// body for sums and products.
    pub fn depth(&self) -> usize {
        match self {
            SumExpr::Const(_) => 0,
            SumExpr::Base(r) => usize::from(!r.is_constant()),
            SumExpr::Plus(v) | SumExpr::Times(v) => v.iter().map(|c| c.depth()).max().unwrap_or(0),
            SumExpr::Power(b, _) => b.depth(),
            SumExpr::Sum { body, .. } | SumExpr::Prod { body, .. } => body.depth() + 1,
        }
    }

    /// Text in the input grammar with top-level variable `n`.
    pub fn print(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, "n", false);
        s
    }

    /// As [`SumExpr::print`] but harmonic sums `Sum(1, 1/i^o)` print as
    /// `H(n)` or `H(o,n)`.
    pub fn print_with_h_sugar(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, "n", true);
        s
    }

    fn harmonic_order(&self) -> Option<u32> {
        let SumExpr::Sum { lower: 1, body, .. } = self else {
            return None;
        };
        let SumExpr::Base(r) = body.as_ref() else {
            return None;
        };
        let d = r.den();
        let o = d.deg();
        (o >= 1 && r.num().is_one() && *d == Poly::x().pow(o as u32)).then_some(o as u32)
    }

    fn write(&self, out: &mut String, var: &str, sugar: bool) {
        match self {
            SumExpr::Const(c) => out.push_str(&fmt_rat(c)),
            SumExpr::Base(r) => out.push_str(&r.render(var)),
            SumExpr::Plus(v) => {
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        out.push('+');
                    }
                    let mut s = String::new();
                    c.write(&mut s, var, sugar);
                    let signed = matches!(c, SumExpr::Times(_) | SumExpr::Const(_));
                    if i > 0 && s.starts_with('-') && signed {
                        out.pop();
                        out.push_str(&s);
                    } else if i > 0 && s.starts_with('-') {
                        let _ = write!(out, "({s})");
                    } else {
                        out.push_str(&s);
                    }
                }
            }
            SumExpr::Times(v) => {
                let mut v = &v[..];
                if let SumExpr::Const(c) = &v[0] {
                    if c.is_negative() {
                        out.push('-');
                        let abs = -c;
                        if !One::is_one(&abs) {
                            let _ = write!(out, "{}*", fmt_rat(&abs));
                        }
                        v = &v[1..];
                    }
                }
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        out.push('*');
                    }
                    let mut s = String::new();
                    c.write(&mut s, var, sugar);
                    let wrap = match c {
                        SumExpr::Plus(_) => true,
                        SumExpr::Const(_) | SumExpr::Base(_) => s.contains(['+', '-']) || (i > 0 && s.contains('/')),
                        _ => false,
                    };
                    if wrap {
                        let _ = write!(out, "({s})");
                    } else {
                        out.push_str(&s);
                    }
                }
            }
            SumExpr::Power(b, k) => {
                let mut s = String::new();
                b.write(&mut s, var, sugar);
                match b.as_ref() {
                    SumExpr::Sum { .. } | SumExpr::Prod { .. } => out.push_str(&s),
                    _ => {
                        let _ = write!(out, "({s})");
                    }
                }
                let _ = write!(out, "^{k}");
            }
            SumExpr::Sum { lower, index, body } => {
                if sugar {
                    if let Some(o) = self.harmonic_order() {
                        if o == 1 {
                            let _ = write!(out, "H({var})");
                        } else {
                            let _ = write!(out, "H({o},{var})");
                        }
                        return;
                    }
                }
                let _ = write!(out, "sum({index},{lower},{var},");
                body.write(out, index, sugar);
                out.push(')');
            }
            SumExpr::Prod { lower, index, body } => {
                let _ = write!(out, "prod({index},{lower},{var},");
                body.write(out, index, sugar);
                out.push(')');
            }
        }
    }
}

impl std::fmt::Display for SumExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.print())
    }
}

/// `1` without the `Field`/`One` clash.
pub(crate) fn rat_one() -> Rat {
    One::one()
}
