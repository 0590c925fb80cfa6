//! Sumset expressions such as `3A-2A`, `A+A-A-A` or `2*(A+{0,1})`.
//!
//! ```text
//! expr := term (('+' | '-') term)*
//! term := [uint] atom | uint '*' atom | '-' term
//! atom := name | '{' [int (',' int)*] '}' | '[' int ',' int ']' | '(' expr ')'
//! ```
//!
//! `cX` is the `c`-fold sumset and `c*X` the dilation. Unary minus binds tighter than the
//! binary operators, and `-` may be written as ASCII hyphen or U+2212.

mod parser;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::setcore::IntSet;

pub use parser::parse;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(IntSet),
    Interval(i64, i64),
    Name(String),
    /// `cX`: `c` copies of `X` added together; `0X` is empty.
    Iterate(u64, Box<Expr>),
    /// `c*X`.
    Dilate(u64, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

/// Named sets an expression can refer to.
#[derive(Clone, Debug, Default)]
pub struct Env {
    vars: HashMap<String, IntSet>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn with(mut self, name: impl Into<String>, set: IntSet) -> Env {
        self.insert(name, set);
        self
    }

    pub fn insert(&mut self, name: impl Into<String>, set: IntSet) {
        self.vars.insert(name.into(), set);
    }

    pub fn get(&self, name: &str) -> Result<&IntSet> {
        self.vars.get(name).ok_or_else(|| Error::Unbound(name.to_string()))
    }
}

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<IntSet> {
        Ok(match self {
            Expr::Literal(s) => s.clone(),
            Expr::Interval(a, b) => IntSet::interval(*a, *b)?,
            Expr::Name(n) => env.get(n)?.clone(),
            Expr::Iterate(c, x) => x.eval(env)?.iterate(*c)?,
            Expr::Dilate(c, x) => {
                let c = i64::try_from(*c).map_err(|_| Error::Overflow("dilation factor"))?;
                x.eval(env)?.dilate(c)?
            }
            Expr::Sum(x, y) => x.eval(env)?.sumset(&y.eval(env)?)?,
            Expr::Diff(x, y) => x.eval(env)?.diffset(&y.eval(env)?)?,
            Expr::Neg(x) => x.eval(env)?.negate()?,
        })
    }

    /// Names referenced anywhere in the expression, in order of first appearance.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Name(n) if !out.contains(&n.as_str()) => out.push(n),
            Expr::Iterate(_, x) | Expr::Dilate(_, x) | Expr::Neg(x) => x.collect_names(out),
            Expr::Sum(x, y) | Expr::Diff(x, y) => {
                x.collect_names(out);
                y.collect_names(out);
            }
            _ => {}
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, Expr::Literal(_) | Expr::Interval(..) | Expr::Name(_))
    }

    fn is_binary(&self) -> bool {
        matches!(self, Expr::Sum(..) | Expr::Diff(..))
    }
}

/// Parse and evaluate in one step.
pub fn eval_str(input: &str, env: &Env) -> Result<IntSet> {
    parse(input)?.eval(env)
}

struct Atom<'a>(&'a Expr);

impl fmt::Display for Atom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_atom() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

struct Operand<'a>(&'a Expr);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_binary() {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(s) => write!(f, "{{{s}}}"),
            Expr::Interval(a, b) => write!(f, "[{a},{b}]"),
            Expr::Name(n) => f.write_str(n),
            Expr::Iterate(c, x) => write!(f, "{c}{}", Atom(x)),
            Expr::Dilate(c, x) => write!(f, "{c}*{}", Atom(x)),
            Expr::Sum(x, y) => write!(f, "{x}+{}", Operand(y)),
            Expr::Diff(x, y) => write!(f, "{x}-{}", Operand(y)),
            Expr::Neg(x) => write!(f, "-{}", Operand(x)),
        }
    }
}
