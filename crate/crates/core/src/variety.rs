//! Terms over `{0, ⊕, ⊙, ∨, ∧}` and brute-force equation checking.
//!
//! Surface syntax: `+` is ⊕, `*` is ⊙, `|` is ∨, `&` is ∧. Binding is
//! `&` tightest, then `*`, `+`, `|`; every operator is left-associative.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{Algebra, Element};
use crate::{EmvError, Result};

/// Default bound on the number of variables [`satisfies`] will enumerate.
pub const DEFAULT_VARIABLE_BOUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Oplus,
    Odot,
    Join,
    Meet,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Oplus => '+',
            BinOp::Odot => '*',
            BinOp::Join => '|',
            BinOp::Meet => '&',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Join => 1,
            BinOp::Oplus => 2,
            BinOp::Odot => 3,
            BinOp::Meet => 4,
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        Some(match c {
            '+' => BinOp::Oplus,
            '*' => BinOp::Odot,
            '|' => BinOp::Join,
            '&' => BinOp::Meet,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    Bin(BinOp, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn bin(op: BinOp, l: Term, r: Term) -> Term {
        Term::Bin(op, Box::new(l), Box::new(r))
    }

    /// Variables in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Zero => {}
            Term::Bin(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::Bin(op, l, r) => {
                let p = op.precedence();
                let paren = p < min;
                if paren {
                    write!(f, "(")?;
                }
                l.fmt_prec(f, p)?;
                write!(f, " {} ", op.symbol())?;
                // right operand of a left-associative operator needs a
                // strictly tighter binding to print without parentheses
                r.fmt_prec(f, p + 1)?;
                if paren {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    /// Variables of both sides, left side first.
    pub fn variables(&self) -> Vec<String> {
        let mut v = self.lhs.variables();
        for x in self.rhs.variables() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(String),
    Zero,
    Op(BinOp),
    Open,
    Close,
    Eq,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_lowercase() {
            while i < b.len() && (b[i].is_ascii_lowercase() || b[i].is_ascii_digit()) {
                i += 1;
            }
            out.push((start, Tok::Var(text[start..i].to_string())));
            continue;
        } else if c == '0' {
            Tok::Zero
        } else if c == '(' {
            Tok::Open
        } else if c == ')' {
            Tok::Close
        } else if c == '=' {
            Tok::Eq
        } else if let Some(op) = BinOp::from_symbol(c) {
            Tok::Op(op)
        } else {
            let ch = text[start..].chars().next().unwrap_or(c);
            return Err(EmvError::Parse {
                pos: start,
                message: format!("unexpected character '{ch}'"),
            });
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn error(&self, what: &str) -> EmvError {
        match self.toks.get(self.pos) {
            Some((at, t)) => EmvError::Parse {
                pos: *at,
                message: format!("{what}, found {}", describe(t)),
            },
            None => EmvError::Parse {
                pos: self.end,
                message: format!("{what}, found end of input"),
            },
        }
    }

    fn term(&mut self, min: u8) -> Result<Term> {
        let mut lhs = self.atom()?;
        while let Some(Tok::Op(op)) = self.peek() {
            let op = *op;
            if op.precedence() < min {
                break;
            }
            self.pos += 1;
            let rhs = self.term(op.precedence() + 1)?;
            lhs = Term::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Term> {
        let t = match self.peek() {
            Some(Tok::Var(v)) => Term::Var(v.clone()),
            Some(Tok::Zero) => Term::Zero,
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.term(0)?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.error("expected ')'"));
                }
                t
            }
            _ => return Err(self.error("expected a variable, '0' or '('")),
        };
        self.pos += 1;
        Ok(t)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Var(v) => format!("'{v}'"),
        Tok::Zero => "'0'".into(),
        Tok::Op(op) => format!("'{}'", op.symbol()),
        Tok::Open => "'('".into(),
        Tok::Close => "')'".into(),
        Tok::Eq => "'='".into(),
    }
}

fn parser(text: &str) -> Result<Parser> {
    Ok(Parser {
        toks: tokenize(text)?,
        pos: 0,
        end: text.len(),
    })
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = parser(text)?;
    let t = p.term(0)?;
    if p.pos < p.toks.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(t)
}

/// Parses `lhs = rhs`.
pub fn parse_equation(text: &str) -> Result<Equation> {
    let mut p = parser(text)?;
    let lhs = p.term(0)?;
    if p.peek() != Some(&Tok::Eq) {
        return Err(p.error("expected '='"));
    }
    p.pos += 1;
    let rhs = p.term(0)?;
    if p.pos < p.toks.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(Equation { lhs, rhs })
}

pub fn eval_term(a: &Algebra, t: &Term, env: &BTreeMap<String, Element>) -> Result<Element> {
    Ok(match t {
        Term::Var(v) => env.get(v).cloned().ok_or_else(|| EmvError::UnboundVariable(v.clone()))?,
        Term::Zero => a.zero(),
        Term::Bin(op, l, r) => {
            let x = eval_term(a, l, env)?;
            let y = eval_term(a, r, env)?;
            match op {
                BinOp::Oplus => a.oplus(&x, &y),
                BinOp::Odot => a.odot(&x, &y),
                BinOp::Join => a.join(&x, &y),
                BinOp::Meet => a.meet(&x, &y),
            }
        }
    })
}

/// Table-level evaluation for finite algebras; the exhaustive scan uses this.
fn eval_indices(a: &crate::algebra::finite::FiniteAlgebra, t: &Term, vars: &[String], val: &[usize]) -> usize {
    match t {
        Term::Var(v) => val[vars.iter().position(|w| w == v).expect("variable was collected")],
        Term::Zero => a.zero_index(),
        Term::Bin(op, l, r) => {
            let x = eval_indices(a, l, vars, val);
            let y = eval_indices(a, r, vars, val);
            match op {
                BinOp::Oplus => a.op(x, y),
                BinOp::Odot => a.odot_of(x, y),
                BinOp::Join => a.join_of(x, y),
                BinOp::Meet => a.meet_of(x, y),
            }
        }
    }
}

/// Outcome of [`satisfies`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfaction {
    Holds,
    /// First violating assignment in lexicographic order of carrier indices,
    /// as `(variable, element label)` pairs in variable order.
    Counterexample(Vec<(String, String)>),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds)
    }
}

pub fn satisfies(a: &Algebra, eq: &Equation) -> Result<Satisfaction> {
    satisfies_bounded(a, eq, DEFAULT_VARIABLE_BOUND)
}

pub fn satisfies_bounded(a: &Algebra, eq: &Equation, bound: usize) -> Result<Satisfaction> {
    let f = a.require_finite("equation checking")?;
    let vars = eq.variables();
    if vars.len() > bound {
        return Err(EmvError::SizeBound {
            size: vars.len(),
            bound,
        });
    }
    let n = f.size();
    let mut val = vec![0usize; vars.len()];
    loop {
        if eval_indices(f, &eq.lhs, &vars, &val) != eval_indices(f, &eq.rhs, &vars, &val) {
            let w = vars
                .iter()
                .zip(&val)
                .map(|(v, &i)| (v.clone(), f.label_of(i).to_string()))
                .collect();
            return Ok(Satisfaction::Counterexample(w));
        }
        // odometer with the first variable most significant
        let mut k = vars.len();
        loop {
            if k == 0 {
                return Ok(Satisfaction::Holds);
            }
            k -= 1;
            val[k] += 1;
            if val[k] < n {
                break;
            }
            val[k] = 0;
        }
    }
}

/// `x + x = x` on a finite algebra.
pub fn is_generalized_boolean(a: &Algebra) -> Result<bool> {
    let eq = Equation::new(Term::bin(BinOp::Oplus, Term::var("x"), Term::var("x")), Term::var("x"));
    Ok(satisfies(a, &eq)?.holds())
}

/// Names of all variables across several equations, sorted.
pub fn variable_set(eqs: &[Equation]) -> BTreeSet<String> {
    eqs.iter().flat_map(|e| e.variables()).collect()
}
