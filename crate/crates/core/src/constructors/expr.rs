//! Constructor expressions such as `chain(2)xchain(1)` or `sum(chain(3))`.
//!
//! ```text
//! expr   ::= factor ("x" factor)*
//! factor ::= "chain(" n ")" | "bool(" n ")" | "gamma(" n ("," n)* ")"
//!          | "sum(" expr ")" | "chang" | "trivial" | "(" expr ")"
//! ```

use super::{boolean, chang_algebra, direct_sum_of, gamma_zk, lukasiewicz_chain, product, trivial};
use crate::algebra::Algebra;
use crate::{EmvError, Result};

pub fn construct(text: &str) -> Result<Algebra> {
    let compact: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { s: &compact, pos: 0, len: text.len() };
    let a = p.expr()?;
    if p.pos < compact.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(a)
}

struct Parser<'a> {
    s: &'a [(usize, char)],
    pos: usize,
    len: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> EmvError {
        let at = self.s.get(self.pos).map(|p| p.0).unwrap_or(self.len);
        EmvError::Parse {
            pos: at,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).map(|p| p.1)
    }

    fn eat_word(&mut self, w: &str) -> bool {
        let n = w.chars().count();
        if self.s.len() >= self.pos + n && self.s[self.pos..self.pos + n].iter().map(|p| p.1).eq(w.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.s[start..self.pos].iter().map(|p| p.1).collect();
        s.parse().map_err(|_| self.error("number too large"))
    }

    fn expr(&mut self) -> Result<Algebra> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some('x') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        if let Some(f) = factors.iter().find(|f| f.as_finite().is_none()) {
            return Err(EmvError::Capability {
                family: f.family(),
                reason: "products need finite factors".into(),
            });
        }
        product(&factors)
    }

    fn factor(&mut self) -> Result<Algebra> {
        let at = self.pos;
        if self.eat_word("chain(") {
            let n = self.number()?;
            self.expect(')')?;
            return lukasiewicz_chain(n);
        }
        if self.eat_word("bool(") {
            let k = self.number()?;
            self.expect(')')?;
            if k > 12 {
                return Err(EmvError::SizeBound { size: 1 << k.min(60), bound: 4096 });
            }
            return Ok(boolean(k));
        }
        if self.eat_word("gamma(") {
            let mut u = vec![self.number()? as i64];
            while self.peek() == Some(',') {
                self.pos += 1;
                u.push(self.number()? as i64);
            }
            self.expect(')')?;
            return gamma_zk(u.len(), &u);
        }
        if self.eat_word("sum(") {
            let inner = self.expr()?;
            self.expect(')')?;
            if inner.as_finite().is_none() {
                return Err(EmvError::Capability {
                    family: inner.family(),
                    reason: "direct sums need a finite component".into(),
                });
            }
            return Ok(direct_sum_of(inner));
        }
        if self.eat_word("chang") {
            return Ok(chang_algebra());
        }
        if self.eat_word("trivial") {
            return Ok(trivial());
        }
        if self.peek() == Some('(') {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        self.pos = at;
        Err(self.error("expected chain(n), bool(k), gamma(..), sum(..), chang or trivial"))
    }
}
