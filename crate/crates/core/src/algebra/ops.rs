//! Checked derived operations.

use super::{Algebra, Element};
use crate::{EmvError, Result};

/// Iteration mode for [`iterate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterMode {
    /// `n.x = (n-1).x ⊕ x`
    Sum,
    /// `xⁿ = xⁿ⁻¹ ⊙ x`
    Power,
}

pub(crate) fn member(a: &Algebra, x: &Element) -> Result<()> {
    if a.contains(x) {
        Ok(())
    } else {
        Err(EmvError::DomainMismatch(format!("{x:?}"), a.family()))
    }
}

pub fn leq(a: &Algebra, x: &Element, y: &Element) -> Result<bool> {
    member(a, x)?;
    member(a, y)?;
    Ok(a.meet(x, y) == *x)
}

/// `λ_{lo,b}(x)`: the least `z` in `[lo,b]` with `x ⊕ z = b`; `lo` defaults to 0.
pub fn lambda(alg: &Algebra, b: &Element, x: &Element, lo: Option<&Element>) -> Result<Element> {
    member(alg, b)?;
    member(alg, x)?;
    if !alg.is_idempotent(b) {
        return Err(EmvError::NotIdempotent(alg.label(b)));
    }
    if !alg.leq(x, b) {
        return Err(EmvError::Precondition(format!(
            "{} is not below {}",
            alg.label(x),
            alg.label(b)
        )));
    }
    let base = alg.lambda(b, x);
    match lo {
        None => Ok(base),
        Some(lo) => {
            member(alg, lo)?;
            if !alg.is_idempotent(lo) {
                return Err(EmvError::NotIdempotent(alg.label(lo)));
            }
            if !alg.leq(lo, x) {
                return Err(EmvError::Precondition(format!(
                    "{} is not below {}",
                    alg.label(lo),
                    alg.label(x)
                )));
            }
            Ok(alg.join(&base, lo))
        }
    }
}

pub fn least_idempotent_above(a: &Algebra, x: &Element) -> Result<Element> {
    member(a, x)?;
    Ok(a.least_idempotent_above(x))
}

pub fn odot(a: &Algebra, x: &Element, y: &Element) -> Result<Element> {
    member(a, x)?;
    member(a, y)?;
    Ok(a.odot(x, y))
}

/// `x ⊙ y` computed inside `[0,cover]` for a caller-chosen idempotent cover.
pub fn odot_with_cover(a: &Algebra, cover: &Element, x: &Element, y: &Element) -> Result<Element> {
    member(a, cover)?;
    member(a, x)?;
    member(a, y)?;
    if !a.is_idempotent(cover) {
        return Err(EmvError::NotIdempotent(a.label(cover)));
    }
    if !a.leq(&a.join(x, y), cover) {
        return Err(EmvError::Precondition(format!(
            "{} does not cover both arguments",
            a.label(cover)
        )));
    }
    Ok(a.odot_with(cover, x, y))
}

pub fn star_minus(a: &Algebra, x: &Element, y: &Element) -> Result<Element> {
    member(a, x)?;
    member(a, y)?;
    Ok(a.star_minus(x, y))
}

pub fn iterate(a: &Algebra, x: &Element, n: usize, mode: IterMode) -> Result<Element> {
    member(a, x)?;
    match mode {
        IterMode::Sum => {
            let mut acc = a.zero();
            for _ in 0..n {
                let next = a.oplus(&acc, x);
                if next == acc {
                    break;
                }
                acc = next;
            }
            Ok(acc)
        }
        IterMode::Power => {
            if n == 0 {
                return a.top().ok_or_else(|| EmvError::NoTop(a.family()));
            }
            let mut acc = x.clone();
            for _ in 1..n {
                let next = a.odot(&acc, x);
                if next == acc {
                    break;
                }
                acc = next;
            }
            Ok(acc)
        }
    }
}
