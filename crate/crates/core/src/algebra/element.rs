//! Element encodings shared by every algebra family.
//!
//! Every family keeps its elements in a canonical form, so structural
//! equality of two [`Element`]s coincides with equality in the algebra.

use std::fmt;

/// An element of some algebra. The payload is opaque outside the family
/// that produced it; use [`crate::Algebra::label`] for display.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Position in the carrier of a finite table algebra.
    Index(usize),
    /// Finitely supported function into component algebras.
    Support(SupportMap),
    /// Element of the Chang algebra.
    Lex(LexPair),
    /// Element of an MV-completion.
    Tagged(Tagged),
}

impl Element {
    pub fn index(&self) -> Option<usize> {
        match self {
            Element::Index(i) => Some(*i),
            _ => None,
        }
    }
}

/// Finite association `coordinate -> component element index`.
///
/// Keys are strictly increasing and no binding points at the component's
/// zero; both properties are enforced by [`SupportMap::from_pairs`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportMap(Vec<(usize, usize)>);

impl SupportMap {
    pub fn empty() -> Self {
        SupportMap(Vec::new())
    }

    /// Builds a canonical map. `is_zero(coord, value)` decides which
    /// bindings are dropped. Later duplicates of a coordinate win.
    pub fn from_pairs<I, Z>(pairs: I, is_zero: Z) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
        Z: Fn(usize, usize) -> bool,
    {
        let mut v: Vec<(usize, usize)> = pairs.into_iter().collect();
        v.sort_by_key(|&(i, _)| i);
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = x,
                _ => out.push((i, x)),
            }
        }
        out.retain(|&(i, x)| !is_zero(i, x));
        SupportMap(out)
    }

    /// Caller guarantees canonical form.
    pub(crate) fn from_canonical(v: Vec<(usize, usize)>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0].0 < w[1].0));
        SupportMap(v)
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn get(&self, coord: usize) -> Option<usize> {
        self.0
            .binary_search_by_key(&coord, |&(i, _)| i)
            .ok()
            .map(|p| self.0[p].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&(i, _)| i)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn max_coordinate(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }
}

/// Chang algebra element as a point of `Z lex Z` below the unit `(1, 0)`.
///
/// `Fin(n)` is `(0, n)` and `Cofin(n)` is `(1, -n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexPair {
    unit: i64,
    infinitesimal: i64,
}

/// User-facing view of a [`LexPair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChangValue {
    Fin(u64),
    Cofin(u64),
}

impl LexPair {
    pub fn fin(n: u64) -> Self {
        LexPair {
            unit: 0,
            infinitesimal: n as i64,
        }
    }

    pub fn cofin(n: u64) -> Self {
        LexPair {
            unit: 1,
            infinitesimal: -(n as i64),
        }
    }

    pub fn coordinates(&self) -> (i64, i64) {
        (self.unit, self.infinitesimal)
    }

    pub fn value(&self) -> ChangValue {
        if self.unit == 0 {
            ChangValue::Fin(self.infinitesimal as u64)
        } else {
            ChangValue::Cofin((-self.infinitesimal) as u64)
        }
    }
}

impl From<ChangValue> for LexPair {
    fn from(v: ChangValue) -> Self {
        match v {
            ChangValue::Fin(n) => LexPair::fin(n),
            ChangValue::Cofin(n) => LexPair::cofin(n),
        }
    }
}

impl fmt::Display for ChangValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChangValue::Fin(n) => write!(f, "fin({n})"),
            ChangValue::Cofin(n) => write!(f, "cofin({n})"),
        }
    }
}

/// Element of `M ∪ M*`: either an element of the base or the complement of one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tagged {
    Plain(Box<Element>),
    Star(Box<Element>),
}

impl Tagged {
    pub fn inner(&self) -> &Element {
        match self {
            Tagged::Plain(x) | Tagged::Star(x) => x,
        }
    }

    pub fn is_star(&self) -> bool {
        matches!(self, Tagged::Star(_))
    }
}

pub fn plain(x: Element) -> Element {
    Element::Tagged(Tagged::Plain(Box::new(x)))
}

pub fn star(x: Element) -> Element {
    Element::Tagged(Tagged::Star(Box::new(x)))
}
