//! The abstract EMV-algebra interface and its closed family of carriers.

pub mod axioms;
pub mod element;
pub mod finite;
pub mod ops;

use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::constructors::chang::Chang;
use crate::constructors::direct_sum::DirectSum;
use crate::represent::Completion;
pub use element::{ChangValue, Element, LexPair, SupportMap, Tagged};
pub use finite::FiniteAlgebra;

/// Primitive operations every supported carrier provides.
///
/// The methods assume their arguments belong to the algebra and, for
/// [`EmvStructure::lambda`], that `b` is idempotent with `x <= b`. The
/// checked entry points live in [`ops`].
pub trait EmvStructure: Send + Sync {
    fn family(&self) -> String;
    fn contains(&self, x: &Element) -> bool;
    fn zero(&self) -> Element;
    fn top(&self) -> Option<Element>;
    fn oplus(&self, x: &Element, y: &Element) -> Element;
    fn join(&self, x: &Element, y: &Element) -> Element;
    fn meet(&self, x: &Element, y: &Element) -> Element;
    /// Least `z` in `[0,b]` with `x ⊕ z = b`.
    fn lambda(&self, b: &Element, x: &Element) -> Element;
    fn least_idempotent_above(&self, x: &Element) -> Element;
    /// The whole carrier, in canonical order, when it is finite.
    fn elements(&self) -> Option<Vec<Element>>;
    /// All idempotents (finite) or a cofinal sample of them (infinite).
    fn idempotent_family(&self) -> Vec<Element>;
    fn label(&self, x: &Element) -> String;
    /// A random element drawn from the family's sampler.
    fn sample(&self, rng: &mut dyn RngCore) -> Element;

    fn is_idempotent(&self, x: &Element) -> bool {
        self.oplus(x, x) == *x
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        self.meet(x, y) == *x
    }
}

pub(crate) enum AlgebraKind {
    Finite(FiniteAlgebra),
    DirectSum(DirectSum),
    Chang(Chang),
    Completion(Completion),
}

/// A shared handle to an immutable EMV-algebra.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraKind>);

impl Algebra {
    pub(crate) fn new(kind: AlgebraKind) -> Self {
        Algebra(Arc::new(kind))
    }

    pub fn from_finite(a: FiniteAlgebra) -> Self {
        Algebra::new(AlgebraKind::Finite(a))
    }

    pub(crate) fn kind(&self) -> &AlgebraKind {
        &self.0
    }

    pub fn structure(&self) -> &dyn EmvStructure {
        match &*self.0 {
            AlgebraKind::Finite(a) => a,
            AlgebraKind::DirectSum(a) => a,
            AlgebraKind::Chang(a) => a,
            AlgebraKind::Completion(a) => a,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteAlgebra> {
        match &*self.0 {
            AlgebraKind::Finite(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_direct_sum(&self) -> Option<&DirectSum> {
        match &*self.0 {
            AlgebraKind::DirectSum(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_completion(&self) -> Option<&Completion> {
        match &*self.0 {
            AlgebraKind::Completion(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_chang(&self) -> bool {
        matches!(&*self.0, AlgebraKind::Chang(_))
    }

    /// The finite table view, or a capability error naming `op`.
    pub fn require_finite(&self, op: &str) -> crate::Result<&FiniteAlgebra> {
        self.as_finite().ok_or_else(|| crate::EmvError::Capability {
            family: self.family(),
            reason: format!("{op} needs a finite table algebra"),
        })
    }

    /// Same handle identity.
    pub fn ptr_eq(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn family(&self) -> String {
        self.structure().family()
    }
    pub fn contains(&self, x: &Element) -> bool {
        self.structure().contains(x)
    }
    pub fn zero(&self) -> Element {
        self.structure().zero()
    }
    pub fn top(&self) -> Option<Element> {
        self.structure().top()
    }
    pub fn has_top(&self) -> bool {
        self.structure().top().is_some()
    }
    pub fn oplus(&self, x: &Element, y: &Element) -> Element {
        self.structure().oplus(x, y)
    }
    pub fn join(&self, x: &Element, y: &Element) -> Element {
        self.structure().join(x, y)
    }
    pub fn meet(&self, x: &Element, y: &Element) -> Element {
        self.structure().meet(x, y)
    }
    pub fn leq(&self, x: &Element, y: &Element) -> bool {
        self.structure().leq(x, y)
    }
    pub fn is_idempotent(&self, x: &Element) -> bool {
        self.structure().is_idempotent(x)
    }
    pub fn least_idempotent_above(&self, x: &Element) -> Element {
        self.structure().least_idempotent_above(x)
    }
    /// Unchecked `λ_b(x)`.
    pub fn lambda(&self, b: &Element, x: &Element) -> Element {
        self.structure().lambda(b, x)
    }
    /// `λ_a(λ_a(x) ⊕ λ_a(y))` for an explicit idempotent cover `a >= x ∨ y`.
    pub fn odot_with(&self, a: &Element, x: &Element, y: &Element) -> Element {
        let s = self.structure();
        s.lambda(a, &s.oplus(&s.lambda(a, x), &s.lambda(a, y)))
    }
    /// `x ⊙ y` with the canonical cover.
    pub fn odot(&self, x: &Element, y: &Element) -> Element {
        let a = self.least_idempotent_above(&self.join(x, y));
        self.odot_with(&a, x, y)
    }
    /// `x ∗ y = x ⊙ λ_a(y)` with the canonical cover.
    pub fn star_minus(&self, x: &Element, y: &Element) -> Element {
        let a = self.least_idempotent_above(&self.join(x, y));
        let ly = self.lambda(&a, y);
        self.odot_with(&a, x, &ly)
    }
    pub fn elements(&self) -> Option<Vec<Element>> {
        self.structure().elements()
    }
    pub fn idempotent_family(&self) -> Vec<Element> {
        self.structure().idempotent_family()
    }
    pub fn label(&self, x: &Element) -> String {
        self.structure().label(x)
    }
    pub fn sample(&self, rng: &mut dyn RngCore) -> Element {
        self.structure().sample(rng)
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.family())
    }
}
