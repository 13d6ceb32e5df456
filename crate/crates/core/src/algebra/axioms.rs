//! Exhaustive and sampled EMV axiom checkers.

use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Algebra, Element, FiniteAlgebra};

/// The first failing axiom together with the elements exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.axiom, self.witness.join(", "))
    }
}

impl std::error::Error for AxiomViolation {}

fn fail(a: &FiniteAlgebra, axiom: &str, w: &[usize]) -> AxiomViolation {
    AxiomViolation {
        axiom: axiom.to_string(),
        witness: w.iter().map(|&i| a.label_of(i).to_string()).collect(),
    }
}

macro_rules! ensure {
    ($cond:expr, $a:expr, $name:expr, $($w:expr),+) => {
        if !$cond {
            return Err(fail($a, $name, &[$($w),+]));
        }
    };
}

/// Checks every axiom on the whole carrier.
pub fn check_axioms(a: &FiniteAlgebra) -> Result<(), AxiomViolation> {
    let n = a.size();
    let z = a.zero_index();
    let top = a.top_index();

    // table level: ⊕ monoid and the negation
    for x in 0..n {
        ensure!(a.op(x, z) == x, a, "zero is neutral for ⊕", x);
        ensure!(a.neg_of(a.neg_of(x)) == x, a, "negation is an involution", x);
        ensure!(a.op(x, top) == top, a, "x ⊕ top = top", x);
    }
    for x in 0..n {
        for y in 0..n {
            ensure!(a.op(x, y) == a.op(y, x), a, "⊕ is commutative", x, y);
            let l = a.op(a.neg_of(a.op(a.neg_of(x), y)), y);
            let r = a.op(a.neg_of(a.op(a.neg_of(y), x)), x);
            ensure!(l == r, a, "(x'⊕y)'⊕y = (y'⊕x)'⊕x", x, y);
        }
    }
    ensure!(a.neg_of(z) == top, a, "neg(0) = top", z);
    for x in 0..n {
        for y in 0..n {
            let xy = a.op(x, y);
            for w in 0..n {
                ensure!(
                    a.op(xy, w) == a.op(x, a.op(y, w)),
                    a,
                    "⊕ is associative",
                    x,
                    y,
                    w
                );
            }
        }
    }

    // lattice level
    for x in 0..n {
        ensure!(a.join_of(x, x) == x && a.meet_of(x, x) == x, a, "lattice idempotence", x);
        ensure!(a.meet_of(z, x) == z, a, "0 is the least element", x);
        for y in 0..n {
            ensure!(a.join_of(x, y) == a.join_of(y, x), a, "∨ is commutative", x, y);
            ensure!(a.meet_of(x, y) == a.meet_of(y, x), a, "∧ is commutative", x, y);
            ensure!(a.join_of(x, a.meet_of(x, y)) == x, a, "absorption x∨(x∧y)=x", x, y);
            ensure!(a.meet_of(x, a.join_of(x, y)) == x, a, "absorption x∧(x∨y)=x", x, y);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for w in 0..n {
                ensure!(
                    a.join_of(a.join_of(x, y), w) == a.join_of(x, a.join_of(y, w)),
                    a,
                    "∨ is associative",
                    x,
                    y,
                    w
                );
                ensure!(
                    a.meet_of(a.meet_of(x, y), w) == a.meet_of(x, a.meet_of(y, w)),
                    a,
                    "∧ is associative",
                    x,
                    y,
                    w
                );
                ensure!(
                    a.meet_of(x, a.join_of(y, w)) == a.join_of(a.meet_of(x, y), a.meet_of(x, w)),
                    a,
                    "distributivity",
                    x,
                    y,
                    w
                );
                if a.le(x, y) {
                    ensure!(
                        a.le(a.op(x, w), a.op(y, w)),
                        a,
                        "⊕ is monotone",
                        x,
                        y,
                        w
                    );
                }
            }
        }
    }

    // every interval [0,b] under an idempotent b
    for &b in a.idempotent_indices() {
        let below = a.down_set(b);
        for &x in &below {
            let lx = a.lambda_of(b, x);
            ensure!(a.lambda_scan(b, x) == Some(lx), a, "λ_b is the least solution", b, x);
            ensure!(a.lambda_of(b, lx) == x, a, "λ_b is an involution on [0,b]", b, x);
            ensure!(a.op(x, b) == b, a, "x ⊕ b = b on [0,b]", b, x);
            for &y in &below {
                let l = a.op(a.lambda_of(b, a.op(a.lambda_of(b, x), y)), y);
                let r = a.op(a.lambda_of(b, a.op(a.lambda_of(b, y), x)), x);
                ensure!(l == r, a, "third MV axiom on [0,b]", b, x, y);
            }
        }
    }

    for x in 0..n {
        let e = a.lia_of(x);
        ensure!(a.is_idem(e) && a.le(x, e), a, "enough idempotents", x);
    }
    Ok(())
}

/// Sampled check for algebras without an enumerable carrier.
pub fn check_axioms_sampled(a: &Algebra, samples: usize, seed: u64) -> Result<(), AxiomViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bad = |axiom: &str, w: &[&Element]| AxiomViolation {
        axiom: axiom.to_string(),
        witness: w.iter().map(|x| a.label(x)).collect(),
    };
    let zero = a.zero();
    for _ in 0..samples {
        let x = a.sample(&mut rng as &mut dyn RngCore);
        let y = a.sample(&mut rng);
        let z = a.sample(&mut rng);
        let xy = a.oplus(&x, &y);
        if xy != a.oplus(&y, &x) {
            return Err(bad("⊕ is commutative", &[&x, &y]));
        }
        if a.oplus(&xy, &z) != a.oplus(&x, &a.oplus(&y, &z)) {
            return Err(bad("⊕ is associative", &[&x, &y, &z]));
        }
        if a.oplus(&x, &zero) != x {
            return Err(bad("zero is neutral for ⊕", &[&x]));
        }
        if a.meet(&zero, &x) != zero {
            return Err(bad("0 is the least element", &[&x]));
        }
        if a.join(&x, &y) != a.join(&y, &x) || a.meet(&x, &y) != a.meet(&y, &x) {
            return Err(bad("lattice commutativity", &[&x, &y]));
        }
        if a.join(&a.join(&x, &y), &z) != a.join(&x, &a.join(&y, &z))
            || a.meet(&a.meet(&x, &y), &z) != a.meet(&x, &a.meet(&y, &z))
        {
            return Err(bad("lattice associativity", &[&x, &y, &z]));
        }
        if a.join(&x, &a.meet(&x, &y)) != x || a.meet(&x, &a.join(&x, &y)) != x {
            return Err(bad("absorption", &[&x, &y]));
        }
        if a.meet(&x, &a.join(&y, &z)) != a.join(&a.meet(&x, &y), &a.meet(&x, &z)) {
            return Err(bad("distributivity", &[&x, &y, &z]));
        }
        let xy_meet = a.meet(&x, &y);
        if !a.leq(&a.oplus(&xy_meet, &z), &a.oplus(&y, &z)) {
            return Err(bad("⊕ is monotone", &[&xy_meet, &y, &z]));
        }
        let b = a.least_idempotent_above(&a.join(&a.join(&x, &y), &z));
        if !a.is_idempotent(&b) || !a.leq(&x, &b) {
            return Err(bad("enough idempotents", &[&x]));
        }
        let lx = a.lambda(&b, &x);
        if a.lambda(&b, &lx) != x {
            return Err(bad("λ_b is an involution on [0,b]", &[&b, &x]));
        }
        if a.oplus(&x, &lx) != b || a.odot_with(&b, &x, &lx) != zero {
            return Err(bad("λ_b is the complement in [0,b]", &[&b, &x]));
        }
        if a.oplus(&x, &b) != b {
            return Err(bad("x ⊕ b = b on [0,b]", &[&b, &x]));
        }
        let l = a.oplus(&a.lambda(&b, &a.oplus(&lx, &y)), &y);
        let r = a.oplus(&a.lambda(&b, &a.oplus(&a.lambda(&b, &y), &x)), &x);
        if l != r {
            return Err(bad("third MV axiom on [0,b]", &[&b, &x, &y]));
        }
    }
    Ok(())
}
