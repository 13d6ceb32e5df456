//! The MV-completion `N₀(M) = M ∪ M*`, minimal clans and the split check.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::element::{plain, star};
use crate::algebra::element::Tagged;
use crate::algebra::{Algebra, AlgebraKind, Element, EmvStructure};
use crate::constructors::clan::{check_clan, clan_algebra, format_set, pointwise_oplus, Clan, ClanSpec, ClanViolation, FuzzySet};
use crate::ideals::{classify_ideal, enough_idempotents, IdealRepr, IdealView, Described};
use crate::{EmvError, Rational, Result};

/// `M ∪ M*` over a proper direct sum `M`, with top `Star(0)`.
#[derive(Clone, Debug)]
pub struct Completion {
    base: Algebra,
}

fn split(x: &Element) -> (&Element, bool) {
    match x {
        Element::Tagged(t) => (t.inner(), t.is_star()),
        other => panic!("completion received foreign element {other:?}"),
    }
}

impl Completion {
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    /// `x*`.
    pub fn complement(&self, x: &Element) -> Element {
        match x {
            Element::Tagged(Tagged::Plain(i)) => star((**i).clone()),
            Element::Tagged(Tagged::Star(i)) => plain((**i).clone()),
            other => panic!("completion received foreign element {other:?}"),
        }
    }

    fn mv_odot(&self, x: &Element, y: &Element) -> Element {
        self.complement(&self.oplus(&self.complement(x), &self.complement(y)))
    }

    /// Mixed-tag sum computed inside `[0,b]` for a chosen base idempotent
    /// `b ≥ x₀ ∨ y₀`: `x₀ ⊕ y₀* = (y₀ ⊙ λ_b(x₀ ∧ y₀))*`.
    pub fn mixed_sum_with_cover(&self, b: &Element, x0: &Element, y0: &Element) -> Element {
        let m = &self.base;
        let l = m.lambda(b, &m.meet(x0, y0));
        star(m.odot_with(b, y0, &l))
    }

    /// Meet of `x₀` and `y₀*` by the explicit rule `x₀ ⊙ λ_a(x₀ ⊙ y₀)`.
    pub fn mixed_meet_explicit(&self, x0: &Element, y0: &Element) -> Element {
        let m = &self.base;
        let a = m.least_idempotent_above(&m.join(x0, y0));
        let p = m.odot_with(&a, x0, y0);
        plain(m.odot_with(&a, x0, &m.lambda(&a, &p)))
    }

    fn base_greatest_idempotent_below(&self, x: &Element) -> Element {
        self.base
            .as_direct_sum()
            .expect("completion base is a direct sum")
            .greatest_idempotent_below(x)
    }
}

impl EmvStructure for Completion {
    fn family(&self) -> String {
        format!("completion({})", self.base.family())
    }
    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Tagged(t) if self.base.contains(t.inner()))
    }
    fn zero(&self) -> Element {
        plain(self.base.zero())
    }
    fn top(&self) -> Option<Element> {
        Some(star(self.base.zero()))
    }
    fn oplus(&self, x: &Element, y: &Element) -> Element {
        let m = &self.base;
        match (split(x), split(y)) {
            ((x0, false), (y0, false)) => plain(m.oplus(x0, y0)),
            ((x0, true), (y0, true)) => star(m.odot(x0, y0)),
            ((x0, false), (y0, true)) | ((y0, true), (x0, false)) => {
                let b = m.least_idempotent_above(&m.join(x0, y0));
                self.mixed_sum_with_cover(&b, x0, y0)
            }
        }
    }
    fn join(&self, x: &Element, y: &Element) -> Element {
        // (x ⊖ y) ⊕ y with x ⊖ y = (x* ⊕ y)*
        let d = self.complement(&self.oplus(&self.complement(x), y));
        self.oplus(&d, y)
    }
    fn meet(&self, x: &Element, y: &Element) -> Element {
        // x ⊙ (x* ⊕ y)
        let w = self.oplus(&self.complement(x), y);
        self.mv_odot(x, &w)
    }
    fn lambda(&self, b: &Element, x: &Element) -> Element {
        self.meet(b, &self.complement(x))
    }
    fn least_idempotent_above(&self, x: &Element) -> Element {
        match split(x) {
            (x0, false) => plain(self.base.least_idempotent_above(x0)),
            (x0, true) => star(self.base_greatest_idempotent_below(x0)),
        }
    }
    fn elements(&self) -> Option<Vec<Element>> {
        None
    }
    fn idempotent_family(&self) -> Vec<Element> {
        let mut v: Vec<Element> = self.base.idempotent_family().into_iter().map(plain).collect();
        v.extend(self.base.idempotent_family().into_iter().map(star));
        v
    }
    fn label(&self, x: &Element) -> String {
        match split(x) {
            (x0, false) => self.base.label(x0),
            (x0, true) => format!("{}*", self.base.label(x0)),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Element {
        let x = self.base.sample(rng);
        if rng.next_u32() % 2 == 0 {
            plain(x)
        } else {
            star(x)
        }
    }
}

/// `N₀(M)` for a proper EMV-algebra `M` from the direct-sum family.
pub fn mv_completion(m: &Algebra) -> Result<Algebra> {
    if m.has_top() {
        return Err(EmvError::AlreadyMv(m.family()));
    }
    match m.kind() {
        AlgebraKind::DirectSum(_) => Ok(Algebra::new(AlgebraKind::Completion(Completion { base: m.clone() }))),
        _ => Err(EmvError::UnsupportedFamily {
            reason: format!("{} is not a proper direct sum", m.family()),
            deficiency: None,
        }),
    }
}

/// Completion of an ideal viewed as an EMV-algebra in its own right.
///
/// Rejects ideals lacking enough idempotents and reports a member with no
/// idempotent of the ideal above it.
pub fn completion_of_ideal(i: &IdealView) -> Result<Algebra> {
    let a = i.algebra();
    if let Err(w) = enough_idempotents(i) {
        return Err(EmvError::UnsupportedFamily {
            reason: format!("the ideal {} of {} lacks enough idempotents", i.tag(), a.family()),
            deficiency: Some(a.label(&w)),
        });
    }
    match i.repr() {
        IdealRepr::Described(Described::Whole) => mv_completion(a),
        _ => Err(EmvError::UnsupportedFamily {
            reason: format!("completion of `{}` is outside the constructor families", i.tag()),
            deficiency: None,
        }),
    }
}

/// Outcome of [`verify_maximal_embedding`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sampled check that `N` is an MV-algebra in which the plain image is a
/// maximal ideal.
pub fn verify_maximal_embedding(n: &Algebra, samples: usize, seed: u64) -> Result<EmbeddingReport> {
    let c = n.as_completion().ok_or_else(|| EmvError::Capability {
        family: n.family(),
        reason: "embedding check needs an MV-completion".into(),
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = EmbeddingReport {
        samples,
        failures: Vec::new(),
    };
    let top = n.top().expect("completion has a top");
    let zero = n.zero();
    let is_plain = |x: &Element| matches!(x, Element::Tagged(t) if !t.is_star());
    let note = |rep: &mut EmbeddingReport, what: &str, w: &[&Element]| {
        if rep.failures.len() < 16 {
            let ls: Vec<String> = w.iter().map(|x| n.label(x)).collect();
            rep.failures.push(format!("{what}: {}", ls.join(", ")));
        }
    };
    for _ in 0..samples {
        let x = n.sample(&mut rng as &mut dyn RngCore);
        let y = n.sample(&mut rng);
        let z = n.sample(&mut rng);
        let xy = n.oplus(&x, &y);
        if xy != n.oplus(&y, &x) {
            note(&mut rep, "⊕ not commutative", &[&x, &y]);
        }
        if n.oplus(&xy, &z) != n.oplus(&x, &n.oplus(&y, &z)) {
            note(&mut rep, "⊕ not associative", &[&x, &y, &z]);
        }
        if n.oplus(&x, &zero) != x || n.oplus(&x, &top) != top {
            note(&mut rep, "0/1 laws", &[&x]);
        }
        if c.complement(&c.complement(&x)) != x {
            note(&mut rep, "complement not an involution", &[&x]);
        }
        let l = n.oplus(&c.complement(&n.oplus(&c.complement(&x), &y)), &y);
        let r = n.oplus(&c.complement(&n.oplus(&c.complement(&y), &x)), &x);
        if l != r {
            note(&mut rep, "third MV axiom", &[&x, &y]);
        }
        if n.meet(&x, &n.join(&y, &z)) != n.join(&n.meet(&x, &y), &n.meet(&x, &z)) {
            note(&mut rep, "distributivity", &[&x, &y, &z]);
        }
        if is_plain(&x) {
            let below = n.meet(&x, &y);
            if !is_plain(&below) {
                note(&mut rep, "plain image not down-closed", &[&x, &y]);
            }
            if is_plain(&y) && !is_plain(&xy) {
                note(&mut rep, "plain image not closed under ⊕", &[&x, &y]);
            }
            if !is_plain(&y) && n.leq(&y, &x) {
                note(&mut rep, "star element below a plain one", &[&y, &x]);
            }
        } else if !is_plain(&c.complement(&x)) {
            note(&mut rep, "complement of a non-plain element is not plain", &[&x]);
        }
    }
    if let Err(v) = crate::algebra::axioms::check_axioms_sampled(n, samples, seed ^ 0x9e37_79b9) {
        rep.failures.push(v.to_string());
    }
    Ok(rep)
}

/// Result of [`minimal_clan`].
#[derive(Clone, Debug)]
pub struct MinimalClan {
    pub spec: ClanSpec,
    /// `true` when the input already contained `1_Ω` and was returned as is.
    pub already_clan: bool,
    pub clan: Clan,
}

/// `C₀(T) = T ∪ {1 - f : f ∈ T}` for a system `T` closed under the clan
/// conditions (i)-(iii) and not containing `1_Ω`. Verifies that the result
/// is a clan in which `T` is a maximal ideal.
pub fn minimal_clan(t: &ClanSpec) -> Result<MinimalClan> {
    let vals = t.values()?;
    check_clan(&t.omega, &vals, false).map_err(EmvError::Clan)?;
    let one: FuzzySet = vec![Rational::one(); t.omega.len()];
    if vals.contains(&one) {
        let clan = clan_algebra(&t.omega, vals.clone())?;
        return Ok(MinimalClan {
            spec: ClanSpec::from_values(t.omega.clone(), &vals),
            already_clan: true,
            clan,
        });
    }
    let base: BTreeSet<FuzzySet> = vals.iter().cloned().collect();
    let mut all = base.clone();
    for f in &vals {
        all.insert(f.iter().map(|v| Rational::one() - v).collect());
    }
    let viol = |c: &str, w: String| EmvError::Clan(ClanViolation {
        condition: c.into(),
        witness: w,
    });
    if !all.contains(&one) {
        return Err(viol("clan", "1_Ω missing".into()));
    }
    for f in &all {
        let c: FuzzySet = f.iter().map(|v| Rational::one() - v).collect();
        if !all.contains(&c) {
            return Err(viol("clan complement", format_set(f)));
        }
        for g in &all {
            let s = pointwise_oplus(f, g);
            if !all.contains(&s) {
                return Err(viol("clan ⊕", format!("{} ⊕ {}", format_set(f), format_set(g))));
            }
            if base.contains(f) && base.contains(g) && !base.contains(&s) {
                return Err(viol("ideal ⊕", format!("{} ⊕ {}", format_set(f), format_set(g))));
            }
        }
    }
    for f in &all {
        let in_t = base.contains(f);
        if !in_t {
            let c: FuzzySet = f.iter().map(|v| Rational::one() - v).collect();
            if !base.contains(&c) {
                return Err(viol("maximality", format_set(f)));
            }
            if base.iter().any(|g| g.iter().zip(f).all(|(a, b)| b <= a)) {
                return Err(viol("ideal down-closure", format_set(f)));
            }
        }
    }
    let omega_ok = all.iter().all(|f| f.iter().all(|v| *v >= Rational::zero() && *v <= Rational::one()));
    debug_assert!(omega_ok);
    let fs: Vec<FuzzySet> = all.into_iter().collect();
    let clan = clan_algebra(&t.omega, fs.clone())?;
    Ok(MinimalClan {
        spec: ClanSpec::from_values(t.omega.clone(), &fs),
        already_clan: false,
        clan,
    })
}

/// Whether `N = I₀ ∪ I₀'` for a maximal ideal `I₀` of a finite MV-algebra.
pub fn check_split(n: &Algebra, i0: &IdealView) -> Result<bool> {
    let f = n.require_finite("split check")?;
    if !classify_ideal(i0)?.maximal {
        return Err(EmvError::NotMaximal(i0.tag()));
    }
    let b = i0.require_bits()?;
    Ok((0..f.size()).all(|x| b.contains(x) || b.contains(f.neg_of(x))))
}
