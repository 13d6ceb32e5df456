//! Ideals, congruences, quotients, radicals and the ideal lattice.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{Algebra, AlgebraKind, Element, FiniteAlgebra};
use crate::constructors::chang::{cofin, fin};
use crate::constructors::IndexDomain;
use crate::{EmvError, Result};

/// Default carrier bound for ideal enumeration.
pub const DEFAULT_IDEAL_BOUND: usize = 64;

/// Ideals of infinite algebras, given by a decidable description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Described {
    Zero,
    Whole,
    /// `↓e` for a fixed element `e` whose multiples are stable.
    Principal(Element),
    /// `{f : f(index) ∈ K}` for an ideal `K` of the component at `index`.
    CoordinateKernel { index: usize, component_ideal: FixedBitSet },
    /// `{Fin(n) : n ≥ 0}` in the Chang algebra.
    ChangInfinitesimals,
    /// The copy of the base algebra inside its MV-completion.
    PlainImage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealRepr {
    Explicit(FixedBitSet),
    Described(Described),
}

/// An ideal of a specific algebra.
#[derive(Clone)]
pub struct IdealView {
    algebra: Algebra,
    repr: IdealRepr,
}

impl PartialEq for IdealView {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.ptr_eq(&other.algebra) && self.repr == other.repr
    }
}

impl Eq for IdealView {}

impl fmt::Debug for IdealView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealView({})", self.tag())
    }
}

impl IdealView {
    pub(crate) fn explicit(algebra: &Algebra, bits: FixedBitSet) -> Self {
        IdealView {
            algebra: algebra.clone(),
            repr: IdealRepr::Explicit(bits),
        }
    }

    pub(crate) fn described(algebra: &Algebra, d: Described) -> Self {
        IdealView {
            algebra: algebra.clone(),
            repr: IdealRepr::Described(d),
        }
    }

    /// Explicit view over a finite algebra from element indices. The set is not checked.
    pub fn from_indices(algebra: &Algebra, members: &[usize]) -> Result<Self> {
        let f = algebra.require_finite("explicit ideal")?;
        let mut bits = FixedBitSet::with_capacity(f.size());
        for &m in members {
            if m >= f.size() {
                return Err(EmvError::DomainMismatch(m.to_string(), f.family_name()));
            }
            bits.insert(m);
        }
        Ok(Self::explicit(algebra, bits))
    }

    /// Explicit view from element labels.
    pub fn from_labels(algebra: &Algebra, labels: &[&str]) -> Result<Self> {
        let f = algebra.require_finite("explicit ideal")?;
        let ix = labels
            .iter()
            .map(|l| f.index_of_label(l).ok_or_else(|| EmvError::DomainMismatch(l.to_string(), f.family_name())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(algebra, &ix)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn repr(&self) -> &IdealRepr {
        &self.repr
    }

    pub fn bits(&self) -> Option<&FixedBitSet> {
        match &self.repr {
            IdealRepr::Explicit(b) => Some(b),
            IdealRepr::Described(_) => None,
        }
    }

    pub fn require_bits(&self) -> Result<&FixedBitSet> {
        self.bits().ok_or_else(|| EmvError::Capability {
            family: self.algebra.family(),
            reason: format!("the ideal `{}` has no explicit element set", self.tag()),
        })
    }

    pub fn is_explicit(&self) -> bool {
        self.bits().is_some()
    }

    /// Member indices in canonical order (explicit views only).
    pub fn members(&self) -> Option<Vec<usize>> {
        self.bits().map(|b| b.ones().collect())
    }

    pub fn len(&self) -> Option<usize> {
        self.bits().map(|b| b.count_ones(..))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn member_labels(&self) -> Option<Vec<String>> {
        let f = self.algebra.as_finite()?;
        self.members()
            .map(|m| m.into_iter().map(|i| f.label_of(i).to_string()).collect())
    }

    pub fn contains(&self, x: &Element) -> bool {
        let a = &self.algebra;
        match &self.repr {
            IdealRepr::Explicit(b) => matches!(x, Element::Index(i) if b.contains(*i)),
            IdealRepr::Described(d) => match d {
                Described::Zero => *x == a.zero(),
                Described::Whole => a.contains(x),
                Described::Principal(e) => a.leq(x, e),
                Described::CoordinateKernel { index, component_ideal } => {
                    let ds = a.as_direct_sum().expect("kernel of a direct sum");
                    let v = ds
                        .support_map(x)
                        .get(*index)
                        .unwrap_or_else(|| ds.component(*index).zero_index());
                    component_ideal.contains(v)
                }
                Described::ChangInfinitesimals => matches!(x, Element::Lex(p) if p.coordinates().0 == 0),
                Described::PlainImage => matches!(x, Element::Tagged(t) if !t.is_star()),
            },
        }
    }

    /// Elements generating the ideal.
    pub fn generators(&self) -> Vec<Element> {
        let a = &self.algebra;
        match &self.repr {
            IdealRepr::Explicit(b) => {
                let f = a.as_finite().expect("explicit ideals live on finite algebras");
                // maximal members generate a finite ideal
                b.ones()
                    .filter(|&x| !b.ones().any(|y| y != x && f.le(x, y)))
                    .map(Element::Index)
                    .collect()
            }
            IdealRepr::Described(d) => match d {
                Described::Zero => vec![a.zero()],
                Described::Whole => a.idempotent_family(),
                Described::Principal(e) => vec![e.clone()],
                Described::CoordinateKernel { index, component_ideal } => {
                    let ds = a.as_direct_sum().expect("direct sum");
                    let c = ds.component(*index);
                    let mut g: Vec<Element> = component_ideal
                        .ones()
                        .filter(|&v| v != c.zero_index())
                        .map(|v| ds.element(&[(*index, v)]).expect("in range"))
                        .collect();
                    for j in 0..=ds.sample_width() {
                        if j != *index && ds.in_domain(j) {
                            g.push(ds.element(&[(j, ds.component(j).top_index())]).expect("in range"));
                        }
                    }
                    g
                }
                Described::ChangInfinitesimals => vec![fin(1)],
                Described::PlainImage => {
                    let c = a.as_completion().expect("completion");
                    c.base().idempotent_family().into_iter().map(crate::algebra::element::plain).collect()
                }
            },
        }
    }

    /// Short human-readable name.
    pub fn tag(&self) -> String {
        match &self.repr {
            IdealRepr::Explicit(_) => {
                let labels = self.member_labels().unwrap_or_default();
                format!("{{{}}}", labels.join(", "))
            }
            IdealRepr::Described(d) => match d {
                Described::Zero => "{0}".into(),
                Described::Whole => "whole algebra".into(),
                Described::Principal(e) => format!("↓{}", self.algebra.label(e)),
                Described::CoordinateKernel { index, component_ideal } => {
                    let ds = self.algebra.as_direct_sum().expect("direct sum");
                    let c = ds.component(*index);
                    let ls: Vec<&str> = component_ideal.ones().map(|v| c.label_of(v)).collect();
                    format!("{{f : f({index}) ∈ {{{}}}}}", ls.join(","))
                }
                Described::ChangInfinitesimals => "{fin(n) : n ≥ 0}".into(),
                Described::PlainImage => "plain image of the base".into(),
            },
        }
    }
}

trait FamilyName {
    fn family_name(&self) -> String;
}

impl FamilyName for FiniteAlgebra {
    fn family_name(&self) -> String {
        use crate::algebra::EmvStructure;
        self.family()
    }
}

// ---------------------------------------------------------------------------
// finite helpers

pub(crate) fn down_close(f: &FiniteAlgebra, s: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(f.size());
    for y in 0..f.size() {
        if s.ones().any(|x| f.le(y, x)) {
            out.insert(y);
        }
    }
    out
}

pub(crate) fn close_ideal(f: &FiniteAlgebra, start: &FixedBitSet) -> FixedBitSet {
    let mut s = start.clone();
    s.grow(f.size());
    s.insert(f.zero_index());
    loop {
        let mut next = down_close(f, &s);
        let cur: Vec<usize> = next.ones().collect();
        for &x in &cur {
            for &y in &cur {
                next.insert(f.op(x, y));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

fn is_ideal_bits(f: &FiniteAlgebra, s: &FixedBitSet) -> bool {
    if s.count_ones(..) == 0 {
        return false;
    }
    let members: Vec<usize> = s.ones().collect();
    for &x in &members {
        for y in 0..f.size() {
            if f.le(y, x) && !s.contains(y) {
                return false;
            }
        }
        for &y in &members {
            if !s.contains(f.op(x, y)) {
                return false;
            }
        }
    }
    true
}

fn full(f: &FiniteAlgebra) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(f.size());
    b.insert_range(..);
    b
}

fn singleton(f: &FiniteAlgebra, x: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(f.size());
    b.insert(x);
    b
}

fn indices(f: &FiniteAlgebra, xs: &[Element]) -> Result<Vec<usize>> {
    xs.iter()
        .map(|x| match x {
            Element::Index(i) if *i < f.size() => Ok(*i),
            other => Err(EmvError::DomainMismatch(format!("{other:?}"), f.family_name())),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// predicates and generation

/// Nonempty, down-closed and closed under ⊕.
pub fn is_ideal(a: &Algebra, s: &[Element]) -> Result<bool> {
    let f = a.require_finite("is_ideal")?;
    let ix = indices(f, s)?;
    let mut b = FixedBitSet::with_capacity(f.size());
    ix.into_iter().for_each(|i| b.insert(i));
    Ok(is_ideal_bits(f, &b))
}

/// Least ideal containing `base ∪ extras`.
pub fn generated_ideal(a: &Algebra, base: Option<&IdealView>, extras: &[Element]) -> Result<IdealView> {
    if let Some(f) = a.as_finite() {
        let mut start = match base {
            Some(i) => i.require_bits()?.clone(),
            None => FixedBitSet::with_capacity(f.size()),
        };
        for i in indices(f, extras)? {
            start.insert(i);
        }
        return Ok(IdealView::explicit(a, close_ideal(f, &start)));
    }
    for x in extras {
        crate::algebra::ops::member(a, x)?;
    }
    match a.kind() {
        AlgebraKind::Chang(_) => {
            let base_d = match base.map(|b| &b.repr) {
                None | Some(IdealRepr::Described(Described::Zero)) => 0,
                Some(IdealRepr::Described(Described::ChangInfinitesimals)) => 1,
                Some(IdealRepr::Described(Described::Whole)) => 2,
                Some(IdealRepr::Described(Described::Principal(e))) => {
                    if *e == fin(0) {
                        0
                    } else if a.leq(e, &cofin(1)) {
                        1
                    } else {
                        2
                    }
                }
                _ => return Err(unsupported_base(a)),
            };
            let mut level = base_d;
            for x in extras {
                let l = if *x == fin(0) {
                    0
                } else if matches!(x, Element::Lex(p) if p.coordinates().0 == 0) {
                    1
                } else {
                    2
                };
                level = level.max(l);
            }
            Ok(IdealView::described(
                a,
                [Described::Zero, Described::ChangInfinitesimals, Described::Whole][level].clone(),
            ))
        }
        AlgebraKind::DirectSum(ds) => {
            let mut acc = match base.map(|b| &b.repr) {
                None | Some(IdealRepr::Described(Described::Zero)) => a.zero(),
                Some(IdealRepr::Described(Described::Principal(e))) => e.clone(),
                Some(IdealRepr::Described(Described::Whole)) => {
                    return Ok(IdealView::described(a, Described::Whole))
                }
                _ => return Err(unsupported_base(a)),
            };
            for x in extras {
                acc = a.oplus(&acc, x);
            }
            let m = ds.stable_multiple(&acc);
            if m == a.zero() {
                return Ok(IdealView::described(a, Described::Zero));
            }
            if a.top().as_ref() == Some(&m) {
                return Ok(IdealView::described(a, Described::Whole));
            }
            Ok(IdealView::described(a, Described::Principal(m)))
        }
        _ => Err(EmvError::Capability {
            family: a.family(),
            reason: "ideal generation".into(),
        }),
    }
}

fn unsupported_base(a: &Algebra) -> EmvError {
    EmvError::Capability {
        family: a.family(),
        reason: "generation from this kind of base ideal".into(),
    }
}

/// `⟨I ∪ {x}⟩ = ↓{i ⊕ m : i ∈ I}` where `m` is the stable multiple of `x`.
pub fn generated_ideal_by_multiples(i: &IdealView, x: &Element) -> Result<IdealView> {
    let f = i.algebra.require_finite("generation by multiples")?;
    let xi = indices(f, std::slice::from_ref(x))?[0];
    let m = f.stable_multiple(xi);
    let mut tops = FixedBitSet::with_capacity(f.size());
    for a in i.require_bits()?.ones() {
        tops.insert(f.op(a, m));
    }
    Ok(IdealView::explicit(&i.algebra, down_close(f, &tops)))
}

/// `x ≡ y (mod I)`: both `λ_b(λ_b(x) ⊕ y)` and `λ_b(λ_b(y) ⊕ x)` lie in `I`,
/// with `b` the least idempotent above `x ∨ y`.
pub fn congruent(i: &IdealView, x: &Element, y: &Element) -> bool {
    let a = &i.algebra;
    let b = a.least_idempotent_above(&a.join(x, y));
    congruent_with_cover(i, &b, x, y)
}

/// Same test with a caller-chosen idempotent cover.
pub fn congruent_with_cover(i: &IdealView, b: &Element, x: &Element, y: &Element) -> bool {
    let a = &i.algebra;
    let r1 = a.lambda(b, &a.oplus(&a.lambda(b, x), y));
    let r2 = a.lambda(b, &a.oplus(&a.lambda(b, y), x));
    i.contains(&r1) && i.contains(&r2)
}

/// A quotient algebra together with the projection `x ↦ x/I`.
pub struct Quotient {
    pub algebra: Algebra,
    pub projection: Vec<usize>,
}

pub fn quotient(a: &Algebra, i: &IdealView) -> Result<Quotient> {
    let f = a.require_finite("quotient")?;
    let bits = i.require_bits()?;
    if !is_ideal_bits(f, bits) {
        return Err(EmvError::Precondition(format!("{} is not an ideal", i.tag())));
    }
    let n = f.size();
    let mut class = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in x..n {
            if class[y] == usize::MAX && congruent(i, &Element::Index(x), &Element::Index(y)) {
                class[y] = c;
            }
        }
    }
    let m = reps.len();
    let mut oplus = vec![0; m * m];
    let mut neg = vec![0; m];
    for (p, &x) in reps.iter().enumerate() {
        neg[p] = class[f.neg_of(x)];
        for (q, &y) in reps.iter().enumerate() {
            oplus[p * m + q] = class[f.op(x, y)];
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", f.label_of(r))).collect();
    let fq = FiniteAlgebra::from_raw(
        format!("{}/I", f.family_name()),
        oplus,
        neg,
        class[f.zero_index()],
        class[f.top_index()],
        Some(labels),
    )?;
    Ok(Quotient {
        algebra: Algebra::from_finite(fq),
        projection: class,
    })
}

/// Join in the ideal lattice: `↓{x ⊕ y : x ∈ I, y ∈ J}`.
pub fn join_ideals(i: &IdealView, j: &IdealView) -> Result<IdealView> {
    let f = i.algebra.require_finite("ideal join")?;
    let (bi, bj) = (i.require_bits()?, j.require_bits()?);
    let mut sums = FixedBitSet::with_capacity(f.size());
    for x in bi.ones() {
        for y in bj.ones() {
            sums.insert(f.op(x, y));
        }
    }
    Ok(IdealView::explicit(&i.algebra, down_close(f, &sums)))
}

pub fn meet_ideals(i: &IdealView, j: &IdealView) -> Result<IdealView> {
    let (bi, bj) = (i.require_bits()?, j.require_bits()?);
    let mut b = bi.clone();
    b.intersect_with(bj);
    Ok(IdealView::explicit(&i.algebra, b))
}

pub fn zero_ideal(a: &Algebra) -> IdealView {
    match a.as_finite() {
        Some(f) => IdealView::explicit(a, singleton(f, f.zero_index())),
        None => IdealView::described(a, Described::Zero),
    }
}

pub fn whole_ideal(a: &Algebra) -> IdealView {
    match a.as_finite() {
        Some(f) => IdealView::explicit(a, full(f)),
        None => IdealView::described(a, Described::Whole),
    }
}

/// Every ideal of a finite algebra, sorted by size then members.
pub fn all_ideals(a: &Algebra) -> Result<Vec<IdealView>> {
    all_ideals_bounded(a, DEFAULT_IDEAL_BOUND)
}

pub fn all_ideals_bounded(a: &Algebra, bound: usize) -> Result<Vec<IdealView>> {
    let f = a.require_finite("ideal enumeration")?;
    if f.size() > bound {
        return Err(EmvError::SizeBound {
            size: f.size(),
            bound,
        });
    }
    let mut found: Vec<FixedBitSet> = Vec::new();
    let push = |found: &mut Vec<FixedBitSet>, b: FixedBitSet| {
        if !found.contains(&b) {
            found.push(b);
            true
        } else {
            false
        }
    };
    push(&mut found, singleton(f, f.zero_index()));
    for x in 0..f.size() {
        push(&mut found, close_ideal(f, &singleton(f, x)));
    }
    let mut frontier: Vec<usize> = (0..found.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &p in &frontier {
            for q in 0..found.len() {
                let mut sums = FixedBitSet::with_capacity(f.size());
                for x in found[p].ones() {
                    for y in found[q].ones() {
                        sums.insert(f.op(x, y));
                    }
                }
                let j = down_close(f, &sums);
                if push(&mut found, j) {
                    next.push(found.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let mut keyed: Vec<(usize, Vec<usize>, FixedBitSet)> = found
        .into_iter()
        .map(|b| (b.count_ones(..), b.ones().collect(), b))
        .collect();
    keyed.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    Ok(keyed.into_iter().map(|(_, _, b)| IdealView::explicit(a, b)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealClass {
    pub proper: bool,
    pub prime: bool,
    pub maximal: bool,
}

pub fn classify_ideal(i: &IdealView) -> Result<IdealClass> {
    let a = &i.algebra;
    match &i.repr {
        IdealRepr::Explicit(bits) => {
            let f = a.as_finite().expect("explicit");
            if !is_ideal_bits(f, bits) {
                return Err(EmvError::NotAnIdeal(i.tag()));
            }
            let proper = bits.count_ones(..) < f.size();
            let prime = proper
                && (0..f.size()).all(|x| {
                    (0..f.size()).all(|y| !bits.contains(f.meet_of(x, y)) || bits.contains(x) || bits.contains(y))
                });
            let maximal = proper
                && (0..f.size()).filter(|&x| !bits.contains(x)).all(|x| {
                    let mut s = bits.clone();
                    s.insert(x);
                    close_ideal(f, &s).count_ones(..) == f.size()
                });
            Ok(IdealClass { proper, prime, maximal })
        }
        IdealRepr::Described(Described::CoordinateKernel { index, component_ideal }) => {
            let ds = a.as_direct_sum().expect("direct sum");
            let comp = Algebra::from_finite(ds.component(*index).clone());
            classify_ideal(&IdealView::explicit(&comp, component_ideal.clone()))
        }
        IdealRepr::Described(Described::ChangInfinitesimals) => Ok(IdealClass {
            proper: true,
            prime: true,
            maximal: true,
        }),
        IdealRepr::Described(Described::PlainImage) => Ok(IdealClass {
            proper: true,
            prime: true,
            maximal: true,
        }),
        IdealRepr::Described(_) => Err(EmvError::Capability {
            family: a.family(),
            reason: format!("classification of `{}`", i.tag()),
        }),
    }
}

/// Coordinate kernels `{f : f(i) ∈ K}` of a direct sum, `K` maximal in `M_i`.
#[derive(Clone)]
pub struct KernelFamily {
    algebra: Algebra,
    per_component: Vec<Vec<FixedBitSet>>,
}

impl KernelFamily {
    /// Number of kernels per coordinate `i`.
    pub fn at(&self, i: usize) -> Vec<IdealView> {
        let ds = self.algebra.as_direct_sum().expect("direct sum");
        if !ds.in_domain(i) {
            return Vec::new();
        }
        self.per_component[i % self.per_component.len()]
            .iter()
            .map(|k| {
                IdealView::described(
                    &self.algebra,
                    Described::CoordinateKernel {
                        index: i,
                        component_ideal: k.clone(),
                    },
                )
            })
            .collect()
    }

    /// Kernels for coordinates `0..k`.
    pub fn up_to(&self, k: usize) -> Vec<IdealView> {
        (0..k).flat_map(|i| self.at(i)).collect()
    }

    pub fn is_finite(&self) -> bool {
        let ds = self.algebra.as_direct_sum().expect("direct sum");
        matches!(ds.domain(), IndexDomain::Finite(_))
    }
}

pub enum MaximalIdeals {
    Listed(Vec<IdealView>),
    CoordinateKernels(KernelFamily),
}

impl MaximalIdeals {
    /// All of them when finitely many, else the kernels of the first `k` coordinates.
    pub fn take(&self, k: usize) -> Vec<IdealView> {
        match self {
            MaximalIdeals::Listed(v) => v.iter().take(k).cloned().collect(),
            MaximalIdeals::CoordinateKernels(f) => match f.algebra.as_direct_sum().map(|d| d.domain()) {
                Some(IndexDomain::Finite(n)) => f.up_to(n).into_iter().take(k).collect(),
                _ => f.up_to(k),
            },
        }
    }

    pub fn listed(&self) -> Option<&[IdealView]> {
        match self {
            MaximalIdeals::Listed(v) => Some(v),
            MaximalIdeals::CoordinateKernels(_) => None,
        }
    }

    pub fn first(&self) -> Option<IdealView> {
        self.take(1).into_iter().next()
    }
}

fn finite_maximal_bits(f: &FiniteAlgebra, bound: usize) -> Result<Vec<FixedBitSet>> {
    let a = Algebra::from_finite(f.clone());
    Ok(all_ideals_bounded(&a, bound)?
        .into_iter()
        .filter(|i| classify_ideal(i).map(|c| c.maximal).unwrap_or(false))
        .map(|i| i.bits().expect("explicit").clone())
        .collect())
}

pub fn maximal_ideals(a: &Algebra) -> Result<MaximalIdeals> {
    maximal_ideals_bounded(a, DEFAULT_IDEAL_BOUND)
}

pub fn maximal_ideals_bounded(a: &Algebra, bound: usize) -> Result<MaximalIdeals> {
    match a.kind() {
        AlgebraKind::Finite(_) => Ok(MaximalIdeals::Listed(
            all_ideals_bounded(a, bound)?
                .into_iter()
                .filter(|i| classify_ideal(i).map(|c| c.maximal).unwrap_or(false))
                .collect(),
        )),
        AlgebraKind::DirectSum(ds) => {
            let per_component = ds
                .distinct_components()
                .iter()
                .map(|c| finite_maximal_bits(c, bound))
                .collect::<Result<Vec<_>>>()?;
            Ok(MaximalIdeals::CoordinateKernels(KernelFamily {
                algebra: a.clone(),
                per_component,
            }))
        }
        AlgebraKind::Chang(_) => Ok(MaximalIdeals::Listed(vec![IdealView::described(
            a,
            Described::ChangInfinitesimals,
        )])),
        AlgebraKind::Completion(_) => Ok(MaximalIdeals::Listed(vec![IdealView::described(
            a,
            Described::PlainImage,
        )])),
    }
}

/// `(⋂ MaxI(A), {0} ∪ {x : ∃ idempotent a ≥ x, n.x ≤ λ_a(x) for all n})`.
pub fn radical(a: &Algebra) -> Result<(IdealView, IdealView)> {
    let f = a.require_finite("radical")?;
    let maxi = maximal_ideals_bounded(a, f.size().max(DEFAULT_IDEAL_BOUND))?;
    let mut inter = full(f);
    for m in maxi.listed().expect("finite") {
        inter.intersect_with(m.bits().expect("explicit"));
    }
    if maxi.listed().expect("finite").is_empty() {
        // only the trivial algebra has no maximal ideal
        inter = singleton(f, f.zero_index());
    }
    let mut rad = singleton(f, f.zero_index());
    for x in 0..f.size() {
        if x == f.zero_index() {
            continue;
        }
        let ok = f.idempotent_indices().iter().any(|&e| {
            f.le(x, e) && (1..=f.size()).all(|n| f.le(f.multiple(x, n), f.lambda_of(e, x)))
        });
        if ok {
            rad.insert(x);
        }
    }
    Ok((IdealView::explicit(a, inter), IdealView::explicit(a, rad)))
}

/// `I⊥ = {x : x ∧ y = 0 for all y ∈ I}`.
pub fn pseudo_complement(i: &IdealView) -> Result<IdealView> {
    let f = i.algebra.require_finite("pseudo-complement")?;
    let bits = i.require_bits()?;
    let mut out = FixedBitSet::with_capacity(f.size());
    for x in 0..f.size() {
        if bits.ones().all(|y| f.meet_of(x, y) == f.zero_index()) {
            out.insert(x);
        }
    }
    Ok(IdealView::explicit(&i.algebra, out))
}

/// `I⊥` as the join over idempotents `a` of the pseudo-complement of
/// `I ∩ [0,a]` among the ideals contained in `[0,a]`.
pub fn pseudo_complement_decomposed(i: &IdealView, ideals: &[IdealView]) -> Result<IdealView> {
    let f = i.algebra.require_finite("pseudo-complement")?;
    let bits = i.require_bits()?;
    let mut acc = zero_ideal(&i.algebra);
    for &a in f.idempotent_indices() {
        let below = down_close(f, &singleton(f, a));
        let mut ia = bits.clone();
        ia.intersect_with(&below);
        let mut local = zero_ideal(&i.algebra);
        for j in ideals {
            let jb = j.require_bits()?;
            if !jb.is_subset(&below) {
                continue;
            }
            let mut m = jb.clone();
            m.intersect_with(&ia);
            if m.count_ones(..) == 1 {
                local = join_ideals(&local, j)?;
            }
        }
        acc = join_ideals(&acc, &local)?;
    }
    Ok(acc)
}

/// The first idempotent `a` in canonical order with `λ_b(a) ∈ I` for every
/// idempotent `b ≥ a`.
pub fn mv_quotient_witness(i: &IdealView) -> Result<Option<Element>> {
    let f = i.algebra.require_finite("quotient witness")?;
    let bits = i.require_bits()?;
    let idem = f.idempotent_indices();
    Ok(idem
        .iter()
        .copied()
        .find(|&a| {
            idem.iter()
                .filter(|&&b| f.le(a, b))
                .all(|&b| bits.contains(f.lambda_of(b, a)))
        })
        .map(Element::Index))
}

/// Whether every member of `I` lies below an idempotent of `I`; on failure
/// returns a member with no idempotent of `I` above it.
pub fn enough_idempotents(i: &IdealView) -> std::result::Result<(), Element> {
    let a = &i.algebra;
    match &i.repr {
        IdealRepr::Explicit(bits) => {
            let f = a.as_finite().expect("explicit");
            match bits.ones().find(|&x| !bits.contains(f.lia_of(x))) {
                Some(x) => Err(Element::Index(x)),
                None => Ok(()),
            }
        }
        IdealRepr::Described(d) => match d {
            Described::ChangInfinitesimals => Err(fin(1)),
            Described::Principal(e) => {
                let lia = a.least_idempotent_above(e);
                if a.leq(&lia, e) {
                    Ok(())
                } else {
                    Err(e.clone())
                }
            }
            _ => Ok(()),
        },
    }
}

/// Whether `I` is a maximal ideal, using the described certificate for
/// infinite families: outside the ideal every element has a complement
/// relative to an idempotent lying in the ideal.
pub fn is_maximal(i: &IdealView) -> Result<bool> {
    classify_ideal(i).map(|c| c.maximal)
}
