//! Filters and the filter/ideal transfer maps.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::algebra::{Algebra, AlgebraKind, Element, FiniteAlgebra};
use crate::ideals::{
    classify_ideal, close_ideal, maximal_ideals, maximal_ideals_bounded, IdealView,
};
use crate::{EmvError, Result};

/// An explicit filter of a finite algebra.
#[derive(Clone)]
pub struct FilterView {
    algebra: Algebra,
    bits: FixedBitSet,
}

impl PartialEq for FilterView {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.ptr_eq(&other.algebra) && self.bits == other.bits
    }
}

impl Eq for FilterView {}

impl fmt::Debug for FilterView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FilterView({{{}}})", self.member_labels().join(", "))
    }
}

impl FilterView {
    pub fn from_indices(algebra: &Algebra, members: &[usize]) -> Result<Self> {
        let f = algebra.require_finite("explicit filter")?;
        let mut bits = FixedBitSet::with_capacity(f.size());
        for &m in members {
            if m >= f.size() {
                return Err(EmvError::DomainMismatch(m.to_string(), algebra.family()));
            }
            bits.insert(m);
        }
        Ok(FilterView {
            algebra: algebra.clone(),
            bits,
        })
    }

    pub fn from_labels(algebra: &Algebra, labels: &[&str]) -> Result<Self> {
        let f = algebra.require_finite("explicit filter")?;
        let ix = labels
            .iter()
            .map(|l| {
                f.index_of_label(l)
                    .ok_or_else(|| EmvError::DomainMismatch(l.to_string(), algebra.family()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(algebra, &ix)
    }

    /// `↑x`.
    pub fn up_set(algebra: &Algebra, x: &Element) -> Result<Self> {
        let f = algebra.require_finite("principal filter")?;
        let xi = index(f, algebra, x)?;
        let mut bits = FixedBitSet::with_capacity(f.size());
        for y in 0..f.size() {
            if f.le(xi, y) {
                bits.insert(y);
            }
        }
        Ok(FilterView {
            algebra: algebra.clone(),
            bits,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Index(i) if self.bits.contains(*i))
    }

    pub fn members(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn member_labels(&self) -> Vec<String> {
        let f = self.algebra.as_finite().expect("finite");
        self.bits.ones().map(|i| f.label_of(i).to_string()).collect()
    }

    fn fin(&self) -> &FiniteAlgebra {
        self.algebra.as_finite().expect("filters live on finite algebras")
    }
}

fn index(f: &FiniteAlgebra, a: &Algebra, x: &Element) -> Result<usize> {
    match x {
        Element::Index(i) if *i < f.size() => Ok(*i),
        other => Err(EmvError::DomainMismatch(format!("{other:?}"), a.family())),
    }
}

fn is_filter_bits(f: &FiniteAlgebra, s: &FixedBitSet) -> bool {
    if s.count_ones(..) == 0 {
        return false;
    }
    let m: Vec<usize> = s.ones().collect();
    m.iter().all(|&x| (0..f.size()).all(|y| !f.le(x, y) || s.contains(y)))
        && m.iter().all(|&x| m.iter().all(|&y| s.contains(f.odot_of(x, y))))
}

/// Nonempty, up-closed and closed under ⊙.
pub fn is_filter(a: &Algebra, s: &[Element]) -> Result<bool> {
    let f = a.require_finite("is_filter")?;
    let mut b = FixedBitSet::with_capacity(f.size());
    for x in s {
        b.insert(index(f, a, x)?);
    }
    Ok(is_filter_bits(f, &b))
}

/// `{z : z ≥ y ⊙ xⁿ, y ∈ F, 1 ≤ n ≤ |A|}`.
pub fn generated_filter(filter: &FilterView, x: &Element) -> Result<FilterView> {
    let f = filter.fin();
    let xi = index(f, &filter.algebra, x)?;
    let mut powers = vec![xi];
    for _ in 1..f.size() {
        let next = f.odot_of(*powers.last().expect("nonempty"), xi);
        if next == *powers.last().expect("nonempty") {
            break;
        }
        powers.push(next);
    }
    let mut lows = FixedBitSet::with_capacity(f.size());
    for y in filter.bits.ones() {
        for &p in &powers {
            lows.insert(f.odot_of(y, p));
        }
    }
    let mut bits = FixedBitSet::with_capacity(f.size());
    for z in 0..f.size() {
        if lows.ones().any(|l| f.le(l, z)) {
            bits.insert(z);
        }
    }
    Ok(FilterView {
        algebra: filter.algebra.clone(),
        bits,
    })
}

/// `I_F = {λ_a(x) : x ∈ F, a idempotent, x ≤ a}`.
pub fn ideal_of_filter(filter: &FilterView) -> Result<IdealView> {
    let f = filter.fin();
    let mut bits = FixedBitSet::with_capacity(f.size());
    for x in filter.bits.ones() {
        for &a in f.idempotent_indices() {
            if f.le(x, a) {
                bits.insert(f.lambda_of(a, x));
            }
        }
    }
    Ok(IdealView::explicit(&filter.algebra, bits))
}

/// `F_J = {λ_a(x) : x ∈ J, a idempotent not in J, x < a}`.
///
/// Requires that every idempotent `a ∉ J` has `λ_b(a) ∈ J` for all
/// idempotents `b > a`.
pub fn filter_of_ideal(j: &IdealView) -> Result<FilterView> {
    let a = j.algebra();
    let f = a.require_finite("filter of an ideal")?;
    let bits = j.require_bits()?;
    let idem = f.idempotent_indices();
    for &e in idem.iter().filter(|&&e| !bits.contains(e)) {
        for &b in idem.iter().filter(|&&b| b != e && f.le(e, b)) {
            if !bits.contains(f.lambda_of(b, e)) {
                return Err(EmvError::Precondition(format!(
                    "idempotent {} violates the transfer condition (λ_{}({}) ∉ J)",
                    f.label_of(e),
                    f.label_of(b),
                    f.label_of(e)
                )));
            }
        }
    }
    let mut out = FixedBitSet::with_capacity(f.size());
    for &e in idem.iter().filter(|&&e| !bits.contains(e)) {
        for x in bits.ones().filter(|&x| x != e && f.le(x, e)) {
            out.insert(f.lambda_of(e, x));
        }
    }
    Ok(FilterView {
        algebra: a.clone(),
        bits: out,
    })
}

/// Extends `filter` to a maximal filter by one pass over the carrier in
/// canonical order, keeping 0 out.
pub fn grow_maximal_filter(filter: &FilterView) -> Result<FilterView> {
    let f = filter.fin();
    if filter.bits.contains(f.zero_index()) {
        return Err(EmvError::Precondition("the filter already contains 0".into()));
    }
    let mut cur = filter.clone();
    for x in 0..f.size() {
        if cur.bits.contains(x) {
            continue;
        }
        let g = generated_filter(&cur, &Element::Index(x))?;
        if !g.bits.contains(f.zero_index()) {
            cur = g;
        }
    }
    Ok(cur)
}

/// Proper (0-free) and every proper extension contains 0.
pub fn is_maximal_filter(filter: &FilterView) -> Result<bool> {
    let f = filter.fin();
    if !is_filter_bits(f, &filter.bits) || filter.bits.contains(f.zero_index()) {
        return Ok(false);
    }
    for x in (0..f.size()).filter(|&x| !filter.bits.contains(x)) {
        if !generated_filter(filter, &Element::Index(x))?.bits.contains(f.zero_index()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A maximal ideal, found constructively.
pub fn find_maximal_ideal(a: &Algebra) -> Result<IdealView> {
    match a.kind() {
        AlgebraKind::Finite(f) => {
            let Some(&e) = f.idempotent_indices().iter().find(|&&e| e != f.zero_index()) else {
                return Err(EmvError::NoMaximalIdeal);
            };
            let start = FilterView::up_set(a, &Element::Index(e))?;
            let m = grow_maximal_filter(&start)?;
            ideal_of_filter(&m)
        }
        AlgebraKind::DirectSum(_) | AlgebraKind::Chang(_) | AlgebraKind::Completion(_) => {
            maximal_ideals(a)?.first().ok_or(EmvError::NoMaximalIdeal)
        }
    }
}

/// An ideal `P ⊇ I` maximal among ideals not containing `x`; it is prime.
pub fn separating_prime(i: &IdealView, x: &Element) -> Result<IdealView> {
    let a = i.algebra();
    let f = a.require_finite("separating prime")?;
    let xi = index(f, a, x)?;
    let mut cur = i.require_bits()?.clone();
    if cur.contains(xi) {
        return Err(EmvError::Precondition(format!("{} already lies in the ideal", f.label_of(xi))));
    }
    for y in 0..f.size() {
        if cur.contains(y) {
            continue;
        }
        let mut s = cur.clone();
        s.insert(y);
        let g = close_ideal(f, &s);
        if !g.contains(xi) {
            cur = g;
        }
    }
    let p = IdealView::explicit(a, cur);
    if !classify_ideal(&p)?.prime {
        return Err(EmvError::NotPrime(p.tag()));
    }
    Ok(p)
}

/// The unique maximal ideal above a prime ideal.
pub fn prime_to_maximal(p: &IdealView) -> Result<IdealView> {
    let a = p.algebra();
    let f = a.require_finite("prime to maximal")?;
    if !classify_ideal(p)?.prime {
        return Err(EmvError::NotPrime(p.tag()));
    }
    let pb = p.require_bits()?;
    let maxi = maximal_ideals_bounded(a, f.size().max(crate::ideals::DEFAULT_IDEAL_BOUND))?;
    let above: Vec<IdealView> = maxi
        .listed()
        .expect("finite")
        .iter()
        .filter(|m| pb.is_subset(m.bits().expect("explicit")))
        .cloned()
        .collect();
    match above.len() {
        1 => Ok(above.into_iter().next().expect("one")),
        n => Err(EmvError::Precondition(format!(
            "{n} maximal ideals contain the prime ideal {}",
            p.tag()
        ))),
    }
}
