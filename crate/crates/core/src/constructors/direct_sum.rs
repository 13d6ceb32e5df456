//! Finite-support direct sums `Σ_i M_i` of finite MV-algebras.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::algebra::finite::FiniteMVTables;
use crate::algebra::{Algebra, AlgebraKind, Element, EmvStructure, FiniteAlgebra, SupportMap};
use crate::{EmvError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexDomain {
    Finite(usize),
    CountablyInfinite,
}

/// JSON form: either one shared `component` or a cyclic list `components`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DirectSumSpec {
    #[serde(default)]
    pub component: Option<FiniteMVTables>,
    #[serde(default)]
    pub components: Option<Vec<FiniteMVTables>>,
    pub index_domain: IndexDomain,
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    comps: Vec<FiniteAlgebra>,
    domain: IndexDomain,
    family: String,
    sample_width: usize,
}

impl DirectSum {
    /// Coordinate `i` uses `comps[i % comps.len()]`.
    pub fn new(comps: Vec<FiniteAlgebra>, domain: IndexDomain, family: String) -> Result<Self> {
        if comps.is_empty() {
            return Err(EmvError::InvalidConstructor("direct sum needs a component".into()));
        }
        Ok(DirectSum {
            comps,
            domain,
            family,
            sample_width: 8,
        })
    }

    pub fn with_sample_width(mut self, w: usize) -> Self {
        self.sample_width = w.max(1);
        self
    }

    pub fn sample_width(&self) -> usize {
        self.sample_width
    }

    pub fn domain(&self) -> IndexDomain {
        self.domain
    }

    pub fn component(&self, i: usize) -> &FiniteAlgebra {
        &self.comps[i % self.comps.len()]
    }

    pub fn distinct_components(&self) -> &[FiniteAlgebra] {
        &self.comps
    }

    pub fn in_domain(&self, i: usize) -> bool {
        match self.domain {
            IndexDomain::Finite(k) => i < k,
            IndexDomain::CountablyInfinite => true,
        }
    }

    fn canon(&self, pairs: Vec<(usize, usize)>) -> Element {
        Element::Support(SupportMap::from_pairs(pairs, |i, x| {
            x == self.component(i).zero_index()
        }))
    }

    /// Builds an element from `(coordinate, component index)` pairs.
    pub fn element(&self, pairs: &[(usize, usize)]) -> Result<Element> {
        for &(i, x) in pairs {
            if !self.in_domain(i) || x >= self.component(i).size() {
                return Err(EmvError::DomainMismatch(format!("{i}:{x}"), self.family.clone()));
            }
        }
        Ok(self.canon(pairs.to_vec()))
    }

    /// Builds an element from `(coordinate, component label)` pairs.
    pub fn element_from_labels(&self, pairs: &[(usize, &str)]) -> Result<Element> {
        let mut v = Vec::with_capacity(pairs.len());
        for &(i, l) in pairs {
            let x = self
                .component(i)
                .index_of_label(l)
                .ok_or_else(|| EmvError::DomainMismatch(format!("{i}:{l}"), self.family.clone()))?;
            v.push((i, x));
        }
        self.element(&v)
    }

    pub fn support_map<'a>(&self, x: &'a Element) -> &'a SupportMap {
        match x {
            Element::Support(m) => m,
            other => panic!("direct sum received foreign element {other:?}"),
        }
    }

    /// Applies `f` coordinatewise on the union of supports.
    fn zip(&self, x: &Element, y: &Element, f: impl Fn(&FiniteAlgebra, usize, usize) -> usize) -> Element {
        let (a, b) = (self.support_map(x).entries(), self.support_map(y).entries());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut p, mut q) = (0, 0);
        while p < a.len() || q < b.len() {
            let (i, xi, yi) = match (a.get(p), b.get(q)) {
                (Some(&(i, u)), Some(&(j, v))) if i == j => {
                    p += 1;
                    q += 1;
                    (i, u, v)
                }
                (Some(&(i, u)), Some(&(j, _))) if i < j => {
                    p += 1;
                    (i, u, self.component(i).zero_index())
                }
                (Some(&(i, u)), None) => {
                    p += 1;
                    (i, u, self.component(i).zero_index())
                }
                (_, Some(&(j, v))) => {
                    q += 1;
                    (j, self.component(j).zero_index(), v)
                }
                (None, None) => unreachable!(),
            };
            let c = self.component(i);
            let r = f(c, xi, yi);
            if r != c.zero_index() {
                out.push((i, r));
            }
        }
        Element::Support(SupportMap::from_canonical(out))
    }

    fn map(&self, x: &Element, f: impl Fn(&FiniteAlgebra, usize) -> usize) -> Element {
        let out = self
            .support_map(x)
            .entries()
            .iter()
            .filter_map(|&(i, v)| {
                let c = self.component(i);
                let r = f(c, v);
                (r != c.zero_index()).then_some((i, r))
            })
            .collect();
        Element::Support(SupportMap::from_canonical(out))
    }

    pub fn greatest_idempotent_below(&self, x: &Element) -> Element {
        self.map(x, |c, v| c.greatest_idempotent_below(v))
    }

    /// Largest multiple `n.x`.
    pub fn stable_multiple(&self, x: &Element) -> Element {
        self.map(x, |c, v| c.stable_multiple(v))
    }

    /// Top of the first `k` coordinates.
    pub fn prefix_top(&self, k: usize) -> Element {
        self.canon((0..k).map(|i| (i, self.component(i).top_index())).collect())
    }

    /// The finite algebra on coordinates `0..k`, i.e. `∏_{i<k} M_i`, with
    /// labels matching this algebra's labels.
    pub fn truncation(&self, k: usize) -> Result<Truncation> {
        let sizes: Vec<usize> = (0..k).map(|i| self.component(i).size()).collect();
        let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        let total = match total {
            Some(t) if t <= 1 << 22 => t,
            _ => {
                return Err(EmvError::SizeBound {
                    size: total.unwrap_or(usize::MAX),
                    bound: 1 << 22,
                })
            }
        };
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        let decode = |mut ix: usize| -> Vec<usize> {
            let mut v = vec![0; k];
            for i in 0..k {
                v[i] = ix / strides[i];
                ix %= strides[i];
            }
            v
        };
        let encode = |v: &[usize]| -> usize { v.iter().zip(&strides).map(|(a, s)| a * s).sum() };
        let mut oplus = vec![0; total * total];
        let mut neg = vec![0; total];
        let coords: Vec<Vec<usize>> = (0..total).map(decode).collect();
        for x in 0..total {
            let cx = &coords[x];
            let nx: Vec<usize> = (0..k).map(|i| self.component(i).neg_of(cx[i])).collect();
            neg[x] = encode(&nx);
            for y in 0..total {
                let cy = &coords[y];
                let s: Vec<usize> = (0..k).map(|i| self.component(i).op(cx[i], cy[i])).collect();
                oplus[x * total + y] = encode(&s);
            }
        }
        let zero_v: Vec<usize> = (0..k).map(|i| self.component(i).zero_index()).collect();
        let top_v: Vec<usize> = (0..k).map(|i| self.component(i).top_index()).collect();
        let elems: Vec<Element> = coords
            .iter()
            .map(|c| self.canon(c.iter().copied().enumerate().collect()))
            .collect();
        let labels = elems.iter().map(|e| self.label(e)).collect();
        let fin = FiniteAlgebra::from_raw(
            format!("{}|{k}", self.family),
            oplus,
            neg,
            encode(&zero_v),
            encode(&top_v),
            Some(labels),
        )?;
        Ok(Truncation {
            algebra: Algebra::from_finite(fin),
            elements: elems,
            strides,
            width: k,
        })
    }
}

/// A finite window `∏_{i<k} M_i` of a direct sum.
pub struct Truncation {
    pub algebra: Algebra,
    elements: Vec<Element>,
    strides: Vec<usize>,
    width: usize,
}

impl Truncation {
    /// Index of a direct-sum element, if it is supported below the cut.
    pub fn encode(&self, x: &Element) -> Option<usize> {
        let Element::Support(m) = x else { return None };
        let mut ix = 0;
        for &(i, v) in m.entries() {
            if i >= self.width {
                return None;
            }
            ix += v * self.strides[i];
        }
        Some(ix)
    }
    pub fn decode(&self, ix: usize) -> Element {
        self.elements[ix].clone()
    }
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }
}

impl EmvStructure for DirectSum {
    fn family(&self) -> String {
        self.family.clone()
    }
    fn contains(&self, x: &Element) -> bool {
        let Element::Support(m) = x else { return false };
        let e = m.entries();
        e.windows(2).all(|w| w[0].0 < w[1].0)
            && e.iter().all(|&(i, v)| {
                self.in_domain(i) && v < self.component(i).size() && v != self.component(i).zero_index()
            })
    }
    fn zero(&self) -> Element {
        Element::Support(SupportMap::empty())
    }
    fn top(&self) -> Option<Element> {
        match self.domain {
            IndexDomain::Finite(k) => Some(self.prefix_top(k)),
            IndexDomain::CountablyInfinite => None,
        }
    }
    fn oplus(&self, x: &Element, y: &Element) -> Element {
        self.zip(x, y, |c, a, b| c.op(a, b))
    }
    fn join(&self, x: &Element, y: &Element) -> Element {
        self.zip(x, y, |c, a, b| c.join_of(a, b))
    }
    fn meet(&self, x: &Element, y: &Element) -> Element {
        self.zip(x, y, |c, a, b| c.meet_of(a, b))
    }
    fn lambda(&self, b: &Element, x: &Element) -> Element {
        self.zip(b, x, |c, bi, xi| c.lambda_of(bi, xi))
    }
    fn least_idempotent_above(&self, x: &Element) -> Element {
        self.map(x, |c, v| c.lia_of(v))
    }
    fn elements(&self) -> Option<Vec<Element>> {
        match self.domain {
            IndexDomain::Finite(k) => self.truncation(k).ok().map(|t| t.elements),
            IndexDomain::CountablyInfinite => None,
        }
    }
    fn idempotent_family(&self) -> Vec<Element> {
        match self.domain {
            IndexDomain::Finite(k) => {
                let mut out = vec![self.zero()];
                for i in 0..k {
                    let c = self.component(i);
                    let mut next = Vec::new();
                    for e in &out {
                        for &v in c.idempotent_indices() {
                            let mut m = self.support_map(e).entries().to_vec();
                            if v != c.zero_index() {
                                m.push((i, v));
                            }
                            next.push(Element::Support(SupportMap::from_canonical(m)));
                        }
                    }
                    out = next;
                }
                out.sort();
                out
            }
            IndexDomain::CountablyInfinite => (0..=self.sample_width).map(|k| self.prefix_top(k)).collect(),
        }
    }
    fn label(&self, x: &Element) -> String {
        match x {
            Element::Support(m) => {
                let parts: Vec<String> = m
                    .entries()
                    .iter()
                    .map(|&(i, v)| {
                        let c = self.component(i);
                        let l = if v < c.size() { c.label_of(v).to_string() } else { format!("?{v}") };
                        format!("{i}:{l}")
                    })
                    .collect();
                format!("{{{}}}", parts.join(","))
            }
            other => format!("{other:?}"),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Element {
        let w = match self.domain {
            IndexDomain::Finite(k) => k.min(self.sample_width.max(k)),
            IndexDomain::CountablyInfinite => self.sample_width,
        };
        let mut pairs = Vec::new();
        for i in 0..w {
            if rng.next_u32() % 2 == 0 {
                continue;
            }
            let c = self.component(i);
            let v = (rng.next_u64() % c.size() as u64) as usize;
            pairs.push((i, v));
        }
        self.canon(pairs)
    }
}

pub(crate) fn build(ds: DirectSum) -> Algebra {
    Algebra::new(AlgebraKind::DirectSum(ds))
}
