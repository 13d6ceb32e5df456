//! Finite MV-algebras given by operation tables.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::{Element, EmvStructure};
use crate::{EmvError, Result};

/// JSON interchange form of a finite MV-algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMVTables {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub size: usize,
    pub oplus_table: Vec<Vec<usize>>,
    pub neg_table: Vec<usize>,
    pub zero_index: usize,
    pub top_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub(crate) fn schema_tag() -> String {
    "emv/1".to_string()
}

/// A finite algebra backed by dense tables. Elements are `Element::Index`.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    n: usize,
    family: String,
    oplus: Vec<usize>,
    neg: Vec<usize>,
    join: Vec<usize>,
    meet: Vec<usize>,
    lia: Vec<usize>,
    idempotents: Vec<usize>,
    labels: Vec<String>,
    zero: usize,
    top: usize,
}

impl FiniteAlgebra {
    /// Builds the derived tables. Only shapes are validated here; the MV
    /// axioms are the job of [`crate::algebra::axioms::check_axioms`].
    pub fn from_raw(
        family: impl Into<String>,
        oplus: Vec<usize>,
        neg: Vec<usize>,
        zero: usize,
        top: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = neg.len();
        if n == 0 {
            return Err(EmvError::Format("carrier must be nonempty".into()));
        }
        if oplus.len() != n * n {
            return Err(EmvError::Format(format!(
                "oplus table has {} entries, expected {}",
                oplus.len(),
                n * n
            )));
        }
        if let Some(bad) = oplus.iter().chain(neg.iter()).find(|&&v| v >= n) {
            return Err(EmvError::Format(format!("table entry {bad} out of range 0..{n}")));
        }
        if zero >= n || top >= n {
            return Err(EmvError::Format("zero/top index out of range".into()));
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(EmvError::Format(format!("{} labels for {n} elements", l.len())))
            }
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let op = |x: usize, y: usize| oplus[x * n + y];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                // x ∨ y = (x ⊖ y) ⊕ y with x ⊖ y = (x' ⊕ y)'
                let diff = neg[op(neg[x], y)];
                join[x * n + y] = op(diff, y);
                // x ∧ y = x ⊙ (x' ⊕ y) with u ⊙ v = (u' ⊕ v')'
                let w = op(neg[x], y);
                meet[x * n + y] = neg[op(neg[x], neg[w])];
            }
        }
        let idempotents: Vec<usize> = (0..n).filter(|&x| op(x, x) == x).collect();
        let lia = (0..n)
            .map(|x| {
                idempotents
                    .iter()
                    .copied()
                    .filter(|&e| meet[x * n + e] == x)
                    .fold(top, |acc, e| meet[acc * n + e])
            })
            .collect();
        Ok(FiniteAlgebra {
            n,
            family: family.into(),
            oplus,
            neg,
            join,
            meet,
            lia,
            idempotents,
            labels,
            zero,
            top,
        })
    }

    /// Builds from the JSON form, checking shapes.
    pub fn from_tables(t: &FiniteMVTables) -> Result<Self> {
        if t.schema != "emv/1" {
            return Err(EmvError::Format(format!("unknown schema `{}`", t.schema)));
        }
        if t.size == 0 || t.neg_table.len() != t.size || t.oplus_table.len() != t.size {
            return Err(EmvError::Format(format!(
                "tables do not match declared size {}",
                t.size
            )));
        }
        if let Some(r) = t.oplus_table.iter().position(|r| r.len() != t.size) {
            return Err(EmvError::Format(format!("oplus row {r} has wrong length")));
        }
        let flat = t.oplus_table.iter().flatten().copied().collect();
        Self::from_raw(
            "tables",
            flat,
            t.neg_table.clone(),
            t.zero_index,
            t.top_index,
            t.labels.clone(),
        )
    }

    pub fn to_tables(&self) -> FiniteMVTables {
        FiniteMVTables {
            schema: schema_tag(),
            size: self.n,
            oplus_table: self.oplus.chunks(self.n).map(|r| r.to_vec()).collect(),
            neg_table: self.neg.clone(),
            zero_index: self.zero,
            top_index: self.top,
            labels: Some(self.labels.clone()),
        }
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = family.into();
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }
    pub fn zero_index(&self) -> usize {
        self.zero
    }
    pub fn top_index(&self) -> usize {
        self.top
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label_of(&self, x: usize) -> &str {
        &self.labels[x]
    }
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.n + y]
    }
    #[inline]
    pub fn neg_of(&self, x: usize) -> usize {
        self.neg[x]
    }
    #[inline]
    pub fn join_of(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }
    #[inline]
    pub fn meet_of(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y]
    }
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.meet[x * self.n + y] == x
    }
    #[inline]
    pub fn lia_of(&self, x: usize) -> usize {
        self.lia[x]
    }
    /// Closed form of `λ_b(x)` for idempotent `b >= x`.
    #[inline]
    pub fn lambda_of(&self, b: usize, x: usize) -> usize {
        self.meet_of(self.neg[x], b)
    }
    /// `λ_b(x)` by scanning `[0,b]` for the least solution of `x ⊕ z = b`.
    pub fn lambda_scan(&self, b: usize, x: usize) -> Option<usize> {
        let sols: Vec<usize> = (0..self.n)
            .filter(|&z| self.le(z, b) && self.op(x, z) == b)
            .collect();
        sols.iter()
            .copied()
            .find(|&z| sols.iter().all(|&w| self.le(z, w)))
    }
    pub fn odot_of(&self, x: usize, y: usize) -> usize {
        let a = self.lia_of(self.join_of(x, y));
        self.lambda_of(a, self.op(self.lambda_of(a, x), self.lambda_of(a, y)))
    }
    pub fn is_idem(&self, x: usize) -> bool {
        self.op(x, x) == x
    }
    pub fn idempotent_indices(&self) -> &[usize] {
        &self.idempotents
    }
    /// `n.x`, stabilized.
    pub fn multiple(&self, x: usize, n: usize) -> usize {
        let mut acc = self.zero;
        for _ in 0..n {
            let next = self.op(acc, x);
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }
    /// Largest `n.x`, reached after at most `size` steps.
    pub fn stable_multiple(&self, x: usize) -> usize {
        self.multiple(x, self.n)
    }
    /// Greatest idempotent below `x`.
    pub fn greatest_idempotent_below(&self, x: usize) -> usize {
        self.idempotents
            .iter()
            .copied()
            .filter(|&e| self.le(e, x))
            .fold(self.zero, |acc, e| self.join_of(acc, e))
    }
    /// Elements of `↓x`.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.le(y, x)).collect()
    }

    /// An isomorphism `self -> other` preserving ⊕ and negation, if any.
    pub fn isomorphism_to(&self, other: &FiniteAlgebra) -> Option<Vec<usize>> {
        if self.n != other.n || self.idempotents.len() != other.idempotents.len() {
            return None;
        }
        let sig = |a: &FiniteAlgebra, x: usize| {
            let below = (0..a.n).filter(|&y| a.le(y, x)).count();
            let mut steps = 0;
            let mut acc = a.zero;
            while steps <= a.n {
                let next = a.op(acc, x);
                if next == acc {
                    break;
                }
                acc = next;
                steps += 1;
            }
            (a.is_idem(x), below, steps)
        };
        let s1: Vec<_> = (0..self.n).map(|x| sig(self, x)).collect();
        let s2: Vec<_> = (0..other.n).map(|x| sig(other, x)).collect();
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        let order: Vec<usize> = (0..self.n).collect();
        fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize], x: usize) -> bool {
            let fx = map[x];
            let nx = a.neg_of(x);
            if map[nx] != usize::MAX && map[nx] != b.neg_of(fx) {
                return false;
            }
            for y in 0..a.n {
                if map[y] == usize::MAX {
                    continue;
                }
                let s = a.op(x, y);
                if map[s] != usize::MAX && map[s] != b.op(fx, map[y]) {
                    return false;
                }
            }
            // also pairs whose sum is x
            for y in 0..a.n {
                if map[y] == usize::MAX {
                    continue;
                }
                for z in 0..a.n {
                    if map[z] != usize::MAX && a.op(y, z) == x && b.op(map[y], map[z]) != fx {
                        return false;
                    }
                }
            }
            true
        }
        fn go(
            a: &FiniteAlgebra,
            b: &FiniteAlgebra,
            s1: &[(bool, usize, usize)],
            s2: &[(bool, usize, usize)],
            order: &[usize],
            k: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let x = order[k];
            if map[x] != usize::MAX {
                return go(a, b, s1, s2, order, k + 1, map, used);
            }
            for c in 0..b.n {
                if used[c] || s1[x] != s2[c] {
                    continue;
                }
                map[x] = c;
                used[c] = true;
                if consistent(a, b, map, x) && go(a, b, s1, s2, order, k + 1, map, used) {
                    return true;
                }
                map[x] = usize::MAX;
                used[c] = false;
            }
            false
        }
        if go(self, other, &s1, &s2, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }
}

fn idx(x: &Element) -> usize {
    match x {
        Element::Index(i) => *i,
        other => panic!("finite algebra received foreign element {other:?}"),
    }
}

impl EmvStructure for FiniteAlgebra {
    fn family(&self) -> String {
        self.family.clone()
    }
    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Index(i) if *i < self.n)
    }
    fn zero(&self) -> Element {
        Element::Index(self.zero)
    }
    fn top(&self) -> Option<Element> {
        Some(Element::Index(self.top))
    }
    fn oplus(&self, x: &Element, y: &Element) -> Element {
        Element::Index(self.op(idx(x), idx(y)))
    }
    fn join(&self, x: &Element, y: &Element) -> Element {
        Element::Index(self.join_of(idx(x), idx(y)))
    }
    fn meet(&self, x: &Element, y: &Element) -> Element {
        Element::Index(self.meet_of(idx(x), idx(y)))
    }
    fn lambda(&self, b: &Element, x: &Element) -> Element {
        Element::Index(self.lambda_of(idx(b), idx(x)))
    }
    fn least_idempotent_above(&self, x: &Element) -> Element {
        Element::Index(self.lia_of(idx(x)))
    }
    fn elements(&self) -> Option<Vec<Element>> {
        Some((0..self.n).map(Element::Index).collect())
    }
    fn idempotent_family(&self) -> Vec<Element> {
        self.idempotents.iter().map(|&i| Element::Index(i)).collect()
    }
    fn label(&self, x: &Element) -> String {
        match x {
            Element::Index(i) if *i < self.n => self.labels[*i].clone(),
            other => format!("{other:?}"),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Element {
        Element::Index((rng.next_u64() % self.n as u64) as usize)
    }
    fn is_idempotent(&self, x: &Element) -> bool {
        self.is_idem(idx(x))
    }
    fn leq(&self, x: &Element, y: &Element) -> bool {
        self.le(idx(x), idx(y))
    }
}
