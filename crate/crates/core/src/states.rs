//! State-morphisms, semisimplicity and clan representations.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{Algebra, AlgebraKind, Element};
use crate::constructors::clan::{check_clan, format_set, ClanSpec, FuzzySet};
use crate::constructors::idempotent_subalgebra;
use crate::ideals::{maximal_ideals, quotient, radical, Described, IdealRepr, IdealView};
use crate::{EmvError, Rational, Result};

#[derive(Clone)]
enum StateKind {
    /// `x ↦ height(x/K) / k` where `A/K ≅ chain(k)`.
    Finite {
        class: Vec<usize>,
        height: Vec<usize>,
        k: usize,
    },
    /// `f ↦ s(f(index))` for a state `s` of the component.
    Coordinate { index: usize, component: Box<StateMorphism> },
    /// `Fin(n) ↦ 0`, `Cofin(n) ↦ 1`.
    Chang,
}

/// A homomorphism into the rational unit interval attaining 1, stored by
/// its kernel.
#[derive(Clone)]
pub struct StateMorphism {
    kernel: IdealView,
    kind: StateKind,
}

impl fmt::Debug for StateMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateMorphism(ker = {}, order = {})", self.kernel.tag(), self.chain_order())
    }
}

impl StateMorphism {
    pub fn kernel(&self) -> &IdealView {
        &self.kernel
    }

    /// `k` with `A/Ker(s) ≅ chain(k)`.
    pub fn chain_order(&self) -> usize {
        match &self.kind {
            StateKind::Finite { k, .. } => *k,
            StateKind::Coordinate { component, .. } => component.chain_order(),
            StateKind::Chang => 1,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        self.kernel.algebra()
    }
}

/// The state-morphism with kernel `k`, which must be maximal.
pub fn state_from_kernel(k: &IdealView) -> Result<StateMorphism> {
    let a = k.algebra();
    match (a.kind(), k.repr()) {
        (AlgebraKind::Finite(_), IdealRepr::Explicit(_)) => {
            let q = quotient(a, k)?;
            let qf = q.algebra.as_finite().expect("finite quotient");
            let m = qf.size();
            if m < 2 {
                return Err(EmvError::NotMaximal(k.tag()));
            }
            for x in 0..m {
                for y in 0..m {
                    if !qf.le(x, y) && !qf.le(y, x) {
                        return Err(EmvError::NotMaximal(k.tag()));
                    }
                }
            }
            let height: Vec<usize> = (0..m)
                .map(|x| (0..m).filter(|&y| y != x && qf.le(y, x)).count())
                .collect();
            debug_assert_eq!(height[qf.top_index()], m - 1);
            Ok(StateMorphism {
                kernel: k.clone(),
                kind: StateKind::Finite {
                    class: q.projection,
                    height,
                    k: m - 1,
                },
            })
        }
        (AlgebraKind::DirectSum(ds), IdealRepr::Described(Described::CoordinateKernel { index, component_ideal })) => {
            let comp = Algebra::from_finite(ds.component(*index).clone());
            let ck = IdealView::from_indices(&comp, &component_ideal.ones().collect::<Vec<_>>())?;
            let cs = state_from_kernel(&ck)?;
            Ok(StateMorphism {
                kernel: k.clone(),
                kind: StateKind::Coordinate {
                    index: *index,
                    component: Box::new(cs),
                },
            })
        }
        (AlgebraKind::Chang(_), IdealRepr::Described(Described::ChangInfinitesimals)) => Ok(StateMorphism {
            kernel: k.clone(),
            kind: StateKind::Chang,
        }),
        _ => Err(EmvError::Capability {
            family: a.family(),
            reason: format!("state-morphism with kernel `{}`", k.tag()),
        }),
    }
}

/// One state-morphism per maximal ideal. For infinite direct sums only the
/// coordinates inside the sampling window are listed.
pub fn state_morphisms(a: &Algebra) -> Result<Vec<StateMorphism>> {
    let window = a.as_direct_sum().map(|d| d.sample_width()).unwrap_or(usize::MAX);
    maximal_ideals(a)?
        .take(window)
        .iter()
        .map(state_from_kernel)
        .collect()
}

/// Exact value `s(x)`.
pub fn evaluate(s: &StateMorphism, x: &Element) -> Rational {
    match &s.kind {
        StateKind::Finite { class, height, k } => {
            let i = x.index().expect("finite element");
            Rational::new(height[class[i]] as i64, *k as i64)
        }
        StateKind::Coordinate { index, component } => {
            let ds = s.algebra().as_direct_sum().expect("direct sum");
            let v = ds
                .support_map(x)
                .get(*index)
                .unwrap_or_else(|| ds.component(*index).zero_index());
            evaluate(component, &Element::Index(v))
        }
        StateKind::Chang => match x {
            Element::Lex(p) if p.coordinates().0 == 0 => Rational::zero(),
            _ => Rational::from_integer(1),
        },
    }
}

pub fn is_semisimple(a: &Algebra) -> Result<bool> {
    let (inter, _) = radical(a)?;
    Ok(inter.len() == Some(1))
}

/// Rows `x̂ = (s(x))_s` over all state-morphisms.
pub struct ClanRepresentation {
    pub states: Vec<StateMorphism>,
    pub rows: Vec<FuzzySet>,
    back: HashMap<FuzzySet, usize>,
}

impl ClanRepresentation {
    /// The element whose row is `f`.
    pub fn element_of(&self, f: &FuzzySet) -> Option<Element> {
        self.back.get(f).map(|&i| Element::Index(i))
    }

    pub fn omega(&self) -> Vec<String> {
        (0..self.states.len()).map(|i| format!("s{i}")).collect()
    }

    pub fn to_spec(&self) -> ClanSpec {
        ClanSpec::from_values(self.omega(), &self.rows)
    }

    pub fn row_label(&self, i: usize) -> String {
        format_set(&self.rows[i])
    }
}

pub fn clan_representation(a: &Algebra) -> Result<ClanRepresentation> {
    let f = a.require_finite("clan representation")?;
    let (inter, _) = radical(a)?;
    if inter.len() != Some(1) {
        let w = inter
            .members()
            .expect("explicit")
            .into_iter()
            .find(|&x| x != f.zero_index())
            .expect("nonzero member");
        return Err(EmvError::NotSemisimple(f.label_of(w).to_string()));
    }
    let states = state_morphisms(a)?;
    let rows: Vec<FuzzySet> = (0..f.size())
        .map(|x| states.iter().map(|s| evaluate(s, &Element::Index(x))).collect())
        .collect();
    let mut back = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        if back.insert(r.clone(), i).is_some() {
            return Err(EmvError::NotSemisimple(f.label_of(i).to_string()));
        }
    }
    if f.size() > 1 {
        check_clan(&(0..states.len()).map(|i| format!("s{i}")).collect::<Vec<_>>(), &rows, true)
            .map_err(EmvError::Clan)?;
    }
    Ok(ClanRepresentation { states, rows, back })
}

/// A state-morphism of the Boolean algebra of idempotents.
#[derive(Clone, Debug)]
pub struct BooleanState {
    pub state: StateMorphism,
    /// Indices into the parent algebra of the idempotents in the kernel.
    pub kernel_idempotents: Vec<usize>,
}

pub fn boolean_states(a: &Algebra) -> Result<Vec<BooleanState>> {
    let (b, emb) = idempotent_subalgebra(a)?;
    Ok(state_morphisms(&b)?
        .into_iter()
        .map(|s| {
            let kernel_idempotents = s
                .kernel()
                .members()
                .expect("explicit")
                .into_iter()
                .map(|i| emb[i])
                .collect();
            BooleanState {
                state: s,
                kernel_idempotents,
            }
        })
        .collect())
}

/// An extension of a Boolean state to `A` and the number of extensions.
pub fn extend_boolean_state(a: &Algebra, bs: &BooleanState) -> Result<(StateMorphism, usize)> {
    let f = a.require_finite("state extension")?;
    let mut found = Vec::new();
    for k in maximal_ideals(a)?.listed().expect("finite") {
        let kb = k.bits().expect("explicit");
        let trace: Vec<usize> = f.idempotent_indices().iter().copied().filter(|&e| kb.contains(e)).collect();
        if trace == bs.kernel_idempotents {
            found.push(k.clone());
        }
    }
    let count = found.len();
    let first = found.into_iter().next().ok_or_else(|| {
        EmvError::Precondition("no maximal ideal has the requested idempotent trace".into())
    })?;
    Ok((state_from_kernel(&first)?, count))
}

/// For every idempotent `a` and `x, y ≤ a` some idempotent `e ≤ a` has
/// `x ∧ e ≤ y` and `y ∧ λ_a(e) ≤ x`.
pub fn general_comparability(a: &Algebra) -> Result<bool> {
    let f = a.require_finite("general comparability")?;
    for &top in f.idempotent_indices() {
        let below = f.down_set(top);
        let idem: Vec<usize> = f.idempotent_indices().iter().copied().filter(|&e| f.le(e, top)).collect();
        for &x in &below {
            for &y in &below {
                let ok = idem.iter().any(|&e| {
                    f.le(f.meet_of(x, e), y) && f.le(f.meet_of(y, f.lambda_of(top, e)), x)
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
