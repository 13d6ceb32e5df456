//! Concrete algebra families.

pub mod chang;
pub mod clan;
pub mod direct_sum;
pub mod expr;

use std::collections::BTreeSet;

pub use chang::{chang_algebra, cofin, fin};
pub use clan::{clan_from_table, Clan, ClanSpec, ClanViolation};
pub use direct_sum::{DirectSum, DirectSumSpec, IndexDomain, Truncation};
pub use expr::construct;

use crate::algebra::axioms::check_axioms;
use crate::algebra::EmvStructure;
use crate::algebra::finite::FiniteMVTables;
use crate::algebra::{Algebra, FiniteAlgebra};
use crate::{EmvError, Result};

/// Łukasiewicz chain `Γ(ℤ, n) = {0, …, n}`.
pub fn lukasiewicz_chain(n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(EmvError::InvalidConstructor(
            "chain(0) has a degenerate unit; use the trivial algebra".into(),
        ));
    }
    Ok(Algebra::from_finite(chain_tables(n)))
}

pub(crate) fn chain_tables(n: usize) -> FiniteAlgebra {
    let m = n + 1;
    let oplus = (0..m * m).map(|k| ((k / m) + (k % m)).min(n)).collect();
    let neg = (0..m).map(|x| n - x).collect();
    FiniteAlgebra::from_raw(format!("chain({n})"), oplus, neg, 0, n, None)
        .expect("chain tables are well shaped")
}

/// The one-element algebra `{0}`.
pub fn trivial() -> Algebra {
    Algebra::from_finite(
        FiniteAlgebra::from_raw("trivial", vec![0], vec![0], 0, 0, None).expect("well shaped"),
    )
}

/// Table algebra, optionally validated against every axiom.
pub fn finite_mv_from_tables(t: &FiniteMVTables, validate: bool) -> Result<Algebra> {
    let a = FiniteAlgebra::from_tables(t)?;
    if validate {
        check_axioms(&a).map_err(EmvError::Axioms)?;
    }
    Ok(Algebra::from_finite(a))
}

fn finite_factors(factors: &[Algebra]) -> Result<Vec<&FiniteAlgebra>> {
    factors
        .iter()
        .map(|f| f.require_finite("product"))
        .collect()
}

/// Cartesian product with componentwise operations. The first factor is
/// the most significant digit of the element index.
pub fn product(factors: &[Algebra]) -> Result<Algebra> {
    let fs = finite_factors(factors)?;
    if fs.is_empty() {
        return Ok(trivial());
    }
    let family = fs.iter().map(|f| f.family()).collect::<Vec<_>>().join("x");
    Ok(Algebra::from_finite(product_tables(&fs, family)?))
}

fn product_tables(fs: &[&FiniteAlgebra], family: String) -> Result<FiniteAlgebra> {
    let sizes: Vec<usize> = fs.iter().map(|f| f.size()).collect();
    let total: usize = sizes.iter().product();
    if total > 4096 {
        return Err(EmvError::SizeBound {
            size: total,
            bound: 4096,
        });
    }
    let k = fs.len();
    let mut strides = vec![1usize; k];
    for i in (0..k - 1).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    let coords: Vec<Vec<usize>> = (0..total)
        .map(|mut ix| {
            (0..k)
                .map(|i| {
                    let d = ix / strides[i];
                    ix %= strides[i];
                    d
                })
                .collect()
        })
        .collect();
    let enc = |v: &[usize]| -> usize { v.iter().zip(&strides).map(|(a, s)| a * s).sum() };
    let mut oplus = vec![0; total * total];
    let mut neg = vec![0; total];
    for x in 0..total {
        let nx: Vec<usize> = (0..k).map(|i| fs[i].neg_of(coords[x][i])).collect();
        neg[x] = enc(&nx);
        for y in 0..total {
            let s: Vec<usize> = (0..k).map(|i| fs[i].op(coords[x][i], coords[y][i])).collect();
            oplus[x * total + y] = enc(&s);
        }
    }
    let zero: Vec<usize> = fs.iter().map(|f| f.zero_index()).collect();
    let top: Vec<usize> = fs.iter().map(|f| f.top_index()).collect();
    let labels = coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(fs).map(|(&v, f)| f.label_of(v)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteAlgebra::from_raw(family, oplus, neg, enc(&zero), enc(&top), Some(labels))
}

/// Boolean algebra `2^k` as `chain(1)^k`.
pub fn boolean(k: usize) -> Algebra {
    if k == 0 {
        return trivial();
    }
    let c = chain_tables(1);
    let fs: Vec<&FiniteAlgebra> = (0..k).map(|_| &c).collect();
    Algebra::from_finite(
        product_tables(&fs, format!("bool({k})")).expect("2^k within bound for small k"),
    )
}

/// `Γ(ℤᵏ, u)`: the interval `[0,u]` of `ℤᵏ` with truncated addition.
pub fn gamma_zk(k: usize, u: &[i64]) -> Result<Algebra> {
    if u.len() != k || k == 0 {
        return Err(EmvError::Precondition(format!(
            "unit must have exactly k = {k} entries"
        )));
    }
    if let Some(bad) = u.iter().find(|&&v| v < 1) {
        return Err(EmvError::Precondition(format!("unit entry {bad} is not positive")));
    }
    let dims: Vec<i64> = u.to_vec();
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for &d in &dims {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=d).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let n = points.len();
    if n > 4096 {
        return Err(EmvError::SizeBound { size: n, bound: 4096 });
    }
    let index: std::collections::HashMap<Vec<i64>, usize> =
        points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut oplus = vec![0; n * n];
    let mut neg = vec![0; n];
    for (x, p) in points.iter().enumerate() {
        let c: Vec<i64> = p.iter().zip(&dims).map(|(a, d)| d - a).collect();
        neg[x] = index[&c];
        for (y, q) in points.iter().enumerate() {
            let s: Vec<i64> = p.iter().zip(q).zip(&dims).map(|((a, b), d)| (a + b).min(*d)).collect();
            oplus[x * n + y] = index[&s];
        }
    }
    let labels = points
        .iter()
        .map(|p| {
            let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let zero = index[&vec![0; k]];
    let top = index[&dims];
    let family = format!(
        "gamma(Z^{k},({}))",
        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(Algebra::from_finite(FiniteAlgebra::from_raw(
        family,
        oplus,
        neg,
        zero,
        top,
        Some(labels),
    )?))
}

/// Countable direct sum of copies of `component`.
pub fn direct_sum_of(component: Algebra) -> Algebra {
    let c = component
        .as_finite()
        .expect("direct sum components are finite")
        .clone();
    let family = format!("sum({})", c.family());
    direct_sum::build(
        DirectSum::new(vec![c], IndexDomain::CountablyInfinite, family).expect("one component"),
    )
}

pub fn direct_sum_with(components: Vec<Algebra>, domain: IndexDomain) -> Result<Algebra> {
    let comps = components
        .iter()
        .map(|c| c.require_finite("direct sum").cloned())
        .collect::<Result<Vec<_>>>()?;
    for c in &comps {
        check_axioms(c).map_err(EmvError::Axioms)?;
    }
    let names: Vec<String> = comps.iter().map(|c| c.family()).collect();
    let family = match domain {
        IndexDomain::CountablyInfinite => format!("sum({})", names.join(",")),
        IndexDomain::Finite(k) => format!("sum[{k}]({})", names.join(",")),
    };
    Ok(direct_sum::build(DirectSum::new(comps, domain, family)?))
}

pub fn direct_sum(spec: &DirectSumSpec) -> Result<Algebra> {
    let tables: Vec<&FiniteMVTables> = match (&spec.component, &spec.components) {
        (Some(c), None) => vec![c],
        (None, Some(cs)) if !cs.is_empty() => cs.iter().collect(),
        _ => {
            return Err(EmvError::Format(
                "give exactly one of `component` or a nonempty `components`".into(),
            ))
        }
    };
    let comps = tables
        .into_iter()
        .map(|t| finite_mv_from_tables(t, true))
        .collect::<Result<Vec<_>>>()?;
    direct_sum_with(comps, spec.index_domain)
}

/// Least subalgebra containing `gens` (and 0, top), with its embedding
/// into `a` as a list of parent indices.
pub fn subalgebra(a: &Algebra, gens: &[usize]) -> Result<(Algebra, Vec<usize>)> {
    let f = a.require_finite("subalgebra")?;
    if let Some(&g) = gens.iter().find(|&&g| g >= f.size()) {
        return Err(EmvError::DomainMismatch(g.to_string(), f.family()));
    }
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    set.insert(f.zero_index());
    set.insert(f.top_index());
    loop {
        let cur: Vec<usize> = set.iter().copied().collect();
        let mut grew = false;
        for &x in &cur {
            grew |= set.insert(f.neg_of(x));
            for &y in &cur {
                grew |= set.insert(f.op(x, y));
            }
        }
        if !grew {
            break;
        }
    }
    let emb: Vec<usize> = set.into_iter().collect();
    let pos = |x: usize| emb.binary_search(&x).expect("closed");
    let m = emb.len();
    let mut oplus = vec![0; m * m];
    let mut neg = vec![0; m];
    for (i, &x) in emb.iter().enumerate() {
        neg[i] = pos(f.neg_of(x));
        for (j, &y) in emb.iter().enumerate() {
            oplus[i * m + j] = pos(f.op(x, y));
        }
    }
    let labels = emb.iter().map(|&x| f.label_of(x).to_string()).collect();
    let sub = FiniteAlgebra::from_raw(
        format!("sub({})", f.family()),
        oplus,
        neg,
        pos(f.zero_index()),
        pos(f.top_index()),
        Some(labels),
    )?;
    Ok((Algebra::from_finite(sub), emb))
}

/// The Boolean algebra of idempotents.
pub fn idempotent_subalgebra(a: &Algebra) -> Result<(Algebra, Vec<usize>)> {
    let f = a.require_finite("idempotent subalgebra")?;
    let gens = f.idempotent_indices().to_vec();
    let (b, emb) = subalgebra(a, &gens)?;
    let fam = format!("idempotents({})", f.family());
    let fb = b.as_finite().expect("finite").clone().with_family(fam);
    Ok((Algebra::from_finite(fb), emb))
}
