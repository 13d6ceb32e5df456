//! Acceptance suite: one line per criterion, process fails if any is red.
//!
//! `EMV_ACCEPTANCE_FULL=1` additionally runs the all-pairs completion check
//! on the 8-coordinate truncation of Σ chain(3) (about 1.7e10 pairs).

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use emv_core::algebra::axioms::check_axioms;
use emv_core::algebra::element::{plain, star};
use emv_core::algebra::finite::FiniteAlgebra;
use emv_core::constructors::clan::ClanSpec;
use emv_core::constructors::{
    boolean, clan_from_table, direct_sum_of, finite_mv_from_tables, gamma_zk, lukasiewicz_chain, product, subalgebra,
    trivial,
};
use emv_core::filters::{filter_of_ideal, find_maximal_ideal, grow_maximal_filter, ideal_of_filter};
use emv_core::ideals::{
    all_ideals, classify_ideal, congruent, maximal_ideals, pseudo_complement,
    pseudo_complement_decomposed, quotient, radical, IdealView,
};
use emv_core::represent::{completion_of_ideal, mv_completion, verify_maximal_embedding};
use emv_core::states::{boolean_states, evaluate, extend_boolean_state, general_comparability, state_morphisms};
use emv_core::variety::{parse_equation, satisfies, Satisfaction};
use emv_core::{Algebra, Element, EmvError, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// pinned budgets and sample sizes
const AXIOM_BUDGET: Duration = Duration::from_secs(5);
const CONGRUENCE_BUDGET: Duration = Duration::from_secs(30);
const BROUWER_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_PAIRS: usize = 10_000;
const EMBEDDING_SAMPLES: usize = 10_000;
const TRUNCATION_RANDOM_PAIRS: usize = 1_000_000;
const SEED: u64 = 0x5eed;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn chain(n: usize) -> Algebra {
    lukasiewicz_chain(n).unwrap()
}

fn prod(ns: &[usize]) -> Algebra {
    product(&ns.iter().map(|&n| chain(n)).collect::<Vec<_>>()).unwrap()
}

fn chain_product_shapes(max: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, size: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let start = cur.last().copied().unwrap_or(1);
        for n in start..max {
            if size * (n + 1) <= max {
                cur.push(n);
                rec(cur, size * (n + 1), max, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 1, max, &mut out);
    out
}

/// Every finite algebra the suite knows about, up to `max` elements.
fn corpus(max: usize) -> Vec<Algebra> {
    let mut out = vec![trivial()];
    out.extend((1..max.min(11)).map(chain));
    out.extend((1..=6).filter(|k| 1usize << k <= max).map(boolean));
    out.extend(chain_product_shapes(max).into_iter().filter(|s| s.len() > 1).map(|s| prod(&s)));
    if max >= 12 {
        out.push(gamma_zk(2, &[2, 3]).unwrap());
        let p = prod(&[3, 2]);
        for i in all_ideals(&p).unwrap() {
            out.push(quotient(&p, &i).unwrap().algebra);
        }
    }
    if max >= 5 {
        out.push(subalgebra(&chain(4), &[2]).unwrap().0);
    }
    if max >= 9 {
        let omega = vec!["p".to_string(), "q".to_string()];
        let vals: Vec<Vec<Rational>> = (0..3)
            .flat_map(|i| (0..3).map(move |j| vec![Rational::new(i, 2), Rational::new(j, 2)]))
            .collect();
        out.push(clan_from_table(&ClanSpec::from_values(omega, &vals)).unwrap().algebra);
    }
    out.retain(|a| a.as_finite().unwrap().size() <= max);
    out
}

// --- oracles over the raw tables -------------------------------------------

struct Tables<'a> {
    f: &'a FiniteAlgebra,
    n: usize,
    top: usize,
}

impl<'a> Tables<'a> {
    fn new(a: &'a Algebra) -> Self {
        let f = a.as_finite().unwrap();
        Tables { f, n: f.size(), top: f.top_index() }
    }
    fn op(&self, x: usize, y: usize) -> usize {
        self.f.op(x, y)
    }
    fn le(&self, x: usize, y: usize) -> bool {
        self.f.op(self.f.neg_of(x), y) == self.top
    }
    fn meet(&self, x: usize, y: usize) -> usize {
        // greatest common lower bound by scanning
        let lows: Vec<usize> = (0..self.n).filter(|&z| self.le(z, x) && self.le(z, y)).collect();
        *lows.iter().find(|&&z| lows.iter().all(|&w| self.le(w, z))).unwrap()
    }
    fn join(&self, x: usize, y: usize) -> usize {
        let ups: Vec<usize> = (0..self.n).filter(|&z| self.le(x, z) && self.le(y, z)).collect();
        *ups.iter().find(|&&z| ups.iter().all(|&w| self.le(z, w))).unwrap()
    }
    fn lambda(&self, b: usize, x: usize) -> usize {
        let c: Vec<usize> = (0..self.n).filter(|&z| self.le(z, b) && self.op(x, z) == b).collect();
        *c.iter().find(|&&z| c.iter().all(|&w| self.le(z, w))).unwrap()
    }
    fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.op(e, e) == e).collect()
    }
    fn down(&self, x: usize) -> u64 {
        (0..self.n).filter(|&y| self.le(y, x)).fold(0, |m, y| m | 1 << y)
    }
    fn closed_under_sum(&self, m: u64) -> bool {
        (0..self.n).all(|x| m & 1 << x == 0 || (0..self.n).all(|y| m & 1 << y == 0 || m & 1 << self.op(x, y) != 0))
    }
    /// Ideals by the downset scan: a finite ideal is the principal downset of
    /// the sum of its members, so it suffices to test each `↓x`.
    fn ideals(&self) -> Vec<u64> {
        let mut v: Vec<u64> = (0..self.n).map(|x| self.down(x)).filter(|&m| self.closed_under_sum(m)).collect();
        v.sort_by_key(|m| (m.count_ones(), *m));
        v.dedup();
        v
    }
    fn ideal_closure(&self, mut m: u64) -> u64 {
        m |= 1 << self.f.zero_index();
        loop {
            let mut next = m;
            for x in (0..self.n).filter(|&x| m & 1 << x != 0) {
                next |= self.down(x);
                for y in (0..self.n).filter(|&y| m & 1 << y != 0) {
                    next |= 1 << self.op(x, y);
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    }
    fn maximal_ideals(&self) -> Vec<u64> {
        let all = self.ideals();
        let full = u64::MAX >> (64 - self.n);
        let proper: Vec<u64> = all.into_iter().filter(|&m| m != full).collect();
        proper
            .iter()
            .copied()
            .filter(|&m| !proper.iter().any(|&j| j != m && j & m == m))
            .collect()
    }
}

fn mask_of(i: &IdealView) -> u64 {
    i.members().unwrap().into_iter().fold(0, |m, x| m | 1 << x)
}

// --- criteria -----------------------------------------------------------------

fn c1_axioms() -> Check {
    let t = Instant::now();
    let mut count = 0;
    let mut algebras: Vec<Algebra> = (1..=10).map(chain).collect();
    algebras.extend(chain_product_shapes(64).into_iter().map(|s| prod(&s)));
    algebras.extend((1..=6).map(boolean));
    for a in &algebras {
        check_axioms(a.as_finite().unwrap()).map_err(|v| format!("{}: {v}", a.family()))?;
        count += 1;
    }
    // fault injection: (algebra, corruption, expected axiom, witness predicate)
    let mut faults = 0;
    let base = chain(2).as_finite().unwrap().to_tables();
    let mut t1 = base.clone();
    t1.neg_table[1] = 2;
    let mut t2 = chain(3).as_finite().unwrap().to_tables();
    t2.oplus_table[1][2] = 1;
    let mut t3 = chain(3).as_finite().unwrap().to_tables();
    t3.oplus_table[1][3] = 2;
    t3.oplus_table[3][1] = 2;
    let mut t4 = prod(&[1, 1]).as_finite().unwrap().to_tables();
    t4.neg_table.swap(1, 2);
    for (tab, axiom) in [
        (t1, "negation is an involution"),
        (t2, "⊕ is commutative"),
        (t3, "x ⊕ top = top"),
        (t4, "(x'⊕y)'⊕y = (y'⊕x)'⊕x"),
    ] {
        let a = finite_mv_from_tables(&tab, false).unwrap();
        let f = a.as_finite().unwrap();
        let v = check_axioms(f).err().ok_or_else(|| format!("corrupted table for `{axiom}` passed"))?;
        ensure(v.axiom == axiom, || format!("expected `{axiom}`, got {v}"))?;
        let w: Vec<usize> = v.witness.iter().map(|l| f.index_of_label(l).unwrap()).collect();
        let op = |x: usize, y: usize| tab.oplus_table[x][y];
        let neg = |x: usize| tab.neg_table[x];
        let exhibits = match axiom {
            "negation is an involution" => neg(neg(w[0])) != w[0],
            "⊕ is commutative" => op(w[0], w[1]) != op(w[1], w[0]),
            "x ⊕ top = top" => op(w[0], tab.top_index) != tab.top_index,
            _ => op(neg(op(neg(w[0]), w[1])), w[1]) != op(neg(op(neg(w[1]), w[0])), w[0]),
        };
        ensure(exhibits, || format!("witness {:?} does not exhibit `{axiom}`", v.witness))?;
        faults += 1;
    }
    let el = t.elapsed();
    ensure(el < AXIOM_BUDGET, || format!("took {el:?}, budget {AXIOM_BUDGET:?}"))?;
    Ok(format!("{count} algebras pass, {faults} corrupted tables localized, {el:.2?}"))
}

fn c2_finite_top() -> Check {
    let mut n = 0;
    for a in corpus(64) {
        let f = a.as_finite().unwrap();
        if check_axioms(f).is_err() {
            continue;
        }
        let t = Tables::new(&a);
        let greatest = (0..t.n).find(|&g| (0..t.n).all(|x| t.le(x, g)));
        ensure(greatest.is_some(), || format!("{} has no greatest element", a.family()))?;
        n += 1;
    }
    Ok(format!("{n} finite algebras, each with a greatest element"))
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    rec(1, 0, &mut cur, &mut out);
    out
}

fn c3_congruences() -> Check {
    let t0 = Instant::now();
    let mut n_alg = 0;
    for a in corpus(6) {
        let t = Tables::new(&a);
        let idem = t.idempotents();
        let cons: Vec<Vec<usize>> = set_partitions(t.n)
            .into_iter()
            .filter(|c| {
                (0..t.n).all(|x| {
                    (0..t.n).filter(|&y| c[x] == c[y]).all(|y| {
                        (0..t.n).all(|z| {
                            c[t.op(x, z)] == c[t.op(y, z)]
                                && c[t.join(x, z)] == c[t.join(y, z)]
                                && c[t.meet(x, z)] == c[t.meet(y, z)]
                        }) && idem
                            .iter()
                            .all(|&b| !(t.le(x, b) && t.le(y, b)) || c[t.lambda(b, x)] == c[t.lambda(b, y)])
                    })
                })
            })
            .collect();
        let ideals = all_ideals(&a).map_err(|e| e.to_string())?;
        ensure(ideals.len() == cons.len(), || {
            format!("{}: {} ideals vs {} congruences", a.family(), ideals.len(), cons.len())
        })?;
        let zero = a.as_finite().unwrap().zero_index();
        for c in &cons {
            let zc: Vec<usize> = (0..t.n).filter(|&x| c[x] == c[zero]).collect();
            let i = IdealView::from_indices(&a, &zc).map_err(|e| e.to_string())?;
            for x in 0..t.n {
                for y in 0..t.n {
                    ensure(congruent(&i, &Element::Index(x), &Element::Index(y)) == (c[x] == c[y]), || {
                        format!("{}: θ of 0/θ differs at ({x},{y})", a.family())
                    })?;
                }
            }
        }
        for i in &ideals {
            let zc: u64 = (0..t.n)
                .filter(|&x| congruent(i, &Element::Index(x), &Element::Index(zero)))
                .fold(0, |m, x| m | 1 << x);
            ensure(zc == mask_of(i), || format!("{}: 0/θ_I ≠ I", a.family()))?;
        }
        n_alg += 1;
    }
    let el = t0.elapsed();
    ensure(el < CONGRUENCE_BUDGET, || format!("took {el:?}"))?;
    Ok(format!("{n_alg} algebras, ideal and congruence counts agree, {el:.2?}"))
}

fn c4_states() -> Check {
    let mut n = 0;
    for s in chain_product_shapes(64) {
        let a = prod(&s);
        let t = Tables::new(&a);
        let oracle = t.maximal_ideals();
        let got: Vec<u64> = maximal_ideals(&a).unwrap().listed().unwrap().iter().map(mask_of).collect();
        let (mut o, mut g) = (oracle.clone(), got.clone());
        o.sort();
        g.sort();
        ensure(o == g, || format!("{}: maximal ideals differ from the downset scan", a.family()))?;
        ensure(g.len() == s.len(), || format!("{}: {} maximal ideals", a.family(), g.len()))?;
        let states = state_morphisms(&a).unwrap();
        ensure(states.len() == s.len(), || format!("{}: {} states", a.family(), states.len()))?;
        let rows: Vec<Vec<Rational>> = states
            .iter()
            .map(|st| (0..t.n).map(|x| evaluate(st, &Element::Index(x))).collect())
            .collect();
        for (i, st) in states.iter().enumerate() {
            let zero_set: u64 = (0..t.n).filter(|&x| rows[i][x] == Rational::from_integer(0)).fold(0, |m, x| m | 1 << x);
            ensure(zero_set == mask_of(st.kernel()), || format!("{}: kernel mismatch", a.family()))?;
            for j in 0..i {
                ensure(rows[i] != rows[j], || format!("{}: two kernels share a state", a.family()))?;
            }
        }
        n += 1;
    }
    Ok(format!("{n} products of chains"))
}

fn c5_radical() -> Check {
    let mut n = 0;
    for a in corpus(64) {
        let t = Tables::new(&a);
        let (inter, rad) = radical(&a).map_err(|e| e.to_string())?;
        let maxi = t.maximal_ideals();
        let zero = 1u64 << a.as_finite().unwrap().zero_index();
        let oracle_inter = if maxi.is_empty() { zero } else { maxi.iter().fold(u64::MAX, |m, i| m & i) };
        let idem = t.idempotents();
        let oracle_rad = (0..t.n)
            .filter(|&x| {
                x == a.as_finite().unwrap().zero_index()
                    || idem.iter().any(|&e| {
                        t.le(x, e) && {
                            let l = t.lambda(e, x);
                            let mut acc = x;
                            (1..=t.n).all(|_| {
                                let ok = t.le(acc, l);
                                acc = t.op(acc, x);
                                ok
                            })
                        }
                    })
            })
            .fold(0, |m, x| m | 1 << x);
        ensure(mask_of(&inter) == oracle_inter, || format!("{}: ⋂MaxI differs", a.family()))?;
        ensure(mask_of(&rad) == oracle_rad, || format!("{}: radical set differs", a.family()))?;
        ensure(oracle_rad == oracle_inter, || format!("{}: radical ≠ ⋂MaxI", a.family()))?;
        ensure(oracle_inter == zero, || format!("{}: not semisimple", a.family()))?;
        n += 1;
    }
    Ok(format!("{n} algebras, radical = ⋂MaxI = {{0}}"))
}

fn random_sum_element(a: &Algebra, rng: &mut ChaCha8Rng, width: usize, top: usize) -> Element {
    let mut m = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=width) {
        m.insert(rng.gen_range(0..width), rng.gen_range(0..=top));
    }
    a.as_direct_sum().unwrap().element(&m.into_iter().collect::<Vec<_>>()).unwrap()
}

fn c6_cover_independence() -> Check {
    let m = direct_sum_of(chain(3));
    let ds = m.as_direct_sum().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_PAIRS {
        let x = random_sum_element(&m, &mut rng, 12, 3);
        let y = random_sum_element(&m, &mut rng, 12, 3);
        let c1 = m.least_idempotent_above(&m.join(&x, &y));
        let c2 = m.join(&c1, &ds.prefix_top(12 + rng.gen_range(1..6)));
        ensure(c1 != c2, || "covers coincide".into())?;
        ensure(m.odot_with(&c1, &x, &y) == m.odot_with(&c2, &x, &y), || {
            format!("⊙ depends on the cover at ({}, {})", m.label(&x), m.label(&y))
        })?;
    }
    for _ in 0..RANDOM_PAIRS {
        let a = m.least_idempotent_above(&random_sum_element(&m, &mut rng, 10, 3));
        let b = m.join(&a, &m.least_idempotent_above(&random_sum_element(&m, &mut rng, 14, 3)));
        let x = m.meet(&random_sum_element(&m, &mut rng, 10, 3), &a);
        let (la, lb, lba) = (m.lambda(&a, &x), m.lambda(&b, &x), m.lambda(&b, &a));
        ensure(la == m.meet(&lb, &a), || "λ_a(x) ≠ λ_b(x) ∧ a".into())?;
        ensure(lb == m.oplus(&la, &lba), || "λ_b(x) ≠ λ_a(x) ⊕ λ_b(a)".into())?;
        ensure(m.leq(&la, &lb), || "λ_a(x) ≰ λ_b(x)".into())?;
        ensure(m.is_idempotent(&lba), || "λ_b(a) not idempotent".into())?;
    }
    Ok(format!("{RANDOM_PAIRS} pairs with two covers, {RANDOM_PAIRS} λ triples"))
}

fn c7_brouwer() -> Check {
    let t0 = Instant::now();
    let mut n = 0;
    for a in corpus(16) {
        let t = Tables::new(&a);
        let ideals = t.ideals();
        let k = ideals.len();
        let index: HashMap<u64, usize> = ideals.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let join: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| index[&t.ideal_closure(ideals[i] | ideals[j])]).collect())
            .collect();
        let meet = |i: usize, j: usize| index[&(ideals[i] & ideals[j])];
        let zero = index[&(1u64 << a.as_finite().unwrap().zero_index())];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    ensure(meet(i, join[j][l]) == join[meet(i, j)][meet(i, l)], || {
                        format!("{}: not distributive", a.family())
                    })?;
                }
            }
        }
        // every family of ideals: sup over subsets by subset DP
        let families = 1usize << k;
        let mut sup = vec![zero; families];
        for s in 1..families {
            let low = s.trailing_zeros() as usize;
            sup[s] = join[sup[s & (s - 1)]][low];
        }
        for i in 0..k {
            let mut rhs = vec![zero; families];
            for s in 1..families {
                let low = s.trailing_zeros() as usize;
                rhs[s] = join[rhs[s & (s - 1)]][meet(i, low)];
                ensure(meet(i, sup[s]) == rhs[s], || format!("{}: I∧⋁J ≠ ⋁(I∧J)", a.family()))?;
            }
        }
        // pseudo-complements
        let lib = all_ideals(&a).unwrap();
        for iv in &lib {
            let im = mask_of(iv);
            let by_def: u64 = (0..t.n)
                .filter(|&x| (0..t.n).filter(|&y| im & 1 << y != 0).all(|y| t.meet(x, y) == a.as_finite().unwrap().zero_index()))
                .fold(0, |m, x| m | 1 << x);
            let largest = ideals
                .iter()
                .copied()
                .filter(|&j| j & im == 1 << a.as_finite().unwrap().zero_index())
                .max_by_key(|j| j.count_ones())
                .unwrap();
            let p = mask_of(&pseudo_complement(iv).unwrap());
            let d = mask_of(&pseudo_complement_decomposed(iv, &lib).unwrap());
            ensure(p == by_def && p == largest && d == p, || format!("{}: I⊥ mismatch", a.family()))?;
        }
        n += 1;
    }
    let el = t0.elapsed();
    ensure(el < BROUWER_BUDGET, || format!("took {el:?}"))?;
    Ok(format!("{n} algebras, all ideal families, {el:.2?}"))
}

/// Checks ⊕, ∨, ∧ of `N₀(Σ chain(n))` restricted to coordinates `< k`
/// against `Γ(ℤ^{k+1}, (n,…,n,1))`. With `random = Some(r)` only `r`
/// random pairs are compared; otherwise all pairs.
fn truncation_check(n: usize, k: usize, random: Option<usize>) -> Result<u64, String> {
    let m = direct_sum_of(chain(n));
    let c = mv_completion(&m).unwrap();
    let ds = m.as_direct_sum().unwrap();
    let mut u = vec![n as i64; k];
    u.push(1);
    let decode = |code: usize| -> (Vec<i64>, Element) {
        let mut v = Vec::with_capacity(k + 1);
        let mut r = code;
        for _ in 0..k {
            v.push((r % (n + 1)) as i64);
            r /= n + 1;
        }
        v.push(r as i64);
        let is_star = v[k] == 1;
        let pairs: Vec<(usize, usize)> =
            (0..k).map(|i| (i, if is_star { n - v[i] as usize } else { v[i] as usize })).collect();
        let base = ds.element(&pairs).unwrap();
        (v, if is_star { star(base) } else { plain(base) })
    };
    let to_vec = |x: &Element| -> Vec<i64> {
        let Element::Tagged(t) = x else { unreachable!() };
        let sm = ds.support_map(t.inner());
        let mut v: Vec<i64> = (0..k).map(|i| sm.get(i).unwrap_or(0) as i64).collect();
        if t.is_star() {
            v.iter_mut().for_each(|c| *c = n as i64 - *c);
            v.push(1);
        } else {
            v.push(0);
        }
        v
    };
    let total = 2 * (n + 1).pow(k as u32);
    let compare = |i: usize, j: usize| -> Result<(), String> {
        let ((xv, x), (yv, y)) = (decode(i), decode(j));
        let s: Vec<i64> = xv.iter().zip(&yv).zip(&u).map(|((a, b), u)| (a + b).min(*u)).collect();
        let jn: Vec<i64> = xv.iter().zip(&yv).map(|(a, b)| *a.max(b)).collect();
        let mt: Vec<i64> = xv.iter().zip(&yv).map(|(a, b)| *a.min(b)).collect();
        if to_vec(&c.oplus(&x, &y)) != s || to_vec(&c.join(&x, &y)) != jn || to_vec(&c.meet(&x, &y)) != mt {
            return Err(format!("mismatch at ({}, {})", c.label(&x), c.label(&y)));
        }
        Ok(())
    };
    let mut count = 0u64;
    match random {
        Some(r) => {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ k as u64);
            for _ in 0..r {
                compare(rng.gen_range(0..total), rng.gen_range(0..total))?;
                count += 1;
            }
        }
        None => {
            for i in 0..total {
                for j in 0..total {
                    compare(i, j)?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn c8_completion() -> Check {
    for n in [1, 3] {
        let c = mv_completion(&direct_sum_of(chain(n))).unwrap();
        let rep = verify_maximal_embedding(&c, EMBEDDING_SAMPLES, SEED).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("Σ chain({n}): {:?}", rep.failures))?;
    }
    let p1 = truncation_check(1, 8, None)?;
    let p3_small = truncation_check(3, 4, None)?;
    let p3_rand = truncation_check(3, 8, Some(TRUNCATION_RANDOM_PAIRS))?;
    let ran = format!(
        "embedding {EMBEDDING_SAMPLES} samples x2 ok; Σchain(1) k=8 all {p1} pairs ok; \
         Σchain(3) k=4 all {p3_small} pairs ok; Σchain(3) k=8 {p3_rand} random pairs ok"
    );
    if std::env::var_os("EMV_ACCEPTANCE_FULL").is_some() {
        let p3 = truncation_check(3, 8, None)?;
        return Ok(format!("{ran}; Σchain(3) k=8 all {p3} pairs ok"));
    }
    Err(format!(
        "{ran}; NOT RUN: all pairs on the 8-coordinate Σchain(3) truncation \
         (1.7e10 pairs, about a day on one core; set EMV_ACCEPTANCE_FULL=1)"
    ))
}

fn c9_chang() -> Check {
    let ch = emv_core::constructors::chang_algebra();
    let i = maximal_ideals(&ch).unwrap().first().unwrap();
    let w = emv_core::ideals::enough_idempotents(&i).err().ok_or("Chang infinitesimals have enough idempotents")?;
    match completion_of_ideal(&i) {
        Err(EmvError::UnsupportedFamily { deficiency: Some(d), .. }) => {
            ensure(d == ch.label(&w), || format!("deficiency {d} vs witness {}", ch.label(&w)))?;
            // the witness really has no idempotent of the ideal above it
            ensure(!ch.is_idempotent(&w) && w != ch.zero(), || "witness is idempotent".into())?;
            let lia = ch.least_idempotent_above(&w);
            ensure(!i.contains(&lia), || "an idempotent of the ideal covers the witness".into())?;
            ensure(matches!(mv_completion(&ch), Err(EmvError::AlreadyMv(_))), || "chang accepted".into())?;
            Ok(format!("rejected as unsupported-family, deficiency {d}"))
        }
        other => Err(format!("unexpected {other:?}")),
    }
}

fn c10_variety() -> Check {
    let idem = parse_equation("x+x=x").unwrap();
    for k in 1..=5 {
        let a = prod(&vec![1; k]);
        ensure(satisfies(&a, &idem).unwrap().holds(), || format!("chain(1)^{k} fails x+x=x"))?;
    }
    for n in 2..=8 {
        match satisfies(&chain(n), &idem).unwrap() {
            Satisfaction::Counterexample(w) => {
                let x = chain(n).as_finite().unwrap().index_of_label(&w[0].1).unwrap();
                let t = chain(n);
                let t = Tables::new(&t);
                ensure(t.op(x, x) != x, || format!("bogus witness on chain({n})"))?;
            }
            Satisfaction::Holds => return Err(format!("chain({n}) satisfies x+x=x")),
        }
    }
    let eqs = ["x+x=x", "x*y=y*x", "x|(y&z)=(x|y)&(x|z)", "x+x+x=x+x", "(x*y)+(x&y)=x&y"];
    let bases = [boolean(2), chain(2), prod(&[1, 2]), chain(3), prod(&[2, 2])];
    let mut spot = 0;
    for e in eqs {
        // chain(1) satisfies all five, so it may serve as a second factor
        ensure(satisfies(&chain(1), &parse_equation(e).unwrap()).unwrap().holds(), || format!("chain(1) fails {e}"))?;
        let eq = parse_equation(e).unwrap();
        for a in &bases {
            if !satisfies(a, &eq).unwrap().holds() {
                continue;
            }
            let f = a.as_finite().unwrap();
            let mut derived = vec![product(&[a.clone(), chain(1)]).unwrap()];
            derived.extend((0..f.size()).map(|g| subalgebra(a, &[g]).unwrap().0));
            derived.extend(all_ideals(a).unwrap().iter().map(|i| quotient(a, i).unwrap().algebra));
            for d in derived {
                ensure(satisfies(&d, &eq).unwrap().holds(), || format!("{e} lost on {}", d.family()))?;
                spot += 1;
            }
        }
    }
    Ok(format!("x+x=x gate ok, {spot} H/S/P spot checks over 5 equations"))
}

fn c11_filters() -> Check {
    let mut n = 0;
    for a in corpus(32) {
        for m in maximal_ideals(&a).unwrap().listed().unwrap() {
            let h = grow_maximal_filter(&filter_of_ideal(m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(&ideal_of_filter(&h).unwrap() == m, || format!("{}: round trip fails", a.family()))?;
            n += 1;
        }
        if a.as_finite().unwrap().size() > 1 {
            let m = find_maximal_ideal(&a).unwrap();
            ensure(classify_ideal(&m).unwrap().maximal, || format!("{}: found ideal not maximal", a.family()))?;
        }
    }
    Ok(format!("{n} maximal ideals round-tripped"))
}

fn c12_comparability() -> Check {
    let mut n = 0;
    for s in chain_product_shapes(64) {
        let a = prod(&s);
        ensure(general_comparability(&a).unwrap(), || format!("{} lacks comparability", a.family()))?;
        for bs in boolean_states(&a).unwrap() {
            let (_, count) = extend_boolean_state(&a, &bs).unwrap();
            ensure(count == 1, || format!("{}: {count} extensions", a.family()))?;
            n += 1;
        }
    }
    Ok(format!("{n} Boolean states, each with exactly one extension"))
}

fn c13_cli() -> Check {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let alg = "chain(2)xchain(1)";
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("construct.txt", vec!["construct", "-c", alg]),
        ("axioms.txt", vec!["axioms", "-c", alg]),
        ("ideals.txt", vec!["ideals", "-c", alg]),
        ("maximal-ideals.json", vec!["maximal-ideals", "-c", alg, "--json"]),
        ("states.txt", vec!["states", "-c", alg]),
        ("quotient.txt", vec!["quotient", "-c", alg, "--gen", "(0,1)"]),
        ("complete.txt", vec!["complete", "-c", alg]),
        ("clan.txt", vec!["clan", "-c", alg]),
        ("check-eq.txt", vec!["check-eq", "-c", alg, "--eq", "x+y=y+x"]),
        ("export-hasse.dot", vec!["export", "-c", alg]),
    ];
    for (golden, args) in &cases {
        let run = || Command::new(env!("CARGO_BIN_EXE_emv")).args(args).output().unwrap().stdout;
        let (a, b) = (run(), run());
        ensure(a == b, || format!("{golden}: runs differ"))?;
        let want = std::fs::read(root.join("tests/golden").join(golden)).map_err(|e| format!("{golden}: {e}"))?;
        ensure(a == want, || format!("{golden}: differs from golden"))?;
    }
    let v: serde_json::Value = serde_json::from_slice(
        &Command::new(env!("CARGO_BIN_EXE_emv"))
            .args(["maximal-ideals", "-c", alg, "--json"])
            .output()
            .unwrap()
            .stdout,
    )
    .map_err(|e| e.to_string())?;
    ensure(v["result"]["ideals"].as_array().map(Vec::len) == Some(2), || "expected 2 maximal ideals".into())?;
    Ok(format!("{} verbs byte-identical across runs and goldens", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("axiom suite", c1_axioms),
        ("finite algebras have a top", c2_finite_top),
        ("ideal-congruence bijection", c3_congruences),
        ("maximal ideals and states", c4_states),
        ("radical", c5_radical),
        ("cover independence and λ identities", c6_cover_independence),
        ("Brouwer ideal lattice", c7_brouwer),
        ("MV-completion", c8_completion),
        ("Chang counterexample", c9_chang),
        ("variety gate", c10_variety),
        ("filter round trip", c11_filters),
        ("general comparability", c12_comparability),
        ("CLI determinism", c13_cli),
    ];
    let mut red = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let el = t.elapsed();
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{el:.1?}]", i + 1),
            Err(detail) => {
                red += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{el:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - red, criteria.len());
    if red > 0 {
        std::process::exit(1);
    }
}
