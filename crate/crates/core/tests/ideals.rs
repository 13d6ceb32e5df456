mod common;

use emv_core::algebra::finite::FiniteAlgebra;
use emv_core::ideals::{
    all_ideals, classify_ideal, congruent, join_ideals, maximal_ideals, meet_ideals, pseudo_complement,
    pseudo_complement_decomposed, quotient, IdealView,
};
use emv_core::Element;

fn lambda_oracle(f: &FiniteAlgebra, b: usize, x: usize) -> usize {
    // least z ≤ b with x ⊕ z = b, by scanning
    let cands: Vec<usize> = (0..f.size()).filter(|&z| f.le(z, b) && f.op(x, z) == b).collect();
    *cands.iter().find(|&&z| cands.iter().all(|&w| f.le(z, w))).unwrap()
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    // restricted growth strings
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
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
    if n == 0 {
        return vec![vec![]];
    }
    rec(1, 0, &mut cur, &mut out);
    out
}

fn brute_congruences(f: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = f.size();
    let idem: Vec<usize> = (0..n).filter(|&e| f.op(e, e) == e).collect();
    set_partitions(n)
        .into_iter()
        .filter(|cls| {
            for x in 0..n {
                for y in 0..n {
                    if cls[x] != cls[y] {
                        continue;
                    }
                    for z in 0..n {
                        if cls[f.op(x, z)] != cls[f.op(y, z)]
                            || cls[f.join_of(x, z)] != cls[f.join_of(y, z)]
                            || cls[f.meet_of(x, z)] != cls[f.meet_of(y, z)]
                        {
                            return false;
                        }
                    }
                    for &b in &idem {
                        if f.le(x, b) && f.le(y, b) && cls[lambda_oracle(f, b, x)] != cls[lambda_oracle(f, b, y)] {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .collect()
}

#[test]
fn ideals_correspond_to_congruences() {
    for a in common::corpus(6) {
        let f = a.as_finite().unwrap();
        let ideals = all_ideals(&a).unwrap();
        let cons = brute_congruences(f);
        assert_eq!(ideals.len(), cons.len(), "{}", a.family());
        for cls in &cons {
            let zero_class: Vec<usize> = (0..f.size()).filter(|&x| cls[x] == cls[f.zero_index()]).collect();
            let i = IdealView::from_indices(&a, &zero_class).unwrap();
            assert!(ideals.contains(&i));
            for x in 0..f.size() {
                for y in 0..f.size() {
                    assert_eq!(congruent(&i, &Element::Index(x), &Element::Index(y)), cls[x] == cls[y]);
                }
            }
        }
        for i in &ideals {
            let zc: Vec<usize> = (0..f.size())
                .filter(|&x| congruent(i, &Element::Index(x), &Element::Index(f.zero_index())))
                .collect();
            assert_eq!(&IdealView::from_indices(&a, &zc).unwrap(), i);
        }
    }
}

fn is_chain(f: &FiniteAlgebra) -> bool {
    (0..f.size()).all(|x| (0..f.size()).all(|y| f.le(x, y) || f.le(y, x)))
}

#[test]
fn maximal_and_prime_quotients() {
    for a in common::corpus(24) {
        for m in maximal_ideals(&a).unwrap().listed().unwrap() {
            let c = classify_ideal(m).unwrap();
            assert!(c.prime && c.proper, "{}", a.family());
            let q = quotient(&a, m).unwrap();
            assert!(is_chain(q.algebra.as_finite().unwrap()));
            assert_eq!(all_ideals(&q.algebra).unwrap().len(), 2, "quotient is simple");
        }
        for p in all_ideals(&a).unwrap() {
            if classify_ideal(&p).unwrap().prime {
                assert!(is_chain(quotient(&a, &p).unwrap().algebra.as_finite().unwrap()));
            }
        }
    }
}

#[test]
fn ideal_lattice_is_distributive() {
    for a in common::corpus(16) {
        let ideals = all_ideals(&a).unwrap();
        for i in &ideals {
            for j in &ideals {
                for k in &ideals {
                    let l = meet_ideals(i, &join_ideals(j, k).unwrap()).unwrap();
                    let r = join_ideals(&meet_ideals(i, j).unwrap(), &meet_ideals(i, k).unwrap()).unwrap();
                    assert_eq!(l, r, "{}", a.family());
                }
            }
        }
    }
}

#[test]
fn pseudo_complements_agree() {
    for a in common::corpus(16) {
        let ideals = all_ideals(&a).unwrap();
        for i in &ideals {
            let p = pseudo_complement(i).unwrap();
            assert_eq!(pseudo_complement_decomposed(i, &ideals).unwrap(), p, "{}", a.family());
            // the largest ideal meeting I only in 0
            let ib = i.bits().unwrap();
            let best = ideals
                .iter()
                .filter(|j| {
                    let mut m = j.bits().unwrap().clone();
                    m.intersect_with(ib);
                    m.count_ones(..) == 1
                })
                .max_by_key(|j| j.len())
                .unwrap();
            assert_eq!(best, &p);
        }
    }
}

fn local_ideal_closure(f: &FiniteAlgebra, b: usize, seed: &[usize]) -> Vec<bool> {
    let n = f.size();
    let mut inside = vec![false; n];
    for &s in seed {
        inside[s] = true;
    }
    inside[f.zero_index()] = true;
    loop {
        let mut changed = false;
        for x in 0..n {
            if !inside[x] {
                continue;
            }
            for y in 0..n {
                if inside[y] && !inside[f.op(x, y)] {
                    inside[f.op(x, y)] = true;
                    changed = true;
                }
                if f.le(y, x) && !inside[y] {
                    inside[y] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!((0..n).all(|x| !inside[x] || f.le(x, b)));
    inside
}

#[test]
fn maximal_ideals_restrict_to_intervals() {
    for a in common::corpus(24) {
        let f = a.as_finite().unwrap();
        let idem: Vec<usize> = f.idempotent_indices().to_vec();
        for m in maximal_ideals(&a).unwrap().listed().unwrap() {
            let mb = m.bits().unwrap();
            for &b in &idem {
                let below: Vec<usize> = (0..f.size()).filter(|&x| f.le(x, b)).collect();
                let trace: Vec<usize> = below.iter().copied().filter(|&x| mb.contains(x)).collect();
                if trace.len() == below.len() {
                    continue;
                }
                for &x in below.iter().filter(|&&x| !mb.contains(x)) {
                    let mut seed = trace.clone();
                    seed.push(x);
                    let g = local_ideal_closure(f, b, &seed);
                    assert!(g[b], "{}: adding {x} below {b} stays proper", a.family());
                }
            }
            // Boolean trace: e or its complement lies in M
            let top = f.top_index();
            for &e in &idem {
                assert!(mb.contains(e) ^ mb.contains(f.lambda_of(top, e)), "{}", a.family());
            }
        }
    }
}

#[test]
fn primes_lie_under_one_maximal() {
    for a in common::corpus(24) {
        let maxi = maximal_ideals(&a).unwrap();
        let maxi = maxi.listed().unwrap();
        for p in all_ideals(&a).unwrap() {
            if !classify_ideal(&p).unwrap().prime {
                continue;
            }
            let above = maxi
                .iter()
                .filter(|m| p.bits().unwrap().is_subset(m.bits().unwrap()))
                .count();
            assert_eq!(above, 1, "{}", a.family());
        }
    }
}

#[test]
fn maximal_ideals_match_downset_scan() {
    for (shape, a) in common::chain_products(36) {
        let f = a.as_finite().unwrap();
        let ideals = all_ideals(&a).unwrap();
        let whole = f.size();
        let oracle: Vec<&IdealView> = ideals
            .iter()
            .filter(|i| i.len() != Some(whole))
            .filter(|i| {
                !ideals
                    .iter()
                    .any(|j| j.len() != Some(whole) && j != *i && i.bits().unwrap().is_subset(j.bits().unwrap()))
            })
            .collect();
        let got = maximal_ideals(&a).unwrap();
        let got = got.listed().unwrap();
        assert_eq!(got.len(), shape.len());
        assert_eq!(got.iter().collect::<Vec<_>>(), oracle);
    }
}
