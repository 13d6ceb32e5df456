#![allow(dead_code)]

use emv_core::constructors::{boolean, gamma_zk, lukasiewicz_chain, product, subalgebra, trivial};
use emv_core::ideals::{all_ideals, quotient};
use emv_core::Algebra;

pub fn chain(n: usize) -> Algebra {
    lukasiewicz_chain(n).unwrap()
}

pub fn prod(ns: &[usize]) -> Algebra {
    product(&ns.iter().map(|&n| chain(n)).collect::<Vec<_>>()).unwrap()
}

/// Small finite algebras of every constructor family, up to `max` elements.
pub fn corpus(max: usize) -> Vec<Algebra> {
    let mut out = vec![trivial()];
    for n in 1..max {
        out.push(chain(n));
    }
    for k in 1..=6 {
        if 1 << k <= max {
            out.push(boolean(k));
        }
    }
    let shapes: &[&[usize]] = &[
        &[1, 2],
        &[2, 1],
        &[2, 2],
        &[1, 3],
        &[3, 2],
        &[1, 1, 2],
        &[2, 2, 1],
        &[4, 2],
        &[3, 3],
        &[1, 1, 1, 1, 1],
    ];
    for s in shapes {
        if s.iter().map(|n| n + 1).product::<usize>() <= max {
            out.push(prod(s));
        }
    }
    if 12 <= max {
        out.push(gamma_zk(2, &[2, 3]).unwrap());
    }
    // a proper subalgebra: {0, 2, 4} inside chain(4)
    if 5 <= max {
        out.push(subalgebra(&chain(4), &[2]).unwrap().0);
    }
    // a quotient of a product by a nontrivial ideal
    if 12 <= max {
        let p = prod(&[3, 2]);
        let i = all_ideals(&p).unwrap().into_iter().find(|i| i.len() == Some(4)).unwrap();
        out.push(quotient(&p, &i).unwrap().algebra);
    }
    out
}

/// Products of chains whose carrier has at most `max` elements.
pub fn chain_products(max: usize) -> Vec<(Vec<usize>, Algebra)> {
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
    let mut shapes = Vec::new();
    rec(&mut Vec::new(), 1, max, &mut shapes);
    shapes.into_iter().map(|s| (s.clone(), prod(&s))).collect()
}
