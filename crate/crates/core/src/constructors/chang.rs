//! The Chang MV-algebra: `Fin(n) = n·ε` and `Cofin(n) = 1 - n·ε`.

use rand::RngCore;

use crate::algebra::{Algebra, AlgebraKind, ChangValue, Element, EmvStructure, LexPair};

#[derive(Clone, Debug, Default)]
pub struct Chang;

pub fn chang_algebra() -> Algebra {
    Algebra::new(AlgebraKind::Chang(Chang))
}

pub fn fin(n: u64) -> Element {
    Element::Lex(LexPair::fin(n))
}

pub fn cofin(n: u64) -> Element {
    Element::Lex(LexPair::cofin(n))
}

fn val(x: &Element) -> ChangValue {
    match x {
        Element::Lex(p) => p.value(),
        other => panic!("Chang algebra received foreign element {other:?}"),
    }
}

fn lex(v: ChangValue) -> Element {
    Element::Lex(v.into())
}

impl Chang {
    pub fn neg(&self, x: &Element) -> Element {
        match val(x) {
            ChangValue::Fin(n) => cofin(n),
            ChangValue::Cofin(n) => fin(n),
        }
    }
}

impl EmvStructure for Chang {
    fn family(&self) -> String {
        "chang".into()
    }
    fn contains(&self, x: &Element) -> bool {
        matches!(x, Element::Lex(p) if {
            let (u, e) = p.coordinates();
            (u == 0 && e >= 0) || (u == 1 && e <= 0)
        })
    }
    fn zero(&self) -> Element {
        fin(0)
    }
    fn top(&self) -> Option<Element> {
        Some(cofin(0))
    }
    fn oplus(&self, x: &Element, y: &Element) -> Element {
        use ChangValue::*;
        lex(match (val(x), val(y)) {
            (Fin(a), Fin(b)) => Fin(a.saturating_add(b)),
            (Fin(a), Cofin(b)) | (Cofin(b), Fin(a)) => Cofin(b.saturating_sub(a)),
            (Cofin(_), Cofin(_)) => Cofin(0),
        })
    }
    fn join(&self, x: &Element, y: &Element) -> Element {
        x.max(y).clone()
    }
    fn meet(&self, x: &Element, y: &Element) -> Element {
        x.min(y).clone()
    }
    fn lambda(&self, b: &Element, x: &Element) -> Element {
        if *b == fin(0) {
            fin(0)
        } else {
            self.neg(x)
        }
    }
    fn least_idempotent_above(&self, x: &Element) -> Element {
        if *x == fin(0) {
            fin(0)
        } else {
            cofin(0)
        }
    }
    fn elements(&self) -> Option<Vec<Element>> {
        None
    }
    fn idempotent_family(&self) -> Vec<Element> {
        vec![fin(0), cofin(0)]
    }
    fn label(&self, x: &Element) -> String {
        match x {
            Element::Lex(p) => p.value().to_string(),
            other => format!("{other:?}"),
        }
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Element {
        let n = rng.next_u64() % 16;
        if rng.next_u32() % 2 == 0 {
            fin(n)
        } else {
            cofin(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let c = chang_algebra();
        assert_eq!(c.oplus(&fin(1), &fin(2)), fin(3));
        assert_eq!(c.top(), Some(cofin(0)));
        assert_eq!(c.lambda(&cofin(0), &fin(4)), cofin(4));
        assert_eq!(c.oplus(&fin(2), &cofin(5)), cofin(3));
        assert_eq!(c.oplus(&fin(7), &cofin(5)), cofin(0));
        assert!(c.leq(&fin(1000), &cofin(1000)));
        assert!(c.leq(&cofin(3), &cofin(2)));
    }

    #[test]
    fn only_two_idempotents() {
        let c = chang_algebra();
        for n in 0..50 {
            assert_eq!(c.is_idempotent(&fin(n)), n == 0);
            assert_eq!(c.is_idempotent(&cofin(n)), n == 0);
        }
    }
}
