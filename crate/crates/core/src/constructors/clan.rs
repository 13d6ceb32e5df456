//! EMV-clans of rational fuzzy sets on a finite universe.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::finite::schema_tag;
use crate::algebra::{Algebra, FiniteAlgebra};
use crate::{EmvError, Rational, Result};

/// JSON form. Values are exact fractions written `"p/q"` or integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClanSpec {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub omega: Vec<String>,
    pub functions: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClanViolation {
    pub condition: String,
    pub witness: String,
}

impl fmt::Display for ClanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} fails: {}", self.condition, self.witness)
    }
}

pub type FuzzySet = Vec<Rational>;

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || EmvError::Format(format!("`{s}` is not a fraction"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_set(f: &[Rational]) -> String {
    let parts: Vec<String> = f.iter().map(|r| r.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl ClanSpec {
    pub fn from_values(omega: Vec<String>, functions: &[FuzzySet]) -> Self {
        ClanSpec {
            schema: schema_tag(),
            omega,
            functions: functions
                .iter()
                .map(|f| f.iter().map(|r| r.to_string()).collect())
                .collect(),
        }
    }

    /// Parsed, range-checked and deduplicated functions in canonical order.
    pub fn values(&self) -> Result<Vec<FuzzySet>> {
        if self.schema != "emv/1" {
            return Err(EmvError::Format(format!("unknown schema `{}`", self.schema)));
        }
        if self.omega.is_empty() {
            return Err(EmvError::Format("omega must be nonempty".into()));
        }
        let mut set = BTreeSet::new();
        for row in &self.functions {
            if row.len() != self.omega.len() {
                return Err(EmvError::Format(format!(
                    "function has {} values, omega has {} points",
                    row.len(),
                    self.omega.len()
                )));
            }
            let f = row.iter().map(|s| parse_rational(s)).collect::<Result<FuzzySet>>()?;
            if let Some(v) = f.iter().find(|v| **v < Rational::zero() || **v > Rational::one()) {
                return Err(EmvError::Format(format!("value {v} outside [0,1]")));
            }
            set.insert(f);
        }
        Ok(set.into_iter().collect())
    }
}

fn is_characteristic(f: &[Rational]) -> bool {
    f.iter().all(|v| v.is_zero() || v.is_one())
}

fn le(f: &[Rational], g: &[Rational]) -> bool {
    f.iter().zip(g).all(|(a, b)| a <= b)
}

/// Pointwise `min(f + g, 1)`.
pub fn pointwise_oplus(f: &[Rational], g: &[Rational]) -> FuzzySet {
    f.iter().zip(g).map(|(a, b)| (*a + *b).min(Rational::one())).collect()
}

/// Checks the clan conditions in order (i), (ii)(a), (ii)(b), (iii) and,
/// when `with_iv`, (iv).
pub fn check_clan(omega: &[String], t: &[FuzzySet], with_iv: bool) -> std::result::Result<(), ClanViolation> {
    let members: BTreeSet<&FuzzySet> = t.iter().collect();
    let m = omega.len();
    let viol = |c: &str, w: String| ClanViolation {
        condition: c.into(),
        witness: w,
    };
    let zero = vec![Rational::zero(); m];
    if !members.contains(&zero) {
        return Err(viol("(i)", "the zero function is missing".into()));
    }
    let chars: Vec<&FuzzySet> = t.iter().filter(|f| is_characteristic(f)).collect();
    for a in &chars {
        for f in t.iter().filter(|f| le(f, a)) {
            let d: FuzzySet = a.iter().zip(f).map(|(x, y)| *x - *y).collect();
            if !members.contains(&d) {
                return Err(viol(
                    "(ii)(a)",
                    format!("{} - {} = {} is missing", format_set(a), format_set(f), format_set(&d)),
                ));
            }
        }
    }
    for a in &chars {
        let under: Vec<&FuzzySet> = t.iter().filter(|f| le(f, a)).collect();
        for f in &under {
            for g in &under {
                let s: FuzzySet = f.iter().zip(g.iter()).zip(a.iter()).map(|((x, y), c)| (*x + *y).min(*c)).collect();
                if !members.contains(&s) {
                    return Err(viol(
                        "(ii)(b)",
                        format!("{} ⊕ {} = {} is missing", format_set(f), format_set(g), format_set(&s)),
                    ));
                }
            }
        }
    }
    for f in t {
        if !chars.iter().any(|a| le(f, a)) {
            return Err(viol("(iii)", format!("no characteristic function covers {}", format_set(f))));
        }
    }
    if with_iv {
        for (k, w) in omega.iter().enumerate() {
            if !t.iter().any(|f| f[k].is_one()) {
                return Err(viol("(iv)", format!("no function takes the value 1 at {w}")));
            }
        }
    }
    Ok(())
}

/// A validated finite EMV-clan with its table algebra.
#[derive(Clone, Debug)]
pub struct Clan {
    pub omega: Vec<String>,
    pub functions: Vec<FuzzySet>,
    pub algebra: Algebra,
}

pub fn clan_from_table(spec: &ClanSpec) -> Result<Clan> {
    let t = spec.values()?;
    check_clan(&spec.omega, &t, true).map_err(EmvError::Clan)?;
    clan_algebra(&spec.omega, t)
}

pub(crate) fn clan_algebra(omega: &[String], t: Vec<FuzzySet>) -> Result<Clan> {
    let n = t.len();
    let index: HashMap<&FuzzySet, usize> = t.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let top_f: FuzzySet = (0..omega.len())
        .map(|k| t.iter().map(|f| f[k]).max().unwrap_or_else(Rational::zero))
        .collect();
    let top = *index.get(&top_f).ok_or_else(|| {
        EmvError::Clan(ClanViolation {
            condition: "(ii)(b)".into(),
            witness: format!("the pointwise supremum {} is missing", format_set(&top_f)),
        })
    })?;
    let mut oplus = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let s = pointwise_oplus(&t[x], &t[y]);
            oplus[x * n + y] = *index.get(&s).ok_or_else(|| {
                EmvError::Clan(ClanViolation {
                    condition: "(ii)(b)".into(),
                    witness: format!("{} has no common cover with {}", format_set(&t[x]), format_set(&t[y])),
                })
            })?;
        }
    }
    let mut neg = vec![0; n];
    for x in 0..n {
        let c: FuzzySet = top_f.iter().zip(&t[x]).map(|(a, b)| *a - *b).collect();
        neg[x] = index[&c];
    }
    let zero = index[&vec![Rational::zero(); omega.len()]];
    let labels = t.iter().map(|f| format_set(f)).collect();
    let fin = FiniteAlgebra::from_raw("clan", oplus, neg, zero, top, Some(labels))?;
    Ok(Clan {
        omega: omega.to_vec(),
        functions: t,
        algebra: Algebra::from_finite(fin),
    })
}
