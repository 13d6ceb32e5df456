use std::process::ExitCode;

use emv_core::algebra::axioms::{check_axioms, check_axioms_sampled};
use emv_core::constructors::clan::check_clan;
use emv_core::constructors::{clan_from_table, construct as build, direct_sum, finite_mv_from_tables, ClanSpec, DirectSumSpec};
use emv_core::algebra::finite::{FiniteAlgebra, FiniteMVTables};
use emv_core::ideals::{all_ideals, classify_ideal, generated_ideal, quotient as quotient_by, IdealView};
use emv_core::represent::{completion_of_ideal, minimal_clan, mv_completion, verify_maximal_embedding};
use emv_core::states::{clan_representation, evaluate, state_morphisms};
use emv_core::variety::{parse_equation, satisfies_bounded, Satisfaction};
use emv_core::{Algebra, Element, EmvError};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{dot, Diagram, Format, Sampling, Source};

/// Sampled checks are split into this many independently seeded chunks, so
/// results do not depend on the thread count.
const CHUNKS: u64 = 8;

pub struct Report {
    verb: &'static str,
    family: String,
    ok: bool,
    text: String,
    result: Value,
    /// Printed verbatim instead of the report when `--json` is off.
    raw: Option<String>,
}

pub enum Failure {
    Usage(&'static str, String),
    Analysis(&'static str, EmvError),
}

pub type Outcome = Result<Report, Failure>;

fn is_usage(e: &EmvError) -> bool {
    matches!(
        e,
        EmvError::Parse { .. }
            | EmvError::InvalidConstructor(_)
            | EmvError::Format(_)
            | EmvError::DomainMismatch(..)
            | EmvError::UnboundVariable(_)
    )
}

fn fail(verb: &'static str) -> impl Fn(EmvError) -> Failure {
    move |e| {
        if is_usage(&e) {
            Failure::Usage(verb, e.to_string())
        } else {
            Failure::Analysis(verb, e)
        }
    }
}

fn error_kind(e: &EmvError) -> &'static str {
    match e {
        EmvError::Axioms(_) => "axioms",
        EmvError::Clan(_) => "clan",
        EmvError::AlreadyMv(_) => "already-mv",
        EmvError::UnsupportedFamily { .. } => "unsupported-family",
        EmvError::Capability { .. } => "capability",
        EmvError::SizeBound { .. } => "size-bound",
        EmvError::NotSemisimple(_) => "not-semisimple",
        EmvError::NotAnIdeal(_) | EmvError::NotAFilter(_) | EmvError::NotPrime(_) | EmvError::NotMaximal(_) => {
            "classification"
        }
        _ => "error",
    }
}

pub fn emit(src: &Source, outcome: Outcome) -> ExitCode {
    match outcome {
        Ok(r) => {
            if src.json {
                let v = json!({
                    "schema": "emv/1",
                    "verb": r.verb,
                    "algebra": r.family,
                    "ok": r.ok,
                    "result": r.result,
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else if let Some(raw) = r.raw {
                print!("{raw}");
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(verb, msg)) => {
            eprintln!("emv {verb}: {msg}");
            eprintln!("usage: emv {verb} (--construct EXPR | --input FILE) [--json] [options]; see `emv {verb} --help`");
            ExitCode::from(2)
        }
        Err(Failure::Analysis(verb, e)) => {
            if src.json {
                let mut err = json!({ "kind": error_kind(&e), "message": e.to_string() });
                if let EmvError::UnsupportedFamily { deficiency: Some(d), .. } = &e {
                    err["deficiency"] = json!(d);
                }
                if let EmvError::Axioms(v) = &e {
                    err["axiom"] = json!(v.axiom);
                    err["witness"] = json!(v.witness);
                }
                let v = json!({ "schema": "emv/1", "verb": verb, "ok": false, "error": err });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                println!("{verb}: {e}");
            }
            ExitCode::from(1)
        }
    }
}

enum Loaded {
    Algebra(Algebra),
    Clan(ClanSpec),
}

fn load_any(verb: &'static str, src: &Source, validate: bool) -> Result<Loaded, Failure> {
    let f = fail(verb);
    match (&src.construct, &src.input) {
        (Some(expr), None) => build(expr).map(Loaded::Algebra).map_err(f),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(verb, format!("cannot read {}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(verb, format!("{}: invalid JSON: {e}", path.display())))?;
            if let Some(s) = v.get("schema").and_then(Value::as_str) {
                if s != "emv/1" {
                    return Err(Failure::Usage(verb, format!("unsupported schema `{s}`")));
                }
            }
            let bad = |e: serde_json::Error| Failure::Usage(verb, format!("{}: {e}", path.display()));
            if v.get("oplus_table").is_some() {
                let t: FiniteMVTables = serde_json::from_value(v).map_err(bad)?;
                finite_mv_from_tables(&t, validate).map(Loaded::Algebra).map_err(f)
            } else if v.get("index_domain").is_some() {
                let s: DirectSumSpec = serde_json::from_value(v).map_err(bad)?;
                direct_sum(&s).map(Loaded::Algebra).map_err(f)
            } else if v.get("omega").is_some() {
                Ok(Loaded::Clan(serde_json::from_value(v).map_err(bad)?))
            } else {
                Err(Failure::Usage(
                    verb,
                    "input must contain operation tables, a direct-sum description or a clan table".into(),
                ))
            }
        }
        _ => Err(Failure::Usage(verb, "exactly one of --construct or --input is required".into())),
    }
}

fn load(verb: &'static str, src: &Source, validate: bool) -> Result<Algebra, Failure> {
    match load_any(verb, src, validate)? {
        Loaded::Algebra(a) => Ok(a),
        Loaded::Clan(spec) => clan_from_table(&spec).map(|c| c.algebra).map_err(fail(verb)),
    }
}

fn labels(f: &FiniteAlgebra, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| f.label_of(x).to_string()).collect()
}

fn braces(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

fn report(verb: &'static str, a: &Algebra, ok: bool, text: String, result: Value) -> Report {
    Report {
        verb,
        family: a.family(),
        ok,
        text,
        result,
        raw: None,
    }
}

fn chunk_sizes(samples: usize) -> Vec<(u64, usize)> {
    let c = CHUNKS as usize;
    (0..CHUNKS)
        .map(|i| (i, samples / c + usize::from((i as usize) < samples % c)))
        .collect()
}

pub fn construct(src: &Source) -> Outcome {
    let a = load("construct", src, true)?;
    let mut text = format!("algebra: {}\n", a.family());
    let result = match a.as_finite() {
        Some(f) => {
            let els = labels(f, 0..f.size());
            let idem = labels(f, f.idempotent_indices().iter().copied());
            text += &format!("size: {}\nelements: {}\nidempotents: {}\ntop: {}\n",
                f.size(), braces(&els), braces(&idem), f.label_of(f.top_index()));
            json!({
                "finite": true,
                "size": f.size(),
                "has_top": true,
                "elements": els,
                "idempotents": idem,
                "tables": f.to_tables(),
            })
        }
        None => {
            let idem: Vec<String> = a.idempotent_family().iter().map(|e| a.label(e)).collect();
            text += &format!("size: infinite\ngreatest element: {}\nsample idempotents: {}\n",
                if a.has_top() { "yes" } else { "no" }, braces(&idem));
            json!({
                "finite": false,
                "size": null,
                "has_top": a.has_top(),
                "idempotents": idem,
            })
        }
    };
    Ok(report("construct", &a, true, text, result))
}

pub fn axioms(src: &Source, s: &Sampling) -> Outcome {
    let a = load("axioms", src, false)?;
    let (mode, outcome) = match a.as_finite() {
        Some(f) => ("exhaustive", check_axioms(f)),
        None => {
            let results: Vec<_> = chunk_sizes(s.samples)
                .into_par_iter()
                .map(|(i, n)| check_axioms_sampled(&a, n, s.seed.wrapping_add(i)))
                .collect();
            ("sampled", results.into_iter().find(|r| r.is_err()).unwrap_or(Ok(())))
        }
    };
    let mut text = format!("algebra: {}\nmode: {mode}\n", a.family());
    let result = match &outcome {
        Ok(()) => {
            text += "axioms: pass\n";
            json!({ "mode": mode, "passed": true })
        }
        Err(v) => {
            text += &format!("axioms: FAIL\n{v}\n");
            json!({ "mode": mode, "passed": false, "axiom": v.axiom, "witness": v.witness })
        }
    };
    Ok(report("axioms", &a, outcome.is_ok(), text, result))
}

fn ideal_json(i: &IdealView) -> Result<Value, EmvError> {
    let c = classify_ideal(i)?;
    Ok(json!({
        "members": i.member_labels(),
        "description": i.tag(),
        "proper": c.proper,
        "prime": c.prime,
        "maximal": c.maximal,
    }))
}

fn ideal_line(i: &IdealView) -> Result<String, EmvError> {
    let c = classify_ideal(i)?;
    let mut tags = Vec::new();
    if c.proper { tags.push("proper") }
    if c.prime { tags.push("prime") }
    if c.maximal { tags.push("maximal") }
    let name = i.member_labels().map(|m| braces(&m)).unwrap_or_else(|| i.tag());
    Ok(format!("{name}  {}\n", tags.join(" ")).replace("  \n", "\n"))
}

pub fn ideals(src: &Source) -> Outcome {
    let f = fail("ideals");
    let a = load("ideals", src, true)?;
    let all = all_ideals(&a).map_err(&f)?;
    let mut text = format!("algebra: {}\nideals: {}\n", a.family(), all.len());
    let mut list = Vec::new();
    for i in &all {
        text += &ideal_line(i).map_err(&f)?;
        list.push(ideal_json(i).map_err(&f)?);
    }
    Ok(report("ideals", &a, true, text, json!({ "count": all.len(), "ideals": list })))
}

pub fn maximal_ideals(src: &Source, limit: usize) -> Outcome {
    let f = fail("maximal-ideals");
    let a = load("maximal-ideals", src, true)?;
    let m = emv_core::ideals::maximal_ideals(&a).map_err(&f)?;
    let (shown, count) = match m.listed() {
        Some(l) => (l.to_vec(), Some(l.len())),
        None => (m.take(limit), None),
    };
    let mut text = format!(
        "algebra: {}\nmaximal ideals: {}\n",
        a.family(),
        count.map_or_else(|| format!("infinitely many (first {limit} shown)"), |c| c.to_string())
    );
    let mut list = Vec::new();
    for i in &shown {
        text += &ideal_line(i).map_err(&f)?;
        list.push(ideal_json(i).map_err(&f)?);
    }
    Ok(report("maximal-ideals", &a, true, text, json!({ "count": count, "ideals": list })))
}

pub fn states(src: &Source, limit: usize) -> Outcome {
    let f = fail("states");
    let a = load("states", src, true)?;
    let ss = state_morphisms(&a).map_err(&f)?;
    let ss: Vec<_> = if a.as_finite().is_some() { ss } else { ss.into_iter().take(limit).collect() };
    let mut text = format!("algebra: {}\nstate-morphisms: {}\n", a.family(), ss.len());
    let mut list = Vec::new();
    for (n, s) in ss.iter().enumerate() {
        let k = s.kernel();
        let kname = k.member_labels().map(|m| braces(&m)).unwrap_or_else(|| k.tag());
        text += &format!("s{n}: kernel {kname}, quotient chain({})\n", s.chain_order());
        let mut entry = json!({ "kernel": kname, "chain_order": s.chain_order() });
        if let Some(fa) = a.as_finite() {
            let mut vals = serde_json::Map::new();
            let mut parts = Vec::new();
            for x in 0..fa.size() {
                let v = evaluate(s, &Element::Index(x)).to_string();
                parts.push(format!("{}->{v}", fa.label_of(x)));
                vals.insert(fa.label_of(x).to_string(), json!(v));
            }
            text += &format!("  {}\n", parts.join(" "));
            entry["values"] = Value::Object(vals);
        }
        list.push(entry);
    }
    Ok(report("states", &a, true, text, json!({ "states": list })))
}

fn parse_labels(verb: &'static str, f: &FiniteAlgebra, ls: &[String]) -> Result<Vec<Element>, Failure> {
    ls.iter()
        .map(|l| {
            f.index_of_label(l)
                .map(Element::Index)
                .ok_or_else(|| Failure::Usage(verb, format!("unknown element `{l}`")))
        })
        .collect()
}

pub fn quotient(src: &Source, gens: &[String]) -> Outcome {
    let f = fail("quotient");
    let a = load("quotient", src, true)?;
    let fa = a.require_finite("quotient").map_err(&f)?;
    let els = parse_labels("quotient", fa, gens)?;
    let i = generated_ideal(&a, None, &els).map_err(&f)?;
    let q = quotient_by(&a, &i).map_err(&f)?;
    let qf = q.algebra.as_finite().expect("finite quotient");
    let members = i.member_labels().expect("explicit");
    let classes: Vec<Vec<String>> = (0..qf.size())
        .map(|c| labels(fa, (0..fa.size()).filter(|&x| q.projection[x] == c)))
        .collect();
    let mut text = format!(
        "algebra: {}\nideal: {}\nquotient size: {}\n",
        a.family(),
        braces(&members),
        qf.size()
    );
    for (c, cls) in classes.iter().enumerate() {
        text += &format!("{} = {}\n", qf.label_of(c), braces(cls));
    }
    let result = json!({
        "ideal": members,
        "size": qf.size(),
        "classes": classes,
        "tables": qf.to_tables(),
    });
    Ok(report("quotient", &a, true, text, result))
}

pub fn complete(src: &Source, s: &Sampling, of_ideal: bool) -> Outcome {
    let f = fail("complete");
    let a = load("complete", src, true)?;
    let n = if of_ideal {
        let m = emv_core::ideals::maximal_ideals(&a).map_err(&f)?;
        let i = m.first().ok_or(EmvError::NoMaximalIdeal).map_err(&f)?;
        completion_of_ideal(&i).map_err(&f)?
    } else {
        mv_completion(&a).map_err(&f)?
    };
    let reports: Vec<_> = chunk_sizes(s.samples)
        .into_par_iter()
        .map(|(i, k)| verify_maximal_embedding(&n, k, s.seed.wrapping_add(i)))
        .collect::<Result<_, _>>()
        .map_err(&f)?;
    let failures: Vec<String> = reports.into_iter().flat_map(|r| r.failures).collect();
    let ok = failures.is_empty();
    let mut text = format!(
        "algebra: {}\ncompletion: {}\nsamples: {}\nembedding as a maximal ideal: {}\n",
        a.family(),
        n.family(),
        s.samples,
        if ok { "pass" } else { "FAIL" }
    );
    for x in &failures {
        text += &format!("  {x}\n");
    }
    let result = json!({
        "completion": n.family(),
        "samples": s.samples,
        "seed": s.seed,
        "passed": ok,
        "failures": failures,
    });
    Ok(report("complete", &a, ok, text, result))
}

pub fn clan(src: &Source, minimal: bool) -> Outcome {
    let f = fail("clan");
    match load_any("clan", src, true)? {
        Loaded::Clan(spec) => {
            let family = format!("clan on {} points", spec.omega.len());
            if minimal {
                let m = minimal_clan(&spec).map_err(&f)?;
                let mut text = format!("{family}\nminimal clan: {} functions{}\n", m.spec.functions.len(),
                    if m.already_clan { " (input already contains 1)" } else { "" });
                for row in &m.spec.functions {
                    text += &format!("[{}]\n", row.join(","));
                }
                let result = json!({ "already_clan": m.already_clan, "clan": m.spec });
                return Ok(Report { verb: "clan", family, ok: true, text, result, raw: None });
            }
            let vals = spec.values().map_err(&f)?;
            let check = check_clan(&spec.omega, &vals, true);
            let (ok, text, result) = match check {
                Ok(()) => (true, format!("{family}\nclan conditions: pass\n"), json!({ "passed": true })),
                Err(v) => (
                    false,
                    format!("{family}\nclan conditions: FAIL\n{v}\n"),
                    json!({ "passed": false, "condition": v.condition, "witness": v.witness }),
                ),
            };
            Ok(Report { verb: "clan", family, ok, text, result, raw: None })
        }
        Loaded::Algebra(a) => {
            if minimal {
                return Err(Failure::Usage("clan", "--minimal needs a clan table as --input".into()));
            }
            let fa = a.require_finite("clan representation").map_err(&f)?;
            let rep = clan_representation(&a).map_err(&f)?;
            let mut text = format!("algebra: {}\nstates: {}\n", a.family(), rep.states.len());
            let mut rows = serde_json::Map::new();
            for x in 0..fa.size() {
                text += &format!("{} -> {}\n", fa.label_of(x), rep.row_label(x));
                rows.insert(fa.label_of(x).to_string(), json!(rep.row_label(x)));
            }
            let result = json!({ "omega": rep.omega(), "rows": rows, "clan": rep.to_spec() });
            Ok(report("clan", &a, true, text, result))
        }
    }
}

pub fn check_eq(src: &Source, eq: &str, bound: usize) -> Outcome {
    let f = fail("check-eq");
    let a = load("check-eq", src, true)?;
    let e = parse_equation(eq).map_err(&f)?;
    let s = satisfies_bounded(&a, &e, bound).map_err(&f)?;
    let mut text = format!("algebra: {}\nequation: {e}\n", a.family());
    let result = match &s {
        Satisfaction::Holds => {
            text += "holds\n";
            json!({ "equation": e.to_string(), "holds": true })
        }
        Satisfaction::Counterexample(w) => {
            let shown: Vec<String> = w.iter().map(|(v, x)| format!("{v}={x}")).collect();
            text += &format!("counterexample: {}\n", shown.join(", "));
            let m: serde_json::Map<String, Value> = w.iter().map(|(v, x)| (v.clone(), json!(x))).collect();
            json!({ "equation": e.to_string(), "holds": false, "counterexample": m })
        }
    };
    Ok(report("check-eq", &a, s.holds(), text, result))
}

pub fn export(src: &Source, format: Format, what: Diagram) -> Outcome {
    let f = fail("export");
    let a = load("export", src, true)?;
    let fa = a.require_finite("export").map_err(&f)?;
    let (raw, result) = match format {
        Format::Json => {
            let t = fa.to_tables();
            (
                serde_json::to_string_pretty(&t).expect("serializable") + "\n",
                json!({ "format": "json", "tables": t }),
            )
        }
        Format::Dot => {
            let d = match what {
                Diagram::Hasse => dot::hasse(&a),
                Diagram::Ideals => dot::ideal_lattice(&a),
            }
            .map_err(&f)?;
            let w = match what {
                Diagram::Hasse => "hasse",
                Diagram::Ideals => "ideals",
            };
            (d.clone(), json!({ "format": "dot", "what": w, "dot": d }))
        }
    };
    Ok(Report {
        verb: "export",
        family: a.family(),
        ok: true,
        text: String::new(),
        result,
        raw: Some(raw),
    })
}
