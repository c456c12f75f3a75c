//! Rendering: human-readable reports and schema-versioned machine output.

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use selfclose_core::closeness::NscResult;
use selfclose_core::criteria::{ReducibilityOutcome, ReducibilityVerdict, WITNESS_SCOPE_NOTE};
use selfclose_core::group::FgAbelianGroup;
use selfclose_core::matrix::IntMat;
use selfclose_core::oracle::{SuiteOutcome, VerificationReport};
use selfclose_core::ring::{Coeff, RingEndoSolution, WedgeRingModel};
use selfclose_core::space::{Dim, SpaceModel};

pub const SCHEMA_VERSION: &str = "1";

/// Print a machine-output value. serde_json maps are ordered (BTreeMap), so
/// identical invocations print byte-identical lines.
pub fn emit(value: Value) {
    println!("{value}");
}

pub fn dim_value(d: Dim) -> Value {
    match d {
        Dim::Finite(n) => json!(n),
        Dim::Infinite => json!("infinite"),
    }
}

pub fn group_value(g: &FgAbelianGroup) -> Value {
    let torsion: Vec<Value> = g
        .invariant_factors()
        .iter()
        .map(|d| match d.to_u64() {
            Some(v) => json!(v),
            None => json!(d.to_string()),
        })
        .collect();
    json!({ "rank": g.free_rank(), "torsion": torsion })
}

fn matrix_value(m: &IntMat) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = (0..m.cols())
                .map(|j| match m.get(i, j).to_i64() {
                    Some(v) => json!(v),
                    None => json!(m.get(i, j).to_string()),
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

fn matrix_text(m: &IntMat) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn coeff_schema(c: Coeff) -> String {
    match c {
        Coeff::Z => "Z".into(),
        Coeff::Fp(p) => format!("Fp:{p}"),
    }
}

// ---------------------------------------------------------------- space

pub fn space_json(model: &SpaceModel, nsc: &NscResult) -> Value {
    let mut homology = Map::new();
    for (d, g) in model.homology().support() {
        homology.insert(d.to_string(), group_value(g));
    }
    let mut obj = Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("name".into(), json!(model.name()));
    obj.insert("dimension".into(), dim_value(model.dimension()));
    obj.insert("cutoff".into(), json!(model.cutoff()));
    obj.insert("connectivity".into(), json!(model.connectivity()));
    obj.insert("homology".into(), Value::Object(homology));
    if model.known_through() == Dim::Infinite {
        if let Ok(hd) = model.homology_dimension() {
            obj.insert("homology_dimension".into(), json!(hd));
        }
    }
    if let Some(cert) = model.atomic_certificate() {
        obj.insert("atomic".into(), dim_value(cert.degree));
    }
    obj.insert("nsc_lower".into(), json!(nsc.lower));
    obj.insert("nsc_upper".into(), dim_value(nsc.upper));
    if let Some(v) = nsc.exact {
        obj.insert("nsc".into(), json!(v));
    }
    Value::Object(obj)
}

pub fn space_text(model: &SpaceModel, nsc: &NscResult) {
    println!("space: {}", model.name());
    println!("dimension: {}", model.dimension());
    println!("table cutoff: {}", model.cutoff());
    println!("connectivity: {}", model.connectivity());
    if model.known_through() == Dim::Infinite {
        match model.homology_dimension() {
            Ok(hd) => println!("homology dimension: {hd}"),
            Err(_) => println!("homology dimension: none (trivial graded homology)"),
        }
    } else {
        println!(
            "homology dimension: unknown beyond the cutoff {}",
            model.cutoff()
        );
    }
    println!("homology:");
    let mut any = false;
    for (d, g) in model.homology().support() {
        println!("  H_{d} = {g}");
        any = true;
    }
    if !any {
        println!("  (trivial in all degrees >= 2)");
    }
    if let Some(cert) = model.atomic_certificate() {
        let prov = match cert.provenance {
            selfclose_core::space::Provenance::Catalog => "catalog",
            selfclose_core::space::Provenance::UserAsserted => "user-asserted",
        };
        println!("atomic through degree: {} ({prov})", cert.degree);
    }
    match (nsc.exact, nsc.upper) {
        (Some(v), _) => println!("self-closeness: exact {v}"),
        (None, Dim::Finite(u)) => println!("self-closeness: in [{}, {u}]", nsc.lower),
        (None, Dim::Infinite) => println!("self-closeness: at least {}", nsc.lower),
    }
}

// ---------------------------------------------------------------- hom

pub fn hom_json(source: &str, target: &str, degree: Option<u32>, hom: &FgAbelianGroup) -> Value {
    let mut obj = Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("source".into(), json!(source));
    obj.insert("target".into(), json!(target));
    if let Some(d) = degree {
        obj.insert("degree".into(), json!(d));
    }
    obj.insert("hom".into(), group_value(hom));
    obj.insert("trivial".into(), json!(hom.is_trivial()));
    Value::Object(obj)
}

pub fn hom_text(source: &str, target: &str, degree: Option<u32>, hom: &FgAbelianGroup) {
    match degree {
        Some(d) => println!("Hom(H_{d}({source}), H_{d}({target})) = {hom}"),
        None => println!("Hom({source}, {target}) = {hom}"),
    }
    println!("trivial: {}", hom.is_trivial());
}

// ---------------------------------------------------------------- reducible

pub fn reducible_json(x: &str, y: &str, k: u32, v: &ReducibilityVerdict) -> Value {
    let criteria: Vec<Value> = v
        .criteria_fired
        .iter()
        .map(|c| json!({ "id": c.id, "degrees": c.degrees, "citation": c.citation }))
        .collect();
    let witness = match (&v.witness, v.witness_degree) {
        (Some(w), Some(d)) => {
            let b = w.blocks_at(d).expect("witness degree is tabulated");
            json!({
                "degree": d,
                "blocks": {
                    "xx": matrix_value(b.xx.matrix()),
                    "xy": matrix_value(b.xy.matrix()),
                    "yx": matrix_value(b.yx.matrix()),
                    "yy": matrix_value(b.yy.matrix()),
                },
                "note": WITNESS_SCOPE_NOTE,
            })
        }
        _ => Value::Null,
    };
    let mut obj = Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("x".into(), json!(x));
    obj.insert("y".into(), json!(y));
    obj.insert("k".into(), json!(k));
    obj.insert("outcome".into(), json!(v.outcome.to_string()));
    obj.insert("criteria".into(), Value::Array(criteria));
    obj.insert("witness".into(), witness);
    Value::Object(obj)
}

fn degree_list(degrees: &[u32]) -> String {
    degrees
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn reducible_text(x: &str, y: &str, k: u32, v: &ReducibilityVerdict) {
    println!("{x} v {y}, k = {k}");
    println!("outcome: {}", v.outcome);
    if v.criteria_fired.is_empty() {
        println!("criteria: none fired");
    } else {
        println!("criteria:");
        for c in &v.criteria_fired {
            println!("  - {} (degrees {})", c.id, degree_list(&c.degrees));
            println!("      {}", c.citation);
        }
    }
    if let (Some(w), Some(d)) = (&v.witness, v.witness_degree) {
        let b = w.blocks_at(d).expect("witness degree is tabulated");
        println!("witness at degree {d}:");
        println!("  xx = {}", matrix_text(b.xx.matrix()));
        println!("  xy = {}", matrix_text(b.xy.matrix()));
        println!("  yx = {}", matrix_text(b.yx.matrix()));
        println!("  yy = {}", matrix_text(b.yy.matrix()));
        println!("note: {WITNESS_SCOPE_NOTE}");
    }
    if v.outcome == ReducibilityOutcome::Unknown {
        println!("(no registered criterion covers every degree and the census was infeasible within the budget)");
    }
}

// ---------------------------------------------------------------- nsc

pub fn nsc_json(kind: &str, r: &NscResult) -> Value {
    let evidence: Vec<Value> = r
        .evidence
        .iter()
        .map(|e| {
            json!({
                "rule": e.rule,
                "citation": e.citation,
                "inputs": e.inputs,
                "claim": e.claim,
            })
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("query".into(), json!(kind));
    obj.insert("subject".into(), json!(r.subject));
    obj.insert("lower".into(), json!(r.lower));
    obj.insert("upper".into(), dim_value(r.upper));
    obj.insert(
        "exact".into(),
        r.exact.map_or(Value::Null, |v| json!(v)),
    );
    obj.insert("evidence".into(), Value::Array(evidence));
    Value::Object(obj)
}

pub fn nsc_text(r: &NscResult) {
    println!("subject: {}", r.subject);
    match r.upper {
        Dim::Finite(u) => println!("interval: [{}, {u}]", r.lower),
        Dim::Infinite => println!("interval: [{}, infinite)", r.lower),
    }
    match r.exact {
        Some(v) => println!("exact: {v}"),
        None => println!("exact: not established"),
    }
    println!("evidence:");
    for e in &r.evidence {
        println!("  - {}: {}", e.rule, e.claim);
        println!("      {}", e.citation);
        for i in &e.inputs {
            println!("      input: {i}");
        }
    }
}

// ---------------------------------------------------------------- ring-endos

fn image_text(gen_a: &str, gen_b: &str, ca: i64, cb: i64) -> String {
    let mut terms = Vec::new();
    for (coef, gen) in [(ca, gen_a), (cb, gen_b)] {
        match coef {
            0 => {}
            1 => terms.push(gen.to_string()),
            -1 => terms.push(format!("-{gen}")),
            c => terms.push(format!("{c}{gen}")),
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn ring_endos_json(
    model: &WedgeRingModel,
    solutions: &[RingEndoSolution],
    all_autos: bool,
) -> Value {
    let summand = |r: &selfclose_core::ring::TruncatedRing| {
        json!({
            "gen": r.gen_name(),
            "degree": r.degree(),
            "trunc": r.trunc(),
            "coeff": coeff_schema(r.coeff()),
        })
    };
    let sols: Vec<Value> = solutions
        .iter()
        .map(|s| json!({ "a": s.a, "b": s.b, "c": s.c, "d": s.d }))
        .collect();
    let mut obj = Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert(
        "summands".into(),
        Value::Array(vec![summand(model.left()), summand(model.right())]),
    );
    obj.insert("count".into(), json!(solutions.len()));
    obj.insert("solutions".into(), Value::Array(sols));
    obj.insert("all_ring_autos".into(), json!(all_autos));
    Value::Object(obj)
}

pub fn ring_endos_text(model: &WedgeRingModel, solutions: &[RingEndoSolution], all_autos: bool) {
    let describe = |r: &selfclose_core::ring::TruncatedRing| {
        format!(
            "{}[{}]/({}^{}) with |{}| = {}",
            r.coeff(),
            r.gen_name(),
            r.gen_name(),
            r.trunc() + 1,
            r.gen_name(),
            r.degree()
        )
    };
    println!(
        "model: {} v {}",
        describe(model.left()),
        describe(model.right())
    );
    println!(
        "invertible endomorphisms in the generator degree: {}",
        solutions.len()
    );
    let (ga, gb) = (model.left().gen_name(), model.right().gen_name());
    for s in solutions {
        println!(
            "  {ga} -> {}, {gb} -> {}",
            image_text(ga, gb, s.a, s.b),
            image_text(ga, gb, s.c, s.d)
        );
    }
    println!("all ring automorphisms: {all_autos}");
}

// ---------------------------------------------------------------- verify

pub fn verify_json(r: &VerificationReport) -> Value {
    let (outcome, witness) = match &r.outcome {
        SuiteOutcome::Pass => ("PASS", Value::Null),
        SuiteOutcome::Counterexample { witness } => ("COUNTEREXAMPLE", json!(witness)),
    };
    let mut obj = Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("suite".into(), json!(r.suite));
    obj.insert("description".into(), json!(r.description));
    obj.insert("instances".into(), json!(r.instances));
    obj.insert("outcome".into(), json!(outcome));
    obj.insert("witness".into(), witness);
    Value::Object(obj)
}

pub fn verify_text(r: &VerificationReport) {
    println!("suite: {}", r.suite);
    println!("description: {}", r.description);
    println!("instances: {}", r.instances);
    match &r.outcome {
        SuiteOutcome::Pass => println!("outcome: PASS"),
        SuiteOutcome::Counterexample { witness } => {
            println!("outcome: COUNTEREXAMPLE");
            println!("witness: {witness}");
        }
    }
    println!("runtime: {} ms", r.runtime_ms);
}
