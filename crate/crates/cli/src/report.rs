//! JSON views of the library reports. `serde_json::Map` keeps keys sorted,
//! so the output is canonical.

use std::collections::BTreeSet;

use bigrade::filtration::{FiltrationLadder, MgradeConstancy, SeqCmReport};
use bigrade::hypersurface::{FactorProfile, HypersurfaceVerdict};
use bigrade::local_cohomology::{CorollaryTriple, Dim, LcReport};
use bigrade::suite::SuiteReport;
use bigrade::{AxisIdeal, InvariantReport, MonomialIdeal, PrimaryComponent, PrimeSupport, RingSpec};
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

pub fn ring(ring: &RingSpec) -> Value {
    json!({
        "m": ring.m(),
        "n": ring.n(),
        "characteristic": ring.characteristic().value(),
    })
}

pub fn axis(axis: &AxisIdeal, ring: &RingSpec) -> Value {
    Value::Array(axis.vars().iter().map(|&v| json!(ring.var_name(v))).collect())
}

pub fn ideal(ideal: &MonomialIdeal) -> Value {
    let r = ideal.ring();
    Value::Array(ideal.gens().iter().map(|g| json!(g.render(r))).collect())
}

pub fn prime(p: &PrimeSupport, ring: &RingSpec) -> Value {
    json!(p.render(ring))
}

pub fn primes(ps: &BTreeSet<PrimeSupport>, ring: &RingSpec) -> Value {
    Value::Array(ps.iter().map(|p| prime(p, ring)).collect())
}

pub fn dim(d: Dim) -> Value {
    match d {
        Dim::Finite(v) => json!(v),
        Dim::Infinite => json!("infinite"),
    }
}

pub fn invariants(r: &InvariantReport, ring: &RingSpec) -> Value {
    json!({
        "axis": axis(&r.axis, ring),
        "associated_primes": primes(&r.associated_primes, ring),
        "grade": r.grade,
        "cd": r.cd,
        "mgrade": r.mgrade,
        "dim": r.dim,
        "depth": r.depth,
        "maximal_depth": r.maximal_depth,
        "witness_prime": r.witness_prime.as_ref().map(|p| prime(p, ring)),
        "cm_wrt_axis": r.cm_wrt_axis,
        "cm_ordinary": r.cm_ordinary,
    })
}

fn components(cs: &[PrimaryComponent], ring: &RingSpec) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| json!({ "component": ideal(&c.component), "radical": prime(&c.radical, ring) }))
            .collect(),
    )
}

pub fn decomposition(
    irreducible: &[PrimaryComponent],
    primary: &[PrimaryComponent],
    ass: &BTreeSet<PrimeSupport>,
    minimal: &BTreeSet<PrimeSupport>,
    radical: &MonomialIdeal,
    dim: usize,
) -> Value {
    let r = radical.ring();
    json!({
        "irreducible_components": components(irreducible, r),
        "primary_components": components(primary, r),
        "associated_primes": primes(ass, r),
        "minimal_primes": primes(minimal, r),
        "radical": ideal(radical),
        "dim": dim,
    })
}

pub fn ladder(l: &FiltrationLadder) -> Value {
    let r = l.base.ring();
    json!({
        "axis": axis(&l.axis, r),
        "steps": l.steps.iter().map(|s| json!({
            "cd": s.cd,
            "ideal": ideal(&s.ideal),
            "primes": primes(&s.primes, r),
        })).collect::<Vec<_>>(),
    })
}

pub fn seqcm(s: &SeqCmReport, c: &MgradeConstancy) -> Value {
    json!({
        "sequentially_cm": s.verdict,
        "steps": s.steps.iter().map(|st| json!({
            "gamma": st.gamma,
            "grade": st.grade,
            "cd": st.cd,
            "cm": st.is_cm,
        })).collect::<Vec<_>>(),
        "mgrade_constancy": {
            "holds": c.holds,
            "value": c.value,
            "per_step": c.per_step,
        },
    })
}

pub fn lc(r: &LcReport, ring: &RingSpec) -> Value {
    json!({
        "index": r.index,
        "axis": axis(&r.axis, ring),
        "finitely_generated": r.finitely_generated,
        "total_dim": dim(r.total_dim),
        "per_fiber": r.per_fiber.iter().map(|f| json!({
            "pattern": f.pattern,
            "multiplicity": f.multiplicity,
            "infinite_family": f.infinite_family,
            "finite_length": f.finite_length,
            "total_dim": dim(f.total_dim),
            "witness_degree": f.witness_degree.as_ref().map(|d| d.as_slice().to_vec()),
        })).collect::<Vec<_>>(),
    })
}

pub fn corollary(t: &CorollaryTriple) -> Value {
    json!({
        "max_depth": t.max_depth,
        "seq_cm": t.seq_cm,
        "cm_wrt_axis": t.cm_wrt_axis,
    })
}

pub fn hypersurface(p: &FactorProfile, v: &HypersurfaceVerdict) -> Value {
    json!({
        "factors": p.factors().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "alpha1": p.alpha1(),
        "alpha2": p.alpha2(),
        "beta1": p.beta1(),
        "beta2": p.beta2(),
        "bidegree": [p.bidegree().0, p.bidegree().1],
        "case_label": v.case_label.label(),
        "case_trace": v.case_trace.label(),
        "grade": v.grade_q,
        "mgrade": v.mgrade_q,
        "maximal_depth": v.maximal_depth,
    })
}

pub fn suite(s: &SuiteReport) -> Value {
    json!({
        "count": s.count,
        "seed": s.seed,
        "total_violations": s.total_violations(),
        "properties": s.properties.iter().map(|p| json!({
            "name": p.name,
            "checked": p.checked,
            "violations": p.violations,
        })).collect::<Vec<_>>(),
        "question_candidates": s.question_candidates,
    })
}

/// Indented `key: value` lines for the text format.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    write_text(value, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.is_array()) => scalar_rows(a),
        _ => None,
    }
}

fn scalar_rows(a: &[Value]) -> Option<String> {
    let rows: Option<Vec<String>> = a.iter().map(scalar).collect();
    rows.map(|r| format!("[{}]", r.join(", ")))
}

fn write_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
