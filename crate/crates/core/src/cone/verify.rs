use serde_json::{json, Value};

use crate::nilpotent::{invariants, weight_filtration_centered, NilpotentElement, OrbitInvariants, WeightFiltration};
use crate::orbit::{classify_real, ClassLabel};
use crate::scalar::Rational;

use super::NilpotentCone;

fn t_json(t: &[Rational]) -> Value {
    json!(t.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

/// Weight filtration centered at the least `c ≥ k` of the parity of `k`
/// with `N^{c+1} = 0`.
fn natural_weight_filtration(n: &NilpotentElement) -> Result<WeightFiltration, String> {
    let mut c = n.k();
    while c + 1 < n.order() {
        c += 2;
    }
    weight_filtration_centered(n.matrix(), c).map_err(|e| e.to_string())
}

/// Two samples whose weight filtrations differ, and the first level where they do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CkMismatch {
    pub first: Vec<Rational>,
    pub second: Vec<Rational>,
    pub level: i64,
}

#[derive(Clone, Debug)]
pub struct CkReport {
    pub ok: bool,
    /// The common filtration, when there is one.
    pub filtration: Option<WeightFiltration>,
    pub mismatch: Option<CkMismatch>,
    pub errors: Vec<String>,
}

impl CkReport {
    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok,
            "weight_filtration": self.filtration.as_ref().map(WeightFiltration::to_json),
            "mismatch": self.mismatch.as_ref().map(|m| json!({"first": t_json(&m.first), "second": t_json(&m.second), "level": m.level})),
            "errors": self.errors,
        })
    }
}

fn first_difference(a: &WeightFiltration, b: &WeightFiltration) -> Option<i64> {
    let top = 2 * a.center().max(b.center()) as i64;
    (0..=top).find(|&j| a.level(j) != b.level(j)).or_else(|| (a.center() != b.center()).then_some(top))
}

/// Whether `W(N)` is the same subspace chain for every sampled `N`.
pub fn verify_ck(cone: &NilpotentCone, samples: &[Vec<Rational>]) -> CkReport {
    let mut base: Option<(Vec<Rational>, WeightFiltration)> = None;
    let mut errors = Vec::new();
    for t in samples {
        let wf = match cone.element(t).map_err(|e| e.to_string()).and_then(|n| natural_weight_filtration(&n)) {
            Ok(wf) => wf,
            Err(e) => {
                errors.push(format!("sample {}: {e}", t_json(t)));
                continue;
            }
        };
        match &base {
            None => base = Some((t.clone(), wf)),
            Some((t0, w0)) => {
                if let Some(level) = first_difference(w0, &wf) {
                    let mismatch = CkMismatch { first: t0.clone(), second: t.clone(), level };
                    return CkReport { ok: false, filtration: None, mismatch: Some(mismatch), errors };
                }
            }
        }
    }
    let ok = errors.is_empty() && base.is_some();
    CkReport { ok, filtration: base.filter(|_| ok).map(|(_, w)| w), mismatch: None, errors }
}

#[derive(Clone, Debug)]
pub struct SampleResult {
    pub t: Vec<Rational>,
    pub invariants: Result<OrbitInvariants, String>,
}

/// Per-sample invariants of a cone, the common class label, and the verdict.
#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub samples: Vec<SampleResult>,
    pub common: Option<OrbitInvariants>,
    pub label: Option<ClassLabel>,
    /// Set when the common class splits under the identity component.
    pub split_note: Option<String>,
    pub ck: CkReport,
    /// Indices of two samples with different invariants.
    pub witness: Option<(usize, usize)>,
    pub verdict: bool,
}

impl CongruenceReport {
    pub fn to_json(&self) -> Value {
        let samples: Vec<Value> = self
            .samples
            .iter()
            .map(|s| match &s.invariants {
                Ok(inv) => {
                    let j = inv.to_json();
                    json!({"t": t_json(&s.t), "m": j["m"], "s": j["s"]})
                }
                Err(e) => json!({"t": t_json(&s.t), "error": e}),
            })
            .collect();
        json!({
            "verdict": self.verdict,
            "sample_count": self.samples.len(),
            "common_invariants": self.common.as_ref().map(OrbitInvariants::to_json),
            "label": self.label.as_ref().map(ClassLabel::to_json),
            "split": self.label.as_ref().map(|l| l.split),
            "split_note": self.split_note,
            "weight_filtration": self.ck.to_json(),
            "witness": self.witness.map(|(i, j)| json!({
                "first": {"index": i, "t": t_json(&self.samples[i].t)},
                "second": {"index": j, "t": t_json(&self.samples[j].t)},
            })),
            "samples": samples,
        })
    }
}

/// Computes `(m, s)` for every sample. The verdict holds when all samples
/// share both invariants and weight filtration; the common class is labeled.
pub fn verify_theorem1(cone: &NilpotentCone, samples: &[Vec<Rational>]) -> CongruenceReport {
    let results: Vec<SampleResult> = samples
        .iter()
        .map(|t| SampleResult {
            t: t.clone(),
            invariants: cone.element(t).and_then(|n| invariants(&n)).map_err(|e| e.to_string()),
        })
        .collect();
    let mut witness = None;
    let mut errored = false;
    let first_ok = results.iter().position(|r| r.invariants.is_ok());
    for (i, r) in results.iter().enumerate() {
        match (&r.invariants, first_ok) {
            (Err(_), _) => errored = true,
            (Ok(inv), Some(f)) => {
                if witness.is_none() && results[f].invariants.as_ref().ok() != Some(inv) {
                    witness = Some((f, i));
                }
            }
            (Ok(_), None) => unreachable!(),
        }
    }
    if witness.is_none() && errored {
        witness = first_ok.zip(results.iter().position(|r| r.invariants.is_err()));
    }
    let ck = verify_ck(cone, samples);
    let common = match (witness, first_ok, errored) {
        (None, Some(f), false) => results[f].invariants.clone().ok(),
        _ => None,
    };
    let label = common.as_ref().and_then(|inv| classify_real(inv, cone.space.k()).ok());
    let split_note = label.as_ref().filter(|l| l.split).map(|_| {
        "class splits under the identity component; equal invariants on an open connected cone \
         place it in a single identity-component orbit (component not computed)"
            .to_string()
    });
    let verdict = common.is_some() && label.is_some() && ck.ok;
    CongruenceReport { samples: results, common, label, split_note, ck, witness, verdict }
}
