use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::vec_to_json;
use crate::nilpotent::{primitive_part, weight_filtration, NilpotentElement, WeightFiltration};
use crate::scalar::Gaussian;
use crate::subspace::{Quotient, Subspace};

use super::decomposition::check_polarization;
use super::{deligne_splitting, hodge_decomposition, in_compact_dual, induced_on_quotient, DeligneSplitting, HodgeDecomposition, HodgeFlag};

/// Axis names, in the order they are checked.
pub const AXIOMS: [&str; 5] = ["compact_dual", "horizontality", "graded_hodge", "orthogonality", "positivity"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub ok: bool,
    pub diagnostics: Vec<String>,
    /// Explicit vectors of `V_ℂ` exhibiting the failure.
    pub witness: Vec<Vec<Gaussian>>,
}

impl AxiomCheck {
    fn new(name: &'static str) -> Self {
        AxiomCheck { name, ok: true, diagnostics: Vec::new(), witness: Vec::new() }
    }

    fn fail(&mut self, msg: String, witness: impl IntoIterator<Item = Vec<Gaussian>>) {
        self.ok = false;
        self.diagnostics.push(msg);
        if self.witness.is_empty() {
            self.witness.extend(witness);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "axiom": self.name,
            "ok": self.ok,
            "diagnostics": self.diagnostics,
            "witness": self.witness.iter().map(|v| vec_to_json(v)).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct LmhsRecord {
    pub flag: HodgeFlag,
    pub n: NilpotentElement,
    pub weight: Option<WeightFiltration>,
    pub splitting: Option<DeligneSplitting>,
    pub checks: Vec<AxiomCheck>,
    pub verdict: bool,
}

impl LmhsRecord {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_axioms(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.name).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict,
            "axioms": self.checks.iter().map(AxiomCheck::to_json).collect::<Vec<_>>(),
            "weight_filtration": self.weight.as_ref().map(WeightFiltration::to_json),
            "deligne": self.splitting.as_ref().map(DeligneSplitting::to_json),
        })
    }
}

fn lift(q: &Quotient<Gaussian>, coords: &[Gaussian]) -> Vec<Gaussian> {
    q.lift(coords)
}

/// Checks that `(F, N)` is a limiting mixed Hodge structure:
/// `F` lies in the compact dual, `N F^p ⊆ F^{p−1}`, `F` induces a Hodge
/// structure of weight `j` on every `Gr_j W(N)`, and on each primitive part
/// `P_{k+ℓ}` that structure is polarized by `Q_ℓ = Q(·, N^ℓ ·)`.
/// The Deligne splitting is assembled alongside.
pub fn is_lmhs(flag: &HodgeFlag, n: &NilpotentElement) -> Result<LmhsRecord> {
    let space = n.space();
    if flag.ambient() != space.dim() {
        return Err(Error::Dimension(format!("flag in dimension {}, N acts on dimension {}", flag.ambient(), space.dim())));
    }
    let k = space.k() as i64;
    let mut checks = Vec::new();

    let cd = in_compact_dual(flag, space);
    let mut c = AxiomCheck::new("compact_dual");
    if !cd.ok() {
        c.ok = false;
        c.diagnostics = cd.diagnostics.clone();
        if let Some((u, v)) = cd.witness.clone() {
            c.witness = vec![u, v];
        }
    }
    checks.push(c);

    let nc = n.matrix().complexify();
    let mut c = AxiomCheck::new("horizontality");
    for p in 1..=flag.weight() as i64 {
        let target = flag.get(p - 1);
        if let Some(v) = flag.get(p).vectors().into_iter().find(|v| !target.contains_vector(&nc.apply(v))) {
            c.fail(format!("N F^{p} is not contained in F^{}", p - 1), [v]);
        }
    }
    checks.push(c);

    let mut graded = AxiomCheck::new("graded_hodge");
    let mut orth = AxiomCheck::new("orthogonality");
    let mut pos = AxiomCheck::new("positivity");
    let wf = match weight_filtration(n) {
        Ok(wf) => Some(wf),
        Err(e) => {
            let msg = format!("no weight filtration centered at {k}: {e}");
            graded.fail(msg.clone(), []);
            orth.fail(msg.clone(), []);
            pos.fail(msg, []);
            None
        }
    };
    let mut splitting = None;
    if let Some(wf) = &wf {
        for j in 0..=2 * k {
            let gr_r = wf.graded(j);
            if gr_r.dim() == 0 {
                continue;
            }
            let gr = Quotient::new(&gr_r.numerator().complexify(), &gr_r.denominator().complexify())?;
            let induced = induced_on_quotient(flag.filtration(), &gr)?;
            let dec = hodge_decomposition(j, &induced)?;
            if !dec.is_hodge {
                graded.fail(
                    format!("Gr_{j}: {}", dec.diagnostics.join("; ")),
                    dec.witness.iter().map(|w| lift(&gr, w)),
                );
                continue;
            }
            let ell = j - k;
            if ell < 0 {
                continue;
            }
            let prim = primitive_part(wf, n.matrix(), ell as usize)?.complexify();
            if prim.is_zero() {
                continue;
            }
            let mut pieces = BTreeMap::new();
            for (&p, s) in &dec.spaces {
                pieces.insert(p, s.intersect(&prim)?);
            }
            let dims: usize = pieces.values().map(Subspace::dim).sum();
            if dims != prim.dim() {
                graded.fail(format!("primitive part of Gr_{j} is not a sub-Hodge structure"), []);
                continue;
            }
            let pdec = HodgeDecomposition { weight: j, spaces: pieces, is_hodge: true, diagnostics: vec![], witness: None };
            let gram = (space.gram() * &n.matrix().power(ell as u32)?).complexify();
            let g = gr.form_on_lifts(&gram, &gr.section());
            let pol = check_polarization(&pdec, &g);
            if !pol.orthogonal {
                let (u, v) = pol.orthogonality_witness.clone().unwrap();
                orth.fail(format!("Q_{ell} on P_{j}: {}", pol.diagnostics[0]), [lift(&gr, &u), lift(&gr, &v)]);
            }
            if !pol.positive {
                let msgs: Vec<&String> = pol.diagnostics.iter().filter(|d| !d.starts_with("Q(")).collect();
                let w = pol.positivity_witness.as_ref().map(|w| lift(&gr, w));
                pos.fail(format!("Q_{ell} on P_{j}: {}", msgs.first().map_or("", |s| s.as_str())), w);
            }
        }
        splitting = Some(deligne_splitting(flag, wf, Some(n.matrix()))?);
    }
    checks.extend([graded, orth, pos]);
    let verdict = checks.iter().all(|c| c.ok);
    Ok(LmhsRecord { flag: flag.clone(), n: n.clone(), weight: wf, splitting, checks, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::fixtures;
    use crate::matrix::{conj_vec, pair};
    use crate::nilpotent::invariants;

    #[test]
    fn fixture_verdicts() {
        for fx in fixtures::all() {
            let r = is_lmhs(&fx.flag, &fx.n).unwrap();
            assert_eq!(r.verdict, fx.expect_lmhs, "{}: {:?}", fx.name, r.checks);
            assert_eq!(r.checks.iter().map(|c| c.name).collect::<Vec<_>>(), AXIOMS);
        }
    }

    #[test]
    fn sign_flip_breaks_only_positivity() {
        let r = is_lmhs(&fixtures::elliptic_flipped().flag, &fixtures::elliptic_flipped().n).unwrap();
        assert_eq!(r.failed_axioms(), vec!["positivity"]);
        let fx = fixtures::elliptic_flipped();
        let w = &r.check("positivity").unwrap().witness[0];
        // Q_1(w, conj w) = Q(w, N conj w) < 0 for the witness.
        let g = (fx.space.gram() * fx.n.matrix()).complexify();
        let val = pair(w, &g, &conj_vec(w));
        assert!(val.is_real() && val.re < num_traits::Zero::zero());
        let r = is_lmhs(&fixtures::weight_two_type_two_conjugate().flag, &fixtures::weight_two_type_two_conjugate().n).unwrap();
        assert_eq!(r.failed_axioms(), vec!["positivity"]);
    }

    #[test]
    fn primitive_dims_match_m() {
        for fx in fixtures::all().into_iter().filter(|f| f.expect_lmhs) {
            let r = is_lmhs(&fx.flag, &fx.n).unwrap();
            let s = r.splitting.unwrap();
            assert!(s.ok(), "{}", fx.name);
            let m = invariants(&fx.n).unwrap().m;
            for (ell, &ml) in m.iter().enumerate() {
                assert_eq!(s.primitive_dim(ell), ml, "{} at {ell}", fx.name);
            }
        }
    }

    #[test]
    fn horizontality_failure() {
        let fx = fixtures::weight_two_type_three();
        // Moving F^1 off N F^2 breaks horizontality (and isotropy survives).
        let steps = vec![
            Subspace::full(3),
            Subspace::span(3, &[fixtures::rvec(&[1, 0, 0]), fixtures::rvec(&[0, 0, 1])]).unwrap(),
            Subspace::span(3, &[fixtures::rvec(&[1, 0, 0])]).unwrap(),
        ];
        let flag = HodgeFlag::new(steps).unwrap();
        let r = is_lmhs(&flag, &fx.n).unwrap();
        assert!(!r.check("horizontality").unwrap().ok);
        assert_eq!(r.check("horizontality").unwrap().witness, vec![fixtures::rvec(&[1, 0, 0])]);
    }
}
