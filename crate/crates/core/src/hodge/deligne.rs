use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{vec_to_json, Matrix};
use crate::nilpotent::WeightFiltration;
use crate::scalar::{Gaussian, Rational};
use crate::subspace::Subspace;

use super::HodgeFlag;

/// One verified property of a splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingCheck {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// The bigrading `I^{p,q}` of `V_ℂ`, with the checks run on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneSplitting {
    pub weight: usize,
    pub spaces: BTreeMap<(i64, i64), Subspace<Gaussian>>,
    /// `I^{p,q}_prim`, filled in when a nilpotent is supplied.
    pub primitive: BTreeMap<(i64, i64), Subspace<Gaussian>>,
    pub checks: Vec<SplittingCheck>,
    /// `conj I^{p,q} = I^{q,p}` holds exactly.
    pub real_split: bool,
}

impl DeligneSplitting {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn get(&self, p: i64, q: i64) -> Subspace<Gaussian> {
        let ambient = self.spaces.values().next().map_or(0, Subspace::ambient);
        self.spaces.get(&(p, q)).cloned().unwrap_or_else(|| Subspace::zero(ambient))
    }

    /// `Σ_{p+q = k+ℓ} dim I^{p,q}_prim`.
    pub fn primitive_dim(&self, ell: usize) -> usize {
        let w = (self.weight + ell) as i64;
        self.primitive.iter().filter(|((p, q), _)| p + q == w).map(|(_, s)| s.dim()).sum()
    }

    pub fn to_json(&self) -> Value {
        let pieces = |m: &BTreeMap<(i64, i64), Subspace<Gaussian>>| -> Vec<Value> {
            m.iter()
                .filter(|(_, s)| !s.is_zero())
                .map(|(&(p, q), s)| {
                    json!({"p": p, "q": q, "dim": s.dim(), "basis": s.vectors().iter().map(|v| vec_to_json(v)).collect::<Vec<_>>()})
                })
                .collect()
        };
        json!({
            "ok": self.ok(),
            "real_split": self.real_split,
            "pieces": pieces(&self.spaces),
            "primitive": pieces(&self.primitive),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

fn sum_all<'a>(ambient: usize, it: impl Iterator<Item = &'a Subspace<Gaussian>>) -> Result<(Subspace<Gaussian>, usize)> {
    let mut acc = Subspace::zero(ambient);
    let mut dims = 0;
    for s in it {
        acc = acc.sum(s)?;
        dims += s.dim();
    }
    Ok((acc, dims))
}

/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q ∩ W_{p+q} + Σ_{j≥1} conj F^{q−j} ∩ W_{p+q−j−1})`
/// for `0 ≤ p, q ≤ k`, with `W` indexed literally (`W_0 … W_{2k}`).
///
/// Verifies the direct sum, `F^p = ⊕_{r≥p} I^{r,•}`, `W_ℓ = ⊕_{p+q≤ℓ} I^{p,q}`,
/// conjugation modulo `⊕_{r<q, s<p} I^{r,s}`, and `N I^{p,q} ⊆ I^{p−1,q−1}`
/// when `n` is given. Failures are recorded in `checks`, not returned as errors.
pub fn deligne_splitting(
    flag: &HodgeFlag,
    wf: &WeightFiltration,
    n: Option<&Matrix<Rational>>,
) -> Result<DeligneSplitting> {
    let d = flag.ambient();
    if wf.ambient() != d {
        return Err(Error::Dimension(format!("flag in dimension {d}, weight filtration in {}", wf.ambient())));
    }
    let k = flag.weight() as i64;
    let w = |j: i64| wf.level(j).complexify();
    let f = |p: i64| flag.get(p);
    let fbar = |p: i64| flag.get(p).conj();
    let mut spaces = BTreeMap::new();
    for p in 0..=k {
        for q in 0..=k {
            let wpq = w(p + q);
            let mut inner = fbar(q).intersect(&wpq)?;
            for j in 1..p + q {
                inner = inner.sum(&fbar(q - j).intersect(&w(p + q - j - 1))?)?;
            }
            spaces.insert((p, q), f(p).intersect(&wpq)?.intersect(&inner)?);
        }
    }
    let mut checks = Vec::new();

    let (total, dims) = sum_all(d, spaces.values())?;
    checks.push(SplittingCheck {
        name: "direct_sum",
        ok: total.is_full() && dims == d,
        detail: format!("pieces span dimension {} with total {dims}, ambient {d}", total.dim()),
    });

    let mut bad = Vec::new();
    for p in 0..=k + 1 {
        let (s, dims) = sum_all(d, spaces.iter().filter(|((r, _), _)| *r >= p).map(|(_, s)| s))?;
        if s != f(p) || dims != s.dim() {
            bad.push(format!("F^{p}"));
        }
    }
    checks.push(SplittingCheck { name: "hodge_filtration", ok: bad.is_empty(), detail: failures(&bad) });

    let mut bad = Vec::new();
    for l in 0..=2 * k {
        let (s, dims) = sum_all(d, spaces.iter().filter(|((p, q), _)| p + q <= l).map(|(_, s)| s))?;
        if s != w(l) || dims != s.dim() {
            bad.push(format!("W_{l}"));
        }
    }
    checks.push(SplittingCheck { name: "weight_filtration", ok: bad.is_empty(), detail: failures(&bad) });

    let mut bad = Vec::new();
    let mut real_split = true;
    for (&(p, q), s) in &spaces {
        let mirror = spaces.get(&(q, p)).cloned().unwrap_or_else(|| Subspace::zero(d));
        let c = s.conj();
        if c != mirror {
            real_split = false;
        }
        let (lower, _) = sum_all(d, spaces.iter().filter(|((r, t), _)| *r < q && *t < p).map(|(_, s)| s))?;
        if c.sum(&lower)? != mirror.sum(&lower)? {
            bad.push(format!("I^({p},{q})"));
        }
    }
    checks.push(SplittingCheck { name: "conjugation", ok: bad.is_empty(), detail: failures(&bad) });

    let mut primitive = BTreeMap::new();
    if let Some(n) = n {
        let nc = n.complexify();
        let mut bad = Vec::new();
        for (&(p, q), s) in &spaces {
            let target = spaces.get(&(p - 1, q - 1)).cloned().unwrap_or_else(|| Subspace::zero(d));
            if !target.contains(&s.image_under(&nc)?) {
                bad.push(format!("N I^({p},{q})"));
            }
        }
        checks.push(SplittingCheck { name: "n_shift", ok: bad.is_empty(), detail: failures(&bad) });
        primitive = primitive_pieces(&spaces, n, k)?;
    }
    Ok(DeligneSplitting { weight: k as usize, spaces, primitive, checks, real_split })
}

fn failures(bad: &[String]) -> String {
    if bad.is_empty() {
        "holds".into()
    } else {
        format!("fails at {}", bad.join(", "))
    }
}

fn primitive_pieces(
    spaces: &BTreeMap<(i64, i64), Subspace<Gaussian>>,
    n: &Matrix<Rational>,
    k: i64,
) -> Result<BTreeMap<(i64, i64), Subspace<Gaussian>>> {
    let mut out = BTreeMap::new();
    for (&(p, q), s) in spaces {
        let ell = p + q - k;
        if ell < 0 {
            continue;
        }
        let ker = n.power(ell as u32 + 1)?.complexify().kernel();
        out.insert((p, q), s.intersect(&ker)?);
    }
    Ok(out)
}

/// `I^{p,q}_prim = ker N^{ℓ+1} ∩ I^{p,q}` for `p + q = k + ℓ`, `ℓ ≥ 0`.
pub fn primitive_splitting(
    splitting: &DeligneSplitting,
    n: &Matrix<Rational>,
) -> Result<BTreeMap<(i64, i64), Subspace<Gaussian>>> {
    primitive_pieces(&splitting.spaces, n, splitting.weight as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::fixtures;
    use crate::matrix::complexify_vec;
    use crate::nilpotent::{weight_filtration, weight_filtration_centered};
    use crate::scalar::rat;

    #[test]
    fn elliptic_splitting() {
        let fx = fixtures::elliptic();
        let wf = weight_filtration(&fx.n).unwrap();
        let s = deligne_splitting(&fx.flag, &wf, Some(fx.n.matrix())).unwrap();
        assert!(s.ok(), "{:?}", s.checks);
        let e1 = complexify_vec(&[rat(1), rat(0)]);
        let e2 = complexify_vec(&[rat(0), rat(1)]);
        assert_eq!(s.get(1, 1), Subspace::span(2, &[e1]).unwrap());
        assert_eq!(s.get(0, 0), Subspace::span(2, &[e2]).unwrap());
        assert!(s.get(1, 0).is_zero() && s.get(0, 1).is_zero());
        assert_eq!(s.primitive[&(1, 1)], s.get(1, 1));
        assert_eq!(s.primitive_dim(1), 1);
        assert_eq!(s.primitive_dim(0), 0);
    }

    #[test]
    fn pure_structure_splits_as_hodge_decomposition() {
        let fx = fixtures::pure_weight_one();
        let wf = weight_filtration_centered(fx.n.matrix(), 1).unwrap();
        let s = deligne_splitting(&fx.flag, &wf, Some(fx.n.matrix())).unwrap();
        assert!(s.ok());
        let dec = crate::hodge::hodge_decomposition(1, fx.flag.filtration()).unwrap();
        assert_eq!(s.get(1, 0), dec.get(1));
        assert_eq!(s.get(0, 1), dec.get(0));
        assert_eq!(s.primitive_dim(0), 2);
    }

    #[test]
    fn hodge_tate_fixture() {
        let fx = fixtures::hodge_tate();
        let wf = weight_filtration(&fx.n).unwrap();
        let s = deligne_splitting(&fx.flag, &wf, Some(fx.n.matrix())).unwrap();
        assert!(s.ok() && s.real_split);
        for ((p, q), sp) in &s.spaces {
            assert!(p == q || sp.is_zero());
        }
        assert_eq!(s.get(1, 1).dim() + s.get(0, 0).dim(), 4);
    }
}
