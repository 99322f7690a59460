use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::{pair, vec_to_json, Matrix};
use crate::nilpotent::FormSpace;
use crate::scalar::{Gaussian, Scalar};
use crate::subspace::{Filtration, FiltrationKind, Subspace};

/// `h^{p,k−p}` for `p = 0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeNumbers {
    pub k: usize,
    pub h: BTreeMap<usize, usize>,
}

impl HodgeNumbers {
    /// From the list `h^{k,0}, h^{k−1,1}, …, h^{0,k}`.
    pub fn from_list(list: &[usize]) -> Result<Self> {
        if list.is_empty() {
            return Err(Error::Dimension("empty Hodge number list".into()));
        }
        let k = list.len() - 1;
        let h = list.iter().enumerate().map(|(i, &c)| (k - i, c)).collect();
        let out = HodgeNumbers { k, h };
        out.check_symmetry()?;
        Ok(out)
    }

    /// Hodge numbers with the given flag dimensions `f^0 ≥ f^1 ≥ … ≥ f^k`.
    pub fn from_flag_dims(f: &[usize]) -> Result<Self> {
        if f.is_empty() || f.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Dimension(format!("flag dimensions {f:?} are not decreasing")));
        }
        let k = f.len() - 1;
        let h = (0..=k).map(|p| (p, f[p] - f.get(p + 1).copied().unwrap_or(0))).collect();
        let out = HodgeNumbers { k, h };
        out.check_symmetry()?;
        Ok(out)
    }

    fn check_symmetry(&self) -> Result<()> {
        for p in 0..=self.k {
            if self.get(p) != self.get(self.k - p) {
                return Err(Error::Dimension(format!(
                    "h^{{{p},{}}} = {} but h^{{{},{p}}} = {}",
                    self.k - p,
                    self.get(p),
                    self.k - p,
                    self.get(self.k - p)
                )));
            }
        }
        Ok(())
    }

    /// `h^{p,k−p}`.
    pub fn get(&self, p: usize) -> usize {
        self.h.get(&p).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.h.values().sum()
    }

    pub fn to_json(&self) -> Value {
        let m: Map<String, Value> =
            self.h.iter().map(|(p, c)| (format!("{},{}", p, self.k - p), json!(c))).collect();
        json!({"k": self.k, "h": m})
    }
}

/// `f^p = Σ_{r ≥ p} h^{r,k−r}`, indexed by `p = 0..=k` (so `f[0] = dim V`).
pub fn flag_dims(h: &HodgeNumbers) -> Vec<usize> {
    let mut f = vec![0; h.k + 1];
    let mut acc = 0;
    for p in (0..=h.k).rev() {
        acc += h.get(p);
        f[p] = acc;
    }
    f
}

/// A decreasing filtration `F^0 ⊇ F^1 ⊇ … ⊇ F^k` of `V_ℂ`, together with the
/// dimensions it was declared with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeFlag {
    k: usize,
    declared: Vec<usize>,
    filtration: Filtration<Gaussian>,
}

impl HodgeFlag {
    /// `steps[p] = F^p` for `p = 0..=k`.
    pub fn new(steps: Vec<Subspace<Gaussian>>) -> Result<Self> {
        let declared = steps.iter().map(Subspace::dim).collect();
        Self::with_dims(declared, steps)
    }

    pub fn with_dims(declared: Vec<usize>, steps: Vec<Subspace<Gaussian>>) -> Result<Self> {
        if steps.is_empty() || declared.len() != steps.len() {
            return Err(Error::Dimension(format!(
                "{} declared dimensions for {} flag steps",
                declared.len(),
                steps.len()
            )));
        }
        let ambient = steps[0].ambient();
        let k = steps.len() - 1;
        let filtration = Filtration::new(FiltrationKind::Decreasing, ambient, 0, steps)?;
        Ok(HodgeFlag { k, declared, filtration })
    }

    /// Flag spanned by the given vectors: `generators[p]` spans `F^p`.
    pub fn from_vectors(ambient: usize, generators: &[Vec<Vec<Gaussian>>]) -> Result<Self> {
        let steps = generators.iter().map(|g| Subspace::span(ambient, g)).collect::<Result<_>>()?;
        Self::new(steps)
    }

    pub fn weight(&self) -> usize {
        self.k
    }

    pub fn ambient(&self) -> usize {
        self.filtration.ambient()
    }

    /// `F^p`: all of `F^0` for `p < 0` and zero for `p > k`.
    pub fn get(&self, p: i64) -> Subspace<Gaussian> {
        self.filtration.get(p)
    }

    pub fn filtration(&self) -> &Filtration<Gaussian> {
        &self.filtration
    }

    pub fn dims(&self) -> Vec<usize> {
        self.filtration.dims()
    }

    pub fn declared_dims(&self) -> &[usize] {
        &self.declared
    }

    /// `g F^•` for an automorphism `g`.
    pub fn transformed(&self, g: &Matrix<Gaussian>) -> Result<Self> {
        let steps = self.filtration.steps().iter().map(|s| s.image_under(g)).collect::<Result<_>>()?;
        Self::with_dims(self.declared.clone(), steps)
    }

    pub fn to_json(&self) -> Value {
        let steps: Map<String, Value> = self
            .filtration
            .steps()
            .iter()
            .enumerate()
            .map(|(p, s)| (p.to_string(), Value::Array(s.vectors().iter().map(|v| vec_to_json(v)).collect())))
            .collect();
        json!({"f": self.declared, "steps": steps})
    }

    /// Reads `{"f": [f^0, …, f^k], "steps": {"p": [vectors]}}` in an ambient of
    /// dimension `dim`. A missing step is `V` when `f^p = dim` and `0` when `f^p = 0`.
    pub fn from_json(v: &Value, dim: usize) -> Result<Self> {
        let f: Vec<usize> = v
            .get("f")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("flag needs array \"f\"".into()))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse("f entries must be counts".into())))
            .collect::<Result<_>>()?;
        if f.is_empty() {
            return Err(Error::Parse("flag needs at least F^0".into()));
        }
        let steps_obj = match v.get("steps") {
            None => Map::new(),
            Some(s) => s.as_object().cloned().ok_or_else(|| Error::Parse("\"steps\" must be an object".into()))?,
        };
        if let Some(key) = steps_obj.keys().find(|key| key.parse::<usize>().map_or(true, |p| p >= f.len())) {
            return Err(Error::Parse(format!("flag step {key:?} is out of range")));
        }
        let mut steps = Vec::with_capacity(f.len());
        for (p, &fp) in f.iter().enumerate() {
            let step = match steps_obj.get(&p.to_string()) {
                Some(rows) => {
                    let rows = rows.as_array().ok_or_else(|| Error::Parse(format!("step {p} must be a list")))?;
                    let vecs = rows
                        .iter()
                        .map(|r| {
                            let r = r.as_array().ok_or_else(|| Error::Parse(format!("step {p}: rows must be lists")))?;
                            if r.len() != dim {
                                return Err(Error::Parse(format!("step {p}: vector of length {}, expected {dim}", r.len())));
                            }
                            r.iter().map(Gaussian::from_json).collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Subspace::span(dim, &vecs)?
                }
                None if fp == dim => Subspace::full(dim),
                None if fp == 0 => Subspace::zero(dim),
                None => return Err(Error::Parse(format!("flag step {p} missing"))),
            };
            steps.push(step);
        }
        Self::with_dims(f, steps)
    }
}

/// Outcome of [`in_compact_dual`]. Dimension problems and isotropy failures
/// are reported separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactDualCheck {
    pub dims_ok: bool,
    pub isotropic: bool,
    pub diagnostics: Vec<String>,
    /// `(u, v)` with `u ∈ F^p`, `v ∈ F^{k+1−p}` and `Q(u, v) ≠ 0`.
    pub witness: Option<(Vec<Gaussian>, Vec<Gaussian>)>,
}

impl CompactDualCheck {
    pub fn ok(&self) -> bool {
        self.dims_ok && self.isotropic
    }
}

/// Whether `F` lies in the compact dual of `(V, Q)`: `F^0 = V_ℂ`, the step
/// dimensions are the declared ones and come from symmetric Hodge numbers,
/// and `Q(F^p, F^{k+1−p}) = 0`.
pub fn in_compact_dual(flag: &HodgeFlag, space: &FormSpace) -> CompactDualCheck {
    let mut diag = Vec::new();
    let dims = flag.dims();
    if flag.ambient() != space.dim() {
        diag.push(format!("flag lives in dimension {}, space has dimension {}", flag.ambient(), space.dim()));
    }
    if flag.weight() != space.k() {
        diag.push(format!("flag has weight {}, form has k = {}", flag.weight(), space.k()));
    }
    if dims != flag.declared_dims() {
        diag.push(format!("flag dimensions {:?} differ from declared {:?}", dims, flag.declared_dims()));
    }
    if dims.first() != Some(&flag.ambient()) {
        diag.push("F^0 is not all of V".into());
    }
    if let Err(e) = HodgeNumbers::from_flag_dims(&dims) {
        diag.push(format!("flag dimensions do not come from Hodge numbers: {e}"));
    }
    if !diag.is_empty() {
        return CompactDualCheck { dims_ok: false, isotropic: false, diagnostics: diag, witness: None };
    }
    let q = space.gram().complexify();
    let k = flag.weight() as i64;
    for p in 1..=k {
        let a = flag.get(p).vectors();
        let b = flag.get(k + 1 - p).vectors();
        for u in &a {
            for v in &b {
                if !pair(u, &q, v).is_zero() {
                    diag.push(format!("Q(F^{p}, F^{}) != 0", k + 1 - p));
                    return CompactDualCheck {
                        dims_ok: true,
                        isotropic: false,
                        diagnostics: diag,
                        witness: Some((u.clone(), v.clone())),
                    };
                }
            }
        }
    }
    CompactDualCheck { dims_ok: true, isotropic: true, diagnostics: diag, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::fixtures;
    use num_traits::One;
    
    #[test]
    fn flag_dimension_examples() {
        assert_eq!(flag_dims(&HodgeNumbers::from_list(&[1, 1]).unwrap()), vec![2, 1]);
        assert_eq!(flag_dims(&HodgeNumbers::from_list(&[1, 2, 1]).unwrap()), vec![4, 3, 1]);
        assert_eq!(flag_dims(&HodgeNumbers::from_list(&[1, 0, 0, 1]).unwrap()), vec![2, 1, 1, 1]);
        assert!(HodgeNumbers::from_list(&[1, 2]).is_err());
        let h = HodgeNumbers::from_flag_dims(&[4, 3, 1]).unwrap();
        assert_eq!((h.get(2), h.get(1), h.get(0)), (1, 2, 1));
    }

    #[test]
    fn compact_dual_examples() {
        let fx = fixtures::elliptic();
        assert!(in_compact_dual(&fx.flag, &fx.space).ok());
        let (one, zero) = (Gaussian::one(), Gaussian::zero());
        let frame = vec![vec![one.clone(), zero.clone()], vec![zero, one.clone()]];
        let diag = HodgeFlag::from_vectors(2, &[frame, vec![vec![one.clone(), one]]]).unwrap();
        assert!(in_compact_dual(&diag, &fx.space).ok());
        let wrong = HodgeFlag::with_dims(vec![2, 1], vec![Subspace::full(2), Subspace::full(2)]).unwrap();
        let c = in_compact_dual(&wrong, &fx.space);
        assert!(!c.dims_ok && !c.ok());
    }

    #[test]
    fn isotropy_failure_has_witness() {
        let fx = fixtures::weight_two_type_three();
        let g = Gaussian::one();
        let z = Gaussian::zero();
        // F^2 = span(e0 + e2) pairs nontrivially with itself.
        let bad = HodgeFlag::from_vectors(
            3,
            &[
                vec![vec![g.clone(), z.clone(), z.clone()], vec![z.clone(), g.clone(), z.clone()], vec![z.clone(), z.clone(), g.clone()]],
                vec![vec![g.clone(), z.clone(), g.clone()], vec![z.clone(), g.clone(), z.clone()]],
                vec![vec![g.clone(), z.clone(), g.clone()]],
            ],
        )
        .unwrap();
        let c = in_compact_dual(&bad, &fx.space);
        assert!(c.dims_ok && !c.isotropic);
        let (u, v) = c.witness.unwrap();
        assert!(!pair(&u, &fx.space.gram().complexify(), &v).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let fx = fixtures::weight_two_type_two();
        let j = fx.flag.to_json();
        assert_eq!(HodgeFlag::from_json(&j, fx.space.dim()).unwrap(), fx.flag);
        assert!(HodgeFlag::from_json(&json!({"f": [2, 1]}), 2).is_err());
        assert_eq!(HodgeFlag::from_json(&json!({"f": [2, 0]}), 2).unwrap().dims(), vec![2, 0]);
    }
}
