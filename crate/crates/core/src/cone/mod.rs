//! Nilpotent cones `{Σ tⁱ N_i : tⁱ > 0}` with a Hodge flag: validation,
//! sampling, constancy of the weight filtration, and constancy of the
//! conjugacy-class invariants across the cone.

pub mod fixtures;
mod sample;
mod verify;

pub use sample::{sample_cone, SampleStrategy, VERTEX_WEIGHT};
pub use verify::{verify_ck, verify_theorem1, CkMismatch, CkReport, CongruenceReport, SampleResult};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hodge::{is_lmhs, HodgeFlag};
use crate::matrix::{vec_to_json, Matrix};
use crate::nilpotent::{FormSpace, NilpotentElement};
use crate::scalar::{rat, Gaussian, Rational};

#[derive(Clone, Debug)]
pub struct NilpotentCone {
    pub space: FormSpace,
    pub flag: HodgeFlag,
    pub generators: Vec<NilpotentElement>,
}

impl NilpotentCone {
    pub fn new(space: FormSpace, flag: HodgeFlag, generators: Vec<Matrix<Rational>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Dimension("a cone needs at least one generator".into()));
        }
        if flag.ambient() != space.dim() {
            return Err(Error::Dimension(format!("flag in dimension {}, space of dimension {}", flag.ambient(), space.dim())));
        }
        let generators = generators
            .into_iter()
            .map(|n| NilpotentElement::new(space.clone(), n))
            .collect::<Result<_>>()?;
        Ok(NilpotentCone { space, flag, generators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `Σ tⁱ N_i`, which must again be nilpotent.
    pub fn element(&self, t: &[Rational]) -> Result<NilpotentElement> {
        if t.len() != self.rank() {
            return Err(Error::Dimension(format!("{} coefficients for {} generators", t.len(), self.rank())));
        }
        let d = self.space.dim();
        let mut acc = Matrix::zeros(d, d);
        for (ti, n) in t.iter().zip(&self.generators) {
            acc = &acc + &n.matrix().scale(ti);
        }
        NilpotentElement::new(self.space.clone(), acc)
    }

    /// Dimension of the span of the generators.
    pub fn independent_generators(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.generators.iter().map(|n| n.matrix().entries().to_vec()).collect();
        let d = self.space.dim();
        Matrix::from_rows(rows, d * d).map(|m| m.rank()).unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.to_json(),
            "flag": self.flag.to_json(),
            "generators": self.generators.iter().map(|n| n.matrix().to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let space = FormSpace::from_json(v.get("space").ok_or_else(|| Error::Parse("cone needs \"space\"".into()))?)?;
        let flag = HodgeFlag::from_json(v.get("flag").ok_or_else(|| Error::Parse("cone needs \"flag\"".into()))?, space.dim())?;
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("cone needs array \"generators\"".into()))?
            .iter()
            .map(Matrix::<Rational>::from_json)
            .collect::<Result<Vec<_>>>()?;
        if let Some(g) = gens.iter().find(|g| g.rows() != space.dim() || g.cols() != space.dim()) {
            return Err(Error::Parse(format!("{}x{} generator in dimension {}", g.rows(), g.cols(), space.dim())));
        }
        Self::new(space, flag, gens)
    }
}

/// A ray `Σ tⁱ N_i` tested for the limiting-mixed-Hodge-structure property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayCheck {
    pub t: Vec<Rational>,
    pub lmhs: bool,
    pub failed_axioms: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeValidation {
    pub commutation: bool,
    pub horizontality: bool,
    /// Barycenter and near-vertex interior rays.
    pub rays_lmhs: bool,
    pub diagnostics: Vec<String>,
    /// `[N_i, N_j] ≠ 0` at entry `(r, c)`: `(i, j, r, c)`.
    pub commutation_witness: Option<(usize, usize, usize, usize)>,
    /// `N_i v ∉ F^{p−1}` for `v ∈ F^p`: `(i, p, v)`.
    pub horizontality_witness: Option<(usize, i64, Vec<Gaussian>)>,
    /// One entry per generator. Generators sit on the boundary of the open
    /// cone, so these are reported but do not enter the verdict.
    pub generators: Vec<RayCheck>,
    pub rays: Vec<RayCheck>,
}

impl ConeValidation {
    pub fn ok(&self) -> bool {
        self.commutation && self.horizontality && self.rays_lmhs
    }

    pub fn to_json(&self) -> Value {
        let ray = |r: &RayCheck| {
            json!({"t": r.t.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "lmhs": r.lmhs, "failed_axioms": r.failed_axioms})
        };
        json!({
            "ok": self.ok(),
            "commutation": self.commutation,
            "horizontality": self.horizontality,
            "rays_lmhs": self.rays_lmhs,
            "diagnostics": self.diagnostics,
            "commutation_witness": self.commutation_witness.map(|(i, j, r, c)| json!({"i": i, "j": j, "entry": [r, c]})),
            "horizontality_witness": self.horizontality_witness.as_ref().map(|(i, p, v)| json!({"generator": i, "p": p, "vector": vec_to_json(v)})),
            "generators": self.generators.iter().map(ray).collect::<Vec<_>>(),
            "rays": self.rays.iter().map(ray).collect::<Vec<_>>(),
        })
    }
}

fn ray_check(cone: &NilpotentCone, t: Vec<Rational>) -> RayCheck {
    match cone.element(&t).and_then(|n| is_lmhs(&cone.flag, &n)) {
        Ok(r) => RayCheck { t, lmhs: r.verdict, failed_axioms: r.failed_axioms() },
        Err(_) => RayCheck { t, lmhs: false, failed_axioms: vec!["nilpotent"] },
    }
}

/// Pairwise commutation, horizontality of every generator, and the
/// limiting-mixed-Hodge-structure axioms along the barycenter and the
/// near-vertex rays `(d, 1, …, 1)`. The rays give a partial certificate:
/// they certify one-variable orbits along the tested rays only.
pub fn validate_cone(cone: &NilpotentCone) -> ConeValidation {
    let mut diag = Vec::new();
    let mut commutation_witness = None;
    'comm: for i in 0..cone.rank() {
        for j in i + 1..cone.rank() {
            let c = cone.generators[i].matrix().commutator(cone.generators[j].matrix());
            if let Some(idx) = c.entries().iter().position(|x| *x != rat(0)) {
                diag.push(format!("[N_{i}, N_{j}] != 0"));
                commutation_witness = Some((i, j, idx / c.cols(), idx % c.cols()));
                break 'comm;
            }
        }
    }
    let mut horizontality_witness = None;
    'hor: for (i, n) in cone.generators.iter().enumerate() {
        let nc = n.matrix().complexify();
        for p in 1..=cone.flag.weight() as i64 {
            let target = cone.flag.get(p - 1);
            if let Some(v) = cone.flag.get(p).vectors().into_iter().find(|v| !target.contains_vector(&nc.apply(v))) {
                diag.push(format!("N_{i} F^{p} is not contained in F^{}", p - 1));
                horizontality_witness = Some((i, p, v));
                break 'hor;
            }
        }
    }
    let r = cone.rank();
    let generators = (0..r)
        .map(|i| ray_check(cone, (0..r).map(|j| rat((i == j) as i64)).collect()))
        .collect();
    let mut rays = vec![ray_check(cone, vec![rat(1); r])];
    if r > 1 {
        for i in 0..r {
            rays.push(ray_check(cone, (0..r).map(|j| rat(if i == j { VERTEX_WEIGHT } else { 1 })).collect()));
        }
    }
    for ray in rays.iter().filter(|ray| !ray.lmhs) {
        let t: Vec<String> = ray.t.iter().map(|x| x.to_string()).collect();
        diag.push(format!("ray ({}) fails {}", t.join(", "), ray.failed_axioms.join(", ")));
    }
    ConeValidation {
        commutation: commutation_witness.is_none(),
        horizontality: horizontality_witness.is_none(),
        rays_lmhs: rays.iter().all(|r| r.lmhs),
        diagnostics: diag,
        commutation_witness,
        horizontality_witness,
        generators,
        rays,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        for fx in fixtures::all() {
            let v = validate_cone(&fx.cone);
            assert_eq!(v.ok(), fx.expect_orbit, "{}: {:?}", fx.name, v.diagnostics);
        }
    }

    #[test]
    fn boundary_generators_are_not_lmhs() {
        let fx = fixtures::b_space_three();
        let v = validate_cone(&fx.cone);
        assert!(v.ok());
        assert!(v.generators.iter().all(|g| !g.lmhs));
    }

    #[test]
    fn commutation_failure() {
        let fx = fixtures::b_space_three();
        let d = fx.cone.space.dim();
        // An element of sp(4) that does not commute with the B-type generators.
        let mut x = Matrix::<Rational>::zeros(d, d);
        x.set(0, 2, rat(1));
        assert!(fx.cone.space.is_in_lie_algebra(&x));
        let mut gens: Vec<Matrix<Rational>> = fx.cone.generators.iter().map(|n| n.matrix().clone()).collect();
        gens.push(x);
        let cone = NilpotentCone::new(fx.cone.space.clone(), fx.cone.flag.clone(), gens).unwrap();
        let v = validate_cone(&cone);
        assert!(!v.commutation);
        let (i, j, _, _) = v.commutation_witness.unwrap();
        assert_eq!(j, 3);
        assert!(i < 3);
        // x maps F^1 out of itself only through F^0, so horizontality still holds.
        assert!(v.horizontality);
    }

    #[test]
    fn horizontality_failure() {
        use crate::hodge::fixtures::rvec;
        use crate::subspace::Subspace;
        let fx = fixtures::scaled_type_three();
        // N e0 = e1 leaves F^1 = span(e0, e2).
        let flag = HodgeFlag::new(vec![
            Subspace::full(3),
            Subspace::span(3, &[rvec(&[1, 0, 0]), rvec(&[0, 0, 1])]).unwrap(),
            Subspace::span(3, &[rvec(&[1, 0, 0])]).unwrap(),
        ])
        .unwrap();
        let gens = fx.cone.generators.iter().map(|n| n.matrix().clone()).collect();
        let cone = NilpotentCone::new(fx.cone.space.clone(), flag, gens).unwrap();
        let v = validate_cone(&cone);
        assert!(v.commutation && !v.horizontality);
        let (i, p, w) = v.horizontality_witness.unwrap();
        assert_eq!((i, p, w), (0, 2, rvec(&[1, 0, 0])));
    }

    #[test]
    fn json_round_trip() {
        for fx in fixtures::all() {
            let j = fx.cone.to_json();
            let back = NilpotentCone::from_json(&j).unwrap();
            assert_eq!(back.to_json(), j);
        }
    }
}
