//! Cones built from the limiting mixed Hodge structures in
//! [`crate::hodge::fixtures`], from direct sums of them, and from
//! Siegel-type spaces `A ⊕ A*`, together with cones that are not nilpotent orbits.

use num_traits::Zero;

use crate::hodge::fixtures::{self as hf, rvec, LmhsFixture};
use crate::hodge::HodgeFlag;
use crate::matrix::Matrix;
use crate::nilpotent::FormSpace;
use crate::scalar::{rat, Gaussian, Rational};
use crate::subspace::Subspace;

use super::NilpotentCone;

#[derive(Clone, Debug)]
pub struct ConeFixture {
    pub name: String,
    pub cone: NilpotentCone,
    /// The open cone is a nilpotent orbit (so every check should pass).
    pub expect_orbit: bool,
}

fn scaled(fx: LmhsFixture, factors: &[i64]) -> ConeFixture {
    let gens = factors.iter().map(|&c| fx.n.matrix().scale(&rat(c))).collect();
    let name = format!("{}-x{}", fx.name, factors.iter().map(i64::to_string).collect::<Vec<_>>().join("-"));
    ConeFixture { name, cone: NilpotentCone::new(fx.space, fx.flag, gens).unwrap(), expect_orbit: true }
}

fn pad(v: &[Gaussian], before: usize, after: usize) -> Vec<Gaussian> {
    let mut out = vec![Gaussian::zero(); before];
    out.extend_from_slice(v);
    out.extend(std::iter::repeat_n(Gaussian::zero(), after));
    out
}

/// `(V_a ⊕ V_b, F_a ⊕ F_b)` with generators `N_a ⊕ 0` and `0 ⊕ N_b`.
fn direct_sum(a: LmhsFixture, b: LmhsFixture) -> ConeFixture {
    let (da, db) = (a.space.dim(), b.space.dim());
    let d = da + db;
    let q = Matrix::block_diagonal(&[a.space.gram().clone(), b.space.gram().clone()]);
    let space = FormSpace::new(a.space.k(), q).unwrap();
    let steps = (0..=a.flag.weight() as i64)
        .map(|p| {
            let mut vs: Vec<Vec<Gaussian>> = a.flag.get(p).vectors().iter().map(|v| pad(v, 0, db)).collect();
            vs.extend(b.flag.get(p).vectors().iter().map(|v| pad(v, da, 0)));
            Subspace::span(d, &vs).unwrap()
        })
        .collect();
    let flag = HodgeFlag::new(steps).unwrap();
    let na = Matrix::block_diagonal(&[a.n.matrix().clone(), Matrix::zeros(db, db)]);
    let nb = Matrix::block_diagonal(&[Matrix::zeros(da, da), b.n.matrix().clone()]);
    let name = format!("{}+{}", a.name, b.name);
    ConeFixture { name, cone: NilpotentCone::new(space, flag, vec![na, nb]).unwrap(), expect_orbit: true }
}

/// `V = A ⊕ A*` of weight 1 with `Q(v_i, w_j) = δ_ij`, `F^1 = A`, and
/// generators `N_B v_i = Σ_j B_ji w_j` for symmetric `B`.
fn b_space(name: &str, bs: &[&[&[i64]]], expect_orbit: bool) -> ConeFixture {
    let a = bs[0].len();
    let d = 2 * a;
    let q = Matrix::from_fn(d, d, |i, j| {
        if i < a && j == i + a {
            rat(1)
        } else if j < a && i == j + a {
            rat(-1)
        } else {
            rat(0)
        }
    });
    let space = FormSpace::new(1, q).unwrap();
    let gens: Vec<Matrix<Rational>> = bs
        .iter()
        .map(|b| Matrix::from_fn(d, d, |i, j| if i >= a && j < a { rat(b[i - a][j]) } else { rat(0) }))
        .collect();
    let f1: Vec<Vec<Gaussian>> = (0..a)
        .map(|i| rvec(&(0..d).map(|j| (i == j) as i64).collect::<Vec<_>>()))
        .collect();
    let flag = HodgeFlag::new(vec![Subspace::full(d), Subspace::span(d, &f1).unwrap()]).unwrap();
    ConeFixture { name: name.into(), cone: NilpotentCone::new(space, flag, gens).unwrap(), expect_orbit }
}

pub fn elliptic_single() -> ConeFixture {
    let fx = hf::elliptic();
    let cone = NilpotentCone::new(fx.space, fx.flag, vec![fx.n.matrix().clone()]).unwrap();
    ConeFixture { name: "elliptic".into(), cone, expect_orbit: true }
}

pub fn scaled_elliptic() -> ConeFixture {
    scaled(hf::elliptic(), &[1, 2])
}

pub fn scaled_weight_one_mixed() -> ConeFixture {
    scaled(hf::weight_one_mixed(), &[1, 3])
}

pub fn scaled_hodge_tate() -> ConeFixture {
    scaled(hf::hodge_tate(), &[1, 1])
}

pub fn scaled_type_three() -> ConeFixture {
    scaled(hf::weight_two_type_three(), &[1, 2])
}

pub fn scaled_type_two() -> ConeFixture {
    scaled(hf::weight_two_type_two(), &[1, 5, 2])
}

pub fn elliptic_pair() -> ConeFixture {
    direct_sum(hf::elliptic(), hf::elliptic())
}

pub fn elliptic_and_mixed() -> ConeFixture {
    direct_sum(hf::elliptic(), hf::weight_one_mixed())
}

pub fn type_three_and_two() -> ConeFixture {
    direct_sum(hf::weight_two_type_three(), hf::weight_two_type_two())
}

pub fn type_three_pair() -> ConeFixture {
    direct_sum(hf::weight_two_type_three(), hf::weight_two_type_three())
}

/// `B ∈ {diag(1,0), diag(0,1), [[1,1],[1,1]]}`: every generator is degenerate,
/// every interior point is positive definite.
pub fn b_space_three() -> ConeFixture {
    b_space("b-space-3", &[&[&[1, 0], &[0, 0]], &[&[0, 0], &[0, 1]], &[&[1, 1], &[1, 1]]], true)
}

/// `B ∈ {[[1,1],[1,1]], [[1,−1],[−1,1]]}`.
pub fn b_space_rotated() -> ConeFixture {
    b_space("b-space-rotated", &[&[&[1, 1], &[1, 1]], &[&[1, -1], &[-1, 1]]], true)
}

/// Rank-3 version: `diag(1,1,0)`, `diag(0,1,1)` and `e_1 + e_3` squared.
pub fn b_space_six() -> ConeFixture {
    b_space(
        "b-space-6",
        &[
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]],
            &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[1, 0, 1], &[0, 0, 0], &[1, 0, 1]],
        ],
        true,
    )
}

/// Generators `N` and `−N`: the barycenter is `0`.
pub fn elliptic_opposite() -> ConeFixture {
    let fx = hf::elliptic();
    let n = fx.n.matrix().clone();
    let cone = NilpotentCone::new(fx.space, fx.flag, vec![n.clone(), -&n]).unwrap();
    ConeFixture { name: "elliptic-opposite".into(), cone, expect_orbit: false }
}

/// `B = diag(1,0)` and `−diag(1,0)`.
pub fn b_space_opposite() -> ConeFixture {
    b_space("b-space-opposite", &[&[&[1, 0], &[0, 0]], &[&[-1, 0], &[0, 0]]], false)
}

/// `B = diag(1,1)` and `diag(−1,0)`: `t¹ − t²` changes sign inside the cone.
pub fn b_space_sign_change() -> ConeFixture {
    b_space("b-space-sign-change", &[&[&[1, 0], &[0, 1]], &[&[-1, 0], &[0, 0]]], false)
}

/// Cones whose interior is a nilpotent orbit; all but the first have two or more generators.
pub fn orbit_fixtures() -> Vec<ConeFixture> {
    vec![
        elliptic_single(),
        scaled_elliptic(),
        scaled_weight_one_mixed(),
        scaled_hodge_tate(),
        scaled_type_three(),
        scaled_type_two(),
        elliptic_pair(),
        elliptic_and_mixed(),
        type_three_and_two(),
        type_three_pair(),
        b_space_three(),
        b_space_rotated(),
        b_space_six(),
    ]
}

pub fn adversarial() -> Vec<ConeFixture> {
    vec![elliptic_opposite(), b_space_opposite(), b_space_sign_change()]
}

pub fn all() -> Vec<ConeFixture> {
    let mut out = orbit_fixtures();
    out.extend(adversarial());
    out
}
