//! Small hand-built pairs `(F, N)`, most of them limiting mixed Hodge structures.

use std::collections::BTreeMap;

use crate::matrix::Matrix;
use crate::nilpotent::{FormSpace, NilpotentElement, OrbitInvariants};
use crate::orbit::construct_representative;
use crate::scalar::{rat, Gaussian};
use crate::subspace::Subspace;

use super::HodgeFlag;

#[derive(Clone, Debug)]
pub struct LmhsFixture {
    pub name: &'static str,
    pub space: FormSpace,
    pub n: NilpotentElement,
    pub flag: HodgeFlag,
    pub expect_lmhs: bool,
}

/// Vector `re + i·im` with integer entries.
pub fn gvec(re: &[i64], im: &[i64]) -> Vec<Gaussian> {
    re.iter().zip(im).map(|(&a, &b)| Gaussian::new(rat(a), rat(b))).collect()
}

/// Real vector with integer entries.
pub fn rvec(re: &[i64]) -> Vec<Gaussian> {
    re.iter().map(|&a| Gaussian::real(rat(a))).collect()
}

fn flag(dim: usize, gens: Vec<Vec<Vec<Gaussian>>>) -> HodgeFlag {
    let mut steps = vec![Subspace::full(dim)];
    steps.extend(gens.iter().map(|g| Subspace::span(dim, g).unwrap()));
    HodgeFlag::new(steps).unwrap()
}

fn model(m: &[usize], s: &[(usize, (usize, usize))], k: usize) -> (FormSpace, NilpotentElement) {
    let inv = OrbitInvariants::new(m.to_vec(), s.iter().copied().collect::<BTreeMap<_, _>>());
    construct_representative(&inv, k).unwrap()
}

/// `Q(e1, e2) = 1`, `N e1 = e2`, `F^1 = span(e1)`.
pub fn elliptic() -> LmhsFixture {
    let (space, n) = model(&[0, 1], &[(1, (1, 0))], 1);
    LmhsFixture { name: "elliptic", space, n, flag: flag(2, vec![vec![rvec(&[1, 0])]]), expect_lmhs: true }
}

/// The elliptic degeneration with `Q` replaced by `−Q`.
pub fn elliptic_flipped() -> LmhsFixture {
    let fx = elliptic();
    let space = FormSpace::new(1, -fx.space.gram()).unwrap();
    let n = NilpotentElement::new(space.clone(), fx.n.matrix().clone()).unwrap();
    LmhsFixture { name: "elliptic-flipped", space, n, expect_lmhs: false, ..fx }
}

/// `N = 0` and `F^1 = span(e1 + i e2)`, a point of the upper half plane.
pub fn pure_weight_one() -> LmhsFixture {
    let fx = elliptic();
    let n = NilpotentElement::new(fx.space.clone(), Matrix::zeros(2, 2)).unwrap();
    let flag = flag(2, vec![vec![gvec(&[1, 0], &[0, 1])]]);
    LmhsFixture { name: "pure-weight-one", n, flag, expect_lmhs: true, ..fx }
}

/// `N = 0` and `F^1 = span(e1 − i e2)`, a point of the lower half plane.
pub fn pure_weight_one_lower() -> LmhsFixture {
    let fx = pure_weight_one();
    let flag = flag(2, vec![vec![gvec(&[1, 0], &[0, -1])]]);
    LmhsFixture { name: "pure-weight-one-lower", flag, expect_lmhs: false, ..fx }
}

/// Weight 1, `m = (2, 1)`: one elliptic-type string plus a pure weight-one block.
pub fn weight_one_mixed() -> LmhsFixture {
    let (space, n) = model(&[2, 1], &[(1, (1, 0))], 1);
    let flag = flag(4, vec![vec![gvec(&[1, 0, 0, 0], &[0, 1, 0, 0]), rvec(&[0, 0, 1, 0])]]);
    LmhsFixture { name: "weight-one-mixed", space, n, flag, expect_lmhs: true }
}

/// Weight 1, `m = (0, 2)`: every `I^{p,q}` has `p = q`.
pub fn hodge_tate() -> LmhsFixture {
    let (space, n) = model(&[0, 2], &[(1, (2, 0))], 1);
    let flag = flag(4, vec![vec![rvec(&[1, 0, 0, 0]), rvec(&[0, 0, 1, 0])]]);
    LmhsFixture { name: "hodge-tate", space, n, flag, expect_lmhs: true }
}

/// Weight 2, `h = (1, 1, 1)`, one string of length 3.
pub fn weight_two_type_three() -> LmhsFixture {
    let (space, n) = model(&[0, 0, 1], &[(0, (0, 0)), (2, (1, 0))], 2);
    let flag = flag(3, vec![vec![rvec(&[1, 0, 0]), rvec(&[0, 1, 0])], vec![rvec(&[1, 0, 0])]]);
    LmhsFixture { name: "weight-two-type-three", space, n, flag, expect_lmhs: true }
}

/// Weight 2, `h = (1, 3, 1)`, two strings of length 2 and one of length 1.
pub fn weight_two_type_two() -> LmhsFixture {
    let (space, n) = model(&[1, 2, 0], &[(0, (1, 0)), (2, (0, 0))], 2);
    let x = gvec(&[0, 1, 0, 0, 0], &[0, 0, 0, 1, 0]);
    let nx = gvec(&[0, 0, 1, 0, 0], &[0, 0, 0, 0, 1]);
    let f1 = vec![rvec(&[1, 0, 0, 0, 0]), rvec(&[0, 1, 0, 0, 0]), rvec(&[0, 0, 0, 1, 0]), nx];
    let flag = flag(5, vec![f1, vec![x]]);
    LmhsFixture { name: "weight-two-type-two", space, n, flag, expect_lmhs: true }
}

/// Weight 2, `h = (1, 3, 1)` with `F^2` conjugated: fails positivity on `Gr_3`.
pub fn weight_two_type_two_conjugate() -> LmhsFixture {
    let fx = weight_two_type_two();
    let steps: Vec<Subspace<Gaussian>> = fx.flag.filtration().steps().iter().map(Subspace::conj).collect();
    let flag = HodgeFlag::new(steps).unwrap();
    LmhsFixture { name: "weight-two-type-two-conjugate", flag, expect_lmhs: false, ..fx }
}

pub fn all() -> Vec<LmhsFixture> {
    vec![
        elliptic(),
        elliptic_flipped(),
        pure_weight_one(),
        pure_weight_one_lower(),
        weight_one_mixed(),
        hodge_tate(),
        weight_two_type_three(),
        weight_two_type_two(),
        weight_two_type_two_conjugate(),
    ]
}
