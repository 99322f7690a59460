use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};
use crate::subspace::Subspace;

use super::{jordan_type, NilpotentElement};

/// `{M, Y, N}` with `[Y, M] = 2M`, `[Y, N] = −2N`, `[M, N] = Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTriple {
    pub m: Matrix<Rational>,
    pub y: Matrix<Rational>,
    pub n: Matrix<Rational>,
}

impl StandardTriple {
    pub fn relations_hold(&self) -> bool {
        let two = Rational::from_int(2);
        self.y.commutator(&self.m) == self.m.scale(&two)
            && self.y.commutator(&self.n) == self.n.scale(&-two)
            && self.m.commutator(&self.n) == self.y
    }

    /// Eigenspaces of `Y`, keyed by (integer) eigenvalue. Fails unless `Y`
    /// is diagonalizable with integer eigenvalues in `[−bound, bound]`.
    pub fn weight_spaces(&self, bound: usize) -> Result<BTreeMap<i64, Subspace<Rational>>> {
        let n = self.y.rows();
        let mut spaces = BTreeMap::new();
        let mut total = 0;
        for w in -(bound as i64)..=(bound as i64) {
            let shifted = &self.y - &Matrix::identity(n).scale(&Rational::from_int(w));
            let e = shifted.kernel();
            total += e.dim();
            if !e.is_zero() {
                spaces.insert(w, e);
            }
        }
        if total != n {
            return Err(Error::Inconsistent(format!(
                "Y has only {total} of {n} eigenvectors with integer eigenvalues in [-{bound}, {bound}]"
            )));
        }
        Ok(spaces)
    }
}

/// Standard triple with nilnegative element `N` and `M, Y ∈ End(V, Q)`.
///
/// Both steps are linear systems over a basis of the Lie algebra `g`:
/// first `Y ∈ [g, N]` with `[Y, N] = −2N`, then `M ∈ g` with `[M, N] = Y`
/// and `[Y, M] = 2M`. Solvability of the second system given the first is
/// Morozov's lemma; free variables are set to zero.
pub fn standard_triple(n: &NilpotentElement) -> Result<StandardTriple> {
    let nm = n.matrix();
    if nm.is_zero() {
        return Err(Error::ZeroNilpotent);
    }
    let basis = n.space().lie_algebra_basis();
    let two = Rational::from_int(2);

    let ad_n: Vec<Matrix<Rational>> = basis.iter().map(|b| b.commutator(nm)).collect();
    let cols: Vec<Vec<Rational>> = ad_n.iter().map(|x| x.commutator(nm).entries().to_vec()).collect();
    let rhs = nm.scale(&-two.clone()).entries().to_vec();
    let z = solve_columns(&cols, &rhs)?
        .ok_or_else(|| Error::Inconsistent("no neutral element Y in [g, N]".into()))?;
    let y = combine(&ad_n, &z, nm.rows());

    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut c = b.commutator(nm).entries().to_vec();
        c.extend((&y.commutator(b) - &b.scale(&two)).entries().iter().cloned());
        cols.push(c);
    }
    let mut rhs = y.entries().to_vec();
    rhs.extend(std::iter::repeat_n(Rational::from_int(0), nm.rows() * nm.cols()));
    let w = solve_columns(&cols, &rhs)?
        .ok_or_else(|| Error::Inconsistent("no nilpositive element M for the chosen Y".into()))?;
    let m = combine(&basis, &w, nm.rows());

    let triple = StandardTriple { m, y, n: nm.clone() };
    if !triple.relations_hold() {
        return Err(Error::Inconsistent("standard triple relations fail".into()));
    }
    Ok(triple)
}

fn solve_columns(cols: &[Vec<Rational>], rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let a = Matrix::from_columns(cols, rhs.len())?;
    a.solve(rhs)
}

fn combine(mats: &[Matrix<Rational>], coeffs: &[Rational], n: usize) -> Matrix<Rational> {
    mats.iter()
        .zip(coeffs)
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .fold(Matrix::zeros(n, n), |acc, (m, c)| &acc + &m.scale(c))
}

/// Isotypic components `V(ℓ)` and highest weight spaces `P(ℓ)` of the
/// `sl₂`-module structure defined by a standard triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    pub m: Vec<usize>,
    pub isotypic: Vec<Subspace<Rational>>,
    pub highest_weight: Vec<Subspace<Rational>>,
}

/// `P(ℓ) = ker N^{ℓ+1} ∩ {Y = ℓ}` and `V(ℓ) = ⊕_a N^a P(ℓ)`, with all
/// dimension identities checked against the Jordan type.
pub fn highest_weight_spaces(n: &NilpotentElement, triple: &StandardTriple) -> Result<JordanData> {
    if &triple.n != n.matrix() || !triple.relations_hold() {
        return Err(Error::Inconsistent("triple does not belong to N".into()));
    }
    let m = jordan_type(n);
    let len = m.len();
    let spaces = triple.weight_spaces(len)?;
    let dim = n.dim();
    let mut isotypic = Vec::with_capacity(len);
    let mut highest = Vec::with_capacity(len);
    let mut total = Subspace::zero(dim);
    for (l, &ml) in m.iter().enumerate() {
        let eigen = spaces.get(&(l as i64)).cloned().unwrap_or_else(|| Subspace::zero(dim));
        let kernel = n.matrix().power(l as u32 + 1)?.kernel();
        let p = kernel.intersect(&eigen)?;
        if p.dim() != ml {
            return Err(Error::Inconsistent(format!("dim P({l}) = {} but m_{l} = {ml}", p.dim())));
        }
        let mut v = Subspace::zero(dim);
        let mut layer = p.clone();
        for _ in 0..=l {
            v = v.sum(&layer)?;
            layer = layer.image_under(n.matrix())?;
        }
        if v.dim() != (l + 1) * ml {
            return Err(Error::Inconsistent(format!("V({l}) has dimension {}", v.dim())));
        }
        total = total.sum(&v)?;
        isotypic.push(v);
        highest.push(p);
    }
    if !total.is_full() {
        return Err(Error::Inconsistent("isotypic components do not exhaust V".into()));
    }
    Ok(JordanData { m, isotypic, highest_weight: highest })
}
