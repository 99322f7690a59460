//! Structure theory of a nilpotent `N ∈ End(V, Q)`.

mod graded;
pub mod group;
mod triple;
mod weight;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::{FormParity, Signature, SymForm};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

pub use graded::{invariants, primitive_part, q_ell, GradedForm};
pub use triple::{highest_weight_spaces, standard_triple, JordanData, StandardTriple};
pub use weight::{weight_filtration, weight_filtration_centered, weight_filtration_from_triple, WeightFiltration};

/// `(V, Q, k)`: a vector space with a nondegenerate `(−1)^k`-symmetric form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    k: usize,
    q: SymForm,
}

impl FormSpace {
    pub fn new(k: usize, gram: Matrix<Rational>) -> Result<Self> {
        let q = SymForm::new(gram, FormParity::of_weight(k as i64))?;
        let radical = q.radical().dim();
        if radical != 0 {
            return Err(Error::Degenerate(radical));
        }
        Ok(FormSpace { k, q })
    }

    pub fn dim(&self) -> usize {
        self.q.dim()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn form(&self) -> &SymForm {
        &self.q
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        self.q.gram()
    }

    pub fn parity(&self) -> FormParity {
        self.q.parity()
    }

    /// `Q(Xu, v) + Q(u, Xv) = 0`, i.e. `XᵀQ + QX = 0`.
    pub fn is_in_lie_algebra(&self, x: &Matrix<Rational>) -> bool {
        x.rows() == self.dim()
            && x.cols() == self.dim()
            && (&(&x.transpose() * self.gram()) + &(self.gram() * x)).is_zero()
    }

    /// `gᵀ Q g = Q`.
    pub fn preserves(&self, g: &Matrix<Rational>) -> bool {
        g.rows() == self.dim() && g.cols() == self.dim() && &(&g.transpose() * self.gram()) * g == *self.gram()
    }

    /// Basis of `End(V, Q) = Q⁻¹ · {A : Aᵀ = −εA}` where `Qᵀ = εQ`.
    pub fn lie_algebra_basis(&self) -> Vec<Matrix<Rational>> {
        let n = self.dim();
        let qinv = self.gram().inverse().expect("nondegenerate form");
        let eps = self.parity().sign();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i == j && eps == 1 {
                    continue;
                }
                let mut a = Matrix::<Rational>::zeros(n, n);
                a.set(i, j, Rational::from_int(1));
                // Aᵀ = −εA: symmetric when ε = −1, skew when ε = +1.
                let v = a.get(j, i).clone() + Rational::from_int(-eps);
                a.set(j, i, v);
                out.push(&qinv * &a);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"dim": self.dim(), "k": self.k, "Q": self.gram().to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("space needs integer \"k\"".into()))? as usize;
        let gram = Matrix::<Rational>::from_json(
            v.get("Q").ok_or_else(|| Error::Parse("space needs \"Q\"".into()))?,
        )?;
        if let Some(d) = v.get("dim") {
            let d = d.as_u64().ok_or_else(|| Error::Parse("\"dim\" must be an integer".into()))? as usize;
            if d != gram.rows() || !gram.is_square() {
                return Err(Error::Parse(format!("\"dim\" is {d} but Q is {}x{}", gram.rows(), gram.cols())));
            }
        }
        FormSpace::new(k, gram)
    }
}

/// A nilpotent element of `End(V, Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentElement {
    space: FormSpace,
    n: Matrix<Rational>,
}

impl NilpotentElement {
    pub fn new(space: FormSpace, n: Matrix<Rational>) -> Result<Self> {
        if n.rows() != space.dim() || n.cols() != space.dim() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix on a space of dimension {}",
                n.rows(),
                n.cols(),
                space.dim()
            )));
        }
        if !space.is_in_lie_algebra(&n) {
            return Err(Error::NotInLieAlgebra("Q(Nu, v) + Q(u, Nv) != 0".into()));
        }
        if !n.power(space.dim() as u32)?.is_zero() {
            return Err(Error::NotNilpotent);
        }
        Ok(NilpotentElement { space, n })
    }

    pub fn space(&self) -> &FormSpace {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.n
    }

    pub fn k(&self) -> usize {
        self.space.k
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Smallest `j` with `N^j = 0`.
    pub fn order(&self) -> usize {
        let mut p = Matrix::identity(self.dim());
        let mut j = 0;
        while !p.is_zero() {
            p = &p * &self.n;
            j += 1;
        }
        j
    }

    /// `t·N`, still in `End(V, Q)`.
    pub fn scaled(&self, t: &Rational) -> Self {
        NilpotentElement { space: self.space.clone(), n: self.n.scale(t) }
    }

    /// `g N g⁻¹` for `g ∈ Aut(V, Q)`.
    pub fn conjugated(&self, g: &Matrix<Rational>) -> Result<Self> {
        if !self.space.preserves(g) {
            return Err(Error::NotInLieAlgebra("conjugating matrix does not preserve Q".into()));
        }
        let inv = g.inverse().ok_or_else(|| Error::Inconsistent("automorphism is singular".into()))?;
        Ok(NilpotentElement { space: self.space.clone(), n: &(g * &self.n) * &inv })
    }

    pub fn to_json(&self) -> Value {
        json!({"space": self.space.to_json(), "N": self.n.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let space = FormSpace::from_json(v.get("space").ok_or_else(|| Error::Parse("missing \"space\"".into()))?)?;
        let n = Matrix::<Rational>::from_json(v.get("N").ok_or_else(|| Error::Parse("missing \"N\"".into()))?)?;
        NilpotentElement::new(space, n)
    }
}

/// Jordan multiplicities `m_ℓ` (number of `N`-strings of length `ℓ + 1`),
/// from the rank sequence `r_j = rank N^j`: `m_ℓ = r_ℓ − 2r_{ℓ+1} + r_{ℓ+2}`.
///
/// The result has length `max(k + 1, order)`, keeping trailing zeros.
pub fn jordan_type(n: &NilpotentElement) -> Vec<usize> {
    let len = (n.k() + 1).max(n.order());
    jordan_type_of_matrix(n.matrix(), len)
}

pub(crate) fn jordan_type_of_matrix(n: &Matrix<Rational>, len: usize) -> Vec<usize> {
    let mut ranks = Vec::with_capacity(len + 2);
    let mut p = Matrix::identity(n.rows());
    for _ in 0..len + 2 {
        ranks.push(p.rank() as i64);
        p = &p * n;
    }
    (0..len)
        .map(|l| {
            let m = ranks[l] - 2 * ranks[l + 1] + ranks[l + 2];
            debug_assert!(m >= 0);
            m as usize
        })
        .collect()
}

/// The conjugacy-class invariants `(m, s)`.
///
/// `s` has an entry for every `ℓ < m.len()` with `k + ℓ` even (including
/// `(0, 0)` where `m_ℓ = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitInvariants {
    pub m: Vec<usize>,
    pub s: BTreeMap<usize, (usize, usize)>,
}

impl OrbitInvariants {
    pub fn new(m: Vec<usize>, s: BTreeMap<usize, (usize, usize)>) -> Self {
        OrbitInvariants { m, s }
    }

    /// Total dimension `Σ (ℓ + 1) m_ℓ`.
    pub fn dim(&self) -> usize {
        self.m.iter().enumerate().map(|(l, &c)| (l + 1) * c).sum()
    }

    /// Jordan partition: string lengths in decreasing order.
    pub fn partition(&self) -> Vec<usize> {
        partition_of(&self.m)
    }

    pub fn signature(&self, ell: usize) -> Option<Signature> {
        self.s.get(&ell).map(|&(p, q)| Signature::from_counts(p, q))
    }

    pub fn to_json(&self) -> Value {
        let s: serde_json::Map<String, Value> =
            self.s.iter().map(|(l, (p, q))| (l.to_string(), json!([p, q]))).collect();
        json!({"m": self.m, "s": s})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let m = v
            .get("m")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("invariants need array \"m\"".into()))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse("m entries must be counts".into())))
            .collect::<Result<Vec<_>>>()?;
        let mut s = BTreeMap::new();
        if let Some(obj) = v.get("s") {
            let obj = obj.as_object().ok_or_else(|| Error::Parse("\"s\" must be an object".into()))?;
            for (key, val) in obj {
                let l: usize = key.parse().map_err(|_| Error::Parse(format!("bad s index {key:?}")))?;
                let pq = val
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .and_then(|a| Some((a[0].as_u64()? as usize, a[1].as_u64()? as usize)))
                    .ok_or_else(|| Error::Parse(format!("s[{key}] must be [p, q]")))?;
                s.insert(l, pq);
            }
        }
        Ok(OrbitInvariants { m, s })
    }
}

/// String lengths (parts) of the Jordan type `m`, largest first.
pub fn partition_of(m: &[usize]) -> Vec<usize> {
    let mut parts = Vec::new();
    for (l, &c) in m.iter().enumerate().rev() {
        parts.extend(std::iter::repeat_n(l + 1, c));
    }
    parts
}

/// Jordan type of a partition, padded to at least `len` entries.
pub fn jordan_type_of_partition(parts: &[usize], len: usize) -> Vec<usize> {
    let top = parts.iter().copied().max().unwrap_or(0);
    let mut m = vec![0; len.max(top)];
    for &p in parts.iter().filter(|&&p| p > 0) {
        m[p - 1] += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    pub(crate) fn elliptic() -> NilpotentElement {
        let space = FormSpace::new(1, Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        NilpotentElement::new(space, Matrix::from_i64(&[&[0, 0], &[1, 0]])).unwrap()
    }

    #[test]
    fn form_space_validation() {
        assert!(FormSpace::new(1, Matrix::from_i64(&[&[1, 0], &[0, 1]])).is_err());
        assert!(matches!(FormSpace::new(0, Matrix::from_i64(&[&[1, 0], &[0, 0]])), Err(Error::Degenerate(1))));
        let s = FormSpace::new(2, Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]])).unwrap();
        let basis = s.lie_algebra_basis();
        assert_eq!(basis.len(), 3);
        assert!(basis.iter().all(|b| s.is_in_lie_algebra(b)));
        let sp = FormSpace::new(1, Matrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]])).unwrap();
        let basis = sp.lie_algebra_basis();
        assert_eq!(basis.len(), 10);
        assert!(basis.iter().all(|b| sp.is_in_lie_algebra(b)));
    }

    #[test]
    fn element_validation() {
        let space = FormSpace::new(1, Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        // E_12 + E_21 is not nilpotent, and is not in sp(2) either.
        assert!(NilpotentElement::new(space.clone(), Matrix::from_i64(&[&[0, 1], &[1, 0]])).is_err());
        assert!(matches!(
            NilpotentElement::new(space.clone(), Matrix::from_i64(&[&[1, 0], &[0, -1]])),
            Err(Error::NotNilpotent)
        ));
        let o = FormSpace::new(0, Matrix::from_i64(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(matches!(
            NilpotentElement::new(o, Matrix::from_i64(&[&[0, 0], &[1, 0]])),
            Err(Error::NotInLieAlgebra(_))
        ));
    }

    #[test]
    fn jordan_type_examples() {
        let space = FormSpace::new(2, Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let zero = NilpotentElement::new(space, Matrix::zeros(3, 3)).unwrap();
        assert_eq!(jordan_type(&zero), vec![3, 0, 0]);
        assert_eq!(jordan_type(&elliptic()), vec![0, 1]);
        // blocks (3, 1): rank sequence 4, 2, 1, 0
        let n = Matrix::<Rational>::from_i64(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(jordan_type_of_matrix(&n, 4), vec![1, 0, 1, 0]);
        assert_eq!(partition_of(&[1, 0, 1, 0]), vec![3, 1]);
        assert_eq!(jordan_type_of_partition(&[3, 1], 4), vec![1, 0, 1, 0]);
    }

    #[test]
    fn invariants_json_round_trip() {
        let inv = OrbitInvariants::new(vec![0, 1], BTreeMap::from([(1, (1, 0))]));
        assert_eq!(inv.to_json(), json!({"m": [0, 1], "s": {"1": [1, 0]}}));
        assert_eq!(OrbitInvariants::from_json(&inv.to_json()).unwrap(), inv);
        let e = elliptic();
        assert_eq!(NilpotentElement::from_json(&e.to_json()).unwrap(), e);
        assert_eq!(e.scaled(&rat(3)).matrix().get(1, 0), &rat(3));
    }
}
