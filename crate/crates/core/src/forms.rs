//! Symmetric, skew and Hermitian forms: signature and definiteness, decided exactly.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{pair, Matrix};
use crate::scalar::{Gaussian, Rational, Scalar};
use crate::subspace::Subspace;

/// Inertia `(p, q, z)`: positive, negative and radical dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub z: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize, z: usize) -> Self {
        Signature { p, q, z }
    }
}

/// Parity of a bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormParity {
    Symmetric,
    Skew,
}

impl FormParity {
    /// Parity of a `(−1)^w`-symmetric form.
    pub fn of_weight(w: i64) -> Self {
        if w.rem_euclid(2) == 0 {
            FormParity::Symmetric
        } else {
            FormParity::Skew
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            FormParity::Symmetric => 1,
            FormParity::Skew => -1,
        }
    }
}

/// Bilinear form with `gramᵀ = ±gram`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm {
    gram: Matrix<Rational>,
    parity: FormParity,
}

impl SymForm {
    pub fn new(gram: Matrix<Rational>, parity: FormParity) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!("{}x{} Gram matrix", gram.rows(), gram.cols())));
        }
        let expected = match parity {
            FormParity::Symmetric => gram.clone(),
            FormParity::Skew => -&gram,
        };
        if gram.transpose() != expected {
            return Err(Error::FormSymmetry {
                expected: match parity {
                    FormParity::Symmetric => "symmetric",
                    FormParity::Skew => "skew-symmetric",
                },
                detail: "Gram matrix transpose mismatch".into(),
            });
        }
        Ok(SymForm { gram, parity })
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn parity(&self) -> FormParity {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Rational {
        pair(u, &self.gram, v)
    }

    pub fn radical(&self) -> Subspace<Rational> {
        self.gram.kernel()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    /// Restriction to the span of `basis` (rows), in that basis.
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> SymForm {
        let g = Matrix::from_fn(basis.len(), basis.len(), |i, j| pair(&basis[i], &self.gram, &basis[j]));
        SymForm { gram: g, parity: self.parity }
    }

    /// Sylvester inertia by congruence diagonalization with symmetric pivoting.
    pub fn signature(&self) -> Result<Signature> {
        if self.parity != FormParity::Symmetric {
            return Err(Error::FormSymmetry {
                expected: "symmetric",
                detail: "signature is only defined for symmetric forms".into(),
            });
        }
        Ok(symmetric_inertia(&self.gram))
    }

    /// True when the form is `sign`-definite (`+1` positive, `−1` negative).
    pub fn is_definite(&self, sign: i64) -> Result<bool> {
        let s = self.signature()?;
        Ok(if sign > 0 { s.q == 0 && s.z == 0 } else { s.p == 0 && s.z == 0 })
    }
}

fn symmetric_inertia(gram: &Matrix<Rational>) -> Signature {
    let mut a = gram.clone();
    let mut active: Vec<usize> = (0..a.rows()).collect();
    let (mut p, mut q) = (0, 0);

    // Congruence step: row_r -= c·row_s and col_r -= c·col_s.
    fn eliminate(a: &mut Matrix<Rational>, r: usize, s: usize, c: &Rational) {
        let n = a.rows();
        for j in 0..n {
            let v = a.get(r, j) - c * a.get(s, j);
            a.set(r, j, v);
        }
        for i in 0..n {
            let v = a.get(i, r) - c * a.get(i, s);
            a.set(i, r, v);
        }
    }

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a.get(i, i).is_zero()) {
            let i = active.remove(pos);
            let d = a.get(i, i).clone();
            for &r in &active {
                let c = a.get(r, i) / &d;
                if !c.is_zero() {
                    eliminate(&mut a, r, i, &c);
                }
            }
            if d.is_positive() {
                p += 1;
            } else {
                q += 1;
            }
            continue;
        }
        // All remaining diagonal entries vanish; look for a hyperbolic pair.
        let pair_ij = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..].iter().find(|&&j| !a.get(i, j).is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair_ij else {
            break;
        };
        let b = a.get(i, j).clone();
        active.retain(|&x| x != i && x != j);
        for &r in &active {
            let beta = a.get(r, i) / &b;
            let alpha = a.get(r, j) / &b;
            if !alpha.is_zero() {
                eliminate(&mut a, r, i, &alpha);
            }
            if !beta.is_zero() {
                eliminate(&mut a, r, j, &beta);
            }
        }
        p += 1;
        q += 1;
    }
    let z = gram.rows() - p - q;
    Signature { p, q, z }
}

/// Hermitian form over ℚ(i): `gram^* = gram`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermForm {
    gram: Matrix<Gaussian>,
}

impl HermForm {
    pub fn new(gram: Matrix<Gaussian>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!("{}x{} Gram matrix", gram.rows(), gram.cols())));
        }
        if gram.conj_transpose() != gram {
            return Err(Error::FormSymmetry { expected: "Hermitian", detail: "gram^* != gram".into() });
        }
        Ok(HermForm { gram })
    }

    pub fn gram(&self) -> &Matrix<Gaussian> {
        &self.gram
    }

    pub fn is_positive_definite(&self) -> bool {
        self.non_positive_witness().is_none()
    }

    /// Runs LDL* elimination. Returns coefficients `x` with `x H x^* ≤ 0`
    /// and `x ≠ 0` when the form is not positive definite.
    pub fn non_positive_witness(&self) -> Option<Vec<Gaussian>> {
        let n = self.gram.rows();
        let mut a = self.gram.clone();
        let mut t = Matrix::<Gaussian>::identity(n);
        for k in 0..n {
            let d = a.get(k, k).clone();
            debug_assert!(d.is_real());
            if !d.is_positive_real() {
                return Some(t.row(k).to_vec());
            }
            for r in k + 1..n {
                let c = a.get(r, k).clone() / d.clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).clone() - c.clone() * a.get(k, j).clone();
                    a.set(r, j, v);
                    let w = t.get(r, j).clone() - c.clone() * t.get(k, j).clone();
                    t.set(r, j, w);
                }
                let cc = c.conj();
                for i in 0..n {
                    let v = a.get(i, r).clone() - a.get(i, k).clone() * cc.clone();
                    a.set(i, r, v);
                }
            }
        }
        None
    }

    /// `x H x^*` for a coefficient row vector.
    pub fn value(&self, x: &[Gaussian]) -> Gaussian {
        let n = x.len();
        let mut acc = Gaussian::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + x[i].clone() * self.gram.get(i, j).clone() * x[j].conj();
            }
        }
        acc
    }
}

/// Exhaustive leading-principal-minor test (Sylvester's criterion), kept
/// separate from the elimination path so the two can check each other.
pub fn leading_minors_positive(gram: &Matrix<Gaussian>) -> bool {
    (1..=gram.rows()).all(|k| {
        let sub = Matrix::from_fn(k, k, |i, j| gram.get(i, j).clone());
        determinant(&sub).is_positive_real()
    })
}

/// Determinant by cofactor-free fraction elimination.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> T {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return T::zero();
        };
        if p != c {
            for j in 0..n {
                let x = a.get(p, j).clone();
                let y = a.get(c, j).clone();
                a.set(p, j, y);
                a.set(c, j, x);
            }
            det = -det;
        }
        let piv = a.get(c, c).clone();
        det = det * piv.clone();
        for i in c + 1..n {
            let f = a.get(i, c).clone() / piv.clone();
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j).clone() - f.clone() * a.get(c, j).clone();
                a.set(i, j, v);
            }
        }
    }
    det
}

impl Signature {
    pub fn from_counts(p: usize, q: usize) -> Self {
        Signature { p, q, z: 0 }
    }
}
