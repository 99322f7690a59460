//! Subspaces in canonical form, filtrations and quotients.
//!
//! A [`Subspace`] stores its basis as the nonzero rows of a reduced row-echelon
//! matrix, which is unique per subspace, so derived equality is subspace equality.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{pair, vec_to_json, Matrix};
use crate::scalar::{Gaussian, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<T>]) -> Result<Self> {
        let m = Matrix::from_rows(vectors.to_vec(), ambient)?;
        Ok(Self::from_rows_matrix(&m))
    }

    /// Row space of `m`.
    pub fn from_rows_matrix(m: &Matrix<T>) -> Self {
        let r = m.rref();
        let rows: Vec<Vec<T>> = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient: m.cols(),
            basis: Matrix::from_rows(rows, m.cols()).expect("rref rows"),
            pivots: r.pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<T>> {
        self.basis.row_vecs()
    }

    /// Remainder of `v` after eliminating this subspace's pivot coordinates.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] = out[j].clone() - c.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[T]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.ambient == other.ambient && other.vectors().iter().all(|v| self.contains_vector(v))
    }

    /// Coefficients of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "subspaces of ambient dimension {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.vectors();
        rows.extend(other.vectors());
        Self::span(self.ambient, &rows)
    }

    /// Zassenhaus intersection: row-reduce `[[A, A], [B, 0]]`; rows whose left
    /// half vanishes carry a basis of `A ∩ B` in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(n));
        }
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(self.dim() + other.dim());
        for a in self.vectors() {
            let mut r = a.clone();
            r.extend(a);
            rows.push(r);
        }
        for b in other.vectors() {
            let mut r = b;
            r.extend(std::iter::repeat_n(T::zero(), n));
            rows.push(r);
        }
        let r = Matrix::from_rows(rows, 2 * n)?.rref();
        let meet: Vec<Vec<T>> = (0..r.rank)
            .filter(|&i| r.pivots[i] >= n)
            .map(|i| r.matrix.row(i)[n..].to_vec())
            .collect();
        Self::span(n, &meet)
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn image_under(&self, m: &Matrix<T>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(Error::Dimension(format!(
                "{}x{} map on ambient dimension {}",
                m.rows(),
                m.cols(),
                self.ambient
            )));
        }
        let imgs: Vec<Vec<T>> = self.vectors().iter().map(|v| m.apply(v)).collect();
        Self::span(m.rows(), &imgs)
    }

    pub fn conj(&self) -> Self {
        // Conjugating an RREF matrix keeps it in RREF.
        Subspace { ambient: self.ambient, basis: self.basis.conj(), pivots: self.pivots.clone() }
    }

    /// Gram matrix of a bilinear form restricted to the canonical basis.
    pub fn restrict_form(&self, gram: &Matrix<T>) -> Matrix<T> {
        let vs = self.vectors();
        Matrix::from_fn(vs.len(), vs.len(), |i, j| pair(&vs[i], gram, &vs[j]))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient": self.ambient,
            "basis": Value::Array(self.vectors().iter().map(|v| vec_to_json(v)).collect()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ambient = v
            .get("ambient")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("subspace needs integer \"ambient\"".into()))? as usize;
        let basis = v.get("basis").ok_or_else(|| Error::Parse("subspace needs \"basis\"".into()))?;
        let m = if basis.as_array().is_some_and(|a| a.is_empty()) {
            Matrix::zeros(0, ambient)
        } else {
            Matrix::<T>::from_json(basis)?
        };
        if m.cols() != ambient {
            return Err(Error::Parse(format!("basis vectors have length {}, ambient is {ambient}", m.cols())));
        }
        Ok(Self::from_rows_matrix(&m))
    }
}

impl Subspace<Rational> {
    pub fn complexify(&self) -> Subspace<Gaussian> {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.complexify(),
            pivots: self.pivots.clone(),
        }
    }
}

/// Whether a filtration grows or shrinks with its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    Increasing,
    Decreasing,
}

/// A filtration indexed by consecutive integers `first..=last`.
///
/// Outside that range an increasing filtration is `0` below and the last
/// step above; a decreasing filtration is the first step below and `0` above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration<T> {
    kind: FiltrationKind,
    ambient: usize,
    first: i64,
    steps: Vec<Subspace<T>>,
}

impl<T: Scalar> Filtration<T> {
    pub fn new(kind: FiltrationKind, ambient: usize, first: i64, steps: Vec<Subspace<T>>) -> Result<Self> {
        if let Some(s) = steps.iter().find(|s| s.ambient() != ambient) {
            return Err(Error::Dimension(format!("step of ambient {} in filtration of {ambient}", s.ambient())));
        }
        for (i, w) in steps.windows(2).enumerate() {
            let ok = match kind {
                FiltrationKind::Increasing => w[1].contains(&w[0]),
                FiltrationKind::Decreasing => w[0].contains(&w[1]),
            };
            if !ok {
                return Err(Error::Containment(format!(
                    "{kind:?} filtration fails between indices {} and {}",
                    first + i as i64,
                    first + i as i64 + 1
                )));
            }
        }
        Ok(Filtration { kind, ambient, first, steps })
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn first_index(&self) -> i64 {
        self.first
    }

    pub fn last_index(&self) -> i64 {
        self.first + self.steps.len() as i64 - 1
    }

    pub fn steps(&self) -> &[Subspace<T>] {
        &self.steps
    }

    pub fn get(&self, index: i64) -> Subspace<T> {
        if self.steps.is_empty() {
            return Subspace::zero(self.ambient);
        }
        if index < self.first {
            return match self.kind {
                FiltrationKind::Increasing => Subspace::zero(self.ambient),
                FiltrationKind::Decreasing => self.steps[0].clone(),
            };
        }
        if index > self.last_index() {
            return match self.kind {
                FiltrationKind::Increasing => self.steps.last().unwrap().clone(),
                FiltrationKind::Decreasing => Subspace::zero(self.ambient),
            };
        }
        self.steps[(index - self.first) as usize].clone()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(Subspace::dim).collect()
    }
}

impl Filtration<Rational> {
    pub fn complexify(&self) -> Filtration<Gaussian> {
        Filtration {
            kind: self.kind,
            ambient: self.ambient,
            first: self.first,
            steps: self.steps.iter().map(Subspace::complexify).collect(),
        }
    }
}

/// `hi / lo` with an explicit section: the canonical complement of `lo` inside `hi`
/// whose pivots avoid those of `lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<T> {
    hi: Subspace<T>,
    lo: Subspace<T>,
    section: Subspace<T>,
}

impl<T: Scalar> Quotient<T> {
    pub fn new(hi: &Subspace<T>, lo: &Subspace<T>) -> Result<Self> {
        if hi.ambient() != lo.ambient() {
            return Err(Error::Dimension("quotient of subspaces in different ambients".into()));
        }
        if !hi.contains(lo) {
            return Err(Error::Containment("quotient denominator is not contained in numerator".into()));
        }
        let reduced: Vec<Vec<T>> = hi.vectors().iter().map(|v| lo.reduce(v)).collect();
        let section = Subspace::span(hi.ambient(), &reduced)?;
        debug_assert_eq!(section.dim() + lo.dim(), hi.dim());
        Ok(Quotient { hi: hi.clone(), lo: lo.clone(), section })
    }

    pub fn dim(&self) -> usize {
        self.section.dim()
    }

    pub fn numerator(&self) -> &Subspace<T> {
        &self.hi
    }

    pub fn denominator(&self) -> &Subspace<T> {
        &self.lo
    }

    /// Lifts of the quotient basis vectors.
    pub fn section(&self) -> Vec<Vec<T>> {
        self.section.vectors()
    }

    /// Coordinates of the class of `v ∈ hi`.
    pub fn project(&self, v: &[T]) -> Result<Vec<T>> {
        if !self.hi.contains_vector(v) {
            return Err(Error::Containment("vector is not in the quotient numerator".into()));
        }
        let r = self.lo.reduce(v);
        self.section
            .coordinates(&r)
            .ok_or_else(|| Error::Inconsistent("reduced vector outside the section".into()))
    }

    /// Representative of the class with the given coordinates.
    pub fn lift(&self, coords: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.hi.ambient()];
        for (c, s) in coords.iter().zip(self.section.vectors()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(s) {
                *o = o.clone() + c.clone() * x;
            }
        }
        out
    }

    /// Preimage in the ambient space of a subspace given in quotient coordinates.
    pub fn preimage(&self, sub: &Subspace<T>) -> Result<Subspace<T>> {
        if sub.ambient() != self.dim() {
            return Err(Error::Dimension("subspace is not in quotient coordinates".into()));
        }
        let mut rows: Vec<Vec<T>> = sub.vectors().iter().map(|c| self.lift(c)).collect();
        rows.extend(self.lo.vectors());
        Subspace::span(self.hi.ambient(), &rows)
    }

    /// Image `(S + lo) / lo` of an ambient subspace, in quotient coordinates.
    /// `S` must lie in the numerator.
    pub fn image_of(&self, s: &Subspace<T>) -> Result<Subspace<T>> {
        let coords: Vec<Vec<T>> = s.vectors().iter().map(|v| self.project(v)).collect::<Result<_>>()?;
        Subspace::span(self.dim(), &coords)
    }

    /// Matrix of the map induced by `l` from this quotient to `target`, after
    /// verifying `l(hi) ⊆ target.hi` and `l(lo) ⊆ target.lo`.
    pub fn induced_map(&self, l: &Matrix<T>, target: &Quotient<T>) -> Result<Matrix<T>> {
        if l.cols() != self.hi.ambient() || l.rows() != target.hi.ambient() {
            return Err(Error::Dimension("map does not match quotient ambients".into()));
        }
        for v in self.lo.vectors() {
            if !target.lo.contains_vector(&l.apply(&v)) {
                return Err(Error::Containment("map does not send denominator into target denominator".into()));
            }
        }
        let cols: Vec<Vec<T>> = self
            .section
            .vectors()
            .iter()
            .map(|s| target.project(&l.apply(s)))
            .collect::<Result<_>>()?;
        Matrix::from_columns(&cols, target.dim())
    }

    /// Gram matrix, on the section, of the bilinear form `uᵀ G v` after checking
    /// that it descends: `G(lo, hi) = G(hi, lo) = 0`.
    pub fn induced_form(&self, gram: &Matrix<T>) -> Result<Matrix<T>> {
        let his = self.hi.vectors();
        for l in self.lo.vectors() {
            for h in &his {
                if !pair(&l, gram, h).is_zero() || !pair(h, gram, &l).is_zero() {
                    return Err(Error::Inconsistent("form does not descend to the quotient".into()));
                }
            }
        }
        Ok(self.form_on_lifts(gram, &self.section.vectors()))
    }

    /// Gram matrix of `gram` on an arbitrary list of lifts.
    pub fn form_on_lifts(&self, gram: &Matrix<T>, lifts: &[Vec<T>]) -> Matrix<T> {
        Matrix::from_fn(lifts.len(), lifts.len(), |i, j| pair(&lifts[i], gram, &lifts[j]))
    }

    /// A second, shifted section `s_i + (i+1)·Σ lo` used to test that
    /// quotient constructions do not depend on the chosen lifts.
    pub fn shifted_section(&self) -> Vec<Vec<T>> {
        let lo_sum = self.lo.vectors().into_iter().fold(vec![T::zero(); self.hi.ambient()], |acc, v| {
            acc.into_iter().zip(v).map(|(a, b)| a + b).collect()
        });
        self.section
            .vectors()
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let c = T::from_int(i as i64 + 1);
                s.into_iter().zip(&lo_sum).map(|(a, b)| a + c.clone() * b.clone()).collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::basis_vector;
    use crate::scalar::rat;
    use proptest::prelude::*;

    type S = Subspace<Rational>;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn lattice_basics() {
        let a = S::span(3, &[v(&[1, 2, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
        let e1 = S::span(2, &[basis_vector(2, 0)]).unwrap();
        let e2 = S::span(2, &[basis_vector(2, 1)]).unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert!(e1.sum(&e2).unwrap().is_full());
        assert!(e1.sum(&S::zero(3)).is_err());
    }

    #[test]
    fn canonical_representative() {
        let a = S::span(3, &[v(&[1, 1, 0]), v(&[1, -1, 2])]).unwrap();
        let b = S::span(3, &[v(&[2, 0, 2]), v(&[0, 2, -2]), v(&[1, 1, 0])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_dims_and_projection() {
        let hi = S::full(3);
        let lo = S::span(3, &[v(&[1, 1, 1])]).unwrap();
        let q = Quotient::new(&hi, &lo).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.project(&v(&[1, 1, 1])).unwrap(), v(&[0, 0]));
        let x = v(&[3, -1, 4]);
        let back = q.lift(&q.project(&x).unwrap());
        let diff: Vec<Rational> = x.iter().zip(&back).map(|(a, b)| a - b).collect();
        assert!(lo.contains_vector(&diff));

        assert_eq!(Quotient::new(&lo, &lo).unwrap().dim(), 0);
        assert!(Quotient::new(&lo, &hi).is_err());
    }

    #[test]
    fn induced_jordan_block_map_vanishes_on_graded_pieces() {
        // N e1 = e2, N e2 = e3. Image filtration im N^2 ⊂ im N ⊂ V.
        let n = Matrix::<Rational>::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let f0 = S::full(3);
        let f1 = n.image();
        let f2 = n.power(2).unwrap().image();
        let z = S::zero(3);
        let gr0 = Quotient::new(&f0, &f1).unwrap();
        let gr1 = Quotient::new(&f1, &f2).unwrap();
        let gr2 = Quotient::new(&f2, &z).unwrap();
        // N maps F^i into F^{i+1}, so on each Gr^i the induced endomorphism is zero.
        for (a, b) in [(&f0, &f1), (&f1, &f2), (&f2, &z)] {
            let q = Quotient::new(a, b).unwrap();
            let target = Quotient::new(a, b).unwrap();
            let m = q.induced_map(&n, &target);
            // Defined only when N(b) ⊆ b, which holds for this filtration.
            assert!(m.unwrap().is_zero());
        }
        assert_eq!((gr0.dim(), gr1.dim(), gr2.dim()), (1, 1, 1));
    }

    #[test]
    fn induced_map_rejects_bad_maps() {
        let n = Matrix::<Rational>::from_i64(&[&[0, 1], &[0, 0]]);
        let q = Quotient::new(&S::full(2), &S::span(2, &[basis_vector(2, 1)]).unwrap()).unwrap();
        // N e2 = e1 is not in span(e2).
        assert!(q.induced_map(&n, &q).is_err());
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = S> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=n)
            .prop_map(move |rows| S::span(n, &rows.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn grassmann_identity((a, b) in (1usize..=8).prop_flat_map(|n| (arb_subspace(n), arb_subspace(n)))) {
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(a.contains(&i) && b.contains(&i));
            prop_assert!(s.contains(&a) && s.contains(&b));
        }

        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..7)) {
            let m = Matrix::<Rational>::from_rows(rows.iter().map(|r| v(r)).collect(), 5).unwrap();
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        }

        #[test]
        fn rref_is_canonical(a in arb_subspace(6), mix in prop::collection::vec(-3i64..=3, 36)) {
            // Any invertible recombination of the basis gives the same representative.
            let d = a.dim();
            let mut g = Matrix::<Rational>::from_fn(d, d, |i, j| rat(mix[i * 6 + j]));
            if g.inverse().is_none() {
                g = Matrix::identity(d);
            }
            let other = &g * a.basis();
            prop_assert_eq!(S::from_rows_matrix(&other), a);
        }
    }
}
