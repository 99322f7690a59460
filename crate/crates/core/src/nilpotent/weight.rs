use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Rational;
use crate::subspace::{Filtration, FiltrationKind, Quotient, Subspace};

use super::{NilpotentElement, StandardTriple};

/// The monodromy weight filtration `W_0 ⊆ … ⊆ W_{2c}` centered at `c`,
/// with its graded pieces `Gr_j = W_j / W_{j−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    center: usize,
    filtration: Filtration<Rational>,
    graded: Vec<Quotient<Rational>>,
}

impl WeightFiltration {
    fn from_levels(center: usize, levels: Vec<Subspace<Rational>>) -> Result<Self> {
        let ambient = levels.first().map_or(0, Subspace::ambient);
        let filtration = Filtration::new(FiltrationKind::Increasing, ambient, 0, levels)?;
        let mut graded = Vec::with_capacity(2 * center + 1);
        for j in 0..=2 * center as i64 {
            graded.push(Quotient::new(&filtration.get(j), &filtration.get(j - 1))?);
        }
        Ok(WeightFiltration { center, filtration, graded })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn ambient(&self) -> usize {
        self.filtration.ambient()
    }

    /// `W_j`; zero for `j < 0` and all of `V` for `j > 2c`.
    pub fn level(&self, j: i64) -> Subspace<Rational> {
        self.filtration.get(j)
    }

    pub fn filtration(&self) -> &Filtration<Rational> {
        &self.filtration
    }

    pub fn dims(&self) -> Vec<usize> {
        self.filtration.dims()
    }

    /// `Gr_j`; the zero quotient outside `[0, 2c]`.
    pub fn graded(&self, j: i64) -> Quotient<Rational> {
        if (0..=2 * self.center as i64).contains(&j) {
            self.graded[j as usize].clone()
        } else {
            let z = Subspace::zero(self.ambient());
            Quotient::new(&z, &z).expect("zero quotient")
        }
    }

    /// The map `Gr_{c+ℓ} → Gr_{c−ℓ}` induced by `N^ℓ`.
    pub fn induced_power(&self, n: &Matrix<Rational>, ell: usize) -> Result<Matrix<Rational>> {
        self.induced(n, ell as u32, self.center as i64 + ell as i64, self.center as i64 - ell as i64)
    }

    /// The map `Gr_from → Gr_to` induced by `N^power`.
    pub fn induced(&self, n: &Matrix<Rational>, power: u32, from: i64, to: i64) -> Result<Matrix<Rational>> {
        let np = n.power(power)?;
        self.graded(from).induced_map(&np, &self.graded(to))
    }

    /// Checks `N W_j ⊆ W_{j−2}` and that every `N^ℓ : Gr_{c+ℓ} → Gr_{c−ℓ}` is an isomorphism.
    pub fn verify(&self, n: &Matrix<Rational>) -> Result<()> {
        let c = self.center as i64;
        if !self.level(2 * c).is_full() {
            return Err(Error::Inconsistent("top weight level is not all of V".into()));
        }
        for j in 0..=2 * c {
            if !self.level(j - 2).contains(&self.level(j).image_under(n)?) {
                return Err(Error::Inconsistent(format!("N W_{j} is not contained in W_{}", j - 2)));
            }
        }
        for ell in 0..=self.center {
            let m = self.induced_power(n, ell)?;
            if !m.is_square() || m.rank() != m.rows() {
                return Err(Error::Inconsistent(format!("N^{ell} is not an isomorphism Gr_{} -> Gr_{}", c + ell as i64, c - ell as i64)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "center": self.center,
            "dims": self.dims(),
            "levels": self.filtration.steps().iter().map(Subspace::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `W_•(N)` centered at the weight `k` of the space; requires `N^{k+1} = 0`.
pub fn weight_filtration(n: &NilpotentElement) -> Result<WeightFiltration> {
    weight_filtration_centered(n.matrix(), n.k())
}

/// Closed kernel/image formula. With `M_ℓ = W_{c+ℓ}`:
/// `M_ℓ = Σ_{j ≥ max(0, −ℓ)} ker N^{ℓ+j+1} ∩ im N^j`.
/// The result is checked against both defining properties before it is returned.
pub fn weight_filtration_centered(n: &Matrix<Rational>, center: usize) -> Result<WeightFiltration> {
    let dim = n.rows();
    if !n.power(center as u32 + 1)?.is_zero() {
        return Err(Error::NilpotencyOrder { center });
    }
    let c = center as i64;
    let mut powers = vec![Matrix::identity(dim)];
    for _ in 0..=2 * center + 1 {
        let next = powers.last().unwrap() * n;
        powers.push(next);
    }
    let kernels: Vec<Subspace<Rational>> = powers.iter().map(Matrix::kernel).collect();
    let images: Vec<Subspace<Rational>> = powers[..=center].iter().map(Matrix::image).collect();

    let mut levels = Vec::with_capacity(2 * center + 1);
    for ell in -c..=c {
        let mut acc = Subspace::zero(dim);
        for j in (0.max(-ell))..=c {
            let kidx = (ell + j + 1) as usize;
            let piece = kernels[kidx].intersect(&images[j as usize])?;
            acc = acc.sum(&piece)?;
        }
        levels.push(acc);
    }
    let wf = WeightFiltration::from_levels(center, levels)?;
    wf.verify(n)?;
    Ok(wf)
}

/// Independent construction from a standard triple: `W_{c+ℓ}` is the sum of
/// the `Y`-eigenspaces of eigenvalue `≤ ℓ`. For `N = 0` pass `None`.
pub fn weight_filtration_from_triple(
    n: &NilpotentElement,
    triple: Option<&StandardTriple>,
    center: usize,
) -> Result<WeightFiltration> {
    let dim = n.dim();
    let c = center as i64;
    let levels: Vec<Subspace<Rational>> = match triple {
        None => {
            if !n.matrix().is_zero() {
                return Err(Error::Inconsistent("nonzero N needs a standard triple".into()));
            }
            (-c..=c).map(|l| if l >= 0 { Subspace::full(dim) } else { Subspace::zero(dim) }).collect()
        }
        Some(t) => {
            let spaces = t.weight_spaces(center)?;
            let mut out = Vec::with_capacity(2 * center + 1);
            for ell in -c..=c {
                let mut acc = Subspace::zero(dim);
                for (_, e) in spaces.range(..=ell) {
                    acc = acc.sum(e)?;
                }
                out.push(acc);
            }
            out
        }
    };
    let wf = WeightFiltration::from_levels(center, levels)?;
    wf.verify(n.matrix())?;
    Ok(wf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::basis_vector;
    use crate::nilpotent::{standard_triple, FormSpace};

    #[test]
    fn zero_element_is_concentrated_at_center() {
        let space = FormSpace::new(2, Matrix::identity(3)).unwrap();
        let n = NilpotentElement::new(space, Matrix::zeros(3, 3)).unwrap();
        let wf = weight_filtration(&n).unwrap();
        assert_eq!(wf.dims(), vec![0, 0, 3, 3, 3]);
        assert_eq!(weight_filtration_from_triple(&n, None, 2).unwrap(), wf);
    }

    #[test]
    fn elliptic_weight_filtration() {
        let space = FormSpace::new(1, Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        let n = NilpotentElement::new(space, Matrix::from_i64(&[&[0, 0], &[1, 0]])).unwrap();
        let wf = weight_filtration(&n).unwrap();
        let e2 = Subspace::span(2, &[basis_vector(2, 1)]).unwrap();
        assert_eq!(wf.level(0), e2);
        assert_eq!(wf.level(1), e2);
        assert!(wf.level(2).is_full());
        let t = standard_triple(&n).unwrap();
        assert_eq!(weight_filtration_from_triple(&n, Some(&t), 1).unwrap(), wf);
    }

    #[test]
    fn order_too_large_is_rejected() {
        // Single 3-block on a weight-1 (symplectic) space cannot exist, so use
        // an orthogonal weight-0 space where N^1 != 0.
        let q = Matrix::from_i64(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
        let space = FormSpace::new(0, q).unwrap();
        let n = NilpotentElement::new(space, Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(weight_filtration(&n), Err(Error::NilpotencyOrder { center: 0 }));
        let wf = weight_filtration_centered(n.matrix(), 2).unwrap();
        assert_eq!(wf.dims(), vec![1, 1, 2, 2, 3]);
    }
}
