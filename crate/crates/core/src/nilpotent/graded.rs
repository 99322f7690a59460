use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{FormParity, SymForm};
use crate::matrix::Matrix;
use crate::scalar::Rational;
use crate::subspace::Subspace;

use super::{jordan_type, weight_filtration_centered, FormSpace, NilpotentElement, OrbitInvariants, WeightFiltration};

/// `Q_ℓ(u, v) = Q(u, N^ℓ v)` on `Gr_{c+ℓ}` and on its primitive part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedForm {
    pub ell: usize,
    /// Gram matrix on the canonical section of `Gr_{c+ℓ}`.
    pub form: SymForm,
    /// Primitive subspace, in section coordinates.
    pub primitive: Subspace<Rational>,
    /// Restriction of the form to the canonical basis of the primitive subspace.
    pub primitive_form: SymForm,
}

/// `Gr_{c+ℓ,prim} = ker(N^{ℓ+1} : Gr_{c+ℓ} → Gr_{c−ℓ−2})`, in section coordinates.
pub fn primitive_part(wf: &WeightFiltration, n: &Matrix<Rational>, ell: usize) -> Result<Subspace<Rational>> {
    let c = wf.center() as i64;
    let from = c + ell as i64;
    let to = c - ell as i64 - 2;
    let gr = wf.graded(from);
    if to < 0 {
        return Ok(Subspace::full(gr.dim()));
    }
    Ok(wf.induced(n, ell as u32 + 1, from, to)?.kernel())
}

/// Computes `Q_ℓ` on `Gr_{c+ℓ}`, checking that it descends to the quotient
/// (and agrees on a second section), that it is `(−1)^{c+ℓ}`-symmetric, and
/// that it is nondegenerate both on `Gr_{c+ℓ}` and on the primitive part.
pub fn q_ell(space: &FormSpace, n: &Matrix<Rational>, wf: &WeightFiltration, ell: usize) -> Result<GradedForm> {
    let weight = wf.center() + ell;
    let gr = wf.graded(weight as i64);
    let gram = space.gram() * &n.power(ell as u32)?;
    let g = gr.induced_form(&gram)?;
    if gr.form_on_lifts(&gram, &gr.shifted_section()) != g {
        return Err(Error::Inconsistent(format!("Q_{ell} depends on the section of Gr_{weight}")));
    }
    let parity = FormParity::of_weight(weight as i64);
    let form = SymForm::new(g, parity).map_err(|e| Error::Inconsistent(format!("Q_{ell}: {e}")))?;
    if !form.is_nondegenerate() {
        return Err(Error::Inconsistent(format!("Q_{ell} is degenerate on Gr_{weight}")));
    }
    let primitive = primitive_part(wf, n, ell)?;
    let primitive_form = form.restrict(&primitive.vectors());
    if !primitive_form.is_nondegenerate() {
        return Err(Error::Inconsistent(format!("Q_{ell} is degenerate on the primitive part")));
    }
    Ok(GradedForm { ell, form, primitive, primitive_form })
}

/// The invariants `(m, s)`: Jordan type, and signatures of `Q_ℓ` on the
/// primitive parts for every `ℓ` with `k + ℓ` even.
///
/// When the nilpotency order exceeds `k + 1`, the weight filtration is
/// centered at the least `c ≥ k` of the same parity with `N^{c+1} = 0`;
/// the primitive forms do not depend on that shift.
pub fn invariants(n: &NilpotentElement) -> Result<OrbitInvariants> {
    let m = jordan_type(n);
    let k = n.k();
    let mut center = k;
    while center + 1 < n.order() {
        center += 2;
    }
    let wf = weight_filtration_centered(n.matrix(), center)?;
    let mut s = BTreeMap::new();
    for (ell, &ml) in m.iter().enumerate() {
        if (k + ell) % 2 == 1 {
            if ml % 2 == 1 {
                return Err(Error::Inconsistent(format!("m_{ell} = {ml} is odd but Q_{ell} is skew")));
            }
            continue;
        }
        let gf = q_ell(n.space(), n.matrix(), &wf, ell)?;
        if gf.primitive.dim() != ml {
            return Err(Error::Inconsistent(format!(
                "primitive part at ℓ = {ell} has dimension {}, m_{ell} = {ml}",
                gf.primitive.dim()
            )));
        }
        let sig = gf.primitive_form.signature()?;
        if sig.z != 0 {
            return Err(Error::Inconsistent(format!("Q_{ell} has a radical on the primitive part")));
        }
        s.insert(ell, (sig.p, sig.q));
    }
    Ok(OrbitInvariants { m, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::weight_filtration;
    use crate::scalar::rat;

    fn elliptic(sign: i64) -> NilpotentElement {
        let space = FormSpace::new(1, Matrix::from_i64(&[&[0, sign], &[-sign, 0]])).unwrap();
        NilpotentElement::new(space, Matrix::from_i64(&[&[0, 0], &[1, 0]])).unwrap()
    }

    #[test]
    fn q_ell_on_elliptic_degeneration() {
        let n = elliptic(1);
        let wf = weight_filtration(&n).unwrap();
        let q1 = q_ell(n.space(), n.matrix(), &wf, 1).unwrap();
        assert_eq!(q1.form.gram(), &Matrix::from_i64(&[&[1]]));
        assert_eq!(q1.form.parity(), FormParity::Symmetric);
        assert_eq!(q1.primitive.dim(), 1);
        let inv = invariants(&n).unwrap();
        assert_eq!(inv.m, vec![0, 1]);
        assert_eq!(inv.s, BTreeMap::from([(1, (1, 0))]));
        assert_eq!(invariants(&elliptic(-1)).unwrap().s, BTreeMap::from([(1, (0, 1))]));
    }

    #[test]
    fn zero_element_recovers_q() {
        let q = Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let n = NilpotentElement::new(FormSpace::new(2, q.clone()).unwrap(), Matrix::zeros(3, 3)).unwrap();
        let wf = weight_filtration(&n).unwrap();
        let q0 = q_ell(n.space(), n.matrix(), &wf, 0).unwrap();
        assert_eq!(q0.form.gram(), &q);
        let inv = invariants(&n).unwrap();
        assert_eq!(inv.m, vec![3, 0, 0]);
        assert_eq!(inv.s, BTreeMap::from([(0, (1, 2)), (2, (0, 0))]));
    }

    #[test]
    fn skew_graded_forms_for_odd_parity() {
        // Weight 2, two strings of length 2 with a symplectic Q_1.
        // Basis v1, Nv1, v2, Nv2; Q(v1, N v2) = 1 = −Q(v2, N v1), Q(N v1, v2) = −1.
        let mut q = Matrix::<Rational>::zeros(4, 4);
        for (i, j, x) in [(0, 3, 1), (3, 0, 1), (2, 1, -1), (1, 2, -1)] {
            q.set(i, j, rat(x));
        }
        let space = FormSpace::new(2, q).unwrap();
        let nm = Matrix::from_i64(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]);
        let n = NilpotentElement::new(space, nm).unwrap();
        let wf = weight_filtration(&n).unwrap();
        let q1 = q_ell(n.space(), n.matrix(), &wf, 1).unwrap();
        assert_eq!(q1.form.parity(), FormParity::Skew);
        assert_eq!(q1.primitive.dim(), 2);
        let inv = invariants(&n).unwrap();
        assert_eq!(inv.m, vec![0, 2, 0]);
        assert_eq!(inv.s, BTreeMap::from([(0, (0, 0)), (2, (0, 0))]));
    }

    #[test]
    fn primitive_part_of_type_31() {
        let q = Matrix::from_i64(&[&[0, 0, 1, 0], &[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1]]);
        let space = FormSpace::new(2, q).unwrap();
        let nm = Matrix::from_i64(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]]);
        let n = NilpotentElement::new(space, nm).unwrap();
        let wf = weight_filtration(&n).unwrap();
        assert_eq!(primitive_part(&wf, n.matrix(), 2).unwrap().dim(), 1);
        assert_eq!(primitive_part(&wf, n.matrix(), 0).unwrap().dim(), 1);
        // Gr_2 = span(Nv, u); Nv is not primitive.
        assert_eq!(wf.graded(2).dim(), 2);
        let inv = invariants(&n).unwrap();
        assert_eq!(inv.s, BTreeMap::from([(0, (1, 0)), (2, (1, 0))]));
    }
}
