use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::Result;
use crate::forms::HermForm;
use crate::matrix::{pair, vec_to_json, Matrix};
use crate::nilpotent::FormSpace;
use crate::scalar::{Gaussian, Scalar};
use crate::subspace::{Filtration, FiltrationKind, Quotient, Subspace};

use super::HodgeFlag;

/// `V^{p,q} = F^p ∩ conj F^q` for `p + q = weight`, with the verdict on
/// whether these pieces form a Hodge structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDecomposition {
    pub weight: i64,
    /// Keyed by `p`; `q = weight − p`.
    pub spaces: BTreeMap<i64, Subspace<Gaussian>>,
    pub is_hodge: bool,
    pub diagnostics: Vec<String>,
    /// A nonzero vector of `F^p ∩ conj F^{w−p+1}`, when one exists.
    pub witness: Option<Vec<Gaussian>>,
}

impl HodgeDecomposition {
    pub fn get(&self, p: i64) -> Subspace<Gaussian> {
        let ambient = self.spaces.values().next().map_or(0, Subspace::ambient);
        self.spaces.get(&p).cloned().unwrap_or_else(|| Subspace::zero(ambient))
    }

    /// Nonzero pieces as `(p, q, dim)`.
    pub fn hodge_numbers(&self) -> Vec<(i64, i64, usize)> {
        self.spaces
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(&p, s)| (p, self.weight - p, s.dim()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let pieces: Vec<Value> = self
            .spaces
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(&p, s)| json!({"p": p, "q": self.weight - p, "basis": s.vectors().iter().map(|v| vec_to_json(v)).collect::<Vec<_>>()}))
            .collect();
        json!({"weight": self.weight, "is_hodge": self.is_hodge, "pieces": pieces, "diagnostics": self.diagnostics})
    }
}

/// Evaluates `V^{p,q} = F^p ∩ conj F^q` for a decreasing filtration of `ℂ^d`
/// (conjugation is entrywise) and checks `V = ⊕ V^{p,q}` and
/// `F^p = ⊕_{r ≥ p} V^{r, w−r}`.
pub fn hodge_decomposition(weight: i64, f: &Filtration<Gaussian>) -> Result<HodgeDecomposition> {
    let d = f.ambient();
    let (first, last) = (f.first_index(), f.last_index());
    let lo = first.min(weight - last);
    let mut spaces = BTreeMap::new();
    for p in lo..=last {
        spaces.insert(p, f.get(p).intersect(&f.get(weight - p).conj())?);
    }
    let mut diag = Vec::new();
    let mut witness = None;
    for p in lo..=last + 1 {
        let clash = f.get(p).intersect(&f.get(weight - p + 1).conj())?;
        if !clash.is_zero() {
            diag.push(format!("F^{p} meets conj F^{}", weight - p + 1));
            witness.get_or_insert_with(|| clash.vectors()[0].clone());
        }
    }
    let total: usize = spaces.values().map(Subspace::dim).sum();
    if total != d {
        diag.push(format!("pieces have total dimension {total}, expected {d}"));
    }
    for p in lo..=last + 1 {
        let mut acc = Subspace::zero(d);
        for (_, s) in spaces.range(p..) {
            acc = acc.sum(s)?;
        }
        if acc != f.get(p) {
            diag.push(format!("F^{p} is not the sum of V^(r,s) with r >= {p}"));
        }
    }
    for (&p, s) in &spaces {
        let q = weight - p;
        let mirror = spaces.get(&q).cloned().unwrap_or_else(|| Subspace::zero(d));
        if s.conj() != mirror {
            diag.push(format!("conj V^({p},{q}) != V^({q},{p})"));
        }
    }
    Ok(HodgeDecomposition { weight, spaces, is_hodge: diag.is_empty(), diagnostics: diag, witness })
}

/// `(F^p ∩ hi + lo) / lo` in quotient coordinates.
pub fn induced_on_quotient(f: &Filtration<Gaussian>, quotient: &Quotient<Gaussian>) -> Result<Filtration<Gaussian>> {
    let steps = f
        .steps()
        .iter()
        .map(|s| quotient.image_of(&s.intersect(quotient.numerator())?))
        .collect::<Result<Vec<_>>>()?;
    Filtration::new(FiltrationKind::Decreasing, quotient.dim(), f.first_index(), steps)
}

/// Outcome of the two polarization conditions on a Hodge decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub orthogonal: bool,
    pub positive: bool,
    pub diagnostics: Vec<String>,
    /// `(u, v)` in pieces that should be `Q`-orthogonal, with `Q(u, v) ≠ 0`.
    pub orthogonality_witness: Option<(Vec<Gaussian>, Vec<Gaussian>)>,
    /// `v ≠ 0` in some `V^{p,q}` with `i^{p−q} Q(v, conj v) ≤ 0`.
    pub positivity_witness: Option<Vec<Gaussian>>,
}

impl Polarization {
    pub fn ok(&self) -> bool {
        self.orthogonal && self.positive
    }
}

/// Checks `Q(V^{p,q}, V^{r,s}) = 0` unless `(r, s) = (q, p)`, and that the
/// Hermitian form `i^{p−q} Q(u, conj v)` is positive definite on each `V^{p,q}`.
/// `gram` is the bilinear form in the coordinates of the decomposition.
pub fn check_polarization(dec: &HodgeDecomposition, gram: &Matrix<Gaussian>) -> Polarization {
    let mut diag = Vec::new();
    let mut orth_witness = None;
    let w = dec.weight;
    'outer: for (&p, a) in &dec.spaces {
        for (&r, b) in &dec.spaces {
            if r == w - p {
                continue;
            }
            for u in a.vectors() {
                for v in b.vectors() {
                    if !pair(&u, gram, &v).is_zero() {
                        diag.push(format!("Q(V^({p},{}), V^({r},{})) != 0", w - p, w - r));
                        orth_witness = Some((u, v));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut pos_witness = None;
    for (&p, s) in &dec.spaces {
        if s.is_zero() {
            continue;
        }
        let q = w - p;
        let basis = s.vectors();
        let c = Gaussian::i_pow(p - q);
        let h = Matrix::from_fn(basis.len(), basis.len(), |i, j| {
            let conj_b: Vec<Gaussian> = basis[j].iter().map(Scalar::conj).collect();
            c.clone() * pair(&basis[i], gram, &conj_b)
        });
        let form = match HermForm::new(h) {
            Ok(f) => f,
            Err(_) => {
                diag.push(format!("i^(p-q) Q(u, conj v) is not Hermitian on V^({p},{q})"));
                pos_witness.get_or_insert_with(|| basis[0].clone());
                continue;
            }
        };
        if let Some(x) = form.non_positive_witness() {
            diag.push(format!("i^(p-q) Q(v, conj v) is not positive on V^({p},{q})"));
            if pos_witness.is_none() {
                let mut v = vec![Gaussian::zero(); s.ambient()];
                for (xi, b) in x.iter().zip(&basis) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi = vi.clone() + xi.clone() * bi.clone();
                    }
                }
                pos_witness = Some(v);
            }
        }
    }
    Polarization {
        orthogonal: orth_witness.is_none(),
        positive: pos_witness.is_none(),
        diagnostics: diag,
        orthogonality_witness: orth_witness,
        positivity_witness: pos_witness,
    }
}

/// Whether `F` is a Hodge structure of weight `k` polarized by `Q`.
pub fn is_polarized(flag: &HodgeFlag, space: &FormSpace) -> Result<Polarization> {
    let dec = hodge_decomposition(flag.weight() as i64, flag.filtration())?;
    let mut out = check_polarization(&dec, &space.gram().complexify());
    if !dec.is_hodge {
        out.diagnostics.insert(0, "not a Hodge structure".into());
        out.positive = false;
        out.positivity_witness = out.positivity_witness.or(dec.witness);
    }
    Ok(out)
}
