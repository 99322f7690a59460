use crate::error::Result;
use crate::matrix::Matrix;
use crate::nilpotent::{FormSpace, NilpotentElement, OrbitInvariants};
use crate::orbit::validate_invariants;
use crate::scalar::{rat, Rational};

/// Normal-form model with invariants `(m, s)`.
///
/// Basis: for each `ℓ` ascending, each string `i < m_ℓ`, the vectors
/// `N^a v_i` for `a = 0..=ℓ`. `Q(N^a v_i, N^{ℓ−a} v_j) = (−1)^a Q_ℓ(v_i, v_j)`
/// where `Q_ℓ` is `diag(+1^p, −1^q)` when symmetric and the standard
/// symplectic form when skew. Strings of different length are orthogonal.
pub fn construct_representative(inv: &OrbitInvariants, k: usize) -> Result<(FormSpace, NilpotentElement)> {
    let dim = inv.dim();
    validate_invariants(inv, k, dim, None).into_result()?;
    let mut q = Matrix::<Rational>::zeros(dim, dim);
    let mut n = Matrix::<Rational>::zeros(dim, dim);
    let mut start = 0;
    for (ell, &ml) in inv.m.iter().enumerate() {
        let q_ell = graded_gram(ell, ml, k, inv.s.get(&ell).copied());
        let idx = |i: usize, a: usize| start + i * (ell + 1) + a;
        for i in 0..ml {
            for a in 0..ell {
                n.set(idx(i, a + 1), idx(i, a), rat(1));
            }
            for j in 0..ml {
                let c = q_ell[i][j];
                if c == 0 {
                    continue;
                }
                for a in 0..=ell {
                    let sign = if a % 2 == 0 { c } else { -c };
                    q.set(idx(i, a), idx(j, ell - a), rat(sign));
                }
            }
        }
        start += ml * (ell + 1);
    }
    let space = FormSpace::new(k, q)?;
    let elt = NilpotentElement::new(space.clone(), n)?;
    Ok((space, elt))
}

fn graded_gram(ell: usize, ml: usize, k: usize, s: Option<(usize, usize)>) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; ml]; ml];
    if (k + ell).is_multiple_of(2) {
        let (p, _) = s.unwrap_or((ml, 0));
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = if i < p { 1 } else { -1 };
        }
    } else {
        for t in 0..ml / 2 {
            g[2 * t][2 * t + 1] = 1;
            g[2 * t + 1][2 * t] = -1;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::invariants;
    use std::collections::BTreeMap;

    #[test]
    fn elliptic_model() {
        let inv = OrbitInvariants::new(vec![0, 1], BTreeMap::from([(1, (1, 0))]));
        let (space, n) = construct_representative(&inv, 1).unwrap();
        assert_eq!(space.gram(), &Matrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert_eq!(n.matrix(), &Matrix::from_i64(&[&[0, 0], &[1, 0]]));
        assert_eq!(invariants(&n).unwrap(), inv);
    }

    #[test]
    fn zero_model_is_diagonal() {
        let inv = OrbitInvariants::new(vec![3, 0, 0], BTreeMap::from([(0, (1, 2)), (2, (0, 0))]));
        let (space, n) = construct_representative(&inv, 2).unwrap();
        assert_eq!(space.gram(), &Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]));
        assert!(n.matrix().is_zero());
        assert_eq!(invariants(&n).unwrap(), inv);
    }

    #[test]
    fn mixed_round_trip() {
        let inv = OrbitInvariants::new(vec![2, 2, 1], BTreeMap::from([(0, (1, 1)), (2, (0, 1))]));
        let (_, n) = construct_representative(&inv, 2).unwrap();
        assert_eq!(invariants(&n).unwrap(), inv);
        let bad = OrbitInvariants::new(vec![1, 1], BTreeMap::from([(0, (1, 0))]));
        assert!(construct_representative(&bad, 0).is_err());
    }
}
