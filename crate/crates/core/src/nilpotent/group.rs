//! Exact elements of `Aut(V, Q)`, used to move nilpotents around their
//! conjugacy classes in tests and sampling.

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{rat, Rational, Scalar};

use super::FormSpace;

/// Cayley transform `(I − X)⁻¹(I + X)`; lies in `Aut(V, Q)` for `X ∈ End(V, Q)`.
pub fn cayley(x: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let id = Matrix::identity(x.rows());
    let inv = (&id - x).inverse()?;
    Some(&inv * &(&id + x))
}

/// `exp(X) = Σ X^j / j!` for nilpotent `X` (a finite sum).
pub fn exp_nilpotent(x: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let n = x.rows();
    let mut term = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    for j in 1..=n as i64 {
        term = (&term * x).scale(&(Rational::from_int(1) / Rational::from_int(j)));
        if term.is_zero() {
            return Ok(sum);
        }
        sum = &sum + &term;
    }
    if !(&term * x).is_zero() {
        return Err(Error::NotNilpotent);
    }
    Ok(sum)
}

/// Sparse element of the Lie algebra with coefficients in `{−1, 0, 1}` on the
/// standard basis of `End(V, Q)`.
pub fn random_lie_element<R: Rng + ?Sized>(space: &FormSpace, rng: &mut R, density: f64) -> Matrix<Rational> {
    let n = space.dim();
    space.lie_algebra_basis().into_iter().fold(Matrix::zeros(n, n), |acc, b| {
        if rng.gen_bool(density) {
            let c = if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
            &acc + &b.scale(&c)
        } else {
            acc
        }
    })
}

/// Random exact element of `Aut(V, Q)`: a product of `factors` Cayley
/// transforms of sparse Lie algebra elements, times `exp(t X)` for each
/// supplied nilpotent `X ∈ End(V, Q)` with a small random rational `t`.
pub fn random_automorphism<R: Rng + ?Sized>(
    space: &FormSpace,
    rng: &mut R,
    factors: usize,
    nilpotents: &[Matrix<Rational>],
) -> Matrix<Rational> {
    let n = space.dim();
    let mut g = Matrix::identity(n);
    let density = (2.0 / n.max(1) as f64).min(1.0);
    let mut made = 0;
    let mut attempts = 0;
    // so(1) is zero, hence the attempt cap.
    while made < factors && attempts < 64 * factors.max(1) {
        attempts += 1;
        let x = random_lie_element(space, rng, density);
        if x.is_zero() {
            continue;
        }
        if let Some(c) = cayley(&x) {
            g = &g * &c;
            made += 1;
        }
    }
    for x in nilpotents {
        let t = Rational::new(rng.gen_range(-2i64..=2).into(), rng.gen_range(1i64..=2).into());
        if t.is_zero() {
            continue;
        }
        let e = exp_nilpotent(&x.scale(&t)).expect("nilpotent generator");
        g = &g * &e;
    }
    debug_assert!(space.preserves(&g));
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cayley_and_exp_preserve_the_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let o = FormSpace::new(0, Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]])).unwrap();
        let sp = FormSpace::new(1, Matrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]])).unwrap();
        for space in [o, sp] {
            for _ in 0..5 {
                let g = random_automorphism(&space, &mut rng, 2, &[]);
                assert!(space.preserves(&g));
            }
        }
        let sp2 = FormSpace::new(1, Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        let n = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        let e = exp_nilpotent(&n).unwrap();
        assert_eq!(e, Matrix::from_i64(&[&[1, 0], &[1, 1]]));
        assert!(sp2.preserves(&e));
        assert!(exp_nilpotent(&Matrix::<Rational>::identity(2)).is_err());
    }
}
