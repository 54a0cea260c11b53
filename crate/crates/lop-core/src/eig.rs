//! Eigendecompositions used by the operator lift.
//!
//! Hermitian matrices are diagonalized with a cyclic complex Jacobi sweep;
//! unitary (normal) matrices reuse the Hermitian solver on the commuting pair
//! `(U + U†)/2`, `(U - U†)/(2i)` and resolve clustered eigenvalues inside each
//! cluster. Both routes return an orthonormal column basis `V` with
//! `A = V diag(λ) V†`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Scalar};

const MAX_SWEEPS: usize = 128;

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
pub fn hermitian_eig<T: Scalar>(a: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    let n = a.require_square()?;
    let mut m = a.clone();
    let mut v = ComplexMatrix::<T>::identity(n);
    if n <= 1 {
        let evs = (0..n).map(|i| m[(i, i)].re).collect();
        return Ok((evs, v));
    }

    let scale = m.max_abs();
    if scale.is_zero() {
        return Ok((vec![T::zero(); n], v));
    }
    let threshold = scale * T::epsilon() * real::<T>(8.0);

    for _ in 0..MAX_SWEEPS {
        let mut off_max = T::zero();
        for p in 0..n - 1 {
            for q in p + 1..n {
                off_max = off_max.max(m[(p, q)].norm());
            }
        }
        if off_max <= threshold {
            let evals: Vec<T> = (0..n).map(|i| m[(i, i)].re).collect();
            return Ok(sort_pairs(evals, v));
        }
        let rotate_floor = off_max * real::<T>(1e-3);
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = m[(p, q)];
                let r = g.norm();
                if r <= rotate_floor {
                    continue;
                }
                rotate(&mut m, &mut v, p, q, g, r);
            }
        }
    }
    Err(Error::EigenConvergence)
}

/// One complex Jacobi rotation zeroing the (p, q) entry of Hermitian `m`.
fn rotate<T: Scalar>(
    m: &mut ComplexMatrix<T>,
    v: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    g: Complex<T>,
    r: T,
) {
    let n = m.rows();
    let alpha = m[(p, p)].re;
    let beta = m[(q, q)].re;
    // Dephase A_pq, then apply the classic symmetric Jacobi rotation.
    let unit = g / Complex::new(r, T::zero());
    let tau = (beta - alpha) / (r + r);
    let t = if tau.is_zero() {
        T::one()
    } else {
        let s = if tau.is_sign_negative() { -T::one() } else { T::one() };
        s / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // Combined 2x2 unitary Q = diag(1, conj(unit)) * [[c, s], [-s, c]]:
    // Q_pp = c, Q_pq = s, Q_qp = -s*conj(unit), Q_qq = c*conj(unit).
    let q_qp = unit.conj() * Complex::new(-s, T::zero());
    let q_qq = unit.conj() * Complex::new(c, T::zero());
    let cc = Complex::new(c, T::zero());
    let sc = Complex::new(s, T::zero());

    // Columns: M <- M Q, V <- V Q.
    for k in 0..n {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m[(k, p)] = mp * cc + mq * q_qp;
        m[(k, q)] = mp * sc + mq * q_qq;
        let vp = v[(k, p)];
        let vq = v[(k, q)];
        v[(k, p)] = vp * cc + vq * q_qp;
        v[(k, q)] = vp * sc + vq * q_qq;
    }
    // Rows: M <- Q† M.
    for k in 0..n {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m[(p, k)] = mp * cc + mq * q_qp.conj();
        m[(q, k)] = mp * sc + mq * q_qq.conj();
    }
    m[(p, q)] = Complex::new(T::zero(), T::zero());
    m[(q, p)] = Complex::new(T::zero(), T::zero());
    m[(p, p)] = Complex::new(alpha - t * r, T::zero());
    m[(q, q)] = Complex::new(beta + t * r, T::zero());
}

fn sort_pairs<T: Scalar>(evals: Vec<T>, v: ComplexMatrix<T>) -> (Vec<T>, ComplexMatrix<T>) {
    let n = evals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| evals[i].partial_cmp(&evals[j]).unwrap());
    let sorted_vals = order.iter().map(|&i| evals[i]).collect();
    let sorted_vecs = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (sorted_vals, sorted_vecs)
}

/// Eigendecomposition of a unitary matrix: unit-modulus eigenvalues and an
/// orthonormal eigenbasis.
///
/// Eigenvalues whose real parts collide are separated through the imaginary
/// part, so conjugate phase pairs (`e^{±iθ}`) resolve cleanly. The result is
/// verified against `U`; irrecoverably ill-conditioned spectra report
/// [`Error::EigenConvergence`] instead of returning a bad basis.
pub fn unitary_eig<T: Scalar>(
    u: &ComplexMatrix<T>,
) -> Result<(Vec<Complex<T>>, ComplexMatrix<T>)> {
    let n = u.require_square()?;
    let uh = u.adjoint();
    let half = Complex::new(real::<T>(0.5), T::zero());
    let herm = u.add(&uh).scale(half);
    let skew = u.sub(&uh).scale(Complex::new(T::zero(), -real::<T>(0.5)));

    let (hvals, mut v) = hermitian_eig(&herm)?;

    // Group eigenvalues of the Hermitian part whose separation is below the
    // eigenvector reliability limit, then diagonalize the skew part on each
    // group. 1e-5 is far above Jacobi noise and far below generic spacings.
    let ctol = real::<T>(1e-5);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && hvals[end] - hvals[end - 1] <= ctol {
            end += 1;
        }
        if end - start > 1 {
            mix_cluster(&skew, &mut v, start, end)?;
        }
        start = end;
    }

    // Rayleigh quotients, projected back onto the unit circle.
    let mut evals = Vec::with_capacity(n);
    for j in 0..n {
        let col: Vec<Complex<T>> = (0..n).map(|i| v[(i, j)]).collect();
        let image = u.apply(&col);
        let mut lambda = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            lambda = lambda + col[i].conj() * image[i];
        }
        let norm = lambda.norm();
        if norm.is_zero() {
            return Err(Error::EigenConvergence);
        }
        evals.push(lambda / Complex::new(norm, T::zero()));
    }

    let recon = reconstruct(&evals, &v);
    let residual = recon.max_abs_diff(u).to_f64().unwrap_or(f64::INFINITY);
    if residual > 1e-10 * n as f64 {
        return Err(Error::EigenConvergence);
    }
    Ok((evals, v))
}

/// Re-diagonalize the skew part restricted to eigenvector columns [start, end).
fn mix_cluster<T: Scalar>(
    skew: &ComplexMatrix<T>,
    v: &mut ComplexMatrix<T>,
    start: usize,
    end: usize,
) -> Result<()> {
    let n = v.rows();
    let m = end - start;
    let cols: Vec<Vec<Complex<T>>> = (start..end)
        .map(|j| (0..n).map(|i| v[(i, j)]).collect())
        .collect();
    let images: Vec<Vec<Complex<T>>> = cols.iter().map(|c| skew.apply(c)).collect();
    let restricted = ComplexMatrix::from_fn(m, m, |a, b| {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            acc = acc + cols[a][i].conj() * images[b][i];
        }
        acc
    });
    let (_, w) = hermitian_eig(&restricted)?;
    for i in 0..n {
        for b in 0..m {
            let mut acc = Complex::new(T::zero(), T::zero());
            for a in 0..m {
                acc = acc + cols[a][i] * w[(a, b)];
            }
            v[(i, start + b)] = acc;
        }
    }
    Ok(())
}

fn reconstruct<T: Scalar>(evals: &[Complex<T>], v: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = evals.len();
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| v[(i, j)] * evals[j]);
    scaled.mul(&v.adjoint())
}

/// `exp(iH)` for Hermitian `H`, computed through the eigendecomposition.
pub fn exp_i_hermitian<T: Scalar>(h: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let n = h.require_square()?;
    let (evals, v) = hermitian_eig(h)?;
    let phases: Vec<Complex<T>> = evals
        .iter()
        .map(|&l| Complex::new(T::zero(), l).exp())
        .collect();
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| v[(i, j)] * phases[j]);
    Ok(scaled.mul(&v.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check_hermitian_decomp(a: &ComplexMatrix<f64>) {
        let (vals, v) = hermitian_eig(a).unwrap();
        assert!(v.unitarity_error() < 1e-12, "eigenbasis not orthonormal");
        let n = a.rows();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| v[(i, j)] * c(vals[j], 0.0));
        let recon = scaled.mul(&v.adjoint());
        assert!(recon.max_abs_diff(a) < 1e-12 * n as f64, "A != V L V^dag");
    }

    #[test]
    fn hermitian_diagonal() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j { c(i as f64 - 1.0, 0.0) } else { c(0.0, 0.0) }
        });
        let (vals, _) = hermitian_eig(&a).unwrap();
        assert_eq!(vals, vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn hermitian_dense() {
        let a = ComplexMatrix::from_fn(4, 4, |i, j| {
            let re = 1.0 / (1.0 + i as f64 + j as f64);
            let im = if i == j { 0.0 } else { 0.3 * (i as f64 - j as f64) };
            c(re, im)
        });
        check_hermitian_decomp(&a);
    }

    #[test]
    fn hermitian_degenerate() {
        // Two exactly equal eigenvalues.
        let a = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j { c(if i == 2 { 2.0 } else { 1.0 }, 0.0) } else { c(0.0, 0.0) }
        });
        check_hermitian_decomp(&a);
    }

    #[test]
    fn unitary_eig_conjugate_pair() {
        // [[0,1],[-1,0]] has eigenvalues ±i with equal real parts: exercises
        // the cluster separation through the skew part.
        let u = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(1.0, 0.0),
            (1, 0) => c(-1.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let (vals, v) = unitary_eig(&u).unwrap();
        assert!(v.unitarity_error() < 1e-12);
        let mut phases: Vec<f64> = vals.iter().map(|l| l.arg()).collect();
        phases.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((phases[0] + std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((phases[1] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = ComplexMatrix::<f64>::zeros(3, 3);
        let e = exp_i_hermitian(&z).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }
}
