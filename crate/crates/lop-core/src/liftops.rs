//! Lifting mode-space unitaries to fixed photon-number subspaces.
//!
//! An N×N unitary `U` acts on the n-photon subspace through
//! `exp(i Σ_ij J_ij a†_i a_j)` with `U = exp(iJ)`: take the principal
//! logarithm of `U`, build the second-quantized generator on the occupation
//! basis with the ladder rules, and exponentiate. The one-photon block of the
//! result reproduces `U` entrywise, the vacuum is fixed, and a permanent-based
//! amplitude oracle provides an independent cross-check for every entry.

use num_complex::Complex;

use crate::eig::{exp_i_hermitian, unitary_eig};
use crate::error::{Error, Result};
use crate::fock::{dimension, enumerate_basis, FockBasis, OccupationVector};
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Scalar};

/// Default tolerance for unitarity checks, scaled by matrix dimension.
pub const UNITARY_TOL: f64 = 1e-10;
/// Default tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Default cap on lifted-operator dimension.
pub const DIM_CAP: usize = 20_000;
/// Hard cap on photon number for the permanent oracle (cost grows as 2^n).
pub const ORACLE_PHOTON_CAP: usize = 12;

/// Knobs for [`lift_unitary_with`].
#[derive(Debug, Clone, Copy)]
pub struct LiftConfig {
    /// Per-dimension unitarity tolerance applied to the input matrix.
    pub unitary_tol: f64,
    /// Reject lifts whose subspace dimension exceeds this cap.
    pub dim_cap: usize,
}

impl Default for LiftConfig {
    fn default() -> Self {
        Self { unitary_tol: UNITARY_TOL, dim_cap: DIM_CAP }
    }
}

/// A mode-space unitary restricted to one photon-number subspace.
#[derive(Debug, Clone)]
pub struct LiftedOperator<T> {
    pub basis: FockBasis,
    pub matrix: ComplexMatrix<T>,
}

/// Matrix of `Σ_ij J_ij a†_i a_j` on the given occupation basis.
///
/// Ladder rules: for `i != j`,
/// `a†_i a_j |..n_i..n_j..> = sqrt(n_j (n_i + 1)) |..n_i+1..n_j-1..>`,
/// and the diagonal term contributes `n_i`. Hermitian input gives a Hermitian
/// generator.
pub fn js_generator<T: Scalar>(
    j: &ComplexMatrix<T>,
    basis: &FockBasis,
) -> Result<ComplexMatrix<T>> {
    let n = j.require_square()?;
    if n != basis.modes() {
        return Err(Error::SizeMismatch { expected: basis.modes(), got: n });
    }
    j.require_hermitian(HERMITIAN_TOL)?;

    let dim = basis.dim();
    let mut q = ComplexMatrix::<T>::zeros(dim, dim);
    for (col, state) in basis.states().iter().enumerate() {
        for src in 0..n {
            let occ_src = state.get(src);
            if occ_src == 0 {
                continue;
            }
            for dst in 0..n {
                let coeff = j[(dst, src)];
                if coeff.re.is_zero() && coeff.im.is_zero() {
                    continue;
                }
                if dst == src {
                    let weight = real::<T>(occ_src as f64);
                    let v = q[(col, col)] + coeff * weight;
                    q[(col, col)] = v;
                } else {
                    let mut occ = state.occupations().to_vec();
                    occ[src] -= 1;
                    occ[dst] += 1;
                    let amp = real::<T>((occ_src as f64 * (state.get(dst) + 1) as f64).sqrt());
                    let row = basis
                        .index_of(&OccupationVector::new(occ))
                        .expect("ladder image stays in the basis");
                    let v = q[(row, col)] + coeff * amp;
                    q[(row, col)] = v;
                }
            }
        }
    }
    Ok(q)
}

/// Hermitian principal logarithm: `J` with `exp(iJ) = U` and eigenphases in
/// `(-pi, pi]`.
pub fn log_unitary<T: Scalar>(u: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    log_unitary_with(u, UNITARY_TOL)
}

pub fn log_unitary_with<T: Scalar>(u: &ComplexMatrix<T>, tol: f64) -> Result<ComplexMatrix<T>> {
    let n = u.require_square()?;
    u.require_unitary(tol)?;
    let (evals, v) = unitary_eig(u)?;
    let pi = T::PI();
    let phases: Vec<T> = evals
        .iter()
        .map(|l| {
            let theta = l.arg();
            if theta <= -pi {
                pi
            } else {
                theta
            }
        })
        .collect();
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| v[(i, j)] * phases[j]);
    let log = scaled.mul(&v.adjoint());
    // Symmetrize away rounding in V.
    Ok(log.add(&log.adjoint()).scale(Complex::new(real::<T>(0.5), T::zero())))
}

/// Lift a Hermitian mode-space generator to the n-photon subspace:
/// `exp(i js_generator(J))`.
pub fn lift_from_generator<T: Scalar>(
    j: &ComplexMatrix<T>,
    photons: usize,
) -> Result<LiftedOperator<T>> {
    lift_from_generator_with(j, photons, &LiftConfig::default())
}

pub fn lift_from_generator_with<T: Scalar>(
    j: &ComplexMatrix<T>,
    photons: usize,
    config: &LiftConfig,
) -> Result<LiftedOperator<T>> {
    let modes = j.require_square()?;
    let dim = dimension(modes, photons)?;
    if dim > config.dim_cap {
        return Err(Error::DimensionCap { dim, cap: config.dim_cap });
    }
    let basis = enumerate_basis(modes, photons)?;
    let generator = js_generator(j, &basis)?;
    let matrix = exp_i_hermitian(&generator)?;
    Ok(LiftedOperator { basis, matrix })
}

/// Lift a mode-space unitary to the n-photon subspace.
///
/// For `photons = 0` this is the 1×1 identity (the vacuum is fixed); for
/// `photons = 1` the returned matrix equals `U` entrywise.
pub fn lift_unitary<T: Scalar>(u: &ComplexMatrix<T>, photons: usize) -> Result<LiftedOperator<T>> {
    lift_unitary_with(u, photons, &LiftConfig::default())
}

pub fn lift_unitary_with<T: Scalar>(
    u: &ComplexMatrix<T>,
    photons: usize,
    config: &LiftConfig,
) -> Result<LiftedOperator<T>> {
    let modes = u.require_square()?;
    let dim = dimension(modes, photons)?;
    if dim > config.dim_cap {
        return Err(Error::DimensionCap { dim, cap: config.dim_cap });
    }
    let j = log_unitary_with(u, config.unitary_tol)?;
    lift_from_generator_with(&j, photons, config)
}

/// Permanent of a square matrix by Ryser's formula with Gray-code subset
/// updates. Cost `O(2^n n)`; intended for desk-scale verification.
pub fn permanent<T: Scalar>(m: &ComplexMatrix<T>) -> Result<Complex<T>> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    if n > ORACLE_PHOTON_CAP {
        return Err(Error::OracleCap { photons: n, cap: ORACLE_PHOTON_CAP });
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut row_sums = vec![zero; n];
    let mut total = zero;
    let mut gray_prev: usize = 0;
    for k in 1usize..(1 << n) {
        let gray = k ^ (k >> 1);
        let changed = gray ^ gray_prev;
        let col = changed.trailing_zeros() as usize;
        if gray & changed != 0 {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs = *rs + m[(i, col)];
            }
        } else {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs = *rs - m[(i, col)];
            }
        }
        gray_prev = gray;
        let mut prod = Complex::new(T::one(), T::zero());
        for rs in &row_sums {
            prod = prod * *rs;
        }
        if gray.count_ones() % 2 == 0 {
            total = total - prod;
        } else {
            total = total + prod;
        }
    }
    if n % 2 == 0 {
        total = -total;
    }
    Ok(total)
}

/// Multiphoton transition amplitude `<out| lift(U) |in>` computed from the
/// permanent of the row/column-repeated submatrix:
/// `per(U[out|in]) / sqrt(prod out_i! prod in_j!)`.
///
/// Independent of the log/exp lift; serves as its oracle.
pub fn permanent_amplitude<T: Scalar>(
    u: &ComplexMatrix<T>,
    out: &OccupationVector,
    input: &OccupationVector,
) -> Result<Complex<T>> {
    let modes = u.require_square()?;
    if out.modes() != modes {
        return Err(Error::ModeMismatch { expected: modes, got: out.modes() });
    }
    if input.modes() != modes {
        return Err(Error::ModeMismatch { expected: modes, got: input.modes() });
    }
    let n = input.total();
    if out.total() != n {
        return Err(Error::PhotonMismatch { expected: n, got: out.total() });
    }
    if n > ORACLE_PHOTON_CAP {
        return Err(Error::OracleCap { photons: n, cap: ORACLE_PHOTON_CAP });
    }

    let mut rows = Vec::with_capacity(n);
    for (i, &occ) in out.occupations().iter().enumerate() {
        rows.extend(std::iter::repeat(i).take(occ));
    }
    let mut cols = Vec::with_capacity(n);
    for (j, &occ) in input.occupations().iter().enumerate() {
        cols.extend(std::iter::repeat(j).take(occ));
    }
    let sub = ComplexMatrix::from_fn(n, n, |r, c| u[(rows[r], cols[c])]);
    let per = permanent(&sub)?;

    let mut norm: f64 = 1.0;
    for &occ in out.occupations().iter().chain(input.occupations()) {
        norm *= factorial(occ);
    }
    Ok(per / Complex::new(real::<T>(norm.sqrt()), T::zero()))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// The bosonic su(2) generators and the number operator on `basis(2, n)`.
#[derive(Debug, Clone)]
pub struct Su2Fixtures<T> {
    pub j1: ComplexMatrix<T>,
    pub j2: ComplexMatrix<T>,
    pub j3: ComplexMatrix<T>,
    pub number: ComplexMatrix<T>,
}

/// Apply the generator map to `σ1/2`, `σ2/2`, `σ3/2` and the identity on the
/// two-mode n-photon basis. The triple obeys the angular-momentum commutators
/// and commutes with the number operator.
pub fn su2_fixtures<T: Scalar>(photons: usize) -> Result<Su2Fixtures<T>> {
    let basis = enumerate_basis(2, photons)?;
    let zero = Complex::new(T::zero(), T::zero());
    let half = Complex::new(real::<T>(0.5), T::zero());
    let ihalf = Complex::new(T::zero(), real::<T>(0.5));
    let one = Complex::new(T::one(), T::zero());

    let sigma1_half = ComplexMatrix::from_fn(2, 2, |i, j| if i != j { half } else { zero });
    let sigma2_half = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => -ihalf,
        (1, 0) => ihalf,
        _ => zero,
    });
    let sigma3_half = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => half,
        (1, 1) => -half,
        _ => zero,
    });
    let identity = ComplexMatrix::from_fn(2, 2, |i, j| if i == j { one } else { zero });

    Ok(Su2Fixtures {
        j1: js_generator(&sigma1_half, &basis)?,
        j2: js_generator(&sigma2_half, &basis)?,
        j3: js_generator(&sigma3_half, &basis)?,
        number: js_generator(&identity, &basis)?,
    })
}
