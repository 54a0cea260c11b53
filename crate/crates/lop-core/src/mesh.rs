//! Beam splitters, phase shifters, and the triangular mesh decomposition.
//!
//! A beam splitter on a mode pair carries the U(2) block
//!
//! ```text
//! e^{i phi_0} [ e^{i phi_tau} cos(theta)    e^{i phi_rho} sin(theta) ]
//!             [ -e^{-i phi_rho} sin(theta)  e^{-i phi_tau} cos(theta) ]
//! ```
//!
//! (the `-sin` lives on the lower-left entry). [`reck_decompose`] factors any
//! unitary into at most `N(N-1)/2` such elements plus output phases by
//! eliminating below-diagonal entries column by column, rightmost column
//! first, bottom-up within each column, pairing each entry with its diagonal
//! pivot.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{real, Scalar};

/// Per-dimension unitarity tolerance required of decomposition inputs.
pub const DECOMPOSE_TOL: f64 = 1e-10;
/// Elements this close to the identity are pruned; phases this close to zero
/// are zeroed.
pub const PRUNE_TOL: f64 = 1e-12;

/// A single passive optical element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum OpticalElement<T> {
    #[serde(rename = "ps")]
    PhaseShifter { mode: usize, phi: T },
    #[serde(rename = "bs")]
    BeamSplitter {
        modes: (usize, usize),
        theta: T,
        phi_tau: T,
        phi_rho: T,
        #[serde(rename = "phi_0")]
        phi_0: T,
    },
}

impl<T: Scalar> OpticalElement<T> {
    /// Exchange block `[[0,1],[1,0]]` on a mode pair, expressed in beam
    /// splitter parameters.
    pub fn exchange(low: usize, high: usize) -> Self {
        OpticalElement::BeamSplitter {
            modes: (low, high),
            theta: T::FRAC_PI_2(),
            phi_tau: T::zero(),
            phi_rho: -T::FRAC_PI_2(),
            phi_0: T::FRAC_PI_2(),
        }
    }

    /// The 1×1 or 2×2 matrix of the element on its own modes.
    pub fn block(&self) -> ComplexMatrix<T> {
        match self {
            OpticalElement::PhaseShifter { phi, .. } => {
                let mut m = ComplexMatrix::zeros(1, 1);
                m[(0, 0)] = Complex::new(T::zero(), *phi).exp();
                m
            }
            OpticalElement::BeamSplitter { theta, phi_tau, phi_rho, phi_0, .. } => {
                bs_matrix(*theta, *phi_tau, *phi_rho, *phi_0)
            }
        }
    }

    pub fn max_mode(&self) -> usize {
        match self {
            OpticalElement::PhaseShifter { mode, .. } => *mode,
            OpticalElement::BeamSplitter { modes, .. } => modes.0.max(modes.1),
        }
    }

    fn validate(&self, modes: usize) -> Result<()> {
        match self {
            OpticalElement::PhaseShifter { mode, phi } => {
                if *mode >= modes {
                    return Err(Error::ModeOutOfRange { index: *mode, modes });
                }
                if !phi.is_finite() {
                    return Err(Error::NonFinite("phase shifter angle"));
                }
            }
            OpticalElement::BeamSplitter { modes: (i, j), theta, phi_tau, phi_rho, phi_0 } => {
                if *i >= *j {
                    return Err(Error::BadModePair(*i, *j));
                }
                if *j >= modes {
                    return Err(Error::ModeOutOfRange { index: *j, modes });
                }
                for a in [theta, phi_tau, phi_rho, phi_0] {
                    if !a.is_finite() {
                        return Err(Error::NonFinite("beam splitter angle"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The 2×2 beam-splitter matrix; unitary for any angles.
pub fn bs_matrix<T: Scalar>(theta: T, phi_tau: T, phi_rho: T, phi_0: T) -> ComplexMatrix<T> {
    let (s, c) = theta.sin_cos();
    let global = Complex::new(T::zero(), phi_0).exp();
    let tau = Complex::new(T::zero(), phi_tau).exp();
    let rho = Complex::new(T::zero(), phi_rho).exp();
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 0)] = global * tau * c;
    m[(0, 1)] = global * rho * s;
    m[(1, 0)] = -global * rho.conj() * s;
    m[(1, 1)] = global * tau.conj() * c;
    m
}

/// Euler product `e^{-i gamma Jz} e^{-i beta Jy} e^{-i alpha Jz}` with
/// `Jk = sigma_k / 2`; always in SU(2).
pub fn euler_su2<T: Scalar>(alpha: T, beta: T, gamma: T) -> ComplexMatrix<T> {
    let rz = |angle: T| {
        let mut m = ComplexMatrix::zeros(2, 2);
        let half = angle * real::<T>(0.5);
        m[(0, 0)] = Complex::new(T::zero(), -half).exp();
        m[(1, 1)] = Complex::new(T::zero(), half).exp();
        m
    };
    let ry = |angle: T| {
        let (s, c) = (angle * real::<T>(0.5)).sin_cos();
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 0)] = Complex::new(c, T::zero());
        m[(0, 1)] = Complex::new(-s, T::zero());
        m[(1, 0)] = Complex::new(s, T::zero());
        m[(1, 1)] = Complex::new(c, T::zero());
        m
    };
    rz(gamma).mul(&ry(beta)).mul(&rz(alpha))
}

/// Embed an element into an N-mode identity.
pub fn embed<T: Scalar>(element: &OpticalElement<T>, modes: usize) -> Result<ComplexMatrix<T>> {
    element.validate(modes)?;
    let mut m = ComplexMatrix::identity(modes);
    let block = element.block();
    match element {
        OpticalElement::PhaseShifter { mode, .. } => {
            m[(*mode, *mode)] = block[(0, 0)];
        }
        OpticalElement::BeamSplitter { modes: (i, j), .. } => {
            m[(*i, *i)] = block[(0, 0)];
            m[(*i, *j)] = block[(0, 1)];
            m[(*j, *i)] = block[(1, 0)];
            m[(*j, *j)] = block[(1, 1)];
        }
    }
    Ok(m)
}

/// An ordered sequence of optical elements followed by per-mode output phases.
///
/// Elements apply left to right (input to output); `final_phases` apply after
/// all elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Netlist<T> {
    pub modes: usize,
    pub elements: Vec<OpticalElement<T>>,
    pub final_phases: Vec<T>,
}

impl<T: Scalar> Netlist<T> {
    pub fn new(modes: usize, elements: Vec<OpticalElement<T>>, final_phases: Vec<T>) -> Result<Self> {
        let netlist = Self { modes, elements, final_phases };
        netlist.validate()?;
        Ok(netlist)
    }

    pub fn identity(modes: usize) -> Self {
        Self { modes, elements: Vec::new(), final_phases: vec![T::zero(); modes] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.modes == 0 {
            return Err(Error::ZeroModes);
        }
        for e in &self.elements {
            e.validate(self.modes)?;
        }
        if self.final_phases.len() != self.modes {
            return Err(Error::InvalidNetlist(format!(
                "{} final phases for {} modes",
                self.final_phases.len(),
                self.modes
            )));
        }
        if !self.final_phases.iter().all(|p| p.is_finite()) {
            return Err(Error::NonFinite("final phase"));
        }
        Ok(())
    }

    /// Product of the embedded elements in application order, then the output
    /// phase diagonal.
    pub fn total_matrix(&self) -> Result<ComplexMatrix<T>> {
        self.validate()?;
        let mut total = ComplexMatrix::identity(self.modes);
        for e in &self.elements {
            total = embed(e, self.modes)?.mul(&total);
        }
        let mut phased = total;
        for (i, phi) in self.final_phases.iter().enumerate() {
            let factor = Complex::new(T::zero(), *phi).exp();
            for j in 0..self.modes {
                let v = phased[(i, j)] * factor;
                phased[(i, j)] = v;
            }
        }
        Ok(phased)
    }

    /// Count of beam-splitter elements.
    pub fn bs_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, OpticalElement::BeamSplitter { .. }))
            .count()
    }
}

/// Wrap an angle into `(-pi, pi]`.
pub fn normalize_angle<T: Scalar>(x: T) -> T {
    let pi = T::PI();
    let two_pi = pi + pi;
    let mut y = x % two_pi;
    if y > pi {
        y = y - two_pi;
    } else if y <= -pi {
        y = y + two_pi;
    }
    if y.is_zero() {
        T::zero() // scrub -0
    } else {
        y
    }
}

/// Decompose a unitary into a triangular mesh of beam splitters plus output
/// phases, such that `total_matrix()` reproduces the input.
///
/// Below-diagonal entries are eliminated by right-multiplying with element
/// adjoints; the element solved at entry `(r, c)` mixes columns `(c, r)` and
/// zeroes the entry against the diagonal pivot `(r, r)`. A vanishing pivot
/// emits an exact exchange. Near-identity elements are pruned and the residual
/// diagonal becomes `final_phases`.
pub fn reck_decompose<T: Scalar>(u: &ComplexMatrix<T>) -> Result<Netlist<T>> {
    reck_decompose_with(u, DECOMPOSE_TOL)
}

pub fn reck_decompose_with<T: Scalar>(u: &ComplexMatrix<T>, tol: f64) -> Result<Netlist<T>> {
    let n = u.require_square()?;
    u.require_unitary(tol)?;

    let mut work = u.clone();
    let mut elements: Vec<OpticalElement<T>> = Vec::new();

    for col in (0..n.saturating_sub(1)).rev() {
        for row in ((col + 1)..n).rev() {
            let a = work[(row, col)];
            if a.re.is_zero() && a.im.is_zero() {
                continue;
            }
            let pivot = work[(row, row)];
            let element = if pivot.re.is_zero() && pivot.im.is_zero() {
                OpticalElement::exchange(col, row)
            } else {
                let theta = a.norm().atan2(pivot.norm());
                let phi_rho = normalize_angle(pivot.arg() - a.arg() + T::PI());
                if theta.to_f64().unwrap_or(0.0) <= PRUNE_TOL {
                    continue;
                }
                OpticalElement::BeamSplitter {
                    modes: (col, row),
                    theta,
                    phi_tau: T::zero(),
                    phi_rho,
                    phi_0: T::zero(),
                }
            };
            apply_adjoint_columns(&mut work, &element);
            work[(row, col)] = Complex::new(T::zero(), T::zero());
            elements.push(element);
        }
    }

    // The eliminated matrix must be diagonal up to roundoff.
    let mut residual = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                residual = residual.max(work[(i, j)].norm());
            }
        }
    }
    let residual = residual.to_f64().unwrap_or(f64::INFINITY);
    let bound = tol * n as f64;
    if residual > bound {
        return Err(Error::DecompositionResidual { residual, tol: bound });
    }

    let final_phases = (0..n)
        .map(|i| {
            let phi = normalize_angle(work[(i, i)].arg());
            if phi.abs().to_f64().unwrap_or(0.0) <= PRUNE_TOL {
                T::zero()
            } else {
                phi
            }
        })
        .collect();

    Ok(Netlist { modes: n, elements, final_phases })
}

/// `work <- work * embed(element)†`, touching only the element's two columns.
fn apply_adjoint_columns<T: Scalar>(work: &mut ComplexMatrix<T>, element: &OpticalElement<T>) {
    let (i, j) = match element {
        OpticalElement::BeamSplitter { modes, .. } => *modes,
        OpticalElement::PhaseShifter { .. } => unreachable!("decomposition emits only beam splitters"),
    };
    let b = element.block();
    let (cc, cr) = (b[(0, 0)].conj(), b[(0, 1)].conj());
    let (rc, rr) = (b[(1, 0)].conj(), b[(1, 1)].conj());
    for k in 0..work.rows() {
        let wi = work[(k, i)];
        let wj = work[(k, j)];
        work[(k, i)] = wi * cc + wj * cr;
        work[(k, j)] = wi * rc + wj * rr;
    }
}
