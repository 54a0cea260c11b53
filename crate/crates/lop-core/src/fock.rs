//! Occupation vectors and fixed photon-number subspaces.
//!
//! A basis over `N` modes at total photon number `n` enumerates every weak
//! composition of `n` into `N` parts in descending lexicographic order, so
//! `(n,0,...,0)` comes first and `(0,...,0,n)` last.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Photon counts per mode: the label of the Fock state `|n1 ... nN>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector(Vec<usize>);

impl OccupationVector {
    pub fn new(occupations: Vec<usize>) -> Self {
        Self(occupations)
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    /// Total photon number.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, mode: usize) -> usize {
        self.0[mode]
    }
}

impl From<Vec<usize>> for OccupationVector {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ">")
    }
}

/// Number of `photons`-photon states over `modes` modes:
/// `binomial(photons + modes - 1, modes - 1)`, computed exactly.
pub fn dimension(modes: usize, photons: usize) -> Result<usize> {
    if modes == 0 {
        return Err(Error::ZeroModes);
    }
    let n = (photons + modes - 1) as u128;
    let k = (modes - 1) as u128;
    let value = binomial_exact(n, k).ok_or(Error::DimensionOverflow { modes, photons })?;
    usize::try_from(value).map_err(|_| Error::DimensionOverflow { modes, photons })
}

fn binomial_exact(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Exact at every step: acc holds binomial(n - k + i, i).
        acc = acc.checked_mul(n - k + i)? / i;
    }
    Some(acc)
}

/// Ordered basis of the `photons`-photon subspace over `modes` modes with a
/// bidirectional index.
#[derive(Debug, Clone)]
pub struct FockBasis {
    modes: usize,
    photons: usize,
    states: Vec<OccupationVector>,
    index: HashMap<OccupationVector, usize>,
}

impl FockBasis {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn photons(&self) -> usize {
        self.photons
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[OccupationVector] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &OccupationVector {
        &self.states[i]
    }

    /// Position of `v` in the enumeration. Reports wrong mode count or wrong
    /// photon total as distinct membership failures.
    pub fn index_of(&self, v: &OccupationVector) -> Result<usize> {
        if v.modes() != self.modes {
            return Err(Error::ModeMismatch { expected: self.modes, got: v.modes() });
        }
        if v.total() != self.photons {
            return Err(Error::PhotonMismatch { expected: self.photons, got: v.total() });
        }
        self.index.get(v).copied().ok_or(Error::NotInBasis)
    }
}

/// Enumerate all occupation vectors of total `photons` over `modes` modes in
/// descending lexicographic order.
pub fn enumerate_basis(modes: usize, photons: usize) -> Result<FockBasis> {
    let dim = dimension(modes, photons)?;
    let mut states = Vec::with_capacity(dim);
    let mut prefix = Vec::with_capacity(modes);
    fill(photons, modes, &mut prefix, &mut states);
    debug_assert_eq!(states.len(), dim);
    let index = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(FockBasis { modes, photons, states, index })
}

fn fill(left: usize, modes_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<OccupationVector>) {
    if modes_left == 1 {
        prefix.push(left);
        out.push(OccupationVector::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for k in (0..=left).rev() {
        prefix.push(k);
        fill(left - k, modes_left - 1, prefix, out);
        prefix.pop();
    }
}

/// Exact half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub fn twice(&self) -> i64 {
        self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice % 2 == 0
    }

    pub fn abs(&self) -> Self {
        Self { twice: self.twice.abs() }
    }

    pub fn to_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;

    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Relabel a two-mode Fock state as angular-momentum quantum numbers
/// `j = (n1 + n2)/2`, `l = (n1 - n2)/2`.
pub fn jl_relabel(v: &OccupationVector) -> Result<(HalfInt, HalfInt)> {
    if v.modes() != 2 {
        return Err(Error::NotTwoModes(v.modes()));
    }
    let n1 = v.get(0) as i64;
    let n2 = v.get(1) as i64;
    Ok((HalfInt::from_twice(n1 + n2), HalfInt::from_twice(n1 - n2)))
}

/// Coefficient vector over a [`FockBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    pub fn new(basis: &FockBasis, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::AmplitudeCount { expected: basis.dim(), got: amplitudes.len() });
        }
        Ok(Self { amplitudes })
    }

    /// Unit vector on a single basis state.
    pub fn basis_state(basis: &FockBasis, v: &OccupationVector) -> Result<Self> {
        let idx = basis.index_of(v)?;
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); basis.dim()];
        amplitudes[idx] = Complex::new(T::one(), T::zero());
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |acc, x| acc + x)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        let defect = (self.norm_sqr() - T::one()).abs().to_f64().unwrap_or(f64::INFINITY);
        defect <= tol
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(2, 3).unwrap(), 4);
        assert_eq!(dimension(3, 4).unwrap(), 15);
        assert_eq!(dimension(7, 0).unwrap(), 1);
        assert!(matches!(dimension(0, 3), Err(Error::ZeroModes)));
    }

    #[test]
    fn dimension_closed_forms() {
        for n in 0..=20 {
            assert_eq!(dimension(2, n).unwrap(), n + 1);
            assert_eq!(dimension(3, n).unwrap(), (n + 1) * (n + 2) / 2);
        }
    }

    #[test]
    fn dimension_overflow_rejected() {
        assert!(matches!(
            dimension(500, 500),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    #[test]
    fn basis_two_modes_two_photons() {
        let b = enumerate_basis(2, 2).unwrap();
        let expected: Vec<OccupationVector> =
            vec![vec![2, 0].into(), vec![1, 1].into(), vec![0, 2].into()];
        assert_eq!(b.states(), expected.as_slice());
    }

    #[test]
    fn basis_single_photon_is_mode_list() {
        let b = enumerate_basis(4, 1).unwrap();
        for (i, s) in b.states().iter().enumerate() {
            let mut expect = vec![0usize; 4];
            expect[i] = 1;
            assert_eq!(s.occupations(), expect.as_slice());
        }
    }

    #[test]
    fn basis_three_modes_two_photons_matches_brute_force() {
        // Independent enumeration of all 3-tuples summing to 2.
        let mut brute: Vec<Vec<usize>> = Vec::new();
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    if a + b + c == 2 {
                        brute.push(vec![a, b, c]);
                    }
                }
            }
        }
        let basis = enumerate_basis(3, 2).unwrap();
        assert_eq!(basis.dim(), 6);
        assert_eq!(brute.len(), 6);
        for occ in brute {
            let v = OccupationVector::new(occ);
            let i = basis.index_of(&v).unwrap();
            assert_eq!(basis.state(i), &v);
        }
    }

    #[test]
    fn index_examples() {
        let b22 = enumerate_basis(2, 2).unwrap();
        assert_eq!(b22.index_of(&vec![1, 1].into()).unwrap(), 1);
        let b41 = enumerate_basis(4, 1).unwrap();
        assert_eq!(b41.index_of(&vec![1, 0, 0, 0].into()).unwrap(), 0);
        assert!(matches!(
            b22.index_of(&vec![1, 0].into()),
            Err(Error::PhotonMismatch { expected: 2, got: 1 })
        ));
        assert!(matches!(
            b22.index_of(&vec![1, 1, 0].into()),
            Err(Error::ModeMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn relabel_examples() {
        let (j, l) = jl_relabel(&vec![1, 0].into()).unwrap();
        assert_eq!((j.twice(), l.twice()), (1, 1));
        let (j, l) = jl_relabel(&vec![0, 0].into()).unwrap();
        assert_eq!((j.twice(), l.twice()), (0, 0));
        let (j, l) = jl_relabel(&vec![2, 3].into()).unwrap();
        assert_eq!((j.twice(), l.twice()), (5, -1));
        assert_eq!(format!("{j}"), "5/2");
        assert_eq!(format!("{l}"), "-1/2");
        assert!(matches!(jl_relabel(&vec![1, 0, 0].into()), Err(Error::NotTwoModes(3))));
    }

    #[test]
    fn relabel_injective_and_dimension_link() {
        for n in 0..=6 {
            let b = enumerate_basis(2, n).unwrap();
            let labels: std::collections::HashSet<_> =
                b.states().iter().map(|s| jl_relabel(s).unwrap()).collect();
            assert_eq!(labels.len(), b.dim());
            for s in b.states() {
                let (j, l) = jl_relabel(s).unwrap();
                assert!(l.abs() <= j);
                assert!((j - l).is_integer());
                // 2j + 1 at j = n/2 is the subspace dimension.
                assert_eq!((j.twice() + 1) as usize, dimension(2, n).unwrap());
            }
        }
    }

    #[test]
    fn state_vector_checks_length() {
        let b = enumerate_basis(2, 1).unwrap();
        let bad = StateVector::<f64>::new(&b, vec![Complex::new(1.0, 0.0)]);
        assert!(matches!(bad, Err(Error::AmplitudeCount { expected: 2, got: 1 })));
        let v = StateVector::<f64>::basis_state(&b, &vec![0, 1].into()).unwrap();
        assert!(v.is_normalized(1e-10));
    }

    proptest! {
        #[test]
        fn enumeration_counts_and_roundtrips(modes in 1usize..=6, photons in 0usize..=6) {
            let b = enumerate_basis(modes, photons).unwrap();
            prop_assert_eq!(b.dim(), dimension(modes, photons).unwrap());
            for (i, s) in b.states().iter().enumerate() {
                prop_assert_eq!(s.modes(), modes);
                prop_assert_eq!(s.total(), photons);
                prop_assert_eq!(b.index_of(s).unwrap(), i);
            }
            // Strictly descending lexicographic order.
            for w in b.states().windows(2) {
                prop_assert!(w[0].occupations() > w[1].occupations());
            }
        }
    }
}
