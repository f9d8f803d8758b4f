//! Spectrum multisets and the two routes to a lift's spectrum.
//!
//! [`lift_spectrum`] implements the character-point route: evaluate the
//! polynomial matrix of an Abelian-kind voltage digraph at every character
//! point and pool the eigenvalues of the resulting base-size complex
//! matrices, giving exactly `r * m` values. [`direct_spectrum`] is the
//! brute-force oracle: construct the lift explicitly and eigensolve its full
//! adjacency matrix. The two must agree as multisets; keeping both routes
//! alive is the point.
//!
//! Multisets are compared with sorted greedy matching under an absolute
//! tolerance. At the tolerances used here, distinct eigenvalue clusters are
//! far wider apart than the matching tolerance, so greedy matching coincides
//! with optimal matching.
//!
//! Every multiset this module produces is denoised at
//! [`NOISE_SMOOTHING_RADIUS`]: sub-radius clusters collapse to their mean.
//! That is what lets two independently computed spectra of the same problem
//! agree to 1e-8 even when the underlying eigenvalue is defective. The raw
//! solver output remains available through [`crate::eigen`].

use ndarray::Array2;
use num_complex::Complex64;
use thiserror::Error;

use crate::eigen::{self, EigenError};
use crate::group::GroupError;
use crate::polymat::{PolyMatrix, PolymatError};
use crate::voltage::VoltageDigraph;

/// Order cap for the explicit lift eigensolve.
pub const DIRECT_SPECTRUM_MAX_ORDER: usize = 2000;

/// Radius below which computed eigenvalues are treated as one multiple
/// eigenvalue and replaced by their cluster mean.
///
/// A defective eigenvalue of multiplicity `k` can only be computed to about
/// `eps^(1/k)` in floating point (the cluster scatters that far in arbitrary
/// directions), but its cluster mean is accurate to roughly `n * eps`
/// because the cluster sum is a trace. Snapping the cluster to its mean
/// therefore restores the accuracy the comparisons below rely on. Jordan
/// splits for the orders handled here stay under 1e-4 while genuine
/// separations of small-integer spectra sit at 1e-3 and above, so the radius
/// threads between the two. Eigenvalues of unrelated provenance closer than
/// this are reported as equal.
pub const NOISE_SMOOTHING_RADIUS: f64 = 3e-4;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpectraError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Polymat(#[from] PolymatError),
    #[error("lift order {order} exceeds the direct-spectrum limit {limit}")]
    LiftTooLarge { order: usize, limit: usize },
}

/// A representative of one eigenvalue cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumCluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// A multiset of complex eigenvalues, stored sorted by (re, im).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMultiset {
    values: Vec<Complex64>,
}

impl SpectrumMultiset {
    pub fn from_values(mut values: Vec<Complex64>) -> Self {
        values.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Raw values, repetitions included, sorted by (re, im).
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Replace every cluster tighter than [`NOISE_SMOOTHING_RADIUS`] by
    /// copies of its mean. See the constant for why this recovers accuracy
    /// lost to defective eigenvalues.
    pub fn denoised(&self) -> SpectrumMultiset {
        let mut values = Vec::with_capacity(self.len());
        for cluster in self.cluster(NOISE_SMOOTHING_RADIUS) {
            values.extend(std::iter::repeat_n(cluster.value, cluster.multiplicity));
        }
        SpectrumMultiset::from_values(values)
    }

    /// Group the raw values into (representative, multiplicity) clusters.
    ///
    /// Values are banded by real part at the given tolerance, then by
    /// imaginary part within each band; the representative is the arithmetic
    /// mean of the members. Clusters come back sorted by real part
    /// descending, then imaginary part descending.
    pub fn cluster(&self, tol: f64) -> Vec<SpectrumCluster> {
        let mut clusters = Vec::new();
        let mut band_start = 0;
        while band_start < self.values.len() {
            let mut band_end = band_start + 1;
            while band_end < self.values.len()
                && self.values[band_end].re - self.values[band_end - 1].re <= tol
            {
                band_end += 1;
            }
            let mut band: Vec<Complex64> = self.values[band_start..band_end].to_vec();
            band.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
            let mut start = 0;
            while start < band.len() {
                let mut end = start + 1;
                while end < band.len() && band[end].im - band[end - 1].im <= tol {
                    end += 1;
                }
                let members = &band[start..end];
                let sum: Complex64 = members.iter().sum();
                clusters.push(SpectrumCluster {
                    value: sum / members.len() as f64,
                    multiplicity: members.len(),
                });
                start = end;
            }
            band_start = band_end;
        }
        clusters.sort_by(|a, b| {
            (b.value.re, b.value.im)
                .partial_cmp(&(a.value.re, a.value.im))
                .unwrap()
        });
        clusters
    }
}

/// Eigenvalues of a complex matrix as a spectrum multiset.
///
/// Like every multiset produced by this module, the result is denoised at
/// [`NOISE_SMOOTHING_RADIUS`]; use [`eigen::eigenvalues`] for raw values.
pub fn eigenvalues(matrix: &Array2<Complex64>) -> Result<SpectrumMultiset, SpectraError> {
    Ok(SpectrumMultiset::from_values(eigen::eigenvalues(matrix)?).denoised())
}

/// Eigenvalues of an integer matrix (adjacency or quotient counts).
pub fn eigenvalues_int(matrix: &Array2<i64>) -> Result<SpectrumMultiset, SpectraError> {
    Ok(SpectrumMultiset::from_values(eigen::eigenvalues_int(matrix)?).denoised())
}

/// The complete lift spectrum of an Abelian-kind voltage digraph: the union
/// over all character points of the spectra of the evaluated polynomial
/// matrix. Yields exactly `r * m` values.
pub fn lift_spectrum(vd: &VoltageDigraph) -> Result<SpectrumMultiset, SpectraError> {
    let poly = PolyMatrix::from_voltage(vd);
    let mut values = Vec::with_capacity(vd.r() * vd.group().order());
    for point in vd.group().evaluation_points()? {
        let evaluated = poly.evaluate(&point)?;
        values.extend(eigen::eigenvalues(&evaluated)?);
    }
    Ok(SpectrumMultiset::from_values(values).denoised())
}

/// The brute-force oracle: eigenvalues of the explicitly constructed lift.
pub fn direct_spectrum(vd: &VoltageDigraph) -> Result<SpectrumMultiset, SpectraError> {
    let order = vd.r() * vd.group().order();
    if order > DIRECT_SPECTRUM_MAX_ORDER {
        return Err(SpectraError::LiftTooLarge {
            order,
            limit: DIRECT_SPECTRUM_MAX_ORDER,
        });
    }
    Ok(eigenvalues_int(vd.lift().digraph().adjacency())?.denoised())
}

/// True iff every element of `a` can be matched with a distinct element of
/// `b` within absolute distance `tol` (greedy over the sorted values).
pub fn multiset_subset(a: &SpectrumMultiset, b: &SpectrumMultiset, tol: f64) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a.values() {
        match closest_unused(x, b.values(), &used) {
            Some((idx, dist)) if dist <= tol => used[idx] = true,
            _ => return false,
        }
    }
    true
}

/// Multiset equality: same cardinality and a pairwise matching within `tol`.
pub fn multiset_equal(a: &SpectrumMultiset, b: &SpectrumMultiset, tol: f64) -> bool {
    a.len() == b.len() && multiset_subset(a, b, tol)
}

/// Largest matched distance under greedy nearest pairing, or `None` when the
/// cardinalities differ. Zero for identical multisets.
pub fn multiset_distance(a: &SpectrumMultiset, b: &SpectrumMultiset) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a.values() {
        let (idx, dist) = closest_unused(x, b.values(), &used)?;
        used[idx] = true;
        worst = worst.max(dist);
    }
    Some(worst)
}

fn closest_unused(
    x: &Complex64,
    candidates: &[Complex64],
    used: &[bool],
) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, y) in candidates.iter().enumerate() {
        if used[i] {
            continue;
        }
        let d = (x - y).norm();
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best
}

/// Exact spectrum of the two-vertex family over `Z_n` with loop polynomials
/// `p1`, `p2` and a single arc each way between the vertices.
///
/// At each n-th root of unity `w_j` the evaluated matrix is
/// `[[p1(w_j), 1], [1, p2(w_j)]]`, whose eigenvalues are
/// `(p1 + p2)/2 +- sqrt((p1 - p2)^2 + 4)/2`. This 2x2 eigensolve is the
/// ground truth; see the tests for the radicand variant it rules out.
pub fn p_family_spectrum(n: usize, p1: &[i64], p2: &[i64]) -> SpectrumMultiset {
    assert!(n >= 1, "family order must be at least 1");
    assert!(p1.len() <= n && p2.len() <= n, "coefficient vectors exceed order");
    let eval = |coeffs: &[i64], point: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for &c in coeffs {
            acc += power * c as f64;
            power *= point;
        }
        acc
    };
    let mut values = Vec::with_capacity(2 * n);
    for j in 0..n {
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64);
        let a = eval(p1, w);
        let d = eval(p2, w);
        let half_sum = (a + d) * 0.5;
        let disc = ((a - d) * (a - d) + Complex64::new(4.0, 0.0)).sqrt() * 0.5;
        values.push(half_sum + disc);
        values.push(half_sum - disc);
    }
    SpectrumMultiset::from_values(values).denoised()
}
