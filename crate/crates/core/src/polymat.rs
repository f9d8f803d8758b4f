//! Base-size polynomial matrices representing a lift.
//!
//! A [`PolyMatrix`] over a base of size `r` and a group of order `m` stores,
//! for each entry `(u, v)`, the vector of arc counts per voltage. For a
//! cyclic group this is literally the coefficient list of a polynomial of
//! degree at most `m - 1` in `z`; for a product of cyclic groups it is a
//! multi-indexed coefficient array in `z1, ..., zn`; for table groups it is a
//! raw vector over the group elements.
//!
//! Matrix multiplication uses group convolution as the scalar product, so
//! exponents wrap cyclically (`z * z^{k-1} = 1`). The coefficient of `g_i` in
//! entry `(u, v)` of the `l`-th power counts the walks of length `l` in the
//! lift from `(u, h)` to `(v, h g_i)`, for any `h`.
//!
//! For Abelian-kind groups the same powers can be computed through the
//! discrete Fourier transform: evaluate each entry at every character point,
//! power the resulting complex matrices, and transform back. The transform
//! here is unnormalized, so convolution maps to a plain pointwise product
//! with no scale correction, and the inverse divides by the group order once.
//! All true coefficients are integers; the rounding residual of the inverse
//! transform is checked against a hard tolerance rather than rounded away
//! silently.

use ndarray::{Array2, Array3};
use thiserror::Error;

use crate::group::{CharPoint, FiniteGroup, GVector, GroupError};
use crate::voltage::VoltageDigraph;
use num_complex::Complex64;

/// Largest acceptable distance from an integer after the inverse transform.
pub const DFT_ROUNDING_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum PolymatError {
    #[error("matrix sizes or groups differ")]
    Mismatch,
    #[error("inverse transform residual {residual:.3e} exceeds {tolerance:.3e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A square matrix over the base vertices whose entries are coefficient
/// vectors indexed by the group elements.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    group: FiniteGroup,
    size: usize,
    /// Coefficients indexed `[row, column, group element]`.
    coeffs: Array3<i64>,
}

impl PolyMatrix {
    /// The all-zero matrix.
    pub fn zeros(group: FiniteGroup, size: usize) -> Self {
        let m = group.order();
        Self {
            group,
            size,
            coeffs: Array3::zeros((size, size, m)),
        }
    }

    /// The multiplicative identity: identity-element indicators on the
    /// diagonal.
    pub fn identity(group: FiniteGroup, size: usize) -> Self {
        let mut x = Self::zeros(group, size);
        for u in 0..size {
            x.coeffs[[u, u, 0]] = 1;
        }
        x
    }

    /// The polynomial matrix of a voltage digraph: the coefficient of `g_i`
    /// in entry `(u, v)` is the number of base arcs `u -> v` with voltage
    /// `g_i`. Evaluating every entry at 1 recovers the fiber quotient.
    pub fn from_voltage(vd: &VoltageDigraph) -> Self {
        let mut x = Self::zeros(vd.group().clone(), vd.r());
        for arc in vd.arcs() {
            x.coeffs[[arc.tail, arc.head, arc.voltage]] += 1;
        }
        x
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Coefficient of group element `i` in entry `(u, v)`.
    pub fn coeff(&self, u: usize, v: usize, i: usize) -> i64 {
        self.coeffs[[u, v, i]]
    }

    /// Entry `(u, v)` as a coefficient vector over the group.
    pub fn entry(&self, u: usize, v: usize) -> GVector {
        let coeffs = self.coeffs.slice(ndarray::s![u, v, ..]).to_vec();
        GVector::new(self.group.clone(), coeffs).expect("entry length matches group order")
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolymatError> {
        if self.group != other.group || self.size != other.size {
            return Err(PolymatError::Mismatch);
        }
        let mut out = self.clone();
        for (acc, &term) in out.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *acc = acc.checked_add(term).ok_or(GroupError::Overflow)?;
        }
        Ok(out)
    }

    /// Matrix product with group convolution as the entry product.
    pub fn multiply(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolymatError> {
        if self.group != other.group || self.size != other.size {
            return Err(PolymatError::Mismatch);
        }
        let r = self.size;
        let m = self.group.order();
        let mut out = Self::zeros(self.group.clone(), r);
        let mut term = vec![0i64; m];
        for u in 0..r {
            for v in 0..r {
                let acc = &mut out.coeffs;
                for w in 0..r {
                    let a = self.coeffs.slice(ndarray::s![u, w, ..]);
                    let b = other.coeffs.slice(ndarray::s![w, v, ..]);
                    if a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
                        continue;
                    }
                    term.fill(0);
                    self.group.convolve_slices(
                        a.as_slice().expect("contiguous"),
                        b.as_slice().expect("contiguous"),
                        &mut term,
                    )?;
                    for i in 0..m {
                        acc[[u, v, i]] = acc[[u, v, i]]
                            .checked_add(term[i])
                            .ok_or(GroupError::Overflow)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `l`-th power by repeated convolution products; `power(0)` is the
    /// identity.
    pub fn power(&self, l: usize) -> Result<PolyMatrix, PolymatError> {
        let mut out = Self::identity(self.group.clone(), self.size);
        for _ in 0..l {
            out = out.multiply(self)?;
        }
        Ok(out)
    }

    /// Walk counts of length `l` between the fibers of `u` and `v`:
    /// coefficient `i` counts the lift walks from `(u, h)` to `(v, h g_i)`.
    pub fn walk_counts(&self, l: usize, u: usize, v: usize) -> Result<GVector, PolymatError> {
        Ok(self.power(l)?.entry(u, v))
    }

    /// Evaluate every entry at a character point, yielding a complex matrix.
    pub fn evaluate(&self, point: &CharPoint) -> Result<Array2<Complex64>, PolymatError> {
        let chi = self.group.character_values(point)?;
        Ok(self.evaluate_with_chi(&chi))
    }

    fn evaluate_with_chi(&self, chi: &[Complex64]) -> Array2<Complex64> {
        let r = self.size;
        let m = self.group.order();
        let mut out = Array2::zeros((r, r));
        for u in 0..r {
            for v in 0..r {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    let c = self.coeffs[[u, v, i]];
                    if c != 0 {
                        acc += chi[i] * c as f64;
                    }
                }
                out[[u, v]] = acc;
            }
        }
        out
    }

    /// Evaluations at every character point, in point order.
    pub fn evaluate_at_all_points(&self) -> Result<Vec<Array2<Complex64>>, PolymatError> {
        let points = self.group.evaluation_points()?;
        points.iter().map(|p| self.evaluate(p)).collect()
    }

    /// The `l`-th power computed through the transform: evaluate at every
    /// character point, raise each complex matrix to the `l`-th power, and
    /// invert the transform coefficientwise. Fails if the pre-rounding
    /// residual exceeds [`DFT_ROUNDING_TOLERANCE`].
    pub fn power_via_dft(&self, l: usize) -> Result<PolyMatrix, PolymatError> {
        Ok(self.power_via_dft_with_residual(l)?.0)
    }

    /// As [`power_via_dft`](Self::power_via_dft), also reporting the largest
    /// pre-rounding residual.
    pub fn power_via_dft_with_residual(
        &self,
        l: usize,
    ) -> Result<(PolyMatrix, f64), PolymatError> {
        let points = self.group.evaluation_points()?;
        let r = self.size;
        let m = self.group.order();
        let tables: Vec<Vec<Complex64>> = points
            .iter()
            .map(|p| self.group.character_values(p))
            .collect::<Result<_, _>>()?;
        let powered: Vec<Array2<Complex64>> = tables
            .iter()
            .map(|chi| mat_pow(&self.evaluate_with_chi(chi), l))
            .collect();

        // Character orthogonality: c_i = (1/m) sum_j V_j conj(chi_j(g_i)).
        let mut out = Self::zeros(self.group.clone(), r);
        let mut residual = 0.0f64;
        for u in 0..r {
            for v in 0..r {
                for i in 0..m {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, table) in tables.iter().enumerate() {
                        acc += powered[j][[u, v]] * table[i].conj();
                    }
                    acc /= m as f64;
                    let rounded = acc.re.round();
                    residual = residual.max((acc.re - rounded).abs()).max(acc.im.abs());
                    out.coeffs[[u, v, i]] = rounded as i64;
                }
            }
        }
        if residual > DFT_ROUNDING_TOLERANCE {
            return Err(PolymatError::ResidualTooLarge {
                residual,
                tolerance: DFT_ROUNDING_TOLERANCE,
            });
        }
        Ok((out, residual))
    }

    /// Render entry `(u, v)` as plain text, terms in element order.
    ///
    /// Cyclic groups use `z`, products use `z1, ..., zn`, table groups use
    /// the element symbols `g0, g1, ...`. The zero polynomial is `0`.
    pub fn format_entry(&self, u: usize, v: usize) -> String {
        let m = self.group.order();
        let mut terms = Vec::new();
        for i in 0..m {
            let c = self.coeffs[[u, v, i]];
            if c == 0 {
                continue;
            }
            terms.push(format_term(&self.group, c, i));
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn format_term(group: &FiniteGroup, coefficient: i64, element: usize) -> String {
    let monomial = match group.factors() {
        None => {
            if element == 0 {
                String::new()
            } else {
                format!("g{element}")
            }
        }
        Some(factors) => {
            let exps = group.exponents(element).unwrap();
            let var = |t: usize| {
                if factors.len() == 1 {
                    "z".to_string()
                } else {
                    format!("z{}", t + 1)
                }
            };
            let parts: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(t, &e)| {
                    if e == 1 {
                        var(t)
                    } else {
                        format!("{}^{}", var(t), e)
                    }
                })
                .collect();
            parts.join("*")
        }
    };
    if monomial.is_empty() {
        coefficient.to_string()
    } else if coefficient == 1 {
        monomial
    } else if group.factors().is_some_and(|f| f.len() > 1) {
        format!("{coefficient}*{monomial}")
    } else {
        format!("{coefficient}{monomial}")
    }
}

/// Plain repeated complex matrix product; exponents stay small here.
pub(crate) fn mat_pow(m: &Array2<Complex64>, l: usize) -> Array2<Complex64> {
    let n = m.nrows();
    let mut out = Array2::eye(n);
    for _ in 0..l {
        out = out.dot(m);
    }
    out
}
