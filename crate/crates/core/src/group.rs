//! Finite groups with a fixed element ordering.
//!
//! A [`FiniteGroup`] addresses its elements by index `0..order()`, and index 0
//! is always the identity. Cyclic groups and direct products of cyclic groups
//! compute their arithmetic straight from the index encoding; arbitrary groups
//! are accepted as explicit Cayley tables and validated at construction.
//!
//! [`GVector`] is an integer coefficient vector indexed by the group elements.
//! Its product is the group convolution
//! `(a * b)_i = sum over g_j g_k = g_i of a_j b_k`,
//! which is the scalar multiplication that makes polynomial-matrix powers
//! count walks in a lift for any voltage group.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

/// Errors from group construction, arithmetic, and element parsing.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GroupError {
    #[error("group order must be at least 1")]
    ZeroOrder,
    #[error("product group needs at least one factor")]
    NoFactors,
    #[error("group order overflows")]
    OrderOverflow,
    #[error("cayley table row {row} has {found} entries, expected {expected}")]
    MalformedTable {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("cayley table entry {value} at ({row},{col}) is outside 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("element 0 is not an identity")]
    IdentityNotFirst,
    #[error("not a Latin square: {axis} {index} repeats an entry")]
    NotLatinSquare { axis: &'static str, index: usize },
    #[error("not associative at triple ({i},{j},{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("coefficient vector has length {found}, group order is {order}")]
    LengthMismatch { found: usize, order: usize },
    #[error("coefficient overflow in group convolution")]
    Overflow,
    #[error("spectrum evaluation requires Abelian voltages")]
    NonAbelianEvaluation,
    #[error("invalid element '{text}': {reason}")]
    InvalidElement { text: String, reason: String },
}

/// How a group's multiplication is represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    /// `Z_k` under addition mod `k`, elements ordered `0, 1, ..., k-1`.
    Cyclic(usize),
    /// `Z_{k1} x ... x Z_{kn}` with componentwise addition; elements ordered
    /// lexicographically by exponent tuple, last factor varying fastest.
    Product(Vec<usize>),
    /// Explicit Cayley table over element indices.
    Table,
}

#[derive(Debug)]
struct GroupData {
    kind: GroupKind,
    order: usize,
    /// Cyclic factor sizes for `Cyclic`/`Product` kinds, `None` for tables.
    factors: Option<Vec<usize>>,
    /// Row-major multiplication table, materialized only for `Table` groups.
    table: Option<Vec<usize>>,
    inverse: Vec<usize>,
    abelian: bool,
}

/// A finite group with a fixed element ordering. Cheap to clone and share.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.data, &other.data) {
            return true;
        }
        self.data.kind == other.data.kind && self.data.table == other.data.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// The cyclic group `Z_k`.
    pub fn cyclic(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let inverse = (0..k).map(|i| (k - i) % k).collect();
        Ok(Self {
            data: Arc::new(GroupData {
                kind: GroupKind::Cyclic(k),
                order: k,
                factors: Some(vec![k]),
                table: None,
                inverse,
                abelian: true,
            }),
        })
    }

    /// The direct product `Z_{k1} x ... x Z_{kn}`.
    pub fn product(factors: &[usize]) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::NoFactors);
        }
        if factors.contains(&0) {
            return Err(GroupError::ZeroOrder);
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &k| acc.checked_mul(k))
            .ok_or(GroupError::OrderOverflow)?;
        let kind = GroupKind::Product(factors.to_vec());
        let mut inverse = vec![0usize; order];
        for (i, inv) in inverse.iter_mut().enumerate() {
            let mut out = 0;
            let mut base = 1;
            let mut rest = i;
            for &k in factors.iter().rev() {
                out += ((k - rest % k) % k) * base;
                base *= k;
                rest /= k;
            }
            *inv = out;
        }
        Ok(Self {
            data: Arc::new(GroupData {
                kind,
                order,
                factors: Some(factors.to_vec()),
                table: None,
                inverse,
                abelian: true,
            }),
        })
    }

    /// A group given by an explicit Cayley table `table[i][j] = index of g_i g_j`.
    ///
    /// Element 0 must be the identity. The table is validated exhaustively:
    /// Latin-square property and associativity of every triple.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let m = table.len();
        if m == 0 {
            return Err(GroupError::ZeroOrder);
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != m {
                return Err(GroupError::MalformedTable {
                    row,
                    found: entries.len(),
                    expected: m,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= m {
                    return Err(GroupError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order: m,
                    });
                }
            }
        }
        for i in 0..m {
            if table[0][i] != i || table[i][0] != i {
                return Err(GroupError::IdentityNotFirst);
            }
        }
        for i in 0..m {
            let mut seen_row = vec![false; m];
            let mut seen_col = vec![false; m];
            for j in 0..m {
                if seen_row[table[i][j]] {
                    return Err(GroupError::NotLatinSquare {
                        axis: "row",
                        index: i,
                    });
                }
                seen_row[table[i][j]] = true;
                if seen_col[table[j][i]] {
                    return Err(GroupError::NotLatinSquare {
                        axis: "column",
                        index: i,
                    });
                }
                seen_col[table[j][i]] = true;
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(GroupError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let mut inverse = vec![0usize; m];
        for i in 0..m {
            inverse[i] = (0..m).find(|&j| flat[i * m + j] == 0).unwrap();
        }
        let abelian = (0..m).all(|i| (0..m).all(|j| flat[i * m + j] == flat[j * m + i]));
        Ok(Self {
            data: Arc::new(GroupData {
                kind: GroupKind::Table,
                order: m,
                factors: None,
                table: Some(flat),
                inverse,
                abelian,
            }),
        })
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn kind(&self) -> &GroupKind {
        &self.data.kind
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn is_abelian(&self) -> bool {
        self.data.abelian
    }

    /// Cyclic factor sizes for `Cyclic` and `Product` kinds.
    pub fn factors(&self) -> Option<&[usize]> {
        self.data.factors.as_deref()
    }

    /// Product of the elements with indices `a` and `b`, in that order.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.data.order && b < self.data.order);
        match &self.data.kind {
            GroupKind::Cyclic(k) => (a + b) % k,
            GroupKind::Product(ks) => {
                let mut out = 0;
                let mut base = 1;
                let (mut a, mut b) = (a, b);
                for &k in ks.iter().rev() {
                    out += ((a % k + b % k) % k) * base;
                    base *= k;
                    a /= k;
                    b /= k;
                }
                out
            }
            GroupKind::Table => self.data.table.as_ref().unwrap()[a * self.data.order + b],
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.data.inverse[a]
    }

    /// Exponent tuple of element `i` for Abelian kinds, most significant
    /// factor first.
    pub fn exponents(&self, i: usize) -> Option<Vec<usize>> {
        let factors = self.factors()?;
        let mut exps = vec![0usize; factors.len()];
        let mut rest = i;
        for (slot, &k) in exps.iter_mut().zip(factors.iter()).rev() {
            *slot = rest % k;
            rest /= k;
        }
        Some(exps)
    }

    /// Index of the element with the given exponent tuple (entries are
    /// reduced modulo the factor sizes).
    pub fn element_from_exponents(&self, exps: &[i64]) -> Option<usize> {
        let factors = self.factors()?;
        if exps.len() != factors.len() {
            return None;
        }
        let mut out = 0;
        let mut base = 1;
        for (&e, &k) in exps.iter().zip(factors.iter()).rev() {
            out += (e.rem_euclid(k as i64) as usize) * base;
            base *= k;
        }
        Some(out)
    }

    /// Canonical text encoding of an element: an integer for cyclic groups,
    /// a comma tuple for products, the element index for table groups.
    pub fn element_name(&self, i: usize) -> String {
        match &self.data.kind {
            GroupKind::Cyclic(_) | GroupKind::Table => i.to_string(),
            GroupKind::Product(_) => {
                let exps = self.exponents(i).unwrap();
                exps.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        }
    }

    /// Parse the canonical element encoding. Cyclic and product components
    /// accept any integer and reduce it modulo the factor size.
    pub fn parse_element(&self, text: &str) -> Result<usize, GroupError> {
        let invalid = |reason: &str| GroupError::InvalidElement {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        match &self.data.kind {
            GroupKind::Cyclic(k) => {
                let v: i64 = text.parse().map_err(|_| invalid("expected an integer"))?;
                Ok(v.rem_euclid(*k as i64) as usize)
            }
            GroupKind::Product(ks) => {
                let parts: Vec<&str> = text.split(',').collect();
                if parts.len() != ks.len() {
                    return Err(invalid(&format!(
                        "expected {} comma-separated components",
                        ks.len()
                    )));
                }
                let mut exps = Vec::with_capacity(ks.len());
                for part in parts {
                    let v: i64 = part
                        .trim()
                        .parse()
                        .map_err(|_| invalid("expected an integer component"))?;
                    exps.push(v);
                }
                Ok(self.element_from_exponents(&exps).unwrap())
            }
            GroupKind::Table => {
                let v: usize = text
                    .parse()
                    .map_err(|_| invalid("expected an element index"))?;
                if v >= self.data.order {
                    return Err(invalid(&format!(
                        "index out of range 0..{}",
                        self.data.order
                    )));
                }
                Ok(v)
            }
        }
    }

    /// All character points of an Abelian-kind group in lexicographic order
    /// of the frequency tuple. Point `j = (j_1, ..., j_n)` has components
    /// `exp(2 pi i j_t / k_t)`.
    pub fn evaluation_points(&self) -> Result<Vec<CharPoint>, GroupError> {
        let factors = self
            .factors()
            .ok_or(GroupError::NonAbelianEvaluation)?
            .to_vec();
        let mut points = Vec::with_capacity(self.data.order);
        for idx in 0..self.data.order {
            let exps = self.exponents(idx).unwrap();
            let components = exps
                .iter()
                .zip(factors.iter())
                .map(|(&j, &k)| Complex64::from_polar(1.0, TAU * j as f64 / k as f64))
                .collect();
            points.push(CharPoint {
                frequencies: exps,
                components,
            });
        }
        Ok(points)
    }

    /// Value of the character determined by `point` at every group element,
    /// in element order: `chi(g) = prod_t point_t ^ e_t(g)`.
    pub fn character_values(&self, point: &CharPoint) -> Result<Vec<Complex64>, GroupError> {
        let factors = self.factors().ok_or(GroupError::NonAbelianEvaluation)?;
        assert_eq!(point.components.len(), factors.len());
        // Power tables per factor so each element is a few multiplies.
        let pows: Vec<Vec<Complex64>> = factors
            .iter()
            .zip(point.components.iter())
            .map(|(&k, &c)| {
                let mut p = Vec::with_capacity(k);
                p.push(Complex64::new(1.0, 0.0));
                for e in 1..k {
                    let prev = p[e - 1];
                    p.push(prev * c);
                }
                p
            })
            .collect();
        let mut values = Vec::with_capacity(self.data.order);
        for idx in 0..self.data.order {
            let mut chi = Complex64::new(1.0, 0.0);
            let mut rest = idx;
            for (t, &k) in factors.iter().enumerate().rev() {
                chi *= pows[t][rest % k];
                rest /= k;
            }
            values.push(chi);
        }
        Ok(values)
    }

    /// Group convolution of raw coefficient slices into `out` (which must be
    /// zeroed by the caller).
    pub(crate) fn convolve_slices(
        &self,
        a: &[i64],
        b: &[i64],
        out: &mut [i64],
    ) -> Result<(), GroupError> {
        let m = self.data.order;
        debug_assert!(a.len() == m && b.len() == m && out.len() == m);
        for j in 0..m {
            let aj = a[j];
            if aj == 0 {
                continue;
            }
            for k in 0..m {
                let bk = b[k];
                if bk == 0 {
                    continue;
                }
                let idx = self.mul(j, k);
                let term = aj.checked_mul(bk).ok_or(GroupError::Overflow)?;
                out[idx] = out[idx].checked_add(term).ok_or(GroupError::Overflow)?;
            }
        }
        Ok(())
    }
}

/// One point at which multivariate polynomial entries are evaluated: a tuple
/// of roots of unity, one per cyclic factor.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoint {
    frequencies: Vec<usize>,
    components: Vec<Complex64>,
}

impl CharPoint {
    /// The frequency tuple `(j_1, ..., j_n)`.
    pub fn frequencies(&self) -> &[usize] {
        &self.frequencies
    }

    /// The root-of-unity components `(w_1^{j_1}, ..., w_n^{j_n})`.
    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    /// True when every component is 1, i.e. the trivial character.
    pub fn is_trivial(&self) -> bool {
        self.frequencies.iter().all(|&j| j == 0)
    }
}

/// An integer coefficient vector indexed by the elements of a group.
#[derive(Debug, Clone, PartialEq)]
pub struct GVector {
    group: FiniteGroup,
    coeffs: Vec<i64>,
}

impl GVector {
    pub fn new(group: FiniteGroup, coeffs: Vec<i64>) -> Result<Self, GroupError> {
        if coeffs.len() != group.order() {
            return Err(GroupError::LengthMismatch {
                found: coeffs.len(),
                order: group.order(),
            });
        }
        Ok(Self { group, coeffs })
    }

    pub fn zeros(group: FiniteGroup) -> Self {
        let coeffs = vec![0; group.order()];
        Self { group, coeffs }
    }

    /// The indicator vector of a single element.
    pub fn indicator(group: FiniteGroup, element: usize) -> Self {
        let mut v = Self::zeros(group);
        v.coeffs[element] = 1;
        v
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn total(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Group convolution `(a * b)_i = sum over g_j g_k = g_i of a_j b_k`.
    pub fn g_convolve(&self, other: &GVector) -> Result<GVector, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        let mut out = GVector::zeros(self.group.clone());
        self.group
            .convolve_slices(&self.coeffs, &other.coeffs, &mut out.coeffs)?;
        Ok(out)
    }
}
