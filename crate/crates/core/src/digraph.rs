//! Directed multigraphs with loops, and vertex partitions of them.
//!
//! The adjacency matrix is stored densely with integer entries, so walk
//! counting stays exact. Eccentricities follow the matrix-power definition:
//! the eccentricity of `u` is the smallest `l` such that row `u` of
//! `I + A + ... + A^l` has no zero entry, computed in the Boolean semiring so
//! large powers cannot overflow.

use ndarray::Array2;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DigraphError {
    #[error("unknown vertex label '{0}'")]
    UnknownVertex(String),
    #[error("duplicate vertex label '{0}'")]
    DuplicateVertex(String),
    #[error("digraph is not strongly connected, eccentricities are infinite")]
    NotStronglyConnected,
    #[error("partition block {0} is empty")]
    EmptyBlock(usize),
    #[error("vertex {0} appears in more than one block")]
    OverlappingBlocks(usize),
    #[error("vertex {0} is not covered by any block")]
    UncoveredVertex(usize),
    #[error("vertex index {index} out of range for order {order}")]
    VertexOutOfRange { index: usize, order: usize },
}

/// A directed multigraph with loops and parallel arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    labels: Vec<String>,
    adj: Array2<i64>,
}

impl Digraph {
    /// An arcless digraph on the given labelled vertices.
    pub fn new(labels: Vec<String>) -> Result<Self, DigraphError> {
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(DigraphError::DuplicateVertex(label.clone()));
            }
        }
        let n = labels.len();
        Ok(Self {
            labels,
            adj: Array2::zeros((n, n)),
        })
    }

    /// Build from labelled arcs; repeated pairs accumulate multiplicity.
    pub fn build(labels: Vec<String>, arcs: &[(&str, &str)]) -> Result<Self, DigraphError> {
        let mut d = Self::new(labels)?;
        for &(u, v) in arcs {
            let ui = d
                .vertex_index(u)
                .ok_or_else(|| DigraphError::UnknownVertex(u.to_string()))?;
            let vi = d
                .vertex_index(v)
                .ok_or_else(|| DigraphError::UnknownVertex(v.to_string()))?;
            d.add_arc(ui, vi);
        }
        Ok(d)
    }

    /// Convenience constructor from an explicit adjacency matrix.
    pub fn from_adjacency(adj: Array2<i64>) -> Self {
        assert_eq!(adj.nrows(), adj.ncols(), "adjacency matrix must be square");
        let labels = (0..adj.nrows()).map(|i| i.to_string()).collect();
        Self { labels, adj }
    }

    /// Add one arc `u -> v` by index. Panics if an index is out of range.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.adj[[u, v]] += 1;
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn adjacency(&self) -> &Array2<i64> {
        &self.adj
    }

    /// Total number of arcs, counting multiplicities.
    pub fn arc_count(&self) -> i64 {
        self.adj.iter().sum()
    }

    pub fn out_degree(&self, u: usize) -> i64 {
        self.adj.row(u).sum()
    }

    pub fn in_degree(&self, v: usize) -> i64 {
        self.adj.column(v).sum()
    }

    /// True iff every ordered pair of vertices is joined by a directed path.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let forward = self.reachable_from(0, false);
        let backward = self.reachable_from(0, true);
        forward.iter().all(|&r| r) && backward.iter().all(|&r| r)
    }

    fn reachable_from(&self, start: usize, reversed: bool) -> Vec<bool> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let weight = if reversed {
                    self.adj[[v, u]]
                } else {
                    self.adj[[u, v]]
                };
                if weight > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Per-vertex eccentricities: the smallest `l` such that row `u` of
    /// `I + A + ... + A^l` is entirely positive.
    ///
    /// Accumulates Boolean matrix powers of the adjacency, packed into 64-bit
    /// words per row.
    pub fn eccentricities(&self) -> Result<Vec<usize>, DigraphError> {
        let n = self.n();
        let words = n.div_ceil(64);
        let row_full = |row: &[u64]| -> bool {
            let mut count = 0;
            for &w in row {
                count += w.count_ones() as usize;
            }
            count == n
        };

        let adj_bits: Vec<Vec<u64>> = (0..n)
            .map(|u| {
                let mut row = vec![0u64; words];
                for v in 0..n {
                    if self.adj[[u, v]] > 0 {
                        row[v / 64] |= 1 << (v % 64);
                    }
                }
                row
            })
            .collect();

        // reach = I + A + ... + A^l, power = A^l, both over the Boolean semiring.
        let mut reach: Vec<Vec<u64>> = (0..n)
            .map(|u| {
                let mut row = vec![0u64; words];
                row[u / 64] |= 1 << (u % 64);
                row
            })
            .collect();
        let mut power = reach.clone();

        let mut ecc = vec![None; n];
        for (u, e) in ecc.iter_mut().enumerate() {
            if row_full(&reach[u]) {
                *e = Some(0);
            }
        }
        for step in 1..=n {
            if ecc.iter().all(|e| e.is_some()) {
                break;
            }
            // power <- power . A (Boolean product)
            let mut next = vec![vec![0u64; words]; n];
            for u in 0..n {
                for (w, &word) in power[u].iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let v = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        for (nw, &aw) in adj_bits[v].iter().enumerate() {
                            next[u][nw] |= aw;
                        }
                    }
                }
            }
            power = next;
            for u in 0..n {
                if ecc[u].is_none() {
                    for (w, &pw) in power[u].iter().enumerate() {
                        reach[u][w] |= pw;
                    }
                    if row_full(&reach[u]) {
                        ecc[u] = Some(step);
                    }
                }
            }
        }
        ecc.into_iter()
            .map(|e| e.ok_or(DigraphError::NotStronglyConnected))
            .collect()
    }

    pub fn diameter(&self) -> Result<usize, DigraphError> {
        Ok(self.eccentricities()?.into_iter().max().unwrap_or(0))
    }

    /// The quotient matrix `S^T A S` of a partition, where `S` holds the
    /// normalized characteristic vectors of the blocks.
    pub fn quotient_matrix(&self, partition: &VertexPartition) -> Array2<f64> {
        assert_eq!(partition.n(), self.n(), "partition is over a different vertex set");
        let m = partition.blocks().len();
        let mut q = Array2::zeros((m, m));
        for (i, bi) in partition.blocks().iter().enumerate() {
            for (j, bj) in partition.blocks().iter().enumerate() {
                let mut total = 0i64;
                for &u in bi {
                    for &v in bj {
                        total += self.adj[[u, v]];
                    }
                }
                q[[i, j]] = total as f64 / ((bi.len() * bj.len()) as f64).sqrt();
            }
        }
        q
    }

    /// True iff the number of arcs from a vertex of block `i` into block `j`
    /// depends only on `(i, j)`. Equivalent to `S B = A S` but tested in
    /// exact integer arithmetic.
    pub fn is_regular_partition(&self, partition: &VertexPartition) -> bool {
        self.regular_quotient_counts(partition).is_some()
    }

    /// The integer arc-count quotient of a regular partition, or `None` if
    /// the partition is not regular.
    pub fn regular_quotient_counts(&self, partition: &VertexPartition) -> Option<Array2<i64>> {
        assert_eq!(partition.n(), self.n(), "partition is over a different vertex set");
        let m = partition.blocks().len();
        let mut counts = Array2::zeros((m, m));
        for (i, bi) in partition.blocks().iter().enumerate() {
            for (j, bj) in partition.blocks().iter().enumerate() {
                let mut first = None;
                for &u in bi {
                    let c: i64 = bj.iter().map(|&v| self.adj[[u, v]]).sum();
                    match first {
                        None => first = Some(c),
                        Some(f) if f != c => return None,
                        _ => {}
                    }
                }
                counts[[i, j]] = first.unwrap();
            }
        }
        Some(counts)
    }

    /// Coordinate text export: header `n n nnz`, then one `u v multiplicity`
    /// line per nonzero entry in row-major order.
    pub fn to_coordinate_string(&self) -> String {
        let n = self.n();
        let mut lines = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if self.adj[[u, v]] != 0 {
                    lines.push(format!("{} {} {}", u, v, self.adj[[u, v]]));
                }
            }
        }
        let mut out = format!("{} {} {}\n", n, n, lines.len());
        for line in lines {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// A partition of the vertex set into disjoint nonempty blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DigraphError> {
        let mut owner = vec![None; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(DigraphError::EmptyBlock(i));
            }
            for &v in block {
                if v >= n {
                    return Err(DigraphError::VertexOutOfRange { index: v, order: n });
                }
                if owner[v].is_some() {
                    return Err(DigraphError::OverlappingBlocks(v));
                }
                owner[v] = Some(i);
            }
        }
        if let Some(v) = owner.iter().position(|o| o.is_none()) {
            return Err(DigraphError::UncoveredVertex(v));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        Ok(Self { n, blocks })
    }

    /// The partition of every vertex into its own block.
    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The n x m characteristic matrix with normalized indicator columns,
    /// satisfying `S^T S = I`.
    pub fn characteristic_matrix(&self) -> Array2<f64> {
        let mut s = Array2::zeros((self.n, self.blocks.len()));
        for (i, block) in self.blocks.iter().enumerate() {
            let norm = (block.len() as f64).sqrt();
            for &v in block {
                s[[v, i]] = 1.0 / norm;
            }
        }
        s
    }
}
