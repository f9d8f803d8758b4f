//! Built-in voltage digraphs and example fixtures.
//!
//! Undirected edges are modelled as arc pairs carrying mutually inverse
//! voltages, so the lifts of the graph constructions come out symmetric.

use ndarray::{array, Array2};

use crate::digraph::{Digraph, VertexPartition};
use crate::group::FiniteGroup;
use crate::voltage::VoltageDigraph;

/// The Alegre digraph's base: 5 vertices over `Z_5`, lifting to the largest
/// known 2-regular digraph of diameter 4 (25 vertices).
pub fn alegre() -> VoltageDigraph {
    let group = FiniteGroup::cyclic(5).unwrap();
    let labels = (0..5).map(|i| i.to_string()).collect();
    let arcs = vec![
        // voltage 0
        (0, 1, 0),
        (0, 2, 0),
        (3, 0, 0),
        (3, 4, 0),
        // voltage 1
        (2, 3, 1),
        (4, 0, 1),
        (4, 4, 1),
        // voltage 4
        (1, 1, 4),
        (1, 2, 4),
        (2, 3, 4),
    ];
    VoltageDigraph::new(labels, group, arcs).unwrap()
}

/// The Hoffman-Singleton graph as a lift: 2 base vertices over `Z_5 x Z_5`,
/// lifting to the 7-regular Moore graph on 50 vertices with diameter 2.
///
/// The first group coordinate is `w`, the second `z`. Every edge is a pair
/// of arcs with inverse voltages, so loops come in inverse pairs too.
pub fn hoffman_singleton() -> VoltageDigraph {
    let group = FiniteGroup::product(&[5, 5]).unwrap();
    let labels = vec!["u".to_string(), "v".to_string()];
    let e = |w: i64, z: i64| group.element_from_exponents(&[w, z]).unwrap();
    // Loops at u: w and w^4; loops at v: w^2 and w^3.
    let mut arcs = vec![
        (0, 0, e(1, 0)),
        (0, 0, e(4, 0)),
        (1, 1, e(2, 0)),
        (1, 1, e(3, 0)),
    ];
    // Edges between the fibers of u and v. The five voltages follow the
    // parabola (i^2, i), a perfect difference family: each group element
    // with nonzero second coordinate occurs exactly once as a difference of
    // two of them, which is what forces girth 5 in the lift.
    for (w, z) in [(0, 0), (1, 1), (4, 2), (4, 3), (1, 4)] {
        arcs.push((0, 1, e(w, z)));
        arcs.push((1, 0, e(-w, -z)));
    }
    VoltageDigraph::new(labels, group, arcs).unwrap()
}

/// The two-vertex family over `Z_n`: loop polynomials `p1` at `u` and `p2`
/// at `v` (coefficient `c` at exponent `e` contributes `c` parallel loops
/// with voltage `e`), plus one digon between `u` and `v` with voltage 0.
///
/// Coefficients must be nonnegative and the vectors no longer than `n`.
pub fn p_family(n: usize, p1: &[i64], p2: &[i64]) -> Result<VoltageDigraph, String> {
    if n == 0 {
        return Err("family order must be at least 1".to_string());
    }
    if p1.len() > n || p2.len() > n {
        return Err(format!("coefficient vectors must have length <= {n}"));
    }
    if p1.iter().chain(p2.iter()).any(|&c| c < 0) {
        return Err("loop multiplicities must be nonnegative".to_string());
    }
    let group = FiniteGroup::cyclic(n).unwrap();
    let labels = vec!["u".to_string(), "v".to_string()];
    let mut arcs = Vec::new();
    for (vertex, poly) in [(0usize, p1), (1usize, p2)] {
        for (exponent, &count) in poly.iter().enumerate() {
            for _ in 0..count {
                arcs.push((vertex, vertex, exponent));
            }
        }
    }
    arcs.push((0, 1, 0));
    arcs.push((1, 0, 0));
    Ok(VoltageDigraph::new(labels, group, arcs).unwrap())
}

/// The generalized Petersen graph `P(n, k)` as the two-vertex family with
/// `p1 = z + z^{n-1}` and `p2 = z^k + z^{n-k}`.
pub fn generalized_petersen(n: usize, k: usize) -> Result<VoltageDigraph, String> {
    if n < 3 {
        return Err("generalized Petersen graphs need n >= 3".to_string());
    }
    if k == 0 || k.is_multiple_of(n) {
        return Err("offset k must be nonzero mod n".to_string());
    }
    let k = k % n;
    let mut p1 = vec![0i64; n];
    p1[1] += 1;
    p1[n - 1] += 1;
    let mut p2 = vec![0i64; n];
    p2[k] += 1;
    p2[n - k] += 1;
    p_family(n, &p1, &p2)
}

/// The Cayley digraph `Cay(G, gens)` as the lift of a one-vertex base with
/// one loop per generator.
pub fn cayley(group: FiniteGroup, generators: &[usize]) -> Result<VoltageDigraph, String> {
    let order = group.order();
    for &g in generators {
        if g >= order {
            return Err(format!("generator index {g} out of range 0..{order}"));
        }
    }
    let arcs = generators.iter().map(|&g| (0, 0, g)).collect();
    Ok(VoltageDigraph::new(vec!["v".to_string()], group, arcs).unwrap())
}

/// The six-vertex digraph used to illustrate regular partitions, together
/// with its partition into the pairs `{i, i+3}`.
pub fn six_vertex_example() -> (Digraph, VertexPartition) {
    let adjacency: Array2<i64> = array![
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 0],
        [0, 0, 1, 0, 0, 1],
        [1, 1, 0, 0, 0, 0],
    ];
    let digraph = Digraph::from_adjacency(adjacency);
    let partition = VertexPartition::new(6, vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
    (digraph, partition)
}
