//! Shared fixtures and independent oracles for the integration suites.
//!
//! Everything here is deliberately implemented from first principles (BFS,
//! dense integer matrix powers, permutation/quaternion tables) so the tests
//! check the library against routes it does not itself use.

// Each integration test binary compiles its own copy and uses a subset.
#![allow(dead_code)]

use ndarray::Array2;
use rand::rngs::StdRng;
use rand::Rng;

use voltlift::{Digraph, FiniteGroup, VoltageDigraph};

/// S3 as permutations of {0,1,2} under composition, identity first.
pub fn s3_group() -> FiniteGroup {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let table: Vec<Vec<usize>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let r = compose(&perms[i], &perms[j]);
                    perms.iter().position(|p| *p == r).unwrap()
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley_table(&table).unwrap()
}

/// The quaternion group Q8 = {1, -1, i, -i, j, -j, k, -k}, identity first.
pub fn q8_group() -> FiniteGroup {
    // Element index = 2 * unit + sign, units ordered 1, i, j, k.
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        // Returns (unit, negate) for the product of two of {1, i, j, k}.
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (1, 1) => (0, true),
            (2, 2) => (0, true),
            (3, 3) => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let table: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (ua, sa) = (x / 2, x % 2 == 1);
                    let (ub, sb) = (y / 2, y % 2 == 1);
                    let (unit, negate) = unit_mul(ua, ub);
                    let sign = sa ^ sb ^ negate;
                    unit * 2 + usize::from(sign)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley_table(&table).unwrap()
}

/// Dense integer matrix power, the walk-count oracle.
pub fn mat_pow_int(a: &Array2<i64>, l: usize) -> Array2<i64> {
    let n = a.nrows();
    let mut out = Array2::eye(n);
    for _ in 0..l {
        out = out.dot(a);
    }
    out
}

/// Eccentricities by plain breadth-first search; `None` when some vertex
/// cannot reach the whole digraph.
pub fn bfs_eccentricities(d: &Digraph) -> Option<Vec<usize>> {
    let n = d.n();
    let mut out = Vec::with_capacity(n);
    for start in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if d.adjacency()[[u, v]] > 0 && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let far = *dist.iter().max().unwrap();
        if far == usize::MAX {
            return None;
        }
        out.push(far);
    }
    Some(out)
}

/// A random voltage digraph over `group` with at most `max_r` base vertices.
///
/// The base always contains a directed Hamiltonian cycle, so it is strongly
/// connected, and every vertex gets a loop, which keeps the evaluated
/// matrices away from the heavily rank-deficient nilpotent patterns whose
/// defective zero eigenvalues no floating-point eigensolver can pin down.
/// Extra arcs (loops and parallels allowed) are sprinkled on top with
/// per-(tail, head, voltage) multiplicity at most 2.
pub fn random_voltage_digraph(
    rng: &mut StdRng,
    group: FiniteGroup,
    max_r: usize,
) -> VoltageDigraph {
    let r = rng.random_range(1..=max_r);
    let m = group.order();
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    for u in 0..r {
        arcs.push((u, (u + 1) % r, rng.random_range(0..m)));
        arcs.push((u, u, rng.random_range(0..m)));
    }
    let extras = rng.random_range(r..=3 * r);
    for _ in 0..extras {
        let arc = (
            rng.random_range(0..r),
            rng.random_range(0..r),
            rng.random_range(0..m),
        );
        let count = arcs.iter().filter(|&&a| a == arc).count();
        if count < 2 {
            arcs.push(arc);
        }
    }
    VoltageDigraph::new(
        (0..r).map(|i| i.to_string()).collect(),
        group,
        arcs,
    )
    .unwrap()
}

/// A random Abelian-kind group of order at most 20.
pub fn random_abelian_group(rng: &mut StdRng) -> FiniteGroup {
    match rng.random_range(0..4) {
        0 => FiniteGroup::cyclic(rng.random_range(1..=20)).unwrap(),
        1 => FiniteGroup::product(&[
            rng.random_range(2..=4),
            rng.random_range(2..=5),
        ])
        .unwrap(),
        2 => FiniteGroup::product(&[2, rng.random_range(2..=3), 2]).unwrap(),
        _ => FiniteGroup::cyclic(rng.random_range(2..=12)).unwrap(),
    }
}
