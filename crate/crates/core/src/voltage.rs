//! Voltage digraphs and their lifts.
//!
//! A voltage digraph is a base digraph whose arc instances each carry one
//! group element. The lift expands every base vertex `u` into the fiber
//! `{(u, g) : g in G}` and places an arc `(u, g) -> (v, g a)` for every base
//! arc `u -> v` with voltage `a`.
//!
//! Lift vertices are ordered copy-major: all of copy `g_0` first, then copy
//! `g_1`, and so on, with `(u, g)` at index `g * r + u`. Under this ordering
//! the lift adjacency is exactly the block circulant with blocks
//! `A_0, ..., A_{m-1}`, where block `(g, h)` is the layer matrix of the
//! voltage `g^{-1} h`.

use ndarray::Array2;
use thiserror::Error;

use crate::digraph::{Digraph, VertexPartition};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum VoltageError {
    #[error("duplicate vertex label '{0}'")]
    DuplicateVertex(String),
    #[error("arc endpoint {index} out of range for base of order {order}")]
    VertexOutOfRange { index: usize, order: usize },
    #[error("voltage index {index} out of range for group of order {order}")]
    VoltageOutOfRange { index: usize, order: usize },
}

/// One base arc instance with its voltage. Parallel arcs are separate
/// instances and may carry distinct voltages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VoltageArc {
    pub tail: usize,
    pub head: usize,
    pub voltage: usize,
}

/// A base digraph together with a voltage assignment into a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageDigraph {
    labels: Vec<String>,
    group: FiniteGroup,
    arcs: Vec<VoltageArc>,
}

impl VoltageDigraph {
    pub fn new(
        labels: Vec<String>,
        group: FiniteGroup,
        arcs: Vec<(usize, usize, usize)>,
    ) -> Result<Self, VoltageError> {
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(VoltageError::DuplicateVertex(label.clone()));
            }
        }
        let r = labels.len();
        let m = group.order();
        let arcs = arcs
            .into_iter()
            .map(|(tail, head, voltage)| {
                for &index in [tail, head].iter() {
                    if index >= r {
                        return Err(VoltageError::VertexOutOfRange { index, order: r });
                    }
                }
                if voltage >= m {
                    return Err(VoltageError::VoltageOutOfRange {
                        index: voltage,
                        order: m,
                    });
                }
                Ok(VoltageArc {
                    tail,
                    head,
                    voltage,
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            labels,
            group,
            arcs,
        })
    }

    /// Number of base vertices.
    pub fn r(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn arcs(&self) -> &[VoltageArc] {
        &self.arcs
    }

    /// The base digraph, forgetting voltages.
    pub fn base(&self) -> Digraph {
        let mut d = Digraph::new(self.labels.clone()).expect("labels already validated");
        for arc in &self.arcs {
            d.add_arc(arc.tail, arc.head);
        }
        d
    }

    /// Same base arcs with the same voltages over the same group, ignoring
    /// vertex labels.
    pub fn same_structure(&self, other: &VoltageDigraph) -> bool {
        if self.group != other.group || self.r() != other.r() {
            return false;
        }
        let mut a = self.arcs.clone();
        let mut b = other.arcs.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// Layer matrices `A_0, ..., A_{m-1}`: `A_i[u][v]` counts the base arcs
    /// `u -> v` with voltage `g_i`. They sum to the base adjacency.
    pub fn layer_matrices(&self) -> Vec<Array2<i64>> {
        let r = self.r();
        let mut layers = vec![Array2::zeros((r, r)); self.group.order()];
        for arc in &self.arcs {
            layers[arc.voltage][[arc.tail, arc.head]] += 1;
        }
        layers
    }

    /// The explicitly constructed lift.
    pub fn lift(&self) -> Lift {
        let r = self.r();
        let m = self.group.order();
        let labels = (0..m)
            .flat_map(|g| {
                let name = self.group.element_name(g);
                self.labels
                    .iter()
                    .map(move |l| format!("{}@{}", l, name))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut digraph = Digraph::new(labels).expect("lift labels are unique");
        let mut provenance = Vec::with_capacity(self.arcs.len() * m);
        for g in 0..m {
            for (base_arc, arc) in self.arcs.iter().enumerate() {
                let h = self.group.mul(g, arc.voltage);
                digraph.add_arc(g * r + arc.tail, h * r + arc.head);
                provenance.push(LiftArc { base_arc, copy: g });
            }
        }
        Lift {
            digraph,
            r,
            group: self.group.clone(),
            provenance,
        }
    }

    /// The lift adjacency assembled as a block circulant from the layer
    /// matrices: block `(g, h)` is the layer of voltage `g^{-1} h`.
    pub fn block_circulant_adjacency(&self) -> Array2<i64> {
        let r = self.r();
        let m = self.group.order();
        let layers = self.layer_matrices();
        let mut adj = Array2::zeros((r * m, r * m));
        for g in 0..m {
            let ginv = self.group.inverse(g);
            for h in 0..m {
                let layer = &layers[self.group.mul(ginv, h)];
                for u in 0..r {
                    for v in 0..r {
                        adj[[g * r + u, h * r + v]] = layer[[u, v]];
                    }
                }
            }
        }
        adj
    }

    /// Quotient matrix of the fiber partition of the lift: the sum of all
    /// layer matrices, which is also the base adjacency.
    pub fn fiber_quotient(&self) -> Array2<i64> {
        let r = self.r();
        let mut q = Array2::zeros((r, r));
        for arc in &self.arcs {
            q[[arc.tail, arc.head]] += 1;
        }
        q
    }
}

/// One lift arc's origin: the base arc instance it covers and the group
/// element of the copy it starts in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftArc {
    pub base_arc: usize,
    pub copy: usize,
}

/// The lift of a voltage digraph, with provenance back to the base.
#[derive(Debug, Clone)]
pub struct Lift {
    digraph: Digraph,
    r: usize,
    group: FiniteGroup,
    provenance: Vec<LiftArc>,
}

impl Lift {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Base-vertex count.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Index of the lift vertex `(u, g)`.
    pub fn vertex_index(&self, u: usize, g: usize) -> usize {
        g * self.r + u
    }

    /// Base vertex and group element of a lift vertex index.
    pub fn vertex_parts(&self, index: usize) -> (usize, usize) {
        (index % self.r, index / self.r)
    }

    pub fn provenance(&self) -> &[LiftArc] {
        &self.provenance
    }

    /// The partition of the lift vertices into fibers `{(u, g) : g in G}`,
    /// one block per base vertex.
    pub fn fiber_partition(&self) -> VertexPartition {
        let m = self.group.order();
        let blocks = (0..self.r)
            .map(|u| (0..m).map(|g| self.vertex_index(u, g)).collect())
            .collect();
        VertexPartition::new(self.r * m, blocks).expect("fibers partition the lift")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn named(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn validation_errors() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let err = VoltageDigraph::new(named(1), z2.clone(), vec![(0, 1, 0)]).unwrap_err();
        assert_eq!(err, VoltageError::VertexOutOfRange { index: 1, order: 1 });
        let err = VoltageDigraph::new(named(1), z2, vec![(0, 0, 2)]).unwrap_err();
        assert_eq!(err, VoltageError::VoltageOutOfRange { index: 2, order: 2 });
    }

    #[test]
    fn trivial_group_lift_equals_base() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let vd =
            VoltageDigraph::new(named(3), g, vec![(0, 1, 0), (1, 2, 0), (2, 0, 0), (0, 1, 0)])
                .unwrap();
        let lift = vd.lift();
        assert_eq!(lift.digraph().adjacency(), vd.base().adjacency());
        assert_eq!(vd.block_circulant_adjacency(), vd.base().adjacency());
    }

    #[test]
    fn all_identity_voltages_layer_structure() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let vd = VoltageDigraph::new(named(2), z3, vec![(0, 1, 0), (1, 0, 0)]).unwrap();
        let layers = vd.layer_matrices();
        assert_eq!(layers[0], vd.base().adjacency().clone());
        assert!(layers[1].iter().all(|&x| x == 0));
        assert!(layers[2].iter().all(|&x| x == 0));
        assert_eq!(vd.fiber_quotient(), vd.base().adjacency().clone());
    }

    #[test]
    fn z2_single_voltage_arc_swaps_blocks() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let vd = VoltageDigraph::new(named(1), z2, vec![(0, 0, 1)]).unwrap();
        let adj = vd.block_circulant_adjacency();
        assert_eq!(adj, array![[0, 1], [1, 0]]);
        assert_eq!(vd.lift().digraph().adjacency(), &adj);
    }

    #[test]
    fn lift_sizes_and_degrees() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let vd = VoltageDigraph::new(
            named(3),
            z4,
            vec![(0, 1, 1), (1, 2, 3), (2, 0, 2), (0, 0, 1), (0, 1, 1)],
        )
        .unwrap();
        let lift = vd.lift();
        assert_eq!(lift.digraph().n(), 12);
        assert_eq!(lift.digraph().arc_count(), 20);
        let base = vd.base();
        for u in 0..3 {
            for g in 0..4 {
                let idx = lift.vertex_index(u, g);
                assert_eq!(lift.digraph().out_degree(idx), base.out_degree(u));
                assert_eq!(lift.digraph().in_degree(idx), base.in_degree(u));
            }
        }
    }

    #[test]
    fn block_circulant_matches_lift_on_nonabelian_group() {
        // S3 via its Cayley table.
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
        let s3 = FiniteGroup::from_cayley_table(&table).unwrap();
        let vd = VoltageDigraph::new(
            named(2),
            s3,
            vec![(0, 1, 1), (1, 0, 2), (0, 0, 3), (1, 1, 5), (0, 1, 4)],
        )
        .unwrap();
        assert_eq!(
            vd.block_circulant_adjacency(),
            vd.lift().digraph().adjacency().clone()
        );
    }

    #[test]
    fn fiber_partition_is_regular_with_quotient_sum_of_layers() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let vd = VoltageDigraph::new(
            named(2),
            z3,
            vec![(0, 1, 0), (0, 1, 2), (1, 0, 1), (1, 1, 2)],
        )
        .unwrap();
        let lift = vd.lift();
        let partition = lift.fiber_partition();
        let counts = lift
            .digraph()
            .regular_quotient_counts(&partition)
            .expect("fiber partition must be regular");
        assert_eq!(counts, vd.fiber_quotient());
    }

    #[test]
    fn provenance_reconstructs_the_lift() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let vd = VoltageDigraph::new(
            named(2),
            z3.clone(),
            vec![(0, 1, 1), (1, 0, 2), (1, 1, 0), (0, 1, 1)],
        )
        .unwrap();
        let lift = vd.lift();
        assert_eq!(lift.provenance().len(), 4 * 3);
        let mut rebuilt: Array2<i64> = Array2::zeros((6, 6));
        for arc in lift.provenance() {
            let base = vd.arcs()[arc.base_arc];
            let head_copy = z3.mul(arc.copy, base.voltage);
            rebuilt[[
                lift.vertex_index(base.tail, arc.copy),
                lift.vertex_index(base.head, head_copy),
            ]] += 1;
        }
        assert_eq!(&rebuilt, lift.digraph().adjacency());
    }

    #[test]
    fn vertex_indexing_round_trip() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        let vd = VoltageDigraph::new(named(4), z5, vec![(0, 1, 2)]).unwrap();
        let lift = vd.lift();
        for u in 0..4 {
            for g in 0..5 {
                assert_eq!(lift.vertex_parts(lift.vertex_index(u, g)), (u, g));
            }
        }
    }
}
