//! Wedge enumeration and the combined wedge graph / wedge hypergraph.
//!
//! A wedge `(v, {u, w})` is an open triple in one layer: both legs
//! `{u, v}`, `{v, w}` exist and `{u, w}` does not. The combined wedge graph
//! has one node per aggregated edge and one adjacency per pair of legs; the
//! wedge hypergraph adds the closing pair as a third node of every wedge.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use indexmap::IndexMap;
use rayon::prelude::*;

use crate::cover::CoverInstance;
use crate::error::Result;
use crate::mlgraph::{Edge, MultilayerGraph, NodeId};

/// Open triple centered at `center` whose closing pair `ends` is missing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wedge {
    pub center: NodeId,
    pub ends: Edge,
}

impl Wedge {
    /// The two legs, ordered as `({center, ends.u}, {center, ends.v})`.
    pub fn legs(&self) -> (Edge, Edge) {
        (
            Edge::new(self.center, self.ends.u()).expect("wedge leg"),
            Edge::new(self.center, self.ends.v()).expect("wedge leg"),
        )
    }
}

/// The layer and center that produced a (hyper)edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub layer: usize,
    pub center: NodeId,
}

/// All wedges of layer `i`, ordered by center id and then by ends.
pub fn enumerate_wedges(g: &MultilayerGraph, i: usize) -> Result<Vec<Wedge>> {
    g.layer(i)?;
    Ok(wedges_unchecked(g, i))
}

fn wedges_unchecked(g: &MultilayerGraph, i: usize) -> Vec<Wedge> {
    let mut out = Vec::new();
    for c in 0..g.node_count() {
        let center = NodeId(c as u32);
        let nbrs = g.neighbors(i, center);
        for (a, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[a + 1..] {
                let ends = Edge::new(x, y).expect("distinct neighbors");
                if !g.has_edge(i, ends) {
                    out.push(Wedge { center, ends });
                }
            }
        }
    }
    out
}

/// Wedges of every layer, enumerated in parallel and returned in layer order.
pub fn wedges_by_layer(g: &MultilayerGraph) -> Vec<Vec<Wedge>> {
    (0..g.layer_count())
        .into_par_iter()
        .map(|i| wedges_unchecked(g, i))
        .collect()
}

/// Node-weighted graph whose nodes are aggregated edges and whose edges are
/// wedges of any layer.
#[derive(Clone, Debug)]
pub struct WedgeGraph {
    nodes: Vec<Edge>,
    weights: Vec<u64>,
    index: BTreeMap<Edge, usize>,
    // (a, b) with a < b in first-seen (layer, center, ends) order
    adjacency: IndexMap<(usize, usize), Vec<Witness>>,
}

impl WedgeGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Aggregated edges in canonical order; position is the node index.
    pub fn nodes(&self) -> &[Edge] {
        &self.nodes
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn node_of(&self, e: Edge) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn weight_of(&self, e: Edge) -> Option<u64> {
        self.node_of(e).map(|i| self.weights[i])
    }

    pub fn contains_adjacency(&self, e: Edge, f: Edge) -> bool {
        match (self.node_of(e), self.node_of(f)) {
            (Some(a), Some(b)) => self.adjacency.contains_key(&(a.min(b), a.max(b))),
            _ => false,
        }
    }

    /// Adjacencies with their (layer, center) witnesses, in solver order.
    pub fn adjacencies(&self) -> impl Iterator<Item = ((usize, usize), &[Witness])> {
        self.adjacency.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn to_cover_instance(&self) -> CoverInstance<u64> {
        let mut flat = Vec::with_capacity(self.adjacency.len() * 2);
        for &(a, b) in self.adjacency.keys() {
            flat.push(a);
            flat.push(b);
        }
        CoverInstance::from_flat(self.weights.clone(), 2, flat).expect("wedge graph is a valid instance")
    }

    /// Text dump: `edge u v weight w` per node, then `wedge <e> <f>` per
    /// adjacency, using original node labels.
    pub fn dump(&self, g: &MultilayerGraph) -> String {
        let mut out = String::new();
        for (e, w) in self.nodes.iter().zip(&self.weights) {
            let _ = writeln!(out, "edge {} {} weight {w}", g.node_label(e.u()), g.node_label(e.v()));
        }
        for &(a, b) in self.adjacency.keys() {
            let _ = writeln!(
                out,
                "wedge {} {}",
                edge_text(g, self.nodes[a]),
                edge_text(g, self.nodes[b])
            );
        }
        out
    }
}

fn edge_text(g: &MultilayerGraph, e: Edge) -> String {
    format!("{}-{}", g.node_label(e.u()), g.node_label(e.v()))
}

/// Combines the per-layer wedge graphs. Node weight is the number of layers
/// containing the edge; parallel wedge edges from several layers collapse
/// into one adjacency carrying all witnesses.
pub fn build_wedge_graph(g: &MultilayerGraph) -> WedgeGraph {
    let nodes: Vec<Edge> = g.aggregated_edges().collect();
    let index: BTreeMap<Edge, usize> = nodes.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let weights = nodes.iter().map(|&e| g.layer_count_of(e) as u64).collect();
    let mut adjacency: IndexMap<(usize, usize), Vec<Witness>> = IndexMap::new();
    for (layer, wedges) in wedges_by_layer(g).into_iter().enumerate() {
        for w in wedges {
            let (l1, l2) = w.legs();
            let (a, b) = (index[&l1], index[&l2]);
            adjacency.entry((a.min(b), a.max(b))).or_default().push(Witness {
                layer,
                center: w.center,
            });
        }
    }
    WedgeGraph {
        nodes,
        weights,
        index,
        adjacency,
    }
}

/// Role of a hypergraph node in each layer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodeRoles {
    /// Layers where the pair is an existing edge.
    pub existing: Vec<usize>,
    /// Layers where the pair is absent but closes at least one wedge.
    pub candidate: Vec<usize>,
}

impl NodeRoles {
    pub fn weight(&self) -> u64 {
        (self.existing.len() + self.candidate.len()) as u64
    }
}

/// Node-weighted 3-uniform hypergraph: one hyperedge `{leg, leg, closing}`
/// per wedge of any layer.
#[derive(Clone, Debug)]
pub struct WedgeHypergraph {
    nodes: Vec<Edge>,
    roles: Vec<NodeRoles>,
    index: BTreeMap<Edge, usize>,
    // sorted triple -> witnesses, in first-seen (layer, center, ends) order
    hyperedges: IndexMap<[usize; 3], Vec<Witness>>,
}

impl WedgeHypergraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.hyperedges.len()
    }

    /// Total number of (layer, wedge) witnesses, before deduplication.
    pub fn witness_count(&self) -> usize {
        self.hyperedges.values().map(Vec::len).sum()
    }

    pub fn nodes(&self) -> &[Edge] {
        &self.nodes
    }

    pub fn roles(&self) -> &[NodeRoles] {
        &self.roles
    }

    pub fn node_of(&self, e: Edge) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn roles_of(&self, e: Edge) -> Option<&NodeRoles> {
        self.node_of(e).map(|i| &self.roles[i])
    }

    pub fn weight_of(&self, e: Edge) -> Option<u64> {
        self.roles_of(e).map(NodeRoles::weight)
    }

    pub fn hyperedges(&self) -> impl Iterator<Item = ([usize; 3], &[Witness])> {
        self.hyperedges.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn to_cover_instance(&self) -> CoverInstance<u64> {
        let weights = self.roles.iter().map(NodeRoles::weight).collect();
        let flat = self.hyperedges.keys().flat_map(|t| t.iter().copied()).collect();
        CoverInstance::from_flat(weights, 3, flat).expect("wedge hypergraph is a valid instance")
    }

    pub fn dump(&self, g: &MultilayerGraph) -> String {
        let mut out = String::new();
        for (e, r) in self.nodes.iter().zip(&self.roles) {
            let _ = writeln!(
                out,
                "edge {} {} weight {}",
                g.node_label(e.u()),
                g.node_label(e.v()),
                r.weight()
            );
        }
        for t in self.hyperedges.keys() {
            let _ = writeln!(
                out,
                "wedge {} {} {}",
                edge_text(g, self.nodes[t[0]]),
                edge_text(g, self.nodes[t[1]]),
                edge_text(g, self.nodes[t[2]])
            );
        }
        out
    }
}

/// Builds the combined wedge hypergraph. A pair's weight counts one unit per
/// layer containing it plus one per layer where it is absent and closes a
/// wedge of that layer's edges.
pub fn build_wedge_hypergraph(g: &MultilayerGraph) -> WedgeHypergraph {
    let per_layer = wedges_by_layer(g);
    let mut roles: BTreeMap<Edge, NodeRoles> = BTreeMap::new();
    for e in g.aggregated_edges() {
        roles.entry(e).or_default().existing = g.layers_of(e).to_vec();
    }
    for (layer, wedges) in per_layer.iter().enumerate() {
        for w in wedges {
            let r = roles.entry(w.ends).or_default();
            if r.candidate.last() != Some(&layer) {
                r.candidate.push(layer);
            }
        }
    }
    for r in roles.values_mut() {
        r.candidate.sort_unstable();
    }
    let nodes: Vec<Edge> = roles.keys().copied().collect();
    let index: BTreeMap<Edge, usize> = nodes.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let roles: Vec<NodeRoles> = roles.into_values().collect();

    let mut hyperedges: IndexMap<[usize; 3], Vec<Witness>> = IndexMap::new();
    for (layer, wedges) in per_layer.into_iter().enumerate() {
        for w in wedges {
            let (l1, l2) = w.legs();
            let mut t = [index[&l1], index[&l2], index[&w.ends]];
            t.sort_unstable();
            hyperedges.entry(t).or_default().push(Witness {
                layer,
                center: w.center,
            });
        }
    }
    WedgeHypergraph {
        nodes,
        roles,
        index,
        hyperedges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> MultilayerGraph {
        MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)]])
    }

    fn k4_minus_cd() -> MultilayerGraph {
        MultilayerGraph::from_edge_lists(4, &[vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]])
    }

    #[test]
    fn wedges_of_small_layers() {
        assert_eq!(
            enumerate_wedges(&path(), 0).unwrap(),
            vec![Wedge {
                center: NodeId(1),
                ends: Edge::of(0, 2)
            }]
        );
        let tri = MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2), (0, 2)]]);
        assert!(enumerate_wedges(&tri, 0).unwrap().is_empty());
        assert_eq!(
            enumerate_wedges(&k4_minus_cd(), 0).unwrap(),
            vec![
                Wedge {
                    center: NodeId(0),
                    ends: Edge::of(2, 3)
                },
                Wedge {
                    center: NodeId(1),
                    ends: Edge::of(2, 3)
                },
            ]
        );
        assert!(enumerate_wedges(&tri, 3).is_err());
    }

    #[test]
    fn wedge_graph_two_layers() {
        // L1: {a,b},{b,c}; L2: {a,b}
        let g = MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)], vec![(0, 1)]]);
        let w = build_wedge_graph(&g);
        assert_eq!(w.nodes(), &[Edge::of(0, 1), Edge::of(1, 2)]);
        assert_eq!(w.weights(), &[2, 1]);
        assert_eq!(w.edge_count(), 1);
        assert!(w.contains_adjacency(Edge::of(0, 1), Edge::of(1, 2)));
    }

    #[test]
    fn wedge_graph_triangle_and_identical_paths() {
        let tri = MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2), (0, 2)]]);
        let w = build_wedge_graph(&tri);
        assert_eq!((w.node_count(), w.edge_count()), (3, 0));

        let g = MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)], vec![(0, 1), (1, 2)]]);
        let w = build_wedge_graph(&g);
        assert_eq!(w.weights(), &[2, 2]);
        assert_eq!(w.edge_count(), 1);
        let (_, witnesses) = w.adjacencies().next().unwrap();
        assert_eq!(
            witnesses,
            &[
                Witness {
                    layer: 0,
                    center: NodeId(1)
                },
                Witness {
                    layer: 1,
                    center: NodeId(1)
                }
            ]
        );
    }

    #[test]
    fn hypergraph_single_path() {
        let h = build_wedge_hypergraph(&path());
        assert_eq!(h.weight_of(Edge::of(0, 1)), Some(1));
        assert_eq!(h.weight_of(Edge::of(1, 2)), Some(1));
        assert_eq!(h.weight_of(Edge::of(0, 2)), Some(1));
        assert_eq!(h.roles_of(Edge::of(0, 2)).unwrap().candidate, vec![0]);
        assert_eq!(h.edge_count(), 1);
        let (t, _) = h.hyperedges().next().unwrap();
        let mut members: Vec<Edge> = t.iter().map(|&i| h.nodes()[i]).collect();
        members.sort();
        assert_eq!(members, vec![Edge::of(0, 1), Edge::of(0, 2), Edge::of(1, 2)]);
    }

    #[test]
    fn hypergraph_identical_paths_sum_weights() {
        let g = MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)], vec![(0, 1), (1, 2)]]);
        let h = build_wedge_hypergraph(&g);
        for e in [Edge::of(0, 1), Edge::of(1, 2), Edge::of(0, 2)] {
            assert_eq!(h.weight_of(e), Some(2));
        }
        assert_eq!(h.roles_of(Edge::of(0, 2)).unwrap().candidate, vec![0, 1]);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.witness_count(), 2);
    }

    #[test]
    fn hypergraph_existing_plus_candidate_weight() {
        // L1: path a-b-c; L2: edge {a,c} only
        let g = MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)], vec![(0, 2)]]);
        let h = build_wedge_hypergraph(&g);
        let r = h.roles_of(Edge::of(0, 2)).unwrap();
        assert_eq!(r.existing, vec![1]);
        assert_eq!(r.candidate, vec![0]);
        assert_eq!(r.weight(), 2);
    }

    #[test]
    fn dumps_list_nodes_then_edges() {
        let g = crate::mlgraph::parse_multilayer_edgelist("1 a b\n1 b c\n").unwrap();
        let d = build_wedge_graph(&g).dump(&g);
        assert_eq!(d, "edge a b weight 1\nedge b c weight 1\nwedge a-b b-c\n");
        let d = build_wedge_hypergraph(&g).dump(&g);
        assert!(d.contains("edge a c weight 1\n"));
        assert!(d.ends_with("wedge a-b a-c b-c\n"));
    }
}
