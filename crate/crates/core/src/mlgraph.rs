//! Multilayer graph model and `.mledges` ingestion.
//!
//! A [`MultilayerGraph`] holds one shared node set and `k` undirected edge
//! sets. Node labels and layer names from the input are kept in side tables;
//! everything internal works on dense ids.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Dense node index in `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected edge in canonical order (`u < v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    /// Canonicalizes `{a, b}`. Returns `None` for a self-loop.
    pub fn new(a: NodeId, b: NodeId) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Shorthand for tests and generators working with raw indices.
    ///
    /// # Panics
    /// Panics if `a == b`.
    pub fn of(a: u32, b: u32) -> Self {
        Edge::new(NodeId(a), NodeId(b)).expect("self-loop")
    }

    #[inline]
    pub fn u(&self) -> NodeId {
        self.u
    }

    #[inline]
    pub fn v(&self) -> NodeId {
        self.v
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: NodeId) -> Option<NodeId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Which whitespace-separated fields of an input line hold the layer and the
/// two endpoints. `width` is the exact field count every data line must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Columns {
    pub layer: usize,
    pub src: usize,
    pub dst: usize,
    pub width: usize,
}

impl Default for Columns {
    fn default() -> Self {
        Columns {
            layer: 0,
            src: 1,
            dst: 2,
            width: 3,
        }
    }
}

impl Columns {
    /// Parses a comma-separated role list such as `layer,src,dst` or
    /// `src,dst,layer,_`. `_` marks a column that is present but ignored.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut layer = None;
        let mut src = None;
        let mut dst = None;
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        for (i, p) in parts.iter().enumerate() {
            let slot = match *p {
                "layer" => &mut layer,
                "src" => &mut src,
                "dst" => &mut dst,
                "_" => continue,
                other => {
                    return Err(Error::Usage(format!("unknown column role `{other}`")));
                }
            };
            if slot.replace(i).is_some() {
                return Err(Error::Usage(format!("column role `{p}` given twice")));
            }
        }
        match (layer, src, dst) {
            (Some(layer), Some(src), Some(dst)) => Ok(Columns {
                layer,
                src,
                dst,
                width: parts.len(),
            }),
            _ => Err(Error::Usage(
                "columns must name each of layer, src, dst exactly once".into(),
            )),
        }
    }
}

/// Counters collected while parsing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseStats {
    pub lines: usize,
    pub data_lines: usize,
    pub duplicates: usize,
}

/// Node set plus `k` canonicalized undirected edge sets.
#[derive(Clone, Debug)]
pub struct MultilayerGraph {
    node_labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
    layer_names: Vec<String>,
    layers: Vec<BTreeSet<Edge>>,
    // per layer, per node: sorted neighbor list
    adjacency: Vec<Vec<Vec<NodeId>>>,
    // aggregated edge -> sorted list of containing layers
    membership: BTreeMap<Edge, Vec<usize>>,
}

impl MultilayerGraph {
    /// Builds a graph from labels and per-layer edge lists. Duplicates are
    /// collapsed.
    ///
    /// # Panics
    /// Panics if there are no layers, labels repeat, or an edge references an
    /// unknown node.
    pub fn from_parts(node_labels: Vec<String>, layer_names: Vec<String>, layers: Vec<BTreeSet<Edge>>) -> Self {
        assert!(!layers.is_empty(), "a multilayer graph needs at least one layer");
        assert_eq!(layer_names.len(), layers.len());
        let n = node_labels.len();
        let mut label_index = HashMap::with_capacity(n);
        for (i, l) in node_labels.iter().enumerate() {
            let prev = label_index.insert(l.clone(), NodeId(i as u32));
            assert!(prev.is_none(), "duplicate node label {l:?}");
        }
        let mut adjacency = Vec::with_capacity(layers.len());
        let mut membership: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (i, edges) in layers.iter().enumerate() {
            let mut adj = vec![Vec::new(); n];
            for e in edges {
                assert!(e.v.index() < n, "edge {e} references unknown node");
                adj[e.u.index()].push(e.v);
                adj[e.v.index()].push(e.u);
                membership.entry(*e).or_default().push(i);
            }
            for list in &mut adj {
                list.sort_unstable();
            }
            adjacency.push(adj);
        }
        MultilayerGraph {
            node_labels,
            label_index,
            layer_names,
            layers,
            adjacency,
            membership,
        }
    }

    /// Graph over nodes labeled `0..n` with layers named `1..=k`.
    pub fn from_edge_lists(n: usize, layers: &[Vec<(u32, u32)>]) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let names = (1..=layers.len()).map(|i| i.to_string()).collect();
        let sets = layers
            .iter()
            .map(|l| l.iter().map(|&(a, b)| Edge::of(a, b)).collect())
            .collect();
        Self::from_parts(labels, names, sets)
    }

    /// Number of nodes `n`.
    pub fn node_count(&self) -> usize {
        self.node_labels.len()
    }

    /// Number of layers `k`.
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// `m = Σ_i |E_i|`, the number of (layer, edge) instances.
    pub fn total_edges(&self) -> usize {
        self.layers.iter().map(BTreeSet::len).sum()
    }

    /// Number of distinct edges over all layers, `|∪ E_i|`.
    pub fn aggregated_edge_count(&self) -> usize {
        self.membership.len()
    }

    pub fn layer(&self, i: usize) -> Result<&BTreeSet<Edge>> {
        self.layers.get(i).ok_or(Error::InvalidLayer {
            layer: i,
            layers: self.layers.len(),
        })
    }

    pub fn layers(&self) -> &[BTreeSet<Edge>] {
        &self.layers
    }

    pub fn layer_name(&self, i: usize) -> &str {
        &self.layer_names[i]
    }

    pub fn layer_names(&self) -> &[String] {
        &self.layer_names
    }

    pub fn node_label(&self, v: NodeId) -> &str {
        &self.node_labels[v.index()]
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    /// Canonical edge between two labeled nodes.
    pub fn edge_by_labels(&self, a: &str, b: &str) -> Option<Edge> {
        Edge::new(self.node_by_label(a)?, self.node_by_label(b)?)
    }

    /// Sorted neighbors of `v` in layer `i`.
    pub fn neighbors(&self, i: usize, v: NodeId) -> &[NodeId] {
        &self.adjacency[i][v.index()]
    }

    pub fn has_edge(&self, i: usize, e: Edge) -> bool {
        self.adjacency[i][e.u.index()].binary_search(&e.v).is_ok()
    }

    /// Aggregated edges in canonical order.
    pub fn aggregated_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.membership.keys().copied()
    }

    /// Layers containing `e`, ascending. Empty if `e` is absent everywhere.
    pub fn layers_of(&self, e: Edge) -> &[usize] {
        self.membership.get(&e).map_or(&[], Vec::as_slice)
    }

    /// `m_e`: number of layers containing `e`.
    pub fn layer_count_of(&self, e: Edge) -> usize {
        self.layers_of(e).len()
    }

    /// Non-edges of layer `i` that close at least one wedge of that layer.
    pub fn candidate_new_edges(&self, i: usize) -> Result<BTreeSet<Edge>> {
        self.layer(i)?;
        let mut out = BTreeSet::new();
        for nbrs in &self.adjacency[i] {
            for (a, &x) in nbrs.iter().enumerate() {
                for &y in &nbrs[a + 1..] {
                    let e = Edge { u: x, v: y };
                    if !self.has_edge(i, e) {
                        out.insert(e);
                    }
                }
            }
        }
        Ok(out)
    }

    /// A one-layer graph over the same node set holding only layer `i`.
    pub fn layer_subgraph(&self, i: usize) -> Result<MultilayerGraph> {
        let edges = self.layer(i)?.clone();
        Ok(MultilayerGraph::from_parts(
            self.node_labels.clone(),
            vec![self.layer_names[i].clone()],
            vec![edges],
        ))
    }

    /// Serializes as `.mledges` text: one `<layer> <u> <v>` line per
    /// (layer, edge) instance using the original labels.
    pub fn to_mledges(&self) -> String {
        let mut out = String::new();
        for (i, edges) in self.layers.iter().enumerate() {
            for e in edges {
                out.push_str(&self.layer_names[i]);
                out.push(' ');
                out.push_str(self.node_label(e.u));
                out.push(' ');
                out.push_str(self.node_label(e.v));
                out.push('\n');
            }
        }
        out
    }
}

/// Parses `.mledges` text with the default `<layer> <u> <v>` column order.
pub fn parse_multilayer_edgelist(text: &str) -> Result<MultilayerGraph> {
    parse_with_columns(text, Columns::default()).map(|(g, _)| g)
}

/// Parses `.mledges` text with an explicit column order.
///
/// Layers are numbered by first occurrence of their identifier and node
/// labels by first appearance. Duplicate (layer, edge) lines are collapsed
/// and counted in the returned stats.
pub fn parse_with_columns(text: &str, cols: Columns) -> Result<(MultilayerGraph, ParseStats)> {
    let mut stats = ParseStats::default();
    let mut labels: Vec<String> = Vec::new();
    let mut label_index: HashMap<String, NodeId> = HashMap::new();
    let mut layer_names: Vec<String> = Vec::new();
    let mut layer_index: HashMap<String, usize> = HashMap::new();
    let mut layers: Vec<BTreeSet<Edge>> = Vec::new();

    let mut intern = |label: &str, labels: &mut Vec<String>| -> NodeId {
        if let Some(&id) = label_index.get(label) {
            return id;
        }
        let id = NodeId(labels.len() as u32);
        labels.push(label.to_owned());
        label_index.insert(label.to_owned(), id);
        id
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        stats.lines += 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != cols.width {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {} fields, found {}", cols.width, fields.len()),
            });
        }
        stats.data_lines += 1;
        let (layer, a, b) = (fields[cols.layer], fields[cols.src], fields[cols.dst]);
        if a == b {
            return Err(Error::SelfLoop {
                line: line_no,
                node: a.to_owned(),
            });
        }
        let li = match layer_index.get(layer) {
            Some(&li) => li,
            None => {
                let li = layer_names.len();
                layer_names.push(layer.to_owned());
                layer_index.insert(layer.to_owned(), li);
                layers.push(BTreeSet::new());
                li
            }
        };
        let ua = intern(a, &mut labels);
        let ub = intern(b, &mut labels);
        let e = Edge::new(ua, ub).expect("distinct labels map to distinct ids");
        if !layers[li].insert(e) {
            stats.duplicates += 1;
        }
    }
    if layers.is_empty() {
        return Err(Error::Parse {
            line: stats.lines,
            message: "input contains no edges".into(),
        });
    }
    Ok((MultilayerGraph::from_parts(labels, layer_names, layers), stats))
}
