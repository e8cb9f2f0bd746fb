//! Strong/weak labelings of a multilayer graph and the algorithms producing
//! them.
//!
//! Every multilayer algorithm here reduces to a vertex cover on the combined
//! wedge (hyper)graph: a selected node marks its edge weak in every layer
//! that contains it, so the resulting labelings never disagree across
//! layers. The per-layer baselines solve each layer on its own and may
//! disagree; [`enforce_consistency`] repairs them.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::cover::{self, CoverMethod, CoverSolution, ExactBudget};
use crate::error::{Error, Result};
use crate::metrics::{objectives, EdgeLabelTally, TallyMode};
use crate::mlgraph::{Edge, MultilayerGraph, NodeId};
use crate::wedge::{build_wedge_graph, build_wedge_hypergraph, Wedge, WedgeGraph, WedgeHypergraph};

/// Per-layer strong sets `S_i ⊆ E_i` and inserted weak edges `E_i^N`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labeling {
    pub strong: Vec<BTreeSet<Edge>>,
    pub inserted: Vec<BTreeSet<Edge>>,
}

impl Labeling {
    /// `k` empty layers: everything weak, nothing inserted.
    pub fn all_weak(k: usize) -> Self {
        Labeling {
            strong: vec![BTreeSet::new(); k],
            inserted: vec![BTreeSet::new(); k],
        }
    }

    pub fn all_strong(g: &MultilayerGraph) -> Self {
        Labeling {
            strong: g.layers().to_vec(),
            inserted: vec![BTreeSet::new(); g.layer_count()],
        }
    }

    /// Labels every edge of `weak` weak in all layers containing it.
    pub fn from_weak_set(g: &MultilayerGraph, weak: &BTreeSet<Edge>) -> Self {
        Labeling {
            strong: g
                .layers()
                .iter()
                .map(|edges| edges.difference(weak).copied().collect())
                .collect(),
            inserted: vec![BTreeSet::new(); g.layer_count()],
        }
    }

    pub fn layer_count(&self) -> usize {
        self.strong.len()
    }

    pub fn is_strong(&self, layer: usize, e: Edge) -> bool {
        self.strong[layer].contains(&e)
    }

    /// Existing edges of layer `i` labeled weak, `E_i \ S_i`.
    pub fn weak_existing<'a>(&'a self, g: &'a MultilayerGraph, i: usize) -> impl Iterator<Item = Edge> + 'a {
        g.layers()[i]
            .iter()
            .copied()
            .filter(move |e| !self.strong[i].contains(e))
    }

    /// Total number of (layer, inserted edge) instances.
    pub fn inserted_count(&self) -> usize {
        self.inserted.iter().map(BTreeSet::len).sum()
    }

    /// `S_i ⊆ E_i`, inserted edges disjoint from `E_i`, layer counts match.
    pub fn is_well_formed(&self, g: &MultilayerGraph) -> bool {
        self.strong.len() == g.layer_count()
            && self.inserted.len() == g.layer_count()
            && g.layers()
                .iter()
                .enumerate()
                .all(|(i, edges)| self.strong[i].is_subset(edges) && self.inserted[i].is_disjoint(edges))
    }

    /// `layer,u,v,label` rows in input labels, one per (layer, edge)
    /// instance, edges of a layer in canonical order.
    pub fn to_csv(&self, g: &MultilayerGraph) -> String {
        let mut out = String::from("layer,u,v,label\n");
        for (i, edges) in g.layers().iter().enumerate() {
            let mut rows: Vec<(Edge, &str)> = edges
                .iter()
                .map(|e| (*e, if self.strong[i].contains(e) { "strong" } else { "weak" }))
                .chain(self.inserted[i].iter().map(|e| (*e, "weak-new")))
                .collect();
            rows.sort_unstable();
            for (e, label) in rows {
                out.push_str(&format!(
                    "{},{},{},{label}\n",
                    csv_field(g.layer_name(i)),
                    csv_field(g.node_label(e.u())),
                    csv_field(g.node_label(e.v()))
                ));
            }
        }
        out
    }
}

fn csv_field(s: &str) -> std::borrow::Cow<'_, str> {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\"")).into()
    } else {
        s.into()
    }
}

/// Approximate cover solvers usable by the approximation algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Approx {
    Pricing,
    Greedy,
    GreedyWeighted,
}

impl From<Approx> for CoverMethod {
    fn from(a: Approx) -> Self {
        match a {
            Approx::Pricing => CoverMethod::Pricing,
            Approx::Greedy => CoverMethod::Greedy,
            Approx::GreedyWeighted => CoverMethod::GreedyWeighted,
        }
    }
}

/// Labeling induced by a cover of the combined wedge graph.
pub fn labeling_from_graph_cover(g: &MultilayerGraph, w: &WedgeGraph, c: &CoverSolution<u64>) -> Labeling {
    let weak: BTreeSet<Edge> = c.selected.iter().map(|&v| w.nodes()[v]).collect();
    Labeling::from_weak_set(g, &weak)
}

/// Labeling induced by a cover of the combined wedge hypergraph: a selected
/// pair is weak in every layer containing it and inserted as a new weak
/// edge into every layer where it closes a wedge.
pub fn labeling_from_hypergraph_cover(g: &MultilayerGraph, h: &WedgeHypergraph, c: &CoverSolution<u64>) -> Labeling {
    let mut weak = BTreeSet::new();
    let mut inserted = vec![BTreeSet::new(); g.layer_count()];
    for &v in &c.selected {
        let e = h.nodes()[v];
        let roles = &h.roles()[v];
        if !roles.existing.is_empty() {
            weak.insert(e);
        }
        for &i in &roles.candidate {
            inserted[i].insert(e);
        }
    }
    let mut l = Labeling::from_weak_set(g, &weak);
    l.inserted = inserted;
    l
}

/// MinMultiLayerSTC through the combined wedge graph with any cover solver.
pub fn solve_min_ml_stc(g: &MultilayerGraph, method: CoverMethod, budget: ExactBudget) -> Result<Labeling> {
    let w = build_wedge_graph(g);
    let c = cover::solve(&w.to_cover_instance(), method, budget)?;
    Ok(labeling_from_graph_cover(g, &w, &c))
}

/// 2-approximation (pricing) or greedy heuristic for MinMultiLayerSTC.
pub fn approx_min_ml_stc(g: &MultilayerGraph, method: Approx) -> Labeling {
    solve_min_ml_stc(g, method.into(), ExactBudget::default()).expect("approximate solvers are infallible")
}

/// Optimal MinMultiLayerSTC labeling via an exact cover of the wedge graph.
pub fn exact_min_ml_stc(g: &MultilayerGraph, budget: ExactBudget) -> Result<Labeling> {
    solve_min_ml_stc(g, CoverMethod::Exact, budget)
}

/// Optimal MaxMultiLayerSTC labeling and value. The value is `m` minus the
/// exact minimum objective; both optima are attained by the same
/// disagreement-free labeling.
pub fn exact_max_ml_stc(g: &MultilayerGraph, budget: ExactBudget) -> Result<(Labeling, u64)> {
    let l = exact_min_ml_stc(g, budget)?;
    let value = g.total_edges() as u64 - objectives(g, &l).min;
    Ok((l, value))
}

/// MinMultiLayerSTC+ through the combined wedge hypergraph.
///
/// With [`CoverMethod::Exact`] the result is optimal for the variant that
/// inserts a new edge into every layer where it closes a wedge; for the
/// unrestricted problem that is a 2-approximation.
pub fn solve_min_ml_stc_plus(
    g: &MultilayerGraph,
    method: CoverMethod,
    budget: ExactBudget,
    postprocess: bool,
) -> Result<Labeling> {
    let h = build_wedge_hypergraph(g);
    let c = cover::solve(&h.to_cover_instance(), method, budget)?;
    let l = labeling_from_hypergraph_cover(g, &h, &c);
    Ok(if postprocess { post_process(g, &l) } else { l })
}

/// 6-approximation (pricing) or greedy heuristic for MinMultiLayerSTC+.
pub fn approx_min_ml_stc_plus(g: &MultilayerGraph, method: Approx, postprocess: bool) -> Labeling {
    solve_min_ml_stc_plus(g, method.into(), ExactBudget::default(), postprocess)
        .expect("approximate solvers are infallible")
}

/// Exact cover of the wedge hypergraph (optimal for the insert-everywhere
/// variant only).
pub fn exact_min_ml_stc_plus_variant(g: &MultilayerGraph, budget: ExactBudget, postprocess: bool) -> Result<Labeling> {
    solve_min_ml_stc_plus(g, CoverMethod::Exact, budget, postprocess)
}

/// Drops every inserted edge from a layer where it closes no wedge whose
/// two legs are both strong. Strong sets are left untouched, so the result
/// does not depend on the order edges are checked.
pub fn post_process(g: &MultilayerGraph, l: &Labeling) -> Labeling {
    let mut out = l.clone();
    for (i, inserted) in out.inserted.iter_mut().enumerate() {
        let strong = &l.strong[i];
        inserted.retain(|e| closes_strong_wedge(g, strong, i, *e));
    }
    out
}

fn closes_strong_wedge(g: &MultilayerGraph, strong: &BTreeSet<Edge>, i: usize, e: Edge) -> bool {
    let (a, b) = (g.neighbors(i, e.u()), g.neighbors(i, e.v()));
    // sorted-list intersection of the endpoints' neighborhoods
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                let c = a[x];
                let legs = (Edge::new(c, e.u()), Edge::new(c, e.v()));
                if let (Some(p), Some(q)) = legs {
                    if strong.contains(&p) && strong.contains(&q) {
                        return true;
                    }
                }
                x += 1;
                y += 1;
            }
        }
    }
    false
}

/// Solves STC (or STC+) on every layer independently. Layers are not
/// coupled, so the result may disagree across layers.
pub fn baseline_per_layer(
    g: &MultilayerGraph,
    method: CoverMethod,
    plus: bool,
    budget: ExactBudget,
    postprocess: bool,
) -> Result<Labeling> {
    let per_layer: Vec<Labeling> = (0..g.layer_count())
        .into_par_iter()
        .map(|i| {
            let sub = g.layer_subgraph(i)?;
            if plus {
                solve_min_ml_stc_plus(&sub, method, budget, postprocess)
            } else {
                solve_min_ml_stc(&sub, method, budget)
            }
        })
        .collect::<Result<_>>()?;
    let mut out = Labeling::all_weak(g.layer_count());
    for (i, mut l) in per_layer.into_iter().enumerate() {
        out.strong[i] = std::mem::take(&mut l.strong[0]);
        out.inserted[i] = std::mem::take(&mut l.inserted[0]);
    }
    Ok(out)
}

/// Relabels weak, in every layer, each edge that is strong somewhere and
/// weak (existing or inserted) somewhere else.
pub fn enforce_consistency(g: &MultilayerGraph, l: &Labeling) -> Labeling {
    let tally = EdgeLabelTally::from_labeling(g, l, TallyMode::IncludeInserted);
    let conflicted: BTreeSet<Edge> = tally
        .iter()
        .filter(|(_, c)| c.strong > 0 && c.weak > 0)
        .map(|(e, _)| e)
        .collect();
    let mut out = l.clone();
    for s in &mut out.strong {
        s.retain(|e| !conflicted.contains(e));
    }
    out
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Wedges of `E_i ∪ E_i^N` with two strong legs.
    pub violations: Vec<(usize, Wedge)>,
    /// `d_k` over existing and inserted instances.
    pub disagreements: u64,
    pub is_stc_valid: bool,
    pub is_consistent: bool,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.is_stc_valid && self.is_consistent
    }
}

/// Checks STC in every layer (over existing plus inserted edges) and counts
/// disagreements.
pub fn validate(g: &MultilayerGraph, l: &Labeling) -> ValidationReport {
    let mut violations = Vec::new();
    for i in 0..g.layer_count() {
        let strong = &l.strong[i];
        let inserted = &l.inserted[i];
        let mut strong_adj: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
        for e in strong {
            strong_adj.entry(e.u()).or_default().push(e.v());
            strong_adj.entry(e.v()).or_default().push(e.u());
        }
        let mut centers: Vec<_> = strong_adj.into_iter().collect();
        centers.sort_unstable();
        for (center, mut nbrs) in centers {
            nbrs.sort_unstable();
            for (a, &x) in nbrs.iter().enumerate() {
                for &y in &nbrs[a + 1..] {
                    let ends = Edge::new(x, y).expect("distinct neighbors");
                    if !g.has_edge(i, ends) && !inserted.contains(&ends) {
                        violations.push((i, Wedge { center, ends }));
                    }
                }
            }
        }
    }
    let d = crate::metrics::disagreements(&EdgeLabelTally::from_labeling(g, l, TallyMode::IncludeInserted));
    ValidationReport {
        is_stc_valid: violations.is_empty(),
        is_consistent: d == 0,
        violations,
        disagreements: d,
    }
}

/// Exhaustive reference solvers for tiny instances.
pub mod oracle {
    use super::*;

    pub const MAX_NODES: usize = 8;
    pub const MAX_LAYERS: usize = 2;

    /// How insertions are charged.
    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    enum Insertion {
        /// A pair is inserted only into layers where it closes a wedge with
        /// two strong legs.
        Needed,
        /// Once inserted anywhere, a pair goes into every layer where it
        /// closes some wedge.
        EveryClosableLayer,
    }

    /// True optimum of MinMultiLayerSTC+ by exhaustive search.
    ///
    /// Disagreement-free labelings suffice (any disagreement can be traded
    /// for a weak label at equal cost), so the search enumerates one global
    /// strong/weak label per aggregated edge. For a fixed strong set the
    /// cheapest insertions are forced: exactly the closing pairs of wedges
    /// with two strong legs, and such a pair must not be strong anywhere.
    /// Branches are cut once their cost reaches the best complete labeling.
    pub fn oracle_min_ml_stc_plus(g: &MultilayerGraph) -> Result<(Labeling, u64)> {
        search(g, Insertion::Needed)
    }

    /// Optimum of the insert-everywhere variant of MinMultiLayerSTC+, by the
    /// same exhaustive search.
    pub fn oracle_min_ml_stc_plus_variant(g: &MultilayerGraph) -> Result<(Labeling, u64)> {
        search(g, Insertion::EveryClosableLayer)
    }

    struct WedgeRef {
        layer: usize,
        legs: (usize, usize),
        closing: Edge,
        // index of the closing pair among aggregated edges, if it exists anywhere
        closing_idx: Option<usize>,
    }

    struct State<'a> {
        edges: Vec<Edge>,
        layer_counts: Vec<u64>,
        by_resolve: Vec<Vec<WedgeRef>>,
        closable_layers: HashMap<Edge, u64>,
        mode: Insertion,
        strong: Vec<bool>,
        needed: HashMap<(usize, Edge), u32>,
        needed_pairs: HashMap<Edge, u32>,
        best: (u64, Vec<bool>, Vec<(usize, Edge)>),
        g: &'a MultilayerGraph,
    }

    fn search(g: &MultilayerGraph, mode: Insertion) -> Result<(Labeling, u64)> {
        if g.node_count() > MAX_NODES || g.layer_count() > MAX_LAYERS {
            return Err(Error::OracleLimits(format!(
                "n = {}, k = {} (limits n <= {MAX_NODES}, k <= {MAX_LAYERS})",
                g.node_count(),
                g.layer_count()
            )));
        }
        let edges: Vec<Edge> = g.aggregated_edges().collect();
        let idx: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut by_resolve: Vec<Vec<WedgeRef>> = (0..edges.len()).map(|_| Vec::new()).collect();
        let mut closable_layers: HashMap<Edge, u64> = HashMap::new();
        for i in 0..g.layer_count() {
            let mut closable = BTreeSet::new();
            for w in crate::wedge::enumerate_wedges(g, i)? {
                let (p, q) = w.legs();
                let (a, b) = (idx[&p], idx[&q]);
                let c = idx.get(&w.ends).copied();
                let resolve = a.max(b).max(c.unwrap_or(0));
                by_resolve[resolve].push(WedgeRef {
                    layer: i,
                    legs: (a, b),
                    closing: w.ends,
                    closing_idx: c,
                });
                closable.insert(w.ends);
            }
            for e in closable {
                *closable_layers.entry(e).or_default() += 1;
            }
        }
        let all_weak = g.total_edges() as u64;
        let mut st = State {
            layer_counts: edges.iter().map(|&e| g.layer_count_of(e) as u64).collect(),
            strong: vec![false; edges.len()],
            best: (all_weak, vec![false; edges.len()], Vec::new()),
            edges,
            by_resolve,
            closable_layers,
            mode,
            needed: HashMap::new(),
            needed_pairs: HashMap::new(),
            g,
        };
        st.dfs(0, 0);
        let (value, strong, inserted) = st.best;
        let weak: BTreeSet<Edge> = st
            .edges
            .iter()
            .zip(&strong)
            .filter(|(_, s)| !**s)
            .map(|(e, _)| *e)
            .collect();
        let mut l = Labeling::from_weak_set(g, &weak);
        for (i, e) in inserted {
            l.inserted[i].insert(e);
        }
        Ok((l, value))
    }

    impl State<'_> {
        fn insertion_cost(&self) -> u64 {
            match self.mode {
                Insertion::Needed => self.needed.len() as u64,
                Insertion::EveryClosableLayer => self.needed_pairs.keys().map(|e| self.closable_layers[e]).sum(),
            }
        }

        fn dfs(&mut self, next: usize, weak_cost: u64) {
            if weak_cost + self.insertion_cost() >= self.best.0 {
                return;
            }
            if next == self.edges.len() {
                let inserted = self.inserted_instances();
                self.best = (weak_cost + self.insertion_cost(), self.strong.clone(), inserted);
                return;
            }
            // strong first: cheaper labelings tend to be found early
            for strong in [true, false] {
                self.strong[next] = strong;
                let mut added: Vec<(usize, Edge)> = Vec::new();
                let mut ok = true;
                for w in &self.by_resolve[next] {
                    if !(self.strong[w.legs.0] && self.strong[w.legs.1]) {
                        continue;
                    }
                    if w.closing_idx.is_some_and(|c| self.strong[c]) {
                        ok = false;
                        break;
                    }
                    added.push((w.layer, w.closing));
                }
                if ok {
                    for &(i, e) in &added {
                        *self.needed.entry((i, e)).or_default() += 1;
                        *self.needed_pairs.entry(e).or_default() += 1;
                    }
                    let cost = weak_cost + if strong { 0 } else { self.layer_counts[next] };
                    self.dfs(next + 1, cost);
                    for &(i, e) in &added {
                        dec(&mut self.needed, (i, e));
                        dec(&mut self.needed_pairs, e);
                    }
                }
            }
            self.strong[next] = false;
        }

        fn inserted_instances(&self) -> Vec<(usize, Edge)> {
            match self.mode {
                Insertion::Needed => self.needed.keys().copied().collect(),
                Insertion::EveryClosableLayer => {
                    let mut out = Vec::new();
                    for &e in self.needed_pairs.keys() {
                        for i in 0..self.g.layer_count() {
                            if !self.g.has_edge(i, e) && closes_any_wedge(self.g, i, e) {
                                out.push((i, e));
                            }
                        }
                    }
                    out
                }
            }
        }
    }

    fn closes_any_wedge(g: &MultilayerGraph, i: usize, e: Edge) -> bool {
        let b = g.neighbors(i, e.v());
        g.neighbors(i, e.u()).iter().any(|c| b.binary_search(c).is_ok())
    }

    fn dec<K: std::hash::Hash + Eq>(m: &mut HashMap<K, u32>, k: K) {
        let c = m.get_mut(&k).expect("present");
        *c -= 1;
        if *c == 0 {
            m.remove(&k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use crate::metrics::objectives;

    fn two_layer_toy() -> MultilayerGraph {
        // L1: {a,b},{b,c}; L2: {a,b}
        MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)], vec![(0, 1)]])
    }

    fn k4_minus_cd() -> MultilayerGraph {
        MultilayerGraph::from_edge_lists(4, &[vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]])
    }

    fn path() -> MultilayerGraph {
        MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)]])
    }

    #[test]
    fn csv_rows_include_insertions() {
        let g = crate::mlgraph::parse_multilayer_edgelist("x a b\nx b c\ny \"q,r\" a\n").unwrap();
        let mut l = Labeling::from_weak_set(&g, &BTreeSet::from([g.edge_by_labels("b", "c").unwrap()]));
        l.inserted[0].insert(g.edge_by_labels("a", "c").unwrap());
        assert_eq!(
            l.to_csv(&g),
            "layer,u,v,label\nx,a,b,strong\nx,a,c,weak-new\nx,b,c,weak\ny,a,\"\"\"q,r\"\"\",strong\n"
        );
    }

    fn triangle() -> MultilayerGraph {
        MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2), (0, 2)]])
    }

    #[test]
    fn approx_two_layer_toy() {
        let g = two_layer_toy();
        let l = approx_min_ml_stc(&g, Approx::Pricing);
        assert_eq!(l.strong[0], BTreeSet::from([Edge::of(0, 1)]));
        assert_eq!(l.strong[1], BTreeSet::from([Edge::of(0, 1)]));
        assert_eq!(objectives(&g, &l).min, 1);
        assert!(validate(&g, &l).is_clean());
    }

    #[test]
    fn approx_triangle_and_identical_paths() {
        let l = approx_min_ml_stc(&triangle(), Approx::Pricing);
        assert_eq!(l, Labeling::all_strong(&triangle()));
        let g = MultilayerGraph::from_edge_lists(3, &[vec![(0, 1), (1, 2)], vec![(0, 1), (1, 2)]]);
        // equal weights make pricing tighten both legs
        let l = approx_min_ml_stc(&g, Approx::Pricing);
        assert_eq!(objectives(&g, &l).min, 4);
        assert!(validate(&g, &l).is_clean());
        let l = approx_min_ml_stc(&g, Approx::Greedy);
        assert_eq!(objectives(&g, &l).min, 2);
        assert!(validate(&g, &l).is_clean());
    }

    #[test]
    fn plus_on_k4_minus_edge_inserts_closing_pair() {
        let g = k4_minus_cd();
        let l = exact_min_ml_stc_plus_variant(&g, ExactBudget::default(), true).unwrap();
        assert_eq!(l.inserted[0], BTreeSet::from([Edge::of(2, 3)]));
        assert_eq!(l.strong[0].len(), 5);
        assert_eq!(objectives(&g, &l).min_plus, 1);
        assert_eq!(
            objectives(&g, &exact_min_ml_stc(&g, ExactBudget::default()).unwrap()).min,
            2
        );
        let (_, v) = oracle_min_ml_stc_plus(&g).unwrap();
        assert_eq!(v, 1);
        for m in [Approx::Pricing, Approx::Greedy] {
            let l = approx_min_ml_stc_plus(&g, m, true);
            assert!(validate(&g, &l).is_clean());
        }
    }

    #[test]
    fn plus_on_triangle_inserts_nothing() {
        let l = approx_min_ml_stc_plus(&triangle(), Approx::Pricing, true);
        assert_eq!(l, Labeling::all_strong(&triangle()));
    }

    #[test]
    fn post_process_without_insertions_is_identity() {
        let g = two_layer_toy();
        let l = approx_min_ml_stc(&g, Approx::Pricing);
        assert_eq!(post_process(&g, &l), l);
    }

    #[test]
    fn post_process_removes_unneeded_insertion() {
        // path a-b-c with both legs weak and {a,c} inserted
        let g = path();
        let l = Labeling {
            strong: vec![BTreeSet::new()],
            inserted: vec![BTreeSet::from([Edge::of(0, 2)])],
        };
        let p = post_process(&g, &l);
        assert!(p.inserted[0].is_empty());
        assert!(validate(&g, &p).is_clean());
        // with both legs strong the insertion stays
        let l = Labeling {
            strong: vec![g.layers()[0].clone()],
            inserted: vec![BTreeSet::from([Edge::of(0, 2)])],
        };
        assert_eq!(post_process(&g, &l), l);
    }

    #[test]
    fn baseline_disagreement_and_repair() {
        // L1: path a-b-c; L2: {a,b}
        let g = two_layer_toy();
        let raw = Labeling {
            strong: vec![BTreeSet::from([Edge::of(1, 2)]), BTreeSet::from([Edge::of(0, 1)])],
            inserted: vec![BTreeSet::new(), BTreeSet::new()],
        };
        assert_eq!(validate(&g, &raw).disagreements, 1);
        let fixed = enforce_consistency(&g, &raw);
        assert!(fixed.strong[1].is_empty());
        assert_eq!(fixed.strong[0], BTreeSet::from([Edge::of(1, 2)]));
        assert!(validate(&g, &fixed).is_clean());
        assert_eq!(enforce_consistency(&g, &fixed), fixed);

        let base = baseline_per_layer(&g, CoverMethod::Pricing, false, ExactBudget::default(), true).unwrap();
        assert!(base.strong[1].contains(&Edge::of(0, 1)));
        assert!(validate(&g, &enforce_consistency(&g, &base)).is_clean());
    }

    #[test]
    fn baseline_identical_layers_agree() {
        let g = MultilayerGraph::from_edge_lists(4, &[vec![(0, 1), (1, 2), (2, 3)], vec![(0, 1), (1, 2), (2, 3)]]);
        for plus in [false, true] {
            let b = baseline_per_layer(&g, CoverMethod::Pricing, plus, ExactBudget::default(), true).unwrap();
            assert_eq!(b.strong[0], b.strong[1]);
            assert_eq!(validate(&g, &b).disagreements, 0);
        }
        let b = baseline_per_layer(&triangle(), CoverMethod::Greedy, false, ExactBudget::default(), true).unwrap();
        assert_eq!(b, Labeling::all_strong(&triangle()));
    }

    #[test]
    fn exact_min_and_max_on_toy() {
        let g = two_layer_toy();
        let l = exact_min_ml_stc(&g, ExactBudget::default()).unwrap();
        assert_eq!(objectives(&g, &l).min, 1);
        let (_, v) = exact_max_ml_stc(&g, ExactBudget::default()).unwrap();
        assert_eq!(v, 2);
        let (_, v) = exact_max_ml_stc(&triangle(), ExactBudget::default()).unwrap();
        assert_eq!(v, 3);
    }

    #[test]
    fn exact_budget_is_enforced() {
        let b = ExactBudget {
            max_edges: 0,
            max_branches: None,
        };
        assert!(matches!(
            exact_min_ml_stc(&path(), b),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(oracle_min_ml_stc_plus(&path()).unwrap().1, 1);
        assert_eq!(oracle_min_ml_stc_plus(&triangle()).unwrap().1, 0);
        let g = MultilayerGraph::from_edge_lists(9, &[vec![(0, 1)]]);
        assert!(matches!(oracle_min_ml_stc_plus(&g), Err(Error::OracleLimits(_))));
        let g = MultilayerGraph::from_edge_lists(3, &[vec![(0, 1)], vec![(0, 1)], vec![(0, 1)]]);
        assert!(oracle_min_ml_stc_plus(&g).is_err());
    }

    #[test]
    fn oracle_labeling_matches_value() {
        let g = k4_minus_cd();
        let (l, v) = oracle_min_ml_stc_plus(&g).unwrap();
        assert!(validate(&g, &l).is_clean());
        assert_eq!(objectives(&g, &l).min_plus, v);
    }

    #[test]
    fn validate_counts_violation() {
        let r = validate(&path(), &Labeling::all_strong(&path()));
        assert_eq!(
            r.violations,
            vec![(
                0,
                Wedge {
                    center: NodeId(1),
                    ends: Edge::of(0, 2)
                }
            )]
        );
        assert!(!r.is_stc_valid);
        assert!(r.is_consistent);
    }
}
