//! Minimum weighted vertex cover on r-uniform hypergraphs.
//!
//! Three solvers share one instance type: primal-dual pricing (an
//! r-approximation), greedy by uncovered degree, and an exact
//! branch-and-bound for small instances. `r = 2` serves the wedge graph and
//! `r = 3` the wedge hypergraph.
//!
//! Iteration orders are fixed so every solver is deterministic: pricing
//! visits edges in instance order, greedy breaks ties by lowest node index,
//! and the exact solver returns the lexicographically smallest optimal node
//! set (as a sorted index list).

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Weight;

/// Node-weighted r-uniform hypergraph. Edges are stored flat, `arity`
/// indices per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverInstance<W> {
    weights: Vec<W>,
    arity: usize,
    flat: Vec<usize>,
}

impl<W: Weight> CoverInstance<W> {
    /// Builds an instance from explicit edge lists. Every edge must have
    /// exactly `arity` distinct members.
    pub fn new(weights: Vec<W>, arity: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut flat = Vec::with_capacity(edges.len() * arity);
        for (j, e) in edges.iter().enumerate() {
            if e.len() != arity {
                return Err(Error::InvalidInstance(format!(
                    "edge {j} has {} members, expected {arity}",
                    e.len()
                )));
            }
            flat.extend_from_slice(e);
        }
        Self::from_flat(weights, arity, flat)
    }

    pub fn from_flat(weights: Vec<W>, arity: usize, flat: Vec<usize>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidInstance("arity must be positive".into()));
        }
        if !flat.len().is_multiple_of(arity) {
            return Err(Error::InvalidInstance(
                "edge list length is not a multiple of arity".into(),
            ));
        }
        // also rejects NaN
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(**w > W::zero())) {
            return Err(Error::InvalidInstance(format!("node {i} has non-positive weight {w}")));
        }
        for (j, e) in flat.chunks(arity).enumerate() {
            for (a, &x) in e.iter().enumerate() {
                if x >= weights.len() {
                    return Err(Error::InvalidInstance(format!("edge {j} references missing node {x}")));
                }
                if e[..a].contains(&x) {
                    return Err(Error::InvalidInstance(format!("edge {j} repeats node {x}")));
                }
            }
        }
        Ok(CoverInstance { weights, arity, flat })
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.flat.len() / self.arity
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn edge(&self, j: usize) -> &[usize] {
        &self.flat[j * self.arity..(j + 1) * self.arity]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[usize]> {
        self.flat.chunks(self.arity)
    }

    /// True if every edge has a member in `selected`.
    pub fn is_cover(&self, selected: &[usize]) -> bool {
        let mut mark = vec![false; self.node_count()];
        for &v in selected {
            mark[v] = true;
        }
        self.edges().all(|e| e.iter().any(|&v| mark[v]))
    }

    pub fn weight_of(&self, selected: &[usize]) -> W {
        W::total(selected.iter().map(|&v| self.weights[v]))
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.node_count()];
        for (j, e) in self.edges().enumerate() {
            for &v in e {
                inc[v].push(j);
            }
        }
        inc
    }
}

/// Which solver produced a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoverMethod {
    Pricing,
    Greedy,
    /// Greedy ranking by uncovered degree divided by weight.
    GreedyWeighted,
    Exact,
}

impl CoverMethod {
    pub fn name(self) -> &'static str {
        match self {
            CoverMethod::Pricing => "pricing",
            CoverMethod::Greedy => "greedy",
            CoverMethod::GreedyWeighted => "greedy-weighted",
            CoverMethod::Exact => "exact",
        }
    }
}

impl fmt::Display for CoverMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CoverMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pricing" => Ok(CoverMethod::Pricing),
            "greedy" => Ok(CoverMethod::Greedy),
            "greedy-weighted" => Ok(CoverMethod::GreedyWeighted),
            "exact" => Ok(CoverMethod::Exact),
            other => Err(Error::Usage(format!("unknown cover method `{other}`"))),
        }
    }
}

/// A vertex cover with its weight and provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverSolution<W> {
    /// Selected nodes, ascending.
    pub selected: Vec<usize>,
    pub total_weight: W,
    pub method: CoverMethod,
    /// Proven lower bound on the optimum: the dual value for pricing, the
    /// optimum itself for the exact solver.
    pub lower_bound: Option<W>,
    /// Uniformity `r` of the solved instance.
    pub arity: usize,
}

impl<W: Weight> CoverSolution<W> {
    /// Guaranteed approximation factor, if the method has one.
    pub fn approximation_bound(&self) -> Option<usize> {
        match self.method {
            CoverMethod::Pricing => Some(self.arity),
            CoverMethod::Exact => Some(1),
            CoverMethod::Greedy | CoverMethod::GreedyWeighted => None,
        }
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.selected {
            m[v] = true;
        }
        m
    }
}

/// One price raise of the pricing algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct PricingStep<W> {
    pub edge: usize,
    pub raised: W,
    /// Nodes that became tight on this raise.
    pub tightened: Vec<usize>,
}

/// Pricing result including the final edge prices.
#[derive(Clone, Debug)]
pub struct Priced<W> {
    pub solution: CoverSolution<W>,
    pub prices: Vec<W>,
}

/// Primal-dual pricing cover.
pub fn pricing_cover<W: Weight>(inst: &CoverInstance<W>) -> CoverSolution<W> {
    pricing_traced(inst, |_| {}).solution
}

/// Pricing cover reporting every raise to `trace`.
///
/// Edges are visited in instance order. An edge none of whose members is
/// tight has its price raised by the smallest residual weight among its
/// members; every member reaching zero residual becomes tight.
pub fn pricing_traced<W: Weight>(inst: &CoverInstance<W>, mut trace: impl FnMut(&PricingStep<W>)) -> Priced<W> {
    let mut residual = inst.weights.clone();
    let mut tight = vec![false; inst.node_count()];
    let mut prices = vec![W::zero(); inst.edge_count()];
    let mut dual = W::zero();
    for (j, e) in inst.edges().enumerate() {
        if e.iter().any(|&v| tight[v]) {
            continue;
        }
        let delta = e
            .iter()
            .map(|&v| residual[v])
            .reduce(W::min_of)
            .expect("non-empty edge");
        let mut tightened = Vec::new();
        for &v in e {
            residual[v] = residual[v] - delta;
            if residual[v] <= W::zero() {
                tight[v] = true;
                tightened.push(v);
            }
        }
        prices[j] = delta;
        dual = dual + delta;
        trace(&PricingStep {
            edge: j,
            raised: delta,
            tightened,
        });
    }
    let selected: Vec<usize> = (0..inst.node_count()).filter(|&v| tight[v]).collect();
    let total_weight = inst.weight_of(&selected);
    Priced {
        solution: CoverSolution {
            selected,
            total_weight,
            method: CoverMethod::Pricing,
            lower_bound: Some(dual),
            arity: inst.arity,
        },
        prices,
    }
}

/// Greedy cover: repeatedly take the node covering the most uncovered edges,
/// lowest index first on ties.
pub fn greedy_cover<W: Weight>(inst: &CoverInstance<W>) -> CoverSolution<W> {
    let inc = inst.incidence();
    let mut degree: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut covered = vec![false; inst.edge_count()];
    let mut chosen = vec![false; inst.node_count()];
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = degree
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(v, &d)| (d, Reverse(v)))
        .collect();
    while let Some((d, Reverse(v))) = heap.pop() {
        if chosen[v] || degree[v] == 0 {
            continue;
        }
        if d != degree[v] {
            // stale key; degrees only decrease
            heap.push((degree[v], Reverse(v)));
            continue;
        }
        chosen[v] = true;
        for &j in &inc[v] {
            if covered[j] {
                continue;
            }
            covered[j] = true;
            for &x in inst.edge(j) {
                degree[x] -= 1;
            }
        }
    }
    finish(inst, chosen, CoverMethod::Greedy)
}

/// Greedy cover ranking nodes by uncovered degree per unit weight.
pub fn greedy_weighted_cover<W: Weight>(inst: &CoverInstance<W>) -> CoverSolution<W> {
    let inc = inst.incidence();
    let mut degree: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut covered = vec![false; inst.edge_count()];
    let mut chosen = vec![false; inst.node_count()];
    let count = |d: usize| W::from_usize(d).expect("degree fits the weight type");
    loop {
        // d_a / w_a > d_b / w_b  <=>  d_a * w_b > d_b * w_a
        let mut best: Option<usize> = None;
        for v in 0..inst.node_count() {
            if degree[v] == 0 {
                continue;
            }
            best = match best {
                None => Some(v),
                Some(b) if count(degree[v]) * inst.weights[b] > count(degree[b]) * inst.weights[v] => Some(v),
                keep => keep,
            };
        }
        let Some(v) = best else { break };
        chosen[v] = true;
        for &j in &inc[v] {
            if covered[j] {
                continue;
            }
            covered[j] = true;
            for &x in inst.edge(j) {
                degree[x] -= 1;
            }
        }
    }
    finish(inst, chosen, CoverMethod::GreedyWeighted)
}

fn finish<W: Weight>(inst: &CoverInstance<W>, chosen: Vec<bool>, method: CoverMethod) -> CoverSolution<W> {
    let selected: Vec<usize> = (0..inst.node_count()).filter(|&v| chosen[v]).collect();
    CoverSolution {
        total_weight: inst.weight_of(&selected),
        selected,
        method,
        lower_bound: None,
        arity: inst.arity,
    }
}

/// Size limits for the exact solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactBudget {
    /// Largest accepted edge count.
    pub max_edges: usize,
    /// Optional cap on branch-and-bound search nodes over the whole solve.
    pub max_branches: Option<u64>,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget {
            max_edges: 500_000,
            max_branches: None,
        }
    }
}

/// Runs the chosen solver. Only [`CoverMethod::Exact`] can fail.
pub fn solve<W: Weight>(inst: &CoverInstance<W>, method: CoverMethod, budget: ExactBudget) -> Result<CoverSolution<W>> {
    Ok(match method {
        CoverMethod::Pricing => pricing_cover(inst),
        CoverMethod::Greedy => greedy_cover(inst),
        CoverMethod::GreedyWeighted => greedy_weighted_cover(inst),
        CoverMethod::Exact => exact_cover(inst, budget)?,
    })
}

/// Exact minimum weight cover by branch-and-bound.
///
/// Graphs (`r = 2`) go to a branch-and-reduce search with an LP bound.
/// Hypergraphs are split into connected components, each solved
/// independently: the best of pricing and greedy seeds the upper bound, the
/// search branches on the free node of highest uncovered degree, and a
/// greedy dual packing over the uncovered edges gives the lower bound.
/// Either way a second pass fixes nodes in index order to recover the
/// lexicographically smallest optimal set.
pub fn exact_cover<W: Weight>(inst: &CoverInstance<W>, budget: ExactBudget) -> Result<CoverSolution<W>> {
    if inst.edge_count() > budget.max_edges {
        return Err(Error::BudgetExceeded {
            what: "edges",
            size: inst.edge_count() as u64,
            limit: budget.max_edges as u64,
        });
    }
    let mut branches = 0u64;
    let mut selected = Vec::new();
    if inst.arity == 2 {
        let seed = W::min_of(pricing_cover(inst).total_weight, greedy_cover(inst).total_weight);
        selected = crate::vc::exact_graph_cover(inst, budget.max_branches, &mut branches, seed)?;
    } else {
        for (nodes, edges) in components(inst) {
            let local = localize(inst, &nodes, &edges);
            let mut search = Search::new(&local, budget.max_branches, &mut branches);
            for v in search.solve()? {
                selected.push(nodes[v]);
            }
        }
    }
    selected.sort_unstable();
    let total = inst.weight_of(&selected);
    Ok(CoverSolution {
        selected,
        total_weight: total,
        method: CoverMethod::Exact,
        lower_bound: Some(total),
        arity: inst.arity,
    })
}

/// Connected components that contain at least one edge: (sorted nodes,
/// edge ids).
fn components<W: Weight>(inst: &CoverInstance<W>) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = inst.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in inst.edges() {
        let r = find(&mut parent, e[0]);
        for &v in &e[1..] {
            let s = find(&mut parent, v);
            if s != r {
                parent[s] = r;
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (j, e) in inst.edges().enumerate() {
        let r = find(&mut parent, e[0]);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push((Vec::new(), Vec::new()));
        }
        out[slot[r]].1.push(j);
    }
    for v in 0..n {
        let r = find(&mut parent, v);
        if slot[r] != usize::MAX {
            out[slot[r]].0.push(v);
        }
    }
    out
}

fn localize<W: Weight>(inst: &CoverInstance<W>, nodes: &[usize], edges: &[usize]) -> CoverInstance<W> {
    let mut local_id = std::collections::HashMap::with_capacity(nodes.len());
    for (i, &v) in nodes.iter().enumerate() {
        local_id.insert(v, i);
    }
    let weights = nodes.iter().map(|&v| inst.weights[v]).collect();
    let flat = edges
        .iter()
        .flat_map(|&j| inst.edge(j).iter().map(|v| local_id[v]))
        .collect();
    CoverInstance {
        weights,
        arity: inst.arity,
        flat,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Free,
    In,
    Out,
}

enum Goal<W> {
    /// Minimize; prune when the bound reaches the incumbent.
    Optimize,
    /// Stop at the first cover of weight at most the target.
    AtMost(W),
}

struct Search<'a, W> {
    inst: &'a CoverInstance<W>,
    inc: Vec<Vec<usize>>,
    status: Vec<Status>,
    covered: Vec<u32>,
    free: Vec<u32>,
    best: Option<(W, Vec<bool>)>,
    max_branches: Option<u64>,
    branches: &'a mut u64,
}

impl<'a, W: Weight> Search<'a, W> {
    fn new(inst: &'a CoverInstance<W>, max_branches: Option<u64>, branches: &'a mut u64) -> Self {
        Search {
            inst,
            inc: inst.incidence(),
            status: vec![Status::Free; inst.node_count()],
            covered: vec![0; inst.edge_count()],
            free: vec![inst.arity as u32; inst.edge_count()],
            best: None,
            max_branches,
            branches,
        }
    }

    fn solve(&mut self) -> Result<Vec<usize>> {
        let n = self.inst.node_count();
        let seeds = [pricing_cover(self.inst), greedy_cover(self.inst)];
        let seed = seeds
            .into_iter()
            .reduce(|a, b| if b.total_weight < a.total_weight { b } else { a })
            .expect("two seeds");
        self.best = Some((seed.total_weight, seed.membership(n)));
        self.run(W::zero(), &Goal::Optimize)?;
        let (opt, mut incumbent) = self.best.take().expect("seeded incumbent");

        // lexicographic pass: prefer including each node in index order
        for v in 0..n {
            if incumbent[v] {
                self.set(v, Status::In);
                continue;
            }
            self.set(v, Status::In);
            let base = self.fixed_cost();
            self.best = None;
            self.run(base, &Goal::AtMost(opt))?;
            match self.best.take() {
                Some((_, found)) => incumbent = found,
                None => {
                    self.unset(v, Status::In);
                    self.set(v, Status::Out);
                }
            }
        }
        Ok((0..n).filter(|&v| incumbent[v]).collect())
    }

    fn fixed_cost(&self) -> W {
        W::total(
            (0..self.inst.node_count())
                .filter(|&v| self.status[v] == Status::In)
                .map(|v| self.inst.weights[v]),
        )
    }

    fn set(&mut self, v: usize, s: Status) {
        debug_assert_eq!(self.status[v], Status::Free);
        self.status[v] = s;
        for &j in &self.inc[v] {
            self.free[j] -= 1;
            if s == Status::In {
                self.covered[j] += 1;
            }
        }
    }

    fn unset(&mut self, v: usize, s: Status) {
        debug_assert_eq!(self.status[v], s);
        self.status[v] = Status::Free;
        for &j in &self.inc[v] {
            self.free[j] += 1;
            if s == Status::In {
                self.covered[j] -= 1;
            }
        }
    }

    /// Returns true when the goal is met and the search should stop.
    fn run(&mut self, cost: W, goal: &Goal<W>) -> Result<bool> {
        *self.branches += 1;
        if let Some(limit) = self.max_branches {
            if *self.branches > limit {
                return Err(Error::BudgetExceeded {
                    what: "branch-and-bound nodes",
                    size: *self.branches,
                    limit,
                });
            }
        }

        // unit propagation: an uncovered edge with one free member forces it
        let mut forced = Vec::new();
        for j in 0..self.inst.edge_count() {
            if self.covered[j] > 0 {
                continue;
            }
            match self.free[j] {
                0 => {
                    for &v in forced.iter().rev() {
                        self.unset(v, Status::In);
                    }
                    return Ok(false);
                }
                1 => {
                    let v = *self
                        .inst
                        .edge(j)
                        .iter()
                        .find(|&&v| self.status[v] == Status::Free)
                        .expect("one free member");
                    self.set(v, Status::In);
                    forced.push(v);
                }
                _ => {}
            }
        }
        let cost = cost + W::total(forced.iter().map(|&v| self.inst.weights[v]));
        let done = self.branch(cost, goal);
        for &v in forced.iter().rev() {
            self.unset(v, Status::In);
        }
        done
    }

    fn branch(&mut self, cost: W, goal: &Goal<W>) -> Result<bool> {
        let lower = cost + self.dual_bound();
        let prune = match (goal, &self.best) {
            (Goal::Optimize, Some((best, _))) => lower >= *best,
            (Goal::Optimize, None) => false,
            (Goal::AtMost(target), _) => lower > *target,
        };
        if prune {
            return Ok(false);
        }

        let mut pick: Option<(usize, usize)> = None;
        for v in 0..self.inst.node_count() {
            if self.status[v] != Status::Free {
                continue;
            }
            let d = self.inc[v].iter().filter(|&&j| self.covered[j] == 0).count();
            if d > 0 && pick.is_none_or(|(_, bd)| d > bd) {
                pick = Some((v, d));
            }
        }
        let Some((v, _)) = pick else {
            // every edge covered
            let membership: Vec<bool> = self.status.iter().map(|&s| s == Status::In).collect();
            return Ok(match goal {
                Goal::Optimize => {
                    self.best = Some((cost, membership));
                    false
                }
                Goal::AtMost(_) => {
                    self.best = Some((cost, membership));
                    true
                }
            });
        };

        self.set(v, Status::In);
        let done = self.run(cost + self.inst.weights[v], goal);
        self.unset(v, Status::In);
        if done? {
            return Ok(true);
        }
        self.set(v, Status::Out);
        let done = self.run(cost, goal);
        self.unset(v, Status::Out);
        done
    }

    /// Feasible dual for the uncovered edges over free nodes; a lower bound
    /// on the cost still to pay.
    fn dual_bound(&self) -> W {
        let mut residual: Vec<W> = self.inst.weights.clone();
        let mut total = W::zero();
        for j in 0..self.inst.edge_count() {
            if self.covered[j] > 0 {
                continue;
            }
            let e = self.inst.edge(j);
            let mut delta: Option<W> = None;
            for &v in e {
                if self.status[v] != Status::Free {
                    continue;
                }
                delta = Some(match delta {
                    None => residual[v],
                    Some(d) => W::min_of(d, residual[v]),
                });
            }
            let Some(delta) = delta else { continue };
            if delta <= W::zero() {
                continue;
            }
            for &v in e {
                if self.status[v] == Status::Free {
                    residual[v] = residual[v] - delta;
                }
            }
            total = total + delta;
        }
        total
    }
}
