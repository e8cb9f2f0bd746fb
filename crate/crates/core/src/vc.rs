//! Exact minimum weight vertex cover on graphs by branch-and-reduce.
//!
//! Every search node reduces its residual graph to a fixpoint, bounds it by
//! the LP relaxation (half a max flow in the bipartite double cover), splits
//! it into connected components solved independently, and otherwise
//! branches on a node of maximum residual degree (lowest index first).
//!
//! Reductions keep at least one optimal cover of the residual graph:
//!
//! - degree zero: drop the node;
//! - `w(v) >= w(N(v))`: take all of `N(v)`;
//! - degree one with `w(v) < w(u)`: fold `v` into `u` (`w(u) -= w(v)`, and
//!   `v` joins the cover exactly when `u` does not);
//! - domination, `N[v] ⊆ N[u]` and `w(u) <= w(v)`: take `u`;
//! - LP persistency: nodes at 1 in a half-integral LP optimum are taken,
//!   nodes at 0 dropped.

use crate::cover::CoverInstance;
use crate::error::{Error, Result};
use crate::flow::FlowNet;
use crate::scalar::Weight;

#[derive(Clone)]
struct Residual<W> {
    alive: Vec<bool>,
    deg: Vec<u32>,
    weight: Vec<W>,
    cost: W,
    taken: Vec<usize>,
    /// `(v, u)`: `v` is in the cover exactly when `u` is not.
    folds: Vec<(usize, usize)>,
}

#[derive(Clone, Copy)]
struct Limit<W> {
    bound: W,
    strict: bool,
}

impl<W: Weight> Limit<W> {
    fn admits(&self, c: W) -> bool {
        if self.strict {
            c < self.bound
        } else {
            c <= self.bound
        }
    }
}

struct Solver<'a, W> {
    adj: Vec<Vec<usize>>,
    unbounded: W,
    max_branches: Option<u64>,
    branches: &'a mut u64,
}

/// Lexicographically smallest minimum weight cover of a 2-uniform instance.
pub(crate) fn exact_graph_cover<W: Weight>(
    inst: &CoverInstance<W>,
    max_branches: Option<u64>,
    branches: &mut u64,
    seed: W,
) -> Result<Vec<usize>> {
    debug_assert_eq!(inst.arity(), 2);
    let n = inst.node_count();
    let mut adj = vec![Vec::new(); n];
    for e in inst.edges() {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut solver = Solver {
        adj,
        unbounded: W::total(inst.weights().iter().copied()) + W::one(),
        max_branches,
        branches,
    };
    let root = Residual {
        alive: vec![true; n],
        deg: solver.adj.iter().map(|a| a.len() as u32).collect(),
        weight: inst.weights().to_vec(),
        cost: W::zero(),
        taken: Vec::new(),
        folds: Vec::new(),
    };

    let first = solver
        .search(
            root.clone(),
            Limit {
                bound: seed,
                strict: false,
            },
            None,
        )?
        .expect("the seed cover is within its own weight");
    let opt = first.cost;
    let mut incumbent = reconstruct(&first, n);

    // lexicographic pass: include each node in index order when possible
    let mut fixed: Vec<Option<bool>> = vec![None; n];
    for v in 0..n {
        if incumbent[v] {
            fixed[v] = Some(true);
            continue;
        }
        fixed[v] = Some(true);
        let mut r = root.clone();
        let feasible = solver.apply(&mut r, &fixed);
        let found = if feasible {
            solver.search(
                r,
                Limit {
                    bound: opt,
                    strict: false,
                },
                Some(opt),
            )?
        } else {
            None
        };
        match found {
            Some(s) => incumbent = reconstruct(&s, n),
            None => fixed[v] = Some(false),
        }
    }
    Ok((0..n).filter(|&v| incumbent[v]).collect())
}

fn reconstruct<W>(r: &Residual<W>, n: usize) -> Vec<bool> {
    let mut member = vec![false; n];
    for &v in &r.taken {
        member[v] = true;
    }
    for &(v, u) in r.folds.iter().rev() {
        member[v] = !member[u];
    }
    member
}

impl<W: Weight> Solver<'_, W> {
    fn remove(&self, r: &mut Residual<W>, v: usize) {
        r.alive[v] = false;
        for &u in &self.adj[v] {
            if r.alive[u] {
                r.deg[u] -= 1;
            }
        }
    }

    fn take(&self, r: &mut Residual<W>, v: usize) {
        r.cost = r.cost + r.weight[v];
        r.taken.push(v);
        self.remove(r, v);
    }

    fn take_neighbors(&self, r: &mut Residual<W>, v: usize) {
        for &u in &self.adj[v] {
            if r.alive[u] {
                self.take(r, u);
            }
        }
        self.remove(r, v);
    }

    /// Applies fixed decisions to a fresh residual; false if they clash.
    fn apply(&self, r: &mut Residual<W>, fixed: &[Option<bool>]) -> bool {
        for (v, f) in fixed.iter().enumerate() {
            match f {
                Some(true) if r.alive[v] => self.take(r, v),
                Some(false) => {
                    if !r.alive[v] || self.adj[v].iter().any(|&u| fixed[u] == Some(false)) {
                        return false;
                    }
                    self.take_neighbors(r, v);
                }
                _ => {}
            }
        }
        true
    }

    fn alive_neighbors<'b>(&'b self, r: &'b Residual<W>, v: usize) -> impl Iterator<Item = usize> + 'b {
        self.adj[v].iter().copied().filter(move |&u| r.alive[u])
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// One sweep of the combinatorial reductions.
    fn sweep(&self, r: &mut Residual<W>) -> bool {
        let n = r.alive.len();
        let mut changed = false;
        for v in 0..n {
            if !r.alive[v] {
                continue;
            }
            if r.deg[v] == 0 {
                self.remove(r, v);
                changed = true;
                continue;
            }
            let around = W::total(self.alive_neighbors(r, v).map(|u| r.weight[u]));
            if r.weight[v] >= around {
                self.take_neighbors(r, v);
                changed = true;
                continue;
            }
            if r.deg[v] == 1 {
                let u = self.alive_neighbors(r, v).next().expect("one neighbor");
                r.cost = r.cost + r.weight[v];
                r.weight[u] = r.weight[u] - r.weight[v];
                r.folds.push((v, u));
                self.remove(r, v);
                changed = true;
                continue;
            }
            let dominated = self.alive_neighbors(r, v).find(|&u| {
                r.weight[u] <= r.weight[v]
                    && r.deg[u] >= r.deg[v]
                    && self.alive_neighbors(r, v).all(|x| x == u || self.adjacent(u, x))
            });
            if let Some(u) = dominated {
                self.take(r, u);
                changed = true;
            }
        }
        changed
    }

    /// LP optimum (rounded up for integer weights) and persistency fixes.
    fn lp(&self, r: &mut Residual<W>) -> (W, bool) {
        let n = r.alive.len();
        let mut net = FlowNet::new(2 + 2 * n);
        let mut any = false;
        for v in 0..n {
            if !r.alive[v] {
                continue;
            }
            any = true;
            net.add_arc(0, 2 + 2 * v, r.weight[v]);
            net.add_arc(3 + 2 * v, 1, r.weight[v]);
            for u in self.alive_neighbors(r, v) {
                net.add_arc(2 + 2 * v, 3 + 2 * u, self.unbounded);
            }
        }
        if !any {
            return (W::zero(), false);
        }
        let flow = net.max_flow(0, 1, self.unbounded);
        let side = net.source_side(0);
        let mut ones = Vec::new();
        let mut zeros = Vec::new();
        for v in (0..n).filter(|&v| r.alive[v]) {
            let halves = u8::from(!side[2 + 2 * v]) + u8::from(side[3 + 2 * v]);
            match halves {
                2 => ones.push(v),
                0 => zeros.push(v),
                _ => {}
            }
        }
        let changed = !ones.is_empty() || !zeros.is_empty();
        for v in ones {
            if r.alive[v] {
                self.take(r, v);
            }
        }
        for v in zeros {
            if r.alive[v] {
                self.remove(r, v);
            }
        }
        (flow.half_up(), changed)
    }

    fn reduce(&self, r: &mut Residual<W>) -> W {
        loop {
            while self.sweep(r) {}
            let (lb, changed) = self.lp(r);
            if !changed {
                return lb;
            }
        }
    }

    fn components(&self, r: &Residual<W>) -> Vec<Vec<usize>> {
        let n = r.alive.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !r.alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut at = 0;
            while at < comp.len() {
                let x = comp[at];
                at += 1;
                for u in self.alive_neighbors(r, x) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn restrict(r: &Residual<W>, comp: &[usize]) -> Residual<W> {
        let mut alive = vec![false; r.alive.len()];
        for &v in comp {
            alive[v] = true;
        }
        Residual {
            alive,
            deg: r.deg.clone(),
            weight: r.weight.clone(),
            cost: W::zero(),
            taken: Vec::new(),
            folds: Vec::new(),
        }
    }

    fn tick(&mut self) -> Result<()> {
        *self.branches += 1;
        match self.max_branches {
            Some(limit) if *self.branches > limit => Err(Error::BudgetExceeded {
                what: "branch-and-bound nodes",
                size: *self.branches,
                limit,
            }),
            _ => Ok(()),
        }
    }

    /// Optimal completion of `r` if its cost is admitted by `limit`; with
    /// `stop`, any admitted completion of cost at most `stop` is returned
    /// at once.
    fn search(&mut self, mut r: Residual<W>, limit: Limit<W>, stop: Option<W>) -> Result<Option<Residual<W>>> {
        self.tick()?;
        let lb = self.reduce(&mut r);
        let floor = r.cost + lb;
        if !limit.admits(floor) {
            return Ok(None);
        }
        let comps = self.components(&r);
        if comps.is_empty() {
            return Ok(Some(r));
        }
        if comps.len() > 1 {
            return self.split(r, comps, limit);
        }

        let v = (0..r.alive.len())
            .filter(|&v| r.alive[v])
            .max_by(|&a, &b| r.deg[a].cmp(&r.deg[b]).then(b.cmp(&a)))
            .expect("non-empty component");
        let mut best: Option<Residual<W>> = None;
        let mut limit = limit;
        for include in [true, false] {
            let mut child = r.clone();
            if include {
                self.take(&mut child, v);
            } else {
                self.take_neighbors(&mut child, v);
            }
            if let Some(s) = self.search(child, limit, stop)? {
                if stop.is_some_and(|t| s.cost <= t) || s.cost <= floor {
                    return Ok(Some(s));
                }
                limit = Limit {
                    bound: s.cost,
                    strict: true,
                };
                best = Some(s);
            }
        }
        Ok(best)
    }

    fn split(
        &mut self,
        mut r: Residual<W>,
        mut comps: Vec<Vec<usize>>,
        limit: Limit<W>,
    ) -> Result<Option<Residual<W>>> {
        comps.sort_by_key(|c| (c.len(), c[0]));
        let mut bounds = Vec::with_capacity(comps.len());
        for c in &comps {
            bounds.push(self.lp(&mut Self::restrict(&r, c)).0);
        }
        let mut rest = W::total(bounds.iter().copied());
        for (c, lb) in comps.iter().zip(&bounds) {
            rest = rest - *lb;
            let sub = Self::restrict(&r, c);
            // remaining budget after what is already paid and the other
            // components' lower bounds
            let paid = r.cost + rest;
            if !limit.admits(paid + *lb) {
                return Ok(None);
            }
            let sub_limit = Limit {
                bound: limit.bound - paid,
                strict: limit.strict,
            };
            let Some(s) = self.search(sub, sub_limit, None)? else {
                return Ok(None);
            };
            r.cost = r.cost + s.cost;
            r.taken.extend(s.taken);
            r.folds.extend(s.folds);
            for &v in c {
                r.alive[v] = false;
            }
        }
        Ok(Some(r))
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::cover::{exact_cover, CoverInstance, ExactBudget};

    /// Lexicographically first minimum cover by enumerating all subsets in
    /// an order where smaller index sets come first.
    fn brute(weights: &[u64], edges: &[Vec<usize>]) -> (u64, Vec<usize>) {
        let n = weights.len();
        let mut best: Option<(u64, Vec<usize>)> = None;
        for mask in 0u32..1 << n {
            if !edges.iter().all(|e| e.iter().any(|&v| mask >> v & 1 == 1)) {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let w: u64 = set.iter().map(|&v| weights[v]).sum();
            let better = match &best {
                None => true,
                Some((bw, bs)) => w < *bw || (w == *bw && set < *bs),
            };
            if better {
                best = Some((w, set));
            }
        }
        best.expect("full set covers")
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..400 {
            let n = rng.gen_range(2..=12);
            let p = [0.2, 0.35, 0.5, 0.8][round % 4];
            let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        edges.push(vec![a, b]);
                    }
                }
            }
            let inst = CoverInstance::new(weights.clone(), 2, &edges).unwrap();
            let got = exact_cover(&inst, ExactBudget::default()).unwrap();
            let (w, set) = brute(&weights, &edges);
            assert_eq!(got.total_weight, w, "round {round}");
            assert_eq!(got.selected, set, "round {round}");
        }
    }
}
