//! Reference solvers for tiny instances, written against the raw edge sets
//! only. Nothing here calls into the library except to read a graph.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use mlstc::{GeneratorConfig, GeneratorMode, MultilayerGraph};

pub type Pair = (u32, u32);

/// Plain copy of a multilayer graph: node count plus one pair set per layer.
#[derive(Clone, Debug)]
pub struct Raw {
    pub n: u32,
    pub layers: Vec<BTreeSet<Pair>>,
}

fn pair(a: u32, b: u32) -> Pair {
    (a.min(b), a.max(b))
}

impl Raw {
    pub fn of(g: &MultilayerGraph) -> Self {
        let layers = g
            .layers()
            .iter()
            .map(|s| s.iter().map(|e| pair(e.u().0, e.v().0)).collect())
            .collect();
        Raw {
            n: g.node_count() as u32,
            layers,
        }
    }

    pub fn total(&self) -> u64 {
        self.layers.iter().map(|l| l.len() as u64).sum()
    }

    /// Aggregated pairs with their layer counts, in sorted order.
    pub fn aggregated(&self) -> Vec<(Pair, u64)> {
        let mut m: BTreeMap<Pair, u64> = BTreeMap::new();
        for l in &self.layers {
            for &p in l {
                *m.entry(p).or_default() += 1;
            }
        }
        m.into_iter().collect()
    }

    /// Open triples `(center, a, b)` of layer `i`, `a < b`.
    pub fn wedges(&self, i: usize) -> Vec<(u32, u32, u32)> {
        let l = &self.layers[i];
        let mut out = Vec::new();
        for c in 0..self.n {
            let nb: Vec<u32> = (0..self.n).filter(|&x| x != c && l.contains(&pair(c, x))).collect();
            for (s, &a) in nb.iter().enumerate() {
                for &b in &nb[s + 1..] {
                    if !l.contains(&pair(a, b)) {
                        out.push((c, a, b));
                    }
                }
            }
        }
        out
    }

    /// Number of layers in which the pair closes at least one wedge.
    pub fn closable(&self, p: Pair) -> u64 {
        (0..self.layers.len())
            .filter(|&i| self.wedges(i).iter().any(|&(_, a, b)| (a, b) == p))
            .count() as u64
    }
}

/// Minimum MinMultiLayerSTC objective over consistent labelings, by
/// depth-first enumeration of one label per aggregated pair. Branches whose
/// weak weight already reaches the best found are dropped.
pub fn brute_min_stc(r: &Raw) -> u64 {
    let agg = r.aggregated();
    let idx: HashMap<Pair, usize> = agg.iter().enumerate().map(|(i, (p, _))| (*p, i)).collect();
    // conflicts[j]: legs that pair with j in some wedge and come earlier in the order
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); agg.len()];
    for i in 0..r.layers.len() {
        for (c, a, b) in r.wedges(i) {
            let (x, y) = (idx[&pair(c, a)], idx[&pair(c, b)]);
            conflicts[x.max(y)].push(x.min(y));
        }
    }
    let weights: Vec<u64> = agg.iter().map(|(_, m)| *m).collect();
    let mut strong = vec![false; agg.len()];
    let mut best = r.total() + 1;
    fn go(j: usize, cost: u64, w: &[u64], conf: &[Vec<usize>], strong: &mut [bool], best: &mut u64) {
        if cost >= *best {
            return;
        }
        if j == w.len() {
            *best = cost;
            return;
        }
        if conf[j].iter().all(|&x| !strong[x]) {
            strong[j] = true;
            go(j + 1, cost, w, conf, strong, best);
            strong[j] = false;
        }
        go(j + 1, cost + w[j], w, conf, strong, best);
    }
    go(0, 0, &weights, &conflicts, &mut strong, &mut best);
    best
}

/// Minimum of `weak + d_k` over all per-layer labelings (no consistency
/// requirement). Exponential in the total edge count.
pub fn brute_all_labelings(r: &Raw) -> u64 {
    let inst: Vec<(usize, Pair)> = r
        .layers
        .iter()
        .enumerate()
        .flat_map(|(i, l)| l.iter().map(move |&p| (i, p)))
        .collect();
    assert!(inst.len() <= 20, "too many instances for full enumeration");
    let pos: HashMap<(usize, Pair), usize> = inst.iter().enumerate().map(|(k, x)| (*x, k)).collect();
    let wedges: Vec<(usize, usize)> = (0..r.layers.len())
        .flat_map(|i| r.wedges(i).into_iter().map(move |w| (i, w)))
        .map(|(i, (c, a, b))| (pos[&(i, pair(c, a))], pos[&(i, pair(c, b))]))
        .collect();
    let mut best = u64::MAX;
    for mask in 0u32..(1 << inst.len()) {
        let strong = |k: usize| mask >> k & 1 == 1;
        if wedges.iter().any(|&(x, y)| strong(x) && strong(y)) {
            continue;
        }
        let mut s: BTreeMap<Pair, (u64, u64)> = BTreeMap::new();
        for (k, &(_, p)) in inst.iter().enumerate() {
            let e = s.entry(p).or_default();
            if strong(k) {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        let weak: u64 = s.values().map(|c| c.1).sum();
        let d: u64 = s.values().filter(|c| c.1 > 0).map(|c| c.0).sum();
        best = best.min(weak + d);
    }
    best
}

/// How insertions are charged by [`brute_plus`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Charge {
    /// One unit per layer where the pair closes a wedge with two strong legs.
    PerNeededLayer,
    /// An inserted pair is added to every layer where it closes any wedge.
    EveryClosableLayer,
    /// Like `EveryClosableLayer`, and an existing pair labeled weak is also
    /// added wherever it closes a wedge.
    WeakMeansEverywhere,
}

/// Minimum MinMultiLayerSTC+ cost over disagreement-free labelings.
///
/// For a fixed strong set the insertions are forced: the closing pairs of
/// wedges whose two legs are strong, which then must not be strong.
pub fn brute_plus(r: &Raw, charge: Charge) -> u64 {
    let agg = r.aggregated();
    let idx: HashMap<Pair, usize> = agg.iter().enumerate().map(|(i, (p, _))| (*p, i)).collect();
    struct W {
        other: usize,
        layer: usize,
        closing: Pair,
    }
    // wedges listed under the later of their two legs
    let mut at: Vec<Vec<W>> = (0..agg.len()).map(|_| Vec::new()).collect();
    for i in 0..r.layers.len() {
        for (c, a, b) in r.wedges(i) {
            let (x, y) = (idx[&pair(c, a)], idx[&pair(c, b)]);
            at[x.max(y)].push(W {
                other: x.min(y),
                layer: i,
                closing: (a, b),
            });
        }
    }
    let closable: HashMap<Pair, u64> = {
        let mut m: HashMap<Pair, BTreeSet<usize>> = HashMap::new();
        for i in 0..r.layers.len() {
            for (_, a, b) in r.wedges(i) {
                m.entry((a, b)).or_default().insert(i);
            }
        }
        m.into_iter().map(|(p, s)| (p, s.len() as u64)).collect()
    };
    let weak_cost: Vec<u64> = agg
        .iter()
        .map(|(p, m)| match charge {
            Charge::WeakMeansEverywhere => m + closable.get(p).copied().unwrap_or(0),
            _ => *m,
        })
        .collect();

    struct S<'a> {
        agg: &'a [(Pair, u64)],
        idx: &'a HashMap<Pair, usize>,
        at: &'a [Vec<W>],
        closable: &'a HashMap<Pair, u64>,
        weak_cost: &'a [u64],
        charge: Charge,
        strong: Vec<Option<bool>>,
        need_layer: HashMap<(usize, Pair), u32>,
        need_pair: HashMap<Pair, u32>,
        best: u64,
    }

    impl S<'_> {
        /// Cost of marking `closing` needed in `layer`, or `None` if it is strong.
        fn add_need(&mut self, layer: usize, closing: Pair) -> Option<u64> {
            if let Some(&k) = self.idx.get(&closing) {
                if self.strong[k] == Some(true) {
                    return None;
                }
            }
            let l = self.need_layer.entry((layer, closing)).or_default();
            *l += 1;
            let first_in_layer = *l == 1;
            let p = self.need_pair.entry(closing).or_default();
            *p += 1;
            let first_anywhere = *p == 1;
            let existing_weak = self.idx.get(&closing).is_some_and(|&k| self.strong[k] == Some(false));
            Some(match self.charge {
                Charge::PerNeededLayer => first_in_layer as u64,
                Charge::EveryClosableLayer if first_anywhere => self.closable[&closing],
                Charge::WeakMeansEverywhere if first_anywhere && !existing_weak => self.closable[&closing],
                _ => 0,
            })
        }

        fn drop_need(&mut self, layer: usize, closing: Pair) {
            *self.need_layer.get_mut(&(layer, closing)).unwrap() -= 1;
            *self.need_pair.get_mut(&closing).unwrap() -= 1;
        }

        fn go(&mut self, j: usize, cost: u64) {
            if cost >= self.best {
                return;
            }
            if j == self.agg.len() {
                self.best = cost;
                return;
            }
            let p = self.agg[j].0;
            // strong: the pair must not be a needed insertion anywhere
            if self.need_pair.get(&p).copied().unwrap_or(0) == 0 {
                self.strong[j] = Some(true);
                let mut added = Vec::new();
                let mut extra = 0;
                let mut ok = true;
                for w in &self.at[j] {
                    if self.strong[w.other] == Some(true) {
                        match self.add_need(w.layer, w.closing) {
                            Some(c) => {
                                extra += c;
                                added.push((w.layer, w.closing));
                            }
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                }
                if ok {
                    self.go(j + 1, cost + extra);
                }
                for (l, c) in added {
                    self.drop_need(l, c);
                }
            }
            // weak: under WeakMeansEverywhere the pair's insertions are
            // already paid if it is needed; otherwise they come with the weak cost
            self.strong[j] = Some(false);
            let mut c = self.weak_cost[j];
            if self.charge == Charge::WeakMeansEverywhere && self.need_pair.get(&p).copied().unwrap_or(0) > 0 {
                c -= self.closable.get(&p).copied().unwrap_or(0);
            }
            self.go(j + 1, cost + c);
            self.strong[j] = None;
        }
    }

    let mut s = S {
        agg: &agg,
        idx: &idx,
        at: &at,
        closable: &closable,
        weak_cost: &weak_cost,
        charge,
        strong: vec![None; agg.len()],
        need_layer: HashMap::new(),
        need_pair: HashMap::new(),
        best: u64::MAX,
    };
    s.go(0, 0);
    s.best
}

/// Seeded corpus: sizes cycle through `nodes` and `layers`, densities
/// through 0.2/0.4/0.6, alternating the two generator modes.
pub fn corpus(count: u64, nodes: &[u32], layers: &[usize], seed0: u64) -> Vec<(GeneratorConfig, MultilayerGraph)> {
    let ps = [0.2, 0.4, 0.6];
    (0..count)
        .map(|s| {
            let n = nodes[(s as usize) % nodes.len()];
            let k = layers[(s as usize / nodes.len()) % layers.len()];
            let p = ps[(s as usize / 7) % 3];
            let mode = if s % 2 == 0 {
                GeneratorMode::Independent
            } else {
                GeneratorMode::Correlated { epsilon: 0.3 }
            };
            let cfg = GeneratorConfig {
                nodes: n,
                layers: k,
                p,
                seed: seed0 + s,
                mode,
            };
            let g = mlstc::generate(&cfg).expect("valid generator config");
            (cfg, g)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// Name, terms, relation, right-hand side.
pub type Row = (String, Vec<(i64, usize)>, Rel, i64);

/// A 0/1 program read back from LP text.
#[derive(Clone, Debug, Default)]
pub struct Lp {
    pub maximize: bool,
    pub vars: Vec<String>,
    pub objective: Vec<(i64, usize)>,
    pub rows: Vec<Row>,
}

impl Lp {
    pub fn var(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Reads the subset of the LP format the exporter writes: one objective,
/// named linear rows with integer coefficients, and a `Binary` section.
/// Rows may wrap onto continuation lines.
pub fn parse_lp(text: &str) -> Lp {
    let mut lp = Lp::default();
    let mut section = "";
    let mut tokens: Vec<String> = Vec::new();
    let mut obj_tokens: Vec<String> = Vec::new();
    let mut row_tokens: Vec<String> = Vec::new();
    let mut binaries: Vec<String> = Vec::new();
    for line in text.lines() {
        let line = line.split('\\').next().unwrap_or("");
        let t = line.trim();
        match t.to_ascii_lowercase().as_str() {
            "minimize" | "maximize" => {
                lp.maximize = t.eq_ignore_ascii_case("maximize");
                section = "obj";
                continue;
            }
            "subject to" => {
                section = "rows";
                continue;
            }
            "binary" | "binaries" => {
                section = "bin";
                continue;
            }
            "end" => {
                section = "";
                continue;
            }
            _ => {}
        }
        let words = t.split_whitespace().map(str::to_string);
        match section {
            "obj" => obj_tokens.extend(words),
            "rows" => row_tokens.extend(words),
            "bin" => binaries.extend(words),
            _ => tokens.extend(words),
        }
    }
    lp.vars = binaries;
    let index: HashMap<String, usize> = lp.vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let terms = |ts: &[String]| -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        let mut sign = 1;
        let mut coef: Option<i64> = None;
        for t in ts {
            match t.as_str() {
                "+" => sign = 1,
                "-" => sign = -1,
                _ => {
                    if let Ok(c) = t.parse::<i64>() {
                        coef = Some(c);
                    } else {
                        let v = *index.get(t).unwrap_or_else(|| panic!("undeclared variable {t}"));
                        out.push((sign * coef.take().unwrap_or(1), v));
                        sign = 1;
                    }
                }
            }
        }
        out
    };
    let start = usize::from(obj_tokens.first().is_some_and(|t| t.ends_with(':')));
    lp.objective = terms(&obj_tokens[start..]);

    let mut k = 0;
    while k < row_tokens.len() {
        let name = row_tokens[k].trim_end_matches(':').to_string();
        assert!(row_tokens[k].ends_with(':'), "unnamed row at {}", row_tokens[k]);
        k += 1;
        let begin = k;
        while !matches!(row_tokens[k].as_str(), "<=" | ">=" | "=") {
            k += 1;
        }
        let lhs = terms(&row_tokens[begin..k]);
        let rel = match row_tokens[k].as_str() {
            "<=" => Rel::Le,
            ">=" => Rel::Ge,
            _ => Rel::Eq,
        };
        let rhs: i64 = row_tokens[k + 1].parse().expect("integer right-hand side");
        lp.rows.push((name, lhs, rel, rhs));
        k += 2;
    }
    assert!(tokens.is_empty() || tokens.iter().all(|t| t.is_empty()));
    lp
}

/// Objective value of an assignment, or `None` if a row is violated.
pub fn evaluate(lp: &Lp, x: &[bool]) -> Option<i64> {
    let lhs = |t: &[(i64, usize)]| t.iter().filter(|(_, v)| x[*v]).map(|(c, _)| c).sum::<i64>();
    for (_, t, rel, rhs) in &lp.rows {
        let s = lhs(t);
        let ok = match rel {
            Rel::Le => s <= *rhs,
            Rel::Ge => s >= *rhs,
            Rel::Eq => s == *rhs,
        };
        if !ok {
            return None;
        }
    }
    Some(lhs(&lp.objective))
}

/// Optimum over all 0/1 assignments. Small programs are enumerated
/// outright; larger ones by depth-first search that skips a subtree only
/// when some row can no longer be satisfied or the objective cannot improve.
pub fn lp_optimum(lp: &Lp) -> Option<i64> {
    let n = lp.vars.len();
    if n <= 20 {
        let mut best: Option<i64> = None;
        for mask in 0u64..(1 << n) {
            let x: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            if let Some(v) = evaluate(lp, &x) {
                best = Some(match best {
                    None => v,
                    Some(b) if lp.maximize => b.max(v),
                    Some(b) => b.min(v),
                });
            }
        }
        return best;
    }
    // minimize `sign * objective`
    let sign = if lp.maximize { -1 } else { 1 };
    let mut obj = vec![0i64; n];
    for &(c, v) in &lp.objective {
        obj[v] += sign * c;
    }
    let mut rows_of: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (r, (_, t, _, _)) in lp.rows.iter().enumerate() {
        for &(c, v) in t {
            rows_of[v].push((r, c));
        }
    }
    // per row: fixed part, and remaining min / max contributions
    let mut fixed = vec![0i64; lp.rows.len()];
    let mut lo: Vec<i64> = lp
        .rows
        .iter()
        .map(|(_, t, _, _)| t.iter().map(|(c, _)| (*c).min(0)).sum())
        .collect();
    let mut hi: Vec<i64> = lp
        .rows
        .iter()
        .map(|(_, t, _, _)| t.iter().map(|(c, _)| (*c).max(0)).sum())
        .collect();
    let rest_obj: Vec<i64> = {
        let mut s = vec![0i64; n + 1];
        for v in (0..n).rev() {
            s[v] = s[v + 1] + obj[v].min(0);
        }
        s
    };
    struct Ctx<'a> {
        lp: &'a Lp,
        obj: &'a [i64],
        rows_of: &'a [Vec<(usize, i64)>],
        rest_obj: &'a [i64],
        best: Option<i64>,
    }
    fn feasible(lp: &Lp, r: usize, fixed: &[i64], lo: &[i64], hi: &[i64]) -> bool {
        let (_, _, rel, rhs) = &lp.rows[r];
        let (a, b) = (fixed[r] + lo[r], fixed[r] + hi[r]);
        match rel {
            Rel::Le => a <= *rhs,
            Rel::Ge => b >= *rhs,
            Rel::Eq => a <= *rhs && b >= *rhs,
        }
    }
    fn go(cx: &mut Ctx, v: usize, val: i64, fixed: &mut [i64], lo: &mut [i64], hi: &mut [i64]) {
        if let Some(b) = cx.best {
            if val + cx.rest_obj[v] >= b {
                return;
            }
        }
        if v == cx.obj.len() {
            cx.best = Some(val);
            return;
        }
        for bit in [false, true] {
            for &(r, c) in &cx.rows_of[v] {
                lo[r] -= c.min(0);
                hi[r] -= c.max(0);
                if bit {
                    fixed[r] += c;
                }
            }
            let ok = cx.rows_of[v].iter().all(|&(r, _)| feasible(cx.lp, r, fixed, lo, hi));
            if ok {
                go(cx, v + 1, val + if bit { cx.obj[v] } else { 0 }, fixed, lo, hi);
            }
            for &(r, c) in &cx.rows_of[v] {
                lo[r] += c.min(0);
                hi[r] += c.max(0);
                if bit {
                    fixed[r] -= c;
                }
            }
        }
    }
    if !(0..lp.rows.len()).all(|r| feasible(lp, r, &fixed, &lo, &hi)) {
        return None;
    }
    let mut cx = Ctx {
        lp,
        obj: &obj,
        rows_of: &rows_of,
        rest_obj: &rest_obj,
        best: None,
    };
    go(&mut cx, 0, 0, &mut fixed, &mut lo, &mut hi);
    cx.best.map(|b| sign * b)
}
