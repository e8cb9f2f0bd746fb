//! Max-flow (Dinic) used for the vertex cover LP bound.

use std::collections::VecDeque;

use crate::scalar::Weight;

pub(crate) struct FlowNet<W> {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<W>,
}

impl<W: Weight> FlowNet<W> {
    pub fn new(n: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, a: usize, b: usize, c: W) {
        self.adj[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.adj[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(W::zero());
    }

    fn levels(&self, s: usize) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &arc in &self.adj[x] {
                let y = self.to[arc];
                if level[y] == u32::MAX && self.cap[arc] > W::zero() {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        level
    }

    fn push(&mut self, x: usize, t: usize, limit: W, level: &[u32], next: &mut [usize]) -> W {
        if x == t {
            return limit;
        }
        while next[x] < self.adj[x].len() {
            let arc = self.adj[x][next[x]];
            let y = self.to[arc];
            if level[y] == level[x] + 1 && self.cap[arc] > W::zero() {
                let got = self.push(y, t, W::min_of(limit, self.cap[arc]), level, next);
                if got > W::zero() {
                    self.cap[arc] = self.cap[arc] - got;
                    self.cap[arc ^ 1] = self.cap[arc ^ 1] + got;
                    return got;
                }
            }
            next[x] += 1;
        }
        W::zero()
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l != u32::MAX).collect()
    }

    /// Value of a maximum `s`-`t` flow; `unbounded` must exceed every cut.
    pub fn max_flow(&mut self, s: usize, t: usize, unbounded: W) -> W {
        let mut total = W::zero();
        loop {
            let level = self.levels(s);
            if level[t] == u32::MAX {
                return total;
            }
            let mut next = vec![0; self.adj.len()];
            loop {
                let got = self.push(s, t, unbounded, &level, &mut next);
                if got <= W::zero() {
                    break;
                }
                total = total + got;
            }
        }
    }
}
