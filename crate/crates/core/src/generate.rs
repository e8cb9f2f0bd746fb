//! Seeded random multilayer graphs.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mlgraph::MultilayerGraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeneratorMode {
    /// Every layer is an independent G(n, p).
    Independent,
    /// Layer 1 is G(n, p); every other layer toggles `⌊⌈ε·m⌉/2⌋` random
    /// pairs of it, so any two layers differ in at most `⌈ε·m⌉` pairs.
    Correlated { epsilon: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub nodes: u32,
    pub layers: usize,
    pub p: f64,
    pub seed: u64,
    pub mode: GeneratorMode,
}

impl GeneratorConfig {
    pub fn independent(nodes: u32, layers: usize, p: f64, seed: u64) -> Self {
        GeneratorConfig {
            nodes,
            layers,
            p,
            seed,
            mode: GeneratorMode::Independent,
        }
    }

    fn check(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::Usage("node count must be positive".into()));
        }
        if self.layers == 0 {
            return Err(Error::Usage("layer count must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Usage(format!("edge probability {} outside [0, 1]", self.p)));
        }
        if let GeneratorMode::Correlated { epsilon } = self.mode {
            if !(epsilon >= 0.0 && epsilon.is_finite()) {
                return Err(Error::Usage(format!("epsilon {epsilon} must be non-negative")));
            }
        }
        Ok(())
    }
}

fn pair_of(index: usize, n: u32) -> (u32, u32) {
    // row-major walk over u < v
    let mut rest = index as u64;
    let mut u = 0u32;
    loop {
        let row = u64::from(n - u - 1);
        if rest < row {
            return (u, u + 1 + rest as u32);
        }
        rest -= row;
        u += 1;
    }
}

fn gnp(rng: &mut ChaCha8Rng, n: u32, p: f64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Edge lists per layer; identical configs give identical output.
pub fn generate_edge_lists(cfg: &GeneratorConfig) -> Result<Vec<Vec<(u32, u32)>>> {
    cfg.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.nodes;
    match cfg.mode {
        GeneratorMode::Independent => Ok((0..cfg.layers).map(|_| gnp(&mut rng, n, cfg.p)).collect()),
        GeneratorMode::Correlated { epsilon } => {
            let base = gnp(&mut rng, n, cfg.p);
            let pairs = n as usize * (n as usize - 1) / 2;
            let budget = (epsilon * base.len() as f64).ceil() as usize;
            let toggles = (budget / 2).min(pairs);
            let mut layers = vec![base.clone()];
            for _ in 1..cfg.layers {
                let mut set: std::collections::BTreeSet<(u32, u32)> = base.iter().copied().collect();
                for idx in sample(&mut rng, pairs, toggles).into_iter() {
                    let pair = pair_of(idx, n);
                    if !set.remove(&pair) {
                        set.insert(pair);
                    }
                }
                layers.push(set.into_iter().collect());
            }
            Ok(layers)
        }
    }
}

pub fn generate(cfg: &GeneratorConfig) -> Result<MultilayerGraph> {
    Ok(MultilayerGraph::from_edge_lists(
        cfg.nodes as usize,
        &generate_edge_lists(cfg)?,
    ))
}

/// `layer u v` lines with 1-based layer numbers and 0-based node labels.
pub fn generate_mledges(cfg: &GeneratorConfig) -> Result<String> {
    let mut out = String::new();
    for (i, edges) in generate_edge_lists(cfg)?.iter().enumerate() {
        for (u, v) in edges {
            out.push_str(&format!("{} {u} {v}\n", i + 1));
        }
    }
    Ok(out)
}
