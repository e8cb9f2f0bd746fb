//! Objectives, disagreement counts, consistency score and label
//! percentages.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{FromPrimitive, Num};
use serde::Serialize;

use crate::labeling::Labeling;
use crate::mlgraph::{Edge, MultilayerGraph};

/// Whether inserted weak edges count towards `w(e)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TallyMode {
    #[default]
    IncludeInserted,
    ExistingOnly,
}

/// Strong and weak layer counts of one edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LabelCounts {
    pub strong: u64,
    pub weak: u64,
}

/// `s(e)` and `w(e)` for every edge that occurs in some layer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeLabelTally {
    counts: BTreeMap<Edge, LabelCounts>,
}

impl EdgeLabelTally {
    pub fn from_labeling(g: &MultilayerGraph, l: &Labeling, mode: TallyMode) -> Self {
        let mut counts: BTreeMap<Edge, LabelCounts> = BTreeMap::new();
        for (i, edges) in g.layers().iter().enumerate() {
            for e in edges {
                let c = counts.entry(*e).or_default();
                if l.strong[i].contains(e) {
                    c.strong += 1;
                } else {
                    c.weak += 1;
                }
            }
            if mode == TallyMode::IncludeInserted {
                for e in &l.inserted[i] {
                    counts.entry(*e).or_default().weak += 1;
                }
            }
        }
        EdgeLabelTally { counts }
    }

    pub fn from_counts(counts: impl IntoIterator<Item = (Edge, LabelCounts)>) -> Self {
        EdgeLabelTally {
            counts: counts.into_iter().collect(),
        }
    }

    pub fn get(&self, e: Edge) -> Option<LabelCounts> {
        self.counts.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, LabelCounts)> + '_ {
        self.counts.iter().map(|(e, c)| (*e, *c))
    }
}

/// `d_k = Σ_e [w(e) > 0] · s(e)`.
pub fn disagreements(t: &EdgeLabelTally) -> u64 {
    t.iter().filter(|(_, c)| c.weak > 0).map(|(_, c)| c.strong).sum()
}

/// Mean of `s(e) / (s(e) + w(e))` over edges strong in at least one layer;
/// one when no edge is strong anywhere.
///
/// Generic over the result type so callers can get an exact rational or a
/// float.
pub fn consistency_score<T: Num + FromPrimitive + Clone>(t: &EdgeLabelTally) -> T {
    let conv = |x: u64| T::from_u64(x).expect("count fits the score type");
    let mut sum = T::zero();
    let mut n = 0u64;
    for (_, c) in t.iter().filter(|(_, c)| c.strong > 0) {
        sum = sum + conv(c.strong) / conv(c.strong + c.weak);
        n += 1;
    }
    if n == 0 {
        T::one()
    } else {
        sum / conv(n)
    }
}

/// Values of the three objectives for one labeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Objectives {
    /// `Σ_i |E_i \ S_i| + d_k`
    pub min: u64,
    /// `Σ_i |S_i| − d_k`
    pub max: u64,
    /// `Σ_i |E_i^N ∪ E_i \ S_i| + d_k`
    pub min_plus: u64,
}

pub fn objectives(g: &MultilayerGraph, l: &Labeling) -> Objectives {
    let d = disagreements(&EdgeLabelTally::from_labeling(g, l, TallyMode::IncludeInserted));
    let strong: u64 = l.strong.iter().map(|s| s.len() as u64).sum();
    let weak = g.total_edges() as u64 - strong;
    let inserted = l.inserted_count() as u64;
    Objectives {
        min: weak + d,
        max: strong - d,
        min_plus: weak + inserted + d,
    }
}

/// A percentage held in tenths, rounded half to even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Percent(pub u32);

impl Percent {
    /// `part / whole` as a percentage at one decimal. Zero when `whole` is 0.
    pub fn of(part: u64, whole: u64) -> Self {
        if whole == 0 {
            return Percent(0);
        }
        let scaled = part as u128 * 1000;
        let (q, r) = (scaled / whole as u128, scaled % whole as u128);
        let up = match (2 * r).cmp(&(whole as u128)) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => q % 2 == 1,
        };
        Percent((q + up as u128) as u32)
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 10.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.0 / 10, self.0 % 10)
    }
}

/// Weak and strong share of all (layer, edge) instances, inserted edges
/// included.
pub fn label_percentages(g: &MultilayerGraph, l: &Labeling) -> (Percent, Percent) {
    let strong: u64 = l.strong.iter().map(|s| s.len() as u64).sum();
    let inserted = l.inserted_count() as u64;
    let total = g.total_edges() as u64 + inserted;
    let weak = total - strong;
    (Percent::of(weak, total), Percent::of(strong, total))
}

/// Summary of one run, serialized as a flat JSON object.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsReport {
    pub weak_pct: f64,
    pub strong_pct: f64,
    pub mu: f64,
    pub d_k: u64,
    pub objective_min: u64,
    pub objective_max: u64,
    pub objective_min_plus: u64,
    pub inserted_count: u64,
    pub runtime_ms: f64,
}

impl StatsReport {
    pub fn new(g: &MultilayerGraph, l: &Labeling, mode: TallyMode, runtime_ms: f64) -> Self {
        let (weak, strong) = label_percentages(g, l);
        let tally = EdgeLabelTally::from_labeling(g, l, mode);
        let obj = objectives(g, l);
        StatsReport {
            weak_pct: weak.as_f64(),
            strong_pct: strong.as_f64(),
            mu: consistency_score::<f64>(&tally),
            d_k: disagreements(&EdgeLabelTally::from_labeling(g, l, TallyMode::IncludeInserted)),
            objective_min: obj.min,
            objective_max: obj.max,
            objective_min_plus: obj.min_plus,
            inserted_count: l.inserted_count() as u64,
            runtime_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}
