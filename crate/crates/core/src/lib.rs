//! Strong/weak tie labeling of multilayer networks under strong triadic
//! closure, with labels kept consistent across layers.
//!
//! The cover machinery is generic over the weight type (see [`Weight`]);
//! the aliases below fix the common choices.

pub mod cover;
pub mod error;
mod flow;
pub mod generate;
pub mod ilpexport;
pub mod labeling;
pub mod metrics;
pub mod mlgraph;
pub mod scalar;
mod vc;
pub mod wedge;

pub use cover::{
    exact_cover, greedy_cover, greedy_weighted_cover, pricing_cover, pricing_traced, solve, CoverInstance, CoverMethod,
    CoverSolution, ExactBudget, Priced, PricingStep,
};
pub use error::{Error, Result};
pub use generate::{generate, generate_edge_lists, generate_mledges, GeneratorConfig, GeneratorMode};
pub use ilpexport::{
    export_max_stc, export_min_stc, export_min_stc_plus, export_min_stc_plus_with, LpDocument, PlusVariables,
};
pub use labeling::{
    approx_min_ml_stc, approx_min_ml_stc_plus, baseline_per_layer, enforce_consistency, exact_max_ml_stc,
    exact_min_ml_stc, exact_min_ml_stc_plus_variant, labeling_from_graph_cover, labeling_from_hypergraph_cover,
    post_process, solve_min_ml_stc, solve_min_ml_stc_plus, validate, Approx, Labeling, ValidationReport,
};
pub use metrics::{
    consistency_score, disagreements, label_percentages, objectives, EdgeLabelTally, LabelCounts, Objectives, Percent,
    StatsReport, TallyMode,
};
pub use mlgraph::{parse_multilayer_edgelist, parse_with_columns, Columns, Edge, MultilayerGraph, NodeId, ParseStats};
pub use scalar::Weight;
pub use wedge::{
    build_wedge_graph, build_wedge_hypergraph, enumerate_wedges, wedges_by_layer, NodeRoles, Wedge, WedgeGraph,
    WedgeHypergraph, Witness,
};

/// Integer-weighted cover instance, as built from wedge (hyper)graphs.
pub type WedgeCoverInstance = CoverInstance<u64>;
pub type WedgeCoverSolution = CoverSolution<u64>;
/// Exact rational weights.
pub type RationalCoverInstance = CoverInstance<num_rational::Ratio<i64>>;
pub type RationalCoverSolution = CoverSolution<num_rational::Ratio<i64>>;
pub type FloatCoverInstance = CoverInstance<f64>;
pub type FloatCoverSolution = CoverSolution<f64>;
