//! Integer programs for the multilayer STC problems in CPLEX LP format.
//!
//! Variable names use dense node ids with the canonical `u < v` order and,
//! where a variable is per layer, a 1-based layer number: `x_u_v`, `y_u_v`,
//! `y_u_v_l`, `u_u_v_l`, `z_u_v_l`. [`LpDocument::manifest`] maps names back
//! to input labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::mlgraph::{Edge, MultilayerGraph, NodeId};
use crate::wedge::wedges_by_layer;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

impl Cmp {
    fn symbol(self) -> &'static str {
        match self {
            Cmp::Le => "<=",
            Cmp::Ge => ">=",
            Cmp::Eq => "=",
        }
    }
}

/// Linear constraint `Σ coef · var  cmp  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub name: String,
    pub terms: Vec<(i64, String)>,
    pub cmp: Cmp,
    pub rhs: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    /// Edge is strong.
    X,
    /// Edge is weak.
    Y,
    /// Pair is present (existing or inserted) in a layer.
    U,
    /// Pair is present and weak in a layer.
    Z,
}

/// What a binary variable stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarInfo {
    pub name: String,
    pub kind: VarKind,
    pub edge: Edge,
    /// 0-based layer for per-layer variables.
    pub layer: Option<usize>,
}

/// A binary program ready to be rendered as LP text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpDocument {
    pub title: String,
    pub sense: Sense,
    pub objective: Vec<(i64, String)>,
    pub rows: Vec<Row>,
    pub vars: Vec<VarInfo>,
}

const WRAP_AT: usize = 200;

fn push_terms(out: &mut String, line_start: usize, terms: &[(i64, String)]) {
    let mut line_len = out.len() - line_start;
    for (k, (coef, var)) in terms.iter().enumerate() {
        let piece = match (k, *coef) {
            (0, 1) => var.clone(),
            (0, -1) => format!("- {var}"),
            (0, c) => format!("{c} {var}"),
            (_, 1) => format!(" + {var}"),
            (_, -1) => format!(" - {var}"),
            (_, c) if c < 0 => format!(" - {} {var}", -c),
            (_, c) => format!(" + {c} {var}"),
        };
        if line_len + piece.len() > WRAP_AT {
            out.push_str("\n ");
            line_len = 1;
        }
        line_len += piece.len();
        out.push_str(&piece);
    }
}

impl LpDocument {
    /// CPLEX LP text, ASCII with LF line endings.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\ {}", self.title);
        out.push_str(match self.sense {
            Sense::Minimize => "Minimize\n",
            Sense::Maximize => "Maximize\n",
        });
        let start = out.len();
        out.push_str(" obj:");
        if !self.objective.is_empty() {
            out.push(' ');
            push_terms(&mut out, start, &self.objective);
        }
        out.push('\n');
        out.push_str("Subject To\n");
        for r in &self.rows {
            let start = out.len();
            let _ = write!(out, " {}: ", r.name);
            push_terms(&mut out, start, &r.terms);
            let _ = writeln!(out, " {} {}", r.cmp.symbol(), r.rhs);
        }
        out.push_str("Binary\n");
        for v in &self.vars {
            let _ = writeln!(out, " {}", v.name);
        }
        out.push_str("End\n");
        out
    }

    /// Tab-separated `variable layer u v` lines in original labels; `-` for
    /// variables that are not per layer.
    pub fn manifest(&self, g: &MultilayerGraph) -> String {
        let mut out = String::from("variable\tlayer\tu\tv\n");
        for v in &self.vars {
            let layer = v.layer.map_or("-", |i| g.layer_name(i));
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                v.name,
                layer,
                g.node_label(v.edge.u()),
                g.node_label(v.edge.v())
            );
        }
        out
    }

    pub fn var(&self, name: &str) -> Option<&VarInfo> {
        self.vars.iter().find(|v| v.name == name)
    }
}

fn edge_var(prefix: char, e: Edge) -> String {
    format!("{prefix}_{}_{}", e.u(), e.v())
}

fn layer_var(prefix: char, e: Edge, layer: usize) -> String {
    format!("{prefix}_{}_{}_{}", e.u(), e.v(), layer + 1)
}

fn wedge_row_name(layer: usize, center: NodeId, ends: Edge) -> String {
    format!("w{}_{}_{}_{}", layer + 1, center, ends.u(), ends.v())
}

fn edge_model(g: &MultilayerGraph, prefix: char, sense: Sense) -> LpDocument {
    let kind = if prefix == 'x' { VarKind::X } else { VarKind::Y };
    let (cmp, title) = match sense {
        Sense::Maximize => (Cmp::Le, "MaxMultiLayerSTC"),
        Sense::Minimize => (Cmp::Ge, "MinMultiLayerSTC"),
    };
    let vars: Vec<VarInfo> = g
        .aggregated_edges()
        .map(|e| VarInfo {
            name: edge_var(prefix, e),
            kind,
            edge: e,
            layer: None,
        })
        .collect();
    let objective = vars
        .iter()
        .map(|v| (g.layer_count_of(v.edge) as i64, v.name.clone()))
        .collect();
    let mut rows = Vec::new();
    for (layer, wedges) in wedges_by_layer(g).into_iter().enumerate() {
        for w in wedges {
            let (a, b) = w.legs();
            rows.push(Row {
                name: wedge_row_name(layer, w.center, w.ends),
                terms: vec![(1, edge_var(prefix, a)), (1, edge_var(prefix, b))],
                cmp,
                rhs: 1,
            });
        }
    }
    LpDocument {
        title: title.into(),
        sense,
        objective,
        rows,
        vars,
    }
}

/// Maximize `Σ m_e x_e` subject to `x_a + x_b <= 1` for every (layer,
/// wedge) with legs `a`, `b`.
pub fn export_max_stc(g: &MultilayerGraph) -> LpDocument {
    edge_model(g, 'x', Sense::Maximize)
}

/// Minimize `Σ m_e y_e` subject to `y_a + y_b >= 1` for every (layer,
/// wedge).
pub fn export_min_stc(g: &MultilayerGraph) -> LpDocument {
    edge_model(g, 'y', Sense::Minimize)
}

/// Which (pair, layer) combinations receive variables in the STC+ model.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PlusVariables {
    /// Pairs that exist in the layer or close one of its wedges.
    #[default]
    Reduced,
    /// Every node pair in every layer.
    Full,
}

/// Linearized STC+ program: minimize `Σ z` with `z = y · u` linked by three
/// rows, consistency of `y` across layers, `u = 1` on existing edges,
/// `y >= u` on non-edges, and `z + z + z >= 1` per (layer, wedge).
pub fn export_min_stc_plus(g: &MultilayerGraph) -> LpDocument {
    export_min_stc_plus_with(g, PlusVariables::Reduced)
}

pub fn export_min_stc_plus_with(g: &MultilayerGraph, scope: PlusVariables) -> LpDocument {
    let k = g.layer_count();
    let per_layer = wedges_by_layer(g);
    // pair -> sorted layers where it is instantiated
    let mut inst: BTreeMap<Edge, BTreeSet<usize>> = BTreeMap::new();
    match scope {
        PlusVariables::Reduced => {
            for e in g.aggregated_edges() {
                inst.entry(e).or_default().extend(g.layers_of(e));
            }
            for (i, wedges) in per_layer.iter().enumerate() {
                for w in wedges {
                    inst.entry(w.ends).or_default().insert(i);
                }
            }
        }
        PlusVariables::Full => {
            let n = g.node_count() as u32;
            for a in 0..n {
                for b in a + 1..n {
                    inst.insert(Edge::of(a, b), (0..k).collect());
                }
            }
        }
    }

    let mut vars = Vec::new();
    let mut objective = Vec::new();
    let mut rows = Vec::new();
    for (layer, wedges) in per_layer.iter().enumerate() {
        for w in wedges {
            let (a, b) = w.legs();
            rows.push(Row {
                name: wedge_row_name(layer, w.center, w.ends),
                terms: vec![
                    (1, layer_var('z', a, layer)),
                    (1, layer_var('z', b, layer)),
                    (1, layer_var('z', w.ends, layer)),
                ],
                cmp: Cmp::Ge,
                rhs: 1,
            });
        }
    }
    for (&e, layers) in &inst {
        let mut prev: Option<usize> = None;
        for &l in layers {
            let (y, u, z) = (layer_var('y', e, l), layer_var('u', e, l), layer_var('z', e, l));
            let tag = format!("{}_{}_{}", e.u(), e.v(), l + 1);
            for (kind, name) in [(VarKind::Y, &y), (VarKind::U, &u), (VarKind::Z, &z)] {
                vars.push(VarInfo {
                    name: name.clone(),
                    kind,
                    edge: e,
                    layer: Some(l),
                });
            }
            objective.push((1, z.clone()));
            rows.push(Row {
                name: format!("zy_{tag}"),
                terms: vec![(1, z.clone()), (-1, y.clone())],
                cmp: Cmp::Le,
                rhs: 0,
            });
            rows.push(Row {
                name: format!("zu_{tag}"),
                terms: vec![(1, z.clone()), (-1, u.clone())],
                cmp: Cmp::Le,
                rhs: 0,
            });
            rows.push(Row {
                name: format!("zyu_{tag}"),
                terms: vec![(1, z), (-1, y.clone()), (-1, u.clone())],
                cmp: Cmp::Ge,
                rhs: -1,
            });
            if g.has_edge(l, e) {
                rows.push(Row {
                    name: format!("ex_{tag}"),
                    terms: vec![(1, u)],
                    cmp: Cmp::Eq,
                    rhs: 1,
                });
            } else {
                rows.push(Row {
                    name: format!("new_{tag}"),
                    terms: vec![(1, y.clone()), (-1, u)],
                    cmp: Cmp::Ge,
                    rhs: 0,
                });
            }
            if let Some(p) = prev {
                rows.push(Row {
                    name: format!("cons_{}_{}_{}_{}", e.u(), e.v(), p + 1, l + 1),
                    terms: vec![(1, layer_var('y', e, p)), (-1, y)],
                    cmp: Cmp::Eq,
                    rhs: 0,
                });
            }
            prev = Some(l);
        }
    }
    LpDocument {
        title: "MinMultiLayerSTC+ (linearized)".into(),
        sense: Sense::Minimize,
        objective,
        rows,
        vars,
    }
}
