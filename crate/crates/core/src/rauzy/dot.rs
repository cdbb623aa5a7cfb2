//! Graphviz export.
//!
//! Vertices are listed lexicographically by factor and edges in the order of
//! their factors, so equal inputs give byte-identical documents. With a μ
//! classification, edges of μ-fixed simple paths are dashed and the two paths
//! of each μ-pair share a color.

use std::fmt::Write as _;

use super::{MuClassification, RauzyGraph, ReducedRauzyGraph, SimplePath};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Style attribute per path: dashed for μ-fixed, a shared color per μ-pair.
fn path_styles(mu: &MuClassification) -> Vec<String> {
    let mut pair = 0;
    let mut styles = vec![String::new(); mu.path_image.len()];
    for (i, &j) in mu.path_image.iter().enumerate() {
        if i == j {
            styles[i] = "style=dashed".into();
        } else if i < j {
            let color = PALETTE[pair % PALETTE.len()];
            styles[i] = format!("color={}", quote(color));
            styles[j] = styles[i].clone();
            pair += 1;
        }
    }
    styles
}

fn header(out: &mut String, name: &str, g: &RauzyGraph) {
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  graph [order={}, engine={}];", g.order, quote(&g.engine.to_string())).unwrap();
    writeln!(out, "  node [shape=ellipse];").unwrap();
}

/// `Γ_n`, optionally decorated by a simple-path decomposition and its μ classification.
pub fn graph_to_dot(g: &RauzyGraph, decoration: Option<(&[SimplePath], &MuClassification)>) -> String {
    let mut edge_style = vec![String::new(); g.edges().len()];
    if let Some((paths, mu)) = decoration {
        let styles = path_styles(mu);
        for (p, style) in paths.iter().zip(styles) {
            for &e in &p.edges {
                edge_style[e] = style.clone();
            }
        }
    }
    let mut out = String::new();
    header(&mut out, "rauzy", g);
    for w in g.vertices() {
        writeln!(out, "  {};", quote(&g.render(w))).unwrap();
    }
    for (e, style) in g.edges().iter().zip(&edge_style) {
        let mut attrs = format!(
            "label={}, factor={}",
            quote(&e.label.to_string()),
            quote(&g.render(&e.factor))
        );
        if !style.is_empty() {
            attrs.push_str(", ");
            attrs.push_str(style);
        }
        writeln!(
            out,
            "  {} -> {} [{attrs}];",
            quote(&g.render(&g.vertices()[e.source])),
            quote(&g.render(&g.vertices()[e.target]))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// `Γ̃_n`; the synthetic vertex of a degenerate reduction is named `*` and
/// carries `degenerate=true`.
pub fn reduced_to_dot(g: &RauzyGraph, r: &ReducedRauzyGraph, mu: Option<&MuClassification>) -> String {
    let styles = mu.map(path_styles).unwrap_or_else(|| vec![String::new(); r.paths.len()]);
    let name = |v: usize| {
        if r.degenerate {
            "*".to_string()
        } else {
            g.render(&r.vertices[v])
        }
    };
    let mut out = String::new();
    header(&mut out, "reduced_rauzy", g);
    for v in 0..r.vertices.len() {
        if r.degenerate {
            writeln!(out, "  {} [degenerate=true];", quote(&name(v))).unwrap();
        } else {
            writeln!(out, "  {};", quote(&name(v))).unwrap();
        }
    }
    for e in &r.edges {
        let path: Vec<String> = r.paths[e.path].vertices.iter().map(|&v| g.render(&g.vertices()[v])).collect();
        let mut attrs = format!("label={}, path={}", quote(&e.label.to_string()), quote(&path.join(" ")));
        if !styles[e.path].is_empty() {
            attrs.push_str(", ");
            attrs.push_str(&styles[e.path]);
        }
        writeln!(out, "  {} -> {} [{attrs}];", quote(&name(e.source)), quote(&name(e.target))).unwrap();
    }
    out.push_str("}\n");
    out
}
