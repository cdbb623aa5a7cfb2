//! Labeled Rauzy graphs, their simple-path decomposition, the reduced graph,
//! and the mirror and letter-permutation symmetries.
//!
//! Edges are identified by their length-`(n+1)` factor, never by their
//! endpoints: loops and parallel edges are ordinary edges here.

pub mod dot;

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{is_palindrome, reversed, FactorIndex, SpecialFactorReport};
use crate::frequency::{mean, Engine, Frequency, FrequencyAssignment};
use crate::qnum::QuadraticNumber;
use crate::words::{Alphabet, Letter};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RauzyEdge {
    pub factor: Vec<Letter>,
    pub source: usize,
    pub target: usize,
    pub label: Frequency,
}

/// `Γ_n`: vertices `L_n`, edges `L_{n+1}`, both in lexicographic order.
#[derive(Clone, Debug)]
pub struct RauzyGraph {
    pub order: usize,
    pub engine: Engine,
    alphabet: Alphabet,
    vertices: Vec<Vec<Letter>>,
    edges: Vec<RauzyEdge>,
    vertex_ids: HashMap<Vec<Letter>, usize>,
    edge_ids: HashMap<Vec<Letter>, usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl RauzyGraph {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[Vec<Letter>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[RauzyEdge] {
        &self.edges
    }

    pub fn vertex_id(&self, w: &[Letter]) -> Option<usize> {
        self.vertex_ids.get(w).copied()
    }

    pub fn edge_id(&self, e: &[Letter]) -> Option<usize> {
        self.edge_ids.get(e).copied()
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn render(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        self.alphabet.render(w)
    }

    /// Every vertex reaches vertex 0 and is reached from it.
    fn is_strongly_connected(&self) -> bool {
        let reach = |forward: bool| {
            let mut seen = vec![false; self.vertices.len()];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                let adj = if forward { &self.out_edges[v] } else { &self.in_edges[v] };
                for &e in adj {
                    let u = if forward { self.edges[e].target } else { self.edges[e].source };
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }
}

/// Builds `Γ_n` from the window's factors and the labels in `freqs`.
///
/// Fails with `WindowMismatch` when `freqs` knows a factor of length `n + 1`
/// that the window lacks (the window is too short for an exact engine), and
/// with `NonRecurrentWindow` unless the graph is strongly connected.
pub fn build_rauzy_graph(index: &FactorIndex, n: usize, freqs: &FrequencyAssignment) -> Result<RauzyGraph> {
    if n + 1 > index.n_max() {
        return Err(Error::OutOfWindow { n, cap: index.n_max() });
    }
    let vertices: Vec<Vec<Letter>> = index.factors(n)?.into_iter().map(<[Letter]>::to_vec).collect();
    let vertex_ids: HashMap<Vec<Letter>, usize> =
        vertices.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut edges = Vec::new();
    for (factor, prefix, suffix) in index.edges(n)? {
        let label = freqs
            .get(factor)
            .cloned()
            .ok_or_else(|| Error::MissingFrequency(index.render(factor)))?;
        edges.push(RauzyEdge {
            factor: factor.to_vec(),
            source: vertex_ids[prefix],
            target: vertex_ids[suffix],
            label,
        });
    }
    if let Some((extra, _)) = freqs.of_length(n + 1).find(|(w, _)| !index.contains(w)) {
        return Err(Error::WindowMismatch {
            n,
            detail: format!("factor `{}` is missing from the window", index.render(extra)),
        });
    }
    let edge_ids = edges.iter().enumerate().map(|(i, e)| (e.factor.clone(), i)).collect();
    let mut out_edges = vec![Vec::new(); vertices.len()];
    let mut in_edges = vec![Vec::new(); vertices.len()];
    for (i, e) in edges.iter().enumerate() {
        out_edges[e.source].push(i);
        in_edges[e.target].push(i);
    }
    let g = RauzyGraph {
        order: n,
        engine: freqs.engine,
        alphabet: index.alphabet().clone(),
        vertices,
        edges,
        vertex_ids,
        edge_ids,
        out_edges,
        in_edges,
    };
    for (v, w) in g.vertices.iter().enumerate() {
        if g.out_edges[v].is_empty() || g.in_edges[v].is_empty() {
            return Err(Error::NonRecurrentWindow {
                n,
                detail: format!("vertex `{}` has in-degree or out-degree 0", g.render(w)),
            });
        }
    }
    if !g.is_strongly_connected() {
        return Err(Error::NonRecurrentWindow {
            n,
            detail: "Rauzy graph is not strongly connected".into(),
        });
    }
    Ok(g)
}

/// `max_v |Σ ρ(in-edges of v) − Σ ρ(out-edges of v)|`; exact when all labels are.
pub fn kirchhoff_residual(g: &RauzyGraph) -> Frequency {
    let exact: Option<Vec<QuadraticNumber>> = g.edges.iter().map(|e| e.label.as_exact()).collect();
    match exact {
        Some(labels) => {
            let worst = (0..g.vertices.len())
                .map(|v| {
                    let inflow: QuadraticNumber = g.in_edges[v].iter().map(|&e| labels[e].clone()).sum();
                    let outflow: QuadraticNumber = g.out_edges[v].iter().map(|&e| labels[e].clone()).sum();
                    (&inflow - &outflow).abs()
                })
                .max()
                .unwrap_or_else(QuadraticNumber::zero);
            Frequency::exact(worst)
        }
        None => {
            let mut worst: f64 = 0.0;
            let mut err: f64 = 0.0;
            for v in 0..g.vertices.len() {
                let sum = |ids: &[usize]| -> (f64, f64) {
                    ids.iter().fold((0.0, 0.0), |(s, e), &i| {
                        (s + g.edges[i].label.value_f64(), e + g.edges[i].label.error_bound())
                    })
                };
                let (a, ea) = sum(&g.in_edges[v]);
                let (b, eb) = sum(&g.out_edges[v]);
                worst = worst.max((a - b).abs());
                err = err.max(ea + eb);
            }
            Frequency::Approx { value: worst, err }
        }
    }
}

/// A maximal path between special vertices through non-special ones.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplePath {
    /// vertex ids `w^(0) … w^(m)`
    pub vertices: Vec<usize>,
    /// edge ids, `m` of them
    pub edges: Vec<usize>,
    /// common edge label (exact engines) or exact mean (empirical)
    pub label: Frequency,
    /// largest minus smallest edge label along the path
    pub spread: Frequency,
}

fn path_label(g: &RauzyGraph, edges: &[usize]) -> Result<(Frequency, Frequency)> {
    let labels: Vec<&Frequency> = edges.iter().map(|&e| &g.edges[e].label).collect();
    let lo = labels.iter().min_by(|a, b| a.cmp_value(b)).expect("paths have edges");
    let hi = labels.iter().max_by(|a, b| a.cmp_value(b)).expect("paths have edges");
    let spread = match (hi.as_exact(), lo.as_exact()) {
        (Some(h), Some(l)) => Frequency::exact(&h - &l),
        _ => Frequency::Approx {
            value: hi.value_f64() - lo.value_f64(),
            err: hi.error_bound() + lo.error_bound(),
        },
    };
    if g.engine.is_exact() {
        if labels.iter().any(|l| !l.same_value(labels[0])) {
            let path: Vec<String> = edges.iter().map(|&e| g.render(&g.edges[e].factor)).collect();
            return Err(Error::LabelInconsistent(format!("path {}", path.join(" "))));
        }
        Ok((labels[0].clone(), spread))
    } else {
        Ok((mean(labels.into_iter()), spread))
    }
}

fn special_flags(g: &RauzyGraph, specials: &SpecialFactorReport) -> Result<Vec<bool>> {
    if specials.n != g.order {
        return Err(Error::InvalidParameter(format!(
            "special-factor report at order {} for a graph of order {}",
            specials.n, g.order
        )));
    }
    Ok(g.vertices.iter().map(|w| specials.is_special(w)).collect())
}

/// Cuts `Γ_n` at its special vertices. Paths are ordered by initial vertex,
/// then by first edge, both lexicographically.
pub fn decompose_simple_paths(g: &RauzyGraph, specials: &SpecialFactorReport) -> Result<Vec<SimplePath>> {
    let special = special_flags(g, specials)?;
    if !special.iter().any(|&s| s) {
        return Err(Error::Degenerate { n: g.order });
    }
    let mut used = vec![false; g.edges.len()];
    let mut paths = Vec::new();
    for s in (0..g.vertices.len()).filter(|&v| special[v]) {
        for &first in &g.out_edges[s] {
            let mut vertices = vec![s];
            let mut edges = vec![first];
            let mut v = g.edges[first].target;
            while !special[v] {
                if g.out_edges[v].len() != 1 || g.in_edges[v].len() != 1 || edges.len() > g.edges.len() {
                    return Err(Error::NonRecurrentWindow {
                        n: g.order,
                        detail: format!("non-special vertex `{}` is not of degree (1, 1)", g.render(&g.vertices[v])),
                    });
                }
                vertices.push(v);
                let e = g.out_edges[v][0];
                edges.push(e);
                v = g.edges[e].target;
            }
            vertices.push(v);
            for &e in &edges {
                used[e] = true;
            }
            let (label, spread) = path_label(g, &edges)?;
            paths.push(SimplePath {
                vertices,
                edges,
                label,
                spread,
            });
        }
    }
    if let Some(e) = used.iter().position(|u| !u) {
        return Err(Error::NonRecurrentWindow {
            n: g.order,
            detail: format!("edge `{}` lies on a cycle avoiding special vertices", g.render(&g.edges[e].factor)),
        });
    }
    Ok(paths)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedEdge {
    pub source: usize,
    pub target: usize,
    pub label: Frequency,
    /// index into [`ReducedRauzyGraph::paths`]
    pub path: usize,
}

/// `Γ̃_n`. In the degenerate case (no special vertex) it holds one synthetic
/// vertex, written as the empty word, with one loop standing for the single
/// cycle of `Γ_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReducedRauzyGraph {
    pub order: usize,
    pub degenerate: bool,
    pub vertices: Vec<Vec<Letter>>,
    pub edges: Vec<ReducedEdge>,
    pub paths: Vec<SimplePath>,
}

impl ReducedRauzyGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Predicted edge count: `ΔC(n) + Z + #(LS not RS)`.
    pub fn predicted_edge_count(specials: &SpecialFactorReport, delta_c: usize) -> usize {
        delta_c + specials.z + specials.ls_not_rs()
    }

    /// Edge count from extensions: `Σ_{w RS} #Rext(w) + #(LS not RS)`.
    pub fn eq4_edge_count(g: &RauzyGraph, specials: &SpecialFactorReport) -> usize {
        let rext: usize = specials
            .right_special
            .iter()
            .map(|w| g.vertex_id(w).map_or(0, |v| g.out_edges(v).len()))
            .sum();
        rext + specials.ls_not_rs()
    }

    /// Whether the reduced labels form the same set of values as the labels of `Γ_n`.
    pub fn preserves_labels(&self, g: &RauzyGraph) -> bool {
        let mine: Vec<&Frequency> = self.edges.iter().map(|r| &r.label).collect();
        let theirs: Vec<&Frequency> = g.edges.iter().map(|e| &e.label).collect();
        let covered = |x: &Frequency, ys: &[&Frequency]| ys.iter().any(|y| y.same_value(x));
        theirs.iter().all(|x| covered(x, &mine)) && mine.iter().all(|x| covered(x, &theirs))
    }
}

/// Contracts every simple path to one edge.
pub fn reduce(g: &RauzyGraph, specials: &SpecialFactorReport) -> Result<ReducedRauzyGraph> {
    let paths = match decompose_simple_paths(g, specials) {
        Ok(p) => p,
        Err(Error::Degenerate { .. }) => return degenerate_reduction(g),
        Err(e) => return Err(e),
    };
    let vertices: Vec<Vec<Letter>> = g
        .vertices
        .iter()
        .filter(|w| specials.is_special(w))
        .cloned()
        .collect();
    let ids: HashMap<&[Letter], usize> = vertices.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let edges = paths
        .iter()
        .enumerate()
        .map(|(i, p)| ReducedEdge {
            source: ids[g.vertices[p.vertices[0]].as_slice()],
            target: ids[g.vertices[*p.vertices.last().expect("nonempty")].as_slice()],
            label: p.label.clone(),
            path: i,
        })
        .collect();
    Ok(ReducedRauzyGraph {
        order: g.order,
        degenerate: false,
        vertices,
        edges,
        paths,
    })
}

fn degenerate_reduction(g: &RauzyGraph) -> Result<ReducedRauzyGraph> {
    // strongly connected with all degrees (1, 1): one cycle through vertex 0
    let mut vertices = vec![0];
    let mut edges = Vec::new();
    let mut v = 0;
    loop {
        let e = g.out_edges[v][0];
        edges.push(e);
        v = g.edges[e].target;
        vertices.push(v);
        if v == 0 {
            break;
        }
    }
    let (label, spread) = path_label(g, &edges)?;
    let path = SimplePath {
        vertices,
        edges,
        label: label.clone(),
        spread,
    };
    Ok(ReducedRauzyGraph {
        order: g.order,
        degenerate: true,
        vertices: vec![Vec::new()],
        edges: vec![ReducedEdge {
            source: 0,
            target: 0,
            label,
            path: 0,
        }],
        paths: vec![path],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "permutation", rename_all = "kebab-case")]
pub enum SymmetryKind {
    Mirror,
    LetterPermutation(Vec<Letter>),
}

/// A (anti-)automorphism of `Γ_n` given on vertex and edge ids.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphSymmetry {
    pub kind: SymmetryKind,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub involution: bool,
    /// true for μ, which sends an edge `u → v` to `μ(v) → μ(u)`
    pub reverses_orientation: bool,
}

impl GraphSymmetry {
    /// Image of every simple path, as an index into `paths`.
    pub fn path_map(&self, g: &RauzyGraph, paths: &[SimplePath]) -> Result<Vec<usize>> {
        let by_first: HashMap<usize, usize> = paths.iter().enumerate().map(|(i, p)| (p.edges[0], i)).collect();
        paths
            .iter()
            .map(|p| {
                let mut image: Vec<usize> = p.edges.iter().map(|&e| self.edge_map[e]).collect();
                if self.reverses_orientation {
                    image.reverse();
                }
                match by_first.get(&image[0]) {
                    Some(&q) if paths[q].edges == image => Ok(q),
                    _ => Err(Error::InvalidParameter(format!(
                        "symmetry does not map the path starting with `{}` onto a simple path",
                        g.render(&g.edges[p.edges[0]].factor)
                    ))),
                }
            })
            .collect()
    }

    /// Simple paths mapped onto themselves.
    pub fn fixed_paths(&self, g: &RauzyGraph, paths: &[SimplePath]) -> Result<usize> {
        Ok(self.path_map(g, paths)?.iter().enumerate().filter(|(i, j)| i == *j).count())
    }
}

fn symmetry_from_word_map(
    g: &RauzyGraph,
    kind: SymmetryKind,
    reverses_orientation: bool,
    f: impl Fn(&[Letter]) -> Vec<Letter>,
) -> Result<GraphSymmetry> {
    let vertex_map: Vec<usize> = g
        .vertices
        .iter()
        .map(|w| g.vertex_id(&f(w)).expect("closure checked"))
        .collect();
    let edge_map: Vec<usize> = g
        .edges
        .iter()
        .map(|e| g.edge_id(&f(&e.factor)).expect("closure checked"))
        .collect();
    for (i, e) in g.edges.iter().enumerate() {
        let img = &g.edges[edge_map[i]];
        let (s, t) = if reverses_orientation {
            (vertex_map[e.target], vertex_map[e.source])
        } else {
            (vertex_map[e.source], vertex_map[e.target])
        };
        if img.source != s || img.target != t {
            return Err(Error::InvalidParameter(format!(
                "map is not a graph automorphism at edge `{}`",
                g.render(&e.factor)
            )));
        }
        if g.engine.is_exact() && !img.label.same_value(&e.label) {
            return Err(Error::LabelInconsistent(format!(
                "ρ({}) = {} but ρ({}) = {}",
                g.render(&e.factor),
                e.label,
                g.render(&img.factor),
                img.label
            )));
        }
    }
    let involution = vertex_map.iter().enumerate().all(|(i, &j)| vertex_map[j] == i)
        && edge_map.iter().enumerate().all(|(i, &j)| edge_map[j] == i);
    Ok(GraphSymmetry {
        kind,
        vertex_map,
        edge_map,
        involution,
        reverses_orientation,
    })
}

/// The mirror map `μ(w) = reverse(w)`; requires `L_n` and `L_{n+1}` to be closed under reversal.
pub fn mirror_automorphism(g: &RauzyGraph, index: &FactorIndex) -> Result<GraphSymmetry> {
    for len in [g.order, g.order + 1] {
        if let Some(w) = index.reversal_closure_defect(len)?.first() {
            return Err(Error::NotReversalClosed {
                witness: index.render(w),
            });
        }
    }
    symmetry_from_word_map(g, SymmetryKind::Mirror, true, reversed)
}

/// `T_π(w_1 … w_n) = π(w_1) … π(w_n)` for a bijection `pi` of the alphabet.
pub fn permutation_symmetry(g: &RauzyGraph, index: &FactorIndex, pi: &[Letter]) -> Result<GraphSymmetry> {
    let k = g.alphabet.len();
    let mut seen = vec![false; k];
    if pi.len() != k || pi.iter().any(|&l| (l as usize) >= k || std::mem::replace(&mut seen[l as usize], true)) {
        return Err(Error::InvalidParameter("letter map is not a bijection of the alphabet".into()));
    }
    let apply = |w: &[Letter]| -> Vec<Letter> { w.iter().map(|&l| pi[l as usize]).collect() };
    for len in [g.order, g.order + 1] {
        if let Some(w) = index.permutation_closure_defect(len, pi)?.first() {
            return Err(Error::NotClosedUnderPermutation {
                witness: index.render(&apply(w)),
            });
        }
    }
    symmetry_from_word_map(g, SymmetryKind::LetterPermutation(pi.to_vec()), false, apply)
}

/// How μ acts on the simple paths, with the identities `A = P(n) + P(n+1) − Y` and `A + B = ΔC + 2Z − X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuClassification {
    /// paths mapped onto themselves
    pub a: usize,
    /// paths moved to another path
    pub b: usize,
    pub fixed: Vec<bool>,
    pub path_image: Vec<usize>,
    /// `P(n) + P(n+1) − Y`
    pub a_expected: i64,
    /// `ΔC(n) + 2Z − X`
    pub ab_expected: i64,
    /// every μ-fixed path has a palindromic central vertex or edge
    pub centers_palindromic: bool,
    /// every palindrome of length `n+1`, and every non-special palindrome of
    /// length `n`, is the center of a μ-fixed path
    pub palindromes_are_centers: bool,
}

impl MuClassification {
    pub fn identities_hold(&self) -> bool {
        self.a as i64 == self.a_expected
            && (self.a + self.b) as i64 == self.ab_expected
            && self.centers_palindromic
            && self.palindromes_are_centers
    }
}

pub fn classify_mu_paths(
    g: &RauzyGraph,
    r: &ReducedRauzyGraph,
    mu: &GraphSymmetry,
    index: &FactorIndex,
) -> Result<MuClassification> {
    if r.degenerate {
        return Err(Error::Degenerate { n: g.order });
    }
    if mu.kind != SymmetryKind::Mirror {
        return Err(Error::InvalidParameter("expected the mirror symmetry".into()));
    }
    let n = g.order;
    let path_image = mu.path_map(g, &r.paths)?;
    let fixed: Vec<bool> = path_image.iter().enumerate().map(|(i, &j)| i == j).collect();
    let a = fixed.iter().filter(|&&f| f).count();
    let specials = index.special_factors(n)?;
    let (_, delta_c) = index.complexity(n)?;
    let p_n = index.palindrome_complexity(n)? as i64;
    let p_n1 = index.palindrome_complexity(n + 1)? as i64;

    let mut centers_palindromic = true;
    let mut center_vertices = HashSet::new();
    let mut center_edges = HashSet::new();
    for (p, _) in r.paths.iter().zip(&fixed).filter(|(_, &f)| f) {
        let m = p.edges.len();
        if m % 2 == 1 {
            let e = p.edges[m / 2];
            centers_palindromic &= is_palindrome(&g.edges[e].factor);
            center_edges.insert(e);
        } else {
            let v = p.vertices[m / 2];
            centers_palindromic &= is_palindrome(&g.vertices[v]);
            center_vertices.insert(v);
        }
    }
    let palindromes_are_centers = index
        .palindromes(n + 1)?
        .iter()
        .all(|w| g.edge_id(w).is_some_and(|e| center_edges.contains(&e)))
        && index
            .palindromes(n)?
            .iter()
            .filter(|w| !specials.is_special(w))
            .all(|w| g.vertex_id(w).is_some_and(|v| center_vertices.contains(&v)));

    Ok(MuClassification {
        a,
        b: r.paths.len() - a,
        fixed,
        path_image,
        a_expected: p_n + p_n1 - specials.y as i64,
        ab_expected: delta_c as i64 + 2 * specials.z as i64 - specials.x as i64,
        centers_palindromic,
        palindromes_are_centers,
    })
}

#[cfg(test)]
mod tests;
