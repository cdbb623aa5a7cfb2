use proptest::prelude::*;

use super::dot::{graph_to_dot, reduced_to_dot};
use super::*;
use crate::frequency::{empirical_frequencies, exact_frequencies, periodic_frequencies};
use crate::words::{fixed_point_prefix, Morphism, Word};

fn word(letters: Vec<Letter>, k: usize) -> Word {
    Word {
        alphabet: Alphabet::numeric(k),
        letters,
    }
}

struct Fixture {
    index: FactorIndex,
    freqs: FrequencyAssignment,
}

fn morphism_fixture(rules: &str, n: usize, len: usize) -> Fixture {
    let m: Morphism = rules.parse().unwrap();
    let u = fixed_point_prefix(&m, 0, len).unwrap();
    let index = FactorIndex::build(&word(u, m.alphabet().len()), n + 2).unwrap();
    let freqs = exact_frequencies(&m, 0, n).unwrap();
    Fixture { index, freqs }
}

fn periodic_fixture(pattern: &[Letter], n: usize) -> Fixture {
    let u: Vec<Letter> = pattern.iter().copied().cycle().take(200 + 4 * n).collect();
    let k = *pattern.iter().max().unwrap() as usize + 1;
    let index = FactorIndex::build(&word(u, k.max(2)), n + 2).unwrap();
    let freqs = periodic_frequencies(pattern, n).unwrap();
    Fixture { index, freqs }
}

fn graph(f: &Fixture, n: usize) -> RauzyGraph {
    build_rauzy_graph(&f.index, n, &f.freqs).unwrap()
}

fn fib(n: usize) -> Fixture {
    morphism_fixture("0->01;1->0", n, 5000)
}

fn tm(n: usize) -> Fixture {
    morphism_fixture("0->01;1->10", n, 5000)
}

fn q(s: &str) -> Frequency {
    Frequency::exact(s.parse().unwrap())
}

fn labels(g: &RauzyGraph) -> Vec<(String, Frequency)> {
    g.edges().iter().map(|e| (g.render(&e.factor), e.label.clone())).collect()
}

#[test]
fn build_examples() {
    let g = graph(&fib(1), 1);
    assert_eq!(g.vertices(), &[vec![0], vec![1]]);
    assert_eq!(
        labels(&g),
        vec![
            ("00".into(), q("(-2,1,5)")),
            ("01".into(), q("(3/2,-1/2,5)")),
            ("10".into(), q("(3/2,-1/2,5)")),
        ]
    );
    let g = graph(&tm(1), 1);
    assert_eq!(
        labels(&g),
        vec![
            ("00".into(), q("1/6")),
            ("01".into(), q("1/3")),
            ("10".into(), q("1/3")),
            ("11".into(), q("1/6")),
        ]
    );
    let g = graph(&periodic_fixture(&[0, 1], 1), 1);
    assert_eq!(g.edges().len(), 2);
    assert_eq!((g.edges()[0].source, g.edges()[0].target), (0, 1));
    assert_eq!((g.edges()[1].source, g.edges()[1].target), (1, 0));
}

#[test]
fn build_errors() {
    let f = fib(1);
    assert!(matches!(
        build_rauzy_graph(&f.index, 3, &f.freqs),
        Err(Error::OutOfWindow { .. })
    ));
    let wrong = exact_frequencies(&"0->01;1->0".parse().unwrap(), 0, 3).unwrap();
    assert!(matches!(
        build_rauzy_graph(&f.index, 1, &wrong),
        Err(Error::MissingFrequency(_))
    ));
    // a short window misses exact factors
    let m: Morphism = "0->01;1->0".parse().unwrap();
    let short = FactorIndex::build(&word(fixed_point_prefix(&m, 0, 12).unwrap(), 2), 7).unwrap();
    let exact = exact_frequencies(&m, 0, 6).unwrap();
    assert!(matches!(
        build_rauzy_graph(&short, 5, &exact_frequencies(&m, 0, 5).unwrap()),
        Err(Error::WindowMismatch { .. }) | Err(Error::NonRecurrentWindow { .. })
    ));
    assert!(build_rauzy_graph(&short, 6, &exact).is_err());
    // 0111…: vertex 0 has no incoming edge
    let idx = FactorIndex::build(&word(vec![0, 1, 1, 1, 1, 1, 1], 2), 3).unwrap();
    let emp = empirical_frequencies(&idx, 1).unwrap();
    assert!(matches!(
        build_rauzy_graph(&idx, 1, &emp),
        Err(Error::NonRecurrentWindow { n: 1, .. })
    ));
}

#[test]
fn kirchhoff_examples() {
    for f in [fib(1), tm(1), periodic_fixture(&[0, 0, 1], 3)] {
        let n = f.freqs.order;
        assert_eq!(kirchhoff_residual(&graph(&f, n)), Frequency::ratio(0, 1));
    }
    let m: Morphism = "0->01;1->0".parse().unwrap();
    let big_n = 100_000;
    let idx = FactorIndex::build(&word(fixed_point_prefix(&m, 0, big_n).unwrap(), 2), 7).unwrap();
    let g = build_rauzy_graph(&idx, 5, &empirical_frequencies(&idx, 5).unwrap()).unwrap();
    let r = kirchhoff_residual(&g).as_exact().unwrap();
    assert!(r <= QuadraticNumber::from_ratio(6, big_n as i64 - 5));
}

fn path_words(g: &RauzyGraph, paths: &[SimplePath]) -> Vec<(Vec<String>, Frequency)> {
    paths
        .iter()
        .map(|p| (p.vertices.iter().map(|&v| g.render(&g.vertices()[v])).collect(), p.label.clone()))
        .collect()
}

#[test]
fn decomposition_examples() {
    let f = fib(1);
    let g = graph(&f, 1);
    let paths = decompose_simple_paths(&g, &f.index.special_factors(1).unwrap()).unwrap();
    assert_eq!(
        path_words(&g, &paths),
        vec![
            (vec!["0".into(), "0".into()], q("(-2,1,5)")),
            (vec!["0".into(), "1".into(), "0".into()], q("(3/2,-1/2,5)")),
        ]
    );
    let f = tm(1);
    let g = graph(&f, 1);
    let paths = decompose_simple_paths(&g, &f.index.special_factors(1).unwrap()).unwrap();
    assert_eq!(paths.len(), 4);
    assert!(paths.iter().all(|p| p.edges.len() == 1));
    let f = periodic_fixture(&[0, 1], 1);
    let g = graph(&f, 1);
    assert_eq!(
        decompose_simple_paths(&g, &f.index.special_factors(1).unwrap()),
        Err(Error::Degenerate { n: 1 })
    );
}

#[test]
fn reduction_examples() {
    let f = fib(1);
    let g = graph(&f, 1);
    let s = f.index.special_factors(1).unwrap();
    let r = reduce(&g, &s).unwrap();
    assert!(!r.degenerate);
    assert_eq!(r.vertices, vec![vec![0]]);
    assert_eq!(r.edge_count(), 2);
    assert_eq!(ReducedRauzyGraph::predicted_edge_count(&s, 1), 2);
    assert_eq!(ReducedRauzyGraph::eq4_edge_count(&g, &s), 2);

    let f = tm(1);
    let g = graph(&f, 1);
    let s = f.index.special_factors(1).unwrap();
    let r = reduce(&g, &s).unwrap();
    assert_eq!((r.vertices.len(), r.edge_count()), (2, 4));
    assert_eq!(ReducedRauzyGraph::predicted_edge_count(&s, 2), 4);

    let f = periodic_fixture(&[0, 1], 2);
    let g = graph(&f, 2);
    let r = reduce(&g, &f.index.special_factors(2).unwrap()).unwrap();
    assert!(r.degenerate);
    assert_eq!(r.edges.len(), 1);
    assert_eq!(r.edges[0].label, Frequency::ratio(1, 2));
    assert_eq!(r.paths[0].edges.len(), 2);
    // windowed version: labels 50/99 and 49/99 merge into their mean
    let emp = empirical_frequencies(&f.index, 2).unwrap();
    let ge = build_rauzy_graph(&f.index, 2, &emp).unwrap();
    let re = reduce(&ge, &f.index.special_factors(2).unwrap()).unwrap();
    assert!(re.degenerate);
    assert!(re.edges[0].label.as_exact().is_some());
}

#[test]
fn mirror_examples() {
    let f = fib(1);
    let g = graph(&f, 1);
    let mu = mirror_automorphism(&g, &f.index).unwrap();
    assert!(mu.involution && mu.reverses_orientation);
    assert_eq!(mu.vertex_map, vec![0, 1]);
    // edges 00, 01, 10
    assert_eq!(mu.edge_map, vec![0, 2, 1]);

    let f = tm(2);
    let g = graph(&f, 2);
    let mu = mirror_automorphism(&g, &f.index).unwrap();
    // C(3) = 6 for Thue–Morse; the 10-edge graph is Γ_3
    assert_eq!(g.edges().len(), 6);
    let g3 = graph(&tm(3), 3);
    assert_eq!(g3.edges().len(), 10);
    assert!(mirror_automorphism(&g3, &tm(3).index).unwrap().involution);
    let e001 = g.edge_id(&[0, 0, 1]).unwrap();
    assert_eq!(mu.edge_map[e001], g.edge_id(&[1, 0, 0]).unwrap());
    assert!(mu.involution);

    // closure is checked on the window before the graph is touched
    let idx = FactorIndex::build(&word(vec![0, 1, 1, 1, 1, 1, 1, 1], 2), 3).unwrap();
    assert_eq!(
        mirror_automorphism(&g, &idx),
        Err(Error::NotReversalClosed { witness: "01".into() })
    );
}

#[test]
fn mu_classification_examples() {
    let f = fib(1);
    let g = graph(&f, 1);
    let r = reduce(&g, &f.index.special_factors(1).unwrap()).unwrap();
    let mu = mirror_automorphism(&g, &f.index).unwrap();
    let c = classify_mu_paths(&g, &r, &mu, &f.index).unwrap();
    assert_eq!((c.a, c.b), (2, 0));
    assert_eq!((c.a_expected, c.ab_expected), (2, 2));
    assert!(c.identities_hold());

    let f = tm(1);
    let g = graph(&f, 1);
    let r = reduce(&g, &f.index.special_factors(1).unwrap()).unwrap();
    let mu = mirror_automorphism(&g, &f.index).unwrap();
    let c = classify_mu_paths(&g, &r, &mu, &f.index).unwrap();
    assert_eq!((c.a, c.b), (2, 2));
    assert_eq!((c.a_expected, c.ab_expected), (2, 4));
    assert!(c.identities_hold());
}

#[test]
fn permutation_examples() {
    let f = tm(1);
    let g = graph(&f, 1);
    let swap = permutation_symmetry(&g, &f.index, &[1, 0]).unwrap();
    assert!(swap.involution && !swap.reverses_orientation);
    let paths = decompose_simple_paths(&g, &f.index.special_factors(1).unwrap()).unwrap();
    assert_eq!(swap.fixed_paths(&g, &paths).unwrap(), 0);
    let id = permutation_symmetry(&g, &f.index, &[0, 1]).unwrap();
    assert_eq!(id.fixed_paths(&g, &paths).unwrap(), paths.len());
    assert_eq!(id.vertex_map, vec![0, 1]);

    let f = fib(1);
    let g = graph(&f, 1);
    assert_eq!(
        permutation_symmetry(&g, &f.index, &[1, 0]),
        Err(Error::NotClosedUnderPermutation { witness: "11".into() })
    );
    assert!(matches!(
        permutation_symmetry(&g, &f.index, &[0, 0]),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn dot_examples() {
    let f = fib(1);
    let g = graph(&f, 1);
    let s = f.index.special_factors(1).unwrap();
    let r = reduce(&g, &s).unwrap();
    let mu = mirror_automorphism(&g, &f.index).unwrap();
    let c = classify_mu_paths(&g, &r, &mu, &f.index).unwrap();
    let dot = reduced_to_dot(&g, &r, Some(&c));
    assert_eq!(
        dot,
        "digraph reduced_rauzy {\n  graph [order=1, engine=\"block-perron\"];\n  node [shape=ellipse];\n  \"0\";\n  \
         \"0\" -> \"0\" [label=\"(-2+1√5)\", path=\"0 0\", style=dashed];\n  \
         \"0\" -> \"0\" [label=\"(3/2-1/2√5)\", path=\"0 1 0\", style=dashed];\n}\n"
    );
    let f = tm(1);
    let g = graph(&f, 1);
    let dot = graph_to_dot(&g, None);
    let labels: Vec<&str> = dot.lines().filter(|l| l.contains("->")).map(|l| l.split('"').nth(5).unwrap()).collect();
    assert_eq!(labels, ["1/6", "1/3", "1/3", "1/6"]);
    assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 2);

    let f = periodic_fixture(&[0, 1], 2);
    let g = graph(&f, 2);
    let r = reduce(&g, &f.index.special_factors(2).unwrap()).unwrap();
    assert!(reduced_to_dot(&g, &r, None).contains("\"*\" [degenerate=true];"));
}

#[test]
fn mu_pairs_share_colors() {
    let f = tm(1);
    let g = graph(&f, 1);
    let s = f.index.special_factors(1).unwrap();
    let r = reduce(&g, &s).unwrap();
    let mu = mirror_automorphism(&g, &f.index).unwrap();
    let c = classify_mu_paths(&g, &r, &mu, &f.index).unwrap();
    let dot = graph_to_dot(&g, Some((&r.paths, &c)));
    let line = |factor: &str| dot.lines().find(|l| l.contains(&format!("factor=\"{factor}\""))).unwrap().to_string();
    assert!(line("00").contains("dashed") && line("11").contains("dashed"));
    let color = |l: String| l.split("color=").nth(1).unwrap().to_string();
    assert_eq!(color(line("01")), color(line("10")));
}

/// Full structural check of one exact window.
fn check_structure(f: &Fixture, n: usize, reversal_closed: bool) {
    let g = graph(f, n);
    let s = f.index.special_factors(n).unwrap();
    let (c, dc) = f.index.complexity(n).unwrap();
    assert_eq!(g.vertices().len(), c);
    assert_eq!(g.edges().len(), c + dc);
    for e in g.edges() {
        assert_eq!(g.vertices()[e.source][..], e.factor[..n]);
        assert_eq!(g.vertices()[e.target][..], e.factor[1..]);
    }
    assert_eq!(kirchhoff_residual(&g), Frequency::ratio(0, 1));
    let r = reduce(&g, &s).unwrap();
    assert!(r.preserves_labels(&g));
    if r.degenerate {
        assert_eq!(dc, 0);
        return;
    }
    assert_eq!(r.edge_count(), ReducedRauzyGraph::predicted_edge_count(&s, dc));
    assert_eq!(r.edge_count(), ReducedRauzyGraph::eq4_edge_count(&g, &s));
    let mut covered: Vec<usize> = r.paths.iter().flat_map(|p| p.edges.clone()).collect();
    covered.sort();
    assert_eq!(covered, (0..g.edges().len()).collect::<Vec<_>>());
    for p in &r.paths {
        assert!(p.edges.iter().all(|&e| g.edges()[e].label == p.label));
    }
    if reversal_closed {
        let mu = mirror_automorphism(&g, &f.index).unwrap();
        assert!(mu.involution);
        let cls = classify_mu_paths(&g, &r, &mu, &f.index).unwrap();
        assert!(cls.identities_hold(), "n={n}: {cls:?}");
        // μ maps w(0)…w(m) to the reversed sequence of mirrored vertices
        for (i, &j) in cls.path_image.iter().enumerate() {
            let image: Vec<usize> = r.paths[i].vertices.iter().rev().map(|&v| mu.vertex_map[v]).collect();
            assert_eq!(image, r.paths[j].vertices);
        }
    }
}

#[test]
fn structure_of_standard_sources() {
    for n in 0..8 {
        check_structure(&fib(n), n, true);
        check_structure(&tm(n), n, true);
        check_structure(&morphism_fixture("0->001;1->01", n, 5000), n, true);
    }
    for n in 1..8 {
        check_structure(&periodic_fixture(&[0, 1, 1, 0], n), n, true);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parry_windows_are_structured(a in 1usize..4, b in 1usize..3, n in 1usize..10) {
        prop_assume!(a >= b);
        let rules = format!("0->{}1;1->{}1", "0".repeat(a), "0".repeat(b));
        check_structure(&morphism_fixture(&rules, n, 20_000), n, true);
    }

    #[test]
    fn periodic_windows_are_structured(pattern in prop::collection::vec(0u32..3, 1..7), n in 1usize..9) {
        prop_assume!(pattern.iter().any(|&l| l != pattern[0]));
        let f = periodic_fixture(&pattern, n);
        let closed = f.index.reversal_closure_defect(n).unwrap().is_empty()
            && f.index.reversal_closure_defect(n + 1).unwrap().is_empty();
        check_structure(&f, n, closed);
    }
}
