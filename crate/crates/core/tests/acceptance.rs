//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::time::Instant;

use factorfreq::bounds::{verify_range, Analysis, AnalysisConfig, EnginePreference, Verdict};
use factorfreq::factors::{reversed, FactorIndex};
use factorfreq::frequency::{empirical_frequencies, exact_factor_frequencies, Engine};
use factorfreq::rauzy::{classify_mu_paths, kirchhoff_residual, mirror_automorphism};
use factorfreq::words::{Letter, Morphism, WordSource};
use factorfreq::QuadraticNumber;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact() -> AnalysisConfig {
    AnalysisConfig {
        engine: EnginePreference::Exact,
        ..AnalysisConfig::default()
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn silver_mechanical() -> WordSource {
    WordSource::Mechanical {
        slope: QuadraticNumber::from_parts(-1, 1, 1, 1, 2),
        intercept: QuadraticNumber::zero(),
    }
}

fn iet3() -> WordSource {
    let a = QuadraticNumber::from_parts(-1, 1, 1, 1, 2);
    WordSource::IntervalExchange {
        lengths: vec![a.clone(), a, QuadraticNumber::from_parts(3, 1, -2, 1, 2)],
        permutation: vec![3, 2, 1],
        start: QuadraticNumber::zero(),
        precision_bits: None,
    }
}

/// 1. Fibonacci exactness over n = 1..25.
fn fibonacci_exactness() -> Check {
    let a = Analysis::new(WordSource::fibonacci(), 26, exact()).map_err(e)?;
    ensure(a.engine() == Engine::BlockPerron, || format!("engine {}", a.engine()))?;
    let range = a.verify_range(1, 25).map_err(e)?;
    ensure(range.is_clean(), || format!("violations {:?}", range.violations))?;
    for r in &range.reports {
        ensure(r.f == 2 || r.f == 3, || format!("n={}: F={}", r.n, r.f))?;
        ensure((r.f == 2) == (r.x > 0), || format!("n={}: F={} X={}", r.n, r.f, r.x))?;
        ensure(r.finer.verdict == Verdict::HoldsEquality { exact: true }, || {
            format!("n={}: finer {:?}", r.n, r.finer)
        })?;
    }
    let berthe = a.berthe_check(1, 26).map_err(e)?;
    ensure(berthe.iter().all(|v| v.holds), || format!("{berthe:?}"))?;
    Ok("F ∈ {2,3}, F = 2 ⇔ BS factor, finer bound attained exactly for n = 1..25".into())
}

/// 2. Worked identities at n = 1 (Fibonacci).
fn fibonacci_identities() -> Check {
    let a = Analysis::new(WordSource::fibonacci(), 2, exact()).map_err(e)?;
    let g = a.graph(1).map_err(e)?;
    let r = a.reduced(&g).map_err(e)?;
    let mu = mirror_automorphism(&g, a.index()).map_err(e)?;
    let c = classify_mu_paths(&g, &r, &mu, a.index()).map_err(e)?;
    ensure((c.a, c.b) == (2, 0), || format!("A={} B={}", c.a, c.b))?;
    ensure(c.a_expected == 2 && c.ab_expected == 2, || format!("{c:?}"))?;
    ensure(c.identities_hold(), || format!("{c:?}"))?;
    ensure(r.edge_count() == 2, || format!("reduced edges {}", r.edge_count()))?;
    Ok("A=2, B=0, A=P(1)+P(2)-Y, A+B=ΔC+2Z-X, |E(Γ̃_1)|=2".into())
}

/// 3. Thue–Morse exactness and the exchange symmetry.
fn thue_morse_exactness() -> Check {
    let m: Morphism = "0->01;1->10".parse().map_err(e)?;
    let (f2, _) = exact_factor_frequencies(&m, 0, 2).map_err(e)?;
    let mut values: Vec<String> = f2.values().map(|v| v.to_string()).collect();
    values.sort();
    ensure(values == ["1/3", "1/3", "1/6", "1/6"], || format!("{values:?}"))?;
    let range = verify_range(&WordSource::thue_morse(), 1, 15, &exact()).map_err(e)?;
    ensure(range.is_clean(), || format!("violations {:?}", range.violations))?;
    for r in &range.reports {
        ensure(
            matches!(r.three_halves.verdict, Verdict::HoldsStrict | Verdict::HoldsEquality { .. }),
            || format!("n={}: three_halves {:?}", r.n, r.three_halves),
        )?;
        ensure(matches!(r.finer.verdict, Verdict::HoldsStrict | Verdict::HoldsEquality { .. }), || {
            format!("n={}: finer {:?}", r.n, r.finer)
        })?;
        ensure(r.identities.exchange_fixes_no_path == Some(true), || {
            format!("n={}: exchange {:?}", r.n, r.identities.exchange_fixes_no_path)
        })?;
    }
    Ok("L_2 = {1/3,1/3,1/6,1/6}; F ≤ 3/2·ΔC and finer bound for n=1..15; 0↔1 fixes no simple path".into())
}

/// 4. Periodic words attain 2ΔC + 1 with equality 1 = 2·0 + 1.
fn periodic_equality() -> Check {
    for pattern in ["01", "001", "0110"] {
        let q = pattern.len();
        let range = verify_range(&WordSource::periodic(pattern), q, q + 15, &exact()).map_err(e)?;
        ensure(range.is_clean(), || format!("{pattern}: {:?}", range.violations))?;
        for r in &range.reports {
            ensure(r.delta_c == 0 && r.f == 1, || format!("{pattern} n={}: ΔC={} F={}", r.n, r.delta_c, r.f))?;
            ensure(r.theorem1.verdict == Verdict::HoldsEquality { exact: true }, || {
                format!("{pattern} n={}: {:?}", r.n, r.theorem1)
            })?;
        }
    }
    Ok("patterns 01, 001, 0110: ΔC=0, F=1, F = 2ΔC+1 for n ≥ period".into())
}

/// 5. Parry substitutions: no violation, some exact equality index.
fn parry_equality() -> Check {
    let mut found = Vec::new();
    for (a, b) in [(2, 1), (3, 1)] {
        let range = verify_range(&WordSource::parry(a, b), 1, 40, &exact()).map_err(e)?;
        ensure(range.is_clean(), || format!("parry({a},{b}): {:?}", range.violations))?;
        let hits = range.exact_equalities.get("thm1").cloned().unwrap_or_default();
        ensure(!hits.is_empty(), || format!("parry({a},{b}): no equality index"))?;
        found.push(format!("({a},{b}) first equality at n={}", hits[0]));
    }
    Ok(format!("orders 1..40 clean; {}", found.join(", ")))
}

/// 6. Structural identities over every tested source and order.
fn structural_identities() -> Check {
    let empirical = AnalysisConfig {
        engine: EnginePreference::Empirical,
        prefix_len: Some(200_000),
        ..AnalysisConfig::default()
    };
    let cases: Vec<(WordSource, AnalysisConfig, usize)> = vec![
        (WordSource::fibonacci(), exact(), 20),
        (WordSource::thue_morse(), exact(), 15),
        (WordSource::parry(2, 1), exact(), 20),
        (WordSource::parry(3, 1), exact(), 20),
        (WordSource::fibonacci_mechanical(), exact(), 15),
        (silver_mechanical(), exact(), 15),
        (iet3(), exact(), 12),
        (WordSource::periodic("0010110"), exact(), 12),
        (WordSource::fibonacci(), empirical.clone(), 12),
        (WordSource::thue_morse(), empirical, 12),
    ];
    let mut checked = 0;
    for (source, cfg, n_to) in cases {
        let a = Analysis::new(source.clone(), n_to, cfg).map_err(e)?;
        let range = a.verify_range(1, n_to).map_err(e)?;
        ensure(range.is_clean(), || format!("{}: {:?}", source.describe(), range.violations))?;
        for r in &range.reports {
            let tag = || format!("{} ({}) n={}", source.describe(), r.engine, r.n);
            ensure(r.identities.all_hold(), || format!("{}: {:?}", tag(), r.identities))?;
            ensure(r.boshernitzan.verdict != Verdict::Violated, || format!("{}: Boshernitzan", tag()))?;
            ensure(r.z <= r.delta_c && r.ls_count <= r.delta_c, || format!("{}: Z ≤ ΔC, #LS ≤ ΔC", tag()))?;
            if r.reversal_closed {
                ensure(r.p_n + r.p_n1 <= r.delta_c + 2, || format!("{}: P(n)+P(n+1) ≤ ΔC+2", tag()))?;
            }
            let g = a.graph(r.n).map_err(e)?;
            let residual = kirchhoff_residual(&g).as_exact().ok_or_else(|| format!("{}: inexact residual", tag()))?;
            let bound = if r.engine.is_exact() {
                QuadraticNumber::zero()
            } else {
                QuadraticNumber::from_ratio(r.n as i64 + 1, (r.window - r.n) as i64)
            };
            ensure(residual <= bound, || format!("{}: Kirchhoff residual {residual}", tag()))?;
            let red = a.reduced(&g).map_err(e)?;
            if r.engine.is_exact() {
                ensure(red.preserves_labels(&g), || format!("{}: labels lost", tag()))?;
                for p in &red.paths {
                    ensure(p.edges.iter().all(|&i| g.edges()[i].label == p.label), || {
                        format!("{}: path label not constant", tag())
                    })?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("extension sums, mirror and edge-count identities, Kirchhoff, label conservation, Boshernitzan on {checked} windows"))
}

/// 7. Empirical frequencies at N = 10^6 agree with exact ones within 10·n/N.
fn engine_cross_validation() -> Check {
    let big_n = 1_000_000usize;
    let mut worst: f64 = 0.0;
    for source in [WordSource::fibonacci(), WordSource::thue_morse()] {
        let WordSource::MorphismFixedPoint { morphism, .. } = &source else {
            unreachable!()
        };
        let word = source.generate(big_n).map_err(e)?;
        let index = FactorIndex::build(&word, 13).map_err(e)?;
        for len in 1..=12usize {
            let emp = empirical_frequencies(&index, len).map_err(e)?;
            let (exact, _) = exact_factor_frequencies(morphism, 0, len).map_err(e)?;
            let tol = 10.0 * len as f64 / big_n as f64;
            let seen: BTreeMap<&Vec<Letter>, _> = emp.of_length(len).collect();
            ensure(seen.len() == exact.len(), || format!("len {len}: factor sets differ"))?;
            for (w, rho) in &exact {
                let hat = seen.get(w).ok_or_else(|| format!("len {len}: {w:?} missing"))?;
                let gap = (hat.value_f64() - rho.to_f64()).abs();
                worst = worst.max(gap * big_n as f64 / len as f64);
                ensure(gap <= tol, || format!("len {len} {w:?}: |{} - {rho}| > {tol}", hat))?;
            }
        }
    }
    Ok(format!("Fibonacci and Thue–Morse, n ≤ 12: max |ρ̂ - ρ|·N/n = {worst:.3} ≤ 10"))
}

/// 8. Mirror symmetry on reversal-closed windows, n ≤ 20.
fn mirror_symmetry() -> Check {
    let mut windows = 0;
    for (source, n_to) in [
        (WordSource::fibonacci(), 20),
        (WordSource::thue_morse(), 20),
        (WordSource::parry(2, 1), 20),
        (silver_mechanical(), 20),
        (iet3(), 12),
    ] {
        let a = Analysis::new(source.clone(), n_to, exact()).map_err(e)?;
        for n in 1..=n_to {
            let idx = a.index();
            if !(idx.reversal_closure_defect(n).map_err(e)?.is_empty()
                && idx.reversal_closure_defect(n + 1).map_err(e)?.is_empty())
            {
                continue;
            }
            let freqs = a.frequencies(n).map_err(e)?;
            for (w, f) in freqs.iter() {
                let back = freqs.get(&reversed(w)).ok_or_else(|| format!("{w:?} reversed missing"))?;
                ensure(back == f, || format!("{} n={n}: ρ({w:?}) ≠ ρ(reverse)", source.describe()))?;
            }
            let g = a.graph(n).map_err(e)?;
            let mu = mirror_automorphism(&g, idx).map_err(e)?;
            let twice = mu.edge_map.iter().enumerate().all(|(i, &j)| mu.edge_map[j] == i);
            ensure(mu.involution && twice, || format!("{} n={n}: μ² ≠ id", source.describe()))?;
            windows += 1;
        }
    }
    ensure(windows > 0, || "no reversal-closed window".into())?;
    Ok(format!("ρ(w) = ρ(reverse w) exactly and μ² = id on {windows} windows"))
}

/// 9. Reports are window-bounded and make no asymptotic claims.
fn window_bounded_claims() -> Check {
    let range = verify_range(&WordSource::parry(2, 1), 1, 20, &exact()).map_err(e)?;
    let json = serde_json::to_string(&range).map_err(e)?.to_lowercase();
    for word in ["infinite", "infinitely", "density", "asymptotic"] {
        ensure(!json.contains(word), || format!("report mentions `{word}`"))?;
    }
    ensure(range.exact_equalities.values().flatten().all(|&n| (1..=20).contains(&n)), || {
        "equality index outside the window".into()
    })?;
    let scan = Analysis::new(WordSource::fibonacci(), 16, exact())
        .and_then(|a| a.periodicity_equality_scan(15))
        .map_err(e)?;
    let scan_json = serde_json::to_value(&scan).map_err(e)?;
    ensure(scan_json["class"] == "aperiodic-like", || format!("{scan_json}"))?;
    Ok("equality indices and periodicity classes are reported for the tested window only".into())
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("1 fibonacci exactness", fibonacci_exactness),
        ("2 worked identities n=1", fibonacci_identities),
        ("3 thue-morse exactness", thue_morse_exactness),
        ("4 periodic equality", periodic_equality),
        ("5 parry equality", parry_equality),
        ("6 structural identities", structural_identities),
        ("7 engine cross-validation", engine_cross_validation),
        ("8 mirror symmetry", mirror_symmetry),
        ("9 window-bounded claims", window_bounded_claims),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {name}: PASS ({secs:.1}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({secs:.1}s) {why}");
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 9 criteria passed");
}
