//! The mirror automorphism μ on simple paths and the counts A and B.

use factorfreq::bounds::{Analysis, AnalysisConfig};
use factorfreq::rauzy::{classify_mu_paths, mirror_automorphism, permutation_symmetry};
use factorfreq::words::WordSource;

pub fn run_example() -> factorfreq::Result<Vec<String>> {
    let mut lines = Vec::new();
    for (name, source) in [("fibonacci", WordSource::fibonacci()), ("thue-morse", WordSource::thue_morse())] {
        let analysis = Analysis::new(source, 9, AnalysisConfig::default())?;
        let idx = analysis.index();
        for n in 1..=8 {
            let g = analysis.graph(n)?;
            let r = analysis.reduced(&g)?;
            let mu = mirror_automorphism(&g, idx)?;
            let c = classify_mu_paths(&g, &r, &mu, idx)?;
            let swap = permutation_symmetry(&g, idx, &[1, 0])
                .and_then(|t| t.fixed_paths(&g, &r.paths))
                .map_or("not a symmetry".to_string(), |k| format!("{k} fixed paths"));
            lines.push(format!(
                "{name} n={n}: A={} (P(n)+P(n+1)-Y={}) B={} A+B={} (ΔC+2Z-X={}) μ²=id:{} exchange: {swap}",
                c.a,
                c.a_expected,
                c.b,
                c.a + c.b,
                c.ab_expected,
                mu.involution
            ));
        }
    }
    Ok(lines)
}

fn main() -> factorfreq::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
