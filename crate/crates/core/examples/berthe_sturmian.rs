//! Sturmian words take 2 or 3 frequency values on factors of each length.

use factorfreq::bounds::{Analysis, AnalysisConfig};
use factorfreq::words::WordSource;
use factorfreq::QuadraticNumber;

pub fn run_example() -> factorfreq::Result<Vec<String>> {
    let silver = QuadraticNumber::from_parts(-1, 1, 1, 1, 2);
    let mut lines = Vec::new();
    for source in [
        WordSource::fibonacci_mechanical(),
        WordSource::Mechanical {
            slope: silver.clone(),
            intercept: QuadraticNumber::zero(),
        },
    ] {
        let analysis = Analysis::new(source.clone(), 21, AnalysisConfig::default())?;
        for v in analysis.berthe_check(1, 20)? {
            lines.push(format!(
                "{} n={:2}: F={} bispecial in L_(n-1): {:5} holds: {}",
                source.describe(),
                v.n,
                v.f,
                v.has_bispecial,
                v.holds
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
