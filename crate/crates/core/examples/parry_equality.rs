//! Orders where Parry fixed points attain 2ΔC(n) + 1 distinct frequencies.

use factorfreq::bounds::{verify_range, AnalysisConfig};
use factorfreq::words::WordSource;

pub fn run_example() -> factorfreq::Result<Vec<String>> {
    let mut lines = Vec::new();
    for (a, b) in [(2, 1), (3, 1)] {
        let range = verify_range(&WordSource::parry(a, b), 1, 40, &AnalysisConfig::default())?;
        let hits = range.exact_equalities.get("thm1").cloned().unwrap_or_default();
        lines.push(format!(
            "parry({a},{b}) orders 1..=40: {} violations, 2ΔC+1 equality at {:?}",
            range.violations.len(),
            hits
        ));
    }
    Ok(lines)
}

fn main() -> factorfreq::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
