//! Every bound for the Fibonacci word over orders 1..=25, as CSV.

use factorfreq::bounds::{verify_range, AnalysisConfig};
use factorfreq::words::WordSource;

pub fn run_example() -> factorfreq::Result<String> {
    let range = verify_range(&WordSource::fibonacci(), 1, 25, &AnalysisConfig::default())?;
    assert!(range.is_clean());
    let mut out = range.to_csv()?;
    out.push_str(&format!("finer bound reached at n = {:?}\n", range.exact_equalities["finer"]));
    Ok(out)
}

fn main() -> factorfreq::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
