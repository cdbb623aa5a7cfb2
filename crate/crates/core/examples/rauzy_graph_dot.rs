//! Rauzy graph and reduced Rauzy graph of the Fibonacci word as DOT.

use factorfreq::bounds::{Analysis, AnalysisConfig};
use factorfreq::rauzy::dot::{graph_to_dot, reduced_to_dot};
use factorfreq::words::WordSource;

pub fn run_example() -> factorfreq::Result<String> {
    let analysis = Analysis::new(WordSource::fibonacci(), 4, AnalysisConfig::default())?;
    let g = analysis.graph(3)?;
    let r = analysis.reduced(&g)?;
    Ok(format!("{}{}", graph_to_dot(&g, None), reduced_to_dot(&g, &r, None)))
}

fn main() -> factorfreq::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
