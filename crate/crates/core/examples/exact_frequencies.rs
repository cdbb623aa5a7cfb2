//! Exact factor frequencies from the Perron eigenvector of block morphisms.

use factorfreq::frequency::{block_morphism, exact_factor_frequencies, perron_frequencies};
use factorfreq::words::Morphism;

pub fn run_example() -> factorfreq::Result<Vec<String>> {
    let mut lines = Vec::new();
    for rules in ["0->01;1->0", "0->01;1->10", "0->001;1->01"] {
        let m: Morphism = rules.parse()?;
        let letters = perron_frequencies(&m)?;
        lines.push(format!("{rules}: λ = {}", letters.eigenvalue));
        let two = block_morphism(&m, 0, 2)?;
        lines.push(format!("  2-block morphism: {}", two.morphism));
        let (freqs, _) = exact_factor_frequencies(&m, 0, 3)?;
        for (w, f) in &freqs {
            lines.push(format!("  ρ({}) = {f}", m.alphabet().render(w)));
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
