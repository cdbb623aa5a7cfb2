//! Complexity, palindromes and special factors of a Thue–Morse prefix.

use factorfreq::factors::FactorIndex;
use factorfreq::words::WordSource;

pub fn run_example() -> factorfreq::Result<String> {
    let word = WordSource::thue_morse().generate(4096)?;
    let index = FactorIndex::build(&word, 12)?;
    let mut out = index.stats_csv(1, 11)?;
    let specials = index.special_factors(3)?;
    let bs: Vec<String> = specials.bispecial.iter().map(|w| index.render(w)).collect();
    out.push_str(&format!("bispecial factors of length 3: {}\n", bs.join(" ")));
    Ok(out)
}

fn main() -> factorfreq::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
