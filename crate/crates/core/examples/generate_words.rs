//! Prefixes of the bundled word families.

use factorfreq::words::WordSource;
use factorfreq::QuadraticNumber;

pub fn run_example() -> factorfreq::Result<Vec<String>> {
    let sqrt2_minus_1 = QuadraticNumber::from_parts(-1, 1, 1, 1, 2);
    let sources = [
        WordSource::fibonacci(),
        WordSource::thue_morse(),
        WordSource::parry(2, 1),
        WordSource::fibonacci_mechanical(),
        WordSource::IntervalExchange {
            lengths: vec![
                sqrt2_minus_1.clone(),
                sqrt2_minus_1.clone(),
                QuadraticNumber::from_parts(3, 1, -2, 1, 2),
            ],
            permutation: vec![3, 2, 1],
            start: QuadraticNumber::zero(),
            precision_bits: None,
        },
        WordSource::periodic("0110"),
    ];
    let mut lines = Vec::new();
    for s in &sources {
        lines.push(format!("{:<60} {}", s.describe(), s.generate(40)?));
    }
    Ok(lines)
}

fn main() -> factorfreq::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
