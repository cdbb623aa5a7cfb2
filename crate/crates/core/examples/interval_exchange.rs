//! Coding of a three-interval exchange and its exact cylinder frequencies.

use factorfreq::frequency::cylinder_frequencies;
use factorfreq::words::{iet_coding_prefix, IntervalExchange};
use factorfreq::QuadraticNumber;

pub fn run_example() -> factorfreq::Result<Vec<String>> {
    let a = QuadraticNumber::from_parts(-1, 1, 1, 1, 2);
    let lengths = vec![a.clone(), a, QuadraticNumber::from_parts(3, 1, -2, 1, 2)];
    let prefix = iet_coding_prefix(&lengths, &[3, 2, 1], &QuadraticNumber::zero(), 60, None)?;
    let mut lines = vec![prefix.iter().map(|l| l.to_string()).collect::<String>()];
    let t = IntervalExchange::new(lengths, &[3, 2, 1])?;
    for (w, f) in cylinder_frequencies(&t, 3) {
        let w: String = w.iter().map(|l| l.to_string()).collect();
        lines.push(format!("ρ({w}) = {f}"));
    }
    Ok(lines)
}

fn main() -> factorfreq::Result<()> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
