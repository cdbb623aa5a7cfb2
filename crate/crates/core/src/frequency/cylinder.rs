//! Exact frequencies for codings of interval exchanges.
//!
//! For a uniquely ergodic exchange `T` (every irrational rotation, and any
//! exchange satisfying Keane's condition) the frequency of `w` equals the
//! Lebesgue measure of its cylinder `{x : x, Tx, ... code w}`. Cylinders of
//! length `len` are the intervals cut out by `0` and the points
//! `T^{-j}(β_i)`, `j < len`.

use std::collections::BTreeMap;

use super::{exact_assignment, Engine, FrequencyAssignment, Provenance};
use crate::error::Result;
use crate::qnum::QuadraticNumber;
use crate::words::{Letter, IntervalExchange};

/// Measure of every cylinder of length `len`, keyed by its coding word.
pub fn cylinder_frequencies(iet: &IntervalExchange, len: usize) -> BTreeMap<Vec<Letter>, QuadraticNumber> {
    if len == 0 {
        return BTreeMap::from([(Vec::new(), QuadraticNumber::one())]);
    }
    let mut cuts = vec![QuadraticNumber::zero()];
    let mut layer: Vec<QuadraticNumber> = iet.discontinuities().to_vec();
    for j in 0..len {
        cuts.extend(layer.iter().cloned());
        if j + 1 < len {
            layer = layer.iter().map(|y| iet.inverse(y)).collect();
        }
    }
    cuts.sort();
    cuts.dedup();
    cuts.push(QuadraticNumber::one());
    let mut out: BTreeMap<Vec<Letter>, QuadraticNumber> = BTreeMap::new();
    for pair in cuts.windows(2) {
        let w = iet.code(&pair[0], len);
        let width = &pair[1] - &pair[0];
        let slot = out.entry(w).or_insert_with(QuadraticNumber::zero);
        *slot = &*slot + &width;
    }
    out
}

/// Exact assignment for orders `n` and `n + 1` of a coding of `iet`.
pub fn iet_frequencies(iet: &IntervalExchange, n: usize) -> Result<FrequencyAssignment> {
    Ok(exact_assignment(
        n,
        Engine::Cylinder,
        Provenance::default(),
        cylinder_frequencies(iet, n),
        cylinder_frequencies(iet, n + 1),
    ))
}
