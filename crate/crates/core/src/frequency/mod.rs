//! Factor frequencies.
//!
//! Four engines produce a [`FrequencyAssignment`] for the vertices (`L_n`) and
//! edges (`L_{n+1}`) of the order-`n` Rauzy graph:
//!
//! * `Empirical`: occurrence counts in a finite prefix, as exact rationals.
//! * `BlockPerron`: exact values for fixed points of primitive morphisms whose
//!   dominant eigenvalue has degree at most two.
//! * `Cyclic`: exact values for purely periodic words.
//! * `Cylinder`: exact lengths of cylinder intervals for codings of irrational
//!   rotations and interval exchanges.

mod cylinder;
mod perron;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::FactorIndex;
use crate::qnum::{format_rational, parse_rational, QuadraticNumber};
use crate::words::Letter;

pub use cylinder::{cylinder_frequencies, iet_frequencies};
pub use perron::{
    block_morphism, exact_factor_frequencies, exact_frequencies, exact_language, perron_frequencies,
    BlockMorphism, PerronVector,
};

/// Default empirical merge slack `τ`.
pub const DEFAULT_SLACK: i64 = 4;

/// A factor frequency.
#[derive(Clone, Debug)]
pub enum Frequency {
    ExactRational(BigRational),
    ExactQuadratic(QuadraticNumber),
    Approx { value: f64, err: f64 },
}

impl Frequency {
    /// Exact value, stored as a rational when it is one.
    pub fn exact(q: QuadraticNumber) -> Self {
        match q.as_rational() {
            Some(r) => Frequency::ExactRational(r.clone()),
            None => Frequency::ExactQuadratic(q),
        }
    }

    pub fn ratio(p: u64, q: u64) -> Self {
        Frequency::ExactRational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Frequency::Approx { .. })
    }

    pub fn as_exact(&self) -> Option<QuadraticNumber> {
        match self {
            Frequency::ExactRational(r) => Some(QuadraticNumber::rational(r.clone())),
            Frequency::ExactQuadratic(q) => Some(q.clone()),
            Frequency::Approx { .. } => None,
        }
    }

    pub fn value_f64(&self) -> f64 {
        match self {
            Frequency::ExactRational(r) => r.to_f64().unwrap_or(f64::NAN),
            Frequency::ExactQuadratic(q) => q.to_f64(),
            Frequency::Approx { value, .. } => *value,
        }
    }

    pub fn error_bound(&self) -> f64 {
        match self {
            Frequency::Approx { err, .. } => *err,
            _ => 0.0,
        }
    }

    /// Exact comparison when both are exact, interval overlap otherwise.
    pub fn same_value(&self, other: &Frequency) -> bool {
        match (self.as_exact(), other.as_exact()) {
            (Some(a), Some(b)) => a == b,
            _ => (self.value_f64() - other.value_f64()).abs() <= self.error_bound() + other.error_bound(),
        }
    }

    /// Total order on exact values; approximate values order by midpoint.
    pub fn cmp_value(&self, other: &Frequency) -> Ordering {
        match (self.as_exact(), other.as_exact()) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.value_f64().total_cmp(&other.value_f64()),
        }
    }
}

impl PartialEq for Frequency {
    fn eq(&self, other: &Self) -> bool {
        self.same_value(other)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frequency::ExactRational(r) => f.write_str(&format_rational(r)),
            Frequency::ExactQuadratic(q) => write!(f, "{q}"),
            Frequency::Approx { value, err } => write!(f, "{value:.12}±{err:.1e}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum FrequencyRepr {
    ExactRational { value: String },
    ExactQuadratic { value: QuadraticNumber },
    Approx { value: f64, err: f64 },
}

impl Serialize for Frequency {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Frequency::ExactRational(r) => FrequencyRepr::ExactRational {
                value: format_rational(r),
            },
            Frequency::ExactQuadratic(q) => FrequencyRepr::ExactQuadratic { value: q.clone() },
            Frequency::Approx { value, err } => FrequencyRepr::Approx {
                value: *value,
                err: *err,
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Frequency {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Ok(match FrequencyRepr::deserialize(de)? {
            FrequencyRepr::ExactRational { value } => {
                Frequency::ExactRational(parse_rational(&value).map_err(serde::de::Error::custom)?)
            }
            FrequencyRepr::ExactQuadratic { value } => Frequency::exact(value),
            FrequencyRepr::Approx { value, err } => Frequency::Approx { value, err },
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Empirical,
    BlockPerron,
    Cyclic,
    Cylinder,
}

impl Engine {
    pub fn is_exact(self) -> bool {
        self != Engine::Empirical
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Empirical => "empirical",
            Engine::BlockPerron => "block-perron",
            Engine::Cyclic => "cyclic",
            Engine::Cylinder => "cylinder",
        })
    }
}

/// Where the values came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// prefix length for the empirical engine
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    /// morphism power used by the block-Perron engine
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    /// period of a cyclic source
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
}

/// Frequencies of the factors of lengths `n` and `n + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct FrequencyAssignment {
    pub order: usize,
    pub engine: Engine,
    pub provenance: Provenance,
    #[serde(serialize_with = "serialize_values")]
    values: BTreeMap<Vec<Letter>, Frequency>,
}

/// JSON object keys must be strings; factors are written as `[letters, value]` pairs.
fn serialize_values<S: serde::Serializer>(
    values: &BTreeMap<Vec<Letter>, Frequency>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter())
}

impl FrequencyAssignment {
    pub fn new(
        order: usize,
        engine: Engine,
        provenance: Provenance,
        values: BTreeMap<Vec<Letter>, Frequency>,
    ) -> Self {
        FrequencyAssignment {
            order,
            engine,
            provenance,
            values,
        }
    }

    pub fn get(&self, w: &[Letter]) -> Option<&Frequency> {
        self.values.get(w)
    }

    /// Factors of length `len` with their frequencies, lexicographically.
    pub fn of_length(&self, len: usize) -> impl Iterator<Item = (&Vec<Letter>, &Frequency)> {
        self.values.iter().filter(move |(w, _)| w.len() == len)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Letter>, &Frequency)> {
        self.values.iter()
    }

    /// Exact sum of the frequencies of one length; `None` for approximate values.
    pub fn exact_total(&self, len: usize) -> Option<QuadraticNumber> {
        self.of_length(len).map(|(_, f)| f.as_exact()).sum()
    }
}

/// Builds an exact assignment for orders `n` and `n + 1` from a value table.
pub(crate) fn exact_assignment(
    n: usize,
    engine: Engine,
    provenance: Provenance,
    vertices: BTreeMap<Vec<Letter>, QuadraticNumber>,
    edges: BTreeMap<Vec<Letter>, QuadraticNumber>,
) -> FrequencyAssignment {
    let values = vertices
        .into_iter()
        .chain(edges)
        .map(|(w, q)| (w, Frequency::exact(q)))
        .collect();
    FrequencyAssignment::new(n, engine, provenance, values)
}

/// `ρ̂(w) = count(w) / (N - |w| + 1)` for `w` in `L_n ∪ L_{n+1}`.
pub fn empirical_frequencies(index: &FactorIndex, n: usize) -> Result<FrequencyAssignment> {
    if n + 1 > index.n_max() {
        return Err(Error::OutOfWindow { n, cap: index.n_max() });
    }
    let big_n = index.len() as u64;
    let mut values = BTreeMap::new();
    for len in [n, n + 1] {
        let positions = big_n - len as u64 + 1;
        for w in index.factors(len)? {
            values.insert(w.to_vec(), Frequency::ratio(index.count(w), positions));
        }
    }
    Ok(FrequencyAssignment::new(
        n,
        Engine::Empirical,
        Provenance {
            window: Some(index.len()),
            ..Provenance::default()
        },
        values,
    ))
}

/// Exact frequencies of the factors of length `len` of the periodic word `pattern^ω`.
pub fn cyclic_frequencies(pattern: &[Letter], len: usize) -> Result<BTreeMap<Vec<Letter>, QuadraticNumber>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let q = pattern.len();
    let mut counts: BTreeMap<Vec<Letter>, i64> = BTreeMap::new();
    for i in 0..q {
        let w: Vec<Letter> = (0..len).map(|j| pattern[(i + j) % q]).collect();
        *counts.entry(w).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(w, c)| (w, QuadraticNumber::from_ratio(c, q as i64)))
        .collect())
}

/// Exact assignment for `pattern^ω` at order `n`.
pub fn periodic_frequencies(pattern: &[Letter], n: usize) -> Result<FrequencyAssignment> {
    Ok(exact_assignment(
        n,
        Engine::Cyclic,
        Provenance {
            period: Some(pattern.len()),
            ..Provenance::default()
        },
        cyclic_frequencies(pattern, n)?,
        cyclic_frequencies(pattern, n + 1)?,
    ))
}

/// Factors sharing one frequency.
#[derive(Clone, Debug, Serialize)]
pub struct FrequencyClass {
    pub representative: Frequency,
    pub members: Vec<Vec<Letter>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Clustering {
    pub classes: Vec<FrequencyClass>,
    /// number of distinct raw values before any tolerance merge
    pub distinct_values: usize,
    /// merge tolerance `τ / (N - n)`, empirical engine only
    pub tolerance: Option<String>,
}

impl Clustering {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// Groups the factors of length `len` by frequency.
///
/// Exact engines group by exact equality. The empirical engine merges values
/// whose gap is at most `slack / (N - n)` with `n = len - 1`, chaining through
/// sorted order; approximate values merge when their error intervals overlap.
pub fn cluster_frequencies(
    assignment: &FrequencyAssignment,
    len: usize,
    slack: &BigRational,
) -> Result<Clustering> {
    let mut items: Vec<(Vec<Letter>, Frequency)> = assignment
        .of_length(len)
        .map(|(w, f)| (w.clone(), f.clone()))
        .collect();
    if items.is_empty() {
        return Err(Error::MissingFrequency(format!("no factors of length {len}")));
    }
    items.sort_by(|a, b| a.1.cmp_value(&b.1).then_with(|| a.0.cmp(&b.0)));
    let mut distinct_values = 1;
    for pair in items.windows(2) {
        if pair[0].1.cmp_value(&pair[1].1) != Ordering::Equal {
            distinct_values += 1;
        }
    }

    let tolerance = match (assignment.engine, assignment.provenance.window) {
        (Engine::Empirical, Some(big_n)) => {
            let denom = big_n as i64 - len as i64 + 1;
            if denom <= 0 {
                return Err(Error::OutOfWindow { n: len, cap: big_n });
            }
            Some(slack / BigRational::from_integer(BigInt::from(denom)))
        }
        _ => None,
    };
    let merge = |a: &Frequency, b: &Frequency| -> bool {
        match (&tolerance, a.as_exact(), b.as_exact()) {
            (Some(tol), Some(x), Some(y)) => {
                let gap = (&x - &y).abs();
                gap <= QuadraticNumber::rational(tol.clone())
            }
            (None, Some(x), Some(y)) => x == y,
            _ => a.same_value(b),
        }
    };

    let mut groups: Vec<Vec<(Vec<Letter>, Frequency)>> = Vec::new();
    for item in items {
        match groups.last_mut() {
            Some(g) if merge(&g.last().expect("nonempty group").1, &item.1) => g.push(item),
            _ => groups.push(vec![item]),
        }
    }
    let classes = groups
        .into_iter()
        .map(|g| {
            let representative = if tolerance.is_some() {
                mean(g.iter().map(|(_, f)| f))
            } else {
                g[0].1.clone()
            };
            FrequencyClass {
                representative,
                members: g.into_iter().map(|(w, _)| w).collect(),
            }
        })
        .collect();
    Ok(Clustering {
        classes,
        distinct_values,
        tolerance: tolerance.map(|t| format_rational(&t)),
    })
}

/// Exact mean of exact values, midpoint mean otherwise.
pub(crate) fn mean<'a, I: Iterator<Item = &'a Frequency> + Clone>(values: I) -> Frequency {
    let n = values.clone().count() as i64;
    let exact: Option<QuadraticNumber> = values.clone().map(Frequency::as_exact).sum();
    match exact {
        Some(total) => Frequency::exact(&total / &QuadraticNumber::from_integer(n)),
        None => {
            let v = values.clone().map(Frequency::value_f64).sum::<f64>() / n as f64;
            let e = values.map(Frequency::error_bound).fold(0.0, f64::max);
            Frequency::Approx { value: v, err: e }
        }
    }
}

/// Default slack as a rational.
pub fn default_slack() -> BigRational {
    BigRational::from_integer(BigInt::from(DEFAULT_SLACK))
}
