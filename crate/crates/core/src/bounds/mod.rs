//! Bounds on the number of distinct factor frequencies, evaluated order by
//! order with machine-checkable verdicts.
//!
//! A report "at `n`" concerns the Rauzy graph `Γ_n`: vertices of length `n`,
//! edges of length `n + 1`, and `F = #{ρ(e) : e ∈ L_{n+1}}`.

use std::collections::BTreeMap;
use std::fmt;

use log::{info, warn};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factors::FactorIndex;
use crate::frequency::{
    cluster_frequencies, default_slack, empirical_frequencies, exact_frequencies, iet_frequencies,
    perron_frequencies, periodic_frequencies, Engine, Frequency, FrequencyAssignment,
};
use crate::qnum::{common_radicand, format_rational, QuadraticNumber};
use crate::rauzy::{
    build_rauzy_graph, classify_mu_paths, decompose_simple_paths, kirchhoff_residual, mirror_automorphism,
    permutation_symmetry, reduce, RauzyGraph, ReducedRauzyGraph,
};
use crate::words::{is_primitive, Alphabet, IntervalExchange, Letter, Morphism, Word, WordSource};

/// Which frequency engine to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum EnginePreference {
    /// exact when the source admits it, empirical otherwise
    #[default]
    Auto,
    /// exact or fail
    Exact,
    Empirical,
}

/// Parameters shared by every per-order computation.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisConfig {
    pub engine: EnginePreference,
    /// prefix length; `None` picks a length adequate for the largest order
    pub prefix_len: Option<usize>,
    /// empirical merge slack `τ`
    pub slack: BigRational,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            engine: EnginePreference::Auto,
            prefix_len: None,
            slack: default_slack(),
        }
    }
}

/// Prefix length used when none is given: at least 10 000 letters and
/// adequate (200 letters per unit of length) at length `n_to + 2`.
pub fn default_prefix_len(n_to: usize) -> usize {
    10_000.max(crate::factors::ADEQUACY_FACTOR * (n_to + 2))
}

/// How exact frequencies are obtained for a source.
#[derive(Clone, Debug)]
enum ExactRoute {
    Perron(Morphism, Letter),
    Cyclic(Vec<Letter>),
    Cylinder(IntervalExchange),
}

/// Outcome of comparing a quantity with a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    HoldsStrict,
    /// `exact` is false when the compared quantity comes from the empirical engine
    HoldsEquality { exact: bool },
    Violated,
    NotApplicable,
}

impl Verdict {
    fn compare(lhs: &BigRational, rhs: &BigRational, exact: bool) -> Self {
        match lhs.cmp(rhs) {
            std::cmp::Ordering::Less => Verdict::HoldsStrict,
            std::cmp::Ordering::Equal => Verdict::HoldsEquality { exact },
            std::cmp::Ordering::Greater => Verdict::Violated,
        }
    }

    pub fn is_equality(self) -> bool {
        matches!(self, Verdict::HoldsEquality { .. })
    }

    pub fn is_exact_equality(self) -> bool {
        self == Verdict::HoldsEquality { exact: true }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsStrict => "strict",
            Verdict::HoldsEquality { exact: true } => "equal",
            Verdict::HoldsEquality { exact: false } => "equal~tol",
            Verdict::Violated => "VIOLATED",
            Verdict::NotApplicable => "n/a",
        })
    }
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// `lhs ≤ bound`, with the bound kept as an exact rational.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    #[serde(serialize_with = "ser_rational")]
    pub lhs: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub bound: BigRational,
    pub verdict: Verdict,
}

impl BoundCheck {
    fn new(lhs: BigRational, bound: BigRational, applicable: bool, exact: bool) -> Self {
        let verdict = if applicable {
            Verdict::compare(&lhs, &bound, exact)
        } else {
            Verdict::NotApplicable
        };
        BoundCheck { lhs, bound, verdict }
    }
}

/// Structural identities checked alongside the bounds. `None` when the
/// identity's hypotheses fail at this order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityChecks {
    /// `ΔC = Σ(#Rext − 1) = Σ(#Lext − 1)`
    pub extension_sums: bool,
    /// Kirchhoff residual is 0 (exact) or within `(n+1)/(N−n)` (empirical)
    pub kirchhoff: bool,
    /// reduced edge count equals `ΔC + Z + #(LS∖RS)` and the sum of right extensions of RS vertices plus `#(LS∖RS)`
    pub reduced_edge_count: Option<bool>,
    /// label set of `Γ̃_n` equals label set of `Γ_n` (exact engines); label
    /// spread along every simple path within `τ/(N−n)` (empirical)
    pub labels_preserved: bool,
    /// `Z ≤ ΔC` and `#LS ≤ ΔC`
    pub special_counts: bool,
    /// `A = P(n)+P(n+1)−Y`, `A+B = ΔC+2Z−X`, palindromic path centers
    pub mirror: Option<bool>,
    /// binary exchange on a complementation-symmetric window fixes no simple path
    pub exchange_fixes_no_path: Option<bool>,
}

impl IdentityChecks {
    pub fn all_hold(&self) -> bool {
        self.extension_sums
            && self.kirchhoff
            && self.labels_preserved
            && self.special_counts
            && self.reduced_edge_count != Some(false)
            && self.mirror != Some(false)
            && self.exchange_fixes_no_path != Some(false)
    }
}

/// Every quantity and bound at one order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub source: String,
    pub n: usize,
    pub engine: Engine,
    pub window: usize,
    pub adequate: bool,
    pub c: usize,
    pub delta_c: usize,
    pub p_n: usize,
    pub p_n1: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub ls_count: usize,
    pub a: Option<usize>,
    pub b: Option<usize>,
    /// distinct frequencies of factors of length `n + 1`
    pub f: usize,
    pub reversal_closed: bool,
    pub complement_symmetric: bool,
    pub degenerate: bool,
    pub kirchhoff_residual: Frequency,
    /// `(P(n)+P(n+1)+ΔC−X−Y)/2 + Z`
    pub lemma: BoundCheck,
    /// `2ΔC + 1`
    pub theorem1: BoundCheck,
    /// `2ΔC + 1 − X/2 − Y/2` (finer bound)
    pub finer: BoundCheck,
    /// `3ΔC` (Boshernitzan bound)
    pub boshernitzan: BoundCheck,
    /// `P(n) + P(n+1) ≤ ΔC + 2` (palindromic bound)
    pub palindromic: BoundCheck,
    /// `(3/2)ΔC` (Comments 4 and 6)
    pub three_halves: BoundCheck,
    pub identities: IdentityChecks,
}

impl BoundReport {
    /// Named checks in a fixed order.
    pub fn bounds(&self) -> [(&'static str, &BoundCheck); 6] {
        [
            ("lemma", &self.lemma),
            ("finer", &self.finer),
            ("thm1", &self.theorem1),
            ("bosh", &self.boshernitzan),
            ("pal", &self.palindromic),
            ("three_halves", &self.three_halves),
        ]
    }

    pub fn violations(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = self
            .bounds()
            .iter()
            .filter(|(_, b)| b.verdict == Verdict::Violated)
            .map(|(name, _)| *name)
            .collect();
        if !self.identities.all_hold() {
            out.push("identities");
        }
        out
    }

    /// `name=verdict` pairs joined by `;`, then the identity status.
    pub fn verdict_summary(&self) -> String {
        let mut parts: Vec<String> = self.bounds().iter().map(|(n, b)| format!("{n}={}", b.verdict)).collect();
        parts.push(format!(
            "identities={}",
            if self.identities.all_hold() { "ok" } else { "FAILED" }
        ));
        parts.join(";")
    }
}

/// Reports for a range of orders plus a summary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RangeReport {
    pub source: String,
    pub engine: Engine,
    pub reports: Vec<BoundReport>,
    /// `(n, check)` for every violated bound or failed identity
    pub violations: Vec<(usize, String)>,
    /// orders with exact equality, per bound
    pub exact_equalities: BTreeMap<String, Vec<usize>>,
    /// orders with equality within tolerance (empirical engine; advisory only)
    pub tolerance_equalities: BTreeMap<String, Vec<usize>>,
}

impl RangeReport {
    fn new(source: String, engine: Engine, reports: Vec<BoundReport>) -> Self {
        let mut violations = Vec::new();
        let mut exact_equalities: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut tolerance_equalities: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for r in &reports {
            for v in r.violations() {
                violations.push((r.n, v.to_string()));
            }
            for (name, b) in r.bounds() {
                match b.verdict {
                    Verdict::HoldsEquality { exact: true } => exact_equalities.entry(name.into()).or_default().push(r.n),
                    Verdict::HoldsEquality { exact: false } => {
                        tolerance_equalities.entry(name.into()).or_default().push(r.n)
                    }
                    _ => {}
                }
            }
        }
        RangeReport {
            source,
            engine,
            reports,
            violations,
            exact_equalities,
            tolerance_equalities,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// The `verify` CSV.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "n", "C", "dC", "P_n", "P_n1", "X", "Y", "Z", "A", "B", "F", "lemma", "finer", "thm1", "bosh", "verdicts",
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
        let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
        for r in &self.reports {
            w.write_record([
                r.n.to_string(),
                r.c.to_string(),
                r.delta_c.to_string(),
                r.p_n.to_string(),
                r.p_n1.to_string(),
                r.x.to_string(),
                r.y.to_string(),
                r.z.to_string(),
                opt(r.a),
                opt(r.b),
                r.f.to_string(),
                format_rational(&r.lemma.bound),
                format_rational(&r.finer.bound),
                format_rational(&r.theorem1.bound),
                format_rational(&r.boshernitzan.bound),
                r.verdict_summary(),
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

/// A generated prefix, its factor index and the frequency engine chosen for it.
#[derive(Clone, Debug)]
pub struct Analysis {
    source: WordSource,
    config: AnalysisConfig,
    word: Word,
    index: FactorIndex,
    route: Option<ExactRoute>,
}

/// Whether no proper initial block `{1..k}` of the permutation is invariant.
fn is_irreducible(permutation: &[usize]) -> bool {
    let k = permutation.len();
    (1..k).all(|j| permutation[..j].iter().any(|&p| p > j))
}

/// Orbit of a rational-length exchange, which is periodic; `None` past `limit` steps.
fn rational_orbit(iet: &IntervalExchange, start: &QuadraticNumber, limit: usize) -> Option<Vec<Letter>> {
    let mut x = start.clone();
    let mut out = Vec::new();
    for _ in 0..limit {
        out.push(iet.interval_of(&x) as Letter);
        x = iet.map(&x);
        if x == *start {
            return Some(out);
        }
    }
    None
}

fn exact_route(source: &WordSource, alphabet: &Alphabet) -> Result<Option<ExactRoute>> {
    Ok(match source {
        WordSource::MorphismFixedPoint { morphism, seed } => {
            let seed = morphism
                .alphabet()
                .letter(seed)
                .ok_or_else(|| Error::InvalidParameter(format!("seed `{seed}` not in alphabet")))?;
            if !is_primitive(morphism) {
                info!("morphism is not primitive; no exact engine");
                None
            } else if let Err(e) = perron_frequencies(morphism) {
                info!("no exact engine: {e}");
                None
            } else {
                Some(ExactRoute::Perron(morphism.clone(), seed))
            }
        }
        WordSource::Periodic { pattern } => Some(ExactRoute::Cyclic(alphabet.parse_word(pattern)?)),
        WordSource::Mechanical { slope, .. } => match slope.as_rational() {
            Some(r) => {
                // lower mechanical words of slope p/q are purely periodic with period q
                let q = r.denom().to_string().parse::<usize>().map_err(|_| {
                    Error::InvalidParameter("slope denominator too large".into())
                })?;
                Some(ExactRoute::Cyclic(source.generate(q)?.letters))
            }
            None => Some(ExactRoute::Cylinder(IntervalExchange::rotation(slope)?)),
        },
        WordSource::IntervalExchange {
            lengths,
            permutation,
            start,
            ..
        } => {
            if common_radicand(lengths.iter().chain(std::iter::once(start))).is_none() {
                None
            } else {
                let iet = IntervalExchange::new(lengths.clone(), permutation)?;
                if lengths.iter().all(QuadraticNumber::is_rational) {
                    rational_orbit(&iet, start, 1_000_000).map(ExactRoute::Cyclic)
                } else if is_irreducible(permutation) {
                    Some(ExactRoute::Cylinder(iet))
                } else {
                    None
                }
            }
        }
        WordSource::ExplicitPrefix { .. } => None,
    })
}

impl Analysis {
    /// Generates the prefix and indexes it up to length `n_to + 1`.
    pub fn new(source: WordSource, n_to: usize, config: AnalysisConfig) -> Result<Self> {
        let len = match (config.prefix_len, source.max_len()) {
            (Some(n), _) => n,
            (None, Some(max)) => max,
            (None, None) => default_prefix_len(n_to),
        };
        let word = source.generate(len)?;
        if word.letters.is_empty() {
            return Err(Error::Parse("source produced an empty word".into()));
        }
        let index = FactorIndex::build(&word, n_to + 1)?;
        let route = match config.engine {
            EnginePreference::Empirical => None,
            pref => {
                let route = exact_route(&source, &word.alphabet)?;
                if route.is_none() && pref == EnginePreference::Exact {
                    return Err(Error::NoExactEngine);
                }
                route
            }
        };
        Ok(Analysis {
            source,
            config,
            word,
            index,
            route,
        })
    }

    pub fn source(&self) -> &WordSource {
        &self.source
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn index(&self) -> &FactorIndex {
        &self.index
    }

    pub fn engine(&self) -> Engine {
        match &self.route {
            None => Engine::Empirical,
            Some(ExactRoute::Perron(..)) => Engine::BlockPerron,
            Some(ExactRoute::Cyclic(_)) => Engine::Cyclic,
            Some(ExactRoute::Cylinder(_)) => Engine::Cylinder,
        }
    }

    /// Frequencies of factors of lengths `n` and `n + 1`.
    pub fn frequencies(&self, n: usize) -> Result<FrequencyAssignment> {
        match &self.route {
            None => empirical_frequencies(&self.index, n),
            Some(ExactRoute::Perron(m, seed)) => exact_frequencies(m, *seed, n),
            Some(ExactRoute::Cyclic(p)) => periodic_frequencies(p, n),
            Some(ExactRoute::Cylinder(t)) => iet_frequencies(t, n),
        }
    }

    pub fn graph(&self, n: usize) -> Result<RauzyGraph> {
        if !self.index.is_adequate(n + 1) {
            warn!(
                "window of {} letters is short for order {} (adequate from {})",
                self.index.len(),
                n,
                crate::factors::ADEQUACY_FACTOR * (n + 1)
            );
        }
        build_rauzy_graph(&self.index, n, &self.frequencies(n)?)
    }

    pub fn reduced(&self, g: &RauzyGraph) -> Result<ReducedRauzyGraph> {
        reduce(g, &self.index.special_factors(g.order)?)
    }

    /// Number of distinct frequencies among factors of length `n + 1`.
    pub fn frequency_count(&self, freqs: &FrequencyAssignment, n: usize) -> Result<usize> {
        Ok(cluster_frequencies(freqs, n + 1, &self.config.slack)?.count())
    }

    fn closed_under_swap(&self, n: usize) -> Result<bool> {
        if self.index.alphabet().len() != 2 {
            return Ok(false);
        }
        Ok(self.index.permutation_closure_defect(n, &[1, 0])?.is_empty()
            && self.index.permutation_closure_defect(n + 1, &[1, 0])?.is_empty())
    }

    pub fn bound_report(&self, n: usize) -> Result<BoundReport> {
        let idx = &self.index;
        let freqs = self.frequencies(n)?;
        let g = self.graph(n)?;
        let exact = g.engine.is_exact();
        let specials = idx.special_factors(n)?;
        let (c, delta_c) = idx.complexity(n)?;
        let p_n = idx.palindrome_complexity(n)?;
        let p_n1 = idx.palindrome_complexity(n + 1)?;
        let f = self.frequency_count(&freqs, n)?;
        let reversal_closed =
            idx.reversal_closure_defect(n)?.is_empty() && idx.reversal_closure_defect(n + 1)?.is_empty();
        let r = self.reduced(&g)?;
        let degenerate = r.degenerate;
        // the exchange must preserve labels too; a swap-closed language with
        // unequal frequencies (e.g. a periodic pattern) is not symmetric
        let swap = if self.closed_under_swap(n)? {
            match permutation_symmetry(&g, idx, &[1, 0]) {
                Ok(s) => Some(s),
                Err(Error::LabelInconsistent(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        let complement_symmetric = swap.is_some();

        let (mut a, mut b, mut mirror) = (None, None, None);
        if reversal_closed && !degenerate {
            let mu = mirror_automorphism(&g, idx)?;
            let cls = classify_mu_paths(&g, &r, &mu, idx)?;
            a = Some(cls.a);
            b = Some(cls.b);
            mirror = Some(cls.identities_hold() && mu.involution);
        }
        let exchange_fixes_no_path = match &swap {
            Some(swap) if !degenerate => {
                let paths = decompose_simple_paths(&g, &specials)?;
                Some(swap.fixed_paths(&g, &paths)? == 0)
            }
            _ => None,
        };

        let residual = kirchhoff_residual(&g);
        let kirchhoff = match (exact, residual.as_exact()) {
            (true, Some(q)) => q.is_zero(),
            (false, Some(q)) => {
                let tol = QuadraticNumber::from_ratio(n as i64 + 1, (idx.len() - n) as i64);
                q <= tol
            }
            _ => false,
        };
        let (rsum, lsum) = idx.extension_sums(n)?;
        let identities = IdentityChecks {
            extension_sums: rsum == delta_c as i64 && lsum == delta_c as i64,
            kirchhoff,
            reduced_edge_count: (!degenerate).then(|| {
                r.edge_count() == ReducedRauzyGraph::predicted_edge_count(&specials, delta_c)
                    && r.edge_count() == ReducedRauzyGraph::eq4_edge_count(&g, &specials)
            }),
            labels_preserved: if exact {
                r.preserves_labels(&g)
            } else {
                // edge counts along a simple path differ only by window boundary effects
                let tol = &self.config.slack / int(idx.len() - n);
                r.paths.iter().all(|p| p.spread.as_exact().is_some_and(|s| s <= QuadraticNumber::rational(tol.clone())))
            },
            special_counts: specials.z <= delta_c && specials.ls_count <= delta_c,
            mirror,
            exchange_fixes_no_path,
        };

        let (x, y) = (specials.x as i64, specials.y as i64);
        let dc = delta_c as i64;
        let fq = int(f);
        let lemma = half(p_n as i64 + p_n1 as i64 + dc - x - y) + int(specials.z);
        let theorem1 = int(2 * delta_c + 1);
        let finer = half(4 * dc + 2 - x - y);
        let three_halves_applicable = !degenerate
            && (complement_symmetric || (reversal_closed && p_n == 0 && p_n1 == 0));
        Ok(BoundReport {
            source: self.source.describe(),
            n,
            engine: g.engine,
            window: idx.len(),
            adequate: idx.is_adequate(n + 1),
            c,
            delta_c,
            p_n,
            p_n1,
            x: specials.x,
            y: specials.y,
            z: specials.z,
            ls_count: specials.ls_count,
            a,
            b,
            f,
            reversal_closed,
            complement_symmetric,
            degenerate,
            kirchhoff_residual: residual,
            lemma: BoundCheck::new(fq.clone(), lemma, reversal_closed, exact),
            theorem1: BoundCheck::new(fq.clone(), theorem1, reversal_closed, exact),
            finer: BoundCheck::new(fq.clone(), finer, reversal_closed, exact),
            boshernitzan: BoundCheck::new(fq.clone(), int(3 * delta_c), !degenerate, exact),
            palindromic: BoundCheck::new(int(p_n + p_n1), int(delta_c + 2), reversal_closed, true),
            three_halves: BoundCheck::new(fq, half(3 * dc), three_halves_applicable, exact),
            identities,
        })
    }

    /// Reports for `n_from..=n_to`, computed in parallel and ordered by `n`.
    pub fn verify_range(&self, n_from: usize, n_to: usize) -> Result<RangeReport> {
        if n_from < 1 || n_to < n_from {
            return Err(Error::InvalidParameter(format!("bad order range {n_from}..{n_to}")));
        }
        if n_to + 1 > self.index.n_max() {
            return Err(Error::OutOfWindow {
                n: n_to,
                cap: self.index.n_max(),
            });
        }
        let reports = (n_from..=n_to)
            .into_par_iter()
            .map(|n| self.bound_report(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(RangeReport::new(self.source.describe(), self.engine(), reports))
    }

    /// Sturmian frequency count: `F` over `L_n` is 2 when `L_{n−1}` has a
    /// bispecial factor and 3 otherwise.
    pub fn berthe_check(&self, n_from: usize, n_to: usize) -> Result<Vec<BertheVerdict>> {
        if n_from < 1 || n_to < n_from {
            return Err(Error::InvalidParameter(format!("bad order range {n_from}..{n_to}")));
        }
        (n_from..=n_to)
            .map(|n| {
                let (c, _) = self.index.complexity(n)?;
                if c != n + 1 {
                    return Err(Error::NotSturmianWindow { n, complexity: c });
                }
                // the report at order n − 1 has edges L_n
                let freqs = self.frequencies(n - 1)?;
                let f = self.frequency_count(&freqs, n - 1)?;
                let has_bispecial = self.index.special_factors(n - 1)?.x > 0;
                let expected = if has_bispecial { 2 } else { 3 };
                Ok(BertheVerdict {
                    n,
                    f,
                    has_bispecial,
                    holds: f == expected,
                })
            })
            .collect()
    }

    /// Classifies the window as periodic-like or aperiodic-like from the
    /// orders `1..=n_to`.
    pub fn periodicity_equality_scan(&self, n_to: usize) -> Result<PeriodicityScan> {
        let mut rows = Vec::with_capacity(n_to);
        for n in 1..=n_to {
            let (_, dc) = self.index.complexity(n)?;
            let f = self.frequency_count(&self.frequencies(n)?, n)?;
            let x = self.index.special_factors(n)?.x;
            rows.push((n, dc, f, x));
        }
        // periodic-like: ΔC = 0 from some order on, with F = 2ΔC + 1 = 1 there
        let tail_start = rows
            .iter()
            .rposition(|&(_, dc, f, _)| dc != 0 || f != 1)
            .map_or(1, |i| i + 2);
        if tail_start <= n_to {
            return Ok(PeriodicityScan::PeriodicLike {
                equality_from: tail_start,
                through: n_to,
            });
        }
        let bispecial_orders: Vec<usize> = rows.iter().filter(|r| r.3 > 0).map(|r| r.0).collect();
        let strict_orders: Vec<usize> = rows.iter().filter(|r| r.2 < 2 * r.1 + 1).map(|r| r.0).collect();
        let upper = n_to / 2 + 1;
        let recurring = bispecial_orders.iter().any(|&n| n >= upper) && strict_orders.iter().any(|&n| n >= upper);
        if rows.iter().all(|r| r.1 > 0) && recurring {
            return Ok(PeriodicityScan::AperiodicLike {
                bispecial_orders,
                strict_orders,
            });
        }
        Err(Error::Inconclusive(format!(
            "orders 1..{n_to} show neither a ΔC = 0 tail nor recurring bispecial factors"
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BertheVerdict {
    pub n: usize,
    /// distinct frequencies of factors of length `n`
    pub f: usize,
    /// whether `L_{n−1}` has a bispecial factor
    pub has_bispecial: bool,
    pub holds: bool,
}

/// Window-bounded evidence for the periodicity criterion; never a claim about the infinite word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum PeriodicityScan {
    PeriodicLike {
        equality_from: usize,
        through: usize,
    },
    AperiodicLike {
        bispecial_orders: Vec<usize>,
        strict_orders: Vec<usize>,
    },
}

/// [`Analysis::bound_report`] for a single order.
pub fn bound_report(source: &WordSource, n: usize, config: &AnalysisConfig) -> Result<BoundReport> {
    Analysis::new(source.clone(), n, config.clone())?.bound_report(n)
}

/// [`Analysis::verify_range`] for a fresh analysis.
pub fn verify_range(source: &WordSource, n_from: usize, n_to: usize, config: &AnalysisConfig) -> Result<RangeReport> {
    Analysis::new(source.clone(), n_to, config.clone())?.verify_range(n_from, n_to)
}
