//! Finite prefixes of the infinite words under study.
//!
//! Letters are indices into an ordered [`Alphabet`]; a [`Word`] carries its
//! alphabet so that multi-symbol alphabets (interval exchange codings, block
//! recodings) are handled the same way as binary words.

mod morphism;
mod rotation;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qnum::QuadraticNumber;

pub use morphism::{fixed_point_prefix, is_primitive, Morphism};
pub use rotation::{iet_coding_prefix, mechanical_word_prefix, IntervalExchange, DEFAULT_PRECISION_BITS};

pub type Letter = u32;

/// Ordered set of letter names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidParameter("empty alphabet".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(Error::InvalidParameter(format!("bad or duplicate letter `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// Letters named `0`, `1`, ..., `k-1`.
    pub fn numeric(k: usize) -> Self {
        Alphabet {
            names: (0..k).map(|i| i.to_string()).collect(),
        }
    }

    /// Distinct characters of `s`, sorted.
    pub fn from_chars(s: &str) -> Result<Self> {
        let mut cs: Vec<char> = s.chars().collect();
        cs.sort_unstable();
        cs.dedup();
        Self::new(cs.into_iter().map(String::from).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Concatenated names, space separated when some name is longer than one symbol.
    pub fn render(&self, letters: &[Letter]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        letters
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Inverse of [`Alphabet::render`].
    pub fn parse_word(&self, s: &str) -> Result<Vec<Letter>> {
        let unknown = |t: &str| Error::Parse(format!("letter `{t}` is not in the alphabet"));
        if s.split_whitespace().count() > 1 || !self.single_char() {
            s.split_whitespace()
                .map(|t| self.letter(t).ok_or_else(|| unknown(t)))
                .collect()
        } else {
            s.trim()
                .chars()
                .map(|c| {
                    let t = c.to_string();
                    self.letter(&t).ok_or_else(|| unknown(&t))
                })
                .collect()
        }
    }
}

/// A finite word over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub alphabet: Alphabet,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.letters))
    }
}

/// The pattern repeated and truncated to `n` letters.
pub fn periodic_prefix(pattern: &[Letter], n: usize) -> Result<Vec<Letter>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(pattern.iter().copied().cycle().take(n).collect())
}

/// Configuration of a word generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum WordSource {
    MorphismFixedPoint {
        morphism: Morphism,
        seed: String,
    },
    Mechanical {
        slope: QuadraticNumber,
        intercept: QuadraticNumber,
    },
    /// Permutation is 1-based: entry `i` is the position of interval `i` after the exchange.
    IntervalExchange {
        lengths: Vec<QuadraticNumber>,
        permutation: Vec<usize>,
        start: QuadraticNumber,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        precision_bits: Option<u32>,
    },
    Periodic {
        pattern: String,
    },
    ExplicitPrefix {
        word: String,
    },
}

impl WordSource {
    pub fn fibonacci() -> Self {
        Self::morphism("0->01;1->0", "0")
    }

    pub fn thue_morse() -> Self {
        Self::morphism("0->01;1->10", "0")
    }

    /// Fixed point of `0 -> 0^a 1`, `1 -> 0^b 1`.
    pub fn parry(a: usize, b: usize) -> Self {
        let rules = format!("0->{}1;1->{}1", "0".repeat(a), "0".repeat(b));
        Self::morphism(&rules, "0")
    }

    fn morphism(rules: &str, seed: &str) -> Self {
        WordSource::MorphismFixedPoint {
            morphism: rules.parse().expect("catalog morphism"),
            seed: seed.into(),
        }
    }

    /// Mechanical word with slope and intercept `(3 - √5)/2`, equal to the Fibonacci word.
    pub fn fibonacci_mechanical() -> Self {
        let alpha = QuadraticNumber::from_parts(3, 2, -1, 2, 5);
        WordSource::Mechanical {
            slope: alpha.clone(),
            intercept: alpha,
        }
    }

    pub fn periodic(pattern: &str) -> Self {
        WordSource::Periodic {
            pattern: pattern.into(),
        }
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        match self {
            WordSource::MorphismFixedPoint { morphism, .. } => Ok(morphism.alphabet().clone()),
            WordSource::Mechanical { .. } => Ok(Alphabet::numeric(2)),
            WordSource::IntervalExchange { lengths, .. } => Ok(Alphabet::numeric(lengths.len())),
            WordSource::Periodic { pattern } => {
                if pattern.is_empty() {
                    return Err(Error::EmptyPattern);
                }
                Alphabet::from_chars(pattern)
            }
            WordSource::ExplicitPrefix { word } => Alphabet::from_chars(word),
        }
    }

    /// First `n` letters of the word.
    pub fn generate(&self, n: usize) -> Result<Word> {
        let alphabet = self.alphabet()?;
        let letters = match self {
            WordSource::MorphismFixedPoint { morphism, seed } => {
                let seed = morphism
                    .alphabet()
                    .letter(seed)
                    .ok_or_else(|| Error::InvalidParameter(format!("seed `{seed}` not in alphabet")))?;
                fixed_point_prefix(morphism, seed, n)?
            }
            WordSource::Mechanical { slope, intercept } => mechanical_word_prefix(slope, intercept, n)?,
            WordSource::IntervalExchange {
                lengths,
                permutation,
                start,
                precision_bits,
            } => iet_coding_prefix(lengths, permutation, start, n, *precision_bits)?,
            WordSource::Periodic { pattern } => periodic_prefix(&alphabet.parse_word(pattern)?, n)?,
            WordSource::ExplicitPrefix { word } => {
                let all = alphabet.parse_word(word)?;
                if all.len() < n {
                    return Err(Error::InvalidParameter(format!(
                        "explicit prefix has {} letters, {} requested",
                        all.len(),
                        n
                    )));
                }
                all[..n].to_vec()
            }
        };
        Ok(Word { alphabet, letters })
    }

    /// Largest prefix the source can produce, if bounded.
    pub fn max_len(&self) -> Option<usize> {
        match self {
            WordSource::ExplicitPrefix { word } => Some(word.chars().filter(|c| !c.is_whitespace()).count()),
            _ => None,
        }
    }

    /// Short human-readable descriptor used in provenance headers and reports.
    pub fn describe(&self) -> String {
        match self {
            WordSource::MorphismFixedPoint { morphism, seed } => format!("morphism {morphism} seed {seed}"),
            WordSource::Mechanical { slope, intercept } => format!("mechanical slope {slope} intercept {intercept}"),
            WordSource::IntervalExchange {
                lengths,
                permutation,
                start,
                ..
            } => {
                let ls: Vec<String> = lengths.iter().map(|l| l.to_string()).collect();
                let ps: Vec<String> = permutation.iter().map(|p| p.to_string()).collect();
                format!("iet lengths {} perm ({}) start {start}", ls.join(" "), ps.join(" "))
            }
            WordSource::Periodic { pattern } => format!("periodic {pattern}"),
            WordSource::ExplicitPrefix { word } => {
                format!("explicit prefix ({} letters)", word.chars().count())
            }
        }
    }
}
