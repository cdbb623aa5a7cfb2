//! Factor index of a finite prefix: factors of every length up to a cap, their
//! occurrence counts and one-letter extensions.
//!
//! Counts and extensions only use occurrences lying fully inside the prefix.
//! The last length-`n` suffix therefore contributes to counts but has no right
//! extension from that occurrence, and the first length-`n` prefix has no left
//! extension from its first occurrence.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

/// Windows shorter than `ADEQUACY_FACTOR · n` get a warning when analyzed at length `n`.
pub const ADEQUACY_FACTOR: usize = 200;

/// Set of letters, as a bitmask (alphabets of at most 64 letters).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExtSet(u64);

impl ExtSet {
    pub fn insert(&mut self, l: Letter) {
        self.0 |= 1 << l;
    }

    pub fn contains(self, l: Letter) -> bool {
        self.0 >> l & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..64).filter(move |&l| self.contains(l))
    }
}

#[derive(Clone, Debug)]
struct Entry {
    start: usize,
    count: u64,
    rext: ExtSet,
    lext: ExtSet,
    /// ids of the length-(n-1) prefix and suffix
    prefix: usize,
    suffix: usize,
}

#[derive(Clone, Debug, Default)]
struct Level {
    entries: Vec<Entry>,
    sorted: Vec<usize>,
    lookup: HashMap<Vec<Letter>, usize>,
}

/// An edge `(factor, prefix, suffix)` of a Rauzy graph, borrowed from the index.
pub type FactorEdge<'a> = (&'a [Letter], &'a [Letter], &'a [Letter]);

/// All factors of lengths `0..=n_max` of a finite word.
#[derive(Clone, Debug)]
pub struct FactorIndex {
    alphabet: Alphabet,
    word: Vec<Letter>,
    n_max: usize,
    levels: Vec<Level>,
}

/// Special factors of one length, together with the counts `X`, `Y`, `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialFactorReport {
    pub n: usize,
    pub right_special: Vec<Vec<Letter>>,
    pub left_special: Vec<Vec<Letter>>,
    pub bispecial: Vec<Vec<Letter>>,
    /// number of right special factors
    pub z: usize,
    pub ls_count: usize,
    /// number of bispecial factors
    pub x: usize,
    /// number of bispecial palindromes
    pub y: usize,
}

impl SpecialFactorReport {
    pub fn is_special(&self, w: &[Letter]) -> bool {
        self.right_special.iter().any(|v| v == w) || self.left_special.iter().any(|v| v == w)
    }

    pub fn ls_not_rs(&self) -> usize {
        self.ls_count - self.x
    }
}

pub fn is_palindrome(w: &[Letter]) -> bool {
    w.iter().eq(w.iter().rev())
}

pub fn reversed(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().copied().collect()
}

impl FactorIndex {
    pub fn build(word: &Word, n_max: usize) -> Result<Self> {
        let big_n = word.len();
        if n_max == 0 || n_max > big_n {
            return Err(Error::CapExceedsWord { cap: n_max, len: big_n });
        }
        let k = word.alphabet.len();
        if k > 64 {
            return Err(Error::InvalidParameter("factor index supports at most 64 letters".into()));
        }
        let w = &word.letters;
        let mut levels: Vec<Level> = Vec::with_capacity(n_max + 1);
        levels.push(Level {
            entries: vec![Entry {
                start: 0,
                count: big_n as u64 + 1,
                rext: ExtSet::default(),
                lext: ExtSet::default(),
                prefix: 0,
                suffix: 0,
            }],
            ..Level::default()
        });
        // ids[i] = id of the length-n factor starting at i
        let mut ids = vec![0u32; big_n + 1];
        for n in 0..n_max {
            let positions = big_n - n; // starts of length n+1 factors
            let parents = levels[n].entries.len();
            let mut table = vec![u32::MAX; parents * k];
            let mut next_ids = vec![0u32; positions];
            let mut entries: Vec<Entry> = Vec::new();
            for i in 0..positions {
                let key = ids[i] as usize * k + w[i + n] as usize;
                let id = if table[key] == u32::MAX {
                    table[key] = entries.len() as u32;
                    entries.push(Entry {
                        start: i,
                        count: 0,
                        rext: ExtSet::default(),
                        lext: ExtSet::default(),
                        prefix: ids[i] as usize,
                        suffix: ids[i + 1] as usize,
                    });
                    table[key]
                } else {
                    table[key]
                };
                entries[id as usize].count += 1;
                next_ids[i] = id;
            }
            let parent = &mut levels[n].entries;
            for e in &entries {
                parent[e.prefix].rext.insert(w[e.start + n]);
                parent[e.suffix].lext.insert(w[e.start]);
            }
            levels.push(Level {
                entries,
                ..Level::default()
            });
            ids = next_ids;
        }
        for (n, level) in levels.iter_mut().enumerate() {
            let mut sorted: Vec<usize> = (0..level.entries.len()).collect();
            sorted.sort_by(|&a, &b| {
                let sa = level.entries[a].start;
                let sb = level.entries[b].start;
                w[sa..sa + n].cmp(&w[sb..sb + n])
            });
            level.lookup = level
                .entries
                .iter()
                .enumerate()
                .map(|(id, e)| (w[e.start..e.start + n].to_vec(), id))
                .collect();
            level.sorted = sorted;
        }
        Ok(FactorIndex {
            alphabet: word.alphabet.clone(),
            word: w.clone(),
            n_max,
            levels,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Prefix length `N`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn is_adequate(&self, n: usize) -> bool {
        self.len() >= ADEQUACY_FACTOR * n
    }

    fn level(&self, n: usize) -> Result<&Level> {
        self.levels.get(n).ok_or(Error::OutOfWindow { n, cap: self.n_max })
    }

    fn check_ext(&self, n: usize) -> Result<()> {
        if n + 1 > self.n_max {
            return Err(Error::OutOfWindow { n, cap: self.n_max });
        }
        Ok(())
    }

    /// Number of distinct factors of length `n`.
    pub fn factor_count(&self, n: usize) -> Result<usize> {
        Ok(self.level(n)?.entries.len())
    }

    /// Factors of length `n` in lexicographic order.
    pub fn factors(&self, n: usize) -> Result<Vec<&[Letter]>> {
        let level = self.level(n)?;
        Ok(level.sorted.iter().map(|&id| self.slice(n, &level.entries[id])).collect())
    }

    fn slice(&self, n: usize, e: &Entry) -> &[Letter] {
        &self.word[e.start..e.start + n]
    }

    fn entry(&self, w: &[Letter]) -> Option<&Entry> {
        let level = self.levels.get(w.len())?;
        level.lookup.get(w).map(|&id| &level.entries[id])
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.entry(w).is_some()
    }

    /// Occurrences of `w` fully inside the prefix.
    pub fn count(&self, w: &[Letter]) -> u64 {
        self.entry(w).map_or(0, |e| e.count)
    }

    /// Right extensions of `w`; requires `|w| < n_max`.
    pub fn rext(&self, w: &[Letter]) -> Result<ExtSet> {
        self.check_ext(w.len())?;
        Ok(self.entry(w).map_or(ExtSet::default(), |e| e.rext))
    }

    /// Left extensions of `w`; requires `|w| < n_max`.
    pub fn lext(&self, w: &[Letter]) -> Result<ExtSet> {
        self.check_ext(w.len())?;
        Ok(self.entry(w).map_or(ExtSet::default(), |e| e.lext))
    }

    /// `(C(n), ΔC(n))`.
    pub fn complexity(&self, n: usize) -> Result<(usize, usize)> {
        self.check_ext(n)?;
        let c = self.factor_count(n)?;
        let c1 = self.factor_count(n + 1)?;
        Ok((c, c1.saturating_sub(c)))
    }

    /// `Σ (#Rext(w) - 1)` and `Σ (#Lext(w) - 1)` over `L_n`, signed so window
    /// boundary effects stay visible.
    pub fn extension_sums(&self, n: usize) -> Result<(i64, i64)> {
        self.check_ext(n)?;
        let level = self.level(n)?;
        let r = level.entries.iter().map(|e| e.rext.len() as i64 - 1).sum();
        let l = level.entries.iter().map(|e| e.lext.len() as i64 - 1).sum();
        Ok((r, l))
    }

    pub fn special_factors(&self, n: usize) -> Result<SpecialFactorReport> {
        self.check_ext(n)?;
        let level = self.level(n)?;
        let mut rs = Vec::new();
        let mut ls = Vec::new();
        let mut bs = Vec::new();
        let mut y = 0;
        for &id in &level.sorted {
            let e = &level.entries[id];
            let w = self.slice(n, e).to_vec();
            let r = e.rext.len() >= 2;
            let l = e.lext.len() >= 2;
            if r && l {
                if is_palindrome(&w) {
                    y += 1;
                }
                bs.push(w.clone());
            }
            if r {
                rs.push(w.clone());
            }
            if l {
                ls.push(w);
            }
        }
        Ok(SpecialFactorReport {
            n,
            z: rs.len(),
            ls_count: ls.len(),
            x: bs.len(),
            y,
            right_special: rs,
            left_special: ls,
            bispecial: bs,
        })
    }

    /// Palindromes of length `n`, lexicographically.
    pub fn palindromes(&self, n: usize) -> Result<Vec<Vec<Letter>>> {
        Ok(self
            .factors(n)?
            .into_iter()
            .filter(|w| is_palindrome(w))
            .map(<[Letter]>::to_vec)
            .collect())
    }

    /// `P(n)`.
    pub fn palindrome_complexity(&self, n: usize) -> Result<usize> {
        Ok(self.palindromes(n)?.len())
    }

    /// Factors of length `n` whose mirror image is missing from the window.
    pub fn reversal_closure_defect(&self, n: usize) -> Result<Vec<Vec<Letter>>> {
        Ok(self
            .factors(n)?
            .into_iter()
            .filter(|w| !self.contains(&reversed(w)))
            .map(<[Letter]>::to_vec)
            .collect())
    }

    /// Factors of length `n` whose image under the letter map `pi` is missing.
    pub fn permutation_closure_defect(&self, n: usize, pi: &[Letter]) -> Result<Vec<Vec<Letter>>> {
        Ok(self
            .factors(n)?
            .into_iter()
            .filter(|w| {
                let img: Vec<Letter> = w.iter().map(|&l| pi[l as usize]).collect();
                !self.contains(&img)
            })
            .map(<[Letter]>::to_vec)
            .collect())
    }

    /// Length-(n+1) factors as edges `(factor, prefix, suffix)` of the order-`n` Rauzy graph.
    pub fn edges(&self, n: usize) -> Result<Vec<FactorEdge<'_>>> {
        Ok(self
            .factors(n + 1)?
            .into_iter()
            .map(|e| (e, &e[..n], &e[1..]))
            .collect())
    }

    pub fn render(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        self.alphabet.render(w)
    }

    /// Per-length statistics as CSV: `n,C,dC,P,X,Y,Z,defect_count`.
    pub fn stats_csv(&self, from: usize, to: usize) -> Result<String> {
        let mut out = String::from("n,C,dC,P,X,Y,Z,defect_count\n");
        for n in from..=to {
            let (c, dc) = self.complexity(n)?;
            let s = self.special_factors(n)?;
            let _ = writeln!(
                out,
                "{n},{c},{dc},{},{},{},{},{}",
                self.palindrome_complexity(n)?,
                s.x,
                s.y,
                s.z,
                self.reversal_closure_defect(n)?.len()
            );
        }
        Ok(out)
    }
}
