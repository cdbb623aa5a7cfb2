use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::linalg::{is_primitive_matrix, IntMatrix};

/// A substitution: every letter maps to a nonempty word over the same alphabet.
///
/// Text form is `0->001;1->01`; when some letter name is longer than one
/// symbol, image letters are separated by spaces (`01->01 10;10->00`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    pub fn new(alphabet: Alphabet, images: Vec<Vec<Letter>>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidParameter("one image per letter required".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "image of `{}` is empty",
                    alphabet.name(i as Letter)
                )));
            }
            if img.iter().any(|&l| l as usize >= alphabet.len()) {
                return Err(Error::InvalidParameter("image uses a letter outside the alphabet".into()));
            }
        }
        Ok(Morphism { alphabet, images })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, l: Letter) -> &[Letter] {
        &self.images[l as usize]
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn apply(&self, w: &[Letter]) -> Vec<Letter> {
        w.iter().flat_map(|&l| self.image(l).iter().copied()).collect()
    }

    /// `σ^p(w)`.
    pub fn apply_power(&self, w: &[Letter], p: u32) -> Vec<Letter> {
        (0..p).fold(w.to_vec(), |acc, _| self.apply(&acc))
    }

    /// Entry `(x, y)` counts occurrences of `x` in the image of `y`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let k = self.alphabet.len();
        let mut m = vec![vec![0u64; k]; k];
        for (y, img) in self.images.iter().enumerate() {
            for &x in img {
                m[x as usize][y] += 1;
            }
        }
        m
    }

    /// Whether `seed` starts its own image and that image is longer than one letter.
    pub fn is_prolongable(&self, seed: Letter) -> bool {
        let img = self.image(seed);
        img.len() >= 2 && img[0] == seed
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| format!("{}->{}", self.alphabet.name(i as Letter), self.alphabet.render(img)))
            .collect();
        f.write_str(&rules.join(";"))
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut raw_images = Vec::new();
        for rule in s.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("rule `{rule}` lacks `->`")))?;
            names.push(lhs.trim().to_string());
            raw_images.push(rhs.trim().to_string());
        }
        if names.is_empty() {
            return Err(Error::Parse("morphism has no rules".into()));
        }
        let alphabet = Alphabet::new(names).map_err(|e| Error::Parse(e.to_string()))?;
        let images = raw_images
            .iter()
            .map(|img| alphabet.parse_word(img))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(alphabet, images)
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Morphism {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(de)?.parse().map_err(serde::de::Error::custom)
    }
}

/// First `n` letters of the fixed point of `m` starting with `seed`.
pub fn fixed_point_prefix(m: &Morphism, seed: Letter, n: usize) -> Result<Vec<Letter>> {
    if !m.is_prolongable(seed) {
        return Err(Error::NotProlongable {
            seed: m.alphabet.name(seed).to_string(),
        });
    }
    // u = σ(u): expand letters of the prefix built so far, left to right
    let mut out = m.image(seed).to_vec();
    let mut next = 1;
    while out.len() < n {
        if next >= out.len() {
            return Err(Error::Stagnation {
                reached: out.len(),
                requested: n,
            });
        }
        let l = out[next];
        out.extend_from_slice(m.image(l));
        next += 1;
    }
    out.truncate(n);
    Ok(out)
}

/// Some power of the incidence matrix, of exponent at most `|A|²`, is positive.
pub fn is_primitive(m: &Morphism) -> bool {
    is_primitive_matrix(&m.incidence_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn prefix(rules: &str, n: usize) -> Result<String> {
        let mm = m(rules);
        let seed = mm.alphabet().letter("0").unwrap();
        fixed_point_prefix(&mm, seed, n).map(|w| mm.alphabet().render(&w))
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(prefix("0->01;1->0", 8).unwrap(), "01001010");
        assert_eq!(prefix("0->01;1->10", 8).unwrap(), "01101001");
        assert_eq!(
            prefix("0->10;1->0", 8),
            Err(Error::NotProlongable { seed: "0".into() })
        );
        assert!(matches!(prefix("0->0;1->1", 3), Err(Error::NotProlongable { .. })));
    }

    #[test]
    fn non_expanding_tail_still_grows() {
        // images are nonempty, so the expansion cursor never overtakes the prefix
        let mm = m("0->01;1->1");
        assert_eq!(fixed_point_prefix(&mm, 0, 5).unwrap(), vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&m("0->01;1->0")));
        assert!(!is_primitive(&m("0->0;1->1")));
        assert!(is_primitive(&m("0->01;1->10")));
        assert!(!is_primitive(&m("0->01;1->1")));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0->001;1->01", "0->01;1->0", "a->ab;b->ca;c->a", "01->01 10;10->00;00->01 10"] {
            assert_eq!(m(s).to_string(), s);
        }
        assert!("0->01;1->2".parse::<Morphism>().is_err());
        assert!("0->;1->0".parse::<Morphism>().is_err());
        assert!("".parse::<Morphism>().is_err());
    }

    #[test]
    fn incidence() {
        assert_eq!(m("0->001;1->01").incidence_matrix(), vec![vec![2, 1], vec![1, 1]]);
    }
}
