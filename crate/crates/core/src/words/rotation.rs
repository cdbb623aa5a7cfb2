//! Mechanical words and interval exchange codings.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Letter;
use crate::error::{Error, Result};
use crate::qnum::{common_radicand, QuadraticNumber};

/// Default precision of the fixed-point route.
pub const DEFAULT_PRECISION_BITS: u32 = 200;

/// Letter `n` is `⌊(n+1)α + ρ⌋ - ⌊nα + ρ⌋`, exactly.
pub fn mechanical_word_prefix(
    slope: &QuadraticNumber,
    intercept: &QuadraticNumber,
    n: usize,
) -> Result<Vec<Letter>> {
    let zero = QuadraticNumber::zero();
    let one = QuadraticNumber::one();
    if common_radicand([slope, intercept]).is_none() {
        return Err(Error::InvalidParameter(
            "slope and intercept must lie in one quadratic field".into(),
        ));
    }
    if *slope < zero || *slope > one {
        return Err(Error::InvalidParameter(format!("slope {slope} outside [0, 1]")));
    }
    if *intercept < zero || *intercept >= one {
        return Err(Error::InvalidParameter(format!("intercept {intercept} outside [0, 1)")));
    }
    // x tracks the fractional part of nα + ρ; the letter is the carry of x + α
    let mut x = intercept.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let y = &x + slope;
        if y >= one {
            out.push(1);
            x = &y - &one;
        } else {
            out.push(0);
            x = y;
        }
    }
    Ok(out)
}

/// An interval exchange on `[0, 1)` with exact quadratic-field data.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalExchange {
    lengths: Vec<QuadraticNumber>,
    /// 0-based position of each interval after the exchange.
    rank: Vec<usize>,
    left: Vec<QuadraticNumber>,
    image_left: Vec<QuadraticNumber>,
}

fn validate_permutation(permutation: &[usize], k: usize) -> Result<Vec<usize>> {
    if permutation.len() != k {
        return Err(Error::InvalidParameter(format!(
            "permutation has {} entries for {} intervals",
            permutation.len(),
            k
        )));
    }
    let mut seen = vec![false; k];
    let mut rank = Vec::with_capacity(k);
    for &p in permutation {
        if p == 0 || p > k || seen[p - 1] {
            return Err(Error::InvalidParameter("permutation is not a bijection of 1..k".into()));
        }
        seen[p - 1] = true;
        rank.push(p - 1);
    }
    Ok(rank)
}

impl IntervalExchange {
    /// `permutation` is 1-based, as in `(3 2 1)`.
    pub fn new(lengths: Vec<QuadraticNumber>, permutation: &[usize]) -> Result<Self> {
        let k = lengths.len();
        if k == 0 {
            return Err(Error::InvalidParameter("no intervals".into()));
        }
        if common_radicand(&lengths).is_none() {
            return Err(Error::InvalidParameter("lengths lie in different quadratic fields".into()));
        }
        let zero = QuadraticNumber::zero();
        if lengths.iter().any(|l| *l <= zero) {
            return Err(Error::InvalidParameter("interval lengths must be positive".into()));
        }
        let total: QuadraticNumber = lengths.iter().cloned().sum();
        if total != QuadraticNumber::one() {
            return Err(Error::InvalidParameter(format!("lengths sum to {total}, not 1")));
        }
        let rank = validate_permutation(permutation, k)?;
        let mut left = Vec::with_capacity(k);
        let mut acc = QuadraticNumber::zero();
        for l in &lengths {
            left.push(acc.clone());
            acc = &acc + l;
        }
        let image_left = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| rank[j] < rank[i])
                    .map(|j| lengths[j].clone())
                    .sum()
            })
            .collect();
        Ok(IntervalExchange {
            lengths,
            rank,
            left,
            image_left,
        })
    }

    /// The 2-interval exchange equivalent to rotation by `slope`.
    pub fn rotation(slope: &QuadraticNumber) -> Result<Self> {
        Self::new(vec![&QuadraticNumber::one() - slope, slope.clone()], &[2, 1])
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn lengths(&self) -> &[QuadraticNumber] {
        &self.lengths
    }

    /// Interior discontinuities `β_1 < ... < β_{k-1}`.
    pub fn discontinuities(&self) -> &[QuadraticNumber] {
        &self.left[1..]
    }

    pub fn interval_of(&self, x: &QuadraticNumber) -> usize {
        self.left.iter().rposition(|l| l <= x).unwrap_or(0)
    }

    pub fn map(&self, x: &QuadraticNumber) -> QuadraticNumber {
        let i = self.interval_of(x);
        &(x - &self.left[i]) + &self.image_left[i]
    }

    pub fn inverse(&self, y: &QuadraticNumber) -> QuadraticNumber {
        let i = (0..self.len())
            .filter(|&i| self.image_left[i] <= *y)
            .max_by_key(|&i| self.rank[i])
            .unwrap_or(0);
        &(y - &self.image_left[i]) + &self.left[i]
    }

    /// Letters of the orbit of `x`.
    pub fn code(&self, x: &QuadraticNumber, n: usize) -> Vec<Letter> {
        let mut x = x.clone();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let i = self.interval_of(&x);
            out.push(i as Letter);
            x = &(&x - &self.left[i]) + &self.image_left[i];
        }
        out
    }
}

/// Coding of the forward orbit of `start`; letter `i` (0-based) marks interval `i+1`.
///
/// When every datum lies in one quadratic field and no precision is requested
/// the iteration is exact. Otherwise it runs in fixed point with the given
/// number of bits and fails when an iterate comes within `2^(-bits/2)` of a
/// discontinuity.
pub fn iet_coding_prefix(
    lengths: &[QuadraticNumber],
    permutation: &[usize],
    start: &QuadraticNumber,
    n: usize,
    precision_bits: Option<u32>,
) -> Result<Vec<Letter>> {
    let zero = QuadraticNumber::zero();
    if *start < zero || *start >= QuadraticNumber::one() {
        return Err(Error::InvalidParameter(format!("start {start} outside [0, 1)")));
    }
    let exact = common_radicand(lengths.iter().chain(std::iter::once(start))).is_some();
    match precision_bits {
        None if exact => {
            let t = IntervalExchange::new(lengths.to_vec(), permutation)?;
            Ok(t.code(start, n))
        }
        bits => FixedPointExchange::new(lengths, permutation, bits.unwrap_or(DEFAULT_PRECISION_BITS))?
            .code(start, n),
    }
}

/// Interval exchange with lengths rounded to `bits` binary digits.
struct FixedPointExchange {
    bits: u32,
    left: Vec<BigInt>,
    shift: Vec<BigInt>,
}

impl FixedPointExchange {
    fn new(lengths: &[QuadraticNumber], permutation: &[usize], bits: u32) -> Result<Self> {
        let k = lengths.len();
        if k == 0 {
            return Err(Error::InvalidParameter("no intervals".into()));
        }
        let zero = QuadraticNumber::zero();
        if lengths.iter().any(|l| *l <= zero) {
            return Err(Error::InvalidParameter("interval lengths must be positive".into()));
        }
        let rank = validate_permutation(permutation, k)?;
        let fixed: Vec<BigInt> = lengths.iter().map(|l| l.to_fixed(bits)).collect();
        let unit = BigInt::one() << bits;
        let total: BigInt = fixed.iter().sum();
        // each rounded length is at most one unit low
        if (&unit - &total).abs() > BigInt::from(k) {
            return Err(Error::InvalidParameter("lengths do not sum to 1".into()));
        }
        let mut left = Vec::with_capacity(k);
        let mut acc = BigInt::zero();
        for l in &fixed {
            left.push(acc.clone());
            acc += l;
        }
        let shift = (0..k)
            .map(|i| {
                let image: BigInt = (0..k).filter(|&j| rank[j] < rank[i]).map(|j| fixed[j].clone()).sum();
                image - &left[i]
            })
            .collect();
        Ok(FixedPointExchange { bits, left, shift })
    }

    fn code(&self, start: &QuadraticNumber, n: usize) -> Result<Vec<Letter>> {
        let margin = BigInt::one() << (self.bits - self.bits / 2);
        let mut x = start.to_fixed(self.bits);
        let mut out = Vec::with_capacity(n);
        for step in 0..n {
            if self.left[1..].iter().any(|b| (&x - b).abs() < margin) {
                return Err(Error::PrecisionExhausted {
                    step,
                    margin_bits: self.bits / 2,
                });
            }
            let i = self.left.iter().rposition(|l| *l <= x).unwrap_or(0);
            out.push(i as Letter);
            x += &self.shift[i];
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::fixed_point_prefix;
    use crate::words::Morphism;
    use proptest::prelude::*;

    fn q(p: i64, r: i64) -> QuadraticNumber {
        QuadraticNumber::from_ratio(p, r)
    }

    fn alpha() -> QuadraticNumber {
        QuadraticNumber::from_parts(3, 2, -1, 2, 5)
    }

    fn render(w: &[Letter]) -> String {
        w.iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn mechanical_examples() {
        assert_eq!(render(&mechanical_word_prefix(&q(1, 2), &q(0, 1), 6).unwrap()), "010101");
        assert_eq!(render(&mechanical_word_prefix(&q(0, 1), &q(0, 1), 4).unwrap()), "0000");
        assert!(mechanical_word_prefix(&q(3, 2), &q(0, 1), 4).is_err());
        assert!(mechanical_word_prefix(&q(1, 2), &q(1, 1), 4).is_err());
    }

    #[test]
    fn mechanical_fibonacci_matches_fixed_point() {
        let m: Morphism = "0->01;1->0".parse().unwrap();
        let fp = fixed_point_prefix(&m, 0, 10_000).unwrap();
        assert_eq!(mechanical_word_prefix(&alpha(), &alpha(), 10_000).unwrap(), fp);
    }

    #[test]
    fn iet_examples() {
        let w = iet_coding_prefix(&[q(1, 2), q(1, 2)], &[2, 1], &q(1, 4), 4, None).unwrap();
        assert_eq!(render(&w), "0101");
        let a = alpha();
        let lengths = [&QuadraticNumber::one() - &a, a.clone()];
        let iet = iet_coding_prefix(&lengths, &[2, 1], &q(0, 1), 1000, None).unwrap();
        let mech = mechanical_word_prefix(&a, &q(0, 1), 1000).unwrap();
        assert_eq!(iet, mech);
    }

    #[test]
    fn iet_rejects_bad_parameters() {
        assert!(iet_coding_prefix(&[q(1, 2), q(1, 3)], &[2, 1], &q(0, 1), 4, None).is_err());
        assert!(iet_coding_prefix(&[q(1, 2), q(1, 2)], &[1, 1], &q(0, 1), 4, None).is_err());
        assert!(iet_coding_prefix(&[q(1, 2), q(1, 2)], &[2, 1], &q(1, 1), 4, None).is_err());
    }

    #[test]
    fn fixed_point_route_agrees_and_fails_near_cuts() {
        let a = alpha();
        let lengths = [&QuadraticNumber::one() - &a, a.clone()];
        let exact = iet_coding_prefix(&lengths, &[2, 1], &q(0, 1), 500, None).unwrap();
        let approx = iet_coding_prefix(&lengths, &[2, 1], &q(0, 1), 500, Some(128)).unwrap();
        assert_eq!(exact, approx);
        // rational rotation: the orbit of 0 lands exactly on the cut 1/2
        let err = iet_coding_prefix(&[q(1, 2), q(1, 2)], &[2, 1], &q(0, 1), 4, Some(64));
        assert!(matches!(err, Err(Error::PrecisionExhausted { step: 1, .. })));
    }

    #[test]
    fn inverse_undoes_map() {
        let s2 = QuadraticNumber::from_parts(-1, 1, 1, 1, 2);
        let t = IntervalExchange::new(
            vec![s2.clone(), s2.clone(), QuadraticNumber::from_parts(3, 1, -2, 1, 2)],
            &[3, 2, 1],
        )
        .unwrap();
        let mut x = q(1, 7);
        for _ in 0..50 {
            let y = t.map(&x);
            assert_eq!(t.inverse(&y), x);
            x = y;
        }
    }

    proptest! {
        // independent oracle: the floor formula evaluated directly
        #[test]
        fn incremental_matches_floor_formula(p in 0i64..=30, r in 1i64..=30, s in 0i64..30) {
            prop_assume!(p <= r);
            let slope = q(p, r);
            let intercept = q(s % 30, 30);
            let w = mechanical_word_prefix(&slope, &intercept, 80).unwrap();
            for (n, &l) in w.iter().enumerate() {
                let at = |m: i64| (&(&slope * &QuadraticNumber::from_integer(m)) + &intercept).floor();
                let expect = at(n as i64 + 1) - at(n as i64);
                prop_assert_eq!(BigInt::from(l), expect);
            }
            // rational slope p/r: period divides r
            for n in 0..80 - r as usize {
                prop_assert_eq!(w[n], w[n + r as usize]);
            }
        }

        #[test]
        fn prefixes_are_nested(n in 1usize..200, extra in 0usize..100) {
            let a = alpha();
            let short = mechanical_word_prefix(&a, &a, n).unwrap();
            let long = mechanical_word_prefix(&a, &a, n + extra).unwrap();
            prop_assert_eq!(&long[..n], &short[..]);
        }
    }
}
