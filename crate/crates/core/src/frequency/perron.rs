//! Exact frequencies for fixed points of primitive morphisms.
//!
//! Letter frequencies are the normalized right Perron eigenvector of the
//! incidence matrix. Factors of length `n` are letters of the `n`-block
//! recoding, so their frequencies are a Perron eigenvector too. For `n >= 3`
//! [`exact_factor_frequencies`] does not solve the large block system; it
//! pushes the length-2 frequencies through `σ^p`, which is the same eigen
//! relation read one block letter at a time.

use std::collections::{BTreeMap, BTreeSet};

use super::{exact_assignment, Engine, FrequencyAssignment, Provenance};
use crate::error::{Error, Result};
use crate::linalg::{kernel_vector, spectral_radius_estimate, IntMatrix};
use crate::qnum::QuadraticNumber;
use crate::words::{fixed_point_prefix, is_primitive, Alphabet, Letter, Morphism};

/// The `n`-block recoding of a morphism.
#[derive(Clone, Debug)]
pub struct BlockMorphism {
    pub morphism: Morphism,
    /// block letter → the length-`n` factor it stands for
    pub blocks: Vec<Vec<Letter>>,
    /// power of the original morphism used for the images
    pub power: u32,
}

/// Dominant eigenvalue and normalized eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub struct PerronVector {
    pub eigenvalue: QuadraticNumber,
    pub frequencies: Vec<QuadraticNumber>,
}

fn check_seed(m: &Morphism, seed: Letter) -> Result<()> {
    if !is_primitive(m) {
        return Err(Error::NotPrimitive);
    }
    if !m.is_prolongable(seed) {
        return Err(Error::NotProlongable {
            seed: m.alphabet().name(seed).to_string(),
        });
    }
    Ok(())
}

/// The factors of length `n` of the fixed point, exactly.
///
/// Every factor of the fixed point lies in `σ^k` of its length-`n` prefix, and
/// a length-`n` window of `σ(v)` lies in `σ` of a length-`n` window of `v`, so
/// closing `{u[0..n]}` under "length-`n` windows of `σ(w)`" yields `L_n`.
pub fn exact_language(m: &Morphism, seed: Letter, n: usize) -> Result<Vec<Vec<Letter>>> {
    check_seed(m, seed)?;
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let start = fixed_point_prefix(m, seed, n)?;
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut stack = vec![start.clone()];
    seen.insert(start);
    while let Some(w) = stack.pop() {
        let img = m.apply(&w);
        for win in img.windows(n) {
            if !seen.contains(win) {
                seen.insert(win.to_vec());
                stack.push(win.to_vec());
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Recodes `m` on the alphabet `L_n`.
///
/// With `p` the least power such that `|σ^p(w)| >= |σ^p(w_0)| + n - 1` for every
/// block `w`, the image of `w` is the sequence of length-`n` windows of
/// `σ^p(w)` starting at offsets `0..|σ^p(w_0)|`.
pub fn block_morphism(m: &Morphism, seed: Letter, n: usize) -> Result<BlockMorphism> {
    if n == 0 {
        return Err(Error::InvalidParameter("block length must be positive".into()));
    }
    let blocks = exact_language(m, seed, n)?;
    let mut power = 1u32;
    let images_at = |p: u32| -> Vec<(usize, Vec<Letter>)> {
        blocks
            .iter()
            .map(|w| (m.apply_power(&w[..1], p).len(), m.apply_power(w, p)))
            .collect()
    };
    let mut imgs = images_at(power);
    while imgs.iter().any(|(head, img)| img.len() < head + n - 1) {
        power += 1;
        imgs = images_at(power);
    }
    let lookup: BTreeMap<&[Letter], Letter> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i as Letter))
        .collect();
    let images = imgs
        .iter()
        .map(|(head, img)| (0..*head).map(|i| lookup[&img[i..i + n]]).collect())
        .collect();
    let names = blocks
        .iter()
        .map(|b| b.iter().map(|&l| m.alphabet().name(l)).collect::<String>())
        .collect();
    let morphism = Morphism::new(Alphabet::new(names)?, images)?;
    Ok(BlockMorphism {
        morphism,
        blocks,
        power,
    })
}

fn eigenvector_at(matrix: &IntMatrix, lambda: &QuadraticNumber) -> Option<Vec<QuadraticNumber>> {
    let k = matrix.len();
    let a: Vec<Vec<QuadraticNumber>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let e = QuadraticNumber::from_integer(matrix[i][j] as i64);
                    if i == j {
                        &e - lambda
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let v = kernel_vector(a)?;
    let total: QuadraticNumber = v.iter().cloned().sum();
    if total.is_zero() {
        return None;
    }
    let v: Vec<QuadraticNumber> = v.iter().map(|x| x / &total).collect();
    let zero = QuadraticNumber::zero();
    if v.iter().any(|x| *x <= zero) {
        return None;
    }
    // certify M v = λ v
    for i in 0..k {
        let mv: QuadraticNumber = (0..k)
            .filter(|&j| matrix[i][j] != 0)
            .map(|j| &QuadraticNumber::from_integer(matrix[i][j] as i64) * &v[j])
            .sum();
        if mv != lambda * &v[i] {
            return None;
        }
    }
    Some(v)
}

/// Candidate dominant eigenvalues: the nearest integer, then `(t + √D)/2` for
/// integer trace `t` and norm `s` consistent with the float estimate.
fn eigenvalue_candidates(estimate: f64) -> Vec<QuadraticNumber> {
    let mut out = Vec::new();
    let r = estimate.round();
    if (estimate - r).abs() < 1e-6 {
        out.push(QuadraticNumber::from_integer(r as i64));
    }
    let t_max = (2.0 * estimate).ceil() as i64 + 1;
    for t in 0..=t_max {
        let other = t as f64 - estimate;
        if other.abs() > estimate + 1e-9 {
            continue;
        }
        let s = estimate * other;
        let s_r = s.round();
        if (s - s_r).abs() > 1e-6 * s.abs().max(1.0) {
            continue;
        }
        let disc = t * t - 4 * s_r as i64;
        if disc <= 0 {
            continue;
        }
        let root = (disc as f64).sqrt().round() as i64;
        if root * root == disc {
            continue;
        }
        out.push(QuadraticNumber::from_parts(t, 2, 1, 2, disc as u64));
    }
    out
}

/// Right Perron eigenvector of the incidence matrix, normalized to sum 1, with
/// entries in `Q` or in one real quadratic field.
pub fn perron_frequencies(m: &Morphism) -> Result<PerronVector> {
    if !is_primitive(m) {
        return Err(Error::NotPrimitive);
    }
    let matrix = m.incidence_matrix();
    let estimate = spectral_radius_estimate(&matrix);
    for lambda in eigenvalue_candidates(estimate) {
        if (lambda.to_f64() - estimate).abs() > 1e-6 * estimate {
            continue;
        }
        if let Some(v) = eigenvector_at(&matrix, &lambda) {
            return Ok(PerronVector {
                eigenvalue: lambda,
                frequencies: v,
            });
        }
    }
    Err(Error::UnsupportedEigenvalueDegree)
}

/// Exact frequencies of all factors of length `len` of the fixed point.
pub fn exact_factor_frequencies(
    m: &Morphism,
    seed: Letter,
    len: usize,
) -> Result<(BTreeMap<Vec<Letter>, QuadraticNumber>, u32)> {
    check_seed(m, seed)?;
    if len == 0 {
        return Ok((BTreeMap::from([(Vec::new(), QuadraticNumber::one())]), 0));
    }
    let letters = perron_frequencies(m)?;
    if len == 1 {
        let map = letters
            .frequencies
            .iter()
            .enumerate()
            .map(|(a, f)| (vec![a as Letter], f.clone()))
            .collect();
        return Ok((map, 1));
    }
    let two = block_morphism(m, seed, 2)?;
    let pairs = perron_frequencies(&two.morphism)?;
    let pair_freq: Vec<(Vec<Letter>, QuadraticNumber)> =
        two.blocks.iter().cloned().zip(pairs.frequencies).collect();
    if len == 2 {
        return Ok((pair_freq.into_iter().collect(), two.power));
    }
    // least p with every |σ^p(a)| >= len - 1
    let mut p = 1u32;
    let k = m.alphabet().len() as Letter;
    while (0..k).any(|a| m.apply_power(&[a], p).len() < len - 1) {
        p += 1;
    }
    let scale = letters.eigenvalue.pow(p).recip();
    let mut acc: BTreeMap<Vec<Letter>, QuadraticNumber> = BTreeMap::new();
    for (v, f) in &pair_freq {
        let head = m.apply_power(&v[..1], p).len();
        let img = m.apply_power(v, p);
        for i in 0..head {
            let w = img[i..i + len].to_vec();
            let slot = acc.entry(w).or_insert_with(QuadraticNumber::zero);
            *slot = &*slot + f;
        }
    }
    let map = acc.into_iter().map(|(w, f)| (w, &f * &scale)).collect();
    Ok((map, p))
}

/// Exact assignment for orders `n` and `n + 1` of a primitive fixed point.
pub fn exact_frequencies(m: &Morphism, seed: Letter, n: usize) -> Result<FrequencyAssignment> {
    let (vertices, _) = exact_factor_frequencies(m, seed, n)?;
    let (edges, power) = exact_factor_frequencies(m, seed, n + 1)?;
    Ok(exact_assignment(
        n,
        Engine::BlockPerron,
        Provenance {
            power: Some(power),
            ..Provenance::default()
        },
        vertices,
        edges,
    ))
}
