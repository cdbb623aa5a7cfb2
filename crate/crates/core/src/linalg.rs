//! Small dense kernels for incidence matrices: boolean primitivity, a float
//! spectral-radius estimate, and an exact one-dimensional kernel solve.

use crate::qnum::QuadraticNumber;

/// Square non-negative integer matrix, row-major.
pub type IntMatrix = Vec<Vec<u64>>;

/// True iff some power of `m` up to the Wielandt exponent is entrywise positive.
///
/// Powers of a primitive matrix stay positive once positive, so it is enough
/// to square until the exponent reaches `(k-1)² + 1`.
pub fn is_primitive_matrix(m: &IntMatrix) -> bool {
    let k = m.len();
    if k == 0 {
        return false;
    }
    let mut p: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let target = (k - 1) * (k - 1) + 1;
    let mut exp = 1usize;
    loop {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        if exp >= target {
            return false;
        }
        p = bool_mul(&p, &p);
        exp *= 2;
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let k = a.len();
    let mut out = vec![vec![false; k]; k];
    for i in 0..k {
        for l in 0..k {
            if a[i][l] {
                for j in 0..k {
                    out[i][j] |= b[l][j];
                }
            }
        }
    }
    out
}

/// Power-iteration estimate of the spectral radius of a primitive matrix.
pub fn spectral_radius_estimate(m: &IntMatrix) -> f64 {
    let k = m.len();
    let mut v = vec![1.0f64; k];
    let mut lambda = 0.0;
    for _ in 0..5000 {
        let mut w = vec![0.0f64; k];
        for i in 0..k {
            for j in 0..k {
                w[i] += m[i][j] as f64 * v[j];
            }
        }
        let norm: f64 = w.iter().sum();
        let prev = lambda;
        lambda = norm / v.iter().sum::<f64>();
        for x in w.iter_mut() {
            *x /= norm;
        }
        v = w;
        if (lambda - prev).abs() < 1e-14 * lambda.max(1.0) {
            break;
        }
    }
    lambda
}

/// A nonzero kernel vector of `a` when the kernel is exactly one-dimensional.
#[allow(clippy::needless_range_loop)] // row operations read and write the same rows
pub fn kernel_vector(mut a: Vec<Vec<QuadraticNumber>>) -> Option<Vec<QuadraticNumber>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..cols {
            if !a[r][j].is_zero() {
                a[r][j] = &a[r][j] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in c..cols {
                if !a[r][j].is_zero() {
                    let t = &factor * &a[r][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if cols - pivot_cols.len() != 1 {
        return None;
    }
    let free = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![QuadraticNumber::zero(); cols];
    x[free] = QuadraticNumber::one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -a[row][free].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitivity() {
        assert!(is_primitive_matrix(&vec![vec![1, 1], vec![1, 0]]));
        assert!(!is_primitive_matrix(&vec![vec![1, 0], vec![0, 1]]));
        // irreducible but periodic
        assert!(!is_primitive_matrix(&vec![vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn fibonacci_radius() {
        let r = spectral_radius_estimate(&vec![vec![1, 1], vec![1, 0]]);
        assert!((r - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let q = QuadraticNumber::from_integer;
        let k = kernel_vector(vec![vec![q(1), q(-2)], vec![q(-1), q(2)]]).unwrap();
        assert_eq!(k, vec![q(2), q(1)]);
        assert!(kernel_vector(vec![vec![q(1), q(0)], vec![q(0), q(1)]]).is_none());
    }
}
