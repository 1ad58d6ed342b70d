//! Dense complex eigenvalues by balancing, Householder reduction to
//! Hessenberg form, and explicit single-shift QR iteration with Givens
//! rotations. Eigenvalues only, no vectors; sizes up to 64.
//!
//! The shift is the Wilkinson shift from the trailing 2x2 of the active
//! window, with an exceptional magnitude-based shift every tenth sweep to
//! break the rare cycling cases (nilpotent shift matrices and friends).

use num_complex::Complex64;
use thiserror::Error;

use crate::charpoly::ComplexMatrix;

/// Hard cap from the contract: callers needing more should use a real
/// eigensolver library, not this desk-scale kernel.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, Error)]
pub enum EigenError {
    #[error("matrix dimension {n} exceeds the supported maximum {MAX_DIM}")]
    TooLarge { n: usize },
    #[error(
        "QR iteration did not converge within {iterations} sweeps; \
         {} eigenvalues were found before giving up",
        partial.len()
    )]
    NonConvergence {
        iterations: usize,
        /// Eigenvalues deflated before convergence failed.
        partial: Vec<Complex64>,
    },
}

type C = Complex64;

fn cabs1(z: C) -> f64 {
    z.re.abs() + z.im.abs()
}

/// All eigenvalues of a square complex matrix, with multiplicity, in no
/// particular order.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C>, EigenError> {
    let n = a.dim();
    if n > MAX_DIM {
        return Err(EigenError::TooLarge { n });
    }
    let mut h: Vec<Vec<C>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    if n == 1 {
        return Ok(vec![h[0][0]]);
    }
    balance(&mut h);
    hessenberg(&mut h);
    qr_hessenberg(&mut h)
}

/// Parlett-Reinsch balancing: diagonal similarity scaling by powers of two
/// so that row and column norms match. Exact powers of two leave the
/// mantissa untouched, so this cannot perturb the spectrum.
#[allow(clippy::needless_range_loop)]
fn balance(h: &mut [Vec<C>]) {
    let n = h.len();
    let radix = 2.0f64;
    let b2 = radix * radix;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| cabs1(h[j][i])).sum();
            let r: f64 = (0..n).filter(|&j| j != i).map(|j| cabs1(h[i][j])).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= b2;
            }
            g = r * radix;
            while c >= g {
                f /= radix;
                c /= b2;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    h[i][j] *= ginv;
                }
                for row in h.iter_mut() {
                    row[i] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
#[allow(clippy::needless_range_loop)]
fn hessenberg(h: &mut [Vec<C>]) {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        // reflector on rows k+1..n annihilating column k below the subdiagonal
        let norm_x: f64 = (k + 1..n).map(|i| h[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 {
            C::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        // v = x - alpha * e1, normalized so that P = I - 2 v v* / (v* v)
        let mut v: Vec<C> = (k + 1..n).map(|i| h[i][k]).collect();
        v[0] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sqr;
        // left: H <- P H
        for j in k..n {
            let dot: C = (0..v.len()).map(|i| v[i].conj() * h[k + 1 + i][j]).sum();
            let scale = dot * beta;
            for i in 0..v.len() {
                h[k + 1 + i][j] -= scale * v[i];
            }
        }
        // right: H <- H P
        for row in h.iter_mut().take(n) {
            let dot: C = (0..v.len()).map(|i| row[k + 1 + i] * v[i]).sum();
            let scale = dot * beta;
            for i in 0..v.len() {
                row[k + 1 + i] -= scale * v[i].conj();
            }
        }
        h[k + 1][k] = alpha;
        for i in k + 2..n {
            h[i][k] = C::new(0.0, 0.0);
        }
    }
}

/// Eigenvalues of a 2x2 complex matrix, solved directly and stably.
fn eig2(a: C, b: C, c: C, d: C) -> (C, C) {
    let mid = (a + d) * 0.5;
    let det = a * d - b * c;
    let rad = (mid * mid - det).sqrt();
    // choose the sign that avoids cancellation in the larger root
    let l1 = if cabs1(mid + rad) >= cabs1(mid - rad) {
        mid + rad
    } else {
        mid - rad
    };
    if cabs1(l1) == 0.0 {
        return (C::new(0.0, 0.0), C::new(0.0, 0.0));
    }
    (l1, det / l1)
}

/// Givens pair (c real, s complex) with
/// `[c, s; -conj(s), c] * [a; b] = [r; 0]`.
fn givens(a: C, b: C) -> (f64, C) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

#[allow(clippy::needless_range_loop)]
fn qr_hessenberg(h: &mut [Vec<C>]) -> Result<Vec<C>, EigenError> {
    let n = h.len();
    let mut eig: Vec<C> = Vec::with_capacity(n);
    let hnorm: f64 = h
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row[i.saturating_sub(1)..]
                .iter()
                .map(|z| cabs1(*z))
                .sum::<f64>()
        })
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let max_iters = 30 * n * n;
    let mut total_iters = 0usize;
    let mut hi = n - 1;
    let mut stagnation = 0usize;

    loop {
        // find the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = cabs1(h[lo][lo - 1]);
            let local = cabs1(h[lo - 1][lo - 1]) + cabs1(h[lo][lo]);
            let tol = if local > 0.0 {
                eps * local
            } else {
                eps * hnorm
            };
            if sub <= tol {
                h[lo][lo - 1] = C::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eig.push(h[hi][hi]);
            stagnation = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }
        if lo == hi - 1 {
            let (l1, l2) = eig2(h[lo][lo], h[lo][hi], h[hi][lo], h[hi][hi]);
            eig.push(l1);
            eig.push(l2);
            stagnation = 0;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            continue;
        }

        total_iters += 1;
        stagnation += 1;
        if total_iters > max_iters {
            return Err(EigenError::NonConvergence {
                iterations: total_iters,
                partial: eig,
            });
        }

        let shift = if stagnation.is_multiple_of(10) {
            // exceptional shift to break cycling
            C::new(h[hi][hi - 1].norm() + h[hi - 1][hi - 2].norm(), 0.0)
        } else {
            let (l1, l2) = eig2(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]);
            if cabs1(l1 - h[hi][hi]) <= cabs1(l2 - h[hi][hi]) {
                l1
            } else {
                l2
            }
        };

        // explicit shifted QR sweep on the window [lo, hi]
        for i in lo..=hi {
            h[i][i] -= shift;
        }
        let mut rots: Vec<(f64, C)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = x * c + s * y;
                h[k + 1][j] = -s.conj() * x + y * c;
            }
            h[k + 1][k] = C::new(0.0, 0.0);
            rots.push((c, s));
        }
        for (k, (c, s)) in rots.into_iter().enumerate() {
            let k = lo + k;
            for row in h.iter_mut().take(hi + 1).skip(lo) {
                let x = row[k];
                let y = row[k + 1];
                row[k] = x * c + y * s.conj();
                row[k + 1] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            h[i][i] += shift;
        }
    }

    Ok(eig)
}

/// All roots of a complex polynomial given in ascending-power coefficients,
/// via the companion-matrix eigenvalue method. Exact zero roots (trailing
/// zero coefficients) are returned as exact zeros; the remaining roots get
/// a few Newton polish steps against the original coefficients.
#[allow(clippy::needless_range_loop)]
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<C>, EigenError> {
    let mut c: Vec<C> = coeffs.to_vec();
    while let Some(last) = c.last() {
        if cabs1(*last) == 0.0 {
            c.pop();
        } else {
            break;
        }
    }
    if c.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut zero_roots = 0usize;
    while cabs1(c[0]) == 0.0 {
        c.remove(0);
        zero_roots += 1;
    }
    let d = c.len() - 1;
    let mut roots = vec![C::new(0.0, 0.0); zero_roots];
    if d == 0 {
        return Ok(roots);
    }
    let lead = c[d];
    let mut comp = ComplexMatrix::zero(d);
    for i in 0..d {
        comp.set(i, d - 1, -c[i] / lead);
        if i + 1 < d {
            comp.set(i + 1, i, C::new(1.0, 0.0));
        }
    }
    let mut raw = eigenvalues(&comp)?;
    for r in raw.iter_mut() {
        *r = polish_root(&c, *r);
    }
    roots.extend(raw);
    Ok(roots)
}

/// A few guarded Newton steps; keeps the iterate only while the residual
/// shrinks.
fn polish_root(coeffs: &[C], mut z: C) -> C {
    let eval = |z: C| -> (C, C) {
        let mut p = C::new(0.0, 0.0);
        let mut dp = C::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let (mut best_res, _) = eval(z);
    let mut best = z;
    for _ in 0..3 {
        let (p, dp) = eval(z);
        if cabs1(dp) == 0.0 {
            break;
        }
        z -= p / dp;
        let (res, _) = eval(z);
        if res.norm() < best_res.norm() {
            best_res = res;
            best = z;
        } else {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::ComplexMatrix;

    fn cm(n: usize, data: &[(f64, f64)]) -> ComplexMatrix {
        ComplexMatrix::from_entries(n, data.iter().map(|(r, i)| C::new(*r, *i)).collect())
    }

    fn sort_key(z: &C) -> (i64, i64) {
        ((z.re * 1e9) as i64, (z.im * 1e9) as i64)
    }

    #[test]
    fn diagonal_matrix() {
        let a = cm(2, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 2.0)]);
        let mut e = eigenvalues(&a).unwrap();
        e.sort_by_key(sort_key);
        assert!((e[0] - C::new(0.0, 2.0)).norm() < 1e-12);
        assert!((e[1] - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn two_site_at_ep() {
        // [[i, 1], [1, -i]] is defective with a double eigenvalue at 0
        let a = cm(2, &[(0.0, 1.0), (1.0, 0.0), (1.0, 0.0), (0.0, -1.0)]);
        let e = eigenvalues(&a).unwrap();
        assert!(e.iter().all(|z| z.norm() < 1e-8));
    }

    #[test]
    fn nilpotent_shift_matrix() {
        // strictly subdiagonal ones: all eigenvalues zero; exercises the
        // exceptional-shift path
        let n = 5;
        let mut a = ComplexMatrix::zero(n);
        for i in 0..n - 1 {
            a.set(i + 1, i, C::new(1.0, 0.0));
        }
        let e = eigenvalues(&a).unwrap();
        assert_eq!(e.len(), n);
        assert!(e.iter().all(|z| z.norm() < 1e-6));
    }

    #[test]
    fn known_complex_3x3() {
        // upper triangular: spectrum on the diagonal
        let a = cm(
            3,
            &[
                (1.0, 1.0),
                (2.0, 0.0),
                (0.5, 0.0),
                (0.0, 0.0),
                (-2.0, 0.0),
                (3.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (0.0, -3.0),
            ],
        );
        let mut e = eigenvalues(&a).unwrap();
        e.sort_by_key(sort_key);
        let mut expect = vec![C::new(1.0, 1.0), C::new(-2.0, 0.0), C::new(0.0, -3.0)];
        expect.sort_by_key(sort_key);
        for (x, y) in e.iter().zip(expect.iter()) {
            assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn similarity_invariance() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(2..=8);
            let data: Vec<C> = (0..n * n)
                .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let a = ComplexMatrix::from_entries(n, data.clone());
            // unitary from Householder-like normalized random vectors: use a
            // product of Givens rotations for simplicity
            let mut u = ComplexMatrix::zero(n);
            for i in 0..n {
                u.set(i, i, C::new(1.0, 0.0));
            }
            for k in 0..n - 1 {
                let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
                let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let (c, s) = (theta.cos(), theta.sin());
                let sc = C::new(0.0, phase).exp() * s;
                let mut v = u.clone();
                for j in 0..n {
                    let x = u.get(k, j);
                    let y = u.get(k + 1, j);
                    v.set(k, j, x * c + y * sc);
                    v.set(k + 1, j, -x * sc.conj() + y * c);
                }
                u = v;
            }
            // b = u a u^H
            let mut ua = ComplexMatrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = C::new(0.0, 0.0);
                    for k in 0..n {
                        acc += u.get(i, k) * a.get(k, j);
                    }
                    ua.set(i, j, acc);
                }
            }
            let mut b = ComplexMatrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = C::new(0.0, 0.0);
                    for k in 0..n {
                        acc += ua.get(i, k) * u.get(j, k).conj();
                    }
                    b.set(i, j, acc);
                }
            }
            let mut ea = eigenvalues(&a).unwrap();
            let mut eb = eigenvalues(&b).unwrap();
            ea.sort_by_key(sort_key);
            eb.sort_by_key(sort_key);
            for (x, y) in ea.iter().zip(eb.iter()) {
                assert!((x - y).norm() < 1e-7, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn dimension_cap() {
        let a = ComplexMatrix::zero(65);
        assert!(matches!(
            eigenvalues(&a),
            Err(EigenError::TooLarge { n: 65 })
        ));
    }

    #[test]
    fn roots_of_quadratic() {
        // (z - 2)(z + 3i) = z^2 + (3i - 2) z - 6i
        let coeffs = [C::new(0.0, -6.0), C::new(-2.0, 3.0), C::new(1.0, 0.0)];
        let mut r = polynomial_roots(&coeffs).unwrap();
        r.sort_by_key(sort_key);
        assert!((r[0] - C::new(0.0, -3.0)).norm() < 1e-10);
        assert!((r[1] - C::new(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn roots_with_exact_zeros() {
        // z^2 (z - 1): trailing zero coefficients become exact zero roots
        let coeffs = [
            C::new(0.0, 0.0),
            C::new(0.0, 0.0),
            C::new(-1.0, 0.0),
            C::new(1.0, 0.0),
        ];
        let mut r = polynomial_roots(&coeffs).unwrap();
        r.sort_by_key(sort_key);
        assert_eq!(r.len(), 3);
        assert_eq!(r[0], C::new(0.0, 0.0));
        assert_eq!(r[1], C::new(0.0, 0.0));
        assert!((r[2] - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_of_constant_and_zero() {
        assert!(polynomial_roots(&[C::new(5.0, 0.0)]).unwrap().is_empty());
        assert!(polynomial_roots(&[]).unwrap().is_empty());
    }
}
