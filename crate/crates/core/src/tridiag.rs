//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
//! eigenvalues in a window, inverse iteration for the eigenvectors.
//!
//! The matrix is given by its diagonal `d[0..n]` and off-diagonal `e[0..n-1]`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::math::{abs, sqrt};
use crate::{Error, Result};

fn pivmin(off: &[f64]) -> f64 {
    let emax = off.iter().fold(1.0f64, |m, &e| m.max(e * e));
    f64::MIN_POSITIVE * emax
}

/// Number of eigenvalues strictly below `mu` (negative pivots of the LDLᵀ
/// factorization of T − μI).
pub fn sturm_count(diag: &[f64], off: &[f64], mu: f64) -> usize {
    sturm_count_with(diag, off, mu, pivmin(off))
}

fn sturm_count_with(diag: &[f64], off: &[f64], mu: f64, pmin: f64) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    let mut q = diag[0] - mu;
    if abs(q) < pmin {
        q = -pmin;
    }
    let mut count = (q < 0.0) as usize;
    for i in 1..n {
        q = (diag[i] - mu) - off[i - 1] * off[i - 1] / q;
        if abs(q) < pmin {
            q = -pmin;
        }
        count += (q < 0.0) as usize;
    }
    count
}

/// Gershgorin interval containing the whole spectrum.
pub fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { abs(off[i - 1]) } else { 0.0 } + if i + 1 < n { abs(off[i]) } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (lo, hi)
}

/// ‖T‖∞, the largest absolute row sum.
pub fn inf_norm(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    (0..n)
        .map(|i| {
            abs(diag[i]) + if i > 0 { abs(off[i - 1]) } else { 0.0 } + if i + 1 < n { abs(off[i]) } else { 0.0 }
        })
        .fold(0.0, f64::max)
}

fn bisect_converged(a: f64, b: f64, pmin: f64) -> bool {
    let mid = 0.5 * (a + b);
    !(mid > a && mid < b) || b - a <= 2.0 * f64::EPSILON * abs(a).max(abs(b)) + pmin
}

/// All eigenvalues in the half-open window `[lo, hi)`, ascending.
///
/// Intervals are split until each holds one eigenvalue, which is then bisected
/// to full working precision. Coincident eigenvalues that cannot be separated
/// in floating point are returned with their multiplicity.
pub fn eigenvalues_in(diag: &[f64], off: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if diag.is_empty() || !(hi > lo) {
        return out;
    }
    let pmin = pivmin(off);
    let (glo, ghi) = gershgorin(diag, off);
    let a0 = lo.max(glo - 1.0);
    let b0 = hi.min(ghi + 1.0);
    if !(b0 > a0) {
        return out;
    }
    let ca = sturm_count_with(diag, off, a0, pmin);
    let cb = sturm_count_with(diag, off, b0, pmin);
    // Right halves pushed first so eigenvalues come out ascending.
    let mut stack = vec![(a0, b0, ca, cb)];
    while let Some((a, b, ca, cb)) = stack.pop() {
        if cb <= ca {
            continue;
        }
        if bisect_converged(a, b, pmin) {
            let mid = 0.5 * (a + b);
            out.extend(core::iter::repeat(mid).take(cb - ca));
            continue;
        }
        let mid = 0.5 * (a + b);
        let cm = sturm_count_with(diag, off, mid, pmin);
        stack.push((mid, b, cm, cb));
        stack.push((a, mid, ca, cm));
    }
    out
}

/// The k-th smallest eigenvalue (0-based).
pub fn eigenvalue_by_index(diag: &[f64], off: &[f64], k: usize) -> Option<f64> {
    let n = diag.len();
    if k >= n {
        return None;
    }
    let pmin = pivmin(off);
    let (glo, ghi) = gershgorin(diag, off);
    let (mut a, mut b) = (glo - 1.0, ghi + 1.0);
    while !bisect_converged(a, b, pmin) {
        let mid = 0.5 * (a + b);
        if sturm_count_with(diag, off, mid, pmin) > k {
            b = mid;
        } else {
            a = mid;
        }
    }
    Some(0.5 * (a + b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InverseIterationOptions {
    /// Iteration budget per eigenvector (restarts included).
    pub max_iterations: usize,
    /// Seed for the start vectors.
    pub seed: u64,
    /// Neighbours closer than this multiple of ‖T‖∞ are orthogonalized against.
    pub cluster_gap: f64,
    /// Below this multiple of ‖T‖∞ the start vector is redrawn and
    /// orthogonalized before the first solve.
    pub restart_gap: f64,
    /// Accept when ‖Tψ − λψ‖₂ ≤ residual_tol · ‖T‖∞ for unit ψ.
    pub residual_tol: f64,
}

impl Default for InverseIterationOptions {
    fn default() -> Self {
        InverseIterationOptions {
            max_iterations: 12,
            seed: 0,
            cluster_gap: 1e-7,
            restart_gap: 1e-10,
            residual_tol: 1e-8,
        }
    }
}

/// LU factors of T − σI with partial pivoting (LAPACK `dgttrf` layout).
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(diag: &[f64], off: &[f64], shift: f64, tiny: f64) -> Self {
        let n = diag.len();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut d: Vec<f64> = diag.iter().map(|&x| x - shift).collect();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if abs(d[i]) >= abs(dl[i]) {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        // Exactly singular pivots are expected when the shift is an eigenvalue.
        for p in d.iter_mut() {
            if abs(*p) < tiny {
                *p = if *p < 0.0 { -tiny } else { tiny };
            }
        }
        ShiftedLu { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i] - self.dl[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn norm2(v: &[f64]) -> f64 {
    sqrt(v.iter().map(|x| x * x).sum())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn residual_norm(diag: &[f64], off: &[f64], lambda: f64, v: &[f64]) -> f64 {
    let n = v.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut r = (diag[i] - lambda) * v[i];
        if i > 0 {
            r += off[i - 1] * v[i - 1];
        }
        if i + 1 < n {
            r += off[i] * v[i + 1];
        }
        acc += r * r;
    }
    sqrt(acc)
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * 2.0 - 1.0)
        .collect();
    let s = norm2(&v);
    v.iter_mut().for_each(|x| *x /= s);
    v
}

fn orthogonalize(v: &mut [f64], basis: &VecDeque<(f64, Vec<f64>)>) {
    for (_, u) in basis {
        let c = dot(v, u);
        v.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
    }
}

/// Fix the sign so the largest-magnitude component is positive.
fn canonical_sign(v: &mut [f64]) {
    let mut best = 0.0f64;
    for &x in v.iter() {
        if abs(x) > abs(best) {
            best = x;
        }
    }
    if best < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Compute unit (Euclidean) eigenvectors for ascending `eigenvalues`,
/// handing each one to `sink(index, vector, residual)` as soon as it is
/// available. Only the vectors of the current cluster are kept internally.
pub fn for_each_eigenvector<S>(diag: &[f64], off: &[f64], eigenvalues: &[f64], opts: &InverseIterationOptions, mut sink: S) -> Result<()>
where
    S: FnMut(usize, &[f64], f64) -> Result<()>,
{
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    let norm = inf_norm(diag, off).max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * norm;
    let cluster_gap = opts.cluster_gap * norm;
    let restart_gap = opts.restart_gap * norm;
    let tol = opts.residual_tol * norm;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut recent: VecDeque<(f64, Vec<f64>)> = VecDeque::new();

    for (idx, &lambda) in eigenvalues.iter().enumerate() {
        while recent.front().is_some_and(|(mu, _)| lambda - mu > cluster_gap) {
            recent.pop_front();
        }
        let lu = ShiftedLu::new(diag, off, lambda, tiny);
        let near_degenerate = recent.back().is_some_and(|(mu, _)| lambda - mu < restart_gap);

        let mut x = random_unit(&mut rng, n);
        if near_degenerate {
            orthogonalize(&mut x, &recent);
        }
        let mut converged = 0usize;
        let mut residual = f64::INFINITY;
        let mut iterations = 0;
        while iterations < opts.max_iterations {
            iterations += 1;
            lu.solve(&mut x);
            orthogonalize(&mut x, &recent);
            let s = norm2(&x);
            if !(s.is_finite()) || s <= f64::MIN_POSITIVE * 1e10 {
                x = random_unit(&mut rng, n);
                orthogonalize(&mut x, &recent);
                converged = 0;
                continue;
            }
            x.iter_mut().for_each(|v| *v /= s);
            residual = residual_norm(diag, off, lambda, &x);
            if residual <= tol {
                converged += 1;
                // One extra sweep after the residual test passes.
                if converged >= 2 {
                    break;
                }
            }
        }
        if converged == 0 {
            return Err(Error::Convergence {
                eigenvalue: lambda,
                iterations,
            });
        }
        canonical_sign(&mut x);
        sink(idx, &x, residual / norm)?;
        if cluster_gap > 0.0 {
            recent.push_back((lambda, x));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::SQRT_2;

    #[test]
    fn three_by_three_toeplitz() {
        let d = [2.0, 2.0, 2.0];
        let e = [-1.0, -1.0];
        let ev = eigenvalues_in(&d, &e, -10.0, 10.0);
        assert_eq!(ev.len(), 3);
        for (got, want) in ev.iter().zip([2.0 - SQRT_2, 2.0, 2.0 + SQRT_2]) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        assert_eq!(sturm_count(&d, &e, 2.0 - SQRT_2 + 1e-9), 1);
        assert_eq!(eigenvalue_by_index(&d, &e, 2).map(|v| (v - 2.0 - SQRT_2).abs() < 1e-14), Some(true));
    }

    #[test]
    fn windowed_eigenvalues_and_vectors() {
        let n = 200;
        let d: Vec<f64> = (0..n).map(|i| 2.0 + 0.01 * i as f64).collect();
        let e = vec![-1.0; n - 1];
        let ev = eigenvalues_in(&d, &e, 1.0, 2.0);
        assert_eq!(ev.len(), sturm_count(&d, &e, 2.0) - sturm_count(&d, &e, 1.0));
        let mut vecs = Vec::new();
        for_each_eigenvector(&d, &e, &ev, &InverseIterationOptions::default(), |_, v, r| {
            assert!(r < 1e-8);
            vecs.push(v.to_vec());
            Ok(())
        })
        .unwrap();
        for i in 0..vecs.len() {
            for j in 0..i {
                assert!(dot(&vecs[i], &vecs[j]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn near_degenerate_pair_stays_orthogonal() {
        // Two weakly coupled identical blocks give a pair split by ~1e-12.
        let n = 60;
        let mut d = vec![2.0; n];
        d[29] = 50.0;
        d[30] = 50.0;
        let mut e = vec![-1.0; n - 1];
        e[29] = -1e-6;
        let ev = eigenvalues_in(&d, &e, -1.0, 0.1);
        assert!(ev.len() >= 2);
        let mut vecs = Vec::new();
        for_each_eigenvector(&d, &e, &ev, &InverseIterationOptions::default(), |_, v, _| {
            vecs.push(v.to_vec());
            Ok(())
        })
        .unwrap();
        assert!(dot(&vecs[0], &vecs[1]).abs() < 1e-8);
    }

    #[test]
    fn lu_solve_matches_multiplication() {
        let d = [4.0, -1.0, 3.0, 0.5, 2.0];
        let e = [1.0, 2.0, -1.5, 0.7];
        let lu = ShiftedLu::new(&d, &e, 0.3, 1e-300);
        let x = [1.0, -2.0, 0.5, 3.0, -1.0];
        let mut b: Vec<f64> = (0..5)
            .map(|i| {
                let mut s = (d[i] - 0.3) * x[i];
                if i > 0 {
                    s += e[i - 1] * x[i - 1];
                }
                if i < 4 {
                    s += e[i] * x[i + 1];
                }
                s
            })
            .collect();
        lu.solve(&mut b);
        for i in 0..5 {
            assert!((b[i] - x[i]).abs() < 1e-13);
        }
    }
}
