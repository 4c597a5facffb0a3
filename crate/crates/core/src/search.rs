//! One-dimensional maximization helpers used for numeric suprema.

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
///
/// Returns the best point seen, including the endpoints.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, iterations: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut best = {
        let fa = f(a);
        let fb = f(b);
        if fb > fa {
            (b, fb)
        } else {
            (a, fa)
        }
    };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iterations {
        if fc > best.1 {
            best = (c, fc);
        }
        if fd > best.1 {
            best = (d, fd);
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if b - a <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
    }
    if fc > best.1 {
        best = (c, fc);
    }
    if fd > best.1 {
        best = (d, fd);
    }
    best
}

/// Maximize `f` over `[lo, hi]`: dense sampling with `samples` points, then
/// golden-section refinement around the best sample.
pub fn maximize_sampled<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, samples: usize) -> (f64, f64) {
    let n = samples.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (lo, f(lo));
    for i in 1..n {
        let x = lo + step * i as f64;
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    let a = (best.0 - step).max(lo);
    let b = (best.0 + step).min(hi);
    let refined = golden_max(&mut f, a, b, 80);
    if refined.1 > best.1 {
        refined
    } else {
        best
    }
}
