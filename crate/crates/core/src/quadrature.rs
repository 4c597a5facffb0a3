//! Global adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Intervals are kept in a max-heap keyed by their error estimate |K15 − G7|;
//! the worst one is bisected until the summed estimate is below the absolute
//! tolerance or the subdivision budget runs out. Known kinks and jumps can be
//! passed as breakpoints so that every initial interval is smooth.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::math::abs;
use crate::{Error, Result};

// Kronrod abscissae (positive half, descending) and weights; Gauss weights
// belong to the odd-indexed abscissae and the centre.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadOptions {
    /// Absolute tolerance on the summed error estimate.
    pub abs_tol: f64,
    /// Maximum number of subintervals.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-9,
            max_intervals: 1_000_000,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadOptions {
            abs_tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    pub intervals: usize,
}

struct Segment<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: f64,
}

impl<const N: usize> PartialEq for Segment<N> {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl<const N: usize> Eq for Segment<N> {}
impl<const N: usize> PartialOrd for Segment<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Segment<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<const N: usize, F: FnMut(f64) -> [f64; N]>(f: &mut F, a: f64, b: f64) -> Segment<N> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    for j in 0..N {
        k[j] = WGK[7] * fc[j];
        g[j] = WG[3] * fc[j];
    }
    for i in 0..7 {
        let dx = half * XGK[i];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        for j in 0..N {
            let s = f1[j] + f2[j];
            k[j] += WGK[i] * s;
            if i % 2 == 1 {
                g[j] += WG[i / 2] * s;
            }
        }
    }
    let mut error: f64 = 0.0;
    let mut value = [0.0; N];
    for j in 0..N {
        value[j] = k[j] * half;
        error = error.max(abs((k[j] - g[j]) * half));
    }
    Segment { a, b, value, error }
}

/// Integrate a vector-valued function over `[a, b]`, splitting first at any
/// `breakpoints` that fall strictly inside. The error is the largest
/// component estimate.
pub fn integrate_n<const N: usize, F: FnMut(f64) -> [f64; N]>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: &QuadOptions,
) -> Result<Quad<N>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid("integration bounds must be finite"));
    }
    if a == b {
        return Ok(Quad {
            value: [0.0; N],
            error: 0.0,
            intervals: 0,
        });
    }
    if a > b {
        let mut q = integrate_n(f, b, a, breakpoints, opts)?;
        for v in q.value.iter_mut() {
            *v = -*v;
        }
        return Ok(q);
    }

    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&p| p > a && p < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment<N>> = Vec::new();
    let mut total_error = 0.0;
    let mut left = a;
    for &c in cuts.iter().chain(core::iter::once(&b)) {
        let seg = kronrod(&mut f, left, c);
        total_error += seg.error;
        heap.push(seg);
        left = c;
    }

    let mut count = heap.len();
    let mut exhausted = false;
    loop {
        while total_error > opts.abs_tol {
            let Some(worst) = heap.pop() else {
                exhausted = true;
                break;
            };
            let mid = 0.5 * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b) {
                // Cannot bisect further in floating point.
                frozen.push(worst);
                continue;
            }
            if count >= opts.max_intervals {
                heap.push(worst);
                exhausted = true;
                break;
            }
            let l = kronrod(&mut f, worst.a, mid);
            let r = kronrod(&mut f, mid, worst.b);
            total_error += l.error + r.error - worst.error;
            heap.push(l);
            heap.push(r);
            count += 1;
            // Refresh the running sum now and then to keep cancellation drift out.
            if count % 4096 == 0 {
                total_error = heap.iter().chain(frozen.iter()).map(|s| s.error).sum();
            }
        }
        if exhausted {
            break;
        }
        // The running sum can drift below the tolerance; confirm with the exact sum.
        total_error = heap.iter().chain(frozen.iter()).map(|s| s.error).sum();
        if total_error <= opts.abs_tol {
            break;
        }
    }

    let mut value = [0.0; N];
    let mut error = 0.0;
    for s in heap.iter().chain(frozen.iter()) {
        for (acc, v) in value.iter_mut().zip(&s.value) {
            *acc += v;
        }
        error += s.error;
    }
    if error > opts.abs_tol {
        return Err(Error::Quadrature {
            tol: opts.abs_tol,
            intervals: count,
            estimate: error,
        });
    }
    Ok(Quad {
        value,
        error,
        intervals: count,
    })
}

/// Scalar convenience wrapper over [`integrate_n`]; returns (value, error).
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, breakpoints: &[f64], opts: &QuadOptions) -> Result<(f64, f64)> {
    let q = integrate_n(|x| [f(x)], a, b, breakpoints, opts)?;
    Ok((q.value[0], q.error))
}
