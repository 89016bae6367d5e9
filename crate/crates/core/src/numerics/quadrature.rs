//! Globally adaptive Gauss-Kronrod (10/21) quadrature.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use super::QuadratureSettings;
use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_896_919_850,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // integral of |f|, used for the round-off floor
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs_k = (WGK[10] * fc).abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_k += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let width = half.abs();
    let value = kronrod * half;
    let abs_value = abs_k * width;
    let asc = asc * width;
    let mut error = ((kronrod - gauss) * half).abs();
    // QUADPACK error rescaling.
    if asc != 0.0 && error != 0.0 {
        let scale = libm::pow(200.0 * error / asc, 1.5);
        error = if scale < 1.0 { asc * scale } else { asc };
    }
    let floor = 50.0 * f64::EPSILON * abs_value;
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && floor > error {
        error = floor;
    }
    Segment {
        a,
        b,
        value,
        error,
        abs_value,
    }
}

/// Integrates `f` over `[a, b]` to `max(abs_tol, rel_tol * |I|)`.
///
/// Globally adaptive: the segment with the largest error estimate is bisected
/// until the summed error meets the tolerance. Exact (up to round-off) for
/// polynomials of degree 19 and lower. Running out of `max_subdivisions`
/// yields [`Error::NotConverged`] with the best estimate.
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, q: &QuadratureSettings) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain(
            "interval bound",
            if a.is_finite() { b } else { a },
            "must be finite",
        ));
    }
    if a > b {
        return Err(Error::domain("lower bound", a, "must not exceed the upper bound"));
    }
    if a == b {
        return Ok(0.0);
    }

    let first = gauss_kronrod(&mut f, a, b);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut total_abs = first.abs_value;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    let mut subdivisions = 0;
    loop {
        let tol = q.abs_tol.max(q.rel_tol * total.abs());
        if !total.is_finite() {
            return Err(Error::NotConverged {
                context: "adaptive quadrature",
                estimate: total,
                error_bound: total_err,
            });
        }
        if total_err <= tol || total_err <= 50.0 * f64::EPSILON * total_abs {
            return Ok(total);
        }
        if subdivisions >= q.max_subdivisions {
            return Err(Error::NotConverged {
                context: "adaptive quadrature",
                estimate: total,
                error_bound: total_err,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Segment at machine resolution; nothing left to refine.
            return Err(Error::NotConverged {
                context: "adaptive quadrature",
                estimate: total,
                error_bound: total_err,
            });
        }
        let left = gauss_kronrod(&mut f, worst.a, mid);
        let right = gauss_kronrod(&mut f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;

        // Recompute the sums every so often to shed accumulated cancellation.
        if subdivisions % 64 == 0 {
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.error).sum();
            total_abs = heap.iter().map(|s| s.abs_value).sum();
        }
    }
}

/// Integrates a non-negative, eventually decreasing `f` over `[a, ∞)`.
///
/// Panels of width `scale` are appended until one contributes less than
/// `tail_cutoff` of the running total. At most 64 panels are used.
pub fn integrate_semi_infinite<F>(f: F, a: f64, scale: f64, q: &QuadratureSettings) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    integrate_semi_infinite_from(f, a, scale, scale, q)
}

/// Like [`integrate_semi_infinite`], but the first panel is `[a, a + head]`
/// where `head` covers the bulk of the integrand (for instance the region
/// where it is not yet decaying). The 64-panel cap applies beyond the head.
pub fn integrate_semi_infinite_from<F>(mut f: F, a: f64, scale: f64, head: f64, q: &QuadratureSettings) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    const MAX_PANELS: usize = 64;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::domain("scale", scale, "must be finite and > 0"));
    }
    if !(head > 0.0 && head.is_finite()) {
        return Err(Error::domain("head", head, "must be finite and > 0"));
    }
    let mut total = integrate_adaptive(&mut f, a, a + head, q)?;
    let mut lo = a + head;
    for _ in 0..MAX_PANELS {
        let hi = lo + scale;
        let panel = integrate_adaptive(&mut f, lo, hi, q)?;
        total += panel;
        if panel.abs() <= q.tail_cutoff * total.abs() {
            return Ok(total);
        }
        lo = hi;
    }
    Err(Error::NotConverged {
        context: "semi-infinite tail",
        estimate: total,
        error_bound: f64::NAN,
    })
}
