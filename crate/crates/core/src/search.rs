//! One-dimensional search: golden-section refinement and periodic grid
//! sweeps used by the support-function computations.

use std::f64::consts::TAU;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of `f` on `[lo, hi]`.
///
/// Returns the best point evaluated (endpoints included), so the result is
/// never worse than either end of the bracket.
pub fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut best = (a, f(a));
    let fb = f(b);
    if fb > best.1 {
        best = (b, fb);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 > best.1 {
            best = (x1, f1);
        }
        if f2 > best.1 {
            best = (x2, f2);
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    for (x, fx) in [(x1, f1), (x2, f2)] {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Golden-section minimization of `f` on `[lo, hi]` until the bracket is
/// narrower than `tol` (or `max_iters` is reached).
pub fn golden_min(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iters: usize,
) -> (f64, f64) {
    let neg = |x: f64| -f(x);
    let iters = if hi - lo > tol {
        (((hi - lo) / tol).ln() / (1.0 / INV_PHI).ln()).ceil() as usize
    } else {
        0
    };
    let (x, v) = golden_max(neg, lo, hi, iters.min(max_iters));
    (x, -v)
}

/// Maximizes a `2π`-periodic function: samples `count` equally spaced
/// angles, then golden-section refines the neighborhood of the best few
/// local maxima of the grid.
pub fn periodic_max(f: impl Fn(f64) -> f64, count: usize, refine_iters: usize) -> (f64, f64) {
    let step = TAU / count as f64;
    let values: Vec<f64> = (0..count).map(|k| f(k as f64 * step)).collect();
    let mut peaks: Vec<usize> = (0..count)
        .filter(|&k| {
            let prev = values[(k + count - 1) % count];
            let next = values[(k + 1) % count];
            values[k] >= prev && values[k] >= next
        })
        .collect();
    peaks.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    peaks.truncate(3);

    let mut best = (0.0, values[0]);
    for (k, &v) in values.iter().enumerate() {
        if v > best.1 {
            best = (k as f64 * step, v);
        }
    }
    for k in peaks {
        let center = k as f64 * step;
        let (x, v) = golden_max(&f, center - step, center + step, refine_iters);
        if v > best.1 {
            best = (x.rem_euclid(TAU), v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 80);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn golden_min_kinked() {
        let (x, v) = golden_min(|x| (x - 0.125).abs() + 1.0, -3.0, 3.0, 1e-12, 500);
        assert!((x - 0.125).abs() < 1e-11);
        assert!((v - 1.0).abs() < 1e-11);
    }

    #[test]
    fn periodic_picks_global_peak() {
        // two local maxima, the higher one off-grid
        let f = |t: f64| (t - 1.0).cos() + 0.1 * (2.0 * (t - 1.0)).cos();
        let (t, v) = periodic_max(f, 720, 40);
        assert!((t - 1.0).abs() < 1e-6);
        assert!((v - 1.1).abs() < 1e-12);
    }

    #[test]
    fn periodic_constant() {
        let (_, v) = periodic_max(|_| 0.5, 64, 10);
        assert_eq!(v, 0.5);
    }
}
