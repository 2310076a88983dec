//! One-dimensional search routines shared by the exponent calculators.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal function on `[lo, hi]` by golden-section search.
///
/// Returns `(argmax, max)`. The endpoints are also evaluated so that a
/// boundary maximizer is reported exactly.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > tol * (1.0 + a.abs().max(b.abs())) {
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
    }
    let mid = 0.5 * (a + b);
    let mut best = (mid, f(mid));
    for x in [lo, hi, c, d] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Minimizes a unimodal function on `[lo, hi]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_max(|x| -f(x), lo, hi, tol);
    (x, -v)
}

/// Upper end of a bracket `[0, hi]` for a concave objective on `λ ≥ 0`
/// whose slope is positive at the origin.
///
/// Doubles `hi` from `start` until `slope(hi) <= 0`. Returns `None` when the
/// slope stays positive up to `limit`, i.e. the objective is unbounded (or
/// its supremum sits at infinity).
pub fn bracket_slope_sign<S: Fn(f64) -> f64>(slope: S, start: f64, limit: f64) -> Option<f64> {
    let mut hi = start;
    while hi <= limit {
        if slope(hi) <= 0.0 {
            return Some(hi);
        }
        hi *= 2.0;
    }
    None
}

/// Bisection for a root of a monotone function given a sign change on
/// `[lo, hi]`. Stops after the interval shrinks below `tol` or 200 halvings.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
