//! Brute-force reference computations over the probability simplex.
//!
//! These search the simplex directly (grid plus exact constraint crossings
//! on each grid line) and share no code with the dual or tilted-family
//! solvers they are used to check.

use crate::prob::Pmf;

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

fn entropy(q: &[f64]) -> f64 {
    -q.iter()
        .map(|&x| if x > 0.0 { x * x.ln() } else { 0.0 })
        .sum::<f64>()
}

fn divergence(q: &[f64], p: &[f64]) -> f64 {
    let mut d = 0.0;
    for (&qz, &pz) in q.iter().zip(p) {
        if qz > 0.0 {
            if pz == 0.0 {
                return f64::INFINITY;
            }
            d += qz * (qz / pz).ln();
        }
    }
    d
}

fn log_loss(q: &[f64], p: &[f64]) -> f64 {
    let mut s = 0.0;
    for (&qz, &pz) in q.iter().zip(p) {
        if qz > 0.0 {
            if pz == 0.0 {
                return f64::INFINITY;
            }
            s -= qz * pz.ln();
        }
    }
    s
}

/// Optimizes `objective(q)` over `{q : constraint(q) ≥ 0}` on the simplex
/// for `K ∈ {2, 3}`.
///
/// `K = 2` uses `resolution` grid steps along the single edge; `K = 3` uses
/// a barycentric grid with `resolution` steps per side, walked along lines
/// of all three directions. Along every grid line the constraint boundary
/// is located by bisection and evaluated too.
/// Returns `None` when no feasible point is found.
pub fn simplex_optimize<O, C>(
    k: usize,
    resolution: usize,
    objective: O,
    constraint: C,
    sense: Sense,
) -> Option<f64>
where
    O: Fn(&[f64]) -> f64,
    C: Fn(&[f64]) -> f64,
{
    assert!(k == 2 || k == 3, "simplex oracle supports K = 2 or 3");
    let n = resolution as f64;
    let better = |a: f64, b: f64| match sense {
        Sense::Maximize => a > b,
        Sense::Minimize => a < b,
    };
    let mut best: Option<f64> = None;
    let mut consider = |q: &[f64]| {
        if constraint(q) >= 0.0 {
            let v = objective(q);
            if !v.is_nan() && best.map_or(true, |b| better(v, b)) {
                best = Some(v);
            }
        }
    };
    // each line fixes one coordinate at a grid value and moves mass between
    // the other two; on K = 3 all three directions are used so that no
    // constraint boundary runs parallel to every line family
    let families: &[(usize, usize, usize)] = if k == 2 {
        &[(usize::MAX, 0, 1)]
    } else {
        &[(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    };
    for &(fixed, a, b) in families {
        let levels = if k == 2 { 0 } else { resolution };
        for i in 0..=levels {
            let v = i as f64 / n;
            let len = 1.0 - v;
            let point = |u: f64| -> Vec<f64> {
                let mut q = vec![0.0; k];
                if fixed != usize::MAX {
                    q[fixed] = v;
                }
                q[a] = (len - u).max(0.0);
                q[b] = u;
                q
            };
            let mut prev: Option<(f64, f64)> = None;
            for j in 0..=(resolution - i) {
                let u = (j as f64 / n).min(len);
                let q = point(u);
                let g = constraint(&q);
                consider(&q);
                if let Some((pu, pg)) = prev {
                    if (pg >= 0.0) != (g >= 0.0) {
                        // lo feasible, hi infeasible
                        let (mut lo, mut hi) = if pg >= 0.0 { (pu, u) } else { (u, pu) };
                        for _ in 0..100 {
                            let mid = 0.5 * (lo + hi);
                            if constraint(&point(mid)) >= 0.0 {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                        }
                        consider(&point(lo));
                    }
                }
                prev = Some((u, g));
            }
        }
    }
    best
}

/// Default grid resolution: step 1e-4 on the binary simplex, 200 per side
/// on the ternary one.
pub fn default_resolution(k: usize) -> usize {
    if k == 2 {
        10_000
    } else {
        200
    }
}

/// Grid value of `max { H(Q) : −E_Q ln P ≤ θ }`; `None` if infeasible.
pub fn grid_r_of_theta(p: &Pmf, theta: f64, resolution: usize) -> Option<f64> {
    let pr = p.probs();
    simplex_optimize(
        p.len(),
        resolution,
        entropy,
        |q| theta - log_loss(q, pr),
        Sense::Maximize,
    )
}

/// Grid value of `min { D(Q‖P) : −E_Q ln P ≥ θ }` (log-loss restricted to
/// finite values).
pub fn grid_failure_exponent(p: &Pmf, theta: f64, resolution: usize) -> Option<f64> {
    let pr = p.probs();
    simplex_optimize(
        p.len(),
        resolution,
        |q| divergence(q, pr),
        |q| {
            let l = log_loss(q, pr);
            if l.is_finite() {
                l - theta
            } else {
                -1.0
            }
        },
        Sense::Minimize,
    )
}

/// Grid value of `min { D(Q‖P) : H(Q) ≥ h }`.
pub fn grid_min_divergence_with_entropy(p: &Pmf, h: f64, resolution: usize) -> Option<f64> {
    let pr = p.probs();
    simplex_optimize(
        p.len(),
        resolution,
        |q| divergence(q, pr),
        |q| entropy(q) - h,
        Sense::Minimize,
    )
}
