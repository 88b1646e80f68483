//! Root finding for strictly increasing one-dimensional functions.
//!
//! The only root problems in this crate involve functions that are strictly
//! increasing on an open ray, so a derivative-free bracket-and-bisect
//! scheme is both sufficient and immune to the overshoot failure modes of
//! Newton-type iterations.

use thiserror::Error;

/// Failure modes of [`find_root_increasing`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    /// The function value at the lower end of the search ray already
    /// exceeds the target, so no root exists on the ray.
    #[error("target {target} is below the function value {value} at the ray start {lo}")]
    TargetBelowRange { lo: f64, value: f64, target: f64 },
    /// No upper bracket was found within the expansion budget; the function
    /// appears to stay below the target.
    #[error("no upper bracket found below {hi}; function may be bounded above by {value}")]
    NoUpperBracket { hi: f64, value: f64 },
    /// The bracket collapsed to machine precision before the residual
    /// tolerance was met.
    #[error("bracket exhausted at {best} with residual {residual}")]
    PrecisionExhausted { best: f64, residual: f64 },
}

/// Residual tolerance: |g(root) - target| <= RESIDUAL_TOL * max(1, |target|).
const RESIDUAL_TOL: f64 = 1e-12;

/// Maximum number of bracket doublings before giving up.
const MAX_EXPANSIONS: u32 = 200;

/// Maximum bisection steps; 200 halvings exhaust an f64 bracket.
const MAX_BISECTIONS: u32 = 200;

/// Solves `g(x) = target` for a function `g` that is strictly increasing on
/// `[lo, infinity)`.
///
/// The upper bracket is found by doubling steps away from `lo`, then the
/// root is polished by bisection until the residual drops below
/// `1e-12 * max(1, |target|)`.
///
/// # Arguments
///
/// * `g` - strictly increasing function of one variable.
/// * `lo` - left end of the search ray; `g(lo)` must not exceed `target`.
/// * `target` - right-hand side of the equation.
pub fn find_root_increasing<F: Fn(f64) -> f64>(
    g: F,
    lo: f64,
    target: f64,
) -> Result<f64, RootError> {
    let tol = RESIDUAL_TOL * target.abs().max(1.0);

    let mut a = lo;
    let g_lo = g(a);
    if g_lo > target {
        return Err(RootError::TargetBelowRange { lo, value: g_lo, target });
    }
    if (g_lo - target).abs() <= tol {
        return Ok(a);
    }

    // Expand the bracket geometrically until g crosses the target.
    let mut step = a.abs().max(1.0);
    let mut b = a + step;
    let mut gb = g(b);
    let mut expansions = 0;
    while gb < target {
        if expansions >= MAX_EXPANSIONS {
            return Err(RootError::NoUpperBracket { hi: b, value: gb });
        }
        a = b;
        step *= 2.0;
        b += step;
        gb = g(b);
        expansions += 1;
    }
    if (gb - target).abs() <= tol {
        return Ok(b);
    }

    // Bisect. Monotonicity keeps the invariant g(a) < target < g(b).
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if (gm - target).abs() <= tol {
            return Ok(mid);
        }
        if gm < target {
            a = mid;
        } else {
            b = mid;
        }
    }

    let best = 0.5 * (a + b);
    let residual = (g(best) - target).abs();
    if residual <= tol {
        Ok(best)
    } else {
        Err(RootError::PrecisionExhausted { best, residual })
    }
}
