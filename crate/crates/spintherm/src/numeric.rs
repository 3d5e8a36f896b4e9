//! Numerically stable scalar kernels, bisection, and adaptive quadrature.
//!
//! Everything here is dimensionless. The exponential-difference forms follow
//! the usual recipe: express each quantity through `expm1`/`ln_1p` so that the
//! small-argument regime loses no precision, and switch to the asymptotic
//! limit once the argument is large enough that the exact form would overflow
//! or cancel below double precision.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Argument beyond which 1/sinh²(x) and the entropy bracket are flushed to
/// their asymptotic limit (0). e^(2·350) is already past double range.
pub(crate) const SINH_CUTOFF: f64 = 350.0;

/// Mean occupation of a geometric mode: 1/(e^x − 1), for x ≠ 0.
///
/// Stable for tiny |x| because `expm1` is exact to rounding there.
#[inline]
pub fn bose(x: f64) -> f64 {
    1.0 / x.exp_m1()
}

/// ln(1 − e^(−x)) for x > 0 without cancellation.
#[inline]
pub fn ln_one_minus_exp_neg(x: f64) -> f64 {
    // For x ≤ ln 2 the argument of ln_1p is built from expm1 (small-x safe);
    // beyond that e^(−x) itself is the small quantity.
    if x <= std::f64::consts::LN_2 {
        (-(-x).exp_m1()).ln()
    } else {
        (-(-x).exp()).ln_1p()
    }
}

/// 1/sinh²(x) for x > 0 via the exponential-difference form,
/// flushed to the asymptotic tail 4e^(−2x) (→ 0) beyond the overflow cutoff.
#[inline]
pub fn inv_sinh_sq(x: f64) -> f64 {
    if x > SINH_CUTOFF {
        4.0 * (-2.0 * x).exp()
    } else {
        let s = x.sinh();
        1.0 / (s * s)
    }
}

/// Natural log of an arbitrary-precision positive integer.
///
/// Values beyond f64 range are handled by splitting off a power of two, so
/// entropy capacities stay finite for any system size the combinatorics can
/// produce.
pub fn ln_big(n: &BigUint) -> Result<f64> {
    use num_traits::ToPrimitive;
    if n == &BigUint::ZERO {
        return Err(Error::domain("ln of zero"));
    }
    let bits = n.bits();
    if bits <= 53 {
        return Ok((n.to_u64().expect("fits in u64") as f64).ln());
    }
    // n = mantissa · 2^shift with a 53-bit mantissa.
    let shift = bits - 53;
    let mantissa = (n >> shift).to_u64().expect("53 bits fit in u64") as f64;
    Ok(mantissa.ln() + shift as f64 * std::f64::consts::LN_2)
}

/// Bisection for a root of `f` on [lo, hi].
///
/// `f` must be monotone (or at least single-signed-crossing) on the bracket.
/// Accepts a root on the boundary. Converges when |f| ≤ `f_tol` or the
/// interval shrinks below `x_tol`, within `max_iter` halvings.
pub fn bisect(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    f_tol: f64,
    x_tol: f64,
    max_iter: u32,
) -> Result<f64> {
    if !(lo <= hi) {
        return Err(Error::invalid(format!("bisection bracket [{lo}, {hi}] is inverted")));
    }
    let flo = f(lo);
    if flo.abs() <= f_tol {
        return Ok(lo);
    }
    let fhi = f(hi);
    if fhi.abs() <= f_tol {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::infeasible(format!(
            "no sign change on bracket [{lo}, {hi}]: f(lo)={flo:e}, f(hi)={fhi:e}"
        )));
    }
    let falling = flo > 0.0;
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.abs() <= f_tol || (hi - lo) <= x_tol {
            return Ok(mid);
        }
        // Keep the sign change inside [lo, hi].
        if (fm > 0.0) == falling {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Adaptive Simpson quadrature of `f` over [a, b] to absolute tolerance `tol`.
///
/// Classic bisection-refinement with the 1/15 Richardson error estimate.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        // Second condition: the correction has dropped to local roundoff,
        // so further splitting cannot improve the estimate (this matters
        // when the requested tolerance is far below |integral|·ε).
        if depth == 0
            || delta.abs() <= 15.0 * tol
            || delta.abs() <= 4.0 * f64::EPSILON * (left.abs() + right.abs())
        {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Richardson-extrapolated central difference: combines steps h and h/2 to
/// cancel the leading O(h²) error, leaving O(h⁴).
///
/// A sensible step for derivatives in τ is `h = max(10⁻⁵·τ, 10⁻⁷)`.
pub fn richardson_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let central = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * central(0.5 * h) - central(h)) / 3.0
}
