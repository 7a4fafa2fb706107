//! Quantitative bounds relating teaching complexity to VC dimension.
//!
//! The chain of inequalities is:
//!
//! * a class that is an `(x+1, z)`-class has a restriction on
//!   `k = ceil(((y+1)(x-1)+1) / (2y-z+2))` instances which is an `(x, y)`-class,
//!   so `TD_min` grows by at most `k` per step ([`recursion_increment`]);
//! * with `y = floor(alpha^x)` the increments telescope into a quadratic in `x`
//!   ([`quadratic_td_min_bound`]);
//! * by the Sauer-Shelah lemma a class of VC dimension `d` is an
//!   `(x, floor(alpha^x))`-class once `x >= lambda*(alpha) * d` ([`lambda_star`], [`xy_threshold`]);
//! * since removing concepts never raises the VC dimension, the same quadratic
//!   bounds the recursive teaching dimension ([`rtd_upper_bound`]).
//!
//! [`constructive_teaching_set`] executes the restriction argument on a concrete class.

mod constructive;
mod restriction;

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};

pub use constructive::{constructive_teaching_set, Construction};
pub use restriction::{find_min_restriction, find_min_restriction_within, Restriction};

/// Default scaling factor between VC dimension and chain start.
pub const DEFAULT_LAMBDA_STAR: f64 = 4.71607;

/// Bisection tolerance for [`lambda_star`].
pub const LAMBDA_TOL: f64 = 1e-9;

/// Upper end of the bracket searched by [`lambda_star`].
pub const LAMBDA_CEILING: f64 = 200.0;

/// Published leading and linear coefficients of the default-path bound.
pub const RTD_BOUND_QUADRATIC: f64 = 39.3752;
pub const RTD_BOUND_LINEAR: f64 = -3.6330;

/// `alpha = (e * lambda)^(1/lambda)`, the base for which `lambda` is exactly the threshold.
pub fn alpha_for_lambda(lambda: f64) -> f64 {
    (E * lambda).powf(1.0 / lambda)
}

/// The default base, `(e * 4.71607)^(1/4.71607) ≈ 1.717571`.
pub fn default_alpha() -> f64 {
    alpha_for_lambda(DEFAULT_LAMBDA_STAR)
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "alpha = {alpha} must lie strictly between 1 and 2"
        )))
    }
}

/// `ceil(((y+1)(x-1)+1) / (2y-z+2))`, the number of instances one restriction
/// step fixes when passing from an `(x+1, z)`-class to an `(x, y)`-class.
pub fn recursion_increment(x: u64, y: u64, z: u64) -> Result<u64> {
    if x == 0 || y == 0 || z == 0 {
        return Err(Error::Parameter(format!(
            "x, y, z must be positive (got {x}, {y}, {z})"
        )));
    }
    if x < 64 && y > (1u64 << x) - 1 {
        return Err(Error::Parameter(format!(
            "y = {y} exceeds 2^x - 1 for x = {x}"
        )));
    }
    let (x, y, z) = (x as u128, y as u128, z as u128);
    if z > 2 * y + 1 {
        return Err(Error::Parameter(format!(
            "z = {z} exceeds 2y + 1 = {}",
            2 * y + 1
        )));
    }
    let numerator = (y + 1) * (x - 1) + 1;
    let denominator = 2 * y + 2 - z;
    Ok(numerator.div_ceil(denominator) as u64)
}

/// `(x-1)^2/(4-2α) + (3-2α)/(4-2α)·(x-1)`: the bound on `TD_min` of every
/// `(x, floor(α^x))`-class.
pub fn quadratic_td_min_bound(x: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if x == 0 {
        return Err(Error::Parameter("x must be at least 1".into()));
    }
    let u = (x - 1) as f64;
    let denom = 4.0 - 2.0 * alpha;
    Ok(u * u / denom + (3.0 - 2.0 * alpha) / denom * u)
}

/// The smallest `λ >= 1` with `λ ln α - ln λ - 1 >= 0`, to within `tol`.
///
/// The left-hand side is convex and negative at `λ = 1`, so the admissible
/// set is a half-line; bisection returns a point of it within `tol` of its start.
pub fn lambda_star(alpha: f64, tol: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parameter(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let ln_alpha = alpha.ln();
    let g = |lambda: f64| lambda * ln_alpha - lambda.ln() - 1.0;
    let mut lo = 1.0;
    let mut hi = 2.0;
    while g(hi) < 0.0 {
        if hi >= LAMBDA_CEILING {
            return Err(Error::Convergence(format!(
                "no threshold below {LAMBDA_CEILING} for alpha = {alpha}"
            )));
        }
        lo = hi;
        hi = (hi * 2.0).min(LAMBDA_CEILING);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Smallest integer `x >= λ*(α)·d`; every class of VC dimension `d` is an
/// `(x, floor(α^x))`-class.
pub fn xy_threshold(d: usize, alpha: f64) -> Result<usize> {
    if d == 0 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    let lambda = lambda_star(alpha, LAMBDA_TOL)?;
    let x = (lambda * d as f64).ceil() as usize;
    // (e x / d)^d <= α^x, compared in log space.
    let lhs = d as f64 * (1.0 + (x as f64 / d as f64).ln());
    let rhs = x as f64 * alpha.ln();
    if lhs > rhs + 1e-9 {
        return Err(Error::Internal(format!(
            "threshold x = {x} fails (e x/d)^d <= alpha^x for d = {d}, alpha = {alpha}"
        )));
    }
    Ok(x)
}

/// `floor(α^x)` as an integer.
pub fn floor_power(alpha: f64, x: usize) -> Result<u64> {
    let v = alpha.powi(x as i32);
    if !v.is_finite() || v >= 9.0e18 {
        return Err(Error::Capacity(format!(
            "alpha^{x} = {v} does not fit a 64-bit count"
        )));
    }
    Ok(v.floor() as u64)
}

/// Parameters of the quadratic bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub alpha: f64,
    pub lambda_star: f64,
    pub d: usize,
    pub x: usize,
}

impl BoundParams {
    /// Parameters for base `alpha`, starting the chain at the threshold.
    pub fn for_alpha(d: usize, alpha: f64) -> Result<Self> {
        let lambda_star = lambda_star(alpha, LAMBDA_TOL)?;
        let x = xy_threshold(d, alpha)?;
        Ok(BoundParams {
            alpha,
            lambda_star,
            d,
            x,
        })
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.lambda_star < 1.0 {
            return Err(Error::Parameter(format!(
                "lambda* = {} is below 1",
                self.lambda_star
            )));
        }
        let slack = self.lambda_star * self.alpha.ln() - self.lambda_star.ln() - 1.0;
        if slack < -1e-6 {
            return Err(Error::Parameter(format!(
                "lambda* = {} does not satisfy the threshold condition for alpha = {} (residual {slack:.3e})",
                self.lambda_star, self.alpha
            )));
        }
        if (self.x as f64) < self.lambda_star * self.d as f64 - 1e-9 {
            return Err(Error::Parameter(format!(
                "x = {} is below lambda* * d = {}",
                self.x,
                self.lambda_star * self.d as f64
            )));
        }
        Ok(())
    }
}

/// Upper bound on the recursive teaching dimension of any class of VC dimension `d`.
///
/// Without parameters this is `(λ*d)^2/(4-2α) + (3-2α)/(4-2α)·λ*d` with the
/// default `λ*` and `α`. With explicit parameters it is the quadratic
/// `TD_min` bound evaluated at `params.x`.
pub fn rtd_upper_bound(d: usize, params: Option<&BoundParams>) -> Result<f64> {
    if d == 0 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    match params {
        None => {
            let alpha = default_alpha();
            let t = DEFAULT_LAMBDA_STAR * d as f64;
            let denom = 4.0 - 2.0 * alpha;
            Ok(t * t / denom + (3.0 - 2.0 * alpha) / denom * t)
        }
        Some(p) => {
            p.validate()?;
            if p.d != d {
                return Err(Error::Parameter(format!(
                    "params are for d = {}, not {d}",
                    p.d
                )));
            }
            quadratic_td_min_bound(p.x, p.alpha)
        }
    }
}

/// `sum_{k<=d} C(m, k)`: the most patterns a class of VC dimension `d` can
/// realize on `m` instances.
pub fn sauer_bound(m: usize, d: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for k in 0..=d.min(m) {
        total += binom;
        binom = binom * (m - k) as u128 / (k + 1) as u128;
    }
    total
}

/// The closed form `(e m / d)^d`.
pub fn sauer_exp_bound(m: usize, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::Parameter("closed form needs d >= 1".into()));
    }
    Ok((E * m as f64 / d as f64).powi(d as i32))
}

/// One descent step from an `(x, y)`-class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainStep {
    /// Projection size of the class entering the step.
    pub x: usize,
    /// `floor(α^x)`.
    pub y: u64,
    /// Increment for this step.
    pub k: u64,
    /// Instances actually fixed, `min(k, free instances)`; only for concrete descents.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub added: Option<usize>,
    /// Size of the chosen restriction; only for concrete descents.
    pub restriction_size: Option<usize>,
}

/// Evaluated bound chain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub d: usize,
    pub alpha: f64,
    pub lambda_star: f64,
    pub x_start: usize,
    pub chain: Vec<ChainStep>,
    /// Quadratic `TD_min` bound at `x_start`.
    pub f_bound: f64,
    pub ts_size: Option<usize>,
    pub rtd_bound: f64,
}

impl BoundReport {
    pub fn k_values(&self) -> Vec<u64> {
        self.chain.iter().map(|s| s.k).collect()
    }
}

/// The symbolic chain from the threshold down to `x = 2` for VC dimension `d`.
///
/// `alpha = None` selects the default parameters and the default-path bound.
pub fn bound_report(d: usize, alpha: Option<f64>) -> Result<BoundReport> {
    let a = alpha.unwrap_or_else(default_alpha);
    let params = BoundParams::for_alpha(d, a)?;
    let mut chain = Vec::new();
    for x in (2..=params.x).rev() {
        let y = floor_power(a, x)?;
        let k = recursion_increment((x - 1) as u64, floor_power(a, x - 1)?, y)?;
        chain.push(ChainStep {
            x,
            y,
            k,
            added: None,
            restriction_size: None,
        });
    }
    let rtd_bound = match alpha {
        None => rtd_upper_bound(d, None)?,
        Some(_) => rtd_upper_bound(d, Some(&params))?,
    };
    Ok(BoundReport {
        d,
        alpha: a,
        lambda_star: params.lambda_star,
        x_start: params.x,
        chain,
        f_bound: quadratic_td_min_bound(params.x, a)?,
        ts_size: None,
        rtd_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROUNDED_ALPHA: f64 = 1.71757;

    #[test]
    fn increment_examples() {
        assert_eq!(recursion_increment(2, 3, 5).unwrap(), 2);
        assert_eq!(recursion_increment(1, 1, 2).unwrap(), 1);
        assert_eq!(recursion_increment(3, 6, 12).unwrap(), 8);
    }

    #[test]
    fn increment_preconditions() {
        assert!(matches!(
            recursion_increment(2, 4, 5),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            recursion_increment(2, 3, 8),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            recursion_increment(0, 1, 1),
            Err(Error::Parameter(_))
        ));
        // z = 2y + 1 gives denominator 1.
        assert_eq!(recursion_increment(3, 7, 15).unwrap(), 8 * 2 + 1);
    }

    #[test]
    fn quadratic_bound_examples() {
        for a in [1.1, 1.5, ROUNDED_ALPHA, 1.9] {
            assert_eq!(quadratic_td_min_bound(1, a).unwrap(), 0.0);
        }
        assert!((quadratic_td_min_bound(2, 1.5).unwrap() - 1.0).abs() < 1e-12);
        // Direct evaluation: 25/0.56486 - (0.43514/0.56486)*5.
        assert!((quadratic_td_min_bound(6, ROUNDED_ALPHA).unwrap() - 40.407003505).abs() < 1e-6);
        assert!(quadratic_td_min_bound(3, 2.0).is_err());
        assert!(quadratic_td_min_bound(0, 1.5).is_err());
    }

    #[test]
    fn lambda_star_examples() {
        let l = lambda_star(ROUNDED_ALPHA, LAMBDA_TOL).unwrap();
        assert!((l - 4.71607).abs() < 1e-3);
        let l = lambda_star(default_alpha(), LAMBDA_TOL).unwrap();
        assert!((l - DEFAULT_LAMBDA_STAR).abs() < 1e-6);
        // Grid-scan oracle at step 1e-6: first grid point with g >= 0 is 3.517583.
        let l = lambda_star(1.9, LAMBDA_TOL).unwrap();
        assert!((l - 3.517583).abs() < 2e-6, "{l}");
        assert!(matches!(
            lambda_star(1.0001, LAMBDA_TOL),
            Err(Error::Convergence(_))
        ));
        assert!(matches!(
            lambda_star(2.5, LAMBDA_TOL),
            Err(Error::Parameter(_))
        ));
        assert!(lambda_star(1.5, 0.0).is_err());
    }

    #[test]
    fn lambda_star_brackets_the_root() {
        for a in [1.1, 1.3, 1.5, ROUNDED_ALPHA, 1.9, 1.99] {
            let tol = LAMBDA_TOL;
            let l = lambda_star(a, tol).unwrap();
            let g = |x: f64| x * a.ln() - x.ln() - 1.0;
            assert!(
                g(l) >= -tol && g(l) <= 10.0 * tol,
                "alpha {a}: g = {}",
                g(l)
            );
            assert!(g(l - 10.0 * tol) < 0.0);
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(xy_threshold(1, ROUNDED_ALPHA).unwrap(), 5);
        assert_eq!(xy_threshold(2, ROUNDED_ALPHA).unwrap(), 10);
        assert_eq!(xy_threshold(3, 1.9).unwrap(), 11);
        assert!(xy_threshold(0, 1.5).is_err());
    }

    #[test]
    fn threshold_is_sound_past_the_start() {
        for a in [1.1, 1.5, ROUNDED_ALPHA, 1.9] {
            for d in 1..=12 {
                let x0 = xy_threshold(d, a).unwrap();
                for x in x0..x0 + 6 {
                    let lhs = d as f64 * (1.0 + (x as f64 / d as f64).ln());
                    assert!(lhs <= x as f64 * a.ln() + 1e-9, "a {a} d {d} x {x}");
                }
            }
        }
    }

    #[test]
    fn default_bound_matches_published_constants() {
        let a = default_alpha();
        let l = DEFAULT_LAMBDA_STAR;
        assert!((l * l / (4.0 - 2.0 * a) - RTD_BOUND_QUADRATIC).abs() < 1e-3);
        assert!(((3.0 - 2.0 * a) / (4.0 - 2.0 * a) * l - RTD_BOUND_LINEAR).abs() < 1e-3);
        assert!((rtd_upper_bound(1, None).unwrap() - 35.7422).abs() < 1e-3);
        assert!((rtd_upper_bound(2, None).unwrap() - 150.2348).abs() < 1e-2);
        for d in 1..=20 {
            let published = RTD_BOUND_QUADRATIC * (d * d) as f64 + RTD_BOUND_LINEAR * d as f64;
            let diff = (rtd_upper_bound(d, None).unwrap() - published).abs();
            assert!(diff <= 1e-3 * (d * d) as f64, "d {d}: {diff}");
        }
    }

    #[test]
    fn explicit_params_path() {
        let p = BoundParams::for_alpha(2, 1.9).unwrap();
        assert_eq!(p.x, xy_threshold(2, 1.9).unwrap());
        let v = rtd_upper_bound(2, Some(&p)).unwrap();
        assert_eq!(v, quadratic_td_min_bound(p.x, 1.9).unwrap());
        let mut bad = p;
        bad.x = 1;
        assert!(matches!(
            rtd_upper_bound(2, Some(&bad)),
            Err(Error::Parameter(_))
        ));
        let mut bad = p;
        bad.lambda_star = 2.0;
        assert!(rtd_upper_bound(2, Some(&bad)).is_err());
        assert!(rtd_upper_bound(3, Some(&p)).is_err());
        assert!(rtd_upper_bound(0, None).is_err());
    }

    #[test]
    fn explicit_bound_is_monotone_in_x() {
        for a in [1.5, ROUNDED_ALPHA, 1.9] {
            let mut p = BoundParams::for_alpha(1, a).unwrap();
            let mut prev = rtd_upper_bound(1, Some(&p)).unwrap();
            for x in p.x + 1..p.x + 50 {
                p.x = x;
                let v = rtd_upper_bound(1, Some(&p)).unwrap();
                assert!(v >= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn telescoping_step() {
        for a in [1.1, 1.5, ROUNDED_ALPHA, 1.9] {
            for x in 1..=100 {
                let step = quadratic_td_min_bound(x + 1, a).unwrap()
                    - quadratic_td_min_bound(x, a).unwrap();
                assert!(step <= (x as f64 + 1.0 - a) / (2.0 - a) + 1e-9);
            }
        }
    }

    // Each concrete increment is dominated by the real-valued step it telescopes into.
    #[test]
    fn increments_below_real_step() {
        for a in [1.1, 1.5, ROUNDED_ALPHA, 1.9] {
            for x in 1..=40 {
                let y = floor_power(a, x).unwrap();
                let z = floor_power(a, x + 1).unwrap();
                let k = recursion_increment(x as u64, y, z).unwrap() as f64;
                assert!(k <= (x as f64 + 1.0 - a) / (2.0 - a) + 1e-9, "a {a} x {x}");
            }
        }
    }

    #[test]
    fn sauer_examples() {
        assert_eq!(sauer_bound(3, 1), 4);
        for m in 1..=10 {
            assert_eq!(sauer_bound(m, m), 1u128 << m);
            assert_eq!(sauer_bound(m, m + 3), 1u128 << m);
        }
        assert_eq!(sauer_bound(10, 3), 176);
        assert!((sauer_exp_bound(10, 3).unwrap() - 743.9087749).abs() < 1e-6);
        for d in 1..6 {
            for m in d + 1..30 {
                assert!(sauer_bound(m, d) as f64 <= sauer_exp_bound(m, d).unwrap());
            }
        }
        assert!(sauer_exp_bound(4, 0).is_err());
    }

    #[test]
    fn report_chain_shape() {
        let r = bound_report(1, None).unwrap();
        assert_eq!(r.x_start, 5);
        assert_eq!(r.chain.len(), 4);
        assert_eq!(r.chain[0].x, 5);
        assert!((r.rtd_bound - 35.7422).abs() < 1e-3);
        assert!(r.rtd_bound >= r.f_bound && r.f_bound >= 0.0);
        // x = 2: y = floor(α^2) = 2, step from (1, 1) gives k = 1.
        assert_eq!(r.chain.last().unwrap().k, 1);
        assert!(r.chain.windows(2).all(|w| w[0].y >= w[1].y));
        let sum: u64 = r.k_values().iter().sum();
        assert!(sum as f64 <= r.f_bound + 1e-9);
    }
}
