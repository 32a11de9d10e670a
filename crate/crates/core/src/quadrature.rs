//! Double-exponential (tanh-sinh) quadrature on subintervals of `[0, 1]`.
//!
//! Each panel `[a, b]` is integrated with the substitution
//! `p = c + r·tanh(π/2·sinh t)`, which clusters nodes doubly-exponentially
//! toward both endpoints. Levels halve the step in `t` until two successive
//! estimates agree; a panel that fails to settle is bisected. Nodes are
//! never placed on an endpoint and never closer to one than `1e-300`.
//!
//! Integrands receive both `p` and its complement `q = 1 − p`. Near `p = 1`
//! the complement is computed from the node's distance to the endpoint, so
//! integrands that blow up at 1 (heavy-tailed quantile functions) can be
//! evaluated without the cancellation in `1.0 - p`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_EVALS: usize = 1_000_000;

/// Absolute accuracy floor below which values are treated as converged.
pub const ABS_FLOOR: f64 = 1e-14;

const T_MAX: f64 = 6.5;
const MIN_LEVEL: u32 = 3;
const MAX_LEVEL: u32 = 8;
const MAX_DEPTH: u32 = 40;
const MIN_OFFSET: f64 = 1e-300;

/// Window near zero whose mass must be negligible for an integrable
/// endpoint singularity.
const ZERO_PROBE: f64 = 1e-200;
/// Window near one probed for integrands flagged as vanishing there.
const ONE_PROBE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            max_evals: DEFAULT_MAX_EVALS,
        }
    }
}

impl QuadConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error(
        "quadrature failure: no convergence after {evaluations} evaluations \
         (partial value {partial}, error estimate {error_estimate:e})"
    )]
    NoConvergence {
        partial: f64,
        error_estimate: f64,
        evaluations: usize,
    },
    #[error("integrand error: non-finite value {value} at p = {p}")]
    Integrand { p: f64, value: f64 },
    #[error("divergent integral: mass {tail:e} concentrated within {window:e} of p = {endpoint}")]
    Divergent {
        endpoint: f64,
        window: f64,
        tail: f64,
    },
    #[error("invalid integration interval [{lo}, {hi}]: need 0 <= lo < hi <= 1")]
    Interval { lo: f64, hi: f64 },
    #[error("relative tolerance must be positive and finite, got {0}")]
    Tolerance(f64),
}

/// Endpoint behaviour the caller asserts about an integrand. Each flag turns
/// on a probe that rejects the integral as divergent when the asserted
/// behaviour does not hold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Hints {
    /// At worst logarithmic (integrable) growth as `p → 0`.
    pub log_singular_at_zero: bool,
    /// Bounded, typically tending to zero, as `p → 1`.
    pub vanishing_at_one: bool,
}

pub trait Integrand {
    /// Evaluates at `p`, with `q = 1 − p` supplied accurately.
    fn eval(&self, p: f64, q: f64) -> f64;

    fn hints(&self) -> Hints {
        Hints::default()
    }
}

impl<F: Fn(f64) -> f64> Integrand for F {
    fn eval(&self, p: f64, _q: f64) -> f64 {
        self(p)
    }
}

/// Adapter for integrands that need the complement `q = 1 − p`.
pub struct Complemented<F>(pub F);

impl<F: Fn(f64, f64) -> f64> Integrand for Complemented<F> {
    fn eval(&self, p: f64, q: f64) -> f64 {
        (self.0)(p, q)
    }
}

pub struct Hinted<I> {
    inner: I,
    hints: Hints,
}

impl<I: Integrand> Hinted<I> {
    pub fn new(inner: I, hints: Hints) -> Self {
        Self { inner, hints }
    }
}

impl<I: Integrand> Integrand for Hinted<I> {
    fn eval(&self, p: f64, q: f64) -> f64 {
        self.inner.eval(p, q)
    }

    fn hints(&self) -> Hints {
        self.hints
    }
}

/// Integrates `f` over `[lo, hi] ⊆ [0, 1]`.
pub fn integrate<I: Integrand + ?Sized>(
    f: &I,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    if !(0.0..1.0).contains(&lo) || !(lo < hi && hi <= 1.0) {
        return Err(QuadError::Interval { lo, hi });
    }
    if !(cfg.rel_tol > 0.0 && cfg.rel_tol.is_finite()) {
        return Err(QuadError::Tolerance(cfg.rel_tol));
    }

    let mut run = Run {
        f,
        cfg,
        evaluations: 0,
    };
    let outcome = run.adaptive(lo, hi, ABS_FLOOR, 0)?;

    // Probes run even when the main pass failed, so a divergent integral is
    // reported as such rather than as a convergence failure.
    let hints = f.hints();
    let magnitude = if outcome.value.is_finite() {
        outcome.value.abs()
    } else {
        0.0
    };
    if hints.log_singular_at_zero && lo == 0.0 {
        let window = ZERO_PROBE.min(hi);
        let tail = run.panel(0.0, window, 0.0).value;
        if tail.abs() > magnitude * cfg.rel_tol + ABS_FLOOR {
            return Err(QuadError::Divergent {
                endpoint: 0.0,
                window,
                tail,
            });
        }
    }
    if hints.vanishing_at_one && hi == 1.0 {
        let window = ONE_PROBE.min(1.0 - lo);
        let tail = run.panel(1.0 - window, 1.0, 0.0).value;
        if tail.abs() > magnitude.max(1.0) * 1e-9 {
            return Err(QuadError::Divergent {
                endpoint: 1.0,
                window,
                tail,
            });
        }
    }
    if !outcome.converged {
        return Err(QuadError::NoConvergence {
            partial: outcome.value,
            error_estimate: outcome.error,
            evaluations: run.evaluations,
        });
    }
    Ok(QuadResult {
        value: outcome.value,
        error_estimate: outcome.error,
        evaluations: run.evaluations,
    })
}

/// Integrates over `(0, 1)` for integrands with an integrable singularity at
/// zero, rejecting integrals whose mass does not vanish near the endpoint.
pub fn integrate_improper_at_zero<I: Integrand>(
    f: I,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    let hints = Hints {
        log_singular_at_zero: true,
        ..f.hints()
    };
    integrate(&Hinted::new(f, hints), 0.0, 1.0, cfg)
}

/// Integrates over consecutive panels given by sorted `breaks` (first 0 or
/// more, last at most 1), summing values, error estimates, and evaluations.
/// Used for piecewise integrands whose kinks sit on known points.
pub fn integrate_piecewise<I: Integrand + ?Sized>(
    f: &I,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    let mut total = QuadResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
    };
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let part = integrate(f, w[0], w[1], cfg)?;
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.evaluations += part.evaluations;
    }
    if total.evaluations == 0 {
        return Err(QuadError::Interval {
            lo: breaks.first().copied().unwrap_or(f64::NAN),
            hi: breaks.last().copied().unwrap_or(f64::NAN),
        });
    }
    Ok(total)
}

struct Outcome {
    value: f64,
    error: f64,
    converged: bool,
}

struct Run<'a, I: ?Sized> {
    f: &'a I,
    cfg: &'a QuadConfig,
    evaluations: usize,
}

impl<I: Integrand + ?Sized> Run<'_, I> {
    fn adaptive(&mut self, a: f64, b: f64, abs_tol: f64, depth: u32) -> Result<Outcome, QuadError> {
        let out = self.checked_panel(a, b, abs_tol)?;
        if out.converged || depth >= MAX_DEPTH || self.evaluations >= self.cfg.max_evals {
            return Ok(out);
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Ok(out);
        }
        let sub_tol = (self.cfg.rel_tol * out.value.abs()).max(abs_tol) * 0.5;
        let left = self.adaptive(a, mid, sub_tol, depth + 1)?;
        let right = self.adaptive(mid, b, sub_tol, depth + 1)?;
        Ok(Outcome {
            value: left.value + right.value,
            error: left.error + right.error,
            converged: left.converged && right.converged,
        })
    }

    fn checked_panel(&mut self, a: f64, b: f64, abs_tol: f64) -> Result<Outcome, QuadError> {
        let mut bad = None;
        let out = self.panel_inner(a, b, abs_tol, &mut bad);
        match bad {
            Some((p, value)) => Err(QuadError::Integrand { p, value }),
            None => Ok(out),
        }
    }

    /// Panel estimate ignoring non-finite samples; used for tail probes.
    fn panel(&mut self, a: f64, b: f64, abs_tol: f64) -> Outcome {
        let mut bad = None;
        let out = self.panel_inner(a, b, abs_tol, &mut bad);
        match bad {
            Some(_) => Outcome {
                value: f64::INFINITY,
                error: f64::INFINITY,
                converged: false,
            },
            None => out,
        }
    }

    fn panel_inner(
        &mut self,
        a: f64,
        b: f64,
        abs_tol: f64,
        bad: &mut Option<(f64, f64)>,
    ) -> Outcome {
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        // Complements of the panel ends; exact for b >= 0.5 by Sterbenz.
        let qa = 1.0 - a;
        let qb = 1.0 - b;

        let mut sum = FRAC_PI_2 * self.sample(c, 1.0 - c, bad);
        let mut h = 1.0;
        let mut estimate = r * h * sum;
        let mut error = f64::INFINITY;

        for level in 0..=MAX_LEVEL {
            let (start, stride) = if level == 0 { (1.0, 1.0) } else { (h, 2.0 * h) };
            let mut t = start;
            while t <= T_MAX {
                let u = FRAC_PI_2 * t.sinh();
                let e = (-2.0 * u).exp();
                // 1 - tanh(u) and the Jacobian of the substitution.
                let delta = 2.0 * e / (1.0 + e);
                let weight = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
                let d = r * delta;
                if d < MIN_OFFSET || weight == 0.0 {
                    break;
                }
                let mut pl = a + d;
                if pl <= a {
                    pl = a.next_up();
                }
                let mut pr = b - d;
                if pr >= b {
                    pr = b.next_down();
                }
                let fl = self.sample(pl, qa - d, bad);
                let fr = self.sample(pr, qb + d, bad);
                sum += weight * (fl + fr);
                if bad.is_some() {
                    return Outcome {
                        value: f64::NAN,
                        error: f64::INFINITY,
                        converged: false,
                    };
                }
                t += stride;
            }
            let next = r * h * sum;
            if level > 0 {
                error = (next - estimate).abs();
            }
            estimate = next;
            if level >= MIN_LEVEL && error <= (self.cfg.rel_tol * estimate.abs()).max(abs_tol) {
                return Outcome {
                    value: estimate,
                    error,
                    converged: true,
                };
            }
            if self.evaluations >= self.cfg.max_evals {
                break;
            }
            h *= 0.5;
        }
        Outcome {
            value: estimate,
            error,
            converged: false,
        }
    }

    fn sample(&mut self, p: f64, q: f64, bad: &mut Option<(f64, f64)>) -> f64 {
        self.evaluations += 1;
        let v = self.f.eval(p, q);
        if v.is_finite() {
            v
        } else {
            if bad.is_none() {
                *bad = Some((p, v));
            }
            0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn constant_integrand() {
        let r = integrate(&|_p: f64| 1.0, 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        assert!(r.error_estimate >= 0.0);
        assert!(r.evaluations > 0);
    }

    #[test]
    fn log_singularity() {
        let r = integrate(&|p: f64| -p.ln(), 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate_improper_at_zero(|p: f64| -p.ln(), &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gini_weight_integrates_to_one() {
        let r = integrate(&|p: f64| 2.0 * (1.0 - p), 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn inverse_sqrt() {
        let r = integrate_improper_at_zero(|p: f64| 1.0 / p.sqrt(), &cfg()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn zenga_rank_weight() {
        // The textbook form cancels catastrophically near 1; use q directly.
        let f = Complemented(|p: f64, q: f64| {
            if q < 1e-3 {
                (2..=12).rev().fold(0.0, |acc, k| acc * q + 1.0 / k as f64)
            } else {
                (-p.ln() - q) / (q * q)
            }
        });
        let r = integrate_improper_at_zero(f, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn complement_resolves_singularity_at_one() {
        // ∫ (1-p)^(-1/2) dp = 2; needs nodes closer to 1 than 1 ulp.
        let f = Complemented(|_p: f64, q: f64| q.powf(-0.5));
        let r = integrate(&f, 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn divergent_at_zero() {
        let err = integrate_improper_at_zero(|p: f64| 1.0 / p, &cfg()).unwrap_err();
        assert!(matches!(err, QuadError::Divergent { endpoint, .. } if endpoint == 0.0));
    }

    #[test]
    fn divergent_at_one() {
        let f = Hinted::new(
            Complemented(|_p: f64, q: f64| 1.0 / q),
            Hints {
                vanishing_at_one: true,
                ..Hints::default()
            },
        );
        let err = integrate(&f, 0.0, 1.0, &cfg()).unwrap_err();
        assert!(matches!(err, QuadError::Divergent { .. }), "{err:?}");
    }

    #[test]
    fn nan_integrand() {
        let err = integrate(
            &|p: f64| if p > 0.3 && p < 0.7 { f64::NAN } else { p },
            0.0,
            1.0,
            &cfg(),
        )
        .unwrap_err();
        assert!(matches!(err, QuadError::Integrand { .. }));
    }

    #[test]
    fn budget_exhaustion() {
        let tight = QuadConfig {
            rel_tol: 1e-15,
            max_evals: 200,
        };
        let err = integrate(&|p: f64| (40.0 * p).sin().abs(), 0.0, 1.0, &tight).unwrap_err();
        assert!(matches!(err, QuadError::NoConvergence { partial, .. } if partial.is_finite()));
    }

    #[test]
    fn kink_is_resolved_by_bisection() {
        let f = |p: f64| (p - 0.3).abs();
        let exact = 0.5 * (0.3f64 * 0.3 + 0.7 * 0.7);
        let r = integrate(&f, 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - exact).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(matches!(
            integrate(&|p: f64| p, 0.5, 0.5, &cfg()),
            Err(QuadError::Interval { .. })
        ));
        assert!(matches!(
            integrate(&|p: f64| p, -0.1, 0.5, &cfg()),
            Err(QuadError::Interval { .. })
        ));
        assert!(matches!(
            integrate(&|p: f64| p, 0.0, 1.0, &QuadConfig::with_rel_tol(0.0)),
            Err(QuadError::Tolerance(_))
        ));
    }

    #[test]
    fn piecewise_sums_panels() {
        let r = integrate_piecewise(&|p: f64| p, &[0.0, 0.25, 0.5, 1.0], &cfg()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn never_touches_endpoints() {
        let f = |p: f64| {
            assert!(p > 0.0 && p < 1.0, "evaluated at {p}");
            1.0
        };
        integrate(&f, 0.0, 1.0, &cfg()).unwrap();
    }
}
