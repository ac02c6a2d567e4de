//! Closed-form upper bounds on the probability that a fixed edge ends up red,
//! and on the failure probability of random greedy coloring.
//!
//! Every bound is accumulated in log space and reported as a [`BoundValue`]
//! carrying both the natural log and the value, so edge sizes far beyond the
//! range of `2^-s` in doubles are still representable.

use std::f64::consts::LN_2;

use num_traits::Num;
use serde::Serialize;

use crate::error::DomainError;
use crate::events::AlphaParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    /// Natural logarithm of the value; `-inf` for zero.
    pub log: f64,
    pub value: f64,
}

impl BoundValue {
    pub fn from_log(log: f64) -> Self {
        Self { log, value: log.exp() }
    }

    pub fn zero() -> Self {
        Self { log: f64::NEG_INFINITY, value: 0.0 }
    }
}

/// `ln(e^a + e^b)` without overflow.
fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(e^x - 1)` for `x >= 0`.
fn log_expm1(x: f64) -> f64 {
    if x > 30.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

/// `ln(cosh(t) - 1) = ln 2 + 2 ln sinh(t/2)` for `t >= 0`.
fn log_cosh_m1(t: f64) -> f64 {
    let u = t / 2.0;
    let log_sinh = if u > 20.0 { u - LN_2 + (-(-2.0 * u).exp()).ln_1p() } else { u.sinh().ln() };
    LN_2 + 2.0 * log_sinh
}

/// Convexity envelope `lambda * f(M) + (1 - lambda) * f(0)`.
///
/// For `0 <= X <= M` with `E[X] <= lambda M` and convex nonnegative `f` with
/// `f(M) >= f(0)`, this bounds `E[f(X)]`. Generic so it can be evaluated in
/// exact rational arithmetic.
pub fn convex_envelope<T>(f0: T, f_m: T, lambda: T) -> Result<T, DomainError>
where
    T: Num + PartialOrd + Clone,
{
    if lambda < T::zero() || lambda > T::one() {
        return Err(DomainError("lambda must lie in [0, 1]".into()));
    }
    if f0 < T::zero() {
        return Err(DomainError("f(0) must be nonnegative".into()));
    }
    if f_m < f0 {
        return Err(DomainError("f(M) must be at least f(0)".into()));
    }
    Ok(lambda.clone() * f_m + (T::one() - lambda) * f0)
}

/// Truncated series and its exponential relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalBound {
    pub truncated: BoundValue,
    pub exponential: BoundValue,
}

/// Number of series terms to use when driven by `alpha_a * q`.
pub fn series_cap(alpha_a: f64, q: f64) -> u64 {
    (alpha_a * q).ceil().max(1.0) as u64
}

/// `2^-s * sum_{c=1}^{cap} x^c / c!` and `2^-s * (e^x - 1)`.
pub fn simple_conditional_bound(x: f64, s: usize, cap: u64) -> Result<ConditionalBound, DomainError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(DomainError(format!("x must be finite and nonnegative, got {x}")));
    }
    if cap == 0 {
        return Err(DomainError("cap must be at least 1".into()));
    }
    if s < 2 {
        return Err(DomainError(format!("edge size must be at least 2, got {s}")));
    }
    if x == 0.0 {
        return Ok(ConditionalBound { truncated: BoundValue::zero(), exponential: BoundValue::zero() });
    }
    let log_scale = -(s as f64) * LN_2;
    let scale = (-(s as f64)).exp2();
    if x <= 700.0 && scale.is_normal() {
        // Ordinary range: rescale by an exact power of two. The min absorbs
        // the last-ulp rounding once the series has converged.
        let total = x.exp_m1();
        let sum = partial_exp_series(x, cap).min(total);
        return Ok(ConditionalBound {
            truncated: BoundValue { log: sum.ln() + log_scale, value: sum * scale },
            exponential: BoundValue { log: total.ln() + log_scale, value: total * scale },
        });
    }
    // A partial sum of a positive series never exceeds its limit; the min
    // only absorbs lgamma rounding once the series has converged.
    let log_exp = log_expm1(x);
    let log_sum = log_partial_exp_series(x, cap).min(log_exp);
    Ok(ConditionalBound {
        truncated: BoundValue::from_log(log_sum + log_scale),
        exponential: BoundValue::from_log(log_exp + log_scale),
    })
}

/// `sum_{c=1}^{cap} x^c / c!` for moderate `x`, with Neumaier compensation.
fn partial_exp_series(x: f64, cap: u64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut carry = 0.0;
    let mut c = 1u64;
    while c <= cap {
        term *= x / c as f64;
        let t = sum + term;
        carry += if sum >= term { (sum - t) + term } else { (term - t) + sum };
        sum = t;
        if c as f64 > x && term < sum * 1e-18 {
            break;
        }
        c += 1;
    }
    sum + carry
}

/// `ln(sum_{c=1}^{cap} x^c / c!)` for any `x > 0`, in log space.
fn log_partial_exp_series(x: f64, cap: u64) -> f64 {
    let log_x = x.ln();
    let mut acc = f64::NEG_INFINITY;
    let mut c = 1u64;
    while c <= cap {
        let log_term = c as f64 * log_x - libm::lgamma(c as f64 + 1.0);
        acc = log_add(acc, log_term);
        if c as f64 > x && log_term < acc - 42.0 {
            break;
        }
        c += 1;
    }
    acc
}

/// `2^-s * sum_{c=1}^{cap} z^(2c) / (2c)!` and `2^-s * (cosh(z) - 1)` with
/// `z = sqrt(2 alpha_d q y)`; the conditional bound given `Y_e = y`.
pub fn improved_conditional_bound(
    y: f64,
    q: f64,
    s: usize,
    alpha_d: f64,
    cap: u64,
) -> Result<ConditionalBound, DomainError> {
    if !(y >= 0.0) || !(q >= 0.0) || !(alpha_d > 0.0) {
        return Err(DomainError("y and q must be nonnegative and alpha_d positive".into()));
    }
    if cap == 0 || s < 2 {
        return Err(DomainError("cap must be at least 1 and s at least 2".into()));
    }
    let z = (2.0 * alpha_d * q * y).sqrt();
    if z == 0.0 {
        return Ok(ConditionalBound { truncated: BoundValue::zero(), exponential: BoundValue::zero() });
    }
    let log_scale = -(s as f64) * LN_2;
    let log_z = z.ln();
    let mut acc = f64::NEG_INFINITY;
    let mut c = 1u64;
    while c <= cap {
        let two_c = 2.0 * c as f64;
        let log_term = two_c * log_z - libm::lgamma(two_c + 1.0);
        acc = log_add(acc, log_term);
        if two_c > z && log_term < acc - 42.0 {
            break;
        }
        c += 1;
    }
    let log_cosh = log_cosh_m1(z);
    Ok(ConditionalBound {
        truncated: BoundValue::from_log(acc.min(log_cosh) + log_scale),
        exponential: BoundValue::from_log(log_cosh + log_scale),
    })
}

fn check_sizes(k: usize, s: usize) -> Result<(), DomainError> {
    if k < 2 {
        return Err(DomainError(format!("k must be at least 2, got {k}")));
    }
    if s < k {
        return Err(DomainError(format!("focal edge size {s} is below k = {k}")));
    }
    Ok(())
}

/// `2^-s * (alpha_b q)^(alpha_c q) / (alpha_c k)`: the unconditional bound
/// from the convexity envelope applied to `exp(X) - 1`.
pub fn simple_edge_bound(k: usize, q: f64, s: usize, alphas: &AlphaParams) -> Result<BoundValue, DomainError> {
    check_sizes(k, s)?;
    let log_bq = (alphas.b * q).ln();
    if !(log_bq > 0.0) {
        return Err(DomainError(format!("alpha_b * q = {} must exceed 1", alphas.b * q)));
    }
    let log = alphas.c * q * log_bq - (alphas.c * k as f64).ln() - s as f64 * LN_2;
    Ok(BoundValue::from_log(log))
}

/// Whether [`simple_edge_bound`] falls below `1 / (3 q 2^(s-1))`, i.e.
/// `3 q (alpha_b q)^(alpha_c q) / (2 alpha_c k) < 1`.
pub fn simple_regime_holds(k: usize, q: f64, alphas: &AlphaParams) -> Result<bool, DomainError> {
    let log_bq = (alphas.b * q).ln();
    if !(log_bq > 0.0) {
        return Err(DomainError(format!("alpha_b * q = {} must exceed 1", alphas.b * q)));
    }
    let log = (3.0 * q).ln() + alphas.c * q * log_bq - (2.0 * alphas.c * k as f64).ln();
    Ok(log < 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImprovedBound {
    /// `(cosh(sqrt(2 alpha_d alpha_c) q) - 1) / (alpha_c k 2^s)`.
    pub cosh_form: BoundValue,
    /// `exp(sqrt(2 alpha_d alpha_c) q) / (alpha_c k 2^s)`.
    pub exp_form: BoundValue,
    /// `0.9 ln(k) / sqrt(2 alpha_d alpha_c)`.
    pub q_threshold: f64,
    pub within_threshold: bool,
    /// `3 q exp(sqrt(2 alpha_d alpha_c) q) / (2 alpha_c k) <= 1`, i.e. the
    /// exp form is at most `1 / (3 q 2^(s-1))`.
    pub target_met: bool,
}

pub fn improved_edge_bound(k: usize, q: f64, s: usize, alphas: &AlphaParams) -> Result<ImprovedBound, DomainError> {
    check_sizes(k, s)?;
    if !(q >= 0.0) {
        return Err(DomainError(format!("q must be nonnegative, got {q}")));
    }
    let rate = (2.0 * alphas.d * alphas.c).sqrt();
    let t = rate * q;
    let log_prefix = -(alphas.c * k as f64).ln() - s as f64 * LN_2;
    let cosh_form = if t == 0.0 { BoundValue::zero() } else { BoundValue::from_log(log_cosh_m1(t) + log_prefix) };
    let exp_form = BoundValue::from_log(t + log_prefix);
    let q_threshold = 0.9 * (k as f64).ln() / rate;
    let target_met = q == 0.0 || (3.0 * q).ln() + t - (2.0 * alphas.c * k as f64).ln() <= 0.0;
    Ok(ImprovedBound { cosh_form, exp_form, q_threshold, within_threshold: q <= q_threshold, target_met })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GreedyBound {
    pub p: f64,
    /// `p (1+p)^(K-k) q^2`: conflicting pairs near the middle weight.
    pub conflict_term: BoundValue,
    /// `2 (1-p)^k q`: light or heavy edges.
    pub extreme_term: BoundValue,
    pub total: BoundValue,
}

/// Failure bound `p (1+p)^(K-k) q^2 + 2 (1-p)^k q` for random greedy
/// coloring with `p = ln(4q)/k` clamped to [0, 1].
pub fn greedy_failure_bound(k: usize, big_k: usize, q: f64) -> Result<GreedyBound, DomainError> {
    if k < 2 || big_k < k {
        return Err(DomainError(format!("need K >= k >= 2, got k = {k}, K = {big_k}")));
    }
    if !(q >= 0.0) {
        return Err(DomainError(format!("q must be nonnegative, got {q}")));
    }
    let p = crate::greedy::default_threshold(q, k);
    if q == 0.0 {
        let zero = BoundValue::zero();
        return Ok(GreedyBound { p, conflict_term: zero, extreme_term: zero, total: zero });
    }
    let conflict_log = if p == 0.0 {
        f64::NEG_INFINITY
    } else {
        p.ln() + (big_k - k) as f64 * p.ln_1p() + 2.0 * q.ln()
    };
    let extreme_log = LN_2 + k as f64 * (-p).ln_1p() + q.ln();
    Ok(GreedyBound {
        p,
        conflict_term: BoundValue::from_log(conflict_log),
        extreme_term: BoundValue::from_log(extreme_log),
        total: BoundValue::from_log(log_add(conflict_log, extreme_log)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformBound {
    /// `2^-k q^(1 + alpha_b) / k`.
    pub value: BoundValue,
    /// `alpha_b - 1`.
    pub epsilon: f64,
    /// `(k eps / (1 + eps))^(1 / (3 + eps))`.
    pub q_threshold: f64,
    pub within_threshold: bool,
}

/// Edge bound for `k`-uniform hypergraphs, using `R_k^e <= k`.
pub fn uniform_edge_bound(k: usize, q: f64, alpha_b: f64) -> Result<UniformBound, DomainError> {
    if k < 2 {
        return Err(DomainError(format!("k must be at least 2, got {k}")));
    }
    if !(alpha_b > 1.0) {
        return Err(DomainError(format!("alpha_b must exceed 1, got {alpha_b}")));
    }
    if !(q >= 0.0) {
        return Err(DomainError(format!("q must be nonnegative, got {q}")));
    }
    let epsilon = alpha_b - 1.0;
    let kf = k as f64;
    let value = if q == 0.0 {
        BoundValue::zero()
    } else {
        BoundValue::from_log(-kf * LN_2 + (1.0 + alpha_b) * q.ln() - kf.ln())
    };
    let q_threshold = ((kf * epsilon / (1.0 + epsilon)).ln() / (3.0 + epsilon)).exp();
    Ok(UniformBound { value, epsilon, q_threshold, within_threshold: q <= q_threshold })
}
