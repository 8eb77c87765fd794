//! The parameter schedule behind the extraction guarantee: r(n), mu, the
//! per-level density threshold c(n), the amplification counts k and j, and
//! the guarantee formulas, plus derivation of the constant system
//! (sigma, epsilon, mu, kappa, n0).
//!
//! All logs are base 2. The formulas are evaluated in f64, but every value
//! that feeds a branch decision elsewhere (c itself) is returned as an exact
//! power-of-two fraction.

use crate::frac::Frac;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScheduleError {
    #[error("n must be at least 2, got {0}")]
    NTooSmall(u64),
    #[error("sigma must be at least 1, got {0}")]
    SigmaTooSmall(f64),
    #[error("sigma = {sigma} must exceed log2(1/epsilon) = {bound}")]
    SigmaVsEpsilon { sigma: f64, bound: f64 },
    #[error("epsilon must lie in (0, 1]")]
    EpsilonOutOfRange,
}

/// `r(n) = sqrt(log2 n * log2 log2 n)`; `r(2) = 0`.
pub fn r_of(n: u64) -> Result<f64, ScheduleError> {
    if n < 2 {
        return Err(ScheduleError::NTooSmall(n));
    }
    Ok(r_of_log2((n as f64).log2()))
}

/// Same as [`r_of`] with `log2 n` given directly, for counts beyond u64.
pub fn r_of_log2(log2_n: f64) -> f64 {
    if log2_n <= 1.0 {
        0.0
    } else {
        (log2_n * log2_n.log2()).sqrt()
    }
}

/// `mu = (32 sigma)^(-1/2)`; requires `sigma >= 1`.
pub fn mu_of(sigma: f64) -> Result<f64, ScheduleError> {
    if sigma.is_nan() || sigma < 1.0 {
        return Err(ScheduleError::SigmaTooSmall(sigma));
    }
    Ok(1.0 / (32.0 * sigma).sqrt())
}

/// The per-level threshold `c = 2^(-max(1, ceil(2 mu r(n))))`: the next power
/// of two below the real value `2^(-2 mu r(n))`, clamped to at most 1/2.
pub fn choose_c(n: u64, mu: f64) -> Frac {
    let r = r_of_log2((n.max(2) as f64).log2());
    let e = (2.0 * mu * r).ceil();
    let e = if e.is_finite() { e as i64 } else { 63 };
    let e = e.clamp(1, 63) as u32;
    Frac::new(1, 1u64 << e)
}

/// `k = floor((sigma log2(1/c) - 1) / log2(2/epsilon))`.
pub fn k_of(c: Frac, sigma: f64, epsilon: Frac) -> i64 {
    let num = sigma * c.log2_inverse() - 1.0;
    let den = 1.0 + epsilon.log2_inverse();
    (num / den).floor() as i64
}

/// `j = floor(log2 n / (4 sigma log2(1/c)))`.
pub fn j_of(n: u64, c: Frac, sigma: f64) -> i64 {
    debug_assert!(n >= 2);
    j_of_log2((n as f64).log2(), c, sigma)
}

/// Same as [`j_of`] with `log2 n` given directly.
pub fn j_of_log2(log2_n: f64, c: Frac, sigma: f64) -> i64 {
    (log2_n / (4.0 * sigma * c.log2_inverse())).floor() as i64
}

/// `(2^(2 kappa r(n)), 2^(kappa r(n)))`: the cograph-size bound and the
/// clique-or-stable-set bound it implies through perfectness.
pub fn guarantee(n: u64, kappa: f64) -> (f64, f64) {
    guarantee_log2((n.max(2) as f64).log2(), kappa)
}

pub fn guarantee_log2(log2_n: f64, kappa: f64) -> (f64, f64) {
    let r = r_of_log2(log2_n);
    (2f64.powf(2.0 * kappa * r), 2f64.powf(kappa * r))
}

/// The constant system of the extraction schedule.
///
/// `n0` is astronomically large for any usable (sigma, epsilon), so it is
/// carried as `log2_n0`; the guarantee is vacuous below it and reports say
/// so.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScheduleParams {
    pub sigma: f64,
    pub epsilon: Frac,
    pub mu: f64,
    pub kappa: f64,
    pub log2_n0: f64,
}

impl ScheduleParams {
    /// Derives mu, kappa and n0 from (sigma, epsilon).
    ///
    /// n0 is found by direct search over L = log2 n for the smallest L where
    /// all three displayed conditions hold:
    ///   (a) floor((2 sigma mu r - 1)/log2(2/eps)) >= sqrt(L) for all larger L
    ///       (searched through the floor-free sufficient form minus one),
    ///   (b) mu r >= 2,
    ///   (c) L >= 4 sigma mu r.
    /// kappa is the largest value with kappa <= mu/2 and 2 kappa r(n0) <= 1.
    pub fn derive(sigma: f64, epsilon: Frac) -> Result<Self, ScheduleError> {
        if sigma.is_nan() || sigma < 1.0 {
            return Err(ScheduleError::SigmaTooSmall(sigma));
        }
        if epsilon.is_zero() || epsilon > Frac::ONE {
            return Err(ScheduleError::EpsilonOutOfRange);
        }
        let log_inv_eps = epsilon.log2_inverse();
        if sigma <= log_inv_eps {
            return Err(ScheduleError::SigmaVsEpsilon {
                sigma,
                bound: log_inv_eps,
            });
        }
        let mu = mu_of(sigma)?;
        let log_2_over_eps = 1.0 + log_inv_eps;

        let cond_a_strong =
            |l: f64| (2.0 * sigma * mu * r_of_log2(l) - 1.0) / log_2_over_eps - 1.0 >= l.sqrt();
        let cond_a =
            |l: f64| ((2.0 * sigma * mu * r_of_log2(l) - 1.0) / log_2_over_eps).floor() >= l.sqrt();
        let cond_b = |l: f64| mu * r_of_log2(l) >= 2.0;
        let cond_c = |l: f64| l >= 4.0 * sigma * mu * r_of_log2(l);
        let all = |l: f64| cond_a_strong(l) && cond_b(l) && cond_c(l);

        let mut hi = 4.0f64;
        while !all(hi) {
            hi *= 2.0;
            assert!(hi < 1e300, "n0 search diverged for sigma={sigma}");
        }
        let mut lo = hi / 2.0;
        for _ in 0..200 {
            let mid = (lo + hi) / 2.0;
            if all(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let log2_n0 = hi;
        // guard the "for all n >= n0" quantifier on a geometric sample
        let mut l = log2_n0;
        for _ in 0..64 {
            debug_assert!(cond_a(l) && cond_b(l) && cond_c(l));
            l *= 2.0;
            if !l.is_finite() {
                break;
            }
        }

        let r0 = r_of_log2(log2_n0);
        let kappa = (mu / 2.0).min(1.0 / (2.0 * r0));
        Ok(ScheduleParams {
            sigma,
            epsilon,
            mu,
            kappa,
            log2_n0,
        })
    }

    pub fn c_for(&self, n: u64) -> Frac {
        choose_c(n, self.mu)
    }

    pub fn k_for(&self, n: u64) -> i64 {
        k_of(self.c_for(n), self.sigma, self.epsilon)
    }

    pub fn j_for(&self, n: u64) -> i64 {
        j_of(n.max(2), self.c_for(n), self.sigma)
    }

    pub fn guarantee_for(&self, n: u64) -> (f64, f64) {
        guarantee(n, self.kappa)
    }

    /// The guarantee only means something at or beyond n0.
    pub fn vacuous_at(&self, n: u64) -> bool {
        (n.max(1) as f64).log2() < self.log2_n0
    }
}

impl Default for ScheduleParams {
    /// sigma = 5, epsilon = 1/16.
    fn default() -> Self {
        ScheduleParams::derive(5.0, Frac::new(1, 16)).expect("default schedule must derive")
    }
}
