//! Closed-form thermodynamics: infinite-N Bose entropy and heat, entropy
//! and waste capacities, and the polarization ↔ spin-temperature mapping.
//!
//! Everything is dimensionless. Heats are referenced to the τ → 0 ground
//! state, so they start at zero and saturate at the waste capacity S·N
//! per the finite counting.

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::numeric::{bisect, bose, ln_big, ln_one_minus_exp_neg, SINH_CUTOFF};
use crate::statmech::{
    average_spin, EnsembleSpec, InverseTemperature, Spin, Statistics, ThermalPoint,
};

fn check_mode_count(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::invalid(format!(
            "Bose mode forms need d ≥ 2, got d = {d}"
        )));
    }
    Ok(())
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0) {
        return Err(Error::domain(format!(
            "analytic Bose forms require τ > 0, got {tau}"
        )));
    }
    Ok(())
}

/// Per-particle entropy of the infinite-N Bose ensemble:
/// S = Σ_{j=1}^{d−1} [(j/2τ)·coth(j/2τ) − ln(2 sinh(j/2τ))].
///
/// Each bracket is evaluated as 2x·n(2x) − ln(1−e^{−2x}) with x = j/2τ and
/// n the geometric mean occupation; the form cancels the growing pieces
/// exactly and flushes to 0 for x beyond the overflow cutoff.
pub fn boson_entropy_analytic(d: u32, tau: f64) -> Result<f64> {
    check_mode_count(d)?;
    check_tau(tau)?;
    let mut s = 0.0;
    for j in 1..d as u64 {
        let x = j as f64 / (2.0 * tau);
        if x > SINH_CUTOFF {
            continue;
        }
        s += 2.0 * x * bose(2.0 * x) - ln_one_minus_exp_neg(2.0 * x);
    }
    Ok(s)
}

/// Per-particle heat content of the infinite-N Bose ensemble relative to
/// the τ → 0 ground state: Q = (1/2) Σ_{j=1}^{d−1} j·(coth(j/2τ) − 1),
/// i.e. Σ_j j·n(j/τ) in occupation form.
pub fn boson_heat(d: u32, tau: f64) -> Result<f64> {
    check_mode_count(d)?;
    check_tau(tau)?;
    let mut q = 0.0;
    for j in 1..d as u64 {
        let x = j as f64 / tau;
        if x > 2.0 * SINH_CUTOFF {
            continue;
        }
        q += j as f64 * bose(x);
    }
    Ok(q)
}

/// Heat absorbed by the Bose ensemble when its temperature moves from
/// `tau_a` to `tau_b` (positive when warming).
pub fn heat_between(d: u32, tau_a: f64, tau_b: f64) -> Result<f64> {
    Ok(boson_heat(d, tau_b)? - boson_heat(d, tau_a)?)
}

/// Largest entropy the ensemble can hold (its γ = 0 microstate count):
/// N·ln d, ln C(N+d−1, d−1), or ln C(d, N) by statistics.
pub fn entropy_capacity(statistics: Statistics, n: u32, d: u32) -> Result<f64> {
    if n < 1 || d < 1 {
        return Err(Error::invalid(format!(
            "entropy capacity needs N ≥ 1 and d ≥ 1, got N={n}, d={d}"
        )));
    }
    match statistics {
        Statistics::Distinguishable => Ok(n as f64 * (d as f64).ln()),
        Statistics::Boson => ln_big(&binomial(n as u64 + d as u64 - 1, d as u64 - 1)),
        Statistics::Fermion => {
            if n > d {
                return Err(Error::invalid(format!(
                    "fermion capacity needs N ≤ d, got N={n}, d={d}"
                )));
            }
            ln_big(&binomial(d as u64, n as u64))
        }
    }
}

/// Largest amount of spin the ensemble can absorb above its ground state:
/// Q_max = S·N.
pub fn waste_capacity(n: u32, spin: Spin) -> f64 {
    spin.value() * n as f64
}

/// The two capacity ceilings of an ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityReport {
    /// Maximum storable entropy in nats (ln of the microstate count).
    pub entropy_capacity: f64,
    /// Maximum storable spin above the ground state, S·N.
    pub waste_capacity: f64,
}

/// Both capacities of an ensemble in one report.
pub fn capacity_report(spec: &EnsembleSpec) -> Result<CapacityReport> {
    Ok(CapacityReport {
        entropy_capacity: entropy_capacity(spec.statistics(), spec.n(), spec.state_count())?,
        waste_capacity: waste_capacity(spec.n(), spec.spin()),
    })
}

/// Population fraction α ∈ [0, 1] parameterizing ⟨J̄z⟩ = (2α−1)·S·N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarization {
    alpha: f64,
}

impl Polarization {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid(format!(
                "polarization must lie in [0, 1], got {alpha}"
            )));
        }
        Ok(Polarization { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// A spin temperature, keeping the γ = 0 point exact instead of hiding it
/// in a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinTemperature {
    Finite(f64),
    /// γ = 0 exactly (α = 1/2, the symmetric distribution).
    Infinite,
}

impl SpinTemperature {
    /// The finite value, if any.
    pub fn finite(&self) -> Option<f64> {
        match self {
            SpinTemperature::Finite(t) => Some(*t),
            SpinTemperature::Infinite => None,
        }
    }
}

/// Invert the polarization map: the τ whose single-particle Boltzmann
/// distribution over d = 2S+1 states has mean state index α·(d−1).
///
/// The Boltzmann ratio x = e^{−1/τ} is the unique positive root of
/// Σ_{j=0}^{d−1} x^j·(α(d−1) − j); then τ = −1/ln x. Polarizations above
/// 1/2 are folded onto 1−α through the spectrum reflection τ(α) = −τ(1−α),
/// which keeps the root inside (0, 1) where Horner evaluation is stable.
pub fn polarization_to_tau(alpha: Polarization, spin: Spin) -> Result<SpinTemperature> {
    let a = alpha.alpha();
    if a == 0.0 || a == 1.0 {
        return Err(Error::domain(
            "fully polarized ensembles sit at the τ → 0 limit, which has no finite γ",
        ));
    }
    if a == 0.5 {
        return Ok(SpinTemperature::Infinite);
    }
    if spin.two_s() == 0 {
        return Err(Error::invalid(
            "a single-state spin is always at α = 1/2; other polarizations are unreachable",
        ));
    }
    let (target, flip) = if a > 0.5 { (1.0 - a, true) } else { (a, false) };
    let d = spin.state_count() as usize;
    let mean = target * (d as f64 - 1.0);
    // Horner evaluation of Σ x^j (mean − j), highest power first.
    let poly = |x: f64| {
        let mut acc = 0.0;
        for j in (0..d).rev() {
            acc = acc * x + (mean - j as f64);
        }
        acc
    };
    // poly(0) = mean > 0 and poly(1) = d(d−1)(α−1/2) < 0 for α < 1/2, so the
    // root is always bracketed by (0, 1).
    let x = bisect(poly, 0.0, 1.0, 0.0, 1e-14, 200)?;
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!(
            "polarization root collapsed to the bracket edge at α = {a}"
        )));
    }
    let tau = -1.0 / x.ln();
    Ok(SpinTemperature::Finite(if flip { -tau } else { tau }))
}

/// The forward polarization map: α = (⟨J̄z⟩/(S·N) + 1)/2 from the
/// single-particle Boltzmann distribution at temperature τ.
pub fn tau_to_polarization(tau: f64, spin: Spin) -> Result<Polarization> {
    if spin.two_s() == 0 {
        // Degenerate single state: the symmetric value by convention.
        return Polarization::new(0.5);
    }
    let spec = EnsembleSpec::new(Statistics::Distinguishable, 1, spin)?;
    let point = ThermalPoint::new(spec, InverseTemperature::from_tau(tau)?);
    let avg = average_spin(&point)?;
    Polarization::new((avg / spin.value() + 1.0) / 2.0)
}

/// Reference closed form for the S = 1/2 polarization map:
/// τ = 1/ln((1−α)/α).
pub fn tau_spin_half(alpha: Polarization) -> Result<SpinTemperature> {
    let a = alpha.alpha();
    if a == 0.0 || a == 1.0 {
        return Err(Error::domain("fully polarized: τ → 0 limit"));
    }
    if a == 0.5 {
        return Ok(SpinTemperature::Infinite);
    }
    Ok(SpinTemperature::Finite(1.0 / ((1.0 - a) / a).ln()))
}

/// Reference closed form for the S = 1 polarization map: the positive root
/// of the quadratic 2α + (2α−1)x + (2α−2)x² feeds τ = −1/ln x.
pub fn tau_spin_one(alpha: Polarization) -> Result<SpinTemperature> {
    let a = alpha.alpha();
    if a == 0.0 || a == 1.0 {
        return Err(Error::domain("fully polarized: τ → 0 limit"));
    }
    if a == 0.5 {
        return Ok(SpinTemperature::Infinite);
    }
    let disc = (-12.0 * a * a + 12.0 * a + 1.0).sqrt();
    let x = ((2.0 * a - 1.0) + disc) / (4.0 * (1.0 - a));
    Ok(SpinTemperature::Finite(-1.0 / x.ln()))
}
