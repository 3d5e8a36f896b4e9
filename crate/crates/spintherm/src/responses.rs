//! Waste responses (spin heat capacities) C_s and entropic responses C_s/τ.
//!
//! The waste response plays the role a heat capacity plays for energy: it is
//! the temperature derivative of the stored conserved quantity,
//! C_s = d⟨J̄z⟩/dτ, equal by fluctuation–dissipation to Var(m)/τ².
//! Finite ensembles are served through the exact partition-function
//! derivatives; the infinite-N Bose forms (including their Einstein and
//! Debye special cases) are closed-form mode sums and integrals.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{adaptive_simpson, inv_sinh_sq};
use crate::statmech::{macrostate_variance, EnsembleSpec, Spin, Statistics};

/// Which response family a model or curve carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseKind {
    /// C_s = d⟨J̄z⟩/dτ (generalized heat capacity).
    WasteResponse,
    /// C_s/τ = dS/dτ (entropy stored per unit temperature).
    EntropicResponse,
}

/// A response model that can be evaluated at any τ > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResponseModel {
    /// Exact finite ensemble (total response, any statistics).
    Ensemble(EnsembleSpec),
    /// Per-particle distinguishable closed form with d states.
    Distinguishable { d: u32 },
    /// Per-particle infinite-N Bose mode sum with d states.
    Boson { d: u32 },
    /// Single-mode Einstein solid (the d = 2 Bose case).
    Einstein,
    /// Debye continuum with mode cutoff 2S.
    Debye { cutoff: f64 },
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0) {
        return Err(Error::domain(format!("responses require τ > 0, got {tau}")));
    }
    Ok(())
}

/// Total waste response of a finite ensemble: C_s = Var(m)/τ².
///
/// Exact for all three statistics via analytic derivatives of ln Z (no
/// finite differencing), so it is meaningful to compare against oracles at
/// the 10⁻¹² level.
pub fn waste_response_numeric(spec: &EnsembleSpec, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(macrostate_variance(spec, 1.0 / tau)? / (tau * tau))
}

/// Per-particle distinguishable waste response: Var of a single d-state
/// Boltzmann spin over τ². Rejects non-distinguishable specs so callers
/// cannot silently apply the independent-particle shortcut to correlated
/// statistics.
pub fn waste_response_distinguishable(spec: &EnsembleSpec, tau: f64) -> Result<f64> {
    if spec.statistics() != Statistics::Distinguishable {
        return Err(Error::invalid(format!(
            "per-particle shortcut only holds for distinguishable statistics, got {}",
            spec.statistics()
        )));
    }
    check_tau(tau)?;
    let single = EnsembleSpec::new(Statistics::Distinguishable, 1, spec.spin())?;
    Ok(macrostate_variance(&single, 1.0 / tau)? / (tau * tau))
}

/// Infinite-N per-particle Bose waste response:
/// C_s = (1/4τ²) Σ_{j=1}^{d−1} j²/sinh²(j/2τ).
pub fn waste_response_boson(d: u32, tau: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::invalid(format!(
            "Bose mode sum needs d ≥ 2, got d = {d}"
        )));
    }
    check_tau(tau)?;
    let mut sum = 0.0;
    for j in 1..d as u64 {
        let jf = j as f64;
        sum += jf * jf * inv_sinh_sq(jf / (2.0 * tau));
    }
    Ok(sum / (4.0 * tau * tau))
}

/// Einstein solid, per particle per degree of freedom:
/// C_E = (1/τ²)/(e^{1/2τ} − e^{−1/2τ})².
pub fn einstein_solid(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(inv_sinh_sq(1.0 / (2.0 * tau)) / (4.0 * tau * tau))
}

/// Debye model with continuum cutoff 2S:
/// C_D = (3/(τ²(2S)²)) ∫₀^{2S} j⁴/(e^{j/2τ} − e^{−j/2τ})² dj,
/// evaluated by adaptive quadrature to absolute tolerance 10⁻¹⁰.
pub fn debye(tau: f64, cutoff: f64) -> Result<f64> {
    check_tau(tau)?;
    if !(cutoff > 0.0) {
        return Err(Error::domain(format!(
            "Debye cutoff must be positive, got {cutoff}"
        )));
    }
    let integrand = |j: f64| {
        if j == 0.0 {
            0.0
        } else {
            j.powi(4) * inv_sinh_sq(j / (2.0 * tau)) / 4.0
        }
    };
    // The integrand turns over near j = 2τ; splitting there keeps the
    // adaptive rule honest in the frozen (τ ≪ cutoff) regime where almost
    // all weight sits far below the cutoff.
    let knee = 2.0 * tau;
    let integral = if knee < cutoff {
        adaptive_simpson(&integrand, 0.0, knee, 0.5e-10)
            + adaptive_simpson(&integrand, knee, cutoff, 0.5e-10)
    } else {
        adaptive_simpson(&integrand, 0.0, cutoff, 1e-10)
    };
    Ok(3.0 * integral / (tau * tau * cutoff * cutoff))
}

/// Waste response of any model at τ.
pub fn waste_response(model: &ResponseModel, tau: f64) -> Result<f64> {
    match model {
        ResponseModel::Ensemble(spec) => waste_response_numeric(spec, tau),
        ResponseModel::Distinguishable { d } => {
            let spec = EnsembleSpec::new(Statistics::Distinguishable, 1, Spin::from_two_s(d.checked_sub(1).ok_or_else(|| Error::invalid("d must be ≥ 1"))?))?;
            waste_response_distinguishable(&spec, tau)
        }
        ResponseModel::Boson { d } => waste_response_boson(*d, tau),
        ResponseModel::Einstein => einstein_solid(tau),
        ResponseModel::Debye { cutoff } => debye(tau, *cutoff),
    }
}

/// Entropic response C_s/τ = dS/dτ of any model at τ.
pub fn entropic_response(model: &ResponseModel, tau: f64) -> Result<f64> {
    Ok(waste_response(model, tau)? / tau)
}

/// A response sampled over a τ grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseCurve {
    kind: ResponseKind,
    tau_grid: Vec<f64>,
    values: Vec<f64>,
}

impl ResponseCurve {
    /// Wrap an existing grid/value pair, enforcing the grid discipline
    /// (strictly increasing, all positive, lengths equal).
    pub fn new(kind: ResponseKind, tau_grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if tau_grid.len() != values.len() {
            return Err(Error::invalid(format!(
                "grid has {} points but {} values",
                tau_grid.len(),
                values.len()
            )));
        }
        if tau_grid.first().is_some_and(|&t| !(t > 0.0)) {
            return Err(Error::invalid("τ grid must be positive"));
        }
        if tau_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("τ grid must be strictly increasing"));
        }
        Ok(ResponseCurve { kind, tau_grid, values })
    }

    /// Evaluate `model` across the grid (in parallel; ordering follows the
    /// grid, never completion order).
    pub fn sample(kind: ResponseKind, model: &ResponseModel, tau_grid: Vec<f64>) -> Result<Self> {
        let values = tau_grid
            .par_iter()
            .map(|&tau| match kind {
                ResponseKind::WasteResponse => waste_response(model, tau),
                ResponseKind::EntropicResponse => entropic_response(model, tau),
            })
            .collect::<Result<Vec<f64>>>()?;
        ResponseCurve::new(kind, tau_grid, values)
    }

    pub fn kind(&self) -> ResponseKind {
        self.kind
    }

    pub fn tau_grid(&self) -> &[f64] {
        &self.tau_grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::richardson_diff;
    use crate::statmech::{entropy, InverseTemperature, ThermalPoint};

    fn dist(n: u32, d: u32) -> EnsembleSpec {
        EnsembleSpec::from_states(Statistics::Distinguishable, n, d).unwrap()
    }

    #[test]
    fn two_state_waste_response() {
        // p(1−p) with p = e^{−1}/(1+e^{−1}).
        let e = (-1.0f64).exp();
        let expect = e / (1.0 + e).powi(2);
        assert!((expect - 0.196612).abs() < 1e-6);
        let c = waste_response_distinguishable(&dist(1, 2), 1.0).unwrap();
        assert!((c - expect).abs() < 1e-15);
        // The numeric route agrees, and scales extensively.
        let c1 = waste_response_numeric(&dist(1, 2), 1.0).unwrap();
        assert!((c1 - expect).abs() < 1e-14);
        let c7 = waste_response_numeric(&dist(7, 2), 1.0).unwrap();
        assert!((c7 - 7.0 * expect).abs() < 1e-13);
    }

    #[test]
    fn per_particle_shortcut_rejects_other_statistics() {
        let spec = EnsembleSpec::from_states(Statistics::Boson, 3, 2).unwrap();
        assert!(matches!(
            waste_response_distinguishable(&spec, 1.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(waste_response_numeric(&dist(1, 2), 0.0).is_err());
        assert!(waste_response_numeric(&dist(1, 2), -1.0).is_err());
    }

    #[test]
    fn high_temperature_limits() {
        // Two-state variance saturates at 1/4: C → 1/(4τ²).
        let tau = 1e6;
        let c = waste_response_numeric(&dist(1, 2), tau).unwrap();
        assert!((c * 4.0 * tau * tau - 1.0).abs() < 1e-6);
        // Bose mode sum → d − 1.
        for d in [2u32, 5, 11] {
            let c = waste_response_boson(d, tau).unwrap();
            assert!((c - (d as f64 - 1.0)).abs() / (d as f64 - 1.0) < 1e-6, "d={d}");
        }
        // Debye → cutoff.
        let c = debye(tau, 10.0).unwrap();
        assert!((c - 10.0).abs() / 10.0 < 1e-4);
    }

    #[test]
    fn frozen_limits_vanish() {
        assert!(einstein_solid(0.01).unwrap() < 1e-12);
        assert!(waste_response_boson(2, 0.01).unwrap() < 1e-12);
        assert!(waste_response_distinguishable(&dist(1, 2), 0.01).unwrap() < 1e-12);
        assert!(waste_response_numeric(&dist(3, 2), 0.01).unwrap() < 1e-12);
        // Debye obeys a τ³ power law rather than an exponential freeze-out.
        let hi = debye(0.05, 1.0).unwrap();
        let lo = debye(0.025, 1.0).unwrap();
        assert!((hi / lo - 8.0).abs() < 0.2, "τ³ ratio: {}", hi / lo);
        assert!(hi < 1e-2);
    }

    #[test]
    fn einstein_equals_two_state_bose_sum() {
        let mut tau = 0.05;
        while tau <= 10.0 {
            let a = einstein_solid(tau).unwrap();
            let b = waste_response_boson(2, tau).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "τ={tau}");
            tau += 0.05;
        }
        assert!((einstein_solid(1.0).unwrap() - 0.920674).abs() < 1e-6);
    }

    #[test]
    fn debye_approaches_bose_sum_in_classical_regime() {
        // With the cutoff far below τ both models sit near their common
        // plateau; the continuum and the mode sum then agree closely.
        let c_d = debye(200.0, 100.0).unwrap();
        let c_b = waste_response_boson(101, 200.0).unwrap();
        assert!((c_d - c_b).abs() / c_b < 0.02, "{c_d} vs {c_b}");
    }

    #[test]
    fn entropic_response_is_entropy_slope() {
        let expect = waste_response_boson(2, 1.0).unwrap();
        let got = entropic_response(&ResponseModel::Boson { d: 2 }, 1.0).unwrap();
        assert!((got - expect).abs() < 1e-15);
        assert!((got - 0.920674).abs() < 1e-6);

        // dS/dτ from the exact finite-N entropy matches C_s/τ.
        let spec = dist(2, 3);
        for tau in [0.3, 1.0, 4.0] {
            let slope = richardson_diff(
                |t| {
                    let p = ThermalPoint::new(spec, InverseTemperature::from_tau(t).unwrap());
                    entropy(&p).unwrap()
                },
                tau,
                (1e-5 * tau).max(1e-7),
            );
            let c = entropic_response(&ResponseModel::Ensemble(spec), tau).unwrap();
            assert!((slope - c).abs() < 1e-6, "τ={tau}: {slope} vs {c}");
        }
    }

    #[test]
    fn entropic_response_integrates_to_entropy_difference() {
        let spec = dist(2, 3);
        let integral = adaptive_simpson(
            &|t| entropic_response(&ResponseModel::Ensemble(spec), t).unwrap(),
            0.5,
            2.0,
            1e-9,
        );
        let s = |t: f64| {
            entropy(&ThermalPoint::new(
                spec,
                InverseTemperature::from_tau(t).unwrap(),
            ))
            .unwrap()
        };
        assert!((integral - (s(2.0) - s(0.5))).abs() < 1e-6);
    }

    #[test]
    fn bose_convergence_from_finite_ensembles() {
        // |C_total(N) − C_analytic| shrinks as N grows (d = 2 and 3, τ = 1).
        for d in [2u32, 3] {
            let target = waste_response_boson(d, 1.0).unwrap();
            let mut errs = Vec::new();
            for n in [10u32, 100, 1000] {
                let spec = EnsembleSpec::from_states(Statistics::Boson, n, d).unwrap();
                let c = waste_response_numeric(&spec, 1.0).unwrap();
                errs.push((c - target).abs());
            }
            assert!(errs[1] <= errs[0] + 1e-12 && errs[2] <= errs[1] + 1e-12, "d={d}: {errs:?}");
            assert!(errs[2] / target < 1e-3);
        }
    }

    #[test]
    fn curve_sampling_is_validated_and_deterministic() {
        let grid: Vec<f64> = (1..=60).map(|i| 0.1 * i as f64).collect();
        let model = ResponseModel::Einstein;
        let curve =
            ResponseCurve::sample(ResponseKind::WasteResponse, &model, grid.clone()).unwrap();
        let serial: Vec<f64> = grid.iter().map(|&t| einstein_solid(t).unwrap()).collect();
        assert_eq!(curve.values(), serial.as_slice());
        assert_eq!(curve.kind(), ResponseKind::WasteResponse);

        assert!(ResponseCurve::new(ResponseKind::WasteResponse, vec![1.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(ResponseCurve::new(ResponseKind::WasteResponse, vec![-1.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(ResponseCurve::new(ResponseKind::WasteResponse, vec![1.0], vec![0.0, 0.0]).is_err());
    }
}
