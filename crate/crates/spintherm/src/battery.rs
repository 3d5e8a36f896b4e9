//! The entropy-battery scenario.
//!
//! A warm environment bath, a cold battery energy bath, and (optionally) a
//! cold battery spin bath relax to a common final temperature τ_f fixed by
//! total entropy balance: the spin bath soaks up entropy "for free" in
//! energy terms, which is what lets the energetic efficiency of charging
//! exceed the Carnot bound once the spin bath has d_s ≥ 2 states.
//!
//! All baths use the infinite-N Bose forms; heats and entropies are
//! per-particle values scaled by configurable bath weights.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::bisect;
use crate::thermo::{boson_entropy_analytic, heat_between};

/// Scenario description: initial temperatures, bath spectra, and weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatterySpec {
    tau_env: f64,
    tau_e0: f64,
    tau_s0: f64,
    d_env: u32,
    d_e: u32,
    d_s: u32,
    weight_env: f64,
    weight_e: f64,
    weight_s: f64,
}

/// Default truncation of the energy-mode spectra.
pub const DEFAULT_ENERGY_STATES: u32 = 400;

impl BatterySpec {
    /// A scenario whose battery baths start at a common `tau_batt`, with
    /// default 400-state energy spectra and unit weights.
    pub fn new(tau_env: f64, tau_batt: f64, d_s: u32) -> Result<Self> {
        BatterySpec::with_initial_temperatures(tau_env, tau_batt, tau_batt, d_s)
    }

    /// A scenario with independently chosen initial bath temperatures.
    pub fn with_initial_temperatures(
        tau_env: f64,
        tau_e0: f64,
        tau_s0: f64,
        d_s: u32,
    ) -> Result<Self> {
        let spec = BatterySpec {
            tau_env,
            tau_e0,
            tau_s0,
            d_env: DEFAULT_ENERGY_STATES,
            d_e: DEFAULT_ENERGY_STATES,
            d_s,
            weight_env: 1.0,
            weight_e: 1.0,
            weight_s: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Override the energy-mode truncations (environment, battery).
    pub fn state_counts(mut self, d_env: u32, d_e: u32) -> Result<Self> {
        self.d_env = d_env;
        self.d_e = d_e;
        self.validate()?;
        Ok(self)
    }

    /// Override the per-particle bath weights.
    pub fn weights(mut self, env: f64, energy: f64, spin: f64) -> Result<Self> {
        self.weight_env = env;
        self.weight_e = energy;
        self.weight_s = spin;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        for (name, tau) in [
            ("tau_env", self.tau_env),
            ("tau_E0", self.tau_e0),
            ("tau_s0", self.tau_s0),
        ] {
            if !(tau > 0.0) || !tau.is_finite() {
                return Err(Error::invalid(format!(
                    "{name} must be positive and finite, got {tau}"
                )));
            }
        }
        if self.tau_env < self.tau_e0.max(self.tau_s0) {
            return Err(Error::invalid(format!(
                "the battery must start no warmer than the environment: \
                 tau_env = {} vs battery {} / {}",
                self.tau_env, self.tau_e0, self.tau_s0
            )));
        }
        if self.d_env < 2 || self.d_e < 2 {
            return Err(Error::invalid(format!(
                "energy baths need at least 2 states, got d_env={}, d_E={}",
                self.d_env, self.d_e
            )));
        }
        if self.d_s == 1 {
            return Err(Error::invalid(
                "a 1-state spin bath stores nothing; use d_s = 0 to disable it",
            ));
        }
        for (name, w) in [
            ("weight_env", self.weight_env),
            ("weight_E", self.weight_e),
            ("weight_s", self.weight_s),
        ] {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::invalid(format!(
                    "{name} must be positive and finite, got {w}"
                )));
            }
        }
        Ok(())
    }

    pub fn tau_env(&self) -> f64 {
        self.tau_env
    }

    pub fn tau_e0(&self) -> f64 {
        self.tau_e0
    }

    pub fn tau_s0(&self) -> f64 {
        self.tau_s0
    }

    pub fn d_env(&self) -> u32 {
        self.d_env
    }

    pub fn d_e(&self) -> u32 {
        self.d_e
    }

    pub fn d_s(&self) -> u32 {
        self.d_s
    }

    pub fn weight_env(&self) -> f64 {
        self.weight_env
    }

    pub fn weight_e(&self) -> f64 {
        self.weight_e
    }

    pub fn weight_s(&self) -> f64 {
        self.weight_s
    }
}

/// Solved scenario: final temperature, heats (magnitudes), works, and
/// efficiencies. When no heat flows (Q_env = 0) the efficiencies are
/// defined as 0 rather than 0/0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumResult {
    /// Common final temperature of all participating baths.
    pub tau_f: f64,
    /// Heat released by the environment (weighted).
    pub q_env: f64,
    /// Heat absorbed by the battery energy bath (weighted).
    pub q_batt: f64,
    /// Heat absorbed by the battery spin bath (weighted; 0 when d_s = 0).
    pub spin_therm: f64,
    /// Q_env − Q_batt: work with the spin flow treated as lost.
    pub w_conventional: f64,
    /// Q_env − Q_batt + spin_therm: energetic work including the spin flow.
    pub w_battery: f64,
    /// Spin carried into the spin bath, counted as labor (= spin_therm).
    pub spin_labor: f64,
    /// W_battery − spin_labor: work in the generalized ledger.
    pub generalized_work: f64,
    /// W_battery / Q_env.
    pub eta_energy: f64,
    /// 1 − τ_E0/τ_env.
    pub eta_carnot: f64,
    /// 1 − √(τ_E0/τ_env).
    pub eta_endoreversible: f64,
    /// 1 − Q_batt/Q_env: the efficiency in the generalized ledger.
    pub eta_generalized: f64,
    /// |ΔS| left at the accepted τ_f.
    pub residual: f64,
}

/// Total entropy change of the composite if every participating bath ends
/// at `tau_f`: Σ weights · [S(d, τ_f) − S(d, τ_initial)]. Strictly
/// increasing in τ_f, so its root is the unique equilibrium temperature.
pub fn total_entropy_change(spec: &BatterySpec, tau_f: f64) -> Result<f64> {
    if !(tau_f > 0.0) {
        return Err(Error::domain(format!("tau_f must be positive, got {tau_f}")));
    }
    let mut ds = spec.weight_env
        * (boson_entropy_analytic(spec.d_env, tau_f)?
            - boson_entropy_analytic(spec.d_env, spec.tau_env)?);
    ds += spec.weight_e
        * (boson_entropy_analytic(spec.d_e, tau_f)?
            - boson_entropy_analytic(spec.d_e, spec.tau_e0)?);
    if spec.d_s >= 2 {
        ds += spec.weight_s
            * (boson_entropy_analytic(spec.d_s, tau_f)?
                - boson_entropy_analytic(spec.d_s, spec.tau_s0)?);
    }
    Ok(ds)
}

/// Solve the entropy balance for τ_f and report the scenario's heats,
/// works, and efficiencies.
pub fn solve_equilibrium(spec: &BatterySpec) -> Result<EquilibriumResult> {
    spec.validate()?;
    let lo = spec.tau_e0.min(spec.tau_s0);
    let hi = spec.tau_env;
    // The bracket is validated positive, so the balance cannot error inside.
    let balance = |tau: f64| total_entropy_change(spec, tau).expect("validated bracket");
    let tau_f = bisect(balance, lo, hi, 1e-10, 1e-12, 200)?;
    let residual = balance(tau_f).abs();

    let q_env = spec.weight_env * heat_between(spec.d_env, tau_f, spec.tau_env)?;
    let q_batt = spec.weight_e * heat_between(spec.d_e, spec.tau_e0, tau_f)?;
    let spin_therm = if spec.d_s >= 2 {
        spec.weight_s * heat_between(spec.d_s, spec.tau_s0, tau_f)?
    } else {
        0.0
    };

    let w_conventional = q_env - q_batt;
    let w_battery = q_env - q_batt + spin_therm;
    let spin_labor = spin_therm;
    let generalized_work = w_battery - spin_labor;
    let (eta_energy, eta_generalized) = if q_env > 0.0 {
        (w_battery / q_env, 1.0 - q_batt / q_env)
    } else {
        (0.0, 0.0)
    };

    Ok(EquilibriumResult {
        tau_f,
        q_env,
        q_batt,
        spin_therm,
        w_conventional,
        w_battery,
        spin_labor,
        generalized_work,
        eta_energy,
        eta_carnot: 1.0 - spec.tau_e0 / spec.tau_env,
        eta_endoreversible: 1.0 - (spec.tau_e0 / spec.tau_env).sqrt(),
        eta_generalized,
        residual,
    })
}

/// One cell of an efficiency sweep; failures stay in their row instead of
/// aborting the batch.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub d_s: u32,
    pub tau_batt: f64,
    pub outcome: Result<EquilibriumResult>,
}

/// Solve every (d_s, tau_batt) combination, taking the environment
/// temperature, spectra, and weights from `base` and setting both battery
/// baths to `tau_batt`. Cells run in parallel; output order is row-major
/// over the inputs (d_s outer, tau_batt inner), never completion order.
pub fn sweep_efficiency(
    base: &BatterySpec,
    d_s_values: &[u32],
    tau_batt_values: &[f64],
) -> Vec<SweepCell> {
    let cells: Vec<(u32, f64)> = d_s_values
        .iter()
        .flat_map(|&ds| tau_batt_values.iter().map(move |&tb| (ds, tb)))
        .collect();
    let base = *base;
    cells
        .into_par_iter()
        .map(|(d_s, tau_batt)| {
            let outcome = BatterySpec::new(base.tau_env, tau_batt, d_s)
                .and_then(|s| s.state_counts(base.d_env, base.d_e))
                .and_then(|s| s.weights(base.weight_env, base.weight_e, base.weight_s))
                .and_then(|s| solve_equilibrium(&s));
            SweepCell { d_s, tau_batt, outcome }
        })
        .collect()
}

/// Closed-form endoreversible reference: the final temperature and
/// efficiency of a maximum-power engine between the two temperatures,
/// (√(τ_batt·τ_env), 1 − √(τ_batt/τ_env)).
pub fn endoreversible_reference(tau_batt: f64, tau_env: f64) -> Result<(f64, f64)> {
    if !(tau_batt > 0.0 && tau_batt <= tau_env) {
        return Err(Error::invalid(format!(
            "endoreversible reference needs 0 < tau_batt ≤ tau_env, got {tau_batt}, {tau_env}"
        )));
    }
    Ok(((tau_batt * tau_env).sqrt(), 1.0 - (tau_batt / tau_env).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(BatterySpec::new(0.6, 0.3, 0).is_ok());
        assert!(BatterySpec::new(0.6, 0.3, 1).is_err()); // meaningless spin bath
        assert!(BatterySpec::new(0.3, 0.6, 0).is_err()); // battery warmer than env
        assert!(BatterySpec::new(0.6, -0.3, 0).is_err());
        assert!(BatterySpec::new(0.6, 0.3, 2)
            .unwrap()
            .state_counts(1, 400)
            .is_err());
        assert!(BatterySpec::new(0.6, 0.3, 2)
            .unwrap()
            .weights(1.0, 0.0, 1.0)
            .is_err());
    }

    #[test]
    fn balance_is_zero_at_uniform_temperature() {
        let spec = BatterySpec::new(0.6, 0.6, 3).unwrap();
        assert_eq!(total_entropy_change(&spec, 0.6).unwrap(), 0.0);
        assert!(total_entropy_change(&spec, 0.0).is_err());
    }

    #[test]
    fn balance_is_increasing_in_tau_f() {
        let spec = BatterySpec::new(0.6, 0.3, 3).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 1..=20 {
            let tau = 0.3 + 0.015 * i as f64;
            let ds = total_entropy_change(&spec, tau).unwrap();
            assert!(ds > prev, "not increasing at τ={tau}");
            prev = ds;
        }
    }

    #[test]
    fn classical_regime_recovers_geometric_mean() {
        // High-temperature two-state baths: τ_f = √(τ_env·τ_E0) is the
        // classical constant-capacity result.
        let spec = BatterySpec::new(60.0, 30.0, 0)
            .unwrap()
            .state_counts(2, 2)
            .unwrap();
        let geometric = (60.0f64 * 30.0).sqrt();
        assert!(total_entropy_change(&spec, geometric).unwrap().abs() < 1e-4);
        let r = solve_equilibrium(&spec).unwrap();
        assert!((r.tau_f - geometric).abs() < 1e-3, "τ_f = {}", r.tau_f);
    }

    #[test]
    fn degenerate_scenario_is_a_fixed_point() {
        let spec = BatterySpec::new(0.6, 0.6, 3).unwrap();
        let r = solve_equilibrium(&spec).unwrap();
        assert_eq!(r.tau_f, 0.6);
        assert_eq!(r.q_env, 0.0);
        assert_eq!(r.q_batt, 0.0);
        assert_eq!(r.spin_therm, 0.0);
        assert_eq!(r.w_battery, 0.0);
        assert_eq!(r.eta_energy, 0.0);
        assert_eq!(r.eta_carnot, 0.0);
    }

    #[test]
    fn endoreversible_regime_without_spin_bath() {
        let spec = BatterySpec::new(0.6, 0.3, 0).unwrap();
        let r = solve_equilibrium(&spec).unwrap();
        let eta_ref = 1.0 - (0.3f64 / 0.6).sqrt();
        assert!((r.eta_energy - eta_ref).abs() < 0.02, "η = {}", r.eta_energy);
        // Regression values from an independent high-precision solve.
        assert!((r.tau_f - 0.463397).abs() < 1e-3, "τ_f = {}", r.tau_f);
        assert!((r.eta_energy - 0.276217).abs() < 1e-3);
        // Without a spin bath the efficiency cannot beat Carnot.
        assert!(r.eta_energy <= r.eta_carnot);
        assert_eq!(r.spin_therm, 0.0);
        assert_eq!(r.w_battery, r.w_conventional);
    }

    #[test]
    fn spin_bath_beats_carnot() {
        let spec = BatterySpec::new(0.6, 0.3, 3).unwrap();
        let r = solve_equilibrium(&spec).unwrap();
        assert!(r.eta_energy > r.eta_carnot, "η = {} vs Carnot {}", r.eta_energy, r.eta_carnot);
        assert!(r.eta_carnot == 0.5);
        assert!(r.spin_therm > 0.0);
    }

    #[test]
    fn bookkeeping_identities() {
        for d_s in [0u32, 2, 5] {
            let spec = BatterySpec::new(0.6, 0.367, d_s).unwrap();
            let r = solve_equilibrium(&spec).unwrap();
            assert!(r.residual <= 1e-10);
            assert_eq!(r.w_battery, r.q_env - r.q_batt + r.spin_therm);
            assert_eq!(r.w_conventional, r.q_env - r.q_batt);
            assert_eq!(r.generalized_work, r.w_battery - r.spin_labor);
            assert_eq!(r.eta_generalized, 1.0 - r.q_batt / r.q_env);
            assert!(r.tau_f >= 0.367 && r.tau_f <= 0.6);
        }
    }

    #[test]
    fn rerunning_at_equilibrium_is_stationary() {
        let spec = BatterySpec::new(0.6, 0.3, 4).unwrap();
        let first = solve_equilibrium(&spec).unwrap();
        let again = BatterySpec::new(first.tau_f, first.tau_f, 4).unwrap();
        let r = solve_equilibrium(&again).unwrap();
        assert_eq!(r.tau_f, first.tau_f);
        assert_eq!(r.w_battery, 0.0);
    }

    #[test]
    fn sweep_keeps_errors_in_rows_and_order_stable() {
        let base = BatterySpec::new(0.6, 0.3, 0).unwrap();
        let cells = sweep_efficiency(&base, &[0, 1, 2], &[0.3, 0.7]);
        assert_eq!(cells.len(), 6);
        // Row-major: d_s outer, tau_batt inner.
        let keys: Vec<(u32, f64)> = cells.iter().map(|c| (c.d_s, c.tau_batt)).collect();
        assert_eq!(
            keys,
            vec![(0, 0.3), (0, 0.7), (1, 0.3), (1, 0.7), (2, 0.3), (2, 0.7)]
        );
        assert!(cells[0].outcome.is_ok());
        assert!(cells[1].outcome.is_err()); // τ_batt above τ_env
        assert!(cells[2].outcome.is_err()); // d_s = 1
        assert!(cells[3].outcome.is_err());
        assert!(cells[4].outcome.is_ok());
        // Determinism under parallel evaluation.
        let rerun = sweep_efficiency(&base, &[0, 1, 2], &[0.3, 0.7]);
        assert_eq!(cells, rerun);
    }

    #[test]
    fn endoreversible_reference_closed_forms() {
        let (tau_f, eta) = endoreversible_reference(0.3, 0.6).unwrap();
        assert!((tau_f - 0.42426).abs() < 1e-5);
        assert!((eta - 0.29289).abs() < 1e-5);
        let (tau_f, eta) = endoreversible_reference(0.25, 1.0).unwrap();
        assert_eq!(tau_f, 0.5);
        assert_eq!(eta, 0.5);
        let (tau_f, eta) = endoreversible_reference(0.7, 0.7).unwrap();
        assert_eq!(tau_f, 0.7);
        assert_eq!(eta, 0.0);
        assert!(endoreversible_reference(0.8, 0.6).is_err());
        assert!(endoreversible_reference(0.0, 0.6).is_err());
    }
}
