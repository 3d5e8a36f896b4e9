//! Brute-force reference implementations used to validate the closed-form
//! ensemble statistics. Everything here works by explicit enumeration over
//! occupation configurations and elementary arithmetic — deliberately no
//! shared code with the production formulas, so agreement between the two
//! routes is meaningful evidence.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::combinatorics::multinomial;
use crate::error::{Error, Result};
use crate::statmech::{EnsembleSpec, Statistics};

/// Maximum particle count accepted by the enumerator.
pub const MAX_ORACLE_N: u32 = 12;
/// Maximum state count accepted by the enumerator.
pub const MAX_ORACLE_D: u32 = 8;

/// One enumerated occupation configuration: the counts per state, how many
/// labelled microstates it represents, and its macrostate index m = Σ j·k_j.
#[derive(Debug, Clone)]
pub struct MicrostateEntry {
    pub configuration: Vec<u32>,
    pub multiplicity: BigUint,
    pub macrostate: u64,
}

/// Complete enumeration of the microstates of a small ensemble.
#[derive(Debug, Clone)]
pub struct MicrostateEnumeration {
    pub spec: EnsembleSpec,
    pub entries: Vec<MicrostateEntry>,
}

impl MicrostateEnumeration {
    /// Total number of microstates: Σ multiplicities.
    pub fn total_microstates(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| e.multiplicity.clone())
            .sum::<BigUint>()
    }
}

/// Enumerate every occupation configuration of the ensemble, with the
/// per-configuration microstate multiplicity (multinomial coefficient for
/// distinguishable particles, 1 for bosons and fermions).
pub fn enumerate_microstates(spec: &EnsembleSpec) -> Result<MicrostateEnumeration> {
    if spec.n() > MAX_ORACLE_N || spec.state_count() > MAX_ORACLE_D {
        return Err(Error::capacity(format!(
            "enumeration supports N ≤ {MAX_ORACLE_N}, d ≤ {MAX_ORACLE_D}; got N={}, d={}",
            spec.n(),
            spec.state_count()
        )));
    }
    let d = spec.state_count() as usize;
    let n = spec.n();
    let mut entries = Vec::new();
    let mut config = vec![0u32; d];
    fill(spec, &mut config, 0, n, &mut entries)?;
    Ok(MicrostateEnumeration { spec: *spec, entries })
}

fn fill(
    spec: &EnsembleSpec,
    config: &mut Vec<u32>,
    state: usize,
    remaining: u32,
    entries: &mut Vec<MicrostateEntry>,
) -> Result<()> {
    let d = config.len();
    if state == d {
        if remaining != 0 {
            return Ok(());
        }
        let multiplicity = match spec.statistics() {
            Statistics::Distinguishable => {
                let k: Vec<u64> = config.iter().map(|&k| k as u64).collect();
                multinomial(spec.n() as u64, &k)?
            }
            Statistics::Boson | Statistics::Fermion => BigUint::from(1u32),
        };
        let macrostate = config
            .iter()
            .enumerate()
            .map(|(j, &k)| j as u64 * k as u64)
            .sum();
        entries.push(MicrostateEntry {
            configuration: config.clone(),
            multiplicity,
            macrostate,
        });
        return Ok(());
    }
    let cap = match spec.statistics() {
        Statistics::Fermion => remaining.min(1),
        _ => remaining,
    };
    for k in 0..=cap {
        config[state] = k;
        fill(spec, config, state + 1, remaining - k, entries)?;
    }
    config[state] = 0;
    Ok(())
}

/// Z(γ) = Σ_configs g(k)·e^{−γ·m(k)}, summed directly over the enumeration.
pub fn brute_partition(spec: &EnsembleSpec, gamma: f64) -> Result<f64> {
    Ok(brute_sums(spec, gamma)?.0)
}

/// ⟨J̄z⟩(γ) = ⟨j⟩ − S·N with ⟨j⟩ the weighted mean of m over the enumeration.
pub fn brute_average_spin(spec: &EnsembleSpec, gamma: f64) -> Result<f64> {
    let (z, first) = brute_sums(spec, gamma)?;
    Ok(first / z - spec.spin().value() * spec.n() as f64)
}

/// S(γ) = ln Z + γ⟨j⟩ (the basis-shift terms cancel identically).
pub fn brute_entropy(spec: &EnsembleSpec, gamma: f64) -> Result<f64> {
    let (z, first) = brute_sums(spec, gamma)?;
    Ok(z.ln() + gamma * first / z)
}

fn brute_sums(spec: &EnsembleSpec, gamma: f64) -> Result<(f64, f64)> {
    let enumeration = enumerate_microstates(spec)?;
    let mut z = 0.0;
    let mut first = 0.0;
    for entry in &enumeration.entries {
        let g = entry.multiplicity.to_f64().expect("multiplicity fits f64");
        let w = g * (-gamma * entry.macrostate as f64).exp();
        z += w;
        first += entry.macrostate as f64 * w;
    }
    Ok((z, first))
}

/// Central-difference estimate of the waste response C_s = d⟨J̄z⟩/dτ,
/// built on the brute-force average so it is independent of both the
/// fluctuation formula and the analytic derivatives.
pub fn finite_diff_response(spec: &EnsembleSpec, tau: f64, h: f64) -> Result<f64> {
    if !(tau - h > 0.0) {
        return Err(Error::domain(format!(
            "central difference needs τ − h > 0, got τ = {tau}, h = {h}"
        )));
    }
    let plus = brute_average_spin(spec, 1.0 / (tau + h))?;
    let minus = brute_average_spin(spec, 1.0 / (tau - h))?;
    Ok((plus - minus) / (2.0 * h))
}
