//! Ensemble statistics: partition functions, average spin, entropy,
//! configuration probabilities, and occupation distributions.
//!
//! All internal work happens in the computational basis `j ∈ {0, …, d−1}`
//! with Boltzmann weights `e^{−γ·j}`; physical spin eigenvalues are
//! `m_j = j − S`, and the exact shift `⟨J̄z⟩ = ⟨j⟩ − S·N` is applied at the
//! boundary. Negative γ is folded onto positive γ through the spectrum
//! reflection `Z(−γ) = e^{γM} Z(γ)` (M = (d−1)·N), so every numeric kernel
//! only ever sees non-negative exponents.

use crate::combinatorics::{binomial, multinomial};
use crate::error::{Error, Result};
use crate::numeric::{bose, inv_sinh_sq, ln_big, ln_one_minus_exp_neg};

/// Exchange statistics of the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Distinguishable,
    Boson,
    Fermion,
}

impl std::fmt::Display for Statistics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Statistics::Distinguishable => "distinguishable",
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        };
        f.write_str(name)
    }
}

/// Per-particle spin quantum number S (a non-negative half-integer),
/// stored as 2S to keep the arithmetic exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spin {
    two_s: u32,
}

impl Spin {
    /// Spin from the doubled quantum number (2S = 0, 1, 2, …).
    pub const fn from_two_s(two_s: u32) -> Self {
        Spin { two_s }
    }

    /// Spin from a real value, which must be a non-negative half-integer.
    pub fn new(s: f64) -> Result<Self> {
        let two_s = 2.0 * s;
        if !(two_s >= 0.0) || two_s > u32::MAX as f64 || two_s.fract() != 0.0 {
            return Err(Error::invalid(format!(
                "spin must be a non-negative half-integer, got {s}"
            )));
        }
        Ok(Spin { two_s: two_s as u32 })
    }

    /// S as a real number.
    pub fn value(&self) -> f64 {
        self.two_s as f64 / 2.0
    }

    /// The doubled quantum number 2S.
    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    /// Number of spin states d = 2S + 1.
    pub fn state_count(&self) -> u32 {
        self.two_s + 1
    }
}

/// What ensemble we are talking about: particle count, per-particle spin,
/// and exchange statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnsembleSpec {
    statistics: Statistics,
    n: u32,
    spin: Spin,
}

impl EnsembleSpec {
    pub fn new(statistics: Statistics, n: u32, spin: Spin) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("particle count must be ≥ 1"));
        }
        if statistics == Statistics::Fermion && n > spin.state_count() {
            return Err(Error::invalid(format!(
                "fermions support at most N = d particles, got N={n} with d={}",
                spin.state_count()
            )));
        }
        Ok(EnsembleSpec { statistics, n, spin })
    }

    /// Construct from a state count d = 2S + 1 instead of a spin value.
    pub fn from_states(statistics: Statistics, n: u32, d: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::invalid("state count must be ≥ 1"));
        }
        EnsembleSpec::new(statistics, n, Spin::from_two_s(d - 1))
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    /// Number of single-particle states d.
    pub fn state_count(&self) -> u32 {
        self.spin.state_count()
    }

    /// Largest macrostate index M = (d−1)·N.
    pub fn max_macrostate(&self) -> u64 {
        (self.state_count() as u64 - 1) * self.n as u64
    }
}

/// The Lagrange multiplier γ = 1/τ conjugate to average spin.
/// Zero and negative values are legal; only finiteness is required
/// (τ = 0 exists solely as a limit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseTemperature {
    gamma: f64,
}

impl InverseTemperature {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::domain(format!("γ must be finite, got {gamma}")));
        }
        Ok(InverseTemperature { gamma })
    }

    /// γ = 1/τ. Infinite τ maps to γ = 0; τ = 0 is rejected.
    pub fn from_tau(tau: f64) -> Result<Self> {
        if tau == 0.0 || tau.is_nan() {
            return Err(Error::domain(format!("τ = {tau} has no finite γ = 1/τ")));
        }
        InverseTemperature::new(1.0 / tau)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// τ = 1/γ (±∞ at γ = 0).
    pub fn tau(&self) -> f64 {
        1.0 / self.gamma
    }
}

/// An ensemble held at a fixed spin temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPoint {
    pub spec: EnsembleSpec,
    pub gamma: InverseTemperature,
}

impl ThermalPoint {
    pub fn new(spec: EnsembleSpec, gamma: InverseTemperature) -> Self {
        ThermalPoint { spec, gamma }
    }

    pub fn at_tau(spec: EnsembleSpec, tau: f64) -> Result<Self> {
        Ok(ThermalPoint::new(spec, InverseTemperature::from_tau(tau)?))
    }
}

/// ln Z together with its first two γ-derivatives, in the computational
/// basis. The derivatives carry the thermodynamics: ⟨j⟩ = −d(ln Z)/dγ and
/// Var(m) = d²(ln Z)/dγ².
pub(crate) fn log_partition_derivs(spec: &EnsembleSpec, gamma: f64) -> Result<(f64, f64, f64)> {
    if gamma < 0.0 {
        // Spectrum reflection: Z(γ) = e^{−γM} Z(−γ).
        let m = spec.max_macrostate() as f64;
        let (lnz, d1, d2) = derivs_nonneg(spec, -gamma)?;
        return Ok((-gamma * m + lnz, -m - d1, d2));
    }
    derivs_nonneg(spec, gamma)
}

fn derivs_nonneg(spec: &EnsembleSpec, gamma: f64) -> Result<(f64, f64, f64)> {
    debug_assert!(gamma >= 0.0);
    match spec.statistics() {
        Statistics::Distinguishable => Ok(distinguishable_derivs(spec.n(), spec.state_count(), gamma)),
        Statistics::Boson => boson_derivs(spec.n(), spec.state_count(), gamma),
        Statistics::Fermion => fermion_derivs(spec.n(), spec.state_count(), gamma),
    }
}

/// Closed form N·ln Σ_j e^{−γj}; derivatives from the single-particle
/// mean and (two-pass, cancellation-free) variance.
fn distinguishable_derivs(n: u32, d: u32, gamma: f64) -> (f64, f64, f64) {
    let mut z1 = 0.0;
    let mut first = 0.0;
    for j in 0..d {
        let w = (-gamma * j as f64).exp();
        z1 += w;
        first += j as f64 * w;
    }
    let mean = first / z1;
    let mut second_centered = 0.0;
    for j in 0..d {
        let w = (-gamma * j as f64).exp();
        let dj = j as f64 - mean;
        second_centered += dj * dj * w;
    }
    let var = second_centered / z1;
    let nf = n as f64;
    (nf * z1.ln(), -nf * mean, nf * var)
}

/// Gaussian-binomial product identity
/// ln Z = Σ_{i=1}^{d−1} [ln(1−q^{N+i}) − ln(1−q^i)], q = e^{−γ},
/// with analytic derivatives. Near γ = 0 the pairwise differences switch to
/// a Bernoulli series so the 1/γ (and 1/γ²) parts cancel algebraically
/// instead of numerically; at γ = 0 the exact q = 1 limit
/// ln C(N+d−1, d−1) is returned.
fn boson_derivs(n: u32, d: u32, gamma: f64) -> Result<(f64, f64, f64)> {
    let nf = n as f64;
    let top = nf + d as f64 - 1.0;
    if gamma == 0.0 {
        let lnz = ln_big(&binomial(n as u64 + d as u64 - 1, d as u64 - 1))?;
        let m = (d as u64 - 1) * n as u64;
        let mut var0 = 0.0;
        for i in 1..d as u64 {
            let hi = (nf + i as f64).powi(2);
            let lo = (i as f64).powi(2);
            var0 += (hi - lo) / 12.0;
        }
        return Ok((lnz, -(m as f64) / 2.0, var0));
    }
    let mut lnz = 0.0;
    for i in 1..d as u64 {
        lnz += ln_one_minus_exp_neg(gamma * (nf + i as f64)) - ln_one_minus_exp_neg(gamma * i as f64);
    }
    let series = gamma * top < 0.05;
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    for i in 1..d as u64 {
        let lo = i as f64;
        let hi = nf + lo;
        if series {
            // k·bose(γk) = 1/γ − k/2 + γk²/12 − γ³k⁴/720 + γ⁵k⁶/30240 − …
            // k²/(4 sinh²(γk/2)) = 1/γ² − k²/12 + γ²k⁴/240 − γ⁴k⁶/6048 + …
            // The 1/γ-type leads cancel exactly between the hi and lo terms.
            let (a, b, c) = (
                hi * hi - lo * lo,
                hi.powi(4) - lo.powi(4),
                hi.powi(6) - lo.powi(6),
            );
            let g2 = gamma * gamma;
            d1 += -nf / 2.0 + gamma * a / 12.0 - gamma * g2 * b / 720.0
                + gamma * g2 * g2 * c / 30240.0;
            d2 += a / 12.0 - g2 * b / 240.0 + g2 * g2 * c / 6048.0;
        } else {
            d1 += hi * bose(gamma * hi) - lo * bose(gamma * lo);
            d2 += lo * lo * inv_sinh_sq(gamma * lo / 2.0) / 4.0
                - hi * hi * inv_sinh_sq(gamma * hi / 2.0) / 4.0;
        }
    }
    Ok((lnz, d1, d2))
}

/// Exact coefficient extraction of t^N from ∏_{j=0}^{d−1}(1 + t·e^{−γj}),
/// propagating value and both γ-derivatives through the recurrence.
/// Refuses beyond N·d = 10⁴ — this is the small-system exact path.
///
/// Coefficients are tracked relative to the k-particle ground state
/// T_k = k(k−1)/2 (the lowest k levels filled): ĉ[k] = e^{γT_k}·c[k] sums
/// e^{−γ·(m − T_k)} over excitations only, so every stored value lies in
/// [1, C(d,k)] and no rescaling is ever needed, even at extreme γ.
fn fermion_derivs(n: u32, d: u32, gamma: f64) -> Result<(f64, f64, f64)> {
    if n as u64 * d as u64 > 10_000 {
        return Err(Error::capacity(format!(
            "fermion coefficient extraction supports N·d ≤ 10⁴, got {}·{}",
            n, d
        )));
    }
    let n = n as usize;
    let mut c = vec![0.0f64; n + 1];
    let mut c1 = vec![0.0f64; n + 1]; // dĉ/dγ, every term ≤ 0
    let mut c2 = vec![0.0f64; n + 1]; // d²ĉ/dγ², every term ≥ 0
    c[0] = 1.0;
    for j in 0..d as usize {
        // Placing level j as the k-th particle costs excitation j − (k−1)
        // on top of the (k−1)-particle ground state. The bound k ≤ j+1
        // keeps that excitation non-negative (higher k simply cannot occur
        // yet and would otherwise manufacture inf·0 = NaN at large γ).
        for k in (1..=n.min(j + 1)).rev() {
            let e = (j - (k - 1)) as f64;
            let x = (-gamma * e).exp();
            let xp = -e * x;
            let xpp = e * e * x;
            c2[k] += xpp * c[k - 1] + 2.0 * xp * c1[k - 1] + x * c2[k - 1];
            c1[k] += xp * c[k - 1] + x * c1[k - 1];
            c[k] += x * c[k - 1];
        }
    }
    let t_n = (n as f64) * (n as f64 - 1.0) / 2.0;
    let z = c[n];
    debug_assert!(z >= 1.0);
    let r1 = c1[n] / z;
    Ok((z.ln() - gamma * t_n, r1 - t_n, c2[n] / z - r1 * r1))
}

/// ln Z in the computational basis j ∈ {0, …, d−1}.
pub fn log_partition(point: &ThermalPoint) -> Result<f64> {
    Ok(log_partition_derivs(&point.spec, point.gamma.gamma())?.0)
}

/// Ensemble average spin ⟨J̄z⟩ = ⟨j⟩ − S·N, with ⟨j⟩ = −∂(ln Z)/∂γ.
pub fn average_spin(point: &ThermalPoint) -> Result<f64> {
    let (_, d1, _) = log_partition_derivs(&point.spec, point.gamma.gamma())?;
    let shift = point.spec.spin().value() * point.spec.n() as f64;
    Ok(-d1 - shift)
}

/// Variance of the macrostate index, Var(m) = ∂²(ln Z)/∂γ².
/// This is the fluctuation side of the waste response: C_s = Var(m)/τ².
pub(crate) fn macrostate_variance(spec: &EnsembleSpec, gamma: f64) -> Result<f64> {
    Ok(log_partition_derivs(spec, gamma)?.2)
}

/// Entropy S = ln Z_m + γ⟨J̄z⟩ (physical basis). Computed in the j basis as
/// S = ln Z_j + γ⟨j⟩ — the γSN shift terms cancel exactly.
pub fn entropy(point: &ThermalPoint) -> Result<f64> {
    let gamma = point.gamma.gamma();
    let (lnz, d1, _) = log_partition_derivs(&point.spec, gamma)?;
    Ok(lnz + gamma * -d1)
}

fn validate_config(spec: &EnsembleSpec, config: &[u32]) -> Result<u64> {
    if config.len() != spec.state_count() as usize {
        return Err(Error::invalid(format!(
            "configuration has {} entries, expected d = {}",
            config.len(),
            spec.state_count()
        )));
    }
    let total: u64 = config.iter().map(|&k| k as u64).sum();
    if total != spec.n() as u64 {
        return Err(Error::invalid(format!(
            "configuration holds {total} particles, expected N = {}",
            spec.n()
        )));
    }
    if spec.statistics() == Statistics::Fermion && config.iter().any(|&k| k > 1) {
        return Err(Error::invalid("fermion occupations must be 0 or 1"));
    }
    Ok(config
        .iter()
        .enumerate()
        .map(|(j, &k)| j as u64 * k as u64)
        .sum())
}

/// Probability of an occupation configuration `k` (counts per state).
///
/// For distinguishable particles this is the macrostate probability: the
/// multinomial multiplicity of `k` is included. For bosons and fermions a
/// configuration is a single microstate, so no factor appears.
pub fn probability(point: &ThermalPoint, config: &[u32]) -> Result<f64> {
    let m = validate_config(&point.spec, config)?;
    let mut ln_g = 0.0;
    if point.spec.statistics() == Statistics::Distinguishable {
        let k: Vec<u64> = config.iter().map(|&k| k as u64).collect();
        ln_g = ln_big(&multinomial(point.spec.n() as u64, &k)?)?;
    }
    let gamma = point.gamma.gamma();
    let lnz = log_partition(point)?;
    Ok((ln_g - gamma * m as f64 - lnz).exp())
}

/// Probability of one labelled microstate with the given occupation profile
/// (the multiplicity factor is never included).
pub fn microstate_probability(point: &ThermalPoint, config: &[u32]) -> Result<f64> {
    let m = validate_config(&point.spec, config)?;
    let gamma = point.gamma.gamma();
    let lnz = log_partition(point)?;
    Ok((-gamma * m as f64 - lnz).exp())
}

/// Bose–Einstein occupation ⟨n_j⟩ = 1/(e^{(j−S)/τ} − 1).
///
///// Requires (j−S)/τ > 0: outside that regime the grand-canonical geometric
/// series behind the formula does not converge.
pub fn occupation_bose(j: u32, spin: Spin, tau: f64) -> Result<f64> {
    if j >= spin.state_count() {
        return Err(Error::invalid(format!(
            "state index {j} out of range for d = {}",
            spin.state_count()
        )));
    }
    let m = (2.0 * j as f64 - spin.two_s() as f64) / 2.0;
    let x = m / tau;
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "occupation_bose requires (j − S)/τ > 0, got (j−S) = {m}, τ = {tau}"
        )));
    }
    Ok(bose(x))
}

/// Fermi–Dirac occupation ⟨n_j⟩ = 1/(e^{(j−S)/τ} + 1). Requires τ ≠ 0.
pub fn occupation_fermi(j: u32, spin: Spin, tau: f64) -> Result<f64> {
    if j >= spin.state_count() {
        return Err(Error::invalid(format!(
            "state index {j} out of range for d = {}",
            spin.state_count()
        )));
    }
    if tau == 0.0 || tau.is_nan() {
        return Err(Error::domain("occupation_fermi requires τ ≠ 0"));
    }
    let m = (2.0 * j as f64 - spin.two_s() as f64) / 2.0;
    let x = m / tau;
    if x > 0.0 {
        let t = (-x).exp();
        Ok(t / (1.0 + t))
    } else {
        Ok(1.0 / (x.exp() + 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(stat: Statistics, n: u32, d: u32, gamma: f64) -> ThermalPoint {
        ThermalPoint::new(
            EnsembleSpec::from_states(stat, n, d).unwrap(),
            InverseTemperature::new(gamma).unwrap(),
        )
    }

    #[test]
    fn two_state_partition_at_infinite_temperature() {
        for stat in [Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion] {
            let p = point(stat, 1, 2, 0.0);
            assert!(
                (log_partition(&p).unwrap() - 2f64.ln()).abs() < 1e-15,
                "{stat}"
            );
        }
    }

    #[test]
    fn boson_counting_at_gamma_zero() {
        // Two bosons in two states: three configurations.
        let p = point(Statistics::Boson, 2, 2, 0.0);
        assert!((log_partition(&p).unwrap() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn distinguishable_two_particle_partition() {
        let p = point(Statistics::Distinguishable, 2, 2, 1.0);
        let e = (-1.0f64).exp();
        let expect = (1.0 + 2.0 * e + e * e).ln();
        assert!((log_partition(&p).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 1.871093f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn average_spin_examples() {
        // γ = 0: reflection symmetry pins the mean at zero.
        for stat in [Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion] {
            let p = point(stat, 3, 4, 0.0);
            assert_eq!(average_spin(&p).unwrap(), 0.0, "{stat}");
        }
        // Deep frozen regime: maximal polarization −S·N.
        let p = point(Statistics::Distinguishable, 1, 2, 50.0);
        assert!((average_spin(&p).unwrap() + 0.5).abs() < 1e-12);
        // Two-state Boltzmann average.
        let p = point(Statistics::Distinguishable, 1, 2, 1.0);
        let e = (-1.0f64).exp();
        let expect = (-0.5 + 0.5 * e) / (1.0 + e);
        assert!((average_spin(&p).unwrap() - expect).abs() < 1e-15);
        assert!((expect + 0.231059).abs() < 1e-6);
    }

    #[test]
    fn entropy_examples() {
        // Third law probe.
        for stat in [Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion] {
            let p = point(stat, 2, 3, 50.0);
            let s = entropy(&p).unwrap();
            assert!(s.abs() < 1e-12, "{stat}: {s}");
        }
        // Infinite-temperature distinguishable entropy is N ln d.
        let p = point(Statistics::Distinguishable, 5, 3, 0.0);
        assert!((entropy(&p).unwrap() - 5.0 * 3f64.ln()).abs() < 1e-12);
        // Frozen single particle.
        let p = point(Statistics::Distinguishable, 1, 2, 1.0);
        let e = (-1.0f64).exp();
        let expect = (1.0 + e).ln() + e / (1.0 + e);
        assert!((entropy(&p).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 0.582203).abs() < 1e-6);
    }

    #[test]
    fn entropy_is_reflection_symmetric() {
        for stat in [Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion] {
            for gamma in [0.25, 1.0, 3.0] {
                let plus = entropy(&point(stat, 3, 3, gamma)).unwrap();
                let minus = entropy(&point(stat, 3, 3, -gamma)).unwrap();
                assert!((plus - minus).abs() < 1e-12, "{stat} γ={gamma}");
                let ms = average_spin(&point(stat, 3, 3, gamma)).unwrap();
                let mm = average_spin(&point(stat, 3, 3, -gamma)).unwrap();
                assert!((ms + mm).abs() < 1e-12, "{stat} γ={gamma}");
            }
        }
    }

    #[test]
    fn fermi_saturation_has_zero_entropy() {
        // N = d: a single allowed configuration at every temperature.
        for gamma in [-3.0, -0.5, 0.0, 0.7, 10.0, 200.0] {
            let p = point(Statistics::Fermion, 3, 3, gamma);
            assert!(entropy(&p).unwrap().abs() < 1e-12, "γ={gamma}");
        }
    }

    #[test]
    fn fermion_capacity_guard() {
        // N ≤ d passes construction; the N·d product guard trips at evaluation.
        let spec = EnsembleSpec::from_states(Statistics::Fermion, 101, 101).unwrap();
        let p = ThermalPoint::new(spec, InverseTemperature::new(1.0).unwrap());
        assert!(matches!(log_partition(&p), Err(Error::Capacity(_))));
        // Overfilling is rejected at construction.
        assert!(EnsembleSpec::from_states(Statistics::Fermion, 4, 3).is_err());
    }

    #[test]
    fn fermion_survives_deep_freeze_without_underflow() {
        // γ·m_min far below the naive underflow threshold.
        let spec = EnsembleSpec::from_states(Statistics::Fermion, 40, 60).unwrap();
        let p = ThermalPoint::new(spec, InverseTemperature::new(30.0).unwrap());
        let lnz = log_partition(&p).unwrap();
        // Ground state dominates: lnZ ≈ −γ·Σ_{j<40} j = −30·780.
        assert!((lnz - (-30.0 * 780.0)).abs() < 1e-6);
        assert!(entropy(&p).unwrap().abs() < 1e-9);
    }

    #[test]
    fn probability_examples() {
        let p = point(Statistics::Boson, 2, 2, 0.0);
        assert!((probability(&p, &[1, 1]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let p = point(Statistics::Distinguishable, 2, 2, 0.0);
        assert!((probability(&p, &[1, 1]).unwrap() - 0.5).abs() < 1e-15);
        assert!((microstate_probability(&p, &[1, 1]).unwrap() - 0.25).abs() < 1e-15);
        let p = point(Statistics::Fermion, 2, 2, 1.3);
        assert!((probability(&p, &[1, 1]).unwrap() - 1.0).abs() < 1e-15);
        // Invalid configurations are rejected.
        assert!(probability(&p, &[2, 0]).is_err());
        assert!(probability(&p, &[1, 0]).is_err());
        assert!(probability(&p, &[1]).is_err());
    }

    #[test]
    fn probabilities_sum_to_one() {
        let p = point(Statistics::Distinguishable, 3, 3, 0.8);
        let mut total = 0.0;
        for k0 in 0..=3u32 {
            for k1 in 0..=(3 - k0) {
                let k2 = 3 - k0 - k1;
                total += probability(&p, &[k0, k1, k2]).unwrap();
            }
        }
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn occupation_examples() {
        // Integer spin S=1: state j=2 sits at j−S = 1.
        let s1 = Spin::new(1.0).unwrap();
        assert!((occupation_bose(2, s1, 1.0).unwrap() - 1.0 / (std::f64::consts::E - 1.0)).abs() < 1e-15);
        assert!((occupation_bose(2, s1, 1.0).unwrap() - 0.581977).abs() < 1e-6);
        let s2 = Spin::new(2.0).unwrap();
        let e2 = (2.0f64).exp();
        assert!((occupation_bose(4, s2, 1.0).unwrap() - 1.0 / (e2 - 1.0)).abs() < 1e-15);
        // Frozen limit.
        assert!(occupation_bose(2, s1, 0.01).unwrap() < 1e-40);
        // Non-convergent regimes are domain errors.
        assert!(matches!(occupation_bose(0, s1, 1.0), Err(Error::Domain(_))));
        assert!(matches!(occupation_bose(1, s1, 1.0), Err(Error::Domain(_))));
        assert!(matches!(occupation_bose(2, s1, -1.0), Err(Error::Domain(_))));

        let e = std::f64::consts::E;
        assert!((occupation_fermi(1, s1, 7.7).unwrap() - 0.5).abs() < 1e-15);
        assert!((occupation_fermi(2, s1, 1.0).unwrap() - 1.0 / (e + 1.0)).abs() < 1e-15);
        assert!((occupation_fermi(0, s1, 1.0).unwrap() - e / (e + 1.0)).abs() < 1e-15);
        assert!(occupation_fermi(1, s1, 0.0).is_err());
    }

    #[test]
    fn fermi_particle_hole_symmetry() {
        let s = Spin::new(1.5).unwrap();
        for tau in [-2.0, -0.3, 0.4, 1.0, 9.0] {
            for j in 0..s.state_count() {
                let a = occupation_fermi(j, s, tau).unwrap();
                let b = occupation_fermi(s.two_s() - j, s, tau).unwrap();
                assert!((a + b - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_parsing() {
        assert_eq!(Spin::new(0.5).unwrap().two_s(), 1);
        assert_eq!(Spin::new(200.0).unwrap().state_count(), 401);
        assert!(Spin::new(0.3).is_err());
        assert!(Spin::new(-1.0).is_err());
        assert!(InverseTemperature::from_tau(0.0).is_err());
        assert_eq!(InverseTemperature::from_tau(f64::INFINITY).unwrap().gamma(), 0.0);
        assert!(InverseTemperature::new(f64::NAN).is_err());
    }
}
