//! Stochastic ingredients: Lorentzian colored-noise traces, static lattice
//! disorder, pulse-amplitude error sampling.
//!
//! Traces are frozen at synthesis (frequencies, phases, and weights sampled
//! once) and evaluated analytically at any t, so a run is deterministic given
//! its seeds.

use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LorentzianNoiseSpec {
    /// Number of cosine components.
    pub m: usize,
    /// Noise power scale S₀.
    pub s0: f64,
    /// Center frequency Ω_c.
    pub omega_c: f64,
    /// Half-width at half-maximum Γ.
    pub gamma_hwhm: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub seed: u64,
    /// Correlation time quoted alongside the PSD parameters; stored for
    /// completeness, not used by the synthesis formula.
    #[serde(default)]
    pub tau_c: Option<f64>,
}

impl LorentzianNoiseSpec {
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::InvalidConfig("noise component count must be at least 1".into()));
        }
        if !(self.gamma_hwhm > 0.0) {
            return Err(Error::InvalidConfig(format!("HWHM must be positive, got {}", self.gamma_hwhm)));
        }
        if !(self.omega_min < self.omega_max) {
            return Err(Error::InvalidConfig(format!(
                "frequency range [{}, {}] is empty",
                self.omega_min, self.omega_max
            )));
        }
        Ok(())
    }

    pub fn delta_omega(&self) -> f64 {
        (self.omega_max - self.omega_min) / self.m as f64
    }
}

/// S(Ω) = S₀ / (1 + ((Ω − Ω_c)/Γ)²).
pub fn psd(spec: &LorentzianNoiseSpec, omega: f64) -> f64 {
    let y = (omega - spec.omega_c) / spec.gamma_hwhm;
    spec.s0 / (1.0 + y * y)
}

/// A frozen realization of δω(t) = Σⱼ √(2 S(Ωⱼ)ΔΩ) cos(Ωⱼ t + φⱼ).
#[derive(Debug, Clone)]
pub struct NoiseTrace {
    frequencies: Vec<f64>,
    phases: Vec<f64>,
    weights: Vec<f64>,
}

impl NoiseTrace {
    pub fn synthesize(spec: &LorentzianNoiseSpec) -> Result<Self> {
        spec.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let d_omega = spec.delta_omega();
        let mut frequencies = Vec::with_capacity(spec.m);
        let mut phases = Vec::with_capacity(spec.m);
        let mut weights = Vec::with_capacity(spec.m);
        for _ in 0..spec.m {
            let omega = rng.gen_range(spec.omega_min..spec.omega_max);
            let phase = rng.gen_range(0.0..TAU);
            frequencies.push(omega);
            phases.push(phase);
            weights.push((2.0 * psd(spec, omega) * d_omega).sqrt());
        }
        Ok(Self { frequencies, phases, weights })
    }

    /// Direct construction from components; used by tests that pin phases.
    pub fn from_components(frequencies: Vec<f64>, phases: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(frequencies.len(), phases.len());
        assert_eq!(frequencies.len(), weights.len());
        Self { frequencies, phases, weights }
    }

    pub fn value(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for ((&w, &omega), &phi) in self.weights.iter().zip(&self.frequencies).zip(&self.phases) {
            acc += w * (omega * t + phi).cos();
        }
        acc
    }

    /// Σⱼ |wⱼ|, a hard bound on |δω(t)|.
    pub fn amplitude_bound(&self) -> f64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    /// Σⱼ S(Ωⱼ)ΔΩ for this realization; the ensemble variance of δω(0).
    pub fn expected_variance(&self) -> f64 {
        self.weights.iter().map(|w| 0.5 * w * w).sum()
    }

    pub fn component_count(&self) -> usize {
        self.frequencies.len()
    }
}

/// Gaussian pulse-amplitude multiplier ξ ~ N(1, σ²), deterministic per
/// (seed, draw index). σ = 0 returns exactly 1.
pub fn pulse_error_multiplier(seed: u64, draw_index: u64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return 1.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(draw_index);
    let z: f64 = StandardNormal.sample(&mut rng);
    1.0 + sigma * z
}

/// Relative error of the stochastic pulse multiplier quoted in the DD model.
pub const PULSE_ERROR_SIGMA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DisorderSpec {
    pub n_sites: usize,
    /// Relative disorder strength; site energies are uniform on ±(strength·Ω₀).
    pub relative_strength: f64,
    /// Pulse strength Ω₀ setting the disorder scale.
    pub pulse_strength: f64,
    pub seed: u64,
}

impl DisorderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.relative_strength < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "disorder strength must be nonnegative, got {}",
                self.relative_strength
            )));
        }
        Ok(())
    }
}

/// Static site energies d_x ~ U[−s·Ω₀, s·Ω₀].
pub fn sample_disorder(spec: &DisorderSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let bound = spec.relative_strength * spec.pulse_strength.abs();
    if bound == 0.0 {
        return Ok(vec![0.0; spec.n_sites]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok((0..spec.n_sites).map(|_| rng.gen_range(-bound..bound)).collect())
}

/// Averaged periodogram of freshly synthesized traces, normalized so the
/// result estimates S(Ω) + S(−Ω): traces with a positive-only frequency range
/// recover S(Ω) directly.
pub fn empirical_psd(
    spec: &LorentzianNoiseSpec,
    n_traces: usize,
    dt: f64,
    n_samples: usize,
    omegas: &[f64],
) -> Result<Vec<f64>> {
    spec.validate()?;
    let span = dt * n_samples as f64;
    let mut avg = vec![0.0f64; omegas.len()];
    for trace_idx in 0..n_traces {
        let mut s = spec.clone();
        s.seed = spec.seed.wrapping_add(trace_idx as u64);
        let trace = NoiseTrace::synthesize(&s)?;
        let samples: Vec<f64> = (0..n_samples).map(|i| trace.value(i as f64 * dt)).collect();
        for (k, &omega) in omegas.iter().enumerate() {
            // incremental rotation e^{-iΩdt} to avoid a trig call per sample
            let (step_im, step_re) = (-omega * dt).sin_cos();
            let (mut rot_re, mut rot_im) = (1.0f64, 0.0f64);
            let (mut acc_re, mut acc_im) = (0.0f64, 0.0f64);
            for &x in &samples {
                acc_re += x * rot_re;
                acc_im += x * rot_im;
                let next_re = rot_re * step_re - rot_im * step_im;
                rot_im = rot_re * step_im + rot_im * step_re;
                rot_re = next_re;
            }
            let power = (acc_re * acc_re + acc_im * acc_im) * dt * dt / span;
            avg[k] += power / std::f64::consts::PI;
        }
    }
    for v in &mut avg {
        *v /= n_traces as f64;
    }
    Ok(avg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn fig_spec() -> LorentzianNoiseSpec {
        LorentzianNoiseSpec {
            m: 1000,
            s0: 0.2,
            omega_c: 0.5,
            gamma_hwhm: 0.5,
            omega_min: -5.0,
            omega_max: 5.0,
            seed: 7,
            tau_c: Some(5.0),
        }
    }

    #[test]
    fn psd_center_and_half_maximum() {
        let spec = fig_spec();
        assert_abs_diff_eq!(psd(&spec, 0.5), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(psd(&spec, 1.0), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(psd(&spec, 1.5), 0.04, epsilon = 1e-15);
        assert!(psd(&spec, 100.0) > 0.0);
    }

    #[test]
    fn forced_quadrature_phase_vanishes_at_zero() {
        let trace = NoiseTrace::from_components(vec![1.3], vec![FRAC_PI_2], vec![0.8]);
        assert_abs_diff_eq!(trace.value(0.0), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn synthesis_is_deterministic() {
        let spec = fig_spec();
        let a = NoiseTrace::synthesize(&spec).unwrap();
        let b = NoiseTrace::synthesize(&spec).unwrap();
        for &t in &[0.0, 0.37, 12.9] {
            assert_eq!(a.value(t), b.value(t));
        }
    }

    #[test]
    fn trace_respects_amplitude_bound() {
        let spec = fig_spec();
        let trace = NoiseTrace::synthesize(&spec).unwrap();
        let bound = trace.amplitude_bound();
        for k in 0..400 {
            let t = k as f64 * 0.11;
            assert!(trace.value(t).abs() <= bound);
        }
    }

    #[test]
    fn ensemble_variance_matches_psd_sum() {
        let mut spec = fig_spec();
        let n = 500;
        let mut values = Vec::with_capacity(n);
        let mut expected = 0.0;
        for k in 0..n {
            spec.seed = 1000 + k as u64;
            let trace = NoiseTrace::synthesize(&spec).unwrap();
            values.push(trace.value(0.0));
            expected += trace.expected_variance();
        }
        expected /= n as f64;
        let mean: f64 = values.iter().sum::<f64>() / n as f64;
        let var: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
        let rel = (var - expected).abs() / expected;
        assert!(rel < 0.10, "variance {var:.4} vs expected {expected:.4} ({rel:.3} rel)");
    }

    #[test]
    fn pulse_error_hooks() {
        assert_eq!(pulse_error_multiplier(5, 0, 0.0), 1.0);
        assert_eq!(pulse_error_multiplier(5, 3, 0.05), pulse_error_multiplier(5, 3, 0.05));
        assert_ne!(pulse_error_multiplier(5, 3, 0.05), pulse_error_multiplier(5, 4, 0.05));
    }

    #[test]
    fn pulse_error_statistics() {
        let n = 100_000u64;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for i in 0..n {
            let x = pulse_error_multiplier(99, i, 0.05);
            sum += x;
            sumsq += x * x;
        }
        let mean = sum / n as f64;
        let sd = (sumsq / n as f64 - mean * mean).sqrt();
        assert!((0.999..=1.001).contains(&mean), "mean {mean}");
        assert!((0.049..=0.051).contains(&sd), "sd {sd}");
    }

    #[test]
    fn disorder_zero_strength_is_exact_zero() {
        let spec = DisorderSpec { n_sites: 11, relative_strength: 0.0, pulse_strength: 1.0, seed: 4 };
        assert_eq!(sample_disorder(&spec).unwrap(), vec![0.0; 11]);
    }

    #[test]
    fn disorder_within_bounds_and_deterministic() {
        let spec = DisorderSpec { n_sites: 11, relative_strength: 0.01, pulse_strength: 1.0, seed: 4 };
        let d = sample_disorder(&spec).unwrap();
        assert_eq!(d.len(), 11);
        assert!(d.iter().all(|x| x.abs() <= 0.01));
        assert_eq!(d, sample_disorder(&spec).unwrap());
    }

    #[test]
    fn periodogram_recovers_lorentzian() {
        // positive-only range so the estimator sees S(Ω) without its mirror
        let spec = LorentzianNoiseSpec {
            m: 1000,
            s0: 0.2,
            omega_c: 3.0,
            gamma_hwhm: 0.5,
            omega_min: 0.001,
            omega_max: 10.0,
            seed: 21,
            tau_c: None,
        };
        let dt = std::f64::consts::PI / (4.0 * spec.omega_max); // ≤ π/(4 Ω_max)
        let omegas: Vec<f64> = (0..240).map(|k| 0.5 + k as f64 * 0.02).collect();
        let est = empirical_psd(&spec, 200, dt, 2000, &omegas).unwrap();
        let (peak_idx, peak_val) =
            est.iter().enumerate().fold((0, 0.0), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let peak_omega = omegas[peak_idx];
        assert!(
            (peak_omega - spec.omega_c).abs() < spec.gamma_hwhm,
            "peak at {peak_omega}, expected near {}",
            spec.omega_c
        );
        let rel = (peak_val - spec.s0).abs() / spec.s0;
        assert!(rel < 0.15, "peak height {peak_val:.4} vs S0 {} ({rel:.3} rel)", spec.s0);
    }
}
