//! Analytic pulse envelopes, their exact time derivatives, and window
//! scheduling.
//!
//! All shapes are dimensionless functions of the normalized time
//! C = (t − t_c)/T. Derivatives are with respect to t and carry the 1/T
//! chain factor.

use crate::{Error, Result};
use std::f64::consts::PI;

/// 1/√π, the Gaussian peak value.
pub const INV_SQRT_PI: f64 = 0.5641895835477563;
/// Hermite-pulse scale 2√2, fixed so the derivative matches its closed form.
const HGP_SCALE: f64 = 2.828427124746190;
/// Oscillation rate of the modulated Gaussian.
const OGP_RATE: f64 = 5.0 * PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseShapeKind {
    /// Gaussian: e^{−C²}/√π
    Gp,
    /// Super-Gaussian: e^{−Cⁿ}, even n > 2
    Sgp,
    /// Oscillating Gaussian: e^{−C²}cos(5πC)/√π
    Ogp,
    /// Laguerre-Gaussian (p=0, l=1): |C|e^{−C²}
    Lgp,
    /// First Hermite-Gaussian: 2√2·C·e^{−C²}
    Hgp,
    /// Asymmetric Gaussian: e^{−C²}[1 + erf(CT/τ_as)]/2
    Agp,
}

impl PulseShapeKind {
    pub const ALL: [PulseShapeKind; 6] = [
        PulseShapeKind::Gp,
        PulseShapeKind::Sgp,
        PulseShapeKind::Ogp,
        PulseShapeKind::Lgp,
        PulseShapeKind::Hgp,
        PulseShapeKind::Agp,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            PulseShapeKind::Gp => "gp",
            PulseShapeKind::Sgp => "sgp",
            PulseShapeKind::Ogp => "ogp",
            PulseShapeKind::Lgp => "lgp",
            PulseShapeKind::Hgp => "hgp",
            PulseShapeKind::Agp => "agp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PulseShape {
    pub kind: PulseShapeKind,
    /// Super-Gaussian exponent; even and greater than 2.
    pub sgp_exponent: u32,
    /// T/τ_as for the asymmetric shape. The default τ_as = T/2 gives 2.
    pub agp_ratio: f64,
}

impl PulseShape {
    pub fn new(kind: PulseShapeKind) -> Self {
        Self { kind, sgp_exponent: 4, agp_ratio: 2.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sgp_exponent <= 2 || self.sgp_exponent % 2 != 0 {
            return Err(Error::InvalidConfig(format!(
                "super-Gaussian exponent must be even and > 2, got {}",
                self.sgp_exponent
            )));
        }
        if !(self.agp_ratio > 0.0) || !self.agp_ratio.is_finite() {
            return Err(Error::InvalidConfig(format!("asymmetry ratio must be positive, got {}", self.agp_ratio)));
        }
        Ok(())
    }
}

fn sgn(c: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c.signum()
    }
}

/// Envelope value at normalized time C.
pub fn eval_envelope(shape: &PulseShape, c: f64) -> f64 {
    let gauss = (-c * c).exp();
    match shape.kind {
        PulseShapeKind::Gp => INV_SQRT_PI * gauss,
        PulseShapeKind::Sgp => (-c.powi(shape.sgp_exponent as i32)).exp(),
        PulseShapeKind::Ogp => INV_SQRT_PI * gauss * (OGP_RATE * c).cos(),
        PulseShapeKind::Lgp => c.abs() * gauss,
        PulseShapeKind::Hgp => HGP_SCALE * c * gauss,
        PulseShapeKind::Agp => 0.5 * gauss * (1.0 + libm::erf(shape.agp_ratio * c)),
    }
}

/// Exact d f/dt at normalized time C for a window of duration T.
pub fn eval_envelope_derivative(shape: &PulseShape, c: f64, duration: f64) -> f64 {
    let gauss = (-c * c).exp();
    match shape.kind {
        PulseShapeKind::Gp => INV_SQRT_PI * (-2.0 * c / duration) * gauss,
        PulseShapeKind::Sgp => {
            let n = shape.sgp_exponent as i32;
            -(n as f64) * c.powi(n - 1) / duration * (-c.powi(n)).exp()
        }
        PulseShapeKind::Ogp => {
            INV_SQRT_PI
                * ((-2.0 * c / duration) * gauss * (OGP_RATE * c).cos()
                    - OGP_RATE / duration * gauss * (OGP_RATE * c).sin())
        }
        PulseShapeKind::Lgp => gauss * (sgn(c) / duration - 2.0 * c.abs() * c / duration),
        PulseShapeKind::Hgp => HGP_SCALE / duration * gauss * (1.0 - 2.0 * c * c),
        PulseShapeKind::Agp => {
            let r = shape.agp_ratio;
            (-c / duration) * gauss * (1.0 + libm::erf(r * c))
                + r / (PI.sqrt() * duration) * gauss * (-(r * c) * (r * c)).exp()
        }
    }
}

// --- Windows and schedules ---------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PulseWindow {
    pub center: f64,
    pub duration: f64,
    pub amplitude_scale: f64,
}

impl PulseWindow {
    pub fn new(center: f64, duration: f64) -> Self {
        Self { center, duration, amplitude_scale: 1.0 }
    }

    pub fn with_scale(center: f64, duration: f64, amplitude_scale: f64) -> Self {
        Self { center, duration, amplitude_scale }
    }

    fn normalized(&self, t: f64) -> f64 {
        (t - self.center) / self.duration
    }

    /// Ownership interval [t_c − T/2, t_c + T/2) used by sequential schedules.
    fn owns(&self, t: f64) -> bool {
        t >= self.center - 0.5 * self.duration && t < self.center + 0.5 * self.duration
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineMode {
    /// Sum of all window contributions.
    Superpose,
    /// Value of the unique window owning t on [t_c − T/2, t_c + T/2), else 0.
    Sequential,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EnvelopeSchedule {
    shape: PulseShape,
    windows: Vec<PulseWindow>,
    combine: CombineMode,
}

impl EnvelopeSchedule {
    pub fn new(shape: PulseShape, windows: Vec<PulseWindow>, combine: CombineMode) -> Result<Self> {
        shape.validate()?;
        for w in &windows {
            if !(w.duration > 0.0) {
                return Err(Error::InvalidConfig(format!("window duration must be positive, got {}", w.duration)));
            }
        }
        if combine == CombineMode::Sequential {
            let mut spans: Vec<(f64, f64)> =
                windows.iter().map(|w| (w.center - 0.5 * w.duration, w.center + 0.5 * w.duration)).collect();
            spans.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for pair in spans.windows(2) {
                if pair[1].0 < pair[0].1 - 1e-12 {
                    return Err(Error::InvalidConfig(format!(
                        "sequential windows overlap on [{:.6}, {:.6}]",
                        pair[1].0, pair[0].1
                    )));
                }
            }
        }
        Ok(Self { shape, windows, combine })
    }

    pub fn single(shape: PulseShape, center: f64, duration: f64) -> Result<Self> {
        Self::new(shape, vec![PulseWindow::new(center, duration)], CombineMode::Superpose)
    }

    /// Empty schedule; evaluates to 0 everywhere.
    pub fn silent(shape: PulseShape) -> Self {
        Self { shape, windows: Vec::new(), combine: CombineMode::Superpose }
    }

    pub fn shape(&self) -> &PulseShape {
        &self.shape
    }

    pub fn windows(&self) -> &[PulseWindow] {
        &self.windows
    }

    pub fn combine(&self) -> CombineMode {
        self.combine
    }

    pub fn value(&self, t: f64) -> f64 {
        match self.combine {
            CombineMode::Superpose => self
                .windows
                .iter()
                .map(|w| w.amplitude_scale * eval_envelope(&self.shape, w.normalized(t)))
                .sum(),
            CombineMode::Sequential => self
                .windows
                .iter()
                .find(|w| w.owns(t))
                .map(|w| w.amplitude_scale * eval_envelope(&self.shape, w.normalized(t)))
                .unwrap_or(0.0),
        }
    }

    /// d/dt of [`Self::value`] with the same combine semantics.
    pub fn derivative(&self, t: f64) -> f64 {
        match self.combine {
            CombineMode::Superpose => self
                .windows
                .iter()
                .map(|w| w.amplitude_scale * eval_envelope_derivative(&self.shape, w.normalized(t), w.duration))
                .sum(),
            CombineMode::Sequential => self
                .windows
                .iter()
                .find(|w| w.owns(t))
                .map(|w| w.amplitude_scale * eval_envelope_derivative(&self.shape, w.normalized(t), w.duration))
                .unwrap_or(0.0),
        }
    }

    /// Shaded regions [t_c − 3T, t_c + 3T] used for reporting.
    pub fn shading_intervals(&self) -> Vec<(f64, f64)> {
        self.windows.iter().map(|w| (w.center - 3.0 * w.duration, w.center + 3.0 * w.duration)).collect()
    }

    /// Shortest window duration, if any; drives the integrator step cap.
    pub fn min_duration(&self) -> Option<f64> {
        self.windows.iter().map(|w| w.duration).fold(None, |acc, d| Some(acc.map_or(d, |a: f64| a.min(d))))
    }
}
