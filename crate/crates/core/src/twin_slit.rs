//! Twin-slit interference from four coupled sources, next to the
//! free-particle two-path amplitude it reproduces.
//!
//! Source 1 drives the two slits (sources 2 and 4), which both couple to the
//! detector (source 3). Only the chains 1–2–3 and 1–4–3 are kept and each
//! slit is a single source, so diffraction is ignored. Each link `(i, m)`
//! has strength `d_im = k_im / (k_im² − (ω₀²m − k)²)` and the amplitude is
//!
//! ```text
//! ψ = exp[i(Γ₁d₁₂j₂ + Γ₂d₂₃j₃)/2πħ] + exp[i(Γ₁d₁₄j₄ + Γ₄d₄₃j₃)/2πħ]
//! ```
//!
//! The free-particle comparison uses `ψ = exp(ipx₂₃/2ħ) + exp(ipx₄₃/2ħ)`
//! with path lengths from each slit to the detector. The half in `px/2ħ` is
//! kept, so bright fringes on a far screen are spaced `2 · (2πħ/p) · L / d`,
//! twice the usual `λL/d`.
//!
//! Equating arm phases, `p x_ik / 2ħ = Γᵢ d_ik j_k / 2πħ`, gives a
//! separation `x_im ∝ Γᵢ d_im` known only up to the impulse-per-momentum
//! constant; [`separation_map`] takes that constant from the caller.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::propagator::denominator;
use crate::scalar::Real;

/// Far-field holds when every path is at least this many `ħ/p` long.
pub const FAR_FIELD_RATIO: f64 = 100.0;

/// The four links kept in the amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourcePair {
    OneTwo,
    OneFour,
    TwoThree,
    FourThree,
}

impl SourcePair {
    /// Accepts either order; 1-based source indices.
    pub fn from_indices(i: usize, m: usize) -> Result<Self> {
        match (i.min(m), i.max(m)) {
            (1, 2) => Ok(Self::OneTwo),
            (1, 4) => Ok(Self::OneFour),
            (2, 3) => Ok(Self::TwoThree),
            (3, 4) => Ok(Self::FourThree),
            _ => Err(Error::UnknownPair(i, m)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwinSlitConfig<T> {
    pub gamma1: Complex<T>,
    pub gamma2: Complex<T>,
    pub gamma4: Complex<T>,
    pub j2: Complex<T>,
    pub j3: Complex<T>,
    pub j4: Complex<T>,
    pub k12: T,
    pub k14: T,
    pub k23: T,
    pub k43: T,
    pub mass: T,
    pub spring: T,
    pub omega0: T,
    pub hbar: T,
}

impl<T: Real> TwinSlitConfig<T> {
    pub fn coupling(&self, pair: SourcePair) -> T {
        match pair {
            SourcePair::OneTwo => self.k12,
            SourcePair::OneFour => self.k14,
            SourcePair::TwoThree => self.k23,
            SourcePair::FourThree => self.k43,
        }
    }

    /// Γ for 1-based source index 1, 2 or 4.
    pub fn gamma(&self, source: usize) -> Result<Complex<T>> {
        match source {
            1 => Ok(self.gamma1),
            2 => Ok(self.gamma2),
            4 => Ok(self.gamma4),
            _ => Err(Error::InvalidParameter(format!("source {source} has no strength Γ"))),
        }
    }

    pub fn strength(&self, pair: SourcePair) -> Result<T> {
        let k = self.coupling(pair);
        Ok(k / denominator(self.mass, self.spring, k, self.omega0)?)
    }

    fn scale(&self) -> T {
        (T::TAU() * self.hbar).recip()
    }

    /// Exponent coefficients of `i` for the 1–2–3 and 1–4–3 arms.
    pub fn arm_exponents(&self) -> Result<(Complex<T>, Complex<T>)> {
        let d12 = self.strength(SourcePair::OneTwo)?;
        let d14 = self.strength(SourcePair::OneFour)?;
        let d23 = self.strength(SourcePair::TwoThree)?;
        let d43 = self.strength(SourcePair::FourThree)?;
        let s = self.scale();
        let upper = (self.gamma1 * self.j2 * d12 + self.gamma2 * self.j3 * d23) * s;
        let lower = (self.gamma1 * self.j4 * d14 + self.gamma4 * self.j3 * d43) * s;
        Ok((upper, lower))
    }

    /// Slit-to-detector exponents only (the common source-to-slit phase dropped).
    pub fn coherent_exponents(&self) -> Result<(Complex<T>, Complex<T>)> {
        let d23 = self.strength(SourcePair::TwoThree)?;
        let d43 = self.strength(SourcePair::FourThree)?;
        let s = self.scale();
        Ok((self.gamma2 * self.j3 * d23 * s, self.gamma4 * self.j3 * d43 * s))
    }

    /// Whether `Γ₁d₁₂j₂ = Γ₁d₁₄j₄` within `tol` relative.
    pub fn is_coherent(&self, tol: T) -> Result<bool> {
        let a = self.gamma1 * self.j2 * self.strength(SourcePair::OneTwo)?;
        let b = self.gamma1 * self.j4 * self.strength(SourcePair::OneFour)?;
        Ok((a - b).norm() <= tol * a.norm().max(b.norm()))
    }

    /// Sum of both slit-to-detector phasors under coherent driving.
    pub fn coherent_amplitude(&self) -> Result<Complex<T>> {
        let (a, b) = self.coherent_exponents()?;
        Ok(phasor(a) + phasor(b))
    }

    /// Config whose arm phases equal the free-particle phases `p x / 2ħ`
    /// at one detector. `template` supplies the oscillator constants,
    /// couplings, `Γ₁` and `j₂`; `j₃ = impulse_per_momentum · p`, and `j₄`
    /// is chosen so the slits are driven coherently.
    pub fn matched_to(
        geometry: &ScreenGeometry<T>,
        detector: usize,
        template: &Self,
        impulse_per_momentum: T,
    ) -> Result<Self> {
        if impulse_per_momentum == T::zero() || !impulse_per_momentum.is_finite() {
            return Err(Error::InvalidParameter("impulse per momentum must be finite and nonzero".into()));
        }
        let (x23, x43) = geometry.path_lengths(detector)?;
        let mut c = Self { hbar: geometry.hbar, ..*template };
        let d12 = c.strength(SourcePair::OneTwo)?;
        let d14 = c.strength(SourcePair::OneFour)?;
        let d23 = c.strength(SourcePair::TwoThree)?;
        let d43 = c.strength(SourcePair::FourThree)?;
        for (d, name) in [(d14, "k14"), (d23, "k23"), (d43, "k43")] {
            if d == T::zero() {
                return Err(Error::InvalidParameter(format!("{name} must be nonzero to match a geometry")));
            }
        }
        let j3 = impulse_per_momentum * geometry.momentum;
        c.j3 = Complex::new(j3, T::zero());
        c.j4 = c.j2 * (d12 / d14);
        // Γ d j₃ / 2πħ = p x / 2ħ  ⇒  Γ = π p x / (d j₃)
        let pi_p = T::PI() * geometry.momentum;
        c.gamma2 = Complex::new(pi_p * x23 / (d23 * j3), T::zero());
        c.gamma4 = Complex::new(pi_p * x43 / (d43 * j3), T::zero());
        Ok(c)
    }
}

fn phasor<T: Real>(exponent: Complex<T>) -> Complex<T> {
    (Complex::<T>::i() * exponent).exp()
}

/// `d_im` for 1-based source indices.
pub fn coupling_strength<T: Real>(config: &TwinSlitConfig<T>, i: usize, m: usize) -> Result<T> {
    config.strength(SourcePair::from_indices(i, m)?)
}

/// Unnormalized two-arm amplitude.
pub fn rbw_amplitude<T: Real>(config: &TwinSlitConfig<T>) -> Result<Complex<T>> {
    let (a, b) = config.arm_exponents()?;
    Ok(phasor(a) + phasor(b))
}

/// `constant · Γᵢ d_im`; only ratios between separations are meaningful.
pub fn separation_map<T: Real>(
    config: &TwinSlitConfig<T>,
    i: usize,
    m: usize,
    constant: T,
) -> Result<Complex<T>> {
    let d = coupling_strength(config, i, m)?;
    Ok(config.gamma(i)? * d * constant)
}

/// Slits at `y = ±d/2`, detectors on a screen at distance `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenGeometry<T> {
    pub slit_separation: T,
    pub screen_distance: T,
    pub detector_positions: Vec<T>,
    pub momentum: T,
    pub hbar: T,
}

impl<T: Real> ScreenGeometry<T> {
    pub fn new(
        slit_separation: T,
        screen_distance: T,
        detector_positions: Vec<T>,
        momentum: T,
        hbar: T,
    ) -> Result<Self> {
        for (value, name) in [
            (slit_separation, "slit separation"),
            (screen_distance, "screen distance"),
            (momentum, "momentum"),
            (hbar, "hbar"),
        ] {
            if !(value > T::zero()) || !value.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {value}")));
            }
        }
        if detector_positions.iter().any(|y| !y.is_finite()) {
            return Err(Error::InvalidParameter("detector positions must be finite".into()));
        }
        Ok(Self { slit_separation, screen_distance, detector_positions, momentum, hbar })
    }

    /// `count` detectors evenly spaced over `[-half_width, half_width]`.
    pub fn uniform_screen(
        slit_separation: T,
        screen_distance: T,
        half_width: T,
        count: usize,
        momentum: T,
        hbar: T,
    ) -> Result<Self> {
        let positions = match count {
            0 => Vec::new(),
            1 => vec![T::zero()],
            _ => {
                let span = T::from_usize(count - 1).expect("count");
                // symmetric about 0 so an odd count puts a detector exactly on the axis
                (0..count)
                    .map(|i| {
                        let offset = T::from_usize(2 * i).expect("index") - span;
                        half_width * offset / span
                    })
                    .collect()
            }
        };
        Self::new(slit_separation, screen_distance, positions, momentum, hbar)
    }

    pub fn detector_count(&self) -> usize {
        self.detector_positions.len()
    }

    fn position(&self, detector: usize) -> Result<T> {
        self.detector_positions
            .get(detector)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: detector, len: self.detector_count() })
    }

    /// `(x₂₃, x₄₃)`: distances from the slits at `+d/2` and `-d/2`.
    pub fn path_lengths(&self, detector: usize) -> Result<(T, T)> {
        let y = self.position(detector)?;
        let half = self.slit_separation / T::lit(2.0);
        Ok((self.screen_distance.hypot(y - half), self.screen_distance.hypot(y + half)))
    }

    /// `(p x₂₃ / 2ħ, p x₄₃ / 2ħ)`
    pub fn arm_phases(&self, detector: usize) -> Result<(T, T)> {
        let (a, b) = self.path_lengths(detector)?;
        let k = self.momentum / (T::lit(2.0) * self.hbar);
        Ok((k * a, k * b))
    }

    pub fn phase_difference(&self, detector: usize) -> Result<T> {
        let (a, b) = self.arm_phases(detector)?;
        Ok(a - b)
    }

    /// Detectors whose shorter path is under `FAR_FIELD_RATIO · ħ/p`.
    pub fn far_field_violations(&self) -> Vec<usize> {
        let limit = T::lit(FAR_FIELD_RATIO) * self.hbar / self.momentum;
        (0..self.detector_count())
            .filter(|&i| {
                let (a, b) = self.path_lengths(i).expect("index in range");
                a.min(b) < limit
            })
            .collect()
    }

    /// Small-angle spacing between bright fringes, `4πħL / (p d)`.
    pub fn fringe_spacing(&self) -> T {
        T::lit(2.0) * (T::TAU() * self.hbar / self.momentum) * self.screen_distance / self.slit_separation
    }
}

/// Free-particle two-path amplitude at one detector.
pub fn schrodinger_amplitude<T: Real>(geometry: &ScreenGeometry<T>, detector: usize) -> Result<Complex<T>> {
    let (a, b) = geometry.arm_phases(detector)?;
    Ok(Complex::from_polar(T::one(), a) + Complex::from_polar(T::one(), b))
}

/// `|ψᵢ|²` normalized to unit sum.
pub fn intensity_pattern<T: Real>(amplitudes: &[Complex<T>]) -> Result<Vec<T>> {
    if amplitudes.is_empty() {
        return Err(Error::InvalidSize("intensity pattern needs at least one amplitude".into()));
    }
    let raw: Vec<T> = amplitudes.iter().map(|z| z.norm_sqr()).collect();
    let total: T = raw.iter().copied().sum();
    if total == T::zero() {
        return Err(Error::ZeroIntensity);
    }
    Ok(raw.into_iter().map(|x| x / total).collect())
}
