//! Two coupled oscillators in the temporally continuous limit.
//!
//! The Green's function of
//!
//! ```text
//! -[ m d²/dt² + k    k₁₂          ] D(t - t') = δ(t - t') · 1
//!  [ k₁₂             m d²/dt² + k ]
//! ```
//!
//! has Fourier components `A(ω)` on the diagonal and `B(ω)` off it:
//!
//! ```text
//! A = (ω²m − k) / (k₁₂² − (ω²m − k)²)      B = k₁₂ / (k₁₂² − (ω²m − k)²)
//! ```
//!
//! Dropping self-interaction and taking a monochromatic first source
//! `j₁(ω)* = Γ δ(ω − ω₀)`, the two-source amplitude is `exp(i φ)` with
//! `φ = Γ k₁₂ j₂(ω₀) / (2πħ (k₁₂² − (ω₀²m − k)²))`. The `1/(2πħ)` here is
//! the `dω/2π` of the frequency integral times the `1/ħ` of the action.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Poles closer than this (relative to the larger denominator term) are resonant.
pub const RESONANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorPair<T> {
    pub mass: T,
    pub spring: T,
    pub coupling: T,
    pub hbar: T,
}

impl<T: Real> OscillatorPair<T> {
    pub fn new(mass: T, spring: T, coupling: T) -> Result<Self> {
        Self::with_hbar(mass, spring, coupling, T::one())
    }

    pub fn with_hbar(mass: T, spring: T, coupling: T, hbar: T) -> Result<Self> {
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
        }
        if !(hbar > T::zero()) || !hbar.is_finite() {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        if !spring.is_finite() || !coupling.is_finite() {
            return Err(Error::InvalidParameter("spring and coupling must be finite".into()));
        }
        Ok(Self { mass, spring, coupling, hbar })
    }

    /// `ω²m − k`
    pub fn detuning(&self, omega: T) -> T {
        omega * omega * self.mass - self.spring
    }

    /// `k₁₂² − (ω²m − k)²`, or a resonance error near its zeros.
    pub fn denominator(&self, omega: T) -> Result<T> {
        denominator(self.mass, self.spring, self.coupling, omega)
    }
}

/// `k_c² − (ω²m − k)²` in factored form, with the resonance check.
pub(crate) fn denominator<T: Real>(mass: T, spring: T, coupling: T, omega: T) -> Result<T> {
    let u = omega * omega * mass - spring;
    let den = (coupling - u) * (coupling + u);
    let scale = (coupling * coupling).max(u * u);
    if den.abs() <= T::lit(RESONANCE_TOLERANCE) * scale || !den.is_finite() {
        return Err(Error::Resonance {
            omega: omega.to_f64().unwrap_or(f64::NAN),
            denominator: den.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(den)
}

/// Diagonal Fourier component `A(ω)`.
pub fn response_a<T: Real>(pair: &OscillatorPair<T>, omega: T) -> Result<T> {
    Ok(pair.detuning(omega) / pair.denominator(omega)?)
}

/// Off-diagonal Fourier component `B(ω)`.
pub fn response_b<T: Real>(pair: &OscillatorPair<T>, omega: T) -> Result<T> {
    Ok(pair.coupling / pair.denominator(omega)?)
}

/// Largest deviation of `[[k − mω², k₁₂], [k₁₂, k − mω²]] · [A, B]ᵀ` from `[1, 0]ᵀ`.
pub fn greens_identity_residual<T: Real>(pair: &OscillatorPair<T>, omega: T) -> Result<T> {
    let a = response_a(pair, omega)?;
    let b = response_b(pair, omega)?;
    let diag = -pair.detuning(omega);
    let first = (diag * a + pair.coupling * b - T::one()).abs();
    let second = (diag * b + pair.coupling * a).abs();
    Ok(first.max(second))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonochromaticSource<T> {
    pub gamma: Complex<T>,
    pub omega0: T,
}

impl<T: Real> MonochromaticSource<T> {
    pub fn new(gamma: Complex<T>, omega0: T) -> Result<Self> {
        if !(gamma.re.is_finite() && gamma.im.is_finite()) {
            return Err(Error::InvalidParameter("source strength must be finite".into()));
        }
        if !(omega0 >= T::zero()) || !omega0.is_finite() {
            return Err(Error::InvalidParameter(format!("omega0 must be finite and >= 0, got {omega0}")));
        }
        Ok(Self { gamma, omega0 })
    }
}

/// Coefficient `φ` of `i` in the two-source exponent; real for real inputs.
pub fn two_source_phase<T: Real>(
    pair: &OscillatorPair<T>,
    source: &MonochromaticSource<T>,
    j2_at_omega0: Complex<T>,
) -> Result<Complex<T>> {
    let den = pair.denominator(source.omega0)?;
    let scale = pair.coupling / (T::TAU() * pair.hbar * den);
    Ok(source.gamma * j2_at_omega0 * scale)
}
