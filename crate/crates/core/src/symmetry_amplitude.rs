//! Spectral decomposition of the action kernel and the amplitudes built on it.
//!
//! The Laplacian kernel always has the uniform vector in its null space, so
//! the ordinary Gaussian result `((2iπ)^N / det A)^{1/2} exp(-i J·A⁻¹·J / 2)`
//! is undefined. [`symmetry_amplitude`] integrates over the hyperplane
//! orthogonal to the null space instead: the prefactor runs over the nonzero
//! eigenvalues and the phase over the source's components in the eigenbasis.
//! Relational sources (`J = α∂₁e`) have no null-space component, which
//! [`project_sources`] checks.
//!
//! Complex powers take the principal branch: `(2iπ)^n` has argument `n·π/2`
//! reduced into (-π, π] before the square root. For six vertices that gives
//! `(32iπ⁵/90)^{1/2}` with phase π/4.
//!
//! Null spaces of dimension above one (disconnected graphs) are projected
//! out in full; [`SpectralData::zero_mode_count`] records how many.
//!
//! [`Amplitude`] keeps `(ln|Z|, arg Z)` since `∏ aⱼ` overflows quickly on
//! large lattices.

use num_complex::Complex;

use crate::eigen::symmetric_eigen;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Real, SourceValue};
use crate::scc_kernel::{ActionKernel, SourceVector};

/// Relative threshold below which an eigenvalue counts as a zero mode.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-9;

/// Relative bound on a source's null-space component.
const KERNEL_COMPONENT_TOLERANCE: f64 = 1e-9;

/// Relative determinant below which [`gaussian_amplitude`] refuses a kernel.
const SINGULAR_DETERMINANT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData<T> {
    eigenvalues: Vec<T>,
    eigenvectors: Matrix<T>,
    zero_modes: Vec<bool>,
    zero_tolerance: T,
}

impl<T: Real> SpectralData<T> {
    /// Eigendecomposition of any symmetric matrix.
    pub fn from_matrix(matrix: &Matrix<T>, zero_tolerance: T) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        let n = matrix.rows();
        let scale = matrix.as_slice().iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let sym_tol = T::epsilon() * T::lit(64.0) * scale;
        for i in 0..n {
            for j in 0..i {
                let dev = (matrix[(i, j)] - matrix[(j, i)]).abs();
                if dev > sym_tol {
                    return Err(Error::NonSymmetric {
                        row: i,
                        col: j,
                        deviation: dev.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }

        let (ascending, columns) = symmetric_eigen(matrix)?;
        let eigenvalues: Vec<T> = ascending.iter().rev().copied().collect();
        let eigenvectors = Matrix::from_fn(n, n, |j, i| columns[(i, n - 1 - j)]);
        let largest = eigenvalues.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let zero_modes = eigenvalues.iter().map(|a| a.abs() < zero_tolerance * largest || largest == T::zero()).collect();
        Ok(Self { eigenvalues, eigenvectors, zero_modes, zero_tolerance })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Sorted descending.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Row `j` is the unit eigenvector `⟨j|` of `eigenvalues()[j]`.
    pub fn eigenvectors(&self) -> &Matrix<T> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, j: usize) -> &[T] {
        self.eigenvectors.row(j)
    }

    pub fn is_zero_mode(&self, j: usize) -> bool {
        self.zero_modes[j]
    }

    pub fn zero_mode_count(&self) -> usize {
        self.zero_modes.iter().filter(|&&z| z).count()
    }

    pub fn zero_tolerance(&self) -> T {
        self.zero_tolerance
    }

    pub fn largest(&self) -> T {
        self.eigenvalues.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    /// `Σ aⱼ |j⟩⟨j|`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let n = self.dim();
        Matrix::from_fn(n, n, |r, c| {
            (0..n).map(|j| self.eigenvalues[j] * self.eigenvectors[(j, r)] * self.eigenvectors[(j, c)]).sum()
        })
    }
}

pub fn eigendecompose<T: Real>(kernel: &ActionKernel<T>, zero_tolerance: T) -> Result<SpectralData<T>> {
    SpectralData::from_matrix(&kernel.matrix, zero_tolerance)
}

/// Source components `J̃ⱼ = ⟨j|J⟩`, aligned with the spectral ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedSource<V> {
    pub components: Vec<V>,
}

/// Project raw source values; rejects sources with a null-space component.
pub fn project_values<T: Real, V: SourceValue<T>>(
    spectral: &SpectralData<T>,
    values: &[V],
) -> Result<ProjectedSource<V>> {
    if values.len() != spectral.dim() {
        return Err(Error::DimensionMismatch { expected: spectral.dim(), found: values.len() });
    }
    let norm = values.iter().map(|v| v.norm().powi(2)).sum::<T>().sqrt();
    let tol = T::lit(KERNEL_COMPONENT_TOLERANCE).max(T::default_relative_tolerance());
    let limit = tol * norm;

    let components: Vec<V> = (0..spectral.dim())
        .map(|j| {
            spectral
                .eigenvector(j)
                .iter()
                .zip(values)
                .fold(V::zero(), |acc, (&u, &x)| acc + x * u)
        })
        .collect();

    for (j, c) in components.iter().enumerate() {
        if spectral.is_zero_mode(j) && c.norm() > limit {
            return Err(Error::NonzeroKernelComponent {
                mode: j,
                component: c.norm().to_f64().unwrap_or(f64::NAN),
                limit: limit.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(ProjectedSource { components })
}

pub fn project_sources<T: Real, V: SourceValue<T>>(
    spectral: &SpectralData<T>,
    source: &SourceVector<V>,
) -> Result<ProjectedSource<V>> {
    project_values(spectral, &source.values)
}

/// One retained mode's share of the phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeContribution<T, V> {
    pub index: usize,
    pub eigenvalue: T,
    pub component: V,
    /// `J̃ⱼ² / aⱼ`
    pub weight: V,
}

/// `J̃ⱼ²/aⱼ` for every nonzero mode, checking each retained `aⱼ > 0`.
pub fn mode_contributions<T: Real, V: SourceValue<T>>(
    spectral: &SpectralData<T>,
    projected: &ProjectedSource<V>,
) -> Result<Vec<ModeContribution<T, V>>> {
    if projected.components.len() != spectral.dim() {
        return Err(Error::DimensionMismatch {
            expected: spectral.dim(),
            found: projected.components.len(),
        });
    }
    (0..spectral.dim())
        .filter(|&j| !spectral.is_zero_mode(j))
        .map(|j| {
            let a = spectral.eigenvalues[j];
            if a <= T::zero() {
                return Err(Error::NonPositiveEigenvalue {
                    index: j,
                    value: a.to_f64().unwrap_or(f64::NAN),
                });
            }
            let c = projected.components[j];
            Ok(ModeContribution { index: j, eigenvalue: a, component: c, weight: c * c / a })
        })
        .collect()
}

/// Argument of `((2iπ)^n)^{1/2}` on the principal branch, with an extra
/// `π` inside the root when `negative` is set.
fn prefactor_phase<T: Real>(n: usize, negative: bool) -> T {
    let quarter_turns = T::from_usize(n % 4).expect("small integer");
    let mut arg = quarter_turns * T::FRAC_PI_2();
    if negative {
        arg += T::PI();
    }
    arg.wrap_phase() / T::lit(2.0)
}

/// Hyperplane-restricted Gaussian amplitude over the nonzero modes.
pub fn symmetry_amplitude<T: Real, V: SourceValue<T>>(
    spectral: &SpectralData<T>,
    projected: &ProjectedSource<V>,
) -> Result<Amplitude<T>> {
    let modes = mode_contributions(spectral, projected)?;
    let n = modes.len();
    let ln_two_pi = T::TAU().ln();
    let log_det: T = modes.iter().map(|m| m.eigenvalue.ln()).sum();
    let exponent = modes.iter().fold(Complex::new(T::zero(), T::zero()), |acc, m| acc + m.weight.to_complex());

    let half = T::lit(0.5);
    // exp(-i S / 2): Re S rotates, Im S rescales
    let log_modulus = half * (T::from_usize(n).expect("mode count") * ln_two_pi - log_det) + half * exponent.im;
    let phase = prefactor_phase::<T>(n, false) - half * exponent.re;
    Ok(Amplitude::new(log_modulus, phase))
}

/// Plain Gaussian amplitude for an invertible symmetric kernel.
pub fn gaussian_amplitude<T: Real, V: SourceValue<T>>(kernel: &Matrix<T>, source: &[V]) -> Result<Amplitude<T>> {
    if !kernel.is_square() {
        return Err(Error::DimensionMismatch { expected: kernel.rows(), found: kernel.cols() });
    }
    let n = kernel.rows();
    if source.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: source.len() });
    }
    let lu = Lu::new(kernel);
    let row_scale: T = (0..n)
        .map(|i| kernel.row(i).iter().fold(T::zero(), |m, x| m.max(x.abs())).ln())
        .sum();
    let relative_log_det = lu.log_abs_det - row_scale;
    if !lu.log_abs_det.is_finite() || relative_log_det < T::lit(SINGULAR_DETERMINANT).ln() {
        return Err(Error::SingularKernel {
            relative_det: relative_log_det.exp().to_f64().unwrap_or(0.0),
        });
    }

    let x = lu.solve(source);
    let s = source.iter().zip(&x).fold(V::zero(), |acc, (&j, &xi)| acc + j * xi).to_complex();
    let half = T::lit(0.5);
    let log_modulus =
        half * (T::from_usize(n).expect("dimension") * T::TAU().ln() - lu.log_abs_det) + half * s.im;
    let phase = prefactor_phase::<T>(n, lu.negative_det) - half * s.re;
    Ok(Amplitude::new(log_modulus, phase))
}

struct Lu<T> {
    factors: Matrix<T>,
    pivots: Vec<usize>,
    log_abs_det: T,
    negative_det: bool,
}

impl<T: Real> Lu<T> {
    fn new(a: &Matrix<T>) -> Self {
        let n = a.rows();
        let mut f = a.clone();
        let mut pivots: Vec<usize> = (0..n).collect();
        let mut negative = false;
        let mut log_abs_det = T::zero();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| f[(i, k)].abs().partial_cmp(&f[(j, k)].abs()).expect("finite"))
                .expect("non-empty range");
            if p != k {
                for c in 0..n {
                    let tmp = f[(k, c)];
                    f[(k, c)] = f[(p, c)];
                    f[(p, c)] = tmp;
                }
                pivots.swap(k, p);
                negative = !negative;
            }
            let pivot = f[(k, k)];
            if pivot == T::zero() {
                return Self { factors: f, pivots, log_abs_det: T::neg_infinity(), negative_det: negative };
            }
            if pivot < T::zero() {
                negative = !negative;
            }
            log_abs_det += pivot.abs().ln();
            for i in k + 1..n {
                let m = f[(i, k)] / pivot;
                f[(i, k)] = m;
                for c in k + 1..n {
                    f[(i, c)] = f[(i, c)] - m * f[(k, c)];
                }
            }
        }
        Self { factors: f, pivots, log_abs_det, negative_det: negative }
    }

    fn solve<V: SourceValue<T>>(&self, b: &[V]) -> Vec<V> {
        let n = b.len();
        let f = &self.factors;
        let mut y: Vec<V> = self.pivots.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                y[i] = y[i] - y[k] * f[(i, k)];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] = y[i] - y[k] * f[(i, k)];
            }
            y[i] = y[i] / f[(i, i)];
        }
        y
    }
}

/// Complex number stored as `(ln|z|, arg z)` with the phase in (-π, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude<T> {
    pub log_modulus: T,
    pub phase: T,
}

impl<T: Real> Amplitude<T> {
    pub fn new(log_modulus: T, phase: T) -> Self {
        Self { log_modulus, phase: phase.wrap_phase() }
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(z.norm().ln(), z.arg())
    }

    pub fn modulus(&self) -> T {
        self.log_modulus.exp()
    }

    pub fn to_complex(&self) -> Complex<T> {
        Complex::from_polar(self.modulus(), self.phase)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.log_modulus + other.log_modulus, self.phase + other.phase)
    }

    pub fn div(&self, other: &Self) -> Self {
        Self::new(self.log_modulus - other.log_modulus, self.phase - other.phase)
    }

    /// `|Z|²` relative to `other`, computed in log space.
    pub fn probability_ratio(&self, other: &Self) -> T {
        (T::lit(2.0) * (self.log_modulus - other.log_modulus)).exp()
    }

    pub fn is_finite(&self) -> bool {
        self.log_modulus.is_finite() && self.phase.is_finite()
    }
}
