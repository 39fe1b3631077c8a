//! Action kernels, relational sources and the self-consistency check.
//!
//! The kernel is `A = β ∂₁∂₁ᵀ`, the graph Laplacian (degree minus
//! adjacency) scaled by `β`. Sources are built from edge values as
//! `J = α ∂₁e`. If the edge values are themselves differences of vertex
//! values, `e = ∂₁ᵀv`, then `∂₁∂₁ᵀ v = ∂₁ e` holds identically, so
//! `A v = (β/α) J`. [`check_scc`] measures how far that identity is from
//! holding in floating point.

use num_traits::Num;

use crate::chain_complex::{boundary1, CellComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Real, Scalar, SourceValue};

/// Entries with magnitude at or below this are "zero" in [`structural_match`].
pub const STRUCTURAL_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ActionKernel<T> {
    pub matrix: Matrix<T>,
    pub scale_beta: T,
}

impl<T: Scalar> ActionKernel<T> {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.dim())
            .map(|i| self.matrix.row(i).iter().fold(T::zero(), |acc, &x| acc + x))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let m = &self.matrix;
        (0..m.rows()).all(|i| (0..i).all(|j| m[(i, j)] == m[(j, i)]))
    }
}

/// `β ∂₁∂₁ᵀ`, computed exactly in integers before scaling.
pub fn action_kernel<T: Scalar>(complex: &CellComplex, beta: T) -> ActionKernel<T> {
    let d1 = boundary1(complex);
    let laplacian = d1.matmul(&d1.transpose()).expect("∂₁ ∂₁ᵀ is square");
    ActionKernel { matrix: laplacian.map(|x| T::from_entry(x) * beta), scale_beta: beta }
}

/// Vertex-indexed source derived from edge values.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceVector<V> {
    pub values: Vec<V>,
    pub scale_alpha: V,
    pub edge_values: Vec<V>,
}

impl<V: Num + Copy> SourceVector<V> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn total(&self) -> V {
        self.values.iter().fold(V::zero(), |acc, &x| acc + x)
    }
}

/// `α ∂₁ e`.
pub fn source_vector<V: Num + Copy>(
    complex: &CellComplex,
    edge_values: &[V],
    alpha: V,
) -> Result<SourceVector<V>> {
    if edge_values.len() != complex.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: complex.edge_count(),
            found: edge_values.len(),
        });
    }
    let mut values = vec![V::zero(); complex.vertex_count()];
    for (edge, &e) in complex.edges().iter().zip(edge_values) {
        let flow = alpha * e;
        values[edge.head] = values[edge.head] + flow;
        values[edge.tail] = values[edge.tail] - flow;
    }
    Ok(SourceVector { values, scale_alpha: alpha, edge_values: edge_values.to_vec() })
}

/// The pair (½A, J); contracting it with a configuration gives the action.
#[derive(Debug, Clone, PartialEq)]
pub struct Actional<T, V> {
    kernel: ActionKernel<T>,
    source: SourceVector<V>,
}

impl<T: Scalar, V: Num + Copy + std::ops::Mul<T, Output = V>> Actional<T, V> {
    pub fn new(kernel: ActionKernel<T>, source: SourceVector<V>) -> Result<Self> {
        if kernel.dim() != source.dim() {
            return Err(Error::DimensionMismatch { expected: kernel.dim(), found: source.dim() });
        }
        Ok(Self { kernel, source })
    }

    pub fn kernel(&self) -> &ActionKernel<T> {
        &self.kernel
    }

    pub fn source(&self) -> &SourceVector<V> {
        &self.source
    }

    /// `½ q·A·q + J·q`.
    pub fn evaluate(&self, q: &[V]) -> Result<V> {
        let aq = self.kernel.matrix.apply(q)?;
        let two = V::one() + V::one();
        let quadratic = q.iter().zip(&aq).fold(V::zero(), |acc, (&x, &y)| acc + x * y) / two;
        let linear = q.iter().zip(&self.source.values).fold(V::zero(), |acc, (&x, &j)| acc + x * j);
        Ok(quadratic + linear)
    }
}

/// `‖∂₁∂₁ᵀ v − ∂₁(∂₁ᵀ v)‖₂`.
pub fn check_scc<T: Real, V: SourceValue<T>>(complex: &CellComplex, vertex_values: &[V]) -> Result<T> {
    if vertex_values.len() != complex.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: complex.vertex_count(),
            found: vertex_values.len(),
        });
    }
    let d1: Matrix<T> = boundary1(complex).map(T::from_entry);
    let laplacian = action_kernel(complex, T::one()).matrix;
    let lhs = laplacian.apply(vertex_values)?;
    let edges = d1.transpose().apply(vertex_values)?;
    let rhs = d1.apply(&edges)?;
    Ok(lhs
        .iter()
        .zip(&rhs)
        .map(|(&a, &b)| {
            let d = (a - b).norm();
            d * d
        })
        .sum::<T>()
        .sqrt())
}

/// Two coupled oscillators discretized on a time lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams<T> {
    pub mass: T,
    pub spring: T,
    pub coupling: T,
    pub time_step: T,
}

impl<T: Scalar> OscillatorParams<T> {
    pub fn new(mass: T, spring: T, coupling: T, time_step: T) -> Result<Self> {
        let zero = T::zero();
        if !(mass > zero) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass:?}")));
        }
        if !(time_step > zero) {
            return Err(Error::InvalidParameter(format!(
                "time step must be positive, got {time_step:?}"
            )));
        }
        if !(spring > zero) {
            return Err(Error::InvalidParameter(format!("spring must be positive, got {spring:?}")));
        }
        if spring + coupling < zero {
            return Err(Error::InvalidParameter(format!(
                "k + k12 must be non-negative (k = k1 + k3, k12 = -k3), got {spring:?} + {coupling:?}"
            )));
        }
        Ok(Self { mass, spring, coupling, time_step })
    }
}

/// Discrete-action matrix of two coupled oscillators over `n_time` slices,
/// ordered like [`build_ladder`](crate::build_ladder) vertices.
pub fn oscillator_kernel<T: Scalar>(params: &OscillatorParams<T>, n_time: usize) -> Result<Matrix<T>> {
    if n_time < 2 {
        return Err(Error::InvalidSize(format!("oscillator kernel needs n_time >= 2, got {n_time}")));
    }
    let n = n_time;
    let kinetic = params.mass / params.time_step;
    let potential = params.spring * params.time_step;
    let coupling = params.coupling * params.time_step;

    let mut a = Matrix::zeros(2 * n, 2 * n);
    for w in 0..2 {
        for t in 0..n {
            let i = w * n + t;
            let endpoint = t == 0 || t == n - 1;
            a[(i, i)] = if endpoint { kinetic + potential } else { kinetic + kinetic + potential };
            if t + 1 < n {
                a[(i, i + 1)] = -kinetic;
                a[(i + 1, i)] = -kinetic;
            }
        }
    }
    for t in 0..n {
        a[(t, n + t)] = coupling;
        a[(n + t, t)] = coupling;
    }
    Ok(a)
}

/// Same zero pattern and same signs entrywise.
pub fn structural_match<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.rows() * a.cols(),
            found: b.rows() * b.cols(),
        });
    }
    let threshold = T::from_f64(STRUCTURAL_ZERO).unwrap_or_else(T::zero);
    let sign = |x: T| {
        if x.magnitude() <= threshold {
            0
        } else if x > T::zero() {
            1
        } else {
            -1
        }
    };
    Ok(a.as_slice().iter().zip(b.as_slice()).all(|(&x, &y)| sign(x) == sign(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_complex::{build_ladder, Edge};
    use crate::scalar::Rational;
    use num_complex::Complex64;

    pub(crate) fn eq10() -> Matrix<f64> {
        Matrix::from_rows(&[
            [2.0, -1.0, 0.0, -1.0, 0.0, 0.0],
            [-1.0, 3.0, -1.0, 0.0, -1.0, 0.0],
            [0.0, -1.0, 2.0, 0.0, 0.0, -1.0],
            [-1.0, 0.0, 0.0, 2.0, -1.0, 0.0],
            [0.0, -1.0, 0.0, -1.0, 3.0, -1.0],
            [0.0, 0.0, -1.0, 0.0, -1.0, 2.0],
        ])
    }

    fn single_edge() -> CellComplex {
        CellComplex::new(
            vec!["a".into(), "b".into()],
            vec![Edge { id: "e".into(), tail: 0, head: 1 }],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_reference_graph() {
        let k = action_kernel(&build_ladder(3).unwrap(), 1.0);
        assert_eq!(k.matrix, eq10());
        assert!(k.is_symmetric());
        assert!(k.row_sums().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn single_edge_kernel() {
        let k = action_kernel(&single_edge(), 1);
        assert_eq!(k.matrix, Matrix::from_rows(&[[1, -1], [-1, 1]]));
    }

    #[test]
    fn source_first_component_is_minus_e1_minus_e4() {
        let c = build_ladder(3).unwrap();
        // powers of two keep the components distinguishable
        let e: Vec<f64> = (0..7).map(|i| f64::from(1 << i)).collect();
        let j = source_vector(&c, &e, 1.0).unwrap();
        let [e1, e2, e3, e4, e5, e6, e7] = [e[0], e[1], e[2], e[3], e[4], e[5], e[6]];
        assert_eq!(
            j.values,
            vec![-e1 - e4, e1 + e2 - e3, e3 - e7, e4 - e5, -e2 + e5 - e6, e6 + e7]
        );
        assert_eq!(j.total(), 0.0);
    }

    #[test]
    fn zero_edges_give_zero_source() {
        let c = build_ladder(4).unwrap();
        let j = source_vector(&c, &vec![0.0; c.edge_count()], 2.5).unwrap();
        assert!(j.values.iter().all(|&x| x == 0.0));
        assert!(source_vector(&c, &[1.0, 2.0], 1.0).is_err());
    }

    #[test]
    fn complex_edge_values_are_supported() {
        let c = build_ladder(3).unwrap();
        let e: Vec<Complex64> = (0..7).map(|i| Complex64::new(i as f64, 1.0 - i as f64)).collect();
        let j = source_vector(&c, &e, Complex64::new(0.0, 1.0)).unwrap();
        assert!(j.total().norm() < 1e-14);
        let v: Vec<Complex64> = (0..6).map(|i| Complex64::new(0.5 * i as f64, -1.0)).collect();
        assert!(check_scc::<f64, _>(&c, &v).unwrap() < 1e-12);
    }

    #[test]
    fn uniform_vertex_values_have_zero_residual() {
        let c = build_ladder(3).unwrap();
        assert_eq!(check_scc::<f64, f64>(&c, &[1.0; 6]).unwrap(), 0.0);
        assert!(check_scc::<f64, f64>(&c, &[1.0; 5]).is_err());
    }

    #[test]
    fn oscillator_kernel_matches_generic_form() {
        let (m, k, k12, dt) = (1.5, 0.7, -0.3, 0.1);
        let p = OscillatorParams::new(m, k, k12, dt).unwrap();
        let a = oscillator_kernel(&p, 3).unwrap();
        let (end, mid, off, c) = (m / dt + k * dt, 2.0 * m / dt + k * dt, -m / dt, k12 * dt);
        let expected = Matrix::from_rows(&[
            [end, off, 0.0, c, 0.0, 0.0],
            [off, mid, off, 0.0, c, 0.0],
            [0.0, off, end, 0.0, 0.0, c],
            [c, 0.0, 0.0, end, off, 0.0],
            [0.0, c, 0.0, off, mid, off],
            [0.0, 0.0, c, 0.0, off, end],
        ]);
        assert_eq!(a, expected);
        assert!(structural_match(&a, &eq10()).unwrap());
    }

    #[test]
    fn unit_parameters_reproduce_laplacian_exactly() {
        let one = Rational::from_integer(1);
        let dt = Rational::new(1, 4);
        // m/Δt = 1, kΔt = 1, k12Δt = -1
        let p = OscillatorParams::new(one * dt, one / dt, -one / dt, dt).unwrap();
        let a = oscillator_kernel(&p, 3).unwrap();
        let lap = action_kernel(&build_ladder(3).unwrap(), one).matrix;
        assert_eq!(a, lap);
    }

    #[test]
    fn zero_coupling_decouples_worldlines() {
        let p = OscillatorParams::new(1.0, 2.0, 0.0, 0.5).unwrap();
        let a = oscillator_kernel(&p, 4).unwrap();
        for i in 0..4 {
            for j in 4..8 {
                assert_eq!(a[(i, j)], 0.0);
                assert_eq!(a[(j, i)], 0.0);
            }
        }
    }

    #[test]
    fn oscillator_parameter_validation() {
        assert!(OscillatorParams::new(0.0, 1.0, -0.5, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, -0.5, 0.0).is_err());
        assert!(OscillatorParams::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, -2.0, 1.0).is_err());
        let p = OscillatorParams::new(1.0, 1.0, -0.5, 1.0).unwrap();
        assert!(oscillator_kernel(&p, 1).is_err());
    }

    #[test]
    fn structural_match_cases() {
        assert!(!structural_match(&Matrix::identity(6), &eq10()).unwrap());
        assert!(structural_match(&Matrix::<f64>::identity(2), &eq10()).is_err());
        let p = OscillatorParams::new(2.0, 3.0, -1.0, 0.2).unwrap();
        let a = oscillator_kernel(&p, 7).unwrap();
        let lap = action_kernel(&build_ladder(7).unwrap(), 1.0).matrix;
        assert!(structural_match(&a, &lap).unwrap());
    }

    #[test]
    fn actional_evaluates_quadratic_plus_linear() {
        let c = build_ladder(2).unwrap();
        let kernel = action_kernel(&c, 1.0);
        let source = source_vector(&c, &[1.0, 0.0, 0.0, 0.0], 1.0).unwrap();
        let actional = Actional::new(kernel.clone(), source.clone()).unwrap();
        let q = [1.0, 2.0, 0.0, -1.0];
        let aq = kernel.matrix.apply(&q).unwrap();
        let expected = 0.5 * q.iter().zip(&aq).map(|(a, b)| a * b).sum::<f64>()
            + q.iter().zip(&source.values).map(|(a, b)| a * b).sum::<f64>();
        assert!((actional.evaluate(&q).unwrap() - expected).abs() < 1e-14);
        let other = action_kernel(&build_ladder(3).unwrap(), 1.0);
        assert!(Actional::new(other, source).is_err());
    }
}
