//! Oriented 2D cell complexes and their integer boundary operators.
//!
//! Edges carry an orientation `tail → head`, so `∂₁ e = head − tail`.
//! Plaquettes are signed edge chains, and `∂₂ p` is that chain read as a
//! column of edge coefficients. A plaquette whose chain is not a cycle still
//! constructs; [`verify_chain`] reports it as a nonzero entry of `∂₁∂₂`.
//!
//! # Ladder ordering
//!
//! [`build_ladder`] produces two worldlines of `n` time slices joined by one
//! spatial rung per slice. Vertices are worldline-major: `v(w, t)` has index
//! `w·n + t`. Temporal edges point toward increasing `t`. Rung `t` points
//! from worldline 0 to worldline 1 when `t` is even and back when `t` is odd.
//!
//! Edges are listed by walking worldline 0 with the interior rungs
//! interleaved (`T₀(0), R(1), T₀(1), …, R(n−2), T₀(n−2)`), then rung `R(0)`,
//! then worldline 1's temporal edges, then the last rung `R(n−1)`. For
//! `n = 3` this is the familiar seven-link, two-plaquette graph:
//!
//! ```text
//!   v3 ──e7──▶ v6
//!   ▲           ▲
//!   e3    p2    e6
//!   │           │
//!   v2 ◀──e2── v5
//!   ▲           ▲
//!   e1    p1    e5
//!   │           │
//!   v1 ──e4──▶ v4
//! ```
//!
//! Every plaquette circulates the same way (rung `t`, up worldline 1, back
//! along rung `t+1`, down worldline 0); with alternating rungs this makes the
//! rung signs alternate from one plaquette to the next.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Boundary operators have entries in {-1, 0, +1}.
pub type IntegerMatrix = Matrix<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plaquette {
    pub id: String,
    /// `(edge index, ±1)` pairs.
    pub chain: Vec<(usize, i32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    plaquettes: Vec<Plaquette>,
}

fn check_unique<'a>(kind: &str, ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::InvalidComplex(format!("duplicate {kind} id {id:?}")));
        }
    }
    Ok(())
}

impl CellComplex {
    /// Validates ids and references. Closure of plaquette chains is left to
    /// [`verify_chain`].
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>, plaquettes: Vec<Plaquette>) -> Result<Self> {
        check_unique("vertex", vertices.iter().map(String::as_str))?;
        check_unique("edge", edges.iter().map(|e| e.id.as_str()))?;
        check_unique("plaquette", plaquettes.iter().map(|p| p.id.as_str()))?;

        let nv = vertices.len();
        for e in &edges {
            if e.tail >= nv || e.head >= nv {
                return Err(Error::InvalidComplex(format!(
                    "edge {:?} references a vertex outside 0..{nv}",
                    e.id
                )));
            }
            if e.tail == e.head {
                return Err(Error::InvalidComplex(format!("edge {:?} is a self-loop", e.id)));
            }
        }

        let ne = edges.len();
        for p in &plaquettes {
            let mut used = HashSet::new();
            for &(edge, sign) in &p.chain {
                if edge >= ne {
                    return Err(Error::InvalidComplex(format!(
                        "plaquette {:?} references an edge outside 0..{ne}",
                        p.id
                    )));
                }
                if sign != 1 && sign != -1 {
                    return Err(Error::InvalidComplex(format!(
                        "plaquette {:?} has sign {sign}; expected ±1",
                        p.id
                    )));
                }
                if !used.insert(edge) {
                    return Err(Error::InvalidComplex(format!(
                        "plaquette {:?} lists edge {:?} twice",
                        p.id, edges[edge].id
                    )));
                }
            }
        }

        Ok(Self { vertices, edges, plaquettes })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn plaquettes(&self) -> &[Plaquette] {
        &self.plaquettes
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn plaquette_count(&self) -> usize {
        self.plaquettes.len()
    }

    /// Side-by-side union; ids of each part get `prefix_a` / `prefix_b`.
    pub fn disjoint_union(&self, other: &Self, prefix_a: &str, prefix_b: &str) -> Result<Self> {
        let nv = self.vertex_count();
        let ne = self.edge_count();
        let rename = |p: &str, id: &str| format!("{p}{id}");

        let vertices = self
            .vertices
            .iter()
            .map(|v| rename(prefix_a, v))
            .chain(other.vertices.iter().map(|v| rename(prefix_b, v)))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { id: rename(prefix_a, &e.id), ..e.clone() })
            .chain(other.edges.iter().map(|e| Edge {
                id: rename(prefix_b, &e.id),
                tail: e.tail + nv,
                head: e.head + nv,
            }))
            .collect();
        let plaquettes = self
            .plaquettes
            .iter()
            .map(|p| Plaquette { id: rename(prefix_a, &p.id), chain: p.chain.clone() })
            .chain(other.plaquettes.iter().map(|p| Plaquette {
                id: rename(prefix_b, &p.id),
                chain: p.chain.iter().map(|&(e, s)| (e + ne, s)).collect(),
            }))
            .collect();
        Self::new(vertices, edges, plaquettes)
    }

    /// Copy with one plaquette's orientation reversed on a single edge.
    pub fn with_flipped_sign(&self, plaquette: usize, position: usize) -> Result<Self> {
        let mut out = self.clone();
        let p = out
            .plaquettes
            .get_mut(plaquette)
            .ok_or(Error::IndexOutOfRange { index: plaquette, len: self.plaquette_count() })?;
        let len = p.chain.len();
        let entry = p.chain.get_mut(position).ok_or(Error::IndexOutOfRange { index: position, len })?;
        entry.1 = -entry.1;
        Ok(out)
    }
}

/// V×E incidence matrix: `-1` at the tail row, `+1` at the head row.
pub fn boundary1(complex: &CellComplex) -> IntegerMatrix {
    let mut d = IntegerMatrix::zeros(complex.vertex_count(), complex.edge_count());
    for (j, e) in complex.edges.iter().enumerate() {
        d[(e.tail, j)] = -1;
        d[(e.head, j)] = 1;
    }
    d
}

/// E×P matrix whose columns are the plaquettes' signed edge chains.
pub fn boundary2(complex: &CellComplex) -> IntegerMatrix {
    let mut d = IntegerMatrix::zeros(complex.edge_count(), complex.plaquette_count());
    for (j, p) in complex.plaquettes.iter().enumerate() {
        for &(edge, sign) in &p.chain {
            d[(edge, j)] = sign;
        }
    }
    d
}

/// Two-worldline ladder with `n_time` slices.
pub fn build_ladder(n_time: usize) -> Result<CellComplex> {
    if n_time < 2 {
        return Err(Error::InvalidSize(format!("ladder needs n_time >= 2, got {n_time}")));
    }
    let n = n_time;
    let vertex = |w: usize, t: usize| w * n + t;
    let rung = |t: usize| {
        if t.is_multiple_of(2) {
            (vertex(0, t), vertex(1, t))
        } else {
            (vertex(1, t), vertex(0, t))
        }
    };

    #[derive(Clone, Copy)]
    enum Link {
        Temporal(usize, usize),
        Rung(usize),
    }

    let mut order = Vec::with_capacity(3 * n - 2);
    for t in 0..n - 1 {
        if t > 0 {
            order.push(Link::Rung(t));
        }
        order.push(Link::Temporal(0, t));
    }
    order.push(Link::Rung(0));
    order.extend((0..n - 1).map(|t| Link::Temporal(1, t)));
    order.push(Link::Rung(n - 1));

    let mut temporal_index = vec![[0usize; 2]; n - 1];
    let mut rung_index = vec![0usize; n];
    let edges = order
        .iter()
        .enumerate()
        .map(|(i, link)| {
            let (tail, head) = match *link {
                Link::Temporal(w, t) => {
                    temporal_index[t][w] = i;
                    (vertex(w, t), vertex(w, t + 1))
                }
                Link::Rung(t) => {
                    rung_index[t] = i;
                    rung(t)
                }
            };
            Edge { id: format!("e{}", i + 1), tail, head }
        })
        .collect();

    // rung t traversed 0 → 1, worldline 1 upward, rung t+1 traversed 1 → 0,
    // worldline 0 downward
    let plaquettes = (0..n - 1)
        .map(|t| {
            let forward = if t % 2 == 0 { 1 } else { -1 };
            Plaquette {
                id: format!("p{}", t + 1),
                chain: vec![
                    (temporal_index[t][0], -1),
                    (rung_index[t + 1], forward),
                    (rung_index[t], forward),
                    (temporal_index[t][1], 1),
                ],
            }
        })
        .collect();

    let vertices = (0..2 * n).map(|i| format!("v{}", i + 1)).collect();
    CellComplex::new(vertices, edges, plaquettes)
}

/// First nonzero entry of `∂₁∂₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainViolation {
    pub vertex: usize,
    pub plaquette: usize,
    pub value: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub violation: Option<ChainViolation>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `∂₁∂₂ = 0`.
pub fn verify_chain(complex: &CellComplex) -> ChainReport {
    let product = boundary1(complex)
        .matmul(&boundary2(complex))
        .expect("∂₁ and ∂₂ share the edge dimension");
    ChainReport {
        violation: product
            .first_nonzero()
            .map(|(vertex, plaquette, value)| ChainViolation { vertex, plaquette, value }),
    }
}
