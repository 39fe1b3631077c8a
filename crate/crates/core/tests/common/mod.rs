#![allow(dead_code)]

use chainamp::{build_ladder, CellComplex, Edge, Plaquette};
use rand::seq::SliceRandom;
use rand::Rng;

/// Degree minus adjacency, counted straight from the edge list.
pub fn brute_force_laplacian(c: &CellComplex) -> Vec<Vec<f64>> {
    let n = c.vertex_count();
    let mut lap = vec![vec![0.0; n]; n];
    for e in c.edges() {
        lap[e.tail][e.tail] += 1.0;
        lap[e.head][e.head] += 1.0;
        lap[e.tail][e.head] -= 1.0;
        lap[e.head][e.tail] -= 1.0;
    }
    lap
}

/// Connected components by depth-first search (isolated vertices count).
pub fn component_count(c: &CellComplex) -> usize {
    let n = c.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for e in c.edges() {
        adj[e.tail].push(e.head);
        adj[e.head].push(e.tail);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Random simple graph with every triangle filled in as a closed plaquette.
pub fn random_complex<R: Rng>(rng: &mut R, n_vertices: usize, edge_probability: f64) -> CellComplex {
    let vertices: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut lookup = std::collections::HashMap::new();
    for a in 0..n_vertices {
        for b in a + 1..n_vertices {
            if rng.gen_bool(edge_probability) {
                let (tail, head) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
                lookup.insert((a, b), edges.len());
                edges.push(Edge { id: format!("e{}", edges.len()), tail, head });
            }
        }
    }
    let mut plaquettes = Vec::new();
    let signed = |from: usize, to: usize, edges: &[Edge]| {
        let key = (from.min(to), from.max(to));
        lookup.get(&key).map(|&i| {
            let e: &Edge = &edges[i];
            (i, if e.tail == from { 1 } else { -1 })
        })
    };
    for a in 0..n_vertices {
        for b in a + 1..n_vertices {
            for c in b + 1..n_vertices {
                if let (Some(x), Some(y), Some(z)) =
                    (signed(a, b, &edges), signed(b, c, &edges), signed(c, a, &edges))
                {
                    let mut chain = vec![x, y, z];
                    chain.shuffle(rng);
                    if rng.gen_bool(0.5) {
                        chain.iter_mut().for_each(|s| s.1 = -s.1);
                    }
                    plaquettes.push(Plaquette { id: format!("p{}", plaquettes.len()), chain });
                }
            }
        }
    }
    CellComplex::new(vertices, edges, plaquettes).expect("generated complex is valid")
}

/// Union of `parts` random ladders, so the graph has exactly `parts` components.
pub fn random_ladder_union<R: Rng>(rng: &mut R, parts: usize) -> CellComplex {
    let mut acc = build_ladder(rng.gen_range(2..7)).unwrap();
    for k in 1..parts {
        let next = build_ladder(rng.gen_range(2..7)).unwrap();
        acc = acc.disjoint_union(&next, "", &format!("u{k}_")).unwrap();
    }
    acc
}

/// Figure-style eigen-projection formulas written out per edge value.
pub fn reference_mode_weights(e: &[f64]) -> [f64; 5] {
    let [e1, e2, e3, e4, e5, e6, e7] = [e[0], e[1], e[2], e[3], e[4], e[5], e[6]];
    let s3 = 3.0_f64.sqrt();
    [
        (1.0 / 5.0) * ((3.0 * e1 + 4.0 * e2 - 3.0 * e3 + 2.0 * e4 - 3.0 * e5 + 3.0 * e6 + 2.0 * e7) / (2.0 * s3)).powi(2),
        (1.0 / 3.0) * ((-e1 - e3 - 2.0 * e4 + e5 + e6 + 2.0 * e7) / 2.0).powi(2),
        ((e1 - e3 + e5 - e6) / 2.0).powi(2),
        ((-e2 + e4 + e7) / s3).powi(2),
        ((e1 + e3 + e5 + e6) / 2.0).powi(2),
    ]
}
