//! Hexagonal (honeycomb) lattice generators under toroidal, cylindrical
//! and free boundary conditions, the closed-form torus spectrum, and the
//! derived 3-12-12 and 3-6-24 lattices obtained by clique-insertion with
//! tracked boundary-edge deletions.
//!
//! The torus is coordinatized as a brick-wall honeycomb quotient:
//! vertices `(i, j, s)` with `0 <= i <= n`, `0 <= j <= m`, `s` in
//! `{0, 1}` and edges
//!
//! ```text
//! (i,j,0)-(i,j,1)    (i,j,1)-(i, j+1 mod m+1, 0)    (i,j,1)-(i+1 mod n+1, j, 0)
//! ```
//!
//! This choice reproduces the closed-form spectrum exactly; correctness
//! is defined by spectral agreement, not by any particular drawing.
//! Cylinder and free variants are built by deleting the wrap edges from
//! the torus, which keeps them spanning subgraphs of it. The a-edges are
//! the column wraps (one per row, `m + 1` of them), the b-edges the row
//! wraps (`n + 1`).

use crate::error::{Error, Result};
use crate::graph::{clique_insert, Graph};
use crate::spectral::{Spectrum, SpectrumKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Torus,
    Cylinder,
    Free,
}

impl Boundary {
    pub fn name(self) -> &'static str {
        match self {
            Boundary::Torus => "torus",
            Boundary::Cylinder => "cylinder",
            Boundary::Free => "free",
        }
    }
}

/// The two clique-inserted lattice families with paper constants:
/// 3-12-12 (one insertion) and 3-6-24 (two insertions).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    ThreeTwelveTwelve,
    ThreeSixTwentyFour,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::ThreeTwelveTwelve => "3-12-12",
            LatticeKind::ThreeSixTwentyFour => "3-6-24",
        }
    }

    /// Clique-insertion depth above the hexagonal base.
    pub fn depth(self) -> u32 {
        match self {
            LatticeKind::ThreeTwelveTwelve => 1,
            LatticeKind::ThreeSixTwentyFour => 2,
        }
    }
}

/// Hexagonal-base lattice request: dimensions, boundary condition and
/// clique-insertion depth (`k = 0` is the hexagonal lattice itself,
/// `k = 1` the 3-12-12, `k = 2` the 3-6-24).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSpec {
    pub m: usize,
    pub n: usize,
    pub boundary: Boundary,
    pub k: u32,
}

/// A built lattice along with the surviving wrap edges.
///
/// `boundary_a` holds the (images of the) column-wrap edges, one per
/// row; `boundary_b` the row wraps. Deleted wraps leave an empty list:
/// cylinder lattices have no b-edges, free lattices have neither.
#[derive(Debug, Clone)]
pub struct LatticeBuild {
    pub graph: Graph,
    pub boundary_a: Vec<usize>,
    pub boundary_b: Vec<usize>,
}

fn validate_dims(m: usize, n: usize, boundary: Boundary) -> Result<()> {
    let min = match boundary {
        Boundary::Torus | Boundary::Cylinder => 2,
        Boundary::Free => 1,
    };
    if m < min || n < min {
        return Err(Error::LatticeTooSmall { m, n, min });
    }
    Ok(())
}

/// Raw torus graph plus wrap-edge endpoint pairs (a: column wraps,
/// b: row wraps).
fn hex_torus_raw(m: usize, n: usize) -> (Graph, Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let rows = m + 1;
    let cols = n + 1;
    let vid = |i: usize, j: usize, s: usize| (i * rows + j) * 2 + s;
    let mut edges = Vec::with_capacity(3 * rows * cols);
    let mut a_pairs = Vec::with_capacity(rows);
    let mut b_pairs = Vec::with_capacity(cols);
    for i in 0..cols {
        for j in 0..rows {
            edges.push((vid(i, j, 0), vid(i, j, 1)));
            let row_wrap = (vid(i, j, 1), vid(i, (j + 1) % rows, 0));
            edges.push(row_wrap);
            if j == m {
                b_pairs.push(row_wrap);
            }
            let col_wrap = (vid(i, j, 1), vid((i + 1) % cols, j, 0));
            edges.push(col_wrap);
            if i == n {
                a_pairs.push(col_wrap);
            }
        }
    }
    let g = Graph::new(2 * rows * cols, &edges).expect("torus quotient is simple for m, n >= 1");
    (g, a_pairs, b_pairs)
}

fn edge_indices(g: &Graph, pairs: &[(usize, usize)]) -> Vec<usize> {
    pairs
        .iter()
        .map(|&(u, v)| g.edge_index(u, v).expect("tracked edge present"))
        .collect()
}

/// Builds the hexagonal lattice `H(n, m)`: the torus on
/// `2(n+1)(m+1)` vertices, or the cylinder (torus minus row wraps) or
/// free lattice (cylinder minus column wraps).
pub fn build_hex_lattice(m: usize, n: usize, boundary: Boundary) -> Result<LatticeBuild> {
    build_iterated_lattice(&LatticeSpec {
        m,
        n,
        boundary,
        k: 0,
    })
}

/// Builds `C^k(H)` with boundary handling: the torus base is
/// clique-inserted `k` times with the wrap-edge lists transported
/// through the edge-image maps, then the b-images (cylinder) or both
/// image families (free) are deleted.
pub fn build_iterated_lattice(spec: &LatticeSpec) -> Result<LatticeBuild> {
    validate_dims(spec.m, spec.n, spec.boundary)?;
    let (mut graph, a_pairs, b_pairs) = hex_torus_raw(spec.m, spec.n);
    let mut a_idx = edge_indices(&graph, &a_pairs);
    let mut b_idx = edge_indices(&graph, &b_pairs);
    for _ in 0..spec.k {
        let (next, map) = clique_insert(&graph)?;
        a_idx = map.map_indices(&a_idx);
        b_idx = map.map_indices(&b_idx);
        graph = next;
    }
    let (delete, keep_a) = match spec.boundary {
        Boundary::Torus => (Vec::new(), true),
        Boundary::Cylinder => (b_idx.clone(), true),
        Boundary::Free => {
            let mut d = a_idx.clone();
            d.extend_from_slice(&b_idx);
            (d, false)
        }
    };
    if delete.is_empty() {
        return Ok(LatticeBuild {
            graph,
            boundary_a: a_idx,
            boundary_b: b_idx,
        });
    }
    let survivors_a: Vec<(usize, usize)> = if keep_a {
        a_idx.iter().map(|&e| graph.edges()[e]).collect()
    } else {
        Vec::new()
    };
    let reduced = graph.delete_edges(&delete);
    let boundary_a = edge_indices(&reduced, &survivors_a);
    Ok(LatticeBuild {
        graph: reduced,
        boundary_a,
        boundary_b: Vec::new(),
    })
}

/// Closed-form adjacency spectrum of the hexagonal torus:
/// `+-sqrt(3 + 2cos(2 i pi/(n+1)) + 2cos(2 j pi/(m+1)) + 2cos(sum))`
/// over all `(i, j)`, sorted descending.
pub fn hex_torus_closed_form_spectrum(m: usize, n: usize) -> Result<Spectrum> {
    validate_dims(m, n, Boundary::Torus)?;
    let rows = (m + 1) as f64;
    let cols = (n + 1) as f64;
    let tau = std::f64::consts::TAU;
    let mut values = Vec::with_capacity(2 * (m + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=m {
            let x = tau * i as f64 / cols;
            let y = tau * j as f64 / rows;
            let r2 = 3.0 + 2.0 * x.cos() + 2.0 * y.cos() + 2.0 * (x + y).cos();
            debug_assert!(r2 > -1e-9);
            let r = r2.max(0.0).sqrt();
            values.push(r);
            values.push(-r);
        }
    }
    Ok(Spectrum::from_values(values, SpectrumKind::Adjacency))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{adjacency_spectrum, multiset_max_deviation};

    #[test]
    fn torus_2_2_counts() {
        let b = build_hex_lattice(2, 2, Boundary::Torus).unwrap();
        assert_eq!(b.graph.vertex_count(), 18);
        assert_eq!(b.graph.edge_count(), 27);
        assert_eq!(b.graph.regular_degree(), Some(3));
        assert_eq!(b.boundary_a.len(), 3); // m + 1
        assert_eq!(b.boundary_b.len(), 3); // n + 1
        assert!(b.graph.is_connected());
    }

    #[test]
    fn asymmetric_boundary_list_lengths() {
        let b = build_hex_lattice(2, 4, Boundary::Torus).unwrap();
        assert_eq!(b.boundary_a.len(), 3); // m + 1 column wraps
        assert_eq!(b.boundary_b.len(), 5); // n + 1 row wraps
        assert_eq!(b.graph.vertex_count(), 2 * 3 * 5);
    }

    #[test]
    fn cylinder_and_free_by_deletion() {
        let torus = build_hex_lattice(2, 2, Boundary::Torus).unwrap();
        let cyl = build_hex_lattice(2, 2, Boundary::Cylinder).unwrap();
        let free = build_hex_lattice(2, 2, Boundary::Free).unwrap();
        assert_eq!(cyl.graph.edge_count(), torus.graph.edge_count() - 3);
        assert_eq!(free.graph.edge_count(), torus.graph.edge_count() - 6);
        assert_eq!(cyl.boundary_a.len(), 3);
        assert!(cyl.boundary_b.is_empty());
        assert!(free.boundary_a.is_empty() && free.boundary_b.is_empty());
        assert!(free.graph.is_connected());
        assert_eq!(free.graph.max_degree(), 3);
        let degree2 = (0..free.graph.vertex_count())
            .filter(|&v| free.graph.degree(v) == 2)
            .count();
        assert!(degree2 > 0);
    }

    #[test]
    fn rejects_undersized() {
        assert!(matches!(
            build_hex_lattice(1, 2, Boundary::Torus),
            Err(Error::LatticeTooSmall { .. })
        ));
        assert!(build_hex_lattice(1, 1, Boundary::Free).is_ok());
        assert!(matches!(
            hex_torus_closed_form_spectrum(1, 5),
            Err(Error::LatticeTooSmall { .. })
        ));
    }

    #[test]
    fn closed_form_matches_eigensolver() {
        for (m, n) in [(2, 2), (2, 4), (3, 3)] {
            let b = build_hex_lattice(m, n, Boundary::Torus).unwrap();
            let direct = adjacency_spectrum(&b.graph).unwrap();
            let closed = hex_torus_closed_form_spectrum(m, n).unwrap();
            assert!(
                multiset_max_deviation(direct.values(), closed.values()) < 1e-8,
                "closed form mismatch at ({m}, {n})"
            );
        }
    }

    #[test]
    fn closed_form_top_and_symmetry() {
        let s = hex_torus_closed_form_spectrum(3, 4).unwrap();
        assert!((s.max() - 3.0).abs() < 1e-12);
        let negated: Vec<f64> = s.values().iter().map(|v| -v).collect();
        assert!(multiset_max_deviation(s.values(), &negated) < 1e-12);
    }

    #[test]
    fn t_lattice_counts() {
        let t = build_iterated_lattice(&LatticeSpec {
            m: 2,
            n: 2,
            boundary: Boundary::Torus,
            k: 1,
        })
        .unwrap();
        assert_eq!(t.graph.vertex_count(), 54);
        assert_eq!(t.graph.edge_count(), 81);
        assert_eq!(t.graph.regular_degree(), Some(3));
        assert_eq!(t.boundary_a.len(), 3);
        assert_eq!(t.boundary_b.len(), 3);
    }

    #[test]
    fn t_cylinder_deletes_b_images() {
        let t = build_iterated_lattice(&LatticeSpec {
            m: 2,
            n: 2,
            boundary: Boundary::Cylinder,
            k: 1,
        })
        .unwrap();
        assert_eq!(t.graph.edge_count(), 78); // 81 minus n + 1 = 3
        assert!(t.boundary_b.is_empty());
        assert_eq!(t.boundary_a.len(), 3);
        assert!(t.graph.is_connected());
    }

    #[test]
    fn s_lattice_counts() {
        let s = build_iterated_lattice(&LatticeSpec {
            m: 2,
            n: 2,
            boundary: Boundary::Torus,
            k: 2,
        })
        .unwrap();
        assert_eq!(s.graph.vertex_count(), 162);
        assert_eq!(s.graph.edge_count(), 243);
        assert_eq!(s.graph.regular_degree(), Some(3));
    }

    #[test]
    fn torus_is_regular_for_all_k_and_boundaries_almost_regular() {
        for k in 0..=2 {
            let b = build_iterated_lattice(&LatticeSpec {
                m: 3,
                n: 2,
                boundary: Boundary::Torus,
                k,
            })
            .unwrap();
            assert_eq!(b.graph.regular_degree(), Some(3));
            let free = build_iterated_lattice(&LatticeSpec {
                m: 3,
                n: 2,
                boundary: Boundary::Free,
                k,
            })
            .unwrap();
            // deletion only lowers O(m + n) boundary degrees
            let full = (0..free.graph.vertex_count())
                .filter(|&v| free.graph.degree(v) == 3)
                .count();
            let deleted = b.graph.edge_count() - free.graph.edge_count();
            assert!(full >= free.graph.vertex_count() - 2 * deleted);
            assert!(full < free.graph.vertex_count());
            assert_eq!(free.graph.max_degree(), 3);
        }
    }
}
