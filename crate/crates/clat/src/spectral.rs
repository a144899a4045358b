//! Eigenvalue computation, the clique-insertion spectrum map, graph
//! energy, and spectral-gap machinery for expander tracking.
//!
//! Spectra are stored as descending sorted value lists with repetition
//! for multiplicity. The eigensolver is a dense symmetric
//! tridiagonalization-based method (backward stable, deterministic);
//! eigenvectors are never exposed.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Absolute tolerance of the dense symmetric eigensolver.
pub const EIG_TOL: f64 = 1e-10;
/// Tolerance when matching a spectrum's top value against a stated
/// regular degree.
const TOP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Adjacency,
    Laplacian,
}

impl SpectrumKind {
    fn name(self) -> &'static str {
        match self {
            SpectrumKind::Adjacency => "adjacency",
            SpectrumKind::Laplacian => "laplacian",
        }
    }
}

/// Sorted real eigenvalue multiset of an adjacency or Laplacian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    kind: SpectrumKind,
    source_order: usize,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>, kind: SpectrumKind) -> Spectrum {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let source_order = values.len();
        Spectrum {
            values,
            kind,
            source_order,
        }
    }

    /// Values sorted descending, one entry per multiplicity.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// Second-smallest value; for a Laplacian spectrum this is the
    /// spectral gap (algebraic connectivity).
    pub fn second_smallest(&self) -> f64 {
        self.values[self.values.len() - 2]
    }
}

/// Max elementwise deviation between two sorted multisets, `inf` on
/// length mismatch. Sorting both sides avoids eigenvalue-matching
/// ambiguity under multiplicity.
pub fn multiset_max_deviation(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sb.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sa.iter()
        .zip(&sb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn symmetric_eigenvalues(matrix: DMatrix<f64>, kind: SpectrumKind) -> Spectrum {
    let ev = matrix.symmetric_eigenvalues();
    Spectrum::from_values(ev.iter().copied().collect(), kind)
}

pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut a = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

pub fn laplacian_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut l = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    l
}

/// Eigenvalues of the adjacency matrix, sorted descending.
pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(symmetric_eigenvalues(
        adjacency_matrix(g),
        SpectrumKind::Adjacency,
    ))
}

/// Eigenvalues of the Laplacian `D - A`, sorted descending.
pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(symmetric_eigenvalues(
        laplacian_matrix(g),
        SpectrumKind::Laplacian,
    ))
}

/// Adjacency spectrum of the clique-inserted graph from the spectrum of
/// an r-regular graph: each eigenvalue lambda contributes the pair
/// `(r - 2 +- sqrt(r^2 + 4(lambda + 1))) / 2`, and 0 and -2 each enter
/// with multiplicity `m - n = n(r - 2)/2`.
pub fn map_spectrum_clique_insert(spec: &Spectrum, r: usize) -> Result<Spectrum> {
    if spec.kind() != SpectrumKind::Adjacency {
        return Err(Error::WrongSpectrumKind {
            expected: "adjacency",
            found: spec.kind().name(),
        });
    }
    if r < 3 {
        return Err(Error::DegreeTooSmall(r));
    }
    let n = spec.len();
    let rf = r as f64;
    if (spec.max() - rf).abs() > TOP_TOL {
        return Err(Error::NotRegularSpectrum {
            top: spec.max(),
            r,
        });
    }
    if n * (r - 2) % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "n = {n}, r = {r} admit no integer edge count"
        )));
    }
    let extra = n * (r - 2) / 2; // m - n
    let mut values = Vec::with_capacity(n * r);
    for &lambda in spec.values() {
        let disc = rf * rf + 4.0 * (lambda + 1.0);
        if disc < 0.0 {
            return Err(Error::NegativeDiscriminant(disc));
        }
        let root = disc.sqrt();
        values.push((rf - 2.0 + root) / 2.0);
        values.push((rf - 2.0 - root) / 2.0);
    }
    values.extend(std::iter::repeat_n(0.0, extra));
    values.extend(std::iter::repeat_n(-2.0, extra));
    Ok(Spectrum::from_values(values, SpectrumKind::Adjacency))
}

/// Graph energy: the sum of absolute adjacency eigenvalues.
pub fn graph_energy(spec: &Spectrum) -> Result<f64> {
    if spec.kind() != SpectrumKind::Adjacency {
        return Err(Error::WrongSpectrumKind {
            expected: "adjacency",
            found: spec.kind().name(),
        });
    }
    Ok(spec.values().iter().map(|v| v.abs()).sum())
}

/// The spectral-gap map under clique-insertion,
/// `f(x) = (r + 2 - sqrt((r+2)^2 - 4x)) / 2`, applied k times.
///
/// The domain is validated rather than clamped; silent clamping would
/// mask caller bugs.
pub fn gap_iterate(mu2: f64, r: usize, k: u32) -> Result<f64> {
    let max = 2.0 * r as f64;
    if !(0.0..=max).contains(&mu2) {
        return Err(Error::GapOutOfRange { mu2, max });
    }
    let rp2 = r as f64 + 2.0;
    let mut x = mu2;
    for _ in 0..k {
        x = (rp2 - (rp2 * rp2 - 4.0 * x).sqrt()) / 2.0;
    }
    Ok(x)
}

/// Outcome of the Ramanujan test: `lambda2` is the largest nontrivial
/// eigenvalue magnitude, `bound` is `2*sqrt(r-1)`.
#[derive(Debug, Clone, Copy)]
pub struct RamanujanReport {
    pub is_ramanujan: bool,
    pub lambda2: f64,
    pub bound: f64,
}

/// Ramanujan test on the spectrum of a connected r-regular graph.
///
/// Nontrivial eigenvalues exclude one copy of `r`, and one copy of `-r`
/// when `bipartite` is declared (the standard convention; use
/// [`ramanujan_check_graph`] to detect bipartiteness by 2-coloring).
pub fn ramanujan_check(spec: &Spectrum, r: usize, bipartite: bool) -> Result<RamanujanReport> {
    if spec.kind() != SpectrumKind::Adjacency {
        return Err(Error::WrongSpectrumKind {
            expected: "adjacency",
            found: spec.kind().name(),
        });
    }
    let rf = r as f64;
    if (spec.max() - rf).abs() > TOP_TOL {
        return Err(Error::NotRegularSpectrum {
            top: spec.max(),
            r,
        });
    }
    let vals = spec.values();
    // Top eigenvalue multiplicity > 1 means the graph is disconnected.
    if vals.len() > 1 && (vals[1] - rf).abs() <= TOP_TOL {
        return Err(Error::Disconnected);
    }
    let lo = if bipartite { vals.len() - 1 } else { vals.len() };
    let lambda2 = vals[1..lo]
        .iter()
        .map(|v| v.abs())
        .fold(0.0_f64, f64::max);
    let bound = 2.0 * (rf - 1.0).sqrt();
    Ok(RamanujanReport {
        is_ramanujan: lambda2 <= bound + 1e-9,
        lambda2,
        bound,
    })
}

/// Ramanujan test on a graph: computes the spectrum, reads the regular
/// degree, and detects bipartiteness by 2-coloring.
pub fn ramanujan_check_graph(g: &Graph) -> Result<RamanujanReport> {
    let r = g.regular_degree().ok_or_else(|| {
        let degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        Error::NotRegular {
            min: degrees.iter().copied().min().unwrap_or(0),
            max: degrees.iter().copied().max().unwrap_or(0),
        }
    })?;
    let spec = adjacency_spectrum(g)?;
    ramanujan_check(&spec, r, g.two_coloring().is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_insert, line_graph, Graph};

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        Graph::new(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn k4_adjacency_spectrum() {
        let s = adjacency_spectrum(&k4()).unwrap();
        let expected = [3.0, -1.0, -1.0, -1.0];
        assert!(multiset_max_deviation(s.values(), &expected) < 1e-10);
    }

    #[test]
    fn c6_adjacency_spectrum() {
        let s = adjacency_spectrum(&cycle(6)).unwrap();
        let expected = [2.0, 1.0, 1.0, -1.0, -1.0, -2.0];
        assert!(multiset_max_deviation(s.values(), &expected) < 1e-10);
    }

    #[test]
    fn empty_graph_is_error() {
        let g = Graph::new(0, &[]).unwrap();
        assert!(matches!(adjacency_spectrum(&g), Err(Error::EmptyGraph)));
    }

    #[test]
    fn k4_laplacian_spectrum() {
        let s = laplacian_spectrum(&k4()).unwrap();
        let expected = [4.0, 4.0, 4.0, 0.0];
        assert!(multiset_max_deviation(s.values(), &expected) < 1e-10);
        assert!(s.second_smallest() - 4.0 < 1e-10);
    }

    #[test]
    fn octahedron_laplacian_spectrum() {
        let oct = line_graph(&k4());
        let s = laplacian_spectrum(&oct).unwrap();
        let expected = [6.0, 6.0, 4.0, 4.0, 4.0, 0.0];
        assert!(multiset_max_deviation(s.values(), &expected) < 1e-9);
    }

    #[test]
    fn regular_graph_laplacian_pairing() {
        // mu_i = r - lambda_{n+1-i} for r-regular graphs
        for (g, r) in [(k4(), 3.0), (petersen(), 3.0)] {
            let a = adjacency_spectrum(&g).unwrap();
            let l = laplacian_spectrum(&g).unwrap();
            let from_adjacency: Vec<f64> = a.values().iter().map(|v| r - v).collect();
            assert!(multiset_max_deviation(l.values(), &from_adjacency) < 1e-10);
        }
    }

    #[test]
    fn spectrum_sum_rules() {
        for g in [k4(), petersen(), cycle(6)] {
            let a = adjacency_spectrum(&g).unwrap();
            assert!(a.values().iter().sum::<f64>().abs() < 1e-8);
            let l = laplacian_spectrum(&g).unwrap();
            let sum: f64 = l.values().iter().sum();
            assert!((sum - 2.0 * g.edge_count() as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn mapped_spectrum_of_k4() {
        let s = adjacency_spectrum(&k4()).unwrap();
        let mapped = map_spectrum_clique_insert(&s, 3).unwrap();
        let expected = [
            3.0, 2.0, 2.0, 2.0, 0.0, 0.0, -1.0, -1.0, -1.0, -2.0, -2.0, -2.0,
        ];
        assert!(multiset_max_deviation(mapped.values(), &expected) < 1e-9);
        // top value is preserved, trace stays zero
        assert!((mapped.max() - 3.0).abs() < 1e-9);
        assert!(mapped.values().iter().sum::<f64>().abs() < 1e-8);
    }

    #[test]
    fn mapped_spectrum_matches_constructed_graph() {
        for g in [k4(), petersen()] {
            let s = adjacency_spectrum(&g).unwrap();
            let mapped = map_spectrum_clique_insert(&s, 3).unwrap();
            let (c, _) = clique_insert(&g).unwrap();
            let direct = adjacency_spectrum(&c).unwrap();
            assert!(multiset_max_deviation(mapped.values(), direct.values()) < 1e-8);
        }
    }

    #[test]
    fn mapped_spectrum_rejects_wrong_degree() {
        let s = adjacency_spectrum(&k4()).unwrap();
        assert!(matches!(
            map_spectrum_clique_insert(&s, 4),
            Err(Error::NotRegularSpectrum { .. })
        ));
    }

    #[test]
    fn energy_examples() {
        let s = adjacency_spectrum(&k4()).unwrap();
        assert!((graph_energy(&s).unwrap() - 6.0).abs() < 1e-10);
        let mapped = map_spectrum_clique_insert(&s, 3).unwrap();
        assert!((graph_energy(&mapped).unwrap() - 18.0).abs() < 1e-8);
        let (c, _) = clique_insert(&k4()).unwrap();
        let direct = adjacency_spectrum(&c).unwrap();
        assert!((graph_energy(&direct).unwrap() - 18.0).abs() < 1e-8);
    }

    #[test]
    fn energy_closed_form_matches() {
        // E(C(G)) = sum (r-2+sqrt(.))/2 + sum (sqrt(.)-r+2)/2 + n
        let s = adjacency_spectrum(&k4()).unwrap();
        let r = 3.0;
        let closed: f64 = s
            .values()
            .iter()
            .map(|&l| {
                let root = (r * r + 4.0 * (l + 1.0)).sqrt();
                (r - 2.0 + root) / 2.0 + (root - r + 2.0) / 2.0
            })
            .sum::<f64>()
            + s.len() as f64;
        assert!((closed - 18.0).abs() < 1e-9);
    }

    #[test]
    fn energy_requires_adjacency_kind() {
        let l = laplacian_spectrum(&k4()).unwrap();
        assert!(matches!(
            graph_energy(&l),
            Err(Error::WrongSpectrumKind { .. })
        ));
    }

    #[test]
    fn gap_iterate_fixed_point_and_k4() {
        assert_eq!(gap_iterate(0.0, 3, 5).unwrap(), 0.0);
        // mu2(K4) = 4, f(4) = 1 = mu2(C(K4)) = 3 - lambda2(C(K4))
        assert!((gap_iterate(4.0, 3, 1).unwrap() - 1.0).abs() < 1e-12);
        let (c, _) = clique_insert(&k4()).unwrap();
        let a = adjacency_spectrum(&c).unwrap();
        let mu2 = 3.0 - a.values()[1];
        assert!((mu2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gap_iterate_twice_closed_form() {
        let f1 = (5.0 - 21.0_f64.sqrt()) / 2.0;
        let f2 = (5.0 - (25.0 - 4.0 * f1).sqrt()) / 2.0;
        assert!((gap_iterate(1.0, 3, 2).unwrap() - f2).abs() < 1e-12);
    }

    #[test]
    fn gap_iterate_domain_check() {
        assert!(matches!(
            gap_iterate(-0.5, 3, 1),
            Err(Error::GapOutOfRange { .. })
        ));
        assert!(matches!(
            gap_iterate(6.5, 3, 1),
            Err(Error::GapOutOfRange { .. })
        ));
    }

    #[test]
    fn gap_map_monotone_and_contractive() {
        // f strictly increasing on [0, 2r]; 0 <= f(x) <= x on the stated range
        let r = 3usize;
        let max = 2.0 * r as f64;
        let cap = ((r as f64 + 2.0).powi(2) / 4.0).min(max);
        let mut prev = -1.0;
        for i in 0..=1000 {
            let x = max * i as f64 / 1000.0;
            let fx = gap_iterate(x, r, 1).unwrap();
            assert!(fx > prev);
            prev = fx;
            if x <= cap {
                assert!((0.0..=x).contains(&fx));
            }
        }
    }

    #[test]
    fn ramanujan_examples() {
        let rep = ramanujan_check_graph(&k4()).unwrap();
        assert!(rep.is_ramanujan);
        assert!((rep.lambda2 - 1.0).abs() < 1e-9);
        assert!((rep.bound - 2.0 * 2.0_f64.sqrt()).abs() < 1e-12);

        let rep = ramanujan_check_graph(&petersen()).unwrap();
        assert!(rep.is_ramanujan);
        assert!((rep.lambda2 - 2.0).abs() < 1e-9);
    }

    #[test]
    fn bipartite_negative_top_is_trivial() {
        // K_3,3 has spectrum {3, 0, 0, 0, 0, -3}; nontrivial max is 0.
        let edges: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (3..6).map(move |j| (i, j)))
            .collect();
        let g = Graph::new(6, &edges).unwrap();
        let rep = ramanujan_check_graph(&g).unwrap();
        assert!(rep.lambda2.abs() < 1e-9);
        assert!(rep.is_ramanujan);
    }

    #[test]
    fn circulant_100_not_ramanujan() {
        // C_100(1, 50): 3-regular, second eigenvalue near 3
        let mut edges: Vec<(usize, usize)> = (0..100).map(|i| (i, (i + 1) % 100)).collect();
        edges.extend((0..50).map(|i| (i, i + 50)));
        let g = Graph::new(100, &edges).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        let rep = ramanujan_check_graph(&g).unwrap();
        assert!(rep.lambda2 > rep.bound);
        assert!(!rep.is_ramanujan);
    }

    #[test]
    fn disconnected_spectrum_rejected() {
        let two_triangles =
            Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let s = adjacency_spectrum(&two_triangles).unwrap();
        assert!(matches!(
            ramanujan_check(&s, 2, false),
            Err(Error::Disconnected)
        ));
    }
}
