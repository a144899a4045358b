//! Exact spanning-tree counts (Matrix-Tree with fraction-free integer
//! elimination), the iterated clique-insertion tree formula and its
//! entropy, exact perfect-matching counts, and the dimer identities.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{line_graph, predicates, Graph};

/// Exact nonnegative count; tree counts overflow doubles even at modest
/// lattice sizes.
pub type ExactCount = BigUint;

/// Largest graph order accepted by the matching enumerator (alive sets
/// are kept as 64-bit masks).
pub const MATCHING_MAX_VERTICES: usize = 64;

/// Number of spanning trees by the Matrix-Tree theorem: the determinant
/// of the Laplacian with row and column 0 deleted, computed exactly by
/// fraction-free (Bareiss) elimination.
///
/// Disconnected graphs return 0 rather than an error; a single vertex
/// has exactly one spanning tree.
pub fn count_spanning_trees(g: &Graph) -> ExactCount {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return ExactCount::zero();
    }
    if n == 1 {
        return ExactCount::one();
    }
    let size = n - 1;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for v in 1..n {
        m[v - 1][v - 1] = BigInt::from(g.degree(v));
    }
    for &(u, v) in g.edges() {
        if u >= 1 && v >= 1 {
            m[u - 1][v - 1] = BigInt::from(-1);
            m[v - 1][u - 1] = BigInt::from(-1);
        }
    }
    // The reduced Laplacian of a connected graph is positive definite,
    // so every Bareiss pivot (a leading principal minor) is positive
    // and no pivoting is needed.
    let mut prev = BigInt::one();
    for k in 0..size {
        debug_assert!(m[k][k].is_positive());
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    m[size - 1][size - 1]
        .to_biguint()
        .expect("tree count is nonnegative")
}

/// Natural log of an exact count (count must be positive).
pub fn ln_exact(count: &ExactCount) -> f64 {
    assert!(!count.is_zero(), "ln of zero count");
    if let Some(f) = count.to_f64().filter(|f| f.is_finite()) {
        return f.ln();
    }
    let bits = count.bits();
    let top = count >> (bits - 64);
    top.to_f64().unwrap().ln() + (bits - 64) as f64 * std::f64::consts::LN_2
}

/// Spanning trees of the k-th iterated clique-insertion from the count
/// for the base graph:
/// `N(C^k(G)) = r^(ns-k) (r+2)^(ns+k) N(G)`, `s = (r/2-1)(r^k-1)/(r-1)`.
///
/// `s` is evaluated in exact rational arithmetic and the exponents are
/// validated to be nonnegative integers.
pub fn predict_spanning_trees_iterated(
    n_st: &ExactCount,
    r: usize,
    n: usize,
    k: u32,
) -> Result<ExactCount> {
    if r < 3 {
        return Err(Error::DegreeTooSmall(r));
    }
    if k == 0 {
        return Ok(n_st.clone());
    }
    // n*s = n (r-2)(r^k - 1) / (2 (r-1))
    let r_big = BigUint::from(r);
    let numer = BigUint::from(n) * BigUint::from(r - 2) * (r_big.pow(k) - BigUint::one());
    let denom = BigUint::from(2 * (r - 1));
    if (&numer % &denom) != BigUint::zero() {
        return Err(Error::NonIntegralExponent(format!(
            "{numer}/{denom} (r = {r}, n = {n}, k = {k})"
        )));
    }
    let ns = numer / denom;
    let k_big = BigUint::from(k);
    if ns < k_big {
        return Err(Error::NonIntegralExponent(format!(
            "n*s = {ns} smaller than k = {k}"
        )));
    }
    let lo = (&ns - &k_big)
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("exponent overflow".into()))?;
    let hi = (&ns + &k_big)
        .to_u32()
        .ok_or_else(|| Error::InvalidParameter("exponent overflow".into()))?;
    Ok(BigUint::from(r).pow(lo) * BigUint::from(r + 2).pow(hi) * n_st)
}

/// Spanning-tree entropy of the k-th iterate from the base entropy:
/// `r^-k (z_H + s ln(r(r+2)))`, `s = (r/2-1)(r^k-1)/(r-1)`.
pub fn tree_entropy_iterated(z_h: f64, r: usize, k: u32) -> f64 {
    let rf = r as f64;
    let s = (rf / 2.0 - 1.0) * (rf.powi(k as i32) - 1.0) / (rf - 1.0);
    (z_h + s * (rf * (rf + 2.0)).ln()) / rf.powi(k as i32)
}

/// Exact perfect-matching (dimer) count by branching on a minimum-degree
/// vertex, memoized on the residual alive-vertex mask.
///
/// Odd order gives 0. Graphs beyond [`MATCHING_MAX_VERTICES`] vertices
/// are rejected.
pub fn count_perfect_matchings(g: &Graph) -> Result<ExactCount> {
    let n = g.vertex_count();
    if n > MATCHING_MAX_VERTICES {
        return Err(Error::GraphTooLarge {
            n,
            max: MATCHING_MAX_VERTICES,
        });
    }
    if n % 2 != 0 {
        return Ok(ExactCount::zero());
    }
    let masks: Vec<u64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u64, |acc, &w| acc | (1u64 << w))
        })
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, ExactCount> = HashMap::new();
    Ok(count_matchings_rec(full, &masks, &mut memo))
}

fn count_matchings_rec(
    alive: u64,
    masks: &[u64],
    memo: &mut HashMap<u64, ExactCount>,
) -> ExactCount {
    if alive == 0 {
        return ExactCount::one();
    }
    if let Some(hit) = memo.get(&alive) {
        return hit.clone();
    }
    // branch on an alive vertex of minimum alive-degree
    let mut best = usize::MAX;
    let mut best_deg = usize::MAX;
    let mut bits = alive;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let deg = (masks[v] & alive).count_ones() as usize;
        if deg < best_deg {
            best = v;
            best_deg = deg;
            if deg <= 1 {
                break;
            }
        }
    }
    let mut total = ExactCount::zero();
    if best_deg == 0 {
        memo.insert(alive, total.clone());
        return total; // isolated vertex, no matching
    }
    let v = best;
    let mut nb = masks[v] & alive;
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        let rest = alive & !(1u64 << v) & !(1u64 << u);
        total += count_matchings_rec(rest, masks, memo);
    }
    memo.insert(alive, total.clone());
    total
}

/// Outcome of the line-graph dimer bound check
/// `M(L(G)) >= 2^(m-n+1)`, equality iff the maximum degree is at most 3.
#[derive(Debug, Clone)]
pub struct DimerLineGraphReport {
    pub bound: ExactCount,
    pub count: ExactCount,
    pub equality: bool,
    pub delta_le_3: bool,
}

/// Checks the dimer bound on the line graph of a 2-connected graph with
/// an even number of edges.
pub fn dimer_line_graph_check(g: &Graph) -> Result<DimerLineGraphReport> {
    let p = predicates(g);
    if !p.two_connected {
        return Err(Error::NotTwoConnected);
    }
    let (n, m) = (g.vertex_count(), g.edge_count());
    if m % 2 != 0 {
        return Err(Error::OddEdgeCount(m));
    }
    let bound = ExactCount::one() << (m - n + 1); // 2-connected implies m >= n
    let count = count_perfect_matchings(&line_graph(g))?;
    Ok(DimerLineGraphReport {
        equality: count == bound,
        delta_le_3: p.max_degree <= 3,
        bound,
        count,
    })
}

/// Finite dimer free-energy estimate `(2/n) ln M(G)`.
pub fn dimer_free_energy(g: &Graph) -> Result<f64> {
    let m = count_perfect_matchings(g)?;
    if m.is_zero() {
        return Err(Error::NoPerfectMatching);
    }
    Ok(2.0 / g.vertex_count() as f64 * ln_exact(&m))
}

/// The bulk limit for iterated clique-insertions of cubic lattices:
/// `(1/3) ln 2`.
pub fn dimer_free_energy_limit_cubic() -> f64 {
    std::f64::consts::LN_2 / 3.0
}

/// Dimer free-energy estimate for `L(g)` through the equality case of
/// the line-graph bound, avoiding enumeration: requires `g` 2-connected
/// with even edge count and maximum degree at most 3, and returns
/// `(2/m) (m - n + 1) ln 2`.
pub fn dimer_free_energy_via_line_graph(g: &Graph) -> Result<f64> {
    let p = predicates(g);
    if !p.two_connected {
        return Err(Error::NotTwoConnected);
    }
    let (n, m) = (g.vertex_count(), g.edge_count());
    if m % 2 != 0 {
        return Err(Error::OddEdgeCount(m));
    }
    if p.max_degree > 3 {
        return Err(Error::InvalidParameter(format!(
            "maximum degree {} exceeds 3; the bound is not tight",
            p.max_degree
        )));
    }
    Ok(2.0 * (m - n + 1) as f64 * std::f64::consts::LN_2 / m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_insert, iterate_clique_insert, subdivision};
    use crate::lattice::{build_hex_lattice, Boundary};

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k5() -> Graph {
        let edges: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .collect();
        Graph::new(5, &edges).unwrap()
    }

    fn k33() -> Graph {
        let edges: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (3..6).map(move |j| (i, j)))
            .collect();
        Graph::new(6, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cube() -> Graph {
        Graph::new(
            8,
            &[
                (0, 1),
                (0, 2),
                (0, 4),
                (1, 3),
                (1, 5),
                (2, 3),
                (2, 6),
                (3, 7),
                (4, 5),
                (4, 6),
                (5, 7),
                (6, 7),
            ],
        )
        .unwrap()
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

    /// Independent oracle: spanning trees by deletion-contraction on a
    /// multigraph edge list (loops dropped on contraction).
    fn trees_deletion_contraction(n: usize, edges: &[(usize, usize)]) -> ExactCount {
        // connectivity over the simple support
        if n == 0 {
            return ExactCount::zero();
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != n {
            return ExactCount::zero();
        }
        if edges.is_empty() {
            return if n == 1 {
                ExactCount::one()
            } else {
                ExactCount::zero()
            };
        }
        let (u, v) = edges[0];
        let rest = &edges[1..];
        let deleted = trees_deletion_contraction(n, rest);
        // contract the larger endpoint into the smaller, then move the
        // last vertex into the freed slot; drop loops
        let (a, b) = (u.min(v), u.max(v));
        let contracted: Vec<(usize, usize)> = rest
            .iter()
            .filter_map(|&(x, y)| {
                let map = |t: usize| {
                    if t == b {
                        a
                    } else if t == n - 1 {
                        b
                    } else {
                        t
                    }
                };
                let (x2, y2) = (map(x), map(y));
                (x2 != y2).then_some((x2, y2))
            })
            .collect();
        deleted + trees_deletion_contraction(n - 1, &contracted)
    }

    #[test]
    fn tree_count_examples() {
        assert_eq!(count_spanning_trees(&k4()), ExactCount::from(16u32));
        assert_eq!(count_spanning_trees(&k33()), ExactCount::from(81u32));
        assert_eq!(count_spanning_trees(&petersen()), ExactCount::from(2000u32));
        let (c, _) = clique_insert(&k4()).unwrap();
        assert_eq!(count_spanning_trees(&c), ExactCount::from(6000u32));
    }

    #[test]
    fn tree_count_edge_cases() {
        let single = Graph::new(1, &[]).unwrap();
        assert_eq!(count_spanning_trees(&single), ExactCount::one());
        let disconnected = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(count_spanning_trees(&disconnected), ExactCount::zero());
    }

    #[test]
    fn matrix_tree_matches_deletion_contraction() {
        for g in [k4(), k33(), cube(), cycle(6), petersen()] {
            let direct = count_spanning_trees(&g);
            let oracle = trees_deletion_contraction(g.vertex_count(), g.edges());
            assert_eq!(direct, oracle);
        }
    }

    #[test]
    fn prediction_matches_counts() {
        // (16, 3, 4, 1) -> 3 * 125 * 16 = 6000
        let p = predict_spanning_trees_iterated(&ExactCount::from(16u32), 3, 4, 1).unwrap();
        assert_eq!(p, ExactCount::from(6000u32));
        // (81, 3, 6, 1) -> 9 * 625 * 81 = 455625
        let p = predict_spanning_trees_iterated(&ExactCount::from(81u32), 3, 6, 1).unwrap();
        assert_eq!(p, ExactCount::from(455_625u32));
        let (c, _) = clique_insert(&k33()).unwrap();
        assert_eq!(count_spanning_trees(&c), ExactCount::from(455_625u32));
        // identity at k = 0
        let p = predict_spanning_trees_iterated(&ExactCount::from(16u32), 3, 4, 0).unwrap();
        assert_eq!(p, ExactCount::from(16u32));
    }

    #[test]
    fn prediction_k2_exact() {
        let c2 = iterate_clique_insert(&k4(), 2).unwrap();
        let direct = count_spanning_trees(&c2);
        let predicted =
            predict_spanning_trees_iterated(&ExactCount::from(16u32), 3, 4, 2).unwrap();
        assert_eq!(direct, predicted);
        assert_eq!(direct, ExactCount::from(113_906_250_000u64));
    }

    #[test]
    fn prediction_rejects_non_integral() {
        // odd n with r = 3 and k = 1 gives ns = n/2, not an integer
        assert!(matches!(
            predict_spanning_trees_iterated(&ExactCount::from(5u32), 3, 5, 1),
            Err(Error::NonIntegralExponent(_))
        ));
    }

    #[test]
    fn entropy_paper_values() {
        let z_h = 0.8076649;
        assert!((tree_entropy_iterated(z_h, 3, 1) - 0.7205633).abs() < 1e-7);
        assert!((tree_entropy_iterated(z_h, 3, 2) - 0.6915295).abs() < 1e-7);
        assert_eq!(tree_entropy_iterated(z_h, 3, 0), z_h);
    }

    #[test]
    fn matching_examples() {
        assert_eq!(count_perfect_matchings(&k4()).unwrap(), ExactCount::from(3u32));
        assert_eq!(count_perfect_matchings(&cycle(6)).unwrap(), ExactCount::from(2u32));
        let oct = line_graph(&k4());
        assert_eq!(count_perfect_matchings(&oct).unwrap(), ExactCount::from(8u32));
        // odd order
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(count_perfect_matchings(&p3).unwrap().is_zero());
    }

    #[test]
    fn matching_rejects_oversized() {
        let big = Graph::new(70, &[(0, 1)]).unwrap();
        assert!(matches!(
            count_perfect_matchings(&big),
            Err(Error::GraphTooLarge { .. })
        ));
    }

    #[test]
    fn dimer_check_equality_cases() {
        let rep = dimer_line_graph_check(&k4()).unwrap();
        assert_eq!(rep.bound, ExactCount::from(8u32));
        assert_eq!(rep.count, ExactCount::from(8u32));
        assert!(rep.equality && rep.delta_le_3);

        let rep = dimer_line_graph_check(&cube()).unwrap();
        assert_eq!(rep.bound, ExactCount::from(32u32));
        assert!(rep.equality && rep.delta_le_3);
    }

    #[test]
    fn dimer_check_strict_inequality_for_k5() {
        let rep = dimer_line_graph_check(&k5()).unwrap();
        assert_eq!(rep.bound, ExactCount::from(64u32));
        assert_eq!(rep.count, ExactCount::from(144u32));
        assert!(!rep.equality && !rep.delta_le_3);
        assert!(rep.count > rep.bound);
    }

    #[test]
    fn dimer_check_preconditions() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            dimer_line_graph_check(&path),
            Err(Error::NotTwoConnected)
        ));
        assert!(matches!(
            dimer_line_graph_check(&cycle(5)),
            Err(Error::OddEdgeCount(5))
        ));
    }

    #[test]
    fn free_energy_limit_value() {
        assert!((dimer_free_energy_limit_cubic() - 0.2310490601866484).abs() < 1e-15);
    }

    #[test]
    fn t_lattice_dimer_count_and_estimate() {
        // T(2,2) = C(H(2,2)) has M = 2^10 = 1024 by the line-graph bound
        // on the subdivision of H(2,2); enumeration must agree.
        let h = build_hex_lattice(2, 2, Boundary::Torus).unwrap();
        let s = subdivision(&h.graph);
        let rep = dimer_line_graph_check(&s).unwrap();
        assert_eq!(rep.bound, ExactCount::from(1024u32));
        assert!(rep.equality);

        let (t, _) = clique_insert(&h.graph).unwrap();
        let m = count_perfect_matchings(&t).unwrap();
        assert_eq!(m, ExactCount::from(1024u32));
        let est = dimer_free_energy(&t).unwrap();
        assert!((est - 2.0 / 54.0 * 1024f64.ln()).abs() < 1e-12);
        assert!((est - 0.2567).abs() < 1e-4);
        // shortcut route agrees
        let est2 = dimer_free_energy_via_line_graph(&s).unwrap();
        assert!((est - est2).abs() < 1e-12);
    }

    #[test]
    fn no_matching_is_error_for_free_energy() {
        // two isolated vertices plus an edge: no perfect matching
        let g = Graph::new(4, &[(0, 1)]).unwrap();
        assert!(matches!(
            dimer_free_energy(&g),
            Err(Error::NoPerfectMatching)
        ));
    }

    #[test]
    fn ln_exact_handles_large_counts() {
        let big = ExactCount::from(2u32).pow(5000u32);
        let expected = 5000.0 * std::f64::consts::LN_2;
        assert!((ln_exact(&big) - expected).abs() < 1e-6);
        assert!((ln_exact(&ExactCount::from(1024u32)) - 1024f64.ln()).abs() < 1e-12);
    }
}
