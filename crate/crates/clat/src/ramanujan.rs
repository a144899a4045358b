//! Explicit expander families: modular square roots, the LPS and Chiu
//! generator sets, Cayley graphs over PGL(2, Z_q) and PSL(2, Z_q), and
//! numerical verification of the Ramanujan property with spectral-gap
//! tracking under clique-insertion.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{adjacency_spectrum, gap_iterate, ramanujan_check, RamanujanReport};

/// Default cap on the group order for dense eigensolving.
pub const DEFAULT_MAX_ORDER: usize = 3000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn require_odd_prime(n: u64) -> Result<()> {
    if !is_prime(n) || n == 2 {
        return Err(Error::NotOddPrime(n));
    }
    Ok(())
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

/// Legendre symbol (a/q) in {-1, 0, 1} by Euler's criterion.
pub fn legendre(a: u64, q: u64) -> i32 {
    let a = a % q;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Canonical modular square root by Tonelli-Shanks (the smaller of the
/// two roots). Errors when `a` is a quadratic non-residue.
pub fn sqrt_mod(a: u64, q: u64) -> Result<u64> {
    require_odd_prime(q)?;
    let a = a % q;
    if a == 0 {
        return Ok(0);
    }
    match legendre(a, q) {
        1 => {}
        _ => return Err(Error::QuadraticNonResidue { a, q }),
    }
    let root = if q % 4 == 3 {
        pow_mod(a, (q + 1) / 4, q)
    } else {
        // Tonelli-Shanks: q - 1 = s * 2^e with s odd
        let mut s = q - 1;
        let mut e = 0u32;
        while s % 2 == 0 {
            s /= 2;
            e += 1;
        }
        let mut z = 2;
        while legendre(z, q) != -1 {
            z += 1;
        }
        let mut m = e;
        let mut c = pow_mod(z, s, q);
        let mut t = pow_mod(a, s, q);
        let mut r = pow_mod(a, (s + 1) / 2, q);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, q);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), q);
            m = i;
            c = mul_mod(b, b, q);
            t = mul_mod(t, c, q);
            r = mul_mod(r, b, q);
        }
        r
    };
    debug_assert_eq!(mul_mod(root, root, q), a);
    Ok(root.min(q - root))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    Psl,
    Pgl,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Psl => "psl",
            GroupKind::Pgl => "pgl",
        }
    }

    /// q(q^2 - 1) for PGL, half that for PSL.
    pub fn order(self, q: u64) -> usize {
        let full = (q * (q * q - 1)) as usize;
        match self {
            GroupKind::Pgl => full,
            GroupKind::Psl => full / 2,
        }
    }
}

/// Element of PGL(2, Z_q) or PSL(2, Z_q) in canonical projective form:
/// for PGL the first nonzero entry in row-major order is scaled to 1;
/// for PSL the representative has determinant 1 and is the
/// lexicographically smaller of M and -M. Equality of group elements is
/// equality of canonical forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjMatrix {
    entries: [u64; 4],
    kind: GroupKind,
    q: u64,
}

impl ProjMatrix {
    /// Canonicalizes `[a, b, c, d]` mod q in the given group. Errors on
    /// singular matrices and, for PSL, on non-square determinant
    /// classes (those cosets are not PSL elements).
    pub fn new(entries: [u64; 4], kind: GroupKind, q: u64) -> Result<ProjMatrix> {
        let e: Vec<u64> = entries.iter().map(|&x| x % q).collect();
        let det = (e[0] * e[3] % q + q - e[1] * e[2] % q) % q;
        if det == 0 {
            return Err(Error::SingularMatrix(q));
        }
        let entries = match kind {
            GroupKind::Pgl => {
                let lead = *e.iter().find(|&&x| x != 0).unwrap();
                let s = inv_mod(lead, q);
                [
                    mul_mod(e[0], s, q),
                    mul_mod(e[1], s, q),
                    mul_mod(e[2], s, q),
                    mul_mod(e[3], s, q),
                ]
            }
            GroupKind::Psl => {
                if legendre(det, q) != 1 {
                    return Err(Error::GeneratorNotInGroup(format!(
                        "determinant {det} is not a square mod {q}, matrix is outside PSL"
                    )));
                }
                let s = inv_mod(sqrt_mod(det, q)?, q);
                let m1 = [
                    mul_mod(e[0], s, q),
                    mul_mod(e[1], s, q),
                    mul_mod(e[2], s, q),
                    mul_mod(e[3], s, q),
                ];
                let m2 = [
                    (q - m1[0]) % q,
                    (q - m1[1]) % q,
                    (q - m1[2]) % q,
                    (q - m1[3]) % q,
                ];
                m1.min(m2)
            }
        };
        Ok(ProjMatrix { entries, kind, q })
    }

    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn determinant(&self) -> u64 {
        let [a, b, c, d] = self.entries;
        (mul_mod(a, d, self.q) + self.q - mul_mod(b, c, self.q)) % self.q
    }

    pub fn mul(&self, rhs: &ProjMatrix) -> ProjMatrix {
        debug_assert_eq!(self.q, rhs.q);
        debug_assert_eq!(self.kind, rhs.kind);
        let q = self.q;
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        let product = [
            (mul_mod(a, e, q) + mul_mod(b, g, q)) % q,
            (mul_mod(a, f, q) + mul_mod(b, h, q)) % q,
            (mul_mod(c, e, q) + mul_mod(d, g, q)) % q,
            (mul_mod(c, f, q) + mul_mod(d, h, q)) % q,
        ];
        ProjMatrix::new(product, self.kind, q).expect("product of invertible matrices")
    }

    /// Projective inverse (the adjugate; the determinant scalar is
    /// irrelevant in the quotient).
    pub fn inverse(&self) -> ProjMatrix {
        let [a, b, c, d] = self.entries;
        let q = self.q;
        ProjMatrix::new([d, (q - b) % q, (q - c) % q, a], self.kind, q)
            .expect("adjugate of invertible matrix")
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = self.entries;
        b == 0 && c == 0 && a == d && a != 0
    }

    pub fn identity(kind: GroupKind, q: u64) -> ProjMatrix {
        ProjMatrix::new([1, 0, 0, 1], kind, q).expect("identity is invertible")
    }
}

/// An inverse-closed generator set without the identity; `p` is the
/// degree parameter (the Cayley graph has degree `elements.len()`).
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub elements: Vec<ProjMatrix>,
    pub p: u64,
}

impl GeneratorSet {
    pub fn kind(&self) -> GroupKind {
        self.elements[0].kind()
    }

    pub fn q(&self) -> u64 {
        self.elements[0].q()
    }

    pub fn degree(&self) -> usize {
        self.elements.len()
    }
}

fn validate_generator_set(elements: &[ProjMatrix]) -> Result<()> {
    if elements.is_empty() {
        return Err(Error::BadGeneratorSet("the empty set".into()));
    }
    let set: BTreeSet<ProjMatrix> = elements.iter().copied().collect();
    if set.len() != elements.len() {
        return Err(Error::BadGeneratorSet(
            "distinctness: duplicate canonical elements".into(),
        ));
    }
    if elements.iter().any(|m| m.is_identity()) {
        return Err(Error::BadGeneratorSet(
            "the identity-exclusion rule".into(),
        ));
    }
    let inverses: BTreeSet<ProjMatrix> = elements.iter().map(|m| m.inverse()).collect();
    if inverses != set {
        return Err(Error::BadGeneratorSet("inverse closure S = S^-1".into()));
    }
    Ok(())
}

/// Sum-of-four-squares quadruples for p with the LPS sign conventions:
/// for p = 1 mod 4, a0 positive and odd; for p = 3 mod 4, a0 even and
/// the first nonzero entry positive.
fn lps_quadruples(p: u64) -> Vec<[i64; 4]> {
    let pi = p as i64;
    let lim = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a0 in -lim..=lim {
        for a1 in -lim..=lim {
            for a2 in -lim..=lim {
                for a3 in -lim..=lim {
                    if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 != pi {
                        continue;
                    }
                    let quad = [a0, a1, a2, a3];
                    let ok = if p % 4 == 1 {
                        a0 > 0 && a0 % 2 == 1
                    } else {
                        let first = quad.iter().find(|&&x| x != 0);
                        a0 % 2 == 0 && matches!(first, Some(&x) if x > 0)
                    };
                    if ok {
                        out.push(quad);
                    }
                }
            }
        }
    }
    out
}

fn rem(v: i64, q: u64) -> u64 {
    v.rem_euclid(q as i64) as u64
}

/// The LPS generator set for distinct odd primes p, q with q > 2*sqrt(p):
/// one matrix per quadruple `a0^2 + a1^2 + a2^2 + a3^2 = p`,
///
/// ```text
/// [ a0 + a1 x + a3 y    -a1 y + a2 + a3 x ]
/// [ -a1 y - a2 + a3 x    a0 - a1 x - a3 y ]
/// ```
///
/// with `(x, y)` the lexicographically smallest solution of
/// `x^2 + y^2 + 1 = 0 mod q`. The set lives in PSL when p is a square
/// mod q and in PGL otherwise, has exactly p + 1 elements, and is
/// inverse-closed (negating a1, a2, a3 produces the adjugate).
pub fn lps_generators(p: u64, q: u64) -> Result<GeneratorSet> {
    require_odd_prime(p)?;
    require_odd_prime(q)?;
    if p == q {
        return Err(Error::PEqualsQ(p));
    }
    if q * q <= 4 * p {
        return Err(Error::QTooSmall { p, q });
    }
    let kind = if legendre(p, q) == 1 {
        GroupKind::Psl
    } else {
        GroupKind::Pgl
    };
    let (x, y) = solve_x2_y2_plus_1(q)?;
    let (xi, yi) = (x as i64, y as i64);
    let mut set: BTreeSet<ProjMatrix> = BTreeSet::new();
    for [a0, a1, a2, a3] in lps_quadruples(p) {
        let m = [
            rem(a0 + a1 * xi + a3 * yi, q),
            rem(-a1 * yi + a2 + a3 * xi, q),
            rem(-a1 * yi - a2 + a3 * xi, q),
            rem(a0 - a1 * xi - a3 * yi, q),
        ];
        set.insert(ProjMatrix::new(m, kind, q)?);
    }
    let elements: Vec<ProjMatrix> = set.into_iter().collect();
    if elements.len() != (p + 1) as usize {
        return Err(Error::GeneratorCount {
            expected: (p + 1) as usize,
            found: elements.len(),
        });
    }
    validate_generator_set(&elements)?;
    Ok(GeneratorSet { elements, p })
}

fn solve_x2_y2_plus_1(q: u64) -> Result<(u64, u64)> {
    // a solution exists for every odd prime by a pigeonhole argument
    for x in 0..q {
        let target = (2 * q - 1 - mul_mod(x, x, q)) % q; // -1 - x^2
        if legendre(target, q) >= 0 {
            if let Ok(y) = sqrt_mod(target, q) {
                return Ok((x, y));
            }
        }
    }
    Err(Error::Internal(format!(
        "no solution of x^2 + y^2 + 1 = 0 mod {q}"
    )))
}

/// The degree-3 generator set over Z_q from the square roots of -2, 26
/// and -26 (all three must be quadratic residues; q must not divide
/// 26):
///
/// ```text
/// [ 1  0 ]   [ 2+sqrt(-2)   sqrt(26)   ]   [ 2-sqrt(-2)  -sqrt(26)   ]
/// [ 0 -1 ]   [ sqrt(-26)    2-sqrt(-2) ]   [ -sqrt(-26)   2+sqrt(-2) ]
/// ```
///
/// The third matrix is the adjugate of the second, so the set is
/// inverse-closed as required; this is asserted, not assumed. The roots
/// of -2 and 26 are the canonical (smaller) ones; the sign of
/// sqrt(-26) is then chosen so that the three matrices generate the
/// whole group (the two signs differ: one choice generates a small
/// proper subgroup), trying the smaller root first.
pub fn chiu_generators(q: u64) -> Result<GeneratorSet> {
    require_odd_prime(q)?;
    if 26 % q == 0 {
        return Err(Error::ChiuBadPrime(q));
    }
    for radicand in [-2i64, 26, -26] {
        let residue = rem(radicand, q);
        if legendre(residue, q) != 1 {
            return Err(Error::ChiuRootMissing {
                radicand,
                residue,
                q,
            });
        }
    }
    let alpha = sqrt_mod(rem(-2, q), q)?;
    let beta = sqrt_mod(26 % q, q)?;
    let gamma_canonical = sqrt_mod(rem(-26, q), q)?;
    let kind = if legendre(2, q) == 1 {
        GroupKind::Psl
    } else {
        GroupKind::Pgl
    };
    let build = |gamma: u64| -> Result<Vec<ProjMatrix>> {
        let g1 = ProjMatrix::new([1, 0, 0, q - 1], kind, q)?;
        let g2 = ProjMatrix::new([(2 + alpha) % q, beta, gamma, rem(2 - alpha as i64, q)], kind, q)?;
        let g3 = ProjMatrix::new(
            [
                rem(2 - alpha as i64, q),
                q - beta,
                (q - gamma) % q,
                (2 + alpha) % q,
            ],
            kind,
            q,
        )?;
        // Def-required structure: the reflection is an involution and
        // the other two are mutual inverses up to scalar.
        if g1.mul(&g1) != ProjMatrix::identity(kind, q) {
            return Err(Error::BadGeneratorSet("g1 being an involution".into()));
        }
        if g2.inverse() != g3 {
            return Err(Error::BadGeneratorSet(
                "g3 being the projective inverse of g2".into(),
            ));
        }
        let elements = vec![g1, g2, g3];
        validate_generator_set(&elements)?;
        Ok(elements)
    };
    let full_order = kind.order(q);
    let first = build(gamma_canonical)?;
    if subgroup_order(&first, full_order) == full_order {
        return Ok(GeneratorSet {
            elements: first,
            p: 2,
        });
    }
    let flipped = build(q - gamma_canonical)?;
    if subgroup_order(&flipped, full_order) == full_order {
        return Ok(GeneratorSet {
            elements: flipped,
            p: 2,
        });
    }
    // neither sign generates; fall back to the canonical root (the
    // Cayley graph will be reported disconnected, not an error)
    Ok(GeneratorSet {
        elements: first,
        p: 2,
    })
}

/// Order of the subgroup generated by the set (breadth-first closure),
/// stopping early once it reaches `cap`.
fn subgroup_order(gens: &[ProjMatrix], cap: usize) -> usize {
    let id = ProjMatrix::identity(gens[0].kind(), gens[0].q());
    let mut seen: HashSet<ProjMatrix> = HashSet::new();
    seen.insert(id);
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = g.mul(s);
            if seen.insert(h) {
                if seen.len() >= cap {
                    return seen.len();
                }
                frontier.push(h);
            }
        }
    }
    seen.len()
}

/// All canonical elements of the group, sorted (the vertex order of
/// Cayley graphs).
pub fn group_elements(kind: GroupKind, q: u64) -> Result<Vec<ProjMatrix>> {
    require_odd_prime(q)?;
    let mut set: BTreeSet<ProjMatrix> = BTreeSet::new();
    match kind {
        GroupKind::Pgl => {
            // canonical forms directly: a = 1, or a = 0 and b = 1
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        if let Ok(m) = ProjMatrix::new([1, b, c, d], kind, q) {
                            set.insert(m);
                        }
                    }
                }
            }
            for c in 1..q {
                for d in 0..q {
                    set.insert(ProjMatrix::new([0, 1, c, d], kind, q)?);
                }
            }
        }
        GroupKind::Psl => {
            // SL(2, q): for a != 0, d is determined; for a = 0, bc = -1
            for a in 1..q {
                let ai = inv_mod(a, q);
                for b in 0..q {
                    for c in 0..q {
                        let d = mul_mod((1 + mul_mod(b, c, q)) % q, ai, q);
                        set.insert(ProjMatrix::new([a, b, c, d], kind, q)?);
                    }
                }
            }
            for b in 1..q {
                let c = (q - inv_mod(b, q)) % q;
                for d in 0..q {
                    set.insert(ProjMatrix::new([0, b, c, d], kind, q)?);
                }
            }
        }
    }
    let elements: Vec<ProjMatrix> = set.into_iter().collect();
    debug_assert_eq!(elements.len(), kind.order(q));
    Ok(elements)
}

/// Cayley graph of the group over the generator set: vertices are the
/// sorted canonical elements, `g` adjacent to `g*s`. Inverse closure of
/// the set makes the graph well-defined and undirected, and the result
/// is `|S|`-regular.
pub fn cayley_graph(kind: GroupKind, q: u64, s: &GeneratorSet) -> Result<Graph> {
    if s.elements.iter().any(|m| m.kind() != kind || m.q() != q) {
        return Err(Error::GeneratorNotInGroup(format!(
            "generator set is not over {} mod {q}",
            kind.name()
        )));
    }
    validate_generator_set(&s.elements)?;
    let elements = group_elements(kind, q)?;
    let index: HashMap<ProjMatrix, usize> =
        elements.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, g) in elements.iter().enumerate() {
        for gen in &s.elements {
            let j = index[&g.mul(gen)];
            edges.insert((i.min(j), i.max(j)));
        }
    }
    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    Graph::new(elements.len(), &edge_list)
}

/// Spectral-gap lower bound `eps(p, gamma) = (p+1) - p^(5/6+gamma)
/// - p^(1/6-gamma)` for `0 < gamma < 1/6`.
pub fn expander_gap_bound(p: u64, gamma: f64) -> Result<f64> {
    if !(0.0..1.0 / 6.0).contains(&gamma) || gamma == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} outside (0, 1/6)"
        )));
    }
    let pf = p as f64;
    Ok(pf + 1.0 - pf.powf(5.0 / 6.0 + gamma) - pf.powf(1.0 / 6.0 - gamma))
}

/// Verification record for a constructed Cayley graph.
#[derive(Debug, Clone)]
pub struct XReport {
    pub graph: Graph,
    pub kind: GroupKind,
    pub order: usize,
    pub degree: usize,
    pub connected: bool,
    pub lambda2: f64,
    pub ramanujan_bound: f64,
    pub is_ramanujan: bool,
    pub mu2: f64,
    pub eps_bound: f64,
    pub eps_after_insert: f64,
}

/// Builds `X^{p,q}` (Chiu generators for p = 2, LPS otherwise; PSL when
/// p is a square mod q, PGL otherwise) and verifies its properties:
/// connectivity, the Ramanujan inequality, the spectral gap, the
/// `eps(p, gamma)` lower bound and its image under one clique-insertion.
///
/// Disconnection is reported in the record, not an error: it falsifies
/// expectations visibly. `max_order` guards the dense eigensolve
/// (default [`DEFAULT_MAX_ORDER`]).
pub fn build_and_verify_x(
    p: u64,
    q: u64,
    gamma: f64,
    max_order: Option<usize>,
) -> Result<XReport> {
    let s = if p == 2 {
        chiu_generators(q)?
    } else {
        lps_generators(p, q)?
    };
    let kind = s.kind();
    let order = kind.order(q);
    let cap = max_order.unwrap_or(DEFAULT_MAX_ORDER);
    if order > cap {
        return Err(Error::GroupTooLarge { order, max: cap });
    }
    let graph = cayley_graph(kind, q, &s)?;
    let degree = s.degree();
    let connected = graph.is_connected();
    let spec = adjacency_spectrum(&graph)?;
    let report = if connected {
        ramanujan_check(&spec, degree, graph.two_coloring().is_some())?
    } else {
        // degenerate fallback: exclude only one copy of the top value
        let lambda2 = spec.values()[1..]
            .iter()
            .map(|v| v.abs())
            .fold(0.0_f64, f64::max);
        RamanujanReport {
            is_ramanujan: false,
            lambda2,
            bound: 2.0 * ((degree - 1) as f64).sqrt(),
        }
    };
    let mu2 = degree as f64 - spec.values()[1];
    let eps_bound = expander_gap_bound(p, gamma)?;
    let eps_after_insert = gap_iterate(eps_bound.max(0.0), degree, 1)?;
    Ok(XReport {
        graph,
        kind,
        order,
        degree,
        connected,
        lambda2: report.lambda2,
        ramanujan_bound: report.bound,
        is_ramanujan: report.is_ramanujan,
        mu2,
        eps_bound,
        eps_after_insert,
    })
}
