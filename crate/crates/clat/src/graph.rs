//! Undirected simple graphs and the structural transforms: line graph,
//! subdivision, and clique-insertion (replacing every vertex of an
//! r-regular graph by an r-clique).
//!
//! Vertex ids are `0..vertex_count`. Edges are stored as `(u, v)` with
//! `u < v`, sorted lexicographically; the position of an edge in that
//! list is its *edge index*, which all provenance maps key off.

use crate::error::{Error, Result};

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from a vertex count and an edge list.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation) and
    /// out-of-range vertex ids, each with a distinct error.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut canonical = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    id: u,
                    count: vertex_count,
                });
            }
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    id: v,
                    count: vertex_count,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        for w in canonical.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &canonical {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edges: canonical,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Index of edge `(u, v)` in the canonical edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Regular degree if all vertex degrees are equal (`None` for the
    /// empty graph).
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adjacency.first()?.len();
        self.adjacency
            .iter()
            .all(|l| l.len() == first)
            .then_some(first)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connectivity by breadth-first search. The empty graph counts as
    /// disconnected.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.vertex_count
    }

    /// Proper 2-coloring if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.vertex_count];
        for start in 0..self.vertex_count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for &w in &self.adjacency[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// New graph with the listed edge indices removed (vertex set kept).
    pub fn delete_edges(&self, indices: &[usize]) -> Graph {
        let mut drop = vec![false; self.edges.len()];
        for &i in indices {
            drop[i] = true;
        }
        let kept: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop[*i])
            .map(|(_, &e)| e)
            .collect();
        Graph::new(self.vertex_count, &kept).expect("subset of a valid edge list")
    }
}

/// Structural predicates used as preconditions elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPredicates {
    pub regular_degree: Option<usize>,
    pub connected: bool,
    pub two_connected: bool,
    pub max_degree: usize,
}

/// Computes regularity, connectivity, 2-connectivity (no articulation
/// vertex, at least 3 vertices) and the maximum degree.
pub fn predicates(g: &Graph) -> GraphPredicates {
    GraphPredicates {
        regular_degree: g.regular_degree(),
        connected: g.is_connected(),
        two_connected: is_two_connected(g),
        max_degree: g.max_degree(),
    }
}

fn is_two_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() {
        return false;
    }
    // Articulation vertices by iterative Tarjan lowlink from root 0.
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut timer = 0usize;
    let mut root_children = 0usize;
    // stack of (vertex, neighbor cursor)
    let mut stack = vec![(0usize, 0usize)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    while let Some(&(u, cursor)) = stack.last() {
        if cursor < g.neighbors(u).len() {
            stack.last_mut().unwrap().1 += 1;
            let w = g.neighbors(u)[cursor];
            if disc[w] == usize::MAX {
                parent[w] = u;
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if u == 0 {
                    root_children += 1;
                }
                stack.push((w, 0));
            } else if w != parent[u] {
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if p != 0 && low[u] >= disc[p] {
                    return false; // p is an articulation vertex
                }
            }
        }
    }
    root_children <= 1
}

/// Line graph: vertex `i` of the result is edge `i` of `g`; vertices are
/// adjacent iff the corresponding edges share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let m = g.edge_count();
    let mut edges = Vec::new();
    // In a simple graph two distinct edges share at most one endpoint,
    // so every adjacent pair is generated at exactly one vertex.
    for v in 0..g.vertex_count() {
        let incident: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&w| g.edge_index(v, w).unwrap())
            .collect();
        for i in 0..incident.len() {
            for j in i + 1..incident.len() {
                let (a, b) = (incident[i], incident[j]);
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    Graph::new(m, &edges).expect("line graph construction is simple")
}

/// Subdivision: a new vertex on every edge. Original vertices keep ids
/// `0..n`; edge `i` of `g` becomes vertex `n + i`. The result is
/// bipartite (old vertices vs. new vertices).
pub fn subdivision(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        edges.push((u, n + i));
        edges.push((v, n + i));
    }
    Graph::new(n + g.edge_count(), &edges).expect("subdivision construction is simple")
}

/// Map from each edge of the input graph to its image in the
/// clique-inserted graph: the unique edge joining the two clique
/// vertices that arose from the endpoints of the original edge.
#[derive(Debug, Clone)]
pub struct EdgeImageMap {
    images: Vec<usize>,
}

impl EdgeImageMap {
    /// Image of original edge index `e` as an edge index of `C(G)`.
    pub fn image(&self, e: usize) -> usize {
        self.images[e]
    }

    pub fn map_indices(&self, indices: &[usize]) -> Vec<usize> {
        indices.iter().map(|&e| self.images[e]).collect()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

fn require_regular_at_least_3(g: &Graph) -> Result<usize> {
    let degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    let min = degrees.iter().copied().min().unwrap_or(0);
    let max = degrees.iter().copied().max().unwrap_or(0);
    if min != max {
        return Err(Error::NotRegular { min, max });
    }
    if min < 3 {
        return Err(Error::DegreeTooSmall(min));
    }
    Ok(min)
}

/// Clique-insertion `C(G) = L(S(G))` of an r-regular graph, r >= 3.
///
/// The result has `r*n` vertices and `n*r*(r-1)/2 + m` edges and is
/// again r-regular. Vertex `(v, e)` (vertex of `g`, incident edge
/// index) maps to the result id in `(v, e)`-lexicographic order; this
/// is exactly the edge order of the subdivision, so the composition is
/// canonical as constructed.
pub fn clique_insert(g: &Graph) -> Result<(Graph, EdgeImageMap)> {
    require_regular_at_least_3(g)?;
    let n = g.vertex_count();
    let s = subdivision(g);
    let c = line_graph(&s);
    // The bridging edge for original edge j = (u, v) joins the C(G)
    // vertices for the subdivision edges (u, n+j) and (v, n+j).
    let mut images = Vec::with_capacity(g.edge_count());
    for (j, &(u, v)) in g.edges().iter().enumerate() {
        let cu = s
            .edges()
            .binary_search(&(u, n + j))
            .expect("subdivision edge present");
        let cv = s
            .edges()
            .binary_search(&(v, n + j))
            .expect("subdivision edge present");
        let image = c
            .edge_index(cu, cv)
            .expect("bridging edge present in C(G)");
        images.push(image);
    }
    Ok((c, EdgeImageMap { images }))
}

/// k-fold clique-insertion; `k = 0` returns the input unchanged.
pub fn iterate_clique_insert(g: &Graph, k: u32) -> Result<Graph> {
    if k == 0 {
        // Still validate the precondition so k = 0 and k > 0 accept the
        // same inputs.
        require_regular_at_least_3(g)?;
        return Ok(g.clone());
    }
    let mut current = g.clone();
    for _ in 0..k {
        let (next, _) = clique_insert(&current)?;
        current = next;
    }
    Ok(current)
}
