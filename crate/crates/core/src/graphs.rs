//! Simple undirected graphs on vertices `1..=n`, the constructors used to
//! build graph subalgebras, and the structural predicates (cliques, trees,
//! line graphs, block graphs) the classification harness needs.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph size must be at least 1")]
    EmptyGraph,
    #[error("edge ({0}, {1}) is a loop")]
    Loop(u32, u32),
    #[error("edge ({0}, {1}) has an endpoint outside 1..={2}")]
    OutOfRange(u32, u32, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("graph enumeration is limited to {max} vertices (asked for {asked})")]
    EnumerationBound { asked: usize, max: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Simple graph with vertices `1..=n` and edges stored as `(i, j)`, `i < j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Graph on `n` vertices without edges. `n = 0` is allowed here; the
    /// named constructors reject it.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a, b));
            }
            let (i, j) = (a.min(b), a.max(b));
            if i < 1 || j as usize > n {
                return Err(GraphError::OutOfRange(a, b, n));
            }
            if !g.edges.insert((i, j)) {
                return Err(GraphError::DuplicateEdge(i, j));
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        self.edges().collect()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .edges()
            .filter_map(|(i, j)| {
                if i == v {
                    Some(j)
                } else if j == v {
                    Some(i)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges().filter(|&(i, j)| i == v || j == v).count()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for (i, j) in self.edges() {
            adj[i as usize].push(j as usize);
            adj[j as usize].push(i as usize);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start as u32];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w as u32);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Applies a relabeling `v -> perm[v - 1]` (a permutation of `1..=n`).
    pub fn relabel(&self, perm: &[u32]) -> Graph {
        assert_eq!(perm.len(), self.n, "relabeling must cover every vertex");
        let edges = self
            .edges()
            .map(|(i, j)| {
                let (a, b) = (perm[i as usize - 1], perm[j as usize - 1]);
                (a.min(b), a.max(b))
            })
            .collect();
        Graph { n: self.n, edges }
    }
}

fn nonzero(n: usize) -> Result<(), GraphError> {
    if n == 0 {
        Err(GraphError::EmptyGraph)
    } else {
        Ok(())
    }
}

/// The path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    nonzero(n)?;
    let edges: Vec<_> = (1..n as u32).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges)
}

/// The star with `n` leaves: center 1, leaves `2..=n+1`.
pub fn star(n: usize) -> Result<Graph, GraphError> {
    nonzero(n)?;
    let edges: Vec<_> = (2..=n as u32 + 1).map(|j| (1, j)).collect();
    Graph::from_edges(n + 1, &edges)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    nonzero(n)?;
    let mut edges = Vec::new();
    for i in 1..=n as u32 {
        for j in i + 1..=n as u32 {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Parts `1..=a` and `a+1..=a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    nonzero(a)?;
    nonzero(b)?;
    let mut edges = Vec::new();
    for i in 1..=a as u32 {
        for j in a as u32 + 1..=(a + b) as u32 {
            edges.push((i, j));
        }
    }
    Graph::from_edges(a + b, &edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::EmptyGraph);
    }
    let mut edges: Vec<_> = (1..n as u32).map(|i| (i, i + 1)).collect();
    edges.push((1, n as u32));
    Graph::from_edges(n, &edges)
}

/// Star with subdivided legs: center 1, then each leg numbered outward.
pub fn spider(legs: &[usize]) -> Result<Graph, GraphError> {
    let n = 1 + legs.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 2u32;
    for &len in legs {
        nonzero(len)?;
        let mut prev = 1u32;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Vertices of `g2` are shifted past those of `g1`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.n as u32;
    let mut edges = g1.edges.clone();
    edges.extend(g2.edges().map(|(i, j)| (i + shift, j + shift)));
    Graph {
        n: g1.n + g2.n,
        edges,
    }
}

/// Uniformly random labeled tree on `n` vertices via a Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    nonzero(n)?;
    if n == 1 {
        return Ok(Graph::empty(1));
    }
    if n == 2 {
        return Graph::from_edges(2, &[(1, 2)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<u32> = (0..n - 2).map(|_| rng.gen_range(1..=n as u32)).collect();
    Graph::from_edges(n, &prufer_decode(n, &code))
}

fn prufer_decode(n: usize, code: &[u32]) -> Vec<(u32, u32)> {
    let mut degree = vec![1u32; n + 1];
    for &c in code {
        degree[c as usize] += 1;
    }
    let mut leaves: BTreeSet<u32> = (1..=n as u32)
        .filter(|&v| degree[v as usize] == 1)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = *leaves.iter().next().expect("a leaf always exists");
        leaves.remove(&leaf);
        edges.push((leaf, c));
        degree[c as usize] -= 1;
        if degree[c as usize] == 1 {
            leaves.insert(c);
        }
    }
    let rest: Vec<u32> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub fn is_connected(g: &Graph) -> bool {
    g.components().len() <= 1
}

pub fn is_tree(g: &Graph) -> bool {
    g.n >= 1 && g.edge_count() + 1 == g.n && is_connected(g)
}

/// Every connected component is a complete graph (isolated vertices count
/// as `K_1`).
pub fn is_disjoint_union_of_cliques(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        comp.iter()
            .enumerate()
            .all(|(k, &a)| comp[k + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

/// Triangles `(i, j, k)` with `i < j < k`, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for (i, j) in g.edges() {
        for k in j + 1..=g.n as u32 {
            if g.has_edge(i, k) && g.has_edge(j, k) {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// The lexicographically least `(p, q, r)` with `p < r`, `(p, q)` and
/// `(q, r)` edges and `(p, r)` not an edge: an induced path on three
/// vertices centered at `q`.
pub fn induced_a3(g: &Graph) -> Option<(u32, u32, u32)> {
    let n = g.n as u32;
    for p in 1..=n {
        for q in 1..=n {
            if q == p || !g.has_edge(p, q) {
                continue;
            }
            for r in p + 1..=n {
                if r != q && g.has_edge(q, r) && !g.has_edge(p, r) {
                    return Some((p, q, r));
                }
            }
        }
    }
    None
}

/// Line graph: vertex `k + 1` stands for the `k`-th edge of `g` in
/// lexicographic order; two vertices are adjacent when the edges share an
/// endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let edges = g.edge_list();
    let mut out = Graph::empty(edges.len());
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            let (e, f) = (edges[a], edges[b]);
            if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                out.edges.insert((a as u32 + 1, b as u32 + 1));
            }
        }
    }
    out
}

/// Vertex sets of the biconnected components (blocks with at least one
/// edge), each sorted, ordered by least vertex then lexicographically.
pub fn biconnected_components(g: &Graph) -> Vec<Vec<u32>> {
    struct State {
        adj: Vec<Vec<usize>>,
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<u32>>,
    }

    impl State {
        fn visit(&mut self, v: usize, parent: Option<usize>) {
            self.timer += 1;
            self.disc[v] = self.timer;
            self.low[v] = self.timer;
            for k in 0..self.adj[v].len() {
                let w = self.adj[v][k];
                if self.disc[w] == 0 {
                    self.stack.push((v, w));
                    self.visit(w, Some(v));
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.disc[v] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = self.stack.pop() {
                            block.insert(a as u32);
                            block.insert(b as u32);
                            if (a, b) == (v, w) {
                                break;
                            }
                        }
                        self.blocks.push(block.into_iter().collect());
                    }
                } else if Some(w) != parent && self.disc[w] < self.disc[v] {
                    self.stack.push((v, w));
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            }
        }
    }

    let mut st = State {
        adj: g.adjacency(),
        disc: vec![0; g.n + 1],
        low: vec![0; g.n + 1],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 1..=g.n {
        if st.disc[v] == 0 {
            st.visit(v, None);
        }
    }
    let mut blocks = st.blocks;
    blocks.sort();
    blocks
}

/// Every biconnected component induces a complete graph.
pub fn is_block_graph(g: &Graph) -> bool {
    biconnected_components(g).iter().all(|block| {
        block
            .iter()
            .enumerate()
            .all(|(k, &a)| block[k + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

/// Largest vertex count `enumerate_graphs` accepts.
pub const MAX_ENUMERATION_VERTICES: usize = 7;

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // position of (i, j), i < j, 0-based, in the row-major upper triangle
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Adjacency bitstring: bit `k` (counted from the most significant end)
/// is set when the `k`-th pair of the upper triangle is an edge.
fn adjacency_code(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> u32 {
    let pairs = n * (n - 1) / 2;
    let mut code = 0u32;
    for &(a, b) in edges {
        let (i, j) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
        code |= 1 << (pairs - 1 - pair_index(n, i, j));
    }
    code
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permutations(n, &mut current, &mut out);
    out
}

fn heap_permutations(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(current.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(k - 1, current, out);
        if k.is_multiple_of(2) {
            current.swap(i, k - 1);
        } else {
            current.swap(0, k - 1);
        }
    }
    heap_permutations(k - 1, current, out);
}

/// Canonical form: the minimal adjacency bitstring over all vertex
/// permutations, decoded back into a graph.
pub fn canonical_form(g: &Graph) -> Graph {
    let perms = all_permutations(g.n);
    canonical_with(g, &perms)
}

fn canonical_with(g: &Graph, perms: &[Vec<usize>]) -> Graph {
    let n = g.n;
    if n <= 1 {
        return g.clone();
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(i, j)| (i as usize - 1, j as usize - 1))
        .collect();
    let code = perms
        .iter()
        .map(|perm| adjacency_code(n, &edges, perm))
        .min()
        .expect("at least one permutation");
    decode_adjacency(n, code)
}

fn decode_adjacency(n: usize, code: u32) -> Graph {
    let pairs = n * (n - 1) / 2;
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if code & (1 << (pairs - 1 - pair_index(n, i, j))) != 0 {
                g.edges.insert((i as u32 + 1, j as u32 + 1));
            }
        }
    }
    g
}

/// One canonical representative per isomorphism class of graphs on exactly
/// `n` vertices, sorted by edge count then by canonical code.
pub fn enumerate_graphs_on(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(GraphError::EnumerationBound {
            asked: n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    nonzero(n)?;
    let perms = all_permutations(n);
    let pairs: Vec<(u32, u32)> = complete(n)?.edge_list();
    // grow classes one edge at a time; every graph with k+1 edges is some
    // graph with k edges plus one edge
    let mut layer: BTreeSet<Graph> = BTreeSet::from([Graph::empty(n)]);
    let mut all: Vec<Graph> = layer.iter().cloned().collect();
    for _ in 0..pairs.len() {
        let extensions: Vec<Graph> = layer
            .par_iter()
            .flat_map_iter(|g| {
                pairs
                    .iter()
                    .filter(|&&(i, j)| !g.has_edge(i, j))
                    .map(|&(i, j)| {
                        let mut h = g.clone();
                        h.edges.insert((i, j));
                        canonical_with(&h, &perms)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let next: BTreeSet<Graph> = extensions.into_iter().collect();
        all.extend(next.iter().cloned());
        layer = next;
    }
    let mut seen = HashSet::new();
    all.retain(|g| seen.insert(g.clone()));
    all.sort_by_key(|g| {
        let edges: Vec<(usize, usize)> = g
            .edges()
            .map(|(i, j)| (i as usize - 1, j as usize - 1))
            .collect();
        let identity: Vec<usize> = (0..n).collect();
        (
            g.edge_count(),
            if n > 1 {
                adjacency_code(n, &edges, &identity)
            } else {
                0
            },
        )
    });
    Ok(all)
}

/// Every isomorphism class of graphs with `1..=max_vertices` vertices
/// (disconnected graphs included), ordered by vertex count.
pub fn enumerate_graphs(max_vertices: usize) -> Result<Vec<Graph>, GraphError> {
    if max_vertices > MAX_ENUMERATION_VERTICES {
        return Err(GraphError::EnumerationBound {
            asked: max_vertices,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        out.extend(enumerate_graphs_on(n)?);
    }
    Ok(out)
}

/// Relabels a tree by breadth-first order from a vertex of maximum degree
/// (least label on ties), so every vertex except the root has exactly one
/// neighbor with a smaller label.
pub fn center_minimal_labeling(g: &Graph) -> Graph {
    if g.n == 0 {
        return g.clone();
    }
    let adj = g.adjacency();
    let root = (1..=g.n)
        .max_by_key(|&v| (adj[v].len(), std::cmp::Reverse(v)))
        .expect("nonempty");
    let mut perm = vec![0u32; g.n];
    let mut next = 1u32;
    let mut seen = vec![false; g.n + 1];
    for start in std::iter::once(root).chain(1..=g.n) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            perm[v - 1] = next;
            next += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    g.relabel(&perm)
}

/// Parses the graph file format: `n <count>`, then one `i j` edge per line;
/// `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: String| GraphError::Parse { line: line_no, msg };
        match (n, tokens.as_slice()) {
            (None, ["n", count]) => {
                n = Some(
                    count
                        .parse()
                        .map_err(|_| err(format!("bad vertex count `{count}`")))?,
                );
            }
            (None, _) => return Err(err("expected `n <count>` header".into())),
            (Some(_), [a, b]) => {
                let a: u32 = a.parse().map_err(|_| err(format!("bad vertex `{a}`")))?;
                let b: u32 = b.parse().map_err(|_| err(format!("bad vertex `{b}`")))?;
                edges.push((a, b));
            }
            (Some(_), _) => return Err(err(format!("expected `i j`, found `{line}`"))),
        }
    }
    let n = n.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing `n <count>` header".into(),
    })?;
    Graph::from_edges(n, &edges)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n);
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let p = path(3).unwrap();
        assert_eq!(p.edge_list(), vec![(1, 2), (2, 3)]);
        let s = star(3).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edge_list(), vec![(1, 2), (1, 3), (1, 4)]);
        let u = disjoint_union(&complete(2).unwrap(), &complete(3).unwrap());
        assert_eq!((u.vertex_count(), u.edge_count()), (5, 4));
        assert_eq!(complete_bipartite(2, 3).unwrap().edge_count(), 6);
        assert_eq!(path(0), Err(GraphError::EmptyGraph));
        assert!(star(0).is_err());
        assert_eq!(
            spider(&[2, 1, 1]).unwrap().edge_list(),
            vec![(1, 2), (1, 4), (1, 5), (2, 3)]
        );
    }

    #[test]
    fn from_edges_validation() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::Loop(1, 1)));
        assert_eq!(
            Graph::from_edges(3, &[(1, 4)]),
            Err(GraphError::OutOfRange(1, 4, 3))
        );
        assert_eq!(
            Graph::from_edges(3, &[(1, 2), (2, 1)]),
            Err(GraphError::DuplicateEdge(1, 2))
        );
    }

    #[test]
    fn clique_predicates() {
        let p3 = path(3).unwrap();
        assert_eq!(induced_a3(&p3), Some((1, 2, 3)));
        assert!(!is_disjoint_union_of_cliques(&p3));
        let u = disjoint_union(&complete(2).unwrap(), &complete(3).unwrap());
        assert!(is_disjoint_union_of_cliques(&u));
        assert_eq!(induced_a3(&u), None);
        assert_eq!(triangles(&complete(4).unwrap()).len(), 4);
        assert!(is_disjoint_union_of_cliques(&Graph::empty(3)));
        // 4-cycle 1-2-3-4-1: least triple starts at p = 1 with q = 2
        assert_eq!(induced_a3(&cycle(4).unwrap()), Some((1, 2, 3)));
    }

    #[test]
    fn line_graphs() {
        assert_eq!(line_graph(&star(3).unwrap()), complete(3).unwrap());
        assert_eq!(line_graph(&path(4).unwrap()), path(3).unwrap());
    }

    #[test]
    fn blocks() {
        let bowtie =
            Graph::from_edges(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert_eq!(
            biconnected_components(&bowtie),
            vec![vec![1, 2, 3], vec![3, 4, 5]]
        );
        assert!(is_block_graph(&bowtie));
        assert!(!is_block_graph(&cycle(4).unwrap()));
        assert_eq!(
            biconnected_components(&path(3).unwrap()),
            vec![vec![1, 2], vec![2, 3]]
        );
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..20 {
            let t = random_tree(8, seed).unwrap();
            assert!(is_tree(&t));
            assert_eq!(t.edge_count(), 7);
            assert_eq!(random_tree(8, seed).unwrap(), t);
        }
        assert!(is_tree(&random_tree(1, 0).unwrap()));
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_graphs_on(3).unwrap().len(), 4);
        assert_eq!(enumerate_graphs(3).unwrap().len(), 7);
        assert!(enumerate_graphs(8).is_err());
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let g = path(4).unwrap();
        let h = g.relabel(&[3, 1, 4, 2]);
        assert_ne!(g, h);
        assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn center_minimal_labels() {
        // path 1-2-3: max degree vertex 2 becomes 1
        let t = center_minimal_labeling(&path(3).unwrap());
        assert_eq!(t.edge_list(), vec![(1, 2), (1, 3)]);
        let sp = center_minimal_labeling(&spider(&[2, 1, 1]).unwrap());
        assert_eq!(sp.degree(1), 3);
    }

    #[test]
    fn graph_text_roundtrip() {
        let g = disjoint_union(&complete(2).unwrap(), &complete(3).unwrap());
        let text = serialize_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        let parsed = parse_graph("# k2\nn 2\n1 2 # edge\n").unwrap();
        assert_eq!(parsed, complete(2).unwrap());
        assert!(matches!(
            parse_graph("1 2\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(parse_graph("n 2\n1 3\n").is_err());
    }
}
