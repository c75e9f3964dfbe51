//! Labeled simple forests and trees, with the structural vocabulary used by
//! the star-basis machinery: internal edges, deep vertices, leaf components
//! and the internal subgraph. Also hosts AHU canonicalization, isomorphism
//! testing, exhaustive enumeration of trees up to isomorphism, and the
//! edge-list / graph6 file formats.
//!
//! Vertices are contiguous integers `1..=n`. Forests are immutable after
//! construction; every operation is pure.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("edge {0}-{1} repeated")]
    RepeatedEdge(usize, usize),
    #[error("graph has a cycle; forests must be acyclic")]
    Cyclic,
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("operation requires a connected tree")]
    Disconnected,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph6 data: {0}")]
    Graph6(String),
}

/// An undirected edge, stored with endpoints ordered `min <= max`.
pub type Edge = (usize, usize);

fn norm(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple acyclic graph on labeled vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl Forest {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(
        n: usize,
        edges: I,
    ) -> Result<Self, ForestError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == 0 || u > n {
                return Err(ForestError::VertexOutOfRange(u, n));
            }
            if v == 0 || v > n {
                return Err(ForestError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(ForestError::LoopEdge(u));
            }
            if !set.insert(norm(u, v)) {
                return Err(ForestError::RepeatedEdge(u.min(v), u.max(v)));
            }
        }
        let f = Forest { n, edges: set };
        // acyclic <=> |E| + #components = n
        if f.edges.len() + f.component_count() != n {
            return Err(ForestError::Cyclic);
        }
        Ok(f)
    }

    /// A single star `St_k` with center 1.
    pub fn star(k: usize) -> Forest {
        Forest::new(k, (2..=k).map(|v| (1, v))).expect("star is a tree")
    }

    /// The path `1-2-...-k`.
    pub fn path(k: usize) -> Forest {
        Forest::new(k, (1..k).map(|v| (v, v + 1))).expect("path is a tree")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&norm(u, v))
    }

    pub fn degree(&self, v: usize) -> Result<usize, ForestError> {
        if v == 0 || v > self.n {
            return Err(ForestError::VertexOutOfRange(v, self.n));
        }
        Ok(self.edges.iter().filter(|&&(a, b)| a == v || b == v).count())
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n + 1];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(v) = queue.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1
    }

    /// Edges whose both endpoints have degree >= 2.
    pub fn internal_edges(&self) -> BTreeSet<Edge> {
        let deg = self.degrees();
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| deg[u] >= 2 && deg[v] >= 2)
            .collect()
    }

    /// Internal vertices with no leaf neighbor.
    pub fn deep_vertices(&self) -> BTreeSet<usize> {
        let deg = self.degrees();
        let adj = self.adjacency();
        (1..=self.n)
            .filter(|&v| deg[v] >= 2 && adj[v].iter().all(|&w| deg[w] >= 2))
            .collect()
    }

    /// Leaf components: the connected components of `F \ I(F)`. Each is a
    /// star; the decomposition records its center and members.
    pub fn leaf_components(&self) -> LeafComponentDecomposition {
        let internal = self.internal_edges();
        let residual = Forest {
            n: self.n,
            edges: self.edges.difference(&internal).copied().collect(),
        };
        let rdeg = residual.degrees();
        let mut components = Vec::new();
        for members in residual.components() {
            // Star center: the unique vertex of degree > 1 in the residual
            // component, or (for St_1/St_2) the vertex carrying internal
            // edges in the original forest, falling back to the smallest.
            let center = members
                .iter()
                .copied()
                .find(|&v| rdeg[v] > 1)
                .or_else(|| {
                    let full_deg = self.degrees();
                    members
                        .iter()
                        .copied()
                        .find(|&v| full_deg[v] > rdeg[v])
                })
                .unwrap_or(members[0]);
            let order = members.len();
            components.push(LeafComponent { center, members, order });
        }
        components.sort_by(|a, b| b.order.cmp(&a.order).then(a.center.cmp(&b.center)));
        LeafComponentDecomposition { components, internal_edges: internal }
    }

    /// The leaf component partition `lambda_LC(F)`.
    pub fn leaf_component_partition(&self) -> Partition {
        Partition::from_multiset(self.leaf_components().components.iter().map(|c| c.order))
            .expect("component orders are positive")
    }

    /// Number of internal edges incident to `v`.
    pub fn internal_degree(&self, v: usize) -> Result<usize, ForestError> {
        if v == 0 || v > self.n {
            return Err(ForestError::VertexOutOfRange(v, self.n));
        }
        Ok(self.internal_edges().iter().filter(|&&(a, b)| a == v || b == v).count())
    }

    /// The internal subgraph of a tree: vertices of internal degree > 1
    /// together with their incident leaves, and all edges among them.
    /// Returned as (vertex set, edge set) within the labeling of `self`.
    #[allow(clippy::needless_range_loop)] // vertices are 1-based labels, not indices
    pub fn internal_subgraph(&self) -> Result<(BTreeSet<usize>, BTreeSet<Edge>), ForestError> {
        if !self.is_tree() {
            return Err(ForestError::Disconnected);
        }
        let deg = self.degrees();
        let adj = self.adjacency();
        let mut verts = BTreeSet::new();
        for v in 1..=self.n {
            if self.internal_degree(v)? > 1 {
                verts.insert(v);
                for &w in &adj[v] {
                    if deg[w] == 1 {
                        verts.insert(w);
                    }
                }
            }
        }
        let edges: BTreeSet<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| verts.contains(&u) && verts.contains(&v))
            .collect();
        Ok((verts, edges))
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Forest, ForestError> {
        let e = norm(u, v);
        if !self.edges.contains(&e) {
            return Err(ForestError::MissingEdge(e.0, e.1));
        }
        let mut edges = self.edges.clone();
        edges.remove(&e);
        Ok(Forest { n: self.n, edges })
    }

    /// Leaf-contraction `F (.) e`: contract `e = uv` into its smaller
    /// endpoint and attach a new leaf in place of the removed vertex. The
    /// vertex count is preserved and labels stay `1..=n`: the larger endpoint
    /// becomes the new leaf. Returns the forest and the new leaf's label.
    pub fn leaf_contract(&self, u: usize, v: usize) -> Result<(Forest, usize), ForestError> {
        let e = norm(u, v);
        if !self.edges.contains(&e) {
            return Err(ForestError::MissingEdge(e.0, e.1));
        }
        let (keep, drop) = e;
        let mut edges = BTreeSet::new();
        for &(a, b) in &self.edges {
            if (a, b) == e {
                continue;
            }
            let a2 = if a == drop { keep } else { a };
            let b2 = if b == drop { keep } else { b };
            edges.insert(norm(a2, b2));
        }
        // `drop` is now free; reuse it as the attached leaf.
        edges.insert(e);
        Ok((Forest { n: self.n, edges }, drop))
    }

    /// Dot-contraction: leaf-contraction with the new leaf's edge removed,
    /// leaving an isolated vertex. Vertex count is preserved.
    pub fn dot_contract(&self, u: usize, v: usize) -> Result<Forest, ForestError> {
        let (f, leaf) = self.leaf_contract(u, v)?;
        let keep = norm(u, v).0;
        f.delete_edge(keep, leaf)
    }

    /// AHU canonical form, equal for two forests iff they are isomorphic.
    /// Components are encoded as rooted-at-center parenthesis codes and
    /// sorted; the vertex count is prefixed so codes of different orders
    /// never collide.
    pub fn canonical_form(&self) -> String {
        let adj = self.adjacency();
        let mut codes: Vec<String> = self
            .components()
            .iter()
            .map(|comp| component_code(comp, &adj))
            .collect();
        codes.sort();
        format!("{}:{}", self.n, codes.concat())
    }

    pub fn is_isomorphic(&self, other: &Forest) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }

    /// Longest path length (in edges) of a tree.
    pub fn diameter(&self) -> Result<usize, ForestError> {
        if !self.is_tree() {
            return Err(ForestError::Disconnected);
        }
        let adj = self.adjacency();
        let (far, _) = bfs_farthest(1, &adj, self.n);
        let (_, dist) = bfs_farthest(far, &adj, self.n);
        Ok(dist)
    }

    /// Relabels vertices by the permutation `perm` (perm[v] is the new label
    /// of v, 1-based). Used by tests of relabeling invariance.
    pub fn relabel(&self, perm: &[usize]) -> Result<Forest, ForestError> {
        Forest::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    // ---- edge-list text format ----

    /// Parses the edge-list text format: one `u v` pair per line, `#`
    /// comments and blank lines ignored, optional `n=<k>` header for
    /// isolated vertices. Without a header, `n` is the maximum label seen.
    pub fn parse_edge_list(text: &str) -> Result<Forest, ForestError> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_label = 0usize;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                n = Some(rest.trim().parse().map_err(|_| ForestError::Parse {
                    line: line_no,
                    msg: format!("invalid vertex count {rest:?}"),
                })?);
                continue;
            }
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ForestError::Parse {
                    line: line_no,
                    msg: format!("expected 'u v', got {line:?}"),
                })?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ForestError::Parse {
                    line: line_no,
                    msg: format!("expected 'u v', got {line:?}"),
                })?;
            if it.next().is_some() {
                return Err(ForestError::Parse {
                    line: line_no,
                    msg: format!("trailing tokens in {line:?}"),
                });
            }
            max_label = max_label.max(u).max(v);
            edges.push((u, v));
        }
        Forest::new(n.unwrap_or(max_label), edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    // ---- graph6 ----

    /// Parses a graph6-encoded graph (n <= 62). Rejects cyclic input.
    pub fn parse_graph6(s: &str) -> Result<Forest, ForestError> {
        let s = s.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(ForestError::Graph6("empty input".into()));
        }
        let n = (bytes[0] as i32) - 63;
        if !(0..=62).contains(&n) {
            return Err(ForestError::Graph6("only n <= 62 supported".into()));
        }
        let n = n as usize;
        let nbits = n * (n - 1) / 2;
        let need = nbits.div_ceil(6);
        if bytes.len() < 1 + need {
            return Err(ForestError::Graph6("truncated bit vector".into()));
        }
        let mut bits = Vec::with_capacity(need * 6);
        for &b in &bytes[1..1 + need] {
            let x = (b as i32) - 63;
            if !(0..64).contains(&x) {
                return Err(ForestError::Graph6(format!("invalid byte {b}")));
            }
            for k in (0..6).rev() {
                bits.push((x >> k) & 1 == 1);
            }
        }
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[idx] {
                    edges.push((i + 1, j + 1));
                }
                idx += 1;
            }
        }
        Forest::new(n, edges)
    }

    pub fn to_graph6(&self) -> Result<String, ForestError> {
        if self.n > 62 {
            return Err(ForestError::Graph6("only n <= 62 supported".into()));
        }
        let n = self.n;
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(self.has_edge(i + 1, j + 1));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut out = String::new();
        out.push((n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let mut x = 0u8;
            for &b in chunk {
                x = (x << 1) | (b as u8);
            }
            out.push((x + 63) as char);
        }
        Ok(out)
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest(n={}, edges={:?})", self.n, self.edges)
    }
}

/// One leaf component: a star in `F \ I(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafComponent {
    pub center: usize,
    pub members: Vec<usize>,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct LeafComponentDecomposition {
    /// Sorted by decreasing order, ties by center label.
    pub components: Vec<LeafComponent>,
    pub internal_edges: BTreeSet<Edge>,
}

impl LeafComponentDecomposition {
    /// The leaf component containing vertex `v`.
    pub fn component_of(&self, v: usize) -> &LeafComponent {
        self.components
            .iter()
            .find(|c| c.members.contains(&v))
            .expect("components partition the vertex set")
    }
}

fn bfs_farthest(start: usize, adj: &[Vec<usize>], n: usize) -> (usize, usize) {
    let mut dist = vec![usize::MAX; n + 1];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    let mut far = (start, 0);
    while let Some(v) = queue.pop_front() {
        if dist[v] > far.1 {
            far = (v, dist[v]);
        }
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    far
}

/// Rooted AHU code: `(` + sorted child codes + `)`.
fn rooted_code(v: usize, parent: usize, adj: &[Vec<usize>]) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(w, v, adj))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Canonical code of one tree component, rooted at its center. Bicentral
/// trees are encoded as a virtual root over the two center-rooted halves.
fn component_code(members: &[usize], adj: &[Vec<usize>]) -> String {
    let centers = component_centers(members, adj);
    match centers[..] {
        [c] => rooted_code(c, 0, adj),
        [c1, c2] => {
            let a = rooted_code(c1, c2, adj);
            let b = rooted_code(c2, c1, adj);
            // Brackets keep bicentral codes disjoint from rooted codes, so a
            // bicentral tree never collides with a unicentral one of a
            // different order inside the same forest.
            if a <= b {
                format!("[{a}{b}]")
            } else {
                format!("[{b}{a}]")
            }
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

/// The one or two centers of a tree component, by iterated leaf removal.
fn component_centers(members: &[usize], adj: &[Vec<usize>]) -> Vec<usize> {
    let mut deg: std::collections::HashMap<usize, usize> =
        members.iter().map(|&v| (v, adj[v].len())).collect();
    let mut alive: BTreeSet<usize> = members.iter().copied().collect();
    let mut leaves: Vec<usize> = alive.iter().copied().filter(|v| deg[v] <= 1).collect();
    while alive.len() > 2 {
        let mut next = Vec::new();
        for v in leaves {
            alive.remove(&v);
            for &w in &adj[v] {
                if alive.contains(&w) {
                    let d = deg.get_mut(&w).unwrap();
                    *d -= 1;
                    if *d == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    alive.into_iter().collect()
}

/// All rooted trees on `n` vertices as canonical level sequences, via the
/// Beyer-Hedetniemi successor rule (levels start at 0 for the root).
struct LevelSequences {
    levels: Vec<usize>,
    first: bool,
    done: bool,
}

impl LevelSequences {
    fn new(n: usize) -> Self {
        LevelSequences { levels: (0..n).collect(), first: true, done: n == 0 }
    }
}

impl Iterator for LevelSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.levels.clone());
        }
        // Find the last position with level > 1; terminate at the star shape.
        let p = match self.levels.iter().rposition(|&l| l > 1) {
            Some(p) => p,
            None => {
                self.done = true;
                return None;
            }
        };
        let q = (0..p).rfind(|&q| self.levels[q] == self.levels[p] - 1).expect("parent exists");
        let shift = p - q;
        for i in p..self.levels.len() {
            self.levels[i] = self.levels[i - shift];
        }
        Some(self.levels.clone())
    }
}

fn forest_from_levels(levels: &[usize]) -> Forest {
    let n = levels.len();
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = (0..i).rfind(|&j| levels[j] == levels[i] - 1).expect("canonical sequence");
        edges.push((parent + 1, i + 1));
    }
    Forest::new(n, edges).expect("level sequence encodes a tree")
}

/// One representative per isomorphism class of trees on `n` vertices.
///
/// Rooted trees are generated by level sequences and deduplicated by the
/// canonical form of their underlying free tree; the rooted count (87811 at
/// n = 13) stays small enough that this is instant at desk scale.
pub fn enumerate_trees(n: usize) -> Vec<Forest> {
    assert!(n >= 1, "enumerate_trees requires n >= 1");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for levels in LevelSequences::new(n) {
        let t = forest_from_levels(&levels);
        if seen.insert(t.canonical_form()) {
            out.push(t);
        }
    }
    out
}

/// Decodes a Pruefer sequence over `1..=n` into the tree it labels.
/// Exposed for brute-force enumeration oracles in tests.
pub fn tree_from_pruefer(n: usize, seq: &[usize]) -> Forest {
    assert_eq!(seq.len(), n.saturating_sub(2));
    let mut deg = vec![1usize; n + 1];
    for &v in seq {
        deg[v] += 1;
    }
    let mut edges = Vec::new();
    let mut ptr = 1;
    while deg[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        deg[v] -= 1;
        if deg[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while deg[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    if n >= 2 {
        edges.push((leaf, n));
    }
    Forest::new(n, edges).expect("Pruefer decodes to a tree")
}
