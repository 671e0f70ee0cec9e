//! Simple undirected graphs on dense vertex indices `0..n`, the canonical
//! constructions used throughout the crate (paths, stars, double stars,
//! brooms, cycles, complete graphs), line graphs, and tree predicates.
//!
//! Graphs are immutable after construction; every operation that "changes"
//! a graph returns a new one. Adjacency is stored as one sorted neighbor
//! set per vertex, so iteration order is always deterministic.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Self-loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Edge> {
        if a == b {
            return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
        }
        Ok(Edge { u: a.min(b), v: a.max(b) })
    }
}

/// A simple undirected graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Graph {
        Graph { adj: vec![BTreeSet::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting self-loops,
    /// out-of-range endpoints and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        if !self.adj[u].insert(v) {
            return Err(Error::InvalidInput(format!("duplicate edge ({u}, {v})")));
        }
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidParameter("path requires n >= 1".into()));
        }
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The star on `n` vertices with vertex 0 as its center.
    pub fn star(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidParameter("star requires n >= 1".into()));
        }
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidParameter("complete graph requires n >= 1".into()));
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter("cycle requires n >= 3".into()));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The double star: two adjacent centers, one carrying `a - 1` pendants
    /// and the other `b - 1`, with `a + b = n` and `2 <= a <= n / 2`.
    ///
    /// Vertex 0 is the center on the `a` side, vertex 1 the one on the
    /// `b` side.
    pub fn double_star(n: usize, a: usize) -> Result<Graph> {
        if n < 4 || a < 2 || 2 * a > n {
            return Err(Error::InvalidParameter(format!(
                "double star requires n >= 4 and 2 <= a <= n/2, got n={n}, a={a}"
            )));
        }
        let mut edges = vec![(0, 1)];
        for i in 2..=a {
            edges.push((0, i));
        }
        for i in (a + 1)..n {
            edges.push((1, i));
        }
        Graph::from_edges(n, &edges)
    }

    /// The broom on `n >= 6` vertices: the path `0 - 1 - 2 - 3 - 4` with
    /// `n - 5` extra pendants attached to vertex 2.
    pub fn broom(n: usize) -> Result<Graph> {
        if n < 6 {
            return Err(Error::InvalidParameter("broom requires n >= 6".into()));
        }
        let mut edges: Vec<_> = (1..5).map(|i| (i - 1, i)).collect();
        for i in 5..n {
            edges.push((2, i));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(&v)
    }

    /// All edges in lexicographic `(u, v)` order with `u < v`. This is the
    /// vertex numbering used by [`Graph::line_graph`].
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    /// Degree sequence sorted in decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(|s| s.len()).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// The line graph: one vertex per edge of `self` (numbered in the order
    /// of [`Graph::edges`]), adjacent whenever the edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let mut incident = vec![Vec::new(); self.adj.len()];
        for (idx, e) in edges.iter().enumerate() {
            incident[e.u].push(idx);
            incident[e.v].push(idx);
        }
        let mut adj = vec![BTreeSet::new(); edges.len()];
        let mut m = 0;
        for ids in &incident {
            for (i, &x) in ids.iter().enumerate() {
                for &y in &ids[i + 1..] {
                    if adj[x].insert(y) {
                        adj[y].insert(x);
                        m += 1;
                    }
                }
            }
        }
        Graph { adj, m }
    }

    /// BFS 2-coloring; `Some(colors)` iff the graph has no odd cycle.
    /// Works per component; isolated vertices get color 0.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.adj.len();
        let mut color = vec![u8::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// True for the empty graph and for any graph where every vertex is
    /// reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return true;
        }
        let (depth, _) = self.bfs(0);
        depth.iter().all(|d| d.is_some())
    }

    /// Connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        let n = self.adj.len();
        n >= 1 && self.m == n - 1 && self.is_connected()
    }

    /// BFS from `root`: per-vertex depth (None if unreachable) and parent.
    pub(crate) fn bfs(&self, root: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let n = self.adj.len();
        let mut depth = vec![None; n];
        let mut parent = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        depth[root] = Some(0);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let dv = depth[v].unwrap();
            for &w in &self.adj[v] {
                if depth[w].is_none() {
                    depth[w] = Some(dv + 1);
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        (depth, parent)
    }

    /// The one or two centers of a tree, found by peeling leaf layers.
    pub fn tree_centers(&self) -> Result<Vec<usize>> {
        if !self.is_tree() {
            return Err(Error::InvalidInput("tree_centers requires a tree".into()));
        }
        let n = self.adj.len();
        if n <= 2 {
            return Ok((0..n).collect());
        }
        let mut deg: Vec<usize> = self.adj.iter().map(|s| s.len()).collect();
        let mut removed = vec![false; n];
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            let mut next = Vec::new();
            for &v in &layer {
                removed[v] = true;
                remaining -= 1;
                for &w in &self.adj[v] {
                    if !removed[w] {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        Ok((0..n).filter(|&v| !removed[v]).collect())
    }

    /// Canonical certificate of a tree: the AHU encoding rooted at its
    /// center (minimum over both centers when the tree is bicentral).
    /// Two trees are isomorphic iff their certificates are equal.
    pub fn tree_certificate(&self) -> Result<Vec<u8>> {
        let centers = self.tree_centers()?;
        let certs: Vec<Vec<u8>> = centers.iter().map(|&c| self.ahu_encoding(c)).collect();
        Ok(certs.into_iter().min().unwrap())
    }

    /// AHU encoding of the tree rooted at `root`: every subtree becomes
    /// `(` + its children's encodings in sorted order + `)`.
    fn ahu_encoding(&self, root: usize) -> Vec<u8> {
        let n = self.adj.len();
        let (depth, parent) = self.bfs(root);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&v| std::cmp::Reverse(depth[v]));
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            if let Some(p) = parent[v] {
                children[p].push(v);
            }
        }
        let mut label: Vec<Vec<u8>> = vec![Vec::new(); n];
        for &v in &order {
            let mut child_labels: Vec<Vec<u8>> =
                children[v].iter().map(|&c| std::mem::take(&mut label[c])).collect();
            child_labels.sort();
            let mut enc = Vec::with_capacity(2 + child_labels.iter().map(|l| l.len()).sum::<usize>());
            enc.push(b'(');
            for l in child_labels {
                enc.extend_from_slice(&l);
            }
            enc.push(b')');
            label[v] = enc;
        }
        std::mem::take(&mut label[root])
    }
}

/// Tree isomorphism via canonical center-rooted encodings.
/// Errors on non-tree input.
pub fn is_isomorphic_tree(a: &Graph, b: &Graph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() {
        // still validate both inputs
        let _ = a.tree_certificate()?;
        let _ = b.tree_certificate()?;
        return Ok(false);
    }
    Ok(a.tree_certificate()? == b.tree_certificate()?)
}
