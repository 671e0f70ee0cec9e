//! The pendant-sliding transformation on graphs: take a vertex that
//! carries some pendants plus exactly one other neighbor, and move all of
//! its pendants onto that neighbor. On bipartite graphs this strictly
//! increases the Laplacian Estrada index, and iterating it from any tree
//! terminates at the star.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex where the transformation applies.
///
/// `vertex` has degree `pendants.len() + 1`; every vertex in `pendants`
/// is a degree-1 neighbor of `vertex`, and `anchor` is its unique
/// remaining (non-pendant) neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSite {
    pub vertex: usize,
    pub anchor: usize,
    pub pendants: Vec<usize>,
}

/// Computes the site at `v`, if `v` carries at least one pendant and has
/// exactly one non-pendant neighbor.
fn site_at(g: &Graph, v: usize) -> Option<SigmaSite> {
    let mut pendants = Vec::new();
    let mut others = Vec::new();
    for w in g.neighbors(v) {
        if g.degree(w) == 1 {
            pendants.push(w);
        } else {
            others.push(w);
        }
    }
    if pendants.is_empty() || others.len() != 1 {
        return None;
    }
    Some(SigmaSite { vertex: v, anchor: others[0], pendants })
}

/// All sites in increasing vertex order. Empty for stars (the center has
/// no non-pendant neighbor, the leaves carry no pendants).
pub fn find_sigma_sites(g: &Graph) -> Vec<SigmaSite> {
    (0..g.vertex_count()).filter_map(|v| site_at(g, v)).collect()
}

/// Applies the transformation at `site`: removes the pendant edges at
/// `site.vertex` and reattaches every pendant to `site.anchor`, leaving
/// the vertex and edge counts unchanged. The site is re-validated against
/// `g`, so a stale site is an error rather than a corrupted graph.
pub fn sigma_transform(g: &Graph, site: &SigmaSite) -> Result<Graph> {
    if site.vertex >= g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "site vertex {} out of range",
            site.vertex
        )));
    }
    let fresh = site_at(g, site.vertex)
        .ok_or_else(|| Error::InvalidParameter(format!("vertex {} is not a valid site", site.vertex)))?;
    if fresh != *site {
        return Err(Error::InvalidParameter(format!(
            "stale site at vertex {}: pendant set or anchor changed",
            site.vertex
        )));
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let touches_pendant = site.pendants.contains(&e.u) || site.pendants.contains(&e.v);
        if !touches_pendant {
            edges.push((e.u, e.v));
        }
    }
    for &p in &site.pendants {
        edges.push((site.anchor, p));
    }
    Graph::from_edges(n, &edges)
}

/// Repeatedly applies the transformation at the parent of a deepest leaf
/// until the star is reached; returns the whole chain starting with the
/// input tree. Depths are measured from the tree center (the smaller
/// indexed one when bicentral) and ties among parents are broken toward
/// the smallest vertex index, so chains are reproducible.
pub fn sigma_chain_to_star(t: &Graph) -> Result<Vec<Graph>> {
    if !t.is_tree() || t.vertex_count() < 3 {
        return Err(Error::InvalidInput("sigma chain requires a tree on n >= 3 vertices".into()));
    }
    let n = t.vertex_count();
    let mut chain = vec![t.clone()];
    // each step turns one internal vertex into a leaf, so n - 2 steps
    // always suffice; anything longer means the site selection is broken
    for _ in 0..n {
        let current = chain.last().unwrap();
        if current.max_degree() == n - 1 {
            return Ok(chain);
        }
        let root = current.tree_centers()?[0];
        let (depth, parent) = current.bfs(root);
        let deepest = depth.iter().map(|d| d.unwrap()).max().unwrap();
        let v = (0..n)
            .filter(|&x| depth[x] == Some(deepest))
            .map(|x| parent[x].unwrap())
            .min()
            .unwrap();
        let site = site_at(current, v).ok_or_else(|| {
            Error::Inconsistency(format!("deepest-leaf parent {v} is not a valid site"))
        })?;
        let next = sigma_transform(current, &site)?;
        chain.push(next);
    }
    Err(Error::Inconsistency(format!(
        "sigma chain did not reach the star within {n} steps"
    )))
}
