//! Seeded random graphs and trees for the verification commands.
//!
//! The generator is a fixed splitmix64 so identical seeds give identical
//! samples on every platform; random trees come from uniform random
//! Prüfer sequences.

use crate::graph::Graph;
use crate::sigma::{find_sigma_sites, SigmaSite};

/// splitmix64: state advances by the golden-ratio increment, outputs are
/// finalized with two xor-multiply rounds.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `[0, bound)` by reduction; bias is negligible
    /// for the small bounds used here and determinism is what matters.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Uniform in `[0, 1)` with 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Decodes a Prüfer sequence over `[0, n)` of length `n - 2` into a
/// labeled tree.
fn pruefer_decode(n: usize, seq: &[u64]) -> Graph {
    debug_assert!(n >= 2 && seq.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x as usize] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let x = x as usize;
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let mut rest = leaves.into_iter();
    let (u, v) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((u, v));
    Graph::from_edges(n, &edges).expect("Prüfer decode yields a simple tree")
}

/// Uniformly random labeled tree on `n >= 1` vertices.
pub fn random_tree(n: usize, rng: &mut SplitMix64) -> Graph {
    match n {
        0 => Graph::edgeless(0),
        1 => Graph::edgeless(1),
        2 => Graph::from_edges(2, &[(0, 1)]).unwrap(),
        _ => {
            let seq: Vec<u64> = (0..n - 2).map(|_| rng.below(n as u64)).collect();
            pruefer_decode(n, &seq)
        }
    }
}

/// Erdős–Rényi graph: every pair becomes an edge with probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated pairs are distinct and in range")
}

/// Random tree paired with one of its pendant-sliding sites, resampling
/// until the tree is not a star. Requires `n >= 4`.
pub fn random_tree_with_site(n: usize, rng: &mut SplitMix64) -> (Graph, SigmaSite) {
    assert!(n >= 4, "a non-star tree needs at least 4 vertices");
    loop {
        let t = random_tree(n, rng);
        let sites = find_sigma_sites(&t);
        if !sites.is_empty() {
            let pick = rng.below(sites.len() as u64) as usize;
            let site = sites[pick].clone();
            return (t, site);
        }
    }
}

/// Random connected bipartite graph with a planted site: a random base
/// tree gains some color-respecting extra edges, then a fresh vertex with
/// fresh pendants is attached so a valid site always exists. Returns the
/// graph and the planted site.
pub fn random_bipartite_with_site(
    base_n: usize,
    extra_edges: usize,
    pendants: usize,
    rng: &mut SplitMix64,
) -> (Graph, SigmaSite) {
    assert!(base_n >= 2 && pendants >= 1);
    let base = random_tree(base_n, rng);
    let color = base.two_coloring().expect("trees are bipartite");
    let mut edges: Vec<(usize, usize)> =
        base.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut added = 0;
    let mut attempts = 0;
    while added < extra_edges && attempts < 50 * (extra_edges + 1) {
        attempts += 1;
        let u = rng.below(base_n as u64) as usize;
        let v = rng.below(base_n as u64) as usize;
        if u != v && color[u] != color[v] && !edges.contains(&(u.min(v), u.max(v))) {
            edges.push((u.min(v), u.max(v)));
            added += 1;
        }
    }
    // attach the site vertex to a random anchor, then its pendants
    let anchor = rng.below(base_n as u64) as usize;
    let vertex = base_n;
    let n = base_n + 1 + pendants;
    edges.push((anchor, vertex));
    let pendant_ids: Vec<usize> = (0..pendants).map(|i| base_n + 1 + i).collect();
    for &p in &pendant_ids {
        edges.push((vertex, p));
    }
    let g = Graph::from_edges(n, &edges).expect("planted construction stays simple");
    let site = SigmaSite { vertex, anchor, pendants: pendant_ids };
    (g, site)
}
