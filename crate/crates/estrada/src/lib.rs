//! Estrada and Laplacian Estrada indices of graphs, computed and
//! cross-checked by independent routes.
//!
//! The crate provides:
//!
//! * [`graph`]: simple graphs, the standard tree families (path, star,
//!   double star, broom), line graphs, and tree isomorphism;
//! * [`io`]: edge-list and graph6 parsing for untrusted input;
//! * [`spectral`]: a dense Jacobi eigensolver, the Estrada index
//!   `EE = sum exp(lambda_i)` and its Laplacian analogue
//!   `LEE = sum exp(mu_i)`, exact big-integer closed-walk moments, and
//!   the bipartite identity `LEE(G) = n - m + e^2 EE(L(G))`;
//! * [`sigma`]: the pendant-sliding transformation that strictly
//!   increases `LEE` on bipartite graphs;
//! * [`double_star`]: exact characteristic-polynomial algebra and the
//!   closed-form `LEE` ordering of double stars;
//! * [`trees`]: exhaustive generation of non-isomorphic free trees and
//!   `LEE` rankings over them;
//! * [`random`]: seeded, platform-independent random trees and graphs.

#![forbid(unsafe_code)]

pub mod double_star;
pub mod error;
pub mod graph;
pub mod io;
pub mod random;
pub mod report;
pub mod sigma;
pub mod spectral;
pub mod trees;

pub use error::{Error, Result};
pub use graph::{Edge, Graph};
