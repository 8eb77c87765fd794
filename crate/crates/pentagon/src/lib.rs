//! Certificate-producing machinery for C5-free graphs.
//!
//! The library walks one road end to end: a sparse-graph dichotomy that
//! returns either an explicit induced C5 or a certified low-density pair
//! ([`dichotomy`]), a sparsify-then-dichotomize step lifting that to general
//! C5-free graphs ([`density`]), a recursive extraction of a large induced
//! cograph driven by those pairs ([`extract`]), and the perfect-graph
//! dynamic program turning the cograph into an explicit maximum clique and
//! stable set ([`cograph`]).
//!
//! Everything is checkable: [`oracle`] holds exhaustive brute-force
//! ground truth, [`gen`] builds seeded graphs from C5-free families, and all
//! density comparisons are exact fractions ([`frac::Frac`]) so no branch
//! ever rides on floating point.
//!
//! ```
//! use pentagon::dichotomy::{find_c5_or_sparse_pair, verify_outcome, DichotomyOutcome};
//! use pentagon::{Frac, Graph};
//!
//! // every vertex of the edgeless graph has closed degree 1 <= 16/16
//! let g = Graph::edgeless(16);
//! let c = Frac::new(1, 2);
//! let (outcome, trace) = find_c5_or_sparse_pair(&g, c).unwrap();
//! assert!(verify_outcome(&g, c, &outcome).is_ok());
//! assert!(trace.check(&g, c).is_ok());
//! let DichotomyOutcome::Pair(pair) = outcome else { unreachable!() };
//! assert!(pair.density < c);
//! ```

pub mod cograph;
pub mod density;
pub mod dichotomy;
pub mod extract;
pub mod frac;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod schedule;

pub use frac::Frac;
pub use graph::{Graph, VertexSet};
