//! Construction of binary de Bruijn sequences by cycle joining and
//! cross-joining, driven by Zech's logarithms over GF(2^n).

pub mod bits;
pub mod conjugacy;
pub mod crossjoin;
pub mod cycles;
pub mod error;
pub mod exp;
pub mod gf2poly;
pub mod graph;
pub mod joining;
pub mod zech;

pub use bits::{BitMatrix, BitSeq, BitVector};
pub use conjugacy::{ConjugatePair, CosetPairBatch};
pub use crossjoin::CrossJoinPair;
pub use cycles::{Cycle, CycleCtx, CyclePos};
pub use error::{Error, FormatError, Result};
pub use exp::{coset_leader, Coset, ExpInt, ExpRing};
pub use gf2poly::BinPoly;
pub use graph::{AdjSubgraph, SpanningTree, TreeCert, TreeMethod};
pub use joining::{Anf, FeedbackFn, ProductCtx};
pub use zech::{Provenance, ZechTable};
