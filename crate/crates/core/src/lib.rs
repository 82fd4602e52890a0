//! B-type coefficient polynomials `α_n(D; y)` of unoriented link diagrams,
//! their generating series (the Kauffman polynomial) and the machinery to
//! check the skein, product and invariance identities they satisfy.

pub mod canon;
pub mod diagram;
pub mod engine;
pub mod error;
pub mod laurent;
mod memo;
pub mod moves;
pub mod oracle;
pub mod series;
pub mod warping;

pub use diagram::{Diagram, Orientation, SpliceKind, Strand};
pub use engine::{alpha_table, CoeffTable, Engine};
pub use error::{Error, Result};
pub use laurent::{BivariatePoly, LaurentPoly};
pub use memo::DEFAULT_BUDGET;
pub use oracle::Oracle;
pub use warping::{BaseSequence, Complexity};
