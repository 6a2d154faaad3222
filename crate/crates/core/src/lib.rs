//! Triskells (weighted spans over finite sets), their execution trace, the
//! contraction to weighted relations, the Fock functors and the
//! determinant/trace bridge, plus an MLL front-end interpreted through them.

pub mod carrier;
pub mod checks;
pub mod dot;
pub mod error;
pub mod fock;
pub mod json;
pub mod mll;
pub mod numeric;
pub mod perm;
pub mod qcs;
pub mod relmat;
pub mod triskell;
pub mod weights;

pub use carrier::{Carrier, Point};
pub use checks::{run_check, CheckConfig, CheckReport, Suite};
pub use error::{Error, Result};
pub use mll::{normalize, parse_proof, AtomAssignment, Formula, Proof};
pub use numeric::{Codomain, Numeric};
pub use qcs::{Acceptance, OrthoSpec, QcsSpace};
pub use relmat::WeightedMatrix;
pub use triskell::{CanonicalForm, Classification, Edge, Triskell};
pub use weights::{sum_series, MeasureMap, Monoid, SeriesConfig, Weight};
