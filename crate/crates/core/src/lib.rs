//! Grade, cohomological dimension and maximal-depth invariants of bigraded
//! monomial modules over S = K[x_1..x_m, y_1..y_n].
//!
//! Modules are monomial subquotients J/J′ computed in the fine N^{m+n}
//! grading, where every graded piece is 0- or 1-dimensional. Koszul and Čech
//! complexes then reduce to small 0/±1 matrices whose ranks are computed
//! exactly over the configured characteristic.

pub mod error;
pub mod filtration;
pub mod homology;
pub mod hypersurface;
pub mod invariants;
pub mod linalg;
pub mod local_cohomology;
pub mod ring;
pub mod suite;
pub mod text;

pub use error::{Error, Result};

pub use homology::{AxisIdeal, BettiTable, FineDegree, Subquotient};

pub use hypersurface::{FactorProfile, HypersurfaceVerdict, ProofCase, TheoremCase};
pub use invariants::{FiberClass, InvariantReport};
pub use local_cohomology::{Dim, LcReport};
pub use filtration::{FiltrationLadder, FiltrationStep, SeqCmReport};

pub use ring::{Characteristic, Monomial, MonomialIdeal, PrimaryComponent, PrimeSupport, RingSpec};

/// Exact field used by the generic rank routine in characteristic zero.
pub type Rational = num_rational::BigRational;

/// Integer scalar for fraction-free elimination.
pub type ExactInt = i64;
