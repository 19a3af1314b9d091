//! Averaged shelling numbers of crystals, cut-and-project sets and random
//! rhombus tilings.
//!
//! Exact results use arithmetic in `Q(√2)` and `Q(τ)`; see [`QuadVal`].

pub mod error;
pub mod exactnum;
pub mod geom2d;
pub mod modelsets;
pub mod randomtiling;
pub mod shelling;

pub use error::{Result, ShellError};
pub use exactnum::{parse_rational, rat, Basis, QuadVal, Rational};
pub use geom2d::{ConvexWindow, EmbeddedPoint, ExactPoint2};
pub use modelsets::{squared_length, DiffVector, LatticePoint, ModelSet, PointSetKind};
pub use randomtiling::{build_approximant, empirical_shelling, replica_shelling, Approximant, TilingState};
pub use shelling::{
    averaged_shelling, central_square_lattice, central_square_shells, nu, silver_mean_sigma_closed_form, ShellRecord,
    Source,
};
