//! Fixtures shared by the benchmarks.

use shellav::geom2d::EmbeddedPoint;
use shellav::{rat, Basis, ExactPoint2, QuadVal};

/// A translation that cuts the octagon window along two edges.
pub fn oblique_shift() -> EmbeddedPoint {
    EmbeddedPoint::Plane(
        ExactPoint2::new(
            QuadVal::new(rat(1, 3), rat(1, 5), Basis::Sqrt2),
            QuadVal::new(rat(-2, 7), rat(1, 4), Basis::Sqrt2),
        )
        .expect("same basis"),
    )
}
