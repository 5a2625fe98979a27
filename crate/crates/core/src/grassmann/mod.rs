//! Geometry of the Grassmannian `G(m, n)`: subspaces identified by their
//! projectors, principal angles, exact chordal distance, the orthoplex bound
//! and packing statistics.

mod angles;
mod bound;
mod distance;
mod packing;
mod subspace;

pub use angles::{
    confirm_spectrum, power_sums, principal_angles, principal_angles_f64, PrincipalAngles,
};
pub use bound::{bound_applicability, rankin_bound, BoundApplicability};
pub use distance::{half_frobenius_distance, squared_distance};
pub use packing::{packing_report, report_with_stats, Packing, PairStats};
pub use subspace::{orthogonal_complement, Subspace};

use crate::error::Result;
use crate::exact::ScaledIntMatrix;

pub fn subspace_from_generator(g: ScaledIntMatrix) -> Result<Subspace> {
    Subspace::from_generator(g)
}
