//! Construction and exact verification of the optimal Grassmannian packings
//! of `m/2`-dimensional subspaces of `R^m`, `m = 2^i`, together with the
//! real Clifford group whose orbits reproduce them.
//!
//! Every geometric claim is decided with exact arithmetic over `Z[1/√2]`;
//! floating point only appears in diagnostic principal-angle computations.

pub mod clifford;
pub mod construction;
pub mod error;
pub mod exact;
pub mod export;
pub mod families;
pub mod grassmann;
pub mod report;

pub use error::{Error, Result};
