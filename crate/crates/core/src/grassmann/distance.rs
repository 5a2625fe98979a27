use num_bigint::BigInt;
use num_traits::Zero;

use super::Subspace;
use crate::error::{Error, Result};
use crate::exact::{Dyadic, RationalMatrix};

fn same_shape(p: &Subspace, q: &Subspace, op: &'static str) -> Result<()> {
    if p.ambient_dim() != q.ambient_dim() || p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            op,
            left: (p.ambient_dim(), p.dim()),
            right: (q.ambient_dim(), q.dim()),
        });
    }
    Ok(())
}

/// Exact chordal `d²(P, Q) = Σ sin²θ_i = n − tr(Π_P Π_Q)`.
///
/// Debug builds also evaluate `½‖Π_P − Π_Q‖_F²` and assert the two agree.
pub fn squared_distance(p: &Subspace, q: &Subspace) -> Result<Dyadic> {
    same_shape(p, q, "squared_distance")?;
    let d2 = &Dyadic::from_int(p.dim() as i64) - &p.projector().trace_product(q.projector())?;
    debug_assert_eq!(
        d2,
        half_frobenius_distance(p.projector(), q.projector()),
        "trace and Frobenius forms of d² disagree"
    );
    Ok(d2)
}

/// `½‖A − B‖_F²`.
pub fn half_frobenius_distance(a: &RationalMatrix, b: &RationalMatrix) -> Dyadic {
    let e = a.exponent().max(b.exponent());
    let (sa, sb) = (e - a.exponent(), e - b.exponent());
    let mut acc = BigInt::zero();
    for (x, y) in a.numerators().iter().zip(b.numerators()) {
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let diff: BigInt = (x << sa) - (y << sb);
        acc += &diff * &diff;
    }
    Dyadic::new(acc, 2 * e + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(rows: &[[i64; 4]]) -> Subspace {
        Subspace::from_int_rows(rows).unwrap()
    }

    #[test]
    fn equal_subspaces_are_at_distance_zero() {
        let a = s(&[[1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(squared_distance(&a, &a).unwrap(), Dyadic::zero());
    }

    #[test]
    fn coordinate_halves_are_at_distance_n() {
        let a = s(&[[1, 0, 0, 0], [0, 1, 0, 0]]);
        let b = s(&[[0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(squared_distance(&a, &b).unwrap(), Dyadic::from_int(2));
    }

    #[test]
    fn a_to_i_q_is_one() {
        let a = s(&[[1, 0, 0, 0], [0, 1, 0, 0]]);
        let iq = s(&[[1, 0, 0, 1], [0, 1, -1, 0]]);
        assert_eq!(squared_distance(&a, &iq).unwrap(), Dyadic::one());
    }

    #[test]
    fn line_at_45_degrees() {
        // single angle π/4 in the plane: sin² = 1/2, and ½‖Π−Π'‖² = 1/2 as well
        let a = Subspace::from_int_rows(&[[1, 0]]).unwrap();
        let b = Subspace::from_int_rows(&[[1, 1]]).unwrap();
        assert_eq!(squared_distance(&a, &b).unwrap(), Dyadic::new(1, 1));
        assert_eq!(
            half_frobenius_distance(a.projector(), b.projector()),
            Dyadic::new(1, 1)
        );
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let a = Subspace::from_int_rows(&[[1, 0]]).unwrap();
        let b = Subspace::coordinate(4, 1).unwrap();
        assert!(matches!(
            squared_distance(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
