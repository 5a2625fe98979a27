//! Principal angles.
//!
//! Two channels: a floating one (singular values of `O_P O_Qᵀ` for
//! orthonormal bases) and an exact one that confirms a claimed multiset of
//! `cos²θ_i` by matching the power sums `tr((Π_PΠ_Q)^k)`, `k = 1..n`.
//! Since the multiset has exactly `n` members, those `n` power sums pin it
//! down completely.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

use super::Subspace;
use crate::error::{Error, Result};
use crate::exact::{power_of_two_exponent, Dyadic, RationalMatrix};

/// Bits of the dyadic grid that floating `cos²` values are snapped to before
/// exact confirmation.
const SNAP_BITS: u32 = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalAngles {
    /// `cos²θ_i`, largest first (so angles ascend).
    pub cos_squared: Vec<Dyadic>,
    /// `θ_i` in radians, ascending.
    pub angles: Vec<f64>,
}

impl PrincipalAngles {
    fn from_cos_squared(mut cos_squared: Vec<Dyadic>) -> Self {
        cos_squared.sort_by(|a, b| b.cmp(a));
        let angles = cos_squared
            .iter()
            .map(|c| c.to_f64().clamp(0.0, 1.0).sqrt().acos())
            .collect();
        PrincipalAngles {
            cos_squared,
            angles,
        }
    }

    /// `Σ (1 − cos²θ_i)`.
    pub fn squared_distance(&self) -> Dyadic {
        self.cos_squared.iter().map(|c| &Dyadic::one() - c).sum()
    }
}

/// Floating principal angles, ascending, in radians.
pub fn principal_angles_f64(p: &Subspace, q: &Subspace) -> Result<Vec<f64>> {
    check_shapes(p, q)?;
    let n = p.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let op = orthonormal_columns(p)?;
    let oq = orthonormal_columns(q)?;
    let svd = (op.transpose() * oq).svd(false, false);
    let mut angles: Vec<f64> = svd
        .singular_values
        .iter()
        .map(|s| s.clamp(0.0, 1.0).acos())
        .collect();
    angles.sort_by(|a, b| a.total_cmp(b));
    Ok(angles)
}

/// Principal angles with exact `cos²` values.
///
/// The floating spectrum is snapped to a fine dyadic grid and then confirmed
/// exactly; failure to confirm means the spectrum is not dyadic at that
/// resolution and is reported as a numeric failure.
pub fn principal_angles(p: &Subspace, q: &Subspace) -> Result<PrincipalAngles> {
    let angles = principal_angles_f64(p, q)?;
    let candidate: Vec<Dyadic> = angles
        .iter()
        .map(|t| Dyadic::nearest(t.cos().powi(2), SNAP_BITS))
        .collect();
    match confirm_spectrum(p, q, &candidate) {
        Ok(mut pa) => {
            pa.angles = angles;
            Ok(pa)
        }
        Err(Error::HypothesisRejected { power, .. }) => Err(Error::Numeric(format!(
            "floating spectrum did not snap to an exact dyadic spectrum (power sum {power})"
        ))),
        Err(e) => Err(e),
    }
}

/// Confirms that the `cos²θ_i` multiset of `(p, q)` equals `candidate`.
pub fn confirm_spectrum(
    p: &Subspace,
    q: &Subspace,
    candidate: &[Dyadic],
) -> Result<PrincipalAngles> {
    check_shapes(p, q)?;
    let n = p.dim();
    if candidate.len() != n {
        return Err(Error::DimensionMismatch {
            op: "confirm_spectrum",
            left: (n, 1),
            right: (candidate.len(), 1),
        });
    }
    if let Some(bad) = candidate
        .iter()
        .find(|c| c.is_negative() || **c > Dyadic::one())
    {
        return Err(Error::HypothesisRejected {
            power: 0,
            expected: "values in [0, 1]".into(),
            observed: bad.to_string(),
        });
    }
    let sums = power_sums(p, q)?;
    for (idx, observed) in sums.into_iter().enumerate() {
        let exp = idx as u32 + 1;
        let expected: Dyadic = candidate.iter().map(|c| c.pow(exp)).sum();
        if observed != expected {
            return Err(Error::HypothesisRejected {
                power: exp as usize,
                expected: expected.to_string(),
                observed: observed.to_string(),
            });
        }
    }
    Ok(PrincipalAngles::from_cos_squared(candidate.to_vec()))
}

/// Exact power sums `Σ cos^{2k}θ_i = tr((Π_PΠ_Q)^k)` for `k = 1..n`.
pub fn power_sums(p: &Subspace, q: &Subspace) -> Result<Vec<Dyadic>> {
    check_shapes(p, q)?;
    let n = p.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let k = compressed_product(p, q)?;
    let mut power = k.clone();
    let mut sums = Vec::with_capacity(n);
    for exp in 1..=n {
        if exp > 1 {
            power = power.mul(&k)?;
        }
        sums.push(power.trace()?);
    }
    Ok(sums)
}

/// A matrix whose nonzero spectrum is that of `Π_P Π_Q`.
///
/// With an orthogonal-row generator `E` of `P` whose row norms are powers of
/// two, this is the `n×n` matrix `(EEᵀ)⁻¹ E Π_Q Eᵀ`; otherwise the full
/// `m×m` product.
fn compressed_product(p: &Subspace, q: &Subspace) -> Result<RationalMatrix> {
    let g = p.generator();
    let (n, m) = g.shape();
    let gram = g.int_gram();
    let orthogonal = (0..n).all(|i| (0..n).all(|j| i == j || gram[i * n + j].is_zero()));
    let exps: Option<Vec<u32>> = (0..n)
        .map(|i| power_of_two_exponent(&gram[i * n + i]))
        .collect();
    let (true, Some(exps)) = (orthogonal, exps) else {
        return p.projector().mul(q.projector());
    };
    let ints = RationalMatrix::from_parts(n, m, g.entries().to_vec(), 0)?;
    let core = ints.mul(q.projector())?.mul(&ints.transpose())?;
    let top = exps.iter().copied().max().unwrap_or(0);
    let nums: Vec<BigInt> = core
        .numerators()
        .iter()
        .enumerate()
        .map(|(idx, x)| x << (top - exps[idx / n]))
        .collect();
    RationalMatrix::from_parts(n, n, nums, core.exponent() + top)
}

fn check_shapes(p: &Subspace, q: &Subspace) -> Result<()> {
    if p.ambient_dim() != q.ambient_dim() || p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            op: "principal_angles",
            left: (p.ambient_dim(), p.dim()),
            right: (q.ambient_dim(), q.dim()),
        });
    }
    Ok(())
}

fn orthonormal_columns(p: &Subspace) -> Result<DMatrix<f64>> {
    let (n, m) = p.generator().shape();
    let data = p.generator().to_f64();
    // generator is n×m row-major, i.e. its transpose in column-major order
    let gt = DMatrix::from_column_slice(m, n, &data);
    let qr = gt.qr();
    let q = qr.q();
    if q.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric("non-finite basis".into()));
    }
    Ok(q.columns(0, n).into_owned())
}
