//! The Lobachevsky function `Λ(θ) = -∫_0^θ log|2 sin u| du` and the ideal
//! tetrahedron volume bounds built on it.
//!
//! `Λ` is odd and π-periodic. After reducing the argument to `[-π/2, π/2]`
//! it is summed from the series
//!
//! ```text
//! Λ(θ) = θ (1 - log|2θ| + Σ_{k≥1} |B_{2k}| (2θ)^{2k} / (2k (2k+1)!))
//! ```
//!
//! which converges geometrically there (ratio at most 1/4 per term).

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Highest Bernoulli index `2k` carried in the coefficient table.
pub const BERNOULLI_MAX_INDEX: usize = 60;

/// Series terms below this magnitude are dropped.
pub const SERIES_CUTOFF: f64 = 1e-16;

/// Tolerance on `a + b + c = π` for ideal tetrahedron angles.
pub const ANGLE_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LobachevskyError {
    #[error("angle {0} is not finite")]
    NonFinite(f64),
    #[error("dihedral angle {0} must be positive")]
    NonPositive(f64),
    #[error("dihedral angles sum to {0}, expected π")]
    AngleSum(f64),
    #[error("edge angle {0} outside (0, π)")]
    OutOfRange(f64),
    #[error("a group of tetrahedra needs s >= 1")]
    EmptyGroup,
}

/// A real angle in radians. Any finite value is allowed.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(pub f64);

impl Angle {
    pub fn radians(self) -> f64 {
        self.0
    }
}

impl From<f64> for Angle {
    fn from(r: f64) -> Self {
        Angle(r)
    }
}

/// `|B_{2k}| / (2k (2k+1)!)` for `k = 1..=30`, from exact rationals.
static SERIES_COEFFS: LazyLock<Vec<f64>> = LazyLock::new(|| {
    let b = bernoulli_numbers(BERNOULLI_MAX_INDEX);
    let mut fact = BigInt::one(); // (2k+1)!
    let mut coeffs = Vec::with_capacity(BERNOULLI_MAX_INDEX / 2);
    let mut n = 1u64;
    for k in 1..=BERNOULLI_MAX_INDEX / 2 {
        while n < 2 * k as u64 + 1 {
            n += 1;
            fact *= BigInt::from(n);
        }
        let denom = BigRational::from_integer(&fact * BigInt::from(2 * k as u64));
        let c = b[2 * k].abs() / denom;
        coeffs.push(c.to_f64().expect("coefficient fits in f64"));
    }
    coeffs
});

/// Maximal ideal tetrahedron volume `2Λ(π/6)`, the regular ideal tetrahedron.
pub static V_MAX: LazyLock<f64> = LazyLock::new(|| 2.0 * series(PI / 6.0));

pub fn v_max() -> f64 {
    *V_MAX
}

/// Exact Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, j)
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Series evaluation for `|θ| <= π/2`.
fn series(theta: f64) -> f64 {
    if theta == 0.0 {
        return 0.0;
    }
    let z2 = (2.0 * theta) * (2.0 * theta);
    let mut pow = 1.0;
    let mut sum = 0.0;
    for &c in SERIES_COEFFS.iter() {
        pow *= z2;
        let term = c * pow;
        sum += term;
        if term < SERIES_CUTOFF {
            break;
        }
    }
    theta * (1.0 - (2.0 * theta).abs().ln() + sum)
}

/// `Λ(θ)` to about 1e-15 absolute.
pub fn lambda(t: Angle) -> Result<f64, LobachevskyError> {
    let theta = t.0;
    if !theta.is_finite() {
        return Err(LobachevskyError::NonFinite(theta));
    }
    Ok(lambda_unchecked(theta))
}

pub(crate) fn lambda_unchecked(theta: f64) -> f64 {
    let mut r = theta - PI * (theta / PI).round();
    // Rounding in the reduction can leave |r| a hair above π/2.
    r = r.clamp(-FRAC_PI_2, FRAC_PI_2);
    series(r)
}

/// Volume `Λ(a) + Λ(b) + Λ(c)` of the ideal tetrahedron with dihedral
/// angles `a, b, c` (opposite edges carry equal angles).
pub fn ideal_tet_volume(a: Angle, b: Angle, c: Angle) -> Result<f64, LobachevskyError> {
    for x in [a.0, b.0, c.0] {
        if !x.is_finite() {
            return Err(LobachevskyError::NonFinite(x));
        }
        if x <= 0.0 {
            return Err(LobachevskyError::NonPositive(x));
        }
    }
    let sum = a.0 + b.0 + c.0;
    if (sum - PI).abs() > ANGLE_SUM_TOL {
        return Err(LobachevskyError::AngleSum(sum));
    }
    Ok(lambda_unchecked(a.0) + lambda_unchecked(b.0) + lambda_unchecked(c.0))
}

/// Upper bound `2Λ(α/2)` on the volume of any tetrahedron with dihedral
/// angle `α` along one edge.
pub fn edge_volume_bound(a: Angle) -> Result<f64, LobachevskyError> {
    if !a.0.is_finite() {
        return Err(LobachevskyError::NonFinite(a.0));
    }
    if !(a.0 > 0.0 && a.0 < PI) {
        return Err(LobachevskyError::OutOfRange(a.0));
    }
    Ok(2.0 * lambda_unchecked(a.0 / 2.0))
}

/// Upper bound on the total volume of `s` tetrahedra sharing a common edge.
///
/// For `s <= 5` this is the uniform bound `s · v_max`; for `s >= 6` the
/// angles around the edge force `2sΛ(π/s)`, which grows like `2π log s`.
/// Both branches agree at `s = 6`.
pub fn group_volume_bound(s: u64) -> Result<f64, LobachevskyError> {
    match s {
        0 => Err(LobachevskyError::EmptyGroup),
        1..=5 => Ok(s as f64 * v_max()),
        _ => Ok(2.0 * s as f64 * series(PI / s as f64)),
    }
}
