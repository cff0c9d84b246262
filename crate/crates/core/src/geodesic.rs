//! Modular-group matrices of code words, their traces and geodesic lengths.
//!
//! Lengths use the normalization `Tr = e^L + e^{-L}` (that is `Tr = 2 cosh L`)
//! throughout. The more common translation-length convention `Tr = 2 cosh(L/2)`
//! would double every reported length.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::word::{CyclicWord, Syllables};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeodesicError {
    #[error("trace {0} < 3: element is not hyperbolic")]
    NotHyperbolic(String),
    #[error("determinant is not 1")]
    BadDeterminant,
}

/// Row-major `((a, b), (c, d))` with `ad - bc = 1` and nonnegative entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeodMatrix {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
}

impl GeodMatrix {
    pub fn new(a: BigUint, b: BigUint, c: BigUint, d: BigUint) -> Result<Self, GeodesicError> {
        if &a * &d != &b * &c + BigUint::one() {
            return Err(GeodesicError::BadDeterminant);
        }
        Ok(GeodMatrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        GeodMatrix {
            a: BigUint::one(),
            b: BigUint::zero(),
            c: BigUint::zero(),
            d: BigUint::one(),
        }
    }

    /// `x^k y^m = ((km+1, k), (m, 1))`.
    pub fn syllable(k: u64, m: u64) -> Self {
        GeodMatrix {
            a: BigUint::from(k) * BigUint::from(m) + 1u32,
            b: BigUint::from(k),
            c: BigUint::from(m),
            d: BigUint::one(),
        }
    }

    pub fn mul(&self, rhs: &GeodMatrix) -> GeodMatrix {
        GeodMatrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn trace(&self) -> BigUint {
        &self.a + &self.d
    }

    pub fn determinant_is_one(&self) -> bool {
        &self.a * &self.d == &self.b * &self.c + BigUint::one()
    }
}

/// Product `Π x^{k_i} y^{m_i}` over the syllables of the canonical rotation.
///
/// Non-primitive words are accepted here; the matrix is then a proper power.
pub fn matrix_of(w: &CyclicWord) -> GeodMatrix {
    matrix_of_syllables(&w.syllables())
}

pub fn matrix_of_syllables(s: &Syllables) -> GeodMatrix {
    // Balanced product tree keeps the big-integer multiplications even-sized.
    fn product(blocks: &[(u64, u64)]) -> GeodMatrix {
        match blocks {
            [] => GeodMatrix::identity(),
            [(k, m)] => GeodMatrix::syllable(*k, *m),
            _ => {
                let (l, r) = blocks.split_at(blocks.len() / 2);
                product(l).mul(&product(r))
            }
        }
    }
    product(s.pairs())
}

/// Natural log of a positive big integer.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("64 leading bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// The unique `L > 0` with `e^L + e^{-L} = Tr`.
///
/// Evaluated as `L = ln Tr + ln((1 + sqrt(1 - 4/Tr^2)) / 2)`, which stays
/// accurate when the trace has thousands of digits.
pub fn length_from_trace(trace: &BigUint) -> Result<f64, GeodesicError> {
    if *trace < BigUint::from(3u32) {
        return Err(GeodesicError::NotHyperbolic(trace.to_string()));
    }
    if trace.bits() > 1000 {
        // 4/Tr^2 is below f64 resolution relative to 1.
        return Ok(ln_biguint(trace));
    }
    Ok(log_domain_length(
        trace.to_f64().expect("finite below 2^1000"),
    ))
}

/// Same inversion for a real-valued trace `t > 2`.
pub fn length_from_real_trace(t: f64) -> Result<f64, GeodesicError> {
    if t.is_nan() || t <= 2.0 || !t.is_finite() {
        return Err(GeodesicError::NotHyperbolic(t.to_string()));
    }
    Ok(log_domain_length(t))
}

fn log_domain_length(t: f64) -> f64 {
    let q = 4.0 / (t * t);
    let s = (1.0 - q).sqrt();
    // (1 + s)/2 = 1 - (q/2)/(1 + s)
    t.ln() + (-(q / 2.0) / (1.0 + s)).ln_1p()
}

pub fn geodesic_length(m: &GeodMatrix) -> Result<f64, GeodesicError> {
    length_from_trace(&m.trace())
}

/// The two length lower bounds for a word with the given syllables, in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthBounds {
    /// `Σ (ln k_i + ln m_i)`.
    pub sum_log: f64,
    /// `n_γ ln 2`.
    pub count_bound: f64,
}

impl LengthBounds {
    pub fn best(&self) -> f64 {
        self.sum_log.max(self.count_bound)
    }
}

pub fn length_lower_bounds(s: &Syllables) -> LengthBounds {
    let sum_log = s
        .pairs()
        .iter()
        .map(|&(k, m)| (k as f64).ln() + (m as f64).ln())
        .sum();
    LengthBounds {
        sum_log,
        count_bound: s.n_gamma() as f64 * std::f64::consts::LN_2,
    }
}
