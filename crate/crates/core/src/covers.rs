//! Degrees of the explicit finite covers `S_{g,n} → M`.
//!
//! The modular surface has orbifold Euler characteristic `-1/6`, so a cover
//! by `S_{g,n}` has degree `6 (2g - 2 + n)`. Volume bounds for geodesics on
//! the modular surface transfer to `S_{g,n}` after multiplying by that degree.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoverError {
    #[error("S_{{{0},{1}}} is not hyperbolic")]
    NotHyperbolic(u64, u64),
    #[error("S_{{{0},0}} is closed; covers of the modular surface have punctures")]
    Closed(u64),
    #[error("S_{{{genus},{punctures}}} is in no cover family; add {padding} puncture(s)")]
    NeedsPadding {
        genus: u64,
        punctures: u64,
        padding: u64,
    },
    #[error("constant must be positive and finite, got {0}")]
    BadConstant(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceSig {
    pub genus: u64,
    pub punctures: u64,
}

impl SurfaceSig {
    pub const fn new(genus: u64, punctures: u64) -> Self {
        SurfaceSig { genus, punctures }
    }

    /// `-χ = 2g - 2 + n`.
    pub fn neg_euler(self) -> i128 {
        2 * self.genus as i128 - 2 + self.punctures as i128
    }

    pub fn validate(self) -> Result<(), CoverError> {
        if self.neg_euler() <= 0 {
            return Err(CoverError::NotHyperbolic(self.genus, self.punctures));
        }
        if self.punctures == 0 {
            return Err(CoverError::Closed(self.genus));
        }
        Ok(())
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

pub fn euler_degree(s: SurfaceSig) -> Result<u64, CoverError> {
    s.validate()?;
    Ok(6 * (2 * s.genus + s.punctures - 2))
}

/// One covering map in a construction chain. `target == None` is `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverStep {
    pub source: SurfaceSig,
    pub target: Option<SurfaceSig>,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFamily {
    pub name: &'static str,
    pub surface: SurfaceSig,
    pub steps: Vec<CoverStep>,
    /// Product of the step degrees.
    pub chain_degree: u64,
    /// The degree as stated for the family.
    pub claimed_degree: u64,
    pub oracle_degree: u64,
    pub consistent: bool,
}

impl CoverFamily {
    /// `S_{g,2} -> S_{1,2} -> S_{1,1} -> M`.
    pub fn chain_string(&self) -> String {
        let mut out = self.surface.to_string();
        for step in &self.steps {
            out.push_str(" -> ");
            match step.target {
                Some(t) => out.push_str(&t.to_string()),
                None => out.push('M'),
            }
        }
        out
    }
}

fn chain(
    name: &'static str,
    surface: SurfaceSig,
    hops: &[(Option<SurfaceSig>, u64)],
    claimed: u64,
) -> CoverFamily {
    let mut source = surface;
    let mut steps = Vec::with_capacity(hops.len());
    for &(target, degree) in hops {
        steps.push(CoverStep {
            source,
            target,
            degree,
        });
        if let Some(t) = target {
            source = t;
        }
    }
    let chain_degree = steps.iter().map(|s| s.degree).product();
    let oracle_degree = euler_degree(surface).expect("family signatures are valid");
    CoverFamily {
        name,
        surface,
        steps,
        chain_degree,
        claimed_degree: claimed,
        oracle_degree,
        consistent: chain_degree == oracle_degree && claimed == oracle_degree,
    }
}

/// The explicit construction for `s`, when `s` belongs to one of the families
/// `(1,k)`, `(g, 2 + kg)` with `g >= 2`, or `(0,n)` with `n >= 3`.
pub fn cover_family(s: SurfaceSig) -> Result<CoverFamily, CoverError> {
    s.validate()?;
    let SurfaceSig {
        genus: g,
        punctures: n,
    } = s;
    let torus1 = Some(SurfaceSig::new(1, 1));
    let fam = match g {
        0 if n == 3 => chain("pants", s, &[(None, 6)], 6),
        // Rotating a pair of pants about an axis through two punctures.
        0 => chain(
            "sphere",
            s,
            &[(Some(SurfaceSig::new(0, 3)), n - 2), (None, 6)],
            6 * (n - 3),
        ),
        1 if n == 1 => chain("torus", s, &[(None, 6)], 6),
        1 => chain("torus", s, &[(torus1, n), (None, 6)], 6 * n),
        _ if n >= 2 && (n - 2) % g == 0 => {
            let k = (n - 2) / g;
            let mid = SurfaceSig::new(1, k + 2);
            let name = if k == 0 {
                "genus-two-punctures"
            } else {
                "genus-rotation"
            };
            chain(
                name,
                s,
                &[(Some(mid), g), (torus1, k + 2), (None, 6)],
                6 * g * (k + 2),
            )
        }
        _ => {
            return Err(CoverError::NeedsPadding {
                genus: g,
                punctures: n,
                padding: puncture_padding(s),
            })
        }
    };
    Ok(fam)
}

/// Number of punctures to add so that `S_{g, n+k}` lies in a cover family.
///
/// For `g >= 2` this is the least `k` with `n + k ≡ 2 (mod g)` and
/// `n + k >= 2`; genus one needs one puncture and genus zero three.
pub fn puncture_padding(s: SurfaceSig) -> u64 {
    let SurfaceSig {
        genus: g,
        punctures: n,
    } = s;
    match g {
        0 => 3u64.saturating_sub(n),
        1 => 1u64.saturating_sub(n),
        _ => {
            let k = (2 + g - n % g) % g;
            if n + k < 2 {
                k + g
            } else {
                k
            }
        }
    }
}

pub fn padded(s: SurfaceSig) -> SurfaceSig {
    SurfaceSig::new(s.genus, s.punctures + puncture_padding(s))
}

/// `base · brooks · euler_degree(padded(s))`.
///
/// `brooks` is the length-comparability factor incurred when punctures are
/// added; pass 1 to ignore it.
pub fn propagate_constant(base: f64, s: SurfaceSig, brooks: f64) -> Result<f64, CoverError> {
    for c in [base, brooks] {
        if !(c > 0.0 && c.is_finite()) {
            return Err(CoverError::BadConstant(c));
        }
    }
    if s.neg_euler() <= 0 {
        return Err(CoverError::NotHyperbolic(s.genus, s.punctures));
    }
    Ok(base * brooks * euler_degree(padded(s))? as f64)
}
