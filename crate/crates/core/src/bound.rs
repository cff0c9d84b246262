//! Total volume upper bound for the drilled unit tangent bundle.
//!
//! The complement is cut into two A pieces, two B pieces, four C pieces and
//! one D piece. Every tetrahedron is bounded by `v_max`, except the
//! tetrahedra sitting above a chain of rectangles: those share an edge and
//! are bounded together by [`group_volume_bound`].

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::geodesic::{geodesic_length, matrix_of, GeodesicError};
use crate::lobachevsky::{group_volume_bound, v_max};
use crate::template::{
    arrange, piece_counts, PieceCounts, TemplateError, CONE_COEFF, D_TETRA, SPLIT_COEFF,
};
use crate::word::{CyclicWord, Syllables, WordError};

/// Constant `A` in the closed form `A (n_γ + Σ (ln k_i + ln m_i))` for the
/// B-piece contribution.
///
/// Each ear has `n_γ` entering strands with two chains apiece, a chain is no
/// longer than the run its strand enters, and `group_volume_bound(s) <=
/// v_max + 2π ln s`. With at most `5 n_γ` linear tetrahedra this gives
/// `9 v_max n_γ + 4π Σ ln(exponents)`, and `9 v_max < 4π`.
pub const CLOSED_FORM_A: f64 = 4.0 * PI;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("could only draw {drawn} distinct primitive words of the {wanted} requested")]
    CorpusExhausted { drawn: usize, wanted: usize },
}

/// Conventions the bound depends on, reported alongside every result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub split_coeff: u64,
    pub cone_coeff: u64,
    pub d_tetra: u64,
    pub v_max: f64,
    pub closed_form_a: f64,
}

impl Coefficients {
    pub fn current() -> Self {
        Coefficients {
            split_coeff: SPLIT_COEFF,
            cone_coeff: CONE_COEFF,
            d_tetra: D_TETRA,
            v_max: v_max(),
            closed_form_a: CLOSED_FORM_A,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    /// Input words in canonical order.
    pub words: Vec<CyclicWord>,
    pub n_gamma: u64,
    /// Total number of letters.
    pub word_length: usize,
    /// Sum of geodesic lengths, nats.
    pub total_length: f64,
    pub counts: PieceCounts,
    /// Volume bound for one A piece.
    pub a: f64,
    /// Non-chain volume bound for one B piece.
    pub b_linear: f64,
    /// `(s, group_volume_bound(s))` for every chain of both ears.
    pub b_chains: Vec<(u64, f64)>,
    pub c: f64,
    pub d: f64,
    pub total_bound: f64,
    pub closed_form_b: f64,
    pub ratio: f64,
    pub coefficients: Coefficients,
}

impl BoundReport {
    pub fn b_chain_total(&self) -> f64 {
        self.b_chains.iter().map(|&(_, v)| v).sum()
    }

    /// Total chain length `Σ s` over both ears.
    pub fn chain_passages(&self) -> u64 {
        self.b_chains.iter().map(|&(s, _)| s).sum()
    }

    /// The bound with every chain group charged `s · v_max` instead.
    pub fn uniform_bound(&self) -> f64 {
        let v = self.coefficients.v_max;
        let c = &self.counts;
        v * (2 * c.a_tetra + 2 * c.b_linear_tetra + 4 * c.c_tetra + c.d_tetra) as f64
            + 2.0 * v * self.chain_passages() as f64
    }
}

/// Runs the full pipeline on a collection of distinct primitive words.
pub fn total_bound(words: &[CyclicWord]) -> Result<BoundReport, BoundError> {
    let arr = arrange(words)?;
    let total_length = arr
        .words()
        .iter()
        .map(|w| geodesic_length(&matrix_of(w)))
        .sum::<Result<f64, _>>()?;
    let counts = piece_counts(&arr);
    let coefficients = Coefficients::current();
    let v = coefficients.v_max;

    let b_chains: Vec<(u64, f64)> = counts
        .chains
        .chains
        .iter()
        .map(|c| {
            (
                c.length,
                group_volume_bound(c.length).expect("chain length >= 1"),
            )
        })
        .collect();
    let chain_total: f64 = b_chains.iter().map(|&(_, b)| b).sum();

    let tetra =
        2 * counts.a_tetra + 2 * counts.b_linear_tetra + 4 * counts.c_tetra + counts.d_tetra;
    let total_bound = v * tetra as f64 + 2.0 * chain_total;

    let log_exponents: f64 = arr
        .words()
        .iter()
        .flat_map(|w| w.syllables().pairs().to_vec())
        .map(|(k, m)| (k as f64).ln() + (m as f64).ln())
        .sum();
    let closed_form_b = CLOSED_FORM_A * (counts.n_gamma as f64 + log_exponents);

    Ok(BoundReport {
        words: arr.words().to_vec(),
        n_gamma: counts.n_gamma,
        word_length: arr.len(),
        total_length,
        a: v * counts.a_tetra as f64,
        b_linear: v * counts.b_linear_tetra as f64,
        b_chains,
        c: v * counts.c_tetra as f64,
        d: v * counts.d_tetra as f64,
        total_bound,
        closed_form_b,
        ratio: total_bound / total_length,
        coefficients,
        counts,
    })
}

/// One row of a scan over the family `x^n y^m`.
#[derive(Debug, Clone)]
pub struct FamilyRow {
    pub n: u64,
    pub m: u64,
    pub report: BoundReport,
}

/// Reports for `x^n y^m` over the full grid `1..=n_max` by `1..=m_max`.
pub fn family_scan(n_max: u64, m_max: u64) -> Result<Vec<FamilyRow>, BoundError> {
    if n_max == 0 || m_max == 0 {
        return Err(BoundError::Parameter("n and m must be at least 1".into()));
    }
    let ns: Vec<u64> = (1..=n_max).collect();
    let ms: Vec<u64> = (1..=m_max).collect();
    family_grid(&ns, &ms)
}

/// Reports for `x^n y^m` over an arbitrary grid, rows in `(n, m)` order.
pub fn family_grid(ns: &[u64], ms: &[u64]) -> Result<Vec<FamilyRow>, BoundError> {
    let cells: Vec<(u64, u64)> = ns
        .iter()
        .flat_map(|&n| ms.iter().map(move |&m| (n, m)))
        .collect();
    cells
        .into_par_iter()
        .map(|(n, m)| {
            let w = CyclicWord::power_pair(n, m)?;
            Ok(FamilyRow {
                n,
                m,
                report: total_bound(&[w])?,
            })
        })
        .collect()
}

/// Seeded corpus of distinct primitive words.
///
/// The syllable count is uniform in `1..=max_syllables` and each exponent
/// uniform in `1..=max_exponent`; proper powers and repeats are redrawn.
pub fn random_corpus(
    seed: u64,
    count: usize,
    max_syllables: u64,
    max_exponent: u64,
) -> Result<Vec<CyclicWord>, BoundError> {
    if count == 0 || max_syllables == 0 || max_exponent == 0 {
        return Err(BoundError::Parameter(
            "count, max-syllables and max-exponent must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    let mut misses = 0usize;
    while out.len() < count {
        let n = rng.random_range(1..=max_syllables);
        let pairs = (0..n)
            .map(|_| {
                (
                    rng.random_range(1..=max_exponent),
                    rng.random_range(1..=max_exponent),
                )
            })
            .collect();
        let w = CyclicWord::from_syllables(&Syllables::new(pairs)?)?;
        if w.is_primitive() && seen.insert(w.clone()) {
            out.push(w);
            misses = 0;
        } else {
            misses += 1;
            if misses > 10_000 {
                return Err(BoundError::CorpusExhausted {
                    drawn: out.len(),
                    wanted: count,
                });
            }
        }
    }
    Ok(out)
}

/// Single-word reports for every corpus word, in corpus order.
pub fn corpus_reports(words: &[CyclicWord]) -> Result<Vec<BoundReport>, BoundError> {
    words
        .par_iter()
        .map(|w| total_bound(std::slice::from_ref(w)))
        .collect()
}

/// Order statistics of `total_bound / total_length` over a set of reports.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSummary {
    pub count: usize,
    pub min: f64,
    pub p25: f64,
    pub median: f64,
    pub p75: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
    pub mean: f64,
    /// Word set attaining the maximum.
    pub argmax: Vec<CyclicWord>,
}

pub fn summarize(reports: &[BoundReport]) -> Option<RatioSummary> {
    if reports.is_empty() {
        return None;
    }
    let mut ratios: Vec<f64> = reports.iter().map(|r| r.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    // Nearest-rank quantile.
    let q = |p: f64| {
        let rank = ((p * ratios.len() as f64).ceil() as usize).clamp(1, ratios.len());
        ratios[rank - 1]
    };
    let best = reports
        .iter()
        .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .expect("nonempty");
    Some(RatioSummary {
        count: ratios.len(),
        min: ratios[0],
        p25: q(0.25),
        median: q(0.5),
        p75: q(0.75),
        p90: q(0.9),
        p99: q(0.99),
        max: *ratios.last().expect("nonempty"),
        mean: ratios.iter().sum::<f64>() / ratios.len() as f64,
        argmax: best.words.clone(),
    })
}

/// Maximum observed `total_bound / total_length` over a seeded corpus.
pub fn corpus_ratio(
    seed: u64,
    count: usize,
    max_syllables: u64,
    max_exponent: u64,
) -> Result<RatioSummary, BoundError> {
    let words = random_corpus(seed, count, max_syllables, max_exponent)?;
    let reports = corpus_reports(&words)?;
    Ok(summarize(&reports).expect("count >= 1"))
}
