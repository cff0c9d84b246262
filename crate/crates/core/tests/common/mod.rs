//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use modknot::word::{CyclicWord, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Branch-line order computed by brute force: each point's itinerary is
/// compared through the exact common period `len_a * len_b`.
pub struct BruteArrangement {
    /// `(canonical letters of the word, shift)` left to right.
    pub points: Vec<(String, usize)>,
    pub successor: Vec<usize>,
    pub crossings: u64,
}

pub fn brute_arrangement(words: &[CyclicWord]) -> BruteArrangement {
    let strings: Vec<String> = words.iter().map(|w| w.letter_string()).collect();
    let mut pts: Vec<(usize, usize)> = strings
        .iter()
        .enumerate()
        .flat_map(|(i, s)| (0..s.len()).map(move |k| (i, k)))
        .collect();
    let rotated = |(i, k): (usize, usize), reps: usize| {
        let s = &strings[i];
        let r = format!("{}{}", &s[k..], &s[..k]);
        r.repeat(reps)
    };
    pts.sort_by(|&a, &b| {
        let (la, lb) = (strings[a.0].len(), strings[b.0].len());
        rotated(a, lb).cmp(&rotated(b, la))
    });
    let index: HashMap<(usize, usize), usize> =
        pts.iter().enumerate().map(|(p, &q)| (q, p)).collect();
    let successor: Vec<usize> = pts
        .iter()
        .map(|&(i, k)| index[&(i, (k + 1) % strings[i].len())])
        .collect();
    let first = |p: usize| strings[pts[p].0].as_bytes()[pts[p].1];
    let mut crossings = 0;
    for x in 0..pts.len() {
        for y in 0..pts.len() {
            if first(x) == b'x' && first(y) == b'y' && successor[x] > successor[y] {
                crossings += 1;
            }
        }
    }
    BruteArrangement {
        points: pts.iter().map(|&(i, k)| (strings[i].clone(), k)).collect(),
        successor,
        crossings,
    }
}

/// Random primitive words with uniformly random letters and length in `2..=max_len`.
pub fn random_letter_words(seed: u64, count: usize, max_len: usize) -> Vec<CyclicWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=max_len);
        let letters: Vec<Letter> = (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    Letter::X
                } else {
                    Letter::Y
                }
            })
            .collect();
        if let Ok(w) = CyclicWord::from_letters(&letters) {
            if w.is_primitive() {
                out.push(w);
            }
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of a smooth integrand.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `Λ(θ) = -∫_0^θ log(2 sin u) du` for `0 < θ < π`, splitting off the
/// logarithmic singularity analytically.
pub fn lambda_quadrature(theta: f64) -> f64 {
    let g = |u: f64| if u == 0.0 { 0.0 } else { (u.sin() / u).ln() };
    theta * (1.0 - (2.0 * theta).ln()) - integrate(&g, 0.0, theta, 1e-15)
}

/// Maximizes `f(a, b)` over `a, b > 0, a + b < π` by a coarse grid followed
/// by shrinking compass search. Returns `(a, b, value)`.
pub fn maximize_on_simplex(f: &dyn Fn(f64, f64) -> f64) -> (f64, f64, f64) {
    let pi = std::f64::consts::PI;
    let inside = |a: f64, b: f64| a > 0.0 && b > 0.0 && a + b < pi;
    let steps = 200;
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 1..steps {
        for j in 1..steps - i {
            let (a, b) = (pi * i as f64 / steps as f64, pi * j as f64 / steps as f64);
            let v = f(a, b);
            if v > best.2 {
                best = (a, b, v);
            }
        }
    }
    let mut h = pi / steps as f64;
    while h > 1e-12 {
        let mut moved = false;
        for (da, db) in [
            (1.0, 0.0),
            (-1.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (1.0, -1.0),
            (-1.0, 1.0),
        ] {
            let (a, b) = (best.0 + h * da, best.1 + h * db);
            if inside(a, b) {
                let v = f(a, b);
                if v > best.2 {
                    best = (a, b, v);
                    moved = true;
                }
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    best
}

/// Ordinary least squares `y ≈ k0 + k1 x`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let k1 = sxy / sxx;
    (my - k1 * mx, k1)
}

pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    sxy / (sxx * syy).sqrt()
}

/// About `per_decade` log-spaced integers per decade in `1..=max`.
pub fn log_grid(max: u64, per_decade: u32) -> Vec<u64> {
    let decades = (max as f64).log10();
    let steps = (decades * per_decade as f64).round() as u32;
    let mut v: Vec<u64> = (0..=steps)
        .map(|i| 10f64.powf(decades * i as f64 / steps as f64).round() as u64)
        .collect();
    v.dedup();
    v
}
