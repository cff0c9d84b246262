//! Periodic orbits on the Ghys template.
//!
//! Every cyclic shift of every input word is a point on the single branch
//! line. Points are ordered by their forward itineraries (lexicographic,
//! `X < Y`), so the `X`-led points form a left block and the `Y`-led points a
//! right block. The first-return map sends a point to its left shift; on each
//! block it is order preserving (both bands are unknotted and untwisted).
//!
//! The branch line is cut at the critical point between the two blocks. For
//! the ear over block `E`, a strand whose next letter is the other letter
//! leaves through the cut segment (`pp'` in the x ear, `qq'` in the y ear);
//! a strand whose previous letter was the other letter has just entered and
//! anchors a chain. Adjacent strands of one block either come back adjacent
//! (a rectangle in the band), come back separated by arrivals from the other
//! ear (a splitting), or leave through the cut.
//!
//! Counting conventions (the tetrahedron coefficients in particular) are
//! fixed here and reported with every bound:
//!
//! * type C: `n_γ + 1` tetrahedra;
//! * type A, per ear: one coned tetrahedron per arrival lying inside an
//!   `(n+2)`-gon of the ear (every polygon with `n` arrivals is cut into `n`
//!   triangles), plus one per arc crossing the cut;
//! * type B, per ear: [`SPLIT_COEFF`] tetrahedra per unit splitting gap plus
//!   [`CONE_COEFF`] per branch interval for the upper region, excluding the
//!   rectangle chains, which are bounded through the Lobachevsky function;
//! * type D: the fixed [`D_TETRA`].

use std::fmt;

use thiserror::Error;

use crate::word::{check_collection, CyclicWord, Letter, WordError};

/// Tetrahedra per unit gap in a splitting polyhedron.
pub const SPLIT_COEFF: u64 = 3;
/// Tetrahedra per branch interval when coning the upper region of a B piece.
pub const CONE_COEFF: u64 = 2;
/// Tetrahedra in the fixed triangulation of the D piece.
pub const D_TETRA: u64 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("empty word collection")]
    Empty,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("words {0} and {1} share a cyclic shift")]
    SharedShift(usize, usize),
}

/// One cyclic shift of one word: the itinerary `word[shift..] word[..shift] ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub word: usize,
    pub shift: usize,
}

/// The branch-line order of all shifts and the first-return map.
#[derive(Debug, Clone)]
pub struct BranchArrangement {
    words: Vec<CyclicWord>,
    points: Vec<Point>,
    successor: Vec<usize>,
    x_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ear {
    X,
    Y,
}

impl Ear {
    fn letter(self) -> Letter {
        match self {
            Ear::X => Letter::X,
            Ear::Y => Letter::Y,
        }
    }
}

impl fmt::Display for Ear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ear::X => "x",
            Ear::Y => "y",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Consecutive band passages of an entering strand along which its
/// neighbour on `side` stays adjacent.
///
/// `length` counts passages: the rectangles of the chain plus the passage on
/// which it ends (split, exit through the cut, or no neighbour).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chain {
    pub ear: Ear,
    pub side: Side,
    /// Branch-line position of the entering strand.
    pub anchor: usize,
    pub length: u64,
    /// Exponent of the syllable run the anchor starts.
    pub exponent: u64,
}

impl Chain {
    pub fn rectangles(&self) -> u64 {
        self.length - 1
    }
}

/// An adjacent pair of same-block strands that does not return adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Splitting {
    pub ear: Ear,
    /// Left strand of the pair; the right one is `left + 1`.
    pub left: usize,
    /// Arrivals from the other ear landing between the two returns on this
    /// ear's side of the cut.
    pub gap: u64,
    /// True when at least one of the two strands leaves through the cut.
    pub exits: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ChainDecomposition {
    pub chains: Vec<Chain>,
    pub splittings: Vec<Splitting>,
    /// Adjacent same-block pairs that return adjacent, per ear `[x, y]`.
    pub rectangles: [u64; 2],
}

impl ChainDecomposition {
    pub fn chains_in(&self, ear: Ear) -> impl Iterator<Item = &Chain> {
        self.chains.iter().filter(move |c| c.ear == ear)
    }

    pub fn splittings_in(&self, ear: Ear) -> impl Iterator<Item = &Splitting> {
        self.splittings.iter().filter(move |s| s.ear == ear)
    }

    pub fn gap_total(&self, ear: Ear) -> u64 {
        self.splittings_in(ear).map(|s| s.gap).sum()
    }
}

/// Tetrahedron counts per piece type.
#[derive(Debug, Clone)]
pub struct PieceCounts {
    pub n_gamma: u64,
    /// Count for one type-A piece (the larger of the two ears).
    pub a_tetra: u64,
    /// Non-chain count for one type-B piece (the larger of the two ears).
    pub b_linear_tetra: u64,
    pub c_tetra: u64,
    pub d_tetra: u64,
    /// Per-ear A counts `[x, y]`.
    pub a_by_ear: [u64; 2],
    /// Per-ear B counts `[x, y]`.
    pub b_by_ear: [u64; 2],
    pub chains: ChainDecomposition,
}

impl PieceCounts {
    /// Documented linear ceiling for `a_tetra`.
    pub fn a_linear_bound(n_gamma: u64) -> u64 {
        2 * n_gamma
    }

    /// Documented linear ceiling for `b_linear_tetra`.
    pub fn b_linear_bound(n_gamma: u64) -> u64 {
        (SPLIT_COEFF + CONE_COEFF) * n_gamma
    }
}

impl BranchArrangement {
    pub fn words(&self) -> &[CyclicWord] {
        &self.words
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn successor(&self) -> &[usize] {
        &self.successor
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn x_block(&self) -> std::ops::Range<usize> {
        0..self.x_len
    }

    pub fn y_block(&self) -> std::ops::Range<usize> {
        self.x_len..self.points.len()
    }

    fn block(&self, ear: Ear) -> std::ops::Range<usize> {
        match ear {
            Ear::X => self.x_block(),
            Ear::Y => self.y_block(),
        }
    }

    /// Leading letter of the itinerary at `pos`.
    pub fn letter_at(&self, pos: usize) -> Letter {
        let p = self.points[pos];
        self.words[p.word].letters()[p.shift]
    }

    /// Number of cyclic `xy` subwords over all words.
    pub fn n_gamma(&self) -> u64 {
        self.words.iter().map(|w| w.xy_count() as u64).sum()
    }

    /// Checks the structural invariants; returns a description of the first
    /// violation.
    pub fn check(&self) -> Result<(), String> {
        let n = self.points.len();
        let expected: usize = self.words.iter().map(CyclicWord::len).sum();
        if n != expected {
            return Err(format!("{n} points for {expected} shifts"));
        }
        let mut seen = vec![false; n];
        for &s in &self.successor {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err("successor is not a permutation".into());
            }
        }
        for (i, pos) in (0..n).zip(1..n) {
            if compare_points(&self.words, self.points[i], self.points[pos])
                != std::cmp::Ordering::Less
            {
                return Err(format!("points {i} and {pos} out of order"));
            }
        }
        for block in [self.x_block(), self.y_block()] {
            for i in block.clone().skip(1) {
                if self.successor[i - 1] >= self.successor[i] {
                    return Err(format!("successor not monotone at {i}"));
                }
            }
        }
        Ok(())
    }
}

/// Lexicographic comparison of the infinite periodic itineraries of two points.
///
/// Two periodic sequences with periods `p` and `q` that agree on `p + q`
/// letters are equal, so that many letters decide the order.
pub fn compare_points(words: &[CyclicWord], a: Point, b: Point) -> std::cmp::Ordering {
    let wa = words[a.word].letters();
    let wb = words[b.word].letters();
    let limit = wa.len() + wb.len();
    for t in 0..limit {
        let la = wa[(a.shift + t) % wa.len()];
        let lb = wb[(b.shift + t) % wb.len()];
        if la != lb {
            return la.cmp(&lb);
        }
    }
    std::cmp::Ordering::Equal
}

/// Places all shifts of the words on the branch line.
///
/// Words are sorted into canonical order first, so the result does not
/// depend on the order (or rotation) in which they were given.
pub fn arrange(words: &[CyclicWord]) -> Result<BranchArrangement, TemplateError> {
    if words.is_empty() {
        return Err(TemplateError::Empty);
    }
    check_collection(words)?;
    let mut words = words.to_vec();
    words.sort();

    let mut base = Vec::with_capacity(words.len());
    let mut total = 0usize;
    for w in &words {
        base.push(total);
        total += w.len();
    }
    let mut owner = Vec::with_capacity(total);
    for (wi, w) in words.iter().enumerate() {
        owner.extend(std::iter::repeat_n(wi as u32, w.len()));
    }
    let max_len = words.iter().map(CyclicWord::len).max().unwrap_or(0);

    // Prefix doubling on infinite itineraries: rank[i] orders the length-`span`
    // prefixes of the itinerary starting at flat index i.
    let flat_letters: Vec<u32> = words
        .iter()
        .flat_map(|w| w.letters().iter().map(|&l| (l == Letter::Y) as u32))
        .collect();
    let mut rank = flat_letters;
    let mut order: Vec<u32> = (0..total as u32).collect();
    let mut keys = vec![0u64; total];
    let mut span = 1usize;
    let mut distinct = count_distinct_sorted(&rank, &mut order);
    while distinct < total && span < 2 * max_len {
        for i in 0..total {
            let wi = owner[i] as usize;
            let len = words[wi].len();
            let shift = i - base[wi];
            let j = base[wi] + (shift + span) % len;
            keys[i] = ((rank[i] as u64) << 32) | rank[j] as u64;
        }
        order.sort_unstable_by_key(|&i| keys[i as usize]);
        let mut r = 0u32;
        for t in 0..total {
            if t > 0 && keys[order[t] as usize] != keys[order[t - 1] as usize] {
                r += 1;
            }
            rank[order[t] as usize] = r;
        }
        distinct = r as usize + 1;
        span *= 2;
    }
    if distinct < total {
        // Equal infinite itineraries: two inputs are rotations of a common word.
        let mut sorted = order.clone();
        sorted.sort_unstable_by_key(|&i| rank[i as usize]);
        for t in 1..total {
            let (a, b) = (sorted[t - 1] as usize, sorted[t] as usize);
            if rank[a] == rank[b] {
                return Err(TemplateError::SharedShift(
                    owner[a] as usize,
                    owner[b] as usize,
                ));
            }
        }
    }

    // rank is now the branch-line position of each flat index.
    let mut points = vec![Point { word: 0, shift: 0 }; total];
    for i in 0..total {
        let wi = owner[i] as usize;
        points[rank[i] as usize] = Point {
            word: wi,
            shift: i - base[wi],
        };
    }
    let successor = points
        .iter()
        .map(|p| {
            let len = words[p.word].len();
            rank[base[p.word] + (p.shift + 1) % len] as usize
        })
        .collect();
    let x_len = points
        .iter()
        .take_while(|p| words[p.word].letters()[p.shift] == Letter::X)
        .count();
    Ok(BranchArrangement {
        words,
        points,
        successor,
        x_len,
    })
}

fn count_distinct_sorted(rank: &[u32], order: &mut [u32]) -> usize {
    order.sort_unstable_by_key(|&i| rank[i as usize]);
    let mut distinct = usize::from(!order.is_empty());
    for t in 1..order.len() {
        if rank[order[t] as usize] != rank[order[t - 1] as usize] {
            distinct += 1;
        }
    }
    distinct
}

/// Pairs `(x-strand, y-strand)` whose return order is swapped where the
/// two bands merge back onto the branch line.
pub fn crossings(arr: &BranchArrangement) -> u64 {
    // Both restricted return maps are increasing, so a two-pointer sweep
    // counts, for each y-strand, the x-strands returning to its right.
    let succ = &arr.successor;
    let xs = &succ[arr.x_block()];
    let ys = &succ[arr.y_block()];
    let mut count = 0u64;
    let mut below = 0usize; // x returns below the current y return
    for &y in ys {
        while below < xs.len() && xs[below] < y {
            below += 1;
        }
        count += (xs.len() - below) as u64;
    }
    count
}

/// Per-position run data: offset inside the current letter run (0 for a
/// strand that has just entered its ear) and the run length.
fn run_info(arr: &BranchArrangement) -> (Vec<u64>, Vec<u64>) {
    let words = &arr.words;
    let mut per_word: Vec<(Vec<u64>, Vec<u64>)> = Vec::with_capacity(words.len());
    for w in words {
        let l = w.letters();
        let n = l.len();
        let mut offset = vec![0u64; n];
        let mut length = vec![0u64; n];
        // Canonical words start at the beginning of an X-run.
        let mut i = 0;
        while i < n {
            let mut j = i;
            while j < n && l[j] == l[i] {
                j += 1;
            }
            for t in i..j {
                offset[t] = (t - i) as u64;
                length[t] = (j - i) as u64;
            }
            i = j;
        }
        per_word.push((offset, length));
    }
    arr.points
        .iter()
        .map(|p| {
            let (o, l) = &per_word[p.word];
            (o[p.shift], l[p.shift])
        })
        .unzip()
}

/// Rectangle chains and splitting events in both ears.
pub fn decompose(arr: &BranchArrangement) -> ChainDecomposition {
    let (offset, run) = run_info(arr);
    let succ = &arr.successor;
    let mut out = ChainDecomposition::default();

    for (ear_idx, ear) in [Ear::X, Ear::Y].into_iter().enumerate() {
        let block = arr.block(ear);
        let in_block = |p: usize| block.contains(&p);
        let is_rect =
            |i: usize| in_block(succ[i]) && in_block(succ[i + 1]) && succ[i + 1] == succ[i] + 1;

        for i in block.start..block.end.saturating_sub(1) {
            if is_rect(i) {
                out.rectangles[ear_idx] += 1;
                continue;
            }
            let (a, b) = (succ[i], succ[i + 1]);
            let lo = (a + 1).max(block.start);
            let hi = b.min(block.end);
            out.splittings.push(Splitting {
                ear,
                left: i,
                gap: hi.saturating_sub(lo) as u64,
                exits: !(in_block(a) && in_block(b)),
            });
        }

        for anchor in block.clone().filter(|&p| offset[p] == 0) {
            debug_assert_eq!(arr.letter_at(anchor), ear.letter());
            for side in [Side::Left, Side::Right] {
                let mut length = 1u64;
                let neighbour = match side {
                    Side::Left => anchor.checked_sub(1),
                    Side::Right => Some(anchor + 1),
                };
                let owned = match (side, neighbour) {
                    (_, Some(q)) if !in_block(q) => false,
                    (_, None) => false,
                    // A pair of simultaneous arrivals belongs to the left one.
                    (Side::Left, Some(q)) => offset[q] != 0,
                    (Side::Right, Some(_)) => true,
                };
                if owned {
                    let mut p = anchor;
                    loop {
                        let left = if side == Side::Left { p - 1 } else { p };
                        if !is_rect(left) {
                            break;
                        }
                        length += 1;
                        p = succ[p];
                    }
                }
                out.chains.push(Chain {
                    ear,
                    side,
                    anchor,
                    length,
                    exponent: run[anchor],
                });
            }
        }
    }
    out
}

/// Tetrahedron counts for every piece type.
pub fn piece_counts(arr: &BranchArrangement) -> PieceCounts {
    let chains = decompose(arr);
    let n_gamma = arr.n_gamma();
    let succ = &arr.successor;
    let mut a_by_ear = [0u64; 2];
    let mut b_by_ear = [0u64; 2];
    for (k, ear) in [Ear::X, Ear::Y].into_iter().enumerate() {
        let block = arr.block(ear);
        let gaps = chains.gap_total(ear);
        // Faces between the band edges and the outermost strands.
        let (first, last) = (succ[block.start], succ[block.end - 1]);
        let left_face = first.min(block.end).saturating_sub(block.start);
        let right_face = block.end.saturating_sub((last + 1).max(block.start));
        let boundary = (left_face + right_face) as u64;
        a_by_ear[k] = gaps + boundary + n_gamma;
        b_by_ear[k] = SPLIT_COEFF * gaps + CONE_COEFF * n_gamma;
    }
    PieceCounts {
        n_gamma,
        a_tetra: a_by_ear[0].max(a_by_ear[1]),
        b_linear_tetra: b_by_ear[0].max(b_by_ear[1]),
        c_tetra: n_gamma + 1,
        d_tetra: D_TETRA,
        a_by_ear,
        b_by_ear,
        chains,
    }
}
