//! Cyclic code words over `{x, y}`.
//!
//! A periodic geodesic on the modular surface is recorded by the cyclic
//! sequence of template bands it traverses. Words are stored in their
//! canonical rotation (lexicographically least under `X < Y`), so two words
//! compare equal exactly when they code the same conjugacy class.

use std::fmt;

use thiserror::Error;

/// Hard cap on the expanded length of a parsed word.
pub const MAX_WORD_LEN: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unexpected character {ch:?} at offset {offset}")]
    ForeignChar { ch: char, offset: usize },
    #[error("missing exponent after '^' at offset {offset}")]
    MissingExponent { offset: usize },
    #[error("negative exponent at offset {offset}")]
    NegativeExponent { offset: usize },
    #[error("zero exponent at offset {offset}")]
    ZeroExponent { offset: usize },
    #[error("word longer than {MAX_WORD_LEN} letters")]
    TooLong,
    #[error("peripheral word: a closed geodesic needs both letters x and y")]
    Peripheral,
    #[error("syllable exponents must be positive")]
    BadSyllables,
    #[error("word {0} is not primitive")]
    NotPrimitive(CyclicWord),
    #[error("word {0} appears more than once")]
    Duplicate(CyclicWord),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// A cyclic word containing both letters, held in canonical rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

/// Run-length form `x^{k_1} y^{m_1} ... x^{k_n} y^{m_n}` of a cyclic word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllables {
    pairs: Vec<(u64, u64)>,
}

impl CyclicWord {
    /// Builds a word from any rotation of its letters.
    pub fn from_letters(letters: &[Letter]) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        if letters.len() > MAX_WORD_LEN {
            return Err(WordError::TooLong);
        }
        let has_x = letters.contains(&Letter::X);
        let has_y = letters.contains(&Letter::Y);
        if !(has_x && has_y) {
            return Err(WordError::Peripheral);
        }
        let start = least_rotation(letters);
        let mut canon = Vec::with_capacity(letters.len());
        canon.extend_from_slice(&letters[start..]);
        canon.extend_from_slice(&letters[..start]);
        Ok(CyclicWord { letters: canon })
    }

    pub fn from_syllables(s: &Syllables) -> Result<Self, WordError> {
        let total: u64 = s.pairs.iter().map(|&(k, m)| k + m).sum();
        if total as usize > MAX_WORD_LEN {
            return Err(WordError::TooLong);
        }
        let mut letters = Vec::with_capacity(total as usize);
        for &(k, m) in &s.pairs {
            letters.extend(std::iter::repeat_n(Letter::X, k as usize));
            letters.extend(std::iter::repeat_n(Letter::Y, m as usize));
        }
        Self::from_letters(&letters)
    }

    /// `x^k y^m`.
    pub fn power_pair(k: u64, m: u64) -> Result<Self, WordError> {
        Self::from_syllables(&Syllables::new(vec![(k, m)])?)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Lowercase letter string, e.g. `xxxyy`.
    pub fn letter_string(&self) -> String {
        self.letters.iter().map(|l| l.as_char()).collect()
    }

    /// True iff the word is not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let p = smallest_period(&self.letters);
        p == self.letters.len() || !self.letters.len().is_multiple_of(p)
    }

    /// Run-length decomposition starting at the first X-run.
    ///
    /// The canonical rotation always starts at the beginning of an X-run and
    /// ends with a Y, so the runs can be read off left to right.
    pub fn syllables(&self) -> Syllables {
        let mut pairs = Vec::new();
        let mut i = 0;
        let n = self.letters.len();
        while i < n {
            let k = run_len(&self.letters[i..], Letter::X);
            i += k;
            let m = run_len(&self.letters[i..], Letter::Y);
            i += m;
            pairs.push((k as u64, m as u64));
        }
        Syllables { pairs }
    }

    /// Number of cyclic positions where `x` is immediately followed by `y`.
    pub fn xy_count(&self) -> usize {
        let n = self.letters.len();
        (0..n)
            .filter(|&i| self.letters[i] == Letter::X && self.letters[(i + 1) % n] == Letter::Y)
            .count()
    }

    /// Periodic part `[k_1, m_1, ..., k_n, m_n]` of the even continued fraction.
    pub fn to_even_cf(&self) -> Vec<u64> {
        self.syllables()
            .pairs()
            .iter()
            .flat_map(|&(k, m)| [k, m])
            .collect()
    }
}

impl fmt::Display for CyclicWord {
    /// Compact caret syntax, e.g. `x^3y^2`; reparses to the same word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(k, m) in self.syllables().pairs() {
            write_power(f, 'x', k)?;
            write_power(f, 'y', m)?;
        }
        Ok(())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, c: char, e: u64) -> fmt::Result {
    if e == 1 {
        write!(f, "{c}")
    } else {
        write!(f, "{c}^{e}")
    }
}

impl std::str::FromStr for CyclicWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Syllables {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self, WordError> {
        if pairs.is_empty() {
            return Err(WordError::Empty);
        }
        if pairs.iter().any(|&(k, m)| k == 0 || m == 0) {
            return Err(WordError::BadSyllables);
        }
        Ok(Syllables { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// `n_γ` for a single word.
    pub fn n_gamma(&self) -> usize {
        self.pairs.len()
    }
}

/// Parses the surface syntax: letters `x`/`y` with optional `^<exponent>`,
/// whitespace ignored, case-insensitive.
pub fn parse(text: &str) -> Result<CyclicWord, WordError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.is_empty() {
        return Err(WordError::Empty);
    }
    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (offset, c) = chars[i];
        let letter = match c.to_ascii_lowercase() {
            'x' => Letter::X,
            'y' => Letter::Y,
            _ => return Err(WordError::ForeignChar { ch: c, offset }),
        };
        i += 1;
        let mut exponent: u64 = 1;
        if i < chars.len() && chars[i].1 == '^' {
            let caret = chars[i].0;
            i += 1;
            if i < chars.len() && chars[i].1 == '-' {
                return Err(WordError::NegativeExponent { offset: caret });
            }
            let start = i;
            let mut value: u64 = 0;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                let d = chars[i].1 as u64 - '0' as u64;
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d))
                    .ok_or(WordError::TooLong)?;
                i += 1;
            }
            if i == start {
                return Err(WordError::MissingExponent { offset: caret });
            }
            if value == 0 {
                return Err(WordError::ZeroExponent { offset: caret });
            }
            exponent = value;
        }
        if letters.len() as u64 + exponent > MAX_WORD_LEN as u64 {
            return Err(WordError::TooLong);
        }
        letters.extend(std::iter::repeat_n(letter, exponent as usize));
    }
    CyclicWord::from_letters(&letters)
}

/// `n_γ` of a collection: total number of cyclic `xy` subwords.
///
/// The collection must consist of pairwise distinct primitive words.
pub fn n_gamma(words: &[CyclicWord]) -> Result<usize, WordError> {
    check_collection(words)?;
    Ok(words.iter().map(CyclicWord::xy_count).sum())
}

/// Rejects non-primitive members and repeated conjugacy classes.
pub fn check_collection(words: &[CyclicWord]) -> Result<(), WordError> {
    let mut seen = std::collections::HashSet::with_capacity(words.len());
    for w in words {
        if !w.is_primitive() {
            return Err(WordError::NotPrimitive(w.clone()));
        }
        if !seen.insert(w) {
            return Err(WordError::Duplicate(w.clone()));
        }
    }
    Ok(())
}

/// All primitive canonical words of length `2..=max_len`, ordered by length
/// then lexicographically.
pub fn primitive_words_up_to(max_len: usize) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    for len in 2..=max_len.min(30) {
        for bits in 0u64..(1u64 << len) {
            // Bit i set means Y at position i (most significant letter first).
            let letters: Vec<Letter> = (0..len)
                .map(|i| {
                    if bits >> (len - 1 - i) & 1 == 1 {
                        Letter::Y
                    } else {
                        Letter::X
                    }
                })
                .collect();
            if !letters.contains(&Letter::X) || !letters.contains(&Letter::Y) {
                continue;
            }
            if least_rotation(&letters) != 0 {
                continue;
            }
            let w = CyclicWord { letters };
            if w.is_primitive() {
                out.push(w);
            }
        }
    }
    out
}

fn run_len(s: &[Letter], l: Letter) -> usize {
    s.iter().take_while(|&&c| c == l).count()
}

/// Start index of the lexicographically least rotation (two-pointer scan).
pub(crate) fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Smallest period of the linear sequence, from the prefix function.
fn smallest_period(s: &[Letter]) -> usize {
    let n = s.len();
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    n - pi[n - 1]
}
