//! Reduced words and cyclic words in a free group of fixed rank.
//!
//! Letters are stored as nonzero `i8`: `+k` is the k-th generator
//! (1-indexed), `-k` its inverse. The textual syntax writes generators as
//! `a b c ...` and inverses as capitals `A B C ...`; whitespace between
//! letters is optional. Ranks up to 26 are supported.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Letter = i8;

pub const MAX_RANK: usize = 26;

#[inline]
pub fn letter_inverse(l: Letter) -> Letter {
    -l
}

/// Total order on letters used for canonical rotations: x1 < x1^-1 < x2 < ...
#[inline]
pub fn letter_key(l: Letter) -> u8 {
    debug_assert!(l != 0);
    let idx = (l.unsigned_abs() - 1) * 2;
    if l > 0 {
        idx
    } else {
        idx + 1
    }
}

/// A freely reduced word in F_n. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    rank: u8,
    letters: Vec<Letter>,
}

impl Word {
    /// Freely reduces a raw letter sequence.
    pub fn reduce(rank: usize, raw: &[Letter]) -> Result<Word> {
        check_rank(rank)?;
        let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
        for &l in raw {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(Error::LetterOutOfRange {
                    letter: l as i16,
                    rank,
                });
            }
            if let Some(&last) = out.last() {
                if last == -l {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        Ok(Word {
            rank: rank as u8,
            letters: out,
        })
    }

    pub fn identity(rank: usize) -> Word {
        Word {
            rank: rank as u8,
            letters: Vec::new(),
        }
    }

    /// Single-generator word; `gen` is 1-indexed, negative for inverses.
    pub fn generator(rank: usize, gen: Letter) -> Word {
        Word::reduce(rank, &[gen]).expect("generator in range")
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn mul(&self, other: &Word) -> Word {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.letters.clone();
        for &l in &other.letters {
            if let Some(&last) = out.last() {
                if last == -l {
                    out.pop();
                    continue;
                }
            }
            out.push(l);
        }
        Word {
            rank: self.rank,
            letters: out,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn conjugate(&self, by: &Word) -> Word {
        by.mul(self).mul(&by.inverse())
    }

    pub fn pow(&self, e: i32) -> Word {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::identity(self.rank());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Longest common prefix length with another word.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.letters
            .iter()
            .zip(other.letters.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.letters.len() >= prefix.letters.len()
            && self.letters[..prefix.letters.len()] == prefix.letters[..]
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters[..len].to_vec(),
        }
    }

    /// Appends one letter, assuming it does not cancel; panics in debug if it does.
    pub fn push(&self, l: Letter) -> Word {
        debug_assert!(self.letters.last() != Some(&-l));
        let mut letters = self.letters.clone();
        letters.push(l);
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// Parses `a b A` style text (whitespace optional).
    pub fn parse(rank: usize, text: &str) -> Result<Word> {
        check_rank(rank)?;
        let mut raw = Vec::new();
        for (col, ch) in text.chars().enumerate() {
            if ch.is_whitespace() || ch == '*' || ch == '·' {
                continue;
            }
            if ch == '1' || ch == 'ε' {
                continue; // explicit identity
            }
            let l: Letter = if ch.is_ascii_lowercase() {
                (ch as u8 - b'a' + 1) as i8
            } else if ch.is_ascii_uppercase() {
                -((ch as u8 - b'A' + 1) as i8)
            } else {
                return Err(Error::Parse {
                    line: 1,
                    col: col + 1,
                    msg: format!("unexpected character {ch:?} in word"),
                });
            };
            raw.push(l);
        }
        Word::reduce(rank, &raw)
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::InvalidBasis(format!(
            "rank {rank} outside supported range 1..={MAX_RANK}"
        )));
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.letters {
            let c = if l > 0 {
                (b'a' + l as u8 - 1) as char
            } else {
                (b'A' + (-l) as u8 - 1) as char
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// A cyclically reduced word stored in its canonical rotation
/// (lexicographically least under x1 < x1^-1 < x2 < ...).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicWord {
    rank: u8,
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn as_word(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.clone(),
        }
    }

    pub fn inverse(&self) -> CyclicWord {
        cyclic_canonical(self.rank as usize, self.as_word().inverse().letters())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_word())
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({self})")
    }
}

fn rotation_cmp(letters: &[Letter], i: usize, j: usize) -> std::cmp::Ordering {
    let n = letters.len();
    for k in 0..n {
        let a = letter_key(letters[(i + k) % n]);
        let b = letter_key(letters[(j + k) % n]);
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => continue,
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

fn cyclic_canonical(rank: usize, letters: &[Letter]) -> CyclicWord {
    if letters.is_empty() {
        return CyclicWord {
            rank: rank as u8,
            letters: Vec::new(),
        };
    }
    let mut best = 0usize;
    for i in 1..letters.len() {
        if rotation_cmp(letters, i, best) == std::cmp::Ordering::Less {
            best = i;
        }
    }
    let mut rotated = Vec::with_capacity(letters.len());
    rotated.extend_from_slice(&letters[best..]);
    rotated.extend_from_slice(&letters[..best]);
    CyclicWord {
        rank: rank as u8,
        letters: rotated,
    }
}

/// Cyclic reduction. Returns the canonical-rotation cyclic part and a
/// conjugator `c` with `c * cyclic * c^-1 = w`.
pub fn cyclic_reduce(w: &Word) -> (CyclicWord, Word) {
    let mut letters = w.letters().to_vec();
    let mut pre = Vec::new();
    while letters.len() >= 2 && letters[0] == -letters[letters.len() - 1] {
        pre.push(letters[0]);
        letters.remove(0);
        letters.pop();
    }
    // letters is now cyclically reduced; pick canonical rotation and absorb
    // the rotation offset into the conjugator: if v = letters = u t (rotation
    // at |u|), then u t = u (t u) u^-1, so the extra conjugator piece is u.
    let cyc = cyclic_canonical(w.rank(), &letters);
    let mut conj = Word::reduce(w.rank(), &pre).expect("prefix letters in range");
    if !letters.is_empty() {
        // find the rotation index that was chosen
        let mut best = 0usize;
        for i in 1..letters.len() {
            if rotation_cmp(&letters, i, best) == std::cmp::Ordering::Less {
                best = i;
            }
        }
        let u = Word::reduce(w.rank(), &letters[..best]).expect("letters in range");
        conj = conj.mul(&u);
    }
    debug_assert_eq!(
        conj.mul(&cyc.as_word()).mul(&conj.inverse()),
        *w,
        "cyclic reduction defining equation"
    );
    (cyc, conj)
}

/// Tests whether two words are conjugate, returning a conjugator `c` with
/// `c u c^-1 = w` when they are.
pub fn conjugator(w: &Word, u: &Word) -> Option<Word> {
    let (cw, conj_w) = cyclic_reduce(w);
    let (cu, conj_u) = cyclic_reduce(u);
    if cw != cu {
        return None;
    }
    let c = conj_w.mul(&conj_u.inverse());
    debug_assert_eq!(c.mul(u).mul(&c.inverse()), *w);
    Some(c)
}
