//! Shuffle words: triangulations of a trapezoid encoded as interleavings of
//! its top and bottom label sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{CartanMatrix, Error, Result};

/// A `[1, n]`-sequence of edge labels. May be empty.
pub type LabelSequence = Vec<usize>;

/// Which base of the trapezoid a letter comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Origin {
    Top,
    Bottom,
}

impl Origin {
    pub fn toggled(self) -> Origin {
        match self {
            Origin::Top => Origin::Bottom,
            Origin::Bottom => Origin::Top,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Origin::Top => 'T',
            Origin::Bottom => 'B',
        }
    }

    pub fn from_char(c: char) -> Result<Origin> {
        match c {
            'T' => Ok(Origin::Top),
            'B' => Ok(Origin::Bottom),
            other => Err(Error::InvalidInstance(format!(
                "origin character {other:?}, expected 'T' or 'B'"
            ))),
        }
    }
}

/// One triangle of a triangulation: its edge label and which base it sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub value: usize,
    pub origin: Origin,
}

/// A triangulation of the trapezoid for a pair of `[1, n]`-sequences,
/// stored as the shuffle word: the subsequence of `Top` letters is the top
/// sequence, the subsequence of `Bottom` letters is the bottom sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleWord {
    letters: Vec<Letter>,
    cartan: CartanMatrix,
}

impl ShuffleWord {
    /// Interleaves `top` and `bottom` according to `origins`.
    pub fn new(
        top: &[usize],
        bottom: &[usize],
        origins: &[Origin],
        cartan: CartanMatrix,
    ) -> Result<Self> {
        if origins.len() != top.len() + bottom.len() {
            return Err(Error::LengthMismatch(format!(
                "{} origins for {} top + {} bottom letters",
                origins.len(),
                top.len(),
                bottom.len()
            )));
        }
        let tops = origins.iter().filter(|o| **o == Origin::Top).count();
        if tops != top.len() {
            return Err(Error::LengthMismatch(format!(
                "{tops} Top origins for a top sequence of length {}",
                top.len()
            )));
        }
        let mut it = top.iter();
        let mut ib = bottom.iter();
        let mut letters = Vec::with_capacity(origins.len());
        for &origin in origins {
            let value = match origin {
                Origin::Top => *it.next().expect("counted above"),
                Origin::Bottom => *ib.next().expect("counted above"),
            };
            letters.push(Letter { value, origin });
        }
        Self::from_letters(letters, cartan)
    }

    /// The unique all-`Bottom` word for the pair `(∅, bottom)`.
    pub fn bottom(bottom: &[usize], cartan: CartanMatrix) -> Result<Self> {
        let letters = bottom
            .iter()
            .map(|&value| Letter {
                value,
                origin: Origin::Bottom,
            })
            .collect();
        Self::from_letters(letters, cartan)
    }

    /// Builds a word directly from letters, checking the letter range.
    pub fn from_letters(letters: Vec<Letter>, cartan: CartanMatrix) -> Result<Self> {
        let n = cartan.n();
        for letter in &letters {
            if letter.value < 1 || letter.value > n {
                return Err(Error::LetterOutOfRange {
                    letter: letter.value,
                    n,
                });
            }
        }
        Ok(ShuffleWord { letters, cartan })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of triangles.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at triangle position `pos`, 1-based.
    pub fn letter(&self, pos: usize) -> Letter {
        self.letters[pos - 1]
    }

    /// The top sequence: values of the `Top` letters in order.
    pub fn top_sequence(&self) -> LabelSequence {
        self.subsequence(Origin::Top)
    }

    /// The bottom sequence: values of the `Bottom` letters in order.
    pub fn bottom_sequence(&self) -> LabelSequence {
        self.subsequence(Origin::Bottom)
    }

    fn subsequence(&self, origin: Origin) -> LabelSequence {
        self.letters
            .iter()
            .filter(|l| l.origin == origin)
            .map(|l| l.value)
            .collect()
    }

    /// Origin flags in word order.
    pub fn origins(&self) -> Vec<Origin> {
        self.letters.iter().map(|l| l.origin).collect()
    }

    /// Origins rendered as a 'T'/'B' string.
    pub fn origins_string(&self) -> String {
        self.letters.iter().map(|l| l.origin.as_char()).collect()
    }

    /// True when every letter comes from the bottom base.
    pub fn is_all_bottom(&self) -> bool {
        self.letters.iter().all(|l| l.origin == Origin::Bottom)
    }

    /// Word values in order, ignoring origins.
    pub fn values(&self) -> Vec<usize> {
        self.letters.iter().map(|l| l.value).collect()
    }

    /// The word with its first letter dropped; used when peeling all-bottom
    /// words letter by letter.
    pub fn without_first(&self) -> ShuffleWord {
        ShuffleWord {
            letters: self.letters[1..].to_vec(),
            cartan: self.cartan.clone(),
        }
    }

    /// Same trapezoid: equal top and bottom sequences over an equal Cartan
    /// matrix.
    pub fn same_shuffle_class(&self, other: &ShuffleWord) -> bool {
        self.cartan == other.cartan
            && self.top_sequence() == other.top_sequence()
            && self.bottom_sequence() == other.bottom_sequence()
    }
}

impl fmt::Display for ShuffleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", l.value, l.origin.as_char())?;
        }
        Ok(())
    }
}
