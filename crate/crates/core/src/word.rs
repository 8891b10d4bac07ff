//! Words, patterns and letter permutations.
//!
//! Letters are 1-based. A [`Word`] carries its alphabet size `d` and every
//! letter lies in `1..=d`. A [`Pattern`] is a word in dense-rank canonical
//! form: the letters used are exactly `1..=m` for some `m`.
//!
//! The textual form is a digit string (`"1213121"`) when every letter is at
//! most 9, and a comma-separated list (`"1,10,2"`) otherwise. Both forms are
//! accepted by the parsers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Letter = u8;

/// A finite word over the alphabet `{1, ..., d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: Letter,
}

impl Word {
    pub fn new(letters: Vec<Letter>, alphabet: Letter) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidArgument("alphabet size must be positive".into()));
        }
        if let Some((position, &letter)) = letters.iter().enumerate().find(|(_, &l)| l == 0 || l > alphabet) {
            return Err(Error::LetterOutOfRange {
                letter: letter.into(),
                position,
                alphabet: alphabet.into(),
            });
        }
        Ok(Word { letters, alphabet })
    }

    /// Builds a word whose alphabet is the largest letter used (1 for the empty word).
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        let alphabet = letters.iter().copied().max().unwrap_or(1).max(1);
        Word::new(letters, alphabet)
    }

    pub fn empty(alphabet: Letter) -> Self {
        Word {
            letters: Vec::new(),
            alphabet: alphabet.max(1),
        }
    }

    /// Parses the textual form, inferring the alphabet from the largest letter.
    pub fn parse(text: &str) -> Result<Self> {
        Word::from_letters(parse_letters(text)?)
    }

    /// Parses the textual form over an explicit alphabet.
    pub fn parse_with_alphabet(text: &str, alphabet: Letter) -> Result<Self> {
        Word::new(parse_letters(text)?, alphabet)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn alphabet_size(&self) -> Letter {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The first `len` letters (clamped to the word length).
    pub fn prefix(&self, len: usize) -> Word {
        Word {
            letters: self.letters[..len.min(self.letters.len())].to_vec(),
            alphabet: self.alphabet,
        }
    }

    /// Copy with the letter at `index` removed.
    pub fn without(&self, index: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.remove(index);
        Word {
            letters,
            alphabet: self.alphabet,
        }
    }

    /// Letters at the given (increasing) positions.
    pub fn subsequence(&self, indices: &[usize]) -> Word {
        Word {
            letters: indices.iter().map(|&i| self.letters[i]).collect(),
            alphabet: self.alphabet,
        }
    }

    /// True when no two adjacent letters are equal.
    pub fn is_alternating(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1])
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters, self.alphabet <= 9)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

/// A word in dense-rank canonical form (a preferential arrangement).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<Letter>);

impl Pattern {
    /// Validates that `letters` uses exactly the ranks `1..=m`.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if is_dense_canonical(&letters) {
            Ok(Pattern(letters))
        } else {
            Err(Error::NonCanonicalPattern(letters))
        }
    }

    pub(crate) fn new_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_dense_canonical(&letters));
        Pattern(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct ranks used.
    pub fn rank_count(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn to_word(&self) -> Word {
        Word::from_letters(self.0.clone()).expect("canonical patterns are valid words")
    }
}

impl AsRef<[Letter]> for Pattern {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0, self.rank_count() <= 9)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::new(parse_letters(s)?)
    }
}

/// A bijection on `{1, ..., d}`, stored as the image of each letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterPermutation(Vec<Letter>);

impl LetterPermutation {
    /// `images[i]` is the image of letter `i + 1`.
    pub fn new(images: Vec<Letter>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d + 1];
        for &image in &images {
            let i = image as usize;
            if i == 0 || i > d || seen[i] {
                return Err(Error::NotABijection(images));
            }
            seen[i] = true;
        }
        Ok(LetterPermutation(images))
    }

    pub fn identity(d: Letter) -> Self {
        LetterPermutation((1..=d).collect())
    }

    /// Every permutation of `{1, ..., d}` in lexicographic order of images.
    pub fn all(d: Letter) -> Vec<Self> {
        fn extend(current: &mut Vec<Letter>, used: &mut [bool], out: &mut Vec<LetterPermutation>) {
            let d = used.len() - 1;
            if current.len() == d {
                out.push(LetterPermutation(current.clone()));
                return;
            }
            for v in 1..=d {
                if !used[v] {
                    used[v] = true;
                    current.push(v as Letter);
                    extend(current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), &mut vec![false; d as usize + 1], &mut out);
        out
    }

    pub fn alphabet_size(&self) -> Letter {
        self.0.len() as Letter
    }

    pub fn image(&self, letter: Letter) -> Letter {
        self.0[letter as usize - 1]
    }

    pub fn images(&self) -> &[Letter] {
        &self.0
    }
}

fn is_dense_canonical(letters: &[Letter]) -> bool {
    let m = letters.iter().copied().max().unwrap_or(0) as usize;
    let mut used = vec![false; m + 1];
    for &l in letters {
        if l == 0 {
            return false;
        }
        used[l as usize] = true;
    }
    used[1..].iter().all(|&u| u)
}

fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let text = text.trim();
    let bad = || Error::Parse(text.to_string());
    if text.contains(',') {
        text.split(',')
            .map(|part| match part.trim().parse::<Letter>() {
                Ok(0) | Err(_) => Err(bad()),
                Ok(l) => Ok(l),
            })
            .collect()
    } else {
        text.chars()
            .map(|c| match c.to_digit(10) {
                Some(v) if v > 0 => Ok(v as Letter),
                _ => Err(bad()),
            })
            .collect()
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter], digits: bool) -> fmt::Result {
    if digits {
        for l in letters {
            write!(f, "{l}")?;
        }
    } else {
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
    }
    Ok(())
}
