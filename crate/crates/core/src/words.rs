//! Words over the alphabet `[n] = {1, ..., n}` and the cyclic group action on
//! fixed-length words.
//!
//! The cyclic permutation `R` moves the last letter to the front:
//! `R(i_1 ... i_{k-1} i_k) = i_k i_1 ... i_{k-1}`. Every module in the crate
//! uses this single convention.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite sequence of letters in `[1, n]`. The empty word is the vacuum index.
///
/// Words are ordered shortlex: first by length, then lexicographically. Within
/// one length this is the plain lexicographic order used for orbit
/// representatives.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    /// Builds a word, checking every letter against the alphabet size.
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("alphabet size must be positive".into()));
        }
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::LetterOutOfRange { letter, n });
        }
        Ok(Self { letters })
    }

    /// Builds a word without an alphabet check. Letters must still be positive.
    pub fn from_letters(letters: impl Into<Vec<usize>>) -> Self {
        let letters = letters.into();
        debug_assert!(letters.iter().all(|&l| l >= 1));
        Self { letters }
    }

    /// Parses a digit string such as `"1212"`; `""` is the empty word.
    /// Only usable for alphabets up to 9.
    pub fn parse_digits(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d > 0 => Ok(d as usize),
                _ => Err(Error::Parse(format!("invalid letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { letters })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest letter, or 0 for the empty word.
    pub fn max_letter(&self) -> usize {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    pub fn first(&self) -> Option<usize> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.letters.last().copied()
    }

    /// `j w`
    pub fn prepend(&self, letter: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }

    /// `w j`
    pub fn append(&self, letter: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.push(letter);
        Word { letters }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word { letters: self.letters[range].to_vec() }
    }

    /// `w` with its first letter removed, if that letter is `letter`.
    pub fn strip_first(&self, letter: usize) -> Option<Word> {
        match self.letters.split_first() {
            Some((&l, rest)) if l == letter => Some(Word { letters: rest.to_vec() }),
            _ => None,
        }
    }

    /// `w` with its last letter removed, if that letter is `letter`.
    pub fn strip_last(&self, letter: usize) -> Option<Word> {
        match self.letters.split_last() {
            Some((&l, rest)) if l == letter => Some(Word { letters: rest.to_vec() }),
            _ => None,
        }
    }

    /// `R^g(w)` for any integer `g`, reduced modulo the length.
    pub fn rotate(&self, g: i64) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let k = self.len() as i64;
        let shift = g.rem_euclid(k) as usize;
        let mut letters = self.letters.clone();
        letters.rotate_right(shift);
        Ok(Word { letters })
    }

    /// Smallest `p >= 1` with `R^p(w) = w`; equals the orbit size.
    pub fn period(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let k = self.len();
        Ok((1..=k)
            .filter(|p| k.is_multiple_of(*p))
            .find(|&p| self.letters.iter().enumerate().all(|(i, &l)| l == self.letters[(i + p) % k]))
            .unwrap_or(k))
    }

    /// Lexicographically minimal rotation.
    pub fn canonical_rotation(&self) -> Result<Word> {
        let p = self.period()?;
        Ok((0..p as i64)
            .map(|g| self.rotate(g).expect("nonempty"))
            .min()
            .expect("at least one rotation"))
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_rotation().map(|c| &c == self).unwrap_or(false)
    }

    pub fn orbit(&self) -> Result<Orbit> {
        Orbit::of(self)
    }

    /// Letters joined by `.` when any letter exceeds 9, otherwise run together.
    pub fn to_compact_string(&self) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.max_letter() > 9 { "." } else { "" };
        self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(sep)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_compact_string())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

/// An orbit of the `Z_k` action on `[n]^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    representative: Word,
    members: Vec<Word>,
    stabilizer_order: usize,
}

impl Orbit {
    pub fn of(word: &Word) -> Result<Self> {
        let p = word.period()?;
        let mut members: Vec<Word> =
            (0..p as i64).map(|g| word.rotate(g).expect("nonempty")).collect();
        members.sort();
        Ok(Self {
            representative: members[0].clone(),
            stabilizer_order: word.len() / p,
            members,
        })
    }

    pub fn representative(&self) -> &Word {
        &self.representative
    }

    /// The distinct rotations, sorted lexicographically (representative first).
    pub fn members(&self) -> &[Word] {
        &self.members
    }

    /// `p = |[u]|`
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `m = |(Z_k)_u|`
    pub fn stabilizer_order(&self) -> usize {
        self.stabilizer_order
    }

    pub fn word_len(&self) -> usize {
        self.representative.len()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.members.binary_search(word).is_ok()
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("alphabet size n must be at least 1".into()));
    }
    if k == 0 {
        return Err(Error::Domain("word length k must be at least 1".into()));
    }
    Ok(())
}

/// `n^k` with overflow detection.
pub fn word_count(n: usize, k: usize) -> Result<u128> {
    (n as u128).checked_pow(k as u32).ok_or(Error::Overflow("n^k"))
}

/// Number of necklaces `|[n]^k / Z_k| = (1/k) * sum_{g=1..k} n^gcd(g, k)`.
pub fn necklace_count(n: usize, k: usize) -> Result<u128> {
    check_nk(n, k)?;
    let mut total: u128 = 0;
    for g in 1..=k {
        let fixed = word_count(n, g.gcd(&k))?;
        total = total.checked_add(fixed).ok_or(Error::Overflow("Burnside sum"))?;
    }
    debug_assert_eq!(total % k as u128, 0);
    Ok(total / k as u128)
}

/// All words of length `k` over `[n]`, in lexicographic order.
pub fn all_words(n: usize, k: usize) -> AllWords {
    AllWords { n, current: if n == 0 && k > 0 { None } else { Some(vec![1; k]) } }
}

#[derive(Debug, Clone)]
pub struct AllWords {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.as_mut()?;
        let out = Word { letters: cur.clone() };
        match cur.iter().rposition(|&l| l < self.n) {
            Some(i) => {
                cur[i] += 1;
                cur[i + 1..].iter_mut().for_each(|l| *l = 1);
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// Lex-minimal orbit representatives of `[n]^k`, streamed in increasing order.
pub fn enumerate_orbit_reps(n: usize, k: usize) -> Result<Necklaces> {
    check_nk(n, k)?;
    Ok(Necklaces { n, k, buf: None, done: false })
}

/// FKM generator: walks the prenecklaces in lexicographic order and keeps those
/// whose last Lyndon prefix length divides `k`. State is a single length-`k`
/// buffer.
#[derive(Debug, Clone)]
pub struct Necklaces {
    n: usize,
    k: usize,
    buf: Option<Vec<usize>>,
    done: bool,
}

impl Iterator for Necklaces {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let a = match self.buf.as_mut() {
            None => {
                let first = vec![1; self.k];
                self.buf = Some(first.clone());
                return Some(Word { letters: first });
            }
            Some(a) => a,
        };
        loop {
            let Some(i) = a.iter().rposition(|&l| l < self.n) else {
                self.done = true;
                return None;
            };
            a[i] += 1;
            let p = i + 1;
            for j in p..self.k {
                a[j] = a[j - p];
            }
            if self.k.is_multiple_of(p) {
                return Some(Word { letters: a.clone() });
            }
        }
    }
}
