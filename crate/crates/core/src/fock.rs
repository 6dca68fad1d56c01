//! Finitely supported vectors in the full Fock space over `C^n`, vector fields
//! (n-tuples of such vectors), and the creation/annihilation operators acting
//! on them.
//!
//! Words index the orthonormal basis: `e_w = e_{i_1} ⊗ ... ⊗ e_{i_k}`, with the
//! empty word as the vacuum. Zero coefficients are pruned after every
//! operation, so equality is equality of the coefficient maps.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Coordinates, InnerProduct, Rational, Scalar};
use crate::words::Word;

fn check_word(n: usize, word: &Word) -> Result<()> {
    match word.letters().iter().find(|&&l| l == 0 || l > n) {
        Some(&letter) => Err(Error::LetterOutOfRange { letter, n }),
        None => Ok(()),
    }
}

fn check_dir(n: usize, dir: usize) -> Result<()> {
    if dir == 0 || dir > n {
        Err(Error::DirectionOutOfRange { dir, n })
    } else {
        Ok(())
    }
}

fn check_same_n(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { left, right })
    }
}

fn accumulate<K: Ord, S: Scalar>(terms: &mut BTreeMap<K, S>, key: K, value: S) {
    if value.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().clone() + value;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    LeftCreate,
    LeftAnnihilate,
    RightCreate,
    RightAnnihilate,
    /// `s_j = l_j + l_j^*`
    Semicircular,
}

/// Element of a finite-degree truncation of `F(C^n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<S> {
    n: usize,
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> FockVector<S> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn vacuum(n: usize) -> Self {
        Self::basis_unchecked(n, Word::empty())
    }

    /// `e_w`
    pub fn basis(n: usize, word: Word) -> Result<Self> {
        check_word(n, &word)?;
        Ok(Self::basis_unchecked(n, word))
    }

    pub(crate) fn basis_unchecked(n: usize, word: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, S::one());
        Self { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, S)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (word, value) in terms {
            check_word(n, &word)?;
            accumulate(&mut out.terms, word, value);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Word, S> {
        &self.terms
    }

    pub fn coeff(&self, word: &Word) -> S {
        self.terms.get(word).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, value: S) {
        accumulate(&mut self.terms, word, value);
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self.terms.iter().map(|(w, v)| (w.clone(), v.clone() * factor.clone())).collect();
        Self { n: self.n, terms }
    }

    /// Homogeneous component of degree `k`.
    pub fn component(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|(w, _)| w.len() == k).map(|(w, v)| (w.clone(), v.clone())).collect();
        Self { n: self.n, terms }
    }

    /// Distinct degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Word::len).collect();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|w| w.len() == k)
    }

    pub fn apply(&self, kind: Generator, j: usize) -> Result<Self> {
        apply_generator(kind, j, self)
    }

    pub fn squared_norm(&self) -> S {
        self.terms.values().fold(S::zero(), |acc, v| acc + v.clone() * v.conj())
    }

    /// Linear extension of `f` on basis words.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Word) -> Self {
        let mut out = Self::zero(self.n);
        for (w, v) in &self.terms {
            out.add_term(f(w), v.clone());
        }
        out
    }
}

impl FockVector<Rational> {
    pub fn to_complex(&self) -> FockVector<Complex64> {
        FockVector { n: self.n, terms: self.terms.iter().map(|(w, v)| (w.clone(), to_complex(v))).collect() }
    }
}

pub(crate) fn to_complex(v: &Rational) -> Complex64 {
    use num_traits::ToPrimitive;
    Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)
}

impl<'a, S: Scalar> Add<&'a FockVector<S>> for &'a FockVector<S> {
    type Output = FockVector<S>;

    /// Panics if the alphabet sizes differ.
    fn add(self, rhs: &'a FockVector<S>) -> FockVector<S> {
        assert_eq!(self.n, rhs.n, "alphabet sizes differ");
        let mut out = self.clone();
        for (w, v) in &rhs.terms {
            out.add_term(w.clone(), v.clone());
        }
        out
    }
}

impl<'a, S: Scalar> Sub<&'a FockVector<S>> for &'a FockVector<S> {
    type Output = FockVector<S>;

    fn sub(self, rhs: &'a FockVector<S>) -> FockVector<S> {
        assert_eq!(self.n, rhs.n, "alphabet sizes differ");
        let mut out = self.clone();
        for (w, v) in &rhs.terms {
            out.add_term(w.clone(), -v.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &FockVector<S> {
    type Output = FockVector<S>;

    fn neg(self) -> FockVector<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> InnerProduct for FockVector<S> {
    type Scalar = S;

    fn inner(&self, other: &Self) -> Result<S> {
        inner(self, other)
    }
}

impl<S: Scalar> Coordinates for FockVector<S> {
    type Scalar = S;
    type Key = Word;

    fn coordinates(&self) -> Box<dyn Iterator<Item = (&Word, &S)> + '_> {
        Box::new(self.terms.iter())
    }
}

/// Applies `l_j`, `l_j^*`, `r_j`, `r_j^*` or `s_j` to a vector.
pub fn apply_generator<S: Scalar>(kind: Generator, j: usize, xi: &FockVector<S>) -> Result<FockVector<S>> {
    check_dir(xi.n, j)?;
    let mut out = FockVector::zero(xi.n);
    for (w, v) in &xi.terms {
        match kind {
            Generator::LeftCreate => out.add_term(w.prepend(j), v.clone()),
            Generator::RightCreate => out.add_term(w.append(j), v.clone()),
            Generator::LeftAnnihilate => {
                if let Some(rest) = w.strip_first(j) {
                    out.add_term(rest, v.clone());
                }
            }
            Generator::RightAnnihilate => {
                if let Some(rest) = w.strip_last(j) {
                    out.add_term(rest, v.clone());
                }
            }
            Generator::Semicircular => {
                out.add_term(w.prepend(j), v.clone());
                if let Some(rest) = w.strip_first(j) {
                    out.add_term(rest, v.clone());
                }
            }
        }
    }
    Ok(out)
}

/// `⟨ξ, η⟩ = Σ_w ξ(w) conj(η(w))`
pub fn inner<S: Scalar>(xi: &FockVector<S>, eta: &FockVector<S>) -> Result<S> {
    check_same_n(xi.n, eta.n)?;
    let (small, large, swapped) = if xi.len() <= eta.len() { (xi, eta, false) } else { (eta, xi, true) };
    Ok(small.terms.iter().fold(S::zero(), |acc, (w, a)| match large.terms.get(w) {
        Some(b) if swapped => acc + b.clone() * a.conj(),
        Some(b) => acc + a.clone() * b.conj(),
        None => acc,
    }))
}

/// The cyclic permutation `R e_{i_1...i_p} = e_{i_p i_1 ... i_{p-1}}`, fixing the vacuum.
pub fn cyclic_shift<S: Scalar>(xi: &FockVector<S>) -> FockVector<S> {
    xi.map_words(|w| if w.is_empty() { w.clone() } else { w.rotate(1).expect("nonempty") })
}

/// An n-tuple of Fock vectors, stored as coefficients on `e_w ⊗ f_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField<S> {
    n: usize,
    terms: BTreeMap<(Word, usize), S>,
}

impl<S: Scalar> VectorField<S> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// `e_w ⊗ f_dir`
    pub fn basis(n: usize, word: Word, dir: usize) -> Result<Self> {
        check_word(n, &word)?;
        check_dir(n, dir)?;
        let mut terms = BTreeMap::new();
        terms.insert((word, dir), S::one());
        Ok(Self { n, terms })
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, usize, S)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (word, dir, value) in terms {
            check_word(n, &word)?;
            check_dir(n, dir)?;
            out.add_term(word, dir, value);
        }
        Ok(out)
    }

    /// Assembles `(ξ_1, ..., ξ_n)`. The slice length sets `n`.
    pub fn from_components(components: &[FockVector<S>]) -> Result<Self> {
        let n = components.len();
        let mut out = Self::zero(n);
        for (idx, xi) in components.iter().enumerate() {
            check_same_n(n, xi.n)?;
            for (w, v) in &xi.terms {
                out.add_term(w.clone(), idx + 1, v.clone());
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Word, usize), S> {
        &self.terms
    }

    pub fn coeff(&self, word: &Word, dir: usize) -> S {
        self.terms.get(&(word.clone(), dir)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, dir: usize, value: S) {
        accumulate(&mut self.terms, (word, dir), value);
    }

    /// Component `j` (1-based) as a Fock vector.
    pub fn component(&self, j: usize) -> FockVector<S> {
        let terms = self
            .terms
            .iter()
            .filter(|((_, d), _)| *d == j)
            .map(|((w, _), v)| (w.clone(), v.clone()))
            .collect();
        FockVector { n: self.n, terms }
    }

    pub fn components(&self) -> Vec<FockVector<S>> {
        (1..=self.n).map(|j| self.component(j)).collect()
    }

    /// Restriction to word degree `k`.
    pub fn degree_part(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|((w, _), _)| w.len() == k).map(|(key, v)| (key.clone(), v.clone())).collect();
        Self { n: self.n, terms }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|(w, _)| w.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|(w, _)| w.len() == k)
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        let terms = self.terms.iter().map(|(key, v)| (key.clone(), v.clone() * factor.clone())).collect();
        Self { n: self.n, terms }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, factor: &S, other: &Self) {
        assert_eq!(self.n, other.n, "alphabet sizes differ");
        for ((w, d), v) in &other.terms {
            self.add_term(w.clone(), *d, factor.clone() * v.clone());
        }
    }

    pub fn squared_norm(&self) -> S {
        self.terms.values().fold(S::zero(), |acc, v| acc + v.clone() * v.conj())
    }
}

impl VectorField<Rational> {
    pub fn to_complex(&self) -> VectorField<Complex64> {
        VectorField { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), to_complex(v))).collect() }
    }
}

impl<'a, S: Scalar> Add<&'a VectorField<S>> for &'a VectorField<S> {
    type Output = VectorField<S>;

    /// Panics if the alphabet sizes differ.
    fn add(self, rhs: &'a VectorField<S>) -> VectorField<S> {
        let mut out = self.clone();
        out.add_scaled(&S::one(), rhs);
        out
    }
}

impl<'a, S: Scalar> Sub<&'a VectorField<S>> for &'a VectorField<S> {
    type Output = VectorField<S>;

    fn sub(self, rhs: &'a VectorField<S>) -> VectorField<S> {
        let mut out = self.clone();
        out.add_scaled(&-S::one(), rhs);
        out
    }
}

impl<S: Scalar> Neg for &VectorField<S> {
    type Output = VectorField<S>;

    fn neg(self) -> VectorField<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> InnerProduct for VectorField<S> {
    type Scalar = S;

    /// Sum of the component inner products.
    fn inner(&self, other: &Self) -> Result<S> {
        check_same_n(self.n, other.n)?;
        let (small, large, swapped) =
            if self.len() <= other.len() { (self, other, false) } else { (other, self, true) };
        Ok(small.terms.iter().fold(S::zero(), |acc, (key, a)| match large.terms.get(key) {
            Some(b) if swapped => acc + b.clone() * a.conj(),
            Some(b) => acc + a.clone() * b.conj(),
            None => acc,
        }))
    }
}

impl<S: Scalar> Coordinates for VectorField<S> {
    type Scalar = S;
    type Key = (Word, usize);

    fn coordinates(&self) -> Box<dyn Iterator<Item = (&(Word, usize), &S)> + '_> {
        Box::new(self.terms.iter())
    }
}

/// `θ^l(ξ_1, ..., ξ_n) = Σ_j (l_j - r_j) ξ_j`
pub fn theta_l<S: Scalar>(v: &VectorField<S>) -> FockVector<S> {
    let mut out = FockVector::zero(v.n);
    for ((w, j), c) in &v.terms {
        out.add_term(w.prepend(*j), c.clone());
        out.add_term(w.append(*j), -c.clone());
    }
    out
}

/// `(θ^l)^* ξ = ((l_j^* - r_j^*) ξ)_{j=1..n}`
pub fn theta_l_star<S: Scalar>(xi: &FockVector<S>) -> VectorField<S> {
    let mut out = VectorField::zero(xi.n);
    for (w, c) in &xi.terms {
        let (Some(first), Some(last)) = (w.first(), w.last()) else {
            continue;
        };
        let k = w.len();
        out.add_term(w.slice(1..k), first, c.clone());
        out.add_term(w.slice(0..k - 1), last, -c.clone());
    }
    out
}
