//! Noncommutative polynomials in `n` generators and their tensor squares.
//!
//! A polynomial is a sparse map from monomials (words) to coefficients, tagged
//! with a flavor that fixes how it acts on the vacuum: semicircular generators
//! `s_i = l_i + l_i^*` or left creations `l_i`. All algebraic operations are
//! flavor independent.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{apply_generator, FockVector, Generator, VectorField};
use crate::linalg::{Rational, Scalar};
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "s")]
    Semicircular,
    #[serde(rename = "l")]
    LeftCreation,
}

fn insert<K: Ord, S: Scalar>(terms: &mut BTreeMap<K, S>, key: K, value: S) {
    if value.is_zero() {
        return;
    }
    let slot = terms.entry(key).or_insert_with(S::zero);
    *slot = slot.clone() + value;
}

/// Drops entries cancelled to zero by [`insert`].
fn prune<K: Ord, S: Scalar>(terms: &mut BTreeMap<K, S>) {
    terms.retain(|_, v| !v.is_zero());
}

#[derive(Debug, Clone, PartialEq)]
pub struct NcPolynomial<S> {
    n: usize,
    flavor: Flavor,
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> NcPolynomial<S> {
    pub fn zero(n: usize, flavor: Flavor) -> Self {
        Self { n, flavor, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, flavor: Flavor, value: S) -> Self {
        let mut p = Self::zero(n, flavor);
        if !value.is_zero() {
            p.terms.insert(Word::empty(), value);
        }
        p
    }

    pub fn one(n: usize, flavor: Flavor) -> Self {
        Self::constant(n, flavor, S::one())
    }

    pub fn monomial(n: usize, flavor: Flavor, word: Word) -> Result<Self> {
        Self::from_terms(n, flavor, [(word, S::one())])
    }

    /// The generator `x_i`.
    pub fn generator(n: usize, flavor: Flavor, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::DirectionOutOfRange { dir: i, n });
        }
        Self::monomial(n, flavor, Word::from_letters(vec![i]))
    }

    pub fn from_terms(n: usize, flavor: Flavor, terms: impl IntoIterator<Item = (Word, S)>) -> Result<Self> {
        let mut p = Self::zero(n, flavor);
        for (word, value) in terms {
            if let Some(&letter) = word.letters().iter().find(|&&l| l == 0 || l > n) {
                return Err(Error::LetterOutOfRange { letter, n });
            }
            insert(&mut p.terms, word, value);
        }
        prune(&mut p.terms);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        Self { flavor, ..self.clone() }
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

    /// Largest monomial length; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AlphabetMismatch { left: self.n, right: other.n });
        }
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, v) in &other.terms {
            insert(&mut out.terms, w.clone(), v.clone());
        }
        prune(&mut out.terms);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * factor.clone();
        }
        prune(&mut out.terms);
        out
    }

    /// Bilinear extension of word concatenation.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, self.flavor);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                insert(&mut out.terms, a.concat(b), x.clone() * y.clone());
            }
        }
        prune(&mut out.terms);
        Ok(out)
    }

    pub fn pow(&self, m: usize) -> Self {
        let mut out = Self::one(self.n, self.flavor);
        for _ in 0..m {
            out = out.multiply(self).expect("same n and flavor");
        }
        out
    }
}

/// `δ(x_{i_1} ... x_{i_p}) = Σ_j x_{i_{j+1}} ... x_{i_p} x_{i_1} ... x_{i_{j-1}} ⊗ f_{i_j}`,
/// returned as the n-tuple of components.
pub fn cyclic_gradient<S: Scalar>(p: &NcPolynomial<S>) -> Vec<NcPolynomial<S>> {
    let mut out = vec![NcPolynomial::zero(p.n, p.flavor); p.n];
    for (w, c) in &p.terms {
        let k = w.len();
        for j in 0..k {
            let rotated = w.slice(j + 1..k).concat(&w.slice(0..j));
            insert(&mut out[w.letters()[j] - 1].terms, rotated, c.clone());
        }
    }
    for comp in &mut out {
        prune(&mut comp.terms);
    }
    out
}

/// `∂_i P = Σ_{P = A x_i B} A ⊗ B`
pub fn difference_quotient<S: Scalar>(i: usize, p: &NcPolynomial<S>) -> Result<BiPolynomial<S>> {
    if i == 0 || i > p.n {
        return Err(Error::DirectionOutOfRange { dir: i, n: p.n });
    }
    let mut out = BiPolynomial::zero(p.n);
    for (w, c) in &p.terms {
        let k = w.len();
        for (pos, &letter) in w.letters().iter().enumerate() {
            if letter == i {
                insert(&mut out.terms, (w.slice(0..pos), w.slice(pos + 1..k)), c.clone());
            }
        }
    }
    prune(&mut out.terms);
    Ok(out)
}

/// Applies each monomial to the vacuum, rightmost letter first.
pub fn evaluate_vacuum<S: Scalar>(p: &NcPolynomial<S>) -> FockVector<S> {
    let mut out = FockVector::zero(p.n);
    match p.flavor {
        Flavor::LeftCreation => {
            for (w, c) in &p.terms {
                out.add_term(w.clone(), c.clone());
            }
        }
        Flavor::Semicircular => {
            let mut memo = SemicircularMemo::<S>::new(p.n);
            for (w, c) in &p.terms {
                for (u, v) in memo.eval(w).terms() {
                    out.add_term(u.clone(), v.clone() * c.clone());
                }
            }
        }
    }
    out
}

/// Suffix-memoized `s_{i_1} ... s_{i_k} 1`.
struct SemicircularMemo<S> {
    n: usize,
    cache: HashMap<Word, FockVector<S>>,
}

impl<S: Scalar> SemicircularMemo<S> {
    fn new(n: usize) -> Self {
        Self { n, cache: HashMap::new() }
    }

    fn eval(&mut self, w: &Word) -> FockVector<S> {
        if let Some(v) = self.cache.get(w) {
            return v.clone();
        }
        let v = match w.first() {
            None => FockVector::vacuum(self.n),
            Some(first) => {
                let tail = self.eval(&w.slice(1..w.len()));
                apply_generator(Generator::Semicircular, first, &tail).expect("letters validated on construction")
            }
        };
        self.cache.insert(w.clone(), v.clone());
        v
    }

    fn trace(&mut self, w: &Word) -> S {
        self.eval(w).coeff(&Word::empty())
    }
}

/// `τ(P) = ⟨P 1, 1⟩`
pub fn trace<S: Scalar>(p: &NcPolynomial<S>) -> S {
    evaluate_vacuum(p).coeff(&Word::empty())
}

/// `τ ⊗ τ (Σ c A ⊗ B) = Σ c τ(A) τ(B)`, with words read as semicircular monomials.
pub fn trace_tensor<S: Scalar>(b: &BiPolynomial<S>) -> S {
    let mut memo = SemicircularMemo::<S>::new(b.n);
    b.terms.iter().fold(S::zero(), |acc, ((l, r), c)| {
        let tl = memo.trace(l);
        if tl.is_zero() {
            return acc;
        }
        acc + c.clone() * tl * memo.trace(r)
    })
}

/// The n-tuple of gradient components evaluated on the vacuum, `δ(P)[1 ⊕ ... ⊕ 1]`.
pub fn gradient_field<S: Scalar>(p: &NcPolynomial<S>) -> VectorField<S> {
    let comps: Vec<FockVector<S>> = cyclic_gradient(p).iter().map(evaluate_vacuum).collect();
    VectorField::from_components(&comps).expect("components share n")
}

/// Coefficients (ascending powers of `t`) of the monic second-kind Chebyshev
/// polynomial `U_k`, with `U_0 = 1`, `U_1 = t`, `U_{k+1} = t U_k - U_{k-1}`.
pub fn chebyshev(k: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    if k == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `U_k(x_j)` as a polynomial in `n` generators.
pub fn chebyshev_in<S: Scalar + From<Rational>>(n: usize, flavor: Flavor, j: usize, k: usize) -> Result<NcPolynomial<S>> {
    if j == 0 || j > n {
        return Err(Error::DirectionOutOfRange { dir: j, n });
    }
    let terms = chebyshev(k)
        .into_iter()
        .enumerate()
        .map(|(d, c)| (Word::from_letters(vec![j; d]), S::from(Rational::from_integer(c))));
    NcPolynomial::from_terms(n, flavor, terms)
}

/// Element of the algebraic tensor square, `Σ c A ⊗ B`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPolynomial<S> {
    n: usize,
    terms: BTreeMap<(Word, Word), S>,
}

impl<S: Scalar> BiPolynomial<S> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, Word, S)>) -> Self {
        let mut out = Self::zero(n);
        for (a, b, c) in terms {
            insert(&mut out.terms, (a, b), c);
        }
        prune(&mut out.terms);
        out
    }

    /// `p ⊗ q`
    pub fn tensor(p: &NcPolynomial<S>, q: &NcPolynomial<S>) -> Self {
        let mut out = Self::zero(p.n);
        for (a, x) in &p.terms {
            for (b, y) in &q.terms {
                insert(&mut out.terms, (a.clone(), b.clone()), x.clone() * y.clone());
            }
        }
        prune(&mut out.terms);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            insert(&mut out.terms, k.clone(), v.clone());
        }
        prune(&mut out.terms);
        out
    }

    /// `(A ⊗ B)(C ⊗ D) = AC ⊗ BD`
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                insert(&mut out.terms, (a.concat(c), b.concat(d)), x.clone() * y.clone());
            }
        }
        prune(&mut out.terms);
        out
    }
}
