//! Bases and dimensions of the homogeneous divergence-free spaces `X^(n)_k`.
//!
//! `X^(n)_k` is the image of degree-`(k+1)` tensors under `(θ^l)^*`, and
//! `(θ^l)^*` is injective on the range of `I - R`. A basis of that range is
//! `e_v - e_{Rv}` over the non-representative members `v` of each orbit; its
//! image is the primary basis here. Two further constructions are provided for
//! comparison: the lexicographic set `Ω` (too small once `k >= 2`) and the
//! roots-of-unity basis, computed in complex floating point.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{cyclic_shift, theta_l_star, FockVector, VectorField};
use crate::linalg::{Mode, Rational, Scalar};
use crate::words::{all_words, enumerate_orbit_reps, necklace_count, word_count, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub k: usize,
    /// `n^{k+1}`, the dimension of `[(C^n)^{⊗k}]^n`.
    pub ambient: u128,
    pub necklaces: u128,
    pub dim_cyclic: u128,
    pub dim_divfree: u128,
    /// Dimension of the divergence-free fields of degree at most `k`.
    pub dim_vect_leq: u128,
}

pub fn dim_report(n: usize, k: usize) -> Result<DimensionReport> {
    if n == 0 {
        return Err(Error::Domain("alphabet size n must be at least 1".into()));
    }
    let ambient = word_count(n, k + 1)?;
    let necklaces = necklace_count(n, k + 1)?;
    // n + n^2 + ... + n^{k+1}, which is n(n^{k+1} - 1)/(n - 1) for n > 1.
    let mut geometric: u128 = 0;
    let mut necklace_sum: u128 = 0;
    for j in 0..=k {
        geometric = geometric.checked_add(word_count(n, j + 1)?).ok_or(Error::Overflow("geometric sum"))?;
        necklace_sum += necklace_count(n, j + 1)?;
    }
    Ok(DimensionReport {
        n,
        k,
        ambient,
        necklaces,
        dim_cyclic: necklaces,
        dim_divfree: ambient - necklaces,
        dim_vect_leq: geometric - necklace_sum,
    })
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("alphabet size n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `(I - R) e_w`
pub fn difference_vector(n: usize, w: &Word) -> Result<FockVector<Rational>> {
    let e = FockVector::basis(n, w.clone())?;
    Ok(&e - &cyclic_shift(&e))
}

/// `F_w = (θ^l)^* (I - R) e_w`
pub fn f_vector(n: usize, w: &Word) -> Result<VectorField<Rational>> {
    Ok(theta_l_star(&difference_vector(n, w)?))
}

/// Non-representative members of each orbit of `[n]^{k+1}`, orbit by orbit.
fn non_representatives(n: usize, k: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for rep in enumerate_orbit_reps(n, k + 1)? {
        let orbit = rep.orbit()?;
        out.extend(orbit.members()[1..].iter().cloned());
    }
    Ok(out)
}

/// `{(I - R) e_v : v ∈ [u] \ {u}}` over all orbits of `[n]^{k+1}`.
pub fn divfree_preimage_basis(n: usize, k: usize) -> Result<Vec<FockVector<Rational>>> {
    check_n(n)?;
    non_representatives(n, k)?.iter().map(|v| difference_vector(n, v)).collect()
}

/// `(θ^l)^*` applied to [`divfree_preimage_basis`]; a basis of `X^(n)_k`.
pub fn divfree_basis(n: usize, k: usize) -> Result<Vec<VectorField<Rational>>> {
    Ok(divfree_preimage_basis(n, k)?.iter().map(theta_l_star).collect())
}

/// The three-term closed form of `(θ^l)^* (I - R) e_v` for `v = i_1 ... i_{k+1}`:
/// component `j` is
/// `δ_{j,i_1} e_{i_2...i_{k+1}} - 2 δ_{j,i_{k+1}} e_{i_1...i_k} + δ_{j,i_k} e_{i_{k+1} i_1 ... i_{k-1}}`.
pub fn divfree_closed_form(n: usize, v: &Word) -> Result<VectorField<Rational>> {
    let len = v.len();
    if len < 2 {
        return Err(Error::Domain("closed form needs a word of length at least 2".into()));
    }
    let i = v.letters();
    let tail_first = v.slice(1..len);
    let head = v.slice(0..len - 1);
    let wrapped = Word::from_letters(vec![i[len - 1]]).concat(&v.slice(0..len - 2));
    VectorField::from_terms(
        n,
        [
            (tail_first, i[0], Rational::from_int(1)),
            (head, i[len - 1], Rational::from_int(-2)),
            (wrapped, i[len - 2], Rational::from_int(1)),
        ],
    )
}

/// `Ω_{k+1} = {w ∈ [n]^{k+1} : w ≺ Rw, w ≠ Rw}` in lexicographic order.
pub fn omega_set(n: usize, k: usize) -> Result<Vec<Word>> {
    check_n(n)?;
    word_count(n, k + 1)?;
    Ok(all_words(n, k + 1)
        .filter(|w| {
            let r = w.rotate(1).expect("length k+1 >= 1");
            w.letters() < r.letters()
        })
        .collect())
}

/// Images `F_w` of the `Ω` words.
pub fn omega_images(n: usize, k: usize) -> Result<Vec<VectorField<Rational>>> {
    omega_set(n, k)?.iter().map(|w| f_vector(n, w)).collect()
}

/// One element of the roots-of-unity basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaElement {
    pub representative: Word,
    pub period: usize,
    /// `ζ = exp(2πi r / period)` with `1 <= r < period`.
    pub root_index: usize,
    pub vector: VectorField<Complex64>,
}

/// For each lex-minimal representative `I` of period `p >= 2` and each
/// nontrivial `p`-th root of unity `ζ`, the field `Σ_{j=0}^{p-1} ζ^j F_{R^{-j} I}`,
/// where `R^{-j} I` is `I` rotated left by `j` letters. Float mode only.
pub fn zeta_basis(n: usize, k: usize, mode: Mode) -> Result<Vec<ZetaElement>> {
    if mode == Mode::Exact {
        return Err(Error::UnsupportedMode("exact"));
    }
    check_n(n)?;
    let mut out = Vec::new();
    for rep in enumerate_orbit_reps(n, k + 1)? {
        let p = rep.period()?;
        if p < 2 {
            continue;
        }
        let fs: Vec<VectorField<Complex64>> = (0..p)
            .map(|j| f_vector(n, &rep.rotate(-(j as i64))?).map(|f| f.to_complex()))
            .collect::<Result<_>>()?;
        for r in 1..p {
            let mut vector = VectorField::zero(n);
            for (j, f) in fs.iter().enumerate() {
                let zeta_j = Complex64::from_polar(1.0, 2.0 * PI * (r * j % p) as f64 / p as f64);
                vector.add_scaled(&zeta_j, f);
            }
            out.push(ZetaElement { representative: rep.clone(), period: p, root_index: r, vector });
        }
    }
    Ok(out)
}
