//! The orthogonal basis of homogeneous cyclic gradients and the two
//! complementary projections built from it: onto cyclic gradients, and the
//! free Leray projection onto the divergence-free complement.
//!
//! Basis vectors are kept unnormalized with their exact squared norms
//! `m^2 p`, where `m` is the stabilizer order and `p` the orbit size of the
//! indexing word. Normalizing would need `sqrt(p)`, which is irrational in
//! general.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fock::VectorField;
use crate::linalg::{InnerProduct, Rational, Scalar};
use crate::words::{enumerate_orbit_reps, Orbit, Word};

/// `δ^l(l_u)[1 ⊕ ... ⊕ 1] = Σ_j e_{i_{j+1} ... i_p i_1 ... i_{j-1}} ⊗ f_{i_j}` for `u = i_1 ... i_p`.
pub fn cyclic_gradient_field<S: Scalar>(n: usize, u: &Word) -> VectorField<S> {
    let mut out = VectorField::zero(n);
    let k = u.len();
    for j in 0..k {
        let rotated = u.slice(j + 1..k).concat(&u.slice(0..j));
        out.add_term(rotated, u.letters()[j], S::one());
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientBasisElement {
    pub orbit: Orbit,
    pub vector: VectorField<Rational>,
    /// `m^2 p`
    pub squared_norm: BigInt,
}

impl GradientBasisElement {
    pub fn new(n: usize, u: &Word) -> Result<Self> {
        let orbit = u.orbit()?;
        let m = orbit.stabilizer_order();
        let squared_norm = BigInt::from(m * m * orbit.size());
        let vector = cyclic_gradient_field(n, orbit.representative());
        Ok(Self { orbit, vector, squared_norm })
    }

    /// The unit vector `vector / sqrt(m^2 p)` in double precision, as
    /// `(word, dir, value)` triples in term order.
    pub fn normalized(&self) -> Vec<(Word, usize, f64)> {
        use num_traits::ToPrimitive;
        let norm = self.squared_norm.to_f64().unwrap_or(f64::NAN).sqrt();
        self.vector
            .terms()
            .iter()
            .map(|((w, d), v)| (w.clone(), *d, v.to_f64().unwrap_or(f64::NAN) / norm))
            .collect()
    }
}

/// One element per orbit of `[n]^{k+1}`, in representative order. Pairwise
/// orthogonal; spans the degree-`k` cyclic gradients on the vacuum.
pub fn cyclic_gradient_basis(n: usize, k: usize) -> Result<Vec<GradientBasisElement>> {
    if n == 0 {
        return Err(Error::Domain("alphabet size n must be at least 1".into()));
    }
    enumerate_orbit_reps(n, k + 1)?.map(|u| GradientBasisElement::new(n, &u)).collect()
}

/// Orthogonal projection onto the cyclic gradients, by the closed form
/// `e_u ⊗ f_j ↦ δ^l(l_{ju})[1 ⊕ ... ⊕ 1] / (|u| + 1)`, extended linearly
/// over all degrees.
pub fn project_cyclic<S: Scalar>(v: &VectorField<S>) -> VectorField<S> {
    let n = v.n();
    let mut out = VectorField::zero(n);
    for ((u, j), c) in v.terms() {
        let factor = c.clone() * S::from_ratio(1, u.len() as i64 + 1);
        out.add_scaled(&factor, &cyclic_gradient_field(n, &u.prepend(*j)));
    }
    out
}

/// Free Leray projection `v - project_cyclic(v)`.
pub fn leray<S: Scalar>(v: &VectorField<S>) -> VectorField<S> {
    v - &project_cyclic(v)
}

/// Projection through the orthogonal-basis expansion
/// `Σ_b ⟨v, b⟩ / |b|^2 · b`, summed over every degree present in `v`.
/// Slower than [`project_cyclic`]; kept as an independent cross-check.
pub fn project_cyclic_by_expansion(v: &VectorField<Rational>) -> Result<VectorField<Rational>> {
    let n = v.n();
    let mut out = VectorField::zero(n);
    for k in v.degrees() {
        let part = v.degree_part(k);
        for b in cyclic_gradient_basis(n, k)? {
            let coeff = part.inner(&b.vector)?;
            if !num_traits::Zero::is_zero(&coeff) {
                out.add_scaled(&(coeff / Rational::from_integer(b.squared_norm.clone())), &b.vector);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{theta_l_star, FockVector};
    use crate::linalg::gram;

    type Q = Rational;

    fn w(s: &str) -> Word {
        Word::parse_digits(s).unwrap()
    }

    fn field(n: usize, terms: &[(&str, usize, i64, i64)]) -> VectorField<Q> {
        VectorField::from_terms(n, terms.iter().map(|(s, d, a, b)| (w(s), *d, Q::from_ratio(*a, *b)))).unwrap()
    }

    #[test]
    fn degree_one_basis_for_two_letters() {
        let basis = cyclic_gradient_basis(2, 1).unwrap();
        let vectors: Vec<_> = basis.iter().map(|b| b.vector.clone()).collect();
        assert_eq!(
            vectors,
            vec![
                field(2, &[("1", 1, 2, 1)]),
                field(2, &[("2", 1, 1, 1), ("1", 2, 1, 1)]),
                field(2, &[("2", 2, 2, 1)]),
            ]
        );
        let norms: Vec<_> = basis.iter().map(|b| b.squared_norm.clone()).collect();
        assert_eq!(norms, vec![BigInt::from(4), BigInt::from(2), BigInt::from(4)]);
        let g = gram(&vectors).unwrap();
        assert!(g.is_diagonal());
        assert_eq!((g.get(0, 0), g.get(1, 1), g.get(2, 2)), (Q::from_int(4), Q::from_int(2), Q::from_int(4)));
    }

    #[test]
    fn degree_zero_basis() {
        for n in 1..=4 {
            let basis = cyclic_gradient_basis(n, 0).unwrap();
            assert_eq!(basis.len(), n);
            for (j, b) in basis.iter().enumerate() {
                assert_eq!(b.vector, VectorField::basis(n, Word::empty(), j + 1).unwrap());
                assert_eq!(b.squared_norm, BigInt::from(1));
            }
        }
        assert_eq!(cyclic_gradient_basis(2, 2).unwrap().len(), 4);
    }

    #[test]
    fn projection_examples() {
        let v = field(2, &[("1", 2, 1, 1)]);
        assert_eq!(project_cyclic(&v), field(2, &[("1", 2, 1, 2), ("2", 1, 1, 2)]));
        let half_theta = theta_l_star(&FockVector::basis(2, w("12")).unwrap()).scale(&Q::from_ratio(-1, 2));
        assert_eq!(leray(&v), field(2, &[("1", 2, 1, 2), ("2", 1, -1, 2)]));
        assert_eq!(leray(&v), half_theta);

        let vac = VectorField::<Q>::basis(2, Word::empty(), 1).unwrap();
        assert_eq!(project_cyclic(&vac), vac);
        assert!(leray(&vac).is_zero());
    }

    #[test]
    fn projection_fixes_gradients() {
        for u in ["1", "12", "112", "1212", "2211", "121"] {
            let g: VectorField<Q> = cyclic_gradient_field(2, &w(u));
            assert_eq!(project_cyclic(&g), g);
            assert!(leray(&g).is_zero());
            assert_eq!(project_cyclic_by_expansion(&g).unwrap(), g);
        }
    }

    #[test]
    fn gradient_independent_of_orbit_member() {
        for u in ["112", "1212", "1223"] {
            let orbit = w(u).orbit().unwrap();
            let reference: VectorField<Q> = cyclic_gradient_field(3, orbit.representative());
            for m in orbit.members() {
                assert_eq!(cyclic_gradient_field::<Q>(3, m), reference);
            }
        }
    }

    #[test]
    fn mixed_degree_projection_matches_expansion() {
        let v = field(2, &[("", 1, 3, 1), ("1", 2, 1, 1), ("12", 1, -2, 1), ("221", 2, 5, 3)]);
        assert_eq!(project_cyclic(&v), project_cyclic_by_expansion(&v).unwrap());
    }

    #[test]
    fn normalized_vectors_have_unit_norm() {
        for b in cyclic_gradient_basis(2, 3).unwrap() {
            let norm2: f64 = b.normalized().iter().map(|(_, _, x)| x * x).sum();
            assert!((norm2 - 1.0).abs() < 1e-12);
        }
    }
}
