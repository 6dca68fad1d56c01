use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;

use fock_leray::bases::{divfree_basis, divfree_preimage_basis};
use fock_leray::fock::{apply_generator, cyclic_shift, inner, theta_l, theta_l_star, FockVector, Generator, VectorField};
use fock_leray::linalg::{
    bareiss_rank, coordinate_matrix, densify, gauss_jordan_rank, gram, integer_rows, sparse_rank, Matrix, Rational,
    Scalar,
};
use fock_leray::ncpoly::{
    cyclic_gradient, difference_quotient, trace, trace_tensor, BiPolynomial, Flavor, NcPolynomial,
};
use fock_leray::projections::{leray, project_cyclic, project_cyclic_by_expansion};
use fock_leray::words::{enumerate_orbit_reps, Word};

fn word(n: usize, min: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, min..=max).prop_map(Word::from_letters)
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(a, b)| Rational::from_ratio(a, b))
}

fn fock(n: usize, max_deg: usize) -> impl Strategy<Value = FockVector<Rational>> {
    prop::collection::vec((word(n, 0, max_deg), coeff()), 0..6)
        .prop_map(move |terms| FockVector::from_terms(n, terms).unwrap())
}

fn field(n: usize, max_deg: usize) -> impl Strategy<Value = VectorField<Rational>> {
    prop::collection::vec((word(n, 0, max_deg), 1..=n, coeff()), 0..6)
        .prop_map(move |terms| VectorField::from_terms(n, terms).unwrap())
}

fn homogeneous_fock(n: usize, k: usize) -> impl Strategy<Value = FockVector<Rational>> {
    prop::collection::vec((word(n, k, k), coeff()), 0..6)
        .prop_map(move |terms| FockVector::from_terms(n, terms).unwrap())
}

fn poly(n: usize, max_deg: usize) -> impl Strategy<Value = NcPolynomial<Rational>> {
    prop::collection::vec((word(n, 0, max_deg), -3i64..=3), 0..6).prop_map(move |terms| {
        NcPolynomial::from_terms(n, Flavor::Semicircular, terms.into_iter().map(|(w, c)| (w, Rational::from_int(c))))
            .unwrap()
    })
}

fn matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=20, 1usize..=20).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![3 => Just(Rational::zero()), 2 => coeff()];
        prop::collection::vec(prop::collection::vec(entry, c), r).prop_map(|rows| Matrix::from_dense(rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotations_compose(w in word(3, 1, 8), a in -20i64..20, b in -20i64..20) {
        prop_assert_eq!(w.rotate(a).unwrap().rotate(b).unwrap(), w.rotate(a + b).unwrap());
        prop_assert_eq!(w.rotate(w.len() as i64).unwrap(), w.clone());
        let distinct: BTreeSet<Word> = (0..w.len() as i64).map(|g| w.rotate(g).unwrap()).collect();
        prop_assert_eq!(distinct.len(), w.period().unwrap());
    }

    #[test]
    fn orbit_stabilizer(w in word(3, 1, 8)) {
        let orbit = w.orbit().unwrap();
        prop_assert_eq!(orbit.size() * orbit.stabilizer_order(), w.len());
        let min = orbit.members().iter().min().unwrap().clone();
        prop_assert_eq!(w.canonical_rotation().unwrap(), min.clone());
        prop_assert!(min.is_canonical());
    }

    #[test]
    fn rank_algorithms_agree(m in matrix()) {
        let rows = integer_rows(&m);
        let bareiss = bareiss_rank(&densify(&rows, m.cols()));
        prop_assert_eq!(bareiss, gauss_jordan_rank(&m));
        prop_assert_eq!(bareiss, sparse_rank(rows));
        prop_assert_eq!(bareiss, m.rank());
    }

    #[test]
    fn nullspace_multiplies_to_zero(m in matrix()) {
        let kernel = m.nullspace().unwrap();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for x in &kernel {
            prop_assert!(m.mul_vec(x).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn gram_rank_matches_coordinates(vs in prop::collection::vec(field(2, 3), 0..8)) {
        let g = gram(&vs).unwrap();
        prop_assert_eq!(g.rank(), coordinate_matrix(&vs).0.rank());
    }

    #[test]
    fn theta_adjointness(xi in fock(3, 6), v in field(3, 5)) {
        prop_assert_eq!(theta_l_star(&xi).inner_with(&v), inner(&xi, &theta_l(&v)).unwrap());
    }

    #[test]
    fn creation_adjointness(xi in fock(3, 5), eta in fock(3, 5), j in 1usize..=3) {
        for (create, annihilate) in [
            (Generator::LeftCreate, Generator::LeftAnnihilate),
            (Generator::RightCreate, Generator::RightAnnihilate),
        ] {
            let lhs = inner(&apply_generator(create, j, &xi).unwrap(), &eta).unwrap();
            let rhs = inner(&xi, &apply_generator(annihilate, j, &eta).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cyclic_shift_has_order_k(k in 1usize..=6, seed in homogeneous_fock(3, 6)) {
        let xi = seed.component(6).map_words(|w| Word::from_letters(w.letters()[..k].to_vec()));
        let mut out = xi.clone();
        for _ in 0..k {
            out = cyclic_shift(&out);
        }
        prop_assert_eq!(out, xi);
    }

    #[test]
    fn semicircular_parity(dirs in prop::collection::vec(1usize..=3, 0..8)) {
        let mut xi = FockVector::<Rational>::vacuum(3);
        for &j in &dirs {
            xi = apply_generator(Generator::Semicircular, j, &xi).unwrap();
        }
        let d = dirs.len();
        prop_assert!(xi.degrees().iter().all(|&g| g <= d && (d - g) % 2 == 0));
    }

    #[test]
    fn gradient_rotation_invariance(u in word(3, 1, 6)) {
        let p = NcPolynomial::<Rational>::monomial(3, Flavor::LeftCreation, u.clone()).unwrap();
        let q = NcPolynomial::<Rational>::monomial(3, Flavor::LeftCreation, u.rotate(1).unwrap()).unwrap();
        prop_assert_eq!(cyclic_gradient(&p), cyclic_gradient(&q));
    }

    #[test]
    fn leibniz_rule(p in poly(2, 4), q in poly(2, 4), i in 1usize..=2) {
        let one = NcPolynomial::one(2, Flavor::Semicircular);
        let lhs = difference_quotient(i, &p.multiply(&q).unwrap()).unwrap();
        let left = difference_quotient(i, &p).unwrap().multiply(&BiPolynomial::tensor(&one, &q));
        let right = BiPolynomial::tensor(&p, &one).multiply(&difference_quotient(i, &q).unwrap());
        prop_assert_eq!(lhs, left.add(&right));
    }

    #[test]
    fn stein_identity(p in poly(2, 6), i in 1usize..=2) {
        let x = NcPolynomial::generator(2, Flavor::Semicircular, i).unwrap();
        prop_assert_eq!(trace(&x.multiply(&p).unwrap()), trace_tensor(&difference_quotient(i, &p).unwrap()));
    }

    #[test]
    fn projections_on_mixed_degrees(v in field(3, 4), u in field(3, 4)) {
        let p = project_cyclic(&v);
        let l = leray(&v);
        prop_assert_eq!(&p, &project_cyclic_by_expansion(&v).unwrap());
        prop_assert_eq!(project_cyclic(&p), p.clone());
        prop_assert_eq!(leray(&l), l.clone());
        prop_assert!(project_cyclic(&l).is_zero());
        prop_assert!(leray(&p).is_zero());
        prop_assert_eq!(p.inner_with(&u), v.inner_with(&project_cyclic(&u)));
        prop_assert_eq!(l.inner_with(&u), v.inner_with(&leray(&u)));
    }

    #[test]
    fn leray_fixes_divergence_free(k in 0usize..=4, seed in homogeneous_fock(3, 5)) {
        let xi = seed.map_words(|w| Word::from_letters(w.letters()[..k + 1].to_vec()));
        let image = theta_l_star(&xi);
        prop_assert_eq!(leray(&image), image);
    }
}

trait InnerWith {
    fn inner_with(&self, other: &Self) -> Rational;
}

impl InnerWith for VectorField<Rational> {
    fn inner_with(&self, other: &Self) -> Rational {
        use fock_leray::linalg::InnerProduct;
        self.inner(other).unwrap()
    }
}

#[test]
fn divfree_images_match_preimages() {
    for n in 1..=3 {
        for k in 0..=4 {
            let pre = divfree_preimage_basis(n, k).unwrap();
            let fields = divfree_basis(n, k).unwrap();
            assert_eq!(pre.len(), fields.len());
            for (p, f) in pre.iter().zip(&fields) {
                assert_eq!(&theta_l_star(p), f);
                assert_eq!(&leray(f), f);
            }
        }
    }
}

#[test]
fn necklace_enumeration_is_increasing_and_canonical() {
    for n in 1..=3 {
        for k in 1..=7 {
            let reps: Vec<Word> = enumerate_orbit_reps(n, k).unwrap().collect();
            assert!(reps.windows(2).all(|p| p[0].letters() < p[1].letters()));
            assert!(reps.iter().all(|w| w.canonical_rotation().unwrap() == *w));
        }
    }
}
