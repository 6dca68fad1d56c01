//! Executable checks, one per structural result, each producing a
//! serializable [`CheckReport`]. Exact-mode checks compare exact rationals, so
//! `passed` means bit-exact identity.

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bases::{
    difference_vector, dim_report, divfree_basis, divfree_closed_form, divfree_preimage_basis, f_vector,
    omega_images, omega_set, zeta_basis,
};
use crate::error::{Error, Result};
use crate::fock::{cyclic_shift, theta_l_star, FockVector, VectorField};
use crate::json::{field_to_doc, fock_to_doc, poly_to_doc};
use crate::linalg::{coordinate_matrix, gram, span_rank, InnerProduct, Mode, Rational, Scalar};
use crate::ncpoly::{
    chebyshev_in, cyclic_gradient, difference_quotient, evaluate_vacuum, gradient_field, trace, trace_tensor,
    Flavor, NcPolynomial,
};
use crate::projections::{cyclic_gradient_basis, leray, project_cyclic, project_cyclic_by_expansion};
use crate::words::{all_words, enumerate_orbit_reps, necklace_count, word_count, Word};

/// Relative residual bound for the floating-point roots-of-unity checks.
pub const ZETA_RESIDUAL_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_PROJECTION_TRIALS: usize = 100;
pub const DEFAULT_STEIN_TRIALS: usize = 200;
pub const DEFAULT_STEIN_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: Map<String, Value>,
    pub passed: bool,
    pub mode: Mode,
    pub details: Map<String, Value>,
    /// Seed of the randomized checks; 0 for deterministic ones.
    pub seed: u64,
}

impl CheckReport {
    fn new(name: &str, params: Value, mode: Mode) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Self { name: name.to_string(), params, passed: true, mode, details: Map::new(), seed: 0 }
    }

    fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(value).expect("serializable detail"));
    }

    /// Records a failed condition. Only the first witness is kept.
    fn fail(&mut self, reason: &str, witness: Value) {
        if self.passed {
            self.detail("failure", reason);
            self.details.insert("witness".into(), witness);
        }
        self.passed = false;
    }

    fn require(&mut self, ok: bool, reason: &str, witness: impl FnOnce() -> Value) {
        if !ok {
            self.fail(reason, witness());
        }
    }

    /// `name(k=v, ...)` for log lines.
    pub fn label(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, params.join(", "))
    }
}

fn field_json(v: &VectorField<Rational>) -> Value {
    serde_json::to_value(field_to_doc(v)).expect("serializable")
}

fn fock_json(v: &FockVector<Rational>) -> Value {
    serde_json::to_value(fock_to_doc(v)).expect("serializable")
}

fn words_json(words: &[Word]) -> Value {
    Value::from(words.iter().map(|w| Value::from(w.letters().to_vec())).collect::<Vec<_>>())
}

fn as_usize(v: u128) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Overflow("dimension"))
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn nonzero_coefficient(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| rng.gen_range(1..=n)).collect::<Vec<_>>())
}

/// Homogeneous degree-`k` field with up to eight integer terms in `[-3, 3]`.
pub fn random_field(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VectorField<Rational> {
    let slots = n.saturating_pow(k as u32 + 1);
    let count = rng.gen_range(1..=slots.min(8));
    let mut v = VectorField::zero(n);
    for _ in 0..count {
        let w = random_word(rng, n, k);
        let dir = rng.gen_range(1..=n);
        v.add_term(w, dir, Rational::from_int(nonzero_coefficient(rng)));
    }
    v
}

/// Polynomial with up to eight monomials of degree at most `degree_cap` and
/// integer coefficients in `[-3, 3]`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, n: usize, degree_cap: usize, flavor: Flavor) -> NcPolynomial<Rational> {
    let count = rng.gen_range(1..=8);
    let terms: Vec<(Word, Rational)> = (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=degree_cap);
            (random_word(rng, n, len), Rational::from_int(nonzero_coefficient(rng)))
        })
        .collect();
    NcPolynomial::from_terms(n, flavor, terms).expect("letters drawn from [1, n]")
}

/// Rank of `{(θ^l)^* (I - R) e_w : w ∈ [n]^{k+1}}` against `n^{k+1} - |[n]^{k+1}/Z_{k+1}|`.
pub fn check_dimension(n: usize, k: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("dimension", json!({"n": n, "k": k}), Mode::Exact);
    let report = dim_report(n, k)?;
    let images: Vec<VectorField<Rational>> =
        all_words(n, k + 1).map(|w| f_vector(n, &w)).collect::<Result<_>>()?;
    let rank = span_rank(&images);
    r.detail("rank", rank);
    r.detail("expected", report.dim_divfree);
    r.detail("ambient", report.ambient);
    r.detail("necklaces", report.necklaces);
    r.require(rank as u128 == report.dim_divfree, "rank differs from dimension formula", || {
        json!({"rank": rank, "formula": report.dim_divfree})
    });
    Ok(r)
}

/// Burnside count against brute-force orbit counting and the FKM enumeration.
pub fn check_burnside(n: usize, length: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("burnside", json!({"n": n, "length": length}), Mode::Exact);
    let formula = necklace_count(n, length)?;
    word_count(n, length)?;
    let orbits: BTreeSet<Word> =
        all_words(n, length).map(|w| w.canonical_rotation()).collect::<Result<_>>()?;
    let reps: Vec<Word> = enumerate_orbit_reps(n, length)?.collect();
    let naive: Vec<Word> = orbits.iter().cloned().collect();
    r.detail("formula", formula);
    r.detail("brute_force", orbits.len());
    r.detail("enumerated", reps.len());
    r.require(formula == orbits.len() as u128, "Burnside count differs from brute force", || {
        json!({"formula": formula, "brute_force": orbits.len()})
    });
    r.require(reps == naive, "FKM enumeration differs from canonical-rotation filter", || {
        json!({"fkm": words_json(&reps), "naive": words_json(&naive)})
    });
    Ok(r)
}

/// The gradient basis is exactly orthogonal with squared norms `m^2 p`, has one
/// element per necklace, and agrees with the polynomial route
/// `δ^l(l_u)[1 ⊕ ... ⊕ 1]` for every member of every orbit.
pub fn check_orthogonal_basis(n: usize, k: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("orthogonal_basis", json!({"n": n, "k": k}), Mode::Exact);
    let basis = cyclic_gradient_basis(n, k)?;
    let expected = necklace_count(n, k + 1)?;
    r.detail("count", basis.len());
    r.detail("necklaces", expected);
    r.require(basis.len() as u128 == expected, "basis size differs from necklace count", || {
        json!({"count": basis.len(), "necklaces": expected})
    });
    let vectors: Vec<VectorField<Rational>> = basis.iter().map(|b| b.vector.clone()).collect();
    let g = gram(&vectors)?;
    r.require(g.is_diagonal(), "Gram matrix has an off-diagonal entry", || {
        let (i, j) = (0..g.rows())
            .flat_map(|i| g.row(i).iter().map(move |(j, _)| (i, *j)))
            .find(|(i, j)| i != j)
            .expect("off-diagonal entry");
        json!({"left": field_json(&vectors[i]), "right": field_json(&vectors[j])})
    });
    for (i, b) in basis.iter().enumerate() {
        let m = b.orbit.stabilizer_order();
        let p = b.orbit.size();
        let norm = Rational::from_integer(b.squared_norm.clone());
        r.require(
            g.get(i, i) == norm && norm == Rational::from_int((m * m * p) as i64),
            "diagonal entry differs from m^2 p",
            || json!({"representative": b.orbit.representative().letters(), "gram": g.get(i, i).to_string(), "m": m, "p": p}),
        );
        for member in b.orbit.members() {
            let mono = NcPolynomial::monomial(n, Flavor::LeftCreation, member.clone())?;
            let via_poly = gradient_field(&mono);
            r.require(via_poly == b.vector, "gradient depends on orbit member", || {
                json!({"member": member.letters(), "field": field_json(&via_poly)})
            });
        }
    }
    Ok(r)
}

/// Closed-form projection against the orthogonal-basis expansion on seeded
/// random fields, with idempotence, self-adjointness and mutual annihilation
/// of both projections.
pub fn check_projection_formula(n: usize, k: usize, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut r = CheckReport::new("projection_formula", json!({"n": n, "k": k, "trials": trials}), Mode::Exact);
    r.seed = seed;
    let mut rng = rng_for(seed, ((n as u64) << 32) | k as u64);
    for trial in 0..trials {
        let v = random_field(&mut rng, n, k);
        let u = random_field(&mut rng, n, k);
        let p = project_cyclic(&v);
        let l = leray(&v);
        let witness = || json!({"trial": trial, "field": field_json(&v), "other": field_json(&u)});
        r.require(p == project_cyclic_by_expansion(&v)?, "closed form differs from basis expansion", witness);
        r.require(project_cyclic(&p) == p, "cyclic projection is not idempotent", witness);
        r.require(leray(&l) == l, "Leray projection is not idempotent", witness);
        r.require(leray(&p).is_zero(), "Leray does not annihilate the cyclic part", witness);
        r.require(project_cyclic(&l).is_zero(), "cyclic projection does not annihilate the Leray part", witness);
        r.require(
            p.inner(&u)? == v.inner(&project_cyclic(&u))?,
            "cyclic projection is not self-adjoint",
            witness,
        );
        r.require(l.inner(&u)? == v.inner(&leray(&u))?, "Leray projection is not self-adjoint", witness);
        r.require(p.inner(&l)?.is_zero(), "projections are not orthogonal", witness);
        if !r.passed {
            break;
        }
    }
    Ok(r)
}

fn operator_nullspace(
    inputs: &[Word],
    n: usize,
    apply: impl Fn(&FockVector<Rational>) -> Vec<((Word, usize), Rational)>,
) -> Result<Vec<FockVector<Rational>>> {
    // Rows of the coordinate matrix are the images of the inputs; the operator
    // matrix is its transpose.
    let images: Vec<VectorField<Rational>> = inputs
        .iter()
        .map(|w| {
            let e = FockVector::basis(n, w.clone())?;
            VectorField::from_terms(n.max(1), apply(&e).into_iter().map(|((w, d), c)| (w, d, c)))
        })
        .collect::<Result<_>>()?;
    let (rows, _) = coordinate_matrix(&images);
    let kernel = rows.transpose().nullspace()?;
    kernel
        .into_iter()
        .map(|x| FockVector::from_terms(n, inputs.iter().cloned().zip(x)))
        .collect()
}

/// `ker (θ^l)^* = ker (I - R)` on the degree-`k` tensors, both of dimension
/// `|[n]^k / Z_k|`.
pub fn check_kernel_lemma(n: usize, k: usize) -> Result<CheckReport> {
    if k == 0 {
        return Err(Error::Domain("kernel comparison needs k >= 1".into()));
    }
    let mut r = CheckReport::new("kernel_lemma", json!({"n": n, "k": k}), Mode::Exact);
    let inputs: Vec<Word> = all_words(n, k).collect();
    let theta_kernel = operator_nullspace(&inputs, n, |e| {
        theta_l_star(e).terms().iter().map(|(key, c)| (key.clone(), c.clone())).collect()
    })?;
    // (I - R) lands in tensors; encode them with a dummy direction.
    let shift_kernel = operator_nullspace(&inputs, n, |e| {
        (e - &cyclic_shift(e)).terms().iter().map(|(w, c)| ((w.clone(), 1), c.clone())).collect()
    })?;
    let expected = necklace_count(n, k)?;
    r.detail("theta_kernel_dim", theta_kernel.len());
    r.detail("shift_kernel_dim", shift_kernel.len());
    r.detail("necklaces", expected);
    r.require(theta_kernel.len() as u128 == expected, "theta kernel dimension differs from necklace count", || {
        json!({"dim": theta_kernel.len()})
    });
    r.require(shift_kernel.len() as u128 == expected, "I - R kernel dimension differs from necklace count", || {
        json!({"dim": shift_kernel.len()})
    });
    for x in &theta_kernel {
        r.require(cyclic_shift(x) == *x, "theta kernel vector is not R-invariant", || fock_json(x));
    }
    for x in &shift_kernel {
        r.require(theta_l_star(x).is_zero(), "R-invariant vector not killed by theta adjoint", || fock_json(x));
    }
    let mut both = theta_kernel.clone();
    both.extend(shift_kernel.iter().cloned());
    let union_rank = span_rank(&both);
    r.detail("union_rank", union_rank);
    r.require(
        union_rank == theta_kernel.len() && union_rank == shift_kernel.len(),
        "kernels are not mutually contained",
        || json!({"union_rank": union_rank}),
    );
    Ok(r)
}

/// Spans of `δ(x_w)[1 ⊕ ... ⊕ 1]` over monomials of degree `1..=d`, evaluated in
/// the semicircular and the left-creation flavor, contain each other.
pub fn check_range_equality(n: usize, d: usize) -> Result<CheckReport> {
    if d == 0 {
        return Err(Error::Domain("degree filtration d must be at least 1".into()));
    }
    let mut r = CheckReport::new("range_equality", json!({"n": n, "d": d}), Mode::Exact);
    let mut semicircular: Vec<VectorField<Rational>> = Vec::new();
    let mut creation = Vec::new();
    for len in 1..=d {
        for w in all_words(n, len) {
            let mono = NcPolynomial::<Rational>::monomial(n, Flavor::Semicircular, w)?;
            semicircular.push(gradient_field(&mono));
            creation.push(gradient_field(&mono.with_flavor(Flavor::LeftCreation)));
        }
    }
    let rank_s = span_rank(&semicircular);
    let rank_l = span_rank(&creation);
    let mut both = semicircular.clone();
    both.extend(creation.iter().cloned());
    let rank_union = span_rank(&both);
    let graded: u128 = (1..=d).map(|j| necklace_count(n, j)).sum::<Result<u128>>()?;
    r.detail("rank_semicircular", rank_s);
    r.detail("rank_left_creation", rank_l);
    r.detail("rank_union", rank_union);
    r.detail("necklace_sum", graded);
    r.require(rank_s == rank_union && rank_l == rank_union, "filtered gradient spans differ", || {
        json!({"rank_semicircular": rank_s, "rank_left_creation": rank_l, "rank_union": rank_union})
    });
    Ok(r)
}

/// Cyclic-gradient and divergence-free bases are exactly orthogonal and
/// together span `[(C^n)^{⊗k}]^n`.
pub fn check_direct_sum(n: usize, k: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("direct_sum", json!({"n": n, "k": k}), Mode::Exact);
    let gradients: Vec<VectorField<Rational>> =
        cyclic_gradient_basis(n, k)?.into_iter().map(|b| b.vector).collect();
    let divfree = divfree_basis(n, k)?;
    for g in &gradients {
        for x in &divfree {
            let ip = g.inner(x)?;
            r.require(ip.is_zero(), "gradient and divergence-free vectors are not orthogonal", || {
                json!({"gradient": field_json(g), "divfree": field_json(x)})
            });
        }
    }
    let rank_g = span_rank(&gradients);
    let rank_d = span_rank(&divfree);
    let mut all = gradients.clone();
    all.extend(divfree.iter().cloned());
    let rank_all = span_rank(&all);
    let ambient = word_count(n, k + 1)?;
    r.detail("rank_cyclic", rank_g);
    r.detail("rank_divfree", rank_d);
    r.detail("rank_total", rank_all);
    r.detail("ambient", ambient);
    r.require(
        (rank_g + rank_d) as u128 == ambient && rank_all as u128 == ambient,
        "ranks do not add up to the ambient dimension",
        || json!({"rank_cyclic": rank_g, "rank_divfree": rank_d, "rank_total": rank_all}),
    );
    Ok(r)
}

/// The orbit-based preimage basis and its image are independent with the
/// right cardinality, match the three-term closed form, and are
/// divergence-free.
pub fn check_divfree_basis(n: usize, k: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("divfree_basis", json!({"n": n, "k": k}), Mode::Exact);
    let dim = as_usize(dim_report(n, k)?.dim_divfree)?;
    let preimages = divfree_preimage_basis(n, k)?;
    let fields = divfree_basis(n, k)?;
    let rank_pre = span_rank(&preimages);
    let rank_fields = span_rank(&fields);
    r.detail("dim", dim);
    r.detail("count", fields.len());
    r.detail("rank_preimage", rank_pre);
    r.detail("rank", rank_fields);
    r.require(
        preimages.len() == dim && fields.len() == dim && rank_pre == dim && rank_fields == dim,
        "basis is not independent or has the wrong size",
        || json!({"count": fields.len(), "rank": rank_fields, "rank_preimage": rank_pre, "dim": dim}),
    );
    for (pre, field) in preimages.iter().zip(&fields) {
        // Preimages are e_v - e_{Rv}; recover v from the positive term.
        let v = pre.terms().iter().find(|(_, c)| c.is_positive_one()).map(|(w, _)| w.clone());
        let Some(v) = v else {
            r.fail("preimage is not of the form e_v - e_Rv", fock_json(pre));
            continue;
        };
        r.require(*pre == difference_vector(n, &v)?, "preimage is not (I - R) e_v", || fock_json(pre));
        let closed = divfree_closed_form(n, &v)?;
        r.require(closed == *field, "image differs from three-term closed form", || {
            json!({"v": v.letters(), "image": field_json(field), "closed_form": field_json(&closed)})
        });
        r.require(project_cyclic(field).is_zero(), "basis element has a cyclic-gradient part", || field_json(field));
    }
    Ok(r)
}

trait PositiveOne {
    fn is_positive_one(&self) -> bool;
}

impl PositiveOne for Rational {
    fn is_positive_one(&self) -> bool {
        num_traits::One::is_one(self)
    }
}

/// `|Ω_{k+1}| = (n^{k+1} - n)/2`, and once `k >= 2` (with `n >= 2`) the span of
/// its images falls short of `dim X^(n)_k`.
pub fn check_omega_deficiency(n: usize, k: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("omega_deficiency", json!({"n": n, "k": k}), Mode::Exact);
    let omega = omega_set(n, k)?;
    let images = omega_images(n, k)?;
    let rank = span_rank(&images);
    let dim = dim_report(n, k)?.dim_divfree;
    let expected_card = (word_count(n, k + 1)? - n as u128) / 2;
    r.detail("cardinality", omega.len());
    r.detail("span_rank", rank);
    r.detail("dim_divfree", dim);
    r.detail("deficiency", dim - rank as u128);
    r.require(omega.len() as u128 == expected_card, "|Omega| differs from (n^{k+1} - n)/2", || {
        json!({"cardinality": omega.len(), "expected": expected_card})
    });
    r.require(rank <= omega.len(), "span rank exceeds the set size", || json!({"rank": rank}));
    if n >= 2 && k >= 2 {
        r.require((rank as u128) < dim, "Omega images unexpectedly span X_k", || words_json(&omega));
    }
    Ok(r)
}

/// Roots-of-unity basis in double precision: cardinality and numerical rank
/// equal `dim X^(n)_k`, and the Leray projection fixes every element.
pub fn check_zeta_basis(n: usize, k: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("zeta_basis", json!({"n": n, "k": k}), Mode::Float);
    let dim = as_usize(dim_report(n, k)?.dim_divfree)?;
    let basis = zeta_basis(n, k, Mode::Float)?;
    let vectors: Vec<VectorField<Complex64>> = basis.iter().map(|z| z.vector.clone()).collect();
    let rank = span_rank(&vectors);
    let mut worst = 0.0f64;
    for z in &basis {
        let residual = (&leray(&z.vector) - &z.vector).squared_norm().re.sqrt();
        let norm = z.vector.squared_norm().re.sqrt();
        let rel = if norm > 0.0 { residual / norm } else { f64::INFINITY };
        worst = worst.max(rel);
        r.require(residual <= ZETA_RESIDUAL_TOLERANCE * norm, "Leray residual above tolerance", || {
            json!({"representative": z.representative.letters(), "root_index": z.root_index, "relative_residual": rel})
        });
    }
    r.detail("count", basis.len());
    r.detail("numerical_rank", rank);
    r.detail("dim", dim);
    r.detail("max_relative_residual", worst);
    r.detail("tolerance", ZETA_RESIDUAL_TOLERANCE);
    r.require(basis.len() == dim && rank == dim, "cardinality or rank differs from dim X_k", || {
        json!({"count": basis.len(), "rank": rank, "dim": dim})
    });
    Ok(r)
}

/// `(δ_2 f, -δ_1 f)` with `f = (s_1^2 + s_2^2)^m`, evaluated on the vacuum, has
/// zero projection onto the cyclic gradients.
pub fn check_radial(m: usize) -> Result<CheckReport> {
    if m == 0 {
        return Err(Error::Domain("radial power m must be at least 1".into()));
    }
    let mut r = CheckReport::new("radial", json!({"m": m}), Mode::Exact);
    let x = |i| NcPolynomial::<Rational>::generator(2, Flavor::Semicircular, i);
    let base = x(1)?.pow(2).add(&x(2)?.pow(2))?;
    let f = base.pow(m);
    let grad = cyclic_gradient(&f);
    let comps = [evaluate_vacuum(&grad[1]), evaluate_vacuum(&grad[0].scale(&-Rational::from_int(1)))];
    let v = VectorField::from_components(&comps)?;
    let projection = project_cyclic(&v);
    r.detail("degrees", v.degrees());
    r.detail("terms", v.len());
    r.require(!v.is_zero(), "radial field vanished", || json!(null));
    r.require(projection.is_zero(), "radial field has a cyclic-gradient component", || {
        json!({"field": field_json(&v), "projection": field_json(&projection)})
    });
    if m == 1 {
        let literal = VectorField::from_terms(
            2,
            [
                (Word::from_letters(vec![2]), 1, Rational::from_int(2)),
                (Word::from_letters(vec![1]), 2, Rational::from_int(-2)),
            ],
        )?;
        r.detail("matches_literal", v == literal);
        r.require(v == literal, "m = 1 field differs from 2 e_2 ⊗ f_1 - 2 e_1 ⊗ f_2", || field_json(&v));
    }
    Ok(r)
}

fn stein_case(r: &mut CheckReport, p: &NcPolynomial<Rational>, i: usize) -> Result<()> {
    let xi = NcPolynomial::generator(p.n(), Flavor::Semicircular, i)?;
    let lhs = trace(&xi.multiply(p)?);
    let rhs = trace_tensor(&difference_quotient(i, p)?);
    r.require(lhs == rhs, "Stein identity fails", || {
        json!({"i": i, "polynomial": serde_json::to_value(poly_to_doc(p)).expect("serializable"),
               "lhs": lhs.to_string(), "rhs": rhs.to_string()})
    });
    Ok(())
}

/// `τ[s_i P] = τ ⊗ τ[∂_i P]` exactly, for fixed small cases and `trials` seeded
/// random semicircular polynomials of degree at most `degree_cap`.
pub fn check_stein(n: usize, trials: usize, degree_cap: usize, seed: u64) -> Result<CheckReport> {
    if n == 0 {
        return Err(Error::Domain("alphabet size n must be at least 1".into()));
    }
    let mut r = CheckReport::new(
        "stein",
        json!({"n": n, "trials": trials, "degree_cap": degree_cap}),
        Mode::Exact,
    );
    r.seed = seed;
    if n >= 2 {
        for (word, i) in [("1", 1), ("211", 2), ("12", 1)] {
            let p = NcPolynomial::monomial(n, Flavor::Semicircular, Word::parse_digits(word)?)?;
            stein_case(&mut r, &p, i)?;
        }
    }
    let mut rng = rng_for(seed, 0x57e1);
    for _ in 0..trials {
        let p = random_polynomial(&mut rng, n, degree_cap, Flavor::Semicircular);
        for i in 1..=n {
            stein_case(&mut r, &p, i)?;
        }
    }
    Ok(r)
}

/// `U_{k_1}(s_{i_1}) ... U_{k_p}(s_{i_p}) 1 = e_{i_1^{k_1} ... i_p^{k_p}}` for every
/// word of length at most `max_degree`, split into maximal constant runs.
pub fn check_chebyshev(n: usize, max_degree: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new("chebyshev", json!({"n": n, "max_degree": max_degree}), Mode::Exact);
    let mut checked = 0usize;
    for len in 0..=max_degree {
        for w in all_words(n, len) {
            let mut product = NcPolynomial::one(n, Flavor::Semicircular);
            let letters = w.letters();
            let mut start = 0;
            while start < letters.len() {
                let letter = letters[start];
                let run = letters[start..].iter().take_while(|&&l| l == letter).count();
                product = product.multiply(&chebyshev_in(n, Flavor::Semicircular, letter, run)?)?;
                start += run;
            }
            let got = evaluate_vacuum(&product);
            let want = FockVector::basis(n, w.clone())?;
            r.require(got == want, "Chebyshev product does not map to the word vector", || {
                json!({"word": w.letters(), "got": fock_json(&got)})
            });
            checked += 1;
        }
    }
    r.detail("words_checked", checked);
    Ok(r)
}

/// A single parameterized check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Dimension { n: usize, k: usize },
    Burnside { n: usize, length: usize },
    OrthogonalBasis { n: usize, k: usize },
    ProjectionFormula { n: usize, k: usize, trials: usize, seed: u64 },
    KernelLemma { n: usize, k: usize },
    RangeEquality { n: usize, d: usize },
    DirectSum { n: usize, k: usize },
    DivfreeBasis { n: usize, k: usize },
    OmegaDeficiency { n: usize, k: usize },
    ZetaBasis { n: usize, k: usize },
    Radial { m: usize },
    Stein { n: usize, trials: usize, degree_cap: usize, seed: u64 },
    Chebyshev { n: usize, max_degree: usize },
}

/// Names accepted by [`Check::family`].
pub const CHECK_NAMES: &[&str] = &[
    "dimension",
    "burnside",
    "orthogonal-basis",
    "projection-formula",
    "kernel-lemma",
    "range-equality",
    "direct-sum",
    "divfree-basis",
    "omega-deficiency",
    "zeta-basis",
    "radial",
    "stein",
    "chebyshev",
];

impl Check {
    pub fn run(&self) -> Result<CheckReport> {
        match *self {
            Check::Dimension { n, k } => check_dimension(n, k),
            Check::Burnside { n, length } => check_burnside(n, length),
            Check::OrthogonalBasis { n, k } => check_orthogonal_basis(n, k),
            Check::ProjectionFormula { n, k, trials, seed } => check_projection_formula(n, k, trials, seed),
            Check::KernelLemma { n, k } => check_kernel_lemma(n, k),
            Check::RangeEquality { n, d } => check_range_equality(n, d),
            Check::DirectSum { n, k } => check_direct_sum(n, k),
            Check::DivfreeBasis { n, k } => check_divfree_basis(n, k),
            Check::OmegaDeficiency { n, k } => check_omega_deficiency(n, k),
            Check::ZetaBasis { n, k } => check_zeta_basis(n, k),
            Check::Radial { m } => check_radial(m),
            Check::Stein { n, trials, degree_cap, seed } => check_stein(n, trials, degree_cap, seed),
            Check::Chebyshev { n, max_degree } => check_chebyshev(n, max_degree),
        }
    }

    /// Every instance of the named check for alphabet `n` up to `max_degree`.
    pub fn family(name: &str, n: usize, max_degree: usize, seed: u64) -> Result<Vec<Check>> {
        let ks = 0..=max_degree;
        let checks = match name {
            "dimension" => ks.map(|k| Check::Dimension { n, k }).collect(),
            "burnside" => (1..=max_degree + 1).map(|length| Check::Burnside { n, length }).collect(),
            "orthogonal-basis" => ks.map(|k| Check::OrthogonalBasis { n, k }).collect(),
            "projection-formula" => ks
                .map(|k| Check::ProjectionFormula { n, k, trials: DEFAULT_PROJECTION_TRIALS, seed })
                .collect(),
            "kernel-lemma" => (1..=max_degree.max(1)).map(|k| Check::KernelLemma { n, k }).collect(),
            "range-equality" => (1..=max_degree.max(1)).map(|d| Check::RangeEquality { n, d }).collect(),
            "direct-sum" => ks.map(|k| Check::DirectSum { n, k }).collect(),
            "divfree-basis" => ks.map(|k| Check::DivfreeBasis { n, k }).collect(),
            "omega-deficiency" => ks.map(|k| Check::OmegaDeficiency { n, k }).collect(),
            "zeta-basis" => ks.map(|k| Check::ZetaBasis { n, k }).collect(),
            "radial" if n == 2 => (1..=3).map(|m| Check::Radial { m }).collect(),
            "radial" => Vec::new(),
            "stein" => vec![Check::Stein {
                n,
                trials: DEFAULT_STEIN_TRIALS,
                degree_cap: DEFAULT_STEIN_DEGREE,
                seed,
            }],
            "chebyshev" => vec![Check::Chebyshev { n, max_degree }],
            other => return Err(Error::Domain(format!("unknown check {other:?}; expected one of {CHECK_NAMES:?}"))),
        };
        Ok(checks)
    }

    /// The whole suite for alphabet `n` up to `max_degree`.
    pub fn suite(n: usize, max_degree: usize, seed: u64) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for name in CHECK_NAMES {
            out.extend(Check::family(name, n, max_degree, seed)?);
        }
        Ok(out)
    }
}

/// Runs checks in parallel on the current rayon pool, preserving input order.
pub fn run_checks(checks: &[Check]) -> Result<Vec<CheckReport>> {
    checks.par_iter().map(Check::run).collect()
}

/// Full suite for alphabet `n` up to `max_degree`.
pub fn verify_all(n: usize, max_degree: usize, seed: u64) -> Result<Vec<CheckReport>> {
    run_checks(&Check::suite(n, max_degree, seed)?)
}
