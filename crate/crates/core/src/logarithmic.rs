//! Logarithmic one-forms `ω = Σ λ_i F̂_i dF_i` and their identities.
//!
//! Here `F = ∏ F_j`, `F̂_A = ∏_{j∉A} F_j`, `F̂_i = F̂_{{i}}` and
//! `F̂_{ij} = F̂_{{i,j}}`. Indices are 0-based throughout the API.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::Form;
use crate::poly::{product, random_poly_with, Polynomial};

/// Resampling budget when drawing generic residues.
pub const MAX_GENERIC_RETRIES: usize = 64;

/// A partition `d = d_1 + ... + d_m` with `d_1 ≥ ... ≥ d_m ≥ 1` and `m ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DegreeVector(Vec<u32>);

impl DegreeVector {
    /// Accepts only nonincreasing parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidDegrees(format!("need at least two parts, got {parts:?}")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidDegrees(format!("parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDegrees(format!("parts must be nonincreasing: {parts:?}")));
        }
        Ok(Self(parts))
    }

    /// Sorts the parts into nonincreasing order first.
    pub fn normalized(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `d̂_i = d - d_i`.
    pub fn hat(&self, i: usize) -> u32 {
        self.total() - self.0[i]
    }
}

impl TryFrom<Vec<u32>> for DegreeVector {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DegreeVector> for Vec<u32> {
    fn from(d: DegreeVector) -> Self {
        d.0
    }
}

impl std::fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({};{})", self.m(), parts.join(","))
    }
}

/// A point `(λ, F_1, ..., F_m)` of the parameter space, plus metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogInstance<K: Field> {
    field: K,
    n: usize,
    degrees: DegreeVector,
    lambda: Vec<K::Elem>,
    polys: Vec<Polynomial<K>>,
    seed: Option<u64>,
}

impl<K: Field> LogInstance<K> {
    /// Validates shapes and degrees. The residues need not lie on the
    /// projectivity hyperplane; see [`LogInstance::is_projective`].
    pub fn new(
        field: K,
        n: usize,
        degrees: DegreeVector,
        lambda: Vec<K::Elem>,
        polys: Vec<Polynomial<K>>,
        seed: Option<u64>,
    ) -> Result<Self> {
        field.spec().validate(degrees.total())?;
        let m = degrees.m();
        if lambda.len() != m || polys.len() != m {
            return Err(Error::InvalidInstance(format!(
                "expected {m} residues and polynomials, got {} and {}",
                lambda.len(),
                polys.len()
            )));
        }
        for (i, (p, &d)) in polys.iter().zip(degrees.parts()).enumerate() {
            if p.field() != field {
                return Err(Error::FieldMismatch(field.spec().to_string(), p.field().spec().to_string()));
            }
            if p.n() != n {
                return Err(Error::AmbientMismatch(n, p.n()));
            }
            if p.degree() != d as i32 {
                return Err(Error::DegreeMismatch {
                    expected: d as i32,
                    found: p.degree(),
                });
            }
            if p.is_zero() {
                return Err(Error::InvalidInstance(format!("F_{} is zero", i + 1)));
            }
        }
        Ok(Self {
            field,
            n,
            degrees,
            lambda,
            polys,
            seed,
        })
    }

    /// Seeded random instance with residues on the hyperplane
    /// `Σ d_i λ_i = 0`, all nonzero and pairwise distinct.
    pub fn generate(field: K, n: usize, degrees: DegreeVector, seed: u64) -> Result<Self> {
        field.spec().validate(degrees.total())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let polys = degrees
            .parts()
            .iter()
            .map(|&d| random_poly_with(&mut rng, n, d, field))
            .collect::<Result<Vec<_>>>()?;
        for _ in 0..MAX_GENERIC_RETRIES {
            let coords: Vec<K::Elem> = (0..degrees.m() - 1).map(|_| field.random(&mut rng)).collect();
            let lambda = hyperplane_point(field, &degrees, &coords);
            let inst = Self::new(field, n, degrees.clone(), lambda, polys.clone(), Some(seed))?;
            if inst.is_generic() {
                return Ok(inst);
            }
        }
        Err(Error::RetryExhausted(MAX_GENERIC_RETRIES))
    }

    pub fn field(&self) -> K {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &DegreeVector {
        &self.degrees
    }

    pub fn m(&self) -> usize {
        self.degrees.m()
    }

    pub fn lambda(&self) -> &[K::Elem] {
        &self.lambda
    }

    pub fn polys(&self) -> &[Polynomial<K>] {
        &self.polys
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `Σ d_i λ_i`.
    pub fn residue_sum(&self) -> K::Elem {
        weighted_sum(self.field, &self.degrees, &self.lambda)
    }

    pub fn is_projective(&self) -> bool {
        self.field.is_zero(&self.residue_sum())
    }

    pub fn lambdas_nonzero(&self) -> bool {
        self.lambda.iter().all(|l| !self.field.is_zero(l))
    }

    pub fn lambdas_distinct(&self) -> bool {
        (0..self.m()).all(|i| (i + 1..self.m()).all(|j| self.lambda[i] != self.lambda[j]))
    }

    /// The genericity flags the theorems rely on: all `λ_i ≠ 0` and
    /// `λ_i ≠ λ_j` for `i ≠ j`.
    pub fn is_generic(&self) -> bool {
        self.lambdas_nonzero() && self.lambdas_distinct()
    }

    /// `F = ∏ F_j`.
    pub fn total_product(&self) -> Polynomial<K> {
        self.hat_f(&[])
    }

    /// `F̂_A = ∏_{j∉A} F_j`.
    pub fn hat_f(&self, excluded: &[usize]) -> Polynomial<K> {
        product(
            self.field,
            self.n,
            self.polys
                .iter()
                .enumerate()
                .filter(|(j, _)| !excluded.contains(j))
                .map(|(_, p)| p),
        )
    }

    pub fn with_lambda(&self, lambda: Vec<K::Elem>) -> Result<Self> {
        Self::new(self.field, self.n, self.degrees.clone(), lambda, self.polys.clone(), self.seed)
    }

    pub fn with_polys(&self, polys: Vec<Polynomial<K>>) -> Result<Self> {
        Self::new(self.field, self.n, self.degrees.clone(), self.lambda.clone(), polys, self.seed)
    }

    /// Canonical representative under permutations within blocks of equal
    /// degree: each block of `(λ_i, F_i)` pairs is sorted by a fixed key.
    pub fn canonical_order(&self) -> Self {
        let mut pairs: Vec<(u32, K::Elem, Polynomial<K>)> = self
            .degrees
            .parts()
            .iter()
            .zip(&self.lambda)
            .zip(&self.polys)
            .map(|((&d, l), p)| (d, l.clone(), p.clone()))
            .collect();
        let field = self.field;
        pairs.sort_by(|a, b| {
            b.0.cmp(&a.0)
                .then_with(|| field.format(&a.1).cmp(&field.format(&b.1)))
                .then_with(|| poly_key(field, &a.2).cmp(&poly_key(field, &b.2)))
        });
        Self {
            field,
            n: self.n,
            degrees: self.degrees.clone(),
            lambda: pairs.iter().map(|p| p.1.clone()).collect(),
            polys: pairs.into_iter().map(|p| p.2).collect(),
            seed: self.seed,
        }
    }

    /// Equality modulo the permutations of equal-degree slots.
    pub fn same_up_to_order(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical_order(), other.canonical_order());
        a.degrees == b.degrees && a.lambda == b.lambda && a.polys == b.polys
    }
}

fn poly_key<K: Field>(field: K, p: &Polynomial<K>) -> Vec<(Vec<u32>, String)> {
    p.terms()
        .map(|(m, c)| (m.exponents().to_vec(), field.format(c)))
        .collect()
}

/// `Σ d_i c_i` in the field.
pub fn weighted_sum<K: Field>(field: K, degrees: &DegreeVector, values: &[K::Elem]) -> K::Elem {
    degrees
        .parts()
        .iter()
        .zip(values)
        .fold(field.zero(), |acc, (&d, v)| {
            field.add(&acc, &field.mul(&field.from_i64(i64::from(d)), v))
        })
}

/// The point `Σ_{i<m} c_i (e_i - (d_i/d_m) e_m)` of the hyperplane
/// `Σ d_i λ_i = 0`, given its `m - 1` coordinates.
pub fn hyperplane_point<K: Field>(field: K, degrees: &DegreeVector, coords: &[K::Elem]) -> Vec<K::Elem> {
    let m = degrees.m();
    assert_eq!(coords.len(), m - 1);
    let parts = degrees.parts();
    let dm_inv = field
        .inv(&field.from_i64(i64::from(parts[m - 1])))
        .expect("d_m is invertible in the field");
    let mut lambda: Vec<K::Elem> = coords.to_vec();
    let mut last = field.zero();
    for (i, c) in coords.iter().enumerate() {
        let ratio = field.mul(&field.from_i64(i64::from(parts[i])), &dm_inv);
        last = field.sub(&last, &field.mul(&ratio, c));
    }
    lambda.push(last);
    lambda
}

/// `Σ λ_i F̂_i dF_i` for arbitrary residues and polynomials.
pub fn log_form<K: Field>(field: K, n: usize, lambda: &[K::Elem], polys: &[Polynomial<K>]) -> Form<K> {
    assert_eq!(lambda.len(), polys.len());
    let degree: i32 = polys.iter().map(Polynomial::degree).sum();
    let mut acc = Form::zero(field, n, 1, degree);
    for (i, (l, fi)) in lambda.iter().zip(polys).enumerate() {
        if field.is_zero(l) {
            continue;
        }
        let hat = product(field, n, polys.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p));
        let term = Form::differential(fi).mul_poly(&hat).scale(l);
        acc = &acc + &term;
    }
    acc
}

/// `μ(λ, F) = Σ λ_i F̂_i dF_i`, homogeneous of degree `d`. The zero form is a
/// legal output and marks a base-locus point.
pub fn mu<K: Field>(inst: &LogInstance<K>) -> Form<K> {
    log_form(inst.field, inst.n, &inst.lambda, &inst.polys)
}

/// Frobenius integrability `w ∧ dw = 0`, decided exactly.
pub fn check_integrability<K: Field>(w: &Form<K>) -> Result<bool> {
    if w.q() != 1 {
        return Err(Error::GradeMismatch {
            expected: 1,
            found: w.q(),
        });
    }
    Ok(w.wedge(&w.exterior_derivative()).is_zero())
}

/// `⟨R, μ(inst)⟩`, checked against `(Σ d_i λ_i) F`.
pub fn radial_contraction_value<K: Field>(inst: &LogInstance<K>) -> Result<Polynomial<K>> {
    let value = mu(inst).contract_radial().as_function();
    let expected = inst.total_product().scale(&inst.residue_sum());
    if value != expected {
        return Err(Error::Internal(format!(
            "radial contraction {value} differs from (Σ d_i λ_i)·F = {expected}"
        )));
    }
    Ok(value)
}

/// `Σ_{i<j} (λ_j - λ_i) F̂_{ij} dF_i ∧ dF_j`.
pub fn derivative_closed_form<K: Field>(inst: &LogInstance<K>) -> Form<K> {
    let f = inst.field;
    let m = inst.m();
    let d = inst.degrees.total() as i32;
    let mut acc = Form::zero(f, inst.n, 2, d);
    let diffs: Vec<Form<K>> = inst.polys.iter().map(Form::differential).collect();
    for i in 0..m {
        for j in i + 1..m {
            let c = f.sub(&inst.lambda[j], &inst.lambda[i]);
            if f.is_zero(&c) {
                continue;
            }
            let term = diffs[i].wedge(&diffs[j]).mul_poly(&inst.hat_f(&[i, j])).scale(&c);
            acc = &acc + &term;
        }
    }
    acc
}

/// Outcome of the exact identity checks on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    /// `ω ∧ dω = 0`.
    pub integrable: bool,
    /// `⟨R, ω⟩ = (Σ d_i λ_i) F`.
    pub radial_contraction: bool,
    /// `dω = Σ_{i<j} (λ_j - λ_i) F̂_{ij} dF_i ∧ dF_j`.
    pub derivative_closed_form: bool,
    /// `F dω - dF ∧ ω = 0`.
    pub integrating_factor: bool,
    /// Per `i`: every coefficient of `dF_i ∧ ω` is divisible by `F_i`.
    pub leaves: Vec<bool>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.integrable
            && self.radial_contraction
            && self.derivative_closed_form
            && self.integrating_factor
            && self.leaves.iter().all(|&b| b)
    }

    /// `(name, passed)` for every check, in a fixed order.
    pub fn entries(&self) -> Vec<(String, bool)> {
        let mut out = vec![
            ("integrable".to_string(), self.integrable),
            ("radial_contraction".to_string(), self.radial_contraction),
            ("derivative_closed_form".to_string(), self.derivative_closed_form),
            ("integrating_factor".to_string(), self.integrating_factor),
        ];
        for (i, &ok) in self.leaves.iter().enumerate() {
            out.push((format!("leaf_F{}", i + 1), ok));
        }
        out
    }
}

/// Whether every coefficient of a form lies in the principal ideal `(g)`.
pub fn form_divisible_by<K: Field>(form: &Form<K>, g: &Polynomial<K>) -> bool {
    form.coeffs().all(|(_, p)| match p.div_rem(g) {
        Ok((_, r)) => r.is_zero(),
        Err(_) => false,
    })
}

/// Runs every identity check on `inst`.
pub fn identity_suite<K: Field>(inst: &LogInstance<K>) -> IdentityReport {
    let omega = mu(inst);
    let d_omega = omega.exterior_derivative();
    let ((integrable, radial), (closed, (factor, leaves))) = rayon::join(
        || {
            (
                omega.wedge(&d_omega).is_zero(),
                radial_contraction_value(inst).is_ok(),
            )
        },
        || {
            rayon::join(
                || derivative_closed_form(inst) == d_omega,
                || {
                    let f = inst.total_product();
                    let df = Form::differential(&f);
                    let factor = (&d_omega.mul_poly(&f) - &df.wedge(&omega)).is_zero();
                    let leaves = inst
                        .polys
                        .iter()
                        .map(|fi| form_divisible_by(&Form::differential(fi).wedge(&omega), fi))
                        .collect();
                    (factor, leaves)
                },
            )
        },
    );
    IdentityReport {
        integrable,
        radial_contraction: radial,
        derivative_closed_form: closed,
        integrating_factor: factor,
        leaves,
    }
}

/// Whether two forms span the same line (both zero counts as proportional).
pub fn proportional<K: Field>(a: &Form<K>, b: &Form<K>) -> bool {
    if a.q() != b.q() || a.degree() != b.degree() {
        return false;
    }
    let field = a.field();
    let first = |f: &Form<K>| {
        f.coeffs()
            .next()
            .and_then(|(s, p)| p.leading_term().map(|(m, c)| (*s, m.clone(), c.clone())))
    };
    match (first(a), first(b)) {
        (None, None) => true,
        (Some((s, m, ca)), Some(_)) => {
            let cb = b.coeff(s).coeff(&m);
            if field.is_zero(&cb) {
                return false;
            }
            let ratio = field.div(&cb, &ca).expect("nonzero");
            a.scale(&ratio) == *b
        }
        _ => false,
    }
}

impl PartialOrd for DegreeVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DegreeVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(v: i64) -> num_rational::BigRational {
        Rationals.from_i64(v)
    }

    fn x(n: usize, i: usize) -> Polynomial<Rationals> {
        Polynomial::var(Rationals, n, i)
    }

    fn inst(n: usize, degrees: &[u32], lambda: &[i64], polys: Vec<Polynomial<Rationals>>) -> LogInstance<Rationals> {
        LogInstance::new(
            Rationals,
            n,
            DegreeVector::new(degrees.to_vec()).unwrap(),
            lambda.iter().map(|&v| q(v)).collect(),
            polys,
            None,
        )
        .unwrap()
    }

    #[test]
    fn degree_vector_validation() {
        assert!(DegreeVector::new(vec![1]).is_err());
        assert!(DegreeVector::new(vec![1, 2]).is_err());
        assert!(DegreeVector::new(vec![2, 0]).is_err());
        let d = DegreeVector::normalized(vec![1, 2, 1]).unwrap();
        assert_eq!(d.parts(), &[2, 1, 1]);
        assert_eq!(d.total(), 4);
        assert_eq!(d.hat(0), 2);
        assert_eq!(d.to_string(), "(3;2,1,1)");
    }

    #[test]
    fn hat_products() {
        let i = inst(1, &[1, 1], &[1, -1], vec![x(1, 0), x(1, 1)]);
        assert_eq!(i.hat_f(&[]), &x(1, 0) * &x(1, 1));
        assert_eq!(i.hat_f(&[0, 1]), Polynomial::one(Rationals, 1));
        assert_eq!(i.hat_f(&[0]), x(1, 1));
    }

    #[test]
    fn mu_examples() {
        let i = inst(1, &[1, 1], &[1, -1], vec![x(1, 0), x(1, 1)]);
        let w = mu(&i);
        let expected = Form::one_form(Rationals, 1, 2, vec![x(1, 1), x(1, 0).neg()]).unwrap();
        assert_eq!(w, expected);

        let i = inst(1, &[1, 1], &[1, -1], vec![x(1, 0), x(1, 0)]);
        assert!(mu(&i).is_zero());

        let i = inst(2, &[1, 1, 1], &[1, 1, -2], vec![x(2, 0), x(2, 1), x(2, 2)]);
        let w = mu(&i);
        let expected = Form::one_form(
            Rationals,
            2,
            3,
            vec![&x(2, 1) * &x(2, 2), &x(2, 0) * &x(2, 2), (&x(2, 0) * &x(2, 1)).scale(&q(-2))],
        )
        .unwrap();
        assert_eq!(w, expected);
        assert!(w.is_projective().unwrap());
    }

    #[test]
    fn integrability_examples() {
        let w = Form::one_form(Rationals, 1, 2, vec![x(1, 1), x(1, 0).neg()]).unwrap();
        assert!(check_integrability(&w).unwrap());
        // x2 dx0 + x0 dx1 + x1 dx2: w ∧ dw = (x0 + x1 + x2) dx0∧dx1∧dx2
        let w = Form::one_form(Rationals, 2, 2, vec![x(2, 2), x(2, 0), x(2, 1)]).unwrap();
        assert!(!check_integrability(&w).unwrap());
        assert!(check_integrability(&Form::function(&x(2, 0))).is_err());
    }

    #[test]
    fn radial_values() {
        let i = inst(1, &[1, 1], &[1, 1], vec![x(1, 0), x(1, 1)]);
        let v = radial_contraction_value(&i).unwrap();
        assert_eq!(v, (&x(1, 0) * &x(1, 1)).scale(&q(2)));
        let f1 = &x(2, 0) * &x(2, 1);
        let i = inst(2, &[2, 1], &[1, -2], vec![f1, x(2, 2)]);
        assert!(radial_contraction_value(&i).unwrap().is_zero());
    }

    #[test]
    fn identity_suite_hand_example() {
        let i = inst(1, &[1, 1], &[1, -1], vec![x(1, 0), x(1, 1)]);
        let d_omega = mu(&i).exterior_derivative();
        let expected = Form::dx(Rationals, 1, 0)
            .wedge(&Form::dx(Rationals, 1, 1))
            .scale(&q(-2));
        assert_eq!(d_omega, expected);
        let report = identity_suite(&i);
        assert!(report.all_pass(), "{report:?}");
        // dF_1 ∧ ω = λ_2 F_1 dF_1 ∧ dF_2
        let wedge = Form::differential(&x(1, 0)).wedge(&mu(&i));
        let expected = Form::dx(Rationals, 1, 0)
            .wedge(&Form::dx(Rationals, 1, 1))
            .mul_poly(&x(1, 0))
            .scale(&q(-1));
        assert_eq!(wedge, expected);
    }

    #[test]
    fn identity_suite_random_prime() {
        let f = PrimeField::default();
        let dv = DegreeVector::new(vec![1, 1]).unwrap();
        for seed in 0..10 {
            let i = LogInstance::generate(f, 3, dv.clone(), seed).unwrap();
            assert!(identity_suite(&i).all_pass());
        }
    }

    #[test]
    fn generation_respects_hyperplane_and_flags() {
        let f = PrimeField::default();
        let dv = DegreeVector::new(vec![2, 1, 1]).unwrap();
        let i = LogInstance::generate(f, 2, dv.clone(), 17).unwrap();
        assert!(i.is_projective());
        assert!(i.is_generic());
        assert_eq!(i, LogInstance::generate(f, 2, dv.clone(), 17).unwrap());
        let r = LogInstance::generate(Rationals, 2, dv, 17).unwrap();
        assert!(r.is_projective());
    }

    #[test]
    fn small_fields() {
        // over F_3 with d = (1,1) the residues are (c, -c), generic for c != 0
        let f = PrimeField::new(3).unwrap();
        let dv = DegreeVector::new(vec![1, 1]).unwrap();
        let i = LogInstance::generate(f, 1, dv.clone(), 0).unwrap();
        assert!(i.is_generic());
        // the modulus must exceed the total degree
        let f = PrimeField::new(2).unwrap();
        assert!(matches!(LogInstance::generate(f, 1, dv, 0), Err(Error::InvalidField(_))));
    }

    #[test]
    fn instance_validation() {
        let dv = DegreeVector::new(vec![1, 1]).unwrap();
        let zero = Polynomial::zero(Rationals, 1, 1);
        assert!(LogInstance::new(Rationals, 1, dv.clone(), vec![q(1), q(-1)], vec![x(1, 0), zero], None).is_err());
        assert!(LogInstance::new(Rationals, 1, dv.clone(), vec![q(1)], vec![x(1, 0), x(1, 1)], None).is_err());
        let sq = &x(1, 0) * &x(1, 0);
        assert!(matches!(
            LogInstance::new(Rationals, 1, dv, vec![q(1), q(-1)], vec![x(1, 0), sq], None),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn order_symmetry() {
        let a = inst(2, &[1, 1], &[1, -1], vec![x(2, 0), x(2, 1)]);
        let b = inst(2, &[1, 1], &[-1, 1], vec![x(2, 1), x(2, 0)]);
        assert!(a.same_up_to_order(&b));
        assert_eq!(mu(&a), mu(&b));
        let c = inst(2, &[1, 1], &[1, -1], vec![x(2, 1), x(2, 0)]);
        assert!(!a.same_up_to_order(&c));
    }

    #[test]
    fn proportionality() {
        let w = Form::one_form(Rationals, 1, 2, vec![x(1, 1), x(1, 0).neg()]).unwrap();
        assert!(proportional(&w, &w.scale(&q(-3))));
        assert!(!proportional(&w, &Form::differential(&(&x(1, 0) * &x(1, 1)))));
        assert!(proportional(&Form::zero(Rationals, 1, 1, 2), &Form::zero(Rationals, 1, 1, 2)));
    }
}
