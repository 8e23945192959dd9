//! Tangent spaces and the derivative of the parametrization `μ`.
//!
//! Projective one-forms of degree `d` are coordinatized by an explicit basis
//! of the kernel of the radial contraction. The Zariski tangent space
//! `T(ω) = {α : ω∧dα + α∧dω = 0}` and the matrix of `dμ` are both expressed in
//! that basis, so `rank(dμ) = dim T(ω)` is a plain comparison of two exact
//! ranks.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::forms::{projective_oneform_count, Form, FormSpace, IndexSet};
use crate::linalg::Matrix;
use crate::logarithmic::{check_integrability, log_form, mu, weighted_sum, DegreeVector, LogInstance};
use crate::poly::{homogeneous_dim, MonomialBasis, Polynomial};

/// A basis of the projective one-forms of degree `d` on `P^n`.
#[derive(Debug, Clone)]
pub struct OneFormBasis<K: Field> {
    field: K,
    space: FormSpace,
    /// Ambient coordinates that parametrize the kernel.
    free: Vec<usize>,
    vectors: Vec<Form<K>>,
}

impl<K: Field> OneFormBasis<K> {
    /// Computes the basis as the exact nullspace of `α ↦ ⟨R, α⟩`.
    pub fn new(field: K, n: usize, d: u32) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::InvalidInstance(format!(
                "projective one-forms need n >= 1 and d >= 1 (got n={n}, d={d})"
            )));
        }
        let space = FormSpace::new(n, 1, d as i32);
        let target = MonomialBasis::new(n, d as i32);
        let block = space.monomials().len();
        let mut radial = Matrix::zeros(field, target.len(), space.dim());
        for i in 0..=n {
            for (k, m) in space.monomials().monomials().iter().enumerate() {
                let xm = m.mul(&crate::poly::Monomial::var(n + 1, i));
                let row = target.position(&xm).expect("degree-d monomial");
                radial.set(row, i * block + k, field.one());
            }
        }
        let ech = radial.echelon();
        let free = ech.free_columns();
        let vectors: Vec<Form<K>> = ech
            .nullspace()
            .iter()
            .map(|v| space.from_coords(field, v))
            .collect();
        let expected = projective_oneform_count(n, d);
        if vectors.len() != expected {
            return Err(Error::Internal(format!(
                "projective one-form basis has dimension {}, Euler sequence predicts {expected}",
                vectors.len()
            )));
        }
        Ok(Self {
            field,
            space,
            free,
            vectors,
        })
    }

    pub fn field(&self) -> K {
        self.field
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn degree(&self) -> u32 {
        self.space.degree() as u32
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Form<K>] {
        &self.vectors
    }

    pub fn ambient(&self) -> &FormSpace {
        &self.space
    }

    /// Coordinates of a projective form in this basis.
    ///
    /// Each basis vector has a unit entry at its own free coordinate and
    /// zeros at the others, so the coordinates are read off directly.
    pub fn coords(&self, form: &Form<K>) -> Result<Vec<K::Elem>> {
        if form.q() != 1 {
            return Err(Error::GradeMismatch {
                expected: 1,
                found: form.q(),
            });
        }
        if form.degree() != self.space.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.space.degree(),
                found: form.degree(),
            });
        }
        if !form.is_projective()? {
            return Err(Error::NotProjective);
        }
        let ambient = self.space.coords(form);
        Ok(self.free.iter().map(|&c| ambient[c].clone()).collect())
    }

    pub fn combine(&self, coords: &[K::Elem]) -> Form<K> {
        assert_eq!(coords.len(), self.dim());
        let f = self.field;
        let mut ambient = vec![f.zero(); self.space.dim()];
        for (v, c) in self.vectors.iter().zip(coords) {
            if f.is_zero(c) {
                continue;
            }
            for (a, b) in ambient.iter_mut().zip(self.space.coords(v)) {
                *a = f.add(a, &f.mul(&b, c));
            }
        }
        self.space.from_coords(f, &ambient)
    }

    pub fn label(&self, k: usize) -> String {
        format!("b{k}[{}]", self.space.label(self.free[k]))
    }
}

/// `ω∧dα + α∧dω`, whose vanishing defines the tangent space.
pub fn tangent_residual<K: Field>(omega: &Form<K>, d_omega: &Form<K>, alpha: &Form<K>) -> Form<K> {
    &omega.wedge(&alpha.exterior_derivative()) + &alpha.wedge(d_omega)
}

pub fn in_tangent_space<K: Field>(omega: &Form<K>, alpha: &Form<K>) -> bool {
    tangent_residual(omega, &omega.exterior_derivative(), alpha).is_zero()
}

/// A subspace of projective one-forms given in [`OneFormBasis`] coordinates.
#[derive(Debug, Clone)]
pub struct TangentSpace<K: Field> {
    pub coords: Vec<Vec<K::Elem>>,
    pub forms: Vec<Form<K>>,
}

impl<K: Field> TangentSpace<K> {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

fn check_tangent_base<K: Field>(basis: &OneFormBasis<K>, omega: &Form<K>) -> Result<()> {
    if omega.q() != 1 {
        return Err(Error::GradeMismatch {
            expected: 1,
            found: omega.q(),
        });
    }
    if omega.is_zero() {
        return Err(Error::ZeroForm);
    }
    if omega.degree() != basis.space.degree() || omega.n() != basis.n() {
        return Err(Error::DegreeMismatch {
            expected: basis.space.degree(),
            found: omega.degree(),
        });
    }
    if !omega.is_projective()? {
        return Err(Error::NotProjective);
    }
    if !check_integrability(omega)? {
        return Err(Error::NotIntegrable);
    }
    Ok(())
}

fn kernel_of_linear_condition<K: Field>(
    basis: &OneFormBasis<K>,
    target: &FormSpace,
    condition: impl Fn(&Form<K>) -> Form<K> + Sync,
) -> TangentSpace<K> {
    let columns: Vec<Vec<K::Elem>> = basis
        .vectors
        .par_iter()
        .map(|b| target.coords(&condition(b)))
        .collect();
    let matrix = Matrix::from_columns(basis.field, target.dim(), &columns);
    let coords = matrix.nullspace();
    let forms = coords.iter().map(|c| basis.combine(c)).collect();
    TangentSpace { coords, forms }
}

/// `T(ω)`: the projective `α` of degree `d` with `ω∧dα + α∧dω = 0`.
pub fn tangent_space<K: Field>(basis: &OneFormBasis<K>, omega: &Form<K>) -> Result<TangentSpace<K>> {
    check_tangent_base(basis, omega)?;
    let d_omega = omega.exterior_derivative();
    let target = FormSpace::new(basis.n(), 3, 2 * basis.space.degree());
    Ok(kernel_of_linear_condition(basis, &target, |a| {
        tangent_residual(omega, &d_omega, a)
    }))
}

/// The projective `α` of degree `d` with `dω ∧ dα = 0`, the derived form of
/// the tangent condition.
pub fn tangent_space_by_derivative<K: Field>(basis: &OneFormBasis<K>, omega: &Form<K>) -> Result<TangentSpace<K>> {
    check_tangent_base(basis, omega)?;
    let d_omega = omega.exterior_derivative();
    let target = FormSpace::new(basis.n(), 4, 2 * basis.space.degree());
    Ok(kernel_of_linear_condition(basis, &target, |a| {
        d_omega.wedge(&a.exterior_derivative())
    }))
}

/// A tangent vector `(λ', F')` to the parameter space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction<K: Field> {
    pub lambda: Vec<K::Elem>,
    pub polys: Vec<Polynomial<K>>,
}

impl<K: Field> Direction<K> {
    pub fn zero(inst: &LogInstance<K>) -> Self {
        let f = inst.field();
        Self {
            lambda: vec![f.zero(); inst.m()],
            polys: inst
                .degrees()
                .parts()
                .iter()
                .map(|&d| Polynomial::zero(f, inst.n(), d as i32))
                .collect(),
        }
    }
}

fn check_direction<K: Field>(inst: &LogInstance<K>, dir: &Direction<K>) -> Result<()> {
    let m = inst.m();
    if dir.lambda.len() != m || dir.polys.len() != m {
        return Err(Error::InvalidInstance(format!(
            "direction needs {m} residues and polynomials, got {} and {}",
            dir.lambda.len(),
            dir.polys.len()
        )));
    }
    for (p, &d) in dir.polys.iter().zip(inst.degrees().parts()) {
        if p.n() != inst.n() {
            return Err(Error::AmbientMismatch(inst.n(), p.n()));
        }
        if !p.is_zero() && p.degree() != d as i32 {
            return Err(Error::DegreeMismatch {
                expected: d as i32,
                found: p.degree(),
            });
        }
    }
    let f = inst.field();
    if !f.is_zero(&weighted_sum(f, inst.degrees(), &dir.lambda)) {
        return Err(Error::NotOnHyperplane);
    }
    Ok(())
}

/// `dμ(λ, F)(λ', F') = Σ λ'_i F̂_i dF_i + Σ_{i≠k} λ_i F'_k F̂_{ik} dF_i + Σ λ_i F̂_i dF'_i`.
pub fn dmu_apply<K: Field>(inst: &LogInstance<K>, dir: &Direction<K>) -> Result<Form<K>> {
    check_direction(inst, dir)?;
    let f = inst.field();
    let n = inst.n();
    let m = inst.m();
    let mut acc = log_form(f, n, &dir.lambda, inst.polys());
    let diffs: Vec<Form<K>> = inst.polys().iter().map(Form::differential).collect();
    for (k, fk) in dir.polys.iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        for i in (0..m).filter(|&i| i != k) {
            let coeff = &inst.hat_f(&[i, k]) * fk;
            acc = &acc + &diffs[i].mul_poly(&coeff).scale(&inst.lambda()[i]);
        }
        let third = Form::differential(fk).mul_poly(&inst.hat_f(&[k])).scale(&inst.lambda()[k]);
        acc = &acc + &third;
    }
    Ok(acc)
}

/// A sparse exact matrix with labelled coordinates.
#[derive(Debug, Clone)]
pub struct LinearMapMatrix<K: Field> {
    pub field: K,
    pub rows: usize,
    pub cols: usize,
    /// Nonzero entries keyed by `(row, col)`.
    pub entries: BTreeMap<(usize, usize), K::Elem>,
    pub domain_labels: Vec<String>,
    pub codomain_labels: Vec<String>,
}

impl<K: Field> LinearMapMatrix<K> {
    pub fn from_columns(
        field: K,
        rows: usize,
        columns: &[Vec<K::Elem>],
        domain_labels: Vec<String>,
        codomain_labels: Vec<String>,
    ) -> Self {
        let mut entries = BTreeMap::new();
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !field.is_zero(v) {
                    entries.insert((i, j), v.clone());
                }
            }
        }
        Self {
            field,
            rows,
            cols: columns.len(),
            entries,
            domain_labels,
            codomain_labels,
        }
    }

    pub fn column(&self, j: usize) -> Vec<K::Elem> {
        let mut out = vec![self.field.zero(); self.rows];
        for (&(i, _), v) in self.entries.range((0, j)..).filter(|((_, c), _)| *c == j) {
            out[i] = v.clone();
        }
        out
    }

    pub fn to_dense(&self) -> Matrix<K> {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            m.set(i, j, v.clone());
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.to_dense().rank()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

/// Dimension of `V_n(d) = Λ(d) × ∏ S_n(d_i)`.
pub fn parameter_space_dim(n: usize, degrees: &DegreeVector) -> usize {
    (degrees.m() - 1)
        + degrees
            .parts()
            .iter()
            .map(|&d| homogeneous_dim(n, d as i32))
            .sum::<usize>()
}

/// The tangent direction of the `j`-th coordinate of `V_n(d)`: first the
/// basis `e_i - (d_i/d_m) e_m` (`i < m`) of the residue hyperplane, then the
/// monomials of each `S_n(d_i)` in decreasing grevlex order.
pub fn coordinate_direction<K: Field>(inst: &LogInstance<K>, j: usize) -> Direction<K> {
    let f = inst.field();
    let m = inst.m();
    let mut dir = Direction::zero(inst);
    if j < m - 1 {
        let mut coords = vec![f.zero(); m - 1];
        coords[j] = f.one();
        dir.lambda = crate::logarithmic::hyperplane_point(f, inst.degrees(), &coords);
        return dir;
    }
    let mut rest = j - (m - 1);
    for (i, &d) in inst.degrees().parts().iter().enumerate() {
        let basis = MonomialBasis::new(inst.n(), d as i32);
        if rest < basis.len() {
            dir.polys[i] = Polynomial::monomial(f, basis.monomials()[rest].clone(), f.one());
            return dir;
        }
        rest -= basis.len();
    }
    panic!("coordinate {j} outside the parameter space");
}

fn domain_labels<K: Field>(inst: &LogInstance<K>) -> Vec<String> {
    let m = inst.m();
    let mut labels: Vec<String> = (0..m - 1)
        .map(|i| format!("lambda:e{}-(d{}/d{})e{}", i + 1, i + 1, m, m))
        .collect();
    for (i, &d) in inst.degrees().parts().iter().enumerate() {
        for mono in MonomialBasis::new(inst.n(), d as i32).monomials() {
            labels.push(format!("F{}:{}", i + 1, mono));
        }
    }
    labels
}

/// The matrix of `dμ(λ, F)` from `V_n(d)` coordinates to `basis`
/// coordinates. Columns are assembled in parallel.
pub fn dmu_matrix_in<K: Field>(inst: &LogInstance<K>, basis: &OneFormBasis<K>) -> Result<LinearMapMatrix<K>> {
    if !inst.is_projective() {
        return Err(Error::NotOnHyperplane);
    }
    let cols = parameter_space_dim(inst.n(), inst.degrees());
    let columns = (0..cols)
        .into_par_iter()
        .map(|j| {
            let alpha = dmu_apply(inst, &coordinate_direction(inst, j))?;
            basis.coords(&alpha)
        })
        .collect::<Result<Vec<_>>>()?;
    let codomain = (0..basis.dim()).map(|k| basis.label(k)).collect();
    Ok(LinearMapMatrix::from_columns(
        inst.field(),
        basis.dim(),
        &columns,
        domain_labels(inst),
        codomain,
    ))
}

pub fn dmu_matrix<K: Field>(inst: &LogInstance<K>) -> Result<LinearMapMatrix<K>> {
    let basis = OneFormBasis::new(inst.field(), inst.n(), inst.degrees().total())?;
    dmu_matrix_in(inst, &basis)
}

/// The polynomial form of `β = η' + (G/F)η + d(H/F)` after clearing
/// denominators: `F·α = F·Σ λ'_i F̂_i dF_i + G·ω + F·dH − H·dF`, with
/// `G = Σ F̂_i F'_i` and `H = Σ λ_i F̂_i F'_i`.
pub fn perturbation_identity<K: Field>(inst: &LogInstance<K>, dir: &Direction<K>) -> Result<bool> {
    let alpha = dmu_apply(inst, dir)?;
    let f = inst.field();
    let n = inst.n();
    let d = inst.degrees().total() as i32;
    let big_f = inst.total_product();
    let mut g = Polynomial::zero(f, n, d);
    let mut h = Polynomial::zero(f, n, d);
    for (i, fi) in dir.polys.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        let term = &inst.hat_f(&[i]) * fi;
        g = &g + &term;
        h = &h + &term.scale(&inst.lambda()[i]);
    }
    let omega = mu(inst);
    let eta_prime = log_form(f, n, &dir.lambda, inst.polys());
    let lhs = alpha.mul_poly(&big_f);
    let rhs = &(&eta_prime.mul_poly(&big_f) + &omega.mul_poly(&g))
        + &(&Form::differential(&h).mul_poly(&big_f) - &Form::differential(&big_f).mul_poly(&h));
    Ok(lhs == rhs)
}

/// Balance data of a degree vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Balance {
    /// `2 d_1 < d`.
    pub balanced: bool,
    /// `⌊d_1 / (d - d_1)⌋`, zero exactly when balanced.
    pub r: u32,
}

pub fn classify_balance(dv: &DegreeVector) -> Balance {
    let d1 = dv.parts()[0];
    let rest = dv.hat(0);
    Balance {
        balanced: 2 * d1 < dv.total(),
        r: d1 / rest,
    }
}

/// Identifies the instance a report was computed for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDigest {
    pub seed: Option<u64>,
    pub n: usize,
    pub degrees: Vec<u32>,
    pub field: FieldSpec,
}

impl InstanceDigest {
    pub fn of<K: Field>(inst: &LogInstance<K>) -> Self {
        Self {
            seed: inst.seed(),
            n: inst.n(),
            degrees: inst.degrees().parts().to_vec(),
            field: inst.field().spec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub instance: InstanceDigest,
    pub dim_v: usize,
    pub dim_ambient: usize,
    pub dim_t: usize,
    pub rank_dmu: usize,
    pub ker_dmu_dim: usize,
    pub balanced: bool,
    pub r_d: u32,
    /// `rank(dμ) = dim T(ω)` over the instance's field.
    pub surjective: bool,
    /// Every column of `dμ` satisfies the tangent condition.
    pub image_in_tangent: bool,
    /// `n >= 3`, the range where surjectivity is a theorem.
    pub within_hypothesis: bool,
    /// Some `λ_i = 0` or `λ_i = λ_j`; a negative verdict is then no
    /// counterexample.
    pub degenerate: bool,
}

impl StabilityReport {
    /// Checks the internal dimension relations.
    pub fn consistent(&self) -> bool {
        self.rank_dmu + self.ker_dmu_dim == self.dim_v
            && self.rank_dmu <= self.dim_t
            && self.dim_t <= self.dim_ambient
            && self.surjective == (self.rank_dmu == self.dim_t)
    }
}

/// Computes `dim T(ω)` and `rank dμ` at `inst` and compares them.
pub fn stability_certificate<K: Field>(inst: &LogInstance<K>) -> Result<StabilityReport> {
    if !inst.is_projective() {
        return Err(Error::NotOnHyperplane);
    }
    let omega = mu(inst);
    if omega.is_zero() {
        return Err(Error::BaseLocusPoint);
    }
    let basis = OneFormBasis::new(inst.field(), inst.n(), inst.degrees().total())?;
    let tangent = tangent_space(&basis, &omega)?;
    let dmu = dmu_matrix_in(inst, &basis)?;
    let d_omega = omega.exterior_derivative();
    let image_in_tangent = (0..dmu.cols).into_par_iter().all(|j| {
        let alpha = basis.combine(&dmu.column(j));
        tangent_residual(&omega, &d_omega, &alpha).is_zero()
    });
    let rank = dmu.rank();
    let balance = classify_balance(inst.degrees());
    let report = StabilityReport {
        instance: InstanceDigest::of(inst),
        dim_v: dmu.cols,
        dim_ambient: basis.dim(),
        dim_t: tangent.dim(),
        rank_dmu: rank,
        ker_dmu_dim: dmu.cols - rank,
        balanced: balance.balanced,
        r_d: balance.r,
        surjective: rank == tangent.dim(),
        image_in_tangent,
        within_hypothesis: inst.n() >= 3,
        degenerate: !inst.is_generic(),
    };
    if !report.consistent() {
        return Err(Error::Internal(format!("inconsistent stability report {report:?}")));
    }
    Ok(report)
}

/// The unit one-form `x^m dx_i` used in a few tests and examples.
pub fn monomial_oneform<K: Field>(field: K, n: usize, i: usize, m: crate::poly::Monomial) -> Form<K> {
    let p = Polynomial::monomial(field, m, field.one());
    let mut f = Form::zero(field, n, 1, p.degree() + 1);
    f = &f + &Form::dx(field, n, i).mul_poly(&p);
    debug_assert!(f.coeffs().all(|(s, _)| *s == IndexSet::singleton(i)));
    f
}
