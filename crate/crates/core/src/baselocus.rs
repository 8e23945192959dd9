//! Factorizations `d = e·d'` of a degree vector, their partial order, and the
//! components of the base locus of the logarithmic parametrization.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::forms::Form;
use crate::linalg::Matrix;
use crate::logarithmic::{log_form, DegreeVector};
use crate::poly::{product, Polynomial};

/// An element `(m', e, d')` of the factorization set of a degree vector.
///
/// Columns are kept sorted by `(d'_j, column of e)`, which makes equality
/// the same as equality modulo column permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub m_prime: usize,
    /// Row-major `m × m'` exponent matrix.
    pub e: Vec<Vec<u32>>,
    pub d_prime: Vec<u32>,
}

impl Factorization {
    /// Validates and canonicalizes.
    pub fn new(e: Vec<Vec<u32>>, d_prime: Vec<u32>) -> Result<Self> {
        let m_prime = d_prime.len();
        if m_prime == 0 || e.is_empty() {
            return Err(Error::InvalidDegrees("empty factorization".into()));
        }
        if e.iter().any(|row| row.len() != m_prime) {
            return Err(Error::InvalidDegrees("ragged exponent matrix".into()));
        }
        if d_prime.contains(&0) {
            return Err(Error::InvalidDegrees("d' must be positive".into()));
        }
        if (0..m_prime).any(|j| e.iter().all(|row| row[j] == 0)) {
            return Err(Error::InvalidDegrees("exponent matrix has a zero column".into()));
        }
        if e.iter().any(|row| row.iter().all(|&v| v == 0)) {
            return Err(Error::InvalidDegrees("exponent matrix has a zero row".into()));
        }
        let m = e.len();
        let mut cols: Vec<(u32, Vec<u32>)> = (0..m_prime)
            .map(|j| (d_prime[j], (0..m).map(|i| e[i][j]).collect()))
            .collect();
        cols.sort();
        Ok(Self::from_sorted_columns(m, &cols))
    }

    fn from_sorted_columns(m: usize, cols: &[(u32, Vec<u32>)]) -> Self {
        Self {
            m_prime: cols.len(),
            e: (0..m).map(|i| cols.iter().map(|(_, c)| c[i]).collect()).collect(),
            d_prime: cols.iter().map(|(d, _)| *d).collect(),
        }
    }

    /// The identity factorization `e = I`, `d' = d`.
    pub fn identity(dv: &DegreeVector) -> Self {
        let m = dv.m();
        let e = (0..m).map(|i| (0..m).map(|j| u32::from(i == j)).collect()).collect();
        Self::new(e, dv.parts().to_vec()).expect("identity is a factorization")
    }

    pub fn m(&self) -> usize {
        self.e.len()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        self.e.iter().map(|row| row[j]).collect()
    }

    /// `e·d'`.
    pub fn degrees(&self) -> Vec<u32> {
        self.e
            .iter()
            .map(|row| row.iter().zip(&self.d_prime).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn factors(&self, dv: &DegreeVector) -> bool {
        self.degrees() == dv.parts()
    }

    pub fn rank(&self) -> usize {
        exponent_matrix(self).rank()
    }

    /// `dim Λ(e) = m − rank(e)`.
    pub fn lambda_dim(&self) -> usize {
        self.m() - self.rank()
    }

    /// A basis of `Λ(e) = {λ : λ·e = 0}` over `field`.
    pub fn lambda_basis<K: Field>(&self, field: K) -> Vec<Vec<K::Elem>> {
        let cols: Vec<Vec<K::Elem>> = self.e.iter().map(|row| row.iter().map(|&v| field.from_i64(v as i64)).collect()).collect();
        Matrix::from_columns(field, self.m_prime, &cols).nullspace()
    }

    /// `ν_φ(G) = (∏_j G_j^{e_ij})_i`.
    pub fn nu<K: Field>(&self, g: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>> {
        if g.len() != self.m_prime {
            return Err(Error::InvalidInstance(format!(
                "factorization needs {} factors, got {}",
                self.m_prime,
                g.len()
            )));
        }
        let first = &g[0];
        for (gj, &dj) in g.iter().zip(&self.d_prime) {
            if gj.n() != first.n() {
                return Err(Error::AmbientMismatch(first.n(), gj.n()));
            }
            if gj.degree() != dj as i32 {
                return Err(Error::DegreeMismatch {
                    expected: dj as i32,
                    found: gj.degree(),
                });
            }
        }
        Ok(self
            .e
            .iter()
            .map(|row| {
                let powers: Vec<Polynomial<K>> = row.iter().zip(g).map(|(&k, gj)| gj.pow(k)).collect();
                product(first.field(), first.n(), &powers)
            })
            .collect())
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .e
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        let dp: Vec<String> = self.d_prime.iter().map(u32::to_string).collect();
        write!(f, "m'={} e=[{}] d'=({})", self.m_prime, rows.join("; "), dp.join(","))
    }
}

fn exponent_matrix(phi: &Factorization) -> Matrix<Rationals> {
    let rows = phi
        .e
        .iter()
        .map(|r| r.iter().map(|&v| Rationals.from_i64(v as i64)).collect())
        .collect();
    Matrix::from_rows(Rationals, rows, phi.m_prime)
}

/// Every factorization of `dv`, in canonical form, sorted.
///
/// Searches multisets of columns `(d'_j, v)` in nondecreasing order while
/// tracking the unfilled part of `d`.
pub fn enumerate_factorizations(dv: &DegreeVector) -> Vec<Factorization> {
    let d = dv.parts();
    let m = d.len();
    let mut candidates: Vec<(u32, Vec<u32>)> = Vec::new();
    for dp in 1..=d[0] {
        let bounds: Vec<u32> = d.iter().map(|&di| di / dp).collect();
        let mut v = vec![0u32; m];
        loop {
            if v.iter().any(|&x| x > 0) {
                candidates.push((dp, v.clone()));
            }
            let mut i = 0;
            while i < m && v[i] == bounds[i] {
                v[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            v[i] += 1;
        }
    }
    candidates.sort();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut residual = d.to_vec();
    search_columns(&candidates, 0, &mut residual, &mut chosen, m, &mut out);
    out.sort_by(factorization_order);
    out
}

fn search_columns(
    candidates: &[(u32, Vec<u32>)],
    start: usize,
    residual: &mut [u32],
    chosen: &mut Vec<usize>,
    m: usize,
    out: &mut Vec<Factorization>,
) {
    if residual.iter().all(|&r| r == 0) {
        let cols: Vec<(u32, Vec<u32>)> = chosen.iter().map(|&k| candidates[k].clone()).collect();
        out.push(Factorization::from_sorted_columns(m, &cols));
        return;
    }
    for k in start..candidates.len() {
        let (dp, v) = &candidates[k];
        if v.iter().zip(residual.iter()).all(|(&x, &r)| x * dp <= r) {
            for (r, &x) in residual.iter_mut().zip(v) {
                *r -= x * dp;
            }
            chosen.push(k);
            search_columns(candidates, k, residual, chosen, m, out);
            chosen.pop();
            for (r, &x) in residual.iter_mut().zip(v) {
                *r += x * dp;
            }
        }
    }
}

/// Deterministic listing order: by `m'`, then `d'`, then `e`.
pub fn factorization_order(a: &Factorization, b: &Factorization) -> Ordering {
    (a.m_prime, &a.d_prime, &a.e).cmp(&(b.m_prime, &b.d_prime, &b.e))
}

/// Nonnegative integer solutions `x` of `e·x = target`.
fn column_preimages(e: &[Vec<u32>], target: &[u32]) -> Vec<Vec<u32>> {
    let cols = e[0].len();
    // e has no zero column, so each x_j is bounded by some row
    let bounds: Vec<u32> = (0..cols)
        .map(|j| {
            e.iter()
                .zip(target)
                .filter(|(row, _)| row[j] > 0)
                .map(|(row, &t)| t / row[j])
                .min()
                .unwrap_or(0)
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0u32; cols];
    let mut acc = vec![0u32; target.len()];
    preimage_search(e, target, &bounds, 0, &mut x, &mut acc, &mut out);
    out
}

fn preimage_search(
    e: &[Vec<u32>],
    target: &[u32],
    bounds: &[u32],
    j: usize,
    x: &mut Vec<u32>,
    acc: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if j == x.len() {
        if acc.as_slice() == target {
            out.push(x.clone());
        }
        return;
    }
    for v in 0..=bounds[j] {
        if (0..target.len()).any(|i| acc[i] + e[i][j] * v > target[i]) {
            break;
        }
        for i in 0..target.len() {
            acc[i] += e[i][j] * v;
        }
        x[j] = v;
        preimage_search(e, target, bounds, j + 1, x, acc, out);
        for i in 0..target.len() {
            acc[i] -= e[i][j] * v;
        }
    }
    x[j] = 0;
}

/// `φ₂ ≤ φ₁`: equal ranks and some `e₃ ∈ ℕ^{m₁×m₂}` with `e₂ = e₁·e₃` and
/// `e₃·d'₂ = d'₁`, i.e. `im ν_{φ₂} ⊆ im ν_{φ₁}` through `G¹_j = ∏_k (G²_k)^{e₃_jk}`.
pub fn leq(phi2: &Factorization, phi1: &Factorization) -> bool {
    if phi1.m() != phi2.m() || phi1.degrees() != phi2.degrees() {
        return false;
    }
    if phi1.rank() != phi2.rank() {
        return false;
    }
    let options: Vec<Vec<Vec<u32>>> = (0..phi2.m_prime)
        .map(|k| column_preimages(&phi1.e, &phi2.column(k)))
        .collect();
    if options.iter().any(Vec::is_empty) {
        return false;
    }
    let mut residual = phi1.d_prime.clone();
    degree_compatible(&options, &phi2.d_prime, 0, &mut residual)
}

fn degree_compatible(options: &[Vec<Vec<u32>>], d2: &[u32], k: usize, residual: &mut [u32]) -> bool {
    if k == options.len() {
        return residual.iter().all(|&r| r == 0);
    }
    for x in &options[k] {
        if x.iter().zip(residual.iter()).all(|(&xj, &r)| xj * d2[k] <= r) {
            for (r, &xj) in residual.iter_mut().zip(x) {
                *r -= xj * d2[k];
            }
            let ok = degree_compatible(options, d2, k + 1, residual);
            for (r, &xj) in residual.iter_mut().zip(x) {
                *r += xj * d2[k];
            }
            if ok {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseLocusComponent {
    #[serde(flatten)]
    pub phi: Factorization,
    pub lambda_dim: usize,
    pub is_maximal: bool,
}

/// Every factorization with its `Λ(e)` dimension and maximality flag.
pub fn analyze(dv: &DegreeVector) -> Vec<BaseLocusComponent> {
    let all = enumerate_factorizations(dv);
    all.iter()
        .map(|phi| BaseLocusComponent {
            phi: phi.clone(),
            lambda_dim: phi.lambda_dim(),
            is_maximal: !all.iter().any(|psi| psi != phi && leq(phi, psi)),
        })
        .collect()
}

/// The maximal factorizations with `Λ(e) ≠ 0`: the irreducible components
/// of the base locus.
pub fn maximal_elements(dv: &DegreeVector) -> Vec<BaseLocusComponent> {
    analyze(dv)
        .into_iter()
        .filter(|c| c.is_maximal && c.lambda_dim > 0)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    /// `λ·e = 0`.
    pub precondition_ok: bool,
    /// `μ(λ, ν_φ(G)) = 0`.
    pub vanishes: bool,
}

impl Membership {
    pub fn consistent(&self) -> bool {
        !self.precondition_ok || self.vanishes
    }
}

/// Evaluates `μ` at `(λ, ν_φ(G))`.
pub fn membership_check<K: Field>(
    lambda: &[K::Elem],
    phi: &Factorization,
    g: &[Polynomial<K>],
) -> Result<(Membership, Form<K>)> {
    if lambda.len() != phi.m() {
        return Err(Error::InvalidInstance(format!(
            "expected {} residues, got {}",
            phi.m(),
            lambda.len()
        )));
    }
    let polys = phi.nu(g)?;
    let field = polys[0].field();
    let precondition_ok = (0..phi.m_prime).all(|j| {
        let s = phi
            .e
            .iter()
            .zip(lambda)
            .fold(field.zero(), |acc, (row, l)| field.add(&acc, &field.mul(l, &field.from_i64(row[j] as i64))));
        field.is_zero(&s)
    });
    let form = log_form(field, polys[0].n(), lambda, &polys);
    Ok((
        Membership {
            precondition_ok,
            vanishes: form.is_zero(),
        },
        form,
    ))
}

/// A random point of `Λ(e)`.
pub fn sample_lambda<K: Field, R: Rng + ?Sized>(field: K, phi: &Factorization, rng: &mut R) -> Vec<K::Elem> {
    let mut out = vec![field.zero(); phi.m()];
    for v in phi.lambda_basis(field) {
        let c = field.random(rng);
        for (o, x) in out.iter_mut().zip(&v) {
            *o = field.add(o, &field.mul(&c, x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::random_poly;

    fn dv(p: &[u32]) -> DegreeVector {
        DegreeVector::new(p.to_vec()).unwrap()
    }

    fn fac(e: &[&[u32]], d: &[u32]) -> Factorization {
        Factorization::new(e.iter().map(|r| r.to_vec()).collect(), d.to_vec()).unwrap()
    }

    #[test]
    fn two_lines() {
        let all = enumerate_factorizations(&dv(&[1, 1]));
        assert_eq!(all.len(), 2);
        assert!(all.contains(&fac(&[&[1], &[1]], &[1])));
        assert!(all.contains(&Factorization::identity(&dv(&[1, 1]))));
        assert!(!all.iter().any(|p| p.d_prime == vec![2]));
    }

    #[test]
    fn canonical_form_sorts_columns() {
        let a = fac(&[&[0, 1], &[1, 0]], &[1, 1]);
        let b = fac(&[&[1, 0], &[0, 1]], &[1, 1]);
        assert_eq!(a, b);
        assert!(Factorization::new(vec![vec![1, 0], vec![1, 0]], vec![1, 1]).is_err());
    }

    #[test]
    fn leq_examples() {
        let id = Factorization::identity(&dv(&[1, 1]));
        let ones = fac(&[&[1], &[1]], &[1]);
        assert!(!leq(&ones, &id));
        assert!(leq(&id, &id));
        let e1 = fac(&[&[1, 1], &[1, 1]], &[1, 1]);
        let e2 = fac(&[&[2], &[2]], &[1]);
        assert!(leq(&e2, &e1));
        assert!(!leq(&e1, &e2));
    }

    #[test]
    fn same_exponents_different_degrees_are_incomparable() {
        let a = fac(&[&[1, 1], &[1, 1]], &[1, 3]);
        let b = fac(&[&[1, 1], &[1, 1]], &[2, 2]);
        assert!(!leq(&a, &b));
        assert!(!leq(&b, &a));
    }

    #[test]
    fn components_of_small_vectors() {
        let c = maximal_elements(&dv(&[1, 1]));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].phi, fac(&[&[1], &[1]], &[1]));
        assert_eq!(c[0].lambda_dim, 1);
        let c = maximal_elements(&dv(&[1, 1, 1]));
        let ones = c.iter().find(|c| c.phi == fac(&[&[1], &[1], &[1]], &[1])).unwrap();
        assert_eq!(ones.lambda_dim, 2);
        let c = maximal_elements(&dv(&[2, 2]));
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].phi, fac(&[&[1], &[1]], &[2]));
    }

    #[test]
    fn lambda_space_inside_hyperplane() {
        for d in [vec![2, 2], vec![2, 1, 1], vec![3, 3]] {
            let dv = dv(&d);
            for phi in enumerate_factorizations(&dv) {
                for l in phi.lambda_basis(Rationals) {
                    let s = crate::logarithmic::weighted_sum(Rationals, &dv, &l);
                    assert!(Rationals.is_zero(&s));
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let f = PrimeField::default();
        let ones = fac(&[&[1], &[1]], &[1]);
        let x0 = Polynomial::var(f, 2, 0);
        let (m, _) = membership_check(&[1, f.neg(&1)], &ones, std::slice::from_ref(&x0)).unwrap();
        assert_eq!(m, Membership { precondition_ok: true, vanishes: true });
        let twos = fac(&[&[2], &[2]], &[1]);
        let g = random_poly(3, 1, f, 5).unwrap();
        let (m, _) = membership_check(&[1, f.neg(&1)], &twos, std::slice::from_ref(&g)).unwrap();
        assert!(m.vanishes && m.precondition_ok);
        let (m, form) = membership_check(&[1, 2], &twos, &[g]).unwrap();
        assert!(!m.precondition_ok && !m.vanishes && !form.is_zero());
        assert!(membership_check(&[1, f.neg(&1)], &ones, &[x0.pow(2)]).is_err());
    }
}
