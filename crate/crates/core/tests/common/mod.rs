//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use logform::baselocus::Factorization;
use logform::field::Field;
use logform::linalg::Matrix;
use logform::logarithmic::LogInstance;
use logform::poly::{MonomialBasis, Polynomial};
use logform::tangent::Direction;
use logform::{DegreeVector, Form};

/// Term-wise comparison that ignores the declared degree of zero polynomials.
pub fn same_poly<K: Field>(a: &Polynomial<K>, b: &Polynomial<K>) -> bool {
    a.terms().eq(b.terms())
}

/// `a + ε b` with `ε² = 0`.
#[derive(Clone)]
pub struct Dual<K: Field> {
    pub re: Polynomial<K>,
    pub eps: Polynomial<K>,
}

impl<K: Field> Dual<K> {
    pub fn new(re: Polynomial<K>, eps: Polynomial<K>) -> Self {
        Self { re, eps }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = &self.re * &o.re;
        let a = &self.re * &o.eps;
        let b = &self.eps * &o.re;
        Self {
            re,
            eps: add_any(&a, &b),
        }
    }

    pub fn scale(&self, c: &K::Elem, c_eps: &K::Elem) -> Self {
        Self {
            re: self.re.scale(c),
            eps: add_any(&self.eps.scale(c), &self.re.scale(c_eps)),
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        Self {
            re: self.re.derivative(i),
            eps: self.eps.derivative(i),
        }
    }
}

/// Sum of two polynomials of possibly different declared degree when one of
/// them is zero.
pub fn add_any<K: Field>(a: &Polynomial<K>, b: &Polynomial<K>) -> Polynomial<K> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    a + b
}

/// The `ε` part of `μ(λ + ελ', F + εF')`, coefficient by coefficient:
/// `Σ_i (λ_i + ελ'_i) ∏_{j≠i}(F_j + εF'_j) ∂_k(F_i + εF'_i)`.
pub fn dual_mu_first_order<K: Field>(inst: &LogInstance<K>, dir: &Direction<K>) -> Vec<Polynomial<K>> {
    let f = inst.field();
    let n = inst.n();
    let duals: Vec<Dual<K>> = inst
        .polys()
        .iter()
        .zip(&dir.polys)
        .map(|(p, q)| Dual::new(p.clone(), q.clone()))
        .collect();
    (0..=n)
        .map(|k| {
            let mut acc = Polynomial::zero(f, n, 0);
            for i in 0..inst.m() {
                let mut term = duals[i].derivative(k);
                for (j, dj) in duals.iter().enumerate() {
                    if j != i {
                        term = term.mul(dj);
                    }
                }
                let term = term.scale(&inst.lambda()[i], &dir.lambda[i]);
                acc = add_any(&acc, &term.eps);
            }
            acc
        })
        .collect()
}

/// Compares a one-form with a coefficient vector.
pub fn form_matches<K: Field>(form: &Form<K>, coeffs: &[Polynomial<K>]) -> bool {
    let mine = form.one_form_coeffs();
    mine.len() == coeffs.len() && mine.iter().zip(coeffs).all(|(a, b)| same_poly(a, b))
}

type Columns = Vec<(u32, Vec<u32>)>;

fn canonical_columns(e: &[Vec<u32>], d_prime: &[u32]) -> Columns {
    let mut cols: Columns = (0..d_prime.len())
        .map(|j| (d_prime[j], e.iter().map(|r| r[j]).collect()))
        .collect();
    cols.sort();
    cols
}

pub fn columns_of(phi: &Factorization) -> Columns {
    canonical_columns(&phi.e, &phi.d_prime)
}

/// All solutions `x ∈ ℕ^k` of `Σ x_j w_j = total`.
fn compositions(weights: &[u32], total: u32) -> Vec<Vec<u32>> {
    if weights.is_empty() {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for x in 0..=total / weights[0] {
        for mut rest in compositions(&weights[1..], total - x * weights[0]) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn nondecreasing_tuples(len: usize, min: u32, budget: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for v in min..=budget {
        if v * len as u32 > budget {
            break;
        }
        for mut rest in nondecreasing_tuples(len - 1, v, budget - v) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// Brute-force factorization set: every `d'` with `Σ d' ≤ d`, every row
/// solution, every combination of rows, then drop zero columns.
pub fn brute_factorizations(dv: &DegreeVector) -> BTreeSet<Columns> {
    let d = dv.parts();
    let total = dv.total();
    let mut out = BTreeSet::new();
    for m_prime in 1..=total as usize {
        for d_prime in nondecreasing_tuples(m_prime, 1, total) {
            let rows: Vec<Vec<Vec<u32>>> = d.iter().map(|&di| compositions(&d_prime, di)).collect();
            let mut pick = vec![0usize; rows.len()];
            if rows.iter().any(Vec::is_empty) {
                continue;
            }
            loop {
                let e: Vec<Vec<u32>> = pick.iter().zip(&rows).map(|(&p, r)| r[p].clone()).collect();
                if (0..m_prime).all(|j| e.iter().any(|r| r[j] > 0)) {
                    out.insert(canonical_columns(&e, &d_prime));
                }
                let mut i = 0;
                while i < pick.len() && pick[i] + 1 == rows[i].len() {
                    pick[i] = 0;
                    i += 1;
                }
                if i == pick.len() {
                    break;
                }
                pick[i] += 1;
            }
        }
    }
    out
}

/// Rank of a small integer matrix by fraction-free elimination in `i128`.
pub fn integer_rank(rows: &[Vec<u32>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            for k in c + 1..cols {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

fn columns_to_rows(cols: &Columns, m: usize) -> Vec<Vec<u32>> {
    (0..m).map(|i| cols.iter().map(|(_, c)| c[i]).collect()).collect()
}

/// `φ₂ ≤ φ₁` by exhaustive search over bounded `e₃`.
pub fn brute_leq(phi2: &Columns, phi1: &Columns, m: usize) -> bool {
    let e1 = columns_to_rows(phi1, m);
    let e2 = columns_to_rows(phi2, m);
    if integer_rank(&e1) != integer_rank(&e2) {
        return false;
    }
    let m1 = phi1.len();
    let bound = e2.iter().flatten().copied().max().unwrap_or(0);
    let per_column: Vec<Vec<Vec<u32>>> = phi2
        .iter()
        .map(|(_, col)| {
            let mut sols = Vec::new();
            let mut x = vec![0u32; m1];
            loop {
                let image: Vec<u32> = (0..m).map(|i| (0..m1).map(|j| e1[i][j] * x[j]).sum()).collect();
                if &image == col {
                    sols.push(x.clone());
                }
                let mut j = 0;
                while j < m1 && x[j] == bound {
                    x[j] = 0;
                    j += 1;
                }
                if j == m1 {
                    break;
                }
                x[j] += 1;
            }
            sols
        })
        .collect();
    if per_column.iter().any(Vec::is_empty) {
        return false;
    }
    let mut pick = vec![0usize; per_column.len()];
    loop {
        let degs: Vec<u32> = (0..m1)
            .map(|j| pick.iter().enumerate().map(|(k, &p)| per_column[k][p][j] * phi2[k].0).sum())
            .collect();
        if degs.iter().zip(phi1).all(|(a, (b, _))| a == b) {
            return true;
        }
        let mut k = 0;
        while k < pick.len() && pick[k] + 1 == per_column[k].len() {
            pick[k] = 0;
            k += 1;
        }
        if k == pick.len() {
            return false;
        }
        pick[k] += 1;
    }
}

/// Components from the brute-force poset: maximal elements with `m − rank(e) > 0`.
pub fn brute_components(dv: &DegreeVector) -> BTreeSet<Columns> {
    let m = dv.m();
    let all: Vec<Columns> = brute_factorizations(dv).into_iter().collect();
    all.iter()
        .filter(|a| !all.iter().any(|b| b != *a && brute_leq(a, b, m)))
        .filter(|a| m > integer_rank(&columns_to_rows(a, m)))
        .cloned()
        .collect()
}

/// Whether every coefficient of `alpha` lies in the span of
/// `{F̂_i · x^μ : |μ| = d_i − 1}`, decided by comparing ranks.
pub fn coefficientwise_in_ideal<K: Field>(inst: &LogInstance<K>, alpha: &Form<K>) -> bool {
    let f = inst.field();
    let n = inst.n();
    let k = inst.degrees().total() as i32 - 1;
    let target = MonomialBasis::new(n, k);
    let mut gens = Vec::new();
    for (i, &di) in inst.degrees().parts().iter().enumerate() {
        let hat = inst.hat_f(&[i]);
        for mono in MonomialBasis::new(n, di as i32 - 1).monomials() {
            gens.push((&Polynomial::monomial(f, mono.clone(), f.one()) * &hat).coords(&target));
        }
    }
    let base = Matrix::from_columns(f, target.len(), &gens).rank();
    alpha.one_form_coeffs().iter().all(|a| {
        if a.is_zero() {
            return true;
        }
        let mut cols = gens.clone();
        cols.push(a.coords(&target));
        Matrix::from_columns(f, target.len(), &cols).rank() == base
    })
}

/// Degree vectors with total at most `max_total` and between 2 and
/// `max_parts` parts.
pub fn degree_vectors(max_total: u32, max_parts: usize) -> Vec<DegreeVector> {
    fn parts(rest: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, max_parts: usize) {
        if rest == 0 {
            if acc.len() >= 2 {
                out.push(acc.clone());
            }
            return;
        }
        if acc.len() == max_parts {
            return;
        }
        for v in (1..=max.min(rest)).rev() {
            acc.push(v);
            parts(rest - v, v, acc, out, max_parts);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for d in 2..=max_total {
        parts(d, d, &mut Vec::new(), &mut out, max_parts);
    }
    out.into_iter().map(|p| DegreeVector::new(p).unwrap()).collect()
}
