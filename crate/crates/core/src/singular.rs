//! The ideal `J⁽²⁾` of the pairwise intersections `{F_i = F_j = 0}`: its
//! presentation, Hilbert function check, and the solvers writing a form as
//! `Σ F̂_i α_i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::{Form, FormSpace};
use crate::linalg::Matrix;
use crate::logarithmic::{hyperplane_point, log_form, LogInstance};
use crate::poly::{homogeneous_dim, MonomialBasis, Polynomial};
use crate::tangent::OneFormBasis;

/// Generators `F̂_i` and syzygies `R_j = F_j e_j − F_1 e_1`.
#[derive(Debug, Clone)]
pub struct J2Presentation<K: Field> {
    pub generators: Vec<Polynomial<K>>,
    /// `relations[j - 1][i]` is the `i`-th entry of `R_j`, for `j = 1..m`.
    pub relations: Vec<Vec<Polynomial<K>>>,
}

impl<K: Field> J2Presentation<K> {
    /// `Σ_i r_i F̂_i` for a relation vector `r`.
    pub fn apply(&self, relation: &[Polynomial<K>]) -> Polynomial<K> {
        let mut terms = relation.iter().zip(&self.generators).filter(|(r, _)| !r.is_zero());
        let Some((r0, g0)) = terms.next() else {
            let g = &self.generators[0];
            return Polynomial::zero(g.field(), g.n(), 0);
        };
        terms.fold(r0 * g0, |acc, (r, g)| &acc + &(r * g))
    }

    pub fn composite_vanishes(&self) -> bool {
        self.relations.iter().all(|r| self.apply(r).is_zero())
    }
}

pub fn j2_presentation<K: Field>(inst: &LogInstance<K>) -> Result<J2Presentation<K>> {
    let m = inst.m();
    let generators: Vec<Polynomial<K>> = (0..m).map(|i| inst.hat_f(&[i])).collect();
    let f = inst.field();
    let zero = |i: usize| Polynomial::zero(f, inst.n(), inst.degrees().parts()[i] as i32);
    let relations = (1..m)
        .map(|j| {
            let mut r: Vec<Polynomial<K>> = (0..m).map(zero).collect();
            r[j] = inst.polys()[j].clone();
            r[0] = inst.polys()[0].neg();
            r
        })
        .collect();
    let p = J2Presentation {
        generators,
        relations,
    };
    if !p.composite_vanishes() {
        return Err(Error::Internal("syzygy does not map to zero".into()));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub k: u32,
    pub direct: usize,
    pub predicted: i64,
    #[serde(rename = "match")]
    pub matched: bool,
}

/// `Σ_i C(n + k − d̂_i, n) − (m − 1)·C(n + k − d, n)`.
pub fn hilbert_prediction(n: usize, hat_degrees: &[u32], d: u32, k: u32) -> i64 {
    let k = k as i32;
    let gens: usize = hat_degrees.iter().map(|&h| homogeneous_dim(n, k - h as i32)).sum();
    let syz = (hat_degrees.len() - 1) * homogeneous_dim(n, k - d as i32);
    gens as i64 - syz as i64
}

/// Dimension of the degree-`k` part of the ideal generated by the `F̂_i`.
pub fn generated_dimension<K: Field>(inst: &LogInstance<K>, k: u32) -> usize {
    let n = inst.n();
    let target = MonomialBasis::new(n, k as i32);
    let mut columns = Vec::new();
    for i in 0..inst.m() {
        let g = inst.hat_f(&[i]);
        let shift = k as i32 - g.degree();
        if shift < 0 {
            continue;
        }
        for mono in MonomialBasis::new(n, shift).monomials() {
            let p = &Polynomial::monomial(inst.field(), mono.clone(), inst.field().one()) * &g;
            columns.push(p.coords(&target));
        }
    }
    Matrix::from_columns(inst.field(), target.len(), &columns).rank()
}

pub fn hilbert_check<K: Field>(inst: &LogInstance<K>, k: u32) -> HilbertRow {
    let hats: Vec<u32> = (0..inst.m()).map(|i| inst.degrees().hat(i)).collect();
    let direct = generated_dimension(inst, k);
    let predicted = hilbert_prediction(inst.n(), &hats, inst.degrees().total(), k);
    HilbertRow {
        k,
        direct,
        predicted,
        matched: direct as i64 == predicted,
    }
}

fn check_alpha<K: Field>(inst: &LogInstance<K>, alpha: &Form<K>) -> Result<()> {
    if alpha.q() != 1 {
        return Err(Error::GradeMismatch {
            expected: 1,
            found: alpha.q(),
        });
    }
    if alpha.n() != inst.n() {
        return Err(Error::AmbientMismatch(inst.n(), alpha.n()));
    }
    let d = inst.degrees().total() as i32;
    if alpha.degree() != d {
        return Err(Error::DegreeMismatch {
            expected: d,
            found: alpha.degree(),
        });
    }
    Ok(())
}

/// `Σ F̂_i α_i`.
pub fn recompose<K: Field>(inst: &LogInstance<K>, parts: &[Form<K>]) -> Form<K> {
    let d = inst.degrees().total() as i32;
    parts
        .iter()
        .enumerate()
        .fold(Form::zero(inst.field(), inst.n(), 1, d), |acc, (i, a)| {
            &acc + &a.mul_poly(&inst.hat_f(&[i]))
        })
}

/// Writes `α = Σ F̂_i α_i` with `α_i` one-forms of degree `d_i`, or returns
/// `None` when `α` does not vanish on the codimension-two stratum.
pub fn vanishing_decomposition<K: Field>(inst: &LogInstance<K>, alpha: &Form<K>) -> Result<Option<Vec<Form<K>>>> {
    check_alpha(inst, alpha)?;
    let f = inst.field();
    let n = inst.n();
    let target = FormSpace::new(n, 1, inst.degrees().total() as i32);
    let spaces: Vec<FormSpace> = inst
        .degrees()
        .parts()
        .iter()
        .map(|&d| FormSpace::new(n, 1, d as i32))
        .collect();
    let mut columns = Vec::new();
    for (i, space) in spaces.iter().enumerate() {
        let hat = inst.hat_f(&[i]);
        for k in 0..space.dim() {
            columns.push(target.coords(&space.unit(f, k).mul_poly(&hat)));
        }
    }
    let matrix = Matrix::from_columns(f, target.dim(), &columns);
    let Some(x) = matrix.solve(&target.coords(alpha)) else {
        return Ok(None);
    };
    let mut offset = 0;
    let parts = spaces
        .iter()
        .map(|space| {
            let part = space.from_coords(f, &x[offset..offset + space.dim()]);
            offset += space.dim();
            part
        })
        .collect();
    Ok(Some(parts))
}

/// `α = Σ λ'_i F̂_i dF_i + Σ F̂_i γ_i` with `λ'` on the residue hyperplane and
/// each `γ_i` projective of degree `d_i`.
#[derive(Debug, Clone)]
pub struct ProjectiveDecomposition<K: Field> {
    pub lambda: Vec<K::Elem>,
    pub gammas: Vec<Form<K>>,
}

impl<K: Field> ProjectiveDecomposition<K> {
    pub fn recompose(&self, inst: &LogInstance<K>) -> Form<K> {
        &log_form(inst.field(), inst.n(), &self.lambda, inst.polys()) + &recompose(inst, &self.gammas)
    }
}

pub fn projective_vanishing_decomposition<K: Field>(
    inst: &LogInstance<K>,
    alpha: &Form<K>,
) -> Result<Option<ProjectiveDecomposition<K>>> {
    check_alpha(inst, alpha)?;
    if !alpha.is_projective()? {
        return Err(Error::NotProjective);
    }
    let f = inst.field();
    let n = inst.n();
    let m = inst.m();
    let target = FormSpace::new(n, 1, inst.degrees().total() as i32);
    let mut columns = Vec::new();
    let mut lambda_dirs = Vec::new();
    for j in 0..m - 1 {
        let mut c = vec![f.zero(); m - 1];
        c[j] = f.one();
        let l = hyperplane_point(f, inst.degrees(), &c);
        columns.push(target.coords(&log_form(f, n, &l, inst.polys())));
        lambda_dirs.push(l);
    }
    let bases = inst
        .degrees()
        .parts()
        .iter()
        .map(|&d| OneFormBasis::new(f, n, d))
        .collect::<Result<Vec<_>>>()?;
    for (i, basis) in bases.iter().enumerate() {
        let hat = inst.hat_f(&[i]);
        for b in basis.vectors() {
            columns.push(target.coords(&b.mul_poly(&hat)));
        }
    }
    let matrix = Matrix::from_columns(f, target.dim(), &columns);
    let Some(x) = matrix.solve(&target.coords(alpha)) else {
        return Ok(None);
    };
    let mut lambda = vec![f.zero(); m];
    for (c, dir) in x[..m - 1].iter().zip(&lambda_dirs) {
        for (l, v) in lambda.iter_mut().zip(dir) {
            *l = f.add(l, &f.mul(c, v));
        }
    }
    let mut offset = m - 1;
    let gammas = bases
        .iter()
        .map(|basis| {
            let g = basis.combine(&x[offset..offset + basis.dim()]);
            offset += basis.dim();
            g
        })
        .collect();
    Ok(Some(ProjectiveDecomposition { lambda, gammas }))
}
