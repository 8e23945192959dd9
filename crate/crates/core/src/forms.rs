//! Differential forms with polynomial coefficients on affine `(n+1)`-space.
//!
//! A form of grade `q` and degree `d` is `Σ_J a_J dx_J` with every `a_J`
//! homogeneous of degree `d - q`; each `dx_i` counts as degree one, so the
//! exterior derivative preserves degree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{binomial, MonomialBasis, Polynomial};

/// A strictly increasing index tuple `j_1 < ... < j_q`, stored as a bitmask.
///
/// Ordered lexicographically as a tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    /// Builds the set from strictly increasing indices.
    pub fn from_sorted(indices: &[usize]) -> Option<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= 64) {
            return None;
        }
        Some(IndexSet(indices.iter().fold(0, |m, &i| m | (1 << i))))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    pub fn max_index(&self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    fn insert(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << i)
    }

    fn remove(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    /// Number of members strictly below `i`.
    fn rank_below(&self, i: usize) -> u32 {
        (self.0 & ((1u64 << i) - 1)).count_ones()
    }

    /// Sign of `dx_I ∧ dx_J` relative to `dx_{I ∪ J}`, or `None` if they overlap.
    fn merge_sign(a: IndexSet, b: IndexSet) -> Option<bool> {
        if a.0 & b.0 != 0 {
            return None;
        }
        // count pairs (i in a, j in b) with i > j
        let inversions: u32 = b.indices().iter().map(|&j| (a.0 >> (j + 1)).count_ones()).sum();
        Some(inversions % 2 == 1)
    }

    /// All `q`-subsets of `{0..=n}` in lexicographic order.
    pub fn all(n: usize, q: usize) -> Vec<IndexSet> {
        fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
            if left == 0 {
                out.push(IndexSet::from_sorted(cur).expect("sorted"));
                return;
            }
            for i in start..=n {
                if n + 1 - i < left {
                    break;
                }
                cur.push(i);
                rec(i + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if q <= n + 1 {
            rec(0, n, q, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("dx{i}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// A homogeneous differential form.
#[derive(Clone, PartialEq, Eq)]
pub struct Form<K: Field> {
    field: K,
    n: usize,
    q: usize,
    degree: i32,
    coeffs: BTreeMap<IndexSet, Polynomial<K>>,
}

impl<K: Field> Form<K> {
    pub fn zero(field: K, n: usize, q: usize, degree: i32) -> Self {
        Self {
            field,
            n,
            q,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A polynomial viewed as a 0-form.
    pub fn function(p: &Polynomial<K>) -> Self {
        let mut f = Self::zero(p.field(), p.n(), 0, p.degree());
        if !p.is_zero() {
            f.coeffs.insert(IndexSet::EMPTY, p.clone());
        }
        f
    }

    /// `dx_i`, of degree one.
    pub fn dx(field: K, n: usize, i: usize) -> Self {
        let mut f = Self::zero(field, n, 1, 1);
        f.coeffs.insert(IndexSet::singleton(i), Polynomial::one(field, n));
        f
    }

    /// `dG = Σ ∂G/∂x_i dx_i`.
    pub fn differential(g: &Polynomial<K>) -> Self {
        Self::function(g).exterior_derivative()
    }

    /// The one-form `Σ a_i dx_i` from its `n + 1` coefficients of degree `d - 1`.
    pub fn one_form(field: K, n: usize, degree: i32, coeffs: Vec<Polynomial<K>>) -> Result<Self> {
        if coeffs.len() != n + 1 {
            return Err(Error::InvalidInstance(format!(
                "a one-form on n={n} needs {} coefficients, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        Self::from_terms(
            field,
            n,
            1,
            degree,
            coeffs.into_iter().enumerate().map(|(i, p)| (vec![i], p)),
        )
    }

    /// Builds a form from index tuples in any order; tuples are sorted with
    /// the matching sign and tuples with a repeated index are dropped.
    pub fn from_terms<I>(field: K, n: usize, q: usize, degree: i32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial<K>)>,
    {
        let mut form = Self::zero(field, n, q, degree);
        for (mut idx, p) in terms {
            if idx.len() != q {
                return Err(Error::GradeMismatch {
                    expected: q,
                    found: idx.len(),
                });
            }
            if idx.iter().any(|&i| i > n) {
                return Err(Error::InvalidInstance(format!("index out of range in {idx:?}")));
            }
            if p.field() != field {
                return Err(Error::FieldMismatch(field.spec().to_string(), p.field().spec().to_string()));
            }
            if p.n() != n {
                return Err(Error::AmbientMismatch(n, p.n()));
            }
            if p.is_zero() {
                continue;
            }
            if p.degree() != degree - q as i32 {
                return Err(Error::DegreeMismatch {
                    expected: degree - q as i32,
                    found: p.degree(),
                });
            }
            let odd = sort_with_parity(&mut idx);
            if idx.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let set = IndexSet::from_sorted(&idx).expect("sorted distinct indices");
            let p = if odd { p.neg() } else { p };
            form.accumulate(set, &p);
        }
        Ok(form)
    }

    pub fn field(&self) -> K {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Form grade.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn coeff_degree(&self) -> i32 {
        self.degree - self.q as i32
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&IndexSet, &Polynomial<K>)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, set: IndexSet) -> Polynomial<K> {
        self.coeffs
            .get(&set)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.field, self.n, self.coeff_degree()))
    }

    /// For a one-form `Σ a_i dx_i`, the coefficients `a_0, ..., a_n`. These
    /// also generate the ideal of the zero scheme of the form.
    pub fn one_form_coeffs(&self) -> Vec<Polynomial<K>> {
        assert_eq!(self.q, 1, "not a one-form");
        (0..=self.n).map(|i| self.coeff(IndexSet::singleton(i))).collect()
    }

    fn accumulate(&mut self, set: IndexSet, p: &Polynomial<K>) {
        if p.is_zero() {
            return;
        }
        let merged = match self.coeffs.remove(&set) {
            Some(old) => &old + p,
            None => p.clone(),
        };
        if !merged.is_zero() {
            self.coeffs.insert(set, merged);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.spec().to_string(),
                other.field.spec().to_string(),
            ));
        }
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.q != other.q {
            return Err(Error::GradeMismatch {
                expected: self.q,
                found: other.q,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (s, p) in &other.coeffs {
            out.accumulate(*s, p);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|p| p.neg(), 0)
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        self.map_coeffs(|p| p.scale(c), 0)
    }

    /// Multiplication by a homogeneous polynomial.
    pub fn mul_poly(&self, g: &Polynomial<K>) -> Self {
        assert_eq!(g.n(), self.n);
        self.map_coeffs(|p| p * g, g.degree())
    }

    fn map_coeffs(&self, f: impl Fn(&Polynomial<K>) -> Polynomial<K>, degree_shift: i32) -> Self {
        let mut out = Self::zero(self.field, self.n, self.q, self.degree + degree_shift);
        for (s, p) in &self.coeffs {
            let v = f(p);
            if !v.is_zero() {
                out.coeffs.insert(*s, v);
            }
        }
        out
    }

    /// Exterior product; grade `q_a + q_b`, degree `d_a + d_b`.
    pub fn checked_wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field, self.n, self.q + other.q, self.degree + other.degree);
        if self.q + other.q > self.n + 1 {
            return Ok(out);
        }
        for (sa, pa) in &self.coeffs {
            for (sb, pb) in &other.coeffs {
                let Some(odd) = IndexSet::merge_sign(*sa, *sb) else {
                    continue;
                };
                let prod = pa * pb;
                let prod = if odd { prod.neg() } else { prod };
                out.accumulate(IndexSet(sa.0 | sb.0), &prod);
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.checked_wedge(other).expect("wedge of incompatible forms")
    }

    /// The exterior derivative; grade `q + 1`, same degree.
    pub fn exterior_derivative(&self) -> Self {
        let mut out = Self::zero(self.field, self.n, self.q + 1, self.degree);
        for (set, p) in &self.coeffs {
            for i in 0..=self.n {
                if set.contains(i) {
                    continue;
                }
                let di = p.derivative(i);
                if di.is_zero() {
                    continue;
                }
                // dx_i ∧ dx_J: move dx_i past the members of J below i
                let di = if set.rank_below(i) % 2 == 1 { di.neg() } else { di };
                out.accumulate(set.insert(i), &di);
            }
        }
        out
    }

    /// Interior product with the radial field `R = Σ x_i ∂/∂x_i`; grade
    /// `q - 1`, same degree.
    pub fn contract_radial(&self) -> Self {
        assert!(self.q >= 1, "cannot contract a 0-form");
        let mut out = Self::zero(self.field, self.n, self.q - 1, self.degree);
        for (set, p) in &self.coeffs {
            for (k, j) in set.indices().into_iter().enumerate() {
                let term = p * &Polynomial::var(self.field, self.n, j);
                let term = if k % 2 == 1 { term.neg() } else { term };
                out.accumulate(set.remove(j), &term);
            }
        }
        out
    }

    /// The coefficient of a 0-form.
    pub fn as_function(&self) -> Polynomial<K> {
        assert_eq!(self.q, 0, "not a 0-form");
        self.coeff(IndexSet::EMPTY)
    }

    /// Whether a one-form descends to projective space, i.e. `Σ a_i x_i = 0`.
    pub fn is_projective(&self) -> Result<bool> {
        if self.q != 1 {
            return Err(Error::GradeMismatch {
                expected: 1,
                found: self.q,
            });
        }
        Ok(self.contract_radial().is_zero())
    }
}

/// Sorts in place and reports whether the permutation was odd.
fn sort_with_parity(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

impl<K: Field> fmt::Debug for Form<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [q={}, deg {}]", self.q, self.degree)
    }
}

impl<K: Field> fmt::Display for Form<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, p)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p}) {s}")?;
        }
        Ok(())
    }
}

impl<K: Field> std::ops::Add for &Form<K> {
    type Output = Form<K>;
    fn add(self, rhs: Self) -> Form<K> {
        self.checked_add(rhs).expect("form addition")
    }
}

impl<K: Field> std::ops::Sub for &Form<K> {
    type Output = Form<K>;
    fn sub(self, rhs: Self) -> Form<K> {
        self.checked_add(&rhs.neg()).expect("form subtraction")
    }
}

impl<K: Field> std::ops::Neg for &Form<K> {
    type Output = Form<K>;
    fn neg(self) -> Form<K> {
        Form::neg(self)
    }
}

/// Coordinates on the space of forms of fixed `(n, q, degree)`: index sets in
/// lexicographic order, each followed by the monomials of degree `degree - q`.
#[derive(Debug, Clone)]
pub struct FormSpace {
    n: usize,
    q: usize,
    degree: i32,
    sets: Vec<IndexSet>,
    basis: MonomialBasis,
}

impl FormSpace {
    pub fn new(n: usize, q: usize, degree: i32) -> Self {
        Self {
            n,
            q,
            degree,
            sets: IndexSet::all(n, q),
            basis: MonomialBasis::new(n, degree - q as i32),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.sets.len() * self.basis.len()
    }

    pub fn monomials(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn coords<K: Field>(&self, form: &Form<K>) -> Vec<K::Elem> {
        assert_eq!((form.n, form.q, form.degree), (self.n, self.q, self.degree));
        let field = form.field;
        let mut out = vec![field.zero(); self.dim()];
        let block = self.basis.len();
        for (k, set) in self.sets.iter().enumerate() {
            if let Some(p) = form.coeffs.get(set) {
                for (m, c) in p.terms() {
                    let pos = self.basis.position(m).expect("monomial of the right degree");
                    out[k * block + pos] = c.clone();
                }
            }
        }
        out
    }

    pub fn from_coords<K: Field>(&self, field: K, coords: &[K::Elem]) -> Form<K> {
        assert_eq!(coords.len(), self.dim());
        let block = self.basis.len();
        let mut out = Form::zero(field, self.n, self.q, self.degree);
        for (k, set) in self.sets.iter().enumerate() {
            let p = Polynomial::from_coords(field, &self.basis, &coords[k * block..(k + 1) * block]);
            if !p.is_zero() {
                out.coeffs.insert(*set, p);
            }
        }
        out
    }

    /// The form with a single unit coordinate.
    pub fn unit<K: Field>(&self, field: K, index: usize) -> Form<K> {
        let mut c = vec![field.zero(); self.dim()];
        c[index] = field.one();
        self.from_coords(field, &c)
    }

    /// Human-readable name of a coordinate, e.g. `x0*x1 dx2`.
    pub fn label(&self, index: usize) -> String {
        let block = self.basis.len();
        format!("{} {}", self.basis.monomials()[index % block], self.sets[index / block])
    }
}

/// `(n+1)·C(n+d-1, n) − C(n+d, n)`, the dimension of projective one-forms of
/// degree `d` counted from the Euler sequence.
pub fn projective_oneform_count(n: usize, d: u32) -> usize {
    if d == 0 {
        return 0;
    }
    let (n64, d64) = (n as u64, u64::from(d));
    ((n64 + 1) * binomial(n64 + d64 - 1, n64) - binomial(n64 + d64, n64)) as usize
}
