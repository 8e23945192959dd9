//! Sparse homogeneous polynomials in `x_0, ..., x_n` with exact coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector of a monomial in `n + 1` variables.
///
/// Ordered by graded reverse lexicographic order with `x_0 > x_1 > ... > x_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // a smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `k` in `n + 1` variables, in decreasing grevlex order.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(prefix, remaining - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(n + 1), k, n + 1, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the space of degree-`k` forms in `n + 1` variables.
pub fn homogeneous_dim(n: usize, k: i32) -> usize {
    if k < 0 {
        return 0;
    }
    binomial(n as u64 + k as u64, n as u64) as usize
}

/// Monomials of one degree with a position lookup.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    n: usize,
    degree: i32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: i32) -> Self {
        let monomials = if degree < 0 {
            Vec::new()
        } else {
            monomials_of_degree(n, degree as u32)
        };
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            n,
            degree,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A homogeneous polynomial of declared degree. The zero polynomial keeps
/// its declared degree, which may be negative (e.g. the derivative of a
/// constant).
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<K: Field> {
    field: K,
    n: usize,
    degree: i32,
    terms: BTreeMap<Monomial, K::Elem>,
}

impl<K: Field> Polynomial<K> {
    pub fn zero(field: K, n: usize, degree: i32) -> Self {
        Self {
            field,
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: K, n: usize, c: K::Elem) -> Self {
        Self::monomial(field, Monomial::one(n + 1), c)
    }

    pub fn one(field: K, n: usize) -> Self {
        Self::constant(field, n, field.one())
    }

    /// The coordinate function `x_i`.
    pub fn var(field: K, n: usize, i: usize) -> Self {
        assert!(i <= n, "variable x{i} out of range for n={n}");
        Self::monomial(field, Monomial::var(n + 1, i), field.one())
    }

    pub fn monomial(field: K, m: Monomial, c: K::Elem) -> Self {
        let n = m.nvars() - 1;
        let degree = m.degree() as i32;
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(m, c);
        }
        Self {
            field,
            n,
            degree,
            terms,
        }
    }

    /// Builds a polynomial from terms, merging repeated monomials and
    /// dropping zero coefficients.
    pub fn from_terms<I>(field: K, n: usize, degree: i32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, K::Elem)>,
    {
        let mut map: BTreeMap<Monomial, K::Elem> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != n + 1 {
                return Err(Error::AmbientMismatch(n, m.nvars().saturating_sub(1)));
            }
            if m.degree() as i32 != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: m.degree() as i32,
                });
            }
            accumulate(&field, &mut map, m, c);
        }
        Ok(Self {
            field,
            n,
            degree,
            terms: map,
        })
    }

    /// Reads a coefficient vector over `basis`.
    pub fn from_coords(field: K, basis: &MonomialBasis, coords: &[K::Elem]) -> Self {
        assert_eq!(basis.len(), coords.len());
        let terms = basis
            .monomials()
            .iter()
            .zip(coords)
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self {
            field,
            n: basis.n(),
            degree: basis.degree(),
            terms,
        }
    }

    pub fn field(&self) -> K {
        self.field
    }

    /// Number of variables minus one.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K::Elem)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &K::Elem)> {
        self.terms.iter().next_back()
    }

    /// Coefficient vector over `basis` (which must have the same degree).
    pub fn coords(&self, basis: &MonomialBasis) -> Vec<K::Elem> {
        debug_assert_eq!(basis.degree(), self.degree);
        let mut out = vec![self.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let pos = basis.position(m).expect("monomial outside basis");
            out[pos] = c.clone();
        }
        out
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
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&self.field, &mut terms, m.clone(), c.clone());
        }
        Ok(Self { terms, ..self.clone_shell() })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(f, &mut terms, ma.mul(mb), f.mul(ca, cb));
            }
        }
        Ok(Self {
            field: self.field,
            n: self.n,
            degree: self.degree + other.degree,
            terms,
        })
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return self.clone_shell();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), f.mul(v, c)))
            .collect();
        Self { terms, ..self.clone_shell() }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), f.neg(v))).collect();
        Self { terms, ..self.clone_shell() }
    }

    /// `∂/∂x_i`, of degree one less.
    pub fn derivative(&self, i: usize) -> Self {
        let f = &self.field;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            accumulate(f, &mut terms, Monomial(exps), f.mul(c, &f.from_i64(i64::from(e))));
        }
        Self {
            field: self.field,
            n: self.n,
            degree: self.degree - 1,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field, self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder by a single polynomial under grevlex.
    ///
    /// The remainder is zero exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor
            .leading_term()
            .ok_or_else(|| Error::Internal("division by the zero polynomial".into()))?;
        let f = &self.field;
        let lc_inv = f.inv(lc).expect("nonzero leading coefficient");
        let mut quotient = Self::zero(self.field, self.n, self.degree - divisor.degree);
        let mut remainder = self.clone_shell();
        let mut rest = self.clone();
        while let Some((m, c)) = rest.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            match lm.quotient_of(&m) {
                Some(t) => {
                    let coeff = f.mul(&c, &lc_inv);
                    let step = Self::monomial(self.field, t, coeff);
                    rest = rest.checked_sub(&(&step * divisor))?;
                    quotient = quotient.checked_add(&step)?;
                }
                None => {
                    rest.terms.remove(&m);
                    accumulate(f, &mut remainder.terms, m, c);
                }
            }
        }
        Ok((quotient, remainder))
    }

    /// `Σ x_i ∂P/∂x_i`, which equals `deg(P) · P` for homogeneous `P`.
    pub fn euler_contraction(&self) -> Self {
        let mut acc = self.clone_shell();
        for i in 0..=self.n {
            let term = &Self::var(self.field, self.n, i) * &self.derivative(i);
            acc = &acc + &term;
        }
        acc
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<L: Field>(&self, target: L, mut f: impl FnMut(&K::Elem) -> L::Elem) -> Polynomial<L> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            accumulate(&target, &mut terms, m.clone(), f(c));
        }
        Polynomial {
            field: target,
            n: self.n,
            degree: self.degree,
            terms,
        }
    }

    fn clone_shell(&self) -> Self {
        Self::zero(self.field, self.n, self.degree)
    }
}

fn accumulate<K: Field>(field: &K, map: &mut BTreeMap<Monomial, K::Elem>, m: Monomial, c: K::Elem) {
    use std::collections::btree_map::Entry;
    if field.is_zero(&c) {
        return;
    }
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = field.add(o.get(), &c);
            if field.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [deg {}]", self.degree)
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", self.field.format(c), m)?;
        }
        Ok(())
    }
}

// Operator forms panic on incompatible operands; use the `checked_*`
// methods where mismatches are possible.
impl<K: Field> std::ops::Add for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: Self) -> Polynomial<K> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<K: Field> std::ops::Sub for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: Self) -> Polynomial<K> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<K: Field> std::ops::Mul for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: Self) -> Polynomial<K> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<K: Field> std::ops::Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        Polynomial::neg(self)
    }
}

/// Product of a list of polynomials; the empty product is `1`.
pub fn product<'a, K: Field>(field: K, n: usize, factors: impl IntoIterator<Item = &'a Polynomial<K>>) -> Polynomial<K> {
    factors
        .into_iter()
        .fold(Polynomial::one(field, n), |acc, p| &acc * p)
}

/// A dense random polynomial drawn from an explicit generator.
///
/// Every monomial of degree `k` receives an independent draw from
/// [`Field::random`]; an all-zero draw is rejected and redrawn.
pub fn random_poly_with<K: Field, R: Rng + ?Sized>(rng: &mut R, n: usize, k: u32, field: K) -> Result<Polynomial<K>> {
    if k == 0 {
        return Err(Error::InvalidInstance("random polynomials must have degree >= 1".into()));
    }
    let basis = monomials_of_degree(n, k);
    loop {
        let terms: Vec<_> = basis.iter().map(|m| (m.clone(), field.random(rng))).collect();
        let p = Polynomial::from_terms(field, n, k as i32, terms)?;
        if !p.is_zero() {
            return Ok(p);
        }
    }
}

/// Seeded dense random polynomial; identical arguments give identical output.
pub fn random_poly<K: Field>(n: usize, k: u32, field: K, seed: u64) -> Result<Polynomial<K>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poly_with(&mut rng, n, k, field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn x(n: usize, i: usize) -> Polynomial<Rationals> {
        Polynomial::var(Rationals, n, i)
    }

    #[test]
    fn monomial_enumeration_counts_and_order() {
        let ms = monomials_of_degree(1, 2);
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x0^2", "x0*x1", "x1^2"]);
        assert_eq!(monomials_of_degree(3, 2).len(), 10);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::one(3)]);
        for n in 0..4 {
            for k in 0..5 {
                let ms = monomials_of_degree(n, k);
                assert_eq!(ms.len() as u64, binomial((n as u64) + u64::from(k), n as u64));
                assert!(ms.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn grevlex_order() {
        // x1^2 > x0*x2 in grevlex (x2 exponent smaller on the left)
        let a = Monomial::new(vec![0, 2, 0]);
        let b = Monomial::new(vec![1, 0, 1]);
        assert!(a > b);
        let ms = monomials_of_degree(2, 2);
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x2^2"]);
    }

    #[test]
    fn basic_arithmetic() {
        let (x0, x1) = (x(1, 0), x(1, 1));
        let prod = &x0 * &x1;
        assert_eq!(prod.to_string(), "1*x0*x1");
        let p = &(&x0 * &x0) * &x1;
        let dp = p.derivative(0);
        let expected = (&x0 * &x1).scale(&q(2));
        assert_eq!(dp, expected);
        let s = &(&x0 + &x1) + &x1.neg();
        assert_eq!(s, x0);
    }

    #[test]
    fn mismatches_are_errors() {
        let x0 = x(1, 0);
        let sq = &x0 * &x0;
        assert!(matches!(x0.checked_add(&sq), Err(Error::DegreeMismatch { .. })));
        assert!(matches!(x0.checked_add(&x(2, 0)), Err(Error::AmbientMismatch(1, 2))));
        let xp = Polynomial::var(PrimeField::new(7).unwrap(), 1, 0);
        let xp2 = Polynomial::var(PrimeField::new(11).unwrap(), 1, 0);
        assert!(matches!(xp.checked_mul(&xp2), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn zero_keeps_degree() {
        let c = Polynomial::constant(Rationals, 2, q(5));
        let d = c.derivative(1);
        assert!(d.is_zero());
        assert_eq!(d.degree(), -1);
        let z = &x(2, 0) - &x(2, 0);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 1);
    }

    #[test]
    fn division_by_single_polynomial() {
        let n = 2;
        let g = &x(n, 0) + &x(n, 2).scale(&q(3));
        let h = &(&x(n, 1) * &x(n, 1)) - &(&x(n, 0) * &x(n, 2));
        let f = &g * &h;
        let (quo, rem) = f.div_rem(&g).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quo, h);
        let f2 = &f + &(&x(n, 1) * &(&x(n, 1) * &x(n, 1)));
        let (quo2, rem2) = f2.div_rem(&g).unwrap();
        assert!(!rem2.is_zero());
        assert_eq!(&(&quo2 * &g) + &rem2, f2);
    }

    #[test]
    fn random_poly_rejects_constants_and_is_deterministic() {
        let f = PrimeField::default();
        assert!(random_poly(3, 0, f, 1).is_err());
        let a = random_poly(3, 2, f, 42).unwrap();
        let b = random_poly(3, 2, f, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 2);
        let r = random_poly(2, 3, Rationals, 9).unwrap();
        for (_, c) in r.terms() {
            assert!(c.numer().magnitude() <= &num_bigint::BigUint::from(10_000u32));
            assert!(c.is_integer());
        }
    }

    #[test]
    fn coords_roundtrip() {
        let f = PrimeField::default();
        let p = random_poly(2, 3, f, 5).unwrap();
        let basis = MonomialBasis::new(2, 3);
        let c = p.coords(&basis);
        assert_eq!(Polynomial::from_coords(f, &basis, &c), p);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(homogeneous_dim(3, -1), 0);
        assert_eq!(homogeneous_dim(3, 2), 10);
    }
}
