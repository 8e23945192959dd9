//! Coefficient fields.
//!
//! A [`Field`] is a small context value (the rationals carry nothing, a prime
//! field carries its modulus) that performs arithmetic on its element type.
//! Polynomials, forms and matrices are generic over it.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus for prime-field work, 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Half-width of the integer range used for random rational coefficients.
pub const RATIONAL_COEFF_BOUND: i64 = 10_000;

/// Which field a computation runs over.
///
/// Serializes as `"rational"` or `{"prime": p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Checks that a prime modulus is prime and exceeds `max_degree`.
    pub fn validate(&self, max_degree: u32) -> Result<()> {
        match *self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime(p) => {
                if p >= 1 << 62 {
                    return Err(Error::InvalidField(format!("modulus {p} exceeds 2^62")));
                }
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                if p <= u64::from(max_degree) {
                    return Err(Error::InvalidField(format!(
                        "modulus {p} must exceed the degree {max_degree}"
                    )));
                }
                Ok(())
            }
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Parses `rational`, `prime` (default modulus) or `prime:P`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rational" | "Q" | "q" => Ok(FieldSpec::Rational),
            "prime" => Ok(FieldSpec::Prime(DEFAULT_PRIME)),
            _ => {
                let p = s
                    .strip_prefix("prime:")
                    .ok_or_else(|| Error::InvalidField(format!("unknown field `{s}`")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad modulus `{p}`")))?;
                Ok(FieldSpec::Prime(p))
            }
        }
    }
}

/// Arithmetic context for a coefficient field.
pub trait Field: Copy + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    /// Reduces a rational into this field, `None` when the denominator vanishes.
    fn from_rational(&self, v: &BigRational) -> Option<Self::Elem> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }

    /// Canonical decimal form: `a` or `a/b` for rationals, `0..p-1` for primes.
    fn format(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let r = parse_rational(s)?;
        self.from_rational(&r)
            .ok_or_else(|| Error::Parse(format!("`{s}` has a denominator divisible by the modulus")))
    }

    /// A uniformly drawn coefficient: an integer in
    /// `[-RATIONAL_COEFF_BOUND, RATIONAL_COEFF_BOUND]` over the rationals, any
    /// residue over a prime field.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Parses `"a"` or `"a/b"` (optional sign, decimal digits).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed coefficient `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

/// The field of rational numbers with arbitrary-precision elements.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> Option<BigRational> {
        Some(v.clone())
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let v = rng.random_range(-RATIONAL_COEFF_BOUND..=RATIONAL_COEFF_BOUND);
        BigRational::from_integer(BigInt::from(v))
    }
}

/// The prime field Z/pZ with a runtime modulus below 2^62.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds the field after checking that `p` is prime.
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::Prime(p).validate(0)?;
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(i128::from(self.p)) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(i128::from(v))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b, n);
            }
            b = mulmod(b, b, n);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Reduces an integer-valued rational to a prime field. Used when comparing
/// runs of the same instance over both fields.
pub fn reduce_integer(field: &PrimeField, v: &BigRational) -> Option<u64> {
    if !v.denom().is_one() {
        return None;
    }
    Some(field.from_bigint(v.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 7, 101, 65_537, DEFAULT_PRIME, 1_000_000_007];
        let composites = [0u64, 1, 4, 9, 561, 1_105, 2_147_483_649, 3_215_031_751];
        assert!(primes.iter().all(|&p| is_prime(p)));
        assert!(composites.iter().all(|&c| !is_prime(c)));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("rational".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("prime".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(DEFAULT_PRIME));
        assert_eq!("prime:101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(101));
        assert!("prime:x".parse::<FieldSpec>().is_err());
        assert!("complex".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::Prime(7).validate(6).is_ok());
        assert!(FieldSpec::Prime(7).validate(7).is_err());
        assert!(FieldSpec::Prime(15).validate(2).is_err());
        assert!(FieldSpec::Rational.validate(100).is_ok());
    }

    #[test]
    fn field_spec_json() {
        let j = serde_json::to_string(&FieldSpec::Prime(101)).unwrap();
        assert_eq!(j, r#"{"prime":101}"#);
        assert_eq!(serde_json::to_string(&FieldSpec::Rational).unwrap(), r#""rational""#);
        let back: FieldSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, FieldSpec::Prime(101));
    }

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.add(&100, &5), 4);
        assert_eq!(f.sub(&3, &5), 99);
        assert_eq!(f.neg(&0), 0);
        let i = f.inv(&7).unwrap();
        assert_eq!(f.mul(&7, &i), 1);
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.parse("1/2").unwrap(), 51);
        assert!(f.parse("1/101").is_err());
    }

    #[test]
    fn rational_format_roundtrip() {
        let q = Rationals;
        for s in ["0", "-3", "7/2", "-5/12"] {
            let v = q.parse(s).unwrap();
            assert_eq!(q.format(&v), s);
        }
        assert_eq!(q.format(&q.parse("4/2").unwrap()), "2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("abc").is_err());
    }
}
