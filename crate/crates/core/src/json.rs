//! JSON documents for polynomials, forms and instances.
//!
//! Coefficients are written as decimal strings (`"3"`, `"-7/2"`) so that
//! rationals and large residues survive a round trip exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::forms::Form;
use crate::logarithmic::{DegreeVector, LogInstance};
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub degree: i32,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    /// Terms in decreasing grevlex order.
    pub fn from_poly<K: Field>(p: &Polynomial<K>) -> Self {
        let f = p.field();
        Self {
            n: p.n(),
            degree: p.degree(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exps: m.exponents().to_vec(),
                    coeff: f.format(c),
                })
                .collect(),
        }
    }

    pub fn to_poly<K: Field>(&self, field: K) -> Result<Polynomial<K>> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((Monomial::new(t.exps.clone()), field.parse(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(field, self.n, self.degree, terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermJson {
    #[serde(rename = "J")]
    pub indices: Vec<usize>,
    pub poly: PolyJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub n: usize,
    pub q: usize,
    pub degree: i32,
    pub coeffs: Vec<FormTermJson>,
}

impl FormJson {
    pub fn from_form<K: Field>(w: &Form<K>) -> Self {
        Self {
            n: w.n(),
            q: w.q(),
            degree: w.degree(),
            coeffs: w
                .coeffs()
                .map(|(set, p)| FormTermJson {
                    indices: set.indices(),
                    poly: PolyJson::from_poly(p),
                })
                .collect(),
        }
    }

    pub fn to_form<K: Field>(&self, field: K) -> Result<Form<K>> {
        let terms = self
            .coeffs
            .iter()
            .map(|t| Ok((t.indices.clone(), t.poly.to_poly(field)?)))
            .collect::<Result<Vec<_>>>()?;
        Form::from_terms(field, self.n, self.q, self.degree, terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub n: usize,
    pub field: FieldSpec,
    pub degrees: Vec<u32>,
    pub lambda: Vec<String>,
    pub polys: Vec<PolyJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceJson {
    pub fn from_instance<K: Field>(inst: &LogInstance<K>) -> Self {
        let f = inst.field();
        Self {
            n: inst.n(),
            field: f.spec(),
            degrees: inst.degrees().parts().to_vec(),
            lambda: inst.lambda().iter().map(|l| f.format(l)).collect(),
            polys: inst.polys().iter().map(PolyJson::from_poly).collect(),
            seed: inst.seed(),
        }
    }

    /// Builds the instance over `field`, which must match the declared field.
    pub fn to_instance<K: Field>(&self, field: K) -> Result<LogInstance<K>> {
        if field.spec() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), field.spec().to_string()));
        }
        let degrees = DegreeVector::new(self.degrees.clone())?;
        let lambda = self
            .lambda
            .iter()
            .map(|s| field.parse(s))
            .collect::<Result<Vec<_>>>()?;
        let polys = self
            .polys
            .iter()
            .map(|p| {
                if p.n != self.n {
                    return Err(Error::AmbientMismatch(self.n, p.n));
                }
                p.to_poly(field)
            })
            .collect::<Result<Vec<_>>>()?;
        LogInstance::new(field, self.n, degrees, lambda, polys, self.seed)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_pretty_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }
}
