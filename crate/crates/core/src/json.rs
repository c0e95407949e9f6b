//! Serde schemas for the JSON interchange formats, plus conversions to the
//! internal types. All formats carry an optional `"schema": 1` marker.

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::ff::{field_create, Field, FieldElem};
use crate::frobenius::{BaseField, ENum, ExactPolynomial, FrobEntry, FrobTable};
use crate::matgrp::SquareMatrix;
use crate::rootdata::{RootSystem, SemisimpleSystem, SimpleType};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldJson {
    pub ell: u64,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u64>>,
}

impl FieldJson {
    pub fn to_field(&self) -> Result<Field> {
        field_create(self.ell, self.degree, self.modulus.clone())
    }

    pub fn from_field(f: &Field) -> FieldJson {
        FieldJson {
            ell: f.ell(),
            degree: f.degree(),
            modulus: Some(f.modulus().to_vec()),
        }
    }
}

/// A field element: either a bare residue (prime fields) or a coordinate
/// array in the power basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Int(u64),
    Coords(Vec<u64>),
}

impl ElemJson {
    pub fn to_elem(&self, field: &Field) -> FieldElem {
        match self {
            ElemJson::Int(c) => field.from_u64(*c),
            ElemJson::Coords(cs) => field.elem(cs),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<FieldJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub rows: Vec<Vec<ElemJson>>,
}

impl MatrixJson {
    /// Convert, inheriting field and dimension from the enclosing object
    /// when absent.
    pub fn to_matrix(&self, field: Option<&Field>, n: Option<usize>) -> Result<SquareMatrix> {
        let field = match (&self.field, field) {
            (Some(fj), _) => fj.to_field()?,
            (None, Some(f)) => f.clone(),
            (None, None) => {
                return Err(Error::MalformedInput(
                    "matrix is missing a field descriptor".into(),
                ))
            }
        };
        let n = self.n.or(n).unwrap_or(self.rows.len());
        if self.rows.len() != n || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedInput(format!(
                "matrix rows do not form an {n}x{n} square"
            )));
        }
        let rows: Vec<Vec<FieldElem>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_elem(&field)).collect())
            .collect();
        SquareMatrix::from_rows(&field, &rows)
    }

    pub fn from_matrix(m: &SquareMatrix) -> MatrixJson {
        MatrixJson {
            field: Some(FieldJson::from_field(m.field())),
            n: Some(m.dim()),
            rows: (0..m.dim())
                .map(|i| {
                    (0..m.dim())
                        .map(|j| ElemJson::Coords(m.at(i, j).coeffs().to_vec()))
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub schema: Option<u32>,
    pub field: FieldJson,
    pub n: usize,
    pub generators: Vec<MatrixJson>,
}

impl GroupJson {
    pub fn to_generators(&self) -> Result<(Field, usize, Vec<SquareMatrix>)> {
        let field = self.field.to_field()?;
        let gens: Result<Vec<SquareMatrix>> = self
            .generators
            .iter()
            .map(|m| m.to_matrix(Some(&field), Some(self.n)))
            .collect();
        Ok((field, self.n, gens?))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub stype: String,
    pub rank: usize,
}

impl RootSystemJson {
    pub fn to_system(&self) -> Result<RootSystem> {
        RootSystem::new(SimpleType::parse(&self.stype)?, self.rank)
    }
}

/// Either a single irreducible system or a product of them.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemJson {
    One(RootSystemJson),
    Many(Vec<RootSystemJson>),
}

impl SystemJson {
    pub fn to_semisimple(&self) -> Result<SemisimpleSystem> {
        let factors: Result<Vec<RootSystem>> = match self {
            SystemJson::One(s) => vec![s.to_system()].into_iter().collect(),
            SystemJson::Many(ss) => ss.iter().map(|s| s.to_system()).collect(),
        };
        Ok(SemisimpleSystem::new(factors?))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepWeightsJson {
    pub system: SystemJson,
    pub weights: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightsCheckJson {
    pub weights: Vec<Vec<i64>>,
    pub phi: Vec<Vec<i64>>,
    pub ell: u64,
}

/// Frobenius-table coefficient: a `[num, den]` pair over Q, or a vector of
/// such pairs (power-basis coordinates) over a number field.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Rational([i64; 2]),
    Vector(Vec<[i64; 2]>),
}

impl CoeffJson {
    fn to_enum(&self, ext_degree: usize) -> Result<ENum> {
        let pair = |p: &[i64; 2]| -> Result<BigRational> {
            if p[1] == 0 {
                return Err(Error::MalformedInput("zero denominator".into()));
            }
            Ok(BigRational::new(BigInt::from(p[0]), BigInt::from(p[1])))
        };
        let mut v: ENum = match self {
            CoeffJson::Rational(p) => vec![pair(p)?],
            CoeffJson::Vector(ps) => ps.iter().map(pair).collect::<Result<_>>()?,
        };
        if v.len() > ext_degree {
            return Err(Error::MalformedInput(format!(
                "coefficient has {} coordinates in a degree-{ext_degree} field",
                v.len()
            )));
        }
        v.resize(ext_degree, BigRational::new(BigInt::from(0), BigInt::from(1)));
        Ok(v)
    }
}

/// The coefficient field of a table: the string "Q" or a minimal polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableFieldJson {
    Named(String),
    NumberField { minpoly: Vec<i64> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrobEntryJson {
    pub id: String,
    pub residue_degree: u32,
    pub q: u64,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrobTableJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub schema: Option<u32>,
    pub p: u64,
    pub field: TableFieldJson,
    pub degree: usize,
    pub entries: Vec<FrobEntryJson>,
}

impl FrobTableJson {
    pub fn to_table(&self) -> Result<FrobTable> {
        let base = match &self.field {
            TableFieldJson::Named(s) if s == "Q" => BaseField::Rationals,
            TableFieldJson::Named(s) => {
                return Err(Error::MalformedInput(format!("unknown field name {s:?}")))
            }
            TableFieldJson::NumberField { minpoly } => {
                BaseField::number_field(minpoly.iter().map(|&c| BigInt::from(c)).collect())?
            }
        };
        let ext = base.ext_degree();
        let entries: Result<Vec<FrobEntry>> = self
            .entries
            .iter()
            .map(|e| {
                let coeffs: Result<Vec<ENum>> =
                    e.coeffs.iter().map(|c| c.to_enum(ext)).collect();
                Ok(FrobEntry {
                    id: e.id.clone(),
                    residue_degree: e.residue_degree,
                    q: e.q,
                    poly: ExactPolynomial::new(base.clone(), coeffs?)?,
                })
            })
            .collect();
        Ok(FrobTable {
            p: self.p,
            base,
            degree: self.degree,
            entries: entries?,
        })
    }
}
