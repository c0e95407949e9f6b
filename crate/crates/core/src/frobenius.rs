//! Exact checkers for Frobenius characteristic-polynomial data: plainness
//! (all roots units away from p), purity of Weil numbers, and compatibility
//! of a polynomial table with supplied reduction matrices.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::ff::{field_create, Field};
use crate::matgrp::SquareMatrix;
use crate::poly::FieldPoly;
use crate::{Error, Result};

/// Default relative tolerance for the numeric purity check.
pub const PURITY_TOLERANCE: f64 = 1e-9;

/// Coefficient of an [`ExactPolynomial`]: coordinates in the power basis of
/// the base field's generator (a single rational when the base is Q).
pub type ENum = Vec<BigRational>;

/// The coefficient field E: the rationals, or a number field presented by a
/// monic integer minimal polynomial (little-endian, squarefree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseField {
    Rationals,
    NumberField { minpoly: Vec<BigInt> },
}

fn rat_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map(|c| c.is_zero()) == Some(true) {
        v.pop();
    }
    v
}

fn rat_deg(v: &[BigRational]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn rat_rem(f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
    let dg = rat_deg(g).expect("division by zero polynomial");
    let lead = g.last().unwrap().clone();
    let mut r = f.to_vec();
    while let Some(dr) = rat_deg(&r) {
        if dr < dg {
            break;
        }
        let q = r.last().unwrap() / &lead;
        let shift = dr - dg;
        for (j, gc) in g.iter().enumerate() {
            let s = &q * gc;
            r[shift + j] -= s;
        }
        r = rat_trim(r);
    }
    r
}

fn rat_gcd_is_const(f: &[BigRational], g: &[BigRational]) -> bool {
    let mut a = rat_trim(f.to_vec());
    let mut b = rat_trim(g.to_vec());
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    rat_deg(&a) == Some(0)
}

/// Resultant of two rational polynomials (little-endian).
fn resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let f = rat_trim(f.to_vec());
    let g = rat_trim(g.to_vec());
    let (df, dg) = match (rat_deg(&f), rat_deg(&g)) {
        (None, _) | (_, None) => return BigRational::zero(),
        (Some(a), Some(b)) => (a, b),
    };
    if df < dg {
        let sign = if df * dg % 2 == 1 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        return sign * resultant(&g, &f);
    }
    if dg == 0 {
        return num::pow::pow(g[0].clone(), df);
    }
    let r = rat_rem(&f, &g);
    if r.is_empty() {
        return BigRational::zero();
    }
    let dr = rat_deg(&r).unwrap();
    let sign = if df * dg % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    sign * num::pow::pow(g.last().unwrap().clone(), df - dr) * resultant(&g, &r)
}

impl BaseField {
    pub fn number_field(minpoly: Vec<BigInt>) -> Result<BaseField> {
        if minpoly.last().map(|c| c.is_one()) != Some(true) || minpoly.len() < 2 {
            return Err(Error::NotMonic);
        }
        let f: Vec<BigRational> = minpoly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let fp: Vec<BigRational> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        if !rat_gcd_is_const(&f, &fp) {
            return Err(Error::DegenerateField);
        }
        Ok(BaseField::NumberField { minpoly })
    }

    /// Degree of E over Q.
    pub fn ext_degree(&self) -> usize {
        match self {
            BaseField::Rationals => 1,
            BaseField::NumberField { minpoly } => minpoly.len() - 1,
        }
    }

    /// Absolute norm of an element given in power-basis coordinates, via the
    /// resultant with the minimal polynomial.
    pub fn norm(&self, x: &ENum) -> BigRational {
        match self {
            BaseField::Rationals => x.first().cloned().unwrap_or_else(BigRational::zero),
            BaseField::NumberField { minpoly } => {
                let f: Vec<BigRational> = minpoly
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                let g = rat_trim(x.clone());
                if g.is_empty() {
                    return BigRational::zero();
                }
                resultant(&f, &g)
            }
        }
    }
}

/// A monic polynomial with coefficients in the base field E; denominators
/// are expected to be supported on a declared prime p (validated by the
/// plainness checks, not at construction).
#[derive(Clone, Debug)]
pub struct ExactPolynomial {
    base: BaseField,
    coeffs: Vec<ENum>,
}

fn enum_is_one(x: &ENum) -> bool {
    x.first().map(|c| c.is_one()) == Some(true) && x.iter().skip(1).all(|c| c.is_zero())
}

impl ExactPolynomial {
    pub fn new(base: BaseField, coeffs: Vec<ENum>) -> Result<ExactPolynomial> {
        match coeffs.last() {
            Some(c) if enum_is_one(c) => {}
            _ => return Err(Error::NotMonic),
        }
        Ok(ExactPolynomial { base, coeffs })
    }

    /// A monic polynomial over Q from plain rational coefficients.
    pub fn rational(coeffs: Vec<BigRational>) -> Result<ExactPolynomial> {
        ExactPolynomial::new(BaseField::Rationals, coeffs.into_iter().map(|c| vec![c]).collect())
    }

    /// A monic polynomial over Q from integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Result<ExactPolynomial> {
        ExactPolynomial::rational(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn coeffs(&self) -> &[ENum] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> ENum {
        self.coeffs[0].clone()
    }

    /// Product of two monic polynomials over the same base field.
    pub fn mul(&self, other: &ExactPolynomial) -> Result<ExactPolynomial> {
        if self.base != other.base {
            return Err(Error::WrongField);
        }
        if self.base != BaseField::Rationals {
            return Err(Error::WrongField);
        }
        let a: Vec<BigRational> = self.coeffs.iter().map(|c| c[0].clone()).collect();
        let b: Vec<BigRational> = other.coeffs.iter().map(|c| c[0].clone()).collect();
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let s = x * y;
                out[i + j] += s;
            }
        }
        ExactPolynomial::rational(out)
    }

    /// The reversed polynomial T^n P(1/T) / P(0), normalized monic; defined
    /// when the constant term is nonzero. Its roots are the inverses of the
    /// roots of P. Only supported over Q.
    pub fn reversed_monic(&self) -> Result<ExactPolynomial> {
        if self.base != BaseField::Rationals {
            return Err(Error::WrongField);
        }
        let c0 = &self.coeffs[0][0];
        if c0.is_zero() {
            return Err(Error::MalformedInput("zero constant term".into()));
        }
        let rev: Vec<BigRational> = self.coeffs.iter().rev().map(|c| &c[0] / c0).collect();
        ExactPolynomial::rational(rev)
    }
}

fn is_pm_p_power(x: &BigRational, p: u64) -> bool {
    // |x| = p^m for some integer m (possibly negative or zero)
    let pow_of_p = |n: &BigInt| -> bool {
        let p = BigInt::from(p);
        let mut n = n.abs();
        if n.is_zero() {
            return false;
        }
        while (&n % &p).is_zero() {
            n /= &p;
        }
        n.is_one()
    };
    let num = x.numer().abs();
    let den = x.denom().abs();
    (num.is_one() || pow_of_p(&num)) && (den.is_one() || pow_of_p(&den))
}

fn denom_is_p_power(x: &BigRational, p: u64) -> bool {
    let p = BigInt::from(p);
    let mut d = x.denom().abs();
    while (&d % &p).is_zero() {
        d /= &p;
    }
    d.is_one()
}

/// Exact plainness test over Q: monic, coefficients in Z[1/p], constant term
/// a unit of Z[1/p] (that is, +- a power of p, including p^0).
///
/// Monicity makes every root integral over Z[1/p]; the reversed polynomial
/// is monic with Z[1/p] coefficients exactly when P(0) is a unit of Z[1/p],
/// which makes every inverse root integral as well.
pub fn is_plain_rational(poly: &ExactPolynomial, p: u64) -> Result<bool> {
    if poly.base != BaseField::Rationals {
        return Err(Error::WrongField);
    }
    for c in &poly.coeffs {
        if !denom_is_p_power(&c[0], p) {
            return Ok(false);
        }
    }
    Ok(is_pm_p_power(&poly.coeffs[0][0], p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlainStatus {
    PassNecessary,
    Fail(String),
}

/// Necessary conditions for plainness over a number field: coefficient
/// denominators are p-powers and the absolute norm of the constant term is
/// +- a power of p. (The full criterion needs per-prime ideal valuations,
/// which are out of scope; a pass here is only "necessary conditions hold".)
pub fn plain_necessary_numberfield(poly: &ExactPolynomial, p: u64) -> Result<PlainStatus> {
    for c in &poly.coeffs {
        for coord in c {
            if !denom_is_p_power(coord, p) {
                return Ok(PlainStatus::Fail(format!(
                    "coefficient denominator {} not a power of {p}",
                    coord.denom()
                )));
            }
        }
    }
    let norm = poly.base.norm(&poly.constant_term());
    if norm.is_zero() || !is_pm_p_power(&norm, p) {
        return Ok(PlainStatus::Fail(format!(
            "constant-term norm {norm} is not +-p^m for p = {p}"
        )));
    }
    Ok(PlainStatus::PassNecessary)
}

fn poly_eval_c(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Durand-Kerner iteration on a monic complex polynomial; returns the root
/// estimates together with Weierstrass-style error bounds
/// n |f(z_i)| / prod_{j != i} |z_i - z_j|.
fn find_roots(coeffs: &[Complex64]) -> Result<(Vec<Complex64>, Vec<f64>)> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok((vec![], vec![]));
    }
    // Cauchy-style radius bound
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| seed.powu(i as u32 + 1) * radius)
        .collect();
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // perturb coincident estimates
                z[i] += Complex64::new(1e-6 * radius, 1e-6 * radius);
                continue;
            }
            let step = poly_eval_c(coeffs, z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    let mut bounds = vec![0.0; n];
    for i in 0..n {
        let mut denom = 1.0f64;
        for j in 0..n {
            if j != i {
                denom *= (z[i] - z[j]).norm();
            }
        }
        if denom == 0.0 {
            return Err(Error::RootFindingFailure(
                "coincident root estimates".into(),
            ));
        }
        bounds[i] = n as f64 * poly_eval_c(coeffs, z[i]).norm() / denom;
    }
    Ok((z, bounds))
}

/// All complex roots of the polynomial across every complex embedding of E.
fn all_complex_roots(poly: &ExactPolynomial) -> Result<Vec<(Complex64, f64)>> {
    let to_c = |r: &BigRational| -> f64 {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    };
    let embeddings: Vec<Complex64> = match &poly.base {
        BaseField::Rationals => vec![Complex64::new(0.0, 0.0)],
        BaseField::NumberField { minpoly } => {
            let cs: Vec<Complex64> = minpoly
                .iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect();
            let (roots, bounds) = find_roots(&cs)?;
            if bounds.iter().any(|&b| b > 1e-8) {
                return Err(Error::RootFindingFailure(
                    "minimal-polynomial roots not certified".into(),
                ));
            }
            roots
        }
    };
    let mut out = vec![];
    for theta in embeddings {
        let cs: Vec<Complex64> = poly
            .coeffs
            .iter()
            .map(|coord| {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in coord.iter().rev() {
                    acc = acc * theta + Complex64::new(to_c(c), 0.0);
                }
                acc
            })
            .collect();
        let (roots, bounds) = find_roots(&cs)?;
        out.extend(roots.into_iter().zip(bounds));
    }
    Ok(out)
}

/// Verdict of a purity check.
#[derive(Clone, Debug)]
pub struct PurityReport {
    pub weight: i64,
    pub q: u64,
    pub tolerance: f64,
    /// max over embeddings and roots of | |root| - Q^{w/2} | / Q^{w/2}
    pub max_deviation: f64,
    pub pass: bool,
    /// Exact check |N(P(0))| = Q^{total_degree * w / 2}, evaluated when the
    /// exponent is an integer.
    pub norm_identity: Option<bool>,
}

/// Numeric purity check with an exact norm cross-check: every complex root
/// under every embedding has absolute value Q^{w/2} within the relative
/// tolerance.
pub fn purity_check(
    poly: &ExactPolynomial,
    q: u64,
    weight: i64,
    tolerance: f64,
) -> Result<PurityReport> {
    let qw = (q as f64).powf(weight as f64 / 2.0);
    let roots = all_complex_roots(poly)?;
    let mut max_deviation = 0.0f64;
    for (z, bound) in &roots {
        if *bound > tolerance / 2.0 * qw.max(1.0) {
            return Err(Error::RootFindingFailure(format!(
                "root error bound {bound:.3e} exceeds half the tolerance"
            )));
        }
        let dev = (z.norm() - qw).abs() / qw;
        max_deviation = max_deviation.max(dev);
    }
    let total_degree = poly.degree() as i64 * poly.base.ext_degree() as i64;
    let norm_identity = if (total_degree * weight) % 2 == 0 {
        let exp = (total_degree * weight / 2) as u32;
        let expected = BigRational::from_integer(num::pow::pow(BigInt::from(q), exp as usize));
        let norm = poly.base.norm(&poly.constant_term()).abs();
        Some(norm == expected)
    } else {
        None
    };
    Ok(PurityReport {
        weight,
        q,
        tolerance,
        max_deviation,
        pass: max_deviation <= tolerance,
        norm_identity,
    })
}

/// Reduce a monic polynomial over Q into F_ell; denominators must be
/// invertible mod ell.
pub fn reduce_mod(poly: &ExactPolynomial, p: u64, ell: u64) -> Result<FieldPoly> {
    if poly.base != BaseField::Rationals {
        return Err(Error::WrongField);
    }
    if ell == p {
        return Err(Error::EllEqualsP(p));
    }
    let field = field_create(ell, 1, None)?;
    let ell_big = BigInt::from(ell);
    let to_f = |r: &BigRational| -> Result<crate::ff::FieldElem> {
        let num = ((r.numer() % &ell_big) + &ell_big) % &ell_big;
        let den = ((r.denom() % &ell_big) + &ell_big) % &ell_big;
        let den_u = den.to_u64().unwrap();
        if den_u % ell == 0 {
            return Err(Error::BadDenominator(ell));
        }
        let num_e = field.from_u64(num.to_u64().unwrap());
        let den_inv = field.inv(&field.from_u64(den_u)).unwrap();
        Ok(field.mul(&num_e, &den_inv))
    };
    let coeffs: Result<Vec<_>> = poly.coeffs.iter().map(|c| to_f(&c[0])).collect();
    Ok(FieldPoly::new(&field, coeffs?))
}

/// One row of a Frobenius table.
#[derive(Clone, Debug)]
pub struct FrobEntry {
    pub id: String,
    pub residue_degree: u32,
    pub q: u64,
    pub poly: ExactPolynomial,
}

/// A table of Frobenius characteristic polynomials over closed points.
#[derive(Clone, Debug)]
pub struct FrobTable {
    pub p: u64,
    pub base: BaseField,
    pub degree: usize,
    pub entries: Vec<FrobEntry>,
}

impl FrobTable {
    pub fn entry(&self, id: &str) -> Result<&FrobEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEntry(id.to_string()))
    }
}

/// Compare the reduction of a table entry against the characteristic
/// polynomial of a supplied matrix over F_{ell^k}.
pub fn compat_check(table: &FrobTable, point_id: &str, m: &SquareMatrix) -> Result<bool> {
    let entry = table.entry(point_id)?;
    let field: &Field = m.field();
    let reduced = reduce_mod(&entry.poly, table.p, field.ell())?;
    // lift the prime-field reduction into the matrix's field
    let lifted = FieldPoly::new(
        field,
        (0..=entry.poly.degree())
            .map(|i| field.from_u64(reduced.coeff(i).coeffs()[0]))
            .collect(),
    );
    Ok(m.charpoly() == lifted)
}

/// Per-entry outcome of table validation.
#[derive(Clone, Debug)]
pub struct EntryReport {
    pub id: String,
    pub degree_ok: bool,
    pub q_ok: bool,
    pub plain_ok: bool,
    pub plain_necessary_only: bool,
    pub purity: Option<PurityReport>,
    pub witnesses: Vec<String>,
}

impl EntryReport {
    pub fn pass(&self) -> bool {
        self.degree_ok
            && self.q_ok
            && self.plain_ok
            && self
                .purity
                .as_ref()
                .map(|p| p.pass && p.norm_identity != Some(false))
                .unwrap_or(true)
    }
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub entries: Vec<EntryReport>,
    pub pass: bool,
}

/// Validate every entry of a table: degree uniformity, q_x a p-power with
/// the declared residue degree, plainness (exact over Q, necessary
/// conditions otherwise), and purity at the given weight if supplied.
pub fn validate_table(table: &FrobTable, weight: Option<i64>) -> Result<TableReport> {
    let mut entries = vec![];
    for e in &table.entries {
        let mut witnesses = vec![];
        let degree_ok = e.poly.degree() == table.degree;
        if !degree_ok {
            witnesses.push(format!(
                "degree {} differs from table degree {}",
                e.poly.degree(),
                table.degree
            ));
        }
        let q_ok = e.q == (table.p as u128).pow(e.residue_degree).min(u64::MAX as u128) as u64;
        if !q_ok {
            witnesses.push(format!(
                "q = {} is not p^residue_degree = {}^{}",
                e.q, table.p, e.residue_degree
            ));
        }
        let (plain_ok, plain_necessary_only) = match &table.base {
            BaseField::Rationals => (is_plain_rational(&e.poly, table.p)?, false),
            _ => match plain_necessary_numberfield(&e.poly, table.p)? {
                PlainStatus::PassNecessary => (true, true),
                PlainStatus::Fail(w) => {
                    witnesses.push(format!("plainness: {w}"));
                    (false, true)
                }
            },
        };
        if !plain_ok && witnesses.is_empty() {
            witnesses.push("plainness failed".to_string());
        }
        let purity = match weight {
            Some(w) => {
                let rep = purity_check(&e.poly, e.q, w, PURITY_TOLERANCE)?;
                if !rep.pass {
                    witnesses.push(format!(
                        "purity: max deviation {:.3e} at weight {w}",
                        rep.max_deviation
                    ));
                }
                if rep.norm_identity == Some(false) {
                    witnesses.push("purity: exact norm identity failed".to_string());
                }
                Some(rep)
            }
            None => None,
        };
        entries.push(EntryReport {
            id: e.id.clone(),
            degree_ok,
            q_ok,
            plain_ok,
            plain_necessary_only,
            purity,
            witnesses,
        });
    }
    let pass = entries.iter().all(|e| e.pass());
    Ok(TableReport { entries, pass })
}
