//! Dense univariate polynomials with coefficients in a finite field.

use std::fmt;

use crate::ff::{Field, FieldElem};

/// A polynomial over a finite field, little-endian coefficients, trimmed so
/// that the leading coefficient is nonzero (the zero polynomial has an empty
/// coefficient vector).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl FieldPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> FieldPoly {
        while coeffs.last().map(|c| field.is_zero(c)) == Some(true) {
            coeffs.pop();
        }
        FieldPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> FieldPoly {
        FieldPoly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Field) -> FieldPoly {
        FieldPoly {
            field: field.clone(),
            coeffs: vec![field.one()],
        }
    }

    pub fn constant(field: &Field, c: FieldElem) -> FieldPoly {
        FieldPoly::new(field, vec![c])
    }

    /// The monomial T.
    pub fn x(field: &Field) -> FieldPoly {
        FieldPoly {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of T^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .map(|c| *c == self.field.one())
            .unwrap_or(false)
    }

    pub fn add(&self, other: &FieldPoly) -> FieldPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        FieldPoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &FieldPoly) -> FieldPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        FieldPoly::new(f, coeffs)
    }

    pub fn mul(&self, other: &FieldPoly) -> FieldPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return FieldPoly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        FieldPoly::new(f, out)
    }

    pub fn scale(&self, c: &FieldElem) -> FieldPoly {
        let f = &self.field;
        FieldPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn derivative(&self) -> FieldPoly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
            .collect();
        FieldPoly::new(f, coeffs)
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.mul(&acc, x);
            acc = f.add(&acc, c);
        }
        acc
    }

    pub fn monic(&self) -> FieldPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let li = self.field.inv(lead).expect("nonzero leading coefficient");
                self.scale(&li)
            }
        }
    }

    /// Remainder of self modulo `other` (other nonzero).
    pub fn rem(&self, other: &FieldPoly) -> FieldPoly {
        let f = &self.field;
        let d = other.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(other.coeffs.last().unwrap()).unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < d {
                break;
            }
            let q = f.mul(r.coeffs.last().unwrap(), &lead_inv);
            let shift = dr - d;
            let mut coeffs = r.coeffs.clone();
            for (j, oc) in other.coeffs.iter().enumerate() {
                coeffs[shift + j] = f.sub(&coeffs[shift + j], &f.mul(&q, oc));
            }
            r = FieldPoly::new(f, coeffs);
        }
        r
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &FieldPoly) -> FieldPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| format!("{}*T^{}", self.field.fmt_elem(c), i))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_create;

    #[test]
    fn gcd_of_coprime() {
        let f5 = field_create(5, 1, None).unwrap();
        // T^2+T+1 and its derivative 2T+1 are coprime mod 5
        let p = FieldPoly::new(&f5, vec![f5.one(), f5.one(), f5.one()]);
        let d = p.derivative();
        assert_eq!(d.coeffs(), &[f5.one(), f5.from_u64(2)]);
        let g = p.gcd(&d);
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn gcd_detects_repeated_roots() {
        let f5 = field_create(5, 1, None).unwrap();
        // (T-1)^2 = T^2 - 2T + 1
        let p = FieldPoly::new(&f5, vec![f5.one(), f5.from_i64(-2), f5.one()]);
        let g = p.gcd(&p.derivative());
        assert_eq!(g.degree(), Some(1));
    }

    #[test]
    fn eval_horner() {
        let f7 = field_create(7, 1, None).unwrap();
        // T^2 + 2T + 6 at T = 3: 9 + 6 + 6 = 21 = 0 mod 7
        let p = FieldPoly::new(&f7, vec![f7.from_u64(6), f7.from_u64(2), f7.one()]);
        assert_eq!(p.eval(&f7.from_u64(3)), f7.zero());
    }
}
