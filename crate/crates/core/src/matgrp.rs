//! Dense exact matrices over finite fields, the truncated exponential and
//! logarithm between nilpotents and unipotents, t-power maps, and finite
//! matrix-group closure.

use std::collections::VecDeque;
use std::fmt;

use indexmap::IndexSet;

use crate::ff::{same_field, Embedding, Field, FieldElem};
use crate::poly::FieldPoly;
use crate::{Error, Result};

/// Default cap on the number of elements a closure may enumerate.
pub const DEFAULT_ORDER_CAP: usize = 10_000_000;

/// An n-by-n matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    field: Field,
    n: usize,
    entries: Vec<FieldElem>,
}

impl SquareMatrix {
    pub fn from_entries(field: &Field, n: usize, entries: Vec<FieldElem>) -> Result<SquareMatrix> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch);
        }
        Ok(SquareMatrix {
            field: field.clone(),
            n,
            entries,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<FieldElem>]) -> Result<SquareMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch);
        }
        Ok(SquareMatrix {
            field: field.clone(),
            n,
            entries: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        })
    }

    pub fn zero(field: &Field, n: usize) -> SquareMatrix {
        SquareMatrix {
            field: field.clone(),
            n,
            entries: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> SquareMatrix {
        let mut m = SquareMatrix::zero(field, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    /// The matrix unit E_{ij} (zero-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> SquareMatrix {
        let mut m = SquareMatrix::zero(field, n);
        *m.at_mut(i, j) = field.one();
        m
    }

    /// The elementary transvection I + E_{ij}, i != j.
    pub fn transvection(field: &Field, n: usize, i: usize, j: usize) -> SquareMatrix {
        let mut m = SquareMatrix::identity(field, n);
        *m.at_mut(i, j) = field.one();
        m
    }

    pub fn diagonal(field: &Field, diag: &[FieldElem]) -> SquareMatrix {
        let n = diag.len();
        let mut m = SquareMatrix::zero(field, n);
        for (i, d) in diag.iter().enumerate() {
            *m.at_mut(i, i) = d.clone();
        }
        m
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(poly: &FieldPoly) -> Result<SquareMatrix> {
        if !poly.is_monic() {
            return Err(Error::NotMonic);
        }
        let f = poly.field().clone();
        let n = poly.degree().unwrap();
        let mut m = SquareMatrix::zero(&f, n);
        for i in 1..n {
            *m.at_mut(i, i - 1) = f.one();
        }
        for i in 0..n {
            *m.at_mut(i, n - 1) = f.neg(&poly.coeff(i));
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FieldElem {
        &mut self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == SquareMatrix::identity(&self.field, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        let f = &self.field;
        SquareMatrix {
            field: f.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SquareMatrix) -> SquareMatrix {
        let f = &self.field;
        SquareMatrix {
            field: f.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> SquareMatrix {
        let f = &self.field;
        SquareMatrix {
            field: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        debug_assert_eq!(self.n, other.n);
        let f = &self.field;
        let n = self.n;
        let mut out = SquareMatrix::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let prod = f.mul(a, other.at(k, j));
                    *out.at_mut(i, j) = f.add(out.at(i, j), &prod);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> SquareMatrix {
        let mut base = self.clone();
        let mut acc = SquareMatrix::identity(&self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<SquareMatrix> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.clone();
        let mut inv = SquareMatrix::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !f.is_zero(a.at(r, col)))?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let pinv = f.inv(a.at(col, col)).unwrap();
            for j in 0..n {
                *a.at_mut(col, j) = f.mul(a.at(col, j), &pinv);
                *inv.at_mut(col, j) = f.mul(inv.at(col, j), &pinv);
            }
            for r in 0..n {
                if r != col && !f.is_zero(a.at(r, col)) {
                    let c = a.at(r, col).clone();
                    for j in 0..n {
                        let s = f.mul(&c, a.at(col, j));
                        *a.at_mut(r, j) = f.sub(a.at(r, j), &s);
                        let s = f.mul(&c, inv.at(col, j));
                        *inv.at_mut(r, j) = f.sub(inv.at(r, j), &s);
                    }
                }
            }
        }
        Some(inv)
    }

    /// det(T*I - M) as a monic degree-n polynomial, computed by similarity
    /// reduction to Hessenberg form and the standard leading-minor
    /// recurrence. Conjugation-invariant by construction.
    pub fn charpoly(&self) -> FieldPoly {
        let f = &self.field;
        let n = self.n;
        if n == 0 {
            return FieldPoly::one(f);
        }
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg
        for j in 0..n.saturating_sub(2) {
            let pivot = ((j + 1)..n).find(|&r| !f.is_zero(h.at(r, j)));
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != j + 1 {
                // swap rows and the matching columns (a similarity)
                for c in 0..n {
                    let tmp = h.at(pivot, c).clone();
                    *h.at_mut(pivot, c) = h.at(j + 1, c).clone();
                    *h.at_mut(j + 1, c) = tmp;
                }
                for r in 0..n {
                    let tmp = h.at(r, pivot).clone();
                    *h.at_mut(r, pivot) = h.at(r, j + 1).clone();
                    *h.at_mut(r, j + 1) = tmp;
                }
            }
            let pinv = f.inv(h.at(j + 1, j)).unwrap();
            for i in (j + 2)..n {
                if f.is_zero(h.at(i, j)) {
                    continue;
                }
                let m = f.mul(h.at(i, j), &pinv);
                // row_i -= m * row_{j+1}
                for c in 0..n {
                    let s = f.mul(&m, h.at(j + 1, c));
                    *h.at_mut(i, c) = f.sub(h.at(i, c), &s);
                }
                // col_{j+1} += m * col_i
                for r in 0..n {
                    let s = f.mul(&m, h.at(r, i));
                    *h.at_mut(r, j + 1) = f.add(h.at(r, j + 1), &s);
                }
            }
        }
        // char polys of leading principal minors of the Hessenberg matrix
        let mut p: Vec<FieldPoly> = vec![FieldPoly::one(f)];
        for m in 1..=n {
            let t_minus = FieldPoly::new(f, vec![f.neg(h.at(m - 1, m - 1)), f.one()]);
            let mut pm = t_minus.mul(&p[m - 1]);
            let mut subdiag = f.one();
            for i in 2..=m {
                subdiag = f.mul(&subdiag, h.at(m - i + 1, m - i));
                let c = f.mul(h.at(m - i, m - 1), &subdiag);
                pm = pm.sub(&p[m - i].scale(&c));
            }
            p.push(pm);
        }
        p.pop().unwrap()
    }

    /// (M - I)^n = 0.
    pub fn is_unipotent(&self) -> bool {
        let d = self.sub(&SquareMatrix::identity(&self.field, self.n));
        d.pow(self.n as u64).is_zero()
    }

    /// X^n = 0.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u64).is_zero()
    }

    /// charpoly squarefree, tested via gcd(P, P') = 1.
    pub fn is_regular_semisimple(&self) -> bool {
        let p = self.charpoly();
        p.gcd(&p.derivative()).degree() == Some(0)
    }

    /// Kronecker product, a group homomorphism in each argument.
    pub fn tensor(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut out = SquareMatrix::zero(f, n);
        for i1 in 0..n1 {
            for j1 in 0..n1 {
                let a = self.at(i1, j1);
                if f.is_zero(a) {
                    continue;
                }
                for i2 in 0..n2 {
                    for j2 in 0..n2 {
                        *out.at_mut(i1 * n2 + i2, j1 * n2 + j2) = f.mul(a, other.at(i2, j2));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let (n1, n2) = (self.n, other.n);
        let mut out = SquareMatrix::zero(f, n1 + n2);
        for i in 0..n1 {
            for j in 0..n1 {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                *out.at_mut(n1 + i, n1 + j) = other.at(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Entrywise application of a subfield embedding.
    pub fn embed(&self, emb: &Embedding) -> SquareMatrix {
        SquareMatrix {
            field: emb.dst().clone(),
            n: self.n,
            entries: self.entries.iter().map(|e| emb.apply(e)).collect(),
        }
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.field.fmt_elem(self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn check_exp_precondition(field: &Field, n: usize) -> Result<()> {
    if field.ell() <= n as u64 {
        return Err(Error::CharTooSmall {
            ell: field.ell(),
            n,
            bound: n,
        });
    }
    Ok(())
}

/// The truncated exponential of a nilpotent matrix: sum of X^i / i! over
/// 0 <= i < ell, which terminates at i = n-1. Requires ell > n.
pub fn exp_n(x: &SquareMatrix) -> Result<SquareMatrix> {
    let f = x.field().clone();
    let n = x.dim();
    check_exp_precondition(&f, n)?;
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut acc = SquareMatrix::identity(&f, n);
    let mut xpow = SquareMatrix::identity(&f, n);
    let mut factorial = 1u64;
    for i in 1..n as u64 {
        xpow = xpow.mul(x);
        if xpow.is_zero() {
            break;
        }
        factorial = factorial * i % f.ell();
        let c = f.inv(&f.from_u64(factorial)).unwrap();
        acc = acc.add(&xpow.scale(&c));
    }
    Ok(acc)
}

/// The truncated logarithm of a unipotent matrix: minus the sum of
/// (1-u)^i / i over 1 <= i < ell, which terminates at i = n-1.
pub fn log_n(u: &SquareMatrix) -> Result<SquareMatrix> {
    let f = u.field().clone();
    let n = u.dim();
    check_exp_precondition(&f, n)?;
    if !u.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let one_minus = SquareMatrix::identity(&f, n).sub(u);
    let mut acc = SquareMatrix::zero(&f, n);
    let mut pw = SquareMatrix::identity(&f, n);
    for i in 1..n as u64 {
        pw = pw.mul(&one_minus);
        if pw.is_zero() {
            break;
        }
        let c = f.inv(&f.from_u64(i)).unwrap();
        acc = acc.add(&pw.scale(&c));
    }
    Ok(SquareMatrix::zero(&f, n).sub(&acc))
}

/// u^t = exp_n(t * log_n(u)) for a unipotent u and a scalar t in u's field
/// (embed u first to raise to an extension-field power).
pub fn t_power(u: &SquareMatrix, t: &FieldElem) -> Result<SquareMatrix> {
    let x = log_n(u)?;
    exp_n(&x.scale(t))
}

/// A finite subgroup of GL_n(F_q), stored as the full enumerated element set
/// together with its generating set.
#[derive(Clone)]
pub struct FiniteMatrixGroup {
    field: Field,
    n: usize,
    generators: Vec<SquareMatrix>,
    elements: IndexSet<SquareMatrix>,
}

impl FiniteMatrixGroup {
    /// The trivial group.
    pub fn trivial(field: &Field, n: usize) -> FiniteMatrixGroup {
        let mut elements = IndexSet::new();
        elements.insert(SquareMatrix::identity(field, n));
        FiniteMatrixGroup {
            field: field.clone(),
            n,
            generators: vec![],
            elements,
        }
    }

    /// Construct from parts; internal use by the Weil-restriction transport,
    /// which maps an already-closed group through an injective homomorphism.
    pub(crate) fn from_parts(
        field: &Field,
        n: usize,
        generators: Vec<SquareMatrix>,
        elements: IndexSet<SquareMatrix>,
    ) -> FiniteMatrixGroup {
        FiniteMatrixGroup {
            field: field.clone(),
            n,
            generators,
            elements,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[SquareMatrix] {
        &self.generators
    }

    pub fn contains(&self, m: &SquareMatrix) -> bool {
        self.elements.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SquareMatrix> {
        self.elements.iter()
    }

    /// Set equality of the underlying element sets.
    pub fn same_elements(&self, other: &FiniteMatrixGroup) -> bool {
        self.order() == other.order() && self.iter().all(|m| other.contains(m))
    }

    pub fn unipotent_elements(&self) -> Vec<&SquareMatrix> {
        self.iter().filter(|m| m.is_unipotent()).collect()
    }

    /// The subgroup generated by all elements of ell-power order; for
    /// ell > n these are exactly the unipotents. Normal in the group since
    /// the generating set is closed under conjugation.
    pub fn gamma_plus(&self) -> Result<FiniteMatrixGroup> {
        let ell = self.field.ell();
        let mut t = 0u32;
        let mut ord = self.order();
        while ord % ell as usize == 0 {
            ord /= ell as usize;
            t += 1;
        }
        let ell_pow = (ell as u128).pow(t) as u64;
        let gens: Vec<SquareMatrix> = self
            .iter()
            .filter(|m| !m.is_identity() && m.pow(ell_pow).is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return Ok(FiniteMatrixGroup::trivial(&self.field, self.n));
        }
        group_closure(&gens, self.order())
    }
}

impl fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteMatrixGroup(n={}, order={}, {} generators over {:?})",
            self.n,
            self.order(),
            self.generators.len(),
            self.field
        )
    }
}

/// Breadth-first closure of a generating set under multiplication.
/// Deterministic: elements are indexed in BFS discovery order.
pub fn group_closure(generators: &[SquareMatrix], cap: usize) -> Result<FiniteMatrixGroup> {
    let first = generators.first().ok_or(Error::SingularGenerator)?;
    let field = first.field().clone();
    let n = first.dim();
    let mut gens2: Vec<SquareMatrix> = Vec::with_capacity(generators.len() * 2);
    for g in generators {
        if !same_field(g.field(), &field) {
            return Err(Error::FieldMismatch);
        }
        if g.dim() != n {
            return Err(Error::DimensionMismatch);
        }
        let inv = g.inverse().ok_or(Error::SingularGenerator)?;
        gens2.push(g.clone());
        gens2.push(inv);
    }
    let mut elements: IndexSet<SquareMatrix> = IndexSet::new();
    let mut queue = VecDeque::new();
    let id = SquareMatrix::identity(&field, n);
    elements.insert(id.clone());
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        for g in &gens2 {
            let next = m.mul(g);
            if elements.insert(next.clone()) {
                if elements.len() > cap {
                    return Err(Error::OrderCapExceeded(cap));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(FiniteMatrixGroup {
        field,
        n,
        generators: generators.to_vec(),
        elements,
    })
}
