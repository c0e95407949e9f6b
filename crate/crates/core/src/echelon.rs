//! Reduced row echelon machinery for exact spans.
//!
//! Two engines: one for vectors over an extension field F_q, one for vectors
//! over the prime field F_ell (used when a span over prime scalars is wanted
//! and extension-field coordinates have been flattened out). Both maintain a
//! canonical reduced echelon basis with pivot-first normalization, so equal
//! spans produce byte-identical bases.

use crate::ff::{Field, FieldElem};

/// Reduced row echelon basis of a subspace of F_q^width.
#[derive(Clone, Debug)]
pub struct FqEchelon {
    field: Field,
    width: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl FqEchelon {
    pub fn new(field: &Field, width: usize) -> FqEchelon {
        FqEchelon {
            field: field.clone(),
            width,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<FieldElem>] {
        &self.rows
    }

    /// Fully reduce `v` against the current basis.
    pub fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|c| f.is_zero(c))
    }

    /// Insert a vector; returns true if the rank grew.
    pub fn insert(&mut self, v: &[FieldElem]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let pivot = match v.iter().position(|c| !f.is_zero(c)) {
            Some(p) => p,
            None => return false,
        };
        let inv = f.inv(&v[pivot]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // eliminate the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[pivot]) {
                let c = row[pivot].clone();
                for (x, nv) in row.iter_mut().zip(&v) {
                    *x = f.sub(x, &f.mul(&c, nv));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }
}

/// Reduced row echelon basis of a subspace of F_ell^width (prime field,
/// scalar entries).
#[derive(Clone, Debug)]
pub struct PrimeEchelon {
    ell: u64,
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn p_inv(a: u64, m: u64) -> u64 {
    // m prime, a nonzero
    let mut r = 1u64;
    let mut b = a % m;
    let mut e = m - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl PrimeEchelon {
    pub fn new(ell: u64, width: usize) -> PrimeEchelon {
        PrimeEchelon {
            ell,
            width,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = self.ell;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] != 0 {
                let c = v[p];
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + (m - c) * r % m) % m;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let m = self.ell;
        let mut v = self.reduce(v);
        let pivot = match v.iter().position(|&c| c != 0) {
            Some(p) => p,
            None => return false,
        };
        let inv = p_inv(v[pivot], m);
        for x in v.iter_mut() {
            *x = *x * inv % m;
        }
        for row in self.rows.iter_mut() {
            if row[pivot] != 0 {
                let c = row[pivot];
                for (x, &nv) in row.iter_mut().zip(&v) {
                    *x = (*x + (m - c) * nv % m) % m;
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_create;

    #[test]
    fn fq_echelon_rank_and_membership() {
        let f5 = field_create(5, 1, None).unwrap();
        let mut e = FqEchelon::new(&f5, 3);
        let v1: Vec<_> = [1u64, 2, 3].iter().map(|&c| f5.from_u64(c)).collect();
        let v2: Vec<_> = [0u64, 1, 0].iter().map(|&c| f5.from_u64(c)).collect();
        let v1_doubled: Vec<_> = [2u64, 4, 6].iter().map(|&c| f5.from_u64(c)).collect();
        assert!(e.insert(&v1));
        assert!(!e.insert(&v1_doubled));
        assert!(e.insert(&v2));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v1));
        let v3: Vec<_> = [0u64, 0, 1].iter().map(|&c| f5.from_u64(c)).collect();
        assert!(!e.contains(&v3));
    }

    #[test]
    fn canonical_basis_independent_of_insertion_order() {
        let f7 = field_create(7, 1, None).unwrap();
        let vs: Vec<Vec<_>> = [[1u64, 1, 0], [0, 1, 1], [3, 2, 5]]
            .iter()
            .map(|r| r.iter().map(|&c| f7.from_u64(c)).collect())
            .collect();
        let mut a = FqEchelon::new(&f7, 3);
        let mut b = FqEchelon::new(&f7, 3);
        for v in &vs {
            a.insert(v);
        }
        for v in vs.iter().rev() {
            b.insert(v);
        }
        assert_eq!(a.rows(), b.rows());
    }

    #[test]
    fn prime_echelon_basics() {
        let mut e = PrimeEchelon::new(5, 4);
        assert!(e.insert(&[0, 2, 0, 1]));
        assert!(e.insert(&[1, 0, 0, 0]));
        assert!(!e.insert(&[2, 4, 0, 2]));
        assert_eq!(e.rank(), 2);
    }
}
