//! Weil-restriction embeddings: view a matrix over an extension field
//! F_{q^d} as a d-times-larger matrix over F_q via a chosen basis of the
//! extension.

use indexmap::IndexSet;

use crate::ff::{embedding, Embedding, Field, FieldElem};
use crate::matgrp::{FiniteMatrixGroup, SquareMatrix};
use crate::{Error, Result};

/// Fixed data for restricting from `big` = F_{q^d} down to `small` = F_q: a
/// basis of the extension and the inverse of its coordinate matrix over the
/// prime field.
#[derive(Clone, Debug)]
pub struct RestrictionContext {
    big: Field,
    small: Field,
    emb: Embedding,
    basis: Vec<FieldElem>,
    d: usize,
    // inverse of the K-by-K prime-field matrix whose columns are the
    // coordinates of emb(e_j) * basis[i], K = [big : F_ell]
    coord_inv: Vec<Vec<u64>>,
}

fn prime_mat_inverse(a: &[Vec<u64>], ell: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let pinv = |x: u64| -> u64 {
        let mut r = 1u64;
        let mut b = x % ell;
        let mut e = ell - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % ell;
            }
            b = b * b % ell;
            e >>= 1;
        }
        r
    };
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let c = pinv(m[col][col]);
        for j in 0..n {
            m[col][j] = m[col][j] * c % ell;
            inv[col][j] = inv[col][j] * c % ell;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let c = m[r][col];
                for j in 0..n {
                    m[r][j] = (m[r][j] + (ell - c) * m[col][j]) % ell;
                    inv[r][j] = (inv[r][j] + (ell - c) * inv[col][j]) % ell;
                }
            }
        }
    }
    Some(inv)
}

impl RestrictionContext {
    /// Context with the default basis: powers of the big field's generator.
    pub fn new(big: &Field, small: &Field) -> Result<RestrictionContext> {
        if big.ell() != small.ell() || big.degree() % small.degree() != 0 {
            return Err(Error::NoEmbedding {
                src: small.degree(),
                dst: big.degree(),
            });
        }
        let d = big.degree() / small.degree();
        let g = big.gen();
        let basis: Vec<FieldElem> = (0..d as u64).map(|i| big.pow(&g, i)).collect();
        RestrictionContext::with_basis(big, small, basis)
    }

    pub fn with_basis(
        big: &Field,
        small: &Field,
        basis: Vec<FieldElem>,
    ) -> Result<RestrictionContext> {
        if big.ell() != small.ell() || big.degree() % small.degree() != 0 {
            return Err(Error::NoEmbedding {
                src: small.degree(),
                dst: big.degree(),
            });
        }
        let d = big.degree() / small.degree();
        if basis.len() != d {
            return Err(Error::DimensionMismatch);
        }
        let emb = embedding(small, big)?;
        let k = small.degree();
        let cap_k = big.degree();
        let ell = big.ell();
        // columns indexed by (basis index i, small coordinate j)
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(cap_k);
        for b in &basis {
            for j in 0..k {
                let mut e = vec![0u64; k];
                e[j] = 1;
                let prod = big.mul(&emb.apply(&small.elem(&e)), b);
                cols.push(prod.coeffs().to_vec());
            }
        }
        // transpose columns into a matrix
        let mat: Vec<Vec<u64>> = (0..cap_k)
            .map(|r| (0..cap_k).map(|c| cols[c][r]).collect())
            .collect();
        let coord_inv = prime_mat_inverse(&mat, ell).ok_or(Error::DimensionMismatch)?;
        Ok(RestrictionContext {
            big: big.clone(),
            small: small.clone(),
            emb,
            basis,
            d,
            coord_inv,
        })
    }

    pub fn big(&self) -> &Field {
        &self.big
    }

    pub fn small(&self) -> &Field {
        &self.small
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    /// Coordinates of x in the chosen basis, as elements of the small field.
    pub fn coords(&self, x: &FieldElem) -> Vec<FieldElem> {
        let ell = self.big.ell();
        let cap_k = self.big.degree();
        let k = self.small.degree();
        let xc = x.coeffs();
        let sol: Vec<u64> = (0..cap_k)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..cap_k {
                    acc = (acc + self.coord_inv[r][c] * xc[c]) % ell;
                }
                acc
            })
            .collect();
        sol.chunks(k).map(|ch| self.small.elem(ch)).collect()
    }

    /// Reassemble an element from its coordinates.
    pub fn uncoords(&self, cs: &[FieldElem]) -> FieldElem {
        let mut acc = self.big.zero();
        for (c, b) in cs.iter().zip(&self.basis) {
            acc = self.big.add(&acc, &self.big.mul(&self.emb.apply(c), b));
        }
        acc
    }
}

/// The block matrix over F_q of the F_q-linear map induced by M on
/// W = F_q^{nd}. Multiplicative, unital, and injective on GL_n.
pub fn weilres_embed(ctx: &RestrictionContext, m: &SquareMatrix) -> Result<SquareMatrix> {
    if !crate::ff::same_field(m.field(), ctx.big()) {
        return Err(Error::FieldMismatch);
    }
    let n = m.dim();
    let d = ctx.degree();
    let mut out = SquareMatrix::zero(ctx.small(), n * d);
    for r in 0..n {
        for t in 0..d {
            // image of the basis vector e_r (x) basis[t]
            for s in 0..n {
                let val = ctx.big().mul(m.at(s, r), &ctx.basis[t]);
                for (u, c) in ctx.coords(&val).into_iter().enumerate() {
                    *out.at_mut(s * d + u, r * d + t) = c;
                }
            }
        }
    }
    Ok(out)
}

/// Elementwise restriction of an enumerated group; the order is preserved
/// since the embedding is injective.
pub fn weilres_group(
    ctx: &RestrictionContext,
    g: &FiniteMatrixGroup,
) -> Result<FiniteMatrixGroup> {
    let gens: Vec<SquareMatrix> = g
        .generators()
        .iter()
        .map(|m| weilres_embed(ctx, m))
        .collect::<Result<_>>()?;
    let mut elements = IndexSet::with_capacity(g.order());
    for m in g.iter() {
        elements.insert(weilres_embed(ctx, m)?);
    }
    debug_assert_eq!(elements.len(), g.order());
    Ok(FiniteMatrixGroup::from_parts(
        ctx.small(),
        g.dim() * ctx.degree(),
        gens,
        elements,
    ))
}

/// Height of the restricted standard representation: d(dimV - 1), which also
/// equals dimW - d for dimW = d * dimV.
pub fn restriction_height(d: usize, dim_v: usize) -> usize {
    let h = d * (dim_v - 1);
    debug_assert_eq!(h, d * dim_v - d);
    h
}

/// Verdict of the saturation-transport check.
#[derive(Clone, Copy, Debug)]
pub struct WeilresSatReport {
    /// Whether the restricted group passes the point-level saturation test
    /// over the small field.
    pub saturated: bool,
    /// Whether the characteristic hypothesis ell > dimW - d held; when it
    /// does not, the verdict is reported anyway but carries no guarantee.
    pub hypothesis_ok: bool,
}

/// Restrict a point-saturated group and test saturation over the small
/// field.
pub fn weilres_saturation_check(
    ctx: &RestrictionContext,
    g: &FiniteMatrixGroup,
) -> Result<WeilresSatReport> {
    let d = ctx.degree();
    let dim_w = g.dim() * d;
    let hypothesis_ok = ctx.small().ell() > (dim_w - d) as u64;
    let restricted = weilres_group(ctx, g)?;
    let saturated = crate::envelope::is_saturated_points(&restricted)?;
    Ok(WeilresSatReport {
        saturated,
        hypothesis_ok,
    })
}
