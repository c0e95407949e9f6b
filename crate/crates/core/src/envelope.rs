//! Nori envelopes, acceptable pairs, point-level saturation closure, and
//! Burnside irreducibility.
//!
//! Everything here works with groups of points over a concrete finite field
//! (optionally a chosen finite extension), never with algebraic groups as
//! schemes. Statements that are classically quantified over an algebraic
//! closure are systematically replaced by point-level checks over the group's
//! own field or a user-selected extension, and are labeled as such.

use rand::{Rng, SeedableRng};

use crate::echelon::{FqEchelon, PrimeEchelon};
use crate::ff::{embedding, field_create, Field, FieldElem};
use crate::matgrp::{
    exp_n, group_closure, log_n, t_power, FiniteMatrixGroup, SquareMatrix, DEFAULT_ORDER_CAP,
};
use crate::{Error, Result};

/// Exhaustive member enumeration of a Lie subspace is attempted only when the
/// subspace has at most this many elements.
pub const ENUMERATION_BUDGET: u128 = 1_000_000;

/// Number of random trials used when exhaustive enumeration is over budget.
pub const SAMPLE_TRIALS: usize = 10_000;

/// Scalar field over which a span of matrices is taken: the prime field
/// F_ell, or the full field of the matrices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scalars {
    Prime,
    Full,
}

#[derive(Clone, Debug)]
enum EchelonKind {
    Fq(FqEchelon),
    Prime(PrimeEchelon),
}

/// A linear subspace of n-by-n matrices with an echelonized basis, spanned
/// over the declared scalar field. The echelon form is canonical, so equal
/// spans have identical bases regardless of insertion order.
#[derive(Clone, Debug)]
pub struct LieSubspace {
    field: Field,
    n: usize,
    scalars: Scalars,
    inner: EchelonKind,
}

fn mat_to_fq_vec(m: &SquareMatrix) -> Vec<FieldElem> {
    m.entries().to_vec()
}

fn mat_to_prime_vec(m: &SquareMatrix) -> Vec<u64> {
    m.entries()
        .iter()
        .flat_map(|e| e.coeffs().iter().copied())
        .collect()
}

impl LieSubspace {
    pub fn new(field: &Field, n: usize, scalars: Scalars) -> LieSubspace {
        let inner = match scalars {
            Scalars::Full => EchelonKind::Fq(FqEchelon::new(field, n * n)),
            Scalars::Prime => EchelonKind::Prime(PrimeEchelon::new(field.ell(), n * n * field.degree())),
        };
        LieSubspace {
            field: field.clone(),
            n,
            scalars,
            inner,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Side length of the ambient matrix space.
    pub fn matrix_dim(&self) -> usize {
        self.n
    }

    pub fn scalars(&self) -> Scalars {
        self.scalars
    }

    /// Dimension over the declared scalar field.
    pub fn dim(&self) -> usize {
        match &self.inner {
            EchelonKind::Fq(e) => e.rank(),
            EchelonKind::Prime(e) => e.rank(),
        }
    }

    /// Insert a matrix into the span; returns true if the dimension grew.
    pub fn insert(&mut self, m: &SquareMatrix) -> bool {
        match &mut self.inner {
            EchelonKind::Fq(e) => e.insert(&mat_to_fq_vec(m)),
            EchelonKind::Prime(e) => e.insert(&mat_to_prime_vec(m)),
        }
    }

    pub fn contains(&self, m: &SquareMatrix) -> bool {
        match &self.inner {
            EchelonKind::Fq(e) => e.contains(&mat_to_fq_vec(m)),
            EchelonKind::Prime(e) => e.contains(&mat_to_prime_vec(m)),
        }
    }

    /// The canonical echelon basis, as matrices.
    pub fn basis_matrices(&self) -> Vec<SquareMatrix> {
        let n = self.n;
        let f = &self.field;
        match &self.inner {
            EchelonKind::Fq(e) => e
                .rows()
                .iter()
                .map(|row| SquareMatrix::from_entries(f, n, row.clone()).unwrap())
                .collect(),
            EchelonKind::Prime(e) => {
                let k = f.degree();
                e.rows()
                    .iter()
                    .map(|row| {
                        let entries: Vec<FieldElem> =
                            row.chunks(k).map(|c| f.elem(c)).collect();
                        SquareMatrix::from_entries(f, n, entries).unwrap()
                    })
                    .collect()
            }
        }
    }

    fn scalar_choices(&self) -> Vec<FieldElem> {
        match self.scalars {
            Scalars::Full => self.field.elements().collect(),
            Scalars::Prime => (0..self.field.ell()).map(|c| self.field.from_u64(c)).collect(),
        }
    }

    /// Every member of the subspace, or None when the count exceeds
    /// [`ENUMERATION_BUDGET`].
    pub fn enumerate_members(&self) -> Option<Vec<SquareMatrix>> {
        let scalars = self.scalar_choices();
        let base = scalars.len() as u128;
        let dim = self.dim();
        let mut count: u128 = 1;
        for _ in 0..dim {
            count = count.checked_mul(base)?;
            if count > ENUMERATION_BUDGET {
                return None;
            }
        }
        let basis = self.basis_matrices();
        let mut members = Vec::with_capacity(count as usize);
        let mut idx = vec![0usize; dim];
        loop {
            let mut m = SquareMatrix::zero(&self.field, self.n);
            for (b, &i) in basis.iter().zip(&idx) {
                m = m.add(&b.scale(&scalars[i]));
            }
            members.push(m);
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == dim {
                    return Some(members);
                }
                idx[pos] += 1;
                if idx[pos] < scalars.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// A uniformly random member.
    pub fn sample_member(&self, rng: &mut impl Rng) -> SquareMatrix {
        let scalars = self.scalar_choices();
        let basis = self.basis_matrices();
        let mut m = SquareMatrix::zero(&self.field, self.n);
        for b in &basis {
            let c = &scalars[rng.gen_range(0..scalars.len())];
            m = m.add(&b.scale(c));
        }
        m
    }
}

/// The span of the logarithms of all unipotent elements of G, over the
/// requested scalar field.
pub fn log_span(g: &FiniteMatrixGroup, scalars: Scalars) -> Result<LieSubspace> {
    let f = g.field();
    let n = g.dim();
    if f.ell() <= n as u64 {
        return Err(Error::CharTooSmall {
            ell: f.ell(),
            n,
            bound: n,
        });
    }
    let mut lie = LieSubspace::new(f, n, scalars);
    for u in g.iter() {
        if u.is_unipotent() {
            lie.insert(&log_n(u)?);
        }
    }
    Ok(lie)
}

/// The stabilized (group, Lie subspace) pair produced by the envelope
/// iteration.
#[derive(Clone, Debug)]
pub struct EnvelopePair {
    pub group: FiniteMatrixGroup,
    pub lie: LieSubspace,
    /// Whether the fixed-point iteration converged.
    pub stable: bool,
}

impl EnvelopePair {
    pub fn lie_dim(&self) -> usize {
        self.lie.dim()
    }
}

/// Envelope of G: seed with the subgroup generated by the ell-power-order
/// elements, then alternately take the full-field span of unipotent
/// logarithms and adjoin the exponentials of all nilpotent members of the
/// span, until the group stops growing.
///
/// Requires ell > n so that exp/log are defined. The underlying theory is
/// only guaranteed for substantially larger characteristic (at least 2n); for
/// n < ell < 2n the computation still runs and the result is best-effort.
pub fn nori_envelope(g: &FiniteMatrixGroup) -> Result<EnvelopePair> {
    nori_envelope_with_cap(g, DEFAULT_ORDER_CAP)
}

pub fn nori_envelope_with_cap(g: &FiniteMatrixGroup, cap: usize) -> Result<EnvelopePair> {
    let f = g.field().clone();
    let n = g.dim();
    if f.ell() <= n as u64 {
        return Err(Error::CharTooSmall {
            ell: f.ell(),
            n,
            bound: n,
        });
    }
    let mut grp = g.gamma_plus()?;
    for _ in 0..64 {
        let lie = log_span(&grp, Scalars::Full)?;
        let mut gens: Vec<SquareMatrix> = grp.generators().to_vec();
        if gens.is_empty() {
            gens.push(SquareMatrix::identity(&f, n));
        }
        let mut added = false;
        match lie.enumerate_members() {
            Some(members) => {
                for x in members {
                    if x.is_nilpotent() {
                        let u = exp_n(&x)?;
                        if !grp.contains(&u) {
                            gens.push(u);
                            added = true;
                        }
                    }
                }
            }
            None => {
                // over budget: fall back to the one-parameter subgroups
                // through the group's own unipotents
                let elems: Vec<FieldElem> = f.elements().collect();
                for u in grp.unipotent_elements() {
                    for t in &elems {
                        let ut = t_power(u, t)?;
                        if !grp.contains(&ut) {
                            gens.push(ut);
                            added = true;
                        }
                    }
                }
            }
        }
        if !added {
            return Ok(EnvelopePair {
                group: grp,
                lie,
                stable: true,
            });
        }
        grp = group_closure(&gens, cap)?;
    }
    let lie = log_span(&grp, Scalars::Full)?;
    Ok(EnvelopePair {
        group: grp,
        lie,
        stable: false,
    })
}

/// The smallest subgroup of GL_n(F_{q^e}) containing the image of G and
/// closed under u -> u^t for every unipotent member u and every scalar t of
/// F_{q^e}. Extensive, monotone, idempotent.
pub fn saturation_closure(g: &FiniteMatrixGroup, ext_degree: usize) -> Result<FiniteMatrixGroup> {
    saturation_closure_with_cap(g, ext_degree, DEFAULT_ORDER_CAP)
}

pub fn saturation_closure_with_cap(
    g: &FiniteMatrixGroup,
    ext_degree: usize,
    cap: usize,
) -> Result<FiniteMatrixGroup> {
    let n = g.dim();
    if g.field().ell() <= n as u64 {
        return Err(Error::CharTooSmall {
            ell: g.field().ell(),
            n,
            bound: n,
        });
    }
    let (field, mut gens): (Field, Vec<SquareMatrix>) = if ext_degree <= 1 {
        let gens = if g.generators().is_empty() {
            g.iter().cloned().collect()
        } else {
            g.generators().to_vec()
        };
        (g.field().clone(), gens)
    } else {
        let big = field_create(g.field().ell(), g.field().degree() * ext_degree, None)?;
        let emb = embedding(g.field(), &big)?;
        let src: Vec<&SquareMatrix> = if g.generators().is_empty() {
            g.iter().collect()
        } else {
            g.generators().iter().collect()
        };
        (big, src.into_iter().map(|m| m.embed(&emb)).collect())
    };
    if gens.is_empty() {
        gens.push(SquareMatrix::identity(&field, n));
    }
    let mut grp = group_closure(&gens, cap)?;
    let scalars: Vec<FieldElem> = field.elements().collect();
    loop {
        let mut added = false;
        for u in grp.unipotent_elements() {
            for t in &scalars {
                let ut = t_power(u, t)?;
                if !grp.contains(&ut) {
                    gens.push(ut);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(grp);
        }
        grp = group_closure(&gens, cap)?;
    }
}

/// Point-level saturation test over the group's own field: every t-power of
/// every unipotent member stays inside the group.
pub fn is_saturated_points(g: &FiniteMatrixGroup) -> Result<bool> {
    let n = g.dim();
    if g.field().ell() <= n as u64 {
        return Err(Error::CharTooSmall {
            ell: g.field().ell(),
            n,
            bound: n,
        });
    }
    let scalars: Vec<FieldElem> = g.field().elements().collect();
    for u in g.unipotent_elements() {
        for t in &scalars {
            if !g.contains(&t_power(u, t)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of an acceptable-pair check. `sampled` records whether the
/// nilpotent side was verified exhaustively or by random sampling.
#[derive(Clone, Copy, Debug)]
pub struct PairCheck {
    pub holds: bool,
    pub sampled: bool,
}

/// Check both directions of the acceptable-pair condition over the group's
/// field: exp of every nilpotent member of L lies in G, and log of every
/// unipotent member of G lies in L.
pub fn is_acceptable_pair(lie: &LieSubspace, g: &FiniteMatrixGroup) -> Result<PairCheck> {
    let n = g.dim();
    if g.field().ell() <= n as u64 {
        return Err(Error::CharTooSmall {
            ell: g.field().ell(),
            n,
            bound: n,
        });
    }
    // backward direction: logs of unipotents live in L
    for u in g.unipotent_elements() {
        if !lie.contains(&log_n(u)?) {
            return Ok(PairCheck {
                holds: false,
                sampled: false,
            });
        }
    }
    // forward direction: exps of nilpotent members live in G
    match lie.enumerate_members() {
        Some(members) => {
            for x in members {
                if x.is_nilpotent() && !g.contains(&exp_n(&x)?) {
                    return Ok(PairCheck {
                        holds: false,
                        sampled: false,
                    });
                }
            }
            Ok(PairCheck {
                holds: true,
                sampled: false,
            })
        }
        None => {
            let mut rng = rand::rngs::StdRng::seed_from_u64(0x5a7u64);
            for _ in 0..SAMPLE_TRIALS {
                let x = lie.sample_member(&mut rng);
                if x.is_nilpotent() && !g.contains(&exp_n(&x)?) {
                    return Ok(PairCheck {
                        holds: false,
                        sampled: true,
                    });
                }
            }
            Ok(PairCheck {
                holds: true,
                sampled: true,
            })
        }
    }
}

/// Burnside criterion: the group spans the full matrix algebra over its
/// field.
pub fn is_absolutely_irreducible(g: &FiniteMatrixGroup) -> bool {
    let n = g.dim();
    let mut ech = FqEchelon::new(g.field(), n * n);
    for m in g.iter() {
        ech.insert(&mat_to_fq_vec(m));
        if ech.rank() == n * n {
            return true;
        }
    }
    ech.rank() == n * n
}
