//! Exact arithmetic in prime fields F_ell and their extensions F_{ell^k}.
//!
//! A [`FieldSpec`] fixes the characteristic, the extension degree and a monic
//! irreducible modulus; elements are coordinate vectors in the power basis of
//! the modulus root, always reduced into `[0, ell)`. Everything is exact and
//! deterministic: when no modulus is supplied, the lexicographically smallest
//! monic irreducible polynomial (coefficients compared low-degree-first) is
//! chosen, so the same `(ell, k)` always yields the same field.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Fields larger than this many elements are rejected: the envelope and
/// saturation algorithms enumerate field scalars.
pub const MAX_FIELD_SIZE: u128 = 1 << 20;

/// A shared, immutable field description.
pub type Field = Arc<FieldSpec>;

// ---- scalar arithmetic mod ell (ell < 2^20, so products fit in u64) ----

#[inline]
fn addm(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
fn subm(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

#[inline]
fn mulm(a: u64, b: u64, m: u64) -> u64 {
    a * b % m
}

fn powm(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, m);
        }
        a = mulm(a, a, m);
        e >>= 1;
    }
    r
}

#[inline]
fn invm(a: u64, m: u64) -> u64 {
    debug_assert!(a % m != 0);
    powm(a, m - 2, m)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- dense polynomials over F_ell, little-endian coefficient vectors ----

fn pp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pp_mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, m), m);
        }
    }
    pp_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `f`.
fn pp_rem(a: &[u64], f: &[u64], m: u64) -> Vec<u64> {
    debug_assert_eq!(*f.last().unwrap(), 1);
    let mut r: Vec<u64> = a.to_vec();
    pp_trim(&mut r);
    let df = f.len() - 1;
    while r.len() > df {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        if lead != 0 {
            for (j, &fc) in f.iter().enumerate() {
                r[shift + j] = subm(r[shift + j], mulm(lead, fc, m), m);
            }
        }
        r.pop();
        pp_trim(&mut r);
    }
    r
}

fn pp_gcd(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    pp_trim(&mut x);
    pp_trim(&mut y);
    while !y.is_empty() {
        // make y monic before reducing
        let lead = *y.last().unwrap();
        if lead != 1 {
            let li = invm(lead, m);
            for c in y.iter_mut() {
                *c = mulm(*c, li, m);
            }
        }
        let r = pp_rem(&x, &y, m);
        x = y;
        y = r;
    }
    x
}

/// x^e mod f, by square-and-multiply on polynomials.
fn pp_xpow_mod(e: u64, f: &[u64], m: u64) -> Vec<u64> {
    let mut base = pp_rem(&[0, 1], f, m);
    let mut acc = vec![1u64];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = pp_rem(&pp_mul(&acc, &base, m), f, m);
        }
        base = pp_rem(&pp_mul(&base, &base, m), f, m);
        e >>= 1;
    }
    acc
}

/// Irreducibility over F_ell: `f` (monic, degree k) has no factor of degree
/// <= k/2 iff gcd(x^(ell^i) - x, f) is constant for all 1 <= i <= k/2.
fn pp_is_irreducible(f: &[u64], ell: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    for i in 1..=k / 2 {
        let q = (ell as u128).pow(i as u32) as u64;
        let mut g = pp_xpow_mod(q, f, ell);
        // g - x
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = subm(g[1], 1, ell);
        pp_trim(&mut g);
        let d = pp_gcd(f, &g, ell);
        if d.len() > 1 {
            return false;
        }
    }
    true
}

/// The finite field F_{ell^k}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    ell: u64,
    degree: usize,
    /// Monic irreducible modulus over F_ell, little-endian, length degree+1.
    modulus: Vec<u64>,
}

/// An element of a [`FieldSpec`], as coordinates in the power basis of the
/// modulus root. Always length `degree`, entries reduced into `[0, ell)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// Create a field spec; see [`FieldSpec::create`].
pub fn field_create(ell: u64, degree: usize, modulus: Option<Vec<u64>>) -> Result<Field> {
    FieldSpec::create(ell, degree, modulus).map(Arc::new)
}

impl FieldSpec {
    pub fn create(ell: u64, degree: usize, modulus: Option<Vec<u64>>) -> Result<FieldSpec> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if degree == 0 {
            return Err(Error::DegreeMismatch { want: 1, got: 0 });
        }
        let size = (ell as u128)
            .checked_pow(degree as u32)
            .unwrap_or(u128::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(size));
        }
        let modulus = match modulus {
            Some(mut f) => {
                for c in f.iter_mut() {
                    *c %= ell;
                }
                pp_trim(&mut f);
                if f.len() != degree + 1 {
                    return Err(Error::DegreeMismatch {
                        want: degree,
                        got: f.len().saturating_sub(1),
                    });
                }
                if *f.last().unwrap() != 1 {
                    return Err(Error::NotMonic);
                }
                if !pp_is_irreducible(&f, ell) {
                    return Err(Error::ReducibleModulus(ell));
                }
                f
            }
            None => default_modulus(ell, degree),
        };
        Ok(FieldSpec {
            ell,
            degree,
            modulus,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, ell^degree.
    pub fn order(&self) -> u64 {
        (self.ell as u128).pow(self.degree as u32) as u64
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: vec![0; self.degree],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FieldElem {
        let mut coeffs = vec![0; self.degree];
        coeffs[0] = c % self.ell;
        FieldElem { coeffs }
    }

    pub fn from_i64(&self, c: i64) -> FieldElem {
        let m = self.ell as i64;
        self.from_u64(c.rem_euclid(m) as u64)
    }

    /// Build an element from arbitrary coordinates; longer vectors are
    /// reduced modulo the modulus, shorter ones zero-padded.
    pub fn elem(&self, coeffs: &[u64]) -> FieldElem {
        let mut v: Vec<u64> = coeffs.iter().map(|&c| c % self.ell).collect();
        pp_trim(&mut v);
        if v.len() > self.degree {
            v = pp_rem(&v, &self.modulus, self.ell);
        }
        v.resize(self.degree, 0);
        FieldElem { coeffs: v }
    }

    /// The root of the modulus, i.e. the power-basis generator x.
    pub fn gen(&self) -> FieldElem {
        if self.degree == 1 {
            // modulus is x - c; the "generator" is the constant c
            return self.from_u64(self.ell - self.modulus[0] % self.ell);
        }
        let mut coeffs = vec![0; self.degree];
        coeffs[1] = 1;
        FieldElem { coeffs }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| addm(x, y, self.ell))
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| subm(x, y, self.ell))
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a.coeffs.iter().map(|&x| subm(0, x, self.ell)).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut v = pp_rem(&pp_mul(&a.coeffs, &b.coeffs, self.ell), &self.modulus, self.ell);
        v.resize(self.degree, 0);
        FieldElem { coeffs: v }
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// The Frobenius endomorphism x -> x^ell; the identity on prime fields,
    /// an automorphism of order `degree` in general.
    pub fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.pow(a, self.ell)
    }

    /// All field elements in a fixed lexicographic order (coordinate 0 varies
    /// fastest).
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let q = self.order();
        (0..q).map(move |idx| {
            let mut coeffs = vec![0u64; self.degree];
            let mut rem = idx;
            for c in coeffs.iter_mut() {
                *c = rem % self.ell;
                rem /= self.ell;
            }
            FieldElem { coeffs }
        })
    }

    /// Index of an element in the [`FieldSpec::elements`] enumeration.
    pub fn element_index(&self, a: &FieldElem) -> u64 {
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.ell + c;
        }
        idx
    }

    pub fn fmt_elem(&self, a: &FieldElem) -> String {
        if self.degree == 1 {
            format!("{}", a.coeffs[0])
        } else {
            format!("{:?}", a.coeffs)
        }
    }
}

/// The lexicographically smallest monic irreducible polynomial of the given
/// degree, coefficients compared low-degree-first. For degree 1 the
/// convention is the polynomial x.
fn default_modulus(ell: u64, degree: usize) -> Vec<u64> {
    if degree == 1 {
        return vec![0, 1];
    }
    let total = (ell as u128).pow(degree as u32);
    for idx in 0..total {
        // digit 0 is the most significant under low-degree-first lex order
        let mut coeffs = vec![0u64; degree + 1];
        coeffs[degree] = 1;
        let mut rem = idx;
        for pos in (0..degree).rev() {
            coeffs[pos] = (rem % ell as u128) as u64;
            rem /= ell as u128;
        }
        if pp_is_irreducible(&coeffs, ell) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_ell")
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (modulus {:?})", self.ell, self.degree, self.modulus)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

pub fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A ring embedding F_{ell^d} -> F_{ell^(dm)}, determined by the image of the
/// source power-basis generator. The image is the lexicographically least
/// root of the source modulus in the target, so the map is fixed once per
/// (source, target) pair.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    gen_image: FieldElem,
}

pub fn embedding(src: &Field, dst: &Field) -> Result<Embedding> {
    if src.ell() != dst.ell() || dst.degree() % src.degree() != 0 {
        return Err(Error::NoEmbedding {
            src: src.degree(),
            dst: dst.degree(),
        });
    }
    // Find the lexicographically least root of the source modulus in dst.
    let gen_image = dst
        .elements()
        .find(|cand| {
            // evaluate the source modulus at cand with scalar coefficients
            let mut acc = dst.zero();
            for &c in src.modulus().iter().rev() {
                acc = dst.mul(&acc, cand);
                acc = dst.add(&acc, &dst.from_u64(c));
            }
            dst.is_zero(&acc)
        })
        .expect("the source modulus splits in any extension of its splitting field");
    Ok(Embedding {
        src: src.clone(),
        dst: dst.clone(),
        gen_image,
    })
}

impl Embedding {
    pub fn src(&self) -> &Field {
        &self.src
    }

    pub fn dst(&self) -> &Field {
        &self.dst
    }

    pub fn apply(&self, x: &FieldElem) -> FieldElem {
        let mut acc = self.dst.zero();
        for &c in x.coeffs.iter().rev() {
            acc = self.dst.mul(&acc, &self.gen_image);
            acc = self.dst.add(&acc, &self.dst.from_u64(c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f5 = field_create(5, 1, None).unwrap();
        assert_eq!(f5.order(), 5);
        assert_eq!(f5.modulus(), &[0, 1]);
        let a = f5.from_u64(3);
        let b = f5.from_u64(4);
        assert_eq!(f5.mul(&a, &b), f5.from_u64(2));
        assert_eq!(f5.add(&a, &b), f5.from_u64(2));
        assert_eq!(f5.inv(&a).unwrap(), f5.from_u64(2));
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert!(matches!(field_create(4, 1, None), Err(Error::NotPrime(4))));
    }

    #[test]
    fn too_large_rejected() {
        assert!(matches!(
            field_create(2, 21, None),
            Err(Error::FieldTooLarge(_))
        ));
    }

    #[test]
    fn default_modulus_f49_is_lex_least() {
        // Oracle: enumerate monic quadratics over F_7 low-degree-first and
        // take the first without a root (degree 2: irreducible <=> rootless).
        let mut expected = None;
        'outer: for c0 in 0..7u64 {
            for c1 in 0..7u64 {
                let has_root = (0..7u64).any(|x| (x * x + c1 * x + c0) % 7 == 0);
                if !has_root {
                    expected = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        let f49 = field_create(7, 2, None).unwrap();
        assert_eq!(f49.modulus(), expected.unwrap().as_slice());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 1 = (x-1)(x+1) over F_5
        assert!(matches!(
            field_create(5, 2, Some(vec![4, 0, 1])),
            Err(Error::ReducibleModulus(5))
        ));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        // all fields with at most 121 elements for a few (ell, k)
        for (ell, k) in [(2u64, 1usize), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (11, 1), (7, 2)] {
            let f = field_create(ell, k, None).unwrap();
            let elems: Vec<_> = f.elements().collect();
            assert_eq!(elems.len() as u64, f.order());
            for a in &elems {
                // inverses
                if !f.is_zero(a) {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, &ai), f.one());
                }
                for b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &elems {
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_order_and_fixed_field() {
        let f49 = field_create(7, 2, None).unwrap();
        let g = f49.gen();
        let fg = f49.frobenius(&g);
        assert_eq!(fg, f49.pow(&g, 7));
        assert_eq!(f49.frobenius(&fg), g); // order 2
        assert_eq!(f49.frobenius(&f49.zero()), f49.zero());
        // identity on the prime field
        let f5 = field_create(5, 1, None).unwrap();
        for x in f5.elements() {
            assert_eq!(f5.frobenius(&x), x);
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = field_create(3, 3, None).unwrap();
        let elems: Vec<_> = f.elements().collect();
        for a in &elems {
            for b in &elems {
                assert_eq!(
                    f.frobenius(&f.add(a, b)),
                    f.add(&f.frobenius(a), &f.frobenius(b))
                );
            }
        }
    }

    #[test]
    fn embed_prime_subfield_is_constant() {
        let f5 = field_create(5, 1, None).unwrap();
        let f25 = field_create(5, 2, None).unwrap();
        let emb = embedding(&f5, &f25).unwrap();
        assert_eq!(emb.apply(&f5.from_u64(3)), f25.from_u64(3));
    }

    #[test]
    fn embed_down_fails() {
        let f5 = field_create(5, 1, None).unwrap();
        let f25 = field_create(5, 2, None).unwrap();
        assert!(matches!(
            embedding(&f25, &f5),
            Err(Error::NoEmbedding { src: 2, dst: 1 })
        ));
    }

    #[test]
    fn embed_f4_into_f16() {
        let f4 = field_create(2, 2, None).unwrap();
        let f16 = field_create(2, 4, None).unwrap();
        let emb = embedding(&f4, &f16).unwrap();
        let g = f4.gen();
        let img = emb.apply(&g);
        // g has multiplicative order 3 in F_4^*, so must its image
        assert_eq!(f16.pow(&img, 3), f16.one());
        assert_ne!(img, f16.one());
    }

    #[test]
    fn embedding_is_injective_ring_hom() {
        let f3 = field_create(3, 1, None).unwrap();
        let f9 = field_create(3, 2, None).unwrap();
        let f81 = field_create(3, 4, None).unwrap();
        for (src, dst) in [(&f3, &f9), (&f3, &f81), (&f9, &f81)] {
            let emb = embedding(src, dst).unwrap();
            let elems: Vec<_> = src.elements().collect();
            let mut images = std::collections::HashSet::new();
            for a in &elems {
                images.insert(dst.element_index(&emb.apply(a)));
                for b in &elems {
                    assert_eq!(emb.apply(&src.add(a, b)), dst.add(&emb.apply(a), &emb.apply(b)));
                    assert_eq!(emb.apply(&src.mul(a, b)), dst.mul(&emb.apply(a), &emb.apply(b)));
                }
            }
            assert_eq!(images.len(), elems.len());
        }
    }

    #[test]
    fn frobenius_iterated_k_times_is_identity() {
        for (ell, k) in [(2u64, 4usize), (3, 3), (5, 2), (7, 2)] {
            let f = field_create(ell, k, None).unwrap();
            for x in f.elements() {
                let mut y = x.clone();
                for _ in 0..k {
                    y = f.frobenius(&y);
                }
                assert_eq!(y, x);
            }
        }
    }
}
