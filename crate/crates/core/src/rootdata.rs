//! Split root systems and representation weights: Dynkin heights, Coxeter
//! numbers, low-height and low-alcove predicates, torus-weight condition
//! checks, and the classification tables for simple groups.
//!
//! Simple roots carry Bourbaki numbering. The stored Cartan matrix uses the
//! convention `cartan[i][j] = <alpha_j, alpha_i_vee>`, so the pairing of a
//! root `beta` (coordinates in the simple-root basis) with the i-th simple
//! coroot is the dot product of `beta` with row i. All arithmetic is exact
//! integer or rational; no floating point.

use std::fmt;

use indexmap::IndexSet;
use num::rational::Ratio;
use num::Zero;

use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    pub fn parse(s: &str) -> Result<SimpleType> {
        match s {
            "A" | "a" => Ok(SimpleType::A),
            "B" | "b" => Ok(SimpleType::B),
            "C" | "c" => Ok(SimpleType::C),
            "D" | "d" => Ok(SimpleType::D),
            "E" | "e" => Ok(SimpleType::E),
            "F" | "f" => Ok(SimpleType::F),
            "G" | "g" => Ok(SimpleType::G),
            other => Err(Error::InvalidType(other.to_string())),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            SimpleType::A => 'A',
            SimpleType::B => 'B',
            SimpleType::C => 'C',
            SimpleType::D => 'D',
            SimpleType::E => 'E',
            SimpleType::F => 'F',
            SimpleType::G => 'G',
        };
        write!(f, "{c}")
    }
}

fn cartan_matrix(t: SimpleType, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::InvalidType(format!("{t}{rank}"));
    let n = rank;
    let chain = |long_short_edge: Option<(usize, usize, i64)>| {
        // simply laced chain 1-2-...-n, then override one edge
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            c[i][i] = 2;
            if i + 1 < n {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        if let Some((i, j, v)) = long_short_edge {
            c[i][j] = v;
        }
        c
    };
    match t {
        SimpleType::A => {
            if n < 1 {
                return Err(bad());
            }
            Ok(chain(None))
        }
        SimpleType::B => {
            // alpha_n short: <alpha_{n-1}, alpha_n_vee> = -2
            if n < 2 {
                return Err(bad());
            }
            Ok(chain(Some((n - 1, n - 2, -2))))
        }
        SimpleType::C => {
            // alpha_n long: <alpha_n, alpha_{n-1}_vee> = -2
            if n < 2 {
                return Err(bad());
            }
            Ok(chain(Some((n - 2, n - 1, -2))))
        }
        SimpleType::D => {
            if n < 3 {
                return Err(bad());
            }
            let mut c = vec![vec![0i64; n]; n];
            for i in 0..n {
                c[i][i] = 2;
            }
            for i in 0..n.saturating_sub(3) {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
            // alpha_{n-1} and alpha_n both attach to alpha_{n-2}
            for leaf in [n - 2, n - 1] {
                c[n - 3][leaf] = -1;
                c[leaf][n - 3] = -1;
            }
            Ok(c)
        }
        SimpleType::E => {
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            let mut c = vec![vec![0i64; n]; n];
            for i in 0..n {
                c[i][i] = 2;
            }
            // Bourbaki: chain 1-3-4-5-...-n, node 2 attached to node 4
            let mut edges = vec![(0, 2), (2, 3), (1, 3)];
            for i in 3..n - 1 {
                edges.push((i, i + 1));
            }
            for (i, j) in edges {
                c[i][j] = -1;
                c[j][i] = -1;
            }
            Ok(c)
        }
        SimpleType::F => {
            if n != 4 {
                return Err(bad());
            }
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            Ok(vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ])
        }
        SimpleType::G => {
            if n != 2 {
                return Err(bad());
            }
            // alpha_1 short, alpha_2 long
            Ok(vec![vec![2, -3], vec![-1, 2]])
        }
    }
}

fn symmetrizer(t: SimpleType, rank: usize) -> Vec<i64> {
    // d_i = (alpha_i, alpha_i)/2 with short roots normalized to d = 1
    let n = rank;
    match t {
        SimpleType::A | SimpleType::D | SimpleType::E => vec![1; n],
        SimpleType::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        SimpleType::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        SimpleType::F => vec![2, 2, 1, 1],
        SimpleType::G => vec![1, 3],
    }
}

fn close_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: IndexSet<Vec<i64>> = IndexSet::new();
    let mut current: Vec<Vec<i64>> = vec![];
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        roots.insert(e.clone());
        current.push(e);
    }
    while !current.is_empty() {
        let mut next = vec![];
        for beta in &current {
            for i in 0..n {
                // p = length of the root string below beta in direction alpha_i
                let mut p = 0i64;
                let mut gamma = beta.clone();
                loop {
                    gamma[i] -= 1;
                    if gamma[i] < 0 || !roots.contains(&gamma) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut cand = beta.clone();
                    cand[i] += 1;
                    if roots.insert(cand.clone()) {
                        next.push(cand);
                    }
                }
            }
        }
        current = next;
    }
    let mut out: Vec<Vec<i64>> = roots.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    out
}

/// An irreducible split root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    stype: SimpleType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
}

pub fn root_system(t: SimpleType, rank: usize) -> Result<RootSystem> {
    RootSystem::new(t, rank)
}

impl RootSystem {
    pub fn new(stype: SimpleType, rank: usize) -> Result<RootSystem> {
        let cartan = cartan_matrix(stype, rank)?;
        let d = symmetrizer(stype, rank);
        let positive_roots = close_positive_roots(&cartan);
        let max_height = positive_roots
            .iter()
            .map(|r| r.iter().sum::<i64>())
            .max()
            .unwrap();
        let top: Vec<&Vec<i64>> = positive_roots
            .iter()
            .filter(|r| r.iter().sum::<i64>() == max_height)
            .collect();
        debug_assert_eq!(top.len(), 1, "highest root must be unique");
        let highest_root = top[0].clone();
        Ok(RootSystem {
            stype,
            rank,
            cartan,
            d,
            positive_roots,
            highest_root,
        })
    }

    pub fn simple_type(&self) -> SimpleType {
        self.stype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `cartan()[i][j] = <alpha_j, alpha_i_vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    /// Half squared length (beta, beta)/2 of a root, with short roots
    /// normalized to 1.
    pub fn root_length2(&self, beta: &[i64]) -> i64 {
        let n = self.rank;
        let mut acc = 0i64;
        for i in 0..n {
            for j in 0..n {
                acc += beta[i] * beta[j] * self.d[i] * self.cartan[i][j];
            }
        }
        debug_assert_eq!(acc % 2, 0);
        acc / 2
    }

    /// Coordinates of beta_vee in the simple-coroot basis:
    /// c_i = d_i * beta_i / d_beta.
    pub fn coroot_coeffs(&self, beta: &[i64]) -> Vec<i64> {
        let db = self.root_length2(beta);
        (0..self.rank)
            .map(|i| {
                let num = self.d[i] * beta[i];
                debug_assert_eq!(num % db, 0);
                num / db
            })
            .collect()
    }

    /// The highest short coroot beta_vee, expressed in simple-coroot
    /// coordinates: the highest root of the dual system.
    pub fn dual_highest_root(&self) -> Vec<i64> {
        let n = self.rank;
        let transposed: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.cartan[j][i]).collect())
            .collect();
        let dual_roots = close_positive_roots(&transposed);
        dual_roots
            .into_iter()
            .max_by_key(|r| (r.iter().sum::<i64>(), r.clone()))
            .unwrap()
    }

    /// 1 plus the coefficient sum of the highest root.
    pub fn coxeter_number(&self) -> i64 {
        1 + self.highest_root.iter().sum::<i64>()
    }

    /// <rho, beta_vee> + 1 for the highest short coroot beta_vee; since
    /// <rho, alpha_i_vee> = 1, this is 1 plus the coefficient sum of the dual
    /// highest root. Cross-validates coxeter_number.
    pub fn coxeter_via_rho(&self) -> i64 {
        1 + self.dual_highest_root().iter().sum::<i64>()
    }

    /// Sum over positive roots of the coroot coefficient vectors (the
    /// coordinates of 2 rho_vee); pairing a weight against this gives its
    /// height contribution.
    pub fn two_rho_vee(&self) -> Vec<i64> {
        let mut acc = vec![0i64; self.rank];
        for beta in &self.positive_roots {
            for (a, c) in acc.iter_mut().zip(self.coroot_coeffs(beta)) {
                *a += c;
            }
        }
        acc
    }

    /// Simple reflection s_i acting on a weight in fundamental coordinates.
    pub fn reflect(&self, i: usize, w: &[i64]) -> Vec<i64> {
        // s_i(w) = w - w_i * alpha_i, and alpha_i has fundamental
        // coordinates <alpha_i, alpha_j_vee> = cartan[j][i]
        (0..self.rank)
            .map(|j| w[j] - w[i] * self.cartan[j][i])
            .collect()
    }
}

/// A finite product of irreducible systems; weights are concatenated
/// fundamental coordinates.
#[derive(Clone, Debug)]
pub struct SemisimpleSystem {
    factors: Vec<RootSystem>,
}

impl SemisimpleSystem {
    pub fn new(factors: Vec<RootSystem>) -> SemisimpleSystem {
        SemisimpleSystem { factors }
    }

    pub fn factors(&self) -> &[RootSystem] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).sum()
    }

    /// Max over the simple factors.
    pub fn coxeter_number(&self) -> i64 {
        self.factors
            .iter()
            .map(|f| f.coxeter_number())
            .max()
            .unwrap_or(1)
    }

    fn two_rho_vee(&self) -> Vec<i64> {
        self.factors.iter().flat_map(|f| f.two_rho_vee()).collect()
    }
}

/// A multiset of integral weights of a representation, in concatenated
/// fundamental coordinates of the underlying semisimple system.
#[derive(Clone, Debug)]
pub struct RepWeights {
    system: SemisimpleSystem,
    weights: Vec<Vec<i64>>,
}

impl RepWeights {
    pub fn new(system: SemisimpleSystem, weights: Vec<Vec<i64>>) -> Result<RepWeights> {
        let rank = system.rank();
        if let Some(w) = weights.iter().find(|w| w.len() != rank) {
            return Err(Error::WeightLatticeMismatch(format!(
                "weight of length {} in a rank-{} system",
                w.len(),
                rank
            )));
        }
        Ok(RepWeights { system, weights })
    }

    pub fn irreducible_system(rs: RootSystem, weights: Vec<Vec<i64>>) -> Result<RepWeights> {
        RepWeights::new(SemisimpleSystem::new(vec![rs]), weights)
    }

    pub fn system(&self) -> &SemisimpleSystem {
        &self.system
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Whether the weight multiset is stable under every simple reflection
    /// (hence under the whole Weyl group).
    pub fn is_weyl_stable(&self) -> bool {
        let mut sorted = self.weights.clone();
        sorted.sort();
        let mut offset = 0;
        for f in self.system.factors() {
            for i in 0..f.rank() {
                let mut reflected: Vec<Vec<i64>> = self
                    .weights
                    .iter()
                    .map(|w| {
                        let mut out = w.clone();
                        let local: Vec<i64> = w[offset..offset + f.rank()].to_vec();
                        out[offset..offset + f.rank()].clone_from_slice(&f.reflect(i, &local));
                        out
                    })
                    .collect();
                reflected.sort();
                if reflected != sorted {
                    return false;
                }
            }
            offset += f.rank();
        }
        true
    }
}

/// max over weights of the sum over positive roots of the coroot pairings.
pub fn dynkin_height(rep: &RepWeights) -> i64 {
    let s = rep.system.two_rho_vee();
    rep.weights
        .iter()
        .map(|w| w.iter().zip(&s).map(|(a, b)| a * b).sum::<i64>())
        .max()
        .unwrap_or(0)
}

/// Height of an irreducible via the coefficient formula: write
/// lambda_plus - lambda_minus = sum m_i alpha_i and return sum m_i. The
/// result is an exact rational (integral on the root lattice).
pub fn height_from_extreme_weights(
    rs: &RootSystem,
    lambda_plus: &[i64],
    lambda_minus: &[i64],
) -> Result<Ratio<i64>> {
    let n = rs.rank();
    if lambda_plus.len() != n || lambda_minus.len() != n {
        return Err(Error::WeightLatticeMismatch(format!(
            "extreme weights must have length {n}"
        )));
    }
    // fundamental coords of sum m_j alpha_j are A * m with A = cartan
    // (A[i][j] = <alpha_j, alpha_i_vee>), so solve A m = diff
    let mut aug: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = rs.cartan[i]
                .iter()
                .map(|&c| Ratio::from_integer(c))
                .collect();
            row.push(Ratio::from_integer(lambda_plus[i] - lambda_minus[i]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        aug.swap(col, piv);
        let c = aug[col][col];
        for x in aug[col].iter_mut() {
            *x /= c;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let c = aug[r][col];
                for j in 0..=n {
                    let s = aug[col][j] * c;
                    aug[r][j] -= s;
                }
            }
        }
    }
    Ok((0..n).map(|i| aug[i][n]).sum())
}

pub fn is_low_height(rep: &RepWeights, ell: u64) -> bool {
    (ell as i64) > dynkin_height(rep)
}

/// Height of the external tensor product of the given factor
/// representations; asserts it equals the sum of the factor heights.
pub fn height_under_tensor(factors: &[(RootSystem, Vec<Vec<i64>>)]) -> Result<i64> {
    let mut sum = 0i64;
    for (rs, ws) in factors {
        sum += dynkin_height(&RepWeights::irreducible_system(rs.clone(), ws.clone())?);
    }
    // direct computation on the product: weights are all concatenations
    let systems: Vec<RootSystem> = factors.iter().map(|(rs, _)| rs.clone()).collect();
    let mut combos: Vec<Vec<i64>> = vec![vec![]];
    for (_, ws) in factors {
        let mut next = vec![];
        for c in &combos {
            for w in ws {
                let mut cc = c.clone();
                cc.extend_from_slice(w);
                next.push(cc);
            }
        }
        combos = next;
    }
    let product = RepWeights::new(SemisimpleSystem::new(systems), combos)?;
    let direct = dynkin_height(&product);
    debug_assert_eq!(direct, sum);
    Ok(direct)
}

/// Whether <rho + mu, alpha_0_vee> <= 2(n-1) and < ell, for the highest
/// short coroot alpha_0_vee.
pub fn low_alcove_check(rs: &RootSystem, mu: &[i64], n: usize, ell: u64) -> Result<bool> {
    if mu.len() != rs.rank() {
        return Err(Error::WeightLatticeMismatch(format!(
            "mu must have length {}",
            rs.rank()
        )));
    }
    if mu.iter().any(|&c| c < 0) {
        return Err(Error::NotDominant);
    }
    let c = rs.dual_highest_root();
    let pairing: i64 = c.iter().zip(mu).map(|(ci, mi)| ci * (1 + mi)).sum();
    Ok(pairing <= 2 * (n as i64 - 1) && pairing < ell as i64)
}

/// Outcome of the three torus-weight conditions, with witnesses on failure.
#[derive(Clone, Debug)]
pub struct WeightConditionReport {
    pub multiplicity_one: bool,
    pub reduced: bool,
    pub exponents_bounded: bool,
    pub witnesses: Vec<String>,
}

impl WeightConditionReport {
    pub fn all_pass(&self) -> bool {
        self.multiplicity_one && self.reduced && self.exponents_bounded
    }
}

fn primitive_ray(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| num::integer::gcd(acc, x.abs()));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Check the root-datum conditions on a supplied candidate root set Phi
/// against the torus weights of V:
/// (i) each alpha in Phi occurs with multiplicity one among the weights of
/// End(V); (ii) Phi is reduced (the integer multiples of alpha inside Phi
/// are only +-alpha); (iii) for each alpha, the exponents i >= 1 with
/// i * alpha_hat among the End(V)-weights (alpha_hat the primitive vector on
/// the ray through alpha) all lie in {1, ..., ell-1}.
pub fn weight_conditions(
    weights_on_v: &[Vec<i64>],
    phi: &[Vec<i64>],
    ell: u64,
) -> WeightConditionReport {
    let mut witnesses = vec![];
    // weights of End(V) = all pairwise differences
    let mut end_weights: Vec<Vec<i64>> = vec![];
    for w1 in weights_on_v {
        for w2 in weights_on_v {
            end_weights.push(w1.iter().zip(w2).map(|(a, b)| a - b).collect());
        }
    }
    let mut multiplicity_one = true;
    for alpha in phi {
        let mult = end_weights.iter().filter(|w| *w == alpha).count();
        if mult != 1 {
            multiplicity_one = false;
            witnesses.push(format!(
                "(i): root {alpha:?} has multiplicity {mult} in End(V)"
            ));
        }
    }
    let mut reduced = true;
    for alpha in phi {
        for beta in phi {
            if beta == alpha {
                continue;
            }
            // beta an integer multiple of alpha other than -alpha?
            let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
            if *beta == neg {
                continue;
            }
            if primitive_ray(beta) == primitive_ray(alpha)
                || primitive_ray(beta) == primitive_ray(&neg)
            {
                reduced = false;
                witnesses.push(format!("(ii): {beta:?} is proportional to {alpha:?}"));
            }
        }
    }
    let mut exponents_bounded = true;
    for alpha in phi {
        let hat = primitive_ray(alpha);
        if hat.iter().all(|&x| x == 0) {
            continue;
        }
        let mut exponents = vec![];
        for w in &end_weights {
            // w = i * hat for some positive integer i?
            if let Some(k) = hat.iter().position(|&x| x != 0) {
                if w[k] % hat[k] == 0 {
                    let i = w[k] / hat[k];
                    if i >= 1 && hat.iter().zip(w).all(|(&h, &x)| x == i * h) {
                        exponents.push(i);
                    }
                }
            }
        }
        exponents.sort();
        exponents.dedup();
        for i in exponents {
            if i < 1 || i > ell as i64 - 1 {
                exponents_bounded = false;
                witnesses.push(format!(
                    "(iii): exponent {i} along {alpha:?} outside 1..{}",
                    ell - 1
                ));
            }
        }
    }
    WeightConditionReport {
        multiplicity_one,
        reduced,
        exponents_bounded,
        witnesses,
    }
}

/// Classification data for a simple, simply connected group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleGroupData {
    pub center_order: i64,
    pub min_faithful_dim: i64,
    pub coxeter: i64,
}

pub fn simple_group_data(t: SimpleType, rank: usize) -> Result<SimpleGroupData> {
    // validate the (type, rank) pair
    let _ = cartan_matrix(t, rank)?;
    let m = rank as i64;
    let data = match t {
        SimpleType::A => SimpleGroupData {
            center_order: m + 1,
            min_faithful_dim: m + 1,
            coxeter: m + 1,
        },
        SimpleType::B => SimpleGroupData {
            center_order: 2,
            min_faithful_dim: 2 * m + 1,
            coxeter: 2 * m,
        },
        SimpleType::C => SimpleGroupData {
            center_order: 2,
            min_faithful_dim: 2 * m,
            coxeter: 2 * m,
        },
        SimpleType::D => SimpleGroupData {
            center_order: 4,
            min_faithful_dim: 2 * m,
            coxeter: 2 * m - 2,
        },
        SimpleType::E => match rank {
            6 => SimpleGroupData {
                center_order: 3,
                min_faithful_dim: 27,
                coxeter: 12,
            },
            7 => SimpleGroupData {
                center_order: 2,
                min_faithful_dim: 56,
                coxeter: 18,
            },
            _ => SimpleGroupData {
                center_order: 1,
                min_faithful_dim: 248,
                coxeter: 30,
            },
        },
        SimpleType::F => SimpleGroupData {
            center_order: 1,
            min_faithful_dim: 26,
            coxeter: 12,
        },
        SimpleType::G => SimpleGroupData {
            center_order: 1,
            min_faithful_dim: 7,
            coxeter: 6,
        },
    };
    Ok(data)
}

/// Split a weight of a product system into its per-factor components.
pub fn tensor_weight_split(sys: &SemisimpleSystem, w: &[i64]) -> Result<Vec<Vec<i64>>> {
    if w.len() != sys.rank() {
        return Err(Error::WeightLatticeMismatch(format!(
            "weight length {} vs system rank {}",
            w.len(),
            sys.rank()
        )));
    }
    let mut out = vec![];
    let mut offset = 0;
    for f in sys.factors() {
        out.push(w[offset..offset + f.rank()].to_vec());
        offset += f.rank();
    }
    Ok(out)
}

/// Weights of the i-th exterior power of the standard representation of
/// A_{n-1}, in fundamental coordinates: one weight per i-element subset S of
/// {1..n}, with k-th coordinate [k in S] - [k+1 in S].
pub fn exterior_power_weights(n: usize, i: usize) -> Vec<Vec<i64>> {
    assert!(i <= n && n >= 1);
    let mut out = vec![];
    let mut subset: Vec<usize> = (1..=i).collect();
    loop {
        let w: Vec<i64> = (1..n)
            .map(|k| i64::from(subset.contains(&k)) - i64::from(subset.contains(&(k + 1))))
            .collect();
        out.push(w);
        // next i-subset of {1..n} in lexicographic order
        let mut pos = i;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if subset[pos] < n - (i - 1 - pos) {
                subset[pos] += 1;
                for j in pos + 1..i {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Saturated-subgroup height comparison helper: ht_H(V) <= ht_G(V).
pub fn height_monotone(sub: &RepWeights, amb: &RepWeights) -> bool {
    dynkin_height(sub) <= dynkin_height(amb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: SimpleType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            (SimpleType::A, 1, 1),
            (SimpleType::A, 4, 10),
            (SimpleType::B, 2, 4),
            (SimpleType::B, 4, 16),
            (SimpleType::C, 3, 9),
            (SimpleType::D, 4, 12),
            (SimpleType::D, 5, 20),
            (SimpleType::E, 6, 36),
            (SimpleType::E, 7, 63),
            (SimpleType::E, 8, 120),
            (SimpleType::F, 4, 24),
            (SimpleType::G, 2, 6),
        ];
        for (t, r, count) in cases {
            assert_eq!(rs(t, r).positive_roots().len(), count, "{t}{r}");
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(rs(SimpleType::A, 3).highest_root(), &[1, 1, 1]);
        assert_eq!(rs(SimpleType::B, 3).highest_root(), &[1, 2, 2]);
        assert_eq!(rs(SimpleType::C, 3).highest_root(), &[2, 2, 1]);
        assert_eq!(rs(SimpleType::G, 2).highest_root(), &[3, 2]);
        assert_eq!(rs(SimpleType::F, 4).highest_root(), &[2, 3, 4, 2]);
        assert_eq!(
            rs(SimpleType::E, 8).highest_root(),
            &[2, 3, 4, 6, 5, 4, 3, 2]
        );
    }

    #[test]
    fn b_and_c_are_distinguished_by_lengths() {
        // B_n has exactly n short positive roots; C_n has exactly n long ones
        for n in 2..=4 {
            let b = rs(SimpleType::B, n);
            let short = b
                .positive_roots()
                .iter()
                .filter(|r| b.root_length2(r) == 1)
                .count();
            assert_eq!(short, n);
            let c = rs(SimpleType::C, n);
            let long = c
                .positive_roots()
                .iter()
                .filter(|r| c.root_length2(r) == 2)
                .count();
            assert_eq!(long, n);
        }
    }

    #[test]
    fn coxeter_numbers_and_cross_check() {
        let all: Vec<(SimpleType, usize)> = (1..=8)
            .map(|r| (SimpleType::A, r))
            .chain((2..=8).map(|r| (SimpleType::B, r)))
            .chain((2..=8).map(|r| (SimpleType::C, r)))
            .chain((3..=8).map(|r| (SimpleType::D, r)))
            .chain([
                (SimpleType::E, 6),
                (SimpleType::E, 7),
                (SimpleType::E, 8),
                (SimpleType::F, 4),
                (SimpleType::G, 2),
            ])
            .collect();
        for (t, r) in all {
            let s = rs(t, r);
            assert_eq!(s.coxeter_number(), s.coxeter_via_rho(), "{t}{r}");
        }
        // A_{n-1} gives n (the GL(V) value dim V)
        for n in 2..=9 {
            assert_eq!(rs(SimpleType::A, n - 1).coxeter_number(), n as i64);
        }
        assert_eq!(rs(SimpleType::G, 2).coxeter_number(), 6);
        assert_eq!(rs(SimpleType::E, 8).coxeter_number(), 30);
    }

    #[test]
    fn exterior_power_heights() {
        for n in 2..=6usize {
            for i in 1..n {
                let a = rs(SimpleType::A, n - 1);
                let rep =
                    RepWeights::irreducible_system(a, exterior_power_weights(n, i)).unwrap();
                assert_eq!(rep.dim(), num::integer::binomial(n, i));
                assert!(rep.is_weyl_stable());
                assert_eq!(dynkin_height(&rep), (i * (n - i)) as i64, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn trivial_and_adjoint_heights() {
        let a1 = rs(SimpleType::A, 1);
        let trivial = RepWeights::irreducible_system(a1.clone(), vec![vec![0]]).unwrap();
        assert_eq!(dynkin_height(&trivial), 0);
        let adjoint =
            RepWeights::irreducible_system(a1.clone(), vec![vec![2], vec![0], vec![-2]]).unwrap();
        assert_eq!(dynkin_height(&adjoint), 2);
        // coefficient formula agrees
        assert_eq!(
            height_from_extreme_weights(&a1, &[2], &[-2]).unwrap(),
            Ratio::from_integer(2)
        );
        assert_eq!(
            height_from_extreme_weights(&a1, &[1], &[-1]).unwrap(),
            Ratio::from_integer(1)
        );
        let a2 = rs(SimpleType::A, 2);
        assert_eq!(
            height_from_extreme_weights(&a2, &[1, 0], &[0, -1]).unwrap(),
            Ratio::from_integer(2)
        );
    }

    #[test]
    fn tensor_height_additivity() {
        let a1 = rs(SimpleType::A, 1);
        let std_w = vec![vec![1], vec![-1]];
        let total = height_under_tensor(&[
            (a1.clone(), std_w.clone()),
            (a1.clone(), std_w.clone()),
        ])
        .unwrap();
        assert_eq!(total, 2);
    }

    #[test]
    fn low_alcove_examples() {
        let a1 = rs(SimpleType::A, 1);
        assert!(low_alcove_check(&a1, &[1], 2, 7).unwrap());
        // mu = 0 reduces to h - 1 <= 2(n-1)
        assert!(low_alcove_check(&a1, &[0], 2, 7).unwrap());
        let a2 = rs(SimpleType::A, 2);
        assert!(!low_alcove_check(&a2, &[3, 0], 3, 11).unwrap());
        assert!(matches!(
            low_alcove_check(&a2, &[-1, 0], 3, 11),
            Err(Error::NotDominant)
        ));
    }

    #[test]
    fn weight_condition_examples() {
        // standard A_1 weights {+1, -1} with Phi = {+-2}
        let weights = vec![vec![1], vec![-1]];
        let phi = vec![vec![2], vec![-2]];
        let rep5 = weight_conditions(&weights, &phi, 5);
        assert!(rep5.all_pass(), "{:?}", rep5.witnesses);
        let rep2 = weight_conditions(&weights, &phi, 2);
        assert!(rep2.multiplicity_one && rep2.reduced && !rep2.exponents_bounded);
        // non-reduced Phi
        let phi_bad = vec![vec![2], vec![-2], vec![4], vec![-4]];
        let rep = weight_conditions(&weights, &phi_bad, 11);
        assert!(!rep.reduced);
    }

    #[test]
    fn simple_group_tables() {
        let check = |t, r, center, dim, h| {
            let d = simple_group_data(t, r).unwrap();
            assert_eq!((d.center_order, d.min_faithful_dim, d.coxeter), (center, dim, h));
            assert!(d.center_order <= d.min_faithful_dim);
        };
        check(SimpleType::A, 4, 5, 5, 5);
        check(SimpleType::B, 3, 2, 7, 6);
        check(SimpleType::C, 3, 2, 6, 6);
        check(SimpleType::D, 4, 4, 8, 6);
        check(SimpleType::E, 6, 3, 27, 12);
        check(SimpleType::E, 7, 2, 56, 18);
        check(SimpleType::E, 8, 1, 248, 30);
        check(SimpleType::F, 4, 1, 26, 12);
        check(SimpleType::G, 2, 1, 7, 6);
        // table Coxeter numbers agree with the root-system computation
        for (t, r) in [
            (SimpleType::A, 5),
            (SimpleType::B, 4),
            (SimpleType::C, 4),
            (SimpleType::D, 5),
            (SimpleType::F, 4),
            (SimpleType::G, 2),
        ] {
            assert_eq!(
                simple_group_data(t, r).unwrap().coxeter,
                rs(t, r).coxeter_number()
            );
        }
    }

    #[test]
    fn tensor_split_and_recompose() {
        let sys = SemisimpleSystem::new(vec![rs(SimpleType::A, 1), rs(SimpleType::A, 1)]);
        let parts = tensor_weight_split(&sys, &[1, 1]).unwrap();
        assert_eq!(parts, vec![vec![1], vec![1]]);
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::new(SimpleType::E, 5).is_err());
        assert!(RootSystem::new(SimpleType::F, 3).is_err());
        assert!(RootSystem::new(SimpleType::G, 3).is_err());
        assert!(RootSystem::new(SimpleType::B, 1).is_err());
        assert!(SimpleType::parse("H").is_err());
    }

    #[test]
    fn height_monotonicity_helper() {
        let a1 = rs(SimpleType::A, 1);
        let std = RepWeights::irreducible_system(a1.clone(), vec![vec![1], vec![-1]]).unwrap();
        let adj =
            RepWeights::irreducible_system(a1, vec![vec![2], vec![0], vec![-2]]).unwrap();
        assert!(height_monotone(&std, &adj));
        assert!(!height_monotone(&adj, &std));
    }
}
