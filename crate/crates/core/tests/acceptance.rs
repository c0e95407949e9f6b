//! End-to-end acceptance gate. Each criterion is a separate test that
//! prints one pass line on success (run with `--nocapture` to see them all;
//! the harness prints its own per-test pass/fail line either way).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use saturate_core::envelope::{is_absolutely_irreducible, is_saturated_points, nori_envelope};
use saturate_core::ff::{field_create, Field};
use saturate_core::json::FrobTableJson;
use saturate_core::matgrp::{
    exp_n, group_closure, log_n, t_power, FiniteMatrixGroup, SquareMatrix,
};
use saturate_core::rootdata::{
    dynkin_height, exterior_power_weights, height_under_tensor, simple_group_data, RepWeights,
    RootSystem, SimpleType,
};
use saturate_core::weilres::{
    restriction_height, weilres_embed, weilres_group, RestrictionContext,
};

fn all_matrices(field: &Field, n: usize) -> Vec<SquareMatrix> {
    let elems: Vec<_> = field.elements().collect();
    let mut out = vec![];
    let total = elems.len().pow((n * n) as u32);
    for mut code in 0..total {
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            entries.push(elems[code % elems.len()].clone());
            code /= elems.len();
        }
        out.push(SquareMatrix::from_entries(field, n, entries).unwrap());
    }
    out
}

fn sl2(ell: u64) -> (Field, FiniteMatrixGroup) {
    let f = field_create(ell, 1, None).unwrap();
    let a = SquareMatrix::transvection(&f, 2, 0, 1);
    let b = SquareMatrix::transvection(&f, 2, 1, 0);
    (f.clone(), group_closure(&[a, b], 10_000_000).unwrap())
}

fn gl2(ell: u64) -> (Field, FiniteMatrixGroup) {
    let f = field_create(ell, 1, None).unwrap();
    let a = SquareMatrix::transvection(&f, 2, 0, 1);
    let b = SquareMatrix::transvection(&f, 2, 1, 0);
    // any primitive root of F_ell extends SL_2 to the full GL_2
    let root = (2..ell)
        .find(|&c| {
            let mut x = c % ell;
            let mut ord = 1;
            while x != 1 {
                x = x * c % ell;
                ord += 1;
            }
            ord == ell - 1
        })
        .unwrap();
    let d = SquareMatrix::diagonal(&f, &[f.from_u64(root), f.one()]);
    (f.clone(), group_closure(&[a, b, d], 10_000_000).unwrap())
}

#[test]
fn c01_exp_log_bijection_exhaustive() {
    for ell in [5u64, 7, 11] {
        let f = field_create(ell, 1, None).unwrap();
        let mut nilpotents = 0;
        let mut unipotents = 0;
        for m in all_matrices(&f, 2) {
            if m.is_nilpotent() {
                nilpotents += 1;
                let u = exp_n(&m).unwrap();
                assert!(u.is_unipotent());
                assert_eq!(log_n(&u).unwrap(), m, "log(exp(X)) != X over F_{ell}");
            }
            if m.is_unipotent() {
                unipotents += 1;
                let x = log_n(&m).unwrap();
                assert!(x.is_nilpotent());
                assert_eq!(exp_n(&x).unwrap(), m, "exp(log(u)) != u over F_{ell}");
            }
        }
        // ell^2 nilpotents and ell^2 unipotents in the 2x2 case
        assert_eq!(nilpotents as u64, ell * ell);
        assert_eq!(unipotents as u64, ell * ell);
    }
    println!("criterion 1 pass: exp/log mutually inverse, exhaustive n=2, ell in {{5,7,11}}");
}

#[test]
fn c02_t_power_homomorphism() {
    let f = field_create(7, 1, None).unwrap();
    let scalars: Vec<_> = f.elements().collect();
    for u in all_matrices(&f, 2) {
        if !u.is_unipotent() {
            continue;
        }
        for s in &scalars {
            for t in &scalars {
                let lhs = t_power(&u, &f.add(s, t)).unwrap();
                let rhs = t_power(&u, s).unwrap().mul(&t_power(&u, t).unwrap());
                assert_eq!(lhs, rhs, "u^(s+t) != u^s u^t in GL_2(F_7)");
            }
        }
    }
    println!("criterion 2 pass: t-power homomorphism exhaustive over GL_2(F_7)");
}

#[test]
fn c03_envelope_oracle() {
    for ell in [5u64, 7, 11, 13] {
        let (_, g) = sl2(ell);
        let expected = (ell * (ell * ell - 1)) as usize;
        assert_eq!(g.order(), expected, "closure oracle order for ell={ell}");
        let env = nori_envelope(&g).unwrap();
        assert_eq!(env.group.order(), expected);
        assert!(env.group.same_elements(&g), "envelope differs from oracle");
        assert_eq!(env.lie_dim(), 3);
    }
    println!("criterion 3 pass: envelope order ell(ell^2-1), Lie dim 3, ell in {{5,7,11,13}}");
}

#[test]
fn c04_gamma_plus_oracle() {
    for ell in [5u64, 7] {
        let (_, full) = gl2(ell);
        let (_, special) = sl2(ell);
        assert_eq!(full.order() as u64, (ell - 1) * ell * (ell * ell - 1));
        let gp = full.gamma_plus().unwrap();
        assert!(gp.same_elements(&special), "gamma_plus(GL_2) != SL_2 for ell={ell}");
    }
    println!("criterion 4 pass: gamma_plus(GL_2(F_ell)) = SL_2(F_ell), ell in {{5,7}}");
}

#[test]
fn c05_tensor_saturation() {
    let f = field_create(5, 1, None).unwrap();
    let upper = vec![SquareMatrix::transvection(&f, 2, 0, 1)];
    let lower = vec![SquareMatrix::transvection(&f, 2, 1, 0)];
    let sl2_gens = vec![upper[0].clone(), lower[0].clone()];
    let torus = vec![SquareMatrix::diagonal(&f, &[f.from_u64(2), f.from_u64(3)])];
    let borel = vec![
        upper[0].clone(),
        SquareMatrix::diagonal(&f, &[f.from_u64(2), f.from_u64(3)]),
    ];
    let corpus: Vec<FiniteMatrixGroup> = [upper, lower, sl2_gens, torus, borel]
        .iter()
        .map(|gens| group_closure(gens, 10_000_000).unwrap())
        .collect();
    for g in &corpus {
        assert!(is_saturated_points(g).unwrap(), "corpus member not saturated");
    }
    let id = SquareMatrix::identity(&f, 2);
    for g1 in &corpus {
        for g2 in &corpus {
            // Kronecker image of the product: generated by g x I and I x h
            let mut gens = vec![];
            for g in g1.generators() {
                gens.push(g.tensor(&id).unwrap());
            }
            for h in g2.generators() {
                gens.push(id.tensor(h).unwrap());
            }
            let image = group_closure(&gens, 10_000_000).unwrap();
            assert!(
                is_saturated_points(&image).unwrap(),
                "Kronecker pair not saturated"
            );
        }
    }
    println!("criterion 5 pass: all Kronecker pairs of 5 saturated groups stay saturated");
}

#[test]
fn c06_dynkin_heights_and_tensor_additivity() {
    for n in 2..=6usize {
        let rs = RootSystem::new(SimpleType::A, n - 1).unwrap();
        for i in 1..n {
            let rep = RepWeights::irreducible_system(rs.clone(), exterior_power_weights(n, i))
                .unwrap();
            assert_eq!(dynkin_height(&rep), (i * (n - i)) as i64);
        }
    }
    let mut rng = StdRng::seed_from_u64(0xd1);
    let a2 = RootSystem::new(SimpleType::A, 2).unwrap();
    let a1 = RootSystem::new(SimpleType::A, 1).unwrap();
    for _ in 0..10 {
        let w1: Vec<Vec<i64>> = (0..3)
            .map(|_| (0..2).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let w2: Vec<Vec<i64>> = (0..2).map(|_| vec![rng.gen_range(-3..=3)]).collect();
        let h1 = dynkin_height(&RepWeights::irreducible_system(a2.clone(), w1.clone()).unwrap());
        let h2 = dynkin_height(&RepWeights::irreducible_system(a1.clone(), w2.clone()).unwrap());
        let joint = height_under_tensor(&[(a2.clone(), w1), (a1.clone(), w2)]).unwrap();
        assert_eq!(joint, h1 + h2, "external tensor height not additive");
    }
    println!("criterion 6 pass: exterior heights i(n-i) for n<=6; tensor additivity x10");
}

#[test]
fn c07_coxeter_cross_check() {
    let types: &[(SimpleType, std::ops::RangeInclusive<usize>)] = &[
        (SimpleType::A, 1..=8),
        (SimpleType::B, 2..=8),
        (SimpleType::C, 3..=8),
        (SimpleType::D, 4..=8),
        (SimpleType::E, 6..=8),
        (SimpleType::F, 4..=4),
        (SimpleType::G, 2..=2),
    ];
    for (t, ranks) in types {
        for r in ranks.clone() {
            let rs = RootSystem::new(*t, r).unwrap();
            assert_eq!(
                rs.coxeter_number(),
                rs.coxeter_via_rho(),
                "Coxeter mismatch for {t:?}_{r}"
            );
        }
    }
    for n in 2..=9usize {
        let rs = RootSystem::new(SimpleType::A, n - 1).unwrap();
        assert_eq!(rs.coxeter_number(), n as i64, "h(A_{}) != {n}", n - 1);
    }
    println!("criterion 7 pass: Coxeter number via highest root = via rho, all types rank<=8");
}

#[test]
fn c08_simple_group_tables() {
    let m = 4usize; // spot value for the rank-parameterized families
    let expect = [
        (SimpleType::A, m, m + 1, m + 1),
        (SimpleType::B, m, 2, 2 * m + 1),
        (SimpleType::C, m, 2, 2 * m),
        (SimpleType::D, m, 4, 2 * m),
        (SimpleType::E, 6, 3, 27),
        (SimpleType::E, 7, 2, 56),
        (SimpleType::E, 8, 1, 248),
        (SimpleType::F, 4, 1, 26),
        (SimpleType::G, 2, 1, 7),
    ];
    for &(t, r, center, dim) in &expect {
        let d = simple_group_data(t, r).unwrap();
        assert_eq!(
            (d.center_order, d.min_faithful_dim),
            (center as i64, dim as i64),
            "{t:?}_{r}"
        );
    }
    // center <= minimal dimension across every type and rank
    for (t, ranks) in [
        (SimpleType::A, 1..=8),
        (SimpleType::B, 2..=8),
        (SimpleType::C, 3..=8),
        (SimpleType::D, 4..=8),
        (SimpleType::E, 6..=8),
        (SimpleType::F, 4..=4),
        (SimpleType::G, 2..=2),
    ] {
        for r in ranks {
            let d = simple_group_data(t, r).unwrap();
            assert!(d.center_order <= d.min_faithful_dim, "{t:?}_{r}");
        }
    }
    println!("criterion 8 pass: center orders and minimal faithful dimensions match");
}

#[test]
fn c09_weil_restriction() {
    for d in 1..=6usize {
        for dim_v in 1..=6usize {
            let h = restriction_height(d, dim_v);
            assert_eq!(h, d * (dim_v - 1));
            assert_eq!(h, d * dim_v - d, "dimW - d identity");
        }
    }
    // exhaustive multiplicativity on GL_1(F_4)
    let f4 = field_create(2, 2, None).unwrap();
    let f2 = field_create(2, 1, None).unwrap();
    let ctx = RestrictionContext::new(&f4, &f2).unwrap();
    let units: Vec<SquareMatrix> = f4
        .elements()
        .filter(|x| !f4.is_zero(x))
        .map(|x| SquareMatrix::diagonal(&f4, &[x]))
        .collect();
    for a in &units {
        for b in &units {
            let lhs = weilres_embed(&ctx, &a.mul(b)).unwrap();
            let rhs = weilres_embed(&ctx, a).unwrap().mul(&weilres_embed(&ctx, b).unwrap());
            assert_eq!(lhs, rhs, "GL_1(F_4) multiplicativity");
        }
    }
    // 10^3 random pairs in GL_2(F_9)
    let f9 = field_create(3, 2, None).unwrap();
    let f3 = field_create(3, 1, None).unwrap();
    let ctx9 = RestrictionContext::new(&f9, &f3).unwrap();
    let elems: Vec<_> = f9.elements().collect();
    let mut rng = StdRng::seed_from_u64(0x9e11);
    let mut random_gl2 = || loop {
        let entries: Vec<_> = (0..4).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
        let m = SquareMatrix::from_entries(&f9, 2, entries).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    };
    for _ in 0..1000 {
        let a = random_gl2();
        let b = random_gl2();
        let lhs = weilres_embed(&ctx9, &a.mul(&b)).unwrap();
        let rhs = weilres_embed(&ctx9, &a).unwrap().mul(&weilres_embed(&ctx9, &b).unwrap());
        assert_eq!(lhs, rhs, "GL_2(F_9) multiplicativity");
    }
    // the (n,d,ell) = (2,2,5) counterexample: restricting SL_2(F_25)'s
    // subgroup SL_2(F_5) stays saturated over F_5 but its envelope has Lie
    // dimension 3, not the ambient 6
    let f25 = field_create(5, 2, None).unwrap();
    let f5 = field_create(5, 1, None).unwrap();
    let ctx25 = RestrictionContext::new(&f25, &f5).unwrap();
    let a = SquareMatrix::transvection(&f25, 2, 0, 1);
    let b = SquareMatrix::transvection(&f25, 2, 1, 0);
    let g = group_closure(&[a, b], 10_000_000).unwrap();
    let img = weilres_group(&ctx25, &g).unwrap();
    assert!(is_saturated_points(&img).unwrap());
    let env = nori_envelope(&img).unwrap();
    assert_eq!(env.lie_dim(), 3, "counterexample Lie dimension");
    println!("criterion 9 pass: restriction heights, multiplicativity, (2,2,5) counterexample");
}

#[test]
fn c10_frobenius_table() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    let good: FrobTableJson = serde_json::from_str(
        &std::fs::read_to_string(format!("{dir}/frob_table_50.json")).unwrap(),
    )
    .unwrap();
    let table = good.to_table().unwrap();
    assert_eq!(table.entries.len(), 50);
    let report = saturate_core::frobenius::validate_table(&table, Some(1)).unwrap();
    assert!(report.pass, "shipped table must validate");
    for e in &report.entries {
        let purity = e.purity.as_ref().unwrap();
        assert!(purity.max_deviation <= 1e-9);
        assert_eq!(purity.norm_identity, Some(true), "norm identity on {}", e.id);
    }
    let bad: FrobTableJson = serde_json::from_str(
        &std::fs::read_to_string(format!("{dir}/frob_table_bad.json")).unwrap(),
    )
    .unwrap();
    let bad_report =
        saturate_core::frobenius::validate_table(&bad.to_table().unwrap(), Some(1)).unwrap();
    assert!(!bad_report.pass, "mutated table must fail");
    let failing: Vec<_> = bad_report.entries.iter().filter(|e| !e.pass()).collect();
    assert_eq!(failing.len(), 1);
    assert!(!failing[0].witnesses.is_empty(), "failure must carry a witness");
    println!("criterion 10 pass: 50-entry table validates; mutation fails with witness");
}

/// Independent Burnside oracle: rank of the span of the group elements as
/// vectors in F_ell^(n^2), by plain Gaussian elimination on u64 entries.
fn span_rank_oracle(g: &FiniteMatrixGroup) -> usize {
    let ell = g.field().ell();
    assert_eq!(g.field().degree(), 1, "oracle written for prime fields");
    let width = g.dim() * g.dim();
    let mut rows: Vec<Vec<u64>> = g
        .iter()
        .map(|m| m.entries().iter().map(|e| e.coeffs()[0]).collect())
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = {
            // Fermat inverse mod ell
            let mut r = 1u64;
            let mut b = rows[rank][col];
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
        for j in 0..width {
            rows[rank][j] = rows[rank][j] * inv % ell;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let c = rows[r][col];
                for j in 0..width {
                    rows[r][j] = (rows[r][j] + (ell - c) * rows[rank][j]) % ell;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn c11_burnside_irreducibility() {
    let (f, special) = sl2(5);
    assert!(is_absolutely_irreducible(&special));
    let torus = group_closure(
        &[SquareMatrix::diagonal(&f, &[f.from_u64(2), f.from_u64(3)])],
        10_000_000,
    )
    .unwrap();
    assert!(!is_absolutely_irreducible(&torus));
    let elems: Vec<_> = f.elements().collect();
    let mut rng = StdRng::seed_from_u64(0xb5);
    let mut random_invertible = || loop {
        let entries: Vec<_> = (0..4).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
        let m = SquareMatrix::from_entries(&f, 2, entries).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    };
    for _ in 0..20 {
        let gens = vec![random_invertible(), random_invertible()];
        let g = group_closure(&gens, 10_000_000).unwrap();
        let expected = span_rank_oracle(&g) == g.dim() * g.dim();
        assert_eq!(
            is_absolutely_irreducible(&g),
            expected,
            "Burnside disagrees with the span-rank oracle"
        );
    }
    println!("criterion 11 pass: Burnside test agrees with span-rank oracle on 20 random groups");
}
