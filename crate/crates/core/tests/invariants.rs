mod common;

use common::gen;
use hypermin::invariants::{
    cubic_covariant, invariants_even, ternary_cubic_invariants, ternary_invariants, transvectant,
};
use hypermin::{Form, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use std::collections::BTreeMap;

fn ternary(s: &str) -> Form {
    Form::parse_with_vars(s, 3).unwrap()
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `F(x) G(y) H(z)` as a form in the nine variables `x0..x2, y0..y2, z0..z2`.
fn product9(f: &Form, g: &Form, h: &Form) -> Form {
    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            for (c, cc) in h.terms() {
                let e: Vec<u32> = a.iter().chain(b).chain(c).copied().collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += ca * cb * cc;
            }
        }
    }
    Form::new(9, f.degree() + g.degree() + h.degree(), terms).unwrap()
}

/// One application of the 3×3 operator determinant, term by term over the six permutations.
fn apply_delta(p: &Form) -> Form {
    let perms: [([usize; 3], i64); 6] =
        [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];
    let mut out = Form::zero(9, p.degree().saturating_sub(3));
    for (perm, sign) in perms {
        let mut a = vec![0u32; 9];
        for (block, &v) in perm.iter().enumerate() {
            a[3 * block + v] = 1;
        }
        let d = p.partial(&a);
        if !d.is_zero() {
            out = out.add(&d.scale(&big(sign))).unwrap();
        }
    }
    out
}

/// Set `y = z = x` in a nine-variable form.
fn diagonal(p: &Form) -> Form {
    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (e, c) in p.terms() {
        let x: Vec<u32> = (0..3).map(|i| e[i] + e[3 + i] + e[6 + i]).collect();
        *terms.entry(x).or_insert_with(BigInt::zero) += c;
    }
    Form::new(3, p.degree(), terms).unwrap()
}

fn naive_transvectant(f: &Form, g: &Form, h: &Form, k: u32) -> Form {
    let mut p = product9(f, g, h);
    for _ in 0..k {
        p = apply_delta(&p);
    }
    diagonal(&p)
}

fn hessian_det(f: &Form) -> Form {
    let h: Vec<Vec<Form>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let mut a = [0u32; 3];
                    a[i] += 1;
                    a[j] += 1;
                    f.partial(&a)
                })
                .collect()
        })
        .collect();
    let m = |a: &Form, b: &Form| a.mul(b).unwrap();
    let minor =
        |r: usize, c1: usize, c2: usize| m(&h[r][c1], &h[r + 1][c2]).add(&m(&h[r][c2], &h[r + 1][c1]).neg()).unwrap();
    let t0 = m(&h[0][0], &minor(1, 1, 2));
    let t1 = m(&h[0][1], &minor(1, 0, 2)).neg();
    let t2 = m(&h[0][2], &minor(1, 0, 1));
    t0.add(&t1).unwrap().add(&t2).unwrap()
}

fn det_power(t: &IntMatrix, k: u32) -> BigInt {
    num_traits::pow(t.det(), k as usize)
}

#[test]
fn expansion_matches_naive_operator() {
    let mut rng = gen::rng(1);
    for _ in 0..12 {
        let degs: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
        let (f, g, h) = (
            gen::form(&mut rng, 3, degs[0], 3),
            gen::form(&mut rng, 3, degs[1], 3),
            gen::form(&mut rng, 3, degs[2], 3),
        );
        for k in 0..=3 {
            let fast = transvectant(&f, &g, &h, k).unwrap();
            let slow = naive_transvectant(&f, &g, &h, k);
            if slow.is_zero() {
                assert!(fast.is_zero(), "k = {k}: {f}, {g}, {h}");
            } else {
                assert_eq!(fast, slow, "k = {k}: {f}, {g}, {h}");
            }
        }
    }
}

#[test]
fn odd_order_with_repeated_arguments_vanishes() {
    let mut rng = gen::rng(2);
    for _ in 0..100 {
        let d = rng.gen_range(2..=4);
        let f = gen::form(&mut rng, 3, d, 5);
        let dg = rng.gen_range(1..=4);
        let g = gen::form(&mut rng, 3, dg, 5);
        let k = if d >= 3 && rng.gen_bool(0.5) { 3 } else { 1 };
        assert!(transvectant(&f, &f, &g, k).unwrap().is_zero(), "{f}, {g}, {k}");
        assert!(transvectant(&g, &f, &f, k).unwrap().is_zero(), "{f}, {g}, {k}");
        assert!(transvectant(&f, &g, &f, k).unwrap().is_zero(), "{f}, {g}, {k}");
    }
}

#[test]
fn second_transvectant_is_six_times_the_hessian() {
    let mut rng = gen::rng(3);
    for _ in 0..30 {
        let d = rng.gen_range(2..=4);
        let f = gen::form(&mut rng, 3, d, 6);
        let u = transvectant(&f, &f, &f, 2).unwrap();
        let h = hessian_det(&f).scale(&big(6));
        assert!((u.is_zero() && h.is_zero()) || u == h, "{f}");
    }
}

#[test]
fn cubic_anchor_and_its_rescalings() {
    let f = ternary("x0*x1*x2 + x1^3 + x2^3");
    assert_eq!(ternary_cubic_invariants(&f).unwrap(), (big(1), big(-1)));
    // p^{-2} F(x, p y, p z) at p = 5
    let g = ternary("x0*x1*x2 + 5*x1^3 + 5*x2^3");
    assert_eq!(f.scale_vars_pow(&[0, 1, 1], 5).div_pow(5, 2), g);
    assert_eq!(ternary_cubic_invariants(&g).unwrap(), (big(1), big(-1)));
}

#[test]
fn conic_invariant_is_a_multiple_of_the_determinant() {
    let unit = invariants_even(&ternary("x0^2 + x1^2 + x2^2")).unwrap().0;
    assert!(!unit.is_zero());
    let mut rng = gen::rng(4);
    for _ in 0..50 {
        let q = gen::form(&mut rng, 3, 2, 9);
        // Symmetric matrix with doubled diagonal: 2·F(x) = x·A·xᵀ.
        let mut a = vec![vec![BigInt::zero(); 3]; 3];
        for (e, c) in q.terms() {
            let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            if idx[0] == idx[1] {
                a[idx[0]][idx[0]] = c * 2;
            } else {
                a[idx[0]][idx[1]] = c.clone();
                a[idx[1]][idx[0]] = c.clone();
            }
        }
        let det = IntMatrix::new(a).unwrap().det();
        assert_eq!(invariants_even(&q).unwrap().0 * 8, &unit * det, "{q}");
    }
}

#[test]
fn dns_sextic_gcd() {
    let f = ternary(common::DNS_SEXTIC);
    assert_eq!(ternary_invariants(&f).unwrap().gcd(), big(867041280));
}

#[test]
fn diagonal_scaling_law_for_i1() {
    let mut rng = gen::rng(5);
    for _ in 0..20 {
        let d = 2 * rng.gen_range(1..=2);
        let f = gen::form(&mut rng, 3, d, 4);
        let w: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let sigma: u32 = w.iter().sum();
        let (i1, i2) = invariants_even(&f).unwrap();
        let (j1, j2) = invariants_even(&f.scale_vars_pow(&w, p)).unwrap();
        assert_eq!(j1, i1 * BigInt::from(p).pow(d * sigma), "{f} {w:?}");
        assert_eq!(j2, i2 * BigInt::from(p).pow(3 * d * sigma), "{f} {w:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transvectants_are_covariant(seed in any::<u64>(), k in 0u32..=3) {
        let mut rng = gen::rng(seed);
        let f = gen::form(&mut rng, 3, 3, 3);
        let g = gen::form(&mut rng, 3, 3, 3);
        let h = gen::form(&mut rng, 3, 2, 3);
        let t = gen::unimodular(&mut rng, 3, 3, 2);
        let lhs = transvectant(&f.substitute(&t).unwrap(), &g.substitute(&t).unwrap(), &h.substitute(&t).unwrap(), k).unwrap();
        let rhs = transvectant(&f, &g, &h, k).unwrap().substitute(&t).unwrap().scale(&det_power(&t, k));
        prop_assert!((lhs.is_zero() && rhs.is_zero()) || lhs == rhs);
    }

    #[test]
    fn cubic_covariant_is_covariant(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let f = gen::form(&mut rng, 3, 5, 2);
        let t = gen::unimodular(&mut rng, 3, 2, 1);
        let lhs = cubic_covariant(&f.substitute(&t).unwrap()).unwrap();
        let rhs = cubic_covariant(&f).unwrap().substitute(&t).unwrap().scale(&det_power(&t, 4));
        prop_assert!((lhs.is_zero() && rhs.is_zero()) || lhs == rhs);
    }

    #[test]
    fn invariants_are_unchanged_by_unimodular_maps(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let t = gen::unimodular(&mut rng, 3, 4, 2);
        let c = gen::form(&mut rng, 3, 3, 5);
        let (c4, c6) = ternary_cubic_invariants(&c).unwrap();
        prop_assert_eq!(ternary_cubic_invariants(&c.substitute(&t).unwrap()).unwrap(), (c4, c6));
        let q = gen::form(&mut rng, 3, 4, 3);
        let (i1, i2) = invariants_even(&q).unwrap();
        let (j1, j2) = invariants_even(&q.substitute(&t).unwrap()).unwrap();
        prop_assert_eq!(j1, i1);
        prop_assert_eq!(j2, i2);
    }
}
