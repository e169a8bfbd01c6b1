//! Seeded random forms and matrices.

use hypermin::form::monomials;
use hypermin::weights::fw_profile;
use hypermin::{Form, IntMatrix};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A form with every coefficient uniform in `[-c, c]`, retried until nonzero.
pub fn form(rng: &mut impl Rng, n: usize, d: u32, c: i64) -> Form {
    let mons = monomials(n, d);
    loop {
        let coeffs: Vec<BigInt> = mons.iter().map(|_| BigInt::from(rng.gen_range(-c..=c))).collect();
        let f = Form::from_coeffs(n, d, &coeffs).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// A primitive form, as [`form`].
pub fn primitive_form(rng: &mut impl Rng, n: usize, d: u32, c: i64) -> Form {
    form(rng, n, d, c).primitive_part()
}

/// A product of random elementary shears and a permutation; determinant ±1.
pub fn unimodular(rng: &mut impl Rng, n: usize, steps: usize, c: i64) -> IntMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut t = IntMatrix::permutation(&perm);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(rng.gen_range(-c..=c)));
        t = &e * &t;
    }
    t
}

/// A random integer matrix with entries in `[-c, c]`.
pub fn matrix(rng: &mut impl Rng, n: usize, c: i64) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> =
        (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-c..=c))).collect()).collect();
    IntMatrix::new(rows).unwrap()
}

/// `F(x·U·D_v)` for a random unimodular `U` and `v = max(w) - w`, made primitive. The step
/// `D_w·U^{-1}` maps it back to `p^{d·max(w)} F`, so it is non-minimal for a lattice of type
/// `w` when `w ≠ 0` and the scaling leaves no `p` in the content.
pub fn non_minimal(rng: &mut impl Rng, f: &Form, w: &[u32], p: u64) -> Form {
    let u = unimodular(rng, f.nvars(), 3, 2);
    f.scale_vars_pow(&reversed(w), p).substitute(&u).unwrap().primitive_part()
}

/// `max(w) - w`.
pub fn reversed(w: &[u32]) -> Vec<u32> {
    let max = w.iter().copied().max().unwrap_or(0);
    w.iter().map(|&x| max - x).collect()
}

/// `Σ u_i p^{f_w(i)} x^i` with random units `u_i`: unstable for `w` with `T = 1`, and only
/// just so.
pub fn form_from_profile(rng: &mut impl Rng, w: &[u32], d: u32, p: u64) -> Form {
    let coeffs: Vec<BigInt> = fw_profile(w, d)
        .into_iter()
        .map(|f| {
            let u = p as i64 * rng.gen_range(-3..=3) + rng.gen_range(1..p as i64);
            BigInt::from(u) * BigInt::from(p).pow(f)
        })
        .collect();
    Form::from_coeffs(w.len(), d, &coeffs).unwrap()
}
