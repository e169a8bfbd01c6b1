//! Integer factorization: trial division, Brent's variant of Pollard rho, and
//! Miller–Rabin / Baillie–PSW primality.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;
const DEFAULT_RHO_BUDGET: u64 = 20_000_000;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime_base2(n: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = BigUint::from(2u32).modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let nb = BigInt::from(n.clone());
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = 5i64;
    loop {
        let j = jacobi(&BigInt::from(d), &nb);
        if j == -1 {
            break;
        }
        if j == 0 && BigInt::from(d.abs()) != nb {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let p = BigInt::one();
    let q = BigInt::from((1 - d) / 4);
    let dd = BigInt::from(d);
    let np1: BigInt = &nb + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let half = |x: BigInt| -> BigInt {
        let x = x.mod_floor(&nb);
        if x.is_odd() {
            (x + &nb) >> 1
        } else {
            x >> 1
        }
    };
    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(&nb);
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&nb);
        v = (&v * &v - &qk * BigInt::from(2)).mod_floor(&nb);
        qk = (&qk * &qk).mod_floor(&nb);
        if k.bit(i) {
            let nu = half(&p * &u + &v);
            let nv = half(&dd * &u + &p * &v);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(&nb);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * BigInt::from(2)).mod_floor(&nb);
        qk = (&qk * &qk).mod_floor(&nb);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality: deterministic below 2^64, Baillie–PSW above.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let m = n.magnitude();
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if (m % p).is_zero() {
            return false;
        }
    }
    strong_probable_prime_base2(m) && strong_lucas_probable_prime(m)
}

/// Brent's cycle-finding rho; returns a nontrivial factor or `None` when the budget runs out.
fn rho_brent(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    let cc = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &cc) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let m: u64 = 128;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            let spent = m.min(r);
            if *budget < spent {
                return None;
            }
            *budget -= spent;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn factor_rec(n: BigUint, budget: &mut u64, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&BigInt::from(n.clone())) {
        out.push(n);
        return Ok(());
    }
    // Perfect powers defeat rho; strip them first.
    for k in (2..=n.bits() as u32).rev() {
        let r = n.nth_root(k);
        if r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == n {
            let mut sub = Vec::new();
            factor_rec(r, budget, &mut sub)?;
            for _ in 0..k {
                out.extend(sub.iter().cloned());
            }
            return Ok(());
        }
    }
    let mut c = 1u64;
    loop {
        if *budget == 0 {
            return Err(Error::ResourceCap(format!("could not factor {n} within the rho budget")));
        }
        if let Some(d) = rho_brent(&n, c, budget) {
            let e = &n / &d;
            factor_rec(d, budget, out)?;
            factor_rec(e, budget, out)?;
            return Ok(());
        }
        c += 1;
    }
}

/// Factor `|n|` into sorted `(prime, exponent)` pairs. `n = 0` is a contract violation.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    factor_integer_with_budget(n, DEFAULT_RHO_BUDGET)
}

pub fn factor_integer_with_budget(n: &BigInt, mut budget: u64) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::ContractViolation("cannot factor zero".into()));
    }
    let mut m = n.magnitude().clone();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        if BigUint::from(d) * BigUint::from(d) > m {
            break;
        }
        while (&m % d).is_zero() {
            m /= d;
            primes.push(BigUint::from(d));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        if BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT) > m {
            primes.push(m);
        } else {
            factor_rec(m, &mut budget, &mut primes)?;
        }
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        let p = BigInt::from(p);
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}
