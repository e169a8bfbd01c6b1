//! Worked examples shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use hypermin::{Form, IntMatrix};

/// A plane sextic with an involution in `x2`, non-minimal at 2.
pub const DNS_SEXTIC: &str = "
    5*x0^6 - 50*x0^5*x1 + 206*x0^4*x1^2 - 408*x0^3*x1^3 + 321*x0^2*x1^4 + 10*x0*x1^5 - 100*x1^6 + 9*x0^4*x2^2
    - 60*x0^3*x1*x2^2 + 80*x0^2*x1^2*x2^2 + 48*x0*x1^3*x2^2 + 15*x1^4*x2^2 + 3*x0^2*x2^4 - 10*x0*x1*x2^4
    + 6*x1^2*x2^4 - x2^6";

/// The minimal model of [`DNS_SEXTIC`]: `16·F0 = DNS(x·T)` for [`dns_t`].
pub const DNS_MINIMAL: &str = "
    -x0^6 - 2*x0^5*x1 + 2*x0^5*x2 + 23*x0^4*x1*x2 - 5*x0^3*x1^3 - x0^3*x1^2*x2 + x0^3*x1*x2^2 + 5*x0^3*x2^3
    - x0^2*x1^4 - 8*x0^2*x1^3*x2 + 17*x0^2*x1^2*x2^2 - 8*x0^2*x1*x2^3 - x0^2*x2^4 + 3*x0*x1^5 - 7*x0*x1^4*x2
    + 10*x0*x1^3*x2^2 - 10*x0*x1^2*x2^3 + 7*x0*x1*x2^4 - 3*x0*x2^5 + x1^6 - 3*x1^5*x2 + 3*x1^4*x2^2
    - 6*x1^3*x2^3 + 3*x1^2*x2^4 - 3*x1*x2^5 + x2^6";

pub fn dns_t() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, 1, 0], &[-1, 0, 1], &[1, 0, 1]])
}

/// A cubic surface with 40-digit coefficients.
pub const S0: &str = "
    - 866812507957452012700721792086587937*x0^3
    + 3728812982147606773738081898305547310*x0^2*x1
    + 64283763770985952786436023327908284160*x0^2*x2
    + 497718355086466637590632151750449246396*x0^2*x3
    - 22244579889188354084172896622822533100*x0*x1^2
    - 431923319964698868982551682351317273600*x0*x1*x2
    - 2446192338737080630831681553231971375920*x0*x1*x3
    - 1618017788538827453488905618589376819200*x0*x2^2
    + 15747155527321974660280650027255501486080*x0*x2*x3
    - 66025203088832123300929566152845689479856*x0*x3^2
    - 65456138728936479908688098323552023000*x1^3
    - 357488525368202205779029272883004032000*x1^2*x2
    + 20762944510278587277812066653228558975600*x1^2*x3
    + 20013727944438057575668128606471875584000*x1*x2^2
    + 64721500464867439337111893187712691097600*x1*x2*x3
    - 351425459041632833836477745377146122692640*x1*x3^2
    + 5759206855635558085134656966457081856000*x2^3
    - 406645509553946606042771346800156046540800*x2^2*x3
    - 3284853297122243046122373374040607648010240*x2*x3^2
    - 2681060506817531405431579495959221739841728*x3^3";

/// Primes at which [`S0`] is minimized.
pub const S0_PRIMES: [u64; 13] = [2, 3, 5, 7, 13, 113, 463, 733, 2141, 9643, 14143, 17278361, 22436341];

/// Primes of bad reduction of the minimized model of [`S0`].
pub const S0_BAD_PRIMES: [u64; 7] = [2, 3, 5, 7, 13, 733, 22436341];

/// A small model of [`S0`], for comparing coefficient size.
pub const S0_REDUCED: &str = "
    2*x0^3 + 16*x0^2*x2 - 12*x0^2*x3 - 17*x0*x1^2 + 61*x0*x1*x2 - 26*x0*x1*x3 - 20*x0*x2^2 + 95*x0*x2*x3
    + 18*x0*x3^2 + 5*x1^3 + 33*x1^2*x2 + 10*x1^2*x3 - 25*x1*x2*x3 - 22*x1*x3^2 - 11*x2^3 - 21*x2^2*x3
    + 50*x2*x3^2 - 52*x3^3";

/// A degree-10 form with small coefficients.
pub const DEGREE_10: &str = "
    7*x0^10 + 4*x0^9*x1 - 9*x0^9*x2 - x0^8*x1^2 + 9*x0^8*x1*x2 - 5*x0^8*x2^2 - 4*x0^7*x1^3 - 8*x0^7*x1^2*x2
    - 7*x0^7*x1*x2^2 - 9*x0^7*x2^3 - 3*x0^6*x1^4 - 5*x0^6*x1^3*x2 + 2*x0^6*x1^2*x2^2 - 7*x0^6*x1*x2^3
    + 4*x0^6*x2^4 + 8*x0^5*x1^5 + 10*x0^5*x1^4*x2 + 5*x0^5*x1^3*x2^2 - 3*x0^5*x1^2*x2^3 + 2*x0^5*x1*x2^4
    - x0^4*x1^6 + 9*x0^4*x1^5*x2 - 3*x0^4*x1^4*x2^2 + 5*x0^4*x1^3*x2^3 + x0^4*x1*x2^5 - 2*x0^4*x2^6
    + 6*x0^3*x1^7 + 8*x0^3*x1^6*x2 + 9*x0^3*x1^4*x2^3 + 9*x0^3*x1^3*x2^4 + 5*x0^3*x1^2*x2^5 - 5*x0^3*x1*x2^6
    + 3*x0^3*x2^7 - 10*x0^2*x1^8 + 8*x0^2*x1^6*x2^2 - 5*x0^2*x1^5*x2^3 + 8*x0^2*x1^4*x2^4 - 10*x0^2*x1^3*x2^5
    - 5*x0^2*x1^2*x2^6 - x0^2*x2^8 - 3*x0*x1^9 + 8*x0*x1^8*x2 - 10*x0*x1^7*x2^2 + 7*x0*x1^6*x2^3 + 4*x0*x1^5*x2^4
    - 9*x0*x1^4*x2^5 + x0*x1^3*x2^6 - 4*x0*x1^2*x2^7 - 9*x0*x1*x2^8 - 2*x0*x2^9 - 9*x1^10 - 7*x1^9*x2
    + 5*x1^8*x2^2 - 7*x1^7*x2^3 + 2*x1^6*x2^4 - 2*x1^5*x2^5 + 3*x1^4*x2^6 - 2*x1^3*x2^7 + 2*x1^2*x2^8
    + 8*x1*x2^9 + 5*x2^10";

pub fn degree_10_t() -> IntMatrix {
    IntMatrix::from_i64(&[
        &[-6822460139, -8617905122, 4801170083],
        &[5588128275, 3128463726, 3491404315],
        &[-3274111511, 371050596, 2931443838],
    ])
}

/// Primes at which `DEGREE_10(x·T)` is non-minimal.
pub const DEGREE_10_PRIMES: [&str; 3] = ["2", "5573747", "2748254186176163904623"];

pub fn ternary(s: &str) -> Form {
    Form::parse_with_vars(s, 3).unwrap()
}

pub fn quaternary(s: &str) -> Form {
    Form::parse_with_vars(s, 4).unwrap()
}

pub mod gen;
