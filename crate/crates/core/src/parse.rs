//! Text syntax for forms: `3*x0^2*x1 - x2^3`, variables `x0` through `x9`.

use crate::error::{Error, Result};
use crate::form::Form;
use num_bigint::BigInt;
use num_traits::One;

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }
}

/// Parse a homogeneous form. With `nvars = None` the variable count is one more than the
/// largest index used (at least 2).
pub fn parse_form(text: &str, nvars: Option<usize>) -> Result<Form> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut raw: Vec<(Vec<u32>, BigInt)> = Vec::new();
    let mut max_var = 0usize;
    let mut first = true;
    loop {
        let mut sign = BigInt::one();
        match lx.peek() {
            None if first => return lx.err("empty expression"),
            None => break,
            Some(b'+') => {
                lx.pos += 1;
            }
            Some(b'-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(c) => return lx.err(format!("expected '+' or '-', found {:?}", c as char)),
        }
        first = false;
        let mut coeff = sign;
        let mut exps = [0u32; 10];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let d = lx.digits()?;
                    coeff *= d.parse::<BigInt>().expect("digits");
                }
                Some(b'x') => {
                    lx.pos += 1;
                    let idx_pos = lx.pos;
                    match lx.s.get(lx.pos) {
                        Some(c) if c.is_ascii_digit() => {}
                        _ => return lx.err("expected variable index after 'x'"),
                    }
                    let i = (lx.s[lx.pos] - b'0') as usize;
                    lx.pos += 1;
                    if lx.s.get(lx.pos).is_some_and(|c| c.is_ascii_digit()) {
                        return Err(Error::Parse { pos: idx_pos, msg: "variables are x0..x9".into() });
                    }
                    let mut k = 1u32;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let d = lx.digits()?;
                        k = d
                            .parse::<u32>()
                            .map_err(|_| Error::Parse { pos: lx.pos, msg: "exponent too large".into() })?;
                    }
                    exps[i] += k;
                    max_var = max_var.max(i);
                }
                Some(c) => return lx.err(format!("unexpected character {:?}", c as char)),
                None => return lx.err("unexpected end of input"),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
                continue;
            }
            break;
        }
        raw.push((exps.to_vec(), coeff));
    }
    let n = match nvars {
        Some(n) if n <= max_var => {
            return Err(Error::DimensionMismatch(format!("x{max_var} used but only {n} variables declared")))
        }
        Some(n) => n,
        None => (max_var + 1).max(2),
    };
    if n > 10 {
        return Err(Error::DimensionMismatch("at most 10 variables".into()));
    }
    let degree = raw[0].0.iter().sum::<u32>();
    let mut terms = Vec::with_capacity(raw.len());
    for (e, c) in raw {
        if e.iter().sum::<u32>() != degree {
            return Err(Error::Parse { pos: 0, msg: "form is not homogeneous".into() });
        }
        terms.push((e[..n].to_vec(), c));
    }
    let f = Form::new(n, degree, terms)?;
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let f = parse_form("3*x0^2*x1 - x2^3", None).unwrap();
        assert_eq!(f.nvars(), 3);
        assert_eq!(f.degree(), 3);
        assert_eq!(parse_form(&f.to_string(), None).unwrap(), f);
    }

    #[test]
    fn combines_like_terms() {
        let f = parse_form("x0*x1 + x1*x0 - 2 * x0 * x1 + x1^2", None).unwrap();
        assert_eq!(f.to_string(), "x1^2");
    }

    #[test]
    fn errors() {
        assert!(parse_form("x0^2 + x1", None).is_err());
        assert!(parse_form("x0 + y", None).is_err());
        assert!(parse_form("x10", None).is_err());
        assert!(parse_form("", None).is_err());
        assert!(parse_form("x0 - x0", None).is_err());
        assert!(parse_form("x3^2", Some(3)).is_err());
    }

    #[test]
    fn explicit_vars() {
        let f = parse_form("x0^2 + x1^2", Some(3)).unwrap();
        assert_eq!(f.nvars(), 3);
    }
}
