//! Text formats for polynomials, rationals, vectors and matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use orbitforge::{ExactRat, Matrix, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    /// Unsigned `p` or `p/q`.
    fn unsigned_rational(&mut self) -> Result<ExactRat, ParseError> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError { pos: at, msg: "zero denominator".into() });
            }
            return Ok(ExactRat::new(num, den));
        }
        Ok(ExactRat::from_integer(num))
    }

    fn rational(&mut self) -> Result<ExactRat, ParseError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let q = self.unsigned_rational()?;
        Ok(if neg { -q } else { q })
    }

    fn rational_list(&mut self) -> Result<Vec<ExactRat>, ParseError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.rational()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }
}

fn finish<T>(mut c: Cursor<'_>, v: T) -> Result<T, ParseError> {
    if c.at_end() {
        Ok(v)
    } else {
        c.err("unexpected trailing input")
    }
}

/// Parse `c*x^k` sums or a bracketed ascending coefficient list.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    parse_poly_in(text, &[b'x'])
}

/// As [`parse_poly`], accepting any of `vars` as the variable.
pub fn parse_poly_in(text: &str, vars: &[u8]) -> Result<Poly, ParseError> {
    let mut c = Cursor::new(text);
    if c.peek() == Some(b'[') {
        let coeffs = c.rational_list()?;
        return finish(c, Poly::new(coeffs));
    }
    let mut terms: BTreeMap<usize, ExactRat> = BTreeMap::new();
    let mut first = true;
    loop {
        let neg = match c.peek() {
            None if first => return c.err("empty polynomial"),
            None => break,
            Some(b'-') => {
                c.pos += 1;
                true
            }
            Some(b'+') => {
                c.pos += 1;
                false
            }
            Some(_) if first => false,
            Some(_) => return c.err("expected '+' or '-'"),
        };
        first = false;
        let mut coeff = ExactRat::one();
        let mut has_coeff = false;
        if c.peek().is_some_and(|b| b.is_ascii_digit()) {
            coeff = c.unsigned_rational()?;
            has_coeff = true;
            c.eat(b'*');
        }
        let mut deg = 0usize;
        match c.peek() {
            Some(v) if vars.contains(&v) => {
                c.pos += 1;
                deg = 1;
                if c.eat(b'^') {
                    let at = c.pos;
                    deg = c.digits()?.try_into().map_err(|_| ParseError { pos: at, msg: "exponent too large".into() })?;
                }
            }
            _ if !has_coeff => return c.err("expected a coefficient or variable"),
            _ => {}
        }
        let coeff = if neg { -coeff } else { coeff };
        *terms.entry(deg).or_insert_with(ExactRat::zero) += coeff;
    }
    let top = terms.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![ExactRat::zero(); top + 1];
    for (k, v) in terms {
        coeffs[k] = v;
    }
    Ok(Poly::new(coeffs))
}

pub fn parse_rational(text: &str) -> Result<ExactRat, ParseError> {
    let mut c = Cursor::new(text);
    let q = c.rational()?;
    finish(c, q)
}

pub fn parse_vector(text: &str) -> Result<Vec<ExactRat>, ParseError> {
    let mut c = Cursor::new(text);
    let v = c.rational_list()?;
    finish(c, v)
}

/// `[[a, b], [c, d]]`, row-major.
pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    let mut c = Cursor::new(text);
    c.expect(b'[')?;
    let mut rows = Vec::new();
    loop {
        let at = c.pos;
        let row = c.rational_list()?;
        if let Some(first) = rows.first() {
            let first: &Vec<ExactRat> = first;
            if first.len() != row.len() {
                return Err(ParseError { pos: at, msg: "rows have different lengths".into() });
            }
        }
        rows.push(row);
        if c.eat(b']') {
            break;
        }
        c.expect(b',')?;
    }
    if rows[0].is_empty() {
        return c.err("empty matrix");
    }
    let m = Matrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j].clone());
    finish(c, m)
}

/// `a,b,c` or `(a, b, c)` integers.
pub fn parse_int_triple(text: &str) -> Result<[BigInt; 3], ParseError> {
    let mut c = Cursor::new(text);
    let paren = c.eat(b'(');
    let mut out = Vec::new();
    for k in 0..3 {
        if k > 0 {
            c.expect(b',')?;
        }
        let neg = c.eat(b'-');
        let v = c.digits()?;
        out.push(if neg { -v } else { v });
    }
    if paren {
        c.expect(b')')?;
    }
    let [a, b, cc]: [BigInt; 3] = out.try_into().unwrap();
    finish(c, [a, b, cc])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("x^3 - 2").unwrap(), Poly::from_ints(&[-2, 0, 0, 1]));
        assert_eq!(parse_poly("[0,-1,0,1]").unwrap(), Poly::from_ints(&[0, -1, 0, 1]));
        assert_eq!(parse_poly(" -x + 3*x^2 +1/2 ").unwrap().coeff(0), ExactRat::new(1.into(), 2.into()));
        assert_eq!(parse_poly("2x").unwrap(), Poly::from_ints(&[0, 2]));
        assert_eq!(parse_poly("x^^3").unwrap_err().pos, 2);
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x y").is_err());
        assert!(parse_poly("1/0").is_err());
        assert_eq!(parse_poly_in("3 - b", &[b'b']).unwrap(), Poly::from_ints(&[3, -1]));
    }

    #[test]
    fn round_trip() {
        for s in ["x^5 - 5*x^3 + 4*x", "x^3 - 1/2*x + 7", "-x^2"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn matrices_and_triples() {
        let m = parse_matrix("[[1, 0], [0, -1/2]]").unwrap();
        assert_eq!(m[(1, 1)], ExactRat::new((-1).into(), 2.into()));
        assert!(parse_matrix("[[1,0],[1]]").is_err());
        assert_eq!(parse_int_triple("(3,1,-2)").unwrap()[2], BigInt::from(-2));
    }
}
