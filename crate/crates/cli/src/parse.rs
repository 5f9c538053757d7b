//! Polynomial input: `x^3+x-6`, `2*x^2 - 3x + 1`, or `[1, 0, 1, -6]`
//! (coefficients from the leading term down). Whitespace is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use tracefield::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column in the original text.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    end_column: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Cursor { chars, pos: 0, end_column: text.chars().count() + 1 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end_column, |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { column: self.column(), message: message.into() }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        (!s.is_empty()).then_some(s)
    }

    fn describe(&self) -> String {
        match self.peek() {
            Some(c) => format!("unexpected character '{c}'"),
            None => "unexpected end of input".into(),
        }
    }
}

pub fn parse_polynomial(text: &str) -> Result<IntPolynomial, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    if cur.peek() == Some('[') {
        parse_list(&mut cur)
    } else {
        parse_expr(&mut cur)
    }
}

fn parse_list(cur: &mut Cursor) -> Result<IntPolynomial, ParseError> {
    cur.bump();
    let mut high_to_low: Vec<BigInt> = Vec::new();
    if !cur.eat(']') {
        loop {
            let neg = if cur.eat('-') {
                true
            } else {
                cur.eat('+');
                false
            };
            let digits = cur.digits().ok_or_else(|| cur.error(format!("expected integer, {}", cur.describe())))?;
            let v: BigInt = digits.parse().expect("ascii digits");
            high_to_low.push(if neg { -v } else { v });
            if cur.eat(']') {
                break;
            }
            if !cur.eat(',') {
                return Err(cur.error(format!("expected ',' or ']', {}", cur.describe())));
            }
        }
    }
    if cur.peek().is_some() {
        return Err(cur.error("trailing input after ']'"));
    }
    if high_to_low.is_empty() {
        return Err(cur.error("empty coefficient list"));
    }
    high_to_low.reverse();
    Ok(IntPolynomial::new(high_to_low))
}

fn parse_expr(cur: &mut Cursor) -> Result<IntPolynomial, ParseError> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let neg = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            _ if first => false,
            _ => return Err(cur.error(format!("expected '+' or '-', {}", cur.describe()))),
        };
        first = false;
        let start = cur.column();
        let coeff = cur.digits().map(|d| d.parse::<BigInt>().expect("ascii digits"));
        let has_x = if coeff.is_some() {
            if cur.eat('*')
                && cur.peek() != Some('x') {
                    return Err(cur.error(format!("expected 'x' after '*', {}", cur.describe())));
                }
            cur.eat('x')
        } else if cur.eat('x') {
            true
        } else {
            return Err(cur.error(format!("expected a term, {}", cur.describe())));
        };
        let exp = if has_x && cur.eat('^') {
            let d = cur.digits().ok_or_else(|| cur.error(format!("expected exponent, {}", cur.describe())))?;
            d.parse::<usize>()
                .ok()
                .filter(|&e| e <= 10_000)
                .ok_or_else(|| ParseError { column: start, message: format!("exponent {d} is too large") })?
        } else {
            usize::from(has_x)
        };
        let mut c = coeff.unwrap_or_else(|| BigInt::from(1));
        if neg {
            c = -c;
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += c;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Rejects input the analysis cannot take: zero, constant, or non-monic.
pub fn require_monic_input(f: &IntPolynomial) -> Result<(), String> {
    match f.degree() {
        None | Some(0) => Err(format!("polynomial {f} has degree < 1; a field needs degree at least 1")),
        Some(_) if !f.is_monic() => Err(format!(
            "polynomial {f} is not monic (leading coefficient {}); only monic polynomials are supported",
            f.lc()
        )),
        Some(_) => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn expressions() {
        assert_eq!(parse_polynomial("x^3+x-6").unwrap(), p(&[-6, 1, 0, 1]));
        assert_eq!(parse_polynomial(" x ^ 3 + x - 6 ").unwrap(), p(&[-6, 1, 0, 1]));
        assert_eq!(parse_polynomial("-x+x^2").unwrap(), p(&[0, -1, 1]));
        assert_eq!(parse_polynomial("2*x^2-3x+1").unwrap(), p(&[1, -3, 2]));
        assert_eq!(parse_polynomial("x+x").unwrap(), p(&[0, 2]));
        assert_eq!(parse_polynomial("7").unwrap(), p(&[7]));
    }

    #[test]
    fn lists() {
        assert_eq!(parse_polynomial("[1, 0, 1, -6]").unwrap(), p(&[-6, 1, 0, 1]));
        assert_eq!(parse_polynomial("[1,-2]").unwrap(), p(&[-2, 1]));
    }

    #[test]
    fn diagnostics() {
        let e = parse_polynomial("x^3 + y").unwrap_err();
        assert_eq!(e.column, 7);
        let e = parse_polynomial("x^").unwrap_err();
        assert_eq!(e.column, 3);
        assert_eq!(parse_polynomial("").unwrap_err().column, 1);
        assert_eq!(parse_polynomial("[1, 2").unwrap_err().column, 6);
        assert_eq!(parse_polynomial("x 3").unwrap_err().column, 3);
    }

    #[test]
    fn monic_check() {
        let f = parse_polynomial("2x^2-1").unwrap();
        assert!(require_monic_input(&f).unwrap_err().contains("not monic"));
        assert!(require_monic_input(&parse_polynomial("x^2-2").unwrap()).is_ok());
    }
}
