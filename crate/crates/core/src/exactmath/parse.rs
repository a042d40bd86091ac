//! Small expression reader: `+ - * / ^`, parentheses, integers, `i` and
//! the variable names. Juxtaposition (`2alpha`, `(t+1)(t-1)`) multiplies.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{MathError, MultiPoly, RatFunc, Scalar, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, MathError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            out.push(Tok::Num(text.parse().unwrap()));
        } else if c.is_alphabetic() {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(MathError::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    src: String,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, what: &str) -> MathError {
        MathError::Parse(format!("{what} in `{}`", self.src))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, MathError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<RatFunc, MathError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| self.err("division by zero"))?;
            } else if self.starts_factor() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, MathError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, MathError> {
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.peek() {
                Some(Tok::Num(n)) => i32::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected integer exponent")),
            };
            self.pos += 1;
            return base.pow(if neg { -e } else { e }).map_err(|_| self.err("zero to a negative power"));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RatFunc, MathError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(Scalar::new(
                    BigRational::from_integer(n),
                    BigRational::from_integer(0.into()),
                )))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(RatFunc::constant(Scalar::i()));
                }
                let v: Var = name.parse()?;
                Ok(RatFunc::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err("unexpected end or operator")),
        }
    }
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, MathError> {
    let mut p = Parser { toks: lex(s)?, pos: 0, src: s.to_string() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parse an expression that must be a polynomial.
pub fn parse_poly(s: &str) -> Result<MultiPoly, MathError> {
    let f = parse_ratfunc(s)?;
    if !f.is_polynomial() {
        return Err(MathError::Parse(format!("`{s}` is not a polynomial")));
    }
    Ok(f.num().scale(&f.den().leading_coeff().inv()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_juxtaposition() {
        assert_eq!(parse_ratfunc("1 + 2*3").unwrap(), RatFunc::from_int(7));
        assert_eq!(parse_ratfunc("-2^2").unwrap(), RatFunc::from_int(-4));
        assert_eq!(parse_ratfunc("2alpha").unwrap(), parse_ratfunc("2*alpha").unwrap());
        assert_eq!(
            parse_ratfunc("(t+1)(t-1)").unwrap(),
            parse_ratfunc("t^2 - 1").unwrap()
        );
        assert_eq!(parse_ratfunc("t^-2").unwrap(), parse_ratfunc("1/t/t").unwrap());
        assert_eq!(parse_ratfunc("α + β").unwrap(), parse_ratfunc("alpha + beta").unwrap());
    }

    #[test]
    fn errors() {
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("(t").is_err());
        assert!(parse_ratfunc("zeta").is_err());
        assert!(parse_ratfunc("t $ 1").is_err());
        assert!(parse_poly("1/t").is_err());
    }
}
