//! Recursive-descent parser for tower expressions such as `-(1+2*t^2)/(2+t^2)`
//! or `(t - w)/2`, over the variables `t`, `s`, `w`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::tower::TowerElem;
use super::FuncFieldError;
use crate::ring::Ring;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> FuncFieldError {
        FuncFieldError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<TowerElem, FuncFieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TowerElem, FuncFieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.unary()?;
                let inv = rhs.try_inverse().map_err(|_| FuncFieldError::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
                acc = acc.mul(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<TowerElem, FuncFieldError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<TowerElem, FuncFieldError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let e = self.integer()?;
        let e: u32 = e
            .try_into()
            .ok()
            .filter(|&e: &u32| e <= 64)
            .ok_or_else(|| self.err("exponent must be an integer in 0..=64"))?;
        let mut r = TowerElem::one();
        for _ in 0..e {
            r = r.mul(&base);
        }
        Ok(r)
    }

    fn integer(&mut self) -> Result<BigInt, FuncFieldError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<TowerElem, FuncFieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(TowerElem::t())
            }
            Some(b's') => {
                self.pos += 1;
                Ok(TowerElem::s())
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(TowerElem::w())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(TowerElem::from_rational(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_tower_expr(src: &str) -> Result<TowerElem, FuncFieldError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::tower::s_squared;

    #[test]
    fn parses_appendix_style_entries() {
        let x = parse_tower_expr("-t+s").unwrap();
        assert_eq!(x, TowerElem::s().sub(&TowerElem::t()));
        let y = parse_tower_expr("(1 - t^2 - t*w)/2").unwrap();
        let t = TowerElem::t();
        let expect = TowerElem::one().sub(&t.mul(&t)).sub(&t.mul(&TowerElem::w()));
        assert_eq!(y.mul(&TowerElem::from_int(2)), expect);
        let z = parse_tower_expr("s^2").unwrap();
        assert_eq!(z, TowerElem::from_base(s_squared().clone()));
        let q = parse_tower_expr("-(1+2*t^2)/(2+t^2)").unwrap();
        assert!(q.in_base());
        assert_eq!(q.c00().eval(&crate::numbers::rat(1, 1)), Some(crate::numbers::rat(-1, 1)));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_tower_expr("t +"), Err(FuncFieldError::Parse { .. })));
        assert!(matches!(parse_tower_expr("1/(t-t)"), Err(FuncFieldError::Parse { .. })));
        assert!(matches!(parse_tower_expr("x"), Err(FuncFieldError::Parse { pos: 0, .. })));
        assert!(matches!(parse_tower_expr("(t"), Err(FuncFieldError::Parse { .. })));
    }
}
