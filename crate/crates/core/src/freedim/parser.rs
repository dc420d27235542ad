use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::Expr;
use super::FdimError;
use crate::rational::Q;

/// Parses a free-product expression.
///
/// ```text
/// expr    := sum ('*' sum)*
/// sum     := postfix ('(+)' postfix)*        -- 2ᵏ operands, balanced
/// postfix := primary ('^' k)?                -- k a power of two
/// primary := 'C' | 'LZ' | 'R' | 'LF' '(' rational ')' | 'M' k '(' expr ')'
///          | '(' expr ')'
/// ```
pub fn parse(text: &str) -> Result<Expr, FdimError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> FdimError {
        FdimError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn unsupported(&self, pos: usize, msg: String) -> FdimError {
        FdimError::Unsupported { pos: Some(pos), msg }
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

    fn starts_with(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(tok.as_bytes())
    }

    fn expect(&mut self, ch: u8) -> Result<(), FdimError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", ch as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, FdimError> {
        let mut items = vec![self.sum()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            items.push(self.sum()?);
        }
        Ok(Expr::free(items))
    }

    fn sum(&mut self) -> Result<Expr, FdimError> {
        let start = self.pos;
        let mut items = vec![self.postfix()?];
        while self.starts_with("(+)") {
            self.pos += 3;
            items.push(self.postfix()?);
        }
        let n = items.len();
        Expr::balanced_sum(items).ok_or_else(|| {
            self.unsupported(start, format!("direct sum of {n} summands; the count must be a power of two"))
        })
    }

    fn postfix(&mut self) -> Result<Expr, FdimError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let k = self.integer()?;
            let j = dyadic_log(&k).ok_or_else(|| {
                self.unsupported(at, format!("exponent {k} is not a power of two"))
            })?;
            return Ok(Expr::sum_pow(base, j));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, FdimError> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'L') if self.starts_with("LZ") => {
                self.pos += 2;
                Ok(Expr::LZ)
            }
            Some(b'L') if self.starts_with("LF") => {
                self.pos += 2;
                self.expect(b'(')?;
                self.skip_ws();
                let at = self.pos;
                let t = self.rational()?;
                self.expect(b')')?;
                if !t.is_zero() && t < Q::one() {
                    return Err(self.unsupported(at, format!("LF({t}) needs t = 0 or t >= 1")));
                }
                Ok(Expr::LF(t))
            }
            Some(b'C') => {
                self.pos += 1;
                Ok(Expr::C)
            }
            Some(b'R') => {
                self.pos += 1;
                Ok(Expr::R)
            }
            Some(b'M') => {
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.syntax("expected matrix size after `M`"));
                }
                let k = self.integer()?;
                let j = dyadic_log(&k)
                    .ok_or_else(|| self.unsupported(at, format!("M{k} is not a power-of-two size")))?;
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::mat_pow(e, j))
            }
            Some(_) => Err(self.syntax("expected C, LZ, R, LF(t), Mk(...) or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, FdimError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits"))
    }

    fn rational(&mut self) -> Result<Q, FdimError> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.syntax("zero denominator"));
            }
            return Ok(Q::new(num, den));
        }
        Ok(Q::from_integer(num))
    }
}

/// `j` with `k = 2ʲ`.
fn dyadic_log(k: &BigInt) -> Option<u32> {
    if k.is_zero() || k.sign() == num_bigint::Sign::Minus {
        return None;
    }
    let bits = k.bits();
    (k == &(BigInt::one() << (bits - 1))).then(|| (bits - 1) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn examples() {
        let c2 = Expr::sum(Expr::C, Expr::C);
        assert_eq!(parse("C^2 * C^2").unwrap(), Expr::Free(vec![c2.clone(), c2]));
        assert_eq!(parse("M2(LF(3/2))").unwrap(), Expr::mat(Expr::LF(qf(3, 2))));
        assert_eq!(
            parse("(LF(2) (+) C) * M2(R)").unwrap(),
            Expr::Free(vec![Expr::sum(Expr::LF(q(2)), Expr::C), Expr::mat(Expr::R)])
        );
        assert_eq!(parse("M4(C)").unwrap(), Expr::mat(Expr::mat(Expr::C)));
        assert_eq!(parse("C^1").unwrap(), Expr::C);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("M3(C)"), Err(FdimError::Unsupported { .. })));
        assert!(matches!(parse("C (+) C (+) C"), Err(FdimError::Unsupported { .. })));
        assert!(matches!(parse("C^3"), Err(FdimError::Unsupported { .. })));
        assert!(matches!(parse("LF(1/2)"), Err(FdimError::Unsupported { .. })));
        assert!(matches!(parse("C * "), Err(FdimError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("X"), Err(FdimError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("(C * R"), Err(FdimError::Syntax { .. })));
    }

    #[test]
    fn round_trip() {
        for src in ["C^4 * M2(LF(7/2))", "(LF(2) (+) C) (+) R * LZ", "M4(R * C^2) * (C * R)"] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}
