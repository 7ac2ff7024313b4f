//! A small expression language for algebra elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := power ('*' power)*
//! power  := unary ('^' '-'? int)?
//! unary  := '-' unary | atom
//! atom   := int | int '/' int | 'q' | 'E' | 'F' | 'K' | 'C' | '[' int ']' | '(' expr ')'
//! ```
//!
//! `C` is the Casimir element, `[n]` a quantum integer. Negative powers are
//! allowed for the invertible atoms `q` and `K`.

use anyhow::{anyhow, bail, Result};
use uqsl2_core::{AlgElem, CycNum, Rational, Uq};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut n = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                n.push(*d);
                chars.next();
            }
            out.push(Tok::Int(n.parse().map_err(|_| anyhow!("integer {n} too large"))?));
        } else if c.is_ascii_alphabetic() {
            let mut id = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                id.push(*d);
                chars.next();
            }
            out.push(Tok::Ident(id));
        } else if "+-*^/()[]".contains(c) {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            bail!("unexpected character {c:?}");
        }
    }
    Ok(out)
}

/// A parsed atom remembers whether it may be raised to a negative power.
enum Atom {
    Plain(AlgElem),
    Q,
    K,
}

struct Parser<'a> {
    uq: &'a Uq,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            bail!("expected {c:?} at token {}", self.pos)
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            other => bail!("expected an integer, found {other:?}"),
        }
    }

    fn expr(&mut self) -> Result<AlgElem> {
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

    fn term(&mut self) -> Result<AlgElem> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<AlgElem> {
        if self.eat('-') {
            return Ok(-self.power()?);
        }
        let atom = self.atom()?;
        if !self.eat('^') {
            return Ok(self.materialize(atom, 1));
        }
        let neg = self.eat('-');
        let n = self.int()?;
        let n = if neg { -n } else { n };
        if n < 0 && matches!(atom, Atom::Plain(_)) {
            bail!("only q and K can be raised to negative powers");
        }
        Ok(self.materialize(atom, n))
    }

    fn materialize(&self, atom: Atom, n: i64) -> AlgElem {
        match atom {
            Atom::Q => self.uq.scalar_elem(self.uq.q(n)),
            Atom::K => self.uq.k_pow(n),
            Atom::Plain(x) => x.pow(n as u32),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let uq = self.uq;
        let tok = self.peek().cloned().ok_or_else(|| anyhow!("unexpected end of expression"))?;
        self.pos += 1;
        Ok(match tok {
            Tok::Int(n) => {
                if self.eat('/') {
                    let d = self.int()?;
                    if d == 0 {
                        bail!("division by zero");
                    }
                    Atom::Plain(uq.scalar_elem(CycNum::from_rational(uq.field(), Rational::new(n, d))))
                } else {
                    Atom::Plain(uq.scalar_elem(uq.scalar(n)))
                }
            }
            Tok::Ident(id) => match id.as_str() {
                "q" => Atom::Q,
                "K" => Atom::K,
                "E" => Atom::Plain(uq.gen_e()),
                "F" => Atom::Plain(uq.gen_f()),
                "C" => Atom::Plain(uq.casimir()),
                _ => bail!("unknown symbol {id:?}"),
            },
            Tok::Sym('(') => {
                let x = self.expr()?;
                self.expect(')')?;
                Atom::Plain(x)
            }
            Tok::Sym('[') => {
                let neg = self.eat('-');
                let n = self.int()?;
                self.expect(']')?;
                Atom::Plain(uq.scalar_elem(uq.qint(if neg { -n } else { n })))
            }
            Tok::Sym(c) => bail!("unexpected {c:?}"),
        })
    }
}

/// Parses and evaluates an expression in the algebra at `uq`.
pub fn eval(uq: &Uq, src: &str) -> Result<AlgElem> {
    let mut parser = Parser { uq, toks: lex(src)?, pos: 0 };
    let x = parser.expr()?;
    if parser.pos != parser.toks.len() {
        bail!("trailing input at token {}", parser.pos);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        let uq = Uq::new(3).unwrap();
        assert!(eval(&uq, "E^3").unwrap().is_zero());
        assert_eq!(eval(&uq, "K*E*K^-1").unwrap(), eval(&uq, "q^2*E").unwrap());
        let lhs = eval(&uq, "E*F - F*E").unwrap();
        let rhs = eval(&uq, "(K - K^-1) * (q - q^-1)^-1");
        assert!(rhs.is_err());
        assert_eq!(lhs.scale(&uq.q_minus_q_inv()), eval(&uq, "K - K^-1").unwrap());
        assert_eq!(eval(&uq, "C").unwrap(), uq.casimir());
        assert_eq!(eval(&uq, "[2] - 1").unwrap(), uq.zero());
        assert_eq!(eval(&uq, "-1/2 + 1/2").unwrap(), uq.zero());
    }

    #[test]
    fn errors() {
        let uq = Uq::new(2).unwrap();
        for bad in ["E +", "X", "(E", "E^-1", "1/0", "E F"] {
            assert!(eval(&uq, bad).is_err(), "{bad}");
        }
    }
}
