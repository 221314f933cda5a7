//! The one-line real-number expression language used by `eval` and `ivt --y`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | atom
//! atom  := rational | 'sqrt2' | 'abs(' expr ')' | 'rho0(D,L)' | 'rho1(D,L)'
//!        | 'rho2(D,L)' | '(' expr ')'
//! ```
//!
//! Rationals are `a`, `a/b` or decimals; `/` only appears inside literals.
//! `D,L` selects the first run of `L` digits `D` in the decimal expansion of π.

use intuit::rational::parse_rational;
use intuit::real::{rho0, rho1, rho2, sqrt2};
use intuit::stream::{pattern_indicator, pi_digits};
use intuit::{CReal, FugitiveSpec};

pub fn parse(src: &str) -> Result<CReal, String> {
    let mut p = Parser { src, pos: 0 };
    let x = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.fail("unexpected input"));
    }
    Ok(x)
}

/// `pattern_indicator` over π for digit `d` and run length `l`, validated.
pub fn pi_pattern(d: u64, l: u64) -> Result<FugitiveSpec, String> {
    if d > 9 {
        return Err(format!("digit {d} is not a decimal digit"));
    }
    if l == 0 {
        return Err("run length must be at least 1".into());
    }
    Ok(pattern_indicator(&pi_digits(), d, l))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn fail(&self, what: &str) -> String {
        format!("{what} at column {} of {:?}", self.pos + 1, self.src)
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), String> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected {token:?}")))
        }
    }

    fn expr(&mut self) -> Result<CReal, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = acc.add(&self.term()?);
            } else if self.eat("-") {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CReal, String> {
        let mut acc = self.unary()?;
        while self.eat("*") {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CReal, String> {
        if self.eat("-") {
            return Ok(self.unary()?.neg());
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<CReal, String> {
        if self.eat("(") {
            let x = self.expr()?;
            self.expect(")")?;
            return Ok(x);
        }
        if self.eat("abs(") {
            let x = self.expr()?;
            self.expect(")")?;
            return Ok(x.abs());
        }
        if self.eat("sqrt2") {
            return Ok(sqrt2());
        }
        for (name, build) in [
            ("rho0(", rho0 as fn(&FugitiveSpec) -> CReal),
            ("rho1(", rho1),
            ("rho2(", rho2),
        ] {
            if self.eat(name) {
                let d = self.natural()?;
                self.expect(",")?;
                let l = self.natural()?;
                self.expect(")")?;
                return Ok(build(&pi_pattern(d, l).map_err(|e| self.fail(&e))?));
            }
        }
        self.literal()
    }

    fn natural(&mut self) -> Result<u64, String> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        let text = &self.rest()[..len];
        let n = text
            .parse()
            .map_err(|_| self.fail("expected a natural number"))?;
        self.pos += len;
        Ok(n)
    }

    fn literal(&mut self) -> Result<CReal, String> {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_digit() || *b == b'/' || *b == b'.')
            .count();
        if len == 0 {
            return Err(self.fail("expected a number, sqrt2, abs(...) or rhoK(D,L)"));
        }
        let q =
            parse_rational(&self.rest()[..len]).ok_or_else(|| self.fail("malformed rational"))?;
        self.pos += len;
        Ok(CReal::from_rational(q))
    }
}
