//! Parser for ring descriptions.
//!
//! ```text
//! spec ::= term ("x" term)*
//! term ::= "Z" n | "GF(" p ["^" k] ")" | "F" p "[" var "]/(" poly ")"
//!        | "F" p "[" var ("," var)* "]/(" monomial ("," monomial)* ")"
//! ```
//!
//! Whitespace is ignored everywhere. A single variable with a single
//! generator is read as a univariate polynomial quotient; anything else in
//! brackets is a monomial quotient. Error offsets are byte offsets into the
//! original text.

use crate::error::{Error, Result};
use crate::rings::{is_prime, RingSpec};

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

pub fn parse_spec(text: &str) -> Result<RingSpec> {
    let mut p = Parser {
        src: text,
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
    };
    if p.chars.is_empty() {
        return Err(p.err("empty ring spec"));
    }
    let mut terms = vec![p.term()?];
    while matches!(p.peek(), Some('x' | '×')) {
        p.pos += 1;
        terms.push(p.term()?);
    }
    if p.peek().is_some() {
        return Err(p.err("expected ' x ' or end of input"));
    }
    Ok(if terms.len() == 1 {
        terms.pop().expect("one term")
    } else {
        RingSpec::Product(terms)
    })
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |c| c.0)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn err_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.chars.get(pos).map_or(self.src.len(), |c| c.0),
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        for c in s.chars() {
            if !self.eat(c) {
                return Err(self.err(format!("expected {s:?}")));
            }
        }
        Ok(())
    }

    fn looking_at(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.chars.get(self.pos + i).map(|x| x.1) == Some(c))
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| self.err_at(start, "number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(v)
    }

    fn prime(&mut self) -> Result<u64> {
        let start = self.pos;
        let p = self.number()?;
        if !is_prime(p) {
            return Err(self.err_at(start, format!("{p} is not prime")));
        }
        Ok(p)
    }

    fn ident(&mut self) -> Result<String> {
        let mut s = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                s.push(c);
                self.pos += 1;
            }
            _ => return Err(self.err("expected a variable name")),
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        Ok(s)
    }

    fn term(&mut self) -> Result<RingSpec> {
        let start = self.pos;
        if self.looking_at("GF(") {
            self.pos += 3;
            let p = self.prime()?;
            let k = if self.eat('^') {
                let at = self.pos;
                match self.number()? {
                    0 => return Err(self.err_at(at, "the degree must be at least 1")),
                    k => k as usize,
                }
            } else {
                1
            };
            self.expect(")")?;
            return Ok(RingSpec::GaloisField { p, k });
        }
        match self.peek() {
            Some('Z') => {
                self.pos += 1;
                let at = self.pos;
                let n = self.number()?;
                if n < 2 {
                    return Err(self.err_at(at, "Z n needs n >= 2"));
                }
                Ok(RingSpec::ZMod(n))
            }
            Some('F') => {
                self.pos += 1;
                let p = self.prime()?;
                self.quotient(p)
            }
            _ => Err(self.err_at(start, "unsupported constructor; expected Z, GF( or F")),
        }
    }

    fn quotient(&mut self, p: u64) -> Result<RingSpec> {
        self.expect("[")?;
        let mut vars = vec![self.ident()?];
        while self.eat(',') {
            let at = self.pos;
            let v = self.ident()?;
            if vars.contains(&v) {
                return Err(self.err_at(at, format!("variable {v} repeated")));
            }
            vars.push(v);
        }
        self.expect("]/(")?;
        let close = self.chars[self.pos..]
            .iter()
            .position(|c| c.1 == ')')
            .map(|i| self.pos + i)
            .ok_or_else(|| self.err_at(self.chars.len(), "missing ')'"))?;
        let has_comma = self.chars[self.pos..close].iter().any(|c| c.1 == ',');
        let spec = if vars.len() == 1 && !has_comma {
            let coeffs = self.poly(p, &vars[0])?;
            RingSpec::UnivariateQuotient { p, coeffs }
        } else {
            let mut gens = vec![self.monomial(&vars)?];
            while self.eat(',') {
                gens.push(self.monomial(&vars)?);
            }
            RingSpec::MonomialQuotient {
                p,
                vars: vars.len(),
                gens,
            }
        };
        self.expect(")")?;
        Ok(spec)
    }

    /// A monic polynomial in `var`, coefficients reduced mod `p`.
    fn poly(&mut self, p: u64, var: &str) -> Result<Vec<u64>> {
        let start = self.pos;
        let mut coeffs: Vec<u64> = Vec::new();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if first || self.eat('+') {
                false
            } else {
                break;
            };
            first = false;
            let at = self.pos;
            let c = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                Some(self.number()? % p)
            } else {
                None
            };
            self.eat('*');
            let e = if self.looking_at(var) && !self.next_is_digit_after(var.len()) {
                self.pos += var.chars().count();
                if self.eat('^') {
                    self.number()? as usize
                } else {
                    1
                }
            } else if c.is_some() {
                0
            } else {
                return Err(self.err_at(at, format!("expected a term in {var}")));
            };
            if e > 4096 {
                return Err(self.err_at(at, "degree too large"));
            }
            let c = c.unwrap_or(1);
            let c = if negative { (p - c) % p } else { c };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = (coeffs[e] + c) % p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 | 1 => Err(self.err_at(start, "the modulus must have degree at least 1")),
            n if coeffs[n - 1] != 1 => Err(self.err_at(start, "the modulus must be monic")),
            _ => Ok(coeffs),
        }
    }

    fn next_is_digit_after(&self, n: usize) -> bool {
        self.chars.get(self.pos + n).is_some_and(|c| c.1.is_ascii_digit())
    }

    /// Product of powers of the variables, e.g. `x^2y` or `x1*x2^3`.
    fn monomial(&mut self, vars: &[String]) -> Result<Vec<u32>> {
        let start = self.pos;
        let mut e = vec![0u32; vars.len()];
        loop {
            let at = self.pos;
            let name = self.ident()?;
            let i = vars
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| self.err_at(at, format!("unknown variable {name}")))?;
            let k = if self.eat('^') { self.number()? } else { 1 };
            e[i] = e[i]
                .checked_add(u32::try_from(k).map_err(|_| self.err_at(at, "exponent too large"))?)
                .ok_or_else(|| self.err_at(at, "exponent too large"))?;
            self.eat('*');
            if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                break;
            }
        }
        if e.iter().all(|&k| k == 0) {
            return Err(self.err_at(start, "a generator must be a nonconstant monomial"));
        }
        Ok(e)
    }
}
