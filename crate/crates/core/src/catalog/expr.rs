//! Rational expressions in named parameters: `+ - * / ^`, parentheses, integer or
//! `p/q` literals and identifiers. `^` takes an integer exponent and binds tightest.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Rational;

struct Eval<'a> {
    text: &'a [u8],
    pos: usize,
    vars: &'a HashMap<String, Rational>,
}

impl Eval<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.text.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Rational> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Rational> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc *= self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return self.err("division by zero");
                    }
                    acc /= d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Rational> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Rational> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let Some(e) = self.integer() else {
            return self.err("expected an integer exponent");
        };
        let e = i32::try_from(e).or_else(|_| self.err("exponent too large"))?;
        if negative && base.is_zero() {
            return self.err("division by zero");
        }
        Ok(base.pow(if negative { -e } else { e }))
    }

    fn integer(&mut self) -> Option<u64> {
        self.peek()?;
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos]).ok()?.parse().ok()
    }

    fn atom(&mut self) -> Result<Rational> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                Ok(Rational::from(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .text
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
                match self.vars.get(name) {
                    Some(v) => Ok(v.clone()),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown parameter '{name}'"))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of expression"),
        }
    }
}

pub fn evaluate(text: &str, vars: &HashMap<String, Rational>) -> Result<Rational> {
    let mut ev = Eval {
        text: text.as_bytes(),
        pos: 0,
        vars,
    };
    let v = ev.sum()?;
    if ev.peek().is_some() {
        return ev.err("unexpected trailing input");
    }
    Ok(v)
}
