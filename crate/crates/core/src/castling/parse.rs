use super::{Factor, Family, Label, Summand, TripletDescriptor};
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: at,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
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

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{token}'"))
        }
    }

    /// Digits directly at the cursor, without skipping whitespace.
    fn digits(&mut self) -> Option<(usize, usize)> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        self.text[start..self.pos].parse().ok().map(|v| (v, start))
    }

    fn int(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        match self.digits() {
            Some(v) => Ok(v),
            None => self.err(self.pos, "expected an integer"),
        }
    }

    fn factor(&mut self) -> Result<(Factor, usize)> {
        self.skip_ws();
        let at = self.pos;
        // longest keywords first so that "Spin" is not read as "Sp"
        for (kw, fam) in [
            ("Spin", Family::Spin),
            ("GL", Family::Gl),
            ("SL", Family::Sl),
            ("SO", Family::So),
            ("Sp", Family::Sp),
        ] {
            if self.rest().starts_with(kw) {
                self.pos += kw.len();
                self.expect("(")?;
                let (n, _) = self.int()?;
                self.expect(")")?;
                return Ok((Factor::new(fam, n), at));
            }
        }
        for (kw, fam, n) in [("G2", Family::G2, 2), ("E6", Family::E6, 6), ("E7", Family::E7, 7)] {
            if self.rest().starts_with(kw) {
                self.pos += kw.len();
                return Ok((Factor::new(fam, n), at));
            }
        }
        self.err(at, "unknown factor")
    }

    fn label(&mut self) -> Result<(Label, usize)> {
        self.skip_ws();
        let at = self.pos;
        if self.rest().starts_with("spin") {
            self.pos += 4;
            let dual = self.rest().starts_with('*');
            if dual {
                self.pos += 1;
            }
            return Ok((Label::Spin { dual }, at));
        }
        let coeff = self.digits();
        if !self.rest().starts_with('L') {
            return match coeff {
                Some((1, _)) => Ok((Label::Trivial, at)),
                _ => self.err(at, "unknown label"),
            };
        }
        self.pos += 1;
        let Some((k, _)) = self.digits() else {
            return self.err(self.pos, "expected an integer after 'L'");
        };
        let dual = self.rest().starts_with('*');
        if dual {
            self.pos += 1;
        }
        let label = match coeff {
            None | Some((1, _)) if k >= 1 => Label::Alt { k, dual },
            Some((c, _)) if c >= 2 && k == 1 => Label::Sym { k: c, dual },
            _ => return self.err(at, "unknown label"),
        };
        Ok((label, at))
    }

    /// Returns the summand and the positions of its labels.
    fn summand(&mut self) -> Result<(Summand, Vec<usize>, usize)> {
        self.skip_ws();
        let start = self.pos;
        let mut labels = Vec::new();
        let mut positions = Vec::new();
        let mut tau = 1;
        loop {
            if self.eat("tau") {
                self.expect("(")?;
                let (d, p) = self.int()?;
                if d == 0 {
                    return self.err(p, "tau dimension must be positive");
                }
                self.expect(")")?;
                tau = d;
                if self.peek() == Some('@') {
                    return self.err(self.pos, "tau must be the last slot of a summand");
                }
                break;
            }
            let (l, p) = self.label()?;
            labels.push(l);
            positions.push(p);
            if !self.eat("@") {
                break;
            }
        }
        Ok((Summand { labels, tau }, positions, start))
    }
}

/// Parses and validates a descriptor; errors carry the byte offset of the offending token.
pub fn parse(text: &str) -> Result<TripletDescriptor> {
    let mut c = Cursor { text, pos: 0 };
    let mut center = 0;
    let mut factors: Vec<(Factor, usize)> = Vec::new();
    loop {
        let (f, at) = c.factor()?;
        if f == Factor::gl(1) && c.peek() == Some('^') {
            if !factors.is_empty() || center > 0 {
                return c.err(at, "the center GL(1)^k must come first");
            }
            c.expect("^")?;
            center = c.int()?.0;
        } else {
            factors.push((f, at));
        }
        if !c.eat("x") {
            break;
        }
    }
    c.skip_ws();
    let colon = c.pos;
    c.expect(":")?;
    if factors.is_empty() {
        return c.err(colon, "at least one non-central factor is required");
    }
    for &(f, at) in &factors {
        if f.rank == 0 {
            return c.err(at, format!("{f} has rank zero"));
        }
    }
    let mut summands = Vec::new();
    loop {
        let (s, positions, start) = c.summand()?;
        if s.labels.len() != factors.len() {
            return c.err(
                start,
                format!("summand has {} labels for {} factors", s.labels.len(), factors.len()),
            );
        }
        for ((l, p), (f, _)) in s.labels.iter().zip(&positions).zip(&factors) {
            if let Err(m) = f.label_dim(l) {
                return c.err(*p, m);
            }
        }
        summands.push(s);
        if !c.eat("+") {
            break;
        }
    }
    c.skip_ws();
    if c.pos != text.len() {
        return c.err(c.pos, "unexpected trailing input");
    }
    let t = TripletDescriptor {
        center,
        factors: factors.into_iter().map(|(f, _)| f).collect(),
        summands,
    };
    debug_assert!(t.validate().is_ok());
    Ok(t)
}
