//! `gens: a b c` / `rel: (a b)^2 = (b a)^2` / `rel: [a, b]` / `rel: a'^4`.

use super::{GroupError, Presentation, Word};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    gens: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> GroupError {
        GroupError::Syntax { line: self.line, msg: format!("column {}: {}", self.pos + 1, msg.into()) }
    }

    fn skip(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
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

    fn int(&mut self) -> Result<i64, GroupError> {
        self.skip();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an integer exponent"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn expr(&mut self) -> Result<Word, GroupError> {
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if c == b')' || c == b']' || c == b',' {
                break;
            }
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, GroupError> {
        let mut w = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                w
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                if !self.eat(b',') {
                    return Err(self.err("expected `,` in commutator"));
                }
                let b = self.expr()?;
                if !self.eat(b']') {
                    return Err(self.err("expected `]`"));
                }
                Word::commutator(&a, &b)
            }
            Some(b'1') => {
                self.pos += 1;
                Word::identity()
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                let g = self.gens.iter().position(|x| *x == name).ok_or(GroupError::UnknownGenerator(name))?;
                Word::gen(g)
            }
            Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            None => return Err(self.err("unexpected end of relation")),
        };
        loop {
            if self.eat(b'\'') {
                w = w.inverse();
            } else if self.eat(b'^') {
                let n = self.int()?;
                w = w.pow(n);
            } else {
                return Ok(w);
            }
        }
    }
}

fn parse_word(line: usize, body: &str, gens: &[String]) -> Result<Word, GroupError> {
    let mut p = Parser { src: body.as_bytes(), pos: 0, line, gens };
    let w = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

pub fn parse_presentation(src: &str) -> Result<Presentation, GroupError> {
    let mut pres = Presentation::default();
    let mut have_gens = false;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap().trim();
        if text.is_empty() {
            continue;
        }
        if let Some(rest) = text.strip_prefix("gens:") {
            if have_gens {
                return Err(GroupError::Syntax { line, msg: "repeated `gens:`".into() });
            }
            have_gens = true;
            for g in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                if !g.chars().next().unwrap().is_ascii_alphabetic() || !g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(GroupError::Syntax { line, msg: format!("bad generator name `{g}`") });
                }
                if pres.generators.iter().any(|x| x == g) {
                    return Err(GroupError::DuplicateGenerator(g.into()));
                }
                pres.generators.push(g.into());
            }
        } else if let Some(rest) = text.strip_prefix("rel:") {
            if !have_gens {
                return Err(GroupError::Syntax { line, msg: "`rel:` before `gens:`".into() });
            }
            // `a = b = c` contributes one relator per equality.
            let sides: Vec<&str> = rest.split('=').collect();
            if sides.len() == 1 {
                pres.relate(parse_word(line, sides[0], &pres.generators)?);
            }
            for pair in sides.windows(2) {
                let (l, r) = (parse_word(line, pair[0], &pres.generators)?, parse_word(line, pair[1], &pres.generators)?);
                pres.equate(&l, &r);
            }
        } else {
            return Err(GroupError::Syntax { line, msg: "expected `gens:` or `rel:`".into() });
        }
    }
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let p = parse_presentation("gens: t k\nrel: (t k)^2 = (k t)^2\nrel: k^3 # cube\nrel: [t, k']").unwrap();
        assert_eq!(p.relators.len(), 3);
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn chains_and_errors() {
        let p = parse_presentation("gens: a b\nrel: a^2 = b^3 = 1").unwrap();
        assert_eq!(p.relators, vec![Word::from_syllables([(0, 2), (1, -3)]), Word::from_syllables([(1, 3)])]);
        assert_eq!(parse_presentation("gens: a\nrel: b"), Err(GroupError::UnknownGenerator("b".into())));
        assert!(matches!(parse_presentation("gens: a\nrel: (a"), Err(GroupError::Syntax { line: 2, .. })));
    }
}
