//! Finitely presented groups: presentations, coset enumeration and
//! abelianization.

mod builders;
mod enumerate;
mod smith;
mod text;

use std::fmt;

use thiserror::Error;

pub use builders::{
    build_a2, build_apollonius_pi1, build_modular, coordinate_triangle, line_arrangement_group, verify_orders,
    OrderCheck, OrderOutcome, OrderReport,
};
pub use enumerate::{todd_coxeter, CosetTable, Overflow, DEFAULT_MAX_COSETS};
pub use smith::{abelianize, smith_diagonal, AbelianInvariants};
pub use text::parse_presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
}

/// A word as a list of syllables `(generator, exponent)`, freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![(g, 1)])
    }

    pub fn from_syllables(s: impl IntoIterator<Item = (usize, i64)>) -> Word {
        let mut w = Word::identity();
        for (g, e) in s {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::from_syllables(self.0.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Letters as signed generator columns: `2g` for `g`, `2g + 1` for `g^-1`.
    pub(crate) fn letters(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &(g, e) in &self.0 {
            let col = if e > 0 { 2 * g } else { 2 * g + 1 };
            out.extend(std::iter::repeat_n(col, e.unsigned_abs() as usize));
        }
        out
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0; ngens];
        for &(g, e) in &self.0 {
            v[g] += e;
        }
        v
    }

    /// Rotates the word left by `n` letters.
    pub fn rotate(&self, n: usize) -> Word {
        let letters = self.letters();
        if letters.is_empty() {
            return self.clone();
        }
        let n = n % letters.len();
        let mut w = Word::identity();
        for &c in letters[n..].iter().chain(&letters[..n]) {
            w.push(c / 2, if c % 2 == 0 { 1 } else { -1 });
        }
        w
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: &[&str]) -> Presentation {
        Presentation { generators: generators.iter().map(|s| s.to_string()).collect(), relators: Vec::new() }
    }

    pub fn gen(&self, name: &str) -> Word {
        Word::gen(self.generators.iter().position(|g| g == name).expect("known generator"))
    }

    pub fn relate(&mut self, w: Word) {
        if !w.is_identity() {
            self.relators.push(w);
        }
    }

    /// Adds the relation `lhs = rhs`.
    pub fn equate(&mut self, lhs: &Word, rhs: &Word) {
        self.relate(lhs.mul(&rhs.inverse()));
    }

    fn render_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".into();
        }
        let parts: Vec<String> = w
            .syllables()
            .iter()
            .map(|&(g, e)| if e == 1 { self.generators[g].clone() } else { format!("{}^{e}", self.generators[g]) })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.render_word(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let a = Word::gen(0);
        let b = Word::gen(1);
        assert!(a.mul(&b).mul(&b.inverse()).mul(&a.inverse()).is_identity());
        assert_eq!(Word::commutator(&a, &b).exponent_sums(2), vec![0, 0]);
        assert_eq!(a.pow(3).syllables(), &[(0, 3)]);
        assert_eq!(a.mul(&b.pow(2)).rotate(1), Word::from_syllables([(1, 2), (0, 1)]));
    }
}
