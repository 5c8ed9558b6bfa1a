//! Todd-Coxeter enumeration of the cosets of the trivial subgroup.
//!
//! HLT strategy: every live coset is scanned against every relator in order,
//! defining new cosets where a scan gets stuck; coincidences are merged with
//! a union-find and a queue.

use std::fmt;

use super::Presentation;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

/// Enumeration stopped with too many live cosets. Says nothing about
/// finiteness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow {
    pub max_cosets: usize,
}

impl fmt::Display for Overflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "overflow: more than {} cosets", self.max_cosets)
    }
}

impl std::error::Error for Overflow {}

/// A complete coset table, cosets renumbered `0..order` in definition order.
///
/// `rows[c][2g]` is `c * g`, `rows[c][2g + 1]` is `c * g^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub rows: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Each column is a permutation, and each `g^-1` column inverts `g`.
    pub fn is_permutation_action(&self) -> bool {
        let n = self.rows.len();
        let cols = self.rows.first().map_or(0, |r| r.len());
        (0..cols).all(|x| {
            let mut seen = vec![false; n];
            self.rows.iter().enumerate().all(|(c, r)| {
                let d = r[x] as usize;
                let ok = d < n && !seen[d] && self.rows[d][x ^ 1] as usize == c;
                if d < n {
                    seen[d] = true;
                }
                ok
            })
        })
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Overflow> {
        if self.live >= self.max {
            return Err(Overflow { max_cosets: self.max });
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                let fx = self.get(f1, x ^ 1);
                if ex != NONE {
                    self.merge(f1, ex);
                } else if fx != NONE {
                    self.merge(e1, fx);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<(), Overflow> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if i as isize == j {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup; the table size is `|G|`.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CosetTable, Overflow> {
    let cols = 2 * p.generators.len();
    let relators: Vec<Vec<usize>> = p.relators.iter().map(|r| r.letters()).collect();
    let mut en = Enumerator { cols, table: vec![NONE; cols], parent: vec![0], live: 1, max: max_cosets.max(1), queue: Vec::new() };
    let mut c = 0u32;
    while (c as usize) < en.parent.len() {
        for r in &relators {
            if !en.alive(c) {
                break;
            }
            en.scan_and_fill(c, r)?;
        }
        for x in 0..cols {
            if !en.alive(c) {
                break;
            }
            if en.get(c, x) == NONE {
                en.define(c, x)?;
            }
        }
        c += 1;
    }
    // Renumber live cosets.
    let mut index = vec![NONE; en.parent.len()];
    let mut n = 0;
    for c in 0..en.parent.len() as u32 {
        if en.alive(c) {
            index[c as usize] = n;
            n += 1;
        }
    }
    let live: Vec<u32> = (0..en.parent.len() as u32).filter(|&c| en.alive(c)).collect();
    let rows = live.iter().map(|&c| (0..cols).map(|x| index[en.rep(en.get(c, x)) as usize]).collect()).collect();
    Ok(CosetTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_presentation;

    fn order(src: &str) -> usize {
        todd_coxeter(&parse_presentation(src).unwrap(), 100_000).unwrap().order()
    }

    #[test]
    fn small_groups() {
        assert_eq!(order("gens: x\nrel: x"), 1);
        assert_eq!(order("gens: x\nrel: x^7"), 7);
        assert_eq!(order("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^5"), 60);
        assert_eq!(order("gens: a b\nrel: a^3 = b^2 = (a b)^2 = 1"), 6);
        let t = todd_coxeter(&parse_presentation("gens: a b\nrel: a^4\nrel: b^2\nrel: (a b)^2").unwrap(), 100).unwrap();
        assert_eq!(t.order(), 8);
        assert!(t.is_permutation_action());
    }

    #[test]
    fn free_group_overflows() {
        assert_eq!(todd_coxeter(&parse_presentation("gens: a b").unwrap(), 500), Err(Overflow { max_cosets: 500 }));
    }
}
