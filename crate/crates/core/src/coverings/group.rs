//! The covering group `(Z/k)^2` and its subgroups.

use std::collections::BTreeSet;

use crate::groups::smith_diagonal;

pub type Elem = (u32, u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KummerGroup {
    pub k: u32,
}

impl KummerGroup {
    pub fn add(self, a: Elem, b: Elem) -> Elem {
        ((a.0 + b.0) % self.k, (a.1 + b.1) % self.k)
    }

    pub fn scale(self, m: u32, a: Elem) -> Elem {
        let k = self.k as u64;
        (((m as u64 * a.0 as u64) % k) as u32, ((m as u64 * a.1 as u64) % k) as u32)
    }

    pub fn elements(self) -> impl Iterator<Item = Elem> {
        let k = self.k;
        (0..k).flat_map(move |a| (0..k).map(move |b| (a, b)))
    }

    /// Images of the meridians of the branch lines `X, Y, Z`.
    pub fn meridians(self) -> [Elem; 3] {
        [(1 % self.k, 0), (0, 1 % self.k), (self.k - 1, self.k - 1)]
    }

    pub fn span(self, gens: &[Elem]) -> Subgroup {
        let mut set: BTreeSet<Elem> = BTreeSet::from([(0, 0)]);
        let mut frontier = vec![(0, 0)];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { group: self, elements: set, gens: gens.to_vec() }
    }
}

/// A subgroup of `(Z/k)^2`, listed element by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub group: KummerGroup,
    pub elements: BTreeSet<Elem>,
    pub gens: Vec<Elem>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        (self.group.k * self.group.k) as usize / self.order()
    }

    /// Least element of the coset `g + H`.
    pub fn coset_rep(&self, g: Elem) -> Elem {
        self.elements.iter().map(|&h| self.group.add(g, h)).min().expect("subgroup contains 0")
    }

    /// Sorted coset representatives of `H` in `(Z/k)^2`.
    pub fn cosets(&self) -> Vec<Elem> {
        let reps: BTreeSet<Elem> = self.group.elements().map(|g| self.coset_rep(g)).collect();
        reps.into_iter().collect()
    }

    /// Invariant factors of `H` itself, each greater than 1.
    ///
    /// If the preimage lattice `L` of `H` in `Z^2` has Smith form `diag(d1, d2)`,
    /// then `H = L / kZ^2` has factors `k/d2 | k/d1`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let k = self.group.k as i64;
        let mut rows: Vec<Vec<i64>> = self.gens.iter().map(|g| vec![g.0 as i64, g.1 as i64]).collect();
        rows.push(vec![k, 0]);
        rows.push(vec![0, k]);
        let d = smith_diagonal(&rows);
        let mut out: Vec<u64> = d.iter().rev().map(|&di| (k / di) as u64).filter(|&f| f > 1).collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_and_cosets() {
        let g = KummerGroup { k: 4 };
        let h = g.span(&[(2, 0), (0, 2)]);
        assert_eq!((h.order(), h.index()), (4, 4));
        assert_eq!(h.invariant_factors(), vec![2, 2]);
        assert_eq!(h.cosets(), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let whole = g.span(&g.meridians());
        assert_eq!((whole.index(), whole.invariant_factors()), (1, vec![4, 4]));
        let cyc = g.span(&[(1, 1)]);
        assert_eq!(cyc.invariant_factors(), vec![4]);
    }
}
