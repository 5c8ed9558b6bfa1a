//! Smith normal form over the integers.

use std::fmt;

use super::Presentation;

/// `Z^rank + Z/d_1 + ... + Z/d_s` with `d_1 | d_2 | ... | d_s`, each `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    /// Group order when finite.
    pub fn order(&self) -> Option<u128> {
        (self.rank == 0).then(|| self.torsion.iter().map(|&d| d as u128).product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Nonzero diagonal entries of the Smith normal form of the matrix whose rows
/// are `rows`, in divisibility order.
pub fn smith_diagonal(rows: &[Vec<i64>]) -> Vec<i64> {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut m: Vec<Vec<i128>> =
        rows.iter().map(|r| (0..ncols).map(|j| r.get(j).copied().unwrap_or(0) as i128).collect()).collect();
    let nrows = m.len();
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        loop {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let mut best = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 && best.is_none_or(|(_, _, b): (usize, usize, i128)| v.abs() < b) {
                        best = Some((i, j, v.abs()));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return finish(diag);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..nrows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..ncols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..ncols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce divisibility by folding an offending row into row t.
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..ncols {
                        m[t][j] += m[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    finish(diag)
}

fn finish(diag: Vec<i128>) -> Vec<i64> {
    diag.into_iter().map(|d| i64::try_from(d).expect("Smith entry fits in i64")).collect()
}

/// Abelianization from the relator exponent-sum matrix.
pub fn abelianize(p: &Presentation) -> AbelianInvariants {
    let n = p.generators.len();
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|r| r.exponent_sums(n)).collect();
    let d = smith_diagonal(&rows);
    AbelianInvariants { rank: n - d.len(), torsion: d.into_iter().filter(|&x| x > 1).map(|x| x as u64).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_presentation;

    #[test]
    fn diagonal_forms() {
        assert_eq!(smith_diagonal(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_diagonal(&[vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(smith_diagonal(&[vec![4, 6]]), vec![2]);
    }

    #[test]
    fn abelian_quotients() {
        let p = parse_presentation("gens: x\nrel: x^2").unwrap();
        assert_eq!(abelianize(&p), AbelianInvariants { rank: 0, torsion: vec![2] });
        let p = parse_presentation("gens: a b c\nrel: [a, b]").unwrap();
        assert_eq!(abelianize(&p).to_string(), "Z^3");
    }
}
