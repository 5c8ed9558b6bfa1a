//! Isomorphism of configurations by canonical forms.

use std::collections::HashMap;

use super::{Kind, LocalType, OrbifoldConfig};
use crate::numerics::Weight;

type CompKey = (u32, i64, Weight, Kind);
/// Local type, sorted indices of the symmetric branches, index of the crossing line.
type PointCode = (LocalType, Vec<usize>, Option<usize>);

/// Canonical encoding: the component keys in canonical order and the sorted
/// point codes under the lexicographically least relabeling.
pub type CanonicalForm = (Vec<CompKey>, Vec<PointCode>);

fn split_branches(t: LocalType, branches: &[String]) -> (Vec<String>, Option<String>) {
    match t {
        LocalType::Cluster { line: true, .. } => {
            let (last, rest) = branches.split_last().expect("cluster with line has branches");
            (rest.to_vec(), Some(last.clone()))
        }
        _ => (branches.to_vec(), None),
    }
}

/// Computes the canonical form. Components are first sorted by key and by
/// the multiset of point types they meet; only orderings inside equal classes
/// are searched, so the cost is exponential only in the class sizes.
pub fn canonical_form(c: &OrbifoldConfig) -> CanonicalForm {
    let n = c.components.len();
    let index: HashMap<&str, usize> = c.components.iter().enumerate().map(|(i, x)| (x.id.as_str(), i)).collect();
    let points: Vec<(LocalType, Vec<usize>, Option<usize>)> = c
        .points
        .iter()
        .map(|p| {
            let (tight, line) = split_branches(p.local_type, &p.branches());
            (p.local_type, tight.iter().map(|b| index[b.as_str()]).collect(), line.map(|l| index[l.as_str()]))
        })
        .collect();
    let mut sig: Vec<(CompKey, Vec<(LocalType, usize, bool)>)> = c
        .components
        .iter()
        .map(|x| ((x.degree, x.euler_set, x.weight, x.kind), Vec::new()))
        .collect();
    for (t, tight, line) in &points {
        for i in 0..n {
            let k = tight.iter().filter(|&&b| b == i).count();
            let on_line = *line == Some(i);
            if k > 0 || on_line {
                sig[i].1.push((*t, k, on_line));
            }
        }
    }
    for s in &mut sig {
        s.1.sort();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match classes.last_mut() {
            Some(cl) if sig[cl[0]] == sig[i] => cl.push(i),
            _ => classes.push(vec![i]),
        }
    }
    let keys: Vec<CompKey> = order.iter().map(|&i| sig[i].0).collect();

    let mut perms: Vec<Vec<usize>> = classes.clone();
    let mut best: Option<Vec<PointCode>> = None;
    loop {
        let mut label = vec![0usize; n];
        let mut pos = 0;
        for cl in &perms {
            for &i in cl {
                label[i] = pos;
                pos += 1;
            }
        }
        let mut codes: Vec<PointCode> = points
            .iter()
            .map(|(t, tight, line)| {
                let mut s: Vec<usize> = tight.iter().map(|&b| label[b]).collect();
                s.sort();
                (*t, s, line.map(|l| label[l]))
            })
            .collect();
        codes.sort();
        if best.as_ref().is_none_or(|b| codes < *b) {
            best = Some(codes);
        }
        // Odometer over the per-class permutations.
        let mut k = 0;
        while k < perms.len() && !next_permutation(&mut perms[k]) {
            k += 1;
        }
        if k == perms.len() {
            break;
        }
    }
    (keys, best.unwrap_or_default())
}

/// Advances to the next lexicographic permutation; on wrap-around resets to
/// sorted order and returns false.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// True iff the two configurations agree up to renaming of components and points.
pub fn iso_check(a: &OrbifoldConfig, b: &OrbifoldConfig) -> bool {
    a.components.len() == b.components.len()
        && a.points.len() == b.points.len()
        && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{build_apollonius, general_lines};
    use crate::numerics::Weight::Fin;

    #[test]
    fn permutation_symmetry() {
        let a = build_apollonius(Fin(2), &[Fin(3), Fin(4)]);
        let b = build_apollonius(Fin(2), &[Fin(4), Fin(3)]);
        assert!(iso_check(&a, &b));
        assert!(!iso_check(&build_apollonius(Fin(2), &[Fin(3); 2]), &build_apollonius(Fin(3), &[Fin(3); 2])));
    }

    #[test]
    fn distinguishes_incidence() {
        let lines = general_lines(&[Fin(2); 4]);
        let mut moved = lines.clone();
        // Turn two nodes into one triple point: same components, different incidence.
        moved.points.retain(|p| p.id != "p1-2" && p.id != "p1-3" && p.id != "p2-3");
        moved.points.push(crate::configuration::SingularPointRec::new("t", LocalType::TRIPLE, &["T1", "T2", "T3"]));
        assert!(!iso_check(&lines, &moved));
        assert!(iso_check(&moved, &moved.clone()));
    }

    #[test]
    fn permutations_cycle() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!((count, v), (6, vec![0, 1, 2]));
    }
}
