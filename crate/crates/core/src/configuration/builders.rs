//! Builders for the named configuration families.

use std::collections::HashMap;

use super::{ConfigError, CurveComponent, Kind, LocalType, OrbifoldConfig, SingularPointRec};
use crate::coverings::{lift_raw, KummerCover};
use crate::numerics::Weight;

/// A smooth conic `Q` of weight `a` with tangent lines `T1..Tn`, any two of
/// which meet transversally off the conic.
pub fn build_apollonius(a: Weight, bs: &[Weight]) -> OrbifoldConfig {
    let mut c = OrbifoldConfig {
        label: format!("A({a};{})", join(bs)),
        ..Default::default()
    };
    c.components.push(CurveComponent::quadric("Q", a));
    for (i, &b) in bs.iter().enumerate() {
        let t = format!("T{}", i + 1);
        c.components.push(CurveComponent::line(&t, b));
        c.points.push(SingularPointRec::new(&format!("q{}", i + 1), LocalType::TACNODE, &["Q", &t]));
    }
    for i in 0..bs.len() {
        for j in i + 1..bs.len() {
            let (ti, tj) = (format!("T{}", i + 1), format!("T{}", j + 1));
            c.points.push(SingularPointRec::new(&format!("n{}-{}", i + 1, j + 1), LocalType::NODE, &[&ti, &tj]));
        }
    }
    c
}

/// An irreducible curve of degree `d` with `kappa` simple cusps and `nu`
/// nodes, weighted by `b`.
pub fn build_cuspidal(d: u32, kappa: u32, nu: u32, b: Weight) -> Result<OrbifoldConfig, ConfigError> {
    let (d64, k64, n64) = (d as i64, kappa as i64, nu as i64);
    let g = (d64 - 1) * (d64 - 2) / 2 - k64 - n64;
    if g < 0 {
        return Err(ConfigError::NegativeGenus(g));
    }
    let mut c = OrbifoldConfig {
        label: format!("cuspidal(d={d},kappa={kappa},nu={nu};{b})"),
        ..Default::default()
    };
    c.components.push(CurveComponent {
        id: "C".into(),
        degree: d,
        euler_set: -d64 * d64 + 3 * d64 + 2 * k64 + n64,
        weight: b,
        kind: Kind::from_degree(d),
    });
    for i in 1..=kappa {
        c.points.push(SingularPointRec::new(&format!("k{i}"), LocalType::CUSP, &["C"]));
    }
    for i in 1..=nu {
        c.points.push(SingularPointRec::new(&format!("s{i}"), LocalType::NODE, &["C", "C"]));
    }
    Ok(c)
}

/// `n` lines in general position, `T1..Tn`.
pub fn general_lines(weights: &[Weight]) -> OrbifoldConfig {
    let mut c = OrbifoldConfig { label: format!("general_lines({})", join(weights)), ..Default::default() };
    for (i, &w) in weights.iter().enumerate() {
        c.components.push(CurveComponent::line(&format!("T{}", i + 1), w));
    }
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            let (a, b) = (format!("T{}", i + 1), format!("T{}", j + 1));
            c.points.push(SingularPointRec::new(&format!("p{}-{}", i + 1, j + 1), LocalType::NODE, &[&a, &b]));
        }
    }
    c
}

/// The six lines through pairs of four general points `P1..P4`: four triple
/// points and three nodes. Line `Lij` joins `Pi` and `Pj`; weights are taken
/// in the order `L12, L13, L14, L23, L24, L34`.
pub fn complete_quadrilateral(weights: &[Weight; 6]) -> OrbifoldConfig {
    let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let name = |(i, j): (u32, u32)| format!("L{i}{j}");
    let mut c = OrbifoldConfig { label: format!("complete_quadrilateral({})", join(weights)), ..Default::default() };
    for (k, &p) in pairs.iter().enumerate() {
        c.components.push(CurveComponent::line(&name(p), weights[k]));
    }
    for v in 1..=4u32 {
        let on: Vec<String> = pairs.iter().filter(|(i, j)| *i == v || *j == v).map(|&p| name(p)).collect();
        let on: Vec<&str> = on.iter().map(|s| s.as_str()).collect();
        c.points.push(SingularPointRec::new(&format!("P{v}"), LocalType::TRIPLE, &on));
    }
    for (a, b) in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))] {
        let (la, lb) = (name(a), name(b));
        c.points.push(SingularPointRec::new(&format!("D{}{}", &la[1..], &lb[1..]), LocalType::NODE, &[&la, &lb]));
    }
    c
}

/// The Ceva arrangement `(x^n - y^n)(y^n - z^n)(z^n - x^n) = 0`.
///
/// Lines `A_a: x = w^a y`, `B_b: y = w^b z`, `C_c: z = w^c x` with `w` a
/// primitive `n`-th root of unity. `A_a, B_b, C_c` are concurrent iff
/// `a + b + c = 0 mod n`; each family also shares one vertex.
pub fn ceva(n: u32, weights: &[Weight]) -> OrbifoldConfig {
    let w = |i: usize| weights[i % weights.len()];
    let mut c = OrbifoldConfig { label: format!("ceva({n})"), ..Default::default() };
    for (f, fam) in ["A", "B", "C"].iter().enumerate() {
        for a in 0..n {
            c.components.push(CurveComponent::line(&format!("{fam}{a}"), w(f * n as usize + a as usize)));
        }
    }
    for (v, fam) in [("V1", "A"), ("V2", "B"), ("V3", "C")] {
        let on: Vec<String> = (0..n).map(|a| format!("{fam}{a}")).collect();
        let on: Vec<&str> = on.iter().map(|s| s.as_str()).collect();
        c.points.push(SingularPointRec::new(v, LocalType::Ordinary(n), &on));
    }
    for a in 0..n {
        for b in 0..n {
            let cc = (2 * n - a - b) % n;
            let (la, lb, lc) = (format!("A{a}"), format!("B{b}"), format!("C{cc}"));
            c.points.push(SingularPointRec::new(&format!("t{a}-{b}"), LocalType::TRIPLE, &[&la, &lb, &lc]));
        }
    }
    c
}

/// Parameters accepted by [`build_preset`]: the weight list.
pub type PresetParams = [Weight];

/// Builds a named preset. Weight-1 components are kept; normalize afterwards
/// to strip them.
///
/// * `complete_quadrilateral`: 6 weights, or 1 applied to all lines.
/// * `six_general_lines`: 6 weights.
/// * `ceva(n)`: `3n` weights, or 1 applied to all lines.
/// * `C2_family`: `a1 a2 a3 a4 e f g b4 .. bn`, the lift of the Apollonius
///   configuration `A(a; 2e, 2f, 2g; b4..bn)` under the squaring map with the
///   four lifted lines reweighted to `a1..a4`.
pub fn build_preset(name: &str, params: &PresetParams) -> Result<OrbifoldConfig, ConfigError> {
    let wrong = |expected: &str| ConfigError::WrongParamCount {
        name: name.to_string(),
        expected: expected.to_string(),
        got: params.len(),
    };
    let spread = |n: usize| -> Option<Vec<Weight>> {
        match params.len() {
            1 => Some(vec![params[0]; n]),
            l if l == n => Some(params.to_vec()),
            _ => None,
        }
    };
    match name {
        "complete_quadrilateral" => {
            let w = spread(6).ok_or_else(|| wrong("1 or 6"))?;
            Ok(complete_quadrilateral(&[w[0], w[1], w[2], w[3], w[4], w[5]]))
        }
        "six_general_lines" => {
            let w = spread(6).ok_or_else(|| wrong("1 or 6"))?;
            Ok(general_lines(&w))
        }
        "C2_family" => c2_family(params).ok_or_else(|| wrong("at least 7"))?,
        _ => {
            let n = name
                .strip_prefix("ceva(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.parse::<u32>().ok())
                .filter(|&n| n >= 2)
                .ok_or_else(|| ConfigError::UnknownPreset(name.to_string()))?;
            let w = spread(3 * n as usize).ok_or_else(|| wrong("1 or 3n"))?;
            Ok(ceva(n, &w))
        }
    }
}

fn c2_family(params: &[Weight]) -> Option<Result<OrbifoldConfig, ConfigError>> {
    if params.len() < 7 {
        return None;
    }
    let double = |w: Weight| match w {
        Weight::Fin(x) => Weight::Fin(2 * x),
        Weight::Inf => Weight::Inf,
    };
    let mut bs = vec![double(params[4]), double(params[5]), double(params[6])];
    bs.extend_from_slice(&params[7..]);
    let base = build_apollonius(params[0], &bs);
    let cover = KummerCover::new(2, ["T1", "T2", "T3"]);
    let label = format!("C2({};{})", join(&params[..4]), join(&params[4..]));
    let unsupported = |e: crate::coverings::CoverError| ConfigError::UnsupportedLocalType(e.to_string());
    let lifted = lift_raw(&base, &cover).and_then(|mut raw| {
        for j in 0..4 {
            if let Some(c) = raw.components.iter_mut().find(|c| c.id == format!("Q.{j}")) {
                c.weight = params[j];
            }
        }
        raw.normalized(&label)
    });
    Some(lifted.map_err(unsupported).map(|lifted| {
        let mut map: HashMap<String, String> = HashMap::new();
        for (from, to) in [("T1", "X"), ("T2", "Y"), ("T3", "Z")] {
            map.insert(from.into(), to.into());
        }
        for j in 0..4 {
            map.insert(format!("Q.{j}"), format!("L{}", j + 1));
        }
        rename(&lifted, &map)
    }))
}

/// Renames components everywhere they occur.
pub(crate) fn rename(c: &OrbifoldConfig, map: &HashMap<String, String>) -> OrbifoldConfig {
    let r = |id: &String| map.get(id).cloned().unwrap_or_else(|| id.clone());
    OrbifoldConfig {
        components: c.components.iter().map(|x| CurveComponent { id: r(&x.id), ..x.clone() }).collect(),
        points: c
            .points
            .iter()
            .map(|p| SingularPointRec {
                incidences: p.incidences.iter().map(|(id, n)| (r(id), *n)).collect(),
                ..p.clone()
            })
            .collect(),
        label: c.label.clone(),
    }
}

fn join(ws: &[Weight]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Weight::Fin;

    #[test]
    fn apollonius_shape() {
        let c = build_apollonius(Fin(4), &[Fin(4); 3]);
        assert_eq!(c.components.len(), 4);
        let tac = c.points.iter().filter(|p| p.local_type == LocalType::TACNODE).count();
        assert_eq!((tac, c.points.len() - tac), (3, 3));
        assert!(c.bezout_defects().is_empty());
        assert!(build_apollonius(Fin(2), &[]).points.is_empty());
    }

    #[test]
    fn cuspidal_rows() {
        let c = build_cuspidal(6, 9, 0, Fin(2)).unwrap();
        assert_eq!(c.components[0].euler_set, 0);
        assert_eq!(build_cuspidal(1, 0, 0, Fin(2)).unwrap().components[0].euler_set, 2);
        assert_eq!(build_cuspidal(15, 40, 51, Fin(6)).unwrap().points.len(), 91);
        assert!(matches!(build_cuspidal(4, 4, 0, Fin(2)), Err(ConfigError::NegativeGenus(-1))));
    }

    #[test]
    fn line_arrangements_satisfy_bezout() {
        let q = complete_quadrilateral(&[Fin(2); 6]);
        assert_eq!(q.points.iter().filter(|p| p.local_type == LocalType::TRIPLE).count(), 4);
        assert!(q.bezout_defects().is_empty());
        let c = build_preset("ceva(3)", &[Fin(3)]).unwrap();
        assert_eq!(c.components.len(), 9);
        assert_eq!(c.points.iter().filter(|p| p.local_type == LocalType::TRIPLE).count(), 12);
        assert!(c.bezout_defects().is_empty());
        assert!(general_lines(&[Fin(2); 6]).bezout_defects().is_empty());
    }

    #[test]
    fn preset_errors() {
        assert!(matches!(build_preset("nope", &[]), Err(ConfigError::UnknownPreset(_))));
        assert!(matches!(build_preset("six_general_lines", &[Fin(2); 4]), Err(ConfigError::WrongParamCount { .. })));
    }
}
