//! Line-oriented configuration documents.
//!
//! ```text
//! # A(4;4,4,4)
//! label A(4;4,4,4)
//! component Q degree=2 euler=2 weight=4 kind=quadric
//! component T1 degree=1 euler=2 weight=4 kind=line
//! point q1 type=tacnode on=Q,T1
//! ```
//!
//! Point types: `node`, `triple`, `ordinary:<r>`, `tacnode`, `tacnode:<c>`,
//! `cluster:<c>:<n>[:line]`, `cusp`, `power:<m>`. Incidences are
//! `id[:branches]`; a cluster's transversal line is its last branch.

use std::collections::HashMap;

use super::{ConfigError, CurveComponent, Kind, LocalType, OrbifoldConfig, SingularPointRec};
use crate::numerics::Weight;

struct Cursor<'a> {
    line: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn err(&self, at: &str, msg: impl Into<String>) -> ConfigError {
        // Column of `at` inside the line, 1-based.
        let col = at.as_ptr() as usize - self.text.as_ptr() as usize + 1;
        ConfigError::Syntax { line: self.line, col, msg: msg.into() }
    }
}

pub fn parse_config(doc: &str) -> Result<OrbifoldConfig, ConfigError> {
    let mut config = OrbifoldConfig::default();
    for (n, raw) in doc.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let cur = Cursor { line: n + 1, text: raw };
        let mut words = text.split_whitespace();
        let Some(head) = words.next() else { continue };
        match head {
            "label" => {
                let rest = text.trim_start().strip_prefix("label").unwrap_or("").trim();
                config.label = rest.to_string();
            }
            "component" => config.components.push(parse_component(&cur, head, words)?),
            "point" => config.points.push(parse_point(&cur, head, words)?),
            other => return Err(cur.err(other, format!("unknown directive `{other}`"))),
        }
    }
    config.check_structure()?;
    Ok(config)
}

fn fields<'a, I: Iterator<Item = &'a str>>(
    cur: &Cursor<'a>,
    head: &'a str,
    words: I,
    keys: &[&str],
) -> Result<(&'a str, HashMap<String, &'a str>), ConfigError> {
    let mut words = words.peekable();
    let id = words.next().ok_or_else(|| cur.err(head, "missing id"))?;
    if id.contains('=') {
        return Err(cur.err(id, "missing id"));
    }
    let mut map = HashMap::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| cur.err(w, format!("expected key=value, got `{w}`")))?;
        if !keys.contains(&k) {
            return Err(cur.err(w, format!("unknown key `{k}`")));
        }
        if map.insert(k.to_string(), v).is_some() {
            return Err(cur.err(w, format!("repeated key `{k}`")));
        }
    }
    for k in keys {
        if !map.contains_key(*k) {
            return Err(cur.err(head, format!("missing `{k}=`")));
        }
    }
    Ok((id, map))
}

fn parse_component<'a, I: Iterator<Item = &'a str>>(
    cur: &Cursor<'a>,
    head: &'a str,
    words: I,
) -> Result<CurveComponent, ConfigError> {
    let (id, f) = fields(cur, head, words, &["degree", "euler", "weight", "kind"])?;
    let degree: u32 = f["degree"].parse().ok().filter(|&d| d >= 1).ok_or_else(|| cur.err(f["degree"], "bad degree"))?;
    let euler_set: i64 = f["euler"].parse().map_err(|_| cur.err(f["euler"], "bad euler"))?;
    let weight: Weight = f["weight"].parse().map_err(|_| cur.err(f["weight"], "bad weight"))?;
    let kind = match f["kind"] {
        "line" => Kind::Line,
        "quadric" => Kind::Quadric,
        "general" => Kind::General,
        k => return Err(cur.err(k, format!("unknown kind `{k}`"))),
    };
    let smooth_rational = matches!(kind, Kind::Line | Kind::Quadric);
    if (kind == Kind::Line && degree != 1) || (kind == Kind::Quadric && degree != 2) || (smooth_rational && euler_set != 2) {
        return Err(cur.err(f["kind"], format!("{} needs matching degree and euler=2", kind.name())));
    }
    Ok(CurveComponent { id: id.to_string(), degree, euler_set, weight, kind })
}

fn parse_point<'a, I: Iterator<Item = &'a str>>(
    cur: &Cursor<'a>,
    head: &'a str,
    words: I,
) -> Result<SingularPointRec, ConfigError> {
    let (id, f) = fields(cur, head, words, &["type", "on"])?;
    let local_type = parse_type(f["type"]).ok_or_else(|| cur.err(f["type"], format!("bad point type `{}`", f["type"])))?;
    let mut incidences = Vec::new();
    for item in f["on"].split(',') {
        let (c, n) = match item.split_once(':') {
            Some((c, n)) => (c, n.parse::<u32>().ok().filter(|&n| n >= 1).ok_or_else(|| cur.err(item, "bad branch count"))?),
            None => (item, 1),
        };
        if c.is_empty() {
            return Err(cur.err(f["on"], "empty component reference"));
        }
        incidences.push((c.to_string(), n));
    }
    let total: u32 = incidences.iter().map(|(_, n)| n).sum();
    if total as usize != local_type.branch_count() {
        let msg = format!("type {local_type} needs {} branches, got {total}", local_type.branch_count());
        return Err(cur.err(f["on"], msg));
    }
    Ok(SingularPointRec { id: id.to_string(), local_type, incidences })
}

fn parse_type(s: &str) -> Option<LocalType> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |i: usize| parts.get(i).and_then(|x| x.parse::<u32>().ok());
    let t = match (parts[0], parts.len()) {
        ("node", 1) => LocalType::NODE,
        ("triple", 1) => LocalType::TRIPLE,
        ("tacnode", 1) => LocalType::TACNODE,
        ("cusp", 1) => LocalType::CUSP,
        ("ordinary", 2) => LocalType::Ordinary(num(1)?),
        ("tacnode", 2) => LocalType::higher_tacnode(num(1)?),
        ("power", 2) => LocalType::Unibranch(num(1)?),
        ("cluster", 3) => LocalType::Cluster { contact: num(1)?, branches: num(2)?, line: false },
        ("cluster", 4) if parts[3] == "line" => LocalType::Cluster { contact: num(1)?, branches: num(2)?, line: true },
        _ => return None,
    };
    t.is_well_formed().then_some(t)
}

/// Renders a configuration in the document grammar; `parse_config` inverts it.
pub fn render_config(c: &OrbifoldConfig) -> String {
    let mut out = String::new();
    if !c.label.is_empty() {
        out.push_str(&format!("label {}\n", c.label));
    }
    for x in &c.components {
        out.push_str(&format!(
            "component {} degree={} euler={} weight={} kind={}\n",
            x.id,
            x.degree,
            x.euler_set,
            x.weight,
            x.kind.name()
        ));
    }
    for p in &c.points {
        let on: Vec<String> = p
            .incidences
            .iter()
            .map(|(id, n)| if *n == 1 { id.clone() } else { format!("{id}:{n}") })
            .collect();
        out.push_str(&format!("point {} type={} on={}\n", p.id, p.local_type, on.join(",")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{build_apollonius, build_cuspidal};
    use crate::numerics::Weight::{Fin, Inf};

    const A4: &str = "\
# quadric with three tangent lines
label A(4;4,4,4)
component Q degree=2 euler=2 weight=4 kind=quadric
component T1 degree=1 euler=2 weight=4 kind=line
component T2 degree=1 euler=2 weight=4 kind=line
component T3 degree=1 euler=2 weight=4 kind=line
point q1 type=tacnode on=Q,T1
point q2 type=tacnode on=Q,T2
point q3 type=tacnode on=Q,T3
point n1-2 type=node on=T1,T2
point n1-3 type=node on=T1,T3
point n2-3 type=node on=T2,T3
";

    #[test]
    fn parses_apollonius_document() {
        let c = parse_config(A4).unwrap();
        assert_eq!(c, build_apollonius(Fin(4), &[Fin(4); 3]));
    }

    #[test]
    fn round_trips() {
        for c in [
            build_apollonius(Inf, &[Fin(2), Inf]),
            build_cuspidal(8, 17, 0, Fin(2)).unwrap(),
            OrbifoldConfig::default(),
        ] {
            assert_eq!(parse_config(&render_config(&c)).unwrap(), c);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_config("component Q degree=2 euler=2 weight=4 kind=quadric\npoint p type=node on=Q,T9\n");
        assert_eq!(e, Err(ConfigError::UnknownComponent("T9".into())));
        let e = parse_config("component Q degree=x euler=2 weight=4 kind=quadric\n").unwrap_err();
        assert!(matches!(e, ConfigError::Syntax { line: 1, col: 20, .. }), "{e:?}");
        let e = parse_config("component A degree=1 euler=2 weight=2 kind=line\ncomponent A degree=1 euler=2 weight=2 kind=line\n");
        assert_eq!(e, Err(ConfigError::DuplicateId("A".into())));
        assert!(parse_config("point p type=power:4 on=C\n").is_err());
    }

    #[test]
    fn cluster_types() {
        for s in ["tacnode:3", "cluster:2:3", "cluster:3:2:line", "ordinary:5", "power:7"] {
            assert_eq!(parse_type(s).unwrap().to_string(), s);
        }
    }
}
