//! The nine reference checks, each reported independently.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use orbicover::configuration::{build_apollonius, build_cuspidal, build_preset, general_lines, iso_check, normalize, OrbifoldConfig};
use orbicover::coverings::{lift_config, theorem1_iterate, theorem1_start, theorem2_bookkeeping, theorem2_orbifold, KummerCover, LiftReport};
use orbicover::groups::{abelianize, build_a2, build_apollonius_pi1, build_modular, coordinate_triangle, todd_coxeter, AbelianInvariants};
use orbicover::invariants::{
    apollonius_cherns, c1sq_orbifold, chern_pair, classify, cuspidal_cherns, enumerate_cuspidal, euler_orbifold,
    search_parabolic, splitting_identities, ParabolicSolutions, Tuple,
};
use orbicover::numerics::Weight::{self, Fin, Inf};

use crate::golden::Golden;

pub type Outcome = Result<String, String>;

const MAX_COSETS: usize = 1_000_000;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every listed row of the cuspidal table is found by the search with
/// `d <= d_max`, and its closed form agrees with the configuration engine.
/// With `partial`, listed rows above `d_max` are skipped instead of failing.
pub fn cuspidal_table(golden: &Golden, d_max: u32, partial: bool) -> Outcome {
    let rows = enumerate_cuspidal(d_max, &[2, 3, 4, 5, 6]);
    let found: BTreeSet<[u64; 5]> = rows.iter().map(|r| [r.d as u64, r.kappa as u64, r.nu as u64, r.b, r.g as u64]).collect();
    let table = golden.cuspidal_table()?;
    let mut checked = 0;
    for &[row, d, kappa, nu, b, g] in &table {
        if d > d_max as u64 {
            ensure(partial, || format!("row {row} has degree {d} beyond the search bound {d_max}"))?;
            continue;
        }
        ensure(found.contains(&[d, kappa, nu, b, g]), || format!("row {row} missing"))?;
        let p = cuspidal_cherns(d as u32, kappa as u32, nu as u32, Fin(b)).map_err(|e| e.to_string())?;
        ensure(int(3) * p.euler() == *p.c1sq(), || format!("row {row}: 3e != c1^2"))?;
        let config = build_cuspidal(d as u32, kappa as u32, nu as u32, Fin(b)).map_err(|e| e.to_string())?;
        let engine = chern_pair(&config).map_err(|e| e.to_string())?;
        ensure(engine == p, || format!("row {row}: closed form {p} vs engine {engine}"))?;
        checked += 1;
    }
    Ok(format!("{checked}/{} listed rows found among {} solutions", table.len(), rows.len()))
}

/// The four clause solution sets equal the listed ones exactly.
pub fn parabolic_sets(golden: &Golden, s: &ParabolicSolutions) -> Outcome {
    let listed = golden.prop4_sets()?;
    let show = |v: &[Tuple]| -> BTreeSet<String> { v.iter().map(|t| t.to_string()).collect() };
    let mut problems = Vec::new();
    if !s.family_failures.is_empty() || s.family_checked == 0 {
        problems.push(format!("a=2 family: {} of {} fail", s.family_failures.len(), s.family_checked));
    }
    for (clause, got) in [("polydisk", &s.polydisk), ("flat", &s.flat), ("ball", &s.ball), ("zero-c1", &s.zero_c1)] {
        let want: BTreeSet<String> = listed.get(clause).ok_or_else(|| format!("no `{clause}` line in data"))?.iter().cloned().collect();
        let got = show(got);
        let extra: Vec<&String> = got.difference(&want).collect();
        let missing: Vec<&String> = want.difference(&got).collect();
        if !extra.is_empty() || !missing.is_empty() {
            problems.push(format!("{clause}: extra {extra:?}, missing {missing:?}"));
        }
    }
    if problems.is_empty() {
        Ok(format!("four clauses match; a=2 family holds on {} tuples", s.family_checked))
    } else {
        Err(problems.join("; "))
    }
}

/// Calls `f` on every non-decreasing vector over `values` of length `n`.
fn multisets(values: &[Weight], n: usize, start: usize, cur: &mut Vec<Weight>, f: &mut dyn FnMut(&[Weight]) -> Result<(), String>) -> Result<(), String> {
    if cur.len() == n {
        return f(cur);
    }
    for i in start..values.len() {
        cur.push(values[i]);
        multisets(values, n, i, cur, f)?;
        cur.pop();
    }
    Ok(())
}

fn closed_forms() -> Outcome {
    let values: Vec<Weight> = (2..=7).map(Fin).chain([Inf]).collect();
    let half = frac(1, 2);
    let mut done = 0;
    for &a in &values {
        for n in 0..=4 {
            multisets(&values, n, 0, &mut Vec::new(), &mut |bs| {
                if bs.iter().any(|b| a.reciprocal() + b.reciprocal() < half) {
                    return Ok(());
                }
                done += 1;
                let closed = apollonius_cherns(a, bs).map_err(|e| e.to_string())?;
                let config = build_apollonius(a, bs);
                let e = euler_orbifold(&config).map_err(|e| e.to_string())?;
                let c = c1sq_orbifold(&config);
                ensure(*closed.euler() == e && *closed.c1sq() == c, || format!("{}: closed {closed}, engine e={e} c1sq={c}", config.label))?;
                let (s1, s2) = splitting_identities(a, bs);
                ensure(s1 == int(2) * (int(2) * &e - &c) && s2 == int(8) * (int(3) * &e - &c), || {
                    format!("{}: splitting identities", config.label)
                })
            })?;
        }
    }
    Ok(format!("{done} admissible weight vectors agree"))
}

fn proposition7() -> Outcome {
    for a in 2..=6u64 {
        let deg = 4 * a * a * a;
        let order = todd_coxeter(&build_modular(Fin(a), Fin(2), Fin(2), Fin(2)), MAX_COSETS).map_err(|e| e.to_string())?.order();
        ensure(order as u64 == deg, || format!("a={a}: group order {order}, expected {deg}"))?;
        let c = build_apollonius(Fin(a), &[Fin(2); 3]);
        let (e, c1) = (euler_orbifold(&c).map_err(|e| e.to_string())?, c1sq_orbifold(&c));
        let (ai, d) = (a as i64, int(deg as i64));
        ensure(&d * &e == int(ai * (ai * ai - 4 * ai + 6)), || format!("a={a}: deg*e = {}", &d * &e))?;
        ensure(&d * &c1 == int(ai * (4 - ai) * (4 - ai)), || format!("a={a}: deg*c1sq = {}", &d * &c1))?;
        if a == 4 {
            ensure(&d * &e == int(24) && c1.is_zero(), || "a=4 is not a K3 signature".into())?;
        }
    }
    Ok("orders 4a^3 and cover invariants agree for a = 2..6".into())
}

fn check_lift(name: &str, base: &OrbifoldConfig, r: &LiftReport) -> Result<(), String> {
    ensure(r.multiplicative(), || format!("{name}: base {} lift {}", r.base, r.lift))?;
    let tb = classify(base).map_err(|e| e.to_string())?.tag;
    let tl = classify(&r.lifted).map_err(|e| e.to_string())?.tag;
    ensure(!tb.is_ratio_class() || tb == tl, || format!("{name}: class {tb} became {tl}"))
}

fn multiplicativity() -> Outcome {
    let tri = ["T1", "T2", "T3"];
    let mut n = 0;
    for b in [2u64, 4, 6, 8] {
        let base = build_apollonius(Fin(2), &[Fin(b); 3]);
        let r = lift_config(&base, &KummerCover::new(2, tri)).map_err(|e| format!("{}: {e}", base.label))?;
        check_lift(&base.label, &base, &r)?;
        n += 1;
    }
    let base = build_apollonius(Fin(4), &[Fin(4); 3]);
    let r = lift_config(&base, &KummerCover::new(2, tri)).map_err(|e| e.to_string())?;
    check_lift(&base.label, &base, &r)?;
    let c2 = build_preset("C2_family", &[Fin(4), Fin(4), Fin(4), Fin(4), Fin(2), Fin(2), Fin(2)]).map_err(|e| e.to_string())?;
    ensure(iso_check(&r.lifted, &c2), || "A(4;4,4,4) lift is not C2(4,4,4,4;2,2,2)".into())?;
    n += 1;
    for m in [3u32, 5, 7] {
        let base = build_apollonius(Fin(2), &[Fin(m as u64); 3]);
        let r = lift_config(&base, &KummerCover::new(m, tri)).map_err(|e| format!("m={m}: {e}"))?;
        check_lift(&base.label, &base, &r)?;
        let q = theorem2_orbifold(m).map_err(|e| e.to_string())?;
        ensure(iso_check(&r.lifted, &q), || format!("m={m}: lift is not the weight-2 curve Q_m"))?;
        n += 1;
    }
    let steps = theorem1_iterate(5).map_err(|e| format!("tower: {e}"))?;
    let mut base = theorem1_start().map_err(|e| e.to_string())?;
    let mut degrees = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        let r = i + 1;
        check_lift(&format!("tower step {r}"), &base, &s.report)?;
        ensure(s.locus_degree >= 1 << r, || format!("tower step {r}: locus degree {}", s.locus_degree))?;
        degrees.push(s.locus_degree);
        base = s.report.lifted.clone();
        n += 1;
    }
    Ok(format!("{n} lifts scale by k^2; tower locus degrees {degrees:?}"))
}

fn proposition6() -> Outcome {
    for b in 2..=4u64 {
        let base = build_apollonius(Fin(b), &[Fin(2); 4]);
        let r = lift_config(&base, &KummerCover::new(2, ["T1", "T2", "T3"])).map_err(|e| format!("b={b}: {e}"))?;
        ensure(iso_check(&r.lifted, &build_apollonius(Fin(2), &[Fin(b); 4])), || format!("b={b}: not isomorphic"))?;
    }
    Ok("lifts isomorphic to A(2;b,b,b,b) for b = 2, 3, 4".into())
}

fn theorem2() -> Outcome {
    for m in [1u32, 3, 5, 7, 9] {
        let e = euler_orbifold(&theorem2_orbifold(m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let mi = m as i64;
        let lhs = int(2 * mi * mi) * &e;
        ensure(lhs == int((2 - (mi - 1) * (mi - 2)).pow(2)), || format!("m={m}: 2m^2 e = {lhs}"))?;
        let rec = theorem2_bookkeeping(m).map_err(|e| e.to_string())?;
        ensure(rec.consistent() && rec.deg_psi_zeta == 2 * (m as u64).pow(4), || format!("m={m}: {rec:?}"))?;
    }
    Ok("identity holds for m = 1, 3, 5, 7, 9".into())
}

fn group_orders(golden: &Golden) -> Outcome {
    let rows = golden.group_orders()?;
    for row in &rows {
        let w = &row.params;
        let p = match (row.builder.as_str(), w.len()) {
            ("a2", 2) => build_a2(w[0], w[1]),
            ("modular", 4) => build_modular(w[0], w[1], w[2], w[3]),
            (other, n) => return Err(format!("{}: builder `{other}` with {n} parameters", row.case)),
        };
        let t = todd_coxeter(&p, MAX_COSETS).map_err(|e| format!("{}: {e}", row.case))?;
        ensure(t.order() == row.order, || format!("{}: order {} expected {}", row.case, t.order(), row.order))?;
    }
    for m in 2..=12u64 {
        let got = abelianize(&coordinate_triangle(m));
        ensure(got == AbelianInvariants { rank: 0, torsion: vec![m, m] }, || format!("triangle m={m}: {got}"))?;
    }
    for n in 1..=8 {
        let got = abelianize(&build_apollonius_pi1(n));
        ensure(got.rank == n && got.torsion.is_empty(), || format!("n={n}: {got}"))?;
    }
    Ok(format!("{} orders, 11 triangle quotients, 8 free ranks", rows.len()))
}

/// Checks the stated orbifold Euler numbers and cover degrees of the three
/// six-line K3 orbifolds.
fn k3(golden: &Golden) -> Outcome {
    let stated = [("E1", frac(1, 3), 72i64), ("E2", frac(1, 2), 48), ("E3", frac(1, 4), 96)];
    let rows = golden.k3_rows()?;
    let mut problems = Vec::new();
    let mut seen = Vec::new();
    for (name, e_stated, deg_stated) in stated {
        let row = rows.iter().find(|r| r.name == name).ok_or_else(|| format!("{name} not in data"))?;
        let p = chern_pair(&normalize(&general_lines(&row.weights))).map_err(|e| e.to_string())?;
        seen.push(format!("{name}: e={} c1sq={}", p.euler(), p.c1sq()));
        if !p.c1sq().is_zero() {
            problems.push(format!("{name}: c1sq = {}", p.c1sq()));
        }
        if *p.euler() != e_stated || &e_stated * int(deg_stated) != int(24) {
            problems.push(format!("{name}: e = {} (cover degree {}), stated {e_stated} with degree {deg_stated}", p.euler(), row.degree));
        }
    }
    if problems.is_empty() {
        Ok(seen.join(", "))
    } else {
        Err(problems.join("; "))
    }
}

pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub outcome: Outcome,
}

pub fn run_all(golden: &Golden) -> Vec<CriterionResult> {
    let checks: [(&'static str, Box<dyn Fn() -> Outcome + '_>); 9] = [
        ("cuspidal table reproduction", Box::new(|| cuspidal_table(golden, 17, false))),
        ("parabolic solution sets", Box::new(|| parabolic_sets(golden, &search_parabolic(12)))),
        ("closed forms vs engine", Box::new(closed_forms)),
        ("order 4a^3 covers of A(a;2,2,2)", Box::new(proposition7)),
        ("covering multiplicativity", Box::new(multiplicativity)),
        ("A(b;2,2,2,2) lifts to A(2;b,b,b,b)", Box::new(proposition6)),
        ("Q_m x Q_m identity", Box::new(theorem2)),
        ("group orders and abelianizations", Box::new(|| group_orders(golden))),
        ("K3 invariants", Box::new(|| k3(golden))),
    ];
    checks
        .into_iter()
        .enumerate()
        .map(|(i, (name, f))| CriterionResult { id: i + 1, name, outcome: f() })
        .collect()
}
