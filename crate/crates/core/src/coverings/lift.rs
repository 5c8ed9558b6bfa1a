//! Lifting configurations through a Kummer covering.
//!
//! Local rules at a point `p` with branch lines `T_p` (at most two):
//!
//! * off the triangle, `p` has `k^2` preimages with the same local picture;
//! * on one line `L`, a smooth branch with contact `m` to `L` stays smooth
//!   upstairs when `k | m` (contact `m/k` with `L'`) or `m | k` (contact 1);
//!   `m = 2` with `k` odd gives the unibranch germ `x^2 = y^k`, admitted only
//!   when `L'` has weight 1 upstairs;
//! * at a vertex, a branch with contacts `(alpha, delta)` to the two lines
//!   needs `min(alpha, delta) = 1` and lifts to `k` smooth branches.
//!
//! The preimages of `p` are the cosets of its stabilizer `S_p`. At a preimage
//! `g + S_p`, a branch with loop class `h` splits into the cosets of `<h>`
//! inside `g + S_p`; the branch labelled `l` lies on the lifted component
//! `l + H_C`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::group::{Elem, KummerGroup, Subgroup};
use super::{CoverError, IncidenceProfile, KummerCover, LiftReport, ProfilePoint};
use crate::configuration::{normalize, normalize_germs, CurveComponent, Germ, Kind, OrbifoldConfig};
use crate::invariants::chern_pair;
use crate::numerics::Weight;

struct Setup {
    group: KummerGroup,
    meridian: HashMap<String, Elem>,
}

impl Setup {
    fn new(config: &OrbifoldConfig, cover: &KummerCover) -> Result<Setup, CoverError> {
        let k = cover.k;
        if k < 2 {
            return Err(CoverError::InvalidCover(format!("exponent {k} < 2")));
        }
        let names: BTreeSet<&String> = cover.branch.iter().collect();
        if names.len() != 3 {
            return Err(CoverError::InvalidCover("branch lines must be distinct".into()));
        }
        for l in &cover.branch {
            let c = config
                .component(l)
                .ok_or_else(|| CoverError::InvalidCover(format!("no component `{l}`")))?;
            if c.kind != Kind::Line || c.degree != 1 {
                return Err(CoverError::InvalidCover(format!("`{l}` is not a line")));
            }
            if let Weight::Fin(w) = c.weight {
                if w % k as u64 != 0 {
                    return Err(CoverError::InvalidCover(format!("weight {w} of `{l}` is not divisible by {k}")));
                }
            }
        }
        let [a, b, c] = &cover.branch;
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let meet = config.points.iter().filter(|p| p.touches(x) && p.touches(y)).count();
            if meet != 1 {
                return Err(CoverError::InvalidCover(format!("`{x}` and `{y}` meet in {meet} recorded points")));
            }
        }
        if config.points.iter().any(|p| cover.branch.iter().all(|l| p.touches(l))) {
            return Err(CoverError::InvalidCover("branch lines are concurrent".into()));
        }
        let group = KummerGroup { k };
        let m = group.meridians();
        let meridian = cover.branch.iter().cloned().zip(m).collect();
        Ok(Setup { group, meridian })
    }
}

/// One base point seen from the covering.
struct PointInfo {
    /// Branch indices lying on branch lines.
    on_lines: Vec<usize>,
    /// Loop class of every other branch.
    loops: BTreeMap<usize, Elem>,
    stabilizer: Subgroup,
}

fn unsupported(point: &str, reason: impl Into<String>) -> CoverError {
    CoverError::UnsupportedLocalType { point: point.to_string(), reason: reason.into() }
}

fn analyse(setup: &Setup, g: &Germ) -> Result<PointInfo, CoverError> {
    let on_lines: Vec<usize> = (0..g.branches.len()).filter(|&i| setup.meridian.contains_key(&g.branches[i])).collect();
    let distinct: BTreeSet<&String> = on_lines.iter().map(|&i| &g.branches[i]).collect();
    if distinct.len() != on_lines.len() {
        return Err(unsupported(&g.id, "branch line with several branches"));
    }
    if on_lines.len() == 3 {
        return Err(unsupported(&g.id, "point on all three branch lines"));
    }
    if !on_lines.is_empty() && g.unibranch.is_some() {
        return Err(unsupported(&g.id, "unibranch singularity on a branch line"));
    }
    let mut loops = BTreeMap::new();
    for i in 0..g.branches.len() {
        if on_lines.contains(&i) {
            continue;
        }
        let mut h = (0, 0);
        for &t in &on_lines {
            h = setup.group.add(h, setup.group.scale(g.contact[i][t], setup.meridian[&g.branches[t]]));
        }
        if on_lines.len() == 2 && g.contact[i][on_lines[0]].min(g.contact[i][on_lines[1]]) != 1 {
            return Err(unsupported(&g.id, "branch tangent to both lines at a vertex"));
        }
        loops.insert(i, h);
    }
    let gens: Vec<Elem> = on_lines.iter().map(|&t| setup.meridian[&g.branches[t]]).collect();
    Ok(PointInfo { on_lines, loops, stabilizer: setup.group.span(&gens) })
}

/// Incidence profiles of every non-branch component.
pub fn incidence_profiles(config: &OrbifoldConfig, cover: &KummerCover) -> Vec<IncidenceProfile> {
    let germs: Vec<Germ> = config.points.iter().map(Germ::from_rec).collect();
    config
        .components
        .iter()
        .filter(|c| !cover.branch.contains(&c.id))
        .map(|c| profile_of(&c.id, &germs, cover))
        .collect()
}

fn profile_of(comp: &str, germs: &[Germ], cover: &KummerCover) -> IncidenceProfile {
    let mut points = Vec::new();
    for g in germs {
        let lines: Vec<usize> = (0..g.branches.len()).filter(|&i| cover.branch.contains(&g.branches[i])).collect();
        let mine: Vec<usize> = (0..g.branches.len()).filter(|&i| g.branches[i] == comp).collect();
        if lines.is_empty() || mine.is_empty() {
            continue;
        }
        points.push(ProfilePoint {
            point: g.id.clone(),
            lines: lines.iter().map(|&t| g.branches[t].clone()).collect(),
            mult: mine.iter().map(|&i| lines.iter().map(|&t| g.contact[i][t]).collect()).collect(),
        });
    }
    IncidenceProfile { component: comp.to_string(), points }
}

fn profile_loops(group: KummerGroup, meridian: &HashMap<String, Elem>, p: &ProfilePoint) -> Vec<Elem> {
    p.mult
        .iter()
        .map(|row| {
            row.iter()
                .zip(&p.lines)
                .fold((0, 0), |h, (&m, l)| group.add(h, group.scale(m, meridian[l])))
        })
        .collect()
}

fn meridian_map(cover: &KummerCover) -> (KummerGroup, HashMap<String, Elem>) {
    let group = KummerGroup { k: cover.k };
    (group, cover.branch.iter().cloned().zip(group.meridians()).collect())
}

/// The subgroup of `(Z/k)^2` spanned by the loop classes of a component;
/// its index is the number of lifted components.
pub fn monodromy_subgroup(profile: &IncidenceProfile, cover: &KummerCover) -> Subgroup {
    let (group, meridian) = meridian_map(cover);
    let gens: Vec<Elem> = profile.points.iter().flat_map(|p| profile_loops(group, &meridian, p)).collect();
    group.span(&gens)
}

/// Splits a non-branch component into its lifted components.
///
/// Euler characteristics are transported at the level of point sets: the full
/// preimage has `k^2 (e(C) - t) + sum_p |G/S_p|` for the `t` triangle points
/// of `C`. Splitting it into the `[G:H]` conjugate components adds back one
/// for every extra component through a common point; the total is shared
/// equally.
pub fn split_component(
    c: &CurveComponent,
    profile: &IncidenceProfile,
    cover: &KummerCover,
) -> Result<Vec<CurveComponent>, CoverError> {
    let (group, meridian) = meridian_map(cover);
    let k = cover.k as i64;
    let h = monodromy_subgroup(profile, cover);
    let cosets = h.cosets();
    let index = cosets.len() as i64;
    let bad = |reason: String| CoverError::NonIntegralSplit { component: c.id.clone(), reason };
    if (k * c.degree as i64) % index != 0 {
        return Err(bad(format!("degree {} over {index} components", k * c.degree as i64)));
    }
    let mut euler = k * k * (c.euler_set - profile.points.len() as i64);
    for p in &profile.points {
        let gens: Vec<Elem> = p.lines.iter().map(|l| meridian[l]).collect();
        let stab = group.span(&gens);
        euler += (k * k) / stab.order() as i64;
        // Lifted components through each preimage of p.
        let loops = profile_loops(group, &meridian, p);
        for q in stab.cosets() {
            let mut comps = BTreeSet::new();
            for &lp in &loops {
                let sh = group.span(&[lp]);
                for s in &stab.elements {
                    comps.insert(h.coset_rep(sh.coset_rep(group.add(q, *s))));
                }
            }
            euler += comps.len() as i64 - 1;
        }
    }
    if euler % index != 0 {
        return Err(bad(format!("Euler characteristic {euler} over {index} components")));
    }
    let degree = (k * c.degree as i64 / index) as u32;
    Ok(cosets
        .iter()
        .enumerate()
        .map(|(j, _)| CurveComponent {
            id: if index == 1 { c.id.clone() } else { format!("{}.{j}", c.id) },
            degree,
            euler_set: euler / index,
            weight: c.weight,
            kind: Kind::from_degree(degree),
        })
        .collect())
}

/// The lift before weight-1 components are stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawLift {
    pub components: Vec<CurveComponent>,
    pub germs: Vec<Germ>,
    pub component_map: BTreeMap<String, Vec<String>>,
}

impl RawLift {
    /// Strips weight-1 components and types the surviving points.
    pub fn normalized(&self, label: &str) -> Result<OrbifoldConfig, CoverError> {
        let shell = OrbifoldConfig { components: self.components.clone(), points: Vec::new(), label: label.to_string() };
        let points = normalize_germs(&shell, &self.germs)?;
        let components = self.components.iter().filter(|c| c.weight != Weight::Fin(1)).cloned().collect();
        Ok(OrbifoldConfig { components, points, label: label.to_string() })
    }
}

#[derive(Clone, Copy)]
enum Meta {
    Line(usize),
    Branch(usize, Elem),
}

fn ratio(num: u32, den: u32, point: &str) -> Result<u32, CoverError> {
    if num.is_multiple_of(den) {
        Ok(num / den)
    } else {
        Err(unsupported(point, format!("fractional contact {num}/{den}")))
    }
}

/// Contact of two lifted branches at a preimage of `g`.
fn lifted_contact(g: &Germ, info: &PointInfo, a: Meta, b: Meta, k: u32) -> Result<u32, CoverError> {
    let c = &g.contact;
    let t = &info.on_lines;
    match (a, b) {
        (Meta::Line(_), Meta::Line(_)) => Ok(1),
        (Meta::Branch(i, _), Meta::Line(l)) | (Meta::Line(l), Meta::Branch(i, _)) => {
            if t.len() == 1 {
                let m = c[i][l];
                Ok(if m.is_multiple_of(k) { m / k } else { 1 })
            } else {
                Ok(c[i][l])
            }
        }
        (Meta::Branch(i, li), Meta::Branch(j, lj)) => match t.len() {
            0 => Ok(c[i][j]),
            1 => {
                let l = t[0];
                let (mi, mj) = (c[i][l], c[j][l]);
                let (vi, vj) = (mi % k == 0, mj % k == 0);
                if vi != vj {
                    return Ok(1);
                }
                if i == j {
                    return if vi { ratio(mi, k, &g.id) } else { ratio(k, mi, &g.id) };
                }
                if mi != mj {
                    return if vi { ratio(mi.min(mj), k, &g.id) } else { ratio(k, mi.max(mj), &g.id) };
                }
                let (m, cij) = (mi, c[i][j]);
                if cij == m || li != lj {
                    if vi {
                        ratio(m, k, &g.id)
                    } else {
                        ratio(k, m, &g.id)
                    }
                } else if vi {
                    Ok(cij - m + ratio(m, k, &g.id)?)
                } else {
                    ratio(k * (cij - m + 1), m, &g.id)
                }
            }
            _ => {
                let (x, y) = (t[0], t[1]);
                let (ti, tj) = ((c[i][x], c[i][y]), (c[j][x], c[j][y]));
                let top = ti.0.max(ti.1);
                if i == j {
                    return Ok(top);
                }
                if ti != tj {
                    return Ok(c[i][j]);
                }
                let cij = c[i][j];
                if cij == top || li != lj {
                    Ok(top)
                } else {
                    Ok(k * (cij - top) + top)
                }
            }
        },
    }
}

fn smooth_on_line(m: u32, k: u32) -> bool {
    m.is_multiple_of(k) || k.is_multiple_of(m)
}

/// One lifted branch over a preimage, before sheet names are assigned.
#[derive(Clone)]
enum Slot {
    Line(String),
    Branch { base: usize, label: Elem },
}

/// The local picture over one preimage; independent of sheet offsets.
struct LocalLift {
    id: String,
    slots: Vec<Slot>,
    contact: Vec<Vec<u32>>,
    unibranch: Option<u32>,
}

fn local_lifts(g: &Germ, info: &PointInfo, group: KummerGroup) -> Result<Vec<LocalLift>, CoverError> {
    let k = group.k;
    let preimages = info.stabilizer.cosets();
    let mut out = Vec::with_capacity(preimages.len());
    for (qi, &q) in preimages.iter().enumerate() {
        let mut slots = Vec::new();
        let mut meta = Vec::new();
        for &t in &info.on_lines {
            slots.push(Slot::Line(g.branches[t].clone()));
            meta.push(Meta::Line(t));
        }
        for (&i, &h) in &info.loops {
            let sh = group.span(&[h]);
            let labels: BTreeSet<Elem> = info.stabilizer.elements.iter().map(|&s| sh.coset_rep(group.add(q, s))).collect();
            for label in labels {
                slots.push(Slot::Branch { base: i, label });
                meta.push(Meta::Branch(i, label));
            }
        }
        let n = slots.len();
        let mut contact = vec![vec![0u32; n]; n];
        for x in 0..n {
            for y in x + 1..n {
                let v = lifted_contact(g, info, meta[x], meta[y], k)?;
                contact[x][y] = v;
                contact[y][x] = v;
            }
        }
        let mut unibranch = g.unibranch;
        if info.on_lines.len() == 1 {
            let l = info.on_lines[0];
            let singular = (0..n).find(|&x| matches!(meta[x], Meta::Branch(i, _) if !smooth_on_line(g.contact[i][l], k)));
            if let Some(s) = singular {
                let Meta::Branch(i, _) = meta[s] else { unreachable!() };
                let m = g.contact[i][l];
                if n != 2 || m != 2 || k.is_multiple_of(2) {
                    return Err(unsupported(&g.id, format!("branch with contact {m} to a branch line, k = {k}")));
                }
                unibranch = Some(k);
                slots = vec![slots[s].clone(), slots[0].clone()];
                contact = vec![vec![0, 2], vec![2, 0]];
            }
        }
        let id = if preimages.len() == 1 { g.id.clone() } else { format!("{}.{qi}", g.id) };
        out.push(LocalLift { id, slots, contact, unibranch });
    }
    Ok(out)
}

/// Sheet bookkeeping for one non-branch component.
struct Sheets {
    subgroup: Subgroup,
    cosets: Vec<Elem>,
}

impl Sheets {
    fn name(&self, comp: &str, label: Elem) -> String {
        if self.cosets.len() == 1 {
            comp.to_string()
        } else {
            let rep = self.subgroup.coset_rep(label);
            format!("{comp}.{}", self.cosets.iter().position(|&x| x == rep).expect("coset listed"))
        }
    }
}

/// Names every slot of a point's local lifts under the given branch offsets.
fn named(
    g: &Germ,
    lifts: &[LocalLift],
    offsets: &BTreeMap<usize, Elem>,
    sheets: &HashMap<String, Sheets>,
    group: KummerGroup,
) -> Vec<Vec<String>> {
    lifts
        .iter()
        .map(|l| {
            l.slots
                .iter()
                .map(|s| match s {
                    Slot::Line(id) => id.clone(),
                    Slot::Branch { base, label } => {
                        let comp = &g.branches[*base];
                        let off = offsets.get(base).copied().unwrap_or((0, 0));
                        sheets[comp].name(comp, group.add(*label, off))
                    }
                })
                .collect()
        })
        .collect()
}

type Tally = HashMap<(String, String), u64>;

fn pair(a: &str, b: &str) -> (String, String) {
    if a < b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Adds the intersection contributions of a named point.
fn tally_into(t: &mut Tally, lifts: &[LocalLift], names: &[Vec<String>]) {
    for (l, ns) in lifts.iter().zip(names) {
        for x in 0..ns.len() {
            for y in x + 1..ns.len() {
                if ns[x] != ns[y] {
                    *t.entry(pair(&ns[x], &ns[y])).or_insert(0) += l.contact[x][y] as u64;
                }
            }
        }
    }
}

/// A point whose extra branches may sit on any sheet offset.
struct Free {
    point: usize,
    branches: Vec<usize>,
    choices: Vec<Vec<Elem>>,
}

const SEARCH_LIMIT: usize = 1_000_000;

/// Lifts without normalizing; lifted branch lines may have weight 1.
///
/// Which lifted sheet a branch lands on is the class of a path along its
/// component, which the combinatorial data does not record. At every point
/// with several branches on split components, the offsets of all but the
/// first branch are chosen, in lexicographic order, as the first assignment
/// for which every pair of lifted components satisfies Bezout. Chern numbers
/// do not depend on this choice.
///
/// On a component of positive genus the loops along the curve itself also
/// carry monodromy, so the local subgroup is only a lower bound. When Bezout
/// rules out a lift, the positive-genus components involved are coarsened
/// to the next overgroup of their local subgroup, in order of increasing
/// size, and the lift is retried.
pub fn lift_raw(config: &OrbifoldConfig, cover: &KummerCover) -> Result<RawLift, CoverError> {
    config.check_structure()?;
    let setup = Setup::new(config, cover)?;
    let genus = normalization_genus(config);
    let germs = germs_of(config);
    // Candidate subgroups per coarsened component, and the one in use.
    let mut overrides: BTreeMap<String, (Vec<Subgroup>, usize)> = BTreeMap::new();
    loop {
        let chosen: BTreeMap<String, Subgroup> = overrides.iter().map(|(c, (subs, i))| (c.clone(), subs[*i].clone())).collect();
        let (error, blame) = match attempt(config, cover, &setup, &chosen) {
            Ok(raw) => return Ok(raw),
            Err(Failure { error, blame: None }) => return Err(error),
            Err(Failure { error, blame: Some(blame) }) => (error, blame),
        };
        let coarsened = blame.iter().filter(|c| genus.get(*c).is_some_and(|&g| g > 0)).find(|c| {
            let (subs, i) = overrides.entry(c.to_string()).or_insert_with(|| {
                (overgroups(&monodromy_subgroup(&profile_of(c, &germs, cover), cover)), 0)
            });
            if *i + 1 < subs.len() {
                *i += 1;
                true
            } else {
                false
            }
        });
        if coarsened.is_none() {
            return Err(error);
        }
    }
}

fn germs_of(config: &OrbifoldConfig) -> Vec<Germ> {
    config.points.iter().map(Germ::from_rec).collect()
}

/// Genus of the normalization of every component, from its set-level Euler
/// number and the branches through its singular points.
fn normalization_genus(config: &OrbifoldConfig) -> HashMap<String, i64> {
    config
        .components
        .iter()
        .map(|c| {
            let mut chi = c.euler_set;
            for p in &config.points {
                let n: i64 = p.incidences.iter().filter(|(id, _)| *id == c.id).map(|&(_, m)| m as i64).sum();
                if n > 0 {
                    chi += n - 1;
                }
            }
            (c.id.clone(), (2 - chi) / 2)
        })
        .collect()
}

/// Subgroups containing `h`, smallest first, ties in order of elements;
/// `h` itself comes first.
fn overgroups(h: &Subgroup) -> Vec<Subgroup> {
    let group = h.group;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in group.elements() {
        for b in group.elements() {
            let mut gens = h.gens.clone();
            gens.extend([a, b]);
            let s = group.span(&gens);
            if seen.insert(s.elements.clone()) {
                out.push(s);
            }
        }
    }
    out.sort_by(|x, y| (x.order(), &x.elements).cmp(&(y.order(), &y.elements)));
    out
}

/// A failed attempt; `blame` lists the base components whose Bezout
/// constraints could not be met, when that is the reason.
struct Failure {
    error: CoverError,
    blame: Option<Vec<String>>,
}

impl From<CoverError> for Failure {
    fn from(error: CoverError) -> Self {
        Failure { error, blame: None }
    }
}

fn attempt(
    config: &OrbifoldConfig,
    cover: &KummerCover,
    setup: &Setup,
    overrides: &BTreeMap<String, Subgroup>,
) -> Result<RawLift, Failure> {
    let k = cover.k;
    let group = setup.group;
    let germs: Vec<Germ> = config.points.iter().map(Germ::from_rec).collect();
    let infos: Vec<PointInfo> = germs.iter().map(|g| analyse(setup, g)).collect::<Result<_, _>>()?;

    let mut components = Vec::new();
    let mut component_map = BTreeMap::new();
    let mut sheets: HashMap<String, Sheets> = HashMap::new();
    for c in &config.components {
        if cover.branch.contains(&c.id) {
            let weight = match c.weight {
                Weight::Fin(w) => Weight::Fin(w / k as u64),
                Weight::Inf => Weight::Inf,
            };
            components.push(CurveComponent::line(&c.id, weight));
            component_map.insert(c.id.clone(), vec![c.id.clone()]);
            continue;
        }
        let profile = profile_of(&c.id, &germs, cover);
        for l in &cover.branch {
            let total = profile.total_on(l);
            if total != c.degree {
                return Err(CoverError::ProfileInconsistent(format!(
                    "`{}` meets `{l}` with total multiplicity {total}, degree is {}",
                    c.id, c.degree
                ))
                .into());
            }
        }
        let subgroup = overrides.get(&c.id).cloned().unwrap_or_else(|| monodromy_subgroup(&profile, cover));
        let cosets = subgroup.cosets();
        let index = cosets.len() as u32;
        if !(k * c.degree).is_multiple_of(index) {
            let error = CoverError::NonIntegralSplit {
                component: c.id.clone(),
                reason: format!("degree {} over {index} components", k * c.degree),
            };
            return Err(Failure { error, blame: Some(vec![c.id.clone()]) });
        }
        let degree = k * c.degree / index;
        let sh = Sheets { subgroup, cosets };
        let ids: Vec<String> = sh.cosets.iter().map(|&g| sh.name(&c.id, g)).collect();
        for id in &ids {
            // Euler numbers are filled in once the sheets are fixed.
            components.push(CurveComponent { id: id.clone(), degree, euler_set: 0, weight: c.weight, kind: Kind::from_degree(degree) });
        }
        component_map.insert(c.id.clone(), ids);
        sheets.insert(c.id.clone(), sh);
    }

    let lifts: Vec<Vec<LocalLift>> =
        germs.iter().zip(&infos).map(|(g, info)| local_lifts(g, info, group)).collect::<Result<_, _>>()?;

    // Unknown offsets.
    let mut free = Vec::new();
    for (pi, (g, info)) in germs.iter().zip(&infos).enumerate() {
        let split: Vec<usize> =
            info.loops.keys().copied().filter(|&i| sheets[&g.branches[i]].cosets.len() > 1).collect();
        if split.len() < 2 {
            continue;
        }
        let choices: Vec<Vec<Elem>> = split[1..]
            .iter()
            .map(|&i| {
                let mut gens = sheets[&g.branches[i]].subgroup.gens.clone();
                gens.extend(info.stabilizer.elements.iter().copied());
                group.span(&gens).cosets()
            })
            .collect();
        if choices.iter().any(|c| c.len() > 1) {
            free.push(Free { point: pi, branches: split[1..].to_vec(), choices });
        }
    }

    let mut search = SheetSearch {
        germs: &germs,
        lifts: &lifts,
        sheets: &sheets,
        group,
        component_map: &component_map,
        degree: components.iter().map(|c| (c.id.clone(), c.degree as u64)).collect(),
        tally: HashMap::new(),
    };
    let offsets = search.run(&infos, free)?;

    let mut out = Vec::new();
    for (pi, g) in germs.iter().enumerate() {
        let names = named(g, &lifts[pi], &offsets[pi], &sheets, group);
        for (l, branches) in lifts[pi].iter().zip(names) {
            out.push(Germ { id: l.id.clone(), branches, contact: l.contact.clone(), unibranch: l.unibranch });
        }
    }
    if let Err((error, a, b)) = bezout_mismatch(&components, &out) {
        return Err(Failure { error, blame: Some(vec![base_of(&component_map, &a), base_of(&component_map, &b)]) });
    }

    // Set-level Euler transport, then inclusion-exclusion over the sheets.
    let kk = (k * k) as i64;
    for c in &config.components {
        if cover.branch.contains(&c.id) {
            continue;
        }
        let ids = &component_map[&c.id];
        let mut euler = kk * c.euler_set;
        for (g, info) in germs.iter().zip(&infos) {
            if !info.on_lines.is_empty() && g.branches.contains(&c.id) {
                euler += kk / info.stabilizer.order() as i64 - kk;
            }
        }
        for x in &out {
            let through: BTreeSet<&String> = x.branches.iter().filter(|b| ids.contains(b)).collect();
            if !through.is_empty() {
                euler += through.len() as i64 - 1;
            }
        }
        let index = ids.len() as i64;
        if euler % index != 0 {
            let error = CoverError::NonIntegralSplit {
                component: c.id.clone(),
                reason: format!("Euler characteristic {euler} over {index} components"),
            };
            return Err(Failure { error, blame: Some(vec![c.id.clone()]) });
        }
        for comp in components.iter_mut().filter(|x| ids.contains(&x.id)) {
            comp.euler_set = euler / index;
        }
    }
    Ok(RawLift { components, germs: out, component_map })
}

/// Depth-first search for sheet offsets satisfying Bezout.
///
/// Free points interact only through the base component pairs they carry;
/// each connected group is searched on its own.
struct SheetSearch<'a> {
    germs: &'a [Germ],
    lifts: &'a [Vec<LocalLift>],
    sheets: &'a HashMap<String, Sheets>,
    group: KummerGroup,
    component_map: &'a BTreeMap<String, Vec<String>>,
    degree: HashMap<String, u64>,
    tally: Tally,
}

impl SheetSearch<'_> {
    fn names(&self, pi: usize, offsets: &BTreeMap<usize, Elem>) -> Vec<Vec<String>> {
        named(&self.germs[pi], &self.lifts[pi], offsets, self.sheets, self.group)
    }

    fn budget(&self, key: &(String, String)) -> u64 {
        self.degree[&key.0] * self.degree[&key.1]
    }

    fn base_pairs(&self, pi: usize, info: &PointInfo) -> BTreeSet<(String, String)> {
        let comps: Vec<&String> = info.loops.keys().map(|&i| &self.germs[pi].branches[i]).collect();
        let mut out = BTreeSet::new();
        for x in 0..comps.len() {
            for y in x + 1..comps.len() {
                out.insert(pair(comps[x], comps[y]));
            }
        }
        out
    }

    fn run(&mut self, infos: &[PointInfo], free: Vec<Free>) -> Result<Vec<BTreeMap<usize, Elem>>, Failure> {
        let n = self.germs.len();
        let zero = BTreeMap::new();
        let is_free: BTreeSet<usize> = free.iter().map(|f| f.point).collect();
        for pi in (0..n).filter(|pi| !is_free.contains(pi)) {
            let names = self.names(pi, &zero);
            tally_into(&mut self.tally, &self.lifts[pi], &names);
        }
        if let Some(key) = self.tally.keys().find(|key| self.tally[*key] > self.budget(key)) {
            let error = CoverError::ProfileInconsistent(format!("`{}` and `{}` meet too often upstairs", key.0, key.1));
            let blame = vec![base_of(self.component_map, &key.0), base_of(self.component_map, &key.1)];
            return Err(Failure { error, blame: Some(blame) });
        }
        // Group free points sharing a base pair.
        let pairs: Vec<BTreeSet<(String, String)>> = free.iter().map(|f| self.base_pairs(f.point, &infos[f.point])).collect();
        let mut parent: Vec<usize> = (0..free.len()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut owner: HashMap<&(String, String), usize> = HashMap::new();
        for (i, ps) in pairs.iter().enumerate() {
            for bp in ps {
                if let Some(&j) = owner.get(bp) {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                } else {
                    owner.insert(bp, i);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..free.len() {
            let r = root(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut offsets = vec![BTreeMap::new(); n];
        for members in groups.values() {
            let group: Vec<&Free> = members.iter().map(|&i| &free[i]).collect();
            let bps: BTreeSet<&(String, String)> = members.iter().flat_map(|&i| pairs[i].iter()).collect();
            let chosen = self.solve(&group, &bps)?;
            for (f, o) in group.iter().zip(chosen) {
                offsets[f.point] = o;
            }
        }
        Ok(offsets)
    }

    /// Searches one group. Every lifted pair over the group's base pairs gets
    /// an index; a partial assignment is pruned as soon as some pair exceeds
    /// its budget or can no longer reach it.
    fn solve(&mut self, group: &[&Free], bps: &BTreeSet<&(String, String)>) -> Result<Vec<BTreeMap<usize, Elem>>, Failure> {
        let mut index: HashMap<(String, String), usize> = HashMap::new();
        let mut budget = Vec::new();
        let mut tally = Vec::new();
        for bp in bps {
            let (a, b) = (&self.component_map[&bp.0], &self.component_map[&bp.1]);
            for (i, x) in a.iter().enumerate() {
                let ys = if bp.0 == bp.1 { &b[i + 1..] } else { &b[..] };
                for y in ys {
                    let key = pair(x, y);
                    index.insert(key.clone(), budget.len());
                    budget.push(self.budget(&key));
                    tally.push(self.tally.get(&key).copied().unwrap_or(0));
                }
            }
        }
        // Contributions of every choice of every point, as (pair, amount).
        let mut options: Vec<Vec<(BTreeMap<usize, Elem>, Vec<(usize, u64)>)>> = Vec::new();
        for f in group {
            let total: usize = f.choices.iter().map(|c| c.len()).product();
            let mut opts = Vec::with_capacity(total);
            for mut code in 0..total {
                let mut offsets = BTreeMap::new();
                for (b, c) in f.branches.iter().zip(&f.choices) {
                    offsets.insert(*b, c[code % c.len()]);
                    code /= c.len();
                }
                let mut t = Tally::new();
                tally_into(&mut t, &self.lifts[f.point], &self.names(f.point, &offsets));
                let mut contrib: Vec<(usize, u64)> = t.into_iter().filter_map(|(k, v)| index.get(&k).map(|&i| (i, v))).collect();
                contrib.sort_unstable();
                opts.push((offsets, contrib));
            }
            options.push(opts);
        }
        let touches: Vec<BTreeSet<usize>> =
            options.iter().map(|o| o.iter().flat_map(|(_, c)| c.iter().map(|&(i, _)| i)).collect()).collect();
        let order = closing_order(&touches, budget.len());
        let mut slack = vec![0u64; budget.len()];
        for (p, opts) in options.iter().enumerate() {
            for &i in &touches[p] {
                slack[i] += opts.iter().map(|(_, c)| amount(c, i)).max().unwrap_or(0);
            }
        }
        // Blame the pair that is out of reach, or the whole group.
        let blame = |key: Option<&(String, String)>| -> Vec<String> {
            match key {
                Some(k) => vec![base_of(self.component_map, &k.0), base_of(self.component_map, &k.1)],
                None => bps.iter().flat_map(|bp| [bp.0.clone(), bp.1.clone()]).collect::<BTreeSet<_>>().into_iter().collect(),
            }
        };
        let unsat = || CoverError::ProfileInconsistent("no sheet assignment satisfies Bezout".into());
        if let Some(i) = (0..budget.len()).find(|&i| tally[i] > budget[i] || tally[i] + slack[i] < budget[i]) {
            let key = index.iter().find(|(_, &v)| v == i).map(|(k, _)| k);
            return Err(Failure { error: unsat(), blame: Some(blame(key)) });
        }
        let mut st = Search { options: &options, touches: &touches, order: &order, budget, tally, slack, visited: 0, picks: vec![0; group.len()] };
        match st.dfs(0) {
            Some(true) => {}
            Some(false) => return Err(Failure { error: unsat(), blame: Some(blame(None)) }),
            None => return Err(CoverError::ProfileInconsistent("sheet assignment search exhausted".into()).into()),
        }
        Ok(st.picks.iter().enumerate().map(|(p, &c)| options[p][c].0.clone()).collect())
    }
}

fn amount(contrib: &[(usize, u64)], i: usize) -> u64 {
    contrib.binary_search_by_key(&i, |&(j, _)| j).map_or(0, |k| contrib[k].1)
}

/// Greedy variable order: next is the point touching the pair with the fewest
/// unplaced points, so pairs are closed as early as possible.
fn closing_order(touches: &[BTreeSet<usize>], keys: usize) -> Vec<usize> {
    let mut remaining = vec![0usize; keys];
    for t in touches {
        for &i in t {
            remaining[i] += 1;
        }
    }
    let mut placed = vec![false; touches.len()];
    let mut order = Vec::with_capacity(touches.len());
    while order.len() < touches.len() {
        let next = (0..touches.len())
            .filter(|&p| !placed[p])
            .min_by_key(|&p| (touches[p].iter().map(|&i| remaining[i]).min().unwrap_or(usize::MAX), p))
            .expect("unplaced point");
        placed[next] = true;
        for &i in &touches[next] {
            remaining[i] -= 1;
        }
        order.push(next);
    }
    order
}

struct Search<'a> {
    options: &'a [Vec<(BTreeMap<usize, Elem>, Vec<(usize, u64)>)>],
    touches: &'a [BTreeSet<usize>],
    order: &'a [usize],
    budget: Vec<u64>,
    tally: Vec<u64>,
    /// Largest amount the unplaced points can still add to each pair.
    slack: Vec<u64>,
    visited: usize,
    picks: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self, depth: usize) -> Option<bool> {
        let Some(&p) = self.order.get(depth) else {
            return Some(true);
        };
        let options = self.options;
        let opts = &options[p];
        let best: Vec<(usize, u64)> =
            self.touches[p].iter().map(|&i| (i, opts.iter().map(|(_, c)| amount(c, i)).max().unwrap_or(0))).collect();
        for &(i, m) in &best {
            self.slack[i] -= m;
        }
        let mut result = Some(false);
        for (code, (_, contrib)) in opts.iter().enumerate() {
            self.visited += 1;
            if self.visited > SEARCH_LIMIT {
                result = None;
                break;
            }
            for &(i, v) in contrib {
                self.tally[i] += v;
            }
            let ok = self.touches[p].iter().all(|&i| {
                let t = self.tally[i];
                t <= self.budget[i] && t + self.slack[i] >= self.budget[i]
            });
            let found = if ok { self.dfs(depth + 1) } else { Some(false) };
            if found == Some(true) {
                self.picks[p] = code;
                return Some(true);
            }
            for &(i, v) in contrib {
                self.tally[i] -= v;
            }
            if found.is_none() {
                result = None;
                break;
            }
        }
        for &(i, m) in &best {
            self.slack[i] += m;
        }
        result
    }
}

/// The base component a lifted component comes from.
fn base_of(map: &BTreeMap<String, Vec<String>>, lifted: &str) -> String {
    map.iter().find(|(_, ids)| ids.iter().any(|x| x == lifted)).map_or_else(|| lifted.to_string(), |(c, _)| c.clone())
}

/// Every pair of distinct components must meet in `deg A * deg B` points,
/// counted with contact.
fn bezout_mismatch(components: &[CurveComponent], germs: &[Germ]) -> Result<(), (CoverError, String, String)> {
    let mut t: Tally = HashMap::new();
    for g in germs {
        for x in 0..g.branches.len() {
            for y in x + 1..g.branches.len() {
                if g.branches[x] != g.branches[y] {
                    *t.entry(pair(&g.branches[x], &g.branches[y])).or_insert(0) += g.contact[x][y] as u64;
                }
            }
        }
    }
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            let got = t.get(&pair(&a.id, &b.id)).copied().unwrap_or(0);
            let want = a.degree as u64 * b.degree as u64;
            if got != want {
                let error = CoverError::ProfileInconsistent(format!(
                    "`{}` and `{}` meet with total multiplicity {got} upstairs, expected {want}",
                    a.id, b.id
                ));
                return Err((error, a.id.clone(), b.id.clone()));
            }
        }
    }
    Ok(())
}

/// Lifts a configuration and checks multiplicativity of both Chern numbers.
pub fn lift_config(config: &OrbifoldConfig, cover: &KummerCover) -> Result<LiftReport, CoverError> {
    let base_cfg = normalize(config);
    let raw = lift_raw(&base_cfg, cover)?;
    let label = format!("lift of {} by k={} along {}", base_cfg.label, cover.k, cover.branch.join(","));
    let lifted = raw.normalized(&label)?;
    let base = chern_pair(&base_cfg)?;
    let lift = chern_pair(&lifted)?;
    let d = cover.degree() as i64;
    let want = base.scaled(d);
    let component_map = raw
        .component_map
        .into_iter()
        .map(|(b, ids)| {
            let kept = ids.into_iter().filter(|id| lifted.component(id).is_some()).collect();
            (b, kept)
        })
        .collect();
    Ok(LiftReport {
        euler_ok: lift.euler() == want.euler(),
        c1sq_ok: lift.c1sq() == want.c1sq(),
        lifted,
        degree: cover.degree(),
        component_map,
        base,
        lift,
    })
}
