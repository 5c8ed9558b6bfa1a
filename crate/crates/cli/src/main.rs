//! `orbicover`: invariants, enumeration tables, Kummer lifts and group
//! computations for weighted curve configurations on the projective plane.
//!
//! Exit codes: 0 success, 1 failed verification, 2 parse error,
//! 3 validation error, 4 failed reference check, 5 unsupported computation.

mod golden;
mod output;
mod verify;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use orbicover::configuration::{normalize, parse_config, render_config, validate, ConfigError, OrbifoldConfig, Violation};
use orbicover::coverings::{lift_config, theorem1_iterate, CoverError, KummerCover};
use orbicover::groups::{
    abelianize, build_a2, build_apollonius_pi1, build_modular, coordinate_triangle, line_arrangement_group,
    parse_presentation, todd_coxeter, verify_orders, OrderOutcome, Presentation, DEFAULT_MAX_COSETS,
};
use orbicover::invariants::{chern_pair, classify, enumerate_cuspidal, search_parabolic, InvariantError, OrderError, Tuple};
use orbicover::numerics::Weight;

use golden::Golden;
use output::{Cell, Format, Record};

#[derive(Parser)]
#[command(name = "orbicover", version, about = "Orbifold invariants, Kummer lifts and orbifold groups of weighted plane curves")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Chern numbers and class tag of a configuration file (`-` for stdin).
    Invariants { file: PathBuf },
    /// Enumeration tables.
    Tables {
        #[command(subcommand)]
        which: Table,
    },
    /// Lift a configuration through a Kummer cover, or run the ball-quotient tower.
    Lift(LiftArgs),
    /// Orbifold fundamental groups.
    Groups {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Run every reference check; exits 1 if any fails.
    Verify {
        /// Directory with replacement reference data files.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
}

/// `i/n`: keep the `i`-th of `n` slices of the search space, `0 <= i < n`.
#[derive(Clone, Copy, Debug)]
struct Shard {
    index: u64,
    count: u64,
}

impl Shard {
    fn keeps(self, key: u64) -> bool {
        key % self.count == self.index
    }
}

impl FromStr for Shard {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (i, n) = s.split_once('/').ok_or("expected i/n")?;
        let index: u64 = i.trim().parse().map_err(|_| format!("bad shard index `{i}`"))?;
        let count: u64 = n.trim().parse().map_err(|_| format!("bad shard count `{n}`"))?;
        if count == 0 || index >= count {
            return Err(format!("shard {index}/{count} out of range"));
        }
        Ok(Shard { index, count })
    }
}

#[derive(Subcommand)]
enum Table {
    /// Cuspidal curves `(d, kappa, nu, b)` with `3e = c1^2`.
    Cuspidal {
        #[arg(long, default_value_t = 17)]
        dmax: u32,
        /// Weights of the curve, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 4, 5, 6])]
        b: Vec<u64>,
        /// Check containment of the reference table (30 rows up to degree 17); exit 4 on mismatch.
        #[arg(long)]
        check_paper: bool,
        /// Only degrees `d` with `d mod n = i`.
        #[arg(long)]
        shard: Option<Shard>,
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Apollonius weight vectors on the equality clauses `2e = c1^2`, `e = c1^2 = 0`,
    /// `3e = c1^2`, `c1^2 = 0`.
    Parabolic {
        #[arg(long, default_value_t = 12)]
        cap: u64,
        /// Compare with the reference solution sets exactly; exit 4 on mismatch.
        #[arg(long)]
        check_paper: bool,
        /// Only conic weights whose index in `2, 3, ..., cap, INF` is `i mod n`.
        #[arg(long)]
        shard: Option<Shard>,
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LiftArgs {
    /// Configuration file (`-` for stdin).
    #[arg(required_unless_present = "iterate", conflicts_with = "iterate")]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Branch lines `X,Y,Z`.
    #[arg(long, value_delimiter = ',', num_args = 1, required_unless_present = "iterate")]
    triple: Vec<String>,
    /// Run this many steps of the double-cover tower starting from C2(4,4,4,4;2,2,2).
    #[arg(long)]
    iterate: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    /// `A(a; b1, b2, b3)` with the three lines as generators.
    #[arg(long, num_args = 4, value_names = ["A", "B1", "B2", "B3"])]
    modular: Option<Vec<Weight>>,
    /// `A(a; b, b)`.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    a2: Option<Vec<Weight>>,
    /// `m` times the coordinate triangle.
    #[arg(long, value_name = "M")]
    coordinate_triangle: Option<u64>,
    /// Complement of a conic and `n` tangent lines.
    #[arg(long, value_name = "N")]
    apollonius: Option<usize>,
    /// Weighted lines in general position.
    #[arg(long, num_args = 1.., value_name = "W")]
    lines: Option<Vec<Weight>>,
    /// Presentation file (`-` for stdin).
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Group order by coset enumeration.
    Order {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Exit 1 on overflow instead of reporting it.
        #[arg(long)]
        strict: bool,
    },
    /// Abelian invariants by Smith normal form.
    Abelianize {
        #[command(flatten)]
        source: GroupSource,
    },
    /// Compare enumerated orders with their closed forms.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long)]
        strict: bool,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

/// Output produced before a failure is still printed.
struct Done {
    record: Record,
    failure: Option<Failure>,
}

impl From<Record> for Done {
    fn from(record: Record) -> Self {
        Done { record, failure: None }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::new(2, format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
    }
}

fn invariant_code(e: &InvariantError) -> u8 {
    match e {
        InvariantError::Point { source: OrderError::Unsupported(_), .. } | InvariantError::UnsupportedShape(_) => 5,
        _ => 3,
    }
}

/// Parses, normalizes and validates a configuration document.
fn load_config(path: &Path) -> Result<OrbifoldConfig, Failure> {
    let text = read_input(path)?;
    let config = parse_config(&text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    config.check_structure().map_err(|e| Failure::new(3, e.to_string()))?;
    if let Some((a, b, got, want)) = config.bezout_defects().into_iter().next() {
        return Err(Failure::new(3, format!("`{a}` and `{b}` meet with multiplicity {got}, Bezout requires {want}")));
    }
    let config = normalize(&config);
    let report = validate(&config);
    if !report.is_admissible() {
        let code = if report.violations.iter().all(|v| matches!(v, Violation::Unsupported { .. })) { 5 } else { 3 };
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::new(code, msgs.join("\n")));
    }
    Ok(config)
}

fn cmd_invariants(file: &Path) -> Result<Done, Failure> {
    let config = load_config(file)?;
    let pair = chern_pair(&config).map_err(|e| Failure::new(invariant_code(&e), e.to_string()))?;
    let class = classify(&config).map_err(|e| Failure::new(invariant_code(&e), e.to_string()))?;
    let (c, e) = (pair.c1sq().clone(), pair.euler().clone());
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    let mut r = Record::new(format!("invariants {}", file.display()), &["c1sq", "e", "2e-c1sq", "3e-c1sq", "class"]);
    r.push(vec![c.clone().into(), e.clone().into(), (&two * &e - &c).into(), (&three * &e - &c).into(), class.tag.name().into()]);
    Ok(r.into())
}

fn cmd_cuspidal(dmax: u32, b: &[u64], check: bool, shard: Option<Shard>, data: Option<&Path>) -> Result<Done, Failure> {
    if b.iter().any(|&x| x < 2) {
        return Err(Failure::new(3, "weights must be at least 2"));
    }
    let mut r = Record::new(format!("tables cuspidal --dmax {dmax}"), &["d", "kappa", "nu", "b", "g", "c1sq", "e"]);
    let mut sorted_b = b.to_vec();
    sorted_b.sort_unstable();
    sorted_b.dedup();
    for d in (1..=dmax).filter(|&d| shard.is_none_or(|s| s.keeps(d as u64))) {
        // The search is monotone in d_max, so slice row by row.
        for row in enumerate_cuspidal(d, &sorted_b).into_iter().filter(|x| x.d == d) {
            let p = orbicover::invariants::cuspidal_cherns(row.d, row.kappa, row.nu, Weight::Fin(row.b))
                .map_err(|e| Failure::new(1, e.to_string()))?;
            r.push(vec![row.d.into(), row.kappa.into(), row.nu.into(), row.b.into(), row.g.into(), p.c1sq().into(), p.euler().into()]);
        }
    }
    r.summary = Some(format!("{} rows", r.rows.len()));
    if !check {
        return Ok(r.into());
    }
    match verify::cuspidal_table(&Golden::new(data), dmax, true) {
        Ok(msg) => {
            r.summary = Some(format!("{} rows; paper check pass: {msg}", r.rows.len()));
            Ok(r.into())
        }
        Err(msg) => Ok(Done { record: r, failure: Some(Failure::new(4, format!("paper check failed: {msg}"))) }),
    }
}

fn cmd_parabolic(cap: u64, check: bool, shard: Option<Shard>, data: Option<&Path>) -> Result<Done, Failure> {
    if cap < 2 {
        return Err(Failure::new(3, "cap must be at least 2"));
    }
    let s = search_parabolic(cap);
    let key = |t: &Tuple| match t.a {
        Weight::Fin(a) => a - 2,
        Weight::Inf => cap - 1,
    };
    let mut r = Record::new(format!("tables parabolic --cap {cap}"), &["clause", "tuple", "c1sq", "e"]);
    for (clause, set) in [("polydisk", &s.polydisk), ("flat", &s.flat), ("ball", &s.ball), ("zero-c1", &s.zero_c1)] {
        for t in set.iter().filter(|t| shard.is_none_or(|sh| sh.keeps(key(t)))) {
            let p = orbicover::invariants::apollonius_cherns(t.a, &t.bs).map_err(|e| Failure::new(1, e.to_string()))?;
            r.push(vec![clause.into(), t.to_string().into(), p.c1sq().into(), p.euler().into()]);
        }
    }
    r.summary = Some(format!(
        "{} rows; a=2 family: 2e = c1^2 on {} of {} tuples",
        r.rows.len(),
        s.family_checked - s.family_failures.len(),
        s.family_checked
    ));
    if !check {
        return Ok(r.into());
    }
    match verify::parabolic_sets(&Golden::new(data), &s) {
        Ok(msg) => {
            r.summary = Some(format!("{} rows; paper check pass: {msg}", r.rows.len()));
            Ok(r.into())
        }
        Err(msg) => Ok(Done { record: r, failure: Some(Failure::new(4, format!("paper check failed: {msg}"))) }),
    }
}

fn cover_failure(e: CoverError) -> Failure {
    let code = match &e {
        CoverError::UnsupportedLocalType { .. }
        | CoverError::Config(ConfigError::UnsupportedLocalType(_))
        | CoverError::ProfileInconsistent(_)
        | CoverError::NonIntegralSplit { .. } => 5,
        CoverError::Invariant(ie) => invariant_code(ie),
        CoverError::Config(ConfigError::Syntax { .. }) => 2,
        _ => 3,
    };
    Failure::new(code, e.to_string())
}

fn cmd_lift(args: &LiftArgs) -> Result<Done, Failure> {
    if let Some(n) = args.iterate {
        let steps = theorem1_iterate(n).map_err(cover_failure)?;
        let mut r = Record::new(
            format!("lift --iterate {n}"),
            &["step", "triple", "locus_degree", "c1sq", "e", "multiplicative"],
        );
        for (i, s) in steps.iter().enumerate() {
            r.push(vec![
                (i + 1).into(),
                s.triple.join(",").into(),
                s.locus_degree.into(),
                s.report.lift.c1sq().into(),
                s.report.lift.euler().into(),
                s.report.multiplicative().into(),
            ]);
        }
        let ok = steps.iter().all(|s| s.report.multiplicative());
        return Ok(Done {
            record: r,
            failure: (!ok).then(|| Failure::new(1, "a tower step is not multiplicative")),
        });
    }
    let file = args.file.as_deref().expect("clap requires a file without --iterate");
    let [x, y, z] = args.triple.as_slice() else {
        return Err(Failure::new(3, format!("--triple needs three lines, got {}", args.triple.len())));
    };
    if args.k < 2 {
        return Err(Failure::new(3, "k must be at least 2"));
    }
    let config = load_config(file)?;
    let report = lift_config(&config, &KummerCover::new(args.k, [x, y, z])).map_err(cover_failure)?;
    let tag = |c: &OrbifoldConfig| classify(c).map(|t| t.tag.name()).unwrap_or("?");
    let mut r = Record::new(
        format!("lift {} --k {} --triple {x},{y},{z}", file.display(), args.k),
        &["degree", "base_c1sq", "base_e", "lift_c1sq", "lift_e", "c1sq_ok", "euler_ok", "base_class", "lift_class"],
    );
    r.push(vec![
        report.degree.into(),
        report.base.c1sq().into(),
        report.base.euler().into(),
        report.lift.c1sq().into(),
        report.lift.euler().into(),
        report.c1sq_ok.into(),
        report.euler_ok.into(),
        tag(&config).into(),
        tag(&report.lifted).into(),
    ]);
    r.document = Some(render_config(&report.lifted));
    let failure = (!report.multiplicative()).then(|| Failure::new(1, "Chern numbers are not multiplicative"));
    Ok(Done { record: r, failure })
}

fn presentation(s: &GroupSource) -> Result<(String, Presentation), Failure> {
    let join = |ws: &[Weight]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",");
    if let Some(w) = &s.modular {
        Ok((format!("A({};{})", w[0], join(&w[1..])), build_modular(w[0], w[1], w[2], w[3])))
    } else if let Some(w) = &s.a2 {
        Ok((format!("A({};{},{})", w[0], w[1], w[1]), build_a2(w[0], w[1])))
    } else if let Some(m) = s.coordinate_triangle {
        Ok((format!("{m}(T1+T2+T3)"), coordinate_triangle(m)))
    } else if let Some(n) = s.apollonius {
        Ok((format!("conic with {n} tangent lines"), build_apollonius_pi1(n)))
    } else if let Some(w) = &s.lines {
        Ok((format!("lines({})", join(w)), line_arrangement_group(w)))
    } else if let Some(path) = &s.file {
        let text = read_input(path)?;
        let p = parse_presentation(&text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
        Ok((path.display().to_string(), p))
    } else {
        unreachable!("clap requires one group source")
    }
}

fn cmd_groups(cmd: &GroupCmd) -> Result<Done, Failure> {
    match cmd {
        GroupCmd::Order { source, max_cosets, strict } => {
            let (name, p) = presentation(source)?;
            let mut r = Record::new(format!("groups order {name}"), &["group", "status", "order"]);
            let failure = match todd_coxeter(&p, *max_cosets) {
                Ok(t) => {
                    r.push(vec![name.into(), "finite".into(), t.order().into()]);
                    None
                }
                Err(e) => {
                    r.push(vec![name.into(), "overflow".into(), "".into()]);
                    strict.then(|| Failure::new(1, e.to_string()))
                }
            };
            Ok(Done { record: r, failure })
        }
        GroupCmd::Abelianize { source } => {
            let (name, p) = presentation(source)?;
            let ab = abelianize(&p);
            let torsion: Vec<String> = ab.torsion.iter().map(|d| d.to_string()).collect();
            let order: Cell = match ab.order() {
                Some(o) => u64::try_from(o).map_or_else(|_| Cell::Text(o.to_string()), Cell::from),
                None => "INF".into(),
            };
            let mut r = Record::new(format!("groups abelianize {name}"), &["group", "invariants", "rank", "torsion", "order"]);
            r.push(vec![name.into(), ab.to_string().into(), ab.rank.into(), torsion.join(" ").into(), order]);
            Ok(r.into())
        }
        GroupCmd::Verify { max_weight, max_cosets, strict } => {
            let report = verify_orders(*max_weight, *max_cosets);
            let mut r = Record::new(format!("groups verify --max-weight {max_weight}"), &["case", "expected", "status", "order"]);
            for c in &report.checks {
                let (status, got): (&str, Cell) = match &c.outcome {
                    OrderOutcome::Pass => ("pass", c.expected.into()),
                    OrderOutcome::Fail { got } => ("fail", (*got).into()),
                    OrderOutcome::Overflow => ("overflow", "".into()),
                };
                r.push(vec![c.case.clone().into(), c.expected.into(), status.into(), got]);
            }
            let fails = report.checks.iter().filter(|c| matches!(c.outcome, OrderOutcome::Fail { .. })).count();
            let overflows = report.overflows().count();
            r.summary = Some(format!("{} checks, {fails} failed, {overflows} overflowed", report.checks.len()));
            let failure = if fails > 0 {
                Some(Failure::new(1, format!("{fails} orders disagree with their closed forms")))
            } else if overflows > 0 && *strict {
                Some(Failure::new(1, format!("{overflows} enumerations overflowed")))
            } else {
                None
            };
            Ok(Done { record: r, failure })
        }
    }
}

fn cmd_verify(data: Option<&Path>) -> Result<Done, Failure> {
    let results = verify::run_all(&Golden::new(data));
    let mut r = Record::new("verify", &["criterion", "name", "status", "detail"]);
    let mut failed = 0;
    for c in &results {
        let (status, detail) = match &c.outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        r.push(vec![c.id.into(), c.name.into(), status.into(), detail.into()]);
    }
    r.summary = Some(format!("{} of {} criteria pass", results.len() - failed, results.len()));
    let failure = (failed > 0).then(|| Failure::new(1, format!("{failed} criteria failed")));
    Ok(Done { record: r, failure })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut format = cli.format;
    let result = match &cli.cmd {
        Cmd::Invariants { file } => cmd_invariants(file),
        Cmd::Tables { which: Table::Cuspidal { dmax, b, check_paper, shard, data } } => {
            cmd_cuspidal(*dmax, b, *check_paper, *shard, data.as_deref())
        }
        Cmd::Tables { which: Table::Parabolic { cap, check_paper, shard, data } } => {
            cmd_parabolic(*cap, *check_paper, *shard, data.as_deref())
        }
        Cmd::Lift(args) => cmd_lift(args),
        Cmd::Groups { cmd } => cmd_groups(cmd),
        Cmd::Verify { data, json } => {
            if *json {
                format = Format::Json;
            }
            cmd_verify(data.as_deref())
        }
    };
    let failure = match result {
        Ok(done) => {
            print!("{}", done.record.render(format));
            done.failure
        }
        Err(f) => Some(f),
    };
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
