//! The `afsys` command line. [`run`] is the whole program minus process
//! I/O, so it can be driven from tests.

use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::Homomorphism;
use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::dsl::{
    self, check_workspace, emit_report, AfInstBody, AfInstDecl, AlgebraDecl, CheckResult, Entity,
    EntityReport, InstitutionDecl, Report, SpaceDecl, Status, SystemDecl, Workspace,
};
use crate::error::Error;
use crate::functor::{afsys_apply, loc, prop3_demo, pt, spat};
use crate::institution::{
    geo, ie_lift, ie_loc_lift, iloc_lift, ispat_lift, loc_reflection_components,
    spatial_counit_components, AffineInstitution, LocalicAffineInstitution,
    SpatialAffineInstitution,
};
use crate::outcome::Outcome;
use crate::topology::AffineTheory;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Environment variable that overrides the configured budget.
pub const BUDGET_VAR: &str = "AFSYS_BUDGET";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn error(message: impl std::fmt::Display) -> Self {
        CommandOutcome {
            exit_code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "afsys",
    version,
    about = "Check and transform finite affine spaces, systems and institutions"
)]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of candidates any enumeration may inspect.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
    /// Suppress text output; the exit code still reports the outcome.
    #[arg(long, global = true)]
    quiet: bool,
    /// TOML file with defaults for `budget`, `json` and `quiet`.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every law, axiom and satisfaction check on every entity.
    Check { file: PathBuf },
    /// The space of opens of a system.
    Spatialize {
        file: PathBuf,
        #[arg(long)]
        system: String,
    },
    /// The algebra of a system.
    Localify {
        file: PathBuf,
        #[arg(long)]
        system: String,
    },
    /// The points of an algebra: its homomorphisms into a base.
    Points {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        /// Base algebra; `2` is the two-element frame.
        #[arg(long, default_value = "2")]
        over: String,
    },
    /// Lift an affine institution along one of the four functors.
    Lift {
        file: PathBuf,
        #[arg(long)]
        institution: String,
        #[arg(long, value_enum)]
        op: LiftOp,
    },
    /// The elementary institution of a system-valued affine institution.
    Geo {
        file: PathBuf,
        #[arg(long)]
        institution: String,
    },
    /// Push a system along a theory morphism.
    Apply {
        file: PathBuf,
        #[arg(long)]
        theorymorphism: String,
        #[arg(long)]
        system: String,
    },
    /// Built-in demonstrations.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
}

#[derive(Subcommand, Debug)]
enum Demo {
    /// Count maps out of a coproduct versus pairs of maps.
    Prop3 {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LiftOp {
    Ie,
    Ispat,
    Iloc,
    Ieloc,
}

impl LiftOp {
    fn name(self) -> &'static str {
        match self {
            LiftOp::Ie => "ie",
            LiftOp::Ispat => "ispat",
            LiftOp::Iloc => "iloc",
            LiftOp::Ieloc => "ieloc",
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    budget: Option<u64>,
    json: Option<bool>,
    quiet: Option<bool>,
}

struct Settings {
    json: bool,
    quiet: bool,
    budget: Budget,
}

/// Runs the command line with the process environment.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_env(argv, |key| std::env::var(key).ok())
}

/// Runs the command line, reading environment variables through `env`.
/// The budget is taken from `--budget`, then `AFSYS_BUDGET`, then the
/// config file, then the default.
pub fn run_with_env<I, T>(argv: I, env: impl Fn(&str) -> Option<String>) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandOutcome {
                        exit_code: EXIT_PASS,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => {
                    let mut stderr = text;
                    if !stderr.contains("Usage:") {
                        stderr.push_str(&format!("\n{}\n", Cli::command().render_usage()));
                    }
                    CommandOutcome {
                        exit_code: EXIT_ERROR,
                        stdout: String::new(),
                        stderr,
                    }
                }
            };
        }
    };
    let settings = match settings(&cli, env) {
        Ok(s) => s,
        Err(msg) => return CommandOutcome::error(msg),
    };
    match execute(&cli.command, settings.budget) {
        Ok((report, text)) => render(&report, &text, &settings),
        Err(Failure::Diagnostics(file, diags)) => CommandOutcome {
            exit_code: EXIT_ERROR,
            stdout: String::new(),
            stderr: diags
                .iter()
                .map(|d| format!("{}:{d}\n", file.display()))
                .collect(),
        },
        Err(Failure::Message(m)) => CommandOutcome::error(m),
    }
}

fn settings(cli: &Cli, env: impl Fn(&str) -> Option<String>) -> Result<Settings, String> {
    let config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            toml::from_str::<Config>(&text)
                .map_err(|e| format!("invalid config {}: {e}", path.display()))?
        }
        None => Config::default(),
    };
    let from_env = match env(BUDGET_VAR) {
        Some(v) => Some(
            v.trim()
                .parse::<u64>()
                .map_err(|_| format!("{BUDGET_VAR} must be a non-negative integer, got `{v}`"))?,
        ),
        None => None,
    };
    let budget = cli
        .budget
        .or(from_env)
        .or(config.budget)
        .unwrap_or(DEFAULT_BUDGET);
    Ok(Settings {
        json: cli.json || config.json.unwrap_or(false),
        quiet: cli.quiet || config.quiet.unwrap_or(false),
        budget: Budget(budget),
    })
}

fn render(report: &Report, text: &str, settings: &Settings) -> CommandOutcome {
    let exit_code = if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let stdout = if settings.json {
        emit_report(report)
    } else if settings.quiet {
        String::new()
    } else {
        human(report, text)
    };
    CommandOutcome {
        exit_code,
        stdout,
        stderr: String::new(),
    }
}

fn human(report: &Report, text: &str) -> String {
    let mut out = String::new();
    if !text.is_empty() {
        out.push_str(text);
        if !text.ends_with('\n') {
            out.push('\n');
        }
    }
    for e in &report.entities {
        out.push_str(&format!("{} {}\n", e.kind, e.name));
        for c in &e.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "info",
                Status::Skipped => "skip",
            };
            match &c.witness {
                Some(w) => out.push_str(&format!("  {status:<5} {} {w}\n", c.check)),
                None => out.push_str(&format!("  {status:<5} {}\n", c.check)),
            }
        }
    }
    out.push_str(&format!(
        "summary: {} pass, {} fail\n",
        report.summary.pass, report.summary.fail
    ));
    out
}

enum Failure {
    Diagnostics(PathBuf, Vec<dsl::Diagnostic>),
    Message(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Message(e.to_string())
    }
}

type CommandResult = Result<(Report, String), Failure>;

fn load(path: &Path) -> Result<Workspace, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Message(format!("cannot read {}: {e}", path.display())))?;
    dsl::parse_strict(&text).map_err(|d| Failure::Diagnostics(path.to_path_buf(), d))
}

fn missing(kind: &str, name: &str) -> Failure {
    Failure::Message(format!("no {kind} named `{name}`"))
}

fn theory_of(ws: &Workspace, name: &str) -> Result<AffineTheory, Failure> {
    match ws.algebra(name) {
        Some(d) => Ok(AffineTheory::new(d.algebra.clone(), d.variety)?),
        None if name == "2" => Ok(AffineTheory::two()),
        None => Err(missing("algebra", name)),
    }
}

fn sorted(mut entities: Vec<EntityReport>) -> Vec<EntityReport> {
    entities.sort_by(|a, b| (&a.kind, &a.name).cmp(&(&b.kind, &b.name)));
    entities
}

/// Checks a freshly built workspace and reports it as `.afs` text.
fn derived(
    command: &str,
    ws: &Workspace,
    extra: Vec<EntityReport>,
    budget: Budget,
) -> CommandResult {
    let checked = check_workspace(ws, budget)?;
    let text = dsl::print(ws);
    let mut entities = checked.entities;
    entities.extend(extra);
    let report = Report::new(
        Some(command),
        sorted(entities),
        Some(json!({ "afs": text })),
    );
    Ok((report, text))
}

fn execute(command: &Command, budget: Budget) -> CommandResult {
    match command {
        Command::Check { file } => {
            let ws = load(file)?;
            Ok((check_workspace(&ws, budget)?, String::new()))
        }
        Command::Spatialize { file, system } => {
            let ws = load(file)?;
            let d = ws.system(system).ok_or_else(|| missing("system", system))?;
            let mut out = Workspace::new();
            push_base(&mut out, &ws, &d.over)?;
            out.insert(
                Entity::Space(SpaceDecl {
                    name: format!("{system}_spat"),
                    over: d.over.clone(),
                    space: spat(&d.system)?,
                }),
                Default::default(),
            )?;
            derived("spatialize", &out, vec![], budget)
        }
        Command::Localify { file, system } => {
            let ws = load(file)?;
            let d = ws.system(system).ok_or_else(|| missing("system", system))?;
            let mut out = Workspace::new();
            out.insert(
                Entity::Algebra(AlgebraDecl {
                    name: format!("{system}_loc"),
                    variety: d.system.theory().variety(),
                    algebra: loc(&d.system),
                }),
                Default::default(),
            )?;
            derived("localify", &out, vec![], budget)
        }
        Command::Points {
            file,
            algebra,
            over,
        } => {
            let ws = load(file)?;
            let d = ws
                .algebra(algebra)
                .ok_or_else(|| missing("algebra", algebra))?;
            let theory = theory_of(&ws, over)?;
            let points = pt(&d.algebra, &theory, budget)?;
            let text = points_text(algebra, over, &points);
            let list: Vec<Value> = points.iter().map(point_json).collect();
            let result =
                json!({ "algebra": algebra, "over": over, "count": points.len(), "points": list });
            Ok((Report::new(Some("points"), vec![], Some(result)), text))
        }
        Command::Lift {
            file,
            institution,
            op,
        } => {
            let ws = load(file)?;
            let d = ws
                .afinst(institution)
                .ok_or_else(|| missing("afinst", institution))?;
            lift(&ws, d, *op, budget)
        }
        Command::Geo { file, institution } => {
            let ws = load(file)?;
            let d = ws
                .afinst(institution)
                .ok_or_else(|| missing("afinst", institution))?;
            let AfInstBody::Systems(ai) = &d.body else {
                return Err(Failure::Message(format!(
                    "`{institution}` does not send signatures to systems"
                )));
            };
            let mut out = Workspace::new();
            out.insert(
                Entity::Institution(InstitutionDecl {
                    name: format!("{institution}_geo"),
                    institution: geo(ai)?,
                }),
                Default::default(),
            )?;
            derived("geo", &out, vec![], budget)
        }
        Command::Apply {
            file,
            theorymorphism,
            system,
        } => {
            let ws = load(file)?;
            let tm = ws
                .theory_morphism(theorymorphism)
                .ok_or_else(|| missing("theorymorphism", theorymorphism))?;
            let d = ws.system(system).ok_or_else(|| missing("system", system))?;
            let moved = afsys_apply(&tm.morphism, &d.system)?;
            let mut out = Workspace::new();
            push_base(&mut out, &ws, &tm.to)?;
            if out.algebra(&d.carrier).is_none() {
                push_base(&mut out, &ws, &d.carrier)?;
            }
            out.insert(
                Entity::System(SystemDecl {
                    name: format!("{system}_{theorymorphism}"),
                    over: tm.to.clone(),
                    carrier: d.carrier.clone(),
                    system: moved,
                }),
                Default::default(),
            )?;
            derived("apply", &out, vec![], budget)
        }
        Command::Demo {
            demo: Demo::Prop3 { n },
        } => {
            let p = prop3_demo(*n)?;
            let n128 = u128::from(*n);
            let check = |name: &str, ok: bool| {
                CheckResult::from_status(name, if ok { Status::Pass } else { Status::Fail })
            };
            let entity = EntityReport {
                kind: "demo".into(),
                name: "prop3".into(),
                checks: vec![
                    check("lhs_is_n^4", p.lhs == n128.pow(4)),
                    check("rhs_is_n^2", p.rhs == n128.pow(2)),
                ],
            };
            let result = json!({ "n": p.n, "lhs": p.lhs, "rhs": p.rhs, "equal": p.equal });
            let text = format!(
                "n = {}: maps out of the coproduct = {}, pairs of maps = {}, {}",
                p.n,
                p.lhs,
                p.rhs,
                if p.equal { "equal" } else { "unequal" }
            );
            Ok((
                Report::new(Some("demo prop3"), vec![entity], Some(result)),
                text,
            ))
        }
    }
}

/// Copies a declared base algebra into `out`; the built-in `2` needs nothing.
fn push_base(out: &mut Workspace, ws: &Workspace, name: &str) -> Result<(), Failure> {
    match ws.algebra(name) {
        Some(d) => Ok(out.insert(Entity::Algebra(d.clone()), Default::default())?),
        None if name == "2" => Ok(()),
        None => Err(missing("algebra", name)),
    }
}

fn point_json(p: &Homomorphism) -> Value {
    let pairs: serde_json::Map<String, Value> = (0..p.source().size())
        .map(|a| {
            (
                p.source().label(a).to_string(),
                Value::from(p.target().label(p.apply(a))),
            )
        })
        .collect();
    Value::Object(pairs)
}

fn points_text(algebra: &str, over: &str, points: &[Homomorphism]) -> String {
    let mut s = format!("{} point(s) of {algebra} over {over}\n", points.len());
    for (i, p) in points.iter().enumerate() {
        let cells: Vec<String> = (0..p.source().size())
            .map(|a| format!("{}->{}", p.source().label(a), p.target().label(p.apply(a))))
            .collect();
        s.push_str(&format!("  p{i}: {}\n", cells.join(" ")));
    }
    s
}

fn lift(ws: &Workspace, d: &AfInstDecl, op: LiftOp, budget: Budget) -> CommandResult {
    let wrong = |want: &str| {
        Failure::Message(format!(
            "`{}` is not {want}; `--op {}` needs one",
            d.name,
            op.name()
        ))
    };
    let (body, round_trip) = match (op, &d.body) {
        (LiftOp::Ie, AfInstBody::Spaces(si)) => {
            let lifted = ie_lift(si)?;
            let back = ispat_lift(&lifted)?;
            (
                AfInstBody::Systems(lifted),
                outcome_check("ispat_after_ie_is_identity", same_spatial(&back, si)),
            )
        }
        (LiftOp::Ieloc, AfInstBody::Algebras(li)) => {
            let lifted = ie_loc_lift(li, budget)?;
            let back = iloc_lift(&lifted)?;
            (
                AfInstBody::Systems(lifted),
                outcome_check("iloc_after_ieloc_is_identity", same_localic(&back, li)),
            )
        }
        (LiftOp::Ispat, AfInstBody::Systems(ai)) => {
            let nat = spatial_counit_components(ai)?.naturality;
            (
                AfInstBody::Spaces(ispat_lift(ai)?),
                naturality_check("counit_naturality", ai, nat),
            )
        }
        (LiftOp::Iloc, AfInstBody::Systems(ai)) => {
            let nat = loc_reflection_components(ai, budget)?.naturality;
            (
                AfInstBody::Algebras(iloc_lift(ai)?),
                naturality_check("reflection_naturality", ai, nat),
            )
        }
        (LiftOp::Ie, _) => return Err(wrong("space-valued")),
        (LiftOp::Ieloc, _) => return Err(wrong("algebra-valued")),
        _ => return Err(wrong("system-valued")),
    };
    let name = format!("{}_{}", d.name, op.name());
    let out = afinst_workspace(ws, &name, &d.over, body)?;
    let extra = EntityReport {
        kind: "lift".into(),
        name: op.name().into(),
        checks: vec![round_trip],
    };
    derived("lift", &out, vec![extra], budget)
}

fn same_spatial(a: &SpatialAffineInstitution, b: &SpatialAffineInstitution) -> bool {
    a.spaces() == b.spaces() && a.maps() == b.maps()
}

fn same_localic(a: &LocalicAffineInstitution, b: &LocalicAffineInstitution) -> bool {
    a.algebras() == b.algebras() && a.homs() == b.homs()
}

fn outcome_check(name: &str, holds: bool) -> CheckResult {
    CheckResult::from_status(name, if holds { Status::Pass } else { Status::Fail })
}

fn naturality_check(name: &str, ai: &AffineInstitution, nat: Outcome<usize>) -> CheckResult {
    match nat {
        Outcome::Pass => CheckResult::from_status(name, Status::Pass),
        Outcome::Fail(a) => CheckResult {
            check: name.into(),
            status: Status::Fail,
            witness: Some(json!({ "arrow": ai.sign().arrow_name(a) })),
        },
    }
}

/// A workspace holding a generated affine institution: one entity per
/// signature named `NAME_S`, carrier algebras `NAME_S_alg`, and the base.
fn afinst_workspace(
    ws: &Workspace,
    name: &str,
    over: &str,
    body: AfInstBody,
) -> Result<Workspace, Failure> {
    let mut out = Workspace::new();
    push_base(&mut out, ws, over)?;
    let span = Default::default();
    let (sign, variety) = match &body {
        AfInstBody::Systems(ai) => (ai.sign().clone(), ai.theory().variety()),
        AfInstBody::Spaces(si) => (si.sign().clone(), si.theory().variety()),
        AfInstBody::Algebras(li) => (li.sign().clone(), li.theory().variety()),
    };
    let mut at = Vec::new();
    for (x, object) in sign.objects().iter().enumerate() {
        let entity = format!("{name}_{object}");
        match &body {
            AfInstBody::Systems(ai) => {
                let sys = ai.system(x);
                let carrier = format!("{entity}_alg");
                out.insert(
                    Entity::Algebra(AlgebraDecl {
                        name: carrier.clone(),
                        variety,
                        algebra: sys.algebra().clone(),
                    }),
                    span,
                )?;
                out.insert(
                    Entity::System(SystemDecl {
                        name: entity.clone(),
                        over: over.into(),
                        carrier,
                        system: sys.clone(),
                    }),
                    span,
                )?;
            }
            AfInstBody::Spaces(si) => out.insert(
                Entity::Space(SpaceDecl {
                    name: entity.clone(),
                    over: over.into(),
                    space: si.spaces()[x].clone(),
                }),
                span,
            )?,
            AfInstBody::Algebras(li) => out.insert(
                Entity::Algebra(AlgebraDecl {
                    name: entity.clone(),
                    variety,
                    algebra: li.algebras()[x].clone(),
                }),
                span,
            )?,
        }
        at.push(entity);
    }
    out.insert(
        Entity::AfInst(AfInstDecl {
            name: name.into(),
            over: over.into(),
            at,
            body,
        }),
        span,
    )?;
    Ok(out)
}
