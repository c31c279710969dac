use serde::Serialize;
use serde_json::{json, Value};

use super::{AfInstBody, AfInstDecl, Entity, Workspace};
use crate::algebra::{check_laws, BOT, JOIN, MEET, TOP};
use crate::budget::Budget;
use crate::cat::FiniteCategory;
use crate::error::Result;
use crate::institution::{
    check_affine_institution, check_elementary, check_localic_institution,
    check_spatial_institution, geo, AffineInstFailure, ElementaryFailure, ElementaryInstitution,
};
use crate::outcome::Outcome;
use crate::topology::{
    is_space, is_system, separation_witness, vickers_axiom_check, AffineSystem, VickersAxiom,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest point count used when checking naturality of a theory morphism.
const NATURALITY_POINTS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A property that is reported but is not a law, such as separation.
    Info,
    /// Not run because an earlier check it depends on failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckResult {
    /// A result without a witness.
    pub fn from_status(check: &str, status: Status) -> Self {
        Self::new(check, status, None)
    }

    fn new(check: &str, status: Status, witness: Option<Value>) -> Self {
        CheckResult {
            check: check.to_string(),
            status,
            witness,
        }
    }

    fn outcome<W>(check: &str, outcome: Outcome<W>, witness: impl FnOnce(W) -> Value) -> Self {
        match outcome {
            Outcome::Pass => Self::new(check, Status::Pass, None),
            Outcome::Fail(w) => Self::new(check, Status::Fail, Some(witness(w))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntityReport {
    pub kind: String,
    pub name: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    pub entities: Vec<EntityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub summary: Summary,
}

impl Report {
    /// A report with the given entities; the summary is computed from them.
    pub fn new(command: Option<&str>, entities: Vec<EntityReport>, result: Option<Value>) -> Self {
        let mut summary = Summary::default();
        for c in entities.iter().flat_map(|e| &e.checks) {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Info | Status::Skipped => {}
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            command: command.map(str::to_string),
            entities,
            result,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Pretty JSON with a trailing newline. Field order follows the struct
/// definitions, so equal reports always render to the same bytes.
pub fn emit_report(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Runs every check on every entity. Entities are listed by kind, then name.
pub fn check_workspace(ws: &Workspace, budget: Budget) -> Result<Report> {
    let mut entities = Vec::new();
    for e in ws.entities() {
        entities.push(EntityReport {
            kind: e.kind().keyword().to_string(),
            name: e.name().to_string(),
            checks: check_entity(e, budget)?,
        });
    }
    entities.sort_by(|a, b| (&a.kind, &a.name).cmp(&(&b.kind, &b.name)));
    Ok(Report::new(Some("check"), entities, None))
}

fn check_entity(e: &Entity, budget: Budget) -> Result<Vec<CheckResult>> {
    Ok(match e {
        Entity::Algebra(d) => {
            let a = &d.algebra;
            check_laws(a, d.variety)?
                .results
                .into_iter()
                .map(|(law, o)| {
                    CheckResult::outcome(&format!("law:{law}"), o, |f| {
                        json!({ "assignment": f.assignment.iter().map(|&x| a.label(x)).collect::<Vec<_>>() })
                    })
                })
                .collect()
        }
        Entity::Space(d) => {
            let sp = &d.space;
            let th = sp.theory();
            let o = is_space(th, sp.point_count(), sp.opens())?;
            vec![CheckResult::outcome("is_space", o, |f| {
                json!({
                    "symbol": f.symbol,
                    "args": f.args.iter().map(|t| th.tuple_label(t)).collect::<Vec<_>>(),
                    "result": th.tuple_label(&f.result),
                })
            })]
        }
        Entity::System(d) => system_checks(&d.system, budget)?,
        Entity::TheoryMorphism(d) => {
            let m = &d.morphism;
            let th = m.source();
            let check = match m.check_naturality(NATURALITY_POINTS, budget)? {
                Ok(_) => CheckResult::new("naturality", Status::Pass, None),
                Err((f, alpha)) => CheckResult::new(
                    "naturality",
                    Status::Fail,
                    Some(json!({ "map": f, "alpha": th.tuple_label(&alpha) })),
                ),
            };
            vec![check]
        }
        Entity::Institution(d) => elementary_checks(&d.institution, ""),
        Entity::AfInst(d) => afinst_checks(d)?,
    })
}

fn system_checks(sys: &AffineSystem, budget: Budget) -> Result<Vec<CheckResult>> {
    let alg = sys.algebra();
    let mut checks = vec![CheckResult::outcome("is_system", is_system(sys), |f| {
        json!({
            "symbol": f.symbol,
            "args": f.args.iter().map(|&a| alg.label(a)).collect::<Vec<_>>(),
            "point": sys.points()[f.point],
        })
    })];
    checks.push(match separation_witness(sys) {
        None => CheckResult::new("separated", Status::Pass, None),
        Some((a, b)) => CheckResult::new(
            "separated",
            Status::Info,
            Some(json!({ "elements": [alg.label(a), alg.label(b)] })),
        ),
    });
    let lattice = alg.has(JOIN) && alg.has(MEET) && alg.has(BOT) && alg.has(TOP);
    if sys.theory().is_two_valued() && lattice {
        let report = vickers_axiom_check(sys, None, budget)?;
        checks.push(CheckResult::outcome("vickers", report.outcome, |f| {
            json!({
                "axiom": match f.axiom { VickersAxiom::Meet => "meet", VickersAxiom::Join => "join" },
                "subset": f.subset.iter().map(|&a| alg.label(a)).collect::<Vec<_>>(),
                "point": sys.points()[f.point],
            })
        }));
    }
    Ok(checks)
}

fn arrow(sign: &FiniteCategory, f: usize) -> &str {
    sign.arrow_name(f)
}

const ELEMENTARY_STAGES: [&str; 4] = [
    "sign_category",
    "sen_functor",
    "mod_functor",
    "satisfaction",
];

/// The four stages of the elementary checker: the first failing stage is
/// reported, later stages are skipped.
fn elementary_checks(inst: &ElementaryInstitution, prefix: &str) -> Vec<CheckResult> {
    let names = ELEMENTARY_STAGES.map(|n| format!("{prefix}{n}"));
    let (stage, witness) = match check_elementary(inst) {
        Outcome::Pass => (names.len(), None),
        Outcome::Fail(ElementaryFailure::Category(c)) => {
            (0, Some(json!({ "failure": format!("{c:?}") })))
        }
        Outcome::Fail(ElementaryFailure::Sen(c)) => {
            (1, Some(json!({ "failure": format!("{c:?}") })))
        }
        Outcome::Fail(ElementaryFailure::Mod(c)) => {
            (2, Some(json!({ "failure": format!("{c:?}") })))
        }
        Outcome::Fail(ElementaryFailure::Satisfaction {
            arrow: f,
            model,
            sentence,
        }) => {
            let sign = inst.sign();
            let w = json!({
                "arrow": arrow(sign, f),
                "model": inst.models().set(sign.cod(f))[model],
                "sentence": inst.sen().set(sign.dom(f))[sentence],
            });
            (3, Some(w))
        }
    };
    names
        .iter()
        .enumerate()
        .map(|(i, n)| match i.cmp(&stage) {
            std::cmp::Ordering::Less => CheckResult::new(n, Status::Pass, None),
            std::cmp::Ordering::Equal => CheckResult::new(n, Status::Fail, witness.clone()),
            std::cmp::Ordering::Greater => CheckResult::new(n, Status::Skipped, None),
        })
        .collect()
}

fn affine_failure(sign: &FiniteCategory, f: &AffineInstFailure) -> Value {
    match f {
        AffineInstFailure::Category(c) => json!({ "category": format!("{c:?}") }),
        AffineInstFailure::System { sig, failure } => json!({
            "signature": sign.objects()[*sig],
            "symbol": failure.symbol,
            "args": failure.args,
            "point": failure.point,
        }),
        AffineInstFailure::Morphism { arrow: a, failure } => {
            json!({ "arrow": arrow(sign, *a), "failure": format!("{failure:?}") })
        }
        AffineInstFailure::Continuity { arrow: a } => {
            json!({ "arrow": arrow(sign, *a), "failure": "not continuous" })
        }
        AffineInstFailure::Identity { object } => json!({ "identity": sign.objects()[*object] }),
        AffineInstFailure::Composition { g, f } => {
            json!({ "composite": [arrow(sign, *g), arrow(sign, *f)] })
        }
    }
}

fn afinst_checks(d: &AfInstDecl) -> Result<Vec<CheckResult>> {
    let (sign, outcome) = match &d.body {
        AfInstBody::Systems(ai) => (ai.sign(), check_affine_institution(ai)?),
        AfInstBody::Spaces(si) => (si.sign(), check_spatial_institution(si)?),
        AfInstBody::Algebras(li) => (li.sign(), check_localic_institution(li)?),
    };
    let passed = outcome.passed();
    let mut checks = vec![CheckResult::outcome("functor", outcome, |f| {
        affine_failure(sign, &f)
    })];
    if let AfInstBody::Systems(ai) = &d.body {
        if passed {
            checks.extend(elementary_checks(&geo(ai)?, "geo_"));
        } else {
            checks.extend(
                ELEMENTARY_STAGES
                    .map(|n| CheckResult::new(&format!("geo_{n}"), Status::Skipped, None)),
            );
        }
    }
    Ok(checks)
}
