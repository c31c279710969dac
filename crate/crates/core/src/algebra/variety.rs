use std::fmt;

use super::{all_tuples, FiniteAlgebra, Signature, Symbol, BOT, JOIN, MEET, NEG, TOP};
use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// A term over variables `x0, x1, ..` and named operation symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Op(&'static str, Vec<Term>),
}

impl Term {
    fn eval(&self, alg: &FiniteAlgebra, env: &[usize]) -> usize {
        match self {
            Term::Var(i) => env[*i],
            Term::Op(name, args) => {
                let vals: Vec<usize> = args.iter().map(|t| t.eval(alg, env)).collect();
                alg.op(name, &vals)
                    .expect("signature checked before evaluation")
            }
        }
    }
}

fn x() -> Term {
    Term::Var(0)
}
fn y() -> Term {
    Term::Var(1)
}
fn z() -> Term {
    Term::Var(2)
}
fn join(a: Term, b: Term) -> Term {
    Term::Op(JOIN, vec![a, b])
}
fn meet(a: Term, b: Term) -> Term {
    Term::Op(MEET, vec![a, b])
}
fn bot() -> Term {
    Term::Op(BOT, vec![])
}
fn top() -> Term {
    Term::Op(TOP, vec![])
}
fn neg(a: Term) -> Term {
    Term::Op(NEG, vec![a])
}

/// A universally quantified equation `lhs = rhs` in `vars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    pub name: &'static str,
    pub vars: usize,
    pub lhs: Term,
    pub rhs: Term,
}

impl Law {
    fn new(name: &'static str, vars: usize, lhs: Term, rhs: Term) -> Self {
        Law {
            name,
            vars,
            lhs,
            rhs,
        }
    }
}

/// The varieties with a built-in law suite.
///
/// `Unconstrained` carries no laws; it is the equation-free instance used for
/// Chu-style systems over an arbitrary base set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variety {
    JoinSemilattice,
    MeetSemilattice,
    Frame,
    CompleteBooleanAlgebra,
    ClosureSemilattice,
    Unconstrained,
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Variety {
    pub const ALL: [Variety; 6] = [
        Variety::JoinSemilattice,
        Variety::MeetSemilattice,
        Variety::Frame,
        Variety::CompleteBooleanAlgebra,
        Variety::ClosureSemilattice,
        Variety::Unconstrained,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variety::JoinSemilattice => "JoinSemilattice",
            Variety::MeetSemilattice => "MeetSemilattice",
            Variety::Frame => "Frame",
            Variety::CompleteBooleanAlgebra => "CompleteBooleanAlgebra",
            Variety::ClosureSemilattice => "ClosureSemilattice",
            Variety::Unconstrained => "Unconstrained",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "JoinSemilattice" => Some(Variety::JoinSemilattice),
            "MeetSemilattice" => Some(Variety::MeetSemilattice),
            "Frame" | "Frm" => Some(Variety::Frame),
            "CompleteBooleanAlgebra" | "CBAlg" | "CBA" => Some(Variety::CompleteBooleanAlgebra),
            "ClosureSemilattice" | "CSL" => Some(Variety::ClosureSemilattice),
            "Unconstrained" | "Any" => Some(Variety::Unconstrained),
            _ => None,
        }
    }

    pub fn required_symbols(self) -> Vec<Symbol> {
        let names: &[(&str, usize)] = match self {
            Variety::JoinSemilattice => &[(JOIN, 2), (BOT, 0)],
            Variety::MeetSemilattice => &[(MEET, 2), (TOP, 0)],
            Variety::Frame => &[(JOIN, 2), (MEET, 2), (BOT, 0), (TOP, 0)],
            Variety::CompleteBooleanAlgebra => {
                &[(JOIN, 2), (MEET, 2), (BOT, 0), (TOP, 0), (NEG, 1)]
            }
            Variety::ClosureSemilattice => &[(MEET, 2), (TOP, 0), (BOT, 0)],
            Variety::Unconstrained => &[],
        };
        names.iter().map(|&(n, a)| Symbol::new(n, a)).collect()
    }

    pub fn signature(self) -> Signature {
        Signature::new(self.required_symbols()).expect("built-in signatures are well formed")
    }

    /// The law suite, in reporting order.
    pub fn laws(self) -> Vec<Law> {
        let join_laws = || {
            vec![
                Law::new(
                    "join_assoc",
                    3,
                    join(join(x(), y()), z()),
                    join(x(), join(y(), z())),
                ),
                Law::new("join_comm", 2, join(x(), y()), join(y(), x())),
                Law::new("join_idem", 1, join(x(), x()), x()),
                Law::new("join_unit_bot", 1, join(x(), bot()), x()),
            ]
        };
        let meet_laws = || {
            vec![
                Law::new(
                    "meet_assoc",
                    3,
                    meet(meet(x(), y()), z()),
                    meet(x(), meet(y(), z())),
                ),
                Law::new("meet_comm", 2, meet(x(), y()), meet(y(), x())),
                Law::new("meet_idem", 1, meet(x(), x()), x()),
                Law::new("meet_unit_top", 1, meet(x(), top()), x()),
            ]
        };
        let lattice = || {
            let mut v = join_laws();
            v.extend(meet_laws());
            v.push(Law::new("absorb_join", 2, join(x(), meet(x(), y())), x()));
            v.push(Law::new("absorb_meet", 2, meet(x(), join(x(), y())), x()));
            v.push(Law::new(
                "distributive",
                3,
                meet(x(), join(y(), z())),
                join(meet(x(), y()), meet(x(), z())),
            ));
            v
        };
        match self {
            Variety::JoinSemilattice => join_laws(),
            Variety::MeetSemilattice => meet_laws(),
            Variety::Frame => lattice(),
            Variety::CompleteBooleanAlgebra => {
                let mut v = lattice();
                v.push(Law::new("complement_join", 1, join(x(), neg(x())), top()));
                v.push(Law::new("complement_meet", 1, meet(x(), neg(x())), bot()));
                v
            }
            Variety::ClosureSemilattice => {
                let mut v = meet_laws();
                v.push(Law::new("bot_least", 1, meet(x(), bot()), bot()));
                v
            }
            Variety::Unconstrained => vec![],
        }
    }

    /// The two-element algebra `{0, 1}` of this variety's signature, with
    /// `0` the bottom. For `Unconstrained` it has no operations.
    pub fn two(self) -> FiniteAlgebra {
        let sig = self.signature();
        FiniteAlgebra::from_fn(vec!["0".into(), "1".into()], &sig, |s, args| {
            match s.name.as_str() {
                JOIN => args[0].max(args[1]),
                MEET => args[0].min(args[1]),
                BOT => 0,
                TOP => 1,
                NEG => 1 - args[0],
                _ => unreachable!("built-in signature"),
            }
        })
        .expect("two-element algebra")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: &'static str,
    /// Element assigned to each variable `x0, x1, ..`.
    pub assignment: Vec<usize>,
}

/// Per-law verdicts, in the variety's law order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub variety: Variety,
    pub results: Vec<(&'static str, Outcome<LawFailure>)>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, o)| o.passed())
    }

    pub fn first_failure(&self) -> Option<&LawFailure> {
        self.results.iter().find_map(|(_, o)| o.witness())
    }
}

/// Checks every law of `variety` over all assignments into `alg`.
pub fn check_laws(alg: &FiniteAlgebra, variety: Variety) -> Result<LawReport> {
    alg.signature().require(&variety.required_symbols())?;
    let n = alg.size();
    let results = variety
        .laws()
        .into_iter()
        .map(|law| {
            let witness = all_tuples(n, law.vars)
                .find(|env| law.lhs.eval(alg, env) != law.rhs.eval(alg, env))
                .map(|assignment| LawFailure {
                    law: law.name,
                    assignment,
                });
            (law.name, Outcome::from_witness(witness))
        })
        .collect();
    Ok(LawReport { variety, results })
}

/// Errors unless `alg` satisfies every law of `variety`.
pub fn require_laws(alg: &FiniteAlgebra, variety: Variety) -> Result<()> {
    let report = check_laws(alg, variety)?;
    match report.first_failure() {
        None => Ok(()),
        Some(f) => Err(Error::LawViolation(format!(
            "{} law `{}` fails at {:?}",
            variety,
            f.law,
            f.assignment
                .iter()
                .map(|&e| alg.label(e))
                .collect::<Vec<_>>()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn two_chain_is_a_frame() {
        assert!(check_laws(&catalog::two(), Variety::Frame)
            .unwrap()
            .passed());
    }

    #[test]
    fn boolean_diamond_is_cba() {
        assert!(
            check_laws(&catalog::diamond_cba(), Variety::CompleteBooleanAlgebra)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn three_chain_with_self_complement_fails_at_m() {
        let c = catalog::chain3_fake_complement();
        let report = check_laws(&c, Variety::CompleteBooleanAlgebra).unwrap();
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.law, "complement_join");
        assert_eq!(failure.assignment, vec![c.element("m").unwrap()]);
        // distributivity and the lattice laws still hold on the chain
        let distributive = report
            .results
            .iter()
            .find(|(n, _)| *n == "distributive")
            .unwrap();
        assert!(distributive.1.passed());
    }

    #[test]
    fn missing_symbol_is_named() {
        let err = check_laws(&catalog::two(), Variety::CompleteBooleanAlgebra).unwrap_err();
        assert_eq!(err, Error::SignatureMismatch("neg".into()));
    }

    #[test]
    fn builtin_two_element_algebras_satisfy_their_laws() {
        for v in Variety::ALL {
            assert!(check_laws(&v.two(), v).unwrap().passed(), "{v}");
        }
    }

    #[test]
    fn non_distributive_m3_is_not_a_frame() {
        let m3 = catalog::m3();
        let report = check_laws(&m3, Variety::Frame).unwrap();
        assert_eq!(report.first_failure().unwrap().law, "distributive");
    }
}
