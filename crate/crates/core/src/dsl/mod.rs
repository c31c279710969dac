//! The `.afs` text format: a block-structured description of algebras,
//! spaces, systems, theory morphisms and institutions, with a total parser,
//! a printer whose output parses back to an equal workspace, and the JSON
//! check report.
//!
//! ```text
//! afs 1
//! algebra C3 variety=Frame {
//!   elements: bot m top;
//!   op bot/0: bot;
//!   op join/2: bot m top, m m top, top top top;
//!   op meet/2: bot bot bot, bot m m, bot m top;
//!   op top/0: top;
//! }
//! system SYS1 over 2 {
//!   points: p q;
//!   carrier: C3;
//!   ext: bot -> (0 0), m -> (0 1), top -> (1 1);
//! }
//! ```
//!
//! Operation tables list `|A|^arity` entries in row-major order with the
//! last argument varying fastest; commas separate rows and are optional.
//! Tuples are written over the declared point order. Comments run from `#`
//! to the end of the line. The base `2`, the two-element frame with
//! elements `0 1`, is available without a declaration.

mod lexer;
mod parser;
mod printer;
mod report;

use std::fmt;

use crate::algebra::{FiniteAlgebra, Variety};
use crate::functor::TheoryMorphism;
use crate::institution::{
    AffineInstitution, ElementaryInstitution, LocalicAffineInstitution, SpatialAffineInstitution,
};
use crate::topology::{AffineSpace, AffineSystem};

pub use lexer::is_word;
pub use parser::{parse, parse_strict};
pub use printer::{print, print_entity};
pub use report::{
    check_workspace, emit_report, CheckResult, EntityReport, Report, Status, Summary,
    SCHEMA_VERSION, TOOL_VERSION,
};

/// Current version of the text format, written as `afs 1`.
pub const FORMAT_VERSION: u32 = 1;

/// A region of the input; `line` and `col` are 1-based, `col` counts
/// characters, `offset` and `len` count bytes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub offset: usize,
    pub len: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Span,
    pub message: String,
    pub witness: Option<String>,
}

impl Diagnostic {
    pub fn error(span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            span,
            message: message.into(),
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {level}: {}", self.span, self.message)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness: {w})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Algebra,
    Space,
    System,
    TheoryMorphism,
    Institution,
    AfInst,
}

impl EntityKind {
    pub fn keyword(self) -> &'static str {
        match self {
            EntityKind::Algebra => "algebra",
            EntityKind::Space => "space",
            EntityKind::System => "system",
            EntityKind::TheoryMorphism => "theorymorphism",
            EntityKind::Institution => "institution",
            EntityKind::AfInst => "afinst",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub name: String,
    pub variety: Variety,
    pub algebra: FiniteAlgebra,
}

/// A space over the theory whose base is the algebra named `over`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDecl {
    pub name: String,
    pub over: String,
    pub space: AffineSpace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDecl {
    pub name: String,
    pub over: String,
    pub carrier: String,
    pub system: AffineSystem,
}

/// A theory morphism between the theories based at `from` and `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryMorphismDecl {
    pub name: String,
    pub from: String,
    pub to: String,
    pub morphism: TheoryMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstitutionDecl {
    pub name: String,
    pub institution: ElementaryInstitution,
}

/// The three flavours of affine institution, distinguished by what the
/// signatures are sent to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AfInstBody {
    Systems(AffineInstitution),
    Spaces(SpatialAffineInstitution),
    Algebras(LocalicAffineInstitution),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfInstDecl {
    pub name: String,
    pub over: String,
    /// Name of the entity assigned to each signature, in object order.
    pub at: Vec<String>,
    pub body: AfInstBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entity {
    Algebra(AlgebraDecl),
    Space(SpaceDecl),
    System(SystemDecl),
    TheoryMorphism(TheoryMorphismDecl),
    Institution(InstitutionDecl),
    AfInst(AfInstDecl),
}

impl Entity {
    pub fn kind(&self) -> EntityKind {
        match self {
            Entity::Algebra(_) => EntityKind::Algebra,
            Entity::Space(_) => EntityKind::Space,
            Entity::System(_) => EntityKind::System,
            Entity::TheoryMorphism(_) => EntityKind::TheoryMorphism,
            Entity::Institution(_) => EntityKind::Institution,
            Entity::AfInst(_) => EntityKind::AfInst,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Entity::Algebra(d) => &d.name,
            Entity::Space(d) => &d.name,
            Entity::System(d) => &d.name,
            Entity::TheoryMorphism(d) => &d.name,
            Entity::Institution(d) => &d.name,
            Entity::AfInst(d) => &d.name,
        }
    }
}

/// Parsed entities in declaration order, with the span of each
/// declaration's name. Equality ignores spans.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    entities: Vec<Entity>,
    spans: Vec<Span>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.entities == other.entities
    }
}

impl Eq for Workspace {}

macro_rules! lookup {
    ($fn:ident, $variant:ident, $decl:ty) => {
        pub fn $fn(&self, name: &str) -> Option<&$decl> {
            self.entities.iter().find_map(|e| match e {
                Entity::$variant(d) if d.name == name => Some(d),
                _ => None,
            })
        }
    };
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn get(&self, kind: EntityKind, name: &str) -> Option<&Entity> {
        self.entities
            .iter()
            .find(|e| e.kind() == kind && e.name() == name)
    }

    pub fn span_of(&self, kind: EntityKind, name: &str) -> Option<Span> {
        self.entities
            .iter()
            .position(|e| e.kind() == kind && e.name() == name)
            .map(|i| self.spans[i])
    }

    /// Adds an entity; names must be unique per kind.
    pub fn insert(&mut self, entity: Entity, span: Span) -> crate::Result<()> {
        if self.get(entity.kind(), entity.name()).is_some() {
            return Err(crate::Error::Malformed(format!(
                "{} `{}` is already declared",
                entity.kind().keyword(),
                entity.name()
            )));
        }
        self.entities.push(entity);
        self.spans.push(span);
        Ok(())
    }

    lookup!(algebra, Algebra, AlgebraDecl);
    lookup!(space, Space, SpaceDecl);
    lookup!(system, System, SystemDecl);
    lookup!(theory_morphism, TheoryMorphism, TheoryMorphismDecl);
    lookup!(institution, Institution, InstitutionDecl);
    lookup!(afinst, AfInst, AfInstDecl);
}
