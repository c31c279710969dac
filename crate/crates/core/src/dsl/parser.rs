use std::collections::{BTreeMap, BTreeSet};

use super::lexer::{lex, Tok, Token};
use super::{
    AfInstBody, AfInstDecl, AlgebraDecl, Diagnostic, Entity, InstitutionDecl, Severity, SpaceDecl,
    Span, SystemDecl, TheoryMorphismDecl, Workspace, FORMAT_VERSION,
};
use crate::algebra::{FiniteAlgebra, Homomorphism, Symbol, Variety, MAX_ARITY};
use crate::cat::{FiniteCategory, SetFunctor};
use crate::functor::TheoryMorphism;
use crate::institution::{
    AffineInstitution, ElementaryInstitution, LocalicAffineInstitution, SpatialAffineInstitution,
};
use crate::topology::{AffineSpace, AffineSystem, AffineTheory, SystemMorphism, Tuple};

/// Base name that needs no declaration: the two-element frame.
pub(crate) const BUILTIN_TWO: &str = "2";

const KEYWORDS: &[&str] = &[
    "algebra",
    "space",
    "system",
    "theorymorphism",
    "institution",
    "afinst",
];

#[derive(Clone, Debug)]
struct Name {
    text: String,
    span: Span,
}

type Pairs = Vec<(Name, Name)>;

struct RawOp {
    name: Name,
    arity: Name,
    entries: Vec<Name>,
}

struct RawSign {
    span: Span,
    objects: Vec<Name>,
    arrows: Vec<(Name, Name, Name)>,
    composites: Vec<(Name, Name, Name)>,
}

struct RawMap {
    arrow: Name,
    points: Option<Pairs>,
    algebra: Option<Pairs>,
}

struct RawAction {
    arrow: Name,
    sen: Pairs,
    models: Pairs,
}

/// A signature name with a list of labels.
type NamedSet = (Name, Vec<Name>);
/// A signature name with, per model, the sentences it satisfies.
type SatRows = (Name, Vec<NamedSet>);

enum Raw {
    Algebra {
        name: Name,
        variety: Name,
        elements: Option<Vec<Name>>,
        ops: Vec<RawOp>,
    },
    Space {
        name: Name,
        over: Name,
        points: Option<Vec<Name>>,
        opens: Vec<(Span, Vec<Name>)>,
    },
    System {
        name: Name,
        over: Name,
        points: Option<Vec<Name>>,
        carrier: Option<Name>,
        ext: Vec<(Name, Span, Vec<Name>)>,
    },
    TheoryMorphism {
        name: Name,
        ends: Option<(Name, Name)>,
        h: Pairs,
        rename: Pairs,
    },
    Institution {
        name: Name,
        sign: Option<RawSign>,
        sen: Vec<NamedSet>,
        models: Vec<NamedSet>,
        sat: Vec<SatRows>,
        actions: Vec<RawAction>,
    },
    AfInst {
        name: Name,
        over: Name,
        sign: Option<RawSign>,
        at: Vec<(Name, Name)>,
        maps: Vec<RawMap>,
    },
}

type PResult<T> = Result<T, ()>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: Span,
    diags: Vec<Diagnostic>,
}

impl Parser {
    fn new(text: &str) -> Self {
        let line = text.matches('\n').count() + 1;
        let col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Parser {
            toks: lex(text),
            pos: 0,
            end: Span {
                line,
                col,
                offset: text.len(),
                len: 0,
            },
            diags: Vec::new(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |t| t.span)
    }

    fn error<T>(&mut self, span: Span, message: impl Into<String>) -> PResult<T> {
        self.diags.push(Diagnostic::error(span, message));
        Err(())
    }

    fn unexpected<T>(&mut self, expected: &str) -> PResult<T> {
        let found = self
            .peek()
            .map_or("end of input".to_string(), Tok::describe);
        self.error(self.span(), format!("expected {expected}, found {found}"))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        let span = self.span();
        if self.eat(&tok) {
            Ok(span)
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(x)) if x == w)
    }

    fn keyword(&mut self, w: &str) -> PResult<Span> {
        let span = self.span();
        if self.at_word(w) {
            self.pos += 1;
            Ok(span)
        } else {
            self.unexpected(&format!("`{w}`"))
        }
    }

    fn word(&mut self, what: &str) -> PResult<Name> {
        match self.toks.get(self.pos) {
            Some(Token {
                tok: Tok::Word(w),
                span,
            }) => {
                let name = Name {
                    text: w.clone(),
                    span: *span,
                };
                self.pos += 1;
                Ok(name)
            }
            _ => self.unexpected(what),
        }
    }

    /// Words in comma-separated groups, up to and including `;`.
    fn groups_until_semi(&mut self) -> PResult<Vec<Vec<Name>>> {
        let mut groups = vec![Vec::new()];
        loop {
            match self.peek() {
                Some(Tok::Semi) => {
                    self.pos += 1;
                    if groups.last().is_some_and(Vec::is_empty) {
                        groups.pop();
                    }
                    return Ok(groups);
                }
                Some(Tok::Comma) => {
                    self.pos += 1;
                    groups.push(Vec::new());
                }
                Some(Tok::Word(_)) => {
                    let w = self.word("a name")?;
                    groups.last_mut().expect("non-empty").push(w);
                }
                _ => return self.unexpected("a name or `;`"),
            }
        }
    }

    fn words_until_semi(&mut self) -> PResult<Vec<Name>> {
        Ok(self.groups_until_semi()?.into_iter().flatten().collect())
    }

    fn braced_words(&mut self) -> PResult<Vec<Name>> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Word(_)) => out.push(self.word("a name")?),
                _ => return self.unexpected("a name or `}`"),
            }
        }
    }

    fn pair(&mut self) -> PResult<(Name, Name)> {
        let a = self.word("a name")?;
        self.expect(Tok::Arrow)?;
        let b = self.word("a name")?;
        Ok((a, b))
    }

    /// `a -> b, c -> d` up to (not including) `close`.
    fn pairs(&mut self, close: &Tok) -> PResult<Pairs> {
        let mut out = Vec::new();
        while self.peek() != Some(close) {
            out.push(self.pair()?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(out)
    }

    fn braced_pairs(&mut self) -> PResult<Pairs> {
        self.expect(Tok::LBrace)?;
        let p = self.pairs(&Tok::RBrace)?;
        self.expect(Tok::RBrace)?;
        Ok(p)
    }

    fn tuple(&mut self) -> PResult<(Span, Vec<Name>)> {
        let span = self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::RParen) => {
                    self.pos += 1;
                    return Ok((span, out));
                }
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Word(_)) => out.push(self.word("a label")?),
                _ => return self.unexpected("a label or `)`"),
            }
        }
    }

    fn colon_item(&mut self, what: &str) -> PResult<Span> {
        let span = self.keyword(what)?;
        self.expect(Tok::Colon)?;
        Ok(span)
    }

    fn once<T>(&mut self, slot: &mut Option<T>, value: T, span: Span, what: &str) -> PResult<()> {
        if slot.is_some() {
            return self.error(span, format!("`{what}` given twice"));
        }
        *slot = Some(value);
        Ok(())
    }

    /// Skips past a failed block: to the brace closing it, or to the next
    /// declaration keyword at the start of a line or at depth zero.
    fn recover(&mut self, start: usize) {
        self.pos = start + 1;
        let mut depth = 0usize;
        let mut entered = false;
        while let Some(t) = self.toks.get(self.pos) {
            match &t.tok {
                Tok::LBrace => {
                    depth += 1;
                    entered = true;
                }
                Tok::RBrace => {
                    depth = depth.saturating_sub(1);
                    if entered && depth == 0 {
                        self.pos += 1;
                        return;
                    }
                }
                Tok::Word(w)
                    if KEYWORDS.contains(&w.as_str()) && (depth == 0 || t.span.col == 1) =>
                {
                    return
                }
                _ => {}
            }
            self.pos += 1;
        }
    }

    fn block(&mut self, keyword: &str) -> PResult<Raw> {
        self.pos += 1;
        match keyword {
            "algebra" => self.algebra(),
            "space" => self.space(),
            "system" => self.system(),
            "theorymorphism" => self.theory_morphism(),
            "institution" => self.institution(),
            _ => self.afinst(),
        }
    }

    fn algebra(&mut self) -> PResult<Raw> {
        let name = self.word("an algebra name")?;
        self.keyword("variety")?;
        self.expect(Tok::Eq)?;
        let variety = self.word("a variety name")?;
        self.expect(Tok::LBrace)?;
        let mut elements = None;
        let mut ops = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if self.at_word("elements") {
                let span = self.colon_item("elements")?;
                let e = self.words_until_semi()?;
                self.once(&mut elements, e, span, "elements")?;
            } else if self.at_word("op") {
                self.pos += 1;
                let op = self.word("an operation name")?;
                self.expect(Tok::Slash)?;
                let arity = self.word("an arity")?;
                self.expect(Tok::Colon)?;
                let entries = self.words_until_semi()?;
                ops.push(RawOp {
                    name: op,
                    arity,
                    entries,
                });
            } else {
                return self.unexpected("`elements`, `op` or `}`");
            }
        }
        Ok(Raw::Algebra {
            name,
            variety,
            elements,
            ops,
        })
    }

    fn space(&mut self) -> PResult<Raw> {
        let name = self.word("a space name")?;
        self.keyword("over")?;
        let over = self.word("an algebra name")?;
        self.expect(Tok::LBrace)?;
        let mut points = None;
        let mut opens = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if self.at_word("points") {
                let span = self.colon_item("points")?;
                let p = self.words_until_semi()?;
                self.once(&mut points, p, span, "points")?;
            } else if self.at_word("opens") {
                self.colon_item("opens")?;
                while !self.eat(&Tok::Semi) {
                    if !self.eat(&Tok::Comma) {
                        opens.push(self.tuple()?);
                    }
                }
            } else {
                return self.unexpected("`points`, `opens` or `}`");
            }
        }
        Ok(Raw::Space {
            name,
            over,
            points,
            opens,
        })
    }

    fn system(&mut self) -> PResult<Raw> {
        let name = self.word("a system name")?;
        self.keyword("over")?;
        let over = self.word("an algebra name")?;
        self.expect(Tok::LBrace)?;
        let mut points = None;
        let mut carrier = None;
        let mut ext = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if self.at_word("points") {
                let span = self.colon_item("points")?;
                let p = self.words_until_semi()?;
                self.once(&mut points, p, span, "points")?;
            } else if self.at_word("carrier") {
                let span = self.colon_item("carrier")?;
                let c = self.word("an algebra name")?;
                self.expect(Tok::Semi)?;
                self.once(&mut carrier, c, span, "carrier")?;
            } else if self.at_word("ext") {
                self.colon_item("ext")?;
                while !self.eat(&Tok::Semi) {
                    let element = self.word("an element label")?;
                    self.expect(Tok::Arrow)?;
                    let (span, t) = self.tuple()?;
                    ext.push((element, span, t));
                    if !self.eat(&Tok::Comma) {
                        self.expect(Tok::Semi)?;
                        break;
                    }
                }
            } else {
                return self.unexpected("`points`, `carrier`, `ext` or `}`");
            }
        }
        Ok(Raw::System {
            name,
            over,
            points,
            carrier,
            ext,
        })
    }

    fn theory_morphism(&mut self) -> PResult<Raw> {
        let name = self.word("a theory morphism name")?;
        self.expect(Tok::LBrace)?;
        let mut ends = None;
        let mut h = None;
        let mut rename = None;
        while !self.eat(&Tok::RBrace) {
            if self.at_word("from") {
                let span = self.keyword("from")?;
                let from = self.word("an algebra name")?;
                self.keyword("to")?;
                let to = self.word("an algebra name")?;
                self.expect(Tok::Semi)?;
                self.once(&mut ends, (from, to), span, "from")?;
            } else if self.at_word("h") {
                let span = self.colon_item("h")?;
                let p = self.pairs(&Tok::Semi)?;
                self.expect(Tok::Semi)?;
                self.once(&mut h, p, span, "h")?;
            } else if self.at_word("rename") {
                let span = self.colon_item("rename")?;
                let p = self.pairs(&Tok::Semi)?;
                self.expect(Tok::Semi)?;
                self.once(&mut rename, p, span, "rename")?;
            } else {
                return self.unexpected("`from`, `h`, `rename` or `}`");
            }
        }
        Ok(Raw::TheoryMorphism {
            name,
            ends,
            h: h.unwrap_or_default(),
            rename: rename.unwrap_or_default(),
        })
    }

    fn sign(&mut self) -> PResult<RawSign> {
        let span = self.keyword("sign")?;
        self.expect(Tok::LBrace)?;
        let mut objects = None;
        let mut arrows = Vec::new();
        let mut composites = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if self.at_word("objects") {
                let s = self.colon_item("objects")?;
                let o = self.words_until_semi()?;
                self.once(&mut objects, o, s, "objects")?;
            } else if self.at_word("arrow") {
                self.pos += 1;
                let a = self.word("an arrow name")?;
                self.expect(Tok::Colon)?;
                let (d, c) = self.pair()?;
                self.expect(Tok::Semi)?;
                arrows.push((a, d, c));
            } else if self.at_word("compose") {
                self.pos += 1;
                let g = self.word("an arrow name")?;
                self.keyword("after")?;
                let f = self.word("an arrow name")?;
                self.expect(Tok::Eq)?;
                let h = self.word("an arrow name")?;
                self.expect(Tok::Semi)?;
                composites.push((g, f, h));
            } else {
                return self.unexpected("`objects`, `arrow`, `compose` or `}`");
            }
        }
        self.eat(&Tok::Semi);
        Ok(RawSign {
            span,
            objects: objects.unwrap_or_default(),
            arrows,
            composites,
        })
    }

    fn institution(&mut self) -> PResult<Raw> {
        let name = self.word("an institution name")?;
        self.expect(Tok::LBrace)?;
        let mut sign = None;
        let (mut sen, mut models, mut sat, mut actions) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        while !self.eat(&Tok::RBrace) {
            if self.at_word("sign") {
                let span = self.span();
                let s = self.sign()?;
                self.once(&mut sign, s, span, "sign")?;
            } else if self.at_word("sen") || self.at_word("mod") {
                let is_sen = self.at_word("sen");
                self.pos += 1;
                let obj = self.word("a signature name")?;
                self.expect(Tok::Eq)?;
                let set = self.braced_words()?;
                self.expect(Tok::Semi)?;
                if is_sen { &mut sen } else { &mut models }.push((obj, set));
            } else if self.at_word("sat") {
                self.pos += 1;
                let obj = self.word("a signature name")?;
                self.expect(Tok::Colon)?;
                let mut rows = Vec::new();
                while self.peek() != Some(&Tok::Semi) {
                    let m = self.word("a model name")?;
                    self.expect(Tok::Arrow)?;
                    rows.push((m, self.braced_words()?));
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::Semi)?;
                sat.push((obj, rows));
            } else if self.at_word("action") {
                self.pos += 1;
                let arrow = self.word("an arrow name")?;
                self.expect(Tok::Colon)?;
                self.keyword("sen")?;
                let sen_map = self.braced_pairs()?;
                self.keyword("mod")?;
                let mod_map = self.braced_pairs()?;
                self.expect(Tok::Semi)?;
                actions.push(RawAction {
                    arrow,
                    sen: sen_map,
                    models: mod_map,
                });
            } else {
                return self.unexpected("`sign`, `sen`, `mod`, `sat`, `action` or `}`");
            }
        }
        Ok(Raw::Institution {
            name,
            sign,
            sen,
            models,
            sat,
            actions,
        })
    }

    fn afinst(&mut self) -> PResult<Raw> {
        let name = self.word("an affine institution name")?;
        self.keyword("over")?;
        let over = self.word("an algebra name")?;
        self.expect(Tok::LBrace)?;
        let mut sign = None;
        let (mut at, mut maps) = (Vec::new(), Vec::new());
        while !self.eat(&Tok::RBrace) {
            if self.at_word("sign") {
                let span = self.span();
                let s = self.sign()?;
                self.once(&mut sign, s, span, "sign")?;
            } else if self.at_word("at") {
                self.pos += 1;
                let obj = self.word("a signature name")?;
                self.expect(Tok::Eq)?;
                let target = self.word("an entity name")?;
                self.expect(Tok::Semi)?;
                at.push((obj, target));
            } else if self.at_word("map") {
                self.pos += 1;
                let arrow = self.word("an arrow name")?;
                self.expect(Tok::Colon)?;
                let mut points = None;
                let mut algebra = None;
                if self.eat(&Tok::Word("points".into())) {
                    points = Some(self.braced_pairs()?);
                }
                if self.eat(&Tok::Word("algebra".into())) {
                    algebra = Some(self.braced_pairs()?);
                }
                self.expect(Tok::Semi)?;
                maps.push(RawMap {
                    arrow,
                    points,
                    algebra,
                });
            } else {
                return self.unexpected("`sign`, `at`, `map` or `}`");
            }
        }
        Ok(Raw::AfInst {
            name,
            over,
            sign,
            at,
            maps,
        })
    }
}

/// Parses `text` into a workspace, collecting every diagnostic. Parsing is
/// total: a malformed block is skipped and parsing resumes at the next
/// declaration; entities that fail to build are left out.
pub fn parse(text: &str) -> (Workspace, Vec<Diagnostic>) {
    let mut p = Parser::new(text);
    let mut ws = Workspace::new();
    let mut first = true;
    while p.pos < p.toks.len() {
        let start = p.pos;
        let span = p.span();
        let word = match p.peek() {
            Some(Tok::Word(w)) => Some(w.clone()),
            _ => None,
        };
        match word.as_deref() {
            Some("afs") => {
                p.pos += 1;
                if !first {
                    p.diags
                        .push(Diagnostic::error(span, "the `afs` header must come first"));
                }
                match p.word("a format version") {
                    Ok(v) if v.text != FORMAT_VERSION.to_string() => {
                        p.diags.push(Diagnostic::error(
                            v.span,
                            format!("unsupported format version `{}`", v.text),
                        ))
                    }
                    Ok(_) => {}
                    Err(()) => p.recover(start),
                }
            }
            Some(kw) if KEYWORDS.contains(&kw) => match p.block(kw) {
                Ok(raw) => {
                    let mut b = Builder {
                        ws: &ws,
                        diags: &mut p.diags,
                    };
                    if let Some((entity, span)) = b.build(raw) {
                        if let Err(e) = ws.insert(entity, span) {
                            p.diags.push(Diagnostic::error(span, e.to_string()));
                        }
                    }
                }
                Err(()) => p.recover(start),
            },
            _ => {
                let _: PResult<()> = p.unexpected("a declaration");
                p.recover(start);
            }
        }
        first = false;
    }
    (ws, p.diags)
}

/// Like [`parse`], but succeeds only without error diagnostics.
pub fn parse_strict(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
    let (ws, diags) = parse(text);
    if diags.iter().any(|d| d.severity == Severity::Error) {
        Err(diags)
    } else {
        Ok(ws)
    }
}

struct Builder<'a> {
    ws: &'a Workspace,
    diags: &'a mut Vec<Diagnostic>,
}

fn texts(names: &[Name]) -> Vec<String> {
    names.iter().map(|n| n.text.clone()).collect()
}

impl Builder<'_> {
    fn err<T>(&mut self, span: Span, message: impl Into<String>) -> Option<T> {
        self.diags.push(Diagnostic::error(span, message));
        None
    }

    fn build(&mut self, raw: Raw) -> Option<(Entity, Span)> {
        match raw {
            Raw::Algebra {
                name,
                variety,
                elements,
                ops,
            } => {
                let span = name.span;
                self.algebra(name, variety, elements, ops)
                    .map(|d| (Entity::Algebra(d), span))
            }
            Raw::Space {
                name,
                over,
                points,
                opens,
            } => {
                let span = name.span;
                self.space(name, over, points, opens)
                    .map(|d| (Entity::Space(d), span))
            }
            Raw::System {
                name,
                over,
                points,
                carrier,
                ext,
            } => {
                let span = name.span;
                self.system(name, over, points, carrier, ext)
                    .map(|d| (Entity::System(d), span))
            }
            Raw::TheoryMorphism {
                name,
                ends,
                h,
                rename,
            } => {
                let span = name.span;
                self.theory_morphism(name, ends, h, rename)
                    .map(|d| (Entity::TheoryMorphism(d), span))
            }
            Raw::Institution {
                name,
                sign,
                sen,
                models,
                sat,
                actions,
            } => {
                let span = name.span;
                self.institution(name, sign, sen, models, sat, actions)
                    .map(|d| (Entity::Institution(d), span))
            }
            Raw::AfInst {
                name,
                over,
                sign,
                at,
                maps,
            } => {
                let span = name.span;
                self.afinst(name, over, sign, at, maps)
                    .map(|d| (Entity::AfInst(d), span))
            }
        }
    }

    fn index(&mut self, labels: &[String], n: &Name, what: &str) -> Option<usize> {
        match labels.iter().position(|l| *l == n.text) {
            Some(i) => Some(i),
            None => self.err(n.span, format!("unknown {what} `{}`", n.text)),
        }
    }

    fn distinct(&mut self, names: &[Name], what: &str) -> Option<Vec<String>> {
        let mut seen = BTreeSet::new();
        for n in names {
            if !seen.insert(&n.text) {
                return self.err(n.span, format!("duplicate {what} `{}`", n.text));
            }
        }
        Some(texts(names))
    }

    /// A total map `from → to` given by label pairs.
    fn total_map(
        &mut self,
        pairs: &[(Name, Name)],
        from: &[String],
        to: &[String],
        at: Span,
        what: &str,
    ) -> Option<Vec<usize>> {
        let mut map = vec![None; from.len()];
        let mut ok = true;
        for (a, b) in pairs {
            let (Some(i), Some(j)) = (self.index(from, a, what), self.index(to, b, what)) else {
                ok = false;
                continue;
            };
            if map[i].replace(j).is_some() {
                self.diags.push(Diagnostic::error(
                    a.span,
                    format!("`{}` is mapped twice", a.text),
                ));
                ok = false;
            }
        }
        if !ok {
            return None;
        }
        match map.iter().position(Option::is_none) {
            Some(i) => self.err(at, format!("{what} map leaves `{}` unmapped", from[i])),
            None => Some(map.into_iter().flatten().collect()),
        }
    }

    fn theory(&mut self, over: &Name) -> Option<AffineTheory> {
        let Some(d) = self.ws.algebra(&over.text) else {
            if over.text == BUILTIN_TWO {
                return Some(AffineTheory::two());
            }
            return self.err(over.span, format!("unknown algebra `{}`", over.text));
        };
        match AffineTheory::new(d.algebra.clone(), d.variety) {
            Ok(t) => Some(t),
            Err(e) => self.err(
                over.span,
                format!("algebra `{}` cannot serve as a base: {e}", over.text),
            ),
        }
    }

    fn points(&mut self, points: Option<Vec<Name>>, at: Span) -> Option<Vec<String>> {
        match points {
            Some(p) => self.distinct(&p, "point"),
            None => self.err(at, "missing `points`"),
        }
    }

    fn tuple(
        &mut self,
        theory: &AffineTheory,
        span: Span,
        entries: &[Name],
        points: usize,
    ) -> Option<Tuple> {
        if entries.len() != points {
            return self.err(
                span,
                format!("tuple has {} entries for {points} points", entries.len()),
            );
        }
        let labels = theory.base().labels().to_vec();
        entries
            .iter()
            .map(|e| self.index(&labels, e, "base element"))
            .collect()
    }

    fn algebra(
        &mut self,
        name: Name,
        variety: Name,
        elements: Option<Vec<Name>>,
        ops: Vec<RawOp>,
    ) -> Option<AlgebraDecl> {
        let Some(v) = Variety::parse(&variety.text) else {
            return self.err(variety.span, format!("unknown variety `{}`", variety.text));
        };
        let Some(elements) = elements else {
            return self.err(name.span, "missing `elements`");
        };
        let labels = self.distinct(&elements, "element")?;
        let n = labels.len();
        let mut tables = Vec::new();
        for op in &ops {
            let arity = match op.arity.text.parse::<usize>() {
                Ok(a) if a <= MAX_ARITY => a,
                _ => {
                    return self.err(
                        op.arity.span,
                        format!("arity must be a number up to {MAX_ARITY}"),
                    )
                }
            };
            let expected = n.pow(arity as u32);
            if op.entries.len() != expected {
                return self.err(
                    op.name.span,
                    format!(
                        "table of `{}/{arity}` has {} entries, expected {expected}",
                        op.name.text,
                        op.entries.len()
                    ),
                );
            }
            let table = op
                .entries
                .iter()
                .map(|e| self.index(&labels, e, "element"))
                .collect::<Option<Vec<_>>>()?;
            tables.push((Symbol::new(op.name.text.clone(), arity), table));
        }
        let algebra = match FiniteAlgebra::new(labels, tables) {
            Ok(a) => a,
            Err(e) => return self.err(name.span, e.to_string()),
        };
        if let Err(e) = algebra.signature().require(&v.required_symbols()) {
            return self.err(variety.span, format!("signature does not fit {v}: {e}"));
        }
        Some(AlgebraDecl {
            name: name.text,
            variety: v,
            algebra,
        })
    }

    fn space(
        &mut self,
        name: Name,
        over: Name,
        points: Option<Vec<Name>>,
        opens: Vec<(Span, Vec<Name>)>,
    ) -> Option<SpaceDecl> {
        let theory = self.theory(&over)?;
        let points = self.points(points, name.span)?;
        let opens = opens
            .iter()
            .map(|(span, t)| self.tuple(&theory, *span, t, points.len()))
            .collect::<Option<BTreeSet<_>>>()?;
        Some(SpaceDecl {
            name: name.text,
            over: over.text,
            space: AffineSpace::new_unchecked(theory, points, opens),
        })
    }

    fn system(
        &mut self,
        name: Name,
        over: Name,
        points: Option<Vec<Name>>,
        carrier: Option<Name>,
        ext: Vec<(Name, Span, Vec<Name>)>,
    ) -> Option<SystemDecl> {
        let theory = self.theory(&over)?;
        let points = self.points(points, name.span)?;
        let Some(carrier) = carrier else {
            return self.err(name.span, "missing `carrier`");
        };
        let Some(alg) = self.ws.algebra(&carrier.text).map(|d| d.algebra.clone()) else {
            return self.err(carrier.span, format!("unknown algebra `{}`", carrier.text));
        };
        let mut extents: Vec<Option<Tuple>> = vec![None; alg.size()];
        for (element, span, t) in &ext {
            let i = self.index(alg.labels(), element, "element")?;
            let t = self.tuple(&theory, *span, t, points.len())?;
            if extents[i].replace(t).is_some() {
                return self.err(
                    element.span,
                    format!("extent of `{}` given twice", element.text),
                );
            }
        }
        if let Some(i) = extents.iter().position(Option::is_none) {
            return self.err(
                name.span,
                format!("no extent for element `{}`", alg.label(i)),
            );
        }
        match AffineSystem::from_parts(theory, points, alg, extents.into_iter().flatten().collect())
        {
            Ok(system) => Some(SystemDecl {
                name: name.text,
                over: over.text,
                carrier: carrier.text,
                system,
            }),
            Err(e) => self.err(name.span, e.to_string()),
        }
    }

    fn theory_morphism(
        &mut self,
        name: Name,
        ends: Option<(Name, Name)>,
        h: Pairs,
        rename: Pairs,
    ) -> Option<TheoryMorphismDecl> {
        let Some((from, to)) = ends else {
            return self.err(name.span, "missing `from .. to ..`");
        };
        let (source, target) = (self.theory(&from)?, self.theory(&to)?);
        let map = self.total_map(
            &h,
            source.base().labels(),
            target.base().labels(),
            name.span,
            "base element",
        )?;
        let mut renaming = BTreeMap::new();
        for (a, b) in &rename {
            if renaming.insert(a.text.clone(), b.text.clone()).is_some() {
                return self.err(a.span, format!("`{}` is renamed twice", a.text));
            }
        }
        match TheoryMorphism::new(source, target, map, renaming) {
            Ok(morphism) => Some(TheoryMorphismDecl {
                name: name.text,
                from: from.text,
                to: to.text,
                morphism,
            }),
            Err(e) => self.err(name.span, e.to_string()),
        }
    }

    fn sign(&mut self, sign: Option<RawSign>, at: Span) -> Option<FiniteCategory> {
        let Some(s) = sign else {
            return self.err(at, "missing `sign` block");
        };
        let objects = texts(&s.objects);
        let triple = |v: &[(Name, Name, Name)]| -> Vec<(String, String, String)> {
            v.iter()
                .map(|(a, b, c)| (a.text.clone(), b.text.clone(), c.text.clone()))
                .collect()
        };
        match FiniteCategory::new(&objects, &triple(&s.arrows), &triple(&s.composites)) {
            Ok(c) => Some(c),
            Err(e) => self.err(s.span, e.to_string()),
        }
    }

    /// One entry per object from `(object, value)` declarations.
    fn per_object<T: Clone>(
        &mut self,
        sign: &FiniteCategory,
        decls: &[(Name, T)],
        what: &str,
        at: Span,
    ) -> Option<Vec<T>> {
        let mut out: Vec<Option<T>> = vec![None; sign.object_count()];
        for (obj, v) in decls {
            let x = self.index(sign.objects(), obj, "signature")?;
            if out[x].replace(v.clone()).is_some() {
                return self.err(obj.span, format!("`{what}` for `{}` given twice", obj.text));
            }
        }
        match out.iter().position(Option::is_none) {
            Some(x) => self.err(at, format!("missing `{what}` for `{}`", sign.objects()[x])),
            None => Some(out.into_iter().flatten().collect()),
        }
    }

    fn institution(
        &mut self,
        name: Name,
        sign: Option<RawSign>,
        sen: Vec<NamedSet>,
        models: Vec<NamedSet>,
        sat: Vec<SatRows>,
        actions: Vec<RawAction>,
    ) -> Option<InstitutionDecl> {
        let sign = self.sign(sign, name.span)?;
        let sen_sets = self
            .per_object(&sign, &sen, "sen", name.span)?
            .iter()
            .map(|s| self.distinct(s, "sentence"))
            .collect::<Option<Vec<_>>>()?;
        let mod_sets = self
            .per_object(&sign, &models, "mod", name.span)?
            .iter()
            .map(|s| self.distinct(s, "model"))
            .collect::<Option<Vec<_>>>()?;
        let mut matrices: Vec<Vec<Vec<bool>>> = (0..sign.object_count())
            .map(|x| vec![vec![false; sen_sets[x].len()]; mod_sets[x].len()])
            .collect();
        for (obj, rows) in &sat {
            let x = self.index(sign.objects(), obj, "signature")?;
            for (m, sentences) in rows {
                let i = self.index(&mod_sets[x], m, "model")?;
                for s in sentences {
                    let j = self.index(&sen_sets[x], s, "sentence")?;
                    matrices[x][i][j] = true;
                }
            }
        }
        let n = sign.arrow_count();
        let mut sen_maps: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut mod_maps: Vec<Option<Vec<usize>>> = vec![None; n];
        for x in 0..sign.object_count() {
            let id = sign.identity(x);
            sen_maps[id] = Some((0..sen_sets[x].len()).collect());
            mod_maps[id] = Some((0..mod_sets[x].len()).collect());
        }
        for a in &actions {
            let f = self.index(
                &sign
                    .arrows()
                    .iter()
                    .map(|r| r.name.clone())
                    .collect::<Vec<_>>(),
                &a.arrow,
                "arrow",
            )?;
            if sign.is_identity(f) {
                return self.err(
                    a.arrow.span,
                    "identity arrows act trivially and take no `action`",
                );
            }
            let (d, c) = (sign.dom(f), sign.cod(f));
            let sm =
                self.total_map(&a.sen, &sen_sets[d], &sen_sets[c], a.arrow.span, "sentence")?;
            let mm =
                self.total_map(&a.models, &mod_sets[c], &mod_sets[d], a.arrow.span, "model")?;
            if sen_maps[f].replace(sm).is_some() {
                return self.err(
                    a.arrow.span,
                    format!("`action` for `{}` given twice", a.arrow.text),
                );
            }
            mod_maps[f] = Some(mm);
        }
        if let Some(f) = sen_maps.iter().position(Option::is_none) {
            return self.err(
                name.span,
                format!("missing `action` for `{}`", sign.arrow_name(f)),
            );
        }
        let built = SetFunctor::new(
            sign.clone(),
            sen_sets,
            sen_maps.into_iter().flatten().collect(),
            false,
        )
        .and_then(|s| {
            let m = SetFunctor::new(
                sign,
                mod_sets,
                mod_maps.into_iter().flatten().collect(),
                true,
            )?;
            ElementaryInstitution::new(s, m, matrices)
        });
        match built {
            Ok(institution) => Some(InstitutionDecl {
                name: name.text,
                institution,
            }),
            Err(e) => self.err(name.span, e.to_string()),
        }
    }

    fn afinst(
        &mut self,
        name: Name,
        over: Name,
        sign: Option<RawSign>,
        at: Vec<(Name, Name)>,
        maps: Vec<RawMap>,
    ) -> Option<AfInstDecl> {
        let theory = self.theory(&over)?;
        let sign = self.sign(sign, name.span)?;
        let targets = self.per_object(&sign, &at, "at", name.span)?;
        #[derive(PartialEq)]
        enum Kind {
            Systems,
            Spaces,
            Algebras,
        }
        let mut kinds = Vec::new();
        for t in &targets {
            let found: Vec<Kind> = [
                self.ws.system(&t.text).map(|_| Kind::Systems),
                self.ws.space(&t.text).map(|_| Kind::Spaces),
                self.ws.algebra(&t.text).map(|_| Kind::Algebras),
            ]
            .into_iter()
            .flatten()
            .collect();
            match found.len() {
                0 => {
                    return self.err(
                        t.span,
                        format!("unknown system, space or algebra `{}`", t.text),
                    )
                }
                1 => kinds.extend(found),
                _ => {
                    return self.err(
                        t.span,
                        format!("`{}` names more than one kind of entity", t.text),
                    )
                }
            }
        }
        let kind = match kinds.first() {
            Some(k) if kinds.iter().all(|x| x == k) => kinds.swap_remove(0),
            Some(_) => {
                return self.err(
                    name.span,
                    "signatures must all be sent to the same kind of entity",
                )
            }
            None => Kind::Systems,
        };
        let mut by_arrow: Vec<Option<&RawMap>> = vec![None; sign.arrow_count()];
        let arrow_names: Vec<String> = sign.arrows().iter().map(|a| a.name.clone()).collect();
        for m in &maps {
            let f = self.index(&arrow_names, &m.arrow, "arrow")?;
            if sign.is_identity(f) {
                return self.err(m.arrow.span, "identity arrows take no `map`");
            }
            if by_arrow[f].replace(m).is_some() {
                return self.err(
                    m.arrow.span,
                    format!("`map` for `{}` given twice", m.arrow.text),
                );
            }
        }
        if let Some(f) =
            (0..sign.arrow_count()).find(|&f| !sign.is_identity(f) && by_arrow[f].is_none())
        {
            return self.err(
                name.span,
                format!("missing `map` for `{}`", sign.arrow_name(f)),
            );
        }
        let at_names = texts(&targets);
        let wrong_theory = |b: &mut Self, t: &Name| {
            b.err(t.span, format!("`{}` is not over `{}`", t.text, over.text))
        };
        let body = match kind {
            Kind::Systems => {
                let mut systems = Vec::new();
                for t in &targets {
                    let s = self.ws.system(&t.text).expect("resolved").system.clone();
                    if s.theory() != &theory {
                        return wrong_theory(self, t);
                    }
                    systems.push(s);
                }
                let mut morphisms = Vec::new();
                for f in 0..sign.arrow_count() {
                    let (d, c) = (&systems[sign.dom(f)], &systems[sign.cod(f)]);
                    if sign.is_identity(f) {
                        morphisms.push(SystemMorphism::identity(d));
                        continue;
                    }
                    let m = by_arrow[f].expect("checked");
                    let (Some(pts), Some(alg)) = (&m.points, &m.algebra) else {
                        return self.err(
                            m.arrow.span,
                            "a system map needs both `points` and `algebra`",
                        );
                    };
                    let pm = self.total_map(pts, d.points(), c.points(), m.arrow.span, "point")?;
                    let am = self.total_map(
                        alg,
                        c.algebra().labels(),
                        d.algebra().labels(),
                        m.arrow.span,
                        "element",
                    )?;
                    match SystemMorphism::from_parts(d.clone(), c.clone(), pm, am) {
                        Ok(sm) => morphisms.push(sm),
                        Err(e) => return self.err(m.arrow.span, e.to_string()),
                    }
                }
                AffineInstitution::new(sign, theory, systems, morphisms).map(AfInstBody::Systems)
            }
            Kind::Spaces => {
                let mut spaces = Vec::new();
                for t in &targets {
                    let s = self.ws.space(&t.text).expect("resolved").space.clone();
                    if s.theory() != &theory {
                        return wrong_theory(self, t);
                    }
                    spaces.push(s);
                }
                let mut point_maps = Vec::new();
                for f in 0..sign.arrow_count() {
                    let (d, c) = (&spaces[sign.dom(f)], &spaces[sign.cod(f)]);
                    if sign.is_identity(f) {
                        point_maps.push((0..d.point_count()).collect());
                        continue;
                    }
                    let m = by_arrow[f].expect("checked");
                    let (Some(pts), None) = (&m.points, &m.algebra) else {
                        return self.err(m.arrow.span, "a space map takes `points` only");
                    };
                    point_maps.push(self.total_map(
                        pts,
                        d.points(),
                        c.points(),
                        m.arrow.span,
                        "point",
                    )?);
                }
                SpatialAffineInstitution::new(sign, theory, spaces, point_maps)
                    .map(AfInstBody::Spaces)
            }
            Kind::Algebras => {
                let mut algebras = Vec::new();
                for t in &targets {
                    let a = self.ws.algebra(&t.text).expect("resolved").algebra.clone();
                    if a.signature() != theory.signature() {
                        return self.err(
                            t.span,
                            format!(
                                "`{}` does not have the signature of `{}`",
                                t.text, over.text
                            ),
                        );
                    }
                    algebras.push(a);
                }
                let mut homs = Vec::new();
                for f in 0..sign.arrow_count() {
                    let (d, c) = (&algebras[sign.dom(f)], &algebras[sign.cod(f)]);
                    if sign.is_identity(f) {
                        homs.push(Homomorphism::identity(d));
                        continue;
                    }
                    let m = by_arrow[f].expect("checked");
                    let (None, Some(alg)) = (&m.points, &m.algebra) else {
                        return self.err(m.arrow.span, "an algebra map takes `algebra` only");
                    };
                    let map =
                        self.total_map(alg, c.labels(), d.labels(), m.arrow.span, "element")?;
                    match Homomorphism::new(c.clone(), d.clone(), map) {
                        Ok(h) => homs.push(h),
                        Err(e) => return self.err(m.arrow.span, e.to_string()),
                    }
                }
                LocalicAffineInstitution::new(sign, theory, algebras, homs)
                    .map(AfInstBody::Algebras)
            }
        };
        match body {
            Ok(body) => Some(AfInstDecl {
                name: name.text,
                over: over.text,
                at: at_names,
                body,
            }),
            Err(e) => self.err(name.span, e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dsl::{print, EntityKind};

    const SYS1: &str = include_str!("../../fixtures/sys1.afs");

    #[test]
    fn empty_input() {
        let (ws, diags) = parse("");
        assert!(ws.is_empty());
        assert!(diags.is_empty());
        assert!(parse_strict("# only a comment\n").unwrap().is_empty());
    }

    #[test]
    fn sys1_fixture() {
        let ws = parse_strict(SYS1).unwrap();
        assert_eq!(ws.len(), 2);
        assert_eq!(ws.algebra("C3").unwrap().algebra, catalog::chain3());
        assert_eq!(ws.system("SYS1").unwrap().system, catalog::sys1());
    }

    #[test]
    fn dangling_reference() {
        let text = "space S over MissingAlg {\n  points: p;\n  opens: (0);\n}\n";
        let (ws, diags) = parse(text);
        assert!(ws.is_empty());
        assert_eq!(diags.len(), 1);
        let at = text.find("MissingAlg").unwrap();
        assert_eq!(
            (diags[0].span.line, diags[0].span.col, diags[0].span.offset),
            (1, 14, at)
        );
        assert!(diags[0].message.contains("MissingAlg"));
    }

    #[test]
    fn recovers_after_syntax_error() {
        let text = "algebra A variety=Frame {\n  elements 0 1;\n}\n".to_string()
            + &SYS1.replacen("afs 1", "", 1);
        let (ws, diags) = parse(&text);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].span.line, 2);
        assert!(ws.system("SYS1").is_some());
    }

    #[test]
    fn recovers_from_unclosed_block() {
        let text = "algebra A variety=Frame {\n  elements: 0 1;\n".to_string()
            + &SYS1.replacen("afs 1", "", 1);
        let (ws, diags) = parse(&text);
        assert!(!diags.is_empty());
        assert!(ws.system("SYS1").is_some());
    }

    #[test]
    fn spans_lie_within_input() {
        for text in [
            "algebra",
            "algebra A variety=",
            "system S over 2 { points: p; carrier: X; }",
            "}}}",
            "afs 2",
        ] {
            let (_, diags) = parse(text);
            assert!(!diags.is_empty(), "{text}");
            for d in diags {
                assert!(d.span.offset + d.span.len <= text.len(), "{text}: {d}");
            }
        }
    }

    #[test]
    fn header_version() {
        assert!(parse_strict("afs 1\n").is_ok());
        let (_, diags) = parse("afs 7\n");
        assert!(diags[0].message.contains("unsupported"));
    }

    #[test]
    fn table_size_is_checked() {
        let (_, diags) =
            parse("algebra A variety=Unconstrained {\n  elements: x y;\n  op f/2: x y x;\n}\n");
        assert!(diags[0].message.contains("expected 4"), "{}", diags[0]);
    }

    #[test]
    fn variety_needs_its_symbols() {
        let (_, diags) = parse("algebra A variety=Frame {\n  elements: x;\n  op top/0: x;\n}\n");
        assert!(diags[0].message.contains("signature"), "{}", diags[0]);
    }

    #[test]
    fn duplicate_names_per_kind() {
        let text = format!("{SYS1}\nsystem SYS1 over 2 {{ points: p; carrier: C3; ext: bot -> (0), m -> (0), top -> (1); }}\n");
        let (ws, diags) = parse(&text);
        assert_eq!(diags.len(), 1);
        assert_eq!(ws.len(), 2);
        assert!(ws.get(EntityKind::System, "SYS1").is_some());
    }

    #[test]
    fn partial_extent_map() {
        let (_, diags) = parse(&SYS1.replace(", top -> (1 1)", ""));
        assert!(diags[0].message.contains("top"), "{}", diags[0]);
    }

    #[test]
    fn fixtures_round_trip() {
        for text in [
            SYS1,
            include_str!("../../fixtures/inst2.afs"),
            include_str!("../../fixtures/afinst.afs"),
            include_str!("../../fixtures/spatial_afinst.afs"),
            include_str!("../../fixtures/localic_afinst.afs"),
            include_str!("../../fixtures/theorymorphism.afs"),
        ] {
            let ws = parse_strict(text).unwrap();
            let printed = print(&ws);
            assert_eq!(parse_strict(&printed).unwrap(), ws, "{printed}");
            assert_eq!(print(&parse_strict(&printed).unwrap()), printed);
        }
    }

    #[test]
    fn afinst_kinds_cannot_mix() {
        let text =
            include_str!("../../fixtures/afinst.afs").replace("at S1 = Point;", "at S1 = Two;");
        let (_, diags) = parse(&text);
        assert!(diags[0].message.contains("same kind"), "{}", diags[0]);
    }

    #[test]
    fn institution_action_is_required() {
        let text = include_str!("../../fixtures/inst2.afs");
        let cut: String = text
            .lines()
            .filter(|l| !l.contains("action"))
            .map(|l| format!("{l}\n"))
            .collect();
        let (_, diags) = parse(&cut);
        assert!(
            diags[0].message.contains("missing `action`"),
            "{}",
            diags[0]
        );
    }
}
