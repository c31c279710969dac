use std::fmt::Write;

use super::{
    AfInstBody, AfInstDecl, AlgebraDecl, Entity, InstitutionDecl, SpaceDecl, SystemDecl,
    TheoryMorphismDecl, Workspace, FORMAT_VERSION,
};
use crate::cat::FiniteCategory;

/// Renders a workspace in the `.afs` format. Parsing the result gives back an
/// equal workspace as long as every label is a word (see [`super::is_word`]).
pub fn print(ws: &Workspace) -> String {
    let mut out = format!("afs {FORMAT_VERSION}\n");
    for e in ws.entities() {
        out.push('\n');
        out.push_str(&print_entity(e));
    }
    out
}

pub fn print_entity(entity: &Entity) -> String {
    match entity {
        Entity::Algebra(d) => algebra(d),
        Entity::Space(d) => space(d),
        Entity::System(d) => system(d),
        Entity::TheoryMorphism(d) => theory_morphism(d),
        Entity::Institution(d) => institution(d),
        Entity::AfInst(d) => afinst(d),
    }
}

fn words(labels: &[String]) -> String {
    labels.join(" ")
}

fn tuple(labels: &[String], t: &[usize]) -> String {
    let inner: Vec<&str> = t.iter().map(|&v| labels[v].as_str()).collect();
    format!("({})", inner.join(" "))
}

fn braced(labels: &[usize], from: &[String], to: &[String]) -> String {
    let inner: Vec<String> = labels
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{} -> {}", from[i], to[j]))
        .collect();
    format!("{{{}}}", inner.join(", "))
}

fn algebra(d: &AlgebraDecl) -> String {
    let a = &d.algebra;
    let mut s = format!(
        "algebra {} variety={} {{\n  elements: {};\n",
        d.name,
        d.variety.name(),
        words(a.labels())
    );
    for (i, sym) in a.signature().symbols().iter().enumerate() {
        let cells: Vec<&str> = a.table(i).iter().map(|&v| a.label(v)).collect();
        let rows: Vec<String> = if sym.arity == 0 {
            vec![cells.join(" ")]
        } else {
            cells.chunks(a.size().max(1)).map(|r| r.join(" ")).collect()
        };
        let _ = writeln!(s, "  op {}/{}: {};", sym.name, sym.arity, rows.join(", "));
    }
    s.push_str("}\n");
    s
}

fn space(d: &SpaceDecl) -> String {
    let sp = &d.space;
    let labels = sp.theory().base().labels();
    let opens: Vec<String> = sp.opens().iter().map(|t| tuple(labels, t)).collect();
    format!(
        "space {} over {} {{\n  points: {};\n  opens: {};\n}}\n",
        d.name,
        d.over,
        words(sp.points()),
        opens.join(" ")
    )
}

fn system(d: &SystemDecl) -> String {
    let sys = &d.system;
    let labels = sys.theory().base().labels();
    let ext: Vec<String> = sys
        .ext()
        .iter()
        .enumerate()
        .map(|(a, t)| format!("{} -> {}", sys.algebra().label(a), tuple(labels, t)))
        .collect();
    format!(
        "system {} over {} {{\n  points: {};\n  carrier: {};\n  ext: {};\n}}\n",
        d.name,
        d.over,
        words(sys.points()),
        d.carrier,
        ext.join(", ")
    )
}

fn theory_morphism(d: &TheoryMorphismDecl) -> String {
    let m = &d.morphism;
    let h = m.h();
    let pairs: Vec<String> = h
        .map()
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{} -> {}", h.source().label(i), h.target().label(j)))
        .collect();
    let mut s = format!(
        "theorymorphism {} {{\n  from {} to {};\n  h: {};\n",
        d.name,
        d.from,
        d.to,
        pairs.join(", ")
    );
    if !m.renaming().is_empty() {
        let r: Vec<String> = m
            .renaming()
            .iter()
            .map(|(a, b)| format!("{a} -> {b}"))
            .collect();
        let _ = writeln!(s, "  rename: {};", r.join(", "));
    }
    s.push_str("}\n");
    s
}

fn sign(c: &FiniteCategory) -> String {
    let mut s = format!("  sign {{\n    objects: {};\n", words(c.objects()));
    for f in (0..c.arrow_count()).filter(|&f| !c.is_identity(f)) {
        let _ = writeln!(
            s,
            "    arrow {}: {} -> {};",
            c.arrow_name(f),
            c.objects()[c.dom(f)],
            c.objects()[c.cod(f)]
        );
    }
    for (g, f) in c.composable_pairs() {
        if c.is_identity(g) || c.is_identity(f) {
            continue;
        }
        if let Some(h) = c.compose(g, f) {
            let _ = writeln!(
                s,
                "    compose {} after {} = {};",
                c.arrow_name(g),
                c.arrow_name(f),
                c.arrow_name(h)
            );
        }
    }
    s.push_str("  }\n");
    s
}

fn institution(d: &InstitutionDecl) -> String {
    let inst = &d.institution;
    let c = inst.sign();
    let mut s = format!("institution {} {{\n{}", d.name, sign(c));
    for x in 0..c.object_count() {
        let obj = &c.objects()[x];
        let (sen, models) = (inst.sen().set(x), inst.models().set(x));
        let _ = writeln!(s, "  sen {obj} = {{{}}};", words(sen));
        let _ = writeln!(s, "  mod {obj} = {{{}}};", words(models));
        let rows: Vec<String> = inst
            .sat(x)
            .iter()
            .enumerate()
            .map(|(m, row)| {
                let held: Vec<&str> = (0..row.len())
                    .filter(|&j| row[j])
                    .map(|j| sen[j].as_str())
                    .collect();
                format!("{} -> {{{}}}", models[m], held.join(" "))
            })
            .collect();
        let _ = writeln!(s, "  sat {obj}: {};", rows.join(", "));
    }
    for f in (0..c.arrow_count()).filter(|&f| !c.is_identity(f)) {
        let (dm, cd) = (c.dom(f), c.cod(f));
        let _ = writeln!(
            s,
            "  action {}: sen {} mod {};",
            c.arrow_name(f),
            braced(inst.sen().map(f), inst.sen().set(dm), inst.sen().set(cd)),
            braced(
                inst.models().map(f),
                inst.models().set(cd),
                inst.models().set(dm)
            )
        );
    }
    s.push_str("}\n");
    s
}

fn afinst(d: &AfInstDecl) -> String {
    let c = match &d.body {
        AfInstBody::Systems(ai) => ai.sign(),
        AfInstBody::Spaces(si) => si.sign(),
        AfInstBody::Algebras(li) => li.sign(),
    };
    let mut s = format!("afinst {} over {} {{\n{}", d.name, d.over, sign(c));
    for (x, target) in d.at.iter().enumerate() {
        let _ = writeln!(s, "  at {} = {target};", c.objects()[x]);
    }
    for f in (0..c.arrow_count()).filter(|&f| !c.is_identity(f)) {
        let (dm, cd) = (c.dom(f), c.cod(f));
        let body = match &d.body {
            AfInstBody::Systems(ai) => {
                let m = ai.morphism(f);
                let (src, tgt) = (m.source(), m.target());
                format!(
                    "points {} algebra {}",
                    braced(m.point_map(), src.points(), tgt.points()),
                    braced(
                        m.algebra_map(),
                        tgt.algebra().labels(),
                        src.algebra().labels()
                    )
                )
            }
            AfInstBody::Spaces(si) => {
                format!(
                    "points {}",
                    braced(
                        &si.maps()[f],
                        si.spaces()[dm].points(),
                        si.spaces()[cd].points()
                    )
                )
            }
            AfInstBody::Algebras(li) => {
                let h = &li.homs()[f];
                format!(
                    "algebra {}",
                    braced(h.map(), h.source().labels(), h.target().labels())
                )
            }
        };
        let _ = writeln!(s, "  map {}: {body};", c.arrow_name(f));
    }
    s.push_str("}\n");
    s
}
