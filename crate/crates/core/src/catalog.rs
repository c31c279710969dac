//! Small named fixtures used throughout the examples and tests.

use crate::algebra::{FiniteAlgebra, Signature, Symbol, Variety, BOT, JOIN, MEET, NEG, TOP};

/// Builds a bounded lattice from its order relation; `complement`, when
/// given, becomes the `neg` table.
pub fn lattice_from_order(
    labels: &[&str],
    leq: impl Fn(usize, usize) -> bool,
    complement: Option<&[usize]>,
) -> FiniteAlgebra {
    let n = labels.len();
    let lub = |a: usize, b: usize| {
        (0..n)
            .filter(|&u| leq(a, u) && leq(b, u))
            .find(|&u| (0..n).all(|v| !(leq(a, v) && leq(b, v)) || leq(u, v)))
            .expect("least upper bound exists")
    };
    let glb = |a: usize, b: usize| {
        (0..n)
            .filter(|&l| leq(l, a) && leq(l, b))
            .find(|&l| (0..n).all(|v| !(leq(v, a) && leq(v, b)) || leq(v, l)))
            .expect("greatest lower bound exists")
    };
    let bottom = (0..n).find(|&b| (0..n).all(|x| leq(b, x))).expect("bottom");
    let topmost = (0..n).find(|&t| (0..n).all(|x| leq(x, t))).expect("top");
    let mut symbols = vec![
        Symbol::new(JOIN, 2),
        Symbol::new(MEET, 2),
        Symbol::new(BOT, 0),
        Symbol::new(TOP, 0),
    ];
    if complement.is_some() {
        symbols.push(Symbol::new(NEG, 1));
    }
    let sig = Signature::new(symbols).expect("lattice signature");
    FiniteAlgebra::from_fn(
        labels.iter().map(|s| s.to_string()).collect(),
        &sig,
        |s, a| match s.name.as_str() {
            JOIN => lub(a[0], a[1]),
            MEET => glb(a[0], a[1]),
            BOT => bottom,
            TOP => topmost,
            NEG => complement.expect("neg requested")[a[0]],
            _ => unreachable!(),
        },
    )
    .expect("lattice tables")
}

/// The two-element frame `0 < 1`.
pub fn two() -> FiniteAlgebra {
    Variety::Frame.two()
}

/// The two-element Boolean algebra.
pub fn two_cba() -> FiniteAlgebra {
    Variety::CompleteBooleanAlgebra.two()
}

/// The chain `bot < m < top` as a frame.
pub fn chain3() -> FiniteAlgebra {
    lattice_from_order(&["bot", "m", "top"], |a, b| a <= b, None)
}

/// The 3-chain with a `neg` table that makes `m` its own complement; not a
/// Boolean algebra.
pub fn chain3_fake_complement() -> FiniteAlgebra {
    lattice_from_order(&["bot", "m", "top"], |a, b| a <= b, Some(&[2, 1, 0]))
}

/// The chain `c0 < c1 < .. < c(n-1)` as a frame.
pub fn chain(n: usize) -> FiniteAlgebra {
    let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    lattice_from_order(&refs, |a, b| a <= b, None)
}

fn diamond_leq(a: usize, b: usize) -> bool {
    // bot=0, a=1, b=2, top=3
    a == b || a == 0 || b == 3
}

/// `{bot, a, b, top}` with `a ∧ b = bot`, `a ∨ b = top`, frame signature.
pub fn diamond_frame() -> FiniteAlgebra {
    lattice_from_order(&["bot", "a", "b", "top"], diamond_leq, None)
}

/// The four-element Boolean algebra, `a* = b`.
pub fn diamond_cba() -> FiniteAlgebra {
    lattice_from_order(&["bot", "a", "b", "top"], diamond_leq, Some(&[3, 2, 1, 0]))
}

/// The non-distributive lattice M3 with frame signature.
pub fn m3() -> FiniteAlgebra {
    lattice_from_order(
        &["bot", "x", "y", "z", "top"],
        |a, b| a == b || a == 0 || b == 4,
        None,
    )
}

/// The one-element frame (`bot = top`); it has no homomorphism to `2`.
pub fn trivial_frame() -> FiniteAlgebra {
    lattice_from_order(&["o"], |_, _| true, None)
}

use crate::budget::Budget;
use crate::cat::{FiniteCategory, FiniteFunctor, SetFunctor};
use crate::functor::e_space;
use crate::institution::{
    AffineInstMorphism, AffineInstitution, ElementaryInstitution, SpatialAffineInstitution,
};
use crate::topology::{AffineSpace, AffineSystem, AffineTheory, SystemMorphism};

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The Sierpiński space on `{p, q}` over `2`: opens `00`, `01`, `11`.
pub fn sierpinski() -> AffineSpace {
    AffineSpace::new(
        AffineTheory::two(),
        names(&["p", "q"]),
        vec![vec![0, 0], vec![0, 1], vec![1, 1]],
    )
    .expect("Sierpiński space")
}

/// `X = {p, q}`, `A` the 3-chain, `ext(bot) = 00`, `ext(m) = 01`,
/// `ext(top) = 11`. Separated.
pub fn sys1() -> AffineSystem {
    AffineSystem::new(
        AffineTheory::two(),
        names(&["p", "q"]),
        chain3(),
        vec![vec![0, 0], vec![0, 1], vec![1, 1]],
    )
    .expect("SYS1")
}

/// `X = {p}`, `A` the diamond frame, extents given by the prime filter
/// `↑a`. Not separated.
pub fn sys2() -> AffineSystem {
    AffineSystem::new(
        AffineTheory::two(),
        names(&["p"]),
        diamond_frame(),
        vec![vec![0], vec![1], vec![0], vec![1]],
    )
    .expect("SYS2")
}

fn sets(groups: &[&[&str]]) -> Vec<Vec<String>> {
    groups.iter().map(|g| names(g)).collect()
}

fn single_object_institution(
    sentences: &[&str],
    models: &[&str],
    pairs: &[(usize, usize)],
) -> ElementaryInstitution {
    let sign = FiniteCategory::single("S");
    let sen = SetFunctor::new(
        sign.clone(),
        sets(&[sentences]),
        vec![(0..sentences.len()).collect()],
        false,
    )
    .expect("sentence functor");
    let models = SetFunctor::new(
        sign,
        sets(&[models]),
        vec![(0..models.len()).collect()],
        true,
    )
    .expect("model functor");
    ElementaryInstitution::from_pairs(sen, models, &[pairs.to_vec()]).expect("institution")
}

/// One signature `S`; models `m1, m2`; sentences `s1, s2`; `m1 ⊨ s1`,
/// `m2 ⊨ s1, s2`.
pub fn inst1() -> ElementaryInstitution {
    single_object_institution(&["s1", "s2"], &["m1", "m2"], &[(0, 0), (1, 0), (1, 1)])
}

/// `φ : S1 → S2`. At `S1` as in [`inst1`]; at `S2` sentences `t1, t2, t3`
/// with `Sen φ = (s1 ↦ t1, s2 ↦ t2)`, models `n1, n2, n3` with
/// `Mod φ = (n1 ↦ m1, n2 ↦ m2, n3 ↦ m2)`, and `t3` true only in `n1`.
pub fn inst2() -> ElementaryInstitution {
    let sign = FiniteCategory::arrow("S1", "S2", "phi").expect("arrow category");
    let sen = SetFunctor::new(
        sign.clone(),
        sets(&[&["s1", "s2"], &["t1", "t2", "t3"]]),
        vec![vec![0, 1], vec![0, 1, 2], vec![0, 1]],
        false,
    )
    .expect("sentence functor");
    let models = SetFunctor::new(
        sign,
        sets(&[&["m1", "m2"], &["n1", "n2", "n3"]]),
        vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 1]],
        true,
    )
    .expect("model functor");
    ElementaryInstitution::from_pairs(
        sen,
        models,
        &[
            vec![(0, 0), (1, 0), (1, 1)],
            vec![(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (0, 2)],
        ],
    )
    .expect("institution")
}

/// Two sentences and no models.
pub fn modelless_institution() -> ElementaryInstitution {
    single_object_institution(&["s1", "s2"], &[], &[])
}

/// One model satisfying its one sentence.
pub fn trivial_institution() -> ElementaryInstitution {
    single_object_institution(&["s"], &["m"], &[(0, 0)])
}

/// Sentences `a, b, c`; `m1 ⊨ a, c`, `m2 ⊨ b, c`, `m3 ⊨ c`. The join of the
/// theories `{a, c}` and `{b, c}` is `{c}`, forced by `m3` alone.
pub fn join_gap_institution() -> ElementaryInstitution {
    single_object_institution(
        &["a", "b", "c"],
        &["m1", "m2", "m3"],
        &[(0, 0), (0, 2), (1, 1), (1, 2), (2, 2)],
    )
}

/// A one-point system over the two-element frame.
pub fn point_system() -> AffineSystem {
    let space = AffineSpace::discrete(AffineTheory::two(), names(&["x"]), Budget::default())
        .expect("point");
    e_space(&space)
}

/// `φ : S1 → S2` with `I(S1)` the point system, `I(S2) = SYS1`, and `I(φ)`
/// sending `x` to `q`, op-side the evaluation at `q`.
pub fn afinst() -> AffineInstitution {
    let (p, s) = (point_system(), sys1());
    let phi = SystemMorphism::new(p.clone(), s.clone(), vec![1], vec![0, 1, 1]).expect("I(φ)");
    AffineInstitution::new(
        FiniteCategory::arrow("S1", "S2", "phi").expect("arrow category"),
        AffineTheory::two(),
        vec![p.clone(), s.clone()],
        vec![
            SystemMorphism::identity(&p),
            SystemMorphism::identity(&s),
            phi,
        ],
    )
    .expect("affine institution")
}

/// `φ : S1 → S2` with the one-point discrete space at `S1`, the Sierpiński
/// space at `S2`, and `x ↦ q`.
pub fn spatial_afinst() -> SpatialAffineInstitution {
    let point = AffineSpace::discrete(AffineTheory::two(), names(&["x"]), Budget::default())
        .expect("point");
    SpatialAffineInstitution::new(
        FiniteCategory::arrow("S1", "S2", "phi").expect("arrow category"),
        AffineTheory::two(),
        vec![point, sierpinski()],
        vec![vec![0], vec![0, 1], vec![1]],
    )
    .expect("spatial institution")
}

/// An endomorphism of [`afinst`]: identity on signatures, the identity at
/// `S1`, and at `S2` the idempotent collapsing both points onto `q`.
pub fn afinst_endomorphism() -> AffineInstMorphism {
    let ai = afinst();
    let s = sys1();
    let collapse = SystemMorphism::new(s.clone(), s, vec![1, 1], vec![0, 2, 2]).expect("collapse");
    AffineInstMorphism::over_theory(
        ai.clone(),
        ai.clone(),
        FiniteFunctor::identity(ai.sign()),
        vec![SystemMorphism::identity(ai.system(0)), collapse],
    )
    .expect("affine institution morphism")
}
