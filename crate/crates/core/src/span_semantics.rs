//! Span-valued lax-monoidal-lax functors on execution categories.
//!
//! An object goes to a set, a morphism `f: X → Y` to a span `F X ← S_f → F Y`.
//! The sets involved are infinite (all anti-markings, all strings over signed
//! places), so a span is intensional: a membership test on tip elements, an
//! enumerator of the tip elements over a given left-leg value, and the two
//! legs. Composition and monoidal product are preserved up to laxators,
//! functions from the composite span to the span of the composite.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounding::FunctorPresentation;
use crate::category::{multisets_up_to, EnumeratedCategory, MonoidalCategory};
use crate::error::PresentationError;
use crate::exec_comm::{CommCategory, CommMorphism};
use crate::exec_symm::{Diagram, SymCategory};
use crate::multiset::{Multiset, Sym};

type Obj<F> = <<F as LaxSpanFunctor>::Base as MonoidalCategory>::Obj;
type Mor<F> = <<F as LaxSpanFunctor>::Base as MonoidalCategory>::Mor;

pub trait LaxSpanFunctor {
    type Base: MonoidalCategory;
    /// Elements of the sets objects are sent to.
    type Elem: Clone + Eq + Ord + Hash + Debug;
    /// Elements of span tips.
    type Tip: Clone + Debug;
    type TipKey: Clone + Eq + Ord + Hash + Debug;

    fn base(&self) -> &Self::Base;

    fn object_contains(&self, x: &Obj<Self>, e: &Self::Elem) -> bool;
    /// Elements of the set over `x` of size at most `bound`.
    fn object_elems(&self, x: &Obj<Self>, bound: usize) -> Vec<Self::Elem>;
    fn elem_unit(&self) -> Self::Elem;
    fn elem_tensor(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn tip_contains(&self, f: &Mor<Self>, s: &Self::Tip) -> bool;
    /// Every tip element of the span of `f` whose left leg is `left`.
    fn tips_over(&self, f: &Mor<Self>, left: &Self::Elem) -> Vec<Self::Tip>;
    fn left(&self, s: &Self::Tip) -> Self::Elem;
    fn right(&self, s: &Self::Tip) -> Self::Elem;
    fn tip_key(&self, s: &Self::Tip) -> Self::TipKey;

    /// From the composite of the spans of `f` and `g` to the span of `f;g`.
    fn comp_laxator(&self, s: &Self::Tip, t: &Self::Tip) -> Self::Tip;
    /// From the product of the spans of `f` and `g` to the span of `f⊗g`.
    fn mon_laxator(&self, s: &Self::Tip, t: &Self::Tip) -> Self::Tip;
    /// From the identity span on the set over `x` to the span of `id_x`.
    fn unit_laxator(&self, e: &Self::Elem) -> Self::Tip;

    /// The objects `(X, x)` of the truncated total category.
    fn total_objects(&self, bound: usize) -> Vec<(Obj<Self>, Self::Elem)>;
}

/// A span with an intensional tip.
pub struct SpanRep<'a, E, T> {
    pub contains: Box<dyn Fn(&T) -> bool + 'a>,
    /// Elements of the left set up to a size bound.
    pub left_elems: Box<dyn Fn(usize) -> Vec<E> + 'a>,
    /// Tip elements with the given left leg.
    pub over: Box<dyn Fn(&E) -> Vec<T> + 'a>,
    pub left: Box<dyn Fn(&T) -> E + 'a>,
    pub right: Box<dyn Fn(&T) -> E + 'a>,
}

impl<E, T> SpanRep<'_, E, T> {
    /// Tip elements whose left leg has size at most `bound`.
    pub fn enumerate(&self, bound: usize) -> Vec<T> {
        (self.left_elems)(bound)
            .iter()
            .flat_map(|x| (self.over)(x))
            .collect()
    }
}

/// A map between span tips, expected to commute with both legs.
pub struct Span2Cell<'a, S, T> {
    pub map: Box<dyn Fn(&S) -> T + 'a>,
}

impl<S, T> Span2Cell<'_, S, T> {
    /// Enumerates `from` up to `bound` and reports every element whose image
    /// leaves `to` or moves a leg.
    pub fn check<E: PartialEq + Debug>(
        &self,
        from: &SpanRep<E, S>,
        to: &SpanRep<E, T>,
        bound: usize,
    ) -> Vec<String>
    where
        S: Debug,
    {
        let mut bad = Vec::new();
        for s in from.enumerate(bound) {
            let t = (self.map)(&s);
            if !(to.contains)(&t) {
                bad.push(format!("{s:?} is sent outside the target tip"));
            } else if (to.left)(&t) != (from.left)(&s) || (to.right)(&t) != (from.right)(&s) {
                bad.push(format!("{s:?} has its legs moved"));
            }
        }
        bad
    }
}

/// The span `F f`.
pub fn span_of<'a, F: LaxSpanFunctor>(func: &'a F, f: &'a Mor<F>) -> SpanRep<'a, F::Elem, F::Tip> {
    let dom = func.base().dom(f);
    SpanRep {
        contains: Box::new(move |s| func.tip_contains(f, s)),
        left_elems: Box::new(move |bound| func.object_elems(&dom, bound)),
        over: Box::new(move |x| func.tips_over(f, x)),
        left: Box::new(move |s| func.left(s)),
        right: Box::new(move |s| func.right(s)),
    }
}

/// Composition by pullback: pairs whose inner legs agree.
pub fn span_compose<'a, E, S, T>(
    a: SpanRep<'a, E, S>,
    b: SpanRep<'a, E, T>,
) -> SpanRep<'a, E, (S, T)>
where
    E: PartialEq + 'a,
    S: Clone + 'a,
    T: Clone + 'a,
{
    let a = Rc::new(a);
    let b = Rc::new(b);
    let (a1, b1, a2, a3, b2, b3, a4) =
        (a.clone(), b.clone(), a.clone(), a.clone(), b.clone(), b, a);
    SpanRep {
        contains: Box::new(move |(s, t)| {
            (a1.contains)(s) && (b1.contains)(t) && (a1.right)(s) == (b1.left)(t)
        }),
        left_elems: Box::new(move |bound| (a4.left_elems)(bound)),
        over: Box::new(move |x| {
            let mut out = Vec::new();
            for s in (a2.over)(x) {
                for t in (b3.over)(&(a2.right)(&s)) {
                    out.push((s.clone(), t));
                }
            }
            out
        }),
        left: Box::new(move |(s, _)| (a3.left)(s)),
        right: Box::new(move |(_, t)| (b2.right)(t)),
    }
}

/// The collective-token external semantics: every object goes to the set of
/// anti-markings, and `f` to the executions with the same generator count as
/// `f`, running backwards (left leg the target, right leg the source).
#[derive(Debug, Clone)]
pub struct ExternalComm {
    cat: CommCategory,
}

impl ExternalComm {
    pub fn new(cat: CommCategory) -> Self {
        ExternalComm { cat }
    }
}

/// Sum of `pre` (or `post`) over the transitions counted in `chi`.
fn flow(cat: &CommCategory, chi: &Multiset, pre: bool) -> Multiset {
    let mut out = Multiset::new();
    for (u, c) in chi.iter() {
        let t = cat.net().transition(u).expect("generator of the net");
        let side = if pre { &t.pre } else { &t.post };
        for _ in 0..c {
            out = out.sum(side);
        }
    }
    out
}

impl LaxSpanFunctor for ExternalComm {
    type Base = CommCategory;
    type Elem = Multiset;
    type Tip = CommMorphism;
    type TipKey = CommMorphism;

    fn base(&self) -> &CommCategory {
        &self.cat
    }

    fn object_contains(&self, _x: &Multiset, e: &Multiset) -> bool {
        e.support().all(|p| self.cat.net().has_place(p))
    }

    fn object_elems(&self, _x: &Multiset, bound: usize) -> Vec<Multiset> {
        multisets_up_to(self.cat.net().places(), bound)
    }

    fn elem_unit(&self) -> Multiset {
        Multiset::new()
    }

    fn elem_tensor(&self, a: &Multiset, b: &Multiset) -> Multiset {
        a.sum(b)
    }

    fn tip_contains(&self, f: &CommMorphism, s: &CommMorphism) -> bool {
        s.chi() == f.chi()
    }

    fn tips_over(&self, f: &CommMorphism, left: &Multiset) -> Vec<CommMorphism> {
        let chi = f.chi();
        let Some(start) = left
            .sum(&flow(&self.cat, &chi, true))
            .checked_sub(&flow(&self.cat, &chi, false))
        else {
            return Vec::new();
        };
        self.cat.enumerate_with_chi(&start, &chi)
    }

    fn left(&self, s: &CommMorphism) -> Multiset {
        s.cod().clone()
    }

    fn right(&self, s: &CommMorphism) -> Multiset {
        s.dom().clone()
    }

    fn tip_key(&self, s: &CommMorphism) -> CommMorphism {
        s.clone()
    }

    fn comp_laxator(&self, s: &CommMorphism, t: &CommMorphism) -> CommMorphism {
        self.cat.compose(t, s).expect("inner legs agree")
    }

    fn mon_laxator(&self, s: &CommMorphism, t: &CommMorphism) -> CommMorphism {
        self.cat.tensor(s, t)
    }

    fn unit_laxator(&self, e: &Multiset) -> CommMorphism {
        self.cat.identity_on(e)
    }

    fn total_objects(&self, bound: usize) -> Vec<(Multiset, Multiset)> {
        let places = self.cat.net().places();
        let mut out = Vec::new();
        for x in multisets_up_to(places, bound) {
            for a in multisets_up_to(places, bound - x.size() as usize) {
                out.push((x.clone(), a));
            }
        }
        out
    }
}

/// A strict monoidal functor between two execution categories, as needed by
/// the Γ construction.
pub trait ExecFunctor {
    type Src: MonoidalCategory;
    type Tgt: MonoidalCategory;
    fn src(&self) -> &Self::Src;
    fn tgt(&self) -> &Self::Tgt;
    fn map_obj(
        &self,
        d: &<Self::Src as MonoidalCategory>::Obj,
    ) -> <Self::Tgt as MonoidalCategory>::Obj;
    fn map_mor(
        &self,
        g: &<Self::Src as MonoidalCategory>::Mor,
    ) -> <Self::Tgt as MonoidalCategory>::Mor;
}

/// A collective-token presentation viewed as a functor.
pub struct CommFunctor {
    pres: FunctorPresentation,
    src: CommCategory,
    tgt: CommCategory,
}

impl CommFunctor {
    pub fn new(pres: FunctorPresentation) -> Self {
        let src = CommCategory::new(pres.source().clone());
        let tgt = CommCategory::new(pres.target().clone());
        CommFunctor { pres, src, tgt }
    }

    pub fn presentation(&self) -> &FunctorPresentation {
        &self.pres
    }
}

impl ExecFunctor for CommFunctor {
    type Src = CommCategory;
    type Tgt = CommCategory;

    fn src(&self) -> &CommCategory {
        &self.src
    }

    fn tgt(&self) -> &CommCategory {
        &self.tgt
    }

    fn map_obj(&self, d: &Multiset) -> Multiset {
        self.pres.map_multiset(d)
    }

    fn map_mor(&self, g: &CommMorphism) -> CommMorphism {
        self.pres.apply_comm(g).expect("image of a valid execution")
    }
}

/// An individual-token presentation viewed as a functor.
pub struct FreeFunctor {
    pres: FunctorPresentation,
    src: SymCategory,
    tgt: SymCategory,
}

impl FreeFunctor {
    pub fn new(pres: FunctorPresentation) -> Self {
        let src = SymCategory::new(pres.source().clone());
        let tgt = SymCategory::new(pres.target().clone());
        FreeFunctor { pres, src, tgt }
    }

    pub fn presentation(&self) -> &FunctorPresentation {
        &self.pres
    }
}

impl ExecFunctor for FreeFunctor {
    type Src = SymCategory;
    type Tgt = SymCategory;

    fn src(&self) -> &SymCategory {
        &self.src
    }

    fn tgt(&self) -> &SymCategory {
        &self.tgt
    }

    fn map_obj(&self, d: &Vec<Sym>) -> Vec<Sym> {
        self.pres.map_word(d)
    }

    fn map_mor(&self, g: &Diagram) -> Diagram {
        self.pres.apply_sym(g).expect("image of a valid diagram")
    }
}

/// The Γ construction: `C ↦ {D | F D = C}`, and `f` to the span
/// `dom ← {g | F g = f} → cod`.
///
/// Fibres of morphisms are enumerated among source morphisms with as many
/// generators as `f`, so `F` is expected to send generators to single
/// generators (true of identities, counits, comultiplications and liftings).
pub struct Gamma<F: ExecFunctor> {
    functor: F,
}

impl<F: ExecFunctor> Gamma<F> {
    pub fn new(functor: F) -> Self {
        Gamma { functor }
    }

    pub fn functor(&self) -> &F {
        &self.functor
    }
}

impl<F> LaxSpanFunctor for Gamma<F>
where
    F: ExecFunctor,
{
    type Base = F::Tgt;
    type Elem = <F::Src as MonoidalCategory>::Obj;
    type Tip = <F::Src as MonoidalCategory>::Mor;
    type TipKey = <F::Src as MonoidalCategory>::Key;

    fn base(&self) -> &F::Tgt {
        self.functor.tgt()
    }

    fn object_contains(&self, x: &Obj<Self>, e: &Self::Elem) -> bool {
        self.functor.map_obj(e) == *x
    }

    fn object_elems(&self, x: &Obj<Self>, bound: usize) -> Vec<Self::Elem> {
        let src = self.functor.src();
        src.objects_up_to(bound)
            .into_iter()
            .filter(|d| self.functor.map_obj(d) == *x)
            .collect()
    }

    fn elem_unit(&self) -> Self::Elem {
        self.functor.src().unit()
    }

    fn elem_tensor(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.functor.src().tensor_obj(a, b)
    }

    fn tip_contains(&self, f: &Mor<Self>, s: &Self::Tip) -> bool {
        let tgt = self.functor.tgt();
        tgt.key(&self.functor.map_mor(s)) == tgt.key(f)
    }

    fn tips_over(&self, f: &Mor<Self>, left: &Self::Elem) -> Vec<Self::Tip> {
        let tgt = self.functor.tgt();
        if self.functor.map_obj(left) != tgt.dom(f) {
            return Vec::new();
        }
        let k = tgt.chi(f).size() as usize;
        let want = tgt.key(f);
        let src = self.functor.src();
        src.homs_from(left, k)
            .into_iter()
            .filter(|g| {
                src.chi(g).size() as usize == k && tgt.key(&self.functor.map_mor(g)) == want
            })
            .collect()
    }

    fn left(&self, s: &Self::Tip) -> Self::Elem {
        self.functor.src().dom(s)
    }

    fn right(&self, s: &Self::Tip) -> Self::Elem {
        self.functor.src().cod(s)
    }

    fn tip_key(&self, s: &Self::Tip) -> Self::TipKey {
        self.functor.src().key(s)
    }

    fn comp_laxator(&self, s: &Self::Tip, t: &Self::Tip) -> Self::Tip {
        self.functor.src().compose(s, t).expect("inner legs agree")
    }

    fn mon_laxator(&self, s: &Self::Tip, t: &Self::Tip) -> Self::Tip {
        self.functor.src().tensor(s, t)
    }

    fn unit_laxator(&self, e: &Self::Elem) -> Self::Tip {
        self.functor.src().identity(e)
    }

    fn total_objects(&self, bound: usize) -> Vec<(Obj<Self>, Self::Elem)> {
        self.functor
            .src()
            .objects_up_to(bound)
            .into_iter()
            .map(|d| (self.functor.map_obj(&d), d))
            .collect()
    }
}

pub fn external_comm(cat: CommCategory) -> ExternalComm {
    ExternalComm::new(cat)
}

/// Γ of a presented functor in the individual-token philosophy.
pub fn gamma(pres: FunctorPresentation) -> Gamma<FreeFunctor> {
    Gamma::new(FreeFunctor::new(pres))
}

/// Γ of a presented functor in the collective-token philosophy.
pub fn gamma_comm(pres: FunctorPresentation) -> Gamma<CommFunctor> {
    Gamma::new(CommFunctor::new(pres))
}

/// The individual-token external semantics: Γ of the counit.
pub fn external_indiv(
    net: std::sync::Arc<crate::net::PetriNet>,
) -> Result<Gamma<FreeFunctor>, PresentationError> {
    Ok(gamma(FunctorPresentation::counit(
        net,
        crate::category::Philosophy::Free,
    )))
}

pub type TotalCategory<F> =
    EnumeratedCategory<(Obj<F>, <F as LaxSpanFunctor>::Elem), (Mor<F>, <F as LaxSpanFunctor>::Tip)>;

/// The truncated total category: objects `(X, x)` from `total_objects`,
/// morphisms `(f, s)` with `f` using at most `max_generators` generators and
/// `s` a tip element over `f` with left leg `x`, composed by the laxator.
pub fn total_category<F: LaxSpanFunctor>(
    func: &F,
    object_bound: usize,
    max_generators: usize,
) -> TotalCategory<F> {
    let base = func.base();
    EnumeratedCategory::build(
        func.total_objects(object_bound),
        |(x, e)| {
            let mut out = Vec::new();
            for f in base.homs_from(x, max_generators) {
                for s in func.tips_over(&f, e) {
                    out.push(((base.cod(&f), func.right(&s)), (f.clone(), s)));
                }
            }
            out
        },
        |(x, e)| (base.identity(x), func.unit_laxator(e)),
        |(f, s), (g, t)| Some((base.compose(f, g).ok()?, func.comp_laxator(s, t))),
        |(f, s)| (base.key(f), func.tip_key(s)),
    )
}

/// Bounds for sampled coherence checks.
#[derive(Debug, Clone, Copy)]
pub struct SampleBounds {
    /// Size of base objects.
    pub object: usize,
    /// Size of elements of the sets over them.
    pub elem: usize,
    /// Generators per sampled base morphism.
    pub generators: usize,
}

#[derive(Debug, Clone, Default)]
pub struct CoherenceReport {
    pub samples: usize,
    pub counterexamples: Vec<String>,
}

impl CoherenceReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

struct Step<F: LaxSpanFunctor> {
    f: Mor<F>,
    s: F::Tip,
}

/// A random step `(f, s)` out of `(cod, right)`, if one exists.
fn sample_step<F: LaxSpanFunctor>(
    func: &F,
    rng: &mut ChaCha8Rng,
    x: &Obj<F>,
    e: &F::Elem,
    k: usize,
) -> Option<Step<F>> {
    let homs = func.base().homs_from(x, k);
    let mut pairs: Vec<(Mor<F>, F::Tip)> = Vec::new();
    for f in homs.choose_multiple(rng, 6) {
        for s in func.tips_over(f, e) {
            pairs.push((f.clone(), s));
        }
    }
    pairs.choose(rng).map(|(f, s)| Step {
        f: f.clone(),
        s: s.clone(),
    })
}

/// Samples chains `(f, s) ; (g, t) ; (h, u)` and independent pairs and checks
/// that laxators land in the right tips with the right legs, are associative
/// and unital, and that the monoidal laxator is compatible with composition.
pub fn check_lax_coherence<F: LaxSpanFunctor>(
    func: &F,
    samples: usize,
    seed: u64,
    bounds: SampleBounds,
) -> CoherenceReport {
    let base = func.base();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects = base.objects_up_to(bounds.object);
    let mut report = CoherenceReport::default();
    let mut attempts = 0;
    let chain = |rng: &mut ChaCha8Rng| -> Option<(Step<F>, Step<F>, Step<F>)> {
        let x = objects.choose(rng)?.clone();
        let elems = func.object_elems(&x, bounds.elem);
        let e = elems.choose(rng)?.clone();
        let g = bounds.generators.max(1);
        let k = rng.gen_range(1..=g);
        let a = sample_step(func, rng, &x, &e, k)?;
        let k = rng.gen_range(1..=g);
        let b = sample_step(func, rng, &base.cod(&a.f), &func.right(&a.s), k)?;
        let k = rng.gen_range(0..=g);
        let c = sample_step(func, rng, &base.cod(&b.f), &func.right(&b.s), k)?;
        Some((a, b, c))
    };
    while report.samples < samples && attempts < samples * 50 {
        attempts += 1;
        let Some((a, b, c)) = chain(&mut rng) else {
            continue;
        };
        let Some((a2, b2, _)) = chain(&mut rng) else {
            continue;
        };
        report.samples += 1;
        let bad = &mut report.counterexamples;
        let key = |s: &F::Tip| func.tip_key(s);

        let fg = base.compose(&a.f, &b.f).expect("chain is composable");
        let st = func.comp_laxator(&a.s, &b.s);
        if !func.tip_contains(&fg, &st) {
            bad.push(format!("composite {st:?} is not over {fg:?}"));
        }
        if func.left(&st) != func.left(&a.s) || func.right(&st) != func.right(&b.s) {
            bad.push(format!(
                "composition laxator moves legs at ({:?}, {:?})",
                a.s, b.s
            ));
        }
        let l = func.comp_laxator(&st, &c.s);
        let r = func.comp_laxator(&a.s, &func.comp_laxator(&b.s, &c.s));
        if key(&l) != key(&r) {
            bad.push(format!(
                "composition laxator is not associative at {:?}",
                a.s
            ));
        }
        let il = func.comp_laxator(&func.unit_laxator(&func.left(&a.s)), &a.s);
        let ir = func.comp_laxator(&a.s, &func.unit_laxator(&func.right(&a.s)));
        if key(&il) != key(&a.s) || key(&ir) != key(&a.s) {
            bad.push(format!("unit laxator is not unital at {:?}", a.s));
        }

        let ff = base.tensor(&a.f, &a2.f);
        let ss = func.mon_laxator(&a.s, &a2.s);
        if !func.tip_contains(&ff, &ss) {
            bad.push(format!("product {ss:?} is not over {ff:?}"));
        }
        if func.left(&ss) != func.elem_tensor(&func.left(&a.s), &func.left(&a2.s))
            || func.right(&ss) != func.elem_tensor(&func.right(&a.s), &func.right(&a2.s))
        {
            bad.push(format!(
                "monoidal laxator moves legs at ({:?}, {:?})",
                a.s, a2.s
            ));
        }
        let unit = func.unit_laxator(&func.elem_unit());
        if key(&func.mon_laxator(&a.s, &unit)) != key(&a.s) {
            bad.push(format!("monoidal laxator is not unital at {:?}", a.s));
        }
        let lhs = func.mon_laxator(&st, &func.comp_laxator(&a2.s, &b2.s));
        let rhs = func.comp_laxator(&ss, &func.mon_laxator(&b.s, &b2.s));
        if key(&lhs) != key(&rhs) {
            bad.push(format!(
                "laxators do not interchange at ({:?}, {:?})",
                a.s, a2.s
            ));
        }
    }
    report
}

/// Wraps a functor and replaces its composition laxator by one that ignores
/// the second factor; a coherence check must catch it.
pub struct CorruptedLaxator<'a, F>(pub &'a F);

impl<F: LaxSpanFunctor> LaxSpanFunctor for CorruptedLaxator<'_, F> {
    type Base = F::Base;
    type Elem = F::Elem;
    type Tip = F::Tip;
    type TipKey = F::TipKey;

    fn base(&self) -> &F::Base {
        self.0.base()
    }
    fn object_contains(&self, x: &Obj<Self>, e: &F::Elem) -> bool {
        self.0.object_contains(x, e)
    }
    fn object_elems(&self, x: &Obj<Self>, bound: usize) -> Vec<F::Elem> {
        self.0.object_elems(x, bound)
    }
    fn elem_unit(&self) -> F::Elem {
        self.0.elem_unit()
    }
    fn elem_tensor(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.elem_tensor(a, b)
    }
    fn tip_contains(&self, f: &Mor<Self>, s: &F::Tip) -> bool {
        self.0.tip_contains(f, s)
    }
    fn tips_over(&self, f: &Mor<Self>, left: &F::Elem) -> Vec<F::Tip> {
        self.0.tips_over(f, left)
    }
    fn left(&self, s: &F::Tip) -> F::Elem {
        self.0.left(s)
    }
    fn right(&self, s: &F::Tip) -> F::Elem {
        self.0.right(s)
    }
    fn tip_key(&self, s: &F::Tip) -> F::TipKey {
        self.0.tip_key(s)
    }
    fn comp_laxator(&self, s: &F::Tip, _t: &F::Tip) -> F::Tip {
        s.clone()
    }
    fn mon_laxator(&self, s: &F::Tip, t: &F::Tip) -> F::Tip {
        self.0.mon_laxator(s, t)
    }
    fn unit_laxator(&self, e: &F::Elem) -> F::Tip {
        self.0.unit_laxator(e)
    }
    fn total_objects(&self, bound: usize) -> Vec<(Obj<Self>, F::Elem)> {
        self.0.total_objects(bound)
    }
}

/// Keys of every tip element over `f` with left leg of size at most `bound`.
pub fn tip_keys<F: LaxSpanFunctor>(func: &F, f: &Mor<F>, bound: usize) -> BTreeSet<F::TipKey> {
    span_of(func, f)
        .enumerate(bound)
        .iter()
        .map(|s| func.tip_key(s))
        .collect()
}
