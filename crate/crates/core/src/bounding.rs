//! The anti-place bounding transform and the comonad it carries.
//!
//! Each place `p` becomes a pair `p+` (tokens) and `p-` (anti-tokens, i.e.
//! remaining capacity). A transition consuming `A` and producing `B` now
//! consumes `A+ ⊕ B-` and produces `A- ⊕ B+`, so every firing preserves
//! `m(p+) + m(p-)` for each place.
//!
//! Strict monoidal functors between execution categories of nets are given by
//! presentations: a string of target places for every source place and a
//! target morphism for every source transition. Counit, comultiplication,
//! the functorial action of bounding and composition are all presentations,
//! and the comonad laws are checked as equalities of presentations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::category::Philosophy;
use crate::error::{NetError, PresentationError};
use crate::exec_comm::{CommCategory, CommMorphism, FiringSequence};
use crate::exec_symm::{
    stable_permutation, sym_compose, sym_equal, sym_generator, BoxNode, Diagram, Src,
};
use crate::multiset::{Multiset, Sym};
use crate::net::{Marking, PetriNet, Transition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Fwd,
    Bwd,
}

impl Polarity {
    fn suffix(self) -> char {
        match self {
            Polarity::Fwd => '+',
            Polarity::Bwd => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPlace {
    pub base: Sym,
    pub polarity: Polarity,
}

impl SignedPlace {
    pub fn name(&self) -> Sym {
        signed(&self.base, self.polarity)
    }

    /// Splits off the last polarity suffix, if any.
    pub fn parse(s: &Sym) -> Option<SignedPlace> {
        let str = s.as_str();
        let polarity = match str.chars().last()? {
            '+' => Polarity::Fwd,
            '-' => Polarity::Bwd,
            _ => return None,
        };
        Some(SignedPlace {
            base: Sym::new(&str[..str.len() - 1]),
            polarity,
        })
    }
}

impl fmt::Display for SignedPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, self.polarity.suffix())
    }
}

pub fn signed(p: &Sym, polarity: Polarity) -> Sym {
    Sym::new(format!("{p}{}", polarity.suffix()))
}

fn sign_all(w: &[Sym], polarity: Polarity) -> Vec<Sym> {
    w.iter().map(|p| signed(p, polarity)).collect()
}

/// Which side each position of a bounded transition's input string comes
/// from: `(true, i)` is the i-th input of the original transition, `(false,
/// i)` its i-th output. Positions alternate, the shorter side padding with
/// nothing. The output string of the bounded transition uses the same layout.
pub fn interleave_layout(n_in: usize, n_out: usize) -> Vec<(bool, usize)> {
    let mut out = Vec::with_capacity(n_in + n_out);
    for k in 0..n_in.max(n_out) {
        if k < n_in {
            out.push((true, k));
        }
        if k < n_out {
            out.push((false, k));
        }
    }
    out
}

pub fn bound_transition(t: &Transition) -> Transition {
    let layout = interleave_layout(t.input.len(), t.output.len());
    let pick = |from_input: bool, i: usize, on_input: Polarity, on_output: Polarity| {
        if from_input {
            signed(&t.input[i], on_input)
        } else {
            signed(&t.output[i], on_output)
        }
    };
    let input = layout
        .iter()
        .map(|&(s, i)| pick(s, i, Polarity::Fwd, Polarity::Bwd))
        .collect();
    let output = layout
        .iter()
        .map(|&(s, i)| pick(s, i, Polarity::Bwd, Polarity::Fwd))
        .collect();
    Transition::with_words(t.name.clone(), input, output)
}

/// The bounded net: places `p+`, `p-` for each place `p` and the bounded
/// version of every transition.
pub fn bound_net(net: &PetriNet) -> PetriNet {
    let places = net
        .places()
        .iter()
        .flat_map(|p| [signed(p, Polarity::Fwd), signed(p, Polarity::Bwd)])
        .collect();
    let transitions = net.transitions().iter().map(bound_transition).collect();
    PetriNet::new(places, transitions).expect("bounding preserves well-formedness")
}

/// The initial marking of the bounded net: `p+ = m0(p)` and `p- = cap(p) -
/// m0(p)`. Places missing from `capacity` are capped at their initial count.
pub fn initial_antimarking(
    net: &PetriNet,
    m0: &Marking,
    capacity: &BTreeMap<Sym, u64>,
) -> Result<Marking, NetError> {
    net.check_marking(m0)?;
    if let Some(p) = capacity.keys().find(|p| !net.has_place(p)) {
        return Err(NetError::UnknownPlace(p.clone()));
    }
    let mut out = Multiset::new();
    for p in net.places() {
        let have = m0.count(p);
        let cap = capacity.get(p).copied().unwrap_or(have);
        if cap < have {
            return Err(NetError::CapacityExceeded {
                place: p.clone(),
                capacity: cap,
                initial: have,
            });
        }
        out.insert(signed(p, Polarity::Fwd), have);
        out.insert(signed(p, Polarity::Bwd), cap - have);
    }
    Ok(out)
}

/// Tokens of a bounded marking on the original places.
pub fn erase_marking(m: &Marking) -> Marking {
    split_marking(m).0
}

/// Splits a bounded marking into its tokens and anti-tokens, both over the
/// original places.
pub fn split_marking(m: &Marking) -> (Marking, Marking) {
    let mut fwd = Multiset::new();
    let mut bwd = Multiset::new();
    for (s, c) in m.iter() {
        let sp = SignedPlace::parse(s).expect("bounded marking has signed places");
        match sp.polarity {
            Polarity::Fwd => fwd.insert(sp.base, c),
            Polarity::Bwd => bwd.insert(sp.base, c),
        }
    }
    (fwd, bwd)
}

/// The image of a generating morphism under a presented functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Image {
    Comm(CommMorphism),
    Free(Diagram),
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Comm(m) => write!(f, "{m}"),
            Image::Free(d) => write!(f, "{d}"),
        }
    }
}

/// A strict monoidal functor between the execution categories of two nets,
/// given on generators.
#[derive(Debug, Clone)]
pub struct FunctorPresentation {
    philosophy: Philosophy,
    source: Arc<PetriNet>,
    target: Arc<PetriNet>,
    objects: BTreeMap<Sym, Vec<Sym>>,
    morphisms: BTreeMap<Sym, Image>,
}

impl FunctorPresentation {
    /// Checks that every generator has an image of the right kind and that
    /// each image's boundary is the image of the generator's boundary.
    pub fn new(
        philosophy: Philosophy,
        source: Arc<PetriNet>,
        target: Arc<PetriNet>,
        objects: BTreeMap<Sym, Vec<Sym>>,
        morphisms: BTreeMap<Sym, Image>,
    ) -> Result<Self, PresentationError> {
        for p in source.places() {
            let img = objects
                .get(p)
                .ok_or_else(|| PresentationError::MissingImage(p.clone()))?;
            if let Some(q) = img.iter().find(|q| !target.has_place(q)) {
                return Err(PresentationError::Boundary {
                    generator: p.clone(),
                    detail: format!("`{q}` is not a place of the target"),
                });
            }
        }
        let f = FunctorPresentation {
            philosophy,
            source,
            target,
            objects,
            morphisms,
        };
        for t in f.source.transitions() {
            let img = f
                .morphisms
                .get(&t.name)
                .ok_or_else(|| PresentationError::MissingImage(t.name.clone()))?;
            let boundary = |detail: String| PresentationError::Boundary {
                generator: t.name.clone(),
                detail,
            };
            match (philosophy, img) {
                (Philosophy::Comm, Image::Comm(m)) => {
                    if m.dom() != &f.map_multiset(&t.pre) || m.cod() != &f.map_multiset(&t.post) {
                        return Err(boundary(format!("{m}")));
                    }
                }
                (Philosophy::Free, Image::Free(d)) => {
                    if d.inputs() != f.map_word(&t.input) || d.outputs() != f.map_word(&t.output) {
                        return Err(boundary(format!("{d}")));
                    }
                    SymCheck(&f.target)
                        .check(d)
                        .map_err(PresentationError::Morphism)?;
                }
                _ => return Err(boundary("image in the wrong philosophy".into())),
            }
        }
        Ok(f)
    }

    pub fn philosophy(&self) -> Philosophy {
        self.philosophy
    }

    pub fn source(&self) -> &Arc<PetriNet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PetriNet> {
        &self.target
    }

    pub fn object_image(&self, p: &Sym) -> &[Sym] {
        &self.objects[p]
    }

    pub fn morphism_image(&self, u: &Sym) -> &Image {
        &self.morphisms[u]
    }

    pub fn map_word(&self, w: &[Sym]) -> Vec<Sym> {
        w.iter()
            .flat_map(|p| self.objects[p].iter().cloned())
            .collect()
    }

    pub fn map_multiset(&self, m: &Multiset) -> Multiset {
        let mut out = Multiset::new();
        for (p, c) in m.iter() {
            for q in &self.objects[p] {
                out.insert(q.clone(), c);
            }
        }
        out
    }

    fn comm_image(&self, u: &Sym) -> &CommMorphism {
        match &self.morphisms[u] {
            Image::Comm(m) => m,
            Image::Free(_) => unreachable!("checked at construction"),
        }
    }

    fn free_image(&self, u: &Sym) -> &Diagram {
        match &self.morphisms[u] {
            Image::Free(d) => d,
            Image::Comm(_) => unreachable!("checked at construction"),
        }
    }

    /// The functor applied to an arbitrary collective-token execution.
    pub fn apply_comm(&self, f: &CommMorphism) -> Result<CommMorphism, PresentationError> {
        let mut steps = Vec::new();
        for u in f.linearize() {
            steps.extend(self.comm_image(&u).linearize());
        }
        let start = self.map_multiset(f.dom());
        Ok(CommCategory::new(self.target.clone()).of_sequence(&FiringSequence { start, steps })?)
    }

    /// The functor applied to an arbitrary diagram: every box is replaced by
    /// its image and every wire by the parallel wires of its label's image.
    pub fn apply_sym(&self, d: &Diagram) -> Result<Diagram, PresentationError> {
        let width = |p: &Sym| self.objects[p].len();
        let offsets = |w: &[Sym]| -> Vec<usize> {
            let mut acc = 0;
            w.iter()
                .map(|p| {
                    let o = acc;
                    acc += width(p);
                    o
                })
                .collect()
        };
        let images: Vec<&Diagram> = d
            .boxes()
            .iter()
            .map(|b| self.free_image(&b.label))
            .collect();
        let mut base = Vec::with_capacity(images.len());
        let mut total = 0;
        for img in &images {
            base.push(total);
            total += img.boxes().len();
        }
        let in_off = offsets(d.inputs());
        let box_in: Vec<Vec<usize>> = d.boxes().iter().map(|b| offsets(&b.inputs)).collect();
        let box_out: Vec<Vec<usize>> = d.boxes().iter().map(|b| offsets(&b.outputs)).collect();
        // position `j` of box `b`'s expanded input string, as (port, strand)
        let locate = |b: usize, j: usize| -> (usize, usize) {
            let p = box_in[b].partition_point(|&o| o <= j) - 1;
            (p, j - box_in[b][p])
        };
        let resolve = |mut src: Src, mut k: usize| -> Src {
            loop {
                match src {
                    Src::Input(i) => return Src::Input(in_off[i] + k),
                    Src::Port(b, q) => match images[b].feeds()[box_out[b][q] + k] {
                        Src::Port(c, r) => return Src::Port(base[b] + c, r),
                        Src::Input(j) => {
                            let (p, k2) = locate(b, j);
                            src = d.boxes()[b].feeds[p];
                            k = k2;
                        }
                    },
                }
            }
        };
        let mut boxes = Vec::with_capacity(total);
        for (b, img) in images.iter().enumerate() {
            for bx in img.boxes() {
                let feeds = bx
                    .feeds
                    .iter()
                    .map(|s| match *s {
                        Src::Port(c, r) => Src::Port(base[b] + c, r),
                        Src::Input(j) => {
                            let (p, k) = locate(b, j);
                            resolve(d.boxes()[b].feeds[p], k)
                        }
                    })
                    .collect();
                boxes.push(BoxNode {
                    feeds,
                    ..bx.clone()
                });
            }
        }
        let mut feeds = Vec::new();
        for (o, p) in d.outputs().iter().enumerate() {
            for k in 0..width(p) {
                feeds.push(resolve(d.feeds()[o], k));
            }
        }
        Ok(Diagram::from_parts(
            self.map_word(d.inputs()),
            self.map_word(d.outputs()),
            boxes,
            feeds,
        )?)
    }

    pub fn apply(&self, img: &Image) -> Result<Image, PresentationError> {
        Ok(match img {
            Image::Comm(m) => Image::Comm(self.apply_comm(m)?),
            Image::Free(d) => Image::Free(self.apply_sym(d)?),
        })
    }

    pub fn identity(net: Arc<PetriNet>, philosophy: Philosophy) -> Self {
        let objects = net
            .places()
            .iter()
            .map(|p| (p.clone(), vec![p.clone()]))
            .collect();
        let morphisms = generator_images(&net, philosophy, |t| t.name.clone());
        FunctorPresentation::new(philosophy, net.clone(), net, objects, morphisms)
            .expect("identity is well formed")
    }

    /// `ε`: forgets anti-places, `p+ ↦ p`, `p- ↦ I`, `u ↦ u`.
    pub fn counit(net: Arc<PetriNet>, philosophy: Philosophy) -> Self {
        let bounded = Arc::new(bound_net(&net));
        let mut objects = BTreeMap::new();
        for p in net.places() {
            objects.insert(signed(p, Polarity::Fwd), vec![p.clone()]);
            objects.insert(signed(p, Polarity::Bwd), vec![]);
        }
        let morphisms = generator_images(&net, philosophy, |t| t.name.clone());
        FunctorPresentation::new(philosophy, bounded, net, objects, morphisms)
            .expect("counit is well formed")
    }

    /// `δ`: `p+ ↦ p++ ⊗ p--`, `p- ↦ p-+ ⊗ p+-`, `u ↦ u`.
    pub fn comult(net: Arc<PetriNet>, philosophy: Philosophy) -> Self {
        let once = Arc::new(bound_net(&net));
        let twice = Arc::new(bound_net(&once));
        let mut objects = BTreeMap::new();
        for p in net.places() {
            let (fwd, bwd) = (signed(p, Polarity::Fwd), signed(p, Polarity::Bwd));
            objects.insert(
                fwd.clone(),
                vec![signed(&fwd, Polarity::Fwd), signed(&bwd, Polarity::Bwd)],
            );
            objects.insert(
                bwd.clone(),
                vec![signed(&bwd, Polarity::Fwd), signed(&fwd, Polarity::Bwd)],
            );
        }
        let map =
            |w: &[Sym]| -> Vec<Sym> { w.iter().flat_map(|p| objects[p].iter().cloned()).collect() };
        let mut morphisms = generator_images(&twice, philosophy, |t| t.name.clone());
        if philosophy == Philosophy::Free {
            // the doubly bounded generator lists `(p+)-` before `(p-)+` on its
            // output side, so the image crosses those strands back
            for t in once.transitions() {
                let gen = sym_generator(&twice, &t.name).expect("own transition");
                let fix = stable_permutation(gen.outputs(), &map(&t.output)).expect("same strands");
                let dom = stable_permutation(&map(&t.input), gen.inputs()).expect("same strands");
                let img = sym_compose(&sym_compose(&dom, &gen).expect("fits"), &fix).expect("fits");
                morphisms.insert(t.name.clone(), Image::Free(img));
            }
        }
        FunctorPresentation::new(philosophy, once, twice, objects, morphisms)
            .expect("comultiplication is well formed")
    }

    /// `self ; g`.
    pub fn compose(&self, g: &FunctorPresentation) -> Result<Self, PresentationError> {
        if self.philosophy != g.philosophy || *self.target != *g.source {
            return Err(PresentationError::Mismatch(
                "target of the first is not the source of the second".into(),
            ));
        }
        let objects = self
            .objects
            .iter()
            .map(|(p, w)| (p.clone(), g.map_word(w)))
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .map(|(u, img)| Ok((u.clone(), g.apply(img)?)))
            .collect::<Result<_, PresentationError>>()?;
        FunctorPresentation::new(
            self.philosophy,
            self.source.clone(),
            g.target.clone(),
            objects,
            morphisms,
        )
    }

    /// The functorial action of bounding: `X± ↦ (F X)±` and `u ↦ v` when
    /// `F u` is the single generator `v`. In the individual-token case the
    /// wiring of `F u` fixes how the bounded generator `v` is wired.
    pub fn lift(&self) -> Result<Self, PresentationError> {
        let source = Arc::new(bound_net(&self.source));
        let target = Arc::new(bound_net(&self.target));
        let mut objects = BTreeMap::new();
        for (p, w) in &self.objects {
            objects.insert(signed(p, Polarity::Fwd), sign_all(w, Polarity::Fwd));
            objects.insert(signed(p, Polarity::Bwd), sign_all(w, Polarity::Bwd));
        }
        let mut morphisms = BTreeMap::new();
        for t in self.source.transitions() {
            let img = match &self.morphisms[&t.name] {
                Image::Comm(m) => {
                    let chi = m.chi();
                    let v = match chi.to_word().as_slice() {
                        [v] => v.clone(),
                        _ => return Err(PresentationError::NotGeneratorPreserving(t.name.clone())),
                    };
                    if m.dom() != &target_pre(&self.target, &v)? {
                        return Err(PresentationError::NotGeneratorPreserving(t.name.clone()));
                    }
                    Image::Comm(CommCategory::new(target.clone()).generator(&v)?)
                }
                Image::Free(d) => Image::Free(self.lift_free(t, d, &target)?),
            };
            morphisms.insert(t.name.clone(), img);
        }
        FunctorPresentation::new(self.philosophy, source, target, objects, morphisms)
    }

    fn lift_free(
        &self,
        t: &Transition,
        d: &Diagram,
        target: &Arc<PetriNet>,
    ) -> Result<Diagram, PresentationError> {
        let not_gen = || PresentationError::NotGeneratorPreserving(t.name.clone());
        let [bx] = d.boxes() else {
            return Err(not_gen());
        };
        // port of the single box fed by each input position, and feeding each output
        let mut in_port = vec![usize::MAX; d.inputs().len()];
        for (p, s) in bx.feeds.iter().enumerate() {
            match s {
                Src::Input(i) => in_port[*i] = p,
                Src::Port(..) => return Err(not_gen()),
            }
        }
        let out_port = d
            .feeds()
            .iter()
            .map(|s| match s {
                Src::Port(0, q) => Ok(*q),
                _ => Err(not_gen()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let v = target
            .transition(&bx.label)
            .map_err(|e| PresentationError::Morphism(e.into()))?;
        let bv = sym_generator(target, &v.name)?;
        let v_layout = interleave_layout(bx.inputs.len(), bx.outputs.len());
        let v_pos = |side: bool, i: usize| {
            v_layout
                .iter()
                .position(|&e| e == (side, i))
                .expect("in layout")
        };

        // F applied to the pieces of u's bounded interface, block by block
        let u_layout = interleave_layout(t.input.len(), t.output.len());
        let in_off = prefix(&t.input, |p| self.objects[p].len());
        let out_off = prefix(&t.output, |p| self.objects[p].len());
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        // for each bounded input position: which port of Bv it feeds
        let mut feeds_of_port = vec![Src::Input(0); bv.inputs().len()];
        let mut out_feeds = Vec::new();
        for &(side, k) in &u_layout {
            let (place, off) = if side {
                (&t.input[k], in_off[k])
            } else {
                (&t.output[k], out_off[k])
            };
            for (j, q) in self.objects[place].iter().enumerate() {
                let pos = off + j;
                let (in_pol, out_pol) = if side {
                    (Polarity::Fwd, Polarity::Bwd)
                } else {
                    (Polarity::Bwd, Polarity::Fwd)
                };
                // strand `pos` of the original side meets port `port` of v
                let port = if side { in_port[pos] } else { out_port[pos] };
                let at = v_pos(side, port);
                feeds_of_port[at] = Src::Input(inputs.len());
                inputs.push(signed(q, in_pol));
                out_feeds.push(Src::Port(0, at));
                outputs.push(signed(q, out_pol));
            }
        }
        let bounded_box = BoxNode {
            feeds: feeds_of_port,
            ..bv.boxes()[0].clone()
        };
        Ok(Diagram::from_parts(
            inputs,
            outputs,
            vec![bounded_box],
            out_feeds,
        )?)
    }

    /// Differences between two presentations with the same source and
    /// target, one line per failing generator; empty when they are equal.
    pub fn differences(&self, other: &FunctorPresentation) -> Vec<String> {
        let mut out = Vec::new();
        if *self.source != *other.source || *self.target != *other.target {
            out.push("different source or target".to_string());
            return out;
        }
        for p in self.source.places() {
            let (a, b) = (&self.objects[p], &other.objects[p]);
            let same = match self.philosophy {
                Philosophy::Comm => {
                    a.iter().cloned().collect::<Multiset>()
                        == b.iter().cloned().collect::<Multiset>()
                }
                Philosophy::Free => a == b,
            };
            if !same {
                out.push(format!("object {p}: [{}] vs [{}]", join(a), join(b)));
            }
        }
        for t in self.source.transitions() {
            let same = match (&self.morphisms[&t.name], &other.morphisms[&t.name]) {
                (Image::Comm(a), Image::Comm(b)) => a == b,
                (Image::Free(a), Image::Free(b)) => sym_equal(a, b),
                _ => false,
            };
            if !same {
                out.push(format!(
                    "morphism {}: {} vs {}",
                    t.name, self.morphisms[&t.name], other.morphisms[&t.name]
                ));
            }
        }
        out
    }
}

struct SymCheck<'a>(&'a Arc<PetriNet>);

impl SymCheck<'_> {
    fn check(&self, d: &Diagram) -> Result<(), crate::error::MorphismError> {
        crate::exec_symm::SymCategory::new(self.0.clone()).check(d)
    }
}

fn target_pre(net: &PetriNet, v: &Sym) -> Result<Multiset, PresentationError> {
    Ok(net
        .transition(v)
        .map_err(|e| PresentationError::Morphism(e.into()))?
        .pre
        .clone())
}

fn prefix(w: &[Sym], width: impl Fn(&Sym) -> usize) -> Vec<usize> {
    let mut acc = 0;
    w.iter()
        .map(|p| {
            let o = acc;
            acc += width(p);
            o
        })
        .collect()
}

fn join(w: &[Sym]) -> String {
    w.iter().map(Sym::as_str).collect::<Vec<_>>().join(",")
}

/// Every transition of `net` sent to the generator `name(t)` of `net` itself.
fn generator_images(
    net: &Arc<PetriNet>,
    philosophy: Philosophy,
    name: impl Fn(&Transition) -> Sym,
) -> BTreeMap<Sym, Image> {
    let comm = CommCategory::new(net.clone());
    net.transitions()
        .iter()
        .map(|t| {
            let v = name(t);
            let img = match philosophy {
                Philosophy::Comm => Image::Comm(comm.generator(&v).expect("own transition")),
                Philosophy::Free => Image::Free(sym_generator(net, &v).expect("own transition")),
            };
            (t.name.clone(), img)
        })
        .collect()
}

/// Result of checking the comonad laws on one net.
#[derive(Debug, Clone, Default)]
pub struct ComonadReport {
    /// `δ ; B(δ)` against `δ ; δ_B`, on the nose.
    pub coassociativity: Vec<String>,
    /// The same two presentations after each of the three projections
    /// `B³N → B²N` (`ε_{B²N}`, `B(ε_{BN})`, `B²(ε_N)`).
    pub coassociativity_projected: Vec<String>,
    /// `δ ; B(ε)` against the identity.
    pub left_counit: Vec<String>,
    /// `δ ; ε_B` against the identity.
    pub right_counit: Vec<String>,
}

impl ComonadReport {
    pub fn holds(&self) -> bool {
        self.coassociativity.is_empty()
            && self.left_counit.is_empty()
            && self.right_counit.is_empty()
    }

    pub fn holds_projected(&self) -> bool {
        self.coassociativity_projected.is_empty()
            && self.left_counit.is_empty()
            && self.right_counit.is_empty()
    }
}

pub fn check_comonad_laws(
    net: &PetriNet,
    philosophy: Philosophy,
) -> Result<ComonadReport, PresentationError> {
    let n = Arc::new(net.clone());
    let b = Arc::new(bound_net(net));
    let bb = Arc::new(bound_net(&b));
    let delta = FunctorPresentation::comult(n.clone(), philosophy);
    let delta_b = FunctorPresentation::comult(b.clone(), philosophy);
    let eps = FunctorPresentation::counit(n.clone(), philosophy);
    let eps_b = FunctorPresentation::counit(b.clone(), philosophy);
    let eps_bb = FunctorPresentation::counit(bb, philosophy);
    let id_b = FunctorPresentation::identity(b, philosophy);

    let lhs = delta.compose(&delta.lift()?)?;
    let rhs = delta.compose(&delta_b)?;
    let mut report = ComonadReport {
        coassociativity: lhs.differences(&rhs),
        left_counit: delta.compose(&eps.lift()?)?.differences(&id_b),
        right_counit: delta.compose(&eps_b)?.differences(&id_b),
        ..ComonadReport::default()
    };
    for (name, proj) in [
        ("first", eps_bb),
        ("second", eps_b.lift()?),
        ("third", eps.lift()?.lift()?),
    ] {
        for d in lhs.compose(&proj)?.differences(&rhs.compose(&proj)?) {
            report
                .coassociativity_projected
                .push(format!("{name} projection: {d}"));
        }
    }
    Ok(report)
}
