//! Executions in the collective-token philosophy: the free commutative strict
//! monoidal category generated by a net.
//!
//! A morphism is stored as its domain, codomain and a canonical layered
//! schedule. Two firing sequences from the same marking denote the same
//! morphism exactly when they are related by swapping adjacent firings that
//! are concurrently enabled (the marking before them covers both presets).
//! The schedule is a function of that swap class: every layer is a
//! concurrently enabled step, and among the step decompositions of class
//! members it is the one with the fewest layers (ties broken by layer order).
//!
//! Placing each firing at its earliest feasible layer in sequence order is
//! not enough: with `u: p → p⊕p` and `v: p → ∅`, the equivalent sequences
//! `u v u u` and `u u u v` from `{p:1}` get different greedy layerings.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::category::{multisets_up_to, MonoidalCategory};
use crate::error::MorphismError;
use crate::multiset::{Multiset, Sym};
use crate::net::{Marking, PetriNet, Transition};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CommMorphism {
    dom: Multiset,
    cod: Multiset,
    layers: Vec<Multiset>,
}

impl CommMorphism {
    pub fn dom(&self) -> &Multiset {
        &self.dom
    }

    pub fn cod(&self) -> &Multiset {
        &self.cod
    }

    /// Steps of the canonical schedule; each is a multiset of transition names.
    pub fn layers(&self) -> &[Multiset] {
        &self.layers
    }

    pub fn is_identity(&self) -> bool {
        self.layers.is_empty()
    }

    /// Sum of all layers: how many times each transition fires.
    pub fn chi(&self) -> Multiset {
        self.layers
            .iter()
            .fold(Multiset::new(), |acc, l| acc.sum(l))
    }

    /// A firing sequence representing this morphism: layers in order, each
    /// layer in transition-name order.
    pub fn linearize(&self) -> Vec<Sym> {
        self.layers.iter().flat_map(|l| l.to_word()).collect()
    }
}

impl fmt::Display for CommMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.dom)?;
        for (i, l) in self.layers.iter().enumerate() {
            if i > 0 {
                f.write_str(" ;")?;
            }
            write!(f, " {l}")?;
        }
        write!(f, " | {}", self.cod)
    }
}

impl fmt::Debug for CommMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A raw execution: a start marking and the transitions fired in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiringSequence {
    pub start: Marking,
    pub steps: Vec<Sym>,
}

impl FiringSequence {
    pub fn new(start: Marking, steps: impl IntoIterator<Item = impl Into<Sym>>) -> Self {
        FiringSequence {
            start,
            steps: steps.into_iter().map(Into::into).collect(),
        }
    }
}

/// Splits a valid sequence into maximal steps from the front: a firing joins
/// the current step while the step's joint preset stays covered by the
/// marking the step starts from.
fn segment(start: &Multiset, steps: &[&Transition]) -> Vec<Multiset> {
    let mut layers = Vec::new();
    let mut layer = Multiset::new();
    let mut layer_pre = Multiset::new();
    let mut layer_post = Multiset::new();
    let mut at = start.clone();
    for t in steps {
        let joint = layer_pre.sum(&t.pre);
        if !layer.is_empty() && !joint.is_sub(&at) {
            at = at
                .checked_sub(&layer_pre)
                .expect("step enabled")
                .sum(&layer_post);
            layers.push(std::mem::take(&mut layer));
            layer_pre = t.pre.clone();
            layer_post = t.post.clone();
        } else {
            layer_pre = joint;
            layer_post = layer_post.sum(&t.post);
        }
        layer.insert(t.name.clone(), 1);
    }
    if !layer.is_empty() {
        layers.push(layer);
    }
    layers
}

/// The canonical schedule of the swap class of `steps`: among all members of
/// the class, the maximal-step segmentation with the fewest layers, ties
/// broken by comparing layers in order.
///
/// The class is explored explicitly, which is exponential in the length of
/// the sequence; executions handled here are short.
fn canonical_layers(start: &Multiset, steps: &[&Transition]) -> Vec<Multiset> {
    if steps.len() < 2 {
        return segment(start, steps);
    }
    let n = steps.len();
    let ids: Vec<usize> = (0..n).collect();
    // occurrences of the same transition are interchangeable; key by name order
    let name_key =
        |order: &[usize]| -> Vec<Sym> { order.iter().map(|&i| steps[i].name.clone()).collect() };
    let mut seen: HashSet<Vec<Sym>> = HashSet::new();
    seen.insert(name_key(&ids));
    let mut queue = vec![ids];
    let mut best: Option<Vec<Multiset>> = None;
    while let Some(order) = queue.pop() {
        let seq: Vec<&Transition> = order.iter().map(|&i| steps[i]).collect();
        let layers = segment(start, &seq);
        let better = match &best {
            None => true,
            Some(b) => (layers.len(), &layers) < (b.len(), b),
        };
        if better {
            best = Some(layers);
        }
        let mut m = start.clone();
        for i in 0..n - 1 {
            let (u, v) = (seq[i], seq[i + 1]);
            if u.pre.sum(&v.pre).is_sub(&m) && u.name != v.name {
                let mut swapped = order.clone();
                swapped.swap(i, i + 1);
                if seen.insert(name_key(&swapped)) {
                    queue.push(swapped);
                }
            }
            m = m.checked_sub(&u.pre).expect("valid sequence").sum(&u.post);
        }
    }
    best.expect("class is nonempty")
}

/// The collective-token execution category `Comm{N}`.
#[derive(Debug, Clone)]
pub struct CommCategory {
    net: Arc<PetriNet>,
}

impl CommCategory {
    pub fn new(net: Arc<PetriNet>) -> Self {
        CommCategory { net }
    }

    pub fn net(&self) -> &Arc<PetriNet> {
        &self.net
    }

    pub fn identity_on(&self, m: &Multiset) -> CommMorphism {
        CommMorphism {
            dom: m.clone(),
            cod: m.clone(),
            layers: Vec::new(),
        }
    }

    /// The generator `u` on exactly its own preset.
    pub fn generator(&self, u: &Sym) -> Result<CommMorphism, MorphismError> {
        let t = self.net.transition(u)?;
        self.of_sequence(&FiringSequence {
            start: t.pre.clone(),
            steps: vec![u.clone()],
        })
    }

    /// Normalizes a firing sequence to its canonical layered schedule.
    pub fn of_sequence(&self, seq: &FiringSequence) -> Result<CommMorphism, MorphismError> {
        let mut steps = Vec::with_capacity(seq.steps.len());
        let mut m = seq.start.clone();
        for (step, u) in seq.steps.iter().enumerate() {
            let t = self.net.transition(u)?;
            m = match m.checked_sub(&t.pre) {
                Some(rest) => rest.sum(&t.post),
                None => {
                    return Err(MorphismError::InvalidSequence {
                        step,
                        transition: u.clone(),
                    })
                }
            };
            steps.push(t);
        }
        let layers = canonical_layers(&seq.start, &steps);
        Ok(CommMorphism {
            dom: seq.start.clone(),
            cod: m,
            layers,
        })
    }

    /// `f ; g`: concatenate schedules and renormalize.
    pub fn compose(
        &self,
        f: &CommMorphism,
        g: &CommMorphism,
    ) -> Result<CommMorphism, MorphismError> {
        if f.cod != g.dom {
            return Err(MorphismError::CodDomMismatch {
                cod: f.cod.to_string(),
                dom: g.dom.to_string(),
            });
        }
        let mut steps = f.linearize();
        steps.extend(g.linearize());
        self.of_sequence(&FiringSequence {
            start: f.dom.clone(),
            steps,
        })
    }

    /// `f ⊗ g`: sum the boundaries and merge schedules.
    pub fn tensor(&self, f: &CommMorphism, g: &CommMorphism) -> CommMorphism {
        let mut steps = f.linearize();
        steps.extend(g.linearize());
        self.of_sequence(&FiringSequence {
            start: f.dom.sum(&g.dom),
            steps,
        })
        .expect("running f then g on dom f ⊕ dom g is always valid")
    }

    /// Every morphism out of `dom` using at most `max_firings` firings, one per
    /// equality class, sorted.
    pub fn enumerate(&self, dom: &Multiset, max_firings: usize) -> Vec<CommMorphism> {
        let mut seen: BTreeSet<CommMorphism> = BTreeSet::new();
        let id = self.identity_on(dom);
        seen.insert(id.clone());
        let mut frontier = vec![id];
        for _ in 0..max_firings {
            let mut next = Vec::new();
            for h in &frontier {
                for t in self.net.transitions() {
                    if !t.pre.is_sub(&h.cod) {
                        continue;
                    }
                    let mut steps = h.linearize();
                    steps.push(t.name.clone());
                    let h2 = self
                        .of_sequence(&FiringSequence {
                            start: dom.clone(),
                            steps,
                        })
                        .expect("extension of a valid schedule by an enabled firing");
                    if seen.insert(h2.clone()) {
                        next.push(h2);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().collect()
    }

    /// Every morphism out of `dom` whose generator count is exactly `chi`.
    pub fn enumerate_with_chi(&self, dom: &Multiset, chi: &Multiset) -> Vec<CommMorphism> {
        let mut frontier: BTreeSet<CommMorphism> = BTreeSet::new();
        frontier.insert(self.identity_on(dom));
        for _ in 0..chi.size() {
            let mut next = BTreeSet::new();
            for h in &frontier {
                let used = h.chi();
                for t in self.net.transitions() {
                    if used.count(&t.name) >= chi.count(&t.name) || !t.pre.is_sub(&h.cod) {
                        continue;
                    }
                    let mut steps = h.linearize();
                    steps.push(t.name.clone());
                    next.insert(
                        self.of_sequence(&FiringSequence {
                            start: dom.clone(),
                            steps,
                        })
                        .expect("extension of a valid schedule by an enabled firing"),
                    );
                }
            }
            frontier = next;
        }
        frontier.into_iter().collect()
    }
}

impl MonoidalCategory for CommCategory {
    type Obj = Multiset;
    type Mor = CommMorphism;
    type Key = CommMorphism;

    fn dom(&self, f: &CommMorphism) -> Multiset {
        f.dom.clone()
    }

    fn cod(&self, f: &CommMorphism) -> Multiset {
        f.cod.clone()
    }

    fn identity(&self, x: &Multiset) -> CommMorphism {
        self.identity_on(x)
    }

    fn compose(&self, f: &CommMorphism, g: &CommMorphism) -> Result<CommMorphism, MorphismError> {
        CommCategory::compose(self, f, g)
    }

    fn tensor(&self, f: &CommMorphism, g: &CommMorphism) -> CommMorphism {
        CommCategory::tensor(self, f, g)
    }

    fn unit(&self) -> Multiset {
        Multiset::new()
    }

    fn tensor_obj(&self, a: &Multiset, b: &Multiset) -> Multiset {
        a.sum(b)
    }

    fn key(&self, f: &CommMorphism) -> CommMorphism {
        f.clone()
    }

    fn chi(&self, f: &CommMorphism) -> Multiset {
        f.chi()
    }

    fn obj_size(&self, x: &Multiset) -> usize {
        x.size() as usize
    }

    fn objects_up_to(&self, size: usize) -> Vec<Multiset> {
        multisets_up_to(self.net.places(), size)
    }

    fn homs_from(&self, dom: &Multiset, max_generators: usize) -> Vec<CommMorphism> {
        self.enumerate(dom, max_generators)
    }
}
