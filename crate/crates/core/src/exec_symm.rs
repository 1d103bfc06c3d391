//! Executions in the individual-token philosophy: the free symmetric strict
//! monoidal category generated by a net.
//!
//! A morphism is an acyclic port graph. Boxes are transition occurrences with
//! ordered input and output ports; every target (a diagram output position or
//! a box input port) is fed by exactly one source (a diagram input position or
//! a box output port). Symmetries are pure rewirings, so two composites that
//! differ only by how crossings are stacked give the same graph.
//!
//! Equality is isomorphism fixing the interface. Because ports are ordered,
//! every box reachable from the interface gets a forced position in a
//! traversal from the interface, and that traversal is the canonical
//! labeling. Components not touching the interface (boxes with empty inputs
//! and outputs, for instance) are labeled from every possible root and the
//! least encoding is kept.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::category::{words_up_to, MonoidalCategory};
use crate::error::MorphismError;
use crate::exec_comm::{CommCategory, CommMorphism, FiringSequence};
use crate::multiset::{Multiset, Sym};
use crate::net::PetriNet;

/// Where a wire starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Src {
    Input(usize),
    Port(usize, usize),
}

/// Where a wire ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tgt {
    Output(usize),
    Port(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxNode {
    pub label: Sym,
    pub inputs: Vec<Sym>,
    pub outputs: Vec<Sym>,
    /// Source feeding each input port.
    pub feeds: Vec<Src>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    inputs: Vec<Sym>,
    outputs: Vec<Sym>,
    boxes: Vec<BoxNode>,
    /// Source feeding each output position.
    feeds: Vec<Src>,
}

impl Diagram {
    /// Builds a diagram from raw parts, checking that wiring is a
    /// label-preserving bijection and that the box graph is acyclic.
    pub fn from_parts(
        inputs: Vec<Sym>,
        outputs: Vec<Sym>,
        boxes: Vec<BoxNode>,
        feeds: Vec<Src>,
    ) -> Result<Self, MorphismError> {
        let d = Diagram {
            inputs,
            outputs,
            boxes,
            feeds,
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), MorphismError> {
        let bad = |m: String| Err(MorphismError::Malformed(m));
        if self.feeds.len() != self.outputs.len() {
            return bad("output feed count differs from output length".into());
        }
        let mut used = BTreeSet::new();
        let mut check = |src: Src, want: &Sym, at: String| -> Result<(), MorphismError> {
            let label = match src {
                Src::Input(i) => self.inputs.get(i),
                Src::Port(b, p) => self.boxes.get(b).and_then(|bx| bx.outputs.get(p)),
            };
            match label {
                None => Err(MorphismError::Malformed(format!(
                    "{at}: dangling source {src:?}"
                ))),
                Some(l) if l != want => Err(MorphismError::Malformed(format!(
                    "{at}: wire from {l} into {want}"
                ))),
                Some(_) if !used.insert(src) => Err(MorphismError::Malformed(format!(
                    "{at}: source {src:?} used twice"
                ))),
                Some(_) => Ok(()),
            }
        };
        for (j, s) in self.feeds.iter().enumerate() {
            check(*s, &self.outputs[j], format!("output {j}"))?;
        }
        for (b, bx) in self.boxes.iter().enumerate() {
            if bx.feeds.len() != bx.inputs.len() {
                return bad(format!("box {b}: feed count differs from port count"));
            }
            for (p, s) in bx.feeds.iter().enumerate() {
                check(*s, &bx.inputs[p], format!("box {b} port {p}"))?;
            }
        }
        let sources = self.inputs.len() + self.boxes.iter().map(|b| b.outputs.len()).sum::<usize>();
        if used.len() != sources {
            return bad("some source is not connected".into());
        }
        if self.topological_order().is_none() {
            return bad("box graph has a cycle".into());
        }
        Ok(())
    }

    pub fn inputs(&self) -> &[Sym] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Sym] {
        &self.outputs
    }

    pub fn boxes(&self) -> &[BoxNode] {
        &self.boxes
    }

    pub fn feeds(&self) -> &[Src] {
        &self.feeds
    }

    /// Boxes ordered so that every box comes after the boxes feeding it.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.boxes.len();
        let mut indeg = vec![0usize; n];
        let mut next: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (b, bx) in self.boxes.iter().enumerate() {
            for s in &bx.feeds {
                if let Src::Port(a, _) = s {
                    indeg[b] += 1;
                    next[*a].push(b);
                }
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&b| indeg[b] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(b) = ready.pop() {
            order.push(b);
            for &c in next[b].iter().rev() {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.push(c);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// The target each source feeds.
    fn targets(&self) -> HashMap<Src, Tgt> {
        let mut out = HashMap::new();
        for (j, s) in self.feeds.iter().enumerate() {
            out.insert(*s, Tgt::Output(j));
        }
        for (b, bx) in self.boxes.iter().enumerate() {
            for (p, s) in bx.feeds.iter().enumerate() {
                out.insert(*s, Tgt::Port(b, p));
            }
        }
        out
    }

    /// Extends `order` (from position `start`) with every box reachable from
    /// the boxes already in it, in port order.
    fn traverse(
        &self,
        targets: &HashMap<Src, Tgt>,
        labels: &mut [Option<usize>],
        order: &mut Vec<usize>,
        start: usize,
    ) {
        let visit = |b: usize, labels: &mut [Option<usize>], order: &mut Vec<usize>| {
            if labels[b].is_none() {
                labels[b] = Some(order.len());
                order.push(b);
            }
        };
        let mut i = start;
        while i < order.len() {
            let b = order[i];
            for s in &self.boxes[b].feeds {
                if let Src::Port(a, _) = s {
                    visit(*a, labels, order);
                }
            }
            for q in 0..self.boxes[b].outputs.len() {
                if let Some(Tgt::Port(c, _)) = targets.get(&Src::Port(b, q)) {
                    visit(*c, labels, order);
                }
            }
            i += 1;
        }
    }

    /// Boxes of `order` renumbered by their position in it.
    fn relabel(&self, order: &[usize], labels: &[Option<usize>], base: usize) -> Vec<BoxNode> {
        let map = |s: &Src| match *s {
            Src::Input(i) => Src::Input(i),
            Src::Port(b, p) => Src::Port(base + labels[b].expect("labeled"), p),
        };
        order
            .iter()
            .map(|&b| {
                let bx = &self.boxes[b];
                BoxNode {
                    feeds: bx.feeds.iter().map(map).collect(),
                    ..bx.clone()
                }
            })
            .collect()
    }

    /// The canonical representative of this diagram's isomorphism class.
    pub fn canonical(&self) -> Diagram {
        let n = self.boxes.len();
        let targets = self.targets();
        let mut labels = vec![None; n];
        let mut order = Vec::new();
        for i in 0..self.inputs.len() {
            if let Some(Tgt::Port(b, _)) = targets.get(&Src::Input(i)) {
                if labels[*b].is_none() {
                    labels[*b] = Some(order.len());
                    order.push(*b);
                }
            }
        }
        for s in &self.feeds {
            if let Src::Port(b, _) = s {
                if labels[*b].is_none() {
                    labels[*b] = Some(order.len());
                    order.push(*b);
                }
            }
        }
        self.traverse(&targets, &mut labels, &mut order, 0);
        let mut boxes = self.relabel(&order, &labels, 0);
        let feeds = self
            .feeds
            .iter()
            .map(|s| match *s {
                Src::Port(b, p) => Src::Port(labels[b].expect("reachable from interface"), p),
                s => s,
            })
            .collect();

        let mut closed: Vec<Vec<BoxNode>> = Vec::new();
        let mut done = labels.iter().map(Option::is_some).collect::<Vec<_>>();
        for root in 0..n {
            if done[root] {
                continue;
            }
            let mut comp_labels = vec![None; n];
            let mut comp = vec![root];
            comp_labels[root] = Some(0);
            self.traverse(&targets, &mut comp_labels, &mut comp, 0);
            let mut best: Option<Vec<BoxNode>> = None;
            for &r in &comp {
                let mut l = vec![None; n];
                let mut o = vec![r];
                l[r] = Some(0);
                self.traverse(&targets, &mut l, &mut o, 0);
                let enc = self.relabel(&o, &l, 0);
                if best.as_ref().is_none_or(|b| enc < *b) {
                    best = Some(enc);
                }
            }
            for &b in &comp {
                done[b] = true;
            }
            closed.push(best.expect("component is nonempty"));
        }
        closed.sort();
        for comp in closed {
            let base = boxes.len();
            boxes.extend(comp.into_iter().map(|mut bx| {
                for s in &mut bx.feeds {
                    if let Src::Port(b, _) = s {
                        *b += base;
                    }
                }
                bx
            }));
        }
        Diagram {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            boxes,
            feeds,
        }
    }

    /// Multiset of box labels: how many times each generator occurs.
    pub fn chi(&self) -> Multiset {
        self.boxes.iter().map(|b| b.label.clone()).collect()
    }

    /// The same diagram with boxes renumbered by `perm` (box `i` moves to
    /// position `perm[i]`).
    pub fn permute_boxes(&self, perm: &[usize]) -> Diagram {
        let mut boxes = vec![None; self.boxes.len()];
        let map = |s: &Src| match *s {
            Src::Port(b, p) => Src::Port(perm[b], p),
            s => s,
        };
        for (i, bx) in self.boxes.iter().enumerate() {
            boxes[perm[i]] = Some(BoxNode {
                feeds: bx.feeds.iter().map(map).collect(),
                ..bx.clone()
            });
        }
        Diagram {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            boxes: boxes
                .into_iter()
                .map(|b| b.expect("perm is a bijection"))
                .collect(),
            feeds: self.feeds.iter().map(map).collect(),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = |s: &Src| match s {
            Src::Input(i) => format!("in{i}"),
            Src::Port(b, p) => format!("#{b}.{p}"),
        };
        write!(f, "[{}] ->", self.inputs.iter().join(","))?;
        for (b, bx) in self.boxes.iter().enumerate() {
            write!(
                f,
                " #{b}:{}({})",
                bx.label,
                bx.feeds.iter().map(src).join(",")
            )?;
        }
        write!(
            f,
            " -> [{}] <- ({})",
            self.outputs.iter().join(","),
            self.feeds.iter().map(src).join(",")
        )
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn sym_identity(s: &[Sym]) -> Diagram {
    Diagram {
        inputs: s.to_vec(),
        outputs: s.to_vec(),
        boxes: Vec::new(),
        feeds: (0..s.len()).map(Src::Input).collect(),
    }
}

/// The pure rewiring whose output `j` is input `perm[j]`.
pub fn sym_permutation(s: &[Sym], perm: &[usize]) -> Diagram {
    Diagram {
        inputs: s.to_vec(),
        outputs: perm.iter().map(|&i| s[i].clone()).collect(),
        boxes: Vec::new(),
        feeds: perm.iter().map(|&i| Src::Input(i)).collect(),
    }
}

/// The block swap `s·t → t·s`.
pub fn sym_symmetry(s: &[Sym], t: &[Sym]) -> Diagram {
    let inputs: Vec<Sym> = s.iter().chain(t).cloned().collect();
    let perm: Vec<usize> = (s.len()..s.len() + t.len()).chain(0..s.len()).collect();
    sym_permutation(&inputs, &perm)
}

/// The permutation taking `from` to `to` that keeps equal symbols in their
/// original relative order, if the two strings are rearrangements.
pub fn stable_permutation(from: &[Sym], to: &[Sym]) -> Option<Diagram> {
    if from.len() != to.len() {
        return None;
    }
    let mut pos: HashMap<&Sym, std::collections::VecDeque<usize>> = HashMap::new();
    for (i, s) in from.iter().enumerate() {
        pos.entry(s).or_default().push_back(i);
    }
    let perm = to
        .iter()
        .map(|s| pos.get_mut(s).and_then(|q| q.pop_front()))
        .collect::<Option<Vec<_>>>()?;
    Some(sym_permutation(from, &perm))
}

/// A single box with the transition's port strings as interface.
pub fn sym_generator(net: &PetriNet, u: &Sym) -> Result<Diagram, MorphismError> {
    let t = net.transition(u)?;
    Ok(Diagram {
        inputs: t.input.clone(),
        outputs: t.output.clone(),
        boxes: vec![BoxNode {
            label: t.name.clone(),
            inputs: t.input.clone(),
            outputs: t.output.clone(),
            feeds: (0..t.input.len()).map(Src::Input).collect(),
        }],
        feeds: (0..t.output.len()).map(|q| Src::Port(0, q)).collect(),
    })
}

pub fn sym_compose(f: &Diagram, g: &Diagram) -> Result<Diagram, MorphismError> {
    if f.outputs != g.inputs {
        return Err(MorphismError::InterfaceMismatch(format!(
            "[{}] vs [{}]",
            f.outputs.iter().join(","),
            g.inputs.iter().join(",")
        )));
    }
    let nf = f.boxes.len();
    let glue = |s: &Src| match *s {
        Src::Input(i) => f.feeds[i],
        Src::Port(b, p) => Src::Port(b + nf, p),
    };
    let mut boxes = f.boxes.clone();
    boxes.extend(g.boxes.iter().map(|bx| BoxNode {
        feeds: bx.feeds.iter().map(glue).collect(),
        ..bx.clone()
    }));
    Ok(Diagram {
        inputs: f.inputs.clone(),
        outputs: g.outputs.clone(),
        boxes,
        feeds: g.feeds.iter().map(glue).collect(),
    })
}

pub fn sym_tensor(f: &Diagram, g: &Diagram) -> Diagram {
    let (ni, nb) = (f.inputs.len(), f.boxes.len());
    let shift = |s: &Src| match *s {
        Src::Input(i) => Src::Input(i + ni),
        Src::Port(b, p) => Src::Port(b + nb, p),
    };
    let mut boxes = f.boxes.clone();
    boxes.extend(g.boxes.iter().map(|bx| BoxNode {
        feeds: bx.feeds.iter().map(shift).collect(),
        ..bx.clone()
    }));
    let mut feeds = f.feeds.clone();
    feeds.extend(g.feeds.iter().map(shift));
    Diagram {
        inputs: f.inputs.iter().chain(&g.inputs).cloned().collect(),
        outputs: f.outputs.iter().chain(&g.outputs).cloned().collect(),
        boxes,
        feeds,
    }
}

pub fn sym_equal(f: &Diagram, g: &Diagram) -> bool {
    f.inputs == g.inputs
        && f.outputs == g.outputs
        && f.boxes.len() == g.boxes.len()
        && f.canonical() == g.canonical()
}

/// The free symmetric strict monoidal category `Free{N}`.
#[derive(Debug, Clone)]
pub struct SymCategory {
    net: Arc<PetriNet>,
}

impl SymCategory {
    pub fn new(net: Arc<PetriNet>) -> Self {
        SymCategory { net }
    }

    pub fn net(&self) -> &Arc<PetriNet> {
        &self.net
    }

    pub fn generator(&self, u: &Sym) -> Result<Diagram, MorphismError> {
        sym_generator(&self.net, u)
    }

    /// Checks that every box is a generator of the net with its port strings.
    pub fn check(&self, d: &Diagram) -> Result<(), MorphismError> {
        for bx in &d.boxes {
            let t = self.net.transition(&bx.label)?;
            if t.input != bx.inputs || t.output != bx.outputs {
                return Err(MorphismError::Malformed(format!(
                    "box {} has the wrong ports",
                    bx.label
                )));
            }
        }
        d.validate()
    }

    /// Fires `steps` in order from `dom`. Each transition takes the leftmost
    /// free wires carrying its inputs, and its outputs appear where its first
    /// input was (at the right end if it has no inputs).
    pub fn of_sequence(&self, dom: &[Sym], steps: &[Sym]) -> Result<Diagram, MorphismError> {
        let mut d = sym_identity(dom);
        for (step, u) in steps.iter().enumerate() {
            let gen = self.generator(u)?;
            let wires = d.outputs.clone();
            let mut used = vec![false; wires.len()];
            let mut chosen = Vec::new();
            for x in &gen.inputs {
                let i = (0..wires.len())
                    .find(|&i| !used[i] && wires[i] == *x)
                    .ok_or_else(|| MorphismError::InvalidSequence {
                        step,
                        transition: u.clone(),
                    })?;
                used[i] = true;
                chosen.push(i);
            }
            let at = chosen.iter().copied().min().unwrap_or(wires.len());
            let before: Vec<usize> = (0..at).filter(|&i| !used[i]).collect();
            let after: Vec<usize> = (at..wires.len()).filter(|&i| !used[i]).collect();
            let perm: Vec<usize> = before
                .iter()
                .chain(&chosen)
                .chain(&after)
                .copied()
                .collect();
            let label = |ix: &[usize]| ix.iter().map(|&i| wires[i].clone()).collect::<Vec<_>>();
            let fire = sym_tensor(
                &sym_tensor(&sym_identity(&label(&before)), &gen),
                &sym_identity(&label(&after)),
            );
            d = sym_compose(&sym_compose(&d, &sym_permutation(&wires, &perm))?, &fire)?;
        }
        Ok(d)
    }

    /// The image under the quotient to the collective-token category: forget
    /// wire identities and fire the boxes in a topological order.
    pub fn erase(&self, d: &Diagram) -> Result<CommMorphism, MorphismError> {
        let order = d
            .topological_order()
            .ok_or_else(|| MorphismError::Malformed("cycle".into()))?;
        let start: Multiset = d.inputs.iter().cloned().collect();
        let steps = order
            .into_iter()
            .map(|b| d.boxes[b].label.clone())
            .collect();
        CommCategory::new(self.net.clone()).of_sequence(&FiringSequence { start, steps })
    }

    /// One representative per isomorphism class of diagrams with input
    /// string `dom` and at most `max_boxes` boxes, sorted by canonical form.
    pub fn enumerate(&self, dom: &[Sym], max_boxes: usize) -> Vec<Diagram> {
        let mut all: BTreeSet<Diagram> = BTreeSet::new();
        let mut level: BTreeSet<Diagram> = BTreeSet::new();
        for perm in (0..dom.len()).permutations(dom.len()) {
            level.insert(sym_permutation(dom, &perm).canonical());
        }
        all.extend(level.iter().cloned());
        for _ in 0..max_boxes {
            let mut next = BTreeSet::new();
            for d in &level {
                for t in self.net.transitions() {
                    if !d.outputs.starts_with(&t.input) {
                        continue;
                    }
                    let rest = &d.outputs[t.input.len()..];
                    let step = sym_tensor(
                        &sym_generator(&self.net, &t.name).expect("own transition"),
                        &sym_identity(rest),
                    );
                    let e = sym_compose(d, &step).expect("interfaces agree");
                    let n = e.outputs.len();
                    for perm in (0..n).permutations(n) {
                        let p = sym_permutation(&e.outputs, &perm);
                        next.insert(sym_compose(&e, &p).expect("interfaces agree").canonical());
                    }
                }
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        all.into_iter().collect()
    }
}

impl MonoidalCategory for SymCategory {
    type Obj = Vec<Sym>;
    type Mor = Diagram;
    type Key = Diagram;

    fn dom(&self, f: &Diagram) -> Vec<Sym> {
        f.inputs.clone()
    }

    fn cod(&self, f: &Diagram) -> Vec<Sym> {
        f.outputs.clone()
    }

    fn identity(&self, x: &Vec<Sym>) -> Diagram {
        sym_identity(x)
    }

    fn compose(&self, f: &Diagram, g: &Diagram) -> Result<Diagram, MorphismError> {
        sym_compose(f, g)
    }

    fn tensor(&self, f: &Diagram, g: &Diagram) -> Diagram {
        sym_tensor(f, g)
    }

    fn unit(&self) -> Vec<Sym> {
        Vec::new()
    }

    fn tensor_obj(&self, a: &Vec<Sym>, b: &Vec<Sym>) -> Vec<Sym> {
        a.iter().chain(b).cloned().collect()
    }

    fn key(&self, f: &Diagram) -> Diagram {
        f.canonical()
    }

    fn chi(&self, f: &Diagram) -> Multiset {
        f.chi()
    }

    fn obj_size(&self, x: &Vec<Sym>) -> usize {
        x.len()
    }

    fn objects_up_to(&self, size: usize) -> Vec<Vec<Sym>> {
        words_up_to(self.net.places(), size)
    }

    fn homs_from(&self, dom: &Vec<Sym>, max_generators: usize) -> Vec<Diagram> {
        self.enumerate(dom, max_generators)
    }
}
