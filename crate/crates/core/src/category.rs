//! The strict monoidal category interface shared by both execution
//! categories, and finite truncations of categories as explicit tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::MorphismError;
use crate::multiset::{Multiset, Sym};

/// Token philosophy: collective (commutative) or individual (symmetric).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Philosophy {
    Comm,
    Free,
}

/// A strict monoidal category freely generated by a Petri net, restricted to
/// what the semantic constructions need.
pub trait MonoidalCategory {
    type Obj: Clone + Eq + Ord + Hash + Debug;
    type Mor: Clone + Debug;
    /// Canonical form: two morphisms are equal iff their keys are.
    type Key: Clone + Eq + Ord + Hash + Debug;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, MorphismError>;
    fn tensor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn unit(&self) -> Self::Obj;
    fn tensor_obj(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn key(&self, f: &Self::Mor) -> Self::Key;
    /// How many times each generator occurs in `f`.
    fn chi(&self, f: &Self::Mor) -> Multiset;
    /// Number of generating objects in `x`.
    fn obj_size(&self, x: &Self::Obj) -> usize;
    /// Every object built from at most `size` generating objects.
    fn objects_up_to(&self, size: usize) -> Vec<Self::Obj>;
    /// One representative per morphism with domain `dom` and at most
    /// `max_generators` generator occurrences, sorted by key.
    fn homs_from(&self, dom: &Self::Obj, max_generators: usize) -> Vec<Self::Mor>;

    fn equal(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        self.key(f) == self.key(g)
    }
}

/// All multisets over `symbols` of total size at most `size`, ordered by
/// size and then lexicographically.
pub fn multisets_up_to(symbols: &[Sym], size: usize) -> Vec<Multiset> {
    fn go(symbols: &[Sym], left: usize, cur: &mut Multiset, out: &mut Vec<Multiset>) {
        let Some((first, rest)) = symbols.split_first() else {
            out.push(cur.clone());
            return;
        };
        for c in 0..=left {
            let mut next = cur.clone();
            next.insert(first.clone(), c as u64);
            go(rest, left - c, &mut next, out);
        }
    }
    let mut out = Vec::new();
    go(symbols, size, &mut Multiset::new(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    out
}

/// All strings over `symbols` of length at most `len`, shortest first.
pub fn words_up_to(symbols: &[Sym], len: usize) -> Vec<Vec<Sym>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in symbols {
                let mut w2: Vec<Sym> = w.clone();
                w2.push(s.clone());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[derive(Debug, Clone)]
pub struct Cell<M> {
    pub dom: usize,
    pub cod: usize,
    pub value: M,
}

/// A finite truncation of a category: enumerated objects and morphisms with
/// an explicit composition table. A composite that falls outside the
/// truncation is recorded as `None` rather than treated as an error.
#[derive(Debug, Clone)]
pub struct EnumeratedCategory<O, M> {
    pub objects: Vec<O>,
    pub morphisms: Vec<Cell<M>>,
    pub identities: Vec<usize>,
    pub homs: BTreeMap<(usize, usize), Vec<usize>>,
    pub composition: HashMap<(usize, usize), Option<usize>>,
    /// Morphisms whose codomain fell outside the enumerated objects.
    pub escaped: usize,
}

impl<O: Clone + Eq + Hash + Debug, M: Clone + Debug> EnumeratedCategory<O, M> {
    /// Builds the table. `homs_from` lists `(codomain, morphism)` pairs out of
    /// an object, `key` canonicalizes morphisms, `identity` gives the
    /// identity of an object.
    pub fn build<K: Eq + Hash>(
        objects: Vec<O>,
        homs_from: impl Fn(&O) -> Vec<(O, M)>,
        identity: impl Fn(&O) -> M,
        compose: impl Fn(&M, &M) -> Option<M>,
        key: impl Fn(&M) -> K,
    ) -> Self {
        let obj_index: HashMap<O, usize> = objects
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, o)| (o, i))
            .collect();
        let mut morphisms = Vec::new();
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut escaped = 0;
        for (a, o) in objects.iter().enumerate() {
            for (cod, m) in homs_from(o) {
                let Some(&b) = obj_index.get(&cod) else {
                    escaped += 1;
                    continue;
                };
                let k = key(&m);
                if index.contains_key(&k) {
                    continue;
                }
                let id = morphisms.len();
                index.insert(k, id);
                morphisms.push(Cell {
                    dom: a,
                    cod: b,
                    value: m,
                });
                homs.entry((a, b)).or_default().push(id);
            }
        }
        let identities = objects
            .iter()
            .map(|o| {
                let k = key(&identity(o));
                *index
                    .get(&k)
                    .expect("identity missing from enumerated homs")
            })
            .collect();
        let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
        for (i, c) in morphisms.iter().enumerate() {
            out_of[c.dom].push(i);
        }
        let mut composition = HashMap::new();
        for (i, f) in morphisms.iter().enumerate() {
            for &j in &out_of[f.cod] {
                let r = compose(&f.value, &morphisms[j].value)
                    .and_then(|h| index.get(&key(&h)).copied());
                composition.insert((i, j), r);
            }
        }
        EnumeratedCategory {
            objects,
            morphisms,
            identities,
            homs,
            composition,
            escaped,
        }
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Checks the unit and associativity laws wherever the composites stay
    /// inside the truncation. Returns a description of every violation.
    pub fn check_laws(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for (i, f) in self.morphisms.iter().enumerate() {
            let l = self
                .composition
                .get(&(self.identities[f.dom], i))
                .copied()
                .flatten();
            let r = self
                .composition
                .get(&(i, self.identities[f.cod]))
                .copied()
                .flatten();
            if l != Some(i) || r != Some(i) {
                bad.push(format!("unit law fails at morphism {i}"));
            }
        }
        let mut after: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (&(j, k), &gh) in &self.composition {
            if let Some(gh) = gh {
                after.entry(j).or_default().push((k, gh));
            }
        }
        for (&(i, j), &fg) in &self.composition {
            let Some(fg) = fg else { continue };
            for &(k, gh) in after.get(&j).map(Vec::as_slice).unwrap_or(&[]) {
                let left = self.composition.get(&(fg, k)).copied().flatten();
                let right = self.composition.get(&(i, gh)).copied().flatten();
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        bad.push(format!("associativity fails at ({i}, {j}, {k})"));
                    }
                }
            }
        }
        bad
    }
}
