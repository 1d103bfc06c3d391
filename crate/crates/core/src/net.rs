//! Petri nets, markings and firing, plus explicit reachability exploration.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{NetError, ParseError};
use crate::multiset::{Multiset, Sym};

/// A marking is a multiset of tokens over the places of a net.
pub type Marking = Multiset;

/// A transition with ordered input and output strings.
///
/// The order only matters for the individual-token semantics, where it fixes
/// the port order of the transition's generator. `pre` and `post` are the
/// underlying multisets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub name: Sym,
    pub input: Vec<Sym>,
    pub output: Vec<Sym>,
    pub pre: Multiset,
    pub post: Multiset,
}

impl Transition {
    /// A transition whose port strings are the sorted expansions of `pre`/`post`.
    pub fn new(name: impl Into<Sym>, pre: Multiset, post: Multiset) -> Self {
        Transition {
            name: name.into(),
            input: pre.to_word(),
            output: post.to_word(),
            pre,
            post,
        }
    }

    /// A transition with explicitly ordered port strings.
    pub fn with_words(name: impl Into<Sym>, input: Vec<Sym>, output: Vec<Sym>) -> Self {
        let pre = input.iter().cloned().collect();
        let post = output.iter().cloned().collect();
        Transition {
            name: name.into(),
            input,
            output,
            pre,
            post,
        }
    }
}

impl fmt::Debug for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.name, self.pre, self.post)
    }
}

#[derive(Clone)]
pub struct PetriNet {
    places: Vec<Sym>,
    transitions: Vec<Transition>,
    index: HashMap<Sym, usize>,
}

impl PartialEq for PetriNet {
    fn eq(&self, other: &Self) -> bool {
        self.places == other.places && self.transitions == other.transitions
    }
}

impl Eq for PetriNet {}

impl fmt::Debug for PetriNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PetriNet")
            .field("places", &self.places)
            .field("transitions", &self.transitions)
            .finish()
    }
}

impl PetriNet {
    /// Builds a net, checking that names are unique and that every arc
    /// refers to a declared place.
    pub fn new(places: Vec<Sym>, transitions: Vec<Transition>) -> Result<Self, NetError> {
        let mut seen = HashMap::new();
        for p in &places {
            if seen.insert(p.clone(), ()).is_some() {
                return Err(NetError::DuplicatePlace(p.clone()));
            }
        }
        let mut index = HashMap::new();
        for (i, t) in transitions.iter().enumerate() {
            if index.insert(t.name.clone(), i).is_some() {
                return Err(NetError::DuplicateTransition(t.name.clone()));
            }
            for p in t.pre.support().chain(t.post.support()) {
                if !seen.contains_key(p) {
                    return Err(NetError::UnknownPlace(p.clone()));
                }
            }
        }
        Ok(PetriNet {
            places,
            transitions,
            index,
        })
    }

    /// Convenience constructor from `(name, pre, post)` triples.
    pub fn from_arcs<P, N>(places: P, arcs: Vec<(N, Multiset, Multiset)>) -> Result<Self, NetError>
    where
        P: IntoIterator,
        P::Item: Into<Sym>,
        N: Into<Sym>,
    {
        PetriNet::new(
            places.into_iter().map(Into::into).collect(),
            arcs.into_iter()
                .map(|(n, pre, post)| Transition::new(n, pre, post))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        PetriNet {
            places: Vec::new(),
            transitions: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn places(&self) -> &[Sym] {
        &self.places
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, name: &Sym) -> Result<&Transition, NetError> {
        self.index
            .get(name)
            .map(|&i| &self.transitions[i])
            .ok_or_else(|| NetError::UnknownTransition(name.clone()))
    }

    pub fn has_place(&self, p: &Sym) -> bool {
        self.places.contains(p)
    }

    /// Checks that a marking only mentions places of this net.
    pub fn check_marking(&self, m: &Marking) -> Result<(), NetError> {
        match m.support().find(|p| !self.has_place(p)) {
            Some(p) => Err(NetError::UnknownPlace(p.clone())),
            None => Ok(()),
        }
    }

    pub fn enabled(&self, m: &Marking, u: &Sym) -> Result<bool, NetError> {
        Ok(self.transition(u)?.pre.is_sub(m))
    }

    /// Fires `u` at `m`, returning `m ⊖ pre(u) ⊕ post(u)`.
    pub fn fire(&self, m: &Marking, u: &Sym) -> Result<Marking, NetError> {
        let t = self.transition(u)?;
        match m.checked_sub(&t.pre) {
            Some(rest) => Ok(rest.sum(&t.post)),
            None => Err(NetError::NotEnabled {
                transition: u.clone(),
                marking: m.clone(),
            }),
        }
    }

    /// Fires a sequence of transitions, returning every intermediate marking
    /// (the first entry is `m0`).
    pub fn run(&self, m0: &Marking, steps: &[Sym]) -> Result<Vec<Marking>, NetError> {
        let mut trace = vec![m0.clone()];
        for u in steps {
            let next = self.fire(trace.last().unwrap(), u)?;
            trace.push(next);
        }
        Ok(trace)
    }

    /// Markings reachable from `m0` whose total token count stays within
    /// `max_tokens`.
    pub fn explore(&self, m0: &Marking, max_tokens: u64) -> ReachabilityGraph {
        self.explore_limited(m0, max_tokens, usize::MAX)
    }

    /// As [`PetriNet::explore`], additionally stopping once `max_states`
    /// markings have been discovered (the graph is then flagged truncated).
    pub fn explore_limited(
        &self,
        m0: &Marking,
        max_tokens: u64,
        max_states: usize,
    ) -> ReachabilityGraph {
        let mut g = ReachabilityGraph::default();
        let mut ids: HashMap<Marking, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        ids.insert(m0.clone(), 0);
        g.nodes.push(m0.clone());
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let m = g.nodes[i].clone();
            for t in &self.transitions {
                let Some(rest) = m.checked_sub(&t.pre) else {
                    continue;
                };
                let next = rest.sum(&t.post);
                if next.size() > max_tokens {
                    g.truncated = Some(Truncation::TokenBound(max_tokens));
                    continue;
                }
                let j = match ids.get(&next) {
                    Some(&j) => j,
                    None => {
                        if g.nodes.len() >= max_states {
                            g.truncated = Some(Truncation::StateLimit(max_states));
                            continue;
                        }
                        let j = g.nodes.len();
                        ids.insert(next.clone(), j);
                        g.nodes.push(next);
                        queue.push_back(j);
                        j
                    }
                };
                g.edges.push((i, t.name.clone(), j));
            }
        }
        g
    }

    /// Whether no reachable marking puts more than `k` tokens in any place.
    ///
    /// Exploration is cut off at `(k+1)·|places|` tokens. Any marking over
    /// that total already has a place above `k`, so a cut-off successor is a
    /// violation too; `None` is only returned when the state limit fires.
    pub fn is_k_bounded(&self, m0: &Marking, k: u64) -> Option<bool> {
        self.is_k_bounded_limited(m0, k, usize::MAX)
    }

    pub fn is_k_bounded_limited(&self, m0: &Marking, k: u64, max_states: usize) -> Option<bool> {
        let cutoff = (k + 1) * self.places.len().max(1) as u64;
        let over = |m: &Marking| m.iter().any(|(_, c)| c > k);
        if over(m0) {
            return Some(false);
        }
        let g = self.explore_limited(m0, cutoff, max_states);
        if g.nodes.iter().any(over) {
            return Some(false);
        }
        match g.truncated {
            None => Some(true),
            Some(Truncation::TokenBound(_)) => Some(false),
            Some(Truncation::StateLimit(_)) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Some firing produced a marking above this total token count.
    TokenBound(u64),
    /// Exploration stopped after discovering this many markings.
    StateLimit(usize),
}

/// Explicit state space: nodes in discovery (BFS) order, edges `(from, transition, to)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReachabilityGraph {
    pub nodes: Vec<Marking>,
    pub edges: Vec<(usize, Sym, usize)>,
    pub truncated: Option<Truncation>,
}

impl ReachabilityGraph {
    /// Largest count each place reaches over all nodes.
    pub fn place_maxima(&self) -> BTreeMap<Sym, u64> {
        let mut out = BTreeMap::new();
        for m in &self.nodes {
            for (p, c) in m.iter() {
                let e = out.entry(p.clone()).or_insert(0);
                *e = (*e).max(c);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct NetFile {
    places: Vec<Sym>,
    transitions: Vec<TransitionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    marking: Option<Multiset>,
}

#[derive(Serialize, Deserialize)]
struct TransitionFile {
    name: Sym,
    #[serde(rename = "in", default)]
    input: Multiset,
    #[serde(rename = "out", default)]
    output: Multiset,
}

fn reserved(s: &Sym) -> bool {
    s.as_str().contains(['+', '-'])
}

/// Parses the JSON net format. Names carrying the polarity suffixes `+`/`-`
/// are rejected since they are reserved for anti-places.
pub fn parse_net(text: &str) -> Result<(PetriNet, Option<Marking>), NetError> {
    let (net, marking) = parse_net_unchecked(text)?;
    if let Some(s) = net
        .places
        .iter()
        .chain(net.transitions.iter().map(|t| &t.name))
        .find(|s| reserved(s))
    {
        return Err(NetError::ReservedName(s.clone()));
    }
    Ok((net, marking))
}

/// Parses the JSON net format without the reserved-name check, so bounded
/// nets written by [`write_net`] can be read back.
pub fn parse_net_unchecked(text: &str) -> Result<(PetriNet, Option<Marking>), NetError> {
    let file: NetFile = serde_json::from_str(text)
        .map_err(|e| ParseError::at_line(e.line(), e.column(), e.to_string()))?;
    let net = PetriNet::new(
        file.places,
        file.transitions
            .into_iter()
            .map(|t| Transition::new(t.name, t.input, t.output))
            .collect(),
    )?;
    if let Some(m) = &file.marking {
        net.check_marking(m)?;
    }
    Ok((net, file.marking))
}

pub fn write_net(net: &PetriNet, marking: Option<&Marking>) -> String {
    let file = NetFile {
        places: net.places.clone(),
        transitions: net
            .transitions
            .iter()
            .map(|t| TransitionFile {
                name: t.name.clone(),
                input: t.pre.clone(),
                output: t.post.clone(),
            })
            .collect(),
        marking: marking.cloned(),
    };
    serde_json::to_string_pretty(&file).expect("net serialization cannot fail")
}
