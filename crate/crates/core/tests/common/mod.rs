//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use petri_bound::multiset::{Multiset, Sym};
use petri_bound::net::{PetriNet, Transition};
use rand::Rng;

pub fn ms(s: &str) -> Multiset {
    s.parse().unwrap()
}

/// t1: a ⊕ b → c, t2: c → b ⊕ b
pub fn n0() -> PetriNet {
    PetriNet::from_arcs(
        ["a", "b", "c"],
        vec![
            ("t1", ms("{a:1,b:1}"), ms("{c:1}")),
            ("t2", ms("{c:1}"), ms("{b:2}")),
        ],
    )
    .unwrap()
}

pub fn n0_marking() -> Multiset {
    ms("{a:1,b:1,c:1}")
}

/// A random net with up to `max_places` places, up to `max_transitions`
/// transitions and arc weights up to `max_weight`.
pub fn random_net(
    rng: &mut impl Rng,
    max_places: usize,
    max_transitions: usize,
    max_weight: u64,
) -> PetriNet {
    let np = rng.gen_range(1..=max_places);
    let nt = rng.gen_range(0..=max_transitions);
    let places: Vec<Sym> = (0..np).map(|i| Sym::new(format!("p{i}"))).collect();
    let arcs = |rng: &mut dyn rand::RngCore| {
        let mut m = Multiset::new();
        for p in &places {
            if rng.gen_bool(0.4) {
                m.insert(p.clone(), rng.gen_range(1..=max_weight));
            }
        }
        m
    };
    let transitions = (0..nt)
        .map(|i| {
            let pre = arcs(rng);
            let post = arcs(rng);
            Transition::new(format!("u{i}"), pre, post)
        })
        .collect();
    PetriNet::new(places, transitions).unwrap()
}

pub fn random_marking(rng: &mut impl Rng, net: &PetriNet, max_per_place: u64) -> Multiset {
    let mut m = Multiset::new();
    for p in net.places() {
        m.insert(p.clone(), rng.gen_range(0..=max_per_place));
    }
    m
}

/// Every valid firing sequence from `m0` of length at most `max_len`.
pub fn valid_sequences(net: &PetriNet, m0: &Multiset, max_len: usize) -> Vec<Vec<Sym>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), m0.clone())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (s, m) in &frontier {
            for t in net.transitions() {
                if let Ok(m2) = net.fire(m, &t.name) {
                    let mut s2: Vec<Sym> = s.clone();
                    s2.push(t.name.clone());
                    out.push(s2.clone());
                    next.push((s2, m2));
                }
            }
        }
        frontier = next;
    }
    out
}

/// The swap class of `seq`: closure under exchanging adjacent firings `u v`
/// whenever the marking before them covers `pre(u) ⊕ pre(v)`.
pub fn swap_class(net: &PetriNet, m0: &Multiset, seq: &[Sym]) -> BTreeSet<Vec<Sym>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seq.to_vec());
    queue.push_back(seq.to_vec());
    while let Some(s) = queue.pop_front() {
        let trace = net.run(m0, &s).expect("class members are valid");
        for i in 0..s.len().saturating_sub(1) {
            let u = net.transition(&s[i]).unwrap();
            let v = net.transition(&s[i + 1]).unwrap();
            if !u.pre.sum(&v.pre).is_sub(&trace[i]) {
                continue;
            }
            let mut s2 = s.clone();
            s2.swap(i, i + 1);
            if seen.insert(s2.clone()) {
                queue.push_back(s2);
            }
        }
    }
    seen
}
