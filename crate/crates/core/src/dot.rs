//! Graphviz output. Places are circles, transitions boxes, anti-places red;
//! an arc of weight k is drawn as k parallel edges. Node order follows the
//! order of places and transitions in the net, so output is deterministic.

use std::fmt::Write;

use crate::bounding::{Polarity, SignedPlace};
use crate::exec_symm::{Diagram, Src};
use crate::multiset::{Multiset, Sym};
use crate::net::{PetriNet, ReachabilityGraph};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn is_anti(p: &Sym) -> bool {
    SignedPlace::parse(p).is_some_and(|s| s.polarity == Polarity::Bwd)
}

pub fn net_to_dot(net: &PetriNet, marking: Option<&Multiset>) -> String {
    let mut out = String::from("digraph net {\n");
    if net.places().is_empty() && net.transitions().is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=LR;\n");
    for (i, p) in net.places().iter().enumerate() {
        let tokens = marking.map_or(0, |m| m.count(p));
        let label = if tokens > 0 {
            format!("{p}\n{tokens}")
        } else {
            p.to_string()
        };
        let colour = if is_anti(p) {
            ", color=red, fontcolor=red"
        } else {
            ""
        };
        writeln!(
            out,
            "  p{i} [shape=circle, label={}{colour}];",
            quote(&label)
        )
        .unwrap();
    }
    for (i, t) in net.transitions().iter().enumerate() {
        writeln!(out, "  t{i} [shape=box, label={}];", quote(t.name.as_str())).unwrap();
    }
    let place = |p: &Sym| {
        net.places()
            .iter()
            .position(|q| q == p)
            .expect("place of the net")
    };
    for (i, t) in net.transitions().iter().enumerate() {
        for (p, k) in t.pre.iter() {
            for _ in 0..k {
                writeln!(out, "  p{} -> t{i};", place(p)).unwrap();
            }
        }
        for (p, k) in t.post.iter() {
            for _ in 0..k {
                writeln!(out, "  t{i} -> p{};", place(p)).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Inputs on the left, outputs on the right, one edge per wire labelled by
/// its object.
pub fn diagram_to_dot(d: &Diagram) -> String {
    let mut out = String::from("digraph diagram {\n  rankdir=LR;\n");
    for (i, x) in d.inputs().iter().enumerate() {
        writeln!(out, "  in{i} [shape=point, xlabel={}];", quote(x.as_str())).unwrap();
    }
    for (j, x) in d.outputs().iter().enumerate() {
        writeln!(out, "  out{j} [shape=point, xlabel={}];", quote(x.as_str())).unwrap();
    }
    for (b, node) in d.boxes().iter().enumerate() {
        writeln!(
            out,
            "  b{b} [shape=box, label={}];",
            quote(node.label.as_str())
        )
        .unwrap();
    }
    let src = |s: &Src| match *s {
        Src::Input(i) => (format!("in{i}"), d.inputs()[i].clone()),
        Src::Port(b, k) => (format!("b{b}"), d.boxes()[b].outputs[k].clone()),
    };
    for (b, node) in d.boxes().iter().enumerate() {
        for f in &node.feeds {
            let (from, x) = src(f);
            writeln!(out, "  {from} -> b{b} [label={}];", quote(x.as_str())).unwrap();
        }
    }
    for (j, f) in d.feeds().iter().enumerate() {
        let (from, x) = src(f);
        writeln!(out, "  {from} -> out{j} [label={}];", quote(x.as_str())).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn reachability_to_dot(g: &ReachabilityGraph) -> String {
    let mut out = String::from("digraph reachability {\n");
    if let Some(t) = g.truncated {
        writeln!(out, "  label={};", quote(&format!("truncated: {t:?}"))).unwrap();
    }
    for (i, m) in g.nodes.iter().enumerate() {
        let shape = if i == 0 { "doublecircle" } else { "ellipse" };
        writeln!(
            out,
            "  m{i} [shape={shape}, label={}];",
            quote(&m.to_string())
        )
        .unwrap();
    }
    for (from, u, to) in &g.edges {
        writeln!(out, "  m{from} -> m{to} [label={}];", quote(u.as_str())).unwrap();
    }
    out.push_str("}\n");
    out
}
