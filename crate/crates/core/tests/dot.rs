mod common;

use common::{n0, n0_marking};
use petri_bound::bounding::bound_net;
use petri_bound::dot::*;
use petri_bound::exec_symm::{sym_compose, sym_generator, sym_symmetry};
use petri_bound::multiset::Sym;
use petri_bound::net::PetriNet;

fn count(s: &str, pat: &str) -> usize {
    s.matches(pat).count()
}

#[test]
fn n0_has_three_circles_two_boxes_six_arcs() {
    let d = net_to_dot(&n0(), None);
    assert_eq!(count(&d, "shape=circle"), 3);
    assert_eq!(count(&d, "shape=box"), 2);
    assert_eq!(count(&d, " -> "), 6);
    assert!(!d.contains("red"));
}

#[test]
fn empty_net_is_an_empty_graph() {
    assert_eq!(net_to_dot(&PetriNet::empty(), None), "digraph net {\n}\n");
}

#[test]
fn bounded_n0_doubles_arcs_and_marks_anti_places() {
    let d = net_to_dot(&bound_net(&n0()), None);
    assert_eq!(count(&d, "shape=circle"), 6);
    assert_eq!(count(&d, " color=red"), 3);
    assert_eq!(count(&d, " -> "), 12);
}

#[test]
fn tokens_are_shown() {
    let d = net_to_dot(&n0(), Some(&n0_marking()));
    assert!(d.contains(r#"label="a\n1""#));
}

#[test]
fn output_is_deterministic() {
    assert_eq!(
        net_to_dot(&bound_net(&n0()), None),
        net_to_dot(&bound_net(&n0()), None)
    );
}

#[test]
fn diagram_wires() {
    let net = n0();
    let a = Sym::new("a");
    let b = Sym::new("b");
    let g = sym_compose(
        &sym_symmetry(std::slice::from_ref(&b), std::slice::from_ref(&a)),
        &sym_generator(&net, &Sym::new("t1")).unwrap(),
    )
    .unwrap();
    let d = diagram_to_dot(&g);
    assert_eq!(count(&d, "shape=box"), 1);
    assert_eq!(count(&d, "shape=point"), 3);
    assert_eq!(count(&d, " -> "), 3);
    assert!(d.contains("in1 -> b0"));
}

#[test]
fn reachability_graph() {
    let g = n0().explore(&n0_marking(), 10);
    let d = reachability_to_dot(&g);
    assert_eq!(count(&d, "doublecircle"), 1);
    assert_eq!(count(&d, " -> "), g.edges.len());
    assert_eq!(count(&d, "[shape="), g.nodes.len());
}
