mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::{ms, n0, n0_marking, random_net};
use petri_bound::bounding::{bound_net, split_marking, FunctorPresentation, Image};
use petri_bound::category::{MonoidalCategory, Philosophy};
use petri_bound::equivalence::*;
use petri_bound::exec_comm::{CommCategory, CommMorphism, FiringSequence};
use petri_bound::exec_symm::SymCategory;
use petri_bound::multiset::{Multiset, Sym};
use petri_bound::net::PetriNet;
use petri_bound::span_semantics::{external_comm, total_category};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn truncation_counts() {
    let cat = CommCategory::new(Arc::new(n0()));
    let t = truncate_exec(&cat, 2, 0);
    assert_eq!(t.objects.len(), 1 + 3 + 6);
    assert_eq!(t.morphisms.len(), 10);
    assert!(t.check_laws().is_empty());

    let empty = truncate_exec(&CommCategory::new(Arc::new(PetriNet::empty())), 3, 3);
    assert_eq!((empty.objects.len(), empty.morphisms.len()), (1, 1));
    let empty = truncate_exec(&SymCategory::new(Arc::new(PetriNet::empty())), 3, 3);
    assert_eq!((empty.objects.len(), empty.morphisms.len()), (1, 1));
}

#[test]
fn truncation_reaches_the_running_execution() {
    let t = truncate_exec(&CommCategory::new(Arc::new(n0())), 4, 2);
    let i = t.objects.iter().position(|o| *o == n0_marking()).unwrap();
    let j = t
        .objects
        .iter()
        .position(|o| *o == ms("{b:2,c:1}"))
        .unwrap();
    assert!(!t.hom(i, j).is_empty());
}

#[test]
fn comm_theorem_on_n0() {
    let w = verify_theorem_comm(&n0(), 3, 2);
    assert!(w.complete(), "{:?}", w.report.failures);
    assert_eq!(w.report.objects.0, w.report.objects.1);
    assert_eq!(w.report.morphisms.0, w.report.morphisms.1);
    assert!(w.report.composites_checked > 0);
    assert_eq!(
        split_marking(&ms("{a+:1,c-:2}")),
        (ms("{a:1}"), ms("{c:2}"))
    );
}

#[test]
fn comm_theorem_on_the_empty_net() {
    let w = verify_theorem_comm(&PetriNet::empty(), 3, 2);
    assert!(w.complete());
    assert_eq!(w.report.objects, (1, 1));
    assert_eq!(w.report.morphisms, (1, 1));
}

/// The forward map is always total and injective; what can fail is
/// surjectivity.
fn embeds(w: &IsoWitness) -> bool {
    let hit: std::collections::BTreeSet<_> = w.forward_morphisms.iter().collect();
    w.forward_objects.iter().all(Option::is_some)
        && w.forward_morphisms.iter().all(Option::is_some)
        && hit.len() == w.forward_morphisms.len()
}

#[test]
fn bounded_executions_embed_on_random_nets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..15 {
        let net = random_net(&mut rng, 3, 2, 2);
        let w = verify_theorem_comm(&net, 3, 2);
        assert!(embeds(&w), "{net:?}: {:?}", w.report.failures);
        let g = verify_gamma_roundtrip(
            &FunctorPresentation::counit(Arc::new(net.clone()), Philosophy::Comm),
            3,
            2,
        );
        assert!(g.complete(), "{net:?}: {:?}", g.report.failures);
    }
}

#[test]
fn generator_count_fibres_exceed_bounded_executions() {
    // From a+ b+ b- b-, t1 needs the c- that only t2 frees, yet t1;t2 run
    // forwards on a, b and backwards on the anti-tokens has the right count.
    let net = Arc::new(n0());
    let w = verify_theorem_comm(&net, 4, 2);
    assert!(!w.complete());
    assert!(embeds(&w));
    let cat = CommCategory::new(net.clone());
    let f = cat
        .of_sequence(&FiringSequence::new(ms("{a:1,b:1}"), ["t1", "t2"]))
        .unwrap();
    let sem = external_comm(cat.clone());
    use petri_bound::span_semantics::LaxSpanFunctor;
    let tips = sem.tips_over(&f, &ms("{b:2}"));
    assert_eq!(tips.len(), 1);
    assert_eq!(sem.right(&tips[0]), ms("{a:1,b:1}"));
    let bounded = CommCategory::new(Arc::new(bound_net(&net)));
    let from = ms("{a+:1,b+:1,b-:2}");
    assert!(bounded
        .homs_from(&from, 2)
        .iter()
        .all(|h| h.chi() != ms("{t1:1,t2:1}")));
    // through the fibres of the counit instead, the round trip is exact
    let g = verify_gamma_roundtrip(&FunctorPresentation::counit(net, Philosophy::Comm), 4, 2);
    assert!(g.complete(), "{:?}", g.report.failures);
}

#[test]
fn anti_execution_runs_backwards() {
    let bn = Arc::new(bound_net(&n0()));
    let h = CommCategory::new(bn)
        .of_sequence(&FiringSequence::new(
            ms("{a+:1,b+:1,c-:1,b-:2}"),
            ["t1", "t2"],
        ))
        .unwrap();
    let anti = anti_execution(&Arc::new(n0()), &h);
    assert_eq!(anti.dom(), &split_marking(h.cod()).1);
    assert_eq!(anti.cod(), &split_marking(h.dom()).1);
    assert_eq!(anti.chi(), ms("{t1:1,t2:1}"));
}

#[test]
fn a_map_forgetting_anti_tokens_is_rejected() {
    let net = Arc::new(n0());
    let bounded = CommCategory::new(Arc::new(bound_net(&net)));
    let eps = FunctorPresentation::counit(net.clone(), Philosophy::Comm);
    let ext = external_comm(CommCategory::new(net.clone()));
    let a = truncate_exec(&bounded, 2, 1);
    let b = total_category(&ext, 2, 1);
    let w = IsoWitness::build(
        &a,
        &b,
        |m: &Multiset| (split_marking(m).0, Multiset::new()),
        |h: &CommMorphism| {
            (
                eps.apply_comm(h).unwrap(),
                CommCategory::new(net.clone()).identity_on(&Multiset::new()),
            )
        },
        |(f, s): &(CommMorphism, CommMorphism)| (f.clone(), s.clone()),
    );
    assert!(!w.complete());
}

#[test]
fn indiv_theorem_on_n0() {
    let w = verify_theorem_indiv(&n0(), 3, 2);
    assert!(w.complete(), "{:?}", w.report.failures);
    assert_eq!(w.report.objects, (259, 259));
    assert_eq!(w.report.morphisms.0, w.report.morphisms.1);
}

#[test]
fn indiv_theorem_without_transitions_is_permutations() {
    let net = PetriNet::new(vec![Sym::new("p")], vec![]).unwrap();
    let w = verify_theorem_indiv(&net, 3, 2);
    assert!(w.complete(), "{:?}", w.report.failures);
    // strings over p+, p- of length k carry k! permutations
    let mut expect = 0;
    let mut fact = 1;
    for k in 0..=3u32 {
        if k > 0 {
            fact *= k as usize;
        }
        expect += 2usize.pow(k) * fact;
    }
    assert_eq!(w.report.morphisms.0, expect);
}

#[test]
fn gamma_roundtrip_matches_indiv_theorem() {
    let net = Arc::new(n0());
    let a = verify_theorem_indiv(&net, 2, 1);
    let b = verify_gamma_roundtrip(&FunctorPresentation::counit(net, Philosophy::Free), 2, 1);
    assert_eq!(a, b);
}

#[test]
fn pullback_on_n0() {
    let r = check_pullback(&n0(), 3, 2).unwrap();
    assert!(r.holds(), "{:?}", r.failures);
    assert!(r.checked > 0);
}

#[test]
fn pullback_on_random_nets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let net = random_net(&mut rng, 2, 2, 1);
        let r = check_pullback(&net, 2, 1).unwrap();
        assert!(r.holds(), "{net:?}: {:?}", r.failures);
    }
}

fn renamed_n0() -> PetriNet {
    PetriNet::from_arcs(
        ["x", "y", "z"],
        vec![
            ("s1", ms("{x:1,y:1}"), ms("{z:1}")),
            ("s2", ms("{z:1}"), ms("{y:2}")),
        ],
    )
    .unwrap()
}

fn samples(cat: &CommCategory) -> Vec<(CommMorphism, Multiset)> {
    let mut out = Vec::new();
    for x in cat.objects_up_to(2) {
        for f in cat.homs_from(&x, 2) {
            for e in cat.objects_up_to(2) {
                out.push((f.clone(), e));
            }
        }
    }
    out
}

#[test]
fn identity_functor_is_a_semantics_morphism() {
    let net = Arc::new(n0());
    let cat = CommCategory::new(net.clone());
    let sem = external_comm(cat.clone());
    let id = FunctorPresentation::identity(net, Philosophy::Comm);
    assert!(check_semantics_morphism(&id, &sem, &sem, &samples(&cat)).unwrap());
}

#[test]
fn renaming_is_a_semantics_morphism() {
    let n = Arc::new(n0());
    let m = Arc::new(renamed_n0());
    let (cn, cm) = (CommCategory::new(n.clone()), CommCategory::new(m.clone()));
    let objects: BTreeMap<Sym, Vec<Sym>> = [("a", "x"), ("b", "y"), ("c", "z")]
        .iter()
        .map(|(p, q)| (Sym::new(p), vec![Sym::new(q)]))
        .collect();
    let morphisms: BTreeMap<Sym, Image> = [("t1", "s1"), ("t2", "s2")]
        .iter()
        .map(|(u, v)| {
            (
                Sym::new(u),
                Image::Comm(cm.generator(&Sym::new(v)).unwrap()),
            )
        })
        .collect();
    let f = FunctorPresentation::new(Philosophy::Comm, n, m, objects, morphisms).unwrap();
    assert!(check_semantics_morphism(
        &f,
        &external_comm(cn.clone()),
        &external_comm(cm),
        &samples(&cn)
    )
    .unwrap());
}

#[test]
fn collapsing_places_is_not_a_semantics_morphism() {
    let n =
        Arc::new(PetriNet::from_arcs(["p", "q"], vec![("u", ms("{p:1}"), ms("{p:1}"))]).unwrap());
    let m = Arc::new(PetriNet::from_arcs(["r"], vec![("v", ms("{r:1}"), ms("{r:1}"))]).unwrap());
    let (cn, cm) = (CommCategory::new(n.clone()), CommCategory::new(m.clone()));
    let objects: BTreeMap<Sym, Vec<Sym>> = [("p", "r"), ("q", "r")]
        .iter()
        .map(|(p, q)| (Sym::new(p), vec![Sym::new(q)]))
        .collect();
    let morphisms = BTreeMap::from([(
        Sym::new("u"),
        Image::Comm(cm.generator(&Sym::new("v")).unwrap()),
    )]);
    let f = FunctorPresentation::new(Philosophy::Comm, n, m, objects, morphisms).unwrap();
    let u = cn.generator(&Sym::new("u")).unwrap();
    // over q there is no way back through u, over r there is
    let sn = external_comm(cn.clone());
    let sm = external_comm(cm.clone());
    assert!(check_semantics_morphism(&f, &sn, &sm, &[(u.clone(), ms("{p:1}"))]).unwrap());
    assert!(!check_semantics_morphism(&f, &sn, &sm, &[(u, ms("{q:1}"))]).unwrap());
    assert!(check_semantics_morphism(&f, &sm, &sn, &[]).is_err());
}
