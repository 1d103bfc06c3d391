//! Checks, on finite truncations, that bounding a net internally (executions
//! of the bounded net) and externally (the total category of the span-valued
//! semantics) give isomorphic categories.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::bounding::{bound_net, check_comonad_laws, split_marking, FunctorPresentation};
use crate::category::{EnumeratedCategory, MonoidalCategory, Philosophy};
use crate::error::PresentationError;
use crate::exec_comm::{CommCategory, CommMorphism, FiringSequence};
use crate::exec_symm::{sym_equal, sym_identity, SymCategory};
use crate::multiset::Multiset;
use crate::net::PetriNet;
use crate::span_semantics::{
    external_comm, external_indiv, gamma, gamma_comm, total_category, ExecFunctor, ExternalComm,
    Gamma, LaxSpanFunctor,
};

/// Objects up to `token_bound` generating objects and morphisms out of them
/// with at most `firing_bound` generators.
pub fn truncate_exec<C: MonoidalCategory>(
    cat: &C,
    token_bound: usize,
    firing_bound: usize,
) -> EnumeratedCategory<C::Obj, C::Mor> {
    EnumeratedCategory::build(
        cat.objects_up_to(token_bound),
        |x| {
            cat.homs_from(x, firing_bound)
                .into_iter()
                .map(|f| (cat.cod(&f), f))
                .collect()
        },
        |x| cat.identity(x),
        |f, g| cat.compose(f, g).ok(),
        |f| cat.key(f),
    )
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsoReport {
    pub objects: (usize, usize),
    pub morphisms: (usize, usize),
    pub hom_sets: usize,
    pub composites_checked: usize,
    pub failures: Vec<String>,
}

/// A candidate isomorphism between two truncations, given by index tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub forward_objects: Vec<Option<usize>>,
    pub forward_morphisms: Vec<Option<usize>>,
    pub backward_objects: Vec<Option<usize>>,
    pub backward_morphisms: Vec<Option<usize>>,
    pub report: IsoReport,
}

impl IsoWitness {
    /// Every cell matched, bijectively, with composition and identities
    /// preserved in both directions.
    pub fn complete(&self) -> bool {
        self.report.failures.is_empty()
    }

    /// Builds the forward tables from `obj` and `mor`, inverts them and
    /// checks every law on the enumerated cells.
    pub fn build<OA, MA, OB, MB, K>(
        a: &EnumeratedCategory<OA, MA>,
        b: &EnumeratedCategory<OB, MB>,
        obj: impl Fn(&OA) -> OB,
        mor: impl Fn(&MA) -> MB,
        key_b: impl Fn(&MB) -> K,
    ) -> IsoWitness
    where
        OA: Clone + Eq + Hash + Debug,
        OB: Clone + Eq + Hash + Debug,
        MA: Clone + Debug,
        MB: Clone + Debug,
        K: Eq + Hash,
    {
        let mut failures = Vec::new();
        let b_obj: HashMap<&OB, usize> =
            b.objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let b_mor: HashMap<K, usize> = b
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, c)| (key_b(&c.value), i))
            .collect();

        let forward_objects: Vec<Option<usize>> = a
            .objects
            .iter()
            .map(|o| {
                let img = obj(o);
                let r = b_obj.get(&img).copied();
                if r.is_none() {
                    failures.push(format!("object {o:?} maps to {img:?}, not in the target"));
                }
                r
            })
            .collect();
        let forward_morphisms: Vec<Option<usize>> = a
            .morphisms
            .iter()
            .map(|c| {
                let img = mor(&c.value);
                let r = b_mor.get(&key_b(&img)).copied();
                match r {
                    None => failures.push(format!(
                        "morphism {:?} maps to {img:?}, not in the target",
                        c.value
                    )),
                    Some(j) => {
                        let t = &b.morphisms[j];
                        if Some(t.dom) != forward_objects[c.dom]
                            || Some(t.cod) != forward_objects[c.cod]
                        {
                            failures.push(format!(
                                "morphism {:?} changes boundary under the map",
                                c.value
                            ));
                        }
                    }
                }
                r
            })
            .collect();

        let invert = |fwd: &[Option<usize>], n: usize, what: &str, failures: &mut Vec<String>| {
            let mut back = vec![None; n];
            for (i, j) in fwd.iter().enumerate() {
                if let Some(j) = *j {
                    if back[j].is_some() {
                        failures.push(format!("{what} {j} of the target is hit twice"));
                    }
                    back[j] = Some(i);
                }
            }
            for (j, i) in back.iter().enumerate() {
                if i.is_none() {
                    failures.push(format!("{what} {j} of the target is not hit"));
                }
            }
            back
        };
        let backward_objects = invert(&forward_objects, b.objects.len(), "object", &mut failures);
        let backward_morphisms = invert(
            &forward_morphisms,
            b.morphisms.len(),
            "morphism",
            &mut failures,
        );

        let mut hom_sets = 0;
        for ((x, y), ms) in &a.homs {
            hom_sets += 1;
            if let (Some(fx), Some(fy)) = (forward_objects[*x], forward_objects[*y]) {
                let image: BTreeSet<Option<usize>> =
                    ms.iter().map(|&m| forward_morphisms[m]).collect();
                let target: BTreeSet<Option<usize>> =
                    b.hom(fx, fy).iter().map(|&m| Some(m)).collect();
                if image != target {
                    failures.push(format!(
                        "hom-set {:?} -> {:?} is not matched bijectively",
                        a.objects[*x], a.objects[*y]
                    ));
                }
            }
        }

        for (o, &id) in a.identities.iter().enumerate() {
            if let Some(fo) = forward_objects[o] {
                if forward_morphisms[id] != Some(b.identities[fo]) {
                    failures.push(format!("identity on {:?} is not preserved", a.objects[o]));
                }
            }
        }
        let mut composites_checked = 0;
        for (&(i, j), &k) in &a.composition {
            let (Some(fi), Some(fj)) = (forward_morphisms[i], forward_morphisms[j]) else {
                continue;
            };
            let fk = k.and_then(|k| forward_morphisms[k]);
            let bk = b.composition.get(&(fi, fj)).copied().flatten();
            composites_checked += 1;
            if fk != bk {
                failures.push(format!("composite of {i} and {j} is not preserved"));
            }
        }
        for (&(i, j), &k) in &b.composition {
            let (Some(bi), Some(bj)) = (backward_morphisms[i], backward_morphisms[j]) else {
                continue;
            };
            let back = k.and_then(|k| backward_morphisms[k]);
            if a.composition.get(&(bi, bj)).copied().flatten() != back {
                failures.push(format!(
                    "composite of target morphisms {i} and {j} is not reflected"
                ));
            }
        }

        IsoWitness {
            forward_objects,
            forward_morphisms,
            backward_objects,
            backward_morphisms,
            report: IsoReport {
                objects: (a.objects.len(), b.objects.len()),
                morphisms: (a.morphisms.len(), b.morphisms.len()),
                hom_sets,
                composites_checked,
                failures,
            },
        }
    }
}

/// The anti-token part of a bounded execution, read as an execution of the
/// original net running backwards: from the anti-marking at the end to the
/// anti-marking at the start.
pub fn anti_execution(net: &Arc<PetriNet>, h: &CommMorphism) -> CommMorphism {
    let (_, start) = split_marking(h.cod());
    let mut steps = h.linearize();
    steps.reverse();
    CommCategory::new(net.clone())
        .of_sequence(&FiringSequence { start, steps })
        .expect("anti-tokens flow backwards along the same firings")
}

/// Bounded executions against the total category of the collective-token
/// external semantics, via `h ↦ (ε h, anti h)`.
///
/// The map is always injective, but tips hold every execution with the right
/// generator count, and some of those cannot run alongside `f` within the
/// capacities: for `t1: a ⊕ b → c`, `t2: c → 2b` with four tokens,
/// `(t1;t2, t1;t2)` out of `({a,b}, {b:2})` has no bounded counterpart,
/// since `t1` would need the anti-token of `c` that only `t2` gives back. `verify_gamma_roundtrip` on
/// the counit, whose tips are exactly the bounded executions, is exact.
pub fn verify_theorem_comm(net: &PetriNet, token_bound: usize, firing_bound: usize) -> IsoWitness {
    let n = Arc::new(net.clone());
    let bounded = CommCategory::new(Arc::new(bound_net(net)));
    let eps = FunctorPresentation::counit(n.clone(), Philosophy::Comm);
    let ext = external_comm(CommCategory::new(n.clone()));
    let a = truncate_exec(&bounded, token_bound, firing_bound);
    let b = total_category(&ext, token_bound, firing_bound);
    let mut w = IsoWitness::build(
        &a,
        &b,
        split_marking,
        |h| {
            (
                eps.apply_comm(h).expect("counit applies"),
                anti_execution(&n, h),
            )
        },
        |(f, s)| (f.clone(), s.clone()),
    );
    // the object map is a monoid homomorphism
    for x in &a.objects {
        for y in &a.objects {
            if x.size() + y.size() > token_bound as u64 {
                continue;
            }
            let (fx, ax) = split_marking(x);
            let (fy, ay) = split_marking(y);
            if split_marking(&x.sum(y)) != (fx.sum(&fy), ax.sum(&ay)) {
                w.report
                    .failures
                    .push(format!("object map is not monoidal at {x}, {y}"));
            }
        }
    }
    w
}

/// Source of a presented functor against the total category of its Γ,
/// via `g ↦ (F g, g)`.
pub fn verify_gamma_roundtrip(
    pres: &FunctorPresentation,
    token_bound: usize,
    firing_bound: usize,
) -> IsoWitness {
    match pres.philosophy() {
        Philosophy::Comm => gamma_witness(&gamma_comm(pres.clone()), token_bound, firing_bound),
        Philosophy::Free => gamma_witness(&gamma(pres.clone()), token_bound, firing_bound),
    }
}

fn gamma_witness<F: ExecFunctor>(
    g: &Gamma<F>,
    token_bound: usize,
    firing_bound: usize,
) -> IsoWitness {
    let fun = g.functor();
    let (src, tgt) = (fun.src(), fun.tgt());
    let a = truncate_exec(src, token_bound, firing_bound);
    let b = total_category(g, token_bound, firing_bound);
    IsoWitness::build(
        &a,
        &b,
        |d| (fun.map_obj(d), d.clone()),
        |h| (fun.map_mor(h), h.clone()),
        |(f, s)| (tgt.key(f), src.key(s)),
    )
}

/// Bounded diagrams against the total category of the individual-token
/// external semantics.
pub fn verify_theorem_indiv(net: &PetriNet, token_bound: usize, firing_bound: usize) -> IsoWitness {
    let fun = external_indiv(Arc::new(net.clone())).expect("counit is a presentation");
    gamma_witness(&fun, token_bound, firing_bound)
}

#[derive(Debug, Clone, Default)]
pub struct PullbackReport {
    /// Every bounded diagram lies in the tip of the semantics of its erasure.
    pub square_commutes: bool,
    /// Erasure and the tip element together determine a bounded diagram.
    pub jointly_monic: bool,
    /// Both projections of `δ g` give back `g`.
    pub delta_factors: bool,
    /// Distinct cone elements reach distinct points of the pullback.
    pub factorization_unique: bool,
    /// The constant cone at the unit factors through the identity on `I`.
    pub degenerate_cone: bool,
    /// The comultiplication equations after each projection `B³N → B²N`.
    pub equation_chain: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PullbackReport {
    pub fn holds(&self) -> bool {
        self.square_commutes
            && self.jointly_monic
            && self.delta_factors
            && self.factorization_unique
            && self.degenerate_cone
            && self.equation_chain
    }
}

/// Checks on a truncation that bounded diagrams, with the counit and the
/// pointing by tip elements, form a pullback of the semantics along the
/// forgetful map from pointed spans, and that the comultiplication is the
/// factorization of the cone `(id, Q)`.
///
/// The pullback of the semantics precomposed with the counit consists of pairs
/// `(g, s)` with equal erasures, so the factorization of the cone is the
/// diagonal `g ↦ (g, g)`; the comparison from the doubly bounded category
/// sends `h` to `(ε_B h, B(ε) h)`.
pub fn check_pullback(
    net: &PetriNet,
    token_bound: usize,
    firing_bound: usize,
) -> Result<PullbackReport, PresentationError> {
    let n = Arc::new(net.clone());
    let bn = Arc::new(bound_net(net));
    let fun = external_indiv(n.clone())?;
    let eps = FunctorPresentation::counit(n.clone(), Philosophy::Free);
    let delta = FunctorPresentation::comult(n.clone(), Philosophy::Free);
    let eps_b = FunctorPresentation::counit(bn.clone(), Philosophy::Free);
    let b_eps = eps.lift()?;
    let src = SymCategory::new(bn.clone());
    let base = SymCategory::new(n);
    let a = truncate_exec(&src, token_bound, firing_bound);

    let mut r = PullbackReport {
        square_commutes: true,
        jointly_monic: true,
        delta_factors: true,
        factorization_unique: true,
        ..PullbackReport::default()
    };
    let mut pairs = BTreeSet::new();
    let mut comparisons = BTreeSet::new();
    for c in &a.morphisms {
        let g = &c.value;
        r.checked += 1;
        let f = eps.apply_sym(g)?;
        if !fun.tip_contains(&f, g) || fun.left(g) != *g.inputs() || fun.right(g) != *g.outputs() {
            r.square_commutes = false;
            r.failures.push(format!("{g} is not over its erasure"));
        }
        pairs.insert((base.key(&f), src.key(g)));
        let d = delta.apply_sym(g)?;
        let (p1, p2) = (eps_b.apply_sym(&d)?, b_eps.apply_sym(&d)?);
        if !sym_equal(&p1, g) || !sym_equal(&p2, g) {
            r.delta_factors = false;
            r.failures.push(format!(
                "projections of the comultiplication of {g} differ from it"
            ));
        }
        comparisons.insert((src.key(&p1), src.key(&p2)));
    }
    if pairs.len() != a.morphisms.len() {
        r.jointly_monic = false;
        r.failures
            .push("two bounded diagrams share erasure and tip element".into());
    }
    if comparisons.len() != a.morphisms.len() {
        r.factorization_unique = false;
        r.failures
            .push("the cone reaches the same point from two elements".into());
    }

    let unit_tips = fun.tips_over(&sym_identity(&[]), &Vec::new());
    r.degenerate_cone = unit_tips.len() == 1 && sym_equal(&unit_tips[0], &sym_identity(&[]));
    if !r.degenerate_cone {
        r.failures.push(format!(
            "the unit has {} points over its identity",
            unit_tips.len()
        ));
    }

    let laws = check_comonad_laws(net, Philosophy::Free)?;
    r.equation_chain = laws.coassociativity_projected.is_empty();
    r.failures.extend(laws.coassociativity_projected);
    Ok(r)
}

/// Whether `sem_m` after `F` agrees with `sem_n` on the sampled morphisms:
/// for each `(f, x)`, transporting the tip elements of `f` over `x` along `F`
/// gives exactly the tip elements of `F f` over `F x`.
pub fn check_semantics_morphism(
    pres: &FunctorPresentation,
    sem_n: &ExternalComm,
    sem_m: &ExternalComm,
    samples: &[(CommMorphism, Multiset)],
) -> Result<bool, PresentationError> {
    if pres.philosophy() != Philosophy::Comm
        || **sem_n.base().net() != **pres.source()
        || **sem_m.base().net() != **pres.target()
    {
        return Err(PresentationError::Mismatch(
            "semantics are not over the functor's nets".into(),
        ));
    }
    for (f, x) in samples {
        let moved: BTreeSet<CommMorphism> = sem_n
            .tips_over(f, x)
            .iter()
            .map(|s| pres.apply_comm(s))
            .collect::<Result<_, _>>()?;
        let there: BTreeSet<CommMorphism> = sem_m
            .tips_over(&pres.apply_comm(f)?, &pres.map_multiset(x))
            .into_iter()
            .collect();
        if moved != there {
            return Ok(false);
        }
    }
    Ok(true)
}
