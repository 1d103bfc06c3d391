mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::*;
use petri_bound::bounding::{bound_net, initial_antimarking, split_marking};
use petri_bound::exec_comm::{CommCategory, FiringSequence};
use petri_bound::multiset::{Multiset, Sym};
use petri_bound::net::{parse_net, parse_net_unchecked, write_net};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nets_survive_a_write_read_cycle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_net(&mut rng, 5, 5, 3);
        let m = random_marking(&mut rng, &net, 3);
        let (back, marking) = parse_net(&write_net(&net, Some(&m))).unwrap();
        prop_assert_eq!(&back, &net);
        prop_assert_eq!(marking, Some(m));

        let bn = bound_net(&net);
        let (bback, _) = parse_net_unchecked(&write_net(&bn, None)).unwrap();
        prop_assert_eq!(bback.places(), bn.places());
        prop_assert!(parse_net(&write_net(&bn, None)).is_err() || bn.places().is_empty());
    }

    #[test]
    fn bounded_firing_conserves_capacity(seed in any::<u64>(), steps in 0usize..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_net(&mut rng, 4, 4, 3);
        let m0 = random_marking(&mut rng, &net, 2);
        let caps: BTreeMap<Sym, u64> =
            net.places().iter().map(|p| (p.clone(), m0.count(p) + rng.gen_range(0..=2))).collect();
        let bn = bound_net(&net);
        let mut m = initial_antimarking(&net, &m0, &caps).unwrap();
        for _ in 0..steps {
            let enabled: Vec<Sym> =
                bn.transitions().iter().map(|t| t.name.clone()).filter(|u| bn.enabled(&m, u).unwrap()).collect();
            let Some(u) = enabled.choose(&mut rng) else { break };
            m = bn.fire(&m, u).unwrap();
            let (fwd, bwd) = split_marking(&m);
            for p in net.places() {
                prop_assert_eq!(fwd.count(p) + bwd.count(p), caps[p]);
            }
        }
    }

    #[test]
    fn generator_count_adds_up(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = Arc::new(random_net(&mut rng, 3, 3, 2));
        let cat = CommCategory::new(net.clone());
        let m0 = random_marking(&mut rng, &net, 2);
        let seqs = valid_sequences(&net, &m0, 3);
        let s = seqs.choose(&mut rng).unwrap().clone();
        let f = cat.of_sequence(&FiringSequence { start: m0.clone(), steps: s.clone() }).unwrap();
        let cont = valid_sequences(&net, f.cod(), 2);
        let t = cont.choose(&mut rng).unwrap().clone();
        let g = cat.of_sequence(&FiringSequence { start: f.cod().clone(), steps: t.clone() }).unwrap();
        let expected: Multiset = s.iter().chain(&t).cloned().collect();
        prop_assert_eq!(cat.compose(&f, &g).unwrap().chi(), expected.clone());
        prop_assert_eq!(cat.tensor(&f, &g).chi(), expected);
    }
}
