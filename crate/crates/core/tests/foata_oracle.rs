mod common;

use std::sync::Arc;

use common::*;
use petri_bound::exec_comm::{CommCategory, FiringSequence};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn canonical_layers_agree_with_swap_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0usize;
    for _ in 0..300 {
        let net = random_net(&mut rng, 3, 4, 2);
        let m0 = random_marking(&mut rng, &net, 2);
        let cat = CommCategory::new(Arc::new(net.clone()));
        let seqs = valid_sequences(&net, &m0, 5);
        let forms: Vec<_> = seqs
            .iter()
            .map(|s| {
                cat.of_sequence(&FiringSequence {
                    start: m0.clone(),
                    steps: s.clone(),
                })
                .unwrap()
            })
            .collect();
        for (i, s) in seqs.iter().enumerate() {
            let class = swap_class(&net, &m0, s);
            for (j, t) in seqs.iter().enumerate() {
                if t.len() != s.len() {
                    continue;
                }
                let same = class.contains(t);
                assert_eq!(
                    forms[i] == forms[j],
                    same,
                    "net {net:?} m0 {m0} {s:?} vs {t:?}: {} / {}",
                    forms[i],
                    forms[j]
                );
                checked += 1;
            }
        }
    }
    eprintln!("checked {checked} pairs");
}
