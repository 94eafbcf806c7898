mod common;

use faid::faid::{tables, FaidDecoder};
use faid::reference::{BpConfig, ReferenceDecoder};
use faid::{BitDecoder, TannerGraph};
use common::oracles::{channel, exact_posteriors, max_product};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word(mask: u32, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((mask >> i) & 1) as u8).collect()
}

#[test]
fn bp_is_exact_on_a_tree() {
    let g = common::tree_code();
    let codewords = common::all_codewords(&g);
    for alpha in [0.2, 0.3] {
        let dec = ReferenceDecoder::sum_product(BpConfig::new(alpha, 100, 25.0).unwrap());
        for mask in (0u32..1 << 12).step_by(7) {
            let r = word(mask, 12);
            let post = dec.posteriors(&g, &r, 12).unwrap();
            assert_eq!(post.clip_events, 0);
            let want = exact_posteriors(&codewords, &r, alpha);
            for (a, b) in post.llr.iter().zip(&want) {
                assert!((a - b).abs() < 1e-9, "{mask:b}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn min_sum_is_max_product_on_a_tree() {
    let g = common::tree_code();
    let codewords = common::all_codewords(&g);
    let alpha = 0.1;
    let dec = ReferenceDecoder::min_sum(BpConfig::new(alpha, 100, 25.0).unwrap());
    for mask in (0u32..1 << 12).step_by(5) {
        let r = word(mask, 12);
        let post = dec.posteriors(&g, &r, 12).unwrap();
        assert_eq!(post.clip_events, 0);
        let want = max_product(&codewords, &channel(&r, alpha));
        for (a, b) in post.llr.iter().zip(&want) {
            assert!((a - b).abs() < 1e-9, "{mask:b}: {a} vs {b}");
        }
        let decisions = dec.decisions_after(&g, &r, 12).unwrap();
        for (v, &d) in decisions.iter().enumerate() {
            if want[v] != 0.0 {
                assert_eq!(d, u8::from(want[v] < 0.0));
            }
        }
    }
}

fn xor_ones(w: &[u8]) -> Vec<u8> {
    w.iter().map(|b| b ^ 1).collect()
}

#[test]
fn decoders_commute_with_codeword_translation() {
    // with every check of even degree the all-ones word is a codeword
    let g = common::random_regular(48, 3, 6, 11);
    let faid = FaidDecoder::from_map(tables::table_one(), 30).unwrap();
    let cfg = BpConfig::new(0.05, 30, 25.0).unwrap();
    let decoders: Vec<Box<dyn BitDecoder>> = vec![
        Box::new(faid),
        Box::new(ReferenceDecoder::sum_product(cfg)),
        Box::new(ReferenceDecoder::min_sum(cfg)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let r: Vec<u8> = (0..48).map(|_| rng.random_bool(0.08) as u8).collect();
        for dec in &decoders {
            let a = dec.decode_word(&g, &r).unwrap();
            let b = dec.decode_word(&g, &xor_ones(&r)).unwrap();
            assert_eq!(xor_ones(&a.bits), b.bits, "{}", dec.name());
            assert_eq!((a.converged, a.iterations), (b.converged, b.iterations));
        }
    }
}

#[test]
fn reference_decoders_fix_single_errors_on_tanner_code() {
    let code = faid::fixtures::tanner_code();
    let cfg = BpConfig::with_defaults(0.01).unwrap();
    for dec in [ReferenceDecoder::sum_product(cfg), ReferenceDecoder::min_sum(cfg)] {
        for v in (0..155).step_by(13) {
            let mut r = vec![0u8; 155];
            r[v] = 1;
            let out = dec.decode(&code.graph, &r).unwrap();
            assert!(out.converged && out.bits.iter().all(|&b| b == 0));
        }
    }
}

fn arb_word() -> impl Strategy<Value = (u64, Vec<u8>)> {
    (0u64..8, proptest::collection::vec(prop_oneof![9 => Just(0u8), 1 => Just(1u8)], 48))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_sum_ignores_alpha((seed, r) in arb_word()) {
        let g = common::random_regular(48, 3, 6, seed);
        let outs: Vec<_> = [0.001, 0.02, 0.2, 0.45]
            .iter()
            .map(|&a| ReferenceDecoder::min_sum(BpConfig::new(a, 50, 25.0).unwrap()).decode(&g, &r).unwrap())
            .collect();
        for o in &outs[1..] {
            prop_assert_eq!(o, &outs[0]);
        }
    }

    #[test]
    fn tree_min_sum_matches_oracle_for_any_alpha(mask in 0u32..4096, alpha in 0.01f64..0.45) {
        let g: TannerGraph = common::tree_code();
        let codewords = common::all_codewords(&g);
        let r = word(mask, 12);
        let post = ReferenceDecoder::min_sum(BpConfig::new(alpha, 100, 25.0).unwrap())
            .posteriors(&g, &r, 12)
            .unwrap();
        let want = max_product(&codewords, &channel(&r, alpha));
        for (a, b) in post.llr.iter().zip(&want) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
