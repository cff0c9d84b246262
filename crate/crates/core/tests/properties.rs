mod common;

use modknot::bound::{self, total_bound};
use modknot::covers::{self, SurfaceSig};
use modknot::lobachevsky::{group_volume_bound, lambda, v_max, Angle};
use modknot::template::{arrange, crossings, decompose, piece_counts, Ear};
use modknot::word::{CyclicWord, Syllables};
use proptest::prelude::*;

fn word_strategy(max_syl: usize, max_exp: u64) -> impl Strategy<Value = CyclicWord> {
    prop::collection::vec((1..=max_exp, 1..=max_exp), 1..=max_syl)
        .prop_map(|p| CyclicWord::from_syllables(&Syllables::new(p).unwrap()).unwrap())
        .prop_filter("primitive", |w| w.is_primitive())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn arrangement_matches_brute_force(ws in prop::collection::btree_set(word_strategy(4, 6), 1..4)) {
        let ws: Vec<_> = ws.into_iter().collect();
        let arr = arrange(&ws).unwrap();
        let oracle = common::brute_arrangement(arr.words());
        prop_assert_eq!(arr.successor(), oracle.successor.as_slice());
        prop_assert_eq!(crossings(&arr), oracle.crossings);
        arr.check().unwrap();
    }

    #[test]
    fn chain_accounting(ws in prop::collection::btree_set(word_strategy(5, 9), 1..3)) {
        let ws: Vec<_> = ws.into_iter().collect();
        let arr = arrange(&ws).unwrap();
        let dec = decompose(&arr);
        for (i, ear) in [Ear::X, Ear::Y].into_iter().enumerate() {
            let block = if i == 0 { arr.x_block() } else { arr.y_block() };
            let rects: u64 = dec.chains_in(ear).map(|c| c.length - 1).sum();
            prop_assert_eq!(rects, dec.rectangles[i]);
            let splits = dec.splittings_in(ear).count() as u64;
            prop_assert_eq!(dec.rectangles[i] + splits, block.len() as u64 - 1);
            for c in dec.chains_in(ear) {
                prop_assert!(c.length >= 1 && c.length <= c.exponent);
            }
        }
        let p = piece_counts(&arr);
        prop_assert_eq!(p.c_tetra, p.n_gamma + 1);
        prop_assert!(p.a_tetra <= 2 * p.n_gamma);
        prop_assert!(p.b_linear_tetra <= 5 * p.n_gamma);
    }

    #[test]
    fn report_invariants(ws in prop::collection::btree_set(word_strategy(4, 40), 1..3)) {
        let ws: Vec<_> = ws.into_iter().collect();
        let r = total_bound(&ws).unwrap();
        let v = v_max();
        let c = &r.counts;
        let chain_sum: f64 = r.b_chains.iter().map(|&(s, _)| group_volume_bound(s).unwrap()).sum();
        let expect = v * (2 * c.a_tetra + 2 * c.b_linear_tetra + 4 * c.c_tetra + c.d_tetra) as f64 + 2.0 * chain_sum;
        prop_assert!((r.total_bound - expect).abs() <= 1e-12 * expect);
        for &(s, b) in &r.b_chains {
            prop_assert!(b <= s as f64 * v * (1.0 + 1e-15));
        }
        prop_assert!(r.b_chain_total() <= v * r.chain_passages() as f64 * (1.0 + 1e-15));
        prop_assert!(r.b_linear + r.b_chain_total() <= r.closed_form_b + 1e-9);
        prop_assert!(r.total_bound <= r.uniform_bound() * (1.0 + 1e-15));
        prop_assert!(r.ratio.is_finite() && r.ratio > 0.0);
        // rotation and input order do not matter
        let mut rev = ws.clone();
        rev.reverse();
        prop_assert_eq!(total_bound(&rev).unwrap().total_bound, r.total_bound);
    }

    #[test]
    fn group_bound_below_log(s in 1u64..100_000) {
        let g = group_volume_bound(s).unwrap();
        prop_assert!(g <= v_max() + 2.0 * std::f64::consts::PI * (s as f64).ln() + 1e-12);
        prop_assert!(g <= s as f64 * v_max() * (1.0 + 1e-15));
    }

    #[test]
    fn lambda_matches_quadrature(t in 0.001f64..3.1) {
        let l = lambda(Angle(t)).unwrap();
        prop_assert!((l - common::lambda_quadrature(t)).abs() < 1e-10);
    }

    #[test]
    fn padding_lands_in_family(g in 0u64..30, n in 0u64..60) {
        let s = SurfaceSig::new(g, n);
        let p = covers::padded(s);
        if let Ok(f) = covers::cover_family(p) {
            prop_assert_eq!(f.chain_degree, covers::euler_degree(p).unwrap());
            let c = covers::propagate_constant(1.5, s, 1.0);
            if s.neg_euler() > 0 {
                prop_assert_eq!(c.unwrap(), 1.5 * f.oracle_degree as f64);
            } else {
                prop_assert!(c.is_err());
            }
        } else {
            prop_assert!(false, "{:?} padded to {:?}", s, p);
        }
    }
}

#[test]
fn corpus_ratio_below_short_word_maximum() {
    // The worst ratio over all short words bounds every corpus word.
    let short = bound::corpus_reports(&modknot::word::primitive_words_up_to(12)).unwrap();
    let guard = bound::summarize(&short).unwrap().max;
    let s = bound::corpus_ratio(11, 1000, 8, 500).unwrap();
    assert!(s.max <= guard, "{} > {}", s.max, guard);
    assert_eq!(s, bound::corpus_ratio(11, 1000, 8, 500).unwrap());
}

#[test]
fn family_row_sublinear() {
    let rows = bound::family_grid(&[1], &(1..=100).collect::<Vec<_>>()).unwrap();
    let first = rows[0].report.total_bound;
    let last = rows[99].report.total_bound;
    // word length grows 50x, the bound by far less
    assert!(last / first < 2.5, "{first} {last}");
    for w in rows.windows(2) {
        assert!(w[1].report.total_bound >= w[0].report.total_bound - 1e-9);
    }
}
