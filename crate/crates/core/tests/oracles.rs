mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ks33::catalog::{family_rays, family_rays_exact, peres_rays, penrose_mpairs, FamilyParams};
use ks33::kscolor::{check_coloring, search_coloring, ConstraintSet};
use ks33::majorana::{overlap2_mpairs, state_from_mpair};
use ks33::orthograph::{build_graph, reference_decomposition};
use ks33::scalar::QRoot2;

fn full() -> ConstraintSet {
    ConstraintSet::new(33, common::triads(), common::dyads())
}

#[test]
fn reference_table_matches_independent_transcription() {
    let t = reference_decomposition();
    assert_eq!(t.triads, common::triads());
    assert_eq!(t.dyads, common::dyads());
    assert_eq!(t.edges(), common::edges());
}

#[test]
fn search_agrees_with_brute_force_on_restrictions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let all: Vec<u8> = (1..=33).collect();
    let (mut sat, mut unsat) = (0, 0);
    for size in [8, 12, 16, 20] {
        for _ in 0..12 {
            let mut keep: Vec<u8> = all.choose_multiple(&mut rng, size).copied().collect();
            keep.sort();
            let cs = full().restrict(&keep);
            let found = search_coloring(&cs).coloring;
            let oracle = common::brute_force_colorable(&keep);
            assert_eq!(found.is_some(), oracle.is_some(), "keep = {keep:?}");
            if let Some(c) = found {
                check_coloring(&c, &cs).unwrap();
                sat += 1;
            } else {
                unsat += 1;
            }
        }
    }
    assert!(sat > 0, "{sat} sat / {unsat} unsat");
}

#[test]
fn brute_force_finds_uncolorable_core() {
    // The rays touched by the replayed proof already admit no coloring once
    // ray 1 is forced green; the full set admits none at all.
    assert!(common::brute_force_colorable(&[1, 2, 3, 4, 5, 10, 11, 12, 13]).is_some());
    assert!(search_coloring(&full()).coloring.is_none());
}

#[test]
fn exact_and_float_orthogonality_agree_on_all_pairs() {
    let exact = peres_rays();
    let approx: Vec<_> = exact.iter().map(|r| r.to_approx()).collect();
    let pen = penrose_mpairs();
    let states: Vec<_> = pen.iter().map(|p| state_from_mpair(p).unwrap().as_ray()).collect();
    let mut pairs = 0;
    for i in 0..33 {
        for j in i + 1..33 {
            let e = exact[i].overlap2(&exact[j]) == QRoot2::zero();
            assert_eq!(e, approx[i].overlap2(&approx[j]) < 1e-18, "peres {} {}", i + 1, j + 1);
            let p = overlap2_mpairs(&pen[i], &pen[j]) == QRoot2::zero();
            assert_eq!(p, states[i].overlap2(&states[j]) < 1e-18, "penrose {} {}", i + 1, j + 1);
            assert_eq!(e, p);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 528);
}

#[test]
fn family_at_origin_is_peres() {
    let fam = family_rays_exact(&FamilyParams::peres()).unwrap();
    for (i, (f, p)) in fam.iter().zip(peres_rays()).enumerate() {
        assert!(f.proportional(&p, 0.0), "ray {}", i + 1);
    }
    let approx = family_rays(&FamilyParams::peres());
    for (f, p) in approx.iter().zip(peres_rays()) {
        assert!(f.proportional(&p.to_approx(), 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_keeps_the_diagram(a in 0.0..std::f64::consts::TAU, b in 0.0..std::f64::consts::TAU, c in 0.0..std::f64::consts::TAU) {
        let p = FamilyParams::new(a, b, c);
        let g = build_graph(family_rays(&p).as_slice(), 1e-9).unwrap();
        prop_assert_eq!(g.edges(), &common::edges());
        prop_assert!((p.constants().k.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deletions_stay_colorable(v in 1u8..=33) {
        let cs = full().delete(v).unwrap();
        let c = search_coloring(&cs).coloring.expect("colorable");
        prop_assert!(check_coloring(&c, &cs).is_ok());
        let assignment: Vec<bool> = (1..=33).map(|r| c.greens().contains(&r)).collect();
        prop_assert!(common::satisfies(&common::clauses(Some(v)), &assignment));
    }
}
