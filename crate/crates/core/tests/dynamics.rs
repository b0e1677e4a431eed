use complex_cf::algorithms::{cell, choose, piece_at, spec, AlgorithmId};
use complex_cf::arith::{convergents, GaussianInt};
use complex_cf::dynamics::published::{expand, printed_base};
use complex_cf::dynamics::{
    check_building, compute_j_table, digit_sequence, gauss_step, image_set, published_j, refine,
    refine_partition, verify_building, BuildParams, Shortcut,
};
use complex_cf::dynamics::building::check_formulas;
use complex_cf::regions::{ae_equal, sample_region, HalfSpace, Membership, Rect, Region, Verdict};
use complex_cf::{Error, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gi(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

fn random_in_k(alg: AlgorithmId, n: usize, seed: u64) -> Vec<C64> {
    sample_region(&spec(alg).k, Rect::square(1.0), n, seed).unwrap()
}

#[test]
fn gauss_map_sends_k_into_k() {
    for alg in AlgorithmId::ALL {
        for z in random_in_k(alg, 100_000, 1) {
            let s = gauss_step(alg, z).unwrap();
            assert_ne!(spec(alg).k.classify(s.next, 1e-9), Verdict::Out, "{alg} at {z}");
        }
    }
}

#[test]
fn digit_is_constant_on_each_cell() {
    for alg in AlgorithmId::ALL {
        for a in GaussianInt::ball(3.0) {
            if !alg.admissible(a) {
                continue;
            }
            let c = cell(alg, a).unwrap();
            if !c.has_interior() {
                continue;
            }
            let bbox = c.bounding_box().unwrap();
            for z in sample_region(&c, bbox, 200, a.norm() as u64).unwrap() {
                if c.classify(z, 1e-9) != Verdict::In {
                    continue;
                }
                assert_eq!(choose(alg, -1.0 / z), a, "{alg} cell {a} at {z}");
            }
        }
    }
}

#[test]
fn convergents_approach_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let z = C64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let d = digit_sequence(AlgorithmId::NearestInteger, z, 40).unwrap();
        let last = convergents(&d).into_iter().rev().find_map(|c| c.value).unwrap();
        assert!((last.to_c64() - z).norm() < 1e-6, "{z}");
    }
}

#[test]
fn digits_grow_beyond_ten() {
    for alg in AlgorithmId::ALL {
        for mut z in random_in_k(alg, 1000, 8) {
            let mut big = false;
            for _ in 0..10_000 {
                let s = gauss_step(alg, z).unwrap();
                if s.digit.abs() > 10.0 {
                    big = true;
                    break;
                }
                z = s.next;
            }
            assert!(big, "{alg}");
        }
    }
}

fn quick() -> BuildParams {
    BuildParams {
        n: 200_000,
        ..Default::default()
    }
}

#[test]
fn all_published_partitions_are_buildable() {
    for alg in AlgorithmId::ALL {
        let r = verify_building(alg, &quick()).unwrap_or_else(|e| panic!("{alg}: {e}"));
        assert!(r.passed());
        let expected = match alg {
            AlgorithmId::NearestEven | AlgorithmId::Disk => Shortcut::Markov,
            AlgorithmId::Diamond => Shortcut::PreTiling,
            _ => Shortcut::Tiling,
        };
        assert_eq!(r.shortcut, expected);
        assert!(r.pieces.iter().all(|p| p.digit_checks > 0));
    }
}

#[test]
fn printed_decompositions_with_transcription_errors_fail() {
    for alg in [
        AlgorithmId::NearestInteger,
        AlgorithmId::NearestOdd,
        AlgorithmId::Diamond,
        AlgorithmId::ShiftedHurwitz,
    ] {
        let f = expand(alg, &printed_base(alg));
        let checks = check_formulas(alg, &f, &quick());
        assert!(checks.iter().any(|c| !c.passed()), "{alg}");
    }
}

#[test]
fn building_failure_reports_a_witness() {
    let alg = AlgorithmId::NearestInteger;
    let f = expand(alg, &printed_base(alg));
    let checks = check_formulas(alg, &f, &quick());
    let bad = checks.iter().find(|c| !c.passed()).unwrap();
    let w = bad.comparison.witness.unwrap();
    let lhs = spec(alg).partition[bad.piece].invert().classify(w, 0.0);
    let rhs = bad.formula.classify(w, 0.0, &spec(alg).partition);
    assert_ne!(lhs, rhs);
}

#[test]
fn nearest_even_table_matches_publication() {
    let t = compute_j_table(AlgorithmId::NearestEven, 4.0).unwrap();
    for e in &t.entries {
        assert_eq!(e.pieces, published_j(AlgorithmId::NearestEven, e.digit), "a = {}", e.digit);
    }
    let one_based = |v: &[usize]| v.iter().map(|j| j + 1).collect::<Vec<_>>();
    assert_eq!(one_based(&t.get(gi(1, 1)).unwrap().pieces), vec![2, 3, 4, 5, 6]);
    assert!(t.get(gi(0, 0)).unwrap().pieces.is_empty());
    assert_eq!(t.get(gi(2, 2)).unwrap().pieces.len(), 8);
}

#[test]
fn disk_table_matches_sector_unions() {
    let t = compute_j_table(AlgorithmId::Disk, 4.0).unwrap();
    for e in &t.entries {
        assert_eq!(e.pieces, published_j(AlgorithmId::Disk, e.digit), "a = {}", e.digit);
    }
    // ⟨1+i⟩ is the piece centred at -1+i.
    assert_eq!(t.get(gi(1, 1)).unwrap().piece, Some(1));
    // Sector E5 gives V5 = K1 ∪ K3 ∪ K4.
    assert_eq!(t.get(gi(2, 0)).unwrap().pieces, vec![0, 2, 3]);
}

#[test]
fn non_markov_algorithms_have_straddling_cells() {
    let err = compute_j_table(AlgorithmId::NearestInteger, 3.0).unwrap_err();
    assert!(matches!(err, Error::NotMarkov { .. }));
}

#[test]
fn diamond_digit_depends_on_the_piece() {
    let pieces = &spec(AlgorithmId::Diamond).partition;
    let a = gi(2, 2);
    let w8 = pieces[7].interior_witness().unwrap() + a.to_c64();
    let w9 = pieces[8].interior_witness().unwrap() + a.to_c64();
    assert_eq!(choose(AlgorithmId::Diamond, w8), gi(2, 2));
    assert_eq!(choose(AlgorithmId::Diamond, w9), gi(2, 1));
    assert_eq!(piece_at(pieces, w8 - a.to_c64(), 1e-9), Some(7));
}

#[test]
fn refinement_of_nearest_integer_recovers_the_partition() {
    let alg = AlgorithmId::NearestInteger;
    let k = spec(alg).k.clone();
    let x = image_set(alg, gi(2, 0), &k).unwrap();
    let expected = k.intersect(&Region::half_space(HalfSpace::outside(C64::new(-1.0, 0.0), 1.0)));
    assert!(ae_equal(&x, &expected, Rect::square(0.6), 50_000, 1e-9, 1).passed());

    let r = refine_partition(alg, 20, 4.0).unwrap();
    assert_eq!(r.stages[0].digit, gi(2, 0));
    assert_eq!(r.pieces.len(), 12);
    assert_matches_up_to_relabeling(&r.pieces, &spec(alg).partition);
}

#[test]
fn refinement_of_nearest_even_recovers_the_partition() {
    let alg = AlgorithmId::NearestEven;
    let r = refine_partition(alg, 20, 4.0).unwrap();
    assert_eq!(r.pieces.len(), 8);
    assert_matches_up_to_relabeling(&r.pieces, &spec(alg).partition);
}

#[test]
fn refinement_budget_is_reported() {
    let err = refine_partition(AlgorithmId::NearestInteger, 2, 4.0).unwrap_err();
    assert!(matches!(err, Error::BudgetExhausted { stages: 2, pieces: 3 }));
    let partial = refine(AlgorithmId::NearestInteger, 2, 4.0).unwrap();
    assert!(!partial.complete);
}

fn assert_matches_up_to_relabeling(found: &[Region], published: &[Region]) {
    for p in found {
        let w = p.interior_witness().unwrap();
        let j = piece_at(published, w, 1e-9).expect("witness inside one published piece");
        let rep = ae_equal(p, &published[j], Rect::square(0.75), 40_000, 1e-9, j as u64);
        assert!(rep.passed(), "piece {}: {rep}", j + 1);
    }
}

#[test]
fn building_report_lists_every_piece() {
    let r = check_building(AlgorithmId::Disk, &quick()).unwrap();
    let text = r.to_string();
    assert!(text.contains("algorithm=disk"));
    assert!(text.contains("shortcut=markov"));
    assert_eq!(text.matches("piece=").count(), 5);
    assert!(text.ends_with("result=pass"));
}
