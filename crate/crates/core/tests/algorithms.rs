use complex_cf::algorithms::{
    choose, disk, fundamental_set, piece_permutation, spec, AlgorithmId, Isometry,
};
use complex_cf::regions::{ae_equal, Membership, Predicate, Rect, Region, Verdict};
use complex_cf::C64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn pieces_cover_k_and_are_interior_disjoint() {
    for alg in AlgorithmId::ALL {
        let s = spec(alg);
        let union = Region::union_all(s.partition.iter());
        let rep = ae_equal(&s.k, &union, Rect::square(1.1), 200_000, 1e-9, 11);
        assert!(rep.passed(), "{alg}: {rep}");
        let overlap = Predicate(|z: C64, eps: f64| {
            let mut hits = 0;
            for p in &s.partition {
                match p.classify(z, eps) {
                    Verdict::NearBoundary => return Verdict::NearBoundary,
                    Verdict::In => hits += 1,
                    Verdict::Out => {}
                }
            }
            Verdict::from_bool(hits > 1)
        });
        let none = Predicate(|_: C64, _: f64| Verdict::Out);
        let rep = ae_equal(&overlap, &none, Rect::square(1.1), 200_000, 1e-9, 12);
        assert!(rep.passed(), "{alg} overlap: {rep}");
        for (i, p) in s.partition.iter().enumerate() {
            assert!(p.has_interior(), "{alg} piece {}", i + 1);
        }
    }
}

#[test]
fn k_lies_in_closed_unit_disk() {
    for alg in AlgorithmId::ALL {
        let k = fundamental_set(alg);
        let inside = k.intersect(&Region::unit_disk());
        let rep = ae_equal(&k, &inside, Rect::square(1.2), 100_000, 1e-9, 3);
        assert!(rep.passed(), "{alg}: {rep}");
    }
}

#[test]
fn rotation_rule_for_nearest_integer() {
    let s = spec(AlgorithmId::NearestInteger);
    for i in 3..12 {
        let rotated = s.partition[i - 3].rotate(c(0.0, -1.0));
        let rep = ae_equal(&rotated, &s.partition[i], Rect::square(0.6), 50_000, 1e-9, i as u64);
        assert!(rep.passed(), "piece {}: {rep}", i + 1);
    }
}

#[test]
fn diamond_and_nearest_odd_share_the_partition() {
    let a = spec(AlgorithmId::Diamond);
    let b = spec(AlgorithmId::NearestOdd);
    for (p, q) in a.partition.iter().zip(&b.partition) {
        assert!(ae_equal(p, q, Rect::square(1.1), 20_000, 1e-9, 0).passed());
    }
}

#[test]
fn symmetries_permute_pieces() {
    for alg in AlgorithmId::ALL {
        let pieces = &spec(alg).partition;
        for g in alg.symmetries() {
            assert!(piece_permutation(&g, pieces).is_some(), "{alg} {g:?}");
        }
    }
    // Rotation by -i sends nearest-integer piece 1 to piece 4.
    let perm = piece_permutation(
        &Isometry::rotation(3),
        &spec(AlgorithmId::NearestInteger).partition,
    )
    .unwrap();
    assert_eq!(perm[0], 3);
}

#[test]
fn shifted_hurwitz_k_is_union_of_pieces_formula() {
    // K = {|Im z| ≤ 1/2, |z| ≤ 1, |z - 1| ≥ 1} against the defining choice.
    let alg = AlgorithmId::ShiftedHurwitz;
    let k = fundamental_set(alg);
    let by_choice = Predicate(|z: C64, eps: f64| match k.classify(z, eps) {
        Verdict::NearBoundary => Verdict::NearBoundary,
        _ => Verdict::from_bool(choose(alg, z) == Default::default()),
    });
    let rep = ae_equal(&k, &by_choice, Rect::square(1.2), 200_000, 1e-9, 5);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn disk_v_sets_rotate_and_match_unions() {
    for j in [2, 3, 4, 6, 7, 8] {
        let rotated = disk::v_set(j - 1).rotate(c(0.0, -1.0));
        let rep = ae_equal(&rotated, &disk::v_set(j), Rect::square(1.1), 50_000, 1e-9, j as u64);
        assert!(rep.passed(), "V{j}: {rep}");
    }
    let v5 = disk::v_set(1).intersect(&disk::v_set(2));
    assert!(ae_equal(&v5, &disk::v_set(5), Rect::square(1.1), 50_000, 1e-9, 9).passed());
    let pieces = &spec(AlgorithmId::Disk).partition;
    for j in 0..9 {
        let u = Region::union_all(disk::v_union(j).iter().map(|&k| &pieces[k - 1]));
        let rep = ae_equal(&disk::v_set(j), &u, Rect::square(1.1), 100_000, 1e-9, 20 + j as u64);
        assert!(rep.passed(), "V{j}: {rep}");
    }
}

fn contract_holds(alg: AlgorithmId, z: C64) -> Result<(), String> {
    let a = choose(alg, z);
    let r = z - a.to_c64();
    if r.norm() > 1.0 + 1e-12 {
        return Err(format!("|z - <z>| = {} at {z}", r.norm()));
    }
    if spec(alg).k.classify(r, 1e-9) == Verdict::Out {
        return Err(format!("z - <z> outside K at {z}"));
    }
    match alg {
        AlgorithmId::NearestEven | AlgorithmId::Disk if !a.is_even() => Err(format!("odd digit {a}")),
        AlgorithmId::NearestOdd if a.is_even() => Err(format!("even digit {a}")),
        _ => Ok(()),
    }
}

proptest! {
    #[test]
    fn choice_contract(x in -4.0f64..4.0, y in -4.0f64..4.0, k in 0usize..6) {
        let z = c(x, y);
        prop_assume!(z.norm() > 0.0);
        prop_assert!(contract_holds(AlgorithmId::ALL[k], z).is_ok(), "{:?}", contract_holds(AlgorithmId::ALL[k], z));
    }

    #[test]
    fn tiling_interiors_receive_their_digit(re in -6i64..6, im in -6i64..6, x in -1.0f64..1.0, y in -1.0f64..1.0, k in 0usize..4) {
        let alg = [AlgorithmId::NearestInteger, AlgorithmId::NearestEven, AlgorithmId::NearestOdd, AlgorithmId::ShiftedHurwitz][k];
        let a = complex_cf::arith::GaussianInt::new(re, im);
        prop_assume!(alg.admissible(a));
        let u = c(x, y);
        prop_assume!(spec(alg).k.classify(u, 1e-9) == Verdict::In);
        prop_assert_eq!(choose(alg, a.to_c64() + u), a);
    }
}
