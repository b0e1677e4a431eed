use complex_cf::algorithms::{spec, AlgorithmId};
use complex_cf::arith::{
    convergents, eval_cf, mobius_apply, parity, DigitSeq, ExtendedComplex, GaussianInt, MobiusMap,
    ProjRational,
};
use complex_cf::dynamics::gauss_step;
use complex_cf::natural_ext::{next_ext, ExtPoint};
use complex_cf::real_ab::{gauss_ab, ABParams};
use complex_cf::regions::{ae_equal, Membership, Rect, Region, Verdict};
use complex_cf::C64;
use proptest::prelude::*;

fn gaussian(r: i64) -> impl Strategy<Value = GaussianInt> {
    (-r..=r, -r..=r).prop_map(|(re, im)| GaussianInt::new(re, im))
}

fn extended() -> impl Strategy<Value = ExtendedComplex> {
    prop_oneof![
        1 => Just(ExtendedComplex::Infinity),
        1 => Just(ExtendedComplex::finite(0.0, 0.0)),
        8 => (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(x, y)| ExtendedComplex::finite(x, y)),
    ]
}

fn algorithm() -> impl Strategy<Value = AlgorithmId> {
    (0usize..6).prop_map(|k| AlgorithmId::ALL[k])
}

/// A fundamental set or partition piece of one of the algorithms.
fn library_region() -> impl Strategy<Value = Region> {
    (0usize..6, 0usize..16).prop_map(|(k, j)| {
        let s = spec(AlgorithmId::ALL[k]);
        s.partition.get(j).cloned().unwrap_or_else(|| s.k.clone())
    })
}

/// Translations by small digits, `S`, and their products.
fn mobius() -> impl Strategy<Value = MobiusMap> {
    prop::collection::vec(prop_oneof![Just(None), gaussian(3).prop_map(Some)], 1..4).prop_map(|ops| {
        ops.into_iter().fold(MobiusMap::IDENTITY, |m, op| {
            let g = match op {
                None => MobiusMap::S,
                Some(a) => MobiusMap::translate(a),
            };
            g.compose(&m)
        })
    })
}

fn same(a: &ProjRational, b: &ProjRational) -> bool {
    match (a, b) {
        (ProjRational::Infinity, ProjRational::Infinity) => true,
        (ProjRational::Finite(x), ProjRational::Finite(y)) => x.sub(y).is_zero(),
        _ => false,
    }
}

proptest! {
    #[test]
    fn s_is_an_involution(z in extended()) {
        let ss = MobiusMap::S.compose(&MobiusMap::S);
        prop_assert_eq!(mobius_apply(&ss, z), z);
        let back = mobius_apply(&MobiusMap::S, mobius_apply(&MobiusMap::S, z));
        match (z, back) {
            (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => {
                prop_assert!((a - b).norm() <= 1e-15 * a.norm().max(1e-300), "{a} {b}");
            }
            _ => prop_assert_eq!(back, z),
        }
    }

    #[test]
    fn parity_is_additive(a in gaussian(1000), b in gaussian(1000)) {
        prop_assert_eq!(parity(a + b), parity(a) + parity(b));
    }

    #[test]
    fn convergents_match_the_fraction(digits in prop::collection::vec(gaussian(12), 1..10)) {
        let seq = DigitSeq::from_slice(&digits).unwrap();
        for (k, c) in convergents(&seq).iter().enumerate() {
            let v = c.value.clone().map_or(ProjRational::Infinity, ProjRational::Finite);
            prop_assert!(same(&v, &eval_cf(&seq.prefix(k + 1))), "digits {seq} prefix {}", k + 1);
        }
    }

    #[test]
    fn membership_commutes_with_transforms(
        r in library_region(),
        m in mobius(),
        x in -1.5f64..1.5,
        y in -1.5f64..1.5,
    ) {
        let z = C64::new(x, y);
        let image = r.transform(&m);
        let before = r.classify(z, 1e-9);
        let ExtendedComplex::Finite(w) = mobius_apply(&m, ExtendedComplex::Finite(z)) else {
            return Ok(());
        };
        let after = image.classify(w, 1e-9);
        if before != Verdict::NearBoundary && after != Verdict::NearBoundary {
            prop_assert_eq!(before, after, "z = {}, w = {}", z, w);
        }
    }

    #[test]
    fn gauss_map_sends_k_into_k(alg in algorithm(), x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let z = C64::new(x, y);
        let k = &spec(alg).k;
        prop_assume!(z.norm() > 0.0 && k.classify(z, 0.0) == Verdict::In);
        let s = gauss_step(alg, z).unwrap();
        prop_assert_ne!(k.classify(s.next, 1e-9), Verdict::Out);
    }

    #[test]
    fn extension_projects_to_the_gauss_map(
        alg in algorithm(),
        x in -1.0f64..1.0,
        y in -1.0f64..1.0,
        w in extended(),
    ) {
        let z = C64::new(x, y);
        prop_assume!(z.norm() > 0.0 && spec(alg).k.classify(z, 0.0) == Verdict::In);
        prop_assume!(w != ExtendedComplex::Finite(z));
        let q = next_ext(alg, ExtPoint::new(z, w)).unwrap();
        prop_assert!((q.z - gauss_step(alg, z).unwrap().next).norm() < 1e-12);
    }

    #[test]
    fn real_gauss_map_stays_in_the_interval(t in 0.0f64..1.0) {
        let p = ABParams::example();
        let x = p.a + (p.b - p.a) * t;
        prop_assume!(x != 0.0 && x < p.b);
        let g = gauss_ab(x, &p).unwrap();
        prop_assert!(g >= p.a && g < p.b, "{x} -> {g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transform_round_trip(r in library_region(), m in mobius(), seed in 0u64..1000) {
        let back = r.transform(&m).transform(&m.inverse());
        let rep = ae_equal(&back, &r, Rect::square(1.2), 5_000, 1e-9, seed);
        prop_assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn complement_is_an_involution(r in library_region(), seed in 0u64..1000) {
        let twice = r.complement().complement();
        let rep = ae_equal(&twice, &r, Rect::square(1.2), 5_000, 1e-9, seed);
        prop_assert!(rep.passed(), "{rep}");
    }
}
