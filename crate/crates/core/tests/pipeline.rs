use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use edwardsg2::family::{self, universality_report, CurveParams, SearchStrategy};
use edwardsg2::field::PrimeField;
use edwardsg2::model::twist::{self, TwistParams};
use edwardsg2::model::{self, AddStrategy};
use edwardsg2::{json, kummer, proj, Error};

const PRIMES: [u64; 6] = [101, 103, 257, 499, 1009, 2003];

fn params_for(p: u64, seed: u64) -> CurveParams {
    let k = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let [a, b, c] = [0; 3].map(|_| k.random(&mut rng));
        if let Ok(params) = family::params_from_abc(a, b, c) {
            if kummer::make_d1(&params).is_ok() {
                return params;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn law_agrees_with_divisor_oracle(pi in 0..PRIMES.len(), seed in any::<u64>()) {
        let p = params_for(PRIMES[pi], seed);
        let curve = p.jacobian_curve();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
        for _ in 0..10 {
            let d = curve.random_class(&mut rng);
            let e = curve.random_class(&mut rng);
            let (pd, pe) = (model::embed(&p, &d).unwrap(), model::embed(&p, &e).unwrap());
            prop_assert!(model::is_member(&p, &pd));
            let want = model::embed(&p, &curve.add(&d, &e).unwrap()).unwrap();
            prop_assert_eq!(model::add(&p, &pd, &pe, AddStrategy::FirstNonzeroColumn).unwrap(), want);
            let diff = model::embed(&p, &curve.sub(&d, &e).unwrap()).unwrap();
            prop_assert_eq!(model::sub(&p, &pd, &pe, AddStrategy::FirstNonzeroColumn).unwrap(), diff);
        }
    }

    #[test]
    fn scalar_mul_matches_oracle(n in -40i64..40, seed in any::<u64>()) {
        let p = params_for(1009, seed);
        let curve = p.jacobian_curve();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = curve.random_class(&mut rng);
        let want = model::embed(&p, &curve.scalar_mul(n, &d).unwrap()).unwrap();
        let pd = model::embed(&p, &d).unwrap();
        prop_assert_eq!(model::scalar_mul(&p, n, &pd, AddStrategy::FirstNonzeroColumn).unwrap(), want);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let p = params_for(257, seed);
        let pj = json::params_to_json(&p);
        prop_assert_eq!(json::params_from_json(&json::from_str(&json::to_string(&pj)).unwrap()).unwrap(), p.clone());
        let curve = p.jacobian_curve();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = curve.random_class(&mut rng);
        let dj = json::to_string(&json::divisor_to_json(curve, &d));
        prop_assert_eq!(json::divisor_from_json(curve, &json::from_str(&dj).unwrap()).unwrap(), d);
    }
}

#[test]
fn jacobian_order_matches_enumeration() {
    for (p, seed) in [(101, 1), (103, 2), (107, 3)] {
        let params = params_for(p, seed);
        let all = kummer::enumerate_jacobian(&params).unwrap();
        assert_eq!(all.len() as u64, params.jacobian_curve().jacobian_order());
        // the order is divisible by the 4-torsion point D1 and the full 2-torsion
        assert_eq!(all.len() % 8, 0);
    }
}

#[test]
fn universal_params_from_search_work_end_to_end() {
    let k = PrimeField::new(1009).unwrap();
    let p = family::find_universal_params(k, SearchStrategy::Random, 4).expect("universal params");
    assert!(universality_report(&p).universal());
    let curve = p.jacobian_curve();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let d = curve.random_class(&mut rng);
        let e = curve.random_class(&mut rng);
        let want = model::embed(&p, &curve.add(&d, &e).unwrap()).unwrap();
        let got = model::add(
            &p,
            &model::embed(&p, &d).unwrap(),
            &model::embed(&p, &e).unwrap(),
            AddStrategy::Universal,
        );
        assert_eq!(got.unwrap(), want);
    }
}

#[test]
fn universal_strategy_needs_frak_and_conditions() {
    let p = params_for(1009, 8);
    let id = model::identity_point(&p);
    assert_eq!(
        model::add(&p, &id, &id, AddStrategy::Universal),
        Err(Error::MissingFrakParametrization)
    );
    let k = PrimeField::new(1201).unwrap();
    // c = 4 is a square, so the conditions fail
    let q = family::params_from_frak(k.elem(6), k.elem(7), k.elem(4)).unwrap();
    let id = model::identity_point(&q);
    assert_eq!(
        model::add(&q, &id, &id, AddStrategy::Universal),
        Err(Error::UniversalLawUnavailable)
    );
}

#[test]
fn lift_recovers_embedded_points() {
    let p = params_for(1009, 5);
    let curve = p.jacobian_curve();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let d = curve.random_class(&mut rng);
        let pt = model::embed(&p, &d).unwrap();
        let (a, b) = model::lift_from_kummer(&p, pt.u()).unwrap();
        assert!(a == pt || b == pt);
        assert_eq!(b, model::neg(&a));
    }
}

#[test]
fn twisted_forms_vanish_on_scaled_members() {
    let p = params_for(257, 6);
    let k = p.field;
    let n = k.nonresidue();
    let tw = TwistParams::new(&p, [n, n, n]).unwrap();
    assert_eq!(
        TwistParams::new(&p, [k.one(), n, n]),
        Err(Error::InvalidTwist(1))
    );
    let ext = edwardsg2::field::QuadExtField::standard(k);
    let (su, sy) = twist::scaling(&ext, &tw);
    let curve = p.jacobian_curve();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..30 {
        let pt = model::embed(&p, &curve.random_class(&mut rng)).unwrap();
        let u: [_; 4] = std::array::from_fn(|i| ext.embed(pt.u()[i]) * su[i].inv().unwrap());
        let y: [_; 4] = std::array::from_fn(|i| ext.embed(pt.y()[i]) * sy[i].inv().unwrap());
        assert!(twist::twist_residuals_ext(&p, &tw, &ext, &u, &y)
            .iter()
            .all(|r| r.is_zero()));
    }
}

#[test]
fn model_and_kummer_coordinates_agree() {
    let p = params_for(499, 7);
    let curve = p.jacobian_curve();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let d = curve.random_class(&mut rng);
        let k = kummer::kummer_from_mumford(&p, &d);
        assert!(kummer::kummer_quartic_eval(&p, &k).is_zero());
        let pt = model::embed(&p, &d).unwrap();
        assert!(proj::proj_eq(&kummer::to_l(&p, &k), pt.u()));
    }
}
