use artin_core::determinantal::{beta_det, is_repairable, repair_determinantal};
use artin_core::lifting::{smith_normal_form, solve_linear_approx};
use artin_core::monomial::MonomialIdeal;
use artin_core::oracle::{oracle_beta, OracleConfig, SystemKind};
use artin_core::verify::{
    random_det_point, random_low_val_matrix, random_monomial_ideal, random_poly,
};
use artin_core::{Elem, MatrixR, RingCtx};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring_strategy() -> impl Strategy<Value = RingCtx> {
    prop_oneof![
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..12)
            .prop_map(|(p, m)| RingCtx::tseries(p, m).unwrap()),
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1u32..12)
            .prop_map(|(p, m)| RingCtx::padic(p, m).unwrap()),
    ]
}

fn elem(ring: &RingCtx, code: u64) -> Elem {
    ring.elem(code % ring.size()).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(ring in ring_strategy(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (elem(&ring, a), elem(&ring, b), elem(&ring, c));
        prop_assert_eq!(ring.add(x, y), ring.add(y, x));
        prop_assert_eq!(ring.mul(x, y), ring.mul(y, x));
        prop_assert_eq!(ring.mul(x, ring.add(y, z)), ring.add(ring.mul(x, y), ring.mul(x, z)));
        prop_assert_eq!(ring.mul(ring.mul(x, y), z), ring.mul(x, ring.mul(y, z)));
        prop_assert_eq!(ring.add(x, ring.neg(x)), ring.zero());
        let v = ring.val(ring.mul(x, y));
        let expect = (ring.val(x).value() + ring.val(y).value()).min(ring.prec());
        prop_assert_eq!(v.value(), expect);
        if ring.is_unit(x) {
            prop_assert_eq!(ring.mul(x, ring.invert_unit(x).unwrap()), ring.one());
        }
    }

    #[test]
    fn literals_round_trip(ring in ring_strategy(), a in any::<u64>()) {
        let x = elem(&ring, a);
        prop_assert_eq!(ring.parse_elem(&ring.format(x)).unwrap(), x);
        let text = ring.to_string();
        prop_assert_eq!(text.parse::<RingCtx>().unwrap(), ring);
    }

    #[test]
    fn product_rule_and_evaluation(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let ring = RingCtx::tseries(p, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&ring, &mut rng, 3, 4, 3);
        let g = random_poly(&ring, &mut rng, 3, 4, 3);
        let fg = f.mul(&ring, &g);
        for j in 0..3 {
            let lhs = fg.derivative(&ring, j);
            let rhs = f.derivative(&ring, j).mul(&ring, &g).add(&ring, &f.mul(&ring, &g.derivative(&ring, j)));
            prop_assert_eq!(lhs, rhs);
        }
        let pt: Vec<Elem> = (0..3).map(|_| ring.random(&mut rng)).collect();
        prop_assert_eq!(fg.eval(&ring, &pt), ring.mul(f.eval(&ring, &pt), g.eval(&ring, &pt)));
    }

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), n in 1usize..4) {
        let ring = RingCtx::padic(3, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_low_val_matrix(&ring, &mut rng, n, n, 3);
        let b = random_low_val_matrix(&ring, &mut rng, n, n, 3);
        let ab = a.mul(&ring, &b).unwrap();
        prop_assert_eq!(ab.det(&ring).unwrap(), ring.mul(a.det(&ring).unwrap(), b.det(&ring).unwrap()));
        prop_assert_eq!(a.transpose().det(&ring).unwrap(), a.det(&ring).unwrap());
    }

    #[test]
    fn smith_form_factors(seed in any::<u64>(), k in 1usize..4, l in 1usize..4) {
        let ring = RingCtx::tseries(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_low_val_matrix(&ring, &mut rng, k, l, 4);
        let snf = smith_normal_form(&ring, &a);
        let uav = snf.u.mul(&ring, &a).unwrap().mul(&ring, &snf.v).unwrap();
        prop_assert_eq!(&uav, &snf.d);
        prop_assert!(ring.is_unit(snf.u.det(&ring).unwrap()));
        prop_assert!(ring.is_unit(snf.v.det(&ring).unwrap()));
        let vals = snf.divisor_vals();
        prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn linear_repair_postconditions(seed in any::<u64>(), k in 1usize..4, nv in 1usize..4, n in 1u32..4) {
        let ring = RingCtx::tseries(3, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_low_val_matrix(&ring, &mut rng, k, nv, 2);
        let c = smith_normal_form(&ring, &a).max_finite_val();
        prop_assume!(n + c <= ring.prec());
        let x0: Vec<Elem> = (0..nv).map(|_| ring.random(&mut rng)).collect();
        let d = a.mul_vec(&ring, &x0).unwrap();
        let approx: Vec<Elem> = x0.iter().map(|x| ring.add(*x, ring.random_in_ideal(&mut rng, n + c))).collect();
        let sol = solve_linear_approx(&ring, &a, &d, &approx, n).unwrap();
        prop_assert_eq!(a.mul_vec(&ring, &sol.point).unwrap(), d);
        prop_assert!(sol.point.iter().zip(&approx).all(|(x, y)| ring.congruent(*x, *y, n)));
    }

    #[test]
    fn determinantal_repair(seed in any::<u64>(), r in 1usize..4, extra in 0usize..2, n in 1u32..4) {
        let ring = RingCtx::tseries(5, 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, l) = (r, r + extra);
        let a = random_det_point(&ring, &mut rng, k, l, r, beta_det(r as u32, n));
        prop_assert!(is_repairable(&ring, &a, r, n));
        let rep = repair_determinantal(&ring, &a, r, n).unwrap();
        prop_assert!(rep.verify(&ring, &a, r, n));
        let back = repair_determinantal(&ring, &a.transpose(), r, n).unwrap();
        prop_assert!(back.verify(&ring, &a.transpose(), r, n));
    }

    #[test]
    fn monomial_witness_is_sharp(seed in any::<u64>(), n in 1u32..4) {
        let ring = RingCtx::padic(3, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_monomial_ideal(&mut rng, 4, 4, 3);
        let w = ideal.witness(&ring, n).unwrap();
        prop_assert_eq!(ideal.eval_val(&ring, &w).unwrap().value(), ideal.beta().eval(n) - 1);
        prop_assert!(!ideal.is_repairable(&ring, &w, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_is_monotone_and_deterministic(seed in any::<u64>()) {
        let ring = RingCtx::tseries(2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_monomial_ideal(&mut rng, 3, 3, 2);
        let kind = SystemKind::Monomial(ideal.clone());
        let mut prev = 0;
        for n in 1..=2 {
            let base = oracle_beta(&OracleConfig { jobs: 1, ..OracleConfig::new(ring, n) }, &kind).unwrap();
            let wide = oracle_beta(&OracleConfig { jobs: 4, ..OracleConfig::new(ring, n) }, &kind).unwrap();
            let flat = oracle_beta(&OracleConfig { symmetry: false, ..OracleConfig::new(ring, n) }, &kind).unwrap();
            prop_assert_eq!(&base.beta, &wide.beta);
            prop_assert_eq!(&base.counterexample, &wide.counterexample);
            prop_assert_eq!(&base.beta, &flat.beta);
            let b = base.beta.unwrap();
            prop_assert!(b >= prev);
            prev = b;
        }
    }
}

#[test]
fn determinantal_oracle_matches_formula_on_small_shapes() {
    let ring = RingCtx::tseries(2, 4).unwrap();
    for (k, l, r) in [(1, 2, 1), (2, 2, 1), (1, 3, 1), (2, 2, 2), (2, 3, 2)] {
        for n in 1..=2 {
            let kind = SystemKind::Determinantal { k, l, r };
            let got = oracle_beta(&OracleConfig::new(ring, n), &kind)
                .unwrap()
                .beta;
            assert_eq!(got, Some(beta_det(r as u32, n)), "{k}x{l} r={r} n={n}");
        }
    }
}

#[test]
fn transposed_witness_is_also_sharp() {
    let ring = RingCtx::tseries(3, 8).unwrap();
    let w = MatrixR::parse(&ring, "[[t,0];[0,t];[0,0]]").unwrap();
    assert_eq!(w.minor_ideal_val(&ring, 2).unwrap().value(), 2);
    assert!(!is_repairable(&ring, &w, 2, 2));
    assert!(!is_repairable(&ring, &w.transpose(), 2, 2));
    let ideal = MonomialIdeal::parse_compact("(1,1)").unwrap();
    assert_eq!(ideal.beta().to_string(), "2n - 1");
}
