use mckay_e8::exact::{primitive_rep, rat, s, t, IntegralMatrix, ProjectiveMatrix, Rational};
use mckay_e8::lattice::{hyperdistance, name_of, reduce, reverse_name, LatticeName};
use mckay_e8::tree::hypercircle;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const CASES: u32 = 1000;
const SEED: [u8; 32] = *b"projective-lattices-fixed-seed!!";

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>)
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).unwrap();
}

fn matrix() -> impl Strategy<Value = ProjectiveMatrix> {
    (-30i64..=30, -30i64..=30, -30i64..=30, -30i64..=30)
        .prop_filter("positive determinant", |&(a, b, c, d)| a * d - b * c > 0)
        .prop_map(|(a, b, c, d)| ProjectiveMatrix::new(a, b, c, d).unwrap())
}

fn lattice() -> impl Strategy<Value = LatticeName> {
    (1i64..=40, 1i64..=40, 1i64..=40)
        .prop_flat_map(|(p, q, den)| (Just(p), Just(q), Just(den), 0..den))
        .prop_map(|(p, q, den, num)| LatticeName::new(rat(p, q), rat(num, den)).unwrap())
}

/// Words in S, T, T^-1.
fn modular() -> impl Strategy<Value = ProjectiveMatrix> {
    prop::collection::vec(0u8..3, 0..12).prop_map(|w| {
        let (s, t, ti) = (s(), t(), t().inv());
        w.iter().fold(ProjectiveMatrix::new(1, 0, 0, 1).unwrap(), |acc, &k| {
            &acc * [&s, &t, &ti][k as usize]
        })
    })
}

#[test]
fn pdet_of_inverse() {
    check(matrix(), |a| {
        prop_assert_eq!(a.pdet(), a.inv().pdet());
        Ok(())
    });
}

#[test]
fn pdet_invariant_under_modular_group() {
    check((matrix(), modular()), |(a, g)| {
        prop_assert_eq!(g.pdet(), BigInt::one());
        prop_assert_eq!((&g * &a).pdet(), a.pdet());
        prop_assert_eq!((&a * &g).pdet(), a.pdet());
        Ok(())
    });
}

#[test]
fn primitive_rep_scale_invariant() {
    check((matrix(), 1i64..50, 1i64..50), |(a, p, q)| {
        let lam = rat(p, q);
        let r = a.rep().to_rationals();
        let scaled: [Rational; 4] = r.clone().map(|x| x * &lam);
        let (x, y) = (primitive_rep(&r).unwrap(), primitive_rep(&scaled).unwrap());
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.content(), BigInt::one());
        Ok(())
    });
}

#[test]
fn hyperdistance_symmetric() {
    check((lattice(), lattice()), |(l, m)| {
        prop_assert_eq!(hyperdistance(&l, &m), hyperdistance(&m, &l));
        Ok(())
    });
}

#[test]
fn hyperdistance_action_invariant() {
    check((lattice(), lattice(), matrix()), |(l, m, g)| {
        prop_assert_eq!(hyperdistance(&l.act(&g), &m.act(&g)), hyperdistance(&l, &m));
        Ok(())
    });
}

#[test]
fn hyperdistance_one_iff_equal() {
    check((lattice(), lattice()), |(l, m)| {
        prop_assert_eq!(hyperdistance(&l, &m) == BigInt::one(), l == m);
        Ok(())
    });
}

#[test]
fn reverse_name_round_trip() {
    check(lattice(), |l| {
        let r = reverse_name(&l);
        prop_assert_eq!(name_of(&r), l.clone());
        prop_assert_eq!(reduce(&r.matrix()), l);
        Ok(())
    });
}

#[test]
fn reduce_coset_invariant() {
    check((matrix(), modular()), |(a, g)| {
        let l = reduce(&a);
        prop_assert_eq!(reduce(&(&g * &a)), l.clone());
        prop_assert_eq!(reduce(&l.matrix()), l);
        Ok(())
    });
}

#[test]
fn lattice_from_matrix_is_consistent() {
    check(matrix(), |a| {
        let m: IntegralMatrix = a.rep().clone();
        let l = reduce(&a);
        prop_assert_eq!(hyperdistance(&LatticeName::l1(), &l), m.det());
        Ok(())
    });
}

#[test]
fn tree_neighbours() {
    let primes = prop::sample::select(vec![2u64, 3, 5, 7]);
    check((lattice(), primes), |(l, p)| {
        let hc = hypercircle(&l, p).members;
        prop_assert_eq!(hc.len() as u64, p + 1);
        for x in &hc {
            prop_assert_eq!(hyperdistance(&l, x), BigInt::from(p));
        }
        Ok(())
    });
}

#[test]
fn hyperdistance_divides_along_paths() {
    check((lattice(), matrix()), |(l, g)| {
        // Triangle inequality in every p-adic tree.
        let l2 = l.act(&g);
        let l3 = l2.act(&g);
        let (a, b, c) = (hyperdistance(&l, &l2), hyperdistance(&l2, &l3), hyperdistance(&l, &l3));
        prop_assert_eq!((&a * &b) % &c, BigInt::from(0));
        Ok(())
    });
}
