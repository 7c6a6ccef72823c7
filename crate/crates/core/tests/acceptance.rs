//! Acceptance criteria, one report line each. Runs without the libtest harness so the report is always shown.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use mckay_e8::classify::{classify, e8_groups};
use mckay_e8::cusps::cusps_of_gamma0;
use mckay_e8::diagram::{build_graph, e8_vertex_data, VertexData};
use mckay_e8::exact::{lower_t, rat, rat_int, s, t, ProjectiveMatrix};
use mckay_e8::groupsys::{
    al_coset_representative, finite_quotient, normalizer_quotient, orbit, permutation_sign, GroupDescriptor,
    FiniteQuotient,
};
use mckay_e8::lattice::{hyperdistance, name_of, reduce, reverse_name, LatticeName};
use mckay_e8::super_analogue::{
    eta_quotient_series, frame_shape, frame_shape_catalog, frame_shape_invariants, invariant_under,
    numeric_invariance_check, super_group,
};
use mckay_e8::tree::hypercircle;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const CLASSIFY_BUDGET: Duration = Duration::from_secs(10);
const SOLVER_BUDGET: Duration = Duration::from_secs(1);
const PROPERTY_CASES: u32 = 1000;
const PROPERTY_SEED: [u8; 32] = *b"acceptance-suite-fixed-seed-0001";
const HC_MAX_N: u64 = 60;
const TRANSITIVITY_MAX_M: u64 = 5;
const TRANSITIVITY_MAX_N: u64 = 16;
const CUSP_MAX_N: u64 = 30;
const SERIES_ORDER: usize = 50;
const TAU: (f64, f64) = (0.1, 0.8);
const TOL: f64 = 1e-6;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gd(s: &str) -> GroupDescriptor {
    s.parse().unwrap()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn column<T>(data: &[VertexData], f: impl Fn(&VertexData) -> T) -> Vec<T> {
    data.iter().map(f).collect()
}

fn c1_classification() -> Outcome {
    let start = Instant::now();
    let got = classify().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let want: BTreeSet<GroupDescriptor> = e8_groups().into_iter().collect();
    ensure(got == want, || format!("got {:?}", got.iter().map(|g| g.to_string()).collect::<Vec<_>>()))?;
    ensure(elapsed < CLASSIFY_BUDGET, || format!("took {elapsed:?}"))
}

fn c2_table1(data: &[VertexData]) -> Outcome {
    let a = column(data, |v| v.a_gamma);
    let lev0 = column(data, |v| v.normalized_level);
    ensure(a == [1, 1, 1, 1, 1, 1, 3, 2, 1], || format!("a = {a:?}"))?;
    ensure(lev0 == [1, 2, 3, 4, 5, 6, 3, 4, 2], || format!("lev0 = {lev0:?}"))?;
    ensure(data.iter().all(|v| v.normalized_level * v.a_gamma == v.level), || "lev0·a ≠ lev".into())
}

fn c3_table2(data: &[VertexData]) -> Outcome {
    let g0 = column(data, |v| v.gamma0.to_string());
    let val = column(data, |v| v.valency);
    ensure(g0 == names(&["1", "2", "3", "4", "5", "6", "3|3", "4|2", "2"]), || format!("Γ₀ = {g0:?}"))?;
    ensure(val == [1, 2, 2, 2, 2, 3, 1, 2, 1], || format!("val = {val:?}"))
}

fn c4_graph(data: &[VertexData]) -> Outcome {
    let start = Instant::now();
    let g = build_graph(data).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let pair = |a: &str, b: &str| if a <= b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
    let want: BTreeSet<(String, String)> = [
        ("1", "2+"),
        ("2+", "3+"),
        ("3+", "4+"),
        ("4+", "5+"),
        ("5+", "6+"),
        ("6+", "3|3"),
        ("6+", "4|2+"),
        ("4|2+", "2"),
    ]
    .iter()
    .map(|(a, b)| pair(a, b))
    .collect();
    ensure(g.labeled_edges() == want, || format!("edges {:?}", g.labeled_edges()))?;
    ensure(elapsed < SOLVER_BUDGET, || format!("solver took {elapsed:?}"))
}

fn c5_super_labels() -> Outcome {
    let groups = e8_groups();
    let sup: Vec<String> = groups.iter().map(|g| super_group(g).map(|x| x.to_string())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(sup == names(&["2", "4+", "6+6", "8+", "10+10", "12+", "6|3", "8|2+", "4"]), || format!("super {sup:?}"))?;
    let shapes: Vec<String> = groups.iter().map(|g| frame_shape(g).map(|f| f.to_string())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let want = names(&[
        "1^24",
        "2^24 / 1^24",
        "3^12 / 1^12",
        "4^8 / 1^8",
        "5^6 / 1^6",
        "2^6 6^6 / 1^6 3^6",
        "3^8",
        "4^12 / 2^12",
        "1^8 2^8",
    ]);
    ensure(shapes == want, || format!("shapes {shapes:?}"))
}

fn c6_frame_invariants(data: &[VertexData]) -> Outcome {
    let inv: Vec<(i64, u64, u64)> = frame_shape_catalog().iter().map(frame_shape_invariants).collect();
    ensure(inv.iter().all(|x| x.0 == 24), || format!("degrees {inv:?}"))?;
    let max_parts: Vec<u64> = inv.iter().map(|x| x.1).collect();
    ensure(max_parts == column(data, |v| v.normalized_level), || format!("max parts {max_parts:?}"))?;
    let pv: Vec<u64> = inv.iter().map(|x| x.2).collect();
    ensure(pv == column(data, |v| v.valency), || format!("predicted valency {pv:?}"))
}

fn c7_properties() -> Outcome {
    let runner = || {
        let config = Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() };
        TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &PROPERTY_SEED))
    };
    let matrix = || {
        (-30i64..=30, -30i64..=30, -30i64..=30, -30i64..=30)
            .prop_filter("det > 0", |&(a, b, c, d)| a * d - b * c > 0)
            .prop_map(|(a, b, c, d)| ProjectiveMatrix::new(a, b, c, d).unwrap())
    };
    let lattice = || {
        (1i64..=40, 1i64..=40, 1i64..=40)
            .prop_flat_map(|(p, q, den)| (Just(p), Just(q), Just(den), 0..den))
            .prop_map(|(p, q, den, num)| LatticeName::new(rat(p, q), rat(num, den)).unwrap())
    };
    let modular = || {
        prop::collection::vec(0u8..3, 0..12).prop_map(|w| {
            let gens = [s(), t(), t().inv()];
            w.iter().fold(ProjectiveMatrix::new(1, 0, 0, 1).unwrap(), |acc, &k| &acc * &gens[k as usize])
        })
    };
    let err = |name: &str, e: String| format!("{name}: {e}");
    runner()
        .run(&matrix(), |a| {
            prop_assert_eq!(a.pdet(), a.inv().pdet());
            Ok(())
        })
        .map_err(|e| err("pdet inverse", e.to_string()))?;
    runner()
        .run(&(lattice(), lattice()), |(l, m)| {
            prop_assert_eq!(hyperdistance(&l, &m), hyperdistance(&m, &l));
            Ok(())
        })
        .map_err(|e| err("δ symmetry", e.to_string()))?;
    runner()
        .run(&(lattice(), lattice(), matrix()), |(l, m, g)| {
            prop_assert_eq!(hyperdistance(&l.act(&g), &m.act(&g)), hyperdistance(&l, &m));
            Ok(())
        })
        .map_err(|e| err("δ action invariance", e.to_string()))?;
    runner()
        .run(&lattice(), |l| {
            prop_assert_eq!(name_of(&reverse_name(&l)), l);
            Ok(())
        })
        .map_err(|e| err("reverse round trip", e.to_string()))?;
    runner()
        .run(&(matrix(), modular()), |(a, g)| {
            prop_assert_eq!(reduce(&(&g * &a)), reduce(&a));
            Ok(())
        })
        .map_err(|e| err("reduce coset invariance", e.to_string()))
}

/// ∏ (p+1) p^(a-1) by trial division, independent of the library's factorization.
fn index_formula(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out *= (p + 1) * p.pow(k - 1);
        }
        p += 1;
    }
    out
}

fn c8_hypercircles() -> Outcome {
    for n in 1..=HC_MAX_N {
        let got = hypercircle(&LatticeName::l1(), n).members.len() as u64;
        ensure(got == index_formula(n), || format!("|HC_{n}(1)| = {got}"))?;
    }
    let to_set = |v: &[String]| v.iter().map(|s| s.parse::<LatticeName>().unwrap()).collect::<BTreeSet<_>>();
    let mut hc9 = names(&["9,0", "1,1/3", "1,2/3"]);
    hc9.extend((0..9).map(|k| format!("1/9,{k}/9")));
    let got9: BTreeSet<LatticeName> = hypercircle(&LatticeName::l1(), 9).members.into_iter().collect();
    ensure(got9 == to_set(&hc9), || "HC_9(1) differs".into())?;
    let got33: BTreeSet<LatticeName> = hypercircle(&LatticeName::of_int(3), 3).members.into_iter().collect();
    ensure(got33 == to_set(&names(&["1", "9", "1,1/3", "1,2/3"])), || "HC_3(3) differs".into())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn c9_transitivity() -> Outcome {
    for m in 1..=TRANSITIVITY_MAX_M {
        for n in 1..=TRANSITIVITY_MAX_N {
            if gcd(m, n) != 1 {
                continue;
            }
            let hc = hypercircle(&LatticeName::l1(), n).members;
            let orb = orbit(&[LatticeName::of_int(n)], &[t(), lower_t(m as i64)], 10 * hc.len()).map_err(|e| e.to_string())?;
            ensure(orb == hc, || format!("M={m}, N={n}: orbit of size {} in {}", orb.len(), hc.len()))?;
        }
    }
    Ok(())
}

fn c10_cusps() -> Outcome {
    for n in 1..=CUSP_MAX_N {
        let total = cusps_of_gamma0(n).total_width();
        ensure(total == rat_int(index_formula(n) as i64), || format!("N={n}: Σ widths = {total}"))?;
    }
    let sorted = |n: u64| {
        let mut w = cusps_of_gamma0(n).widths();
        w.sort();
        w
    };
    ensure(sorted(9) == [1, 1, 1, 9].map(rat_int), || format!("Γ₀(9): {:?}", sorted(9)))?;
    ensure(sorted(4) == [1, 1, 4].map(rat_int), || format!("Γ₀(4): {:?}", sorted(4)))
}

fn order_profile(q: &FiniteQuotient) -> Vec<usize> {
    let mut v: Vec<usize> = (0..q.order()).map(|i| q.element_order(i)).collect();
    v.sort();
    v
}

fn c11_quotients() -> Outcome {
    let set = hypercircle(&LatticeName::of_int(3), 3).members;
    let q = finite_quotient(&gd("3||3"), &gd("9"), &set).map_err(|e| e.to_string())?;
    let img = q.action_image();
    ensure(q.order() == 12, || format!("|G_3/G_(1,9)| = {}", q.order()))?;
    ensure(img.len() == 12 && img.iter().all(|p| permutation_sign(p) == 1), || "image is not Alt4".into())?;

    let mut set = hypercircle(&LatticeName::of_int(2), 2).members;
    set.extend(hypercircle(&LatticeName::of_int(4), 2).members);
    let q = finite_quotient(&gd("4||2+"), &gd("8"), &set).map_err(|e| e.to_string())?;
    // D8: one identity, five involutions, two elements of order 4.
    let want_d8 = [1, 2, 2, 2, 2, 2, 4, 4];
    ensure(order_profile(&q) == want_d8, || format!("G_{{2,4}}/G_(1,8) orders {:?}", order_profile(&q)))?;

    let q = normalizer_quotient(16).map_err(|e| e.to_string())?;
    ensure(q.order() == 24, || format!("|G_4/G_(1,16)| = {}", q.order()))?;
    // (Z/2 × Z/2) ⋊ Sym3 ≅ Sym4: 9 involutions, 8 of order 3, 6 of order 4.
    let p = order_profile(&q);
    let count = |k| p.iter().filter(|&&o| o == k).count();
    ensure((count(2), count(3), count(4)) == (9, 8, 6), || format!("G_4/G_(1,16) orders {p:?}"))
}

fn c12_eta() -> Outcome {
    // q^-1 ∏_{m odd} (1 - q^m)^24 by repeated binomial convolution.
    let mut oracle = vec![BigInt::from(0); SERIES_ORDER];
    oracle[0] = BigInt::one();
    for m in (1..SERIES_ORDER).step_by(2) {
        for _ in 0..24 {
            for i in (m..SERIES_ORDER).rev() {
                let x = oracle[i - m].clone();
                oracle[i] -= x;
            }
        }
    }
    let base = eta_quotient_series(&"1^24".parse().unwrap(), SERIES_ORDER).map_err(|e| e.to_string())?;
    ensure(base.valuation == -1 && base.coeffs == oracle, || format!("1^24 series {base}"))?;
    for fs in frame_shape_catalog() {
        let s = eta_quotient_series(&fs, SERIES_ORDER).map_err(|e| e.to_string())?;
        ensure(s.valuation == -1 && s.coeffs.len() == SERIES_ORDER && s.coeffs[0].is_one(), || format!("{fs}: {s}"))?;
    }
    let tau = Complex64::new(TAU.0, TAU.1);
    for (g, fs) in e8_groups().iter().zip(frame_shape_catalog()) {
        let sg = super_group(g).map_err(|e| e.to_string())?;
        let ok = numeric_invariance_check(&fs, &sg, tau, TOL).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{fs} not invariant under {sg}"))?;
    }
    let fs = "1^24".parse().unwrap();
    let w2 = al_coset_representative(2, 2).map_err(|e| e.to_string())?;
    for (name, x) in [("S", s()), ("W_2", w2)] {
        let ok = invariant_under(&fs, &x, tau, TOL).map_err(|e| e.to_string())?;
        ensure(!ok, || format!("negative control {name} passed"))?;
    }
    Ok(())
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    match outcome {
        Ok(()) => {
            println!("PASS {label}");
            true
        }
        Err(e) => {
            println!("FAIL {label}: {e}");
            false
        }
    }
}

fn main() {
    let mut results = Vec::new();
    results.push(run("1 classification returns exactly the nine groups", c1_classification));
    let data = e8_vertex_data().expect("vertex data");
    results.push(run("2 a and normalized level table", || c2_table1(&data)));
    results.push(run("3 Γ₀ and valency table", || c3_table2(&data)));
    results.push(run("4 unique graph is the affine E8 diagram", || c4_graph(&data)));
    results.push(run("5 super groups and Frame shapes", c5_super_labels));
    results.push(run("6 Frame shape invariants", || c6_frame_invariants(&data)));
    results.push(run("7 property suite", c7_properties));
    results.push(run("8 hypercircle sizes and member lists", c8_hypercircles));
    results.push(run("9 transitivity on hypercircles", c9_transitivity));
    results.push(run("10 cusp widths", c10_cusps));
    results.push(run("11 quotient structure", c11_quotients));
    results.push(run("12 eta quotients", c12_eta));
    let passed = results.iter().filter(|&&b| b).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
