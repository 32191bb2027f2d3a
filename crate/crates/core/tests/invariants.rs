//! Property tests over the shipped fixtures. Every random stream is seeded
//! so runs are reproducible.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tailorder::fixtures::{parse_copula, parse_tdf, standard_fixtures, Fixture, STANDARD_FIXTURES};
use tailorder::{
    check_loc, check_tdo, check_too, default_directions, glue, h_volume, lower_ev_copula,
    simplex_restriction, spearman_tdf_limit, survival, tdc_from_simplex, Copula, GridConfig,
    Hyperbox, LimitSchedule, OrderStatus, TailDepFunction,
};

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x7a11_0d3e), failure_persistence: None, ..Config::default() }
}

fn fixtures() -> Vec<Fixture> {
    standard_fixtures().unwrap()
}

fn unit() -> impl Strategy<Value = f64> {
    (0u32..=1 << 20).prop_map(|k| k as f64 / (1u32 << 20) as f64)
}

#[test]
fn random_boxes_have_nonnegative_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for f in fixtures() {
        let mut worst: f64 = 0.0;
        for _ in 0..10_000 {
            let (a, b): (f64, f64) = (rng.random(), rng.random());
            let (c, d): (f64, f64) = (rng.random(), rng.random());
            let b = Hyperbox::from_coords(&[a.min(b), c.min(d)], &[a.max(b), c.max(d)]).unwrap();
            worst = worst.min(h_volume(&f.copula, &b).unwrap());
        }
        assert!(worst >= -1e-9, "{}: volume {worst}", f.name);
    }
}

#[test]
fn grounded_with_uniform_margins() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for f in fixtures() {
        for _ in 0..2_000 {
            let t: f64 = rng.random();
            let c = &f.copula;
            for (u, want) in [([t, 0.0], 0.0), ([0.0, t], 0.0), ([t, 1.0], t), ([1.0, t], t)] {
                let v = c.eval(&u).unwrap();
                assert!((v - want).abs() <= 1e-9, "{} at {u:?}: {v}", f.name);
            }
        }
    }
}

#[test]
fn three_dimensional_families_are_grounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let cs = [
        parse_copula("independence:3").unwrap(),
        parse_copula("comonotone:3").unwrap(),
        tailorder::archimedean(tailorder::clayton_generator(2.0).unwrap(), 3).unwrap(),
        tailorder::hierarchical(tailorder::HierarchicalDescriptor::new(
            tailorder::clayton_generator(1.0).unwrap(),
            tailorder::clayton_generator(2.0).unwrap(),
        ))
        .unwrap(),
    ];
    for c in &cs {
        for _ in 0..2_000 {
            let (a, b): (f64, f64) = (rng.random(), rng.random());
            assert!(c.eval(&[a, 0.0, b]).unwrap().abs() <= 1e-12);
            assert!((c.eval(&[1.0, a, 1.0]).unwrap() - a).abs() <= 1e-9);
            let lo = [a * 0.5, b * 0.5, a * b];
            let hi = [a, b, (a * b).sqrt()];
            assert!(h_volume(c, &Hyperbox::from_coords(&lo, &hi).unwrap()).unwrap() >= -1e-9);
        }
    }
}

proptest! {
    #![proptest_config(config(512))]

    #[test]
    fn lipschitz_and_frechet_bounds(i in 0..STANDARD_FIXTURES.len(), a in unit(), b in unit(), c in unit(), d in unit()) {
        let cop = parse_copula(STANDARD_FIXTURES[i]).unwrap();
        let (x, y) = (cop.eval(&[a, b]).unwrap(), cop.eval(&[c, d]).unwrap());
        prop_assert!((x - y).abs() <= (a - c).abs() + (b - d).abs() + 1e-12);
        prop_assert!(x <= a.min(b) + 1e-12);
        prop_assert!(x >= (a + b - 1.0).max(0.0) - 1e-12);
    }

    #[test]
    fn monotone_along_chains(i in 0..STANDARD_FIXTURES.len(), a in unit(), b in unit(), da in unit(), db in unit()) {
        let cop = parse_copula(STANDARD_FIXTURES[i]).unwrap();
        let lo = [a * (1.0 - da), b * (1.0 - db)];
        let mid = [a, b * (1.0 - db)];
        let hi = [a, b];
        let v: Vec<f64> = [lo, mid, hi].iter().map(|u| cop.eval(u).unwrap()).collect();
        prop_assert!(v[0] <= v[1] + 1e-12 && v[1] <= v[2] + 1e-12, "{v:?}");
    }

    #[test]
    fn survival_is_an_involution(i in 0..STANDARD_FIXTURES.len(), a in unit(), b in unit()) {
        let cop = parse_copula(STANDARD_FIXTURES[i]).unwrap();
        let back = survival(&survival(&cop).unwrap()).unwrap();
        prop_assert!((back.eval(&[a, b]).unwrap() - cop.eval(&[a, b]).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn glued_product_halves_are_the_product(axis in 1usize..=2, split in 0.01f64..0.99, a in unit(), b in unit()) {
        let pi = Copula::independence(2).unwrap();
        let g = glue(&pi, &pi, axis, split).unwrap();
        prop_assert!((g.eval(&[a, b]).unwrap() - a * b).abs() <= 1e-12);
    }

    #[test]
    fn tdf_is_homogeneous(name in prop::sample::select(vec!["zero", "min", "clayton:0.5", "clayton:3", "fig1-parabola", "fig1-piecewise"]),
                          a in 0.0f64..5.0, b in 0.0f64..5.0, s in 0.01f64..100.0) {
        let l = parse_tdf(name).unwrap();
        let (x, y) = (l.value(&[s * a, s * b]), s * l.value(&[a, b]));
        prop_assert!((x - y).abs() <= 1e-12 * (1.0 + y.abs()), "{x} vs {y}");
        prop_assert!(l.value(&[a, b]) <= a.min(b) + 1e-12);
    }

    #[test]
    fn generator_inverse_roundtrips(kind in 0usize..4, theta in 1.0f64..6.0, t in 1e-6f64..1.0) {
        let g = match kind {
            0 => tailorder::clayton_generator(theta).unwrap(),
            1 => tailorder::gumbel_generator(theta).unwrap(),
            2 => tailorder::joe_generator(theta).unwrap(),
            _ => tailorder::nonstrict_linear_generator(),
        };
        let x = g.phi(t);
        let closed = g.inverse(x);
        prop_assert!((closed - t).abs() <= 1e-10 * t.max(1e-3), "{closed} vs {t}");
        let bisected = g.bisect_inverse(x).unwrap();
        prop_assert!((bisected - t).abs() <= 1e-12, "{bisected} vs {t}");
    }
}

#[test]
fn coefficient_matches_simplex_restriction_exactly() {
    for name in ["zero", "min", "clayton:1", "clayton:2", "clayton:4", "fig1-parabola", "fig1-piecewise"] {
        let l = parse_tdf(name).unwrap();
        assert_eq!(l.coefficient(), tdc_from_simplex(&simplex_restriction(&l).unwrap()), "{name}");
    }
}

#[test]
fn coefficient_is_below_the_spearman_functional() {
    for f in fixtures() {
        if let Some(l) = &f.tdf {
            let rho = spearman_tdf_limit(l, 2).unwrap();
            assert!(l.coefficient() <= rho + 1e-12, "{}: {} > {rho}", f.name, l.coefficient());
        }
    }
}

/// The tail dependence function used to compare two copulas in the
/// implication tests: closed form where known, numerical otherwise.
fn tdf_of(f: &Fixture) -> TailDepFunction {
    f.tdf.clone().unwrap_or_else(|| TailDepFunction::estimated(f.copula.clone(), LimitSchedule::default()))
}

#[test]
fn local_order_implies_tail_dependence_order() {
    let g = GridConfig::with_resolution(32).unwrap();
    let fx = fixtures();
    let mut pairs = 0;
    for a in &fx {
        for b in &fx {
            if check_loc(&a.copula, &b.copula, 0.05, &g).unwrap().status != OrderStatus::Holds {
                continue;
            }
            pairs += 1;
            let tdo = check_tdo(&tdf_of(a), &tdf_of(b), &GridConfig { tau: 5e-3, ..g }).unwrap();
            assert!(tdo.is_ordered(), "{} ≼loc {} but {tdo:?}", a.name, b.name);
        }
    }
    assert!(pairs > 20, "only {pairs} locally ordered pairs");
}

#[test]
fn tail_orthant_order_implies_tail_dependence_order() {
    let g = GridConfig::with_resolution(32).unwrap();
    let fx = fixtures();
    let dirs = default_directions(2);
    let mut pairs = 0;
    for a in fx.iter().filter(|f| f.tdf.is_some()) {
        for b in fx.iter().filter(|f| f.tdf.is_some()) {
            let vs = check_too(&a.copula, &b.copula, &dirs, &LimitSchedule::default(), g.tau).unwrap();
            if vs.iter().any(|v| v.verdict.status == OrderStatus::Fails) {
                continue;
            }
            pairs += 1;
            let tdo = check_tdo(&tdf_of(a), &tdf_of(b), &g).unwrap();
            assert!(tdo.is_ordered(), "{} ≤too {} but {tdo:?}", a.name, b.name);
        }
    }
    assert!(pairs > 20, "only {pairs} ordered pairs");
}

#[test]
fn ordered_lower_extreme_value_pairs_are_globally_ordered() {
    let g = GridConfig { tau: 1e-9, ..GridConfig::default() };
    let names = ["zero", "clayton:1", "clayton:2", "clayton:4", "fig1-parabola", "fig1-piecewise", "min"];
    for a in names {
        for b in names {
            let (la, lb) = (parse_tdf(a).unwrap(), parse_tdf(b).unwrap());
            if !check_tdo(&la, &lb, &g).unwrap().is_ordered() {
                continue;
            }
            let v = check_loc(&lower_ev_copula(la).unwrap(), &lower_ev_copula(lb).unwrap(), 2f64.sqrt(), &g).unwrap();
            assert!(v.is_ordered(), "{a} ≼tdo {b} but {v:?}");
        }
    }
}

#[test]
fn parallel_and_sequential_verdicts_agree() {
    let g = GridConfig::default();
    let (m, c) = (parse_copula("marshall-olkin:0.5").unwrap(), parse_copula("clayton:1").unwrap());
    for eps in [0.5, 0.1] {
        assert_eq!(check_loc(&m, &c, eps, &g).unwrap(), check_loc(&m, &c, eps, &g.sequential()).unwrap());
    }
    let l = parse_tdf("fig1-parabola").unwrap();
    let r = parse_tdf("fig1-piecewise").unwrap();
    assert_eq!(check_tdo(&l, &r, &g).unwrap(), check_tdo(&l, &r, &g.sequential()).unwrap());
    let f = parse_copula("bertino-power:1.5").unwrap();
    assert_eq!(tailorder::validate_copula(&f, &g), tailorder::validate_copula(&f, &g.sequential()));
}
