//! Property tests for the algebraic and probabilistic invariants.

mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use slice_harmonic::blekherman::{
    blekherman_expand, interpolate_coefficients, system_stats, ExpansionBasis,
};
use slice_harmonic::coupling::{
    cdf_distance, chernoff_bound, deviation_tail, empirical_profile, exact_distribution,
    levy_distance, levy_distance_bisect, martingale_moment, tv_distance, Domain, Pmf, Step,
};
use slice_harmonic::gt::gt_basis;
use slice_harmonic::harmonic::{
    harmonic_projection, project_values, project_values_gt, SliceFunction, SliceSpec,
};
use slice_harmonic::linalg::rank;
use slice_harmonic::measures::{
    basic_norm, derivative_energy, derivative_ratio, inner_product, norm_sq, variance,
    ExchangeableMeasure,
};
use slice_harmonic::rational::{int, rat, to_f64};
use slice_harmonic::subsets::popcount;
use slice_harmonic::{MultilinearPoly, Permutation, Rational};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).unwrap()
}

/// A measure whose basic norms are positive up to degree `d`.
fn nondegenerate_measure(rng: &mut impl Rng, n: usize, d: usize) -> ExchangeableMeasure {
    if rng.random_bool(0.5) {
        ExchangeableMeasure::slice_uniform(n, rng.random_range(d..=n - d)).unwrap()
    } else {
        let den = rng.random_range(2..=9);
        ExchangeableMeasure::product_bernoulli(n, rat(rng.random_range(1..den), den)).unwrap()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn lefschetz_commutator(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = common::rng(seed);
        let d = rng.random_range(0..=n);
        let f = common::poly(&mut rng, n, n, 6).homogeneous_part(d);
        let lhs = f.raise_delta().lower_delta().sub(&f.lower_delta().raise_delta()).unwrap();
        let factor = Rational::from_integer((n as i64 - 2 * d as i64).into());
        prop_assert_eq!(lhs, f.scale(&factor));
    }

    #[test]
    fn shift_invariance_characterizes_harmonic(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = common::rng(seed);
        let h = common::mixed_harmonic(&mut rng, n, n / 2);
        let c = common::rational(&mut rng, 7);
        prop_assert_eq!(h.shift(&c), h.clone());
        let f = common::poly(&mut rng, n, 3, 4);
        if !f.is_harmonic() {
            // f(x + c) - f(x) is a polynomial in c with no constant term and
            // nonzero linear term, so it has at most deg f nonzero roots.
            let d = f.degree().unwrap();
            prop_assert!((1..=d as i64 + 1).any(|c| f.shift(&int(c)) != f));
        }
    }

    #[test]
    fn permute_commutes_with_delta(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = common::rng(seed);
        let f = common::poly(&mut rng, n, 4, 6);
        let pi = random_permutation(&mut rng, n);
        prop_assert_eq!(f.permute(&pi).unwrap().lower_delta(), f.lower_delta().permute(&pi).unwrap());
        prop_assert_eq!(f.permute(&pi).unwrap().raise_delta(), f.raise_delta().permute(&pi).unwrap());
    }

    #[test]
    fn reduced_product_is_associative_and_commutative(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let f = common::poly(&mut rng, n, 3, 4);
        let g = common::poly(&mut rng, n, 3, 4);
        let h = common::poly(&mut rng, n, 3, 4);
        let fg = f.multiply(&g, true).unwrap();
        prop_assert_eq!(&fg, &g.multiply(&f, true).unwrap());
        prop_assert_eq!(
            fg.multiply(&h, true).unwrap(),
            f.multiply(&g.multiply(&h, true).unwrap(), true).unwrap()
        );
        // Pointwise on the cube.
        for x in 0..1u64 << n {
            prop_assert_eq!(fg.evaluate_mask(x), f.evaluate_mask(x) * g.evaluate_mask(x));
        }
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>(), n in 1usize..=12) {
        let mut rng = common::rng(seed);
        let f = common::poly(&mut rng, n, 5, 8);
        prop_assert_eq!(MultilinearPoly::parse_text(n, &f.to_text()).unwrap(), f.clone());
        prop_assert_eq!(MultilinearPoly::from_json(&f.to_json()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn projection_round_trip_and_uniqueness(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = common::rng(seed);
        let k = rng.random_range(0..=n);
        let slice = SliceSpec::new(n, k).unwrap();
        let v = SliceFunction::from_fn(slice, |_| common::rational(&mut rng, 10));
        let h = project_values(&v).unwrap();
        prop_assert!(h.is_harmonic());
        prop_assert!(h.degree().unwrap_or(0) <= k.min(n - k));
        for (x, value) in v.values() {
            prop_assert_eq!(&h.evaluate_mask(x), value);
        }
        prop_assert_eq!(project_values_gt(&v).unwrap(), h);
        let zero = v.map(|_| Rational::zero());
        prop_assert!(project_values(&zero).unwrap().is_zero());
    }

    #[test]
    fn projection_is_equivariant(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = common::rng(seed);
        let k = rng.random_range(0..=n);
        let slice = SliceSpec::new(n, k).unwrap();
        let v = SliceFunction::from_fn(slice, |_| common::rational(&mut rng, 10));
        let pi = random_permutation(&mut rng, n);
        prop_assert_eq!(
            project_values(&v.permute(&pi).unwrap()).unwrap(),
            project_values(&v).unwrap().permute(&pi).unwrap()
        );
    }

    #[test]
    fn projection_does_not_raise_degree(seed in any::<u64>(), n in 1usize..=9) {
        let mut rng = common::rng(seed);
        let f = common::poly(&mut rng, n, 4, 6);
        let k = rng.random_range(0..=n);
        let h = harmonic_projection(&f, SliceSpec::new(n, k).unwrap()).unwrap();
        prop_assert!(h.degree().unwrap_or(0) <= f.degree().unwrap_or(0));
        for x in SliceSpec::new(n, k).unwrap().points() {
            prop_assert_eq!(h.evaluate_mask(x), f.evaluate_mask(x));
        }
    }

    #[test]
    fn fixing_a_coordinate_does_not_raise_degree(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = common::rng(seed);
        let k = rng.random_range(1..n);
        let slice = SliceSpec::new(n, k).unwrap();
        let v = SliceFunction::from_fn(slice, |_| common::rational(&mut rng, 10));
        let d = project_values(&v).unwrap().degree().unwrap_or(0);
        let last = 1u64 << (n - 1);
        for (bit, sub_k) in [(0, k), (last, k - 1)] {
            let sub = SliceSpec::new(n - 1, sub_k).unwrap();
            let restricted = SliceFunction::from_fn(sub, |x| v.value(x | bit).unwrap().clone());
            prop_assert!(project_values(&restricted).unwrap().degree().unwrap_or(0) <= d);
        }
    }
}

#[test]
fn gt_elements_span_each_slice() {
    for n in 1..=8 {
        for k in 0..=n {
            let nu = ExchangeableMeasure::slice_uniform(n, k).unwrap();
            let elements: Vec<MultilinearPoly> = (0..=k.min(n - k))
                .flat_map(|d| {
                    gt_basis(n, d)
                        .unwrap()
                        .iter()
                        .map(|e| e.poly.clone())
                        .collect::<Vec<_>>()
                })
                .collect();
            let gram: Vec<Vec<Rational>> = elements
                .iter()
                .map(|f| {
                    elements
                        .iter()
                        .map(|g| inner_product(f, g, &nu).unwrap())
                        .collect()
                })
                .collect();
            assert_eq!(
                elements.len(),
                SliceSpec::new(n, k).unwrap().size() as usize
            );
            assert_eq!(rank(&gram), elements.len(), "n={n} k={k}");
        }
    }
}

#[test]
fn top_part_of_projection_is_independent_of_k() {
    let f = MultilinearPoly::monomial(8, &[1, 2, 3], int(1)).unwrap();
    let tops: Vec<MultilinearPoly> = (3..=5)
        .map(|k| {
            harmonic_projection(&f, SliceSpec::new(8, k).unwrap())
                .unwrap()
                .homogeneous_part(3)
        })
        .collect();
    assert!(!tops[0].is_zero());
    assert!(tops.windows(2).all(|w| w[0] == w[1]));
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn spherical_proportionality(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = common::rng(seed);
        let d = rng.random_range(0..=n / 2);
        let f = common::harmonic(&mut rng, n, &[d], 2);
        let g = common::harmonic(&mut rng, n, &[d], 2);
        let e = (d + 1 + rng.random_range(0..n / 2)) % (n / 2 + 1);
        let other = common::harmonic(&mut rng, n, &[e], 2);
        let alpha = common::measure(&mut rng, n);
        let beta = common::measure(&mut rng, n);
        prop_assert_eq!(
            inner_product(&f, &g, &alpha).unwrap() * basic_norm(&beta, d).unwrap(),
            inner_product(&f, &g, &beta).unwrap() * basic_norm(&alpha, d).unwrap()
        );
        if e != d {
            prop_assert!(inner_product(&f, &other, &alpha).unwrap().is_zero());
        }
    }

    #[test]
    fn norm_transfer(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = common::rng(seed);
        let f = common::mixed_harmonic(&mut rng, n, n / 2);
        let d = f.degree().unwrap();
        let alpha = common::measure(&mut rng, n);
        let beta = nondegenerate_measure(&mut rng, n, d);
        let c = (0..=d)
            .map(|t| basic_norm(&alpha, t).unwrap() / basic_norm(&beta, t).unwrap())
            .max()
            .unwrap();
        prop_assert!(norm_sq(&f, &alpha).unwrap() <= c * norm_sq(&f, &beta).unwrap());
    }

    #[test]
    fn monomial_inner_products_are_moments(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = common::rng(seed);
        let m = common::measure(&mut rng, n);
        let s = rng.random_range(0..1u64 << n);
        let t = rng.random_range(0..1u64 << n);
        let xs = MultilinearPoly::monomial_mask(n, s, int(1)).unwrap();
        let xt = MultilinearPoly::monomial_mask(n, t, int(1)).unwrap();
        prop_assert_eq!(inner_product(&xs, &xt, &m).unwrap(), m.moment(popcount(s | t)).unwrap());
    }

    #[test]
    fn derivative_poincare(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = common::rng(seed);
        let f = common::mixed_harmonic(&mut rng, n, n / 2);
        let d = f.degree().unwrap();
        let m = nondegenerate_measure(&mut rng, n, d);
        let ratios: Vec<Rational> = (1..=d).map(|t| derivative_ratio(&m, t).unwrap()).collect();
        let lo = ratios.iter().min().unwrap();
        let hi = ratios.iter().max().unwrap();
        let energy = derivative_energy(&f, &m).unwrap();
        let var = variance(&f, &m).unwrap();
        prop_assert!(lo * &var <= energy);
        prop_assert!(energy <= hi * &var);
    }
}

#[test]
fn basic_norm_ratio_approaches_one() {
    for d in 1..=3usize {
        for (num, den) in [(1i64, 2i64), (1, 4), (3, 8)] {
            let distance = |n: usize| {
                let k = n * num as usize / den as usize;
                let nu = ExchangeableMeasure::slice_uniform(n, k).unwrap();
                let mu = ExchangeableMeasure::product_bernoulli(n, rat(num, den)).unwrap();
                let ratio = basic_norm(&nu, d).unwrap() / basic_norm(&mu, d).unwrap();
                to_f64(&(ratio - int(1))).abs()
            };
            for n in [16usize, 24, 32] {
                let shrink = distance(n) / distance(2 * n);
                assert!(
                    (1.0..=4.0).contains(&shrink),
                    "d={d} p={num}/{den} n={n}: {shrink}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn blekherman_invariants(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = common::rng(seed);
        let f = common::poly(&mut rng, n, n / 2, 6);
        let d = f.degree().unwrap_or(0);
        let den = rng.random_range(2..=5);
        let p = rat(rng.random_range(1..den), den);
        for basis in [ExpansionBasis::RawSum, ExpansionBasis::Standardized { p }] {
            let e = blekherman_expand(&f, basis).unwrap();
            for (i, c) in e.coeffs().iter().enumerate() {
                prop_assert!(c.is_harmonic());
                prop_assert!(c.is_zero() || c.degree().unwrap() + i <= d);
            }
            for x in 0..1u64 << n {
                prop_assert_eq!(e.evaluate_mask(x), f.evaluate_mask(x));
            }
            for k in d..=n - d {
                prop_assert_eq!(
                    e.slice_restrict(k).unwrap(),
                    harmonic_projection(&f, SliceSpec::new(n, k).unwrap()).unwrap()
                );
            }
            if !e.is_deferred() {
                let nodes: Vec<(Rational, MultilinearPoly)> =
                    (0..=d).map(|k| (e.node(k), e.slice_restrict(k).unwrap())).collect();
                let interp = interpolate_coefficients(&nodes, d).unwrap();
                for (i, c) in interp.coeffs.iter().enumerate() {
                    let expected = e.coeffs().get(i).cloned().unwrap_or_else(|| MultilinearPoly::zero(n).unwrap());
                    prop_assert_eq!(c, &expected);
                }
            }
        }
    }

    #[test]
    fn martingale_orthogonality_and_second_moment(seed in any::<u64>(), n in 3usize..=7) {
        let mut rng = common::rng(seed);
        let f = common::mixed_harmonic(&mut rng, n, n / 2);
        let s = rng.random_range(1..n - 1);
        let t = rng.random_range(s + 1..n);
        for step in [Step::Up, Step::Down] {
            prop_assert!(martingale_moment(&f, s, t, step, 1 << 22).unwrap().is_zero());
        }
        let nu = ExchangeableMeasure::slice_uniform(n, s).unwrap();
        let bound = rat(4, (n - s) as i64) * derivative_energy(&f, &nu).unwrap();
        prop_assert!(martingale_moment(&f, s, s, Step::Up, 1 << 22).unwrap() <= bound);
    }

    #[test]
    fn chernoff_dominates_exact_tail(n in 1usize..=60, a in 1i64..=9, b in 1i64..=20) {
        let p = rat(a, 10);
        let var = &p * (Rational::one() - &p);
        let eps = &var * rat(b, 20);
        let tail = to_f64(&deviation_tail(n, &p, &eps).unwrap());
        prop_assert!(tail <= chernoff_bound(n, &p, &eps) * (1.0 + 1e-12));
    }

    #[test]
    fn distances_are_consistent(seed in any::<u64>(), n in 2usize..=10) {
        let mut rng = common::rng(seed);
        let f = common::poly(&mut rng, n, 2, 4);
        let k = rng.random_range(0..=n);
        let a = exact_distribution(&f, &Domain::Slice { k }).unwrap();
        let b = exact_distribution(&f, &Domain::Cube { p: rat(1, 2) }).unwrap();
        let (fa, fb) = (a.to_f64(), b.to_f64());
        let levy = levy_distance(&fa, &fb);
        prop_assert!((levy - levy_distance(&fb, &fa)).abs() < 1e-12);
        prop_assert!((levy - levy_distance_bisect(&fa, &fb)).abs() < 1e-6);
        prop_assert!(levy <= cdf_distance(&fa, &fb) + 1e-12);
        prop_assert!(cdf_distance(&a, &b) <= tv_distance(&a, &b));
        prop_assert!(levy_distance(&fa, &fa) == 0.0);
        let sum: f64 = fa.probs().iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
        prop_assert!(Pmf::<f64>::new(fa.support().to_vec(), fa.probs().to_vec()).is_ok());
    }

    #[test]
    fn profiles_are_reproducible(seed in any::<u64>(), threads in 1usize..=4) {
        let f = MultilinearPoly::basic(10, 2).unwrap();
        let system = system_stats(&[4, 5, 6], &rat(1, 2), 10).unwrap();
        let a = empirical_profile(&f, &system, 300, seed, threads).unwrap();
        let b = empirical_profile(&f, &system, 300, seed, threads).unwrap();
        prop_assert_eq!(a.to_csv(), b.to_csv());
        prop_assert_eq!(a.rows.len(), 300);
    }
}
