mod common;

use std::sync::OnceLock;

use num::complex::Complex;
use num::{BigRational, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{q, random_element, random_rational};
use fusion_mult::builders::{
    build_free_product, build_group_ring, build_sun, build_tlj_ainf, build_tlj_ainf_exact, grading_of_sun,
    integer_grading, GradingMap, GroupSpec,
};
use fusion_mult::fusion::invariants::check_associativity;
use fusion_mult::multiplier::{convolve, omega};
use fusion_mult::spectral::{norm_estimate, DEFAULT_POWER_TOL};
use fusion_mult::tlj::{
    admissibility, multiplier_from_measure, omega_bound, phi_point, plancherel_pair, reduced_norm, universal_norm,
    AdmissibilityVerdict, QuadratureParams,
};
use fusion_mult::{FusionElement, FusionRing, Label, Multiplier};

type Cq = Complex<BigRational>;

struct Rings {
    tlj: FusionRing,
    tlj_float: FusionRing,
    z: FusionRing,
    z2: FusionRing,
    f2: FusionRing,
    su3: FusionRing,
    fuss_catalan: FusionRing,
}

fn rings() -> &'static Rings {
    static RINGS: OnceLock<Rings> = OnceLock::new();
    RINGS.get_or_init(|| {
        let t5 = build_tlj_ainf_exact(q(5, 1)).unwrap();
        let t4 = build_tlj_ainf_exact(q(4, 1)).unwrap();
        Rings {
            tlj: t5.clone(),
            tlj_float: build_tlj_ainf(5.0).unwrap(),
            z: build_group_ring(&GroupSpec::Integers { rank: 1 }).unwrap(),
            z2: build_group_ring(&GroupSpec::Integers { rank: 2 }).unwrap(),
            f2: build_group_ring(&GroupSpec::Free { rank: 2 }).unwrap(),
            su3: fusion_mult::builders::build_sun_bounded(3, 1.0, 40).unwrap(),
            fuss_catalan: build_free_product(&t5, &t4),
        }
    })
}

fn all_rings() -> Vec<&'static FusionRing> {
    let r = rings();
    vec![&r.tlj, &r.z, &r.z2, &r.f2, &r.su3, &r.fuss_catalan]
}

fn complex_element(rng: &mut ChaCha8Rng, ring: &FusionRing, labels: &[Label]) -> FusionElement<Cq> {
    let count = rng.gen_range(1..=4);
    let terms: Vec<(Label, Cq)> = (0..count)
        .map(|_| {
            let label = labels[rng.gen_range(0..labels.len())].clone();
            (label, Complex::new(random_rational(rng), random_rational(rng)))
        })
        .collect();
    FusionElement::from_terms(ring, terms).unwrap()
}

fn pick(rng: &mut ChaCha8Rng, labels: &[Label]) -> Label {
    labels[rng.gen_range(0..labels.len())].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_an_involutive_anti_homomorphism(seed in any::<u64>(), which in 0usize..6) {
        let ring = all_rings()[which];
        let labels = ring.labels_up_to_level(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = complex_element(&mut rng, ring, &labels);
        let y = complex_element(&mut rng, ring, &labels);
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().star(), y.star().mul(&x.star()).unwrap());
        let c = Complex::new(q(2, 3), q(-1, 2));
        prop_assert_eq!(x.scale(&c).star(), x.star().scale(&Complex::new(c.re.clone(), -c.im.clone())));
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), which in 0usize..6) {
        let ring = all_rings()[which];
        let labels = ring.labels_up_to_level(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&mut rng, ring, &labels, 3);
        let y = random_element(&mut rng, ring, &labels, 3);
        let z = random_element(&mut rng, ring, &labels, 3);
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(x.mul(&FusionElement::one(ring)).unwrap(), x.clone());
    }

    #[test]
    fn frobenius_and_unit_pairing(seed in any::<u64>(), which in 0usize..6) {
        let ring = all_rings()[which];
        let labels = ring.labels_up_to_level(6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let (a, b) = (pick(&mut rng, &labels), pick(&mut rng, &labels));
            let (a_bar, b_bar) = (ring.conjugate(&a).unwrap(), ring.conjugate(&b).unwrap());
            let expected = u64::from(b == a_bar);
            prop_assert_eq!(ring.mult(&ring.unit(), &a, &b).unwrap(), expected);
            for (gamma, n) in ring.fuse(&a, &b).unwrap().iter() {
                prop_assert_eq!(ring.mult(&a, gamma, &b_bar).unwrap(), n);
                prop_assert_eq!(ring.mult(&b, &a_bar, gamma).unwrap(), n);
            }
        }
    }

    #[test]
    fn dimension_is_multiplicative(seed in any::<u64>(), which in 0usize..6) {
        let ring = all_rings()[which];
        let labels = ring.labels_up_to_level(6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let (a, b) = (pick(&mut rng, &labels), pick(&mut rng, &labels));
            let da = ring.dim(&a).unwrap();
            let db = ring.dim(&b).unwrap();
            let product = da.times(&db);
            match product.as_exact() {
                Some(exact) => {
                    let mut total = BigRational::zero();
                    for (gamma, n) in ring.fuse(&a, &b).unwrap().iter() {
                        total += ring.dim(gamma).unwrap().as_exact().unwrap() * BigRational::from_integer(n.into());
                    }
                    prop_assert_eq!(&total, exact);
                }
                None => {
                    let total: f64 = ring.fuse(&a, &b).unwrap().iter()
                        .map(|(g, n)| n as f64 * ring.dim(g).unwrap().value()).sum();
                    prop_assert!((total - product.value()).abs() <= 1e-9 * product.value());
                }
            }
        }
    }

    #[test]
    fn free_product_fusion_is_associative(seed in any::<u64>()) {
        let ring = &rings().fuss_catalan;
        let labels = ring.labels_up_to_level(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (pick(&mut rng, &labels), pick(&mut rng, &labels), pick(&mut rng, &labels));
        prop_assert!(check_associativity(ring, &a, &b, &c).is_ok());
    }
}

fn check_grading(ring: &FusionRing, grading: &GradingMap, rng: &mut ChaCha8Rng) -> Result<(), TestCaseError> {
    let labels = ring.labels_up_to_level(4);
    let n = grading.modulus();
    for _ in 0..16 {
        let (a, b) = (pick(rng, &labels), pick(rng, &labels));
        let sum = (grading.degree(&a).unwrap() + grading.degree(&b).unwrap()) % n;
        for (gamma, _) in ring.fuse(&a, &b).unwrap().iter() {
            prop_assert_eq!(grading.degree(gamma).unwrap(), sum);
        }
        let a_bar = ring.conjugate(&a).unwrap();
        prop_assert_eq!((grading.degree(&a).unwrap() + grading.degree(&a_bar).unwrap()) % n, 0);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gradings_are_compatible(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let su3 = &rings().su3;
        check_grading(su3, &grading_of_sun(su3).unwrap(), &mut rng)?;
        let su4 = build_sun(4, 1.0).unwrap();
        check_grading(&su4, &grading_of_sun(&su4).unwrap(), &mut rng)?;
        let z = &rings().z;
        check_grading(z, &integer_grading(z, 3).unwrap(), &mut rng)?;
    }

    #[test]
    fn pairing_identity(seed in any::<u64>(), on_tlj in any::<bool>()) {
        let ring = if on_tlj { &rings().tlj } else { &rings().z };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let small = ring.labels_up_to_level(3);
        let values: Vec<(Label, BigRational)> =
            ring.labels_up_to_level(9).into_iter().map(|l| (l, random_rational(&mut rng))).collect();
        let phi = Multiplier::from_table(ring, values, BigRational::zero()).unwrap();
        let x = random_element(&mut rng, ring, &small, 3);
        let y = random_element(&mut rng, ring, &small, 3);
        let a = random_element(&mut rng, ring, &small, 3);
        let left = omega(&convolve(&phi, &x, &y).unwrap(), &a).unwrap();
        let right = omega(&phi, &y.star().mul(&a).unwrap().mul(&x).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn convolve_is_sesquilinear(seed in any::<u64>()) {
        let ring = &rings().z;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let small = ring.labels_up_to_level(3);
        let values: Vec<(Label, Cq)> = ring.labels_up_to_level(9).into_iter()
            .map(|l| (l, Complex::new(random_rational(&mut rng), random_rational(&mut rng))))
            .collect();
        let phi = Multiplier::from_table(ring, values, Complex::zero()).unwrap();
        let x1 = complex_element(&mut rng, ring, &small);
        let x2 = complex_element(&mut rng, ring, &small);
        let y = complex_element(&mut rng, ring, &small);
        let c = Complex::new(random_rational(&mut rng), random_rational(&mut rng));
        let c_bar = Complex::new(c.re.clone(), -c.im.clone());
        let sum = convolve(&phi, &x1.add(&x2).unwrap(), &y).unwrap();
        let first = convolve(&phi, &x1, &y).unwrap();
        let second = convolve(&phi, &x2, &y).unwrap();
        let scaled_x = convolve(&phi, &x1.scale(&c), &y).unwrap();
        let scaled_y = convolve(&phi, &x1, &y.scale(&c)).unwrap();
        for label in ring.labels_up_to_level(4) {
            prop_assert_eq!(sum.eval(&label).unwrap(), first.eval(&label).unwrap() + second.eval(&label).unwrap());
            prop_assert_eq!(scaled_x.eval(&label).unwrap(), first.eval(&label).unwrap() * c.clone());
            prop_assert_eq!(scaled_y.eval(&label).unwrap(), first.eval(&label).unwrap() * c_bar.clone());
        }
    }

    #[test]
    fn points_of_the_interval_are_never_rejected(
        which in 0usize..4,
        fraction in 0.0f64..=1.0,
        above in 0.01f64..3.0,
    ) {
        let lambda_inv = [4.0, 4.5, 5.0, 6.0][which];
        let ring = build_tlj_ainf(lambda_inv).unwrap();
        let t = lambda_inv * fraction;
        let verdict = admissibility(&phi_point(&ring, t).unwrap(), 12, 1e-9).unwrap();
        prop_assert!(!verdict.is_rejected(), "t = {}: {:?}", t, verdict);
        for outside in [lambda_inv + above, -above] {
            let verdict = admissibility(&phi_point(&ring, outside).unwrap(), 2, 1e-9).unwrap();
            prop_assert!(verdict.is_rejected(), "t = {}: {:?}", outside, verdict);
        }
    }
}

fn random_measure(rng: &mut ChaCha8Rng) -> Vec<(BigRational, BigRational)> {
    let count = rng.gen_range(1..=4);
    let raw: Vec<(BigRational, i64)> =
        (0..count).map(|_| (q(rng.gen_range(0..=50), 10), rng.gen_range(1..=9))).collect();
    let total: i64 = raw.iter().map(|(_, w)| w).sum();
    raw.into_iter().map(|(t, w)| (t, q(w, total))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn mixtures_are_admissible(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = multiplier_from_measure(&rings().tlj, &random_measure(&mut rng)).unwrap();
        // Admissible(12) certifies every level up to 12.
        prop_assert_eq!(admissibility(&phi, 12, 1e-9).unwrap(), AdmissibilityVerdict::Admissible { level: 12 });
    }

    #[test]
    fn convolution_keeps_admissibility(seed in any::<u64>()) {
        let ring = &rings().tlj;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = multiplier_from_measure(ring, &random_measure(&mut rng)).unwrap();
        let x = random_element(&mut rng, ring, &ring.labels_up_to_level(2), 3);
        let phi_xx = convolve(&phi, &x, &x).unwrap();
        let at_unit = phi_xx.eval(&ring.unit()).unwrap();
        prop_assert!(at_unit >= BigRational::zero());
        prop_assume!(!at_unit.is_zero());
        let normalized = phi_xx.scale(q(1, 1) / at_unit);
        prop_assert_eq!(admissibility(&normalized, 8, 1e-9).unwrap(), AdmissibilityVerdict::Admissible { level: 8 });
    }

    #[test]
    fn sup_norms_are_ordered(seed in any::<u64>()) {
        let ring = &rings().tlj_float;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels = ring.labels_up_to_level(6);
        let terms: Vec<(Label, f64)> = (0..rng.gen_range(1..=5))
            .map(|_| (pick(&mut rng, &labels), rng.gen_range(-3.0..3.0)))
            .collect();
        let x = FusionElement::from_terms(ring, terms).unwrap();
        let reduced = reduced_norm(&x).unwrap().value;
        let universal = universal_norm(&x).unwrap().value;
        let bound = omega_bound(&x).unwrap();
        prop_assert!(reduced <= universal * (1.0 + 1e-12) + 1e-12, "{} > {}", reduced, universal);
        prop_assert!(universal <= bound * (1.0 + 1e-12) + 1e-12, "{} > {}", universal, bound);
    }

    #[test]
    fn plancherel_pairs_are_orthonormal(n in 0usize..=6, m in 0usize..=6) {
        let value = plancherel_pair(n, m, &QuadratureParams::default()).unwrap();
        let target = if n == m { 1.0 } else { 0.0 };
        prop_assert!((value - target).abs() <= 1e-7, "⟨V_{}, V_{}⟩ = {}", n, m, value);
    }
}

#[test]
fn universal_norm_of_basis_is_dimension() {
    let ring = &rings().tlj;
    for n in 0..16 {
        let x = FusionElement::<BigRational>::basis(ring, Label::Tlj(n)).unwrap();
        let sup = universal_norm(&x).unwrap();
        assert!(sup.exact);
        assert_eq!(&sup.value, ring.dim(&Label::Tlj(n)).unwrap().as_exact().unwrap());
    }
}

#[test]
fn truncation_bounds_grow_and_stay_below_dimension() {
    let r = rings();
    let x_tlj = FusionElement::from_terms(&r.tlj_float, [(Label::Tlj(0), 1.0), (Label::Tlj(1), 1.0)]).unwrap();
    let walk = FusionElement::from_terms(&r.z, [(Label::Int(1), 1.0), (Label::Int(-1), 1.0)]).unwrap();
    let fc_gens: Vec<(Label, f64)> = r.fuss_catalan.labels_up_to_level(1).into_iter().map(|l| (l, 1.0)).collect();
    let fc = FusionElement::from_terms(&r.fuss_catalan, fc_gens).unwrap();
    for x in [&x_tlj, &walk, &fc] {
        let ring = x.ring();
        let d: f64 = x.terms().map(|(l, c)| c * ring.dim(l).unwrap().value()).sum();
        let mut previous = 0.0;
        for n in [8, 16, 32, 64] {
            let estimate = norm_estimate(x, n, None, DEFAULT_POWER_TOL).unwrap();
            let bounds: Vec<f64> = estimate.truncations.iter().map(|t| t.lower_bound).collect();
            assert!(bounds.windows(2).all(|w| w[0] <= w[1]), "{}: {bounds:?}", ring.name());
            assert!(
                estimate.estimate >= previous * (1.0 - 1e-9),
                "{}: N={n} gives {} after {previous}",
                ring.name(),
                estimate.estimate
            );
            assert!(estimate.estimate <= d * (1.0 + 1e-9), "{}: {} > {d}", ring.name(), estimate.estimate);
            previous = estimate.estimate;
        }
    }
}

#[test]
fn evaluation_is_memo_stable() {
    let ring = &rings().tlj_float;
    let phi = phi_point(ring, 2.7).unwrap();
    let first: Vec<f64> = (0..30).map(|n| phi.eval(&Label::Tlj(n)).unwrap()).collect();
    let second: Vec<f64> = (0..30).rev().map(|n| phi.eval(&Label::Tlj(n)).unwrap()).collect();
    assert!(first.iter().eq(second.iter().rev()));
}
