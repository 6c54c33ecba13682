//! Structural invariants checked on generated inputs.

use std::collections::HashSet;
use std::sync::Arc;

use invtool_core::csp::{character_from_series, csp_check, ModularCharacterQuery};
use invtool_core::groth::{brauer_value, character_of, compare, CompareMode, Theta};
use invtool_core::groups::named::{cyclic_scalar, dihedral, symmetric};
use invtool_core::groups::{CosetSpace, FiniteMatrixGroup, DEFAULT_GROUP_CAP};
use invtool_core::homology::{truncated_minimal_resolution, GradedAlgebraR, HdReport};
use invtool_core::numbers::{cyclotomic_embed, rat, CyclotomicNumber};
use invtool_core::polyaction::{binomial, enumerate_fiber, relative_invariants_up_to, BimoduleU, SparsePoly};
use invtool_core::groth::regular_certificate_for;
use invtool_core::series::{evaluate, fit_denominator, infer_polynomial_degrees, RationalFunction};
use invtool_core::{CharacterField, CyclotomicField, Field, FiniteField, Matrix, Poly, RationalField};
use proptest::prelude::*;

fn elementary_symmetric<F: Field>(f: &F, n: usize) -> Vec<SparsePoly<F>> {
    (1..=n)
        .map(|k| {
            let terms = (0u32..(1 << n))
                .filter(|m| m.count_ones() as usize == k)
                .map(|m| (f.one(), (0..n).map(|i| (m >> i) & 1).collect()))
                .collect();
            SparsePoly::new(f, n, terms).unwrap()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn finite_field_axioms(a in 0u32..25, b in 0u32..25, c in 0u32..25, which in 0usize..3) {
        let f = match which {
            0 => FiniteField::with_default_modulus(3, 2).unwrap(),
            1 => FiniteField::with_default_modulus(5, 2).unwrap(),
            _ => FiniteField::with_default_modulus(2, 4).unwrap(),
        };
        let q = f.order() as u32;
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(Field::add(&f, &a, &Field::add(&f, &b, &c)), Field::add(&f, &Field::add(&f, &a, &b), &c));
        prop_assert_eq!(Field::mul(&f, &a, &Field::mul(&f, &b, &c)), Field::mul(&f, &Field::mul(&f, &a, &b), &c));
        prop_assert_eq!(
            Field::mul(&f, &a, &Field::add(&f, &b, &c)),
            Field::add(&f, &Field::mul(&f, &a, &b), &Field::mul(&f, &a, &c))
        );
        prop_assert!(Field::is_zero(&f, &Field::add(&f, &a, &Field::neg(&f, &a))));
        if a != 0 {
            let inv = Field::inv(&f, &a).unwrap();
            prop_assert!(f.is_one(&Field::mul(&f, &a, &inv)));
            prop_assert_eq!(Field::pow(&f, &a, q as u64 - 1), f.one());
        } else {
            prop_assert!(Field::inv(&f, &a).is_err());
        }
        // Frobenius is additive.
        let p = f.p();
        prop_assert_eq!(
            Field::pow(&f, &Field::add(&f, &a, &b), p),
            Field::add(&f, &Field::pow(&f, &a, p), &Field::pow(&f, &b, p))
        );
    }

    #[test]
    fn cyclotomic_embedding_is_transitive(
        m in 1u64..13, a in 1u64..4, b in 1u64..4,
        cs in prop::collection::vec(-5i64..6, 1..6),
    ) {
        let coeffs: Vec<_> = cs.iter().map(|&c| rat(c)).collect();
        let x = CyclotomicNumber::from_coefficients(m, &coeffs);
        let mid = cyclotomic_embed(&x, m * a).unwrap();
        let two_step = cyclotomic_embed(&mid, m * a * b).unwrap();
        prop_assert_eq!(&two_step, &cyclotomic_embed(&x, m * a * b).unwrap());
        // The sum is computed correctly in the larger field.
        let y = CyclotomicNumber::root_of_unity(m * a, 1);
        let s = x.try_add(&y).unwrap();
        prop_assert_eq!(s.embed(m * a * b).unwrap(), &two_step + &y.embed(m * a * b).unwrap());
    }

    #[test]
    fn evaluation_commutes_with_galois_action(
        num in prop::collection::vec(-3i64..4, 1..5),
        den in prop::collection::vec(-3i64..4, 0..4),
        j in 0i64..12,
        s in prop::sample::select(vec![1i64, 5, 7, 11]),
    ) {
        let k = CyclotomicField::new(12).unwrap();
        let z = k.zeta();
        // Mix in zeta so the coefficients are not all rational.
        let n = Poly::new(&k, num.iter().enumerate().map(|(i, &c)| {
            let c = k.from_int(c);
            if i % 2 == 1 { Field::mul(&k, &c, &z) } else { c }
        }).collect());
        let mut dc = vec![k.one()];
        dc.extend(den.iter().map(|&c| k.from_int(c)));
        let f = RationalFunction::new(n, Poly::new(&k, dc)).unwrap();
        let point = CyclotomicNumber::root_of_unity(12, j);
        let value = evaluate(&f, &point);
        prop_assume!(value.is_ok());
        let conj = evaluate(&f.galois(s), &point.galois(s)).unwrap();
        prop_assert_eq!(conj, value.unwrap().galois(s));
    }

    #[test]
    fn regular_certificates_are_eigenvectors_with_free_orbits(n in 3u64..7) {
        let k = CyclotomicField::new(n).unwrap();
        let g = dihedral(&k, n).unwrap();
        for c in 0..g.order() {
            let Ok(cert) = regular_certificate_for(&g, c, None) else { continue };
            let v = &cert.vector;
            let scaled: Vec<_> = v.iter().map(|x| Field::mul(&k, &cert.omega, x)).collect();
            prop_assert_eq!(g.element(c).mul_vec(v), scaled);
            let orbit: HashSet<_> = g.elements().iter().map(|m| m.mul_vec(v)).collect();
            prop_assert_eq!(orbit.len(), g.order());
            prop_assert_eq!(cert.orbit_size, g.order());
        }
    }

    #[test]
    fn coset_actions_commute(sub in 0usize..24, x in 0usize..24) {
        let g = symmetric(&RationalField, 4).unwrap();
        let space = CosetSpace::new(&g, &[sub % g.order()], None).unwrap();
        prop_assert_eq!(space.len() * space.subgroup().len(), g.order());
        let right = space.right_action(&g, x % g.order());
        for &gamma in space.normalizer() {
            let left = space.left_action(&g, gamma).unwrap();
            let lr: Vec<_> = right.iter().map(|&k| left[k]).collect();
            let rl: Vec<_> = left.iter().map(|&k| right[k]).collect();
            prop_assert_eq!(lr, rl);
        }
    }

    #[test]
    fn fiber_orbits_partition_and_transporters_move_points(
        p in prop::sample::select(vec![5u64, 7]),
        a in 0i64..7, b in 0i64..7, pick in 0usize..2,
    ) {
        let f = FiniteField::prime(p).unwrap();
        let g = symmetric(&f, 2).unwrap();
        let c = g.element(pick % g.order()).clone();
        let params = elementary_symmetric(&f, 2);
        let v = vec![f.from_int(a), f.from_int(b)];
        let fiber = enumerate_fiber(&g, &params, &v, Some(&c), 1 << 20).unwrap();
        prop_assert_eq!(fiber.orbits.iter().map(|o| o.size).sum::<usize>(), fiber.len());
        for w in &fiber.points {
            let vals: Vec<_> = params.iter().map(|q| q.evaluate(w)).collect();
            prop_assert_eq!(&vals, &fiber.values);
        }
        for o in &fiber.orbits {
            prop_assert_eq!(g.order() % o.size, 0);
            if let Some(t) = o.transporter {
                prop_assert_eq!(c.mul_vec(&o.representative), g.element(t).mul_vec(&o.representative));
            }
        }
        prop_assert_eq!(fiber.free, fiber.orbits.iter().all(|o| o.size == g.order()));
    }

    #[test]
    fn fitted_numerators_round_trip(
        num in prop::collection::vec(0i64..4, 1..5),
        degrees in prop::collection::vec(1usize..5, 1..4),
    ) {
        let q = RationalField;
        let numerator = Poly::new(&q, num.iter().map(|&c| rat(c)).collect());
        prop_assume!(!numerator.is_zero());
        let den = degrees.iter().fold(Poly::one(&q), |acc, &d| acc.mul(&Poly::one_minus(&q, &q.one(), d)));
        let f = RationalFunction::new(numerator.clone(), den).unwrap();
        let series = f.expand(24).unwrap();
        let fit = fit_denominator(&series, &degrees).unwrap();
        prop_assert_eq!(&fit.numerator, &numerator);
        prop_assert_eq!(fit.rational(), f);

        let free = RationalFunction::new(Poly::one(&q), fit.denominator()).unwrap().expand(24).unwrap();
        let mut inferred = infer_polynomial_degrees(&free, degrees.len()).unwrap();
        let mut expected = degrees.clone();
        inferred.sort_unstable();
        expected.sort_unstable();
        prop_assert_eq!(inferred, expected);
    }

    #[test]
    fn relative_invariants_of_the_regular_module_have_polynomial_dims(
        which in 0usize..4, top in 2usize..6,
    ) {
        fn check<F: CharacterField>(g: &FiniteMatrixGroup<F>, top: usize) -> Result<(), TestCaseError> {
            let m = relative_invariants_up_to(&BimoduleU::regular(g).unwrap(), g, top).unwrap();
            let n = g.dim();
            for (d, &dim) in m.dims().iter().enumerate() {
                prop_assert_eq!(dim as u64, binomial((n + d - 1) as u64, d as u64));
            }
            Ok(())
        }
        match which {
            0 => check(&symmetric(&RationalField, 3).unwrap(), top)?,
            1 => check(&dihedral(&RationalField, 4).unwrap(), top)?,
            2 => check(&symmetric(&FiniteField::prime(3).unwrap(), 3).unwrap(), top)?,
            _ => check(&symmetric(&FiniteField::prime(2).unwrap(), 2).unwrap(), top)?,
        }
    }

    #[test]
    fn character_classes_are_additive_and_multiplicative(a in 0usize..3, b in 0usize..3) {
        let q = RationalField;
        let g = Arc::new(symmetric(&q, 3).unwrap());
        let theta = Theta::gamma_only(g.clone()).unwrap();
        let modules = [BimoduleU::trivial(&g).unwrap(), BimoduleU::sign(&g).unwrap(), BimoduleU::natural(&g).unwrap()];
        let (u, w) = (&modules[a], &modules[b]);
        let cu = character_of(&theta, u.dim(), u.g_action(), None).unwrap();
        let cw = character_of(&theta, w.dim(), w.g_action(), None).unwrap();
        let sum: Vec<_> = u.g_action().iter().zip(w.g_action()).map(|(x, y)| x.direct_sum(y)).collect();
        let prod: Vec<_> = u.g_action().iter().zip(w.g_action()).map(|(x, y)| x.kronecker(y)).collect();
        prop_assert_eq!(character_of(&theta, u.dim() + w.dim(), &sum, None).unwrap(), cu.add(&cw));
        prop_assert_eq!(character_of(&theta, u.dim() * w.dim(), &prod, None).unwrap(), cu.mul(&cw));
    }

    #[test]
    fn comparison_orders_genuine_modules(ea in 0i64..4, eb in 0i64..4, twice in any::<bool>()) {
        let k = CyclotomicField::new(4).unwrap();
        let g = Arc::new(cyclic_scalar(&k, 4, 1).unwrap());
        let theta = Theta::gamma_only(g.clone()).unwrap();
        let z = k.zeta();
        let line = |e: i64| {
            let images = vec![Matrix::scalar(&k, 1, &Field::pow(&k, &z, e as u64))];
            character_of(&theta, 1, &images, None).unwrap()
        };
        let a = if twice { line(ea).add(&line(ea)) } else { line(ea) };
        let b = line(eb);
        let sum = a.add(&b);
        prop_assert!(compare(&theta, &a, &a, CompareMode::Equality).unwrap().holds);
        let ge = compare(&theta, &sum, &b, CompareMode::Inequality).unwrap();
        prop_assert!(ge.holds && ge.strict);
        prop_assert!(!compare(&theta, &b, &sum, CompareMode::Inequality).unwrap().holds);
        let ab = compare(&theta, &a, &b, CompareMode::Inequality).unwrap().holds;
        prop_assert_eq!(ab, ea == eb);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn resolutions_are_exact_minimal_and_graded(which in 0usize..4, top in 4usize..8) {
        let q = RationalField;
        let g = symmetric(&q, 3).unwrap();
        let u = match which {
            0 => BimoduleU::trivial(&g),
            1 => BimoduleU::sign(&g),
            2 => BimoduleU::natural(&g),
            _ => BimoduleU::regular(&g),
        }
        .unwrap();
        let m = relative_invariants_up_to(&u, &g, top).unwrap();
        let r = GradedAlgebraR::polynomial_from_sparse(&q, m.tower(), &elementary_symmetric(&q, 3)).unwrap();
        let res = truncated_minimal_resolution(&m, &r, None).unwrap();
        prop_assert!(res.is_complex() && res.is_exact() && res.is_minimal() && res.mindeg_increases());
        for &(i, j) in res.tor.dims.keys() {
            prop_assert!(j >= i);
        }
        // Over a polynomial invariant ring every M here is free.
        prop_assert_eq!(&res.tor.hd, &HdReport::Certified(0));
        if which == 3 {
            // Tor_0 of k[V] over k[V]^G is the coinvariant algebra, of total dimension |G|
            // once the truncation reaches its top degree 3.
            prop_assert_eq!(res.tor.totals()[0], g.order());
        }
    }

    #[test]
    fn free_modules_have_projective_dimension_zero(which in 0usize..3) {
        // ±1 on the plane: R = k[V]^G is not polynomial, the sign module is not free.
        let q = RationalField;
        let g = FiniteMatrixGroup::generate(&q, 2, vec![Matrix::scalar(&q, 2, &rat(-1))], DEFAULT_GROUP_CAP).unwrap();
        let s2 = symmetric(&q, 2).unwrap();
        let report = match which {
            0 => invtool_core::groth::verify_omnibus(&BimoduleU::sign(&g).unwrap(), &g, 8).unwrap(),
            1 => invtool_core::groth::verify_omnibus(&BimoduleU::trivial(&g).unwrap(), &g, 8).unwrap(),
            _ => invtool_core::groth::verify_omnibus(&BimoduleU::regular(&s2).unwrap(), &s2, 8).unwrap(),
        };
        prop_assert_eq!(report.free, report.hd == HdReport::Certified(0));
        prop_assert_eq!(report.free, which != 0);
    }

    #[test]
    fn csp_holds_for_coset_actions(n in 2u64..7, sub in 0usize..6) {
        let k = CyclotomicField::new(n).unwrap();
        let g = cyclic_scalar(&k, n, 1).unwrap();
        let c = g.generator_indices()[0];
        let report = csp_check(&g, &[sub % g.order()], c, 3 * n as usize).unwrap();
        prop_assert!(report.burnside_holds);
        prop_assert!(report.passed, "{:?}", report);
    }

    #[test]
    fn csp_holds_for_s3_cosets(sub in 0usize..6, c in 0usize..6) {
        let k = CyclotomicField::new(3).unwrap();
        let g = symmetric(&k, 3).unwrap();
        prop_assume!(regular_certificate_for(&g, c, None).is_ok());
        let report = csp_check(&g, &[sub], c, 10).unwrap();
        prop_assert!(report.burnside_holds);
        prop_assert!(report.passed, "{:?}", report);
    }

    #[test]
    fn series_character_agrees_with_brauer_character(
        p in prop::sample::select(vec![3u64, 5, 7]),
        which in 0usize..3, pick in 0usize..6,
    ) {
        let f = FiniteField::prime(p).unwrap();
        let g = Arc::new(symmetric(&f, 3).unwrap());
        let x = pick % g.order();
        // Only p-regular elements have Brauer characters.
        prop_assume!(!g.element_order(x).is_multiple_of(p));
        let u = match which {
            0 => BimoduleU::trivial(&g),
            1 => BimoduleU::sign(&g),
            _ => BimoduleU::natural(&g),
        }
        .unwrap();
        let ctx = g.lift_context(1).unwrap();
        let direct = brauer_value(&g, &ctx, u.g_action(), x).unwrap();
        let mut q = ModularCharacterQuery::new(g.clone(), x, u, vec![1, 2, 3]);
        q.normalization = Some(elementary_symmetric(&f, 3));
        let rep = character_from_series(&q, 12).unwrap();
        prop_assert!(rep.passed, "{:?}", rep);
        prop_assert_eq!(rep.agrees, Some(true));
        let expected = invtool_core::groth::format_value(&direct);
        prop_assert_eq!(rep.direct.as_deref(), Some(expected.as_str()));
    }
}
