mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topo_invariants::cohomology::{self, ClassCoords, Ring};
use topo_invariants::complex::SimplicialComplex;
use topo_invariants::f2::F2Vec;
use topo_invariants::quadform::{self, QuadraticForm};
use topo_invariants::{fixtures, panel, steenrod};

fn small_mask() -> impl Strategy<Value = u16> {
    // keep at most four vertices so simplices stay of dimension ≤ 3
    (1u16..256).prop_map(|m| {
        let mut out = 0u16;
        let mut left = 4;
        for b in 0..8 {
            if m & (1 << b) != 0 && left > 0 {
                out |= 1 << b;
                left -= 1;
            }
        }
        out
    })
}

fn complexes() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(small_mask(), 2..8).prop_map(|m| complex_from_masks(&m))
}

fn binom_mod2(n: usize, k: usize) -> bool {
    k <= n && (k & !n) == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn boundary_of_boundary_vanishes(k in complexes()) {
        for d in 2..=k.dim() {
            let prod = cohomology::boundary_matrix(&k, d - 1).mul(&cohomology::boundary_matrix(&k, d));
            for i in 0..prod.rows() {
                prop_assert!(prod.row(i).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn universal_coefficients(k in complexes()) {
        let z = cohomology::homology(&k, Ring::Z);
        let f2 = cohomology::homology(&k, Ring::F2);
        let even = |d: usize| z[d].torsion.iter().filter(|t| (*t % BigInt::from(2)).is_zero()).count();
        for d in 0..=k.dim() {
            let expected = z[d].betti + even(d) + if d > 0 { even(d - 1) } else { 0 };
            prop_assert_eq!(f2[d].betti, expected);
        }
    }

    #[test]
    fn cup_product_is_associative_commutative_unital(k in complexes()) {
        let one = cohomology::unit(&k, Ring::F2);
        let classes: Vec<_> = (0..=k.dim()).flat_map(|d| cohomology::f2_basis(&k, d)).collect();
        for x in &classes {
            prop_assert!(cup(&k, &one, x).same_class(x));
            for y in &classes {
                prop_assert!(cup(&k, x, y).same_class(&cup(&k, y, x)));
                for z in &classes {
                    let l = cup(&k, &cup(&k, x, y), z);
                    let r = cup(&k, x, &cup(&k, y, z));
                    prop_assert!(l.same_class(&r));
                }
            }
        }
    }

    #[test]
    fn squares_satisfy_axioms(k in complexes()) {
        let n = k.dim();
        for p in 0..=n {
            let classes = sample_classes(&k, p);
            for x in &classes {
                prop_assert!(steenrod::sq(&k, 0, x).unwrap().same_class(x));
                prop_assert!(steenrod::sq(&k, p, x).unwrap().same_class(&cup(&k, x, x)));
                for i in p + 1..=n {
                    prop_assert!(steenrod::sq(&k, i, x).unwrap().is_zero());
                }
                // Sq^1 is the reduction of the Bockstein; Sq^1 Sq^1 = 0
                let b = steenrod::bockstein(&k, x).unwrap();
                if p < n {
                    let red = cohomology::reduce_mod2(&k, &b.class).unwrap();
                    prop_assert!(red.same_class(&steenrod::sq(&k, 1, x).unwrap()));
                    let twice = steenrod::sq(&k, 1, &steenrod::sq(&k, 1, x).unwrap()).unwrap();
                    prop_assert!(twice.is_zero());
                }
                // 2β = 0: the Bockstein lands in torsion
                if let ClassCoords::Z { free, .. } = b.class.coords() {
                    prop_assert!(free.iter().all(Zero::is_zero));
                }
            }
            for x in &classes {
                for y in &classes {
                    let s = x.add(y).unwrap();
                    for i in 0..=n - p {
                        let lhs = steenrod::sq(&k, i, &s).unwrap();
                        let rhs = steenrod::sq(&k, i, x).unwrap().add(&steenrod::sq(&k, i, y).unwrap()).unwrap();
                        prop_assert!(lhs.same_class(&rhs));
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_formula(k in complexes()) {
        let n = k.dim();
        for p in 0..=n {
            for q in 0..=n - p {
                for x in cohomology::f2_basis(&k, p) {
                    for y in cohomology::f2_basis(&k, q) {
                        let xy = cup(&k, &x, &y);
                        for s in 0..=n - p - q {
                            let lhs = steenrod::sq(&k, s, &xy).unwrap();
                            let terms: Vec<_> = (0..=s)
                                .map(|i| cup(&k, &steenrod::sq(&k, i, &x).unwrap(), &steenrod::sq(&k, s - i, &y).unwrap()))
                                .collect();
                            prop_assert!(lhs.same_class(&sum(&k, p + q + s, &terms)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn adem_relations(k in complexes()) {
        let n = k.dim();
        for p in 0..=n {
            for x in cohomology::f2_basis(&k, p) {
                for b in 1..=n {
                    for a in 1..2 * b {
                        if p + a + b > n {
                            continue;
                        }
                        let lhs = steenrod::sq(&k, a, &steenrod::sq(&k, b, &x).unwrap()).unwrap();
                        let terms: Vec<_> = (0..=a / 2)
                            .filter(|&j| binom_mod2(b - 1 - j, a - 2 * j))
                            .map(|j| steenrod::sq(&k, a + b - j, &steenrod::sq(&k, j, &x).unwrap()).unwrap())
                            .collect();
                        prop_assert!(lhs.same_class(&sum(&k, p + a + b, &terms)));
                    }
                }
            }
        }
    }

    #[test]
    fn cup_i_coboundary_formula(k in complexes(), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = k.dim();
        let mut random = |d: usize| {
            let bits: Vec<bool> = (0..k.count(d)).map(|_| rng.gen_bool(0.5)).collect();
            F2Vec::from_bools(&bits)
        };
        for p in 0..=n {
            for q in 0..=n - p {
                let (x, y) = (random(p), random(q));
                let dx = cohomology::coboundary_f2(&k, p, &x);
                let dy = cohomology::coboundary_f2(&k, q, &y);
                for i in 0..=p.min(q) {
                    let deg = p + q - i;
                    if deg + 1 > n {
                        continue;
                    }
                    let mut lhs = cohomology::coboundary_f2(&k, deg, &steenrod::cup_i(&k, &x, p, &y, q, i).unwrap());
                    if i > 0 {
                        lhs.xor_assign(&steenrod::cup_i(&k, &x, p, &y, q, i - 1).unwrap());
                        lhs.xor_assign(&steenrod::cup_i(&k, &y, q, &x, p, i - 1).unwrap());
                    }
                    if i <= (p + 1).min(q) {
                        lhs.xor_assign(&steenrod::cup_i(&k, &dx, p + 1, &y, q, i).unwrap());
                    }
                    if i <= p.min(q + 1) {
                        lhs.xor_assign(&steenrod::cup_i(&k, &x, p, &dy, q + 1, i).unwrap());
                    }
                    prop_assert!(lhs.is_zero(), "p={} q={} i={}", p, q, i);
                }
            }
        }
    }

    #[test]
    fn homology_is_invariant_under_relabeling(k in complexes(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = relabeled(&k, &mut rng);
        prop_assert_eq!(cohomology::homology(&k, Ring::Z), cohomology::homology(&r, Ring::Z));
        prop_assert_eq!(k.f_vector(), r.f_vector());
    }

    #[test]
    fn reciprocity_and_local_signature(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_diagonal_form(&mut rng, 6);
        prop_assert_eq!(quadform::reciprocity_residual(&f), 0);
        prop_assert_eq!(quadform::signature_mod8_from_local(&f) as i64, quadform::real_signature(&f).rem_euclid(8));
    }

    #[test]
    fn excess_vanishes_away_from_relevant_primes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_diagonal_form(&mut rng, 6);
        for p in [17u64, 19, 23, 29, 31] {
            prop_assert_eq!(quadform::local_invariants(&f, p).unwrap().p_excess, 0);
        }
    }

    #[test]
    fn local_invariants_survive_unimodular_congruence(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed % 4) as usize;
        let f = random_integral_form(&mut rng, n);
        let g = f.congruent(&random_unimodular(&mut rng, n)).unwrap();
        prop_assert_eq!(quadform::real_signature(&f), quadform::real_signature(&g));
        prop_assert_eq!(quadform::oddity(&f), quadform::oddity(&g));
        prop_assert_eq!(f.det(), g.det());
        for p in [2u64, 3, 5, 7, 11, 13] {
            prop_assert_eq!(quadform::local_invariants(&f, p).unwrap().p_excess, quadform::local_invariants(&g, p).unwrap().p_excess);
        }
        prop_assert!(quadform::rationally_equivalent(&f, &g).equivalent);
    }

    #[test]
    fn rational_equivalence_is_an_equivalence_relation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // tiny entry range so that equivalent pairs actually occur
        let pick = |rng: &mut ChaCha8Rng| {
            use rand::Rng;
            let entries: Vec<i64> = (0..2).map(|_| [1i64, -1, 2, 3, -3][rng.gen_range(0..5)]).collect();
            QuadraticForm::from_integers(&[vec![entries[0], 0], vec![0, entries[1]]]).unwrap()
        };
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let eq = |x: &QuadraticForm, y: &QuadraticForm| quadform::rationally_equivalent(x, y).equivalent;
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
    }
}

#[test]
fn pairing_is_symmetric_on_manifold_fixtures() {
    for (name, k) in fixtures::manifolds() {
        let n = k.dim();
        for p in 0..=n {
            for x in cohomology::f2_basis(&k, p) {
                for y in cohomology::f2_basis(&k, n - p) {
                    let a = cohomology::pairing_f2(&k, &cup(&k, &x, &y)).unwrap();
                    let b = cohomology::pairing_f2(&k, &cup(&k, &y, &x)).unwrap();
                    assert_eq!(a, b, "{name} degree {p}");
                }
            }
        }
    }
}

#[test]
fn orientation_flip_negates_signature_only() {
    for k in [fixtures::cp2(), fixtures::s2_x_s2(), fixtures::s4()] {
        let f = panel::intersection_form(&k).unwrap();
        let r = panel::intersection_form_with(&k, panel::Orientation::Reversed).unwrap();
        let sf = quadform::real_signature(&f.quadratic_form());
        let sr = quadform::real_signature(&r.quadratic_form());
        assert_eq!(sf, -sr);
        assert_eq!(
            quadform::is_even(&f.quadratic_form()),
            quadform::is_even(&r.quadratic_form())
        );
    }
}

#[test]
fn compare_panels_is_symmetric() {
    let panels: Vec<_> = fixtures::manifolds()
        .iter()
        .map(|(_, k)| panel::panel(k).unwrap())
        .collect();
    for a in &panels {
        for b in &panels {
            let ab = panel::compare_panels(a, b);
            let ba = panel::compare_panels(b, a);
            assert_eq!(ab, ba);
        }
    }
}
