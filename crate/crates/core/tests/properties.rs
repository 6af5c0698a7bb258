use std::collections::BTreeSet;

use gsemi_core::action::{verify_shelling, ComplexAction, PosetAction};
use gsemi_core::arrangement::ArrangementSpec;
use gsemi_core::corpus::{self, ActionBounds, ArrangementBounds};
use gsemi_core::facering::{face_ring, hilbert_from_f, hilbert_function, GradedPresentation};
use gsemi_core::gsemimatroid::{delta_of_support, delta_of_support_direct, QuotientSemimatroid};
use gsemi_core::homology::{betti, is_cm_complex, is_cm_poset, poset_homology_rational};
use gsemi_core::intlat::{smith_divisors, smith_normal_form, torsion_order, IntMatrix, SparseMatrix};
use gsemi_core::poset::{FinitePoset, SimplicialComplexData};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols).prop_map(move |e| {
        IntMatrix::new(rows, cols, e.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..1usize << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// gcd of all k×k minors.
fn determinantal_divisor(a: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(a.rows(), k) {
        for cols in subsets(a.cols(), k) {
            let minor = a.select_rows(&rows).select_columns(&cols);
            g = g.gcd(&minor.determinant().unwrap());
        }
    }
    g
}

fn random_complex() -> impl Strategy<Value = SimplicialComplexData> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec(1usize..(1 << n), 1..=5).prop_map(move |masks| {
            let facets: Vec<Vec<String>> = masks
                .iter()
                .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| format!("v{i}")).collect::<Vec<_>>())
                .filter(|f: &Vec<String>| f.len() <= 3)
                .collect();
            let vertices = (0..n).map(|i| format!("v{i}")).collect();
            SimplicialComplexData::new(vertices, facets).unwrap()
        })
    })
}

fn arrangement() -> impl Strategy<Value = ArrangementSpec> {
    any::<u64>().prop_filter_map("empty corpus draw", |seed| {
        let bounds = ArrangementBounds { max_layers: 120, max_independent: 300, ..ArrangementBounds::default() };
        corpus::random_arrangements(seed, 1, bounds).pop()
    })
}

fn graded_poset() -> impl Strategy<Value = FinitePoset> {
    any::<u64>().prop_map(|seed| corpus::random_graded_posets(seed, 1, 4).pop().unwrap())
}

fn decoupled() -> impl Strategy<Value = (ComplexAction, Vec<u32>)> {
    any::<u64>().prop_map(|seed| corpus::decoupled_actions(seed, 1).pop().unwrap())
}

fn poset_action() -> impl Strategy<Value = PosetAction> {
    any::<u64>().prop_map(|seed| {
        corpus::random_actions(seed, 1, ActionBounds { max_elements: 20, max_group: 8 }).pop().unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_factors(a in any_matrix()) {
        let s = smith_normal_form(&a);
        let d = s.u.mul(&a).unwrap().mul(&s.v).unwrap();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let expected = if i == j { s.divisors[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(i, j), &expected);
            }
        }
        prop_assert!(s.u.determinant().unwrap().abs().is_one());
        prop_assert!(s.v.determinant().unwrap().abs().is_one());
        let nz = s.nonzero_divisors();
        for w in nz.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn smith_divisors_match_minors(a in any_matrix()) {
        let divs = smith_divisors(&a);
        let mut prefix = BigInt::one();
        for (k, d) in divs.iter().enumerate() {
            prefix *= d;
            prop_assert_eq!(&prefix, &determinantal_divisor(&a, k + 1));
        }
        prop_assert!(determinantal_divisor(&a, divs.len() + 1).is_zero() || divs.len() == a.rows().min(a.cols()));
        prop_assert_eq!(torsion_order(&a), prefix);
    }

    #[test]
    fn sparse_and_dense_smith_agree(a in any_matrix()) {
        let mut s = SparseMatrix::new(a.cols());
        for i in 0..a.rows() {
            let row = a.row(i).iter().enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j as u32, i64::try_from(x).unwrap()))
                .collect();
            s.push_row(row);
        }
        prop_assert_eq!(s.smith_divisors(), smith_divisors(&a));
        prop_assert_eq!(s.rank(0), a.rank());
    }

    #[test]
    fn one_dimensional_layers_are_torsion_points(chars in prop::collection::vec((1i64..=6, any::<bool>()), 1..=4)) {
        let row: Vec<i64> = chars.iter().map(|&(a, neg)| if neg { -a } else { a }).collect();
        let spec = ArrangementSpec::from_i64(&[&row], 1).unwrap();
        let mut points = BTreeSet::new();
        for a in &row {
            for k in 0..a.abs() {
                points.insert(BigRational::new(k.into(), a.abs().into()));
            }
        }
        let lp = spec.layers_poset();
        prop_assert_eq!(lp.poset.rank_counts(), vec![1, points.len() as u64]);
        let chi = QuotientSemimatroid::from_arrangement(&spec).char_poly_layers();
        prop_assert_eq!(chi.coeff(0), -BigInt::from(points.len()));
        prop_assert_eq!(lp.poset.characteristic_polynomial().unwrap(), chi);
    }

    #[test]
    fn planar_multiplicities_are_minor_gcds(a in matrix(2, 3)) {
        prop_assume!((0..3).all(|j| !a.column(j).iter().all(Zero::is_zero)));
        let spec = ArrangementSpec::new(a.clone(), 1, 0).unwrap();
        for pair in subsets(3, 2) {
            let sub = a.select_columns(&pair);
            if sub.rank() == 2 {
                prop_assert_eq!(spec.multiplicity(&pair), sub.determinant().unwrap().abs());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn delta_routes_agree(spec in arrangement()) {
        for set in spec.independent_sets().into_iter().filter(|s| !s.is_empty()) {
            prop_assert_eq!(delta_of_support(&spec, &set).unwrap(), delta_of_support_direct(&spec, &set).unwrap());
        }
    }

    #[test]
    fn tutte_evaluations(spec in arrangement()) {
        let s = QuotientSemimatroid::from_arrangement(&spec);
        let t = s.tutte();
        let one = BigInt::one();
        prop_assert_eq!(t.eval(&one, &one), s.weighted_basis_count());
        let ind = spec.independence_poset().poset;
        let h = ind.h_polynomial().unwrap();
        prop_assert_eq!(h.eval(&one), s.weighted_basis_count());
        let two = BigInt::from(2);
        let total: BigInt = spec.independent_sets().iter().map(|x| spec.multiplicity(x)).sum();
        prop_assert_eq!(t.eval(&two, &one), total);
        prop_assert_eq!(BigInt::from(ind.len()), t.eval(&two, &one));
    }

    #[test]
    fn top_layer_prediction(spec in arrangement()) {
        let s = QuotientSemimatroid::from_arrangement(&spec);
        let layers = spec.layers_poset().poset;
        prop_assert_eq!(s.layers_bounded_above(), layers.top().is_some());
        if let Some(top) = s.betti_predictions().proper_part_top {
            let proper = layers.proper_part().unwrap();
            let b = poset_homology_rational(&proper).betti(0);
            let d = spec.d();
            for (k, &r) in b.iter().enumerate() {
                let expected = if k + 1 == d { top.clone() } else { BigInt::zero() };
                prop_assert_eq!(BigInt::from(r), expected);
            }
        }
    }

    #[test]
    fn independence_poset_is_simplicial(spec in arrangement()) {
        let ind = spec.independence_poset().poset;
        prop_assert!(ind.is_simplicial());
        let d = spec.d();
        for x in 0..ind.len() {
            prop_assert!(ind.rank(x) <= d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_characteristic_matches_homology(p in graded_poset()) {
        let lower = p.without_bottom().unwrap();
        let h = poset_homology_rational(&lower);
        let alternating: i64 = h.betti(0).iter().enumerate()
            .map(|(s, &b)| if s % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum();
        prop_assert_eq!(lower.reduced_euler(), alternating);
        let report = p.euler_identities_check().unwrap();
        prop_assert!(report.holds());
    }

    #[test]
    fn order_complex_faces_are_chains(p in graded_poset()) {
        let delta = p.order_complex();
        let by_dim: Vec<u64> = delta.faces().iter().map(|f| f.len() as u64).collect();
        let chains = p.chain_counts();
        prop_assert_eq!(&by_dim[1..], &chains[..by_dim.len() - 1]);
    }

    #[test]
    fn simplicial_polynomials(c in random_complex()) {
        let p = c.face_poset();
        prop_assert!(p.is_simplicial());
        for x in 0..p.len() {
            let expected = if p.rank(x) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(p.mobius_index(p.bottom().unwrap(), x), Some(expected));
        }
        let h = p.h_polynomial().unwrap();
        let chi = p.characteristic_polynomial().unwrap();
        let d = p.length() as u32;
        for t in -2i64..=3 {
            let t = BigInt::from(t);
            let rhs: BigInt = h.coeffs().iter().enumerate()
                .map(|(i, hi)| {
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    hi * sign * num_traits::pow(&t - 1, (d as usize).saturating_sub(i))
                })
                .sum();
            prop_assert_eq!(chi.eval(&t), rhs);
        }
    }

    #[test]
    fn hilbert_function_is_h_over_denominator(c in random_complex()) {
        let p = c.face_poset();
        let h = p.h_polynomial().unwrap();
        let d = p.length().max(0) as u64;
        let table = hilbert_from_f(&p, 4).unwrap();
        for k in 0..=4u64 {
            let expected: BigInt = if d == 0 {
                if k == 0 { BigInt::one() } else { BigInt::zero() }
            } else {
                h.coeffs().iter().enumerate()
                    .filter(|(i, _)| *i as u64 <= k)
                    .map(|(i, hi)| hi * binomial(k - i as u64 + d - 1, d - 1))
                    .sum()
            };
            prop_assert_eq!(BigInt::from(table.values[k as usize]), expected);
        }
    }

    #[test]
    fn face_poset_and_complex_agree_on_cm(c in random_complex(), ch in prop::sample::select(vec![0u64, 2, 3])) {
        let complex_cm = is_cm_complex(&c, ch).cm;
        let lower = c.face_poset().without_bottom().unwrap();
        prop_assert_eq!(is_cm_poset(&lower, ch).cm, complex_cm);
    }

    #[test]
    fn algebraic_hilbert_function_small(c in random_complex()) {
        let p = c.face_poset();
        prop_assume!(p.len() <= 14);
        let pres = face_ring(&p).unwrap();
        prop_assert_eq!(hilbert_function(&pres, 3, 0).unwrap().values, hilbert_from_f(&p, 3).unwrap().values);
    }

    #[test]
    fn quotient_biconditional(action in poset_action()) {
        let report = action.simplicial_quotient_check().unwrap();
        prop_assert!(report.holds);
        prop_assert_eq!(report.translative, report.quotient_simplicial);
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn face_stabilizers_are_vertex_intersections((action, _) in decoupled()) {
        let complex = action.complex().clone();
        for dim_faces in complex.faces() {
            for face in dim_faces {
                let setwise: BTreeSet<usize> = action.stabilizer(&face).into_iter().collect();
                let mut pointwise: BTreeSet<usize> = (0..action.group().order()).collect();
                for &v in &face {
                    let s: BTreeSet<usize> = action.stabilizer(&[v]).into_iter().collect();
                    pointwise = pointwise.intersection(&s).copied().collect();
                }
                prop_assert_eq!(setwise, pointwise);
            }
        }
    }

    #[test]
    fn shellings_give_spheres((action, sigma) in decoupled()) {
        let order = action.shelling_order(&sigma).unwrap();
        let orbit = action.orbit_complex(&sigma);
        prop_assert!(verify_shelling(&orbit, &order).unwrap().shelling);
        let b = betti(&orbit, 0);
        let top = orbit.dim() + 1;
        for (s, &r) in b.iter().enumerate() {
            if s as isize != top {
                prop_assert_eq!(r, 0);
            }
        }
        let listed: BTreeSet<&Vec<u32>> = order.iter().collect();
        prop_assert_eq!(listed.len(), order.len());
        prop_assert_eq!(listed, orbit.facets().iter().collect::<BTreeSet<_>>());
    }

    #[test]
    fn json_round_trips((action, _) in decoupled(), p in graded_poset(), spec in arrangement()) {
        let again = ComplexAction::from_json(&action.to_json()).unwrap();
        prop_assert_eq!(again.to_json(), action.to_json());
        let q = FinitePoset::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(q.to_json(), p.to_json());
        prop_assert_eq!(q.characteristic_polynomial().unwrap(), p.characteristic_polynomial().unwrap());
        let s = ArrangementSpec::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(s.layers_poset().poset.to_json(), spec.layers_poset().poset.to_json());
        let pres = face_ring(&action.complex().face_poset()).unwrap();
        let back = GradedPresentation::from_json(&pres.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), pres.to_json());
    }
}
