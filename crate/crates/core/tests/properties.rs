use proptest::prelude::*;

use torsionlab::complexes::{calibration_ratios, enumerate_tau_chains, epsilon_alpha, ShapeVector};
use torsionlab::{random, ExactMatrix, FieldElement, Poly, Scalar};

/// Cofactor expansion along the first row.
fn cofactor_det(m: &ExactMatrix) -> FieldElement {
    let n = m.rows();
    if n == 0 {
        return FieldElement::one();
    }
    let mut total = FieldElement::zero();
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m.get(0, j) * &cofactor_det(&m.submatrix(&rows, &cols));
        total = if j % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

fn element(coeffs: &[(i64, i64)]) -> FieldElement {
    let cs = coeffs
        .iter()
        .map(|&(re, im)| Scalar::gaussian(re, im))
        .collect();
    FieldElement::from_poly(Poly::new(cs))
}

fn int_matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-4i64..=4, r * c)
            .prop_map(move |xs| ExactMatrix::from_ints(r, c, &xs))
    })
}

fn square_poly_matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(
            proptest::collection::vec((-2i64..=2, -1i64..=1), 1..=2),
            n * n,
        )
        .prop_map(move |entries| ExactMatrix::from_fn(n, n, |i, j| element(&entries[i * n + j])))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-3i64..=3, 1..=3)
        .prop_filter("nonzero", |xs| xs.iter().any(|&x| x != 0))
        .prop_map(|xs| Poly::from_ints(&xs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in square_poly_matrix(4)) {
        prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn rank_identities(m in int_matrix(5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        prop_assert_eq!(m.image_basis().len(), m.rank());
    }

    #[test]
    fn solve_round_trip(m in int_matrix(5), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let y = random::random_int_matrix(&mut rng, m.cols(), 1, 3).column(0);
        let b = m.mul_vec(&y).unwrap();
        let x = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in int_matrix(5)) {
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(FieldElement::is_zero));
        }
    }

    #[test]
    fn normalization_respects_products(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly(), d in nonzero_poly()) {
        let x = FieldElement::normalize(a.clone(), b.clone()).unwrap();
        let y = FieldElement::normalize(c.clone(), d.clone()).unwrap();
        let direct = FieldElement::normalize(&a * &c, &b * &d).unwrap();
        prop_assert_eq!(&x * &y, direct);
        prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x);
    }

    #[test]
    fn coordinate_change_scales_torsion(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let dims = random::random_shape(&mut rng, 3, 3);
        let c = random::random_acyclic(&mut rng, &dims, 3).unwrap();
        let q = (seed % 3) as usize;
        let g = random::random_invertible(&mut rng, dims[q], 2);
        let moved = c.change_coordinates(q, &g).unwrap();
        let det = g.det().unwrap();
        let factor = if q.is_multiple_of(2) { det } else { det.inv().unwrap() };
        prop_assert_eq!(moved.torsion_acyclic().unwrap(), &c.torsion_acyclic().unwrap() * &factor);
    }

    #[test]
    fn cohomology_basis_change_scales_torsion(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let dims = [2, 3, 2];
        let c = random::random_any(&mut rng, &dims, 2).unwrap();
        let h = c.cohomology().bases;
        let base = c.torsion(&h).unwrap();
        for (q, &dim) in dims.iter().enumerate() {
            let k = h.0[q].len();
            if k == 0 {
                continue;
            }
            let g = random::random_invertible(&mut rng, k, 2);
            let mut moved = h.clone();
            let m = ExactMatrix::from_columns(dim, &h.0[q]).unwrap().checked_mul(&g).unwrap();
            moved.0[q] = m.columns();
            let det = g.det().unwrap();
            let factor = if q % 2 == 0 { det } else { det.inv().unwrap() };
            prop_assert_eq!(c.torsion(&moved).unwrap(), &base * &factor);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn calibration_ratio_is_a_constant_sign(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let mut rng = random::rng(seed);
        let dims = random::random_shape(&mut rng, 4, 3);
        let shape = ShapeVector::new(dims).unwrap();
        let chains = enumerate_tau_chains(&shape);
        let alpha = &chains[pick.index(chains.len())];
        let eps = epsilon_alpha(alpha, &shape).unwrap();
        prop_assert!(eps == 1 || eps == -1);
        let ratios = calibration_ratios(alpha, &shape, 20, seed).unwrap();
        prop_assert!(ratios.iter().all(|&r| r == eps), "{:?} vs {}", ratios, eps);
    }
}
