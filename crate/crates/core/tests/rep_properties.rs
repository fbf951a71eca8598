//! Randomized property checks for the linear algebra substrate and the
//! representation engine: reduction laws, the Euler count, the translate
//! formula, Krull-Schmidt stability, and extension middles.

use proptest::prelude::*;
use quivertors::linalg::{FieldSpec, Mat};
use quivertors::quiverrep::{
    decompose, euler_form, ext_dim, ext_space, extension_middle, hom_dim, is_isomorphic,
    tau, Representation,
};
use quivertors::rng::DetRng;
use quivertors::universe::{d4_quiver, linear_quiver, Universe};

fn f5() -> FieldSpec {
    FieldSpec::new(5).unwrap()
}

prop_compose! {
    fn arb_mat(max_dim: usize)
        (rows in 0..=max_dim, cols in 0..=max_dim)
        (entries in proptest::collection::vec(0u64..5, rows * cols),
         rows in Just(rows), cols in Just(cols))
        -> Mat
    {
        Mat::from_fn(f5(), rows, cols, |r, c| entries[r * cols + c])
    }
}

proptest! {
    #[test]
    fn reduce_is_idempotent_on_rref(m in arb_mat(5)) {
        let red = m.reduce();
        let again = red.rref.reduce();
        prop_assert_eq!(&again.rref, &red.rref);
        prop_assert_eq!(again.rank, red.rank);
    }

    #[test]
    fn rank_is_transpose_invariant(m in arb_mat(5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_succeeds_iff_ranks_agree(
        (m, rhs) in arb_mat(4).prop_flat_map(|m| {
            let rows = m.rows();
            (Just(m), proptest::collection::vec(0u64..5, rows))
        })
    ) {
        let mut col = Mat::zero(f5(), m.rows(), 1);
        for (i, &x) in rhs.iter().enumerate() {
            col.set(i, 0, x);
        }
        let augmented = Mat::hstack(&[&m, &col]);
        let solvable = m.solve(&rhs).unwrap().is_some();
        prop_assert_eq!(solvable, augmented.rank() == m.rank());
        if let Some(x) = m.solve(&rhs).unwrap() {
            let mut xm = Mat::zero(f5(), m.cols(), 1);
            for (i, &v) in x.iter().enumerate() {
                xm.set(i, 0, v);
            }
            prop_assert_eq!(m.mul(&xm), col);
        }
    }

    #[test]
    fn kernel_columns_annihilate(m in arb_mat(5)) {
        let k = m.kernel_basis();
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
        prop_assert_eq!(m.cols(), m.rank() + k.cols());
    }
}

fn arb_a3_rep() -> impl Strategy<Value = Representation> {
    (0usize..=2, 0usize..=2, 0usize..=2)
        .prop_flat_map(|(d0, d1, d2)| {
            let e01 = proptest::collection::vec(0u64..5, d0 * d1);
            let e12 = proptest::collection::vec(0u64..5, d1 * d2);
            (Just((d0, d1, d2)), e01, e12)
        })
        .prop_map(|((d0, d1, d2), e01, e12)| {
            let m01 = Mat::from_fn(f5(), d1, d0, |r, c| e01[r * d0 + c]);
            let m12 = Mat::from_fn(f5(), d2, d1, |r, c| e12[r * d1 + c]);
            Representation::new(linear_quiver(3), f5(), vec![d0, d1, d2], vec![m01, m12])
                .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_minus_ext_is_the_euler_count(m in arb_a3_rep(), n in arb_a3_rep()) {
        let expected = euler_form(&linear_quiver(3), m.dims(), n.dims()).unwrap();
        let got = hom_dim(&m, &n) as i64 - ext_dim(&m, &n) as i64;
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn middle_of_any_cocycle_has_additive_dimension(m in arb_a3_rep(), n in arb_a3_rep(), pick in proptest::collection::vec(0u64..5, 8)) {
        let ext = ext_space(&m, &n);
        if ext.dim > 0 {
            let coeffs: Vec<u64> = (0..ext.dim).map(|i| pick[i % pick.len()]).collect();
            let middle = extension_middle(&m, &n, &ext.combine(f5(), &coeffs)).unwrap();
            prop_assert_eq!(middle.total_dim(), m.total_dim() + n.total_dim());
            if coeffs.iter().all(|&c| c == 0) {
                prop_assert!(is_isomorphic(&middle, &m.direct_sum(&n)));
            }
        } else {
            prop_assert_eq!(ext_dim(&m, &n), 0);
        }
    }
}

/// Conjugates a representation by random invertible changes of basis at
/// every vertex, producing an isomorphic copy that no longer looks blocky.
fn shuffle(rep: &Representation, rng: &mut DetRng) -> Representation {
    let field = rep.field();
    let quiver = rep.quiver().clone();
    let basis: Vec<Mat> = rep
        .dims()
        .iter()
        .map(|&d| loop {
            let g = Mat::from_fn(field, d, d, |_, _| rng.below(field.prime));
            if g.is_invertible() {
                break g;
            }
        })
        .collect();
    let maps: Vec<Mat> = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            basis[a.tgt].mul(rep.map(i)).mul(&basis[a.src].inverse().unwrap())
        })
        .collect();
    Representation::new(quiver, field, rep.dims().to_vec(), maps).unwrap()
}

#[test]
fn decompose_is_stable_under_shuffled_direct_sums() {
    let u = Universe::dynkin(d4_quiver(), f5()).unwrap();
    let mut rng = DetRng::new(0x5eed);
    for trial in 0..40 {
        let i = rng.below(u.len() as u64) as usize;
        let j = rng.below(u.len() as u64) as usize;
        let shuffled = shuffle(&u.rep(i).direct_sum(u.rep(j)), &mut rng);
        let mut parts = decompose(&shuffled);
        assert_eq!(parts.len(), 2, "trial {trial}");
        // Match parts to {i, j} as a multiset.
        let pos = parts.iter().position(|p| is_isomorphic(p, u.rep(i)));
        assert!(pos.is_some(), "trial {trial}: no summand matches {}", u.label(i));
        parts.remove(pos.unwrap());
        assert!(
            is_isomorphic(&parts[0], u.rep(j)),
            "trial {trial}: leftover summand differs from {}",
            u.label(j)
        );
    }
}

#[test]
fn translate_formula_on_random_catalog_pairs() {
    let universes = vec![
        Universe::dynkin(linear_quiver(3), f5()).unwrap(),
        Universe::dynkin(d4_quiver(), f5()).unwrap(),
        Universe::kronecker(f5(), 5).unwrap(),
    ];
    let mut rng = DetRng::new(0xa11f);
    for u in &universes {
        for _ in 0..120 {
            let x = rng.below(u.len() as u64) as usize;
            let y = rng.below(u.len() as u64) as usize;
            match tau(u.rep(x)).unwrap() {
                Some(tx) => {
                    assert_eq!(
                        u.ext(x, y),
                        hom_dim(u.rep(y), &tx),
                        "translate formula fails at ({}, {})",
                        u.label(x),
                        u.label(y)
                    );
                }
                None => {
                    assert_eq!(u.ext(x, y), 0, "projective {} has extensions", u.label(x));
                }
            }
        }
    }
}
