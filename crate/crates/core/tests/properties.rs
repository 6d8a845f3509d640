use proptest::prelude::*;
use proptest::sample::select;

use toric_codes::codes::{LinearCode, Matrix};
use toric_codes::gf::{Fe, Field};
use toric_codes::lattice::{DivisorData, LatticePoint, LatticePolytope};
use toric_codes::quantum::{
    css_construct, find_dualizing_weights, rescale_char2, verify_containment,
};
use toric_codes::toric::{build_code, SupportSet, ToricCodeSpec};

fn code_strategy() -> impl Strategy<Value = (u64, usize, Vec<Vec<u32>>)> {
    (select(vec![2u64, 3, 4, 5, 8, 9]), 1usize..=7)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), 1usize..=n))
        .prop_flat_map(|(q, n, k)| {
            (
                Just(q),
                Just(n),
                prop::collection::vec(prop::collection::vec(0..q as u32, n), k),
            )
        })
}

fn code(q: u64, n: usize, rows: &[Vec<u32>]) -> LinearCode {
    LinearCode::from_matrix(Matrix::from_ints(&Field::with_order(q).unwrap(), n, rows).unwrap())
        .unwrap()
}

proptest! {
    #[test]
    fn rref_is_idempotent_and_rank_preserving((q, n, rows) in code_strategy()) {
        let f = Field::with_order(q).unwrap();
        let m = Matrix::from_ints(&f, n, &rows).unwrap();
        let mut r = m.clone();
        let rank = r.rref();
        prop_assert_eq!(rank, m.rank());
        let mut again = r.clone();
        again.rref();
        prop_assert_eq!(again, r.clone());
        let c = LinearCode::from_matrix(m.clone()).unwrap();
        for row in m.rows() {
            prop_assert!(c.contains_word(row));
        }
        prop_assert!(m.mul(&m.nullspace().transpose()).unwrap().is_zero());
    }

    #[test]
    fn schur_square_contains_code_with_ones((q, n, rows) in code_strategy()) {
        let mut rows = rows;
        rows.push(vec![1; n]);
        let c = code(q, n, &rows);
        prop_assert!(c.schur_square().contains(&c).unwrap());
    }

    #[test]
    fn dual_distance_by_columns_matches((q, n, rows) in code_strategy()) {
        let c = code(q, n, &rows);
        let dual = c.dual();
        let cfg = Default::default();
        let found = c.dual_distance_by_columns(&cfg, |_| true).unwrap();
        match found {
            None => prop_assert_eq!(dual.k(), 0),
            Some(dep) => {
                prop_assert!(dual.contains_word(&dep.witness));
                prop_assert_eq!(dep.weight, dual.min_distance().unwrap());
            }
        }
    }

    #[test]
    fn lattice_counts_are_translation_invariant(d in 1i64..5, e in 1i64..5, r in 1i64..5, a in -5i64..5, b in -5i64..5) {
        let poly = LatticePolytope::hirzebruch(d, e, r).unwrap();
        let moved = poly.translate(LatticePoint::new(a, b));
        prop_assert_eq!(poly.lattice_points().len(), moved.lattice_points().len());
        prop_assert_eq!(poly.area2(), moved.area2());
        let fan = moved.normal_fan().refine();
        let div = DivisorData::of_polytope(&moved, &fan).unwrap();
        prop_assert_eq!(div.pair(&div).unwrap(), moved.area2());
        prop_assert_eq!(moved.dilate(2).area2(), 4 * poly.area2());
    }

    #[test]
    fn char2_pipeline_invariants(q in select(vec![4u64, 8]), masks in prop::array::uniform4(0u32..128)) {
        let f = Field::with_order(q).unwrap();
        let units = f.units();
        let pick = |m: u32| -> Vec<Fe> { units.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &x)| x).collect() };
        let support = SupportSet::from_sets(&f, &pick(masks[0]), &pick(masks[1]), &pick(masks[2]), &pick(masks[3])).unwrap();
        prop_assume!(!support.is_empty());
        let poly = LatticePolytope::hirzebruch(1, 1, 1).unwrap();
        let built = build_code(&ToricCodeSpec::new(poly, support)).unwrap();
        if let Ok(w) = find_dualizing_weights(&built.code) {
            prop_assert!(w.sum_zero);
            prop_assert!(w.restricted.len() >= w.nullity);
            prop_assert!(verify_containment(&built.code, &w).unwrap());
            let ct = rescale_char2(&built.code, &w).unwrap();
            let cfg = Default::default();
            if let Ok(css) = css_construct(&ct, &cfg) {
                prop_assert!(css.commutes());
                prop_assert_eq!(css.k, css.n - 2 * ct.k());
            }
        }
    }
}
