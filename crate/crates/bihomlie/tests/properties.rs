//! Property tests for the exact linear algebra substrate and the twisted
//! osp(1,2) family.

use bihomlie::bihom2::{osp12_family, osp12_lie, yau_twist2};
use bihomlie::bracket::TriBracket;
use bihomlie::graded::{GradedSpace, Vector};
use bihomlie::linalg::{solve_linear, Matrix};
use bihomlie::scalar::Scalar;
use proptest::prelude::*;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar_strategy().prop_filter("nonzero", |s| !s.is_zero())
}

proptest! {
    #[test]
    fn scalar_parse_render_round_trip(s in scalar_strategy()) {
        prop_assert_eq!(Scalar::parse(&s.render()).unwrap(), s);
    }

    #[test]
    fn scalar_field_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn solve_recovers_consistent_systems(
        entries in proptest::collection::vec(scalar_strategy(), 9),
        xs in proptest::collection::vec(scalar_strategy(), 3),
    ) {
        let a = Matrix::from_rows(vec![
            entries[0..3].to_vec(),
            entries[3..6].to_vec(),
            entries[6..9].to_vec(),
        ]).unwrap();
        let x = Vector { coords: xs };
        let b = a.mul_vec(&x).unwrap();
        let out = solve_linear(&a, &b).unwrap();
        let p = out.particular.expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(&p).unwrap(), b.clone());
        // Every kernel vector is an exact solution of the homogeneous system.
        for k in &out.kernel_basis {
            prop_assert!(a.mul_vec(k).unwrap().is_zero());
        }
    }

    #[test]
    fn osp_family_verifies_for_random_nonzero_parameters(
        lambda in nonzero_scalar(),
        mu in nonzero_scalar(),
    ) {
        let fam = osp12_family(&lambda, &mu).unwrap();
        prop_assert!(fam.verify().overall());
    }

    #[test]
    fn skew_fill_is_skew(
        seed_coord in 0usize..4,
        value in nonzero_scalar(),
    ) {
        // Whatever the seeded value, the filled tensor satisfies raw
        // skewsymmetry in the first two slots.
        let space = GradedSpace::new(vec![0, 0, 1, 1], None).unwrap();
        let target = Vector::unit(4, if seed_coord < 2 { 0 } else { 1 })
            .scale(&value);
        let seeds = [([0usize, 2, 3], target)];
        let b = TriBracket::from_seeds_super_skew(&space, &seeds).unwrap();
        prop_assert!(b.is_raw_skew_12(&space));
    }
}

#[test]
fn osp_twist_reproduces_the_family_generator() {
    // The family constructor and a direct Yau twist agree entry-exactly.
    let lie = osp12_lie();
    let lambda = Scalar::ratio(5, 3);
    let mu = Scalar::ratio(-7, 2);
    let alpha = bihomlie::bihom2::osp12_scaling(&lie.space, &lambda).unwrap();
    let beta = bihomlie::bihom2::osp12_scaling(&lie.space, &mu).unwrap();
    let a = yau_twist2(&lie, &alpha, &beta).unwrap();
    let b = osp12_family(&lambda, &mu).unwrap();
    assert_eq!(a, b);
}
