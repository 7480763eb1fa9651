//! Quadratic algebras, the hyperbolic form, `T*_θ`-extensions, isotropic
//! ideals and complements, series lifting, and reconstruction round-trips.

use std::collections::BTreeMap;

use bihomlie::catalog;
use bihomlie::graded::{GradedSpace, Subspace, Vector};
use bihomlie::linalg::{rank, EvenMap, Matrix};
use bihomlie::quadratic::{
    isotropic_complement, isotropic_ideal_check, lemma_theta_condition, qg_form,
    reconstruct_tstar, series_lift_check, tstar_extension, verify_quadratic, QuadraticAlgebra,
    SuperForm,
};
use bihomlie::rep::CocycleTensor;
use bihomlie::scalar::Scalar;
use bihomlie::threebihom::ThreeBihomLieSuper;
use bihomlie::Error;

fn unit(dim: usize, i: usize) -> Vector {
    Vector::unit(dim, i)
}

fn dual_half_ideal(dim2: usize) -> Subspace {
    let n = dim2 / 2;
    let vectors: Vec<Vector> = (n..dim2).map(|i| unit(dim2, i)).collect();
    Subspace::from_vectors(dim2, &vectors).unwrap()
}

fn dual_valued_cocycle(
    g: &ThreeBihomLieSuper,
    entries: &[([usize; 3], Vector)],
) -> CocycleTensor {
    let map: BTreeMap<[usize; 3], Vector> = entries.iter().cloned().collect();
    CocycleTensor::new(&g.space, &g.space.dual(), map).unwrap()
}

#[test]
fn abelian_even_identity_form_is_quadratic() {
    let g = catalog::abelian(vec![0, 0]);
    let form = SuperForm::new(&g.space, Matrix::identity(2)).unwrap();
    let qa = QuadraticAlgebra::new(g, form).unwrap();
    assert!(verify_quadratic(&qa).overall());
}

#[test]
fn zero_row_breaks_nondegeneracy() {
    let g = catalog::abelian(vec![0, 0]);
    let mut gram = Matrix::identity(2);
    *gram.get_mut(0, 0) = Scalar::zero();
    let form = SuperForm::new(&g.space, gram).unwrap();
    let qa = QuadraticAlgebra::new(g, form).unwrap();
    let report = verify_quadratic(&qa);
    assert!(!report.check("nondegenerate").unwrap().passed());
}

#[test]
fn qg_form_is_the_signed_dual_pairing() {
    let space = GradedSpace::new(vec![0, 1], None).unwrap();
    let form = qg_form(&space);
    // Even basis vector pairs with its dual without a sign.
    assert_eq!(form.value_basis(0, 2), Scalar::one());
    assert_eq!(form.value_basis(2, 0), Scalar::one());
    // Odd basis vector picks up the Koszul sign on the swapped slot.
    assert_eq!(form.value_basis(1, 3), -Scalar::one());
    assert_eq!(form.value_basis(3, 1), Scalar::one());
    // Both summands are isotropic.
    for i in 0..2 {
        for j in 0..2 {
            assert!(form.value_basis(i, j).is_zero());
            assert!(form.value_basis(2 + i, 2 + j).is_zero());
        }
    }
}

#[test]
fn qg_form_rank_on_n4_is_doubled_dimension() {
    let n4 = catalog::n4();
    let form = qg_form(&n4.space);
    assert_eq!(rank(form.gram()), 8);
}

#[test]
fn lemma_condition_zero_cocycle() {
    let n4 = catalog::n4();
    let theta = CocycleTensor::zero(&n4.space, &n4.space.dual());
    let (holds, witness) = lemma_theta_condition(&n4, &theta);
    assert!(holds);
    assert!(witness.is_none());
}

#[test]
fn lemma_condition_fails_with_witness() {
    // theta(e1,e2,e3) = e4*: the condition at (e1,e2,e3,e4) evaluates to
    // 1 + 0.
    let n4 = catalog::n4();
    let theta = dual_valued_cocycle(&n4, &[([0, 1, 2], unit(4, 3))]);
    let (holds, witness) = lemma_theta_condition(&n4, &theta);
    assert!(!holds);
    let w = witness.unwrap();
    assert_eq!(w.tuple, vec![0, 1, 2, 3]);
    assert_eq!(w.residual, vec![Scalar::one()]);
}

#[test]
fn tstar_zero_on_n4_is_quadratic() {
    let n4 = catalog::n4();
    let theta = CocycleTensor::zero(&n4.space, &n4.space.dual());
    let ext = tstar_extension(&n4, &theta).unwrap();
    assert_eq!(ext.quadratic.dim(), 8);
    assert!(verify_quadratic(&ext.quadratic).overall());
    assert!(ext.quadratic.algebra.verify().overall());
}

#[test]
fn tstar_zero_on_abelian_is_hyperbolic_abelian() {
    let g = catalog::abelian(vec![0]);
    let theta = CocycleTensor::zero(&g.space, &g.space.dual());
    let ext = tstar_extension(&g, &theta).unwrap();
    assert!(ext.quadratic.algebra.bracket.is_zero());
    assert!(verify_quadratic(&ext.quadratic).overall());
}

#[test]
fn tstar_gates_on_failing_lemma_condition() {
    let n4 = catalog::n4();
    let theta = dual_valued_cocycle(&n4, &[([0, 1, 2], unit(4, 3))]);
    match tstar_extension(&n4, &theta) {
        Err(Error::FailedPrecondition { gate, .. }) => {
            // This theta is not even skew, so the cocycle gate trips first;
            // a skew-but-incompatible one trips the lemma gate below.
            assert!(gate == "cocycle_verifies" || gate == "lemma_theta_condition");
        }
        other => panic!("expected gating failure, got {other:?}"),
    }
}

/// The smallest nonzero admissible dual-valued cocycle: on the
/// one-dimensional odd abelian algebra, `theta(f,f,f) = f*` is fully
/// supersymmetric, is a cocycle for the (zero) coadjoint action, and
/// satisfies the form-compatibility condition.
fn odd1_cocycle(g: &ThreeBihomLieSuper) -> CocycleTensor {
    dual_valued_cocycle(g, &[([0, 0, 0], unit(1, 0))])
}

#[test]
fn tstar_with_nonzero_cocycle_on_odd_line() {
    let g = catalog::odd1();
    let theta = odd1_cocycle(&g);
    let (holds, _) = lemma_theta_condition(&g, &theta);
    assert!(holds);
    let ext = tstar_extension(&g, &theta).unwrap();
    assert_eq!(ext.quadratic.dim(), 2);
    // [f, f, f] = f*.
    assert_eq!(ext.quadratic.algebra.bracket.eval_basis([0, 0, 0]), unit(2, 1));
    assert!(verify_quadratic(&ext.quadratic).overall());
}

#[test]
fn lemma_biconditional_matches_quadratic_verdict() {
    // Across positive and negative cocycle candidates, the quadratic
    // verdict on (g ⊕ g*, q_g) must coincide with the theta condition.
    // Built directly on abelian algebras where every skew tensor is a
    // cocycle, so the invariance check is isolated.
    let g = catalog::abelian(vec![1, 1]);
    let dual = g.space.dual();
    let candidates: Vec<CocycleTensor> = vec![
        CocycleTensor::zero(&g.space, &dual),
        dual_valued_cocycle(&g, &[([0, 0, 0], unit(2, 1))]),
        dual_valued_cocycle(&g, &[([0, 0, 0], unit(2, 0))]),
        dual_valued_cocycle(&g, &[([0, 0, 1], unit(2, 0)), ([0, 1, 0], unit(2, 0)), ([1, 0, 0], unit(2, 0))]),
    ];
    let mut seen_fail = false;
    for theta in &candidates {
        let (holds, _) = lemma_theta_condition(&g, theta);
        // Build the putative extension bundle without the lemma gate by
        // assembling it through the T_theta machinery directly.
        let coad = bihomlie::quadratic::coadjoint(&g).unwrap();
        let cocycle_ok = bihomlie::rep::verify_cocycle(&g, &coad.rep, theta)
            .unwrap()
            .overall();
        if !cocycle_ok {
            continue;
        }
        let bundle = bihomlie::rep::t_theta_extension(&g, &coad.rep, theta).unwrap();
        let qa = QuadraticAlgebra::new(bundle, qg_form(&g.space)).unwrap();
        let verdict = verify_quadratic(&qa).overall();
        assert_eq!(verdict, holds, "verdicts split for {theta:?}");
        seen_fail |= !holds;
    }
    assert!(seen_fail, "the candidate battery never exercised a failure");
}

#[test]
fn series_lift_nilpotent_n4() {
    let n4 = catalog::n4();
    let theta = CocycleTensor::zero(&n4.space, &n4.space.dual());
    let lift = series_lift_check(&n4, &theta).unwrap();
    assert!(lift.report.overall());
    assert_eq!(lift.base_nilpotent, (true, Some(2)));
    assert!(lift.extension_nilpotent.0);
    assert!(lift.extension_solvable.0);
}

#[test]
fn series_lift_solvable_l3() {
    let l3 = catalog::l3();
    let theta = CocycleTensor::zero(&l3.space, &l3.space.dual());
    let lift = series_lift_check(&l3, &theta).unwrap();
    assert!(lift.report.overall());
    assert!(lift.base_solvable.0);
    assert!(!lift.base_nilpotent.0);
    assert!(lift.extension_solvable.0);
}

#[test]
fn isotropic_ideal_check_on_tstar_dual() {
    let n4 = catalog::n4();
    let theta = CocycleTensor::zero(&n4.space, &n4.space.dual());
    let ext = tstar_extension(&n4, &theta).unwrap();
    let ideal = dual_half_ideal(8);
    let report = isotropic_ideal_check(&ext.quadratic, &ideal);
    assert!(report.overall(), "{}", report.render_json());
    // The strong vanishing holds on the ideal slots; the whole-algebra
    // variant does not on a genuine extension, and the report records it.
    assert!(report
        .check("bracket_beta_ideal_into_alpha_ideal_vanishes")
        .unwrap()
        .passed());
    assert!(report.notes.iter().any(|n| n.contains("although")));
}

#[test]
fn isotropic_ideal_check_in_abelian_plane() {
    // gram diag(1, -1): the line through e1 + e2 is isotropic and an ideal.
    let g = catalog::abelian(vec![0, 0]);
    let gram = Matrix::diagonal(&[Scalar::one(), -Scalar::one()]);
    let qa = QuadraticAlgebra::new(g, SuperForm::new(&GradedSpace::even(2), gram).unwrap()).unwrap();
    let ideal = Subspace::from_vectors(2, &[unit(2, 0).add(&unit(2, 1))]).unwrap();
    let report = isotropic_ideal_check(&qa, &ideal);
    assert!(report.overall(), "{}", report.render_json());
    assert!(report.notes.iter().any(|n| n.contains("also holds")));
}

#[test]
fn non_isotropic_subspace_fails_with_witness() {
    let g = catalog::abelian(vec![0, 0]);
    let gram = Matrix::diagonal(&[Scalar::one(), -Scalar::one()]);
    let qa = QuadraticAlgebra::new(g, SuperForm::new(&GradedSpace::even(2), gram).unwrap()).unwrap();
    let not_isotropic = Subspace::from_vectors(2, &[unit(2, 0)]).unwrap();
    let report = isotropic_ideal_check(&qa, &not_isotropic);
    let check = report.check("isotropic").unwrap();
    assert!(!check.passed());
    assert_eq!(check.witness.as_ref().unwrap().residual, vec![Scalar::one()]);
}

#[test]
fn isotropic_complement_of_dual_half_is_the_base() {
    let n4 = catalog::n4();
    let theta = CocycleTensor::zero(&n4.space, &n4.space.dual());
    let ext = tstar_extension(&n4, &theta).unwrap();
    let ideal = dual_half_ideal(8);
    let b0 = isotropic_complement(&ext.quadratic, &ideal).unwrap();
    let expected =
        Subspace::from_vectors(8, &(0..4).map(|i| unit(8, i)).collect::<Vec<_>>()).unwrap();
    assert_eq!(b0, expected);
}

#[test]
fn isotropic_complement_with_witt_correction() {
    // diag(1, -1) plane, ideal spanned by e1 + e2: the greedy complement e1
    // is not isotropic, and the correction lands on the line e1 - e2.
    let g = catalog::abelian(vec![0, 0]);
    let gram = Matrix::diagonal(&[Scalar::one(), -Scalar::one()]);
    let qa = QuadraticAlgebra::new(g, SuperForm::new(&GradedSpace::even(2), gram).unwrap()).unwrap();
    let ideal = Subspace::from_vectors(2, &[unit(2, 0).add(&unit(2, 1))]).unwrap();
    let b0 = isotropic_complement(&qa, &ideal).unwrap();
    let expected = Subspace::from_vectors(2, &[unit(2, 0).sub(&unit(2, 1))]).unwrap();
    assert_eq!(b0, expected);
}

#[test]
fn odd_odd_block_needs_no_correction() {
    // In the odd-odd block supersymmetry is antisymmetry, so q(c, c) = 0
    // automatically and the correction vanishes.
    let g = catalog::odd1();
    let theta = CocycleTensor::zero(&g.space, &g.space.dual());
    let ext = tstar_extension(&g, &theta).unwrap();
    let ideal = dual_half_ideal(2);
    let b0 = isotropic_complement(&ext.quadratic, &ideal).unwrap();
    assert_eq!(b0, Subspace::from_vectors(2, &[unit(2, 0)]).unwrap());
}

#[test]
fn reconstruction_round_trip_zero_cocycle() {
    let n4 = catalog::n4();
    let theta = CocycleTensor::zero(&n4.space, &n4.space.dual());
    let ext = tstar_extension(&n4, &theta).unwrap();
    let ideal = dual_half_ideal(8);
    let rec = reconstruct_tstar(&ext.quadratic, &ideal).unwrap();
    assert!(rec.report.overall(), "{}", rec.report.render_json());
    // Entry-exact recovery of the quotient and the cocycle.
    assert_eq!(rec.quotient.bracket, n4.bracket);
    assert!(rec.theta.is_zero());
    assert!(rec.phi.is_identity());
}

#[test]
fn reconstruction_round_trip_nonzero_cocycle() {
    let g = catalog::odd1();
    let theta = odd1_cocycle(&g);
    let ext = tstar_extension(&g, &theta).unwrap();
    let ideal = dual_half_ideal(2);
    let rec = reconstruct_tstar(&ext.quadratic, &ideal).unwrap();
    assert!(rec.report.overall(), "{}", rec.report.render_json());
    assert_eq!(rec.quotient.bracket, g.bracket);
    assert_eq!(rec.theta.eval_basis([0, 0, 0]), unit(1, 0));
    assert!(rec.phi.is_identity());
}

/// Totally skew volume-form cocycle on n4: theta(e_i,e_j,e_k) is the signed
/// dual of the missing basis vector.
fn n4_volume_cocycle(g: &ThreeBihomLieSuper) -> CocycleTensor {
    let mut entries: Vec<([usize; 3], Vector)> = Vec::new();
    let perm_sign = |p: &[usize]| -> i64 {
        let mut sgn = 1i64;
        let mut v = p.to_vec();
        for a in 0..v.len() {
            for b in (a + 1..v.len()).rev() {
                if v[b - 1] > v[b] {
                    v.swap(b - 1, b);
                    sgn = -sgn;
                }
            }
        }
        sgn
    };
    for i in 0..4usize {
        for j in 0..4usize {
            for k in 0..4usize {
                let mut seen = [false; 4];
                seen[i] = true;
                if seen[j] {
                    continue;
                }
                seen[j] = true;
                if seen[k] {
                    continue;
                }
                seen[k] = true;
                let l = (0..4).find(|&x| !seen[x]).unwrap();
                let sgn = perm_sign(&[i, j, k, l]);
                entries.push(([i, j, k], unit(4, l).scale(&Scalar::from_int(sgn))));
            }
        }
    }
    dual_valued_cocycle(g, &entries)
}

#[test]
fn reconstruction_round_trip_volume_cocycle_on_n4() {
    // An admissible nonzero cocycle over a nonabelian base with a nontrivial
    // coadjoint action: the strongest round-trip in the suite.
    let n4 = catalog::n4();
    let theta = n4_volume_cocycle(&n4);
    let (holds, _) = lemma_theta_condition(&n4, &theta);
    assert!(holds);
    let ext = tstar_extension(&n4, &theta).unwrap();
    assert!(verify_quadratic(&ext.quadratic).overall());
    let rec = reconstruct_tstar(&ext.quadratic, &dual_half_ideal(8)).unwrap();
    assert!(rec.report.overall(), "{}", rec.report.render_json());
    assert_eq!(rec.quotient.bracket, n4.bracket);
    assert_eq!(rec.theta, theta);
    assert!(rec.phi.is_identity());
}

#[test]
fn reconstruction_abelian_hyperbolic() {
    let g = catalog::abelian(vec![0, 0]);
    let theta = CocycleTensor::zero(&g.space, &g.space.dual());
    let ext = tstar_extension(&g, &theta).unwrap();
    let ideal = dual_half_ideal(4);
    let rec = reconstruct_tstar(&ext.quadratic, &ideal).unwrap();
    assert!(rec.quotient.bracket.is_zero());
    assert!(rec.theta.is_zero());
    assert!(rec.report.overall());
}

#[test]
fn reconstruction_rejects_bad_ideal() {
    let n4 = catalog::n4();
    let theta = CocycleTensor::zero(&n4.space, &n4.space.dual());
    let ext = tstar_extension(&n4, &theta).unwrap();
    // The base copy of g is isotropic but not an ideal of the extension
    // of the right kind? It is an ideal complement; use a non-isotropic
    // subspace instead: span(e1 + e1*).
    let bad = Subspace::from_vectors(8, &[unit(8, 0).add(&unit(8, 4))]).unwrap();
    assert!(matches!(
        reconstruct_tstar(&ext.quadratic, &bad),
        Err(Error::FailedPrecondition { .. })
    ));
}

#[test]
fn forward_direction_dual_half_is_always_admissible() {
    // For every corpus T*-extension, the embedded dual copy passes the
    // isotropic-ideal battery: the forward direction of the reconstruction
    // theorem.
    for g in [
        catalog::n4(),
        catalog::l3(),
        catalog::n22(),
        catalog::abelian(vec![0, 1]),
        catalog::odd1(),
    ] {
        let theta = CocycleTensor::zero(&g.space, &g.space.dual());
        let ext = tstar_extension(&g, &theta).unwrap();
        let ideal = dual_half_ideal(2 * g.dim());
        let report = isotropic_ideal_check(&ext.quadratic, &ideal);
        assert!(report.overall(), "{}", report.render_json());
    }
}

#[test]
fn quadratic_form_file_example_t_star_passes_both_verifiers() {
    // T*_0(N22): odd part present; exercises the Koszul signs of q_g.
    let g = catalog::n22();
    let theta = CocycleTensor::zero(&g.space, &g.space.dual());
    let ext = tstar_extension(&g, &theta).unwrap();
    assert!(ext.quadratic.algebra.verify().overall());
    assert!(verify_quadratic(&ext.quadratic).overall());
    let rec = reconstruct_tstar(&ext.quadratic, &dual_half_ideal(8)).unwrap();
    assert_eq!(rec.quotient.bracket, g.bracket);
}

#[test]
fn alpha_symmetric_check_catches_asymmetry() {
    let space = GradedSpace::even(2);
    let g = ThreeBihomLieSuper::new(
        space.clone(),
        bihomlie::bracket::TriBracket::zero(&space),
        EvenMap::diagonal(&space, &[Scalar::from_int(2), Scalar::from_int(3)]).unwrap(),
        EvenMap::identity(&space),
    )
    .unwrap();
    let gram = Matrix::from_rows(vec![
        vec![Scalar::zero(), Scalar::one()],
        vec![Scalar::one(), Scalar::zero()],
    ])
    .unwrap();
    let qa = QuadraticAlgebra::new(g, SuperForm::new(&space, gram).unwrap()).unwrap();
    let report = verify_quadratic(&qa);
    assert!(!report.check("alpha_symmetric").unwrap().passed());
}
