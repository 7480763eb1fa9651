//! Binary Bihom-Lie superalgebras: axiom verification, the Yau twist of a
//! Lie superalgebra, and the twisted osp(1,2) family as an executable
//! generator.
//!
//! Axioms are verified on basis tuples only; by multilinearity this is
//! equivalent to the universally quantified statements.

use crate::bracket::BiBracket;
use crate::graded::{GradedSpace, Vector};
use crate::linalg::EvenMap;
use crate::report::{VerificationReport, Witness};
use crate::scalar::Scalar;
use crate::sweep::scan_tuples;
use crate::Error;

/// A bundle (space, even bilinear bracket, α, β). Whether it satisfies the
/// Bihom-Lie superalgebra axioms is certified by [`BihomLieSuper2::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BihomLieSuper2 {
    pub space: GradedSpace,
    pub bracket: BiBracket,
    pub alpha: EvenMap,
    pub beta: EvenMap,
}

impl BihomLieSuper2 {
    pub fn new(
        space: GradedSpace,
        bracket: BiBracket,
        alpha: EvenMap,
        beta: EvenMap,
    ) -> Result<Self, Error> {
        let dim = space.dim();
        if bracket.dim() != dim || alpha.dim() != dim || beta.dim() != dim {
            return Err(Error::DimensionMismatch(
                "bundle components disagree on dimension".into(),
            ));
        }
        Ok(BihomLieSuper2 {
            space,
            bracket,
            alpha,
            beta,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn bracket_vec(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket.eval([x, y])
    }

    /// Checks the four defining conditions: commutation of the structure
    /// maps, multiplicativity of each, Bihom-super-skewsymmetry, and the
    /// Bihom-super-Jacobi identity. The skew and Jacobi identities are
    /// evaluated literally on (β, α)-images of basis vectors, so α and β
    /// need not be invertible.
    pub fn verify(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let dim = self.dim();
        let p = |i: usize| self.space.parity(i);

        match self
            .alpha
            .compose(&self.beta)
            .unwrap()
            .matrix()
            .first_column_difference(self.beta.compose(&self.alpha).unwrap().matrix())
        {
            None => report.push_pass("alpha_beta_commute"),
            Some((col, diff)) => report.push_fail(
                "alpha_beta_commute",
                Witness {
                    tuple: vec![col],
                    residual: diff.coords,
                },
            ),
        }

        for (name, map) in [("alpha_multiplicative", &self.alpha), ("beta_multiplicative", &self.beta)] {
            let witness = scan_tuples(&[dim, dim], |idx| {
                let (i, j) = (idx[0], idx[1]);
                let lhs = map.apply(&self.bracket.eval_basis([i, j]));
                let rhs = self.bracket_vec(&map.apply_basis(i), &map.apply_basis(j));
                nonzero(lhs.sub(&rhs))
            });
            report.push(name, witness);
        }

        let witness = scan_tuples(&[dim, dim], |idx| {
            let (i, j) = (idx[0], idx[1]);
            let a = self.bracket_vec(&self.beta.apply_basis(i), &self.alpha.apply_basis(j));
            let b = self.bracket_vec(&self.beta.apply_basis(j), &self.alpha.apply_basis(i));
            let mut residual = a;
            let signed = if (p(i) & p(j)) == 1 { b.neg() } else { b };
            residual = residual.add(&signed);
            nonzero(residual)
        });
        report.push("bihom_super_skewsymmetry", witness);

        let beta2 = self.beta.compose(&self.beta).unwrap();
        let witness = scan_tuples(&[dim, dim, dim], |idx| {
            let mut acc = Vector::zero(dim);
            // Cyclic sum over (x, y, z) with sign (-1)^{|x||z|}.
            let rotations = [
                [idx[0], idx[1], idx[2]],
                [idx[1], idx[2], idx[0]],
                [idx[2], idx[0], idx[1]],
            ];
            for [x, y, z] in rotations {
                let inner = self.bracket_vec(&self.beta.apply_basis(y), &self.alpha.apply_basis(z));
                let term = self.bracket_vec(&beta2.apply_basis(x), &inner);
                let negative = (p(x) & p(z)) == 1;
                acc = acc.add(&if negative { term.neg() } else { term });
            }
            nonzero(acc)
        });
        report.push("bihom_super_jacobi", witness);

        report
    }

    /// True when α = β = Id and the axioms hold, i.e. the bundle is an
    /// ordinary Lie superalgebra.
    pub fn is_lie_superalgebra(&self) -> bool {
        self.alpha.is_identity() && self.beta.is_identity() && self.verify().overall()
    }
}

fn nonzero(v: Vector) -> Option<Vec<Scalar>> {
    if v.is_zero() {
        None
    } else {
        Some(v.coords)
    }
}

fn require_bracket_homomorphism(
    lie: &BihomLieSuper2,
    map: &EvenMap,
    name: &str,
) -> Result<(), Error> {
    let dim = lie.dim();
    let witness = scan_tuples(&[dim, dim], |idx| {
        let lhs = map.apply(&lie.bracket.eval_basis([idx[0], idx[1]]));
        let rhs = lie.bracket_vec(&map.apply_basis(idx[0]), &map.apply_basis(idx[1]));
        nonzero(lhs.sub(&rhs))
    });
    match witness {
        None => Ok(()),
        Some(w) => Err(Error::NotAHomomorphism {
            map: name.into(),
            witness: w.tuple,
        }),
    }
}

/// Yau twist of a Lie superalgebra by two commuting bracket homomorphisms:
/// the twisted bracket is `[x, y]' = [a(x), b(y)]` with structure maps
/// `(a, b)`. All hypotheses are checked, and the result is re-verified.
pub fn yau_twist2(
    lie: &BihomLieSuper2,
    a: &EvenMap,
    b: &EvenMap,
) -> Result<BihomLieSuper2, Error> {
    if !(lie.alpha.is_identity() && lie.beta.is_identity()) {
        return Err(Error::FailedPrecondition {
            gate: "untwisted_input".into(),
            report: None,
        });
    }
    let base = lie.verify();
    if !base.overall() {
        return Err(Error::FailedPrecondition {
            gate: "input_is_lie_superalgebra".into(),
            report: Some(base),
        });
    }
    if a.dim() != lie.dim() || b.dim() != lie.dim() {
        return Err(Error::DimensionMismatch("twist maps".into()));
    }
    require_bracket_homomorphism(lie, a, "alpha twist map")?;
    require_bracket_homomorphism(lie, b, "beta twist map")?;
    if !a.commutes_with(b) {
        return Err(Error::MapsDoNotCommute("twist maps".into()));
    }

    let dim = lie.dim();
    let mut entries = std::collections::BTreeMap::new();
    for i in 0..dim {
        for j in 0..dim {
            let v = lie.bracket_vec(&a.apply_basis(i), &b.apply_basis(j));
            if !v.is_zero() {
                entries.insert([i, j], v);
            }
        }
    }
    let bracket = BiBracket::new(&lie.space, entries)?;
    let twisted = BihomLieSuper2::new(lie.space.clone(), bracket, a.clone(), b.clone())?;
    let report = twisted.verify();
    if !report.overall() {
        return Err(Error::ReportedMismatch {
            what: "yau twist output".into(),
            report,
        });
    }
    Ok(twisted)
}

/// The untwisted osp(1,2) Lie superalgebra on the ordered basis
/// (H, X, Y, F, G) with H, X, Y even and F, G odd.
pub fn osp12_lie() -> BihomLieSuper2 {
    let space = GradedSpace::new(
        vec![0, 0, 0, 1, 1],
        Some(vec!["H".into(), "X".into(), "Y".into(), "F".into(), "G".into()]),
    )
    .unwrap();
    let (h, x, y, f, g) = (0usize, 1usize, 2usize, 3usize, 4usize);
    let unit = |i: usize| Vector::unit(5, i);
    let seeds = vec![
        ([h, x], unit(x).scale(&Scalar::from_int(2))),
        ([h, y], unit(y).scale(&Scalar::from_int(-2))),
        ([x, y], unit(h)),
        ([y, g], unit(f)),
        ([x, f], unit(g)),
        ([h, f], unit(f).neg()),
        ([h, g], unit(g)),
        ([g, f], unit(h)),
        ([g, g], unit(x).scale(&Scalar::from_int(-2))),
        ([f, f], unit(y).scale(&Scalar::from_int(2))),
    ];
    let bracket = BiBracket::from_seeds_super_skew(&space, &seeds).unwrap();
    let id = EvenMap::identity(&space);
    BihomLieSuper2::new(space, bracket, id.clone(), id).unwrap()
}

/// The diagonal structure map of the osp(1,2) family with weights
/// `(1, t^2, t^{-2}, t^{-1}, t)` on (H, X, Y, F, G).
pub fn osp12_scaling(space: &GradedSpace, t: &Scalar) -> Result<EvenMap, Error> {
    if t.is_zero() {
        return Err(Error::ZeroParameter("osp(1,2) scaling weight".into()));
    }
    let t2 = t.pow(2);
    let entries = vec![
        Scalar::one(),
        t2.clone(),
        t2.recip()?,
        t.recip()?,
        t.clone(),
    ];
    EvenMap::diagonal(space, &entries)
}

/// The two-parameter family of Bihom-Lie superalgebras obtained by Yau
/// twisting osp(1,2) with the diagonal automorphisms of weights λ and μ.
pub fn osp12_family(lambda: &Scalar, mu: &Scalar) -> Result<BihomLieSuper2, Error> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::ZeroParameter("osp(1,2) family parameter".into()));
    }
    let lie = osp12_lie();
    let alpha = osp12_scaling(&lie.space, lambda)?;
    let beta = osp12_scaling(&lie.space, mu)?;
    yau_twist2(&lie, &alpha, &beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_three_dim_passes() {
        let space = GradedSpace::new(vec![0, 0, 1], None).unwrap();
        let bundle = BihomLieSuper2::new(
            space.clone(),
            BiBracket::zero(&space),
            EvenMap::identity(&space),
            EvenMap::identity(&space),
        )
        .unwrap();
        assert!(bundle.verify().overall());
        assert!(bundle.is_lie_superalgebra());
    }

    #[test]
    fn osp12_is_a_lie_superalgebra() {
        assert!(osp12_lie().is_lie_superalgebra());
    }

    #[test]
    fn osp12_untwisted_family_matches_table() {
        let fam = osp12_family(&Scalar::one(), &Scalar::one()).unwrap();
        // [X, Y] = H and [F, F] = 2Y straight from the defining relations.
        assert_eq!(fam.bracket.eval_basis([1, 2]), Vector::unit(5, 0));
        assert_eq!(
            fam.bracket.eval_basis([3, 3]),
            Vector::unit(5, 2).scale(&Scalar::from_int(2))
        );
    }

    #[test]
    fn twisted_table_values() {
        // (lambda, mu) = (2, 3): [X, Y]' = (lambda/mu)^2 H and
        // [G, F]' = (lambda/mu) H.
        let fam = osp12_family(&Scalar::from_int(2), &Scalar::from_int(3)).unwrap();
        assert_eq!(
            fam.bracket.eval_basis([1, 2]),
            Vector::unit(5, 0).scale(&Scalar::ratio(4, 9))
        );
        assert_eq!(
            fam.bracket.eval_basis([4, 3]),
            Vector::unit(5, 0).scale(&Scalar::ratio(2, 3))
        );
        // (lambda, mu) = (1, 2): [H, Y]' = -2/mu^2 Y.
        let fam = osp12_family(&Scalar::one(), &Scalar::from_int(2)).unwrap();
        assert_eq!(
            fam.bracket.eval_basis([0, 2]),
            Vector::unit(5, 2).scale(&Scalar::ratio(-1, 2))
        );
    }

    #[test]
    fn identity_twist_is_identity() {
        let lie = osp12_lie();
        let id = EvenMap::identity(&lie.space);
        let twisted = yau_twist2(&lie, &id, &id).unwrap();
        assert_eq!(twisted.bracket, lie.bracket);
    }

    #[test]
    fn composed_scalings_multiply_weightwise() {
        // diag actions at lambda = 2 and mu = 3 compose to the diagonal
        // (1, 36, 1/36, 1/6, 6) on (H, X, Y, F, G).
        let space = osp12_lie().space;
        let a = osp12_scaling(&space, &Scalar::from_int(2)).unwrap();
        let b = osp12_scaling(&space, &Scalar::from_int(3)).unwrap();
        let expected = EvenMap::diagonal(
            &space,
            &[
                Scalar::one(),
                Scalar::from_int(36),
                Scalar::ratio(1, 36),
                Scalar::ratio(1, 6),
                Scalar::from_int(6),
            ],
        )
        .unwrap();
        assert_eq!(a.compose(&b).unwrap(), expected);
        assert_eq!(b.compose(&a).unwrap(), expected);
    }

    #[test]
    fn zero_parameter_is_rejected() {
        assert!(matches!(
            osp12_family(&Scalar::zero(), &Scalar::one()),
            Err(Error::ZeroParameter(_))
        ));
    }

    #[test]
    fn jacobi_only_negative() {
        // Skewsymmetric and multiplicative (identity maps) but not Lie:
        // [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1 leaves the cyclic sum
        // at (e1,e2,e3) equal to [e1,e2] = e3.
        let space = GradedSpace::even(3);
        let seeds = vec![
            ([0usize, 1], Vector::unit(3, 2)),
            ([1usize, 2], Vector::unit(3, 0)),
            ([0usize, 2], Vector::unit(3, 0)),
        ];
        let bracket = BiBracket::from_seeds_super_skew(&space, &seeds).unwrap();
        let id = EvenMap::identity(&space);
        let bundle = BihomLieSuper2::new(space, bracket, id.clone(), id).unwrap();
        let report = bundle.verify();
        for check in &report.checks {
            if check.name == "bihom_super_jacobi" {
                assert!(!check.passed());
                let w = check.witness.as_ref().unwrap();
                assert_eq!(w.tuple, vec![0, 1, 2]);
            } else {
                assert!(check.passed(), "{} unexpectedly failed", check.name);
            }
        }
    }

    #[test]
    fn perturbed_twist_fails_with_witness() {
        // Changing the single entry [H, X] of the (λ, μ) = (2, 3) twist
        // breaks α-multiplicativity: α([H,X]) no longer equals [αH, αX].
        let fam = osp12_family(&Scalar::from_int(2), &Scalar::from_int(3)).unwrap();
        let mut entries: std::collections::BTreeMap<[usize; 2], Vector> =
            fam.bracket.entries().map(|(k, v)| (*k, v.clone())).collect();
        // [H, X] = 2 mu^2 X = 18 X; perturb to 27 X.
        entries.insert([0, 1], Vector::unit(5, 1).scale(&Scalar::from_int(27)));
        let bracket = BiBracket::new(&fam.space, entries).unwrap();
        let broken =
            BihomLieSuper2::new(fam.space.clone(), bracket, fam.alpha.clone(), fam.beta.clone())
                .unwrap();
        let report = broken.verify();
        assert!(!report.overall());
        let failing = report.first_failure().unwrap();
        assert!(failing.witness.is_some());
    }
}
