//! 3-Bihom-Lie superalgebras: the axiom checker and the basic
//! constructions (twists, direct sums, morphisms, subobjects, centers).

use std::collections::BTreeMap;

use crate::bracket::TriBracket;
use crate::graded::{GradedSpace, Subspace, Vector};
use crate::linalg::{solve_linear, EvenMap, Matrix};
use crate::report::{VerificationReport, Witness};
use crate::scalar::Scalar;
use crate::sweep::scan_tuples;
use crate::Error;

/// The central object: (space, even trilinear bracket, α, β). The defining
/// conditions are certified by [`ThreeBihomLieSuper::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeBihomLieSuper {
    pub space: GradedSpace,
    pub bracket: TriBracket,
    pub alpha: EvenMap,
    pub beta: EvenMap,
}

pub(crate) fn nonzero(v: Vector) -> Option<Vec<Scalar>> {
    if v.is_zero() {
        None
    } else {
        Some(v.coords)
    }
}

pub(crate) fn signed(v: Vector, negative: bool) -> Vector {
    if negative {
        v.neg()
    } else {
        v
    }
}

/// Cached α, β, β² images of the basis, shared across sweep closures.
pub(crate) struct BasisImages {
    pub alpha: Vec<Vector>,
    pub beta: Vec<Vector>,
    pub beta2: Vec<Vector>,
}

impl ThreeBihomLieSuper {
    pub fn new(
        space: GradedSpace,
        bracket: TriBracket,
        alpha: EvenMap,
        beta: EvenMap,
    ) -> Result<Self, Error> {
        let dim = space.dim();
        if bracket.dim() != dim || alpha.dim() != dim || beta.dim() != dim {
            return Err(Error::DimensionMismatch(
                "bundle components disagree on dimension".into(),
            ));
        }
        Ok(ThreeBihomLieSuper {
            space,
            bracket,
            alpha,
            beta,
        })
    }

    /// A 3-Lie superalgebra presented with identity structure maps.
    pub fn from_3lie(space: GradedSpace, bracket: TriBracket) -> Result<Self, Error> {
        let id = EvenMap::identity(&space);
        ThreeBihomLieSuper::new(space, bracket, id.clone(), id)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn bracket_vec(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.bracket.eval([x, y, z])
    }

    pub fn is_untwisted(&self) -> bool {
        self.alpha.is_identity() && self.beta.is_identity()
    }

    /// Images of the whole basis under α, β, and β², computed once so the
    /// 5-tuple sweeps do not repeat matrix-vector products.
    pub(crate) fn basis_images(&self) -> BasisImages {
        let dim = self.dim();
        let alpha: Vec<Vector> = (0..dim).map(|i| self.alpha.apply_basis(i)).collect();
        let beta: Vec<Vector> = (0..dim).map(|i| self.beta.apply_basis(i)).collect();
        let beta2: Vec<Vector> = beta.iter().map(|v| self.beta.apply(v)).collect();
        BasisImages { alpha, beta, beta2 }
    }

    /// Jacobi residual in the three-term defining form on one basis 5-tuple.
    pub fn jacobi_residual(&self, t: &[usize]) -> Vector {
        self.jacobi_residual_with(t, &self.basis_images())
    }

    fn jacobi_residual_with(&self, t: &[usize], images: &BasisImages) -> Vector {
        let p = |i: usize| self.space.parity(i);
        let (x, y, z, u, v) = (t[0], t[1], t[2], t[3], t[4]);
        let beta2 = |i: usize| &images.beta2[i];
        let b = |i: usize| &images.beta[i];
        let a = |i: usize| &images.alpha[i];

        let lhs = self.bracket_vec(beta2(x), beta2(y), &self.bracket_vec(b(z), b(u), a(v)));
        let t1 = self.bracket_vec(beta2(u), beta2(v), &self.bracket_vec(b(x), b(y), a(z)));
        let t2 = self.bracket_vec(beta2(z), beta2(v), &self.bracket_vec(b(x), b(y), a(u)));
        let t3 = self.bracket_vec(beta2(z), beta2(u), &self.bracket_vec(b(x), b(y), a(v)));

        // Exponents of the three right-hand-side signs, mod 2.
        let s1 = ((p(u) + p(v)) & 1) & ((p(x) + p(y) + p(z)) & 1);
        let s2 = (((p(z) + p(v)) & 1) & ((p(x) + p(y)) & 1)) ^ (p(u) & p(v));
        let s3 = ((p(z) + p(u)) & 1) & ((p(x) + p(y)) & 1);

        // Residual = lhs - (-1)^{s1} t1 + (-1)^{s2} t2 - (-1)^{s3} t3.
        let mut acc = lhs;
        acc = acc.add(&signed(t1, s1 == 0));
        acc = acc.add(&signed(t2, s2 == 1));
        acc = acc.add(&signed(t3, s3 == 0));
        acc
    }

    /// Jacobi residual in the equivalent cyclic form. Used as a cross-check
    /// against [`ThreeBihomLieSuper::jacobi_residual`].
    pub fn jacobi_residual_cyclic(&self, t: &[usize]) -> Vector {
        let images = self.basis_images();
        let p = |i: usize| self.space.parity(i);
        let (x, y, z, u, v) = (t[0], t[1], t[2], t[3], t[4]);
        let beta2 = |i: usize| &images.beta2[i];
        let b = |i: usize| &images.beta[i];
        let a = |i: usize| &images.alpha[i];

        let mut acc =
            self.bracket_vec(beta2(x), beta2(y), &self.bracket_vec(b(z), b(u), a(v)));
        let prefactor = p(z) & p(v);
        for [ra, rb, rc] in [[u, v, z], [v, z, u], [z, u, v]] {
            let gamma = (((p(ra) + p(rb)) & 1) & ((p(x) + p(y)) & 1)) ^ (p(rc) & p(ra));
            let term =
                self.bracket_vec(beta2(ra), beta2(rb), &self.bracket_vec(b(x), b(y), a(rc)));
            // Subtract (-1)^{prefactor + gamma} * term.
            acc = acc.add(&signed(term, (prefactor ^ gamma) == 0));
        }
        acc
    }

    /// Checks the defining conditions on all basis tuples: αβ = βα, α- and
    /// β-multiplicativity, 3-Bihom-super-skewsymmetry in both stated forms,
    /// and the 3-Bihom-super-Jacobi identity on all 5-tuples.
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

        let images = self.basis_images();

        for (name, map) in [("alpha_multiplicative", &self.alpha), ("beta_multiplicative", &self.beta)] {
            let table: Vec<Vector> = (0..dim).map(|i| map.apply_basis(i)).collect();
            let witness = scan_tuples(&[dim, dim, dim], |idx| {
                let lhs = map.apply(&self.bracket.eval_basis([idx[0], idx[1], idx[2]]));
                let rhs = self.bracket_vec(&table[idx[0]], &table[idx[1]], &table[idx[2]]);
                nonzero(lhs.sub(&rhs))
            });
            report.push(name, witness);
        }

        let witness = scan_tuples(&[dim, dim, dim], |idx| {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            let base = self.bracket_vec(&images.beta[i], &images.beta[j], &images.alpha[k]);
            let swapped = self.bracket_vec(&images.beta[j], &images.beta[i], &images.alpha[k]);
            nonzero(base.add(&signed(swapped, (p(i) & p(j)) == 1)))
        });
        report.push("skewsymmetry_first_pair", witness);

        let witness = scan_tuples(&[dim, dim, dim], |idx| {
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            let base = self.bracket_vec(&images.beta[i], &images.beta[j], &images.alpha[k]);
            let swapped = self.bracket_vec(&images.beta[i], &images.beta[k], &images.alpha[j]);
            nonzero(base.add(&signed(swapped, (p(j) & p(k)) == 1)))
        });
        report.push("skewsymmetry_last_pair", witness);

        // The inner bracket [βz, βu, αv] depends on a triple only; tabulate
        // it once instead of re-evaluating it inside the 5-tuple sweep.
        let mut inner = Vec::with_capacity(dim * dim * dim);
        for z in 0..dim {
            for u in 0..dim {
                for v in 0..dim {
                    inner.push(self.bracket_vec(&images.beta[z], &images.beta[u], &images.alpha[v]));
                }
            }
        }
        let inner_at = |z: usize, u: usize, v: usize| &inner[(z * dim + u) * dim + v];
        let witness = scan_tuples(&[dim, dim, dim, dim, dim], |idx| {
            let (x, y, z, u, v) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
            let beta2 = |i: usize| &images.beta2[i];
            let lhs = self.bracket_vec(beta2(x), beta2(y), inner_at(z, u, v));
            let t1 = self.bracket_vec(beta2(u), beta2(v), inner_at(x, y, z));
            let t2 = self.bracket_vec(beta2(z), beta2(v), inner_at(x, y, u));
            let t3 = self.bracket_vec(beta2(z), beta2(u), inner_at(x, y, v));
            let s1 = ((p(u) + p(v)) & 1) & ((p(x) + p(y) + p(z)) & 1);
            let s2 = (((p(z) + p(v)) & 1) & ((p(x) + p(y)) & 1)) ^ (p(u) & p(v));
            let s3 = ((p(z) + p(u)) & 1) & ((p(x) + p(y)) & 1);
            let mut acc = lhs;
            acc = acc.add(&signed(t1, s1 == 0));
            acc = acc.add(&signed(t2, s2 == 1));
            acc = acc.add(&signed(t3, s3 == 0));
            nonzero(acc)
        });
        report.push("bihom_super_jacobi", witness);

        report
    }

    pub(crate) fn require_verified(&self, gate: &str) -> Result<(), Error> {
        let report = self.verify();
        if report.overall() {
            Ok(())
        } else {
            Err(Error::FailedPrecondition {
                gate: gate.into(),
                report: Some(report),
            })
        }
    }

    fn require_tri_homomorphism(&self, map: &EvenMap, name: &str) -> Result<(), Error> {
        let dim = self.dim();
        let witness = scan_tuples(&[dim, dim, dim], |idx| {
            let lhs = map.apply(&self.bracket.eval_basis([idx[0], idx[1], idx[2]]));
            let rhs = self.bracket_vec(
                &map.apply_basis(idx[0]),
                &map.apply_basis(idx[1]),
                &map.apply_basis(idx[2]),
            );
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

    /// True when the subspace is closed under both structure maps and under
    /// brackets of its own elements.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim(), "subspace ambient dimension");
        let maps_ok = s.basis().iter().all(|v| {
            s.contains(&self.alpha.apply(v)) && s.contains(&self.beta.apply(v))
        });
        if !maps_ok {
            return false;
        }
        s.basis().iter().all(|x| {
            s.basis().iter().all(|y| {
                s.basis()
                    .iter()
                    .all(|z| s.contains(&self.bracket_vec(x, y, z)))
            })
        })
    }

    /// True when the subspace is a Bihom ideal: closed under α and β, and
    /// `[s, g, g] ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim(), "subspace ambient dimension");
        let dim = self.dim();
        let maps_ok = s.basis().iter().all(|v| {
            s.contains(&self.alpha.apply(v)) && s.contains(&self.beta.apply(v))
        });
        if !maps_ok {
            return false;
        }
        s.basis().iter().all(|x| {
            (0..dim).all(|j| {
                (0..dim).all(|k| {
                    s.contains(&self.bracket_vec(x, &Vector::unit(dim, j), &Vector::unit(dim, k)))
                })
            })
        })
    }

    fn annihilator_of(&self, second: &[Vector], third: &[Vector]) -> Subspace {
        // Solve [x, w_j, w_k] = 0 for all (j, k): one row per (j, k, output
        // coordinate), one column per coefficient of x.
        let dim = self.dim();
        let mut rows = Vec::new();
        for wj in second {
            for wk in third {
                let images: Vec<Vector> = (0..dim)
                    .map(|m| self.bracket_vec(&Vector::unit(dim, m), wj, wk))
                    .collect();
                for l in 0..dim {
                    let row: Vec<Scalar> =
                        images.iter().map(|im| im.coords[l].clone()).collect();
                    if row.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Subspace::full(dim);
        }
        let m = Matrix::from_rows(rows).expect("rows are uniform");
        let out = solve_linear(&m, &Vector::zero(m.rows())).expect("shape consistent");
        Subspace::from_vectors(dim, &out.kernel_basis).expect("kernel vectors")
    }

    /// The center: all `x` with `[x, y, z] = 0` for every `y, z`.
    pub fn center(&self) -> Subspace {
        let dim = self.dim();
        let units: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
        self.annihilator_of(&units, &units)
    }

    /// The (α, β)-center: all `x` with `[x, αβ(y), αβ(z)] = 0`.
    pub fn ab_center(&self) -> Subspace {
        let dim = self.dim();
        let ab = self.alpha.compose(&self.beta).expect("square maps");
        let images: Vec<Vector> = (0..dim).map(|i| ab.apply_basis(i)).collect();
        self.annihilator_of(&images, &images)
    }
}

/// Twist of a 3-Lie superalgebra (identity structure maps) by two commuting
/// bracket homomorphisms: `[x, y, z]' = [a(x), a(y), b(z)]`, structure maps
/// `(a, b)`.
pub fn twist_from_3lie(
    g: &ThreeBihomLieSuper,
    a: &EvenMap,
    b: &EvenMap,
) -> Result<ThreeBihomLieSuper, Error> {
    if !g.is_untwisted() {
        return Err(Error::FailedPrecondition {
            gate: "untwisted_input".into(),
            report: None,
        });
    }
    g.require_verified("input_is_3lie_superalgebra")?;
    if a.dim() != g.dim() || b.dim() != g.dim() {
        return Err(Error::DimensionMismatch("twist maps".into()));
    }
    g.require_tri_homomorphism(a, "alpha twist map")?;
    g.require_tri_homomorphism(b, "beta twist map")?;
    if !a.commutes_with(b) {
        return Err(Error::MapsDoNotCommute("twist maps".into()));
    }
    build_twisted(g, a, b, a.clone(), b.clone())
}

/// Composed twist of an already twisted algebra by further homomorphisms:
/// new bracket `[.,.,.] ∘ (a2 ⊗ a2 ⊗ b2)`, structure maps `(α∘a2, β∘b2)`.
/// All four maps must pairwise commute.
pub fn twist_compose(
    g: &ThreeBihomLieSuper,
    a2: &EvenMap,
    b2: &EvenMap,
) -> Result<ThreeBihomLieSuper, Error> {
    g.require_verified("input_verifies")?;
    if a2.dim() != g.dim() || b2.dim() != g.dim() {
        return Err(Error::DimensionMismatch("twist maps".into()));
    }
    g.require_tri_homomorphism(a2, "composed alpha twist map")?;
    g.require_tri_homomorphism(b2, "composed beta twist map")?;
    let pairs: [(&EvenMap, &EvenMap, &str); 5] = [
        (a2, b2, "a2 with b2"),
        (a2, &g.alpha, "a2 with alpha"),
        (a2, &g.beta, "a2 with beta"),
        (b2, &g.alpha, "b2 with alpha"),
        (b2, &g.beta, "b2 with beta"),
    ];
    for (f, h, what) in pairs {
        if !f.commutes_with(h) {
            return Err(Error::MapsDoNotCommute(what.into()));
        }
    }
    let alpha = g.alpha.compose(a2)?;
    let beta = g.beta.compose(b2)?;
    build_twisted(g, a2, b2, alpha, beta)
}

/// Power twist: `twist_compose` with `a2 = α^k`, `b2 = β^k`, yielding
/// structure maps `(α^{k+1}, β^{k+1})`.
pub fn twist_power(g: &ThreeBihomLieSuper, k: usize) -> Result<ThreeBihomLieSuper, Error> {
    twist_compose(g, &g.alpha.pow(k), &g.beta.pow(k))
}

fn build_twisted(
    g: &ThreeBihomLieSuper,
    a: &EvenMap,
    b: &EvenMap,
    alpha: EvenMap,
    beta: EvenMap,
) -> Result<ThreeBihomLieSuper, Error> {
    let dim = g.dim();
    let mut entries = BTreeMap::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let v = g.bracket_vec(&a.apply_basis(i), &a.apply_basis(j), &b.apply_basis(k));
                if !v.is_zero() {
                    entries.insert([i, j, k], v);
                }
            }
        }
    }
    let bracket = TriBracket::new(&g.space, entries)?;
    let twisted = ThreeBihomLieSuper::new(g.space.clone(), bracket, alpha, beta)?;
    let report = twisted.verify();
    if !report.overall() {
        return Err(Error::ReportedMismatch {
            what: "twist output".into(),
            report,
        });
    }
    Ok(twisted)
}

/// Direct sum with block-diagonal structure maps; mixed brackets vanish.
pub fn direct_sum(
    g: &ThreeBihomLieSuper,
    h: &ThreeBihomLieSuper,
) -> Result<ThreeBihomLieSuper, Error> {
    g.require_verified("left_summand_verifies")?;
    h.require_verified("right_summand_verifies")?;
    let space = g.space.concat(&h.space);
    let bracket = TriBracket::direct_sum(&g.bracket, &h.bracket, &space)?;
    let alpha = EvenMap::new(&space, g.alpha.matrix().block_diag(h.alpha.matrix()))?;
    let beta = EvenMap::new(&space, g.beta.matrix().block_diag(h.beta.matrix()))?;
    let sum = ThreeBihomLieSuper::new(space, bracket, alpha, beta)?;
    let report = sum.verify();
    if !report.overall() {
        return Err(Error::ReportedMismatch {
            what: "direct sum output".into(),
            report,
        });
    }
    Ok(sum)
}

/// Morphism check: `f([x,y,z]) = [f(x), f(y), f(z)]'`, `f∘α = α'∘f`, and
/// `f∘β = β'∘f`, each a named check with a witness on failure.
pub fn is_morphism(
    f: &EvenMap,
    g: &ThreeBihomLieSuper,
    h: &ThreeBihomLieSuper,
) -> Result<VerificationReport, Error> {
    if f.matrix().cols() != g.dim() || f.matrix().rows() != h.dim() {
        return Err(Error::DimensionMismatch("morphism matrix shape".into()));
    }
    let mut report = VerificationReport::new();
    let dim = g.dim();
    let witness = scan_tuples(&[dim, dim, dim], |idx| {
        let lhs = f.apply(&g.bracket.eval_basis([idx[0], idx[1], idx[2]]));
        let rhs = h.bracket_vec(
            &f.apply_basis(idx[0]),
            &f.apply_basis(idx[1]),
            &f.apply_basis(idx[2]),
        );
        nonzero(lhs.sub(&rhs))
    });
    report.push("bracket_compatible", witness);
    for (name, src, dst) in [
        ("alpha_intertwines", &g.alpha, &h.alpha),
        ("beta_intertwines", &g.beta, &h.beta),
    ] {
        let lhs = f.matrix().mul(src.matrix())?;
        let rhs = dst.matrix().mul(f.matrix())?;
        match lhs.first_column_difference(&rhs) {
            None => report.push_pass(name),
            Some((col, diff)) => report.push_fail(
                name,
                Witness {
                    tuple: vec![col],
                    residual: diff.coords,
                },
            ),
        }
    }
    Ok(report)
}

/// Builds the direct sum, materializes the graph `{x + f(x)}`, and checks
/// closure under the sum bracket and both structure maps.
pub fn graph_is_subalgebra(
    f: &EvenMap,
    g: &ThreeBihomLieSuper,
    h: &ThreeBihomLieSuper,
) -> Result<bool, Error> {
    if f.matrix().cols() != g.dim() || f.matrix().rows() != h.dim() {
        return Err(Error::DimensionMismatch("morphism matrix shape".into()));
    }
    // The closure test only needs the sum bundle assembled, not re-verified.
    let space = g.space.concat(&h.space);
    let bracket = TriBracket::direct_sum(&g.bracket, &h.bracket, &space)?;
    let alpha = EvenMap::new(&space, g.alpha.matrix().block_diag(h.alpha.matrix()))?;
    let beta = EvenMap::new(&space, g.beta.matrix().block_diag(h.beta.matrix()))?;
    let sum = ThreeBihomLieSuper::new(space, bracket, alpha, beta)?;
    let dim = g.dim() + h.dim();
    let graph_vectors: Vec<Vector> = (0..g.dim())
        .map(|i| {
            let mut coords = Vector::unit(g.dim(), i).coords;
            coords.extend(f.apply_basis(i).coords);
            Vector { coords }
        })
        .collect();
    let graph = Subspace::from_vectors(dim, &graph_vectors)?;
    Ok(sum.is_subalgebra(&graph))
}
