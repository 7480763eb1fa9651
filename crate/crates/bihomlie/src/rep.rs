//! Representations of 3-Bihom-Lie superalgebras, semidirect products,
//! 3-cocycles, `T_θ`-extensions, coboundaries, the σ-isomorphism between
//! extensions by cohomologous cocycles, and the dual representation.

use std::collections::BTreeMap;

use crate::bracket::TriBracket;
use crate::graded::{GradedSpace, Vector};
use crate::linalg::{EvenMap, Matrix, ParityMap};
use crate::report::{VerificationReport, Witness};
use crate::scalar::Scalar;
use crate::threebihom::{nonzero, signed, ThreeBihomLieSuper};
use crate::Error;

/// A representation (M, ρ, α_M, β_M): a module space with a pair-indexed
/// action. ρ is stored on pairs `i <= j` and extended by graded
/// skewsymmetry, so `ρ(e_j, e_i) = -(-1)^{p_i p_j} ρ(e_i, e_j)` holds by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub module: GradedSpace,
    rho: BTreeMap<(usize, usize), Matrix>,
    pub alpha_m: EvenMap,
    pub beta_m: EvenMap,
}

impl Representation {
    pub fn new(
        gspace: &GradedSpace,
        module: GradedSpace,
        rho_entries: BTreeMap<(usize, usize), Matrix>,
        alpha_m: EvenMap,
        beta_m: EvenMap,
    ) -> Result<Self, Error> {
        let mdim = module.dim();
        if alpha_m.dim() != mdim || beta_m.dim() != mdim {
            return Err(Error::DimensionMismatch(
                "module maps disagree with module dimension".into(),
            ));
        }
        if !alpha_m.commutes_with(&beta_m) {
            return Err(Error::MapsDoNotCommute("alpha_m with beta_m".into()));
        }
        let mut rho: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
        for ((i, j), m) in rho_entries {
            if i >= gspace.dim() || j >= gspace.dim() {
                return Err(Error::Validation {
                    field: "rho".into(),
                    reason: format!("pair ({i}, {j}) out of range"),
                });
            }
            if m.rows() != mdim || m.cols() != mdim {
                return Err(Error::DimensionMismatch(format!(
                    "rho({i},{j}) is {}x{} on a module of dimension {mdim}",
                    m.rows(),
                    m.cols()
                )));
            }
            let pair_parity = (gspace.parity(i) + gspace.parity(j)) & 1;
            // Reuse the graded-map validation for the parity pattern.
            ParityMap::new(&module, pair_parity, m.clone())?;
            let (key, value) = if i <= j {
                ((i, j), m)
            } else {
                let negate = (gspace.parity(i) & gspace.parity(j)) == 0;
                ((j, i), if negate { m.scale(&-Scalar::one()) } else { m })
            };
            if key.0 == key.1 && gspace.parity(key.0) == 0 && !value.is_zero() {
                return Err(Error::Validation {
                    field: "rho".into(),
                    reason: format!(
                        "rho({}, {}) must vanish for an even basis element",
                        key.0, key.0
                    ),
                });
            }
            match rho.get(&key) {
                None => {
                    if !value.is_zero() {
                        rho.insert(key, value);
                    }
                }
                Some(existing) if *existing == value => {}
                Some(_) => {
                    return Err(Error::Validation {
                        field: "rho".into(),
                        reason: format!(
                            "entries for pair ({i}, {j}) contradict graded skewsymmetry"
                        ),
                    });
                }
            }
        }
        Ok(Representation {
            module,
            rho,
            alpha_m,
            beta_m,
        })
    }

    /// The zero-dimensional module.
    pub fn zero_module(gspace: &GradedSpace) -> Self {
        let module = GradedSpace::even(0);
        let _ = gspace;
        Representation {
            module: module.clone(),
            rho: BTreeMap::new(),
            alpha_m: EvenMap::identity(&module),
            beta_m: EvenMap::identity(&module),
        }
    }

    /// ρ ≡ 0 on an arbitrary module with commuting maps.
    pub fn trivial(
        module: GradedSpace,
        alpha_m: EvenMap,
        beta_m: EvenMap,
    ) -> Result<Self, Error> {
        if !alpha_m.commutes_with(&beta_m) {
            return Err(Error::MapsDoNotCommute("alpha_m with beta_m".into()));
        }
        Ok(Representation {
            module,
            rho: BTreeMap::new(),
            alpha_m,
            beta_m,
        })
    }

    /// Adjoint action `ρ(x, y) = [x, y, ·]` on the algebra itself. Requires
    /// the stored bracket tensor to be skewsymmetric in its first two slots
    /// so that the pair-canonical storage is consistent.
    pub fn adjoint(g: &ThreeBihomLieSuper) -> Result<Self, Error> {
        if !g.bracket.is_raw_skew_12(&g.space) {
            return Err(Error::Validation {
                field: "bracket".into(),
                reason: "adjoint action needs a bracket skewsymmetric in the first two slots"
                    .into(),
            });
        }
        let dim = g.dim();
        let mut rho = BTreeMap::new();
        for i in 0..dim {
            for j in i..dim {
                let mut m = Matrix::zero(dim, dim);
                for k in 0..dim {
                    m.set_column(k, &g.bracket.eval_basis([i, j, k]));
                }
                if !m.is_zero() {
                    rho.insert((i, j), m);
                }
            }
        }
        Representation::new(
            &g.space,
            g.space.clone(),
            rho,
            g.alpha.clone(),
            g.beta.clone(),
        )
    }

    pub fn module_dim(&self) -> usize {
        self.module.dim()
    }

    pub fn stored_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Matrix)> {
        self.rho.iter()
    }

    /// Action matrix on a basis pair, extended by graded skewsymmetry.
    pub fn rho_basis(&self, gspace: &GradedSpace, i: usize, j: usize) -> Matrix {
        let mdim = self.module_dim();
        if i <= j {
            self.rho
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Matrix::zero(mdim, mdim))
        } else {
            let m = self
                .rho
                .get(&(j, i))
                .cloned()
                .unwrap_or_else(|| Matrix::zero(mdim, mdim));
            if (gspace.parity(i) & gspace.parity(j)) == 0 {
                m.scale(&-Scalar::one())
            } else {
                m
            }
        }
    }

    /// Bilinear extension of the action to coordinate vectors.
    pub fn rho_vec(&self, gspace: &GradedSpace, x: &Vector, y: &Vector) -> Matrix {
        let mdim = self.module_dim();
        let mut acc = Matrix::zero(mdim, mdim);
        for (i, xc) in x.coords.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (j, yc) in y.coords.iter().enumerate() {
                if yc.is_zero() {
                    continue;
                }
                let m = self.rho_basis(gspace, i, j);
                if !m.is_zero() {
                    acc = acc.add(&m.scale(&(xc * yc))).expect("module shape");
                }
            }
        }
        acc
    }
}

fn matrix_check(report: &mut VerificationReport, name: &str, lhs: &Matrix, rhs: &Matrix) {
    match lhs.first_column_difference(rhs) {
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

fn matrix_witness(tuple: &[usize], residual: &Matrix) -> Option<Witness> {
    for c in 0..residual.cols() {
        let col = residual.column(c);
        if !col.is_zero() {
            let mut t = tuple.to_vec();
            t.push(c);
            return Some(Witness {
                tuple: t,
                residual: col.coords,
            });
        }
    }
    None
}

/// Checks the four defining conditions of a representation on all basis
/// tuples (pairs for the map compatibilities, quadruples for the two
/// composition identities).
pub fn verify_rep(g: &ThreeBihomLieSuper, r: &Representation) -> Result<VerificationReport, Error> {
    let dim = g.dim();
    let p = |i: usize| g.space.parity(i);
    let mut report = VerificationReport::new();

    let ab_m = r.alpha_m.compose(&r.beta_m)?;
    let ba_m = r.beta_m.compose(&r.alpha_m)?;
    matrix_check(&mut report, "module_maps_commute", ab_m.matrix(), ba_m.matrix());

    let alpha = |i: usize| g.alpha.apply_basis(i);
    let beta = |i: usize| g.beta.apply_basis(i);
    let unit = |i: usize| Vector::unit(dim, i);
    let ab = |i: usize| g.alpha.apply(&g.beta.apply_basis(i));

    // Condition 1: rho(alpha u, alpha v) ∘ alpha_M = alpha_M ∘ rho(u, v).
    let mut failure = None;
    'outer1: for u in 0..dim {
        for v in 0..dim {
            let lhs = r
                .rho_vec(&g.space, &alpha(u), &alpha(v))
                .mul(r.alpha_m.matrix())?;
            let rhs = r
                .alpha_m
                .matrix()
                .mul(&r.rho_basis(&g.space, u, v))?;
            if let Some(w) = matrix_witness(&[u, v], &lhs.sub(&rhs)?) {
                failure = Some(w);
                break 'outer1;
            }
        }
    }
    report.push("rho_alpha_compatible", failure);

    // Condition 2: rho(beta u, beta v) ∘ beta_M = beta_M ∘ rho(u, v).
    let mut failure = None;
    'outer2: for u in 0..dim {
        for v in 0..dim {
            let lhs = r
                .rho_vec(&g.space, &beta(u), &beta(v))
                .mul(r.beta_m.matrix())?;
            let rhs = r.beta_m.matrix().mul(&r.rho_basis(&g.space, u, v))?;
            if let Some(w) = matrix_witness(&[u, v], &lhs.sub(&rhs)?) {
                failure = Some(w);
                break 'outer2;
            }
        }
    }
    report.push("rho_beta_compatible", failure);

    // Condition 3 on quadruples (u, v, x, y):
    // rho(αβu, αβv) rho(x, y)
    //   = (-1)^{(|u|+|v|)(|x|+|y|)} rho(βx, βy) rho(αu, αv)
    //   + rho([βu, βv, x], βy) β_M
    //   + (-1)^{|x|(|u|+|v|)} rho(βx, [βu, βv, y]) β_M.
    let mut failure = None;
    'outer3: for u in 0..dim {
        for v in 0..dim {
            for x in 0..dim {
                for y in 0..dim {
                    let lhs = r
                        .rho_vec(&g.space, &ab(u), &ab(v))
                        .mul(&r.rho_basis(&g.space, x, y))?;
                    let t1 = r
                        .rho_vec(&g.space, &beta(x), &beta(y))
                        .mul(&r.rho_vec(&g.space, &alpha(u), &alpha(v)))?;
                    let bracket_uvx = g.bracket_vec(&beta(u), &beta(v), &unit(x));
                    let t2 = r
                        .rho_vec(&g.space, &bracket_uvx, &beta(y))
                        .mul(r.beta_m.matrix())?;
                    let bracket_uvy = g.bracket_vec(&beta(u), &beta(v), &unit(y));
                    let t3 = r
                        .rho_vec(&g.space, &beta(x), &bracket_uvy)
                        .mul(r.beta_m.matrix())?;
                    let s1 = ((p(u) + p(v)) & 1) & ((p(x) + p(y)) & 1);
                    let s3 = p(x) & ((p(u) + p(v)) & 1);
                    let mut acc = lhs;
                    acc = if s1 == 0 { acc.sub(&t1)? } else { acc.add(&t1)? };
                    acc = acc.sub(&t2)?;
                    acc = if s3 == 0 { acc.sub(&t3)? } else { acc.add(&t3)? };
                    if let Some(w) = matrix_witness(&[u, v, x, y], &acc) {
                        failure = Some(w);
                        break 'outer3;
                    }
                }
            }
        }
    }
    report.push("rho_composition_identity", failure);

    // Condition 4 on quadruples (u, v, x, y):
    // rho([βu, βv, x], βy) β_M
    //   = (-1)^{|u|(|x|+|v|)} rho(αβv, βx) rho(αu, y)
    //   + (-1)^{|x|(|u|+|v|)} rho(βx, αβu) rho(αv, y)
    //   + rho(αβu, αβv) rho(x, y).
    let mut failure = None;
    'outer4: for u in 0..dim {
        for v in 0..dim {
            for x in 0..dim {
                for y in 0..dim {
                    let bracket_uvx = g.bracket_vec(&beta(u), &beta(v), &unit(x));
                    let lhs = r
                        .rho_vec(&g.space, &bracket_uvx, &beta(y))
                        .mul(r.beta_m.matrix())?;
                    let t1 = r
                        .rho_vec(&g.space, &ab(v), &beta(x))
                        .mul(&r.rho_vec(&g.space, &alpha(u), &unit(y)))?;
                    let t2 = r
                        .rho_vec(&g.space, &beta(x), &ab(u))
                        .mul(&r.rho_vec(&g.space, &alpha(v), &unit(y)))?;
                    let t3 = r
                        .rho_vec(&g.space, &ab(u), &ab(v))
                        .mul(&r.rho_basis(&g.space, x, y))?;
                    let s1 = p(u) & ((p(x) + p(v)) & 1);
                    let s2 = p(x) & ((p(u) + p(v)) & 1);
                    let mut acc = lhs;
                    acc = if s1 == 0 { acc.sub(&t1)? } else { acc.add(&t1)? };
                    acc = if s2 == 0 { acc.sub(&t2)? } else { acc.add(&t2)? };
                    acc = acc.sub(&t3)?;
                    if let Some(w) = matrix_witness(&[u, v, x, y], &acc) {
                        failure = Some(w);
                        break 'outer4;
                    }
                }
            }
        }
    }
    report.push("rho_fundamental_identity", failure);

    Ok(report)
}

/// A trilinear module-valued tensor; whether it is a 3-cocycle for a given
/// representation is certified by [`verify_cocycle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTensor {
    gdim: usize,
    mdim: usize,
    entries: BTreeMap<[usize; 3], Vector>,
}

impl CocycleTensor {
    pub fn new(
        gspace: &GradedSpace,
        module: &GradedSpace,
        entries: BTreeMap<[usize; 3], Vector>,
    ) -> Result<Self, Error> {
        let gdim = gspace.dim();
        let mdim = module.dim();
        let mut out = BTreeMap::new();
        for (idx, v) in entries {
            if idx.iter().any(|&i| i >= gdim) {
                return Err(Error::Validation {
                    field: "theta".into(),
                    reason: format!("index tuple {idx:?} out of range"),
                });
            }
            if v.dim() != mdim {
                return Err(Error::DimensionMismatch(
                    "cocycle value dimension disagrees with module".into(),
                ));
            }
            if v.is_zero() {
                continue;
            }
            let want = gspace.tuple_parity(&idx);
            for (l, c) in v.coords.iter().enumerate() {
                if !c.is_zero() && module.parity(l) != want {
                    return Err(Error::ParityViolation {
                        what: "cocycle".into(),
                        detail: format!("entry {idx:?} has coordinate {l} of wrong parity"),
                    });
                }
            }
            out.insert(idx, v);
        }
        Ok(CocycleTensor {
            gdim,
            mdim,
            entries: out,
        })
    }

    pub fn zero(gspace: &GradedSpace, module: &GradedSpace) -> Self {
        CocycleTensor {
            gdim: gspace.dim(),
            mdim: module.dim(),
            entries: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize; 3], &Vector)> {
        self.entries.iter()
    }

    pub fn eval_basis(&self, idx: [usize; 3]) -> Vector {
        self.entries
            .get(&idx)
            .cloned()
            .unwrap_or_else(|| Vector::zero(self.mdim))
    }

    pub fn eval(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let mut out = Vector::zero(self.mdim);
        for (idx, value) in &self.entries {
            let cx = &x.coords[idx[0]];
            if cx.is_zero() {
                continue;
            }
            let cy = &y.coords[idx[1]];
            if cy.is_zero() {
                continue;
            }
            let cz = &z.coords[idx[2]];
            if cz.is_zero() {
                continue;
            }
            out.add_scaled(&(&(cx * cy) * cz), value);
        }
        out
    }

    pub fn add(&self, other: &CocycleTensor) -> Result<CocycleTensor, Error> {
        if self.gdim != other.gdim || self.mdim != other.mdim {
            return Err(Error::DimensionMismatch("cocycle addition".into()));
        }
        let mut entries = self.entries.clone();
        for (idx, v) in &other.entries {
            let slot = entries
                .entry(*idx)
                .or_insert_with(|| Vector::zero(self.mdim));
            *slot = slot.add(v);
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(CocycleTensor {
            gdim: self.gdim,
            mdim: self.mdim,
            entries,
        })
    }
}

/// Checks the four 3-cocycle conditions: compatibility with both structure
/// maps, graded skewsymmetry in the twisted form, and the cocycle identity
/// on all basis 5-tuples.
pub fn verify_cocycle(
    g: &ThreeBihomLieSuper,
    r: &Representation,
    theta: &CocycleTensor,
) -> Result<VerificationReport, Error> {
    if theta.gdim != g.dim() || theta.mdim != r.module_dim() {
        return Err(Error::DimensionMismatch("cocycle shape".into()));
    }
    let dim = g.dim();
    let p = |i: usize| g.space.parity(i);
    let images = g.basis_images();
    let alpha = |i: usize| &images.alpha[i];
    let beta = |i: usize| &images.beta[i];
    let beta2 = |i: usize| &images.beta2[i];
    let mut report = VerificationReport::new();

    let mut fail = None;
    'a: for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let lhs = r.alpha_m.apply(&theta.eval_basis([i, j, k]));
                let rhs = theta.eval(alpha(i), alpha(j), alpha(k));
                if let Some(res) = nonzero(lhs.sub(&rhs)) {
                    fail = Some(Witness {
                        tuple: vec![i, j, k],
                        residual: res,
                    });
                    break 'a;
                }
            }
        }
    }
    report.push("cocycle_alpha_compatible", fail);

    let mut fail = None;
    'b: for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let lhs = r.beta_m.apply(&theta.eval_basis([i, j, k]));
                let rhs = theta.eval(beta(i), beta(j), beta(k));
                if let Some(res) = nonzero(lhs.sub(&rhs)) {
                    fail = Some(Witness {
                        tuple: vec![i, j, k],
                        residual: res,
                    });
                    break 'b;
                }
            }
        }
    }
    report.push("cocycle_beta_compatible", fail);

    let mut fail_first = None;
    let mut fail_last = None;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let base = theta.eval(beta(i), beta(j), alpha(k));
                if fail_first.is_none() {
                    let swapped = theta.eval(beta(j), beta(i), alpha(k));
                    if let Some(res) = nonzero(base.add(&signed(swapped, (p(i) & p(j)) == 1))) {
                        fail_first = Some(Witness {
                            tuple: vec![i, j, k],
                            residual: res,
                        });
                    }
                }
                if fail_last.is_none() {
                    let swapped = theta.eval(beta(i), beta(k), alpha(j));
                    if let Some(res) = nonzero(base.add(&signed(swapped, (p(j) & p(k)) == 1))) {
                        fail_last = Some(Witness {
                            tuple: vec![i, j, k],
                            residual: res,
                        });
                    }
                }
            }
        }
    }
    report.push("cocycle_skew_first_pair", fail_first);
    report.push("cocycle_skew_last_pair", fail_last);

    let witness = crate::sweep::scan_tuples(&[dim, dim, dim, dim, dim], |idx| {
        let (x1, x2, x3, x4, x5) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        let group = |a: usize, b: usize, c: usize| -> Vector {
            // θ(β²a, β²b, [βx1', βx2', αc']) + ρ(β²a, β²b) θ(βx1', βx2', αc')
            // with (x1', x2') the leading pair of the identity.
            let br = g.bracket_vec(beta(x1), beta(x2), alpha(c));
            let th = theta.eval(beta2(a), beta2(b), &br);
            let inner = theta.eval(beta(x1), beta(x2), alpha(c));
            let acted = r
                .rho_vec(&g.space, beta2(a), beta2(b))
                .mul_vec(&inner)
                .expect("module shape");
            th.add(&acted)
        };
        let lhs_br = g.bracket_vec(beta(x3), beta(x4), alpha(x5));
        let lhs_th = theta.eval(beta2(x1), beta2(x2), &lhs_br);
        let lhs_inner = theta.eval(beta(x3), beta(x4), alpha(x5));
        let lhs_acted = r
            .rho_vec(&g.space, beta2(x1), beta2(x2))
            .mul_vec(&lhs_inner)
            .expect("module shape");
        let lhs = lhs_th.add(&lhs_acted);

        let t1 = group(x4, x5, x3);
        let t2 = group(x3, x5, x4);
        let t3 = group(x3, x4, x5);
        let s1 = ((p(x4) + p(x5)) & 1) & ((p(x1) + p(x2) + p(x3)) & 1);
        let s2 = (((p(x3) + p(x5)) & 1) & ((p(x1) + p(x2)) & 1)) ^ (p(x4) & p(x5));
        let s3 = ((p(x3) + p(x4)) & 1) & ((p(x1) + p(x2)) & 1);
        let mut acc = lhs;
        acc = acc.add(&signed(t1, s1 == 0));
        acc = acc.add(&signed(t2, s2 == 1));
        acc = acc.add(&signed(t3, s3 == 0));
        nonzero(acc)
    });
    report.push("cocycle_identity", witness);

    Ok(report)
}

fn require_invertible(map: &EvenMap, what: &str) -> Result<EvenMap, Error> {
    map.invert()
        .map_err(|_| Error::SingularMap(format!("{what} is not invertible")))
}

fn extension_bundle(
    g: &ThreeBihomLieSuper,
    r: &Representation,
    theta: Option<&CocycleTensor>,
) -> Result<ThreeBihomLieSuper, Error> {
    let n = g.dim();
    let m = r.module_dim();
    let total = n + m;
    let space = g.space.concat(&r.module);

    // The bracket formula uses α^{-1}β on the algebra and α_M β_M^{-1} on
    // the module, so those two maps must be invertible.
    let alpha_inv = require_invertible(&g.alpha, "alpha")?;
    let beta_m_inv = require_invertible(&r.beta_m, "beta_m")?;
    let ab = alpha_inv.compose(&g.beta)?;
    let ambm = r.alpha_m.compose(&beta_m_inv)?;

    let pg = |i: usize| g.space.parity(i);
    let pm = |a: usize| r.module.parity(a);

    let mut entries: BTreeMap<[usize; 3], Vector> = BTreeMap::new();
    let mut push = |key: [usize; 3], value: Vector| {
        if !value.is_zero() {
            entries.insert(key, value);
        }
    };

    // (g, g, g): the algebra bracket plus the cocycle term.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut value = Vector::zero(total);
                let gpart = g.bracket.eval_basis([i, j, k]);
                for (l, c) in gpart.coords.iter().enumerate() {
                    value.coords[l] = c.clone();
                }
                if let Some(th) = theta {
                    let mpart = th.eval_basis([i, j, k]);
                    for (a, c) in mpart.coords.iter().enumerate() {
                        value.coords[n + a] = c.clone();
                    }
                }
                push([i, j, k], value);
            }
        }
    }

    // (g, g, M): rho(e_i, e_j)(m_c).
    for i in 0..n {
        for j in 0..n {
            let mat = r.rho_basis(&g.space, i, j);
            if mat.is_zero() {
                continue;
            }
            for c in 0..m {
                let col = mat.column(c);
                if col.is_zero() {
                    continue;
                }
                let mut value = Vector::zero(total);
                for (a, s) in col.coords.iter().enumerate() {
                    value.coords[n + a] = s.clone();
                }
                push([i, j, n + c], value);
            }
        }
    }

    // (g, M, g): -(-1)^{|y||w|} rho(e_i, α^{-1}β e_k)(α_M β_M^{-1} m_b).
    for i in 0..n {
        for b in 0..m {
            for k in 0..n {
                let mat = r.rho_vec(&g.space, &Vector::unit(n, i), &ab.apply_basis(k));
                if mat.is_zero() {
                    continue;
                }
                let v = mat.mul_vec(&ambm.apply_basis(b))?;
                if v.is_zero() {
                    continue;
                }
                let negate = (pm(b) & pg(k)) == 0;
                let v = signed(v, negate);
                let mut value = Vector::zero(total);
                for (a, s) in v.coords.iter().enumerate() {
                    value.coords[n + a] = s.clone();
                }
                push([i, n + b, k], value);
            }
        }
    }

    // (M, g, g): +(-1)^{|x|(|v|+|w|)} rho(e_j, α^{-1}β e_k)(α_M β_M^{-1} m_a).
    for a in 0..m {
        for j in 0..n {
            for k in 0..n {
                let mat = r.rho_vec(&g.space, &Vector::unit(n, j), &ab.apply_basis(k));
                if mat.is_zero() {
                    continue;
                }
                let v = mat.mul_vec(&ambm.apply_basis(a))?;
                if v.is_zero() {
                    continue;
                }
                let negate = (pm(a) & ((pg(j) + pg(k)) & 1)) == 1;
                let v = signed(v, negate);
                let mut value = Vector::zero(total);
                for (c, s) in v.coords.iter().enumerate() {
                    value.coords[n + c] = s.clone();
                }
                push([n + a, j, k], value);
            }
        }
    }

    let bracket = TriBracket::new(&space, entries)?;
    let alpha = EvenMap::new(&space, g.alpha.matrix().block_diag(r.alpha_m.matrix()))?;
    let beta = EvenMap::new(&space, g.beta.matrix().block_diag(r.beta_m.matrix()))?;
    ThreeBihomLieSuper::new(space, bracket, alpha, beta)
}

/// Semidirect product `g ⋉ M`. All hypotheses are checked and the output is
/// re-verified against the 3-Bihom-Lie superalgebra axioms.
pub fn semidirect(
    g: &ThreeBihomLieSuper,
    r: &Representation,
) -> Result<ThreeBihomLieSuper, Error> {
    g.require_verified("algebra_verifies")?;
    let rep_report = verify_rep(g, r)?;
    if !rep_report.overall() {
        return Err(Error::FailedPrecondition {
            gate: "representation_verifies".into(),
            report: Some(rep_report),
        });
    }
    let out = extension_bundle(g, r, None)?;
    let report = out.verify();
    if !report.overall() {
        return Err(Error::ReportedMismatch {
            what: "semidirect product output".into(),
            report,
        });
    }
    Ok(out)
}

/// `T_θ`-extension of `g` by the module of `r`: the semidirect bracket plus
/// the cocycle term on algebra triples.
pub fn t_theta_extension(
    g: &ThreeBihomLieSuper,
    r: &Representation,
    theta: &CocycleTensor,
) -> Result<ThreeBihomLieSuper, Error> {
    g.require_verified("algebra_verifies")?;
    let rep_report = verify_rep(g, r)?;
    if !rep_report.overall() {
        return Err(Error::FailedPrecondition {
            gate: "representation_verifies".into(),
            report: Some(rep_report),
        });
    }
    let cocycle_report = verify_cocycle(g, r, theta)?;
    if !cocycle_report.overall() {
        let condition = cocycle_report
            .first_failure()
            .map(|c| c.name.clone())
            .unwrap_or_default();
        return Err(Error::CocycleFails {
            condition,
            report: cocycle_report,
        });
    }
    let out = extension_bundle(g, r, Some(theta))?;
    let report = out.verify();
    if !report.overall() {
        return Err(Error::ReportedMismatch {
            what: "T_theta extension output".into(),
            report,
        });
    }
    Ok(out)
}

/// Coboundary cocycle of an intertwining linear map `f : g → M`:
/// `θ_f(x,y,z) = f(bracket(x,y,z)) - ρ(x,y) f(z)
///   + (-1)^{|y||z|} ρ(x, α^{-1}β z) f(αβ^{-1} y)
///   - (-1)^{(|y|+|z|)|x|} ρ(y, α^{-1}β z) f(αβ^{-1} x)`.
pub fn coboundary_theta_f(
    g: &ThreeBihomLieSuper,
    r: &Representation,
    f: &EvenMap,
) -> Result<CocycleTensor, Error> {
    if f.matrix().cols() != g.dim() || f.matrix().rows() != r.module_dim() {
        return Err(Error::DimensionMismatch("coboundary map shape".into()));
    }
    let alpha_inv = require_invertible(&g.alpha, "alpha")?;
    let beta_inv = require_invertible(&g.beta, "beta")?;
    let fa = f.matrix().mul(g.alpha.matrix())?;
    let af = r.alpha_m.matrix().mul(f.matrix())?;
    if fa != af {
        return Err(Error::IntertwiningFails("f∘alpha = alpha_M∘f".into()));
    }
    let fb = f.matrix().mul(g.beta.matrix())?;
    let bf = r.beta_m.matrix().mul(f.matrix())?;
    if fb != bf {
        return Err(Error::IntertwiningFails("f∘beta = beta_M∘f".into()));
    }

    let ab = alpha_inv.compose(&g.beta)?; // α^{-1} β
    let abi = g.alpha.compose(&beta_inv)?; // α β^{-1}
    let n = g.dim();
    let p = |i: usize| g.space.parity(i);
    let mut entries = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut value = f.apply(&g.bracket.eval_basis([i, j, k]));
                let t1 = r
                    .rho_basis(&g.space, i, j)
                    .mul_vec(&f.apply_basis(k))?;
                value = value.sub(&t1);
                let t2 = r
                    .rho_vec(&g.space, &Vector::unit(n, i), &ab.apply_basis(k))
                    .mul_vec(&f.apply(&abi.apply_basis(j)))?;
                value = value.add(&signed(t2, (p(j) & p(k)) == 1));
                let t3 = r
                    .rho_vec(&g.space, &Vector::unit(n, j), &ab.apply_basis(k))
                    .mul_vec(&f.apply(&abi.apply_basis(i)))?;
                value = value.add(&signed(t3, (((p(j) + p(k)) & 1) & p(i)) == 0));
                if !value.is_zero() {
                    entries.insert([i, j, k], value);
                }
            }
        }
    }
    let theta_f = CocycleTensor::new(&g.space, &r.module, entries)?;
    let report = verify_cocycle(g, r, &theta_f)?;
    if !report.overall() {
        return Err(Error::ReportedMismatch {
            what: "coboundary cocycle".into(),
            report,
        });
    }
    Ok(theta_f)
}

/// The isomorphism `σ(v + x) = v + f(v) + x` from `T_θ` to `T_{θ+θ_f}`,
/// together with a report certifying bijectivity, intertwining of both
/// structure maps, and bracket compatibility.
pub fn sigma_iso(
    g: &ThreeBihomLieSuper,
    r: &Representation,
    theta: &CocycleTensor,
    f: &EvenMap,
) -> Result<(EvenMap, VerificationReport), Error> {
    let theta_f = coboundary_theta_f(g, r, f)?;
    let shifted = theta.add(&theta_f)?;
    let source = t_theta_extension(g, r, theta)?;
    let target = t_theta_extension(g, r, &shifted)?;

    let n = g.dim();
    let m = r.module_dim();
    let mut mat = Matrix::identity(n + m);
    for j in 0..n {
        let fj = f.apply_basis(j);
        for (a, s) in fj.coords.iter().enumerate() {
            *mat.get_mut(n + a, j) = s.clone();
        }
    }
    let sigma = EvenMap::new(&source.space, mat)?;

    let mut report = VerificationReport::new();
    match crate::linalg::det(sigma.matrix()) {
        Ok(d) if !d.is_zero() => report.push_pass("sigma_bijective"),
        _ => report.push_fail(
            "sigma_bijective",
            Witness {
                tuple: vec![],
                residual: vec![Scalar::zero()],
            },
        ),
    }
    let morphism = crate::threebihom::is_morphism(&sigma, &source, &target)?;
    for check in morphism.checks {
        let name = match check.name.as_str() {
            "bracket_compatible" => "sigma_bracket_homomorphism",
            "alpha_intertwines" => "sigma_intertwines_alpha",
            "beta_intertwines" => "sigma_intertwines_beta",
            other => other,
        };
        report.push(name, check.witness);
    }
    Ok((sigma, report))
}

/// The dual representation on `M*` together with the two equivalent
/// verdicts: the four admissibility conditions evaluated on `(g, ρ)`, and
/// the plain representation axioms evaluated on the dual data. The two must
/// agree; [`DualRep::verdicts_agree`] states it.
#[derive(Clone, Debug)]
pub struct DualRep {
    pub rep: Representation,
    pub theorem_conditions: VerificationReport,
    pub dual_verify: VerificationReport,
}

impl DualRep {
    pub fn verdicts_agree(&self) -> bool {
        self.theorem_conditions.overall() == self.dual_verify.overall()
    }
}

/// Builds `(M*, ρ̃, α̃_M, β̃_M)` with `ρ̃(x,y)(f) = -(-1)^{|f|(|x|+|y|)} f∘ρ(x,y)`,
/// `α̃_M(f) = f∘α_M`, `β̃_M(f) = f∘β_M`, dual-basis parities mirroring `M`.
pub fn dual_rep(g: &ThreeBihomLieSuper, r: &Representation) -> Result<DualRep, Error> {
    let dual_space = r.module.dual();
    let alpha_m = EvenMap::new(&dual_space, r.alpha_m.matrix().transpose())?;
    let beta_m = EvenMap::new(&dual_space, r.beta_m.matrix().transpose())?;
    let mdim = r.module_dim();
    let mut rho = BTreeMap::new();
    for (&(i, j), mat) in r.stored_pairs() {
        let shift = (g.space.parity(i) + g.space.parity(j)) & 1;
        let mut dual = Matrix::zero(mdim, mdim);
        for a in 0..mdim {
            for b in 0..mdim {
                let src = mat.get(b, a);
                if src.is_zero() {
                    continue;
                }
                let negate = (r.module.parity(b) & shift) == 0;
                *dual.get_mut(a, b) = if negate { -src } else { src.clone() };
            }
        }
        rho.insert((i, j), dual);
    }
    let dual = Representation::new(&g.space, dual_space, rho, alpha_m, beta_m)?;

    let dim = g.dim();
    let p = |i: usize| g.space.parity(i);
    let alpha = |i: usize| g.alpha.apply_basis(i);
    let beta = |i: usize| g.beta.apply_basis(i);
    let ab = |i: usize| g.alpha.apply(&g.beta.apply_basis(i));
    let unit = |i: usize| Vector::unit(dim, i);
    let mut report = VerificationReport::new();

    // Condition 1: alpha_M ∘ rho(αx, αy) = rho(x, y) ∘ alpha_M.
    let mut failure = None;
    'd1: for x in 0..dim {
        for y in 0..dim {
            let lhs = r
                .alpha_m
                .matrix()
                .mul(&r.rho_vec(&g.space, &alpha(x), &alpha(y)))?;
            let rhs = r.rho_basis(&g.space, x, y).mul(r.alpha_m.matrix())?;
            if let Some(w) = matrix_witness(&[x, y], &lhs.sub(&rhs)?) {
                failure = Some(w);
                break 'd1;
            }
        }
    }
    report.push("dual_alpha_compatible", failure);

    let mut failure = None;
    'd2: for x in 0..dim {
        for y in 0..dim {
            let lhs = r
                .beta_m
                .matrix()
                .mul(&r.rho_vec(&g.space, &beta(x), &beta(y)))?;
            let rhs = r.rho_basis(&g.space, x, y).mul(r.beta_m.matrix())?;
            if let Some(w) = matrix_witness(&[x, y], &lhs.sub(&rhs)?) {
                failure = Some(w);
                break 'd2;
            }
        }
    }
    report.push("dual_beta_compatible", failure);

    // Condition 3 on (x, y, u, v):
    // rho(x,y) rho(αβu, αβv)
    //   = (-1)^{(|x|+|y|)(|u|+|v|)} rho(αu, αv) rho(βx, βy)
    //   - (-1)^{(|x|+|y|)(|u|+|v|)} β_M rho([βu, βv, x], βy)
    //   - (-1)^{|y|(|u|+|v|)} β_M rho(βx, [βu, βv, y]).
    let mut failure = None;
    'd3: for x in 0..dim {
        for y in 0..dim {
            for u in 0..dim {
                for v in 0..dim {
                    let lhs = r
                        .rho_basis(&g.space, x, y)
                        .mul(&r.rho_vec(&g.space, &ab(u), &ab(v)))?;
                    let t1 = r
                        .rho_vec(&g.space, &alpha(u), &alpha(v))
                        .mul(&r.rho_vec(&g.space, &beta(x), &beta(y)))?;
                    let bruvx = g.bracket_vec(&beta(u), &beta(v), &unit(x));
                    let t2 = r
                        .beta_m
                        .matrix()
                        .mul(&r.rho_vec(&g.space, &bruvx, &beta(y)))?;
                    let bruvy = g.bracket_vec(&beta(u), &beta(v), &unit(y));
                    let t3 = r
                        .beta_m
                        .matrix()
                        .mul(&r.rho_vec(&g.space, &beta(x), &bruvy))?;
                    let s1 = ((p(x) + p(y)) & 1) & ((p(u) + p(v)) & 1);
                    let s3 = p(y) & ((p(u) + p(v)) & 1);
                    let mut acc = lhs;
                    acc = if s1 == 0 { acc.sub(&t1)? } else { acc.add(&t1)? };
                    acc = if s1 == 0 { acc.add(&t2)? } else { acc.sub(&t2)? };
                    acc = if s3 == 0 { acc.add(&t3)? } else { acc.sub(&t3)? };
                    if let Some(w) = matrix_witness(&[x, y, u, v], &acc) {
                        failure = Some(w);
                        break 'd3;
                    }
                }
            }
        }
    }
    report.push("dual_composition_identity", failure);

    // Condition 4 on (x, y, u, v):
    // β_M rho([βu, βv, x], βy)
    //   = -(-1)^{|y|(|v|+|x|)} rho(αu, y) rho(αβv, βx)
    //   - (-1)^{|u|(|x|+|y|+|v|)+|x||y|} rho(αv, y) rho(βx, αβu)
    //   - (-1)^{(|x|+|y|)(|u|+|v|)} rho(x, y) rho(αβu, αβv).
    let mut failure = None;
    'd4: for x in 0..dim {
        for y in 0..dim {
            for u in 0..dim {
                for v in 0..dim {
                    let bruvx = g.bracket_vec(&beta(u), &beta(v), &unit(x));
                    let lhs = r
                        .beta_m
                        .matrix()
                        .mul(&r.rho_vec(&g.space, &bruvx, &beta(y)))?;
                    let t1 = r
                        .rho_vec(&g.space, &alpha(u), &unit(y))
                        .mul(&r.rho_vec(&g.space, &ab(v), &beta(x)))?;
                    let t2 = r
                        .rho_vec(&g.space, &alpha(v), &unit(y))
                        .mul(&r.rho_vec(&g.space, &beta(x), &ab(u)))?;
                    let t3 = r
                        .rho_basis(&g.space, x, y)
                        .mul(&r.rho_vec(&g.space, &ab(u), &ab(v)))?;
                    let s1 = p(y) & ((p(v) + p(x)) & 1);
                    let s2 = (p(u) & ((p(x) + p(y) + p(v)) & 1)) ^ (p(x) & p(y));
                    let s3 = ((p(x) + p(y)) & 1) & ((p(u) + p(v)) & 1);
                    let mut acc = lhs;
                    acc = if s1 == 0 { acc.add(&t1)? } else { acc.sub(&t1)? };
                    acc = if s2 == 0 { acc.add(&t2)? } else { acc.sub(&t2)? };
                    acc = if s3 == 0 { acc.add(&t3)? } else { acc.sub(&t3)? };
                    if let Some(w) = matrix_witness(&[x, y, u, v], &acc) {
                        failure = Some(w);
                        break 'd4;
                    }
                }
            }
        }
    }
    report.push("dual_fundamental_identity", failure);

    let dual_verify = verify_rep(g, &dual)?;
    Ok(DualRep {
        rep: dual,
        theorem_conditions: report,
        dual_verify,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn rho_storage_rejects_contradictory_pairs() {
        let n4 = catalog::n4();
        let mut entries = BTreeMap::new();
        let mut m = Matrix::zero(4, 4);
        *m.get_mut(3, 2) = Scalar::one();
        entries.insert((0usize, 1usize), m.clone());
        // The swapped pair must be the negated matrix for even elements.
        entries.insert((1usize, 0usize), m);
        assert!(matches!(
            Representation::new(
                &n4.space,
                n4.space.clone(),
                entries,
                n4.alpha.clone(),
                n4.beta.clone()
            ),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn rho_storage_rejects_even_diagonal() {
        let n4 = catalog::n4();
        let mut entries = BTreeMap::new();
        let mut m = Matrix::zero(4, 4);
        *m.get_mut(0, 0) = Scalar::one();
        entries.insert((2usize, 2usize), m);
        assert!(matches!(
            Representation::new(
                &n4.space,
                n4.space.clone(),
                entries,
                n4.alpha.clone(),
                n4.beta.clone()
            ),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn rho_storage_allows_odd_diagonal() {
        // For an odd basis element the diagonal action may be nonzero.
        let g = catalog::n22();
        let mut entries = BTreeMap::new();
        let mut m = Matrix::zero(4, 4);
        // rho(f1, f1) is even as a map; let it scale e1.
        *m.get_mut(0, 0) = Scalar::one();
        entries.insert((2usize, 2usize), m);
        assert!(Representation::new(
            &g.space,
            g.space.clone(),
            entries,
            g.alpha.clone(),
            g.beta.clone()
        )
        .is_ok());
    }

    #[test]
    fn rho_basis_extends_by_graded_skewsymmetry() {
        let n4 = catalog::n4();
        let adj = Representation::adjoint(&n4).unwrap();
        let forward = adj.rho_basis(&n4.space, 0, 1);
        let backward = adj.rho_basis(&n4.space, 1, 0);
        assert_eq!(backward, forward.scale(&-Scalar::one()));
    }

    #[test]
    fn cocycle_tensor_rejects_bad_entries() {
        let n4 = catalog::n4();
        let module = GradedSpace::new(vec![1], None).unwrap();
        let mut entries = BTreeMap::new();
        // Even triple with an odd-module value: parity violation.
        entries.insert([0usize, 1, 2], Vector::unit(1, 0));
        assert!(matches!(
            CocycleTensor::new(&n4.space, &module, entries),
            Err(Error::ParityViolation { .. })
        ));
        let mut out_of_range = BTreeMap::new();
        out_of_range.insert([0usize, 1, 9], Vector::unit(1, 0));
        assert!(matches!(
            CocycleTensor::new(&n4.space, &module, out_of_range),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn semidirect_requires_invertible_module_map() {
        let n4 = catalog::n4();
        let module = GradedSpace::even(1);
        let rep = Representation::trivial(
            module.clone(),
            EvenMap::identity(&module),
            EvenMap::diagonal(&module, &[Scalar::zero()]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            semidirect(&n4, &rep),
            Err(Error::SingularMap(_))
        ));
    }
}
