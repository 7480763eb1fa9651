//! Totally and partially Bihom-associative ternary superalgebras, and the
//! tensor product of a totally associative factor with a 3-Bihom-Lie
//! superalgebra.

use std::collections::BTreeMap;

use crate::bracket::TriBracket;
use crate::graded::{GradedSpace, Vector};
use crate::linalg::EvenMap;
use crate::report::VerificationReport;
use crate::sweep::scan_tuples;
use crate::threebihom::{nonzero, ThreeBihomLieSuper};
use crate::Error;

/// A ternary product bundle (space, μ, α, β) subject to either the total or
/// the partial Bihom-associativity law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeBihomAssoc {
    pub space: GradedSpace,
    pub mu: TriBracket,
    pub alpha: EvenMap,
    pub beta: EvenMap,
}

impl ThreeBihomAssoc {
    pub fn new(
        space: GradedSpace,
        mu: TriBracket,
        alpha: EvenMap,
        beta: EvenMap,
    ) -> Result<Self, Error> {
        let dim = space.dim();
        if mu.dim() != dim || alpha.dim() != dim || beta.dim() != dim {
            return Err(Error::DimensionMismatch(
                "associative bundle components disagree on dimension".into(),
            ));
        }
        Ok(ThreeBihomAssoc {
            space,
            mu,
            alpha,
            beta,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mu_vec(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.mu.eval([x, y, z])
    }

    fn common_checks(&self, report: &mut VerificationReport) {
        let dim = self.dim();
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
                crate::report::Witness {
                    tuple: vec![col],
                    residual: diff.coords,
                },
            ),
        }
        for (name, map) in [("alpha_multiplicative", &self.alpha), ("beta_multiplicative", &self.beta)] {
            let witness = scan_tuples(&[dim, dim, dim], |idx| {
                let lhs = map.apply(&self.mu.eval_basis([idx[0], idx[1], idx[2]]));
                let rhs = self.mu_vec(
                    &map.apply_basis(idx[0]),
                    &map.apply_basis(idx[1]),
                    &map.apply_basis(idx[2]),
                );
                nonzero(lhs.sub(&rhs))
            });
            report.push(name, witness);
        }
    }

    fn chain_terms(&self, idx: &[usize]) -> [Vector; 3] {
        let a = |i: usize| self.alpha.apply_basis(i);
        let b = |i: usize| self.beta.apply_basis(i);
        let u = |i: usize| Vector::unit(self.dim(), i);
        let inner1 = self.mu_vec(&u(idx[0]), &u(idx[1]), &u(idx[2]));
        let inner2 = self.mu_vec(&u(idx[1]), &u(idx[2]), &u(idx[3]));
        let inner3 = self.mu_vec(&u(idx[2]), &u(idx[3]), &u(idx[4]));
        [
            self.mu_vec(&inner1, &b(idx[3]), &b(idx[4])),
            self.mu_vec(&a(idx[0]), &inner2, &b(idx[4])),
            self.mu_vec(&a(idx[0]), &a(idx[1]), &inner3),
        ]
    }

    /// Total Bihom-associativity: the three ways of nesting μ over a
    /// 5-tuple agree, plus commutation and multiplicativity of the maps.
    pub fn verify_total(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        self.common_checks(&mut report);
        let dim = self.dim();
        let witness = scan_tuples(&[dim, dim, dim, dim, dim], |idx| {
            let [t1, t2, t3] = self.chain_terms(idx);
            nonzero(t1.sub(&t2)).or_else(|| nonzero(t2.sub(&t3)))
        });
        report.push("total_associativity", witness);
        report
    }

    /// Partial Bihom-associativity: the three nestings sum to zero.
    pub fn verify_partial(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        self.common_checks(&mut report);
        let dim = self.dim();
        let witness = scan_tuples(&[dim, dim, dim, dim, dim], |idx| {
            let [t1, t2, t3] = self.chain_terms(idx);
            nonzero(t1.add(&t2).add(&t3))
        });
        report.push("partial_associativity", witness);
        report
    }

    /// The symmetry condition required of the tensor factor: on all basis
    /// triples, `μ(β a1, β a2, α a3)` is unchanged by swapping the first two
    /// or the last two arguments (without signs).
    pub fn symmetry_condition_witness(&self) -> Option<Vec<usize>> {
        let dim = self.dim();
        let b = |i: usize| self.beta.apply_basis(i);
        let a = |i: usize| self.alpha.apply_basis(i);
        scan_tuples(&[dim, dim, dim], |idx| {
            let base = self.mu_vec(&b(idx[0]), &b(idx[1]), &a(idx[2]));
            let swap12 = self.mu_vec(&b(idx[1]), &b(idx[0]), &a(idx[2]));
            let swap23 = self.mu_vec(&b(idx[0]), &b(idx[2]), &a(idx[1]));
            nonzero(base.sub(&swap12)).or_else(|| nonzero(base.sub(&swap23)))
        })
        .map(|w| w.tuple)
    }
}

/// Tensor product of a totally Bihom-associative factor with a 3-Bihom-Lie
/// superalgebra. Requires the factor to be purely even; see
/// [`tensor_assoc_allow_odd`] for the unchecked-parities variant.
pub fn tensor_assoc(
    a: &ThreeBihomAssoc,
    g: &ThreeBihomLieSuper,
) -> Result<ThreeBihomLieSuper, Error> {
    if a.space.parities().contains(&1) {
        return Err(Error::OddAssociativeFactor);
    }
    tensor_assoc_allow_odd(a, g)
}

/// Tensor product allowing an odd factor. The pair parity is the sum of the
/// factor parities, and the result must still re-verify, which is the only
/// guarantee offered in the odd case.
pub fn tensor_assoc_allow_odd(
    a: &ThreeBihomAssoc,
    g: &ThreeBihomLieSuper,
) -> Result<ThreeBihomLieSuper, Error> {
    if let Some(witness) = a.symmetry_condition_witness() {
        return Err(Error::SymmetryConditionFails { witness });
    }
    let total = a.verify_total();
    if !total.overall() {
        return Err(Error::FailedPrecondition {
            gate: "total_associativity".into(),
            report: Some(total),
        });
    }
    g.require_verified("lie_factor_verifies")?;

    let (da, dg) = (a.dim(), g.dim());
    let pair_index = |p: usize, i: usize| p * dg + i;
    let parities: Vec<u8> = (0..da * dg)
        .map(|n| (a.space.parity(n / dg) + g.space.parity(n % dg)) & 1)
        .collect();
    let names: Vec<String> = (0..da * dg)
        .map(|n| format!("{}({})", a.space.name(n / dg), g.space.name(n % dg)))
        .collect();
    let space = GradedSpace::new(parities, Some(names))?;

    let mut entries = BTreeMap::new();
    for ((p, q, r), av) in a.mu.entries().map(|(k, v)| ((k[0], k[1], k[2]), v)) {
        for ((i, j, k), gv) in g.bracket.entries().map(|(k, v)| ((k[0], k[1], k[2]), v)) {
            let key = [pair_index(p, i), pair_index(q, j), pair_index(r, k)];
            let mut value = Vector::zero(da * dg);
            for (s, ac) in av.coords.iter().enumerate() {
                if ac.is_zero() {
                    continue;
                }
                for (l, gc) in gv.coords.iter().enumerate() {
                    if !gc.is_zero() {
                        value.coords[pair_index(s, l)] = ac * gc;
                    }
                }
            }
            let slot = entries.entry(key).or_insert_with(|| Vector::zero(da * dg));
            *slot = slot.add(&value);
        }
    }
    entries.retain(|_, v: &mut Vector| !v.is_zero());
    let bracket = TriBracket::new(&space, entries)?;
    let alpha = EvenMap::new(&space, a.alpha.matrix().kronecker(g.alpha.matrix()))?;
    let beta = EvenMap::new(&space, a.beta.matrix().kronecker(g.beta.matrix()))?;
    let product = ThreeBihomLieSuper::new(space, bracket, alpha, beta)?;
    let report = product.verify();
    if !report.overall() {
        return Err(Error::ReportedMismatch {
            what: "tensor product output".into(),
            report,
        });
    }
    Ok(product)
}
