//! JSON algebra files: ingestion with located validation errors, and
//! deterministic rendering. Rationals travel as strings, so round-trips are
//! bit-exact and no floating point can leak in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::assoc3::ThreeBihomAssoc;
use crate::bihom2::BihomLieSuper2;
use crate::bracket::{BiBracket, TriBracket};
use crate::graded::{GradedSpace, Subspace, Vector};
use crate::linalg::{EvenMap, Matrix};
use crate::quadratic::{QuadraticAlgebra, SuperForm};
use crate::rep::{CocycleTensor, Representation};
use crate::scalar::Scalar;
use crate::threebihom::ThreeBihomLieSuper;
use crate::Error;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BracketEntry {
    pub args: Vec<usize>,
    pub out: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleBlock {
    pub dim: usize,
    pub parity: Vec<u8>,
    pub basis: Vec<String>,
    pub alpha: Vec<Vec<String>>,
    pub beta: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RhoEntry {
    pub args: Vec<usize>,
    pub matrix: Vec<Vec<String>>,
}

/// The on-disk shape of an algebra bundle, with optional representation,
/// cocycle, form, linear-map, and named-subspace blocks.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub arity: u8,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub basis: Vec<String>,
    pub bracket: Vec<BracketEntry>,
    pub alpha: Vec<Vec<String>>,
    pub beta: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub associative: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<RhoEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<BracketEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

fn parse_scalar(field: &str, s: &str) -> Result<Scalar, Error> {
    Scalar::parse(s).map_err(|e| Error::Validation {
        field: field.to_string(),
        reason: e.to_string(),
    })
}

fn parse_matrix(field: &str, rows: &[Vec<String>], rows_n: usize, cols_n: usize) -> Result<Matrix, Error> {
    if rows.len() != rows_n {
        return Err(Error::Validation {
            field: field.to_string(),
            reason: format!("expected {rows_n} rows, found {}", rows.len()),
        });
    }
    let mut out = Vec::with_capacity(rows_n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols_n {
            return Err(Error::Validation {
                field: format!("{field}[{i}]"),
                reason: format!("expected {cols_n} columns, found {}", row.len()),
            });
        }
        let mut parsed = Vec::with_capacity(cols_n);
        for (j, s) in row.iter().enumerate() {
            parsed.push(parse_scalar(&format!("{field}[{i}][{j}]"), s)?);
        }
        out.push(parsed);
    }
    Matrix::from_rows(out)
}

fn render_matrix(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).render()).collect())
        .collect()
}

fn out_to_vector(
    field: &str,
    out: &BTreeMap<String, String>,
    space: &GradedSpace,
) -> Result<Vector, Error> {
    let mut v = Vector::zero(space.dim());
    for (label, value) in out {
        let idx = space.index_of(label).ok_or_else(|| Error::Validation {
            field: field.to_string(),
            reason: format!("unknown basis label {label:?}"),
        })?;
        v.coords[idx] = parse_scalar(&format!("{field}.{label}"), value)?;
    }
    Ok(v)
}

fn vector_to_out(v: &Vector, space: &GradedSpace) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (i, c) in v.coords.iter().enumerate() {
        if !c.is_zero() {
            out.insert(space.name(i).to_string(), c.render());
        }
    }
    out
}

/// Parses and structurally validates an algebra file.
pub fn parse_algebra(bytes: &[u8]) -> Result<AlgebraFile, Error> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("not UTF-8: {e}")))?;
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("JSON: {e}")))?;
    file.validate()?;
    Ok(file)
}

impl AlgebraFile {
    pub fn validate(&self) -> Result<(), Error> {
        if self.arity != 2 && self.arity != 3 {
            return Err(Error::Validation {
                field: "arity".into(),
                reason: format!("must be 2 or 3, found {}", self.arity),
            });
        }
        if self.parity.len() != self.dim {
            return Err(Error::Validation {
                field: "parity".into(),
                reason: format!("length {} does not match dim {}", self.parity.len(), self.dim),
            });
        }
        if self.basis.len() != self.dim {
            return Err(Error::Validation {
                field: "basis".into(),
                reason: format!("length {} does not match dim {}", self.basis.len(), self.dim),
            });
        }
        if self.parity.iter().any(|&p| p > 1) {
            return Err(Error::Validation {
                field: "parity".into(),
                reason: "entries must be 0 or 1".into(),
            });
        }
        for (n, entry) in self.bracket.iter().enumerate() {
            if entry.args.len() != self.arity as usize {
                return Err(Error::Validation {
                    field: format!("bracket[{n}].args"),
                    reason: format!("expected {} indices", self.arity),
                });
            }
            if entry.args.iter().any(|&i| i >= self.dim) {
                return Err(Error::Validation {
                    field: format!("bracket[{n}].args"),
                    reason: "index out of range".into(),
                });
            }
        }
        if let Some(m) = &self.module {
            if m.parity.len() != m.dim || m.basis.len() != m.dim {
                return Err(Error::Validation {
                    field: "module".into(),
                    reason: "parity/basis lengths must match module dim".into(),
                });
            }
        }
        Ok(())
    }

    pub fn space(&self) -> Result<GradedSpace, Error> {
        GradedSpace::new(self.parity.clone(), Some(self.basis.clone()))
    }

    fn structure_maps(&self, space: &GradedSpace) -> Result<(EvenMap, EvenMap), Error> {
        let alpha = EvenMap::new(space, parse_matrix("alpha", &self.alpha, self.dim, self.dim)?)?;
        let beta = EvenMap::new(space, parse_matrix("beta", &self.beta, self.dim, self.dim)?)?;
        Ok((alpha, beta))
    }

    pub fn to_bundle2(&self) -> Result<BihomLieSuper2, Error> {
        if self.arity != 2 {
            return Err(Error::Validation {
                field: "arity".into(),
                reason: "expected an arity-2 file".into(),
            });
        }
        let space = self.space()?;
        let mut entries = BTreeMap::new();
        for (n, e) in self.bracket.iter().enumerate() {
            let v = out_to_vector(&format!("bracket[{n}].out"), &e.out, &space)?;
            entries.insert([e.args[0], e.args[1]], v);
        }
        let bracket = BiBracket::new(&space, entries)?;
        let (alpha, beta) = self.structure_maps(&space)?;
        BihomLieSuper2::new(space, bracket, alpha, beta)
    }

    pub fn tri_bracket(&self, space: &GradedSpace) -> Result<TriBracket, Error> {
        let mut entries = BTreeMap::new();
        for (n, e) in self.bracket.iter().enumerate() {
            let v = out_to_vector(&format!("bracket[{n}].out"), &e.out, space)?;
            entries.insert([e.args[0], e.args[1], e.args[2]], v);
        }
        TriBracket::new(space, entries)
    }

    pub fn to_bundle3(&self) -> Result<ThreeBihomLieSuper, Error> {
        if self.arity != 3 {
            return Err(Error::Validation {
                field: "arity".into(),
                reason: "expected an arity-3 file".into(),
            });
        }
        let space = self.space()?;
        let bracket = self.tri_bracket(&space)?;
        let (alpha, beta) = self.structure_maps(&space)?;
        ThreeBihomLieSuper::new(space, bracket, alpha, beta)
    }

    pub fn to_assoc(&self) -> Result<ThreeBihomAssoc, Error> {
        if self.arity != 3 {
            return Err(Error::Validation {
                field: "arity".into(),
                reason: "associative bundles use arity 3".into(),
            });
        }
        let space = self.space()?;
        let mu = self.tri_bracket(&space)?;
        let (alpha, beta) = self.structure_maps(&space)?;
        ThreeBihomAssoc::new(space, mu, alpha, beta)
    }

    pub fn module_space(&self) -> Result<Option<GradedSpace>, Error> {
        match &self.module {
            None => Ok(None),
            Some(m) => Ok(Some(GradedSpace::new(
                m.parity.clone(),
                Some(m.basis.clone()),
            )?)),
        }
    }

    /// The representation block, when both `module` and `rho` are present.
    pub fn representation(&self, g: &ThreeBihomLieSuper) -> Result<Option<Representation>, Error> {
        let Some(block) = &self.module else {
            return Ok(None);
        };
        let module = GradedSpace::new(block.parity.clone(), Some(block.basis.clone()))?;
        let alpha_m = EvenMap::new(
            &module,
            parse_matrix("module.alpha", &block.alpha, block.dim, block.dim)?,
        )?;
        let beta_m = EvenMap::new(
            &module,
            parse_matrix("module.beta", &block.beta, block.dim, block.dim)?,
        )?;
        let mut rho = BTreeMap::new();
        for (n, entry) in self.rho.as_deref().unwrap_or(&[]).iter().enumerate() {
            if entry.args.len() != 2 || entry.args.iter().any(|&i| i >= self.dim) {
                return Err(Error::Validation {
                    field: format!("rho[{n}].args"),
                    reason: "expected a pair of in-range indices".into(),
                });
            }
            let m = parse_matrix(&format!("rho[{n}].matrix"), &entry.matrix, block.dim, block.dim)?;
            rho.insert((entry.args[0], entry.args[1]), m);
        }
        Ok(Some(Representation::new(
            &g.space, module, rho, alpha_m, beta_m,
        )?))
    }

    /// The cocycle block, valued in the given module space.
    pub fn cocycle(
        &self,
        g: &ThreeBihomLieSuper,
        module: &GradedSpace,
    ) -> Result<Option<CocycleTensor>, Error> {
        let Some(entries) = &self.theta else {
            return Ok(None);
        };
        let mut out = BTreeMap::new();
        for (n, e) in entries.iter().enumerate() {
            if e.args.len() != 3 || e.args.iter().any(|&i| i >= self.dim) {
                return Err(Error::Validation {
                    field: format!("theta[{n}].args"),
                    reason: "expected a triple of in-range indices".into(),
                });
            }
            let v = out_to_vector(&format!("theta[{n}].out"), &e.out, module)?;
            out.insert([e.args[0], e.args[1], e.args[2]], v);
        }
        Ok(Some(CocycleTensor::new(&g.space, module, out)?))
    }

    pub fn super_form(&self, space: &GradedSpace) -> Result<Option<SuperForm>, Error> {
        match &self.form {
            None => Ok(None),
            Some(rows) => {
                let gram = parse_matrix("form", rows, self.dim, self.dim)?;
                Ok(Some(SuperForm::new(space, gram)?))
            }
        }
    }

    /// The `f` block: a linear map from the algebra into the module.
    pub fn f_map(
        &self,
        g: &ThreeBihomLieSuper,
        module: &GradedSpace,
    ) -> Result<Option<EvenMap>, Error> {
        match &self.f {
            None => Ok(None),
            Some(rows) => {
                let m = parse_matrix("f", rows, module.dim(), self.dim)?;
                Ok(Some(EvenMap::between(&g.space, module, m)?))
            }
        }
    }

    pub fn named_ideal(&self, name: &str) -> Result<Option<Subspace>, Error> {
        let Some(ideals) = &self.ideals else {
            return Ok(None);
        };
        let Some(rows) = ideals.get(name) else {
            return Ok(None);
        };
        let vectors = rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                if row.len() != self.dim {
                    return Err(Error::Validation {
                        field: format!("ideals.{name}[{n}]"),
                        reason: "wrong coordinate count".into(),
                    });
                }
                let coords = row
                    .iter()
                    .enumerate()
                    .map(|(j, s)| parse_scalar(&format!("ideals.{name}[{n}][{j}]"), s))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Vector { coords })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Some(Subspace::from_vectors(self.dim, &vectors)?))
    }

    pub fn from_bundle2(name: &str, b: &BihomLieSuper2) -> AlgebraFile {
        let bracket = b
            .bracket
            .entries()
            .map(|(idx, v)| BracketEntry {
                args: idx.to_vec(),
                out: vector_to_out(v, &b.space),
            })
            .collect();
        AlgebraFile {
            name: name.to_string(),
            arity: 2,
            dim: b.space.dim(),
            parity: b.space.parities().to_vec(),
            basis: b.space.names().to_vec(),
            bracket,
            alpha: render_matrix(b.alpha.matrix()),
            beta: render_matrix(b.beta.matrix()),
            associative: None,
            module: None,
            rho: None,
            theta: None,
            form: None,
            f: None,
            ideals: None,
        }
    }

    pub fn from_bundle3(name: &str, b: &ThreeBihomLieSuper) -> AlgebraFile {
        let bracket = b
            .bracket
            .entries()
            .map(|(idx, v)| BracketEntry {
                args: idx.to_vec(),
                out: vector_to_out(v, &b.space),
            })
            .collect();
        AlgebraFile {
            name: name.to_string(),
            arity: 3,
            dim: b.space.dim(),
            parity: b.space.parities().to_vec(),
            basis: b.space.names().to_vec(),
            bracket,
            alpha: render_matrix(b.alpha.matrix()),
            beta: render_matrix(b.beta.matrix()),
            associative: None,
            module: None,
            rho: None,
            theta: None,
            form: None,
            f: None,
            ideals: None,
        }
    }

    pub fn with_form(mut self, form: &SuperForm) -> AlgebraFile {
        self.form = Some(render_matrix(form.gram()));
        self
    }

    pub fn with_theta(mut self, theta: &CocycleTensor, module: &GradedSpace) -> AlgebraFile {
        self.theta = Some(
            theta
                .entries()
                .map(|(idx, v)| BracketEntry {
                    args: idx.to_vec(),
                    out: vector_to_out(v, module),
                })
                .collect(),
        );
        self
    }

    pub fn from_quadratic(name: &str, qa: &QuadraticAlgebra) -> AlgebraFile {
        AlgebraFile::from_bundle3(name, &qa.algebra).with_form(&qa.form)
    }

    /// Deterministic pretty-printed rendering; `parse_algebra` of the output
    /// reproduces the value bit-exactly.
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra file serialization is infallible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn n4_round_trip() {
        let n4 = catalog::n4();
        let file = AlgebraFile::from_bundle3("n4", &n4);
        let rendered = file.render();
        let parsed = parse_algebra(rendered.as_bytes()).unwrap();
        assert_eq!(parsed, file);
        let back = parsed.to_bundle3().unwrap();
        assert_eq!(back, n4);
        assert_eq!(parsed.render(), rendered);
    }

    #[test]
    fn parity_length_mismatch_is_located() {
        let n4 = catalog::n4();
        let mut file = AlgebraFile::from_bundle3("bad", &n4);
        file.parity = vec![0, 0, 0];
        let err = parse_algebra(file.render().as_bytes()).unwrap_err();
        match err {
            Error::Validation { field, reason } => {
                assert_eq!(field, "parity");
                assert!(reason.contains("does not match"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn bad_rational_is_rejected() {
        let n4 = catalog::n4();
        let mut file = AlgebraFile::from_bundle3("bad", &n4);
        file.alpha[0][0] = "1/0".into();
        let parsed = parse_algebra(file.render().as_bytes()).unwrap();
        assert!(matches!(
            parsed.to_bundle3(),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn bracket_arity_is_validated() {
        let n4 = catalog::n4();
        let mut file = AlgebraFile::from_bundle3("bad", &n4);
        file.bracket[0].args = vec![0, 1];
        assert!(matches!(
            parse_algebra(file.render().as_bytes()),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn osp12_round_trip() {
        let osp = catalog::osp12_lie();
        let file = AlgebraFile::from_bundle2("osp12", &osp);
        let parsed = parse_algebra(file.render().as_bytes()).unwrap();
        let back = parsed.to_bundle2().unwrap();
        assert_eq!(back, osp);
    }
}
