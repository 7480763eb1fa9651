//! Z2-graded spaces, their vectors, and exact subspaces.

use crate::linalg::{rref, Matrix};
use crate::scalar::Scalar;
use crate::Error;

/// A finite basis with a parity (0 = even, 1 = odd) and a label per index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    parity: Vec<u8>,
    names: Vec<String>,
}

impl GradedSpace {
    pub fn new(parity: Vec<u8>, names: Option<Vec<String>>) -> Result<Self, Error> {
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::Validation {
                field: "parity".into(),
                reason: "parities must be 0 or 1".into(),
            });
        }
        let names = match names {
            Some(names) => {
                if names.len() != parity.len() {
                    return Err(Error::Validation {
                        field: "basis".into(),
                        reason: format!(
                            "{} labels for dimension {}",
                            names.len(),
                            parity.len()
                        ),
                    });
                }
                names
            }
            None => (1..=parity.len()).map(|i| format!("e{i}")).collect(),
        };
        Ok(GradedSpace { parity, names })
    }

    /// Purely even space of the given dimension with default labels.
    pub fn even(dim: usize) -> Self {
        GradedSpace::new(vec![0; dim], None).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sum of the parities of the given indices, mod 2.
    pub fn tuple_parity(&self, idx: &[usize]) -> u8 {
        idx.iter().map(|&i| self.parity[i]).sum::<u8>() & 1
    }

    /// Basis-level concatenation, used by direct sums and extensions.
    pub fn concat(&self, other: &GradedSpace) -> GradedSpace {
        let mut parity = self.parity.clone();
        parity.extend_from_slice(&other.parity);
        let mut names = self.names.clone();
        for n in &other.names {
            let mut candidate = n.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        GradedSpace { parity, names }
    }

    /// Dual space: same parities, labels starred.
    pub fn dual(&self) -> GradedSpace {
        GradedSpace {
            parity: self.parity.clone(),
            names: self.names.iter().map(|n| format!("{n}*")).collect(),
        }
    }
}

/// A coordinate vector over [`GradedSpace`] basis order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector {
    pub coords: Vec<Scalar>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector {
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Vector::zero(dim);
        v.coords[i] = Scalar::one();
        v
    }

    pub fn from_entries(dim: usize, entries: &[(usize, Scalar)]) -> Self {
        let mut v = Vector::zero(dim);
        for (i, s) in entries {
            v.coords[*i] = s.clone();
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add_scaled(&mut self, s: &Scalar, other: &Vector) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += &(s * b);
        }
    }

    /// Dual pairing: treats `self` as a functional in the dual basis.
    pub fn pair(&self, v: &Vector) -> Scalar {
        self.coords
            .iter()
            .zip(&v.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Parity of a homogeneous vector. The zero vector counts as even;
    /// a vector with support on both parities is an error.
    pub fn homogeneous_parity(&self, space: &GradedSpace) -> Result<u8, Error> {
        let mut found: Option<u8> = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = space.parity(i);
            match found {
                None => found = Some(p),
                Some(q) if q != p => {
                    return Err(Error::NotHomogeneous);
                }
                _ => {}
            }
        }
        Ok(found.unwrap_or(0))
    }

    /// Splits into the (even, odd) coordinate projections.
    pub fn parity_components(&self, space: &GradedSpace) -> (Vector, Vector) {
        let mut even = Vector::zero(self.dim());
        let mut odd = Vector::zero(self.dim());
        for (i, c) in self.coords.iter().enumerate() {
            if space.parity(i) == 0 {
                even.coords[i] = c.clone();
            } else {
                odd.coords[i] = c.clone();
            }
        }
        (even, odd)
    }
}

/// An exact subspace, stored as the reduced row-echelon basis of its span.
/// The canonical storage makes equality and membership checks exact and
/// reports deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn from_vectors(ambient: usize, vectors: &[Vector]) -> Result<Self, Error> {
        for v in vectors {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "subspace vector of dimension {} in ambient dimension {ambient}",
                    v.dim()
                )));
            }
        }
        let rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.coords.clone()).collect();
        let m = Matrix::from_rows_with_cols(rows, ambient);
        let (reduced, pivots) = rref(&m);
        let basis = (0..pivots.len())
            .map(|r| Vector {
                coords: (0..ambient).map(|c| reduced.get(r, c).clone()).collect(),
            })
            .collect();
        Ok(Subspace { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| Vector::unit(ambient, i)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        // Reduce v against the echelon basis.
        let mut v = v.clone();
        for b in &self.basis {
            let pivot = b.coords.iter().position(|c| !c.is_zero()).unwrap();
            if !v.coords[pivot].is_zero() {
                let c = v.coords[pivot].clone();
                v.add_scaled(&-&c, b);
            }
        }
        v.is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Span of the union.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, &vs).unwrap()
    }

    /// True when the subspace splits along the grading.
    pub fn is_graded(&self, space: &GradedSpace) -> bool {
        self.basis
            .iter()
            .all(|v| {
                let (even, odd) = v.parity_components(space);
                self.contains(&even) && self.contains(&odd)
            })
    }

    /// Homogeneous basis of a graded subspace.
    pub fn graded_basis(&self, space: &GradedSpace) -> Result<Vec<Vector>, Error> {
        if !self.is_graded(space) {
            return Err(Error::ParityObstruction);
        }
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for v in &self.basis {
            let (e, o) = v.parity_components(space);
            even.push(e);
            odd.push(o);
        }
        let even = Subspace::from_vectors(self.ambient, &even)?;
        let odd = Subspace::from_vectors(self.ambient, &odd)?;
        let mut basis = even.basis;
        basis.extend(odd.basis);
        Ok(basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(ints: &[i64]) -> Vector {
        Vector {
            coords: ints.iter().map(|&n| Scalar::from_int(n)).collect(),
        }
    }

    #[test]
    fn space_validation() {
        assert!(GradedSpace::new(vec![0, 2], None).is_err());
        assert!(GradedSpace::new(vec![0, 1], Some(vec!["a".into()])).is_err());
        let s = GradedSpace::new(vec![0, 1, 1], None).unwrap();
        assert_eq!(s.names(), &["e1", "e2", "e3"]);
        assert_eq!(s.tuple_parity(&[1, 2]), 0);
        assert_eq!(s.tuple_parity(&[0, 1]), 1);
    }

    #[test]
    fn homogeneity() {
        let s = GradedSpace::new(vec![0, 1], None).unwrap();
        assert_eq!(Vector::unit(2, 0).homogeneous_parity(&s).unwrap(), 0);
        assert_eq!(Vector::unit(2, 1).homogeneous_parity(&s).unwrap(), 1);
        assert_eq!(Vector::zero(2).homogeneous_parity(&s).unwrap(), 0);
        assert!(vec_of(&[1, 1]).homogeneous_parity(&s).is_err());
    }

    #[test]
    fn subspace_membership_and_equality() {
        let s = Subspace::from_vectors(3, &[vec_of(&[1, 2, 0]), vec_of(&[2, 4, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&vec_of(&[3, 6, 0])));
        assert!(!s.contains(&vec_of(&[1, 0, 0])));
        let t = Subspace::from_vectors(3, &[vec_of(&[-1, -2, 0])]).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn graded_split() {
        let space = GradedSpace::new(vec![0, 1], None).unwrap();
        let mixed = Subspace::from_vectors(2, &[vec_of(&[1, 1])]).unwrap();
        assert!(!mixed.is_graded(&space));
        let graded = Subspace::from_vectors(2, &[vec_of(&[1, 1]), vec_of(&[1, -1])]).unwrap();
        assert!(graded.is_graded(&space));
        assert_eq!(graded.graded_basis(&space).unwrap().len(), 2);
    }
}
