//! Sparse structure-constant tensors for binary and ternary even brackets.
//!
//! Absent index tuples denote the zero bracket. Evenness (the parity of every
//! nonzero output coordinate equals the sum of the argument parities) is
//! enforced at construction; skewsymmetry is an axiom checked by the
//! verifiers, not a storage invariant.

use std::collections::BTreeMap;

use crate::graded::{GradedSpace, Vector};
use crate::scalar::Scalar;
use crate::Error;

/// Koszul factor picked up by reordering homogeneous elements with the given
/// parities via adjacent swaps: `true` means an overall minus sign.
fn permutation_super_sign(perm: &[usize], parities: &[u8]) -> bool {
    // Bubble the permutation into identity; each adjacent transposition of
    // elements with parities p, q contributes -(-1)^{pq}.
    let mut perm = perm.to_vec();
    let mut negative = false;
    for i in 0..perm.len() {
        for j in (i + 1..perm.len()).rev() {
            if perm[j - 1] > perm[j] {
                let (a, b) = (perm[j - 1], perm[j]);
                negative ^= true; // the -1 of the transposition
                negative ^= (parities[a] & parities[b]) == 1; // the Koszul sign
                perm.swap(j - 1, j);
            }
        }
    }
    negative
}

fn normalize_entries<const N: usize>(
    space: &GradedSpace,
    entries: BTreeMap<[usize; N], Vector>,
) -> Result<BTreeMap<[usize; N], Vector>, Error> {
    let dim = space.dim();
    let mut out = BTreeMap::new();
    for (idx, v) in entries {
        if idx.iter().any(|&i| i >= dim) {
            return Err(Error::Validation {
                field: "bracket".into(),
                reason: format!("index tuple {idx:?} out of range for dimension {dim}"),
            });
        }
        if v.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "bracket value of dimension {} in dimension {dim}",
                v.dim()
            )));
        }
        if v.is_zero() {
            continue;
        }
        let want = space.tuple_parity(&idx);
        for (l, c) in v.coords.iter().enumerate() {
            if !c.is_zero() && space.parity(l) != want {
                return Err(Error::ParityViolation {
                    what: "bracket".into(),
                    detail: reason_tuple(idx.as_slice(), l),
                });
            }
        }
        out.insert(idx, v);
    }
    Ok(out)
}

fn reason_tuple(idx: &[usize], l: usize) -> String {
    format!("entry {idx:?} has output coordinate {l} of wrong parity")
}

macro_rules! bracket_impl {
    ($name:ident, $n:literal, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Debug)]
        pub struct $name {
            dim: usize,
            entries: BTreeMap<[usize; $n], Vector>,
        }

        impl $name {
            pub fn new(
                space: &GradedSpace,
                entries: BTreeMap<[usize; $n], Vector>,
            ) -> Result<Self, Error> {
                Ok(Self {
                    dim: space.dim(),
                    entries: normalize_entries(space, entries)?,
                })
            }

            pub fn zero(space: &GradedSpace) -> Self {
                Self {
                    dim: space.dim(),
                    entries: BTreeMap::new(),
                }
            }

            /// Extends seed entries to their full orbit under graded
            /// skewsymmetry. Fails if the seeds are mutually inconsistent
            /// (for example a nonzero value on a repeated even index).
            pub fn from_seeds_super_skew(
                space: &GradedSpace,
                seeds: &[([usize; $n], Vector)],
            ) -> Result<Self, Error> {
                let mut entries: BTreeMap<[usize; $n], Vector> = BTreeMap::new();
                let perms = permutations($n);
                for (idx, value) in seeds {
                    let parities: Vec<u8> =
                        idx.iter().map(|&i| space.parity(i)).collect();
                    for perm in &perms {
                        let mut target = [0usize; $n];
                        for (slot, &src) in perm.iter().enumerate() {
                            target[slot] = idx[src];
                        }
                        let negative = permutation_super_sign(perm, &parities);
                        let v = if negative { value.neg() } else { value.clone() };
                        match entries.get(&target) {
                            None => {
                                entries.insert(target, v);
                            }
                            Some(existing) if *existing == v => {}
                            Some(_) => {
                                return Err(Error::Validation {
                                    field: "bracket".into(),
                                    reason: format!(
                                        "skew-symmetrization of seed {idx:?} is inconsistent at {target:?}"
                                    ),
                                });
                            }
                        }
                    }
                }
                Self::new(space, entries)
            }

            pub fn dim(&self) -> usize {
                self.dim
            }

            pub fn entries(&self) -> impl Iterator<Item = (&[usize; $n], &Vector)> {
                self.entries.iter()
            }

            pub fn support_len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_zero(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn eval_basis(&self, idx: [usize; $n]) -> Vector {
                self.entries
                    .get(&idx)
                    .cloned()
                    .unwrap_or_else(|| Vector::zero(self.dim))
            }

            /// Multilinear evaluation on coordinate vectors.
            pub fn eval(&self, args: [&Vector; $n]) -> Vector {
                let mut out = Vector::zero(self.dim);
                'entry: for (idx, value) in &self.entries {
                    let mut coeff = Scalar::one();
                    for (slot, &i) in idx.iter().enumerate() {
                        let c = &args[slot].coords[i];
                        if c.is_zero() {
                            continue 'entry;
                        }
                        coeff = &coeff * c;
                    }
                    out.add_scaled(&coeff, value);
                }
                out
            }

            /// Raw graded skewsymmetry of the stored tensor in the first two
            /// slots (no twisting by the structure maps).
            pub fn is_raw_skew_12(&self, space: &GradedSpace) -> bool {
                let mut idx_swapped;
                for (idx, value) in &self.entries {
                    idx_swapped = *idx;
                    idx_swapped.swap(0, 1);
                    let sign_negative = (space.parity(idx[0]) & space.parity(idx[1])) == 0;
                    let other = self.eval_basis(idx_swapped);
                    let expected = if sign_negative { other.neg() } else { other };
                    if *value != expected {
                        return false;
                    }
                }
                true
            }
        }
    };
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

bracket_impl!(
    BiBracket,
    2,
    "Structure constants of an even bilinear bracket, indexed by basis pairs."
);
bracket_impl!(
    TriBracket,
    3,
    "Structure constants of an even trilinear bracket, indexed by basis triples."
);

impl TriBracket {
    /// Entries of the block-diagonal sum bracket on `left ⊕ right`.
    pub fn direct_sum(
        left: &TriBracket,
        right: &TriBracket,
        sum_space: &GradedSpace,
    ) -> Result<TriBracket, Error> {
        let shift = left.dim;
        let dim = sum_space.dim();
        let mut entries = BTreeMap::new();
        for (idx, v) in &left.entries {
            let mut value = Vector::zero(dim);
            for (l, c) in v.coords.iter().enumerate() {
                value.coords[l] = c.clone();
            }
            entries.insert(*idx, value);
        }
        for (idx, v) in &right.entries {
            let mut value = Vector::zero(dim);
            for (l, c) in v.coords.iter().enumerate() {
                value.coords[shift + l] = c.clone();
            }
            entries.insert([idx[0] + shift, idx[1] + shift, idx[2] + shift], value);
        }
        TriBracket::new(sum_space, entries)
    }
}
