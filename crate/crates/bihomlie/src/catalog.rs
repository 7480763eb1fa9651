//! Small stock algebras used throughout the tests, the bundled data files,
//! and the acceptance suite.

use crate::bracket::TriBracket;
use crate::graded::{GradedSpace, Vector};
use crate::threebihom::ThreeBihomLieSuper;

pub use crate::bihom2::osp12_lie;

/// Purely even 4-dimensional nilpotent 3-Lie algebra: `[e1,e2,e3] = e4`,
/// all other brackets zero, identity structure maps.
pub fn n4() -> ThreeBihomLieSuper {
    let space = GradedSpace::even(4);
    let bracket =
        TriBracket::from_seeds_super_skew(&space, &[([0, 1, 2], Vector::unit(4, 3))]).unwrap();
    ThreeBihomLieSuper::from_3lie(space, bracket).unwrap()
}

/// Purely even 3-dimensional solvable, non-nilpotent 3-Lie algebra:
/// `[e1,e2,e3] = e3`.
pub fn l3() -> ThreeBihomLieSuper {
    let space = GradedSpace::even(3);
    let bracket =
        TriBracket::from_seeds_super_skew(&space, &[([0, 1, 2], Vector::unit(3, 2))]).unwrap();
    ThreeBihomLieSuper::from_3lie(space, bracket).unwrap()
}

/// 4-dimensional 3-Lie superalgebra with a nontrivial odd part: basis
/// (e1, e2 | f1, f2) with parities (0, 0, 1, 1) and `[e1, f1, f2] = e2`;
/// e2 is central, so every nested bracket vanishes.
pub fn n22() -> ThreeBihomLieSuper {
    let space = GradedSpace::new(
        vec![0, 0, 1, 1],
        Some(vec!["e1".into(), "e2".into(), "f1".into(), "f2".into()]),
    )
    .unwrap();
    let bracket =
        TriBracket::from_seeds_super_skew(&space, &[([0, 2, 3], Vector::unit(4, 1))]).unwrap();
    ThreeBihomLieSuper::from_3lie(space, bracket).unwrap()
}

/// Abelian superalgebra on the given parity vector, identity maps.
pub fn abelian(parities: Vec<u8>) -> ThreeBihomLieSuper {
    let space = GradedSpace::new(parities, None).unwrap();
    let bracket = TriBracket::zero(&space);
    ThreeBihomLieSuper::from_3lie(space, bracket).unwrap()
}

/// 1-dimensional purely odd abelian superalgebra; the smallest space with
/// a nonzero admissible dual-valued cocycle.
pub fn odd1() -> ThreeBihomLieSuper {
    let space = GradedSpace::new(vec![1], Some(vec!["f".into()])).unwrap();
    let bracket = TriBracket::zero(&space);
    ThreeBihomLieSuper::from_3lie(space, bracket).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_verifies() {
        for g in [n4(), l3(), n22(), abelian(vec![0, 1]), odd1()] {
            assert!(g.verify().overall(), "corpus algebra failed to verify");
        }
    }
}
