//! Derived and central descending series, solvability and nilpotency.

use crate::graded::{Subspace, Vector};
use crate::threebihom::ThreeBihomLieSuper;

/// Span of `[a, b, c]` over basis vectors of the three subspaces.
pub fn bracket_span(
    g: &ThreeBihomLieSuper,
    a: &Subspace,
    b: &Subspace,
    c: &Subspace,
) -> Subspace {
    let mut images: Vec<Vector> = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            for z in c.basis() {
                let v = g.bracket_vec(x, y, z);
                if !v.is_zero() {
                    images.push(v);
                }
            }
        }
    }
    Subspace::from_vectors(g.dim(), &images).expect("bracket images live in the ambient space")
}

fn chain(
    g: &ThreeBihomLieSuper,
    step: impl Fn(&Subspace) -> Subspace,
) -> Vec<Subspace> {
    // The chain stops at the first repeat; the dimension strictly decreases
    // until then, so it has at most dim(g) + 1 terms.
    let mut out = vec![Subspace::full(g.dim())];
    loop {
        let next = step(out.last().unwrap());
        if &next == out.last().unwrap() {
            break;
        }
        let stationary = next.is_zero();
        out.push(next);
        if stationary {
            break;
        }
    }
    out
}

/// Derived series: `g^(0) = g`, `g^(n+1) = [g^(n), g^(n), g]`, computed until
/// stationary.
pub fn derived_series(g: &ThreeBihomLieSuper) -> Vec<Subspace> {
    let full = Subspace::full(g.dim());
    chain(g, |s| bracket_span(g, s, s, &full))
}

/// Central descending series: `g^0 = g`, `g^{n+1} = [g^n, g, g]`.
pub fn central_series(g: &ThreeBihomLieSuper) -> Vec<Subspace> {
    let full = Subspace::full(g.dim());
    chain(g, |s| bracket_span(g, s, &full, &full))
}

fn verdict(series: &[Subspace]) -> (bool, Option<usize>) {
    match series.last() {
        Some(s) if s.is_zero() => (true, Some(series.len() - 1)),
        _ => (false, None),
    }
}

/// Whether the derived series reaches zero, and the smallest such index.
pub fn is_solvable(g: &ThreeBihomLieSuper) -> (bool, Option<usize>) {
    verdict(&derived_series(g))
}

/// Whether the central series reaches zero, and the smallest such index.
pub fn is_nilpotent(g: &ThreeBihomLieSuper) -> (bool, Option<usize>) {
    verdict(&central_series(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn abelian_has_length_one() {
        let g = catalog::abelian(vec![0, 0, 1]);
        assert_eq!(is_solvable(&g), (true, Some(1)));
        assert_eq!(is_nilpotent(&g), (true, Some(1)));
    }

    #[test]
    fn n4_series() {
        let g = catalog::n4();
        let central = central_series(&g);
        assert_eq!(central.len(), 3);
        assert_eq!(central[1].dim(), 1);
        assert!(central[1].contains(&Vector::unit(4, 3)));
        assert!(central[2].is_zero());
        assert_eq!(is_nilpotent(&g), (true, Some(2)));
        assert_eq!(is_solvable(&g), (true, Some(2)));
    }

    #[test]
    fn l3_is_solvable_not_nilpotent() {
        let g = catalog::l3();
        assert_eq!(is_solvable(&g), (true, Some(2)));
        let (nilp, _) = is_nilpotent(&g);
        assert!(!nilp);
        // The central series is stationary at span(e3).
        let central = central_series(&g);
        assert_eq!(central.last().unwrap().dim(), 1);
        assert!(central.last().unwrap().contains(&Vector::unit(3, 2)));
    }
}
