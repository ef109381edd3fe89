//! Evaluation of whiskered 2-cell expressions.
//!
//! An expression is a vertical chain of layers; each layer juxtaposes
//! identity 1-cells and named 2-cells. Two tensor-order conventions are
//! supported for turning a layer into a Kronecker product:
//!
//! * [`Convention::LeftOuter`] — the leftmost written factor is the outer
//!   (leftmost) Kronecker factor. This is the convention of the cell
//!   calculus in [`crate::emw`], where 1-cell composition is the plain
//!   tensor product of spaces.
//! * [`Convention::RightOuter`] — the leftmost written factor is the
//!   innermost Kronecker factor. This is how the same expressions read as
//!   components of natural transformations between functors of the form
//!   `(−) ⊗ X` on module categories: the first functor applied contributes
//!   the leftmost tensor slot, so written order reverses.
//!
//! The two readings of one expression agree up to conjugating every atom by
//! factor reversal ([`crate::linalg::mirror`]); this is tested, and gives
//! the mechanical left/right mirroring used by the entwining classifiers.

use crate::linalg::{FieldSpec, LinMap};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    LeftOuter,
    RightOuter,
}

/// One factor of a layer: an identity 1-cell of the given dimension, or a
/// 2-cell given by a matrix.
#[derive(Clone, Copy)]
pub enum Factor<'a> {
    Id(usize),
    Map(&'a LinMap),
}

/// Shorthand for [`Factor::Id`].
pub fn id(n: usize) -> Factor<'static> {
    Factor::Id(n)
}

/// Shorthand for [`Factor::Map`].
pub fn m(map: &LinMap) -> Factor<'_> {
    Factor::Map(map)
}

/// Kronecker product of a layer's factors, in convention order.
pub fn layer(field: FieldSpec, conv: Convention, factors: &[Factor]) -> LinMap {
    let mut acc = LinMap::identity(field, 1);
    let eval = |f: &Factor| -> LinMap {
        match f {
            Factor::Id(n) => LinMap::identity(field, *n),
            Factor::Map(m) => (*m).clone(),
        }
    };
    match conv {
        Convention::LeftOuter => {
            for f in factors {
                acc = acc.kron(&eval(f)).expect("same field");
            }
        }
        Convention::RightOuter => {
            for f in factors.iter().rev() {
                acc = acc.kron(&eval(f)).expect("same field");
            }
        }
    }
    acc
}

/// Vertical composite of layers, first layer outermost (applied last):
/// `chain([a, b, c]) = a ∘ b ∘ c`.
pub fn chain(layers: &[LinMap]) -> Result<LinMap> {
    let mut it = layers.iter();
    let mut acc = it.next().expect("chain of at least one layer").clone();
    for next in it {
        acc = acc.compose(next)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mirror;

    const F7: FieldSpec = FieldSpec::Fp(7);

    #[test]
    fn layer_orders() {
        let a = LinMap::from_int_rows(F7, &[&[1, 2], &[3, 4]]);
        let left = layer(F7, Convention::LeftOuter, &[m(&a), id(3)]);
        assert_eq!(left, a.kron(&LinMap::identity(F7, 3)).unwrap());
        let right = layer(F7, Convention::RightOuter, &[m(&a), id(3)]);
        assert_eq!(right, LinMap::identity(F7, 3).kron(&a).unwrap());
    }

    #[test]
    fn conventions_agree_through_mirror() {
        // For psi: X⊗Y → Y⊗X-shaped atoms, evaluating a whiskered layer in
        // one convention equals the mirror of evaluating the layer of
        // mirrored atoms in the other convention.
        let psi = LinMap::from_int_rows(F7, &[&[1, 0, 2, 1], &[0, 3, 1, 1], &[1, 1, 0, 0], &[2, 0, 1, 5]]);
        let left = layer(F7, Convention::LeftOuter, &[id(3), m(&psi)]);
        let psi_m = mirror(&psi, &[2, 2], &[2, 2]);
        let right = layer(F7, Convention::RightOuter, &[id(3), m(&psi_m)]);
        // left: 3 ⊗ (2⊗2 → 2⊗2); right: (2⊗2 → 2⊗2) ⊗ 3 with reversed atoms.
        assert_eq!(
            mirror(&left, &[3, 2, 2], &[3, 2, 2]),
            right
        );
    }
}
