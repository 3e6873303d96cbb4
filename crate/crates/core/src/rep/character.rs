//! Class functions, traces of representations and the inner product.

use std::sync::Arc;

use super::matrix::ComplexScalar;
use super::matrix_rep::MatrixRep;
use crate::group::GroupRef;
use crate::par;

/// A class function: one value per conjugacy class, in the group's class order.
#[derive(Clone, Debug)]
pub struct Character {
    group: GroupRef,
    values: Vec<ComplexScalar>,
}

impl Character {
    /// Panics if the number of values differs from the number of classes.
    pub fn from_values(group: &GroupRef, values: Vec<ComplexScalar>) -> Self {
        assert_eq!(values.len(), group.class_count(), "one value per class");
        Self {
            group: group.clone(),
            values,
        }
    }

    pub fn trivial(group: &GroupRef) -> Self {
        Self::from_values(
            group,
            vec![ComplexScalar::new(1.0, 0.0); group.class_count()],
        )
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.values
    }

    /// The value at the identity, which is always the first class.
    pub fn degree(&self) -> ComplexScalar {
        self.values[0]
    }

    /// The degree rounded to an integer, if it is within `tol` of a positive one.
    pub fn dim(&self, tol: f64) -> Option<u64> {
        let d = self.degree();
        let r = d.re.round();
        (r >= 1.0 && (d - ComplexScalar::new(r, 0.0)).norm() <= tol).then_some(r as u64)
    }
}

/// The trace of each class representative's image.
pub fn character_of(rep: &MatrixRep) -> Character {
    let g = rep.group();
    let reps = g.conjugacy_classes().representatives();
    Character::from_values(g, par::map_slice(&reps, |&e| rep.image(e).trace()))
}

/// `(1/|G|) Σ_g χ₁(g) conj(χ₂(g))`, summed class by class.
///
/// Panics if the characters live on different groups.
pub fn inner_product(a: &Character, b: &Character) -> ComplexScalar {
    assert!(
        Arc::ptr_eq(&a.group, &b.group),
        "characters of different groups"
    );
    let sizes = a.group.conjugacy_classes().sizes();
    let sum: ComplexScalar = sizes
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .map(|(&k, (x, y))| x * y.conj() * k as f64)
        .sum();
    sum / a.group.order() as f64
}

/// `|⟨χ, χ⟩ - 1| < tol`.
pub fn is_irreducible(ch: &Character, tol: f64) -> bool {
    (inner_product(ch, ch) - ComplexScalar::new(1.0, 0.0)).norm() < tol
}

/// The matrix of pairwise inner products, row `i` against column `j`.
pub fn gram_matrix(chars: &[Character]) -> Vec<Vec<ComplexScalar>> {
    par::map(chars.len(), |i| {
        chars.iter().map(|b| inner_product(&chars[i], b)).collect()
    })
}

/// Largest deviation of the Gram matrix from the identity.
pub fn orthonormality_defect(chars: &[Character]) -> f64 {
    gram_matrix(chars)
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter().enumerate().map(move |(j, &z)| {
                let target = if i == j { 1.0 } else { 0.0 };
                (z - ComplexScalar::new(target, 0.0)).norm()
            })
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::rep::matrix::{root_of_unity, CMatrix};

    #[test]
    fn cyclic_characters() {
        let z3: GroupRef = Arc::new(FiniteGroup::cyclic(3));
        let triv = Character::trivial(&z3);
        assert!((inner_product(&triv, &triv) - 1.0).norm() < 1e-12);
        assert!(is_irreducible(&triv, 1e-6));
        let lin = |k: i64| {
            character_of(
                &MatrixRep::from_fn(&z3, |e| {
                    CMatrix::scalar(root_of_unity(3, k * e.get(0) as i64))
                })
                .unwrap(),
            )
        };
        let chars = [lin(0), lin(1), lin(2)];
        assert!(orthonormality_defect(&chars) < 1e-12);
        assert_eq!(chars[1].dim(1e-6), Some(1));
    }

    #[test]
    fn regular_character_of_z2() {
        let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
        let reg = character_of(&MatrixRep::regular(&z2));
        assert_eq!(
            reg.values(),
            &[ComplexScalar::new(2.0, 0.0), ComplexScalar::new(0.0, 0.0)]
        );
        assert!((inner_product(&reg, &reg) - 2.0).norm() < 1e-12);
        assert!(!is_irreducible(&reg, 1e-6));
    }
}
