//! Maps between finite groups, stored as image tables, with homomorphism and
//! isomorphism verification.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupRef};
use crate::par;

#[derive(Clone)]
pub struct GroupMap {
    source: GroupRef,
    target: GroupRef,
    images: Vec<Elem>,
}

impl std::fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupMap({} -> {})",
            self.source.name(),
            self.target.name()
        )
    }
}

impl GroupMap {
    pub fn from_fn<F>(source: &GroupRef, target: &GroupRef, f: F) -> Self
    where
        F: Fn(Elem) -> Elem + Sync + Send,
    {
        let images = par::map(source.order(), |i| f(source.element(i)));
        Self {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    pub fn identity(g: &GroupRef) -> Self {
        Self::from_fn(g, g, |x| x)
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.images[self.source.index(e)]
    }

    /// `next ∘ self`; `next` must start where `self` ends.
    pub fn then(&self, next: &GroupMap) -> Result<GroupMap> {
        if !Arc::ptr_eq(&self.target, &next.source) {
            return Err(Error::Internal(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.name(),
                self.target.name(),
                next.source.name(),
                next.target.name()
            )));
        }
        Ok(GroupMap {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|&e| next.apply(e)).collect(),
        })
    }

    /// The inverse map, if `self` is a bijection.
    pub fn inverse(&self) -> Option<GroupMap> {
        if self.source.order() != self.target.order() {
            return None;
        }
        let mut back = vec![None; self.target.order()];
        for (i, &e) in self.images.iter().enumerate() {
            if !self.target.contains(e) {
                return None;
            }
            let slot = &mut back[self.target.index(e)];
            if slot.is_some() {
                return None;
            }
            *slot = Some(self.source.element(i));
        }
        let images = back.into_iter().collect::<Option<Vec<_>>>()?;
        Some(GroupMap {
            source: self.target.clone(),
            target: self.source.clone(),
            images,
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.inverse().is_some()
    }

    /// `f(ab) = f(a)f(b)`: over all pairs when the source is within
    /// `element_cap`; otherwise over all `(a, s)` with `s` a generator (which
    /// already forces the law everywhere) plus seeded random pairs.
    pub fn is_homomorphism(&self, limits: &Limits) -> bool {
        let (src, tgt) = (&self.source, &self.target);
        let n = src.order();
        if !self.images.iter().all(|&e| tgt.contains(e)) {
            return false;
        }
        if n <= limits.element_cap {
            return par::all(n, |i| {
                let a = src.element(i);
                let fa = self.images[i];
                (0..n).all(|j| {
                    let b = src.element(j);
                    self.apply(src.mul(a, b)) == tgt.mul(fa, self.images[j])
                })
            });
        }
        let gens = src.generators().to_vec();
        let on_generators = par::all(n, |i| {
            let a = src.element(i);
            gens.iter()
                .all(|&s| self.apply(src.mul(a, s)) == tgt.mul(self.images[i], self.apply(s)))
        });
        if !on_generators {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
        (0..limits.random_pairs).all(|_| {
            let a = src.element(rng.gen_range(0..n));
            let b = src.element(rng.gen_range(0..n));
            self.apply(src.mul(a, b)) == tgt.mul(self.apply(a), self.apply(b))
        })
    }

    pub fn is_isomorphism(&self, limits: &Limits) -> bool {
        self.is_bijective() && self.is_homomorphism(limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn identity_shift_and_constant() {
        let limits = Limits::default();
        let z6: GroupRef = Arc::new(FiniteGroup::cyclic(6));
        let id = GroupMap::identity(&z6);
        assert!(id.is_homomorphism(&limits));
        assert!(id.is_isomorphism(&limits));

        let z4: GroupRef = Arc::new(FiniteGroup::cyclic(4));
        let shift = GroupMap::from_fn(&z4, &z4, |x| Elem::new(&[(x.get(0) + 1) % 4]));
        assert!(!shift.is_homomorphism(&limits));
        assert!(!shift.is_isomorphism(&limits));

        let constant = GroupMap::from_fn(&z6, &z6, |_| Elem::new(&[0]));
        assert!(constant.is_homomorphism(&limits));
        assert!(!constant.is_isomorphism(&limits));
    }

    #[test]
    fn generator_route_agrees_with_exhaustive() {
        let z12: GroupRef = Arc::new(FiniteGroup::cyclic(12));
        let z4: GroupRef = Arc::new(FiniteGroup::cyclic(4));
        let small = Limits {
            element_cap: 4,
            ..Limits::default()
        };
        let reduce = GroupMap::from_fn(&z12, &z4, |x| Elem::new(&[x.get(0) % 4]));
        assert!(reduce.is_homomorphism(&Limits::default()));
        assert!(reduce.is_homomorphism(&small));
        let square = GroupMap::from_fn(&z12, &z4, |x| Elem::new(&[(x.get(0) * x.get(0)) % 4]));
        assert!(!square.is_homomorphism(&Limits::default()));
        assert!(!square.is_homomorphism(&small));
    }

    #[test]
    fn inverse_and_composition() {
        let z5: GroupRef = Arc::new(FiniteGroup::cyclic(5));
        let double = GroupMap::from_fn(&z5, &z5, |x| Elem::new(&[(2 * x.get(0)) % 5]));
        let inv = double.inverse().unwrap();
        let round = double.then(&inv).unwrap();
        assert!(z5.elements().all(|x| round.apply(x) == x));
        let other: GroupRef = Arc::new(FiniteGroup::cyclic(5));
        let stray = GroupMap::identity(&other);
        assert!(double.then(&stray).is_err());
    }
}
