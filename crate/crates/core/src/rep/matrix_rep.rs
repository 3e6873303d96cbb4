//! Matrix representations stored as one image per group element.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{CMatrix, ComplexScalar};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupRef};
use crate::map::GroupMap;
use crate::par;

/// A map `G → GL_n(ℂ)` given by its full image table. Constructors do not
/// assume the homomorphism law; use [`MatrixRep::is_homomorphism`].
#[derive(Clone)]
pub struct MatrixRep {
    group: GroupRef,
    dim: usize,
    images: Arc<Vec<CMatrix>>,
}

impl std::fmt::Debug for MatrixRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatrixRep({}, dim {})", self.group.name(), self.dim)
    }
}

impl MatrixRep {
    /// Images indexed like the group's elements.
    pub fn new(group: &GroupRef, images: Vec<CMatrix>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::Shape(images.len(), group.order()));
        }
        let dim = images.first().map_or(0, CMatrix::dim);
        if dim == 0 {
            return Err(Error::Parameter("representation of dimension 0".into()));
        }
        if let Some(m) = images.iter().find(|m| m.dim() != dim) {
            return Err(Error::Shape(m.dim(), dim));
        }
        Ok(Self {
            group: group.clone(),
            dim,
            images: Arc::new(images),
        })
    }

    pub fn from_fn<F>(group: &GroupRef, f: F) -> Result<Self>
    where
        F: Fn(Elem) -> CMatrix + Sync + Send,
    {
        Self::new(group, par::map(group.order(), |i| f(group.element(i))))
    }

    /// Extends images of a generating set along a breadth-first walk of the
    /// Cayley graph, `ρ(x·s) = ρ(x)ρ(s)`. The result is a representation iff
    /// [`MatrixRep::is_homomorphism`] holds.
    pub fn from_generator_images(group: &GroupRef, gens: &[(Elem, CMatrix)]) -> Result<Self> {
        let dim = gens
            .first()
            .map(|(_, m)| m.dim())
            .ok_or_else(|| Error::Parameter("no generator images given".into()))?;
        for (s, m) in gens {
            group.check_member(*s)?;
            if m.dim() != dim {
                return Err(Error::Shape(m.dim(), dim));
            }
        }
        let n = group.order();
        let mut images: Vec<Option<CMatrix>> = vec![None; n];
        let id = group.identity();
        images[group.index(id)] = Some(CMatrix::identity(dim));
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            let rx = images[group.index(x)].clone().expect("visited");
            for (s, rs) in gens {
                let y = group.mul(x, *s);
                let iy = group.index(y);
                if images[iy].is_none() {
                    images[iy] = Some(&rx * rs);
                    queue.push_back(y);
                }
            }
        }
        let images: Option<Vec<CMatrix>> = images.into_iter().collect();
        let images =
            images.ok_or_else(|| Error::Parameter("the given elements do not generate".into()))?;
        Self::new(group, images)
    }

    pub fn trivial(group: &GroupRef) -> Self {
        Self::from_fn(group, |_| CMatrix::identity(1)).expect("nonempty group")
    }

    /// The left regular representation: `ρ(g) e_h = e_{gh}`.
    pub fn regular(group: &GroupRef) -> Self {
        let n = group.order();
        Self::from_fn(group, |g| {
            let mut m = CMatrix::zeros(n);
            for j in 0..n {
                let i = group.index(group.mul(g, group.element(j)));
                m.set(i, j, ComplexScalar::new(1.0, 0.0));
            }
            m
        })
        .expect("nonempty group")
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn image(&self, e: Elem) -> &CMatrix {
        &self.images[self.group.index(e)]
    }

    /// Largest entrywise deviation from the homomorphism law: at the identity,
    /// on every `(a, s)` with `s` a generator (which determines the whole
    /// table), and on `random_pairs` seeded random pairs.
    pub fn homomorphism_defect(&self, limits: &Limits) -> f64 {
        let g = &self.group;
        let n = g.order();
        let at_identity = self
            .image(g.identity())
            .max_diff(&CMatrix::identity(self.dim));
        let gens = g.generators().to_vec();
        let on_gens = par::map(n, |i| {
            let a = g.element(i);
            gens.iter()
                .map(|&s| (&self.images[i] * self.image(s)).max_diff(self.image(g.mul(a, s))))
                .fold(0.0, f64::max)
        })
        .into_iter()
        .fold(0.0, f64::max);
        let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
        let pairs: Vec<(Elem, Elem)> = (0..limits.random_pairs)
            .map(|_| {
                (
                    g.element(rng.gen_range(0..n)),
                    g.element(rng.gen_range(0..n)),
                )
            })
            .collect();
        let random = par::map_slice(&pairs, |&(a, b)| {
            (self.image(a) * self.image(b)).max_diff(self.image(g.mul(a, b)))
        })
        .into_iter()
        .fold(0.0, f64::max);
        at_identity.max(on_gens).max(random)
    }

    pub fn is_homomorphism(&self, limits: &Limits, tol: f64) -> bool {
        self.homomorphism_defect(limits) <= tol
    }

    /// `ρ ∘ f` for a map `f` into this representation's group.
    pub fn pull_back(&self, f: &GroupMap) -> Result<MatrixRep> {
        if !Arc::ptr_eq(f.target(), &self.group) {
            return Err(Error::Parameter(format!(
                "map lands in {}, representation lives on {}",
                f.target().name(),
                self.group.name()
            )));
        }
        Self::from_fn(f.source(), |e| self.image(f.apply(e)).clone())
    }
}
