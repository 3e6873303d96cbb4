//! Irreducible representations of `(Z_p×Z_p) ⋊ (Z_q×Z_q)` by the little-group
//! method: orbits of `Q` on the characters of `P`, stabilizers, and induction
//! from `P·Q_χ`.

use std::collections::{BTreeMap, BTreeSet};

use super::matrix::{roots_of_unity, CMatrix, ComplexScalar};
use super::matrix_rep::MatrixRep;
use crate::error::Result;
use crate::group::Elem;
use crate::lambda_group::{CanonicalAction, ModelGroup};
use crate::par;

/// A `Q`-orbit of characters `χ_(u,v)(a,b) = ω_p^{ua+vb}` of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterOrbit {
    /// The lexicographically smallest `(u, v)` in the orbit.
    pub representative: (u32, u32),
    pub members: Vec<(u32, u32)>,
    /// `Q_χ`, sorted.
    pub stabilizer: Vec<(u32, u32)>,
}

impl CharacterOrbit {
    /// `[Q : Q_χ]`, the dimension of every representation induced from this orbit.
    pub fn induced_dim(&self, q: u32) -> usize {
        (q * q) as usize / self.stabilizer.len()
    }
}

/// `(x,y)·χ = χ ∘ act_{(x,y)⁻¹}`, the character obtained by conjugating with `(x, y)`.
/// Characters are linear, so evaluating on the basis vectors pins them down.
pub fn dual_action(act: &CanonicalAction, x: u32, y: u32, chi: (u32, u32)) -> (u32, u32) {
    let (p, q) = (act.p() as u64, act.q());
    let (xi, yi) = ((q - x) % q, (q - y) % q);
    let (a1, b1) = act.apply(xi, yi, 1, 0);
    let (a2, b2) = act.apply(xi, yi, 0, 1);
    let (u, v) = (chi.0 as u64, chi.1 as u64);
    (
        ((u * a1 as u64 + v * b1 as u64) % p) as u32,
        ((u * a2 as u64 + v * b2 as u64) % p) as u32,
    )
}

/// All orbits, ordered by representative.
pub fn character_orbits(act: &CanonicalAction) -> Vec<CharacterOrbit> {
    let (p, q) = (act.p(), act.q());
    let qs: Vec<(u32, u32)> = (0..q).flat_map(|x| (0..q).map(move |y| (x, y))).collect();
    let mut seen = vec![false; (p * p) as usize];
    let mut orbits = Vec::new();
    for u in 0..p {
        for v in 0..p {
            if seen[(u * p + v) as usize] {
                continue;
            }
            let chi = (u, v);
            let images: Vec<(u32, u32)> = qs
                .iter()
                .map(|&(x, y)| dual_action(act, x, y, chi))
                .collect();
            let members: BTreeSet<(u32, u32)> = images.iter().copied().collect();
            for &(a, b) in &members {
                seen[(a * p + b) as usize] = true;
            }
            let stabilizer = qs
                .iter()
                .zip(&images)
                .filter(|(_, &img)| img == chi)
                .map(|(&s, _)| s)
                .collect();
            orbits.push(CharacterOrbit {
                representative: chi,
                members: members.into_iter().collect(),
                stabilizer,
            });
        }
    }
    orbits
}

/// Irrep dimensions predicted by the orbit data alone: each orbit contributes
/// `|Q_χ|` representations of dimension `[Q : Q_χ]`.
pub fn mackey_dimensions(act: &CanonicalAction) -> BTreeMap<u64, u64> {
    let mut dims = BTreeMap::new();
    for orbit in character_orbits(act) {
        *dims.entry(orbit.induced_dim(act.q()) as u64).or_insert(0) +=
            orbit.stabilizer.len() as u64;
    }
    dims
}

/// Distinct restrictions `ψ_(j,k)|_S` of the characters `ψ_(j,k)(x,y) = ω_q^{jx+ky}`
/// of `Q`, each named by the first `(j, k)` producing it.
pub fn stabilizer_characters(q: u32, stabilizer: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for j in 0..q {
        for k in 0..q {
            let restriction: Vec<u32> = stabilizer
                .iter()
                .map(|&(x, y)| (j * x + k * y) % q)
                .collect();
            if seen.insert(restriction) {
                out.push((j, k));
            }
        }
    }
    out
}

/// One irreducible representation built from an orbit and a character of its
/// stabilizer.
#[derive(Clone, Debug)]
pub struct MackeyIrrep {
    pub orbit: (u32, u32),
    pub stabilizer_character: (u32, u32),
    pub rep: MatrixRep,
}

/// Every irreducible representation of the model group, one per (orbit,
/// stabilizer character) pair, in that order.
///
/// `σ(h, s) = χ(h)·ψ(s)` on `G₁ = P·Q_χ` is induced to the whole group with
/// `ρ(g)_{ij} = σ̇(t_i⁻¹ g t_j)`, where the `t_i` are the lexicographically first
/// members of the left cosets of `G₁`.
pub fn mackey_irreps(model: &ModelGroup) -> Result<Vec<MackeyIrrep>> {
    let act = &model.action;
    let g = &model.group;
    let (p, q) = (act.p(), act.q());
    let wp = roots_of_unity(p);
    let wq = roots_of_unity(q);
    let mut jobs = Vec::new();
    for orbit in character_orbits(act) {
        for psi in stabilizer_characters(q, &orbit.stabilizer) {
            jobs.push((orbit.clone(), psi));
        }
    }
    let built = par::map_slice(&jobs, |(orbit, psi)| {
        let in_stab: BTreeSet<(u32, u32)> = orbit.stabilizer.iter().copied().collect();
        let (u, v) = orbit.representative;
        // σ̇ on the whole group: zero off G₁.
        let sigma = |e: Elem| -> Option<ComplexScalar> {
            let (a, b, x, y) = (e.get(0), e.get(1), e.get(2), e.get(3));
            in_stab.contains(&(x, y)).then(|| {
                wp[((u * a + v * b) % p) as usize] * wq[((psi.0 * x + psi.1 * y) % q) as usize]
            })
        };
        let cosets = coset_representatives(model, &in_stab);
        let inverses: Vec<Elem> = cosets.iter().map(|&t| g.inv(t)).collect();
        let n = cosets.len();
        let rep = MatrixRep::from_fn(g, |e| {
            let mut m = CMatrix::zeros(n);
            for (i, &ti) in inverses.iter().enumerate() {
                let left = g.mul(ti, e);
                for (j, &tj) in cosets.iter().enumerate() {
                    if let Some(z) = sigma(g.mul(left, tj)) {
                        m.set(i, j, z);
                    }
                }
            }
            m
        })?;
        Ok(MackeyIrrep {
            orbit: orbit.representative,
            stabilizer_character: *psi,
            rep,
        })
    });
    built.into_iter().collect()
}

/// Left-coset representatives of `P·S`, each the smallest element of its coset.
fn coset_representatives(model: &ModelGroup, stabilizer: &BTreeSet<(u32, u32)>) -> Vec<Elem> {
    let g = &model.group;
    let p = model.action.p();
    let subgroup: Vec<Elem> = stabilizer
        .iter()
        .flat_map(|&(x, y)| (0..p).flat_map(move |a| (0..p).map(move |b| Elem::quad(a, b, x, y))))
        .collect();
    let mut taken = vec![false; g.order()];
    let mut reps = Vec::new();
    for i in 0..g.order() {
        if taken[i] {
            continue;
        }
        let t = g.element(i);
        reps.push(t);
        for &h in &subgroup {
            taken[g.index(g.mul(t, h))] = true;
        }
    }
    reps
}
