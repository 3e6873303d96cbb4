//! Finite groups on residue tuples with closed-form multiplication.
//!
//! Elements are tuples of up to four residues. A group never materializes its
//! Cayley table; multiplication and inversion are evaluated through a
//! [`GroupLaw`]. Elements are densely indexed in mixed radix with the first
//! coordinate most significant, so index order is lexicographic order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::par;

pub const MAX_COORDS: usize = 4;

/// A tuple of residues.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    len: u8,
    c: [u32; MAX_COORDS],
}

impl Elem {
    pub fn new(coords: &[u32]) -> Self {
        assert!(
            coords.len() <= MAX_COORDS,
            "at most {MAX_COORDS} coordinates"
        );
        let mut c = [0; MAX_COORDS];
        c[..coords.len()].copy_from_slice(coords);
        Self {
            len: coords.len() as u8,
            c,
        }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(&[0; MAX_COORDS][..len])
    }

    pub fn pair(a: u32, b: u32) -> Self {
        Self::new(&[a, b])
    }

    pub fn quad(a: u32, b: u32, c: u32, d: u32) -> Self {
        Self::new(&[a, b, c, d])
    }

    pub fn coords(&self) -> &[u32] {
        &self.c[..self.len as usize]
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len as usize);
        self.c[i]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `(h, g)` as one tuple, `h` first.
    pub fn concat(h: Elem, g: Elem) -> Self {
        let mut c = [0; MAX_COORDS];
        let (lh, lg) = (h.len(), g.len());
        assert!(lh + lg <= MAX_COORDS);
        c[..lh].copy_from_slice(h.coords());
        c[lh..lh + lg].copy_from_slice(g.coords());
        Self {
            len: (lh + lg) as u8,
            c,
        }
    }

    /// Inverse of [`Elem::concat`]: the first `k` coordinates and the rest.
    pub fn split(&self, k: usize) -> (Elem, Elem) {
        (
            Elem::new(&self.coords()[..k]),
            Elem::new(&self.coords()[k..]),
        )
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.len {
            4 => write!(
                f,
                "(({}, {}), ({}, {}))",
                self.c[0], self.c[1], self.c[2], self.c[3]
            ),
            _ => {
                write!(f, "(")?;
                for (i, x) in self.coords().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Multiplication and inversion of a group whose elements are residue tuples.
pub trait GroupLaw: Send + Sync {
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn inv(&self, a: Elem) -> Elem;
}

struct FnLaw<M, I> {
    mul: M,
    inv: I,
}

impl<M, I> GroupLaw for FnLaw<M, I>
where
    M: Fn(Elem, Elem) -> Elem + Send + Sync,
    I: Fn(Elem) -> Elem + Send + Sync,
{
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        (self.mul)(a, b)
    }
    fn inv(&self, a: Elem) -> Elem {
        (self.inv)(a)
    }
}

/// A Cayley table over densely indexed elements. Only used to build deliberately
/// perturbed groups in tests; no law is checked on construction.
struct TableLaw {
    moduli: Vec<u32>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    n: usize,
}

impl GroupLaw for TableLaw {
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let i = encode(&self.moduli, a);
        let j = encode(&self.moduli, b);
        decode(&self.moduli, self.table[i * self.n + j] as usize)
    }
    fn inv(&self, a: Elem) -> Elem {
        decode(
            &self.moduli,
            self.inverses[encode(&self.moduli, a)] as usize,
        )
    }
}

struct OppositeLaw(Arc<dyn GroupLaw>);

impl GroupLaw for OppositeLaw {
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul(b, a)
    }
    fn inv(&self, a: Elem) -> Elem {
        self.0.inv(a)
    }
}

/// `action(g, h)`: the image of `h ∈ H` under the automorphism attached to `g ∈ G`.
pub type Action = Arc<dyn Fn(Elem, Elem) -> Elem + Send + Sync>;

struct SemidirectLaw {
    h: GroupRef,
    g: GroupRef,
    action: Action,
    split: usize,
}

impl GroupLaw for SemidirectLaw {
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (h1, g1) = a.split(self.split);
        let (h2, g2) = b.split(self.split);
        Elem::concat(self.h.mul(h1, (self.action)(g1, h2)), self.g.mul(g1, g2))
    }
    fn inv(&self, a: Elem) -> Elem {
        let (h, g) = a.split(self.split);
        let gi = self.g.inv(g);
        Elem::concat((self.action)(gi, self.h.inv(h)), gi)
    }
}

fn encode(moduli: &[u32], e: Elem) -> usize {
    moduli
        .iter()
        .zip(e.coords())
        .fold(0usize, |acc, (&m, &x)| acc * m as usize + x as usize)
}

fn decode(moduli: &[u32], mut idx: usize) -> Elem {
    let mut c = [0u32; MAX_COORDS];
    for (k, &m) in moduli.iter().enumerate().rev() {
        c[k] = (idx % m as usize) as u32;
        idx /= m as usize;
    }
    Elem::new(&c[..moduli.len()])
}

pub type GroupRef = Arc<FiniteGroup>;

/// Partition of a group into conjugacy classes.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    /// Classes ordered by their smallest element; members sorted.
    pub classes: Vec<Vec<Elem>>,
    /// Class number of each element, by element index.
    pub class_of: Vec<u32>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// The smallest element of each class.
    pub fn representatives(&self) -> Vec<Elem> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// A finite group on residue tuples, immutable after construction.
pub struct FiniteGroup {
    name: String,
    moduli: Vec<u32>,
    order: usize,
    law: Arc<dyn GroupLaw>,
    generators: OnceLock<Vec<Elem>>,
    classes: OnceLock<Arc<ClassPartition>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("moduli", &self.moduli)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// A group on all tuples with the given per-coordinate moduli. The identity is
    /// the zero tuple.
    pub fn new(name: impl Into<String>, moduli: Vec<u32>, law: Arc<dyn GroupLaw>) -> Self {
        assert!(!moduli.is_empty() && moduli.len() <= MAX_COORDS);
        assert!(moduli.iter().all(|&m| m > 0));
        let order = moduli.iter().map(|&m| m as usize).product();
        Self {
            name: name.into(),
            moduli,
            order,
            law,
            generators: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn from_fns<M, I>(name: impl Into<String>, moduli: Vec<u32>, mul: M, inv: I) -> Self
    where
        M: Fn(Elem, Elem) -> Elem + Send + Sync + 'static,
        I: Fn(Elem) -> Elem + Send + Sync + 'static,
    {
        Self::new(name, moduli, Arc::new(FnLaw { mul, inv }))
    }

    /// `Z_n` on single residues.
    pub fn cyclic(n: u32) -> Self {
        Self::from_fns(
            format!("Z{n}"),
            vec![n],
            move |a, b| Elem::new(&[(a.get(0) + b.get(0)) % n]),
            move |a| Elem::new(&[(n - a.get(0)) % n]),
        )
    }

    /// `Z_m1 × ... × Z_mk` with coordinatewise addition.
    pub fn abelian(moduli: &[u32]) -> Self {
        let name = moduli
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x");
        let mm = moduli.to_vec();
        let mi = moduli.to_vec();
        Self::from_fns(
            name,
            moduli.to_vec(),
            move |a, b| {
                let c: Vec<u32> = (0..mm.len())
                    .map(|k| (a.get(k) + b.get(k)) % mm[k])
                    .collect();
                Elem::new(&c)
            },
            move |a| {
                let c: Vec<u32> = (0..mi.len()).map(|k| (mi[k] - a.get(k)) % mi[k]).collect();
                Elem::new(&c)
            },
        )
    }

    /// A group from a Cayley table over element indices, `table[i * n + j]` being
    /// the index of the product. The identity must be index 0.
    pub fn from_table(name: impl Into<String>, moduli: Vec<u32>, table: Vec<u32>) -> Self {
        let n: usize = moduli.iter().map(|&m| m as usize).product();
        assert_eq!(table.len(), n * n);
        let inverses = (0..n)
            .map(|i| (0..n).find(|&j| table[i * n + j] == 0).unwrap_or(0) as u32)
            .collect();
        let law = TableLaw {
            moduli: moduli.clone(),
            table,
            inverses,
            n,
        };
        Self::new(name, moduli, Arc::new(law))
    }

    /// The materialized Cayley table, as accepted by [`FiniteGroup::from_table`].
    pub fn cayley_table(&self) -> Vec<u32> {
        let n = self.order;
        let mut t = Vec::with_capacity(n * n);
        for i in 0..n {
            let a = self.element(i);
            for j in 0..n {
                t.push(self.index(self.mul(a, self.element(j))) as u32);
            }
        }
        t
    }

    /// The same element set with `a ·' b = b · a`.
    pub fn opposite(&self) -> Self {
        Self::new(
            format!("{}^op", self.name),
            self.moduli.clone(),
            Arc::new(OppositeLaw(self.law.clone())),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn arity(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        Elem::zero(self.moduli.len())
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.law.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.law.inv(a)
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.len() == self.moduli.len() && e.coords().iter().zip(&self.moduli).all(|(x, m)| x < m)
    }

    pub fn check_member(&self, e: Elem) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                group: self.name.clone(),
                elem: e,
            })
        }
    }

    /// Dense index of `e`; lexicographic order on tuples.
    #[inline]
    pub fn index(&self, e: Elem) -> usize {
        encode(&self.moduli, e)
    }

    #[inline]
    pub fn element(&self, idx: usize) -> Elem {
        decode(&self.moduli, idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn pow(&self, e: Elem, k: u64) -> Elem {
        let mut acc = self.identity();
        let mut base = e;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, e: Elem) -> u64 {
        let id = self.identity();
        let mut acc = e;
        let mut k = 1;
        while acc != id {
            acc = self.mul(acc, e);
            k += 1;
        }
        k
    }

    /// `a·b·a⁻¹·b⁻¹`
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// `s·x·s⁻¹`
    #[inline]
    pub fn conj(&self, s: Elem, x: Elem) -> Elem {
        self.mul(self.mul(s, x), self.inv(s))
    }

    /// A small generating set: greedily adds elements of largest order not yet
    /// covered, then drops any generator the others already produce.
    pub fn generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            if self.order == 1 {
                return Vec::new();
            }
            let orders = par::map(self.order, |i| self.element_order(self.element(i)));
            let mut candidates: Vec<usize> = (1..self.order).collect();
            candidates.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
            let mut gens: Vec<Elem> = Vec::new();
            let mut covered = self.closure_mask(&gens);
            let mut size = 1;
            for idx in candidates {
                if size == self.order {
                    break;
                }
                if !covered[idx] {
                    gens.push(self.element(idx));
                    covered = self.closure_mask(&gens);
                    size = covered.iter().filter(|&&b| b).count();
                }
            }
            let mut k = 0;
            while k < gens.len() && gens.len() > 1 {
                let mut rest = gens.clone();
                rest.remove(k);
                if self.closure_mask(&rest).iter().all(|&b| b) {
                    gens = rest;
                } else {
                    k += 1;
                }
            }
            gens
        })
    }

    /// Membership bitmap of the subgroup generated by `gens`. Right multiplication
    /// by generators suffices in a finite group.
    pub(crate) fn closure_mask(&self, gens: &[Elem]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        let id = self.identity();
        seen[self.index(id)] = true;
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                let iy = self.index(y);
                if !seen[iy] {
                    seen[iy] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    fn mask_to_set(&self, mask: &[bool]) -> BTreeSet<Elem> {
        mask.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.element(i))
            .collect()
    }

    /// The smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Result<BTreeSet<Elem>> {
        for &g in gens {
            self.check_member(g)?;
        }
        Ok(self.mask_to_set(&self.closure_mask(gens)))
    }

    /// The commutator subgroup, computed as the normal closure of the commutators
    /// of generator pairs.
    pub fn commutator_subgroup(&self) -> BTreeSet<Elem> {
        let gens = self.generators();
        let classes = self.conjugacy_classes();
        let mut class_taken = vec![false; classes.len()];
        let mut normal_gens = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.commutator(a, b);
                let k = classes.class_of[self.index(c)] as usize;
                if !class_taken[k] {
                    class_taken[k] = true;
                    normal_gens.extend_from_slice(&classes.classes[k]);
                }
            }
        }
        self.mask_to_set(&self.closure_mask(&normal_gens))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> BTreeSet<Elem> {
        let gens = self.generators();
        self.elements()
            .filter(|&x| gens.iter().all(|&s| self.mul(s, x) == self.mul(x, s)))
            .collect()
    }

    /// Conjugacy classes as orbits under conjugation by the generating set.
    pub fn conjugacy_classes(&self) -> Arc<ClassPartition> {
        self.classes
            .get_or_init(|| {
                let gens = self.generators().to_vec();
                let inverses: Vec<Elem> = gens.iter().map(|&s| self.inv(s)).collect();
                let mut class_of = vec![u32::MAX; self.order];
                let mut classes = Vec::new();
                for start in 0..self.order {
                    if class_of[start] != u32::MAX {
                        continue;
                    }
                    let k = classes.len() as u32;
                    class_of[start] = k;
                    let mut members = vec![self.element(start)];
                    let mut head = 0;
                    while head < members.len() {
                        let x = members[head];
                        head += 1;
                        for (&s, &si) in gens.iter().zip(&inverses) {
                            let y = self.mul(self.mul(s, x), si);
                            let iy = self.index(y);
                            if class_of[iy] == u32::MAX {
                                class_of[iy] = k;
                                members.push(y);
                            }
                        }
                    }
                    members.sort();
                    classes.push(members);
                }
                Arc::new(ClassPartition { classes, class_of })
            })
            .clone()
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    /// Closure, identity, inverse and associativity laws. Closure and the
    /// identity/inverse laws run over all elements (all pairs for closure when the
    /// order is within `element_cap`); associativity is exhaustive up to
    /// `exhaustive_assoc_max` and sampled above.
    pub fn check_axioms(&self, limits: &Limits) -> Result<()> {
        let n = self.order;
        let fail = |detail: String| Error::GroupAxiom {
            group: self.name.clone(),
            detail,
        };
        let id = self.identity();
        if let Some((_, x)) = par::find_first(n, |i| {
            let x = self.element(i);
            let xi = self.inv(x);
            let ok = self.contains(xi)
                && self.mul(id, x) == x
                && self.mul(x, id) == x
                && self.mul(x, xi) == id
                && self.mul(xi, x) == id;
            (!ok).then_some(x)
        }) {
            return Err(fail(format!("identity or inverse law fails at {x:?}")));
        }
        if n <= limits.element_cap {
            if let Some((_, (a, b))) = par::find_first(n, |i| {
                let a = self.element(i);
                self.elements()
                    .find(|&b| !self.contains(self.mul(a, b)))
                    .map(|b| (a, b))
            }) {
                return Err(fail(format!("product of {a:?} and {b:?} leaves the group")));
            }
        }
        let assoc =
            |a: Elem, b: Elem, c: Elem| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= limits.exhaustive_assoc_max {
            if let Some((_, (a, b, c))) = par::find_first(n * n, |ij| {
                let a = self.element(ij / n);
                let b = self.element(ij % n);
                self.elements()
                    .find(|&c| !assoc(a, b, c))
                    .map(|c| (a, b, c))
            }) {
                return Err(fail(format!("associativity fails at {a:?}, {b:?}, {c:?}")));
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
            for _ in 0..limits.random_assoc_triples {
                let a = self.element(rng.gen_range(0..n));
                let b = self.element(rng.gen_range(0..n));
                let c = self.element(rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(fail(format!("associativity fails at {a:?}, {b:?}, {c:?}")));
                }
            }
        }
        Ok(())
    }

    /// Histogram of element orders.
    pub fn element_order_histogram(&self) -> BTreeMap<u64, usize> {
        let orders = par::map(self.order, |i| self.element_order(self.element(i)));
        let mut h = BTreeMap::new();
        for o in orders {
            *h.entry(o).or_insert(0) += 1;
        }
        h
    }
}

/// `H ⋊ G` with `(h1, g1)(h2, g2) = (h1 · action(g1, h2), g1 g2)`, on tuples `(h, g)`.
///
/// Every `action(g, ·)` is checked to be an automorphism of `H` and `g ↦ action(g, ·)`
/// to be a homomorphism into `Aut(H)`: exhaustively over `G` when `|G|` is within
/// `element_cap`, on generators of `G` otherwise.
pub fn semidirect_product(
    h: &GroupRef,
    g: &GroupRef,
    action: Action,
    limits: &Limits,
) -> Result<FiniteGroup> {
    if h.arity() + g.arity() > MAX_COORDS {
        return Err(Error::Parameter(format!(
            "{} ⋊ {} needs more than {MAX_COORDS} coordinates",
            h.name(),
            g.name()
        )));
    }
    check_action(h, g, &action, limits)?;
    let mut moduli = h.moduli().to_vec();
    moduli.extend_from_slice(g.moduli());
    let law = SemidirectLaw {
        h: h.clone(),
        g: g.clone(),
        action,
        split: h.arity(),
    };
    Ok(FiniteGroup::new(
        format!("{} ⋊ {}", h.name(), g.name()),
        moduli,
        Arc::new(law),
    ))
}

/// `H × G`.
pub fn direct_product(h: &GroupRef, g: &GroupRef, limits: &Limits) -> Result<FiniteGroup> {
    semidirect_product(h, g, Arc::new(|_, x| x), limits)
}

fn check_action(h: &GroupRef, g: &GroupRef, action: &Action, limits: &Limits) -> Result<()> {
    let hgens = h.generators().to_vec();
    let acting: Vec<Elem> = if g.order() <= limits.element_cap {
        g.elements().collect()
    } else {
        g.generators().to_vec()
    };
    let bad = |msg: String| Err(Error::InvalidAction(msg));
    for x in h.elements() {
        if action(g.identity(), x) != x {
            return bad(format!("identity of {} moves {x:?}", g.name()));
        }
    }
    let failure = par::find_first(acting.len(), |k| {
        let a = acting[k];
        let mut hit = vec![false; h.order()];
        for x in h.elements() {
            let y = action(a, x);
            if !h.contains(y) {
                return Some(format!("{a:?} sends {x:?} outside {}", h.name()));
            }
            hit[h.index(y)] = true;
            for &s in &hgens {
                if action(a, h.mul(x, s)) != h.mul(y, action(a, s)) {
                    return Some(format!("{a:?} does not act by a homomorphism"));
                }
            }
        }
        if hit.iter().any(|&b| !b) {
            return Some(format!("{a:?} does not act bijectively"));
        }
        for &t in g.generators() {
            for &s in &hgens {
                if action(g.mul(a, t), s) != action(a, action(t, s)) {
                    return Some(format!("action is not a homomorphism at {a:?}, {t:?}"));
                }
            }
        }
        None
    });
    match failure {
        Some((_, msg)) => bad(msg),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_by_z2() -> GroupRef {
        let h: GroupRef = Arc::new(FiniteGroup::cyclic(3));
        let g: GroupRef = Arc::new(FiniteGroup::cyclic(2));
        let act: Action = Arc::new(|g, h| {
            if g.get(0) == 1 {
                Elem::new(&[(3 - h.get(0)) % 3])
            } else {
                h
            }
        });
        Arc::new(semidirect_product(&h, &g, act, &Limits::default()).unwrap())
    }

    #[test]
    fn index_round_trip_is_lexicographic() {
        let g = FiniteGroup::abelian(&[3, 2, 5]);
        let elems: Vec<Elem> = g.elements().collect();
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(elems, sorted);
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(g.index(*e), i);
        }
    }

    #[test]
    fn subgroup_generated_small_cases() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.subgroup_generated(&[z6.identity()]).unwrap().len(), 1);
        assert_eq!(z6.subgroup_generated(&[Elem::new(&[1])]).unwrap().len(), 6);
        assert_eq!(z6.subgroup_generated(&[Elem::new(&[2])]).unwrap().len(), 3);
        let err = z6.subgroup_generated(&[Elem::new(&[6])]);
        assert!(matches!(err, Err(Error::InvalidElement { .. })));
        let err = z6.subgroup_generated(&[Elem::pair(0, 1)]);
        assert!(matches!(err, Err(Error::InvalidElement { .. })));
    }

    #[test]
    fn abelian_groups_have_trivial_commutator_and_singleton_classes() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.commutator_subgroup().len(), 1);
        let cls = z6.conjugacy_classes();
        assert_eq!(cls.len(), 6);
        assert!(cls.classes.iter().all(|c| c.len() == 1));
        assert!(z6.is_abelian());
    }

    #[test]
    fn s3_as_semidirect_product() {
        let s3 = z3_by_z2();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.class_count(), 3);
        assert_eq!(s3.commutator_subgroup().len(), 3);
        assert_eq!(s3.center().len(), 1);
        s3.check_axioms(&Limits::default()).unwrap();
    }

    #[test]
    fn trivial_action_gives_abelian_direct_product() {
        let a: GroupRef = Arc::new(FiniteGroup::cyclic(4));
        let b: GroupRef = Arc::new(FiniteGroup::cyclic(3));
        let d = direct_product(&a, &b, &Limits::default()).unwrap();
        assert_eq!(d.order(), 12);
        assert!(d.is_abelian());
        d.check_axioms(&Limits::default()).unwrap();
    }

    #[test]
    fn non_automorphic_action_is_rejected() {
        let h: GroupRef = Arc::new(FiniteGroup::cyclic(3));
        let g: GroupRef = Arc::new(FiniteGroup::cyclic(2));
        // x ↦ x + 1 is not a homomorphism of Z3
        let shift: Action = Arc::new(|g, h| {
            if g.get(0) == 1 {
                Elem::new(&[(h.get(0) + 1) % 3])
            } else {
                h
            }
        });
        assert!(matches!(
            semidirect_product(&h, &g, shift, &Limits::default()),
            Err(Error::InvalidAction(_))
        ));
        // doubling is an automorphism of Z3 but has order 2, so Z3 cannot act by it
        let z3: GroupRef = Arc::new(FiniteGroup::cyclic(3));
        let dbl: Action = Arc::new(|g, h| {
            if g.get(0) != 0 {
                Elem::new(&[(2 * h.get(0)) % 3])
            } else {
                h
            }
        });
        assert!(semidirect_product(&h, &z3, dbl, &Limits::default()).is_err());
    }

    #[test]
    fn table_round_trip_and_corruption() {
        let s3 = z3_by_z2();
        let t = s3.cayley_table();
        let copy = FiniteGroup::from_table("S3", s3.moduli().to_vec(), t.clone());
        copy.check_axioms(&Limits::default()).unwrap();
        let mut bad = t;
        bad[6 + 2] = (bad[6 + 2] + 1) % 6;
        let broken = FiniteGroup::from_table("S3*", s3.moduli().to_vec(), bad);
        assert!(broken.check_axioms(&Limits::default()).is_err());
    }

    #[test]
    fn generators_are_minimal_for_small_groups() {
        assert_eq!(FiniteGroup::cyclic(6).generators().len(), 1);
        assert_eq!(FiniteGroup::abelian(&[2, 2]).generators().len(), 2);
        assert_eq!(z3_by_z2().generators().len(), 2);
        assert_eq!(FiniteGroup::cyclic(1).generators().len(), 0);
    }
}
