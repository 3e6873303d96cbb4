//! Invariant fingerprints and a backtracking isomorphism search for small groups.
//!
//! The search maps a small generating set of the first group onto elements of the
//! second with matching (element order, class size) labels. The first generator
//! only needs to be tried on conjugacy-class representatives, since composing with
//! an inner automorphism moves its image anywhere in its class. Each partial
//! assignment is extended over the subgroup it generates and abandoned as soon as
//! it stops being a well-defined injective map.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupRef};
use crate::map::GroupMap;
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub element_orders: BTreeMap<u64, usize>,
    pub class_sizes: BTreeMap<usize, usize>,
    pub commutator_order: usize,
    pub class_count: usize,
    pub center_order: usize,
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let classes = g.conjugacy_classes();
    let mut class_sizes = BTreeMap::new();
    for c in &classes.classes {
        *class_sizes.entry(c.len()).or_insert(0) += 1;
    }
    Fingerprint {
        order: g.order(),
        element_orders: g.element_order_histogram(),
        class_sizes,
        commutator_order: g.commutator_subgroup().len(),
        class_count: classes.len(),
        center_order: g.center().len(),
    }
}

fn labels(g: &FiniteGroup) -> Vec<(u64, usize)> {
    let classes = g.conjugacy_classes();
    par::map(g.order(), |i| {
        let e = g.element(i);
        let k = classes.class_of[i] as usize;
        (g.element_order(e), classes.classes[k].len())
    })
}

struct Search<'a> {
    g1: &'a FiniteGroup,
    g2: &'a FiniteGroup,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
}

impl Search<'_> {
    /// Extends `images` over the subgroup generated by the assigned generators.
    /// Returns the image table if consistent and injective.
    fn extend(&self, images: &[Elem]) -> Option<Vec<Option<Elem>>> {
        let (g1, g2) = (self.g1, self.g2);
        let mut table: Vec<Option<Elem>> = vec![None; g1.order()];
        let mut used = vec![false; g2.order()];
        table[g1.index(g1.identity())] = Some(g2.identity());
        used[g2.index(g2.identity())] = true;
        let mut queue = VecDeque::from([g1.identity()]);
        while let Some(x) = queue.pop_front() {
            let fx = table[g1.index(x)].expect("queued elements are mapped");
            for (&s, &fs) in self.gens.iter().zip(images) {
                let y = g1.mul(x, s);
                let fy = g2.mul(fx, fs);
                let iy = g1.index(y);
                match table[iy] {
                    Some(prev) if prev != fy => return None,
                    Some(_) => {}
                    None => {
                        let ify = g2.index(fy);
                        if used[ify] {
                            return None;
                        }
                        used[ify] = true;
                        table[iy] = Some(fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Some(table)
    }

    fn descend(&self, images: &mut Vec<Elem>) -> Option<Vec<Elem>> {
        let level = images.len();
        if level == self.gens.len() {
            let table = self.extend(images)?;
            return table.into_iter().collect();
        }
        for &c in &self.candidates[level] {
            images.push(c);
            if self.extend(images).is_some() {
                if let Some(found) = self.descend(images) {
                    return Some(found);
                }
            }
            images.pop();
        }
        None
    }
}

/// A verified isomorphism `g1 → g2`, or `None` when the groups are not isomorphic.
pub fn brute_force_isomorphic(
    g1: &GroupRef,
    g2: &GroupRef,
    limits: &Limits,
) -> Result<Option<GroupMap>> {
    if g1.order() > limits.iso_cap || g2.order() > limits.iso_cap {
        return Err(Error::Capacity {
            order: g1.order().max(g2.order()),
            cap: limits.iso_cap,
        });
    }
    if g1.order() != g2.order() || fingerprint(g1) != fingerprint(g2) {
        return Ok(None);
    }
    let gens = g1.generators().to_vec();
    if gens.is_empty() {
        return Ok(Some(GroupMap::from_fn(g1, g2, |_| g2.identity())));
    }
    let l1 = labels(g1);
    let l2 = labels(g2);
    let classes2 = g2.conjugacy_classes();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .enumerate()
        .map(|(level, &s)| {
            let want = l1[g1.index(s)];
            let pool: Vec<Elem> = if level == 0 {
                classes2.representatives()
            } else {
                g2.elements().collect()
            };
            pool.into_iter()
                .filter(|&e| l2[g2.index(e)] == want)
                .collect()
        })
        .collect();
    let search = Search {
        g1,
        g2,
        gens,
        candidates,
    };
    let first = &search.candidates[0];
    let found = par::find_first(first.len(), |k| {
        let mut images = vec![first[k]];
        search.extend(&images)?;
        search.descend(&mut images)
    });
    let Some((_, table)) = found else {
        return Ok(None);
    };
    let map = GroupMap::from_fn(g1, g2, |x| table[g1.index(x)]);
    if !map.is_isomorphism(limits) {
        return Err(Error::Internal(format!(
            "search produced a non-isomorphism {} -> {}",
            g1.name(),
            g2.name()
        )));
    }
    Ok(Some(map))
}
