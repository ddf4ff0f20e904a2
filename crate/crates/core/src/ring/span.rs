//! Additive subgroup generation.
//!
//! Most questions about a finite ring reduce to membership in an additive
//! subgroup: `r` is regular iff `r` lies in `rRr`, and `rRr` is spanned by
//! `r b r` as `b` runs over additive generators of `R`. Subgroups are grown
//! one generator at a time by adjoining whole cosets, so every element is
//! inserted exactly once.

use super::FiniteRing;
use crate::set::{Elem, ElementSet};

/// Reusable per-worker buffers; membership uses epoch stamps so resetting is O(1).
pub struct SpanScratch {
    stamp: Vec<u32>,
    epoch: u32,
    parent: Vec<u32>,
    step: Vec<(u32, u32)>,
    members: Vec<u32>,
    multiples: Vec<u32>,
}

impl SpanScratch {
    pub fn new(universe: usize) -> Self {
        SpanScratch {
            stamp: vec![0; universe],
            epoch: 0,
            parent: vec![0; universe],
            step: vec![(0, 0); universe],
            members: Vec::new(),
            multiples: Vec::new(),
        }
    }

    fn reset(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.members.clear();
        self.insert(0, 0, (u32::MAX, 0));
    }

    #[inline]
    fn contains(&self, x: u32) -> bool {
        self.stamp[x as usize] == self.epoch
    }

    #[inline]
    fn insert(&mut self, x: u32, parent: u32, step: (u32, u32)) {
        let i = x as usize;
        self.stamp[i] = self.epoch;
        self.parent[i] = parent;
        self.step[i] = step;
        self.members.push(x);
    }

    /// Walks parent links from `x` back to zero, accumulating the
    /// multiplicity used for each generator slot.
    fn coefficients(&self, mut x: u32, slots: usize) -> Vec<u32> {
        let mut coeff = vec![0u32; slots];
        while x != 0 {
            let (slot, m) = self.step[x as usize];
            coeff[slot as usize] += m;
            x = self.parent[x as usize];
        }
        coeff
    }
}

/// Grows the subgroup spanned by `images`, stopping early once `target`
/// appears. On success returns, for each image slot, how many copies of that
/// image sum (together with the others) to `target`.
pub fn find_in_span(
    ring: &FiniteRing,
    images: &[Elem],
    target: Elem,
    scratch: &mut SpanScratch,
) -> Option<Vec<u32>> {
    scratch.reset();
    if target.0 == 0 {
        return Some(vec![0; images.len()]);
    }
    for (slot, &v) in images.iter().enumerate() {
        if scratch.contains(v.0) {
            continue;
        }
        // m*v for m = 1.. until the multiple falls back into the current span
        scratch.multiples.clear();
        let mut mv = v;
        while !scratch.contains(mv.0) {
            scratch.multiples.push(mv.0);
            mv = ring.add(mv, v);
        }
        let old_len = scratch.members.len();
        let multiples = std::mem::take(&mut scratch.multiples);
        for (mi, &m) in multiples.iter().enumerate() {
            for k in 0..old_len {
                let s = scratch.members[k];
                let x = ring.add(Elem(s), Elem(m)).0;
                scratch.insert(x, s, (slot as u32, mi as u32 + 1));
                if x == target.0 {
                    scratch.multiples = multiples;
                    return Some(scratch.coefficients(x, images.len()));
                }
            }
        }
        scratch.multiples = multiples;
    }
    None
}

/// Adjoins `v` to the subgroup `set` (with member list `list`) in place.
pub fn adjoin(ring: &FiniteRing, set: &mut ElementSet, list: &mut Vec<Elem>, v: Elem) {
    if set.contains(v) {
        return;
    }
    let mut multiples = Vec::new();
    let mut mv = v;
    while !set.contains(mv) {
        multiples.push(mv);
        mv = ring.add(mv, v);
    }
    let old_len = list.len();
    for &m in &multiples {
        for k in 0..old_len {
            let x = ring.add(list[k], m);
            set.insert(x);
            list.push(x);
        }
    }
}

/// The additive subgroup generated by `gens`.
pub fn span(ring: &FiniteRing, gens: impl IntoIterator<Item = Elem>) -> (ElementSet, Vec<Elem>) {
    let mut set = ElementSet::empty(ring.order());
    set.insert(Elem::ZERO);
    let mut list = vec![Elem::ZERO];
    for g in gens {
        adjoin(ring, &mut set, &mut list, g);
    }
    (set, list)
}

/// A small generating set of the additive subgroup `members`, chosen greedily
/// in index order (so it is deterministic).
pub fn additive_generators(ring: &FiniteRing, members: &ElementSet) -> Vec<Elem> {
    let mut set = ElementSet::empty(ring.order());
    set.insert(Elem::ZERO);
    let mut list = vec![Elem::ZERO];
    let mut gens = Vec::new();
    let total = members.len();
    for x in members.iter() {
        if list.len() == total {
            break;
        }
        if !set.contains(x) {
            gens.push(x);
            adjoin(ring, &mut set, &mut list, x);
        }
    }
    gens
}

/// `sum_i coeff[i] * gens[i]` computed by repeated addition.
pub fn combine(ring: &FiniteRing, gens: &[Elem], coeff: &[u32]) -> Elem {
    let mut acc = Elem::ZERO;
    for (&g, &c) in gens.iter().zip(coeff) {
        for _ in 0..c {
            acc = ring.add(acc, g);
        }
    }
    acc
}
