//! Graded Jacobson radical by enumeration of homogeneous right ideals.
//!
//! Every homogeneous right ideal is a sum of principal ones `xR` with `x`
//! homogeneous, so the lattice is explored breadth-first from the zero ideal
//! by adding one principal ideal at a time. Ideals are deduplicated by their
//! bit vectors; the ones admitting no proper extension are graded-maximal.

use std::collections::{HashSet, VecDeque};

use super::ideal::two_sided_closure;
use super::{GradedRing, HomogeneousIdeal};
use crate::error::{Error, Result};
use crate::ring::span;
use crate::set::{Elem, ElementSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadicalLimits {
    pub max_homogeneous: usize,
    pub max_ideals: usize,
}

impl Default for RadicalLimits {
    fn default() -> Self {
        RadicalLimits { max_homogeneous: 512, max_ideals: 100_000 }
    }
}

/// `J^g(R)` together with the runtime checks made on it.
#[derive(Debug, Clone)]
pub struct GradedRadical {
    pub members: ElementSet,
    /// `None` when the intersection fails to be a two-sided homogeneous ideal.
    pub ideal: Option<HomogeneousIdeal>,
    pub maximal_count: usize,
    pub ideals_explored: usize,
    pub contained_in_jacobson: bool,
}

fn check_size(r: &GradedRing, limits: RadicalLimits) -> Result<()> {
    let h = r.homogeneous_elements().len();
    if h > limits.max_homogeneous {
        return Err(Error::ResourceLimit(format!(
            "|h(R)| = {h} exceeds the ideal-enumeration cap {}",
            limits.max_homogeneous
        )));
    }
    Ok(())
}

fn too_many(limits: RadicalLimits) -> Error {
    Error::ResourceLimit(format!("more than {} homogeneous ideals", limits.max_ideals))
}

/// Distinct principal right ideals `xR`, `x` homogeneous and nonzero.
fn principal_right_ideals(r: &GradedRing) -> Vec<(ElementSet, Vec<Elem>)> {
    let ring = r.ring();
    let gens = r.homogeneous_generators();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in r.homogeneous_elements().iter().skip(1) {
        let (set, list) = span::span(ring, gens.iter().map(|&b| ring.mul(x, b)));
        if seen.insert(set.clone()) {
            out.push((set, list));
        }
    }
    out
}

/// All graded-maximal right ideals, in discovery order.
pub fn graded_maximal_right_ideals(r: &GradedRing, limits: RadicalLimits) -> Result<(Vec<ElementSet>, usize)> {
    check_size(r, limits)?;
    let ring = r.ring();
    let one = ring.one();
    let principal = principal_right_ideals(r);
    let zero = ElementSet::from_iter_in(r.order(), [Elem::ZERO]);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([(zero, vec![Elem::ZERO])]);
    let mut maximal = Vec::new();
    while let Some((set, list)) = queue.pop_front() {
        let mut extendable = false;
        for (p, plist) in &principal {
            if p.contains(one) || p.is_subset(&set) {
                continue;
            }
            let (mut s, mut l) = (set.clone(), list.clone());
            for &y in plist {
                span::adjoin(ring, &mut s, &mut l, y);
            }
            if s.contains(one) {
                continue;
            }
            extendable = true;
            if seen.insert(s.clone()) {
                if seen.len() > limits.max_ideals {
                    return Err(too_many(limits));
                }
                queue.push_back((s, l));
            }
        }
        if !extendable {
            maximal.push(set);
        }
    }
    Ok((maximal, seen.len()))
}

/// Intersection of the graded-maximal right ideals, with the two-sidedness
/// and `J^g(R) ⊆ J(R)` checks recorded rather than assumed.
pub fn graded_jacobson_radical(r: &GradedRing, limits: RadicalLimits) -> Result<GradedRadical> {
    let (maximal, explored) = graded_maximal_right_ideals(r, limits)?;
    let mut members = ElementSet::full(r.order());
    for m in &maximal {
        members.intersect_with(m);
    }
    let ideal = HomogeneousIdeal::from_members(r, members.clone()).ok();
    let contained_in_jacobson = members.is_subset(r.ring().jacobson_radical());
    Ok(GradedRadical { members, ideal, maximal_count: maximal.len(), ideals_explored: explored, contained_in_jacobson })
}

/// Every graded-nil two-sided ideal (including zero), in discovery order.
/// Such ideals are generated by homogeneous nilpotents, so the search only
/// extends by those.
pub fn enumerate_graded_nil_ideals(r: &GradedRing, limits: RadicalLimits) -> Result<Vec<HomogeneousIdeal>> {
    check_size(r, limits)?;
    let nil = r.ring().nilpotents();
    let seeds: Vec<Elem> = r.homogeneous_elements().iter().skip(1).filter(|&x| nil.contains(x)).collect();
    let is_nil = |s: &ElementSet| s.iter().filter(|&x| r.is_homogeneous(x)).all(|x| nil.contains(x));
    let zero = ElementSet::from_iter_in(r.order(), [Elem::ZERO]);
    let mut seen: HashSet<ElementSet> = HashSet::from([zero.clone()]);
    let mut order = vec![zero.clone()];
    let mut queue = VecDeque::from([(zero, vec![Elem::ZERO])]);
    while let Some((set, list)) = queue.pop_front() {
        for &x in &seeds {
            if set.contains(x) {
                continue;
            }
            let (s, l) = two_sided_closure(r, Some((&set, &list)), &[x]);
            if !is_nil(&s) || !seen.insert(s.clone()) {
                continue;
            }
            if seen.len() > limits.max_ideals {
                return Err(too_many(limits));
            }
            order.push(s.clone());
            queue.push_back((s, l));
        }
    }
    order
        .into_iter()
        .map(|s| HomogeneousIdeal::from_members(r, s))
        .collect()
}
