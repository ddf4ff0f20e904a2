//! Group gradings of finite rings.
//!
//! A [`GradedRing`] stores one additive subgroup per group element together
//! with a precomputed decomposition table, so `decompose` is a lookup. The
//! table is built by enumerating every sum of one element from each
//! component; directness of the sum is verified on the way.

mod ideal;
mod morphism;
mod radical;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElem};
use crate::ring::{span, FiniteRing};
use crate::set::{Elem, ElementSet};

pub use ideal::{graded_quotient, is_graded_nil, HomogeneousIdeal};
pub use morphism::{check_morphism, check_ring_morphism, MorphismReport};
pub use radical::{
    enumerate_graded_nil_ideals, graded_jacobson_radical, graded_maximal_right_ideals, GradedRadical, RadicalLimits,
};

#[derive(Clone)]
pub struct GradedRing {
    inner: Arc<GradedInner>,
}

struct GradedInner {
    ring: FiniteRing,
    group: FiniteGroup,
    components: Vec<ElementSet>,
    lists: Vec<Vec<Elem>>,
    parts: Vec<u32>,
    degree: Vec<u32>,
    homogeneous: ElementSet,
    generators: Vec<Vec<Elem>>,
    pub(crate) cache: crate::classify::DegreeCache,
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedRing")
            .field("order", &self.ring().order())
            .field("group_order", &self.group().order())
            .field("component_sizes", &self.inner.lists.iter().map(Vec::len).collect::<Vec<_>>())
            .finish()
    }
}

fn invalid(axiom: &str, witness: String) -> Error {
    Error::GradingInvalid { axiom: axiom.to_string(), witness }
}

impl GradedRing {
    /// Validates `components` (one per group element, in index order) as a
    /// grading of `ring` by `group`.
    pub fn build(ring: FiniteRing, group: FiniteGroup, components: Vec<ElementSet>) -> Result<Self> {
        let k = group.order();
        let n = ring.order();
        if components.len() != k {
            return Err(invalid(
                "one component per group element",
                format!("{} components for a group of order {k}", components.len()),
            ));
        }
        let mut generators = Vec::with_capacity(k);
        for (g, c) in components.iter().enumerate() {
            if c.universe() != n || !c.contains(Elem::ZERO) {
                return Err(invalid("component contains zero", format!("component {g}")));
            }
            let gens = span::additive_generators(&ring, c);
            let (closure, _) = span::span(&ring, gens.iter().copied());
            if closure != *c {
                let w = closure.iter().find(|&x| !c.contains(x)).unwrap_or_default();
                return Err(invalid(
                    "component is an additive subgroup",
                    format!("component {g} not closed: {} escapes", ring.render(w)),
                ));
            }
            generators.push(gens);
        }
        let lists: Vec<Vec<Elem>> = components.iter().map(ElementSet::to_vec).collect();
        let product = lists.iter().try_fold(1usize, |acc, l| acc.checked_mul(l.len()));
        match product {
            Some(p) if p == n => {}
            Some(p) if p < n => {
                return Err(invalid("components span the ring", format!("only {p} of {n} elements reachable")))
            }
            _ => {}
        }

        // Enumerate all sums; a repeated sum witnesses non-directness.
        let mut parts = vec![u32::MAX; n * k];
        let mut digits = vec![0usize; k];
        let mut prefix = vec![Elem::ZERO; k + 1];
        for g in 0..k {
            prefix[g + 1] = ring.add(prefix[g], lists[g][0]);
        }
        'sums: loop {
            let s = prefix[k].idx();
            if parts[s * k] != u32::MAX {
                let prev: Vec<String> = (0..k).map(|g| ring.render(Elem(parts[s * k + g]))).collect();
                let now: Vec<String> = (0..k).map(|g| ring.render(lists[g][digits[g]])).collect();
                return Err(invalid(
                    "sum of components is direct",
                    format!("{} = sum of [{}] = sum of [{}]", ring.render(Elem(s as u32)), prev.join(", "), now.join(", ")),
                ));
            }
            for g in 0..k {
                parts[s * k + g] = lists[g][digits[g]].0;
            }
            // mixed-radix counter, last component fastest
            let mut pos = k;
            loop {
                if pos == 0 {
                    break 'sums;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < lists[pos].len() {
                    break;
                }
                digits[pos] = 0;
            }
            for g in pos..k {
                prefix[g + 1] = ring.add(prefix[g], lists[g][digits[g]]);
            }
        }

        for g in group.elements() {
            for h in group.elements() {
                let target = &components[group.op(g, h).idx()];
                for &a in &generators[g.idx()] {
                    for &b in &generators[h.idx()] {
                        let ab = ring.mul(a, b);
                        if !target.contains(ab) {
                            return Err(invalid(
                                "R_g R_h lies in R_gh",
                                format!(
                                    "{} (degree {}) * {} (degree {}) = {}",
                                    ring.render(a),
                                    group.label(g),
                                    ring.render(b),
                                    group.label(h),
                                    ring.render(ab)
                                ),
                            ));
                        }
                    }
                }
            }
        }
        if !components[0].contains(ring.one()) {
            return Err(invalid("unity has the identity degree", ring.render(ring.one())));
        }

        let mut degree = vec![u32::MAX; n];
        degree[0] = 0;
        let mut homogeneous = ElementSet::empty(n);
        for (g, l) in lists.iter().enumerate() {
            for &x in l {
                homogeneous.insert(x);
                if x != Elem::ZERO {
                    degree[x.idx()] = g as u32;
                }
            }
        }
        let cache = crate::classify::DegreeCache::new(k);
        Ok(GradedRing {
            inner: Arc::new(GradedInner { ring, group, components, lists, parts, degree, homogeneous, generators, cache }),
        })
    }

    /// `R_e = R`, every other component zero.
    pub fn trivial(ring: FiniteRing, group: FiniteGroup) -> Self {
        let n = ring.order();
        let mut comps = vec![ElementSet::from_iter_in(n, [Elem::ZERO]); group.order()];
        comps[0] = ElementSet::full(n);
        Self::build(ring, group, comps).expect("trivial grading is valid")
    }

    /// Builds a grading from a degree predicate on elements: component `g`
    /// is the set of elements for which `in_component(g, x)` holds.
    pub fn from_predicate(
        ring: FiniteRing,
        group: FiniteGroup,
        in_component: impl Fn(GroupElem, Elem) -> bool,
    ) -> Result<Self> {
        let n = ring.order();
        let comps = group
            .elements()
            .map(|g| ElementSet::from_iter_in(n, ring.elements().filter(|&x| in_component(g, x))))
            .collect();
        Self::build(ring, group, comps)
    }

    pub(crate) fn cache(&self) -> &crate::classify::DegreeCache {
        &self.inner.cache
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.inner.ring
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.inner.group
    }

    pub fn order(&self) -> usize {
        self.inner.ring.order()
    }

    pub fn component(&self, g: GroupElem) -> &ElementSet {
        &self.inner.components[g.idx()]
    }

    pub fn components(&self) -> &[ElementSet] {
        &self.inner.components
    }

    /// Members of `R_g` in index order.
    pub fn component_list(&self, g: GroupElem) -> &[Elem] {
        &self.inner.lists[g.idx()]
    }

    /// Additive generators of `R_g`.
    pub fn component_generators(&self, g: GroupElem) -> &[Elem] {
        &self.inner.generators[g.idx()]
    }

    /// Homogeneous additive generators of the whole ring.
    pub fn homogeneous_generators(&self) -> Vec<Elem> {
        self.inner.generators.iter().flatten().copied().collect()
    }

    /// The unique family `(r_g)` with `r = sum r_g` and `r_g` in `R_g`, indexed by group element.
    pub fn decompose(&self, r: Elem) -> Vec<Elem> {
        let k = self.group().order();
        self.inner.parts[r.idx() * k..(r.idx() + 1) * k].iter().map(|&x| Elem(x)).collect()
    }

    #[inline]
    pub fn part(&self, r: Elem, g: GroupElem) -> Elem {
        Elem(self.inner.parts[r.idx() * self.group().order() + g.idx()])
    }

    /// Degree of a homogeneous element; zero reports the identity degree.
    #[inline]
    pub fn degree(&self, r: Elem) -> Option<GroupElem> {
        let d = self.inner.degree[r.idx()];
        (d != u32::MAX).then_some(GroupElem(d))
    }

    #[inline]
    pub fn is_homogeneous(&self, r: Elem) -> bool {
        self.inner.homogeneous.contains(r)
    }

    /// `h(R)`, the union of the components.
    pub fn homogeneous_elements(&self) -> &ElementSet {
        &self.inner.homogeneous
    }

    /// Group elements with a nonzero component.
    pub fn support(&self) -> Vec<GroupElem> {
        self.group().elements().filter(|g| self.inner.lists[g.idx()].len() > 1).collect()
    }

    /// The identity component as a standalone ring on its own carrier, with the
    /// embedding into `R` (position `i` of the new carrier is `embedding[i]`).
    pub fn identity_component_ring(&self) -> (FiniteRing, Vec<Elem>) {
        let members: Vec<u32> = self.inner.lists[0].iter().map(|e| e.0).collect();
        let embedding = members.iter().map(|&m| Elem(m)).collect();
        let sub = crate::ring::arith::Subset::new(self.ring().clone(), members, self.ring().one())
            .expect("identity component contains zero and one");
        let ring = FiniteRing::from_arith(Box::new(sub), crate::ring::StructureTag::Subring, true)
            .expect("identity component is a ring");
        (ring, embedding)
    }

    /// Renders a group element of the grading group.
    pub fn label(&self, g: GroupElem) -> &str {
        self.group().label(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_grading_support_and_decomposition() {
        let z4 = FiniteRing::modular(4).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let r = GradedRing::trivial(z4, c3);
        assert_eq!(r.support(), vec![GroupElem(0)]);
        assert_eq!(r.decompose(Elem(0)), vec![Elem(0); 3]);
        assert_eq!(r.decompose(Elem(3)), vec![Elem(3), Elem(0), Elem(0)]);
        assert_eq!(r.degree(Elem(2)), Some(GroupElem(0)));
        assert_eq!(r.homogeneous_elements().len(), 4);
    }

    #[test]
    fn overlapping_components_fail_directness() {
        let z4 = FiniteRing::modular(4).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let full = ElementSet::full(4);
        let half = ElementSet::from_iter_in(4, [Elem(0), Elem(2)]);
        let err = GradedRing::build(z4, c2, vec![full, half]).unwrap_err();
        assert!(matches!(err, Error::GradingInvalid { .. }), "{err}");
    }

    #[test]
    fn non_subgroup_component_is_rejected() {
        let z4 = FiniteRing::modular(4).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let bad = ElementSet::from_iter_in(4, [Elem(0), Elem(1)]);
        let zero = ElementSet::from_iter_in(4, [Elem(0)]);
        assert!(GradedRing::build(z4, c2, vec![bad, zero]).is_err());
    }

    #[test]
    fn unity_outside_identity_component_is_rejected() {
        // Z_2 x Z_2 with (1,0) in degree g: (1,0)^2 = (1,0) has degree g, not g^2 = e
        let z2 = FiniteRing::modular(2).unwrap();
        let p = FiniteRing::product(&[z2.clone(), z2]).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let e = ElementSet::from_iter_in(4, [Elem(0), Elem(2)]);
        let g = ElementSet::from_iter_in(4, [Elem(0), Elem(1)]);
        assert!(GradedRing::build(p, c2, vec![e, g]).is_err());
    }
}
