use super::{cartesian, carrier_size, regrade_by_quotient};
use crate::error::{Error, Result};
use crate::graded::GradedRing;
use crate::group::GroupElem;
use crate::ring::arith::RingArith;
use crate::ring::{validate, FiniteRing, StructureTag};
use crate::set::{Elem, ElementSet};

/// `R[H]` for a normal subgroup `H` of the grading group `G`, with
/// `(r g')(s h') = r s (d^-1 g' d h')` where `d` is the degree of `s`.
/// Elements are coefficient vectors over `H` (in index order), first
/// coefficient least significant.
pub struct GroupRingArith {
    base: GradedRing,
    members: Vec<GroupElem>,
    pos: Vec<u32>,
    q: u32,
    abelian: bool,
    one: u32,
}

impl GroupRingArith {
    fn new(base: GradedRing, members: Vec<GroupElem>) -> Self {
        let g = base.group();
        let mut pos = vec![u32::MAX; g.order()];
        for (i, h) in members.iter().enumerate() {
            pos[h.idx()] = i as u32;
        }
        let abelian = g.is_abelian();
        let q = base.order() as u32;
        // identity is index 0 of G and the first member of H
        let one = base.ring().one().0;
        GroupRingArith { base, members, pos, q, abelian, one }
    }

    fn coeffs(&self, mut x: u32) -> Vec<Elem> {
        (0..self.members.len())
            .map(|_| {
                let c = Elem(x % self.q);
                x /= self.q;
                c
            })
            .collect()
    }

    fn encode(&self, c: &[Elem]) -> u32 {
        c.iter().rev().fold(0u32, |acc, e| acc * self.q + e.0)
    }

    fn zip(&self, a: u32, b: u32, f: impl Fn(Elem, Elem) -> Elem) -> u32 {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let z: Vec<Elem> = x.into_iter().zip(y).map(|(u, v)| f(u, v)).collect();
        self.encode(&z)
    }
}

impl RingArith for GroupRingArith {
    fn order(&self) -> usize {
        (self.q as usize).pow(self.members.len() as u32)
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        self.zip(a, b, |u, v| self.base.ring().add(u, v))
    }
    fn neg(&self, a: u32) -> u32 {
        self.zip(a, 0, |u, _| self.base.ring().neg(u))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        let ring = self.base.ring();
        let group = self.base.group();
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut z = vec![Elem::ZERO; self.members.len()];
        for (p, &r) in x.iter().enumerate().filter(|(_, r)| **r != Elem::ZERO) {
            let gp = self.members[p];
            for (q, &s) in y.iter().enumerate().filter(|(_, s)| **s != Elem::ZERO) {
                let hq = self.members[q];
                if self.abelian {
                    let k = self.pos[group.op(gp, hq).idx()] as usize;
                    z[k] = ring.add(z[k], ring.mul(r, s));
                    continue;
                }
                for (d, &part) in self.base.decompose(s).iter().enumerate() {
                    if part == Elem::ZERO {
                        continue;
                    }
                    let d = GroupElem(d as u32);
                    let t = group.op(group.op(group.op(group.inv(d), gp), d), hq);
                    let k = self.pos[t.idx()] as usize;
                    z[k] = ring.add(z[k], ring.mul(r, part));
                }
            }
        }
        self.encode(&z)
    }
    fn one(&self) -> u32 {
        self.one
    }
    fn render(&self, a: u32) -> String {
        let ring = self.base.ring();
        let terms: Vec<String> = self
            .coeffs(a)
            .iter()
            .zip(&self.members)
            .filter(|(c, _)| **c != Elem::ZERO)
            .map(|(&c, &h)| format!("{}*{}", ring.render(c), self.base.label(h)))
            .collect();
        if terms.is_empty() { "0".into() } else { terms.join(" + ") }
    }
}

/// Coefficients of a group-ring element over `H`, in the order of `H`'s members.
pub fn group_ring_coefficients(base_order: usize, h_len: usize, x: Elem) -> Vec<Elem> {
    let q = base_order as u32;
    let mut x = x.0;
    (0..h_len)
        .map(|_| {
            let c = Elem(x % q);
            x /= q;
            c
        })
        .collect()
}

fn build_group_ring(r: &GradedRing, members: Vec<GroupElem>) -> Result<GradedRing> {
    let size = carrier_size(r.order(), members.len())?;
    let group = r.group().clone();
    let arith = GroupRingArith::new(r.clone(), members.clone());
    let ring = FiniteRing::from_arith(Box::new(arith), StructureTag::GroupRing, true)?;
    // the twisted product is bilinear by construction; associativity is not
    validate::check_associative_on_generators(&ring)?;
    let strides: Vec<usize> = (0..members.len()).map(|k| r.order().pow(k as u32)).collect();
    let comps: Vec<ElementSet> = group
        .elements()
        .map(|g| {
            let lists: Vec<&[Elem]> =
                members.iter().map(|&h| r.component_list(group.op(g, group.inv(h)))).collect();
            cartesian(size, &strides, &lists)
        })
        .collect();
    GradedRing::build(ring, group, comps)
}

/// `R[G]` over the grading group, `(R[G])_g = sum_h R_{g h^-1} h`.
pub fn group_ring_graded(r: &GradedRing, over: &crate::group::FiniteGroup) -> Result<GradedRing> {
    if over != r.group() {
        return Err(Error::GroupMismatch("the group ring must be taken over the grading group".into()));
    }
    build_group_ring(r, r.group().elements().collect())
}

/// `R[H]` with its `G`-grading and the same ring regraded by `G/H`.
pub fn subgroup_group_ring(r: &GradedRing, h: &[GroupElem]) -> Result<(GradedRing, GradedRing)> {
    let members = r.group().check_normal_subgroup(h)?;
    let rh = build_group_ring(r, members.clone())?;
    let regraded = regrade_by_quotient(&rh, &members)?;
    Ok((rh, regraded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn z4_c2_is_the_ordinary_group_ring() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let r = GradedRing::trivial(FiniteRing::modular(4).unwrap(), c2.clone());
        let rg = group_ring_graded(&r, &c2).unwrap();
        assert_eq!(rg.order(), 16);
        let ring = rg.ring();
        // (a + b g)(c + d g) = (ac + bd) + (ad + bc) g
        for x in ring.elements() {
            for y in ring.elements() {
                let (a, b) = (x.0 % 4, x.0 / 4);
                let (c, d) = (y.0 % 4, y.0 / 4);
                let want = (a * c + b * d) % 4 + 4 * ((a * d + b * c) % 4);
                assert_eq!(ring.mul(x, y), Elem(want));
            }
        }
        // component e = Z_4 e, component g = Z_4 g
        assert_eq!(rg.component_list(GroupElem(0)), &[Elem(0), Elem(1), Elem(2), Elem(3)]);
        assert_eq!(rg.component_list(GroupElem(1)), &[Elem(0), Elem(4), Elem(8), Elem(12)]);
        assert_eq!(ring.render(Elem(6)), "2*e + 1*g");
    }

    #[test]
    fn subgroup_extremes() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let r = GradedRing::trivial(FiniteRing::modular(4).unwrap(), c2);
        let (rh, q) = subgroup_group_ring(&r, &[GroupElem(0)]).unwrap();
        assert_eq!(rh.order(), 4);
        assert_eq!(q.group().order(), 2);
        let (rh, q) = subgroup_group_ring(&r, &[GroupElem(0), GroupElem(1)]).unwrap();
        assert_eq!(rh.order(), 16);
        assert_eq!(q.group().order(), 1);
        assert_eq!(q.component(GroupElem(0)).len(), 16);
    }

    #[test]
    fn twisted_rule_over_s3_is_associative() {
        let s3 = FiniteGroup::dihedral(3).unwrap();
        let z4 = FiniteRing::modular(4).unwrap();
        let r = GradedRing::trivial(z4, s3.clone());
        let rg = group_ring_graded(&r, &s3).unwrap();
        assert_eq!(rg.order(), 4096);
        assert!(!rg.ring().is_commutative());
    }
}
