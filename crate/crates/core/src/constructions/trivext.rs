use std::sync::Arc;

use super::{cartesian, carrier_size};
use crate::error::{Error, Result};
use crate::graded::{check_morphism, graded_quotient, GradedRing, HomogeneousIdeal};
use crate::ring::arith::RingArith;
use crate::ring::{FiniteRing, StructureTag};
use crate::set::{Elem, ElementSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BimoduleKind {
    /// `M = A` with the multiplication actions.
    Regular,
    /// `M = A/I` with the induced actions; holds the ideal's size.
    Quotient(usize),
}

/// A graded `(A, A)`-bimodule of the form `B` viewed through a surjective
/// degree-preserving ring map `π: A -> B`, so `a m b = π(a) m π(b)`.
#[derive(Debug, Clone)]
pub struct GradedBimodule {
    base: GradedRing,
    module: GradedRing,
    projection: Arc<Vec<Elem>>,
    kind: BimoduleKind,
}

impl GradedBimodule {
    pub fn regular(a: &GradedRing) -> Self {
        GradedBimodule {
            base: a.clone(),
            module: a.clone(),
            projection: Arc::new(a.ring().elements().collect()),
            kind: BimoduleKind::Regular,
        }
    }

    pub fn quotient(a: &GradedRing, ideal: &HomogeneousIdeal) -> Result<Self> {
        let (q, proj) = graded_quotient(a, ideal)?;
        let m = GradedBimodule {
            base: a.clone(),
            module: q,
            projection: Arc::new(proj),
            kind: BimoduleKind::Quotient(ideal.len()),
        };
        m.validate()?;
        Ok(m)
    }

    /// Checks that the projection is a surjective degree-preserving ring map,
    /// which makes the actions biadditive, associative, unital, compatible
    /// with each other and with the grading.
    pub fn validate(&self) -> Result<()> {
        let rep = check_morphism(&self.base, &self.module, &self.projection);
        if !rep.is_degree_preserving || !rep.is_surjective {
            return Err(Error::InvalidBimodule(format!("{:?}", rep.failures)));
        }
        Ok(())
    }

    pub fn kind(&self) -> &BimoduleKind {
        &self.kind
    }

    pub fn order(&self) -> usize {
        self.module.order()
    }

    /// `M_g`.
    pub fn component_list(&self, g: crate::group::GroupElem) -> &[Elem] {
        self.module.component_list(g)
    }

    pub fn left(&self, a: Elem, m: Elem) -> Elem {
        self.module.ring().mul(self.projection[a.idx()], m)
    }

    pub fn right(&self, m: Elem, b: Elem) -> Elem {
        self.module.ring().mul(m, self.projection[b.idx()])
    }
}

/// `A ∝ M` on pairs `(a, m)` encoded `a + |A| m`.
struct TrivExtArith {
    a: FiniteRing,
    m: FiniteRing,
    proj: Arc<Vec<Elem>>,
    qa: u32,
}

impl TrivExtArith {
    fn split(&self, x: u32) -> (Elem, Elem) {
        (Elem(x % self.qa), Elem(x / self.qa))
    }

    fn join(&self, a: Elem, m: Elem) -> u32 {
        a.0 + self.qa * m.0
    }
}

impl RingArith for TrivExtArith {
    fn order(&self) -> usize {
        self.a.order() * self.m.order()
    }
    fn add(&self, x: u32, y: u32) -> u32 {
        let ((a, m), (b, f)) = (self.split(x), self.split(y));
        self.join(self.a.add(a, b), self.m.add(m, f))
    }
    fn neg(&self, x: u32) -> u32 {
        let (a, m) = self.split(x);
        self.join(self.a.neg(a), self.m.neg(m))
    }
    fn mul(&self, x: u32, y: u32) -> u32 {
        let ((a, m), (b, f)) = (self.split(x), self.split(y));
        let af = self.m.mul(self.proj[a.idx()], f);
        let mb = self.m.mul(m, self.proj[b.idx()]);
        self.join(self.a.mul(a, b), self.m.add(af, mb))
    }
    fn one(&self) -> u32 {
        self.a.one().0
    }
    fn render(&self, x: u32) -> String {
        let (a, m) = self.split(x);
        format!("({}|{})", self.a.render(a), self.m.render(m))
    }
}

/// `A ∝ M` with `(a, m)(b, f) = (ab, af + mb)` and `R_g = A_g ⊕ M_g`.
pub fn trivial_extension(a: &GradedRing, m: &GradedBimodule) -> Result<GradedRing> {
    if m.base.group() != a.group() || m.base.order() != a.order() {
        return Err(Error::InvalidBimodule("module is over a different graded ring".into()));
    }
    let size = carrier_size(a.order(), 1)?.checked_mul(m.order()).filter(|&s| s <= crate::max_carrier());
    let size = size.ok_or_else(|| Error::ResourceLimit("trivial extension exceeds the size cap".into()))?;
    let arith = TrivExtArith {
        a: a.ring().clone(),
        m: m.module.ring().clone(),
        proj: m.projection.clone(),
        qa: a.order() as u32,
    };
    let ring = FiniteRing::from_arith(Box::new(arith), StructureTag::TrivialExtension, true)?;
    let strides = [1, a.order()];
    let comps: Vec<ElementSet> = a
        .group()
        .elements()
        .map(|g| cartesian(size, &strides, &[a.component_list(g), m.component_list(g)]))
        .collect();
    GradedRing::build(ring, a.group().clone(), comps)
}

/// The ideal `0 ∝ M` of a trivial extension whose first factor has order `a_order`.
pub fn zero_extension_ideal(t: &GradedRing, a_order: usize) -> Result<HomogeneousIdeal> {
    let members = ElementSet::from_iter_in(t.order(), t.ring().elements().filter(|x| x.idx() % a_order == 0));
    HomogeneousIdeal::from_members(t, members)
}
