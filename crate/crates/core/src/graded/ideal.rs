use super::GradedRing;
use crate::error::{Error, Result};
use crate::ring::arith::Quotient;
use crate::ring::{span, FiniteRing, StructureTag};
use crate::set::{Elem, ElementSet};

/// A proper two-sided ideal that splits across the components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousIdeal {
    members: ElementSet,
    list: Vec<Elem>,
    per_component: Vec<ElementSet>,
    generators: Vec<Elem>,
}

impl HomogeneousIdeal {
    /// Validates an explicit member set.
    pub fn from_members(r: &GradedRing, members: ElementSet) -> Result<Self> {
        let ring = r.ring();
        if members.universe() != ring.order() || !members.contains(Elem::ZERO) {
            return Err(Error::InvalidIdeal("must contain zero".into()));
        }
        if members.contains(ring.one()) {
            return Err(Error::ImproperIdeal);
        }
        let generators = span::additive_generators(ring, &members);
        let (closure, list) = span::span(ring, generators.iter().copied());
        if closure != members {
            return Err(Error::InvalidIdeal("not an additive subgroup".into()));
        }
        // Closure under multiplication by R on both sides, checked on generators.
        for &x in &generators {
            for &b in ring.additive_generators() {
                for y in [ring.mul(x, b), ring.mul(b, x)] {
                    if !members.contains(y) {
                        return Err(Error::InvalidIdeal(format!(
                            "not closed under multiplication: {} escapes",
                            ring.render(y)
                        )));
                    }
                }
            }
        }
        for &x in &list {
            for (g, p) in r.decompose(x).into_iter().enumerate() {
                if !members.contains(p) {
                    return Err(Error::InvalidIdeal(format!(
                        "not homogeneous: degree-{} part of {} is outside",
                        r.label(crate::group::GroupElem(g as u32)),
                        ring.render(x)
                    )));
                }
            }
        }
        let per_component = r.components().iter().map(|c| c.intersection(&members)).collect();
        Ok(HomogeneousIdeal { members, list, per_component, generators })
    }

    /// The zero ideal.
    pub fn zero(r: &GradedRing) -> Self {
        Self::from_members(r, ElementSet::from_iter_in(r.order(), [Elem::ZERO])).expect("zero ideal")
    }

    /// Smallest two-sided ideal containing the homogeneous `generators`.
    pub fn generated(r: &GradedRing, generators: &[Elem]) -> Result<Self> {
        if let Some(&x) = generators.iter().find(|&&x| !r.is_homogeneous(x)) {
            return Err(Error::NotHomogeneous(x.0));
        }
        let (set, _) = two_sided_closure(r, None, generators);
        if set.contains(r.ring().one()) {
            return Err(Error::ImproperIdeal);
        }
        Self::from_members(r, set)
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn list(&self) -> &[Elem] {
        &self.list
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.list.len() == 1
    }

    /// `I ∩ R_g`, indexed by group element.
    pub fn per_component(&self) -> &[ElementSet] {
        &self.per_component
    }

    pub fn additive_generators(&self) -> &[Elem] {
        &self.generators
    }
}

/// Span of `b x c` over homogeneous additive generators `b, c` and seeds `x`,
/// optionally grown from an existing ideal.
pub(crate) fn two_sided_closure(
    r: &GradedRing,
    base: Option<(&ElementSet, &[Elem])>,
    seeds: &[Elem],
) -> (ElementSet, Vec<Elem>) {
    let ring = r.ring();
    let (mut set, mut list) = match base {
        Some((s, l)) => (s.clone(), l.to_vec()),
        None => {
            let mut s = ElementSet::empty(ring.order());
            s.insert(Elem::ZERO);
            (s, vec![Elem::ZERO])
        }
    };
    let gens = r.homogeneous_generators();
    for &x in seeds {
        for &b in &gens {
            let bx = ring.mul(b, x);
            for &c in &gens {
                span::adjoin(ring, &mut set, &mut list, ring.mul(bx, c));
            }
        }
    }
    (set, list)
}

/// True iff every homogeneous member of `ideal` is nilpotent.
pub fn is_graded_nil(r: &GradedRing, ideal: &HomogeneousIdeal) -> bool {
    let nil = r.ring().nilpotents();
    ideal.list().iter().filter(|&&x| r.is_homogeneous(x)).all(|&x| nil.contains(x))
}

/// `R/I` with `(R/I)_g` the image of `R_g`, and the projection `R -> R/I`.
pub fn graded_quotient(r: &GradedRing, ideal: &HomogeneousIdeal) -> Result<(GradedRing, Vec<Elem>)> {
    let q = Quotient::new(r.ring().clone(), ideal.list());
    let projection: Vec<Elem> = q.coset_of.iter().map(|&c| Elem(c)).collect();
    let qring = FiniteRing::from_arith(Box::new(q), StructureTag::Quotient, true)?;
    let comps = r
        .components()
        .iter()
        .map(|c| ElementSet::from_iter_in(qring.order(), c.iter().map(|x| projection[x.idx()])))
        .collect();
    let quotient = GradedRing::build(qring, r.group().clone(), comps)?;
    Ok((quotient, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn trivially_graded(n: u64) -> GradedRing {
        GradedRing::trivial(FiniteRing::modular(n).unwrap(), FiniteGroup::cyclic(1).unwrap())
    }

    #[test]
    fn generated_ideals() {
        let z4 = trivially_graded(4);
        assert!(HomogeneousIdeal::generated(&z4, &[Elem(0)]).unwrap().is_zero());
        let i = HomogeneousIdeal::generated(&z4, &[Elem(2)]).unwrap();
        assert_eq!(i.list().len(), 2);
        assert!(i.contains(Elem(2)));
        assert_eq!(HomogeneousIdeal::generated(&z4, &[Elem(1)]).unwrap_err(), Error::ImproperIdeal);
        assert!(is_graded_nil(&z4, &i));
    }

    #[test]
    fn quotient_of_z4_by_two_is_z2() {
        let z4 = trivially_graded(4);
        let i = HomogeneousIdeal::generated(&z4, &[Elem(2)]).unwrap();
        let (q, proj) = graded_quotient(&z4, &i).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![Elem(0), Elem(1), Elem(0), Elem(1)]);
        assert_eq!(q.ring().add(q.ring().one(), q.ring().one()), Elem(0));
        let (same, _) = graded_quotient(&z4, &HomogeneousIdeal::zero(&z4)).unwrap();
        assert_eq!(same.order(), 4);
    }

    #[test]
    fn non_ideal_member_sets_are_rejected() {
        let z6 = trivially_graded(6);
        // {0, 3} is an ideal of Z_6; {0, 2, 4} too; {0, 1, ...} would contain one
        assert!(HomogeneousIdeal::from_members(&z6, ElementSet::from_iter_in(6, [Elem(0), Elem(3)])).is_ok());
        assert!(matches!(
            HomogeneousIdeal::from_members(&z6, ElementSet::from_iter_in(6, [Elem(0), Elem(2)])),
            Err(Error::InvalidIdeal(_))
        ));
    }
}
