//! Graded classification: graded-regular, graded unit regular and
//! homogeneous nilpotent elements per degree, the three ring-level
//! properties with witnesses, and the constructive lifting used for
//! graded-nil ideals.

mod lift;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::GradedRing;
use crate::group::GroupElem;
use crate::ring::span::SpanScratch;
use crate::set::{Elem, ElementSet};

pub use lift::{lift_graded_regular, lift_idempotent_mod_nil, IdempotentLift};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Property {
    #[serde(rename = "nr-clean")]
    NrClean,
    #[serde(rename = "u-nil-clean")]
    UNilClean,
    #[serde(rename = "nil-good")]
    NilGood,
}

impl Property {
    pub const ALL: [Property; 3] = [Property::NrClean, Property::UNilClean, Property::NilGood];

    pub fn name(self) -> &'static str {
        match self {
            Property::NrClean => "nr-clean",
            Property::UNilClean => "u-nil-clean",
            Property::NilGood => "nil-good",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "nr-clean" | "graded-nr-clean" | "nr" => Ok(Property::NrClean),
            "u-nil-clean" | "graded-u-nil-clean" | "unil" => Ok(Property::UNilClean),
            "nil-good" | "graded-nil-good" | "nilgood" => Ok(Property::NilGood),
            _ => Err(format!("unknown property `{s}` (expected nr-clean, u-nil-clean or nil-good)")),
        }
    }
}

/// `element = regular_part + nilpotent_part`, both of degree `degree`, with
/// `regular_part * regularity_witness * regular_part = regular_part`.
/// For unit-regular parts `unit_factor` holds `(f, u)` with `regular_part = f u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedWitness {
    pub element: Elem,
    pub degree: GroupElem,
    pub regular_part: Elem,
    pub nilpotent_part: Elem,
    pub regularity_witness: Elem,
    pub unit_factor: Option<(Elem, Elem)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RingVerdict {
    pub property: Property,
    pub holds: bool,
    pub witnesses: BTreeMap<Elem, GradedWitness>,
    pub refuter: Option<Elem>,
}

struct DegreeData {
    regular: ElementSet,
    /// Regularity witness per position of the component list (`u32::MAX` if none).
    witness: Vec<u32>,
    nilpotent: Vec<Elem>,
}

struct UnitRegular {
    set: ElementSet,
    factor: BTreeMap<Elem, (Elem, Elem)>,
}

/// Per-degree classification data, filled on first use.
pub struct DegreeCache {
    degrees: Vec<OnceLock<DegreeData>>,
    unit_regular: Vec<OnceLock<UnitRegular>>,
    units: Vec<OnceLock<Vec<Elem>>>,
    verdicts: [OnceLock<Arc<RingVerdict>>; 3],
}

impl DegreeCache {
    pub(crate) fn new(k: usize) -> Self {
        DegreeCache {
            degrees: (0..k).map(|_| OnceLock::new()).collect(),
            unit_regular: (0..k).map(|_| OnceLock::new()).collect(),
            units: (0..k).map(|_| OnceLock::new()).collect(),
            verdicts: Default::default(),
        }
    }
}

const UNSEEN: u32 = u32::MAX - 1;

/// A few units of `R_e` generating the homogeneous unit group of degree `e`.
fn identity_unit_generators(r: &GradedRing) -> Vec<Elem> {
    let ring = r.ring();
    let units = homogeneous_units(r, r.group().identity());
    let mut closure = ElementSet::from_iter_in(ring.order(), [ring.one()]);
    let mut members = vec![ring.one()];
    let mut gens = Vec::new();
    for &u in units {
        if members.len() == units.len() {
            break;
        }
        if closure.contains(u) {
            continue;
        }
        gens.push(u);
        let mut k = 0;
        while k < members.len() {
            for &v in &gens {
                let y = ring.mul(members[k], v);
                if closure.insert(y) {
                    members.push(y);
                }
            }
            k += 1;
        }
    }
    gens
}

/// Regularity is decided once per orbit of `x -> u x v` (units `u`, `v` of
/// degree `e`): if `x a x = x` then `u x v` has witness `v^-1 a u^-1`.
fn degree_data(r: &GradedRing, g: GroupElem) -> &DegreeData {
    r.cache().degrees[g.idx()].get_or_init(|| {
        let ring = r.ring();
        let n = ring.order();
        let list = r.component_list(g);
        let gens = r.component_generators(r.group().inv(g)).to_vec();
        let unit_gens = identity_unit_generators(r);
        let mut pos = vec![u32::MAX; n];
        for (i, x) in list.iter().enumerate() {
            pos[x.idx()] = i as u32;
        }
        let mut witness = vec![UNSEEN; list.len()];
        let mut scratch = SpanScratch::new(n);
        let mut queue = Vec::new();
        for i in 0..list.len() {
            if witness[i] != UNSEEN {
                continue;
            }
            let x = list[i];
            let a = ring.inner_inverse_in(x, &gens, &mut scratch);
            witness[i] = a.map_or(u32::MAX, |a| a.0);
            // (element, left factor, right factor) with element = left x right
            queue.clear();
            queue.push((x, ring.one(), ring.one()));
            while let Some((y, u, v)) = queue.pop() {
                for &w in &unit_gens {
                    for (z, u2, v2) in [(ring.mul(w, y), ring.mul(w, u), v), (ring.mul(y, w), u, ring.mul(v, w))] {
                        let k = pos[z.idx()] as usize;
                        if witness[k] != UNSEEN {
                            continue;
                        }
                        witness[k] = match a {
                            Some(a) => {
                                let (ui, vi) = (ring.inverse(u2).expect("unit"), ring.inverse(v2).expect("unit"));
                                ring.mul3(vi, a, ui).0
                            }
                            None => u32::MAX,
                        };
                        queue.push((z, u2, v2));
                    }
                }
            }
        }
        let regular = ElementSet::from_iter_in(
            n,
            list.iter().zip(&witness).filter(|(_, &w)| w != u32::MAX).map(|(&x, _)| x),
        );
        let nil = ring.nilpotents();
        let nilpotent = list.iter().copied().filter(|&x| nil.contains(x)).collect();
        DegreeData { regular, witness, nilpotent }
    })
}

/// `{r in R_g : r a r = r for some a in R_{g^-1}}`.
pub fn graded_regular_elements(r: &GradedRing, g: GroupElem) -> &ElementSet {
    &degree_data(r, g).regular
}

/// `N(R) ∩ R_g` in index order.
pub fn homogeneous_nilpotents(r: &GradedRing, g: GroupElem) -> &[Elem] {
    &degree_data(r, g).nilpotent
}

/// Some `a` of degree `g^-1` with `x a x = x`, for `x` in `R_g`.
pub fn graded_regularity_witness(r: &GradedRing, g: GroupElem, x: Elem) -> Option<Elem> {
    let pos = r.component_list(g).binary_search(&x).ok()?;
    let w = degree_data(r, g).witness[pos];
    (w != u32::MAX).then_some(Elem(w))
}

/// Homogeneous units of degree `g`, in index order.
pub fn homogeneous_units(r: &GradedRing, g: GroupElem) -> &[Elem] {
    r.cache().units[g.idx()].get_or_init(|| {
        let units = r.ring().units();
        r.component_list(g).iter().copied().filter(|&x| units.contains(x)).collect()
    })
}

/// Nonzero homogeneous idempotents, in index order.
pub fn homogeneous_idempotents(r: &GradedRing) -> Vec<Elem> {
    r.ring().idempotents().iter().filter(|&f| f != Elem::ZERO && r.is_homogeneous(f)).collect()
}

fn unit_regular_data(r: &GradedRing, g: GroupElem) -> &UnitRegular {
    r.cache().unit_regular[g.idx()].get_or_init(|| {
        let ring = r.ring();
        let comp = r.component(g);
        let mut set = ElementSet::from_iter_in(ring.order(), [Elem::ZERO]);
        let mut factor = BTreeMap::new();
        factor.insert(Elem::ZERO, (Elem::ZERO, ring.one()));
        // Nonzero homogeneous idempotents have degree e, so f u has degree g
        // exactly when the unit u does (or f u = 0).
        let idem = homogeneous_idempotents(r);
        for &f in &idem {
            for &u in homogeneous_units(r, g) {
                let x = ring.mul(f, u);
                if comp.contains(x) && set.insert(x) {
                    factor.insert(x, (f, u));
                }
            }
        }
        UnitRegular { set, factor }
    })
}

/// `{r in R_g : r = f u}` with `f` a homogeneous idempotent and `u` a homogeneous unit.
pub fn graded_unit_regular_elements(r: &GradedRing, g: GroupElem) -> &ElementSet {
    &unit_regular_data(r, g).set
}

fn degree_of(r: &GradedRing, x: Elem) -> Result<GroupElem> {
    r.degree(x).ok_or(Error::NotHomogeneous(x.0))
}

/// Smallest homogeneous nilpotent `n` (by index) with `x - n` graded-regular.
pub fn graded_nr_clean_witness(r: &GradedRing, x: Elem) -> Result<Option<GradedWitness>> {
    let g = degree_of(r, x)?;
    Ok(nr_witness(r, g, x))
}

fn nr_witness(r: &GradedRing, g: GroupElem, x: Elem) -> Option<GradedWitness> {
    let ring = r.ring();
    let data = degree_data(r, g);
    data.nilpotent.iter().find_map(|&n| {
        let reg = ring.sub(x, n);
        data.regular.contains(reg).then(|| GradedWitness {
            element: x,
            degree: g,
            regular_part: reg,
            nilpotent_part: n,
            regularity_witness: graded_regularity_witness(r, g, reg).expect("regular element has a witness"),
            unit_factor: None,
        })
    })
}

fn unil_witness(r: &GradedRing, g: GroupElem, x: Elem) -> Option<GradedWitness> {
    let ring = r.ring();
    let ur = unit_regular_data(r, g);
    homogeneous_nilpotents(r, g).iter().find_map(|&n| {
        let reg = ring.sub(x, n);
        let &(f, u) = ur.factor.get(&reg)?;
        let a = ring.mul(ring.inverse(u).expect("unit"), f);
        Some(GradedWitness {
            element: x,
            degree: g,
            regular_part: reg,
            nilpotent_part: n,
            regularity_witness: a,
            unit_factor: Some((f, u)),
        })
    })
}

fn nil_good_witness(r: &GradedRing, g: GroupElem, x: Elem) -> Option<GradedWitness> {
    let ring = r.ring();
    if ring.is_nilpotent(x) {
        return Some(GradedWitness {
            element: x,
            degree: g,
            regular_part: Elem::ZERO,
            nilpotent_part: x,
            regularity_witness: Elem::ZERO,
            unit_factor: None,
        });
    }
    homogeneous_nilpotents(r, g).iter().find_map(|&n| {
        let u = ring.sub(x, n);
        let inv = ring.inverse(u).filter(|_| r.component(g).contains(u))?;
        Some(GradedWitness {
            element: x,
            degree: g,
            regular_part: u,
            nilpotent_part: n,
            regularity_witness: inv,
            unit_factor: Some((ring.one(), u)),
        })
    })
}

/// Witness for `x` of degree `g` under `property`, if one exists.
pub fn witness_for(r: &GradedRing, property: Property, g: GroupElem, x: Elem) -> Option<GradedWitness> {
    match property {
        Property::NrClean => nr_witness(r, g, x),
        Property::UNilClean => unil_witness(r, g, x),
        Property::NilGood => nil_good_witness(r, g, x),
    }
}

/// Checks every homogeneous element; cached per ring and property.
pub fn classify_ring(r: &GradedRing, property: Property) -> Arc<RingVerdict> {
    r.cache().verdicts[property.slot()]
        .get_or_init(|| {
            let mut pairs: Vec<(GroupElem, Elem)> = Vec::new();
            for g in r.group().elements() {
                let skip_zero = g != r.group().identity();
                pairs.extend(r.component_list(g).iter().filter(|&&x| !(skip_zero && x == Elem::ZERO)).map(|&x| (g, x)));
            }
            let results: Vec<(Elem, Option<GradedWitness>)> =
                pairs.par_iter().map(|&(g, x)| (x, witness_for(r, property, g, x))).collect();
            let refuter = results.iter().filter(|(_, w)| w.is_none()).map(|(x, _)| *x).min();
            let witnesses = if refuter.is_none() {
                results.into_iter().filter_map(|(x, w)| w.map(|w| (x, w))).collect()
            } else {
                BTreeMap::new()
            };
            Arc::new(RingVerdict { property, holds: refuter.is_none(), witnesses, refuter })
        })
        .clone()
}

/// Checks the invariants of a witness against the grading.
pub fn check_witness(r: &GradedRing, w: &GradedWitness) -> std::result::Result<(), String> {
    let ring = r.ring();
    let g = w.degree;
    let ginv = r.group().inv(g);
    if ring.add(w.regular_part, w.nilpotent_part) != w.element {
        return Err(format!("{}: parts do not sum to the element", ring.render(w.element)));
    }
    for (what, x, d) in [
        ("element", w.element, g),
        ("regular part", w.regular_part, g),
        ("nilpotent part", w.nilpotent_part, g),
        ("regularity witness", w.regularity_witness, ginv),
    ] {
        if !r.component(d).contains(x) {
            return Err(format!("{}: {what} {} is not of degree {}", ring.render(w.element), ring.render(x), r.label(d)));
        }
    }
    if !ring.is_nilpotent(w.nilpotent_part) {
        return Err(format!("{}: nilpotent part is not nilpotent", ring.render(w.element)));
    }
    if ring.mul3(w.regular_part, w.regularity_witness, w.regular_part) != w.regular_part {
        return Err(format!("{}: r a r != r", ring.render(w.element)));
    }
    if let Some((f, u)) = w.unit_factor {
        if ring.mul(f, f) != f || !r.is_homogeneous(f) || !ring.is_unit(u) || !r.is_homogeneous(u) || ring.mul(f, u) != w.regular_part {
            return Err(format!("{}: bad unit-regular factorization", ring.render(w.element)));
        }
    }
    Ok(())
}

/// Outcome of the nil-good coincidence test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Coincidence {
    NotApplicable(String),
    Applicable { nr_clean: bool, nil_good: bool },
}

impl Coincidence {
    pub fn agrees(&self) -> Option<bool> {
        match self {
            Coincidence::NotApplicable(_) => None,
            Coincidence::Applicable { nr_clean, nil_good } => Some(nr_clean == nil_good),
        }
    }
}

/// When every graded-regular element is central and `R_e` has only the
/// trivial idempotents, graded NR-clean and graded nil-good should coincide.
pub fn coincidence_check_nil_good(r: &GradedRing) -> Coincidence {
    let center = r.ring().center();
    for g in r.group().elements() {
        if let Some(x) = graded_regular_elements(r, g).iter().find(|&x| !center.contains(x)) {
            return Coincidence::NotApplicable(format!(
                "graded-regular {} is not central",
                r.ring().render(x)
            ));
        }
    }
    let idem_e = r.component_list(r.group().identity()).iter().filter(|&&x| r.ring().mul(x, x) == x).count();
    if idem_e > 2 {
        return Coincidence::NotApplicable(format!("R_e has {idem_e} idempotents"));
    }
    Coincidence::Applicable {
        nr_clean: classify_ring(r, Property::NrClean).holds,
        nil_good: classify_ring(r, Property::NilGood).holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::ring::FiniteRing;

    fn trivially_graded(ring: FiniteRing) -> GradedRing {
        GradedRing::trivial(ring, FiniteGroup::cyclic(1).unwrap())
    }

    fn elems(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn degree_sets_of_z4() {
        let r = trivially_graded(FiniteRing::modular(4).unwrap());
        let e = GroupElem(0);
        assert_eq!(graded_regular_elements(&r, e).to_vec(), elems(&[0, 1, 3]));
        assert_eq!(homogeneous_nilpotents(&r, e), elems(&[0, 2]).as_slice());
        assert_eq!(graded_unit_regular_elements(&r, e).to_vec(), elems(&[0, 1, 3]));
        let w = graded_nr_clean_witness(&r, Elem(2)).unwrap().unwrap();
        assert_eq!((w.regular_part, w.nilpotent_part), (Elem(0), Elem(2)));
        let w = graded_nr_clean_witness(&r, Elem(3)).unwrap().unwrap();
        assert_eq!((w.regular_part, w.nilpotent_part), (Elem(3), Elem(0)));
    }

    #[test]
    fn z3_squared_is_nr_clean_not_nil_good() {
        let z3 = FiniteRing::modular(3).unwrap();
        let r = trivially_graded(FiniteRing::product(&[z3.clone(), z3]).unwrap());
        let nr = classify_ring(&r, Property::NrClean);
        assert!(nr.holds);
        assert_eq!(nr.witnesses.len(), 9);
        for w in nr.witnesses.values() {
            check_witness(&r, w).unwrap();
        }
        let ng = classify_ring(&r, Property::NilGood);
        assert!(!ng.holds);
        assert_eq!(ng.refuter, Some(Elem(1)));
        assert!(ng.witnesses.is_empty());
        assert!(classify_ring(&r, Property::UNilClean).holds);
        assert!(matches!(coincidence_check_nil_good(&r), Coincidence::NotApplicable(_)));
    }

    #[test]
    fn coincidence_on_local_rings() {
        for n in [2, 3, 4, 8, 9] {
            let r = trivially_graded(FiniteRing::modular(n).unwrap());
            assert_eq!(
                coincidence_check_nil_good(&r),
                Coincidence::Applicable { nr_clean: true, nil_good: true },
                "Z_{n}"
            );
        }
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("clean".parse::<Property>().is_err());
    }
}
