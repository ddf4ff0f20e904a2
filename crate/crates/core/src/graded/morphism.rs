use serde::Serialize;

use super::GradedRing;
use crate::ring::FiniteRing;
use crate::set::{Elem, ElementSet};

const MAX_FAILURES: usize = 8;

/// Outcome of checking an element map between (graded) rings. The flags nest:
/// degree-preserving implies graded implies ring homomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub is_ring_hom: bool,
    pub is_graded: bool,
    pub is_degree_preserving: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
    pub failures: Vec<String>,
}

impl MorphismReport {
    /// A degree-preserving bijective ring homomorphism.
    pub fn is_graded_isomorphism(&self) -> bool {
        self.is_degree_preserving && self.is_injective && self.is_surjective
    }

    fn note(&mut self, msg: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(msg);
        }
    }
}

/// Checks additivity (against additive generators, which is equivalent),
/// multiplicativity on generator pairs, unity, injectivity and surjectivity.
pub fn check_ring_morphism(r: &FiniteRing, s: &FiniteRing, phi: &[Elem]) -> MorphismReport {
    let mut rep = MorphismReport {
        is_ring_hom: true,
        is_graded: false,
        is_degree_preserving: false,
        is_injective: false,
        is_surjective: false,
        failures: Vec::new(),
    };
    if phi.len() != r.order() || phi.iter().any(|y| y.idx() >= s.order()) {
        rep.is_ring_hom = false;
        rep.note(format!("map is not total from {} to {} elements", r.order(), s.order()));
        return rep;
    }
    let f = |x: Elem| phi[x.idx()];
    let gens = r.additive_generators();
    'add: for x in r.elements() {
        for &b in gens {
            if f(r.add(x, b)) != s.add(f(x), f(b)) {
                rep.is_ring_hom = false;
                rep.note(format!("not additive on ({}, {})", r.render(x), r.render(b)));
                break 'add;
            }
        }
    }
    'mul: for &a in gens {
        for &b in gens {
            if f(r.mul(a, b)) != s.mul(f(a), f(b)) {
                rep.is_ring_hom = false;
                rep.note(format!("not multiplicative on ({}, {})", r.render(a), r.render(b)));
                break 'mul;
            }
        }
    }
    if f(r.one()) != s.one() {
        rep.is_ring_hom = false;
        rep.note(format!("unity maps to {}", s.render(f(r.one()))));
    }
    let image = ElementSet::from_iter_in(s.order(), phi.iter().copied());
    rep.is_surjective = image.len() == s.order();
    rep.is_injective = if rep.is_ring_hom {
        r.elements().skip(1).all(|x| f(x) != Elem::ZERO)
    } else {
        image.len() == r.order()
    };
    if !rep.is_injective {
        rep.note("not injective".into());
    }
    if !rep.is_surjective {
        rep.note(format!("image has {} of {} elements", image.len(), s.order()));
    }
    rep
}

/// [`check_ring_morphism`] plus the grading conditions, checked on every
/// homogeneous element. Degree preservation needs both gradings over groups
/// of the same order (elements are matched by index).
pub fn check_morphism(r: &GradedRing, s: &GradedRing, phi: &[Elem]) -> MorphismReport {
    let mut rep = check_ring_morphism(r.ring(), s.ring(), phi);
    if !rep.is_ring_hom {
        return rep;
    }
    let f = |x: Elem| phi[x.idx()];
    rep.is_graded = match r.homogeneous_elements().iter().find(|&x| !s.is_homogeneous(f(x))) {
        Some(x) => {
            rep.note(format!("homogeneous {} maps to non-homogeneous {}", r.ring().render(x), s.ring().render(f(x))));
            false
        }
        None => true,
    };
    if !rep.is_graded {
        return rep;
    }
    if r.group().order() != s.group().order() {
        rep.note("grading groups differ".into());
        return rep;
    }
    rep.is_degree_preserving = true;
    'deg: for g in r.group().elements() {
        for &x in r.component_list(g) {
            if !s.component(g).contains(f(x)) {
                rep.is_degree_preserving = false;
                rep.note(format!(
                    "{} of degree {} maps outside component {}",
                    r.ring().render(x),
                    r.label(g),
                    s.label(g)
                ));
                break 'deg;
            }
        }
    }
    rep
}
