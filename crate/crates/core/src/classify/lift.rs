use crate::error::{Error, Result};
use crate::graded::{is_graded_nil, GradedRing, HomogeneousIdeal};
use crate::set::Elem;

/// An idempotent `f` lifted from `a` modulo a graded-nil ideal, with the
/// factorizations `f = q a` and `1 - f = (1 - a) s` (all in the commutative
/// subring generated by `a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdempotentLift {
    pub f: Elem,
    pub q: Elem,
    pub s: Elem,
    pub iterations: u32,
}

fn iteration_limit(order: usize) -> u32 {
    (usize::BITS - (order.max(2) - 1).leading_zeros()) + 2
}

/// Newton iteration `f <- 3f^2 - 2f^3` from `a`. Writing `f' = f^2 (3 - 2f)`
/// and `1 - f' = (1 - f)^2 (1 + 2f)` gives the updates
/// `q' = q f (3 - 2f)` and `s' = s (1 - f)(1 + 2f)` from `q = s = 1`.
pub fn lift_idempotent_mod_nil(r: &GradedRing, a: Elem, ideal: &HomogeneousIdeal) -> Result<IdempotentLift> {
    let ring = r.ring();
    let e = r.group().identity();
    if !r.component(e).contains(a) {
        return Err(Error::Precondition(format!("{} is not of the identity degree", ring.render(a))));
    }
    if !ideal.contains(ring.sub(ring.mul(a, a), a)) {
        return Err(Error::Precondition(format!("{} is not idempotent modulo the ideal", ring.render(a))));
    }
    if !is_graded_nil(r, ideal) {
        return Err(Error::Precondition("ideal is not graded-nil".into()));
    }
    let one = ring.one();
    let (two, three) = (ring.int(2), ring.int(3));
    let (mut f, mut q, mut s) = (a, one, one);
    let limit = iteration_limit(ring.order());
    let mut iterations = 0;
    while ring.mul(f, f) != f {
        if iterations == limit {
            return Err(Error::Invariant(format!("no idempotent after {limit} Newton steps from {}", ring.render(a))));
        }
        let two_f = ring.mul(two, f);
        let up = ring.sub(three, two_f);
        let comp = ring.sub(one, f);
        q = ring.mul3(q, f, up);
        s = ring.mul3(s, comp, ring.add(one, two_f));
        f = ring.mul3(f, f, up);
        iterations += 1;
    }
    debug_assert_eq!(ring.mul(q, a), f);
    debug_assert_eq!(ring.mul(ring.sub(one, a), s), ring.sub(one, f));
    Ok(IdempotentLift { f, q, s, iterations })
}

/// Lifts `x` (graded-regular modulo `I` with witness `y`) to `z = f q x`,
/// where `f = q x y` is the idempotent lifted from `x y`. Returns `z` with
/// `z y z = z`, `z - x` in `I` and `z` of the same degree as `x`.
pub fn lift_graded_regular(r: &GradedRing, x: Elem, y: Elem, ideal: &HomogeneousIdeal) -> Result<Elem> {
    let ring = r.ring();
    let g = r.degree(x).ok_or(Error::NotHomogeneous(x.0))?;
    let ginv = r.group().inv(g);
    if !r.component(ginv).contains(y) {
        return Err(Error::Precondition(format!(
            "{} is not of degree {}",
            ring.render(y),
            r.label(ginv)
        )));
    }
    if !ideal.contains(ring.sub(x, ring.mul3(x, y, x))) {
        return Err(Error::Precondition(format!(
            "x y x - x is not in the ideal for x = {}, y = {}",
            ring.render(x),
            ring.render(y)
        )));
    }
    let a = ring.mul(x, y);
    let lift = lift_idempotent_mod_nil(r, a, ideal)?;
    let z = ring.mul3(lift.f, lift.q, x);
    if ring.mul3(z, y, z) != z || !ideal.contains(ring.sub(z, x)) || !r.component(g).contains(z) {
        return Err(Error::Invariant(format!(
            "lift of {} with {} gave {}",
            ring.render(x),
            ring.render(y),
            ring.render(z)
        )));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::ring::FiniteRing;

    fn trivially_graded(n: u64) -> GradedRing {
        GradedRing::trivial(FiniteRing::modular(n).unwrap(), FiniteGroup::cyclic(1).unwrap())
    }

    #[test]
    fn newton_steps_on_modular_rings() {
        let z4 = trivially_graded(4);
        let i = HomogeneousIdeal::generated(&z4, &[Elem(2)]).unwrap();
        let l = lift_idempotent_mod_nil(&z4, Elem(3), &i).unwrap();
        assert_eq!((l.f, l.iterations), (Elem(1), 1));
        let l = lift_idempotent_mod_nil(&z4, Elem(1), &i).unwrap();
        assert_eq!((l.f, l.iterations), (Elem(1), 0));

        let z9 = trivially_graded(9);
        let i = HomogeneousIdeal::generated(&z9, &[Elem(3)]).unwrap();
        let l = lift_idempotent_mod_nil(&z9, Elem(4), &i).unwrap();
        assert_eq!((l.f, l.iterations), (Elem(1), 1));
        assert_eq!(z9.ring().mul(l.q, Elem(4)), l.f);
    }

    #[test]
    fn preconditions_are_checked() {
        let z4 = trivially_graded(4);
        let i = HomogeneousIdeal::generated(&z4, &[Elem(2)]).unwrap();
        assert!(matches!(lift_idempotent_mod_nil(&z4, Elem(2), &HomogeneousIdeal::zero(&z4)), Err(Error::Precondition(_))));
        assert_eq!(lift_graded_regular(&z4, Elem(1), Elem(1), &i).unwrap(), Elem(1));
        assert_eq!(lift_graded_regular(&z4, Elem(3), Elem(1), &i).unwrap(), Elem(1));
        let z6 = trivially_graded(6);
        let i = HomogeneousIdeal::generated(&z6, &[Elem(3)]).unwrap();
        assert!(matches!(lift_idempotent_mod_nil(&z6, Elem(1), &i), Err(Error::Precondition(_))));
    }

    #[test]
    fn iteration_limit_grows_with_order() {
        assert_eq!(iteration_limit(2), 3);
        assert_eq!(iteration_limit(4), 4);
        assert_eq!(iteration_limit(5), 5);
        assert_eq!(iteration_limit(256), 10);
    }
}
