//! Ring-axiom validation.
//!
//! Up to the cap the check is complete but avoids the naive cubic loops:
//! associativity of `+` uses Light's test over an additive generating set,
//! distributivity checks that each multiplication map is additive (a map is
//! additive iff `f(x + g) = f(x) + f(g)` for all `x` and generators `g`), and
//! associativity of `*`, being trilinear once distributivity holds, only needs
//! generator triples. Above the cap a fixed-seed random sample is checked.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::FiniteRing;
use crate::error::{Error, Result};
use crate::set::Elem;

pub const VALIDATION_CAP: usize = 4096;
const SAMPLES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    Complete,
    Sampled(usize),
}

fn fail(msg: String) -> Error {
    Error::RingAxiom(msg)
}

pub fn validate_ring(ring: &FiniteRing, cap: usize) -> Result<Validation> {
    let zero = Elem::ZERO;
    let one = ring.one();
    if one == zero {
        return Err(fail("one equals zero".into()));
    }
    for a in ring.elements() {
        if ring.add(a, zero) != a || ring.add(zero, a) != a {
            return Err(fail(format!("0 is not an additive identity for {a}")));
        }
        if ring.add(a, ring.neg(a)) != zero {
            return Err(fail(format!("neg({a}) is not an additive inverse")));
        }
        if ring.mul(one, a) != a || ring.mul(a, one) != a {
            return Err(fail(format!("1 is not a two-sided unity for {a}")));
        }
    }
    if ring.order() > cap {
        sampled(ring)?;
        return Ok(Validation::Sampled(SAMPLES));
    }
    let gens = ring.additive_generators().to_vec();
    for x in ring.elements() {
        for &g in &gens {
            let xg = ring.add(x, g);
            for y in ring.elements() {
                if ring.add(xg, y) != ring.add(x, ring.add(g, y)) {
                    return Err(fail(format!("addition not associative on ({x}, {g}, {y})")));
                }
            }
            if xg != ring.add(g, x) {
                return Err(fail(format!("addition not commutative on ({x}, {g})")));
            }
        }
    }
    for a in ring.elements() {
        for &g in &gens {
            let ag = ring.mul(a, g);
            let ga = ring.mul(g, a);
            for x in ring.elements() {
                let xg = ring.add(x, g);
                if ring.mul(a, xg) != ring.add(ring.mul(a, x), ag) {
                    return Err(fail(format!("left distributivity fails on ({a}, {x}, {g})")));
                }
                if ring.mul(xg, a) != ring.add(ring.mul(x, a), ga) {
                    return Err(fail(format!("right distributivity fails on ({x}, {g}, {a})")));
                }
            }
        }
    }
    for &a in &gens {
        for &b in &gens {
            let ab = ring.mul(a, b);
            for &c in &gens {
                if ring.mul(ab, c) != ring.mul(a, ring.mul(b, c)) {
                    return Err(fail(format!("multiplication not associative on ({a}, {b}, {c})")));
                }
            }
        }
    }
    Ok(Validation::Complete)
}

/// Associativity of a multiplication known to be biadditive, checked on
/// triples of additive generators (complete under that assumption).
pub fn check_associative_on_generators(ring: &FiniteRing) -> Result<()> {
    let gens = ring.additive_generators();
    for &a in gens {
        for &b in gens {
            let ab = ring.mul(a, b);
            for &c in gens {
                if ring.mul(ab, c) != ring.mul(a, ring.mul(b, c)) {
                    return Err(fail(format!(
                        "multiplication not associative on ({}, {}, {})",
                        ring.render(a),
                        ring.render(b),
                        ring.render(c)
                    )));
                }
            }
            if ring.mul(ring.one(), a) != a || ring.mul(a, ring.one()) != a {
                return Err(fail(format!("1 is not a two-sided unity for {}", ring.render(a))));
            }
        }
    }
    Ok(())
}

fn sampled(ring: &FiniteRing) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0f_a11);
    let n = ring.order() as u32;
    for _ in 0..SAMPLES {
        let (a, b, c) = (Elem(rng.gen_range(0..n)), Elem(rng.gen_range(0..n)), Elem(rng.gen_range(0..n)));
        if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)) || ring.add(a, b) != ring.add(b, a) {
            return Err(fail(format!("additive group law fails on sample ({a}, {b}, {c})")));
        }
        if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)) {
            return Err(fail(format!("multiplication not associative on sample ({a}, {b}, {c})")));
        }
        if ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c))
            || ring.mul(ring.add(b, c), a) != ring.add(ring.mul(b, a), ring.mul(c, a))
        {
            return Err(fail(format!("distributivity fails on sample ({a}, {b}, {c})")));
        }
    }
    Ok(())
}
