//! Finite associative unital rings.
//!
//! A [`FiniteRing`] is an arithmetic backend plus lazily computed, write-once
//! caches of the derived sets: units, nilpotents, idempotents, von Neumann
//! regular elements, the center and the Jacobson radical.

pub mod arith;
pub mod span;
pub mod validate;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::set::{Elem, ElementSet};
use arith::{Modular, Product, RingArith, Tabulated, TABULATE_MAX};
use span::SpanScratch;
pub use validate::{validate_ring, Validation, VALIDATION_CAP};

/// How a ring was built.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum StructureTag {
    Modular(u64),
    Product,
    Matrix,
    Triangular,
    GroupRing,
    TrivialExtension,
    Quotient,
    Corner,
    Subring,
    Custom,
}

#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingInner>,
}

struct RingInner {
    arith: Box<dyn RingArith>,
    tag: StructureTag,
    cache: Caches,
}

#[derive(Default)]
struct Caches {
    generators: OnceLock<Vec<Elem>>,
    powers: OnceLock<PowerData>,
    idempotents: OnceLock<ElementSet>,
    regular: OnceLock<ElementSet>,
    center: OnceLock<ElementSet>,
    radical: OnceLock<ElementSet>,
}

struct PowerData {
    nilpotent: ElementSet,
    units: ElementSet,
    inverse: Vec<u32>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order())
            .field("tag", &self.inner.tag)
            .finish()
    }
}

impl FiniteRing {
    /// Wraps a backend. Untrusted backends are validated (completely up to
    /// [`VALIDATION_CAP`], sampled above it); rings of order at most
    /// [`TABULATE_MAX`] get operation tables.
    pub fn from_arith(arith: Box<dyn RingArith>, tag: StructureTag, trusted: bool) -> Result<Self> {
        let n = arith.order();
        if n < 2 {
            return Err(Error::RingAxiom(format!("order {n}: the zero ring is not allowed")));
        }
        if n > u32::MAX as usize / 2 {
            return Err(Error::ResourceLimit(format!("carrier of {n} elements")));
        }
        let arith: Box<dyn RingArith> =
            if n <= TABULATE_MAX { Box::new(Tabulated::new(arith)) } else { arith };
        let ring = FiniteRing { inner: Arc::new(RingInner { arith, tag, cache: Caches::default() }) };
        if ring.one() == Elem::ZERO {
            return Err(Error::RingAxiom("one equals zero".into()));
        }
        if !trusted {
            validate_ring(&ring, VALIDATION_CAP)?;
        }
        Ok(ring)
    }

    /// `Z_n` with representatives `0..n`.
    pub fn modular(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        if n > u32::MAX as u64 / 2 {
            return Err(Error::ResourceLimit(format!("modulus {n}")));
        }
        Self::from_arith(Box::new(Modular { n: n as u32 }), StructureTag::Modular(n), true)
    }

    /// Direct product; tuples are encoded mixed-radix, first factor least significant.
    pub fn product(factors: &[FiniteRing]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Arity("product of zero rings".into()));
        }
        let total = factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()));
        match total {
            Some(t) if t <= crate::max_carrier() => {}
            _ => return Err(Error::ResourceLimit("product carrier exceeds the size cap".into())),
        }
        Self::from_arith(Box::new(Product::new(factors.to_vec())), StructureTag::Product, true)
    }

    pub fn tag(&self) -> &StructureTag {
        &self.inner.tag
    }

    pub fn same(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.arith.order()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem(self.inner.arith.one())
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.inner.arith.add(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.inner.arith.neg(a.0))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.inner.arith.mul(a.0, b.0))
    }

    pub fn mul3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.mul(self.mul(a, b), c)
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        (0..k).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    /// `k * a` for a non-negative integer `k`.
    pub fn scale(&self, k: u64, a: Elem) -> Elem {
        (0..k).fold(Elem::ZERO, |acc, _| self.add(acc, a))
    }

    /// The integer `k` as a ring element, `k * 1`.
    pub fn int(&self, k: i64) -> Elem {
        let x = self.scale(k.unsigned_abs(), self.one());
        if k < 0 { self.neg(x) } else { x }
    }

    pub fn render(&self, a: Elem) -> String {
        self.inner.arith.render(a.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order() as u32).map(Elem)
    }

    /// Additive order of the unity.
    pub fn characteristic(&self) -> u64 {
        let mut k = 1;
        let mut x = self.one();
        while x != Elem::ZERO {
            x = self.add(x, self.one());
            k += 1;
        }
        k
    }

    /// Greedy additive generating set of the whole carrier.
    pub fn additive_generators(&self) -> &[Elem] {
        self.inner
            .cache
            .generators
            .get_or_init(|| span::additive_generators(self, &ElementSet::full(self.order())))
    }

    pub fn is_commutative(&self) -> bool {
        let g = self.additive_generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    fn powers(&self) -> &PowerData {
        self.inner.cache.powers.get_or_init(|| {
            let n = self.order();
            let info: Vec<(bool, Option<u32>)> =
                (0..n as u32).into_par_iter().map(|a| self.power_orbit(Elem(a))).collect();
            let mut nilpotent = ElementSet::empty(n);
            let mut units = ElementSet::empty(n);
            let mut inverse = vec![u32::MAX; n];
            for (a, (nil, inv)) in info.into_iter().enumerate() {
                if nil {
                    nilpotent.insert(Elem(a as u32));
                }
                if let Some(b) = inv {
                    units.insert(Elem(a as u32));
                    inverse[a] = b;
                }
            }
            PowerData { nilpotent, units, inverse }
        })
    }

    /// Walks `a, a^2, a^3, ...` with Brent's cycle detection. The walk visits
    /// the whole tail and one full period, so it sees 0 iff `a` is nilpotent
    /// and 1 iff `a` is a unit (then `a^(k-1)` is the inverse).
    fn power_orbit(&self, a: Elem) -> (bool, Option<u32>) {
        let one = self.one();
        let check = |x: Elem, prev: Elem| -> Option<(bool, Option<u32>)> {
            if x == Elem::ZERO {
                Some((true, None))
            } else if x == one {
                Some((false, Some(prev.0)))
            } else {
                None
            }
        };
        if let Some(r) = check(a, one) {
            return r;
        }
        let mut power = 1u64;
        let mut lam = 1u64;
        let mut tortoise = a;
        let mut prev = a;
        let mut hare = self.mul(a, a);
        loop {
            if let Some(r) = check(hare, prev) {
                return r;
            }
            if tortoise == hare {
                return (false, None);
            }
            if power == lam {
                tortoise = hare;
                power *= 2;
                lam = 0;
            }
            prev = hare;
            hare = self.mul(hare, a);
            lam += 1;
        }
    }

    pub fn nilpotents(&self) -> &ElementSet {
        &self.powers().nilpotent
    }

    pub fn units(&self) -> &ElementSet {
        &self.powers().units
    }

    #[inline]
    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.nilpotents().contains(a)
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.units().contains(a)
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        let i = self.powers().inverse[a.idx()];
        (i != u32::MAX).then_some(Elem(i))
    }

    pub fn idempotents(&self) -> &ElementSet {
        self.inner.cache.idempotents.get_or_init(|| {
            let n = self.order();
            let v: Vec<u32> = (0..n as u32)
                .into_par_iter()
                .filter(|&a| self.mul(Elem(a), Elem(a)) == Elem(a))
                .collect();
            ElementSet::from_iter_in(n, v.into_iter().map(Elem))
        })
    }

    /// Some `a` with `r a r = r`, searching `a` in the additive span of `gens`.
    ///
    /// `r` lies in `r S r` (for an additive subgroup `S` generated by `gens`)
    /// iff it lies in the span of the `r g r`; the coefficients found there
    /// assemble the witness.
    pub fn inner_inverse_in(&self, r: Elem, gens: &[Elem], scratch: &mut SpanScratch) -> Option<Elem> {
        if r == Elem::ZERO {
            return Some(Elem::ZERO);
        }
        let images: Vec<Elem> = gens.iter().map(|&b| self.mul3(r, b, r)).collect();
        let coeff = span::find_in_span(self, &images, r, scratch)?;
        Some(span::combine(self, gens, &coeff))
    }

    pub fn regular_witness(&self, r: Elem) -> Option<Elem> {
        let mut scratch = SpanScratch::new(self.order());
        self.inner_inverse_in(r, self.additive_generators(), &mut scratch)
    }

    /// Von Neumann regular elements: `r` with `r a r = r` for some `a`.
    pub fn regular_elements(&self) -> &ElementSet {
        self.inner.cache.regular.get_or_init(|| {
            let n = self.order();
            let gens = self.additive_generators().to_vec();
            let v: Vec<u32> = (0..n as u32)
                .into_par_iter()
                .map_init(
                    || SpanScratch::new(n),
                    |scratch, a| self.inner_inverse_in(Elem(a), &gens, scratch).map(|_| a),
                )
                .flatten()
                .collect();
            ElementSet::from_iter_in(n, v.into_iter().map(Elem))
        })
    }

    pub fn center(&self) -> &ElementSet {
        self.inner.cache.center.get_or_init(|| {
            let n = self.order();
            let gens = self.additive_generators().to_vec();
            let v: Vec<u32> = (0..n as u32)
                .into_par_iter()
                .filter(|&a| gens.iter().all(|&b| self.mul(Elem(a), b) == self.mul(b, Elem(a))))
                .collect();
            ElementSet::from_iter_in(n, v.into_iter().map(Elem))
        })
    }

    /// `{a : 1 - r a is a unit for every r}`, the Jacobson radical of a finite ring.
    pub fn jacobson_radical(&self) -> &ElementSet {
        self.inner.cache.radical.get_or_init(|| {
            let n = self.order();
            let one = self.one();
            let units = self.units();
            let v: Vec<u32> = (0..n as u32)
                .into_par_iter()
                .filter(|&a| self.elements().all(|r| units.contains(self.sub(one, self.mul(r, Elem(a))))))
                .collect();
            ElementSet::from_iter_in(n, v.into_iter().map(Elem))
        })
    }

    /// Decides whether every element is a regular element plus a nilpotent.
    /// Each element gets the decomposition with the smallest nilpotent part.
    pub fn is_nr_clean_ring(&self) -> NrCleanReport {
        let nil = self.nilpotents().to_vec();
        let regular = self.regular_elements();
        let mut witnesses = BTreeMap::new();
        for x in self.elements() {
            match nil.iter().find(|&&n| regular.contains(self.sub(x, n))) {
                Some(&n) => {
                    witnesses.insert(x, (self.sub(x, n), n));
                }
                None => return NrCleanReport { holds: false, witnesses, refuter: Some(x) },
            }
        }
        NrCleanReport { holds: true, witnesses, refuter: None }
    }
}

/// Outcome of the ungraded NR-clean test: `element -> (regular, nilpotent)`
/// when it holds, otherwise the first element with no decomposition.
#[derive(Debug, Clone)]
pub struct NrCleanReport {
    pub holds: bool,
    pub witnesses: BTreeMap<Elem, (Elem, Elem)>,
    pub refuter: Option<Elem>,
}
