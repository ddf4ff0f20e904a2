//! Arithmetic backends.
//!
//! A backend maps carrier indices to carrier indices. Composite backends
//! (products, matrices, group rings) encode tuples in mixed radix with the
//! first coordinate least significant, so the all-zero tuple is index 0.

use super::FiniteRing;
use crate::set::Elem;

/// Ring operations on dense carrier indices. Index 0 must be the zero element.
pub trait RingArith: Send + Sync {
    fn order(&self) -> usize;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn one(&self) -> u32;
    /// Human-readable form of an element, for reports.
    fn render(&self, a: u32) -> String {
        a.to_string()
    }
}

/// Mixed-radix codec for tuples of small indices.
#[derive(Debug, Clone)]
pub struct Radix {
    sizes: Vec<u32>,
    total: usize,
}

impl Radix {
    pub fn new(sizes: Vec<u32>) -> Self {
        let total = sizes.iter().map(|&s| s as usize).product();
        Radix { sizes, total }
    }

    pub fn uniform(size: u32, len: usize) -> Self {
        Self::new(vec![size; len])
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    #[inline]
    pub fn decode_into(&self, mut x: u32, out: &mut [u32]) {
        for (o, &s) in out.iter_mut().zip(&self.sizes) {
            *o = x % s;
            x /= s;
        }
    }

    pub fn decode(&self, x: u32) -> Vec<u32> {
        let mut v = vec![0; self.sizes.len()];
        self.decode_into(x, &mut v);
        v
    }

    #[inline]
    pub fn encode(&self, digits: &[u32]) -> u32 {
        let mut x = 0u32;
        for (&d, &s) in digits.iter().zip(&self.sizes).rev() {
            x = x * s + d;
        }
        x
    }
}

/// `Z_n` on representatives `0..n`.
pub struct Modular {
    pub n: u32,
}

impl RingArith for Modular {
    fn order(&self) -> usize {
        self.n as usize
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.n { s - self.n } else { s }
    }
    fn neg(&self, a: u32) -> u32 {
        if a == 0 { 0 } else { self.n - a }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.n as u64) as u32
    }
    fn one(&self) -> u32 {
        1 % self.n
    }
}

/// Cayley-table cache for small rings; rendering still goes to the source backend.
pub struct Tabulated {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    one: u32,
    source: Box<dyn RingArith>,
}

/// Rings up to this order get their operation tables precomputed.
pub const TABULATE_MAX: usize = 1024;

impl Tabulated {
    pub fn new(source: Box<dyn RingArith>) -> Self {
        let n = source.order();
        assert!(n <= TABULATE_MAX);
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = source.add(a as u32, b as u32) as u16;
                mul[a * n + b] = source.mul(a as u32, b as u32) as u16;
            }
        }
        let neg = (0..n).map(|a| source.neg(a as u32) as u16).collect();
        let one = source.one();
        Tabulated { order: n, add, mul, neg, one, source }
    }
}

impl RingArith for Tabulated {
    fn order(&self) -> usize {
        self.order
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order + b as usize] as u32
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize] as u32
    }
    fn one(&self) -> u32 {
        self.one
    }
    fn render(&self, a: u32) -> String {
        self.source.render(a)
    }
}

/// Direct product with componentwise operations.
pub struct Product {
    pub factors: Vec<FiniteRing>,
    pub radix: Radix,
    one: u32,
}

impl Product {
    pub fn new(factors: Vec<FiniteRing>) -> Self {
        let radix = Radix::new(factors.iter().map(|f| f.order() as u32).collect());
        let ones: Vec<u32> = factors.iter().map(|f| f.one().0).collect();
        let one = radix.encode(&ones);
        Product { factors, radix, one }
    }

    #[inline]
    fn zip(&self, a: u32, b: u32, f: impl Fn(&FiniteRing, Elem, Elem) -> Elem) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut stride = 1u32;
        for r in &self.factors {
            let s = r.order() as u32;
            let c = f(r, Elem(a % s), Elem(b % s)).0;
            out += c * stride;
            stride *= s;
            a /= s;
            b /= s;
        }
        out
    }
}

impl RingArith for Product {
    fn order(&self) -> usize {
        self.radix.total()
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        self.zip(a, b, |r, x, y| r.add(x, y))
    }
    fn neg(&self, a: u32) -> u32 {
        self.zip(a, 0, |r, x, _| r.neg(x))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.zip(a, b, |r, x, y| r.mul(x, y))
    }
    fn one(&self) -> u32 {
        self.one
    }
    fn render(&self, a: u32) -> String {
        let parts: Vec<String> = self
            .radix
            .decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(&d, r)| r.render(Elem(d)))
            .collect();
        format!("({})", parts.join(","))
    }
}

/// A subset of a parent ring closed under the operations, with its own unity.
/// Covers both unital subrings (e.g. the identity component) and corners `fR`.
pub struct Subset {
    pub parent: FiniteRing,
    pub members: Vec<u32>,
    index_of: Vec<u32>,
    one: u32,
}

impl Subset {
    /// `members` must be sorted ascending and contain zero (which lands on index 0).
    pub fn new(parent: FiniteRing, members: Vec<u32>, unity: Elem) -> Option<Self> {
        let mut index_of = vec![u32::MAX; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            index_of[m as usize] = i as u32;
        }
        if members.first() != Some(&0) {
            return None;
        }
        let one = *index_of.get(unity.idx())?;
        if one == u32::MAX {
            return None;
        }
        Some(Subset { parent, members, index_of, one })
    }

    #[inline]
    fn lift(&self, a: u32) -> Elem {
        Elem(self.members[a as usize])
    }

    #[inline]
    fn lower(&self, x: Elem) -> u32 {
        let i = self.index_of[x.idx()];
        debug_assert!(i != u32::MAX, "subset not closed");
        i
    }

    pub fn embedding(&self) -> &[u32] {
        &self.members
    }
}

impl RingArith for Subset {
    fn order(&self) -> usize {
        self.members.len()
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        self.lower(self.parent.add(self.lift(a), self.lift(b)))
    }
    fn neg(&self, a: u32) -> u32 {
        self.lower(self.parent.neg(self.lift(a)))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.lower(self.parent.mul(self.lift(a), self.lift(b)))
    }
    fn one(&self) -> u32 {
        self.one
    }
    fn render(&self, a: u32) -> String {
        self.parent.render(self.lift(a))
    }
}

/// `R/I` on coset representatives (smallest index per coset).
pub struct Quotient {
    pub parent: FiniteRing,
    pub reps: Vec<u32>,
    pub coset_of: Vec<u32>,
}

impl Quotient {
    /// Cosets of the additive subgroup with member list `ideal`.
    pub fn new(parent: FiniteRing, ideal: &[Elem]) -> Self {
        let n = parent.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &i in ideal {
                coset_of[parent.add(Elem(x), i).idx()] = id;
            }
        }
        Quotient { parent, reps, coset_of }
    }

    #[inline]
    fn rep(&self, a: u32) -> Elem {
        Elem(self.reps[a as usize])
    }

    #[inline]
    fn reduce(&self, x: Elem) -> u32 {
        self.coset_of[x.idx()]
    }
}

impl RingArith for Quotient {
    fn order(&self) -> usize {
        self.reps.len()
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        self.reduce(self.parent.add(self.rep(a), self.rep(b)))
    }
    fn neg(&self, a: u32) -> u32 {
        self.reduce(self.parent.neg(self.rep(a)))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(self.parent.mul(self.rep(a), self.rep(b)))
    }
    fn one(&self) -> u32 {
        self.reduce(self.parent.one())
    }
    fn render(&self, a: u32) -> String {
        format!("[{}]", self.parent.render(self.rep(a)))
    }
}
