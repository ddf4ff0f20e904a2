use super::{cartesian, carrier_size};
use crate::error::{Error, Result};
use crate::graded::GradedRing;
use crate::group::GroupElem;
use crate::ring::arith::RingArith;
use crate::ring::{FiniteRing, StructureTag};
use crate::set::{Elem, ElementSet};

/// Which entries of an `n x n` matrix are stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Full,
    Upper,
}

fn slots(shape: Shape, n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| shape == Shape::Full || i <= j)
        .collect()
}

/// Matrices over a base ring, stored entries in row-major order encoded
/// mixed-radix with the first stored entry least significant.
pub struct MatrixArith {
    base: FiniteRing,
    n: usize,
    q: u32,
    slots: Vec<(usize, usize)>,
    one: u32,
}

impl MatrixArith {
    pub fn new(base: FiniteRing, n: usize, shape: Shape) -> Self {
        let q = base.order() as u32;
        let slots = slots(shape, n);
        let mut m = MatrixArith { base, n, q, slots, one: 0 };
        let mut id = vec![Elem::ZERO; n * n];
        for i in 0..n {
            id[i * n + i] = m.base.one();
        }
        m.one = m.encode_dense(&id);
        m
    }

    fn encode_dense(&self, dense: &[Elem]) -> u32 {
        self.slots.iter().rev().fold(0u32, |acc, &(i, j)| acc * self.q + dense[i * self.n + j].0)
    }

    fn decode_dense(&self, mut x: u32) -> Vec<Elem> {
        let mut dense = vec![Elem::ZERO; self.n * self.n];
        for &(i, j) in &self.slots {
            dense[i * self.n + j] = Elem(x % self.q);
            x /= self.q;
        }
        dense
    }

    fn entrywise(&self, a: u32, b: u32, f: impl Fn(Elem, Elem) -> Elem) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut stride = 1u32;
        for _ in &self.slots {
            out += f(Elem(a % self.q), Elem(b % self.q)).0 * stride;
            a /= self.q;
            b /= self.q;
            stride = stride.wrapping_mul(self.q);
        }
        out
    }
}

impl RingArith for MatrixArith {
    fn order(&self) -> usize {
        (self.q as usize).pow(self.slots.len() as u32)
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        self.entrywise(a, b, |x, y| self.base.add(x, y))
    }
    fn neg(&self, a: u32) -> u32 {
        self.entrywise(a, 0, |x, _| self.base.neg(x))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode_dense(a), self.decode_dense(b));
        let n = self.n;
        let mut z = vec![Elem::ZERO; n * n];
        for &(i, j) in &self.slots {
            let mut acc = Elem::ZERO;
            for k in 0..n {
                let (l, r) = (x[i * n + k], y[k * n + j]);
                if l != Elem::ZERO && r != Elem::ZERO {
                    acc = self.base.add(acc, self.base.mul(l, r));
                }
            }
            z[i * n + j] = acc;
        }
        self.encode_dense(&z)
    }
    fn one(&self) -> u32 {
        self.one
    }
    fn render(&self, a: u32) -> String {
        let d = self.decode_dense(a);
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let row: Vec<String> = (0..self.n).map(|j| self.base.render(d[i * self.n + j])).collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Encodes a dense row-major matrix (entries as base-ring elements).
pub fn encode_matrix(shape: Shape, base_order: usize, n: usize, dense: &[Elem]) -> Elem {
    let q = base_order as u32;
    Elem(slots(shape, n).iter().rev().fold(0u32, |acc, &(i, j)| acc * q + dense[i * n + j].0))
}

/// Decodes to a dense row-major matrix.
pub fn decode_matrix(shape: Shape, base_order: usize, n: usize, x: Elem) -> Vec<Elem> {
    let q = base_order as u32;
    let mut x = x.0;
    let mut dense = vec![Elem::ZERO; n * n];
    for (i, j) in slots(shape, n) {
        dense[i * n + j] = Elem(x % q);
        x /= q;
    }
    dense
}

fn sigma_graded(r: &GradedRing, n: usize, sigma: &[GroupElem], shape: Shape) -> Result<GradedRing> {
    let group = r.group();
    if n == 0 {
        return Err(Error::Arity("matrix size must be at least 1".into()));
    }
    if sigma.len() != n {
        return Err(Error::Arity(format!("sigma has {} entries, expected {n}", sigma.len())));
    }
    if let Some(h) = sigma.iter().find(|h| h.idx() >= group.order()) {
        return Err(Error::Arity(format!("sigma entry {} is not in the grading group", h.0)));
    }
    let sl = slots(shape, n);
    let size = carrier_size(r.order(), sl.len())?;
    let arith = MatrixArith::new(r.ring().clone(), n, shape);
    let tag = if shape == Shape::Full { StructureTag::Matrix } else { StructureTag::Triangular };
    let ring = FiniteRing::from_arith(Box::new(arith), tag, true)?;
    let strides: Vec<usize> = (0..sl.len()).map(|k| r.order().pow(k as u32)).collect();
    let comps: Vec<ElementSet> = group
        .elements()
        .map(|g| {
            let lists: Vec<&[Elem]> = sl
                .iter()
                .map(|&(i, j)| r.component_list(group.op(group.op(sigma[i], g), group.inv(sigma[j]))))
                .collect();
            cartesian(size, &strides, &lists)
        })
        .collect();
    GradedRing::build(ring, group.clone(), comps)
}

/// `M_n(R)(σ)`: entry `(i, j)` of a degree-`g` matrix lies in `R_{h_i g h_j^-1}`.
pub fn matrix_graded(r: &GradedRing, n: usize, sigma: &[GroupElem]) -> Result<GradedRing> {
    sigma_graded(r, n, sigma, Shape::Full)
}

/// `T_n(R)(σ)`, the upper-triangular subring with the inherited grading.
pub fn triangular_graded(r: &GradedRing, n: usize, sigma: &[GroupElem]) -> Result<GradedRing> {
    sigma_graded(r, n, sigma, Shape::Upper)
}

/// `c_e e + c_g g -> [[c_e, c_g], [c_g, c_e]]` from `R[C_2]` to `M_2(R)`, as a
/// table over the group ring's carrier (coefficient of `e` least significant).
pub fn alpha_map(base_order: usize) -> Vec<Elem> {
    let q = base_order as u32;
    (0..q * q)
        .map(|x| {
            let (ce, cg) = (Elem(x % q), Elem(x / q));
            encode_matrix(Shape::Full, base_order, 2, &[ce, cg, cg, ce])
        })
        .collect()
}
