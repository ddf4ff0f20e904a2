//! Graded-ring constructions: products, σ-graded matrix and triangular
//! rings, twisted group rings, regrading by a quotient group, trivial
//! extensions and corners.

mod group_ring;
mod matrix;
mod trivext;

use crate::error::{Error, Result};
use crate::graded::{check_morphism, GradedRing};
use crate::group::GroupElem;
use crate::ring::arith::Subset;
use crate::ring::{span, FiniteRing, StructureTag};
use crate::set::{Elem, ElementSet};

pub use group_ring::{
    group_ring_coefficients, group_ring_graded, subgroup_group_ring, GroupRingArith,
};
pub use matrix::{
    alpha_map, decode_matrix, encode_matrix, matrix_graded, triangular_graded, MatrixArith, Shape,
};
pub use trivext::{trivial_extension, zero_extension_ideal, BimoduleKind, GradedBimodule};

/// Carrier size `base^slots`, refused above the global cap.
pub(crate) fn carrier_size(base: usize, slots: usize) -> Result<usize> {
    let cap = crate::max_carrier();
    let mut total = 1usize;
    for _ in 0..slots {
        total = total.checked_mul(base).filter(|&t| t <= cap).ok_or_else(|| {
            Error::ResourceLimit(format!("carrier {base}^{slots} exceeds the size cap {cap}"))
        })?;
    }
    Ok(total)
}

/// All `sum_i lists[i][d_i] * strides[i]`, i.e. the mixed-radix encodings of
/// the tuples drawn slot-wise from `lists`.
pub(crate) fn cartesian(universe: usize, strides: &[usize], lists: &[&[Elem]]) -> ElementSet {
    let mut set = ElementSet::empty(universe);
    let k = lists.len();
    let mut digits = vec![0usize; k];
    loop {
        let x: usize = (0..k).map(|i| lists[i][digits[i]].idx() * strides[i]).sum();
        set.insert(Elem(x as u32));
        let mut pos = 0;
        loop {
            if pos == k {
                return set;
            }
            digits[pos] += 1;
            if digits[pos] < lists[pos].len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn strides(sizes: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut acc = 1;
    sizes
        .into_iter()
        .map(|s| {
            let here = acc;
            acc *= s;
            here
        })
        .collect()
}

/// Direct product with `(prod A_i)_g = prod (A_i)_g`.
pub fn product_graded(factors: &[GradedRing]) -> Result<GradedRing> {
    let first = factors.first().ok_or_else(|| Error::Arity("product of zero graded rings".into()))?;
    let group = first.group().clone();
    if let Some(i) = factors.iter().position(|f| *f.group() != group) {
        return Err(Error::GroupMismatch(format!("factor {i} is graded by a different group")));
    }
    let rings: Vec<FiniteRing> = factors.iter().map(|f| f.ring().clone()).collect();
    let ring = FiniteRing::product(&rings)?;
    let st = strides(rings.iter().map(FiniteRing::order));
    let comps = group
        .elements()
        .map(|g| {
            let lists: Vec<&[Elem]> = factors.iter().map(|f| f.component_list(g)).collect();
            cartesian(ring.order(), &st, &lists)
        })
        .collect();
    GradedRing::build(ring, group, comps)
}

/// The same ring graded by `G/H`, with `R_C` the sum of `R_x` over the coset `C`.
pub fn regrade_by_quotient(r: &GradedRing, h: &[GroupElem]) -> Result<GradedRing> {
    let (q, proj) = r.group().quotient_group(h)?;
    let ring = r.ring();
    let comps = q
        .elements()
        .map(|c| {
            let gens = r
                .group()
                .elements()
                .filter(|x| proj[x.idx()] == c)
                .flat_map(|x| r.component_generators(x).to_vec());
            span::span(ring, gens).0
        })
        .collect();
    GradedRing::build(ring.clone(), q, comps)
}

fn check_corner_idempotent(r: &GradedRing, f: Elem) -> Result<()> {
    let ring = r.ring();
    if f.idx() >= ring.order() {
        return Err(Error::Precondition(format!("element index {} out of range", f.0)));
    }
    let shown = ring.render(f);
    if f == Elem::ZERO {
        return Err(Error::Precondition("the idempotent must be nonzero".into()));
    }
    if ring.mul(f, f) != f {
        return Err(Error::Precondition(format!("{shown} is not idempotent")));
    }
    if !ring.center().contains(f) {
        return Err(Error::Precondition(format!("{shown} is not central")));
    }
    if !r.is_homogeneous(f) {
        return Err(Error::Precondition(format!("{shown} is not homogeneous")));
    }
    Ok(())
}

/// `fR` with unity `f` and components `f R_g`.
pub fn corner(r: &GradedRing, f: Elem) -> Result<GradedRing> {
    corner_with_embedding(r, f).map(|(c, _)| c)
}

/// [`corner`] together with the inclusion into `R` (position `i` of the
/// corner's carrier is `embedding[i]` in `R`).
pub fn corner_with_embedding(r: &GradedRing, f: Elem) -> Result<(GradedRing, Vec<Elem>)> {
    check_corner_idempotent(r, f)?;
    let ring = r.ring();
    let fr = ElementSet::from_iter_in(ring.order(), ring.elements().map(|x| ring.mul(f, x)));
    let members: Vec<u32> = fr.iter().map(|x| x.0).collect();
    let mut index_of = vec![u32::MAX; ring.order()];
    for (i, &m) in members.iter().enumerate() {
        index_of[m as usize] = i as u32;
    }
    let embedding: Vec<Elem> = members.iter().map(|&m| Elem(m)).collect();
    let sub = Subset::new(ring.clone(), members, f).expect("fR contains 0 and f");
    let cring = FiniteRing::from_arith(Box::new(sub), StructureTag::Corner, true)?;
    let comps = r
        .group()
        .elements()
        .map(|g| {
            ElementSet::from_iter_in(
                cring.order(),
                r.component_list(g).iter().map(|&x| Elem(index_of[ring.mul(f, x).idx()])),
            )
        })
        .collect();
    Ok((GradedRing::build(cring, r.group().clone(), comps)?, embedding))
}

/// The map `prod f_i R -> R`, `(x_1, ..., x_m) -> sum x_i`, on the product carrier.
pub fn peirce_map(r: &GradedRing, corners: &[(GradedRing, Vec<Elem>)]) -> Vec<Elem> {
    let ring = r.ring();
    let total: usize = corners.iter().map(|(c, _)| c.order()).product();
    (0..total)
        .map(|mut x| {
            let mut acc = Elem::ZERO;
            for (c, emb) in corners {
                acc = ring.add(acc, emb[x % c.order()]);
                x /= c.order();
            }
            acc
        })
        .collect()
}

/// Corners `f_i R` of a complete family of orthogonal central homogeneous
/// idempotents; verifies that their product maps isomorphically onto `R`.
pub fn orthogonal_corner_family(r: &GradedRing, fs: &[Elem]) -> Result<Vec<(GradedRing, Vec<Elem>)>> {
    let ring = r.ring();
    if fs.is_empty() {
        return Err(Error::Precondition("empty idempotent family".into()));
    }
    for (i, &f) in fs.iter().enumerate() {
        check_corner_idempotent(r, f).map_err(|e| Error::Precondition(format!("f_{}: {e}", i + 1)))?;
        for (j, &g) in fs.iter().enumerate().skip(i + 1) {
            if ring.mul(f, g) != Elem::ZERO {
                return Err(Error::Precondition(format!("f_{} f_{} != 0", i + 1, j + 1)));
            }
        }
    }
    let sum = fs.iter().fold(Elem::ZERO, |acc, &f| ring.add(acc, f));
    if sum != ring.one() {
        return Err(Error::Precondition(format!("the idempotents sum to {}, not 1", ring.render(sum))));
    }
    let corners: Vec<(GradedRing, Vec<Elem>)> =
        fs.iter().map(|&f| corner_with_embedding(r, f)).collect::<Result<_>>()?;
    let product = product_graded(&corners.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>())?;
    let report = check_morphism(&product, r, &peirce_map(r, &corners));
    if !report.is_graded_isomorphism() {
        return Err(Error::Invariant(format!("Peirce map is not a graded isomorphism: {:?}", report.failures)));
    }
    Ok(corners)
}
