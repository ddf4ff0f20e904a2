//! Finite groups given by Cayley tables.
//!
//! Elements are dense indices `0..order` and the identity is always index 0.
//! Groups here are grading groups and group-ring groups, so they stay tiny;
//! every structural check is exhaustive.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Groups of order above this are only accepted through the trusted path.
pub const GROUP_VALIDATION_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, serde::Serialize)]
pub struct GroupElem(pub u32);

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupInner>,
}

struct GroupInner {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("labels", &self.inner.labels)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.table == other.inner.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table `table[a * order + b] = ab`.
    ///
    /// Index 0 must be the identity. Groups above [`GROUP_VALIDATION_CAP`] are
    /// refused unless `trusted` is set.
    pub fn from_table(
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
        trusted: bool,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if table.len() != order * order || table.iter().any(|&x| x as usize >= order) {
            return Err(Error::GroupAxiom("table shape or entry out of range".into()));
        }
        if order > GROUP_VALIDATION_CAP && !trusted {
            return Err(Error::ResourceLimit(format!(
                "group of order {order} exceeds validation cap {GROUP_VALIDATION_CAP}"
            )));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::GroupAxiom(format!("index 0 is not an identity for {a}")));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inverse[a] = b as u32,
                None => return Err(Error::GroupAxiom(format!("{a} has no inverse"))),
            }
        }
        if !trusted {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::GroupAxiom(format!(
                                "associativity fails on ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(_) => return Err(Error::GroupAxiom("label count mismatch".into())),
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup { inner: Arc::new(GroupInner { order, table, inverse, labels }) })
    }

    /// Cyclic group of order `n`; index `k` is the `k`-th power of the generator (index 1).
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Self::from_table(n, table, Some(labels), n > GROUP_VALIDATION_CAP)
    }

    /// Dihedral group of order `2n`: index `k < n` is the rotation `r^k`, index
    /// `n + k` is the reflection `s r^k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let order = 2 * n;
        let decode = |i: usize| (i / n, i % n); // (reflection bit, rotation)
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            let (sa, ra) = decode(a);
            for b in 0..order {
                let (sb, rb) = decode(b);
                // s^sa r^ra s^sb r^rb = s^(sa+sb) r^(±ra + rb)
                let r = if sb == 1 { (n - ra % n + rb) % n } else { (ra + rb) % n };
                table[a * order + b] = (((sa + sb) % 2) * n + r) as u32;
            }
        }
        let labels = (0..order)
            .map(|i| {
                let (s, r) = decode(i);
                match (s, r) {
                    (0, 0) => "e".to_string(),
                    (0, 1) => "r".to_string(),
                    (0, k) => format!("r^{k}"),
                    (_, 0) => "s".to_string(),
                    (_, 1) => "sr".to_string(),
                    (_, k) => format!("sr^{k}"),
                }
            })
            .collect();
        Self::from_table(order, table, Some(labels), order > GROUP_VALIDATION_CAP)
    }

    /// Componentwise product; `(a, b)` is encoded as `a + |G1| * b`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (g1.order(), g2.order());
        let order = n1 * n2;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            let (a1, b1) = (x % n1, x / n1);
            for y in 0..order {
                let (a2, b2) = (y % n1, y / n1);
                let a = g1.inner.table[a1 * n1 + a2] as usize;
                let b = g2.inner.table[b1 * n2 + b2] as usize;
                table[x * order + y] = (a + n1 * b) as u32;
            }
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", g1.label(GroupElem((x % n1) as u32)), g2.label(GroupElem((x / n1) as u32))))
            .collect();
        Self::from_table(order, table, Some(labels), true).expect("product of groups is a group")
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest
    /// member, so the coset of the identity is index 0. Returns the quotient
    /// and the projection as a lookup table.
    pub fn quotient_group(&self, h: &[GroupElem]) -> Result<(FiniteGroup, Vec<GroupElem>)> {
        let members = self.check_normal_subgroup(h)?;
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &m in &members {
                coset_of[self.op(GroupElem(g as u32), m).idx()] = id;
            }
        }
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = coset_of[self.op(GroupElem(a as u32), GroupElem(b as u32)).idx()];
            }
        }
        let labels = reps
            .iter()
            .map(|&r| if r == 0 { "e".to_string() } else { format!("{}H", self.label(GroupElem(r as u32))) })
            .collect();
        let quotient = Self::from_table(q, table, Some(labels), true)?;
        Ok((quotient, coset_of.into_iter().map(GroupElem).collect()))
    }

    /// Returns the sorted members if `h` is a normal subgroup.
    pub fn check_normal_subgroup(&self, h: &[GroupElem]) -> Result<Vec<GroupElem>> {
        let set: BTreeSet<GroupElem> = h.iter().copied().collect();
        if set.iter().any(|g| g.idx() >= self.order()) {
            return Err(Error::NotSubgroup("index out of range".into()));
        }
        if !set.contains(&GroupElem::IDENTITY) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {} missing", self.label(a))));
            }
            for &b in &set {
                if !set.contains(&self.op(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "not closed: {} * {}",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        for g in self.elements() {
            for &x in &set {
                let c = self.op(self.op(g, x), self.inv(g));
                if !set.contains(&c) {
                    return Err(Error::NotNormal(format!(
                        "{} conjugated by {} leaves the subgroup",
                        self.label(x),
                        self.label(g)
                    )));
                }
            }
        }
        Ok(set.into_iter().collect())
    }

    /// True iff `|G|` is a power of the prime `p`.
    pub fn is_p_group(&self, p: u64) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let mut n = self.order() as u64;
        while n % p == 0 {
            n /= p;
        }
        Ok(n == 1)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn identity(&self) -> GroupElem {
        GroupElem::IDENTITY
    }

    #[inline]
    pub fn op(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        GroupElem(self.inner.table[a.idx() * self.inner.order + b.idx()])
    }

    #[inline]
    pub fn inv(&self, a: GroupElem) -> GroupElem {
        GroupElem(self.inner.inverse[a.idx()])
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        (0..self.order() as u32).map(GroupElem)
    }

    pub fn label(&self, a: GroupElem) -> &str {
        &self.inner.labels[a.idx()]
    }

    /// Looks up an element by label or by decimal index.
    pub fn find(&self, key: &str) -> Option<GroupElem> {
        if let Some(i) = self.inner.labels.iter().position(|l| l == key) {
            return Some(GroupElem(i as u32));
        }
        key.parse::<usize>().ok().filter(|&i| i < self.order()).map(|i| GroupElem(i as u32))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn element_order(&self, a: GroupElem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != GroupElem::IDENTITY {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Least `m` with `a^m = e` for all `a`.
    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, lcm)
    }

    /// All normal subgroups, as sorted member lists, ordered by size then members.
    pub fn normal_subgroups(&self) -> Vec<Vec<GroupElem>> {
        let mut found: BTreeSet<Vec<GroupElem>> = BTreeSet::new();
        let mut frontier: Vec<Vec<GroupElem>> = vec![vec![GroupElem::IDENTITY]];
        found.insert(vec![GroupElem::IDENTITY]);
        while let Some(s) = frontier.pop() {
            for g in self.elements() {
                if s.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(g);
                let closed = self.normal_closure(&gens);
                if found.insert(closed.clone()) {
                    frontier.push(closed);
                }
            }
        }
        let mut out: Vec<_> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    fn normal_closure(&self, gens: &[GroupElem]) -> Vec<GroupElem> {
        let mut set: BTreeSet<GroupElem> = BTreeSet::new();
        set.insert(GroupElem::IDENTITY);
        for &x in gens {
            for g in self.elements() {
                set.insert(self.op(self.op(g, x), self.inv(g)));
            }
        }
        loop {
            let cur: Vec<_> = set.iter().copied().collect();
            let before = set.len();
            for &a in &cur {
                for &b in &cur {
                    set.insert(self.op(a, b));
                }
            }
            if set.len() == before {
                return set.into_iter().collect();
            }
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32) -> GroupElem {
        GroupElem(i)
    }

    #[test]
    fn cyclic_basics() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(c3.op(g(1), g(2)), g(0));
        assert_eq!(c3.label(g(1)), "g");
        assert_eq!(c3.element_order(g(1)), 3);
        assert_eq!(FiniteGroup::cyclic(2).unwrap().exponent(), 2);
        assert_eq!(FiniteGroup::cyclic(0).unwrap_err(), Error::InvalidOrder(0));
    }

    #[test]
    fn products() {
        let c1 = FiniteGroup::cyclic(1).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(FiniteGroup::direct_product(&c1, &c3).order(), 3);
        let klein = FiniteGroup::direct_product(&c2, &c2);
        assert_eq!(klein.order(), 4);
        assert!(klein.elements().all(|a| klein.op(a, a) == klein.identity()));
        let c6 = FiniteGroup::direct_product(&c2, &c3);
        // (1,1) encodes as 1 + 2*1 = 3
        assert_eq!(c6.element_order(g(3)), 6);
    }

    #[test]
    fn quotients() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let (q, _) = c2.quotient_group(&[g(0), g(1)]).unwrap();
        assert_eq!(q.order(), 1);
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let (q, proj) = c4.quotient_group(&[g(0), g(2)]).unwrap();
        assert_eq!(q.order(), 2);
        for a in c4.elements() {
            for b in c4.elements() {
                assert_eq!(proj[c4.op(a, b).idx()], q.op(proj[a.idx()], proj[b.idx()]));
            }
        }
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(c6.quotient_group(&[g(0), g(2), g(4)]).unwrap().0.order(), 2);
        assert!(matches!(c4.quotient_group(&[g(0), g(1)]), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn dihedral_is_nonabelian_with_non_normal_reflection_subgroup() {
        let s3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(matches!(s3.check_normal_subgroup(&[g(0), g(3)]), Err(Error::NotNormal(_))));
        assert!(s3.check_normal_subgroup(&[g(0), g(1), g(2)]).is_ok());
        assert_eq!(s3.normal_subgroups().len(), 3);
    }

    #[test]
    fn p_groups() {
        assert!(FiniteGroup::cyclic(1).unwrap().is_p_group(5).unwrap());
        assert!(FiniteGroup::cyclic(4).unwrap().is_p_group(2).unwrap());
        assert!(!FiniteGroup::cyclic(3).unwrap().is_p_group(2).unwrap());
        assert_eq!(FiniteGroup::cyclic(3).unwrap().is_p_group(4), Err(Error::InvalidPrime(4)));
    }

    #[test]
    fn bad_tables_are_rejected() {
        // not associative: a "group" of order 3 with a Latin square that is not a group
        let t = vec![0, 1, 2, 1, 0, 0, 2, 0, 1];
        assert!(FiniteGroup::from_table(3, t, None, false).is_err());
    }
}
