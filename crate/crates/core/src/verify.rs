//! Theorem verification.
//!
//! Each theorem id is checked on every instance drawn from a spec (by
//! default the built-in catalog). An instance outside a theorem's hypotheses
//! is reported `SKIPPED-hypothesis` with the failed hypothesis named; one
//! that would exceed a size limit is `SKIPPED-resource`. Proof steps that
//! turn out false while the conclusion holds are recorded in the case detail
//! as findings rather than failures.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    classify_ring, coincidence_check_nil_good, graded_regular_elements, lift_graded_regular, Property,
};
use crate::constructions::{
    alpha_map, encode_matrix, group_ring_coefficients, group_ring_graded, matrix_graded, orthogonal_corner_family,
    subgroup_group_ring, trivial_extension, triangular_graded, zero_extension_ideal, GradedBimodule, Shape,
};
use crate::error::{Error, Result};
use crate::graded::{
    check_morphism, check_ring_morphism, enumerate_graded_nil_ideals, graded_jacobson_radical, graded_quotient,
    is_graded_nil, GradedRing, HomogeneousIdeal, RadicalLimits,
};
use crate::group::GroupElem;
use crate::spec::{spec_digest, Env, RingSpec};
use crate::set::Elem;

/// The built-in fixture catalog.
pub const CATALOG: &str = include_str!("catalog.grs");

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    P1a,
    P1b,
    P3,
    NilgoodCoinc,
    L1,
    T1,
    JgNil,
    JgCor,
    Tn,
    L2,
    L4,
    T3,
    GrPgroup,
    GrCorner,
    GrOrder2,
    GrToR,
    Trivext,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::P1a,
        TheoremId::P1b,
        TheoremId::P3,
        TheoremId::NilgoodCoinc,
        TheoremId::L1,
        TheoremId::T1,
        TheoremId::JgNil,
        TheoremId::JgCor,
        TheoremId::Tn,
        TheoremId::L2,
        TheoremId::L4,
        TheoremId::T3,
        TheoremId::GrPgroup,
        TheoremId::GrCorner,
        TheoremId::GrOrder2,
        TheoremId::GrToR,
        TheoremId::Trivext,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::P1a => "P1a",
            TheoremId::P1b => "P1b",
            TheoremId::P3 => "P3",
            TheoremId::NilgoodCoinc => "NILGOOD-COINC",
            TheoremId::L1 => "L1",
            TheoremId::T1 => "T1",
            TheoremId::JgNil => "JG-NIL",
            TheoremId::JgCor => "JG-COR",
            TheoremId::Tn => "TN",
            TheoremId::L2 => "L2",
            TheoremId::L4 => "L4",
            TheoremId::T3 => "T3",
            TheoremId::GrPgroup => "GR-PGROUP",
            TheoremId::GrCorner => "GR-CORNER",
            TheoremId::GrOrder2 => "GR-ORDER2",
            TheoremId::GrToR => "GR-TO-R",
            TheoremId::Trivext => "TRIVEXT",
        }
    }

    /// The claim being checked.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::P1a => "R graded NR-clean => R_e is an NR-clean ring",
            TheoremId::P1b => "R graded NR-clean => every degree-preserving image of R is graded NR-clean",
            TheoremId::P3 => "a product of graded rings is graded NR-clean iff every factor is",
            TheoremId::NilgoodCoinc => {
                "gr(R) central and Idem(R_e) = {0, 1} => (graded NR-clean <=> graded nil-good)"
            }
            TheoremId::L1 => "graded-regular elements modulo a graded-nil ideal lift to graded-regular elements",
            TheoremId::T1 => "I graded-nil => (R graded NR-clean <=> R/I graded NR-clean)",
            TheoremId::JgNil => "R graded NR-clean => J^g(R) is graded-nil",
            TheoremId::JgCor => "R graded NR-clean <=> R/J^g(R) graded NR-clean",
            TheoremId::Tn => "G abelian => (R graded NR-clean <=> T_n(R)(sigma) graded NR-clean) for every sigma",
            TheoremId::L2 => "f central homogeneous idempotent => (R graded NR-clean <=> fR and (1-f)R are)",
            TheoremId::L4 => "1 = f_1 + ... + f_n orthogonal central homogeneous idempotents => (R <=> every f_i R)",
            TheoremId::T3 => "R graded NR-clean => M_n(R)(sigma) graded NR-clean for every sigma",
            TheoremId::GrPgroup => {
                "G a p-group, p nilpotent in R, H normal: R G/H-graded NR-clean => R[H] G/H-graded NR-clean"
            }
            TheoremId::GrCorner => "(fR)[G] and ((1-f)R)[G] graded NR-clean => R[G] graded NR-clean",
            TheoremId::GrOrder2 => "|G| = 2 and R graded NR-clean => R[G] graded NR-clean",
            TheoremId::GrToR => "R[G] graded NR-clean => R is an NR-clean ring",
            TheoremId::Trivext => "A ∝ M graded NR-clean <=> A graded NR-clean",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED-hypothesis")]
    SkippedHypothesis,
    #[serde(rename = "SKIPPED-resource")]
    SkippedResource,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedHypothesis => "SKIPPED-hypothesis",
            Status::SkippedResource => "SKIPPED-resource",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub instance: String,
    pub status: Status,
    pub detail: String,
    pub millis: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: String,
    pub spec_sha256: String,
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn new(spec_sha256: String, mut cases: Vec<CaseResult>) -> Self {
        cases.sort_by(|a, b| (&a.id, &a.instance).cmp(&(&b.id, &b.instance)));
        Report { version: VERSION.to_string(), spec_sha256, cases }
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn has_failures(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("grlab {} spec {}\n", self.version, &self.spec_sha256[..12.min(self.spec_sha256.len())]);
        let w = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.cases {
            out.push_str(&format!(
                "{:<w$}  {:<18}  {}  ({} ms)\n      {}\n",
                c.id, c.status.as_str(), c.instance, c.millis, c.detail
            ));
        }
        out.push_str(&format!(
            "{} cases: {} PASS, {} FAIL, {} SKIPPED-hypothesis, {} SKIPPED-resource\n",
            self.cases.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::SkippedHypothesis),
            self.count(Status::SkippedResource)
        ));
        out
    }
}

/// Size limits for the derived rings built during verification.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest carrier of a derived construction (`T_n`, `M_2`, group rings,
    /// trivial extensions) that a case will build.
    pub budget: usize,
    /// Largest ring on which ideals are enumerated.
    pub enumeration_order: usize,
    /// Largest ring on which the lifting oracle runs.
    pub lifting_order: usize,
    pub radical: RadicalLimits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let budget = std::env::var("GRLAB_VERIFY_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(1 << 16);
        VerifyOptions { budget, enumeration_order: 4096, lifting_order: 256, radical: RadicalLimits::default() }
    }
}

/// A named graded ring under test.
#[derive(Clone)]
pub struct Subject {
    pub name: String,
    pub ring: GradedRing,
}

#[derive(Clone)]
pub struct NamedIdeal {
    pub name: String,
    pub owner: String,
    pub ideal: HomogeneousIdeal,
}

/// Instances drawn from a built spec.
#[derive(Clone)]
pub struct Instances {
    pub subjects: Vec<Subject>,
    pub ideals: Vec<NamedIdeal>,
    pub spec_sha256: String,
}

impl Instances {
    pub fn from_env(env: &Env, spec_sha256: String) -> Self {
        let subjects =
            env.graded_order.iter().map(|n| Subject { name: n.clone(), ring: env.graded[n].clone() }).collect();
        let ideals = env
            .ideals
            .iter()
            .map(|(n, (owner, ideal))| NamedIdeal { name: n.clone(), owner: owner.clone(), ideal: ideal.clone() })
            .collect();
        Instances { subjects, ideals, spec_sha256 }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let env = RingSpec::parse(text)?.build()?;
        Ok(Self::from_env(&env, spec_digest(text)))
    }

    pub fn catalog() -> Result<Self> {
        Self::from_text(CATALOG)
    }

    pub fn subject(&self, name: &str) -> Option<&Subject> {
        self.subjects.iter().find(|s| s.name == name)
    }
}

// ---------------------------------------------------------------- outcomes

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Fail, detail: detail.into() }
}

fn hypothesis(h: impl fmt::Display) -> Outcome {
    Outcome { status: Status::SkippedHypothesis, detail: format!("hypothesis not met: {h}") }
}

fn resource(msg: impl Into<String>) -> Outcome {
    Outcome { status: Status::SkippedResource, detail: msg.into() }
}

fn from_error(e: Error) -> Outcome {
    match e {
        Error::ResourceLimit(m) => resource(m),
        e => fail(format!("error: {e}")),
    }
}

fn judge(ok: bool, detail: String) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn run(id: TheoremId, instance: impl Into<String>, f: impl FnOnce() -> Result<Outcome>) -> CaseResult {
    let start = Instant::now();
    let out = f().unwrap_or_else(from_error);
    CaseResult {
        id: id.as_str().to_string(),
        instance: instance.into(),
        status: out.status,
        detail: out.detail,
        millis: start.elapsed().as_millis() as u64,
    }
}

// ---------------------------------------------------------------- helpers

fn nr(r: &GradedRing) -> bool {
    classify_ring(r, Property::NrClean).holds
}

fn verdict(r: &GradedRing) -> String {
    let v = classify_ring(r, Property::NrClean);
    match v.refuter {
        None => "graded NR-clean".to_string(),
        Some(x) => format!("not graded NR-clean (refuter {})", r.ring().render(x)),
    }
}

fn within(budget: usize, base: usize, slots: usize) -> std::result::Result<usize, String> {
    let mut total = 1usize;
    for _ in 0..slots {
        total = total.checked_mul(base).filter(|&t| t <= budget).ok_or_else(|| {
            format!("derived carrier {base}^{slots} exceeds the verification budget {budget}")
        })?;
    }
    Ok(total)
}

/// All tuples in `G^n`.
fn sigmas(r: &GradedRing, n: usize) -> Vec<Vec<GroupElem>> {
    let k = r.group().order();
    (0..k.pow(n as u32))
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let g = GroupElem((i % k) as u32);
                    i /= k;
                    g
                })
                .collect()
        })
        .collect()
}

fn show_sigma(r: &GradedRing, s: &[GroupElem]) -> String {
    let parts: Vec<&str> = s.iter().map(|&g| r.label(g)).collect();
    format!("({})", parts.join(","))
}

/// Central homogeneous idempotents other than 0 and 1.
fn nontrivial_central_idempotents(r: &GradedRing) -> Vec<Elem> {
    let ring = r.ring();
    let center = ring.center();
    r.component_list(r.group().identity())
        .iter()
        .copied()
        .filter(|&f| f != Elem::ZERO && f != ring.one() && ring.mul(f, f) == f && center.contains(f))
        .collect()
}

/// The primitive central homogeneous idempotents; they sum to 1.
fn central_atoms(r: &GradedRing) -> Vec<Elem> {
    let ring = r.ring();
    let mut all = nontrivial_central_idempotents(r);
    all.push(ring.one());
    all.iter()
        .copied()
        .filter(|&f| all.iter().all(|&h| h == f || [Elem::ZERO, f].contains(&ring.mul(f, h))))
        .collect()
}

fn nil_ideals(r: &GradedRing, opts: &VerifyOptions) -> Result<Vec<HomogeneousIdeal>> {
    if r.order() > opts.enumeration_order {
        return Err(Error::ResourceLimit(format!(
            "ideal enumeration limited to order {}, ring has order {}",
            opts.enumeration_order,
            r.order()
        )));
    }
    enumerate_graded_nil_ideals(r, opts.radical)
}

fn describe_ideal(r: &GradedRing, i: &HomogeneousIdeal) -> String {
    let gens: Vec<String> = i.additive_generators().iter().map(|&x| r.ring().render(x)).collect();
    format!("|I| = {}, additive generators [{}]", i.len(), gens.join(", "))
}

// ---------------------------------------------------------------- theorems

fn p1a(inst: &Instances) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::P1a, &s.name, || {
                if !nr(&s.ring) {
                    return Ok(hypothesis("R graded NR-clean"));
                }
                let (re, _) = s.ring.identity_component_ring();
                let rep = re.is_nr_clean_ring();
                Ok(match rep.refuter {
                    None => pass(format!("R_e (order {}) is NR-clean", re.order())),
                    Some(x) => fail(format!("R_e element {} has no regular + nilpotent decomposition", re.render(x))),
                })
            })
        })
        .collect()
}

/// Quotient targets per subject: named ideals plus the nonzero graded-nil ideals.
fn quotient_targets(inst: &Instances, s: &Subject, opts: &VerifyOptions) -> Result<Vec<(String, HomogeneousIdeal)>> {
    let mut out: Vec<(String, HomogeneousIdeal)> = inst
        .ideals
        .iter()
        .filter(|i| i.owner == s.name)
        .map(|i| (i.name.clone(), i.ideal.clone()))
        .collect();
    for (k, i) in nil_ideals(&s.ring, opts)?.into_iter().enumerate().skip(1) {
        out.push((format!("nil#{k}"), i));
    }
    Ok(out)
}

fn p1b(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for s in &inst.subjects {
        let targets = match quotient_targets(inst, s, opts) {
            Ok(t) => t,
            Err(e) => {
                out.push(run(TheoremId::P1b, &s.name, || Err(e)));
                continue;
            }
        };
        for (label, ideal) in targets {
            out.push(run(TheoremId::P1b, format!("{} / {label}", s.name), || {
                if !nr(&s.ring) {
                    return Ok(hypothesis("R graded NR-clean"));
                }
                let (q, proj) = graded_quotient(&s.ring, &ideal)?;
                let rep = check_morphism(&s.ring, &q, &proj);
                if !(rep.is_degree_preserving && rep.is_surjective) {
                    return Ok(fail(format!("projection is not a degree-preserving surjection: {:?}", rep.failures)));
                }
                Ok(judge(nr(&q), format!("{}; image of order {} is {}", describe_ideal(&s.ring, &ideal), q.order(), verdict(&q))))
            }));
        }
    }
    out
}

fn p3(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut out = Vec::new();
    let subjects = &inst.subjects;
    for (i, a) in subjects.iter().enumerate() {
        for b in &subjects[i..] {
            if a.ring.group() != b.ring.group() {
                continue;
            }
            out.push(run(TheoremId::P3, format!("{} x {}", a.name, b.name), || {
                if let Err(m) = within(opts.budget.min(4096), a.order_pair(b), 1) {
                    return Ok(resource(m));
                }
                let p = crate::constructions::product_graded(&[a.ring.clone(), b.ring.clone()])?;
                let (lhs, rhs) = (nr(&p), nr(&a.ring) && nr(&b.ring));
                Ok(judge(lhs == rhs, format!("product: {}; factors: {}, {}", verdict(&p), verdict(&a.ring), verdict(&b.ring))))
            }));
        }
    }
    out
}

impl Subject {
    fn order_pair(&self, other: &Subject) -> usize {
        self.ring.order().saturating_mul(other.ring.order())
    }
}

fn nilgood_coinc(inst: &Instances) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::NilgoodCoinc, &s.name, || {
                Ok(match coincidence_check_nil_good(&s.ring) {
                    crate::classify::Coincidence::NotApplicable(why) => hypothesis(why),
                    c @ crate::classify::Coincidence::Applicable { nr_clean, nil_good } => judge(
                        c.agrees() == Some(true),
                        format!("graded NR-clean: {nr_clean}, graded nil-good: {nil_good}"),
                    ),
                })
            })
        })
        .collect()
}

/// Runs the lifting on every admissible `(x, y)` and checks the result
/// against a brute-force search over `R_{deg x}`.
fn lifting_oracle(r: &GradedRing, ideal: &HomogeneousIdeal) -> std::result::Result<usize, String> {
    let ring = r.ring();
    let group = r.group();
    let mut exercised = 0;
    for g in group.elements() {
        let comp = r.component_list(g);
        let inv = r.component_list(group.inv(g));
        let results: Vec<std::result::Result<usize, String>> = comp
            .par_iter()
            .map(|&x| {
                let mut n = 0;
                // 0 carries degree e, so it is exercised only there
                if x == Elem::ZERO && g != group.identity() {
                    return Ok(0);
                }
                for &y in inv {
                    if !ideal.contains(ring.sub(x, ring.mul3(x, y, x))) {
                        continue;
                    }
                    let z = lift_graded_regular(r, x, y, ideal).map_err(|e| {
                        format!("x = {}, y = {}: {e}", ring.render(x), ring.render(y))
                    })?;
                    let admissible: Vec<Elem> = comp
                        .iter()
                        .copied()
                        .filter(|&w| ring.mul3(w, y, w) == w && ideal.contains(ring.sub(w, x)))
                        .collect();
                    if !admissible.contains(&z) || (z != Elem::ZERO && r.degree(z) != Some(g)) {
                        return Err(format!(
                            "x = {}, y = {}: lift {} is not among the {} admissible elements",
                            ring.render(x),
                            ring.render(y),
                            ring.render(z),
                            admissible.len()
                        ));
                    }
                    n += 1;
                }
                Ok(n)
            })
            .collect();
        for res in results {
            exercised += res?;
        }
    }
    Ok(exercised)
}

fn l1(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::L1, &s.name, || {
                if s.ring.order() > opts.lifting_order {
                    return Ok(resource(format!(
                        "lifting oracle limited to order {}, ring has order {}",
                        opts.lifting_order,
                        s.ring.order()
                    )));
                }
                let ideals = nil_ideals(&s.ring, opts)?;
                let mut total = 0;
                for i in &ideals {
                    match lifting_oracle(&s.ring, i) {
                        Ok(n) => total += n,
                        Err(m) => return Ok(fail(format!("{}: {m}", describe_ideal(&s.ring, i)))),
                    }
                }
                Ok(pass(format!("{total} (x, y, I) triples over {} graded-nil ideals", ideals.len())))
            })
        })
        .collect()
}

fn t1(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for s in &inst.subjects {
        let targets = match quotient_targets(inst, s, opts) {
            Ok(t) => t,
            Err(e) => {
                out.push(run(TheoremId::T1, &s.name, || Err(e)));
                continue;
            }
        };
        for (label, ideal) in targets {
            out.push(run(TheoremId::T1, format!("{} / {label}", s.name), || {
                if !is_graded_nil(&s.ring, &ideal) {
                    return Ok(hypothesis(format!("I graded-nil ({label} has a non-nilpotent homogeneous member)")));
                }
                let (q, _) = graded_quotient(&s.ring, &ideal)?;
                Ok(judge(
                    nr(&s.ring) == nr(&q),
                    format!("{}; R: {}; R/I: {}", describe_ideal(&s.ring, &ideal), verdict(&s.ring), verdict(&q)),
                ))
            }));
        }
    }
    out
}

fn jg_nil(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::JgNil, &s.name, || {
                let j = graded_jacobson_radical(&s.ring, opts.radical)?;
                let Some(ideal) = &j.ideal else {
                    return Ok(fail("J^g(R) is not a two-sided homogeneous ideal"));
                };
                if !j.contained_in_jacobson {
                    return Ok(fail("J^g(R) is not contained in J(R)"));
                }
                let detail = format!(
                    "|J^g| = {} from {} graded-maximal right ideals; two-sided, inside J(R)",
                    j.members.len(),
                    j.maximal_count
                );
                if !nr(&s.ring) {
                    return Ok(hypothesis(format!("R graded NR-clean ({detail})")));
                }
                Ok(judge(is_graded_nil(&s.ring, ideal), format!("{detail}; graded-nil: {}", is_graded_nil(&s.ring, ideal))))
            })
        })
        .collect()
}

fn jg_cor(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::JgCor, &s.name, || {
                let j = graded_jacobson_radical(&s.ring, opts.radical)?;
                let Some(ideal) = &j.ideal else {
                    return Ok(fail("J^g(R) is not a two-sided homogeneous ideal"));
                };
                let (q, _) = graded_quotient(&s.ring, ideal)?;
                Ok(judge(
                    nr(&s.ring) == nr(&q),
                    format!("|J^g| = {}; R: {}; R/J^g (order {}): {}", j.members.len(), verdict(&s.ring), q.order(), verdict(&q)),
                ))
            })
        })
        .collect()
}

fn tn(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for s in &inst.subjects {
        for n in [2usize, 3] {
            out.push(run(TheoremId::Tn, format!("{}, n={n}", s.name), || {
                if !s.ring.group().is_abelian() {
                    return Ok(hypothesis("G abelian"));
                }
                if let Err(m) = within(opts.budget, s.ring.order(), n * (n + 1) / 2) {
                    return Ok(resource(m));
                }
                let base = nr(&s.ring);
                let all = sigmas(&s.ring, n);
                for sigma in &all {
                    let t = triangular_graded(&s.ring, n, sigma)?;
                    if nr(&t) != base {
                        return Ok(fail(format!(
                            "sigma = {}: R: {}; T_{n}: {}",
                            show_sigma(&s.ring, sigma),
                            verdict(&s.ring),
                            verdict(&t)
                        )));
                    }
                }
                Ok(pass(format!("R: {}; agrees for all {} sigma in G^{n}", verdict(&s.ring), all.len())))
            }));
        }
    }
    out
}

fn corner_verdicts(r: &GradedRing, fs: &[Elem]) -> Result<(bool, String)> {
    let corners = orthogonal_corner_family(r, fs)?;
    let mut all = true;
    let mut parts = Vec::new();
    for ((c, _), &f) in corners.iter().zip(fs) {
        all &= nr(c);
        parts.push(format!("{}R (order {}): {}", r.ring().render(f), c.order(), verdict(c)));
    }
    Ok((all, parts.join("; ")))
}

fn l2(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for s in &inst.subjects {
        let r = &s.ring;
        if r.order() > opts.enumeration_order {
            out.push(run(TheoremId::L2, &s.name, || {
                Ok(resource(format!("idempotent scan limited to order {}", opts.enumeration_order)))
            }));
            continue;
        }
        let fs = nontrivial_central_idempotents(r);
        let ring = r.ring();
        let fs: Vec<Elem> = fs.into_iter().filter(|&f| f < ring.sub(ring.one(), f)).collect();
        if fs.is_empty() {
            out.push(run(TheoremId::L2, &s.name, || {
                Ok(hypothesis("a central homogeneous idempotent other than 0 and 1"))
            }));
        }
        for f in fs {
            out.push(run(TheoremId::L2, format!("{}, f={}", s.name, ring.render(f)), || {
                let (both, detail) = corner_verdicts(r, &[f, ring.sub(ring.one(), f)])?;
                Ok(judge(nr(r) == both, format!("R: {}; {detail}", verdict(r))))
            }));
        }
    }
    out
}

fn l4(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::L4, &s.name, || {
                if s.ring.order() > opts.enumeration_order {
                    return Ok(resource(format!("idempotent scan limited to order {}", opts.enumeration_order)));
                }
                let atoms = central_atoms(&s.ring);
                if atoms.len() < 2 {
                    return Ok(hypothesis("at least two orthogonal central homogeneous idempotents summing to 1"));
                }
                let (all, detail) = corner_verdicts(&s.ring, &atoms)?;
                Ok(judge(nr(&s.ring) == all, format!("{}-fold; R: {}; {detail}", atoms.len(), verdict(&s.ring))))
            })
        })
        .collect()
}

fn t3(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::T3, format!("{}, n=2", s.name), || {
                let r = &s.ring;
                if !nr(r) {
                    return Ok(hypothesis("R graded NR-clean"));
                }
                if let Err(m) = within(opts.budget, r.order(), 4) {
                    return Ok(resource(m));
                }
                let all = sigmas(r, 2);
                let mut noncentral = 0;
                for sigma in &all {
                    let m = matrix_graded(r, 2, sigma)?;
                    if !nr(&m) {
                        return Ok(fail(format!("sigma = {}: M_2(R): {}", show_sigma(r, sigma), verdict(&m))));
                    }
                    let mring = m.ring();
                    let one = r.ring().one();
                    let e11 = encode_matrix(Shape::Full, r.order(), 2, &[one, Elem::ZERO, Elem::ZERO, Elem::ZERO]);
                    if mring.additive_generators().iter().any(|&b| mring.mul(e11, b) != mring.mul(b, e11)) {
                        noncentral += 1;
                    }
                }
                let mut detail = format!("M_2(R)(sigma) graded NR-clean for all {} sigma in G^2", all.len());
                if noncentral > 0 {
                    detail.push_str(&format!(
                        "; finding: E_11 is not central in M_2(R)(sigma) for {noncentral} of {} sigma, so the \
                         central-idempotent decomposition route does not apply; the conclusion was checked directly",
                        all.len()
                    ));
                }
                Ok(pass(detail))
            })
        })
        .collect()
}

/// The prime `p` with `|G|` a power of `p`, if any.
fn group_prime(order: usize) -> Option<usize> {
    let p = (2..=order).find(|&d| order % d == 0)?;
    let mut n = order;
    while n % p == 0 {
        n /= p;
    }
    (n == 1).then_some(p)
}

fn gr_pgroup(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for s in &inst.subjects {
        let r = &s.ring;
        let g = r.group();
        let Some(p) = group_prime(g.order()) else {
            out.push(run(TheoremId::GrPgroup, &s.name, || Ok(hypothesis("G a nontrivial p-group"))));
            continue;
        };
        if !r.ring().is_nilpotent(r.ring().int(p as i64)) {
            out.push(run(TheoremId::GrPgroup, &s.name, || Ok(hypothesis(format!("{p} nilpotent in R")))));
            continue;
        }
        for h in g.normal_subgroups() {
            let labels: Vec<&str> = h.iter().map(|&x| g.label(x)).collect();
            out.push(run(TheoremId::GrPgroup, format!("{}, H={{{}}}", s.name, labels.join(",")), || {
                let regraded = crate::constructions::regrade_by_quotient(r, &h)?;
                if !nr(&regraded) {
                    return Ok(hypothesis("R G/H-graded NR-clean"));
                }
                if let Err(m) = within(opts.budget, r.order(), h.len()) {
                    return Ok(resource(m));
                }
                let (_, rh) = subgroup_group_ring(r, &h)?;
                Ok(judge(nr(&rh), format!("p = {p}; R[H] (order {}) as G/H-graded: {}", rh.order(), verdict(&rh))))
            }));
        }
    }
    out
}

fn gr_corner(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for s in &inst.subjects {
        let r = &s.ring;
        let k = r.group().order();
        if within(opts.budget, r.order(), k).is_err() || r.order() > opts.enumeration_order {
            let m = format!("R[G] carrier {}^{k} exceeds the verification budget {}", r.order(), opts.budget);
            out.push(run(TheoremId::GrCorner, &s.name, || Ok(resource(m))));
            continue;
        }
        let ring = r.ring();
        let fs: Vec<Elem> =
            nontrivial_central_idempotents(r).into_iter().filter(|&f| f < ring.sub(ring.one(), f)).collect();
        if fs.is_empty() {
            out.push(run(TheoremId::GrCorner, &s.name, || {
                Ok(hypothesis("a central homogeneous idempotent other than 0 and 1"))
            }));
        }
        for f in fs {
            out.push(run(TheoremId::GrCorner, format!("{}, f={}", s.name, ring.render(f)), || {
                let g = r.group().clone();
                let fr = crate::constructions::corner(r, f)?;
                let gr = crate::constructions::corner(r, ring.sub(ring.one(), f))?;
                let (a, b) = (group_ring_graded(&fr, &g)?, group_ring_graded(&gr, &g)?);
                if !(nr(&a) && nr(&b)) {
                    return Ok(hypothesis("(fR)[G] and ((1-f)R)[G] graded NR-clean"));
                }
                let rg = group_ring_graded(r, &g)?;
                Ok(judge(nr(&rg), format!("R[G] (order {}): {}", rg.order(), verdict(&rg))))
            }));
        }
    }
    out
}

fn gr_order2(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::GrOrder2, &s.name, || {
                let r = &s.ring;
                if r.group().order() != 2 {
                    return Ok(hypothesis("|G| = 2"));
                }
                if !nr(r) {
                    return Ok(hypothesis("R graded NR-clean"));
                }
                if let Err(m) = within(opts.budget, r.order(), 2) {
                    return Ok(resource(m));
                }
                let rg = group_ring_graded(r, r.group())?;
                let holds = nr(&rg);
                let mut detail = format!("R[G] (order {}): {}", rg.order(), verdict(&rg));
                if within(opts.budget, r.order(), 4).is_ok() {
                    let m = matrix_graded(r, 2, &[GroupElem(0), GroupElem(1)])?;
                    let rep = check_morphism(&rg, &m, &alpha_map(r.order()));
                    detail.push_str(&format!(
                        "; alpha: R[G] -> M_2(R)(e,g) degree-preserving {}, injective {}, surjective {}",
                        rep.is_degree_preserving, rep.is_injective, rep.is_surjective
                    ));
                    if !rep.is_surjective {
                        detail.push_str(&format!(
                            "; finding: alpha is not onto (|R[G]| = {} < |M_2(R)| = {}), so it is not a graded \
                             isomorphism; the conclusion was checked directly",
                            rg.order(),
                            m.order()
                        ));
                    }
                }
                Ok(judge(holds, detail))
            })
        })
        .collect()
}

fn gr_to_r(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    inst.subjects
        .iter()
        .map(|s| {
            run(TheoremId::GrToR, &s.name, || {
                let r = &s.ring;
                let k = r.group().order();
                if let Err(m) = within(opts.budget, r.order(), k) {
                    return Ok(resource(m));
                }
                let rg = group_ring_graded(r, r.group())?;
                if !nr(&rg) {
                    return Ok(hypothesis("R[G] graded NR-clean"));
                }
                // (R[G])_e -> R, sum r_h h -> sum r_h
                let (re, emb) = rg.identity_component_ring();
                let ring = r.ring();
                let psi: Vec<Elem> = emb
                    .iter()
                    .map(|&x| {
                        group_ring_coefficients(r.order(), k, x).into_iter().fold(Elem::ZERO, |acc, c| ring.add(acc, c))
                    })
                    .collect();
                let iso = check_ring_morphism(&re, ring, &psi);
                let iso_ok = iso.is_ring_hom && iso.is_injective && iso.is_surjective;
                let rep = ring.is_nr_clean_ring();
                let mut detail = format!(
                    "R NR-clean: {}; (R[G])_e -> R is a ring isomorphism: {iso_ok}",
                    rep.holds
                );
                if !iso_ok {
                    detail.push_str(&format!("; finding: {:?}", iso.failures));
                }
                Ok(judge(rep.holds, detail))
            })
        })
        .collect()
}

fn trivext(inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for s in &inst.subjects {
        let a = &s.ring;
        if let Err(m) = within(opts.budget, a.order(), 2) {
            out.push(run(TheoremId::Trivext, &s.name, || Ok(resource(m))));
            continue;
        }
        let mut modules: Vec<(String, Option<HomogeneousIdeal>)> = vec![("self".into(), None)];
        modules.push(("A/0".into(), Some(HomogeneousIdeal::zero(a))));
        for i in inst.ideals.iter().filter(|i| i.owner == s.name) {
            modules.push((format!("A/{}", i.name), Some(i.ideal.clone())));
        }
        if let Ok(nils) = nil_ideals(a, opts) {
            for (k, i) in nils.into_iter().enumerate().skip(1) {
                modules.push((format!("A/nil#{k}"), Some(i)));
            }
        }
        for (label, ideal) in modules {
            out.push(run(TheoremId::Trivext, format!("{} ∝ {label}", s.name), || {
                let m = match &ideal {
                    None => GradedBimodule::regular(a),
                    Some(i) => GradedBimodule::quotient(a, i)?,
                };
                let t = trivial_extension(a, &m)?;
                let kernel = zero_extension_ideal(&t, a.order())?;
                let ring = t.ring();
                let square_zero = kernel.list().iter().all(|&x| kernel.list().iter().all(|&y| ring.mul(x, y) == Elem::ZERO));
                if !square_zero || !is_graded_nil(&t, &kernel) {
                    return Ok(fail("0 ∝ M does not square to zero"));
                }
                Ok(judge(
                    nr(&t) == nr(a),
                    format!("A ∝ M (order {}): {}; A: {}", t.order(), verdict(&t), verdict(a)),
                ))
            }));
        }
    }
    out
}

/// Runs one theorem over the instances.
pub fn verify_theorem(id: TheoremId, inst: &Instances, opts: &VerifyOptions) -> Vec<CaseResult> {
    match id {
        TheoremId::P1a => p1a(inst),
        TheoremId::P1b => p1b(inst, opts),
        TheoremId::P3 => p3(inst, opts),
        TheoremId::NilgoodCoinc => nilgood_coinc(inst),
        TheoremId::L1 => l1(inst, opts),
        TheoremId::T1 => t1(inst, opts),
        TheoremId::JgNil => jg_nil(inst, opts),
        TheoremId::JgCor => jg_cor(inst, opts),
        TheoremId::Tn => tn(inst, opts),
        TheoremId::L2 => l2(inst, opts),
        TheoremId::L4 => l4(inst, opts),
        TheoremId::T3 => t3(inst, opts),
        TheoremId::GrPgroup => gr_pgroup(inst, opts),
        TheoremId::GrCorner => gr_corner(inst, opts),
        TheoremId::GrOrder2 => gr_order2(inst, opts),
        TheoremId::GrToR => gr_to_r(inst, opts),
        TheoremId::Trivext => trivext(inst, opts),
    }
}

/// Runs the given theorems (in parallel) and assembles a sorted report.
pub fn verify(ids: &[TheoremId], inst: &Instances, opts: &VerifyOptions) -> Report {
    let cases: Vec<CaseResult> = ids.par_iter().flat_map(|&id| verify_theorem(id, inst, opts)).collect();
    Report::new(inst.spec_sha256.clone(), cases)
}

/// One catalog line per graded ring.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub order: usize,
    pub group_order: usize,
    pub support: Vec<String>,
    pub nr_clean: bool,
    pub u_nil_clean: bool,
    pub nil_good: bool,
}

pub fn catalog_entries(inst: &Instances) -> Vec<CatalogEntry> {
    inst.subjects
        .par_iter()
        .map(|s| {
            let r = &s.ring;
            CatalogEntry {
                name: s.name.clone(),
                order: r.order(),
                group_order: r.group().order(),
                support: r.support().into_iter().map(|g| r.label(g).to_string()).collect(),
                nr_clean: nr(r),
                u_nil_clean: classify_ring(r, Property::UNilClean).holds,
                nil_good: classify_ring(r, Property::NilGood).holds,
            }
        })
        .collect()
}

/// The graded-regular elements of every degree, for reports.
pub fn regular_counts(r: &GradedRing) -> Vec<(String, usize)> {
    r.group().elements().map(|g| (r.label(g).to_string(), graded_regular_elements(r, g).len())).collect()
}
