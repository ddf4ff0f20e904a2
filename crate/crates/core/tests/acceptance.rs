//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always shown. Claims
//! that cannot hold on finite carriers are still checked literally and print
//! FAIL; they are marked `known` and do not fail the process unless
//! `GRLAB_ACCEPT_STRICT=1` is set. Any other failed check exits 1.

use std::time::{Duration, Instant};

use grlab_core::classify::{check_witness, classify_ring, homogeneous_idempotents, lift_graded_regular, Property};
use grlab_core::constructions::{
    alpha_map, corner, decode_matrix, encode_matrix, group_ring_graded, matrix_graded, subgroup_group_ring,
    triangular_graded, zero_extension_ideal, GradedBimodule, Shape, trivial_extension,
};
use grlab_core::graded::{
    check_morphism, check_ring_morphism, enumerate_graded_nil_ideals, graded_quotient, is_graded_nil, RadicalLimits,
};
use grlab_core::ring::validate::{validate_ring, Validation, VALIDATION_CAP};
use grlab_core::verify::{verify_theorem, CaseResult, Instances, Status, TheoremId, VerifyOptions};
use grlab_core::{Elem, FiniteGroup, FiniteRing, GradedRing, GroupElem, HomogeneousIdeal};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

const E: GroupElem = GroupElem(0);
const G: GroupElem = GroupElem(1);

#[derive(Default)]
struct Claims {
    failed: Vec<String>,
    known: Vec<String>,
    notes: Vec<String>,
}

impl Claims {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    /// A claim that is false on every finite instance; checked as stated.
    fn known(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.known.push(what.into());
        } else {
            self.notes.push(format!("unexpectedly held: {}", what.into()));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn cases(&mut self, id: TheoremId, cases: &[CaseResult]) {
        for c in cases.iter().filter(|c| c.status == Status::Fail) {
            self.failed.push(format!("{id} {}: {}", c.instance, c.detail));
        }
    }
}

fn z(n: u64) -> FiniteRing {
    FiniteRing::modular(n).unwrap()
}

fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n).unwrap()
}

fn nr(r: &GradedRing) -> bool {
    classify_ring(r, Property::NrClean).holds
}

fn m2(q: usize, e: [u32; 4]) -> Elem {
    encode_matrix(Shape::Full, q, 2, &e.map(Elem))
}

fn sigmas(k: usize, n: usize) -> Vec<Vec<GroupElem>> {
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

// brute-force oracles, written against the ring operations only

fn brute_nilpotent(ring: &FiniteRing, x: Elem) -> bool {
    let mut p = x;
    for _ in 0..=ring.order() {
        if p == Elem::ZERO {
            return true;
        }
        p = ring.mul(p, x);
    }
    false
}

/// NR-clean check of the subring `members` (with its own identity), by
/// exhaustive search for regular + nilpotent decompositions.
fn brute_nr_clean(ring: &FiniteRing, members: &[Elem]) -> bool {
    let nil: Vec<Elem> = members.iter().copied().filter(|&n| brute_nilpotent(ring, n)).collect();
    let regular = |r: Elem| members.iter().any(|&a| ring.mul3(r, a, r) == r);
    members.par_iter().all(|&x| nil.iter().any(|&n| regular(ring.sub(x, n))))
}

// criteria

fn c1(_: &Instances) -> Claims {
    let mut c = Claims::default();
    let r = matrix_graded(&GradedRing::trivial(z(4), cyclic(3)), 2, &[E, G]).unwrap();
    c.check(r.order() == 256, "|M_2(Z_4)| = 256");
    let shape_ok = r.ring().elements().all(|x| {
        let d = decode_matrix(Shape::Full, 4, 2, x);
        let nz = |i: usize| d[i] != Elem::ZERO;
        let want = match (nz(1), nz(2), nz(0) || nz(3)) {
            (false, false, _) => Some(E),
            (true, false, false) => Some(G),
            (false, true, false) => Some(GroupElem(2)),
            _ => None,
        };
        want.map_or(r.degree(x).is_none(), |g| x == Elem::ZERO || r.degree(x) == Some(g))
    });
    c.check(shape_ok, "components are diagonal / strictly upper / strictly lower");
    c.check(nr(&r), "M_2(Z_4)(C3, (e,g)) graded NR-clean");

    let (re, emb) = r.identity_component_ring();
    let z4z4 = FiniteRing::product(&[z(4), z(4)]).unwrap();
    let phi: Vec<Elem> = emb
        .iter()
        .map(|&x| {
            let d = decode_matrix(Shape::Full, 4, 2, x);
            Elem(d[0].0 + 4 * d[3].0)
        })
        .collect();
    let iso = check_ring_morphism(&re, &z4z4, &phi);
    c.check(iso.is_ring_hom && iso.is_injective && iso.is_surjective, "R_e ≅ Z_4 × Z_4");
    let (a, b) = (re.is_nr_clean_ring().holds, z4z4.is_nr_clean_ring().holds);
    c.check(a && b, "R_e and Z_4 × Z_4 both NR-clean");
    let members: Vec<Elem> = z4z4.elements().collect();
    c.check(brute_nr_clean(&z4z4, &members), "brute-force oracle: Z_4 × Z_4 NR-clean");
    c
}

fn c2(_: &Instances) -> Claims {
    let mut c = Claims::default();
    let m2z3 = matrix_graded(&GradedRing::trivial(z(3), cyclic(2)), 2, &[E, G]).unwrap();
    c.check(m2z3.order() == 81 && nr(&m2z3), "M_2(Z_3)(C2, (e,g)) graded NR-clean");
    c.check(FiniteRing::product(&[z(3), z(3)]).unwrap().is_nr_clean_ring().holds, "Z_3 × Z_3 NR-clean");

    let r9 = matrix_graded(&GradedRing::trivial(z(9), cyclic(2)), 2, &[E, G]).unwrap();
    let ideal = HomogeneousIdeal::generated(&r9, &[m2(9, [3, 0, 0, 3])]).unwrap();
    c.check(ideal.len() == 81, "M_2(3Z_9) has 81 elements");
    let (q, proj) = graded_quotient(&r9, &ideal).unwrap();
    let mut phi = vec![Elem::ZERO; q.order()];
    for x in r9.ring().elements() {
        let d = decode_matrix(Shape::Full, 9, 2, x);
        phi[proj[x.idx()].idx()] = m2(3, [d[0].0 % 3, d[1].0 % 3, d[2].0 % 3, d[3].0 % 3]);
    }
    c.check(check_morphism(&q, &m2z3, &phi).is_graded_isomorphism(), "M_2(Z_9)/M_2(3Z_9) ≅ M_2(Z_3) as graded rings");
    c.check(nr(&q), "quotient graded NR-clean");

    let square_zero = ideal.list().iter().all(|&x| ideal.list().iter().all(|&y| r9.ring().mul(x, y) == Elem::ZERO));
    c.known(
        !is_graded_nil(&r9, &ideal),
        format!(
            "M_2(3Z_9) is not graded-nil (it squares to zero: {square_zero}; M_2(Z_9) itself graded NR-clean: {}, so no \
             one-way failure exists in this finite form)",
            nr(&r9)
        ),
    );
    c
}

fn c3(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    let s = |n: &str| inst.subject(n).unwrap().ring.clone();
    let mut pairs: Vec<(String, GradedRing, HomogeneousIdeal)> = Vec::new();
    let z4 = s("Z4");
    pairs.push(("Z_4 / {0,2}".into(), z4.clone(), HomogeneousIdeal::generated(&z4, &[Elem(2)]).unwrap()));
    let z8 = s("Z8");
    let nil: Vec<Elem> = z8.ring().elements().filter(|&x| brute_nilpotent(z8.ring(), x)).collect();
    pairs.push(("Z_8 / nilradical".into(), z8.clone(), HomogeneousIdeal::generated(&z8, &nil).unwrap()));
    for (name, a) in [("Z4tZ4", 4), ("Z3tZ3", 3), ("Z3xZ3tS", 9)] {
        let t = s(name);
        let i = zero_extension_ideal(&t, a).unwrap();
        pairs.push((format!("{name} / 0∝M"), t, i));
    }
    let t2 = s("T2Z2");
    let upper = encode_matrix(Shape::Upper, 2, 2, &[Elem(0), Elem(1), Elem(0), Elem(0)]);
    pairs.push(("T_2(Z_2) / strict upper".into(), t2.clone(), HomogeneousIdeal::generated(&t2, &[upper]).unwrap()));
    for (label, r, i) in &pairs {
        c.check(is_graded_nil(r, i), format!("{label}: ideal graded-nil"));
        let (q, _) = graded_quotient(r, i).unwrap();
        c.check(nr(r) == nr(&q), format!("{label}: classify(R) = classify(R/I)"));
    }
    c.check(pairs[1].2.len() == 4, "nilradical of Z_8 is {0,2,4,6}");
    let cases = verify_theorem(TheoremId::T1, inst, &VerifyOptions::default());
    c.cases(TheoremId::T1, &cases);
    c.note(format!("{} fixed pairs, {} catalog T1 cases", pairs.len(), cases.len()));
    c
}

fn c4(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    let mut triples = 0usize;
    for s in inst.subjects.iter().filter(|s| s.ring.order() <= 256) {
        let r = &s.ring;
        let ring = r.ring();
        let group = r.group();
        let ideals = enumerate_graded_nil_ideals(r, RadicalLimits::default()).unwrap();
        for i in &ideals {
            for g in group.elements() {
                let comp = r.component_list(g);
                let inv = r.component_list(group.inv(g));
                let res: Vec<Result<usize, String>> = comp
                    .par_iter()
                    .filter(|&&x| x != Elem::ZERO || g == group.identity())
                    .map(|&x| {
                        let mut n = 0;
                        for &y in inv {
                            if !i.contains(ring.sub(x, ring.mul3(x, y, x))) {
                                continue;
                            }
                            let z = lift_graded_regular(r, x, y, i).map_err(|e| format!("{}: {e}", s.name))?;
                            let admissible: Vec<Elem> = comp
                                .iter()
                                .copied()
                                .filter(|&w| ring.mul3(w, y, w) == w && i.contains(ring.sub(w, x)))
                                .collect();
                            if !admissible.contains(&z) {
                                return Err(format!(
                                    "{}: lift of x = {}, y = {} is {}, not admissible",
                                    s.name,
                                    ring.render(x),
                                    ring.render(y),
                                    ring.render(z)
                                ));
                            }
                            n += 1;
                        }
                        Ok(n)
                    })
                    .collect();
                for rr in res {
                    match rr {
                        Ok(n) => triples += n,
                        Err(m) => c.check(false, m),
                    }
                }
            }
        }
    }
    c.check(triples > 0, "some (x, y, I) triples exercised");
    c.note(format!("{triples} (x, y, I) triples"));
    c.cases(TheoremId::L1, &verify_theorem(TheoremId::L1, inst, &VerifyOptions::default()));
    c
}

fn c5(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    let mut checked = 0;
    for name in ["Z4_C2", "Z4_C3", "M2Z2_C2"] {
        let r = &inst.subject(name).unwrap().ring;
        for n in [2usize, 3] {
            let carrier = (r.order() as u128).pow((n * (n + 1) / 2) as u32);
            if carrier > 1 << 20 {
                c.note(format!("{name}, n={n} skipped: carrier {carrier} > 2^20"));
                continue;
            }
            for sigma in sigmas(r.group().order(), n) {
                let t = triangular_graded(r, n, &sigma).unwrap();
                c.check(nr(r) == nr(&t), format!("{name}, n={n}, sigma={sigma:?}"));
                checked += 1;
            }
        }
    }
    c.note(format!("{checked} (R, n, sigma) instances"));
    c
}

fn c6(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    let mut checked = 0;
    for s in &inst.subjects {
        let r = &s.ring;
        // M_2(R) has |R|^4 elements; the 2^20 bound is read on that carrier
        if (r.order() as u128).pow(4) > 1 << 20 || !nr(r) {
            continue;
        }
        let all = sigmas(r.group().order(), 2);
        let bad: Vec<String> = all
            .par_iter()
            .filter(|sigma| !nr(&matrix_graded(r, 2, sigma).unwrap()))
            .map(|sigma| format!("{}, sigma={sigma:?}", s.name))
            .collect();
        for b in bad {
            c.check(false, format!("M_2(R)(sigma) not graded NR-clean: {b}"));
        }
        checked += all.len();
    }
    c.note(format!("{checked} (R, sigma) instances"));
    c
}

fn c7(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    let opts = VerifyOptions::default();
    let l2 = verify_theorem(TheoremId::L2, inst, &opts);
    let l4 = verify_theorem(TheoremId::L4, inst, &opts);
    c.cases(TheoremId::L2, &l2);
    c.cases(TheoremId::L4, &l4);
    for name in ["Z3xZ3", "Z4xZ2"] {
        let hit = l2.iter().any(|k| k.instance.starts_with(&format!("{name}, f=")) && k.status == Status::Pass);
        c.check(hit, format!("L2 exercised on {name}"));
    }
    c.check(
        l4.iter().any(|k| k.instance == "Z2xZ2xZ3" && k.status == Status::Pass && k.detail.starts_with("3-fold")),
        "L4 exercised 3-fold on Z2xZ2xZ3",
    );

    // independent: corners as element sets, NR-clean by brute force
    for name in ["Z3xZ3", "Z4xZ2", "Z2xZ2xZ3"] {
        let r = &inst.subject(name).unwrap().ring;
        let ring = r.ring();
        for f in ring.elements().filter(|&f| f != Elem::ZERO && f != ring.one() && ring.mul(f, f) == f) {
            let mut fr: Vec<Elem> = ring.elements().map(|x| ring.mul(f, x)).collect();
            fr.sort();
            fr.dedup();
            let g = ring.sub(ring.one(), f);
            let mut gr: Vec<Elem> = ring.elements().map(|x| ring.mul(g, x)).collect();
            gr.sort();
            gr.dedup();
            let whole: Vec<Elem> = ring.elements().collect();
            let lhs = brute_nr_clean(ring, &whole);
            c.check(
                lhs == (brute_nr_clean(ring, &fr) && brute_nr_clean(ring, &gr)),
                format!("{name}, f={}: oracle corner equivalence", ring.render(f)),
            );
            c.check(nr(&corner(r, f).unwrap()) == brute_nr_clean(ring, &fr), format!("{name}: fR verdict"));
        }
    }
    c
}

fn c8(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    for n in [4u64, 2] {
        let r = GradedRing::trivial(z(n), cyclic(2));
        let rg = group_ring_graded(&r, &cyclic(2)).unwrap();
        c.check(nr(&rg), format!("Z_{n}[C2] graded NR-clean"));
        let m = matrix_graded(&r, 2, &[E, G]).unwrap();
        let rep = check_morphism(&rg, &m, &alpha_map(r.order()));
        c.check(rep.is_degree_preserving && rep.is_injective, format!("alpha on Z_{n}[C2] is an injective graded map"));
        c.known(
            rep.is_graded_isomorphism(),
            format!("alpha: Z_{n}[C2] -> M_2(Z_{n})(e,g) is a graded isomorphism (|R[C2]| = {}, |M_2| = {})", rg.order(), m.order()),
        );
    }

    let cases = verify_theorem(TheoremId::GrToR, inst, &VerifyOptions::default());
    c.cases(TheoremId::GrToR, &cases);
    c.check(cases.iter().any(|k| k.status == Status::Pass), "GR-TO-R exercised");

    let z4 = GradedRing::trivial(z(4), cyclic(2));
    c.check(brute_nilpotent(z4.ring(), Elem(2)), "2 nilpotent in Z_4");
    let (_, flat) = subgroup_group_ring(&z4, &[E, G]).unwrap();
    c.check(flat.order() == 16 && flat.support() == vec![E], "Z_4[C2] is G/H-trivially graded of order 16");
    let members: Vec<Elem> = flat.ring().elements().collect();
    let brute = brute_nr_clean(flat.ring(), &members);
    c.check(brute, "brute force: Z_4[C2] NR-clean over its 16 elements");
    c.check(nr(&flat) == brute, "classifier agrees with brute force on Z_4[C2]");
    c
}

fn c9(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    let mut checked = 0;
    for name in ["Z4", "Z3", "Z3xZ3", "M2Z2"] {
        let a = &inst.subject(name).unwrap().ring;
        let ring = a.ring();
        let mut ideals: Vec<HomogeneousIdeal> = Vec::new();
        for x in ring.elements() {
            // units generate the whole ring, which is rejected
            let Ok(i) = HomogeneousIdeal::generated(a, &[x]) else { continue };
            if !ideals.iter().any(|j| j.list() == i.list()) {
                ideals.push(i);
            }
        }
        let mut modules = vec![("A".to_string(), GradedBimodule::regular(a))];
        for i in &ideals {
            modules.push((format!("A/I (|I| = {})", i.len()), GradedBimodule::quotient(a, i).unwrap()));
        }
        for (label, m) in modules {
            let t = trivial_extension(a, &m).unwrap();
            c.check(nr(&t) == nr(a), format!("{name} ∝ {label}"));
            checked += 1;
        }
    }
    c.note(format!("{checked} (A, M) instances"));
    c.cases(TheoremId::Trivext, &verify_theorem(TheoremId::Trivext, inst, &VerifyOptions::default()));
    c
}

fn chain_holds(r: &GradedRing) -> bool {
    let [n, u, g] = Property::ALL.map(|p| classify_ring(r, p).holds);
    (!g || u) && (!u || n)
}

fn c10(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    let r = &inst.subject("Z3xZ3").unwrap().ring;
    c.check(nr(r), "Z_3 × Z_3 graded NR-clean");
    let v = classify_ring(r, Property::NilGood);
    c.check(!v.holds && v.refuter == Some(Elem(1)), "Z_3 × Z_3 not nil-good, refuter index 1");
    c.check(r.ring().render(Elem(1)) == "(1,0)", "refuter renders as (1,0)");
    for s in &inst.subjects {
        c.check(chain_holds(&s.ring), format!("{}: nil-good ⇒ U-nil clean ⇒ NR-clean", s.name));
    }

    // random small gradings: products of Z_n, trivially or sigma-graded matrices
    let mut runner = TestRunner::new(Config { cases: 48, failure_persistence: None, ..Config::default() });
    let strat = (2u64..=9, 2u64..=6, 1usize..=3, any::<bool>(), 0usize..9);
    let res = runner.run(&strat, |(a, b, k, matrix, s)| {
        let ring = FiniteRing::product(&[z(a), z(b)]).unwrap();
        let base = GradedRing::trivial(ring, cyclic(k));
        let r = if matrix && a * b <= 12 {
            let sigma = [GroupElem((s % k) as u32), GroupElem(((s / 3) % k) as u32)];
            matrix_graded(&GradedRing::trivial(z(a), cyclic(k)), 2, &sigma).unwrap()
        } else {
            base
        };
        prop_assert!(chain_holds(&r));
        Ok(())
    });
    c.check(res.is_ok(), format!("property test of the containment chain: {res:?}"));
    c
}

fn c11(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    let opts = VerifyOptions::default();
    for id in [TheoremId::JgNil, TheoremId::JgCor] {
        let cases = verify_theorem(id, inst, &opts);
        c.cases(id, &cases);
        let skipped = cases.iter().filter(|k| k.status == Status::SkippedResource).count();
        c.note(format!("{id}: {} cases, {skipped} beyond the J^g cap", cases.len()));
    }
    c
}

fn c12(inst: &Instances) -> Claims {
    let mut c = Claims::default();
    for s in &inst.subjects {
        let r = &s.ring;
        let ring = r.ring();
        let group = r.group();
        c.check(
            validate_ring(ring, VALIDATION_CAP).map(|v| v == Validation::Complete).unwrap_or(false),
            format!("{}: ring axioms", s.name),
        );
        c.check(r.component(E).contains(ring.one()), format!("{}: 1 ∈ R_e", s.name));
        let sizes: usize = group.elements().map(|g| r.component_list(g).len()).product();
        c.check(sizes == r.order(), format!("{}: |R| = ∏ |R_g|", s.name));
        for g in group.elements() {
            let comp = r.component_list(g);
            let closed = comp.iter().all(|&x| comp.iter().all(|&y| r.component(g).contains(ring.sub(x, y))));
            c.check(closed, format!("{}: R_{} is an additive subgroup", s.name, r.label(g)));
            for h in group.elements() {
                let target = r.component(group.op(g, h));
                let ok = comp.par_iter().all(|&x| r.component_list(h).iter().all(|&y| target.contains(ring.mul(x, y))));
                c.check(ok, format!("{}: R_{} R_{} ⊆ R_gh", s.name, r.label(g), r.label(h)));
            }
        }
        let decomposes = ring.elements().all(|x| {
            let parts = r.decompose(x);
            let sum = parts.iter().fold(Elem::ZERO, |acc, &p| ring.add(acc, p));
            sum == x && group.elements().all(|g| r.component(g).contains(parts[g.0 as usize]))
        });
        c.check(decomposes, format!("{}: every element is a sum of its homogeneous parts", s.name));

        for p in Property::ALL {
            let v = classify_ring(r, p);
            for w in v.witnesses.values() {
                if let Err(m) = check_witness(r, w) {
                    c.check(false, format!("{} {p}: {m}", s.name));
                }
            }
        }
        let idem_ok = homogeneous_idempotents(r).iter().all(|&f| r.component(E).contains(f))
            && r.homogeneous_elements().iter().all(|x| ring.mul(x, x) != x || r.component(E).contains(x));
        c.check(idem_ok, format!("{}: homogeneous idempotents lie in R_e", s.name));
    }
    c
}

fn main() {
    let strict = std::env::var("GRLAB_ACCEPT_STRICT").is_ok_and(|v| v == "1");
    let inst = Instances::catalog().expect("catalog builds");
    type Criterion = fn(&Instances) -> Claims;
    let criteria: [(&str, u64, Criterion); 12] = [
        ("graded M_2(Z_4) over C3", 2, c1),
        ("graded M_2(Z_3) over C2 and the M_2(Z_9) quotient", 10, c2),
        ("equivalence modulo graded-nil ideals", 10, c3),
        ("lifting graded-regular elements, oracle check", 60, c4),
        ("T_n(R)(sigma) both directions", 120, c5),
        ("M_2(R)(sigma) forward direction", 120, c6),
        ("central idempotent corners", 5, c7),
        ("group-ring transfer", 10, c8),
        ("trivial extensions", 10, c9),
        ("class separation and containment chain", 5, c10),
        ("graded Jacobson radical", 60, c11),
        ("ring, grading and witness axioms", 60, c12),
    ];
    let mut hard_fail = false;
    for (k, (title, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut claims = run(&inst);
        let took = start.elapsed();
        claims.check(took <= Duration::from_secs(limit), format!("runtime {took:.2?} over the {limit} s budget"));
        let ok = claims.failed.is_empty() && claims.known.is_empty();
        println!("criterion {:>2}: {}  {title} ({took:.2?})", k + 1, if ok { "PASS" } else { "FAIL" });
        for f in &claims.failed {
            println!("    failed: {f}");
        }
        for f in &claims.known {
            println!("    known, cannot hold on finite carriers: {f}");
        }
        for n in &claims.notes {
            println!("    {n}");
        }
        hard_fail |= !claims.failed.is_empty() || (strict && !claims.known.is_empty());
    }
    if hard_fail {
        std::process::exit(1);
    }
}
