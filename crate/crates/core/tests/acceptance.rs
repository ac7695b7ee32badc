//! Acceptance gate: nine exhaustive or seeded cross-checks, each printed as
//! one PASS/FAIL line with its wall-clock time against a fixed limit.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use semigroupoid::action::{check_equivalence, check_equivariant, PartialAction, Point};
use semigroupoid::congruence::{is_e_unitary, quotient, sigma, sigma_by_equations, sigma_relation, SigmaRoute};
use semigroupoid::enumerate::enumerate_inverse_semigroupoids;
use semigroupoid::fixtures;
use semigroupoid::globalization::{globalize, GlobalizationResult};
use semigroupoid::inverse::InverseSemigroupoid;
use semigroupoid::poset::{FinitePoset, Relation, Semilatticeoid};
use semigroupoid::ptheorem::{
    check_e_unitary_preservation, idempotent_semilatticeoid, induced_sigma_action, mcalister_from_action, munn_action,
    ptheorem_isomorphism, semidirect_product,
};
use semigroupoid::random::{
    copy_action, exhaustive_families, global_actions, groupoid_semilatticeoid_action, mutate, random_family,
    random_poset, restrictions, rng, small_semilattices,
};

type Outcome = Result<String, String>;

static ENUMERATED: OnceLock<Vec<InverseSemigroupoid>> = OnceLock::new();

fn enumerated() -> &'static [InverseSemigroupoid] {
    ENUMERATED.get_or_init(|| enumerate_inverse_semigroupoids(5, 5).expect("within the cap"))
}

fn extra_fixtures() -> Vec<InverseSemigroupoid> {
    let mut out = fixtures::all_inverse_fixtures();
    out.push(fixtures::gen_sa(&fixtures::cyclic_group(3), 2).unwrap());
    out.push(fixtures::gen_sa(&fixtures::trivial_monoid(), 3).unwrap());
    out.push(fixtures::gen_jpi(&[0, 0, 1], 2).unwrap());
    out.push(fixtures::gen_jpi(&[0, 1, 2], 3).unwrap());
    out
}

/// Enumerated structures with at most `max_arrows` arrows, then fixtures.
fn corpus(max_arrows: usize) -> Vec<InverseSemigroupoid> {
    let mut out: Vec<InverseSemigroupoid> = enumerated().iter().filter(|s| s.len() <= max_arrows).cloned().collect();
    out.extend(extra_fixtures());
    out
}

fn groupoids() -> Vec<InverseSemigroupoid> {
    let mut out: Vec<InverseSemigroupoid> = enumerated().iter().filter(|s| s.is_groupoid()).cloned().collect();
    out.extend([
        fixtures::pair_groupoid(2),
        fixtures::pair_groupoid(3),
        fixtures::discrete_groupoid(2),
        fixtures::cyclic_group(3),
        fixtures::gen_sa(&fixtures::cyclic_group(2), 2).unwrap(),
    ]);
    out
}

fn name(s: &InverseSemigroupoid) -> String {
    s.base().arrow_names().join(",")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `e <= s` with `e` idempotent forces `s` idempotent, read off the
/// definition of the natural order.
fn e_unitary_oracle(s: &InverseSemigroupoid) -> bool {
    let base = s.base();
    s.arrows().filter(|&e| s.is_idempotent(e)).all(|e| {
        s.arrows()
            .filter(|&t| base.parallel(e, t) && s.product(t, s.product(s.inv(e), e)) == e)
            .all(|t| s.is_idempotent(t))
    })
}

/// `s σ t` iff some `r` is below both, by the definition of the order.
fn sigma_oracle(s: &InverseSemigroupoid) -> Relation {
    let below = |r: usize, t: usize| s.base().parallel(r, t) && s.product(t, s.product(s.inv(r), r)) == r;
    Relation::from_fn(s.len(), |a, b| s.arrows().any(|r| below(r, a) && below(r, b)))
}

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    let actors = corpus(4);
    let (mut total, mut valid) = (0usize, 0usize);
    let mut check = |a: &PartialAction| -> Result<(), String> {
        let (e, p) = (a.validate_e(), a.validate_p());
        total += 1;
        valid += e.is_ok() as usize;
        ensure(e.is_ok() == p.is_ok(), || format!("actor {}: E {:?} vs P {:?} on {:?}", name(&a.actor), e, p, a))
    };
    for actor in &actors {
        for m in 1..=4 {
            let orders = [None, Some(FinitePoset::chain(m)), Some(random_poset(m, 0.5, &mut r))];
            for order in &orders {
                if let Some(all) = exhaustive_families(actor, m, order.clone(), 20_000) {
                    for a in &all {
                        check(a)?;
                    }
                }
                for _ in 0..40 {
                    let a = random_family(actor, m, order.clone(), &mut r);
                    check(&a)?;
                    for _ in 0..3 {
                        check(&mutate(&a, &mut r))?;
                    }
                }
            }
        }
        for global in global_actions(actor) {
            for (restricted, _) in restrictions(&global, 4) {
                check(&restricted)?;
                for _ in 0..5 {
                    check(&mutate(&restricted, &mut r))?;
                }
                let mut unordered = restricted.clone();
                unordered.order = None;
                check(&unordered)?;
            }
        }
    }
    ensure(valid > 1000 && total - valid > 1000, || format!("too few of one verdict: {valid} valid of {total}"))?;
    Ok(format!("{total} families over {} actors, {valid} valid", actors.len()))
}

fn criterion_2() -> Outcome {
    // Enumerate again so the time limit covers the enumeration itself.
    let fresh = enumerate_inverse_semigroupoids(5, 5).map_err(|e| e.to_string())?;
    ensure(fresh == enumerated(), || "enumeration is not deterministic".into())?;
    let mut all = fresh;
    all.extend(extra_fixtures());
    for s in &all {
        let sig = sigma(s);
        let oracle = sigma_oracle(s);
        ensure(sig.relation() == oracle, || format!("sigma differs from the oracle on {}", name(s)))?;
        for route in [SigmaRoute::CommonLowerBound, SigmaRoute::RightIdempotent, SigmaRoute::LeftIdempotent] {
            ensure(sigma_relation(s, route) == oracle, || format!("{route:?} differs on {}", name(s)))?;
        }
        let eq = sigma_by_equations(s).map_err(|e| format!("{}: {e}", name(s)))?;
        ensure(eq == sig, || format!("equational sigma differs on {}", name(s)))?;
        ensure(quotient(s, &sig).semigroupoid.is_groupoid(), || format!("S/σ is not a groupoid for {}", name(s)))?;
    }
    Ok(format!("{} structures ({} enumerated)", all.len(), enumerated().len()))
}

fn criterion_3() -> Outcome {
    let all = corpus(5);
    let mut rejected = 0;
    for s in &all {
        let cert = is_e_unitary(s).map_err(|e| format!("{}: {e}", name(s)))?;
        ensure(cert.conditions.iter().all(|&c| c == cert.e_unitary), || format!("split verdict on {}", name(s)))?;
        ensure(cert.e_unitary == e_unitary_oracle(s), || format!("oracle disagrees on {}", name(s)))?;
        ensure(cert.witness.is_some() != cert.e_unitary, || format!("witness mismatch on {}", name(s)))?;
        rejected += !cert.e_unitary as usize;
    }
    let b2 = fixtures::brandt_b2();
    let cert = is_e_unitary(&b2).map_err(|e| e.to_string())?;
    let expected = (b2.base().find_arrow("0").unwrap(), b2.base().find_arrow("a").unwrap());
    ensure(!cert.e_unitary && cert.witness == Some(expected), || format!("B2 certificate {cert:?}"))?;
    for g in groupoids() {
        ensure(is_e_unitary(&g).is_ok_and(|c| c.e_unitary), || format!("groupoid {} rejected", name(&g)))?;
    }
    let mut lattices: Vec<InverseSemigroupoid> =
        small_semilattices().iter().map(|p| Semilatticeoid::from_poset(p).unwrap().base().clone()).collect();
    lattices.push(Semilatticeoid::from_semilattices(&small_semilattices()).unwrap().base().clone());
    lattices.push(fixtures::semilatticeoid_example().base().clone());
    lattices.extend(enumerated().iter().filter(|s| s.arrows().all(|a| s.is_idempotent(a))).cloned());
    for l in &lattices {
        ensure(is_e_unitary(l).is_ok_and(|c| c.e_unitary), || format!("semilatticeoid {} rejected", name(l)))?;
    }
    Ok(format!("{} structures, {rejected} not E-unitary, {} semilatticeoids", all.len(), lattices.len()))
}

/// Ordered partial actions: restrictions of Munn and Wagner–Preston actions,
/// groupoid actions on semilatticeoids, and induced actions of `S/σ`.
fn ordered_corpus() -> Vec<PartialAction> {
    let mut r = rng(4);
    let mut out = Vec::new();
    for s in corpus(4) {
        for global in global_actions(&s) {
            out.extend(restrictions(&global, 6).into_iter().map(|(a, _)| a));
        }
        if is_e_unitary(&s).is_ok_and(|c| c.e_unitary) {
            out.push(induced_sigma_action(&s, &munn_action(&s)).expect("E-unitary").action);
        }
    }
    for g in groupoids() {
        for _ in 0..4 {
            out.push(groupoid_semilatticeoid_action(&g, &mut r).0);
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let corpus = ordered_corpus();
    let mut classes = 0;
    for a in &corpus {
        ensure(a.is_ordered(), || "corpus action is unordered".into())?;
        let g = globalize(a).map_err(|e| format!("{}: {e}", name(&a.actor)))?;
        g.verify_contract().map_err(|e| format!("{}: {e}", name(&a.actor)))?;
        ensure(g.check_lemma_tec().is_empty(), || format!("lemma fails on {}", name(&a.actor)))?;
        let eta = &g.eta;
        ensure(eta.global && eta.validate_e().is_ok() && eta.validate_p().is_ok(), || "η not global".into())?;
        let order = eta.order.as_ref().ok_or("η unordered")?;
        ensure(order.relation() == &g.class_order_by_definition(), || "class order mismatch".into())?;
        let image: BTreeSet<Point> = g.embed.iter().copied().collect();
        ensure(image.len() == a.carrier_len(), || "i not injective".into())?;
        ensure(order.is_order_ideal(&image), || "i(X) not an ideal".into())?;
        for x in 0..a.carrier_len() {
            for y in 0..a.carrier_len() {
                ensure(a.leq(x, y) == order.leq(g.embed[x], g.embed[y]), || "i not an order embedding".into())?;
            }
        }
        ensure(eta.orbit(&image).len() == g.class_count(), || "orb(i(X)) ≠ E".into())?;
        classes += g.class_count();
    }
    Ok(format!("{} ordered actions, {classes} classes in total", corpus.len()))
}

/// Counts ordered equivariant maps `k: E → Z` with `k∘i = j`, up to `limit`.
/// Classes of `i(X)` are assigned first, so every later class is reached by
/// some `η_s` from an assigned one.
fn count_mediating(g: &GlobalizationResult, zeta: &PartialAction, j: &[Point], limit: usize) -> usize {
    let eta = &g.eta;
    let n = g.class_count();
    let mut fixed = vec![None; n];
    for (x, &c) in g.embed.iter().enumerate() {
        match fixed[c] {
            Some(v) if v != j[x] => return 0,
            _ => fixed[c] = Some(j[x]),
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&c| fixed[c].is_some()).collect();
    order.extend((0..n).filter(|&c| fixed[c].is_none()));
    let consistent = |k: &[Option<Point>], c: usize, z: Point| -> bool {
        for s in eta.actor.arrows() {
            if eta.domains[s].contains(&c) && !zeta.domains[s].contains(&z) {
                return false;
            }
            if let Some(d) = eta.theta(s, c) {
                if let Some(kd) = k[d] {
                    if zeta.theta(s, z) != Some(kd) {
                        return false;
                    }
                }
            }
            for (&b, &d) in &eta.maps[s] {
                if d == c {
                    if let Some(kb) = k[b] {
                        if zeta.theta(s, kb) != Some(z) {
                            return false;
                        }
                    }
                }
            }
        }
        (0..n).all(|d| match k[d] {
            Some(kd) => (!eta.leq(d, c) || zeta.leq(kd, z)) && (!eta.leq(c, d) || zeta.leq(z, kd)),
            None => true,
        })
    };
    fn go(
        depth: usize,
        order: &[usize],
        fixed: &[Option<Point>],
        k: &mut Vec<Option<Point>>,
        targets: usize,
        consistent: &dyn Fn(&[Option<Point>], usize, Point) -> bool,
        count: &mut usize,
        limit: usize,
    ) {
        if *count >= limit {
            return;
        }
        if depth == order.len() {
            *count += 1;
            return;
        }
        let c = order[depth];
        let candidates: Vec<Point> = match fixed[c] {
            Some(v) => vec![v],
            None => (0..targets).collect(),
        };
        for z in candidates {
            if consistent(k, c, z) {
                k[c] = Some(z);
                go(depth + 1, order, fixed, k, targets, consistent, count, limit);
                k[c] = None;
            }
        }
    }
    let mut count = 0;
    go(0, &order, &fixed, &mut vec![None; n], zeta.carrier_len(), &consistent, &mut count, limit);
    count
}

fn criterion_5() -> Outcome {
    let mut triples: Vec<(PartialAction, PartialAction, Vec<Point>)> = Vec::new();
    for s in corpus(4) {
        for global in global_actions(&s) {
            for (theta, j) in restrictions(&global, 6) {
                if theta.carrier_len() > 0 {
                    triples.push((theta, global.clone(), j));
                }
            }
        }
    }
    for g in groupoids().iter().take(12) {
        for fiber in small_semilattices() {
            let global = copy_action(g, &fiber);
            for (theta, j) in restrictions(&global, 6).into_iter().filter(|(t, _)| t.carrier_len() > 0).take(4) {
                triples.push((theta, global.clone(), j));
            }
        }
    }
    let mut self_maps = 0;
    for (theta, zeta, j) in &triples {
        let g = globalize(theta).map_err(|e| e.to_string())?;
        let k = g.universal_map(zeta, j).map_err(|e| format!("{}: {e}", name(&theta.actor)))?;
        ensure(g.embed.iter().zip(j).all(|(&ix, &jx)| k[ix] == jx), || "k∘i ≠ j".into())?;
        check_equivariant(&g.eta, zeta, &k, true).map_err(|e| format!("k not ordered equivariant: {e}"))?;
        let count = count_mediating(&g, zeta, j, 2);
        ensure(count == 1, || format!("{count} mediating maps for {}", name(&theta.actor)))?;
        // The globalization is itself a target, with k the identity.
        if self_maps < 50 {
            let id = g.universal_map(&g.eta, &g.embed).map_err(|e| e.to_string())?;
            ensure(id.iter().enumerate().all(|(c, &v)| c == v), || "k is not the identity on E".into())?;
            ensure(count_mediating(&g, &g.eta, &g.embed, 2) == 1, || "identity not unique".into())?;
            self_maps += 1;
        }
    }
    ensure(triples.len() >= 50, || format!("only {} triples", triples.len()))?;
    Ok(format!("{} triples, {self_maps} self-maps, each mediating map unique", triples.len()))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut cases: Vec<(PartialAction, Semilatticeoid)> = Vec::new();
    for s in corpus(5) {
        cases.push((munn_action(&s), idempotent_semilatticeoid(&s)));
        if is_e_unitary(&s).is_ok_and(|c| c.e_unitary) {
            let induced = induced_sigma_action(&s, &munn_action(&s)).map_err(|e| e.to_string())?;
            cases.push((induced.action, idempotent_semilatticeoid(&s)));
        }
    }
    for g in groupoids() {
        for fiber in small_semilattices() {
            let copy = copy_action(&g, &fiber);
            let x = Semilatticeoid::from_poset(copy.order.as_ref().unwrap()).unwrap();
            cases.push((copy, x));
        }
        for _ in 0..3 {
            cases.push(groupoid_semilatticeoid_action(&g, &mut r));
        }
    }
    let mut preserved = 0;
    for (action, x) in &cases {
        let p = semidirect_product(action, x).map_err(|e| format!("{}: {e}", name(&action.actor)))?;
        let expected: BTreeSet<usize> =
            p.pairs.iter().enumerate().filter(|(_, &(s, _))| action.actor.is_idempotent(s)).map(|(k, _)| k).collect();
        let found: BTreeSet<usize> = p.product.idempotents().into_iter().collect();
        ensure(found == expected, || format!("E(S⋉X) mismatch for {}", name(&action.actor)))?;
        ensure(p.idempotents_match(), || "idempotents_match disagrees".into())?;
        if is_e_unitary(&action.actor).is_ok_and(|c| c.e_unitary) {
            let kept = check_e_unitary_preservation(&p).map_err(|e| e.to_string())?;
            ensure(kept, || format!("S⋉X not E-unitary for {}", name(&action.actor)))?;
            preserved += 1;
        }
    }
    Ok(format!("{} products, {preserved} with E-unitary actor", cases.len()))
}

fn criterion_7() -> Outcome {
    let mut candidates = corpus(5);
    candidates.extend(groupoids());
    candidates.push(fixtures::semilatticeoid_example().base().clone());
    for p in small_semilattices() {
        candidates.push(Semilatticeoid::from_poset(&p).unwrap().base().clone());
    }
    let mut checked = 0;
    for s in candidates.iter().filter(|s| e_unitary_oracle(s)) {
        let r = ptheorem_isomorphism(s).map_err(|e| format!("{}: {e}", name(s)))?;
        let target = r.semidirect.product.base();
        let idem = s.idempotents();
        let phi: Vec<usize> = s.arrows().map(|a| r.phi.apply(a)).collect();
        for a in s.arrows() {
            let e = idem.binary_search(&s.source_support(a)).unwrap();
            ensure(r.semidirect.pairs[phi[a]] == (r.induced.sigma.class_of(a), e), || "φ(s) ≠ (π(s), s*s)".into())?;
        }
        let image: BTreeSet<usize> = phi.iter().copied().collect();
        ensure(image.len() == s.len() && image.len() == target.len(), || "φ not bijective".into())?;
        for a in s.arrows() {
            for b in s.arrows() {
                let images = target.mul(phi[a], phi[b]);
                ensure(images.is_some() == s.mul(a, b).is_some(), || "φ not strong".into())?;
                if let Some(ab) = s.mul(a, b) {
                    ensure(images == Some(phi[ab]), || "φ not multiplicative".into())?;
                }
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} E-unitary structures"))
}

fn criterion_8() -> Outcome {
    let all = corpus(5);
    for s in &all {
        let m = munn_action(s);
        let idem = s.idempotents();
        ensure(m.global && m.is_ordered(), || "Munn action not global and ordered".into())?;
        m.validate_e().map_err(|e| format!("{}: {e}", name(s)))?;
        m.validate_p().map_err(|e| format!("{}: {e}", name(s)))?;
        for a in s.arrows() {
            ensure(m.domains[a] == m.domains[s.range_support(a)], || "X_s ≠ X_{ss*}".into())?;
            let expected: BTreeSet<Point> = (0..idem.len()).filter(|&k| s.leq(idem[k], s.range_support(a))).collect();
            ensure(m.domains[a] == expected, || "X_s ≠ {e <= ss*}".into())?;
            for (&x, &y) in &m.maps[a] {
                let conj = s.product(s.product(a, idem[x]), s.inv(a));
                ensure(idem[y] == conj, || "θ_s(e) ≠ s e s*".into())?;
            }
        }
    }
    Ok(format!("{} structures", all.len()))
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut cases: Vec<(PartialAction, Semilatticeoid)> = Vec::new();
    for g in groupoids() {
        for _ in 0..6 {
            cases.push(groupoid_semilatticeoid_action(&g, &mut r));
        }
    }
    for s in corpus(5) {
        if is_e_unitary(&s).is_ok_and(|c| c.e_unitary) {
            let induced = induced_sigma_action(&s, &munn_action(&s)).map_err(|e| e.to_string())?;
            cases.push((induced.action, idempotent_semilatticeoid(&s)));
        }
    }
    for (theta, x) in &cases {
        ensure(theta.domains.iter().all(|d| !d.is_empty()), || "empty domain in corpus".into())?;
        let (triple, embed) = mcalister_from_action(theta, x).map_err(|e| format!("{}: {e}", name(&theta.actor)))?;
        triple.validate().map_err(|e| e.to_string())?;
        let (restricted, inclusion) = triple.restricted_action().map_err(|e| e.to_string())?;
        let map: Vec<Point> = embed.iter().map(|c| inclusion.iter().position(|d| d == c).unwrap()).collect();
        check_equivalence(theta, &restricted, &map, true).map_err(|e| format!("not equivalent: {e}"))?;
        triple.p_semigroupoid().map_err(|e| e.to_string())?;
    }
    Ok(format!("{} actions", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("axiom-set equivalence", criterion_1, 60),
        ("sigma agreement", criterion_2, 120),
        ("E-unitary five-way agreement", criterion_3, 60),
        ("globalization contract", criterion_4, 120),
        ("universality", criterion_5, 120),
        ("semidirect product soundness", criterion_6, 60),
        ("P-theorem reproduction", criterion_7, 120),
        ("Munn action validity", criterion_8, 30),
        ("McAlister triple round trip", criterion_9, 60),
    ];
    let mut failed = 0;
    for (k, (label, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(*limit);
        let (status, detail) = match outcome {
            Ok(detail) if elapsed < limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over time limit")),
            Err(e) => ("FAIL", e),
        };
        failed += (status == "FAIL") as usize;
        println!("{status} [{}] {label}: {detail} ({:.2?} < {}s)", k + 1, elapsed, limit.as_secs());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
