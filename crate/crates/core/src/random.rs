//! Seeded generators of posets and (partial) actions for cross-validation.
//!
//! Families produced here are deliberately a mix of valid actions,
//! near-misses obtained by small mutations, and unstructured candidates, so
//! that validators can be compared on both verdicts.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{PartialAction, Point};
use crate::inverse::InverseSemigroupoid;
use crate::poset::{FinitePoset, Semilatticeoid};
use crate::ptheorem::{munn_action, wagner_preston_action};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random order on `0..m` generated by edges `i < j` with probability
/// `density`, closed transitively.
pub fn random_poset(m: usize, density: f64, rng: &mut impl Rng) -> FinitePoset {
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::validate(m, &pairs, true).expect("edges go upward, so no cycles")
}

/// All order ideals of a poset with at most 16 elements, by bitmask.
pub fn order_ideals(p: &FinitePoset) -> Vec<BTreeSet<Point>> {
    assert!(p.len() <= 16, "too many subsets");
    (0u32..1 << p.len())
        .map(|mask| (0..p.len()).filter(|&x| mask >> x & 1 == 1).collect::<BTreeSet<_>>())
        .filter(|set| p.is_order_ideal(set))
        .collect()
}

pub fn labels(m: usize) -> Vec<String> {
    (0..m).map(|x| format!("p{x}")).collect()
}

/// Number of candidate families on `m` points, saturating.
fn family_count(n: usize, m: usize) -> u128 {
    // Upper bound: 2^m domains per arrow times m^m maps per arrow.
    let per_arrow = (1u128 << m) * (m.max(1) as u128).pow(m as u32);
    per_arrow.saturating_pow(n as u32)
}

/// Every family `(X_s, θ_s)` on `m` points with `θ_s` an arbitrary map
/// `X_{s*} → X_s`, or `None` when there would be more than `cap`.
pub fn exhaustive_families(
    actor: &InverseSemigroupoid,
    m: usize,
    order: Option<FinitePoset>,
    cap: usize,
) -> Option<Vec<PartialAction>> {
    if family_count(actor.len(), m) > cap as u128 {
        return None;
    }
    let n = actor.len();
    let subsets: Vec<BTreeSet<Point>> =
        (0u32..1 << m).map(|mask| (0..m).filter(|&x| mask >> x & 1 == 1).collect()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let domains: Vec<BTreeSet<Point>> = choice.iter().map(|&c| subsets[c].clone()).collect();
        all_maps(actor, &domains, 0, &mut Vec::new(), &mut |maps| {
            out.push(PartialAction {
                actor: actor.clone(),
                labels: labels(m),
                order: order.clone(),
                domains: domains.clone(),
                maps: maps.to_vec(),
                global: false,
            });
        });
        let mut i = 0;
        while i < n {
            choice[i] += 1;
            if choice[i] < subsets.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Some(out)
}

fn all_maps(
    actor: &InverseSemigroupoid,
    domains: &[BTreeSet<Point>],
    s: usize,
    cur: &mut Vec<BTreeMap<Point, Point>>,
    emit: &mut impl FnMut(&[BTreeMap<Point, Point>]),
) {
    if s == actor.len() {
        emit(cur);
        return;
    }
    let from: Vec<Point> = domains[actor.inv(s)].iter().copied().collect();
    let to: Vec<Point> = domains[s].iter().copied().collect();
    if to.is_empty() && !from.is_empty() {
        return;
    }
    let total = to.len().pow(from.len() as u32);
    for code in 0..total {
        let mut rest = code;
        let mut map = BTreeMap::new();
        for &x in &from {
            map.insert(x, to[rest % to.len()]);
            rest /= to.len();
        }
        cur.push(map);
        all_maps(actor, domains, s + 1, cur, emit);
        cur.pop();
    }
}

/// A random family: random domains, and maps that are bijections inverse
/// to their partner whenever sizes allow, arbitrary otherwise.
pub fn random_family(
    actor: &InverseSemigroupoid,
    m: usize,
    order: Option<FinitePoset>,
    rng: &mut impl Rng,
) -> PartialAction {
    let n = actor.len();
    let domains: Vec<BTreeSet<Point>> = (0..n).map(|_| (0..m).filter(|_| rng.gen_bool(0.6)).collect()).collect();
    let mut maps: Vec<Option<BTreeMap<Point, Point>>> = vec![None; n];
    for s in 0..n {
        if maps[s].is_some() {
            continue;
        }
        let s_star = actor.inv(s);
        let from: Vec<Point> = domains[s_star].iter().copied().collect();
        let mut to: Vec<Point> = domains[s].iter().copied().collect();
        if from.len() == to.len() && rng.gen_bool(0.8) {
            to.shuffle(rng);
            let map: BTreeMap<Point, Point> = from.iter().copied().zip(to.iter().copied()).collect();
            let inverse = map.iter().map(|(&x, &y)| (y, x)).collect();
            maps[s_star] = Some(inverse);
            maps[s] = Some(map);
        } else if !to.is_empty() || from.is_empty() {
            maps[s] = Some(from.iter().map(|&x| (x, *to.choose(rng).expect("nonempty"))).collect());
        } else {
            maps[s] = Some(BTreeMap::new());
        }
    }
    PartialAction {
        actor: actor.clone(),
        labels: labels(m),
        order,
        domains,
        maps: maps.into_iter().map(|m| m.expect("filled")).collect(),
        global: rng.gen_bool(0.3),
    }
}

/// A small perturbation that keeps each `θ_s` a map `X_{s*} → X_s`.
pub fn mutate(action: &PartialAction, rng: &mut impl Rng) -> PartialAction {
    let mut out = action.clone();
    let n = out.actor.len();
    if n == 0 || out.carrier_len() == 0 {
        return out;
    }
    let s = rng.gen_range(0..n);
    let s_star = out.actor.inv(s);
    match rng.gen_range(0..4) {
        0 => out.global = !out.global,
        1 => {
            // Drop a point from X_s, then repair the map shapes.
            if let Some(&x) = out.domains[s].iter().collect::<Vec<_>>().choose(rng) {
                let x = *x;
                out.domains[s].remove(&x);
                repair(&mut out);
            }
        }
        2 => {
            // Redirect one value of θ_s inside X_s.
            let range: Vec<Point> = out.domains[s].iter().copied().collect();
            let keys: Vec<Point> = out.maps[s].keys().copied().collect();
            if let (Some(&k), Some(&v)) = (keys.choose(rng), range.choose(rng)) {
                out.maps[s].insert(k, v);
            }
        }
        _ => {
            // Grow X_s by a point that is a fixed point of θ_s and θ_{s*}.
            let x = rng.gen_range(0..out.carrier_len());
            if !out.domains[s].contains(&x) && !out.domains[s_star].contains(&x) {
                out.domains[s].insert(x);
                out.domains[s_star].insert(x);
                out.maps[s].insert(x, x);
                out.maps[s_star].insert(x, x);
            }
        }
    }
    out
}

/// Restores `θ_s: X_{s*} → X_s` after domains were edited: empties
/// `X_{s*}` when `X_s` is empty, drops stray keys and sends missing or
/// stray values to the least point of `X_s`.
fn repair(action: &mut PartialAction) {
    let a = action.actor.clone();
    loop {
        let mut changed = false;
        for t in a.arrows() {
            if action.domains[t].is_empty() && !action.domains[a.inv(t)].is_empty() {
                action.domains[a.inv(t)].clear();
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for t in a.arrows() {
        let keys = action.domains[a.inv(t)].clone();
        let range = &action.domains[t];
        let fallback = range.iter().next().copied();
        let map = &mut action.maps[t];
        map.retain(|k, _| keys.contains(k));
        for &k in &keys {
            let v = map.get(&k).copied().filter(|v| range.contains(v));
            map.insert(k, v.or(fallback).expect("nonempty range"));
        }
    }
}

/// The ordered global actions used as sources of restrictions: Munn and
/// Wagner–Preston.
pub fn global_actions(actor: &InverseSemigroupoid) -> Vec<PartialAction> {
    vec![munn_action(actor), wagner_preston_action(actor)]
}

/// All order ideals with at most `max_points` elements, grown one minimal
/// element at a time.
pub fn small_order_ideals(p: &FinitePoset, max_points: usize) -> Vec<BTreeSet<Point>> {
    let mut seen = BTreeSet::from([BTreeSet::new()]);
    let mut frontier = vec![BTreeSet::new()];
    while let Some(ideal) = frontier.pop() {
        if ideal.len() == max_points {
            continue;
        }
        for x in (0..p.len()).filter(|x| !ideal.contains(x)) {
            if (0..p.len()).all(|y| y == x || !p.leq(y, x) || ideal.contains(&y)) {
                let mut next = ideal.clone();
                next.insert(x);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Restrictions of a global action to all of its order ideals with at most
/// `max_points` points, each with its inclusion.
pub fn restrictions(global: &PartialAction, max_points: usize) -> Vec<(PartialAction, Vec<Point>)> {
    small_order_ideals(&global.order_or_discrete(), max_points)
        .into_iter()
        .map(|ideal| global.restrict_global(&ideal).expect("ideal of a global action"))
        .collect()
}

/// Fixed meet semilattices used as fibers.
pub fn small_semilattices() -> Vec<FinitePoset> {
    vec![
        FinitePoset::chain(1),
        FinitePoset::chain(2),
        FinitePoset::chain(3),
        FinitePoset::validate(3, &[(0, 1), (0, 2)], true).expect("V"),
        FinitePoset::validate(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], true).expect("diamond"),
    ]
}

/// The global action of a groupoid on one copy of `fiber` per object,
/// arrows moving copies rigidly. Point `(u, p)` is `u * |fiber| + p`.
pub fn copy_action(groupoid: &InverseSemigroupoid, fiber: &FinitePoset) -> PartialAction {
    let k = fiber.len();
    let objects = groupoid.base().object_count();
    let order = FinitePoset::from_relation(crate::poset::Relation::from_fn(objects * k, |a, b| {
        a / k == b / k && fiber.leq(a % k, b % k)
    }))
    .expect("disjoint copies of a poset");
    let labels = (0..objects * k).map(|a| format!("{}:{}", groupoid.base().object_name(a / k), a % k)).collect();
    PartialAction::from_fn(
        groupoid.clone(),
        labels,
        Some(order),
        true,
        |g| (0..k).map(|p| groupoid.cod(g) * k + p).collect(),
        |g, x| groupoid.cod(g) * k + x % k,
    )
}

/// A partial action of `groupoid` on a semilatticeoid with nonempty
/// domains: restrict a copy action to per-object ideals containing the
/// bottom of the fiber.
pub fn groupoid_semilatticeoid_action(
    groupoid: &InverseSemigroupoid,
    rng: &mut impl Rng,
) -> (PartialAction, Semilatticeoid) {
    let fibers = small_semilattices();
    let fiber = fibers.choose(rng).expect("nonempty list").clone();
    let global = copy_action(groupoid, &fiber);
    let k = fiber.len();
    let with_bottom: Vec<BTreeSet<Point>> = order_ideals(&fiber).into_iter().filter(|i| i.contains(&0)).collect();
    let mut ideal = BTreeSet::new();
    for u in 0..groupoid.base().object_count() {
        let chosen = with_bottom.choose(rng).expect("the principal ideal of the bottom");
        ideal.extend(chosen.iter().map(|&p| u * k + p));
    }
    let (restricted, _) = global.restrict_global(&ideal).expect("union of ideals");
    let x =
        Semilatticeoid::from_poset(restricted.order.as_ref().expect("ordered")).expect("ideals of meet semilattices");
    (restricted, x)
}
