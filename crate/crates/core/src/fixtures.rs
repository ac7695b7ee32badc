//! Small named structures and the S_A / J(π) generators.

use thiserror::Error;

use crate::inverse::InverseSemigroupoid;
use crate::poset::{FinitePoset, Semilatticeoid};
use crate::semigroupoid::{ArrowSpec, FiniteSemigroupoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("expected a semigroupoid with exactly one object, found {0}")]
    NotOneObject(usize),
    #[error("index set must be nonempty")]
    EmptyIndexSet,
    #[error("no point maps to {0}")]
    NotSurjective(usize),
    #[error("point {point} maps to {value}, outside 0..{count}")]
    OutOfRange { point: usize, value: usize, count: usize },
}

fn one_object(arrows: &[&str], mul: impl Fn(usize, usize) -> usize) -> InverseSemigroupoid {
    let specs = arrows.iter().map(|a| ArrowSpec::new(*a, 0, 0)).collect();
    let base = FiniteSemigroupoid::from_fn(vec!["*".into()], specs, mul).expect("fixture table is valid");
    InverseSemigroupoid::new(base).expect("fixture is inverse")
}

pub fn trivial_monoid() -> InverseSemigroupoid {
    one_object(&["1"], |_, _| 0)
}

/// The two-element chain `f < e` as a monoid: arrow 0 is `e`, arrow 1 is `f`.
pub fn chain2() -> InverseSemigroupoid {
    one_object(&["e", "f"], |s, t| s.max(t))
}

/// The five-element Brandt semigroup on the matrix units `e_ij`, with
/// arrows `0`, `a = e_12`, `a* = e_21`, `aa* = e_11`, `a*a = e_22` in that order.
pub fn brandt_b2() -> InverseSemigroupoid {
    const UNITS: [Option<(u8, u8)>; 5] = [None, Some((1, 2)), Some((2, 1)), Some((1, 1)), Some((2, 2))];
    one_object(&["0", "a", "a*", "aa*", "a*a"], |s, t| match (UNITS[s], UNITS[t]) {
        (Some((i, j)), Some((k, l))) if j == k => UNITS.iter().position(|&u| u == Some((i, l))).unwrap(),
        _ => 0,
    })
}

/// The cyclic group of order `n` on one object, arrow `k` being `g^k`.
pub fn cyclic_group(n: usize) -> InverseSemigroupoid {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|k| format!("g{k}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    one_object(&refs, |s, t| (s + t) % n)
}

/// The pair groupoid on `k` objects: one arrow `(i, j)` from `j` to `i` for
/// every pair, indexed `i * k + j`.
pub fn pair_groupoid(k: usize) -> InverseSemigroupoid {
    assert!(k >= 1);
    let objects = (0..k).map(|u| format!("u{u}")).collect();
    let arrows = (0..k * k).map(|a| ArrowSpec::new(format!("({},{})", a / k, a % k), a % k, a / k)).collect();
    let base = FiniteSemigroupoid::from_fn(objects, arrows, |s, t| (s / k) * k + t % k).expect("pair groupoid");
    InverseSemigroupoid::new(base).expect("groupoids are inverse")
}

/// `k` objects, each carrying only its identity.
pub fn discrete_groupoid(k: usize) -> InverseSemigroupoid {
    assert!(k >= 1);
    let objects = (0..k).map(|u| format!("u{u}")).collect();
    let arrows = (0..k).map(|u| ArrowSpec::new(format!("1_{u}"), u, u)).collect();
    let base = FiniteSemigroupoid::from_fn(objects, arrows, |s, _| s).expect("discrete groupoid");
    InverseSemigroupoid::new(base).expect("groupoids are inverse")
}

/// `S_A = A × S × A` with arrows `(v, s, u)` from `u` to `v`, indexed
/// lexicographically by `(v, s, u)`.
pub fn gen_sa(s: &InverseSemigroupoid, a: usize) -> Result<InverseSemigroupoid, FixtureError> {
    if s.base().object_count() != 1 {
        return Err(FixtureError::NotOneObject(s.base().object_count()));
    }
    if a == 0 {
        return Err(FixtureError::EmptyIndexSet);
    }
    let n = s.len();
    let index = |v: usize, x: usize, u: usize| (v * n + x) * a + u;
    let mut arrows = Vec::with_capacity(a * n * a);
    for v in 0..a {
        for x in 0..n {
            for u in 0..a {
                arrows.push(ArrowSpec::new(format!("({v},{},{u})", s.base().arrow_name(x)), u, v));
            }
        }
    }
    let objects = (0..a).map(|u| format!("a{u}")).collect();
    let base = FiniteSemigroupoid::from_fn(objects, arrows, |p, q| {
        let (w, t) = (p / (n * a), (p / a) % n);
        let (x, u) = ((q / a) % n, q % a);
        index(w, s.product(t, x), u)
    })
    .expect("S_A is a semigroupoid");
    Ok(InverseSemigroupoid::new(base).expect("S_A is inverse"))
}

/// All partial injections from `from` into `to`, as lists of `(x, f(x))`
/// sorted by `x`, in a fixed recursive order starting with the empty map.
fn partial_injections(from: &[usize], to: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        from: &[usize],
        to: &[usize],
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some((&x, rest)) = from.split_first() else {
            out.push(cur.clone());
            return;
        };
        go(rest, to, used, cur, out);
        for (k, &y) in to.iter().enumerate() {
            if !used[k] {
                used[k] = true;
                cur.push((x, y));
                go(rest, to, used, cur, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(from, to, &mut vec![false; to.len()], &mut Vec::new(), &mut out);
    out
}

/// `J(π)` for `π: X → A` given as `pi[x]`: arrows `(v, f, u)` where `f` is a
/// partial bijection of `X` with domain in `π⁻¹(u)` and range in `π⁻¹(v)`.
/// Arrows are grouped by `(v, u)` lexicographically.
pub fn gen_jpi(pi: &[usize], a: usize) -> Result<InverseSemigroupoid, FixtureError> {
    if a == 0 {
        return Err(FixtureError::EmptyIndexSet);
    }
    if let Some((point, &value)) = pi.iter().enumerate().find(|&(_, &v)| v >= a) {
        return Err(FixtureError::OutOfRange { point, value, count: a });
    }
    let fibers: Vec<Vec<usize>> = (0..a).map(|u| (0..pi.len()).filter(|&x| pi[x] == u).collect()).collect();
    if let Some(u) = fibers.iter().position(Vec::is_empty) {
        return Err(FixtureError::NotSurjective(u));
    }
    let mut keys: Vec<(usize, Vec<(usize, usize)>, usize)> = Vec::new();
    for v in 0..a {
        for u in 0..a {
            for f in partial_injections(&fibers[u], &fibers[v]) {
                keys.push((v, f, u));
            }
        }
    }
    let arrows = keys
        .iter()
        .map(|(v, f, u)| {
            let body: Vec<String> = f.iter().map(|(x, y)| format!("{x}>{y}")).collect();
            ArrowSpec::new(format!("({v},[{}],{u})", body.join(" ")), *u, *v)
        })
        .collect();
    let objects = (0..a).map(|u| format!("a{u}")).collect();
    let base = FiniteSemigroupoid::from_fn(objects, arrows, |p, q| {
        let (w, g, _) = &keys[p];
        let (_, f, u) = &keys[q];
        let gf: Vec<(usize, usize)> =
            f.iter().filter_map(|&(x, y)| g.iter().find(|&&(y2, _)| y2 == y).map(|&(_, z)| (x, z))).collect();
        keys.iter().position(|(v2, h, u2)| v2 == w && u2 == u && *h == gf).expect("J(π) is closed under products")
    })
    .expect("J(π) is a semigroupoid");
    Ok(InverseSemigroupoid::new(base).expect("J(π) is inverse"))
}

/// A semilatticeoid with two fibers: a three-element chain and the
/// four-element diamond.
pub fn semilatticeoid_example() -> Semilatticeoid {
    let diamond = FinitePoset::validate(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], true).expect("diamond");
    Semilatticeoid::from_semilattices(&[FinitePoset::chain(3), diamond]).expect("meet semilattices")
}

/// Every fixed structure used by the test suites, including S_A and J(π)
/// instances.
pub fn all_inverse_fixtures() -> Vec<InverseSemigroupoid> {
    let mut out = vec![
        trivial_monoid(),
        chain2(),
        brandt_b2(),
        cyclic_group(2),
        cyclic_group(3),
        pair_groupoid(2),
        pair_groupoid(3),
        discrete_groupoid(2),
        semilatticeoid_example().base().clone(),
    ];
    out.push(gen_sa(&chain2(), 2).unwrap());
    out.push(gen_sa(&cyclic_group(2), 2).unwrap());
    out.push(gen_sa(&brandt_b2(), 1).unwrap());
    out.push(gen_jpi(&[0], 1).unwrap());
    out.push(gen_jpi(&[0, 0], 1).unwrap());
    out.push(gen_jpi(&[0, 1], 2).unwrap());
    out
}

/// Named lookup used by the CLI.
pub fn by_name(name: &str) -> Option<InverseSemigroupoid> {
    Some(match name {
        "trivial" => trivial_monoid(),
        "chain2" => chain2(),
        "b2" => brandt_b2(),
        "z2" => cyclic_group(2),
        "z3" => cyclic_group(3),
        "pair2" => pair_groupoid(2),
        "pair3" => pair_groupoid(3),
        "discrete2" => discrete_groupoid(2),
        "semilatticeoid" => semilatticeoid_example().base().clone(),
        "sa-chain2" => gen_sa(&chain2(), 2).ok()?,
        "jpi-2" => gen_jpi(&[0, 0], 1).ok()?,
        _ => return None,
    })
}

pub const NAMES: [&str; 11] =
    ["trivial", "chain2", "b2", "z2", "z3", "pair2", "pair3", "discrete2", "semilatticeoid", "sa-chain2", "jpi-2"];
