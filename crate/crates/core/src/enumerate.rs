//! Exhaustive enumeration of small inverse semigroupoids up to isomorphism.
//!
//! Graph shapes are fixed first (every object carries a loop and arrows
//! `u → v` come in the same number as `v → u`), then the multiplication
//! table is filled cell by cell with associativity checked as soon as the
//! four products of a triple are known. Complete tables are promoted to
//! inverse semigroupoids and deduplicated by a canonical form taken over all
//! arrow relabelings.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::inverse::InverseSemigroupoid;
use crate::semigroupoid::{ArrowSpec, FiniteSemigroupoid, RawSemigroupoid};

/// Largest arrow count accepted by [`enumerate_inverse_semigroupoids`].
pub const HARD_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("requested {requested} arrows, the cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    n: usize,
    cells: Vec<(usize, usize)>,
    candidates: Vec<Vec<usize>>,
    table: Vec<usize>,
    out: &'a mut Vec<Vec<usize>>,
}

impl Search<'_> {
    fn get(&self, a: usize, b: usize) -> usize {
        if a == UNSET || b == UNSET {
            UNSET
        } else {
            self.table[a * self.n + b]
        }
    }

    /// Checks every associativity triple whose last missing product is the
    /// cell `(a, b)`.
    fn consistent(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        let c = self.get(a, b);
        for t in 0..n {
            let bt = self.get(b, t);
            let (lhs, rhs) = (self.get(c, t), self.get(a, bt));
            if lhs != UNSET && rhs != UNSET && lhs != rhs {
                return false;
            }
        }
        for r in 0..n {
            let ra = self.get(r, a);
            let (lhs, rhs) = (self.get(ra, b), self.get(r, c));
            if lhs != UNSET && rhs != UNSET && lhs != rhs {
                return false;
            }
        }
        for r in 0..n {
            for s in 0..n {
                if self.get(r, s) == a {
                    let (lhs, rhs) = (c, self.get(r, self.get(s, b)));
                    if rhs != UNSET && lhs != rhs {
                        return false;
                    }
                }
                if self.get(r, s) == b {
                    let (lhs, rhs) = (self.get(self.get(a, r), s), c);
                    if lhs != UNSET && lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.cells.len() {
            self.out.push(self.table.clone());
            return;
        }
        let (a, b) = self.cells[k];
        for i in 0..self.candidates[k].len() {
            let c = self.candidates[k][i];
            self.table[a * self.n + b] = c;
            if self.consistent(a, b) {
                self.run(k + 1);
            }
        }
        self.table[a * self.n + b] = UNSET;
    }
}

/// All associative tables on a fixed graph, as row-major vectors with
/// `usize::MAX` on non-composable cells.
fn associative_tables(dom: &[usize], cod: &[usize]) -> Vec<Vec<usize>> {
    let n = dom.len();
    let mut cells = Vec::new();
    let mut candidates = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if dom[a] == cod[b] {
                cells.push((a, b));
                candidates.push((0..n).filter(|&c| dom[c] == dom[b] && cod[c] == cod[a]).collect());
            }
        }
    }
    let mut out = Vec::new();
    if candidates.iter().any(Vec::is_empty) {
        return out;
    }
    let mut search = Search { n, cells, candidates, table: vec![UNSET; n * n], out: &mut out };
    search.run(0);
    out
}

/// Graph shapes on `n` arrows and `k` objects: arrows sorted by
/// `(cod, dom)`, every object with a loop, and symmetric arrow counts.
fn shapes(n: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn go(n: usize, k: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for code in min..k * k {
            cur.push(code);
            go(n, k, code, cur, out);
            cur.pop();
        }
    }
    let mut codes = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut codes);
    codes
        .into_iter()
        .filter(|codes| {
            let count = |u: usize, v: usize| codes.iter().filter(|&&c| c == u * k + v).count();
            (0..k).all(|u| count(u, u) > 0) && (0..k).all(|u| (0..k).all(|v| count(u, v) == count(v, u)))
        })
        .map(|codes| {
            let cod = codes.iter().map(|c| c / k).collect();
            let dom = codes.iter().map(|c| c % k).collect();
            (dom, cod)
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Encoding `[n, k, (dom, cod) per arrow..., table...]` after relabeling
/// arrow `perm[i]` as `i` and objects by first appearance.
fn encode(dom: &[usize], cod: &[usize], table: &[usize], perm: &[usize], k: usize) -> Vec<u8> {
    let n = dom.len();
    let mut new_of = vec![0; n];
    for (i, &old) in perm.iter().enumerate() {
        new_of[old] = i;
    }
    let mut object = vec![UNSET; k];
    let mut next = 0;
    let mut out = Vec::with_capacity(2 + 2 * n + n * n);
    out.push(n as u8);
    out.push(k as u8);
    for &old in perm {
        for u in [dom[old], cod[old]] {
            if object[u] == UNSET {
                object[u] = next;
                next += 1;
            }
            out.push(object[u] as u8);
        }
    }
    for &a in perm {
        for &b in perm {
            let v = table[a * n + b];
            out.push(if v == UNSET { u8::MAX } else { new_of[v] as u8 });
        }
    }
    out
}

/// The least encoding over all arrow relabelings.
pub fn canonical_form(s: &FiniteSemigroupoid) -> Vec<u8> {
    let n = s.len();
    let dom: Vec<usize> = s.arrows().map(|a| s.dom(a)).collect();
    let cod: Vec<usize> = s.arrows().map(|a| s.cod(a)).collect();
    let table: Vec<usize> = (0..n * n).map(|i| s.mul(i / n, i % n).unwrap_or(UNSET)).collect();
    permutations(n).iter().map(|p| encode(&dom, &cod, &table, p, s.object_count())).min().unwrap_or_default()
}

fn decode(code: &[u8]) -> FiniteSemigroupoid {
    let (n, k) = (code[0] as usize, code[1] as usize);
    let arrows =
        (0..n).map(|i| ArrowSpec::new(format!("s{i}"), code[2 + 2 * i] as usize, code[3 + 2 * i] as usize)).collect();
    let base = 2 + 2 * n;
    let mut products = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let v = code[base + a * n + b];
            if v != u8::MAX {
                products.push((a, b, v as usize));
            }
        }
    }
    let objects = (0..k).map(|u| format!("u{u}")).collect();
    FiniteSemigroupoid::validate(RawSemigroupoid { objects, arrows, products }).expect("decoded canonical table")
}

/// Every inverse semigroupoid with at most `max_arrows` arrows and at most
/// `max_objects` objects, one per isomorphism class, ordered by arrow count
/// and then canonical form. Arrows are named `s0, s1, ...`.
pub fn enumerate_inverse_semigroupoids(
    max_arrows: usize,
    max_objects: usize,
) -> Result<Vec<InverseSemigroupoid>, EnumerateError> {
    if max_arrows > HARD_CAP {
        return Err(EnumerateError::CapExceeded { requested: max_arrows, cap: HARD_CAP });
    }
    let mut found: BTreeMap<Vec<u8>, InverseSemigroupoid> = BTreeMap::new();
    for n in 1..=max_arrows {
        for k in 1..=max_objects.min(n) {
            let perms = permutations(n);
            for (dom, cod) in shapes(n, k) {
                for table in associative_tables(&dom, &cod) {
                    let mut products = Vec::new();
                    for a in 0..n {
                        for b in 0..n {
                            if table[a * n + b] != UNSET {
                                products.push((a, b, table[a * n + b]));
                            }
                        }
                    }
                    let objects = (0..k).map(|u| format!("u{u}")).collect();
                    let arrows = (0..n).map(|i| ArrowSpec::new(format!("s{i}"), dom[i], cod[i])).collect();
                    let Ok(base) = FiniteSemigroupoid::validate(RawSemigroupoid { objects, arrows, products }) else {
                        continue;
                    };
                    if InverseSemigroupoid::new(base).is_err() {
                        continue;
                    }
                    let code = perms.iter().map(|p| encode(&dom, &cod, &table, p, k)).min().expect("n >= 1");
                    if let std::collections::btree_map::Entry::Vacant(slot) = found.entry(code) {
                        let canonical =
                            InverseSemigroupoid::new(decode(slot.key())).expect("isomorphic to an inverse table");
                        slot.insert(canonical);
                    }
                }
            }
        }
    }
    Ok(found.into_values().collect())
}
