//! Finite posets, order ideals, order isomorphisms and semilatticeoids.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::inverse::InverseSemigroupoid;
use crate::semigroupoid::{Arrow, ArrowSpec, FiniteSemigroupoid};

/// A binary relation on `0..n` stored as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, bits: vec![false; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |a, b| a == b)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                bits.push(f(a, b));
            }
        }
        Relation { n, bits }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (0..self.n).map(move |b| (a, b))).filter(|&(a, b)| self.contains(a, b))
    }

    pub fn close_transitively(&mut self) {
        let n = self.n;
        for k in 0..n {
            for a in 0..n {
                if !self.contains(a, k) {
                    continue;
                }
                for b in 0..n {
                    if self.contains(k, b) {
                        self.insert(a, b);
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("pair ({0}, {1}) mentions an element outside the ground set")]
    OutOfRange(usize, usize),
    #[error("{0} <= {1} and {1} <= {0} with {0} != {1}")]
    AntisymmetryFailure(usize, usize),
    #[error("{0} <= {1} <= {2} but {0} <= {2} is missing")]
    TransitivityFailure(usize, usize, usize),
}

/// A finite partial order on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    leq: Relation,
}

impl FinitePoset {
    /// Validates a relation given as `(x, y)` pairs meaning `x <= y`.
    /// Reflexive pairs are implied. With `close` set the transitive closure
    /// is taken first, so only cycles can fail.
    pub fn validate(n: usize, pairs: &[(usize, usize)], close: bool) -> Result<Self, PosetError> {
        let mut leq = Relation::identity(n);
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(PosetError::OutOfRange(x, y));
            }
            leq.insert(x, y);
        }
        if close {
            leq.close_transitively();
        }
        Self::from_relation(leq)
    }

    pub fn from_relation(leq: Relation) -> Result<Self, PosetError> {
        let n = leq.size();
        for a in 0..n {
            for b in (a + 1)..n {
                if leq.contains(a, b) && leq.contains(b, a) {
                    return Err(PosetError::AntisymmetryFailure(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a == b || !leq.contains(a, b) {
                    continue;
                }
                for c in 0..n {
                    if leq.contains(b, c) && !leq.contains(a, c) {
                        return Err(PosetError::TransitivityFailure(a, b, c));
                    }
                }
            }
        }
        let mut leq = leq;
        for a in 0..n {
            leq.insert(a, a);
        }
        Ok(FinitePoset { leq })
    }

    pub fn discrete(n: usize) -> Self {
        FinitePoset { leq: Relation::identity(n) }
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        FinitePoset { leq: Relation::from_fn(n, |a, b| a <= b) }
    }

    pub fn len(&self) -> usize {
        self.leq.size()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(a, b)
    }

    pub fn relation(&self) -> &Relation {
        &self.leq
    }

    /// Non-reflexive `(x, y)` pairs with `x <= y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.leq.pairs().filter(|(a, b)| a != b).collect()
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.strict_pairs()
            .into_iter()
            .filter(|&(a, b)| !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)))
            .collect()
    }

    pub fn down_set(&self, x: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&y| self.leq(y, x)).collect()
    }

    pub fn is_order_ideal(&self, subset: &BTreeSet<usize>) -> bool {
        subset.iter().all(|&y| (0..self.len()).all(|x| !self.leq(x, y) || subset.contains(&x)))
    }

    /// Greatest lower bound by scanning all lower bounds.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&z| self.leq(z, x) && self.leq(z, y)).collect();
        lower.iter().copied().find(|&g| lower.iter().all(|&z| self.leq(z, g)))
    }

    /// The order induced on `elements`, reindexed by position.
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        FinitePoset { leq: Relation::from_fn(elements.len(), |a, b| self.leq(elements[a], elements[b])) }
    }

    /// Connected components of the comparability graph, each sorted, ordered by
    /// least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut component = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            component[start] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..n {
                    if component[y] == usize::MAX && (self.leq(x, y) || self.leq(y, x)) {
                        component[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// True iff `f: P -> Q` is a bijection with `x <= y ⇔ f(x) <= f(y)`.
pub fn check_order_iso(f: &[usize], p: &FinitePoset, q: &FinitePoset) -> bool {
    if f.len() != p.len() || p.len() != q.len() || f.iter().any(|&y| y >= q.len()) {
        return false;
    }
    let image: BTreeSet<usize> = f.iter().copied().collect();
    if image.len() != f.len() {
        return false;
    }
    (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == q.leq(f[x], f[y])))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilatticeoidError {
    #[error("arrow {0} is not idempotent")]
    NonIdempotentArrow(Arrow),
    #[error("the product of {0} and {1} is not their greatest lower bound")]
    ProductNotMeet(Arrow, Arrow),
    #[error("elements {0} and {1} of one component have no meet")]
    MissingMeet(usize, usize),
}

/// An inverse semigroupoid in which every arrow is idempotent; each object's
/// fiber is a meet semilattice under the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilatticeoid {
    base: InverseSemigroupoid,
    fibers: Vec<Vec<Arrow>>,
}

impl Semilatticeoid {
    pub fn validate(base: InverseSemigroupoid) -> Result<Self, SemilatticeoidError> {
        if let Some(s) = base.arrows().find(|&s| !base.is_idempotent(s)) {
            return Err(SemilatticeoidError::NonIdempotentArrow(s));
        }
        let order = base.order();
        for (x, y) in base.base().composable_pairs() {
            if order.meet(x, y) != Some(base.product(x, y)) {
                return Err(SemilatticeoidError::ProductNotMeet(x, y));
            }
        }
        let mut fibers = vec![Vec::new(); base.base().object_count()];
        for s in base.arrows() {
            fibers[base.base().dom(s)].push(s);
        }
        Ok(Semilatticeoid { base, fibers })
    }

    /// The semilatticeoid whose fibers are the given meet semilattices, one
    /// object per component, multiplied by meets.
    pub fn from_semilattices(components: &[FinitePoset]) -> Result<Self, SemilatticeoidError> {
        let components: Vec<&FinitePoset> = components.iter().filter(|p| !p.is_empty()).collect();
        let mut arrows = Vec::new();
        let mut offsets = Vec::new();
        for (u, p) in components.iter().enumerate() {
            offsets.push(arrows.len());
            for _ in 0..p.len() {
                arrows.push(ArrowSpec::new(format!("x{}", arrows.len()), u, u));
            }
        }
        let mut meets = std::collections::BTreeMap::new();
        for (p, &offset) in components.iter().zip(&offsets) {
            for x in 0..p.len() {
                for y in 0..p.len() {
                    let m = p.meet(x, y).ok_or(SemilatticeoidError::MissingMeet(offset + x, offset + y))?;
                    meets.insert((offset + x, offset + y), offset + m);
                }
            }
        }
        let objects = (0..components.len()).map(|u| format!("u{u}")).collect();
        let table = FiniteSemigroupoid::from_fn(objects, arrows, |x, y| meets[&(x, y)])
            .expect("meets of a semilattice form an associative table");
        let base = InverseSemigroupoid::new(table).expect("every element of a semilattice is its own inverse");
        Self::validate(base)
    }

    /// Reads a semilatticeoid off a poset: comparability components become
    /// fibers and each must be a meet semilattice. Arrow `k` is element `k`.
    pub fn from_poset(poset: &FinitePoset) -> Result<Self, SemilatticeoidError> {
        let components = poset.components();
        let mut object_of = vec![0; poset.len()];
        for (u, members) in components.iter().enumerate() {
            for &x in members {
                object_of[x] = u;
            }
        }
        for members in &components {
            for &x in members {
                for &y in members {
                    if poset.meet(x, y).is_none() {
                        return Err(SemilatticeoidError::MissingMeet(x, y));
                    }
                }
            }
        }
        let arrows = (0..poset.len()).map(|x| ArrowSpec::new(format!("x{x}"), object_of[x], object_of[x])).collect();
        let objects = (0..components.len()).map(|u| format!("u{u}")).collect();
        let table = FiniteSemigroupoid::from_fn(objects, arrows, |x, y| poset.meet(x, y).unwrap_or(x))
            .expect("meets of a semilattice form an associative table");
        let base = InverseSemigroupoid::new(table).expect("every element of a semilattice is its own inverse");
        Self::validate(base)
    }

    pub fn base(&self) -> &InverseSemigroupoid {
        &self.base
    }

    pub fn fibers(&self) -> &[Vec<Arrow>] {
        &self.fibers
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.len() == 0
    }

    pub fn order(&self) -> &FinitePoset {
        self.base.order()
    }

    pub fn object_of(&self, x: Arrow) -> usize {
        self.base.base().dom(x)
    }

    /// `x·y` when both lie in the same fiber.
    pub fn meet(&self, x: Arrow, y: Arrow) -> Option<Arrow> {
        self.base.base().mul(x, y)
    }
}
