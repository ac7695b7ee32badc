//! The universal globalization of an (ordered) partial action.
//!
//! `E` is the quotient of `D = {(s, x) : x ∈ X_{s*s}}` by the equivalence
//! generated by
//!
//! * (R1) `(s, x) ~ (t, y)` when `c(t) = c(s)`, `x ∈ X_{s*t}` and
//!   `θ_{t*s}(x) = y`, and
//! * (R2) `(e, x) ~ (f, x)` for idempotents `e`, `f`.
//!
//! R1 is applied in both orientations; union-find supplies transitivity.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::action::{check_equivalence, check_equivariant, ActionError, EquivarianceError, PartialAction, Point};
use crate::poset::{FinitePoset, Relation};
use crate::semigroupoid::Arrow;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlobalizationError {
    #[error("input is not a partial action: {0}")]
    InvalidInput(ActionError),
    #[error("construction invariant violated: {0}")]
    InternalInconsistency(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniversalError {
    #[error("target is not a valid action: {0}")]
    InvalidTarget(ActionError),
    #[error("target action is not global")]
    NotGlobal,
    #[error("target actor differs from the input actor")]
    ActorMismatch,
    #[error("map into the target is not equivariant: {0}")]
    InvalidMap(EquivarianceError),
    #[error("representatives of class {0} have different images")]
    WellDefinednessFailure(usize),
    #[error("mediating map fails its contract: {0}")]
    InternalInconsistency(String),
}

/// A violated item of the technical lemma on `≈`, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaViolation {
    /// `(s, x) ≈ (s, y)` with `x ≠ y`.
    SameArrow { arrow: Arrow, x: Point, y: Point },
    /// `(s, x) ≈ (t, y)` and `x' <= x` without a matching `y' <= y`.
    Transport { from: (Arrow, Point), to: (Arrow, Point), lower: Point },
    /// A representative of the upper class has no lower partner.
    Representative { lower: usize, upper_rep: (Arrow, Point) },
    /// The canonical-representative order differs from the defining one.
    OrderMismatch { lower: usize, upper: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalizationResult {
    pub input: PartialAction,
    /// `D`, sorted lexicographically.
    pub pairs: Vec<(Arrow, Point)>,
    pub class_of_pair: Vec<usize>,
    /// Members of each class as indices into `pairs`; classes are numbered by
    /// their least member.
    pub classes: Vec<Vec<usize>>,
    /// The global action on `E`, ordered iff the input is.
    pub eta: PartialAction,
    /// `i: X → E`.
    pub embed: Vec<usize>,
}

impl GlobalizationResult {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The canonical (least) representative of class `c`.
    pub fn representative(&self, c: usize) -> (Arrow, Point) {
        self.pairs[self.classes[c][0]]
    }

    pub fn members(&self, c: usize) -> Vec<(Arrow, Point)> {
        self.classes[c].iter().map(|&k| self.pairs[k]).collect()
    }

    fn pair_index(&self) -> HashMap<(Arrow, Point), usize> {
        self.pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect()
    }

    /// `[s, x] <= [t, y]` read off the definition: some `(r, y') ≈ (t, y)`
    /// and `x' <= y'` with `(r, x') ≈ (s, x)`.
    pub fn class_order_by_definition(&self) -> Relation {
        let index = self.pair_index();
        let mut rel = Relation::identity(self.class_count());
        for &(r, y) in &self.pairs {
            for x in 0..self.input.carrier_len() {
                if !self.input.leq(x, y) {
                    continue;
                }
                if let Some(&lower) = index.get(&(r, x)) {
                    rel.insert(self.class_of_pair[lower], self.class_of_pair[index[&(r, y)]]);
                }
            }
        }
        rel
    }

    /// Exhaustive check of the three items of the technical lemma, plus
    /// agreement of the two order computations.
    pub fn check_lemma_tec(&self) -> Vec<LemmaViolation> {
        let mut out = Vec::new();
        let index = self.pair_index();
        let input = &self.input;
        for class in &self.classes {
            for &a in class {
                for &b in class {
                    let ((s, x), (t, y)) = (self.pairs[a], self.pairs[b]);
                    if s == t && x < y {
                        out.push(LemmaViolation::SameArrow { arrow: s, x, y });
                    }
                    for lower in 0..input.carrier_len() {
                        if !input.leq(lower, x) {
                            continue;
                        }
                        let found = index.get(&(s, lower)).is_some_and(|&k| {
                            (0..input.carrier_len()).any(|y2| {
                                input.leq(y2, y)
                                    && index
                                        .get(&(t, y2))
                                        .is_some_and(|&m| self.class_of_pair[m] == self.class_of_pair[k])
                            })
                        });
                        if !found {
                            out.push(LemmaViolation::Transport { from: (s, x), to: (t, y), lower });
                        }
                    }
                }
            }
        }
        let definition = self.class_order_by_definition();
        for (lower, upper) in definition.pairs() {
            for &m in &self.classes[upper] {
                let (p, z) = self.pairs[m];
                let found = (0..input.carrier_len())
                    .any(|z2| input.leq(z2, z) && index.get(&(p, z2)).is_some_and(|&k| self.class_of_pair[k] == lower));
                if !found {
                    out.push(LemmaViolation::Representative { lower, upper_rep: (p, z) });
                }
            }
        }
        if let Some(order) = &self.eta.order {
            for a in 0..self.class_count() {
                for b in 0..self.class_count() {
                    if order.leq(a, b) != definition.contains(a, b) {
                        out.push(LemmaViolation::OrderMismatch { lower: a, upper: b });
                    }
                }
            }
        }
        out
    }

    /// Checks the globalization contract: η global under both axiom sets,
    /// `i` injective with `i(X)` an ideal, the restriction of η to `i(X)`
    /// (ordered) equivalent to the input via `i`, `orb(i(X)) = E`, and the
    /// technical lemma.
    pub fn verify_contract(&self) -> Result<(), GlobalizationError> {
        let fail = |msg: String| Err(GlobalizationError::InternalInconsistency(msg));
        if let Err(e) = self.eta.validate_e() {
            return fail(format!("η fails the E axioms: {e}"));
        }
        if let Err(e) = self.eta.validate_p() {
            return fail(format!("η fails the P axioms: {e}"));
        }
        let image: BTreeSet<usize> = self.embed.iter().copied().collect();
        if image.len() != self.embed.len() {
            return fail("i is not injective".into());
        }
        if let Err(e) = check_equivariant(&self.input, &self.eta, &self.embed, self.input.is_ordered()) {
            return fail(format!("i is not equivariant: {e}"));
        }
        let (restricted, inclusion) = match self.eta.restrict_global(&image) {
            Ok(r) => r,
            Err(e) => return fail(format!("i(X) cannot be restricted to: {e}")),
        };
        let to_restricted: Vec<Point> =
            self.embed.iter().map(|c| inclusion.iter().position(|d| d == c).expect("in image")).collect();
        if let Err(e) = check_equivalence(&self.input, &restricted, &to_restricted, self.input.is_ordered()) {
            return fail(format!("restriction to i(X) is not equivalent to the input: {e}"));
        }
        if self.eta.orbit(&image).len() != self.class_count() {
            return fail("orbit of i(X) is not all of E".into());
        }
        let violations = self.check_lemma_tec();
        if !violations.is_empty() {
            return fail(format!("technical lemma fails: {:?}", violations[0]));
        }
        Ok(())
    }

    /// The mediating map `k([s, x]) = ζ_s(j(x))` into an ordered global
    /// action `ζ`, checked for well-definedness, `k∘i = j` and equivariance.
    pub fn universal_map(&self, target: &PartialAction, j: &[Point]) -> Result<Vec<Point>, UniversalError> {
        if target.actor != self.input.actor {
            return Err(UniversalError::ActorMismatch);
        }
        if !target.global {
            return Err(UniversalError::NotGlobal);
        }
        target.validate_p().map_err(UniversalError::InvalidTarget)?;
        let ordered = self.input.is_ordered();
        check_equivariant(&self.input, target, j, ordered).map_err(UniversalError::InvalidMap)?;
        let mut k = Vec::with_capacity(self.class_count());
        for (c, class) in self.classes.iter().enumerate() {
            let mut candidates = class.iter().map(|&m| {
                let (s, x) = self.pairs[m];
                target.theta(s, j[x])
            });
            let first = candidates.next().flatten().ok_or(UniversalError::WellDefinednessFailure(c))?;
            if candidates.any(|v| v != Some(first)) {
                return Err(UniversalError::WellDefinednessFailure(c));
            }
            k.push(first);
        }
        if self.embed.iter().zip(j).any(|(&ix, &jx)| k[ix] != jx) {
            return Err(UniversalError::InternalInconsistency("k∘i differs from j".into()));
        }
        if let Err(e) = check_equivariant(&self.eta, target, &k, ordered) {
            return Err(UniversalError::InternalInconsistency(format!("k is not equivariant: {e}")));
        }
        Ok(k)
    }
}

/// Builds `(η, E, i)` for a valid (ordered) partial action.
pub fn globalize(input: &PartialAction) -> Result<GlobalizationResult, GlobalizationError> {
    input.validate_p().map_err(GlobalizationError::InvalidInput)?;
    let a = &input.actor;
    let base = a.base();
    let mut pairs = Vec::new();
    for s in a.arrows() {
        for &x in input.domain(a.source_support(s)) {
            pairs.push((s, x));
        }
    }
    let index: HashMap<(Arrow, Point), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let internal = |msg: String| GlobalizationError::InternalInconsistency(msg);

    let mut uf = UnionFind::new(pairs.len());
    for (k, &(s, x)) in pairs.iter().enumerate() {
        for t in a.arrows().filter(|&t| base.cod(t) == base.cod(s)) {
            let u = a.product(a.inv(t), s);
            if let Some(y) = input.theta(u, x) {
                let m = *index.get(&(t, y)).ok_or_else(|| internal(format!("R1 leaves D at ({t}, {y})")))?;
                uf.union(k, m);
            }
        }
    }
    let idempotents = a.idempotents();
    for x in 0..input.carrier_len() {
        let members: Vec<usize> = idempotents.iter().filter_map(|&e| index.get(&(e, x)).copied()).collect();
        for w in members.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let (class_of_pair, classes) = uf.canonical_classes();
    let class = |p: Arrow, x: Point| index.get(&(p, x)).map(|&k| class_of_pair[k]);

    // E_s: classes meeting D_s = {(p, x) ∈ D : c(p) = c(s), x ∈ X_{p*ss*p}}.
    let mut domains = vec![BTreeSet::new(); a.len()];
    for (s, dom) in domains.iter_mut().enumerate() {
        let ss = a.range_support(s);
        for (k, &(p, x)) in pairs.iter().enumerate() {
            if base.cod(p) == base.cod(s) && input.domain(a.product(a.inv(p), a.product(ss, p))).contains(&x) {
                dom.insert(class_of_pair[k]);
            }
        }
    }
    let mut maps = vec![std::collections::BTreeMap::new(); a.len()];
    for s in a.arrows() {
        let s_star = a.inv(s);
        let support = a.range_support(s_star);
        for (k, &(p, x)) in pairs.iter().enumerate() {
            if base.cod(p) != base.cod(s_star) || !input.domain(a.product(a.inv(p), a.product(support, p))).contains(&x)
            {
                continue;
            }
            let target = class(a.product(s, p), x).ok_or_else(|| internal(format!("η_{s} leaves D at ({p}, {x})")))?;
            let previous = maps[s].insert(class_of_pair[k], target);
            if previous.is_some_and(|v| v != target) {
                return Err(internal(format!("η_{s} is not well defined on class {}", class_of_pair[k])));
            }
        }
    }

    let mut embed = Vec::with_capacity(input.carrier_len());
    for x in 0..input.carrier_len() {
        let images: BTreeSet<usize> = idempotents.iter().filter_map(|&e| class(e, x)).collect();
        if images.len() != 1 {
            return Err(internal(format!("i({x}) is not a single class: {images:?}")));
        }
        embed.push(*images.iter().next().expect("one class"));
    }

    let labels = classes
        .iter()
        .map(|members| {
            let (s, x) = pairs[members[0]];
            format!("[{},{}]", base.arrow_name(s), input.labels[x])
        })
        .collect();
    let mut result = GlobalizationResult {
        input: input.clone(),
        pairs,
        class_of_pair,
        classes,
        eta: PartialAction { actor: a.clone(), labels, order: None, domains, maps, global: true },
        embed,
    };
    if input.is_ordered() {
        result.eta.order = Some(class_order(&result)?);
    }
    Ok(result)
}

/// The order on `E` by the canonical-representative test: `[s, x] <= [t, y]`
/// iff the least representative `(p, z)` of `[t, y]` has some `z' <= z`
/// with `(p, z') ≈ (s, x)`.
pub fn class_order(r: &GlobalizationResult) -> Result<FinitePoset, GlobalizationError> {
    let index = r.pair_index();
    let mut rel = Relation::empty(r.class_count());
    for upper in 0..r.class_count() {
        let (p, z) = r.representative(upper);
        for z2 in 0..r.input.carrier_len() {
            if r.input.leq(z2, z) {
                if let Some(&k) = index.get(&(p, z2)) {
                    rel.insert(r.class_of_pair[k], upper);
                }
            }
        }
    }
    FinitePoset::from_relation(rel)
        .map_err(|e| GlobalizationError::InternalInconsistency(format!("class order is not a partial order: {e}")))
}
