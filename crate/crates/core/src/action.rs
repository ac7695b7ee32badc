//! Partial actions of an inverse semigroupoid on a finite set or poset.
//!
//! `θ_s` is stored as the explicit graph of a partial map with domain
//! `X_{s*}`, so containment of partial maps is literal map inclusion.
//! Two independent validators are provided, one per axiom list; they must
//! accept exactly the same inputs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::inverse::InverseSemigroupoid;
use crate::poset::FinitePoset;
use crate::semigroupoid::Arrow;

/// A point of the carrier.
pub type Point = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("expected {expected} domains and maps, found {domains} and {maps}")]
    ArrowCountMismatch { expected: usize, domains: usize, maps: usize },
    #[error("order has {found} elements but the carrier has {expected}")]
    OrderSizeMismatch { expected: usize, found: usize },
    #[error("point {1} used by arrow {0} is outside the carrier")]
    PointOutOfRange(Arrow, Point),
    #[error("map of arrow {0} is not defined on exactly the domain of its inverse")]
    MapDomainMismatch(Arrow),
    #[error("map of arrow {0} sends {1} outside its range set")]
    MapRangeOutside(Arrow, Point),
    #[error("map of arrow {0} is not a bijection onto its range set")]
    NotBijective(Arrow),
    #[error("map of arrow {0} is not inverted by the map of its inverse")]
    InverseMismatch(Arrow),
    #[error("point {0} lies in no domain")]
    Degenerate(Point),
    #[error("composite of {0} after {1} at {2} is not contained in the map of their product")]
    CompositionNotContained(Arrow, Arrow, Point),
    #[error("{0} <= {1} but the domain of {0} is not contained in that of {1}")]
    MonotoneDomainFailure(Arrow, Arrow),
    #[error("domain of arrow {0} is not an order ideal")]
    NotIdeal(Arrow),
    #[error("map of arrow {0} is not an order isomorphism")]
    NotOrderIso(Arrow),
    #[error("map of the product of {0} and {1} differs from the composite")]
    GlobalEqualityFailure(Arrow, Arrow),
    #[error("idempotent {0} moves point {1}")]
    IdempotentNotIdentity(Arrow, Point),
    #[error("point {0} lies in no idempotent domain")]
    NotCovered(Point),
    #[error("point {1} lies in the domain of {0} but not in that of its range support")]
    RangeSupportFailure(Arrow, Point),
    #[error("preimage condition fails for composable pair ({0}, {1})")]
    PreimageMismatch(Arrow, Arrow),
    #[error("composite of {0} after {1} disagrees with their product at {2}")]
    CompositionMismatch(Arrow, Arrow, Point),
    #[error("domain of {0} differs from that of its range support")]
    SupportEqualityFailure(Arrow),
    #[error("subset is not an order ideal")]
    NotAnIdeal,
    #[error("action is not global")]
    NotGlobal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivarianceError {
    #[error("map has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("point {0} is sent outside the target carrier")]
    OutOfRange(Point),
    #[error("the actions have different actors")]
    ActorMismatch,
    #[error("image of the domain of arrow {0} is not inside the target domain (point {1})")]
    DomainNotMapped(Arrow, Point),
    #[error("map does not commute with arrow {0} at point {1}")]
    CommutationFailure(Arrow, Point),
    #[error("{0} <= {1} but their images are not ordered")]
    OrderNotPreserved(Point, Point),
    #[error("map is not a bijection")]
    NotBijective,
    #[error("inverse map is not equivariant at arrow {0}")]
    InverseNotEquivariant(Arrow),
    #[error("images of {0} and {1} are ordered but the points are not")]
    OrderNotReflected(Point, Point),
}

/// A family `(X_s, θ_s)` together with its actor and carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    pub actor: InverseSemigroupoid,
    /// Names of the carrier points; the carrier is `0..labels.len()`.
    pub labels: Vec<String>,
    /// Present for ordered actions.
    pub order: Option<FinitePoset>,
    /// `X_s` per arrow.
    pub domains: Vec<BTreeSet<Point>>,
    /// `θ_s: X_{s*} → X_s` per arrow.
    pub maps: Vec<BTreeMap<Point, Point>>,
    /// Whether the global axioms are also required.
    pub global: bool,
}

impl PartialAction {
    /// Builds the family from `θ_s(x)`, which is queried on `X_{s*}` only.
    pub fn from_fn(
        actor: InverseSemigroupoid,
        labels: Vec<String>,
        order: Option<FinitePoset>,
        global: bool,
        mut domain: impl FnMut(Arrow) -> BTreeSet<Point>,
        mut theta: impl FnMut(Arrow, Point) -> Point,
    ) -> Self {
        let domains: Vec<BTreeSet<Point>> = actor.arrows().map(&mut domain).collect();
        let maps = actor.arrows().map(|s| domains[actor.inv(s)].iter().map(|&x| (x, theta(s, x))).collect()).collect();
        PartialAction { actor, labels, order, domains, maps, global }
    }

    pub fn carrier_len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_ordered(&self) -> bool {
        self.order.is_some()
    }

    pub fn domain(&self, s: Arrow) -> &BTreeSet<Point> {
        &self.domains[s]
    }

    pub fn theta(&self, s: Arrow, x: Point) -> Option<Point> {
        self.maps[s].get(&x).copied()
    }

    /// The order on the carrier, discrete when the action is unordered.
    pub fn order_or_discrete(&self) -> FinitePoset {
        self.order.clone().unwrap_or_else(|| FinitePoset::discrete(self.carrier_len()))
    }

    pub fn leq(&self, x: Point, y: Point) -> bool {
        match &self.order {
            Some(p) => p.leq(x, y),
            None => x == y,
        }
    }

    /// Checks sizes, point ranges and that each `θ_s` is a map `X_{s*} → X_s`.
    fn check_shape(&self) -> Result<(), ActionError> {
        let n = self.actor.len();
        if self.domains.len() != n || self.maps.len() != n {
            return Err(ActionError::ArrowCountMismatch {
                expected: n,
                domains: self.domains.len(),
                maps: self.maps.len(),
            });
        }
        if let Some(p) = &self.order {
            if p.len() != self.carrier_len() {
                return Err(ActionError::OrderSizeMismatch { expected: self.carrier_len(), found: p.len() });
            }
        }
        for s in self.actor.arrows() {
            let outside = self.domains[s]
                .iter()
                .chain(self.maps[s].keys())
                .chain(self.maps[s].values())
                .find(|&&x| x >= self.carrier_len());
            if let Some(&x) = outside {
                return Err(ActionError::PointOutOfRange(s, x));
            }
        }
        for s in self.actor.arrows() {
            if !self.maps[s].keys().eq(self.domains[self.actor.inv(s)].iter()) {
                return Err(ActionError::MapDomainMismatch(s));
            }
            if let Some(&y) = self.maps[s].values().find(|y| !self.domains[s].contains(y)) {
                return Err(ActionError::MapRangeOutside(s, y));
            }
        }
        Ok(())
    }

    fn check_order_conditions(&self) -> Result<(), ActionError> {
        let Some(order) = &self.order else { return Ok(()) };
        for s in self.actor.arrows() {
            if !order.is_order_ideal(&self.domains[s]) {
                return Err(ActionError::NotIdeal(s));
            }
        }
        for s in self.actor.arrows() {
            for (&x, &fx) in &self.maps[s] {
                for (&y, &fy) in &self.maps[s] {
                    if order.leq(x, y) != order.leq(fx, fy) {
                        return Err(ActionError::NotOrderIso(s));
                    }
                }
            }
        }
        Ok(())
    }

    /// Axioms (E1)–(E3), the order conditions when ordered, and (E4) when
    /// global.
    pub fn validate_e(&self) -> Result<(), ActionError> {
        self.check_shape()?;
        let a = &self.actor;
        for s in a.arrows() {
            let image: BTreeSet<Point> = self.maps[s].values().copied().collect();
            if image.len() != self.maps[s].len() || image != self.domains[s] {
                return Err(ActionError::NotBijective(s));
            }
        }
        for s in a.arrows() {
            let back = &self.maps[a.inv(s)];
            if self.maps[s].iter().any(|(x, y)| back.get(y) != Some(x)) {
                return Err(ActionError::InverseMismatch(s));
            }
        }
        let mut covered = vec![false; self.carrier_len()];
        for d in &self.domains {
            for &x in d {
                covered[x] = true;
            }
        }
        if let Some(x) = covered.iter().position(|&c| !c) {
            return Err(ActionError::Degenerate(x));
        }
        for (s, t) in a.base().composable_pairs() {
            let st = a.product(s, t);
            for (&x, &tx) in &self.maps[t] {
                if let Some(&stx) = self.maps[s].get(&tx) {
                    if self.maps[st].get(&x) != Some(&stx) {
                        return Err(ActionError::CompositionNotContained(s, t, x));
                    }
                }
            }
        }
        for s in a.arrows() {
            for t in a.arrows() {
                if s != t && a.leq(s, t) && !self.domains[s].is_subset(&self.domains[t]) {
                    return Err(ActionError::MonotoneDomainFailure(s, t));
                }
            }
        }
        self.check_order_conditions()?;
        if self.global {
            for (s, t) in a.base().composable_pairs() {
                let st = a.product(s, t);
                let composite_domain = self.maps[t].iter().filter(|(_, tx)| self.maps[s].contains_key(tx)).count();
                if composite_domain != self.maps[st].len() {
                    return Err(ActionError::GlobalEqualityFailure(s, t));
                }
            }
        }
        Ok(())
    }

    /// Axioms (P1)–(P3), the order conditions when ordered, and (P4) when
    /// global.
    pub fn validate_p(&self) -> Result<(), ActionError> {
        self.check_shape()?;
        let a = &self.actor;
        let idempotents = a.idempotents();
        for &e in &idempotents {
            if let Some((&x, _)) = self.maps[e].iter().find(|(x, y)| x != y) {
                return Err(ActionError::IdempotentNotIdentity(e, x));
            }
        }
        for x in 0..self.carrier_len() {
            if !idempotents.iter().any(|&e| self.domains[e].contains(&x)) {
                return Err(ActionError::NotCovered(x));
            }
        }
        for s in a.arrows() {
            let support = &self.domains[a.range_support(s)];
            if let Some(&x) = self.domains[s].iter().find(|x| !support.contains(x)) {
                return Err(ActionError::RangeSupportFailure(s, x));
            }
        }
        for (s, t) in a.base().composable_pairs() {
            let st = a.product(s, t);
            let s_star = a.inv(s);
            let preimage: BTreeSet<Point> =
                self.maps[t].iter().filter(|(_, tx)| self.domains[s_star].contains(tx)).map(|(&x, _)| x).collect();
            let expected: BTreeSet<Point> =
                self.domains[a.inv(st)].intersection(&self.domains[a.inv(t)]).copied().collect();
            if preimage != expected {
                return Err(ActionError::PreimageMismatch(s, t));
            }
            for &x in &expected {
                let composite = self.theta(t, x).and_then(|tx| self.theta(s, tx));
                if composite.is_none() || composite != self.theta(st, x) {
                    return Err(ActionError::CompositionMismatch(s, t, x));
                }
            }
        }
        self.check_order_conditions()?;
        if self.global {
            for s in a.arrows() {
                if self.domains[s] != self.domains[a.range_support(s)] {
                    return Err(ActionError::SupportEqualityFailure(s));
                }
            }
        }
        Ok(())
    }

    /// `orb(Y) = ⋃_s θ_s(Y ∩ X_{s*})`.
    pub fn orbit(&self, y: &BTreeSet<Point>) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for map in &self.maps {
            for (x, fx) in map {
                if y.contains(x) {
                    out.insert(*fx);
                }
            }
        }
        out
    }

    /// Restricts a global action to `Y` using `Y_s = Y ∩ θ_s(Y ∩ X_{s*})`.
    /// The carrier of the result is `Y` listed increasingly; the returned
    /// vector maps new points to old ones.
    pub fn restrict_global(&self, y: &BTreeSet<Point>) -> Result<(PartialAction, Vec<Point>), ActionError> {
        if !self.global {
            return Err(ActionError::NotGlobal);
        }
        if let Some(&x) = y.iter().find(|&&x| x >= self.carrier_len()) {
            return Err(ActionError::PointOutOfRange(usize::MAX, x));
        }
        if !self.order_or_discrete().is_order_ideal(y) {
            return Err(ActionError::NotAnIdeal);
        }
        let inclusion: Vec<Point> = y.iter().copied().collect();
        let new_index: BTreeMap<Point, Point> = inclusion.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let labels = inclusion.iter().map(|&x| self.labels[x].clone()).collect();
        let order = self.order.as_ref().map(|p| p.induced(&inclusion));
        let a = &self.actor;
        let restricted_domain = |s: Arrow| -> BTreeSet<Point> {
            self.maps[s].iter().filter(|(x, fx)| y.contains(x) && y.contains(fx)).map(|(_, &fx)| fx).collect()
        };
        let domains: Vec<BTreeSet<Point>> =
            a.arrows().map(|s| restricted_domain(s).iter().map(|x| new_index[x]).collect()).collect();
        let maps = a
            .arrows()
            .map(|s| {
                self.maps[s]
                    .iter()
                    .filter(|(x, fx)| y.contains(x) && y.contains(fx))
                    .map(|(x, fx)| (new_index[x], new_index[fx]))
                    .collect()
            })
            .collect();
        let action = PartialAction { actor: a.clone(), labels, order, domains, maps, global: false };
        Ok((action, inclusion))
    }
}

fn check_map_shape(source: &PartialAction, target: &PartialAction, map: &[Point]) -> Result<(), EquivarianceError> {
    if source.actor != target.actor {
        return Err(EquivarianceError::ActorMismatch);
    }
    if map.len() != source.carrier_len() {
        return Err(EquivarianceError::LengthMismatch { expected: source.carrier_len(), found: map.len() });
    }
    if let Some(x) = map.iter().position(|&fx| fx >= target.carrier_len()) {
        return Err(EquivarianceError::OutOfRange(x));
    }
    Ok(())
}

/// `f(X_s) ⊆ Y_s` and `f(θ_s(x)) = θ'_s(f(x))`, plus order preservation
/// when `ordered` is set.
pub fn check_equivariant(
    source: &PartialAction,
    target: &PartialAction,
    map: &[Point],
    ordered: bool,
) -> Result<(), EquivarianceError> {
    check_map_shape(source, target, map)?;
    for s in source.actor.arrows() {
        if let Some(&x) = source.domains[s].iter().find(|&&x| !target.domains[s].contains(&map[x])) {
            return Err(EquivarianceError::DomainNotMapped(s, x));
        }
    }
    for s in source.actor.arrows() {
        for (&x, &fx) in &source.maps[s] {
            if target.theta(s, map[x]) != Some(map[fx]) {
                return Err(EquivarianceError::CommutationFailure(s, x));
            }
        }
    }
    if ordered {
        for x in 0..source.carrier_len() {
            for y in 0..source.carrier_len() {
                if source.leq(x, y) && !target.leq(map[x], map[y]) {
                    return Err(EquivarianceError::OrderNotPreserved(x, y));
                }
            }
        }
    }
    Ok(())
}

/// An (ordered) equivariant bijection whose inverse is also (ordered)
/// equivariant.
pub fn check_equivalence(
    source: &PartialAction,
    target: &PartialAction,
    map: &[Point],
    ordered: bool,
) -> Result<(), EquivarianceError> {
    check_equivariant(source, target, map, ordered)?;
    let image: BTreeSet<Point> = map.iter().copied().collect();
    if image.len() != map.len() || map.len() != target.carrier_len() {
        return Err(EquivarianceError::NotBijective);
    }
    let mut inverse = vec![0; map.len()];
    for (x, &fx) in map.iter().enumerate() {
        inverse[fx] = x;
    }
    match check_equivariant(target, source, &inverse, ordered) {
        Ok(()) => Ok(()),
        Err(EquivarianceError::DomainNotMapped(s, _)) | Err(EquivarianceError::CommutationFailure(s, _)) => {
            Err(EquivarianceError::InverseNotEquivariant(s))
        }
        Err(EquivarianceError::OrderNotPreserved(x, y)) => {
            Err(EquivarianceError::OrderNotReflected(inverse[x], inverse[y]))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[Point]) -> BTreeSet<Point> {
        xs.iter().copied().collect()
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|x| format!("p{x}")).collect()
    }

    /// The pair groupoid on two objects moving point `j` to point `i`.
    fn pair_swap() -> PartialAction {
        PartialAction::from_fn(fixtures::pair_groupoid(2), labels(2), None, true, |s| set(&[s / 2]), |s, _| s / 2)
    }

    #[test]
    fn identity_action_of_trivial_group() {
        let a =
            PartialAction::from_fn(fixtures::trivial_monoid(), labels(3), None, true, |_| set(&[0, 1, 2]), |_, x| x);
        assert_eq!(a.validate_e(), Ok(()));
        assert_eq!(a.validate_p(), Ok(()));
        assert_eq!(a.orbit(&set(&[1])), set(&[1]));
        assert_eq!(a.orbit(&set(&[])), set(&[]));
    }

    #[test]
    fn pair_groupoid_swap_is_global() {
        let a = pair_swap();
        assert_eq!(a.validate_e(), Ok(()));
        assert_eq!(a.validate_p(), Ok(()));
        assert_eq!(a.orbit(&set(&[0])), set(&[0, 1]));
    }

    #[test]
    fn shrinking_a_product_domain_breaks_containment() {
        let mut a = pair_swap();
        a.domains[0].clear();
        a.maps[0].clear();
        assert_eq!(a.validate_e(), Err(ActionError::CompositionNotContained(1, 2, 0)));
        assert_eq!(a.validate_p(), Err(ActionError::NotCovered(0)));
    }

    #[test]
    fn chain2_restricted_identity_action() {
        // X_e = {0, 1}, X_f = {0} on the chain 0 < 1, every map an identity.
        let order = FinitePoset::chain(2);
        let mut a = PartialAction::from_fn(
            fixtures::chain2(),
            labels(2),
            Some(order),
            true,
            |s| if s == 0 { set(&[0, 1]) } else { set(&[0]) },
            |_, x| x,
        );
        assert_eq!(a.validate_e(), Ok(()));
        assert_eq!(a.validate_p(), Ok(()));
        // Swapping the domains breaks monotonicity (f <= e).
        a.domains.swap(0, 1);
        a.maps.swap(0, 1);
        assert_eq!(a.validate_e(), Err(ActionError::MonotoneDomainFailure(1, 0)));
        assert!(a.validate_p().is_err());
    }

    #[test]
    fn ordered_conditions() {
        let order = FinitePoset::chain(2);
        let a = PartialAction::from_fn(
            fixtures::trivial_monoid(),
            labels(2),
            Some(order.clone()),
            false,
            |_| set(&[1]),
            |_, x| x,
        );
        // {1} is not an ideal of 0 < 1, and point 0 is uncovered.
        assert_eq!(a.validate_e(), Err(ActionError::Degenerate(0)));
        let z2 = fixtures::cyclic_group(2);
        let flip = PartialAction::from_fn(
            z2,
            labels(2),
            Some(order),
            true,
            |_| set(&[0, 1]),
            |s, x| if s == 1 { 1 - x } else { x },
        );
        assert_eq!(flip.validate_e(), Err(ActionError::NotOrderIso(1)));
        assert_eq!(flip.validate_p(), Err(ActionError::NotOrderIso(1)));
    }

    #[test]
    fn restriction_examples() {
        let a = pair_swap();
        let (whole, inclusion) = a.restrict_global(&set(&[0, 1])).unwrap();
        assert_eq!(inclusion, vec![0, 1]);
        assert_eq!(whole.domains, a.domains);
        assert_eq!(whole.maps, a.maps);

        let (half, inclusion) = a.restrict_global(&set(&[0])).unwrap();
        assert_eq!(inclusion, vec![0]);
        assert_eq!(half.domains, vec![set(&[0]), set(&[]), set(&[]), set(&[])]);
        assert_eq!(half.validate_p(), Ok(()));
        assert_eq!(half.validate_e(), Ok(()));

        let order = FinitePoset::chain(2);
        let ordered = PartialAction::from_fn(
            fixtures::trivial_monoid(),
            labels(2),
            Some(order),
            true,
            |_| set(&[0, 1]),
            |_, x| x,
        );
        assert_eq!(ordered.restrict_global(&set(&[1])).unwrap_err(), ActionError::NotAnIdeal);
    }

    #[test]
    fn equivariance_examples() {
        let a = pair_swap();
        assert_eq!(check_equivalence(&a, &a, &[0, 1], false), Ok(()));
        // Swapping the points does not commute with the groupoid.
        assert_eq!(check_equivariant(&a, &a, &[1, 0], false), Err(EquivarianceError::DomainNotMapped(0, 0)));

        let order = FinitePoset::chain(2);
        let id = PartialAction::from_fn(
            fixtures::trivial_monoid(),
            labels(2),
            Some(order),
            true,
            |_| set(&[0, 1]),
            |_, x| x,
        );
        assert_eq!(check_equivalence(&id, &id, &[1, 0], false), Ok(()));
        assert_eq!(check_equivariant(&id, &id, &[1, 0], true), Err(EquivarianceError::OrderNotPreserved(0, 1)));
        // Collapsing onto the top is ordered equivariant but not an equivalence.
        assert_eq!(check_equivariant(&id, &id, &[1, 1], true), Ok(()));
        assert_eq!(check_equivalence(&id, &id, &[1, 1], true), Err(EquivarianceError::NotBijective));
    }
}
