//! Pseudoinverses, idempotents and the natural partial order.

use thiserror::Error;

use crate::poset::{FinitePoset, Relation};
use crate::semigroupoid::{Arrow, FiniteSemigroupoid, Object, SemigroupoidMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("arrow {0} has no pseudoinverse")]
    NoInverse(Arrow),
    #[error("arrow {0} has at least two pseudoinverses, {1} and {2}")]
    NonUniqueInverse(Arrow, Arrow, Arrow),
}

/// A finite semigroupoid in which every arrow has a unique pseudoinverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroupoid {
    base: FiniteSemigroupoid,
    inv: Vec<Arrow>,
    idempotent: Vec<bool>,
    order: FinitePoset,
}

/// The four equivalent ways of writing `s <= t` for parallel arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderCharacterization {
    /// `s = t·e` for some idempotent `e`.
    RightIdempotent,
    /// `s = t·s*·s`.
    RightSupport,
    /// `s = f·t` for some idempotent `f`.
    LeftIdempotent,
    /// `s = s·s*·t`.
    LeftSupport,
}

impl OrderCharacterization {
    pub const ALL: [OrderCharacterization; 4] = [
        OrderCharacterization::RightIdempotent,
        OrderCharacterization::RightSupport,
        OrderCharacterization::LeftIdempotent,
        OrderCharacterization::LeftSupport,
    ];
}

impl InverseSemigroupoid {
    /// Finds each arrow's pseudoinverse by exhaustive search and insists on
    /// uniqueness.
    pub fn new(base: FiniteSemigroupoid) -> Result<Self, InverseError> {
        let mut inv = Vec::with_capacity(base.len());
        for s in base.arrows() {
            let mut found = None;
            for t in base.arrows() {
                if base.dom(t) != base.cod(s) || base.cod(t) != base.dom(s) {
                    continue;
                }
                let sts = base.product(base.product(s, t), s);
                let tst = base.product(base.product(t, s), t);
                if sts == s && tst == t {
                    if let Some(first) = found {
                        return Err(InverseError::NonUniqueInverse(s, first, t));
                    }
                    found = Some(t);
                }
            }
            inv.push(found.ok_or(InverseError::NoInverse(s))?);
        }
        let idempotent = base.arrows().map(|e| base.mul(e, e) == Some(e)).collect();
        let mut out = InverseSemigroupoid { base, inv, idempotent, order: FinitePoset::discrete(0) };
        out.order = FinitePoset::from_relation(out.natural_order_by(OrderCharacterization::RightSupport))
            .expect("the natural order of an inverse semigroupoid is a partial order");
        Ok(out)
    }

    pub fn base(&self) -> &FiniteSemigroupoid {
        &self.base
    }

    pub fn into_base(self) -> FiniteSemigroupoid {
        self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn arrows(&self) -> std::ops::Range<Arrow> {
        self.base.arrows()
    }

    pub fn dom(&self, s: Arrow) -> Object {
        self.base.dom(s)
    }

    pub fn cod(&self, s: Arrow) -> Object {
        self.base.cod(s)
    }

    pub fn mul(&self, s: Arrow, t: Arrow) -> Option<Arrow> {
        self.base.mul(s, t)
    }

    pub fn product(&self, s: Arrow, t: Arrow) -> Arrow {
        self.base.product(s, t)
    }

    pub fn inv(&self, s: Arrow) -> Arrow {
        self.inv[s]
    }

    pub fn inverse_map(&self) -> &[Arrow] {
        &self.inv
    }

    pub fn is_idempotent(&self, s: Arrow) -> bool {
        self.idempotent[s]
    }

    pub fn idempotents(&self) -> Vec<Arrow> {
        self.arrows().filter(|&e| self.idempotent[e]).collect()
    }

    /// `s*·s`, the idempotent over `dom(s)`.
    pub fn source_support(&self, s: Arrow) -> Arrow {
        self.product(self.inv[s], s)
    }

    /// `s·s*`, the idempotent over `cod(s)`.
    pub fn range_support(&self, s: Arrow) -> Arrow {
        self.product(s, self.inv[s])
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn leq(&self, s: Arrow, t: Arrow) -> bool {
        self.order.leq(s, t)
    }

    /// The natural order computed from one of its four characterizations.
    pub fn natural_order_by(&self, how: OrderCharacterization) -> Relation {
        let b = &self.base;
        let idempotents = self.idempotents();
        Relation::from_fn(self.len(), |s, t| {
            if !b.parallel(s, t) {
                return false;
            }
            match how {
                OrderCharacterization::RightIdempotent => idempotents.iter().any(|&e| b.mul(t, e) == Some(s)),
                OrderCharacterization::RightSupport => b.product(t, self.source_support(s)) == s,
                OrderCharacterization::LeftIdempotent => idempotents.iter().any(|&f| b.mul(f, t) == Some(s)),
                OrderCharacterization::LeftSupport => b.product(self.range_support(s), t) == s,
            }
        })
    }

    /// True iff there is exactly one idempotent over each object.
    pub fn is_groupoid(&self) -> bool {
        let mut count = vec![0usize; self.base.object_count()];
        for e in self.idempotents() {
            count[self.dom(e)] += 1;
        }
        count.into_iter().all(|c| c == 1)
    }

    pub fn order_is_equality(&self) -> bool {
        self.order.strict_pairs().is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartialMorphismError {
    #[error("map has the wrong length or leaves the target")]
    Shape,
    #[error("image of {0}* is not the inverse of the image of {0}")]
    InverseNotPreserved(Arrow),
    #[error("images of the composable pair ({0}, {1}) are not composable")]
    ComposabilityNotPreserved(Arrow, Arrow),
    #[error("product of images of ({0}, {1}) is not below the image of the product")]
    SubmultiplicativityFailure(Arrow, Arrow),
    #[error("{0} <= {1} but the images are not ordered")]
    OrderNotPreserved(Arrow, Arrow),
}

/// Checks that `map` preserves inverses, is submultiplicative and monotone.
pub fn check_partial_morphism(
    source: &InverseSemigroupoid,
    target: &InverseSemigroupoid,
    map: &[Arrow],
) -> Result<(), PartialMorphismError> {
    if map.len() != source.len() || map.iter().any(|&a| a >= target.len()) {
        return Err(PartialMorphismError::Shape);
    }
    for s in source.arrows() {
        if map[source.inv(s)] != target.inv(map[s]) {
            return Err(PartialMorphismError::InverseNotPreserved(s));
        }
    }
    for (s, t) in source.base().composable_pairs() {
        let Some(image) = target.mul(map[s], map[t]) else {
            return Err(PartialMorphismError::ComposabilityNotPreserved(s, t));
        };
        if !target.leq(image, map[source.product(s, t)]) {
            return Err(PartialMorphismError::SubmultiplicativityFailure(s, t));
        }
    }
    for (s, t) in source.order().strict_pairs() {
        if !target.leq(map[s], map[t]) {
            return Err(PartialMorphismError::OrderNotPreserved(s, t));
        }
    }
    Ok(())
}

/// True iff composability of images forces composability in the source.
pub fn is_strong_morphism(
    source: &FiniteSemigroupoid,
    target: &FiniteSemigroupoid,
    morphism: &SemigroupoidMorphism,
) -> bool {
    source.arrows().all(|s| {
        source.arrows().all(|t| !target.composable(morphism.apply(s), morphism.apply(t)) || source.composable(s, t))
    })
}
