//! Finite graphed semigroupoids as validated partial multiplication tables.
//!
//! Arrows and objects are dense indices. Names are carried along for file
//! output and diagnostics only; no algorithm looks at them.

use thiserror::Error;

/// Index of an arrow in a [`FiniteSemigroupoid`].
pub type Arrow = usize;
/// Index of an object in a [`FiniteSemigroupoid`].
pub type Object = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowSpec {
    pub name: String,
    pub dom: Object,
    pub cod: Object,
}

impl ArrowSpec {
    pub fn new(name: impl Into<String>, dom: Object, cod: Object) -> Self {
        ArrowSpec { name: name.into(), dom, cod }
    }
}

/// Unvalidated multiplication data: arrows with endpoints plus product triples
/// `(s, t, st)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawSemigroupoid {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub products: Vec<(Arrow, Arrow, Arrow)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupoidError {
    #[error("arrow {arrow} refers to object {object}, but there are only {count} objects")]
    ObjectOutOfRange { arrow: Arrow, object: Object, count: usize },
    #[error("product triple ({0}, {1}, {2}) refers to an arrow that does not exist")]
    ArrowOutOfRange(Arrow, Arrow, Arrow),
    #[error("product of {0} and {1} is declared twice with different values")]
    ConflictingProduct(Arrow, Arrow),
    #[error("product of {0} and {1} is declared but dom({0}) != cod({1})")]
    DefinedOnNonComposablePair(Arrow, Arrow),
    #[error("product of {0} and {1} is missing although dom({0}) = cod({1})")]
    UndefinedOnComposablePair(Arrow, Arrow),
    #[error("product of {0} and {1} does not satisfy d(st) = d(t) and c(st) = c(s)")]
    DomCodMismatch(Arrow, Arrow),
    #[error("associativity fails on ({0}, {1}, {2})")]
    AssociativityFailure(Arrow, Arrow, Arrow),
    #[error("object {0} is neither a domain nor a codomain")]
    OrphanObject(Object),
}

/// A validated finite semigroupoid.
///
/// `mul(s, t)` is defined exactly when `dom(s) == cod(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroupoid {
    objects: Vec<String>,
    arrows: Vec<String>,
    dom: Vec<Object>,
    cod: Vec<Object>,
    table: Vec<Option<Arrow>>,
}

impl FiniteSemigroupoid {
    /// Checks every axiom and reports the first violation, scanning witnesses
    /// in index order.
    pub fn validate(raw: RawSemigroupoid) -> Result<Self, SemigroupoidError> {
        let n = raw.arrows.len();
        let m = raw.objects.len();
        for (s, spec) in raw.arrows.iter().enumerate() {
            for object in [spec.dom, spec.cod] {
                if object >= m {
                    return Err(SemigroupoidError::ObjectOutOfRange { arrow: s, object, count: m });
                }
            }
        }
        let mut table = vec![None; n * n];
        for &(s, t, st) in &raw.products {
            if s >= n || t >= n || st >= n {
                return Err(SemigroupoidError::ArrowOutOfRange(s, t, st));
            }
            match table[s * n + t] {
                Some(prev) if prev != st => return Err(SemigroupoidError::ConflictingProduct(s, t)),
                _ => table[s * n + t] = Some(st),
            }
        }
        let candidate = FiniteSemigroupoid {
            objects: raw.objects,
            dom: raw.arrows.iter().map(|a| a.dom).collect(),
            cod: raw.arrows.iter().map(|a| a.cod).collect(),
            arrows: raw.arrows.into_iter().map(|a| a.name).collect(),
            table,
        };
        candidate.check_axioms()?;
        Ok(candidate)
    }

    /// Builds a semigroupoid from a product function that is only called on
    /// composable pairs, then validates it.
    pub fn from_fn(
        objects: Vec<String>,
        arrows: Vec<ArrowSpec>,
        mut mul: impl FnMut(Arrow, Arrow) -> Arrow,
    ) -> Result<Self, SemigroupoidError> {
        let mut products = Vec::new();
        for s in 0..arrows.len() {
            for t in 0..arrows.len() {
                if arrows[s].dom == arrows[t].cod {
                    products.push((s, t, mul(s, t)));
                }
            }
        }
        Self::validate(RawSemigroupoid { objects, arrows, products })
    }

    fn check_axioms(&self) -> Result<(), SemigroupoidError> {
        let n = self.len();
        for s in 0..n {
            for t in 0..n {
                if !self.composable(s, t) && self.table[s * n + t].is_some() {
                    return Err(SemigroupoidError::DefinedOnNonComposablePair(s, t));
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                if self.composable(s, t) && self.table[s * n + t].is_none() {
                    return Err(SemigroupoidError::UndefinedOnComposablePair(s, t));
                }
            }
        }
        for (s, t) in self.composable_pairs() {
            let st = self.product(s, t);
            if self.dom[st] != self.dom[t] || self.cod[st] != self.cod[s] {
                return Err(SemigroupoidError::DomCodMismatch(s, t));
            }
        }
        for r in 0..n {
            for s in 0..n {
                let Some(rs) = self.mul(r, s) else { continue };
                for t in 0..n {
                    let Some(st) = self.mul(s, t) else { continue };
                    if self.product(rs, t) != self.product(r, st) {
                        return Err(SemigroupoidError::AssociativityFailure(r, s, t));
                    }
                }
            }
        }
        let mut used = vec![false; self.objects.len()];
        for s in 0..n {
            used[self.dom[s]] = true;
            used[self.cod[s]] = true;
        }
        if let Some(u) = used.iter().position(|&u| !u) {
            return Err(SemigroupoidError::OrphanObject(u));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrows(&self) -> std::ops::Range<Arrow> {
        0..self.len()
    }

    pub fn dom(&self, s: Arrow) -> Object {
        self.dom[s]
    }

    pub fn cod(&self, s: Arrow) -> Object {
        self.cod[s]
    }

    pub fn composable(&self, s: Arrow, t: Arrow) -> bool {
        self.dom[s] == self.cod[t]
    }

    pub fn parallel(&self, s: Arrow, t: Arrow) -> bool {
        self.dom[s] == self.dom[t] && self.cod[s] == self.cod[t]
    }

    pub fn mul(&self, s: Arrow, t: Arrow) -> Option<Arrow> {
        self.table[s * self.len() + t]
    }

    /// The product of a pair that the caller knows to be composable.
    ///
    /// Panics if `dom(s) != cod(t)`.
    pub fn product(&self, s: Arrow, t: Arrow) -> Arrow {
        match self.mul(s, t) {
            Some(st) => st,
            None => panic!("arrows {s} and {t} are not composable"),
        }
    }

    /// All pairs `(s, t)` with `dom(s) == cod(t)`, in index order.
    pub fn composable_pairs(&self) -> Vec<(Arrow, Arrow)> {
        let n = self.len();
        (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).filter(|&(s, t)| self.composable(s, t)).collect()
    }

    pub fn arrow_name(&self, s: Arrow) -> &str {
        &self.arrows[s]
    }

    pub fn arrow_names(&self) -> &[String] {
        &self.arrows
    }

    pub fn object_name(&self, u: Object) -> &str {
        &self.objects[u]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn find_arrow(&self, name: &str) -> Option<Arrow> {
        self.arrows.iter().position(|a| a == name)
    }

    pub fn to_raw(&self) -> RawSemigroupoid {
        RawSemigroupoid {
            objects: self.objects.clone(),
            arrows: (0..self.len()).map(|s| ArrowSpec::new(self.arrows[s].clone(), self.dom[s], self.cod[s])).collect(),
            products: self.composable_pairs().into_iter().map(|(s, t)| (s, t, self.product(s, t))).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("arrow map has {found} entries but the source has {expected} arrows")]
    LengthMismatch { expected: usize, found: usize },
    #[error("arrow {0} is sent outside the target")]
    ArrowOutOfRange(Arrow),
    #[error("({0}, {1}) is composable but its image is not")]
    ComposabilityNotPreserved(Arrow, Arrow),
    #[error("image of {0}·{1} differs from the product of the images")]
    NotMultiplicative(Arrow, Arrow),
    #[error("no object map makes the domain and codomain squares commute at arrow {0}")]
    InconsistentObjectMap(Arrow),
}

/// A morphism `(φ, φ⁽⁰⁾)` between two finite semigroupoids.
///
/// The source and target are not owned; [`validate_morphism`] checks the maps
/// against them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupoidMorphism {
    arrow_map: Vec<Arrow>,
    object_map: Vec<Object>,
}

impl SemigroupoidMorphism {
    pub fn identity(s: &FiniteSemigroupoid) -> Self {
        SemigroupoidMorphism { arrow_map: s.arrows().collect(), object_map: (0..s.object_count()).collect() }
    }

    pub fn apply(&self, s: Arrow) -> Arrow {
        self.arrow_map[s]
    }

    pub fn apply_object(&self, u: Object) -> Object {
        self.object_map[u]
    }

    pub fn arrow_map(&self) -> &[Arrow] {
        &self.arrow_map
    }

    pub fn object_map(&self) -> &[Object] {
        &self.object_map
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SemigroupoidMorphism) -> SemigroupoidMorphism {
        SemigroupoidMorphism {
            arrow_map: self.arrow_map.iter().map(|&a| next.arrow_map[a]).collect(),
            object_map: self.object_map.iter().map(|&u| next.object_map[u]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.arrow_map.iter().all(|a| seen.insert(*a))
    }

    pub fn is_surjective(&self, target: &FiniteSemigroupoid) -> bool {
        let mut hit = vec![false; target.len()];
        for &a in &self.arrow_map {
            hit[a] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Checks that `arrow_map` is multiplicative and derives the unique object map.
pub fn validate_morphism(
    source: &FiniteSemigroupoid,
    target: &FiniteSemigroupoid,
    arrow_map: Vec<Arrow>,
) -> Result<SemigroupoidMorphism, MorphismError> {
    if arrow_map.len() != source.len() {
        return Err(MorphismError::LengthMismatch { expected: source.len(), found: arrow_map.len() });
    }
    if let Some(s) = arrow_map.iter().position(|&a| a >= target.len()) {
        return Err(MorphismError::ArrowOutOfRange(s));
    }
    for (s, t) in source.composable_pairs() {
        let Some(image) = target.mul(arrow_map[s], arrow_map[t]) else {
            return Err(MorphismError::ComposabilityNotPreserved(s, t));
        };
        if image != arrow_map[source.product(s, t)] {
            return Err(MorphismError::NotMultiplicative(s, t));
        }
    }
    let mut object_map: Vec<Option<Object>> = vec![None; source.object_count()];
    for s in source.arrows() {
        for (u, v) in [(source.dom(s), target.dom(arrow_map[s])), (source.cod(s), target.cod(arrow_map[s]))] {
            match object_map[u] {
                Some(w) if w != v => return Err(MorphismError::InconsistentObjectMap(s)),
                _ => object_map[u] = Some(v),
            }
        }
    }
    // Every object of a validated semigroupoid is an endpoint, so the map is total.
    let object_map = object_map.into_iter().map(|u| u.unwrap_or(0)).collect();
    Ok(SemigroupoidMorphism { arrow_map, object_map })
}
