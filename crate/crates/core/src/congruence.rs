//! Graphed congruences, quotients, the minimal groupoid congruence σ and
//! E-unitarity.
//!
//! σ is computed three ways (a common lower bound, `se = te`, `fs = ft`) and
//! E-unitarity five ways. Every route is kept public so callers and tests can
//! cross-check them.

use serde::Serialize;
use thiserror::Error;

use crate::inverse::InverseSemigroupoid;
use crate::poset::Relation;
use crate::semigroupoid::{
    validate_morphism, Arrow, ArrowSpec, FiniteSemigroupoid, MorphismError, SemigroupoidMorphism,
};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("seed pair ({0}, {1}) is not parallel")]
    NonParallelSeed(Arrow, Arrow),
    #[error("relation is not an equivalence at ({0}, {1})")]
    NotEquivalence(Arrow, Arrow),
    #[error("related arrows {0} and {1} are not parallel")]
    NotGraphed(Arrow, Arrow),
    #[error("({0}, {1}) are related but multiplying both by {2} breaks the relation")]
    NotCompatible(Arrow, Arrow, Arrow),
    #[error("target of the morphism is not a groupoid")]
    NotAGroupoid,
    #[error("arrows {0} and {1} are σ-related but have different images")]
    NotConstantOnClasses(Arrow, Arrow),
    #[error("mediating map is not a morphism: {0}")]
    Morphism(#[from] MorphismError),
    #[error("equivalent characterizations disagree: {0}")]
    InternalInconsistency(String),
}

/// A partition of the arrows into classes of parallel arrows that is closed
/// under multiplication. Classes are numbered by their least arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphedCongruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<Arrow>>,
}

impl GraphedCongruence {
    pub fn equality(n: usize) -> Self {
        GraphedCongruence { class_of: (0..n).collect(), classes: (0..n).map(|s| vec![s]).collect() }
    }

    fn from_union_find(mut uf: UnionFind) -> Self {
        let (class_of, classes) = uf.canonical_classes();
        GraphedCongruence { class_of, classes }
    }

    /// Validates an arbitrary relation as a graphed congruence on `s`.
    pub fn from_relation(s: &InverseSemigroupoid, rel: &Relation) -> Result<Self, CongruenceError> {
        let n = s.len();
        let mut uf = UnionFind::new(n);
        for (a, b) in rel.pairs() {
            uf.union(a, b);
        }
        let candidate = Self::from_union_find(uf);
        if let Some((a, b)) = candidate.relation().pairs().find(|&(a, b)| !rel.contains(a, b)) {
            return Err(CongruenceError::NotEquivalence(a, b));
        }
        candidate.check(s)?;
        Ok(candidate)
    }

    /// Validates a class assignment as a graphed congruence on `s`.
    pub fn from_classes(s: &InverseSemigroupoid, class_of: &[usize]) -> Result<Self, CongruenceError> {
        let rel = Relation::from_fn(s.len(), |a, b| class_of[a] == class_of[b]);
        Self::from_relation(s, &rel)
    }

    fn check(&self, s: &InverseSemigroupoid) -> Result<(), CongruenceError> {
        for class in &self.classes {
            for &b in &class[1..] {
                if !s.base().parallel(class[0], b) {
                    return Err(CongruenceError::NotGraphed(class[0], b));
                }
            }
        }
        for class in &self.classes {
            let a = class[0];
            for &b in &class[1..] {
                for r in s.arrows() {
                    if let (Some(ra), Some(rb)) = (s.mul(r, a), s.mul(r, b)) {
                        if !self.related(ra, rb) {
                            return Err(CongruenceError::NotCompatible(a, b, r));
                        }
                    }
                    if let (Some(ar), Some(br)) = (s.mul(a, r), s.mul(b, r)) {
                        if !self.related(ar, br) {
                            return Err(CongruenceError::NotCompatible(a, b, r));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn related(&self, s: Arrow, t: Arrow) -> bool {
        self.class_of[s] == self.class_of[t]
    }

    pub fn class_of(&self, s: Arrow) -> usize {
        self.class_of[s]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<Arrow>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Least arrow of class `c`.
    pub fn representative(&self, c: usize) -> Arrow {
        self.classes[c][0]
    }

    pub fn is_equality(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    pub fn relation(&self) -> Relation {
        Relation::from_fn(self.class_of.len(), |a, b| self.related(a, b))
    }
}

/// The smallest congruence containing `seeds`, by union-find iterated to a
/// fixed point under left and right multiplication.
pub fn congruence_closure(
    s: &InverseSemigroupoid,
    seeds: &[(Arrow, Arrow)],
) -> Result<GraphedCongruence, CongruenceError> {
    let mut uf = UnionFind::new(s.len());
    for &(a, b) in seeds {
        if !s.base().parallel(a, b) {
            return Err(CongruenceError::NonParallelSeed(a, b));
        }
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for a in s.arrows() {
            let root = uf.find(a);
            if root == a {
                continue;
            }
            for r in s.arrows() {
                if let (Some(ra), Some(rroot)) = (s.mul(r, a), s.mul(r, root)) {
                    changed |= uf.union(ra, rroot);
                }
                if let (Some(ar), Some(rootr)) = (s.mul(a, r), s.mul(root, r)) {
                    changed |= uf.union(ar, rootr);
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(GraphedCongruence::from_union_find(uf))
}

/// The three independent descriptions of σ on parallel arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaRoute {
    /// Some `r` lies below both arrows.
    CommonLowerBound,
    /// `s·e = t·e` for some idempotent `e`.
    RightIdempotent,
    /// `f·s = f·t` for some idempotent `f`.
    LeftIdempotent,
}

pub fn sigma_relation(s: &InverseSemigroupoid, route: SigmaRoute) -> Relation {
    let b = s.base();
    let idempotents = s.idempotents();
    Relation::from_fn(s.len(), |x, y| {
        if !b.parallel(x, y) {
            return false;
        }
        match route {
            SigmaRoute::CommonLowerBound => s.arrows().any(|r| s.leq(r, x) && s.leq(r, y)),
            SigmaRoute::RightIdempotent => idempotents.iter().any(|&e| match (b.mul(x, e), b.mul(y, e)) {
                (Some(xe), Some(ye)) => xe == ye,
                _ => false,
            }),
            SigmaRoute::LeftIdempotent => idempotents.iter().any(|&f| match (b.mul(f, x), b.mul(f, y)) {
                (Some(fx), Some(fy)) => fx == fy,
                _ => false,
            }),
        }
    })
}

/// σ by a direct scan for common lower bounds.
pub fn sigma(s: &InverseSemigroupoid) -> GraphedCongruence {
    GraphedCongruence::from_relation(s, &sigma_relation(s, SigmaRoute::CommonLowerBound))
        .expect("σ is a congruence on every inverse semigroupoid")
}

/// σ via `se = te`, cross-checked against `fs = ft`.
pub fn sigma_by_equations(s: &InverseSemigroupoid) -> Result<GraphedCongruence, CongruenceError> {
    let right = sigma_relation(s, SigmaRoute::RightIdempotent);
    let left = sigma_relation(s, SigmaRoute::LeftIdempotent);
    if right != left {
        return Err(CongruenceError::InternalInconsistency("se = te and fs = ft give different relations".into()));
    }
    GraphedCongruence::from_relation(s, &right)
}

/// A quotient inverse semigroupoid together with its projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub semigroupoid: InverseSemigroupoid,
    pub projection: SemigroupoidMorphism,
}

/// `S/R` on the original object set, with `π(s)·π(t) = π(st)`.
pub fn quotient(s: &InverseSemigroupoid, r: &GraphedCongruence) -> Quotient {
    assert_eq!(r.class_map().len(), s.len(), "congruence belongs to a different semigroupoid");
    let b = s.base();
    let arrows = (0..r.class_count())
        .map(|c| {
            let rep = r.representative(c);
            ArrowSpec::new(format!("[{}]", b.arrow_name(rep)), b.dom(rep), b.cod(rep))
        })
        .collect();
    let table = FiniteSemigroupoid::from_fn(b.object_names().to_vec(), arrows, |c, d| {
        r.class_of(b.product(r.representative(c), r.representative(d)))
    })
    .expect("a congruence induces a well-defined quotient");
    let semigroupoid = InverseSemigroupoid::new(table).expect("quotients of inverse semigroupoids are inverse");
    let projection = validate_morphism(b, semigroupoid.base(), r.class_map().to_vec())
        .expect("the canonical projection is a morphism");
    Quotient { semigroupoid, projection }
}

/// Factors `phi: S → G` through `π_σ: S → S/σ` and checks the result.
pub fn universal_groupoid_property(
    s: &InverseSemigroupoid,
    sigma: &GraphedCongruence,
    quotient: &Quotient,
    target: &InverseSemigroupoid,
    phi: &SemigroupoidMorphism,
) -> Result<SemigroupoidMorphism, CongruenceError> {
    if !target.is_groupoid() {
        return Err(CongruenceError::NotAGroupoid);
    }
    for class in sigma.classes() {
        for &t in &class[1..] {
            if phi.apply(t) != phi.apply(class[0]) {
                return Err(CongruenceError::NotConstantOnClasses(class[0], t));
            }
        }
    }
    let _ = s;
    let map = (0..sigma.class_count()).map(|c| phi.apply(sigma.representative(c))).collect();
    Ok(validate_morphism(quotient.semigroupoid.base(), target.base(), map)?)
}

/// The three equivalent idempotent-purity tests for a congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdempotentPurity {
    /// `(s, e) ∈ R` with `e` idempotent forces `s` idempotent.
    pub definition: bool,
    /// Only idempotents are sent to idempotents of `S/R`.
    pub projection: bool,
    /// `(s, t) ∈ R` implies `s*t` and `st*` are idempotent.
    pub products: bool,
}

impl IdempotentPurity {
    pub fn agreed(&self) -> Option<bool> {
        (self.definition == self.projection && self.projection == self.products).then_some(self.definition)
    }
}

pub fn idempotent_purity(s: &InverseSemigroupoid, r: &GraphedCongruence) -> IdempotentPurity {
    let b = s.base();
    let definition = s.arrows().all(|x| s.is_idempotent(x) || !s.idempotents().into_iter().any(|e| r.related(x, e)));
    let projection = s.arrows().all(|x| {
        let maps_to_idempotent = b.mul(x, x).is_some_and(|xx| r.related(xx, x));
        !maps_to_idempotent || s.is_idempotent(x)
    });
    let products = s.arrows().all(|x| {
        s.arrows()
            .filter(|&y| r.related(x, y))
            .all(|y| s.is_idempotent(b.product(s.inv(x), y)) && s.is_idempotent(b.product(x, s.inv(y))))
    });
    IdempotentPurity { definition, projection, products }
}

pub fn is_idempotent_pure(s: &InverseSemigroupoid, r: &GraphedCongruence) -> bool {
    idempotent_purity(s, r).definition
}

/// Verdict of the E-unitarity tests, with a witness `(e, s)` (`e` idempotent,
/// `e <= s`, `s` not idempotent) when the verdict is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EUnitaryCertificate {
    pub e_unitary: bool,
    /// Conditions (i)–(v) of the standard list of equivalent formulations.
    pub conditions: [bool; 5],
    pub witness: Option<(Arrow, Arrow)>,
}

/// Evaluates all five formulations of E-unitarity independently.
pub fn is_e_unitary(s: &InverseSemigroupoid) -> Result<EUnitaryCertificate, CongruenceError> {
    let b = s.base();
    let sig = sigma(s);
    let purity = idempotent_purity(s, &sig);
    let q = quotient(s, &sig);
    let via_quotient = s.arrows().all(|x| s.is_idempotent(x) || !q.semigroupoid.is_idempotent(q.projection.apply(x)));
    let both_products =
        |x: Arrow, y: Arrow| s.is_idempotent(b.product(s.inv(x), y)) && s.is_idempotent(b.product(x, s.inv(y)));
    let mut forward = true;
    let mut iff = true;
    for x in s.arrows() {
        for y in s.arrows() {
            if !b.parallel(x, y) {
                continue;
            }
            let related = sig.related(x, y);
            let prods = both_products(x, y);
            if related && !prods {
                forward = false;
            }
            if related != prods {
                iff = false;
            }
        }
    }
    let mut witness = None;
    'scan: for e in s.idempotents() {
        for x in s.arrows() {
            if s.leq(e, x) && !s.is_idempotent(x) {
                witness = Some((e, x));
                break 'scan;
            }
        }
    }
    let conditions = [purity.definition, via_quotient, forward, iff, witness.is_none()];
    if conditions.iter().any(|&c| c != conditions[0]) {
        return Err(CongruenceError::InternalInconsistency(format!("E-unitary conditions {conditions:?}")));
    }
    Ok(EUnitaryCertificate { e_unitary: conditions[0], conditions, witness })
}

/// Checks `s·t*·t = t·s*·s` for every σ-related parallel pair. Guaranteed
/// only when `s` is E-unitary; B2 fails it.
pub fn check_lemma_sts(s: &InverseSemigroupoid) -> bool {
    let sig = sigma(s);
    s.arrows().all(|x| {
        s.arrows()
            .filter(|&y| sig.related(x, y))
            .all(|y| s.product(x, s.source_support(y)) == s.product(y, s.source_support(x)))
    })
}
