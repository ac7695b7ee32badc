//! Semilatticeoid actions, semidirect products, McAlister triples and the
//! P-theorem isomorphism `S ≅ S/σ ⋉ E(S)` for E-unitary `S`.
//!
//! Constructions here require every `X_s` to be nonempty; the action module
//! itself does not.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::action::{ActionError, PartialAction, Point};
use crate::congruence::{is_e_unitary, quotient, sigma, CongruenceError, GraphedCongruence, Quotient};
use crate::globalization::{globalize, GlobalizationError};
use crate::inverse::{is_strong_morphism, InverseError, InverseSemigroupoid};
use crate::poset::{FinitePoset, Semilatticeoid, SemilatticeoidError};
use crate::semigroupoid::{
    validate_morphism, Arrow, ArrowSpec, FiniteSemigroupoid, MorphismError, RawSemigroupoid, SemigroupoidError,
    SemigroupoidMorphism,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PTheoremError {
    #[error("action is invalid: {0}")]
    InvalidAction(ActionError),
    #[error("action is not global")]
    NotGlobal,
    #[error("action and structure have different actors")]
    ActorMismatch,
    #[error("carrier order does not match the semilatticeoid order")]
    OrderMismatch,
    #[error("domain of arrow {0} is empty")]
    EmptyDomain(Arrow),
    #[error("actor is not E-unitary (witness {0:?})")]
    NotEUnitary(Option<(Arrow, Arrow)>),
    #[error("actor is not a groupoid")]
    NotAGroupoid,
    #[error("σ-related arrows {0} and {1} disagree at point {2}")]
    GluingConflict(Arrow, Arrow, Point),
    #[error("X is not an order ideal of E")]
    IdealNotIdeal,
    #[error("X is not a semilatticeoid: {0}")]
    IdealNotSemilatticeoid(SemilatticeoidError),
    #[error("orbit of X is not all of E")]
    OrbitIncomplete,
    #[error("arrow {0} moves no point of X into X")]
    DisjointTranslate(Arrow),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Globalization(#[from] GlobalizationError),
    #[error("semidirect table is invalid: {0}")]
    InvalidProduct(SemigroupoidError),
    #[error("semidirect product is not inverse: {0}")]
    ProductNotInverse(InverseError),
    #[error("comparison map is not a morphism: {0}")]
    Morphism(MorphismError),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
}

/// The Munn action of `S` on `E(S)`: `X_s = {e <= ss*}`, `θ_s(e) = s·e·s*`.
/// Carrier point `k` is the `k`-th idempotent in index order.
pub fn munn_action(s: &InverseSemigroupoid) -> PartialAction {
    let idem = s.idempotents();
    let position: HashMap<Arrow, Point> = idem.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let labels = idem.iter().map(|&e| s.base().arrow_name(e).to_string()).collect();
    let order = s.order().induced(&idem);
    PartialAction::from_fn(
        s.clone(),
        labels,
        Some(order),
        true,
        |t| (0..idem.len()).filter(|&k| s.leq(idem[k], s.range_support(t))).collect(),
        |t, k| position[&s.product(s.product(t, idem[k]), s.inv(t))],
    )
}

/// The Wagner–Preston action of `S` on its own arrows ordered naturally:
/// `X_s = {x : xx* <= ss*}`, `θ_s(x) = s·x`.
pub fn wagner_preston_action(s: &InverseSemigroupoid) -> PartialAction {
    let labels = s.base().arrow_names().to_vec();
    PartialAction::from_fn(
        s.clone(),
        labels,
        Some(s.order().clone()),
        true,
        |t| s.arrows().filter(|&x| s.leq(s.range_support(x), s.range_support(t))).collect(),
        |t, x| s.product(t, x),
    )
}

/// `E(S)` as a semilatticeoid over the objects of `S`, arrows in the
/// order of `S::idempotents`.
pub fn idempotent_semilatticeoid(s: &InverseSemigroupoid) -> Semilatticeoid {
    let idem = s.idempotents();
    let position: HashMap<Arrow, usize> = idem.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let b = s.base();
    let arrows = idem.iter().map(|&e| ArrowSpec::new(b.arrow_name(e), b.dom(e), b.cod(e))).collect();
    let table =
        FiniteSemigroupoid::from_fn(b.object_names().to_vec(), arrows, |x, y| position[&b.product(idem[x], idem[y])])
            .expect("idempotents of an inverse semigroupoid are closed under products");
    let base = InverseSemigroupoid::new(table).expect("semilatticeoids are inverse");
    Semilatticeoid::validate(base).expect("idempotents commute")
}

/// The action of `S/σ` glued from a global action of an E-unitary `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedAction {
    pub sigma: GraphedCongruence,
    pub quotient: Quotient,
    pub action: PartialAction,
}

/// `α_{π(s)}(x) = θ_t(x)` for any `t σ s` with `x ∈ X_{t*}`.
pub fn induced_sigma_action(s: &InverseSemigroupoid, theta: &PartialAction) -> Result<InducedAction, PTheoremError> {
    if &theta.actor != s {
        return Err(PTheoremError::ActorMismatch);
    }
    theta.validate_p().map_err(PTheoremError::InvalidAction)?;
    if !theta.global {
        return Err(PTheoremError::NotGlobal);
    }
    let cert = is_e_unitary(s)?;
    if !cert.e_unitary {
        return Err(PTheoremError::NotEUnitary(cert.witness));
    }
    let sig = sigma(s);
    let q = quotient(s, &sig);
    let classes = sig.class_count();
    let mut domains = vec![BTreeSet::new(); classes];
    let mut maps: Vec<BTreeMap<Point, Point>> = vec![BTreeMap::new(); classes];
    let mut source: Vec<BTreeMap<Point, Arrow>> = vec![BTreeMap::new(); classes];
    for t in s.arrows() {
        let c = sig.class_of(t);
        domains[c].extend(theta.domain(t).iter().copied());
        for (&x, &y) in &theta.maps[t] {
            if let Some(previous) = maps[c].insert(x, y) {
                if previous != y {
                    return Err(PTheoremError::GluingConflict(source[c][&x], t, x));
                }
            }
            source[c].entry(x).or_insert(t);
        }
    }
    let action = PartialAction {
        actor: q.semigroupoid.clone(),
        labels: theta.labels.clone(),
        order: theta.order.clone(),
        domains,
        maps,
        global: false,
    };
    action.validate_p().map_err(|e| PTheoremError::TheoremViolation(format!("induced action is invalid: {e}")))?;
    Ok(InducedAction { sigma: sig, quotient: q, action })
}

/// `S ⋉_θ X` with arrows `(s, x)`, `x ∈ X_{s*}`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectProduct {
    pub action: PartialAction,
    pub carrier: Semilatticeoid,
    pub pairs: Vec<(Arrow, Point)>,
    /// Object pairs `(u, v)` of the actor and carrier that occur as a domain
    /// or codomain, sorted.
    pub objects: Vec<(usize, usize)>,
    pub product: InverseSemigroupoid,
}

impl SemidirectProduct {
    pub fn actor(&self) -> &InverseSemigroupoid {
        &self.action.actor
    }

    pub fn index_of(&self, s: Arrow, x: Point) -> Option<Arrow> {
        self.pairs.binary_search(&(s, x)).ok()
    }

    /// Whether the idempotents are exactly the pairs `(e, x)` with `e`
    /// idempotent in the actor.
    pub fn idempotents_match(&self) -> bool {
        self.pairs.iter().enumerate().all(|(k, &(s, _))| self.product.is_idempotent(k) == self.actor().is_idempotent(s))
    }
}

fn check_carrier(action: &PartialAction, x: &Semilatticeoid) -> Result<(), PTheoremError> {
    if action.carrier_len() != x.len() || action.order.as_ref() != Some(x.order()) {
        return Err(PTheoremError::OrderMismatch);
    }
    action.validate_p().map_err(PTheoremError::InvalidAction)?;
    if let Some(s) = action.actor.arrows().find(|&s| action.domain(s).is_empty()) {
        return Err(PTheoremError::EmptyDomain(s));
    }
    Ok(())
}

/// Builds `S ⋉_θ X` and validates it as an inverse semigroupoid whose
/// involution is `(s, x)* = (s*, θ_s(x))`.
pub fn semidirect_product(action: &PartialAction, x: &Semilatticeoid) -> Result<SemidirectProduct, PTheoremError> {
    check_carrier(action, x)?;
    let s = &action.actor;
    let sb = s.base();
    let xb = x.base().base();
    let mut pairs = Vec::new();
    for a in s.arrows() {
        for &p in action.domain(s.inv(a)) {
            pairs.push((a, p));
        }
    }
    let dom_pair = |(a, p): (Arrow, Point)| (sb.dom(a), xb.dom(p));
    let cod_pair = |(a, p): (Arrow, Point)| (sb.cod(a), xb.cod(action.theta(a, p).expect("p ∈ X_{a*}")));
    let objects: Vec<(usize, usize)> =
        pairs.iter().flat_map(|&q| [dom_pair(q), cod_pair(q)]).collect::<BTreeSet<_>>().into_iter().collect();
    let object_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
    let arrows = pairs
        .iter()
        .map(|&(a, p)| {
            ArrowSpec::new(
                format!("({},{})", sb.arrow_name(a), xb.arrow_name(p)),
                object_index[&dom_pair((a, p))],
                object_index[&cod_pair((a, p))],
            )
        })
        .collect();
    let index: HashMap<(Arrow, Point), usize> = pairs.iter().enumerate().map(|(k, &q)| (q, k)).collect();
    let mut products = Vec::new();
    for (k, &(a, p)) in pairs.iter().enumerate() {
        for (m, &(b, q)) in pairs.iter().enumerate() {
            let Some(ab) = sb.mul(a, b) else { continue };
            let bq = action.theta(b, q).expect("q ∈ X_{b*}");
            let Some(meet) = xb.mul(p, bq) else { continue };
            let z = action.theta(s.inv(b), meet).ok_or_else(|| {
                PTheoremError::TheoremViolation(format!("meet of {p} and θ_{b}({q}) lies outside X_{b}"))
            })?;
            let r = *index.get(&(ab, z)).ok_or_else(|| {
                PTheoremError::TheoremViolation(format!("product lands outside the semidirect product at ({ab}, {z})"))
            })?;
            products.push((k, m, r));
        }
    }
    let object_names = objects.iter().map(|&(u, v)| format!("({},{})", sb.object_name(u), xb.object_name(v))).collect();
    let table = FiniteSemigroupoid::validate(RawSemigroupoid { objects: object_names, arrows, products })
        .map_err(PTheoremError::InvalidProduct)?;
    let product = InverseSemigroupoid::new(table).map_err(PTheoremError::ProductNotInverse)?;
    for (k, &(a, p)) in pairs.iter().enumerate() {
        let expected = index[&(s.inv(a), action.theta(a, p).expect("p ∈ X_{a*}"))];
        if product.inv(k) != expected {
            return Err(PTheoremError::TheoremViolation(format!("inverse of arrow {k} is not (s*, θ_s(x))")));
        }
    }
    Ok(SemidirectProduct { action: action.clone(), carrier: x.clone(), pairs, objects, product })
}

/// E-unitarity of the actor implies E-unitarity of the product.
pub fn check_e_unitary_preservation(p: &SemidirectProduct) -> Result<bool, PTheoremError> {
    if !is_e_unitary(p.actor())?.e_unitary {
        return Ok(true);
    }
    Ok(is_e_unitary(&p.product)?.e_unitary)
}

/// `(G, E, X)` with `η` an ordered global action of the groupoid `G` on `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McAlisterTriple {
    pub action: PartialAction,
    pub ideal: BTreeSet<Point>,
}

impl McAlisterTriple {
    pub fn groupoid(&self) -> &InverseSemigroupoid {
        &self.action.actor
    }

    pub fn poset(&self) -> &FinitePoset {
        self.action.order.as_ref().expect("triples are ordered")
    }

    /// `X` with the induced order, read as a semilatticeoid; arrow `k` is
    /// the `k`-th element of the ideal.
    pub fn semilatticeoid(&self) -> Result<Semilatticeoid, PTheoremError> {
        let members: Vec<Point> = self.ideal.iter().copied().collect();
        Semilatticeoid::from_poset(&self.poset().induced(&members)).map_err(PTheoremError::IdealNotSemilatticeoid)
    }

    pub fn validate(&self) -> Result<(), PTheoremError> {
        if !self.groupoid().is_groupoid() {
            return Err(PTheoremError::NotAGroupoid);
        }
        if self.action.order.is_none() {
            return Err(PTheoremError::OrderMismatch);
        }
        if !self.action.global {
            return Err(PTheoremError::NotGlobal);
        }
        self.action.validate_p().map_err(PTheoremError::InvalidAction)?;
        self.action.validate_e().map_err(PTheoremError::InvalidAction)?;
        if self.ideal.iter().any(|&x| x >= self.action.carrier_len()) || !self.poset().is_order_ideal(&self.ideal) {
            return Err(PTheoremError::IdealNotIdeal);
        }
        self.semilatticeoid()?;
        if self.action.orbit(&self.ideal).len() != self.action.carrier_len() {
            return Err(PTheoremError::OrbitIncomplete);
        }
        for g in self.groupoid().arrows() {
            if !self.action.maps[g].iter().any(|(x, y)| self.ideal.contains(x) && self.ideal.contains(y)) {
                return Err(PTheoremError::DisjointTranslate(g));
            }
        }
        Ok(())
    }

    /// The partial action of `G` on `X` obtained by restricting `η`, with the
    /// inclusion of the new carrier into `E`.
    pub fn restricted_action(&self) -> Result<(PartialAction, Vec<Point>), PTheoremError> {
        self.action.restrict_global(&self.ideal).map_err(PTheoremError::InvalidAction)
    }

    /// The semidirect product of `G` with `X` under the restricted action.
    pub fn p_semigroupoid(&self) -> Result<SemidirectProduct, PTheoremError> {
        let (restricted, _) = self.restricted_action()?;
        semidirect_product(&restricted, &self.semilatticeoid()?)
    }
}

/// Globalizes an ordered partial action of a groupoid on a semilatticeoid
/// with nonempty domains and returns the triple `(G, E, i(X))` with `i`.
pub fn mcalister_from_action(
    theta: &PartialAction,
    x: &Semilatticeoid,
) -> Result<(McAlisterTriple, Vec<Point>), PTheoremError> {
    if !theta.actor.is_groupoid() {
        return Err(PTheoremError::NotAGroupoid);
    }
    check_carrier(theta, x)?;
    let g = globalize(theta)?;
    let ideal = g.embed.iter().copied().collect();
    let triple = McAlisterTriple { action: g.eta.clone(), ideal };
    triple.validate()?;
    Ok((triple, g.embed))
}

/// Everything built on the way to `φ(s) = (π_σ(s), s*s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTheoremResult {
    pub induced: InducedAction,
    pub semidirect: SemidirectProduct,
    pub phi: SemigroupoidMorphism,
}

/// Builds `S/σ ⋉_α E(S)` from the Munn action and checks that `φ` is a
/// strong bijective morphism.
pub fn ptheorem_isomorphism(s: &InverseSemigroupoid) -> Result<PTheoremResult, PTheoremError> {
    let cert = is_e_unitary(s)?;
    if !cert.e_unitary {
        return Err(PTheoremError::NotEUnitary(cert.witness));
    }
    let munn = munn_action(s);
    let induced = induced_sigma_action(s, &munn)?;
    let e = idempotent_semilatticeoid(s);
    let semidirect = semidirect_product(&induced.action, &e)?;
    let idem = s.idempotents();
    let map = s
        .arrows()
        .map(|t| {
            let k = idem.binary_search(&s.source_support(t)).expect("s*s is idempotent");
            semidirect.index_of(induced.sigma.class_of(t), k).ok_or_else(|| {
                PTheoremError::TheoremViolation(format!("(π(s), s*s) is not an arrow of the product for s = {t}"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let phi = validate_morphism(s.base(), semidirect.product.base(), map).map_err(PTheoremError::Morphism)?;
    if !is_strong_morphism(s.base(), semidirect.product.base(), &phi) {
        return Err(PTheoremError::TheoremViolation("φ is not strong".into()));
    }
    if !phi.is_injective() {
        return Err(PTheoremError::TheoremViolation("φ is not injective".into()));
    }
    if !phi.is_surjective(semidirect.product.base()) {
        return Err(PTheoremError::TheoremViolation("φ is not surjective".into()));
    }
    Ok(PTheoremResult { induced, semidirect, phi })
}
