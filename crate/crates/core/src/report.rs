//! Serializable reports emitted by the CLI.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::action::PartialAction;
use crate::congruence::{
    check_lemma_sts, idempotent_purity, is_e_unitary, quotient, sigma, sigma_by_equations, sigma_relation,
    EUnitaryCertificate, SigmaRoute,
};
use crate::format::{semigroupoid_doc, SemigroupoidDoc};
use crate::globalization::{globalize, GlobalizationResult};
use crate::inverse::{InverseSemigroupoid, OrderCharacterization};
use crate::ptheorem::{munn_action, ptheorem_isomorphism, wagner_preston_action, PTheoremResult};

#[derive(Debug, Clone, Serialize)]
pub struct EUnitaryReport {
    #[serde(flatten)]
    pub certificate: EUnitaryCertificate,
    /// The witness `(e, s)` by arrow name.
    pub witness_names: Option<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub arrows: Vec<String>,
    pub idempotents: Vec<usize>,
    /// `s ↦ s*` in index order.
    pub inverse: Vec<usize>,
    /// Covering pairs `(s, t)` of the natural partial order, `s < t`.
    pub order_hasse: Vec<(usize, usize)>,
    pub groupoid: bool,
    pub sigma_classes: Vec<Vec<usize>>,
    pub quotient: SemigroupoidDoc,
    pub e_unitary: EUnitaryReport,
}

pub fn analyze(s: &InverseSemigroupoid) -> AnalysisReport {
    let sig = sigma(s);
    let q = quotient(s, &sig);
    let certificate = is_e_unitary(s).expect("sigma quotient is a groupoid");
    let name = |a: usize| s.base().arrow_name(a).to_string();
    AnalysisReport {
        arrows: s.base().arrow_names().to_vec(),
        idempotents: s.idempotents(),
        inverse: s.inverse_map().to_vec(),
        order_hasse: s.order().hasse_edges(),
        groupoid: s.is_groupoid(),
        sigma_classes: sig.classes().to_vec(),
        quotient: semigroupoid_doc(q.semigroupoid.base()),
        e_unitary: EUnitaryReport { witness_names: certificate.witness.map(|(e, t)| (name(e), name(t))), certificate },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub id: usize,
    pub label: String,
    /// Members `(s, x)` of the class, the representative first.
    pub members: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GlobalizationReport {
    pub classes: Vec<ClassEntry>,
    /// `E_s` per arrow name, as class ids.
    pub e_sets: BTreeMap<String, Vec<usize>>,
    /// `η_s` per arrow name, as `[class, image]` pairs.
    pub eta: BTreeMap<String, Vec<(usize, usize)>>,
    /// `i(x)` for each input point.
    pub embedding: Vec<usize>,
    /// Covering pairs of the order on `E`.
    pub order_hasse: Vec<(usize, usize)>,
}

pub fn globalization_report(g: &GlobalizationResult) -> GlobalizationReport {
    let eta = &g.eta;
    let name = |s: usize| eta.actor.base().arrow_name(s).to_string();
    GlobalizationReport {
        classes: (0..g.class_count())
            .map(|c| ClassEntry { id: c, label: eta.labels[c].clone(), members: g.members(c) })
            .collect(),
        e_sets: eta.actor.arrows().map(|s| (name(s), eta.domains[s].iter().copied().collect())).collect(),
        eta: eta.actor.arrows().map(|s| (name(s), eta.maps[s].iter().map(|(&x, &y)| (x, y)).collect())).collect(),
        embedding: g.embed.clone(),
        order_hasse: eta.order_or_discrete().hasse_edges(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiEntry {
    pub arrow: String,
    /// Index of `(π_σ(s), s*s)` among the semidirect product's arrows.
    pub image: usize,
    pub image_name: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PTheoremReport {
    pub size: usize,
    pub isomorphism: Vec<PhiEntry>,
    pub semidirect: SemigroupoidDoc,
}

pub fn ptheorem_report(s: &InverseSemigroupoid, r: &PTheoremResult) -> PTheoremReport {
    let target = r.semidirect.product.base();
    PTheoremReport {
        size: s.len(),
        isomorphism: s
            .arrows()
            .map(|a| {
                let image = r.phi.apply(a);
                PhiEntry {
                    arrow: s.base().arrow_name(a).to_string(),
                    image,
                    image_name: target.arrow_name(image).to_string(),
                }
            })
            .collect(),
        semidirect: semigroupoid_doc(target),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

fn action_checks(out: &mut Vec<Check>, names: &'static [&'static str; 3], action: &PartialAction) {
    let e = action.validate_e().is_ok();
    let p = action.validate_p().is_ok();
    out.push(Check { name: names[0], passed: e });
    out.push(Check { name: names[1], passed: p });
    let contract = globalize(action).is_ok_and(|g| g.verify_contract().is_ok() && g.check_lemma_tec().is_empty());
    out.push(Check { name: names[2], passed: contract });
}

/// Every cross-check that applies to a single inverse semigroupoid.
pub fn cross_checks(s: &InverseSemigroupoid) -> Vec<Check> {
    let mut out = Vec::new();
    let order = s.natural_order_by(OrderCharacterization::ALL[0]);
    let orders_agree = OrderCharacterization::ALL.iter().all(|&how| s.natural_order_by(how) == order);
    out.push(Check { name: "natural order characterizations agree", passed: orders_agree });
    let sig = sigma(s);
    let routes_agree = [SigmaRoute::CommonLowerBound, SigmaRoute::RightIdempotent, SigmaRoute::LeftIdempotent]
        .iter()
        .all(|&route| sigma_relation(s, route) == sig.relation());
    out.push(Check { name: "sigma characterizations agree", passed: routes_agree });
    out.push(Check { name: "sigma from equations", passed: sigma_by_equations(s).is_ok_and(|c| c == sig) });
    out.push(Check { name: "quotient by sigma is a groupoid", passed: quotient(s, &sig).semigroupoid.is_groupoid() });
    out.push(Check { name: "idempotent purity forms agree", passed: idempotent_purity(s, &sig).agreed().is_some() });
    let certificate = is_e_unitary(s);
    let conditions_agree = certificate.as_ref().is_ok_and(|c| c.conditions.iter().all(|&b| b == c.e_unitary));
    out.push(Check { name: "E-unitary conditions agree", passed: conditions_agree });
    action_checks(&mut out, &["Munn action (E)", "Munn action (P)", "Munn globalization contract"], &munn_action(s));
    action_checks(
        &mut out,
        &["Wagner-Preston action (E)", "Wagner-Preston action (P)", "Wagner-Preston globalization contract"],
        &wagner_preston_action(s),
    );
    if certificate.is_ok_and(|c| c.e_unitary) {
        out.push(Check { name: "s t*t = t s*s", passed: check_lemma_sts(s) });
        out.push(Check { name: "P-theorem isomorphism", passed: ptheorem_isomorphism(s).is_ok() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn b2_analysis() {
        let r = analyze(&fixtures::brandt_b2());
        assert!(!r.e_unitary.certificate.e_unitary);
        assert_eq!(r.e_unitary.witness_names, Some(("0".into(), "a".into())));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["e_unitary"]["e_unitary"], false);
    }

    #[test]
    fn fixtures_pass_cross_checks() {
        for s in fixtures::all_inverse_fixtures() {
            for c in cross_checks(&s) {
                assert!(c.passed, "{} failed on {:?}", c.name, s.base().arrow_names());
            }
        }
    }
}
