//! JSON documents for expansions, verification reports and cumulant files.
//!
//! Big integers travel as decimal strings so downstream consumers never
//! overflow; rationals travel as "p/q" strings. Expansion documents
//! round-trip losslessly to their in-memory form.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cumulants::{CumulantAssignment, MomentAssignment};
use crate::error::{Error, Result};
use crate::expansion::{CompositionExpansion, CompositionTerm};
use crate::multiset::{Multiset, VarId};
use crate::multiset_partition::MultisetPartition;
use crate::oracle::{SweepReport, TrialsReport, VerificationReport};
use crate::product::{ProductExpansion, ProductTerm};

/// `{"1": 4, "5": 2}` — a multiset as a JSON object.
pub type MultisetDoc = BTreeMap<String, u32>;

fn multiset_to_doc(ms: &Multiset) -> MultisetDoc {
    ms.iter().map(|(v, c)| (v.to_string(), c)).collect()
}

fn multiset_from_doc(doc: &MultisetDoc) -> Result<Multiset> {
    let mut ms = Multiset::new();
    for (key, &count) in doc {
        let var: VarId = key
            .parse()
            .map_err(|_| Error::InvalidDocument(format!("bad variable id {key:?}")))?;
        if var == 0 {
            return Err(Error::InvalidDocument("variable ids start at 1".into()));
        }
        if count == 0 {
            return Err(Error::InvalidDocument(format!(
                "zero multiplicity for x{var}"
            )));
        }
        ms.insert(var, count);
    }
    Ok(ms)
}

/// One part of a term shape: its variables and how many times it repeats.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartDoc {
    pub vars: MultisetDoc,
    pub times: u32,
}

/// One collected composition term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDoc {
    pub f_order: u64,
    pub coefficient: String,
    pub parts: Vec<PartDoc>,
}

/// A full composition expansion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpansionDoc {
    pub signature: MultisetDoc,
    pub terms: Vec<TermDoc>,
}

impl From<&CompositionExpansion> for ExpansionDoc {
    fn from(e: &CompositionExpansion) -> Self {
        ExpansionDoc {
            signature: multiset_to_doc(e.signature()),
            terms: e
                .terms()
                .iter()
                .map(|t| TermDoc {
                    f_order: t.f_order,
                    coefficient: t.coefficient.to_string(),
                    parts: t
                        .shape
                        .parts()
                        .iter()
                        .map(|(part, m)| PartDoc {
                            vars: multiset_to_doc(part),
                            times: *m,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ExpansionDoc> for CompositionExpansion {
    type Error = Error;

    fn try_from(doc: &ExpansionDoc) -> Result<CompositionExpansion> {
        let signature = multiset_from_doc(&doc.signature)?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for term in &doc.terms {
            let coefficient = BigUint::from_str(&term.coefficient).map_err(|_| {
                Error::InvalidDocument(format!("bad coefficient {:?}", term.coefficient))
            })?;
            let mut parts = Vec::with_capacity(term.parts.len());
            for part in &term.parts {
                parts.push((multiset_from_doc(&part.vars)?, part.times));
            }
            let shape = MultisetPartition::from_counted_parts(parts)
                .ok_or_else(|| Error::InvalidDocument("empty part in term shape".into()))?;
            if shape.part_count() != term.f_order {
                return Err(Error::InvalidDocument(format!(
                    "f_order {} does not match part count {}",
                    term.f_order,
                    shape.part_count()
                )));
            }
            terms.push(CompositionTerm {
                f_order: term.f_order,
                shape,
                coefficient,
            });
        }
        CompositionExpansion::from_sorted_terms(signature, terms)
            .ok_or_else(|| Error::InvalidDocument("terms out of canonical order".into()))
    }
}

/// One collected product term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductTermDoc {
    pub coefficient: String,
    pub u: MultisetDoc,
    pub v: MultisetDoc,
}

/// A full product expansion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductExpansionDoc {
    pub signature: MultisetDoc,
    pub terms: Vec<ProductTermDoc>,
}

impl From<&ProductExpansion> for ProductExpansionDoc {
    fn from(e: &ProductExpansion) -> Self {
        ProductExpansionDoc {
            signature: multiset_to_doc(e.signature()),
            terms: e
                .terms()
                .iter()
                .map(|t| ProductTermDoc {
                    coefficient: t.coefficient.to_string(),
                    u: multiset_to_doc(&t.u_part),
                    v: multiset_to_doc(&t.v_part),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ProductExpansionDoc> for ProductExpansion {
    type Error = Error;

    fn try_from(doc: &ProductExpansionDoc) -> Result<ProductExpansion> {
        let signature = multiset_from_doc(&doc.signature)?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for term in &doc.terms {
            let coefficient = BigUint::from_str(&term.coefficient).map_err(|_| {
                Error::InvalidDocument(format!("bad coefficient {:?}", term.coefficient))
            })?;
            terms.push(ProductTerm {
                u_part: multiset_from_doc(&term.u)?,
                v_part: multiset_from_doc(&term.v)?,
                coefficient,
            });
        }
        ProductExpansion::from_sorted_terms(signature, terms)
            .ok_or_else(|| Error::InvalidDocument("terms out of canonical order".into()))
    }
}

/// A two-route verification outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub kind: String,
    pub signature: MultisetDoc,
    pub direct: String,
    pub expanded: String,
    pub equal: bool,
}

impl From<&VerificationReport> for VerificationDoc {
    fn from(r: &VerificationReport) -> Self {
        VerificationDoc {
            kind: r.kind.as_str().to_string(),
            signature: multiset_to_doc(&r.signature),
            direct: r.direct.to_string(),
            expanded: r.expanded.to_string(),
            equal: r.equal,
        }
    }
}

/// A randomized trial batch outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialsDoc {
    pub kind: String,
    pub trials: u32,
    pub seed: u64,
    pub max_size: usize,
    pub mismatches: u32,
    pub all_equal: bool,
}

impl From<&TrialsReport> for TrialsDoc {
    fn from(r: &TrialsReport) -> Self {
        TrialsDoc {
            kind: r.kind.as_str().to_string(),
            trials: r.trials,
            seed: r.seed,
            max_size: r.max_size,
            mismatches: r.mismatches,
            all_equal: r.all_equal(),
        }
    }
}

/// One order of the cumulant identification check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CollapseIdentityDoc {
    pub n: u32,
    pub distinct: String,
    pub collapsed: String,
    pub equal: bool,
}

impl From<&crate::cumulants::CollapseIdentityReport> for CollapseIdentityDoc {
    fn from(r: &crate::cumulants::CollapseIdentityReport) -> Self {
        CollapseIdentityDoc {
            n: r.n,
            distinct: r.distinct_path.to_string(),
            collapsed: r.collapsed_path.to_string(),
            equal: r.equal,
        }
    }
}

/// The multiplicity sweep outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepDoc {
    pub max_size: usize,
    pub signatures: u64,
    pub pairs: u64,
    pub mismatches: u64,
    pub bell_mismatches: u64,
    pub all_agree: bool,
}

impl From<&SweepReport> for SweepDoc {
    fn from(r: &SweepReport) -> Self {
        SweepDoc {
            max_size: r.max_size,
            signatures: r.signatures,
            pairs: r.pairs,
            mismatches: r.mismatches,
            bell_mismatches: r.bell_mismatches,
            all_agree: r.all_agree(),
        }
    }
}

// ---------------------------------------------------------------------------
// cumulant/moment files
// ---------------------------------------------------------------------------

/// Key form for assignment maps: sorted `id:multiplicity` entries joined by
/// commas, e.g. `"1:2,3:1"` for the multiset {1,1,3}.
pub fn multiset_key(ms: &Multiset) -> String {
    ms.iter()
        .map(|(v, c)| format!("{v}:{c}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Parse the key form back into a multiset.
pub fn parse_multiset_key(key: &str) -> Result<Multiset> {
    let mut ms = Multiset::new();
    for piece in key.split(',') {
        let (var, count) = piece
            .split_once(':')
            .ok_or_else(|| Error::InvalidDocument(format!("bad multiset key entry {piece:?}")))?;
        let var: VarId = var
            .trim()
            .parse()
            .map_err(|_| Error::InvalidDocument(format!("bad variable id {var:?}")))?;
        let count: u32 = count
            .trim()
            .parse()
            .map_err(|_| Error::InvalidDocument(format!("bad multiplicity {count:?}")))?;
        if var == 0 || count == 0 {
            return Err(Error::InvalidDocument(format!(
                "ids and multiplicities are positive in {piece:?}"
            )));
        }
        ms.insert(var, count);
    }
    Ok(ms)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|_| Error::InvalidDocument(format!("bad rational {s:?}")))
}

/// Input file for cumulant/moment conversions: the target multiset and one
/// of the two assignment maps, values as "p/q" strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssignmentFileDoc {
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cumulants: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<BTreeMap<String, String>>,
}

impl AssignmentFileDoc {
    pub fn target_multiset(&self) -> Result<Multiset> {
        parse_multiset_key(&self.target)
    }

    pub fn cumulant_assignment(&self) -> Result<CumulantAssignment> {
        let map = self
            .cumulants
            .as_ref()
            .ok_or_else(|| Error::InvalidDocument("no \"cumulants\" map in file".into()))?;
        let mut kappa = CumulantAssignment::new();
        for (key, value) in map {
            kappa.set(parse_multiset_key(key)?, parse_rational(value)?);
        }
        Ok(kappa)
    }

    pub fn moment_assignment(&self) -> Result<MomentAssignment> {
        let map = self
            .moments
            .as_ref()
            .ok_or_else(|| Error::InvalidDocument("no \"moments\" map in file".into()))?;
        let mut mu = MomentAssignment::new();
        for (key, value) in map {
            mu.set(parse_multiset_key(key)?, parse_rational(value)?);
        }
        Ok(mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::expand_composition;
    use crate::product::expand_product;

    #[test]
    fn composition_doc_round_trips() {
        let tau = Multiset::from_entries([(1, 1), (2, 2)]);
        let e = expand_composition(&tau).unwrap();
        let doc = ExpansionDoc::from(&e);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: ExpansionDoc = serde_json::from_str(&json).unwrap();
        let back = CompositionExpansion::try_from(&parsed).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn product_doc_round_trips() {
        let tau = Multiset::from_entries([(1, 2), (3, 1)]);
        let e = expand_product(&tau);
        let doc = ProductExpansionDoc::from(&e);
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: ProductExpansionDoc = serde_json::from_str(&json).unwrap();
        let back = ProductExpansion::try_from(&parsed).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn corrupted_documents_are_rejected() {
        let tau = Multiset::from_entries([(1, 2)]);
        let mut doc = ExpansionDoc::from(&expand_composition(&tau).unwrap());
        doc.terms[0].coefficient = "not-a-number".into();
        assert!(CompositionExpansion::try_from(&doc).is_err());
        let mut doc2 = ExpansionDoc::from(&expand_composition(&tau).unwrap());
        doc2.terms[0].f_order += 1;
        assert!(CompositionExpansion::try_from(&doc2).is_err());
    }

    #[test]
    fn verification_reports_serialize() {
        use crate::oracle::{verify_composition, CompositionContext, F_ARG};
        use crate::poly::Polynomial;
        let tau = Multiset::from_entries([(1, 2)]);
        let ctx = CompositionContext {
            f: Polynomial::var(F_ARG).pow(2),
            y: Polynomial::var(1),
            point: [(1, num_rational::BigRational::from_integer(3.into()))]
                .into_iter()
                .collect(),
        };
        let report = verify_composition(&tau, &ctx).unwrap();
        let doc = VerificationDoc::from(&report);
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.contains("\"kind\":\"composition\""));
        assert!(json.contains("\"equal\":true"));
        let parsed: VerificationDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.direct, report.direct.to_string());
    }

    #[test]
    fn multiset_key_round_trips() {
        let ms = Multiset::from_entries([(1, 4), (5, 2), (7, 1)]);
        let key = multiset_key(&ms);
        assert_eq!(key, "1:4,5:2,7:1");
        assert_eq!(parse_multiset_key(&key).unwrap(), ms);
        assert!(parse_multiset_key("1:0").is_err());
        assert!(parse_multiset_key("nope").is_err());
    }

    #[test]
    fn assignment_file_parses_both_maps() {
        let json = r#"{
            "target": "1:3",
            "cumulants": { "1:1": "1/2", "1:2": "3", "1:3": "-2/5" }
        }"#;
        let doc: AssignmentFileDoc = serde_json::from_str(json).unwrap();
        assert_eq!(
            doc.target_multiset().unwrap(),
            Multiset::from_entries([(1, 3)])
        );
        let kappa = doc.cumulant_assignment().unwrap();
        assert_eq!(kappa.len(), 3);
        assert!(doc.moment_assignment().is_err());
    }
}
