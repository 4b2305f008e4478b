//! JSON documents for posets, involutive posets and algebras.

use std::collections::BTreeMap;

use morgan_unify::algebra::FiniteAlgebra;
use morgan_unify::involutive::InvPoset;
use morgan_unify::order::Poset;
use morgan_unify::unification::Structure;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Poset,
    Invposet,
    Algebra,
}

/// The serialized form. Exactly one of `covers` and `le` carries the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub kind: Kind,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub le: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Covers,
    Le,
}

/// A validated document.
#[derive(Clone, Debug)]
pub enum Parsed {
    Poset(Poset),
    Inv(InvPoset),
    Algebra(FiniteAlgebra),
}

impl Parsed {
    /// The dual structure: the poset itself, or the dual of an algebra.
    pub fn structure(&self) -> Result<Structure, CliError> {
        Ok(match self {
            Parsed::Poset(p) => Structure::Plain(p.clone()),
            Parsed::Inv(q) => Structure::Involutive(q.clone()),
            Parsed::Algebra(a) if a.neg().is_some() => Structure::Involutive(morgan_unify::duality::demorgan_dual(a)?),
            Parsed::Algebra(a) => Structure::Plain(morgan_unify::duality::join_irreducibles(a)),
        })
    }
}

fn pairs(p: &Poset, mode: Mode) -> Vec<[String; 2]> {
    let list = match mode {
        Mode::Covers => p.covers(),
        Mode::Le => p.relation().into_iter().filter(|(a, b)| a != b).collect(),
    };
    list.into_iter().map(|(a, b)| [p.name(a).to_string(), p.name(b).to_string()]).collect()
}

fn name_map(p: &Poset, f: &[usize]) -> BTreeMap<String, String> {
    p.elements().map(|x| (p.name(x).to_string(), p.name(f[x]).to_string())).collect()
}

fn order_doc(kind: Kind, p: &Poset, mode: Mode) -> Document {
    let (covers, le) = match mode {
        Mode::Covers => (Some(pairs(p, mode)), None),
        Mode::Le => (None, Some(pairs(p, mode))),
    };
    Document { kind, elements: p.names().to_vec(), covers, le, inv: None, neg: None }
}

impl Document {
    pub fn poset(p: &Poset, mode: Mode) -> Document {
        order_doc(Kind::Poset, p, mode)
    }

    pub fn invposet(q: &InvPoset, mode: Mode) -> Document {
        Document { inv: Some(name_map(q.base(), q.inv())), ..order_doc(Kind::Invposet, q.base(), mode) }
    }

    pub fn algebra(a: &FiniteAlgebra, mode: Mode) -> Document {
        Document { neg: a.neg().map(|n| name_map(a.carrier(), n)), ..order_doc(Kind::Algebra, a.carrier(), mode) }
    }

    pub fn structure(s: &Structure, mode: Mode) -> Document {
        match s {
            Structure::Plain(p) => Document::poset(p, mode),
            Structure::Involutive(q) => Document::invposet(q, mode),
        }
    }

    pub fn parse(text: &str) -> Result<Document, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))
    }

    pub fn mode(&self) -> Mode {
        if self.le.is_some() {
            Mode::Le
        } else {
            Mode::Covers
        }
    }

    /// Builds and validates the structure the document describes.
    pub fn validate(&self) -> Result<Parsed, CliError> {
        let base = match (&self.covers, &self.le) {
            (Some(_), Some(_)) => return Err(CliError::Json("give either `covers` or `le`, not both".into())),
            (Some(c), None) => Poset::from_covers(&self.elements, &as_tuples(c))?,
            (None, Some(l)) => Poset::from_le(&self.elements, &as_tuples(l))?,
            (None, None) => Poset::from_le::<String>(&self.elements, &[])?,
        };
        match self.kind {
            Kind::Poset => {
                self.forbid(self.inv.is_some(), "inv")?;
                self.forbid(self.neg.is_some(), "neg")?;
                Ok(Parsed::Poset(base))
            }
            Kind::Invposet => {
                self.forbid(self.neg.is_some(), "neg")?;
                let inv = self.inv.as_ref().ok_or_else(|| CliError::Json("an invposet needs `inv`".into()))?;
                Ok(Parsed::Inv(InvPoset::from_names(base, &borrowed(inv))?))
            }
            Kind::Algebra => {
                self.forbid(self.inv.is_some(), "inv")?;
                let neg = self.neg.as_ref().map(borrowed);
                Ok(Parsed::Algebra(FiniteAlgebra::from_names(base, neg.as_deref())?))
            }
        }
    }

    fn forbid(&self, present: bool, field: &str) -> Result<(), CliError> {
        if present {
            return Err(CliError::Json(format!("a {:?} document has no `{field}`", self.kind).to_lowercase()));
        }
        Ok(())
    }

    /// The canonical form: same kind and relation style, pairs in element order.
    pub fn canonical(&self) -> Result<Document, CliError> {
        let mode = self.mode();
        Ok(match self.validate()? {
            Parsed::Poset(p) => Document::poset(&p, mode),
            Parsed::Inv(q) => Document::invposet(&q, mode),
            Parsed::Algebra(a) => Document::algebra(&a, mode),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("documents serialize")
    }
}

fn as_tuples(pairs: &[[String; 2]]) -> Vec<(String, String)> {
    pairs.iter().map(|[a, b]| (a.clone(), b.clone())).collect()
}

fn borrowed(m: &BTreeMap<String, String>) -> Vec<(&str, &str)> {
    m.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_document_round_trips() {
        let text = r#"{"kind":"invposet","elements":["2","0","1","3"],"covers":[["2","0"],["2","1"],["0","3"],["1","3"]],"inv":{"0":"0","1":"1","2":"3","3":"2"}}"#;
        let doc = Document::parse(text).unwrap();
        assert_eq!(serde_json::to_string(&doc.canonical().unwrap()).unwrap(), text);
    }

    #[test]
    fn le_documents_keep_their_style() {
        let text = r#"{"kind":"poset","elements":["a","b","c"],"le":[["b","c"],["a","b"]]}"#;
        let doc = Document::parse(text).unwrap().canonical().unwrap();
        assert_eq!(doc.le.as_ref().unwrap().len(), 3);
        assert_eq!(doc.canonical().unwrap(), doc);
    }

    #[test]
    fn invalid_documents() {
        let cyclic = r#"{"kind":"poset","elements":["a","b"],"covers":[["a","b"],["b","a"]]}"#;
        assert!(matches!(Document::parse(cyclic).unwrap().validate(), Err(CliError::Core(_))));
        let missing = r#"{"kind":"invposet","elements":["a"]}"#;
        assert!(matches!(Document::parse(missing).unwrap().validate(), Err(CliError::Json(_))));
        assert!(Document::parse(r#"{"kind":"poset","elements":[],"extra":1}"#).is_err());
    }
}
