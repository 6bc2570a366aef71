//! JSON family documents.
//!
//! ```json
//! { "sets": [["1", "3", "4"], ["2", "3", "4"]], "t": 2, "valuation": [1, 1] }
//! ```
//!
//! Labels may be strings or numbers; numbers are read as their decimal text.
//! Dense element indices follow the first occurrence of each label.

use super::{GroundMap, SetFamily, Valuation};
use crate::bitset::ElementSet;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Label {
    Text(String),
    Number(serde_json::Number),
}

impl Label {
    fn into_string(self) -> String {
        match self {
            Label::Text(s) => s,
            Label::Number(n) => n.to_string(),
        }
    }
}

/// Wire form of a family file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    sets: Vec<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    valuation: Option<Vec<usize>>,
}

/// A parsed family together with its optional metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyFile {
    pub family: SetFamily,
    pub t: Option<usize>,
    pub valuation: Option<Valuation>,
}

impl FamilyFile {
    pub fn new(family: SetFamily) -> Self {
        FamilyFile {
            family,
            t: None,
            valuation: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: FamilyDocument =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        FamilyFile::from_document(doc)
    }

    pub fn from_document(doc: FamilyDocument) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut members = Vec::with_capacity(doc.sets.len());
        for (i, set) in doc.sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyMember { member: i });
            }
            let mut member = ElementSet::new();
            for label in set {
                let label = label.into_string();
                let next = labels.len();
                let x = *index.entry(label.clone()).or_insert_with(|| {
                    labels.push(label.clone());
                    next
                });
                if !member.insert(x) {
                    return Err(Error::DuplicateLabel { member: i, label });
                }
            }
            members.push(member);
        }
        let family = SetFamily::new(members, GroundMap::new(labels)?)?;
        let valuation = match doc.valuation {
            Some(a) => {
                let a = Valuation::new(a)?;
                a.check_len(family.n())?;
                Some(a)
            }
            None => None,
        };
        Ok(FamilyFile {
            family,
            t: doc.t,
            valuation,
        })
    }

    /// Labels are written in first-occurrence order, so parsing the output
    /// reproduces the same dense indexing and the text is a fixed point.
    pub fn to_document(&self) -> FamilyDocument {
        let family = &self.family;
        let mut rank = vec![usize::MAX; family.m()];
        let mut next = 0;
        for member in family.members() {
            for x in member.iter() {
                if rank[x] == usize::MAX {
                    rank[x] = next;
                    next += 1;
                }
            }
        }
        FamilyDocument {
            sets: family
                .members()
                .iter()
                .map(|s| {
                    let mut xs: Vec<usize> = s.iter().collect();
                    xs.sort_by_key(|&x| rank[x]);
                    xs.into_iter()
                        .map(|x| Label::Text(family.label(x).to_string()))
                        .collect()
                })
                .collect(),
            t: self.t,
            valuation: self.valuation.as_ref().map(|a| a.as_slice().to_vec()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_document()).expect("family documents serialize")
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("family documents serialize")
    }
}

/// Parses a family document, discarding metadata.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    FamilyFile::parse(text).map(|f| f.family)
}

/// Serializes a family with no metadata.
pub fn serialize_family(family: &SetFamily) -> String {
    FamilyFile::new(family.clone()).to_string_pretty()
}
