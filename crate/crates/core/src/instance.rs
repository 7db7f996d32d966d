//! JSON input schemas shared by the CLI, counterexample dumps and bindings.
//!
//! Partition instances:
//! `{"space": {"size": n, "probs": ["1/4", ...]}, "elements": {"1": "1,2|3|4", ...}}`
//! (`space` may be replaced by `"ground_size": n` for a uniform space).
//!
//! Group instances:
//! `{"degree": n, "groups": {"1": ["(1 2 3)"], ...}, "ambient_order": 120}`
//! (`ambient_order` defaults to `n!`).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::partitions::{InfoElement, Partition, ProbabilitySpace};
use crate::perm_groups::{factorial_u128, PermGroup};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<ProbabilitySpace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_size: Option<usize>,
    pub elements: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub groups: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_order: Option<u64>,
}

/// Parsed partition instance on a common probability space.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionInstance {
    pub space: Arc<ProbabilitySpace>,
    pub elements: Vec<Partition>,
}

/// Parsed group instance; groups are numbered from 1.
#[derive(Debug, Clone)]
pub struct GroupInstance {
    pub degree: usize,
    pub groups: Vec<PermGroup>,
    pub ambient_order: u128,
}

#[derive(Debug, Clone)]
pub enum Instance {
    Partitions(PartitionInstance),
    Groups(GroupInstance),
}

/// Orders `{"1": .., "2": ..}` numerically and checks the keys are exactly `1..=n`.
fn numbered<T: Clone>(map: &BTreeMap<String, T>) -> Result<Vec<T>> {
    let mut items = map
        .iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<usize>()
                .map(|i| (i, v.clone()))
                .map_err(|_| Error::Invalid(format!("element key `{k}` is not a positive integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    items.sort_by_key(|(i, _)| *i);
    for (expect, (i, _)) in (1..).zip(&items) {
        if *i != expect {
            return Err(Error::Invalid(format!(
                "element keys must be 1..={}, found {i}",
                items.len()
            )));
        }
    }
    if items.is_empty() {
        return Err(Error::Invalid("no elements given".into()));
    }
    Ok(items.into_iter().map(|(_, v)| v).collect())
}

impl PartitionInstance {
    pub fn new(space: Arc<ProbabilitySpace>, elements: Vec<Partition>) -> Result<Self> {
        if let Some(p) = elements.iter().find(|p| p.ground_size() != space.size()) {
            return Err(Error::GroundSizeMismatch {
                left: p.ground_size(),
                right: space.size(),
            });
        }
        Ok(PartitionInstance { space, elements })
    }

    pub fn from_file(f: &PartitionFile) -> Result<Self> {
        let texts = numbered(&f.elements)?;
        let space = match (&f.space, f.ground_size) {
            (Some(s), _) => s.clone(),
            (None, Some(n)) => ProbabilitySpace::uniform(n)?,
            (None, None) => {
                let n = texts
                    .iter()
                    .flat_map(|t| t.split(['|', ',']))
                    .filter_map(|x| x.trim().parse::<usize>().ok())
                    .max()
                    .unwrap_or(0);
                ProbabilitySpace::uniform(n)?
            }
        };
        let elements = texts
            .iter()
            .map(|t| Partition::parse(t, space.size()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(Arc::new(space), elements)
    }

    pub fn to_file(&self) -> PartitionFile {
        PartitionFile {
            space: Some((*self.space).clone()),
            ground_size: None,
            elements: self
                .elements
                .iter()
                .enumerate()
                .map(|(i, p)| ((i + 1).to_string(), p.to_string()))
                .collect(),
        }
    }

    pub fn info_elements(&self) -> Vec<InfoElement> {
        self.elements
            .iter()
            .map(|p| InfoElement::new(p.clone(), self.space.clone()).expect("sizes checked"))
            .collect()
    }
}

impl GroupInstance {
    pub fn new(degree: usize, groups: Vec<PermGroup>, ambient_order: Option<u128>) -> Result<Self> {
        if let Some(g) = groups.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        let ambient_order = match ambient_order {
            Some(o) => o,
            None => factorial_u128(degree).ok_or(Error::Capacity {
                what: "ambient order digit",
                cap: 38,
            })?,
        };
        Ok(GroupInstance {
            degree,
            groups,
            ambient_order,
        })
    }

    pub fn from_file(f: &GroupFile) -> Result<Self> {
        let gens = numbered(&f.groups)?;
        let groups = gens
            .iter()
            .map(|g| PermGroup::from_cycles(f.degree, g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(f.degree, groups, f.ambient_order.map(u128::from))
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            degree: self.degree,
            groups: self
                .groups
                .iter()
                .enumerate()
                .map(|(i, g)| ((i + 1).to_string(), g.to_json().generators))
                .collect(),
            ambient_order: u64::try_from(self.ambient_order).ok(),
        }
    }
}

impl Instance {
    pub fn from_value(v: &Value) -> Result<Self> {
        let bad = |e: serde_json::Error| Error::Invalid(e.to_string());
        if v.get("groups").is_some() {
            let f: GroupFile = serde_json::from_value(v.clone()).map_err(bad)?;
            Ok(Instance::Groups(GroupInstance::from_file(&f)?))
        } else if v.get("elements").is_some() {
            let f: PartitionFile = serde_json::from_value(v.clone()).map_err(bad)?;
            Ok(Instance::Partitions(PartitionInstance::from_file(&f)?))
        } else {
            Err(Error::Invalid(
                "input needs either an `elements` or a `groups` object".into(),
            ))
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn to_value(&self) -> Value {
        match self {
            Instance::Partitions(p) => serde_json::to_value(p.to_file()),
            Instance::Groups(g) => serde_json::to_value(g.to_file()),
        }
        .expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_file_roundtrip() {
        let text = r#"{"space": {"size": 3, "probs": ["1/2","1/4","1/4"]},
                       "elements": {"2": "1|2,3", "1": "1,2|3"}}"#;
        let Instance::Partitions(p) = Instance::from_json(text).unwrap() else {
            panic!("expected partitions")
        };
        assert_eq!(p.elements[0].to_string(), "1,2|3");
        assert_eq!(p.elements[1].to_string(), "1|2,3");
        let Instance::Partitions(q) =
            Instance::from_value(&Instance::Partitions(p.clone()).to_value()).unwrap()
        else {
            panic!()
        };
        assert_eq!(p, q);
    }

    #[test]
    fn uniform_default_and_key_checks() {
        let Instance::Partitions(p) =
            Instance::from_json(r#"{"elements": {"1": "1,2|3|4"}}"#).unwrap()
        else {
            panic!()
        };
        assert!(p.space.is_uniform());
        assert_eq!(p.space.size(), 4);
        assert!(Instance::from_json(r#"{"elements": {"1": "1|2", "3": "1,2"}}"#).is_err());
        assert!(Instance::from_json(r#"{"nothing": 1}"#).is_err());
    }

    #[test]
    fn group_file() {
        let Instance::Groups(g) = Instance::from_json(
            r#"{"degree": 5, "groups": {"1": ["(1 2 3 4 5)"], "2": ["(1 2)(4 5)"]}}"#,
        )
        .unwrap() else {
            panic!()
        };
        assert_eq!(g.ambient_order, 120);
        assert_eq!(g.groups.len(), 2);
        let back = GroupInstance::from_file(&g.to_file()).unwrap();
        assert_eq!(back.groups[1].generators(), g.groups[1].generators());
    }
}
