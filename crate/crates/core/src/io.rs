//! JSON exchange format for permutation groups.
//!
//! ```json
//! {"degree": 5, "generators": ["(0,1,2,3,4)", [1, 0, 2, 3, 4]]}
//! ```
//!
//! Generators may be cycle strings or image arrays; output always uses image
//! arrays.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::perm::Permutation;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Cycles(String),
    Images(Vec<u32>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupSpec {
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| match g {
                GeneratorSpec::Cycles(s) => Permutation::from_cycles(self.degree, s),
                GeneratorSpec::Images(v) => {
                    if v.len() != self.degree {
                        return Err(Error::DegreeMismatch { expected: self.degree, found: v.len() });
                    }
                    Permutation::from_images(v.clone())
                }
            })
            .collect()
    }

    pub fn to_group(&self, limits: Limits) -> Result<Group> {
        Group::with_limits(self.degree, self.permutations()?, limits)
    }

    pub fn from_group(g: &Group, name: Option<String>) -> GroupSpec {
        GroupSpec {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| GeneratorSpec::Images(p.images().to_vec())).collect(),
            name,
        }
    }
}

pub fn parse_group(text: &str) -> Result<Group> {
    parse_group_with(text, Limits::default())
}

pub fn parse_group_with(text: &str, limits: Limits) -> Result<Group> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.to_group(limits)
}

pub fn group_to_json(g: &Group) -> String {
    serde_json::to_string(&GroupSpec::from_group(g, None)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_generator_forms() {
        let g = parse_group(r#"{"degree": 4, "generators": ["(0,1,2,3)", [1,0,2,3]]}"#).unwrap();
        assert_eq!(g.order_u64(), Some(24));
        let back = parse_group(&group_to_json(&g)).unwrap();
        assert_eq!(back.order_u64(), Some(24));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_group(r#"{"degree": 3, "generators": [[0,1]]}"#).is_err());
        assert!(parse_group(r#"{"degree": 3, "generators": ["(0,5)"]}"#).is_err());
        assert!(parse_group("not json").is_err());
    }
}
