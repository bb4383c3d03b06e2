//! Group files bundled under `data/groups`, verified against their SHA-256 sums.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::io::GroupSpec;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CorpusEntry {
    pub key: &'static str,
    pub order: u64,
    #[serde(skip)]
    text: &'static str,
}

macro_rules! entry {
    ($key:literal, $order:expr) => {
        CorpusEntry { key: $key, order: $order, text: include_str!(concat!("../../../data/groups/", $key, ".json")) }
    };
}

const SUMS: &str = include_str!("../../../data/groups/SHA256SUMS");

pub const ENTRIES: &[CorpusEntry] = &[
    entry!("a4", 12),
    entry!("a5", 60),
    entry!("a5wrc2", 7200),
    entry!("a6", 360),
    entry!("agl1_7", 42),
    entry!("c2", 2),
    entry!("c2_3", 8),
    entry!("c3", 3),
    entry!("c3_c4", 12),
    entry!("c4", 4),
    entry!("c5", 5),
    entry!("c6", 6),
    entry!("c7_c3", 21),
    entry!("d10", 10),
    entry!("d12", 12),
    entry!("d8", 8),
    entry!("f20", 20),
    entry!("psl2_7", 168),
    entry!("q8", 8),
    entry!("s3", 6),
    entry!("s3xs3", 36),
    entry!("s4", 24),
    entry!("s5", 120),
    entry!("s6", 720),
    entry!("sl2_3", 24),
    entry!("sl2_5", 120),
    entry!("v4", 4),
];

impl CorpusEntry {
    pub fn text(&self) -> &'static str {
        self.text
    }

    pub fn spec(&self) -> Result<GroupSpec> {
        self.verify()?;
        serde_json::from_str(self.text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn display_name(&self) -> String {
        self.spec().ok().and_then(|s| s.name).unwrap_or_else(|| self.key.to_string())
    }

    pub fn group(&self) -> Result<Group> {
        self.group_with(Limits::default())
    }

    pub fn group_with(&self, limits: Limits) -> Result<Group> {
        self.spec()?.to_group(limits)
    }

    pub fn verify(&self) -> Result<()> {
        let file = format!("{}.json", self.key);
        let expected = SUMS
            .lines()
            .find_map(|l| l.split_once("  ").filter(|(_, f)| *f == file).map(|(h, _)| h))
            .ok_or_else(|| Error::Checksum(file.clone()))?;
        let digest = Sha256::digest(self.text.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        if hex == expected { Ok(()) } else { Err(Error::Checksum(file)) }
    }
}

pub fn entry(key: &str) -> Result<&'static CorpusEntry> {
    ENTRIES
        .iter()
        .find(|e| e.key == key)
        .ok_or_else(|| Error::InvalidArgument(format!("no corpus group named {key}")))
}

pub fn load(key: &str) -> Result<Group> {
    entry(key)?.group()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_matches_its_checksum_and_order() {
        for e in ENTRIES {
            let g = e.group().unwrap();
            assert_eq!(g.order_u64(), Some(e.order), "{}", e.key);
        }
    }

    #[test]
    fn unknown_key() {
        assert!(load("m24").is_err());
    }
}
