//! JSON encoding of a bundle: `{"family":"spc","level":5,"weights":[4,4,4,4]}`.

use cblocks::{BundleSpec, Family};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpecWire {
    pub family: Family,
    pub level: u32,
    pub weights: Vec<u32>,
}

impl BundleSpecWire {
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn emit(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Keeps the weights in the given point order.
    pub fn to_bundle(&self) -> cblocks::Result<BundleSpec> {
        BundleSpec::labeled(self.family, self.level, self.weights.clone())
    }
}

impl From<&BundleSpec> for BundleSpecWire {
    fn from(b: &BundleSpec) -> Self {
        BundleSpecWire {
            family: b.family(),
            level: b.level(),
            weights: b.marked_weights().to_vec(),
        }
    }
}
