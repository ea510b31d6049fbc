//! Deterministic IRI minting: `<base>/<kind>/<stable-hash>` where the
//! hash covers (dataset, kind, natural key), so re-running a pipeline on
//! the same inputs reproduces the same individuals.

use sha2::{Digest, Sha256};

use crate::rdf::Node;

#[derive(Debug, Clone)]
pub struct IdMinter {
    base: String,
    dataset: String,
}

impl IdMinter {
    pub fn new(base_iri: &str, dataset: &str) -> IdMinter {
        IdMinter {
            base: base_iri.trim_end_matches('/').to_string(),
            dataset: dataset.to_string(),
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn dataset(&self) -> &str {
        &self.dataset
    }

    pub fn mint(&self, kind: &str, natural_key: &str) -> Node {
        let digest = Sha256::digest(format!("{}\u{1f}{}\u{1f}{}", self.dataset, kind, natural_key));
        let hash: String = digest[..6].iter().map(|b| format!("{b:02x}")).collect();
        Node::iri(format!("{}/{}/{}", self.base, kind, hash))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minting_is_stable() {
        let m1 = IdMinter::new("https://d.example/data/", "run1");
        let m2 = IdMinter::new("https://d.example/data", "run1");
        assert_eq!(m1.mint("act", "truck1"), m2.mint("act", "truck1"));
    }

    #[test]
    fn distinct_keys_mint_distinct_iris() {
        let m = IdMinter::new("https://d.example/data", "run1");
        assert_ne!(m.mint("act", "truck1"), m.mint("act", "truck2"));
        assert_ne!(m.mint("act", "truck1"), m.mint("region", "truck1"));
    }

    #[test]
    fn dataset_scopes_the_hash() {
        let a = IdMinter::new("https://d.example/data", "a");
        let b = IdMinter::new("https://d.example/data", "b");
        assert_ne!(a.mint("act", "k"), b.mint("act", "k"));
    }
}
