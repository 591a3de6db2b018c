//! TOML class files.
//!
//! ```toml
//! [[class]]
//! label = "2B"
//! factors = [[1, 24], [2, -24]]
//!
//! [[class]]
//! label = "toy"
//! N = 1
//! cm0 = [0, 1, 0, 0]
//! c1n = [1, 0, 0, 0]
//!
//! [[class]]
//! label = "2B-perturbed"
//! factors = [[1, 24], [2, -24]]
//! cm0_override = [[1, 25]]
//! ```
//!
//! A record either names eta factors or gives both sequences directly.
//! Overrides replace single sequence entries while leaving the series
//! untouched, which is how inconsistent input is constructed on purpose.

use num_bigint::BigInt;
use serde::Deserialize;

use super::{build_class, EtaQuotient, MoonshineClass};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    #[serde(default)]
    class: Vec<ClassRepr>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassRepr {
    label: String,
    factors: Option<Vec<(u64, i64)>>,
    #[serde(rename = "N")]
    n: Option<u64>,
    cm0: Option<Vec<i64>>,
    c1n: Option<Vec<i64>>,
    #[serde(default)]
    cm0_override: Vec<(u64, i64)>,
    #[serde(default)]
    c1n_override: Vec<(u64, i64)>,
}

/// One parsed class record, not yet expanded.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassDef {
    pub label: String,
    pub source: ClassSource,
    pub cm0_override: Vec<(u64, BigInt)>,
    pub c1n_override: Vec<(u64, BigInt)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassSource {
    Eta(EtaQuotient),
    Sequences {
        n: u64,
        cm0: Vec<BigInt>,
        c1n: Vec<BigInt>,
    },
}

impl ClassDef {
    /// Expands the record through `order` terms.
    pub fn build(&self, order: i64) -> Result<MoonshineClass> {
        let class = match &self.source {
            ClassSource::Eta(eq) => build_class(&self.label, eq, order)?,
            ClassSource::Sequences { n, cm0, c1n } => {
                MoonshineClass::from_sequences(&self.label, *n, cm0.clone(), c1n.clone())?
            }
        };
        if self.cm0_override.is_empty() && self.c1n_override.is_empty() {
            Ok(class)
        } else {
            class.with_overrides(&self.cm0_override, &self.c1n_override)
        }
    }
}

fn bigs(v: &[(u64, i64)]) -> Vec<(u64, BigInt)> {
    v.iter().map(|&(i, x)| (i, BigInt::from(x))).collect()
}

pub fn parse_class_file(text: &str) -> Result<Vec<ClassDef>> {
    let file: FileRepr = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.class.is_empty() {
        return Err(Error::Parse("class file contains no [[class]] records".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    file.class
        .into_iter()
        .map(|r| {
            if !seen.insert(r.label.clone()) {
                return Err(Error::Parse(format!("duplicate class label {:?}", r.label)));
            }
            let source = match (r.factors, r.n, r.cm0, r.c1n) {
                (Some(f), None, None, None) => ClassSource::Eta(
                    EtaQuotient::new(f)
                        .map_err(|e| Error::Parse(format!("class {:?}: {e}", r.label)))?,
                ),
                (None, Some(n), Some(cm0), Some(c1n)) => ClassSource::Sequences {
                    n,
                    cm0: cm0.into_iter().map(BigInt::from).collect(),
                    c1n: c1n.into_iter().map(BigInt::from).collect(),
                },
                _ => {
                    return Err(Error::Parse(format!(
                        "class {:?}: give either `factors`, or all of `N`, `cm0` and `c1n`",
                        r.label
                    )))
                }
            };
            Ok(ClassDef {
                label: r.label,
                source,
                cm0_override: bigs(&r.cm0_override),
                c1n_override: bigs(&r.c1n_override),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_record_kinds() {
        let text = r#"
            [[class]]
            label = "2B"
            factors = [[1, 24], [2, -24]]

            [[class]]
            label = "toy"
            N = 1
            cm0 = [0, 1, 0]
            c1n = [1, 0, 0]

            [[class]]
            label = "bad"
            factors = [[1, 24], [2, -24]]
            cm0_override = [[1, 25]]
        "#;
        let defs = parse_class_file(text).unwrap();
        assert_eq!(defs.len(), 3);
        assert_eq!(defs[0].source, ClassSource::Eta(EtaQuotient::class_2b()));
        assert!(defs[1].build(3).is_ok());
        let bad = defs[2].build(6).unwrap();
        assert!(bad.is_overridden());
    }

    #[test]
    fn rejects_malformed_files() {
        for text in [
            "",
            "[[class]]\nlabel = \"x\"\n",
            "[[class]]\nlabel = \"x\"\nfactors = [[1, 0]]\n",
            "[[class]]\nlabel = \"x\"\nfactors = [[2, 1], [2, -1]]\n",
            "[[class]]\nlabel = \"x\"\nfactors = [[1, 1.5]]\n",
            "[[class]]\nlabel = \"x\"\nfactors = [[1, 1]]\n[[class]]\nlabel = \"x\"\nfactors = [[2, 1]]\n",
        ] {
            assert!(
                matches!(parse_class_file(text), Err(Error::Parse(_))),
                "accepted {text:?}"
            );
        }
    }
}
