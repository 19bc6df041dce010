//! Model documents: the JSON description of one group descriptor.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Deserialize;
use spectral_cic::LGroupDescriptor;

pub const DEFAULT_MAX_COORDINATES: usize = 64;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelDocument {
    Lex { rank: u64 },
    Product { components: Vec<ModelDocument> },
}

impl ModelDocument {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        serde_json::from_str(text).context("model document is not valid")
    }

    pub fn into_descriptor(self, max_coordinates: usize) -> anyhow::Result<LGroupDescriptor> {
        let desc = self.convert()?;
        let count = desc.coordinate_count();
        if count > max_coordinates {
            bail!("model has {count} coordinates, limit is {max_coordinates}");
        }
        Ok(desc)
    }

    fn convert(self) -> anyhow::Result<LGroupDescriptor> {
        match self {
            ModelDocument::Lex { rank: 0 } => bail!("\"rank\" must be at least 1"),
            ModelDocument::Lex { rank } => Ok(LGroupDescriptor::lex(
                usize::try_from(rank).context("\"rank\" is too large")?,
            )),
            ModelDocument::Product { components } if components.is_empty() => {
                bail!("\"components\" must not be empty")
            }
            ModelDocument::Product { components } => Ok(LGroupDescriptor::product(
                components
                    .into_iter()
                    .map(ModelDocument::convert)
                    .collect::<anyhow::Result<_>>()?,
            )),
        }
    }
}

/// Reads a model from `path`, or from standard input when `path` is absent
/// or `-`.
pub fn load(path: Option<&Path>, max_coordinates: usize) -> anyhow::Result<LGroupDescriptor> {
    let text = match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("cannot read standard input")?;
            buf
        }
    };
    ModelDocument::parse(&text)?.into_descriptor(max_coordinates)
}
