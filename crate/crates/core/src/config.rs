//! Run configuration: a flat, versioned TOML file. Command-line flags
//! override file keys; explicit cone keys override a builtin's cone.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::builtins;
use crate::conelattice::ConeSpec;
use crate::error::{Error, Result};
use crate::groupring::MultiLaurentPoly;
use crate::pipeline::{RayFamily, Settings};
use crate::rootbox::Precision;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<MultiLaurentPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray: Option<RayFamily>,
}

/// A polynomial with its cone, ready for analysis.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: Option<String>,
    pub theta: MultiLaurentPoly,
    pub cone: ConeSpec,
    pub height_index: usize,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let c: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if c.version != CONFIG_VERSION {
            return Err(Error::Config(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                c.version
            )));
        }
        Ok(c)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs always serialize")
    }

    /// Copies every key set in `other` over this one.
    pub fn overlay(&mut self, other: RunConfig) {
        macro_rules! take {
            ($($f:ident),*) => {$(if other.$f.is_some() { self.$f = other.$f; })*};
        }
        take!(
            name, builtin, polynomial, inequalities, witness, norm, height_index, bound,
            precision_bits, workers, csv, json, svg, ray
        );
    }

    pub fn problem(&self) -> Result<Problem> {
        let (name, theta, base) = match (&self.builtin, &self.polynomial) {
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "give either a builtin or a polynomial, not both".into(),
                ))
            }
            (None, None) => return Err(Error::Config("no polynomial given".into())),
            (Some(b), None) => {
                let b = builtins::by_name(b).ok_or_else(|| {
                    Error::Config(format!(
                        "unknown builtin {b:?} (known: {})",
                        builtins::NAMES.join(", ")
                    ))
                })?;
                (Some(b.name.to_string()), b.theta, Some((b.cone, b.height_index)))
            }
            (None, Some(p)) => (None, p.clone(), None),
        };
        let ineqs = self
            .inequalities
            .clone()
            .or_else(|| base.as_ref().map(|(c, _)| c.ineqs().to_vec()))
            .ok_or_else(|| Error::Config("cone inequalities missing".into()))?;
        let witness = self
            .witness
            .clone()
            .or_else(|| base.as_ref().map(|(c, _)| c.witness().to_vec()))
            .ok_or_else(|| Error::Config("cone witness missing".into()))?;
        let norm = self
            .norm
            .clone()
            .or_else(|| base.as_ref().and_then(|(c, _)| c.norm().map(<[i64]>::to_vec)));
        let cone = ConeSpec::new(ineqs, norm, witness).map_err(|e| Error::Config(e.to_string()))?;
        if cone.dim() != theta.nvars() {
            return Err(Error::Config(format!(
                "cone has dimension {} but the polynomial has {} variables",
                cone.dim(),
                theta.nvars()
            )));
        }
        let height_index = self
            .height_index
            .or(base.map(|(_, h)| h))
            .unwrap_or(cone.dim() - 1);
        if height_index >= cone.dim() {
            return Err(Error::Config(format!("height index {height_index} out of range")));
        }
        Ok(Problem {
            name: self.name.clone().or(name),
            theta,
            cone,
            height_index,
        })
    }

    pub fn bound(&self) -> Result<i64> {
        let b = self.bound.ok_or_else(|| Error::Config("scan bound missing".into()))?;
        if b < 1 {
            return Err(Error::Config(format!("bound must be at least 1, got {b}")));
        }
        Ok(b)
    }

    pub fn settings(&self) -> Result<Settings> {
        let mut precision = Precision::default();
        if let Some(bits) = self.precision_bits {
            if bits < precision.start_bits {
                return Err(Error::Config(format!(
                    "precision ceiling must be at least {} bits",
                    precision.start_bits
                )));
            }
            precision.ceiling_bits = bits;
        }
        Ok(Settings {
            precision,
            workers: self.workers.unwrap_or(0),
        })
    }
}
