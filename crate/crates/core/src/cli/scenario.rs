//! Strict reader for scenario files.
//!
//! ```json
//! {
//!   "channel": {"name": "p -> pi0 e+", "parent_mass_mev": 938.272,
//!               "product_masses_mev": [134.9768, 0.511]},
//!   "lifetime": {"value": 1e31, "unit": "years"},
//!   "model": {"kind": "localization",
//!             "params": {"v": {"value": 1, "unit": "c"},
//!                        "r": {"value": 10, "unit": "cm"}}},
//!   "campaign_limit": {"value": 10, "unit": "years"},
//!   "safety_factor": 1.0,
//!   "output": {"format": "csv", "path": "report.csv"}
//! }
//! ```
//!
//! Unknown keys anywhere are rejected and every error names the offending
//! key path (`model.params.r.value`).

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde_json::{Map, Value};

use super::OutputFormat;
use crate::bounds::Scenario;
use crate::channels::DecayChannel;
use crate::error::{Error, Result};
use crate::spread_models::SpreadModel;
use crate::units::{Dimension, PhysQuantity, Unit};

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub scenario: Scenario,
    pub output_format: Option<OutputFormat>,
    pub output_path: Option<PathBuf>,
}

fn at(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("{path}: {msg}"))
}

fn join(parent: &str, key: &str) -> String {
    if parent.is_empty() {
        key.to_string()
    } else {
        format!("{parent}.{key}")
    }
}

struct Node<'a> {
    value: &'a Value,
    path: String,
}

struct Fields<'a> {
    map: &'a Map<String, Value>,
    path: String,
    seen: BTreeSet<&'static str>,
}

impl<'a> Node<'a> {
    fn fields(&self) -> Result<Fields<'a>> {
        match self.value {
            Value::Object(map) => Ok(Fields {
                map,
                path: self.path.clone(),
                seen: BTreeSet::new(),
            }),
            other => Err(at(&self.path, format!("expected an object, found {}", kind_of(other)))),
        }
    }

    fn number(&self) -> Result<f64> {
        self.value
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| at(&self.path, format!("expected a finite number, found {}", kind_of(self.value))))
    }

    fn positive(&self) -> Result<f64> {
        let x = self.number()?;
        if x > 0.0 {
            Ok(x)
        } else {
            Err(at(&self.path, format!("must be > 0, got {x}")))
        }
    }

    fn string(&self) -> Result<&'a str> {
        self.value
            .as_str()
            .ok_or_else(|| at(&self.path, format!("expected a string, found {}", kind_of(self.value))))
    }

    fn array(&self) -> Result<&'a [Value]> {
        self.value
            .as_array()
            .map(Vec::as_slice)
            .ok_or_else(|| at(&self.path, format!("expected an array, found {}", kind_of(self.value))))
    }

    /// `{value, unit}` object, or a bare number in `default_unit`.
    fn quantity(&self, dim: Dimension, default_unit: Unit) -> Result<PhysQuantity> {
        let (value, unit) = match self.value {
            Value::Number(_) => (self.positive()?, default_unit),
            _ => {
                let mut f = self.fields()?;
                let value = f.required("value")?.positive()?;
                let unit_node = f.required("unit")?;
                let unit: Unit = unit_node
                    .string()?
                    .parse()
                    .map_err(|e| at(&unit_node.path, e))?;
                if unit.dimension() != dim {
                    return Err(at(
                        &unit_node.path,
                        format!("unit `{unit}` is {}, expected {dim}", unit.dimension()),
                    ));
                }
                f.finish()?;
                (value, unit)
            }
        };
        PhysQuantity::new(value, unit).map_err(|e| at(&self.path, e))
    }
}

impl<'a> Fields<'a> {
    fn optional(&mut self, key: &'static str) -> Option<Node<'a>> {
        self.seen.insert(key);
        self.map.get(key).map(|value| Node {
            value,
            path: join(&self.path, key),
        })
    }

    fn required(&mut self, key: &'static str) -> Result<Node<'a>> {
        let path = join(&self.path, key);
        self.optional(key).ok_or_else(|| at(&path, "missing required key"))
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().find(|k| !self.seen.contains(k.as_str())) {
            Some(k) => Err(at(&join(&self.path, k), "unknown key")),
            None => Ok(()),
        }
    }
}

fn kind_of(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn read_channel(node: Node<'_>) -> Result<DecayChannel> {
    let mut f = node.fields()?;
    let name = f.required("name")?.string()?.to_string();
    let parent = f.required("parent_mass_mev")?.positive()?;
    let products_node = f.required("product_masses_mev")?;
    let mut products = Vec::new();
    for (i, v) in products_node.array()?.iter().enumerate() {
        let item = Node {
            value: v,
            path: format!("{}[{i}]", products_node.path),
        };
        let m = item.number()?;
        if m < 0.0 {
            return Err(at(&item.path, format!("must be >= 0, got {m}")));
        }
        products.push(m);
    }
    f.finish()?;
    DecayChannel::from_mev(name, parent, &products).map_err(|e| at(&node.path, e))
}

fn read_model(node: Node<'_>, channel: &DecayChannel) -> Result<SpreadModel> {
    let mut f = node.fields()?;
    let kind_node = f.required("kind")?;
    let kind = kind_node.string()?;
    let params = f.optional("params");
    f.finish()?;

    let params_path = join(&node.path, "params");
    let empty = Map::new();
    let mut p = match &params {
        Some(n) => n.fields()?,
        None => Fields {
            map: &empty,
            path: params_path,
            seen: BTreeSet::new(),
        },
    };
    let model = match kind {
        "symmetric_resonance" => SpreadModel::symmetric_resonance(channel.clone()),
        "step_cutoff_gut" => {
            let m = p.required("m")?.quantity(Dimension::ENERGY, Unit::GeV)?;
            SpreadModel::step_cutoff_gut(m, channel.clone()).map_err(|e| at(&p.path, e))?
        }
        "localization" => {
            let v_node = p.required("v")?;
            let v = v_node.quantity(Dimension::SPEED, Unit::SpeedOfLight)?;
            let r = p.required("r")?.quantity(Dimension::LENGTH, Unit::Centimeter)?;
            SpreadModel::localization(v, r).map_err(|e| at(&v_node.path, e))?
        }
        other => {
            return Err(at(
                &kind_node.path,
                format!("unknown model kind `{other}` (expected symmetric_resonance|step_cutoff_gut|localization)"),
            ))
        }
    };
    p.finish()?;
    Ok(model)
}

fn read_output(node: Node<'_>) -> Result<(Option<OutputFormat>, Option<PathBuf>)> {
    let mut f = node.fields()?;
    let format = match f.optional("format") {
        Some(n) => Some(match n.string()? {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => return Err(at(&n.path, format!("unknown format `{other}` (expected csv|json)"))),
        }),
        None => None,
    };
    let path = match f.optional("path") {
        Some(n) => Some(PathBuf::from(n.string()?)),
        None => None,
    };
    f.finish()?;
    Ok((format, path))
}

pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
    let root = Node {
        value: &root,
        path: String::new(),
    };
    let mut f = root.fields().map_err(|_| Error::Config("top level must be a JSON object".into()))?;

    let channel = match f.optional("channel") {
        Some(n) => read_channel(n)?,
        None => DecayChannel::proton_to_pi0_positron(),
    };
    let lifetime = f.required("lifetime")?.quantity(Dimension::TIME, Unit::Year)?;
    let model = read_model(f.required("model")?, &channel)?;
    let campaign = f
        .optional("campaign_limit")
        .map(|n| n.quantity(Dimension::TIME, Unit::Year))
        .transpose()?;
    let safety = f.optional("safety_factor").map(|n| {
        let x = n.number()?;
        if x >= 1.0 {
            Ok(x)
        } else {
            Err(at(&n.path, format!("must be >= 1, got {x}")))
        }
    });
    let safety = safety.transpose()?;
    let (output_format, output_path) = match f.optional("output") {
        Some(n) => read_output(n)?,
        None => (None, None),
    };
    f.finish()?;

    let mut scenario = Scenario::new(channel, lifetime, model).map_err(|e| at("lifetime", e))?;
    if let Some(limit) = campaign {
        scenario = scenario.with_campaign_limit(limit).map_err(|e| at("campaign_limit", e))?;
    }
    if let Some(k) = safety {
        scenario = scenario.with_safety_factor(k).map_err(|e| at("safety_factor", e))?;
    }
    Ok(ScenarioFile {
        scenario,
        output_format,
        output_path,
    })
}
