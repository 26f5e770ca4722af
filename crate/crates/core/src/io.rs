//! JSON file formats: monoid and M-set specs, the poset exchange format,
//! and étale and groupoid exports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::converse::EquivariantEtalePoset;
use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElem};
use crate::groupoid::{Groupoid, MonoidGroupoid, PairArrow};
use crate::monoid::{MSet, Oracle, QuotientMonoid, SubmonoidSpec};
use crate::poset::WindowPoset;
use crate::sample::Sampler;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn parse_elems(desc: GroupDescriptor, items: &[String]) -> Result<Vec<GroupElem>> {
    items.iter().map(|s| GroupElem::parse(desc, s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubmonoidField {
    Named(String),
    Generated { generated: Vec<String>, depth: u32 },
}

/// `{ "group", "submonoid", "generators", "congruence_pairs" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidFile {
    pub group: String,
    pub submonoid: SubmonoidField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default)]
    pub congruence_pairs: Vec<[String; 2]>,
}

impl MonoidFile {
    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn descriptor(&self) -> Result<GroupDescriptor> {
        GroupDescriptor::parse(&self.group)
    }

    pub fn spec(&self) -> Result<SubmonoidSpec> {
        let desc = self.descriptor()?;
        let oracle = match &self.submonoid {
            SubmonoidField::Named(name) => match name.as_str() {
                "positive_letters" => Oracle::PositiveLetters,
                "nonneg" => Oracle::Nonneg,
                other => return Err(Error::parse(format!("unknown submonoid `{other}`"))),
            },
            SubmonoidField::Generated { generated, depth } => Oracle::Generated {
                generators: parse_elems(desc, generated)?,
                depth: *depth,
            },
        };
        let generators = match &self.generators {
            Some(g) => Some(parse_elems(desc, g)?),
            None => None,
        };
        SubmonoidSpec::new(desc, oracle, generators)
    }

    pub fn pairs(&self) -> Result<Vec<(GroupElem, GroupElem)>> {
        let desc = self.descriptor()?;
        self.congruence_pairs
            .iter()
            .map(|[a, b]| Ok((GroupElem::parse(desc, a)?, GroupElem::parse(desc, b)?)))
            .collect()
    }

    /// The quotient, with the congruence saturated on `ball(radius)` and
    /// checked for stability with `margin`. No pairs means `Δ`.
    pub fn build(&self, radius: u32, margin: u32) -> Result<QuotientMonoid> {
        let spec = self.spec()?;
        let pairs = self.pairs()?;
        if pairs.is_empty() {
            QuotientMonoid::free_of_relations(spec)
        } else {
            QuotientMonoid::build(spec, &pairs, radius, margin)
        }
    }
}

/// `{ "elements": [...], "action": { "<generator>": { "s": "t", ... } } }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MSetFile {
    pub elements: Vec<String>,
    pub action: BTreeMap<String, BTreeMap<String, String>>,
}

impl MSetFile {
    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_mset(&self, desc: GroupDescriptor) -> Result<MSet> {
        let index: BTreeMap<&str, usize> = self.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::parse(format!("`{name}` is not an element of the M-set")))
        };
        let mut action = Vec::new();
        for (g, map) in &self.action {
            let g = GroupElem::parse(desc, g)?;
            let mut table = vec![None; self.elements.len()];
            for (s, t) in map {
                table[lookup(s)?] = Some(lookup(t)?);
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(s, t)| t.ok_or_else(|| Error::parse(format!("generator {g} has no image for `{}`", self.elements[s]))))
                .collect::<Result<Vec<_>>>()?;
            action.push((g, table));
        }
        MSet::new(self.elements.clone(), action)
    }

    pub fn from_mset(set: &MSet) -> Self {
        let action = set
            .action_table()
            .iter()
            .map(|(g, table)| {
                let map = table
                    .iter()
                    .enumerate()
                    .map(|(s, &t)| (set.name(s).to_string(), set.name(t).to_string()))
                    .collect();
                (g.to_string(), map)
            })
            .collect();
        MSetFile {
            elements: set.elements().to_vec(),
            action,
        }
    }
}

/// `{ "nodes": [...], "leq": [[a,b], ...], "interior": [...] }`; `leq`
/// lists the cover pairs, the order is their reflexive-transitive closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub nodes: Vec<String>,
    pub leq: Vec<[String; 2]>,
    pub interior: Vec<String>,
}

impl PosetFile {
    pub fn from_poset(p: &WindowPoset) -> Self {
        PosetFile {
            nodes: p.names().to_vec(),
            leq: p
                .covers()
                .into_iter()
                .map(|(a, b)| [p.name(a).to_string(), p.name(b).to_string()])
                .collect(),
            interior: p.interior_nodes().into_iter().map(|x| p.name(x).to_string()).collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&read(path)?)?)
    }

    pub fn to_poset(&self) -> Result<WindowPoset> {
        let index: BTreeMap<&str, usize> = self.nodes.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::parse(format!("unknown node `{name}`")))
        };
        let pairs = self
            .leq
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut interior = vec![false; self.nodes.len()];
        for name in &self.interior {
            interior[lookup(name)?] = true;
        }
        Ok(WindowPoset::from_relation(self.nodes.clone(), &pairs)?.with_interior(interior))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberLabel {
    pub base: String,
    pub fiber: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSample {
    pub node: String,
    pub element: String,
    pub image: Option<String>,
}

/// The poset exchange format plus fiber labels and sampled action values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaleFile {
    #[serde(flatten)]
    pub poset: PosetFile,
    pub fiber_labels: BTreeMap<String, FiberLabel>,
    pub action_samples: Vec<ActionSample>,
}

impl EtaleFile {
    /// Exports `E` with the action of every generator of `N` and its
    /// inverse on every node.
    pub fn from_etale(e: &EquivariantEtalePoset) -> Result<Self> {
        let total = e.total();
        let fiber_labels = (0..total.len())
            .map(|x| {
                let (p, s) = e.split(x);
                (
                    total.name(x).to_string(),
                    FiberLabel {
                        base: e.base().rep(p).to_string(),
                        fiber: e.fiber().name(s).to_string(),
                    },
                )
            })
            .collect();
        let mut elements = Vec::new();
        for g in e.base().spec().generators() {
            elements.push(g.clone());
            elements.push(g.inverse());
        }
        let mut action_samples = Vec::new();
        for x in 0..total.len() {
            for g in &elements {
                action_samples.push(ActionSample {
                    node: total.name(x).to_string(),
                    element: g.to_string(),
                    image: e.act(x, g)?.map(|y| total.name(y).to_string()),
                });
            }
        }
        Ok(EtaleFile {
            poset: PosetFile::from_poset(total),
            fiber_labels,
            action_samples,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectEntry {
    pub name: String,
    pub interior: bool,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub name: String,
    pub source: String,
    pub target: String,
    pub inverse: String,
    pub interior: bool,
}

/// Window parameters, objects and sampled arrows with their structure
/// maps, and both orders restricted to what is listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidFile {
    pub group: String,
    pub radius: u32,
    pub depth: u32,
    pub objects: Vec<ObjectEntry>,
    pub arrows: Vec<ArrowEntry>,
    pub object_leq: Vec<[String; 2]>,
    pub arrow_leq: Vec<[String; 2]>,
}

impl GroupoidFile {
    pub fn from_groupoid(g: &MonoidGroupoid, sampler: &mut Sampler) -> Result<Self> {
        let objects = g.window_objects()?;
        let object_entries = objects
            .iter()
            .map(|x| ObjectEntry {
                name: x.to_string(),
                interior: g.is_interior_obj(x),
                unit: g.unit(x).to_string(),
            })
            .collect();
        let mut object_leq = Vec::new();
        for x in &objects {
            for y in &objects {
                if x != y && g.obj_leq(x, y)? {
                    object_leq.push([x.to_string(), y.to_string()]);
                }
            }
        }
        let arrows: Vec<PairArrow> = g.arrows(sampler)?;
        let mut arrow_entries = Vec::new();
        for f in &arrows {
            arrow_entries.push(ArrowEntry {
                name: f.to_string(),
                source: g.source(f).to_string(),
                target: g.object(&f.1).to_string(),
                inverse: g.pair_arrow(&f.1, &f.0).to_string(),
                interior: g.is_interior_arr(f),
            });
        }
        let mut arrow_leq = Vec::new();
        for f in &arrows {
            for h in &arrows {
                if f != h && g.arr_leq(f, h)? {
                    arrow_leq.push([f.to_string(), h.to_string()]);
                }
            }
        }
        Ok(GroupoidFile {
            group: g.descriptor().to_string(),
            radius: g.radius(),
            depth: g.depth(),
            objects: object_entries,
            arrows: arrow_entries,
            object_leq,
            arrow_leq,
        })
    }
}
