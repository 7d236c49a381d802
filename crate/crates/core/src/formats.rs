//! JSON input formats. Every loader also accepts a built-in name in place of
//! a file path.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{builtin_equivariant, EquivariantComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupLimits, Presentation};
use crate::hodge::{builtin_hodge_dataset, HodgeDataset, SectorHodgeDatum};
use crate::rational::{fmt_q, parse_q};

/// `{"order", "table", "labels"?}` or `{"permutations", "degree"}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

impl GroupJson {
    pub fn build(&self, limits: &GroupLimits) -> Result<FiniteGroup> {
        match (&self.table, &self.permutations) {
            (Some(table), None) => {
                if self.degree.is_some() {
                    return Err(Error::Parse("\"degree\" belongs to the permutation format".into()));
                }
                if let Some(order) = self.order {
                    if order != table.len() {
                        return Err(Error::Parse(format!("order {order} but the table has {} rows", table.len())));
                    }
                }
                if table.len() > limits.max_table_order {
                    return Err(Error::OrderCapExceeded {
                        cap: limits.max_table_order as u128,
                        required: table.len() as u128,
                    });
                }
                FiniteGroup::from_table(table, self.labels.clone())
            }
            (None, Some(gens)) => {
                if self.order.is_some() || self.labels.is_some() {
                    return Err(Error::Parse("\"order\" and \"labels\" belong to the table format".into()));
                }
                let degree = self
                    .degree
                    .or_else(|| gens.first().map(Vec::len))
                    .ok_or_else(|| Error::Parse("permutation group needs a degree".into()))?;
                FiniteGroup::from_permutations(gens, degree, limits)
            }
            _ => Err(Error::Parse("a group needs exactly one of \"table\" and \"permutations\"".into())),
        }
    }
}

/// A group given by built-in name or inline JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Json(GroupJson),
}

impl GroupSpec {
    pub fn build(&self, limits: &GroupLimits) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Name(n) => FiniteGroup::builtin(n),
            GroupSpec::Json(j) => j.build(limits),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub generators: usize,
    #[serde(default)]
    pub relators: Vec<Vec<i32>>,
}

/// `{"vertices", "maximal_simplices", "group"?, "action"?}`; the action maps
/// element labels (or element indices) to vertex permutations and is
/// extended multiplicatively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: usize,
    pub maximal_simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BTreeMap<String, Vec<usize>>>,
}

impl ComplexJson {
    /// `group` is the externally supplied group, used when the file names none.
    pub fn build(&self, group: Option<Arc<FiniteGroup>>, limits: &GroupLimits) -> Result<EquivariantComplex> {
        let complex = SimplicialComplex::from_maximal(self.vertices, &self.maximal_simplices)?;
        let group = match (&self.group, group) {
            (Some(_), Some(_)) => return Err(Error::Parse("group given both in the file and on the command line".into())),
            (Some(spec), None) => Arc::new(spec.build(limits)?),
            (None, Some(g)) => g,
            (None, None) => Arc::new(FiniteGroup::trivial()),
        };
        match &self.action {
            None => Ok(EquivariantComplex::trivial(complex, group)),
            Some(action) => {
                let known = action
                    .iter()
                    .map(|(label, p)| {
                        let g = group
                            .element_by_label(label)
                            .or_else(|| label.parse::<usize>().ok().filter(|&i| i < group.order()))
                            .ok_or_else(|| Error::InvalidAction(format!("no group element labelled {label:?}")))?;
                        Ok((g, p.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                EquivariantComplex::from_partial_action(complex, group, &known)
            }
        }
    }
}

/// One sector datum: `{"class", "component", "dims": {"s,t": n}, "angles": ["p/q"], "d"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorDatumJson {
    pub class: String,
    pub component: usize,
    pub dims: BTreeMap<String, u64>,
    #[serde(default)]
    pub angles: Vec<String>,
    pub d: usize,
}

impl SectorDatumJson {
    pub fn build(&self) -> Result<SectorHodgeDatum> {
        let mut dims = BTreeMap::new();
        for (key, &h) in &self.dims {
            let bad = || Error::Parse(format!("bidegree key {key:?} is not \"s,t\""));
            let (s, t) = key.split_once(',').ok_or_else(bad)?;
            let s: u32 = s.trim().parse().map_err(|_| bad())?;
            let t: u32 = t.trim().parse().map_err(|_| bad())?;
            if h > 0 {
                *dims.entry((s, t)).or_insert(0) += h;
            }
        }
        let datum = SectorHodgeDatum {
            class: self.class.clone(),
            component: self.component,
            dims,
            angles: self.angles.iter().map(|a| parse_q(a)).collect::<Result<_>>()?,
            d: self.d,
        };
        datum.validate()?;
        Ok(datum)
    }

    pub fn from_datum(datum: &SectorHodgeDatum) -> Self {
        SectorDatumJson {
            class: datum.class.clone(),
            component: datum.component,
            dims: datum.dims.iter().map(|(&(s, t), &h)| (format!("{s},{t}"), h)).collect(),
            angles: datum.angles.iter().map(fmt_q).collect(),
            d: datum.d,
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn as_file(spec: &str) -> Option<&Path> {
    let path = Path::new(spec);
    (spec.ends_with(".json") || path.is_file()).then_some(path)
}

/// A built-in group name or a path to a group JSON file.
pub fn load_group(spec: &str, limits: &GroupLimits) -> Result<FiniteGroup> {
    match as_file(spec) {
        Some(path) => read_json::<GroupJson>(path)?.build(limits),
        None => FiniteGroup::builtin(spec),
    }
}

/// `trivial`, `Z`, `Z^m`, `F_k`, or a path to a presentation JSON file.
pub fn load_presentation(spec: &str) -> Result<Presentation> {
    match as_file(spec) {
        Some(path) => {
            let p: PresentationJson = read_json(path)?;
            Presentation::new(p.generators, p.relators)
        }
        None => Presentation::parse(spec),
    }
}

/// A built-in equivariant spec such as `octahedron/antipodal` or a path to a
/// complex JSON file.
pub fn load_equivariant(spec: &str, group: Option<Arc<FiniteGroup>>, limits: &GroupLimits) -> Result<EquivariantComplex> {
    match as_file(spec) {
        Some(path) => read_json::<ComplexJson>(path)?.build(group, limits),
        None => builtin_equivariant(spec, group),
    }
}

pub fn parse_hodge_data(text: &str) -> Result<Vec<SectorHodgeDatum>> {
    let raw: Vec<SectorDatumJson> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.iter().map(SectorDatumJson::build).collect()
}

/// A bundled dataset name or a path to a sector-data JSON file.
pub fn load_hodge_dataset(spec: &str) -> Result<HodgeDataset> {
    match as_file(spec) {
        Some(path) => {
            let raw: Vec<SectorDatumJson> = read_json(path)?;
            let sectors = raw.iter().map(SectorDatumJson::build).collect::<Result<_>>()?;
            Ok(HodgeDataset::from_sectors(&path.display().to_string(), sectors))
        }
        None => builtin_hodge_dataset(spec),
    }
}
