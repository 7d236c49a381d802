//! Named complexes and actions.
//!
//! Complex names: `point`, `S0`, `edge`, `triangle`, `circle(k)`, `octahedron`, `torus`.
//! Equivariant specs are `name`, `name/action` or `name/trivial(G)` where the
//! action is one of `swap` (S0, edge), `antipodal`, `reflection`
//! (octahedron, circle), `rotation`, `dihedral` (circle).

use std::sync::Arc;

use super::{simplicial_product, ComplexLimits, EquivariantComplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupLimits};
use crate::perm::Perm;

fn parse_circle(name: &str) -> Option<usize> {
    name.strip_prefix("circle(")?.strip_suffix(')')?.parse().ok()
}

fn circle(k: usize) -> Result<SimplicialComplex> {
    if k < 3 {
        return Err(Error::Parse(format!("circle({k}) needs at least 3 vertices")));
    }
    let edges: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    SimplicialComplex::from_maximal(k, &edges)
}

/// Vertices `±e₁, ±e₂, ±e₃` as `0..6`; antipodes are `2i, 2i+1` and share
/// the rank `i`, so the antipodal and reflection actions preserve the order.
fn octahedron() -> Result<SimplicialComplex> {
    let mut faces = Vec::new();
    for a in 0..2 {
        for b in 2..4 {
            for c in 4..6 {
                faces.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_maximal(6, &faces)?.with_rank(vec![0, 0, 1, 1, 2, 2])
}

pub fn builtin_complex(name: &str) -> Result<SimplicialComplex> {
    match name.trim() {
        "point" => SimplicialComplex::from_maximal(1, &[]),
        "S0" => SimplicialComplex::from_maximal(2, &[]),
        "edge" => SimplicialComplex::from_maximal(2, &[vec![0, 1]]),
        "triangle" => SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]),
        "octahedron" => octahedron(),
        "torus" => simplicial_product(&circle(3)?, &circle(3)?, &ComplexLimits::default()),
        other => match parse_circle(other) {
            Some(k) => circle(k),
            None => Err(Error::Parse(format!("unknown complex {other:?}"))),
        },
    }
}

/// Parses an equivariant spec; `group` supplies the acting group for a plain
/// name (trivial action) and is rejected alongside a named action.
pub fn builtin_equivariant(spec: &str, group: Option<Arc<FiniteGroup>>) -> Result<EquivariantComplex> {
    let (name, action) = match spec.split_once('/') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    };
    let complex = builtin_complex(name)?;
    let trivial_group = |g: Option<Arc<FiniteGroup>>| g.unwrap_or_else(|| Arc::new(FiniteGroup::trivial()));
    let action = match action {
        None => return Ok(EquivariantComplex::trivial(complex, trivial_group(group))),
        Some(a) => a,
    };
    if let Some(g) = action.strip_prefix("trivial(").and_then(|s| s.strip_suffix(')')) {
        if group.is_some() {
            return Err(Error::Parse("group given twice".into()));
        }
        return Ok(EquivariantComplex::trivial(complex, Arc::new(FiniteGroup::builtin(g)?)));
    }
    if action == "trivial" {
        return Ok(EquivariantComplex::trivial(complex, trivial_group(group)));
    }
    if group.is_some() {
        return Err(Error::Parse(format!("a group can only be given for trivial actions, not {action:?}")));
    }
    let k = parse_circle(name);
    let gens: Vec<Perm> = match (name, action, k) {
        ("S0" | "edge", "swap", _) => vec![vec![1, 0]],
        ("octahedron", "antipodal", _) => vec![vec![1, 0, 3, 2, 5, 4]],
        ("octahedron", "reflection", _) => vec![vec![1, 0, 2, 3, 4, 5]],
        (_, "rotation", Some(k)) => vec![(0..k).map(|i| (i + 1) % k).collect()],
        (_, "reflection", Some(k)) => vec![(0..k).map(|i| (k - i) % k).collect()],
        (_, "dihedral", Some(k)) => vec![(0..k).map(|i| (i + 1) % k).collect(), (0..k).map(|i| (k - i) % k).collect()],
        _ => return Err(Error::Parse(format!("unknown action {action:?} on {name:?}"))),
    };
    EquivariantComplex::from_permutations(complex, &gens, &GroupLimits::default())
}

/// A named equivariant complex of the built-in test suite.
#[derive(Debug, Clone)]
pub struct SuiteCase {
    pub name: String,
    pub complex: EquivariantComplex,
}

pub const SUITE_SPECS: &[&str] = &[
    "point/trivial(S3)",
    "point/trivial(Z2)",
    "S0/swap",
    "S0/trivial(Z2)",
    "edge/swap",
    "circle(4)/rotation",
    "circle(4)/reflection",
    "circle(3)/dihedral",
    "octahedron/antipodal",
    "octahedron/reflection",
    "octahedron/trivial(Z3)",
    "torus/trivial(Z2)",
];

/// Free, reflection and trivial actions covering every built-in complex.
pub fn standard_suite() -> Vec<SuiteCase> {
    SUITE_SPECS
        .iter()
        .map(|&s| SuiteCase { name: s.to_string(), complex: builtin_equivariant(s, None).expect("built-in spec") })
        .collect()
}
