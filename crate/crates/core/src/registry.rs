//! Curated example representations with their expected data.
//!
//! Entries are JSON files; the ones shipped with the crate are embedded and
//! a directory of further files can be loaded at runtime. An entry is only
//! handed out after its section passes the axiom checks.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::correspondence::{InvariantBody, OrbitopeBody};
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::group::{GroupSpec, JsonScalar};
use crate::linalg::{Subspace, Vector};
use crate::models;
use crate::section::{AxiomReport, SectionCandidate};

const BUILTIN: &[(&str, &str)] = &[
    ("rot2", include_str!("../registry/rot2.json")),
    ("dihedral-4", include_str!("../registry/dihedral-4.json")),
    ("dihedral-8", include_str!("../registry/dihedral-8.json")),
    ("schur-horn-2", include_str!("../registry/schur-horn-2.json")),
    ("schur-horn-3", include_str!("../registry/schur-horn-3.json")),
    ("schur-horn-4", include_str!("../registry/schur-horn-4.json")),
    ("copolarity-candidate", include_str!("../registry/copolarity-candidate.json")),
];

/// Named constructions for groups whose generators are tedious to list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// SO(n) conjugating Sym(n).
    SymConjugation { n: usize },
    /// SO(n) on R^n.
    SoN { n: usize },
    /// SO(n) acting diagonally on `copies` copies of R^n.
    SoNCopies { n: usize, copies: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Model(ModelSpec),
    Spec(GroupSpec),
}

impl GroupSource {
    pub fn build(&self, seed: u64) -> Result<GroupModel> {
        Ok(match self {
            GroupSource::Model(ModelSpec::SymConjugation { n }) => models::sym_conjugation(*n, seed)?.into(),
            GroupSource::Model(ModelSpec::SoN { n }) => models::so_n(*n, seed)?.into(),
            GroupSource::Model(ModelSpec::SoNCopies { n, copies }) => models::so_n_on_copies(*n, *copies, seed)?.into(),
            GroupSource::Spec(s) => match s.build()? {
                GroupModel::Lie(l) => l.with_seed(seed).into(),
                g => g,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SectionSpec {
    Full,
    Coordinate { axes: Vec<usize> },
    Span { vectors: Vec<Vec<JsonScalar>> },
}

impl SectionSpec {
    pub fn build(&self, dim: usize) -> Result<Subspace> {
        match self {
            SectionSpec::Full => Ok(Subspace::full(dim)),
            SectionSpec::Coordinate { axes } => {
                if let Some(&a) = axes.iter().find(|&&a| a >= dim) {
                    return Err(Error::Parse(format!("section axis {a} out of range for dimension {dim}")));
                }
                Ok(Subspace::coordinate(dim, axes))
            }
            SectionSpec::Span { vectors } => {
                let vs = vectors.iter().map(|v| parse_point(v)).collect::<Result<Vec<_>>>()?;
                Subspace::span(dim, &vs)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub polar: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_order: Option<usize>,
    #[serde(default)]
    pub weyl_dim: usize,
    /// Number of W-orbits of nonempty faces of P, one per base point.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub face_classes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub name: String,
    pub description: String,
    #[serde(default = "enabled_default")]
    pub enabled: bool,
    pub group: GroupSource,
    pub section: SectionSpec,
    pub base_points: Vec<Vec<JsonScalar>>,
    pub expected: Expected,
    /// How each expected value was obtained.
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

fn enabled_default() -> bool {
    true
}

fn parse_point(v: &[JsonScalar]) -> Result<Vector> {
    Ok(Vector::from_vec(v.iter().map(JsonScalar::value).collect::<Result<Vec<_>>>()?))
}

impl RegistryEntry {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn base_points(&self) -> Result<Vec<Vector>> {
        self.base_points.iter().map(|p| parse_point(p)).collect()
    }
}

/// A set of entries, in name order.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    entries: BTreeMap<String, RegistryEntry>,
}

/// An entry with its group, section and cached axiom report.
#[derive(Clone, Debug)]
pub struct LoadedEntry {
    pub entry: RegistryEntry,
    pub section: SectionCandidate,
    pub base_points: Vec<Vector>,
    pub report: AxiomReport,
    pub seed: u64,
}

impl Registry {
    pub fn builtin() -> Self {
        let mut r = Registry::default();
        for (name, text) in BUILTIN {
            let e = RegistryEntry::from_json(text).expect("embedded registry entries parse");
            debug_assert_eq!(&e.name, name);
            r.entries.insert(e.name.clone(), e);
        }
        r
    }

    /// Builtin entries plus (overriding) every `*.json` file in `dir`.
    pub fn with_dir(dir: &Path) -> Result<Self> {
        let mut r = Self::builtin();
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let e = RegistryEntry::from_json(&std::fs::read_to_string(&p)?)?;
            r.entries.insert(e.name.clone(), e);
        }
        Ok(r)
    }

    pub fn insert(&mut self, e: RegistryEntry) {
        self.entries.insert(e.name.clone(), e);
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }

    pub fn enabled_names(&self) -> Vec<&str> {
        self.entries.values().filter(|e| e.enabled).map(|e| e.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&RegistryEntry> {
        self.entries.get(name).ok_or_else(|| Error::UnknownEntry(name.into()))
    }

    pub fn entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.entries.values()
    }

    /// Build the entry and run the axiom checks with `samples` points.
    pub fn load(&self, name: &str, seed: u64, samples: usize) -> Result<LoadedEntry> {
        let e = self.get(name)?;
        if !e.enabled {
            return Err(Error::DisabledEntry(name.into()));
        }
        self.load_any(name, seed, samples)
    }

    /// Like [`Registry::load`], also for disabled entries.
    pub fn load_any(&self, name: &str, seed: u64, samples: usize) -> Result<LoadedEntry> {
        let entry = self.get(name)?.clone();
        let group = entry.group.build(seed)?;
        let sigma = entry.section.build(group.dim())?;
        let base_points = entry.base_points()?;
        if let Some(p) = base_points.iter().find(|p| p.len() != group.dim()) {
            return Err(Error::DimensionMismatch { expected: group.dim(), actual: p.len() });
        }
        let section = SectionCandidate::new(group, sigma)?;
        let report = section.check_axioms(samples, seed)?;
        if !report.passed() {
            return Err(Error::AxiomsFailed(format!("entry {name} failed its axiom checks")));
        }
        Ok(LoadedEntry { entry, section, base_points, report, seed })
    }
}

/// Load a builtin entry.
pub fn load_entry(name: &str, seed: u64, samples: usize) -> Result<LoadedEntry> {
    Registry::builtin().load(name, seed, samples)
}

impl LoadedEntry {
    pub fn name(&self) -> &str {
        &self.entry.name
    }

    pub fn group(&self) -> &GroupModel {
        &self.section.group
    }

    /// `E = G·conv(base points)` through its restriction (finite `W` only).
    pub fn body(&self) -> Result<InvariantBody> {
        InvariantBody::restrict(self.section.clone(), self.report.clone(), &self.base_points, self.seed)
    }

    /// The same body for one base point.
    pub fn body_for(&self, i: usize) -> Result<InvariantBody> {
        let p = self.base_points.get(i).ok_or(Error::Empty("base point index out of range"))?;
        InvariantBody::restrict(self.section.clone(), self.report.clone(), std::slice::from_ref(p), self.seed)
    }

    pub fn orbitope(&self) -> Result<OrbitopeBody> {
        OrbitopeBody::new(self.section.clone(), &self.report, &self.base_points, self.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::DEFAULT_SEED;

    #[test]
    fn builtin_entries_parse_and_round_trip() {
        let r = Registry::builtin();
        assert_eq!(r.names().len(), BUILTIN.len());
        assert!(!r.enabled_names().contains(&"copolarity-candidate"));
        for e in r.entries() {
            let text = serde_json::to_string(e).unwrap();
            assert_eq!(&RegistryEntry::from_json(&text).unwrap(), e);
        }
    }

    #[test]
    fn unknown_and_disabled_entries() {
        let r = Registry::builtin();
        assert!(matches!(r.load("nope", 1, 8), Err(Error::UnknownEntry(_))));
        assert!(matches!(r.load("copolarity-candidate", 1, 8), Err(Error::DisabledEntry(_))));
    }

    #[test]
    fn rot2_is_polar_with_two_element_weyl_group() {
        let l = load_entry("rot2", DEFAULT_SEED, 64).unwrap();
        assert_eq!(l.report.k(), Some(0));
        let b = l.body().unwrap();
        assert_eq!(b.weyl().order(), Some(2));
        assert_eq!(b.partition().orbits.len(), 2);
    }

    #[test]
    fn bad_section_fails_the_gate() {
        let mut r = Registry::builtin();
        let mut e = r.get("rot2").unwrap().clone();
        e.name = "rot2-empty".into();
        e.section = SectionSpec::Span { vectors: vec![] };
        r.insert(e);
        assert!(matches!(r.load("rot2-empty", 1, 32), Err(Error::AxiomsFailed(_))));
    }
}
