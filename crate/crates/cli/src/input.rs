//! Argument loading: catalog identifiers, space/ring definition files, and
//! group presentation strings.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;

use selfclose_core::catalog::{catalog_ring, parse_space_id};
use selfclose_core::error::{Error, Result};
use selfclose_core::group::FgAbelianGroup;
use selfclose_core::ring::{Coeff, TruncatedRing};
use selfclose_core::space::{
    AtomicCertificate, Dim, GradedGroup, HintKind, NscHint, Provenance, SpaceModel,
};

#[derive(Deserialize)]
struct HomologyEntry {
    #[serde(default)]
    rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

/// A dimension-like field: a number or the string "infinite".
#[derive(Deserialize)]
#[serde(untagged)]
enum DimField {
    Finite(u32),
    Named(String),
}

impl DimField {
    fn to_dim(&self, what: &str) -> Result<Dim> {
        match self {
            DimField::Finite(n) => Ok(Dim::Finite(*n)),
            DimField::Named(s) if s == "infinite" => Ok(Dim::Infinite),
            DimField::Named(s) => Err(Error::InvalidInput(format!(
                "{what} must be a number or \"infinite\", got {s:?}"
            ))),
        }
    }
}

#[derive(Deserialize)]
struct SpaceFile {
    name: String,
    dimension: DimField,
    cutoff: u32,
    homology: BTreeMap<String, HomologyEntry>,
    atomic: Option<DimField>,
    nsc: Option<u32>,
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn space_from_file(path: &Path) -> Result<SpaceModel> {
    let text = read_file(path)?;
    let file: SpaceFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let mut table = GradedGroup::new();
    for (deg, entry) in &file.homology {
        let degree: u32 = deg.parse().map_err(|_| {
            Error::InvalidInput(format!("homology degree {deg:?} is not a number"))
        })?;
        let moduli: Vec<BigInt> = entry.torsion.iter().map(|&d| BigInt::from(d)).collect();
        let group = FgAbelianGroup::canonicalize(entry.rank, &moduli)?;
        if !group.is_trivial() {
            table.insert(degree, group)?;
        }
    }
    let mut model = SpaceModel::new(
        &file.name,
        table,
        file.dimension.to_dim("dimension")?,
        file.cutoff,
    )?;
    if let Some(a) = &file.atomic {
        model = model.with_atomic_certificate(AtomicCertificate {
            degree: a.to_dim("atomic")?,
            provenance: Provenance::UserAsserted,
        });
    }
    if let Some(v) = file.nsc {
        model = model.with_nsc_hint(NscHint {
            kind: HintKind::Exact,
            value: v,
            citation: "value supplied by the space definition file".into(),
            provenance: Provenance::UserAsserted,
        });
    }
    Ok(model)
}

/// A space argument: an existing file path wins, otherwise a catalog id.
pub fn load_space(arg: &str) -> Result<SpaceModel> {
    let path = Path::new(arg);
    if path.exists() {
        return space_from_file(path);
    }
    if arg.ends_with(".json") {
        return Err(Error::InvalidInput(format!("no such file: {arg}")));
    }
    parse_space_id(arg)
}

#[derive(Deserialize)]
struct RingSummand {
    gen: String,
    degree: u32,
    trunc: u32,
    coeff: String,
}

#[derive(Deserialize)]
struct RingFile {
    summands: Vec<RingSummand>,
}

fn parse_coeff(s: &str) -> Result<Coeff> {
    if s == "Z" {
        return Ok(Coeff::Z);
    }
    if let Some(p) = s.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad prime in coefficient {s:?}")))?;
        return Ok(Coeff::Fp(p));
    }
    Err(Error::InvalidInput(format!(
        "coefficient must be \"Z\" or \"Fp:<p>\", got {s:?}"
    )))
}

/// A ring argument: a definition file contributes its listed summands; a
/// catalog id contributes the space's ring with `default_gen` as generator.
pub fn load_ring_summands(arg: &str, default_gen: &str) -> Result<Vec<TruncatedRing>> {
    let path = Path::new(arg);
    if path.exists() {
        let text = read_file(path)?;
        let file: RingFile = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        return file
            .summands
            .iter()
            .map(|s| TruncatedRing::new(&s.gen, s.degree, s.trunc, parse_coeff(&s.coeff)?))
            .collect();
    }
    if arg.ends_with(".json") {
        return Err(Error::InvalidInput(format!("no such file: {arg}")));
    }
    let space = parse_space_id(arg)?;
    let ring = catalog_ring(&space, default_gen).ok_or_else(|| {
        Error::InvalidInput(format!(
            "{} has no single-generator truncated polynomial ring model",
            space.name()
        ))
    })?;
    Ok(vec![ring])
}
