//! Catalog of standard simply connected spaces.
//!
//! Each constructor fills in the homology table, the reliable range, and any
//! recorded metadata: atomicity certificates where atomicity is a known
//! theorem, and recorded self-closeness values with the statement that
//! justifies them. Also provides the id grammar used on the command line
//! ("S:5", "CP:3", "M:Z/4:3", ...) and the pairing of catalog spaces with
//! their truncated polynomial cohomology rings.

use crate::error::{Error, Result};
use crate::group::{parse_group, FgAbelianGroup};
use crate::ring::{Coeff, TruncatedRing};
use crate::space::{
    AtomicCertificate, CatalogTag, Dim, GradedGroup, HintKind, NscHint, Provenance, SpaceModel,
};

pub fn point() -> SpaceModel {
    SpaceModel::new("pt", GradedGroup::new(), Dim::Finite(0), 0)
        .unwrap()
        .with_tag(CatalogTag::Point)
}

pub fn sphere(n: u32) -> Result<SpaceModel> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "sphere models must be simply connected; got S^{n}"
        )));
    }
    let mut table = GradedGroup::new();
    table.insert(n, FgAbelianGroup::free(1))?;
    Ok(SpaceModel::new(format!("S^{n}"), table, Dim::Finite(n), n)?
        .with_tag(CatalogTag::Sphere(n))
        .with_nsc_hint(NscHint {
            kind: HintKind::Exact,
            value: n,
            citation: "a self-map of S^n acting by a unit on H_n is a homotopy equivalence, \
                       so the self-closeness number is n"
                .into(),
            provenance: Provenance::Catalog,
        }))
}

/// Moore space M(G, n): homology G concentrated in degree n.
pub fn moore(g: &FgAbelianGroup, n: u32) -> Result<SpaceModel> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "Moore space models need n >= 2, got {n}"
        )));
    }
    if g.is_trivial() {
        return Err(Error::InvalidInput(
            "Moore space on the trivial group is a point; use the point model".into(),
        ));
    }
    let dim = if g.torsion_count() > 0 { n + 1 } else { n };
    let mut table = GradedGroup::new();
    table.insert(n, g.clone())?;
    let mut model = SpaceModel::new(format!("M({g}, {n})"), table, Dim::Finite(dim), dim)?
        .with_tag(CatalogTag::Moore(g.clone(), n))
        .with_nsc_hint(NscHint {
            kind: HintKind::Exact,
            value: n,
            citation: "a self-map of M(G, n) acting by an automorphism on H_n is a homotopy \
                       equivalence, so the self-closeness number is n"
                .into(),
            provenance: Provenance::Catalog,
        });
    if is_cyclic_prime_power(g) {
        model = model.with_atomic_certificate(AtomicCertificate {
            degree: Dim::Infinite,
            provenance: Provenance::Catalog,
        });
    }
    Ok(model)
}

fn is_cyclic_prime_power(g: &FgAbelianGroup) -> bool {
    if g.free_rank() != 0 || g.torsion_count() != 1 {
        return false;
    }
    match g.primary_decomposition() {
        Ok(pd) => pd.prime_powers.len() == 1,
        Err(_) => false,
    }
}

/// Eilenberg-MacLane model K(G, n) for cyclic G of prime power order. The
/// table defaults to the single group in degree n; homology in higher degrees
/// may be supplied explicitly together with the degree through which it is
/// complete.
pub fn eilenberg_maclane(
    g: &FgAbelianGroup,
    n: u32,
    extra: Option<GradedGroup>,
    extra_cutoff: Option<u32>,
) -> Result<SpaceModel> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "Eilenberg-MacLane models need n >= 2, got {n}"
        )));
    }
    if !is_cyclic_prime_power(g) {
        return Err(Error::Unsupported(format!(
            "Eilenberg-MacLane models are provided for cyclic groups of prime power order, \
             not {g}"
        )));
    }
    let cutoff = extra_cutoff.unwrap_or(n);
    if cutoff < n {
        return Err(Error::InvalidInput(format!(
            "table cutoff {cutoff} below the concentration degree {n}"
        )));
    }
    let mut table = GradedGroup::new();
    table.insert(n, g.clone())?;
    if let Some(extra) = extra {
        for (d, h) in extra.support() {
            if d <= n {
                return Err(Error::InvalidInput(format!(
                    "extra homology must sit above degree {n}, got degree {d}"
                )));
            }
            table.insert(d, h.clone())?;
        }
    }
    Ok(
        SpaceModel::new(format!("K({g}, {n})"), table, Dim::Infinite, cutoff)?
            .with_tag(CatalogTag::EilenbergMacLane(g.clone(), n))
            .with_atomic_certificate(AtomicCertificate {
                degree: Dim::Infinite,
                provenance: Provenance::Catalog,
            })
            .with_nsc_hint(NscHint {
                kind: HintKind::Exact,
                value: n,
                citation: "a self-map of K(G, n) acting by an automorphism on H_n is a \
                           homotopy equivalence, so the self-closeness number is n"
                    .into(),
                provenance: Provenance::Catalog,
            }),
    )
}

pub fn complex_projective(n: u32) -> Result<SpaceModel> {
    if n < 1 {
        return Err(Error::InvalidInput("complex projective spaces need n >= 1".into()));
    }
    let mut table = GradedGroup::new();
    for i in 1..=n {
        table.insert(2 * i, FgAbelianGroup::free(1))?;
    }
    Ok(
        SpaceModel::new(format!("CP^{n}"), table, Dim::Finite(2 * n), 2 * n)?
            .with_tag(CatalogTag::ComplexProjective(n))
            .with_nsc_hint(NscHint {
                kind: HintKind::Exact,
                value: 2,
                citation: "a self-map of CP^n acting by a unit on H_2 acts by the i-th power \
                           of that unit on H_2i, so the self-closeness number is 2"
                    .into(),
                provenance: Provenance::Catalog,
            }),
    )
}

pub fn quaternionic_projective(n: u32) -> Result<SpaceModel> {
    if n < 1 {
        return Err(Error::InvalidInput(
            "quaternionic projective spaces need n >= 1".into(),
        ));
    }
    let mut table = GradedGroup::new();
    for i in 1..=n {
        table.insert(4 * i, FgAbelianGroup::free(1))?;
    }
    Ok(
        SpaceModel::new(format!("HP^{n}"), table, Dim::Finite(4 * n), 4 * n)?
            .with_tag(CatalogTag::QuaternionicProjective(n))
            .with_nsc_hint(NscHint {
                kind: HintKind::Exact,
                value: 4,
                citation: "a self-map of HP^n acting by a unit on H_4 acts by the i-th power \
                           of that unit on H_4i, so the self-closeness number is 4"
                    .into(),
                provenance: Provenance::Catalog,
            }),
    )
}

/// Suspension of the real projective space RP^m for even m: homology Z/2 in
/// each even degree 2, 4, ..., m.
pub fn suspended_real_projective(m: u32) -> Result<SpaceModel> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "the suspended projective model needs an even dimension parameter >= 2, got {m}"
        )));
    }
    let z2 = parse_group("Z/2").unwrap();
    let mut table = GradedGroup::new();
    for d in (2..=m).step_by(2) {
        table.insert(d, z2.clone())?;
    }
    Ok(
        SpaceModel::new(format!("susp(RP^{m})"), table, Dim::Finite(m + 1), m + 1)?
            .with_tag(CatalogTag::SuspendedRealProjective(m))
            .with_nsc_hint(NscHint {
                kind: HintKind::UpperBound,
                value: m,
                citation: "recorded bound: the self-closeness number of susp(RP^m) is at \
                           most m"
                    .into(),
                provenance: Provenance::Catalog,
            }),
    )
}

/// Parse a space id: "S:5", "CP:3", "HP:2", "SRP:4", "M:Z/4:3", "K:Z/8:4".
pub fn parse_space_id(id: &str) -> Result<SpaceModel> {
    let bad = |msg: &str| Error::InvalidInput(format!("space id {id:?}: {msg}"));
    let parts: Vec<&str> = id.split(':').collect();
    let parse_num = |s: &str| -> Result<u32> {
        s.parse::<u32>()
            .map_err(|_| bad(&format!("{s:?} is not a degree")))
    };
    match parts.as_slice() {
        ["S", n] => sphere(parse_num(n)?),
        ["CP", n] => complex_projective(parse_num(n)?),
        ["HP", n] => quaternionic_projective(parse_num(n)?),
        ["SRP", m] => suspended_real_projective(parse_num(m)?),
        ["M", g, n] => moore(&parse_group(g)?, parse_num(n)?),
        ["K", g, n] => eilenberg_maclane(&parse_group(g)?, parse_num(n)?, None, None),
        _ => Err(bad(
            "expected one of S:n, CP:n, HP:n, SRP:m, M:<group>:n, K:<group>:n",
        )),
    }
}

/// The truncated polynomial cohomology ring of a catalog space, when it has
/// one: complex and quaternionic projective spaces and even spheres. Odd
/// spheres are excluded (their generator sits in odd degree), as are spaces
/// whose cohomology needs more than one generator.
pub fn catalog_ring(space: &SpaceModel, gen: &str) -> Option<TruncatedRing> {
    match space.tag()? {
        CatalogTag::ComplexProjective(n) => Some(TruncatedRing::new(gen, 2, *n, Coeff::Z).unwrap()),
        CatalogTag::QuaternionicProjective(n) => {
            Some(TruncatedRing::new(gen, 4, *n, Coeff::Z).unwrap())
        }
        CatalogTag::Sphere(n) if n % 2 == 0 => {
            Some(TruncatedRing::new(gen, *n, 1, Coeff::Z).unwrap())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbelianGroup {
        parse_group(s).unwrap()
    }

    #[test]
    fn sphere_model() {
        let s = sphere(5).unwrap();
        assert_eq!(s.name(), "S^5");
        assert_eq!(s.homology_at(5).unwrap(), g("Z"));
        assert_eq!(s.dimension(), Dim::Finite(5));
        assert_eq!(s.nsc_hint().unwrap().value, 5);
        assert!(s.atomic_certificate().is_none());
        assert!(sphere(1).is_err());
    }

    #[test]
    fn moore_models() {
        let m = moore(&g("Z/9"), 4).unwrap();
        assert_eq!(m.name(), "M(Z/9, 4)");
        assert_eq!(m.homology_at(4).unwrap(), g("Z/9"));
        assert_eq!(m.dimension(), Dim::Finite(5));
        assert!(m.atomic_certificate().is_some());
        assert_eq!(m.nsc_hint().unwrap().value, 4);

        // Free coefficients: no extra cell, no atomicity.
        let m = moore(&g("Z"), 3).unwrap();
        assert_eq!(m.dimension(), Dim::Finite(3));
        assert!(m.atomic_certificate().is_none());

        // Composite order: not a prime power, no certificate.
        let m = moore(&g("Z/6"), 3).unwrap();
        assert!(m.atomic_certificate().is_none());

        let m = moore(&g("Z^2+Z/2"), 3).unwrap();
        assert_eq!(m.dimension(), Dim::Finite(4));
        assert!(m.atomic_certificate().is_none());

        assert!(moore(&g("0"), 3).is_err());
        assert!(moore(&g("Z/2"), 1).is_err());
    }

    #[test]
    fn eilenberg_maclane_models() {
        let k = eilenberg_maclane(&g("Z/8"), 4, None, None).unwrap();
        assert_eq!(k.name(), "K(Z/8, 4)");
        assert_eq!(k.dimension(), Dim::Infinite);
        assert_eq!(k.cutoff(), 4);
        assert!(k.atomic_certificate().is_some());
        assert!(k.homology_at(5).is_err());

        assert!(eilenberg_maclane(&g("Z/6"), 2, None, None).is_err());
        assert!(eilenberg_maclane(&g("Z"), 2, None, None).is_err());

        // Integral homology of K(Z/2, 2) through degree 5.
        let mut extra = GradedGroup::new();
        extra.insert(4, g("Z/4")).unwrap();
        extra.insert(5, g("Z/2")).unwrap();
        let k = eilenberg_maclane(&g("Z/2"), 2, Some(extra), Some(5)).unwrap();
        assert_eq!(k.homology_at(3).unwrap(), g("0"));
        assert_eq!(k.homology_at(4).unwrap(), g("Z/4"));
        assert_eq!(k.homology_at(5).unwrap(), g("Z/2"));
        assert!(k.homology_at(6).is_err());

        // Extra entries may not collide with the concentration degree.
        let mut bad = GradedGroup::new();
        bad.insert(2, g("Z/2")).unwrap();
        assert!(eilenberg_maclane(&g("Z/2"), 2, Some(bad), Some(4)).is_err());
    }

    #[test]
    fn projective_models() {
        let cp = complex_projective(3).unwrap();
        assert_eq!(cp.name(), "CP^3");
        for d in [2, 4, 6] {
            assert_eq!(cp.homology_at(d).unwrap(), g("Z"));
        }
        assert_eq!(cp.homology_at(3).unwrap(), g("0"));
        assert_eq!(cp.nsc_hint().unwrap().value, 2);

        let hp = quaternionic_projective(2).unwrap();
        assert_eq!(hp.homology_at(4).unwrap(), g("Z"));
        assert_eq!(hp.homology_at(8).unwrap(), g("Z"));
        assert_eq!(hp.homology_at(2).unwrap(), g("0"));
        assert_eq!(hp.nsc_hint().unwrap().value, 4);

        assert!(complex_projective(0).is_err());
    }

    #[test]
    fn suspended_projective_model() {
        let y = suspended_real_projective(4).unwrap();
        assert_eq!(y.name(), "susp(RP^4)");
        assert_eq!(y.homology_at(2).unwrap(), g("Z/2"));
        assert_eq!(y.homology_at(4).unwrap(), g("Z/2"));
        assert_eq!(y.homology_at(3).unwrap(), g("0"));
        assert_eq!(y.homology_at(5).unwrap(), g("0"));
        assert_eq!(y.dimension(), Dim::Finite(5));
        let hint = y.nsc_hint().unwrap();
        assert_eq!((hint.kind, hint.value), (HintKind::UpperBound, 4));
        assert!(y.atomic_certificate().is_none());
        assert!(suspended_real_projective(3).is_err());
    }

    #[test]
    fn id_grammar() {
        assert_eq!(parse_space_id("S:5").unwrap().name(), "S^5");
        assert_eq!(parse_space_id("CP:3").unwrap().name(), "CP^3");
        assert_eq!(parse_space_id("HP:2").unwrap().name(), "HP^2");
        assert_eq!(parse_space_id("SRP:4").unwrap().name(), "susp(RP^4)");
        assert_eq!(parse_space_id("M:Z/4:3").unwrap().name(), "M(Z/4, 3)");
        assert_eq!(parse_space_id("K:Z/8:4").unwrap().name(), "K(Z/8, 4)");

        for bad in ["X:2", "S:1", "S", "M:Z/4", "CP:abc", "K:Z/6:3", "SRP:5", ""] {
            assert!(parse_space_id(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn ring_pairing() {
        let cp = catalog_ring(&complex_projective(3).unwrap(), "a").unwrap();
        assert_eq!((cp.degree(), cp.trunc()), (2, 3));
        let hp = catalog_ring(&quaternionic_projective(2).unwrap(), "a").unwrap();
        assert_eq!((hp.degree(), hp.trunc()), (4, 2));
        let s6 = catalog_ring(&sphere(6).unwrap(), "a").unwrap();
        assert_eq!((s6.degree(), s6.trunc()), (6, 1));
        assert!(catalog_ring(&sphere(5).unwrap(), "a").is_none());
        assert!(catalog_ring(&moore(&g("Z/2"), 3).unwrap(), "a").is_none());
    }
}
