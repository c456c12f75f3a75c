//! k-reducibility criteria and the registry-driven decision procedure.
//!
//! Each criterion is a sufficient condition guaranteeing that, for every
//! k-equivalence of X v Y, the diagonal blocks of the degree-i matrix are
//! isomorphisms on some set of degrees. Criteria live behind a common trait
//! in a fixed-order registry; `decide_k_reducibility` unions their coverage
//! and falls back to exhaustive enumeration on the degrees left over.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::block::{BlockEndo, Blocks};
use crate::catalog::catalog_ring;
use crate::error::{Error, Result};
use crate::group::{direct_sum, FgAbelianGroup};
use crate::hom::{enumerate_homs, GroupHom};
use crate::ring::{ring_hom_forced_trivial, HomTriviality};
use crate::space::{CatalogTag, Dim, HintKind, SpaceModel};
use crate::Trilean;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Disclaimer attached to counterexample witnesses: they live at the level
/// of graded homomorphisms.
pub const WITNESS_SCOPE_NOTE: &str =
    "the witness refutes reducibility for graded homomorphisms; realizability \
     by a continuous map is not claimed";

/// H^i from homology by universal coefficients: the free part of H_i plus
/// the torsion of H_{i-1}.
pub fn cohomology_at(space: &SpaceModel, degree: u32) -> Result<FgAbelianGroup> {
    let hi = space.homology_at(degree)?;
    let prev = if degree == 0 {
        FgAbelianGroup::trivial()
    } else {
        space.homology_at(degree - 1)?
    };
    FgAbelianGroup::canonicalize(hi.free_rank(), prev.invariant_factors())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeVanishing {
    pub degree: u32,
    /// Hom(H_i(X), H_i(Y)) = 0
    pub xy_vanishes: bool,
    /// Hom(H_i(Y), H_i(X)) = 0
    pub yx_vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingReport {
    pub fires: bool,
    pub degrees: Vec<DegreeVanishing>,
}

/// Decide one-sided Hom vanishing at a single degree. A degree beyond one
/// side's table is still decidable when the other side's group is known to
/// be zero: Hom into or out of the zero group vanishes regardless.
fn hom_vanishing_at(x: &SpaceModel, y: &SpaceModel, degree: u32) -> Result<DegreeVanishing> {
    match (x.homology_at(degree), y.homology_at(degree)) {
        (Ok(a), Ok(b)) => Ok(DegreeVanishing {
            degree,
            xy_vanishes: a.is_hom_trivial(&b),
            yx_vanishes: b.is_hom_trivial(&a),
        }),
        (Err(_), Ok(b)) if b.is_trivial() => Ok(DegreeVanishing {
            degree,
            xy_vanishes: true,
            yx_vanishes: true,
        }),
        (Ok(a), Err(_)) if a.is_trivial() => Ok(DegreeVanishing {
            degree,
            xy_vanishes: true,
            yx_vanishes: true,
        }),
        (Err(e), _) => Err(e),
        (_, Err(e)) => Err(e),
    }
}

/// Homology Hom-vanishing: fires iff for every i <= k at least one of
/// Hom(H_i(X), H_i(Y)), Hom(H_i(Y), H_i(X)) is zero.
pub fn criterion_hom_vanishing(
    x: &SpaceModel,
    y: &SpaceModel,
    k: u32,
) -> Result<VanishingReport> {
    let mut degrees = Vec::new();
    for i in 2..=k {
        degrees.push(hom_vanishing_at(x, y, i)?);
    }
    let fires = degrees.iter().all(|d| d.xy_vanishes || d.yx_vanishes);
    Ok(VanishingReport { fires, degrees })
}

/// The Ext part of cohomology degree k+1: torsion of H_k on both sides.
/// Degree-k torsion is invisible to cohomology below degree k+1, so its
/// one-sided cross-Hom vanishing is required before a cohomological argument
/// can control homology degree k itself.
fn torsion_tail_vanishing(x: &SpaceModel, y: &SpaceModel, k: u32) -> Result<DegreeVanishing> {
    let a = x.homology_at(k)?.torsion_part();
    let b = y.homology_at(k)?.torsion_part();
    Ok(DegreeVanishing {
        degree: k + 1,
        xy_vanishes: a.is_hom_trivial(&b),
        yx_vanishes: b.is_hom_trivial(&a),
    })
}

/// Cohomology Hom-vanishing via the universal-coefficient rule. The wedge
/// has finitely generated homology throughout, which the statement requires.
/// The final entry, labeled degree k+1, records only the Ext part there
/// (torsion of H_k); that is exactly what the k-reducibility conclusion
/// needs beyond the in-range checks.
pub fn criterion_cohom_vanishing(
    x: &SpaceModel,
    y: &SpaceModel,
    k: u32,
) -> Result<VanishingReport> {
    let mut degrees = Vec::new();
    for i in 2..=k {
        let a = cohomology_at(x, i)?;
        let b = cohomology_at(y, i)?;
        degrees.push(DegreeVanishing {
            degree: i,
            xy_vanishes: a.is_hom_trivial(&b),
            yx_vanishes: b.is_hom_trivial(&a),
        });
    }
    degrees.push(torsion_tail_vanishing(x, y, k)?);
    let fires = degrees.iter().all(|d| d.xy_vanishes || d.yx_vanishes);
    Ok(VanishingReport { fires, degrees })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonFactorReport {
    pub fires: bool,
    /// (degree, both finite with no common direct factor)
    pub degrees: Vec<(u32, bool)>,
}

/// Fires iff for every i <= k both homology groups are finite and share no
/// direct factor (same prime, same exponent, under primary decomposition).
pub fn criterion_no_common_factor(
    x: &SpaceModel,
    y: &SpaceModel,
    k: u32,
) -> Result<CommonFactorReport> {
    let mut degrees = Vec::new();
    for i in 2..=k {
        let a = x.homology_at(i)?;
        let b = y.homology_at(i)?;
        let ok = a.is_finite() && b.is_finite() && !a.has_common_direct_factor(&b)?;
        degrees.push((i, ok));
    }
    let fires = degrees.iter().all(|(_, ok)| *ok);
    Ok(CommonFactorReport { fires, degrees })
}

/// Is every endomorphism of `h` factoring through `g` nilpotent?
///
/// Fast path: when h is a sum of cyclic groups of pairwise distinct prime
/// power orders (equivalently, a single invariant factor) and none of those
/// prime powers is a direct factor of g, the answer is yes. Otherwise falls
/// back to enumerating Hom(h,g) x Hom(g,h) within the budget.
pub fn endos_through_all_nilpotent(
    h: &FgAbelianGroup,
    g: &FgAbelianGroup,
    budget: u64,
) -> Trilean {
    if h.is_trivial() {
        return Trilean::True;
    }
    if h.free_rank() == 0 && h.invariant_factors().len() == 1 {
        // A cyclic group's primary parts automatically have distinct primes.
        if let (Ok(hp), Ok(gp)) = (h.primary_decomposition(), g.primary_decomposition()) {
            let shared = hp
                .prime_powers
                .iter()
                .any(|pp| gp.prime_powers.contains(pp));
            if !shared {
                return Trilean::True;
            }
        }
    }
    let hom_size = |a: &FgAbelianGroup, b: &FgAbelianGroup| -> Option<BigInt> {
        let hg = a.hom_group(b);
        hg.is_finite().then(|| hg.torsion_order())
    };
    let (Some(n1), Some(n2)) = (hom_size(h, g), hom_size(g, h)) else {
        return Trilean::Undecided;
    };
    if n1 * n2 > BigInt::from(budget) {
        return Trilean::Undecided;
    }
    let Ok(forward) = enumerate_homs(h, g) else {
        return Trilean::Undecided;
    };
    let Ok(backward) = enumerate_homs(g, h) else {
        return Trilean::Undecided;
    };
    let forward: Vec<GroupHom> = forward.collect();
    let backward: Vec<GroupHom> = backward.collect();
    for f in &forward {
        for b in &backward {
            let composite = b.compose(f).expect("h -> g -> h composes");
            if !composite.is_nilpotent().expect("endomorphism of h") {
                return Trilean::False;
            }
        }
    }
    Trilean::True
}

/// Certified iff for every degree i <= n, all endomorphisms of H_i(X)
/// through H_i(Y) are nilpotent, and symmetrically. Sufficient for the
/// space-level notion (maps act degreewise), never necessary.
pub fn certify_homologically_distant(
    x: &SpaceModel,
    y: &SpaceModel,
    n: u32,
    budget: u64,
) -> Result<bool> {
    for i in 2..=n {
        let a = x.homology_at(i)?;
        let b = y.homology_at(i)?;
        if !endos_through_all_nilpotent(&a, &b, budget).is_true() {
            return Ok(false);
        }
        if !endos_through_all_nilpotent(&b, &a, budget).is_true() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A sufficient condition registered by name. `covered_degrees` returns the
/// degrees in 2..=k at which every k-equivalence of the wedge is guaranteed
/// invertible diagonal blocks; an empty list means the criterion does not
/// apply. Table gaps make degrees silently uncovered, never errors.
pub trait Criterion {
    fn id(&self) -> &'static str;
    fn citation(&self) -> &'static str;
    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, budget: u64) -> Vec<u32>;
}

struct HomVanishing;

impl Criterion for HomVanishing {
    fn id(&self) -> &'static str {
        "hom-vanishing"
    }

    fn citation(&self) -> &'static str {
        "if Hom(H_i(X), H_i(Y)) = 0 or Hom(H_i(Y), H_i(X)) = 0, every invertible \
         block matrix at degree i is triangular, and triangular invertible matrices \
         have invertible diagonal blocks"
    }

    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, _budget: u64) -> Vec<u32> {
        (2..=k)
            .filter(|i| {
                hom_vanishing_at(x, y, *i)
                    .map(|d| d.xy_vanishes || d.yx_vanishes)
                    .unwrap_or(false)
            })
            .collect()
    }
}

struct NoCommonFactor;

impl Criterion for NoCommonFactor {
    fn id(&self) -> &'static str {
        "no-common-direct-factor"
    }

    fn citation(&self) -> &'static str {
        "if H_i(X) and H_i(Y) are finite with no common direct factor, every \
         automorphism of their direct sum has invertible diagonal blocks"
    }

    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, _budget: u64) -> Vec<u32> {
        (2..=k)
            .filter(|i| {
                let (Ok(a), Ok(b)) = (x.homology_at(*i), y.homology_at(*i)) else {
                    return false;
                };
                a.is_finite()
                    && b.is_finite()
                    && a.has_common_direct_factor(&b) == Ok(false)
            })
            .collect()
    }
}

struct EmConcentration;

fn em_concentration_side(
    x: &SpaceModel,
    y: &SpaceModel,
    k: u32,
    _budget: u64,
) -> Option<Vec<u32>> {
    let Some(CatalogTag::EilenbergMacLane(g, n)) = x.tag() else {
        return None;
    };
    if k < *n {
        return None;
    }
    let hy = y.homology_at(*n).ok()?;
    if hy.is_trivial() {
        return None;
    }
    let pd = hy.primary_decomposition().ok()?;
    if pd.free_rank > 0 {
        return None;
    }
    // Pairwise distinct primes (the list is sorted with multiplicity).
    if pd
        .prime_powers
        .windows(2)
        .any(|w| w[0].prime == w[1].prime)
    {
        return None;
    }
    if g.has_common_direct_factor(&hy) != Ok(false) {
        return None;
    }
    Some((2..=*n).collect())
}

impl Criterion for EmConcentration {
    fn id(&self) -> &'static str {
        "em-concentration"
    }

    fn citation(&self) -> &'static str {
        "for X = K(G, n) and H_n(Y) a sum of cyclic groups of distinct prime power \
         orders, none a direct summand of G, every n-equivalence of X v Y is \
         n-reducible"
    }

    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, budget: u64) -> Vec<u32> {
        em_concentration_side(x, y, k, budget)
            .or_else(|| em_concentration_side(y, x, k, budget))
            .unwrap_or_default()
    }
}

fn atomic_through(space: &SpaceModel, k: u32) -> bool {
    space
        .atomic_certificate()
        .is_some_and(|c| c.degree >= Dim::Finite(k))
}

struct AtomicFactorNilpotent;

impl Criterion for AtomicFactorNilpotent {
    fn id(&self) -> &'static str {
        "atomic-factor-nilpotent"
    }

    fn citation(&self) -> &'static str {
        "for atomic summands, if at some degree i0 both homology groups are nonzero \
         and every endomorphism of one factoring through the other is nilpotent, \
         every k-equivalence with i0 <= k inside the atomicity range is k-reducible"
    }

    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, budget: u64) -> Vec<u32> {
        if !atomic_through(x, k) || !atomic_through(y, k) {
            return Vec::new();
        }
        for i0 in 2..=k {
            let (Ok(a), Ok(b)) = (x.homology_at(i0), y.homology_at(i0)) else {
                continue;
            };
            if a.is_trivial() || b.is_trivial() {
                continue;
            }
            // Nilpotence through the other group is symmetric: if g∘f is
            // always nilpotent then so is f∘g.
            if endos_through_all_nilpotent(&a, &b, budget).is_true() {
                return (2..=k).collect();
            }
        }
        Vec::new()
    }
}

struct AtomicDistinctCloseness;

impl Criterion for AtomicDistinctCloseness {
    fn id(&self) -> &'static str {
        "atomic-distinct-closeness"
    }

    fn citation(&self) -> &'static str {
        "a wedge of atomic spaces with pairwise distinct recorded self-closeness \
         numbers has every m-equivalence m-reducible, m the maximum of those numbers"
    }

    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, _budget: u64) -> Vec<u32> {
        let recorded = |s: &SpaceModel| -> Option<u32> {
            let cert = s.atomic_certificate()?;
            let hint = s.nsc_hint()?;
            // The theorem needs the recorded value within the atomicity range.
            (hint.kind == HintKind::Exact && Dim::Finite(hint.value) <= cert.degree)
                .then_some(hint.value)
        };
        let (Some(vx), Some(vy)) = (recorded(x), recorded(y)) else {
            return Vec::new();
        };
        if vx == vy || k != vx.max(vy) {
            return Vec::new();
        }
        (2..=k).collect()
    }
}

struct AtomicPromotion;

impl Criterion for AtomicPromotion {
    fn id(&self) -> &'static str {
        "atomic-promotion"
    }

    fn citation(&self) -> &'static str {
        "for atomic summands, once every m-equivalence is m-reducible at the first \
         degree m where both summands have homology, a diagonal block invertible \
         there is invertible in all degrees, so every k-equivalence is k-reducible \
         for k >= m inside the atomicity range"
    }

    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, budget: u64) -> Vec<u32> {
        if !atomic_through(x, k) || !atomic_through(y, k) {
            return Vec::new();
        }
        let (Some(mx), Some(my)) = (x.homology().min_degree(), y.homology().min_degree()) else {
            return Vec::new();
        };
        let m0 = mx.max(my);
        if m0 >= k {
            return Vec::new();
        }
        match decide_k_reducibility(x, y, m0, budget) {
            Ok(v) if v.outcome == ReducibilityOutcome::Reducible => (2..=k).collect(),
            _ => Vec::new(),
        }
    }
}

struct CohomVanishing;

impl Criterion for CohomVanishing {
    fn id(&self) -> &'static str {
        "cohom-vanishing"
    }

    fn citation(&self) -> &'static str {
        "with cohomology computed by universal coefficients (free part of H_i plus \
         torsion of H_{i-1}), one-sided Hom vanishing in every degree <= k, plus \
         one-sided vanishing on the torsion of H_k (the Ext part of degree k+1), \
         makes every k-equivalence k-reducible"
    }

    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, _budget: u64) -> Vec<u32> {
        for i in 2..=k {
            let (Ok(a), Ok(b)) = (cohomology_at(x, i), cohomology_at(y, i)) else {
                return Vec::new();
            };
            if !a.is_hom_trivial(&b) && !b.is_hom_trivial(&a) {
                return Vec::new();
            }
        }
        match torsion_tail_vanishing(x, y, k) {
            Ok(tail) if tail.xy_vanishes || tail.yx_vanishes => (2..=k).collect(),
            _ => Vec::new(),
        }
    }
}

struct RingVanishing;

impl Criterion for RingVanishing {
    fn id(&self) -> &'static str {
        "ring-vanishing"
    }

    fn citation(&self) -> &'static str {
        "when both spaces carry single-generator truncated polynomial cohomology \
         rings and every multiplicative graded map in one direction kills the \
         generator, every self-map of the wedge is k-reducible for all k"
    }

    fn covered_degrees(&self, x: &SpaceModel, y: &SpaceModel, k: u32, _budget: u64) -> Vec<u32> {
        let (Some(rx), Some(ry)) = (catalog_ring(x, "a"), catalog_ring(y, "b")) else {
            return Vec::new();
        };
        let forced = |t: HomTriviality| matches!(t, HomTriviality::Forced(_));
        if forced(ring_hom_forced_trivial(&rx, &ry)) || forced(ring_hom_forced_trivial(&ry, &rx))
        {
            (2..=k).collect()
        } else {
            Vec::new()
        }
    }
}

/// All registered criteria in their fixed evaluation order.
pub fn criteria_registry() -> Vec<Box<dyn Criterion>> {
    vec![
        Box::new(HomVanishing),
        Box::new(NoCommonFactor),
        Box::new(EmConcentration),
        Box::new(AtomicFactorNilpotent),
        Box::new(AtomicDistinctCloseness),
        Box::new(AtomicPromotion),
        Box::new(CohomVanishing),
        Box::new(RingVanishing),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducibilityOutcome {
    Reducible,
    Unknown,
    AlgebraicCounterexample,
}

impl std::fmt::Display for ReducibilityOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ReducibilityOutcome::Reducible => "REDUCIBLE",
            ReducibilityOutcome::Unknown => "UNKNOWN",
            ReducibilityOutcome::AlgebraicCounterexample => "ALGEBRAIC_COUNTEREXAMPLE",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiredCriterion {
    pub id: String,
    pub degrees: Vec<u32>,
    pub citation: String,
}

#[derive(Debug)]
pub struct ReducibilityVerdict {
    pub outcome: ReducibilityOutcome,
    pub criteria_fired: Vec<FiredCriterion>,
    pub witness: Option<BlockEndo>,
    pub witness_degree: Option<u32>,
}

enum CensusOutcome {
    AllPass,
    Counterexample(Blocks),
    Infeasible,
}

/// Enumerate every block matrix at one degree (XX slowest, then XY, YX, YY,
/// each in ascending entry order) and look for an invertible assembly with a
/// non-invertible diagonal block.
fn census_at(x: &SpaceModel, y: &SpaceModel, degree: u32, budget: u64) -> CensusOutcome {
    let (Ok(hx), Ok(hy)) = (x.homology_at(degree), y.homology_at(degree)) else {
        return CensusOutcome::Infeasible;
    };
    if !hx.is_finite() || !hy.is_finite() {
        return CensusOutcome::Infeasible;
    }
    let size = |a: &FgAbelianGroup, b: &FgAbelianGroup| a.hom_group(b).torsion_order();
    let total = size(&hx, &hx) * size(&hy, &hx) * size(&hx, &hy) * size(&hy, &hy);
    if total > BigInt::from(budget) {
        return CensusOutcome::Infeasible;
    }
    let collect = |a: &FgAbelianGroup, b: &FgAbelianGroup| -> Vec<GroupHom> {
        enumerate_homs(a, b).expect("finite groups").collect()
    };
    let xx_all = collect(&hx, &hx);
    let xy_all = collect(&hy, &hx);
    let yx_all = collect(&hx, &hy);
    let yy_all = collect(&hy, &hy);
    let ds = direct_sum(&hx, &hy);
    // Push each block through its embeddings once.
    let lift = |list: &[GroupHom], inj: &GroupHom, proj: &GroupHom| -> Vec<GroupHom> {
        list.iter()
            .map(|h| inj.compose(&h.compose(proj).unwrap()).unwrap())
            .collect()
    };
    let xx_lift = lift(&xx_all, &ds.inj_left, &ds.proj_left);
    let xy_lift = lift(&xy_all, &ds.inj_left, &ds.proj_right);
    let yx_lift = lift(&yx_all, &ds.inj_right, &ds.proj_left);
    let yy_lift = lift(&yy_all, &ds.inj_right, &ds.proj_right);
    for (i, xx) in xx_all.iter().enumerate() {
        let xx_iso = xx.is_isomorphism();
        for (j, _xy) in xy_all.iter().enumerate() {
            let partial = xx_lift[i].add(&xy_lift[j]).unwrap();
            for (l, _yx) in yx_all.iter().enumerate() {
                let partial = partial.add(&yx_lift[l]).unwrap();
                for (m, yy) in yy_all.iter().enumerate() {
                    let assembled = partial.add(&yy_lift[m]).unwrap();
                    if assembled.is_isomorphism() && !(xx_iso && yy.is_isomorphism()) {
                        return CensusOutcome::Counterexample(Blocks {
                            xx: xx.clone(),
                            xy: xy_all[j].clone(),
                            yx: yx_all[l].clone(),
                            yy: yy.clone(),
                        });
                    }
                }
            }
        }
    }
    CensusOutcome::AllPass
}

/// Run the criteria registry, then exhaust any degrees left uncovered.
/// REDUCIBLE means every k-equivalence of the wedge has invertible diagonal
/// blocks in all degrees <= k. A counterexample is a concrete block matrix
/// family assembling to an isomorphism with a non-invertible diagonal block.
pub fn decide_k_reducibility(
    x: &SpaceModel,
    y: &SpaceModel,
    k: u32,
    budget: u64,
) -> Result<ReducibilityVerdict> {
    let mut fired: Vec<FiredCriterion> = Vec::new();
    let mut covered: BTreeSet<u32> = BTreeSet::new();
    for criterion in criteria_registry() {
        let degrees = criterion.covered_degrees(x, y, k, budget);
        if !degrees.is_empty() {
            covered.extend(degrees.iter().copied());
            fired.push(FiredCriterion {
                id: criterion.id().into(),
                degrees,
                citation: criterion.citation().into(),
            });
        }
    }
    let uncovered: Vec<u32> = (2..=k).filter(|d| !covered.contains(d)).collect();
    if uncovered.is_empty() {
        return Ok(ReducibilityVerdict {
            outcome: ReducibilityOutcome::Reducible,
            criteria_fired: fired,
            witness: None,
            witness_degree: None,
        });
    }
    let mut censused = Vec::new();
    for degree in uncovered {
        match census_at(x, y, degree, budget) {
            CensusOutcome::AllPass => censused.push(degree),
            CensusOutcome::Counterexample(blocks) => {
                // Identity away from the bad degree; fall back to a shorter
                // cutoff if the full range is not tabulated.
                let witness = BlockEndo::identity(x.clone(), y.clone(), k)
                    .or_else(|_| BlockEndo::identity(x.clone(), y.clone(), degree))?
                    .with_blocks_at(degree, blocks)?;
                return Ok(ReducibilityVerdict {
                    outcome: ReducibilityOutcome::AlgebraicCounterexample,
                    criteria_fired: fired,
                    witness: Some(witness),
                    witness_degree: Some(degree),
                });
            }
            CensusOutcome::Infeasible => {
                return Ok(ReducibilityVerdict {
                    outcome: ReducibilityOutcome::Unknown,
                    criteria_fired: fired,
                    witness: None,
                    witness_degree: None,
                });
            }
        }
    }
    fired.push(FiredCriterion {
        id: "exhaustive-census".into(),
        degrees: censused,
        citation: "every invertible block matrix at these degrees was enumerated and \
                   has invertible diagonal blocks"
            .into(),
    });
    Ok(ReducibilityVerdict {
        outcome: ReducibilityOutcome::Reducible,
        criteria_fired: fired,
        witness: None,
        witness_degree: None,
    })
}

fn require_equivalence_with_invertible_xx(b: &BlockEndo, k: u32) -> Result<()> {
    if !b.assemble()?.is_k_equivalence(k)? {
        return Err(Error::PreconditionViolation(
            "the block endomorphism is not a k-equivalence".into(),
        ));
    }
    for d in 2..=k {
        if !b.blocks_at(d)?.xx.is_isomorphism() {
            return Err(Error::PreconditionViolation(format!(
                "XX block at degree {d} is not an automorphism"
            )));
        }
    }
    Ok(())
}

/// Per-map radical criterion: for a k-equivalence whose XX blocks are
/// automorphisms, if each correction YX o XX^{-1} o XY is radical in
/// End(H_i(Y)) then the YY blocks are automorphisms and the map is
/// k-reducible. Returns the trilean of the radical verification.
pub fn per_map_radical_criterion(b: &BlockEndo, k: u32, budget: u64) -> Result<Trilean> {
    require_equivalence_with_invertible_xx(b, k)?;
    let mut verdict = Trilean::True;
    for d in 2..=k {
        let blocks = b.blocks_at(d)?;
        let correction = blocks.yx.compose(&blocks.xx.invert()?.compose(&blocks.xy)?)?;
        match correction.is_radical(budget)? {
            Trilean::True => {
                debug_assert!(blocks.yy.is_isomorphism());
            }
            Trilean::False => return Ok(Trilean::False),
            Trilean::Undecided => verdict = Trilean::Undecided,
        }
    }
    Ok(verdict)
}

/// Per-map version of the homologically-distant argument: nilpotent
/// corrections plus commutative End(H_i(Y)) force the YY blocks invertible.
/// Fully decidable; false means the hypotheses fail for this map.
pub fn per_map_distant_commutative_criterion(b: &BlockEndo, k: u32) -> Result<bool> {
    require_equivalence_with_invertible_xx(b, k)?;
    for d in 2..=k {
        let blocks = b.blocks_at(d)?;
        if !blocks.yy.source().is_end_commutative() {
            return Ok(false);
        }
        let correction = blocks.yx.compose(&blocks.xx.invert()?.compose(&blocks.xy)?)?;
        if !correction.is_nilpotent()? {
            return Ok(false);
        }
        debug_assert!(blocks.yy.is_isomorphism());
    }
    Ok(true)
}
