//! Brute-force verification suites over residue-tuple groups.
//!
//! The oracle side works with tuples of residues and elementwise modular
//! arithmetic only -- no Smith normal form, no canonicalization -- so that it
//! can independently check the library's structural algorithms. Suites live
//! behind a common trait in a registry and are selected by name.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;
use crate::hom::{enumerate_homs, GroupHom};
use crate::matrix::IntMat;

/// A finite abelian group presented as Z/m_1 x ... x Z/m_k, with the moduli
/// taken exactly as given (no invariant-factor normalization).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleGroup {
    moduli: Vec<u64>,
}

impl TupleGroup {
    pub fn new(moduli: &[u64]) -> Self {
        assert!(moduli.iter().all(|&m| m >= 1), "moduli must be positive");
        TupleGroup {
            moduli: moduli.to_vec(),
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn size(&self) -> u64 {
        self.moduli.iter().product()
    }

    /// Every element, in mixed-radix order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for t in &out {
                for v in 0..m {
                    let mut t2 = t.clone();
                    t2.push(v);
                    next.push(t2);
                }
            }
            out = next;
        }
        out
    }

    /// The canonical library-side group with the same moduli.
    pub fn to_library_group(&self) -> FgAbelianGroup {
        let factors: Vec<BigInt> = self
            .moduli
            .iter()
            .filter(|&&m| m > 1)
            .map(|&m| BigInt::from(m))
            .collect();
        FgAbelianGroup::canonicalize(0, &factors).expect("moduli are >= 2")
    }
}

/// A homomorphism between tuple groups, stored as a residue matrix with
/// entries[j][i] the coefficient of source generator i in target coordinate j.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleMap {
    source: Vec<u64>,
    target: Vec<u64>,
    entries: Vec<Vec<u64>>,
}

impl TupleMap {
    /// entries[j][i] must satisfy the order condition
    /// m_i * entries[j][i] = 0 mod n_j.
    pub fn new(source: &TupleGroup, target: &TupleGroup, entries: Vec<Vec<u64>>) -> Result<Self> {
        if entries.len() != target.moduli.len()
            || entries.iter().any(|row| row.len() != source.moduli.len())
        {
            return Err(Error::InvalidHomomorphism(
                "tuple map entry shape does not match the groups".into(),
            ));
        }
        for (j, row) in entries.iter().enumerate() {
            let n = target.moduli[j];
            for (i, &a) in row.iter().enumerate() {
                let m = source.moduli[i];
                if a >= n || (a * m) % n != 0 {
                    return Err(Error::InvalidHomomorphism(format!(
                        "entry {a} at ({j},{i}) does not kill the order of Z/{m} in Z/{n}"
                    )));
                }
            }
        }
        Ok(TupleMap {
            source: source.moduli.clone(),
            target: target.moduli.clone(),
            entries,
        })
    }

    pub fn zero(source: &TupleGroup, target: &TupleGroup) -> Self {
        TupleMap {
            source: source.moduli.clone(),
            target: target.moduli.clone(),
            entries: vec![vec![0; source.moduli.len()]; target.moduli.len()],
        }
    }

    pub fn identity(group: &TupleGroup) -> Self {
        let k = group.moduli.len();
        let mut entries = vec![vec![0; k]; k];
        for (j, row) in entries.iter_mut().enumerate() {
            row[j] = 1 % group.moduli[j];
        }
        TupleMap {
            source: group.moduli.clone(),
            target: group.moduli.clone(),
            entries,
        }
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.entries
            .iter()
            .zip(&self.target)
            .map(|(row, &n)| {
                row.iter()
                    .zip(x)
                    .fold(0u64, |acc, (&a, &v)| (acc + a * v) % n)
            })
            .collect()
    }

    /// self after first.
    pub fn compose(&self, first: &TupleMap) -> TupleMap {
        assert_eq!(self.source, first.target, "composition mismatch");
        let entries = (0..self.target.len())
            .map(|j| {
                let n = self.target[j];
                (0..first.source.len())
                    .map(|i| {
                        (0..self.source.len())
                            .fold(0u64, |acc, k| (acc + self.entries[j][k] * first.entries[k][i]) % n)
                    })
                    .collect()
            })
            .collect();
        TupleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            entries,
        }
    }

    pub fn add(&self, other: &TupleMap) -> TupleMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .zip(&self.target)
            .map(|((a, b), &n)| a.iter().zip(b).map(|(&x, &y)| (x + y) % n).collect())
            .collect();
        TupleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            entries,
        }
    }

    pub fn sub(&self, other: &TupleMap) -> TupleMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .zip(&self.target)
            .map(|((a, b), &n)| {
                a.iter()
                    .zip(b)
                    .map(|(&x, &y)| (x + n - y) % n)
                    .collect()
            })
            .collect();
        TupleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(|&a| a == 0))
    }

    /// Decided by applying the map to every source tuple.
    pub fn is_bijective(&self) -> bool {
        let src = TupleGroup::new(&self.source);
        let tgt = TupleGroup::new(&self.target);
        if src.size() != tgt.size() {
            return false;
        }
        let mut seen = HashSet::with_capacity(src.size() as usize);
        src.elements().iter().all(|x| seen.insert(self.apply(x)))
    }

    /// Iterate powers until zero or a cycle.
    pub fn is_nilpotent_naive(&self) -> bool {
        assert_eq!(self.source, self.target, "nilpotency needs an endomorphism");
        let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
        let mut power = self.clone();
        loop {
            if power.is_zero() {
                return true;
            }
            if !seen.insert(power.entries.clone()) {
                return false;
            }
            power = power.compose(self);
        }
    }

    /// Inverse of a bijection, reconstructed from preimages of the unit
    /// vectors. None when the map is not bijective.
    pub fn inverse(&self) -> Option<TupleMap> {
        if !self.is_bijective() {
            return None;
        }
        let src = TupleGroup::new(&self.source);
        let mut preimage = std::collections::HashMap::new();
        for x in src.elements() {
            preimage.insert(self.apply(&x), x);
        }
        let units: Vec<Vec<u64>> = (0..self.target.len())
            .map(|i| {
                (0..self.target.len())
                    .map(|j| if i == j { 1 % self.target[j] } else { 0 })
                    .collect()
            })
            .collect();
        let columns: Vec<&Vec<u64>> = units.iter().map(|u| &preimage[u]).collect();
        let entries = (0..self.source.len())
            .map(|j| (0..self.target.len()).map(|i| columns[i][j]).collect())
            .collect();
        Some(TupleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            entries,
        })
    }

    /// The corresponding library-side homomorphism on the canonical groups,
    /// available when the moduli already form a divisibility chain with no
    /// trivial coordinates (so the canonical form keeps the same coordinates).
    pub fn to_library_hom(&self) -> Result<GroupHom> {
        let src = TupleGroup::new(&self.source).to_library_group();
        let tgt = TupleGroup::new(&self.target).to_library_group();
        let mut m = IntMat::zeros(self.target.len(), self.source.len());
        for (j, row) in self.entries.iter().enumerate() {
            for (i, &a) in row.iter().enumerate() {
                m.set(j, i, BigInt::from(a));
            }
        }
        GroupHom::new(src, tgt, m)
    }
}

/// All homomorphisms between two tuple groups: entry (j,i) ranges over the
/// gcd(m_i, n_j) multiples of n_j / gcd(m_i, n_j).
pub fn enumerate_tuple_maps(source: &TupleGroup, target: &TupleGroup) -> Vec<TupleMap> {
    let cells: Vec<Vec<u64>> = target
        .moduli
        .iter()
        .flat_map(|&n| {
            source.moduli.iter().map(move |&m| {
                let g = gcd(m, n);
                (0..g).map(|t| t * (n / g)).collect::<Vec<u64>>()
            })
        })
        .collect();
    let cols = source.moduli.len();
    let mut out = Vec::new();
    let mut picks = vec![0usize; cells.len()];
    loop {
        let entries: Vec<Vec<u64>> = picks
            .chunks(cols)
            .zip(cells.chunks(cols))
            .map(|(p, c)| p.iter().zip(c).map(|(&k, cell)| cell[k]).collect())
            .collect();
        out.push(TupleMap {
            source: source.moduli.clone(),
            target: target.moduli.clone(),
            entries,
        });
        // odometer, last cell fastest
        let mut pos = cells.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            picks[pos] += 1;
            if picks[pos] < cells[pos].len() {
                break;
            }
            picks[pos] = 0;
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Predicted |Hom| by the elementwise gcd formula.
pub fn hom_count_formula(source: &TupleGroup, target: &TupleGroup) -> BigInt {
    let mut count = BigInt::from(1);
    for &n in &target.moduli {
        for &m in &source.moduli {
            count *= BigInt::from(gcd(m, n));
        }
    }
    count
}

/// Block assembly on the concatenated tuple group.
pub fn assemble_tuple_blocks(
    xx: &TupleMap,
    xy: &TupleMap,
    yx: &TupleMap,
    yy: &TupleMap,
) -> TupleMap {
    assert_eq!(xx.source, xx.target);
    assert_eq!(yy.source, yy.target);
    assert_eq!(xy.source, yy.source);
    assert_eq!(xy.target, xx.target);
    assert_eq!(yx.source, xx.source);
    assert_eq!(yx.target, yy.target);
    let mut moduli = xx.source.clone();
    moduli.extend_from_slice(&yy.source);
    let k = xx.source.len();
    let total = moduli.len();
    let mut entries = vec![vec![0u64; total]; total];
    for j in 0..total {
        for i in 0..total {
            entries[j][i] = match (j < k, i < k) {
                (true, true) => xx.entries[j][i],
                (true, false) => xy.entries[j][i - k],
                (false, true) => yx.entries[j - k][i],
                (false, false) => yy.entries[j - k][i - k],
            };
        }
    }
    TupleMap {
        source: moduli.clone(),
        target: moduli,
        entries,
    }
}

/// Extract the (row_second, col_second) block of an endomorphism of a
/// concatenated group, k = size of the first summand.
pub fn extract_block(map: &TupleMap, k: usize, row_second: bool, col_second: bool) -> TupleMap {
    let (r0, r1) = if row_second {
        (k, map.target.len())
    } else {
        (0, k)
    };
    let (c0, c1) = if col_second {
        (k, map.source.len())
    } else {
        (0, k)
    };
    TupleMap {
        source: map.source[c0..c1].to_vec(),
        target: map.target[r0..r1].to_vec(),
        entries: map.entries[r0..r1]
            .iter()
            .map(|row| row[c0..c1].to_vec())
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuiteOutcome {
    Pass,
    Counterexample { witness: String },
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub description: String,
    pub instances: u64,
    pub outcome: SuiteOutcome,
    pub runtime_ms: u128,
}

/// A named verification suite; `run` returns the number of instances checked
/// and the outcome.
pub trait VerifySuite {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn default_bound(&self) -> u64;
    fn run(&self, bound: u64) -> Result<(u64, SuiteOutcome)>;
}

fn fail(witness: String) -> (u64, SuiteOutcome) {
    (0, SuiteOutcome::Counterexample { witness })
}

/// Invariant-factor chains [d1, d2] (d1 | d2) and singletons with order
/// bounded by `bound`.
fn chain_families(bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for m in 2..=bound {
        out.push(vec![m]);
    }
    for d1 in 2..=bound {
        for mult in 1..=bound {
            let d2 = d1 * mult;
            if d1 * d2 > bound {
                break;
            }
            out.push(vec![d1, d2]);
        }
    }
    out
}

struct HomCensus;

impl VerifySuite for HomCensus {
    fn name(&self) -> &'static str {
        "hom-census"
    }

    fn description(&self) -> &'static str {
        "elementwise gcd count of Hom(G, H) against the library's Hom-group \
         order and enumeration length"
    }

    fn default_bound(&self) -> u64 {
        24
    }

    fn run(&self, bound: u64) -> Result<(u64, SuiteOutcome)> {
        // Include non-chain moduli: the formula is presentation-independent.
        let mut family = chain_families(bound);
        for a in 2..=bound {
            for b in 2..a {
                if a * b <= bound && a % b != 0 {
                    family.push(vec![b, a]);
                }
            }
        }
        let mut instances = 0;
        for src_moduli in &family {
            for dst_moduli in &family {
                let src = TupleGroup::new(src_moduli);
                let dst = TupleGroup::new(dst_moduli);
                let predicted = hom_count_formula(&src, &dst);
                let lib_order = src
                    .to_library_group()
                    .hom_group(&dst.to_library_group())
                    .order()
                    .expect("Hom of finite groups is finite");
                if lib_order != predicted {
                    return Ok(fail(format!(
                        "Hom({src_moduli:?} -> {dst_moduli:?}): gcd formula {predicted}, library order {lib_order}"
                    )));
                }
                if predicted <= BigInt::from(200) {
                    let oracle_list = enumerate_tuple_maps(&src, &dst).len();
                    let lib_list =
                        enumerate_homs(&src.to_library_group(), &dst.to_library_group())?.count();
                    if BigInt::from(oracle_list) != predicted || lib_list != oracle_list {
                        return Ok(fail(format!(
                            "Hom({src_moduli:?} -> {dst_moduli:?}): oracle list {oracle_list}, library list {lib_list}, formula {predicted}"
                        )));
                    }
                }
                instances += 1;
            }
        }
        Ok((instances, SuiteOutcome::Pass))
    }
}

struct RedOne;

impl VerifySuite for RedOne {
    fn name(&self) -> &'static str {
        "red-i"
    }

    fn description(&self) -> &'static str {
        "triangular block censuses: when one off-diagonal Hom vanishes, an \
         assembled bijection has bijective diagonal blocks"
    }

    fn default_bound(&self) -> u64 {
        0
    }

    fn run(&self, _bound: u64) -> Result<(u64, SuiteOutcome)> {
        let mut instances = 0;
        // Coprime pairs: both off-diagonal Homs vanish.
        for (a, b) in [(4u64, 9u64), (2, 3), (8, 27), (4, 25)] {
            let ga = TupleGroup::new(&[a]);
            let gb = TupleGroup::new(&[b]);
            if enumerate_tuple_maps(&ga, &gb).len() != 1 || enumerate_tuple_maps(&gb, &ga).len() != 1
            {
                return Ok(fail(format!("Hom(Z/{a}, Z/{b}) is not zero")));
            }
            let zero_ab = TupleMap::zero(&gb, &ga);
            let zero_ba = TupleMap::zero(&ga, &gb);
            for xx in enumerate_tuple_maps(&ga, &ga) {
                for yy in enumerate_tuple_maps(&gb, &gb) {
                    let assembled = assemble_tuple_blocks(&xx, &zero_ab, &zero_ba, &yy);
                    if assembled.is_bijective() != (xx.is_bijective() && yy.is_bijective()) {
                        return Ok(fail(format!(
                            "diagonal census (Z/{a}, Z/{b}): xx = {:?}, yy = {:?}",
                            xx.entries, yy.entries
                        )));
                    }
                    instances += 1;
                }
            }
        }
        // Genuinely triangular: the upper-right block ranges over a nonzero
        // Hom while the lower-left is pinned to zero.
        for (a, b) in [(4u64, 2u64), (8, 4), (9, 3)] {
            let ga = TupleGroup::new(&[a]);
            let gb = TupleGroup::new(&[b]);
            let zero_ba = TupleMap::zero(&ga, &gb);
            for xx in enumerate_tuple_maps(&ga, &ga) {
                for xy in enumerate_tuple_maps(&gb, &ga) {
                    for yy in enumerate_tuple_maps(&gb, &gb) {
                        let assembled = assemble_tuple_blocks(&xx, &xy, &zero_ba, &yy);
                        if assembled.is_bijective() != (xx.is_bijective() && yy.is_bijective()) {
                            return Ok(fail(format!(
                                "triangular census (Z/{a}, Z/{b}): xx = {:?}, xy = {:?}, yy = {:?}",
                                xx.entries, xy.entries, yy.entries
                            )));
                        }
                        instances += 1;
                    }
                }
            }
        }
        Ok((instances, SuiteOutcome::Pass))
    }
}

struct RedThree;

impl VerifySuite for RedThree {
    fn name(&self) -> &'static str {
        "red-iii"
    }

    fn description(&self) -> &'static str {
        "no-common-direct-factor censuses: every bijective assembly over \
         (Z/2, Z/4), (Z/4, Z/9) and (Z/2 x Z/2, Z/4) has bijective diagonals"
    }

    fn default_bound(&self) -> u64 {
        0
    }

    fn run(&self, _bound: u64) -> Result<(u64, SuiteOutcome)> {
        let pairs: [(&[u64], &[u64]); 3] = [(&[2], &[4]), (&[4], &[9]), (&[2, 2], &[4])];
        let mut instances = 0;
        for (am, bm) in pairs {
            let ga = TupleGroup::new(am);
            let gb = TupleGroup::new(bm);
            let xxs = enumerate_tuple_maps(&ga, &ga);
            let xys = enumerate_tuple_maps(&gb, &ga);
            let yxs = enumerate_tuple_maps(&ga, &gb);
            let yys = enumerate_tuple_maps(&gb, &gb);
            for xx in &xxs {
                for xy in &xys {
                    for yx in &yxs {
                        for yy in &yys {
                            instances += 1;
                            let assembled = assemble_tuple_blocks(xx, xy, yx, yy);
                            if assembled.is_bijective()
                                && !(xx.is_bijective() && yy.is_bijective())
                            {
                                return Ok(fail(format!(
                                    "({am:?}, {bm:?}): invertible assembly with deficient diagonal: xx = {:?}, xy = {:?}, yx = {:?}, yy = {:?}",
                                    xx.entries, xy.entries, yx.entries, yy.entries
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok((instances, SuiteOutcome::Pass))
    }
}

struct PrimeNilpotent;

impl VerifySuite for PrimeNilpotent {
    fn name(&self) -> &'static str {
        "prime-nilpotent"
    }

    fn description(&self) -> &'static str {
        "composites through a group sharing no prime-power direct factor are \
         nilpotent; a shared factor yields the identity as counterexample"
    }

    fn default_bound(&self) -> u64 {
        0
    }

    fn run(&self, _bound: u64) -> Result<(u64, SuiteOutcome)> {
        let mut instances = 0;
        let cases: [(&[u64], &[u64]); 2] = [(&[2, 3], &[4, 9]), (&[2, 5], &[4, 25])];
        for (hm, gm) in cases {
            let h = TupleGroup::new(hm);
            let g = TupleGroup::new(gm);
            for f in enumerate_tuple_maps(&h, &g) {
                for b in enumerate_tuple_maps(&g, &h) {
                    instances += 1;
                    let composite = b.compose(&f);
                    if !composite.is_nilpotent_naive() {
                        return Ok(fail(format!(
                            "({hm:?} through {gm:?}): non-nilpotent composite {:?}",
                            composite.entries
                        )));
                    }
                }
            }
        }
        // Control: with the factor shared, the identity factors through.
        let z2 = TupleGroup::new(&[2]);
        let non_nilpotent_exists = enumerate_tuple_maps(&z2, &z2)
            .iter()
            .flat_map(|f| {
                enumerate_tuple_maps(&z2, &z2)
                    .into_iter()
                    .map(move |b| b.compose(f))
            })
            .any(|c| !c.is_nilpotent_naive());
        if !non_nilpotent_exists {
            return Ok(fail(
                "control failed: all composites Z/2 -> Z/2 -> Z/2 were nilpotent".into(),
            ));
        }
        instances += 4;
        Ok((instances, SuiteOutcome::Pass))
    }
}

struct Schur;

impl VerifySuite for Schur {
    fn name(&self) -> &'static str {
        "schur"
    }

    fn description(&self) -> &'static str {
        "for every invertible assembly with invertible XX block, the Schur \
         complement YY - YX XX^{-1} XY is invertible and YY = (phi_22)^{-1} + \
         YX XX^{-1} XY, phi the inverse assembly"
    }

    fn default_bound(&self) -> u64 {
        0
    }

    fn run(&self, _bound: u64) -> Result<(u64, SuiteOutcome)> {
        let mut instances = 0;
        let groups: [&[u64]; 2] = [&[2, 2], &[4]];
        for gm in groups {
            let g = TupleGroup::new(gm);
            let endos = enumerate_tuple_maps(&g, &g);
            let k = gm.len();
            for xx in &endos {
                let xx_inv = xx.inverse();
                for xy in &endos {
                    for yx in &endos {
                        let correction = xx_inv
                            .as_ref()
                            .map(|inv| yx.compose(inv).compose(xy));
                        for yy in &endos {
                            let assembled = assemble_tuple_blocks(xx, xy, yx, yy);
                            if !assembled.is_bijective() {
                                continue;
                            }
                            let Some(correction) = correction.as_ref() else {
                                continue;
                            };
                            instances += 1;
                            let schur = yy.sub(correction);
                            if !schur.is_bijective() {
                                return Ok(fail(format!(
                                    "{gm:?}: singular Schur complement for xx = {:?}, xy = {:?}, yx = {:?}, yy = {:?}",
                                    xx.entries, xy.entries, yx.entries, yy.entries
                                )));
                            }
                            let phi = assembled.inverse().expect("assembly is bijective");
                            let phi22 = extract_block(&phi, k, true, true);
                            let Some(phi22_inv) = phi22.inverse() else {
                                return Ok(fail(format!(
                                    "{gm:?}: phi_22 not invertible for xx = {:?}, xy = {:?}, yx = {:?}, yy = {:?}",
                                    xx.entries, xy.entries, yx.entries, yy.entries
                                )));
                            };
                            let reconstructed = phi22_inv.add(correction);
                            if &reconstructed != yy {
                                return Ok(fail(format!(
                                    "{gm:?}: reconstruction identity failed for xx = {:?}, xy = {:?}, yx = {:?}, yy = {:?}",
                                    xx.entries, xy.entries, yx.entries, yy.entries
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok((instances, SuiteOutcome::Pass))
    }
}

struct NilpotentDecider;

impl VerifySuite for NilpotentDecider {
    fn name(&self) -> &'static str {
        "nilpotent-decider"
    }

    fn description(&self) -> &'static str {
        "library nilpotency decision against naive power iteration on every \
         endomorphism of every group of bounded order with at most two \
         invariant factors"
    }

    fn default_bound(&self) -> u64 {
        64
    }

    fn run(&self, bound: u64) -> Result<(u64, SuiteOutcome)> {
        let mut instances = 0;
        for moduli in chain_families(bound) {
            let g = TupleGroup::new(&moduli);
            for endo in enumerate_tuple_maps(&g, &g) {
                instances += 1;
                let naive = endo.is_nilpotent_naive();
                let lib = endo.to_library_hom()?.is_nilpotent()?;
                if naive != lib {
                    return Ok(fail(format!(
                        "{moduli:?}: {:?} naive {naive}, library {lib}",
                        endo.entries
                    )));
                }
            }
        }
        Ok((instances, SuiteOutcome::Pass))
    }
}

struct EndCommutative;

impl VerifySuite for EndCommutative {
    fn name(&self) -> &'static str {
        "end-commutative"
    }

    fn description(&self) -> &'static str {
        "library commutativity test for End(G) against the full composition \
         census"
    }

    fn default_bound(&self) -> u64 {
        36
    }

    fn run(&self, bound: u64) -> Result<(u64, SuiteOutcome)> {
        let mut instances = 0;
        for moduli in chain_families(bound) {
            let g = TupleGroup::new(&moduli);
            let endos = enumerate_tuple_maps(&g, &g);
            let mut census = true;
            'outer: for f in &endos {
                for h in &endos {
                    if f.compose(h) != h.compose(f) {
                        census = false;
                        break 'outer;
                    }
                }
            }
            let lib = g.to_library_group().is_end_commutative();
            if census != lib {
                return Ok(fail(format!(
                    "{moduli:?}: census {census}, library {lib}"
                )));
            }
            instances += 1;
        }
        Ok((instances, SuiteOutcome::Pass))
    }
}

struct QuasiRegular;

impl VerifySuite for QuasiRegular {
    fn name(&self) -> &'static str {
        "quasi-regular"
    }

    fn description(&self) -> &'static str {
        "Id - f bijectivity against the library's quasi-regularity, and the \
         rule that nilpotent endomorphisms are quasi-regular"
    }

    fn default_bound(&self) -> u64 {
        32
    }

    fn run(&self, bound: u64) -> Result<(u64, SuiteOutcome)> {
        let mut instances = 0;
        for moduli in chain_families(bound) {
            let g = TupleGroup::new(&moduli);
            let id = TupleMap::identity(&g);
            for endo in enumerate_tuple_maps(&g, &g) {
                instances += 1;
                let oracle_qr = id.sub(&endo).is_bijective();
                let lib_qr = endo.to_library_hom()?.is_quasi_regular()?;
                if oracle_qr != lib_qr {
                    return Ok(fail(format!(
                        "{moduli:?}: {:?} oracle quasi-regular {oracle_qr}, library {lib_qr}",
                        endo.entries
                    )));
                }
                if endo.is_nilpotent_naive() && !oracle_qr {
                    return Ok(fail(format!(
                        "{moduli:?}: nilpotent {:?} with singular Id - f",
                        endo.entries
                    )));
                }
            }
        }
        Ok((instances, SuiteOutcome::Pass))
    }
}

pub fn suite_registry() -> Vec<Box<dyn VerifySuite>> {
    vec![
        Box::new(HomCensus),
        Box::new(RedOne),
        Box::new(RedThree),
        Box::new(PrimeNilpotent),
        Box::new(Schur),
        Box::new(NilpotentDecider),
        Box::new(EndCommutative),
        Box::new(QuasiRegular),
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    suite_registry().iter().map(|s| s.name()).collect()
}

/// Run one suite by name; `bound` falls back to the suite's default.
pub fn run_suite(name: &str, bound: Option<u64>) -> Result<VerificationReport> {
    let suite = suite_registry()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown suite '{name}'; available: {}",
                suite_names().join(", ")
            ))
        })?;
    let bound = bound.unwrap_or_else(|| suite.default_bound());
    let start = Instant::now();
    let (instances, outcome) = suite.run(bound)?;
    Ok(VerificationReport {
        suite: suite.name().into(),
        description: suite.description().into(),
        instances,
        outcome,
        runtime_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_arithmetic() {
        let g = TupleGroup::new(&[2, 4]);
        assert_eq!(g.size(), 8);
        assert_eq!(g.elements().len(), 8);
        let id = TupleMap::identity(&g);
        assert!(id.is_bijective());
        assert!(!id.is_nilpotent_naive());
        let zero = TupleMap::zero(&g, &g);
        assert!(zero.is_nilpotent_naive());
        assert_eq!(id.compose(&zero), zero);
        assert_eq!(id.sub(&id), zero);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn tuple_map_validation() {
        let z2 = TupleGroup::new(&[2]);
        let z4 = TupleGroup::new(&[4]);
        // 1 does not kill the order of Z/2 inside Z/4.
        assert!(TupleMap::new(&z2, &z4, vec![vec![1]]).is_err());
        assert!(TupleMap::new(&z2, &z4, vec![vec![2]]).is_ok());
        assert_eq!(enumerate_tuple_maps(&z2, &z4).len(), 2);
        assert_eq!(enumerate_tuple_maps(&z4, &z2).len(), 2);
        assert_eq!(enumerate_tuple_maps(&z4, &z4).len(), 4);
    }

    #[test]
    fn enumeration_matches_formula() {
        for (s, t) in [
            (vec![2u64, 4], vec![8u64]),
            (vec![3, 9], vec![3, 3]),
            (vec![2, 3], vec![4, 9]),
            (vec![6], vec![4]),
        ] {
            let src = TupleGroup::new(&s);
            let dst = TupleGroup::new(&t);
            assert_eq!(
                BigInt::from(enumerate_tuple_maps(&src, &dst).len()),
                hom_count_formula(&src, &dst),
                "{s:?} -> {t:?}"
            );
        }
    }

    #[test]
    fn naive_nilpotency_examples() {
        let z4 = TupleGroup::new(&[4]);
        let double = TupleMap::new(&z4, &z4, vec![vec![2]]).unwrap();
        assert!(double.is_nilpotent_naive());
        let triple = TupleMap::new(&z4, &z4, vec![vec![3]]).unwrap();
        assert!(!triple.is_nilpotent_naive());

        // Strictly upper triangular on Z/2 x Z/2.
        let g = TupleGroup::new(&[2, 2]);
        let n = TupleMap::new(&g, &g, vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert!(n.is_nilpotent_naive());
    }

    #[test]
    fn suites_pass_with_small_bounds() {
        for (name, bound) in [
            ("hom-census", Some(12)),
            ("red-i", None),
            ("red-iii", None),
            ("prime-nilpotent", None),
            ("nilpotent-decider", Some(16)),
            ("end-commutative", Some(12)),
            ("quasi-regular", Some(9)),
        ] {
            let report = run_suite(name, bound).unwrap();
            assert_eq!(
                report.outcome,
                SuiteOutcome::Pass,
                "suite {name}: {:?}",
                report.outcome
            );
            assert!(report.instances > 0, "suite {name} checked nothing");
        }
    }

    #[test]
    fn schur_suite_full() {
        let report = run_suite("schur", None).unwrap();
        assert_eq!(report.outcome, SuiteOutcome::Pass);
        // Every invertible assembly with invertible XX over both censuses.
        assert!(report.instances > 1000);
    }

    #[test]
    fn red_census_sizes() {
        let report = run_suite("red-iii", None).unwrap();
        // (Z/2, Z/4): 2*2*2*4 = 32; (Z/4, Z/9): 36; (Z/2xZ/2, Z/4): 16*4*4*4.
        assert_eq!(report.instances, 32 + 36 + 1024);
        let report = run_suite("prime-nilpotent", None).unwrap();
        assert_eq!(report.instances, 36 + 100 + 4);
    }

    #[test]
    fn unknown_suite_is_invalid_input() {
        assert!(matches!(
            run_suite("no-such-suite", None),
            Err(Error::InvalidInput(_))
        ));
    }
}
