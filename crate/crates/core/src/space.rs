//! Graded homology models of simply connected spaces.
//!
//! A `SpaceModel` is a finite homology table plus metadata: geometric
//! dimension (possibly unbounded), the degree up to which the table is
//! asserted complete, an optional atomicity certificate, and an optional
//! recorded self-closeness value. Degrees 0 and 1 never appear (reduced
//! homology of simply connected spaces). Queries distinguish "known zero"
//! from "not tabulated": asking above the reliable range is a hard error,
//! never a silent zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;

/// A degree that may be unbounded (Eilenberg-MacLane models have no
/// geometric dimension).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Finite(u32),
    Infinite,
}

impl Dim {
    pub fn plus(self, m: u32) -> Dim {
        match self {
            Dim::Finite(d) => Dim::Finite(d + m),
            Dim::Infinite => Dim::Infinite,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => f.write_str("infinite"),
        }
    }
}

/// Degree-indexed homology: finite support, nonzero groups only, degrees >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedGroup {
    entries: BTreeMap<u32, FgAbelianGroup>,
}

impl GradedGroup {
    pub fn new() -> Self {
        GradedGroup::default()
    }

    pub fn insert(&mut self, degree: u32, group: FgAbelianGroup) -> Result<()> {
        if degree < 2 {
            return Err(Error::InvalidPresentation(format!(
                "homology in degree {degree} contradicts simple connectivity"
            )));
        }
        if !group.is_trivial() {
            self.entries.insert(degree, group);
        }
        Ok(())
    }

    pub fn get(&self, degree: u32) -> Option<&FgAbelianGroup> {
        self.entries.get(&degree)
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, &FgAbelianGroup)> {
        self.entries.iter().map(|(d, g)| (*d, g))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.entries.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }
}

/// How a recorded fact entered the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Catalog,
    UserAsserted,
}

/// Certificate that every self-map acts on homology up to `degree` either as
/// an automorphism in all degrees or as a nilpotent endomorphism in all
/// degrees. Atomicity is homotopy-theoretic, so it is always a certificate,
/// never computed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomicCertificate {
    pub degree: Dim,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HintKind {
    Exact,
    UpperBound,
}

/// A recorded homology self-closeness value (or upper bound) with the
/// mathematical statement that justifies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NscHint {
    pub kind: HintKind,
    pub value: u32,
    pub citation: String,
    pub provenance: Provenance,
}

/// Which catalog family a model came from, with enough parameters for the
/// criteria and closeness engines to recognize the structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogTag {
    Sphere(u32),
    Moore(FgAbelianGroup, u32),
    /// Coefficient group is always cyclic of prime-power order here.
    EilenbergMacLane(FgAbelianGroup, u32),
    ComplexProjective(u32),
    QuaternionicProjective(u32),
    /// Suspension of the even real projective space of this dimension.
    SuspendedRealProjective(u32),
    Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceModel {
    name: String,
    homology: GradedGroup,
    dimension: Dim,
    cutoff: u32,
    atomic: Option<AtomicCertificate>,
    nsc_hint: Option<NscHint>,
    tag: Option<CatalogTag>,
}

impl SpaceModel {
    pub fn new(
        name: impl Into<String>,
        homology: GradedGroup,
        dimension: Dim,
        cutoff: u32,
    ) -> Result<Self> {
        let name = name.into();
        for (d, _) in homology.support() {
            if d > cutoff {
                return Err(Error::InvalidPresentation(format!(
                    "{name}: homology listed in degree {d} beyond the cutoff {cutoff}"
                )));
            }
            if let Dim::Finite(dim) = dimension {
                if d > dim {
                    return Err(Error::InvalidPresentation(format!(
                        "{name}: homology in degree {d} above the dimension {dim}"
                    )));
                }
            }
        }
        Ok(SpaceModel {
            name,
            homology,
            dimension,
            cutoff,
            atomic: None,
            nsc_hint: None,
            tag: None,
        })
    }

    pub fn with_atomic_certificate(mut self, cert: AtomicCertificate) -> Self {
        self.atomic = Some(cert);
        self
    }

    pub fn with_nsc_hint(mut self, hint: NscHint) -> Self {
        self.nsc_hint = Some(hint);
        self
    }

    pub fn with_tag(mut self, tag: CatalogTag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn homology(&self) -> &GradedGroup {
        &self.homology
    }

    pub fn dimension(&self) -> Dim {
        self.dimension
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn atomic_certificate(&self) -> Option<&AtomicCertificate> {
        self.atomic.as_ref()
    }

    pub fn nsc_hint(&self) -> Option<&NscHint> {
        self.nsc_hint.as_ref()
    }

    pub fn tag(&self) -> Option<&CatalogTag> {
        self.tag.as_ref()
    }

    /// Degree through which homology is determined: the cutoff, or every
    /// degree when the space is finite-dimensional and tabulated through its
    /// dimension (all higher groups vanish).
    pub fn known_through(&self) -> Dim {
        match self.dimension {
            Dim::Finite(d) if self.cutoff >= d => Dim::Infinite,
            _ => Dim::Finite(self.cutoff),
        }
    }

    fn degree_known(&self, degree: u32) -> bool {
        match self.known_through() {
            Dim::Infinite => true,
            Dim::Finite(k) => degree <= k,
        }
    }

    /// The homology group in one degree. Degrees 0 and 1 are trivial by
    /// assumption; a degree beyond the reliable range is an error.
    pub fn homology_at(&self, degree: u32) -> Result<FgAbelianGroup> {
        if degree < 2 {
            return Ok(FgAbelianGroup::trivial());
        }
        if !self.degree_known(degree) {
            return Err(Error::InsufficientTable {
                space: self.name.clone(),
                degree,
                cutoff: self.cutoff,
            });
        }
        Ok(self
            .homology
            .get(degree)
            .cloned()
            .unwrap_or_else(FgAbelianGroup::trivial))
    }

    /// (Minimal nonzero degree) - 1; the cutoff when the table is empty.
    pub fn connectivity(&self) -> u32 {
        match self.homology.min_degree() {
            Some(d) => d - 1,
            None => self.cutoff,
        }
    }

    /// Maximal degree carrying homology in the table.
    pub fn homology_dimension(&self) -> Result<u32> {
        self.homology
            .max_degree()
            .ok_or_else(|| Error::UndefinedDimension(self.name.clone()))
    }
}

fn min_dim(a: Dim, b: Dim) -> Dim {
    a.min(b)
}

fn sum_groups(parts: &[FgAbelianGroup]) -> FgAbelianGroup {
    let rank = parts.iter().map(|g| g.free_rank()).sum();
    let factors: Vec<BigInt> = parts
        .iter()
        .flat_map(|g| g.invariant_factors().iter().cloned())
        .collect();
    FgAbelianGroup::canonicalize(rank, &factors).expect("invariant factors are >= 2")
}

/// One-point union: degreewise direct sum of the tables.
pub fn wedge(x: &SpaceModel, y: &SpaceModel) -> SpaceModel {
    let known = min_dim(x.known_through(), y.known_through());
    let dimension = x.dimension().max(y.dimension());
    let mut table = GradedGroup::new();
    let degrees: std::collections::BTreeSet<u32> = x
        .homology()
        .support()
        .map(|(d, _)| d)
        .chain(y.homology().support().map(|(d, _)| d))
        .collect();
    for d in degrees {
        if let Dim::Finite(k) = known {
            if d > k {
                continue;
            }
        }
        let gx = x.homology_at(d).expect("degree within combined knowledge");
        let gy = y.homology_at(d).expect("degree within combined knowledge");
        table.insert(d, sum_groups(&[gx, gy])).unwrap();
    }
    let cutoff = match known {
        Dim::Infinite => dimension.finite().expect("total knowledge needs finite dimensions"),
        Dim::Finite(k) => k,
    };
    SpaceModel::new(format!("{} v {}", x.name(), y.name()), table, dimension, cutoff)
        .expect("wedge table respects its own bounds")
}

/// Reduced Kunneth rule for the smash product:
/// H_n = sum over p+q=n of H_p(X) tensor H_q(Y), plus the Tor terms one
/// degree down (p+q = n-1), all over reduced degrees >= 2.
pub fn smash(x: &SpaceModel, y: &SpaceModel) -> SpaceModel {
    let dimension = match (x.dimension(), y.dimension()) {
        (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
        _ => Dim::Infinite,
    };
    // A degree n of the smash needs H_q(Y) for q up to n - (conn(X)+1), and
    // symmetrically, so partial knowledge on one side caps the result.
    let mut known = match dimension {
        Dim::Finite(_) => Dim::Infinite,
        Dim::Infinite => Dim::Finite(0),
    };
    if let Dim::Finite(ky) = y.known_through() {
        known = min_dim(known, Dim::Finite(ky + x.connectivity() + 1));
    }
    if let Dim::Finite(kx) = x.known_through() {
        known = min_dim(known, Dim::Finite(kx + y.connectivity() + 1));
    }
    let top = match known {
        Dim::Infinite => dimension.finite().expect("finite dimensions when fully known"),
        Dim::Finite(k) => k,
    };
    let mut table = GradedGroup::new();
    for n in 4..=top.max(4) {
        if n > top {
            break;
        }
        let mut parts: Vec<FgAbelianGroup> = Vec::new();
        for (p, gp) in x.homology().support() {
            if p + 2 <= n {
                let q = n - p;
                if let Some(gq) = y.homology().get(q) {
                    parts.push(gp.tensor(gq));
                }
                // Tor contributes one degree up: p + q = n - 1.
                if q >= 3 {
                    if let Some(gq) = y.homology().get(q - 1) {
                        parts.push(gp.tor(gq));
                    }
                }
            }
        }
        table.insert(n, sum_groups(&parts)).unwrap();
    }
    let cutoff = match known {
        Dim::Infinite => dimension.finite().unwrap(),
        Dim::Finite(k) => k,
    };
    SpaceModel::new(format!("{} ^ {}", x.name(), y.name()), table, dimension, cutoff)
        .expect("smash table respects its own bounds")
}

/// Product: reduced homology is wedge plus smash degreewise.
pub fn product(x: &SpaceModel, y: &SpaceModel) -> SpaceModel {
    let w = wedge(x, y);
    let s = smash(x, y);
    let known = min_dim(w.known_through(), s.known_through());
    let dimension = match (x.dimension(), y.dimension()) {
        (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
        _ => Dim::Infinite,
    };
    let mut table = GradedGroup::new();
    let degrees: std::collections::BTreeSet<u32> = w
        .homology()
        .support()
        .map(|(d, _)| d)
        .chain(s.homology().support().map(|(d, _)| d))
        .collect();
    for d in degrees {
        if let Dim::Finite(k) = known {
            if d > k {
                continue;
            }
        }
        let mut parts = Vec::new();
        if let Some(g) = w.homology().get(d) {
            parts.push(g.clone());
        }
        if let Some(g) = s.homology().get(d) {
            parts.push(g.clone());
        }
        table.insert(d, sum_groups(&parts)).unwrap();
    }
    let cutoff = match known {
        Dim::Infinite => dimension.finite().unwrap(),
        Dim::Finite(k) => k,
    };
    SpaceModel::new(format!("{} x {}", x.name(), y.name()), table, dimension, cutoff)
        .expect("product table respects its own bounds")
}

/// Shift the whole table up by m.
pub fn suspension(x: &SpaceModel, m: u32) -> SpaceModel {
    let mut table = GradedGroup::new();
    for (d, g) in x.homology().support() {
        table.insert(d + m, g.clone()).unwrap();
    }
    let name = if m == 1 {
        format!("susp({})", x.name())
    } else {
        format!("susp^{m}({})", x.name())
    };
    SpaceModel::new(name, table, x.dimension().plus(m), x.cutoff() + m)
        .expect("shifted table respects shifted bounds")
}

/// Connectivity of the pair (X x Y, X v Y), i.e. of the smash product:
/// conn(X) + conn(Y) + 1.
pub fn pair_connectivity_product_wedge(x: &SpaceModel, y: &SpaceModel) -> u32 {
    x.connectivity() + y.connectivity() + 1
}

/// Tables of susp(X x Y) and susp(X) v susp(Y) v susp(X ^ Y) agree
/// degreewise (compared over the range both sides determine).
pub fn suspension_splitting_check(x: &SpaceModel, y: &SpaceModel) -> Result<bool> {
    let lhs = suspension(&product(x, y), 1);
    let rhs = wedge(
        &suspension(x, 1),
        &wedge(&suspension(y, 1), &suspension(&smash(x, y), 1)),
    );
    let known = min_dim(lhs.known_through(), rhs.known_through());
    let top = match known {
        Dim::Finite(k) => k,
        Dim::Infinite => {
            let a = lhs.homology().max_degree().unwrap_or(2);
            let b = rhs.homology().max_degree().unwrap_or(2);
            a.max(b)
        }
    };
    for d in 2..=top {
        if lhs.homology_at(d)? != rhs.homology_at(d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{complex_projective, moore, point, sphere, suspended_real_projective};
    use crate::group::parse_group;

    fn g(s: &str) -> FgAbelianGroup {
        parse_group(s).unwrap()
    }

    #[test]
    fn connectivity_and_dimension() {
        assert_eq!(sphere(5).unwrap().connectivity(), 4);
        assert_eq!(moore(&g("Z/2"), 3).unwrap().connectivity(), 2);
        assert_eq!(complex_projective(4).unwrap().connectivity(), 1);
        assert_eq!(complex_projective(3).unwrap().homology_dimension().unwrap(), 6);
        assert_eq!(moore(&g("Z/9"), 4).unwrap().homology_dimension().unwrap(), 4);
        assert!(point().homology_dimension().is_err());
    }

    #[test]
    fn wedge_tables() {
        let w = wedge(&moore(&g("Z/2"), 3).unwrap(), &moore(&g("Z/3"), 3).unwrap());
        assert_eq!(w.homology_at(3).unwrap(), g("Z/6"));
        assert_eq!(w.homology_at(4).unwrap(), g("0"));

        let s = sphere(2).unwrap();
        let w = wedge(&s, &point());
        assert_eq!(w.homology(), s.homology());

        let w = wedge(&sphere(2).unwrap(), &sphere(5).unwrap());
        assert_eq!(w.homology_at(2).unwrap(), g("Z"));
        assert_eq!(w.homology_at(5).unwrap(), g("Z"));
        assert_eq!(w.homology_dimension().unwrap(), 5);
        assert_eq!(w.connectivity(), 1);
    }

    #[test]
    fn wedge_commutes_and_associates_on_tables() {
        let spaces = [
            sphere(2).unwrap(),
            moore(&g("Z/4"), 3).unwrap(),
            complex_projective(2).unwrap(),
        ];
        for a in &spaces {
            for b in &spaces {
                let ab = wedge(a, b);
                let ba = wedge(b, a);
                assert_eq!(ab.homology(), ba.homology());
                for c in &spaces {
                    let left = wedge(&wedge(a, b), c);
                    let right = wedge(a, &wedge(b, c));
                    assert_eq!(left.homology(), right.homology());
                }
            }
        }
    }

    #[test]
    fn smash_tables() {
        let s = smash(&sphere(2).unwrap(), &sphere(3).unwrap());
        assert_eq!(s.homology_at(5).unwrap(), g("Z"));
        assert_eq!(s.homology().support().count(), 1);

        // Tensor and Tor of Z/2 against Z/3 both vanish.
        let s = smash(&moore(&g("Z/2"), 2).unwrap(), &moore(&g("Z/3"), 2).unwrap());
        assert!(s.homology().is_empty());

        // M(Z/2,2) ^ M(Z/2,2): tensor in degree 4, Tor in degree 5.
        let m = moore(&g("Z/2"), 2).unwrap();
        let s = smash(&m, &m);
        assert_eq!(s.homology_at(4).unwrap(), g("Z/2"));
        assert_eq!(s.homology_at(5).unwrap(), g("Z/2"));
    }

    #[test]
    fn product_is_wedge_plus_smash() {
        let p = product(&sphere(2).unwrap(), &sphere(2).unwrap());
        assert_eq!(p.homology_at(2).unwrap(), g("Z^2"));
        assert_eq!(p.homology_at(4).unwrap(), g("Z"));

        let pairs = [
            (sphere(2).unwrap(), sphere(3).unwrap()),
            (moore(&g("Z/2"), 2).unwrap(), sphere(2).unwrap()),
            (complex_projective(2).unwrap(), moore(&g("Z/4"), 3).unwrap()),
            (
                suspended_real_projective(4).unwrap(),
                moore(&g("Z/2"), 2).unwrap(),
            ),
        ];
        for (x, y) in &pairs {
            let p = product(x, y);
            let w = wedge(x, y);
            let s = smash(x, y);
            let top = p.known_through().finite().unwrap_or(12);
            for d in 2..=top {
                let lhs = p.homology_at(d).unwrap();
                let rhs = sum_groups(&[w.homology_at(d).unwrap(), s.homology_at(d).unwrap()]);
                assert_eq!(lhs, rhs, "{} degree {d}", p.name());
            }
        }
    }

    #[test]
    fn suspension_shifts() {
        let s = suspension(&sphere(3).unwrap(), 1);
        assert_eq!(s.homology(), sphere(4).unwrap().homology());

        let m = suspension(&moore(&g("Z/5"), 3).unwrap(), 4);
        assert_eq!(m.homology(), moore(&g("Z/5"), 7).unwrap().homology());

        // Stacking suspensions equals one big shift.
        let x = complex_projective(2).unwrap();
        let a = suspension(&suspension(&x, 2), 3);
        let b = suspension(&x, 5);
        assert_eq!(a.homology(), b.homology());
        assert_eq!(a.dimension(), b.dimension());

        // Suspension commutes with wedge on tables.
        let y = moore(&g("Z/2"), 2).unwrap();
        let lhs = suspension(&wedge(&x, &y), 2);
        let rhs = wedge(&suspension(&x, 2), &suspension(&y, 2));
        assert_eq!(lhs.homology(), rhs.homology());
    }

    #[test]
    fn pair_connectivity_examples() {
        let s2 = sphere(2).unwrap();
        assert_eq!(pair_connectivity_product_wedge(&s2, &s2), 3);
        assert_eq!(
            pair_connectivity_product_wedge(&s2, &sphere(5).unwrap()),
            6
        );
        let m = moore(&g("Z/2"), 3).unwrap();
        let s4 = sphere(4).unwrap();
        assert_eq!(pair_connectivity_product_wedge(&m, &s4), 6);
        // Cross-check: the smash table starts in degree 7.
        assert_eq!(smash(&m, &s4).homology().min_degree(), Some(7));
    }

    #[test]
    fn splitting_check_on_catalog_pairs() {
        let s2 = sphere(2).unwrap();
        let s3 = sphere(3).unwrap();
        let m = moore(&g("Z/2"), 2).unwrap();
        let cp2 = complex_projective(2).unwrap();
        for (x, y) in [(&s2, &s2), (&s2, &s3), (&m, &s2), (&cp2, &m), (&m, &m)] {
            assert!(suspension_splitting_check(x, y).unwrap(), "{} / {}", x.name(), y.name());
        }
    }

    #[test]
    fn knowledge_boundaries() {
        use crate::catalog::eilenberg_maclane;
        let k = eilenberg_maclane(&g("Z/8"), 4, None, None).unwrap();
        assert_eq!(k.homology_at(4).unwrap(), g("Z/8"));
        assert_eq!(k.homology_at(3).unwrap(), g("0"));
        assert!(matches!(
            k.homology_at(5),
            Err(Error::InsufficientTable { degree: 5, .. })
        ));
        // Finite-dimensional spaces are known everywhere.
        let cp = complex_projective(2).unwrap();
        assert_eq!(cp.homology_at(100).unwrap(), g("0"));
        // Wedge against a partially known space caps the knowledge.
        let w = wedge(&cp, &k);
        assert_eq!(w.known_through(), Dim::Finite(4));
        assert_eq!(w.homology_at(4).unwrap(), g("Z+Z/8"));
        assert!(w.homology_at(5).is_err());
    }

    #[test]
    fn rejects_malformed_tables() {
        let mut t = GradedGroup::new();
        assert!(t.insert(1, g("Z")).is_err());
        t.insert(3, g("Z")).unwrap();
        // Entry above the declared dimension.
        assert!(SpaceModel::new("bad", t.clone(), Dim::Finite(2), 5).is_err());
        // Entry above the cutoff.
        assert!(SpaceModel::new("bad", t, Dim::Finite(5), 2).is_err());
    }
}
