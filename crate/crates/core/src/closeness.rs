//! Homology self-closeness numbers: an evidence engine that narrows an
//! interval [lower, upper] by applying registered rules, each leaving a
//! citation trail. Exactness is claimed only by a citation-bearing rule or
//! when the bounds collapse.

use crate::catalog::catalog_ring;
use crate::criteria::{decide_k_reducibility, ReducibilityOutcome};
use crate::error::{Error, Result};
use crate::ring::{
    all_invertible_endos_are_ring_autos, all_product_invertible_endos_are_ring_autos,
    enumerate_invertible_endos, enumerate_product_invertible_endos, ProductRingModel,
    WedgeRingModel,
};
use crate::space::{
    pair_connectivity_product_wedge, product, smash, suspension, wedge, Dim, HintKind,
    Provenance, SpaceModel,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceEntry {
    pub rule: String,
    pub citation: String,
    pub inputs: Vec<String>,
    pub claim: String,
}

#[derive(Debug, Clone)]
pub struct NscResult {
    pub subject: String,
    pub lower: u32,
    pub upper: Dim,
    pub exact: Option<u32>,
    pub evidence: Vec<EvidenceEntry>,
}

#[derive(Debug, Clone)]
pub enum NscQuery {
    Single(SpaceModel),
    Wedge(Vec<SpaceModel>),
    Product(SpaceModel, SpaceModel),
    Smash(SpaceModel, SpaceModel),
    /// m-fold suspension.
    Suspension(SpaceModel, u32),
}

/// Mutable interval state threaded through the rules. Rules may only narrow
/// it; a narrowing that empties the interval is an inconsistency error.
#[derive(Debug)]
pub struct NscState {
    subject: String,
    lower: u32,
    upper: Dim,
    evidence: Vec<EvidenceEntry>,
    exact_claimed: bool,
}

impl NscState {
    fn new(subject: String) -> Self {
        NscState {
            subject,
            lower: 0,
            upper: Dim::Infinite,
            evidence: Vec::new(),
            exact_claimed: false,
        }
    }

    pub fn lower(&self) -> u32 {
        self.lower
    }

    pub fn upper(&self) -> Dim {
        self.upper
    }

    fn check(&self) -> Result<()> {
        if Dim::Finite(self.lower) > self.upper {
            return Err(Error::PreconditionViolation(format!(
                "inconsistent self-closeness evidence for {}: lower bound {} exceeds upper bound {}",
                self.subject, self.lower, self.upper
            )));
        }
        Ok(())
    }

    pub fn raise_lower(
        &mut self,
        value: u32,
        rule: &str,
        citation: &str,
        inputs: Vec<String>,
    ) -> Result<()> {
        self.evidence.push(EvidenceEntry {
            rule: rule.into(),
            citation: citation.into(),
            inputs,
            claim: format!("NA >= {value}"),
        });
        self.lower = self.lower.max(value);
        self.check()
    }

    pub fn lower_upper(
        &mut self,
        value: u32,
        rule: &str,
        citation: &str,
        inputs: Vec<String>,
    ) -> Result<()> {
        self.evidence.push(EvidenceEntry {
            rule: rule.into(),
            citation: citation.into(),
            inputs,
            claim: format!("NA <= {value}"),
        });
        self.upper = self.upper.min(Dim::Finite(value));
        self.check()
    }

    pub fn set_exact(
        &mut self,
        value: u32,
        rule: &str,
        citation: &str,
        inputs: Vec<String>,
    ) -> Result<()> {
        self.evidence.push(EvidenceEntry {
            rule: rule.into(),
            citation: citation.into(),
            inputs,
            claim: format!("NA = {value}"),
        });
        self.lower = self.lower.max(value);
        self.upper = self.upper.min(Dim::Finite(value));
        self.exact_claimed = true;
        self.check()
    }

    fn finish(mut self) -> NscResult {
        let exact = match self.upper {
            Dim::Finite(u) if u == self.lower => Some(u),
            _ => None,
        };
        if exact.is_some() && !self.exact_claimed {
            self.evidence.push(EvidenceEntry {
                rule: "interval-collapse".into(),
                citation: "the lower and upper bounds agree".into(),
                inputs: vec![format!("lower = upper = {}", self.lower)],
                claim: format!("NA = {}", self.lower),
            });
        }
        NscResult {
            subject: self.subject,
            lower: self.lower,
            upper: self.upper,
            exact,
            evidence: self.evidence,
        }
    }
}

pub struct NscContext<'a> {
    pub query: &'a NscQuery,
    /// Resolved model of the query's subject space.
    pub model: &'a SpaceModel,
    /// Recursively computed results for the immediate constituents.
    pub parts: &'a [NscResult],
    pub budget: u64,
}

/// One narrowing rule. `apply` must leave the state untouched when the
/// rule's hypotheses do not hold.
pub trait NscRule {
    fn id(&self) -> &'static str;
    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()>;
}

struct RecordedValue;

impl NscRule for RecordedValue {
    fn id(&self) -> &'static str {
        "recorded-value"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let Some(hint) = ctx.model.nsc_hint() else {
            return Ok(());
        };
        let mut inputs = vec![format!("recorded for {}", ctx.model.name())];
        if hint.provenance == Provenance::UserAsserted {
            inputs.push("accepted on faith from a user assertion".into());
        }
        match hint.kind {
            HintKind::Exact => state.set_exact(hint.value, self.id(), &hint.citation, inputs),
            HintKind::UpperBound => {
                state.lower_upper(hint.value, self.id(), &hint.citation, inputs)
            }
        }
    }
}

struct GenericBounds;

impl NscRule for GenericBounds {
    fn id(&self) -> &'static str {
        "generic-bounds"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let m = ctx.model;
        if let Some(d) = m.homology().min_degree() {
            state.raise_lower(
                d,
                self.id(),
                "connectivity bound: the zero map on the first nonzero homology group \
                 is a (d-1)-equivalence but no equivalence",
                vec![format!("first nonzero homology degree of {} is {d}", m.name())],
            )?;
        }
        if m.known_through() == Dim::Infinite {
            match m.homology_dimension() {
                Ok(d) => state.lower_upper(
                    d,
                    self.id(),
                    "homology-dimension bound: a map invertible through the top nonzero \
                     degree is invertible in every degree",
                    vec![format!("top nonzero homology degree of {} is {d}", m.name())],
                )?,
                Err(_) => state.set_exact(
                    0,
                    self.id(),
                    "trivial graded homology: every self-map is a graded automorphism",
                    vec![format!("{} has no nonzero homology", m.name())],
                )?,
            }
        }
        Ok(())
    }
}

struct AtomicMinDegree;

impl NscRule for AtomicMinDegree {
    fn id(&self) -> &'static str {
        "atomic-minimal-degree"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let Some(cert) = ctx.model.atomic_certificate() else {
            return Ok(());
        };
        let Some(min) = ctx.model.homology().min_degree() else {
            return Ok(());
        };
        // A finite atomicity range needs the number already bounded inside it.
        let applicable = match cert.degree {
            Dim::Infinite => true,
            Dim::Finite(n) => state.upper() <= Dim::Finite(n),
        };
        if !applicable {
            return Ok(());
        }
        let mut inputs = vec![format!(
            "{} is atomic through degree {}",
            ctx.model.name(),
            cert.degree
        )];
        if cert.provenance == Provenance::UserAsserted {
            inputs.push("atomicity accepted on faith from a user assertion".into());
        }
        if let Dim::Finite(n) = cert.degree {
            inputs.push(format!("upper bound {} lies within the range {n}", state.upper()));
        }
        state.set_exact(
            min,
            self.id(),
            "an atomic space's self-closeness number is its first degree with nonzero \
             homology: invertibility there forces invertibility everywhere",
            inputs,
        )
    }
}

struct WedgeLower;

impl NscRule for WedgeLower {
    fn id(&self) -> &'static str {
        "wedge-lower"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let Some(max) = ctx.parts.iter().map(|p| p.lower).max() else {
            return Ok(());
        };
        if max == 0 {
            return Ok(());
        }
        let inputs = ctx
            .parts
            .iter()
            .map(|p| format!("NA({}) >= {}", p.subject, p.lower))
            .collect();
        state.raise_lower(
            max,
            self.id(),
            "a deficient self-map of one summand wedged with the identity is a \
             deficient self-map of the wedge, so the wedge's number dominates every \
             summand's",
            inputs,
        )
    }
}

struct AtomicWedge;

impl NscRule for AtomicWedge {
    fn id(&self) -> &'static str {
        "atomic-distinct-wedge"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let NscQuery::Wedge(models) = ctx.query else {
            return Ok(());
        };
        if models.len() < 2 {
            return Ok(());
        }
        let mut values = Vec::new();
        let mut inputs = Vec::new();
        for (model, part) in models.iter().zip(ctx.parts) {
            let Some(exact) = part.exact else {
                return Ok(());
            };
            let Some(cert) = model.atomic_certificate() else {
                return Ok(());
            };
            if cert.degree < Dim::Finite(exact) {
                return Ok(());
            }
            if cert.provenance == Provenance::UserAsserted {
                inputs.push(format!(
                    "atomicity of {} accepted on faith from a user assertion",
                    model.name()
                ));
            }
            inputs.push(format!(
                "NA({}) = {exact}, atomic through {}",
                model.name(),
                cert.degree
            ));
            values.push(exact);
        }
        let mut sorted = values.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != values.len() {
            return Ok(());
        }
        state.set_exact(
            *sorted.last().unwrap(),
            self.id(),
            "a wedge of atomic spaces whose self-closeness numbers are pairwise \
             distinct and lie within the atomicity ranges has self-closeness number \
             the maximum of the summands'",
            inputs,
        )
    }
}

struct RingWedgeRigidity;

impl NscRule for RingWedgeRigidity {
    fn id(&self) -> &'static str {
        "ring-rigidity"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let NscQuery::Wedge(models) = ctx.query else {
            return Ok(());
        };
        if models.len() != 2 {
            return Ok(());
        }
        let (Some(rx), Some(ry)) = (
            catalog_ring(&models[0], "a"),
            catalog_ring(&models[1], "b"),
        ) else {
            return Ok(());
        };
        let degree = rx.degree();
        let Ok(model) = WedgeRingModel::new(rx, ry) else {
            return Ok(());
        };
        let Ok(solutions) = enumerate_invertible_endos(&model) else {
            return Ok(());
        };
        if all_invertible_endos_are_ring_autos(&model) != Ok(true) {
            return Ok(());
        }
        state.set_exact(
            degree,
            self.id(),
            "generator images of a cohomology-ring endomorphism of the wedge satisfy \
             the truncation relations with unit determinant; every invertible solution \
             is a ring automorphism, so each equivalence at the generator degree is a \
             graded automorphism",
            vec![format!(
                "{} invertible generator assignments, all ring automorphisms",
                solutions.len()
            )],
        )
    }
}

struct WedgeEquality;

impl NscRule for WedgeEquality {
    fn id(&self) -> &'static str {
        "wedge-equality"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let NscQuery::Wedge(models) = ctx.query else {
            return Ok(());
        };
        if models.len() != 2 || state.exact_claimed {
            return Ok(());
        }
        let (px, py) = (&ctx.parts[0], &ctx.parts[1]);
        // m = max of the two numbers; an upper bound below the other side's
        // exact value pins the maximum just as well.
        let m = match (px.exact, py.exact) {
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) if py.upper <= Dim::Finite(a) => a,
            (None, Some(b)) if px.upper <= Dim::Finite(b) => b,
            _ => return Ok(()),
        };
        if m < 2 {
            return Ok(());
        }
        let verdict = decide_k_reducibility(&models[0], &models[1], m, ctx.budget)?;
        if verdict.outcome != ReducibilityOutcome::Reducible {
            return Ok(());
        }
        let mut inputs = vec![
            format!("NA({}) bounds: [{}, {}]", px.subject, px.lower, px.upper),
            format!("NA({}) bounds: [{}, {}]", py.subject, py.lower, py.upper),
        ];
        inputs.extend(
            verdict
                .criteria_fired
                .iter()
                .map(|c| format!("{m}-reducibility criterion fired: {}", c.id)),
        );
        state.set_exact(
            m,
            self.id(),
            "if every m-equivalence of the wedge is m-reducible, where m is the \
             maximum of the summand self-closeness numbers, the wedge's number \
             equals that maximum",
            inputs,
        )
    }
}

struct ProductLower;

impl NscRule for ProductLower {
    fn id(&self) -> &'static str {
        "product-lower"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let Some(max) = ctx.parts.iter().map(|p| p.lower).max() else {
            return Ok(());
        };
        if max == 0 {
            return Ok(());
        }
        let inputs = ctx
            .parts
            .iter()
            .map(|p| format!("NA({}) >= {}", p.subject, p.lower))
            .collect();
        state.raise_lower(
            max,
            self.id(),
            "a deficient self-map of one factor crossed with the identity is a \
             deficient self-map of the product, so the product's number dominates \
             every factor's",
            inputs,
        )
    }
}

struct ProductRingRigidity;

impl NscRule for ProductRingRigidity {
    fn id(&self) -> &'static str {
        "product-ring-rigidity"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let NscQuery::Product(x, y) = ctx.query else {
            return Ok(());
        };
        let (Some(rx), Some(ry)) = (catalog_ring(x, "a"), catalog_ring(y, "b")) else {
            return Ok(());
        };
        let degree = rx.degree();
        let Ok(model) = ProductRingModel::new(rx, ry) else {
            return Ok(());
        };
        let Ok(solutions) = enumerate_product_invertible_endos(&model) else {
            return Ok(());
        };
        if all_product_invertible_endos_are_ring_autos(&model) != Ok(true) {
            return Ok(());
        }
        state.set_exact(
            degree,
            self.id(),
            "the product's cohomology is a two-variable truncated polynomial ring; \
             the truncation relations force sign/swap generator assignments and every \
             invertible one is a ring automorphism",
            vec![format!(
                "{} invertible generator assignments, all ring automorphisms",
                solutions.len()
            )],
        )
    }
}

struct ProductTransfer;

impl NscRule for ProductTransfer {
    fn id(&self) -> &'static str {
        "product-transfer"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let NscQuery::Product(x, y) = ctx.query else {
            return Ok(());
        };
        if state.exact_claimed {
            return Ok(());
        }
        let (Some(dx), Some(dy)) = (x.dimension().finite(), y.dimension().finite()) else {
            return Ok(());
        };
        let wedge_dim = dx.max(dy);
        if pair_connectivity_product_wedge(x, y) < wedge_dim {
            return Ok(());
        }
        let wedge_result =
            compute_nsc(&NscQuery::Wedge(vec![x.clone(), y.clone()]), ctx.budget)?;
        let Some(m) = wedge_result.exact else {
            return Ok(());
        };
        let wedge_model = wedge(x, y);
        if wedge_model.known_through() != Dim::Infinite {
            return Ok(());
        }
        let Ok(top) = wedge_model.homology_dimension() else {
            return Ok(());
        };
        // Reducibility in every degree: above the wedge's top homology degree
        // the k-monoids stabilize, so checking through that degree covers all k.
        for k in 2..=top.max(m) {
            let verdict = decide_k_reducibility(x, y, k, ctx.budget)?;
            if verdict.outcome != ReducibilityOutcome::Reducible {
                return Ok(());
            }
        }
        state.set_exact(
            m,
            self.id(),
            "when the pair of the product and its wedge is at least as connected as \
             the wedge's dimension and every k-equivalence of the wedge is \
             k-reducible, the product and wedge share their self-closeness number",
            vec![
                format!("pair connectivity >= {wedge_dim}"),
                format!("NA({}) = {m}", wedge_result.subject),
                format!("k-reducibility verified for k <= {}", top.max(m)),
            ],
        )
    }
}

struct SmashInterval;

impl NscRule for SmashInterval {
    fn id(&self) -> &'static str {
        "smash-interval"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let NscQuery::Smash(x, y) = ctx.query else {
            return Ok(());
        };
        let (Some(dx), Some(dy)) = (x.dimension().finite(), y.dimension().finite()) else {
            return Ok(());
        };
        if pair_connectivity_product_wedge(x, y) < dx.max(dy) {
            return Ok(());
        }
        let wedge_result =
            compute_nsc(&NscQuery::Wedge(vec![x.clone(), y.clone()]), ctx.budget)?;
        let mut lower = wedge_result.lower + 1;
        let mut inputs = vec![format!(
            "NA({}) >= {}",
            wedge_result.subject, wedge_result.lower
        )];
        if let Some(best) = ctx.parts.iter().filter_map(|p| p.exact).max() {
            lower = lower.max(best + 1);
            inputs.push(format!("max factor self-closeness number = {best}"));
        }
        state.raise_lower(
            lower,
            self.id(),
            "the smash product's homology starts above the wedge's dimension, so its \
             self-closeness number exceeds the wedge's and each factor's",
            inputs,
        )?;
        state.lower_upper(
            dx + dy,
            self.id(),
            "the smash product of finite-dimensional complexes has dimension at most \
             the sum of the factor dimensions",
            vec![format!("dim sum = {}", dx + dy)],
        )
    }
}

struct SuspensionStable;

impl NscRule for SuspensionStable {
    fn id(&self) -> &'static str {
        "suspension-stable"
    }

    fn apply(&self, ctx: &NscContext<'_>, state: &mut NscState) -> Result<()> {
        let NscQuery::Suspension(x, m) = ctx.query else {
            return Ok(());
        };
        let m = *m;
        if m == 0 || x.homology().min_degree().is_none() {
            return Ok(());
        }
        let Some(dim) = x.dimension().finite() else {
            return Ok(());
        };
        if x.connectivity() + 1 < m || dim > 2 * (m - 1) {
            return Ok(());
        }
        let Some(exact) = ctx.parts[0].exact else {
            return Ok(());
        };
        state.set_exact(
            exact + m,
            self.id(),
            "in the stable range ((m-1)-connected, dimension at most 2(m-1)) an m-fold \
             suspension shifts the self-closeness number by exactly m",
            vec![
                format!("NA({}) = {exact}", ctx.parts[0].subject),
                format!("connectivity {} >= {}", x.connectivity(), m - 1),
                format!("dimension {dim} <= {}", 2 * (m - 1)),
            ],
        )
    }
}

fn rules_for(query: &NscQuery) -> Vec<Box<dyn NscRule>> {
    match query {
        NscQuery::Single(_) => vec![
            Box::new(RecordedValue),
            Box::new(GenericBounds),
            Box::new(AtomicMinDegree),
        ],
        NscQuery::Wedge(_) => vec![
            Box::new(WedgeLower),
            Box::new(AtomicWedge),
            Box::new(RingWedgeRigidity),
            Box::new(WedgeEquality),
            Box::new(GenericBounds),
        ],
        NscQuery::Product(..) => vec![
            Box::new(ProductLower),
            Box::new(ProductRingRigidity),
            Box::new(ProductTransfer),
            Box::new(GenericBounds),
        ],
        NscQuery::Smash(..) => vec![Box::new(SmashInterval), Box::new(GenericBounds)],
        NscQuery::Suspension(..) => {
            vec![Box::new(SuspensionStable), Box::new(GenericBounds)]
        }
    }
}

fn resolve_model(query: &NscQuery) -> Result<SpaceModel> {
    match query {
        NscQuery::Single(x) => Ok(x.clone()),
        NscQuery::Wedge(xs) => {
            let Some(first) = xs.first() else {
                return Err(Error::InvalidInput(
                    "a wedge needs at least one summand".into(),
                ));
            };
            Ok(xs.iter().skip(1).fold(first.clone(), |acc, x| wedge(&acc, x)))
        }
        NscQuery::Product(x, y) => Ok(product(x, y)),
        NscQuery::Smash(x, y) => Ok(smash(x, y)),
        NscQuery::Suspension(x, m) => Ok(suspension(x, *m)),
    }
}

fn resolve_parts(query: &NscQuery, budget: u64) -> Result<Vec<NscResult>> {
    let singles: Vec<&SpaceModel> = match query {
        NscQuery::Single(_) => Vec::new(),
        NscQuery::Wedge(xs) => xs.iter().collect(),
        NscQuery::Product(x, y) | NscQuery::Smash(x, y) => vec![x, y],
        NscQuery::Suspension(x, _) => vec![x],
    };
    singles
        .into_iter()
        .map(|x| compute_nsc(&NscQuery::Single(x.clone()), budget))
        .collect()
}

/// Run every registered rule for the query's kind, in order, and report the
/// narrowed interval with its evidence trail.
pub fn compute_nsc(query: &NscQuery, budget: u64) -> Result<NscResult> {
    let model = resolve_model(query)?;
    let parts = resolve_parts(query, budget)?;
    let mut state = NscState::new(model.name().to_string());
    let ctx = NscContext {
        query,
        model: &model,
        parts: &parts,
        budget,
    };
    for rule in rules_for(query) {
        rule.apply(&ctx, &mut state)?;
    }
    Ok(state.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        complex_projective, eilenberg_maclane, moore, parse_space_id, point,
        quaternionic_projective, sphere, suspended_real_projective,
    };
    use crate::criteria::DEFAULT_BUDGET;
    use crate::group::parse_group;
    use crate::space::GradedGroup;

    fn single(model: SpaceModel) -> NscResult {
        compute_nsc(&NscQuery::Single(model), DEFAULT_BUDGET).unwrap()
    }

    fn wedge2(x: SpaceModel, y: SpaceModel) -> NscResult {
        compute_nsc(&NscQuery::Wedge(vec![x, y]), DEFAULT_BUDGET).unwrap()
    }

    fn g(s: &str) -> crate::group::FgAbelianGroup {
        parse_group(s).unwrap()
    }

    fn fired(r: &NscResult, rule: &str) -> bool {
        r.evidence.iter().any(|e| e.rule == rule)
    }

    #[test]
    fn catalog_values() {
        assert_eq!(single(sphere(5).unwrap()).exact, Some(5));
        assert_eq!(single(complex_projective(4).unwrap()).exact, Some(2));
        assert_eq!(single(quaternionic_projective(3).unwrap()).exact, Some(4));
        assert_eq!(
            single(eilenberg_maclane(&g("Z/8"), 3, None, None).unwrap()).exact,
            Some(3)
        );
        assert_eq!(single(moore(&g("Z/4"), 6).unwrap()).exact, Some(6));
        assert_eq!(single(point()).exact, Some(0));

        let srp = single(suspended_real_projective(4).unwrap());
        assert_eq!(srp.exact, None);
        assert_eq!((srp.lower, srp.upper), (2, Dim::Finite(4)));
    }

    #[test]
    fn wedges_of_moore_spaces() {
        let r = wedge2(moore(&g("Z/2"), 3).unwrap(), moore(&g("Z/3"), 5).unwrap());
        assert_eq!(r.exact, Some(5));

        // Same summand twice: the reducibility route fails (the swap), but
        // the bounds still pin the value; no exactness rule may fire.
        let r = wedge2(moore(&g("Z/2"), 3).unwrap(), moore(&g("Z/2"), 3).unwrap());
        assert_eq!((r.lower, r.upper), (3, Dim::Finite(3)));
        assert_eq!(r.exact, Some(3));
        assert!(!fired(&r, "wedge-equality"));
        assert!(!fired(&r, "atomic-distinct-wedge"));
        assert!(!fired(&r, "ring-rigidity"));
        assert!(fired(&r, "interval-collapse"));

        // Arbitrary coefficient groups.
        let r = wedge2(moore(&g("Z+Z/4"), 3).unwrap(), moore(&g("Z/9"), 3).unwrap());
        assert_eq!(r.exact, Some(3));
        let r = wedge2(moore(&g("Z/6"), 4).unwrap(), moore(&g("Z/6"), 7).unwrap());
        assert_eq!(r.exact, Some(7));
    }

    #[test]
    fn projective_wedges_via_ring_rigidity() {
        let r = wedge2(
            complex_projective(3).unwrap(),
            complex_projective(3).unwrap(),
        );
        assert_eq!(r.exact, Some(2));
        assert!(fired(&r, "ring-rigidity"));

        let r = wedge2(
            quaternionic_projective(2).unwrap(),
            quaternionic_projective(2).unwrap(),
        );
        assert_eq!(r.exact, Some(4));
        assert!(fired(&r, "ring-rigidity"));

        // Distinct truncations still enumerate to automorphisms only.
        let r = wedge2(
            complex_projective(2).unwrap(),
            complex_projective(5).unwrap(),
        );
        assert_eq!(r.exact, Some(2));
    }

    #[test]
    fn wedge_equality_on_eilenberg_maclane_pairs() {
        // K(Z/4, 4) v susp(RP^4): no generic upper bound exists (the
        // Eilenberg-MacLane table is infinite), so exactness must come from
        // the reducibility transfer.
        let r = wedge2(
            eilenberg_maclane(&g("Z/4"), 4, None, None).unwrap(),
            suspended_real_projective(4).unwrap(),
        );
        assert_eq!(r.exact, Some(4));
        assert!(fired(&r, "wedge-equality"));

        // Same degree, distinct exponents.
        let r = wedge2(
            eilenberg_maclane(&g("Z/2"), 3, None, None).unwrap(),
            eilenberg_maclane(&g("Z/4"), 3, None, None).unwrap(),
        );
        assert_eq!(r.exact, Some(3));
        assert!(fired(&r, "wedge-equality"));
    }

    #[test]
    fn atomic_wedges_with_distinct_values() {
        let r = wedge2(
            eilenberg_maclane(&g("Z/2"), 3, None, None).unwrap(),
            eilenberg_maclane(&g("Z/8"), 5, None, None).unwrap(),
        );
        assert_eq!(r.exact, Some(5));
        assert!(fired(&r, "atomic-distinct-wedge"));

        let r = compute_nsc(
            &NscQuery::Wedge(vec![
                moore(&g("Z/2"), 3).unwrap(),
                moore(&g("Z/3"), 5).unwrap(),
                moore(&g("Z/5"), 7).unwrap(),
            ]),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.exact, Some(7));
        assert!(fired(&r, "atomic-distinct-wedge"));
    }

    #[test]
    fn products() {
        let r = compute_nsc(
            &NscQuery::Product(sphere(2).unwrap(), sphere(3).unwrap()),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.exact, Some(3));
        assert!(fired(&r, "product-transfer"));

        let r = compute_nsc(
            &NscQuery::Product(sphere(2).unwrap(), sphere(2).unwrap()),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.exact, Some(2));
        assert!(fired(&r, "product-ring-rigidity"));

        let r = compute_nsc(
            &NscQuery::Product(
                complex_projective(2).unwrap(),
                complex_projective(2).unwrap(),
            ),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.exact, Some(2));
    }

    #[test]
    fn smash_intervals() {
        let r = compute_nsc(
            &NscQuery::Smash(sphere(2).unwrap(), sphere(3).unwrap()),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.exact, Some(5));

        let r = compute_nsc(
            &NscQuery::Smash(moore(&g("Z/2"), 2).unwrap(), moore(&g("Z/2"), 2).unwrap()),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.exact, None);
        assert_eq!((r.lower, r.upper), (4, Dim::Finite(5)));
        assert!(fired(&r, "smash-interval"));
    }

    #[test]
    fn suspensions() {
        let r = compute_nsc(
            &NscQuery::Suspension(moore(&g("Z/2"), 3).unwrap(), 3),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.exact, Some(6));
        assert!(fired(&r, "suspension-stable"));

        // Out of the stable range, the shifted table still collapses.
        let r = compute_nsc(
            &NscQuery::Suspension(moore(&g("Z/2"), 2).unwrap(), 2),
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.exact, Some(4));
        assert!(!fired(&r, "suspension-stable"));

        let r = compute_nsc(&NscQuery::Suspension(sphere(3).unwrap(), 5), DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(r.exact, Some(8));
    }

    #[test]
    fn catalog_sweep_invariants() {
        let ids = [
            "S:2", "S:5", "M:Z/2:3", "M:Z/12:4", "K:Z/8:3", "CP:1", "CP:4", "HP:2",
            "SRP:4", "SRP:6",
        ];
        for id in ids {
            let model = parse_space_id(id).unwrap();
            let r = single(model.clone());
            // exact iff the bounds collapse
            assert_eq!(
                r.exact.is_some(),
                Dim::Finite(r.lower) == r.upper,
                "collapse invariant for {id}"
            );
            if let Some(e) = r.exact {
                if let Some(min) = model.homology().min_degree() {
                    assert!(e >= min, "connectivity bound for {id}");
                }
                if let Ok(d) = model.homology_dimension() {
                    if model.known_through() == Dim::Infinite {
                        assert!(e <= d, "dimension bound for {id}");
                    }
                }
            }
            for entry in &r.evidence {
                assert!(!entry.rule.is_empty() && !entry.claim.is_empty());
            }
        }
        // The wedge lower bound equals the max of summand lower bounds for
        // every catalog pair, with no reducibility input.
        for a in ids {
            for b in ids {
                let x = parse_space_id(a).unwrap();
                let y = parse_space_id(b).unwrap();
                let (rx, ry) = (single(x.clone()), single(y.clone()));
                let rw = wedge2(x, y);
                assert!(
                    rw.lower >= rx.lower.max(ry.lower),
                    "wedge lower for {a} v {b}"
                );
            }
        }
    }

    #[test]
    fn inconsistent_user_assertion_is_an_error() {
        let mut table = GradedGroup::new();
        table.insert(3, g("Z/2")).unwrap();
        let model = SpaceModel::new("bogus", table, Dim::Finite(3), 3)
            .unwrap()
            .with_nsc_hint(crate::space::NscHint {
                kind: HintKind::Exact,
                value: 5,
                citation: "user assertion".into(),
                provenance: Provenance::UserAsserted,
            });
        assert!(matches!(
            compute_nsc(&NscQuery::Single(model), DEFAULT_BUDGET),
            Err(Error::PreconditionViolation(_))
        ));
    }
}
