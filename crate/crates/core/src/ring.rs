//! Truncated polynomial cohomology rings and their endomorphism solvers.
//!
//! A `TruncatedRing` is coeff[g]/(g^(n+1)) with one generator in an even
//! degree. Wedge models put two such rings side by side with all cross
//! products zero; product models adjoin the two generators freely below the
//! truncations. The solvers enumerate the graded ring endomorphisms that are
//! invertible in the generator degree and decide whether every one of them
//! is invertible in all degrees.

use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntMat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coeff {
    Z,
    Fp(u64),
}

impl std::fmt::Display for Coeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coeff::Z => f.write_str("Z"),
            Coeff::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// coeff[gen]/(gen^(trunc+1)) with gen in even degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedRing {
    gen: String,
    degree: u32,
    trunc: u32,
    coeff: Coeff,
}

impl TruncatedRing {
    pub fn new(gen: impl Into<String>, degree: u32, trunc: u32, coeff: Coeff) -> Result<Self> {
        if degree < 2 || degree % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "generator degree must be even and at least 2, got {degree}"
            )));
        }
        if trunc < 1 {
            return Err(Error::InvalidInput("truncation index must be at least 1".into()));
        }
        if let Coeff::Fp(p) = coeff {
            if !is_small_prime(p) {
                return Err(Error::InvalidInput(format!(
                    "coefficient field F_{p} needs a prime modulus"
                )));
            }
        }
        Ok(TruncatedRing { gen: gen.into(), degree, trunc, coeff })
    }

    pub fn gen_name(&self) -> &str {
        &self.gen
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self) -> Coeff {
        self.coeff
    }

    /// Top degree carrying a nonzero class: degree * trunc.
    pub fn top_degree(&self) -> u32 {
        self.degree * self.trunc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForcedReason {
    /// The target has no nonzero class in the generator's degree.
    DegreeMismatch,
    /// l^(s+1) g^(e(s+1)) = 0 with g^(e(s+1)) nonzero forces l = 0 over Z.
    TruncationKills,
    /// p | l^(s+1) forces p | l over a prime field.
    CharacteristicDivides,
    /// The generator's additive order cannot map into the target coefficients.
    AdditiveOrder,
}

impl std::fmt::Display for ForcedReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ForcedReason::DegreeMismatch => "degree-mismatch",
            ForcedReason::TruncationKills => "truncation-kills",
            ForcedReason::CharacteristicDivides => "characteristic-divides",
            ForcedReason::AdditiveOrder => "additive-order",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomTriviality {
    Forced(ForcedReason),
    /// A nonzero multiplicative graded map exists: gen -> target_gen^e.
    Nonzero { witness_exponent: u32 },
}

/// Decide whether every multiplicative graded map from `source` to `target`
/// kills the generator. Such a map sends the generator to l * g^e where e is
/// fixed by degrees; the relation g_src^(s+1) = 0 and the additive order of
/// the generator constrain l.
pub fn ring_hom_forced_trivial(source: &TruncatedRing, target: &TruncatedRing) -> HomTriviality {
    if source.degree % target.degree != 0 {
        return HomTriviality::Forced(ForcedReason::DegreeMismatch);
    }
    let e = source.degree / target.degree;
    if e > target.trunc {
        return HomTriviality::Forced(ForcedReason::DegreeMismatch);
    }
    match (source.coeff, target.coeff) {
        (Coeff::Fp(_), Coeff::Z) => return HomTriviality::Forced(ForcedReason::AdditiveOrder),
        (Coeff::Fp(p), Coeff::Fp(q)) if p != q => {
            return HomTriviality::Forced(ForcedReason::AdditiveOrder)
        }
        _ => {}
    }
    // The image of g_src^(s+1) = 0 is l^(s+1) g^(e(s+1)).
    if e * (source.trunc + 1) <= target.trunc {
        return match target.coeff {
            Coeff::Z => HomTriviality::Forced(ForcedReason::TruncationKills),
            Coeff::Fp(_) => HomTriviality::Forced(ForcedReason::CharacteristicDivides),
        };
    }
    HomTriviality::Nonzero { witness_exponent: e }
}

/// Two truncated rings glued at a point: all products across summands vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeRingModel {
    left: TruncatedRing,
    right: TruncatedRing,
}

impl WedgeRingModel {
    pub fn new(left: TruncatedRing, right: TruncatedRing) -> Result<Self> {
        if left.gen == right.gen {
            return Err(Error::InvalidInput(format!(
                "summand generators must have distinct names, both are {:?}",
                left.gen
            )));
        }
        Ok(WedgeRingModel { left, right })
    }

    pub fn left(&self) -> &TruncatedRing {
        &self.left
    }

    pub fn right(&self) -> &TruncatedRing {
        &self.right
    }
}

/// f(alpha) = a*alpha + b*beta, f(beta) = c*alpha + d*beta, where alpha and
/// beta are the two generators (coefficients live in the shared coefficient
/// domain; over F_p they are residues).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingEndoSolution {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl RingEndoSolution {
    pub fn is_diagonal(&self) -> bool {
        self.b == 0 && self.c == 0
    }

    pub fn is_antidiagonal(&self) -> bool {
        self.a == 0 && self.d == 0
    }
}

fn common_parameters(model: &WedgeRingModel) -> Result<(u32, u32, u32, Coeff)> {
    let (l, r) = (&model.left, &model.right);
    if l.degree != r.degree {
        return Err(Error::Unsupported(
            "endomorphism enumeration needs both generators in the same degree".into(),
        ));
    }
    if l.coeff != r.coeff {
        return Err(Error::Unsupported(
            "endomorphism enumeration needs a common coefficient domain".into(),
        ));
    }
    Ok((l.degree, l.trunc, r.trunc, l.coeff))
}

/// All graded ring endomorphisms of the wedge model that are invertible in
/// the generator degree. The constraints come from the vanishing cross
/// product (alpha*beta = 0 forces a*c = 0 and b*d = 0 once squares survive)
/// and from each truncation relation.
pub fn enumerate_invertible_endos(model: &WedgeRingModel) -> Result<Vec<RingEndoSolution>> {
    let (_, s, t, coeff) = common_parameters(model)?;
    match coeff {
        Coeff::Z => enumerate_integral(s, t),
        Coeff::Fp(p) => Ok(enumerate_mod_p(s, t, p)),
    }
}

fn enumerate_integral(s: u32, t: u32) -> Result<Vec<RingEndoSolution>> {
    if s == 1 && t == 1 {
        // Both squares vanish, so every unimodular matrix works.
        return Err(Error::NotEnumerable(
            "with truncation 1 every unimodular 2x2 matrix is a ring endomorphism; the family is infinite".into(),
        ));
    }
    if s == t {
        // a*c = 0 and b*d = 0 with ad - bc = +-1 leave the four diagonal and
        // four antidiagonal sign patterns.
        let mut out = Vec::new();
        for a in [-1i64, 1] {
            for d in [-1i64, 1] {
                out.push(RingEndoSolution { a, b: 0, c: 0, d });
            }
        }
        for b in [-1i64, 1] {
            for c in [-1i64, 1] {
                out.push(RingEndoSolution { a: 0, b, c, d: 0 });
            }
        }
        out.sort_by_key(|sol| (sol.a, sol.b, sol.c, sol.d));
        return Ok(out);
    }
    let (lo, _hi) = (s.min(t), s.max(t));
    if lo == 1 {
        // The shorter summand's square vanishes, so one cross coefficient is
        // never constrained and the family is infinite.
        return Err(Error::NotEnumerable(
            "the truncation-1 summand leaves a cross coefficient free; the family is infinite".into(),
        ));
    }
    // Distinct truncations >= 2: the map into the longer summand is killed by
    // the shorter truncation, the other cross term by alpha*beta = 0.
    let mut out = Vec::new();
    for a in [-1i64, 1] {
        for d in [-1i64, 1] {
            out.push(RingEndoSolution { a, b: 0, c: 0, d });
        }
    }
    out.sort_by_key(|sol| (sol.a, sol.b, sol.c, sol.d));
    Ok(out)
}

fn enumerate_mod_p(s: u32, t: u32, p: u64) -> Vec<RingEndoSolution> {
    let p = p as i64;
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    // Cross product: alpha*beta = 0 maps to ac alpha^2 + bd beta^2.
                    if s >= 2 && (a * c) % p != 0 {
                        continue;
                    }
                    if t >= 2 && (b * d) % p != 0 {
                        continue;
                    }
                    // Truncation relations across summands.
                    if s + 1 <= t && b.pow(s + 1) % p != 0 {
                        continue;
                    }
                    if t + 1 <= s && c.pow(t + 1) % p != 0 {
                        continue;
                    }
                    if (a * d - b * c).rem_euclid(p) == 0 {
                        continue;
                    }
                    out.push(RingEndoSolution { a, b, c, d });
                }
            }
        }
    }
    out
}

fn det_is_unit(m: &[[i64; 2]; 2], rank_two: bool, coeff: Coeff) -> bool {
    let det = if rank_two {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    } else {
        m[0][0]
    };
    match coeff {
        Coeff::Z => det == 1 || det == -1,
        Coeff::Fp(p) => det.rem_euclid(p as i64) != 0,
    }
}

/// Check that each enumerated solution is invertible in every graded degree,
/// not just the generator degree. Degree j*d has basis {alpha^j (j <= s),
/// beta^j (j <= t)} and the solution acts by the j-th powers of its entries.
pub fn all_invertible_endos_are_ring_autos(model: &WedgeRingModel) -> Result<bool> {
    let (_, s, t, coeff) = common_parameters(model)?;
    let solutions = enumerate_invertible_endos(model)?;
    let reduce = |x: i64| match coeff {
        Coeff::Z => x,
        Coeff::Fp(p) => x.rem_euclid(p as i64),
    };
    for sol in &solutions {
        for j in 1..=s.max(t) {
            let has_left = j <= s;
            let has_right = j <= t;
            let pw = |x: i64| reduce(x.pow(j));
            let ok = if has_left && has_right {
                let m = [[pw(sol.a), pw(sol.c)], [pw(sol.b), pw(sol.d)]];
                det_is_unit(&m, true, coeff)
            } else if has_left {
                det_is_unit(&[[pw(sol.a), 0], [0, 0]], false, coeff)
            } else {
                det_is_unit(&[[pw(sol.d), 0], [0, 0]], false, coeff)
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Polynomial ring on both generators, truncated in each separately:
/// coeff[alpha, beta]/(alpha^(s+1), beta^(t+1)). Unlike the wedge model,
/// alpha*beta survives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRingModel {
    left: TruncatedRing,
    right: TruncatedRing,
}

impl ProductRingModel {
    pub fn new(left: TruncatedRing, right: TruncatedRing) -> Result<Self> {
        if left.gen == right.gen {
            return Err(Error::InvalidInput(
                "product model generators must have distinct names".into(),
            ));
        }
        Ok(ProductRingModel { left, right })
    }

    pub fn left(&self) -> &TruncatedRing {
        &self.left
    }

    pub fn right(&self) -> &TruncatedRing {
        &self.right
    }
}

/// Invertible-in-degree-d graded ring endomorphisms of the product model,
/// integer coefficients with equal parameters on both generators. Expanding
/// (a alpha + b beta)^(n+1) = 0 binomially forces a = 0 or b = 0 (the
/// alpha^n beta coefficient is (n+1) a^n b), and symmetrically; with
/// ad - bc = +-1 only the eight sign patterns survive.
pub fn enumerate_product_invertible_endos(model: &ProductRingModel) -> Result<Vec<RingEndoSolution>> {
    let (l, r) = (&model.left, &model.right);
    if l.degree != r.degree || l.trunc != r.trunc {
        return Err(Error::Unsupported(
            "product enumeration needs equal degree and truncation on both generators".into(),
        ));
    }
    if l.coeff != Coeff::Z || r.coeff != Coeff::Z {
        return Err(Error::Unsupported(
            "product enumeration is implemented for integer coefficients".into(),
        ));
    }
    let mut out = Vec::new();
    for a in [-1i64, 1] {
        for d in [-1i64, 1] {
            out.push(RingEndoSolution { a, b: 0, c: 0, d });
        }
    }
    for b in [-1i64, 1] {
        for c in [-1i64, 1] {
            out.push(RingEndoSolution { a: 0, b, c, d: 0 });
        }
    }
    out.sort_by_key(|sol| (sol.a, sol.b, sol.c, sol.d));
    Ok(out)
}

/// Verify invertibility of every product solution in every total degree by
/// writing out its matrix on the monomial basis alpha^i beta^j and checking
/// the Smith form is all ones.
pub fn all_product_invertible_endos_are_ring_autos(model: &ProductRingModel) -> Result<bool> {
    let solutions = enumerate_product_invertible_endos(model)?;
    let n = model.left.trunc;
    for sol in &solutions {
        for total in 1..=(2 * n) {
            // Basis of degree total*d: monomials alpha^i beta^(total-i).
            let basis: Vec<(u32, u32)> = (0..=total)
                .filter(|i| *i <= n && total - *i <= n)
                .map(|i| (i, total - i))
                .collect();
            if basis.is_empty() {
                continue;
            }
            let dim = basis.len();
            let mut m = IntMat::zeros(dim, dim);
            for (col, (i, j)) in basis.iter().enumerate() {
                // (a alpha + b beta)^i (c alpha + d beta)^j with one of each
                // pair zero collapses to a single monomial.
                let (coef, image) = if sol.b == 0 && sol.c == 0 {
                    (sol.a.pow(*i) * sol.d.pow(*j), (*i, *j))
                } else {
                    (sol.b.pow(*i) * sol.c.pow(*j), (*j, *i))
                };
                let row = basis.iter().position(|m| *m == image).expect("basis is closed");
                m.set(row, col, coef.into());
            }
            let snf = smith_normal_form(&m);
            let ones = snf
                .diagonal()
                .iter()
                .all(|x| x == &num_bigint::BigInt::from(1));
            if !ones {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zring(gen: &str, degree: u32, trunc: u32) -> TruncatedRing {
        TruncatedRing::new(gen, degree, trunc, Coeff::Z).unwrap()
    }

    #[test]
    fn ring_validation() {
        assert!(TruncatedRing::new("a", 3, 2, Coeff::Z).is_err());
        assert!(TruncatedRing::new("a", 0, 2, Coeff::Z).is_err());
        assert!(TruncatedRing::new("a", 2, 0, Coeff::Z).is_err());
        assert!(TruncatedRing::new("a", 2, 2, Coeff::Fp(6)).is_err());
        assert!(TruncatedRing::new("a", 2, 2, Coeff::Fp(7)).is_ok());
        assert_eq!(zring("a", 4, 3).top_degree(), 12);
    }

    #[test]
    fn forced_trivial_by_truncation() {
        // Maps from the shorter complex projective ring into the longer one
        // die: l^(m+1) g^(m+1) = 0 with g^(m+1) nonzero.
        let cp2 = zring("a", 2, 2);
        let cp5 = zring("b", 2, 5);
        assert_eq!(
            ring_hom_forced_trivial(&cp2, &cp5),
            HomTriviality::Forced(ForcedReason::TruncationKills)
        );
        assert_eq!(
            ring_hom_forced_trivial(&cp5, &cp2),
            HomTriviality::Nonzero { witness_exponent: 1 }
        );
    }

    #[test]
    fn forced_trivial_by_degree() {
        let cp3 = zring("a", 2, 3);
        let hp2 = zring("b", 4, 2);
        // Degree 2 has no slot in the quaternionic ring.
        assert_eq!(
            ring_hom_forced_trivial(&cp3, &hp2),
            HomTriviality::Forced(ForcedReason::DegreeMismatch)
        );
        // The reverse direction has the witness b -> a^2 (b^3 -> a^6 = 0).
        assert_eq!(
            ring_hom_forced_trivial(&hp2, &cp3),
            HomTriviality::Nonzero { witness_exponent: 2 }
        );
        // With a long enough target even that direction dies.
        let cp7 = zring("c", 2, 7);
        assert_eq!(
            ring_hom_forced_trivial(&hp2, &cp7),
            HomTriviality::Forced(ForcedReason::TruncationKills)
        );
    }

    #[test]
    fn forced_trivial_by_coefficients() {
        let zr = zring("a", 2, 2);
        let f2 = TruncatedRing::new("b", 2, 4, Coeff::Fp(2)).unwrap();
        let f3 = TruncatedRing::new("c", 2, 4, Coeff::Fp(3)).unwrap();
        assert_eq!(
            ring_hom_forced_trivial(&f2, &zr),
            HomTriviality::Forced(ForcedReason::AdditiveOrder)
        );
        assert_eq!(
            ring_hom_forced_trivial(&f2, &f3),
            HomTriviality::Forced(ForcedReason::AdditiveOrder)
        );
        // Z into F_p: nilpotence forces p | l.
        assert_eq!(
            ring_hom_forced_trivial(&zr, &f2),
            HomTriviality::Forced(ForcedReason::CharacteristicDivides)
        );
        // Same field, truncations too close to constrain: witness survives.
        let f2short = TruncatedRing::new("d", 2, 2, Coeff::Fp(2)).unwrap();
        assert_eq!(
            ring_hom_forced_trivial(&f2short, &f2short),
            HomTriviality::Nonzero { witness_exponent: 1 }
        );
    }

    #[test]
    fn equal_parameter_wedge_has_eight_solutions() {
        for degree in [2u32, 4] {
            for n in 2..=6u32 {
                let model = WedgeRingModel::new(
                    zring("a", degree, n),
                    zring("b", degree, n),
                )
                .unwrap();
                let sols = enumerate_invertible_endos(&model).unwrap();
                assert_eq!(sols.len(), 8, "degree {degree}, trunc {n}");
                assert_eq!(sols.iter().filter(|s| s.is_diagonal()).count(), 4);
                assert_eq!(sols.iter().filter(|s| s.is_antidiagonal()).count(), 4);
                for s in &sols {
                    assert_eq!((s.a * s.d - s.b * s.c).abs(), 1);
                    assert_eq!(s.a * s.c, 0);
                    assert_eq!(s.b * s.d, 0);
                }
                assert!(all_invertible_endos_are_ring_autos(&model).unwrap());
            }
        }
    }

    #[test]
    fn unequal_truncations_are_diagonal() {
        let model = WedgeRingModel::new(zring("a", 2, 2), zring("b", 2, 5)).unwrap();
        let sols = enumerate_invertible_endos(&model).unwrap();
        assert_eq!(sols.len(), 4);
        assert!(sols.iter().all(|s| s.is_diagonal() && s.a.abs() == 1 && s.d.abs() == 1));
        assert!(all_invertible_endos_are_ring_autos(&model).unwrap());
    }

    #[test]
    fn truncation_one_is_an_infinite_family() {
        let model = WedgeRingModel::new(zring("a", 2, 1), zring("b", 2, 1)).unwrap();
        assert!(matches!(
            enumerate_invertible_endos(&model),
            Err(Error::NotEnumerable(_))
        ));
        let model = WedgeRingModel::new(zring("a", 2, 1), zring("b", 2, 3)).unwrap();
        assert!(matches!(
            enumerate_invertible_endos(&model),
            Err(Error::NotEnumerable(_))
        ));
    }

    #[test]
    fn mixed_degree_enumeration_unsupported() {
        let model = WedgeRingModel::new(zring("a", 2, 3), zring("b", 4, 3)).unwrap();
        assert!(matches!(
            enumerate_invertible_endos(&model),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn mod_p_solutions() {
        let f3 = |g: &str| TruncatedRing::new(g, 2, 2, Coeff::Fp(3)).unwrap();
        let model = WedgeRingModel::new(f3("a"), f3("b")).unwrap();
        let sols = enumerate_invertible_endos(&model).unwrap();
        // Diagonal and antidiagonal patterns with unit entries: 2 * (p-1)^2.
        assert_eq!(sols.len(), 8);
        assert!(all_invertible_endos_are_ring_autos(&model).unwrap());
    }

    #[test]
    fn product_model_eight_solutions() {
        for n in 1..=5u32 {
            let model =
                ProductRingModel::new(zring("a", 2, n), zring("b", 2, n)).unwrap();
            let sols = enumerate_product_invertible_endos(&model).unwrap();
            assert_eq!(sols.len(), 8);
            for s in &sols {
                assert_eq!((s.a * s.d - s.b * s.c).abs(), 1);
                assert!(s.a * s.b == 0 && s.c * s.d == 0);
            }
            assert!(all_product_invertible_endos_are_ring_autos(&model).unwrap());
        }
    }

    #[test]
    fn product_model_scope() {
        let model = ProductRingModel::new(zring("a", 2, 2), zring("b", 2, 3)).unwrap();
        assert!(matches!(
            enumerate_product_invertible_endos(&model),
            Err(Error::Unsupported(_))
        ));
    }
}
