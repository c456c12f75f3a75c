//! Finitely generated abelian groups in invariant-factor canonical form.
//!
//! A group is `Z^r + Z/d_1 + ... + Z/d_t` with `d_1 | d_2 | ... | d_t` and
//! every `d_j >= 2`. Generators are ordered free-first, then torsion by
//! ascending invariant factor; every matrix in this crate follows that
//! ordering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hom::GroupHom;
use crate::matrix::{smith_normal_form, IntMat};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl std::fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// The canonical string round-trips through [`parse_group`].
impl std::fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Z/n for n >= 1 (n = 1 gives the trivial group).
    pub fn cyclic(n: u64) -> Result<Self> {
        FgAbelianGroup::canonicalize(0, &[BigInt::from(n)])
    }

    /// Canonical form of `Z^free_rank + Z/m_1 + ... + Z/m_s` for arbitrary
    /// moduli `m_j >= 1`. Units are dropped and the rest is rechained, so
    /// e.g. `(0, [2, 3])` becomes `Z/6`.
    pub fn canonicalize(free_rank: usize, moduli: &[BigInt]) -> Result<Self> {
        for m in moduli {
            if m.sign() != num_bigint::Sign::Plus {
                return Err(Error::InvalidPresentation(format!(
                    "modulus {m} must be a positive integer"
                )));
            }
        }
        let live: Vec<&BigInt> = moduli.iter().filter(|m| !m.is_one()).collect();
        if live.is_empty() {
            return Ok(FgAbelianGroup {
                free_rank,
                invariant_factors: Vec::new(),
            });
        }
        // Smith normal form of the diagonal relation matrix produces the
        // invariant-factor chain without factoring anything.
        let mut diag = IntMat::zeros(live.len(), live.len());
        for (i, m) in live.iter().enumerate() {
            diag.set(i, i, (*m).clone());
        }
        let snf = smith_normal_form(&diag);
        let invariant_factors = snf
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect::<Vec<_>>();
        debug_assert!(invariant_factors.iter().all(|d| !d.is_zero()));
        Ok(FgAbelianGroup {
            free_rank,
            invariant_factors,
        })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_count(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Total number of generators (columns/rows of matrices touching this group).
    pub fn gen_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Modulus of generator `idx`; `None` for free generators.
    pub fn gen_modulus(&self, idx: usize) -> Option<&BigInt> {
        if idx < self.free_rank {
            None
        } else {
            self.invariant_factors.get(idx - self.free_rank)
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for d in &self.invariant_factors {
            o *= d;
        }
        Some(o)
    }

    pub fn torsion_order(&self) -> BigInt {
        let mut o = BigInt::one();
        for d in &self.invariant_factors {
            o *= d;
        }
        o
    }

    /// The torsion subgroup as a group of its own.
    pub fn torsion_part(&self) -> FgAbelianGroup {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    /// Hom(self, other) as an abstract group, from the cyclic building blocks
    /// Hom(Z, H) = H, Hom(Z/m, Z) = 0, Hom(Z/m, Z/n) = Z/gcd(m, n).
    pub fn hom_group(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let rank = self.free_rank * other.free_rank;
        let mut factors = Vec::new();
        for _ in 0..self.free_rank {
            factors.extend(other.invariant_factors.iter().cloned());
        }
        for m in &self.invariant_factors {
            for n in &other.invariant_factors {
                factors.push(m.gcd(n));
            }
        }
        FgAbelianGroup::canonicalize(rank, &factors)
            .expect("hom factors are positive by construction")
    }

    pub fn is_hom_trivial(&self, other: &FgAbelianGroup) -> bool {
        self.hom_group(other).is_trivial()
    }

    /// Tensor product over Z: Z (x) H = H, Z/m (x) Z/n = Z/gcd(m, n).
    pub fn tensor(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let rank = self.free_rank * other.free_rank;
        let mut factors = Vec::new();
        for _ in 0..self.free_rank {
            factors.extend(other.invariant_factors.iter().cloned());
        }
        for _ in 0..other.free_rank {
            factors.extend(self.invariant_factors.iter().cloned());
        }
        for m in &self.invariant_factors {
            for n in &other.invariant_factors {
                factors.push(m.gcd(n));
            }
        }
        FgAbelianGroup::canonicalize(rank, &factors)
            .expect("tensor factors are positive by construction")
    }

    /// Tor over Z: Tor(Z, -) = Tor(-, Z) = 0, Tor(Z/m, Z/n) = Z/gcd(m, n).
    pub fn tor(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut factors = Vec::new();
        for m in &self.invariant_factors {
            for n in &other.invariant_factors {
                factors.push(m.gcd(n));
            }
        }
        FgAbelianGroup::canonicalize(0, &factors)
            .expect("tor factors are positive by construction")
    }

    /// End(G) is commutative exactly when G is cyclic or Z or trivial, i.e.
    /// free rank plus number of invariant factors is at most one.
    pub fn is_end_commutative(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    /// Primary decomposition: multiset of prime-power summands Z/p^r plus the
    /// free rank. Requires factoring the invariant factors; moduli with a
    /// prime factor beyond the built-in trial/primality bound are rejected.
    pub fn primary_decomposition(&self) -> Result<PrimaryDecomposition> {
        let mut pairs = Vec::new();
        for d in &self.invariant_factors {
            let fs = factorize(d)?;
            for (p, r) in fs {
                pairs.push(PrimePower { prime: p, exponent: r });
            }
        }
        pairs.sort();
        Ok(PrimaryDecomposition {
            free_rank: self.free_rank,
            prime_powers: pairs,
        })
    }

    /// Two groups share a direct factor when both have free rank > 0 (shared
    /// Z) or their primary decompositions share a prime power Z/p^r.
    pub fn has_common_direct_factor(&self, other: &FgAbelianGroup) -> Result<bool> {
        if self.free_rank > 0 && other.free_rank > 0 {
            return Ok(true);
        }
        let a = self.primary_decomposition()?;
        let b = other.primary_decomposition()?;
        let mut i = 0;
        let mut j = 0;
        while i < a.prime_powers.len() && j < b.prime_powers.len() {
            match a.prime_powers[i].cmp(&b.prime_powers[j]) {
                std::cmp::Ordering::Equal => return Ok(true),
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        Ok(false)
    }
}

/// One Z/p^r summand of a primary decomposition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PrimePower {
    pub prime: BigInt,
    pub exponent: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimaryDecomposition {
    pub free_rank: usize,
    /// Sorted with multiplicity.
    pub prime_powers: Vec<PrimePower>,
}

fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut n = n.clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut push = |p: BigInt, r: u32| {
        out.push((p, r));
    };
    let try_divide = |n: &mut BigInt, p: &BigInt| -> u32 {
        let mut r = 0;
        while (&*n % p).is_zero() {
            *n /= p;
            r += 1;
        }
        r
    };
    let two = BigInt::from(2);
    let r = try_divide(&mut n, &two);
    if r > 0 {
        push(two, r);
    }
    let mut p = BigInt::from(3);
    let bound = BigInt::from(1u64 << 20);
    while &p * &p <= n && p <= bound {
        let r = try_divide(&mut n, &p);
        if r > 0 {
            push(p.clone(), r);
        }
        p += 2;
    }
    if !n.is_one() {
        if &p * &p > n || is_probable_prime(&n) {
            push(n, 1);
        } else {
            return Err(Error::Unsupported(format!(
                "cannot factor modulus cofactor {n} (beyond the built-in factorization bound)"
            )));
        }
    }
    out.sort();
    Ok(out)
}

/// Miller-Rabin with a fixed base set; deterministic for inputs below
/// 3.3 * 10^24, a strong probable-prime test beyond that.
fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let small: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for s in small {
        let sb = BigInt::from(s);
        if n == &sb {
            return true;
        }
        if (n % sb).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= 2;
        s += 1;
    }
    'witness: for a in small {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A direct sum together with its structure maps. The sum itself is in
/// canonical form, so the injections/projections do real change-of-basis
/// work (e.g. Z/2 + Z/3 lands in Z/6 via the Chinese remainder theorem).
pub struct DirectSum {
    pub sum: FgAbelianGroup,
    pub inj_left: GroupHom,
    pub inj_right: GroupHom,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
}

pub fn direct_sum(a: &FgAbelianGroup, b: &FgAbelianGroup) -> DirectSum {
    let rank = a.free_rank() + b.free_rank();
    let concat: Vec<BigInt> = a
        .invariant_factors()
        .iter()
        .chain(b.invariant_factors().iter())
        .cloned()
        .collect();
    let t = concat.len();

    // Rechain the concatenated torsion moduli; U carries old torsion
    // coordinates to new ones, U^-1 carries them back.
    let (sum_factors, u, u_inv) = if t == 0 {
        (Vec::new(), IntMat::identity(0), IntMat::identity(0))
    } else {
        let mut diag = IntMat::zeros(t, t);
        for (i, m) in concat.iter().enumerate() {
            diag.set(i, i, m.clone());
        }
        let snf = smith_normal_form(&diag);
        (snf.diagonal(), snf.u, snf.u_inv)
    };
    let kept: Vec<usize> = (0..t).filter(|&i| !sum_factors[i].is_one()).collect();
    let sum = FgAbelianGroup {
        free_rank: rank,
        invariant_factors: kept.iter().map(|&i| sum_factors[i].clone()).collect(),
    };

    let build_inj = |left: bool| -> GroupHom {
        let (g, free_off, tor_off) = if left {
            (a, 0usize, 0usize)
        } else {
            (b, a.free_rank(), a.torsion_count())
        };
        let mut m = IntMat::zeros(sum.gen_count(), g.gen_count());
        for j in 0..g.free_rank() {
            m.set(free_off + j, j, BigInt::one());
        }
        for j in 0..g.torsion_count() {
            let src_col = tor_off + j;
            for (row, &i) in kept.iter().enumerate() {
                m.set(
                    rank + row,
                    g.free_rank() + j,
                    u.get(i, src_col).clone(),
                );
            }
        }
        GroupHom::new(g.clone(), sum.clone(), m).expect("injection is well-defined")
    };
    let build_proj = |left: bool| -> GroupHom {
        let (g, free_off, tor_off) = if left {
            (a, 0usize, 0usize)
        } else {
            (b, a.free_rank(), a.torsion_count())
        };
        let mut m = IntMat::zeros(g.gen_count(), sum.gen_count());
        for j in 0..g.free_rank() {
            m.set(j, free_off + j, BigInt::one());
        }
        for i in 0..g.torsion_count() {
            let src_row = tor_off + i;
            for (col, &k) in kept.iter().enumerate() {
                m.set(
                    g.free_rank() + i,
                    rank + col,
                    u_inv.get(src_row, k).clone(),
                );
            }
        }
        GroupHom::new(sum.clone(), g.clone(), m).expect("projection is well-defined")
    };

    DirectSum {
        sum: sum.clone(),
        inj_left: build_inj(true),
        inj_right: build_inj(false),
        proj_left: build_proj(true),
        proj_right: build_proj(false),
    }
}

/// Parse the group grammar used across the CLI: `0`, or `+`-joined terms
/// `Z`, `Z^k`, `Z/d`. Anything else is rejected rather than guessed.
pub fn parse_group(s: &str) -> Result<FgAbelianGroup> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty group string".into()));
    }
    if s == "0" {
        return Ok(FgAbelianGroup::trivial());
    }
    let mut rank = 0usize;
    let mut factors = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        if term == "Z" {
            rank += 1;
        } else if let Some(k) = term.strip_prefix("Z^") {
            let k: usize = k
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad free rank in `{term}`")))?;
            rank += k;
        } else if let Some(d) = term.strip_prefix("Z/") {
            let d: BigInt = d
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad modulus in `{term}`")))?;
            if d < BigInt::from(2) {
                return Err(Error::InvalidInput(format!(
                    "modulus in `{term}` must be at least 2 (use `Z` for the integers)"
                )));
            }
            factors.push(d);
        } else {
            return Err(Error::InvalidInput(format!(
                "unrecognized group term `{term}` (expected Z, Z^k, or Z/d)"
            )));
        }
    }
    FgAbelianGroup::canonicalize(rank, &factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbelianGroup {
        parse_group(s).unwrap()
    }

    /// Element-order census over residue tuples, independent of SNF: the
    /// multiset of element orders determines a finite abelian group.
    fn order_census(moduli: &[u64]) -> std::collections::BTreeMap<u64, u64> {
        let mut census = std::collections::BTreeMap::new();
        let total: u64 = moduli.iter().product();
        for code in 0..total {
            let mut c = code;
            let mut ord = 1u64;
            for &m in moduli {
                let x = c % m;
                c /= m;
                let o = m / num_integer::gcd(x, m);
                ord = num_integer::lcm(ord, o);
            }
            *census.entry(ord).or_insert(0) += 1;
        }
        census
    }

    fn factors_u64(grp: &FgAbelianGroup) -> Vec<u64> {
        use num_traits::ToPrimitive;
        grp.invariant_factors()
            .iter()
            .map(|d| d.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn canonicalize_merges_coprime_factors() {
        let grp = FgAbelianGroup::canonicalize(0, &[2.into(), 3.into()]).unwrap();
        assert_eq!(grp, g("Z/6"));
        assert_eq!(
            order_census(&[2, 3]),
            order_census(&factors_u64(&grp)),
            "canonical form must preserve the element-order census"
        );
    }

    #[test]
    fn canonicalize_rechains() {
        let grp = FgAbelianGroup::canonicalize(1, &[4.into(), 6.into()]).unwrap();
        assert_eq!(grp.free_rank(), 1);
        assert_eq!(factors_u64(&grp), vec![2, 12]);
        assert_eq!(order_census(&[4, 6]), order_census(&[2, 12]));
    }

    #[test]
    fn canonicalize_census_sweep() {
        // Every list of moduli with product <= 48 canonicalizes to a chain
        // with the same element-order census.
        let lists: Vec<Vec<u64>> = vec![
            vec![2, 2, 2],
            vec![2, 4],
            vec![8],
            vec![2, 6],
            vec![12, 2],
            vec![3, 4],
            vec![6, 8],
            vec![2, 3, 5],
            vec![4, 9],
            vec![2, 2, 3, 2],
            vec![1, 5, 1],
        ];
        for list in lists {
            let big: Vec<BigInt> = list.iter().map(|&m| BigInt::from(m)).collect();
            let grp = FgAbelianGroup::canonicalize(0, &big).unwrap();
            let f = factors_u64(&grp);
            for w in f.windows(2) {
                assert_eq!(w[1] % w[0], 0, "not a chain: {f:?}");
            }
            assert!(f.iter().all(|&d| d >= 2));
            assert_eq!(order_census(&list), order_census(&f), "census for {list:?}");
        }
    }

    #[test]
    fn canonicalize_rejects_nonpositive() {
        assert!(FgAbelianGroup::canonicalize(0, &[0.into()]).is_err());
        assert!(FgAbelianGroup::canonicalize(0, &[(-3).into()]).is_err());
    }

    #[test]
    fn hom_group_cyclic_rule() {
        assert_eq!(g("Z/4").hom_group(&g("Z/6")), g("Z/2"));
        assert_eq!(g("Z/4").hom_group(&g("Z")), g("0"));
        assert_eq!(g("Z").hom_group(&g("Z/5")), g("Z/5"));
        assert_eq!(g("Z^2+Z/2").hom_group(&g("Z/4")), g("Z/4+Z/4+Z/2"));
        assert!(g("Z/4").is_hom_trivial(&g("Z/9")));
        assert!(!g("Z/4").is_hom_trivial(&g("Z/6")));
    }

    #[test]
    fn tensor_and_tor_rules() {
        assert_eq!(g("Z/4").tensor(&g("Z/6")), g("Z/2"));
        assert_eq!(g("Z+Z/2").tensor(&g("Z/4")), g("Z/4+Z/2"));
        assert_eq!(g("Z/4").tor(&g("Z/6")), g("Z/2"));
        assert_eq!(g("Z").tor(&g("Z/12")), g("0"));
        assert_eq!(g("Z^3").tor(&g("Z^2+Z/7")), g("0"));
        // Symmetry on a small sweep.
        for a in ["Z/2", "Z/4", "Z/6", "Z+Z/9", "Z^2"] {
            for b in ["Z/2", "Z/8", "Z/12", "Z+Z/3"] {
                assert_eq!(g(a).tensor(&g(b)), g(b).tensor(&g(a)));
                assert_eq!(g(a).tor(&g(b)), g(b).tor(&g(a)));
            }
        }
    }

    #[test]
    fn primary_decomposition_and_common_factors() {
        let d = g("Z/12").primary_decomposition().unwrap();
        assert_eq!(
            d.prime_powers,
            vec![
                PrimePower { prime: 2.into(), exponent: 2 },
                PrimePower { prime: 3.into(), exponent: 1 },
            ]
        );
        // Z/3+Z/4 = Z/12 and Z/5+Z/6 = Z/30 share the primary factor Z/3,
        // so they DO have a common direct factor.
        let lhs = g("Z/3+Z/4");
        let rhs = g("Z/5+Z/6");
        assert!(lhs.has_common_direct_factor(&rhs).unwrap());
        // Genuinely disjoint decompositions.
        assert!(!g("Z/2").has_common_direct_factor(&g("Z/4")).unwrap());
        assert!(!g("Z/4+Z/9").has_common_direct_factor(&g("Z/2+Z/3")).unwrap());
        assert!(g("Z+Z/2").has_common_direct_factor(&g("Z^2")).unwrap());
    }

    #[test]
    fn end_commutativity_criterion() {
        assert!(g("0").is_end_commutative());
        assert!(g("Z").is_end_commutative());
        assert!(g("Z/6").is_end_commutative());
        assert!(g("Z/2+Z/3").is_end_commutative()); // canonicalizes to Z/6
        assert!(!g("Z/2+Z/4").is_end_commutative());
        assert!(!g("Z^2").is_end_commutative());
        assert!(!g("Z+Z/2").is_end_commutative());
    }

    #[test]
    fn direct_sum_structure_maps() {
        for (a, b) in [
            ("Z/2", "Z/3"),
            ("Z/4", "Z/6"),
            ("Z+Z/2", "Z/2+Z/4"),
            ("Z^2", "Z/5"),
            ("0", "Z/9"),
        ] {
            let a = g(a);
            let b = g(b);
            let ds = direct_sum(&a, &b);
            let id_a = ds.proj_left.compose(&ds.inj_left).unwrap();
            assert!(id_a.is_identity(), "proj_left . inj_left != id for {a}+{b}");
            let id_b = ds.proj_right.compose(&ds.inj_right).unwrap();
            assert!(id_b.is_identity());
            let zero = ds.proj_left.compose(&ds.inj_right).unwrap();
            assert!(zero.is_zero_map(), "proj_left . inj_right != 0 for {a}+{b}");
            let zero = ds.proj_right.compose(&ds.inj_left).unwrap();
            assert!(zero.is_zero_map());
            // inj_left.proj_left + inj_right.proj_right = id on the sum.
            let p1 = ds.inj_left.compose(&ds.proj_left).unwrap();
            let p2 = ds.inj_right.compose(&ds.proj_right).unwrap();
            assert!(p1.add(&p2).unwrap().is_identity());
            // Canonical shape.
            assert_eq!(
                ds.sum,
                FgAbelianGroup::canonicalize(
                    a.free_rank() + b.free_rank(),
                    &a.invariant_factors()
                        .iter()
                        .chain(b.invariant_factors())
                        .cloned()
                        .collect::<Vec<_>>()
                )
                .unwrap()
            );
        }
    }

    #[test]
    fn parse_group_grammar() {
        assert_eq!(g("Z^2+Z/4"), FgAbelianGroup::canonicalize(2, &[4.into()]).unwrap());
        assert_eq!(g("Z/2+Z/3"), g("Z/6"));
        assert!(parse_group("Z/0").is_err());
        assert!(parse_group("Z/1").is_err());
        assert!(parse_group("Q").is_err());
        assert!(parse_group("").is_err());
        // Display round-trips.
        for s in ["0", "Z", "Z^2+Z/2+Z/4", "Z/12"] {
            assert_eq!(g(s), parse_group(&g(s).to_string()).unwrap());
        }
    }
}
