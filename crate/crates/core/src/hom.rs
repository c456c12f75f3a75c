//! Homomorphisms between groups in canonical form.
//!
//! A `GroupHom` stores an integer matrix whose rows are indexed by target
//! generators and columns by source generators (free first, then torsion by
//! ascending invariant factor). Well-definedness demands `n_i | a_ij * m_j`
//! for a torsion source generator of order `m_j` hitting a torsion target
//! generator of order `n_i`, and zero entries where torsion would hit a free
//! generator. Torsion rows are kept reduced modulo the row modulus, so
//! structural equality of homs is literal equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;
use crate::matrix::{smith_normal_form, IntMat};
use crate::Trilean;

/// An endomorphism is just a hom with equal source and target; operations
/// that need that invariant check it at the call site.
pub type Endo = GroupHom;

#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMat,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupHom({} -> {}) {:?}", self.source, self.target, self.matrix)
    }
}

impl GroupHom {
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMat) -> Result<Self> {
        if matrix.rows() != target.gen_count() || matrix.cols() != source.gen_count() {
            return Err(Error::InvalidHomomorphism(format!(
                "matrix is {}x{} but {} -> {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                source,
                target,
                target.gen_count(),
                source.gen_count()
            )));
        }
        for j in 0..source.gen_count() {
            let Some(m_j) = source.gen_modulus(j) else {
                continue; // free source generator: no constraint
            };
            for i in 0..target.gen_count() {
                let entry = matrix.get(i, j);
                match target.gen_modulus(i) {
                    None => {
                        if !entry.is_zero() {
                            return Err(Error::InvalidHomomorphism(format!(
                                "torsion generator of order {m_j} cannot hit free generator \
                                 {i} (entry {entry})"
                            )));
                        }
                    }
                    Some(n_i) => {
                        if !(entry * m_j).mod_floor(n_i).is_zero() {
                            return Err(Error::InvalidHomomorphism(format!(
                                "entry {entry} at ({i},{j}) violates {n_i} | {entry}*{m_j}"
                            )));
                        }
                    }
                }
            }
        }
        let mut hom = GroupHom { source, target, matrix };
        hom.reduce();
        Ok(hom)
    }

    /// Test-friendly constructor from i64 rows.
    pub fn from_rows(
        source: &FgAbelianGroup,
        target: &FgAbelianGroup,
        rows: &[&[i64]],
    ) -> Result<Self> {
        GroupHom::new(source.clone(), target.clone(), IntMat::from_rows(rows))
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMat::identity(g.gen_count()),
        }
    }

    pub fn zero(source: &FgAbelianGroup, target: &FgAbelianGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMat::zeros(target.gen_count(), source.gen_count()),
        }
    }

    /// Multiplication by `k`.
    pub fn scalar(g: &FgAbelianGroup, k: i64) -> Self {
        let n = g.gen_count();
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(k));
        }
        let mut hom = GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix: m,
        };
        hom.reduce();
        hom
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    fn reduce(&mut self) {
        for i in 0..self.target.gen_count() {
            if let Some(n_i) = self.target.gen_modulus(i) {
                let n_i = n_i.clone();
                for j in 0..self.source.gen_count() {
                    let v = self.matrix.get(i, j).mod_floor(&n_i);
                    self.matrix.set(i, j, v);
                }
            }
        }
    }

    /// self . first (apply `first`, then `self`).
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::IncompatibleHomomorphisms(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, first.source, first.target
            )));
        }
        let m = self.matrix.mul(&first.matrix)?;
        GroupHom::new(first.source.clone(), self.target.clone(), m)
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::IncompatibleHomomorphisms(
                "sum of homs with different source or target".into(),
            ));
        }
        GroupHom::new(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix)?,
        )
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom::new(self.source.clone(), self.target.clone(), self.matrix.neg())
            .expect("negation preserves well-definedness")
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom> {
        self.add(&other.neg())
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix.is_identity()
    }

    fn expect_endo(&self, what: &str) -> Result<()> {
        if self.source != self.target {
            return Err(Error::PreconditionViolation(format!(
                "{what} needs an endomorphism, got {} -> {}",
                self.source, self.target
            )));
        }
        Ok(())
    }

    /// Relation columns of the target presentation, used to compute
    /// cokernels: for each torsion generator, `n_j * e_j`.
    fn target_relations(&self) -> IntMat {
        let g = &self.target;
        let mut r = IntMat::zeros(g.gen_count(), g.torsion_count());
        for j in 0..g.torsion_count() {
            r.set(
                g.free_rank() + j,
                j,
                g.gen_modulus(g.free_rank() + j).unwrap().clone(),
            );
        }
        r
    }

    /// Cokernel target/(image), via the Smith normal form of the matrix
    /// augmented with the target relation columns.
    pub fn cokernel(&self) -> FgAbelianGroup {
        let aug = self
            .matrix
            .hstack(&self.target_relations())
            .expect("rows match by construction");
        let snf = smith_normal_form(&aug);
        let diag = snf.diagonal();
        let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
        let free = self.target.gen_count() - nonzero.len();
        FgAbelianGroup::canonicalize(free, &nonzero).expect("diagonal entries are positive")
    }

    /// True iff the map is a group isomorphism. Source and target are both
    /// canonical, so they must be equal as data; surjectivity then suffices
    /// because finitely generated abelian groups are Hopfian.
    pub fn is_isomorphism(&self) -> bool {
        self.source == self.target && self.cokernel().is_trivial()
    }

    /// Inverse of an isomorphism, solved exactly through the tracked Smith
    /// transforms of the augmented matrix.
    pub fn invert(&self) -> Result<GroupHom> {
        if !self.is_isomorphism() {
            return Err(Error::PreconditionViolation(format!(
                "cannot invert non-isomorphism {} -> {}",
                self.source, self.target
            )));
        }
        let rows = self.target.gen_count();
        let aug = self.matrix.hstack(&self.target_relations())?;
        let snf = smith_normal_form(&aug);
        // Cokernel trivial means d = [I | 0]; a right inverse of the
        // augmented map is v * [u; 0], and its top block (coefficients of the
        // actual generators, not the relations) represents the inverse hom.
        let mut stacked = IntMat::zeros(aug.cols(), rows);
        for i in 0..rows {
            for j in 0..rows {
                stacked.set(i, j, snf.u.get(i, j).clone());
            }
        }
        let w = snf.v.mul(&stacked)?;
        let mut b = IntMat::zeros(self.source.gen_count(), rows);
        for i in 0..self.source.gen_count() {
            for j in 0..rows {
                b.set(i, j, w.get(i, j).clone());
            }
        }
        let inv = GroupHom::new(self.target.clone(), self.source.clone(), b)?;
        debug_assert!(inv.compose(self).unwrap().is_identity());
        debug_assert!(self.compose(&inv).unwrap().is_identity());
        Ok(inv)
    }

    /// Nilpotency in two phases: the induced matrix on the free quotient must
    /// be nilpotent over Z, then the image chain inside the torsion part must
    /// shrink to zero (it stabilizes within log2 of the torsion order).
    pub fn is_nilpotent(&self) -> Result<bool> {
        self.expect_endo("is_nilpotent")?;
        let g = &self.source;
        let r = g.free_rank();

        // Free quotient: nilpotent iff F^r = 0 (equivalent to characteristic
        // polynomial x^r).
        if r > 0 {
            let mut f = IntMat::zeros(r, r);
            for i in 0..r {
                for j in 0..r {
                    f.set(i, j, self.matrix.get(i, j).clone());
                }
            }
            let mut p = IntMat::identity(r);
            for _ in 0..r {
                p = p.mul(&f)?;
            }
            if !p.is_zero() {
                return Ok(false);
            }
        }

        let t = g.torsion_count();
        if t == 0 {
            return Ok(true);
        }
        let torsion = g.torsion_part();
        let mut m = IntMat::zeros(t, t);
        for i in 0..t {
            for j in 0..t {
                m.set(i, j, self.matrix.get(r + i, r + j).clone());
            }
        }
        let phi_t = GroupHom::new(torsion.clone(), torsion.clone(), m)?;
        let total = g.torsion_order();
        let bound = total.bits() + 1;
        let mut power = phi_t.clone();
        let mut prev_image = total.clone();
        for _ in 0..bound {
            let image_order = &total / power.cokernel().order().expect("torsion cokernel is finite");
            if image_order.is_one() {
                return Ok(true);
            }
            if image_order == prev_image {
                return Ok(false); // chain stabilized above zero
            }
            prev_image = image_order;
            power = power.compose(&phi_t)?;
        }
        Ok(false)
    }

    /// Quasi-regular: id - phi is an isomorphism.
    pub fn is_quasi_regular(&self) -> Result<bool> {
        self.expect_endo("is_quasi_regular")?;
        let id = GroupHom::identity(&self.source);
        Ok(id.sub(self)?.is_isomorphism())
    }

    /// Membership in the Jacobson radical of End(G): id + psi.phi.rho is a
    /// unit for all psi, rho. Decided exactly by brute force when End(G) is
    /// finite with at most `budget` elements; otherwise the sufficient path
    /// "End(G) commutative and phi nilpotent" may answer true; otherwise
    /// undecided.
    pub fn is_radical(&self, budget: u64) -> Result<Trilean> {
        self.expect_endo("is_radical")?;
        let g = &self.source;
        if g.is_finite() {
            let end_size = g.hom_group(g).order().expect("End of finite group is finite");
            if end_size <= BigInt::from(budget) {
                let id = GroupHom::identity(g);
                let endos: Vec<GroupHom> = enumerate_homs(g, g)?.collect();
                for psi in &endos {
                    for rho in &endos {
                        let prod = psi.compose(self)?.compose(rho)?;
                        if !id.add(&prod)?.is_isomorphism() {
                            return Ok(Trilean::False);
                        }
                    }
                }
                return Ok(Trilean::True);
            }
        }
        if g.is_end_commutative() && self.is_nilpotent()? {
            return Ok(Trilean::True);
        }
        Ok(Trilean::Undecided)
    }
}

/// All homomorphisms source -> target in ascending lexicographic order of
/// the (row-major) entry vector. Errors when the Hom group is infinite,
/// i.e. both groups have free rank.
pub fn enumerate_homs(
    source: &FgAbelianGroup,
    target: &FgAbelianGroup,
) -> Result<HomEnumeration> {
    if source.free_rank() > 0 && target.free_rank() > 0 {
        return Err(Error::NotEnumerable(format!(
            "Hom({source}, {target}) is infinite: both groups have free rank"
        )));
    }
    let rows = target.gen_count();
    let cols = source.gen_count();
    let mut choices = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let list: Vec<BigInt> = match (target.gen_modulus(i), source.gen_modulus(j)) {
                (None, _) => vec![BigInt::zero()], // torsion col into free row
                (Some(n_i), None) => {
                    // Free source generator can hit any residue.
                    let mut v = Vec::new();
                    let mut x = BigInt::zero();
                    while &x < n_i {
                        v.push(x.clone());
                        x += 1;
                    }
                    v
                }
                (Some(n_i), Some(m_j)) => {
                    let g = n_i.gcd(m_j);
                    let step = n_i / &g;
                    let mut v = Vec::new();
                    let mut k = BigInt::zero();
                    while &k < &g {
                        v.push(&k * &step);
                        k += 1;
                    }
                    v
                }
            };
            choices.push(list);
        }
    }
    Ok(HomEnumeration {
        source: source.clone(),
        target: target.clone(),
        choices,
        indices: vec![0; rows * cols],
        done: false,
    })
}

pub struct HomEnumeration {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    choices: Vec<Vec<BigInt>>,
    indices: Vec<usize>,
    done: bool,
}

impl Iterator for HomEnumeration {
    type Item = GroupHom;

    fn next(&mut self) -> Option<GroupHom> {
        if self.done {
            return None;
        }
        let cols = self.source.gen_count();
        let rows = self.target.gen_count();
        let mut m = IntMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let pos = i * cols + j;
                m.set(i, j, self.choices[pos][self.indices[pos]].clone());
            }
        }
        // Odometer increment, last position fastest (ascending lex order).
        let mut pos = self.indices.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.indices[pos] += 1;
            if self.indices[pos] < self.choices[pos].len() {
                break;
            }
            self.indices[pos] = 0;
        }
        if self.indices.is_empty() {
            self.done = true;
        }
        Some(
            GroupHom::new(self.source.clone(), self.target.clone(), m)
                .expect("enumerated entries satisfy the divisibility constraints"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use num_traits::ToPrimitive;

    fn g(s: &str) -> FgAbelianGroup {
        parse_group(s).unwrap()
    }

    #[test]
    fn well_definedness_enforced() {
        // 1: Z/4 -> Z/6 is not a homomorphism (6 does not divide 4).
        assert!(GroupHom::from_rows(&g("Z/4"), &g("Z/6"), &[&[1]]).is_err());
        // 3: Z/4 -> Z/6 is fine (6 | 12).
        assert!(GroupHom::from_rows(&g("Z/4"), &g("Z/6"), &[&[3]]).is_ok());
        // Torsion cannot hit a free generator.
        assert!(GroupHom::from_rows(&g("Z/2"), &g("Z"), &[&[1]]).is_err());
        assert!(GroupHom::from_rows(&g("Z/2"), &g("Z"), &[&[0]]).is_ok());
    }

    #[test]
    fn torsion_rows_stay_reduced() {
        let h = GroupHom::from_rows(&g("Z/4"), &g("Z/4"), &[&[7]]).unwrap();
        assert_eq!(h, GroupHom::scalar(&g("Z/4"), 3));
        assert_eq!(h.matrix().get(0, 0).to_i64().unwrap(), 3);
    }

    #[test]
    fn composition_and_ring_ops() {
        let two = GroupHom::scalar(&g("Z/4"), 2);
        assert!(two.compose(&two).unwrap().is_zero_map());
        let id = GroupHom::identity(&g("Z/4"));
        assert_eq!(id.compose(&two).unwrap(), two);
        assert_eq!(two.add(&two).unwrap(), GroupHom::zero(&g("Z/4"), &g("Z/4")));
        // Distributivity spot-check on End(Z/4): (a+b).c = a.c + b.c.
        let endos: Vec<GroupHom> = enumerate_homs(&g("Z/4"), &g("Z/4")).unwrap().collect();
        for a in &endos {
            for b in &endos {
                for c in &endos {
                    let lhs = a.add(b).unwrap().compose(c).unwrap();
                    let rhs = a.compose(c).unwrap().add(&b.compose(c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn isomorphism_and_cokernel() {
        assert!(GroupHom::identity(&g("Z^2+Z/3")).is_isomorphism());
        assert!(GroupHom::scalar(&g("Z"), -1).is_isomorphism());
        assert!(!GroupHom::scalar(&g("Z"), 2).is_isomorphism());
        assert_eq!(GroupHom::scalar(&g("Z"), 2).cokernel(), g("Z/2"));
        assert!(GroupHom::scalar(&g("Z/6"), 5).is_isomorphism());
        assert!(!GroupHom::scalar(&g("Z/6"), 2).is_isomorphism());
        assert_eq!(GroupHom::scalar(&g("Z/6"), 2).cokernel(), g("Z/2"));
        assert_eq!(GroupHom::zero(&g("Z"), &g("Z/4")).cokernel(), g("Z/4"));
        // Maps between non-equal canonical groups are never isomorphisms.
        let h = GroupHom::from_rows(&g("Z/2"), &g("Z/4"), &[&[2]]).unwrap();
        assert!(!h.is_isomorphism());
    }

    #[test]
    fn inversion_roundtrip() {
        let samples = [
            GroupHom::scalar(&g("Z/6"), 5),
            GroupHom::scalar(&g("Z"), -1),
            GroupHom::from_rows(&g("Z^2"), &g("Z^2"), &[&[2, 1], &[1, 1]]).unwrap(),
            GroupHom::from_rows(&g("Z/2+Z/4"), &g("Z/2+Z/4"), &[&[1, 1], &[2, 1]]).unwrap(),
            GroupHom::from_rows(&g("Z+Z/2"), &g("Z+Z/2"), &[&[-1, 0], &[1, 1]]).unwrap(),
        ];
        for f in samples {
            assert!(f.is_isomorphism(), "{f:?}");
            let inv = f.invert().unwrap();
            assert!(inv.compose(&f).unwrap().is_identity());
            assert!(f.compose(&inv).unwrap().is_identity());
        }
        assert!(GroupHom::scalar(&g("Z/4"), 2).invert().is_err());
    }

    #[test]
    fn hom_census_matches_gcd() {
        for m in 2u64..=12 {
            for n in 2u64..=12 {
                let src = FgAbelianGroup::cyclic(m).unwrap();
                let tgt = FgAbelianGroup::cyclic(n).unwrap();
                let count = enumerate_homs(&src, &tgt).unwrap().count() as u64;
                assert_eq!(count, num_integer::gcd(m, n), "Hom(Z/{m}, Z/{n})");
                let order = src.hom_group(&tgt).order().unwrap().to_u64().unwrap();
                assert_eq!(count, order);
            }
        }
    }

    #[test]
    fn enumerate_respects_structure() {
        // Z/2+Z/3 and Z/4+Z/9 canonicalize to Z/6 and Z/36; there are
        // exactly 6 homomorphisms and enumeration is deterministic.
        let src = g("Z/2+Z/3");
        let tgt = g("Z/4+Z/9");
        let homs: Vec<GroupHom> = enumerate_homs(&src, &tgt).unwrap().collect();
        assert_eq!(homs.len(), 6);
        let again: Vec<GroupHom> = enumerate_homs(&src, &tgt).unwrap().collect();
        assert_eq!(homs, again);
        // Identity shows up when enumerating endomorphisms.
        let endos: Vec<GroupHom> = enumerate_homs(&g("Z/2+Z/4"), &g("Z/2+Z/4"))
            .unwrap()
            .collect();
        // gcd(2,2) * gcd(2,4) * gcd(4,2) * gcd(4,4) = 32
        assert_eq!(endos.len(), 32);
        assert!(endos.iter().any(|e| e.is_identity()));
        assert!(endos.iter().any(|e| e.is_zero_map()));
        // Infinite Hom groups are refused.
        assert!(enumerate_homs(&g("Z"), &g("Z+Z/2")).is_err());
        // Free source into finite target is fine.
        assert_eq!(enumerate_homs(&g("Z"), &g("Z/5")).unwrap().count(), 5);
    }

    #[test]
    fn nilpotency_decider() {
        assert!(GroupHom::scalar(&g("Z/4"), 2).is_nilpotent().unwrap());
        assert!(GroupHom::scalar(&g("Z/9"), 3).is_nilpotent().unwrap());
        assert!(GroupHom::scalar(&g("Z/9"), 6).is_nilpotent().unwrap());
        assert!(!GroupHom::scalar(&g("Z/9"), 2).is_nilpotent().unwrap());
        assert!(!GroupHom::identity(&g("Z/2")).is_nilpotent().unwrap());
        // Strictly upper triangular on Z^2.
        let n = GroupHom::from_rows(&g("Z^2"), &g("Z^2"), &[&[0, 1], &[0, 0]]).unwrap();
        assert!(n.is_nilpotent().unwrap());
        let p = GroupHom::from_rows(&g("Z^2"), &g("Z^2"), &[&[1, 0], &[0, 0]]).unwrap();
        assert!(!p.is_nilpotent().unwrap());
        // Mixed group: free part nilpotent, free generator feeding torsion.
        let mixed = GroupHom::from_rows(&g("Z+Z/2"), &g("Z+Z/2"), &[&[0, 0], &[1, 0]]).unwrap();
        assert!(mixed.is_nilpotent().unwrap());
        // Composite Z/4 -> Z/2 -> Z/4 (reduce then include by 2) is 2,
        // hence nilpotent.
        let down = GroupHom::from_rows(&g("Z/4"), &g("Z/2"), &[&[1]]).unwrap();
        let up = GroupHom::from_rows(&g("Z/2"), &g("Z/4"), &[&[2]]).unwrap();
        assert!(up.compose(&down).unwrap().is_nilpotent().unwrap());
    }

    #[test]
    fn quasi_regularity() {
        // id - 2 = -1 on Z, an isomorphism.
        assert!(GroupHom::scalar(&g("Z"), 2).is_quasi_regular().unwrap());
        assert!(!GroupHom::identity(&g("Z/2")).is_quasi_regular().unwrap());
        // Every nilpotent endomorphism of small groups is quasi-regular and
        // id + phi is a unit too.
        for grp in ["Z/8", "Z/2+Z/4", "Z/9"] {
            let grp = g(grp);
            for e in enumerate_homs(&grp, &grp).unwrap() {
                if e.is_nilpotent().unwrap() {
                    assert!(e.is_quasi_regular().unwrap(), "{e:?}");
                    let id = GroupHom::identity(&grp);
                    assert!(id.add(&e).unwrap().is_isomorphism());
                }
            }
        }
    }

    #[test]
    fn radical_membership() {
        let two = GroupHom::scalar(&g("Z/4"), 2);
        assert_eq!(two.is_radical(16).unwrap(), Trilean::True);
        assert_eq!(
            GroupHom::identity(&g("Z/2")).is_radical(16).unwrap(),
            Trilean::False
        );
        // Budget too small for brute force: commutative + nilpotent fast path.
        assert_eq!(two.is_radical(2).unwrap(), Trilean::True);
        // Budget too small and not nilpotent: undecided.
        assert_eq!(
            GroupHom::identity(&g("Z/4")).is_radical(2).unwrap(),
            Trilean::Undecided
        );
    }
}
