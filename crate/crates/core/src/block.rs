//! Graded endomorphisms of wedges in 2x2 block form.
//!
//! A self-map of X v Y acts on each H_i(X) + H_i(Y) by a 2x2 matrix of
//! homomorphisms. `BlockEndo` stores those matrices degreewise, `assemble`
//! turns them into honest endomorphisms of the wedge homology (through the
//! canonical-form embeddings), and the Schur complement implements the
//! inverse-factorization algebra used by the radical reducibility theorem.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{direct_sum, FgAbelianGroup};
use crate::hom::GroupHom;
use crate::space::{wedge, SpaceModel};

/// Per-degree endomorphism of one space's homology through a stated cutoff.
/// Degrees without an entry carry the identity (forced anyway when the group
/// is trivial).
#[derive(Debug, Clone)]
pub struct GradedEndo {
    space: SpaceModel,
    maps: BTreeMap<u32, GroupHom>,
    cutoff: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dichotomy {
    Auto,
    Nilpotent,
    Neither,
}

impl GradedEndo {
    pub fn new(space: SpaceModel, maps: BTreeMap<u32, GroupHom>, cutoff: u32) -> Result<Self> {
        for (d, m) in &maps {
            if *d < 2 || *d > cutoff {
                return Err(Error::InvalidInput(format!(
                    "graded endomorphism entry at degree {d} outside 2..={cutoff}"
                )));
            }
            let h = space.homology_at(*d)?;
            if m.source() != &h || m.target() != &h {
                return Err(Error::InvalidHomomorphism(format!(
                    "degree-{d} entry does not act on {h}"
                )));
            }
        }
        // The cutoff itself must be inside the reliable range.
        space.homology_at(cutoff)?;
        Ok(GradedEndo { space, maps, cutoff })
    }

    pub fn identity(space: SpaceModel, cutoff: u32) -> Result<Self> {
        GradedEndo::new(space, BTreeMap::new(), cutoff)
    }

    pub fn space(&self) -> &SpaceModel {
        &self.space
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn map_at(&self, degree: u32) -> Result<GroupHom> {
        if degree > self.cutoff {
            return Err(Error::InsufficientData(format!(
                "graded endomorphism only defined through degree {}, asked for {degree}",
                self.cutoff
            )));
        }
        match self.maps.get(&degree) {
            Some(m) => Ok(m.clone()),
            None => Ok(GroupHom::identity(&self.space.homology_at(degree)?)),
        }
    }

    /// True iff every degree <= k acts by an isomorphism.
    pub fn is_k_equivalence(&self, k: u32) -> Result<bool> {
        if k > self.cutoff {
            return Err(Error::InsufficientData(format!(
                "cannot test a {k}-equivalence with data through degree {}",
                self.cutoff
            )));
        }
        for d in 2..=k {
            if !self.map_at(d)?.is_isomorphism() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Automorphism in all degrees <= n, nilpotent in all degrees <= n, or
    /// neither. On a trivial group the zero map counts as both.
    pub fn check_graded_dichotomy(&self, n: u32) -> Result<Dichotomy> {
        if n > self.cutoff {
            return Err(Error::InsufficientData(format!(
                "dichotomy check through degree {n} exceeds the cutoff {}",
                self.cutoff
            )));
        }
        let mut all_auto = true;
        let mut all_nilpotent = true;
        for d in 2..=n {
            let m = self.map_at(d)?;
            if !m.is_isomorphism() {
                all_auto = false;
            }
            if !m.is_nilpotent()? {
                all_nilpotent = false;
            }
        }
        Ok(if all_auto {
            Dichotomy::Auto
        } else if all_nilpotent {
            Dichotomy::Nilpotent
        } else {
            Dichotomy::Neither
        })
    }
}

/// The four components of an endomorphism of H_i(X) + H_i(Y), matrix-style:
/// the first output coordinate is xx(x) + xy(y), the second yx(x) + yy(y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub xx: GroupHom,
    pub xy: GroupHom,
    pub yx: GroupHom,
    pub yy: GroupHom,
}

impl Blocks {
    pub fn identity(hx: &FgAbelianGroup, hy: &FgAbelianGroup) -> Blocks {
        Blocks {
            xx: GroupHom::identity(hx),
            xy: GroupHom::zero(hy, hx),
            yx: GroupHom::zero(hx, hy),
            yy: GroupHom::identity(hy),
        }
    }

    fn validate(&self, hx: &FgAbelianGroup, hy: &FgAbelianGroup) -> Result<()> {
        let shapes = [
            (&self.xx, hx, hx),
            (&self.xy, hy, hx),
            (&self.yx, hx, hy),
            (&self.yy, hy, hy),
        ];
        for (m, src, dst) in shapes {
            if m.source() != src || m.target() != dst {
                return Err(Error::InvalidHomomorphism(format!(
                    "block shapes do not match the summand groups {hx} and {hy}"
                )));
            }
        }
        Ok(())
    }

    /// The endomorphism of the canonical direct sum given by this matrix.
    pub fn assemble_on_sum(&self) -> Result<GroupHom> {
        let ds = direct_sum(self.xx.source(), self.yy.source());
        let t1 = ds.inj_left.compose(&self.xx.compose(&ds.proj_left)?)?;
        let t2 = ds.inj_left.compose(&self.xy.compose(&ds.proj_right)?)?;
        let t3 = ds.inj_right.compose(&self.yx.compose(&ds.proj_left)?)?;
        let t4 = ds.inj_right.compose(&self.yy.compose(&ds.proj_right)?)?;
        t1.add(&t2)?.add(&t3)?.add(&t4)
    }
}

/// Blockwise self-map data for X v Y through a cutoff. Degrees without an
/// entry act as the identity.
#[derive(Debug, Clone)]
pub struct BlockEndo {
    x: SpaceModel,
    y: SpaceModel,
    blocks: BTreeMap<u32, Blocks>,
    cutoff: u32,
}

impl BlockEndo {
    pub fn new(
        x: SpaceModel,
        y: SpaceModel,
        blocks: BTreeMap<u32, Blocks>,
        cutoff: u32,
    ) -> Result<Self> {
        for (d, b) in &blocks {
            if *d < 2 || *d > cutoff {
                return Err(Error::InvalidInput(format!(
                    "block entry at degree {d} outside 2..={cutoff}"
                )));
            }
            b.validate(&x.homology_at(*d)?, &y.homology_at(*d)?)?;
        }
        x.homology_at(cutoff)?;
        y.homology_at(cutoff)?;
        Ok(BlockEndo { x, y, blocks, cutoff })
    }

    pub fn identity(x: SpaceModel, y: SpaceModel, cutoff: u32) -> Result<Self> {
        BlockEndo::new(x, y, BTreeMap::new(), cutoff)
    }

    pub fn with_blocks_at(mut self, degree: u32, b: Blocks) -> Result<Self> {
        if degree < 2 || degree > self.cutoff {
            return Err(Error::InvalidInput(format!(
                "block entry at degree {degree} outside 2..={}",
                self.cutoff
            )));
        }
        b.validate(&self.x.homology_at(degree)?, &self.y.homology_at(degree)?)?;
        self.blocks.insert(degree, b);
        Ok(self)
    }

    pub fn x(&self) -> &SpaceModel {
        &self.x
    }

    pub fn y(&self) -> &SpaceModel {
        &self.y
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn blocks_at(&self, degree: u32) -> Result<Blocks> {
        if degree > self.cutoff {
            return Err(Error::InsufficientData(format!(
                "blocks only defined through degree {}, asked for {degree}",
                self.cutoff
            )));
        }
        match self.blocks.get(&degree) {
            Some(b) => Ok(b.clone()),
            None => Ok(Blocks::identity(
                &self.x.homology_at(degree)?,
                &self.y.homology_at(degree)?,
            )),
        }
    }

    /// The induced graded endomorphism of the wedge.
    pub fn assemble(&self) -> Result<GradedEndo> {
        let w = wedge(&self.x, &self.y);
        let mut maps = BTreeMap::new();
        for d in 2..=self.cutoff {
            let total = self.blocks_at(d)?.assemble_on_sum()?;
            maps.insert(d, total);
        }
        GradedEndo::new(w, maps, self.cutoff)
    }

    /// k-reducible: both diagonal blocks are isomorphisms in every degree <= k.
    pub fn is_k_reducible(&self, k: u32) -> Result<bool> {
        if k > self.cutoff {
            return Err(Error::InsufficientData(format!(
                "cannot test {k}-reducibility with blocks through degree {}",
                self.cutoff
            )));
        }
        for d in 2..=k {
            let b = self.blocks_at(d)?;
            if !b.xx.is_isomorphism() || !b.yy.is_isomorphism() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// YY - YX o XX^{-1} o XY at one degree. If the assembled matrix at that
    /// degree is an isomorphism, so is the complement (the inverse's lower
    /// right block is its inverse).
    pub fn schur_complement(&self, degree: u32) -> Result<GroupHom> {
        let b = self.blocks_at(degree)?;
        if !b.xx.is_isomorphism() {
            return Err(Error::PreconditionViolation(format!(
                "Schur complement at degree {degree} needs an invertible XX block"
            )));
        }
        let xx_inv = b.xx.invert()?;
        let correction = b.yx.compose(&xx_inv.compose(&b.xy)?)?;
        b.yy.sub(&correction)
    }
}
