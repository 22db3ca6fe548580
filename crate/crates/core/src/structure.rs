//! Point/block incidence structures: generalized polygons, designs and their
//! deletions all share this representation.

use crate::error::{Error, Result};
use crate::geometry::ProjectiveSpace;

/// Projective coordinates attached to the points of a structure.
#[derive(Clone, Debug)]
pub struct Coordinates {
    pub space: ProjectiveSpace,
    /// Normalized coordinate vector of each structure point.
    pub points: Vec<Vec<u32>>,
    /// Id of each structure point in the ambient space.
    pub ambient_ids: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureMeta {
    pub family: String,
    pub q: Option<u32>,
    /// Nominal order (s, t): s+1 points per block, t+1 blocks per point.
    pub order: Option<(u32, u32)>,
}

#[derive(Clone, Debug)]
pub struct IncidenceStructure {
    num_points: usize,
    blocks: Vec<Vec<u32>>,
    point_blocks: Vec<Vec<u32>>,
    coords: Option<Coordinates>,
    pub meta: StructureMeta,
}

impl IncidenceStructure {
    /// Validates and indexes a block list. Blocks are sorted on input.
    pub fn new(num_points: usize, blocks: Vec<Vec<u32>>, meta: StructureMeta) -> Result<Self> {
        let mut blocks = blocks;
        let mut point_blocks = vec![Vec::new(); num_points];
        for (b, block) in blocks.iter_mut().enumerate() {
            block.sort_unstable();
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("block {b} repeats a point")));
            }
            for &p in block.iter() {
                if p as usize >= num_points {
                    return Err(Error::domain(format!("block {b} references point {p} of {num_points}")));
                }
                point_blocks[p as usize].push(b as u32);
            }
        }
        Ok(IncidenceStructure { num_points, blocks, point_blocks, coords: None, meta })
    }

    /// Builds a structure on a subset of projective points. `blocks` use
    /// ambient ids; points are renumbered `0..points.len()` in the given order.
    pub fn from_projective(
        space: &ProjectiveSpace,
        ambient_ids: &[u32],
        blocks: &[Vec<u32>],
        meta: StructureMeta,
    ) -> Result<Self> {
        let mut local = vec![u32::MAX; space.num_points()];
        for (i, &id) in ambient_ids.iter().enumerate() {
            local[id as usize] = i as u32;
        }
        let mapped = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&id| match local.get(id as usize) {
                        Some(&l) if l != u32::MAX => Ok(l),
                        _ => Err(Error::domain(format!("block point {id} is not a structure point"))),
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut s = Self::new(ambient_ids.len(), mapped, meta)?;
        s.coords = Some(Coordinates {
            space: space.clone(),
            points: ambient_ids.iter().map(|&id| space.point(id).coords).collect(),
            ambient_ids: ambient_ids.to_vec(),
        });
        Ok(s)
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block(&self, b: u32) -> &[u32] {
        &self.blocks[b as usize]
    }

    pub fn blocks_through(&self, p: u32) -> &[u32] {
        &self.point_blocks[p as usize]
    }

    pub fn coordinates(&self) -> Option<&Coordinates> {
        self.coords.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.num_points == 0 || self.blocks.is_empty()
    }

    pub fn num_flags(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Order (s, t) when every block has s+1 points and every point is on t+1 blocks.
    pub fn measured_order(&self) -> Option<(u32, u32)> {
        let k = self.blocks.first()?.len();
        let r = self.point_blocks.first()?.len();
        if k == 0 || r == 0 {
            return None;
        }
        let uniform = self.blocks.iter().all(|b| b.len() == k) && self.point_blocks.iter().all(|p| p.len() == r);
        uniform.then(|| (k as u32 - 1, r as u32 - 1))
    }

    /// Two distinct points are collinear when some block holds both.
    pub fn collinear(&self, a: u32, b: u32) -> bool {
        a != b && self.point_blocks[a as usize].iter().any(|&l| self.blocks[l as usize].binary_search(&b).is_ok())
    }

    /// Exchanges the roles of points and blocks.
    pub fn dual(&self) -> Self {
        let meta = StructureMeta {
            family: format!("dual {}", self.meta.family),
            q: self.meta.q,
            order: self.meta.order.map(|(s, t)| (t, s)),
        };
        Self::new(self.blocks.len(), self.point_blocks.clone(), meta).expect("reverse index is valid")
    }

    /// Keeps the listed points and blocks. Blocks are restricted to kept
    /// points; coordinates follow the kept points.
    pub(crate) fn restrict(&self, keep_points: &[bool], keep_blocks: &[bool], meta: StructureMeta) -> Result<Self> {
        let mut new_id = vec![u32::MAX; self.num_points];
        let mut n = 0u32;
        for p in 0..self.num_points {
            if keep_points[p] {
                new_id[p] = n;
                n += 1;
            }
        }
        let blocks: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .zip(keep_blocks)
            .filter(|(_, &k)| k)
            .map(|(b, _)| b.iter().filter(|&&p| keep_points[p as usize]).map(|&p| new_id[p as usize]).collect())
            .collect();
        let mut s = Self::new(n as usize, blocks, meta)?;
        s.coords = self.coords.as_ref().map(|c| Coordinates {
            space: c.space.clone(),
            points: (0..self.num_points).filter(|&p| keep_points[p]).map(|p| c.points[p].clone()).collect(),
            ambient_ids: (0..self.num_points).filter(|&p| keep_points[p]).map(|p| c.ambient_ids[p]).collect(),
        });
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_blocks() {
        assert!(IncidenceStructure::new(3, vec![vec![0, 3]], StructureMeta::default()).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![1, 1]], StructureMeta::default()).is_err());
    }

    #[test]
    fn reverse_index_and_order() {
        let s = IncidenceStructure::new(3, vec![vec![1, 0], vec![1, 2], vec![2, 0]], StructureMeta::default()).unwrap();
        assert_eq!(s.block(0), &[0, 1]);
        assert_eq!(s.blocks_through(0), &[0, 2]);
        assert_eq!(s.measured_order(), Some((1, 1)));
        assert!(s.collinear(0, 2));
        assert_eq!(s.num_flags(), 6);
    }
}
