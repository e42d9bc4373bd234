//! Weyl group actions on the character lattice `ℤ^r` of the maximal torus.

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use super::linalg::{identity, int_inverse, mat_mul, mat_vec, transpose, IMat};
use crate::error::{Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 50_000;

/// A finite group of integer matrices acting on characters `ξ ↦ w·ξ`, given by generators.
///
/// Lifts (elements of the dual lattice) transform contragrediently, `β̃ ↦ w⁻ᵀ·β̃`, so that
/// `⟨w·β̃, ξ⟩ = ⟨β̃, w⁻¹·ξ⟩`.
#[derive(Clone, Debug)]
pub struct WeylAction {
    rank: usize,
    generators: Vec<IMat>,
    cap: usize,
    gl_blocks: Option<Vec<usize>>,
    closure: OnceLock<std::result::Result<Vec<IMat>, usize>>,
}

impl WeylAction {
    pub fn from_generators(rank: usize, generators: Vec<IMat>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != rank || g.iter().any(|row| row.len() != rank) {
                return Err(Error::MalformedPresentation(format!(
                    "Weyl generator {i} is not {rank}x{rank}"
                )));
            }
            if int_inverse(g).is_none() {
                return Err(Error::MalformedPresentation(format!(
                    "Weyl generator {i} is not invertible over the integers"
                )));
            }
        }
        Ok(WeylAction {
            rank,
            generators,
            cap: DEFAULT_CLOSURE_CAP,
            gl_blocks: None,
            closure: OnceLock::new(),
        })
    }

    /// Product of symmetric groups permuting consecutive coordinate blocks, as for
    /// `GL_{k₁} × GL_{k₂} × …`.
    pub fn gl_blocks(blocks: &[usize]) -> Self {
        let rank = blocks.iter().sum();
        let mut generators = Vec::new();
        let mut offset = 0;
        for &b in blocks {
            for i in 0..b.saturating_sub(1) {
                let mut m = identity(rank);
                m.swap(offset + i, offset + i + 1);
                generators.push(m);
            }
            offset += b;
        }
        WeylAction {
            rank,
            generators,
            cap: DEFAULT_CLOSURE_CAP,
            gl_blocks: Some(blocks.to_vec()),
            closure: OnceLock::new(),
        }
    }

    pub fn trivial(rank: usize) -> Self {
        Self::gl_blocks(&vec![1; rank])
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.closure = OnceLock::new();
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[IMat] {
        &self.generators
    }

    pub fn gl_block_sizes(&self) -> Option<&[usize]> {
        self.gl_blocks.as_deref()
    }

    /// All group elements, identity first, generated breadth-first.
    pub fn elements(&self) -> Result<&[IMat]> {
        self.closure
            .get_or_init(|| {
                let id = identity(self.rank);
                let mut seen: BTreeSet<IMat> = BTreeSet::from([id.clone()]);
                let mut order = vec![id.clone()];
                let mut queue = VecDeque::from([id]);
                while let Some(w) = queue.pop_front() {
                    for g in &self.generators {
                        let next = mat_mul(g, &w);
                        if seen.insert(next.clone()) {
                            if seen.len() > self.cap {
                                return Err(self.cap);
                            }
                            order.push(next.clone());
                            queue.push_back(next);
                        }
                    }
                }
                Ok(order)
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(|&cap| Error::OrbitCapExceeded(cap))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn act_on_character(w: &IMat, xi: &[i64]) -> Vec<i64> {
        mat_vec(w, xi)
    }

    pub fn act_on_lift(w: &IMat, lift: &[i64]) -> Vec<i64> {
        let inv = int_inverse(w).expect("Weyl elements are unimodular");
        mat_vec(&transpose(&inv), lift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_closure_sizes() {
        assert_eq!(WeylAction::gl_blocks(&[2]).order().unwrap(), 2);
        assert_eq!(WeylAction::gl_blocks(&[3, 2]).order().unwrap(), 12);
        assert_eq!(WeylAction::trivial(3).order().unwrap(), 1);
        assert_eq!(
            WeylAction::gl_blocks(&[5]).with_cap(10).order(),
            Err(Error::OrbitCapExceeded(10))
        );
    }

    #[test]
    fn rejects_singular_generators() {
        assert!(WeylAction::from_generators(2, vec![vec![vec![1, 1], vec![1, 1]]]).is_err());
        assert!(WeylAction::from_generators(2, vec![vec![vec![1]]]).is_err());
    }
}
