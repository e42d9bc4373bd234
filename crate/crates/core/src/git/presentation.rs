//! The combinatorial GIT datum: torus weights, roots, Weyl action, θ, auxiliary torus
//! weights and twist weights.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::linalg::{dot, mat_vec, nullspace, primitive};
use super::weyl::WeylAction;
use crate::algebra::{LinearForm, Rational, Symbol};
use crate::error::{Error, Result};

/// A `T`-weight together with the `S`-weight of the same basis vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub t: Vec<i64>,
    pub s: Vec<i64>,
}

impl Weight {
    pub fn new(t: Vec<i64>, s: Vec<i64>) -> Self {
        Weight { t, s }
    }
}

/// Orientation of the equivariant parameters in lifted weight classes.
///
/// `Standard` gives the weight `(ξ, σ)` the class `Σ ξᵢ xᵢ + Σ σₐ λₐ`; `Flipped` uses `−λ`.
/// Charts derived from a presentation always follow the presentation's convention.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    #[default]
    Standard,
    Flipped,
}

impl SignConvention {
    pub fn sign(self) -> i64 {
        match self {
            SignConvention::Standard => 1,
            SignConvention::Flipped => -1,
        }
    }
}

/// Raw ingredients of a presentation before validation.
#[derive(Clone, Debug)]
pub struct PresentationParts {
    pub rank: usize,
    pub s_rank: usize,
    pub weights: Vec<Weight>,
    pub roots: Vec<Vec<i64>>,
    pub weyl: WeylAction,
    pub theta: Vec<i64>,
    pub twist: Vec<Weight>,
    /// Block sizes naming the Chern roots; defaults to a single block.
    pub chern_blocks: Option<Vec<usize>>,
    /// Block sizes naming the equivariant parameters; defaults to a single block.
    pub s_blocks: Option<Vec<usize>>,
    /// Basis of `W`-invariant characters keying degree classes; computed when absent.
    pub class_basis: Option<Vec<Vec<i64>>>,
    pub convention: SignConvention,
}

/// A validated GIT presentation.
///
/// `G` itself is never represented; only its roots, Weyl action and characters are.
#[derive(Clone, Debug)]
pub struct GitPresentation {
    rank: usize,
    s_rank: usize,
    weights: Vec<Weight>,
    roots: Vec<Vec<i64>>,
    weyl: WeylAction,
    theta: Vec<i64>,
    twist: Vec<Weight>,
    det_rho: Vec<i64>,
    det_sigma: Vec<i64>,
    chern_blocks: Vec<usize>,
    s_blocks: Vec<usize>,
    chern_symbols: Vec<Symbol>,
    s_symbols: Vec<Symbol>,
    class_basis: Vec<Vec<i64>>,
    convention: SignConvention,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedPresentation(msg.into())
}

fn block_symbols(blocks: &[usize], make: fn(u32, u32) -> Symbol) -> Vec<Symbol> {
    blocks
        .iter()
        .enumerate()
        .flat_map(|(g, &size)| (0..size).map(move |p| make(g as u32, p as u32)))
        .collect()
}

fn sum_vectors<'a>(len: usize, vs: impl Iterator<Item = &'a Vec<i64>>) -> Vec<i64> {
    let mut out = vec![0; len];
    for v in vs {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x;
        }
    }
    out
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut s = v.to_vec();
    s.sort();
    s
}

impl GitPresentation {
    pub fn new(parts: PresentationParts) -> Result<Self> {
        let PresentationParts {
            rank,
            s_rank,
            weights,
            roots,
            weyl,
            theta,
            twist,
            chern_blocks,
            s_blocks,
            class_basis,
            convention,
        } = parts;
        if rank == 0 {
            return Err(malformed("rank_t must be positive"));
        }
        if weights.is_empty() {
            return Err(malformed("weights_v is empty"));
        }
        for (label, list) in [("weights_v", &weights), ("twist", &twist)] {
            for (j, w) in list.iter().enumerate() {
                if w.t.len() != rank {
                    return Err(malformed(format!(
                        "{label}[{j}] has length {}, expected {rank}",
                        w.t.len()
                    )));
                }
                if w.s.len() != s_rank {
                    return Err(malformed(format!(
                        "S-weight of {label}[{j}] has length {}, expected {s_rank}",
                        w.s.len()
                    )));
                }
            }
        }
        for (i, a) in roots.iter().enumerate() {
            if a.len() != rank {
                return Err(malformed(format!(
                    "roots[{i}] has length {}, expected {rank}",
                    a.len()
                )));
            }
            if a.iter().all(|&x| x == 0) {
                return Err(malformed(format!("roots[{i}] is zero")));
            }
        }
        let negated: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| a.iter().map(|x| -x).collect())
            .collect();
        if sorted(&negated) != sorted(&roots) {
            return Err(malformed("roots are not closed under negation"));
        }
        if sum_vectors(rank, roots.iter()).iter().any(|&x| x != 0) {
            return Err(malformed("roots do not sum to zero"));
        }
        if theta.len() != rank {
            return Err(malformed(format!(
                "theta has length {}, expected {rank}",
                theta.len()
            )));
        }
        if weyl.rank() != rank {
            return Err(malformed(format!(
                "Weyl action has rank {}, expected {rank}",
                weyl.rank()
            )));
        }
        for (g, w) in weyl.generators().iter().enumerate() {
            let act_w = |list: &[Weight]| -> Vec<Weight> {
                list.iter()
                    .map(|x| Weight::new(mat_vec(w, &x.t), x.s.clone()))
                    .collect()
            };
            if sorted(&act_w(&weights)) != sorted(&weights) {
                return Err(malformed(format!(
                    "Weyl generator {g} does not permute the weights of V"
                )));
            }
            if sorted(&act_w(&twist)) != sorted(&twist) {
                return Err(malformed(format!(
                    "Weyl generator {g} does not permute the twist weights"
                )));
            }
            let moved: Vec<Vec<i64>> = roots.iter().map(|a| mat_vec(w, a)).collect();
            if sorted(&moved) != sorted(&roots) {
                return Err(malformed(format!(
                    "Weyl generator {g} does not permute the roots"
                )));
            }
        }

        let chern_blocks = chern_blocks
            .or_else(|| weyl.gl_block_sizes().map(<[usize]>::to_vec))
            .unwrap_or_else(|| vec![rank]);
        if chern_blocks.iter().sum::<usize>() != rank {
            return Err(malformed("chern_blocks do not sum to rank_t"));
        }
        let s_blocks = s_blocks.unwrap_or_else(|| if s_rank == 0 { vec![] } else { vec![s_rank] });
        if s_blocks.iter().sum::<usize>() != s_rank {
            return Err(malformed("s_blocks do not sum to the S rank"));
        }

        let invariant_basis = match class_basis {
            Some(b) => {
                for (i, v) in b.iter().enumerate() {
                    if v.len() != rank {
                        return Err(malformed(format!(
                            "class_basis[{i}] has length {}, expected {rank}",
                            v.len()
                        )));
                    }
                    if weyl.generators().iter().any(|w| mat_vec(w, v) != *v) {
                        return Err(malformed(format!("class_basis[{i}] is not Weyl invariant")));
                    }
                }
                b
            }
            None => invariant_characters(&weyl, rank),
        };

        let det_rho = sum_vectors(rank, weights.iter().map(|w| &w.t));
        let det_sigma = sum_vectors(rank, twist.iter().map(|w| &w.t));
        Ok(GitPresentation {
            rank,
            s_rank,
            chern_symbols: block_symbols(&chern_blocks, Symbol::chern),
            s_symbols: block_symbols(&s_blocks, Symbol::lambda),
            weights,
            roots,
            weyl,
            theta,
            twist,
            det_rho,
            det_sigma,
            chern_blocks,
            s_blocks,
            class_basis: invariant_basis,
            convention,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn s_rank(&self) -> usize {
        self.s_rank
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn weyl(&self) -> &WeylAction {
        &self.weyl
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    pub fn twist(&self) -> &[Weight] {
        &self.twist
    }

    /// `Σⱼ ξⱼ`, the character `det ∘ ρ`.
    pub fn det_rho(&self) -> &[i64] {
        &self.det_rho
    }

    /// `Σ_ε ε`, the character `det ∘ σ` of the twist.
    pub fn det_sigma(&self) -> &[i64] {
        &self.det_sigma
    }

    pub fn chern_blocks(&self) -> &[usize] {
        &self.chern_blocks
    }

    pub fn s_blocks(&self) -> &[usize] {
        &self.s_blocks
    }

    /// Chern-root symbol of each torus coordinate.
    pub fn chern_symbols(&self) -> &[Symbol] {
        &self.chern_symbols
    }

    /// Equivariant parameter of each `S` coordinate.
    pub fn s_symbols(&self) -> &[Symbol] {
        &self.s_symbols
    }

    pub fn class_basis(&self) -> &[Vec<i64>] {
        &self.class_basis
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// `dim V − dim G`, the dimension of the quotient.
    pub fn quotient_dimension(&self) -> i64 {
        self.weights.len() as i64 - self.rank as i64 - self.roots.len() as i64
    }

    /// A copy with the other sign convention, or the given one.
    pub fn with_convention(&self, convention: SignConvention) -> Self {
        GitPresentation {
            convention,
            ..self.clone()
        }
    }

    /// A copy with the twist replaced. The new twist is checked against the Weyl action.
    pub fn with_twist(&self, twist: Vec<Weight>) -> Result<Self> {
        GitPresentation::new(PresentationParts {
            twist,
            ..self.parts()
        })
    }

    pub fn parts(&self) -> PresentationParts {
        PresentationParts {
            rank: self.rank,
            s_rank: self.s_rank,
            weights: self.weights.clone(),
            roots: self.roots.clone(),
            weyl: self.weyl.clone(),
            theta: self.theta.clone(),
            twist: self.twist.clone(),
            chern_blocks: Some(self.chern_blocks.clone()),
            s_blocks: Some(self.s_blocks.clone()),
            class_basis: Some(self.class_basis.clone()),
            convention: self.convention,
        }
    }

    /// The degree class `τ(β̃)`: pairings of the lift with the class basis.
    pub fn class_of(&self, lift: &[i64]) -> Vec<i64> {
        self.class_basis.iter().map(|b| dot(b, lift)).collect()
    }

    /// The first Chern class `Σ ξᵢ xᵢ` of the line bundle of a character.
    pub fn lift_character(&self, xi: &[i64]) -> LinearForm {
        LinearForm::from_terms(
            self.chern_symbols
                .iter()
                .zip(xi)
                .map(|(s, &c)| (*s, Rational::from_int(c))),
            0,
        )
    }

    /// The equivariant class of a weight: its character lift plus `±Σ σₐ λₐ`.
    pub fn lift_weight(&self, w: &Weight, equivariant: bool) -> LinearForm {
        let base = self.lift_character(&w.t);
        if !equivariant {
            return base;
        }
        let sign = self.convention.sign();
        let lam = LinearForm::from_terms(
            self.s_symbols
                .iter()
                .zip(&w.s)
                .map(|(s, &c)| (*s, Rational::from_int(sign * c))),
            0,
        );
        base.add(&lam)
    }

    /// Chern-root coordinates indexed by symbol.
    pub fn chern_index(&self) -> BTreeMap<Symbol, usize> {
        self.chern_symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i))
            .collect()
    }
}

/// Primitive integer basis of the characters fixed by every generator.
fn invariant_characters(weyl: &WeylAction, rank: usize) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    for w in weyl.generators() {
        for (i, row) in w.iter().enumerate() {
            rows.push(
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| Rational::from_int(x - i64::from(i == j)))
                    .collect(),
            );
        }
    }
    nullspace(&rows, rank)
        .iter()
        .map(|v| primitive(v))
        .collect()
}
