//! Degree lifts `β̃ ∈ Hom(χ(T), ℤ)` and their Weyl orbits.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cone::{enumerate_fiber, EffectiveCone};
use super::linalg::dot;
use super::presentation::GitPresentation;
use super::weyl::WeylAction;
use crate::error::Result;

/// A lift written in the dual basis, so `β̃(ξ) = dot(β̃, ξ)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeLift(pub Vec<i64>);

impl DegreeLift {
    pub fn zero(rank: usize) -> Self {
        DegreeLift(vec![0; rank])
    }

    pub fn pair(&self, xi: &[i64]) -> i64 {
        dot(&self.0, xi)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for DegreeLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for DegreeLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Weyl orbit of lifts with its stabilizer order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    pub representative: DegreeLift,
    pub orbit: Vec<DegreeLift>,
    pub stabilizer: usize,
}

/// The full orbit of `lift` (sorted) and the number of group elements fixing it.
pub fn orbit_of(lift: &DegreeLift, weyl: &WeylAction) -> Result<DegreeClass> {
    let mut orbit = BTreeSet::new();
    let mut stabilizer = 0;
    for w in weyl.elements()? {
        let image = DegreeLift(WeylAction::act_on_lift(w, &lift.0));
        if image == *lift {
            stabilizer += 1;
        }
        orbit.insert(image);
    }
    Ok(DegreeClass {
        representative: lift.clone(),
        orbit: orbit.into_iter().collect(),
        stabilizer,
    })
}

/// Every lift in `cone` mapping to `class`, in lexicographic order.
pub fn enumerate_lifts(
    p: &GitPresentation,
    cone: &EffectiveCone,
    class: &[i64],
) -> Result<Vec<DegreeLift>> {
    Ok(enumerate_fiber(cone, p.class_basis(), class)?
        .into_iter()
        .map(DegreeLift)
        .collect())
}
