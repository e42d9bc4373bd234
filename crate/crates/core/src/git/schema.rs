//! The JSON input format for presentations.

use serde::{Deserialize, Serialize};

use super::cone::{ConeProvenance, EffectiveCone};
use super::presentation::{GitPresentation, PresentationParts, SignConvention, Weight};
use super::weyl::WeylAction;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gl_blocks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Vec<i64>>>>,
}

/// A presentation, its cone and optional chart data as read from JSON.
///
/// `s_weights` and `twist_s` run parallel to `weights_v` and `twist`; either may be empty,
/// meaning zero `S`-weights. Each entry of `fixed_points` lists, for every torus coordinate,
/// the index of a weight of `V` that is nonzero at the fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GitInput {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank_t: usize,
    pub weights_v: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s_weights: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub weyl: WeylInput,
    pub theta: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twist: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twist_s: Vec<Vec<i64>>,
    pub cone: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_basis: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chern_blocks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_blocks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_points: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticanonical: Option<Vec<i64>>,
}

fn paired_weights(label: &str, t: &[Vec<i64>], s: &[Vec<i64>]) -> Result<(usize, Vec<Weight>)> {
    if s.is_empty() {
        return Ok((
            0,
            t.iter().map(|w| Weight::new(w.clone(), vec![])).collect(),
        ));
    }
    if s.len() != t.len() {
        return Err(Error::MalformedPresentation(format!(
            "{label} has {} S-weights for {} weights",
            s.len(),
            t.len()
        )));
    }
    let s_rank = s[0].len();
    Ok((
        s_rank,
        t.iter()
            .zip(s)
            .map(|(a, b)| Weight::new(a.clone(), b.clone()))
            .collect(),
    ))
}

impl GitInput {
    /// Parses JSON text, reporting the line, column and field path of the first problem.
    pub fn parse(text: &str) -> Result<GitInput> {
        let mut de = serde_json::Deserializer::from_str(text);
        let input: GitInput = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            Error::Parse(format!(
                "line {} column {} at `{}`: {}",
                inner.line(),
                inner.column(),
                path,
                inner
            ))
        })?;
        if input.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {}, expected {SCHEMA_VERSION}",
                input.schema_version
            )));
        }
        Ok(input)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn presentation(&self, convention: SignConvention) -> Result<GitPresentation> {
        let (s_rank, weights) = paired_weights("s_weights", &self.weights_v, &self.s_weights)?;
        let twist_s = if self.twist_s.is_empty() && s_rank > 0 {
            vec![vec![0; s_rank]; self.twist.len()]
        } else {
            self.twist_s.clone()
        };
        let (twist_rank, twist) = paired_weights("twist_s", &self.twist, &twist_s)?;
        if !self.twist.is_empty() && twist_rank != s_rank {
            return Err(Error::MalformedPresentation(
                "twist_s and s_weights have different lengths".into(),
            ));
        }
        let weyl = match (&self.weyl.gl_blocks, &self.weyl.generators) {
            (Some(b), None) => {
                if b.iter().sum::<usize>() != self.rank_t {
                    return Err(Error::MalformedPresentation(
                        "weyl.gl_blocks do not sum to rank_t".into(),
                    ));
                }
                WeylAction::gl_blocks(b)
            }
            (None, Some(g)) => WeylAction::from_generators(self.rank_t, g.clone())?,
            (None, None) => WeylAction::trivial(self.rank_t),
            (Some(_), Some(_)) => {
                return Err(Error::MalformedPresentation(
                    "weyl takes either gl_blocks or generators, not both".into(),
                ))
            }
        };
        GitPresentation::new(PresentationParts {
            rank: self.rank_t,
            s_rank,
            weights,
            roots: self.roots.clone(),
            weyl,
            theta: self.theta.clone(),
            twist,
            chern_blocks: self.chern_blocks.clone(),
            s_blocks: self.s_blocks.clone(),
            class_basis: self.class_basis.clone(),
            convention,
        })
    }

    pub fn cone(&self) -> Result<EffectiveCone> {
        EffectiveCone::new(self.rank_t, self.cone.clone(), ConeProvenance::UserSupplied)
    }

    /// The input form of a presentation and cone.
    pub fn from_presentation(p: &GitPresentation, cone: &EffectiveCone) -> GitInput {
        let has_s = p.s_rank() > 0;
        GitInput {
            schema_version: SCHEMA_VERSION,
            name: None,
            rank_t: p.rank(),
            weights_v: p.weights().iter().map(|w| w.t.clone()).collect(),
            s_weights: if has_s {
                p.weights().iter().map(|w| w.s.clone()).collect()
            } else {
                vec![]
            },
            roots: p.roots().to_vec(),
            weyl: match p.weyl().gl_block_sizes() {
                Some(b) => WeylInput {
                    gl_blocks: Some(b.to_vec()),
                    generators: None,
                },
                None => WeylInput {
                    gl_blocks: None,
                    generators: Some(p.weyl().generators().to_vec()),
                },
            },
            theta: p.theta().to_vec(),
            twist: p.twist().iter().map(|w| w.t.clone()).collect(),
            twist_s: if has_s {
                p.twist().iter().map(|w| w.s.clone()).collect()
            } else {
                vec![]
            },
            cone: cone.inequalities().to_vec(),
            class_basis: Some(p.class_basis().to_vec()),
            chern_blocks: Some(p.chern_blocks().to_vec()),
            s_blocks: if has_s {
                Some(p.s_blocks().to_vec())
            } else {
                None
            },
            fixed_points: None,
            anticanonical: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: &str = r#"{
        "schema_version": 1,
        "rank_t": 1,
        "weights_v": [[1], [1], [1]],
        "s_weights": [[1,0,0], [0,1,0], [0,0,1]],
        "roots": [],
        "weyl": {"gl_blocks": [1]},
        "theta": [1],
        "cone": [[1]]
    }"#;

    #[test]
    fn parses_projective_plane() {
        let input = GitInput::parse(P2).unwrap();
        let p = input.presentation(SignConvention::Standard).unwrap();
        assert_eq!(p.det_rho(), &[3]);
        assert_eq!(p.s_rank(), 3);
        let again =
            GitInput::parse(&GitInput::from_presentation(&p, &input.cone().unwrap()).to_json())
                .unwrap();
        assert_eq!(again.weights_v, input.weights_v);
    }

    #[test]
    fn reports_field_and_position() {
        let bad = P2.replace("\"theta\": [1]", "\"theta\": [\"one\"]");
        let Err(Error::Parse(msg)) = GitInput::parse(&bad) else {
            panic!("expected a parse error")
        };
        assert!(msg.contains("theta"), "{msg}");
        assert!(msg.contains("line 8"), "{msg}");
        assert!(GitInput::parse(&P2.replace("\"schema_version\": 1,", "")).is_err());
        assert!(GitInput::parse(&P2.replace("\"roots\"", "\"extra\": 1, \"roots\"")).is_err());
    }
}
