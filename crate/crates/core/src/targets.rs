//! Built-in targets: projective spaces and their products, Grassmannians, and Grassmann
//! bundles `Gr_{Gr(k,n)}(ℓ, U^{⊕m})`.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::git::{
    fano_index, ConeProvenance, DegreeLift, EffectiveCone, GitInput, GitPresentation,
    PresentationParts, SignConvention, Weight, WeylAction,
};
use crate::localization::FixedPointChart;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `ℙⁿ`.
    ProjectiveSpace(usize),
    /// `ℙ^{n₁} × ℙ^{n₂} × …`.
    ProductOfProjective(Vec<usize>),
    Grassmannian {
        k: usize,
        n: usize,
    },
    GrassmannBundle {
        k: usize,
        n: usize,
        l: usize,
        m: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistSpec {
    Anticanonical,
    Explicit(Vec<Weight>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub family: Family,
    pub twist: Option<TwistSpec>,
}

impl TargetSpec {
    pub fn new(family: Family) -> Self {
        TargetSpec {
            family,
            twist: None,
        }
    }

    pub fn twisted(family: Family) -> Self {
        TargetSpec {
            family,
            twist: Some(TwistSpec::Anticanonical),
        }
    }
}

fn parse_list(s: &str, name: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim().parse::<usize>().map_err(|_| {
                Error::InvalidFamilyParams(format!("cannot read `{s}` in target `{name}`"))
            })
        })
        .collect()
}

impl FromStr for Family {
    type Err = Error;

    /// Names: `p{n}`, `pp:a,b,…`, `gr:k,n`, `gb:k,n,l,m`.
    fn from_str(name: &str) -> Result<Family> {
        let bad = || Error::InvalidFamilyParams(format!("unknown target `{name}`"));
        if let Some(rest) = name.strip_prefix("gr:") {
            let v = parse_list(rest, name)?;
            let [k, n] = v[..] else { return Err(bad()) };
            return Ok(Family::Grassmannian { k, n });
        }
        if let Some(rest) = name.strip_prefix("gb:") {
            let v = parse_list(rest, name)?;
            let [k, n, l, m] = v[..] else {
                return Err(bad());
            };
            return Ok(Family::GrassmannBundle { k, n, l, m });
        }
        if let Some(rest) = name.strip_prefix("pp:") {
            return Ok(Family::ProductOfProjective(parse_list(rest, name)?));
        }
        if let Some(rest) = name.strip_prefix('p') {
            return rest.parse().map(Family::ProjectiveSpace).map_err(|_| bad());
        }
        Err(bad())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ProjectiveSpace(n) => write!(f, "p{n}"),
            Family::ProductOfProjective(ns) => {
                let parts: Vec<String> = ns.iter().map(usize::to_string).collect();
                write!(f, "pp:{}", parts.join(","))
            }
            Family::Grassmannian { k, n } => write!(f, "gr:{k},{n}"),
            Family::GrassmannBundle { k, n, l, m } => write!(f, "gb:{k},{n},{l},{m}"),
        }
    }
}

/// A presentation with its cone, fixed-point charts and anticanonical character.
#[derive(Clone, Debug)]
pub struct BuiltTarget {
    pub spec: TargetSpec,
    pub presentation: GitPresentation,
    pub cone: EffectiveCone,
    pub charts: Vec<FixedPointChart>,
    /// For each chart, the weights of `V` that do not vanish there.
    pub fixed_points: Vec<Vec<usize>>,
    pub anticanonical: Vec<i64>,
    /// `None` when the anticanonical class is not positive on the cone.
    pub fano_index: Option<i64>,
}

fn unit(len: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn set_label(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Roots `eᵢ − eⱼ` of `GL` blocks placed at the given offsets.
fn gl_roots(rank: usize, blocks: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for &(offset, size) in blocks {
        for i in 0..size {
            for j in 0..size {
                if i != j {
                    let mut r = vec![0; rank];
                    r[offset + i] = 1;
                    r[offset + j] = -1;
                    roots.push(r);
                }
            }
        }
    }
    roots
}

struct Skeleton {
    parts: PresentationParts,
    fixed_points: Vec<(String, Vec<usize>)>,
}

fn projective_product(ns: &[usize]) -> Result<Skeleton> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::InvalidFamilyParams(
            "projective factors need positive dimension".into(),
        ));
    }
    let rank = ns.len();
    let s_rank: usize = ns.iter().map(|n| n + 1).sum();
    let mut weights = Vec::new();
    let mut offset = 0;
    for (f, &n) in ns.iter().enumerate() {
        for a in 0..=n {
            weights.push(Weight::new(unit(rank, f), unit(s_rank, offset + a)));
        }
        offset += n + 1;
    }
    let mut fixed_points = vec![(String::new(), Vec::new())];
    let mut offset = 0;
    for &n in ns {
        fixed_points = fixed_points
            .into_iter()
            .flat_map(|(label, idx)| {
                (0..=n).map(move |a| {
                    let mut idx = idx.clone();
                    idx.push(offset + a);
                    let sep = if label.is_empty() { "" } else { ";" };
                    (format!("{label}{sep}{{{}}}", a + 1), idx)
                })
            })
            .collect();
        offset += n + 1;
    }
    Ok(Skeleton {
        parts: PresentationParts {
            rank,
            s_rank,
            weights,
            roots: vec![],
            weyl: WeylAction::trivial(rank),
            theta: vec![1; rank],
            twist: vec![],
            chern_blocks: Some(vec![1; rank]),
            s_blocks: Some(ns.iter().map(|n| n + 1).collect()),
            class_basis: Some((0..rank).map(|i| unit(rank, i)).collect()),
            convention: SignConvention::Standard,
        },
        fixed_points: fixed_points
            .into_iter()
            .map(|(l, i)| (format!("I={l}"), i))
            .collect(),
    })
}

fn grassmannian(k: usize, n: usize) -> Result<Skeleton> {
    if k == 0 || k >= n {
        return Err(Error::InvalidFamilyParams(format!(
            "Gr({k},{n}) needs 0 < k < n"
        )));
    }
    let mut weights = Vec::new();
    for i in 0..k {
        for a in 0..n {
            weights.push(Weight::new(unit(k, i), unit(n, a)));
        }
    }
    let fixed_points = subsets(n, k)
        .into_iter()
        .map(|set| {
            let idx = set.iter().enumerate().map(|(i, &a)| i * n + a).collect();
            (format!("I={}", set_label(&set)), idx)
        })
        .collect();
    Ok(Skeleton {
        parts: PresentationParts {
            rank: k,
            s_rank: n,
            weights,
            roots: gl_roots(k, &[(0, k)]),
            weyl: WeylAction::gl_blocks(&[k]),
            theta: vec![1; k],
            twist: vec![],
            chern_blocks: Some(vec![k]),
            s_blocks: Some(vec![n]),
            class_basis: Some(vec![vec![1; k]]),
            convention: SignConvention::Standard,
        },
        fixed_points,
    })
}

/// Index of the weight of `V = M_{k×n} × M_{ℓ×km}` for the entry `(j, c)` of the second
/// matrix.
pub fn grassmann_bundle_w_index(k: usize, n: usize, m: usize, j: usize, c: usize) -> usize {
    k * n + j * k * m + c
}

fn grassmann_bundle(k: usize, n: usize, l: usize, m: usize) -> Result<Skeleton> {
    if k == 0 || l == 0 || m == 0 || k >= n || l >= k * m {
        return Err(Error::InvalidFamilyParams(format!(
            "Grassmann bundle ({k},{n},{l},{m}) needs k < n and l < km"
        )));
    }
    let rank = k + l;
    let s_rank = n + m;
    let mut weights = Vec::new();
    for i in 0..k {
        for a in 0..n {
            weights.push(Weight::new(unit(rank, i), unit(s_rank, a)));
        }
    }
    for j in 0..l {
        for c in 0..k * m {
            let mut t = unit(rank, k + j);
            t[c % k] -= 1;
            weights.push(Weight::new(t, unit(s_rank, n + c / k)));
        }
    }
    let mut fixed_points = Vec::new();
    for set_i in subsets(n, k) {
        for set_j in subsets(k * m, l) {
            let mut idx: Vec<usize> = set_i.iter().enumerate().map(|(i, &a)| i * n + a).collect();
            idx.extend(
                set_j
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| grassmann_bundle_w_index(k, n, m, j, c)),
            );
            fixed_points.push((
                format!("I={};J={}", set_label(&set_i), set_label(&set_j)),
                idx,
            ));
        }
    }
    let mut basis_d = vec![1; k];
    basis_d.extend(vec![0; l]);
    let mut basis_e = vec![0; k];
    basis_e.extend(vec![1; l]);
    Ok(Skeleton {
        parts: PresentationParts {
            rank,
            s_rank,
            weights,
            roots: gl_roots(rank, &[(0, k), (k, l)]),
            weyl: WeylAction::gl_blocks(&[k, l]),
            theta: vec![1; rank],
            twist: vec![],
            chern_blocks: Some(vec![k, l]),
            s_blocks: Some(vec![n, m]),
            class_basis: Some(vec![basis_d, basis_e]),
            convention: SignConvention::Standard,
        },
        fixed_points,
    })
}

/// Charts of a presentation from lists of nonvanishing weights.
pub fn charts_from_fixed_points(
    p: &GitPresentation,
    fixed_points: &[(String, Vec<usize>)],
) -> Result<Vec<FixedPointChart>> {
    fixed_points
        .iter()
        .map(|(label, idx)| FixedPointChart::from_fixed_point(p, idx, label.clone()))
        .collect()
}

/// Default chart labels for fixed points given by weight indices.
pub fn index_label(idx: &[usize]) -> String {
    format!("w={}", set_label(idx))
}

pub fn build(spec: &TargetSpec, convention: SignConvention) -> Result<BuiltTarget> {
    let skeleton = match &spec.family {
        Family::ProjectiveSpace(n) => projective_product(&[*n])?,
        Family::ProductOfProjective(ns) => projective_product(ns)?,
        Family::Grassmannian { k, n } => grassmannian(*k, *n)?,
        Family::GrassmannBundle { k, n, l, m } => grassmann_bundle(*k, *n, *l, *m)?,
    };
    let mut parts = skeleton.parts;
    parts.convention = convention;
    let presentation = GitPresentation::new(parts)?;
    let cone = EffectiveCone::orthant(presentation.rank(), ConeProvenance::BuiltInTarget);
    let anticanonical = presentation.det_rho().to_vec();
    let fano = fano_index(&anticanonical, &cone.generators()?);
    let charts = charts_from_fixed_points(&presentation, &skeleton.fixed_points)?;
    let mut target = BuiltTarget {
        spec: TargetSpec::new(spec.family.clone()),
        presentation,
        cone,
        charts,
        fixed_points: skeleton.fixed_points.into_iter().map(|(_, i)| i).collect(),
        anticanonical,
        fano_index: fano,
    };
    match &spec.twist {
        None => {}
        Some(TwistSpec::Anticanonical) => target.presentation = anticanonical_twist(&target)?,
        Some(TwistSpec::Explicit(weights)) => {
            target.presentation = target.presentation.with_twist(weights.clone())?
        }
    }
    target.spec.twist = spec.twist.clone();
    Ok(target)
}

/// The presentation twisted by the anticanonical character with zero `S`-weight.
pub fn anticanonical_twist(t: &BuiltTarget) -> Result<GitPresentation> {
    if t.fano_index.is_none() {
        return Err(Error::NotFano(format!(
            "{}: anticanonical character {:?} is not positive on the effective cone",
            t.spec.family, t.anticanonical
        )));
    }
    let p = &t.presentation;
    p.with_twist(vec![Weight::new(
        t.anticanonical.clone(),
        vec![0; p.s_rank()],
    )])
}

impl BuiltTarget {
    pub fn name(&self) -> String {
        self.spec.family.to_string()
    }

    /// The target in the JSON input format, charts and anticanonical character included.
    pub fn to_input(&self) -> GitInput {
        let mut input = GitInput::from_presentation(&self.presentation, &self.cone);
        input.name = Some(self.name());
        input.fixed_points = Some(self.fixed_points.clone());
        input.anticanonical = Some(self.anticanonical.clone());
        input
    }
}

/// Fixed-locus data of a lift: parabolic roots, retained weights and dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocusDescriptor {
    pub lift: DegreeLift,
    /// The lift with each Weyl block sorted increasingly.
    pub sorted_lift: DegreeLift,
    /// `sorted_lift[i] = lift[permutation[i]]`.
    pub permutation: Vec<usize>,
    pub parabolic_roots: Vec<Vec<i64>>,
    pub retained_weights: Vec<usize>,
    pub excluded_weights: Vec<usize>,
    pub dim_v_beta: usize,
    pub dim_parabolic: usize,
    pub dim_fixed_locus: i64,
    /// For Grassmann bundles, the `ℓ × km` pattern of the second matrix; `true` marks
    /// entries allowed to be nonzero.
    pub pattern: Option<Vec<Vec<bool>>>,
}

fn block_sort(lift: &[i64], blocks: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..lift.len()).collect();
    let mut offset = 0;
    for &b in blocks {
        perm[offset..offset + b].sort_by_key(|&i| (lift[i], i));
        offset += b;
    }
    perm
}

pub fn fixed_locus_descriptor(t: &BuiltTarget, lift: &DegreeLift) -> Result<FixedLocusDescriptor> {
    descriptor_for(&t.presentation, &t.cone, Some(&t.spec.family), lift)
}

/// As [`fixed_locus_descriptor`] for any presentation; the pattern needs a Grassmann bundle family.
pub fn descriptor_for(
    p: &GitPresentation,
    cone: &EffectiveCone,
    family: Option<&Family>,
    lift: &DegreeLift,
) -> Result<FixedLocusDescriptor> {
    if lift.0.len() != p.rank() {
        return Err(Error::InvalidRequest(format!(
            "lift {lift} does not have {} entries",
            p.rank()
        )));
    }
    if !cone.contains(&lift.0) {
        return Err(Error::InvalidRequest(format!(
            "lift {lift} is outside the effective cone"
        )));
    }
    let blocks = p
        .weyl()
        .gl_block_sizes()
        .map(<[usize]>::to_vec)
        .unwrap_or_else(|| vec![1; p.rank()]);
    let permutation = block_sort(&lift.0, &blocks);
    let sorted = DegreeLift(permutation.iter().map(|&i| lift.0[i]).collect());

    let parabolic_roots: Vec<Vec<i64>> = p
        .roots()
        .iter()
        .filter(|a| sorted.pair(a) >= 0)
        .cloned()
        .collect();
    let (retained, excluded): (Vec<usize>, Vec<usize>) =
        (0..p.weights().len()).partition(|&j| sorted.pair(&p.weights()[j].t) >= 0);
    let dim_parabolic = p.rank() + parabolic_roots.len();
    let pattern = match family {
        Some(&Family::GrassmannBundle { k, n, l, m }) => Some(
            (0..l)
                .map(|j| {
                    (0..k * m)
                        .map(|c| retained.contains(&grassmann_bundle_w_index(k, n, m, j, c)))
                        .collect()
                })
                .collect(),
        ),
        _ => None,
    };
    Ok(FixedLocusDescriptor {
        lift: lift.clone(),
        sorted_lift: sorted,
        permutation,
        dim_v_beta: retained.len(),
        dim_parabolic,
        dim_fixed_locus: retained.len() as i64 - dim_parabolic as i64,
        parabolic_roots,
        retained_weights: retained,
        excluded_weights: excluded,
        pattern,
    })
}

impl FixedLocusDescriptor {
    /// Rows of `*` and `0`, with `|` between the `m` repeated blocks of width `k`.
    pub fn pattern_ascii(&self, k: usize) -> Option<String> {
        let pattern = self.pattern.as_ref()?;
        let mut out = String::new();
        for row in pattern {
            let cells: Vec<String> = row
                .chunks(k)
                .map(|block| {
                    block
                        .iter()
                        .map(|&s| if s { "*" } else { "0" })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(" | "));
        }
        Some(out)
    }

    pub fn to_text(&self, k: Option<usize>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lift: {}", self.lift);
        let perm: Vec<String> = self
            .permutation
            .iter()
            .map(|i| (i + 1).to_string())
            .collect();
        let _ = writeln!(
            out,
            "sorted lift: {} (permutation [{}])",
            self.sorted_lift,
            perm.join(",")
        );
        let _ = writeln!(out, "parabolic roots: {:?}", self.parabolic_roots);
        let _ = writeln!(
            out,
            "dim V_b = {}, dim P = {}, dim F = {}",
            self.dim_v_beta, self.dim_parabolic, self.dim_fixed_locus
        );
        let _ = writeln!(out, "excluded weights: {:?}", self.excluded_weights);
        if let Some(ascii) = k.and_then(|k| self.pattern_ascii(k)) {
            out.push_str("pattern:\n");
            out.push_str(&ascii);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn built(name: &str) -> BuiltTarget {
        build(
            &TargetSpec::new(name.parse().unwrap()),
            SignConvention::Standard,
        )
        .unwrap()
    }

    #[test]
    fn names_round_trip() {
        for name in ["p2", "pp:1,2", "gr:2,4", "gb:1,4,1,2"] {
            assert_eq!(name.parse::<Family>().unwrap().to_string(), name);
        }
        assert!("gr:2".parse::<Family>().is_err());
        assert!("q3".parse::<Family>().is_err());
    }

    #[test]
    fn structure_of_builtins() {
        let p2 = built("p2");
        assert_eq!(p2.presentation.weights().len(), 3);
        assert!(p2.presentation.roots().is_empty());
        assert_eq!(p2.charts.len(), 3);
        assert_eq!(p2.fano_index, Some(3));

        let gr = built("gr:2,4");
        assert_eq!(gr.presentation.weights().len(), 8);
        assert_eq!(gr.presentation.roots().len(), 2);
        assert_eq!(gr.charts.len(), 6);

        let gb = built("gb:1,4,1,2");
        assert_eq!(gb.fano_index, Some(2));
        assert_eq!(gb.anticanonical, vec![2, 2]);
        assert_eq!(gb.charts.len(), 8);
        assert_eq!(built("gb:2,7,1,3").charts.len(), 21 * 6);
        assert_eq!(built("pp:1,1").charts.len(), 4);

        assert!(build(
            &TargetSpec::new(Family::Grassmannian { k: 4, n: 4 }),
            SignConvention::Standard
        )
        .is_err());
        assert!(build(
            &TargetSpec::new(Family::GrassmannBundle {
                k: 1,
                n: 3,
                l: 2,
                m: 2
            }),
            SignConvention::Standard
        )
        .is_err());
    }

    #[test]
    fn anticanonical_twists() {
        let gb = build(
            &TargetSpec::twisted("gb:1,4,1,2".parse().unwrap()),
            SignConvention::Standard,
        )
        .unwrap();
        assert_eq!(gb.presentation.twist()[0].t, vec![2, 2]);
        let p3 = build(
            &TargetSpec::twisted(Family::ProjectiveSpace(3)),
            SignConvention::Standard,
        )
        .unwrap();
        assert_eq!(p3.presentation.twist()[0].t, vec![4]);
        let not_fano = TargetSpec::twisted(Family::GrassmannBundle {
            k: 1,
            n: 2,
            l: 1,
            m: 2,
        });
        assert!(matches!(
            build(&not_fano, SignConvention::Standard),
            Err(Error::NotFano(_))
        ));
    }

    #[test]
    fn descriptors() {
        let gb = built("gb:3,5,1,1");
        let d = fixed_locus_descriptor(&gb, &DegreeLift(vec![0, 1, 0, 0])).unwrap();
        assert_eq!(d.sorted_lift, DegreeLift(vec![0, 0, 1, 0]));
        assert_eq!(d.permutation, vec![0, 2, 1, 3]);
        assert_eq!(d.pattern, Some(vec![vec![true, true, false]]));
        assert_eq!(d.pattern_ascii(3).unwrap(), "* * 0\n");

        let gr = built("gr:2,4");
        let d = fixed_locus_descriptor(&gr, &DegreeLift(vec![1, 1])).unwrap();
        assert_eq!(d.parabolic_roots.len(), 2);
        assert_eq!(d.dim_fixed_locus, 4);
        let zero = fixed_locus_descriptor(&gr, &DegreeLift(vec![0, 0])).unwrap();
        assert_eq!(zero.dim_v_beta, 8);
        assert!(zero.excluded_weights.is_empty());
    }
}
