//! Hypergeometric factors and assembly of I-function coefficients as sums over degree lifts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{sum_evaluate, FactoredTerm, LinearForm, Specialization, ZRationalFunction};
use crate::error::{Error, Result};
use crate::git::{enumerate_lifts, fano_index, DegreeLift, EffectiveCone, GitPresentation};

/// `Π_{k=1..d}(c + kz)` for `d ≥ 0`, and `Π_{k=d+1..0}(c + kz)⁻¹` for `d < 0`.
pub fn hypergeometric_factor(c: &LinearForm, d: i64) -> Result<FactoredTerm> {
    let mut out = FactoredTerm::one();
    if d >= 0 {
        for k in 1..=d {
            out.mul_factor(c.shift_z(k), 1)?;
        }
    } else {
        for k in (d + 1)..=0 {
            out.mul_factor(c.shift_z(k), -1)?;
        }
    }
    Ok(out)
}

/// Product over all roots `α` of `hypergeometric_factor(α, β̃(α))`, non-equivariant.
pub fn root_factor(p: &GitPresentation, lift: &DegreeLift) -> Result<FactoredTerm> {
    let mut out = FactoredTerm::one();
    for alpha in p.roots() {
        out = out.mul(&hypergeometric_factor(
            &p.lift_character(alpha),
            lift.pair(alpha),
        )?);
    }
    Ok(out)
}

/// Product over the weights `ξⱼ` of `V` of the reciprocal hypergeometric factors.
pub fn abelian_factor(
    p: &GitPresentation,
    lift: &DegreeLift,
    equivariant: bool,
) -> Result<FactoredTerm> {
    let mut out = FactoredTerm::one();
    for w in p.weights() {
        let h = hypergeometric_factor(&p.lift_weight(w, equivariant), lift.pair(&w.t))?;
        out = out.mul(&h.inverse()?);
    }
    Ok(out)
}

/// Product over the twist weights `ε` of `hypergeometric_factor(ε, β̃(ε))`.
pub fn twist_factor(
    p: &GitPresentation,
    lift: &DegreeLift,
    equivariant: bool,
) -> Result<FactoredTerm> {
    let mut out = FactoredTerm::one();
    for eps in p.twist() {
        let pairing = lift.pair(&eps.t);
        if pairing < 0 {
            return Err(Error::NonConvexTwist {
                weight: eps.t.clone(),
                lift: lift.0.clone(),
                pairing,
            });
        }
        out = out.mul(&hypergeometric_factor(
            &p.lift_weight(eps, equivariant),
            pairing,
        )?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRequest {
    pub class: Vec<i64>,
    pub twisted: bool,
    pub equivariant: bool,
}

impl CoefficientRequest {
    pub fn new(class: Vec<i64>, twisted: bool, equivariant: bool) -> Self {
        CoefficientRequest {
            class,
            twisted,
            equivariant,
        }
    }

    fn check(&self, p: &GitPresentation) -> Result<()> {
        if self.twisted && p.twist().is_empty() {
            return Err(Error::InvalidRequest(
                "a twisted coefficient needs twist weights".into(),
            ));
        }
        if self.equivariant && p.s_rank() == 0 {
            return Err(Error::InvalidRequest(
                "an equivariant coefficient needs S-weights".into(),
            ));
        }
        if self.class.len() != p.class_basis().len() {
            return Err(Error::InvalidRequest(format!(
                "class {:?} has {} entries, the class basis has {}",
                self.class,
                self.class.len(),
                p.class_basis().len()
            )));
        }
        Ok(())
    }
}

/// The `β̃` term of the coefficient: root factor, abelian factor and, if requested, twist.
pub fn summand(
    p: &GitPresentation,
    lift: &DegreeLift,
    req: &CoefficientRequest,
) -> Result<FactoredTerm> {
    let mut out = root_factor(p, lift)?.mul(&abelian_factor(p, lift, req.equivariant)?);
    if req.twisted {
        out = out.mul(&twist_factor(p, lift, req.equivariant)?);
    }
    Ok(out)
}

/// `−β̃(det ρ) + β̃(det σ)`, the twist counted only when requested.
pub fn homogeneity_degree(p: &GitPresentation, lift: &DegreeLift, twisted: bool) -> i64 {
    let sigma = if twisted { lift.pair(p.det_sigma()) } else { 0 };
    sigma - lift.pair(p.det_rho())
}

/// One coefficient `I_β` as its per-lift summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IFunctionCoefficient {
    pub class: Vec<i64>,
    pub twisted: bool,
    pub equivariant: bool,
    /// Common homogeneity degree of the summands; `None` when there are no lifts.
    pub degree: Option<i64>,
    pub lift_count: usize,
    #[serde(with = "summand_list")]
    pub summands: BTreeMap<DegreeLift, FactoredTerm>,
}

mod summand_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Entry {
        lift: DegreeLift,
        term: FactoredTerm,
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<DegreeLift, FactoredTerm>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = map
            .iter()
            .map(|(lift, term)| Entry {
                lift: lift.clone(),
                term: term.clone(),
            })
            .collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<DegreeLift, FactoredTerm>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.lift, e.term)).collect())
    }
}

impl IFunctionCoefficient {
    pub fn terms(&self) -> Vec<FactoredTerm> {
        self.summands.values().cloned().collect()
    }

    pub fn evaluate(&self, s: &Specialization) -> Result<ZRationalFunction> {
        sum_evaluate(&self.terms(), s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let lifts = if self.lift_count == 1 {
            "lift"
        } else {
            "lifts"
        };
        let _ = write!(
            out,
            "I_{}: {} {lifts}",
            class_label(&self.class),
            self.lift_count
        );
        if let Some(d) = self.degree {
            let _ = write!(out, ", degree {d}");
        }
        out.push('\n');
        for (lift, term) in &self.summands {
            let _ = writeln!(out, "  {lift}: {term}");
        }
        out
    }

    pub fn to_latex(&self) -> String {
        if self.summands.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(lift, term)| {
                format!("\\underbrace{{{}}}_{{\\tilde\\beta={lift}}}", term.latex())
            })
            .collect();
        parts.join("\n  + ")
    }
}

fn class_label(class: &[i64]) -> String {
    let parts: Vec<String> = class.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Checks that every twist weight pairs nonnegatively with every cone generator.
pub fn check_twist_convexity(p: &GitPresentation, cone: &EffectiveCone) -> Result<()> {
    for g in cone.generators()? {
        let lift = DegreeLift(g);
        for eps in p.twist() {
            let pairing = lift.pair(&eps.t);
            if pairing < 0 {
                return Err(Error::NonConvexTwist {
                    weight: eps.t.clone(),
                    lift: lift.0,
                    pairing,
                });
            }
        }
    }
    Ok(())
}

/// Sums one summand per lift of the requested class.
pub fn assemble_coefficient(
    p: &GitPresentation,
    cone: &EffectiveCone,
    req: &CoefficientRequest,
) -> Result<IFunctionCoefficient> {
    req.check(p)?;
    if req.twisted {
        check_twist_convexity(p, cone)?;
    }
    let lifts = enumerate_lifts(p, cone, &req.class)?;
    let terms: Vec<FactoredTerm> = lifts
        .par_iter()
        .map(|l| summand(p, l, req))
        .collect::<Result<_>>()?;
    let degrees: Vec<i64> = lifts
        .iter()
        .map(|l| homogeneity_degree(p, l, req.twisted))
        .collect();
    if degrees.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::MalformedPresentation(format!(
            "lifts of class {:?} have different homogeneity degrees {degrees:?}",
            req.class
        )));
    }
    Ok(IFunctionCoefficient {
        class: req.class.clone(),
        twisted: req.twisted,
        equivariant: req.equivariant,
        degree: degrees.first().copied(),
        lift_count: lifts.len(),
        summands: lifts.into_iter().zip(terms).collect(),
    })
}

/// Coefficients for every class in a box `0 ≤ βᵢ ≤ boundᵢ`, the unit included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IFunctionSeries {
    pub bounds: Vec<i64>,
    pub coefficients: Vec<IFunctionCoefficient>,
}

/// Every class `c` with `0 ≤ cᵢ ≤ boundsᵢ`, in lexicographic order.
pub fn box_classes(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |v| {
                    let mut c = prefix.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
    }
    out
}

impl IFunctionSeries {
    /// Assembles the series; classes without lifts are left out.
    pub fn compute(
        p: &GitPresentation,
        cone: &EffectiveCone,
        bounds: &[i64],
        twisted: bool,
        equivariant: bool,
    ) -> Result<IFunctionSeries> {
        if bounds.len() != p.class_basis().len() {
            return Err(Error::InvalidRequest(format!(
                "{} bounds given for {} class coordinates",
                bounds.len(),
                p.class_basis().len()
            )));
        }
        if bounds.iter().any(|&b| b < 0) {
            return Err(Error::InvalidRequest(
                "degree bounds must be nonnegative".into(),
            ));
        }
        let mut coefficients = Vec::new();
        for class in box_classes(bounds) {
            let c = assemble_coefficient(
                p,
                cone,
                &CoefficientRequest::new(class, twisted, equivariant),
            )?;
            if c.lift_count > 0 {
                coefficients.push(c);
            }
        }
        Ok(IFunctionSeries {
            bounds: bounds.to_vec(),
            coefficients,
        })
    }

    fn nonunit(&self) -> impl Iterator<Item = &IFunctionCoefficient> {
        self.coefficients
            .iter()
            .filter(|c| c.class.iter().any(|&x| x != 0))
    }

    pub fn to_text(&self) -> String {
        let mut head = String::from("I = 1");
        for c in self.nonunit() {
            let _ = write!(
                head,
                " + q^{}·I_{}",
                class_label(&c.class),
                class_label(&c.class)
            );
        }
        let mut out = head;
        out.push('\n');
        for c in self.nonunit() {
            out.push_str(&c.to_text());
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("I = 1");
        for c in self.nonunit() {
            let q: Vec<String> = c
                .class
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0)
                .map(|(i, d)| format!("q_{}^{{{d}}}", i + 1))
                .collect();
            let _ = write!(
                out,
                "\n  + {}\\Big(\n  {}\n  \\Big)",
                q.join(""),
                c.to_latex()
            );
        }
        out.push('\n');
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MirrorStatus {
    Satisfied,
    NotSatisfied,
    Unknown,
}

/// Whether the hypotheses for concluding `J = I` hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorReport {
    pub status: MirrorStatus,
    pub fano_index: Option<i64>,
    pub reasons: Vec<String>,
}

/// Checks Fano index at least 2 and `β(det ρ) − β(det σ) ≥ 0` on the cone generators.
pub fn mirror_hypothesis_report(
    p: &GitPresentation,
    cone: &EffectiveCone,
    anticanonical: Option<&[i64]>,
) -> MirrorReport {
    let Some(anti) = anticanonical else {
        return MirrorReport {
            status: MirrorStatus::Unknown,
            fano_index: None,
            reasons: vec!["no anticanonical character or index data".into()],
        };
    };
    let generators = match cone.generators() {
        Ok(g) => g,
        Err(e) => {
            return MirrorReport {
                status: MirrorStatus::Unknown,
                fano_index: None,
                reasons: vec![e.to_string()],
            }
        }
    };
    let mut reasons = Vec::new();
    let index = fano_index(anti, &generators);
    match index {
        None => reasons.push(
            "Fano condition fails: the anticanonical class is not positive on the cone".into(),
        ),
        Some(i) if i < 2 => reasons.push(format!(
            "index condition fails: Fano index {i} is less than 2"
        )),
        Some(i) => reasons.push(format!("Fano of index {i}")),
    }
    let diff: Vec<i64> = p
        .det_rho()
        .iter()
        .zip(p.det_sigma())
        .map(|(a, b)| a - b)
        .collect();
    let bad: Vec<&Vec<i64>> = generators
        .iter()
        .filter(|g| g.iter().zip(&diff).map(|(a, b)| a * b).sum::<i64>() < 0)
        .collect();
    if bad.is_empty() {
        reasons.push("β(det ρ) − β(det σ) ≥ 0 on every cone generator".into());
    } else {
        reasons.push(format!("β(det ρ) − β(det σ) < 0 on generators {bad:?}"));
    }
    let ok = index.is_some_and(|i| i >= 2) && bad.is_empty();
    MirrorReport {
        status: if ok {
            MirrorStatus::Satisfied
        } else {
            MirrorStatus::NotSatisfied
        },
        fano_index: index,
        reasons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Symbol;
    use crate::git::{ConeProvenance, PresentationParts, SignConvention, Weight, WeylAction};

    fn c() -> LinearForm {
        LinearForm::symbol(Symbol::chern(0, 0))
    }

    fn gr(k: usize, n: usize) -> GitPresentation {
        let mut weights = Vec::new();
        for i in 0..k {
            for a in 0..n {
                let mut t = vec![0; k];
                t[i] = 1;
                let mut s = vec![0; n];
                s[a] = 1;
                weights.push(Weight::new(t, s));
            }
        }
        let mut roots = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    let mut r = vec![0; k];
                    r[i] = 1;
                    r[j] = -1;
                    roots.push(r);
                }
            }
        }
        GitPresentation::new(PresentationParts {
            rank: k,
            s_rank: n,
            weights,
            roots,
            weyl: WeylAction::gl_blocks(&[k]),
            theta: vec![1; k],
            twist: vec![],
            chern_blocks: None,
            s_blocks: None,
            class_basis: None,
            convention: SignConvention::Standard,
        })
        .unwrap()
    }

    #[test]
    fn hypergeometric_examples() {
        assert_eq!(hypergeometric_factor(&c(), 0).unwrap(), FactoredTerm::one());
        assert_eq!(
            hypergeometric_factor(&c(), 3).unwrap().to_string(),
            "(x1 + z)*(x1 + 2*z)*(x1 + 3*z)"
        );
        assert_eq!(
            hypergeometric_factor(&c(), -2).unwrap().to_string(),
            "1/((x1 - z)*(x1))"
        );
    }

    #[test]
    fn root_factor_examples() {
        let p = gr(2, 4);
        let t = root_factor(&p, &DegreeLift(vec![1, 0])).unwrap();
        assert_eq!(t.to_string(), "(x1 - x2 + z)/((-x1 + x2))");
        assert_eq!(
            root_factor(&p, &DegreeLift(vec![1, 1])).unwrap(),
            FactoredTerm::one()
        );
        let t = root_factor(&gr(2, 3), &DegreeLift(vec![2, 0])).unwrap();
        let x12 =
            LinearForm::symbol(Symbol::chern(0, 0)).sub(&LinearForm::symbol(Symbol::chern(0, 1)));
        let mut expected = FactoredTerm::one();
        expected.mul_factor(x12.shift_z(1), 1).unwrap();
        expected.mul_factor(x12.shift_z(2), 1).unwrap();
        expected.mul_factor(x12.neg(), -1).unwrap();
        expected.mul_factor(x12.neg().shift_z(-1), -1).unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn grassmannian_coefficient_has_one_summand_per_composition() {
        let p = gr(2, 4);
        let cone = EffectiveCone::orthant(2, ConeProvenance::BuiltInTarget);
        let coeff = assemble_coefficient(&p, &cone, &CoefficientRequest::new(vec![2], false, true))
            .unwrap();
        let lifts: Vec<Vec<i64>> = coeff.summands.keys().map(|l| l.0.clone()).collect();
        assert_eq!(lifts, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(coeff.degree, Some(-8));
        let unit = assemble_coefficient(&p, &cone, &CoefficientRequest::new(vec![0], false, true))
            .unwrap();
        assert_eq!(unit.terms(), vec![FactoredTerm::one()]);
        let json = serde_json::to_string(&coeff).unwrap();
        assert_eq!(
            serde_json::from_str::<IFunctionCoefficient>(&json).unwrap(),
            coeff
        );
    }

    #[test]
    fn requests_are_checked() {
        let p = gr(2, 4);
        let cone = EffectiveCone::orthant(2, ConeProvenance::BuiltInTarget);
        assert!(
            assemble_coefficient(&p, &cone, &CoefficientRequest::new(vec![1], true, false))
                .is_err()
        );
        assert!(assemble_coefficient(
            &p,
            &cone,
            &CoefficientRequest::new(vec![1, 1], false, false)
        )
        .is_err());
    }

    #[test]
    fn negative_twist_pairing_is_rejected() {
        let p = gr(1, 2)
            .with_twist(vec![Weight::new(vec![-1], vec![0, 0])])
            .unwrap();
        assert!(matches!(
            twist_factor(&p, &DegreeLift(vec![1]), false),
            Err(Error::NonConvexTwist { pairing: -1, .. })
        ));
    }

    #[test]
    fn mirror_report_without_index_data_is_unknown() {
        let p = gr(1, 2);
        let cone = EffectiveCone::orthant(1, ConeProvenance::BuiltInTarget);
        assert_eq!(
            mirror_hypothesis_report(&p, &cone, None).status,
            MirrorStatus::Unknown
        );
        assert_eq!(
            mirror_hypothesis_report(&p, &cone, Some(&[2])).status,
            MirrorStatus::Satisfied
        );
    }
}
