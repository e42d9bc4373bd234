//! Torus-fixed-point charts: restriction, Atiyah–Bott integration, class equality,
//! pole detection and Weyl symmetrization.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    sum_evaluate, sum_evaluate_on_line, FactoredTerm, GenericSampler, LineSubstitution, LinearForm,
    MultiPolynomial, Rational, Specialization, Symbol, ZRationalFunction, MAX_RETRIES,
};
use crate::error::{Error, Result};
use crate::git::linalg::{inverse, IMat};
use crate::git::{DegreeLift, GitPresentation};
use crate::ifunction::IFunctionCoefficient;

/// An isolated fixed point: values of the Chern roots and the tangent weights there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChartJson", into = "ChartJson")]
pub struct FixedPointChart {
    pub label: String,
    pub root_assignment: BTreeMap<Symbol, LinearForm>,
    pub tangent_weights: Vec<LinearForm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssignmentJson {
    symbol: Symbol,
    form: LinearForm,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartJson {
    label: String,
    root_assignment: Vec<AssignmentJson>,
    tangent_weights: Vec<LinearForm>,
}

impl From<FixedPointChart> for ChartJson {
    fn from(c: FixedPointChart) -> Self {
        ChartJson {
            label: c.label,
            root_assignment: c
                .root_assignment
                .into_iter()
                .map(|(symbol, form)| AssignmentJson { symbol, form })
                .collect(),
            tangent_weights: c.tangent_weights,
        }
    }
}

impl TryFrom<ChartJson> for FixedPointChart {
    type Error = Error;

    fn try_from(c: ChartJson) -> Result<Self> {
        let n = c.root_assignment.len();
        let root_assignment: BTreeMap<Symbol, LinearForm> = c
            .root_assignment
            .into_iter()
            .map(|a| (a.symbol, a.form))
            .collect();
        if root_assignment.len() != n {
            return Err(Error::InvalidChart(format!(
                "chart {} assigns a symbol twice",
                c.label
            )));
        }
        FixedPointChart::new(c.label, root_assignment, c.tangent_weights)
    }
}

fn lambda_only(form: &LinearForm) -> bool {
    form.z() == 0
        && form
            .symbols()
            .all(|s| s.kind == crate::algebra::SymbolKind::EquivariantParam)
}

impl FixedPointChart {
    pub fn new(
        label: String,
        root_assignment: BTreeMap<Symbol, LinearForm>,
        tangent_weights: Vec<LinearForm>,
    ) -> Result<Self> {
        if let Some((s, _)) = root_assignment.iter().find(|(_, f)| !lambda_only(f)) {
            return Err(Error::InvalidChart(format!(
                "chart {label}: {s} is not sent to a form in the equivariant parameters"
            )));
        }
        if let Some(w) = tangent_weights
            .iter()
            .find(|w| w.is_zero() || !lambda_only(w))
        {
            return Err(Error::InvalidChart(format!(
                "chart {label}: bad tangent weight {w}"
            )));
        }
        Ok(FixedPointChart {
            label,
            root_assignment,
            tangent_weights,
        })
    }

    /// The chart of the fixed point where the weights `nonvanishing[i]` of `V` are nonzero.
    ///
    /// Chern roots are solved from the vanishing of those weights' equivariant classes, and
    /// tangent weights come from the Euler sequence: restricted weights of `V`, minus one
    /// zero per torus coordinate, minus the restricted roots.
    pub fn from_fixed_point(
        p: &GitPresentation,
        nonvanishing: &[usize],
        label: impl Into<String>,
    ) -> Result<Self> {
        let label = label.into();
        let r = p.rank();
        if nonvanishing.len() != r || nonvanishing.iter().any(|&j| j >= p.weights().len()) {
            return Err(Error::InvalidChart(format!(
                "chart {label} needs {r} weight indices below {}",
                p.weights().len()
            )));
        }
        let rows: Vec<Vec<Rational>> = nonvanishing
            .iter()
            .map(|&j| {
                p.weights()[j]
                    .t
                    .iter()
                    .map(|&x| Rational::from_int(x))
                    .collect()
            })
            .collect();
        let inv = inverse(&rows).ok_or_else(|| {
            Error::InvalidChart(format!(
                "chart {label}: the chosen weights are linearly dependent"
            ))
        })?;
        // Σ_k t_{jk} x_k = −(λ-part of weight j)
        let rhs: Vec<LinearForm> = nonvanishing
            .iter()
            .map(|&j| {
                let w = &p.weights()[j];
                p.lift_weight(w, true).sub(&p.lift_character(&w.t)).neg()
            })
            .collect();
        let mut root_assignment = BTreeMap::new();
        for (i, sym) in p.chern_symbols().iter().enumerate() {
            let mut form = LinearForm::zero();
            for (k, f) in rhs.iter().enumerate() {
                if !inv[i][k].is_zero() {
                    form = form.add(&f.scale(&inv[i][k])?);
                }
            }
            root_assignment.insert(*sym, form);
        }

        let mut remaining: Vec<LinearForm> = p
            .weights()
            .iter()
            .map(|w| p.lift_weight(w, true).substitute(&root_assignment))
            .collect::<Result<_>>()?;
        for _ in 0..r {
            let pos = remaining
                .iter()
                .position(LinearForm::is_zero)
                .ok_or_else(|| {
                    Error::InvalidChart(format!("chart {label}: too few vanishing weights"))
                })?;
            remaining.swap_remove(pos);
        }
        for alpha in p.roots() {
            let form = p.lift_character(alpha).substitute(&root_assignment)?;
            let pos = remaining.iter().position(|w| *w == form).ok_or_else(|| {
                Error::InvalidChart(format!(
                    "chart {label}: root weight {form} is not a weight of V"
                ))
            })?;
            remaining.swap_remove(pos);
        }
        remaining.sort();
        let chart = FixedPointChart::new(label, root_assignment, remaining)?;
        if chart.tangent_weights.len() as i64 != p.quotient_dimension() {
            return Err(Error::InvalidChart(format!(
                "chart {} has {} tangent weights, expected {}",
                chart.label,
                chart.tangent_weights.len(),
                p.quotient_dimension()
            )));
        }
        Ok(chart)
    }

    /// `Π` of the tangent weights.
    pub fn euler_class(&self) -> FactoredTerm {
        let mut t = FactoredTerm::one();
        for w in &self.tangent_weights {
            t.mul_factor(w.clone(), 1)
                .expect("tangent weights are nonzero");
        }
        t
    }

    /// Restricts a factored term. Zero denominators are reported as poles.
    pub fn restrict_term(&self, term: &FactoredTerm) -> Result<FactoredTerm> {
        if let Some(s) = term.symbols().into_iter().find(|s| {
            s.kind == crate::algebra::SymbolKind::ChernRoot && !self.root_assignment.contains_key(s)
        }) {
            return Err(Error::InvalidChart(format!(
                "chart {} does not assign {s}",
                self.label
            )));
        }
        term.substitute(&self.root_assignment)
    }

    /// Equivariant parameters used by the chart.
    pub fn lambda_symbols(&self) -> BTreeSet<Symbol> {
        self.root_assignment
            .values()
            .chain(&self.tangent_weights)
            .flat_map(|f| f.symbols().copied())
            .collect()
    }
}

/// Restriction of a coefficient to a chart, as the list of restricted summands.
pub fn restrict(
    coefficient: &IFunctionCoefficient,
    chart: &FixedPointChart,
) -> Result<Vec<FactoredTerm>> {
    coefficient
        .summands
        .values()
        .map(|t| chart.restrict_term(t))
        .filter(|r| !matches!(r, Ok(t) if t.is_zero()))
        .collect()
}

/// A class stored by its restrictions, each a sum of factored terms in the equivariant
/// parameters and `z`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedClass {
    pub restrictions: BTreeMap<String, Vec<FactoredTerm>>,
}

impl LocalizedClass {
    pub fn from_fn<F>(charts: &[FixedPointChart], mut f: F) -> Result<Self>
    where
        F: FnMut(&FixedPointChart) -> Result<Vec<FactoredTerm>>,
    {
        let mut restrictions = BTreeMap::new();
        for c in charts {
            restrictions.insert(c.label.clone(), f(c)?);
        }
        Ok(LocalizedClass { restrictions })
    }

    /// The class `1`.
    pub fn one(charts: &[FixedPointChart]) -> Self {
        Self::constant(charts, FactoredTerm::one())
    }

    pub fn constant(charts: &[FixedPointChart], term: FactoredTerm) -> Self {
        LocalizedClass {
            restrictions: charts
                .iter()
                .map(|c| (c.label.clone(), vec![term.clone()]))
                .collect(),
        }
    }

    /// The equivariant Euler class of the tangent bundle.
    pub fn tangent_euler(charts: &[FixedPointChart]) -> Self {
        LocalizedClass {
            restrictions: charts
                .iter()
                .map(|c| (c.label.clone(), vec![c.euler_class()]))
                .collect(),
        }
    }

    /// A polynomial in the Chern roots, restricted chart by chart.
    pub fn from_chern_term(charts: &[FixedPointChart], term: &FactoredTerm) -> Result<Self> {
        Self::from_fn(charts, |c| {
            let t = c.restrict_term(term)?;
            Ok(if t.is_zero() { vec![] } else { vec![t] })
        })
    }

    /// `Σ cᵢ·classᵢ`.
    pub fn linear_combination(parts: &[(Rational, &LocalizedClass)]) -> LocalizedClass {
        let mut restrictions: BTreeMap<String, Vec<FactoredTerm>> = BTreeMap::new();
        for (c, cls) in parts {
            for (label, terms) in &cls.restrictions {
                let entry = restrictions.entry(label.clone()).or_default();
                if !c.is_zero() {
                    entry.extend(terms.iter().map(|t| t.scale(c)));
                }
            }
        }
        LocalizedClass { restrictions }
    }

    fn terms_at(&self, chart: &FixedPointChart) -> Result<&[FactoredTerm]> {
        self.restrictions
            .get(&chart.label)
            .map(Vec::as_slice)
            .ok_or_else(|| {
                Error::InvalidChart(format!("class has no restriction at chart {}", chart.label))
            })
    }
}

/// Restricts a coefficient to every chart.
pub fn localize(
    coefficient: &IFunctionCoefficient,
    charts: &[FixedPointChart],
) -> Result<LocalizedClass> {
    let restricted: Vec<(String, Vec<FactoredTerm>)> = charts
        .par_iter()
        .map(|c| restrict(coefficient, c).map(|r| (c.label.clone(), r)))
        .collect::<Result<_>>()?;
    Ok(LocalizedClass {
        restrictions: restricted.into_iter().collect(),
    })
}

fn all_lambdas(
    charts: &[FixedPointChart],
    extra: impl IntoIterator<Item = Symbol>,
) -> BTreeSet<Symbol> {
    let mut out: BTreeSet<Symbol> = charts
        .iter()
        .flat_map(FixedPointChart::lambda_symbols)
        .collect();
    out.extend(extra);
    out
}

fn class_symbols(cls: &LocalizedClass) -> BTreeSet<Symbol> {
    cls.restrictions
        .values()
        .flatten()
        .flat_map(FactoredTerm::symbols)
        .collect()
}

/// `Σ_charts restriction / e(T)` at the specialization `s`.
pub fn integrate_at(
    cls: &LocalizedClass,
    charts: &[FixedPointChart],
    s: &Specialization,
) -> Result<ZRationalFunction> {
    let mut terms = Vec::new();
    for c in charts {
        let inv_euler = c.euler_class().inverse()?;
        terms.extend(cls.terms_at(c)?.iter().map(|t| t.mul(&inv_euler)));
    }
    sum_evaluate(&terms, s)
}

/// Atiyah–Bott integral at a generic draw of the equivariant parameters.
///
/// The value is independent of the draw exactly when the integral has no equivariant
/// parameters left, as for classes of degree at most the dimension.
pub fn integrate(
    cls: &LocalizedClass,
    charts: &[FixedPointChart],
    sampler: &mut GenericSampler,
) -> Result<ZRationalFunction> {
    let symbols = all_lambdas(charts, class_symbols(cls));
    sampler
        .with_retries(&symbols, |s| integrate_at(cls, charts, s))
        .map(|(_, v)| v)
}

/// Number of generic draws used per chart by [`classes_equal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityPolicy {
    /// One more than the largest total factor count of any term.
    DegreeBound,
    Fixed(usize),
}

/// Per-chart disagreement found by [`compare_classes`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartMismatch {
    pub chart: String,
    pub values: Vec<(String, String)>,
    pub left: String,
    pub right: String,
}

fn draws_for(policy: EqualityPolicy, a: &[FactoredTerm], b: &[FactoredTerm]) -> usize {
    match policy {
        EqualityPolicy::Fixed(n) => n,
        EqualityPolicy::DegreeBound => {
            a.iter()
                .chain(b)
                .map(|t| {
                    t.factors()
                        .values()
                        .map(|e| e.unsigned_abs() as usize)
                        .sum::<usize>()
                })
                .max()
                .unwrap_or(0)
                + 1
        }
    }
}

/// Compares two classes chart by chart at generic draws; returns the mismatching charts.
pub fn compare_classes(
    a: &LocalizedClass,
    b: &LocalizedClass,
    charts: &[FixedPointChart],
    sampler: &mut GenericSampler,
    policy: EqualityPolicy,
) -> Result<Vec<ChartMismatch>> {
    let mut mismatches = Vec::new();
    for c in charts {
        let (ta, tb) = (a.terms_at(c)?, b.terms_at(c)?);
        let symbols: BTreeSet<Symbol> = ta
            .iter()
            .chain(tb)
            .flat_map(FactoredTerm::symbols)
            .collect();
        for _ in 0..draws_for(policy, ta, tb) {
            let (s, (va, vb)) = sampler.with_retries(&symbols, |s| {
                Ok((sum_evaluate(ta, s)?, sum_evaluate(tb, s)?))
            })?;
            if va != vb {
                mismatches.push(ChartMismatch {
                    chart: c.label.clone(),
                    values: s
                        .values()
                        .iter()
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .collect(),
                    left: va.to_string(),
                    right: vb.to_string(),
                });
                break;
            }
        }
    }
    Ok(mismatches)
}

/// Equality of restrictions at generic draws on every chart.
pub fn classes_equal(
    a: &LocalizedClass,
    b: &LocalizedClass,
    charts: &[FixedPointChart],
    sampler: &mut GenericSampler,
    policy: EqualityPolicy,
) -> Result<bool> {
    Ok(compare_classes(a, b, charts, sampler, policy)?.is_empty())
}

/// `z`-free denominator forms, up to sign and scale.
pub fn z_free_denominators(terms: &[FactoredTerm]) -> Vec<LinearForm> {
    let mut out = BTreeSet::new();
    for t in terms {
        for (f, &e) in t.factors() {
            if e < 0 && f.z() == 0 {
                out.insert(normalize(f));
            }
        }
    }
    out.into_iter().collect()
}

fn normalize(f: &LinearForm) -> LinearForm {
    let lead = f
        .coeffs()
        .values()
        .next()
        .cloned()
        .unwrap_or_else(Rational::one);
    f.scale(&lead.recip().expect("nonzero coefficient"))
        .expect("z-free form")
}

/// Outcome of probing a sum along lines through the zero sets of its denominators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PoleReport {
    pub forms_checked: usize,
    /// Denominator forms along whose zero set the sum is still singular.
    pub poles: Vec<String>,
}

impl PoleReport {
    pub fn is_pole_free(&self) -> bool {
        self.poles.is_empty()
    }
}

fn random_line_through_zero_set(
    form: &LinearForm,
    symbols: &BTreeSet<Symbol>,
    sampler: &mut GenericSampler,
) -> LineSubstitution {
    let mut base: BTreeMap<Symbol, Rational> = sampler.draw(symbols).values().clone();
    let direction: BTreeMap<Symbol, Rational> = sampler.draw(symbols).values().clone();
    let (pivot, pc) = form
        .coeffs()
        .iter()
        .next()
        .map(|(s, c)| (*s, c.clone()))
        .expect("nonzero form");
    base.insert(pivot, Rational::zero());
    let (value, _) = form.evaluate(&base).expect("all symbols drawn");
    base.insert(pivot, -(&value / &pc));
    LineSubstitution {
        base,
        direction,
        z_base: sampler.draw_value(),
        z_direction: Rational::zero(),
    }
}

/// Whether the base point of `line` also lies on a denominator other than `form`.
fn meets_other_denominator(
    terms: &[FactoredTerm],
    form: &LinearForm,
    line: &LineSubstitution,
) -> bool {
    terms.iter().flat_map(|t| t.factors()).any(|(f, &e)| {
        if e >= 0 || (f.z() == 0 && normalize(f) == *form) {
            return false;
        }
        let (v, z) = f.evaluate(&line.base).expect("all symbols drawn");
        (&v + &(&Rational::from_int(z) * &line.z_base)).is_zero()
    })
}

/// Checks that the sum of `terms` stays finite on the zero set of each of its `z`-free
/// denominators, probing `lines` random lines through each zero set. A form is reported
/// only when every line is singular; lines whose base point meets another denominator are
/// redrawn.
pub fn pole_free_check(
    terms: &[FactoredTerm],
    sampler: &mut GenericSampler,
    lines: usize,
) -> Result<PoleReport> {
    let forms = z_free_denominators(terms);
    let symbols: BTreeSet<Symbol> = terms.iter().flat_map(FactoredTerm::symbols).collect();
    let mut report = PoleReport {
        forms_checked: forms.len(),
        poles: Vec::new(),
    };
    for form in &forms {
        let mut singular = 0;
        let mut done = 0;
        let mut attempts = 0;
        while done < lines {
            attempts += 1;
            if attempts > lines + MAX_RETRIES {
                return Err(Error::RetriesExhausted(MAX_RETRIES));
            }
            let line = random_line_through_zero_set(form, &symbols, sampler);
            if meets_other_denominator(terms, form, &line) {
                continue;
            }
            match sum_evaluate_on_line(terms, &line) {
                Ok(f) => {
                    done += 1;
                    if f.denominator().eval(&Rational::zero()).is_zero() {
                        singular += 1;
                    }
                }
                Err(Error::PoleAtSpecialization(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        if lines > 0 && singular == lines {
            report.poles.push(form.to_string());
        }
    }
    Ok(report)
}

/// `Σ_ω ω[f / Π α]` over the coset representatives, one term per representative.
pub fn brion_pushforward(
    f: &FactoredTerm,
    positive_roots_outside_l: &[LinearForm],
    coset_reps: &[IMat],
    basis: &[Symbol],
) -> Result<Vec<FactoredTerm>> {
    let mut base = f.clone();
    for a in positive_roots_outside_l {
        base.mul_factor(a.clone(), -1)?;
    }
    Ok(coset_reps.iter().map(|w| base.act(w, basis)).collect())
}

/// Expands a sum of factored terms over a common denominator and divides exactly.
///
/// Returns `None` when the sum is not a polynomial.
pub fn sum_to_polynomial(terms: &[FactoredTerm], limit: usize) -> Result<Option<MultiPolynomial>> {
    let mut common: BTreeMap<LinearForm, i64> = BTreeMap::new();
    for t in terms {
        for (f, &e) in t.factors() {
            if e < 0 {
                let c = common.entry(f.clone()).or_insert(0);
                *c = (*c).max(-e);
            }
        }
    }
    let mut den_term = FactoredTerm::one();
    for (f, &e) in &common {
        den_term.mul_factor(f.clone(), e)?;
    }
    let mut num = MultiPolynomial::zero();
    for t in terms {
        let (n, d) = t.mul(&den_term).expand(limit)?;
        debug_assert!(d == MultiPolynomial::constant(Rational::one()));
        num = num.add(&n);
    }
    let (den, _) = den_term.expand(limit)?;
    Ok(num.div_exact(&den))
}

/// Product of the equivariant classes of the weights with `β̃(ξⱼ) < 0`.
pub fn euler_ratio(p: &GitPresentation, lift: &DegreeLift) -> Result<FactoredTerm> {
    let mut out = FactoredTerm::one();
    for w in p.weights() {
        if lift.pair(&w.t) < 0 {
            out.mul_factor(p.lift_weight(w, true), 1)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::git::{PresentationParts, SignConvention, Weight, WeylAction};

    fn p1() -> GitPresentation {
        GitPresentation::new(PresentationParts {
            rank: 1,
            s_rank: 2,
            weights: vec![
                Weight::new(vec![1], vec![1, 0]),
                Weight::new(vec![1], vec![0, 1]),
            ],
            roots: vec![],
            weyl: WeylAction::trivial(1),
            theta: vec![1],
            twist: vec![],
            chern_blocks: None,
            s_blocks: None,
            class_basis: None,
            convention: SignConvention::Standard,
        })
        .unwrap()
    }

    fn x(i: u32) -> LinearForm {
        LinearForm::symbol(Symbol::chern(0, i))
    }

    #[test]
    fn projective_line_charts() {
        let p = p1();
        let c = FixedPointChart::from_fixed_point(&p, &[0], "p1").unwrap();
        assert_eq!(c.root_assignment[&Symbol::chern(0, 0)].to_string(), "-l1_1");
        assert_eq!(c.tangent_weights.len(), 1);
        assert_eq!(c.tangent_weights[0].to_string(), "-l1_1 + l1_2");
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<FixedPointChart>(&json).unwrap(), c);
    }

    #[test]
    fn integrals_on_the_projective_line() {
        let p = p1();
        let charts: Vec<_> = (0..2)
            .map(|a| FixedPointChart::from_fixed_point(&p, &[a], format!("p{a}")).unwrap())
            .collect();
        let mut s = GenericSampler::new(7);
        assert!(integrate(&LocalizedClass::one(&charts), &charts, &mut s)
            .unwrap()
            .is_zero());
        let h = LocalizedClass::from_chern_term(&charts, &FactoredTerm::power(x(0), 1).unwrap())
            .unwrap();
        assert_eq!(
            integrate(&h, &charts, &mut s).unwrap(),
            ZRationalFunction::one()
        );
        let e = LocalizedClass::tangent_euler(&charts);
        assert_eq!(
            integrate(&e, &charts, &mut s).unwrap(),
            ZRationalFunction::constant(Rational::from_int(2))
        );
        assert!(classes_equal(&e, &e, &charts, &mut s, EqualityPolicy::DegreeBound).unwrap());
        assert!(!classes_equal(&e, &h, &charts, &mut s, EqualityPolicy::DegreeBound).unwrap());

        // the same integral with H sent to +λ at each point
        let l = |a| LinearForm::symbol(Symbol::lambda(0, a));
        let hand: Vec<FixedPointChart> = (0..2)
            .map(|a| {
                let assign = BTreeMap::from([(Symbol::chern(0, 0), l(a))]);
                FixedPointChart::new(format!("q{a}"), assign, vec![l(a).sub(&l(1 - a))]).unwrap()
            })
            .collect();
        let h =
            LocalizedClass::from_chern_term(&hand, &FactoredTerm::power(x(0), 1).unwrap()).unwrap();
        assert_eq!(
            integrate(&h, &hand, &mut s).unwrap(),
            ZRationalFunction::one()
        );
    }

    #[test]
    fn divided_differences() {
        let swap = vec![vec![0, 1], vec![1, 0]];
        let reps = [crate::git::linalg::identity(2), swap];
        let basis = [Symbol::chern(0, 0), Symbol::chern(0, 1)];
        let root = x(0).sub(&x(1));
        let push = |f: FactoredTerm| {
            let terms = brion_pushforward(&f, std::slice::from_ref(&root), &reps, &basis).unwrap();
            sum_to_polynomial(&terms, 1000)
                .unwrap()
                .unwrap()
                .to_string()
        };
        assert_eq!(push(FactoredTerm::one()), "0");
        assert_eq!(push(FactoredTerm::power(x(0), 1).unwrap()), "1");
        assert_eq!(push(FactoredTerm::power(x(0), 2).unwrap()), "x1 + x2");
    }

    #[test]
    fn pole_detection_on_antisymmetric_sums() {
        let a = FactoredTerm::power(LinearForm::symbol(Symbol::lambda(0, 0)), 1)
            .unwrap()
            .mul(
                &FactoredTerm::power(
                    LinearForm::symbol(Symbol::lambda(0, 0))
                        .sub(&LinearForm::symbol(Symbol::lambda(0, 1))),
                    -1,
                )
                .unwrap(),
            );
        let b = FactoredTerm::power(LinearForm::symbol(Symbol::lambda(0, 1)), 1)
            .unwrap()
            .mul(
                &FactoredTerm::power(
                    LinearForm::symbol(Symbol::lambda(0, 1))
                        .sub(&LinearForm::symbol(Symbol::lambda(0, 0))),
                    -1,
                )
                .unwrap(),
            );
        let mut s = GenericSampler::new(1);
        assert!(pole_free_check(&[a.clone(), b], &mut s, 2)
            .unwrap()
            .is_pole_free());
        assert!(!pole_free_check(&[a], &mut s, 2).unwrap().is_pole_free());
    }

    #[test]
    fn euler_ratio_counts_negative_pairings() {
        let p = p1();
        assert_eq!(
            euler_ratio(&p, &DegreeLift(vec![1])).unwrap(),
            FactoredTerm::one()
        );
        let r = euler_ratio(&p, &DegreeLift(vec![-1])).unwrap();
        assert_eq!(r.degree(), 2);
    }
}
