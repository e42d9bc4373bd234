//! Evaluation of factored terms at rational points, leaving one free variable.
//!
//! Every factor is linear, so after substitution a term is `scalar · Π (t − r)^m`. Sums are
//! formed over the least common multiple of these root multisets and reduced by synthetic
//! division, which avoids polynomial gcds entirely.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{FactoredTerm, Rational, Symbol, UPoly, ZRationalFunction};
use crate::error::{Error, Result};

/// Integers are drawn uniformly from `[-GENERIC_RANGE, GENERIC_RANGE]`.
pub const GENERIC_RANGE: i64 = 10_000;
/// Re-draws allowed after a [`Error::PoleAtSpecialization`].
pub const MAX_RETRIES: usize = 32;

/// Rational values for every non-`z` symbol in scope.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Specialization {
    values: BTreeMap<Symbol, Rational>,
}

impl Specialization {
    pub fn new(values: BTreeMap<Symbol, Rational>) -> Result<Self> {
        if values.keys().any(Symbol::is_z) {
            return Err(Error::InvalidRequest("z cannot be specialized".into()));
        }
        Ok(Specialization { values })
    }

    pub fn from_pairs<I: IntoIterator<Item = (Symbol, i64)>>(pairs: I) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(s, v)| (s, Rational::from_int(v)))
                .collect(),
        )
    }

    pub fn values(&self) -> &BTreeMap<Symbol, Rational> {
        &self.values
    }

    pub fn get(&self, s: &Symbol) -> Option<&Rational> {
        self.values.get(s)
    }

    /// Every value multiplied by `t`.
    pub fn scaled(&self, t: &Rational) -> Specialization {
        Specialization {
            values: self.values.iter().map(|(s, v)| (*s, v * t)).collect(),
        }
    }
}

/// An affine line `symbol ↦ base + t·direction`, including `z`.
#[derive(Clone, Debug, Default)]
pub struct LineSubstitution {
    pub base: BTreeMap<Symbol, Rational>,
    pub direction: BTreeMap<Symbol, Rational>,
    pub z_base: Rational,
    pub z_direction: Rational,
}

impl LineSubstitution {
    /// The line that keeps `z` free: `z ↦ t`, other symbols fixed.
    fn z_line(s: &Specialization) -> Self {
        LineSubstitution {
            base: s.values.clone(),
            direction: BTreeMap::new(),
            z_base: Rational::zero(),
            z_direction: Rational::one(),
        }
    }
}

/// `scalar · Π (t − r)^m`, multiplicities of either sign.
#[derive(Clone, Debug)]
pub(crate) struct RootProduct {
    scalar: Rational,
    roots: BTreeMap<Rational, i64>,
}

impl RootProduct {
    /// `Π (c0 + c1·t)^exp`; `None` when a numerator factor vanishes identically.
    pub(crate) fn from_linear<I>(scalar: Rational, factors: I) -> Result<Option<RootProduct>>
    where
        I: IntoIterator<Item = (Rational, Rational, i64, String)>,
    {
        let mut scalar = scalar;
        let mut roots: BTreeMap<Rational, i64> = BTreeMap::new();
        let mut pole = None;
        for (c0, c1, exp, name) in factors {
            if c1.is_zero() {
                if c0.is_zero() {
                    if exp > 0 {
                        return Ok(None);
                    }
                    pole = Some(name);
                    continue;
                }
                scalar *= &c0.pow(exp)?;
            } else {
                scalar *= &c1.pow(exp)?;
                let r = -(&c0 / &c1);
                let m = roots.entry(r.clone()).or_insert(0);
                *m += exp;
                if *m == 0 {
                    roots.remove(&r);
                }
            }
        }
        if let Some(p) = pole {
            return Err(Error::PoleAtSpecialization(p));
        }
        Ok(Some(RootProduct { scalar, roots }))
    }

    fn from_term(term: &FactoredTerm, line: &LineSubstitution) -> Result<Option<RootProduct>> {
        if term.is_zero() {
            return Ok(None);
        }
        let mut factors = Vec::with_capacity(term.factors().len());
        for (form, &exp) in term.factors() {
            let mut c0 = Rational::from_int(form.z()) * &line.z_base;
            let mut c1 = Rational::from_int(form.z()) * &line.z_direction;
            for (s, c) in form.coeffs() {
                let b = line
                    .base
                    .get(s)
                    .ok_or_else(|| Error::MissingSymbol(s.to_string()))?;
                c0 += &(c * b);
                if let Some(d) = line.direction.get(s) {
                    c1 += &(c * d);
                }
            }
            factors.push((c0, c1, exp, form.to_string()));
        }
        Self::from_linear(term.scalar().clone(), factors)
    }
}

fn expand_roots(scalar: &Rational, roots: impl Iterator<Item = (Rational, i64)>) -> UPoly {
    let mut p = UPoly::constant(scalar.clone());
    for (r, m) in roots {
        for _ in 0..m {
            p = p.mul_root(&r);
        }
    }
    p
}

/// Sum over a common denominator, reduced by dividing out shared roots.
pub(crate) fn sum_root_products(products: &[RootProduct]) -> ZRationalFunction {
    let mut common: BTreeMap<Rational, i64> = BTreeMap::new();
    for p in products {
        for (r, &m) in &p.roots {
            if m < 0 {
                let e = common.entry(r.clone()).or_insert(0);
                *e = (*e).max(-m);
            }
        }
    }

    let numerators: Vec<UPoly> = products
        .par_iter()
        .map(|p| {
            let mut exps = common.clone();
            for (r, &m) in &p.roots {
                *exps.entry(r.clone()).or_insert(0) += m;
            }
            expand_roots(&p.scalar, exps.into_iter())
        })
        .collect();
    let mut num = UPoly::zero();
    for n in &numerators {
        num = num.add(n);
    }
    if num.is_zero() {
        return ZRationalFunction::zero();
    }

    for (r, m) in common.iter_mut() {
        while *m > 0 {
            match num.div_root(r) {
                Some(q) => {
                    num = q;
                    *m -= 1;
                }
                None => break,
            }
        }
    }
    let den = expand_roots(&Rational::one(), common.into_iter());
    ZRationalFunction::from_coprime(num, den)
}

fn sum_on_line(terms: &[FactoredTerm], line: &LineSubstitution) -> Result<ZRationalFunction> {
    let products: Vec<RootProduct> = terms
        .par_iter()
        .map(|t| RootProduct::from_term(t, line))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(sum_root_products(&products))
}

/// Substitutes `s` into `term`, leaving a rational function of `z`.
pub fn evaluate_factored(term: &FactoredTerm, s: &Specialization) -> Result<ZRationalFunction> {
    sum_evaluate(std::slice::from_ref(term), s)
}

/// Exact sum of the evaluated terms, independent of term order.
pub fn sum_evaluate(terms: &[FactoredTerm], s: &Specialization) -> Result<ZRationalFunction> {
    sum_on_line(terms, &LineSubstitution::z_line(s))
}

/// Exact sum of the terms restricted to an affine line, as a rational function of the
/// line parameter `t`.
pub fn sum_evaluate_on_line(
    terms: &[FactoredTerm],
    line: &LineSubstitution,
) -> Result<ZRationalFunction> {
    sum_on_line(terms, line)
}

/// Collects every symbol used by the terms.
pub fn symbols_of(terms: &[FactoredTerm]) -> BTreeSet<Symbol> {
    terms.iter().flat_map(|t| t.symbols()).collect()
}

/// Seeded source of generic specializations.
#[derive(Clone, Debug)]
pub struct GenericSampler {
    rng: ChaCha8Rng,
}

impl GenericSampler {
    pub fn new(seed: u64) -> Self {
        GenericSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn draw_value(&mut self) -> Rational {
        Rational::from_int(self.rng.gen_range(-GENERIC_RANGE..=GENERIC_RANGE))
    }

    /// Assigns a fresh draw to each symbol, in sorted order.
    pub fn draw<'a, I: IntoIterator<Item = &'a Symbol>>(&mut self, symbols: I) -> Specialization {
        let mut values = BTreeMap::new();
        let mut sorted: Vec<&Symbol> = symbols.into_iter().filter(|s| !s.is_z()).collect();
        sorted.sort();
        sorted.dedup();
        for s in sorted {
            values.insert(*s, self.draw_value());
        }
        Specialization { values }
    }

    /// Runs `f` at fresh draws until it succeeds without a pole, up to [`MAX_RETRIES`].
    pub fn with_retries<'a, T, I, F>(&mut self, symbols: I, mut f: F) -> Result<(Specialization, T)>
    where
        I: IntoIterator<Item = &'a Symbol> + Clone,
        F: FnMut(&Specialization) -> Result<T>,
    {
        for _ in 0..MAX_RETRIES {
            let s = self.draw(symbols.clone());
            match f(&s) {
                Err(Error::PoleAtSpecialization(_)) => continue,
                other => return other.map(|v| (s, v)),
            }
        }
        Err(Error::RetriesExhausted(MAX_RETRIES))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LinearForm;

    fn x(i: u32) -> LinearForm {
        LinearForm::symbol(Symbol::chern(0, i))
    }

    fn spec(vals: &[(u32, i64)]) -> Specialization {
        Specialization::from_pairs(vals.iter().map(|&(i, v)| (Symbol::chern(0, i), v))).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let mut t = FactoredTerm::power(x(0).shift_z(1), 1).unwrap();
        t.mul_factor(x(0).shift_z(2), 1).unwrap();
        let f = evaluate_factored(&t, &spec(&[(0, 0)])).unwrap();
        assert_eq!(
            f,
            ZRationalFunction::from_poly(UPoly::from_ints(&[0, 0, 2]))
        );

        let inv = FactoredTerm::power(x(0).sub(&x(1)), -1).unwrap();
        let f = evaluate_factored(&inv, &spec(&[(0, 3), (1, 1)])).unwrap();
        assert_eq!(f, ZRationalFunction::constant(Rational::new(1, 2)));

        let mut p = FactoredTerm::power(x(0).sub(&x(1)).shift_z(1), 1).unwrap();
        p.mul_factor(x(0).sub(&x(1)), -1).unwrap();
        assert!(matches!(
            evaluate_factored(&p, &spec(&[(0, 1), (1, 1)])),
            Err(Error::PoleAtSpecialization(_))
        ));
    }

    #[test]
    fn sum_examples() {
        let a = FactoredTerm::power(x(0).sub(&x(1)), -1).unwrap();
        let b = FactoredTerm::power(x(1).sub(&x(0)), -1).unwrap();
        assert!(
            sum_evaluate(&[a.clone(), b.clone()], &spec(&[(0, 4), (1, 9)]))
                .unwrap()
                .is_zero()
        );

        let mut c = a.clone();
        c.mul_factor(x(0), 1).unwrap();
        let mut d = b.clone();
        d.mul_factor(x(1), 1).unwrap();
        let s = spec(&[(0, 5), (1, 2)]);
        assert_eq!(
            sum_evaluate(&[c.clone(), d], &s).unwrap(),
            ZRationalFunction::one()
        );
        assert_eq!(
            sum_evaluate(&[c.clone()], &s).unwrap(),
            evaluate_factored(&c, &s).unwrap()
        );
    }

    #[test]
    fn missing_symbol_is_reported() {
        let t = FactoredTerm::power(x(3), 1).unwrap();
        assert!(matches!(
            evaluate_factored(&t, &spec(&[(0, 1)])),
            Err(Error::MissingSymbol(_))
        ));
    }

    #[test]
    fn sampler_is_reproducible() {
        let syms = [Symbol::chern(0, 0), Symbol::lambda(0, 1)];
        let a = GenericSampler::new(7).draw(&syms);
        let b = GenericSampler::new(7).draw(&syms);
        assert_eq!(a, b);
        assert!(a
            .values()
            .values()
            .all(|v| v.abs() <= Rational::from_int(GENERIC_RANGE)));
    }
}
