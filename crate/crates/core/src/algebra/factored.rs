//! Products of linear forms with integer exponents.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LinearForm, MultiPolynomial, Rational, Symbol};
use crate::error::{Error, Result};

/// Default bound on the number of monomials produced by [`FactoredTerm::expand`].
pub const DEFAULT_EXPANSION_LIMIT: usize = 1_000_000;

/// `scalar · Π formᵉ`; positive exponents sit in the numerator, negative in the denominator.
///
/// The zero term has scalar 0 and no factors. No stored exponent is zero and the zero
/// form never appears as a factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactoredTerm {
    scalar: Rational,
    factors: BTreeMap<LinearForm, i64>,
}

impl Default for FactoredTerm {
    fn default() -> Self {
        Self::one()
    }
}

impl FactoredTerm {
    pub fn constant(c: Rational) -> Self {
        FactoredTerm {
            scalar: c,
            factors: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    /// `formᵉ`. A zero form gives the zero term for `e > 0` and an error for `e < 0`.
    pub fn power(form: LinearForm, exp: i64) -> Result<Self> {
        let mut t = Self::one();
        t.mul_factor(form, exp)?;
        Ok(t)
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn factors(&self) -> &BTreeMap<LinearForm, i64> {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Sum of all exponents: the homogeneity degree of the term.
    pub fn degree(&self) -> i64 {
        self.factors.values().sum()
    }

    /// Number of linear factors counted with multiplicity, numerator and denominator.
    pub fn factor_count(&self) -> u64 {
        self.factors.values().map(|e| e.unsigned_abs()).sum()
    }

    /// Multiplies by `formᵉ` in place.
    pub fn mul_factor(&mut self, form: LinearForm, exp: i64) -> Result<()> {
        if exp == 0 {
            return Ok(());
        }
        if form.is_zero() {
            if exp < 0 {
                return Err(Error::PoleAtSpecialization(form.to_string()));
            }
            *self = Self::zero();
            return Ok(());
        }
        if self.is_zero() {
            return Ok(());
        }
        let e = self.factors.entry(form).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.factors.retain(|_, e| *e != 0);
        }
        Ok(())
    }

    pub fn mul(&self, other: &FactoredTerm) -> FactoredTerm {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        for (f, e) in &other.factors {
            out.mul_factor(f.clone(), *e).expect("nonzero factors");
        }
        out
    }

    pub fn inverse(&self) -> Result<FactoredTerm> {
        Ok(FactoredTerm {
            scalar: self.scalar.recip()?,
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> FactoredTerm {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scalar *= c;
        out
    }

    /// Symbols appearing in any factor (never `z`).
    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        self.factors
            .keys()
            .flat_map(|f| f.symbols().copied())
            .collect()
    }

    /// The term with every symbol and `z` replaced by `t` times itself.
    ///
    /// Each linear factor picks up a factor `t`, so this is the original term times `t^D`
    /// with `D` = [`Self::degree`].
    pub fn scale_symbols(&self, t: &Rational) -> Result<FactoredTerm> {
        if t.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(self.scale(&t.pow(self.degree())?))
    }

    /// Substitutes linear forms for symbols in every factor.
    ///
    /// A numerator factor that becomes zero makes the whole term zero; a denominator factor
    /// that becomes zero is a pole.
    pub fn substitute(&self, map: &BTreeMap<Symbol, LinearForm>) -> Result<FactoredTerm> {
        let mut out = Self::constant(self.scalar.clone());
        let mut pole = None;
        for (f, e) in &self.factors {
            let image = f.substitute(map)?;
            if image.is_zero() {
                if *e > 0 {
                    return Ok(Self::zero());
                }
                pole = Some(f.to_string());
                continue;
            }
            out.mul_factor(image, *e)?;
        }
        match pole {
            Some(p) => Err(Error::PoleAtSpecialization(p)),
            None => Ok(out),
        }
    }

    /// Applies an integer matrix to the Chern-root coordinates of every factor.
    pub fn act(&self, matrix: &[Vec<i64>], basis: &[Symbol]) -> FactoredTerm {
        let mut out = Self::constant(self.scalar.clone());
        for (f, e) in &self.factors {
            out.mul_factor(f.act(matrix, basis), *e)
                .expect("invertible action keeps forms nonzero");
        }
        out
    }

    /// Expands numerator and denominator separately, without cancellation.
    pub fn expand(&self, limit: usize) -> Result<(MultiPolynomial, MultiPolynomial)> {
        let mut num = MultiPolynomial::constant(self.scalar.clone());
        let mut den = MultiPolynomial::constant(Rational::one());
        for (f, e) in &self.factors {
            let p = MultiPolynomial::from_linear(f);
            let target = if *e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *target = target.mul(&p);
                if target.len() > limit {
                    return Err(Error::SizeLimitExceeded(limit));
                }
            }
        }
        Ok((num, den))
    }

    fn render(&self, form: impl Fn(&LinearForm) -> String, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let group = |sign: i64| -> Vec<String> {
            self.factors
                .iter()
                .filter(|(_, e)| e.signum() == sign)
                .map(|(f, e)| {
                    let base = format!("({})", form(f));
                    match e.abs() {
                        1 => base,
                        p if latex => format!("{base}^{{{p}}}"),
                        p => format!("{base}^{p}"),
                    }
                })
                .collect()
        };
        let num = group(1);
        let den = group(-1);
        let sep = if latex { " " } else { "*" };
        let scalar = if latex {
            let s = &self.scalar;
            if s.is_integer() {
                format!("{s:?}")
            } else {
                format!("\\frac{{{}}}{{{}}}", s.numer(), s.denom())
            }
        } else {
            format!("{:?}", self.scalar)
        };
        let mut top = num.join(sep);
        if top.is_empty() {
            top = scalar;
        } else if !self.scalar.is_one() {
            top = format!("{scalar}{sep}{top}");
        }
        if den.is_empty() {
            top
        } else if latex {
            format!("\\frac{{{top}}}{{{}}}", den.join(" "))
        } else {
            format!("{top}/({})", den.join("*"))
        }
    }

    pub fn latex(&self) -> String {
        self.render(|f| f.latex(), true)
    }
}

impl fmt::Display for FactoredTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(|l| l.to_string(), false))
    }
}

impl fmt::Debug for FactoredTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorJson {
    form: LinearForm,
    exp: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    scalar: Rational,
    factors: Vec<FactorJson>,
}

impl Serialize for FactoredTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TermJson {
            scalar: self.scalar.clone(),
            factors: self
                .factors
                .iter()
                .map(|(f, e)| FactorJson {
                    form: f.clone(),
                    exp: *e,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FactoredTerm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TermJson::deserialize(deserializer)?;
        if raw.scalar.is_zero() && !raw.factors.is_empty() {
            return Err(D::Error::custom("zero term must have no factors"));
        }
        let mut factors = BTreeMap::new();
        let mut last: Option<LinearForm> = None;
        for FactorJson { form, exp } in raw.factors {
            if exp == 0 || form.is_zero() {
                return Err(D::Error::custom(
                    "zero exponent or zero form in factored term",
                ));
            }
            if last.as_ref().is_some_and(|l| *l >= form) {
                return Err(D::Error::custom("factors must be strictly sorted"));
            }
            last = Some(form.clone());
            factors.insert(form, exp);
        }
        Ok(FactoredTerm {
            scalar: raw.scalar,
            factors,
        })
    }
}
