//! Sparse multivariate polynomials over ℚ, used for the opt-in exact expansion path.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LinearForm, Rational, Symbol};

/// A monomial as sorted `(symbol, exponent)` pairs with positive exponents.
///
/// Ordered lexicographically with earlier symbols more significant, so `x1 > x2 > … > z`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Symbol, u32> = self.0.iter().copied().collect();
        for (s, e) in &other.0 {
            *map.entry(*s).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut map: BTreeMap<Symbol, u32> = self.0.iter().copied().collect();
        for (s, e) in &other.0 {
            let have = map.get_mut(s)?;
            if *have < *e {
                return None;
            }
            *have -= e;
        }
        Some(Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect()))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0.iter(), other.0.iter());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| {
                if *e == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `Σ coeff·monomial` with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MultiPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(s: Symbol) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(s), Rational::one());
        p
    }

    pub fn from_linear(form: &LinearForm) -> Self {
        let mut p = Self::zero();
        for (s, c) in form.coeffs() {
            p.add_term(Monomial::var(*s), c.clone());
        }
        if form.z() != 0 {
            p.add_term(Monomial::var(Symbol::Z), Rational::from_int(form.z()));
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` by lex-order division; `None` if a remainder is left.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            let mut step = Self::zero();
            step.add_term(qm, qc);
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        Some(quot)
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{mag:?}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag:?}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let x = MultiPolynomial::var(Symbol::chern(0, 0));
        let y = MultiPolynomial::var(Symbol::chern(0, 1));
        let num = x.mul(&x).mul(&x).sub(&y.mul(&y).mul(&y));
        let q = num.div_exact(&x.sub(&y)).unwrap();
        assert_eq!(q.to_string(), "x1^2 + x1*x2 + x2^2");
        assert!(x
            .add(&MultiPolynomial::constant(Rational::one()))
            .div_exact(&y)
            .is_none());
    }
}
