//! Univariate rational functions in `z` in lowest terms.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, UPoly};
use crate::error::{Error, Result};

/// `num(z) / den(z)` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZRationalFunction {
    num: UPoly,
    den: UPoly,
}

impl ZRationalFunction {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading().expect("nonzero").clone();
        let inv = lead.recip()?;
        Ok(ZRationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    /// Wraps a pair already known to be coprime; only normalizes the leading coefficient.
    pub(crate) fn from_coprime(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let inv = den
            .leading()
            .expect("nonzero denominator")
            .recip()
            .expect("nonzero");
        ZRationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        ZRationalFunction {
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        ZRationalFunction {
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        ZRationalFunction {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a rational constant, if it has no `z` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant())
            .then(|| self.num.coeffs().first().cloned().unwrap_or_default())
    }

    /// Larger of the numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        let g = self.den.gcd(&other.den);
        let (a_co, _) = self.den.div_rem(&g).expect("nonzero");
        let (b_co, _) = other.den.div_rem(&g).expect("nonzero");
        let num = self.num.mul(&b_co).add(&other.num.mul(&a_co));
        Self::new(num, a_co.mul(&other.den)).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        ZRationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // cross-cancel first to keep the factors small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let q = |p: &UPoly, g: &UPoly| {
            if g.is_zero() {
                p.clone()
            } else {
                p.div_rem(g).expect("nonzero").0
            }
        };
        let num = q(&self.num, &g1).mul(&q(&other.num, &g2));
        let den = q(&self.den, &g2).mul(&q(&other.den, &g1));
        Self::from_coprime(num, den)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZRationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..exp.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    pub fn eval(&self, z: &Rational) -> Result<Rational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(z) / &d)
    }

    /// `f(t·z)`.
    pub fn scale_variable(&self, t: &Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::ZeroScale);
        }
        Self::new(self.num.scale_variable(t), self.den.scale_variable(t))
    }

    /// Renders in `var`, e.g. `"(z + 1)/(z^2 - 2)"`.
    pub fn render(&self, var: &str) -> String {
        let n = self.num.render(var);
        if self.den.is_constant() {
            return n;
        }
        format!("({n})/({})", self.den.render(var))
    }
}

impl fmt::Display for ZRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("z"))
    }
}

impl fmt::Debug for ZRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RatFuncJson {
    num: Vec<Rational>,
    den: Vec<Rational>,
}

impl Serialize for ZRationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncJson {
            num: self.num.coeffs().to_vec(),
            den: self.den.coeffs().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ZRationalFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RatFuncJson::deserialize(deserializer)?;
        let num = UPoly::from_coeffs(raw.num);
        let den = UPoly::from_coeffs(raw.den);
        let f = ZRationalFunction::new(num.clone(), den.clone()).map_err(D::Error::custom)?;
        if f.num != num || f.den != den {
            return Err(D::Error::custom(
                "rational function is not in canonical form",
            ));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> ZRationalFunction {
        ZRationalFunction::new(UPoly::from_ints(n), UPoly::from_ints(d)).unwrap()
    }

    #[test]
    fn canonical_form_is_reduced_and_monic() {
        // (2z - 2)/(2z^2 - 2) = 1/(z + 1)
        let f = rf(&[-2, 2], &[-2, 0, 2]);
        assert_eq!(f.numerator(), &UPoly::from_ints(&[1]));
        assert_eq!(f.denominator(), &UPoly::from_ints(&[1, 1]));
        assert_eq!(rf(&[0], &[3, 1]), ZRationalFunction::zero());
    }

    #[test]
    fn field_operations() {
        let a = rf(&[1], &[0, 1]); // 1/z
        let b = rf(&[1], &[1, 1]); // 1/(z+1)
        assert_eq!(a.sub(&b), rf(&[1], &[0, 1, 1]));
        assert_eq!(a.mul(&b).recip().unwrap(), rf(&[0, 1, 1], &[1]));
        assert_eq!(a.div(&a).unwrap(), ZRationalFunction::one());
        assert_eq!(
            rf(&[0, 1], &[1, 1])
                .scale_variable(&Rational::from_int(2))
                .unwrap(),
            rf(&[0, 2], &[1, 2])
        );
        assert_eq!(rf(&[1], &[0, 1]).render("z"), "(1)/(z)");
    }
}
