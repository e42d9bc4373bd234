//! Dense univariate polynomials over ℚ.

use std::fmt;

use super::Rational;
use crate::error::{Error, Result};

/// Coefficients in ascending degree order with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    /// `c0 + c1·z`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        UPoly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        UPoly::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies in place by `(z − root)`.
    pub fn mul_root(&self, root: &Rational) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i + 1] += a;
            out[i] -= &(a * root);
        }
        UPoly::from_coeffs(out)
    }

    /// Quotient by `(z − root)` when it divides exactly.
    pub fn div_root(&self, root: &Rational) -> Option<UPoly> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(UPoly::zero());
        }
        // synthetic division from the top
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &(&carry * root);
            if i == 0 {
                return v.is_zero().then(|| UPoly::from_coeffs(q));
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn div_rem(&self, divisor: &UPoly) -> Result<(UPoly, UPoly)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?.clone();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] / &lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &(&f * d);
            }
            quot[i - dd] = f;
        }
        rem.truncate(dd);
        Ok((UPoly::from_coeffs(quot), UPoly::from_coeffs(rem)))
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            Some(l) if !l.is_one() => {
                let inv = l.recip().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p(t·z)`.
    pub fn scale_variable(&self, t: &Rational) -> UPoly {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow = &pow * t;
        }
        UPoly::from_coeffs(out)
    }

    pub(crate) fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !mag.is_one() {
                out.push_str(&format!("{mag:?}"));
                if i > 0 {
                    out.push('*');
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("z"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (z-1)(z+2) and (z-1)(z-3)
        let a = UPoly::from_ints(&[-2, 1, 1]);
        let b = UPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&UPoly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(q, UPoly::from_ints(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(
            a.div_root(&Rational::one()),
            Some(UPoly::from_ints(&[2, 1]))
        );
        assert_eq!(a.div_root(&Rational::from_int(5)), None);
        assert_eq!(UPoly::from_ints(&[2, 1]).mul_root(&Rational::one()), a);
    }

    #[test]
    fn rendering() {
        assert_eq!(UPoly::from_ints(&[1, 0, -2]).to_string(), "-2*z^2 + 1");
        assert_eq!(UPoly::from_ints(&[0, 1]).to_string(), "z");
        assert_eq!(UPoly::zero().to_string(), "0");
    }
}
