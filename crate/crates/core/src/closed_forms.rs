//! Closed-form coefficients evaluated directly at numeric points.
//!
//! These share no code with [`crate::ifunction`]: every factor is a polynomial in `z` built
//! from numbers, and lifts are enumerated by a separate routine.

use crate::algebra::{sum_root_products, Rational, RootProduct, ZRationalFunction};
use crate::error::Result;

/// A product of factors `(c + hz)^±1`, summed exactly without polynomial gcds.
#[derive(Default)]
struct Product {
    factors: Vec<(Rational, Rational, i64, String)>,
}

impl Product {
    fn push(&mut self, c: &Rational, h: i64, exp: i64) {
        self.factors
            .push((c.clone(), Rational::from_int(h), exp, format!("{c} + {h}z")));
    }

    /// Multiplies by `Π_{h≤d}(c + hz) / Π_{h≤0}(c + hz)`.
    fn ratio(&mut self, c: &Rational, d: i64, sign: i64) {
        if d >= 0 {
            (1..=d).for_each(|h| self.push(c, h, sign));
        } else {
            ((d + 1)..=0).for_each(|h| self.push(c, h, -sign));
        }
    }

    fn into_root_product(self) -> Result<Option<RootProduct>> {
        RootProduct::from_linear(Rational::one(), self.factors)
    }

    fn finish(self) -> Result<ZRationalFunction> {
        Ok(sum_root_products(self.into_root_product()?.as_slice()))
    }
}

/// `Π_{h≤d}(c + hz) / Π_{h≤0}(c + hz)`.
pub fn pochhammer_ratio(c: &Rational, d: i64) -> Result<ZRationalFunction> {
    let mut p = Product::default();
    p.ratio(c, d, 1);
    p.finish()
}

/// `Π_{h≤0}(c + hz) / Π_{h≤d}(c + hz)`, which is finite even when `c = 0` and `d < 0`.
pub fn inverse_pochhammer_ratio(c: &Rational, d: i64) -> Result<ZRationalFunction> {
    let mut p = Product::default();
    p.ratio(c, d, -1);
    p.finish()
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total.max(-1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A torus-fixed point of the Grassmann bundle with numeric equivariant parameters.
///
/// `i_set ⊂ {0..n}` has size `k`, `j_set ⊂ {0..km}` has size `ℓ`; both are increasing.
#[derive(Clone, Debug)]
pub struct GrassmannBundlePoint {
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
    pub lambda1: Vec<Rational>,
    pub lambda2: Vec<Rational>,
}

impl GrassmannBundlePoint {
    /// `xᵢ = −λ¹_{Iᵢ}`.
    pub fn x(&self) -> Vec<Rational> {
        self.i_set
            .iter()
            .map(|&a| -self.lambda1[a].clone())
            .collect()
    }

    /// `yⱼ = x_{c mod k} − λ²_{c div k}` for the column `c = Jⱼ`.
    pub fn y(&self, k: usize) -> Vec<Rational> {
        let x = self.x();
        self.j_set
            .iter()
            .map(|&c| &x[c % k] - &self.lambda2[c / k])
            .collect()
    }
}

/// The `(d, e)` coefficient of the Grassmann bundle formula at a fixed point, summed over
/// the compositions of `d` into `k` parts and `e` into `ℓ` parts.
pub fn grassmann_bundle_coefficient(
    (k, n, l, m): (usize, usize, usize, usize),
    d: i64,
    e: i64,
    twisted: bool,
    point: &GrassmannBundlePoint,
) -> Result<ZRationalFunction> {
    let x = point.x();
    let y = point.y(k);
    let a = n as i64 - (l * m) as i64;
    let b = (k * m) as i64;
    let mut products = Vec::new();
    for ds in compositions(d, k) {
        for es in compositions(e, l) {
            let mut term = Product::default();
            for i in 0..k {
                for j in 0..k {
                    if i != j {
                        term.ratio(&(&x[i] - &x[j]), ds[i] - ds[j], 1);
                    }
                }
            }
            for i in 0..l {
                for j in 0..l {
                    if i != j {
                        term.ratio(&(&y[i] - &y[j]), es[i] - es[j], 1);
                    }
                }
            }
            for i in 0..k {
                for alpha in 0..n {
                    term.ratio(&(&x[i] + &point.lambda1[alpha]), ds[i], -1);
                }
            }
            for i in 0..k {
                for j in 0..l {
                    for beta in 0..m {
                        let c = &(&y[j] - &x[i]) + &point.lambda2[beta];
                        term.ratio(&c, es[j] - ds[i], -1);
                    }
                }
            }
            if twisted {
                let sx = x.iter().fold(Rational::zero(), |s, v| &s + v);
                let sy = y.iter().fold(Rational::zero(), |s, v| &s + v);
                let c = &(&Rational::from_int(a) * &sx) + &(&Rational::from_int(b) * &sy);
                term.ratio(&c, a * d + b * e, 1);
            }
            products.extend(term.into_root_product()?);
        }
    }
    Ok(sum_root_products(&products))
}

/// Degree-`d` coefficient of `ℙ^{N−1}` with hyperplane class `h`:
/// `1/Π_{k=1..d}(h + kz)^N`, or with parameters `Π_a 1/Π_{k=1..d}(h + λ_a + kz)`.
pub fn projective_space_coefficient(
    n_weights: usize,
    d: i64,
    h: &Rational,
    lambdas: Option<&[Rational]>,
) -> Result<ZRationalFunction> {
    let mut out = Product::default();
    for a in 0..n_weights {
        let c = match lambdas {
            Some(l) => h + &l[a],
            None => h.clone(),
        };
        out.ratio(&c, d, -1);
    }
    out.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UPoly;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 0), vec![Vec::<i64>::new()]);
        assert!(compositions(1, 0).is_empty());
    }

    #[test]
    fn ratios() {
        let c = Rational::from_int(0);
        assert_eq!(
            pochhammer_ratio(&c, 2).unwrap(),
            ZRationalFunction::from_poly(UPoly::from_ints(&[0, 0, 2]))
        );
        assert!(pochhammer_ratio(&c, -1).is_err());
        assert!(inverse_pochhammer_ratio(&c, -1).unwrap().is_zero());
        let one = Rational::one();
        assert_eq!(
            pochhammer_ratio(&one, -2).unwrap().recip().unwrap(),
            ZRationalFunction::from_poly(UPoly::from_ints(&[1, -1]))
        );
    }

    #[test]
    fn projective_line_degree_one() {
        let f = projective_space_coefficient(2, 1, &Rational::zero(), None).unwrap();
        assert_eq!(
            f,
            ZRationalFunction::from_poly(UPoly::from_ints(&[0, 0, 1]))
                .recip()
                .unwrap()
        );
    }
}
