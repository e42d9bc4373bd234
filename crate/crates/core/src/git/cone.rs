//! Effective cones of degree lifts and exact integer-point enumeration in their fibers.

use serde::{Deserialize, Serialize};

use super::linalg::{dot, nullspace, primitive, rank};
use crate::algebra::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeProvenance {
    UserSupplied,
    BuiltInTarget,
}

/// `{β̃ ∈ ℤ^r : c·β̃ ≥ 0 for every listed c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveCone {
    rank: usize,
    inequalities: Vec<Vec<i64>>,
    provenance: ConeProvenance,
}

impl EffectiveCone {
    pub fn new(
        rank: usize,
        inequalities: Vec<Vec<i64>>,
        provenance: ConeProvenance,
    ) -> Result<Self> {
        if let Some(bad) = inequalities.iter().find(|c| c.len() != rank) {
            return Err(Error::MalformedPresentation(format!(
                "cone inequality {bad:?} does not have length {rank}"
            )));
        }
        Ok(EffectiveCone {
            rank,
            inequalities,
            provenance,
        })
    }

    /// The nonnegative orthant `β̃ᵢ ≥ 0`.
    pub fn orthant(rank: usize, provenance: ConeProvenance) -> Self {
        let inequalities = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        EffectiveCone {
            rank,
            inequalities,
            provenance,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn inequalities(&self) -> &[Vec<i64>] {
        &self.inequalities
    }

    pub fn provenance(&self) -> ConeProvenance {
        self.provenance
    }

    pub fn contains(&self, lift: &[i64]) -> bool {
        self.inequalities.iter().all(|c| dot(c, lift) >= 0)
    }

    /// Primitive generators of the extreme rays, sorted. Fails for cones containing a line.
    pub fn generators(&self) -> Result<Vec<Vec<i64>>> {
        let r = self.rank;
        let rows: Vec<Vec<Rational>> = self
            .inequalities
            .iter()
            .map(|c| c.iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        if rank(&rows) < r {
            return Err(Error::InvalidRequest(
                "effective cone is not pointed".into(),
            ));
        }
        let mut rays = Vec::new();
        for subset in subsets(rows.len(), r - 1) {
            let chosen: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].clone()).collect();
            let ns = nullspace(&chosen, r);
            if ns.len() != 1 {
                continue;
            }
            let v = primitive(&ns[0]);
            for cand in [v.clone(), v.iter().map(|x| -x).collect()] {
                if self.contains(&cand) && !rays.contains(&cand) {
                    rays.push(cand);
                }
            }
        }
        rays.sort();
        Ok(rays)
    }
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

/// `a·x ≥ b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    a: Vec<Rational>,
    b: Rational,
}

impl Constraint {
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.a.iter().find(|x| !x.is_zero()).map(Rational::abs) {
            let inv = lead.recip().expect("nonzero");
            self.a.iter_mut().for_each(|x| *x = &*x * &inv);
            self.b = &self.b * &inv;
        }
        self
    }
}

enum Projection {
    Infeasible,
    Bounds(Option<Rational>, Option<Rational>),
}

/// Fourier–Motzkin projection of the constraint system onto coordinate `keep`.
fn project(cons: &[Constraint], keep: usize) -> Projection {
    let n = cons.first().map_or(0, |c| c.a.len());
    let mut sys: Vec<Constraint> = cons.to_vec();
    for v in (0..n).filter(|&v| v != keep) {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in sys {
            if c.a[v].is_zero() {
                rest.push(c);
            } else if c.a[v].is_negative() {
                neg.push(c);
            } else {
                pos.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let (fp, fq) = (-q.a[v].clone(), p.a[v].clone());
                let a =
                    p.a.iter()
                        .zip(&q.a)
                        .map(|(x, y)| &(x * &fp) + &(y * &fq))
                        .collect();
                rest.push(
                    Constraint {
                        a,
                        b: &(&p.b * &fp) + &(&q.b * &fq),
                    }
                    .normalized(),
                );
            }
        }
        let mut kept = Vec::new();
        for c in rest {
            if c.a.iter().all(Rational::is_zero) {
                if c.b > Rational::zero() {
                    return Projection::Infeasible;
                }
                continue;
            }
            kept.push(c);
        }
        kept.sort();
        kept.dedup();
        sys = kept;
    }
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
    for c in &sys {
        let a = &c.a[keep];
        if a.is_zero() {
            if c.b > Rational::zero() {
                return Projection::Infeasible;
            }
            continue;
        }
        let bound = &c.b / a;
        if a.is_negative() {
            hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
        } else {
            lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return Projection::Infeasible;
        }
    }
    Projection::Bounds(lo, hi)
}

fn int_range(lo: &Rational, hi: &Rational) -> std::ops::RangeInclusive<i64> {
    let l = num_traits::ToPrimitive::to_i64(&lo.ceil()).expect("bounded");
    let h = num_traits::ToPrimitive::to_i64(&hi.floor()).expect("bounded");
    l..=h
}

/// All integer points of `{x : cone, B·x = class}` in lexicographic order.
///
/// `basis` holds the rows of `B`. Errors with [`Error::UnboundedFiber`] when the real fiber
/// is unbounded.
pub fn enumerate_fiber(
    cone: &EffectiveCone,
    basis: &[Vec<i64>],
    class: &[i64],
) -> Result<Vec<Vec<i64>>> {
    if basis.len() != class.len() {
        return Err(Error::InvalidRequest(format!(
            "class {class:?} has {} entries but the class basis has {}",
            class.len(),
            basis.len()
        )));
    }
    let r = cone.rank();
    let q = |v: &[i64]| v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>();
    let mut cons: Vec<Constraint> = cone
        .inequalities()
        .iter()
        .map(|c| Constraint {
            a: q(c),
            b: Rational::zero(),
        })
        .collect();
    for (row, &value) in basis.iter().zip(class) {
        cons.push(Constraint {
            a: q(row),
            b: Rational::from_int(value),
        });
        cons.push(Constraint {
            a: row.iter().map(|&x| Rational::from_int(-x)).collect(),
            b: Rational::from_int(-value),
        });
    }
    if r == 0 {
        return Ok(vec![Vec::new()]);
    }
    for v in 0..r {
        match project(&cons, v) {
            Projection::Infeasible => return Ok(Vec::new()),
            Projection::Bounds(Some(_), Some(_)) => {}
            Projection::Bounds(..) => return Err(Error::UnboundedFiber(class.to_vec())),
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(r);
    descend(&cons, &mut prefix, r, &mut out);
    Ok(out)
}

fn descend(cons: &[Constraint], prefix: &mut Vec<i64>, r: usize, out: &mut Vec<Vec<i64>>) {
    let i = prefix.len();
    if i == r {
        out.push(prefix.clone());
        return;
    }
    let (lo, hi) = match project(cons, i) {
        Projection::Bounds(Some(l), Some(h)) => (l, h),
        _ => return,
    };
    for v in int_range(&lo, &hi) {
        let fixed: Vec<Constraint> = cons
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.b -= &(&c.a[i] * &Rational::from_int(v));
                c.a[i] = Rational::zero();
                c
            })
            .collect();
        if fixed
            .iter()
            .any(|c| c.a.iter().all(Rational::is_zero) && c.b > Rational::zero())
        {
            continue;
        }
        prefix.push(v);
        descend(&fixed, prefix, r, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_in_the_orthant() {
        let cone = EffectiveCone::orthant(2, ConeProvenance::BuiltInTarget);
        let lifts = enumerate_fiber(&cone, &[vec![1, 1]], &[2]).unwrap();
        assert_eq!(lifts, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(cone.generators().unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn grassmann_bundle_fiber() {
        let cone = EffectiveCone::orthant(3, ConeProvenance::BuiltInTarget);
        let basis = [vec![1, 1, 0], vec![0, 0, 1]];
        let lifts = enumerate_fiber(&cone, &basis, &[1, 1]).unwrap();
        assert_eq!(lifts, vec![vec![0, 1, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn unbounded_and_empty_fibers() {
        // only d1 >= 0: the fiber d1 + d2 = 1 is a half-line
        let cone = EffectiveCone::new(2, vec![vec![1, 0]], ConeProvenance::UserSupplied).unwrap();
        assert_eq!(
            enumerate_fiber(&cone, &[vec![1, 1]], &[1]),
            Err(Error::UnboundedFiber(vec![1]))
        );
        let orth = EffectiveCone::orthant(2, ConeProvenance::UserSupplied);
        assert!(enumerate_fiber(&orth, &[vec![1, 1]], &[-1])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn generators_of_a_skew_cone() {
        // d1 >= d2 >= 0
        let cone = EffectiveCone::new(
            2,
            vec![vec![1, -1], vec![0, 1]],
            ConeProvenance::UserSupplied,
        )
        .unwrap();
        assert_eq!(cone.generators().unwrap(), vec![vec![1, 0], vec![1, 1]]);
        let line = EffectiveCone::new(2, vec![vec![1, 0]], ConeProvenance::UserSupplied).unwrap();
        assert!(line.generators().is_err());
    }
}
