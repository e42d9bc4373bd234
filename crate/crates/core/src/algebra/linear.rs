//! Symbols and homogeneous linear forms `Σ cᵢ·sᵢ + k·z`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    ChernRoot,
    EquivariantParam,
    #[serde(rename = "z")]
    ZVariable,
}

/// A variable, identified by kind, block and position inside the block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub group: u32,
    pub pos: u32,
}

impl Symbol {
    pub const Z: Symbol = Symbol {
        kind: SymbolKind::ZVariable,
        group: 0,
        pos: 0,
    };

    pub fn chern(group: u32, pos: u32) -> Self {
        Symbol {
            kind: SymbolKind::ChernRoot,
            group,
            pos,
        }
    }

    pub fn lambda(group: u32, pos: u32) -> Self {
        Symbol {
            kind: SymbolKind::EquivariantParam,
            group,
            pos,
        }
    }

    pub fn is_z(&self) -> bool {
        self.kind == SymbolKind::ZVariable
    }

    pub fn latex(&self) -> String {
        match self.kind {
            SymbolKind::ChernRoot => format!("{}_{{{}}}", chern_letter(self.group), self.pos + 1),
            SymbolKind::EquivariantParam => {
                format!("\\lambda^{{{}}}_{{{}}}", self.group + 1, self.pos + 1)
            }
            SymbolKind::ZVariable => "z".to_string(),
        }
    }
}

fn chern_letter(group: u32) -> String {
    const LETTERS: [&str; 5] = ["x", "y", "u", "v", "w"];
    LETTERS
        .get(group as usize)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("r{group}_"))
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::ChernRoot => write!(f, "{}{}", chern_letter(self.group), self.pos + 1),
            SymbolKind::EquivariantParam => write!(f, "l{}_{}", self.group + 1, self.pos + 1),
            SymbolKind::ZVariable => write!(f, "z"),
        }
    }
}

/// A homogeneous linear form in the non-`z` symbols plus an integer multiple of `z`.
///
/// Zero coefficients are never stored, so structural equality is equality of forms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<Symbol, Rational>,
    z: i64,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        assert!(!s.is_z(), "use LinearForm::z for the z variable");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(s, Rational::one());
        LinearForm { coeffs, z: 0 }
    }

    pub fn z_multiple(k: i64) -> Self {
        LinearForm {
            coeffs: BTreeMap::new(),
            z: k,
        }
    }

    /// Builds `Σ c·s + k·z`, merging repeated symbols and dropping zeros.
    pub fn from_terms<I>(terms: I, z: i64) -> Self
    where
        I: IntoIterator<Item = (Symbol, Rational)>,
    {
        let mut form = LinearForm::z_multiple(z);
        for (s, c) in terms {
            form.add_term(s, &c);
        }
        form
    }

    fn add_term(&mut self, s: Symbol, c: &Rational) {
        assert!(
            !s.is_z(),
            "z enters a linear form only through its integer multiple"
        );
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(s).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<Symbol, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, s: &Symbol) -> Rational {
        self.coeffs.get(s).cloned().unwrap_or_default()
    }

    pub fn z(&self) -> i64 {
        self.z
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.z == 0
    }

    /// True when the form has no `z` part.
    pub fn is_z_free(&self) -> bool {
        self.z == 0
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.coeffs.keys()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            out.add_term(*s, c);
        }
        out.z += other.z;
        out
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|(s, c)| (*s, -c)).collect(),
            z: -self.z,
        }
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.neg())
    }

    /// Adds `k·z`.
    pub fn shift_z(&self, k: i64) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.clone(),
            z: self.z + k,
        }
    }

    /// Multiplies the symbol part by `t`; the `z` multiple must stay integral.
    pub fn scale(&self, t: &Rational) -> Result<LinearForm> {
        let z = (t * &Rational::from_int(self.z)).to_i64().ok_or_else(|| {
            Error::InvalidRequest(format!("scaling {self} by {t} leaves z non-integral"))
        })?;
        Ok(LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .filter(|_| !t.is_zero())
                .map(|(s, c)| (*s, c * t))
                .collect(),
            z,
        })
    }

    /// Value of the symbol part at `values`, returned with the `z` multiple.
    pub fn evaluate(&self, values: &BTreeMap<Symbol, Rational>) -> Result<(Rational, i64)> {
        let mut acc = Rational::zero();
        for (s, c) in &self.coeffs {
            let v = values
                .get(s)
                .ok_or_else(|| Error::MissingSymbol(s.to_string()))?;
            acc += &(c * v);
        }
        Ok((acc, self.z))
    }

    /// Replaces each mapped symbol by a linear form; unmapped symbols are kept.
    pub fn substitute(&self, map: &BTreeMap<Symbol, LinearForm>) -> Result<LinearForm> {
        let mut out = LinearForm::z_multiple(self.z);
        for (s, c) in &self.coeffs {
            match map.get(s) {
                Some(image) => {
                    let scaled = image.scale(c)?;
                    out = out.add(&scaled);
                }
                None => out.add_term(*s, c),
            }
        }
        Ok(out)
    }

    /// Applies an integer matrix to the coefficient vector on `basis`.
    ///
    /// The form `Σ cᵢ·basis[i]` becomes `Σ (W c)ᵢ·basis[i]`; symbols outside `basis`
    /// are untouched.
    pub fn act(&self, matrix: &[Vec<i64>], basis: &[Symbol]) -> LinearForm {
        let c: Vec<Rational> = basis.iter().map(|s| self.coeff(s)).collect();
        let mut out = LinearForm::z_multiple(self.z);
        for (s, coeff) in &self.coeffs {
            if !basis.contains(s) {
                out.add_term(*s, coeff);
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            let mut v = Rational::zero();
            for (j, &w) in row.iter().enumerate() {
                if w != 0 {
                    v += &(&Rational::from_int(w) * &c[j]);
                }
            }
            out.add_term(basis[i], &v);
        }
        out
    }

    pub fn latex(&self) -> String {
        self.render(|s| s.latex(), "")
    }

    fn render(&self, name: impl Fn(&Symbol) -> String, times: &str) -> String {
        let mut out = String::new();
        let mut push = |coeff: &Rational, var: String| {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag:?}{times}"));
            }
            out.push_str(&var);
        };
        for (s, c) in &self.coeffs {
            push(c, name(s));
        }
        if self.z != 0 {
            push(&Rational::from_int(self.z), "z".to_string());
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(|s| s.to_string(), "*"))
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffJson {
    symbol: Symbol,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormJson {
    coeffs: Vec<CoeffJson>,
    z: i64,
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson {
            coeffs: self
                .coeffs
                .iter()
                .map(|(s, c)| CoeffJson {
                    symbol: *s,
                    coeff: c.clone(),
                })
                .collect(),
            z: self.z,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FormJson::deserialize(deserializer)?;
        let mut coeffs = BTreeMap::new();
        let mut last: Option<Symbol> = None;
        for CoeffJson { symbol, coeff } in raw.coeffs {
            if symbol.is_z() {
                return Err(D::Error::custom("z must be given through the \"z\" field"));
            }
            if coeff.is_zero() {
                return Err(D::Error::custom("zero coefficient in linear form"));
            }
            if last.is_some_and(|l| l >= symbol) {
                return Err(D::Error::custom(
                    "linear form symbols must be strictly sorted",
                ));
            }
            last = Some(symbol);
            coeffs.insert(symbol, coeff);
        }
        Ok(LinearForm { coeffs, z: raw.z })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> LinearForm {
        LinearForm::symbol(Symbol::chern(0, i))
    }

    #[test]
    fn arithmetic_drops_zero_coefficients() {
        let f = x(0).sub(&x(1)).add(&x(1));
        assert_eq!(f, x(0));
        assert!(x(0).sub(&x(0)).is_zero());
        assert_eq!(x(0).sub(&x(1)).shift_z(2).to_string(), "x1 - x2 + 2*z");
    }

    #[test]
    fn substitution_and_action() {
        let l = |p| LinearForm::symbol(Symbol::lambda(0, p));
        let mut map = BTreeMap::new();
        map.insert(Symbol::chern(0, 0), l(2).neg());
        map.insert(Symbol::chern(0, 1), l(0).neg());
        let f = x(0).sub(&x(1)).shift_z(1);
        assert_eq!(f.substitute(&map).unwrap(), l(0).sub(&l(2)).shift_z(1));

        let swap = vec![vec![0, 1], vec![1, 0]];
        let basis = [Symbol::chern(0, 0), Symbol::chern(0, 1)];
        assert_eq!(f.act(&swap, &basis), x(1).sub(&x(0)).shift_z(1));
    }

    #[test]
    fn rejects_non_canonical_json() {
        let bad = r#"{"coeffs":[{"symbol":{"kind":"chern_root","group":0,"pos":0},"coeff":"0/1"}],"z":0}"#;
        assert!(serde_json::from_str::<LinearForm>(bad).is_err());
        let good = serde_json::to_string(&x(0).shift_z(3)).unwrap();
        assert_eq!(
            serde_json::from_str::<LinearForm>(&good).unwrap(),
            x(0).shift_z(3)
        );
    }
}
