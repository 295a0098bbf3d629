use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::numeric::KahanSum;

/// Named arithmetic functions the sieve knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "s", rename_all = "snake_case")]
pub enum ArithFn {
    /// `d(n)`, the number of divisors.
    Divisors,
    /// `μ(n)`.
    Mobius,
    /// `μ(r)` when `n = r²`, zero otherwise.
    MobiusAtSquares,
    /// `μ(n)²`, the squarefree indicator.
    Squarefree,
    /// Liouville `λ(n) = (-1)^Ω(n)`.
    Liouville,
    /// `ω(n)`, distinct prime factors.
    DistinctPrimes,
    /// `Ω(n)`, prime factors with multiplicity.
    PrimeFactors,
    /// `2^ω(n)`, the number of squarefree divisors.
    SquarefreeDivisors,
    /// Dirichlet unit `δ`.
    Unit,
    /// Constant one.
    One,
    /// Euler's totient.
    Totient,
    /// `σ_s(n) = Σ_{d|n} d^s`.
    DivisorPower(f64),
    /// Jordan's `J_s(n) = Σ_{d|n} d^s μ(n/d)`.
    Jordan(f64),
    /// `n^s`.
    Power(f64),
}

impl ArithFn {
    /// Builds a function from its short name. `s` must be given exactly for
    /// the parametrised families.
    pub fn from_name(name: &str, s: Option<f64>) -> Result<Self> {
        let needs_s = matches!(name, "sigma" | "jordan" | "power");
        match (needs_s, s) {
            (true, None) => return param(format!("function '{name}' needs an exponent s")),
            (false, Some(_)) => return param(format!("function '{name}' takes no exponent")),
            _ => {}
        }
        if let Some(s) = s {
            if !s.is_finite() {
                return param("exponent s must be finite");
            }
        }
        Ok(match name {
            "d" | "divisors" => ArithFn::Divisors,
            "mu" | "mobius" => ArithFn::Mobius,
            "mu_tilde" => ArithFn::MobiusAtSquares,
            "mu2" | "squarefree" => ArithFn::Squarefree,
            "lambda" | "liouville" => ArithFn::Liouville,
            "omega" => ArithFn::DistinctPrimes,
            "big_omega" => ArithFn::PrimeFactors,
            "theta" => ArithFn::SquarefreeDivisors,
            "delta" => ArithFn::Unit,
            "one" => ArithFn::One,
            "phi" | "totient" => ArithFn::Totient,
            "sigma" => ArithFn::DivisorPower(s.unwrap()),
            "jordan" => ArithFn::Jordan(s.unwrap()),
            "power" => ArithFn::Power(s.unwrap()),
            other => return param(format!("unknown arithmetic function '{other}'")),
        })
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            ArithFn::Divisors => "d",
            ArithFn::Mobius => "mu",
            ArithFn::MobiusAtSquares => "mu_tilde",
            ArithFn::Squarefree => "mu2",
            ArithFn::Liouville => "lambda",
            ArithFn::DistinctPrimes => "omega",
            ArithFn::PrimeFactors => "big_omega",
            ArithFn::SquarefreeDivisors => "theta",
            ArithFn::Unit => "delta",
            ArithFn::One => "one",
            ArithFn::Totient => "phi",
            ArithFn::DivisorPower(_) => "sigma",
            ArithFn::Jordan(_) => "jordan",
            ArithFn::Power(_) => "power",
        }
    }

    pub fn exponent(&self) -> Option<f64> {
        match *self {
            ArithFn::DivisorPower(s) | ArithFn::Jordan(s) | ArithFn::Power(s) => Some(s),
            _ => None,
        }
    }

    /// Whether values are stored exactly as integers.
    pub fn is_integer_valued(&self) -> bool {
        self.exponent().is_none()
    }

    pub fn is_multiplicative(&self) -> bool {
        !matches!(self, ArithFn::DistinctPrimes | ArithFn::PrimeFactors)
    }

    pub fn is_additive(&self) -> bool {
        matches!(self, ArithFn::DistinctPrimes | ArithFn::PrimeFactors)
    }
}

impl fmt::Display for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent() {
            Some(s) => write!(f, "{}_{}", self.short_name(), s),
            None => f.write_str(self.short_name()),
        }
    }
}

impl FromStr for ArithFn {
    type Err = Error;

    /// Parses `name` or `name_s`, e.g. `sigma_2` or `jordan_1.5`.
    fn from_str(text: &str) -> Result<Self> {
        if let Some((head, tail)) = text.rsplit_once('_') {
            if let Ok(s) = tail.parse::<f64>() {
                if matches!(head, "sigma" | "jordan" | "power") {
                    return ArithFn::from_name(head, Some(s));
                }
            }
        }
        ArithFn::from_name(text, None)
    }
}

/// Table storage: exact integers or 64-bit floats.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Int(Vec<i64>),
    Real(Vec<f64>),
}

impl Values {
    fn len(&self) -> usize {
        match self {
            Values::Int(v) => v.len(),
            Values::Real(v) => v.len(),
        }
    }
}

/// Values of an arithmetic function on `1..=N` with running sums.
///
/// Storage is 1-based: slot 0 holds zero so that `values[k]` is `f(k)`.
#[derive(Debug, Clone)]
pub struct ArithmeticTable {
    label: String,
    kind: Option<ArithFn>,
    values: Values,
    summatory: Vec<f64>,
    abs_summatory: Vec<f64>,
}

impl ArithmeticTable {
    /// Wraps precomputed values (slot 0 ignored and reset to zero).
    pub fn from_values(label: impl Into<String>, kind: Option<ArithFn>, mut values: Values) -> Result<Self> {
        if values.len() < 2 {
            return param("a table needs N >= 1");
        }
        match &mut values {
            Values::Int(v) => v[0] = 0,
            Values::Real(v) => v[0] = 0.0,
        }
        let (summatory, abs_summatory) = prefix_sums(&values);
        Ok(Self {
            label: label.into(),
            kind,
            values,
            summatory,
            abs_summatory,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> Option<ArithFn> {
        self.kind
    }

    /// Upper bound `N`.
    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn storage(&self) -> &Values {
        &self.values
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.values, Values::Int(_))
    }

    /// `f(k)` for `1 ≤ k ≤ N`.
    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        debug_assert!(k >= 1 && k <= self.len());
        match &self.values {
            Values::Int(v) => v[k] as f64,
            Values::Real(v) => v[k],
        }
    }

    /// Exact value when the table is integer-valued.
    pub fn get_int(&self, k: usize) -> Option<i64> {
        match &self.values {
            Values::Int(v) => Some(v[k]),
            Values::Real(_) => None,
        }
    }

    /// All values `f(1..=N)` as floats.
    pub fn to_f64(&self) -> Vec<f64> {
        (1..=self.len()).map(|k| self.get(k)).collect()
    }

    /// `Σ_{k≤n} f(k)`; zero at `n = 0`.
    pub fn summatory(&self, n: usize) -> f64 {
        self.summatory[n]
    }

    /// `W_n = Σ_{k≤n} |f(k)|`.
    pub fn abs_summatory(&self, n: usize) -> f64 {
        self.abs_summatory[n]
    }

    pub fn is_nonnegative(&self) -> bool {
        match &self.values {
            Values::Int(v) => v.iter().all(|&x| x >= 0),
            Values::Real(v) => v.iter().all(|&x| x >= 0.0),
        }
    }

    pub(crate) fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self.kind = None;
        self
    }

    /// Pointwise equality on `1..=N`; floats compared with a relative tolerance.
    pub fn agrees_with(&self, other: &ArithmeticTable, rel_tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        match (&self.values, &other.values) {
            (Values::Int(a), Values::Int(b)) => a[1..] == b[1..],
            _ => (1..=self.len()).all(|k| {
                let (x, y) = (self.get(k), other.get(k));
                (x - y).abs() <= rel_tol * x.abs().max(y.abs()).max(1.0)
            }),
        }
    }
}

fn prefix_sums(values: &Values) -> (Vec<f64>, Vec<f64>) {
    match values {
        Values::Int(v) => {
            let mut s = Vec::with_capacity(v.len());
            let mut a = Vec::with_capacity(v.len());
            let (mut acc, mut abs) = (0i128, 0i128);
            for &x in v {
                acc += x as i128;
                abs += (x as i128).abs();
                s.push(acc as f64);
                a.push(abs as f64);
            }
            (s, a)
        }
        Values::Real(v) => {
            let mut s = Vec::with_capacity(v.len());
            let mut a = Vec::with_capacity(v.len());
            let (mut acc, mut abs) = (KahanSum::new(), KahanSum::new());
            for &x in v {
                acc.add(x);
                abs.add(x.abs());
                s.push(acc.value());
                a.push(abs.value());
            }
            (s, a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn name_round_trip() {
        for f in [
            ArithFn::Divisors,
            ArithFn::MobiusAtSquares,
            ArithFn::DivisorPower(2.0),
            ArithFn::Jordan(1.5),
            ArithFn::Power(-2.0),
        ] {
            assert_eq!(f.to_string().parse::<ArithFn>().unwrap(), f);
        }
    }

    #[test]
    fn exponent_rules() {
        assert!(ArithFn::from_name("sigma", None).is_err());
        assert!(ArithFn::from_name("d", Some(1.0)).is_err());
        assert!(ArithFn::from_name("nope", None).is_err());
    }

    #[test]
    fn prefix_sums_exact() {
        let t = ArithmeticTable::from_values("x", None, Values::Int(vec![0, 1, -2, 3])).unwrap();
        assert_eq!(t.summatory(3), 2.0);
        assert_eq!(t.abs_summatory(3), 6.0);
        assert_eq!(t.summatory(0), 0.0);
    }
}
