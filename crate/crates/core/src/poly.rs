//! Integer polynomials in one and two variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Univariate polynomial; `coeffs[i]` is the coefficient of t^i.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial1 {
    coeffs: Vec<BigInt>,
}

impl Polynomial1 {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial1 { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial1 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// c·t^e
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    /// The polynomial t.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// self(inner(t))
    pub fn compose(&self, inner: &Polynomial1) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pretty(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), vec![(var, i as u32)]));
        pretty_terms(terms)
    }

    pub fn to_json(&self, var: &str) -> PolyJson {
        PolyJson {
            vars: vec![var.to_string()],
            terms: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| TermJson { exp: vec![i as u32], coef: coef_json(c) })
                .collect(),
            pretty: self.pretty(var),
        }
    }
}

impl fmt::Display for Polynomial1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty("t"))
    }
}

impl Add for &Polynomial1 {
    type Output = Polynomial1;
    fn add(self, rhs: &Polynomial1) -> Polynomial1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial1::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial1 {
    type Output = Polynomial1;
    fn sub(self, rhs: &Polynomial1) -> Polynomial1 {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial1::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial1 {
    type Output = Polynomial1;
    fn mul(self, rhs: &Polynomial1) -> Polynomial1 {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial1::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial1::new(out)
    }
}

impl Neg for &Polynomial1 {
    type Output = Polynomial1;
    fn neg(self) -> Polynomial1 {
        Polynomial1::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Bivariate polynomial keyed by exponent pairs (i, j) for x^i y^j.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial2 {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Polynomial2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * x.pow(i) * y.pow(j))
            .sum()
    }

    /// self(px(t), py(t))
    pub fn substitute(&self, px: &Polynomial1, py: &Polynomial1) -> Polynomial1 {
        let mut acc = Polynomial1::zero();
        for (&(i, j), c) in &self.terms {
            let term = &(&px.pow(i as usize) * &py.pow(j as usize)).scale(c);
            acc = &acc + term;
        }
        acc
    }

    pub fn pretty(&self) -> String {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| (c.clone(), vec![("x", i), ("y", j)]));
        pretty_terms(terms)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: vec!["x".into(), "y".into()],
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| TermJson { exp: vec![i, j], coef: coef_json(c) })
                .collect(),
            pretty: self.pretty(),
        }
    }
}

impl fmt::Display for Polynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
    pub pretty: String,
}

/// Integers that fit in i64 become JSON numbers; larger ones become strings.
pub fn coef_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

fn pretty_terms<'a>(terms: impl Iterator<Item = (BigInt, Vec<(&'a str, u32)>)>) -> String {
    let mut out = String::new();
    for (c, vars) in terms {
        let mono: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let mag = c.abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono.join("*")
        } else {
            format!("{}*{}", mag, mono.join("*"))
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Polynomial1::from_i64(&[-1, 1]);
        let q = p.pow(3);
        assert_eq!(q, Polynomial1::from_i64(&[-1, 3, -3, 1]));
        assert_eq!(q.eval(&BigInt::from(1)), BigInt::zero());
        assert_eq!(q.pretty("t"), "t^3 - 3*t^2 + 3*t - 1");
        assert_eq!(Polynomial1::zero().pretty("t"), "0");
    }

    #[test]
    fn compose_and_substitute() {
        let p = Polynomial1::from_i64(&[0, 0, 1]);
        let inner = Polynomial1::from_i64(&[1, 1]);
        assert_eq!(p.compose(&inner), Polynomial1::from_i64(&[1, 2, 1]));
        let mut t = Polynomial2::zero();
        t.add_term(1, 0, BigInt::one());
        t.add_term(0, 0, BigInt::from(4));
        assert_eq!(t.pretty(), "x + 4");
        let s = t.substitute(&Polynomial1::from_i64(&[1, -1]), &Polynomial1::zero());
        assert_eq!(s, Polynomial1::from_i64(&[5, -1]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
