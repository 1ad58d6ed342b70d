//! Exact sparse polynomials: univariate in the perturbation `v` and
//! bivariate in `(v, lambda)`.
//!
//! Storage is an exponent-keyed map with no zero coefficients, so the zero
//! polynomial has an empty map and the support is always duplicate-free.
//! Only non-negative integer exponents exist; every characteristic
//! polynomial handled here is an ordinary polynomial, never Laurent.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::rational::{ParseRationalError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("negative exponent ({lambda_exp}, {nu_exp}) in polynomial construction")]
    NegativeExponent { lambda_exp: i64, nu_exp: i64 },
    #[error("malformed polynomial text at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
}

/// Univariate polynomial in the perturbation variable `v`, with exact
/// complex-rational coefficients. Invariant: no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    terms: BTreeMap<u32, Scalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Self { terms }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// The monomial `c * v^k`.
    pub fn monomial(k: u32, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// The bare variable `v`.
    pub fn nu() -> Self {
        Self::monomial(1, Scalar::one())
    }

    pub fn from_terms(raw: impl IntoIterator<Item = (u32, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in raw {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, k: u32) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Least exponent in the support; `None` for the zero polynomial.
    /// This is the valuation data consumed by the tropical layer.
    pub fn min_exponent(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exact division of every coefficient by a non-zero integer.
    pub fn div_int(&self, n: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c.div_int(n))).collect(),
        }
    }

    /// Horner evaluation at a double-precision point.
    pub fn eval(&self, nu: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev_exp: Option<u32> = None;
        for (k, c) in self.terms.iter().rev() {
            match prev_exp {
                None => acc = c.to_complex64(),
                Some(p) => {
                    acc = acc * nu.powu(p - k) + c.to_complex64();
                }
            }
            prev_exp = Some(*k);
        }
        match prev_exp {
            None => Complex64::new(0.0, 0.0),
            Some(k) => acc * nu.powu(k),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for UniPoly {
    /// Renders e.g. `1 + (0-2i)*v + 1/2*v^2`. Parsed back by
    /// [`UniPoly::parse`]; this is the entry format of the matrix JSON file.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.is_gaussian() && c.im.is_zero() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match k {
                0 => write!(f, "{coeff}")?,
                1 if coeff == "1" => write!(f, "v")?,
                1 => write!(f, "{coeff}*v")?,
                _ if coeff == "1" => write!(f, "v^{k}")?,
                _ => write!(f, "{coeff}*v^{k}")?,
            }
        }
        Ok(())
    }
}

impl UniPoly {
    /// Parse the format produced by `Display`:
    /// terms separated by `+`/`-` at paren depth zero, each term one of
    /// `coeff`, `coeff*v`, `coeff*v^k`, `v`, `v^k`, with `coeff` a rational
    /// or a parenthesized complex like `(1-1/2i)`.
    pub fn parse(s: &str) -> Result<Self, PolyError> {
        let bad = |reason: &str| PolyError::Parse {
            line: 0,
            reason: format!("{reason} in `{s}`"),
        };
        let mut chunks: Vec<(i32, String)> = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        let mut sign = 1i32;
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| bad("unbalanced parens"))?;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if cur.trim().is_empty() {
                        // unary sign on the upcoming term
                        if ch == '-' {
                            sign = -sign;
                        }
                        continue;
                    }
                    chunks.push((sign, cur.trim().to_string()));
                    cur = String::new();
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => cur.push(ch),
            }
        }
        if depth != 0 {
            return Err(bad("unbalanced parens"));
        }
        if cur.trim().is_empty() {
            return Err(bad("empty term"));
        }
        chunks.push((sign, cur.trim().to_string()));

        let mut poly = Self::zero();
        for (sgn, chunk) in chunks {
            let (coeff_str, exp) = match chunk.find('v') {
                None => (chunk.as_str(), 0u32),
                Some(pos) => {
                    let (head, tail) = chunk.split_at(pos);
                    let head = head.trim().trim_end_matches('*').trim();
                    let exp = match tail[1..].trim() {
                        "" => 1u32,
                        rest => {
                            let rest = rest
                                .strip_prefix('^')
                                .ok_or_else(|| bad("expected `^` after variable"))?;
                            rest.trim().parse().map_err(|_| bad("bad exponent"))?
                        }
                    };
                    (if head.is_empty() { "1" } else { head }, exp)
                }
            };
            let mut coeff = parse_complex_coeff(coeff_str)
                .map_err(|e| bad(&format!("bad coefficient: {e}")))?;
            if sgn < 0 {
                coeff = -coeff;
            }
            poly.add_term(exp, coeff);
        }
        Ok(poly)
    }
}

/// Parse a coefficient: a bare rational/decimal, or any parenthesized
/// scalar in the canonical grammar, e.g. `(1+2*i)`, `(-sqrt2*i)`.
fn parse_complex_coeff(s: &str) -> Result<Scalar, ParseRationalError> {
    let t = s.trim();
    let inner = match t.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')').unwrap_or(rest).trim(),
        None => t,
    };
    Scalar::from_str_exact(inner)
}

/// Bivariate polynomial `p(v, lambda)` with exact coefficients, keyed by
/// the exponent pair `(lambda_exp, nu_exp)`. The central algebraic object:
/// characteristic polynomials of parametric Hamiltonians live here.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

/// Build a [`BiPoly`] from raw `(lambda_exp, nu_exp, coefficient)` triples.
/// Duplicate exponent pairs are summed and zero coefficients pruned.
pub fn build_bipoly(
    raw: impl IntoIterator<Item = (i64, i64, Scalar)>,
) -> Result<BiPoly, PolyError> {
    let mut p = BiPoly::default();
    for (i, k, c) in raw {
        if i < 0 || k < 0 {
            return Err(PolyError::NegativeExponent {
                lambda_exp: i,
                nu_exp: k,
            });
        }
        p.add_term(i as u32, k as u32, c);
    }
    Ok(p)
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::default();
        p.add_term(0, 0, c);
        p
    }

    /// The monomial `c * lambda^i * v^k`.
    pub fn monomial(i: u32, k: u32, c: Scalar) -> Self {
        let mut p = Self::default();
        p.add_term(i, k, c);
        p
    }

    /// Assemble from lambda-coefficients: `coeffs[i]` is the coefficient of
    /// `lambda^i` as a polynomial in `v`.
    pub fn from_lambda_coefficients(coeffs: &[UniPoly]) -> Self {
        let mut p = Self::default();
        for (i, a) in coeffs.iter().enumerate() {
            for (k, c) in a.terms() {
                p.add_term(i as u32, k, c.clone());
            }
        }
        p
    }

    fn add_term(&mut self, i: u32, k: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, k)).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support as `(lambda_exp, nu_exp)` pairs in deterministic order.
    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, i: u32, k: u32) -> Scalar {
        self.terms
            .get(&(i, k))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Degree in lambda; `None` for the zero polynomial.
    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn nu_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, k)| *k).max()
    }

    /// Exponents `i` with a non-zero `lambda^i` coefficient, ascending.
    pub fn lambda_support(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.terms.keys().map(|(i, _)| *i).collect();
        out.dedup();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn depends_on_lambda(&self) -> bool {
        self.terms.keys().any(|(i, _)| *i > 0)
    }

    pub fn depends_on_nu(&self) -> bool {
        self.terms.keys().any(|(_, k)| *k > 0)
    }

    /// The coefficient of `lambda^i` as a polynomial in `v`; zero if the
    /// power is absent.
    pub fn lambda_coefficient(&self, i: u32) -> UniPoly {
        UniPoly::from_terms(
            self.terms
                .range((i, 0)..=(i, u32::MAX))
                .map(|((_, k), c)| (*k, c.clone())),
        )
    }

    /// The coefficient of `v^k` as a polynomial in `lambda`, keyed by the
    /// lambda exponent. Used when solving for `v` at fixed `lambda`.
    pub fn nu_coefficient(&self, k: u32) -> Vec<(u32, Scalar)> {
        self.terms
            .iter()
            .filter(|((_, kk), _)| *kk == k)
            .map(|((i, _), c)| (*i, c.clone()))
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((i, k), c) in &rhs.terms {
            out.add_term(*i, *k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for ((ia, ka), ca) in &self.terms {
            for ((ib, kb), cb) in &rhs.terms {
                out.add_term(ia + ib, ka + kb, ca * cb);
            }
        }
        out
    }

    /// Horner evaluation: coefficients of each lambda power are evaluated in
    /// `v` first, then the lambda polynomial is evaluated.
    pub fn eval(&self, nu: Complex64, lambda: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut prev: Option<u32> = None;
        for i in self.lambda_support().into_iter().rev() {
            let a_i = self.lambda_coefficient(i).eval(nu);
            match prev {
                None => acc = a_i,
                Some(p) => acc = acc * lambda.powu(p - i) + a_i,
            }
            prev = Some(i);
        }
        match prev {
            None => Complex64::new(0.0, 0.0),
            Some(i) => acc * lambda.powu(i),
        }
    }

    /// Coefficients of the univariate polynomial `p(nu, .)` in ascending
    /// lambda power, evaluated at a fixed `nu`.
    pub fn lambda_poly_at(&self, nu: Complex64) -> Vec<Complex64> {
        let d = match self.lambda_degree() {
            None => return Vec::new(),
            Some(d) => d,
        };
        (0..=d)
            .map(|i| self.lambda_coefficient(i).eval(nu))
            .collect()
    }

    /// Coefficients of the univariate polynomial `p(., lambda)` in ascending
    /// `v` power, evaluated at a fixed `lambda`.
    pub fn nu_poly_at(&self, lambda: Complex64) -> Vec<Complex64> {
        let d = match self.nu_degree() {
            None => return Vec::new(),
            Some(d) => d,
        };
        (0..=d)
            .map(|k| {
                self.nu_coefficient(k)
                    .iter()
                    .map(|(i, c)| c.to_complex64() * lambda.powu(*i))
                    .sum()
            })
            .collect()
    }

    /// Serialize in the line-based exchange format: one term per line,
    /// `i k re_num/re_den im_num/im_den`, sorted by exponent pair. Only
    /// Gaussian-rational coefficients fit this format.
    pub fn to_text(&self) -> Result<String, PolyError> {
        let mut out = String::new();
        for ((i, k), c) in &self.terms {
            out.push_str(&format!("{} {} {}\n", i, k, c.to_fraction_pair()?));
        }
        Ok(out)
    }

    /// Parse the line-based exchange format. Blank lines and `#` comments
    /// are skipped.
    pub fn from_text(text: &str) -> Result<Self, PolyError> {
        let mut raw = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(PolyError::Parse {
                    line: lineno + 1,
                    reason: format!("expected 4 fields, got {}", fields.len()),
                });
            }
            let i: i64 = fields[0].parse().map_err(|_| PolyError::Parse {
                line: lineno + 1,
                reason: "bad lambda exponent".into(),
            })?;
            let k: i64 = fields[1].parse().map_err(|_| PolyError::Parse {
                line: lineno + 1,
                reason: "bad nu exponent".into(),
            })?;
            let c = Scalar::from_fraction_pair(fields[2], fields[3])?;
            raw.push((i, k, c));
        }
        build_bipoly(raw)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in self.lambda_support().into_iter().rev() {
            let a = self.lambda_coefficient(i);
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = format!("{a}");
            let needs_parens = a.terms().count() > 1
                || coeff.contains('i')
                || coeff.contains('+')
                || coeff.contains("sqrt2");
            let rendered = if needs_parens {
                format!("({coeff})")
            } else {
                coeff.clone()
            };
            match i {
                0 => write!(f, "{rendered}")?,
                1 if coeff == "1" => write!(f, "lambda")?,
                1 => write!(f, "{rendered}*lambda")?,
                _ if coeff == "1" => write!(f, "lambda^{i}")?,
                _ => write!(f, "{rendered}*lambda^{i}")?,
            }
        }
        Ok(())
    }
}
