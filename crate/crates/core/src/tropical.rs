//! Valuations, tropicalization, tropical roots, and the order classifier
//! for degeneracies at `v = 0`.
//!
//! The tropicalization of `p = sum_i a_i(v) lambda^i` is the min-plus
//! function `min_i { val(a_i) + i*w }`. Its bend locus (the points where the
//! minimum is attained by at least two terms) equals the set of valuations
//! of the non-zero roots of `p`, so the leading Puiseux exponents of the
//! eigenvalue branches can be read off a lower convex hull without any
//! numerics.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::poly::{BiPoly, UniPoly};

/// Exact rational used for tropical roots and bend-locus arithmetic.
/// `Ratio` keeps values reduced with a positive denominator.
pub type Fraction = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropicalError {
    #[error("tropicalization of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("tropical polynomial has no finite term")]
    NoFiniteTerm,
    #[error("duplicate lambda exponent in tropical polynomial")]
    DuplicateExponent,
}

/// An integer extended with a positive-infinity marker; the value space of
/// the polynomial valuation (`val(0) = infinity`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedInt {
    Finite(i64),
    Infinity,
}

impl ExtendedInt {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedInt::Finite(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            ExtendedInt::Finite(v) => Some(*v),
            ExtendedInt::Infinity => None,
        }
    }
}

impl PartialOrd for ExtendedInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedInt {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedInt::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedInt::Finite(v) => write!(f, "{v}"),
            ExtendedInt::Infinity => write!(f, "inf"),
        }
    }
}

/// Valuation of a polynomial in `v`: the least exponent in the support,
/// infinity exactly for the zero polynomial.
pub fn valuation(u: &UniPoly) -> ExtendedInt {
    match u.min_exponent() {
        Some(k) => ExtendedInt::Finite(k as i64),
        None => ExtendedInt::Infinity,
    }
}

/// One evaluation step of the tropical semiring `(R u {inf}, min, +)`:
/// returns `(a (+) b, a (.) b) = (min(a, b), a + b)`. Infinity is the
/// additive identity and absorbs under multiplication; `f64::INFINITY`
/// implements both natively.
pub fn trop_semiring(a: f64, b: f64) -> (f64, f64) {
    (a.min(b), a + b)
}

/// The min-plus function `min_i(c_i + i*w)` as a sorted term list.
/// Terms with infinite intercept are permitted when hand-built but never
/// contribute to evaluation or roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPolynomial {
    terms: Vec<(u32, ExtendedInt)>,
}

impl TropicalPolynomial {
    /// Build from `(lambda_exp, intercept)` pairs. Exponents must be
    /// distinct and at least one intercept finite.
    pub fn new(mut terms: Vec<(u32, ExtendedInt)>) -> Result<Self, TropicalError> {
        terms.sort_by_key(|(i, _)| *i);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(TropicalError::DuplicateExponent);
        }
        if !terms.iter().any(|(_, c)| c.is_finite()) {
            return Err(TropicalError::NoFiniteTerm);
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(u32, ExtendedInt)] {
        &self.terms
    }

    fn finite_terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms
            .iter()
            .filter_map(|(i, c)| c.finite().map(|c| (*i as i64, c)))
    }

    /// Exact evaluation at a rational slope `w`.
    pub fn eval(&self, w: Fraction) -> Fraction {
        self.finite_terms()
            .map(|(i, c)| Fraction::from_integer(c) + Fraction::from_integer(i) * w)
            .min()
            .expect("at least one finite term")
    }

    /// Human-readable min-plus expression, e.g. `min(1, 2w)`, terms ordered
    /// by ascending lambda exponent.
    pub fn render(&self) -> String {
        let body: Vec<String> = self
            .finite_terms()
            .map(|(i, c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 0) => "\u{3c9}".to_string(),
                (i, 0) => format!("{i}\u{3c9}"),
                (1, c) => format!("\u{3c9}+{c}"),
                (i, c) => format!("{i}\u{3c9}+{c}"),
            })
            .collect();
        format!("min({})", body.join(", "))
    }
}

/// Tropicalize a non-zero bivariate polynomial: one term
/// `(i, val(a_i))` per lambda power in the support.
pub fn tropicalize(p: &BiPoly) -> Result<TropicalPolynomial, TropicalError> {
    if p.is_zero() {
        return Err(TropicalError::ZeroPolynomial);
    }
    let terms = p
        .lambda_support()
        .into_iter()
        .map(|i| (i, valuation(&p.lambda_coefficient(i))))
        .collect();
    TropicalPolynomial::new(terms)
}

/// Convenience: `trop_eval(T, w)`.
pub fn trop_eval(t: &TropicalPolynomial, w: Fraction) -> Fraction {
    t.eval(w)
}

/// Tropical roots with multiplicities, sorted ascending.
///
/// Computed as the negated slopes of the lower convex hull of the points
/// `(i, c_i)` over exact integers (monotone chain); the multiplicity of a
/// root is the horizontal width of its hull edge. A polynomial with a
/// single finite term has no roots.
pub fn tropical_roots(t: &TropicalPolynomial) -> Vec<(Fraction, u32)> {
    let pts: Vec<(i64, i64)> = t.finite_terms().collect();
    let hull = lower_hull(&pts);
    let mut roots: Vec<(Fraction, u32)> = hull
        .windows(2)
        .map(|e| {
            let (i0, c0) = e[0];
            let (i1, c1) = e[1];
            let slope = Fraction::new(c1 - c0, i1 - i0);
            (-slope, (i1 - i0) as u32)
        })
        .collect();
    roots.sort_by_key(|(r, _)| *r);
    roots
}

/// Lower convex hull of points with strictly increasing x, left to right.
/// Collinear interior points are dropped so each edge is a maximal segment.
fn lower_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    debug_assert!(pts.windows(2).all(|w| w[0].0 < w[1].0));
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len());
    for &p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // keep b only if it turns strictly right (below the chord a-p)
            let cross = (b.0 - a.0) as i128 * (p.1 - a.1) as i128
                - (b.1 - a.1) as i128 * (p.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Degeneracy classification at `v = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpKind {
    /// Order `N`: the maximum absolute denominator over the non-zero
    /// tropical roots in reduced form. `Order(1)` means purely analytic
    /// (integer-exponent) splitting, which is not an exceptional point.
    Order(u32),
    /// No non-zero tropical roots: every branch has zero leading exponent.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPClassification {
    pub kind: EpKind,
    /// All tropical roots with multiplicities, zero roots included.
    pub roots: Vec<(Fraction, u32)>,
}

impl EPClassification {
    pub fn order(&self) -> Option<u32> {
        match self.kind {
            EpKind::Order(n) => Some(n),
            EpKind::Degenerate => None,
        }
    }

    pub fn is_ep(&self) -> bool {
        matches!(self.kind, EpKind::Order(n) if n >= 2)
    }
}

impl fmt::Display for EPClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EpKind::Order(1) => write!(f, "analytic splitting (order 1; not an EP)"),
            EpKind::Order(n) => write!(f, "EP order {n}"),
            EpKind::Degenerate => write!(f, "degenerate point (no non-zero tropical roots)"),
        }
    }
}

/// Classify the point `v = 0` from a tropicalization: degenerate when no
/// non-zero tropical root exists, otherwise the order is the maximum
/// absolute denominator over the non-zero roots. Zero roots are listed but
/// never contribute to the order.
pub fn ep_order(t: &TropicalPolynomial) -> EPClassification {
    let roots = tropical_roots(t);
    let order = roots
        .iter()
        .filter(|(r, _)| *r.numer() != 0)
        .map(|(r, _)| *r.denom() as u32)
        .max();
    match order {
        Some(n) => EPClassification {
            kind: EpKind::Order(n),
            roots,
        },
        None => EPClassification {
            kind: EpKind::Degenerate,
            roots,
        },
    }
}

/// Render a root as `m/n` (or `m` when integral).
pub fn render_fraction(r: Fraction) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
