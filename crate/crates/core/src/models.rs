//! Exact builders for the Hamiltonian families studied by the engine, each
//! parameterized by rationals and producing a [`ParametricMatrix`] in the
//! formal perturbation variable `v`.
//!
//! Irrational inputs (sqrt(2), 1/sqrt(3), cos(pi/4)) enter as caller-
//! supplied rational approximations; [`presets`] ships 12-significant-digit
//! values. The degeneracy structure of these families depends only on which
//! coefficients vanish, and those cancellations run through exact rational
//! relations (`t1 = gamma`, `tan(phi) = -1`), never through the irrational
//! parameters themselves.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::charpoly::ParametricMatrix;
use crate::poly::UniPoly;
use crate::rational::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
}

/// 12-significant-digit rational approximations for the irrational inputs
/// used by the stock configurations. Parse with
/// [`crate::rational::rational_from_str`].
pub mod presets {
    /// sqrt(2)
    pub const SQRT_2: &str = "1.41421356237";
    /// 1/sqrt(3) = tan(pi/6)
    pub const INV_SQRT_3: &str = "0.577350269190";
    /// 1/sqrt(2) = cos(pi/4) = sin(pi/4)
    pub const FRAC_1_SQRT_2: &str = "0.707106781187";
}

fn real(q: &BigRational) -> Scalar {
    Scalar::real(q.clone())
}

fn imag(q: &BigRational) -> Scalar {
    Scalar::imag(q.clone())
}

/// Two coupled sites with balanced gain and loss; the perturbation is the
/// onsite detuning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSiteParams {
    pub kappa: BigRational,
    pub gamma: BigRational,
}

impl TwoSiteParams {
    pub fn new(kappa: Scalar, gamma: Scalar) -> Result<Self, ModelError> {
        if !kappa.is_real() || !gamma.is_real() || !kappa.is_gaussian() || !gamma.is_gaussian() {
            return Err(ModelError::InvalidParams(
                "two-site parameters must be plain rationals".into(),
            ));
        }
        if kappa.re.is_zero() {
            return Err(ModelError::InvalidParams(
                "kappa = 0 decouples the sites".into(),
            ));
        }
        Ok(Self {
            kappa: kappa.re,
            gamma: gamma.re,
        })
    }
}

/// `[[v + i*gamma, kappa], [kappa, -v - i*gamma]]`
pub fn two_site(p: &TwoSiteParams) -> Result<ParametricMatrix, ModelError> {
    let diag = UniPoly::from_terms(vec![(1, Scalar::one()), (0, imag(&p.gamma))]);
    let rows = vec![
        vec![diag.clone(), UniPoly::constant(real(&p.kappa))],
        vec![UniPoly::constant(real(&p.kappa)), diag.neg()],
    ];
    Ok(ParametricMatrix::from_rows(rows).expect("square by construction"))
}

/// Three-site gain/loss trimer; the second onsite potential scans with the
/// angle through `beta = alpha * tan(phi)`.
///
/// The gain/loss strength is a full [`Scalar`] (real-valued) rather than a
/// plain rational: the third-order degeneracy of this family sits exactly
/// on `gamma^2 = 2 kappa^2`, so the stock configuration needs
/// `gamma = sqrt(2) kappa` represented exactly. Any rational substitute,
/// however precise, leaves a non-zero constant in the linear
/// lambda-coefficient and the classification drops to an analytic point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimerParams {
    pub kappa: BigRational,
    pub gamma: Scalar,
    pub tan_phi: BigRational,
}

impl TrimerParams {
    pub fn new(
        kappa: BigRational,
        gamma: Scalar,
        tan_phi: BigRational,
    ) -> Result<Self, ModelError> {
        if kappa.is_zero() {
            return Err(ModelError::InvalidParams(
                "kappa = 0 decouples the sites".into(),
            ));
        }
        if !gamma.is_real() {
            return Err(ModelError::InvalidParams(
                "gamma must be real-valued".into(),
            ));
        }
        Ok(Self {
            kappa,
            gamma,
            tan_phi,
        })
    }

    /// The stock configuration `gamma = sqrt(2) kappa`, exactly on the
    /// third-order locus.
    pub fn balanced(kappa: BigRational, tan_phi: BigRational) -> Result<Self, ModelError> {
        let gamma = Scalar::sqrt2() * Scalar::real(kappa.clone());
        Self::new(kappa, gamma, tan_phi)
    }
}

/// `[[v + i*gamma, kappa, 0], [kappa, 0, kappa], [0, kappa, v*tan_phi - i*gamma]]`
pub fn three_site(p: &TrimerParams) -> Result<ParametricMatrix, ModelError> {
    let k = UniPoly::constant(real(&p.kappa));
    let z = UniPoly::zero();
    let i_gamma = Scalar::i() * p.gamma.clone();
    let top = UniPoly::from_terms(vec![(1, Scalar::one()), (0, i_gamma.clone())]);
    let bottom = UniPoly::from_terms(vec![(1, real(&p.tan_phi)), (0, -i_gamma)]);
    let rows = vec![
        vec![top, k.clone(), z.clone()],
        vec![k.clone(), z.clone(), k.clone()],
        vec![z, k, bottom],
    ];
    Ok(ParametricMatrix::from_rows(rows).expect("square by construction"))
}

/// Open chain with alternating hopping amplitudes `t1`, `t2`, both carrying
/// the non-reciprocity `+/- gamma`, and a weak corner link from the last
/// site back to the first carrying the perturbation.
///
/// At `t1 = t2 = gamma` every leftward hop vanishes, the chain becomes a
/// single Jordan block and the characteristic polynomial collapses to
/// `lambda^N - c*v`: the boundary-sensitivity signature this engine
/// detects through the Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSHParams {
    pub sites: usize,
    pub t1: BigRational,
    pub t2: BigRational,
    pub gamma: BigRational,
}

impl SSHParams {
    pub fn new(
        sites: usize,
        t1: BigRational,
        t2: BigRational,
        gamma: BigRational,
    ) -> Result<Self, ModelError> {
        if sites < 2 {
            return Err(ModelError::InvalidParams(
                "chain needs at least 2 sites".into(),
            ));
        }
        if t2.is_zero() {
            return Err(ModelError::InvalidParams(
                "t2 = 0 disconnects the unit cells".into(),
            ));
        }
        Ok(Self {
            sites,
            t1,
            t2,
            gamma,
        })
    }
}

pub fn ssh_chain(p: &SSHParams) -> Result<ParametricMatrix, ModelError> {
    let n = p.sites;
    let mut m = ParametricMatrix::zero(n);
    for link in 0..n - 1 {
        let t = if link % 2 == 0 { &p.t1 } else { &p.t2 };
        let right = t - &p.gamma;
        let left = t + &p.gamma;
        m.set(link, link + 1, UniPoly::constant(Scalar::real(right)));
        m.set(link + 1, link, UniPoly::constant(Scalar::real(left)));
    }
    // corner perturbation, added on top of whatever the link structure put
    // at (1, N) (relevant only for N = 2)
    let corner = m.get(0, n - 1).add(&UniPoly::nu());
    m.set(0, n - 1, corner);
    Ok(m)
}

/// Asymmetric-hopping chain with upper corner perturbations, radius `r` as
/// the formal variable through generalized spherical coordinates
/// `delta = r cos(theta) cos(phi)`, `Delta = r cos(theta) sin(phi)`,
/// `eta = r sin(theta)`.
///
/// The six scale factors `a, b, c, d, m, n` disorder the hopping terms
/// (defaults 1 = clean); the four-site layout is
///
/// ```text
/// [ 0        a*delta   eta       Delta   ]
/// [ (2+d)c   0         b*delta   0       ]
/// [ 0        (2+d)d    0         m*delta ]
/// [ 0        0         (2+d)n    0       ]
/// ```
///
/// with `(2+d)` shorthand for `2 + delta`. Other sizes reuse the same
/// pattern: scales cycle along the diagonals and the perturbations sit at
/// `(1, N)` and `(1, N-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HNParams {
    pub sites: usize,
    pub cos_theta: BigRational,
    pub sin_theta: BigRational,
    pub cos_phi: BigRational,
    pub sin_phi: BigRational,
    /// `[a, b, c, d, m, n]`
    pub disorder: [BigRational; 6],
}

impl HNParams {
    pub fn new(
        cos_theta: BigRational,
        sin_theta: BigRational,
        cos_phi: BigRational,
        sin_phi: BigRational,
    ) -> Result<Self, ModelError> {
        Self::with_sites(4, cos_theta, sin_theta, cos_phi, sin_phi)
    }

    pub fn with_sites(
        sites: usize,
        cos_theta: BigRational,
        sin_theta: BigRational,
        cos_phi: BigRational,
        sin_phi: BigRational,
    ) -> Result<Self, ModelError> {
        if sites < 2 {
            return Err(ModelError::InvalidParams(
                "chain needs at least 2 sites".into(),
            ));
        }
        let delta = &cos_theta * &cos_phi;
        let cap_delta = &cos_theta * &sin_phi;
        if delta.is_zero() && cap_delta.is_zero() && sin_theta.is_zero() {
            return Err(ModelError::InvalidParams(
                "all perturbation directions vanish: cos(theta)cos(phi), \
                 cos(theta)sin(phi) and sin(theta) are all zero"
                    .into(),
            ));
        }
        Ok(Self {
            sites,
            cos_theta,
            sin_theta,
            cos_phi,
            sin_phi,
            disorder: std::array::from_fn(|_| BigRational::from_integer(1.into())),
        })
    }

    pub fn with_disorder(mut self, disorder: [BigRational; 6]) -> Result<Self, ModelError> {
        if disorder.iter().any(|f| f.is_zero()) {
            return Err(ModelError::InvalidParams(
                "disorder scale factors must be non-zero".into(),
            ));
        }
        self.disorder = disorder;
        Ok(self)
    }
}

pub fn hatano_nelson(p: &HNParams) -> Result<ParametricMatrix, ModelError> {
    let n = p.sites;
    let delta_coef = &p.cos_theta * &p.cos_phi; // delta = v * delta_coef
    let cap_delta_coef = &p.cos_theta * &p.sin_phi; // Delta = v * cap_delta_coef
    let eta_coef = &p.sin_theta; // eta = v * eta_coef

    let delta = |scale: &BigRational| UniPoly::monomial(1, real(&(&delta_coef * scale)));
    // 2 + delta, scaled
    let two_plus_delta = |scale: &BigRational| {
        UniPoly::from_terms(vec![
            (0, real(&(scale * BigRational::from_integer(2.into())))),
            (1, real(&(&delta_coef * scale))),
        ])
    };

    let [a, b, c, d, m_scale, n_scale] = &p.disorder;
    let super_scales = [a, b, m_scale];
    let sub_scales = [c, d, n_scale];

    let mut m = ParametricMatrix::zero(n);
    for link in 0..n - 1 {
        m.set(link, link + 1, delta(super_scales[link % 3]));
        m.set(link + 1, link, two_plus_delta(sub_scales[link % 3]));
    }
    if n >= 3 {
        let eta = UniPoly::monomial(1, real(eta_coef));
        m.set(0, n - 2, m.get(0, n - 2).add(&eta));
    }
    let cap = UniPoly::monomial(1, real(&cap_delta_coef));
    m.set(0, n - 1, m.get(0, n - 1).add(&cap));
    Ok(m)
}

/// Companion matrix of `lambda^d + c_{d-1} lambda^{d-1} + ... + c_0` with
/// polynomial coefficients: `coeffs[i]` is `c_i`. Its characteristic
/// polynomial reproduces the input exactly, which makes it the generator of
/// choice for degeneracies of prescribed order.
pub fn companion(coeffs: &[UniPoly]) -> Result<ParametricMatrix, ModelError> {
    let d = coeffs.len();
    if d == 0 {
        return Err(ModelError::InvalidParams(
            "companion matrix needs at least one coefficient".into(),
        ));
    }
    let mut m = ParametricMatrix::zero(d);
    for (i, c) in coeffs.iter().enumerate() {
        m.set(i, d - 1, c.neg());
        if i + 1 < d {
            m.set(i + 1, i, UniPoly::one());
        }
    }
    Ok(m)
}
