//! Soliton tau functions and the plotted profiles `u_(m,n)`, `v_(m,n)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{BaseVar, Phase, SuperExpr};
use crate::fraction::{log_derivative, SuperFraction};
use crate::grassmann::OddGenerator;
use crate::index::MultiIndex;
use crate::scalar::GaussianRational;

/// Wave numbers of the plotted solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub kappa: GaussianRational,
    pub kappa_tilde: GaussianRational,
    pub kappa1: GaussianRational,
    pub kappa2: GaussianRational,
    pub kappa_tilde1: GaussianRational,
    pub kappa_tilde2: GaussianRational,
}

impl Default for Params {
    fn default() -> Self {
        let r = GaussianRational::ratio;
        Self {
            kappa: r(1, 1),
            kappa_tilde: r(4, 5),
            kappa1: r(3, 5),
            kappa2: r(1, 2),
            kappa_tilde1: r(3, 4),
            kappa_tilde2: r(2, 3),
        }
    }
}

impl Params {
    /// Missing keys keep their defaults; unknown keys are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `f, g` or `f̃, g̃`: the tilded family carries a factor `i` on each
/// exponential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Plain,
    Tilde,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolitonSpec {
    One {
        family: Family,
        kappa: GaussianRational,
    },
    Two {
        family: Family,
        kappa1: GaussianRational,
        kappa2: GaussianRational,
    },
    /// The N=2 one-soliton with formal amplitudes `a`, `b` and odd
    /// constants ζ₁, ν₁.
    N2 { kappa: GaussianRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPair {
    pub f: SuperExpr,
    pub g: SuperExpr,
}

/// `((κ₁−κ₂)/(κ₁+κ₂))²`.
pub fn interaction(k1: &GaussianRational, k2: &GaussianRational) -> Result<GaussianRational> {
    let s = k1 + k2;
    let d = (k1 - k2)
        .checked_div(&s)
        .ok_or(Error::DegenerateWaveNumbers)?;
    Ok(&d * &d)
}

fn e(kappa: &GaussianRational) -> SuperExpr {
    SuperExpr::exp(Phase::kdv(kappa))
}

pub fn build_tau(spec: &SolitonSpec) -> Result<TauPair> {
    let one = SuperExpr::one();
    match spec {
        SolitonSpec::One { family, kappa } => {
            let w = match family {
                Family::Plain => e(kappa),
                Family::Tilde => e(kappa).scale(&GaussianRational::i()),
            };
            Ok(TauPair {
                f: &one + &w,
                g: &one - &w,
            })
        }
        SolitonSpec::Two {
            family,
            kappa1,
            kappa2,
        } => {
            let a12 = interaction(kappa1, kappa2)?;
            let (e1, e2) = (e(kappa1), e(kappa2));
            let e12 = &e1 * &e2;
            let (lin, quad) = match family {
                Family::Plain => (&e1 + &e2, e12.scale(&a12)),
                Family::Tilde => ((&e1 + &e2).scale(&GaussianRational::i()), e12.scale(&-a12)),
            };
            Ok(TauPair {
                f: &(&one + &lin) + &quad,
                g: &(&one - &lin) + &quad,
            })
        }
        SolitonSpec::N2 { kappa } => Ok(n2_tau(kappa, true)),
    }
}

/// `exp(θ₁χ + θ₂(s·i)χ + θ₁θ₂(−s·iκ))` with χ odd and `s = −1` for `f`,
/// `s = 1` for `g`.
fn n2_factor(kappa: &GaussianRational, chi: OddGenerator, s: i64) -> SuperExpr {
    use OddGenerator as G;
    let i = GaussianRational::i();
    let si = &i * &GaussianRational::from_int(s);
    let n = &(&SuperExpr::odd_product(&[G::THETA1, chi])
        + &SuperExpr::odd_product(&[G::THETA2, chi]).scale(&si))
        + &SuperExpr::odd_product(&[G::THETA1, G::THETA2]).scale(&-(&si * kappa));
    n.exp_nilpotent().expect("nilpotent exponent")
}

/// `f = 1 + a e^{η+θ₁ζ₁+θ₂ζ₂+θ₁θ₂m₁₂}`, `g = 1 + b e^{η+θ₁ν₁+θ₂ν₂+θ₁θ₂n₁₂}`
/// with `ζ₂ = −iζ₁`, `m₁₂ = iκ`, `ν₂ = iν₁`, `n₁₂ = −iκ`. With
/// `formal = false` the amplitudes are `a = b = 1`.
pub fn n2_tau(kappa: &GaussianRational, formal: bool) -> TauPair {
    use OddGenerator as G;
    let (a, b) = if formal {
        (SuperExpr::param("a"), SuperExpr::param("b"))
    } else {
        (SuperExpr::one(), SuperExpr::one())
    };
    let one = SuperExpr::one();
    let f = &one + &(&(&a * &e(kappa)) * &n2_factor(kappa, G::ZETA1, -1));
    let g = &one + &(&(&b * &e(kappa)) * &n2_factor(kappa, G::NU1, 1));
    TauPair { f, g }
}

/// `∂ₓ ln(f/g)`.
pub fn log_ratio_x(pair: &TauPair) -> Result<SuperFraction> {
    let x = MultiIndex::x(1);
    Ok(log_derivative(&pair.f, &x)?.sub(&log_derivative(&pair.g, &x)?))
}

pub fn tau(params: &Params, solitons: u8, family: Family) -> Result<TauPair> {
    let (k, k1, k2) = match family {
        Family::Plain => (&params.kappa, &params.kappa1, &params.kappa2),
        Family::Tilde => (
            &params.kappa_tilde,
            &params.kappa_tilde1,
            &params.kappa_tilde2,
        ),
    };
    let spec = match solitons {
        1 => SolitonSpec::One {
            family,
            kappa: k.clone(),
        },
        2 => SolitonSpec::Two {
            family,
            kappa1: k1.clone(),
            kappa2: k2.clone(),
        },
        n => return Err(Error::Parse(format!("no {n}-soliton tau functions"))),
    };
    build_tau(&spec)
}

/// `u = −i∂ₓ ln(f̃ₙ/g̃ₙ)`, `v = φ² − φ̃² − φₓ` with `φ = ∂ₓ ln(fₘ/gₘ)`,
/// `φ̃ = ∂ₓ ln(f̃ₙ/g̃ₙ)`.
pub fn profile(params: &Params, m: u8, n: u8) -> Result<(SuperFraction, SuperFraction)> {
    let phi = log_ratio_x(&tau(params, m, Family::Plain)?)?;
    let phit = log_ratio_x(&tau(params, n, Family::Tilde)?)?;
    let u = phit.scale(&-GaussianRational::i());
    let phix = phi.derive(crate::calculus::Derivation::Dx);
    let v = phi.pow(2).sub(&phit.pow(2)).sub(&phix);
    Ok((u, v))
}

/// One of the six plotted curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileId {
    pub v: bool,
    pub m: u8,
    pub n: u8,
}

impl ProfileId {
    pub const ALL: [&'static str; 6] = ["u11", "u22", "v11", "v22", "v12", "v21"];

    pub fn build(&self, params: &Params) -> Result<SuperFraction> {
        let (u, v) = profile(params, self.m, self.n)?;
        Ok(if self.v { v } else { u })
    }
}

impl FromStr for ProfileId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if !Self::ALL.contains(&s) {
            return Err(Error::Parse(format!(
                "unknown profile `{s}` (expected one of {})",
                Self::ALL.join(", ")
            )));
        }
        let b = s.as_bytes();
        Ok(Self {
            v: b[0] == b'v',
            m: b[1] - b'0',
            n: b[2] - b'0',
        })
    }
}

impl fmt::Display for ProfileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", if self.v { 'v' } else { 'u' }, self.m, self.n)
    }
}

/// Numeric values for the coordinates at one sample point.
pub(crate) fn point(x: f64, t: f64) -> std::collections::BTreeMap<BaseVar, num::Complex<f64>> {
    [
        (BaseVar::X, num::Complex::new(x, 0.0)),
        (BaseVar::T, num::Complex::new(t, 0.0)),
        (BaseVar::T2, num::Complex::new(0.0, 0.0)),
    ]
    .into_iter()
    .collect()
}
