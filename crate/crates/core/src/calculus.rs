//! Derivations on concrete expressions: ∂ₓ, ∂ₜ, ∂_{t₂}, D₁, D₂.

use std::fmt;

use crate::expr::{BaseVar, SuperExpr};
use crate::grassmann::{GrassmannMonomial, OddGenerator};
use crate::scalar::GaussianRational;

/// The five derivations acting on superfields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Derivation {
    Dx,
    Dt,
    Dt2,
    D1,
    D2,
}

impl Derivation {
    pub fn is_odd(self) -> bool {
        matches!(self, Derivation::D1 | Derivation::D2)
    }

    pub fn base_var(self) -> Option<BaseVar> {
        match self {
            Derivation::Dx => Some(BaseVar::X),
            Derivation::Dt => Some(BaseVar::T),
            Derivation::Dt2 => Some(BaseVar::T2),
            _ => None,
        }
    }

    pub fn apply(self, e: &SuperExpr) -> SuperExpr {
        match self {
            Derivation::Dx => d_base(e, BaseVar::X),
            Derivation::Dt => d_base(e, BaseVar::T),
            Derivation::Dt2 => d_base(e, BaseVar::T2),
            Derivation::D1 => d_cov(e, 1),
            Derivation::D2 => d_cov(e, 2),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Derivation::Dx => "∂x",
            Derivation::Dt => "∂t",
            Derivation::Dt2 => "∂t2",
            Derivation::D1 => "D1",
            Derivation::D2 => "D2",
        })
    }
}

/// Partial derivative with respect to an even variable.
pub fn d_base(e: &SuperExpr, var: BaseVar) -> SuperExpr {
    let mut out = SuperExpr::zero();
    for (even, odd, c) in e.raw_terms() {
        let k = even.phase.coeff(var);
        if !k.is_zero() {
            out.push(c * &k, even.clone(), odd.clone());
        }
        if let Some((p, lowered)) = even.lower(var) {
            out.push(
                c * &GaussianRational::from_int(p as i64),
                lowered,
                odd.clone(),
            );
        }
    }
    out
}

/// `∂_θ + θ ∂_v` for an odd coordinate `θ` paired with the even variable `v`.
pub(crate) fn odd_derivation(e: &SuperExpr, theta: OddGenerator, var: BaseVar) -> SuperExpr {
    let mut out = SuperExpr::zero();
    for (even, odd, c) in e.raw_terms() {
        if let Some((sign, rest)) = odd.left_derivative(theta) {
            let c = if sign < 0 { -c } else { c.clone() };
            out.push(c, even.clone(), rest);
        }
    }
    let dv = d_base(e, var);
    let th = GrassmannMonomial::single(theta);
    for (even, odd, c) in dv.raw_terms() {
        if let Some((sign, m)) = th.mul(odd) {
            let c = if sign < 0 { -c } else { c.clone() };
            out.push(c, even.clone(), m);
        }
    }
    out
}

/// Covariant derivative `Dᵢ = ∂_{θᵢ} + θᵢ∂ₓ`, `i ∈ {1, 2}`.
///
/// `∂_{θᵢ}` acts from the left: θᵢ is commuted to the front of the
/// monomial first, picking up `(−1)^{position}`. With this convention
/// `Dᵢ² = ∂ₓ` term by term.
pub fn d_cov(e: &SuperExpr, i: u8) -> SuperExpr {
    odd_derivation(e, OddGenerator::theta(i), BaseVar::X)
}

/// Components of `A = u + θ₁ξ₁ + θ₂ξ₂ − θ₁θ₂v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentQuad<T> {
    pub u: T,
    pub xi1: T,
    pub xi2: T,
    pub v: T,
}

fn theta_monomial(gens: &[OddGenerator]) -> GrassmannMonomial {
    GrassmannMonomial::from_product(gens).expect("distinct").1
}

/// Reads off the Taylor components in θ₁, θ₂. Odd constants stay inside
/// the component coefficients.
pub fn taylor_components(a: &SuperExpr) -> ComponentQuad<SuperExpr> {
    use OddGenerator as G;
    ComponentQuad {
        u: a.extract_component(&theta_monomial(&[])),
        xi1: a.extract_component(&theta_monomial(&[G::THETA1])),
        xi2: a.extract_component(&theta_monomial(&[G::THETA2])),
        v: -a.extract_component(&theta_monomial(&[G::THETA1, G::THETA2])),
    }
}

/// Inverse of [`taylor_components`].
pub fn assemble_components(q: &ComponentQuad<SuperExpr>) -> SuperExpr {
    use OddGenerator as G;
    let t1 = SuperExpr::generator(G::THETA1);
    let t2 = SuperExpr::generator(G::THETA2);
    let t12 = SuperExpr::odd_product(&[G::THETA1, G::THETA2]);
    &(&(&q.u + &(&t1 * &q.xi1)) + &(&t2 * &q.xi2)) - &(&t12 * &q.v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Phase;
    use OddGenerator as G;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn kappa() -> GaussianRational {
        GaussianRational::ratio(3, 5)
    }

    #[test]
    fn base_derivatives() {
        let e = SuperExpr::exp(Phase::kdv(&kappa()));
        assert_eq!(d_base(&e, BaseVar::X), e.scale(&kappa()));
        assert_eq!(d_base(&e, BaseVar::T), e.scale(&-kappa().pow(3)));
        let x2 = SuperExpr::var_pow(BaseVar::X, 2);
        assert_eq!(
            d_base(&x2, BaseVar::X),
            SuperExpr::var_pow(BaseVar::X, 1).scale(&q(2))
        );
        assert!(d_base(&SuperExpr::param("a"), BaseVar::X).is_zero());
    }

    #[test]
    fn covariant_derivative_examples() {
        let t1 = SuperExpr::generator(G::THETA1);
        assert_eq!(d_cov(&t1, 1), SuperExpr::one());

        let k = kappa();
        let ex = SuperExpr::exp(Phase::new([(BaseVar::X, k.clone())]));
        let e = &SuperExpr::generator(G::THETA2) * &ex;
        let expected = (&SuperExpr::odd_product(&[G::THETA1, G::THETA2]) * &ex).scale(&k);
        assert_eq!(d_cov(&e, 1), expected);

        let t12 = SuperExpr::odd_product(&[G::THETA1, G::THETA2]);
        assert_eq!(d_cov(&d_cov(&t12, 1), 2), SuperExpr::one());
    }

    #[test]
    fn taylor_read_off() {
        let a = &SuperExpr::constant(q(3)) + &SuperExpr::odd_product(&[G::THETA1, G::THETA2]);
        let c = taylor_components(&a);
        assert_eq!(c.u, SuperExpr::constant(q(3)));
        assert!(c.xi1.is_zero() && c.xi2.is_zero());
        assert_eq!(c.v, SuperExpr::constant(q(-1)));
        assert_eq!(assemble_components(&c), a);

        let eta = SuperExpr::exp(Phase::kdv(&kappa()));
        let z = &SuperExpr::generator(G::ZETA1) * &eta;
        let a = &SuperExpr::generator(G::THETA1) * &z;
        let c = taylor_components(&a);
        assert_eq!(c.xi1, z);
        assert!(c.u.is_zero() && c.xi2.is_zero() && c.v.is_zero());
    }
}
