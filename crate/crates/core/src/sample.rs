//! Seeded random expressions for randomized checks.

use rand::Rng;

use crate::expr::{BaseVar, EvenMonomial, Parity, Phase, SuperExpr};
use crate::grassmann::{GrassmannMonomial, OddGenerator};
use crate::scalar::GaussianRational;
use crate::soliton::TauPair;

/// Nonzero `a + bi` with small numerators and denominators.
pub fn scalar(rng: &mut impl Rng) -> GaussianRational {
    loop {
        let re = GaussianRational::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let im = if rng.gen_bool(0.3) {
            GaussianRational::ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2))
        } else {
            GaussianRational::zero()
        };
        let c = &re + &(&im * &GaussianRational::i());
        if !c.is_zero() {
            return c;
        }
    }
}

fn phase(rng: &mut impl Rng) -> Phase {
    let mut c = || GaussianRational::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    Phase::new([(BaseVar::X, c()), (BaseVar::T, c()), (BaseVar::T2, c())])
}

/// `1 + Σ cₖ e^{ηₖ}(1 + αθ₁ζ₁ + βθ₂ν₁ + γθ₁θ₂ + δζ₁ν₁)` with one or two
/// exponentials and random rational phases in `x, t, t₂`.
pub fn tau_function(rng: &mut impl Rng) -> SuperExpr {
    use OddGenerator as G;
    let one = SuperExpr::one();
    let n = rng.gen_range(1..=2);
    let mut f = one.clone();
    for _ in 0..n {
        let mut dressing = one.clone();
        for pair in [
            [G::THETA1, G::ZETA1],
            [G::THETA2, G::NU1],
            [G::THETA1, G::THETA2],
            [G::ZETA1, G::NU1],
        ] {
            if rng.gen_bool(0.6) {
                dressing = &dressing + &SuperExpr::odd_product(&pair).scale(&scalar(rng));
            }
        }
        let w = SuperExpr::exp(phase(rng)).scale(&scalar(rng));
        f = &f + &(&w * &dressing);
    }
    f
}

pub fn tau_pair(rng: &mut impl Rng) -> TauPair {
    TauPair {
        f: tau_function(rng),
        g: tau_function(rng),
    }
}

const ODD_POOL: [OddGenerator; 4] = [
    OddGenerator::THETA1,
    OddGenerator::THETA2,
    OddGenerator::ZETA1,
    OddGenerator::NU1,
];

/// A random superfield of the requested parity with at most `max_terms`
/// terms; `Parity::Mixed` allows either.
pub fn superfield(rng: &mut impl Rng, parity: Parity, max_terms: usize) -> SuperExpr {
    let mut e = SuperExpr::zero();
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let gens: Vec<OddGenerator> = ODD_POOL
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        let odd = GrassmannMonomial::from_product(&gens).expect("distinct").1;
        let want_odd = match parity {
            Parity::Even => false,
            Parity::Odd => true,
            Parity::Mixed => odd.is_odd(),
        };
        let odd = if odd.is_odd() == want_odd {
            odd
        } else if let Some(&g) = ODD_POOL.iter().find(|g| !odd.contains(**g)) {
            odd.mul(&GrassmannMonomial::single(g)).expect("fresh").1
        } else {
            GrassmannMonomial::from_product(&ODD_POOL[1..])
                .expect("distinct")
                .1
        };
        let ph = if rng.gen_bool(0.5) {
            phase(rng)
        } else {
            Phase::zero()
        };
        let powers: Vec<(BaseVar, u32)> = [BaseVar::X, BaseVar::T]
            .into_iter()
            .map(|v| (v, rng.gen_range(0..=2)))
            .collect();
        e = &e + &SuperExpr::term(scalar(rng), EvenMonomial::new(ph, powers), odd);
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parities_and_bodies() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let e = superfield(&mut rng, Parity::Even, 4);
            assert!(e.is_zero() || e.parity() == Parity::Even);
            let o = superfield(&mut rng, Parity::Odd, 4);
            assert!(o.is_zero() || o.parity() == Parity::Odd);
            let f = tau_function(&mut rng);
            assert_eq!(f.parity(), Parity::Even);
            assert!(!f.body().is_zero());
        }
    }

    #[test]
    fn seeded_pairs_repeat() {
        let a = tau_pair(&mut ChaCha8Rng::seed_from_u64(3));
        let b = tau_pair(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}
