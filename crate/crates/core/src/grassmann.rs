//! Odd generators and canonically ordered Grassmann monomials.
//!
//! Generators carry a fixed global rank. The superspace coordinates
//! θ₁, θ₂ rank lowest, so in a canonical monomial they always sit to the
//! left of any odd constant.

use std::fmt;

/// An odd generator identified by its rank in the global total order.
///
/// The table is fixed:
///
/// | rank | generator |
/// |------|-----------|
/// | 0, 1 | θ₁, θ₂ (coordinates) |
/// | 2, 3 | θ₁′, θ₂′ (primed copies for the doubled Hirota route) |
/// | 4, 5 | ζ₁, ζ₂ |
/// | 6, 7 | ν₁, ν₂ |
/// | 8.. | auxiliary odd constants ε₀, ε₁, … |
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddGenerator(u16);

impl OddGenerator {
    pub const THETA1: Self = Self(0);
    pub const THETA2: Self = Self(1);
    pub const THETA1_PRIME: Self = Self(2);
    pub const THETA2_PRIME: Self = Self(3);
    pub const ZETA1: Self = Self(4);
    pub const ZETA2: Self = Self(5);
    pub const NU1: Self = Self(6);
    pub const NU2: Self = Self(7);

    const AUX_BASE: u16 = 8;

    /// Coordinate θᵢ for `i ∈ {1, 2}`.
    pub fn theta(i: u8) -> Self {
        match i {
            1 => Self::THETA1,
            2 => Self::THETA2,
            _ => panic!("no coordinate θ{i}"),
        }
    }

    /// The `k`-th auxiliary odd constant.
    pub fn aux(k: u16) -> Self {
        Self(Self::AUX_BASE + k)
    }

    pub fn rank(self) -> u16 {
        self.0
    }

    /// θ₁ or θ₂.
    pub fn is_coordinate(self) -> bool {
        self.0 <= 1
    }

    /// The primed partner of a coordinate, if any.
    pub fn primed(self) -> Option<Self> {
        match self {
            Self::THETA1 => Some(Self::THETA1_PRIME),
            Self::THETA2 => Some(Self::THETA2_PRIME),
            _ => None,
        }
    }

    /// Inverse of [`OddGenerator::primed`].
    pub fn unprimed(self) -> Option<Self> {
        match self {
            Self::THETA1_PRIME => Some(Self::THETA1),
            Self::THETA2_PRIME => Some(Self::THETA2),
            _ => None,
        }
    }
}

impl fmt::Display for OddGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "θ1"),
            1 => write!(f, "θ2"),
            2 => write!(f, "θ1'"),
            3 => write!(f, "θ2'"),
            4 => write!(f, "ζ1"),
            5 => write!(f, "ζ2"),
            6 => write!(f, "ν1"),
            7 => write!(f, "ν2"),
            k => write!(f, "ε{}", k - Self::AUX_BASE),
        }
    }
}

/// Strictly increasing product of odd generators; empty means the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrassmannMonomial(Vec<OddGenerator>);

impl GrassmannMonomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn single(g: OddGenerator) -> Self {
        Self(vec![g])
    }

    /// Canonicalizes an arbitrary product of generators.
    ///
    /// Returns the sign of the sorting permutation, or `None` when a
    /// generator repeats.
    pub fn from_product(gens: &[OddGenerator]) -> Option<(i8, Self)> {
        let mut v = gens.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, Self(v)))
    }

    pub fn generators(&self) -> &[OddGenerator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.0.len() % 2 == 1
    }

    pub fn contains(&self, g: OddGenerator) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    /// `self · other`, with the reordering sign; `None` if they share a generator.
    pub fn mul(&self, other: &Self) -> Option<(i8, Self)> {
        if other.0.is_empty() {
            return Some((1, self.clone()));
        }
        if self.0.is_empty() {
            return Some((1, other.clone()));
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut swaps = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // b[j] jumps over the remaining elements of a
                    swaps += a.len() - i;
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Self(out)))
    }

    /// Left derivative ∂/∂g: moves `g` to the front, then removes it.
    pub fn left_derivative(&self, g: OddGenerator) -> Option<(i8, Self)> {
        let pos = self.0.binary_search(&g).ok()?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some((if pos % 2 == 0 { 1 } else { -1 }, Self(v)))
    }

    /// Splits into the coordinate prefix (θ₁, θ₂) and the remainder.
    /// No sign arises because coordinates rank first.
    pub fn split_coordinates(&self) -> (Self, Self) {
        let k = self.0.iter().take_while(|g| g.is_coordinate()).count();
        (Self(self.0[..k].to_vec()), Self(self.0[k..].to_vec()))
    }

    /// Replace generators through `map`, re-canonicalizing.
    pub fn rename(&self, map: impl Fn(OddGenerator) -> OddGenerator) -> Option<(i8, Self)> {
        let v: Vec<_> = self.0.iter().map(|&g| map(g)).collect();
        Self::from_product(&v)
    }
}

impl fmt::Display for GrassmannMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use OddGenerator as G;

    #[test]
    fn anticommutation_and_square_zero() {
        let t1 = GrassmannMonomial::single(G::THETA1);
        let t2 = GrassmannMonomial::single(G::THETA2);
        let (s, m) = t2.mul(&t1).unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.generators(), &[G::THETA1, G::THETA2]);
        assert!(t1.mul(&t1).is_none());
    }

    #[test]
    fn merge_sign_matches_sort_sign() {
        let a = [G::ZETA1, G::THETA2];
        let b = [G::THETA1, G::NU1];
        let (sa, ma) = GrassmannMonomial::from_product(&a).unwrap();
        let (sb, mb) = GrassmannMonomial::from_product(&b).unwrap();
        let (s, m) = ma.mul(&mb).unwrap();
        let all: Vec<_> = a.iter().chain(b.iter()).copied().collect();
        let (sall, mall) = GrassmannMonomial::from_product(&all).unwrap();
        assert_eq!(m, mall);
        assert_eq!(sa * sb * s, sall);
    }

    #[test]
    fn left_derivative_sign() {
        let (_, m) = GrassmannMonomial::from_product(&[G::THETA1, G::THETA2]).unwrap();
        assert_eq!(m.left_derivative(G::THETA1).unwrap().0, 1);
        assert_eq!(m.left_derivative(G::THETA2).unwrap().0, -1);
        assert!(m.left_derivative(G::ZETA1).is_none());
    }
}
