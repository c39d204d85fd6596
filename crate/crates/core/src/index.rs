//! Multi-indices for derivative and Hirota operator powers.

use std::fmt;
use std::str::FromStr;

use crate::calculus::Derivation;
use crate::error::Error;

/// Powers `(kx, kt, kt2, k1, k2)` of ∂ₓ, ∂ₜ, ∂_{t₂}, D₁, D₂.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    pub kx: u32,
    pub kt: u32,
    pub kt2: u32,
    pub k1: u32,
    pub k2: u32,
}

impl MultiIndex {
    pub const fn new(kx: u32, kt: u32, kt2: u32, k1: u32, k2: u32) -> Self {
        Self {
            kx,
            kt,
            kt2,
            k1,
            k2,
        }
    }

    pub const fn x(k: u32) -> Self {
        Self::new(k, 0, 0, 0, 0)
    }

    pub fn with_t(mut self, k: u32) -> Self {
        self.kt = k;
        self
    }

    pub fn with_t2(mut self, k: u32) -> Self {
        self.kt2 = k;
        self
    }

    pub fn with_d1(mut self, k: u32) -> Self {
        self.k1 = k;
        self
    }

    pub fn with_d2(mut self, k: u32) -> Self {
        self.k2 = k;
        self
    }

    pub fn order(&self) -> u32 {
        self.kx + self.kt + self.kt2 + self.k1 + self.k2
    }

    pub fn even_order(&self) -> u32 {
        self.kx + self.kt + self.kt2
    }

    /// Derivations in application order: D₁ innermost, then D₂, then the
    /// even ones (which commute with everything).
    pub fn derivations(&self) -> Vec<Derivation> {
        let mut out = Vec::with_capacity(self.order() as usize);
        out.extend(std::iter::repeat_n(Derivation::D1, self.k1 as usize));
        out.extend(std::iter::repeat_n(Derivation::D2, self.k2 as usize));
        out.extend(std::iter::repeat_n(Derivation::Dt2, self.kt2 as usize));
        out.extend(std::iter::repeat_n(Derivation::Dt, self.kt as usize));
        out.extend(std::iter::repeat_n(Derivation::Dx, self.kx as usize));
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |k: u32, s: &str| match k {
            0 => {}
            1 => parts.push(s.to_string()),
            k => parts.push(format!("{k}{s}")),
        };
        push(self.kx, "x");
        push(self.kt, "t");
        push(self.kt2, "t2");
        push(self.k1, "theta1");
        push(self.k2, "theta2");
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Comma-separated tokens such as `3x`, `xxx`, `t`, `t2`, `theta1`, `x,t2`.
impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut idx = MultiIndex::default();
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(idx);
        }
        for tok in s.split(',') {
            let tok = tok.trim();
            let digits: String = tok.chars().take_while(|c| c.is_ascii_digit()).collect();
            let count: u32 = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad count in `{tok}`")))?
            };
            let mut rest = &tok[digits.len()..];
            if rest.is_empty() {
                return Err(Error::Parse(format!("missing variable in `{tok}`")));
            }
            while !rest.is_empty() {
                let (slot, len) = if rest.starts_with("theta1") || rest.starts_with("th1") {
                    (&mut idx.k1, if rest.starts_with("theta1") { 6 } else { 3 })
                } else if rest.starts_with("theta2") || rest.starts_with("th2") {
                    (&mut idx.k2, if rest.starts_with("theta2") { 6 } else { 3 })
                } else if rest.starts_with("t2") {
                    (&mut idx.kt2, 2)
                } else if rest.starts_with('t') {
                    (&mut idx.kt, 1)
                } else if rest.starts_with('x') {
                    (&mut idx.kx, 1)
                } else {
                    return Err(Error::Parse(format!("unknown variable in `{tok}`")));
                };
                *slot += count;
                rest = &rest[len..];
            }
        }
        Ok(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_index_syntax() {
        assert_eq!("3x".parse::<MultiIndex>().unwrap(), MultiIndex::x(3));
        assert_eq!("xxx".parse::<MultiIndex>().unwrap(), MultiIndex::x(3));
        assert_eq!(
            "t".parse::<MultiIndex>().unwrap(),
            MultiIndex::x(0).with_t(1)
        );
        assert_eq!(
            "xxx,theta1".parse::<MultiIndex>().unwrap(),
            MultiIndex::x(3).with_d1(1)
        );
        assert_eq!(
            "x,t2".parse::<MultiIndex>().unwrap(),
            MultiIndex::x(1).with_t2(1)
        );
        assert_eq!(
            "t2x".parse::<MultiIndex>().unwrap(),
            MultiIndex::x(1).with_t2(1)
        );
        assert!("3q".parse::<MultiIndex>().is_err());
        let i = MultiIndex::new(2, 1, 0, 1, 0);
        assert_eq!(i.to_string().parse::<MultiIndex>().unwrap(), i);
    }
}
