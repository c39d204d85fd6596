//! Super Hirota bilinear derivatives `𝒮₂^{k₂}𝒮₁^{k₁}𝒟ₓ^{kx}𝒟ₜ^{kt}𝒟_{t₂}^{kt₂}(f·g)`.
//!
//! Operators act on the graded tensor `f ⊗ g`: `𝒟 = ∂ ⊗ 1 − 1 ⊗ ∂` and
//! `𝒮ᵢ = Dᵢ ⊗ 1 − 1 ⊗ Dᵢ`, where the primed `Dᵢ` passes the first factor
//! with sign `(−1)^{|a|}`. The even operators are applied first, then 𝒮₁,
//! with 𝒮₂ outermost. The result is the product of the two slots.

use std::fmt;
use std::str::FromStr;

use crate::calculus::{d_base, odd_derivation, Derivation};
use crate::error::Error;
use crate::expr::{BaseVar, Parity, SuperExpr};
use crate::grassmann::OddGenerator;
use crate::index::MultiIndex;
use crate::scalar::GaussianRational;

/// `𝒮/𝒟` applied to `f · g`.
pub fn hirota(f: &SuperExpr, g: &SuperExpr, idx: &MultiIndex) -> SuperExpr {
    let mut pairs: Vec<(Parity, SuperExpr, SuperExpr)> = Vec::new();
    for (pf, fa) in f.homogeneous_parts() {
        for (_, gb) in g.homogeneous_parts() {
            pairs.push((pf, fa.clone(), gb));
        }
    }
    for d in idx.derivations() {
        let mut next = Vec::with_capacity(pairs.len() * 2);
        for (pa, a, b) in pairs {
            let da = d.apply(&a);
            let db = d.apply(&b);
            let flipped = if d.is_odd() {
                match pa {
                    Parity::Even => Parity::Odd,
                    _ => Parity::Even,
                }
            } else {
                pa
            };
            if !da.is_zero() {
                next.push((flipped, da, b.clone()));
            }
            if !db.is_zero() {
                // (1 ⊗ D)(a ⊗ b) = (−1)^{|a||D|} a ⊗ Db, then subtract
                let passes_odd = d.is_odd() && pa == Parity::Odd;
                let a = if passes_odd { a } else { -&a };
                next.push((pa, a, db));
            }
        }
        pairs = next;
    }
    pairs
        .iter()
        .fold(SuperExpr::zero(), |acc, (_, a, b)| &acc + &a.gr_mul(b))
}

/// Reference route: literally builds `f(z)·g(z′)` with primed coordinates,
/// applies `(∂ − ∂′)` and `(Dᵢ − Dᵢ′)`, and identifies `z′ = z`.
pub fn hirota_doubled(f: &SuperExpr, g: &SuperExpr, idx: &MultiIndex) -> SuperExpr {
    let prime_gen = |o: OddGenerator| o.primed().unwrap_or(o);
    let unprime_gen = |o: OddGenerator| o.unprimed().unwrap_or(o);
    let gp = g.rename(BaseVar::primed, prime_gen);
    let mut h = f.gr_mul(&gp);
    for d in idx.derivations() {
        h = match d {
            Derivation::Dx | Derivation::Dt | Derivation::Dt2 => {
                let v = d.base_var().expect("even derivation");
                &d_base(&h, v) - &d_base(&h, v.primed())
            }
            Derivation::D1 | Derivation::D2 => {
                let th = OddGenerator::theta(if d == Derivation::D1 { 1 } else { 2 });
                &odd_derivation(&h, th, BaseVar::X)
                    - &odd_derivation(&h, th.primed().expect("coordinate"), BaseVar::XPrime)
            }
        };
    }
    h.rename(BaseVar::unprimed, unprime_gen)
}

/// Linear combination of Hirota monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HirotaCombo(pub Vec<(GaussianRational, MultiIndex)>);

impl HirotaCombo {
    pub fn new(terms: impl IntoIterator<Item = (GaussianRational, MultiIndex)>) -> Self {
        let mut c = Self(Vec::new());
        for (k, i) in terms {
            c.push(k, i);
        }
        c
    }

    pub fn single(idx: MultiIndex) -> Self {
        Self::new([(GaussianRational::one(), idx)])
    }

    fn push(&mut self, k: GaussianRational, idx: MultiIndex) {
        if let Some(slot) = self.0.iter_mut().find(|(_, i)| *i == idx) {
            slot.0 += &k;
        } else {
            self.0.push((k, idx));
        }
        self.0.retain(|(k, _)| !k.is_zero());
    }

    pub fn terms(&self) -> &[(GaussianRational, MultiIndex)] {
        &self.0
    }

    /// Composition `self ∘ inner`, both already in canonical operator order.
    /// Moving an 𝒮₁ of `self` past an 𝒮₂ of `inner` costs `(−1)^{k₁k₂}`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut out = Self::default();
        for (a, ia) in &self.0 {
            for (b, ib) in &inner.0 {
                let mut k = a * b;
                if (ia.k1 * ib.k2) % 2 == 1 {
                    k = -k;
                }
                out.push(
                    k,
                    MultiIndex::new(
                        ia.kx + ib.kx,
                        ia.kt + ib.kt,
                        ia.kt2 + ib.kt2,
                        ia.k1 + ib.k1,
                        ia.k2 + ib.k2,
                    ),
                );
            }
        }
        out
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::new(self.0.iter().map(|(c, i)| (c * k, *i)))
    }
}

/// `Σ cᵢ · hirota(f, g, idxᵢ)`.
pub fn hirota_poly(f: &SuperExpr, g: &SuperExpr, combo: &HirotaCombo) -> SuperExpr {
    combo.0.iter().fold(SuperExpr::zero(), |acc, (c, idx)| {
        &acc + &hirota(f, g, idx).scale(c)
    })
}

fn fmt_index(idx: &MultiIndex) -> String {
    let mut s = String::new();
    let mut op = |name: &str, k: u32| match k {
        0 => {}
        1 => s.push_str(name),
        k => s.push_str(&format!("{name}^{k}")),
    };
    op("S2", idx.k2);
    op("S1", idx.k1);
    op("Dx", idx.kx);
    op("Dt", idx.kt);
    op("Dt2", idx.kt2);
    if s.is_empty() {
        s.push('1');
    }
    s
}

impl fmt::Display for HirotaCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (n, (c, idx)) in self.0.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            if n > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}", fmt_index(idx))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn combo(&mut self) -> Result<HirotaCombo, Error> {
        let mut out = HirotaCombo::default();
        let mut sign = GaussianRational::one();
        if self.eat("-") {
            sign = -sign;
        } else {
            self.eat("+");
        }
        loop {
            let t = self.term()?;
            for (c, i) in t.0 {
                out.push(&c * &sign, i);
            }
            if self.eat("+") {
                sign = GaussianRational::one();
            } else if self.eat("-") {
                sign = GaussianRational::from_int(-1);
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn coefficient(&mut self) -> Result<GaussianRational, Error> {
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || c == '/' || c == '.' || c == 'i'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Ok(GaussianRational::one());
        }
        let text = &self.rest()[..len];
        let c = text.parse().map_err(|_| self.err("bad coefficient"))?;
        self.pos += len;
        self.eat("*");
        Ok(c)
    }

    fn power(&mut self) -> Result<u32, Error> {
        if !self.eat("^") {
            return Ok(1);
        }
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        let n = self.rest()[..len]
            .parse()
            .map_err(|_| self.err("bad exponent"))?;
        self.pos += len;
        Ok(n)
    }

    fn term(&mut self) -> Result<HirotaCombo, Error> {
        let coeff = self.coefficient()?;
        let mut acc = HirotaCombo::single(MultiIndex::default());
        let mut any = false;
        loop {
            let factor = if self.eat("(") {
                let inner = self.combo()?;
                if !self.eat(")") {
                    return Err(self.err("expected `)`"));
                }
                inner
            } else {
                let idx = if self.eat("Dt2") {
                    MultiIndex::default().with_t2(self.power()?)
                } else if self.eat("Dt") {
                    MultiIndex::default().with_t(self.power()?)
                } else if self.eat("Dx") {
                    MultiIndex::x(self.power()?)
                } else if self.eat("S1") {
                    MultiIndex::default().with_d1(self.power()?)
                } else if self.eat("S2") {
                    MultiIndex::default().with_d2(self.power()?)
                } else {
                    break;
                };
                HirotaCombo::single(idx)
            };
            acc = acc.compose(&factor);
            any = true;
            self.eat("*");
        }
        if !any
            && self
                .peek()
                .is_some_and(|c| c != '+' && c != '-' && c != ')')
        {
            return Err(self.err("expected operator"));
        }
        Ok(acc.scale(&coeff))
    }
}

/// Grammar (whitespace ignored):
///
/// ```text
/// combo  := ['+'|'-'] term (('+'|'-') term)*
/// term   := [coeff ['*']] factor*
/// factor := ('Dx'|'Dt'|'Dt2'|'S1'|'S2') ['^' int] | '(' combo ')'
/// coeff  := Gaussian rational such as 3, 1/4, 2i, 3i/8
/// ```
///
/// Adjacent factors compose left (outer) to right (inner).
impl FromStr for HirotaCombo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            src: &compact,
            pos: 0,
        };
        let c = p.combo()?;
        if p.pos != compact.len() {
            return Err(p.err("trailing input"));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Phase;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn ex(k: i64) -> SuperExpr {
        SuperExpr::exp(Phase::new([(BaseVar::X, q(k))]))
    }

    #[test]
    fn exponential_shift_first_order() {
        assert_eq!(hirota(&ex(2), &ex(1), &MultiIndex::x(1)), ex(3));
    }

    #[test]
    fn odd_even_order_on_f_f_vanishes() {
        let f = &(&SuperExpr::one() + &ex(1)) + &SuperExpr::var_pow(BaseVar::X, 2);
        assert!(hirota(&f, &f, &MultiIndex::x(1)).is_zero());
        assert!(hirota(&f, &f, &MultiIndex::x(3)).is_zero());
    }

    #[test]
    fn single_super_step() {
        let t1 = SuperExpr::generator(OddGenerator::THETA1);
        let one = SuperExpr::one();
        let s1 = MultiIndex::default().with_d1(1);
        assert_eq!(hirota(&t1, &one, &s1), SuperExpr::one());
        assert_eq!(hirota_doubled(&t1, &one, &s1), SuperExpr::one());
    }

    #[test]
    fn kdv_one_soliton_pair() {
        let k = GaussianRational::ratio(3, 5);
        let e = SuperExpr::exp(Phase::kdv(&k));
        let f = &SuperExpr::one() + &e;
        let g = &SuperExpr::one() - &e;
        let combo: HirotaCombo = "Dt+Dx^3".parse().unwrap();
        assert!(hirota_poly(&f, &g, &combo).is_zero());
    }

    #[test]
    fn dispersion_arithmetic() {
        let (k1, k2) = (GaussianRational::ratio(3, 5), GaussianRational::ratio(1, 2));
        let e1 = SuperExpr::exp(Phase::kdv(&k1));
        let e2 = SuperExpr::exp(Phase::kdv(&k2));
        let combo: HirotaCombo = "Dt+Dx^3".parse().unwrap();
        let got = hirota_poly(&e1, &e2, &combo);
        let coeff = &(&-k1.pow(3) + &k2.pow(3)) + &(&k1 - &k2).pow(3);
        assert_eq!(got, e1.gr_mul(&e2).scale(&coeff));
    }

    #[test]
    fn parser_forms() {
        let c: HirotaCombo = "Dt+1/4Dx^3+3/4DxDt2".parse().unwrap();
        assert_eq!(
            c,
            HirotaCombo::new([
                (q(1), MultiIndex::default().with_t(1)),
                (GaussianRational::ratio(1, 4), MultiIndex::x(3)),
                (GaussianRational::ratio(3, 4), MultiIndex::x(1).with_t2(1)),
            ])
        );
        let s: HirotaCombo = "S1(Dt+Dx^3)".parse().unwrap();
        assert_eq!(s.terms().len(), 2);
        assert!(s.terms().iter().all(|(_, i)| i.k1 == 1));
        let b: HirotaCombo = "Dt2-Dx^2".parse().unwrap();
        assert_eq!(b.terms()[1].0, q(-1));
        // S1S2 written with S1 outermost is −S2S1
        let w: HirotaCombo = "S1S2".parse().unwrap();
        assert_eq!(
            w,
            HirotaCombo::new([(q(-1), MultiIndex::default().with_d1(1).with_d2(1))])
        );
        assert!("Dq".parse::<HirotaCombo>().is_err());
        assert!("S1(Dt".parse::<HirotaCombo>().is_err());
        assert_eq!(c.to_string().parse::<HirotaCombo>().unwrap(), c);
    }

    #[test]
    fn t2_minus_x2_on_constants() {
        let one = SuperExpr::one();
        let c: HirotaCombo = "2Dt-Dx^2".parse().unwrap();
        assert!(hirota_poly(&one, &one, &c).is_zero());
    }
}
