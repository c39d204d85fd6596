//! Canonical graded-commutative expressions.
//!
//! A [`SuperExpr`] is a finite sum of terms `c · e^{phase} · Πvᵏ · G` where
//! `c` is a Gaussian rational, the phase is linear in the base variables,
//! and `G` is a canonically ordered Grassmann monomial written rightmost.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Complex;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannMonomial, OddGenerator};
use crate::scalar::GaussianRational;

/// Even (commuting) variables.
///
/// `X`, `T`, `T2` are the coordinates; the primed copies only appear inside
/// the doubled-variable Hirota route. `Param` symbols are constants under
/// every derivation and let coefficients carry formal parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseVar {
    X,
    T,
    T2,
    XPrime,
    TPrime,
    T2Prime,
    Param(&'static str),
}

impl BaseVar {
    pub fn primed(self) -> Self {
        match self {
            BaseVar::X => BaseVar::XPrime,
            BaseVar::T => BaseVar::TPrime,
            BaseVar::T2 => BaseVar::T2Prime,
            v => v,
        }
    }

    pub fn unprimed(self) -> Self {
        match self {
            BaseVar::XPrime => BaseVar::X,
            BaseVar::TPrime => BaseVar::T,
            BaseVar::T2Prime => BaseVar::T2,
            v => v,
        }
    }
}

impl fmt::Display for BaseVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseVar::X => write!(f, "x"),
            BaseVar::T => write!(f, "t"),
            BaseVar::T2 => write!(f, "t2"),
            BaseVar::XPrime => write!(f, "x'"),
            BaseVar::TPrime => write!(f, "t'"),
            BaseVar::T2Prime => write!(f, "t2'"),
            BaseVar::Param(p) => write!(f, "{p}"),
        }
    }
}

/// Exponent `Σ cᵥ·v` of a single exponential factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Phase(Vec<(BaseVar, GaussianRational)>);

impl Phase {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(parts: impl IntoIterator<Item = (BaseVar, GaussianRational)>) -> Self {
        let mut map: BTreeMap<BaseVar, GaussianRational> = BTreeMap::new();
        for (v, c) in parts {
            *map.entry(v).or_default() += &c;
        }
        Self(map.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// `κx − κ³t`.
    pub fn kdv(kappa: &GaussianRational) -> Self {
        Self::new([(BaseVar::X, kappa.clone()), (BaseVar::T, -kappa.pow(3))])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, v: BaseVar) -> GaussianRational {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn parts(&self) -> &[(BaseVar, GaussianRational)] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.0
                .iter()
                .cloned()
                .chain(other.0.iter().map(|(v, c)| (*v, -c))),
        )
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::new(self.0.iter().map(|(v, c)| (*v, c * k)))
    }

    fn rename(&self, map: &impl Fn(BaseVar) -> BaseVar) -> Self {
        Self::new(self.0.iter().map(|(v, c)| (map(*v), c.clone())))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (v, c)) in self.0.iter().enumerate() {
            let s = c.to_string();
            let neg = s.starts_with('-');
            if k > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = s.trim_start_matches('-');
            if mag == "1" {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
        }
        Ok(())
    }
}

/// Even part of a term: an exponential times integer powers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvenMonomial {
    pub phase: Phase,
    powers: Vec<(BaseVar, u32)>,
}

impl EvenMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(phase: Phase, powers: impl IntoIterator<Item = (BaseVar, u32)>) -> Self {
        let mut map: BTreeMap<BaseVar, u32> = BTreeMap::new();
        for (v, k) in powers {
            *map.entry(v).or_default() += k;
        }
        Self {
            phase,
            powers: map.into_iter().filter(|&(_, k)| k > 0).collect(),
        }
    }

    pub fn powers(&self) -> &[(BaseVar, u32)] {
        &self.powers
    }

    pub fn power(&self, v: BaseVar) -> u32 {
        self.powers
            .iter()
            .find(|(w, _)| *w == v)
            .map(|&(_, k)| k)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let phase = if other.phase.is_zero() {
            self.phase.clone()
        } else if self.phase.is_zero() {
            other.phase.clone()
        } else {
            self.phase.add(&other.phase)
        };
        if other.powers.is_empty() {
            return Self {
                phase,
                powers: self.powers.clone(),
            };
        }
        Self::new(
            phase,
            self.powers.iter().chain(other.powers.iter()).copied(),
        )
    }

    /// Lowers the power of `v` by one; `None` if it is absent.
    pub(crate) fn lower(&self, v: BaseVar) -> Option<(u32, Self)> {
        let k = self.power(v);
        if k == 0 {
            return None;
        }
        let powers = self
            .powers
            .iter()
            .map(|&(w, e)| if w == v { (w, e - 1) } else { (w, e) })
            .filter(|&(_, e)| e > 0)
            .collect();
        Some((
            k,
            Self {
                phase: self.phase.clone(),
                powers,
            },
        ))
    }

    /// Quotient `self / other` if every power stays non-negative.
    pub(crate) fn div(&self, other: &Self) -> Option<Self> {
        let mut map: BTreeMap<BaseVar, i64> =
            self.powers.iter().map(|&(v, k)| (v, k as i64)).collect();
        for &(v, k) in &other.powers {
            *map.entry(v).or_default() -= k as i64;
        }
        if map.values().any(|&k| k < 0) {
            return None;
        }
        Some(Self::new(
            self.phase.sub(&other.phase),
            map.into_iter().map(|(v, k)| (v, k as u32)),
        ))
    }

    fn rename(&self, map: &impl Fn(BaseVar) -> BaseVar) -> Self {
        Self::new(
            self.phase.rename(map),
            self.powers.iter().map(|&(v, k)| (map(v), k)),
        )
    }
}

/// One term `coeff · even · odd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperTerm {
    pub coeff: GaussianRational,
    pub even: EvenMonomial,
    pub odd: GrassmannMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    even: EvenMonomial,
    odd: GrassmannMonomial,
}

/// ℤ₂ grading of an expression. Zero counts as even.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    /// `(-1)^{|a|}` for homogeneous values.
    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
            Parity::Mixed => panic!("sign of an inhomogeneous expression"),
        }
    }
}

/// Canonical sum of [`SuperTerm`]s.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperExpr {
    terms: BTreeMap<Key, GaussianRational>,
}

impl SuperExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, EvenMonomial::one(), GrassmannMonomial::unit())
    }

    pub fn term(coeff: GaussianRational, even: EvenMonomial, odd: GrassmannMonomial) -> Self {
        let mut e = Self::zero();
        e.push(coeff, even, odd);
        e
    }

    /// `e^{phase}`.
    pub fn exp(phase: Phase) -> Self {
        Self::term(
            GaussianRational::one(),
            EvenMonomial::new(phase, []),
            GrassmannMonomial::unit(),
        )
    }

    /// `v^k`.
    pub fn var_pow(v: BaseVar, k: u32) -> Self {
        Self::term(
            GaussianRational::one(),
            EvenMonomial::new(Phase::zero(), [(v, k)]),
            GrassmannMonomial::unit(),
        )
    }

    pub fn param(name: &'static str) -> Self {
        Self::var_pow(BaseVar::Param(name), 1)
    }

    pub fn generator(g: OddGenerator) -> Self {
        Self::term(
            GaussianRational::one(),
            EvenMonomial::one(),
            GrassmannMonomial::single(g),
        )
    }

    /// Product of generators in the given order, sign absorbed.
    pub fn odd_product(gens: &[OddGenerator]) -> Self {
        match GrassmannMonomial::from_product(gens) {
            Some((s, m)) => {
                Self::term(GaussianRational::from_int(s as i64), EvenMonomial::one(), m)
            }
            None => Self::zero(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = SuperTerm>) -> Self {
        let mut e = Self::zero();
        for t in terms {
            e.push(t.coeff, t.even, t.odd);
        }
        e
    }

    pub(crate) fn push(
        &mut self,
        coeff: GaussianRational,
        even: EvenMonomial,
        odd: GrassmannMonomial,
    ) {
        if coeff.is_zero() {
            return;
        }
        let key = Key { even, odd };
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = SuperTerm> + '_ {
        self.terms.iter().map(|(k, c)| SuperTerm {
            coeff: c.clone(),
            even: k.even.clone(),
            odd: k.odd.clone(),
        })
    }

    pub(crate) fn raw_terms(
        &self,
    ) -> impl Iterator<Item = (&EvenMonomial, &GrassmannMonomial, &GaussianRational)> {
        self.terms.iter().map(|(k, c)| (&k.even, &k.odd, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(key, c)| (key.clone(), c * k))
                .collect(),
        }
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for k in self.terms.keys() {
            if k.odd.is_odd() {
                odd = true;
            } else {
                even = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    fn filter(&self, keep: impl Fn(&Key) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn even_part(&self) -> Self {
        self.filter(|k| !k.odd.is_odd())
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|k| k.odd.is_odd())
    }

    /// Non-empty homogeneous parts, even part first.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, Self)> {
        let mut out = Vec::with_capacity(2);
        let e = self.even_part();
        if !e.is_zero() {
            out.push((Parity::Even, e));
        }
        let o = self.odd_part();
        if !o.is_zero() {
            out.push((Parity::Odd, o));
        }
        out
    }

    /// Grassmann-free projection.
    pub fn body(&self) -> Self {
        self.filter(|k| k.odd.is_unit())
    }

    /// Terms that contain no θ coordinate (odd constants allowed).
    pub fn theta_free(&self) -> Self {
        self.filter(|k| !k.odd.generators().iter().any(|g| g.is_coordinate()))
    }

    pub fn has_grassmann_support(&self) -> bool {
        self.terms.keys().any(|k| !k.odd.is_unit())
    }

    pub fn uses_var(&self, v: BaseVar) -> bool {
        self.terms
            .keys()
            .any(|k| k.even.power(v) > 0 || !k.even.phase.coeff(v).is_zero())
    }

    /// Graded-commutative product.
    ///
    /// Terms are grouped by even monomial so that each product of even
    /// parts is formed once per pair of groups.
    pub fn gr_mul(&self, other: &Self) -> Self {
        let (ga, gb) = (self.groups(), other.groups());
        let mut acc: BTreeMap<EvenMonomial, BTreeMap<GrassmannMonomial, GaussianRational>> =
            BTreeMap::new();
        for (ea, ta) in &ga {
            for (eb, tb) in &gb {
                let slot = acc.entry(ea.mul(eb)).or_default();
                for (oa, ca) in ta {
                    for (ob, cb) in tb {
                        let Some((sign, odd)) = oa.mul(ob) else {
                            continue;
                        };
                        let mut c = *ca * *cb;
                        if sign < 0 {
                            c = -c;
                        }
                        match slot.entry(odd) {
                            std::collections::btree_map::Entry::Vacant(v) => {
                                v.insert(c);
                            }
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                *o.get_mut() += &c
                            }
                        }
                    }
                }
            }
        }
        Self {
            terms: acc
                .into_iter()
                .flat_map(|(even, m)| {
                    m.into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(move |(odd, c)| {
                            (
                                Key {
                                    even: even.clone(),
                                    odd,
                                },
                                c,
                            )
                        })
                })
                .collect(),
        }
    }

    /// Consecutive runs of terms sharing an even monomial.
    fn groups(&self) -> Vec<(&EvenMonomial, Vec<(&GrassmannMonomial, &GaussianRational)>)> {
        let mut out: Vec<(&EvenMonomial, Vec<(&GrassmannMonomial, &GaussianRational)>)> =
            Vec::new();
        for (k, c) in &self.terms {
            match out.last_mut() {
                Some((e, v)) if *e == &k.even => v.push((&k.odd, c)),
                _ => out.push((&k.even, vec![(&k.odd, c)])),
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.gr_mul(self);
        }
        acc
    }

    /// Coefficient `c_G` in `e = Σ_G G · c_G`, `G` a monomial in θ₁, θ₂.
    ///
    /// Coordinates rank before every odd constant, so `G` is always the
    /// prefix of a canonical monomial and no sign is involved.
    pub fn extract_component(&self, theta: &GrassmannMonomial) -> Self {
        assert!(
            theta.generators().iter().all(|g| g.is_coordinate()),
            "component selector must be a monomial in θ1, θ2"
        );
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let (coords, rest) = k.odd.split_coordinates();
            if &coords == theta {
                out.push(c.clone(), k.even.clone(), rest);
            }
        }
        out
    }

    /// Exponential of a nilpotent even element (every term has odd support).
    pub fn exp_nilpotent(&self) -> Option<Self> {
        if self.terms.keys().any(|k| k.odd.is_unit() || k.odd.is_odd()) {
            return None;
        }
        let mut acc = Self::one();
        let mut power = Self::one();
        let mut k = 1i64;
        loop {
            power = power.gr_mul(self).scale(&GaussianRational::ratio(1, k));
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
            k += 1;
        }
        Some(acc)
    }

    /// Renames base variables and odd generators, re-canonicalizing.
    pub fn rename(
        &self,
        vars: impl Fn(BaseVar) -> BaseVar,
        gens: impl Fn(OddGenerator) -> OddGenerator,
    ) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let Some((sign, odd)) = k.odd.rename(&gens) else {
                continue;
            };
            let c = if sign < 0 { -c } else { c.clone() };
            out.push(c, k.even.rename(&vars), odd);
        }
        out
    }

    /// Substitutes a numeric value for every base variable.
    pub fn eval_numeric(&self, values: &BTreeMap<BaseVar, Complex<f64>>) -> Result<Complex<f64>> {
        if self.has_grassmann_support() {
            return Err(Error::GrassmannSupport(self.to_string()));
        }
        let lookup = |v: &BaseVar| {
            values
                .get(v)
                .copied()
                .ok_or_else(|| Error::MissingValue(v.to_string()))
        };
        let mut acc = Complex::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let mut exponent = Complex::new(0.0, 0.0);
            for (v, pc) in k.even.phase.parts() {
                exponent += pc.to_complex64() * lookup(v)?;
            }
            let mut val = c.to_complex64() * exponent.exp();
            for (v, p) in &k.even.powers {
                val *= lookup(v)?.powu(*p);
            }
            acc += val;
        }
        Ok(acc)
    }
}

impl From<GaussianRational> for SuperExpr {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a SuperExpr> for &'a SuperExpr {
    type Output = SuperExpr;
    fn add(self, rhs: &'a SuperExpr) -> SuperExpr {
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (k, c) in &small.terms {
            big.push(c.clone(), k.even.clone(), k.odd.clone());
        }
        big
    }
}

impl<'a> Sub<&'a SuperExpr> for &'a SuperExpr {
    type Output = SuperExpr;
    fn sub(self, rhs: &'a SuperExpr) -> SuperExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.push(-c, k.even.clone(), k.odd.clone());
        }
        out
    }
}

impl<'a> Mul<&'a SuperExpr> for &'a SuperExpr {
    type Output = SuperExpr;
    fn mul(self, rhs: &'a SuperExpr) -> SuperExpr {
        self.gr_mul(rhs)
    }
}

impl Add for SuperExpr {
    type Output = SuperExpr;
    fn add(self, rhs: SuperExpr) -> SuperExpr {
        &self + &rhs
    }
}

impl Sub for SuperExpr {
    type Output = SuperExpr;
    fn sub(self, rhs: SuperExpr) -> SuperExpr {
        &self - &rhs
    }
}

impl Mul for SuperExpr {
    type Output = SuperExpr;
    fn mul(self, rhs: SuperExpr) -> SuperExpr {
        self.gr_mul(&rhs)
    }
}

impl Neg for &SuperExpr {
    type Output = SuperExpr;
    fn neg(self) -> SuperExpr {
        self.scale(&GaussianRational::from_int(-1))
    }
}

impl Neg for SuperExpr {
    type Output = SuperExpr;
    fn neg(self) -> SuperExpr {
        -&self
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, first: bool, c: &GaussianRational, k: &Key) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    if !k.even.phase.is_zero() {
        factors.push(format!("e^{{{}}}", k.even.phase));
    }
    for (v, p) in &k.even.powers {
        factors.push(if *p == 1 {
            v.to_string()
        } else {
            format!("{v}^{p}")
        });
    }
    if !k.odd.is_unit() {
        factors.push(k.odd.to_string());
    }
    let cs = c.to_string();
    let (neg, mag) = match cs.strip_prefix('-') {
        Some(m) => (true, m.to_string()),
        None => (false, cs),
    };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    if factors.is_empty() {
        write!(f, "{mag}")
    } else if mag == "1" {
        write!(f, "{}", factors.join("*"))
    } else {
        write!(f, "{mag}*{}", factors.join("*"))
    }
}

impl fmt::Display for SuperExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            fmt_term(f, i == 0, c, k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SuperExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
