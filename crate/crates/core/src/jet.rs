//! Free differential algebra over named superfields of `(x, t, t₂, θ₁)`.
//!
//! A jet `∂ₓ^{kx}∂ₜ^{kt}∂_{t₂}^{kt₂}D₁^{k₁} f` always has `k₁ ∈ {0, 1}`;
//! `D₁²` is folded into one more `∂ₓ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::calculus::Derivation;
use crate::error::Result;
use crate::expr::Parity;
use crate::fraction::SuperFraction;
use crate::index::MultiIndex;
use crate::scalar::GaussianRational;

/// A named superfield. Constant fields are formal parameters: every
/// derivative of them vanishes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Field {
    constant: bool,
    odd: bool,
    name: Arc<str>,
}

impl Field {
    pub fn even(name: &str) -> Self {
        Self {
            constant: false,
            odd: false,
            name: name.into(),
        }
    }

    pub fn odd(name: &str) -> Self {
        Self {
            constant: false,
            odd: true,
            name: name.into(),
        }
    }

    /// Even formal constant such as λ or an unknown coefficient.
    pub fn constant(name: &str) -> Self {
        Self {
            constant: true,
            odd: false,
            name: name.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn is_constant(&self) -> bool {
        self.constant
    }

    pub fn jet(&self, kx: u32, kt: u32, kt2: u32, k1: u32) -> JetVariable {
        JetVariable::new(self.clone(), kx, kt, kt2, k1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetVariable {
    pub field: Field,
    pub kx: u32,
    pub kt: u32,
    pub kt2: u32,
    pub k1: u32,
}

impl JetVariable {
    /// Normalizes `k₁ ≥ 2` via `D₁² = ∂ₓ`.
    pub fn new(field: Field, kx: u32, kt: u32, kt2: u32, k1: u32) -> Self {
        Self {
            field,
            kx: kx + k1 / 2,
            kt,
            kt2,
            k1: k1 % 2,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.field.odd ^ (self.k1 == 1)
    }

    pub fn index(&self) -> MultiIndex {
        MultiIndex::new(self.kx, self.kt, self.kt2, self.k1, 0)
    }

    pub fn has_time(&self) -> bool {
        self.kt > 0 || self.kt2 > 0
    }

    /// `d` applied to the jet, or `None` when it vanishes.
    pub fn derive(&self, d: Derivation) -> Option<Self> {
        if self.field.constant {
            return None;
        }
        let mut v = self.clone();
        match d {
            Derivation::Dx => v.kx += 1,
            Derivation::Dt => v.kt += 1,
            Derivation::Dt2 => v.kt2 += 1,
            Derivation::D1 => {
                if v.k1 == 1 {
                    v.k1 = 0;
                    v.kx += 1;
                } else {
                    v.k1 = 1;
                }
            }
            Derivation::D2 => panic!("jets carry no θ₂ direction"),
        }
        Some(v)
    }
}

impl fmt::Display for JetVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k1 == 1 {
            write!(f, "D1")?;
        }
        write!(f, "{}", self.field.name)?;
        if self.kx + self.kt + self.kt2 > 0 {
            write!(f, "_")?;
            for _ in 0..self.kt2 {
                write!(f, "t2")?;
            }
            for _ in 0..self.kt {
                write!(f, "t")?;
            }
            for _ in 0..self.kx {
                write!(f, "x")?;
            }
        }
        Ok(())
    }
}

/// Sorted product of jet powers; odd jets appear with exponent 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetMonomial(Vec<(JetVariable, u32)>);

impl JetMonomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn factors(&self) -> &[(JetVariable, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|(v, _)| v.is_odd()).count() % 2 == 1
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Product with sign, `None` if an odd jet repeats.
    pub fn mul(&self, other: &Self) -> Option<(bool, Self)> {
        let mut negate = false;
        // sign: each odd jet of `other` passes the larger odd jets of `self`
        for (w, _) in other.0.iter().filter(|(w, _)| w.is_odd()) {
            for (v, _) in self.0.iter().filter(|(v, _)| v.is_odd()) {
                if v == w {
                    return None;
                }
                if v > w {
                    negate = !negate;
                }
            }
        }
        let mut out: Vec<(JetVariable, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take_left = j >= other.0.len() || (i < self.0.len() && self.0[i].0 <= other.0[j].0);
            if take_left {
                if j < other.0.len() && self.0[i].0 == other.0[j].0 {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    j += 1;
                } else {
                    out.push(self.0[i].clone());
                }
                i += 1;
            } else {
                out.push(other.0[j].clone());
                j += 1;
            }
        }
        Some((negate, Self(out)))
    }

    /// Splits into (constant-field part, field part).
    pub fn split_constants(&self) -> (JetMonomial, JetMonomial) {
        let (c, f): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(v, _)| v.field.constant);
        (Self(c), Self(f))
    }
}

impl fmt::Display for JetMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct JetExpr {
    terms: BTreeMap<JetMonomial, GaussianRational>,
}

impl JetExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut e = Self::zero();
        e.push(JetMonomial::one(), c);
        e
    }

    pub fn var(v: JetVariable) -> Self {
        let mut e = Self::zero();
        e.push(JetMonomial(vec![(v, 1)]), GaussianRational::one());
        e
    }

    /// The undifferentiated field.
    pub fn field(f: &Field) -> Self {
        Self::var(f.jet(0, 0, 0, 0))
    }

    /// Shorthand for a jet given by index syntax, e.g. `jet(&b, "3x")`.
    pub fn jet(f: &Field, idx: &str) -> Self {
        let i: MultiIndex = idx.parse().expect("valid jet index");
        Self::var(f.jet(i.kx, i.kt, i.kt2, i.k1))
    }

    fn push(&mut self, m: JetMonomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetMonomial, &GaussianRational)> {
        self.terms.iter()
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

    pub fn coefficient(&self, m: &JetMonomial) -> GaussianRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.push(m.clone(), c * k);
        }
        out
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            if m.is_odd() {
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

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn variables(&self) -> Vec<JetVariable> {
        let mut vs: Vec<JetVariable> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Graded Leibniz rule.
    pub fn derive(&self, d: Derivation) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut odd_before = false;
            for (i, (v, e)) in m.0.iter().enumerate() {
                if let Some(dv) = v.derive(d) {
                    let mut prefix = m.0[..i].to_vec();
                    if *e > 1 {
                        prefix.push((v.clone(), e - 1));
                    }
                    let prefix = JetExpr::monomial(JetMonomial(prefix));
                    let suffix = JetExpr::monomial(JetMonomial(m.0[i + 1..].to_vec()));
                    let mut k = c * &GaussianRational::from_int(*e as i64);
                    if d.is_odd() && odd_before {
                        k = -k;
                    }
                    let piece = &(&prefix * &JetExpr::var(dv)) * &suffix;
                    out = &out + &piece.scale(&k);
                }
                if v.is_odd() {
                    odd_before = !odd_before;
                }
            }
        }
        out
    }

    /// Applies a multi-index, `D₁` innermost.
    pub fn derive_index(&self, idx: &MultiIndex) -> Self {
        idx.derivations()
            .into_iter()
            .fold(self.clone(), |e, d| e.derive(d))
    }

    pub fn monomial(m: JetMonomial) -> Self {
        let mut e = Self::zero();
        e.push(m, GaussianRational::one());
        e
    }

    /// Replaces jets by expressions; `None` keeps the jet.
    pub fn substitute(&self, map: &mut impl FnMut(&JetVariable) -> Option<JetExpr>) -> Self {
        let mut cache: BTreeMap<JetVariable, Option<JetExpr>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = JetExpr::constant(c.clone());
            for (v, e) in &m.0 {
                let r = cache.entry(v.clone()).or_insert_with(|| map(v)).clone();
                let r = r.unwrap_or_else(|| JetExpr::var(v.clone()));
                acc = &acc * &r.pow(*e);
            }
            out = &out + &acc;
        }
        out
    }

    /// Replaces every jet of `field` by the matching derivative of `by`.
    pub fn substitute_field(&self, field: &Field, by: &JetExpr) -> Self {
        self.substitute(&mut |v| (v.field == *field).then(|| by.derive_index(&v.index())))
    }

    /// Evaluates in the fraction field given values for every jet.
    pub fn evaluate(
        &self,
        value: &mut impl FnMut(&JetVariable) -> Result<SuperFraction>,
    ) -> Result<SuperFraction> {
        let mut cache: BTreeMap<JetVariable, SuperFraction> = BTreeMap::new();
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut acc = SuperFraction::constant(c.clone());
            for (v, e) in &m.0 {
                if !cache.contains_key(v) {
                    cache.insert(v.clone(), value(v)?);
                }
                acc = acc.mul(&cache[v].pow(*e));
            }
            parts.push(acc);
        }
        Ok(SuperFraction::sum(&parts))
    }

    /// Groups terms by their non-constant monomial; the coefficients are
    /// polynomials in the constant fields.
    pub fn collect_constants(&self) -> BTreeMap<JetMonomial, JetExpr> {
        let mut out: BTreeMap<JetMonomial, JetExpr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (consts, rest) = m.split_constants();
            out.entry(rest).or_default().push(consts, c.clone());
        }
        out.retain(|_, e| !e.is_zero());
        out
    }

    /// Constant-field factor `field ↦ value`.
    pub fn assign_constant(&self, field: &Field, value: &GaussianRational) -> Self {
        self.substitute(&mut |v| (v.field == *field).then(|| JetExpr::constant(value.clone())))
    }
}

impl<'a> Add<&'a JetExpr> for &'a JetExpr {
    type Output = JetExpr;

    fn add(self, rhs: &'a JetExpr) -> JetExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.push(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a JetExpr> for &'a JetExpr {
    type Output = JetExpr;

    fn sub(self, rhs: &'a JetExpr) -> JetExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.push(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a JetExpr> for &'a JetExpr {
    type Output = JetExpr;

    fn mul(self, rhs: &'a JetExpr) -> JetExpr {
        let mut out = JetExpr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if let Some((neg, m)) = a.mul(b) {
                    let c = ca * cb;
                    out.push(m, if neg { -c } else { c });
                }
            }
        }
        out
    }
}

impl Neg for &JetExpr {
    type Output = JetExpr;

    fn neg(self) -> JetExpr {
        self.scale(&GaussianRational::from_int(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for JetExpr {
            type Output = JetExpr;
            fn $m(self, rhs: JetExpr) -> JetExpr {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for JetExpr {
    type Output = JetExpr;

    fn neg(self) -> JetExpr {
        -&self
    }
}

impl From<GaussianRational> for JetExpr {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for JetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(s) => (true, s.to_string()),
                None => (false, cs),
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for JetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
