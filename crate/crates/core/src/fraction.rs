//! Quotients of expressions with even, body-nonzero denominators.
//!
//! The denominator is kept factored as `Π bᵢ^{eᵢ}`. A derivative then
//! raises each exponent by one instead of squaring the whole denominator,
//! and exact cancellation against Grassmann-free bases keeps numerators
//! small.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::Complex;

use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::expr::{BaseVar, EvenMonomial, Parity, SuperExpr};
use crate::grassmann::GrassmannMonomial;
use crate::index::MultiIndex;
use crate::scalar::GaussianRational;

#[derive(Clone)]
pub struct SuperFraction {
    num: SuperExpr,
    den: Vec<(SuperExpr, u32)>,
}

fn check_base(b: &SuperExpr) -> Result<()> {
    if b.parity() != Parity::Even || b.body().is_zero() {
        return Err(Error::NonInvertible(b.to_string()));
    }
    Ok(())
}

/// Inverse of a single even term without odd support or powers.
fn monomial_inverse(b: &SuperExpr) -> Option<SuperExpr> {
    if b.len() != 1 {
        return None;
    }
    let t = b.terms().next()?;
    if !t.odd.is_unit() || !t.even.powers().is_empty() {
        return None;
    }
    let inv = t.coeff.inv()?;
    Some(SuperExpr::term(
        inv,
        EvenMonomial::new(t.even.phase.scale(&GaussianRational::from_int(-1)), []),
        GrassmannMonomial::unit(),
    ))
}

impl SuperFraction {
    pub fn from_expr(e: SuperExpr) -> Self {
        Self {
            num: e,
            den: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::from_expr(SuperExpr::zero())
    }

    pub fn one() -> Self {
        Self::from_expr(SuperExpr::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_expr(SuperExpr::constant(c))
    }

    /// `num / den`; `den` must be even with a nonzero body.
    pub fn new(num: SuperExpr, den: SuperExpr) -> Result<Self> {
        Self::with_factors(num, vec![(den, 1)])
    }

    /// `num / Π bᵢ^{eᵢ}`.
    pub fn with_factors(num: SuperExpr, factors: Vec<(SuperExpr, u32)>) -> Result<Self> {
        for (b, _) in &factors {
            check_base(b)?;
        }
        let mut f = Self {
            num,
            den: Vec::new(),
        };
        for (b, e) in factors {
            f.push_factor(b, e);
        }
        f.simplify();
        Ok(f)
    }

    fn push_factor(&mut self, b: SuperExpr, e: u32) {
        if e == 0 {
            return;
        }
        if let Some(inv) = monomial_inverse(&b) {
            self.num = self.num.gr_mul(&inv.pow(e));
            return;
        }
        match self.den.binary_search_by(|(x, _)| x.cmp(&b)) {
            Ok(i) => self.den[i].1 += e,
            Err(i) => self.den.insert(i, (b, e)),
        }
    }

    pub fn numerator(&self) -> &SuperExpr {
        &self.num
    }

    pub fn factors(&self) -> &[(SuperExpr, u32)] {
        &self.den
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> SuperExpr {
        self.den
            .iter()
            .fold(SuperExpr::one(), |acc, (b, e)| acc.gr_mul(&b.pow(*e)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn parity(&self) -> Parity {
        self.num.parity()
    }

    pub fn has_grassmann_support(&self) -> bool {
        self.num.has_grassmann_support() || self.den.iter().any(|(b, _)| b.has_grassmann_support())
    }

    /// Numerators of `self` and `other` over the common denominator
    /// `Π b^{max(e, e')}`.
    fn common(&self, other: &Self) -> (SuperExpr, SuperExpr, Vec<(SuperExpr, u32)>) {
        let mut exps: BTreeMap<&SuperExpr, (u32, u32)> = BTreeMap::new();
        for (b, e) in &self.den {
            exps.entry(b).or_default().0 = *e;
        }
        for (b, e) in &other.den {
            exps.entry(b).or_default().1 = *e;
        }
        let mut a = self.num.clone();
        let mut c = other.num.clone();
        let mut den = Vec::with_capacity(exps.len());
        for (b, (ea, eb)) in exps {
            let m = ea.max(eb);
            if m > ea {
                a = a.gr_mul(&b.pow(m - ea));
            }
            if m > eb {
                c = c.gr_mul(&b.pow(m - eb));
            }
            den.push((b.clone(), m));
        }
        (a, c, den)
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, c, den) = self.common(other);
        let mut f = Self { num: &a + &c, den };
        f.simplify();
        f
    }

    /// Sum over one common denominator, padding each numerator once.
    pub fn sum(items: &[Self]) -> Self {
        let mut exps: BTreeMap<&SuperExpr, u32> = BTreeMap::new();
        for f in items.iter().filter(|f| !f.is_zero()) {
            for (b, e) in &f.den {
                let m = exps.entry(b).or_default();
                *m = (*m).max(*e);
            }
        }
        let mut powers: BTreeMap<(&SuperExpr, u32), SuperExpr> = BTreeMap::new();
        let mut num = SuperExpr::zero();
        for f in items.iter().filter(|f| !f.is_zero()) {
            let mut pad = SuperExpr::one();
            for (b, m) in &exps {
                let have = f.den.iter().find(|(x, _)| x == *b).map_or(0, |(_, e)| *e);
                if *m > have {
                    let p = powers
                        .entry((*b, m - have))
                        .or_insert_with(|| b.pow(m - have));
                    pad = pad.gr_mul(p);
                }
            }
            num = &num + &f.num.gr_mul(&pad);
        }
        let mut out = Self {
            num,
            den: exps.into_iter().map(|(b, e)| (b.clone(), e)).collect(),
        };
        out.simplify();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussianRational::from_int(-1))
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self {
            num: self.num.scale(k),
            den: if k.is_zero() {
                Vec::new()
            } else {
                self.den.clone()
            },
        }
    }

    /// Graded product `self · other`. Denominators are even and commute.
    pub fn mul(&self, other: &Self) -> Self {
        let mut f = Self {
            num: self.num.gr_mul(&other.num),
            den: self.den.clone(),
        };
        if f.num.is_zero() {
            f.den.clear();
            return f;
        }
        for (b, e) in &other.den {
            f.push_factor(b.clone(), *e);
        }
        f.simplify();
        f
    }

    pub fn mul_expr(&self, e: &SuperExpr) -> Self {
        self.mul(&Self::from_expr(e.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `self / other`; `other` must reduce to an even numerator with a
    /// nonzero body.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        check_base(&other.num)?;
        let mut f = Self {
            num: self.num.gr_mul(&other.denominator()),
            den: self.den.clone(),
        };
        f.push_factor(other.num.clone(), 1);
        f.simplify();
        Ok(f)
    }

    /// Applies one derivation with the (graded) quotient rule.
    ///
    /// For an odd `D` and an even denominator `d`, `d⁻¹` is even, so
    /// `D(n·d⁻¹) = (Dn)·d⁻¹ + (−1)^{|n|} n·D(d⁻¹)` with `D(d⁻¹) = −d⁻²·Dd`,
    /// i.e. `D(n/d) = Dn/d − (−1)^{|n|} n·Dd/d²`.
    ///
    /// Example: `n = ζ₁`, `d = 1 + eˣ`, `D = D₁`. Then `Dn = 0`,
    /// `Dd = θ₁eˣ` and `n` is odd, so `D₁(ζ₁/d) = +ζ₁θ₁eˣ/d²`.
    pub fn derive(&self, d: Derivation) -> Self {
        let dn = d.apply(&self.num);
        let active: Vec<(usize, SuperExpr)> = self
            .den
            .iter()
            .enumerate()
            .map(|(i, (b, _))| (i, d.apply(b)))
            .filter(|(_, db)| !db.is_zero())
            .collect();
        if active.is_empty() {
            return Self {
                num: dn,
                den: if self.num.is_zero() {
                    Vec::new()
                } else {
                    self.den.clone()
                },
            };
        }
        // n with the graded sign of the quotient-rule term
        let signed_n = if d.is_odd() {
            &self.num.even_part() - &self.num.odd_part()
        } else {
            self.num.clone()
        };
        let prod_except = |skip: Option<usize>| {
            active
                .iter()
                .filter(|(i, _)| Some(*i) != skip)
                .fold(SuperExpr::one(), |acc, (i, _)| acc.gr_mul(&self.den[*i].0))
        };
        let mut num = dn.gr_mul(&prod_except(None));
        for (i, db) in &active {
            let e = GaussianRational::from_int(self.den[*i].1 as i64);
            let t = signed_n.gr_mul(db).gr_mul(&prod_except(Some(*i))).scale(&e);
            num = &num - &t;
        }
        let mut den = self.den.clone();
        for (i, _) in &active {
            den[*i].1 += 1;
        }
        let mut f = Self { num, den };
        f.simplify();
        f
    }

    pub fn derive_index(&self, idx: &MultiIndex) -> Self {
        idx.derivations()
            .into_iter()
            .fold(self.clone(), |acc, d| acc.derive(d))
    }

    /// Cancels Grassmann-free denominator bases that divide the numerator.
    pub fn simplify(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for i in 0..self.den.len() {
            if self.den[i].0.has_grassmann_support() {
                continue;
            }
            while self.den[i].1 > 0 {
                match div_exact(&self.num, &self.den[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[i].1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        let (a, c, _) = self.common(other);
        a == c
    }

    /// Numerator of `self − other` over the common denominator.
    pub fn residual(&self, other: &Self) -> SuperExpr {
        let (a, c, _) = self.common(other);
        &a - &c
    }

    /// Components in θ₁, θ₂. Denominator souls are expanded with
    /// `1/(b₀ + s) = (b₀² − b₀s + s²)/b₀³`, exact because `s³ = 0`.
    pub fn theta_components(&self) -> crate::calculus::ComponentQuad<SuperFraction> {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for (b, e) in &self.den {
            let b0 = b.theta_free();
            let s = b - &b0;
            if s.is_zero() {
                den.push((b.clone(), *e));
                continue;
            }
            let series = &(&b0.gr_mul(&b0) - &b0.gr_mul(&s)) + &s.gr_mul(&s);
            num = num.gr_mul(&series.pow(*e));
            den.push((b0, 3 * e));
        }
        let q = crate::calculus::taylor_components(&num);
        let wrap = |n: SuperExpr| {
            let mut f = Self {
                num: SuperExpr::zero(),
                den: Vec::new(),
            };
            f.num = n;
            for (b, e) in &den {
                f.push_factor(b.clone(), *e);
            }
            f.simplify();
            f
        };
        crate::calculus::ComponentQuad {
            u: wrap(q.u),
            xi1: wrap(q.xi1),
            xi2: wrap(q.xi2),
            v: wrap(q.v),
        }
    }

    /// Numerator and denominator evaluated separately.
    pub fn eval_parts(
        &self,
        values: &BTreeMap<BaseVar, Complex<f64>>,
    ) -> Result<(Complex<f64>, Complex<f64>)> {
        let n = self.num.eval_numeric(values)?;
        let mut d = Complex::new(1.0, 0.0);
        for (b, e) in &self.den {
            d *= b.eval_numeric(values)?.powu(*e);
        }
        Ok((n, d))
    }
}

impl PartialEq for SuperFraction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<SuperExpr> for SuperFraction {
    fn from(e: SuperExpr) -> Self {
        Self::from_expr(e)
    }
}

impl fmt::Display for SuperFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(b, e)| {
                if *e == 1 {
                    format!("({b})")
                } else {
                    format!("({b})^{e}")
                }
            })
            .collect();
        write!(f, "({})/({})", self.num, den.join("*"))
    }
}

impl fmt::Debug for SuperFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Derivative of `ln f` along `idx`, as a fraction. The innermost
/// derivation is seeded with `D ln f = Df / f`.
pub fn log_derivative(f: &SuperExpr, idx: &MultiIndex) -> Result<SuperFraction> {
    check_base(f)?;
    let mut ds = idx.derivations().into_iter();
    let first = ds.next().ok_or(Error::ZeroOrderLog)?;
    let seed = SuperFraction::new(first.apply(f), f.clone())?;
    Ok(ds.fold(seed, |acc, d| acc.derive(d)))
}

// ---------------------------------------------------------------------------
// Exact division of exponential polynomials.

/// Dense comparison key under a lexicographic group order on
/// (phase coefficients, powers).
#[derive(PartialEq, Eq, PartialOrd, Ord, Clone)]
struct OrderKey {
    phase: Vec<GaussianRational>,
    powers: Vec<i64>,
}

struct Order {
    vars: Vec<BaseVar>,
}

impl Order {
    fn new<'a>(exprs: impl IntoIterator<Item = &'a SuperExpr>) -> Self {
        let mut vars = BTreeSet::new();
        for e in exprs {
            for (even, _, _) in e.raw_terms() {
                vars.extend(even.phase.parts().iter().map(|(v, _)| *v));
                vars.extend(even.powers().iter().map(|(v, _)| *v));
            }
        }
        Self {
            vars: vars.into_iter().collect(),
        }
    }

    fn key(&self, m: &EvenMonomial) -> OrderKey {
        OrderKey {
            phase: self.vars.iter().map(|v| m.phase.coeff(*v)).collect(),
            powers: self.vars.iter().map(|v| m.power(*v) as i64).collect(),
        }
    }

    fn add(a: &OrderKey, b: &OrderKey) -> OrderKey {
        OrderKey {
            phase: a.phase.iter().zip(&b.phase).map(|(x, y)| x + y).collect(),
            powers: a.powers.iter().zip(&b.powers).map(|(x, y)| x + y).collect(),
        }
    }

    fn sub(a: &OrderKey, b: &OrderKey) -> OrderKey {
        OrderKey {
            phase: a.phase.iter().zip(&b.phase).map(|(x, y)| x - y).collect(),
            powers: a.powers.iter().zip(&b.powers).map(|(x, y)| x - y).collect(),
        }
    }
}

/// Exact quotient of a Grassmann-free `num` by a Grassmann-free `div`.
///
/// Long division from the top under the group order; the remainder is kept
/// sorted so each step only touches `|div|` entries.
fn div_exact_even(num: &SuperExpr, div: &SuperExpr, order: &Order) -> Option<SuperExpr> {
    let dterms: Vec<(OrderKey, &EvenMonomial, &GaussianRational)> = div
        .raw_terms()
        .map(|(e, _, c)| (order.key(e), e, c))
        .collect();
    let lead = dterms.iter().max_by(|a, b| a.0.cmp(&b.0))?;
    let low_d = dterms.iter().map(|t| &t.0).min()?;
    let (lead_key_d, lead_d) = (lead.0.clone(), lead.1);
    let lead_inv = lead.2.inv()?;
    let mut rem: BTreeMap<OrderKey, (EvenMonomial, GaussianRational)> = num
        .raw_terms()
        .map(|(e, _, c)| (order.key(e), (e.clone(), c.clone())))
        .collect();
    let bound = Order::sub(rem.keys().next()?, low_d);
    let mut quot = SuperExpr::zero();
    let cap = 64 * (num.len() + 1);
    let mut steps = 0usize;
    while let Some((k, (m, c))) = rem.pop_last() {
        steps += 1;
        let qk = Order::sub(&k, &lead_key_d);
        if qk < bound || steps > cap {
            return None;
        }
        let qm = m.div(lead_d)?;
        let qc = &c * &lead_inv;
        for (dk, dm, dc) in &dterms {
            if *dk == lead_key_d {
                continue;
            }
            let key = Order::add(&qk, dk);
            let t = -(&qc * *dc);
            match rem.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert((qm.mul(dm), t));
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    o.get_mut().1 += &t;
                    if o.get().1.is_zero() {
                        o.remove();
                    }
                }
            }
        }
        quot.push(qc, qm, GrassmannMonomial::unit());
    }
    Some(quot)
}

/// Exact quotient `num / div` for a Grassmann-free divisor, applied
/// separately to each Grassmann component of `num`.
pub(crate) fn div_exact(num: &SuperExpr, div: &SuperExpr) -> Option<SuperExpr> {
    if div.has_grassmann_support() || div.is_zero() {
        return None;
    }
    let order = Order::new([num, div]);
    let mut groups: BTreeMap<GrassmannMonomial, SuperExpr> = BTreeMap::new();
    for (even, odd, c) in num.raw_terms() {
        groups.entry(odd.clone()).or_default().push(
            c.clone(),
            even.clone(),
            GrassmannMonomial::unit(),
        );
    }
    let mut out = SuperExpr::zero();
    for (odd, part) in groups {
        let q = div_exact_even(&part, div, &order)?;
        for (even, _, c) in q.raw_terms() {
            out.push(c.clone(), even.clone(), odd.clone());
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::d_base;
    use crate::expr::Phase;
    use crate::grassmann::OddGenerator;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn ex(k: i64) -> SuperExpr {
        SuperExpr::exp(Phase::new([(BaseVar::X, q(k))]))
    }

    #[test]
    fn common_denominator_sum() {
        let f = &SuperExpr::one() + &ex(1);
        let g = &SuperExpr::one() - &ex(2);
        let a = SuperFraction::new(d_base(&f, BaseVar::X), f.clone()).unwrap();
        let b = SuperFraction::new(d_base(&g, BaseVar::X), g.clone()).unwrap();
        let fg = f.gr_mul(&g);
        let expected = SuperFraction::new(
            &d_base(&f, BaseVar::X).gr_mul(&g) + &f.gr_mul(&d_base(&g, BaseVar::X)),
            fg,
        )
        .unwrap();
        assert_eq!(a.add(&b), expected);
    }

    #[test]
    fn reciprocal_product_is_one() {
        let n = &SuperExpr::constant(q(2)) + &ex(3);
        let d = &SuperExpr::one() + &ex(1);
        let a = SuperFraction::new(n.clone(), d.clone()).unwrap();
        let b = SuperFraction::new(d, n).unwrap();
        assert_eq!(a.mul(&b), SuperFraction::one());
    }

    #[test]
    fn division_of_fractions() {
        let d = &SuperExpr::one() + &ex(1);
        let a = SuperFraction::new(ex(1), d.clone()).unwrap();
        let b = SuperFraction::new(SuperExpr::one(), d).unwrap();
        let r = a.div(&b).unwrap();
        assert_eq!(r, SuperFraction::from_expr(ex(1)));
        assert!(r.factors().is_empty());
        assert!(matches!(
            a.div(&SuperFraction::zero()),
            Err(Error::DivisionByZero)
        ));
        let odd = SuperFraction::from_expr(SuperExpr::generator(OddGenerator::ZETA1));
        assert!(matches!(a.div(&odd), Err(Error::NonInvertible(_))));
    }

    #[test]
    fn quotient_rule() {
        // ∂x(1/g), g = 1 − e^x → e^x/(1 − e^x)²
        let g = &SuperExpr::one() - &ex(1);
        let r = SuperFraction::new(SuperExpr::one(), g.clone())
            .unwrap()
            .derive(Derivation::Dx);
        let expected = SuperFraction::with_factors(ex(1), vec![(g, 2)]).unwrap();
        assert_eq!(r, expected);
        // D1 of a constant vanishes
        let c = SuperFraction::constant(q(7)).derive(Derivation::D1);
        assert!(c.is_zero());
    }

    #[test]
    fn log_derivatives() {
        let f = &SuperExpr::one() + &ex(1);
        let r = log_derivative(&f, &MultiIndex::x(1)).unwrap();
        assert_eq!(r, SuperFraction::new(ex(1), f.clone()).unwrap());

        let kappa = GaussianRational::ratio(2, 3);
        let e = SuperExpr::exp(Phase::new([(BaseVar::X, kappa)]));
        assert!(log_derivative(&e, &MultiIndex::x(2)).unwrap().is_zero());
        assert!(matches!(
            log_derivative(&f, &MultiIndex::default()),
            Err(Error::ZeroOrderLog)
        ));
    }

    #[test]
    fn odd_log_derivative_of_nilpotent_perturbation() {
        // f = 1 + θ1ζ1e^η : D1 ln f = D1f/f, D1f = ζ1 e^η + θ1·(θ1ζ1)ₓ… = ζ1e^η
        use OddGenerator as G;
        let eta = SuperExpr::exp(Phase::kdv(&q(1)));
        let s = SuperExpr::odd_product(&[G::THETA1, G::ZETA1]).gr_mul(&eta);
        let f = &SuperExpr::one() + &s;
        let r = log_derivative(&f, &MultiIndex::default().with_d1(1)).unwrap();
        let z = SuperExpr::generator(G::ZETA1).gr_mul(&eta);
        assert_eq!(r, SuperFraction::new(z, f.clone()).unwrap());
        // multiply back by f: body of f is 1
        assert_eq!(f.body(), SuperExpr::one());
    }

    #[test]
    fn exact_division_cancels() {
        // (1 − e^{2x}) / (1 − e^x) = 1 + e^x
        let n = &SuperExpr::one() - &ex(2);
        let d = &SuperExpr::one() - &ex(1);
        assert_eq!(div_exact(&n, &d).unwrap(), &SuperExpr::one() + &ex(1));
        assert!(div_exact(&SuperExpr::one(), &d).is_none());
        let f = SuperFraction::with_factors(n, vec![(d.clone(), 2)]).unwrap();
        assert_eq!(f.factors(), &[(d, 1)]);
    }

    #[test]
    fn theta_components_of_fraction() {
        use OddGenerator as G;
        // 1/(1 + θ1θ2 x) = 1 − θ1θ2 x
        let t12 = SuperExpr::odd_product(&[G::THETA1, G::THETA2]);
        let d = &SuperExpr::one() + &t12.gr_mul(&SuperExpr::var_pow(BaseVar::X, 1));
        let f = SuperFraction::new(SuperExpr::one(), d).unwrap();
        let c = f.theta_components();
        assert_eq!(c.u, SuperFraction::one());
        assert_eq!(
            c.v,
            SuperFraction::from_expr(SuperExpr::var_pow(BaseVar::X, 1))
        );
        assert!(c.xi1.is_zero() && c.xi2.is_zero());
    }
}
