//! Zero-dimensional polynomial systems over the Gaussian rationals.
//!
//! Lex Gröbner basis (Buchberger), then back-substitution from the last
//! variable. Only Gaussian-rational roots are supported; anything else is
//! reported rather than approximated.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::jet::{Field, JetExpr};
use crate::scalar::GaussianRational as Q;

type Exp = Vec<u32>;

/// Multivariate polynomial; exponent vectors compare lexicographically,
/// so the largest key is the leading term with `x₀ > x₁ > …`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exp, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    /// Reads a jet expression whose monomials consist of the constant
    /// fields in `vars` only.
    pub fn from_jet(e: &JetExpr, vars: &[Field]) -> Result<Self> {
        let mut p = Self::zero(vars.len());
        for (m, c) in e.terms() {
            let mut exp = vec![0; vars.len()];
            for (v, k) in m.factors() {
                let i = vars
                    .iter()
                    .position(|f| *f == v.field)
                    .ok_or_else(|| Error::Parse(format!("`{v}` is not an unknown")))?;
                exp[i] += k;
            }
            p.add_term(exp, c.clone());
        }
        Ok(p)
    }

    pub fn add_term(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&k| k == 0)
    }

    fn leading(&self) -> Option<(&Exp, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Q::from_int(-1)))
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * k);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                p.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        p
    }

    fn mul_term(&self, e: &Exp, c: &Q) -> Self {
        let mut p = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            p.add_term(a.iter().zip(e).map(|(x, y)| x + y).collect(), ca * c);
        }
        p
    }

    fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Variables that occur.
    fn support(&self) -> Vec<bool> {
        let mut s = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                s[i] |= k > 0;
            }
        }
        s
    }

    /// `x_i ↦ v`, dropping the variable when it is the last one.
    fn substitute_last(&self, v: &Q) -> Self {
        let n = self.nvars - 1;
        let mut p = Self::zero(n);
        for (e, c) in &self.terms {
            p.add_term(e[..n].to_vec(), c * &v.pow(e[n]));
        }
        p
    }

    /// Dense coefficients in the last variable (other variables absent).
    fn univariate_last(&self) -> Vec<Q> {
        let n = self.nvars - 1;
        let deg = self.terms.keys().map(|e| e[n]).max().unwrap_or(0) as usize;
        let mut out = vec![Q::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[n] as usize] += c;
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{k}")
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn divides(a: &Exp, b: &Exp) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of `p` modulo `basis`.
fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let mut rem = Poly::zero(p.nvars);
    let mut cur = p.clone();
    while let Some((e, c)) = cur.leading().map(|(e, c)| (e.clone(), c.clone())) {
        let hit = basis.iter().find(|g| divides(g.leading().unwrap().0, &e));
        match hit {
            Some(g) => {
                let (ge, gc) = g.leading().unwrap();
                let k = c.checked_div(gc).expect("nonzero lead");
                cur = cur.sub(&g.mul_term(&sub_exp(&e, ge), &k));
            }
            None => {
                cur.terms.remove(&e);
                rem.add_term(e, c);
            }
        }
    }
    rem
}

fn s_poly(a: &Poly, b: &Poly) -> Poly {
    let (ea, ca) = a.leading().unwrap();
    let (eb, cb) = b.leading().unwrap();
    let l = lcm(ea, eb);
    let ta = a.mul_term(&sub_exp(&l, ea), &ca.inv().unwrap());
    let tb = b.mul_term(&sub_exp(&l, eb), &cb.inv().unwrap());
    ta.sub(&tb)
}

/// Reduced lex Gröbner basis.
pub fn groebner(system: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = system
        .iter()
        .filter(|p| !p.is_zero())
        .map(Poly::monic)
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (ei, ej) = (basis[i].leading().unwrap().0, basis[j].leading().unwrap().0);
        // coprime leading monomials reduce to zero
        if ei.iter().zip(ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimize, then interreduce
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let eg = g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let eh = h.leading().unwrap().0;
            j != i && divides(eh, eg) && (eh != eg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (e, c) = minimal[i]
            .leading()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut tail = minimal[i].clone();
        tail.terms.remove(&e);
        let mut r = reduce(&tail, &others);
        r.add_term(e, c);
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    reduced
}

// ---------------------------------------------------------------------------
// Univariate roots.

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().is_some_and(Q::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Q::zero());
    }
    p
}

fn udeg(p: &[Q]) -> usize {
    p.len() - 1
}

fn uis_zero(p: &[Q]) -> bool {
    p.iter().all(Q::is_zero)
}

fn udivrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if udeg(&r) < udeg(&b) || uis_zero(&r) {
        return (vec![Q::zero()], r);
    }
    let mut q = vec![Q::zero(); udeg(&r) - udeg(&b) + 1];
    let lead = b.last().unwrap().inv().expect("nonzero divisor");
    while !uis_zero(&r) && udeg(&r) >= udeg(&b) {
        let shift = udeg(&r) - udeg(&b);
        let k = r.last().unwrap() * &lead;
        for (i, c) in b.iter().enumerate() {
            let t = &r[i + shift] - &(c * &k);
            r[i + shift] = t;
        }
        q[shift] = k;
        r = trim(r);
    }
    (trim(q), r)
}

fn ugcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !uis_zero(&b) {
        let (_, r) = udivrem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().unwrap().inv().unwrap_or_else(Q::one);
    a.iter().map(|c| c * &lead).collect()
}

fn uderiv(p: &[Q]) -> Vec<Q> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Q::from_int(i as i64))
            .collect(),
    )
}

fn ueval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| &(&acc * x) + c)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// Exact square root in `ℚ(i)`.
fn gaussian_sqrt(z: &Q) -> Option<Q> {
    let (a, b) = (z.re().clone(), z.im().clone());
    let modulus = rational_sqrt(&(&a * &a + &b * &b))?;
    let two = BigRational::from_integer(BigInt::from(2));
    let x = rational_sqrt(&((&modulus + &a) / &two))?;
    let mut y = rational_sqrt(&((&modulus - &a) / &two))?;
    if b.is_negative() {
        y = -y;
    }
    let w = Q::new(x, y);
    (&w * &w == *z).then_some(w)
}

const NORM_CAP: u64 = 1_000_000;

/// All Gaussian integers dividing `z` (every associate included).
fn gaussian_divisors(re: &BigInt, im: &BigInt) -> Option<Vec<(i64, i64)>> {
    let norm = (re * re + im * im).to_u64()?;
    if norm == 0 || norm > NORM_CAP {
        return None;
    }
    let mut out = Vec::new();
    for d in 1..=norm {
        if norm % d != 0 {
            continue;
        }
        let r = (d as f64).sqrt() as i64 + 1;
        for x in -r..=r {
            let y2 = d as i64 - x * x;
            if y2 < 0 {
                continue;
            }
            let y = (y2 as f64).sqrt().round() as i64;
            for y in if y == 0 { vec![0] } else { vec![y, -y] } {
                if x * x + y * y != d as i64 {
                    continue;
                }
                // (re + i im)(x − i y) must be divisible by d
                let pr = re * x + im * y;
                let pi = im * x - re * y;
                let dd = BigInt::from(d);
                if pr.is_multiple_of(&dd) && pi.is_multiple_of(&dd) {
                    out.push((x, y));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// Gaussian-rational roots of a univariate polynomial, without
/// multiplicity. Errors if some root lies outside `ℚ(i)`.
pub fn gaussian_roots(p: &[Q]) -> Result<Vec<Q>> {
    let p = trim(p.to_vec());
    if uis_zero(&p) {
        return Err(Error::NotUnique("identically zero polynomial".into()));
    }
    let g = ugcd(&p, &uderiv(&p));
    let (mut sq, _) = udivrem(&p, &g);
    let mut roots = Vec::new();
    loop {
        sq = trim(sq);
        match udeg(&sq) {
            0 => break,
            1 => {
                roots.push(-(&sq[0] * &sq[1].inv().unwrap()));
                break;
            }
            2 => {
                let (c, b, a) = (&sq[0], &sq[1], &sq[2]);
                let disc = &(b * b) - &(&(a * c) * &Q::from_int(4));
                let s = gaussian_sqrt(&disc)
                    .ok_or_else(|| Error::NonRationalRoots(format!("discriminant {disc}")))?;
                let two_a = a * &Q::from_int(2);
                roots.push((&-b + &s).checked_div(&two_a).unwrap());
                roots.push((&-b - &s).checked_div(&two_a).unwrap());
                break;
            }
            _ => {
                let r = find_candidate_root(&sq).ok_or_else(|| {
                    Error::NonRationalRoots(format!("degree {} factor", udeg(&sq)))
                })?;
                let (q, _) = udivrem(&sq, &[-r.clone(), Q::one()]);
                roots.push(r);
                sq = q;
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn find_candidate_root(p: &[Q]) -> Option<Q> {
    if p[0].is_zero() {
        return Some(Q::zero());
    }
    // clear denominators, then rational root theorem in ℤ[i]
    let l = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
    let lq = Q::from(BigRational::from_integer(l));
    let ints: Vec<Q> = p.iter().map(|c| c * &lq).collect();
    let int_parts = |c: &Q| (c.re().to_integer(), c.im().to_integer());
    let (a0r, a0i) = int_parts(&ints[0]);
    let (anr, ani) = int_parts(ints.last().unwrap());
    let num = gaussian_divisors(&a0r, &a0i)?;
    let den = gaussian_divisors(&anr, &ani)?;
    for (ur, ui) in &num {
        for (wr, wi) in &den {
            let u = Q::new(BigInt::from(*ur).into(), BigInt::from(*ui).into());
            let w = Q::new(BigInt::from(*wr).into(), BigInt::from(*wi).into());
            let cand = u.checked_div(&w)?;
            if ueval(p, &cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Systems.

fn solve_rec(system: &[Poly], names: &[String]) -> Result<Vec<Vec<Q>>> {
    let n = names.len();
    let gb = groebner(system);
    if gb.iter().any(Poly::is_nonzero_constant) {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let last_only: Vec<&Poly> = gb
        .iter()
        .filter(|p| p.support()[..n - 1].iter().all(|s| !s))
        .collect();
    if last_only.is_empty() {
        return Err(Error::NotUnique(names[n - 1].clone()));
    }
    let uni = last_only
        .iter()
        .fold(vec![Q::zero()], |acc, p| ugcd(&acc, &p.univariate_last()));
    let mut out = Vec::new();
    for r in gaussian_roots(&uni)? {
        let sub: Vec<Poly> = gb.iter().map(|p| p.substitute_last(&r)).collect();
        for mut s in solve_rec(&sub, &names[..n - 1])? {
            s.push(r.clone());
            out.push(s);
        }
    }
    Ok(out)
}

/// All solutions of `system = 0`, each as values for `names` in order.
/// Errors when there is no solution, a continuum of them, or a root
/// outside the Gaussian rationals.
pub fn solve_system(system: &[Poly], names: &[String]) -> Result<Vec<Vec<Q>>> {
    let mut sols = solve_rec(system, names)?;
    if sols.is_empty() {
        return Err(Error::NoSolution);
    }
    sols.sort();
    Ok(sols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn linear_system() {
        // x + y = 3, x − y = 1
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let s = [
            x.add(&y).sub(&Poly::constant(2, q(3))),
            x.sub(&y).sub(&Poly::constant(2, q(1))),
        ];
        assert_eq!(solve_system(&s, &names(2)).unwrap(), vec![vec![q(2), q(1)]]);
    }

    #[test]
    fn quadratic_with_imaginary_roots() {
        // x² + 4 = 0, x·y = 1
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let s = [
            x.mul(&x).add(&Poly::constant(2, q(4))),
            x.mul(&y).sub(&Poly::constant(2, q(1))),
        ];
        let sols = solve_system(&s, &names(2)).unwrap();
        assert_eq!(sols.len(), 2);
        for v in sols {
            assert_eq!(&v[0] * &v[0], q(-4));
            assert_eq!(&v[0] * &v[1], q(1));
        }
    }

    #[test]
    fn failure_modes() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let inconsistent = [x.clone(), x.sub(&Poly::constant(2, q(1)))];
        assert!(matches!(
            solve_system(&inconsistent, &names(2)),
            Err(Error::NoSolution)
        ));
        let free = [x.clone()];
        assert!(matches!(
            solve_system(&free, &names(2)),
            Err(Error::NotUnique(_))
        ));
        let irrational = [x.mul(&x).sub(&Poly::constant(2, q(2))), y];
        assert!(matches!(
            solve_system(&irrational, &names(2)),
            Err(Error::NonRationalRoots(_))
        ));
    }

    #[test]
    fn cubic_roots_in_gaussian_integers() {
        // (t − 1)(t − i)(t + 2i) expanded
        let r = [q(1), Q::i(), -(Q::i() * q(2))];
        let mut p = vec![q(1)];
        for root in &r {
            let mut next = vec![Q::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &(c * root);
            }
            p = next;
        }
        let mut want = r.to_vec();
        want.sort();
        assert_eq!(gaussian_roots(&p).unwrap(), want);
        assert_eq!(
            gaussian_sqrt(&Q::complex((3, 1), (4, 1))),
            Some(Q::complex((2, 1), (1, 1)))
        );
    }
}
