//! One-variable and binary Bell polynomials, on-shell reduction and the
//! Bell/Hirota link.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::expr::SuperExpr;
use crate::fraction::{log_derivative, SuperFraction};
use crate::hirota::hirota;
use crate::index::MultiIndex;
use crate::jet::{Field, JetExpr, JetVariable};
use crate::scalar::GaussianRational;

const PLACEHOLDER: &str = "·f";
const REDUCTION_LIMIT: usize = 64;

/// `Y_idx(f) = e^{−f} ∂ₓ^{kx}∂ₜ^{kt}∂_{t₂}^{kt₂}D₁^{k₁} e^{f}`.
pub fn bell_y(f: &Field, idx: &MultiIndex) -> JetExpr {
    assert!(idx.k2 == 0, "Bell polynomials carry no θ₂ direction");
    assert!(!f.is_odd(), "Bell polynomials need an even field");
    let base = JetExpr::field(f);
    let mut p = JetExpr::one();
    let mut odd = false;
    for d in idx.derivations() {
        let fd = base.derive(d);
        let carried = &p * &fd;
        p = if d.is_odd() && odd {
            &p.derive(d) - &carried
        } else {
            &p.derive(d) + &carried
        };
        if d.is_odd() {
            odd = !odd;
        }
    }
    p
}

/// One argument `c·w` of a binary Bell polynomial. The multiplier is a
/// jet expression so that formal constants such as λ can ride along.
#[derive(Clone, Debug)]
pub struct Slot {
    pub scale: JetExpr,
    pub field: Field,
}

impl Slot {
    pub fn new(scale: GaussianRational, field: Field) -> Self {
        Self {
            scale: JetExpr::constant(scale),
            field,
        }
    }

    pub fn unit(field: Field) -> Self {
        Self::new(GaussianRational::one(), field)
    }

    pub fn formal(scale: JetExpr, field: Field) -> Self {
        Self { scale, field }
    }
}

/// Parity of the index sum `k̃ₓ + k̃ₜ + k̃_{t₂} + k̃₁` of a normalized jet.
pub fn index_sum_is_odd(v: &JetVariable) -> bool {
    (v.kx + v.kt + v.kt2 + v.k1) % 2 == 1
}

/// `𝒴_idx(w₁, w₂)`: jets of odd index sum go to `w₁`, even ones to `w₂`.
pub fn binary_bell(idx: &MultiIndex, w1: &Slot, w2: &Slot) -> JetExpr {
    let ph = Field::even(PLACEHOLDER);
    bell_y(&ph, idx).substitute(&mut |v| {
        if v.field != ph {
            return None;
        }
        let slot = if index_sum_is_odd(v) { w1 } else { w2 };
        Some(&slot.scale * &JetExpr::var(slot.field.jet(v.kx, v.kt, v.kt2, v.k1)))
    })
}

/// On-shell substitution `lhs → rhs` for a pure time-derivative jet.
#[derive(Clone, Debug)]
pub struct FlowRule {
    lhs: JetVariable,
    rhs: JetExpr,
}

impl FlowRule {
    pub fn new(lhs: JetVariable, rhs: JetExpr) -> Result<Self> {
        if lhs.kx != 0 || !lhs.has_time() {
            return Err(Error::InvalidRule(format!(
                "`{lhs}` is not a pure time jet"
            )));
        }
        if let Some(v) = rhs.variables().into_iter().find(|v| v.has_time()) {
            return Err(Error::InvalidRule(format!(
                "right side of `{lhs}` contains `{v}`"
            )));
        }
        Ok(Self { lhs, rhs })
    }

    pub fn lhs(&self) -> &JetVariable {
        &self.lhs
    }

    pub fn rhs(&self) -> &JetExpr {
        &self.rhs
    }

    fn governs(&self, v: &JetVariable) -> bool {
        v.field == self.lhs.field && v.kt >= self.lhs.kt && v.kt2 >= self.lhs.kt2
    }

    /// Derivations taking `lhs` to `v`, if `v` is a derivative of it.
    fn path_to(&self, v: &JetVariable) -> Option<MultiIndex> {
        if !self.governs(v) {
            return None;
        }
        let (dt, dt2) = (v.kt - self.lhs.kt, v.kt2 - self.lhs.kt2);
        match (self.lhs.k1, v.k1) {
            (0, 0) | (1, 1) => Some(MultiIndex::new(v.kx, dt, dt2, 0, 0)),
            (0, 1) => Some(MultiIndex::new(v.kx, dt, dt2, 1, 0)),
            // ∂ₓ = D₁D₁, one D₁ already spent by the rule
            (1, 0) if v.kx >= 1 => Some(MultiIndex::new(v.kx - 1, dt, dt2, 1, 0)),
            _ => None,
        }
    }
}

impl fmt::Display for FlowRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// Rewrites every time jet governed by `rules` into spatial jets, using
/// spatial, temporal and `D₁` derivatives of the rules as needed.
pub fn reduce_on_shell(e: &JetExpr, rules: &[FlowRule]) -> Result<JetExpr> {
    let mut cur = e.clone();
    for _ in 0..REDUCTION_LIMIT {
        let mut hits: Vec<(JetVariable, JetExpr)> = Vec::new();
        for v in cur.variables().into_iter().filter(|v| v.has_time()) {
            let governing: Vec<&FlowRule> = rules.iter().filter(|r| r.governs(&v)).collect();
            if governing.is_empty() {
                continue;
            }
            let rep = governing
                .iter()
                .find_map(|r| r.path_to(&v).map(|p| r.rhs.derive_index(&p)))
                .ok_or_else(|| Error::IrreducibleTimeJets(v.to_string()))?;
            hits.push((v, rep));
        }
        if hits.is_empty() {
            return Ok(cur);
        }
        cur = cur.substitute(&mut |v| hits.iter().find(|(w, _)| w == v).map(|(_, r)| r.clone()));
    }
    Err(Error::ReductionLimit(REDUCTION_LIMIT))
}

/// Outcome of a Bell/Hirota link comparison.
#[derive(Clone, Debug)]
pub struct LinkResult {
    pub equal: bool,
    pub bell_side: SuperFraction,
    pub hirota_side: SuperFraction,
    pub residual: SuperFraction,
}

/// Compares `𝒴_idx(ln(f/g), ln(fg))` with `(fg)⁻¹ 𝒮/𝒟(f·g)`.
pub fn link_check(f: &SuperExpr, g: &SuperExpr, idx: &MultiIndex) -> Result<LinkResult> {
    let w1 = Field::even("w1");
    let w2 = Field::even("w2");
    let y = binary_bell(idx, &Slot::unit(w1.clone()), &Slot::unit(w2.clone()));
    let mut logs: BTreeMap<MultiIndex, (SuperFraction, SuperFraction)> = BTreeMap::new();
    let bell_side = y.evaluate(&mut |v| {
        let idx = v.index();
        if let std::collections::btree_map::Entry::Vacant(e) = logs.entry(idx) {
            e.insert((log_derivative(f, &idx)?, log_derivative(g, &idx)?));
        }
        let (lf, lg) = &logs[&idx];
        if v.field == w1 {
            Ok(lf.sub(lg))
        } else if v.field == w2 {
            Ok(lf.add(lg))
        } else {
            Err(Error::MissingValue(v.to_string()))
        }
    })?;
    let hirota_side =
        SuperFraction::with_factors(hirota(f, g, idx), vec![(f.clone(), 1), (g.clone(), 1)])?;
    let residual = bell_side.sub(&hirota_side);
    Ok(LinkResult {
        equal: residual.is_zero(),
        bell_side,
        hirota_side,
        residual,
    })
}

/// Convenience used by reports: `Σ cᵢ 𝒴_{idxᵢ}` with shared slots.
pub fn binary_bell_combo(
    terms: &[(GaussianRational, MultiIndex)],
    w1: &Slot,
    w2: &Slot,
) -> JetExpr {
    terms.iter().fold(JetExpr::zero(), |acc, (c, idx)| {
        &acc + &binary_bell(idx, w1, w2).scale(c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{BaseVar, Phase};

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn jet(f: &Field, s: &str) -> JetExpr {
        JetExpr::jet(f, s)
    }

    fn idx(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    #[test]
    fn one_variable_bell() {
        let f = Field::even("f");
        let fx = jet(&f, "x");
        assert_eq!(bell_y(&f, &idx("x")), fx);
        assert_eq!(bell_y(&f, &idx("2x")), &jet(&f, "2x") + &fx.pow(2));
        let y3 = &(&jet(&f, "3x") + &(&fx * &jet(&f, "2x")).scale(&q(3))) + &fx.pow(3);
        assert_eq!(bell_y(&f, &idx("3x")), y3);
        let yxt1 = &jet(&f, "x,theta1") + &(&fx * &jet(&f, "theta1"));
        assert_eq!(bell_y(&f, &idx("x,theta1")), yxt1);
    }

    #[test]
    fn binary_bell_slots() {
        let (b, p) = (Field::even("B"), Field::even("p"));
        let (c, d) = (
            GaussianRational::ratio(2, 3),
            GaussianRational::from_int(-5),
        );
        let (s1, s2) = (
            Slot::new(c.clone(), b.clone()),
            Slot::new(d.clone(), p.clone()),
        );
        assert_eq!(binary_bell(&idx("t"), &s1, &s2), jet(&b, "t").scale(&c));
        let want = &(&jet(&b, "3x").scale(&c)
            + &(&jet(&b, "x") * &jet(&p, "xx")).scale(&(&q(3) * &(&c * &d))))
            + &jet(&b, "x").pow(3).scale(&c.pow(3));
        assert_eq!(binary_bell(&idx("3x"), &s1, &s2), want);
        let (n, m) = (Field::even("n"), Field::even("m"));
        let got = binary_bell(&idx("xx"), &Slot::unit(n.clone()), &Slot::unit(m.clone()));
        assert_eq!(got, &jet(&m, "xx") + &jet(&n, "x").pow(2));
    }

    #[test]
    fn t2_counts_toward_parity() {
        let (n, m) = (Field::even("n"), Field::even("m"));
        let got = binary_bell(&idx("t2"), &Slot::unit(n.clone()), &Slot::unit(m.clone()));
        assert_eq!(got, jet(&n, "t2"));
    }

    #[test]
    fn normalization_keeps_index_parity_for_bell_jets() {
        let f = Field::even("f");
        for s in ["3x,theta1", "x,t,theta1", "t2,x,theta1", "2x,t"] {
            for v in bell_y(&f, &idx(s)).variables() {
                assert!(v.k1 <= 1);
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let (n, m) = (Field::even("n"), Field::even("m"));
        let r1 = FlowRule::new(n.jet(0, 0, 1, 0), &jet(&m, "xx") + &jet(&n, "x").pow(2)).unwrap();
        let got = reduce_on_shell(&jet(&n, "t2x"), std::slice::from_ref(&r1)).unwrap();
        let want = &jet(&m, "3x") + &(&jet(&n, "x") * &jet(&n, "xx")).scale(&q(2));
        assert_eq!(got, want);

        let plain = &jet(&m, "xx") * &jet(&n, "x");
        assert_eq!(
            reduce_on_shell(&plain, std::slice::from_ref(&r1)).unwrap(),
            plain
        );

        let rhs = &jet(&n, "xx,theta1") + &(&jet(&n, "x") * &jet(&m, "x,theta1")).scale(&q(2));
        let r2 = FlowRule::new(m.jet(0, 0, 1, 1), rhs).unwrap();
        let got = reduce_on_shell(&jet(&m, "t2x,theta1"), &[r1.clone(), r2.clone()]).unwrap();
        let want = &(&jet(&n, "3x,theta1") + &(&jet(&n, "xx") * &jet(&m, "x,theta1")).scale(&q(2)))
            + &(&jet(&n, "x") * &jet(&m, "xx,theta1")).scale(&q(2));
        assert_eq!(got, want);

        // m_t2 itself is not a derivative of D1m_t2
        assert!(matches!(
            reduce_on_shell(&jet(&m, "t2"), &[r1, r2]),
            Err(Error::IrreducibleTimeJets(_))
        ));
        assert!(FlowRule::new(n.jet(1, 1, 0, 0), JetExpr::zero()).is_err());
    }

    #[test]
    fn link_examples() {
        let e = SuperExpr::exp(Phase::new([(BaseVar::X, q(1))]));
        let f = &SuperExpr::one() + &e;
        let g = &SuperExpr::one() - &e.scale(&q(3));
        for s in ["x", "2x", "theta1", "x,theta1", "t,theta1"] {
            assert!(link_check(&f, &g, &idx(s)).unwrap().equal, "{s}");
        }
        let r = link_check(&f, &SuperExpr::one(), &idx("2x")).unwrap();
        assert!(r.equal);
    }
}
