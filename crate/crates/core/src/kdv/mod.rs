//! Verification of the bilinear representations of the N=2 KdV equation.
//!
//! Every check returns a [`Report`] whose items carry exact residuals. A
//! passing item has a literally zero residual (or, for mutation controls,
//! a nonzero one).

use std::fmt;

use serde::Serialize;

use crate::expr::SuperExpr;
use crate::fraction::SuperFraction;
use crate::jet::{Field, JetExpr, JetMonomial};
use crate::scalar::GaussianRational;

mod am2;
mod link;
mod n1;
mod n2;

pub use am2::{
    check_am2_chain, fermionic_limit_residuals, miura_component_check, miura_map, q_flow_residual,
};
pub use link::{check_bell_link, link_indices};
pub use n1::{
    a4_system, check_a1, check_two_boson, n1_residuals, solve_a4_coefficients, A4Outcome,
    CoefficientSolution,
};
pub use n2::{check_burgers, check_n2, n2_component_relations, N2Relations};

/// Something with an exact zero test.
pub trait Residual {
    fn term_count(&self) -> usize;
    fn render(&self) -> String;

    fn vanishes(&self) -> bool {
        self.term_count() == 0
    }
}

impl Residual for JetExpr {
    fn term_count(&self) -> usize {
        self.len()
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residual for SuperExpr {
    fn term_count(&self) -> usize {
        self.len()
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Residual for SuperFraction {
    fn term_count(&self) -> usize {
        self.numerator().len()
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    Zero,
    Nonzero,
    /// Recorded for the reader, never counted as a failure.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub expect: Expect,
    pub passed: bool,
    pub residual_terms: usize,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub case: String,
    pub items: Vec<CheckItem>,
    pub notes: Vec<String>,
}

const DETAIL_LIMIT: usize = 240;

fn clip(s: String) -> String {
    if s.chars().count() <= DETAIL_LIMIT {
        return s;
    }
    let mut out: String = s.chars().take(DETAIL_LIMIT).collect();
    out.push_str(" ...");
    out
}

impl Report {
    pub fn new(case: &str) -> Self {
        Self {
            case: case.to_string(),
            items: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    fn push(&mut self, name: &str, expect: Expect, r: &dyn Residual) {
        let n = r.term_count();
        let passed = match expect {
            Expect::Zero => n == 0,
            Expect::Nonzero => n > 0,
            Expect::Info => true,
        };
        let detail = if n == 0 {
            String::new()
        } else {
            clip(r.render())
        };
        self.items.push(CheckItem {
            name: name.to_string(),
            expect,
            passed,
            residual_terms: n,
            detail,
        });
    }

    /// Expects an exactly vanishing residual.
    pub fn zero(&mut self, name: &str, r: &dyn Residual) {
        self.push(name, Expect::Zero, r);
    }

    /// Mutation control: the residual must not vanish.
    pub fn nonzero(&mut self, name: &str, r: &dyn Residual) {
        self.push(name, Expect::Nonzero, r);
    }

    pub fn info(&mut self, name: &str, r: &dyn Residual) {
        self.push(name, Expect::Info, r);
    }

    /// A yes/no check that is not a residual.
    pub fn flag(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.items.push(CheckItem {
            name: name.to_string(),
            expect: Expect::Zero,
            passed,
            residual_terms: usize::from(!passed),
            detail: clip(detail.into()),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn extend(&mut self, other: Report) {
        for mut it in other.items {
            it.name = format!("{}: {}", other.case, it.name);
            self.items.push(it);
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.case)?;
        for it in &self.items {
            let tag = match (it.expect, it.passed) {
                (Expect::Info, _) => "INFO",
                (_, true) => "PASS",
                (_, false) => "FAIL",
            };
            write!(
                f,
                "[{tag}] {} (residual terms: {})",
                it.name, it.residual_terms
            )?;
            if !it.detail.is_empty() && (it.expect == Expect::Info || !it.passed) {
                write!(f, "\n       {}", it.detail)?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Shorthand shared by the checks.

pub(crate) fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

pub(crate) fn r(n: i64, d: i64) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

pub(crate) fn i_times(k: i64, d: i64) -> GaussianRational {
    GaussianRational::complex((0, 1), (k, d))
}

pub(crate) fn j(f: &Field, idx: &str) -> JetExpr {
    JetExpr::jet(f, idx)
}

/// Product of jets in the order given.
pub(crate) fn prod(fs: &[&JetExpr]) -> JetExpr {
    fs.iter().fold(JetExpr::one(), |acc, e| &acc * *e)
}

/// `Σ kᵢ eᵢ`.
pub(crate) fn lin(ts: &[(GaussianRational, JetExpr)]) -> JetExpr {
    ts.iter()
        .fold(JetExpr::zero(), |acc, (k, e)| &acc + &e.scale(k))
}

/// The monomial of a single-term expression.
pub(crate) fn mono(e: &JetExpr) -> JetMonomial {
    e.terms().next().expect("nonzero").0.clone()
}

/// Every expression obtained by adding 1 to one coefficient of `e`.
pub fn coefficient_mutations(e: &JetExpr) -> Vec<JetExpr> {
    e.terms()
        .map(|(m, _)| e + &JetExpr::monomial(m.clone()))
        .collect()
}
