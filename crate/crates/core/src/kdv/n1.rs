//! The two N=1 equations and their Bell forms for a = 1 and a = 4, and the
//! Two-Boson system.

use serde::Serialize;

use super::{coefficient_mutations, i_times, j, lin, mono, prod, q, r, Report};
use crate::bell::{binary_bell, reduce_on_shell, FlowRule, Slot};
use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::hirota::HirotaCombo;
use crate::index::MultiIndex;
use crate::jet::{Field, JetExpr};
use crate::scalar::GaussianRational;
use crate::solve::{solve_system, Poly};

fn fields() -> (Field, Field) {
    (Field::even("B"), Field::even("p"))
}

fn idx(s: &str) -> MultiIndex {
    s.parse().expect("index")
}

/// `(R₁, R₂)`, both moved to the left-hand side.
pub fn n1_residuals(a: &GaussianRational) -> (JetExpr, JetExpr) {
    let (b, p) = fields();
    let one = q(1);
    let r1 = lin(&[
        (one.clone(), j(&b, "t")),
        (one.clone(), j(&b, "3x")),
        (-(a + &q(2)), prod(&[&j(&b, "x"), &j(&p, "2x")])),
        (-(a - &one), prod(&[&j(&b, "x,theta1"), &j(&p, "x,theta1")])),
        (-a.clone(), j(&b, "x").pow(3)),
    ]);
    let r2 = lin(&[
        (one.clone(), j(&p, "t,theta1")),
        (one.clone(), j(&p, "3x,theta1")),
        (q(-3), prod(&[&j(&p, "2x"), &j(&p, "x,theta1")])),
        (a + &q(2), prod(&[&j(&b, "x"), &j(&b, "2x,theta1")])),
        (-(&one - a), prod(&[&j(&b, "2x"), &j(&b, "x,theta1")])),
        (a * &q(-3), prod(&[&j(&b, "x").pow(2), &j(&p, "x,theta1")])),
    ]);
    (r1, r2)
}

/// `B_t → −(R₁ − B_t)`.
fn b_flow(a: &GaussianRational) -> FlowRule {
    let (b, _) = fields();
    let (r1, _) = n1_residuals(a);
    let bt = j(&b, "t");
    FlowRule::new(b.jet(0, 1, 0, 0), &bt - &r1).expect("spatial right side")
}

/// The Two-Boson flows `n_{t₂} = m_xx + n_x²`, `D₁m_{t₂} = D₁n_xx + 2n_x D₁m_x`.
fn two_boson_rules(n: &Field, m: &Field) -> Vec<FlowRule> {
    vec![
        FlowRule::new(n.jet(0, 0, 1, 0), &j(m, "2x") + &j(n, "x").pow(2)).expect("rule"),
        FlowRule::new(
            m.jet(0, 0, 1, 1),
            &j(n, "2x,theta1") + &prod(&[&j(n, "x"), &j(m, "x,theta1")]).scale(&q(2)),
        )
        .expect("rule"),
    ]
}

fn bell(s: &str, w1: &Slot, w2: &Slot) -> JetExpr {
    binary_bell(&idx(s), w1, w2)
}

/// Coefficient `c` with `e = c·target`, read off from `mark`, plus the
/// residual `e − c·target`.
fn multiple_of(e: &JetExpr, target: &JetExpr, mark: &JetExpr) -> (GaussianRational, JetExpr) {
    let m = mono(mark);
    let c = e
        .coefficient(&m)
        .checked_div(&target.coefficient(&m))
        .unwrap_or_else(GaussianRational::zero);
    (c.clone(), e - &target.scale(&c))
}

pub fn check_a1() -> Result<Report> {
    let mut rep = Report::new("a1");
    let (b, p) = fields();
    let i = GaussianRational::i();
    let (r1, r2) = n1_residuals(&q(1));
    let w1 = Slot::new(i.clone(), b.clone());
    let w2 = Slot::new(q(-1), p.clone());

    let (cf, df) = (Field::constant("c"), Field::constant("d"));
    let (c, d) = (JetExpr::field(&cf), JetExpr::field(&df));
    let (wc, wd) = (
        Slot::formal(c.clone(), b.clone()),
        Slot::formal(d.clone(), p.clone()),
    );
    rep.zero(
        "Y_t(cB,dp) = c B_t",
        &(&bell("t", &wc, &wd) - &prod(&[&c, &j(&b, "t")])),
    );
    let printed = lin(&[
        (q(1), prod(&[&c, &j(&b, "3x")])),
        (q(3), prod(&[&c, &d, &j(&b, "x"), &j(&p, "2x")])),
        (q(1), prod(&[&c.pow(3), &j(&b, "x").pow(3)])),
    ]);
    rep.zero("Y_3x(cB,dp) expansion", &(&bell("3x", &wc, &wd) - &printed));

    let y = &bell("t", &w1, &w2) + &bell("3x", &w1, &w2);
    rep.zero("Y_t(iB,-p) + Y_3x(iB,-p) = i R1", &(&y - &r1.scale(&i)));

    let rules = [b_flow(&q(1))];
    let yt1 = reduce_on_shell(&bell("t,theta1", &w1, &w2), &rules)?;
    let y3t1 = reduce_on_shell(&bell("3x,theta1", &w1, &w2), &rules)?;
    let d1b = j(&b, "theta1");
    let bx = j(&b, "x");
    let pxx = j(&p, "2x");
    let printed_t = lin(&[
        (q(-1), j(&p, "t,theta1")),
        (q(1), prod(&[&j(&b, "3x"), &d1b])),
        (q(-3), prod(&[&bx, &pxx, &d1b])),
        (q(-1), prod(&[&bx.pow(3), &d1b])),
    ]);
    rep.zero("on-shell Y_t,theta1(iB,-p) expansion", &(&yt1 - &printed_t));
    let printed_3 = lin(&[
        (q(-1), j(&p, "3x,theta1")),
        (q(1), prod(&[&bx.pow(3), &d1b])),
        (q(3), prod(&[&bx, &pxx, &d1b])),
        (q(-1), prod(&[&j(&b, "3x"), &d1b])),
        (q(3), prod(&[&bx.pow(2), &j(&p, "x,theta1")])),
        (q(3), prod(&[&pxx, &j(&p, "x,theta1")])),
        (q(-3), prod(&[&bx, &j(&b, "2x,theta1")])),
    ]);
    rep.zero("Y_3x,theta1(iB,-p) expansion", &(&y3t1 - &printed_3));

    let (k, res) = multiple_of(&(&yt1 + &y3t1), &r2, &j(&p, "t,theta1"));
    rep.zero("Y_t,theta1 + Y_3x,theta1 = c R2 on shell", &res);
    let unit = (&k * &k.conj()).is_one();
    rep.flag("multiplier c is a unit", unit, format!("c = {k}"));
    rep.note(format!("theta1 sector multiplier c = {k}"));

    // mutation: 3 -> 2 in front of B_x p_xx inside Y_3x
    let y3 = bell("3x", &w1, &w2);
    let m = mono(&prod(&[&bx, &pxx]));
    let k3 = y3.coefficient(&m);
    let mutated = &y3 - &JetExpr::monomial(m.clone()).scale(&(&k3 * &r(1, 3)));
    let res = &(&bell("t", &w1, &w2) + &mutated) - &r1.scale(&i);
    rep.nonzero("mutation 3->2 in Y_3x is detected", &res);
    rep.flag(
        "mutation residual contains B_x p_xx",
        !res.coefficient(&m).is_zero(),
        res.to_string(),
    );
    for (n, mutated) in coefficient_mutations(&r1).iter().enumerate() {
        rep.nonzero(
            &format!("mutation {n} of R1 is detected"),
            &(&y - &mutated.scale(&i)),
        );
    }
    Ok(rep)
}

pub fn check_two_boson() -> Result<Report> {
    let mut rep = Report::new("two-boson");
    let (n, m) = (Field::even("n"), Field::even("m"));
    let (w1, w2) = (Slot::unit(n.clone()), Slot::unit(m.clone()));
    let rules = two_boson_rules(&n, &m);
    let d1n = j(&n, "theta1");
    let nx = j(&n, "x");

    let e31 = lin(&[
        (q(1), j(&n, "t2")),
        (q(-1), j(&m, "2x")),
        (q(-1), nx.pow(2)),
    ]);
    let e32 = lin(&[
        (q(1), j(&m, "t2,theta1")),
        (q(-1), j(&n, "2x,theta1")),
        (q(-2), prod(&[&nx, &j(&m, "x,theta1")])),
    ]);

    let yt2 = bell("t2", &w1, &w2);
    let yxx = bell("2x", &w1, &w2);
    rep.zero("Y_t2(n,m) = n_t2", &(&yt2 - &j(&n, "t2")));
    rep.zero(
        "Y_xx(n,m) = m_xx + n_x^2",
        &(&yxx - &(&j(&m, "2x") + &nx.pow(2))),
    );
    rep.zero(
        "Y_t2 - Y_xx = first Two-Boson equation",
        &(&(&yt2 - &yxx) - &e31),
    );

    let yt2t1 = reduce_on_shell(&bell("t2,theta1", &w1, &w2), &rules[..1])?;
    let yxxt1 = bell("2x,theta1", &w1, &w2);
    let printed_t2 = lin(&[
        (q(1), j(&m, "t2,theta1")),
        (q(1), prod(&[&j(&m, "2x"), &d1n])),
        (q(1), prod(&[&nx.pow(2), &d1n])),
    ]);
    rep.zero(
        "on-shell Y_t2,theta1(n,m) expansion",
        &(&yt2t1 - &printed_t2),
    );
    let printed_xx = lin(&[
        (q(1), prod(&[&j(&m, "2x"), &d1n])),
        (q(1), prod(&[&nx.pow(2), &d1n])),
        (q(1), j(&n, "2x,theta1")),
        (q(2), prod(&[&nx, &j(&m, "x,theta1")])),
    ]);
    rep.zero("Y_xx,theta1(n,m) expansion", &(&yxxt1 - &printed_xx));
    rep.zero(
        "Y_t2,theta1 - Y_xx,theta1 = second Two-Boson equation on shell",
        &(&(&yt2t1 - &yxxt1) - &e32),
    );

    // w = C_x, rho = D1 q_x, then m = 2q - C, n = C
    let (w, rho) = (Field::even("w"), Field::odd("rho"));
    let (cf, qf) = (Field::even("C"), Field::even("q"));
    let e27 = &j(&w, "t2")
        - &lin(&[
            (q(-1), j(&w, "x")),
            (q(1), JetExpr::field(&w).pow(2)),
            (q(2), j(&rho, "theta1")),
        ])
        .derive(Derivation::Dx);
    let e28 = &j(&rho, "t2")
        - &(&j(&rho, "x") + &prod(&[&JetExpr::field(&w), &JetExpr::field(&rho)]).scale(&q(2)))
            .derive(Derivation::Dx);
    let cx = j(&cf, "x");
    let e29 = lin(&[
        (q(1), j(&cf, "t2")),
        (q(1), j(&cf, "2x")),
        (q(-1), cx.pow(2)),
        (q(-2), j(&qf, "2x")),
    ]);
    let e30 = lin(&[
        (q(1), j(&qf, "t2,theta1")),
        (q(-1), j(&qf, "2x,theta1")),
        (q(-2), prod(&[&cx, &j(&qf, "x,theta1")])),
    ]);
    let sub_wr = |e: &JetExpr| {
        e.substitute_field(&w, &cx)
            .substitute_field(&rho, &j(&qf, "x,theta1"))
    };
    rep.zero(
        "w = C_x, rho = D1 q_x maps the w flow to d/dx of the C flow",
        &(&sub_wr(&e27) - &e29.derive(Derivation::Dx)),
    );
    rep.zero(
        "w = C_x, rho = D1 q_x maps the rho flow to d/dx of the q flow",
        &(&sub_wr(&e28) - &e30.derive(Derivation::Dx)),
    );
    let half = r(1, 2);
    let sub_nm = |e: &JetExpr| {
        e.substitute_field(
            &qf,
            &(&JetExpr::field(&m) + &JetExpr::field(&n)).scale(&half),
        )
        .substitute_field(&cf, &JetExpr::field(&n))
    };
    rep.zero(
        "C = n, q = (m+n)/2 maps the C flow to the n flow",
        &(&sub_nm(&e29) - &e31),
    );
    let combo = &(&sub_nm(&e30).scale(&q(2)) - &e31.derive(Derivation::D1)) - &e32;
    rep.zero("2 (q flow) - D1 (n flow) = m flow", &combo);

    for (k, mutated) in coefficient_mutations(&e31).iter().enumerate() {
        rep.nonzero(
            &format!("mutation {k} of the n flow is detected"),
            &(&(&yt2 - &yxx) - mutated),
        );
    }
    let companion: HirotaCombo = "S1(Dt2-Dx^2)".parse()?;
    rep.note(format!("bilinear pair: Dt2-Dx^2 and {companion}"));
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientSolution {
    pub alpha: GaussianRational,
    pub beta: GaussianRational,
    pub gamma: GaussianRational,
    pub delta: GaussianRational,
}

impl CoefficientSolution {
    /// `Dt − αγ Dx³ − αδ Dx Dt2`, the operator obtained after multiplying
    /// the Bell form by α.
    pub fn bilinear_combo(&self) -> HirotaCombo {
        HirotaCombo::new([
            (q(1), idx("t")),
            (-(&self.alpha * &self.gamma), idx("3x")),
            (-(&self.alpha * &self.delta), idx("x,t2")),
        ])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct A4Outcome {
    /// The representative with `Im α > 0`; the other one swaps `f ↔ g`.
    pub solution: CoefficientSolution,
    pub alternatives: Vec<CoefficientSolution>,
    pub report: Report,
}

fn unknowns() -> [Field; 5] {
    ["z", "α", "β", "γ", "δ"].map(Field::constant)
}

/// `(n, m) ↦ (n_B·B, m_p·p)` after reducing the `t₂` jets.
fn through_two_boson(e: &JetExpr, n_to: &JetExpr, m_to: &JetExpr) -> Result<JetExpr> {
    let (n, m) = (Field::even("n"), Field::even("m"));
    let (b, p) = fields();
    let reduced = reduce_on_shell(e, &two_boson_rules(&n, &m))?;
    Ok(reduced
        .substitute_field(&n, &(n_to * &JetExpr::field(&b)))
        .substitute_field(&m, &(m_to * &JetExpr::field(&p))))
}

fn nm_slots() -> (Slot, Slot) {
    (Slot::unit(Field::even("n")), Slot::unit(Field::even("m")))
}

/// Polynomial system for `(1/α)Y_t − γY_xxx − δY_{t₂x} = R₁(a=4)` in the
/// unknowns `(z, α, β, γ, δ)`, multiplied through by α, with `zα = 1`
/// excluding α = 0.
pub fn a4_system(with_delta: bool) -> Result<Vec<Poly>> {
    let [z, al, be, ga, de] = unknowns();
    let (alpha, beta) = (JetExpr::field(&al), JetExpr::field(&be));
    let (w1, w2) = nm_slots();
    let lift = |s: &str| through_two_boson(&bell(s, &w1, &w2), &alpha, &beta);
    let (r1, _) = n1_residuals(&q(4));
    let mut e = &lift("t")? - &prod(&[&alpha, &JetExpr::field(&ga), &lift("3x")?]);
    if with_delta {
        e = &e - &prod(&[&alpha, &JetExpr::field(&de), &lift("x,t2")?]);
    }
    e = &e - &(&alpha * &r1);
    let vars = unknowns();
    let mut sys: Vec<Poly> = e
        .collect_constants()
        .values()
        .map(|c| Poly::from_jet(c, &vars))
        .collect::<Result<_>>()?;
    let sat = &prod(&[&JetExpr::field(&z), &alpha]) - &JetExpr::one();
    sys.push(Poly::from_jet(&sat, &vars)?);
    Ok(sys)
}

/// θ₁-sector combination `Y_{tθ₁} + k₃Y_{xxxθ₁} + k Y_{xt₂θ₁}` with the
/// given slots, reduced on shell.
fn theta_sector(
    k3: &GaussianRational,
    kt2x: &GaussianRational,
    alpha: &GaussianRational,
    beta: &GaussianRational,
    beta_t2x: &GaussianRational,
) -> Result<JetExpr> {
    let (w1, w2) = nm_slots();
    let a = JetExpr::constant(alpha.clone());
    let lift = |s: &str, bt: &GaussianRational| {
        through_two_boson(&bell(s, &w1, &w2), &a, &JetExpr::constant(bt.clone()))
    };
    let e = lin(&[
        (q(1), lift("t,theta1", beta)?),
        (k3.clone(), lift("3x,theta1", beta)?),
        (kt2x.clone(), lift("x,t2,theta1", beta_t2x)?),
    ]);
    reduce_on_shell(&e, &[b_flow(&q(4))])
}

pub fn solve_a4_coefficients() -> Result<A4Outcome> {
    let mut rep = Report::new("a4");
    let names: Vec<String> = unknowns().iter().map(|f| f.name().to_string()).collect();
    let sols = solve_system(&a4_system(true)?, &names)?;
    let mut all: Vec<CoefficientSolution> = sols
        .iter()
        .map(|s| CoefficientSolution {
            alpha: s[1].clone(),
            beta: s[2].clone(),
            gamma: s[3].clone(),
            delta: s[4].clone(),
        })
        .collect();
    all.sort_by_key(|s| std::cmp::Reverse(s.alpha.im()));
    let solution = all[0].clone();
    let alternatives = all[1..].to_vec();
    rep.note(format!(
        "alpha = {}, beta = {}, gamma = {}, delta = {}",
        solution.alpha, solution.beta, solution.gamma, solution.delta
    ));
    for alt in &alternatives {
        rep.note(format!(
            "alternative: alpha = {}, beta = {}, gamma = {}, delta = {}",
            alt.alpha, alt.beta, alt.gamma, alt.delta
        ));
    }

    let (b, p) = fields();
    let (al, be) = (Field::constant("α"), Field::constant("β"));
    let (alpha, beta) = (JetExpr::field(&al), JetExpr::field(&be));
    let (w1, w2) = nm_slots();
    let yt2x = through_two_boson(&bell("x,t2", &w1, &w2), &alpha, &beta)?;
    let bx = j(&b, "x");
    let printed = lin(&[
        (q(1), prod(&[&alpha, &j(&b, "3x")])),
        (q(3), prod(&[&alpha, &beta, &bx, &j(&p, "2x")])),
        (q(1), prod(&[&alpha.pow(3), &bx.pow(3)])),
        (
            q(2),
            prod(&[&alpha, &beta, &j(&b, "x,theta1"), &j(&p, "x,theta1")]),
        ),
    ]);
    rep.zero("on-shell Y_t2x(aB,bp) expansion", &(&yt2x - &printed));

    let (r1, r2) = n1_residuals(&q(4));
    for (n, s) in all.iter().enumerate() {
        let (a, bt) = (
            JetExpr::constant(s.alpha.clone()),
            JetExpr::constant(s.beta.clone()),
        );
        let lift = |x: &str| through_two_boson(&bell(x, &w1, &w2), &a, &bt);
        let inv_a = s.alpha.inv().ok_or(Error::NoSolution)?;
        let e = lin(&[
            (inv_a, lift("t")?),
            (-s.gamma.clone(), lift("3x")?),
            (-s.delta.clone(), lift("x,t2")?),
        ]);
        let tag = if n == 0 {
            String::new()
        } else {
            format!(" (alternative {n})")
        };
        rep.zero(&format!("D sector identity = R1{tag}"), &(&e - &r1));

        let combo = s.bilinear_combo();
        let k3 = combo.terms()[1].0.clone();
        let kt2x = combo.terms()[2].0.clone();
        let th = theta_sector(&k3, &kt2x, &s.alpha, &s.beta, &s.beta)?;
        let (c, res) = multiple_of(&th, &r2, &j(&p, "t,theta1"));
        rep.zero(&format!("theta1 sector identity = c R2{tag}"), &res);
        rep.flag(
            &format!("theta1 multiplier is nonzero{tag}"),
            !c.is_zero(),
            format!("c = {c}"),
        );
    }

    let expected: HirotaCombo = "Dt+1/4Dx^3+3/4DxDt2".parse()?;
    let got = solution.bilinear_combo();
    rep.flag("bilinear operator", got == expected, format!("{got}"));
    let s1 = HirotaCombo::single(idx("theta1")).compose(&got);
    let expected_s1: HirotaCombo = "S1(Dt+1/4Dx^3+3/4DxDt2)".parse()?;
    rep.flag("S1 companion operator", s1 == expected_s1, format!("{s1}"));

    // printed theta1 expansions with alpha = 2i, beta = -2
    let (a2, b2) = (JetExpr::constant(i_times(2, 1)), JetExpr::constant(q(-2)));
    let lift = |x: &str| through_two_boson(&bell(x, &w1, &w2), &a2, &b2);
    let inv_b = r(-1, 2);
    let rule = [b_flow(&q(4))];
    let d1b = j(&b, "theta1");
    let d1bx = j(&b, "x,theta1");
    let d1px = j(&p, "x,theta1");
    let pxx = j(&p, "2x");
    let bxxx = j(&b, "3x");
    let t_printed = lin(&[
        (q(1), j(&p, "t,theta1")),
        (q(-2), prod(&[&bxxx, &d1b])),
        (q(12), prod(&[&bx, &pxx, &d1b])),
        (q(6), prod(&[&d1bx, &d1px, &d1b])),
        (q(8), prod(&[&bx.pow(3), &d1b])),
    ]);
    let t_got = reduce_on_shell(&lift("t,theta1")?.scale(&inv_b), &rule)?;
    rep.zero(
        "on-shell (1/b) Y_t,theta1(2iB,-2p) expansion",
        &(&t_got - &t_printed),
    );
    let xt2_printed = lin(&[
        (q(2), prod(&[&bxxx, &d1b])),
        (q(-8), prod(&[&d1bx, &d1px, &d1b])),
        (q(-12), prod(&[&bx, &pxx, &d1b])),
        (q(-8), prod(&[&bx.pow(3), &d1b])),
        (q(1), j(&p, "3x,theta1")),
        (q(4), prod(&[&j(&b, "2x"), &d1bx])),
        (q(6), prod(&[&bx, &j(&b, "2x,theta1")])),
        (q(-12), prod(&[&bx.pow(2), &d1px])),
        (q(-2), prod(&[&pxx, &d1px])),
    ]);
    let xt2_got = lift("x,t2,theta1")?.scale(&inv_b);
    rep.zero(
        "on-shell (1/b) Y_xt2,theta1(2iB,-2p) expansion",
        &(&xt2_got - &xt2_printed),
    );
    let x3_printed = lin(&[
        (q(2), prod(&[&bxxx, &d1b])),
        (q(-12), prod(&[&bx, &pxx, &d1b])),
        (q(-8), prod(&[&bx.pow(3), &d1b])),
        (q(1), j(&p, "3x,theta1")),
        (q(-6), prod(&[&pxx, &d1px])),
        (q(6), prod(&[&bx, &j(&b, "2x,theta1")])),
        (q(-12), prod(&[&bx.pow(2), &d1px])),
    ]);
    let x3_got = lift("3x,theta1")?.scale(&inv_b);
    rep.zero(
        "(1/b) Y_3x,theta1(2iB,-2p) expansion",
        &(&x3_got - &x3_printed),
    );

    // the variant with -p in the last slot
    let k3 = r(1, 4);
    let kt2x = r(3, 4);
    let variant = theta_sector(&k3, &kt2x, &solution.alpha, &solution.beta, &q(-1))?;
    let (_, res) = multiple_of(&variant, &r2, &j(&p, "t,theta1"));
    rep.info(
        "theta1 sector with -p in the Y_xt2,theta1 slot (printed variant)",
        &res,
    );
    rep.note(if res.is_zero() {
        "the -p variant also closes".to_string()
    } else {
        "the -p variant leaves a residual; -2p is the consistent slot".to_string()
    });

    match solve_system(&a4_system(false)?, &names) {
        Err(Error::NoSolution) => rep.flag("ansatz without the t2 term has no solution", true, ""),
        other => rep.flag(
            "ansatz without the t2 term has no solution",
            false,
            format!("{other:?}"),
        ),
    }
    for (n, mutated) in coefficient_mutations(&r1).iter().enumerate() {
        let (a, bt) = (
            JetExpr::constant(solution.alpha.clone()),
            JetExpr::constant(solution.beta.clone()),
        );
        let lift = |x: &str| through_two_boson(&bell(x, &w1, &w2), &a, &bt);
        let e = lin(&[
            (solution.alpha.inv().ok_or(Error::NoSolution)?, lift("t")?),
            (-solution.gamma.clone(), lift("3x")?),
            (-solution.delta.clone(), lift("x,t2")?),
        ]);
        rep.nonzero(&format!("mutation {n} of R1 is detected"), &(&e - mutated));
    }
    Ok(A4Outcome {
        solution,
        alternatives,
        report: rep,
    })
}
