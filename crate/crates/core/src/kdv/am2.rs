//! The a = −2 case through the fermionic limit and the Miura map.

use super::{coefficient_mutations, i_times, j, lin, prod, q, r, Report};
use crate::bell::{binary_bell, Slot};
use crate::calculus::{d_base, d_cov, taylor_components, Derivation};
use crate::error::Result;
use crate::expr::{BaseVar, SuperExpr};
use crate::fraction::SuperFraction;
use crate::grassmann::OddGenerator;
use crate::hirota::{hirota, hirota_poly, HirotaCombo};
use crate::index::MultiIndex;
use crate::jet::{Field, JetExpr};
use crate::scalar::GaussianRational;
use crate::soliton::{log_ratio_x, profile, tau, Family, Params};

fn dx(f: &SuperFraction) -> SuperFraction {
    f.derive(Derivation::Dx)
}

/// `R_u = uₜ + u_xxx + 6u²uₓ`,
/// `R_v = vₜ + v_xxx − 6vvₓ − 6uₓu_xx + 6u²vₓ + 12uuₓv`.
pub fn fermionic_limit_residuals(
    u: &SuperFraction,
    v: &SuperFraction,
) -> (SuperFraction, SuperFraction) {
    let (ux, vx) = (dx(u), dx(v));
    let (uxx, vxx) = (dx(&ux), dx(&vx));
    let (uxxx, vxxx) = (dx(&uxx), dx(&vxx));
    let (ut, vt) = (u.derive(Derivation::Dt), v.derive(Derivation::Dt));
    let u2 = u.mul(u);
    let ru = ut.add(&uxxx).add(&u2.mul(&ux).scale(&q(6)));
    let rv = vt
        .add(&vxxx)
        .sub(&v.mul(&vx).scale(&q(6)))
        .sub(&ux.mul(&uxx).scale(&q(6)))
        .add(&u2.mul(&vx).scale(&q(6)))
        .add(&u.mul(&ux).mul(v).scale(&q(12)));
    (ru, rv)
}

/// `u = ½q₁₂`, `v = ¼(q₁₂² + q₀,ₓ²) − ½q₀,ₓₓ`. Takes `q₀,ₓ` rather than `q₀`
/// so that `q₀ = 2 ln(f/g)` can be passed as its derivative.
pub fn miura_map(q0x: &SuperFraction, q12: &SuperFraction) -> (SuperFraction, SuperFraction) {
    let u = q12.scale(&r(1, 2));
    let v = q12
        .pow(2)
        .add(&q0x.pow(2))
        .scale(&r(1, 4))
        .sub(&dx(q0x).scale(&r(1, 2)));
    (u, v)
}

fn d(e: &SuperExpr, i: u8) -> SuperExpr {
    d_cov(e, i)
}

fn x(e: &SuperExpr) -> SuperExpr {
    d_base(e, BaseVar::X)
}

/// `Qₜ + Q_xxx − ½Qₓ³ − ¾(D₂Qₓ)(D₂Q)Qₓ + ¾(D₂Qₓ)(D₁Q)(D₁D₂Q)
///  + ¾(D₂Q)(D₁Qₓ)(D₁D₂Q) − ¾(D₁Qₓ)(D₁Q)Qₓ`.
pub fn q_flow_residual(qq: &SuperExpr) -> SuperExpr {
    let qx = x(qq);
    let (d1q, d2q) = (d(qq, 1), d(qq, 2));
    let (d1qx, d2qx) = (d(&qx, 1), d(&qx, 2));
    let d12q = d(&d2q, 1);
    let k = r(3, 4);
    let terms = [
        (q(1), d_base(qq, BaseVar::T)),
        (q(1), x(&x(&qx))),
        (r(-1, 2), qx.pow(3)),
        (-&k, d2qx.gr_mul(&d2q).gr_mul(&qx)),
        (k.clone(), d2qx.gr_mul(&d1q).gr_mul(&d12q)),
        (k.clone(), d2q.gr_mul(&d1qx).gr_mul(&d12q)),
        (-&k, d1qx.gr_mul(&d1q).gr_mul(&qx)),
    ];
    terms
        .iter()
        .fold(SuperExpr::zero(), |acc, (c, t)| &acc + &t.scale(c))
}

/// Components of `A = ½D₁D₂Q + ¼(D₂Q)(D₁Q)` for `Q = q₀ − θ₁θ₂q₁₂`
/// against the component form of the Miura map.
pub fn miura_component_check(q0: &SuperExpr, q12: &SuperExpr) -> Report {
    use OddGenerator as G;
    let mut rep = Report::new("miura components");
    let t12 = SuperExpr::odd_product(&[G::THETA1, G::THETA2]);
    let qq = q0 - &(&t12 * q12);
    let a = &d(&d(&qq, 2), 1).scale(&r(1, 2)) + &d(&qq, 2).gr_mul(&d(&qq, 1)).scale(&r(1, 4));
    let c = taylor_components(&a);
    let q0x = x(q0);
    let v = &(&q12.pow(2) + &q0x.pow(2)).scale(&r(1, 4)) - &x(&q0x).scale(&r(1, 2));
    rep.zero("u = q12/2", &(&c.u - &q12.scale(&r(1, 2))));
    rep.zero("xi1 = 0", &c.xi1);
    rep.zero("xi2 = 0", &c.xi2);
    rep.zero("v = (q12^2 + q0x^2)/4 - q0xx/2", &(&c.v - &v));
    rep
}

/// `K(φ) = Pₜ + P_xxx − 6PPₓ` with `P = φ² − φₓ`.
fn k_part(phi: &SuperFraction) -> SuperFraction {
    let p = phi.pow(2).sub(&dx(phi));
    let px = dx(&p);
    p.derive(Derivation::Dt)
        .add(&dx(&dx(&px)))
        .sub(&p.mul(&px).scale(&q(6)))
}

/// `L(ψ) = Ψₜ + Ψ_xxx − 6ΨΨₓ − 6ψₓψ_xx` with `Ψ = ψ²`.
fn l_part(psi: &SuperFraction) -> SuperFraction {
    let p = psi.pow(2);
    let px = dx(&p);
    let sx = dx(psi);
    p.derive(Derivation::Dt)
        .add(&dx(&dx(&px)))
        .sub(&p.mul(&px).scale(&q(6)))
        .sub(&sx.mul(&dx(&sx)).scale(&q(6)))
}

/// `R_v(−iψ, φ² − ψ² − φₓ)` and `K(φ) − L(ψ)` in jets.
fn split_jets(phi: &Field, psi: &Field) -> (JetExpr, JetExpr) {
    let (u, v) = (Field::even("u"), Field::even("v"));
    let rv = lin(&[
        (q(1), j(&v, "t")),
        (q(1), j(&v, "3x")),
        (q(-6), &JetExpr::field(&v) * &j(&v, "x")),
        (q(-6), &j(&u, "x") * &j(&u, "2x")),
        (q(6), &JetExpr::field(&u).pow(2) * &j(&v, "x")),
        (
            q(12),
            prod(&[&JetExpr::field(&u), &j(&u, "x"), &JetExpr::field(&v)]),
        ),
    ]);
    let (f, s) = (JetExpr::field(phi), JetExpr::field(psi));
    let p = &f.pow(2) - &j(phi, "x");
    let pp = s.pow(2);
    let kd = |p: &JetExpr| {
        let px = p.derive(Derivation::Dx);
        lin(&[
            (q(1), p.derive(Derivation::Dt)),
            (q(1), px.derive(Derivation::Dx).derive(Derivation::Dx)),
            (q(-6), p * &px),
        ])
    };
    let l = &kd(&pp) - &(&j(psi, "x") * &j(psi, "2x")).scale(&q(6));
    let sub = rv
        .substitute_field(&u, &s.scale(&-GaussianRational::i()))
        .substitute_field(&v, &(&p - &pp));
    (sub, &kd(&p) - &l)
}

fn bell_flow(w1: &Slot, w2: &Slot) -> JetExpr {
    let y = |s: &str| binary_bell(&s.parse::<MultiIndex>().expect("index"), w1, w2);
    lin(&[(q(1), y("t")), (q(1), y("3x")), (q(-3), &y("x") * &y("2x"))])
}

pub fn check_am2_chain(params: &Params) -> Result<Report> {
    let mut rep = Report::new("am2");
    let (q0, qt) = (Field::even("q0"), Field::even("qt0"));
    let (p12, pt) = (Field::even("p12"), Field::even("pt12"));
    let (beta, gamma) = (Field::constant("β"), Field::constant("γ"));

    let q0_eq = lin(&[
        (q(1), j(&q0, "t")),
        (q(1), j(&q0, "3x")),
        (r(-1, 2), j(&q0, "x").pow(3)),
    ]);
    let bell_q = bell_flow(
        &Slot::new(r(1, 2), q0.clone()),
        &Slot::formal(JetExpr::field(&beta), qt.clone()),
    );
    rep.zero(
        "Bell form at (q0/2, b qt0) = (q0 flow)/2",
        &(&bell_q - &q0_eq.scale(&r(1, 2))),
    );
    for (k, m) in coefficient_mutations(&q0_eq).iter().enumerate() {
        rep.nonzero(
            &format!("mutation {k} of the q0 flow is detected"),
            &(&bell_q - &m.scale(&r(1, 2))),
        );
    }

    let p_eq = lin(&[
        (q(1), j(&p12, "x,t")),
        (q(1), j(&p12, "4x")),
        (r(3, 2), &j(&p12, "x").pow(2) * &j(&p12, "2x")),
    ]);
    let bell_p = bell_flow(
        &Slot::new(i_times(1, 2), p12.clone()),
        &Slot::formal(JetExpr::field(&gamma), pt.clone()),
    )
    .derive(Derivation::Dx);
    let half_i = i_times(1, 2);
    rep.zero(
        "d/dx of Bell form at (i p12/2, c pt12) = i/2 (q12 flow with q12 = p12_x)",
        &(&bell_p - &p_eq.scale(&half_i)),
    );
    for (k, m) in coefficient_mutations(&p_eq).iter().enumerate() {
        rep.nonzero(
            &format!("mutation {k} of the q12 flow is detected"),
            &(&bell_p - &m.scale(&half_i)),
        );
    }

    let flow: HirotaCombo = "Dt+Dx^3".parse()?;
    let xx = MultiIndex::x(2);
    for solitons in [1u8, 2] {
        for family in [Family::Plain, Family::Tilde] {
            let pair = tau(params, solitons, family)?;
            let tag = format!(
                "{}{}",
                if family == Family::Tilde {
                    "tilde "
                } else {
                    ""
                },
                solitons
            );
            rep.zero(
                &format!("(Dt+Dx^3)(f.g), {tag}-soliton"),
                &hirota_poly(&pair.f, &pair.g, &flow),
            );
            rep.zero(
                &format!("Dx^2(f.g), {tag}-soliton"),
                &hirota(&pair.f, &pair.g, &xx),
            );
        }
    }

    // With u = −iψ, v = φ² − ψ² − φₓ the second residual splits into a
    // part in φ and a part in ψ, so the families never share a denominator.
    let (phi, psi) = (Field::even("φ"), Field::even("ψ"));
    let (rv_split, kl) = split_jets(&phi, &psi);
    rep.zero(
        "R_v(-i psi, phi^2 - psi^2 - phi_x) = K(phi) - L(psi)",
        &(&rv_split - &kl),
    );
    for (k, m) in coefficient_mutations(&kl).iter().enumerate() {
        rep.nonzero(
            &format!("mutation {k} of K - L is detected"),
            &(&rv_split - m),
        );
    }
    let (u11, v11) = profile(params, 1, 1)?;
    let (ru, rv) = fermionic_limit_residuals(&u11, &v11);
    rep.zero("R_u on (u,v)_(1,1), direct", &ru);
    rep.zero("R_v on (u,v)_(1,1), direct", &rv);
    for s in [1u8, 2] {
        let phi = log_ratio_x(&tau(params, s, Family::Plain)?)?;
        let psi = log_ratio_x(&tau(params, s, Family::Tilde)?)?;
        let (ru, _) =
            fermionic_limit_residuals(&psi.scale(&-GaussianRational::i()), &SuperFraction::zero());
        rep.zero(&format!("R_u on u_(m,{s})"), &ru);
        rep.zero(&format!("K on phi of f{s}, g{s}"), &k_part(&phi));
        rep.zero(&format!("L on psi of tilde f{s}, g{s}"), &l_part(&psi));
    }
    rep.note("R_v on (u,v)_(m,n) = K(phi_m) - L(psi_n); both parts vanish for m, n in {1, 2}");

    // u = 0: the classical Miura map sends the mKdV soliton to a KdV one
    let pair = tau(params, 1, Family::Plain)?;
    let q0x = log_ratio_x(&pair)?.scale(&q(2));
    let zero = SuperFraction::zero();
    let (u, v) = miura_map(&q0x, &zero);
    rep.zero("u = 0 when q12 = 0", &u);
    let classical = q0x.pow(2).scale(&r(1, 4)).sub(&dx(&q0x).scale(&r(1, 2)));
    rep.zero("v = q0x^2/4 - q0xx/2 when q12 = 0", &v.sub(&classical));
    let k = &params.kappa;
    let e = SuperExpr::exp(crate::expr::Phase::kdv(k));
    let closed = SuperFraction::with_factors(
        e.scale(&(&(k * k) * &q(-2))),
        vec![(&SuperExpr::one() + &e, 2)],
    )?;
    rep.zero("v = -2k^2 e/(1+e)^2", &v.sub(&closed));
    let rx = dx(&q0x);
    let mkdv = q0x
        .derive(Derivation::Dt)
        .add(&dx(&dx(&rx)))
        .sub(&q0x.pow(2).mul(&rx).scale(&r(3, 2)));
    rep.zero("r = q0x solves r_t + r_xxx - 3/2 r^2 r_x = 0", &mkdv);
    let (ru, rv) = fermionic_limit_residuals(&u, &v);
    rep.zero("R_u on the Miura image", &ru);
    rep.zero("R_v on the Miura image", &rv);

    let sample = |k: i64| SuperExpr::exp(crate::expr::Phase::new([(BaseVar::X, q(k))]));
    let q0s = &(&sample(1).scale(&r(2, 3)) + &sample(-2)) + &SuperExpr::var_pow(BaseVar::T, 1);
    let q12s = &sample(3).scale(&i_times(1, 1)) - &SuperExpr::var_pow(BaseVar::X, 2);
    rep.extend(miura_component_check(&q0s, &q12s));
    rep.zero(
        "Q flow residual at Q = 0",
        &q_flow_residual(&SuperExpr::zero()),
    );
    rep.zero(
        "Q flow residual at constant Q",
        &q_flow_residual(&SuperExpr::constant(GaussianRational::complex(
            (2, 1),
            (-1, 3),
        ))),
    );
    rep.note("q~0 and p~12 enter as free second slots; the flows do not depend on them");
    Ok(rep)
}
