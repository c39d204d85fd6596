//! Exact super-calculus, super Hirota bilinear operators and binary Bell
//! polynomials, together with verification routines for the bilinear
//! representations of the N=2 supersymmetric KdV equation.

pub mod bell;
pub mod calculus;
pub mod error;
pub mod expr;
pub mod fraction;
pub mod grassmann;
pub mod grid;
pub mod hirota;
pub mod index;
pub mod jet;
pub mod kdv;
pub mod sample;
pub mod scalar;
pub mod soliton;
pub mod solve;

pub use bell::{bell_y, binary_bell, link_check, reduce_on_shell, FlowRule, LinkResult, Slot};
pub use calculus::{d_base, d_cov, taylor_components, ComponentQuad, Derivation};
pub use error::{Error, Result};
pub use expr::{BaseVar, EvenMonomial, Parity, Phase, SuperExpr, SuperTerm};
pub use fraction::{log_derivative, SuperFraction};
pub use grassmann::{GrassmannMonomial, OddGenerator};
pub use hirota::{hirota, hirota_doubled, hirota_poly, HirotaCombo};
pub use index::MultiIndex;
pub use jet::{Field, JetExpr, JetMonomial, JetVariable};
pub use scalar::GaussianRational;
