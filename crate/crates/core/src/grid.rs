//! Numeric sampling of exact fractions on an `(x, t)` grid, CSV output and
//! a gnuplot script.

use std::io::Write;

use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::fraction::SuperFraction;
use crate::soliton::point;

/// Largest tolerated `|Im|` of a sampled value.
pub const IMAG_TOL: f64 = 1e-9;
/// Smallest tolerated `|denominator|`.
pub const DEN_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub samples: usize,
    pub times: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            x_min: -20.0,
            x_max: 20.0,
            samples: 801,
            times: vec![-2.0, 0.0, 2.0],
        }
    }
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, samples: usize, times: Vec<f64>) -> Result<Self> {
        let g = Self {
            x_min,
            x_max,
            samples,
            times,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite()) || self.x_min >= self.x_max {
            return Err(Error::InvalidGrid(format!(
                "need x-min < x-max, got {} and {}",
                self.x_min, self.x_max
            )));
        }
        if self.samples < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 samples, got {}",
                self.samples
            )));
        }
        if self.times.is_empty() || self.times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid("need at least one finite time".into()));
        }
        Ok(())
    }

    pub fn xs(&self) -> Vec<f64> {
        let n = self.samples - 1;
        let span = self.x_max - self.x_min;
        (0..=n)
            .map(|k| {
                if k == n {
                    self.x_max
                } else {
                    self.x_min + span * k as f64 / n as f64
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub t: f64,
    pub value: f64,
}

/// Real value of a Grassmann-free fraction at `(x, t)`; `t₂ = 0`.
pub fn eval_point(expr: &SuperFraction, x: f64, t: f64) -> Result<f64> {
    let (n, d) = expr.eval_parts(&point(x, t))?;
    if d.norm().is_nan() || d.norm() < DEN_FLOOR {
        return Err(Error::Singularity {
            x,
            t,
            value: d.norm(),
        });
    }
    let v = n / d;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Singularity {
            x,
            t,
            value: d.norm(),
        });
    }
    if v.im.abs() >= IMAG_TOL {
        return Err(Error::ImaginaryResidue { x, t, value: v.im });
    }
    Ok(v.re)
}

/// Row-major in `t`, then `x`.
pub fn eval_grid(expr: &SuperFraction, grid: &GridSpec) -> Result<Vec<Sample>> {
    grid.validate()?;
    if expr.has_grassmann_support() {
        return Err(Error::GrassmannSupport(expr.to_string()));
    }
    let xs = grid.xs();
    let mut out = Vec::with_capacity(xs.len() * grid.times.len());
    for &t in &grid.times {
        for &x in &xs {
            out.push(Sample {
                x,
                t,
                value: eval_point(expr, x, t)?,
            });
        }
    }
    Ok(out)
}

/// Location and value of the maximum at time `t`: grid argmax, then
/// bisection on the exact x-derivative.
pub fn peak(expr: &SuperFraction, grid: &GridSpec, t: f64) -> Result<(f64, f64)> {
    grid.validate()?;
    let xs = grid.xs();
    let vals: Vec<f64> = xs
        .iter()
        .map(|&x| eval_point(expr, x, t))
        .collect::<Result<_>>()?;
    let k = vals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .expect("nonempty grid");
    if k == 0 || k + 1 == xs.len() {
        return Ok((xs[k], vals[k]));
    }
    let d = expr.derive(Derivation::Dx);
    let (mut lo, mut hi) = (xs[k - 1], xs[k + 1]);
    if eval_point(&d, lo, t)? < 0.0 || eval_point(&d, hi, t)? > 0.0 {
        return Ok((xs[k], vals[k]));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval_point(&d, mid, t)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, eval_point(expr, x, t)?))
}

/// C's `%.12g`.
pub fn format_g12(v: f64) -> String {
    const P: i32 = 12;
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..P).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mant), sign, exp.abs())
    } else {
        trim(&format!("{:.*}", (P - 1 - exp) as usize, v))
    }
}

pub fn write_csv(samples: &[Sample], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "x,t,value")?;
    for s in samples {
        writeln!(
            w,
            "{},{},{}",
            format_g12(s.x),
            format_g12(s.t),
            format_g12(s.value)
        )?;
    }
    Ok(())
}

/// Parses the output of [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<Sample>> {
    let mut lines = text.lines();
    if lines.next() != Some("x,t,value") {
        return Err(Error::Parse("missing `x,t,value` header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
            };
            match cols.as_slice() {
                [x, t, v] => Ok(Sample {
                    x: num(x)?,
                    t: num(t)?,
                    value: num(v)?,
                }),
                _ => Err(Error::Parse(format!("bad row `{l}`"))),
            }
        })
        .collect()
}

/// gnuplot script drawing one curve per time slice of `csv`.
pub fn plot_script(csv: &str, times: &[f64], title: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set title '{}'\n", title.replace('\'', "")));
    s.push_str("set xlabel 'x'\nset key outside right\nset grid\n");
    let curves: Vec<String> = times
        .iter()
        .map(|t| {
            let t = format_g12(*t);
            format!(
                "'{}' skip 1 using 1:($2=={t} ? $3 : 1/0) with lines title 't = {t}'",
                csv.replace('\'', "")
            )
        })
        .collect();
    s.push_str(&format!("plot {}\n", curves.join(", \\\n     ")));
    s
}
