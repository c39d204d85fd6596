use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use superhirota::bell::{bell_y, binary_bell, Slot};
use superhirota::grid::{self, GridSpec};
use superhirota::kdv::{self, Report};
use superhirota::soliton::{Params, ProfileId};
use superhirota::{Error, Field, GaussianRational, JetExpr, MultiIndex};

const LINK_PAIRS: usize = 20;

#[derive(Parser)]
#[command(
    name = "superhirota",
    version,
    about = "Exact checks of super Hirota bilinear forms"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification cases and report exact residuals.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        case: Case,
        /// Seed for the randomized tau pairs of `bell-link`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Sample a soliton profile on a grid and write CSV.
    Soliton {
        #[arg(long)]
        profile: ProfileId,
        #[arg(long, default_value_t = -20.0, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 801)]
        samples: usize,
        /// Comma-separated times.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "-2,0,2",
            allow_hyphen_values = true
        )]
        times: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
        /// Also write a gnuplot script plotting the CSV.
        #[arg(long)]
        plot_script: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Print a Bell polynomial Y, or the binary 𝒴 when two slots are given.
    Bell {
        /// e.g. `3x`, `t`, `xxx,theta1`, `x,t2`.
        #[arg(long)]
        index: MultiIndex,
        /// `f` for Y, or `w1,w2` for 𝒴; a slot may carry a factor, as in
        /// `c*B,d*p` or `2*n,m`.
        #[arg(long, default_value = "f")]
        fields: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Case {
    A1,
    A4,
    Am2,
    N2kdv,
    Burgers,
    BellLink,
    All,
}

const CASES: [Case; 6] = [
    Case::A1,
    Case::A4,
    Case::Am2,
    Case::N2kdv,
    Case::Burgers,
    Case::BellLink,
];

/// Wave numbers: JSON config first, then individual flags.
#[derive(Args)]
struct ParamArgs {
    /// JSON file with any of kappa, kappa_tilde, kappa1, kappa2,
    /// kappa_tilde1, kappa_tilde2.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<GaussianRational>,
    #[arg(long, allow_hyphen_values = true)]
    kappa_tilde: Option<GaussianRational>,
    #[arg(long, allow_hyphen_values = true)]
    kappa1: Option<GaussianRational>,
    #[arg(long, allow_hyphen_values = true)]
    kappa2: Option<GaussianRational>,
    #[arg(long, allow_hyphen_values = true)]
    kappa_tilde1: Option<GaussianRational>,
    #[arg(long, allow_hyphen_values = true)]
    kappa_tilde2: Option<GaussianRational>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<Params, String> {
        let mut p = match &self.config {
            Some(path) => {
                let text =
                    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                Params::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?
            }
            None => Params::default(),
        };
        let set = |slot: &mut GaussianRational, v: &Option<GaussianRational>| {
            if let Some(v) = v {
                *slot = v.clone();
            }
        };
        set(&mut p.kappa, &self.kappa);
        set(&mut p.kappa_tilde, &self.kappa_tilde);
        set(&mut p.kappa1, &self.kappa1);
        set(&mut p.kappa2, &self.kappa2);
        set(&mut p.kappa_tilde1, &self.kappa_tilde1);
        set(&mut p.kappa_tilde2, &self.kappa_tilde2);
        Ok(p)
    }
}

enum Fail {
    Check,
    Usage(String),
    Run(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateWaveNumbers | Error::InvalidGrid(_) | Error::Parse(_) => {
                Fail::Usage(e.to_string())
            }
            e => Fail::Run(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Verify {
            case,
            seed,
            json,
            params,
        } => verify(case, seed, json, &params),
        Cmd::Soliton {
            profile,
            x_min,
            x_max,
            samples,
            times,
            out,
            plot_script,
            params,
        } => {
            let grid = GridSpec {
                x_min,
                x_max,
                samples,
                times,
            };
            soliton(profile, &grid, &out, plot_script.as_deref(), &params)
        }
        Cmd::Bell { index, fields } => bell(&index, &fields),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check) => ExitCode::from(1),
        Err(Fail::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run_case(
    case: Case,
    seed: u64,
    params: &Params,
) -> superhirota::Result<(Report, Option<serde_json::Value>)> {
    Ok(match case {
        Case::A1 => (kdv::check_a1()?, None),
        Case::A4 => {
            let a4 = kdv::solve_a4_coefficients()?;
            let mut rep = a4.report;
            rep.extend(kdv::check_two_boson()?);
            let extra = json!({ "solution": a4.solution, "alternatives": a4.alternatives });
            (rep, Some(extra))
        }
        Case::Am2 => (kdv::check_am2_chain(params)?, None),
        Case::N2kdv => (kdv::check_n2(&params.kappa)?, None),
        Case::Burgers => (kdv::check_burgers()?, None),
        Case::BellLink => (kdv::check_bell_link(seed, LINK_PAIRS)?, None),
        Case::All => unreachable!("expanded by the caller"),
    })
}

fn verify(case: Case, seed: u64, as_json: bool, params: &ParamArgs) -> Result<(), Fail> {
    let params = params.resolve().map_err(Fail::Usage)?;
    let cases: Vec<Case> = if case == Case::All {
        CASES.to_vec()
    } else {
        vec![case]
    };
    let mut all_ok = true;
    let mut docs = Vec::new();
    for c in cases {
        let (rep, extra) = run_case(c, seed, &params)?;
        all_ok &= rep.passed();
        if as_json {
            let mut v = serde_json::to_value(&rep).expect("report serializes");
            v["passed"] = json!(rep.passed());
            if let Some(extra) = extra {
                v["extra"] = extra;
            }
            docs.push(v);
        } else {
            print!("{rep}");
            println!(
                "{}: {}\n",
                rep.case,
                if rep.passed() { "PASS" } else { "FAIL" }
            );
        }
    }
    if as_json {
        let doc = json!({ "passed": all_ok, "seed": seed, "cases": docs });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    }
    if all_ok {
        Ok(())
    } else {
        Err(Fail::Check)
    }
}

fn soliton(
    id: ProfileId,
    grid: &GridSpec,
    out: &Path,
    script: Option<&Path>,
    params: &ParamArgs,
) -> Result<(), Fail> {
    let params = params.resolve().map_err(Fail::Usage)?;
    grid.validate()?;
    let expr = id.build(&params)?;
    let rows = grid::eval_grid(&expr, grid)?;
    let mut buf = Vec::new();
    grid::write_csv(&rows, &mut buf).expect("write to memory");
    fs::write(out, buf).map_err(|e| Fail::Usage(format!("{}: {e}", out.display())))?;
    if let Some(path) = script {
        let text = grid::plot_script(&out.display().to_string(), &grid.times, &id.to_string());
        fs::write(path, text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    }
    println!("{id}: {} rows -> {}", rows.len(), out.display());
    Ok(())
}

fn parse_slot(s: &str) -> Result<Slot, Fail> {
    let s = s.trim();
    let bad = || Fail::Usage(format!("bad slot `{s}`"));
    let (scale, name) = match s.rsplit_once('*') {
        Some((k, n)) => (Some(k.trim()), n.trim()),
        None => (None, s),
    };
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(bad());
    }
    let field = Field::even(name);
    Ok(match scale {
        None => Slot::unit(field),
        Some(k) => match k.parse::<GaussianRational>() {
            Ok(c) => Slot::new(c, field),
            Err(_) if k.chars().all(|c| c.is_alphanumeric() || c == '_') && !k.is_empty() => {
                Slot::formal(JetExpr::field(&Field::constant(k)), field)
            }
            Err(_) => return Err(bad()),
        },
    })
}

fn bell(idx: &MultiIndex, fields: &str) -> Result<(), Fail> {
    if idx.k2 != 0 {
        return Err(Fail::Usage("Bell polynomials take no D2".into()));
    }
    let slots: Vec<&str> = fields.split(',').collect();
    let e = match slots.as_slice() {
        [f] => {
            let slot = parse_slot(f)?;
            if slot.scale != JetExpr::one() {
                return Err(Fail::Usage("Y takes a bare field".into()));
            }
            bell_y(&slot.field, idx)
        }
        [a, b] => binary_bell(idx, &parse_slot(a)?, &parse_slot(b)?),
        _ => {
            return Err(Fail::Usage(format!(
                "expected one or two fields, got `{fields}`"
            )))
        }
    };
    println!("{e}");
    Ok(())
}
