//! `k3mirror` command-line front-end. Every command prints one JSON document
//! on stdout (or a plain table with `--output table`).

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use k3mirror::bv::{mirror_swap, BVData};
use k3mirror::census::{dualize_census, validate_census};
use k3mirror::hyperkahler::{rotation_table, TwoForm};
use k3mirror::involution::mirror_involution;
use k3mirror::json::*;
use k3mirror::lattice::{LatticeVector, RationalVector, Sublattice};
use k3mirror::leray::{bv_table, elliptic_table, k3_table, y_betti, BvMirror, SpectralTable};
use k3mirror::mirror_lattice::{check_admissible, construct_mirror, MirrorSplit};
use k3mirror::mirror_map::{phi, phi_inverse};
use k3mirror::period::{in_period_domain, PeriodVector, TubePoint};
use k3mirror::verify::{run_all, DEFAULT_SEED};
use k3mirror::Error;

#[derive(Parser)]
#[command(
    name = "k3mirror",
    version,
    about = "Exact K3 mirror lattices, mirror maps and Borcea-Voisin invariants"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lattice invariants.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Mirror lattices and the mirror map.
    #[command(subcommand)]
    Mirror(MirrorCmd),
    /// Hyperkähler rotation of complex structures.
    #[command(subcommand)]
    Hk(HkCmd),
    /// Borcea-Voisin Hodge numbers.
    #[command(subcommand)]
    Bv(BvCmd),
    /// Singular fiber censuses.
    #[command(subcommand)]
    Census(CensusCmd),
    /// Leray tables and the mirror period of a Borcea-Voisin threefold.
    #[command(subcommand)]
    Leray(LerayCmd),
    /// Acceptance checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Rank, signature, parity and determinant.
    Info {
        #[arg(long)]
        spec: String,
    },
}

#[derive(Subcommand)]
enum MirrorCmd {
    /// Split T = U(m) + complement and build the mirror lattice.
    Construct {
        #[arg(long)]
        lattice: String,
        /// Basis of M inside the lattice; T is its orthogonal complement.
        /// Without it T is the whole lattice.
        #[arg(long)]
        polarization: Option<String>,
        #[arg(long)]
        e: String,
        #[arg(long)]
        eprime: String,
        #[arg(long)]
        m: String,
    },
    /// Mirror map from the tube domain over the mirror lattice.
    Phi {
        #[arg(long)]
        split: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        omega: String,
    },
    /// Inverse of the mirror map.
    PhiInverse {
        #[arg(long)]
        split: String,
        #[arg(long)]
        re: String,
        #[arg(long)]
        im: String,
    },
    /// Mirror involution r_P composed with an involution whose
    /// anti-invariant lattice is T.
    Involution {
        #[arg(long)]
        split: String,
        #[arg(long)]
        involution: String,
    },
}

#[derive(Subcommand)]
enum HkCmd {
    /// Rotation table of (Ω, ω) through the three complex structures.
    Table {
        #[arg(long, default_value = "K3")]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        omega_re: String,
        #[arg(long, allow_hyphen_values = true)]
        omega_im: String,
        #[arg(long, allow_hyphen_values = true)]
        kahler: String,
    },
}

#[derive(Subcommand)]
enum BvCmd {
    /// h11, h21 and the Euler characteristic.
    Hodge {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        nprime: i64,
    },
    /// Fixed-curve data of the mirror family.
    Swap {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        nprime: i64,
    },
}

#[derive(Subcommand)]
enum CensusCmd {
    /// Validate a census and sum its Euler contributions.
    Check {
        #[arg(long)]
        census: String,
    },
    /// Census of the mirror fibration.
    Dualize {
        #[arg(long)]
        census: String,
    },
}

#[derive(Subcommand)]
enum LerayCmd {
    /// Table of the threefold for a rank-r polarization.
    Bv {
        #[arg(long)]
        rank: usize,
    },
    /// Table of the K3 surface for a rank-r polarization.
    K3 {
        #[arg(long)]
        rank: usize,
    },
    /// Table of the elliptic curve.
    Elliptic,
    /// Mirror period as a class in (P + M) ⊗ H¹(A).
    BvPeriod {
        #[arg(long)]
        split: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        omega1: String,
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
        #[arg(long, allow_hyphen_values = true)]
        omega2: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every acceptance check.
    All {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Fail {
    Usage { flag: &'static str, msg: String },
    Domain(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Fail>;

/// Parse failures blame the flag; anything else is a domain error.
fn on<T>(flag: &'static str, r: k3mirror::Result<T>) -> Res<T> {
    r.map_err(|e| match e {
        Error::Parse(msg) => Fail::Usage { flag, msg },
        other => Fail::Domain(other),
    })
}

/// Inline text, or the contents of a file when prefixed with `@`.
fn read_arg(flag: &'static str, s: &str) -> Res<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Fail::Usage {
            flag,
            msg: format!("{path}: {e}"),
        }),
        None => Ok(s.to_string()),
    }
}

fn json_arg(flag: &'static str, s: &str) -> Res<Value> {
    let text = read_arg(flag, s)?;
    serde_json::from_str(&text).map_err(|e| Fail::Usage {
        flag,
        msg: e.to_string(),
    })
}

/// Lattice names may be passed bare; anything starting with `[` or `{` is JSON.
fn lattice_arg(flag: &'static str, s: &str) -> Res<k3mirror::lattice::IntegerLattice> {
    let text = read_arg(flag, s)?;
    let t = text.trim();
    let v = if t.starts_with('[') || t.starts_with('{') || t.starts_with('"') {
        serde_json::from_str(t).map_err(|e| Fail::Usage {
            flag,
            msg: e.to_string(),
        })?
    } else {
        Value::String(t.to_string())
    };
    on(flag, parse_lattice(&v))
}

fn rational_list_arg(flag: &'static str, s: &str) -> Res<RationalVector> {
    let text = read_arg(flag, s)?;
    on(flag, parse_rational_list(&text))
}

fn int_list_arg(flag: &'static str, s: &str) -> Res<LatticeVector> {
    let text = read_arg(flag, s)?;
    on(flag, parse_int_list(&text))
}

/// A vector over `s` given either in ambient coordinates or in the basis of `s`.
fn vector_over(flag: &'static str, s: &Sublattice, text: &str) -> Res<RationalVector> {
    let v = rational_list_arg(flag, text)?;
    let n = s.ambient().rank();
    if v.len() == n {
        Ok(v)
    } else if v.len() == s.rank() {
        Ok(s.combine_q(&v.0))
    } else {
        Err(Fail::Usage {
            flag,
            msg: format!(
                "expected {n} ambient or {} basis coordinates, found {}",
                s.rank(),
                v.len()
            ),
        })
    }
}

fn split_arg(s: &str) -> Res<MirrorSplit> {
    let v = json_arg("--split", s)?;
    on("--split", parse_split(&v))
}

fn bv_arg(n: i64, nprime: i64) -> Res<BVData> {
    Ok(BVData::new(n, nprime)?)
}

enum Report {
    Json(Value),
    Table(Value, SpectralTable),
    Checks(Value, String, bool),
}

fn table_report(t: SpectralTable) -> Report {
    Report::Table(table_to_json(&t), t)
}

fn run(cmd: Cmd) -> Res<Report> {
    let out = match cmd {
        Cmd::Lattice(LatticeCmd::Info { spec }) => lattice_info(&lattice_arg("--spec", &spec)?),
        Cmd::Mirror(c) => return mirror(c),
        Cmd::Hk(HkCmd::Table {
            lattice,
            omega_re,
            omega_im,
            kahler,
        }) => {
            let l = lattice_arg("--lattice", &lattice)?;
            let omega = TwoForm {
                re: rational_list_arg("--omega-re", &omega_re)?,
                im: rational_list_arg("--omega-im", &omega_im)?,
            };
            let w = rational_list_arg("--kahler", &kahler)?;
            let t = rotation_table(&omega, &w, &l)?;
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "structure": r.structure.label(),
                        "omega_re": rational_vec_to_json(&r.holomorphic.re),
                        "omega_im": rational_vec_to_json(&r.holomorphic.im),
                        "kahler": rational_vec_to_json(&r.kahler),
                    })
                })
                .collect();
            json!({ "rows": rows })
        }
        Cmd::Bv(BvCmd::Hodge { n, nprime }) => hodge_to_json(&bv_arg(n, nprime)?)?,
        Cmd::Bv(BvCmd::Swap { n, nprime }) => {
            let d = mirror_swap(&bv_arg(n, nprime)?)?;
            json!({ "n": d.n(), "nprime": d.n_prime() })
        }
        Cmd::Census(CensusCmd::Check { census }) => {
            let c = on("--census", parse_census(&json_arg("--census", &census)?))?;
            census_report(&validate_census(c)?)?
        }
        Cmd::Census(CensusCmd::Dualize { census }) => {
            let c = on("--census", parse_census(&json_arg("--census", &census)?))?;
            census_to_json(dualize_census(&validate_census(c)?)?.census())
        }
        Cmd::Leray(LerayCmd::Bv { rank }) => {
            let t = bv_table(rank)?;
            let betti = y_betti(rank)?;
            let mut r = table_report(t);
            if let Report::Table(v, _) = &mut r {
                v["betti"] = json!(betti);
            }
            return Ok(r);
        }
        Cmd::Leray(LerayCmd::K3 { rank }) => return Ok(table_report(k3_table(rank)?)),
        Cmd::Leray(LerayCmd::Elliptic) => return Ok(table_report(elliptic_table())),
        Cmd::Leray(LerayCmd::BvPeriod {
            split,
            b1,
            omega1,
            b2,
            omega2,
        }) => {
            let split = split_arg(&split)?;
            let m = split.dual_split()?.m_check().clone();
            let ctx = BvMirror::new(&split, &m)?;
            let p1 = TubePoint::new(
                m.clone(),
                vector_over("--b1", &m, &b1)?,
                vector_over("--omega1", &m, &omega1)?,
            )?;
            let b2 = on("--b2", parse_rational_str(&read_arg("--b2", &b2)?))?;
            let w2 = on(
                "--omega2",
                parse_rational_str(&read_arg("--omega2", &omega2)?),
            )?;
            let period = ctx.period(&p1, &b2, &w2)?;
            let mut v = tensor_period_to_json(&period);
            v["reduced"] = tensor_period_to_json(&period.reduce_mod_f1())["components"].clone();
            v["in_domains"] = json!(ctx.factors_in_domains(&period)?);
            v
        }
        Cmd::Verify(VerifyCmd::All { seed }) => {
            let results = run_all(seed);
            let mut text = String::new();
            let mut ok = true;
            let rows: Vec<Value> = results
                .iter()
                .map(|r| {
                    let pass = r.passed && r.within_budget();
                    ok &= pass;
                    let _ = writeln!(
                        text,
                        "[{}] {:>2}. {} ({:.3}s): {}",
                        if pass { "PASS" } else { "FAIL" },
                        r.id,
                        r.name,
                        r.elapsed.as_secs_f64(),
                        r.detail
                    );
                    json!({
                        "id": r.id,
                        "name": r.name,
                        "passed": pass,
                        "detail": r.detail,
                        "elapsed_ms": r.elapsed.as_millis() as u64,
                    })
                })
                .collect();
            return Ok(Report::Checks(
                json!({ "seed": seed, "all_passed": ok, "checks": rows }),
                text,
                ok,
            ));
        }
    };
    Ok(Report::Json(out))
}

fn mirror(cmd: MirrorCmd) -> Res<Report> {
    let out = match cmd {
        MirrorCmd::Construct {
            lattice,
            polarization,
            e,
            eprime,
            m,
        } => {
            let l = lattice_arg("--lattice", &lattice)?;
            let t = match polarization {
                Some(p) => {
                    let basis = on(
                        "--polarization",
                        parse_int_matrix(&json_arg("--polarization", &p)?, Some(l.rank())),
                    )?;
                    Sublattice::spanned_by(&l, &basis)?.orthogonal_complement()
                }
                None => Sublattice::full(&l),
            };
            let e = int_list_arg("--e", &e)?;
            let e_prime = int_list_arg("--eprime", &eprime)?;
            let m = on(
                "--m",
                parse_int(&Value::String(read_arg("--m", &m)?.trim().to_string())),
            )?;
            split_to_json(&construct_mirror(&check_admissible(&t, &e, &e_prime, &m)?)?)
        }
        MirrorCmd::Phi { split, b, omega } => {
            let split = split_arg(&split)?;
            let mc = split.m_check().clone();
            let p = TubePoint::new(
                mc.clone(),
                vector_over("--b", &mc, &b)?,
                vector_over("--omega", &mc, &omega)?,
            )?;
            let w2 = p.omega_sq();
            let period = phi(&split, &p)?;
            report_period(&period, w2)
        }
        MirrorCmd::PhiInverse { split, re, im } => {
            let split = split_arg(&split)?;
            let t = split.t().clone();
            let period = PeriodVector::new(
                t.clone(),
                vector_over("--re", &t, &re)?,
                vector_over("--im", &t, &im)?,
            )?;
            tube_to_json(&phi_inverse(&split, &period)?)
        }
        MirrorCmd::Involution { split, involution } => {
            let split = split_arg(&split)?;
            let rho = on(
                "--involution",
                parse_involution(&json_arg("--involution", &involution)?),
            )?;
            involution_to_json(&mirror_involution(&rho, &split)?)
        }
    };
    Ok(Report::Json(out))
}

/// The period with both quadric conditions evaluated.
fn report_period(p: &PeriodVector, omega_sq: num_rational::BigRational) -> Value {
    let sq = p.self_pairing();
    let herm = p.hermitian_norm();
    let two_w2 = omega_sq.clone() + omega_sq;
    json!({
        "re": rational_vec_to_json(p.re()),
        "im": rational_vec_to_json(p.im()),
        "checks": {
            "omega_dot_omega": complex_to_json(&sq),
            "omega_dot_omegabar": rational_to_json(&herm),
            "twice_kahler_square": rational_to_json(&two_w2),
            "isotropic": sq.is_zero(),
            "norm_matches": herm == two_w2,
            "in_period_domain": in_period_domain(p),
        }
    })
}

/// Flattens a JSON value into `path  value` lines.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(scalar).collect();
            let _ = writeln!(out, "{prefix}  {}", items.join(" "));
        }
        other => {
            let _ = writeln!(out, "{prefix}  {}", scalar(other));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output;
    match run(cli.cmd) {
        Ok(report) => {
            let (value, text, ok) = match report {
                Report::Json(v) => {
                    let mut s = String::new();
                    flatten("", &v, &mut s);
                    (v, s, true)
                }
                Report::Table(v, t) => {
                    let s = format!("{t}\nantidiagonal sums  {:?}\n", t.antidiagonal_sums());
                    (v, s, true)
                }
                Report::Checks(v, s, ok) => (v, s, ok),
            };
            match output {
                Output::Json => println!("{value}"),
                Output::Table => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fail::Domain(e)) => {
            println!("{}", error_to_json(&e));
            ExitCode::from(1)
        }
        Err(Fail::Usage { flag, msg }) => {
            eprintln!("error: invalid value for {flag}: {msg}");
            ExitCode::from(2)
        }
    }
}
