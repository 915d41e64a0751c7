use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pvspace::case1::{classify1, delta1, f1, make_w1, make_w_alpha1, quadratic_root_algebra, GrpElt1, HermPair2};
use pvspace::case2::{act2, delta2, rep2, Fiber2, V2Elem};
use pvspace::case3::{classify3, delta3, f3, rep3, CubicRootData, Fiber3, GrpElt3, HermPair3};
use pvspace::json::*;
use pvspace::oracle::census::{case2_label, census, CensusConfig, DEFAULT_BUDGET};
use pvspace::*;

const BUDGET_VAR: &str = "PVSPACE_MEMORY_BUDGET";

#[derive(Parser)]
#[command(name = "pvspace", version, about = "Invariants, representatives and orbit censuses for three prehomogeneous spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Binary form, Δ, semistability and splitting-field label of an element.
    Invariant { element: PathBuf },
    /// Orbit representative for a fiber.
    Rep(RepArgs),
    /// Whether a group element fixes an element.
    StabCheck { group: PathBuf, element: PathBuf },
    /// Image of an element under a group element.
    Act {
        group: PathBuf,
        element: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Exhaustive orbit census over F_q.
    Census {
        #[arg(long)]
        case: u8,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Permit case 3 beyond q = 2.
        #[arg(long)]
        allow_large: bool,
        /// Shuffle the generator order with this seed.
        #[arg(long)]
        shuffle: Option<u64>,
    },
}

#[derive(clap::Args)]
struct RepArgs {
    #[arg(long)]
    case: u8,
    /// trivial | quadratic | kone | cyclic-cubic | s3
    #[arg(long)]
    fiber: String,
    /// Comma-separated β: base scalars for the trivial fiber, otherwise
    /// coordinates in the basis 1, α1, α1², ...
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Comma-separated coefficients of f, leading v1 power first.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Q or a prime p.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Over Q: k1 = Q(√d) for the Hermitian cases.
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    d: i64,
    /// Over Q: ascending coefficients of the monic cubic defining k1 in case 2.
    #[arg(long, default_value = "-2,0,0,1", allow_hyphen_values = true)]
    k1_poly: String,
    /// Tower descriptor file overriding the default k1.
    #[arg(long)]
    tower: Option<PathBuf>,
}

enum Failure {
    Parse(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out<T> = std::result::Result<T, Failure>;

fn read_json(path: &PathBuf) -> Out<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn field_of(v: &Value) -> Out<u64> {
    let tower = v.get("tower").ok_or_else(|| Failure::Lib(Error::Invalid("missing field \"tower\"".into())))?;
    Ok(base_kind(tower)?.1)
}

macro_rules! dispatch {
    ($p:expr, $f:ident ( $($a:expr),* )) => {
        match $p {
            0 => $f::<Q>($($a),*),
            2 => $f::<F2>($($a),*),
            3 => $f::<F3>($($a),*),
            5 => $f::<F5>($($a),*),
            7 => $f::<F7>($($a),*),
            11 => $f::<F11>($($a),*),
            13 => $f::<F13>($($a),*),
            17 => $f::<F17>($($a),*),
            19 => $f::<F19>($($a),*),
            23 => $f::<F23>($($a),*),
            29 => $f::<F29>($($a),*),
            31 => $f::<F31>($($a),*),
            p => Err(Failure::Lib(Error::UnsupportedField(format!("F_{p} is not built in")))),
        }
    };
}

fn label_fields(out: &mut Value, label: Option<ErLabel>) {
    out["label"] = label.as_ref().map_or(Value::Null, |l| json!(l.name()));
    out["label_data"] = label.map_or(Value::Null, |l| l.to_json());
}

fn invariant<S: Scalar>(v: &Value) -> Out<Value> {
    let mut out = match case_of(v)? {
        1 => {
            let x: HermPair2<S> = herm_from_json(v)?;
            let (d, ss) = delta1(&x)?;
            let mut o = json!({"F": form_to_json(&f1(&x)?), "delta": d.to_json(), "semistable": ss});
            label_fields(&mut o, if ss { Some(classify1(&x)?) } else { None });
            o
        }
        2 => {
            let x = v2_from_json::<S>(v)?;
            let (d, ss) = delta2(&x);
            let mut o = json!({"F": Value::Null, "delta": d.to_json(), "semistable": ss});
            label_fields(&mut o, if ss { Some(label2(&x)?) } else { None });
            o
        }
        _ => {
            let x: HermPair3<S> = herm_from_json(v)?;
            let (d, ss) = delta3(&x)?;
            let mut o = json!({"F": form_to_json(&f3(&x)?), "delta": d.to_json(), "semistable": ss});
            label_fields(&mut o, if ss { Some(classify3(&x)?) } else { None });
            o
        }
    };
    out["case"] = json!(case_of(v)?);
    Ok(out)
}

fn label2<S: Scalar>(x: &V2Elem<S>) -> Result<ErLabel> {
    if S::characteristic() == 2 {
        case2_label(x)
    } else {
        pvspace::case2::classify2(x)
    }
}

fn check_cases(g: &Value, x: &Value) -> Out<u64> {
    let (cg, cx) = (case_of(g)?, case_of(x)?);
    if cg != cx {
        return Err(Failure::Lib(Error::Invalid(format!("group element is for case {cg}, element for case {cx}"))));
    }
    if field_of(g)? != field_of(x)? {
        return Err(Failure::Lib(Error::BaseMismatch));
    }
    Ok(cg)
}

fn act_values<S: Scalar>(g: &Value, x: &Value, inverse: bool) -> Out<Value> {
    Ok(match check_cases(g, x)? {
        1 => {
            let e: GrpElt1<S> = herm_group_from_json(g)?;
            let e = if inverse { e.inverse() } else { e };
            herm_to_json(&e.act(&herm_from_json::<S, 2>(x)?)?)
        }
        2 => {
            let e = grp2_from_json::<S>(g)?;
            let e = if inverse { e.inverse() } else { e };
            v2_to_json(&act2(&e, &v2_from_json(x)?)?)
        }
        _ => {
            let e: GrpElt3<S> = herm_group_from_json(g)?;
            let e = if inverse { e.inverse() } else { e };
            herm_to_json(&e.act(&herm_from_json::<S, 3>(x)?)?)
        }
    })
}

fn stab_check<S: Scalar>(g: &Value, x: &Value) -> Out<Value> {
    let image = act_values::<S>(g, x, false)?;
    let original = match case_of(x)? {
        1 => herm_to_json(&herm_from_json::<S, 2>(x)?),
        2 => v2_to_json(&v2_from_json::<S>(x)?),
        _ => herm_to_json(&herm_from_json::<S, 3>(x)?),
    };
    Ok(json!({"fixes": image == original}))
}

fn scalars<S: Scalar>(s: &str) -> Out<Vec<S>> {
    s.split(',').map(|t| S::parse(t.trim()).map_err(Failure::Lib)).collect()
}

fn parse_p(field: &str) -> Out<u64> {
    if field.eq_ignore_ascii_case("q") {
        return Ok(0);
    }
    field
        .parse()
        .map_err(|_| Failure::Lib(Error::UnsupportedField(format!("field must be Q or a prime, got {field}"))))
}

fn default_tower<S: Scalar>(a: &RepArgs) -> Out<Alg<S>> {
    if let Some(path) = &a.tower {
        return Ok(tower_from_json(&read_json(path)?)?);
    }
    let cubic = a.case == 2;
    if S::is_finite() {
        return Ok(EtaleAlgebra::finite_field(if cubic { 3 } else { 2 })?);
    }
    if cubic {
        let c = scalars::<S>(&a.k1_poly)?;
        return Ok(EtaleAlgebra::make_extension(&Poly::new(c), &[])?);
    }
    let d = S::from_i64(a.d);
    Ok(EtaleAlgebra::make_extension(&Poly::new(vec![-d, S::zero(), S::one()]), &[vec![S::zero(), -S::one()]])?)
}

fn form<S: Scalar>(a: &RepArgs) -> Out<BinaryForm<S>> {
    let f = a.f.as_ref().ok_or_else(|| Failure::Lib(Error::Invalid(format!("fiber {} needs --f", a.fiber))))?;
    Ok(BinaryForm::new(scalars(f)?))
}

fn betas<S: Scalar>(a: &RepArgs, n: usize) -> Out<Vec<S>> {
    let b = match &a.beta {
        Some(b) => scalars(b)?,
        None if a.fiber == "trivial" => vec![S::one(); n],
        None => vec![S::one()],
    };
    if a.fiber == "trivial" && b.len() != n {
        return Err(Failure::Lib(Error::Invalid(format!("trivial fiber needs {n} values of β"))));
    }
    Ok(b)
}

/// `Σ c_i α1^i` in the root algebra.
fn beta_in<S: Scalar>(data: &CubicRootData<S>, c: &[S]) -> AlgElem<S> {
    let a1 = &data.roots()[0];
    c.iter()
        .enumerate()
        .fold(AlgElem::zero(a1.alg()), |acc, (i, ci)| acc + a1.pow_u64(i as u64).scale(ci))
}

fn root_data<S: Scalar>(f: &BinaryForm<S>) -> Result<CubicRootData<S>> {
    if S::is_finite() {
        CubicRootData::finite(f)
    } else {
        CubicRootData::generic(f)
    }
}

fn rep<S: Scalar>(a: &RepArgs) -> Out<Value> {
    let k1 = default_tower::<S>(a)?;
    let bad = || Failure::Lib(Error::Invalid(format!("case {} has no fiber {}", a.case, a.fiber)));
    Ok(match a.case {
        1 => match a.fiber.as_str() {
            "trivial" => herm_to_json(&make_w1(&k1)?),
            "quadratic" => herm_to_json(&make_w_alpha1(&k1, &form(a)?)?),
            _ => return Err(bad()),
        },
        2 => {
            let fiber = match a.fiber.as_str() {
                "trivial" => {
                    let b = betas::<S>(a, 2)?;
                    Fiber2::Trivial(b[0].clone(), b[1].clone())
                }
                "quadratic" => {
                    let f = form(a)?;
                    let ka = quadratic_root_algebra(&f)?;
                    Fiber2::Quadratic(f, AlgElem::new(&ka, betas(a, 2)?))
                }
                _ => return Err(bad()),
            };
            v2_to_json(&rep2(&k1, &fiber)?)
        }
        3 => {
            let fiber = match a.fiber.as_str() {
                "trivial" => {
                    let b = betas::<S>(a, 3)?;
                    Fiber3::Trivial(b[0].clone(), b[1].clone(), b[2].clone())
                }
                "kone" => Fiber3::KOne,
                "quadratic" => {
                    let data = CubicRootData::quadratic(&form(a)?)?;
                    let b = beta_in(&data, &betas(a, 3)?);
                    Fiber3::Quadratic(data, b)
                }
                "cyclic-cubic" | "s3" => {
                    let data = root_data(&form(a)?)?;
                    let b = beta_in(&data, &betas(a, 3)?);
                    if a.fiber == "s3" {
                        Fiber3::S3(data, b)
                    } else {
                        Fiber3::CyclicCubic(data, b)
                    }
                }
                _ => return Err(bad()),
            };
            herm_to_json(&rep3(&k1, &fiber)?)
        }
        c => return Err(Failure::Lib(Error::Invalid(format!("unknown case {c}")))),
    })
}

fn budget() -> Out<u64> {
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Lib(Error::Invalid(format!("{BUDGET_VAR} must be a byte count")))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn run_census<S: Scalar>(case: u8, cfg: &CensusConfig) -> Out<Value> {
    if !S::is_finite() {
        return Err(Failure::Lib(Error::UnsupportedField("the census runs over prime fields".into())));
    }
    Ok(census::<S>(case, cfg)?.to_json())
}

/// Exit code and JSON document for a command.
fn run(cmd: &Command) -> (u8, Value) {
    let result = match cmd {
        Command::Invariant { element } => read_json(element).and_then(|v| dispatch!(field_of(&v)?, invariant(&v))),
        Command::Rep(a) => parse_p(&a.field).and_then(|p| dispatch!(p, rep(a))),
        Command::StabCheck { group, element } => read_json(group).and_then(|g| {
            let x = read_json(element)?;
            dispatch!(field_of(&g)?, stab_check(&g, &x))
        }),
        Command::Act { group, element, inverse } => read_json(group).and_then(|g| {
            let x = read_json(element)?;
            dispatch!(field_of(&g)?, act_values(&g, &x, *inverse))
        }),
        Command::Census { case, q, seed, allow_large, shuffle } => budget().and_then(|budget_bytes| {
            let cfg = CensusConfig { seed: *seed, budget_bytes, allow_large: *allow_large, shuffle: *shuffle };
            if *q == 0 {
                return Err(Failure::Lib(Error::UnsupportedField("q must be a prime".into())));
            }
            dispatch!(*q, run_census(*case, &cfg))
        }),
    };
    match result {
        Ok(v) => {
            let code = if v.get("matches") == Some(&Value::Bool(false)) { 2 } else { 0 };
            (code, v)
        }
        Err(Failure::Parse(m)) => (1, json!({"error": {"kind": "MalformedJson", "message": m}})),
        Err(Failure::Io(m)) => (1, json!({"error": {"kind": "Io", "message": m}})),
        Err(Failure::Lib(e)) => {
            let kind = format!("{e:?}");
            let kind = kind.split(['(', ' ']).next().unwrap_or("Error").to_string();
            (if e.is_internal() { 2 } else { 1 }, json!({"error": {"kind": kind, "message": e.to_string()}}))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, v) = run(&cli.command);
    let text = serde_json::to_string(&v).expect("JSON values serialize") + "\n";
    match &cli.output {
        Some(path) if code == 0 || v.get("error").is_none() => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        _ => print!("{text}"),
    }
    ExitCode::from(code)
}
