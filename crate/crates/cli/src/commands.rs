use std::fs;
use std::path::{Path, PathBuf};

use degenlab::catalog::{
    build_poset_with, iterated_knoerrer_module, iterated_knoerrer_witness, knoerrer_vars,
    prop56_image, thm31_witness, REGULAR_PARAMETER_NOTE,
};
use degenlab::degeneration::{corollary45_family, fitting_screen, screen_necessary, verify_exactness, verify_witness_with};
use degenlab::io::{
    from_json, to_canonical_json, MatrixDesc, RepresentationDesc, SequenceDesc, SubmoduleDesc, WitnessDesc, ZwaraDesc,
};
use degenlab::matfac::{double_sharp, sharp, syzygy_mr, validate_mr, MatrixRepresentation};
use degenlab::matrix::{ElementaryOp, PolyMatrix};
use degenlab::poly::{parse_poly, PolyRing, QuotientRing};
use degenlab::report::Verdict;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::render::render_text;
use crate::{CliError, Command, Common, Format, WitnessFamily};

pub struct Outcome {
    pub verdict: Verdict,
    pub body: Value,
    pub dot: Option<String>,
}

impl Outcome {
    fn new(verdict: Verdict, body: Value) -> Self {
        let mut body = body;
        if let Value::Object(m) = &mut body {
            m.insert("verdict".into(), json!(verdict.name()));
        }
        Outcome { verdict, body, dot: None }
    }

    fn dry(command: &str) -> Self {
        Outcome::new(Verdict::Valid, json!({"dry_run": true, "command": command}))
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Lib(degenlab::Error::Malformed(e.to_string())))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads `path` as `T` and converts it with `f`, attributing failures to
/// the file.
fn load<T, U>(path: &Path, f: impl FnOnce(T) -> degenlab::Result<U>) -> Result<U, CliError>
where
    T: for<'de> serde::Deserialize<'de>,
{
    let attach = |source| CliError::Input {
        path: path.to_path_buf(),
        source,
    };
    let desc: T = from_json(&read_text(path)?).map_err(attach)?;
    f(desc).map_err(attach)
}

fn load_representation(path: &Path) -> Result<MatrixRepresentation, CliError> {
    load(path, |d: RepresentationDesc| d.representation())
}

fn representation_value(mr: &MatrixRepresentation) -> Result<Value, CliError> {
    let report = mr.report();
    let mut v = to_value(&RepresentationDesc::of(mr))?;
    let obj = v.as_object_mut().expect("object");
    obj.insert("valid".into(), json!(report.valid));
    obj.insert("residual".into(), Value::Null);
    obj.insert(
        "construction".into(),
        match mr.tag() {
            Some(t) => to_value(&t.construction)?,
            None => Value::Null,
        },
    );
    obj.insert("notes".into(), json!(report.notes));
    Ok(v)
}

fn op_name(op: &ElementaryOp) -> String {
    match op {
        ElementaryOp::SwapRows(a, b) => format!("swap_rows({a},{b})"),
        ElementaryOp::SwapCols(a, b) => format!("swap_cols({a},{b})"),
        other => format!("{other:?}"),
    }
}

fn require<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --family {family}")))
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::MfValidate { common, .. }
        | Command::MfSharp { common, .. }
        | Command::MfDoubleSharp { common, .. }
        | Command::MfSyzygy { common, .. }
        | Command::WitnessBuild { common, .. }
        | Command::WitnessVerify { common, .. }
        | Command::Screen { common, .. }
        | Command::ZwaraBuild { common, .. }
        | Command::ZwaraVerify { common, .. }
        | Command::Poset { common, .. }
        | Command::KnoerrerModule { common, .. }
        | Command::Prop56 { common, .. } => common,
    }
}

fn write_output(out: &Outcome, common: &Common) -> Result<(), CliError> {
    let text = match common.format {
        Format::Json => to_canonical_json(&out.body)?,
        Format::Text => render_text(&out.body),
        Format::Dot => out.dot.clone().expect("checked before computing"),
    };
    match &common.output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::File { path: p.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs one subcommand and returns the exit code of its verdict.
pub fn run(cmd: Command) -> Result<u8, CliError> {
    let common = common_of(&cmd);
    let is_poset = matches!(cmd, Command::Poset { .. });
    if common.format == Format::Dot && !is_poset {
        return Err(CliError::Usage("--format dot is only available for poset".into()));
    }
    let dry = common.dry_run;
    let outcome = dispatch(&cmd, dry)?;
    if common.format == Format::Dot && outcome.dot.is_none() {
        return Err(CliError::Usage("no DOT rendering for a dry run".into()));
    }
    write_output(&outcome, common)?;
    Ok(outcome.verdict.exit_code() as u8)
}

fn dispatch(cmd: &Command, dry: bool) -> Result<Outcome, CliError> {
    match cmd {
        Command::MfValidate { input, .. } => {
            let desc: RepresentationDesc = load(input, Ok)?;
            let (hs, mu) = load(input, |d: RepresentationDesc| {
                let hs = d.ring.hypersurface()?;
                let mu = d.mu.matrix_in(hs.s())?;
                Ok((hs, mu))
            })?;
            if dry {
                return Ok(Outcome::dry("mf-validate"));
            }
            let report = validate_mr(&mu, &hs)?;
            let residual = if report.valid {
                Value::Null
            } else {
                to_value(&MatrixDesc::of(&report.residual))?
            };
            let verdict = if report.valid { Verdict::Valid } else { Verdict::Invalid };
            Ok(Outcome::new(
                verdict,
                json!({
                    "ring": to_value(&desc.ring)?,
                    "valid": report.valid,
                    "residual": residual,
                    "construction": Value::Null,
                    "notes": report.notes,
                }),
            ))
        }
        Command::MfSharp { input, u, .. } => {
            let mr = load_representation(input)?;
            if dry {
                return Ok(Outcome::dry("mf-sharp"));
            }
            Ok(Outcome::new(Verdict::Valid, representation_value(&sharp(&mr, u)?)?))
        }
        Command::MfDoubleSharp { input, u, v, .. } => {
            let mr = load_representation(input)?;
            if dry {
                return Ok(Outcome::dry("mf-double-sharp"));
            }
            Ok(Outcome::new(Verdict::Valid, representation_value(&double_sharp(&mr, u, v)?)?))
        }
        Command::MfSyzygy { input, .. } => {
            let mr = load_representation(input)?;
            if dry {
                return Ok(Outcome::dry("mf-syzygy"));
            }
            Ok(Outcome::new(Verdict::Valid, representation_value(&syzygy_mr(&mr)?)?))
        }
        Command::WitnessBuild {
            family, a, b, i, j, dim, ..
        } => witness_build(*family, *a, *b, *i, *j, *dim, dry),
        Command::WitnessVerify { input, budgets, .. } => {
            let budgets = budgets.resolve()?;
            let w = load(input, |d: WitnessDesc| d.witness())?;
            if dry {
                return Ok(Outcome::dry("witness-verify"));
            }
            let report = verify_witness_with(&w, &budgets)?;
            let mut body = to_value(&report)?;
            body.as_object_mut()
                .expect("object")
                .insert("provenance".into(), json!(w.provenance()));
            Ok(Outcome::new(report.verdict, body))
        }
        Command::Screen {
            xi,
            mu,
            t,
            m_pres,
            n_pres,
            budgets,
            ..
        } => screen(xi, mu, t, m_pres, n_pres, &budgets.resolve()?, dry),
        Command::ZwaraBuild { input, .. } => {
            let desc: ZwaraDesc = load(input, Ok)?;
            load(input, |d: ZwaraDesc| d.parts())?;
            if dry {
                return Ok(Outcome::dry("zwara-build"));
            }
            let seq = desc.construct()?;
            Ok(Outcome::new(Verdict::Valid, to_value(&SequenceDesc::of(&seq))?))
        }
        Command::ZwaraVerify { input, .. } => {
            let desc: ZwaraDesc = load(input, Ok)?;
            load(input, |d: ZwaraDesc| d.parts())?;
            if dry {
                return Ok(Outcome::dry("zwara-verify"));
            }
            let seq = desc.construct()?;
            let report = verify_exactness(&seq)?;
            let (nilpotent, bound) = seq.nilpotency()?;
            let verdict = if report.verdict == Verdict::Exact && !nilpotent {
                Verdict::NotExact
            } else {
                report.verdict
            };
            let mut body = to_value(&report)?;
            let obj = body.as_object_mut().expect("object");
            obj.insert("nilpotent".into(), json!(nilpotent));
            obj.insert("nilpotency_bound".into(), json!(bound));
            obj.insert("n".into(), to_value(&SubmoduleDesc::of(&seq.n))?);
            Ok(Outcome::new(verdict, body))
        }
        Command::Poset {
            dim, max_n, jobs, budgets, ..
        } => {
            let budgets = budgets.resolve()?;
            if *dim != 1 && *dim != 2 {
                return Err(CliError::Usage(format!("--dim must be 1 or 2, got {dim}")));
            }
            if jobs == &Some(0) {
                return Err(CliError::Usage("--jobs must be positive".into()));
            }
            if dry {
                return Ok(Outcome::dry("poset"));
            }
            let g = build_poset_with(*dim, *max_n, *jobs, &budgets)?;
            let mut out = Outcome::new(Verdict::Valid, to_value(&g)?);
            out.dot = Some(g.to_dot());
            Ok(out)
        }
        Command::KnoerrerModule { h, dim, .. } => {
            if dim % 2 == 0 {
                return Err(CliError::Usage(format!("--dim must be odd, got {dim}")));
            }
            if dry {
                return Ok(Outcome::dry("knoerrer-module"));
            }
            let mr = iterated_knoerrer_module(*h, *dim)?;
            let mut body = representation_value(&mr)?;
            let added: Vec<String> = (1..=((dim - 1) / 2) as usize)
                .flat_map(|k| {
                    let (u, v) = knoerrer_vars(k);
                    [u, v]
                })
                .collect();
            body.as_object_mut().expect("object").insert(
                "metadata".into(),
                json!({"note": REGULAR_PARAMETER_NOTE, "added_vars": added, "h": h, "dim": dim}),
            );
            Ok(Outcome::new(Verdict::Valid, body))
        }
        Command::Prop56 { h, alpha, z, .. } => prop56(*h, alpha.as_deref(), z, dry),
    }
}

fn witness_build(
    family: WitnessFamily,
    a: Option<u32>,
    b: Option<u32>,
    i: Option<u32>,
    j: Option<u32>,
    dim: u32,
    dry: bool,
) -> Result<Outcome, CliError> {
    match family {
        WitnessFamily::Thm31 | WitnessFamily::KnoerrerLift => {
            let name = if family == WitnessFamily::Thm31 { "thm31" } else { "knoerrer-lift" };
            let a = require(a, "a", name)?;
            let b = require(b, "b", name)?;
            if a > b || a % 2 != b % 2 {
                return Err(CliError::Usage(format!(
                    "no witness from {a} to {b}: need a <= b and a ≡ b mod 2"
                )));
            }
            if family == WitnessFamily::KnoerrerLift && dim.is_multiple_of(2) {
                return Err(CliError::Usage(format!("--dim must be odd, got {dim}")));
            }
            if dry {
                return Ok(Outcome::dry("witness-build"));
            }
            let w = match family {
                WitnessFamily::Thm31 => thm31_witness(a, b)?,
                _ => iterated_knoerrer_witness(a, (a + b) / 2, dim, &[1, 2, 3])?,
            };
            Ok(Outcome::new(Verdict::Valid, to_value(&WitnessDesc::of(&w))?))
        }
        WitnessFamily::Cor45 => {
            let i = require(i, "i", "cor45")?;
            let j = require(j, "j", "cor45")?;
            if i < j {
                return Err(CliError::Usage(format!("need i >= j, got i = {i}, j = {j}")));
            }
            if dry {
                return Ok(Outcome::dry("witness-build"));
            }
            let base = PolyRing::rational(&["x", "y"]);
            let ring = QuotientRing::new(&base, parse_poly("x^2", &base)?, Some("x"))?.into();
            let alpha = PolyMatrix::parse(&base, &[&["x"]])?;
            let x = parse_poly("y", &base)?;
            let fam = corollary45_family(&alpha, &x, i, j, &ring)?;
            let mut body = to_value(&SequenceDesc::of(&fam.sequence))?;
            let obj = body.as_object_mut().expect("object");
            obj.insert("i".into(), json!(i));
            obj.insert("j".into(), json!(j));
            obj.insert("n_prime".into(), to_value(&SubmoduleDesc::of(&fam.n_prime))?);
            obj.insert("normalized".into(), to_value(&SubmoduleDesc::of(&fam.normalized))?);
            obj.insert("isomorphism_verified".into(), json!(fam.isomorphism_verified));
            obj.insert("provenance".into(), json!(format!("cor45({i},{j})")));
            let verdict = if fam.isomorphism_verified { Verdict::Valid } else { Verdict::Invalid };
            Ok(Outcome::new(verdict, body))
        }
    }
}

fn screen(
    xi: &Option<PathBuf>,
    mu: &Option<PathBuf>,
    t: &str,
    m_pres: &Option<PathBuf>,
    n_pres: &Option<PathBuf>,
    budgets: &degenlab::budget::Budgets,
    dry: bool,
) -> Result<Outcome, CliError> {
    let minors = match (xi, mu) {
        (Some(xp), Some(mp)) => {
            let mr = load_representation(mp)?;
            let tr = mr
                .hypersurface()
                .s()
                .with_vars(&[t])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let xi = load(xp, |d: MatrixDesc| d.matrix_in(&tr))?;
            Some((xi, mr))
        }
        (None, None) => None,
        _ => return Err(CliError::Usage("--xi and --mu must be given together".into())),
    };
    let fitting = match (m_pres, n_pres) {
        (Some(mp), Some(np)) => {
            let (ring, m) = load(mp, |d: MatrixDesc| Ok((d.ring.ring()?, d.matrix()?)))?;
            let n = load(np, |d: MatrixDesc| d.matrix_in(ring.base()))?;
            Some((ring, m, n))
        }
        (None, None) => None,
        _ => return Err(CliError::Usage("--m-pres and --n-pres must be given together".into())),
    };
    if minors.is_none() && fitting.is_none() {
        return Err(CliError::Usage("give --xi/--mu or --m-pres/--n-pres".into()));
    }
    if dry {
        return Ok(Outcome::dry("screen"));
    }
    let mut body = Map::new();
    let mut verdicts = Vec::new();
    if let Some((xi, mr)) = minors {
        let r = screen_necessary(&xi, &mr, t, budgets)?;
        verdicts.push(r.verdict);
        body.insert("minor_screen".into(), to_value(&r)?);
    }
    if let Some((ring, m, n)) = fitting {
        let r = fitting_screen(&m, &n, &ring, budgets.i_max)?;
        verdicts.push(r.verdict);
        body.insert("fitting_screen".into(), to_value(&r)?);
    }
    let verdict = if verdicts.contains(&Verdict::Obstructed) {
        Verdict::Obstructed
    } else if verdicts.contains(&Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Consistent
    };
    Ok(Outcome::new(verdict, Value::Object(body)))
}

fn prop56(h: u32, alpha: Option<&Path>, z: &str, dry: bool) -> Result<Outcome, CliError> {
    let alpha = match alpha {
        Some(p) => load(p, |d: MatrixDesc| d.matrix())?,
        None => {
            let s = PolyRing::gaussian(&["x0", "z"]);
            PolyMatrix::parse(&s, &[&["x0"]])?
        }
    };
    let z = parse_poly(z, alpha.ring()).map_err(|e| CliError::Usage(format!("--z: {e}")))?;
    if dry {
        return Ok(Outcome::dry("prop56"));
    }
    let p = prop56_image(&alpha, &z, h)?;
    let body = json!({
        "f": p.f.to_string(),
        "image": to_value(&SubmoduleDesc::of(&p.image))?,
        "presentation": to_value(&MatrixDesc::of(&p.presentation))?,
        "phi_presentation": to_value(&MatrixDesc::of(&p.phi_presentation))?,
        "displayed": to_value(&MatrixDesc::of(&p.displayed))?,
        "ops": p.ops.iter().map(op_name).collect::<Vec<_>>(),
        "sharp_generators": to_value(&MatrixDesc::of(&p.sharp_generators))?,
        "sharp_image": to_value(&SubmoduleDesc::of(&p.sharp_image))?,
        "checks": to_value(&p.checks)?,
    });
    Ok(Outcome::new(p.verdict, body))
}
