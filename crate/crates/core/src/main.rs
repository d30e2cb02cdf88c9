use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mapspace::chains::chain_complex;
use mapspace::exactlin::PrimeField;
use mapspace::models::{
    check_chain_map, check_composition_square, check_epsilon_commutes, check_inverse,
    check_lambda_naturality, check_triangle, diagonal_homology, lambda_map, mu_map, rank_census,
    xi_matrix, BicomplexSegment, DModel, DiagSegment, GModel, ModelError, DEFAULT_MODULE_LIMIT,
};
use mapspace::simplicial::{
    DiscreteMaps, Group, MapSpace, Nerve, NerveHom, Presentation, SimplicialMap, SmashPower, Space,
    DEFAULT_BUDGET,
};
use mapspace::surj::Order;

const SCHEMA: &str = "mapspace.v1";

#[derive(Parser, Debug)]
#[command(
    name = "mapspace",
    version,
    about = "Exact chain models of pointed mapping spaces over F_ell"
)]
struct Cli {
    /// The prime ell.
    #[arg(long, default_value_t = 2, global = true)]
    prime: u32,
    /// Truncation in the cosimplicial direction.
    #[arg(long, default_value_t = 3, global = true)]
    pmax: usize,
    /// Truncation in the simplicial direction.
    #[arg(long, default_value_t = 3, global = true)]
    qmax: usize,
    /// Largest smash power checked by the triangle and naturality suites.
    #[arg(long, default_value_t = 3, global = true)]
    smax: usize,
    /// Degree window `a..b`.
    #[arg(long, global = true)]
    degrees: Option<String>,
    /// Search-node budget for map-space enumeration.
    #[arg(long, env = "MAPSPACE_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    /// Largest bidegree module built.
    #[arg(long, default_value_t = DEFAULT_MODULE_LIMIT, global = true)]
    module_limit: usize,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Source space: `point`, `s0`, `sphere:N`, `circle3`, `delta:P`, `nerve:N` or `@file`.
    #[arg(long, default_value = "sphere:1", global = true)]
    space: String,
    /// Target space, same syntax as `--space`.
    #[arg(long, default_value = "nerve:2", global = true)]
    target: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced homology ranks of `--space` (or a smash power of it).
    Homology {
        /// Use the `k`-fold smash power.
        #[arg(long, default_value_t = 1)]
        smash: usize,
    },
    /// Bidegree ranks and diagonal homology of both models for `--space`, `--target`.
    Models,
    /// Run every identity suite on `--space`, `--target`.
    Verify,
}

enum SpaceArg {
    Pres(Presentation),
    Nerve(Nerve),
}

fn parse_space(spec: &str) -> Result<SpaceArg, String> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        return Presentation::from_file(&text)
            .map(SpaceArg::Pres)
            .map_err(|e| format!("{path}: {e}"));
    }
    let (name, arg) = spec
        .split_once(':')
        .map_or((spec, None), |(n, a)| (n, Some(a)));
    let num = || -> Result<usize, String> {
        arg.ok_or(format!("`{name}` needs a parameter"))?
            .parse()
            .map_err(|e| format!("`{spec}`: {e}"))
    };
    Ok(match name {
        "point" => SpaceArg::Pres(Presentation::point()),
        "s0" => SpaceArg::Pres(Presentation::s0()),
        "circle3" => SpaceArg::Pres(Presentation::circle3()),
        "sphere" => SpaceArg::Pres(Presentation::sphere_min(num()?.max(1))),
        "delta" => SpaceArg::Pres(Presentation::delta_plus(num()?)),
        "nerve" => {
            let n = num()?;
            if n == 0 {
                return Err("nerve:0 is not a group".into());
            }
            SpaceArg::Nerve(Nerve::new(Group::cyclic(n)))
        }
        _ => return Err(format!("unknown space `{spec}`")),
    })
}

fn parse_degrees(spec: Option<&str>, default: (i64, i64)) -> Result<(i64, i64), String> {
    let Some(s) = spec else { return Ok(default) };
    let (a, b) = s
        .split_once("..")
        .ok_or(format!("degree window `{s}` is not `a..b`"))?;
    let lo: i64 = a.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
    let hi: i64 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|e| format!("`{s}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty degree window `{s}`"));
    }
    Ok((lo, hi))
}

struct Out {
    format: Format,
    failed: bool,
}

impl Out {
    fn record(&self, kind: &str, mut body: Value) {
        if self.format == Format::Records {
            body["schema"] = json!(SCHEMA);
            body["kind"] = json!(kind);
            println!("{body}");
        }
    }

    fn line(&self, text: impl AsRef<str>) {
        if self.format == Format::Table {
            println!("{}", text.as_ref());
        }
    }

    fn error(&mut self, component: &str, err: impl std::fmt::Display) {
        self.failed = true;
        self.record(
            "error",
            json!({ "component": component, "message": err.to_string() }),
        );
        self.line(format!("{component}: error: {err}"));
        if self.format == Format::Records {
            eprintln!("{component}: {err}");
        }
    }

    fn verdict(&mut self, suite: &str, pass: bool, detail: Value) {
        self.failed |= !pass;
        self.record(
            "verdict",
            json!({ "suite": suite, "pass": pass, "detail": detail }),
        );
        self.line(format!(
            "{:<28} {}",
            suite,
            if pass { "pass" } else { "FAIL" }
        ));
        if !pass && self.format == Format::Table && detail != Value::Null {
            println!("    {detail}");
        }
    }
}

fn cmd_homology<X: Space>(
    x: &X,
    field: &PrimeField,
    smash: usize,
    lo: i64,
    hi: i64,
    out: &mut Out,
) {
    if lo < 0 {
        out.error("homology", "reduced homology starts in degree 0");
        return;
    }
    let ranks: Vec<usize> = if smash <= 1 {
        let c = chain_complex(x, field, hi as usize);
        (lo..=hi)
            .map(|n| c.homology_rank(n).expect("inside window"))
            .collect()
    } else {
        let sp = SmashPower::new(x, smash);
        let c = chain_complex(&sp, field, hi as usize);
        (lo..=hi)
            .map(|n| c.homology_rank(n).expect("inside window"))
            .collect()
    };
    for (n, r) in (lo..).zip(&ranks) {
        out.record(
            "homology",
            json!({ "degree": n, "rank": r, "smash": smash }),
        );
    }
    out.line(format!(
        "degree {}",
        (lo..=hi).map(|n| format!("{n:>4}")).collect::<String>()
    ));
    out.line(format!(
        "rank   {}",
        ranks.iter().map(|r| format!("{r:>4}")).collect::<String>()
    ));
}

struct Job {
    field: PrimeField,
    pmax: usize,
    qmax: usize,
    smax: usize,
    lo: i64,
    hi: i64,
    budget: u64,
    limit: usize,
}

fn cmd_models<Y: Space>(x: &Presentation, y: &Y, job: &Job, out: &mut Out) {
    let (f, pm, qm) = (job.field, job.pmax, job.qmax);
    let d = DModel::new(x, y, f, pm, qm, job.limit);
    let g = GModel::new(x, y, f, pm, qm, job.limit);
    match rank_census(&d, &g, pm, qm) {
        Ok(rows) => {
            out.line("  p   q      rank D      rank G  |Y_q|^|X_p^x|-1");
            for r in &rows {
                out.record("bidegree", json!(r));
                out.line(format!(
                    "{:>3} {:>3} {:>11} {:>11} {:>16}",
                    r.p, r.q, r.d_rank, r.g_rank, r.formula
                ));
            }
            if !rows.iter().all(|r| r.ok()) {
                out.error("census", "bidegree ranks disagree with |Y_q|^|X_p^x| - 1");
            }
        }
        Err(e) => out.error("census", e),
    }
    for model in ["D", "G"] {
        let mut per_truncation = Vec::new();
        for (p, q) in [(pm, qm), (pm + 1, qm + 1)] {
            let result = if model == "D" {
                diagonal_homology(&DModel::new(x, y, f, p, q, job.limit), job.lo, job.hi)
            } else {
                diagonal_homology(&GModel::new(x, y, f, p, q, job.limit), job.lo, job.hi)
            };
            match result {
                Ok(ranks) => {
                    for &(n, r) in &ranks {
                        out.record(
                            "diagonal_homology",
                            json!({ "model": model, "pmax": p, "qmax": q, "degree": n, "rank": r }),
                        );
                    }
                    out.line(format!(
                        "H({model}) truncated at ({p},{q}): {}",
                        ranks
                            .iter()
                            .map(|(n, r)| format!("H_{n}={r}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    ));
                    per_truncation.push(ranks);
                }
                Err(e) => out.error(&format!("{model} homology at ({p},{q})"), e),
            }
        }
        let ok = per_truncation.len() == 2 && per_truncation[0] == per_truncation[1];
        out.failed |= !ok;
        out.record("stabilization", json!({ "model": model, "stable": ok }));
        out.line(format!(
            "{model} stable between truncations: {}",
            if ok { "yes" } else { "no" }
        ));
    }
    if job.hi >= 0 {
        let top = job.hi as usize;
        match MapSpace::new(x, y, top + 1, job.budget) {
            Ok(ms) => {
                let c = chain_complex(&ms, &f, top);
                let lo = job.lo.max(0);
                let ranks: Vec<(i64, usize)> = (lo..=job.hi)
                    .map(|n| (n, c.homology_rank(n).expect("inside")))
                    .collect();
                for &(n, r) in &ranks {
                    out.record("mapspace_homology", json!({ "degree": n, "rank": r }));
                }
                out.line(format!(
                    "H(Y^X) by enumeration: {}",
                    ranks
                        .iter()
                        .map(|(n, r)| format!("H_{n}={r}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
            Err(e) => out.error("map-space enumeration", e),
        }
    }
}

fn cmd_verify<Y: Space>(
    x: &Presentation,
    y: &Y,
    job: &Job,
    out: &mut Out,
    composition: impl FnOnce(&MapSpace<'_, Y>, &PrimeField, usize) -> Result<Value, ModelError>,
) {
    let (f, pm, qm) = (job.field, job.pmax, job.qmax);
    let d = DModel::new(x, y, f, pm, qm, job.limit);
    let g = GModel::new(x, y, f, pm, qm, job.limit);
    let run = |out: &mut Out, suite: &str, r: Result<(bool, Value), ModelError>| match r {
        Ok((pass, detail)) => out.verdict(suite, pass, detail),
        Err(e) => out.error(suite, e),
    };
    run(
        out,
        "rank census",
        rank_census(&d, &g, pm, qm).map(|rows| {
            let bad: Vec<_> = rows.iter().filter(|r| !r.ok()).collect();
            (
                bad.is_empty(),
                if bad.is_empty() {
                    Value::Null
                } else {
                    json!(bad)
                },
            )
        }),
    );
    run(
        out,
        "epsilon/xi inverse",
        (|| {
            let mut bad = Vec::new();
            for p in 0..=pm {
                for q in 0..=qm {
                    let c = check_inverse(&d, &g, p, q, Order::Canonical)?;
                    if !(c.xi_epsilon_identity && c.epsilon_xi_identity) {
                        bad.push(c);
                    }
                }
            }
            Ok((
                bad.is_empty(),
                if bad.is_empty() {
                    Value::Null
                } else {
                    json!(bad)
                },
            ))
        })(),
    );
    run(
        out,
        "xi order independence",
        (|| {
            let mut bad = Vec::new();
            for p in 0..=pm {
                for q in 0..=qm {
                    if xi_matrix(&d, &g, p, q, Order::Canonical)?
                        != xi_matrix(&d, &g, p, q, Order::Reversed)?
                    {
                        bad.push(json!({ "p": p, "q": q }));
                    }
                }
            }
            Ok((
                bad.is_empty(),
                if bad.is_empty() {
                    Value::Null
                } else {
                    json!(bad)
                },
            ))
        })(),
    );
    let segs = BicomplexSegment::build(&d).and_then(|ds| Ok((ds, BicomplexSegment::build(&g)?)));
    let (ds, gs) = match segs {
        Ok(s) => s,
        Err(e) => {
            out.error("bicomplex construction", e);
            return;
        }
    };
    for (name, seg) in [("D", &ds), ("G", &gs)] {
        let bad = seg.check_identities();
        out.verdict(
            &format!("{name} bicomplex identities"),
            bad.is_empty(),
            if bad.is_empty() {
                Value::Null
            } else {
                json!(bad)
            },
        );
        let sq = DiagSegment::new(seg).complex().first_square_failure();
        out.verdict(
            &format!("{name} diagonal d^2 = 0"),
            sq.is_none(),
            sq.map_or(Value::Null, |n| json!({ "degree": n })),
        );
    }
    run(
        out,
        "epsilon bicomplex map",
        check_epsilon_commutes(&d, &g, &ds, &gs).map(|bad| {
            (
                bad.is_empty(),
                if bad.is_empty() {
                    Value::Null
                } else {
                    json!(bad)
                },
            )
        }),
    );
    let ms = match MapSpace::new(x, y, 2, job.budget) {
        Ok(ms) => ms,
        Err(e) => {
            out.error("map-space enumeration", e);
            return;
        }
    };
    let mut tri = Vec::new();
    for n in 0..=1 {
        tri.extend(check_triangle(&ms, &d, n, pm, qm, job.smax));
    }
    out.verdict(
        "triangle eps mu = lambda",
        tri.is_empty(),
        if tri.is_empty() {
            Value::Null
        } else {
            json!(tri)
        },
    );
    let mut nat = Vec::new();
    for n in 0..=1 {
        nat.extend(check_lambda_naturality(&ms, &f, n, pm.min(2), job.smax));
    }
    out.verdict(
        "lambda naturality",
        nat.is_empty(),
        if nat.is_empty() {
            Value::Null
        } else {
            json!(nat)
        },
    );
    let src = chain_complex(&ms, &f, 1);
    let gd = DiagSegment::new(&gs);
    let dd = DiagSegment::new(&ds);
    run(
        out,
        "lambda chain map",
        lambda_map(&ms, &g, &gd, -1, 1)
            .and_then(|m| check_chain_map(&src, &gd, &m, 0, 1, qm))
            .map(|bad| {
                (
                    bad.is_empty(),
                    if bad.is_empty() {
                        Value::Null
                    } else {
                        json!(bad)
                    },
                )
            }),
    );
    run(
        out,
        "mu chain map",
        mu_map(&ms, &d, &dd, -1, 1)
            .and_then(|m| check_chain_map(&src, &dd, &m, 0, 1, qm))
            .map(|bad| {
                (
                    bad.is_empty(),
                    if bad.is_empty() {
                        Value::Null
                    } else {
                        json!(bad)
                    },
                )
            }),
    );
    run(
        out,
        "composition square",
        composition(&ms, &f, pm).map(|v| (v == Value::Null, v)),
    );
}

fn composition_detail(failures: Vec<mapspace::models::CompositionFailure>) -> Value {
    if failures.is_empty() {
        Value::Null
    } else {
        json!(failures)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        format: cli.format,
        failed: false,
    };
    let field = match PrimeField::new(cli.prime) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let parsed = (|| {
        let x = parse_space(&cli.space)?;
        let default = if matches!(cli.command, Command::Homology { .. }) {
            (0, 3)
        } else {
            (0, 1)
        };
        let (lo, hi) = parse_degrees(cli.degrees.as_deref(), default)?;
        Ok::<_, String>((x, lo, hi))
    })();
    let (x, lo, hi) = match parsed {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    if cli.budget == 0 {
        eprintln!("--budget must be positive");
        return ExitCode::from(2);
    }
    let job = Job {
        field,
        pmax: cli.pmax,
        qmax: cli.qmax,
        smax: cli.smax,
        lo,
        hi,
        budget: cli.budget,
        limit: cli.module_limit,
    };
    match &cli.command {
        Command::Homology { smash } => match &x {
            SpaceArg::Pres(p) => cmd_homology(p, &field, *smash, lo, hi, &mut out),
            SpaceArg::Nerve(n) => cmd_homology(n, &field, *smash, lo, hi, &mut out),
        },
        Command::Models | Command::Verify => {
            let SpaceArg::Pres(xp) = &x else {
                eprintln!("--space must be a finite presentation for map-space models");
                return ExitCode::from(2);
            };
            let y = match parse_space(&cli.target) {
                Ok(y) => y,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let verify = matches!(cli.command, Command::Verify);
            match &y {
                SpaceArg::Pres(yp) if verify => cmd_verify(xp, yp, &job, &mut out, |yx, f, pm| {
                    let zy = MapSpace::new(yp, yp, 0, job.budget)?;
                    let failures = check_composition_square(&zy, yx, yx, f, pm, |a, b| {
                        let inner = yx.as_pointed_map(b);
                        let outer = zy.as_pointed_map(a);
                        let images: Vec<_> =
                            inner.images().iter().map(|w| outer.apply(w)).collect();
                        yx.find_degree0(&images)
                    })?;
                    Ok(composition_detail(failures))
                }),
                SpaceArg::Nerve(yn) if verify => cmd_verify(xp, yn, &job, &mut out, |yx, f, pm| {
                    let group = yn.group();
                    let zy = DiscreteMaps::new(yn, yn, NerveHom::all(group, group));
                    let failures = check_composition_square(&zy, yx, yx, f, pm, |a, b| {
                        let inner = yx.as_pointed_map(b);
                        let hom = &zy.maps()[a.0];
                        let images: Vec<_> = inner
                            .images()
                            .iter()
                            .map(|w| SimplicialMap::apply(hom, w))
                            .collect();
                        yx.find_degree0(&images)
                    })?;
                    Ok(composition_detail(failures))
                }),
                SpaceArg::Pres(yp) => cmd_models(xp, yp, &job, &mut out),
                SpaceArg::Nerve(yn) => cmd_models(xp, yn, &job, &mut out),
            }
        }
    }
    if out.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
