mod args;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use semipolar::capacity::{capacity_lower_bound, default_grid, DiscreteMeasure};
use semipolar::harness::{classify, measure_family, run_suite, Suite};
use semipolar::ClassifyConfig;
use semipolar::hausdorff::{dyadic_schedule, estimate_measure};
use semipolar::kernels::KernelSpec;
use semipolar::shapes::{heat_ball_extents, ShapeFamily};

use args::{Cli, Command, Format, Options};

/// Exit status 2: bad invocation or I/O; 1: a check was violated.
enum Failure {
    Usage(String),
    Violation(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(o: &Options, body: &str) -> Outcome {
    match &o.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(o: &Options, v: &Value) -> Outcome {
    if o.format == Some(Format::Csv) {
        return Err(Failure::Usage("csv output is available for eval and cover only".into()));
    }
    emit(o, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn schedule(o: &Options) -> Result<Vec<f64>, Failure> {
    let d = o.delta_min.unwrap_or(2f64.powi(-12));
    if !(d > 0.0 && d <= 0.5) {
        return Err(Failure::Usage(format!("--delta-min must lie in (0, 1/2], got {d}")));
    }
    Ok(dyadic_schedule((1.0 / d).log2().ceil() as u32))
}

fn classify_config(o: &Options) -> Result<ClassifyConfig, Failure> {
    let d = ClassifyConfig::default();
    Ok(ClassifyConfig {
        schedule: schedule(o)?,
        probes: o.samples.unwrap_or(d.probes),
        seed: o.seed.unwrap_or(d.seed),
        subdivisions: o.subdivisions.unwrap_or(d.subdivisions),
        grid_points: o.grid.unwrap_or(d.grid_points),
        margin: o.margin,
    })
}

fn run(command: Command, o: Options) -> Outcome {
    match command {
        Command::Eval { x, y } => {
            let k = parse::kernel(&o)?;
            let (x, y) = (parse::point(&x)?, parse::point(&y)?);
            let value = k.eval(&x, &y)?;
            if o.format == Some(Format::Csv) {
                return emit(&o, &format!("kernel,value\n\"{}\",{value}\n", k.label()));
            }
            emit_json(&o, &json!({"kernel": k.label(), "x": x, "y": y, "value": value}))
        }
        Command::Ball { x, rho, y } => {
            let k = parse::kernel(&o)?;
            let x = parse::point(&x)?;
            let fam = ShapeFamily::gball(k.clone())?;
            let contains = match y {
                Some(y) => Some(fam.contains(&x, rho, &parse::point(&y)?)?),
                None => None,
            };
            let bbox: Vec<[f64; 2]> = fam
                .bounding_box(rho)?
                .iter()
                .zip(x.coords())
                .map(|((lo, hi), c)| [c + lo, c + hi])
                .collect();
            let mut v = json!({"kernel": k.label(), "center": x, "rho": rho, "contains": contains, "bounding_box": bbox});
            if let KernelSpec::GaussWeierstrass { n } = k {
                v["heat_ball_extents"] = serde_json::to_value(heat_ball_extents(rho, n))?;
            }
            emit_json(&o, &v)
        }
        Command::Cover => {
            let k = parse::kernel(&o)?;
            let set = parse::set(&o, &k)?;
            let (family, eta, _) = measure_family(&k)?;
            let est = estimate_measure(&set, &family, eta, &schedule(&o)?, o.samples.unwrap_or(256), o.seed.unwrap_or(0))?;
            match o.format {
                Some(Format::Csv) => emit(&o, &est.to_csv()),
                _ => emit(&o, &(serde_json::to_string_pretty(&est)? + "\n")),
            }
        }
        Command::Capacity => {
            let k = parse::kernel(&o)?;
            let set = parse::set(&o, &k)?;
            let cfg = classify_config(&o)?;
            let nu = DiscreteMeasure::uniform_on(&set, cfg.subdivisions)?;
            let grid = default_grid(&k, &set, cfg.grid_points, cfg.seed)?;
            let cert = capacity_lower_bound(&k, &set, &nu, &grid, cfg.margin)?;
            emit_json(&o, &serde_json::to_value(&cert)?)
        }
        Command::Classify => {
            let k = parse::kernel(&o)?;
            let set = parse::set(&o, &k)?;
            let v = classify(&set, &k, &classify_config(&o)?)?;
            let mut body = serde_json::to_value(&v)?;
            body["summary"] = Value::String(v.summary());
            emit_json(&o, &body)?;
            if !v.consistent {
                return Err(Failure::Violation(format!("inconsistent evidence: {}", v.summary())));
            }
            Ok(())
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, o.seed.unwrap_or(42))?;
            for c in &report.criteria {
                eprintln!("{}", c.line());
            }
            emit_json(&o, &serde_json::to_value(&report)?)?;
            if !report.passed() {
                return Err(Failure::Violation(format!("{} criteria violated", report.violations)));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = match &cli.config {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            match toml::from_str::<Options>(&text) {
                Ok(cfg) => cli.opts.overridden_by(cfg),
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
        }
        None => cli.opts,
    };
    match run(cli.command, opts) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
