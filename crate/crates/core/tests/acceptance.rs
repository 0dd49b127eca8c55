//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Every criterion runs through the library and is then re-checked here
//! against values computed independently from closed forms.

use std::f64::consts::PI;
use std::process::ExitCode;

use semipolar::harness::{run_criterion, CRITERIA};
use serde_json::Value;

const SEED: u64 = 42;

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs()
}

/// Independent re-derivation of the quantities each criterion reports.
fn oracle(id: u8, d: &Value) -> Result<(), String> {
    let ensure = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
    match id {
        1 => {
            let rows = d["configurations"].as_array().ok_or("rows")?;
            ensure(rows.len() == 6, "six (n, β) pairs")?;
            for r in rows {
                ensure(r["disagreements"] == 0 && r["samples"] == 10_000, "zero disagreements")?;
                let inside = r["inside"].as_u64().unwrap_or(0);
                // radius drawn uniformly in [0, 2R): about half fall inside
                ensure((4000..6000).contains(&inside), "inside fraction near 1/2")?;
            }
        }
        2 | 10 => {
            let reports = d["reports"].as_array().ok_or("reports")?;
            ensure(reports.len() == if id == 2 { 9 } else { 18 }, "report count")?;
            for r in reports {
                ensure(r["violations"] == 0 && r["accepted"] == 10_000, "no sampled violation")?;
            }
            if id == 10 {
                for r in reports.iter().filter(|r| r["check"] == "ball-in-cylinder") {
                    let c = &r["constants"];
                    ensure(f(&c["C"]) == f(&c["phi2_at_zero"]).max(f(&c["M"])), "C = max(Φ₂(0), M)")?;
                }
            }
        }
        3 => {
            // 4 log(4/3) through the series log((1+u)/(1-u)) = 2 Σ u^{2k+1}/(2k+1), u = 1/7
            let u: f64 = 1.0 / 7.0;
            let series: f64 = (0..30).map(|k| 2.0 * u.powi(2 * k + 1) / (2 * k + 1) as f64).sum::<f64>() * 4.0;
            let v = f(&d["four_log_four_thirds"]);
            ensure((v - series).abs() < 1e-6 && series > 1.0, "4 log(4/3) > 1")?;
            ensure((v - 1.1507).abs() < 5e-5, "print value 1.1507")?;
            for r in d["reports"].as_array().ok_or("reports")? {
                let n = f(&r["params"]["n"]) as u32;
                ensure(r["violations"] == 0 && r["accepted"] == 2u64.pow(n + 1), "all vertices strict")?;
                ensure(f(&r["constants"]["min_relative_margin"]) > 0.0, "strict margin")?;
            }
        }
        4 => {
            for (i, row) in d["table"].as_array().ok_or("table")?.iter().enumerate() {
                let n = (i + 1) as f64;
                let fct = &row["factors"];
                ensure(rel_eq(f(&fct["heat_to_box"]), 2f64.powf(n) * n.powf(n / 2.0), 1e-12), "2ⁿ n^{n/2}")?;
                ensure(rel_eq(f(&fct["box_to_heat"]), 2f64.powf(n / 2.0), 1e-12), "2^{n/2}")?;
                ensure(rel_eq(f(&fct["mp_scale"]), n.powf(n / 2.0), 1e-12), "n^{n/2}")?;
                ensure(rel_eq(f(&fct["lower_composed"]), (2.0 * n).powf(-n), 1e-12), "(2n)^{-n}")?;
                ensure(rel_eq(f(&fct["upper_composed"]), (2.0 / n).powf(n / 2.0), 1e-12), "(2/n)^{n/2}")?;
                ensure(f(&row["worst_relative_deviation"]) <= 1e-12, "transformed sums")?;
                if i == 0 {
                    ensure(f(&fct["lower_composed"]) == 0.5 && f(&fct["upper_composed"]) == 2f64.sqrt(), "n = 1 exact")?;
                }
            }
        }
        5 => {
            for s in d["slices"].as_array().ok_or("slices")? {
                ensure(f(&s["uniform_bound"]) <= 1.0 + 1e-9, "m_{n,P} ≤ 1")?;
                ensure(f(&s["capacity_lower_bound"]) >= 0.9, "capacity ≥ 0.9")?;
                ensure(s["verdict"] == "semipolar-evidence + nonpolar-certified", "verdict")?;
            }
        }
        6 => {
            let sums = d["sums"].as_array().ok_or("sums")?;
            let (d0, s0) = (f(&sums[0][0]), f(&sums[0][1]));
            // grid oracle: ⌈1/ρ²⌉ boxes of side ρ, ρ = δ/2, in the segment's time column
            for s in sums {
                let (delta, sum) = (f(&s[0]), f(&s[1]));
                let rho = delta / 2.0;
                let boxes = (1.0 / (rho * rho)).ceil();
                ensure(sum >= 0.9 * d0 / delta * s0, "growth along halvings")?;
                ensure(rel_eq(sum, boxes * rho, 1e-9), "sum equals box count times ρ")?;
            }
            ensure(d["divergent"] == true, "divergence flag")?;
            ensure(f(&d["capacity_lower_bound"]) >= 0.45, "capacity ≥ 0.45")?;
        }
        7 => {
            for r in d["rows"].as_array().ok_or("rows")? {
                let (dist, g) = (f(&r[0]), f(&r[1]));
                let newton = 1.0 / (4.0 * PI * dist);
                ensure(rel_eq(g, newton, 1e-6), "Newtonian value")?;
                ensure(0.034969 / dist <= g && g <= 0.0795775 / dist, "sandwich")?;
            }
        }
        8 => {
            ensure(f(&d["ck_worst_residual"]["gauss"]) <= 1e-8, "Gauss CK")?;
            ensure(f(&d["ck_worst_residual"]["cauchy"]) <= 1e-6, "Cauchy CK")?;
            for v in d["volume"].as_array().ok_or("volume")? {
                let n = f(&v["n"]);
                // ω_n = π^{n/2} / Γ(n/2 + 1)
                let gamma = [1.0, PI.sqrt() / 2.0, 1.0, 3.0 * PI.sqrt() / 4.0, 2.0, 15.0 * PI.sqrt() / 8.0];
                let omega = PI.powf(n / 2.0) / gamma[n as usize];
                ensure(rel_eq(f(&v["omega"]), omega, 1e-12), "ω_n")?;
                ensure(omega <= (4.0 * PI).powf(n / 2.0) * 0.25f64.exp(), "volume bound")?;
            }
        }
        9 => {
            ensure(d["ball_mass_violations"] == 0 && d["ball_mass_trials"] == 100, "ball mass bound")?;
            ensure(d["cap_violations"] == 0 && d["cap_trials"] == 100, "capacity below measure")?;
        }
        _ => return Err(format!("no oracle for criterion {id}")),
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut failed = 0;
    for &(id, title, _) in CRITERIA {
        match run_criterion(id, SEED) {
            Ok(outcome) => {
                let check = oracle(id, &outcome.detail);
                let ok = outcome.passed && outcome.within_limit() && check.is_ok();
                failed += usize::from(!ok);
                let mut line = outcome.line();
                if outcome.passed && outcome.within_limit() && !ok {
                    line = line.replacen("PASS", "FAIL", 1);
                }
                match check {
                    Err(why) => println!("{line} [oracle: {why}]"),
                    Ok(()) => println!("{line}"),
                }
            }
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {title} (error: {e})");
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
