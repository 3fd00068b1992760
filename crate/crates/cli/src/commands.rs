use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use serde_json::json;
use sgbc::controllers::StaticKernel;
use sgbc::gain::{self, achievable, Achievable, LForm, Optimizer};
use sgbc::scenario::Scenario;
use sgbc::sim::{self, PlantParams};
use sgbc::{Error, Exec};

use crate::args::{Figure, KernelArg};
use crate::bundled;
use crate::error::CliError;
use crate::output::{display, with_output, write_sweep, write_trace};

pub fn load_scenario(arg: &str) -> Result<Scenario, CliError> {
    let text = match arg.strip_prefix("builtin:") {
        Some(name) => bundled::get(name)
            .ok_or_else(|| {
                let names: Vec<_> = bundled::SCENARIOS.iter().map(|(n, _)| *n).collect();
                CliError::Usage(format!(
                    "no bundled scenario `{name}` (available: {})",
                    names.join(", ")
                ))
            })?
            .to_string(),
        None => fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.into(),
            source,
        })?,
    };
    Ok(Scenario::from_json(&text)?)
}

fn print_json(value: &serde_json::Value) -> Result<(), CliError> {
    with_output(None, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)
    })
}

pub fn simulate(name: &str, scenario: &Scenario, output: Option<&Path>, digits: usize) -> Result<(), CliError> {
    let cfg = scenario.build()?;
    let comments = vec![
        format!("sgbc simulate {name}"),
        format!(
            "N={} dt={} T={} record_stride={}",
            cfg.n_modes, cfg.dt, cfg.horizon, cfg.record_stride
        ),
    ];
    match sim::simulate(&cfg) {
        Ok(tr) => {
            with_output(output, |w| write_trace(w, &comments, &tr))?;
            if let (Some(first), Some(last)) = (tr.initial_norm(), tr.final_norm()) {
                eprintln!(
                    "norm_u: initial {} final {} ratio {}",
                    display(first, digits),
                    display(last, digits),
                    display(last / first, digits)
                );
            }
            Ok(())
        }
        Err(Error::BlowUp(b)) => {
            with_output(output, |w| {
                write_trace(w, &comments, &b.trace)?;
                writeln!(w, "# blowup t={}", b.time)
            })?;
            Err(CliError::BlowUp { time: b.time })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn gain_lower(mu: f64, m_max: usize, digits: usize) -> Result<(), CliError> {
    let gl = gain::gamma_lower(mu, m_max)?;
    let table: Vec<_> = gl
        .g
        .iter()
        .enumerate()
        .map(|(i, g)| json!({ "m": i + 1, "g_m": g, "sqrt_g_m": g.sqrt() }))
        .collect();
    print_json(&json!({
        "mu": mu,
        "m_max": m_max,
        "table": table,
        "gamma_lower": gl.value,
        "last_increment": gl.last_increment,
    }))?;
    eprintln!(
        "gamma_lower(mu={mu}, m_max={m_max}) = {}",
        display(gl.value, digits)
    );
    Ok(())
}

fn parse_sweep(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("sweep `{spec}` must be START:STOP:STEP with STEP > 0"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}

pub struct AchievableArgs<'a> {
    pub r: f64,
    pub mu: f64,
    pub use_ub: bool,
    pub series: usize,
    pub grid: usize,
    pub sweep: Option<&'a str>,
    pub output: Option<&'a Path>,
}

fn sweep(rs: &[f64], mu: f64, form: LForm, opt: &Optimizer) -> Result<Vec<Achievable>, CliError> {
    let rows = match form {
        LForm::Tilde => gain::ub_sweep(rs, opt)?,
        LForm::Series(_) => {
            let inner = Optimizer {
                exec: Exec::Sequential,
                ..*opt
            };
            opt.exec
                .map_slice(rs, |&r| achievable::optimize(r, mu, form, &inner))
                .into_iter()
                .collect::<sgbc::Result<_>>()?
        }
    };
    Ok(rows)
}

fn report_minimum(rows: &[Achievable], label: &str, digits: usize) {
    let best = rows.iter().fold(None::<&Achievable>, |acc, a| match acc {
        Some(b) if b.value <= a.value => Some(b),
        _ => Some(a),
    });
    if let Some(b) = best {
        eprintln!(
            "min {label} = {} at r = {}",
            display(b.value, digits),
            b.r
        );
    }
}

pub fn gain_achievable(a: AchievableArgs<'_>, digits: usize) -> Result<(), CliError> {
    let form = if a.use_ub {
        LForm::Tilde
    } else {
        LForm::Series(a.series)
    };
    let mu = if a.use_ub { 0.0 } else { a.mu };
    let label = if a.use_ub { "ub" } else { "b" };
    let opt = Optimizer {
        grid: a.grid,
        ..Optimizer::default()
    };
    if let Some(spec) = a.sweep {
        let rs = parse_sweep(spec)?;
        let rows = sweep(&rs, mu, form, &opt)?;
        let comments = vec![format!("sgbc gain-achievable sweep {label} mu={mu}")];
        with_output(a.output, |w| write_sweep(w, &comments, &rows, label))?;
        report_minimum(&rows, label, digits);
        return Ok(());
    }
    let res = achievable::optimize(a.r, mu, form, &opt)?;
    let value = json!({
        "r": res.r,
        "mu": res.mu,
        label: res.value,
        "omega_star": res.omega_star,
        "lambda_star": res.lambda_star,
    });
    with_output(a.output, |w| {
        serde_json::to_writer_pretty(&mut *w, &value)?;
        writeln!(w)
    })?;
    eprintln!("{label}(r={}) = {}", res.r, display(res.value, digits));
    Ok(())
}

pub fn design_check(name: &str, scenario: &Scenario, digits: usize) -> Result<(), CliError> {
    let cfg = scenario.build()?;
    let report = gain::design_check(&cfg.plant, &cfg.nonlocal, &cfg.control)?;
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["scenario"] = json!(name);
    print_json(&value)?;
    for c in &report.conditions {
        if let Some(lhs) = c.lhs {
            eprintln!(
                "{:<32} {:<5} lhs = {}",
                c.name,
                if c.pass == Some(true) { "pass" } else { "fail" },
                display(lhs, digits)
            );
        } else {
            eprintln!("{:<32} n/a", c.name);
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(CliError::DesignFailed(format!("{} does not hold", report.deciding)))
    }
}

pub fn steady_gain(kernel: KernelArg, r: f64, p: f64, q: f64, m: usize, digits: usize) -> Result<(), CliError> {
    let plant = PlantParams::new(p, q)?;
    let k = match kernel {
        KernelArg::Zero => StaticKernel::zero(1),
        KernelArg::SingleMode => StaticKernel::single_mode(r)?,
    };
    let g = gain::static_gain_exact(&k, &plant, m)?;
    let lambda1 = p * PI * PI + q;
    let lower = match plant.mu() {
        Some(mu) => Some(gain::gamma_lower(mu, m)?.value),
        None => None,
    };
    print_json(&json!({
        "kernel": k.kind(),
        "p": p,
        "q": q,
        "m": m,
        "gain": g.gain,
        "gain_times_lambda1": g.gain * lambda1,
        "denominator": g.denominator,
        "gamma_lower": lower,
    }))?;
    eprintln!(
        "gain = {} (x(p pi^2 + q) = {})",
        display(g.gain, digits),
        display(g.gain * lambda1, digits)
    );
    Ok(())
}

pub fn reproduce(target: Figure, output: Option<&Path>, digits: usize) -> Result<(), CliError> {
    let name = match target {
        Figure::Fig1 => "fig1",
        Figure::Fig3 => "fig3",
        Figure::Fig4 => "fig4",
        Figure::Fig2 => {
            let rs = parse_sweep("0:3:0.01")?;
            let rows = gain::ub_sweep(&rs, &Optimizer::default())?;
            let comments = vec!["sgbc reproduce fig2".to_string()];
            with_output(output, |w| write_sweep(w, &comments, &rows, "ub"))?;
            report_minimum(&rows, "ub", digits);
            return Ok(());
        }
    };
    let arg = format!("builtin:{name}");
    simulate(&arg, &load_scenario(&arg)?, output, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_spec() {
        let rs = parse_sweep("0:3:0.01").unwrap();
        assert_eq!(rs.len(), 301);
        assert!((rs[300] - 3.0).abs() < 1e-12);
        assert!(parse_sweep("0:1").is_err());
        assert!(parse_sweep("0:1:0").is_err());
        assert!(parse_sweep("1:0:0.1").is_err());
    }
}
