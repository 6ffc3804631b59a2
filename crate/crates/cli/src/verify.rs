use std::fmt::Write;

use clap::Args;
use dwork_core::{run_suite, Suite};

use crate::config::Settings;
use crate::error::CliError;
use crate::output::{self, num};
use crate::Format;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// hasse-davenport, prop31, thm32, greene-defs, koike, igusa or cancellation.
    #[arg(long, value_parser = crate::parse_suite)]
    pub suite: Suite,
    /// Largest prime for the Legendre-family suites.
    #[arg(long)]
    pub pmax: Option<u64>,
    /// Largest field order for the Hasse-Davenport suite.
    #[arg(long)]
    pub qmax: Option<u64>,
    /// Degree, for thm32 and cancellation.
    #[arg(long)]
    pub d: Option<u32>,
    /// Field order to test instead of the default grid.
    #[arg(long)]
    pub p: Option<u64>,
    /// Number of random instances for thm32.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn unused(flag: &str, suite: Suite) -> CliError {
    CliError::Usage(format!("--{flag} is not used by suite {suite}"))
}

pub fn run(args: &VerifyArgs, settings: &Settings, out: &mut String) -> Result<bool, CliError> {
    let mut cfg = settings.suite.clone();
    let s = args.suite;
    if let Some(v) = args.pmax {
        cfg.pmax = v;
    }
    if let Some(v) = args.qmax {
        cfg.qmax = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(n) = args.n {
        if s != Suite::Thm32 {
            return Err(unused("n", s));
        }
        cfg.thm32_instances = n;
    }
    match (s, args.d, args.p) {
        (Suite::Thm32 | Suite::Cancellation, Some(d), Some(p)) => {
            if s == Suite::Thm32 {
                cfg.thm32_grid = vec![(d, p)];
            } else {
                cfg.cancellation_grid = vec![(d, p)];
            }
        }
        (Suite::Thm32 | Suite::Cancellation, None, None) => {}
        (Suite::Thm32 | Suite::Cancellation, _, _) => {
            return Err(CliError::Usage(format!(
                "suite {s} needs --d and --p together"
            )));
        }
        (Suite::Prop31 | Suite::GreeneDefs, None, Some(p)) => {
            if s == Suite::Prop31 {
                cfg.prop31_q = vec![p];
            } else {
                cfg.greene_q = vec![p];
            }
        }
        (_, Some(_), _) => return Err(unused("d", s)),
        (Suite::HasseDavenport | Suite::Koike | Suite::Igusa, None, Some(_)) => {
            return Err(unused("p", s))
        }
        _ => {}
    }

    let report = run_suite(s, &cfg)?;
    match settings.format {
        Format::Json => out.push_str(&output::json(&report)?),
        Format::Csv => {
            let header = output::header(&["suite", "instance", "residual", "bound", "passed"]);
            let rows = report.instances.iter().map(|i| {
                vec![
                    s.to_string(),
                    i.label.clone(),
                    num(i.residual),
                    num(i.bound),
                    i.passed.to_string(),
                ]
            });
            out.push_str(&output::csv(&header, rows)?);
        }
        Format::Text => {
            for i in &report.instances {
                let status = if i.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{status}  {}  residual {}  bound {}",
                    i.label,
                    num(i.residual),
                    num(i.bound)
                );
            }
            let _ = writeln!(
                out,
                "{s}: {} instances, {} failed, max residual {}: {}",
                report.instances.len(),
                report.failures().count(),
                num(report.max_residual),
                if report.passed { "PASS" } else { "FAIL" }
            );
        }
    }
    Ok(report.passed)
}
