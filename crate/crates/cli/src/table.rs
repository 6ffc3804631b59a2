use std::fmt::Write;
use std::path::PathBuf;

use clap::Args;
use dwork_core::oracle::brute_projective_counts;
use dwork_core::{CountMethod, Cx, DworkCounter, HgfTerm, TermKind};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Settings;
use crate::count::{evaluate, lambda_elem, Evaluation};
use crate::error::CliError;
use crate::output::{self, num};
use crate::{FieldArgs, Format};

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// First λ index (inclusive, at least 1).
    #[arg(long)]
    pub from: Option<u64>,
    /// Last λ index (inclusive, at most q-1).
    #[arg(long)]
    pub to: Option<u64>,
    /// Use the decomposition for even d as well.
    #[arg(long)]
    pub conjecture: bool,
    /// Compare every count with brute-force enumeration; exit 1 on mismatch.
    #[arg(long)]
    pub check: bool,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Params {
    d: u32,
    p: u64,
    e: u32,
    q: u32,
    method: CountMethod,
    lambda_from: u64,
    lambda_to: u64,
}

#[derive(Serialize)]
struct TermValue {
    lambda: u64,
    column: String,
    kind: TermKind,
    source_class: Option<Vec<u32>>,
    value: Cx,
}

#[derive(Serialize)]
struct Total {
    lambda: u64,
    count: u64,
    delta_active: bool,
}

#[derive(Serialize)]
struct Residual {
    lambda: u64,
    rounding: f64,
    cancellation: Option<f64>,
}

#[derive(Serialize)]
struct TableDoc {
    params: Params,
    terms: Vec<TermValue>,
    totals: Vec<Total>,
    residuals: Vec<Residual>,
}

/// Stable column name for a term: its kind plus its coset class digits.
fn column(t: &HgfTerm) -> String {
    match &t.source_class {
        Some(w) => {
            let digits: String = w
                .iter()
                .map(|x| char::from_digit(*x, 36).unwrap_or('?'))
                .collect();
            format!("{}_{digits}", t.label())
        }
        None => t.label(),
    }
}

pub fn run(args: &TableArgs, settings: &Settings, out: &mut String) -> Result<bool, CliError> {
    let ctx = settings.context(&args.field)?;
    let d = args.field.d;
    let counter = DworkCounter::new(&ctx, d)?.with_tolerances(settings.tolerances);
    let last = ctx.q() as u64 - 1;
    let from = args.from.unwrap_or(1);
    let to = args.to.unwrap_or(last);
    if from == 0 {
        return Err(CliError::Usage(
            "lambda range must start at 1 or above".into(),
        ));
    }
    if to > last {
        return Err(CliError::Usage(format!(
            "lambda range must end at or below {last}"
        )));
    }
    if from > to {
        return Err(CliError::Usage(format!("empty lambda range {from}..={to}")));
    }
    let method = if d % 2 == 1 || args.conjecture {
        CountMethod::Decompose
    } else {
        CountMethod::Koblitz
    };

    let evals: Vec<(u64, bool, Evaluation)> = (from..=to)
        .into_par_iter()
        .map(|i| {
            let lam = lambda_elem(&ctx, i)?;
            let ld = ctx.field().pow(lam, d as i64)?;
            let ev = evaluate(&counter, method, lam, args.conjecture)?;
            Ok((i, ld == ctx.field().one(), ev))
        })
        .collect::<Result<_, CliError>>()?;

    let mut ok = true;
    if args.check {
        let brute = brute_projective_counts(ctx.field(), d);
        for (i, _, ev) in &evals {
            let lam = lambda_elem(&ctx, *i)?;
            if brute[lam.index() as usize] != ev.report.count {
                eprintln!(
                    "dwork: lambda={i}: {} gives {}, enumeration gives {}",
                    method,
                    ev.report.count,
                    brute[lam.index() as usize]
                );
                ok = false;
            }
        }
    }

    let doc = TableDoc {
        params: Params {
            d,
            p: args.field.p,
            e: args.field.e,
            q: ctx.q(),
            method,
            lambda_from: from,
            lambda_to: to,
        },
        terms: evals
            .iter()
            .flat_map(|(i, _, ev)| {
                ev.terms.iter().map(move |t| TermValue {
                    lambda: *i,
                    column: column(t),
                    kind: t.kind,
                    source_class: t.source_class.clone(),
                    value: t.value,
                })
            })
            .collect(),
        totals: evals
            .iter()
            .map(|(i, delta, ev)| Total {
                lambda: *i,
                count: ev.report.count,
                delta_active: *delta,
            })
            .collect(),
        residuals: evals
            .iter()
            .map(|(i, _, ev)| Residual {
                lambda: *i,
                rounding: ev.report.residual,
                cancellation: ev.cancellation.map(|c| c.0),
            })
            .collect(),
    };

    let rendered = match settings.format {
        Format::Json => output::json(&doc)?,
        Format::Csv => {
            let mut header = output::header(&["lambda", "count", "delta_active"]);
            if let Some((_, _, first)) = evals.first() {
                for t in &first.terms {
                    let c = column(t);
                    header.push(format!("{c}_re"));
                    header.push(format!("{c}_im"));
                }
            }
            let rows = evals.iter().map(|(i, delta, ev)| {
                let mut r = vec![
                    i.to_string(),
                    ev.report.count.to_string(),
                    delta.to_string(),
                ];
                for t in &ev.terms {
                    r.push(num(t.value.re));
                    r.push(num(t.value.im));
                }
                r
            });
            output::csv(&header, rows)?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "d={d} q={} method={method}", ctx.q());
            let _ = writeln!(
                s,
                "{:>8} {:>16} {:>6} {:>14}",
                "lambda", "count", "delta", "residual"
            );
            for (i, delta, ev) in &evals {
                let _ = writeln!(
                    s,
                    "{:>8} {:>16} {:>6} {:>14}",
                    i,
                    ev.report.count,
                    if *delta { "yes" } else { "no" },
                    num(ev.report.residual)
                );
            }
            s
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => out.push_str(&rendered),
    }
    Ok(ok)
}
