use clap::{Args, ValueEnum};
use dwork_core::oracle::brute_projective_count;
use dwork_core::{
    CountMethod, CountReport, Cx, DecomposeOptions, DworkCounter, FieldContext, FqElem, HgfTerm,
};
use serde::Serialize;

use crate::config::Settings;
use crate::error::CliError;
use crate::output::{self, num};
use crate::{FieldArgs, Format};

/// Above this many projective points `--method all` leaves out the brute-force count.
const BRUTE_LIMIT: f64 = 5e7;

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// λ as a canonical element index in [0, q-1].
    #[arg(long)]
    pub lambda: u64,
    #[arg(long, value_enum, default_value = "koblitz")]
    pub method: MethodArg,
    /// Allow the decomposition for even d, where cancellation is conjectural.
    #[arg(long)]
    pub conjecture: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Koblitz,
    Theorem11,
    Threefold,
    Decompose,
    All,
}

pub struct Evaluation {
    pub report: CountReport,
    pub terms: Vec<HgfTerm>,
    pub cancellation: Option<(f64, f64)>,
    pub literal_agrees: Option<bool>,
}

pub fn lambda_elem(ctx: &FieldContext, index: u64) -> Result<FqElem, CliError> {
    ctx.field()
        .elem(index)
        .map_err(|_| CliError::Usage(format!("lambda must lie in [0, {}]", ctx.q() - 1)))
}

pub fn evaluate(
    counter: &DworkCounter,
    method: CountMethod,
    lam: FqElem,
    conjecture: bool,
) -> Result<Evaluation, CliError> {
    let ctx = counter.ctx();
    let plain = |report| Evaluation {
        report,
        terms: Vec::new(),
        cancellation: None,
        literal_agrees: None,
    };
    Ok(match method {
        CountMethod::Brute => {
            let n = brute_projective_count(ctx.field(), counter.d(), lam);
            plain(CountReport::exact(n, counter.d(), ctx.q(), lam.index()))
        }
        CountMethod::Koblitz => plain(counter.koblitz(lam)?),
        CountMethod::Theorem11 => {
            let r = counter.theorem11(lam)?;
            Evaluation {
                literal_agrees: Some(r.literal_agrees),
                ..plain(r.report)
            }
        }
        CountMethod::Threefold => {
            let (report, terms) = counter.threefold(lam)?;
            Evaluation {
                terms,
                ..plain(report)
            }
        }
        CountMethod::Decompose => {
            let opts = DecomposeOptions {
                conjecture_mode: conjecture,
                allow_special_fiber: true,
            };
            let dec = counter.decompose(lam, opts)?;
            Evaluation {
                report: dec.report,
                terms: dec.terms,
                cancellation: Some((dec.cancellation_residual, dec.cancellation_bound)),
                literal_agrees: None,
            }
        }
    })
}

fn selected(args: &CountArgs, q: u32, lam: FqElem) -> Vec<CountMethod> {
    let single = match args.method {
        MethodArg::Brute => Some(CountMethod::Brute),
        MethodArg::Koblitz => Some(CountMethod::Koblitz),
        MethodArg::Theorem11 => Some(CountMethod::Theorem11),
        MethodArg::Threefold => Some(CountMethod::Threefold),
        MethodArg::Decompose => Some(CountMethod::Decompose),
        MethodArg::All => None,
    };
    if let Some(m) = single {
        return vec![m];
    }
    let d = args.field.d;
    let mut v = Vec::new();
    if (q as f64).powi(d as i32 - 1) <= BRUTE_LIMIT {
        v.push(CountMethod::Brute);
    }
    if lam.is_zero() {
        return v;
    }
    v.push(CountMethod::Koblitz);
    v.push(CountMethod::Theorem11);
    if d == 5 {
        v.push(CountMethod::Threefold);
    }
    if d % 2 == 1 || args.conjecture {
        v.push(CountMethod::Decompose);
    }
    v
}

#[derive(Serialize)]
struct Params {
    d: u32,
    p: u64,
    e: u32,
    q: u32,
    lambda: u64,
    method: String,
}

#[derive(Serialize)]
pub struct TermRow {
    pub method: CountMethod,
    pub kind: dwork_core::TermKind,
    pub label: String,
    pub multiplicity: u64,
    pub source_class: Option<Vec<u32>>,
    pub argument: dwork_core::Argument,
    pub parameters: Option<String>,
    pub coefficient: Cx,
    pub value: Cx,
}

impl TermRow {
    pub fn new(method: CountMethod, t: &HgfTerm) -> TermRow {
        TermRow {
            method,
            kind: t.kind,
            label: t.label(),
            multiplicity: t.multiplicity,
            source_class: t.source_class.clone(),
            argument: t.argument,
            parameters: t.params.as_ref().map(|p| p.to_string()),
            coefficient: t.coefficient,
            value: t.value,
        }
    }
}

#[derive(Serialize)]
struct Total {
    method: CountMethod,
    count: u64,
    raw: Cx,
}

#[derive(Serialize)]
struct Residual {
    method: CountMethod,
    rounding: f64,
    cancellation: Option<f64>,
    cancellation_bound: Option<f64>,
    literal_form_agrees: Option<bool>,
}

#[derive(Serialize)]
struct CountDoc {
    params: Params,
    terms: Vec<TermRow>,
    totals: Vec<Total>,
    residuals: Vec<Residual>,
    agree: bool,
}

pub fn run(args: &CountArgs, settings: &Settings, out: &mut String) -> Result<bool, CliError> {
    let ctx = settings.context(&args.field)?;
    let counter = DworkCounter::new(&ctx, args.field.d)?.with_tolerances(settings.tolerances);
    let lam = lambda_elem(&ctx, args.lambda)?;
    let methods = selected(args, ctx.q(), lam);
    let evals = methods
        .iter()
        .map(|&m| evaluate(&counter, m, lam, args.conjecture))
        .collect::<Result<Vec<_>, _>>()?;
    let agree = evals
        .windows(2)
        .all(|w| w[0].report.count == w[1].report.count);

    let doc = CountDoc {
        params: Params {
            d: args.field.d,
            p: args.field.p,
            e: args.field.e,
            q: ctx.q(),
            lambda: args.lambda,
            method: format!("{:?}", args.method).to_lowercase(),
        },
        terms: evals
            .iter()
            .flat_map(|ev| ev.terms.iter().map(|t| TermRow::new(ev.report.method, t)))
            .collect(),
        totals: evals
            .iter()
            .map(|ev| Total {
                method: ev.report.method,
                count: ev.report.count,
                raw: ev.report.raw,
            })
            .collect(),
        residuals: evals
            .iter()
            .map(|ev| Residual {
                method: ev.report.method,
                rounding: ev.report.residual,
                cancellation: ev.cancellation.map(|c| c.0),
                cancellation_bound: ev.cancellation.map(|c| c.1),
                literal_form_agrees: ev.literal_agrees,
            })
            .collect(),
        agree,
    };

    match settings.format {
        Format::Json => out.push_str(&output::json(&doc)?),
        Format::Csv => {
            let header = output::header(&["method", "count", "raw_re", "raw_im", "residual"]);
            let rows = evals.iter().map(|ev| {
                let r = &ev.report;
                vec![
                    r.method.to_string(),
                    r.count.to_string(),
                    num(r.raw.re),
                    num(r.raw.im),
                    num(r.residual),
                ]
            });
            out.push_str(&output::csv(&header, rows)?);
        }
        Format::Text => text(&doc, out),
    }
    if !agree {
        eprintln!("dwork: methods disagree");
    }
    Ok(agree)
}

fn text(doc: &CountDoc, out: &mut String) {
    use std::fmt::Write;
    let p = &doc.params;
    let field = if p.e == 1 {
        format!("F_{}", p.q)
    } else {
        format!("F_{}^{} (q = {})", p.p, p.e, p.q)
    };
    let _ = writeln!(
        out,
        "Dwork hypersurface d={} over {field}, lambda={}",
        p.d, p.lambda
    );
    let _ = writeln!(out, "{:<10} {:>16} {:>14}", "method", "count", "residual");
    for (t, r) in doc.totals.iter().zip(&doc.residuals) {
        let _ = writeln!(
            out,
            "{:<10} {:>16} {:>14}",
            t.method.name(),
            t.count,
            num(r.rounding)
        );
    }
    for r in &doc.residuals {
        if let (Some(c), Some(b)) = (r.cancellation, r.cancellation_bound) {
            let _ = writeln!(
                out,
                "{} cancellation residual {} (bound {})",
                r.method,
                num(c),
                num(b)
            );
        }
        if r.literal_form_agrees == Some(false) {
            let _ = writeln!(
                out,
                "{}: literal statement of the formula disagrees; reconstructed form used",
                r.method
            );
        }
    }
    if !doc.terms.is_empty() {
        let _ = writeln!(out, "terms:");
        for t in &doc.terms {
            let class = t
                .source_class
                .as_ref()
                .map(|c| format!("{c:?}"))
                .unwrap_or_default();
            let params = t.parameters.as_deref().unwrap_or("");
            let _ = writeln!(
                out,
                "  {:<10} {:<16} {:<40} {:>6} {}",
                t.method.name(),
                class,
                params,
                t.multiplicity,
                output::cx(t.value)
            );
        }
    }
    if doc.totals.len() > 1 {
        let _ = writeln!(
            out,
            "{}",
            if doc.agree {
                "all methods agree"
            } else {
                "METHODS DISAGREE"
            }
        );
    }
}
