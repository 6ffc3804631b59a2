use std::fmt::Write;

use clap::Args;
use dwork_core::dwork::PredictedKind;
use dwork_core::{classify_terms, enumerate_cosets, CosetRep};
use serde::Serialize;

use crate::config::Settings;
use crate::error::CliError;
use crate::output;
use crate::Format;

#[derive(Args, Debug)]
pub struct CosetsArgs {
    /// Degree, 2 to 10.
    #[arg(long)]
    pub d: u32,
    /// Also show the predicted term type of each class (d >= 3).
    #[arg(long)]
    pub classify: bool,
}

#[derive(Serialize)]
struct Listing {
    d: u32,
    cosets: u64,
    classes: Vec<CosetRep>,
}

fn kind_label(kind: PredictedKind) -> String {
    match kind {
        PredictedKind::Delta => "delta".into(),
        PredictedKind::Hypergeometric { order } => format!("{}F{}", order, order - 1),
    }
}

fn class_text(w: &[u32]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(args: &CosetsArgs, settings: &Settings, out: &mut String) -> Result<bool, CliError> {
    let d = args.d;
    if !(2..=10).contains(&d) {
        return Err(CliError::Usage(format!("d must lie in [2, 10], got {d}")));
    }
    if args.classify && d < 3 {
        return Err(CliError::Usage("classification needs d >= 3".into()));
    }
    let classes = enumerate_cosets(d);
    let total: u64 = classes.iter().map(|c| c.class_size).sum();

    if !args.classify {
        let listing = Listing {
            d,
            cosets: total,
            classes,
        };
        match settings.format {
            Format::Json => out.push_str(&output::json(&listing)?),
            Format::Csv => {
                let header = output::header(&["class", "size", "zeros", "distinct"]);
                let rows = listing.classes.iter().map(|c| {
                    vec![
                        class_text(&c.w),
                        c.class_size.to_string(),
                        c.zeros().to_string(),
                        c.distinct().to_string(),
                    ]
                });
                out.push_str(&output::csv(&header, rows)?);
            }
            Format::Text => {
                let _ = writeln!(
                    out,
                    "d={d}: {total} cosets in {} classes",
                    listing.classes.len()
                );
                let _ = writeln!(
                    out,
                    "{:<22} {:>8} {:>6} {:>9}",
                    "class", "size", "zeros", "distinct"
                );
                for c in &listing.classes {
                    let _ = writeln!(
                        out,
                        "{:<22} {:>8} {:>6} {:>9}",
                        class_text(&c.w),
                        c.class_size,
                        c.zeros(),
                        c.distinct()
                    );
                }
            }
        }
        return Ok(true);
    }

    let cls = classify_terms(d)?;
    match settings.format {
        Format::Json => out.push_str(&output::json(&cls)?),
        Format::Csv => {
            let header = output::header(&[
                "class",
                "size",
                "zeros",
                "distinct",
                "term",
                "bottom_trivial",
            ]);
            let rows = cls.classes.iter().map(|i| {
                vec![
                    class_text(&i.class.w),
                    i.class.class_size.to_string(),
                    i.class.zeros().to_string(),
                    i.class.distinct().to_string(),
                    kind_label(i.kind),
                    i.bottom_trivial.to_string(),
                ]
            });
            out.push_str(&output::csv(&header, rows)?);
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "d={d}: {total} cosets in {} classes",
                cls.classes.len()
            );
            let _ = writeln!(
                out,
                "{:<22} {:>8} {:>6} {:>9} {:>6} {:>15}",
                "class", "size", "zeros", "distinct", "term", "bottom_trivial"
            );
            for i in &cls.classes {
                let _ = writeln!(
                    out,
                    "{:<22} {:>8} {:>6} {:>9} {:>6} {:>15}",
                    class_text(&i.class.w),
                    i.class.class_size,
                    i.class.zeros(),
                    i.class.distinct(),
                    kind_label(i.kind),
                    i.bottom_trivial
                );
            }
            let _ = writeln!(
                out,
                "constant multiplicity: {} (expected {})",
                cls.constant_multiplicity, cls.expected_constant_multiplicity
            );
            let _ = writeln!(
                out,
                "1F0 multiplicity: {} (expected {})",
                cls.one_f0_multiplicity, cls.expected_one_f0_multiplicity
            );
            let _ = writeln!(
                out,
                "{}F{} term present: {} (expected {})",
                d - 2,
                d - 3,
                cls.has_second_order_term,
                cls.expects_second_order_term
            );
            let _ = writeln!(
                out,
                "trivial-bottom pairs: {} (expected {})",
                cls.trivial_bottom_pairs, cls.expected_trivial_bottom_pairs
            );
        }
    }
    Ok(cls.consistent())
}
