//! Rewriting every coset sum as a hypergeometric term plus a Gauss-sum
//! leftover, and checking that the leftovers cancel the diagonal part.

use serde::Serialize;

use super::cosets::reduce_against_full;
use super::count::{CountMethod, CountReport, DworkCounter};
use super::terms::{Argument, HgfTerm, TermKind};
use crate::chars::Cx;
use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::greene::HgfParams;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecomposeOptions {
    /// Permit even `d`, where full cancellation is only conjectured.
    pub conjecture_mode: bool,
    /// Permit `λ^d = 1`, where the delta term is active.
    pub allow_special_fiber: bool,
}

/// How one coset class turned into its term.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompTrace {
    pub class_rep: Vec<u32>,
    pub class_size: u64,
    /// Surplus entries of the representative (in units of `t`).
    pub a: Vec<u32>,
    /// Missing entries of the representative (in units of `t`).
    pub b: Vec<u32>,
    pub g_d: Cx,
    /// Product of Gauss sums in front of the hypergeometric function.
    pub g: Cx,
    /// Exponent of the sign `T^m(-1)`.
    pub m: i64,
    /// Exponent of the sign inside the closed form of `G_d`.
    pub g_d_sign_exponent: i64,
    /// The class's Gauss-sum leftover, multiplicity and sign included.
    pub leftover: Cx,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub report: CountReport,
    pub terms: Vec<HgfTerm>,
    pub traces: Vec<DecompTrace>,
    /// `|Σ leftovers + (1/q) Σ_{W**} ∏ g|`.
    pub cancellation_residual: f64,
    pub cancellation_bound: f64,
    pub cancelled: bool,
}

impl DworkCounter<'_> {
    pub fn decompose(&self, lam: FqElem, opts: DecomposeOptions) -> Result<Decomposition> {
        let d = self.d();
        if d % 2 == 0 && !opts.conjecture_mode {
            return Err(Error::EvenDegreeNeedsConjectureMode(d));
        }
        let (ld, inv) = self.lambda_powers(lam)?;
        let ctx = self.ctx();
        let f = ctx.field();
        let special = ld == f.one();
        if special && !opts.allow_special_fiber {
            return Err(Error::LambdaDthPowerOne);
        }

        let q = ctx.q() as f64;
        let t = self.t();
        let g_d = self.g_d();
        let di = d as i64;
        let g_d_sign_exponent = if d % 2 == 1 {
            (di * di - 1) * t / 8
        } else {
            (di - 2) * di * t / 8
        };

        let mut terms = vec![HgfTerm::constant(self.baseline())];
        let mut traces = Vec::with_capacity(self.classes().len());
        let mut leftover_total = Cx::new(0.0, 0.0);

        for class in self.classes() {
            let (a, b) = reduce_against_full(&class.w);
            let mult = class.class_size as f64;
            let n = a.len();
            if n == 0 {
                // All entries distinct: a constant that only survives on λ^d = 1.
                let coefficient = g_d * mult;
                terms.push(HgfTerm {
                    kind: TermKind::Delta,
                    multiplicity: class.class_size,
                    coefficient,
                    params: None,
                    argument: Argument::LambdaPowD,
                    source_class: Some(class.w.clone()),
                    value: if special {
                        coefficient
                    } else {
                        Cx::new(0.0, 0.0)
                    },
                });
                traces.push(DecompTrace {
                    class_rep: class.w.clone(),
                    class_size: class.class_size,
                    a,
                    b,
                    g_d,
                    g: Cx::new(1.0, 0.0),
                    m: 0,
                    g_d_sign_exponent,
                    leftover: Cx::new(0.0, 0.0),
                });
                continue;
            }

            let big_a: Vec<i64> = a.iter().map(|&x| x as i64 * t).collect();
            let big_b: Vec<i64> = b.iter().map(|&x| -(x as i64) * t).collect();
            let m = big_a.iter().sum::<i64>() - big_b.iter().sum::<i64>();
            let mut g = ctx.g(big_b[n - 1] + big_a[0]);
            for i in 1..n {
                g *= ctx.g(big_a[i] + big_b[i - 1]);
            }
            let mut top = vec![big_b[n - 1] + big_a[0]];
            top.extend(big_b[..n - 1].iter().map(|&bi| bi + big_a[0]));
            let bottom: Vec<i64> = big_a[1..].iter().map(|&ai| big_a[0] - ai).collect();
            let params = HgfParams::from_exponents(ctx, &top, &bottom)?;
            let coefficient = g_d * g * (ctx.chi_minus_one(m) * mult / q);
            let value = coefficient * ctx.hgf(&params, inv);
            terms.push(HgfTerm {
                kind: TermKind::Hypergeometric,
                multiplicity: class.class_size,
                coefficient,
                params: Some(params),
                argument: Argument::InvLambdaPowD,
                source_class: Some(class.w.clone()),
                value,
            });

            let mut lo = Cx::new(0.0, 0.0);
            for i in 0..n {
                let bi = b[i] as i64;
                let mut pr: Cx = a.iter().map(|&ak| ctx.g((ak as i64 - bi) * t)).product();
                for (k, &bk) in b.iter().enumerate() {
                    if k != i {
                        let bk = bk as i64;
                        pr *= ctx.g((bi - bk) * t) * ctx.chi_minus_one((bk - bi) * t);
                    }
                }
                lo += pr;
            }
            let leftover = -(g_d * lo) * (mult / q.powi(n as i32));
            leftover_total += leftover;
            traces.push(DecompTrace {
                class_rep: class.w.clone(),
                class_size: class.class_size,
                a,
                b,
                g_d,
                g,
                m,
                g_d_sign_exponent,
                leftover,
            });
        }

        let uncancelled = leftover_total + self.wss_gauss_sum() / q;
        let cancellation_residual = uncancelled.norm();
        let cancellation_bound = self.tolerances().cancellation * q.powf((d as f64 - 1.0) / 2.0);
        let cancelled = cancellation_residual < cancellation_bound;
        if !cancelled {
            if d % 2 == 1 {
                return Err(Error::CancellationFailed {
                    residual: cancellation_residual,
                    bound: cancellation_bound,
                });
            }
            terms.push(HgfTerm {
                kind: TermKind::GaussLeftover,
                multiplicity: 1,
                coefficient: uncancelled,
                params: None,
                argument: Argument::None,
                source_class: None,
                value: uncancelled,
            });
        }

        let raw: Cx = terms.iter().map(|t| t.value).sum();
        let report = CountReport::from_raw(
            CountMethod::Decompose,
            raw,
            d,
            ctx.q(),
            lam.index(),
            self.tolerances().rounding_guard,
        )?;
        Ok(Decomposition {
            report,
            terms,
            traces,
            cancellation_residual,
            cancellation_bound,
            cancelled,
        })
    }
}

pub fn decompose(
    ctx: &crate::FieldContext,
    d: u32,
    lam: FqElem,
    opts: DecomposeOptions,
) -> Result<Decomposition> {
    DworkCounter::new(ctx, d)?.decompose(lam, opts)
}
