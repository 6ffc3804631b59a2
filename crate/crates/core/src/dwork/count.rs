use std::fmt;

use serde::{Deserialize, Serialize};

use super::cosets::{self, CosetRep};
use super::terms::{Argument, HgfTerm, TermKind};
use crate::chars::Cx;
use crate::context::FieldContext;
use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::greene::HgfParams;
use crate::Tolerances;

type HypRow = (f64, u64, Vec<i64>, Vec<i64>, Vec<u32>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Brute,
    Koblitz,
    Theorem11,
    Threefold,
    Decompose,
}

impl CountMethod {
    pub const ALL: [CountMethod; 5] = [
        CountMethod::Brute,
        CountMethod::Koblitz,
        CountMethod::Theorem11,
        CountMethod::Threefold,
        CountMethod::Decompose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Brute => "brute",
            CountMethod::Koblitz => "koblitz",
            CountMethod::Theorem11 => "theorem11",
            CountMethod::Threefold => "threefold",
            CountMethod::Decompose => "decompose",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point count rounded from a complex evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub method: CountMethod,
    pub raw: Cx,
    pub count: u64,
    /// `|raw - count|`.
    pub residual: f64,
    pub d: u32,
    pub q: u32,
    /// Canonical index of λ.
    pub lambda: u32,
}

impl CountReport {
    /// Rounds `raw`, refusing values farther than `guard` from a nonnegative integer.
    pub fn from_raw(
        method: CountMethod,
        raw: Cx,
        d: u32,
        q: u32,
        lambda: u32,
        guard: f64,
    ) -> Result<CountReport> {
        let rounded = raw.re.round();
        let residual = (raw - Cx::new(rounded, 0.0)).norm();
        if residual.is_nan() || residual >= guard || rounded < 0.0 {
            return Err(Error::RoundingGuard {
                method,
                re: raw.re,
                im: raw.im,
                guard,
            });
        }
        Ok(CountReport {
            method,
            raw,
            count: rounded as u64,
            residual,
            d,
            q,
            lambda,
        })
    }

    /// An exact count from the oracle.
    pub fn exact(count: u64, d: u32, q: u32, lambda: u32) -> CountReport {
        CountReport {
            method: CountMethod::Brute,
            raw: Cx::new(count as f64, 0.0),
            count,
            residual: 0.0,
            d,
            q,
            lambda,
        }
    }
}

/// Theorem-form count together with the literal-statement diagnostic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem11Report {
    pub report: CountReport,
    /// The statement evaluated term by term as printed.
    pub literal: Cx,
    /// Whether the literal evaluation rounds to the same count.
    pub literal_agrees: bool,
}

/// Per-`(field, d)` state shared by every count method: the coset classes and
/// the λ-independent Gauss-sum pieces.
pub struct DworkCounter<'a> {
    ctx: &'a FieldContext,
    d: u32,
    t: i64,
    classes: Vec<CosetRep>,
    wss_sum: Cx,
    tol: Tolerances,
}

impl<'a> DworkCounter<'a> {
    pub fn new(ctx: &'a FieldContext, d: u32) -> Result<DworkCounter<'a>> {
        let n = ctx.field().unit_order();
        if d < 2 || n % d != 0 {
            return Err(Error::BadModulus { q: ctx.q(), m: d });
        }
        let t = (n / d) as i64;
        let classes = cosets::enumerate_cosets(d);
        let mut counter = DworkCounter {
            ctx,
            d,
            t,
            classes,
            wss_sum: Cx::new(0.0, 0.0),
            tol: Tolerances::default(),
        };
        counter.wss_sum = counter.compute_wss_sum();
        Ok(counter)
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> DworkCounter<'a> {
        self.tol = tol;
        self
    }

    pub fn ctx(&self) -> &'a FieldContext {
        self.ctx
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn classes(&self) -> &[CosetRep] {
        &self.classes
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// `∏_i g(T^{w_i t + j})`.
    pub fn gauss_product(&self, w: &[u32], j: i64) -> Cx {
        w.iter()
            .map(|&wi| self.ctx.g(wi as i64 * self.t + j))
            .product()
    }

    fn compute_wss_sum(&self) -> Cx {
        self.classes
            .iter()
            .map(|c| {
                let per_coset: Cx = cosets::zero_free_shifts(&c.w)
                    .iter()
                    .map(|s| self.gauss_product(s, 0))
                    .sum();
                per_coset * c.class_size as f64
            })
            .sum()
    }

    /// `Σ_{w ∈ W**} ∏ g(T^{w_i t})`, summed per class.
    pub fn wss_gauss_sum(&self) -> Cx {
        self.wss_sum
    }

    /// The same sum taken tuple by tuple over `W**`.
    pub fn wss_gauss_sum_explicit(&self) -> Cx {
        cosets::enumerate_wss(self.d)
            .iter()
            .map(|w| self.gauss_product(w, 0))
            .sum()
    }

    /// `(q^{d-1} - 1)/(q - 1)`.
    pub fn baseline(&self) -> f64 {
        let q = self.ctx.q() as f64;
        (q.powi(self.d as i32 - 1) - 1.0) / (q - 1.0)
    }

    /// `G_d = ∏_{k=1}^{d-1} g(T^{kt})`.
    pub fn g_d(&self) -> Cx {
        (1..self.d as i64).map(|k| self.ctx.g(k * self.t)).product()
    }

    /// `G_d` from its parity-dependent closed form.
    pub fn g_d_closed_form(&self) -> Cx {
        let q = self.ctx.q() as f64;
        let d = self.d as i64;
        if d % 2 == 1 {
            let alpha = (d * d - 1) * self.t / 8;
            Cx::new(
                q.powi((d as i32 - 1) / 2) * self.ctx.chi_minus_one(alpha),
                0.0,
            )
        } else {
            let alpha = (d - 2) * d * self.t / 8;
            self.ctx.g(d * self.t / 2)
                * (q.powi((d as i32 - 2) / 2) * self.ctx.chi_minus_one(alpha))
        }
    }

    fn nonzero(&self, lam: FqElem) -> Result<()> {
        if lam.is_zero() {
            Err(Error::LambdaZero)
        } else {
            Ok(())
        }
    }

    /// `λ^d` and `λ^{-d}`.
    pub fn lambda_powers(&self, lam: FqElem) -> Result<(FqElem, FqElem)> {
        self.nonzero(lam)?;
        let f = self.ctx.field();
        let ld = f.pow(lam, self.d as i64)?;
        Ok((ld, f.inv(ld)?))
    }

    /// Raw value of the diagonal count `N_q(0)`.
    pub fn nq0_raw(&self) -> Cx {
        Cx::new(self.baseline(), 0.0) + self.wss_sum / self.ctx.q() as f64
    }

    pub fn nq0(&self) -> Result<CountReport> {
        self.report(
            CountMethod::Koblitz,
            self.nq0_raw(),
            self.ctx.field().zero(),
        )
    }

    fn report(&self, method: CountMethod, raw: Cx, lam: FqElem) -> Result<CountReport> {
        CountReport::from_raw(
            method,
            raw,
            self.d,
            self.ctx.q(),
            lam.index(),
            self.tol.rounding_guard,
        )
    }

    /// `S_[w] = 1/(q-1) Σ_j ∏ g(T^{w_i t + j}) / g(T^{dj}) · T^{dj}(dλ)` for a
    /// single coset.
    pub fn s_coset(&self, w: &[u32], lam: FqElem) -> Result<Cx> {
        self.nonzero(lam)?;
        let f = self.ctx.field();
        let dl = f.mul(f.from_int(self.d as i64), lam);
        let n = f.unit_order() as i64;
        let d = self.d as i64;
        let sum: Cx = (0..n)
            .map(|j| self.gauss_product(w, j) / self.ctx.g(d * j) * self.ctx.chi(d * j, dl))
            .sum();
        Ok(sum / n as f64)
    }

    /// `Σ_{[w]} S_[w]` over every coset, one evaluation per class.
    fn coset_total(&self, lam: FqElem, skip_zero_class: bool) -> Result<Cx> {
        let mut total = Cx::new(0.0, 0.0);
        for c in &self.classes {
            if skip_zero_class && c.w.iter().all(|&x| x == 0) {
                continue;
            }
            total += self.s_coset(&c.w, lam)? * c.class_size as f64;
        }
        Ok(total)
    }

    pub fn koblitz(&self, lam: FqElem) -> Result<CountReport> {
        let raw = self.nq0_raw() + self.coset_total(lam, false)?;
        self.report(CountMethod::Koblitz, raw, lam)
    }

    /// `q^{d-2} · _{d-1}F_{d-2}(T^t, ..., T^{(d-1)t}; ε, ..., ε | 1/λ^d)`.
    pub fn leading_term(&self, lam: FqElem) -> Result<Cx> {
        let (_, inv) = self.lambda_powers(lam)?;
        let top: Vec<i64> = (1..self.d as i64).map(|k| k * self.t).collect();
        let bottom = vec![0i64; self.d as usize - 2];
        let params = HgfParams::from_exponents(self.ctx, &top, &bottom)?;
        let q = self.ctx.q() as f64;
        Ok(self.ctx.hgf(&params, inv) * q.powi(self.d as i32 - 2))
    }

    /// The zero coset rewritten as the leading hypergeometric term,
    /// plus the statement as printed for comparison:
    ///
    /// ```text
    /// baseline + q^{d-2} F(1/λ^d) - (1/q) Σ_{j=1}^{d-1} g(T^{jt})^d
    ///          + (1/q) Σ_{W**} ∏ g + Σ_{[w] ≠ [0]} S_[w]
    /// ```
    pub fn theorem11(&self, lam: FqElem) -> Result<Theorem11Report> {
        let q = self.ctx.q() as f64;
        let d = self.d as i32;
        let lead = self.leading_term(lam)?;
        let powers: Cx = (1..self.d as i64)
            .map(|j| self.ctx.g(j * self.t).powi(d))
            .sum();
        let raw = Cx::new(self.baseline(), 0.0) + lead - powers / q
            + self.wss_sum / q
            + self.coset_total(lam, true)?;
        let report = self.report(CountMethod::Theorem11, raw, lam)?;

        let powers_all = powers + self.ctx.g(0).powi(d);
        let w_sum: Cx = self
            .classes
            .iter()
            .map(|c| {
                let per: Cx = (0..self.d)
                    .map(|k| self.gauss_product(&cosets::shift(&c.w, k), 0))
                    .sum();
                per * c.class_size as f64
            })
            .sum();
        let literal = Cx::new(self.baseline(), 0.0) + lead - powers_all / q - w_sum / (q - 1.0);
        let literal_agrees =
            (literal - Cx::new(report.count as f64, 0.0)).norm() < self.tol.rounding_guard;
        Ok(Theorem11Report {
            report,
            literal,
            literal_agrees,
        })
    }

    /// The six-term quintic formula with its term list.
    pub fn threefold(&self, lam: FqElem) -> Result<(CountReport, Vec<HgfTerm>)> {
        if self.d != 5 {
            return Err(Error::InvalidExponents(format!(
                "the threefold formula needs d = 5, got {}",
                self.d
            )));
        }
        let (ld, inv) = self.lambda_powers(lam)?;
        let ctx = self.ctx;
        let q = ctx.q() as f64;
        let t = self.t;
        let mut terms = vec![HgfTerm::constant(self.baseline())];

        let delta_coef = Cx::new(24.0 * q * q, 0.0);
        let active = ld == ctx.field().one();
        terms.push(HgfTerm {
            kind: TermKind::Delta,
            multiplicity: 24,
            coefficient: delta_coef,
            params: None,
            argument: Argument::LambdaPowD,
            source_class: Some(vec![0, 1, 2, 3, 4]),
            value: if active {
                delta_coef
            } else {
                Cx::new(0.0, 0.0)
            },
        });

        // (scale, multiplicity, top, bottom, source class)
        let hyp: [HypRow; 5] = [
            (
                q * q * q,
                1,
                vec![t, 2 * t, 3 * t, 4 * t],
                vec![0, 0, 0],
                vec![0, 0, 0, 0, 0],
            ),
            (
                20.0 * q * q,
                20,
                vec![2 * t, 3 * t],
                vec![0],
                vec![0, 0, 0, 1, 4],
            ),
            (
                20.0 * q * q,
                20,
                vec![t, 4 * t],
                vec![0],
                vec![0, 0, 0, 2, 3],
            ),
            (
                30.0 * q * q,
                30,
                vec![t, 3 * t],
                vec![4 * t],
                vec![0, 0, 1, 1, 3],
            ),
            (
                30.0 * q * q,
                30,
                vec![t, 2 * t],
                vec![3 * t],
                vec![0, 0, 1, 2, 2],
            ),
        ];
        for (coef, mult, top, bottom, class) in hyp {
            let params = HgfParams::from_exponents(ctx, &top, &bottom)?;
            let value = ctx.hgf(&params, inv) * coef;
            terms.push(HgfTerm {
                kind: TermKind::Hypergeometric,
                multiplicity: mult,
                coefficient: Cx::new(coef, 0.0),
                params: Some(params),
                argument: Argument::InvLambdaPowD,
                source_class: Some(class),
                value,
            });
        }
        let raw: Cx = terms.iter().map(|t| t.value).sum();
        Ok((self.report(CountMethod::Threefold, raw, lam)?, terms))
    }
}

pub fn nq0(ctx: &FieldContext, d: u32) -> Result<CountReport> {
    DworkCounter::new(ctx, d)?.nq0()
}

pub fn s_coset(ctx: &FieldContext, d: u32, w: &[u32], lam: FqElem) -> Result<Cx> {
    DworkCounter::new(ctx, d)?.s_coset(w, lam)
}

pub fn koblitz_count(ctx: &FieldContext, d: u32, lam: FqElem) -> Result<CountReport> {
    DworkCounter::new(ctx, d)?.koblitz(lam)
}

pub fn theorem11_count(ctx: &FieldContext, d: u32, lam: FqElem) -> Result<Theorem11Report> {
    DworkCounter::new(ctx, d)?.theorem11(lam)
}

pub fn threefold_count(ctx: &FieldContext, lam: FqElem) -> Result<(CountReport, Vec<HgfTerm>)> {
    DworkCounter::new(ctx, 5)?.threefold(lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn ctx(p: u64) -> FieldContext {
        FieldContext::for_field(p, 1).unwrap()
    }

    #[test]
    fn preconditions() {
        let c = ctx(7);
        assert_eq!(
            DworkCounter::new(&c, 5).err(),
            Some(Error::BadModulus { q: 7, m: 5 })
        );
        let k = DworkCounter::new(&c, 3).unwrap();
        assert_eq!(k.koblitz(c.field().zero()), Err(Error::LambdaZero));
    }

    #[test]
    fn diagonal_count() {
        let c = ctx(11);
        let k = DworkCounter::new(&c, 5).unwrap();
        assert_eq!(k.baseline(), 1464.0);
        let r = k.nq0().unwrap();
        assert_eq!(r.count, oracle::brute_fermat_count(c.field(), 5));
        assert!((k.wss_gauss_sum() - k.wss_gauss_sum_explicit()).norm() < 1e-6);
    }

    #[test]
    fn closed_form_of_g_d() {
        for (d, p) in [(3u32, 7u64), (5, 11), (4, 13), (6, 13), (7, 29), (4, 17)] {
            let c = ctx(p);
            let k = DworkCounter::new(&c, d).unwrap();
            let scale = (p as f64).powf((d - 1) as f64 / 2.0);
            assert!(
                (k.g_d() - k.g_d_closed_form()).norm() < 1e-9 * scale,
                "d={d} q={p}"
            );
        }
    }

    #[test]
    fn methods_match_oracle() {
        for (d, p) in [(3u32, 7u64), (4, 13), (5, 11)] {
            let c = ctx(p);
            let k = DworkCounter::new(&c, d).unwrap();
            let brute = oracle::brute_projective_counts(c.field(), d);
            for lam in c.field().units() {
                let expect = brute[lam.index() as usize];
                assert_eq!(
                    k.koblitz(lam).unwrap().count,
                    expect,
                    "koblitz d={d} q={p} λ={lam}"
                );
                assert_eq!(k.theorem11(lam).unwrap().report.count, expect);
            }
        }
    }

    #[test]
    fn delta_class_coset_values() {
        let c = ctx(11);
        let k = DworkCounter::new(&c, 5).unwrap();
        let w = [0, 1, 2, 3, 4];
        let q2 = 121.0;
        let s = k.s_coset(&w, c.field().one()).unwrap();
        assert!((s - Cx::new(q2, 0.0)).norm() < 1e-6);
        let s = k.s_coset(&w, c.field().elem(2).unwrap()).unwrap();
        assert!(s.norm() < 1e-6);
    }

    #[test]
    fn threefold_terms() {
        let c = ctx(11);
        let k = DworkCounter::new(&c, 5).unwrap();
        let (r, terms) = k.threefold(c.field().one()).unwrap();
        assert_eq!(terms.len(), 7);
        assert_eq!(terms[1].value, Cx::new(2904.0, 0.0));
        let brute = oracle::brute_projective_counts(c.field(), 5);
        assert_eq!(r.count, brute[1]);
    }

    #[test]
    fn literal_statement_is_flagged() {
        let c = ctx(11);
        let r = theorem11_count(&c, 5, c.field().elem(2).unwrap()).unwrap();
        assert!(!r.literal_agrees);
    }

    #[test]
    fn rounding_guard() {
        let e = CountReport::from_raw(CountMethod::Koblitz, Cx::new(3.4, 0.0), 3, 7, 1, 0.01);
        assert!(matches!(e, Err(Error::RoundingGuard { .. })));
        let r = CountReport::from_raw(CountMethod::Koblitz, Cx::new(3.001, 0.0), 3, 7, 1, 0.01);
        assert_eq!(r.unwrap().count, 3);
    }
}
