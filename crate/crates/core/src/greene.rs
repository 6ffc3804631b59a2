//! Greene's finite-field hypergeometric functions and truncated classical
//! series reduced mod `p`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::chars::{CharIdx, Cx};
use crate::context::FieldContext;
use crate::error::{Error, Result};
use crate::field::FqElem;

/// Parameters `(A_0, ..., A_n; B_1, ..., B_n)` of an `_{n+1}F_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HgfParams {
    top: Vec<CharIdx>,
    bottom: Vec<CharIdx>,
}

impl HgfParams {
    pub fn new(top: Vec<CharIdx>, bottom: Vec<CharIdx>) -> Result<HgfParams> {
        if top.len() != bottom.len() + 1 {
            return Err(Error::ParamShape);
        }
        Ok(HgfParams { top, bottom })
    }

    /// Parameters from integer exponents of `T`.
    pub fn from_exponents(ctx: &FieldContext, top: &[i64], bottom: &[i64]) -> Result<HgfParams> {
        Self::new(
            top.iter().map(|&j| ctx.char_idx(j)).collect(),
            bottom.iter().map(|&j| ctx.char_idx(j)).collect(),
        )
    }

    pub fn top(&self) -> &[CharIdx] {
        &self.top
    }

    pub fn bottom(&self) -> &[CharIdx] {
        &self.bottom
    }

    /// `n` in `_{n+1}F_n`.
    pub fn n(&self) -> usize {
        self.bottom.len()
    }

    pub fn top_exponents(&self) -> Vec<u32> {
        self.top.iter().map(|c| c.index()).collect()
    }

    pub fn bottom_exponents(&self) -> Vec<u32> {
        self.bottom.iter().map(|c| c.index()).collect()
    }
}

impl Serialize for HgfParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HgfParams", 2)?;
        st.serialize_field("top", &self.top_exponents())?;
        st.serialize_field("bottom", &self.bottom_exponents())?;
        st.end()
    }
}

impl fmt::Display for HgfParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[CharIdx]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{}F{}({}; {})",
            self.n() + 1,
            self.n(),
            join(&self.top),
            join(&self.bottom)
        )
    }
}

impl FieldContext {
    /// `_{n+1}F_n(A; B | x) = q/(q-1) Σ_χ (A_0χ over χ) ∏_i (A_iχ over B_iχ) χ(x)`.
    pub fn hgf(&self, params: &HgfParams, x: FqElem) -> Cx {
        let Ok(lx) = self.field().dlog(x) else {
            return Cx::new(0.0, 0.0);
        };
        let n = self.field().unit_order() as i64;
        let a0 = params.top[0].index() as i64;
        let mut acc = Cx::new(0.0, 0.0);
        for k in 0..n {
            let mut term = self.binom_j(a0 + k, k);
            for (a, b) in params.top[1..].iter().zip(&params.bottom) {
                term *= self.binom_j(a.index() as i64 + k, b.index() as i64 + k);
            }
            acc += term * self.roots().zeta_q1(k * lx as i64);
        }
        acc * (self.q() as f64 / n as f64)
    }

    /// Single-sum `_2F_1(A, B; C | x) = ε(x) BC(-1)/q Σ_y B(y) B̄C(1-y) Ā(1-xy)`.
    pub fn hgf_2f1_alt(&self, a: CharIdx, b: CharIdx, c: CharIdx, x: FqElem) -> Cx {
        if x.is_zero() {
            return Cx::new(0.0, 0.0);
        }
        let f = self.field();
        let (ja, jb, jc) = (a.index() as i64, b.index() as i64, c.index() as i64);
        let one = f.one();
        let mut acc = Cx::new(0.0, 0.0);
        for y in f.units() {
            let u = f.sub(one, y);
            let w = f.sub(one, f.mul(x, y));
            if u.is_zero() || w.is_zero() {
                continue;
            }
            acc += self.chi(jb, y) * self.chi(jc - jb, u) * self.chi(-ja, w);
        }
        acc * (self.chi_minus_one(jb + jc) / self.q() as f64)
    }

    /// The `n`-fold sum
    /// `∏ A_iB_i(-1)/q^n Σ A_1(x_1) Ā_1B_1(1-x_1) ··· Ā_0(1 - x_0 x_1···x_n)`,
    /// limited to `n <= 3`.
    pub fn hgf_multisum(&self, params: &HgfParams, x0: FqElem) -> Result<Cx> {
        let n = params.n();
        if n > 3 {
            return Err(Error::TooLarge(n));
        }
        if x0.is_zero() {
            return Ok(Cx::new(0.0, 0.0));
        }
        let f = self.field();
        let one = f.one();
        let a0 = params.top[0].index() as i64;
        let pairs: Vec<(i64, i64)> = params.top[1..]
            .iter()
            .zip(&params.bottom)
            .map(|(a, b)| (a.index() as i64, b.index() as i64))
            .collect();

        // Weight of one coordinate: A(x) ĀB(1-x), supported on x ∉ {0, 1}.
        let weights: Vec<Vec<(FqElem, Cx)>> = pairs
            .iter()
            .map(|&(a, b)| {
                f.units()
                    .filter(|&x| x != one)
                    .map(|x| (x, self.chi(a, x) * self.chi(b - a, f.sub(one, x))))
                    .collect()
            })
            .collect();

        fn rec(
            ctx: &FieldContext,
            weights: &[Vec<(FqElem, Cx)>],
            prod: FqElem,
            w: Cx,
            a0: i64,
        ) -> Cx {
            match weights.split_first() {
                None => {
                    let f = ctx.field();
                    w * ctx.chi(-a0, f.sub(f.one(), prod))
                }
                Some((first, rest)) => first
                    .iter()
                    .map(|&(x, wx)| rec(ctx, rest, ctx.field().mul(prod, x), w * wx, a0))
                    .sum(),
            }
        }

        let sum = rec(self, &weights, x0, Cx::new(1.0, 0.0), a0);
        let sign: f64 = pairs
            .iter()
            .map(|&(a, b)| self.chi_minus_one(a + b))
            .product();
        Ok(sum * (sign / (self.q() as f64).powi(n as i32)))
    }
}

/// Classical parameters `(a_0, ..., a_n; b_1, ..., b_n)` with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalParams {
    pub top: Vec<Ratio<i64>>,
    pub bottom: Vec<Ratio<i64>>,
    /// Number of series terms; `None` means `p` terms (`k = 0..p-1`).
    pub truncation: Option<u32>,
}

impl RationalParams {
    pub fn new(top: Vec<Ratio<i64>>, bottom: Vec<Ratio<i64>>) -> RationalParams {
        RationalParams {
            top,
            bottom,
            truncation: None,
        }
    }

    pub fn with_truncation(mut self, len: u32) -> RationalParams {
        self.truncation = Some(len.max(1));
        self
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// `p`-adic valuation and unit part mod `p` of the rational `r/s`, `p ∤ s`.
fn split(r: i128, s: i128, p: u64) -> (u32, u64) {
    let pi = p as i128;
    if r == 0 {
        return (u32::MAX, 0);
    }
    let (mut r, mut v) = (r, 0u32);
    while r % pi == 0 {
        r /= pi;
        v += 1;
    }
    let num = r.rem_euclid(pi) as u64;
    let den = s.rem_euclid(pi) as u64;
    (v, num * mod_inv(den, p) % p)
}

/// Tracks a product of rationals as `p^v · u` with `u` a unit mod `p`.
#[derive(Clone, Copy)]
struct PAdic {
    v: i64,
    u: u64,
    zero: bool,
}

impl PAdic {
    fn one() -> PAdic {
        PAdic {
            v: 0,
            u: 1,
            zero: false,
        }
    }

    fn mul(&mut self, r: i128, s: i128, p: u64, invert: bool) {
        let (v, u) = split(r, s, p);
        if v == u32::MAX {
            if invert {
                // Division by zero is caught as a pole by the caller.
                self.v = i64::MIN / 2;
            } else {
                self.zero = true;
            }
            return;
        }
        if invert {
            self.v -= v as i64;
            self.u = self.u * mod_inv(u, p) % p;
        } else {
            self.v += v as i64;
            self.u = self.u * u % p;
        }
    }
}

/// `Σ_{k<L} (a_0)_k···(a_n)_k / ((b_1)_k···(b_n)_k k!) λ^k` reduced mod `p`,
/// with `L = p` unless the parameters say otherwise.
pub fn classical_trunc_mod_p(params: &RationalParams, lam: i64, p: u64) -> Result<u64> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    for r in params.top.iter().chain(&params.bottom) {
        if r.denom().rem_euclid(p as i64) == 0 {
            return Err(Error::BadDenominator(p as u32));
        }
    }
    let len = params.truncation.unwrap_or(p as u32) as i64;
    let lam_mod = lam.rem_euclid(p as i64) as u64;
    let mut total = 0u64;
    let mut coef = PAdic::one();
    let mut lam_pow = 1u64;
    for k in 0..len {
        if k > 0 {
            let i = (k - 1) as i128;
            for a in &params.top {
                let (r, s) = (*a.numer() as i128, *a.denom() as i128);
                coef.mul(r + i * s, s, p, false);
            }
            for b in &params.bottom {
                let (r, s) = (*b.numer() as i128, *b.denom() as i128);
                coef.mul(r + i * s, s, p, true);
            }
            coef.mul(k as i128, 1, p, true);
            lam_pow = lam_pow * lam_mod % p;
        }
        if coef.zero {
            continue;
        }
        if coef.v < 0 {
            return Err(Error::PoleModP(p as u32));
        }
        if coef.v == 0 {
            total = (total + coef.u * lam_pow) % p;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> FieldContext {
        FieldContext::for_field(p, 1).unwrap()
    }

    #[test]
    fn zero_argument() {
        let c = ctx(13);
        let params = HgfParams::from_exponents(&c, &[1, 2], &[3]).unwrap();
        assert_eq!(c.hgf(&params, c.field().zero()), Cx::new(0.0, 0.0));
        assert_eq!(
            c.hgf_multisum(&params, c.field().zero()).unwrap(),
            Cx::new(0.0, 0.0)
        );
        let t = c.char_idx(1);
        assert_eq!(c.hgf_2f1_alt(t, t, t, c.field().zero()), Cx::new(0.0, 0.0));
    }

    #[test]
    fn three_definitions_agree_for_2f1() {
        let c = ctx(13);
        let q = 13.0;
        for a in 0..12 {
            for b in [0, 3, 5, 6] {
                for cc in [0, 1, 6, 11] {
                    let params = HgfParams::from_exponents(&c, &[a, b], &[cc]).unwrap();
                    for x in c.field().elements() {
                        let h = c.hgf(&params, x);
                        let alt = c.hgf_2f1_alt(c.char_idx(a), c.char_idx(b), c.char_idx(cc), x);
                        let ms = c.hgf_multisum(&params, x).unwrap();
                        assert!((h - alt).norm() < 1e-8, "{params} x={x}: {h} vs {alt}");
                        assert!((h - ms).norm() < 1e-7 * q);
                    }
                }
            }
        }
    }

    #[test]
    fn multisum_3f2_matches() {
        let c = ctx(11);
        let params = HgfParams::from_exponents(&c, &[2, 4, 7], &[0, 5]).unwrap();
        for x in c.field().units() {
            let h = c.hgf(&params, x);
            let ms = c.hgf_multisum(&params, x).unwrap();
            assert!((h - ms).norm() < 1e-7 * 11.0);
        }
    }

    #[test]
    fn multisum_size_limit() {
        let c = ctx(7);
        let params = HgfParams::from_exponents(&c, &[1, 1, 1, 1, 1], &[0, 0, 0, 0]).unwrap();
        assert_eq!(
            c.hgf_multisum(&params, c.field().one()),
            Err(Error::TooLarge(4))
        );
    }

    #[test]
    fn shape_is_checked() {
        let c = ctx(7);
        assert_eq!(
            HgfParams::from_exponents(&c, &[1], &[1]),
            Err(Error::ParamShape)
        );
    }

    #[test]
    fn truncated_series_basics() {
        let half = Ratio::new(1, 2);
        let one = Ratio::from_integer(1);
        let params = RationalParams::new(vec![half, half], vec![one]);
        assert_eq!(classical_trunc_mod_p(&params, 0, 7).unwrap(), 1);
        assert_eq!(
            classical_trunc_mod_p(&params, 3, 2),
            Err(Error::BadDenominator(2))
        );
        // (1/2)_k² / (k!)² = 1, 1/4, 9/64, ...
        let v = classical_trunc_mod_p(&params, 2, 5).unwrap();
        let inv4 = mod_inv(4, 5);
        let t2 = 9 * mod_inv(64 % 5, 5) % 5;
        assert_eq!(v, (1 + inv4 * 2 + t2 * 4) % 5);
    }

    #[test]
    fn pole_detection() {
        let one = Ratio::from_integer(1);
        let params = RationalParams::new(vec![one, one], vec![Ratio::from_integer(-2)]);
        assert_eq!(
            classical_trunc_mod_p(&params, 1, 7),
            Err(Error::PoleModP(7))
        );
    }
}
