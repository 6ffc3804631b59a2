//! Numerical checks of the two Gauss-sum identities behind the
//! hypergeometric decomposition.

use rand::Rng;
use serde::Serialize;

use crate::chars::Cx;
use crate::context::FieldContext;
use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::greene::HgfParams;

/// Outcome of comparing two evaluations of one identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub lhs: Cx,
    pub rhs: Cx,
    pub residual: f64,
    pub scale: f64,
    pub passed: bool,
}

impl IdentityReport {
    pub fn new(lhs: Cx, rhs: Cx, scale: f64, tol: f64) -> IdentityReport {
        let residual = (lhs - rhs).norm();
        IdentityReport {
            lhs,
            rhs,
            residual,
            scale,
            passed: residual < tol * scale,
        }
    }

    /// Re-judge against a different relative tolerance.
    pub fn passes(&self, tol: f64) -> bool {
        self.residual < tol * self.scale
    }
}

/// Exponent lists `a_1..a_n`, `b_1..b_n`, all multiples of `t = (q-1)/d`,
/// reduced into `0..q-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentLists {
    d: u32,
    t: i64,
    a: Vec<i64>,
    b: Vec<i64>,
}

impl ExponentLists {
    pub fn new(ctx: &FieldContext, d: u32, a: &[i64], b: &[i64]) -> Result<ExponentLists> {
        let n = ctx.field().unit_order() as i64;
        if d == 0 || n % d as i64 != 0 {
            return Err(Error::BadModulus { q: ctx.q(), m: d });
        }
        let t = n / d as i64;
        let bad = |msg: &str| Err(Error::InvalidExponents(msg.to_string()));
        if a.is_empty() || a.len() != b.len() {
            return bad("a and b must be nonempty and of equal length");
        }
        let a: Vec<i64> = a.iter().map(|x| x.rem_euclid(n)).collect();
        let b: Vec<i64> = b.iter().map(|x| x.rem_euclid(n)).collect();
        if a.iter().chain(&b).any(|x| x % t != 0) {
            return bad("every exponent must be a multiple of t");
        }
        if a.iter().chain(&b).all(|&x| x == 0) {
            return bad("exponents are all zero");
        }
        if a.iter().any(|&ak| b.iter().any(|&bj| (ak + bj) % n == 0)) {
            return bad("a_k = -b_j for some k, j");
        }
        for (i, x) in b.iter().enumerate() {
            if b[..i].contains(x) {
                return bad("b entries must be distinct");
            }
        }
        Ok(ExponentLists { d, t, a, b })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    /// Copy with both lists sorted ascending.
    pub fn canonical(&self) -> ExponentLists {
        let mut c = self.clone();
        c.a.sort_unstable();
        c.b.sort_unstable();
        c
    }

    /// A uniformly drawn valid instance with `1 <= n <= n_max`, by rejection.
    pub fn random<R: Rng + ?Sized>(
        ctx: &FieldContext,
        d: u32,
        n_max: usize,
        rng: &mut R,
    ) -> Result<ExponentLists> {
        let q1 = ctx.field().unit_order() as i64;
        if d == 0 || q1 % d as i64 != 0 {
            return Err(Error::BadModulus { q: ctx.q(), m: d });
        }
        let t = q1 / d as i64;
        let n_max = n_max.clamp(1, d as usize);
        loop {
            let n = rng.gen_range(1..=n_max);
            let a: Vec<i64> = (0..n).map(|_| rng.gen_range(0..d as i64) * t).collect();
            let b: Vec<i64> = (0..n).map(|_| rng.gen_range(0..d as i64) * t).collect();
            if let Ok(ex) = ExponentLists::new(ctx, d, &a, &b) {
                return Ok(ex);
            }
        }
    }
}

/// The hypergeometric side of the identity, with its pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct Thm32Rhs {
    pub coefficient: Cx,
    pub params: HgfParams,
    /// The point `1/λ^d` at which the function is evaluated.
    pub argument: FqElem,
    pub value: Cx,
    /// False for `λ = 0`, where the identity makes no claim.
    pub in_scope: bool,
}

impl FieldContext {
    /// `LHS = Σ_j g(T^{j+a}) g(T^{b-j}) T^j(-1) T^{4j}(λ)` against
    /// `RHS = (q-1) g(T^{a+b}) T^b(-1) T^{-(a+b)}(1-λ^4)`.
    pub fn prop31_check(&self, a: i64, b: i64, lam: FqElem) -> Result<IdentityReport> {
        let f = self.field();
        let n = f.unit_order() as i64;
        if n % 4 != 0 {
            return Err(Error::BadModulus { q: self.q(), m: 4 });
        }
        let t = n / 4;
        if a.rem_euclid(t) != 0 || b.rem_euclid(t) != 0 {
            return Err(Error::InvalidExponents(
                "a and b must be multiples of t".into(),
            ));
        }
        if lam.is_zero() {
            return Err(Error::LambdaZero);
        }
        let l4 = f.pow(lam, 4)?;
        let one_minus = f.sub(f.one(), l4);
        if one_minus.is_zero() {
            return Err(Error::LambdaFourthPowerOne);
        }
        let lhs: Cx = (0..n)
            .map(|j| self.g(j + a) * self.g(b - j) * self.chi_minus_one(j) * self.chi(4 * j, lam))
            .sum();
        let rhs =
            self.g(a + b) * self.chi_minus_one(b) * self.chi(-(a + b), one_minus) * (n as f64);
        let q = self.q() as f64;
        Ok(IdentityReport::new(
            lhs,
            rhs,
            n as f64 * q,
            crate::Tolerances::default().prop31,
        ))
    }

    /// `1/(q-1) Σ_j ∏ g(T^{a_i+j}) ∏ T^{j-b_i}(-1) g(T^{b_i-j}) T^j(λ^d)`.
    pub fn thm32_lhs(&self, ex: &ExponentLists, lam: FqElem) -> Result<Cx> {
        if lam.is_zero() {
            return Err(Error::LambdaZero);
        }
        let n = self.field().unit_order() as i64;
        let ld = self.field().pow(lam, ex.d as i64)?;
        let sum: Cx = (0..n)
            .map(|j| {
                let mut term = self.chi(j, ld);
                for (&a, &b) in ex.a.iter().zip(&ex.b) {
                    term *= self.g(a + j) * self.g(b - j) * self.chi_minus_one(j - b);
                }
                term
            })
            .sum();
        Ok(sum / n as f64)
    }

    /// `T^m(-1) G q^{n-1} · _nF_{n-1}(top; bottom | 1/λ^d)` with, after sorting
    /// both lists ascending, `top = (b_n+a_1, b_1+a_1, ..., b_{n-1}+a_1)`,
    /// `bottom = (a_1-a_2, ..., a_1-a_n)`, `m = Σa - Σb` and
    /// `G = g(T^{a_2+b_1})···g(T^{a_n+b_{n-1}}) g(T^{b_n+a_1})`.
    pub fn thm32_rhs(&self, ex: &ExponentLists, lam: FqElem) -> Result<Thm32Rhs> {
        let ex = ex.canonical();
        let (a, b) = (&ex.a, &ex.b);
        let n = a.len();
        let mut top = Vec::with_capacity(n);
        top.push(b[n - 1] + a[0]);
        top.extend(b[..n - 1].iter().map(|&bi| bi + a[0]));
        let bottom: Vec<i64> = a[1..].iter().map(|&ai| a[0] - ai).collect();
        let params = HgfParams::from_exponents(self, &top, &bottom)?;

        let m: i64 = a.iter().sum::<i64>() - b.iter().sum::<i64>();
        let mut g_prod = self.g(b[n - 1] + a[0]);
        for i in 1..n {
            g_prod *= self.g(a[i] + b[i - 1]);
        }
        let coefficient = g_prod * self.chi_minus_one(m) * (self.q() as f64).powi(n as i32 - 1);

        let f = self.field();
        if lam.is_zero() {
            return Ok(Thm32Rhs {
                coefficient,
                params,
                argument: f.zero(),
                value: Cx::new(0.0, 0.0),
                in_scope: false,
            });
        }
        let argument = f.pow(lam, -(ex.d as i64))?;
        let value = coefficient * self.hgf(&params, argument);
        Ok(Thm32Rhs {
            coefficient,
            params,
            argument,
            value,
            in_scope: true,
        })
    }

    /// Both sides of the theorem-form identity, scaled by `q^n`.
    pub fn thm32_check(&self, ex: &ExponentLists, lam: FqElem, tol: f64) -> Result<IdentityReport> {
        let lhs = self.thm32_lhs(ex, lam)?;
        let rhs = self.thm32_rhs(ex, lam)?.value;
        let scale = (self.q() as f64).powi(ex.n() as i32);
        Ok(IdentityReport::new(lhs, rhs, scale, tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64) -> FieldContext {
        FieldContext::for_field(p, 1).unwrap()
    }

    #[test]
    fn prop31_trivial_exponents() {
        let c = ctx(13);
        let r = c.prop31_check(0, 0, c.field().elem(2).unwrap()).unwrap();
        assert!((r.rhs - Cx::new(-12.0, 0.0)).norm() < 1e-9);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn prop31_sweep() {
        let c = ctx(13);
        let f = c.field();
        for a in (0..12).step_by(3) {
            for b in (0..12).step_by(3) {
                for lam in f.units() {
                    match c.prop31_check(a, b, lam) {
                        Ok(r) => assert!(r.passed, "a={a} b={b} λ={lam}: {r:?}"),
                        Err(e) => assert_eq!(e, Error::LambdaFourthPowerOne),
                    }
                }
            }
        }
        assert_eq!(
            c.prop31_check(3, 6, f.one()),
            Err(Error::LambdaFourthPowerOne)
        );
        assert_eq!(
            ctx(11).prop31_check(0, 0, f.one()),
            Err(Error::BadModulus { q: 11, m: 4 })
        );
    }

    #[test]
    fn exponent_validation() {
        let c = ctx(11);
        assert!(ExponentLists::new(&c, 5, &[0], &[2]).is_ok());
        assert!(ExponentLists::new(&c, 5, &[0], &[0]).is_err());
        assert!(ExponentLists::new(&c, 5, &[1], &[2]).is_err());
        assert!(ExponentLists::new(&c, 5, &[2, 4], &[2, 2]).is_err());
        assert!(ExponentLists::new(&c, 5, &[2], &[8]).is_err());
    }

    #[test]
    fn single_term_instance() {
        let c = ctx(11);
        let ex = ExponentLists::new(&c, 5, &[0], &[2]).unwrap();
        let lhs = c.thm32_lhs(&ex, c.field().one()).unwrap();
        assert!(lhs.re.is_finite() && lhs.im.is_finite());
        let r = c.thm32_check(&ex, c.field().one(), 1e-6).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn random_instances_and_order_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (d, p) in [(3u32, 7u64), (4, 13), (5, 11)] {
            let c = ctx(p);
            for _ in 0..30 {
                let ex = ExponentLists::random(&c, d, 3, &mut rng).unwrap();
                let lam = c.field().elem(rng.gen_range(1..p)).unwrap();
                let r = c.thm32_check(&ex, lam, 1e-6).unwrap();
                assert!(r.passed, "d={d} q={p} {ex:?} λ={lam}: {r:?}");

                let mut a = ex.a().to_vec();
                let mut b = ex.b().to_vec();
                a.reverse();
                b.rotate_left(1);
                let shuffled = ExponentLists::new(&c, d, &a, &b).unwrap();
                let lhs2 = c.thm32_lhs(&shuffled, lam).unwrap();
                assert!((lhs2 - r.lhs).norm() < 1e-9 * r.scale);
                let rhs2 = c.thm32_rhs(&shuffled, lam).unwrap().value;
                assert!((rhs2 - r.rhs).norm() < 1e-9 * r.scale);
            }
        }
    }

    #[test]
    fn zero_lambda_is_out_of_scope() {
        let c = ctx(11);
        let ex = ExponentLists::new(&c, 5, &[0], &[2]).unwrap();
        let r = c.thm32_rhs(&ex, c.field().zero()).unwrap();
        assert!(!r.in_scope);
        assert_eq!(r.value, Cx::new(0.0, 0.0));
        assert_eq!(c.thm32_lhs(&ex, c.field().zero()), Err(Error::LambdaZero));
    }
}
