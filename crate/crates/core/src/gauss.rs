//! Gauss sums, Jacobi sums and Greene's normalized Jacobi binomial.

use std::sync::OnceLock;

use crate::chars::{CharIdx, Cx, RootTables};
use crate::context::FieldContext;
use crate::error::{Error, Result};
use crate::field::FieldDesc;

/// `g(T^j)` for every `j in 0..q-1`, computed once per field.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussTable {
    values: Vec<Cx>,
}

impl GaussTable {
    /// Direct summation `g(T^j) = Σ_{x≠0} T^j(x) θ(x)`, `O(q²)` in total.
    pub fn build(field: &FieldDesc, roots: &RootTables) -> GaussTable {
        let n = field.unit_order() as usize;
        // Index the unit group by discrete log so the inner loop is a table walk.
        let theta_by_log: Vec<Cx> = (0..n)
            .map(|k| roots.zeta_p(field.trace(field.exp(k as i64))))
            .collect();
        let zeta = roots.zeta_q1_table();
        let values = (0..n)
            .map(|j| {
                let mut acc = Cx::new(0.0, 0.0);
                let mut idx = 0usize;
                for th in &theta_by_log {
                    acc += zeta[idx] * th;
                    idx += j;
                    if idx >= n {
                        idx -= n;
                    }
                }
                acc
            })
            .collect();
        GaussTable { values }
    }

    pub fn from_values(values: Vec<Cx>) -> GaussTable {
        GaussTable { values }
    }

    #[inline]
    pub fn get(&self, j: i64) -> Cx {
        let n = self.values.len() as i64;
        self.values[j.rem_euclid(n) as usize]
    }

    pub fn values(&self) -> &[Cx] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Lazily filled `(q-1) x (q-1)` table of binomial values.
pub(crate) struct BinomMemo {
    n: u32,
    cells: OnceLock<Box<[OnceLock<Cx>]>>,
}

impl BinomMemo {
    pub(crate) fn new(n: u32) -> BinomMemo {
        BinomMemo {
            n,
            cells: OnceLock::new(),
        }
    }

    fn get_or_compute(&self, a: u32, b: u32, f: impl FnOnce() -> Cx) -> Cx {
        let n = self.n as usize;
        let cells = self
            .cells
            .get_or_init(|| (0..n * n).map(|_| OnceLock::new()).collect());
        *cells[a as usize * n + b as usize].get_or_init(f)
    }
}

impl FieldContext {
    /// `g(χ) = Σ_x χ(x) θ(x)`, read from the table.
    #[inline]
    pub fn gauss_sum(&self, chi: CharIdx) -> Cx {
        self.gauss_table().get(chi.index() as i64)
    }

    /// `g(T^j)` for an integer exponent.
    #[inline]
    pub fn g(&self, j: i64) -> Cx {
        self.gauss_table().get(j)
    }

    /// `g(χ)` by summing over the field, bypassing the table.
    pub fn gauss_sum_direct(&self, chi: CharIdx) -> Cx {
        self.field()
            .elements()
            .map(|x| self.chi_eval(chi, x) * self.theta(x))
            .sum()
    }

    /// `J(A, B) = Σ_x A(x) B(1 - x)` by direct summation.
    pub fn jacobi_sum2(&self, a: CharIdx, b: CharIdx) -> Cx {
        let (ja, jb) = (a.index() as i64, b.index() as i64);
        self.jacobi_logs()
            .iter()
            .map(|&(lx, ly)| self.roots().zeta_q1(ja * lx as i64 + jb * ly as i64))
            .sum()
    }

    /// `g(A) g(B) / g(AB)`; valid when `A`, `B` and `AB` are nontrivial.
    pub fn jacobi_sum2_quotient(&self, a: CharIdx, b: CharIdx) -> Result<Cx> {
        self.jacobi_sum_n(&[a, b])
    }

    /// `g(χ_1)···g(χ_n) / g(χ_1···χ_n)` for nontrivial characters with
    /// nontrivial product.
    pub fn jacobi_sum_n(&self, chis: &[CharIdx]) -> Result<Cx> {
        if chis.iter().any(|c| c.is_trivial()) {
            return Err(Error::TrivialCharacter);
        }
        let prod = chis.iter().fold(self.trivial(), |acc, &c| acc * c);
        if prod.is_trivial() {
            return Err(Error::TrivialProduct);
        }
        let num: Cx = chis.iter().map(|&c| self.gauss_sum(c)).product();
        Ok(num / self.gauss_sum(prod))
    }

    /// Greene's binomial `(A over B) = B(-1)/q · Σ_x A(x) B̄(1 - x)`.
    ///
    /// Direct summation, memoized per field.
    pub fn binom(&self, a: CharIdx, b: CharIdx) -> Cx {
        let (ja, jb) = (a.index(), b.index());
        self.binom_memo().get_or_compute(ja, jb, || {
            let s = self.jacobi_sum2(a, b.conj());
            s * (self.chi_minus_one(jb as i64) / self.q() as f64)
        })
    }

    /// `binom` for integer exponents.
    #[inline]
    pub fn binom_j(&self, ja: i64, jb: i64) -> Cx {
        self.binom(self.char_idx(ja), self.char_idx(jb))
    }

    /// `|LHS - RHS|` for the Hasse–Davenport product relation with
    /// `χ = T^{(q-1)/m}`:
    /// `∏_{i<m} g(χ^i ψ) = -g(ψ^m) ψ^{-m}(m) ∏_{i<m} g(χ^i)`.
    pub fn hasse_davenport_check(&self, m: u32, psi: CharIdx) -> Result<f64> {
        let n = self.field().unit_order();
        if m == 0 || n % m != 0 {
            return Err(Error::BadModulus { q: self.q(), m });
        }
        let t = (n / m) as i64;
        let jp = psi.index() as i64;
        let lhs: Cx = (0..m as i64).map(|i| self.g(i * t + jp)).product();
        let base: Cx = (0..m as i64).map(|i| self.g(i * t)).product();
        let m_elem = self.field().from_int(m as i64);
        let rhs = -self.g(m as i64 * jp) * self.chi(-(m as i64) * jp, m_elem) * base;
        Ok((lhs - rhs).norm())
    }

    /// `g(T^{dj})` through the Hasse–Davenport quotient
    /// `∏_{i<d} g(T^{it+j}) / (T^{-dj}(d) ∏_{0<i<d} g(T^{it}))`.
    pub fn hd_gauss_of_dj(&self, d: u32, j: CharIdx) -> Result<Cx> {
        let n = self.field().unit_order();
        if d == 0 || n % d != 0 {
            return Err(Error::BadModulus { q: self.q(), m: d });
        }
        let t = (n / d) as i64;
        let jj = j.index() as i64;
        let num: Cx = (0..d as i64).map(|i| self.g(i * t + jj)).product();
        let den: Cx = (1..d as i64).map(|i| self.g(i * t)).product();
        let d_elem = self.field().from_int(d as i64);
        Ok(num / (self.chi(-(d as i64) * jj, d_elem) * den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, e: u32) -> FieldContext {
        FieldContext::for_field(p, e).unwrap()
    }

    #[test]
    fn table_invariants() {
        for (p, e) in [(5, 1), (13, 1), (3, 3), (2, 5), (7, 2)] {
            let c = ctx(p, e);
            let q = c.q() as f64;
            assert!((c.g(0) + Cx::new(1.0, 0.0)).norm() < 1e-9);
            for j in 1..c.field().unit_order() as i64 {
                assert!((c.g(j).norm() - q.sqrt()).abs() < 1e-9 * q.sqrt());
                let direct = c.gauss_sum_direct(c.char_idx(j));
                assert!((direct - c.g(j)).norm() < 1e-9 * q);
            }
        }
    }

    #[test]
    fn quadratic_gauss_sum_mod_five() {
        let c = ctx(5, 1);
        let v = c.gauss_sum(c.quadratic().unwrap());
        assert!((v - Cx::new(5f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn reflection() {
        let c = ctx(29, 1);
        let q = c.q() as f64;
        for j in 1..28 {
            let lhs = c.g(j) * c.g(-j);
            assert!((lhs - Cx::new(c.chi_minus_one(j) * q, 0.0)).norm() < 1e-8 * q);
        }
    }

    #[test]
    fn small_jacobi_sums() {
        let c = ctx(5, 1);
        let eps = c.trivial();
        assert!((c.jacobi_sum2(eps, eps) - Cx::new(3.0, 0.0)).norm() < 1e-12);
        let phi = c.quadratic().unwrap();
        assert!((c.jacobi_sum2(phi, phi) - Cx::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn jacobi_direct_matches_quotient() {
        let c = ctx(17, 1);
        let q = c.q() as f64;
        for a in 1..16 {
            for b in 1..16 {
                if (a + b) % 16 == 0 {
                    continue;
                }
                let (ca, cb) = (c.char_idx(a), c.char_idx(b));
                let quo = c.jacobi_sum2_quotient(ca, cb).unwrap();
                assert!((c.jacobi_sum2(ca, cb) - quo).norm() < 1e-8 * q);
            }
        }
    }

    #[test]
    fn three_fold_jacobi_sum_over_f7() {
        let c = ctx(7, 1);
        let f = c.field();
        // (1, 2, 3) multiplies to the trivial character when q = 7.
        let trivial = [c.char_idx(1), c.char_idx(2), c.char_idx(3)];
        assert_eq!(c.jacobi_sum_n(&trivial), Err(Error::TrivialProduct));
        let js = [c.char_idx(1), c.char_idx(2), c.char_idx(4)];
        let mut direct = Cx::new(0.0, 0.0);
        for x in f.elements() {
            for y in f.elements() {
                let z = f.sub(f.sub(f.one(), x), y);
                direct += c.chi_eval(js[0], x) * c.chi_eval(js[1], y) * c.chi_eval(js[2], z);
            }
        }
        let v = c.jacobi_sum_n(&js).unwrap();
        assert!((v - direct).norm() < 1e-9, "{v} vs {direct}");
    }

    #[test]
    fn jacobi_sum_n_preconditions() {
        let c = ctx(7, 1);
        assert_eq!(
            c.jacobi_sum_n(&[c.char_idx(0), c.char_idx(1)]),
            Err(Error::TrivialCharacter)
        );
        assert_eq!(
            c.jacobi_sum_n(&[c.char_idx(2), c.char_idx(4)]),
            Err(Error::TrivialProduct)
        );
    }

    #[test]
    fn binomial_values() {
        let c = ctx(13, 1);
        let q = 13.0;
        assert!((c.binom_j(0, 0) - Cx::new((q - 2.0) / q, 0.0)).norm() < 1e-12);
        for a in 1..12 {
            let lhs = c.binom_j(a, a);
            let rhs = c.jacobi_sum2(c.char_idx(a), c.char_idx(-a)) * (c.chi_minus_one(a) / q);
            assert!((lhs - rhs).norm() < 1e-12);
            assert_eq!(c.binom_j(a, a), lhs);
        }
    }

    #[test]
    fn hasse_davenport() {
        let c = ctx(13, 1);
        assert!(c.hasse_davenport_check(1, c.char_idx(5)).unwrap() < 1e-9);
        assert!(c.hasse_davenport_check(2, c.char_idx(1)).unwrap() < 1e-7 * 13.0);
        let c = ctx(11, 1);
        for j in 0..10 {
            let r = c.hasse_davenport_check(5, c.char_idx(j)).unwrap();
            assert!(r < 1e-7 * 11f64.powf(2.5));
        }
        assert_eq!(
            c.hasse_davenport_check(3, c.char_idx(1)),
            Err(Error::BadModulus { q: 11, m: 3 })
        );
    }

    #[test]
    fn gauss_of_dj_via_quotient() {
        let c = ctx(11, 1);
        let v = c.hd_gauss_of_dj(5, c.char_idx(0)).unwrap();
        assert!((v + Cx::new(1.0, 0.0)).norm() < 1e-9);
        let v = c.hd_gauss_of_dj(5, c.char_idx(1)).unwrap();
        assert!((v - c.g(5)).norm() < 1e-7 * 11f64.sqrt());
        let c = ctx(13, 1);
        for j in 0..12 {
            let v = c.hd_gauss_of_dj(4, c.char_idx(j)).unwrap();
            assert!((v - c.g(4 * j)).norm() < 1e-7 * 13f64.sqrt());
        }
    }
}
