//! Exact ground truth by enumeration: projective point counts on Dwork and
//! Fermat hypersurfaces, and traces of Frobenius on the Legendre family.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::chars::Cx;
use crate::context::FieldContext;
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldDesc, FqElem};
use crate::greene::{classical_trunc_mod_p, HgfParams, RationalParams};
use crate::identities::IdentityReport;

#[derive(Default)]
struct Tally {
    /// Points with some coordinate zero and `Σ x^d = 0`: on every fiber.
    always: u64,
    per_lambda: Vec<u64>,
}

impl Tally {
    fn new(q: usize) -> Tally {
        Tally {
            always: 0,
            per_lambda: vec![0; q],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.always += other.always;
        for (a, b) in self.per_lambda.iter_mut().zip(other.per_lambda) {
            *a += b;
        }
        self
    }
}

struct Walker<'a> {
    field: &'a FieldDesc,
    pow_d: Vec<FqElem>,
    log_d: i64,
}

impl Walker<'_> {
    /// Enumerates the remaining `rem` coordinates below a prefix with power
    /// sum `s`, product log `plog` and zero flag `zero`.
    fn walk(&self, rem: u32, s: FqElem, plog: i64, zero: bool, tally: &mut Tally) {
        if rem == 0 {
            self.leaf(s, plog, zero, tally);
            return;
        }
        let f = self.field;
        for x in f.elements() {
            let s2 = f.add(s, self.pow_d[x.index() as usize]);
            match f.dlog(x) {
                Ok(l) => self.walk(rem - 1, s2, plog + l as i64, zero, tally),
                Err(_) => self.walk(rem - 1, s2, plog, true, tally),
            }
        }
    }

    fn leaf(&self, s: FqElem, plog: i64, zero: bool, tally: &mut Tally) {
        if zero {
            if s.is_zero() {
                tally.always += 1;
            }
            return;
        }
        // Σ x^d = dλ ∏ x has the single solution λ = S / (d P).
        let idx = match self.field.dlog(s) {
            Ok(ls) => self.field.exp(ls as i64 - self.log_d - plog).index(),
            Err(_) => 0,
        };
        tally.per_lambda[idx as usize] += 1;
    }
}

/// Projective point counts of `X_λ^d` for every `λ ∈ F_q` at once, indexed
/// by the canonical index of `λ`.
///
/// Each projective point is visited once, normalized so that its first
/// nonzero coordinate is 1. A point with a zero coordinate lies on every
/// fiber or on none; any other point lies on exactly one.
pub fn brute_projective_counts(field: &FieldDesc, d: u32) -> Vec<u64> {
    assert!(d >= 2, "d must be at least 2");
    let q = field.q() as usize;
    let d_elem = field.from_int(d as i64);
    let walker = Walker {
        field,
        pow_d: field
            .elements()
            .map(|x| field.pow(x, d as i64).unwrap_or(x))
            .collect(),
        // Unused when p | d; that case is resolved after the walk.
        log_d: field.dlog(d_elem).map(|l| l as i64).unwrap_or(0),
    };
    let d_vanishes = d_elem.is_zero();
    let one = field.one();

    let mut total = Tally::new(q);
    for lead in 0..d {
        // Coordinates before `lead` are zero, coordinate `lead` is 1.
        let rem = d - 1 - lead;
        let zero = lead > 0;
        let tally = if rem == 0 {
            let mut t = Tally::new(q);
            walker.leaf(one, 0, zero, &mut t);
            t
        } else {
            field
                .elements()
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|x| {
                    let mut t = Tally::new(q);
                    let s = field.add(one, walker.pow_d[x.index() as usize]);
                    match field.dlog(x) {
                        Ok(l) => walker.walk(rem - 1, s, l as i64, zero, &mut t),
                        Err(_) => walker.walk(rem - 1, s, 0, true, &mut t),
                    }
                    t
                })
                .reduce(|| Tally::new(q), Tally::merge)
        };
        total = total.merge(tally);
    }

    if d_vanishes {
        // The right side is identically zero: every fiber is the Fermat one.
        let fermat = total.always + total.per_lambda[0];
        return vec![fermat; q];
    }
    total.per_lambda.iter().map(|&c| c + total.always).collect()
}

/// Projective point count of `X_λ^d` for one `λ`.
pub fn brute_projective_count(field: &FieldDesc, d: u32, lam: FqElem) -> u64 {
    brute_projective_counts(field, d)[lam.index() as usize]
}

/// Affine solution count of `Σ x_i^d = dλ ∏ x_i`, origin included. `O(q^d)`.
pub fn brute_affine_count(field: &FieldDesc, d: u32, lam: FqElem) -> u64 {
    let rhs_coef = field.mul(field.from_int(d as i64), lam);
    let q = field.q() as u64;
    let mut count = 0;
    let mut coords = vec![FqElem::ZERO; d as usize];
    for idx in 0..q.pow(d) {
        let mut r = idx;
        for c in coords.iter_mut() {
            *c = field.elem(r % q).unwrap();
            r /= q;
        }
        let s = coords.iter().fold(field.zero(), |acc, &x| {
            field.add(acc, field.pow(x, d as i64).unwrap_or(x))
        });
        let p = coords.iter().fold(rhs_coef, |acc, &x| field.mul(acc, x));
        if s == p {
            count += 1;
        }
    }
    count
}

/// Projective point count of the diagonal hypersurface `Σ x_i^d = 0`,
/// by convolving the distribution of `x^d` over the additive group.
pub fn brute_fermat_count(field: &FieldDesc, d: u32) -> u64 {
    let q = field.q() as usize;
    let mut single = vec![0u64; q];
    for x in field.elements() {
        let v = field.pow(x, d as i64).unwrap_or(x);
        single[v.index() as usize] += 1;
    }
    let mut dist = vec![0u64; q];
    dist[0] = 1;
    for _ in 0..d {
        let mut next = vec![0u64; q];
        for (s, &cs) in dist.iter().enumerate().filter(|(_, &c)| c > 0) {
            for (v, &cv) in single.iter().enumerate().filter(|(_, &c)| c > 0) {
                let sum = field.add(field.elem(s as u64).unwrap(), field.elem(v as u64).unwrap());
                next[sum.index() as usize] += cs * cv;
            }
        }
        dist = next;
    }
    (dist[0] - 1) / (q as u64 - 1)
}

fn check_legendre(p: u64, lam: i64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::OutOfRange(2));
    }
    let l = lam.rem_euclid(p as i64) as u64;
    if l == 0 || l == 1 {
        return Err(Error::BadLambda);
    }
    Ok(l)
}

fn legendre_symbol(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let (mut b, mut e, mut r) = (a, (p - 1) / 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// `a_{E_λ}(p) = -Σ_x φ(x(x-1)(x-λ))` for `E_λ: y² = x(x-1)(x-λ)`.
pub fn legendre_trace(p: u64, lam: i64) -> Result<i64> {
    let l = check_legendre(p, lam)?;
    Ok(-(0..p)
        .map(|x| legendre_symbol(x * ((x + p - 1) % p) % p * ((x + p - l) % p), p))
        .sum::<i64>())
}

/// The same trace as `p + 1 - #E_λ(F_p)` by enumerating `(x, y)`.
pub fn legendre_trace_enum(p: u64, lam: i64) -> Result<i64> {
    let l = check_legendre(p, lam)?;
    let mut affine = 0i64;
    for x in 0..p {
        let rhs = x * ((x + p - 1) % p) % p * ((x + p - l) % p) % p;
        affine += (0..p).filter(|y| y * y % p == rhs).count() as i64;
    }
    Ok(p as i64 + 1 - (affine + 1))
}

/// Compares the Legendre trace with `-φ(-1) p · _2F_1(φ, φ; ε | λ)`.
pub fn koike_check(ctx: &FieldContext, lam: i64) -> Result<IdentityReport> {
    let f = ctx.field();
    let p = f.p() as u64;
    if f.e() != 1 {
        return Err(Error::InvalidExponents(
            "the Legendre check needs a prime field".into(),
        ));
    }
    let a = legendre_trace(p, lam)?;
    let phi = ctx.quadratic().ok_or(Error::OutOfRange(2))?;
    let params = HgfParams::new(vec![phi, phi], vec![ctx.trivial()])?;
    let x = f.from_int(lam);
    let rhs = ctx.hgf(&params, x) * (-ctx.chi_minus_one(phi.index() as i64) * p as f64);
    let lhs = Cx::new(a as f64, 0.0);
    let mut report = IdentityReport::new(lhs, rhs, 1.0, 0.01);
    report.passed &= rhs.re.round() as i64 == a;
    Ok(report)
}

/// `a_{E_λ}(p) ≡ (-1)^{(p-1)/2} _2F_1(1/2, 1/2; 1 | λ)` truncated, mod `p`.
pub fn igusa_check(p: u64, lam: i64) -> Result<bool> {
    let a = legendre_trace(p, lam)?;
    let half = Ratio::new(1, 2);
    let params = RationalParams::new(vec![half, half], vec![Ratio::from_integer(1)]);
    let series = classical_trunc_mod_p(&params, lam, p)? as i64;
    let sign = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
    Ok((a - sign * series).rem_euclid(p as i64) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_and_projective_agree() {
        let f = FieldDesc::build(7, 1, None).unwrap();
        let all = brute_projective_counts(&f, 3);
        for lam in f.elements() {
            let n = brute_affine_count(&f, 3, lam);
            assert_eq!((n - 1) % 6, 0);
            assert_eq!((n - 1) / 6, all[lam.index() as usize], "λ={lam}");
        }
        assert_eq!(all[0], brute_fermat_count(&f, 3));
    }

    #[test]
    fn affine_agreement_over_extension_field() {
        let f = FieldDesc::build(2, 2, None).unwrap();
        let all = brute_projective_counts(&f, 3);
        for lam in f.elements() {
            let n = brute_affine_count(&f, 3, lam);
            assert_eq!((n - 1) / 3, all[lam.index() as usize]);
        }
    }

    #[test]
    fn conic_over_f13() {
        let f = FieldDesc::build(13, 1, None).unwrap();
        assert_eq!(brute_fermat_count(&f, 2), 2);
    }

    #[test]
    fn fermat_is_bounded() {
        let f = FieldDesc::build(11, 1, None).unwrap();
        let n = brute_fermat_count(&f, 5);
        let pn: u64 = (0..5).map(|i| 11u64.pow(i)).sum();
        assert!(n <= pn);
    }

    #[test]
    fn lambda_twist_invariance() {
        let f = FieldDesc::build(11, 1, None).unwrap();
        let all = brute_projective_counts(&f, 5);
        for lam in f.units() {
            for zeta in f.units().filter(|&z| f.pow(z, 5).unwrap() == f.one()) {
                let l2 = f.mul(lam, zeta);
                assert_eq!(all[lam.index() as usize], all[l2.index() as usize]);
            }
        }
    }

    #[test]
    fn legendre_traces() {
        assert_eq!(
            legendre_trace(7, 2).unwrap(),
            legendre_trace_enum(7, 2).unwrap()
        );
        for p in [3u64, 5, 7, 11, 13, 29] {
            for lam in 2..p as i64 {
                let a = legendre_trace(p, lam).unwrap();
                assert_eq!(a, legendre_trace_enum(p, lam).unwrap());
                assert!((a as f64).abs() <= 2.0 * (p as f64).sqrt());
            }
        }
        assert_eq!(legendre_trace(7, 1), Err(Error::BadLambda));
        assert_eq!(legendre_trace(7, 7), Err(Error::BadLambda));
    }

    #[test]
    fn koike_and_igusa_small() {
        for (p, lam) in [(5u64, 2i64), (3, 2), (7, 3)] {
            let c = FieldContext::for_field(p, 1).unwrap();
            assert!(koike_check(&c, lam).unwrap().passed);
            assert!(igusa_check(p, lam).unwrap());
        }
        assert_eq!(igusa_check(7, 0), Err(Error::BadLambda));
    }
}
