//! Finite fields `F_q`, `q = p^e`, realized with eager log/antilog tables.
//!
//! Elements are canonical indices in `0..q`. For `e > 1` an index is the
//! base-`p` digit encoding of the residue polynomial, lowest coefficient
//! first, so the prime subfield occupies indices `0..p` and zero is index 0.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order. All tables are `O(q)`.
pub const MAX_ORDER: u64 = 1 << 22;

/// An element of a particular [`FieldDesc`], by canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A realized finite field with a fixed generator of its unit group.
#[derive(Clone)]
pub struct FieldDesc {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    generator: FqElem,
    /// `exp[k] = generator^k` for `k in 0..q-1`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl FieldDesc {
    /// Builds `F_{p^e}`.
    ///
    /// `modulus` holds the coefficients of a monic degree-`e` polynomial,
    /// lowest degree first (length `e + 1`, last entry 1). When omitted and
    /// `e > 1`, the smallest monic irreducible is used, ordering candidates
    /// by `a_0 + a_1 p + ... + a_{e-1} p^{e-1}`. The generator is the
    /// smallest canonical index of full multiplicative order.
    pub fn build(p: u64, e: u32, modulus: Option<&[u32]>) -> Result<FieldDesc> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, e })?;
        let p = p as u32;
        let q = q as u32;

        let modulus = match (e, modulus) {
            (1, None) => None,
            (_, Some(m)) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::MalformedModulus { expected: e });
                }
                if e > 1 && !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus);
                }
                if e == 1 {
                    // x + c: any monic linear polynomial gives the same field.
                    None
                } else {
                    Some(m.to_vec())
                }
            }
            (_, None) => Some(smallest_irreducible(p, e)),
        };

        let arith = PolyArith::new(p, e, modulus.as_deref());
        let generator = (1..q)
            .find(|&x| arith.has_full_order(x, q))
            .ok_or(Error::NoGeneratorFound)?;
        Self::with_tables(p, e, q, modulus, &arith, generator)
    }

    /// Rebuilds the same field with a different generator of `F_q^x`.
    pub fn with_generator(&self, generator: FqElem) -> Result<FieldDesc> {
        let g = generator.0;
        if g == 0 || g >= self.q {
            return Err(Error::NotAGenerator(g));
        }
        let arith = PolyArith::new(self.p, self.e, self.modulus.as_deref());
        if !arith.has_full_order(g, self.q) {
            return Err(Error::NotAGenerator(g));
        }
        Self::with_tables(self.p, self.e, self.q, self.modulus.clone(), &arith, g)
    }

    fn with_tables(
        p: u32,
        e: u32,
        q: u32,
        modulus: Option<Vec<u32>>,
        arith: &PolyArith,
        generator: u32,
    ) -> Result<FieldDesc> {
        let n = (q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for k in 0..n {
            if log[x as usize] != u32::MAX {
                return Err(Error::NoGeneratorFound);
            }
            log[x as usize] = k as u32;
            exp.push(x);
            x = arith.mul(x, generator);
        }
        if x != 1 {
            return Err(Error::NoGeneratorFound);
        }

        let mut field = FieldDesc {
            p,
            e,
            q,
            modulus,
            generator: FqElem(generator),
            exp,
            log,
            trace: Vec::new(),
        };
        field.trace = (0..q).map(|x| field.trace_direct(FqElem(x)).0).collect();
        Ok(field)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the unit group, `q - 1`.
    #[inline]
    pub fn unit_order(&self) -> u32 {
        self.q - 1
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn generator(&self) -> FqElem {
        self.generator
    }

    /// Element from its canonical index.
    pub fn elem(&self, index: u64) -> Result<FqElem> {
        if index < self.q as u64 {
            Ok(FqElem(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(FqElem)
    }

    pub fn units(&self) -> impl Iterator<Item = FqElem> + '_ {
        (1..self.q).map(FqElem)
    }

    #[inline]
    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        if self.e == 1 {
            let s = x.0 + y.0;
            return FqElem(if s >= self.p { s - self.p } else { s });
        }
        let (mut a, mut b, mut pw, mut r) = (x.0, y.0, 1u32, 0u32);
        for _ in 0..self.e {
            r += (a % self.p + b % self.p) % self.p * pw;
            a /= self.p;
            b /= self.p;
            pw = pw.wrapping_mul(self.p);
        }
        FqElem(r)
    }

    #[inline]
    pub fn neg(&self, x: FqElem) -> FqElem {
        if self.e == 1 {
            return FqElem(if x.0 == 0 { 0 } else { self.p - x.0 });
        }
        let (mut a, mut pw, mut r) = (x.0, 1u32, 0u32);
        for _ in 0..self.e {
            r += (self.p - a % self.p) % self.p * pw;
            a /= self.p;
            pw = pw.wrapping_mul(self.p);
        }
        FqElem(r)
    }

    #[inline]
    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        if x.0 == 0 || y.0 == 0 {
            return FqElem(0);
        }
        let n = self.q - 1;
        let k = self.log[x.0 as usize] + self.log[y.0 as usize];
        FqElem(self.exp[(if k >= n { k - n } else { k }) as usize])
    }

    pub fn inv(&self, x: FqElem) -> Result<FqElem> {
        if x.0 == 0 {
            return Err(Error::LogOfZero);
        }
        let n = self.q - 1;
        Ok(FqElem(
            self.exp[((n - self.log[x.0 as usize]) % n) as usize],
        ))
    }

    pub fn div(&self, x: FqElem, y: FqElem) -> Result<FqElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^k` for any integer `k`; `0^k` is 0 for `k > 0` and 1 for `k = 0`.
    pub fn pow(&self, x: FqElem, k: i64) -> Result<FqElem> {
        if x.0 == 0 {
            return match k {
                0 => Ok(FqElem(1)),
                k if k > 0 => Ok(FqElem(0)),
                _ => Err(Error::LogOfZero),
            };
        }
        let n = (self.q - 1) as i64;
        let e = (self.log[x.0 as usize] as i64 * k.rem_euclid(n)).rem_euclid(n);
        Ok(FqElem(self.exp[e as usize]))
    }

    /// Discrete logarithm to the base of the field generator, in `0..q-1`.
    #[inline]
    pub fn dlog(&self, x: FqElem) -> Result<u32> {
        if x.0 == 0 {
            Err(Error::LogOfZero)
        } else {
            Ok(self.log[x.0 as usize])
        }
    }

    /// `generator^k`.
    #[inline]
    pub fn exp(&self, k: i64) -> FqElem {
        let n = (self.q - 1) as i64;
        FqElem(self.exp[k.rem_euclid(n) as usize])
    }

    /// Absolute trace `x + x^p + ... + x^{p^{e-1}}`, as a residue mod `p`.
    #[inline]
    pub fn trace(&self, x: FqElem) -> u32 {
        self.trace[x.0 as usize]
    }

    fn trace_direct(&self, x: FqElem) -> FqElem {
        let mut acc = FqElem(0);
        let mut y = x;
        for _ in 0..self.e {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as i64).expect("nonnegative exponent");
        }
        debug_assert!(acc.0 < self.p, "trace must land in the prime subfield");
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Distinct prime factors of `n`.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime powers `3 <= q <= max`, ascending, as `(p, e, q)`.
pub fn prime_powers_up_to(max: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for p in primes_up_to(max) {
        let mut e = 1;
        let mut q = p;
        while q <= max {
            if q >= 3 {
                out.push((p, e, q));
            }
            e += 1;
            q *= p;
        }
    }
    out.sort_by_key(|&(_, _, q)| q);
    out
}

/// Polynomial arithmetic modulo the field modulus, used only while building tables.
struct PolyArith {
    p: u32,
    e: u32,
    modulus: Option<Vec<u32>>,
}

impl PolyArith {
    fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Self {
        PolyArith {
            p,
            e,
            modulus: modulus.map(<[u32]>::to_vec),
        }
    }

    fn digits(&self, x: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut x = x;
        for _ in 0..self.e {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    fn index(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p as u64;
        let Some(m) = &self.modulus else {
            return (x as u64 * y as u64 % p) as u32;
        };
        let a = self.digits(x);
        let b = self.digits(y);
        let mut prod = vec![0u64; 2 * self.e as usize];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
            }
        }
        let e = self.e as usize;
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                prod[k - e + i] = (prod[k - e + i] + (p - m[i] as u64) * c) % p;
            }
        }
        let r: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.index(&r)
    }

    fn pow(&self, x: u32, mut k: u64) -> u32 {
        let mut base = x;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn has_full_order(&self, x: u32, q: u32) -> bool {
        let n = (q - 1) as u64;
        if x == 0 {
            return false;
        }
        if n == 1 {
            return x == 1;
        }
        self.pow(x, n) == 1 && prime_factors(n).iter().all(|&r| self.pow(x, n / r) != 1)
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p` (coefficients low to high).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - db;
        for i in 0..db {
            r[shift + i] = (r[shift + i] + (p - b[i] as u64) * lead) % p;
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for r in 0..count {
            let mut g = Vec::with_capacity(k + 1);
            let mut x = r;
            for _ in 0..k {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    (0..count)
        .map(|r| {
            let mut f = Vec::with_capacity(e as usize + 1);
            let mut x = r;
            for _ in 0..e {
                f.push((x % p as u64) as u32);
                x /= p as u64;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_seven() {
        let f = FieldDesc::build(7, 1, None).unwrap();
        assert_eq!(f.q(), 7);
        assert_eq!(f.generator().index(), 3);
        let g = f.generator();
        assert_eq!(f.pow(g, 6).unwrap(), f.one());
        assert!((1..6).all(|k| f.pow(g, k).unwrap() != f.one()));
    }

    #[test]
    fn nine_uses_x_squared_plus_one() {
        let f = FieldDesc::build(3, 2, None).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.modulus(), Some(&[1, 0, 1][..]));
    }

    #[test]
    fn eleven_has_t_two_for_quintics() {
        let f = FieldDesc::build(11, 1, None).unwrap();
        assert_eq!(f.q() % 5, 1);
        assert_eq!((f.q() - 1) / 5, 2);
    }

    #[test]
    fn trace_of_indeterminate_in_f9() {
        // x^3 = -x modulo x^2 + 1, so tr(x) = x + x^3 = 0.
        let f = FieldDesc::build(3, 2, None).unwrap();
        let x = f.elem(3).unwrap();
        assert_eq!(f.trace(x), 0);
        // tr(1) = 1 + 1 = 2 in F_3.
        assert_eq!(f.trace(f.one()), 2);
    }

    #[test]
    fn trace_is_identity_on_prime_fields() {
        let f = FieldDesc::build(13, 1, None).unwrap();
        for x in f.elements() {
            assert_eq!(f.trace(x), x.index());
        }
    }

    #[test]
    fn dlog_examples() {
        let f = FieldDesc::build(11, 1, None).unwrap();
        assert_eq!(f.generator().index(), 2);
        assert_eq!(f.dlog(f.one()).unwrap(), 0);
        assert_eq!(f.dlog(f.generator()).unwrap(), 1);
        assert_eq!(f.dlog(f.elem(9).unwrap()).unwrap(), 6);
        assert_eq!(f.dlog(f.zero()), Err(Error::LogOfZero));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            FieldDesc::build(9, 1, None).unwrap_err(),
            Error::NotPrime(9)
        );
        assert_eq!(FieldDesc::build(3, 0, None).unwrap_err(), Error::ZeroDegree);
        // x^2 + 2 = (x + 1)(x + 2) over F_3.
        assert_eq!(
            FieldDesc::build(3, 2, Some(&[2, 0, 1])).unwrap_err(),
            Error::ReducibleModulus
        );
        assert_eq!(
            FieldDesc::build(3, 2, Some(&[1, 0, 2])).unwrap_err(),
            Error::MalformedModulus { expected: 2 }
        );
    }

    #[test]
    fn explicit_modulus_matches_default_structure() {
        // x^2 + x + 2 is irreducible over F_3.
        let f = FieldDesc::build(3, 2, Some(&[2, 1, 1])).unwrap();
        assert_eq!(f.q(), 9);
        let g = f.generator();
        assert_eq!(f.pow(g, 8).unwrap(), f.one());
    }

    #[test]
    fn with_generator_rejects_non_generators() {
        let f = FieldDesc::build(11, 1, None).unwrap();
        assert!(f.with_generator(f.elem(4).unwrap()).is_err());
        let h = f.with_generator(f.elem(7).unwrap()).unwrap();
        assert_eq!(h.generator().index(), 7);
        assert_eq!(h.dlog(f.elem(7).unwrap()).unwrap(), 1);
    }

    #[test]
    fn cubic_extension_tables_are_consistent() {
        let f = FieldDesc::build(3, 3, None).unwrap();
        assert_eq!(f.q(), 27);
        for x in f.units() {
            assert_eq!(f.exp(f.dlog(x).unwrap() as i64), x);
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
    }

    #[test]
    fn prime_powers_listing() {
        let qs: Vec<u64> = prime_powers_up_to(30)
            .into_iter()
            .map(|(_, _, q)| q)
            .collect();
        assert_eq!(
            qs,
            vec![3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
        );
    }
}
