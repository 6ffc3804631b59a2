//! Multiplicative characters `T^j` and the additive character `θ`.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::context::FieldContext;
use crate::error::{Error, Result};
use crate::field::{FieldDesc, FqElem};

/// Complex scalar carrying every character-sum value.
pub type Cx = Complex64;

/// The character `T^j` of `F_q^x`, where `T` sends the field generator to
/// `exp(2πi/(q-1))`. Index 0 is the trivial character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharIdx {
    j: u32,
    modulus: u32,
}

impl CharIdx {
    /// `T^j` in a character group of order `modulus = q - 1`.
    pub fn new(j: i64, modulus: u32) -> CharIdx {
        debug_assert!(modulus > 0);
        CharIdx {
            j: j.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.j
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn is_trivial(self) -> bool {
        self.j == 0
    }

    /// Order of `T^j`, `(q-1)/gcd(j, q-1)`.
    pub fn order(self) -> u32 {
        self.modulus / gcd(self.j, self.modulus)
    }

    /// Complex conjugate (inverse) character.
    #[inline]
    pub fn conj(self) -> CharIdx {
        CharIdx::new(-(self.j as i64), self.modulus)
    }

    #[inline]
    pub fn pow(self, k: i64) -> CharIdx {
        CharIdx::new(self.j as i64 * k, self.modulus)
    }
}

impl Mul for CharIdx {
    type Output = CharIdx;

    fn mul(self, rhs: CharIdx) -> CharIdx {
        assert_eq!(self.modulus, rhs.modulus, "characters of different groups");
        CharIdx::new(self.j as i64 + rhs.j as i64, self.modulus)
    }
}

impl fmt::Display for CharIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^{}", self.j)
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Precomputed powers of `ζ_p` and `ζ_{q-1}`.
///
/// `ζ_p` is `exp(2πi r/p)` for a root exponent `r` coprime to `p`; `r = 1`
/// is the default embedding.
#[derive(Clone, Debug)]
pub struct RootTables {
    zeta_p: Vec<Cx>,
    zeta_q1: Vec<Cx>,
    root_exponent: u32,
}

impl RootTables {
    pub fn new(field: &FieldDesc, root_exponent: u32) -> Result<RootTables> {
        let p = field.p();
        if root_exponent % p == 0 {
            return Err(Error::BadRootExponent {
                r: root_exponent,
                p,
            });
        }
        let n = field.unit_order();
        let r = (root_exponent % p) as u64;
        let zeta_p = (0..p as u64)
            .map(|k| unit_root((k * r) % p as u64, p as u64))
            .collect();
        let zeta_q1 = (0..n as u64).map(|k| unit_root(k, n as u64)).collect();
        Ok(RootTables {
            zeta_p,
            zeta_q1,
            root_exponent: root_exponent % p,
        })
    }

    #[inline]
    pub fn zeta_p(&self, k: u32) -> Cx {
        self.zeta_p[k as usize]
    }

    /// `ζ_{q-1}^k` for any integer `k`.
    #[inline]
    pub fn zeta_q1(&self, k: i64) -> Cx {
        let n = self.zeta_q1.len() as i64;
        self.zeta_q1[k.rem_euclid(n) as usize]
    }

    pub fn root_exponent(&self) -> u32 {
        self.root_exponent
    }

    pub fn zeta_p_table(&self) -> &[Cx] {
        &self.zeta_p
    }

    pub fn zeta_q1_table(&self) -> &[Cx] {
        &self.zeta_q1
    }
}

/// `exp(2πi k/n)`, folded so that the argument stays in `[-π, π]`.
fn unit_root(k: u64, n: u64) -> Cx {
    let k = k % n;
    let signed = if 2 * k > n {
        k as f64 - n as f64
    } else {
        k as f64
    };
    let (s, c) = (TAU * signed / n as f64).sin_cos();
    Cx::new(c, s)
}

impl FieldContext {
    /// `T^j` from an integer exponent.
    #[inline]
    pub fn char_idx(&self, j: i64) -> CharIdx {
        CharIdx::new(j, self.field().unit_order())
    }

    /// The trivial character `ε`.
    pub fn trivial(&self) -> CharIdx {
        self.char_idx(0)
    }

    /// The quadratic character `φ = T^{(q-1)/2}`, for odd `q`.
    pub fn quadratic(&self) -> Option<CharIdx> {
        let n = self.field().unit_order();
        (n % 2 == 0).then(|| self.char_idx((n / 2) as i64))
    }

    /// `χ(x)` for `χ = T^j`, with `χ(0) = 0` for every `χ`, the trivial one included.
    #[inline]
    pub fn chi_eval(&self, chi: CharIdx, x: FqElem) -> Cx {
        self.chi(chi.index() as i64, x)
    }

    /// `T^j(x)` for a raw integer exponent.
    #[inline]
    pub fn chi(&self, j: i64, x: FqElem) -> Cx {
        match self.field().dlog(x) {
            Ok(l) => self.roots().zeta_q1(j * l as i64),
            Err(_) => Cx::new(0.0, 0.0),
        }
    }

    /// `T^j(-1)`, always `±1`.
    #[inline]
    pub fn chi_minus_one(&self, j: i64) -> f64 {
        let f = self.field();
        let n = f.unit_order() as i64;
        if n % 2 == 1 {
            // characteristic 2: -1 = 1
            return 1.0;
        }
        // -1 = g^{n/2}
        if (j.rem_euclid(n) * (n / 2)).rem_euclid(n) == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `θ(x) = ζ_p^{tr(x)}`.
    #[inline]
    pub fn theta(&self, x: FqElem) -> Cx {
        self.roots().zeta_p(self.field().trace(x))
    }
}
