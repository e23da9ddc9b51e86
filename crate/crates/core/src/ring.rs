//! Exact coefficient rings.
//!
//! Four rings are supported: the rationals, the integers, prime fields
//! `F_p` with a machine-word prime, and the Laurent ring `Q[t, t^-1]` in the
//! distinguished coefficient symbol `t`. A [`Coeff`] carries its ring in its
//! variant, so two coefficients of different rings never combine silently:
//! mixing them is an internal invariant violation and panics. Fallible,
//! user-facing ring checks happen one level up on [`crate::Poly`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Tag of a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Q,
    Z,
    Fp(u64),
    /// `Q[t, t^-1]`.
    QLaurentT,
}

/// Largest prime modulus accepted for `F_p`; products of residues fit in `u128`
/// and primality is checked by trial division.
pub const MAX_PRIME: u64 = u32::MAX as u64;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Ring {
    pub fn fp(p: u64) -> Result<Ring> {
        if p > MAX_PRIME {
            return Err(Error::Invalid(format!("modulus {p} exceeds the machine-word bound {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::Invalid(format!("modulus {p} is not prime")));
        }
        Ok(Ring::Fp(p))
    }

    /// True when every nonzero element is invertible.
    pub fn is_field(self) -> bool {
        matches!(self, Ring::Q | Ring::Fp(_))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::Fp(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> Coeff {
        match self {
            Ring::Q => Coeff::Q(BigRational::zero()),
            Ring::Z => Coeff::Z(BigInt::zero()),
            Ring::Fp(p) => Coeff::Fp { value: 0, p },
            Ring::QLaurentT => Coeff::T(LaurentT::zero()),
        }
    }

    pub fn one(self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coeff {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self, n: &BigInt) -> Coeff {
        match self {
            Ring::Q => Coeff::Q(BigRational::from_integer(n.clone())),
            Ring::Z => Coeff::Z(n.clone()),
            Ring::Fp(p) => Coeff::Fp { value: reduce_bigint(n, p), p },
            Ring::QLaurentT => Coeff::T(LaurentT::constant(BigRational::from_integer(n.clone()))),
        }
    }

    /// Embeds the rational `num/den`; fails over `Z` when `den` does not
    /// divide `num`, and over `F_p` when `den` vanishes mod `p`.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        match self {
            Ring::Q => Ok(Coeff::Q(BigRational::new(num.clone(), den.clone()))),
            Ring::QLaurentT => Ok(Coeff::T(LaurentT::constant(BigRational::new(num.clone(), den.clone())))),
            Ring::Z => {
                let (q, r) = num.div_rem(den);
                if r.is_zero() {
                    Ok(Coeff::Z(q))
                } else {
                    Err(Error::Invalid(format!("{num}/{den} is not an integer")))
                }
            }
            Ring::Fp(p) => {
                let d = Coeff::Fp { value: reduce_bigint(den, p), p };
                let inv = d
                    .inv()
                    .ok_or_else(|| Error::Invalid(format!("{den} is not invertible mod {p}")))?;
                Ok(&Coeff::Fp { value: reduce_bigint(num, p), p } * &inv)
            }
        }
    }

    pub fn from_rational(self, r: &BigRational) -> Result<Coeff> {
        self.from_ratio(r.numer(), r.denom())
    }

    /// The distinguished symbol `t` of `Q[t, t^-1]` raised to `k`.
    pub fn t_power(self, k: i64) -> Option<Coeff> {
        match self {
            Ring::QLaurentT => Some(Coeff::T(LaurentT::monomial(BigRational::one(), k))),
            _ => None,
        }
    }

    pub fn name(self) -> String {
        match self {
            Ring::Q => "q".into(),
            Ring::Z => "z".into(),
            Ring::Fp(p) => format!("fp:{p}"),
            Ring::QLaurentT => "qlaurent".into(),
        }
    }

    /// Parses `q`, `z`, `fp:<p>` or `qlaurent`.
    pub fn parse(s: &str) -> Result<Ring> {
        match s.trim() {
            "q" | "Q" => Ok(Ring::Q),
            "z" | "Z" => Ok(Ring::Z),
            "qlaurent" => Ok(Ring::QLaurentT),
            other => {
                if let Some(p) = other.strip_prefix("fp:") {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::Invalid(format!("bad prime in ring name `{other}`")))?;
                    Ring::fp(p)
                } else {
                    Err(Error::Invalid(format!("unknown ring `{other}`")))
                }
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Element of `Q[t, t^-1]`: finitely supported map from exponents of `t` to
/// nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentT {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentT { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut out = LaurentT::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of `Q[t, t^-1]` are exactly the nonzero monomials `c t^k`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Exact quotient in `Q[t, t^-1]`, by long division after clearing the
    /// lowest powers of `t`.
    pub fn div_exact(&self, other: &LaurentT) -> Option<LaurentT> {
        let (&lo_b, _) = other.terms.iter().next()?;
        let Some((&lo_a, _)) = self.terms.iter().next() else {
            return Some(LaurentT::zero());
        };
        let den: Vec<(i64, BigRational)> = other.terms.iter().map(|(k, c)| (k - lo_b, c.clone())).collect();
        let (db, lead_b) = den.last().cloned().expect("nonzero");
        let mut rem: BTreeMap<i64, BigRational> = self.terms.iter().map(|(k, c)| (k - lo_a, c.clone())).collect();
        let mut quot = LaurentT::zero();
        while let Some((&dr, cr)) = rem.iter().next_back() {
            if dr < db {
                return None;
            }
            let q = cr / &lead_b;
            let shift = dr - db;
            for (k, c) in &den {
                let slot = rem.entry(k + shift).or_insert_with(BigRational::zero);
                *slot -= &q * c;
                if slot.is_zero() {
                    rem.remove(&(k + shift));
                }
            }
            quot.add_term(shift + lo_a - lo_b, q);
        }
        Some(quot)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for LaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            match (*k, abs.is_one()) {
                (0, _) => write!(f, "{}", fmt_rational(&abs))?,
                (k, true) => write!(f, "{}", t_pow(k))?,
                (k, false) => write!(f, "{}*{}", fmt_rational(&abs), t_pow(k))?,
            }
        }
        Ok(())
    }
}

fn t_pow(k: i64) -> String {
    if k == 1 {
        "t".into()
    } else {
        format!("t^{k}")
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A coefficient tagged with its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Z(BigInt),
    Fp { value: u64, p: u64 },
    T(LaurentT),
}

impl Coeff {
    pub fn ring(&self) -> Ring {
        match self {
            Coeff::Q(_) => Ring::Q,
            Coeff::Z(_) => Ring::Z,
            Coeff::Fp { p, .. } => Ring::Fp(*p),
            Coeff::T(_) => Ring::QLaurentT,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(r) => r.is_zero(),
            Coeff::Z(n) => n.is_zero(),
            Coeff::Fp { value, .. } => *value == 0,
            Coeff::T(l) => l.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring().one()
    }

    /// Unit test in the coefficient's own ring: nonzero over fields, `+-1` over
    /// `Z`, nonzero monomial over `Q[t, t^-1]`.
    pub fn is_unit(&self) -> bool {
        match self {
            Coeff::Q(r) => !r.is_zero(),
            Coeff::Z(n) => n.abs().is_one(),
            Coeff::Fp { value, .. } => *value != 0,
            Coeff::T(l) => l.is_unit(),
        }
    }

    pub fn inv(&self) -> Option<Coeff> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            Coeff::Q(r) => Coeff::Q(r.recip()),
            Coeff::Z(n) => Coeff::Z(n.clone()),
            Coeff::Fp { value, p } => Coeff::Fp { value: pow_mod(*value, p - 2, *p), p: *p },
            Coeff::T(l) => {
                let (k, c) = l.terms().next().expect("unit has one term");
                Coeff::T(LaurentT::monomial(c.recip(), -k))
            }
        })
    }

    pub fn pow(&self, mut exp: u64) -> Coeff {
        let mut base = self.clone();
        let mut acc = self.ring().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / other` when it exists in the ring.
    pub fn div_exact(&self, other: &Coeff) -> Option<Coeff> {
        match (self, other) {
            (Coeff::Z(a), Coeff::Z(b)) => {
                if b.is_zero() {
                    return None;
                }
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(Coeff::Z(q))
            }
            (Coeff::T(a), Coeff::T(b)) => a.div_exact(b).map(Coeff::T),
            _ => other.inv().map(|i| self * &i),
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Coeff::Q(r) => Some(r.clone()),
            Coeff::Z(n) => Some(BigRational::from_integer(n.clone())),
            Coeff::T(l) => l.as_rational(),
            Coeff::Fp { .. } => None,
        }
    }

    pub fn as_bigint(&self) -> Option<BigInt> {
        match self {
            Coeff::Z(n) => Some(n.clone()),
            Coeff::Q(r) if r.is_integer() => Some(r.numer().clone()),
            _ => None,
        }
    }

    /// True when the printed form needs a leading minus sign.
    pub(crate) fn is_negative_display(&self) -> bool {
        match self {
            Coeff::Q(r) => r.is_negative(),
            Coeff::Z(n) => n.is_negative(),
            Coeff::T(l) => l.as_rational().is_some_and(|r| r.is_negative()),
            Coeff::Fp { .. } => false,
        }
    }

    /// Printed magnitude, used after a sign has already been written.
    pub(crate) fn abs_display(&self) -> String {
        match self {
            Coeff::Q(r) => fmt_rational(&r.abs()),
            Coeff::Z(n) => n.abs().to_string(),
            Coeff::Fp { value, .. } => value.to_string(),
            Coeff::T(l) => match l.as_rational() {
                Some(r) => fmt_rational(&r.abs()),
                None => l.to_string(),
            },
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(r) => f.write_str(&fmt_rational(r)),
            Coeff::Z(n) => write!(f, "{n}"),
            Coeff::Fp { value, .. } => write!(f, "{value}"),
            Coeff::T(l) => write!(f, "{l}"),
        }
    }
}

fn mismatch(a: &Coeff, b: &Coeff) -> ! {
    panic!("coefficient ring mismatch: {} vs {}", a.ring(), b.ring())
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::Z(a), Coeff::Z(b)) => Coeff::Z(a + b),
            (Coeff::Fp { value: a, p }, Coeff::Fp { value: b, p: q }) if p == q => {
                Coeff::Fp { value: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            (Coeff::T(a), Coeff::T(b)) => {
                let mut out = a.clone();
                for (k, c) in b.terms() {
                    out.add_term(*k, c.clone());
                }
                Coeff::T(out)
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Z(a) => Coeff::Z(-a),
            Coeff::Fp { value, p } => Coeff::Fp { value: (p - value) % p, p: *p },
            Coeff::T(a) => Coeff::T(LaurentT::from_terms(a.terms().map(|(k, c)| (*k, -c)))),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::Z(a), Coeff::Z(b)) => Coeff::Z(a * b),
            (Coeff::Fp { value: a, p }, Coeff::Fp { value: b, p: q }) if p == q => {
                Coeff::Fp { value: mul_mod(*a, *b, *p), p: *p }
            }
            (Coeff::T(a), Coeff::T(b)) => {
                let mut out = LaurentT::zero();
                for (ka, ca) in a.terms() {
                    for (kb, cb) in b.terms() {
                        out.add_term(ka + kb, ca * cb);
                    }
                }
                Coeff::T(out)
            }
            _ => mismatch(self, rhs),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}
