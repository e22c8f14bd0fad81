//! Sparse polynomials in two variables `a` (alpha) and `d` (delta) with
//! arbitrary-precision integer coefficients.
//!
//! Terms are kept sorted ascending by `(ea, ed)` with no zero coefficients,
//! so structural equality is polynomial equality. The same lexicographic
//! order drives exact division.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default bound on any single exponent.
pub const EXPONENT_CAP: u32 = 1_000_000;

// Largest dense scratch grid used by multiplication and division.
const DENSE_LIMIT: usize = 1 << 22;

/// `a^ea * d^ed`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub ea: u32,
    pub ed: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { ea: 0, ed: 0 };

    pub fn new(ea: u32, ed: u32) -> Self {
        Monomial { ea, ed }
    }

    pub fn total_degree(self) -> u64 {
        self.ea as u64 + self.ed as u64
    }

    pub fn checked_mul(self, other: Monomial, cap: u32) -> Result<Monomial> {
        let ea = self.ea as u64 + other.ea as u64;
        let ed = self.ed as u64 + other.ed as u64;
        check_cap(ea.max(ed), cap)?;
        Ok(Monomial::new(ea as u32, ed as u32))
    }

    /// Divides if `other` divides `self`.
    pub fn checked_div(self, other: Monomial) -> Option<Monomial> {
        Some(Monomial::new(
            self.ea.checked_sub(other.ea)?,
            self.ed.checked_sub(other.ed)?,
        ))
    }

    /// Text form with no coefficient, e.g. `a^2*d`; empty for 1.
    fn write_vars(self, out: &mut String) {
        let mut first = true;
        for (var, e) in [("a", self.ea), ("d", self.ed)] {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(var);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return f.write_str("1");
        }
        let mut s = String::new();
        self.write_vars(&mut s);
        f.write_str(&s)
    }
}

fn check_cap(needed: u64, cap: u32) -> Result<()> {
    if needed > cap as u64 {
        Err(Error::ExponentCap {
            cap: cap as u64,
            needed,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// The variable `a`.
    pub fn alpha() -> Self {
        Poly::term(1, Monomial::new(1, 0))
    }

    /// The variable `d`.
    pub fn delta() -> Self {
        Poly::term(1, Monomial::new(0, 1))
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(Monomial, BigInt)> = terms.into_iter().map(|(m, c)| (m, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    /// Terms in ascending `(ea, ed)` order.
    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: Monomial) -> BigInt {
        match self.terms.binary_search_by_key(&m, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Largest term in `(ea, ed)` lexicographic order.
    pub fn leading_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.0.total_degree()).max()
    }

    fn max_exponents(&self) -> (u32, u32) {
        self.terms
            .iter()
            .fold((0, 0), |(a, d), (m, _)| (a.max(m.ea), d.max(m.ed)))
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*mb, sign(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (*m, sign(c))));
        Poly { terms: out }
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.try_mul_capped(other, EXPONENT_CAP)
    }

    pub fn try_mul_capped(&self, other: &Poly, cap: u32) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let (a1, d1) = self.max_exponents();
        let (a2, d2) = other.max_exponents();
        check_cap((a1 as u64 + a2 as u64).max(d1 as u64 + d2 as u64), cap)?;
        let (wa, wd) = (a1 as usize + a2 as usize + 1, d1 as usize + d2 as usize + 1);
        if wa.saturating_mul(wd) <= DENSE_LIMIT {
            let mut grid = vec![BigInt::zero(); wa * wd];
            for (m1, c1) in &self.terms {
                for (m2, c2) in &other.terms {
                    let idx = (m1.ea + m2.ea) as usize * wd + (m1.ed + m2.ed) as usize;
                    grid[idx] += c1 * c2;
                }
            }
            Ok(Poly::from_grid(grid, wd))
        } else {
            let terms = self.terms.iter().flat_map(|(m1, c1)| {
                other
                    .terms
                    .iter()
                    .map(move |(m2, c2)| (Monomial::new(m1.ea + m2.ea, m1.ed + m2.ed), c1 * c2))
            });
            Ok(Poly::from_terms(terms))
        }
    }

    fn from_grid(grid: Vec<BigInt>, wd: usize) -> Poly {
        let terms = grid
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (Monomial::new((idx / wd) as u32, (idx % wd) as u32), c))
            .collect();
        Poly { terms }
    }

    /// `self^k` by repeated squaring.
    pub fn try_pow(&self, k: u64) -> Result<Poly> {
        self.try_pow_capped(k, EXPONENT_CAP)
    }

    pub fn try_pow_capped(&self, mut k: u64, cap: u32) -> Result<Poly> {
        let (a, d) = self.max_exponents();
        check_cap((a as u64).max(d as u64).saturating_mul(k), cap)?;
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul_capped(&base, cap)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul_capped(&base, cap)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// The quotient `self / divisor`, which must be exact in `Z[a, d]`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let Some((lead, lc)) = divisor.leading_term().cloned() else {
            return Err(Error::InexactDivision("division by zero".into()));
        };
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if divisor.terms.len() == 1 {
            return self.div_by_term(lead, &lc);
        }
        let (wa, wd) = self.max_exponents();
        let (wa, wd) = (wa as usize + 1, wd as usize + 1);
        if wa.saturating_mul(wd) <= DENSE_LIMIT {
            self.exact_div_dense(divisor, lead, &lc, wa, wd)
        } else {
            self.exact_div_sparse(divisor, lead, &lc)
        }
    }

    fn div_by_term(&self, lead: Monomial, lc: &BigInt) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let q = m
                .checked_div(lead)
                .ok_or_else(|| self.inexact(&Poly::term(lc.clone(), lead)))?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(self.inexact(&Poly::term(lc.clone(), lead)));
            }
            terms.push((q, qc));
        }
        Ok(Poly { terms })
    }

    // Sweeps the dividend grid in descending lexicographic order; every
    // subtraction only touches cells that come later in the sweep.
    fn exact_div_dense(&self, divisor: &Poly, lead: Monomial, lc: &BigInt, wa: usize, wd: usize) -> Result<Poly> {
        let mut grid = vec![BigInt::zero(); wa * wd];
        for (m, c) in &self.terms {
            grid[m.ea as usize * wd + m.ed as usize] = c.clone();
        }
        let (la, ld) = (lead.ea as usize, lead.ed as usize);
        let mut quotient = Vec::new();
        for x in (0..wa).rev() {
            for y in (0..wd).rev() {
                let idx = x * wd + y;
                if grid[idx].is_zero() {
                    continue;
                }
                if x < la || y < ld {
                    return Err(self.inexact(divisor));
                }
                let (qc, r) = grid[idx].div_rem(lc);
                if !r.is_zero() {
                    return Err(self.inexact(divisor));
                }
                let (qa, qd) = (x - la, y - ld);
                for (m, c) in &divisor.terms {
                    let cell = (qa + m.ea as usize) * wd + qd + m.ed as usize;
                    grid[cell] -= &qc * c;
                }
                debug_assert!(grid[idx].is_zero());
                quotient.push((Monomial::new(qa as u32, qd as u32), qc));
            }
        }
        quotient.reverse();
        Ok(Poly { terms: quotient })
    }

    fn exact_div_sparse(&self, divisor: &Poly, lead: Monomial, lc: &BigInt) -> Result<Poly> {
        let mut rem: std::collections::BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(lead).ok_or_else(|| self.inexact(divisor))?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(self.inexact(divisor));
            }
            for (dm, dc) in &divisor.terms[..divisor.terms.len() - 1] {
                let cell = Monomial::new(qm.ea + dm.ea, qm.ed + dm.ed);
                let entry = rem.entry(cell).or_default();
                *entry -= &qc * dc;
                if entry.is_zero() {
                    rem.remove(&cell);
                }
            }
            quotient.push((qm, qc));
        }
        quotient.reverse();
        Ok(Poly { terms: quotient })
    }

    fn inexact(&self, divisor: &Poly) -> Error {
        Error::InexactDivision(format!("({}) / ({})", abbreviate(&self.to_string()), abbreviate(&divisor.to_string())))
    }

    /// Exact integer value at `a = alpha`, `d = delta`.
    pub fn eval_int(&self, alpha: &BigInt, delta: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow(alpha.clone(), m.ea as usize) * num_traits::pow(delta.clone(), m.ed as usize);
        }
        acc
    }

    /// `a -> a^2`, `d -> d^2`.
    pub fn substitute_squares(&self) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (ea, ed) = (2 * m.ea as u64, 2 * m.ed as u64);
            check_cap(ea.max(ed), EXPONENT_CAP)?;
            terms.push((Monomial::new(ea as u32, ed as u32), c.clone()));
        }
        // Doubling both exponents preserves the lexicographic order.
        Ok(Poly { terms })
    }

    /// Specialises `a := 1`.
    pub fn at_alpha_one(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (Monomial::new(0, m.ed), c.clone())))
    }

    /// Human-readable form, highest power of `d` first, e.g. `d^3-3*d` or
    /// `a^2*d^2-a^4`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut order: Vec<&(Monomial, BigInt)> = self.terms.iter().collect();
        order.sort_by(|x, y| (y.0.ed, y.0.ea).cmp(&(x.0.ed, x.0.ea)));
        let mut s = String::new();
        for (k, (m, c)) in order.into_iter().enumerate() {
            if c.is_negative() {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            let mag = c.abs();
            if *m == Monomial::ONE {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                m.write_vars(&mut s);
            }
        }
        s
    }
}

fn abbreviate(s: &str) -> String {
    if s.len() > 80 {
        format!("{}...", &s[..77])
    } else {
        s.to_string()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    ea: u32,
    ed: u32,
    c: String,
}

/// JSON form: `[{"ea": .., "ed": .., "c": "<decimal>"}, ...]` in ascending
/// `(ea, ed)` order.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                ea: m.ea,
                ed: m.ed,
                c: c.to_string(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(deserializer)?;
        let terms = terms
            .into_iter()
            .map(|t| {
                t.c.parse::<BigInt>()
                    .map(|c| (Monomial::new(t.ea, t.ed), c))
                    .map_err(serde::de::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::from_terms(terms))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

/// Panics if the exponent cap is exceeded; use [`Poly::try_mul`] to get an
/// error instead.
impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial product exceeds the exponent cap")
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    a + b
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    a - b
}

pub fn neg(a: &Poly) -> Poly {
    -a
}

pub fn mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.try_mul(b)
}

pub fn pow(a: &Poly, k: u64) -> Result<Poly> {
    a.try_pow(k)
}

pub fn exact_div(a: &Poly, b: &Poly) -> Result<Poly> {
    a.exact_div(b)
}

pub fn eval_int(a: &Poly, alpha: i64, delta: i64) -> BigInt {
    a.eval_int(&BigInt::from(alpha), &BigInt::from(delta))
}

pub fn substitute_squares(a: &Poly) -> Result<Poly> {
    a.substitute_squares()
}

/// Chebyshev polynomial of the first kind in `d`, normalised by
/// `T_0 = 2`, `T_1 = d`, `T_i = d T_{i-1} - T_{i-2}`.
pub fn chebyshev_t(i: usize) -> Poly {
    let mut prev = Poly::constant(2);
    if i == 0 {
        return prev;
    }
    let delta = Poly::delta();
    let mut cur = delta.clone();
    for _ in 1..i {
        let next = &(&delta * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `T_i` evaluated at an integer, by the same recurrence.
pub fn chebyshev_t_eval(i: usize, delta: &BigInt) -> BigInt {
    let mut prev = BigInt::from(2);
    if i == 0 {
        return prev;
    }
    let mut cur = delta.clone();
    for _ in 1..i {
        let next = delta * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
