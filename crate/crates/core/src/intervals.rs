//! Exact arithmetic on finite unions of intervals with rational endpoints.
//!
//! Every endpoint is a [`Rational`] backed by arbitrary-precision integers,
//! so membership, disjointness and the sum-free test are decided exactly.
//!
//! Text format: parts separated by commas, each written as `(lo,hi)`,
//! `[lo,hi]`, `(lo,hi]` or `[lo,hi)`, with endpoints as `p/q` or integers.
//! The empty set is the empty string.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in canonical form.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Largest multiple of `1/den` that is `<= x`.
pub fn floor_to_grid(x: &Rational, den: &BigInt) -> Rational {
    let scaled = x * Rational::from_integer(den.clone());
    Rational::new(scaled.floor().to_integer(), den.clone())
}

/// Smallest multiple of `1/den` that is `>= x`.
pub fn ceil_to_grid(x: &Rational, den: &BigInt) -> Rational {
    let scaled = x * Rational::from_integer(den.clone());
    Rational::new(scaled.ceil().to_integer(), den.clone())
}

/// Smallest integer strictly greater than `x`.
pub fn next_integer_above(x: &Rational) -> BigInt {
    x.floor().to_integer() + BigInt::one()
}

/// Lossy conversion used only for reporting.
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// An interval with rational endpoints, each endpoint open or closed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        match lo.cmp(&hi) {
            Ordering::Less => Ok(Self { lo, hi, lo_closed, hi_closed }),
            Ordering::Equal if lo_closed && hi_closed => Ok(Self { lo, hi, lo_closed, hi_closed }),
            _ => Err(Error::InvalidInterval(format!(
                "{}{},{}{}",
                if lo_closed { '[' } else { '(' },
                fmt_rational(&lo),
                fmt_rational(&hi),
                if hi_closed { ']' } else { ')' }
            ))),
        }
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x, lo_closed: true, hi_closed: true }
    }

    /// Builds the interval if it is nonempty.
    fn try_new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Option<Self> {
        Self::new(lo, hi, lo_closed, hi_closed).ok()
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_open(&self) -> bool {
        !self.lo_closed && !self.hi_closed
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        above
            && match x.cmp(&self.hi) {
                Ordering::Less => true,
                Ordering::Equal => self.hi_closed,
                Ordering::Greater => false,
            }
    }

    pub fn contains_closure(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn closure(&self) -> Self {
        Self { lo: self.lo.clone(), hi: self.hi.clone(), lo_closed: true, hi_closed: true }
    }

    /// Translate by `t`.
    pub fn shift(&self, t: &Rational) -> Self {
        Self { lo: &self.lo + t, hi: &self.hi + t, ..self.clone() }
    }

    /// Reflect through zero: `{-x : x in self}`.
    pub fn negate(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Self::try_new(lo, hi, lo_closed, hi_closed)
    }

    /// `self \ other` as at most two pieces.
    fn difference(&self, other: &Self) -> Vec<Self> {
        if self.intersect(other).is_none() {
            return vec![self.clone()];
        }
        let mut out = Vec::with_capacity(2);
        // Piece strictly left of `other`.
        if self.lo < other.lo || (self.lo == other.lo && self.lo_closed && !other.lo_closed) {
            if let Some(p) =
                Self::try_new(self.lo.clone(), other.lo.clone(), self.lo_closed, !other.lo_closed)
            {
                out.push(p);
            }
        }
        // Piece strictly right of `other`.
        if self.hi > other.hi || (self.hi == other.hi && self.hi_closed && !other.hi_closed) {
            if let Some(p) =
                Self::try_new(other.hi.clone(), self.hi.clone(), !other.hi_closed, self.hi_closed)
            {
                out.push(p);
            }
        }
        out
    }

    /// True when the two parts should be fused in canonical form: closures
    /// overlap, or they touch and at least one side is closed at the junction.
    fn mergeable_with_next(&self, next: &Self) -> bool {
        match next.lo.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed || next.lo_closed,
            Ordering::Greater => false,
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            fmt_rational(&self.lo),
            fmt_rational(&self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl FromStr for RationalInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let set: IntervalSet = s.parse()?;
        match set.parts.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::Parse(format!("expected exactly one interval in `{s}`"))),
        }
    }
}

/// Finite union of rational intervals, kept sorted and canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    parts: Vec<RationalInterval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_parts(parts: impl IntoIterator<Item = RationalInterval>) -> Self {
        let mut s = Self { parts: parts.into_iter().collect() };
        s.canonicalize();
        s
    }

    pub fn single(part: RationalInterval) -> Self {
        Self { parts: vec![part] }
    }

    pub fn parts(&self) -> &[RationalInterval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    fn canonicalize(&mut self) {
        self.parts.sort_by(|a, b| {
            a.lo.cmp(&b.lo).then_with(|| b.lo_closed.cmp(&a.lo_closed))
        });
        let mut merged: Vec<RationalInterval> = Vec::with_capacity(self.parts.len());
        for p in self.parts.drain(..) {
            match merged.last_mut() {
                Some(last) if last.mergeable_with_next(&p) => match p.hi.cmp(&last.hi) {
                    Ordering::Greater => {
                        last.hi = p.hi;
                        last.hi_closed = p.hi_closed;
                    }
                    Ordering::Equal => last.hi_closed |= p.hi_closed,
                    Ordering::Less => {}
                },
                _ => merged.push(p),
            }
        }
        self.parts = merged;
    }

    /// Index of the first part whose upper end is not below `x`.
    fn first_reaching(&self, x: &Rational) -> usize {
        self.parts.partition_point(|p| &p.hi < x)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let i = self.first_reaching(x);
        self.parts[i..].iter().take(2).any(|p| p.contains(x))
    }

    pub fn contains_closure(&self, x: &Rational) -> bool {
        let i = self.first_reaching(x);
        self.parts.get(i).is_some_and(|p| p.contains_closure(x))
    }

    /// True iff the closure of `self` meets the closed interval `[lo, hi]`.
    pub fn closure_meets(&self, lo: &Rational, hi: &Rational) -> bool {
        let i = self.first_reaching(lo);
        self.parts.get(i).is_some_and(|p| &p.lo <= hi)
    }

    /// True iff every point of `iv` lies in the closure of `self`.
    pub fn closure_covers(&self, iv: &RationalInterval) -> bool {
        let closure = self.closure();
        let i = closure.first_reaching(&iv.lo);
        closure.parts.get(i).is_some_and(|p| p.lo <= iv.lo && iv.hi <= p.hi)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_parts(self.parts.iter().chain(other.parts.iter()).cloned())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(x) = a.intersect(b) {
                out.push(x);
            }
            if a.hi < b.hi || (a.hi == b.hi && !a.hi_closed) {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_parts(out)
    }

    pub fn subtract(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.parts {
            let mut pieces = vec![a.clone()];
            let start = other.first_reaching(&a.lo);
            for b in other.parts[start..].iter().take_while(|b| b.lo <= a.hi) {
                pieces = pieces.iter().flat_map(|p| p.difference(b)).collect();
            }
            out.extend(pieces);
        }
        Self::from_parts(out)
    }

    pub fn closure(&self) -> Self {
        Self::from_parts(self.parts.iter().map(RationalInterval::closure))
    }

    pub fn shift(&self, t: &Rational) -> Self {
        Self { parts: self.parts.iter().map(|p| p.shift(t)).collect() }
    }

    pub fn negate(&self) -> Self {
        Self::from_parts(self.parts.iter().map(RationalInterval::negate))
    }

    pub fn min(&self) -> Result<Rational> {
        self.parts.first().map(|p| p.lo.clone()).ok_or(Error::EmptySet("minimum"))
    }

    pub fn max(&self) -> Result<Rational> {
        self.parts.last().map(|p| p.hi.clone()).ok_or(Error::EmptySet("maximum"))
    }

    /// Largest absolute value in the closure.
    pub fn max_abs(&self) -> Result<Rational> {
        Ok(std::cmp::max(self.min()?.abs(), self.max()?.abs()))
    }

    pub fn total_length(&self) -> Rational {
        self.parts.iter().fold(Rational::zero(), |acc, p| acc + p.length())
    }

    /// No `x, y, z` in the closure with `x + y = z`.
    ///
    /// Decided over pairs of closed parts `[a,b]`, `[c,d]`: their sums fill
    /// `[a+c, b+d]`, which must miss every closed part.
    pub fn is_sum_free_closure(&self) -> bool {
        let closure = self.closure();
        let parts = &closure.parts;
        for (i, p) in parts.iter().enumerate() {
            for q in &parts[i..] {
                let lo = &p.lo + &q.lo;
                let hi = &p.hi + &q.hi;
                if closure.closure_meets(&lo, &hi) {
                    return false;
                }
            }
        }
        true
    }

    /// True when no sum of a point of `self` and a point of `other` (both
    /// closed) lands in the closure of `target`.
    pub fn closure_sums_avoid(&self, other: &Self, target: &Self) -> bool {
        let target = target.closure();
        self.parts.iter().all(|p| {
            other.parts.iter().all(|q| !target.closure_meets(&(&p.lo + &q.lo), &(&p.hi + &q.hi)))
        })
    }
}

/// Closed ranges of an interval set's closure rescaled to integer multiples of
/// `2^-bits`, for fast membership tests on dyadic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicTable {
    bits: u32,
    ranges: Vec<(i128, i128)>,
}

impl DyadicTable {
    /// Returns `None` when a rescaled endpoint does not fit in `i128`.
    pub fn new(set: &IntervalSet, bits: u32) -> Option<Self> {
        let scale = Rational::from_integer(BigInt::one() << bits);
        let mut ranges = Vec::with_capacity(set.len());
        for p in set.parts() {
            let lo = (&p.lo * &scale).ceil().to_integer();
            let hi = (&p.hi * &scale).floor().to_integer();
            if lo <= hi {
                ranges.push((lo.to_i128()?, hi.to_i128()?));
            }
        }
        Some(Self { bits, ranges })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Whether `k * 2^-bits` lies in the closure of the source set.
    pub fn contains(&self, k: i128) -> bool {
        let i = self.ranges.partition_point(|r| r.1 < k);
        self.ranges.get(i).is_some_and(|r| r.0 <= k)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let lo_closed = match rest.as_bytes()[0] {
                b'[' => true,
                b'(' => false,
                _ => return Err(Error::Parse(format!("expected `(` or `[` at `{rest}`"))),
            };
            let close = rest
                .find([')', ']'])
                .ok_or_else(|| Error::Parse(format!("unterminated interval in `{s}`")))?;
            let hi_closed = rest.as_bytes()[close] == b']';
            let (lo, hi) = rest[1..close]
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("missing `,` in `{}`", &rest[..=close])))?;
            parts.push(RationalInterval::new(
                parse_rational(lo)?,
                parse_rational(hi)?,
                lo_closed,
                hi_closed,
            )?);
            rest = rest[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::Parse(format!("trailing `,` in `{s}`")));
                }
            } else if !rest.is_empty() {
                return Err(Error::Parse(format!("expected `,` before `{rest}`")));
            }
        }
        Ok(Self::from_parts(parts))
    }
}
