//! Patterns: finite families of disjoint open white and black intervals with
//! rational endpoints, enumerated in a fixed computable order.
//!
//! Every pattern has a global index `n >= 1` in the plain enumeration (see
//! [`enumeration`] for the order). Filtered enumerations keep that index: the
//! `k`-th triangle-free pattern is the `k`-th plain pattern whose white
//! closure is sum-free, and its [`Pattern::index`] is its plain index.
//!
//! Text format: `W: <IntervalSet> | B: <IntervalSet> | idx: <n>`.

pub(crate) mod enumeration;

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intervals::{ceil_to_grid, floor_to_grid, int, IntervalSet, Rational, RationalInterval};
use enumeration::RawPattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternFilter {
    Plain,
    TriangleFree,
    KsFree(usize),
}

impl PatternFilter {
    pub fn ks_free(s: usize) -> Result<Self> {
        if s < 4 {
            return Err(Error::Precondition(format!("K_s-free filter needs s >= 4, got {s}")));
        }
        Ok(Self::KsFree(s))
    }

    /// Static admissibility of a pattern under this filter.
    pub fn admits(&self, p: &Pattern) -> bool {
        match self {
            Self::TriangleFree => p.white.is_sum_free_closure(),
            Self::Plain | Self::KsFree(_) => true,
        }
    }
}

impl fmt::Display for PatternFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Plain => f.write_str("plain"),
            Self::TriangleFree => f.write_str("triangle_free"),
            Self::KsFree(s) => write!(f, "ks_free({s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    white: IntervalSet,
    black: IntervalSet,
    index: BigUint,
}

impl Pattern {
    /// Validates the parts and computes the enumeration index.
    pub fn new(white: IntervalSet, black: IntervalSet) -> Result<Self> {
        let raw = to_raw(&white, &black)?;
        Ok(Self { index: enumeration::rank(&raw), white, black })
    }

    /// The pattern with plain index `n >= 1`.
    pub fn at(n: &BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::InvalidPattern("indices start at 1".into()));
        }
        let raw = enumeration::unrank(n);
        let (mut white, mut black) = (Vec::new(), Vec::new());
        for (k, &is_black) in raw.black.iter().enumerate() {
            let iv = RationalInterval::open(raw.endpoints[2 * k].clone(), raw.endpoints[2 * k + 1].clone())?;
            if is_black { black.push(iv) } else { white.push(iv) }
        }
        Ok(Self {
            white: IntervalSet::from_parts(white),
            black: IntervalSet::from_parts(black),
            index: n.clone(),
        })
    }

    pub fn white(&self) -> &IntervalSet {
        &self.white
    }

    pub fn black(&self) -> &IntervalSet {
        &self.black
    }

    pub fn index(&self) -> &BigUint {
        &self.index
    }

    /// Smallest level containing the pattern; every endpoint has absolute
    /// value at most this.
    pub fn level(&self) -> u32 {
        enumeration::level_of_index(&self.index).0.level
    }

    /// All endpoints, ascending.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut e: Vec<Rational> = self
            .white
            .parts()
            .iter()
            .chain(self.black.parts())
            .flat_map(|p| [p.lo().clone(), p.hi().clone()])
            .collect();
        e.sort();
        e
    }

    pub fn covers(&self, whites: &[Rational], blacks: &[Rational]) -> bool {
        whites.iter().all(|w| self.white.contains(w)) && blacks.iter().all(|b| self.black.contains(b))
    }
}

fn to_raw(white: &IntervalSet, black: &IntervalSet) -> Result<RawPattern> {
    let mut parts: Vec<(&RationalInterval, bool)> =
        white.parts().iter().map(|p| (p, false)).chain(black.parts().iter().map(|p| (p, true))).collect();
    if parts.is_empty() {
        return Err(Error::InvalidPattern("a pattern needs at least one part".into()));
    }
    parts.sort_by(|a, b| a.0.lo().cmp(b.0.lo()));
    let mut endpoints = Vec::with_capacity(2 * parts.len());
    for (p, _) in &parts {
        if !p.is_open() || p.is_degenerate() {
            return Err(Error::InvalidPattern(format!("part {p} is not a nondegenerate open interval")));
        }
        if endpoints.last().is_some_and(|prev| prev >= p.lo()) {
            return Err(Error::InvalidPattern(format!("closure of {p} meets another part")));
        }
        endpoints.push(p.lo().clone());
        endpoints.push(p.hi().clone());
    }
    Ok(RawPattern { endpoints, black: parts.iter().map(|p| p.1).collect() })
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W: {} | B: {} | idx: {}", self.white, self.black, self.index)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split('|').map(str::trim).collect();
        let [w, b, i] = fields.as_slice() else {
            return Err(Error::Parse(format!("expected three `|`-separated fields in `{s}`")));
        };
        let field = |f: &str, key: &str| -> Result<String> {
            f.strip_prefix(key)
                .map(|r| r.trim().to_string())
                .ok_or_else(|| Error::Parse(format!("expected `{key}` in `{f}`")))
        };
        let p = Pattern::new(field(w, "W:")?.parse()?, field(b, "B:")?.parse()?)?;
        let idx: BigUint =
            field(i, "idx:")?.parse().map_err(|_| Error::Parse(format!("bad index in `{i}`")))?;
        if idx != p.index {
            return Err(Error::InvalidPattern(format!("index {idx} does not match enumeration index {}", p.index)));
        }
        Ok(p)
    }
}

/// Plain indices of triangle-free-admissible patterns found so far, and the
/// next plain index to scan.
static TRIANGLE_FREE_SCAN: Mutex<(Vec<BigUint>, u64)> = Mutex::new((Vec::new(), 1));

/// The `n`-th pattern (`n >= 1`) admitted by `filter`.
pub fn enumerate(filter: PatternFilter, n: u64) -> Result<Pattern> {
    if n == 0 {
        return Err(Error::InvalidPattern("enumeration starts at 1".into()));
    }
    match filter {
        PatternFilter::Plain | PatternFilter::KsFree(_) => Pattern::at(&BigUint::from(n)),
        PatternFilter::TriangleFree => {
            let mut scan = TRIANGLE_FREE_SCAN.lock().expect("scan cache poisoned");
            while (scan.0.len() as u64) < n {
                let idx = BigUint::from(scan.1);
                if filter.admits(&Pattern::at(&idx)?) {
                    scan.0.push(idx);
                }
                scan.1 += 1;
            }
            Pattern::at(&scan.0[n as usize - 1])
        }
    }
}

/// Maximum number of times `locate` halves the cover radius.
pub const MAX_HALVINGS: u32 = 64;

/// A pattern whose white part contains every point of `whites` and whose
/// black part contains every point of `blacks`, admissible under `filter`.
pub fn locate(filter: PatternFilter, whites: &[Rational], blacks: &[Rational]) -> Result<Pattern> {
    let halvings = if filter == PatternFilter::Plain { 0 } else { MAX_HALVINGS };
    locate_with(whites, blacks, halvings, |p| Ok(filter.admits(p)))
        .map_err(|e| match e {
            Error::InfeasibleCover(msg) => Error::InfeasibleCover(format!("{filter}: {msg}")),
            other => other,
        })
}

/// Cover search with a caller-supplied admissibility test.
///
/// Each point `p` is covered by `(p - d, p + d)` with `d` a quarter of the
/// smallest gap between points (1 for a single point), rounded inward to the
/// grid of the smallest level that keeps every point strictly inside its
/// part. When `accept` rejects a cover, `d` is halved, at most `halvings`
/// times.
pub fn locate_with(
    whites: &[Rational],
    blacks: &[Rational],
    halvings: u32,
    mut accept: impl FnMut(&Pattern) -> Result<bool>,
) -> Result<Pattern> {
    let mut points: Vec<(&Rational, bool)> =
        whites.iter().map(|x| (x, false)).chain(blacks.iter().map(|x| (x, true))).collect();
    if points.is_empty() {
        return Err(Error::Precondition("locate needs at least one point".into()));
    }
    points.sort();
    points.dedup();
    if points.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Precondition("white and black points must be disjoint".into()));
    }
    let mut radius = points
        .windows(2)
        .map(|w| w[1].0 - w[0].0)
        .min()
        .map_or_else(|| int(1), |gap| gap / int(4));
    for _ in 0..=halvings {
        let p = grid_cover(&points, &radius)?;
        if accept(&p)? {
            return Ok(p);
        }
        radius /= int(2);
    }
    Err(Error::InfeasibleCover(format!(
        "no admissible cover after {halvings} halvings of the cover radius"
    )))
}

fn grid_cover(points: &[(&Rational, bool)], radius: &Rational) -> Result<Pattern> {
    let whites = points.iter().filter(|p| !p.1).count();
    let blacks = points.len() - whites;
    let mut level = whites.max(blacks).max(1) as u32;
    let mut fact: BigInt = (2..=level).map(BigInt::from).product();
    loop {
        let bound = int(level as i64);
        let parts: Option<Vec<(RationalInterval, bool)>> = points
            .iter()
            .map(|(x, black)| {
                let lo = ceil_to_grid(&(*x - radius), &fact);
                let hi = floor_to_grid(&(*x + radius), &fact);
                let fits = &lo < *x && *x < &hi && lo >= -bound.clone() && hi <= bound;
                fits.then(|| (RationalInterval::open(lo, hi).expect("lo < hi"), *black))
            })
            .collect();
        if let Some(parts) = parts {
            let (b, w): (Vec<_>, Vec<_>) = parts.into_iter().partition(|p| p.1);
            return Pattern::new(
                IntervalSet::from_parts(w.into_iter().map(|p| p.0)),
                IntervalSet::from_parts(b.into_iter().map(|p| p.0)),
            );
        }
        level += 1;
        fact *= BigInt::from(level);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::rat;
    use std::collections::HashSet;

    #[test]
    fn first_plain_pattern_is_pinned() {
        let p = enumerate(PatternFilter::Plain, 1).unwrap();
        assert_eq!(p.to_string(), "W: (-1,0) | B:  | idx: 1");
        assert_eq!(enumerate(PatternFilter::Plain, 6).unwrap().to_string(), "W:  | B: (0,1) | idx: 6");
        assert_eq!(enumerate(PatternFilter::Plain, 7).unwrap().to_string(), "W: (-2,-3/2) | B:  | idx: 7");
    }

    #[test]
    fn triangle_free_enumeration_is_sum_free() {
        for k in 1..=500 {
            let p = enumerate(PatternFilter::TriangleFree, k).unwrap();
            assert!(p.white().is_sum_free_closure(), "{p}");
        }
    }

    #[test]
    fn enumeration_is_injective() {
        let mut seen = HashSet::new();
        for n in 1..=10_000u64 {
            let p = enumerate(PatternFilter::Plain, n).unwrap();
            assert_eq!(p.index(), &BigUint::from(n));
            assert!(seen.insert((p.white().clone(), p.black().clone())), "duplicate at {n}");
        }
    }

    #[test]
    fn locate_examples() {
        let p = locate(PatternFilter::Plain, &[int(0)], &[int(1)]).unwrap();
        assert!(p.covers(&[int(0)], &[int(1)]));
        let p = locate(PatternFilter::Plain, &[int(0)], &[]).unwrap();
        assert!(p.covers(&[int(0)], &[]));
        assert!(p.black().is_empty());
        assert_eq!(p, Pattern::at(p.index()).unwrap());
        assert!(matches!(
            locate(PatternFilter::TriangleFree, &[int(1), int(2)], &[]),
            Err(Error::InfeasibleCover(_))
        ));
        assert!(matches!(
            locate(PatternFilter::Plain, &[int(1)], &[int(1)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn locate_triangle_free_shrinks_until_sum_free() {
        // (3/2 - 1, 3/2 + 1) contains 1 and 2, so the first cover fails
        let p = locate(PatternFilter::TriangleFree, &[rat(3, 2)], &[]).unwrap();
        assert!(p.white().is_sum_free_closure());
        assert!(p.covers(&[rat(3, 2)], &[]));
    }

    #[test]
    fn locate_is_consistent_with_enumeration_on_wide_instances() {
        let whites = [rat(-37, 3), rat(5, 7), rat(19, 2)];
        let blacks = [rat(-20, 1), rat(1, 1), rat(39, 4)];
        let p = locate(PatternFilter::Plain, &whites, &blacks).unwrap();
        assert!(p.covers(&whites, &blacks));
        assert_eq!(Pattern::at(p.index()).unwrap(), p);
    }

    #[test]
    fn text_round_trip_and_validation() {
        let p = enumerate(PatternFilter::Plain, 4321).unwrap();
        assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
        assert!("W: (0,1) | B: (1,2) | idx: 1".parse::<Pattern>().is_err());
        assert!("W: [0,1] | B:  | idx: 1".parse::<Pattern>().is_err());
        assert!("W: (-1,0) | B:  | idx: 2".parse::<Pattern>().is_err());
        assert!(PatternFilter::ks_free(3).is_err());
    }
}
