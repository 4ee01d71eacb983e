//! Counting, ranking and unranking of patterns in the level order.
//!
//! Level `L` contains every pattern whose endpoints lie on the grid
//! `G_L = (1/L!)Z ∩ [-L, L]` and which has at most `L` white and at most `L`
//! black parts. Levels are nested, so the patterns *new* at level `L` are
//! `S_L \ S_{L-1}`. Inside a level, patterns are ordered by
//!
//! 1. the number of parts `m`,
//! 2. the ascending endpoint sequence `a_1 < a'_1 < a_2 < ... < a'_m`,
//!    compared lexicographically,
//! 3. the colour word of the parts from left to right, white before black.
//!
//! The order is the same for every level, so the number of new patterns
//! preceding `P` is `#{Q in S_L : Q < P} - #{Q in S_{L-1} : Q < P}`, and both
//! terms reduce to sums of binomial coefficients (hockey-stick identity).

use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::intervals::Rational;

#[derive(Debug)]
pub(crate) struct Level {
    pub level: u32,
    pub fact: BigUint,
    pub grid_size: BigUint,
    /// New patterns at this level with `m` parts, at position `m - 1`.
    pub new_by_parts: Vec<BigUint>,
    pub count: BigUint,
    /// Global index of the first new pattern of this level.
    pub start: BigUint,
}

impl Level {
    pub fn max_parts(&self) -> usize {
        2 * self.level as usize
    }

    /// Index one past the last pattern of this level.
    pub fn end(&self) -> BigUint {
        &self.start + &self.count
    }

    /// Rational value of grid point `i`.
    fn grid_value(&self, i: &BigUint) -> Rational {
        let offset = BigInt::from(self.level) * BigInt::from(self.fact.clone());
        Rational::new(BigInt::from(i.clone()) - offset, BigInt::from(self.fact.clone()))
    }

    fn scaled(&self, x: &Rational) -> Rational {
        x * Rational::from_integer(BigInt::from(self.fact.clone()))
    }

    fn clamp(&self, v: BigInt) -> BigUint {
        match v.sign() {
            Sign::Minus | Sign::NoSign => BigUint::zero(),
            Sign::Plus => {
                let v = v.to_biguint().expect("positive");
                if v > self.grid_size {
                    self.grid_size.clone()
                } else {
                    v
                }
            }
        }
    }

    fn offset(&self) -> BigInt {
        BigInt::from(self.level) * BigInt::from(self.fact.clone())
    }

    /// Number of grid points `<= x`.
    fn count_le(&self, x: &Rational) -> BigUint {
        self.clamp(self.scaled(x).floor().to_integer() + self.offset() + 1)
    }

    /// Number of grid points `< x`.
    fn count_lt(&self, x: &Rational) -> BigUint {
        self.clamp(self.scaled(x).ceil().to_integer() + self.offset())
    }

    pub fn on_grid(&self, x: &Rational) -> bool {
        self.scaled(x).is_integer() && x.abs() <= Rational::from_integer(BigInt::from(self.level))
    }

    /// Grid index of an on-grid value.
    fn index_of(&self, x: &Rational) -> BigUint {
        (self.scaled(x).to_integer() + self.offset()).to_biguint().expect("on grid")
    }

    fn colour_words(&self, m: usize) -> BigUint {
        colour_completions(m, 0, 0, self.level as usize)
    }

    /// Patterns of this level (new or not) with `m` parts.
    fn total_with_parts(&self, m: usize) -> BigUint {
        binom(&self.grid_size, 2 * m) * self.colour_words(m)
    }
}

pub(crate) fn binom(n: &BigUint, r: usize) -> BigUint {
    if BigUint::from(r) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

fn binom_small(n: usize, r: usize) -> BigUint {
    binom(&BigUint::from(n), r)
}

/// Colour words completing a prefix that already used `whites` and
/// `blacks`, with `free` positions left and at most `cap` of each colour.
fn colour_completions(free: usize, whites: usize, blacks: usize, cap: usize) -> BigUint {
    (0..=free)
        .filter(|&k| whites + k <= cap && blacks + free - k <= cap)
        .map(|k| binom_small(free, k))
        .sum()
}

static LEVELS: Mutex<Vec<Arc<Level>>> = Mutex::new(Vec::new());

/// Level `l >= 1`, computing and caching all lower levels on demand.
pub(crate) fn level(l: u32) -> Arc<Level> {
    assert!(l >= 1, "levels start at 1");
    let mut levels = LEVELS.lock().expect("level cache poisoned");
    while levels.len() < l as usize {
        let next = levels.len() as u32 + 1;
        let prev = levels.last().cloned();
        let fact = prev.as_ref().map_or(BigUint::one(), |p| &p.fact * BigUint::from(next));
        let grid_size = BigUint::from(2 * next) * &fact + BigUint::one();
        let mut lvl = Level {
            level: next,
            fact,
            grid_size,
            new_by_parts: Vec::new(),
            count: BigUint::zero(),
            start: prev.as_ref().map_or(BigUint::one(), |p| p.end()),
        };
        for m in 1..=lvl.max_parts() {
            let total = lvl.total_with_parts(m);
            let old = prev.as_ref().map_or(BigUint::zero(), |p| p.total_with_parts(m));
            lvl.new_by_parts.push(total - old);
        }
        lvl.count = lvl.new_by_parts.iter().sum();
        levels.push(Arc::new(lvl));
    }
    levels[l as usize - 1].clone()
}

/// Level containing global index `n >= 1`, and the rank of `n` inside it.
pub(crate) fn level_of_index(n: &BigUint) -> (Arc<Level>, BigUint) {
    assert!(!n.is_zero(), "pattern indices start at 1");
    let mut l = 1;
    loop {
        let lvl = level(l);
        if *n < lvl.end() {
            let r = n - &lvl.start;
            return (lvl, r);
        }
        l += 1;
    }
}

/// A pattern as flat endpoints plus a colour per part (`true` = black).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RawPattern {
    pub endpoints: Vec<Rational>,
    pub black: Vec<bool>,
}

impl RawPattern {
    pub fn parts(&self) -> usize {
        self.black.len()
    }

    fn colour_counts(&self) -> (usize, usize) {
        let b = self.black.iter().filter(|&&b| b).count();
        (self.black.len() - b, b)
    }

    /// Smallest level containing the pattern.
    pub fn min_level(&self) -> u32 {
        let (w, b) = self.colour_counts();
        let mut l = w.max(b).max(1) as u32;
        let max_abs = self.endpoints.iter().map(|x| x.abs()).max().unwrap_or_default();
        let max_den = self.endpoints.iter().map(|x| x.denom().clone()).fold(BigInt::one(), |a, d| a.lcm(&d));
        let max_abs = max_abs.ceil().to_integer().to_u32().unwrap_or(u32::MAX);
        l = l.max(max_abs);
        // smallest l whose factorial is divisible by every denominator
        let mut fact = BigInt::one();
        for k in 2..=l {
            fact *= BigInt::from(k);
        }
        while !(&fact % &max_den).is_zero() {
            l += 1;
            fact *= BigInt::from(l);
        }
        l
    }

    #[cfg(test)]
    fn in_level(&self, lvl: &Level) -> bool {
        let (w, b) = self.colour_counts();
        let cap = lvl.level as usize;
        w <= cap && b <= cap && self.endpoints.iter().all(|x| lvl.on_grid(x))
    }
}

/// Patterns of level `lvl` with the same number of parts that precede `p`.
fn count_less(lvl: &Level, p: &RawPattern) -> BigUint {
    let m = p.parts();
    let words = lvl.colour_words(m);
    let g = &lvl.grid_size;
    let mut acc = BigUint::zero();
    for (t, e) in p.endpoints.iter().enumerate() {
        let lo = if t == 0 { BigUint::zero() } else { lvl.count_le(&p.endpoints[t - 1]) };
        let hi = lvl.count_lt(e);
        if hi > lo {
            let rest = 2 * m - t - 1;
            let tuples = binom(&(g - &lo), rest + 1) - binom(&(g - &hi), rest + 1);
            acc += tuples * &words;
        }
        if !lvl.on_grid(e) {
            return acc;
        }
    }
    let cap = lvl.level as usize;
    let (mut w, mut b) = (0, 0);
    for (t, &is_black) in p.black.iter().enumerate() {
        if is_black {
            acc += colour_completions(m - t - 1, w + 1, b, cap);
            b += 1;
        } else {
            w += 1;
        }
    }
    acc
}

/// Global index (starting at 1) of a valid pattern.
pub(crate) fn rank(p: &RawPattern) -> BigUint {
    let lvl = level(p.min_level());
    let mut idx = lvl.start.clone();
    for m in 1..p.parts() {
        idx += &lvl.new_by_parts[m - 1];
    }
    idx += count_less(&lvl, p);
    if lvl.level > 1 {
        idx -= count_less(&level(lvl.level - 1), p);
    }
    idx
}

fn to_big(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// Pattern with global index `n >= 1`.
pub(crate) fn unrank(n: &BigUint) -> RawPattern {
    let (lvl, mut r) = level_of_index(n);
    let lower = (lvl.level > 1).then(|| level(lvl.level - 1));

    let mut m = 1;
    while r >= lvl.new_by_parts[m - 1] {
        r -= &lvl.new_by_parts[m - 1];
        m += 1;
    }

    let words = to_big(&lvl.colour_words(m));
    let lower_words = lower.as_ref().map(|l| to_big(&l.colour_words(m)));
    let g = &lvl.grid_size;
    let r_big = to_big(&r);
    let mut r = r_big;
    let mut endpoints: Vec<Rational> = Vec::with_capacity(2 * m);
    let mut on_lower = lower.is_some();

    for t in 0..2 * m {
        let rest = 2 * m - t - 1;
        let lo = match endpoints.last() {
            Some(prev) => lvl.index_of(prev) + BigUint::one(),
            None => BigUint::zero(),
        };
        let lower_lo = match (&lower, endpoints.last()) {
            (Some(l), Some(prev)) => l.count_le(prev),
            _ => BigUint::zero(),
        };
        let base = to_big(&binom(&(g - &lo), rest + 1));
        // new patterns whose endpoint `t` is at grid index <= i
        let cumulative = |i: &BigUint| -> BigInt {
            let mut f = (&base - to_big(&binom(&(g - i - BigUint::one()), rest + 1))) * &words;
            if on_lower {
                let l = lower.as_ref().expect("lower level");
                let hi = l.count_le(&lvl.grid_value(i));
                if hi > lower_lo {
                    let gl = &l.grid_size;
                    let sub = to_big(&binom(&(gl - &lower_lo), rest + 1))
                        - to_big(&binom(&(gl - &hi), rest + 1));
                    f -= sub * lower_words.as_ref().expect("lower words");
                }
            }
            f
        };
        // smallest i in [lo, g) with cumulative(i) > r
        let (mut a, mut b) = (lo.clone(), g - BigUint::one());
        while a < b {
            let mid = (&a + &b) >> 1;
            if cumulative(&mid) > r {
                b = mid;
            } else {
                a = mid + BigUint::one();
            }
        }
        if a > lo {
            r -= cumulative(&(&a - BigUint::one()));
        }
        let x = lvl.grid_value(&a);
        if let Some(l) = &lower {
            on_lower &= l.on_grid(&x);
        }
        endpoints.push(x);
    }

    let cap = lvl.level as usize;
    let mut black = Vec::with_capacity(m);
    let (mut w, mut b) = (0, 0);
    for t in 0..m {
        let free = m - t - 1;
        let mut with_white = to_big(&colour_completions(free, w + 1, b, cap));
        if on_lower {
            with_white -= to_big(&colour_completions(free, w + 1, b, cap - 1));
        }
        if r < with_white {
            black.push(false);
            w += 1;
        } else {
            r -= with_white;
            black.push(true);
            b += 1;
        }
    }
    debug_assert!(r.is_zero());
    RawPattern { endpoints, black }
}
