//! A topologically universal `K_s`-free graph on the line, `s >= 4`.
//!
//! Edges are the points of a closed symmetric set `Z ⊂ R²` off the diagonal.
//! `Z` starts as the bipartite base `[1,2] × [3,4]` (and its transpose). Step
//! `n` takes the `n`-th plain pattern `γ_n` and, unless the closure of its
//! white part already contains a `K_{s-1}`, adds the strip
//! `[M_n + 1, M_n + 2] × cl(γ_n^w)` and its transpose. The strip rows are
//! pairwise disjoint independent sets lying above every earlier coordinate,
//! so a new `K_s` would need a `K_{s-1}` inside `cl(γ_n^w)`; the screen rules
//! that out.
//!
//! `M_0 = 4` and `M_n = M_{n-1} + L_n + n + 1`, where `L_n` is the level of
//! `γ_n`, an upper bound for its endpoints. The closed form lets strips with
//! huge indices be built without their predecessors.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intervals::{fmt_rational, int, DyadicTable, IntervalSet, Rational, RationalInterval};
use crate::patterns::enumeration::level;
use crate::patterns::{locate_with, Pattern, MAX_HALVINGS};

/// `M_0`: the largest coordinate of the base.
pub const M_ZERO: i64 = 4;

fn base_boxes() -> Vec<(RationalInterval, RationalInterval)> {
    let a = RationalInterval::closed(int(1), int(2)).expect("valid");
    let b = RationalInterval::closed(int(3), int(4)).expect("valid");
    vec![(a.clone(), b.clone()), (b, a)]
}

/// `M_n` for any `n >= 0`.
pub fn m_value(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(m_integer(n)))
}

fn m_integer(n: &BigUint) -> BigUint {
    let mut levels_sum = BigUint::zero();
    if !n.is_zero() {
        for l in 1.. {
            let lvl = level(l);
            if lvl.end() <= n + 1u32 {
                levels_sum += &lvl.count * BigUint::from(l);
            } else {
                levels_sum += (n + 1u32 - &lvl.start) * BigUint::from(l);
                break;
            }
        }
    }
    n * (n + 1u32) / 2u32 + n + levels_sum + M_ZERO as u32
}

/// Largest `n >= 1` with `M_n + 1 <= x`, found on `floor(x)` since `M_n` is an integer.
fn last_row_starting_by(x: &Rational) -> Option<BigUint> {
    let floor = x.floor().to_integer();
    let x = floor.to_biguint()?;
    let fits = |n: &BigUint| m_integer(n) < x;
    if !fits(&BigUint::one()) {
        return None;
    }
    // M_n >= n^2 / 2, so the answer is below sqrt(2x) + 2; gallop down
    // from there, then bisect.
    let mut hi = (&x << 1usize).sqrt() + 2u32;
    let mut step = BigUint::one();
    let mut lo = loop {
        if hi <= step {
            break BigUint::one();
        }
        let cand = &hi - &step;
        if fits(&cand) {
            break cand;
        }
        hi = cand;
        step <<= 1;
    };
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1usize;
        if fits(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// The strip index whose row `[M_n + 1, M_n + 2]` contains `x`.
pub fn row_containing(x: &Rational) -> Option<BigUint> {
    last_row_starting_by(x).filter(|n| *x <= m_value(n) + int(2))
}

/// Smallest `n >= 1` whose row reaches `x` or beyond.
fn first_row_reaching(x: &Rational) -> BigUint {
    match last_row_starting_by(x) {
        Some(n) if *x <= m_value(&n) + int(2) => n,
        Some(n) => n + 1u32,
        None => BigUint::one(),
    }
}

/// Symmetric union of closed boxes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoxSet {
    boxes: Vec<(RationalInterval, RationalInterval)>,
}

impl BoxSet {
    pub fn boxes(&self) -> &[(RationalInterval, RationalInterval)] {
        &self.boxes
    }

    /// Adds `row × col` and its transpose.
    pub fn add_symmetric(&mut self, row: &RationalInterval, col: &RationalInterval) {
        self.boxes.push((row.clone(), col.clone()));
        self.boxes.push((col.clone(), row.clone()));
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.boxes.iter().any(|(r, c)| r.contains_closure(x) && c.contains_closure(y))
    }

    pub fn is_symmetric(&self) -> bool {
        self.boxes.iter().all(|(r, c)| self.boxes.iter().any(|(r2, c2)| r2 == c && c2 == r))
    }

    pub fn meets_diagonal(&self) -> bool {
        self.boxes.iter().any(|(r, c)| r.closure().intersect(&c.closure()).is_some())
    }
}

/// One strip. Step 0 is the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub index: BigUint,
    pub pattern: Pattern,
    pub m: Rational,
    pub row: RationalInterval,
    /// Closure of the white part.
    pub white: IntervalSet,
    pub skipped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneConfig {
    pub max_steps: usize,
}

impl Default for PlaneConfig {
    fn default() -> Self {
        Self { max_steps: 100_000 }
    }
}

#[derive(Debug)]
struct PlanePrefix {
    built: Vec<Arc<Strip>>,
    z: BoxSet,
    frontier: BigUint,
}

#[derive(Debug)]
pub struct PlaneGraphModel {
    s: usize,
    config: PlaneConfig,
    prefix: Mutex<PlanePrefix>,
    cache: Mutex<BTreeMap<BigUint, Arc<Strip>>>,
}

/// A cell of a refined white set: a point or an open gap with a sample.
struct Cell {
    sample: Rational,
    open: bool,
}

impl PlaneGraphModel {
    pub fn new(s: usize) -> Result<Self> {
        Self::with_config(s, PlaneConfig::default())
    }

    pub fn with_config(s: usize, config: PlaneConfig) -> Result<Self> {
        if s < 4 {
            return Err(Error::Precondition(format!("K_s-free plane model needs s >= 4, got {s}")));
        }
        let mut z = BoxSet::default();
        let (r, c) = &base_boxes()[0];
        z.add_symmetric(r, c);
        Ok(Self {
            s,
            config,
            prefix: Mutex::new(PlanePrefix { built: Vec::new(), z, frontier: BigUint::one() }),
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn config(&self) -> PlaneConfig {
        self.config
    }

    /// Strip `n >= 1`, built on demand.
    pub fn strip_at(&self, n: &BigUint) -> Result<Arc<Strip>> {
        if n.is_zero() {
            return Err(Error::Precondition("strips start at 1".into()));
        }
        if let Some(s) = self.cache.lock().expect("strip cache poisoned").get(n) {
            return Ok(s.clone());
        }
        let pattern = Pattern::at(n)?;
        let m = m_value(n);
        let row = RationalInterval::closed(&m + int(1), &m + int(2))?;
        let white = pattern.white().closure();
        let skipped = !white.is_empty() && self.clique_among(&white, self.s - 1, Some(n))?;
        let strip = Arc::new(Strip { index: n.clone(), pattern, m, row, white, skipped });
        self.cache.lock().expect("strip cache poisoned").insert(n.clone(), strip.clone());
        Ok(strip)
    }

    /// Boxes of the base and of every kept strip before `before` whose row
    /// meets `white`; no other box holds a pair of points of `white`.
    fn boxes_within(&self, white: &IntervalSet, before: Option<&BigUint>) -> Result<Vec<(RationalInterval, RationalInterval)>> {
        let mut boxes = base_boxes();
        let mut visited = 0;
        for part in white.parts() {
            let mut i = first_row_reaching(part.lo());
            while m_value(&i) + int(1) <= *part.hi() && before.is_none_or(|b| i < *b) {
                visited += 1;
                if visited > self.config.max_steps {
                    return Err(Error::StepLimit(self.config.max_steps));
                }
                let strip = self.strip_at(&i)?;
                if !strip.skipped {
                    for w in strip.white.parts() {
                        boxes.push((strip.row.clone(), w.clone()));
                        boxes.push((w.clone(), strip.row.clone()));
                    }
                }
                i += 1u32;
            }
        }
        Ok(boxes)
    }

    /// Whether the closed set `white` holds `k` pairwise adjacent points,
    /// counting only strips before `before` (all strips when `None`).
    fn clique_among(&self, white: &IntervalSet, k: usize, before: Option<&BigUint>) -> Result<bool> {
        if white.is_empty() || k == 0 {
            return Ok(k == 0);
        }
        let boxes = self.boxes_within(white, before)?;
        let mut cuts: Vec<&Rational> = boxes.iter().flat_map(|(r, c)| [r.lo(), r.hi(), c.lo(), c.hi()]).collect();
        cuts.sort();
        cuts.dedup();
        let mut cells = Vec::new();
        for part in white.closure().parts() {
            let mut pts = vec![part.lo().clone()];
            pts.extend(cuts.iter().filter(|x| part.lo() < **x && **x < part.hi()).map(|x| (*x).clone()));
            if part.hi() != part.lo() {
                pts.push(part.hi().clone());
            }
            for (t, p) in pts.iter().enumerate() {
                cells.push(Cell { sample: p.clone(), open: false });
                if let Some(q) = pts.get(t + 1) {
                    cells.push(Cell { sample: (p + q) / int(2), open: true });
                }
            }
        }
        let member = |x: &Rational, y: &Rational| {
            boxes.iter().any(|(r, c)| r.contains_closure(x) && c.contains_closure(y))
        };
        let caps: Vec<usize> =
            cells.iter().map(|c| if c.open && member(&c.sample, &c.sample) { k } else { 1 }).collect();
        let n = cells.len();
        let adj: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| i != j && member(&cells[i].sample, &cells[j].sample)).collect())
            .collect();
        Ok(weighted_clique(&adj, &caps, k))
    }

    /// Whether `white` (closed) holds a `k`-clique under the built prefix.
    pub fn white_clique_check(&self, white: &IntervalSet, k: usize) -> Result<bool> {
        if k < 2 {
            return Err(Error::Precondition("clique size must be at least 2".into()));
        }
        let frontier = self.frontier();
        self.clique_among(&white.closure(), k, Some(&frontier))
    }

    pub fn adjacent(&self, x: &Rational, y: &Rational) -> Result<bool> {
        if x == y {
            return Err(Error::Loop(fmt_rational(x)));
        }
        if base_boxes().iter().any(|(r, c)| r.contains_closure(x) && c.contains_closure(y)) {
            return Ok(true);
        }
        for (u, v) in [(x, y), (y, x)] {
            if let Some(n) = row_containing(u) {
                let strip = self.strip_at(&n)?;
                if !strip.skipped && strip.white.contains_closure(v) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Exact neighbourhood of `w` inside the closed window `[lo, hi]`.
    pub fn neighbourhood(&self, w: &Rational, lo: &Rational, hi: &Rational) -> Result<IntervalSet> {
        let window = IntervalSet::single(RationalInterval::closed(lo.clone(), hi.clone())?);
        let mut acc: Vec<RationalInterval> = base_boxes()
            .into_iter()
            .filter(|(r, _)| r.contains_closure(w))
            .map(|(_, c)| c)
            .collect();
        if let Some(n) = row_containing(w) {
            let strip = self.strip_at(&n)?;
            if !strip.skipped {
                acc.extend(strip.white.parts().iter().cloned());
            }
        }
        let mut i = first_row_reaching(lo);
        let mut visited = 0;
        while m_value(&i) + int(1) <= *hi {
            visited += 1;
            if visited > self.config.max_steps {
                return Err(Error::StepLimit(self.config.max_steps));
            }
            let strip = self.strip_at(&i)?;
            if !strip.skipped && strip.white.contains_closure(w) {
                acc.push(strip.row.clone());
            }
            i += 1u32;
        }
        Ok(IntervalSet::from_parts(acc).intersect(&window))
    }

    pub fn frontier(&self) -> BigUint {
        self.prefix.lock().expect("prefix poisoned").frontier.clone()
    }

    pub fn built(&self) -> Vec<Arc<Strip>> {
        self.prefix.lock().expect("prefix poisoned").built.clone()
    }

    /// The edge set of the built prefix.
    pub fn z(&self) -> BoxSet {
        self.prefix.lock().expect("prefix poisoned").z.clone()
    }

    /// `M_0, M_1, ...` for the built prefix.
    pub fn m_sequence(&self) -> Vec<Rational> {
        std::iter::once(int(M_ZERO)).chain(self.built().iter().map(|s| s.m.clone())).collect()
    }

    pub fn step(&self) -> Result<Arc<Strip>> {
        let n = self.frontier();
        let strip = self.strip_at(&n)?;
        let mut prefix = self.prefix.lock().expect("prefix poisoned");
        if prefix.frontier == n {
            if !strip.skipped {
                for part in strip.white.parts() {
                    prefix.z.add_symmetric(&strip.row, part);
                }
            }
            prefix.built.push(strip.clone());
            prefix.frontier += 1u32;
        }
        Ok(strip)
    }

    /// Builds strips until the next row starts above `t`.
    pub fn extend_to_bound(&self, t: &Rational) -> Result<()> {
        let mut built = 0;
        while m_value(&self.frontier()) + int(1) <= *t {
            if built == self.config.max_steps {
                return Err(Error::StepLimit(self.config.max_steps));
            }
            self.step()?;
            built += 1;
        }
        Ok(())
    }

    /// Adjacency of dyadic points `k · 2^-bits` with `|k · 2^-bits| <= bound`.
    pub fn box_table(&self, bound: &Rational, bits: u32) -> Result<BoxTable> {
        self.extend_to_bound(bound)?;
        let z = self.z();
        let table = |iv: &RationalInterval| {
            DyadicTable::new(&IntervalSet::single(iv.clone()), bits)
                .ok_or_else(|| Error::Complexity(format!("box table at {bits} bits")))
        };
        let boxes = z.boxes().iter().map(|(r, c)| Ok((table(r)?, table(c)?))).collect::<Result<_>>()?;
        Ok(BoxTable { boxes })
    }

    /// A nonempty open interval of vertices adjacent to every white point
    /// and to no black point, verified exactly.
    pub fn witness_box(&self, whites: &[Rational], blacks: &[Rational]) -> Result<RationalInterval> {
        let points = IntervalSet::from_parts(whites.iter().cloned().map(RationalInterval::point));
        if self.clique_among(&points, self.s - 1, None)? {
            return Err(Error::Precondition(format!("white points contain a K_{}", self.s - 1)));
        }
        let pattern = locate_with(whites, blacks, MAX_HALVINGS, |p| Ok(!self.strip_at(p.index())?.skipped))?;
        let strip = self.strip_at(pattern.index())?;
        let iv = RationalInterval::open(strip.row.lo().clone(), strip.row.hi().clone())?;
        if !self.verify_witness(&iv, whites, blacks)? {
            return Err(Error::Defect(format!("witness {iv} failed verification")));
        }
        Ok(iv)
    }

    pub fn verify_witness(&self, iv: &RationalInterval, whites: &[Rational], blacks: &[Rational]) -> Result<bool> {
        let open = IntervalSet::single(iv.clone());
        for w in whites {
            if iv.contains_closure(w) || !self.neighbourhood(w, iv.lo(), iv.hi())?.closure_covers(iv) {
                return Ok(false);
            }
        }
        for b in blacks {
            if !self.neighbourhood(b, iv.lo(), iv.hi())?.intersect(&open).is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Per built strip: `n | pattern idx or SKIP | M_n | strip | white`.
    pub fn dump(&self) -> String {
        let mut out = format!("0 | base | {M_ZERO} | [1,2]x[3,4] | \n");
        for s in self.built() {
            let idx = if s.skipped { "SKIP".to_string() } else { s.pattern.index().to_string() };
            out.push_str(&format!("{} | {} | {} | {} | {}\n", s.index, idx, fmt_rational(&s.m), s.row, s.white));
        }
        out
    }
}

/// Dyadic lookup form of a box set.
#[derive(Clone, Debug)]
pub struct BoxTable {
    boxes: Vec<(DyadicTable, DyadicTable)>,
}

impl BoxTable {
    pub fn contains(&self, x: i128, y: i128) -> bool {
        self.boxes.iter().any(|(r, c)| r.contains(x) && c.contains(y))
    }
}

/// Whether pairwise adjacent cells with total capacity `k` exist.
fn weighted_clique(adj: &[Vec<bool>], caps: &[usize], k: usize) -> bool {
    fn grow(adj: &[Vec<bool>], caps: &[usize], k: usize, chosen: &mut Vec<usize>, weight: usize, from: usize) -> bool {
        if weight >= k {
            return true;
        }
        let remaining: usize = (from..adj.len())
            .filter(|&v| chosen.iter().all(|&u| adj[u][v]))
            .map(|v| caps[v])
            .sum();
        if weight + remaining < k {
            return false;
        }
        for v in from..adj.len() {
            if chosen.iter().all(|&u| adj[u][v]) {
                chosen.push(v);
                let found = grow(adj, caps, k, chosen, weight + caps[v], v + 1);
                chosen.pop();
                if found {
                    return true;
                }
            }
        }
        false
    }
    grow(adj, caps, k, &mut Vec::new(), 0, 0)
}
