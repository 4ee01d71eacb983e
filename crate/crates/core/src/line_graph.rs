//! Shift-invariant universal graphs on the line.
//!
//! The graph has vertex set `R` and joins `x` and `y` iff `|x - y|` lies in
//! the closure of `Z = Z_0 ∪ Z_1 ∪ ...`. `Z_0` is a fixed base interval and
//! `Z_n` realizes the `n`-th plain pattern `γ_n`: if `γ_n` has white parts
//! `(a_i, a'_i)`, then `Z_n = ∪ (c_n - a'_i - ε_n, c_n - a_i + ε_n)`, so every
//! point near `c_n` is joined to the white part of `γ_n` and to nothing in
//! its black part.
//!
//! The centre `c_n` is a closed-form function of `n`. Patterns of level `L`
//! have endpoints in `[-L, L]`, so `Z_n` sits inside the window
//! `[c_n - ρ_L, c_n + ρ_L]` with `ρ_L = L + 1`, and the windows of one level
//! are evenly spaced after the last window of the previous level. This lets
//! any `Z_n` be built directly from `n`, which matters because the patterns
//! covering ordinary point sets have astronomically large indices.
//!
//! In triangle-free mode the windows of level `L` are centred at
//! `B_L + K_L (3j + 1)` with `3K_L | B_L`, so sums of two level-`L` windows
//! are `K_L`-far from every level-`L` window, and `B_L` exceeds twice the
//! end of the previous level. Together with skipping patterns whose white
//! part is not independent, this keeps the closure of `Z` sum-free.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intervals::{fmt_rational, int, rat, DyadicTable, IntervalSet, Rational, RationalInterval};
use crate::patterns::enumeration::{level, level_of_index};
use crate::patterns::{locate_with, Pattern, PatternFilter, MAX_HALVINGS};

/// Maximum number of ε halvings per step.
pub const EPS_HALVINGS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineMode {
    Plain,
    TriangleFree,
}

impl LineMode {
    pub fn filter(self) -> PatternFilter {
        match self {
            Self::Plain => PatternFilter::Plain,
            Self::TriangleFree => PatternFilter::TriangleFree,
        }
    }

    /// The base set `Z_0`.
    pub fn base(self) -> IntervalSet {
        let hi = match self {
            Self::Plain => int(2),
            Self::TriangleFree => rat(6, 5),
        };
        IntervalSet::single(RationalInterval::closed(int(1), hi).expect("valid base"))
    }
}

impl fmt::Display for LineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Plain => f.write_str("plain"),
            Self::TriangleFree => f.write_str("triangle_free"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineConfig {
    /// Most steps a single extension or window query may build.
    pub max_steps: usize,
}

impl Default for LineConfig {
    fn default() -> Self {
        Self { max_steps: 100_000 }
    }
}

/// One step of the construction. Step 0 is the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub index: BigUint,
    pub pattern: Option<Pattern>,
    pub c: Rational,
    pub eps: Rational,
    pub z: IntervalSet,
    /// Triangle-free mode only: the pattern was not realizable.
    pub skipped: bool,
}

/// Window layout of one level.
#[derive(Debug)]
struct Placement {
    rho: Rational,
    first: Rational,
    spacing: Rational,
    start: BigUint,
    count: BigUint,
    end: Rational,
}

impl Placement {
    fn centre(&self, j: &BigUint) -> Rational {
        &self.first + &self.spacing * Rational::from_integer(BigInt::from(j.clone()))
    }
}

#[derive(Debug)]
struct Prefix {
    built: Vec<Arc<Step>>,
    z: IntervalSet,
    frontier: BigUint,
}

#[derive(Debug)]
pub struct LineGraphModel {
    mode: LineMode,
    config: LineConfig,
    prefix: Mutex<Prefix>,
    cache: Mutex<BTreeMap<BigUint, Arc<Step>>>,
    placements: Mutex<Vec<Arc<Placement>>>,
}

impl LineGraphModel {
    pub fn new(mode: LineMode) -> Self {
        Self::with_config(mode, LineConfig::default())
    }

    pub fn with_config(mode: LineMode, config: LineConfig) -> Self {
        let base = Arc::new(Step {
            index: BigUint::zero(),
            pattern: None,
            c: Rational::zero(),
            eps: Rational::zero(),
            z: mode.base(),
            skipped: false,
        });
        Self {
            mode,
            config,
            prefix: Mutex::new(Prefix { z: base.z.clone(), built: vec![base], frontier: BigUint::one() }),
            cache: Mutex::new(BTreeMap::new()),
            placements: Mutex::new(Vec::new()),
        }
    }

    pub fn mode(&self) -> LineMode {
        self.mode
    }

    pub fn config(&self) -> LineConfig {
        self.config
    }

    fn placement(&self, l: u32) -> Arc<Placement> {
        let mut placements = self.placements.lock().expect("placement cache poisoned");
        while placements.len() < l as usize {
            let next = placements.len() as u32 + 1;
            let prev_end = placements.last().map_or_else(|| self.mode.base().max().expect("base"), |p| p.end.clone());
            let lvl = level(next);
            let rho = int(next as i64 + 1);
            let (first, spacing) = match self.mode {
                LineMode::Plain => (&prev_end + &rho + int(1), int(2) * &rho + int(1)),
                LineMode::TriangleFree => {
                    let k_min = ((&prev_end + int(2) * &rho + int(1)) / int(3)).ceil();
                    let k = std::cmp::max(int(3) * &rho + int(1), k_min);
                    let period = int(3) * &k;
                    let reach = int(2) * &prev_end + &rho - &k;
                    let q = if reach.is_negative() { Rational::zero() } else { (&reach / &period).floor() + int(1) };
                    (q * &period + &k, period)
                }
            };
            let last = &lvl.count - BigUint::one();
            let end = &first + &spacing * Rational::from_integer(BigInt::from(last)) + &rho;
            placements.push(Arc::new(Placement {
                rho,
                first,
                spacing,
                start: lvl.start.clone(),
                count: lvl.count.clone(),
                end,
            }));
        }
        placements[l as usize - 1].clone()
    }

    /// Centre `c_n` and window radius of step `n >= 1`.
    pub fn centre(&self, n: &BigUint) -> (Rational, Rational) {
        let (lvl, j) = level_of_index(n);
        let p = self.placement(lvl.level);
        (p.centre(&j), p.rho.clone())
    }

    /// Step `n`, built on demand from `n` alone.
    pub fn step_at(&self, n: &BigUint) -> Result<Arc<Step>> {
        if n.is_zero() {
            return Ok(self.prefix.lock().expect("prefix poisoned").built[0].clone());
        }
        if let Some(s) = self.cache.lock().expect("step cache poisoned").get(n) {
            return Ok(s.clone());
        }
        let step = Arc::new(self.build_step(n)?);
        self.cache.lock().expect("step cache poisoned").insert(n.clone(), step.clone());
        Ok(step)
    }

    fn build_step(&self, n: &BigUint) -> Result<Step> {
        let pattern = Pattern::at(n)?;
        let (c, rho) = self.centre(n);
        let ends = pattern.endpoints();
        let min_gap = ends.windows(2).map(|w| &w[1] - &w[0]).min().expect("pattern has a part");
        let mut eps = std::cmp::min(min_gap / int(4), rat(1, 2));
        let mut skipped = false;
        if self.mode == LineMode::TriangleFree {
            // Differences inside a level-L pattern stay below 2L + 1 < 2ρ,
            // which only lower levels reach.
            let near = self.closure_window(&Rational::zero(), &(int(2) * &rho - int(1)))?;
            let whites = pattern.white().closure();
            if !whites.is_sum_free_closure() || differences_meet(&whites, &Rational::zero(), &near) {
                skipped = true;
            } else {
                let mut halvings = 0;
                while differences_meet(&whites, &eps, &near) {
                    halvings += 1;
                    if halvings > EPS_HALVINGS {
                        return Err(Error::Defect(format!("no admissible ε for step {n}")));
                    }
                    eps /= int(2);
                }
            }
        }
        let z = if skipped {
            IntervalSet::empty()
        } else {
            IntervalSet::from_parts(pattern.white().parts().iter().map(|w| {
                RationalInterval::open(&c - w.hi() - &eps, &c - w.lo() + &eps).expect("nondegenerate")
            }))
        };
        let shadow = IntervalSet::from_parts(pattern.black().parts().iter().map(|b| {
            RationalInterval::closed(&c - b.hi() - &eps, &c - b.lo() + &eps).expect("nondegenerate")
        }));
        if !z.closure().intersect(&shadow).is_empty() {
            return Err(Error::Defect(format!("step {n}: white and black shadows overlap")));
        }
        if !z.is_empty() && (z.min()? <= &c - &rho || z.max()? >= &c + &rho) {
            return Err(Error::Defect(format!("step {n}: Z_n leaves its window")));
        }
        Ok(Step { index: n.clone(), pattern: Some(pattern), c, eps, z, skipped })
    }

    /// Builds the next step of the contiguous prefix.
    pub fn step(&self) -> Result<Arc<Step>> {
        let n = self.frontier();
        let step = self.step_at(&n)?;
        let mut prefix = self.prefix.lock().expect("prefix poisoned");
        if prefix.frontier == n {
            prefix.z = prefix.z.union(&step.z);
            prefix.built.push(step.clone());
            prefix.frontier += 1u32;
        }
        Ok(step)
    }

    /// Builds steps until the window of the next step starts above `t`.
    /// Afterwards the closure of `Z` on `[0, t]` is decided by the prefix.
    pub fn extend_to_bound(&self, t: &Rational) -> Result<()> {
        if t.is_negative() {
            return Err(Error::Precondition("extension bound must be nonnegative".into()));
        }
        let mut built = 0;
        loop {
            let (c, rho) = self.centre(&self.frontier());
            if &c - &rho > *t {
                return Ok(());
            }
            if built == self.config.max_steps {
                return Err(Error::StepLimit(self.config.max_steps));
            }
            self.step()?;
            built += 1;
        }
    }

    pub fn frontier(&self) -> BigUint {
        self.prefix.lock().expect("prefix poisoned").frontier.clone()
    }

    pub fn built(&self) -> Vec<Arc<Step>> {
        self.prefix.lock().expect("prefix poisoned").built.clone()
    }

    /// Union of the built prefix `Z_0 ∪ ... ∪ Z_{frontier-1}`.
    pub fn z_prefix(&self) -> IntervalSet {
        self.prefix.lock().expect("prefix poisoned").z.clone()
    }

    /// The exact closure of `Z` intersected with `[lo, hi]`.
    pub fn closure_window(&self, lo: &Rational, hi: &Rational) -> Result<IntervalSet> {
        let range = IntervalSet::single(RationalInterval::closed(lo.clone(), hi.clone())?);
        let mut acc = self.mode.base();
        let mut steps = 0;
        for l in 1.. {
            let p = self.placement(l);
            if &p.first - &p.rho > *hi {
                break;
            }
            if p.end < *lo {
                continue;
            }
            let j_lo = ((lo - &p.rho - &p.first) / &p.spacing).ceil();
            let j_hi = ((hi + &p.rho - &p.first) / &p.spacing).floor();
            let last = &p.count - BigUint::one();
            let j_lo = if j_lo.is_negative() { BigUint::zero() } else { to_biguint(&j_lo) };
            let j_hi = if j_hi.is_negative() { continue } else { std::cmp::min(to_biguint(&j_hi), last) };
            let mut j = j_lo;
            while j <= j_hi {
                steps += 1;
                if steps > self.config.max_steps {
                    return Err(Error::StepLimit(self.config.max_steps));
                }
                acc = acc.union(&self.step_at(&(&p.start + &j))?.z);
                j += 1u32;
            }
        }
        Ok(acc.closure().intersect(&range))
    }

    pub fn adjacent(&self, x: &Rational, y: &Rational) -> Result<bool> {
        if x == y {
            return Err(Error::Loop(fmt_rational(x)));
        }
        let d = (x - y).abs();
        Ok(!self.closure_window(&d, &d)?.is_empty())
    }

    /// The closure of the built prefix on `[0, bound]` as a dyadic lookup
    /// table with `bits` fractional bits, extending the prefix first.
    pub fn difference_table(&self, bound: &Rational, bits: u32) -> Result<DyadicTable> {
        self.extend_to_bound(bound)?;
        let z = self.z_prefix().closure();
        DyadicTable::new(&z, bits)
            .ok_or_else(|| Error::Complexity(format!("difference table at {} bits", bits)))
    }

    /// A nonempty open interval of vertices adjacent to every white point
    /// and to no black point, verified exactly.
    pub fn witness_interval(&self, whites: &[Rational], blacks: &[Rational]) -> Result<RationalInterval> {
        if self.mode == LineMode::TriangleFree {
            for (i, u) in whites.iter().enumerate() {
                for v in &whites[i + 1..] {
                    if u != v && self.adjacent(u, v)? {
                        return Err(Error::Precondition(format!(
                            "white points {} and {} are adjacent",
                            fmt_rational(u),
                            fmt_rational(v)
                        )));
                    }
                }
            }
        }
        // Shift by the least integer making the white points sum-free, so
        // that small enough covers are sum-free; the graph is shift-invariant.
        let shift = match self.mode {
            LineMode::TriangleFree => {
                let bad: Vec<Rational> = whites
                    .iter()
                    .flat_map(|a| whites.iter().flat_map(move |b| whites.iter().map(move |c| c - a - b)))
                    .collect();
                let mut t = Rational::zero();
                while bad.contains(&t) {
                    t += Rational::one();
                }
                t
            }
            LineMode::Plain => Rational::zero(),
        };
        let sw: Vec<Rational> = whites.iter().map(|x| x + &shift).collect();
        let sb: Vec<Rational> = blacks.iter().map(|x| x + &shift).collect();
        let halvings = if self.mode == LineMode::Plain { 0 } else { MAX_HALVINGS };
        let filter = self.mode.filter();
        let pattern = locate_with(&sw, &sb, halvings, |p| {
            Ok(filter.admits(p) && !self.step_at(p.index())?.skipped)
        })?;
        let step = self.step_at(pattern.index())?;
        let iv = RationalInterval::open(&step.c - &step.eps - &shift, &step.c + &step.eps - &shift)?;
        if !self.verify_witness(&iv, whites, blacks)? {
            return Err(Error::Defect(format!("witness {iv} failed verification")));
        }
        Ok(iv)
    }

    /// Exact check that every `v` in `iv` is adjacent to all whites and to
    /// no black.
    pub fn verify_witness(&self, iv: &RationalInterval, whites: &[Rational], blacks: &[Rational]) -> Result<bool> {
        for w in whites {
            if iv.contains_closure(w) {
                return Ok(false);
            }
            let d = distances(iv, w);
            let z = self.closure_window(d.lo(), d.hi())?;
            if !z.closure_covers(&d) {
                return Ok(false);
            }
        }
        for b in blacks {
            let d = distances(iv, b);
            if !self.closure_window(d.lo(), d.hi())?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Per built step: `n | pattern idx | c | ε | Z_n`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in self.built() {
            let line = match &s.pattern {
                None => format!("0 | base | - | - | {}", s.z),
                Some(p) if s.skipped => format!("{} | {} SKIP | {} | - | ", s.index, p.index(), fmt_rational(&s.c)),
                Some(p) => format!(
                    "{} | {} | {} | {} | {}",
                    s.index,
                    p.index(),
                    fmt_rational(&s.c),
                    fmt_rational(&s.eps),
                    s.z
                ),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// The closed range of `|v - x|` over `v` in the closure of `iv`.
fn distances(iv: &RationalInterval, x: &Rational) -> RationalInterval {
    let (a, b) = (iv.lo() - x, iv.hi() - x);
    let iv = if a.is_negative() && b.is_positive() {
        RationalInterval::closed(Rational::zero(), std::cmp::max(-a, b))
    } else {
        let (a, b) = (a.abs(), b.abs());
        RationalInterval::closed(std::cmp::min(a.clone(), b.clone()), std::cmp::max(a, b))
    };
    iv.expect("ordered")
}

/// Whether some positive difference of two points of `whites` (closed,
/// each part widened by `eps`) lies in `near`.
fn differences_meet(whites: &IntervalSet, eps: &Rational, near: &IntervalSet) -> bool {
    let two_eps = int(2) * eps;
    whites.parts().iter().any(|p| {
        whites.parts().iter().any(|q| {
            let hi = p.hi() - q.lo() + &two_eps;
            if !hi.is_positive() {
                return false;
            }
            let lo = std::cmp::max(p.lo() - q.hi() - &two_eps, Rational::zero());
            near.closure_meets(&lo, &hi)
        })
    })
}

fn to_biguint(x: &Rational) -> BigUint {
    x.to_integer().to_biguint().expect("nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        crate::intervals::parse_rational(s).unwrap()
    }

    #[test]
    fn extension_is_lazy_and_idempotent() {
        let m = LineGraphModel::new(LineMode::Plain);
        m.extend_to_bound(&int(0)).unwrap();
        assert_eq!(m.built().len(), 1);
        assert_eq!(m.z_prefix().to_string(), "[1,2]");
        m.extend_to_bound(&int(100)).unwrap();
        let (c, rho) = m.centre(&m.frontier());
        assert!(c - rho > int(100));
        let before = m.dump();
        m.extend_to_bound(&int(100)).unwrap();
        assert_eq!(before, m.dump());
        assert!(m.extend_to_bound(&int(-1)).is_err());
    }

    #[test]
    fn triangle_free_base() {
        let m = LineGraphModel::new(LineMode::TriangleFree);
        assert_eq!(m.z_prefix().to_string(), "[1,6/5]");
        assert!(m.z_prefix().is_sum_free_closure());
    }

    #[test]
    fn step_limit_is_enforced() {
        let m = LineGraphModel::with_config(LineMode::Plain, LineConfig { max_steps: 3 });
        assert_eq!(m.extend_to_bound(&int(1000)), Err(Error::StepLimit(3)));
    }

    #[test]
    fn adjacency_examples() {
        let m = LineGraphModel::new(LineMode::Plain);
        assert!(m.adjacent(&int(0), &r("3/2")).unwrap());
        assert!(m.adjacent(&int(0), &int(2)).unwrap());
        assert!(!m.adjacent(&int(0), &r("1/2")).unwrap());
        assert!(matches!(m.adjacent(&int(3), &int(3)), Err(Error::Loop(_))));
    }

    #[test]
    fn prefix_steps_are_monotone_and_match_random_access() {
        for mode in [LineMode::Plain, LineMode::TriangleFree] {
            let m = LineGraphModel::new(mode);
            for _ in 0..60 {
                m.step().unwrap();
            }
            let built = m.built();
            let mut union = IntervalSet::empty();
            let mut last_max: Option<Rational> = None;
            for s in &built {
                union = union.union(&s.z);
                if s.z.is_empty() {
                    continue;
                }
                if let Some(prev) = &last_max {
                    assert!(s.z.min().unwrap() > *prev, "{mode} step {}", s.index);
                }
                last_max = Some(s.z.max().unwrap());
            }
            assert_eq!(union, m.z_prefix());
            let fresh = LineGraphModel::new(mode);
            for s in built.iter().skip(1) {
                assert_eq!(**s, *fresh.step_at(&s.index).unwrap());
            }
        }
    }

    #[test]
    fn closure_window_agrees_with_prefix() {
        for mode in [LineMode::Plain, LineMode::TriangleFree] {
            let m = LineGraphModel::new(mode);
            m.extend_to_bound(&int(300)).unwrap();
            let z = m.z_prefix().closure();
            let range = IntervalSet::single(RationalInterval::closed(int(0), int(300)).unwrap());
            assert_eq!(m.closure_window(&int(0), &int(300)).unwrap(), z.intersect(&range));
        }
    }

    #[test]
    fn triangle_free_prefix_stays_sum_free() {
        let m = LineGraphModel::new(LineMode::TriangleFree);
        for _ in 0..200 {
            m.step().unwrap();
            assert!(m.z_prefix().is_sum_free_closure());
        }
        assert!(m.built().iter().any(|s| s.skipped));
        assert!(m.built().iter().any(|s| !s.skipped && !s.z.is_empty()));
    }

    #[test]
    fn witness_examples() {
        let m = LineGraphModel::new(LineMode::Plain);
        let iv = m.witness_interval(&[int(0)], &[]).unwrap();
        assert!(iv.lo() < iv.hi());
        let mid = iv.midpoint();
        assert!(m.adjacent(&mid, &int(0)).unwrap());
        let iv = m.witness_interval(&[int(0), int(10)], &[int(5)]).unwrap();
        let mid = iv.midpoint();
        assert!(m.adjacent(&mid, &int(0)).unwrap());
        assert!(m.adjacent(&mid, &int(10)).unwrap());
        assert!(!m.adjacent(&mid, &int(5)).unwrap());
        for probe in [iv.lo() + (iv.hi() - iv.lo()) / int(7), iv.hi() - (iv.hi() - iv.lo()) / int(5)] {
            assert!(m.adjacent(&probe, &int(10)).unwrap());
            assert!(!m.adjacent(&probe, &int(5)).unwrap());
        }
    }

    #[test]
    fn triangle_free_witnesses() {
        let m = LineGraphModel::new(LineMode::TriangleFree);
        assert!(matches!(m.witness_interval(&[int(0), int(1)], &[]), Err(Error::Precondition(_))));
        let whites = [int(0), r("5/2")];
        let blacks = [r("11/10")];
        assert!(!m.adjacent(&whites[0], &whites[1]).unwrap());
        let iv = m.witness_interval(&whites, &blacks).unwrap();
        assert!(m.verify_witness(&iv, &whites, &blacks).unwrap());
        let v = iv.midpoint();
        assert!(m.adjacent(&v, &int(0)).unwrap());
        assert!(!m.adjacent(&v, &blacks[0]).unwrap());
    }

    #[test]
    fn verification_rejects_bad_intervals() {
        let m = LineGraphModel::new(LineMode::Plain);
        let iv = RationalInterval::open(r("11/10"), r("6/5")).unwrap();
        assert!(m.verify_witness(&iv, &[int(0)], &[]).unwrap());
        assert!(!m.verify_witness(&iv, &[int(0)], &[r("1/10")]).unwrap());
        assert!(!m.verify_witness(&iv, &[r("-1")], &[]).unwrap());
    }

    #[test]
    fn construction_is_deterministic() {
        for mode in [LineMode::Plain, LineMode::TriangleFree] {
            let a = LineGraphModel::new(mode);
            let b = LineGraphModel::new(mode);
            a.extend_to_bound(&int(2000)).unwrap();
            b.extend_to_bound(&int(2000)).unwrap();
            assert_eq!(a.dump(), b.dump());
        }
    }

    #[test]
    fn dump_lists_steps() {
        let m = LineGraphModel::new(LineMode::Plain);
        m.step().unwrap();
        let dump = m.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines[0], "0 | base | - | - | [1,2]");
        assert!(lines[1].starts_with("1 | 1 | 5 | "), "{}", lines[1]);
    }

    #[test]
    fn difference_table_matches_exact_membership() {
        let m = LineGraphModel::new(LineMode::Plain);
        let table = m.difference_table(&int(50), 8).unwrap();
        for k in 0..(50 * 256) {
            let d = Rational::new(BigInt::from(k), BigInt::from(256));
            assert_eq!(table.contains(k as i128), m.z_prefix().contains_closure(&d), "{d}");
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-800i64..800, 1i64..16).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn adjacency_is_symmetric_and_shift_invariant(x in small_rational(), y in small_rational(), t in small_rational()) {
            prop_assume!(x != y);
            let m = LineGraphModel::new(LineMode::Plain);
            let xy = m.adjacent(&x, &y).unwrap();
            prop_assert_eq!(xy, m.adjacent(&y, &x).unwrap());
            prop_assert_eq!(xy, m.adjacent(&(&x + &t), &(&y + &t)).unwrap());
        }
    }
}
