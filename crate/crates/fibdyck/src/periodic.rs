//! Periodic points: enumeration, multiplier classification, open-bracket
//! geometry, orbit tables, and Moebius inversion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::codes::{self, CodeClass};
use crate::core_shift::{is_admissible_cycle, label_word, Label, MonoidElement, Symbol, Word};
use crate::error::{Error, Result};

/// A periodic point, represented by its period window `p[0, n)`. Rotations
/// of the same cycle are different points of the same orbit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodicPoint {
    pub cycle: Word,
}

impl PeriodicPoint {
    pub fn new(cycle: Word) -> Result<PeriodicPoint> {
        if !is_admissible_cycle(&cycle) {
            return Err(Error::NotInDomain(format!(
                "{cycle} is not an admissible cycle"
            )));
        }
        Ok(PeriodicPoint { cycle })
    }

    pub fn n(&self) -> usize {
        self.cycle.len()
    }

    /// The point shifted left by `k` positions.
    pub fn rotated(&self, k: usize) -> PeriodicPoint {
        PeriodicPoint {
            cycle: self.cycle.rotate_left(k),
        }
    }

    pub fn orbit(&self) -> Orbit {
        let d = smallest_period(self);
        Orbit {
            necklace: Word::new(self.cycle[..d].to_vec()).min_rotation(),
            period: d,
        }
    }
}

impl std::fmt::Display for PeriodicPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycle)
    }
}

/// An orbit named by the least rotation of its primitive cycle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbit {
    pub necklace: Word,
    pub period: usize,
}

/// Sign of the multiplier of a periodic point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neutral,
    Negative,
    Positive,
}

impl Sign {
    pub fn name(self) -> &'static str {
        match self {
            Sign::Neutral => "neutral",
            Sign::Negative => "negative",
            Sign::Positive => "positive",
        }
    }

    pub fn from_name(s: &str) -> Option<Sign> {
        Some(match s {
            "neutral" => Sign::Neutral,
            "negative" => Sign::Negative,
            "positive" => Sign::Positive,
            _ => return None,
        })
    }
}

/// Multiplier data of a periodic point: sign, primitive necklace over the
/// bracket types written as a string of '0' and '1' (empty when neutral),
/// the per-period bracket counts, and the power kappa with which the
/// necklace appears in the per-period label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplierClass {
    pub sign: Sign,
    pub necklace: String,
    pub nu0: usize,
    pub nu1: usize,
    pub kappa: usize,
}

/// Least period of the cycle.
pub fn smallest_period(p: &PeriodicPoint) -> usize {
    let w = &p.cycle;
    let n = w.len();
    (1..=n)
        .find(|&d| n % d == 0 && (d..n).all(|i| w[i] == w[i - d]))
        .expect("every word has itself as a period")
}

fn necklace_string(indices: &[u8]) -> (String, usize) {
    let m = indices.len();
    let d = (1..=m)
        .find(|&d| m % d == 0 && (d..m).all(|i| indices[i] == indices[i - d]))
        .unwrap();
    let root = &indices[..d];
    let canonical = (0..d)
        .map(|k| {
            let mut s = String::with_capacity(d);
            for i in 0..d {
                s.push(if root[(k + i) % d] == 0 { '0' } else { '1' });
            }
            s
        })
        .min()
        .unwrap();
    (canonical, m / d)
}

/// Multiplier classification by scanning per-period labels of all rotations.
///
/// Meant for primitive points (least period equal to the cycle length); on
/// a non-primitive cycle it still reports the primitive necklace root of
/// the per-period label.
pub fn classify(p: &PeriodicPoint) -> MultiplierClass {
    let n = p.n();
    let labels: Vec<MonoidElement> = (0..n)
        .map(|i| label_word(&p.cycle.rotate_left(i)))
        .collect();
    if labels.iter().any(MonoidElement::is_one) {
        return MultiplierClass {
            sign: Sign::Neutral,
            necklace: String::new(),
            nu0: 0,
            nu1: 0,
            kappa: 0,
        };
    }
    for l in &labels {
        if let MonoidElement::Reduced { plus, minus } = l {
            if plus.is_empty() && !minus.is_empty() {
                let (necklace, kappa) = necklace_string(minus);
                let nu0 = minus.iter().filter(|&&x| x == 0).count();
                let nu1 = minus.len() - nu0;
                return MultiplierClass {
                    sign: Sign::Negative,
                    necklace,
                    nu0,
                    nu1,
                    kappa,
                };
            }
        }
    }
    for l in &labels {
        if let MonoidElement::Reduced { plus, minus } = l {
            if minus.is_empty() && !plus.is_empty() {
                let (necklace, kappa) = necklace_string(plus);
                let nu0 = plus.iter().filter(|&&x| x == 0).count();
                let nu1 = plus.len() - nu0;
                return MultiplierClass {
                    sign: Sign::Positive,
                    necklace,
                    nu0,
                    nu1,
                    kappa,
                };
            }
        }
    }
    panic!("point {} has no neutral, negative, or positive rotation", p);
}

/// Every admissible cyclic word of length `n`, in lexicographic order.
/// All rotations are emitted; orbit deduplication is a separate step.
pub fn enumerate_points(n: usize) -> Vec<PeriodicPoint> {
    assert!(n >= 1);
    let mut e = Enumerator {
        n,
        word: Vec::with_capacity(n),
        plus: Vec::new(),
        minus: Vec::new(),
        out: Vec::new(),
    };
    e.descend();
    e.out
}

struct Enumerator {
    n: usize,
    word: Vec<Symbol>,
    plus: Vec<u8>,
    minus: Vec<u8>,
    out: Vec<PeriodicPoint>,
}

enum Undo {
    Nothing,
    PushedMinus,
    PoppedMinus(u8),
    PushedPlus,
}

impl Enumerator {
    fn descend(&mut self) {
        if self.word.len() == self.n {
            self.finish();
            return;
        }
        let vertex = self.word.last().map(|s| s.target());
        for s in Symbol::ALL {
            if let Some(v) = vertex {
                if s.source() != v {
                    continue;
                }
            }
            let undo = match s.label() {
                Label::One => Undo::Nothing,
                Label::Minus(k) => {
                    self.minus.push(k);
                    Undo::PushedMinus
                }
                Label::Plus(k) => match self.minus.last() {
                    Some(&top) if top == k => {
                        self.minus.pop();
                        Undo::PoppedMinus(top)
                    }
                    Some(_) => continue,
                    None => {
                        self.plus.push(k);
                        Undo::PushedPlus
                    }
                },
            };
            self.word.push(s);
            self.descend();
            self.word.pop();
            match undo {
                Undo::Nothing => {}
                Undo::PushedMinus => {
                    self.minus.pop();
                }
                Undo::PoppedMinus(k) => self.minus.push(k),
                Undo::PushedPlus => {
                    self.plus.pop();
                }
            }
        }
    }

    fn finish(&mut self) {
        let first = self.word[0];
        let last = self.word[self.n - 1];
        if last.target() != first.source() {
            return;
        }
        // The prefix label is nonzero by construction; the square of the
        // per-period label stays nonzero iff the junction brackets match.
        let k = self.plus.len().min(self.minus.len());
        let ml = self.minus.len();
        if (0..k).all(|t| self.minus[ml - 1 - t] == self.plus[t]) {
            self.out.push(PeriodicPoint {
                cycle: Word::new(self.word.clone()),
            });
        }
    }
}

/// Indices whose bracket never closes, split by bracket type.
///
/// A type-0 (type-1) open index carries the symbol a (b). One scan over
/// three periods covers a two-period window from every first-period index,
/// which is enough: a bracket of a negative point that survives one period
/// survives forever, and brackets of neutral or positive points close
/// within two periods.
pub fn open_indices(p: &PeriodicPoint) -> (Vec<usize>, Vec<usize>) {
    let n = p.n();
    let mut stack: Vec<(usize, u8)> = Vec::new();
    for t in 0..3 * n {
        let s = p.cycle[t % n];
        match s.label() {
            Label::One => {}
            Label::Minus(k) => stack.push((t, k)),
            Label::Plus(k) => {
                if let Some(&(_, top)) = stack.last() {
                    debug_assert_eq!(top, k, "bracket mismatch in admissible point");
                    stack.pop();
                }
            }
        }
    }
    let mut i0 = Vec::new();
    let mut i1 = Vec::new();
    for (t, k) in stack {
        if t < n {
            if k == 0 {
                i0.push(t);
            } else {
                i1.push(t);
            }
        }
    }
    (i0, i1)
}

/// One open index together with the gap back to the cyclically previous
/// open index. For a type-1 site the gap splits uniquely as P c T with
/// P in C* and T in Co(1)*; `anchor` is the absolute position of that c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSite {
    pub index: usize,
    pub one_type: bool,
    /// Position right after the previous open index.
    pub gap_start: usize,
    /// Content strictly between the previous open index and this one.
    pub gap: Word,
    pub split: Option<GapSplit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSplit {
    /// Absolute position of the splitting c.
    pub anchor: usize,
    pub prefix: Word,
    pub tail: Word,
}

/// All open sites of a point in increasing index order.
#[derive(Debug, Clone)]
pub struct OpenView {
    pub n: usize,
    pub sites: Vec<OpenSite>,
}

impl OpenView {
    pub fn build(p: &PeriodicPoint) -> OpenView {
        let n = p.n();
        let (i0, i1) = open_indices(p);
        let mut indices: Vec<(usize, bool)> = i0
            .into_iter()
            .map(|i| (i, false))
            .chain(i1.into_iter().map(|i| (i, true)))
            .collect();
        indices.sort_unstable();
        let m = indices.len();
        let mut sites = Vec::with_capacity(m);
        for s in 0..m {
            let (index, one_type) = indices[s];
            let (prev, _) = indices[(s + m - 1) % m];
            let gap_start = (prev + 1) % n;
            let gap_len = (index + n - prev - 1) % n;
            let gap = p.cycle.cyclic_slice(gap_start, gap_len);
            let split = if one_type {
                Some(split_one_gap(&gap, gap_start, n))
            } else {
                debug_assert!(
                    codes::in_star(&gap, CodeClass::C),
                    "gap before a type-0 open site must lie in C*"
                );
                None
            };
            sites.push(OpenSite {
                index,
                one_type,
                gap_start,
                gap,
                split,
            });
        }
        OpenView { n, sites }
    }

    pub fn prev(&self, s: usize) -> &OpenSite {
        let m = self.sites.len();
        &self.sites[(s + m - 1) % m]
    }

    pub fn next(&self, s: usize) -> &OpenSite {
        &self.sites[(s + 1) % self.sites.len()]
    }
}

fn split_one_gap(gap: &Word, gap_start: usize, n: usize) -> GapSplit {
    // The anchor is the last C*-prefix boundary sitting on a c; everything
    // after it is the Co(1)* tail.
    let anchor_rel = codes::c_star_prefix_ends(gap)
        .into_iter()
        .rev()
        .find(|&s| s < gap.len() && gap[s] == Symbol::Bm)
        .expect("gap before a type-1 open site must contain its anchor");
    debug_assert!(codes::in_star(&gap[anchor_rel + 1..], CodeClass::Co1));
    GapSplit {
        anchor: (gap_start + anchor_rel) % n,
        prefix: Word::new(gap[..anchor_rel].to_vec()),
        tail: Word::new(gap[anchor_rel + 1..].to_vec()),
    }
}

/// Open-appearance statistics: the maximal interior length over open
/// appearances of class words, the per-class sets of maximizing indices,
/// and their lexicographic selections by length-n history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaStats {
    pub lambda: Option<usize>,
    /// Indices attaining `lambda` through each class; absent key = empty set.
    pub j_sets: BTreeMap<CodeClass, Vec<usize>>,
    /// Subset of each J-set minimizing the history p(j-n, j].
    pub j_min: BTreeMap<CodeClass, Vec<usize>>,
}

impl LambdaStats {
    pub fn j_set(&self, class: CodeClass) -> &[usize] {
        self.j_sets.get(&class).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn j_min(&self, class: CodeClass) -> &[usize] {
        self.j_min.get(&class).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Compute the open-appearance statistics of a point.
///
/// Appearances at a site are read off the open-site geometry: a type-0 site
/// after a type-0 site carries a B(0,0) word (value: gap length), after a
/// type-1 site a D(1,0) word when the gap dominates the previous tail; a
/// type-1 site always carries its B(1) word (value: tail length), and
/// additionally a D(0,1) or D(1,1) word when its prefix dominates. Only
/// words of length at most n count as appearing.
pub fn lambda_stats(p: &PeriodicPoint) -> LambdaStats {
    let n = p.n();
    let view = OpenView::build(p);
    let mut appearances: Vec<(CodeClass, usize, usize)> = Vec::new();
    for (s, site) in view.sites.iter().enumerate() {
        let prev = view.prev(s);
        if !site.one_type {
            if !prev.one_type {
                let word_len = site.gap.len() + 2;
                if word_len <= n {
                    appearances.push((CodeClass::B00, site.index, site.gap.len()));
                }
            } else {
                let prev_tail = &prev.split.as_ref().unwrap().tail;
                let word_len = prev_tail.len() + 2 + site.gap.len() + 1;
                if word_len <= n && site.gap.len() >= prev_tail.len() {
                    appearances.push((CodeClass::D10, site.index, site.gap.len()));
                }
            }
        } else {
            let split = site.split.as_ref().unwrap();
            let b1_len = split.tail.len() + 2;
            if b1_len <= n {
                appearances.push((CodeClass::B1, site.index, split.tail.len()));
            }
            if !prev.one_type {
                let word_len = 1 + split.prefix.len() + 1 + split.tail.len() + 1;
                if word_len <= n && split.prefix.len() >= split.tail.len() {
                    appearances.push((CodeClass::D01, site.index, split.prefix.len()));
                }
            } else {
                let prev_tail = &prev.split.as_ref().unwrap().tail;
                let word_len = prev_tail.len() + 2 + split.prefix.len() + split.tail.len() + 2;
                if word_len <= n
                    && split.prefix.len() >= prev_tail.len().max(split.tail.len())
                {
                    appearances.push((CodeClass::D11, site.index, split.prefix.len()));
                }
            }
        }
    }
    let lambda = appearances.iter().map(|&(_, _, v)| v).max();
    let mut j_sets: BTreeMap<CodeClass, Vec<usize>> = BTreeMap::new();
    if let Some(max) = lambda {
        for (class, index, value) in appearances {
            if value == max {
                j_sets.entry(class).or_default().push(index);
            }
        }
        for set in j_sets.values_mut() {
            set.sort_unstable();
            set.dedup();
        }
    }
    let mut j_min = BTreeMap::new();
    for (&class, set) in &j_sets {
        let best = set
            .iter()
            .map(|&j| p.cycle.cyclic_slice((j + 1) % n, n))
            .min()
            .unwrap();
        let chosen: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&j| p.cycle.cyclic_slice((j + 1) % n, n) == best)
            .collect();
        j_min.insert(class, chosen);
    }
    LambdaStats {
        lambda,
        j_sets,
        j_min,
    }
}

/// Orbit tally at period `n`: orbits of least period n grouped by sign and
/// multiplier necklace, plus point totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    pub n: usize,
    pub rows: BTreeMap<(Sign, String), u64>,
    pub neutral_orbits: u64,
    /// Number of points with p = shift^n(p), least period dividing n.
    pub total_points: u64,
    /// Number of points with least period exactly n.
    pub primitive_points: u64,
}

impl OrbitTable {
    pub fn orbit_count(&self, sign: Sign, necklace: &str) -> u64 {
        self.rows
            .get(&(sign, necklace.to_string()))
            .copied()
            .unwrap_or(0)
    }

    pub fn total_orbits(&self) -> u64 {
        self.rows.values().sum::<u64>() + self.neutral_orbits
    }

    /// Orbits of every negative necklace other than `necklace`.
    pub fn other_negative_orbits(&self, necklace: &str) -> u64 {
        self.rows
            .iter()
            .filter(|((sign, mu), _)| *sign == Sign::Negative && mu != necklace)
            .map(|(_, &c)| c)
            .sum()
    }
}

/// Tally the orbits of least period `n`.
pub fn orbit_table(n: usize) -> OrbitTable {
    orbit_table_from_points(n, &enumerate_points(n))
}

/// Tally from a precomputed enumeration of all period-n points.
pub fn orbit_table_from_points(n: usize, points: &[PeriodicPoint]) -> OrbitTable {
    let mut rows: BTreeMap<(Sign, String), u64> = BTreeMap::new();
    let mut neutral_orbits = 0;
    let mut primitive_points = 0;
    for p in points {
        if smallest_period(p) != n {
            continue;
        }
        primitive_points += 1;
        if (1..n).any(|k| p.cycle.rotate_left(k) < p.cycle) {
            continue;
        }
        let class = classify(p);
        if class.sign == Sign::Neutral {
            neutral_orbits += 1;
        } else {
            *rows.entry((class.sign, class.necklace)).or_insert(0) += 1;
        }
    }
    OrbitTable {
        n,
        rows,
        neutral_orbits,
        total_points: points.len() as u64,
        primitive_points,
    }
}

fn moebius(mut m: usize) -> i64 {
    let mut mu = 1i64;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if m > 1 {
        mu = -mu;
    }
    mu
}

/// Orbit counts from point counts: card O_n = (1/n) sum over d | n of
/// moebius(n/d) card P_d. `point_counts[k-1]` is card P_k; the result is
/// indexed the same way.
pub fn mobius_orbits(point_counts: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(point_counts.len());
    for n in 1..=point_counts.len() {
        let mut sum = BigInt::zero();
        for d in 1..=n {
            if n % d == 0 {
                sum += &point_counts[d - 1] * moebius(n / d);
            }
        }
        if (&sum % n as i64) != BigInt::zero() {
            return Err(Error::NonIntegral(n));
        }
        let orbits = sum / n as i64;
        if orbits < BigInt::zero() {
            return Err(Error::Negative(n));
        }
        out.push(orbits);
    }
    Ok(out)
}

/// Lemma (c) inequality: a multiplier is exceptional at period n when its
/// negative orbits outnumber the negative orbits of all other multipliers
/// combined.
pub fn is_exceptional_in(table: &OrbitTable, necklace: &str) -> bool {
    table.orbit_count(Sign::Negative, necklace) > table.other_negative_orbits(necklace)
}

pub fn is_exceptional(necklace: &str, n: usize) -> bool {
    is_exceptional_in(&orbit_table(n), necklace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_shift::time_reverse;
    use std::collections::BTreeSet;

    fn pt(s: &str) -> PeriodicPoint {
        PeriodicPoint::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn enumeration_at_small_periods() {
        let p1 = enumerate_points(1);
        assert_eq!(
            p1.iter().map(|p| p.cycle.to_string()).collect::<Vec<_>>(),
            vec!["a", "A"]
        );
        let p2 = enumerate_points(2);
        assert_eq!(p2.len(), 12);
        let neutral = p2
            .iter()
            .filter(|p| classify(p).sign == Sign::Neutral)
            .count();
        assert_eq!(neutral, 6);
    }

    #[test]
    fn enumeration_is_rotation_closed_and_sorted() {
        for n in 1..=5 {
            let points = enumerate_points(n);
            let set: BTreeSet<&Word> = points.iter().map(|p| &p.cycle).collect();
            assert_eq!(set.len(), points.len());
            let mut sorted = points.clone();
            sorted.sort();
            assert_eq!(sorted, points);
            for p in &points {
                for k in 1..n {
                    assert!(set.contains(&p.cycle.rotate_left(k)));
                }
            }
        }
    }

    #[test]
    fn smallest_period_of_repetitions() {
        assert_eq!(smallest_period(&pt("aa")), 1);
        assert_eq!(smallest_period(&pt("cb")), 2);
        assert_eq!(smallest_period(&pt("cbcb")), 2);
        assert_eq!(smallest_period(&pt("acb")), 3);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&pt("a"));
        assert_eq!(c.sign, Sign::Negative);
        assert_eq!(c.necklace, "0");
        assert_eq!(c.kappa, 1);
        assert_eq!((c.nu0, c.nu1), (1, 0));

        let c = classify(&pt("cb"));
        assert_eq!(c.sign, Sign::Negative);
        assert_eq!(c.necklace, "1");
        assert_eq!(c.kappa, 1);

        assert_eq!(classify(&pt("bB")).sign, Sign::Neutral);
        assert_eq!(classify(&pt("A")).sign, Sign::Positive);

        let c = classify(&pt("aacb"));
        assert_eq!(c.necklace, "001");
        assert_eq!((c.nu0, c.nu1, c.kappa), (2, 1, 1));
    }

    #[test]
    fn classify_is_rotation_invariant() {
        for n in 1..=6 {
            for p in enumerate_points(n) {
                let c = classify(&p);
                let r = classify(&p.rotated(1));
                assert_eq!((c.sign, c.necklace, c.kappa), (r.sign, r.necklace, r.kappa));
            }
        }
    }

    #[test]
    fn kappa_scales_the_necklace_counts() {
        for n in 1..=6 {
            for p in enumerate_points(n) {
                let c = classify(&p);
                if c.sign == Sign::Neutral {
                    continue;
                }
                let root0 = c.necklace.chars().filter(|&ch| ch == '0').count();
                let root1 = c.necklace.len() - root0;
                assert_eq!(c.nu0, c.kappa * root0);
                assert_eq!(c.nu1, c.kappa * root1);
            }
        }
    }

    #[test]
    fn open_indices_examples() {
        assert_eq!(open_indices(&pt("a")), (vec![0], vec![]));
        assert_eq!(open_indices(&pt("aA")), (vec![], vec![]));
        assert_eq!(open_indices(&pt("cCcb")), (vec![], vec![3]));
        assert_eq!(open_indices(&pt("acb")), (vec![0], vec![2]));
    }

    #[test]
    fn open_indices_agree_with_long_window_oracle() {
        // Oracle: a bracket is open iff it survives an eight-period scan.
        for n in 1..=6 {
            for p in enumerate_points(n) {
                let mut stack: Vec<(usize, u8)> = Vec::new();
                for t in 0..8 * n {
                    match p.cycle[t % n].label() {
                        Label::One => {}
                        Label::Minus(k) => stack.push((t, k)),
                        Label::Plus(_) => {
                            stack.pop();
                        }
                    }
                }
                let mut i0 = Vec::new();
                let mut i1 = Vec::new();
                for (t, k) in stack {
                    if t < n {
                        if k == 0 {
                            i0.push(t)
                        } else {
                            i1.push(t)
                        }
                    }
                }
                assert_eq!(open_indices(&p), (i0, i1), "open indices differ on {p}");
            }
        }
    }

    #[test]
    fn open_view_splits_type_one_gaps() {
        let view = OpenView::build(&pt("acCcb"));
        assert_eq!(view.sites.len(), 2);
        assert!(!view.sites[0].one_type);
        assert_eq!(view.sites[0].index, 0);
        let one = &view.sites[1];
        assert_eq!(one.index, 4);
        let split = one.split.as_ref().unwrap();
        assert_eq!(split.anchor, 3);
        assert_eq!(split.prefix, "cC".parse().unwrap());
        assert_eq!(split.tail, Word::empty());
    }

    #[test]
    fn lambda_stats_examples() {
        let s = lambda_stats(&pt("aa"));
        assert_eq!(s.lambda, Some(0));
        assert_eq!(s.j_set(CodeClass::B00), &[0, 1]);
        assert_eq!(s.j_min(CodeClass::B00), &[0, 1]);

        let s = lambda_stats(&pt("cb"));
        assert_eq!(s.lambda, Some(0));
        assert_eq!(s.j_set(CodeClass::B1), &[1]);

        let s = lambda_stats(&pt("a"));
        assert_eq!(s.lambda, None);
        assert!(s.j_sets.is_empty());

        let s = lambda_stats(&pt("bB"));
        assert_eq!(s.lambda, None);
    }

    #[test]
    fn orbit_tables_match_reference_counts() {
        let t3 = orbit_table(3);
        assert_eq!(t3.orbit_count(Sign::Negative, "0"), 2);
        assert_eq!(t3.orbit_count(Sign::Negative, "01"), 1);
        let t4 = orbit_table(4);
        assert_eq!(t4.orbit_count(Sign::Negative, "0"), 2);
        assert_eq!(t4.orbit_count(Sign::Negative, "1"), 3);
        assert_eq!(t4.orbit_count(Sign::Negative, "001"), 1);
        assert_eq!(t4.neutral_orbits, 6);
        let t5 = orbit_table(5);
        assert_eq!(t5.orbit_count(Sign::Negative, "0"), 9);
        assert_eq!(t5.orbit_count(Sign::Negative, "01"), 5);
        assert_eq!(t5.orbit_count(Sign::Negative, "011"), 1);
        assert_eq!(t5.orbit_count(Sign::Negative, "0001"), 1);
        let t6 = orbit_table(6);
        assert_eq!(t6.orbit_count(Sign::Negative, "0"), 10);
        assert_eq!(t6.orbit_count(Sign::Negative, "1"), 15);
        assert_eq!(t6.orbit_count(Sign::Negative, "001"), 7);
        assert_eq!(t6.neutral_orbits, 27);
    }

    #[test]
    fn negative_and_positive_orbit_counts_agree() {
        for n in 1..=6 {
            let t = orbit_table(n);
            let necklaces: BTreeSet<&String> =
                t.rows.keys().map(|(_, necklace)| necklace).collect();
            for mu in necklaces {
                assert_eq!(
                    t.orbit_count(Sign::Negative, mu),
                    t.orbit_count(Sign::Positive, mu),
                    "sign symmetry fails at n={n}, mu={mu}"
                );
            }
        }
    }

    #[test]
    fn time_reverse_swaps_negative_and_positive_points() {
        for n in 1..=6 {
            let points = enumerate_points(n);
            let negatives: BTreeSet<Word> = points
                .iter()
                .filter(|p| classify(p).sign == Sign::Negative)
                .map(|p| p.cycle.clone())
                .collect();
            let positives: BTreeSet<Word> = points
                .iter()
                .filter(|p| classify(p).sign == Sign::Positive)
                .map(|p| p.cycle.clone())
                .collect();
            let reversed: BTreeSet<Word> = negatives.iter().map(time_reverse).collect();
            assert_eq!(reversed, positives);
        }
    }

    #[test]
    fn mobius_orbit_counts() {
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(mobius_orbits(&big(&[2, 12])).unwrap(), big(&[2, 5]));
        assert_eq!(mobius_orbits(&big(&[7])).unwrap(), big(&[7]));
        assert_eq!(
            mobius_orbits(&big(&[1, 3, 4, 7, 11])).unwrap(),
            big(&[1, 1, 1, 1, 2])
        );
        assert_eq!(mobius_orbits(&big(&[2, 3])).unwrap_err(), Error::NonIntegral(2));
    }

    #[test]
    fn exceptional_multipliers_at_small_periods() {
        assert!(is_exceptional("0", 1));
        assert!(is_exceptional("1", 2));
        assert!(is_exceptional("0", 3));
        assert!(!is_exceptional("0", 2));
        assert!(!is_exceptional("1", 3));
        assert!(!is_exceptional("01", 4));
        assert!(!is_exceptional("01", 5));
    }
}
