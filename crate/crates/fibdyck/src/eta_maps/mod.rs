//! Injective shift-commuting rewriting maps on negative-multiplier
//! periodic points, one family per source multiplier shape, with their
//! inverses and an exhaustive verifier.
//!
//! Each family partitions its domain into cells keyed on the open-site
//! geometry; the rewrite targets a window selected by lexicographic
//! minimality over rotation histories, so the maps commute with rotation
//! by construction. Reconstruction recipes locate the rewritten window
//! inside the image from its open structure alone.

mod l1;
mod l2;
mod m0;
mod m1;

use std::collections::BTreeMap;

use crate::core_shift::Word;
use crate::error::{Error, Result};
use crate::periodic::{
    classify, enumerate_points, orbit_table, smallest_period, MultiplierClass, OpenView,
    PeriodicPoint, Sign,
};

pub use l1::Cell as L1Cell;
pub use l2::Cell as L2Cell;
pub use m0::Cell as M0Cell;
pub use m1::Cell as M1Cell;

/// The four map families, named by their source multiplier shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    /// Source necklace 01.
    L1,
    /// Source necklace with at least two symbols of some type (any
    /// necklace other than 0, 1, 01).
    L2,
    /// Source necklace 0.
    M0,
    /// Source necklace 1.
    M1,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::L1 => "L1",
            Family::L2 => "L2",
            Family::M0 => "M0",
            Family::M1 => "M1",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        match name {
            "L1" | "l1" => Some(Family::L1),
            "L2" | "l2" => Some(Family::L2),
            "M0" | "m0" => Some(Family::M0),
            "M1" | "m1" => Some(Family::M1),
            _ => None,
        }
    }

    /// Smallest period the construction covers.
    pub fn min_period(self) -> usize {
        match self {
            Family::L1 => 6,
            Family::L2 => 5,
            Family::M0 => 7,
            Family::M1 => 3,
        }
    }

    /// Whether a classified point belongs to this family's source set.
    pub fn covers(self, class: &MultiplierClass) -> bool {
        if class.sign != Sign::Negative {
            return false;
        }
        match self {
            Family::L1 => class.necklace == "01",
            Family::L2 => !matches!(class.necklace.as_str(), "0" | "1" | "01"),
            Family::M0 => class.necklace == "0",
            Family::M1 => class.necklace == "1",
        }
    }
}

/// A cell of some family's domain partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PartitionCell {
    L1(l1::Cell),
    L2(l2::Cell),
    M0(m0::Cell),
    M1(m1::Cell),
}

impl PartitionCell {
    pub fn family(self) -> Family {
        match self {
            PartitionCell::L1(_) => Family::L1,
            PartitionCell::L2(_) => Family::L2,
            PartitionCell::M0(_) => Family::M0,
            PartitionCell::M1(_) => Family::M1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PartitionCell::L1(c) => c.label(),
            PartitionCell::L2(c) => c.label(),
            PartitionCell::M0(c) => c.label(),
            PartitionCell::M1(c) => c.label(),
        }
    }
}

/// Result of applying a family map to a domain point.
#[derive(Clone, Debug)]
pub struct EtaResult {
    pub image: PeriodicPoint,
    pub cell: PartitionCell,
    /// Per-period bracket counts of the image's label.
    pub nu: (usize, usize),
}

fn domain_check(p: &PeriodicPoint, family: Family) -> Result<MultiplierClass> {
    let n = p.n();
    if n < family.min_period() {
        return Err(Error::NotInDomain(format!(
            "{} covers periods {} and up, got {n}",
            family.name(),
            family.min_period()
        )));
    }
    if smallest_period(p) != n {
        return Err(Error::NotInDomain(format!(
            "point {p} has smaller period than its cycle length"
        )));
    }
    let class = classify(p);
    if !family.covers(&class) {
        return Err(Error::NotInDomain(format!(
            "point {p} is not a negative point with a {} source multiplier",
            family.name()
        )));
    }
    Ok(class)
}

/// The length-n window ending at index i, the rotation history used for
/// lexicographic tie-breaking.
pub(crate) fn history(p: &PeriodicPoint, i: usize) -> Word {
    p.cycle.cyclic_slice((i + 1) % p.n(), p.n())
}

/// All indices among the candidates whose history is lexicographically
/// minimal. Singleton on primitive points.
pub(crate) fn lexmin_by_history(p: &PeriodicPoint, candidates: &[usize]) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    let mut best_hist: Option<Word> = None;
    for &i in candidates {
        let h = history(p, i);
        match &best_hist {
            None => {
                best_hist = Some(h);
                best = vec![i];
            }
            Some(b) => {
                if h.0 < b.0 {
                    best_hist = Some(h);
                    best = vec![i];
                } else if h.0 == b.0 {
                    best.push(i);
                }
            }
        }
    }
    best
}

/// Replace `len` symbols starting at `start` (cyclically) and validate
/// the result as a periodic point.
pub(crate) fn splice(
    p: &PeriodicPoint,
    start: usize,
    len: usize,
    repl: &[crate::core_shift::Symbol],
) -> Result<PeriodicPoint> {
    assert_eq!(len, repl.len(), "splice must preserve the period");
    let mut w = p.cycle.clone();
    w.splice_cyclic(start, repl);
    PeriodicPoint::new(w)
}

/// Cyclic distance from i to j walking forward.
pub(crate) fn fwd(n: usize, i: usize, j: usize) -> usize {
    (j + n - i) % n
}

/// Array position of the site with the given absolute index.
pub(crate) fn site_pos(view: &OpenView, index: usize) -> usize {
    view.sites
        .iter()
        .position(|s| s.index == index)
        .expect("index is an open site")
}

/// Nearest open site strictly before the position, cyclically.
pub(crate) fn prev_open<'a>(view: &'a OpenView, pos: usize) -> Option<&'a crate::periodic::OpenSite> {
    view.sites
        .iter()
        .filter(|s| s.index != pos)
        .min_by_key(|s| fwd(view.n, s.index, pos))
}

/// Nearest open site strictly after the position, cyclically.
pub(crate) fn next_open<'a>(view: &'a OpenView, pos: usize) -> Option<&'a crate::periodic::OpenSite> {
    view.sites
        .iter()
        .filter(|s| s.index != pos)
        .min_by_key(|s| fwd(view.n, pos, s.index))
}

/// All maximal-length cyclic factors lying in C(0), as (start, len).
pub(crate) fn max_c0_factors(q: &PeriodicPoint) -> Vec<(usize, usize)> {
    let n = q.n();
    let mut len = if n % 2 == 0 { n } else { n - 1 };
    while len >= 2 {
        let hits: Vec<(usize, usize)> = (0..n)
            .filter(|&s| crate::codes::member(&q.cycle.cyclic_slice(s, len), crate::codes::CodeClass::C0))
            .map(|s| (s, len))
            .collect();
        if !hits.is_empty() {
            return hits;
        }
        len -= 2;
    }
    Vec::new()
}

/// All open pairs of consecutive type-0 sites whose gap length attains
/// the maximum, as array positions (first, second).
pub(crate) fn max_open_b00s(view: &OpenView) -> Vec<(usize, usize)> {
    let m = view.sites.len();
    let mut best: Option<usize> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for s in 0..m {
        let second = (s + 1) % m;
        if view.sites[s].one_type || view.sites[second].one_type || m == 1 {
            continue;
        }
        let value = view.sites[second].gap.len();
        match best {
            Some(bv) if value < bv => {}
            Some(bv) if value == bv => pairs.push((s, second)),
            _ => {
                best = Some(value);
                pairs.clear();
                pairs.push((s, second));
            }
        }
    }
    pairs
}

/// Determine the partition cell of a domain point.
pub fn cell_of(p: &PeriodicPoint, family: Family) -> Result<PartitionCell> {
    domain_check(p, family)?;
    let view = OpenView::build(p);
    Ok(match family {
        Family::L1 => PartitionCell::L1(l1::cell_of(p, &view)),
        Family::L2 => PartitionCell::L2(l2::cell_of(p, &view)),
        Family::M0 => PartitionCell::M0(m0::cell_of(p, &view)),
        Family::M1 => PartitionCell::M1(m1::cell_of(&view)),
    })
}

/// Apply the family map.
pub fn eta(p: &PeriodicPoint, family: Family) -> Result<EtaResult> {
    domain_check(p, family)?;
    let view = OpenView::build(p);
    let (image, cell) = match family {
        Family::L1 => {
            let c = l1::cell_of(p, &view);
            (l1::eta(p, &view, c)?, PartitionCell::L1(c))
        }
        Family::L2 => {
            let c = l2::cell_of(p, &view);
            (l2::eta(p, &view, c)?, PartitionCell::L2(c))
        }
        Family::M0 => {
            let c = m0::cell_of(p, &view);
            (m0::eta(p, &view, c)?, PartitionCell::M0(c))
        }
        Family::M1 => {
            let c = m1::cell_of(&view);
            (m1::eta(p, &view, c)?, PartitionCell::M1(c))
        }
    };
    let ic = classify(&image);
    let nu = if ic.sign == Sign::Neutral {
        (0, 0)
    } else {
        (ic.nu0, ic.nu1)
    };
    Ok(EtaResult { image, cell, nu })
}

/// Invert the family map on a point of the given cell's image.
pub fn reconstruct(q: &PeriodicPoint, family: Family, cell: PartitionCell) -> Result<PeriodicPoint> {
    if cell.family() != family {
        return Err(Error::NotInImage(format!(
            "cell {} belongs to family {}, not {}",
            cell.label(),
            cell.family().name(),
            family.name()
        )));
    }
    let view = OpenView::build(q);
    match cell {
        PartitionCell::L1(c) => l1::reconstruct(q, &view, c),
        PartitionCell::L2(c) => l2::reconstruct(q, &view, c),
        PartitionCell::M0(c) => m0::reconstruct(q, &view, c),
        PartitionCell::M1(c) => m1::reconstruct(q, &view, c),
    }
}

/// One failed check inside a verification sweep.
#[derive(Clone, Debug)]
pub struct Failure {
    pub check: &'static str,
    pub witness: String,
    pub detail: String,
}

/// Outcome of the exhaustive verification of one family at one period.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub family: Family,
    pub n: usize,
    pub domain_points: u64,
    pub cell_points: BTreeMap<&'static str, u64>,
    /// Per source necklace: own negative orbit count and the combined
    /// count over all other necklaces.
    pub count_checks: Vec<(String, u64, u64)>,
    pub failures: Vec<Failure>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustively verify a family at period n: partition coverage,
/// round-trip identity, shift-commutation, image admissibility and
/// multiplier avoidance, injectivity and pairwise-disjoint cell images
/// (per source necklace), and the orbit count inequality.
pub fn verify_family(family: Family, n: usize) -> Result<FamilyReport> {
    if n < family.min_period() {
        return Err(Error::NotInDomain(format!(
            "{} covers periods {} and up, got {n}",
            family.name(),
            family.min_period()
        )));
    }
    let mut report = FamilyReport {
        family,
        n,
        domain_points: 0,
        cell_points: BTreeMap::new(),
        count_checks: Vec::new(),
        failures: Vec::new(),
    };
    let fail = |failures: &mut Vec<Failure>, check, witness: String, detail: String| {
        if failures.len() < 40 {
            failures.push(Failure {
                check,
                witness,
                detail,
            });
        }
    };

    // Per source necklace: image point -> (source point, cell label).
    let mut images: BTreeMap<String, BTreeMap<String, (String, &'static str)>> = BTreeMap::new();
    let mut necklaces: Vec<String> = Vec::new();

    for p in enumerate_points(n) {
        if smallest_period(&p) != n {
            continue;
        }
        let class = classify(&p);
        if !family.covers(&class) {
            continue;
        }
        report.domain_points += 1;
        if !necklaces.contains(&class.necklace) {
            necklaces.push(class.necklace.clone());
        }

        let cell = match cell_of(&p, family) {
            Ok(c) => c,
            Err(e) => {
                fail(
                    &mut report.failures,
                    "coverage",
                    p.to_string(),
                    e.to_string(),
                );
                continue;
            }
        };
        *report.cell_points.entry(cell.label()).or_insert(0) += 1;

        let result = match eta(&p, family) {
            Ok(r) => r,
            Err(e) => {
                fail(&mut report.failures, "map", p.to_string(), e.to_string());
                continue;
            }
        };
        let q = &result.image;

        if q.n() != n {
            fail(
                &mut report.failures,
                "period",
                p.to_string(),
                format!("image {q} has period {}", q.n()),
            );
            continue;
        }

        if smallest_period(q) != n {
            fail(
                &mut report.failures,
                "image-primitivity",
                p.to_string(),
                format!("image {q} has smallest period {}", smallest_period(q)),
            );
            continue;
        }

        let image_class = classify(q);
        if image_class.sign != Sign::Neutral && image_class.necklace == class.necklace {
            fail(
                &mut report.failures,
                "multiplier-avoidance",
                p.to_string(),
                format!("image {q} keeps the source necklace {}", class.necklace),
            );
        }
        // The double-bracket cell absorbs the lone b site, so its images
        // land on the all-a necklace; every other alternating cell must
        // stay clear of that necklace as well.
        if family == Family::L1
            && cell != PartitionCell::L1(l1::Cell::PrefixBrackets)
            && image_class.sign == Sign::Negative
            && image_class.necklace == "0"
        {
            fail(
                &mut report.failures,
                "multiplier-avoidance",
                p.to_string(),
                format!("image {q} lands on the all-a necklace"),
            );
        }

        match reconstruct(q, family, result.cell) {
            Ok(back) if back == p => {}
            Ok(back) => fail(
                &mut report.failures,
                "round-trip",
                p.to_string(),
                format!("image {q} reconstructs to {back}"),
            ),
            Err(e) => fail(
                &mut report.failures,
                "round-trip",
                p.to_string(),
                format!("image {q}: {e}"),
            ),
        }

        let rotated = p.rotated(1);
        match eta(&rotated, family) {
            Ok(r2) if r2.image == q.rotated(1) => {}
            Ok(r2) => fail(
                &mut report.failures,
                "shift-commutation",
                p.to_string(),
                format!(
                    "rotating then mapping gives {}, mapping then rotating gives {}",
                    r2.image,
                    q.rotated(1)
                ),
            ),
            Err(e) => fail(
                &mut report.failures,
                "shift-commutation",
                p.to_string(),
                e.to_string(),
            ),
        }

        let per_necklace = images.entry(class.necklace.clone()).or_default();
        if let Some((other_src, other_cell)) =
            per_necklace.insert(q.to_string(), (p.to_string(), cell.label()))
        {
            let detail = if other_cell == cell.label() {
                format!("image {q} already produced by {other_src} in the same cell")
            } else {
                format!(
                    "image {q} already produced by {other_src} in cell {other_cell}, now by cell {}",
                    cell.label()
                )
            };
            fail(&mut report.failures, "injectivity", p.to_string(), detail);
        }
    }

    let table = orbit_table(n);
    necklaces.sort();
    for mu in necklaces {
        let own = table.orbit_count(Sign::Negative, &mu);
        let others = table.other_negative_orbits(&mu);
        if own > others {
            fail(
                &mut report.failures,
                "count-inequality",
                mu.clone(),
                format!("{own} orbits against {others} across the other necklaces"),
            );
        }
        report.count_checks.push((mu, own, others));
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_shift::Word;
    use std::str::FromStr;

    fn pt(s: &str) -> PeriodicPoint {
        PeriodicPoint::new(Word::from_str(s).unwrap()).unwrap()
    }

    #[test]
    fn m1_smallest_case_collapses_the_open_pair() {
        let p = pt("cCcb");
        let r = eta(&p, Family::M1).unwrap();
        assert_eq!(r.cell.label(), "(1)");
        assert_eq!(r.image.to_string(), "cCaa");
        assert_eq!(r.nu, (2, 0));
        let back = reconstruct(&r.image, Family::M1, r.cell).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn m1_family_verifies_exhaustively() {
        for n in 3..=9 {
            let rep = verify_family(Family::M1, n).unwrap();
            assert!(rep.passed(), "period {n}: {:?}", rep.failures);
        }
    }

    #[test]
    fn l1_single_pair_bracket_prefix_absorbs_the_b_site() {
        let p = pt("acCcbBb");
        let r = eta(&p, Family::L1).unwrap();
        assert_eq!(r.cell.label(), "[bb]");
        assert_eq!(r.image.to_string(), "acCaaAA");
        assert_eq!(r.nu, (1, 0));
        let back = reconstruct(&r.image, Family::L1, r.cell).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn l1_family_verifies_exhaustively() {
        for n in 6..=9 {
            let rep = verify_family(Family::L1, n).unwrap();
            assert!(rep.passed(), "period {n}: {:?}", rep.failures);
        }
    }

    #[test]
    fn l1_family_verifies_at_high_periods() {
        for n in 10..=11 {
            let rep = verify_family(Family::L1, n).unwrap();
            assert!(rep.passed(), "period {n}: {:?}", rep.failures);
        }
    }

    #[test]
    fn l2_family_verifies_exhaustively() {
        for n in 5..=9 {
            let rep = verify_family(Family::L2, n).unwrap();
            assert!(rep.passed(), "period {n}: {:?}", rep.failures);
        }
    }

    #[test]
    fn m0_rejects_periods_below_threshold() {
        assert!(matches!(
            verify_family(Family::M0, 6),
            Err(Error::NotInDomain(_))
        ));
    }

    #[test]
    fn m0_family_verifies_exhaustively() {
        for n in 7..=9 {
            let rep = verify_family(Family::M0, n).unwrap();
            assert!(rep.passed(), "period {n}: {:?}", rep.failures);
        }
    }

    #[test]
    fn m0_family_verifies_at_high_periods() {
        for n in 10..=11 {
            let rep = verify_family(Family::M0, n).unwrap();
            assert!(rep.passed(), "period {n}: {:?}", rep.failures);
        }
    }


    #[test]
    fn l2_family_verifies_at_high_periods() {
        for n in 10..=11 {
            let report = verify_family(Family::L2, n).unwrap();
            assert!(report.passed(), "period {n}: {:?}", report.failures);
        }
    }
}
