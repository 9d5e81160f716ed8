//! Family for the all-zero source necklace: every open site is an a
//! site, so cells key on gap content. A type-1 factor anywhere wins,
//! then double-bracket gap suffixes, then the spread of nonempty gaps
//! across two or more sites; with a single open site the cells follow
//! the factor anatomy of its gap.

use crate::codes::{self, CodeClass};
use crate::core_shift::{Symbol, Word};
use crate::error::{Error, Result};
use crate::periodic::{classify, smallest_period, OpenSite, OpenView, PeriodicPoint};

use super::{fwd, lexmin_by_history, site_pos, splice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cell {
    /// Some gap has a type-1 factor.
    GapOne,
    /// Some gap ends in a double bracket followed by a type-0 run.
    BracketRun,
    /// Some gap ends in a double bracket.
    BracketEnd,
    /// Two or more open sites, every gap a plain type-0 run.
    Spread,
    /// One open site, gap opens with an immediately closed bracket.
    Left,
    /// One open site, first gap factor has an interior, and either
    /// further factors follow or the interior starts with a bracket
    /// pair or type-1 factor.
    Mid,
    /// One open site, the gap is one factor whose interior starts with
    /// a type-0 factor that itself has content.
    Right,
    /// One open site, one factor, interior = closed bracket then a word
    /// with a bracket pair or type-1 factor at top level.
    RightBrackets,
    /// Same shape with a plain type-0 run after the closed bracket.
    RightOne,
}

impl Cell {
    pub fn label(self) -> &'static str {
        match self {
            Cell::GapOne => "(1)",
            Cell::BracketRun => "(bb)",
            Cell::BracketEnd => "(bb,0)",
            Cell::Spread => "(0,2)",
            Cell::Left => "(0,1,l)",
            Cell::Mid => "(0,1,m)",
            Cell::Right => "(0,1,r)",
            Cell::RightBrackets => "(0,1,r,bb)",
            Cell::RightOne => "(0,1,r,1)",
        }
    }
}

fn not_image(detail: impl Into<String>) -> Error {
    Error::NotInImage(detail.into())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Zero,
    Bracket,
    One,
}

fn kind(f: &Word) -> Kind {
    if f.0[0] == Symbol::Bm0 {
        Kind::Zero
    } else if f.len() == 2 {
        Kind::Bracket
    } else {
        Kind::One
    }
}

struct GapShape {
    factors: Vec<Word>,
    /// Factor start offsets within the gap.
    positions: Vec<usize>,
    kinds: Vec<Kind>,
}

fn shape(gap: &Word) -> GapShape {
    let f = codes::factorize(gap, CodeClass::C).expect("zero-site gaps lie in C*");
    let kinds = f.factors.iter().map(kind).collect();
    GapShape {
        factors: f.factors,
        positions: f.positions,
        kinds,
    }
}

impl GapShape {
    fn has_one(&self) -> bool {
        self.kinds.contains(&Kind::One)
    }

    /// Offset of a bracket pair followed by the trailing type-0 run,
    /// when the run is nonempty and reaches the end of the gap.
    fn bracket_run(&self) -> Option<usize> {
        let m = self.kinds.len();
        let trailing = self.kinds.iter().rev().take_while(|&&k| k == Kind::Zero).count();
        if trailing >= 1 && m > trailing && self.kinds[m - trailing - 1] == Kind::Bracket {
            Some(self.positions[m - trailing - 1])
        } else {
            None
        }
    }

    fn bracket_end(&self) -> bool {
        self.kinds.last() == Some(&Kind::Bracket)
    }
}

fn interior(w: &Word) -> Word {
    Word::new(w[1..w.len() - 1].to_vec())
}

/// Gap anatomy behind the single open site: first factor a iota A, then
/// the remaining factors; iota's first factor splits further as a u A
/// followed by v.
struct LoneGap {
    iota: Word,
    rest_nonempty: bool,
    first_kind: Option<Kind>,
    u: Word,
    v: Word,
}

fn lone_gap(gap: &Word) -> LoneGap {
    let sh = shape(gap);
    let c1 = &sh.factors[0];
    let iota = interior(c1);
    let rest_nonempty = sh.factors.len() > 1;
    if iota.is_empty() {
        return LoneGap {
            iota,
            rest_nonempty,
            first_kind: None,
            u: Word::new(Vec::new()),
            v: Word::new(Vec::new()),
        };
    }
    let ish = shape(&iota);
    let j1 = &ish.factors[0];
    let first_kind = Some(kind(j1));
    let (u, v) = if kind(j1) == Kind::Zero {
        (interior(j1), Word::new(iota[j1.len()..].to_vec()))
    } else {
        (Word::new(Vec::new()), Word::new(Vec::new()))
    };
    LoneGap {
        iota,
        rest_nonempty,
        first_kind,
        u,
        v,
    }
}

pub(super) fn cell_of(p: &PeriodicPoint, view: &OpenView) -> Cell {
    let shapes: Vec<GapShape> = view.sites.iter().map(|s| shape(&s.gap)).collect();
    if shapes.iter().any(GapShape::has_one) {
        return Cell::GapOne;
    }
    if shapes.iter().any(|sh| sh.bracket_run().is_some()) {
        return Cell::BracketRun;
    }
    if shapes.iter().any(GapShape::bracket_end) {
        return Cell::BracketEnd;
    }
    if view.sites.len() >= 2 {
        return Cell::Spread;
    }
    let lg = lone_gap(&view.sites[0].gap);
    if lg.iota.is_empty() {
        return Cell::Left;
    }
    if lg.rest_nonempty || matches!(lg.first_kind, Some(Kind::Bracket) | Some(Kind::One)) {
        return Cell::Mid;
    }
    if !lg.u.is_empty() {
        return Cell::Right;
    }
    if codes::in_star(&lg.v, CodeClass::C0) {
        Cell::RightOne
    } else {
        Cell::RightBrackets
    }
}

/// Apply several same-length replacements at once.
fn splice_all(p: &PeriodicPoint, edits: &[(usize, Vec<Symbol>)]) -> Result<PeriodicPoint> {
    let mut w = p.cycle.clone();
    for (start, repl) in edits {
        w.splice_cyclic(*start, repl);
    }
    PeriodicPoint::new(w)
}

fn b1_repl(tail: &Word) -> Vec<Symbol> {
    let mut repl = vec![Symbol::Bm];
    repl.extend_from_slice(tail);
    repl.push(Symbol::Bm1);
    repl
}

/// Sites of the array positions in `set` whose history is minimal.
fn select(p: &PeriodicPoint, view: &OpenView, set: &[usize]) -> usize {
    let indices: Vec<usize> = set.iter().map(|&s| view.sites[s].index).collect();
    let best = lexmin_by_history(p, &indices);
    debug_assert_eq!(best.len(), 1, "histories are distinct on primitive points");
    site_pos(view, best[0])
}

pub(super) fn eta(p: &PeriodicPoint, view: &OpenView, cell: Cell) -> Result<PeriodicPoint> {
    let n = view.n;
    let m = view.sites.len();
    match cell {
        // Open the last type-1 factor of every minimal gap with one.
        Cell::GapOne => {
            let holders: Vec<&OpenSite> = view
                .sites
                .iter()
                .filter(|s| shape(&s.gap).has_one())
                .collect();
            let min_gap = holders.iter().map(|s| s.gap.clone()).min().unwrap();
            let mut edits = Vec::new();
            for site in holders {
                if site.gap == min_gap {
                    edits.push((site.gap_start, codes::delta1(&site.gap)?.0));
                }
            }
            splice_all(p, &edits)
        }
        // Rewrite bracket pair plus trailing run to an anchored b word.
        Cell::BracketRun => {
            let set: Vec<usize> = (0..m)
                .filter(|&s| shape(&view.sites[s].gap).bracket_run().is_some())
                .collect();
            let s = select(p, view, &set);
            let site = &view.sites[s];
            let off = shape(&site.gap).bracket_run().unwrap();
            let f = Word::new(site.gap[off + 2..].to_vec());
            let repl = b1_repl(&codes::psi_inv(&f)?);
            splice(p, (site.gap_start + off) % n, repl.len(), &repl)
        }
        // Flip the closing half of the final bracket pair.
        Cell::BracketEnd => {
            let set: Vec<usize> = (0..m)
                .filter(|&s| shape(&view.sites[s].gap).bracket_end())
                .collect();
            let s = select(p, view, &set);
            let pos = (view.sites[s].index + n - 1) % n;
            splice(p, pos, 1, &[Symbol::Bm1])
        }
        Cell::Spread => eta_spread(p, view),
        // Flip the closed bracket at the head of the gap to an anchored b.
        Cell::Left => {
            let g = view.sites[0].gap_start;
            splice_all(p, &[(g, vec![Symbol::Bm, Symbol::Bm1])])
        }
        // Move the site's open bracket to the head of the gap: the first
        // factor opens, its closing half becomes the open site, and the
        // old site becomes the anchor.
        Cell::Mid => {
            let site = &view.sites[0];
            let g = site.gap_start;
            let c1_len = shape(&site.gap).factors[0].len();
            let mid = (g + c1_len - 1) % n;
            splice_all(
                p,
                &[
                    (g, vec![Symbol::Bm1]),
                    (mid, vec![Symbol::Bm0]),
                    (site.index, vec![Symbol::Bm]),
                ],
            )
        }
        Cell::Right => {
            let site = &view.sites[0];
            let g = site.gap_start;
            let lg = lone_gap(&site.gap);
            let (u, v) = (lg.u, lg.v);
            if !v.is_empty() {
                // Anchor the gap head and open both inner closings.
                splice_all(
                    p,
                    &[
                        (g, vec![Symbol::Bm, Symbol::Bm1]),
                        ((g + 2 + u.len()) % n, vec![Symbol::Bm0]),
                        ((g + 3 + u.len() + v.len()) % n, vec![Symbol::Bm0]),
                    ],
                )
            } else {
                // Split the interior around its last factor so the two
                // parts land in different gaps of the image.
                let ush = shape(&u);
                let last = *ush.positions.last().unwrap();
                let mut repl = vec![Symbol::Bm, Symbol::Bm1];
                repl.extend_from_slice(&u[..last]);
                repl.extend_from_slice(&[Symbol::Bm0, Symbol::Bm0]);
                repl.extend_from_slice(&u[last..]);
                repl.push(Symbol::Bm0);
                splice(p, g, n, &repl)
            }
        }
        // Anchor inside the closed bracket and open the outer closing.
        Cell::RightBrackets => {
            let site = &view.sites[0];
            let g = site.gap_start;
            let v_len = lone_gap(&site.gap).v.len();
            splice_all(
                p,
                &[
                    ((g + 1) % n, vec![Symbol::Bm, Symbol::Bm1]),
                    ((g + 3 + v_len) % n, vec![Symbol::Bm0]),
                ],
            )
        }
        // Rewrite the whole period: the run changes type between two
        // anchored b words.
        Cell::RightOne => {
            let site = &view.sites[0];
            let v = lone_gap(&site.gap).v;
            let mut repl = vec![Symbol::Bm1, Symbol::Bm];
            repl.extend_from_slice(&codes::psi_inv(&v)?);
            repl.extend_from_slice(&[Symbol::Bm1, Symbol::Bm0, Symbol::Bm]);
            splice(p, site.gap_start, n, &repl)
        }
    }
}

/// Two or more open sites, plain gaps. A site whose gap and following
/// gap are both nonempty takes the direct rewrite; otherwise nonempty
/// gaps sit isolated and the rewrite varies with the factor count of
/// the selected gap and the number of nonempty gaps.
fn eta_spread(p: &PeriodicPoint, view: &OpenView) -> Result<PeriodicPoint> {
    let n = view.n;
    let m = view.sites.len();
    let nonempty: Vec<usize> = (0..m).filter(|&s| !view.sites[s].gap.is_empty()).collect();
    let preferred: Vec<usize> = nonempty
        .iter()
        .copied()
        .filter(|&s| !view.sites[(s + 1) % m].gap.is_empty())
        .collect();
    if !preferred.is_empty() {
        let s = select(p, view, &preferred);
        let site = &view.sites[s];
        let x = view.prev(s).index;
        let repl = b1_repl(&codes::psi_inv(&site.gap)?);
        return splice(p, x, repl.len(), &repl);
    }
    let s = select(p, view, &nonempty);
    let site = &view.sites[s];
    let f = &site.gap;
    let x = view.prev(s).index;
    let fsh = shape(f);
    if fsh.factors.len() >= 2 {
        // Keep all but the last factor in the anchored word; the last
        // factor re-enters the following gap behind a bracket pair.
        let last = *fsh.positions.last().unwrap();
        let f2 = Word::new(f[..last].to_vec());
        let e = fsh.factors.last().unwrap();
        let mut repl = b1_repl(&codes::psi_inv(&f2)?);
        repl.extend_from_slice(&[Symbol::Bm, Symbol::Bp]);
        repl.extend_from_slice(&interior(e));
        splice(p, x, repl.len(), &repl)
    } else if nonempty.len() == 1 {
        // Single factor, single nonempty gap: spend the following empty
        // site on a second anchored b, keeping the interior between.
        let z1 = view.next(s).index;
        let mut repl = vec![Symbol::Bm, Symbol::Bm1];
        repl.extend_from_slice(&interior(f));
        repl.extend_from_slice(&[Symbol::Bm0, Symbol::Bm, Symbol::Bm1]);
        splice(p, x, fwd(n, x, z1) + 1, &repl)
    } else {
        // Single factor, several isolated gaps: rewrite this span and
        // the next nonempty one in the same way.
        let mut t = (s + 1) % m;
        while view.sites[t].gap.is_empty() {
            t = (t + 1) % m;
        }
        let g2 = &view.sites[t].gap;
        let x2 = view.prev(t).index;
        splice_all(
            p,
            &[
                (x, b1_repl(&codes::psi_inv(f)?)),
                (x2, b1_repl(&codes::psi_inv(g2)?)),
            ],
        )
    }
}

/// Offsets of the unmatched opening brackets of a word.
fn open_offsets(w: &Word) -> Vec<usize> {
    let mut stack = Vec::new();
    for (t, &s) in w.0.iter().enumerate() {
        match s {
            Symbol::Bm0 | Symbol::Bm1 => stack.push(t),
            Symbol::Bp0 | Symbol::Bp1 => {
                stack.pop();
            }
            _ => {}
        }
    }
    stack
}

/// Positions where the word appears with all its unmatched opening
/// brackets on open sites.
fn open_appearances(q: &PeriodicPoint, view: &OpenView, w: &Word) -> Vec<usize> {
    let n = q.n();
    let offs = open_offsets(w);
    let sites: Vec<usize> = view.sites.iter().map(|s| s.index).collect();
    (0..n)
        .filter(|&j| {
            q.cycle.cyclic_slice(j, w.len()) == *w
                && offs.iter().all(|&o| sites.contains(&((j + o) % n)))
        })
        .collect()
}

fn overlap_free(n: usize, starts: &[usize], len: usize) -> bool {
    for (i, &a) in starts.iter().enumerate() {
        for &b in &starts[i + 1..] {
            if fwd(n, a, b) < len || fwd(n, b, a) < len {
                return false;
            }
        }
    }
    true
}

pub(super) fn reconstruct(q: &PeriodicPoint, view: &OpenView, cell: Cell) -> Result<PeriodicPoint> {
    let n = view.n;
    let mut cands: Vec<PeriodicPoint> = Vec::new();
    let b_sites: Vec<&OpenSite> = view.sites.iter().filter(|s| s.one_type).collect();
    let zero_sites: Vec<&OpenSite> = view.sites.iter().filter(|s| !s.one_type).collect();
    match cell {
        // Close every opened type-1 word back up; the forward map may
        // have opened the same word at several tied sites, so subsets
        // of its open appearances are tried.
        Cell::GapOne => {
            for start in 0..n {
                for len in (4..n).step_by(2) {
                    let word = q.cycle.cyclic_slice(start, len);
                    if !codes::member(&word, CodeClass::B11) {
                        continue;
                    }
                    let aps = open_appearances(q, view, &word);
                    if aps.is_empty() || aps.len() > 4 {
                        continue;
                    }
                    let Ok(closed) = codes::phi1_inv(&word) else {
                        continue;
                    };
                    for mask in 1u32..(1 << aps.len()) {
                        let chosen: Vec<usize> = aps
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask & (1 << i) != 0)
                            .map(|(_, &j)| j)
                            .collect();
                        if !overlap_free(n, &chosen, len) {
                            continue;
                        }
                        let edits: Vec<(usize, Vec<Symbol>)> =
                            chosen.iter().map(|&j| (j, closed.0.clone())).collect();
                        if let Ok(cand) = splice_all(q, &edits) {
                            cands.push(cand);
                        }
                    }
                }
            }
        }
        Cell::BracketRun => {
            for site in &b_sites {
                let sp = site.split.as_ref().unwrap();
                let Ok(f) = codes::psi(&sp.tail) else {
                    continue;
                };
                let mut repl = vec![Symbol::Bm, Symbol::Bp];
                repl.extend_from_slice(&f);
                if let Ok(cand) = splice(q, sp.anchor, repl.len(), &repl) {
                    cands.push(cand);
                }
            }
        }
        Cell::BracketEnd => {
            for site in &b_sites {
                if q.cycle.0[(site.index + n - 1) % n] != Symbol::Bm {
                    continue;
                }
                if let Ok(cand) = splice(q, site.index, 1, &[Symbol::Bp]) {
                    cands.push(cand);
                }
            }
        }
        Cell::Spread => {
            // Direct span: anchored word back to a gap between two sites.
            for site in &b_sites {
                let sp = site.split.as_ref().unwrap();
                let Ok(f) = codes::psi(&sp.tail) else {
                    continue;
                };
                let mut repl = vec![Symbol::Bm0];
                repl.extend_from_slice(&f);
                repl.push(Symbol::Bm0);
                if let Ok(cand) = splice(q, sp.anchor, repl.len(), &repl) {
                    cands.push(cand);
                }
            }
            // Split span: bracket pair after the b marks the re-entered
            // last factor, running to the next open site.
            for site in &b_sites {
                let sp = site.split.as_ref().unwrap();
                let pos = site.index;
                if q.cycle.0[(pos + 1) % n] != Symbol::Bm || q.cycle.0[(pos + 2) % n] != Symbol::Bp
                {
                    continue;
                }
                let Some(next) = super::next_open(view, pos) else {
                    continue;
                };
                let ie_len = fwd(n, (pos + 3) % n, next.index);
                let ie = q.cycle.cyclic_slice((pos + 3) % n, ie_len);
                let Ok(f2) = codes::psi(&sp.tail) else {
                    continue;
                };
                let mut repl = vec![Symbol::Bm0];
                repl.extend_from_slice(&f2);
                repl.push(Symbol::Bm0);
                repl.extend_from_slice(&ie);
                repl.extend_from_slice(&[Symbol::Bp0, Symbol::Bm0]);
                if let Ok(cand) = splice(q, sp.anchor, repl.len(), &repl) {
                    cands.push(cand);
                }
            }
            // Twin anchored b words from one interior: close both back
            // into a single factor across three sites.
            for b1 in &b_sites {
                for b2 in &b_sites {
                    if b1.index == b2.index {
                        continue;
                    }
                    if q.cycle.0[(b1.index + n - 1) % n] != Symbol::Bm {
                        continue;
                    }
                    let Some(zm) = super::next_open(view, b1.index) else {
                        continue;
                    };
                    if zm.one_type {
                        continue;
                    }
                    if q.cycle.0[(zm.index + 1) % n] != Symbol::Bm
                        || (zm.index + 2) % n != b2.index
                    {
                        continue;
                    }
                    let il = fwd(n, (b1.index + 1) % n, zm.index);
                    let iota = q.cycle.cyclic_slice((b1.index + 1) % n, il);
                    let mut repl = vec![Symbol::Bm0, Symbol::Bm0];
                    repl.extend_from_slice(&iota);
                    repl.extend_from_slice(&[Symbol::Bp0, Symbol::Bm0, Symbol::Bm0]);
                    if let Ok(cand) = splice(q, (b1.index + n - 1) % n, repl.len(), &repl) {
                        cands.push(cand);
                    }
                }
            }
            // Two spans rewritten in one step: undo both anchored words.
            for (i, b1) in b_sites.iter().enumerate() {
                for b2 in &b_sites[i + 1..] {
                    let sp1 = b1.split.as_ref().unwrap();
                    let sp2 = b2.split.as_ref().unwrap();
                    let (Ok(f1), Ok(f2)) = (codes::psi(&sp1.tail), codes::psi(&sp2.tail)) else {
                        continue;
                    };
                    let mut r1 = vec![Symbol::Bm0];
                    r1.extend_from_slice(&f1);
                    r1.push(Symbol::Bm0);
                    let mut r2 = vec![Symbol::Bm0];
                    r2.extend_from_slice(&f2);
                    r2.push(Symbol::Bm0);
                    if !overlap_free(n, &[sp1.anchor, sp2.anchor], r1.len().max(r2.len())) {
                        continue;
                    }
                    if let Ok(cand) =
                        splice_all(q, &[(sp1.anchor, r1), (sp2.anchor, r2)])
                    {
                        cands.push(cand);
                    }
                }
            }
        }
        Cell::Left => {
            for site in &b_sites {
                let pos = site.index;
                if q.cycle.0[(pos + n - 1) % n] != Symbol::Bm {
                    continue;
                }
                if let Ok(cand) = splice(
                    q,
                    (pos + n - 1) % n,
                    2,
                    &[Symbol::Bm0, Symbol::Bp0],
                ) {
                    cands.push(cand);
                }
            }
        }
        Cell::Mid => {
            for site in &b_sites {
                for z in &zero_sites {
                    let pos = site.index;
                    if q.cycle.0[(pos + n - 1) % n] != Symbol::Bm {
                        continue;
                    }
                    if let Ok(cand) = splice_all(
                        q,
                        &[
                            ((pos + n - 1) % n, vec![Symbol::Bm0]),
                            (pos, vec![Symbol::Bm0]),
                            (z.index, vec![Symbol::Bp0]),
                        ],
                    ) {
                        cands.push(cand);
                    }
                }
            }
        }
        Cell::Right => {
            for site in &b_sites {
                let pos = site.index;
                if q.cycle.0[(pos + n - 1) % n] != Symbol::Bm {
                    continue;
                }
                let anchor = (pos + n - 1) % n;
                // Three zero sites in following order.
                let Some(z1) = super::next_open(view, pos) else {
                    continue;
                };
                let Some(z2) = super::next_open(view, z1.index) else {
                    continue;
                };
                let Some(z3) = super::next_open(view, z2.index) else {
                    continue;
                };
                if z1.one_type || z2.one_type || z3.one_type {
                    continue;
                }
                // Direct form: close the first two zero sites.
                if let Ok(cand) = splice_all(
                    q,
                    &[
                        (anchor, vec![Symbol::Bm0]),
                        (pos, vec![Symbol::Bm0]),
                        (z1.index, vec![Symbol::Bp0]),
                        (z2.index, vec![Symbol::Bp0]),
                    ],
                ) {
                    cands.push(cand);
                }
                // Split form: interior parts sit in the first and third
                // gaps with an empty second gap.
                if (z1.index + 1) % n == z2.index {
                    let u1_len = fwd(n, (pos + 1) % n, z1.index);
                    let u1 = q.cycle.cyclic_slice((pos + 1) % n, u1_len);
                    let w_len = fwd(n, (z2.index + 1) % n, z3.index);
                    let w = q.cycle.cyclic_slice((z2.index + 1) % n, w_len);
                    let mut repl = vec![Symbol::Bm0, Symbol::Bm0];
                    repl.extend_from_slice(&u1);
                    repl.extend_from_slice(&w);
                    repl.extend_from_slice(&[Symbol::Bp0, Symbol::Bp0, Symbol::Bm0]);
                    if let Ok(cand) = splice(q, anchor, repl.len(), &repl) {
                        cands.push(cand);
                    }
                }
            }
        }
        Cell::RightBrackets => {
            for site in &b_sites {
                let pos = site.index;
                if q.cycle.0[(pos + n - 1) % n] != Symbol::Bm {
                    continue;
                }
                let Some(z1) = super::next_open(view, pos) else {
                    continue;
                };
                if z1.one_type {
                    continue;
                }
                if let Ok(cand) = splice_all(
                    q,
                    &[
                        ((pos + n - 1) % n, vec![Symbol::Bm0]),
                        (pos, vec![Symbol::Bp0]),
                        (z1.index, vec![Symbol::Bp0]),
                    ],
                ) {
                    cands.push(cand);
                }
            }
        }
        Cell::RightOne => {
            for b2 in &b_sites {
                let z = (b2.index + 1) % n;
                if !zero_sites.iter().any(|s| s.index == z) {
                    continue;
                }
                if q.cycle.0[(z + 1) % n] != Symbol::Bm {
                    continue;
                }
                let b1 = (z + 2) % n;
                if !b_sites.iter().any(|s| s.index == b1) || b1 == b2.index {
                    continue;
                }
                if q.cycle.0[(b1 + 1) % n] != Symbol::Bm {
                    continue;
                }
                let t_len = fwd(n, (b1 + 2) % n, b2.index);
                let tail = q.cycle.cyclic_slice((b1 + 2) % n, t_len);
                let Ok(v) = codes::psi(&tail) else {
                    continue;
                };
                let mut repl = vec![Symbol::Bm0, Symbol::Bm0, Symbol::Bp0];
                repl.extend_from_slice(&v);
                repl.extend_from_slice(&[Symbol::Bp0, Symbol::Bm0]);
                if let Ok(cand) = splice(q, b1, n, &repl) {
                    cands.push(cand);
                }
            }
        }
    }

    let mut found: Option<PeriodicPoint> = None;
    for cand in cands {
        if !replays(&cand, cell, q) {
            continue;
        }
        match &found {
            Some(prior) if *prior != cand => {
                return Err(not_image("two window candidates replay onto the image"));
            }
            _ => found = Some(cand),
        }
    }
    found.ok_or_else(|| not_image("no window candidate replays onto the image"))
}

fn replays(cand: &PeriodicPoint, cell: Cell, q: &PeriodicPoint) -> bool {
    if smallest_period(cand) != cand.n() {
        return false;
    }
    if !super::Family::M0.covers(&classify(cand)) {
        return false;
    }
    let view = OpenView::build(cand);
    cell_of(cand, &view) == cell && matches!(eta(cand, &view, cell), Ok(img) if img == *q)
}
