//! Family for source necklaces with at least three brackets per period
//! (everything except the pure and alternating shapes). Cells are keyed
//! on which appearance class attains the maximal open interior length,
//! then on the neighbour types around the selected site.

use crate::codes::{self, CodeClass};
use crate::core_shift::{Symbol, Word};
use crate::error::{Error, Result};
use crate::periodic::{lambda_stats, smallest_period, OpenSite, OpenView, PeriodicPoint};

use super::{fwd, max_c0_factors, max_open_b00s, next_open, prev_open, site_pos, splice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cell {
    /// Maximum attained by a double-a-bracket word.
    ZeroZero,
    /// Maximum attained by a doubly anchored word between two b sites.
    OneOne,
    /// Maximum attained by an anchored b word flanked by a sites.
    ZeroOneZero,
    /// Anchored b word flanked by a sites where fusing the stretch would
    /// keep the source necklace: the opens removed by the fused rewrite
    /// spell a rotation of the necklace exactly when it is 001, so those
    /// sources are rewritten without closing the next site.
    ZeroOneZeroOpen,
    /// Anchored b word whose next open site is a b site.
    NextOne,
    /// Anchored b word preceded by a b site, followed by an a site.
    PrevOne,
    /// Maximum attained through an a-to-b dominated window only.
    ZeroOne,
    /// Maximum attained through dominated windows of both orientations.
    /// Handled like OneZero; keeping these apart from ZeroOne is what
    /// makes both remainder maps invertible.
    Tied,
    /// Remainder: maximum attained through a b-to-a dominated window only.
    OneZero,
}

impl Cell {
    pub fn label(self) -> &'static str {
        match self {
            Cell::ZeroZero => "(0,0)",
            Cell::OneOne => "(1,1)",
            Cell::ZeroOneZero => "(0,1,0)",
            Cell::ZeroOneZeroOpen => "(0,1,0)o",
            Cell::NextOne => "(•,1,1)",
            Cell::PrevOne => "(1,1,•)",
            Cell::ZeroOne => "(0,1)",
            Cell::Tied => "(0,1)&(1,0)",
            Cell::OneZero => "(1,0)",
        }
    }
}

fn closed_image_keeps_necklace(p: &PeriodicPoint) -> bool {
    let class = crate::periodic::classify(p);
    class.necklace == "001" && class.nu1 >= 2
}

fn not_image(detail: impl Into<String>) -> Error {
    Error::NotInImage(detail.into())
}

fn site_at<'a>(view: &'a OpenView, index: usize) -> &'a OpenSite {
    &view.sites[site_pos(view, index)]
}

pub(super) fn cell_of(p: &PeriodicPoint, view: &OpenView) -> Cell {
    let stats = lambda_stats(p);
    if !stats.j_set(CodeClass::B00).is_empty() {
        return Cell::ZeroZero;
    }
    if !stats.j_set(CodeClass::D11).is_empty() {
        return Cell::OneOne;
    }
    if !stats.j_set(CodeClass::B1).is_empty() {
        let j = stats.j_min(CodeClass::B1)[0];
        let s = site_pos(view, j);
        let prev_one = view.prev(s).one_type;
        let next_one = view.next(s).one_type;
        return if next_one {
            Cell::NextOne
        } else if prev_one {
            Cell::PrevOne
        } else if closed_image_keeps_necklace(p) {
            Cell::ZeroOneZeroOpen
        } else {
            Cell::ZeroOneZero
        };
    }
    let d01 = !stats.j_set(CodeClass::D01).is_empty();
    let d10 = !stats.j_set(CodeClass::D10).is_empty();
    if d01 && d10 {
        return Cell::Tied;
    }
    if d01 {
        return Cell::ZeroOne;
    }
    debug_assert!(d10);
    Cell::OneZero
}

fn b1_word(p: &PeriodicPoint, site: &OpenSite) -> Word {
    let sp = site.split.as_ref().unwrap();
    p.cycle
        .cyclic_slice(sp.anchor, sp.tail.len() + 2)
}


pub(super) fn eta(p: &PeriodicPoint, view: &OpenView, cell: Cell) -> Result<PeriodicPoint> {
    let stats = lambda_stats(p);
    match cell {
        // Close the selected double a bracket: flip its final a to A.
        Cell::ZeroZero => {
            let j = stats.j_min(CodeClass::B00)[0];
            splice(p, j, 1, &[Symbol::Bp0])
        }
        // Rewrite both anchored windows and leave the dominating middle
        // untouched: c T' b f c T b becomes a psi(T') a f A psi(T) a.
        Cell::OneOne => {
            let j = stats.j_min(CodeClass::D11)[0];
            let s = site_pos(view, j);
            let site = &view.sites[s];
            let prev = view.prev(s);
            let sp = site.split.as_ref().unwrap();
            let pp = prev.split.as_ref().unwrap();
            let mut repl = vec![Symbol::Bm0];
            repl.extend_from_slice(&codes::psi(&pp.tail)?);
            repl.push(Symbol::Bm0);
            repl.extend_from_slice(&sp.prefix);
            repl.push(Symbol::Bp0);
            repl.extend_from_slice(&codes::psi(&sp.tail)?);
            repl.push(Symbol::Bm0);
            splice(p, pp.anchor, repl.len(), &repl)
        }
        // Rewrite the anchored word to a C(0) word and close the next
        // a site, fusing the whole stretch into one balanced factor.
        Cell::ZeroOneZero => {
            let j = stats.j_min(CodeClass::B1)[0];
            let s = site_pos(view, j);
            let site = &view.sites[s];
            let next = view.next(s);
            let xi = codes::xi_map(&b1_word(p, site))?;
            let mut w = p.cycle.clone();
            w.splice_cyclic(site.split.as_ref().unwrap().anchor, &xi);
            w.splice_cyclic(next.index, &[Symbol::Bp0]);
            PeriodicPoint::new(w)
        }
        // Open the anchored word into a double a bracket.
        Cell::NextOne => {
            let j = stats.j_min(CodeClass::B1)[0];
            let site = site_at(view, j);
            let repl = codes::phi0(&codes::xi_map(&b1_word(p, site))?)?;
            splice(p, site.split.as_ref().unwrap().anchor, repl.len(), &repl)
        }
        // Rewrite the anchored word to a C(0) word in place.
        Cell::PrevOne | Cell::ZeroOneZeroOpen => {
            let j = stats.j_min(CodeClass::B1)[0];
            let site = site_at(view, j);
            let repl = codes::xi_map(&b1_word(p, site))?;
            splice(p, site.split.as_ref().unwrap().anchor, repl.len(), &repl)
        }
        // Open the anchored suffix of the dominated window.
        Cell::ZeroOne => {
            let j = stats.j_min(CodeClass::D01)[0];
            let site = site_at(view, j);
            let repl = codes::phi0(&codes::xi_map(&b1_word(p, site))?)?;
            splice(p, site.split.as_ref().unwrap().anchor, repl.len(), &repl)
        }
        // Open the anchored prefix of the window and close its final a.
        Cell::Tied | Cell::OneZero => {
            let j = stats.j_min(CodeClass::D10)[0];
            let s = site_pos(view, j);
            let prev = view.prev(s);
            debug_assert!(prev.one_type);
            let repl = codes::phi0(&codes::xi_map(&b1_word(p, prev))?)?;
            let mut w = p.cycle.clone();
            w.splice_cyclic(prev.split.as_ref().unwrap().anchor, &repl);
            w.splice_cyclic(j, &[Symbol::Bp0]);
            PeriodicPoint::new(w)
        }
    }
}

pub(super) fn reconstruct(q: &PeriodicPoint, view: &OpenView, cell: Cell) -> Result<PeriodicPoint> {
    let n = view.n;
    let mut cands: Vec<PeriodicPoint> = Vec::new();
    match cell {
        Cell::ZeroZero => {
            for (ws, wl) in max_c0_factors(q) {
                let end = (ws + wl - 1) % n;
                if let Ok(cand) = splice(q, end, 1, &[Symbol::Bm0]) {
                    cands.push(cand);
                }
            }
        }
        Cell::OneOne => {
            for (ws, wl) in max_c0_factors(q) {
                let end = (ws + wl - 1) % n;
                let middle = q.cycle.cyclic_slice((ws + 1) % n, wl - 2);
                let Some(before) = prev_open(view, ws) else {
                    continue;
                };
                let Some(after) = next_open(view, end) else {
                    continue;
                };
                if before.one_type || after.one_type {
                    continue;
                }
                let seg1_len = fwd(n, before.index, ws);
                let seg2_len = fwd(n, end, after.index);
                if seg1_len == 0 || seg2_len == 0 {
                    continue;
                }
                let Ok(t_prev) =
                    codes::psi_inv(&q.cycle.cyclic_slice((before.index + 1) % n, seg1_len - 1))
                else {
                    continue;
                };
                let Ok(t) = codes::psi_inv(&q.cycle.cyclic_slice((end + 1) % n, seg2_len - 1))
                else {
                    continue;
                };
                let mut repl = vec![Symbol::Bm];
                repl.extend_from_slice(&t_prev);
                repl.push(Symbol::Bm1);
                repl.extend_from_slice(&middle);
                repl.push(Symbol::Bm);
                repl.extend_from_slice(&t);
                repl.push(Symbol::Bm1);
                if let Ok(cand) = splice(q, before.index, repl.len(), &repl) {
                    cands.push(cand);
                }
            }
        }
        Cell::ZeroOneZero => {
            for (ws, wl) in max_c0_factors(q) {
                let Ok(q1) = splice(q, (ws + wl - 1) % n, 1, &[Symbol::Bm0]) else {
                    continue;
                };
                for (vs, vl) in max_c0_factors(&q1) {
                    let inner = q1.cycle.cyclic_slice(vs, vl);
                    let Ok(back) = codes::xi_map_inv(&inner) else {
                        continue;
                    };
                    if let Ok(cand) = splice(&q1, vs, back.len(), &back) {
                        cands.push(cand);
                    }
                }
            }
        }
        Cell::NextOne => {
            for (first, second) in max_open_b00s(view) {
                let a1 = view.sites[first].index;
                let a2 = view.sites[second].index;
                let word = q.cycle.cyclic_slice(a1, fwd(n, a1, a2) + 1);
                let Ok(opened) = codes::phi0_inv(&word) else {
                    continue;
                };
                let Ok(back) = codes::xi_map_inv(&opened) else {
                    continue;
                };
                if let Ok(cand) = splice(q, a1, back.len(), &back) {
                    cands.push(cand);
                }
            }
        }
        Cell::PrevOne | Cell::ZeroOneZeroOpen => {
            for (ws, wl) in max_c0_factors(q) {
                let inner = q.cycle.cyclic_slice(ws, wl);
                let Ok(back) = codes::xi_map_inv(&inner) else {
                    continue;
                };
                if let Ok(cand) = splice(q, ws, back.len(), &back) {
                    cands.push(cand);
                }
            }
        }
        Cell::ZeroOne => {
            for (_, second) in max_open_b00s(view) {
                let z2 = view.sites[second].index;
                let Some(after) = next_open(view, z2) else {
                    continue;
                };
                if after.one_type {
                    continue;
                }
                let seg_len = fwd(n, z2, after.index);
                if seg_len == 0 {
                    continue;
                }
                let Ok(t) = codes::psi_inv(&q.cycle.cyclic_slice((z2 + 1) % n, seg_len - 1))
                else {
                    continue;
                };
                let mut repl = vec![Symbol::Bm];
                repl.extend_from_slice(&t);
                repl.push(Symbol::Bm1);
                if let Ok(cand) = splice(q, z2, repl.len(), &repl) {
                    cands.push(cand);
                }
            }
        }
        Cell::Tied | Cell::OneZero => {
            for (ws, wl) in max_c0_factors(q) {
                let end = (ws + wl - 1) % n;
                let Some(before) = prev_open(view, ws) else {
                    continue;
                };
                if before.one_type {
                    continue;
                }
                let seg_len = fwd(n, before.index, ws);
                if seg_len == 0 {
                    continue;
                }
                let Ok(t_prev) =
                    codes::psi_inv(&q.cycle.cyclic_slice((before.index + 1) % n, seg_len - 1))
                else {
                    continue;
                };
                let mut repl = vec![Symbol::Bm];
                repl.extend_from_slice(&t_prev);
                repl.push(Symbol::Bm1);
                let mut w = q.cycle.clone();
                w.splice_cyclic(before.index, &repl);
                w.splice_cyclic(end, &[Symbol::Bm0]);
                if let Ok(cand) = PeriodicPoint::new(w) {
                    cands.push(cand);
                }
            }
        }
    }

    // The window geometry can tie, e.g. when a dominated prefix and the
    // selected tail share the maximal length, so every candidate window
    // is tried and screened by replaying the forward map.
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
    if !super::Family::L2.covers(&crate::periodic::classify(cand)) {
        return false;
    }
    let view = OpenView::build(cand);
    cell_of(cand, &view) == cell && matches!(eta(cand, &view, cell), Ok(img) if img == *q)
}
