//! Family for the alternating source necklace: open sites alternate
//! strictly between the two bracket types, one a site and one b site per
//! necklace period. Single-pair points are split on where the b site's
//! gap prefix sits in the code hierarchy; from two pairs on, cells are
//! keyed on the appearance class attaining the maximal open interior
//! length, as in the bulk family.

use crate::codes::{self, CodeClass};
use crate::core_shift::{Symbol, Word};
use crate::error::{Error, Result};
use crate::periodic::{classify, lambda_stats, smallest_period, OpenSite, OpenView, PeriodicPoint};

use super::{fwd, site_pos, splice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cell {
    /// Single pair, gap prefix has a type-1 factor.
    PrefixOne,
    /// Single pair, gap prefix has a type-0 factor but no type-1 factor.
    PrefixZero,
    /// Single pair, gap prefix is a run of double brackets, possibly empty.
    PrefixBrackets,
    /// Maximum attained by an anchored b word.
    BOne,
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
            Cell::PrefixOne => "[1]",
            Cell::PrefixZero => "[0]",
            Cell::PrefixBrackets => "[bb]",
            Cell::BOne => "(1)",
            Cell::ZeroOne => "(0,1)",
            Cell::Tied => "(0,1)&(1,0)",
            Cell::OneZero => "(1,0)",
        }
    }
}

fn not_image(detail: impl Into<String>) -> Error {
    Error::NotInImage(detail.into())
}

fn site_at<'a>(view: &'a OpenView, index: usize) -> &'a OpenSite {
    &view.sites[site_pos(view, index)]
}

fn the_one_site(view: &OpenView) -> &OpenSite {
    view.sites
        .iter()
        .find(|s| s.one_type)
        .expect("alternating points have a b site")
}

pub(super) fn cell_of(p: &PeriodicPoint, view: &OpenView) -> Cell {
    if classify(p).nu0 == 1 {
        let sp = the_one_site(view)
            .split
            .as_ref()
            .expect("b sites carry a split");
        return if codes::member(&sp.prefix, CodeClass::Q1) {
            Cell::PrefixOne
        } else if codes::member(&sp.prefix, CodeClass::Q0) {
            Cell::PrefixZero
        } else {
            Cell::PrefixBrackets
        };
    }
    let stats = lambda_stats(p);
    if !stats.j_set(CodeClass::B1).is_empty() {
        return Cell::BOne;
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
    p.cycle.cyclic_slice(sp.anchor, sp.tail.len() + 2)
}

pub(super) fn eta(p: &PeriodicPoint, view: &OpenView, cell: Cell) -> Result<PeriodicPoint> {
    match cell {
        // Open the last type-1 factor of the prefix in place.
        Cell::PrefixOne => {
            let site = the_one_site(view);
            let repl = codes::delta1(&site.split.as_ref().unwrap().prefix)?;
            splice(p, site.gap_start, repl.len(), &repl)
        }
        // Open the last type-0 factor of the prefix in place.
        Cell::PrefixZero => {
            let site = the_one_site(view);
            let repl = codes::delta0(&site.split.as_ref().unwrap().prefix)?;
            splice(p, site.gap_start, repl.len(), &repl)
        }
        // Rewrite the anchored word to a C(0) word, absorbing the b site.
        Cell::PrefixBrackets => {
            let site = the_one_site(view);
            let repl = codes::xi_map(&b1_word(p, site))?;
            splice(p, site.split.as_ref().unwrap().anchor, repl.len(), &repl)
        }
        // Rewrite the selected anchored word to a C(0) word in place.
        Cell::BOne => {
            let j = lambda_stats(p).j_min(CodeClass::B1)[0];
            let site = site_at(view, j);
            let repl = codes::xi_map(&b1_word(p, site))?;
            splice(p, site.split.as_ref().unwrap().anchor, repl.len(), &repl)
        }
        // Open the anchored suffix of the dominated window.
        Cell::ZeroOne => {
            let j = lambda_stats(p).j_min(CodeClass::D01)[0];
            let site = site_at(view, j);
            let repl = codes::phi0(&codes::xi_map(&b1_word(p, site))?)?;
            splice(p, site.split.as_ref().unwrap().anchor, repl.len(), &repl)
        }
        // Open the anchored word before the dominating gap. The a site
        // after the gap stays as it is.
        Cell::Tied | Cell::OneZero => {
            let j = lambda_stats(p).j_min(CodeClass::D10)[0];
            let s = site_pos(view, j);
            let prev = view.prev(s);
            debug_assert!(prev.one_type);
            let repl = codes::phi0(&codes::xi_map(&b1_word(p, prev))?)?;
            splice(p, prev.split.as_ref().unwrap().anchor, repl.len(), &repl)
        }
    }
}

pub(super) fn reconstruct(q: &PeriodicPoint, view: &OpenView, cell: Cell) -> Result<PeriodicPoint> {
    let n = view.n;
    let mut cands: Vec<PeriodicPoint> = Vec::new();
    match cell {
        Cell::PrefixOne => {
            for start in 0..n {
                for len in (4..n).step_by(2) {
                    let word = q.cycle.cyclic_slice(start, len);
                    if !codes::member(&word, CodeClass::B11) {
                        continue;
                    }
                    let Ok(closed) = codes::phi1_inv(&word) else {
                        continue;
                    };
                    if let Ok(cand) = splice(q, start, len, &closed) {
                        cands.push(cand);
                    }
                }
            }
        }
        Cell::PrefixZero => {
            for t in 0..n {
                if q.cycle.0[t] != Symbol::Bm0 {
                    continue;
                }
                if let Ok(cand) = splice(q, t, 1, &[Symbol::Bp0]) {
                    cands.push(cand);
                }
            }
        }
        Cell::PrefixBrackets | Cell::BOne => {
            for start in 0..n {
                for len in (2..n).step_by(2) {
                    let word = q.cycle.cyclic_slice(start, len);
                    if !codes::member(&word, CodeClass::C0) {
                        continue;
                    }
                    let Ok(back) = codes::xi_map_inv(&word) else {
                        continue;
                    };
                    if let Ok(cand) = splice(q, start, len, &back) {
                        cands.push(cand);
                    }
                }
            }
        }
        Cell::ZeroOne | Cell::Tied | Cell::OneZero => {
            let m = view.sites.len();
            for s in 0..m {
                let second = (s + 1) % m;
                if m < 2 || view.sites[s].one_type || view.sites[second].one_type {
                    continue;
                }
                let x = view.sites[s].index;
                let y = view.sites[second].index;
                let word = q.cycle.cyclic_slice(x, fwd(n, x, y) + 1);
                let Ok(opened) = codes::phi0_inv(&word) else {
                    continue;
                };
                let Ok(back) = codes::xi_map_inv(&opened) else {
                    continue;
                };
                if let Ok(cand) = splice(q, x, back.len(), &back) {
                    cands.push(cand);
                }
            }
        }
    }

    // Same screening as in the bulk family: the geometry alone can tie,
    // so every candidate window is replayed through the forward map.
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
    if !super::Family::L1.covers(&classify(cand)) {
        return false;
    }
    let view = OpenView::build(cand);
    cell_of(cand, &view) == cell && matches!(eta(cand, &view, cell), Ok(img) if img == *q)
}
