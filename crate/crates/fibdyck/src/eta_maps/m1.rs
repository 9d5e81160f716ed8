//! Family with source necklace 1: every open site carries a one-bracket.

use crate::codes::{self, CodeClass};
use crate::core_shift::{Symbol, Word};
use crate::error::{Error, Result};
use crate::periodic::{OpenSite, OpenView, PeriodicPoint};

use super::{fwd, lexmin_by_history, splice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cell {
    /// Some site has an empty tail, so c b appears openly.
    One,
    /// At least two sites, every tail nonempty.
    Two,
    /// Single site with nonempty gap prefix.
    Three,
    /// Single site with empty gap prefix.
    Four,
}

impl Cell {
    pub fn label(self) -> &'static str {
        match self {
            Cell::One => "(1)",
            Cell::Two => "(2)",
            Cell::Three => "(3)",
            Cell::Four => "(4)",
        }
    }
}

fn tail_of(site: &OpenSite) -> &Word {
    &site.split.as_ref().expect("one-type site carries a split").tail
}

fn not_image(detail: impl Into<String>) -> Error {
    Error::NotInImage(detail.into())
}

pub(super) fn cell_of(view: &OpenView) -> Cell {
    debug_assert!(view.sites.iter().all(|s| s.one_type));
    if view.sites.iter().any(|s| tail_of(s).is_empty()) {
        Cell::One
    } else if view.sites.len() >= 2 {
        Cell::Two
    } else if !view.sites[0].split.as_ref().unwrap().prefix.is_empty() {
        Cell::Three
    } else {
        Cell::Four
    }
}

pub(super) fn eta(p: &PeriodicPoint, view: &OpenView, cell: Cell) -> Result<PeriodicPoint> {
    let n = p.n();
    match cell {
        // Collapse every open c b into a pair of open a brackets.
        Cell::One => {
            let mut w = p.cycle.clone();
            for site in view.sites.iter().filter(|s| tail_of(s).is_empty()) {
                w.splice_cyclic((site.index + n - 1) % n, &[Symbol::Bm0, Symbol::Bm0]);
            }
            PeriodicPoint::new(w)
        }
        // Rewrite the selected site's anchored window c T b into a psi(T) a.
        Cell::Two => {
            let best = view
                .sites
                .iter()
                .map(|s| tail_of(s).len())
                .max()
                .expect("cell (2) has sites");
            let candidates: Vec<usize> = view
                .sites
                .iter()
                .filter(|s| tail_of(s).len() == best)
                .map(|s| s.index)
                .collect();
            let picks = lexmin_by_history(p, &candidates);
            debug_assert_eq!(picks.len(), 1, "primitive points have a unique minimizer");
            let site = view
                .sites
                .iter()
                .find(|s| s.index == picks[0])
                .expect("selected site exists");
            let sp = site.split.as_ref().unwrap();
            let mut repl = vec![Symbol::Bm0];
            repl.extend_from_slice(&codes::psi(&sp.tail)?);
            repl.push(Symbol::Bm0);
            splice(p, sp.anchor, repl.len(), &repl)
        }
        // Single site behind a nonempty prefix: open the window with an a
        // bracket and keep a trailing c b, truncating psi(T) by one symbol.
        Cell::Three => {
            let site = &view.sites[0];
            let sp = site.split.as_ref().unwrap();
            let psi_t = codes::psi(&sp.tail)?;
            debug_assert!(!psi_t.is_empty());
            let mut repl = vec![Symbol::Bm0];
            repl.extend_from_slice(&psi_t[..psi_t.len() - 1]);
            repl.push(Symbol::Bm);
            repl.push(Symbol::Bm1);
            splice(p, sp.anchor, repl.len(), &repl)
        }
        // Single site whose gap is exactly c T: move the anchor c to the
        // window end and open the first tail factor as a double a bracket.
        Cell::Four => {
            let site = &view.sites[0];
            let sp = site.split.as_ref().unwrap();
            debug_assert!(sp.prefix.is_empty());
            let fac = codes::factorize(&sp.tail, CodeClass::Co1)?;
            let t1 = &fac.factors[0];
            let rest = Word::new(sp.tail[t1.len()..].to_vec());
            let mut repl = Vec::with_capacity(n - 1);
            repl.extend_from_slice(&codes::phi0(&codes::psi0(t1)?)?);
            repl.extend_from_slice(&codes::psi(&rest)?);
            repl.push(Symbol::Bm);
            splice(p, (site.index + 1) % n, n - 1, &repl)
        }
    }
}

pub(super) fn reconstruct(q: &PeriodicPoint, view: &OpenView, cell: Cell) -> Result<PeriodicPoint> {
    let n = view.n;
    let ones: Vec<usize> = view
        .sites
        .iter()
        .filter(|s| s.one_type)
        .map(|s| s.index)
        .collect();
    let zeros: Vec<usize> = view
        .sites
        .iter()
        .filter(|s| !s.one_type)
        .map(|s| s.index)
        .collect();
    match cell {
        Cell::One => {
            if zeros.is_empty() {
                return Err(not_image("no open a brackets to collapse"));
            }
            let mut w = q.cycle.clone();
            if zeros.len() == n {
                if n % 2 != 0 {
                    return Err(not_image("odd all-open cycle"));
                }
                for k in 0..n / 2 {
                    w.splice_cyclic(2 * k, &[Symbol::Bm, Symbol::Bm1]);
                }
                return PeriodicPoint::new(w);
            }
            let starts: Vec<usize> = zeros
                .iter()
                .copied()
                .filter(|&z| !zeros.contains(&((z + n - 1) % n)))
                .collect();
            for start in starts {
                let mut len = 1;
                while zeros.contains(&((start + len) % n)) {
                    len += 1;
                }
                if len % 2 != 0 {
                    return Err(not_image("open a run of odd length"));
                }
                for k in 0..len / 2 {
                    w.splice_cyclic((start + 2 * k) % n, &[Symbol::Bm, Symbol::Bm1]);
                }
            }
            PeriodicPoint::new(w)
        }
        Cell::Two => {
            let m = view.sites.len();
            let pairs: Vec<usize> = (0..m)
                .filter(|&s| !view.sites[s].one_type && !view.next(s).one_type)
                .collect();
            if pairs.len() != 1 {
                return Err(not_image("expected a unique adjacent open a pair"));
            }
            let a1 = view.sites[pairs[0]].index;
            let a2 = view.next(pairs[0]).index;
            let span = fwd(n, a1, a2);
            if span < 2 {
                return Err(not_image("collapsed pair interior is empty"));
            }
            let interior = q.cycle.cyclic_slice((a1 + 1) % n, span - 1);
            let tail = codes::psi_inv(&interior)?;
            let mut repl = vec![Symbol::Bm];
            repl.extend_from_slice(&tail);
            repl.push(Symbol::Bm1);
            splice(q, a1, repl.len(), &repl)
        }
        Cell::Three => {
            if ones.len() != 1 || zeros.len() != 2 {
                return Err(not_image("expected one open b and two open a brackets"));
            }
            let i = ones[0];
            if q.cycle[(i + n - 1) % n] != Symbol::Bm {
                return Err(not_image("open b is not anchored by an adjacent c"));
            }
            if zeros.contains(&((i + 1) % n)) {
                return Err(not_image("window opens right after the b bracket"));
            }
            let s_i = view
                .sites
                .iter()
                .position(|s| s.index == i)
                .expect("site present");
            let m = view.sites.len();
            let inner_site = view.prev(s_i);
            let outer_site = view.prev((s_i + m - 1) % m);
            if inner_site.one_type || outer_site.one_type {
                return Err(not_image("window brackets are not both a type"));
            }
            let outer = outer_site.index;
            let span = fwd(n, outer, i);
            if span < 2 {
                return Err(not_image("window too short"));
            }
            let mut interior = q.cycle.cyclic_slice((outer + 1) % n, span - 2).0;
            interior.push(Symbol::Bp0);
            let tail = codes::psi_inv(&Word::new(interior))?;
            let mut repl = vec![Symbol::Bm];
            repl.extend_from_slice(&tail);
            repl.push(Symbol::Bm1);
            splice(q, outer, repl.len(), &repl)
        }
        Cell::Four => {
            if ones.len() != 1 || zeros.len() != 2 {
                return Err(not_image("expected one open b and two open a brackets"));
            }
            let i = ones[0];
            if q.cycle[(i + n - 1) % n] != Symbol::Bm {
                return Err(not_image("window does not close on a c"));
            }
            let s1 = (i + 1) % n;
            if !zeros.contains(&s1) {
                return Err(not_image("window does not open right after the b bracket"));
            }
            let s2 = zeros[if zeros[0] == s1 { 1 } else { 0 }];
            let blen = fwd(n, s1, s2) + 1;
            if blen + 2 > n {
                return Err(not_image("opened factor overruns the window"));
            }
            let b = q.cycle.cyclic_slice(s1, blen);
            if !codes::member(&b, CodeClass::B00) {
                return Err(not_image("opened factor is not a double a bracket word"));
            }
            let glen = n - 2 - blen;
            let g = q.cycle.cyclic_slice((s2 + 1) % n, glen);
            let t1 = codes::psi0_inv(&codes::phi0_inv(&b)?)?;
            let rest = codes::psi_inv(&g)?;
            let mut repl = vec![Symbol::Bm];
            repl.extend_from_slice(&t1);
            repl.extend_from_slice(&rest);
            splice(q, (i + 1) % n, repl.len(), &repl)
        }
    }
}
