//! Alphabet, graph structure, label monoid, and admissibility.
//!
//! The Fibonacci graph has two vertices 0 and 1 and six edges. Each edge
//! carries a label in the Dyck inverse monoid D2 generated by two bracket
//! pairs am(0), ap(0) and am(1), ap(1) subject to am(n) ap(m) = 1 when
//! n = m and 0 otherwise. A word over the edge alphabet is admissible when
//! it is a path in the graph and its reduced label is nonzero.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Edge symbols in the global order used by every lexicographic comparison.
///
/// Compact one-letter names, edge endpoints, and labels:
///
/// | symbol | compact | edge    | label |
/// |--------|---------|---------|-------|
/// | `Bm0`  | `a`     | 0 -> 0  | am(0) |
/// | `Bm1`  | `b`     | 1 -> 0  | am(1) |
/// | `Bm`   | `c`     | 0 -> 1  | 1     |
/// | `Bp0`  | `A`     | 0 -> 0  | ap(0) |
/// | `Bp1`  | `B`     | 0 -> 1  | ap(1) |
/// | `Bp`   | `C`     | 1 -> 0  | 1     |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Bm0,
    Bm1,
    Bm,
    Bp0,
    Bp1,
    Bp,
}

pub use Symbol::{Bm, Bm0, Bm1, Bp, Bp0, Bp1};

/// Reduced label of a single edge: the identity, one negative generator, or
/// one positive generator. The `u8` is the bracket type, 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    One,
    Minus(u8),
    Plus(u8),
}

impl Symbol {
    pub const ALL: [Symbol; 6] = [Bm0, Bm1, Bm, Bp0, Bp1, Bp];

    /// Source vertex of the edge.
    pub fn source(self) -> u8 {
        match self {
            Bm0 | Bm | Bp0 | Bp1 => 0,
            Bm1 | Bp => 1,
        }
    }

    /// Target vertex of the edge.
    pub fn target(self) -> u8 {
        match self {
            Bm0 | Bm1 | Bp0 | Bp => 0,
            Bm | Bp1 => 1,
        }
    }

    /// Monoid label of the edge.
    pub fn label(self) -> Label {
        match self {
            Bm0 => Label::Minus(0),
            Bm1 => Label::Minus(1),
            Bm | Bp => Label::One,
            Bp0 => Label::Plus(0),
            Bp1 => Label::Plus(1),
        }
    }

    /// Time-reversal pairing: each negative edge swaps with the positive
    /// edge that traverses the same endpoints backwards.
    pub fn chi(self) -> Symbol {
        match self {
            Bm0 => Bp0,
            Bp0 => Bm0,
            Bm1 => Bp1,
            Bp1 => Bm1,
            Bm => Bp,
            Bp => Bm,
        }
    }

    /// One-letter output encoding.
    pub fn compact(self) -> char {
        match self {
            Bm0 => 'a',
            Bm1 => 'b',
            Bm => 'c',
            Bp0 => 'A',
            Bp1 => 'B',
            Bp => 'C',
        }
    }

    pub fn from_compact(ch: char) -> Option<Symbol> {
        Some(match ch {
            'a' => Bm0,
            'b' => Bm1,
            'c' => Bm,
            'A' => Bp0,
            'B' => Bp1,
            'C' => Bp,
            _ => return None,
        })
    }

    /// Spaced ASCII token encoding accepted on input.
    pub fn token(self) -> &'static str {
        match self {
            Bm0 => "m0",
            Bm1 => "m1",
            Bm => "m",
            Bp0 => "p0",
            Bp1 => "p1",
            Bp => "p",
        }
    }

    pub fn from_token(tok: &str) -> Option<Symbol> {
        Some(match tok {
            "m0" => Bm0,
            "m1" => Bm1,
            "m" => Bm,
            "p0" => Bp0,
            "p1" => Bp1,
            "p" => Bp,
            _ => return None,
        })
    }
}

/// Finite word over the edge alphabet.
///
/// Comparison is lexicographic in the symbol order, which is exactly the
/// order used for histories, necklace representatives, and selector
/// tie-breaking.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Word {
        Word(symbols)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Rotation moving position `k` to the front.
    pub fn rotate_left(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Cyclic factor of length `len` starting at position `start`.
    pub fn cyclic_slice(&self, start: usize, len: usize) -> Word {
        let n = self.0.len();
        assert!(n > 0 || len == 0);
        let mut v = Vec::with_capacity(len);
        for t in 0..len {
            v.push(self.0[(start + t) % n]);
        }
        Word(v)
    }

    /// Overwrite `repl.len()` positions cyclically starting at `start`.
    pub fn splice_cyclic(&mut self, start: usize, repl: &[Symbol]) {
        let n = self.0.len();
        assert!(repl.len() <= n);
        for (t, &s) in repl.iter().enumerate() {
            self.0[(start + t) % n] = s;
        }
    }

    /// Lexicographically least rotation.
    pub fn min_rotation(&self) -> Word {
        (0..self.0.len().max(1))
            .map(|k| self.rotate_left(k))
            .min()
            .unwrap_or_else(Word::empty)
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.compact())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts the compact encoding (`acCA`) and the spaced token encoding
    /// (`m0 m p p0`).
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let mut v = Vec::new();
        for chunk in s.split_whitespace() {
            if let Some(sym) = Symbol::from_token(chunk) {
                v.push(sym);
                continue;
            }
            for ch in chunk.chars() {
                v.push(
                    Symbol::from_compact(ch)
                        .ok_or_else(|| Error::Parse(format!("unknown symbol {ch:?}")))?,
                );
            }
        }
        Ok(Word(v))
    }
}

/// Element of the Dyck inverse monoid D2 in normal form: zero, or a block of
/// positive generators followed by a block of negative generators. `plus`
/// and `minus` list bracket types in word order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonoidElement {
    Zero,
    Reduced { plus: Vec<u8>, minus: Vec<u8> },
}

impl MonoidElement {
    pub fn one() -> MonoidElement {
        MonoidElement::Reduced {
            plus: Vec::new(),
            minus: Vec::new(),
        }
    }

    pub fn from_label(l: Label) -> MonoidElement {
        match l {
            Label::One => MonoidElement::one(),
            Label::Minus(k) => MonoidElement::Reduced {
                plus: Vec::new(),
                minus: vec![k],
            },
            Label::Plus(k) => MonoidElement::Reduced {
                plus: vec![k],
                minus: Vec::new(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MonoidElement::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, MonoidElement::Reduced { plus, minus } if plus.is_empty() && minus.is_empty())
    }

    /// Bracket balance (nu0, nu1): negative-generator count minus
    /// positive-generator count, per bracket type. Zero has no balance.
    pub fn nu(&self) -> Option<(i64, i64)> {
        match self {
            MonoidElement::Zero => None,
            MonoidElement::Reduced { plus, minus } => {
                let count = |v: &[u8], k: u8| v.iter().filter(|&&x| x == k).count() as i64;
                Some((
                    count(minus, 0) - count(plus, 0),
                    count(minus, 1) - count(plus, 1),
                ))
            }
        }
    }
}

/// Product in D2. Cancels the tail of `a`'s negative block against the head
/// of `b`'s positive block pairwise; a bracket-type mismatch gives zero.
pub fn multiply(a: &MonoidElement, b: &MonoidElement) -> MonoidElement {
    let (ap, am) = match a {
        MonoidElement::Zero => return MonoidElement::Zero,
        MonoidElement::Reduced { plus, minus } => (plus, minus),
    };
    let (bp, bm) = match b {
        MonoidElement::Zero => return MonoidElement::Zero,
        MonoidElement::Reduced { plus, minus } => (plus, minus),
    };
    let mut i = am.len();
    let mut j = 0;
    while i > 0 && j < bp.len() {
        if am[i - 1] != bp[j] {
            return MonoidElement::Zero;
        }
        i -= 1;
        j += 1;
    }
    let mut plus = ap.clone();
    plus.extend_from_slice(&bp[j..]);
    let mut minus: Vec<u8> = am[..i].to_vec();
    minus.extend_from_slice(bm);
    MonoidElement::Reduced { plus, minus }
}

/// Left-to-right incremental reduction of edge labels.
///
/// `plus` is the prefix of positive generators that survived past the empty
/// stack, `minus` the stack of currently unmatched negative generators, and
/// `dead` records a bracket mismatch.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Reducer {
    pub plus: Vec<u8>,
    pub minus: Vec<u8>,
    pub dead: bool,
}

impl Reducer {
    pub fn new() -> Reducer {
        Reducer::default()
    }

    pub fn push(&mut self, s: Symbol) {
        if self.dead {
            return;
        }
        match s.label() {
            Label::One => {}
            Label::Minus(k) => self.minus.push(k),
            Label::Plus(k) => match self.minus.last() {
                Some(&top) => {
                    if top == k {
                        self.minus.pop();
                    } else {
                        self.dead = true;
                    }
                }
                None => self.plus.push(k),
            },
        }
    }

    pub fn element(&self) -> MonoidElement {
        if self.dead {
            MonoidElement::Zero
        } else {
            MonoidElement::Reduced {
                plus: self.plus.clone(),
                minus: self.minus.clone(),
            }
        }
    }

    /// True when the reduction so far is the identity.
    pub fn is_identity(&self) -> bool {
        !self.dead && self.plus.is_empty() && self.minus.is_empty()
    }
}

/// Reduced label of a word.
pub fn label_word(w: &[Symbol]) -> MonoidElement {
    let mut r = Reducer::new();
    for &s in w {
        r.push(s);
    }
    r.element()
}

/// True when consecutive symbols chain through the graph. With `cyclic` the
/// last target must also equal the first source. The empty word is a path.
pub fn is_path(w: &[Symbol], cyclic: bool) -> bool {
    if w.is_empty() {
        return true;
    }
    for pair in w.windows(2) {
        if pair[0].target() != pair[1].source() {
            return false;
        }
    }
    !cyclic || w[w.len() - 1].target() == w[0].source()
}

/// A finite word appears in the shift iff it is a path with nonzero label.
pub fn is_admissible(w: &[Symbol]) -> bool {
    is_path(w, false) && !label_word(w).is_zero()
}

/// Whether the bi-infinite repetition of `w` is a point of the shift.
///
/// For the per-period reduced label r, nonzero r and r^2 force every power
/// of r nonzero, because the cancellation pattern between consecutive
/// periods repeats identically; every factor of the periodic sequence then
/// has nonzero label. The empty word is rejected.
pub fn is_admissible_cycle(w: &[Symbol]) -> bool {
    if w.is_empty() || !is_path(w, true) {
        return false;
    }
    let r = label_word(w);
    if r.is_zero() {
        return false;
    }
    !multiply(&r, &r).is_zero()
}

/// Time reversal: reverse the word and swap each edge with its chi partner.
pub fn time_reverse(w: &Word) -> Word {
    Word(w.iter().rev().map(|s| s.chi()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn m(plus: &[u8], minus: &[u8]) -> MonoidElement {
        MonoidElement::Reduced {
            plus: plus.to_vec(),
            minus: minus.to_vec(),
        }
    }

    #[test]
    fn symbol_order_is_global_order() {
        let mut sorted = Symbol::ALL.to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![Bm0, Bm1, Bm, Bp0, Bp1, Bp]);
    }

    #[test]
    fn edges_chain_through_vertices() {
        assert_eq!(Bm0.source(), 0);
        assert_eq!(Bm0.target(), 0);
        assert_eq!(Bm1.source(), 1);
        assert_eq!(Bm1.target(), 0);
        assert_eq!(Bm.source(), 0);
        assert_eq!(Bm.target(), 1);
        assert_eq!(Bp1.source(), 0);
        assert_eq!(Bp1.target(), 1);
        assert_eq!(Bp.source(), 1);
        assert_eq!(Bp.target(), 0);
    }

    #[test]
    fn chi_reverses_edges() {
        for s in Symbol::ALL {
            assert_eq!(s.chi().source(), s.target());
            assert_eq!(s.chi().target(), s.source());
            assert_eq!(s.chi().chi(), s);
        }
    }

    #[test]
    fn word_parsing_round_trips() {
        for text in ["", "a", "acCA", "cbBb", "aAbBcC"] {
            let word = w(text);
            assert_eq!(word.to_string(), text);
        }
        assert_eq!(w("m0 m p p0"), w("acCA"));
        assert_eq!(w(" a A "), w("aA"));
        assert!("x".parse::<Word>().is_err());
        assert!("m0 q".parse::<Word>().is_err());
    }

    #[test]
    fn multiply_matches_bracket_relations() {
        let am0 = m(&[], &[0]);
        let ap0 = m(&[0], &[]);
        let ap1 = m(&[1], &[]);
        assert!(multiply(&am0, &ap0).is_one());
        assert!(multiply(&am0, &ap1).is_zero());
        assert_eq!(multiply(&ap0, &m(&[], &[1])), m(&[0], &[1]));
        assert!(multiply(&MonoidElement::Zero, &ap0).is_zero());
    }

    #[test]
    fn multiply_cancels_across_blocks() {
        let a = m(&[1], &[0, 1]);
        let b = m(&[1, 0], &[0]);
        assert_eq!(multiply(&a, &b), m(&[1], &[0]));
        let c = m(&[1, 0], &[]);
        assert_eq!(multiply(&a, &c), m(&[1], &[]));
        let d = m(&[0], &[]);
        assert!(multiply(&a, &d).is_zero());
    }

    #[test]
    fn label_word_reduces_left_to_right() {
        assert_eq!(label_word(&w("acb")), m(&[], &[0, 1]));
        assert!(label_word(&w("aA")).is_one());
        assert!(label_word(&w("aB")).is_zero());
        assert_eq!(label_word(&w("AcC")), m(&[0], &[]));
    }

    #[test]
    fn paths_follow_the_graph() {
        assert!(is_path(&w("ac"), false));
        assert!(!is_path(&w("ac"), true));
        assert!(!is_path(&w("cB"), false));
        assert!(is_path(&w("cC"), true));
        assert!(is_path(&[], true));
    }

    #[test]
    fn admissible_needs_path_and_nonzero_label() {
        assert!(is_admissible(&w("acC")));
        assert!(is_admissible(&w("aA")));
        assert!(!is_admissible(&w("aB")));
        assert!(!is_admissible(&w("cB")));
    }

    #[test]
    fn cycle_admissibility_checks_the_squared_label() {
        assert!(is_admissible_cycle(&w("a")));
        assert!(is_admissible_cycle(&w("bB")));
        assert!(is_admissible_cycle(&w("aA")));
        assert!(!is_admissible_cycle(&w("Acb")));
        assert!(!is_admissible_cycle(&w("ac")));
        assert!(!is_admissible_cycle(&[]));
    }

    #[test]
    fn cycle_admissibility_agrees_with_long_window_scan() {
        // Brute oracle: every factor of the 4-fold repetition must be
        // admissible.
        for n in 1..=6 {
            for bits in 0..6usize.pow(n as u32) {
                let mut x = bits;
                let mut v = Vec::with_capacity(n);
                for _ in 0..n {
                    v.push(Symbol::ALL[x % 6]);
                    x /= 6;
                }
                let word = Word(v);
                if !is_path(&word, true) {
                    assert!(!is_admissible_cycle(&word));
                    continue;
                }
                let four = word
                    .concat(&word)
                    .concat(&word)
                    .concat(&word);
                let oracle = !label_word(&four).is_zero();
                assert_eq!(
                    is_admissible_cycle(&word),
                    oracle,
                    "cycle admissibility mismatch on {word}"
                );
            }
        }
    }

    #[test]
    fn time_reverse_is_an_involution_preserving_admissibility() {
        for text in ["a", "bB", "aA", "acbAca"] {
            let word = w(text);
            assert_eq!(time_reverse(&time_reverse(&word)), word);
        }
        assert_eq!(time_reverse(&w("acb")), w("BCA"));
        assert!(is_admissible_cycle(&time_reverse(&w("acb"))));
    }

    #[test]
    fn rotations_and_slices_are_cyclic() {
        let word = w("acbA");
        assert_eq!(word.rotate_left(1), w("cbAa"));
        assert_eq!(word.rotate_left(4), word);
        assert_eq!(word.cyclic_slice(3, 3), w("Aac"));
        assert_eq!(word.min_rotation(), w("acbA"));
        assert_eq!(w("cbAa").min_rotation(), w("acbA"));
        let mut spliced = word.clone();
        spliced.splice_cyclic(3, &w("BB")[..]);
        assert_eq!(spliced, w("BcbB"));
    }
}
