//! Circular codes of the shift, their word classes, and rewriting maps.
//!
//! The code C splits into three disjoint parts: type-0 codewords
//! C(0) = a C* A, the two-symbol word cC, and type-1 codewords
//! C(1) = c (Co1* minus empty) C, where Co1 = b C* B is the code of
//! first returns to vertex 1. On top of the codes sit the open-bracket
//! classes B(1), B(0,0), B(1,1), the mixed-star classes Q0 and Q1, and the
//! dominated classes D(1,1), D(0,1), D(1,0) used by the rewriting maps.

use crate::core_shift::{Label, Symbol, Word};
use crate::error::{Error, Result};

/// Word classes with membership tests and factorizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CodeClass {
    /// Type-0 codewords a C* A.
    C0,
    /// Type-1 codewords c (Co1* \ eps) C.
    C1,
    /// First returns to vertex 1: b C* B.
    Co1,
    /// The full code C(0) | {cC} | C(1).
    C,
    /// C(0) together with the word cC.
    C0orBB,
    /// Open words c Co1* b.
    B1,
    /// Open words a C* a.
    B00,
    /// Open words B(1) C* c b.
    B11,
    /// (C(0)|{cC})* minus {cC}*.
    Q0,
    /// C* minus (C(0)|{cC})*.
    Q1,
    /// Dominated words B(1) f B(1) with f in C*, l(f) >= both interior lengths.
    D11,
    /// Dominated words a f c T b with f in C*, T in Co1*, l(f) >= l(T).
    D01,
    /// Dominated words c T b f a with f in C*, l(f) >= l(T).
    D10,
}

impl CodeClass {
    pub fn name(self) -> &'static str {
        match self {
            CodeClass::C0 => "C(0)",
            CodeClass::C1 => "C(1)",
            CodeClass::Co1 => "Co(1)",
            CodeClass::C => "C",
            CodeClass::C0orBB => "C(0)|BB",
            CodeClass::B1 => "B(1)",
            CodeClass::B00 => "B(0,0)",
            CodeClass::B11 => "B(1,1)",
            CodeClass::Q0 => "Q0",
            CodeClass::Q1 => "Q1",
            CodeClass::D11 => "D(1,1)",
            CodeClass::D01 => "D(0,1)",
            CodeClass::D10 => "D(1,0)",
        }
    }
}

/// Codeword factorization of a word in a class star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub class: CodeClass,
    pub factors: Vec<Word>,
    /// Start position of each factor in the input.
    pub positions: Vec<usize>,
}

/// Greedy first-return scan from `start_vertex`. Returns the exclusive end
/// index of each completed codeword, or the position where the scan got
/// stuck. A codeword ends at the first moment the local bracket stack is
/// empty and the walk is back at the start vertex.
fn scan_factors(w: &[Symbol], start_vertex: u8) -> std::result::Result<Vec<usize>, usize> {
    let mut bounds = Vec::new();
    let mut vertex = start_vertex;
    let mut stack: Vec<u8> = Vec::new();
    let mut factor_start = 0;
    for (t, &s) in w.iter().enumerate() {
        if s.source() != vertex {
            return Err(t);
        }
        vertex = s.target();
        match s.label() {
            Label::One => {}
            Label::Minus(k) => stack.push(k),
            Label::Plus(k) => match stack.pop() {
                Some(top) if top == k => {}
                _ => return Err(t),
            },
        }
        if stack.is_empty() && vertex == start_vertex {
            bounds.push(t + 1);
            factor_start = t + 1;
        }
    }
    if factor_start != w.len() {
        return Err(factor_start);
    }
    Ok(bounds)
}

/// Star membership for the four starrable classes C, C(0), Co(1), C(0)|BB.
pub fn in_star(w: &[Symbol], class: CodeClass) -> bool {
    star_positions(w, class).is_ok()
}

fn star_positions(w: &[Symbol], class: CodeClass) -> std::result::Result<Vec<usize>, usize> {
    let start_vertex = match class {
        CodeClass::Co1 => 1,
        CodeClass::C | CodeClass::C0 | CodeClass::C0orBB => 0,
        _ => return Err(0),
    };
    let bounds = scan_factors(w, start_vertex)?;
    let mut start = 0;
    let mut starts = Vec::with_capacity(bounds.len());
    for &end in &bounds {
        let ok = match class {
            CodeClass::C => true,
            CodeClass::C0 => w[start] == Symbol::Bm0,
            CodeClass::Co1 => w[start] == Symbol::Bm1,
            CodeClass::C0orBB => w[start] == Symbol::Bm0 || end - start == 2,
            _ => unreachable!(),
        };
        if !ok {
            return Err(start);
        }
        starts.push(start);
        start = end;
    }
    Ok(starts)
}

/// The unique codeword factorization of `w` over the star of `class`.
/// Only the starrable classes C, C(0), Co(1), and C(0)|BB are accepted.
pub fn factorize(w: &Word, class: CodeClass) -> Result<Factorization> {
    if !matches!(
        class,
        CodeClass::C | CodeClass::C0 | CodeClass::Co1 | CodeClass::C0orBB
    ) {
        return Err(Error::NotInDomain(format!(
            "{} is not a starrable class",
            class.name()
        )));
    }
    let starts = star_positions(w, class).map_err(|position| Error::NotInClassStar {
        class: class.name().to_string(),
        position,
    })?;
    let mut factors = Vec::with_capacity(starts.len());
    for (i, &s) in starts.iter().enumerate() {
        let end = starts.get(i + 1).copied().unwrap_or(w.len());
        factors.push(Word::new(w[s..end].to_vec()));
    }
    Ok(Factorization {
        class,
        factors,
        positions: starts,
    })
}

/// Single-codeword membership: exactly one factor covering the whole word.
fn single_factor(w: &[Symbol], start_vertex: u8) -> bool {
    !w.is_empty() && scan_factors(w, start_vertex) == Ok(vec![w.len()])
}

fn is_bb_star(w: &[Symbol]) -> bool {
    w.len() % 2 == 0
        && w.chunks(2)
            .all(|p| p[0] == Symbol::Bm && p[1] == Symbol::Bp)
}

/// Valid decompositions a f c T b of a D(0,1)-shaped word, as (anchor, l(f), l(T)).
fn d01_splits(w: &[Symbol]) -> Vec<(usize, usize, usize)> {
    let n = w.len();
    let mut out = Vec::new();
    if n < 3 || w[0] != Symbol::Bm0 || w[n - 1] != Symbol::Bm1 {
        return out;
    }
    for m in 1..n - 1 {
        if w[m] == Symbol::Bm && in_star(&w[1..m], CodeClass::C) && in_star(&w[m + 1..n - 1], CodeClass::Co1)
        {
            out.push((m, m - 1, n - 2 - m));
        }
    }
    out
}

/// Valid decompositions c T b f a of a D(1,0)-shaped word, as (b-position, l(T), l(f)).
fn d10_splits(w: &[Symbol]) -> Vec<(usize, usize, usize)> {
    let n = w.len();
    let mut out = Vec::new();
    if n < 3 || w[0] != Symbol::Bm || w[n - 1] != Symbol::Bm0 {
        return out;
    }
    for j in 1..n - 1 {
        if w[j] == Symbol::Bm1 && member_b1(&w[..=j]) && in_star(&w[j + 1..n - 1], CodeClass::C) {
            out.push((j, j - 1, n - 2 - j));
        }
    }
    out
}

/// Valid decompositions b1 f b2 of a D(1,1)-shaped word, as
/// (end of b1, start of b2, l(f), l(T1), l(T2)).
fn d11_splits(w: &[Symbol]) -> Vec<(usize, usize, usize, usize, usize)> {
    let n = w.len();
    let mut out = Vec::new();
    if n < 4 || w[0] != Symbol::Bm || w[n - 1] != Symbol::Bm1 {
        return out;
    }
    for j in 1..n - 2 {
        if w[j] != Symbol::Bm1 || !member_b1(&w[..=j]) {
            continue;
        }
        for k in j + 1..n - 1 {
            if w[k] == Symbol::Bm
                && member_b1(&w[k..])
                && in_star(&w[j + 1..k], CodeClass::C)
            {
                out.push((j, k, k - j - 1, j - 1, n - 2 - k));
            }
        }
    }
    out
}

fn member_b1(w: &[Symbol]) -> bool {
    w.len() >= 2
        && w[0] == Symbol::Bm
        && w[w.len() - 1] == Symbol::Bm1
        && in_star(&w[1..w.len() - 1], CodeClass::Co1)
}

fn member_b00(w: &[Symbol]) -> bool {
    w.len() >= 2
        && w[0] == Symbol::Bm0
        && w[w.len() - 1] == Symbol::Bm0
        && in_star(&w[1..w.len() - 1], CodeClass::C)
}

fn member_b11(w: &[Symbol]) -> bool {
    let n = w.len();
    if n < 4 || w[0] != Symbol::Bm || w[n - 2] != Symbol::Bm || w[n - 1] != Symbol::Bm1 {
        return false;
    }
    (1..n - 2).any(|j| {
        w[j] == Symbol::Bm1 && member_b1(&w[..=j]) && in_star(&w[j + 1..n - 2], CodeClass::C)
    })
}

/// Membership test for every word class.
pub fn member(w: &Word, class: CodeClass) -> bool {
    let s: &[Symbol] = w;
    match class {
        CodeClass::C => single_factor(s, 0),
        CodeClass::C0 => single_factor(s, 0) && s[0] == Symbol::Bm0,
        CodeClass::C1 => single_factor(s, 0) && s[0] == Symbol::Bm && s.len() > 2,
        CodeClass::Co1 => single_factor(s, 1) && s[0] == Symbol::Bm1,
        CodeClass::C0orBB => single_factor(s, 0) && (s[0] == Symbol::Bm0 || s.len() == 2),
        CodeClass::B1 => member_b1(s),
        CodeClass::B00 => member_b00(s),
        CodeClass::B11 => member_b11(s),
        CodeClass::Q0 => {
            !s.is_empty() && in_star(s, CodeClass::C0orBB) && !is_bb_star(s)
        }
        CodeClass::Q1 => in_star(s, CodeClass::C) && !in_star(s, CodeClass::C0orBB),
        CodeClass::D11 => d11_splits(s)
            .into_iter()
            .any(|(_, _, lf, lt1, lt2)| lf >= lt1.max(lt2)),
        CodeClass::D01 => d01_splits(s).into_iter().any(|(_, lf, lt)| lf >= lt),
        CodeClass::D10 => d10_splits(s).into_iter().any(|(_, lt, lf)| lf >= lt),
    }
}

/// The l-value of the designated interior factor of a class word: l(f°) for
/// B(1), l(f) for B(0,0) and the three D-classes.
pub fn lambda_len(w: &Word, class: CodeClass) -> Result<usize> {
    let not_in = || Error::NotInDomain(format!("word is not in {}", class.name()));
    match class {
        CodeClass::B1 | CodeClass::B00 => {
            if member(w, class) {
                Ok(w.len() - 2)
            } else {
                Err(not_in())
            }
        }
        CodeClass::D01 => {
            let vals: Vec<usize> = d01_splits(w)
                .into_iter()
                .filter(|&(_, lf, lt)| lf >= lt)
                .map(|(_, lf, _)| lf)
                .collect();
            lambda_pick(vals).ok_or_else(not_in)
        }
        CodeClass::D10 => {
            let vals: Vec<usize> = d10_splits(w)
                .into_iter()
                .filter(|&(_, lt, lf)| lf >= lt)
                .map(|(_, _, lf)| lf)
                .collect();
            lambda_pick(vals).ok_or_else(not_in)
        }
        CodeClass::D11 => {
            let vals: Vec<usize> = d11_splits(w)
                .into_iter()
                .filter(|&(_, _, lf, lt1, lt2)| lf >= lt1.max(lt2))
                .map(|(_, _, lf, _, _)| lf)
                .collect();
            lambda_pick(vals).ok_or_else(not_in)
        }
        _ => Err(Error::NotInDomain(format!(
            "no l-value is defined on {}",
            class.name()
        ))),
    }
}

fn lambda_pick(vals: Vec<usize>) -> Option<usize> {
    debug_assert!(vals.windows(2).all(|p| p[0] == p[1]), "ambiguous split");
    vals.into_iter().max()
}

/// Type change on a single first-return word: b f B becomes a f A.
pub fn psi0(w: &Word) -> Result<Word> {
    if !member(w, CodeClass::Co1) {
        return Err(Error::NotInDomain("psi0 takes a Co(1) codeword".into()));
    }
    let mut v = w.0.clone();
    v[0] = Symbol::Bm0;
    let last = v.len() - 1;
    v[last] = Symbol::Bp0;
    Ok(Word(v))
}

pub fn psi0_inv(w: &Word) -> Result<Word> {
    if !member(w, CodeClass::C0) {
        return Err(Error::NotInDomain("psi0_inv takes a C(0) codeword".into()));
    }
    let mut v = w.0.clone();
    v[0] = Symbol::Bm1;
    let last = v.len() - 1;
    v[last] = Symbol::Bp1;
    Ok(Word(v))
}

/// Factorwise type change Co(1)* -> C(0)*.
pub fn psi(w: &Word) -> Result<Word> {
    let f = factorize(w, CodeClass::Co1)
        .map_err(|_| Error::NotInDomain("psi takes a word in Co(1)*".into()))?;
    let mut out = Vec::with_capacity(w.len());
    for factor in &f.factors {
        out.extend_from_slice(&psi0(factor)?.0);
    }
    Ok(Word(out))
}

pub fn psi_inv(w: &Word) -> Result<Word> {
    let f = factorize(w, CodeClass::C0)
        .map_err(|_| Error::NotInDomain("psi_inv takes a word in C(0)*".into()))?;
    let mut out = Vec::with_capacity(w.len());
    for factor in &f.factors {
        out.extend_from_slice(&psi0_inv(factor)?.0);
    }
    Ok(Word(out))
}

/// Rewrite an open word c T b into the closed codeword a Psi(T) A.
pub fn xi_map(w: &Word) -> Result<Word> {
    if !member(w, CodeClass::B1) {
        return Err(Error::NotInDomain("xi_map takes a B(1) word".into()));
    }
    let interior = Word::new(w[1..w.len() - 1].to_vec());
    let mut v = vec![Symbol::Bm0];
    v.extend_from_slice(&psi(&interior)?.0);
    v.push(Symbol::Bp0);
    Ok(Word(v))
}

/// Partial inverse of `xi_map`: defined on the C(0) codewords whose interior
/// lies in C(0)*. The image of `xi_map` is a C(0)* interior wrapped in a
/// bracket, which is a proper subset of C(0); codewords such as a cC A are
/// outside it.
pub fn xi_map_inv(w: &Word) -> Result<Word> {
    if !member(w, CodeClass::C0) {
        return Err(Error::NotInDomain("xi_map_inv takes a C(0) codeword".into()));
    }
    let interior = Word::new(w[1..w.len() - 1].to_vec());
    let t = psi_inv(&interior).map_err(|_| {
        Error::NotInDomain("codeword interior is not in C(0)*, not an xi_map image".into())
    })?;
    let mut v = vec![Symbol::Bm];
    v.extend_from_slice(&t.0);
    v.push(Symbol::Bm1);
    Ok(Word(v))
}

/// Open up a type-0 codeword: final A becomes a.
pub fn phi0(w: &Word) -> Result<Word> {
    if !member(w, CodeClass::C0) {
        return Err(Error::NotInDomain("phi0 takes a C(0) codeword".into()));
    }
    let mut v = w.0.clone();
    let last = v.len() - 1;
    v[last] = Symbol::Bm0;
    Ok(Word(v))
}

pub fn phi0_inv(w: &Word) -> Result<Word> {
    if !member(w, CodeClass::B00) {
        return Err(Error::NotInDomain("phi0_inv takes a B(0,0) word".into()));
    }
    let mut v = w.0.clone();
    let last = v.len() - 1;
    v[last] = Symbol::Bp0;
    Ok(Word(v))
}

/// Open up a type-1 codeword: final B C becomes c b.
pub fn phi1(w: &Word) -> Result<Word> {
    if !member(w, CodeClass::C1) {
        return Err(Error::NotInDomain("phi1 takes a C(1) codeword".into()));
    }
    let mut v = w.0.clone();
    let last = v.len() - 1;
    v[last - 1] = Symbol::Bm;
    v[last] = Symbol::Bm1;
    Ok(Word(v))
}

pub fn phi1_inv(w: &Word) -> Result<Word> {
    if !member(w, CodeClass::B11) {
        return Err(Error::NotInDomain("phi1_inv takes a B(1,1) word".into()));
    }
    let mut v = w.0.clone();
    let last = v.len() - 1;
    v[last - 1] = Symbol::Bp1;
    v[last] = Symbol::Bp;
    Ok(Word(v))
}

/// Open the last type-0 factor of a word in Q0.
pub fn delta0(f: &Word) -> Result<Word> {
    if !member(f, CodeClass::Q0) {
        return Err(Error::NotInDomain("delta0 takes a word in Q0".into()));
    }
    let fact = factorize(f, CodeClass::C0orBB)?;
    let k = fact
        .factors
        .iter()
        .rposition(|c| member(c, CodeClass::C0))
        .expect("Q0 word has a type-0 factor");
    let mut out = f.clone();
    out.splice_cyclic(fact.positions[k], &phi0(&fact.factors[k])?.0);
    Ok(out)
}

/// Open the last type-1 factor of a word in Q1.
pub fn delta1(f: &Word) -> Result<Word> {
    if !member(f, CodeClass::Q1) {
        return Err(Error::NotInDomain("delta1 takes a word in Q1".into()));
    }
    let fact = factorize(f, CodeClass::C)?;
    let k = fact
        .factors
        .iter()
        .rposition(|c| member(c, CodeClass::C1))
        .expect("Q1 word has a type-1 factor");
    let mut out = f.clone();
    out.splice_cyclic(fact.positions[k], &phi1(&fact.factors[k])?.0);
    Ok(out)
}

/// Prefixes of `w` that lie in the star of `class`, as end positions
/// including 0, in increasing order. Greedy boundaries suffice because the
/// codes are prefix-free.
fn star_prefix_ends(w: &[Symbol], class: CodeClass) -> Vec<usize> {
    let start_vertex = if class == CodeClass::Co1 { 1 } else { 0 };
    let mut ends = vec![0];
    let mut vertex = start_vertex;
    let mut stack: Vec<u8> = Vec::new();
    let mut factor_start = 0;
    for (t, &s) in w.iter().enumerate() {
        if s.source() != vertex {
            break;
        }
        vertex = s.target();
        let dead = match s.label() {
            Label::One => false,
            Label::Minus(k) => {
                stack.push(k);
                false
            }
            Label::Plus(k) => !matches!(stack.pop(), Some(top) if top == k),
        };
        if dead {
            break;
        }
        if stack.is_empty() && vertex == start_vertex {
            let ok = match class {
                CodeClass::C => true,
                CodeClass::C0 => w[factor_start] == Symbol::Bm0,
                CodeClass::Co1 => w[factor_start] == Symbol::Bm1,
                CodeClass::C0orBB => {
                    w[factor_start] == Symbol::Bm0 || t + 1 - factor_start == 2
                }
                _ => unreachable!(),
            };
            if !ok {
                break;
            }
            ends.push(t + 1);
            factor_start = t + 1;
        }
    }
    ends
}

/// Crate-internal view of the greedy prefix boundaries over C*.
pub(crate) fn c_star_prefix_ends(w: &[Symbol]) -> Vec<usize> {
    star_prefix_ends(w, CodeClass::C)
}

/// Inverse of `delta0` on its image: locate the unique type-0-opened factor,
/// close it back up, and check the round trip.
pub fn delta0_inv_partial(w: &Word) -> Result<Word> {
    for &s in &star_prefix_ends(w, CodeClass::C0orBB) {
        for e in (s + 2..=w.len()).rev() {
            if !member_b00(&w[s..e]) || !is_bb_star(&w[e..]) {
                continue;
            }
            let mut cand = w.clone();
            cand.splice_cyclic(s, &phi0_inv(&Word::new(w[s..e].to_vec()))?.0);
            if member(&cand, CodeClass::Q0) && delta0(&cand)? == *w {
                return Ok(cand);
            }
        }
    }
    Err(Error::NotInDomain("word is not a delta0 image".into()))
}

/// Inverse of `delta1` on its image.
pub fn delta1_inv_partial(w: &Word) -> Result<Word> {
    for &s in &star_prefix_ends(w, CodeClass::C) {
        for e in s + 4..=w.len() {
            if !member_b11(&w[s..e]) || !in_star(&w[e..], CodeClass::C0orBB) {
                continue;
            }
            let mut cand = w.clone();
            cand.splice_cyclic(s, &phi1_inv(&Word::new(w[s..e].to_vec()))?.0);
            if member(&cand, CodeClass::Q1) && delta1(&cand)? == *w {
                return Ok(cand);
            }
        }
    }
    Err(Error::NotInDomain("word is not a delta1 image".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn shortest_codewords_split_by_type() {
        assert!(member(&w("aA"), CodeClass::C0));
        assert!(member(&w("cbBC"), CodeClass::C1));
        assert!(!member(&w("cC"), CodeClass::C0));
        assert!(!member(&w("cC"), CodeClass::C1));
        assert!(member(&w("cC"), CodeClass::C));
        assert!(member(&w("cC"), CodeClass::C0orBB));
        assert!(member(&w("bB"), CodeClass::Co1));
        assert!(!member(&w(""), CodeClass::C));
    }

    #[test]
    fn nested_membership() {
        assert!(member(&w("acCA"), CodeClass::C0));
        assert!(member(&w("aaAA"), CodeClass::C0));
        assert!(member(&w("cbaABC"), CodeClass::C1));
        assert!(member(&w("bcCB"), CodeClass::Co1));
        assert!(!member(&w("aA"), CodeClass::C1));
        assert!(!member(&w("acC"), CodeClass::C0));
        assert!(!member(&w("aAaA"), CodeClass::C0));
    }

    #[test]
    fn factorize_splits_at_label_returns() {
        let f = factorize(&w("aAcC"), CodeClass::C).unwrap();
        assert_eq!(f.factors, vec![w("aA"), w("cC")]);
        assert_eq!(f.positions, vec![0, 2]);
        let f = factorize(&w(""), CodeClass::C).unwrap();
        assert!(f.factors.is_empty());
        let f = factorize(&w("bBbB"), CodeClass::Co1).unwrap();
        assert_eq!(f.factors, vec![w("bB"), w("bB")]);
        let err = factorize(&w("aAc"), CodeClass::C).unwrap_err();
        assert_eq!(
            err,
            Error::NotInClassStar {
                class: "C".into(),
                position: 2
            }
        );
    }

    #[test]
    fn open_word_classes() {
        assert!(member(&w("cb"), CodeClass::B1));
        assert!(member(&w("cbBb"), CodeClass::B1));
        assert!(member(&w("aa"), CodeClass::B00));
        assert!(member(&w("acCa"), CodeClass::B00));
        assert!(member(&w("cbcb"), CodeClass::B11));
        assert!(member(&w("cbBbcb"), CodeClass::B11));
        assert!(member(&w("cbaAcb"), CodeClass::B11));
        assert!(!member(&w("cb"), CodeClass::B11));
        assert!(!member(&w("ca"), CodeClass::B1));
    }

    #[test]
    fn mixed_star_classes() {
        assert!(member(&w("aAcC"), CodeClass::Q0));
        assert!(member(&w("aA"), CodeClass::Q0));
        assert!(!member(&w("cC"), CodeClass::Q0));
        assert!(!member(&w(""), CodeClass::Q0));
        assert!(!member(&w("cbBC"), CodeClass::Q0));
        assert!(member(&w("cbBC"), CodeClass::Q1));
        assert!(member(&w("cCcbBC"), CodeClass::Q1));
        assert!(!member(&w("aAcC"), CodeClass::Q1));
        assert!(!member(&w(""), CodeClass::Q1));
    }

    #[test]
    fn dominated_classes_respect_length_inequalities() {
        assert!(member(&w("acCcb"), CodeClass::D01));
        assert!(!member(&w("acbBb"), CodeClass::D01));
        assert!(member(&w("cbcCa"), CodeClass::D10));
        assert!(!member(&w("cbBba"), CodeClass::D10));
        assert!(member(&w("cbaAcb"), CodeClass::D11));
        assert!(!member(&w("cbBbcb"), CodeClass::D11));
    }

    #[test]
    fn lambda_len_reads_the_interior() {
        assert_eq!(lambda_len(&w("cb"), CodeClass::B1).unwrap(), 0);
        assert_eq!(lambda_len(&w("cbBb"), CodeClass::B1).unwrap(), 2);
        assert_eq!(lambda_len(&w("acCa"), CodeClass::B00).unwrap(), 2);
        assert_eq!(lambda_len(&w("acCcb"), CodeClass::D01).unwrap(), 2);
        assert_eq!(lambda_len(&w("cbcCa"), CodeClass::D10).unwrap(), 2);
        assert_eq!(lambda_len(&w("cbaAcb"), CodeClass::D11).unwrap(), 2);
        assert!(lambda_len(&w("cb"), CodeClass::Q0).is_err());
        assert!(lambda_len(&w("acbBb"), CodeClass::D01).is_err());
    }

    #[test]
    fn psi_changes_bracket_types() {
        assert_eq!(psi0(&w("bB")).unwrap(), w("aA"));
        assert_eq!(psi0(&w("bcCB")).unwrap(), w("acCA"));
        assert_eq!(psi0_inv(&w("aA")).unwrap(), w("bB"));
        assert_eq!(psi(&w("bBbB")).unwrap(), w("aAaA"));
        assert_eq!(psi(&w("")).unwrap(), w(""));
        assert_eq!(psi_inv(&w("aA")).unwrap(), w("bB"));
        assert!(psi0(&w("aA")).is_err());
        assert!(psi(&w("aA")).is_err());
    }

    #[test]
    fn xi_closes_open_type_one_words() {
        assert_eq!(xi_map(&w("cb")).unwrap(), w("aA"));
        assert_eq!(xi_map(&w("cbBb")).unwrap(), w("aaAA"));
        assert_eq!(xi_map_inv(&w("aA")).unwrap(), w("cb"));
        assert_eq!(xi_map_inv(&w("aaAA")).unwrap(), w("cbBb"));
        assert!(xi_map(&w("aA")).is_err());
    }

    #[test]
    fn xi_image_misses_codewords_with_mixed_interiors() {
        // The interior cC is a codeword but not a type-0 codeword, so this
        // C(0) word is not an xi_map image.
        assert!(member(&w("acCA"), CodeClass::C0));
        assert!(xi_map_inv(&w("acCA")).is_err());
    }

    #[test]
    fn phi_flips_final_symbols() {
        assert_eq!(phi0(&w("aA")).unwrap(), w("aa"));
        assert_eq!(phi0(&w("acCA")).unwrap(), w("acCa"));
        assert_eq!(phi0_inv(&w("aa")).unwrap(), w("aA"));
        assert_eq!(phi1(&w("cbBC")).unwrap(), w("cbcb"));
        assert_eq!(phi1(&w("cbBbBC")).unwrap(), w("cbBbcb"));
        assert_eq!(phi1_inv(&w("cbcb")).unwrap(), w("cbBC"));
        assert!(phi0(&w("cC")).is_err());
        assert!(phi1(&w("cC")).is_err());
    }

    #[test]
    fn delta_opens_the_last_typed_factor() {
        assert_eq!(delta0(&w("cCaA")).unwrap(), w("cCaa"));
        assert_eq!(delta0(&w("aAcC")).unwrap(), w("aacC"));
        assert_eq!(delta0(&w("aAaA")).unwrap(), w("aAaa"));
        assert_eq!(delta1(&w("cbBC")).unwrap(), w("cbcb"));
        assert_eq!(delta1(&w("cbBCcC")).unwrap(), w("cbcbcC"));
        assert_eq!(delta1(&w("cCcbBC")).unwrap(), w("cCcbcb"));
        assert!(delta0(&w("cC")).is_err());
        assert!(delta1(&w("aA")).is_err());
    }

    #[test]
    fn delta_inverses_round_trip() {
        for text in ["cCaA", "aAcC", "aAaA", "aA", "acCAcC"] {
            let f = w(text);
            assert_eq!(delta0_inv_partial(&delta0(&f).unwrap()).unwrap(), f);
        }
        for text in ["cbBC", "cbBCcC", "cCcbBC", "aAcbBCaA", "cbaABC"] {
            let f = w(text);
            assert_eq!(delta1_inv_partial(&delta1(&f).unwrap()).unwrap(), f);
        }
        assert!(delta0_inv_partial(&w("aAcC")).is_err());
        assert!(delta1_inv_partial(&w("cbBC")).is_err());
    }
}
