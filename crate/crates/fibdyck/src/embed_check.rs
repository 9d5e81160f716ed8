//! Decision procedure for embedding an irreducible shift of finite type
//! into the Fibonacci-Dyck shift: entropy bounds plus per-period orbit
//! count comparisons against reference tables derived from enumeration
//! and from the zeta functions.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::periodic::{self, Sign};
use crate::series::{self, ZetaKind};

/// Edge shift of a nonnegative integer adjacency matrix; entry (i, j)
/// counts parallel edges from vertex i to vertex j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SftGraph {
    adjacency: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct MatrixInput {
    n: usize,
    adj: Vec<u64>,
}

impl SftGraph {
    pub fn new(adjacency: Vec<Vec<u64>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return Err(Error::Parse("empty adjacency matrix".into()));
        }
        if adjacency.iter().any(|row| row.len() != n) {
            return Err(Error::Parse("adjacency matrix is not square".into()));
        }
        Ok(SftGraph { adjacency })
    }

    /// Parse the matrix input format: {"n": size, "adj": row-major entries}.
    pub fn from_json(text: &str) -> Result<Self> {
        let input: MatrixInput =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if input.adj.len() != input.n * input.n {
            return Err(Error::Parse(format!(
                "expected {} entries for an {}x{} matrix, got {}",
                input.n * input.n,
                input.n,
                input.n,
                input.adj.len()
            )));
        }
        let adjacency = input
            .adj
            .chunks(input.n)
            .map(|row| row.to_vec())
            .collect();
        SftGraph::new(adjacency)
    }

    /// Vertex shift with forbidden words over an n-letter alphabet,
    /// converted to an edge shift by the 2-block construction. Supports
    /// forbidden words of length at most 3.
    pub fn from_forbidden_words(alphabet: usize, forbidden: &[Vec<u8>]) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::Parse("empty alphabet".into()));
        }
        if forbidden.iter().any(|w| w.is_empty() || w.len() > 3) {
            return Err(Error::Parse(
                "forbidden words must have length between 1 and 3".into(),
            ));
        }
        if forbidden
            .iter()
            .any(|w| w.iter().any(|&s| s as usize >= alphabet))
        {
            return Err(Error::Parse("forbidden word uses a letter outside the alphabet".into()));
        }
        let bad = |w: &[u8]| forbidden.iter().any(|f| f.as_slice() == w);
        // Vertices are the allowed 2-blocks; an edge (a,b) -> (b,c) exists
        // when abc introduces no forbidden factor.
        let mut pairs = Vec::new();
        for a in 0..alphabet as u8 {
            for b in 0..alphabet as u8 {
                if !bad(&[a]) && !bad(&[b]) && !bad(&[a, b]) {
                    pairs.push((a, b));
                }
            }
        }
        if pairs.is_empty() {
            return Err(Error::Parse("every 2-block is forbidden".into()));
        }
        let n = pairs.len();
        let mut adjacency = vec![vec![0u64; n]; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(b2, c)) in pairs.iter().enumerate() {
                if b == b2 && !bad(&[b, c]) && !bad(&[a, b, c]) {
                    adjacency[i][j] = 1;
                }
            }
        }
        SftGraph::new(adjacency)
    }

    pub fn size(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[Vec<u64>] {
        &self.adjacency
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let adjacency = (0..n)
            .map(|i| (0..n).map(|j| self.adjacency[j][i]).collect())
            .collect();
        SftGraph { adjacency }
    }

    fn reachable(&self, start: usize, reversed: bool) -> Vec<bool> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let hit = if reversed {
                    self.adjacency[w][v] > 0
                } else {
                    self.adjacency[v][w] > 0
                };
                if hit && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Strong connectivity with at least one edge.
    pub fn is_irreducible(&self) -> bool {
        let has_edge = self
            .adjacency
            .iter()
            .any(|row| row.iter().any(|&e| e > 0));
        has_edge
            && self.reachable(0, false).iter().all(|&r| r)
            && self.reachable(0, true).iter().all(|&r| r)
    }

    /// trace(A^k) for k = 1..=k_max, exact.
    pub fn trace_powers(&self, k_max: usize) -> Vec<BigInt> {
        let n = self.size();
        let base: Vec<Vec<BigInt>> = self
            .adjacency
            .iter()
            .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        let mut power = base.clone();
        let mut out = Vec::with_capacity(k_max);
        for step in 0..k_max {
            if step > 0 {
                let mut next = vec![vec![BigInt::zero(); n]; n];
                for i in 0..n {
                    for l in 0..n {
                        if power[i][l].is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            if !base[l][j].is_zero() {
                                next[i][j] += &power[i][l] * &base[l][j];
                            }
                        }
                    }
                }
                power = next;
            }
            let mut tr = BigInt::zero();
            for i in 0..n {
                tr += &power[i][i];
            }
            out.push(tr);
        }
        out
    }
}

/// Certified bracket around the entropy (natural log of the spectral
/// radius) from Collatz-Wielandt bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyBracket {
    pub lower: f64,
    pub upper: f64,
}

impl EntropyBracket {
    pub fn value(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Entropy of the edge shift: ln of the Perron root of the adjacency
/// matrix. Power iteration runs on A + I so that periodic matrices
/// converge; for positive vectors x the ratios (Mx)_i / x_i bracket the
/// Perron root of M, and the brackets tighten to relative width `tol`.
pub fn sft_entropy(g: &SftGraph, tol: f64) -> Result<EntropyBracket> {
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let n = g.size();
    let m = |x: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let mut acc = x[i];
                for j in 0..n {
                    acc += g.adjacency[i][j] as f64 * x[j];
                }
                acc
            })
            .collect()
    };
    let mut x = vec![1.0; n];
    let mut best_lo = f64::NEG_INFINITY;
    let mut best_hi = f64::INFINITY;
    for _ in 0..200_000 {
        let y = m(&x);
        let ratios: Vec<f64> = (0..n).map(|i| y[i] / x[i]).collect();
        let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        best_lo = best_lo.max(lo);
        best_hi = best_hi.min(hi);
        if best_hi - best_lo <= tol * best_hi {
            break;
        }
        let norm = y.iter().cloned().fold(0.0f64, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    // Perron root of A is the bracket shifted by the identity.
    Ok(EntropyBracket {
        lower: (best_lo - 1.0).max(f64::MIN_POSITIVE).ln(),
        upper: (best_hi - 1.0).ln(),
    })
}

/// Orbit counts of the edge shift per period: Moebius inversion of the
/// closed-walk counts trace(A^k).
pub fn sft_orbit_counts(g: &SftGraph, k_max: usize) -> Result<Vec<BigInt>> {
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    periodic::mobius_orbits(&g.trace_powers(k_max))
}

/// Reference orbit counts of the Fibonacci-Dyck shift per period and
/// multiplier class, indexed by k - 1.
#[derive(Clone, Debug)]
pub struct FdReference {
    pub k_max: usize,
    pub enum_limit: usize,
    /// Neutral orbits.
    pub neutral: Vec<BigInt>,
    /// Orbits with the zero-bracket multiplier, both signs.
    pub alpha0: Vec<BigInt>,
    /// Orbits with the one-bracket multiplier, both signs.
    pub alpha1: Vec<BigInt>,
    /// Orbits with positive multiplier.
    pub plus: Vec<BigInt>,
    /// All orbits.
    pub total: Vec<BigInt>,
}

fn enumerated_class_counts(k: usize) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
    let t = periodic::orbit_table(k);
    let both = |necklace: &str| {
        BigInt::from(
            t.orbit_count(Sign::Negative, necklace) + t.orbit_count(Sign::Positive, necklace),
        )
    };
    let plus: u64 = t
        .rows
        .iter()
        .filter(|((sign, _), _)| *sign == Sign::Positive)
        .map(|(_, &c)| c)
        .sum();
    (
        BigInt::from(t.neutral_orbits),
        both("0"),
        both("1"),
        BigInt::from(plus),
        BigInt::from(t.total_orbits()),
    )
}

/// Build the reference table: enumeration supplies k <= enum_limit, the
/// zeta functions supply the rest, and the overlap must agree exactly.
pub fn fd_reference_counts(k_max: usize, enum_limit: usize) -> Result<FdReference> {
    assert!(k_max >= 1);
    let neutral_pts = series::point_counts(ZetaKind::Neutral, k_max)?;
    let alpha0_pts = series::point_counts(ZetaKind::Alpha0, k_max)?;
    let alpha1_pts = series::point_counts(ZetaKind::Alpha1, k_max)?;
    let plus_pts = series::point_counts(ZetaKind::Plus, k_max)?;
    let total_pts = series::point_counts(ZetaKind::Full, k_max)?;

    let neutral = periodic::mobius_orbits(&neutral_pts)?;
    let alpha0 = periodic::mobius_orbits(&alpha0_pts)?;
    let alpha1 = periodic::mobius_orbits(&alpha1_pts)?;
    let plus = periodic::mobius_orbits(&plus_pts)?;
    let total = periodic::mobius_orbits(&total_pts)?;

    for k in 1..=k_max {
        let half = (&total[k - 1] - &neutral[k - 1]) / BigInt::from(2);
        if half != plus[k - 1] {
            return Err(Error::ConsistencyFailure(format!(
                "positive-multiplier orbit count at period {k}: {} from its zeta, {} from halving",
                plus[k - 1],
                half
            )));
        }
    }

    for k in 1..=enum_limit.min(k_max) {
        let (n, a0, a1, p, t) = enumerated_class_counts(k);
        for (name, zeta_side, enum_side) in [
            ("neutral", &neutral[k - 1], &n),
            ("alpha0", &alpha0[k - 1], &a0),
            ("alpha1", &alpha1[k - 1], &a1),
            ("plus", &plus[k - 1], &p),
            ("total", &total[k - 1], &t),
        ] {
            if zeta_side != enum_side {
                return Err(Error::ConsistencyFailure(format!(
                    "{name} orbit count at period {k}: zeta gives {zeta_side}, enumeration gives {enum_side}"
                )));
            }
        }
    }

    Ok(FdReference {
        k_max,
        enum_limit,
        neutral,
        alpha0,
        alpha1,
        plus,
        total,
    })
}

/// The three embedding conditions: each pairs a per-period orbit bound
/// (a disjoint union, so cardinalities add) with a strict entropy bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Neutral orbits plus zero-bracket-multiplier orbits.
    A,
    /// Neutral orbits plus one-bracket-multiplier orbits.
    B,
    /// Neutral orbits plus all positive-multiplier orbits.
    C,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Condition::A, Condition::B, Condition::C];

    pub fn name(self) -> &'static str {
        match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::C => "c",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyStatus {
    /// The whole certified bracket lies strictly below the threshold.
    Below,
    /// The whole certified bracket lies at or above the threshold.
    NotBelow,
    /// The bracket straddles the threshold; tolerance is insufficient.
    Straddles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    HoldsToHorizon,
    FailsOrbitAt(usize),
    FailsEntropy,
    InconclusiveEntropy,
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub condition: Condition,
    pub entropy_threshold: f64,
    pub entropy_status: EntropyStatus,
    pub first_orbit_violation: Option<usize>,
    pub status: ConditionStatus,
    /// Per-period reference bound card O_k(bound set), indexed by k - 1.
    pub bounds: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    /// Some condition holds: entropy strictly below and orbit bounds
    /// verified for every k up to the horizon.
    EmbeddableToHorizon,
    /// Every condition is definitively refuted.
    NotEmbeddable,
    /// Neither established nor refuted (entropy bracket too wide).
    Inconclusive,
}

impl Overall {
    pub fn exit_code(self) -> i32 {
        match self {
            Overall::EmbeddableToHorizon => 0,
            Overall::NotEmbeddable => 1,
            Overall::Inconclusive => 2,
        }
    }

    pub fn describe(self, k_max: usize) -> String {
        match self {
            Overall::EmbeddableToHorizon => format!("embeddable (holds to horizon {k_max})"),
            Overall::NotEmbeddable => "not-embeddable".into(),
            Overall::Inconclusive => "inconclusive".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddingVerdict {
    pub k_max: usize,
    pub entropy: EntropyBracket,
    /// Margins of the two entropy thresholds over the measured entropy.
    pub margin_single: f64,
    pub margin_combined: f64,
    pub sft_orbits: Vec<BigInt>,
    pub reference: FdReference,
    pub conditions: Vec<ConditionReport>,
    pub overall: Overall,
}

/// Evaluate the embedding conditions for an irreducible edge shift.
pub fn check_embedding(g: &SftGraph, k_max: usize, enum_limit: usize) -> Result<EmbeddingVerdict> {
    let entropy = sft_entropy(g, 1e-12)?;
    let sft_orbits = sft_orbit_counts(g, k_max)?;
    let reference = fd_reference_counts(k_max, enum_limit)?;
    let (h_single, h_combined) = series::entropy_constants();

    let mut conditions = Vec::new();
    for cond in Condition::ALL {
        let (threshold, class): (f64, &[BigInt]) = match cond {
            Condition::A => (h_single, &reference.alpha0),
            Condition::B => (h_single, &reference.alpha1),
            Condition::C => (h_combined, &reference.plus),
        };
        let bounds: Vec<BigInt> = (0..k_max)
            .map(|i| &reference.neutral[i] + &class[i])
            .collect();
        let first_orbit_violation = (1..=k_max).find(|&k| sft_orbits[k - 1] > bounds[k - 1]);
        let entropy_status = if entropy.upper < threshold {
            EntropyStatus::Below
        } else if entropy.lower >= threshold {
            EntropyStatus::NotBelow
        } else {
            EntropyStatus::Straddles
        };
        let status = match (first_orbit_violation, entropy_status) {
            (Some(k), _) => ConditionStatus::FailsOrbitAt(k),
            (None, EntropyStatus::NotBelow) => ConditionStatus::FailsEntropy,
            (None, EntropyStatus::Below) => ConditionStatus::HoldsToHorizon,
            (None, EntropyStatus::Straddles) => ConditionStatus::InconclusiveEntropy,
        };
        conditions.push(ConditionReport {
            condition: cond,
            entropy_threshold: threshold,
            entropy_status,
            first_orbit_violation,
            status,
            bounds,
        });
    }

    let overall = if conditions
        .iter()
        .any(|c| c.status == ConditionStatus::HoldsToHorizon)
    {
        Overall::EmbeddableToHorizon
    } else if conditions.iter().all(|c| {
        matches!(
            c.status,
            ConditionStatus::FailsOrbitAt(_) | ConditionStatus::FailsEntropy
        )
    }) {
        Overall::NotEmbeddable
    } else {
        Overall::Inconclusive
    };

    let h = entropy.value();
    Ok(EmbeddingVerdict {
        k_max,
        entropy,
        margin_single: h_single - h,
        margin_combined: h_combined - h,
        sft_orbits,
        reference,
        conditions,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn graph(rows: &[&[u64]]) -> SftGraph {
        SftGraph::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn entropy_matches_closed_forms() {
        let full2 = graph(&[&[2]]);
        let h = sft_entropy(&full2, 1e-12).unwrap();
        assert!((h.value() - 2f64.ln()).abs() < 1e-9);

        let golden = graph(&[&[1, 1], &[1, 0]]);
        let h = sft_entropy(&golden, 1e-12).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((h.value() - phi.ln()).abs() < 1e-9);
        assert!(h.lower <= phi.ln() && phi.ln() <= h.upper);

        let full3 = graph(&[&[3]]);
        let h = sft_entropy(&full3, 1e-12).unwrap();
        assert!((h.value() - 3f64.ln()).abs() < 1e-9);

        let cycle = graph(&[&[0, 1], &[1, 0]]);
        let h = sft_entropy(&cycle, 1e-12).unwrap();
        assert!(h.value().abs() < 1e-9);
    }

    #[test]
    fn irreducibility_is_checked() {
        let no_edges = graph(&[&[0]]);
        assert!(matches!(
            sft_entropy(&no_edges, 1e-12),
            Err(Error::NotIrreducible)
        ));
        let disconnected = graph(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            sft_orbit_counts(&disconnected, 4),
            Err(Error::NotIrreducible)
        ));
        let one_way = graph(&[&[1, 1], &[0, 1]]);
        assert!(!one_way.is_irreducible());
    }

    #[test]
    fn orbit_counts_match_necklace_values() {
        let full2 = graph(&[&[2]]);
        assert_eq!(ints(&sft_orbit_counts(&full2, 4).unwrap()), [2, 1, 2, 3]);

        let golden = graph(&[&[1, 1], &[1, 0]]);
        let traces = golden.trace_powers(5);
        assert_eq!(ints(&traces), [1, 3, 4, 7, 11]);
        assert_eq!(
            ints(&sft_orbit_counts(&golden, 5).unwrap()),
            [1, 1, 1, 1, 2]
        );
    }

    #[test]
    fn reference_counts_agree_between_enumeration_and_zeta() {
        let fd = fd_reference_counts(14, 8).unwrap();
        assert_eq!(fd.alpha0[0].to_i64().unwrap(), 2);
        assert_eq!(fd.neutral[1].to_i64().unwrap(), 3);
        assert_eq!(fd.alpha0[4].to_i64().unwrap(), 18);
        assert_eq!(fd.alpha1[3].to_i64().unwrap(), 6);
        assert_eq!(fd.plus[0].to_i64().unwrap(), 1);
        assert_eq!(fd.total[1].to_i64().unwrap(), 5);
    }

    #[test]
    fn full_three_shift_is_not_embeddable() {
        let g = graph(&[&[3]]);
        let verdict = check_embedding(&g, 12, 6).unwrap();
        assert_eq!(verdict.overall, Overall::NotEmbeddable);
        assert_eq!(verdict.overall.exit_code(), 1);
        for c in &verdict.conditions {
            assert_ne!(c.status, ConditionStatus::HoldsToHorizon);
        }
    }

    #[test]
    fn golden_mean_shift_embeds_to_horizon() {
        let g = graph(&[&[1, 1], &[1, 0]]);
        let verdict = check_embedding(&g, 12, 6).unwrap();
        assert_eq!(verdict.overall, Overall::EmbeddableToHorizon);
        assert_eq!(verdict.overall.exit_code(), 0);
        let a = &verdict.conditions[0];
        assert_eq!(a.status, ConditionStatus::HoldsToHorizon);
        // The one-bracket bound already fails at the fixed point.
        let b = &verdict.conditions[1];
        assert_eq!(b.status, ConditionStatus::FailsOrbitAt(1));
        assert!((verdict.entropy.value() - 0.481212).abs() < 1e-6);
    }

    #[test]
    fn verdict_is_transpose_invariant() {
        for rows in [
            vec![vec![1u64, 1], vec![1, 0]],
            vec![vec![0, 2], vec![1, 0]],
            vec![vec![3]],
        ] {
            let g = SftGraph::new(rows).unwrap();
            let t = g.transpose();
            let v1 = check_embedding(&g, 10, 5).unwrap();
            let v2 = check_embedding(&t, 10, 5).unwrap();
            assert_eq!(v1.overall, v2.overall);
            assert_eq!(v1.sft_orbits, v2.sft_orbits);
            let s1: Vec<_> = v1.conditions.iter().map(|c| c.status).collect();
            let s2: Vec<_> = v2.conditions.iter().map(|c| c.status).collect();
            assert_eq!(s1, s2);
            assert!((v1.entropy.value() - v2.entropy.value()).abs() < 1e-9);
        }
    }

    #[test]
    fn forbidden_word_construction_matches_known_shifts() {
        // Golden mean shift: binary, no "11" factor.
        let g = SftGraph::from_forbidden_words(2, &[vec![1, 1]]).unwrap();
        assert!(g.is_irreducible());
        let h = sft_entropy(&g, 1e-12).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((h.value() - phi.ln()).abs() < 1e-9);
        let direct = graph(&[&[1, 1], &[1, 0]]);
        assert_eq!(
            sft_orbit_counts(&g, 8).unwrap(),
            sft_orbit_counts(&direct, 8).unwrap()
        );

        // Full 2-shift: no forbidden words at all.
        let g = SftGraph::from_forbidden_words(2, &[]).unwrap();
        assert_eq!(ints(&sft_orbit_counts(&g, 4).unwrap()), [2, 1, 2, 3]);
    }

    #[test]
    fn matrix_json_round_trips() {
        let g = SftGraph::from_json(r#"{"n": 2, "adj": [1, 1, 1, 0]}"#).unwrap();
        assert_eq!(g.adjacency(), &[vec![1, 1], vec![1, 0]]);
        assert!(SftGraph::from_json(r#"{"n": 2, "adj": [1, 1]}"#).is_err());
        assert!(SftGraph::from_json("not json").is_err());
    }
}
