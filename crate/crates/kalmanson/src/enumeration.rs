//! Face counts of the complex of circular split systems.
//!
//! The non-trivial splits of `{1, …, n}` are the vertices of a simplicial
//! complex whose faces are the circular split systems; it has dimension
//! `d - 1` with `d = n(n-3)/2`, and one facet per circular ordering. This
//! module counts its faces three ways: direct enumeration of every face
//! ([`fvector_bruteforce`]), closed formulas for the vertex, edge,
//! triangle, ridge, and facet counts ([`fvector_formulas`]), and a
//! triangle census that classifies each triangle by the column types of
//! its system matrix ([`triangles_bruteforce`]).
//!
//! Counting arguments here run through surjection numbers
//! `M(n,k) = k!·S(n,k)` ([`surjections`]), with `S` the Stirling numbers
//! of the second kind.

use std::collections::{HashMap, HashSet};

use crate::error::Error;
use crate::ones::{is_circ1r, BinaryMatrix};
use crate::splits::{
    all_nontrivial_splits, validate_ground_set, CircularOrdering, Split,
};

/// Largest ground set for facet and triangle enumeration (the latter
/// walks all `C(f_0, 3)` triples of vertices — about 2.4M at the cap).
pub const MAX_ENUMERATE: usize = 9;

/// Largest ground set for full face enumeration: every nonempty subset of
/// every facet is visited, about 5.9M subsets at the cap.
pub const MAX_FACE_ENUMERATE: usize = 7;

/// Largest ground set for the closed formulas, set by `(n-1)!/2`
/// exceeding `u128` beyond it.
pub const MAX_FORMULA: usize = 35;

/// Stirling number of the second kind: partitions of an `n`-set into `k`
/// nonempty blocks. Exact while the value fits in `u128`; panics past
/// that rather than wrapping.
pub fn stirling2(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    // dp[j] = S(m, j) as m sweeps 0..=n.
    let mut dp = vec![0u128; k + 1];
    dp[0] = 1;
    for _m in 1..=n {
        for j in (1..=k).rev() {
            dp[j] = (j as u128)
                .checked_mul(dp[j])
                .and_then(|x| x.checked_add(dp[j - 1]))
                .expect("Stirling number exceeds u128");
        }
        dp[0] = 0;
    }
    dp[k]
}

/// `M(n,k) = k!·S(n,k)`: the number of surjections from an `n`-set onto a
/// `k`-set. Panics if the value exceeds `u128`.
pub fn surjections(n: usize, k: usize) -> u128 {
    let mut m = stirling2(n, k);
    for f in 2..=k as u128 {
        m = m.checked_mul(f).expect("surjection count exceeds u128");
    }
    m
}

/// `n!` in `u128`, panicking on overflow (fine through `n = 34`).
fn factorial(n: usize) -> u128 {
    (2..=n as u128).try_fold(1u128, u128::checked_mul).expect("factorial exceeds u128")
}

/// A maximal face: the circular ordering it corresponds to, together with
/// its vertex set — the `n(n-3)/2` non-trivial splits that are arcs of
/// that ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    ordering: CircularOrdering,
    vertices: Vec<Split>,
}

impl Facet {
    pub fn ordering(&self) -> &CircularOrdering {
        &self.ordering
    }

    /// The facet's vertices, sorted. Always `n(n-3)/2` of them.
    pub fn vertices(&self) -> &[Split] {
        &self.vertices
    }
}

/// All facets of the complex, one per canonical circular ordering; each
/// carries its arcs of block size `2..=n-2`, deduplicated by complement.
pub fn facets(n: usize) -> Result<Vec<Facet>, Error> {
    validate_ground_set(n)?;
    if n > MAX_ENUMERATE {
        return Err(Error::SizeGuard {
            what: "facet enumeration",
            min: 4,
            max: MAX_ENUMERATE,
            got: n,
        });
    }
    let per_facet = n * (n - 3) / 2;
    let mut out = Vec::with_capacity(CircularOrdering::count(n) as usize);
    for ordering in CircularOrdering::all(n) {
        let o = ordering.order();
        let mut vertices = std::collections::BTreeSet::new();
        for start in 0..n {
            for len in 2..=n - 2 {
                let block: Vec<usize> =
                    (0..len).map(|i| o[(start + i) % n]).collect();
                vertices.insert(
                    Split::new(n, &block)
                        .expect("an arc of length 2..=n-2 is non-trivial"),
                );
            }
        }
        let vertices: Vec<Split> = vertices.into_iter().collect();
        debug_assert_eq!(vertices.len(), per_facet);
        out.push(Facet { ordering, vertices });
    }
    Ok(out)
}

/// The face-count vector `(f_0, …, f_{d-1})` of the complex for one `n`:
/// `counts()[k]` is the number of faces with `k + 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    n: usize,
    counts: Vec<u64>,
}

impl FVector {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The counts `f_0, …, f_{d-1}` with `d = n(n-3)/2`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// The exact f-vector by enumerating every face: each face is a nonempty
/// subset of some facet's vertex set, so streaming all subsets of all
/// facets through a deduplicating set and bucketing by cardinality counts
/// everything. Memory and time are driven by the total face count, hence
/// the tight size guard.
pub fn fvector_bruteforce(n: usize) -> Result<FVector, Error> {
    validate_ground_set(n)?;
    if n > MAX_FACE_ENUMERATE {
        return Err(Error::SizeGuard {
            what: "face enumeration",
            min: 4,
            max: MAX_FACE_ENUMERATE,
            got: n,
        });
    }
    let d = n * (n - 3) / 2;
    let vertex_id: HashMap<Split, usize> = all_nontrivial_splits(n)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();

    let mut faces: HashSet<u64> = HashSet::new();
    // masks[sub] = union of the global vertex bits chosen by `sub`,
    // filled in subset order so each entry extends a smaller one.
    let mut masks = vec![0u64; 1 << d];
    for facet in facets(n)? {
        let bits: Vec<u64> = facet
            .vertices()
            .iter()
            .map(|s| 1u64 << vertex_id[s])
            .collect();
        for sub in 1usize..1 << d {
            let low = sub.trailing_zeros() as usize;
            masks[sub] = masks[sub & (sub - 1)] | bits[low];
            faces.insert(masks[sub]);
        }
    }

    let mut counts = vec![0u64; d];
    for mask in &faces {
        counts[mask.count_ones() as usize - 1] += 1;
    }
    Ok(FVector { n, counts })
}

/// The f-vector entries with known closed forms, in place: `f_0 =
/// 2^{n-1}-n-1`, `f_1 = C(f_0, 2)` (every pair of vertices is an edge),
/// `f_2` from [`triangles`], `f_{d-1} = (n-1)!/2` (one facet per circular
/// ordering), and for `n >= 5` the ridge count `f_{d-2} = (C(n,2)-n) ·
/// f_{d-1}` (each facet owns its ridges outright). Entries with no known
/// closed form are `None`. For `n = 4` the vector is complete: `(3, 3)`.
pub fn fvector_formulas(n: usize) -> Result<Vec<Option<u128>>, Error> {
    validate_ground_set(n)?;
    if n > MAX_FORMULA {
        return Err(Error::SizeGuard {
            what: "closed-form f-vector",
            min: 4,
            max: MAX_FORMULA,
            got: n,
        });
    }
    let d = n * (n - 3) / 2;
    let mut v = vec![None; d];
    let f0 = (1u128 << (n - 1)) - n as u128 - 1;
    let facet_count = factorial(n - 1) / 2;
    v[0] = Some(f0);
    v[d - 1] = Some(facet_count);
    // At n = 4 the edge entry *is* the facet entry, and the two formulas
    // agree there: C(3,2) = 3 = 3!/2.
    let edges = f0 * (f0 - 1) / 2;
    debug_assert!(v[1].is_none_or(|x| x == edges));
    v[1] = Some(edges);
    if n >= 5 {
        v[2] = Some(triangles(n));
        let pairs = (n * (n - 1) / 2) as u128;
        v[d - 2] = Some((pairs - n as u128) * facet_count);
    }
    Ok(v)
}

/// Closed form for the number of triangles (3-vertex faces). With
/// `t = n-1`:
///
/// ```text
///   -(1/6)(t-2)(t-1)t + 2(t-1)t[1 + M(t-2,2)]
///   - 5t·M(t-1,2) - 8t·M(t-1,3) - 2t·M(t-1,4)
///   + (19/6)M(t,3) + (55/6)M(t,4) + 7M(t,5) + 2M(t,6)
/// ```
///
/// The sequence starts `0, 90, 1755, 19950, 178878, 1409590, …` at
/// `n = 4` and matches [`triangles_bruteforce`] wherever the latter can
/// run. Panics for `n < 4`.
pub fn triangles(n: usize) -> u128 {
    assert!(n >= 4, "the complex needs at least 4 points, got {n}");
    let six_times = triangles_times_six(n, -1);
    assert!(six_times >= 0, "triangle count cannot be negative");
    six_times as u128 / 6
}

/// The same closed form as [`triangles`] but with the cubic term's sign
/// taken positive, which overcounts every entry by exactly
/// `t(t-1)(t-2)/3`. Retained as a regression guard for the sign of that
/// term: see the comparison tests. Panics for `n < 4`.
pub fn triangles_overcounted(n: usize) -> u128 {
    assert!(n >= 4, "the complex needs at least 4 points, got {n}");
    let six_times = triangles_times_six(n, 1);
    assert!(six_times >= 0, "triangle count cannot be negative");
    six_times as u128 / 6
}

/// Six times the triangle closed form, so every coefficient is an
/// integer; `cubic_sign` is the sign of the `(t-2)(t-1)t` term.
fn triangles_times_six(n: usize, cubic_sign: i128) -> i128 {
    let t = (n - 1) as i128;
    let m = |a: i128, b: usize| -> i128 {
        surjections(a as usize, b)
            .try_into()
            .expect("surjection count exceeds i128")
    };
    cubic_sign * (t - 2) * (t - 1) * t
        + 12 * (t - 1) * t * (1 + m(t - 2, 2))
        - 30 * t * m(t - 1, 2)
        - 48 * t * m(t - 1, 3)
        - 12 * t * m(t - 1, 4)
        + 19 * m(t, 3)
        + 55 * m(t, 4)
        + 42 * m(t, 5)
        + 12 * m(t, 6)
}

/// Column-type census of triangles. A triangle's system matrix (rows =
/// the three splits' indicator vectors) is classified by which of the
/// eight possible column vectors occur: `i` counts the distinct
/// weight-two columns present and `j` the distinct columns from
/// {weight-one, all-ones}. A circular triple never shows all three
/// weight-two columns nor all four of the other set, so `i <= 2` and
/// `j <= 3`, and the bucket totals sum to the triangle count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FijTable {
    n: usize,
    counts: [[u64; 4]; 3],
}

impl FijTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of triangles whose matrix shows exactly `i` distinct
    /// weight-two column types and `j` distinct types from the
    /// weight-one/all-ones set.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts[i][j]
    }

    /// Sum of all buckets; equals the triangle count.
    pub fn total(&self) -> u128 {
        self.counts.iter().flatten().map(|&c| c as u128).sum()
    }
}

/// Column types with exactly two ones among three rows.
const WEIGHT_TWO: [usize; 3] = [0b011, 0b101, 0b110];
/// Column types with exactly one one, plus the all-ones column.
const ONE_OR_ALL: [usize; 4] = [0b001, 0b010, 0b100, 0b111];

/// Counts the triangles by deciding, for every 3-subset of non-trivial
/// splits, whether the subset is a circular system — equivalently whether
/// its system matrix has the circular ones property — and classifies each
/// circular triple into its [`FijTable`] bucket.
///
/// The decision depends only on the multiset of column types (reordering
/// columns never changes the property), so results are memoized on the
/// eight column-type counts; that keeps the full census at the size cap
/// to a few thousand distinct decisions.
pub fn triangles_bruteforce(n: usize) -> Result<(u128, FijTable), Error> {
    validate_ground_set(n)?;
    if n > MAX_ENUMERATE {
        return Err(Error::SizeGuard {
            what: "triangle enumeration",
            min: 4,
            max: MAX_ENUMERATE,
            got: n,
        });
    }
    let blocks: Vec<u64> = all_nontrivial_splits(n)
        .iter()
        .map(|s| s.block_mask())
        .collect();
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut counts = [[0u64; 4]; 3];
    let mut total: u128 = 0;

    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            for c in b + 1..blocks.len() {
                let mut type_counts = [0u8; 8];
                for e in 0..n {
                    let t = (blocks[a] >> e & 1)
                        | (blocks[b] >> e & 1) << 1
                        | (blocks[c] >> e & 1) << 2;
                    type_counts[t as usize] += 1;
                }
                let key = type_counts
                    .iter()
                    .enumerate()
                    .fold(0u64, |k, (t, &c)| k | (c as u64) << (8 * t));
                let circular = *memo
                    .entry(key)
                    .or_insert_with(|| circular_from_type_counts(n, &type_counts));
                if !circular {
                    continue;
                }
                total += 1;
                let i = WEIGHT_TWO
                    .iter()
                    .filter(|&&t| type_counts[t] > 0)
                    .count();
                let j = ONE_OR_ALL
                    .iter()
                    .filter(|&&t| type_counts[t] > 0)
                    .count();
                assert!(i <= 2 && j <= 3, "circular triple in a forbidden bucket");
                counts[i][j] += 1;
            }
        }
    }
    Ok((total, FijTable { n, counts }))
}

/// Decides circularity of a 3-split system from its matrix's column-type
/// counts: build any matrix with those columns and test the circular
/// ones property. Splits never contain element 1 in their indicator
/// block, so the all-zero column type is present and placing it first
/// makes the test equal to plain consecutivity — but the circular test is
/// what the equivalence states, so it is what runs.
fn circular_from_type_counts(n: usize, type_counts: &[u8; 8]) -> bool {
    let mut rows = [0u64; 3];
    let mut col = 0;
    for (t, &c) in type_counts.iter().enumerate() {
        for _ in 0..c {
            for (r, row) in rows.iter_mut().enumerate() {
                *row |= ((t as u64 >> r) & 1) << col;
            }
            col += 1;
        }
    }
    let m = BinaryMatrix::from_bits(n, rows.to_vec())
        .expect("3 rows over n <= 9 columns");
    is_circ1r(&m)
}

/// Closed form for the `(i,j) = (0,3)` bucket of the triangle census —
/// triangles whose matrix shows no weight-two column and all three
/// weight-one columns plus the all-ones column-or-not split across the
/// four summands:
///
/// ```text
///   (1/6)[M(n-1,3) - 3(n-1)M(n-2,2) + 3(n-1)(n-2)]
/// + (1/6)[M(n-1,4) - 3(n-1)M(n-2,3) + 3(n-1)(n-2)M(n-3,2) - (n-1)(n-2)(n-3)]
/// + (1/2)[M(n-1,3) - (n-1)M(n-2,2)]
/// + (1/2)[M(n-1,4) - (n-1)M(n-2,3)]
/// ```
///
/// Panics for `n < 4`.
pub fn count_f03(n: usize) -> u128 {
    assert!(n >= 4, "the complex needs at least 4 points, got {n}");
    let v = n as i128;
    let m = |a: i128, b: usize| -> i128 {
        if a < 0 {
            return 0;
        }
        surjections(a as usize, b)
            .try_into()
            .expect("surjection count exceeds i128")
    };
    let t1 = m(v - 1, 3) - 3 * (v - 1) * m(v - 2, 2) + 3 * (v - 1) * (v - 2);
    let t2 = m(v - 1, 4) - 3 * (v - 1) * m(v - 2, 3)
        + 3 * (v - 1) * (v - 2) * m(v - 3, 2)
        - (v - 1) * (v - 2) * (v - 3);
    let t3 = m(v - 1, 3) - (v - 1) * m(v - 2, 2);
    let t4 = m(v - 1, 4) - (v - 1) * m(v - 2, 3);
    let six_times = t1 + t2 + 3 * t3 + 3 * t4;
    assert!(six_times >= 0 && six_times % 6 == 0, "bucket count must be a nonnegative integer");
    six_times as u128 / 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    /// Surjections counted the slow way: all maps `n -> k`, keep the onto
    /// ones.
    fn surjections_direct(n: usize, k: usize) -> u128 {
        if k == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let mut count = 0u128;
        for code in 0..k.pow(n as u32) {
            let mut hit = vec![false; k];
            let mut c = code;
            for _ in 0..n {
                hit[c % k] = true;
                c /= k;
            }
            if hit.iter().all(|&h| h) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn stirling_numbers() {
        assert_eq!(stirling2(3, 2), 3);
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling2(5, 3), 25);
        assert_eq!(stirling2(0, 0), 1);
        for n in 1..8 {
            assert_eq!(stirling2(n, n), 1);
            assert_eq!(stirling2(n, 0), 0);
            assert_eq!(stirling2(n, n + 1), 0);
        }
        // Recurrence S(n,k) = k·S(n-1,k) + S(n-1,k-1).
        for n in 1..10usize {
            for k in 1..=n {
                assert_eq!(
                    stirling2(n, k),
                    k as u128 * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
                );
            }
        }
    }

    #[test]
    fn surjection_numbers() {
        assert_eq!(surjections(3, 2), 6);
        assert_eq!(surjections(2, 3), 0);
        for n in 1..7 {
            assert_eq!(surjections(n, 1), 1);
        }
        for n in 0..6 {
            for k in 0..6 {
                assert_eq!(
                    surjections(n, k),
                    surjections_direct(n, k),
                    "M({n},{k})"
                );
            }
        }
    }

    #[test]
    fn facet_census() {
        for (n, facet_count, per_facet) in [(4, 3, 2), (5, 12, 5), (6, 60, 9)] {
            let fs = facets(n).unwrap();
            assert_eq!(fs.len(), facet_count);
            for f in &fs {
                assert_eq!(f.vertices().len(), per_facet);
                for s in f.vertices() {
                    assert!(!s.is_trivial());
                    assert!(f.ordering().is_arc(s), "every vertex is an arc");
                }
            }
        }
        assert!(matches!(facets(3), Err(Error::InvalidSplit(_)) | Err(_)));
        assert!(matches!(facets(10), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn face_counts_small() {
        assert_eq!(fvector_bruteforce(4).unwrap().counts(), &[3, 3]);
        assert_eq!(
            fvector_bruteforce(5).unwrap().counts(),
            &[10, 45, 90, 60, 12]
        );
        assert_eq!(
            fvector_bruteforce(6).unwrap().counts(),
            &[25, 300, 1755, 4725, 6390, 4860, 2160, 540, 60]
        );
        assert!(matches!(
            fvector_bruteforce(8),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for n in 4..=6 {
            let brute = fvector_bruteforce(n).unwrap();
            let formulas = fvector_formulas(n).unwrap();
            assert_eq!(formulas.len(), brute.counts().len());
            for (k, entry) in formulas.iter().enumerate() {
                if let Some(v) = entry {
                    assert_eq!(*v, brute.counts()[k] as u128, "f_{k} at n={n}");
                }
            }
        }
    }

    #[test]
    fn closed_forms_for_larger_ground_sets() {
        // n = 5 is fully determined by the closed forms.
        assert_eq!(
            fvector_formulas(5).unwrap(),
            vec![Some(10), Some(45), Some(90), Some(60), Some(12)]
        );
        let f8 = fvector_formulas(8).unwrap();
        let d = 8 * 5 / 2;
        assert_eq!(f8.len(), d);
        assert_eq!(f8[0], Some(119));
        assert_eq!(f8[1], Some(7021));
        assert_eq!(f8[2], Some(178878));
        assert_eq!(f8[d - 2], Some(50400));
        assert_eq!(f8[d - 1], Some(2520));
        assert!(f8[3..d - 2].iter().all(Option::is_none));

        let f9 = fvector_formulas(9).unwrap();
        let d = 9 * 6 / 2;
        assert_eq!(f9[0], Some(246));
        assert_eq!(f9[1], Some(30135));
        assert_eq!(f9[2], Some(1409590));
        assert_eq!(f9[d - 2], Some(544320));
        assert_eq!(f9[d - 1], Some(20160));

        assert!(matches!(
            fvector_formulas(36),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn triangle_sequence() {
        let expected: [u128; 10] = [
            0,
            90,
            1755,
            19950,
            178878,
            1409590,
            10270585,
            71110930,
            475443364,
            3100707610,
        ];
        for (k, &want) in expected.iter().enumerate() {
            assert_eq!(triangles(k + 4), want, "n = {}", k + 4);
        }
    }

    #[test]
    fn sign_of_the_cubic_term_matters() {
        assert_eq!(triangles_overcounted(4), 2);
        assert_eq!(triangles_overcounted(5), 98);
        assert_eq!(triangles_overcounted(6), 1775);
        for n in 4..=13 {
            let t = (n - 1) as u128;
            assert_eq!(
                triangles_overcounted(n) - triangles(n),
                t * (t - 1) * (t - 2) / 3,
                "overcount gap at n = {n}"
            );
        }
    }

    #[test]
    fn triangle_enumeration_agrees_with_the_formula() {
        for n in 4..=7 {
            let (count, table) = triangles_bruteforce(n).unwrap();
            assert_eq!(count, triangles(n), "n = {n}");
            assert_eq!(table.total(), count, "buckets must sum up, n = {n}");
        }
        assert!(matches!(
            triangles_bruteforce(10),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn f03_bucket_matches_its_closed_form() {
        for n in 4..=7 {
            let (_, table) = triangles_bruteforce(n).unwrap();
            assert_eq!(table.get(0, 3) as u128, count_f03(n), "n = {n}");
        }
        assert_eq!(count_f03(4), 0);
        assert_eq!(count_f03(5), 6);
    }

    #[test]
    fn ridges_are_owned_by_single_facets() {
        // Dropping any one vertex from a facet yields a face belonging to
        // that facet alone; this is what makes the ridge count formula
        // (C(n,2) - n) · f_{d-1} exact.
        for n in [5usize, 6] {
            let d = n * (n - 3) / 2;
            let mut seen: HashMap<Vec<Split>, usize> = HashMap::new();
            for f in facets(n).unwrap() {
                for skip in 0..d {
                    let mut ridge = f.vertices().to_vec();
                    ridge.remove(skip);
                    *seen.entry(ridge).or_insert(0) += 1;
                }
            }
            assert!(seen.values().all(|&c| c == 1), "shared ridge at n = {n}");
            let facet_count = (factorial(n - 1) / 2) as usize;
            assert_eq!(seen.len(), (n * (n - 1) / 2 - n) * facet_count);
        }
    }

    #[test]
    fn every_vertex_pair_is_an_edge() {
        for n in [5usize, 6] {
            let f = fvector_bruteforce(n).unwrap();
            let f0 = f.counts()[0];
            assert_eq!(f.counts()[1], f0 * (f0 - 1) / 2, "n = {n}");
        }
    }
}
