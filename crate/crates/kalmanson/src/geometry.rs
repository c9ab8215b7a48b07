//! Exact-rational geometry of circular split metrics.
//!
//! A distance matrix satisfies the Kalmanson conditions when
//! `max(d_ij + d_kl, d_il + d_jk) <= d_ik + d_jl` for all quadruples
//! `i < j < k < l`. The set of such matrices is a polyhedron: an
//! n-dimensional lineality space spanned by the trivial-split metrics
//! `E^(i)`, plus a pointed cone of dimension `n(n-3)/2` ruled by the split
//! metrics of arcs of the circle `(1, …, n)` — the matrices `V^(i)`
//! (initial arcs) and `V^(i,j)` (interior arcs). Together those
//! `C(n,2)` matrices form a basis, so every distance matrix decomposes
//! uniquely over them; membership in the permuted cone for an ordering σ
//! is exactly "all arc coefficients are nonnegative".
//!
//! This module provides the condition scan ([`kalmanson_violation`]), the
//! basis matrices ([`ray_matrix`]), split metrics and their inverses, the
//! exact decomposition ([`decompose`]), permuted-ordering recognition
//! ([`recognize`]), and the travelling-salesman consequence: on a
//! recognized matrix the recovered circular ordering is an optimal tour
//! ([`tsp_kalmanson`], checked against [`tsp_bruteforce`]).
//!
//! All arithmetic is exact: entries are arbitrary-precision rationals, and
//! every comparison is an equality/inequality of exact values.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::Error;
use crate::splits::{validate_ground_set, CircularOrdering, Split};

/// Largest ground set accepted by [`recognize`]: the scan over
/// `(n-1)!/2` canonical orderings is exponential, and past this point a
/// purpose-built recognition algorithm would be required.
pub const MAX_RECOGNIZE: usize = 10;

/// Largest ground set accepted by [`tsp_bruteforce`] (`11!/2` tours).
pub const MAX_TSP_BRUTEFORCE: usize = 12;

/// A symmetric matrix of nonnegative exact rationals with zero diagonal.
///
/// The triangle inequality is *not* required; call
/// [`Metric::triangle_violation`] where it matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    n: usize,
    d: Vec<Vec<BigRational>>,
}

impl Metric {
    /// Validates and wraps an `n x n` matrix of rationals.
    pub fn new(d: Vec<Vec<BigRational>>) -> Result<Metric, Error> {
        let n = d.len();
        if n == 0 {
            return Err(Error::InvalidMetric("matrix is empty".into()));
        }
        for (i, row) in d.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMetric(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if !d[i][i].is_zero() {
                return Err(Error::InvalidMetric(format!(
                    "diagonal entry ({r},{r}) is {v}, expected 0",
                    r = i + 1,
                    v = d[i][i]
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if e.is_negative() {
                    return Err(Error::InvalidMetric(format!(
                        "entry ({},{}) is negative: {e}",
                        i + 1,
                        j + 1
                    )));
                }
                if d[i][j] != d[j][i] {
                    return Err(Error::InvalidMetric(format!(
                        "asymmetric at ({},{}): {} vs {}",
                        i + 1,
                        j + 1,
                        d[i][j],
                        d[j][i]
                    )));
                }
            }
        }
        Ok(Metric { n, d })
    }

    /// Builds a metric from a function on unordered pairs `1 <= i < j <= n`;
    /// the diagonal is zero and symmetry is by construction. Values are
    /// still checked for nonnegativity.
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Result<Metric, Error> {
        let mut d = vec![vec![BigRational::zero(); n]; n];
        for i in 1..=n {
            for j in i + 1..=n {
                let v = f(i, j);
                d[i - 1][j - 1] = v.clone();
                d[j - 1][i - 1] = v;
            }
        }
        Metric::new(d)
    }

    /// The all-zero metric.
    pub fn zero(n: usize) -> Metric {
        Metric {
            n,
            d: vec![vec![BigRational::zero(); n]; n],
        }
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Distance between points `i` and `j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.d[i - 1][j - 1]
    }

    /// The raw rows (0-based indexing).
    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.d
    }

    /// Parses the text format: one row per line, entries separated by
    /// whitespace, each an integer, a decimal, or a `p/q` rational. Blank
    /// lines are ignored. The matrix must validate per [`Metric::new`].
    pub fn parse_text(text: &str) -> Result<Metric, Error> {
        let mut rows = Vec::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<BigRational>, Error> =
                line.split_whitespace().map(parse_rational).collect();
            rows.push(row?);
        }
        Metric::new(rows)
    }

    /// Emits the text format with `p/q` for non-integer entries.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.d {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// First triple `i < j < k` (1-based) on which the triangle inequality
    /// fails in any of its three orientations, or `None` if this is a true
    /// metric up to the triangle inequality.
    pub fn triangle_violation(&self) -> Option<[usize; 3]> {
        let d = |i: usize, j: usize| self.get(i, j);
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                for k in j + 1..=self.n {
                    let violated = d(i, k) > &(d(i, j) + d(j, k))
                        || d(i, j) > &(d(i, k) + d(k, j))
                        || d(j, k) > &(d(j, i) + d(i, k));
                    if violated {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses an exact rational from `p/q`, decimal, or integer notation.
pub fn parse_rational(token: &str) -> Result<BigRational, Error> {
    let bad = |why: &str| Error::Parse(format!("bad rational {token:?}: {why}"));
    if let Some((num, den)) = token.split_once('/') {
        let p: BigInt = num.parse().map_err(|_| bad("numerator"))?;
        let q: BigInt = den.parse().map_err(|_| bad("denominator"))?;
        if q.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = token.split_once('.') {
        let (sign, int) = match int.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int.strip_prefix('+').unwrap_or(int)),
        };
        if !int.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (int.is_empty() && frac.is_empty())
        {
            return Err(bad("malformed decimal"));
        }
        let digits: BigInt = format!("{int}{frac}")
            .parse()
            .unwrap_or_else(|_| BigInt::zero());
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(BigInt::from(sign) * digits, den));
    }
    let p: BigInt = token.parse().map_err(|_| bad("not an integer"))?;
    Ok(BigRational::from(p))
}

/// The split metric of `s`: distance 1 between separated points, 0 within
/// a side. Trivial splits are allowed; their metrics span the lineality
/// space of the Kalmanson polyhedron.
pub fn split_metric(s: &Split) -> Metric {
    let one = BigRational::one();
    Metric::from_fn(s.n(), |i, j| {
        if s.separates(i, j) {
            one.clone()
        } else {
            BigRational::zero()
        }
    })
    .expect("0/1 entries form a valid metric")
}

/// Inverse of [`split_metric`]: recovers the split from its metric.
/// Rejects matrices that are not of split-metric form (entries other than
/// 0/1, no separation at all, or distances inconsistent with a
/// bipartition).
pub fn split_from_metric(m: &Metric) -> Result<Split, Error> {
    let one = BigRational::one();
    let mut block = Vec::new();
    for x in 2..=m.n() {
        let e = m.get(1, x);
        if e.is_zero() {
            continue;
        }
        if *e != one {
            return Err(Error::InvalidMetric(format!(
                "entry (1,{x}) is {e}, expected 0 or 1"
            )));
        }
        block.push(x);
    }
    if block.is_empty() {
        return Err(Error::InvalidMetric(
            "no point is separated from point 1; not a split metric".into(),
        ));
    }
    let s = Split::new(m.n(), &block)?;
    if *m != split_metric(&s) {
        return Err(Error::InvalidMetric(
            "distances are inconsistent with any bipartition".into(),
        ));
    }
    Ok(s)
}

/// Which basis matrix of the standard Kalmanson polyhedron to realize.
///
/// `E { i }` is the trivial-split metric on `{i}` (lineality space,
/// `1 <= i <= n`); `V { i }` is the split metric of the initial arc
/// `{1..i}` (`2 <= i <= n-2`); `Vij { i, j }` is the split metric of the
/// interior arc `{i+1..j}` (`1 <= i <= n-3`, `i+2 <= j <= n-1`). These are
/// the matrices' customary names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayKind {
    E { i: usize },
    V { i: usize },
    Vij { i: usize, j: usize },
}

impl fmt::Display for RayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RayKind::E { i } => write!(f, "E({i})"),
            RayKind::V { i } => write!(f, "V({i})"),
            RayKind::Vij { i, j } => write!(f, "V({i},{j})"),
        }
    }
}

/// A realized basis matrix: its kind plus the 0/1 metric it denotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayMatrix {
    kind: RayKind,
    metric: Metric,
}

impl RayMatrix {
    pub fn kind(&self) -> RayKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.metric.n()
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }
}

/// Block of ground-set elements underlying a ray kind, before any
/// permutation: `{i}` for `E`, `{1..i}` for `V`, `{i+1..j}` for `Vij`.
fn ray_block(kind: RayKind) -> Vec<usize> {
    match kind {
        RayKind::E { i } => vec![i],
        RayKind::V { i } => (1..=i).collect(),
        RayKind::Vij { i, j } => (i + 1..=j).collect(),
    }
}

/// Realizes a basis matrix, validating the index ranges.
pub fn ray_matrix(kind: RayKind, n: usize) -> Result<RayMatrix, Error> {
    validate_ground_set(n)?;
    let in_range = match kind {
        RayKind::E { i } => (1..=n).contains(&i),
        RayKind::V { i } => (2..=n - 2).contains(&i),
        RayKind::Vij { i, j } => {
            (1..=n - 3).contains(&i) && (i + 2..=n - 1).contains(&j)
        }
    };
    if !in_range {
        return Err(Error::InvalidMetric(format!(
            "index out of range for {kind} with n = {n}"
        )));
    }
    let split = Split::new(n, &ray_block(kind))?;
    Ok(RayMatrix {
        kind,
        metric: split_metric(&split),
    })
}

/// Every basis matrix of the standard polyhedron for ground set size `n`:
/// the `n` lineality matrices followed by the `n(n-3)/2` cone rays,
/// `C(n,2)` in total.
pub fn standard_basis(n: usize) -> Result<Vec<RayMatrix>, Error> {
    validate_ground_set(n)?;
    let mut kinds = Vec::new();
    for i in 1..=n {
        kinds.push(RayKind::E { i });
    }
    for i in 2..=n - 2 {
        kinds.push(RayKind::V { i });
    }
    for i in 1..=n - 3 {
        for j in i + 2..=n - 1 {
            kinds.push(RayKind::Vij { i, j });
        }
    }
    kinds.into_iter().map(|k| ray_matrix(k, n)).collect()
}

/// The split named by a permuted ray: applying `sigma` to a `V`-kind ray
/// relabels its underlying block, so the ray for block `{1..i}` maps to
/// the split with block `{sigma(1), …, sigma(i)}` (and correspondingly for
/// interior arcs). `E`-kind rays are rejected: they name trivial splits,
/// which are not vertices of the complex and are handled by the `alpha`
/// part of a [`Decomposition`].
pub fn ray_to_split(r: &RayMatrix, sigma: &[usize]) -> Result<Split, Error> {
    let n = r.n();
    if matches!(r.kind(), RayKind::E { .. }) {
        return Err(Error::InvalidSplit(
            "lineality matrices name trivial splits, not complex vertices"
                .into(),
        ));
    }
    if sigma.len() != n {
        return Err(Error::InvalidOrdering(format!(
            "permutation has length {}, expected {n}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in sigma {
        if x < 1 || x > n || seen[x - 1] {
            return Err(Error::InvalidOrdering(format!(
                "not a permutation of 1..={n}"
            )));
        }
        seen[x - 1] = true;
    }
    let block: Vec<usize> =
        ray_block(r.kind()).into_iter().map(|p| sigma[p - 1]).collect();
    Split::new(n, &block)
}

/// Entries of `m` cleared of denominators: `L · m` as exact integers,
/// where `L` is the least common multiple of all entry denominators.
/// Scaling by a positive constant preserves every inequality the scans
/// below test, and integer arithmetic keeps them fast.
fn cleared_entries(m: &Metric) -> Vec<Vec<BigInt>> {
    let mut l = BigInt::one();
    for row in m.entries() {
        for e in row {
            l = l.lcm(e.denom());
        }
    }
    m.entries()
        .iter()
        .map(|row| row.iter().map(|e| e.numer() * (&l / e.denom())).collect())
        .collect()
}

/// First quadruple of positions `p < q < r < s` (0-based) along `order`
/// violating the four-point condition, scanning in lexicographic order.
fn violation_positions(d: &[Vec<BigInt>], order: &[usize]) -> Option<[usize; 4]> {
    let n = order.len();
    let e = |a: usize, b: usize| &d[order[a] - 1][order[b] - 1];
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                for s in r + 1..n {
                    let rhs = e(p, r) + e(q, s);
                    if e(p, q) + e(r, s) > rhs || e(p, s) + e(q, r) > rhs {
                        return Some([p, q, r, s]);
                    }
                }
            }
        }
    }
    None
}

/// First violating quadruple `i < j < k < l` (1-based points, lexicographic
/// order) of the four-point condition
/// `max(d_ij + d_kl, d_il + d_jk) <= d_ik + d_jl`, or `None` when `m`
/// satisfies all of them. For fewer than four points the condition is
/// vacuous.
pub fn kalmanson_violation(m: &Metric) -> Option<[usize; 4]> {
    let order: Vec<usize> = (1..=m.n()).collect();
    violation_positions(&cleared_entries(m), &order)
        .map(|v| v.map(|p| p + 1))
}

/// Whether `m` satisfies the four-point conditions in the given labeling.
pub fn is_kalmanson(m: &Metric) -> bool {
    kalmanson_violation(m).is_none()
}

/// Like [`kalmanson_violation`], but with the points read in the circular
/// order `ord`. Returns 1-based *positions* along the ordering; for the
/// identity ordering those coincide with the points themselves.
pub fn kalmanson_violation_under(
    m: &Metric,
    ord: &CircularOrdering,
) -> Option<[usize; 4]> {
    assert_eq!(m.n(), ord.n(), "metric and ordering sizes must agree");
    violation_positions(&cleared_entries(m), ord.order())
        .map(|v| v.map(|p| p + 1))
}

/// Whether `m` satisfies the four-point conditions when its points are
/// arranged along `ord`.
pub fn is_kalmanson_under(m: &Metric, ord: &CircularOrdering) -> bool {
    kalmanson_violation_under(m, ord).is_none()
}

/// An exact expression of a metric over the split metrics of one circular
/// ordering: `m = Σ alpha_e · Δ_{e} + Σ weights_S · Δ_S`, where the first
/// sum ranges over trivial splits (one rational per point, sign
/// unrestricted) and the second over non-trivial arcs of the ordering with
/// strictly positive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    ordering: CircularOrdering,
    alpha: Vec<BigRational>,
    weights: BTreeMap<Split, BigRational>,
}

impl Decomposition {
    /// The circular ordering whose arcs carry the weights.
    pub fn ordering(&self) -> &CircularOrdering {
        &self.ordering
    }

    /// Trivial-split coefficients indexed by point: `alpha()[e-1]` belongs
    /// to the split `{e} | rest`. May be negative when the metric violates
    /// the triangle inequality.
    pub fn alpha(&self) -> &[BigRational] {
        &self.alpha
    }

    /// Strictly positive weights on non-trivial splits; every key is an
    /// arc of [`Decomposition::ordering`].
    pub fn weights(&self) -> &BTreeMap<Split, BigRational> {
        &self.weights
    }

    /// Rebuilds the metric this decomposition denotes. Exact: equals the
    /// decomposed input bit for bit.
    pub fn reconstruct(&self) -> Metric {
        let n = self.alpha.len();
        Metric::from_fn(n, |i, j| {
            let mut v = &self.alpha[i - 1] + &self.alpha[j - 1];
            for (s, w) in &self.weights {
                if s.separates(i, j) {
                    v += w;
                }
            }
            v
        })
        .expect("weighted sums of split metrics are symmetric and nonnegative")
    }
}

/// Expresses `m` exactly over the basis attached to the ordering `ord`:
/// trivial-split metrics for each point plus the split metrics of the
/// ordering's arcs. Returns `None` when any arc coefficient is negative —
/// exactly when `m` fails the four-point conditions read along `ord`.
///
/// The solution is closed-form rather than a matrix solve: an arc's split
/// metric is determined by its two boundary edges on the circle, and the
/// cyclic second difference
/// `(m(p,q) + m(p+1,q+1) - m(p,q+1) - m(p+1,q)) / 2`
/// (positions mod n along the ordering) receives `±1` from a split
/// exactly when the split's boundary edges are `(p,p+1)` and `(q,q+1)`.
/// So that difference *is* the coefficient of the split whose block is
/// the arc of positions `p+1..=q`. Arcs of length 1 and n-1 are the
/// trivial splits and land in `alpha`; the rest must be nonnegative for
/// cone membership, and the strictly positive ones form the support.
pub fn decompose(m: &Metric, ord: &CircularOrdering) -> Option<Decomposition> {
    assert_eq!(m.n(), ord.n(), "metric and ordering sizes must agree");
    let n = m.n();
    let sigma = ord.order();
    let two = BigRational::from(BigInt::from(2));
    let zero = BigRational::zero();
    let mp = |a: usize, b: usize| {
        let (x, y) = (sigma[a % n], sigma[b % n]);
        if x == y {
            &zero
        } else {
            m.get(x, y)
        }
    };
    let mut alpha = vec![BigRational::zero(); n];
    let mut weights = BTreeMap::new();
    for p in 0..n {
        for q in p + 1..n {
            let w = (mp(p, q) + mp(p + 1, q + 1) - mp(p, q + 1) - mp(p + 1, q))
                / &two;
            if q - p == 1 {
                alpha[sigma[q] - 1] = w;
            } else if q - p == n - 1 {
                // Only (p,q) = (0, n-1): the arc 1..=n-1 is co-trivial,
                // naming the trivial split on the point at position 0.
                alpha[sigma[p] - 1] = w;
            } else {
                if w.is_negative() {
                    return None;
                }
                if !w.is_zero() {
                    let block: Vec<usize> = sigma[p + 1..=q].to_vec();
                    let s = Split::new(n, &block)
                        .expect("an interior arc is a proper bipartition");
                    weights.insert(s, w);
                }
            }
        }
    }
    let dec = Decomposition {
        ordering: ord.clone(),
        alpha,
        weights,
    };
    debug_assert_eq!(dec.reconstruct(), *m, "expansion must be exact");
    Some(dec)
}

/// Finds a circular ordering under which `m` satisfies the four-point
/// conditions, together with the exact decomposition it induces; `None`
/// when no ordering works. Deterministic: the first passing ordering in
/// canonical enumeration order is returned. Exhaustive over `(n-1)!/2`
/// orderings, hence the size guard.
pub fn recognize(
    m: &Metric,
) -> Result<Option<(CircularOrdering, Decomposition)>, Error> {
    let n = m.n();
    validate_ground_set(n)?;
    if n > MAX_RECOGNIZE {
        return Err(Error::SizeGuard {
            what: "ordering-scan recognition",
            min: 4,
            max: MAX_RECOGNIZE,
            got: n,
        });
    }
    let cleared = cleared_entries(m);
    for ord in CircularOrdering::all(n) {
        if violation_positions(&cleared, ord.order()).is_none() {
            let dec = decompose(m, &ord)
                .expect("a passing scan means all arc coefficients are nonnegative");
            return Ok(Some((ord, dec)));
        }
    }
    Ok(None)
}

/// A closed tour visiting every point once, with its exact length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tour {
    ordering: CircularOrdering,
    length: BigRational,
}

impl Tour {
    /// The visiting order (canonical dihedral representative; tour length
    /// does not depend on rotation or direction).
    pub fn ordering(&self) -> &CircularOrdering {
        &self.ordering
    }

    pub fn length(&self) -> &BigRational {
        &self.length
    }
}

/// Exact length of the closed tour along `ord`.
pub fn tour_length(m: &Metric, ord: &CircularOrdering) -> BigRational {
    assert_eq!(m.n(), ord.n(), "metric and ordering sizes must agree");
    let o = ord.order();
    let n = o.len();
    let mut total = BigRational::zero();
    for p in 0..n {
        total += m.get(o[p], o[(p + 1) % n]);
    }
    total
}

/// Exact optimum tour by exhausting all `(n-1)!/2` canonical tours; ties
/// break to the first in enumeration order. Factorial, hence the guard.
pub fn tsp_bruteforce(m: &Metric) -> Result<Tour, Error> {
    let n = m.n();
    validate_ground_set(n)?;
    if n > MAX_TSP_BRUTEFORCE {
        return Err(Error::SizeGuard {
            what: "brute-force tour search",
            min: 4,
            max: MAX_TSP_BRUTEFORCE,
            got: n,
        });
    }
    let cleared = cleared_entries(m);
    let mut best: Option<(CircularOrdering, BigInt)> = None;
    for ord in CircularOrdering::all(n) {
        let o = ord.order();
        let mut total = BigInt::zero();
        for p in 0..n {
            total += &cleared[o[p] - 1][o[(p + 1) % n] - 1];
        }
        if best.as_ref().is_none_or(|(_, len)| total < *len) {
            best = Some((ord, total));
        }
    }
    let (ordering, _) = best.expect("at least one canonical tour exists");
    let length = tour_length(m, &ordering);
    Ok(Tour { ordering, length })
}

/// The fast path of the optimality theorem: when `m` is recognized as
/// circular-decomposable, the recovered circular ordering solves the
/// travelling-salesman problem over `m`. Returns that tour, or `None`
/// when `m` passes no ordering.
pub fn tsp_kalmanson(m: &Metric) -> Result<Option<Tour>, Error> {
    let Some((ordering, _)) = recognize(m)? else {
        return Ok(None);
    };
    let length = tour_length(m, &ordering);
    Ok(Some(Tour { ordering, length }))
}
