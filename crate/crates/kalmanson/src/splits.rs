//! Splits of a finite ground set and circular split systems.
//!
//! A *split* of `{1, …, n}` is an unordered bipartition into two nonempty
//! blocks. A split is stored as the block that does **not** contain element
//! 1, packed into a bit mask, so equality, ordering and the set algebra
//! used below are cheap. A *split system* is a set of splits over a common
//! ground set, and the system is *circular* when some circular ordering of
//! the elements turns every split into an arc of the circle.
//!
//! Circularity is decided three independent ways:
//!
//! * [`is_circular`] encodes the system as a 0/1 matrix and tests the
//!   circular-ones property (see [`crate::ones`]); this is the primary
//!   route and also yields a witness ordering.
//! * [`is_circular_exhaustive`] tries every canonical circular ordering.
//! * [`circular_closure`] + [`is_weakly_compatible`] close the system
//!   under the partial join operation and test weak compatibility.
//!
//! The three always agree; the test suite leans on that redundancy.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ones;

/// Largest ground set the bit-mask representation supports.
pub const MAX_GROUND_SET: usize = 60;

/// Checks that `n` is a usable ground-set size (`4 ..= 60`).
pub fn validate_ground_set(n: usize) -> Result<(), Error> {
    if n < 4 {
        return Err(Error::InvalidSplit(format!(
            "ground set must have at least 4 elements, got {n}"
        )));
    }
    if n > MAX_GROUND_SET {
        return Err(Error::InvalidSplit(format!(
            "ground set must have at most {MAX_GROUND_SET} elements, got {n}"
        )));
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

fn mask_of(members: &[usize], n: usize) -> Result<u64, Error> {
    let mut mask = 0u64;
    for &e in members {
        if e < 1 || e > n {
            return Err(Error::InvalidSplit(format!(
                "element {e} outside ground set 1..={n}"
            )));
        }
        let bit = 1u64 << (e - 1);
        if mask & bit != 0 {
            return Err(Error::InvalidSplit(format!("element {e} listed twice")));
        }
        mask |= bit;
    }
    Ok(mask)
}

fn elements_of(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out.push(b + 1);
        m &= m - 1;
    }
    out
}

/// An unordered bipartition `{A, B}` of `{1, …, n}` with both blocks
/// nonempty. The stored block is the one not containing element 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Split {
    n: usize,
    block: u64,
}

impl Split {
    /// Builds the split separating `members` from the rest of `{1, …, n}`.
    ///
    /// Either block may be given; the result is canonicalized so that the
    /// stored block avoids element 1. Empty and full member sets are
    /// rejected, as are out-of-range or repeated elements.
    pub fn new(n: usize, members: &[usize]) -> Result<Split, Error> {
        validate_ground_set(n)?;
        let mask = mask_of(members, n)?;
        if mask == 0 {
            return Err(Error::InvalidSplit("block must be nonempty".into()));
        }
        if mask == full_mask(n) {
            return Err(Error::InvalidSplit(
                "block must be a proper subset of the ground set".into(),
            ));
        }
        Ok(Split::from_mask(n, mask))
    }

    /// Canonicalizes an arbitrary nonempty proper block mask.
    pub(crate) fn from_mask(n: usize, mask: u64) -> Split {
        debug_assert!(mask != 0 && mask != full_mask(n));
        let block = if mask & 1 != 0 { full_mask(n) ^ mask } else { mask };
        Split { n, block }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The block not containing element 1, as a bit mask (element `e` is
    /// bit `e - 1`).
    pub fn block_mask(&self) -> u64 {
        self.block
    }

    /// The block containing element 1, as a bit mask.
    pub fn co_block_mask(&self) -> u64 {
        full_mask(self.n) ^ self.block
    }

    /// Sorted members of the block not containing element 1.
    pub fn block(&self) -> Vec<usize> {
        elements_of(self.block)
    }

    /// Sorted members of the block containing element 1.
    pub fn co_block(&self) -> Vec<usize> {
        elements_of(self.co_block_mask())
    }

    /// Size of the smaller block.
    pub fn size(&self) -> usize {
        let b = self.block.count_ones() as usize;
        b.min(self.n - b)
    }

    /// A split is trivial when it cuts off a single element.
    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    /// Minimal non-trivial splits cut off exactly two elements.
    pub fn is_minimal(&self) -> bool {
        self.size() == 2
    }

    /// Whether `x` and `y` lie in different blocks.
    pub fn separates(&self, x: usize, y: usize) -> bool {
        debug_assert!((1..=self.n).contains(&x) && (1..=self.n).contains(&y));
        let bx = self.block >> (x - 1) & 1;
        let by = self.block >> (y - 1) & 1;
        bx != by
    }
}

impl Ord for Split {
    /// Splits order lexicographically by the sorted member list of their
    /// canonical block, which matches the order used in serialized files.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a = elements_of(self.block);
        let b = elements_of(other.block);
        a.cmp(&b).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for Split {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let block = self
            .block()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{{{block}}}|rest (n={})", self.n)
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |mask: u64| {
            elements_of(mask)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("")
        };
        write!(f, "{}|{}", side(self.co_block_mask()), side(self.block))
    }
}

/// Which block of a split an operation should treat as the `A` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The stored block (the one without element 1).
    Block,
    /// Its complement.
    Complement,
}

impl Split {
    fn side_mask(&self, side: Side) -> u64 {
        match side {
            Side::Block => self.block,
            Side::Complement => self.co_block_mask(),
        }
    }
}

/// Partial join of two splits: with chosen sides `A1`, `A2` the result is
/// `{A1 ∩ A2, B1 ∪ B2}`, defined whenever that is a proper bipartition
/// (equivalently, whenever `A1 ∩ A2` is nonempty).
pub fn join(s1: &Split, side1: Side, s2: &Split, side2: Side) -> Option<Split> {
    assert_eq!(s1.n, s2.n, "joined splits must share a ground set");
    let inter = s1.side_mask(side1) & s2.side_mask(side2);
    if inter == 0 {
        return None;
    }
    // A1 and A2 are proper subsets, so the intersection is too.
    Some(Split::from_mask(s1.n, inter))
}

/// A set of splits over a common ground set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitSystem {
    n: usize,
    splits: BTreeSet<Split>,
}

impl SplitSystem {
    pub fn new(n: usize, splits: impl IntoIterator<Item = Split>) -> Result<SplitSystem, Error> {
        validate_ground_set(n)?;
        let mut set = BTreeSet::new();
        for s in splits {
            if s.n != n {
                return Err(Error::InvalidSystem(format!(
                    "split over n = {} in a system over n = {n}",
                    s.n
                )));
            }
            set.insert(s);
        }
        Ok(SplitSystem { n, splits: set })
    }

    pub fn empty(n: usize) -> Result<SplitSystem, Error> {
        SplitSystem::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn contains(&self, s: &Split) -> bool {
        self.splits.contains(s)
    }

    pub fn insert(&mut self, s: Split) -> bool {
        assert_eq!(s.n, self.n, "split over a different ground set");
        self.splits.insert(s)
    }

    /// Splits in lexicographic block order.
    pub fn iter(&self) -> impl Iterator<Item = &Split> {
        self.splits.iter()
    }

    pub fn has_trivial(&self) -> bool {
        self.splits.iter().any(Split::is_trivial)
    }

    /// Parses the on-disk JSON form `{"n": 5, "splits": [[2,4], [3,4,5]]}`.
    /// Blocks are canonicalized; a file that lists the same split twice
    /// (possibly via complementary blocks) is rejected.
    pub fn from_json_str(text: &str) -> Result<SplitSystem, Error> {
        let dto: SplitSystemDto =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        validate_ground_set(dto.n)?;
        let mut set = BTreeSet::new();
        for members in &dto.splits {
            let s = Split::new(dto.n, members)?;
            if !set.insert(s) {
                return Err(Error::InvalidSystem(format!(
                    "duplicate split {s} in input"
                )));
            }
        }
        Ok(SplitSystem {
            n: dto.n,
            splits: set,
        })
    }

    /// Serializes to the canonical JSON form: each split appears as its
    /// block without element 1, members ascending, splits in lexicographic
    /// order. The output is byte-stable for equal systems.
    pub fn to_json_string(&self) -> String {
        let dto = SplitSystemDto {
            n: self.n,
            splits: self.splits.iter().map(Split::block).collect(),
        };
        serde_json::to_string(&dto).expect("split system serializes")
    }
}

impl fmt::Display for SplitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.splits.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct SplitSystemDto {
    n: usize,
    splits: Vec<Vec<usize>>,
}

/// All non-trivial splits of `{1, …, n}` in lexicographic block order.
/// There are `2^(n-1) - n - 1` of them.
pub fn all_nontrivial_splits(n: usize) -> Vec<Split> {
    assert!(validate_ground_set(n).is_ok());
    let mut out = Vec::new();
    // Canonical blocks are the subsets of {2, …, n} of size 2 ..= n-2.
    for mask in 1..full_mask(n) {
        if mask & 1 != 0 {
            continue;
        }
        let k = mask.count_ones() as usize;
        if (2..=n - 2).contains(&k) {
            out.push(Split { n, block: mask });
        }
    }
    out.sort();
    out
}

/// A circular ordering of `{1, …, n}` up to rotation and reflection,
/// stored as the canonical representative: element 1 first, and the
/// second element smaller than the last.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircularOrdering {
    order: Vec<usize>,
}

impl CircularOrdering {
    /// Canonicalizes an arbitrary circular arrangement of `{1, …, n}`.
    pub fn new(seq: &[usize]) -> Result<CircularOrdering, Error> {
        let n = seq.len();
        validate_ground_set(n).map_err(|_| {
            Error::InvalidOrdering(format!("ordering must have 4 ..= {MAX_GROUND_SET} elements"))
        })?;
        let mut seen = vec![false; n + 1];
        for &e in seq {
            if e < 1 || e > n || seen[e] {
                return Err(Error::InvalidOrdering(format!(
                    "not a permutation of 1..={n}: {seq:?}"
                )));
            }
            seen[e] = true;
        }
        let start = seq.iter().position(|&e| e == 1).unwrap();
        let mut order: Vec<usize> = (0..n).map(|i| seq[(start + i) % n]).collect();
        if order[1] > order[n - 1] {
            order[1..].reverse();
        }
        Ok(CircularOrdering { order })
    }

    /// The ordering `(1, 2, …, n)`.
    pub fn identity(n: usize) -> CircularOrdering {
        validate_ground_set(n).expect("valid ground set");
        CircularOrdering {
            order: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Elements in canonical circular order, starting at 1.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `table[e]` is the position of element `e` (positions `0..n`).
    pub fn position_table(&self) -> Vec<usize> {
        let mut table = vec![0; self.n() + 1];
        for (pos, &e) in self.order.iter().enumerate() {
            table[e] = pos;
        }
        table
    }

    /// Whether the block of `s` occupies consecutive positions on the
    /// circle.
    pub fn is_arc(&self, s: &Split) -> bool {
        let n = self.n();
        debug_assert_eq!(s.n(), n);
        let table = self.position_table();
        is_circular_run(block_positions(s.block_mask(), &table), n)
    }

    /// All canonical orderings of `{1, …, n}`; there are `(n-1)!/2`.
    /// The sequence is deterministic: the tail `(order[1], …, order[n-1])`
    /// runs through permutations of `{2, …, n}` in lexicographic order,
    /// skipping representatives with `order[1] > order[n-1]`.
    pub fn all(n: usize) -> impl Iterator<Item = CircularOrdering> {
        validate_ground_set(n).expect("valid ground set");
        use itertools::Itertools;
        (2..=n).permutations(n - 1).filter_map(move |tail| {
            if tail[0] > tail[n - 2] {
                return None;
            }
            let mut order = Vec::with_capacity(n);
            order.push(1);
            order.extend(tail);
            Some(CircularOrdering { order })
        })
    }

    /// `(n-1)!/2`, the number of canonical orderings.
    pub fn count(n: usize) -> u64 {
        (1..n as u64).product::<u64>() / 2
    }
}

impl fmt::Debug for CircularOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CircularOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.order.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// True when the set bits of `positions` form one contiguous run on a
/// circle of `n` positions (a nonempty proper subset with exactly one
/// boundary pair).
fn is_circular_run(positions: u64, n: usize) -> bool {
    let full = full_mask(n);
    debug_assert!(positions != 0 && positions != full);
    let rotated = ((positions << 1) | (positions >> (n - 1))) & full;
    (positions ^ rotated).count_ones() == 2
}

/// Positions faithful to an element→position table without rebuilding it
/// per split; used by the exhaustive circularity search.
fn block_positions(block: u64, table: &[usize]) -> u64 {
    let mut positions = 0u64;
    let mut m = block;
    while m != 0 {
        let e = m.trailing_zeros() as usize + 1;
        positions |= 1u64 << table[e];
        m &= m - 1;
    }
    positions
}

/// Decides circularity by reducing to the circular-ones property of the
/// system's 0/1 encoding and returns a witness ordering on success.
///
/// The empty system is vacuously circular with the identity witness.
///
/// # Panics
///
/// Circularity is a notion for non-trivial splits; the function panics if
/// the system contains a trivial one.
pub fn is_circular(ss: &SplitSystem) -> Option<CircularOrdering> {
    assert!(
        !ss.has_trivial(),
        "circularity is defined for systems of non-trivial splits"
    );
    let class = ones::splits_to_rowclass(ss);
    let witness = ones::circ1r_witness(class.matrix())?;
    // Columns are elements; reading them in witness order around a circle
    // turns every row's block into an arc.
    let seq: Vec<usize> = witness.order().iter().map(|&c| c + 1).collect();
    let ord = CircularOrdering::new(&seq).expect("witness is a permutation");
    debug_assert!(ss.iter().all(|s| ord.is_arc(s)));
    Some(ord)
}

/// Decides circularity by trying every canonical circular ordering and
/// returns the first one (in enumeration order) realizing all splits as
/// arcs. Exponential; intended as a cross-check for the reduction in
/// [`is_circular`].
pub fn is_circular_exhaustive(ss: &SplitSystem) -> Option<CircularOrdering> {
    assert!(
        !ss.has_trivial(),
        "circularity is defined for systems of non-trivial splits"
    );
    let n = ss.n();
    let blocks: Vec<u64> = ss.iter().map(Split::block_mask).collect();
    CircularOrdering::all(n).find(|ord| {
        let table = ord.position_table();
        blocks
            .iter()
            .all(|&b| is_circular_run(block_positions(b, &table), n))
    })
}

/// A certificate that a system is not weakly compatible: three splits with
/// chosen sides `A1, A2, A3`, a hub point in all three sides, and one
/// outlier per split lying in that side only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncompatibleTriple {
    pub splits: [Split; 3],
    pub sides: [Side; 3],
    pub hub: usize,
    pub outliers: [usize; 3],
}

/// Searches for a violation of weak compatibility and returns the first
/// one in deterministic order (triples in lexicographic split order, sides
/// block-before-complement).
pub fn weak_compatibility_witness(ss: &SplitSystem) -> Option<IncompatibleTriple> {
    let full = full_mask(ss.n());
    let splits: Vec<&Split> = ss.iter().collect();
    let sides = [Side::Block, Side::Complement];
    for (i, s1) in splits.iter().enumerate() {
        for (j, s2) in splits.iter().enumerate().skip(i + 1) {
            for s3 in splits.iter().skip(j + 1) {
                for &c1 in &sides {
                    let a1 = s1.side_mask(c1);
                    for &c2 in &sides {
                        let a2 = s2.side_mask(c2);
                        let both = a1 & a2;
                        let only1 = a1 & !a2;
                        let only2 = a2 & !a1;
                        let neither = full & !a1 & !a2;
                        for &c3 in &sides {
                            let a3 = s3.side_mask(c3);
                            let hub = both & a3;
                            let w1 = only1 & !a3;
                            let w2 = only2 & !a3;
                            let w3 = neither & a3;
                            if hub != 0 && w1 != 0 && w2 != 0 && w3 != 0 {
                                let low = |m: u64| m.trailing_zeros() as usize + 1;
                                return Some(IncompatibleTriple {
                                    splits: [**s1, **s2, **s3],
                                    sides: [c1, c2, c3],
                                    hub: low(hub),
                                    outliers: [low(w1), low(w2), low(w3)],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Weak compatibility: no triple of splits admits, for any choice of
/// sides, a hub point in all three chosen sides together with one private
/// outlier per split.
pub fn is_weakly_compatible(ss: &SplitSystem) -> bool {
    weak_compatibility_witness(ss).is_none()
}

/// Closes a system under the join of crossing pairs. Two splits cross when
/// all four intersections of a side of one with a side of the other are
/// nonempty; for such a pair the four side choices each yield a proper
/// join `{A1 ∩ A2, B1 ∪ B2}`, and all four are added. (For two crossing
/// arcs of a circle, every one of those joins is again an arc, so the
/// closure of a circular system is circular.) The result contains the
/// original system and may contain trivial splits.
pub fn circular_closure(ss: &SplitSystem) -> SplitSystem {
    let mut closed = ss.clone();
    let splits: Vec<Split> = ss.iter().copied().collect();
    let sides = [Side::Block, Side::Complement];
    for (i, s1) in splits.iter().enumerate() {
        for s2 in splits.iter().skip(i + 1) {
            let a1 = s1.block_mask();
            let b1 = s1.co_block_mask();
            let a2 = s2.block_mask();
            let b2 = s2.co_block_mask();
            let crossing =
                a1 & a2 != 0 && a1 & b2 != 0 && b1 & a2 != 0 && b1 & b2 != 0;
            if !crossing {
                continue;
            }
            for &c1 in &sides {
                for &c2 in &sides {
                    let j = join(s1, c1, s2, c2)
                        .expect("crossing sides intersect");
                    closed.insert(j);
                }
            }
        }
    }
    closed
}

/// Circularity via the closure route: a system of non-trivial splits is
/// circular exactly when its closure is weakly compatible. Boolean only;
/// no witness ordering falls out of this formulation.
pub fn is_circular_via_closure(ss: &SplitSystem) -> bool {
    assert!(
        !ss.has_trivial(),
        "circularity is defined for systems of non-trivial splits"
    );
    is_weakly_compatible(&circular_closure(ss))
}
