//! Binary matrices and the consecutive-ones / circular-ones properties.
//!
//! A matrix has *consecutive ones for rows* (C1R) when its columns can be
//! permuted so every row's ones form one contiguous block, and *circular
//! ones* (Circ1R) when a column permutation makes every row's ones — or
//! zeros — contiguous, i.e. each row is a block when the columns are bent
//! into a circle. The two are linked by row complementation: a matrix is
//! Circ1R exactly when complementing every row with a one in the first
//! column leaves a C1R matrix, and on matrices whose first column is zero
//! the two properties coincide.
//!
//! [`c1r_witness`] decides C1R with a certificate. It searches column
//! prefixes left to right, which works because extendability of a prefix
//! depends only on the *set* of placed columns — appending a column is
//! legal iff every partially-placed row contains it — and, further, only
//! on how many columns of each distinct column pattern have been placed.
//! Dead states are memoized by that pattern-count vector, so the search
//! stays small even on adversarial inputs, and because columns are tried
//! in index order the first ordering found is the lexicographically least
//! valid one.
//!
//! Split systems enter through [`splits_to_rowclass`]: each split becomes
//! the indicator row of its block avoiding element 1, and the system is
//! circular exactly when that matrix has circular ones.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use crate::error::Error;
use crate::splits::{Split, SplitSystem};

/// Dimension cap keeping rows and column patterns inside one `u64`.
pub const MAX_MATRIX_DIM: usize = 63;

/// A dense 0/1 matrix; each row is stored as a bit mask with column `c`
/// at bit `c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub fn from_bits(cols: usize, rows: Vec<u64>) -> Result<BinaryMatrix, Error> {
        if cols > MAX_MATRIX_DIM || rows.len() > MAX_MATRIX_DIM {
            return Err(Error::InvalidMatrix(format!(
                "matrices are capped at {MAX_MATRIX_DIM} rows and columns"
            )));
        }
        let mask = if cols == 64 { !0 } else { (1u64 << cols) - 1 };
        if rows.iter().any(|&r| r & !mask != 0) {
            return Err(Error::InvalidMatrix(
                "row has bits outside the column range".into(),
            ));
        }
        Ok(BinaryMatrix { cols, rows })
    }

    /// Parses the text form: one line of `0`/`1` characters per row, no
    /// separators, blank lines ignored. All rows must have equal length.
    pub fn parse_text(text: &str) -> Result<BinaryMatrix, Error> {
        let mut rows = Vec::new();
        let mut cols = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            match cols {
                None => cols = Some(line.len()),
                Some(c) if c != line.len() => {
                    return Err(Error::Parse(format!(
                        "line {}: expected {} columns, got {}",
                        lineno + 1,
                        c,
                        line.len()
                    )))
                }
                _ => {}
            }
            let mut mask = 0u64;
            for (i, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => mask |= 1u64 << i,
                    other => {
                        return Err(Error::Parse(format!(
                            "line {}: unexpected character {other:?}",
                            lineno + 1
                        )))
                    }
                }
            }
            rows.push(mask);
        }
        let cols = cols.ok_or_else(|| Error::Parse("empty matrix".into()))?;
        BinaryMatrix::from_bits(cols, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &row in &self.rows {
            for c in 0..self.cols {
                out.push(if row >> c & 1 == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows() && c < self.cols);
        self.rows[r] >> c & 1 == 1
    }

    pub fn row_mask(&self, r: usize) -> u64 {
        self.rows[r]
    }
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryMatrix[{}x{}]\n{}", self.rows(), self.cols, self.to_text())
    }
}

fn lex_key(row: u64) -> u64 {
    // Reading columns left to right is a lexicographic comparison; bit
    // reversal turns that into plain integer order.
    row.reverse_bits()
}

/// A matrix considered up to row permutation, stored with rows sorted
/// lexicographically (column 0 read first).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RowClass {
    matrix: BinaryMatrix,
}

impl RowClass {
    pub fn new(mut matrix: BinaryMatrix) -> RowClass {
        matrix.rows.sort_by_key(|&r| lex_key(r));
        RowClass { matrix }
    }

    /// The canonical (row-sorted) representative.
    pub fn matrix(&self) -> &BinaryMatrix {
        &self.matrix
    }
}

/// A column order certifying a consecutive- or circular-ones arrangement:
/// `order()[k]` is the original index of the column placed at position `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColumnWitness {
    order: Vec<usize>,
}

impl ColumnWitness {
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Rearranges the columns of `m` according to this witness.
    pub fn apply(&self, m: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.order.len(), m.cols());
        let rows = m
            .rows
            .iter()
            .map(|&row| {
                let mut out = 0u64;
                for (pos, &c) in self.order.iter().enumerate() {
                    out |= (row >> c & 1) << pos;
                }
                out
            })
            .collect();
        BinaryMatrix {
            cols: m.cols(),
            rows,
        }
    }
}

fn ones_contiguous(row: u64) -> bool {
    if row == 0 {
        return true;
    }
    let shifted = row >> row.trailing_zeros();
    shifted & (shifted + 1) == 0
}

/// Whether applying `w` to `m` makes every row's ones contiguous.
pub fn is_valid_c1r_witness(m: &BinaryMatrix, w: &ColumnWitness) -> bool {
    w.order.len() == m.cols() && w.apply(m).rows.iter().all(|&r| ones_contiguous(r))
}

/// Whether applying `w` to `m` makes every row's ones *or* zeros
/// contiguous — the linear reading of a circular block.
pub fn is_valid_circ1r_witness(m: &BinaryMatrix, w: &ColumnWitness) -> bool {
    if w.order.len() != m.cols() {
        return false;
    }
    let mask = if m.cols() == 0 { 0 } else { (1u64 << m.cols()) - 1 };
    w.apply(m)
        .rows
        .iter()
        .all(|&r| ones_contiguous(r) || ones_contiguous(!r & mask))
}

struct C1rSearch {
    ncols: usize,
    col_pattern: Vec<u64>,
    type_of: Vec<usize>,
    row_size: Vec<u32>,
    placed: u64,
    row_placed: Vec<u32>,
    started: u64,
    counts: Vec<u16>,
    order: Vec<usize>,
    dead: HashSet<Vec<u16>>,
}

impl C1rSearch {
    fn place(&mut self, c: usize) {
        self.placed |= 1u64 << c;
        self.counts[self.type_of[c]] += 1;
        let mut bits = self.col_pattern[c];
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.row_placed[r] += 1;
            if self.row_placed[r] == self.row_size[r] {
                self.started &= !(1u64 << r);
            } else {
                self.started |= 1u64 << r;
            }
        }
        self.order.push(c);
    }

    fn unplace(&mut self, c: usize) {
        self.order.pop();
        self.placed &= !(1u64 << c);
        self.counts[self.type_of[c]] -= 1;
        let mut bits = self.col_pattern[c];
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.row_placed[r] -= 1;
            if self.row_placed[r] == 0 {
                self.started &= !(1u64 << r);
            } else {
                self.started |= 1u64 << r;
            }
        }
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.ncols {
            return true;
        }
        if self.dead.contains(&self.counts) {
            return false;
        }
        for c in 0..self.ncols {
            if self.placed >> c & 1 == 1 {
                continue;
            }
            // Legal iff every partially placed row also contains column c.
            if self.started & !self.col_pattern[c] != 0 {
                continue;
            }
            self.place(c);
            if self.dfs(depth + 1) {
                return true;
            }
            self.unplace(c);
        }
        self.dead.insert(self.counts.clone());
        false
    }
}

/// Decides the consecutive-ones property for rows. On success returns the
/// lexicographically least column order that makes every row's ones
/// contiguous; on failure returns `None`.
pub fn c1r_witness(m: &BinaryMatrix) -> Option<ColumnWitness> {
    let ncols = m.cols();
    let nrows = m.rows();
    if ncols == 0 || nrows == 0 {
        return Some(ColumnWitness {
            order: (0..ncols).collect(),
        });
    }
    let mut col_pattern = vec![0u64; ncols];
    for (r, &row) in m.rows.iter().enumerate() {
        let mut bits = row;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            col_pattern[c] |= 1u64 << r;
        }
    }
    let mut type_ids: HashMap<u64, usize> = HashMap::new();
    let type_of: Vec<usize> = col_pattern
        .iter()
        .map(|&p| {
            let next = type_ids.len();
            *type_ids.entry(p).or_insert(next)
        })
        .collect();
    let mut search = C1rSearch {
        ncols,
        col_pattern,
        type_of,
        row_size: m.rows.iter().map(|r| r.count_ones()).collect(),
        placed: 0,
        row_placed: vec![0; nrows],
        started: 0,
        counts: vec![0; type_ids.len()],
        order: Vec::with_capacity(ncols),
        dead: HashSet::new(),
    };
    if search.dfs(0) {
        let w = ColumnWitness {
            order: search.order,
        };
        debug_assert!(is_valid_c1r_witness(m, &w));
        Some(w)
    } else {
        None
    }
}

pub fn is_c1r(m: &BinaryMatrix) -> bool {
    c1r_witness(m).is_some()
}

/// Complements every row that has a one in column 0. Involutive, and the
/// identity on matrices whose first column is zero.
pub fn complement_rows_by_first_column(m: &BinaryMatrix) -> BinaryMatrix {
    let mask = if m.cols == 0 { 0 } else { (1u64 << m.cols) - 1 };
    let rows = m
        .rows
        .iter()
        .map(|&r| if r & 1 == 1 { r ^ mask } else { r })
        .collect();
    BinaryMatrix {
        cols: m.cols,
        rows,
    }
}

/// Decides the circular-ones property by complementing rows against the
/// first column and testing C1R. The witness is returned in terms of the
/// original matrix: under it, each row's ones or zeros are contiguous.
pub fn circ1r_witness(m: &BinaryMatrix) -> Option<ColumnWitness> {
    let w = c1r_witness(&complement_rows_by_first_column(m))?;
    debug_assert!(is_valid_circ1r_witness(m, &w));
    Some(w)
}

pub fn is_circ1r(m: &BinaryMatrix) -> bool {
    circ1r_witness(m).is_some()
}

/// The five families of matrices whose absence as configurations
/// characterizes C1R.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TuckerFamily {
    I,
    II,
    III,
    IV,
    V,
}

impl TuckerFamily {
    pub const ALL: [TuckerFamily; 5] = [
        TuckerFamily::I,
        TuckerFamily::II,
        TuckerFamily::III,
        TuckerFamily::IV,
        TuckerFamily::V,
    ];

    pub fn is_parametric(self) -> bool {
        matches!(self, TuckerFamily::I | TuckerFamily::II | TuckerFamily::III)
    }
}

impl std::fmt::Display for TuckerFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TuckerFamily::I => "I",
            TuckerFamily::II => "II",
            TuckerFamily::III => "III",
            TuckerFamily::IV => "IV",
            TuckerFamily::V => "V",
        };
        f.write_str(s)
    }
}

fn cols_to_mask(cols: impl IntoIterator<Item = usize>) -> u64 {
    cols.into_iter().fold(0u64, |m, c| m | 1u64 << (c - 1))
}

/// Builds the `k`-th member of a forbidden family. `k >= 1` is required
/// for the parametric families I, II, III and ignored for IV and V.
///
/// Shapes: `I_k` is `(k+2) x (k+2)`, `II_k` is `(k+3) x (k+3)`, `III_k`
/// is `(k+2) x (k+3)`, IV is `4 x 6`, V is `4 x 5`.
pub fn tucker_config_matrix(family: TuckerFamily, k: usize) -> Result<BinaryMatrix, Error> {
    if family.is_parametric() && k == 0 {
        return Err(Error::InvalidMatrix(format!(
            "family {family} needs k >= 1"
        )));
    }
    let staircase = |rows: usize| -> Vec<u64> {
        (1..=rows).map(|i| cols_to_mask([i, i + 1])).collect()
    };
    let (cols, rows) = match family {
        TuckerFamily::I => {
            let mut rows = staircase(k + 1);
            rows.push(cols_to_mask([1, k + 2]));
            (k + 2, rows)
        }
        TuckerFamily::II => {
            let mut rows = staircase(k + 1);
            rows.push(cols_to_mask((1..=k + 1).chain([k + 3])));
            rows.push(cols_to_mask(2..=k + 3));
            (k + 3, rows)
        }
        TuckerFamily::III => {
            let mut rows = staircase(k + 1);
            rows.push(cols_to_mask((2..=k + 1).chain([k + 3])));
            (k + 3, rows)
        }
        TuckerFamily::IV => {
            let rows = vec![
                cols_to_mask([1, 2]),
                cols_to_mask([3, 4]),
                cols_to_mask([5, 6]),
                cols_to_mask([2, 4, 6]),
            ];
            (6, rows)
        }
        TuckerFamily::V => {
            let rows = vec![
                cols_to_mask([1, 2]),
                cols_to_mask([1, 2, 3, 4]),
                cols_to_mask([3, 4]),
                cols_to_mask([1, 4, 5]),
            ];
            (5, rows)
        }
    };
    BinaryMatrix::from_bits(cols, rows)
}

/// Searches `m` for a submatrix that equals `config` up to independent
/// row and column permutations. Returns the first embedding found as
/// ascending row and column index sets, scanning row subsets in
/// lexicographic order.
pub fn contains_configuration(
    m: &BinaryMatrix,
    config: &BinaryMatrix,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let (a, b) = (config.rows(), config.cols());
    if a > m.rows() || b > m.cols() || a == 0 || b == 0 {
        return None;
    }
    for rows in (0..m.rows()).combinations(a) {
        for perm in rows.iter().copied().permutations(a) {
            // Column patterns of m over this row arrangement.
            let pattern = |c: usize| -> u64 {
                perm.iter()
                    .enumerate()
                    .fold(0u64, |p, (i, &r)| p | u64::from(m.get(r, c)) << i)
            };
            let mut needed: HashMap<u64, u32> = HashMap::new();
            for c in 0..b {
                let p = (0..a).fold(0u64, |p, i| p | u64::from(config.get(i, c)) << i);
                *needed.entry(p).or_insert(0) += 1;
            }
            let mut chosen: Vec<usize> = Vec::with_capacity(b);
            for c in 0..m.cols() {
                if let Some(count) = needed.get_mut(&pattern(c)) {
                    if *count > 0 {
                        *count -= 1;
                        chosen.push(c);
                    }
                }
            }
            if chosen.len() == b {
                return Some((rows, chosen));
            }
        }
    }
    None
}

/// Encodes a system of non-trivial splits as a 0/1 matrix: one row per
/// split, with ones on the block avoiding element 1, so column 0 is zero.
/// The row order of the class representative is canonical, making the
/// image independent of insertion order.
///
/// # Panics
///
/// Panics if the system contains a trivial split.
pub fn splits_to_rowclass(ss: &SplitSystem) -> RowClass {
    assert!(
        !ss.has_trivial(),
        "row encodings are defined for non-trivial splits"
    );
    // Block masks use bit e-1 for element e, which is already the column
    // convention (element 1 = column 0), so masks transfer unchanged.
    let rows = ss.iter().map(Split::block_mask).collect();
    let matrix = BinaryMatrix::from_bits(ss.n(), rows).expect("ground set fits");
    RowClass::new(matrix)
}

/// Decodes a row class back into the split system it encodes. Rejects
/// matrices that are not split encodings: a nonzero first column, a row
/// with fewer than two ones or fewer than two zeros, or duplicate rows.
pub fn rowclass_to_splits(rc: &RowClass) -> Result<SplitSystem, Error> {
    let m = rc.matrix();
    let n = m.cols();
    let mut splits = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mask = m.row_mask(r);
        if mask & 1 != 0 {
            return Err(Error::InvalidMatrix(format!(
                "row {r} has a one in the first column"
            )));
        }
        let ones = mask.count_ones() as usize;
        if ones < 2 || n - ones < 2 {
            return Err(Error::InvalidMatrix(format!(
                "row {r} does not encode a non-trivial split"
            )));
        }
        if r > 0 && m.row_mask(r - 1) == mask {
            return Err(Error::InvalidMatrix(format!("duplicate row {r}")));
        }
        let members: Vec<usize> = (0..n).filter(|&c| mask >> c & 1 == 1).map(|c| c + 1).collect();
        splits.push(Split::new(n, &members)?);
    }
    SplitSystem::new(n, splits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splits;

    fn m(text: &str) -> BinaryMatrix {
        BinaryMatrix::parse_text(text).unwrap()
    }

    /// Reference decision procedure: try all column permutations.
    fn c1r_bruteforce(mat: &BinaryMatrix) -> Option<ColumnWitness> {
        assert!(mat.cols() <= 7, "oracle is factorial in the column count");
        (0..mat.cols())
            .permutations(mat.cols())
            .map(|order| ColumnWitness { order })
            .find(|w| is_valid_c1r_witness(mat, w))
    }

    fn circ1r_bruteforce(mat: &BinaryMatrix) -> Option<ColumnWitness> {
        assert!(mat.cols() <= 7);
        (0..mat.cols())
            .permutations(mat.cols())
            .map(|order| ColumnWitness { order })
            .find(|w| is_valid_circ1r_witness(mat, w))
    }

    #[test]
    fn parse_and_emit_text() {
        let mat = m("11000\n00110\n\n10000\n01110\n");
        assert_eq!(mat.rows(), 4);
        assert_eq!(mat.cols(), 5);
        assert!(mat.get(0, 0) && mat.get(0, 1) && !mat.get(0, 2));
        assert_eq!(mat.to_text(), "11000\n00110\n10000\n01110\n");

        assert!(BinaryMatrix::parse_text("101\n01").is_err());
        assert!(BinaryMatrix::parse_text("10x").is_err());
        assert!(BinaryMatrix::parse_text("\n\n").is_err());
    }

    #[test]
    fn contiguous_arrangement_found_without_moving_columns() {
        // Already consecutive: every row is an interval as given.
        let mat = m("11000\n00110\n10000\n01110");
        let w = c1r_witness(&mat).expect("c1r");
        assert_eq!(w.order(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn scattered_rows_need_a_permutation() {
        let mat = m("00110\n11100\n01001\n11101");
        let w = c1r_witness(&mat).expect("c1r");
        assert!(is_valid_c1r_witness(&mat, &w));
        // Lexicographically least witness, confirmed by the oracle.
        assert_eq!(w.order(), &[3, 2, 0, 1, 4]);
        assert_eq!(w.order(), c1r_bruteforce(&mat).unwrap().order());
        // Witnesses are not unique: cycling columns 1→3→4→5→1 (in 1-based
        // terms) sorts the same matrix, so that order must validate too.
        let shift = ColumnWitness { order: vec![4, 1, 0, 2, 3] };
        assert!(is_valid_c1r_witness(&mat, &shift));
    }

    #[test]
    fn wrap_around_rows_do_not_preclude_consecutiveness() {
        // Rows {1,4,5} and {1,2,4,5} wrap around the right edge as given,
        // yet moving column 3 to an end flattens every row: the matrix is
        // C1R outright, not merely circularly orderable.
        let mat = m("10011\n01100\n11011\n00001");
        let w = c1r_witness(&mat).expect("c1r");
        assert!(is_valid_c1r_witness(&mat, &w));
        assert_eq!(w.order(), &[0, 3, 4, 1, 2]);
        assert_eq!(w.order(), c1r_bruteforce(&mat).unwrap().order());
        let c = circ1r_witness(&mat).expect("circ1r");
        assert!(is_valid_circ1r_witness(&mat, &c));
    }

    #[test]
    fn circular_but_not_consecutive() {
        // The cyclic 3×3 pattern cannot be flattened: each pair of rows
        // overlaps, forcing a cycle. Its row complement is sortable, so the
        // circular property still holds.
        let mat = m("110\n011\n101");
        assert!(c1r_witness(&mat).is_none());
        assert!(c1r_bruteforce(&mat).is_none());
        assert!(is_c1r(&complement_rows_by_first_column(&mat)));
        let w = circ1r_witness(&mat).expect("circ1r");
        assert!(is_valid_circ1r_witness(&mat, &w));
        assert_eq!(circ1r_bruteforce(&mat).unwrap().order(), w.order());
    }

    #[test]
    fn complement_rows_examples() {
        let mat = m("10011\n01100\n11011\n00001");
        let c = complement_rows_by_first_column(&mat);
        assert_eq!(c.to_text(), "01100\n01100\n00100\n00001\n");
        // Involutive, and identity once the first column is zero.
        assert_eq!(complement_rows_by_first_column(&c), c);
    }

    #[test]
    fn zero_first_column_matrices_collapse_the_two_properties() {
        for text in ["01100\n00110\n01111", "00111\n01010\n01101"] {
            let mat = m(text);
            assert_eq!(is_c1r(&mat), is_circ1r(&mat));
        }
    }

    #[test]
    fn tucker_family_shapes_and_smallest_members() {
        let i1 = tucker_config_matrix(TuckerFamily::I, 1).unwrap();
        assert_eq!(i1.to_text(), "110\n011\n101\n");
        let iii1 = tucker_config_matrix(TuckerFamily::III, 1).unwrap();
        assert_eq!(iii1.to_text(), "1100\n0110\n0101\n");
        let iv = tucker_config_matrix(TuckerFamily::IV, 1).unwrap();
        assert_eq!(iv.to_text(), "110000\n001100\n000011\n010101\n");
        let v = tucker_config_matrix(TuckerFamily::V, 1).unwrap();
        assert_eq!(v.to_text(), "11000\n11110\n00110\n10011\n");

        for k in 1..=4 {
            let i = tucker_config_matrix(TuckerFamily::I, k).unwrap();
            assert_eq!((i.rows(), i.cols()), (k + 2, k + 2));
            let ii = tucker_config_matrix(TuckerFamily::II, k).unwrap();
            assert_eq!((ii.rows(), ii.cols()), (k + 3, k + 3));
            let iii = tucker_config_matrix(TuckerFamily::III, k).unwrap();
            assert_eq!((iii.rows(), iii.cols()), (k + 2, k + 3));
        }
        assert!(tucker_config_matrix(TuckerFamily::I, 0).is_err());
    }

    #[test]
    fn ii_1_matches_its_display() {
        let ii1 = tucker_config_matrix(TuckerFamily::II, 1).unwrap();
        assert_eq!(ii1.to_text(), "1100\n0110\n1101\n0111\n");
    }

    #[test]
    fn forbidden_families_are_never_c1r() {
        for family in TuckerFamily::ALL {
            for k in 1..=3 {
                let cfg = tucker_config_matrix(family, k).unwrap();
                assert!(!is_c1r(&cfg), "{family} k={k} must not be C1R");
            }
        }
    }

    #[test]
    fn configuration_containment() {
        let i1 = tucker_config_matrix(TuckerFamily::I, 1).unwrap();
        // Every matrix contains itself.
        let (rows, cols) = contains_configuration(&i1, &i1).unwrap();
        assert_eq!((rows, cols), (vec![0, 1, 2], vec![0, 1, 2]));

        // The three weight-two column patterns hidden among others, with
        // rows and columns scrambled.
        let host = m("011010\n110011\n101001");
        let (rows, cols) = contains_configuration(&host, &i1).unwrap();
        assert_eq!(rows, vec![0, 1, 2]);
        assert_eq!(cols.len(), 3);

        // A C1R matrix contains no member of any forbidden family.
        let clean = m("11000\n00110\n10000\n01110");
        for family in TuckerFamily::ALL {
            let cfg = tucker_config_matrix(family, 1).unwrap();
            assert!(contains_configuration(&clean, &cfg).is_none(), "{family}");
        }
        // Configurations larger than the host cannot occur.
        assert!(contains_configuration(&i1, &tucker_config_matrix(TuckerFamily::II, 1).unwrap()).is_none());
    }

    #[test]
    fn split_encoding_round_trip() {
        let n = 5;
        let ss = SplitSystem::new(
            n,
            [
                Split::new(n, &[3, 4, 5]).unwrap(),
                Split::new(n, &[1, 3, 5]).unwrap(), // block {2,4}
                Split::new(n, &[2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let rc = splits_to_rowclass(&ss);
        assert_eq!(rc.matrix().to_text(), "00111\n01010\n01100\n");
        let back = rowclass_to_splits(&rc).unwrap();
        assert_eq!(back, ss);
    }

    #[test]
    fn split_encoding_is_insertion_order_independent() {
        let n = 5;
        let a = Split::new(n, &[3, 4, 5]).unwrap();
        let b = Split::new(n, &[2, 4]).unwrap();
        let c = Split::new(n, &[2, 3, 5]).unwrap();
        let ss1 = SplitSystem::new(n, [a, b, c]).unwrap();
        let ss2 = SplitSystem::new(n, [c, a, b]).unwrap();
        assert_eq!(splits_to_rowclass(&ss1), splits_to_rowclass(&ss2));
    }

    #[test]
    fn decode_rejects_non_encodings() {
        let trivial = RowClass::new(m("01000\n00110"));
        assert!(rowclass_to_splits(&trivial).is_err());
        let first_col = RowClass::new(m("11000\n00110"));
        assert!(rowclass_to_splits(&first_col).is_err());
        let dup = RowClass::new(m("00110\n00110"));
        assert!(rowclass_to_splits(&dup).is_err());
    }

    #[test]
    fn agrees_with_bruteforce_on_all_three_row_split_encodings() {
        // Every 3-subset of non-trivial splits over n = 5, checked against
        // the factorial oracle, witnesses included.
        let all = splits::all_nontrivial_splits(5);
        let mut checked = 0;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                for k in j + 1..all.len() {
                    let ss = SplitSystem::new(5, [all[i], all[j], all[k]]).unwrap();
                    let mat = splits_to_rowclass(&ss).matrix().clone();
                    let fast = c1r_witness(&mat);
                    let slow = c1r_bruteforce(&mat);
                    assert_eq!(fast.is_some(), slow.is_some(), "{mat:?}");
                    if let (Some(f), Some(s)) = (&fast, &slow) {
                        assert_eq!(f.order(), s.order(), "lex-least witness {mat:?}");
                    }
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 120); // C(10, 3)
    }

    #[test]
    fn agrees_with_bruteforce_on_random_small_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0c1);
        for _ in 0..400 {
            let rows = rng.random_range(1..=5usize);
            let cols = rng.random_range(1..=6usize);
            let bits: Vec<u64> = (0..rows)
                .map(|_| rng.random_range(0..(1u64 << cols)))
                .collect();
            let mat = BinaryMatrix::from_bits(cols, bits).unwrap();
            let fast = c1r_witness(&mat);
            let slow = c1r_bruteforce(&mat);
            assert_eq!(fast.is_some(), slow.is_some(), "{mat:?}");
            if let (Some(f), Some(s)) = (&fast, &slow) {
                assert_eq!(f.order(), s.order(), "{mat:?}");
            }
            let fast_circ = circ1r_witness(&mat);
            let slow_circ = circ1r_bruteforce(&mat);
            assert_eq!(fast_circ.is_some(), slow_circ.is_some(), "{mat:?}");
        }
    }

    #[test]
    fn empty_and_degenerate_matrices() {
        let empty_rows = BinaryMatrix::from_bits(4, vec![]).unwrap();
        assert_eq!(c1r_witness(&empty_rows).unwrap().order(), &[0, 1, 2, 3]);
        let zero = BinaryMatrix::from_bits(3, vec![0, 0]).unwrap();
        assert!(is_c1r(&zero));
        let full = BinaryMatrix::from_bits(3, vec![0b111]).unwrap();
        assert!(is_c1r(&full));
    }
}
