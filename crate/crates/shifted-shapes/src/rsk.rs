//! Shifted Robinson–Schensted–Knuth insertion over the circled alphabet.
//!
//! Letters are ordered `(1) < 1 < (2) < 2 < ...` where `(k)` denotes circled k.
//! Insertion proceeds by Schensted row bumping until the bumping path touches
//! the main diagonal, after which it continues by column bumping:
//!
//! * in rows, an uncircled letter bumps the leftmost entry strictly greater
//!   than itself, a circled letter the leftmost entry weakly greater;
//! * in columns the roles swap (circled strict, uncircled weak);
//! * a circled letter that would bump a diagonal entry of its own value
//!   passes through the diagonal instead, losing its circle;
//! * any other letter bumped from the diagonal continues by column insertion
//!   into the next column.
//!
//! The recording tableau gets the step number in the new cell, circled when
//! the insertion ended in column mode. Several insertion variants exist in
//! the literature; this one is certified by exhaustive bijectivity, counting
//! and Plancherel checks in the test suite (and in the `acceptance`
//! integration tests).

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::partition::StrictPartition;
use crate::tableaux::GeneralizedShiftedTableau;

/// A letter of the circled alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircledLetter {
    pub value: u32,
    pub circled: bool,
}

impl CircledLetter {
    pub fn circled(value: u32) -> Self {
        Self {
            value,
            circled: true,
        }
    }

    pub fn uncircled(value: u32) -> Self {
        Self {
            value,
            circled: false,
        }
    }

    /// Position in the total order `(1) < 1 < (2) < 2 < ...`.
    fn key(self) -> u64 {
        2 * self.value as u64 - self.circled as u64
    }
}

impl PartialOrd for CircledLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CircledLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for CircledLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.circled {
            write!(f, "c{}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// A word over the circled alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircledWord(pub Vec<CircledLetter>);

impl CircledWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parse comma-separated tokens, `3` for uncircled and `c3` for circled.
    pub fn parse(s: &str) -> Result<Self, RskError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self(Vec::new()));
        }
        let mut letters = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (circ, digits) = match tok.strip_prefix('c') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let value: u32 = digits
                .parse()
                .map_err(|_| RskError(format!("bad letter token {tok:?}")))?;
            if value == 0 {
                return Err(RskError("letter values start at 1".into()));
            }
            letters.push(CircledLetter {
                value,
                circled: circ,
            });
        }
        Ok(Self(letters))
    }
}

impl fmt::Display for CircledWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Error for malformed RSK input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RskError(pub String);

impl fmt::Display for RskError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rsk error: {}", self.0)
    }
}

impl std::error::Error for RskError {}

/// Recording tableau: standard entries with circle flags, diagonal uncircled.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecordingTableau {
    rows: Vec<Vec<(u32, bool)>>,
}

impl RecordingTableau {
    pub fn rows(&self) -> &[Vec<(u32, bool)>] {
        &self.rows
    }

    pub fn shape(&self) -> StrictPartition {
        StrictPartition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .expect("recording tableau rows form a strict partition")
    }

    pub fn size(&self) -> u64 {
        self.rows.iter().map(|r| r.len() as u64).sum()
    }

    /// The underlying standard tableau, circles dropped.
    pub fn standard(&self) -> crate::tableaux::ShiftedStandardTableau {
        crate::tableaux::ShiftedStandardTableau::new(
            self.rows
                .iter()
                .map(|r| r.iter().map(|&(v, _)| v).collect())
                .collect(),
        )
        .expect("recording tableau is standard")
    }

    pub fn validate(&self) -> Result<(), String> {
        self.standard().shape(); // row shape check via constructor above
        for row in &self.rows {
            if let Some(&(_, true)) = row.first() {
                return Err("circled diagonal entry in recording tableau".into());
            }
        }
        Ok(())
    }
}

impl Serialize for RecordingTableau {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let shape = self.shape();
        let mut cells = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let y = (r + 1) as u32;
            for (i, &(v, c)) in row.iter().enumerate() {
                let x = y + 1 + i as u32;
                cells.push(serde_json::json!({"x": x, "y": y, "v": v, "circled": c}));
            }
        }
        let mut map = ser.serialize_map(Some(2))?;
        map.serialize_entry("shape", shape.parts())?;
        map.serialize_entry("cells", &cells)?;
        map.end()
    }
}

/// Insertion and recording tableaux of common shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableauPair {
    pub p: GeneralizedShiftedTableau,
    pub q: RecordingTableau,
}

impl TableauPair {
    pub fn shape(&self) -> StrictPartition {
        self.p.shape()
    }
}

/// The common shape of a pair.
pub fn shape_of(pair: &TableauPair) -> StrictPartition {
    pair.shape()
}

/// Incremental insertion state; rows share the layout of
/// [`GeneralizedShiftedTableau`].
#[derive(Debug, Clone, Default)]
pub struct Insertion {
    rows: Vec<Vec<CircledLetter>>,
}

impl Insertion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn shape(&self) -> StrictPartition {
        StrictPartition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .expect("insertion state keeps a strict shape")
    }

    pub fn row_lengths(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.len() as u32).collect()
    }

    pub fn into_tableau(self) -> GeneralizedShiftedTableau {
        GeneralizedShiftedTableau::from_rows_unchecked(self.rows)
    }

    /// Insert one letter; returns the new cell `(x, y)` in diagram coordinates
    /// and whether the bumping path ended in column mode.
    pub fn insert(&mut self, letter: CircledLetter) -> (u32, u32, bool) {
        let mut v = letter;
        let mut r = 0usize; // 0-based row index in row mode
        loop {
            if r == self.rows.len() {
                self.rows.push(vec![v]);
                let y = (r + 1) as u32;
                return (y + 1, y, false);
            }
            let row = &mut self.rows[r];
            // leftmost entry strictly (uncircled v) or weakly (circled v)
            // greater than v
            let idx = if v.circled {
                row.partition_point(|e| *e < v)
            } else {
                row.partition_point(|e| *e <= v)
            };
            if idx == row.len() {
                row.push(v);
                let y = (r + 1) as u32;
                return (y + row.len() as u32, y, false);
            }
            if idx == 0 {
                // the bump hits the diagonal cell of row r
                let y = (r + 1) as u32;
                let next_col = y + 2;
                if v.circled && row[0].value == v.value {
                    // same value: pass through the diagonal, dropping the circle
                    v = CircledLetter::uncircled(v.value);
                } else {
                    std::mem::swap(&mut row[0], &mut v);
                }
                return self.column_insert(v, next_col);
            }
            std::mem::swap(&mut row[idx], &mut v);
            r += 1;
        }
    }

    /// Column insertion phase; bumped letters move one column to the right.
    fn column_insert(&mut self, mut v: CircledLetter, mut x: u32) -> (u32, u32, bool) {
        loop {
            // rows holding a cell of column x form the contiguous range
            // [0, hi): row r covers column x iff x - r - 2 < len(r)
            let cap = (self.rows.len() as u32).min(x.saturating_sub(1)) as usize;
            let hi = partition_point(cap, |r| (x as usize) < r + 2 + self.rows[r].len());
            // first entry strictly (circled v) or weakly (uncircled v)
            // greater than v, scanning up the column
            let pos = partition_point(hi, |r| {
                let e = self.rows[r][(x as usize) - r - 2];
                if v.circled {
                    e <= v
                } else {
                    e < v
                }
            });
            if pos == hi {
                // append at the top of the column
                let r_new = hi;
                assert!(
                    r_new < self.rows.len() && (x as usize) == r_new + 2 + self.rows[r_new].len(),
                    "column append fell outside the diagram"
                );
                self.rows[r_new].push(v);
                return (x, (r_new + 1) as u32, true);
            }
            let idx = (x as usize) - pos - 2;
            std::mem::swap(&mut self.rows[pos][idx], &mut v);
            x += 1;
        }
    }
}

/// First index in `0..len` where `pred` turns false; `pred` must be monotone.
fn partition_point(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0usize, len);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Shifted RSK of a word over the alphabet with values `1..=d`.
pub fn rsk(word: &CircledWord, d: u32) -> Result<TableauPair, RskError> {
    for l in &word.0 {
        if l.value == 0 || l.value > d {
            return Err(RskError(format!("letter {l} outside alphabet of size {d}")));
        }
    }
    Ok(rsk_unchecked(&word.0))
}

fn rsk_unchecked(letters: &[CircledLetter]) -> TableauPair {
    let mut ins = Insertion::new();
    let mut q_rows: Vec<Vec<(u32, bool)>> = Vec::new();
    for (step, &l) in letters.iter().enumerate() {
        let (x, y, col_mode) = ins.insert(l);
        let r = (y - 1) as usize;
        if r == q_rows.len() {
            q_rows.push(Vec::new());
        }
        debug_assert_eq!(x, y + 1 + q_rows[r].len() as u32, "Q grows at the new cell");
        let diagonal = x == y + 1;
        debug_assert!(
            !(diagonal && col_mode),
            "column insertion never creates diagonal cells"
        );
        q_rows[r].push((step as u32 + 1, col_mode && !diagonal));
    }
    TableauPair {
        p: ins.into_tableau(),
        q: RecordingTableau { rows: q_rows },
    }
}

/// Shifted Robinson–Schensted of a circled permutation: distinct values
/// `1..=n`, one circle flag per position.
pub fn rs_circled_permutation(perm: &[u32], circles: &[bool]) -> Result<TableauPair, RskError> {
    let n = perm.len();
    if circles.len() != n {
        return Err(RskError("one circle flag per position required".into()));
    }
    let mut seen = vec![false; n + 1];
    for &v in perm {
        if v == 0 || v as usize > n || seen[v as usize] {
            return Err(RskError(format!("not a permutation of 1..{n}: value {v}")));
        }
        seen[v as usize] = true;
    }
    let letters: Vec<CircledLetter> = perm
        .iter()
        .zip(circles)
        .map(|(&v, &c)| CircledLetter {
            value: v,
            circled: c,
        })
        .collect();
    Ok(rsk_unchecked(&letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::StrictPartition;
    use crate::tableaux::{count_generalized_u64, count_syt};
    use num_traits::ToPrimitive;
    use std::collections::{HashMap, HashSet};

    fn all_words(n: usize, d: u32) -> Vec<Vec<CircledLetter>> {
        let letters: Vec<CircledLetter> = (1..=d)
            .flat_map(|v| [CircledLetter::circled(v), CircledLetter::uncircled(v)])
            .collect();
        let mut out: Vec<Vec<CircledLetter>> = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    letters.iter().map(move |&l| {
                        let mut w2 = w.clone();
                        w2.push(l);
                        w2
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn single_letters_and_empty() {
        let pair = rsk(&CircledWord::parse("1").unwrap(), 1).unwrap();
        assert_eq!(pair.shape().parts(), &[1]);
        assert_eq!(pair.p.rows()[0][0], CircledLetter::uncircled(1));
        assert_eq!(pair.q.rows()[0][0], (1, false));

        let pair = rsk(&CircledWord::parse("").unwrap(), 1).unwrap();
        assert!(pair.shape().is_empty());
    }

    #[test]
    fn rejects_out_of_alphabet() {
        assert!(rsk(&CircledWord::parse("3").unwrap(), 2).is_err());
        assert!(rs_circled_permutation(&[1, 1], &[false, false]).is_err());
        assert!(rs_circled_permutation(&[1, 3], &[false, false]).is_err());
    }

    #[test]
    fn four_words_over_a1() {
        let mut pairs = HashSet::new();
        for w in all_words(2, 1) {
            let pair = rsk_unchecked(&w);
            assert_eq!(pair.shape().parts(), &[2]);
            pair.p.validate().unwrap();
            pair.q.validate().unwrap();
            pairs.insert(format!("{:?}", pair));
        }
        assert_eq!(pairs.len(), 4);
    }

    #[test]
    fn bijectivity_certificate() {
        // injectivity + valid pairs + per-shape counting for n <= 4, d <= 2
        for d in 1..=2u32 {
            for n in 0..=4usize {
                let mut seen = HashSet::new();
                let mut by_shape: HashMap<StrictPartition, u64> = HashMap::new();
                for w in all_words(n, d) {
                    let pair = rsk_unchecked(&w);
                    pair.p.validate().unwrap();
                    pair.q.validate().unwrap();
                    assert_eq!(pair.p.shape(), pair.q.shape());
                    // content preservation on values
                    let mut wv: Vec<u32> = w.iter().map(|l| l.value).collect();
                    let mut pv: Vec<u32> =
                        pair.p.rows().iter().flatten().map(|l| l.value).collect();
                    wv.sort_unstable();
                    pv.sort_unstable();
                    assert_eq!(wv, pv);
                    *by_shape.entry(pair.shape()).or_default() += 1;
                    assert!(seen.insert(format!("{pair:?}")), "pair collision");
                }
                for xi in StrictPartition::all(n as u64) {
                    let want = count_generalized_u64(&xi, d)
                        * (1u64 << (n as u64 - xi.len() as u64))
                        * count_syt(&xi).to_u64().unwrap();
                    assert_eq!(
                        by_shape.get(&xi).copied().unwrap_or(0),
                        want,
                        "n={n} d={d} {xi}"
                    );
                }
            }
        }
    }

    #[test]
    fn prefix_shapes_match_recording_level_sets() {
        for w in all_words(4, 2) {
            let pair = rsk_unchecked(&w);
            let q = pair.q.standard();
            for i in 0..=w.len() {
                let prefix = rsk_unchecked(&w[..i]);
                assert_eq!(prefix.shape(), q.level_set(i as u64).unwrap());
            }
        }
    }

    #[test]
    fn circled_permutations_reproduce_plancherel_counts() {
        // over all 2^n n! circled permutations the shape multiplicity is
        // 2^(2n-l) g^2
        for n in 1..=5usize {
            let mut counts: HashMap<StrictPartition, u64> = HashMap::new();
            let mut perm: Vec<u32> = (1..=n as u32).collect();
            permute(&mut perm, 0, &mut |p| {
                for mask in 0u32..(1 << n) {
                    let circles: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                    let pair = rs_circled_permutation(p, &circles).unwrap();
                    *counts.entry(pair.shape()).or_default() += 1;
                }
            });
            for xi in StrictPartition::all(n as u64) {
                let g = count_syt(&xi).to_u64().unwrap();
                let want = (1u64 << (2 * n as u64 - xi.len() as u64)) * g * g;
                assert_eq!(counts.get(&xi).copied().unwrap_or(0), want, "n={n} {xi}");
            }
        }
    }

    fn permute(v: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn n2_shape_is_always_a_row() {
        let mut perm = vec![1u32, 2];
        permute(&mut perm, 0, &mut |p| {
            for mask in 0u32..4 {
                let circles = vec![mask & 1 == 1, mask & 2 == 2];
                let pair = rs_circled_permutation(p, &circles).unwrap();
                assert_eq!(pair.shape().parts(), &[2]);
            }
        });
    }

    #[test]
    fn word_parse_round_trip() {
        let w = CircledWord::parse("c3, 1,2 ,c1").unwrap();
        assert_eq!(w.0.len(), 4);
        assert_eq!(w.0[0], CircledLetter::circled(3));
        assert_eq!(w.to_string(), "c3,1,2,c1");
        assert!(CircledWord::parse("x2").is_err());
        assert!(CircledWord::parse("0").is_err());
    }

    #[test]
    fn pair_json_has_both_tableaux() {
        let pair = rsk(&CircledWord::parse("1,c2,1").unwrap(), 2).unwrap();
        let j = serde_json::to_value(&pair).unwrap();
        assert!(j["p"]["shape"].is_array());
        assert!(j["q"]["cells"].is_array());
    }
}
