//! Shifted standard and generalized tableaux: validation, enumeration,
//! counting and level sets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::partition::{factorial, StrictPartition};
use crate::rsk::CircledLetter;

/// Raised when an enumeration is requested beyond its configured bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundExceeded {
    pub size: u64,
    pub bound: u64,
}

impl fmt::Display for BoundExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "size {} exceeds enumeration bound {}",
            self.size, self.bound
        )
    }
}

impl std::error::Error for BoundExceeded {}

/// Default bound for exhaustive tableau enumeration.
pub const ENUMERATION_BOUND: u64 = 12;

/// A standard filling of a shifted diagram: entries 1..n, rows and columns
/// strictly increasing. Row `y` (1-based) is stored left to right, its first
/// cell sitting at column `x = y + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftedStandardTableau {
    rows: Vec<Vec<u32>>,
}

impl ShiftedStandardTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, String> {
        let t = Self { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), String> {
        let shape = self.shape();
        let n = shape.size();
        let mut seen = vec![false; n as usize + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                if v == 0 || v as u64 > n {
                    return Err(format!("entry {v} out of range 1..{n}"));
                }
                if seen[v as usize] {
                    return Err(format!("entry {v} repeated"));
                }
                seen[v as usize] = true;
                if i > 0 && row[i - 1] >= v {
                    return Err(format!("row {} not increasing", r + 1));
                }
            }
        }
        for r in 1..self.rows.len() {
            // cell (x, y=r+1) sits above (x, y=r): in row r (0-based r-1) the
            // same column x = (r+1)+1+i corresponds to index x - r - 1 below.
            for (i, &v) in self.rows[r].iter().enumerate() {
                let below = self.rows[r - 1][i + 1];
                if below >= v {
                    return Err(format!("column above {below} not increasing ({v})"));
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> StrictPartition {
        StrictPartition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .expect("tableau rows form a strict partition")
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> u64 {
        self.rows.iter().map(|r| r.len() as u64).sum()
    }

    /// Entry at spec coordinates (x, y), 1-based, `y < x <= y + part`.
    pub fn entry(&self, x: u32, y: u32) -> Option<u32> {
        self.rows
            .get(y as usize - 1)
            .and_then(|row| row.get((x - y - 1) as usize))
            .copied()
    }

    /// The strict partition occupied by entries <= i.
    pub fn level_set(&self, i: u64) -> Result<StrictPartition, String> {
        if i > self.size() {
            return Err(format!("level {i} out of range 0..={}", self.size()));
        }
        let parts: Vec<u32> = self
            .rows
            .iter()
            .map(|row| row.iter().filter(|&&v| v as u64 <= i).count() as u32)
            .take_while(|&c| c > 0)
            .collect();
        Ok(StrictPartition::new(parts).expect("level set of a standard tableau is strict"))
    }
}

impl Serialize for ShiftedStandardTableau {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let shape = self.shape();
        let mut cells = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let y = (r + 1) as u32;
            for (i, &v) in row.iter().enumerate() {
                let x = y + 1 + i as u32;
                cells.push(serde_json::json!({"x": x, "y": y, "v": v, "circled": false}));
            }
        }
        let mut map = ser.serialize_map(Some(2))?;
        map.serialize_entry("shape", shape.parts())?;
        map.serialize_entry("cells", &cells)?;
        map.end()
    }
}

/// A filling by circled-alphabet letters, weakly increasing along rows and
/// columns, with each circled letter at most once per row and each uncircled
/// letter at most once per column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedShiftedTableau {
    rows: Vec<Vec<CircledLetter>>,
}

impl GeneralizedShiftedTableau {
    pub fn new(rows: Vec<Vec<CircledLetter>>) -> Result<Self, String> {
        let t = Self { rows };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<CircledLetter>>) -> Self {
        Self { rows }
    }

    pub fn validate(&self) -> Result<(), String> {
        // shape
        let lens: Vec<u32> = self.rows.iter().map(|r| r.len() as u32).collect();
        if lens.windows(2).any(|w| w[0] <= w[1]) || lens.iter().any(|&l| l == 0) {
            return Err(format!("rows do not form a strict partition: {lens:?}"));
        }
        for (r, row) in self.rows.iter().enumerate() {
            for i in 1..row.len() {
                if row[i - 1] > row[i] {
                    return Err(format!("row {} not weakly increasing", r + 1));
                }
            }
            for i in 0..row.len() {
                if row[i].circled && row[i + 1..].contains(&row[i]) {
                    return Err(format!("circled letter repeated in row {}", r + 1));
                }
            }
        }
        for r in 1..self.rows.len() {
            for (i, &v) in self.rows[r].iter().enumerate() {
                let below = self.rows[r - 1][i + 1];
                if below > v {
                    return Err("column not weakly increasing".into());
                }
                if !v.circled {
                    // scan the full column for an uncircled duplicate
                    let y = (r + 1) as u32;
                    let x = y + 1 + i as u32;
                    for rr in 0..r {
                        let yy = (rr + 1) as u32;
                        if x > yy {
                            if let Some(&other) = self.rows[rr].get((x - yy - 1) as usize) {
                                if other == v {
                                    return Err("uncircled letter repeated in column".into());
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> StrictPartition {
        StrictPartition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .expect("tableau rows form a strict partition")
    }

    pub fn rows(&self) -> &[Vec<CircledLetter>] {
        &self.rows
    }

    pub fn size(&self) -> u64 {
        self.rows.iter().map(|r| r.len() as u64).sum()
    }

    /// Largest letter value used.
    pub fn max_value(&self) -> u32 {
        self.rows
            .iter()
            .flatten()
            .map(|l| l.value)
            .max()
            .unwrap_or(0)
    }
}

impl Serialize for GeneralizedShiftedTableau {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let shape = self.shape();
        let mut cells = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let y = (r + 1) as u32;
            for (i, l) in row.iter().enumerate() {
                let x = y + 1 + i as u32;
                cells.push(serde_json::json!({"x": x, "y": y, "v": l.value, "circled": l.circled}));
            }
        }
        let mut map = ser.serialize_map(Some(2))?;
        map.serialize_entry("shape", shape.parts())?;
        map.serialize_entry("cells", &cells)?;
        map.end()
    }
}

/// Number of shifted standard tableaux of the given shape, by the product
/// formula `n! / (p_1! ... p_l!) * prod_{i<j} (p_i - p_j)/(p_i + p_j)`.
pub fn count_syt(xi: &StrictPartition) -> BigInt {
    let n = xi.size();
    let parts = xi.parts();
    let mut num = factorial(n);
    let mut den = BigInt::one();
    for &p in parts {
        den *= factorial(p as u64);
    }
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            num *= BigInt::from(parts[i] - parts[j]);
            den *= BigInt::from(parts[i] + parts[j]);
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(r.is_zero(), "product formula must divide exactly");
    q
}

/// All shifted standard tableaux of the given shape, sorted by their row
/// representation (deterministic order).
pub fn enumerate_syt(
    xi: &StrictPartition,
    bound: u64,
) -> Result<Vec<ShiftedStandardTableau>, BoundExceeded> {
    let n = xi.size();
    if n > bound {
        return Err(BoundExceeded { size: n, bound });
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = xi.parts().iter().map(|&p| vec![0; p as usize]).collect();
    // place entries 1..n at addable positions
    fn rec(
        rows: &mut Vec<Vec<u32>>,
        filled: &mut Vec<usize>,
        entry: u32,
        n: u64,
        out: &mut Vec<ShiftedStandardTableau>,
    ) {
        if entry as u64 > n {
            let t = ShiftedStandardTableau { rows: rows.clone() };
            out.push(t);
            return;
        }
        for r in 0..rows.len() {
            let i = filled[r];
            if i >= rows[r].len() {
                continue;
            }
            // cell (r, i): needs left neighbour filled (i < filled[r]) --
            // guaranteed by i == filled[r] -- and the cell below it filled:
            // below of (x, y=r+1) is (x, y=r): index i+1 in row r-1.
            if r > 0 && filled[r - 1] < i + 2 {
                continue;
            }
            rows[r][i] = entry;
            filled[r] += 1;
            rec(rows, filled, entry + 1, n, out);
            filled[r] -= 1;
            rows[r][i] = 0;
        }
    }
    let mut filled = vec![0usize; rows.len()];
    rec(&mut rows, &mut filled, 1, n, &mut out);
    out.sort();
    Ok(out)
}

/// Number of generalized shifted tableaux of shape `xi` with letter values in
/// `1..=d`, by exhaustive enumeration with pruning.
pub fn count_generalized(
    xi: &StrictPartition,
    d: u32,
    bound: u64,
) -> Result<BigInt, BoundExceeded> {
    let n = xi.size();
    if n > bound {
        return Err(BoundExceeded { size: n, bound });
    }
    if xi.is_empty() {
        return Ok(BigInt::one());
    }
    if xi.len() as u32 > d {
        // uncircled letters strictly increase along the diagonal columns
        return Ok(BigInt::zero());
    }
    let parts: Vec<usize> = xi.parts().iter().map(|&p| p as usize).collect();
    let letters: Vec<CircledLetter> = (1..=d)
        .flat_map(|v| [CircledLetter::circled(v), CircledLetter::uncircled(v)])
        .collect();
    // fill row-major, top row last (row 1 first)
    let cells: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |i| (r, i)))
        .collect();
    let mut assign: Vec<Vec<Option<CircledLetter>>> =
        parts.iter().map(|&len| vec![None; len]).collect();
    fn ok_at(assign: &[Vec<Option<CircledLetter>>], r: usize, i: usize, l: CircledLetter) -> bool {
        if i > 0 {
            if let Some(left) = assign[r][i - 1] {
                if left > l {
                    return false;
                }
            }
        }
        if r > 0 {
            if let Some(below) = assign[r - 1][i + 1] {
                if below > l {
                    return false;
                }
            }
        }
        if l.circled {
            if assign[r][..i].iter().flatten().any(|&o| o == l) {
                return false;
            }
        } else {
            // column of (r, i): x = (r+2) + i; in row rr: index x - rr - 2
            let x = r + 2 + i;
            for (rr, row) in assign.iter().enumerate().take(r) {
                if x >= rr + 2 {
                    let idx = x - rr - 2;
                    if let Some(Some(o)) = row.get(idx) {
                        if *o == l {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
    fn rec(
        cells: &[(usize, usize)],
        k: usize,
        assign: &mut Vec<Vec<Option<CircledLetter>>>,
        letters: &[CircledLetter],
        count: &mut BigInt,
    ) {
        if k == cells.len() {
            *count += 1;
            return;
        }
        let (r, i) = cells[k];
        for &l in letters {
            if ok_at(assign, r, i, l) {
                assign[r][i] = Some(l);
                rec(cells, k + 1, assign, letters, count);
                assign[r][i] = None;
            }
        }
    }
    let mut count = BigInt::zero();
    rec(&cells, 0, &mut assign, &letters, &mut count);
    Ok(count)
}

/// Convenience: `count_generalized` as u64 (panics on overflow; test sizes only).
pub fn count_generalized_u64(xi: &StrictPartition, d: u32) -> u64 {
    count_generalized(xi, d, ENUMERATION_BOUND)
        .unwrap()
        .to_u64()
        .expect("count fits u64")
}
