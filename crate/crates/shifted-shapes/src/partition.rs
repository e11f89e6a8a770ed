//! Strict, ordinary and odd integer partitions.
//!
//! Strict partitions index shifted Young diagrams; odd partitions index the
//! conjugacy classes on which spin characters live. All types are immutable
//! values with exact integer data.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Error raised by partition constructors on malformed part lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidPartition(pub String);

impl fmt::Display for InvalidPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid partition: {}", self.0)
    }
}

impl std::error::Error for InvalidPartition {}

macro_rules! fmt_parts {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "(")?;
            for (i, p) in self.parts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        }
    };
}

/// A strictly decreasing sequence of positive integers.
///
/// The empty partition is allowed and stands for the empty diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, InvalidPartition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(InvalidPartition(format!(
                "not strictly decreasing: {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The staircase partition (k, k-1, ..., 1).
    pub fn staircase(k: u32) -> Self {
        Self {
            parts: (1..=k).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Number of (non-zero) rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The norm `size - length`; its parity splits strict partitions into the
    /// two classes that matter for spin characters.
    pub fn norm(&self) -> u64 {
        self.size() - self.len() as u64
    }

    /// True when the norm is even.
    pub fn is_even_class(&self) -> bool {
        self.norm() % 2 == 0
    }

    /// Boxes of the shifted diagram: row y spans columns y+1 ..= y+part.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &p) in self.parts.iter().enumerate() {
            let y = (i + 1) as u32;
            for x in (y + 1)..=(y + p) {
                out.push((x, y));
            }
        }
        out
    }

    /// Part of row `y` (1-based), zero beyond the last row.
    pub fn part(&self, y: usize) -> u32 {
        self.parts.get(y - 1).copied().unwrap_or(0)
    }

    /// The double: the ordinary partition with Frobenius coordinates
    /// (p_1, ..., p_l | p_1 - 1, ..., p_l - 1).
    pub fn double(&self) -> Partition {
        let l = self.parts.len();
        let mut rows: Vec<u32> = Vec::new();
        for (i, &p) in self.parts.iter().enumerate() {
            rows.push(p + i as u32 + 1);
        }
        // column lengths of the first l columns are p_i - 1 + i
        let col_len: Vec<u32> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p + i as u32)
            .collect();
        let max_col = col_len.first().copied().unwrap_or(0);
        for r in (l as u32 + 1)..=max_col {
            let c = col_len.iter().filter(|&&cl| cl >= r).count() as u32;
            if c > 0 {
                rows.push(c);
            }
        }
        Partition::new(rows).expect("double of a strict partition is a partition")
    }

    /// Shapes obtained by removing one box (predecessors in the Schur graph).
    pub fn shrink(&self) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            let mut q = self.parts.clone();
            q[i] -= 1;
            if q[i] == 0 {
                if i == self.parts.len() - 1 {
                    q.pop();
                    out.push(Self { parts: q });
                }
            } else if i + 1 == self.parts.len() || q[i] > self.parts[i + 1] {
                out.push(Self { parts: q });
            }
        }
        out
    }

    /// Shapes obtained by adding one box (successors in the Schur graph).
    pub fn grow(&self) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            if i == 0 || self.parts[i] + 1 < self.parts[i - 1] {
                let mut q = self.parts.clone();
                q[i] += 1;
                out.push(Self { parts: q });
            }
        }
        match self.parts.last() {
            Some(&p) if p > 1 => {
                let mut q = self.parts.clone();
                q.push(1);
                out.push(Self { parts: q });
            }
            None => out.push(Self { parts: vec![1] }),
            _ => {}
        }
        out
    }

    /// All strict partitions of n, in reverse lexicographic order.
    pub fn all(n: u64) -> Vec<StrictPartition> {
        fn rec(n: u64, max: u64) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            let top = n.min(max);
            for p in (1..=top).rev() {
                for mut rest in rec(n - p, p - 1) {
                    let mut v = vec![p as u32];
                    v.append(&mut rest);
                    out.push(v);
                }
            }
            out
        }
        rec(n, n).into_iter().map(|parts| Self { parts }).collect()
    }
}

impl fmt::Display for StrictPartition {
    fmt_parts!();
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = InvalidPartition;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, InvalidPartition> {
        if parts.iter().any(|&p| p == 0) {
            return Err(InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(InvalidPartition(format!(
                "not weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sorted merge with another partition (concatenation product).
    pub fn concat(&self, other: &Partition) -> Partition {
        let mut parts: Vec<u32> = self.parts.iter().chain(&other.parts).copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Pad with `k` trailing ones.
    pub fn pad_ones(&self, k: u64) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat(1).take(k as usize));
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fmt_parts!();
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = InvalidPartition;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

/// A partition with all parts odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct OddPartition {
    parts: Vec<u32>,
}

impl OddPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, InvalidPartition> {
        if parts.iter().any(|&p| p % 2 == 0) {
            return Err(InvalidPartition(format!("even part in {parts:?}")));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(InvalidPartition(format!(
                "not weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn single(k: u32) -> Result<Self, InvalidPartition> {
        Self::new(vec![k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The norm `size - length`. Always even for odd partitions: every part
    /// contributes part-1, an even number.
    pub fn norm(&self) -> u64 {
        self.size() - self.len() as u64
    }

    /// The weight `size + length`; this is the filtration degree.
    pub fn weight(&self) -> u64 {
        self.size() + self.len() as u64
    }

    /// Concatenation product, re-sorted decreasingly.
    pub fn concat(&self, other: &OddPartition) -> OddPartition {
        let mut parts: Vec<u32> = self.parts.iter().chain(&other.parts).copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        OddPartition { parts }
    }

    /// View as an ordinary partition padded with `n - size` ones.
    pub fn pad_to(&self, n: u64) -> Partition {
        assert!(self.size() <= n, "cannot pad {self} to smaller size {n}");
        Partition::new(self.parts.clone())
            .expect("odd partition is a partition")
            .pad_ones(n - self.size())
    }

    /// True when the partition is (1^k) for some k >= 0.
    pub fn is_all_ones(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// The order of the centralizer: prod_k k^{m_k} m_k!.
    pub fn z_factor(&self) -> BigInt {
        let mut z = BigInt::from(1);
        let mut i = 0;
        while i < self.parts.len() {
            let k = self.parts[i];
            let mut m = 0u32;
            while i < self.parts.len() && self.parts[i] == k {
                m += 1;
                i += 1;
            }
            for _ in 0..m {
                z *= BigInt::from(k);
            }
            z *= factorial(m as u64);
        }
        z
    }

    /// All odd partitions of n, in reverse lexicographic order.
    pub fn all(n: u64) -> Vec<OddPartition> {
        fn rec(n: u64, max: u64) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            let mut p = n.min(max);
            if p % 2 == 0 {
                p -= 1;
            }
            while p >= 1 {
                for mut rest in rec(n - p, p) {
                    let mut v = vec![p as u32];
                    v.append(&mut rest);
                    out.push(v);
                }
                if p == 1 {
                    break;
                }
                p -= 2;
            }
            out
        }
        rec(n, n).into_iter().map(|parts| Self { parts }).collect()
    }

    /// All odd partitions of every size up to and including n.
    pub fn all_up_to(n: u64) -> Vec<OddPartition> {
        (0..=n).flat_map(Self::all).collect()
    }
}

impl fmt::Display for OddPartition {
    fmt_parts!();
}

impl From<OddPartition> for Vec<u32> {
    fn from(p: OddPartition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<u32>> for OddPartition {
    type Error = InvalidPartition;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::from(1);
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

/// Falling power n (n-1) ... (n-k+1).
pub fn falling(n: u64, k: u64) -> BigInt {
    let mut f = BigInt::from(1);
    for i in 0..k {
        f *= BigInt::from(n as i64 - i as i64);
    }
    f
}
