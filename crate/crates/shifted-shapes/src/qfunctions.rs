//! Schur Q-functions expanded in the power-sum basis.
//!
//! The generating series `sum_n q_n t^n = prod_i (1 + x_i t)/(1 - x_i t)`
//! gives `q_n` as a polynomial in the odd power sums; `Q_xi` follows by the
//! Pfaffian expansion `Q_xi = sum_j (-1)^j Q_(xi_1, xi_j) Q_(xi minus rows 1, j)`
//! with `Q_(a,b) = q_a q_b + 2 sum_i (-1)^i q_(a+i) q_(b-i)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::partition::{OddPartition, StrictPartition};
use crate::{rat, Rat};

/// A polynomial in the odd power sums p_1, p_3, p_5, ...; monomials are odd
/// partitions.
pub type PowerSumPoly = BTreeMap<OddPartition, Rat>;

fn poly_one() -> PowerSumPoly {
    let mut m = PowerSumPoly::new();
    m.insert(OddPartition::empty(), rat(1, 1));
    m
}

fn poly_add_assign(a: &mut PowerSumPoly, b: &PowerSumPoly) {
    for (k, v) in b {
        let e = a.entry(k.clone()).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            a.remove(k);
        }
    }
}

fn poly_mul(a: &PowerSumPoly, b: &PowerSumPoly) -> PowerSumPoly {
    let mut out = PowerSumPoly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k = ka.concat(kb);
            let e = out.entry(k).or_insert_with(Rat::zero);
            *e += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn poly_scale(a: &mut PowerSumPoly, c: &Rat) {
    if c.is_zero() {
        a.clear();
        return;
    }
    for v in a.values_mut() {
        *v *= c;
    }
}

/// The coefficients of `Q_xi` over the odd-partition monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumExpansion {
    pub xi: StrictPartition,
    pub coefficients: PowerSumPoly,
}

impl PowerSumExpansion {
    /// Coefficient of `p_pi`, zero when absent.
    pub fn coefficient(&self, pi: &OddPartition) -> Rat {
        self.coefficients.get(pi).cloned().unwrap_or_else(Rat::zero)
    }
}

/// Memoized computer for `q_n` and `Q_xi`.
#[derive(Debug, Default)]
pub struct QFunctions {
    q: Vec<PowerSumPoly>,
    pairs: HashMap<(u32, u32), PowerSumPoly>,
    full: HashMap<Vec<u32>, PowerSumPoly>,
}

impl QFunctions {
    pub fn new() -> Self {
        Self {
            q: vec![poly_one()],
            pairs: HashMap::new(),
            full: HashMap::new(),
        }
    }

    /// `q_n` via the recursion `n q_n = sum_{k odd <= n} 2 p_k q_{n-k}`.
    pub fn q(&mut self, n: u32) -> PowerSumPoly {
        while self.q.len() <= n as usize {
            let m = self.q.len() as u32;
            let mut acc = PowerSumPoly::new();
            let mut k = 1;
            while k <= m {
                let pk = OddPartition::single(k).unwrap();
                let prev = self.q[(m - k) as usize].clone();
                for (mono, coeff) in prev {
                    let key = mono.concat(&pk);
                    let e = acc.entry(key).or_insert_with(Rat::zero);
                    *e += coeff * rat(2, 1);
                }
                k += 2;
            }
            poly_scale(&mut acc, &rat(1, m as i64));
            acc.retain(|_, v| !v.is_zero());
            self.q.push(acc);
        }
        self.q[n as usize].clone()
    }

    /// Two-row (or one-row) Q-function `Q_(a,b)`.
    fn q_pair(&mut self, a: u32, b: u32) -> PowerSumPoly {
        if b == 0 {
            return self.q(a);
        }
        if let Some(p) = self.pairs.get(&(a, b)) {
            return p.clone();
        }
        let mut out = poly_mul(&self.q(a), &self.q(b));
        for i in 1..=b {
            let mut t = poly_mul(&self.q(a + i), &self.q(b - i));
            poly_scale(&mut t, &rat(2 * if i % 2 == 1 { -1 } else { 1 }, 1));
            poly_add_assign(&mut out, &t);
        }
        self.pairs.insert((a, b), out.clone());
        out
    }

    fn q_full(&mut self, parts: &[u32]) -> PowerSumPoly {
        match parts.len() {
            0 => return poly_one(),
            1 => return self.q(parts[0]),
            2 => return self.q_pair(parts[0], parts[1]),
            _ => {}
        }
        if let Some(p) = self.full.get(parts) {
            return p.clone();
        }
        // pad to even length with a zero row, then expand the Pfaffian
        // along the first row
        let padded: Vec<u32> = if parts.len() % 2 == 0 {
            parts.to_vec()
        } else {
            let mut v = parts.to_vec();
            v.push(0);
            v
        };
        let mut out = PowerSumPoly::new();
        for j in 1..padded.len() {
            let pair = self.q_pair(padded[0], padded[j]);
            let rest: Vec<u32> = padded
                .iter()
                .enumerate()
                .filter(|&(i, &p)| i != 0 && i != j && p > 0)
                .map(|(_, &p)| p)
                .collect();
            let mut term = poly_mul(&pair, &self.q_full(&rest));
            if j % 2 == 0 {
                poly_scale(&mut term, &rat(-1, 1));
            }
            poly_add_assign(&mut out, &term);
        }
        self.full.insert(parts.to_vec(), out.clone());
        out
    }

    /// Expansion of `Q_xi` in the power-sum basis.
    pub fn schur_q_expansion(&mut self, xi: &StrictPartition) -> PowerSumExpansion {
        let coefficients = self.q_full(xi.parts());
        PowerSumExpansion {
            xi: xi.clone(),
            coefficients,
        }
    }
}
