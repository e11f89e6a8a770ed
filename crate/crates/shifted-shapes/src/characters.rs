//! Spin character ratios, probability measures on strict partitions,
//! cumulants and the exact desk-scale identities.
//!
//! Character ratios are read off the power-sum expansion of the Schur
//! Q-functions: `chi^xi(pi) = B(pi) c_pi(xi) / c_(1^n)(xi)` where the
//! coefficient ratio is taken for the padded class `pi cup 1^(n-|pi|)` and
//! `B` depends on the class only. `B` is calibrated once from the d = 1
//! Schur--Weyl identity (where the measure concentrates on the one-row
//! shape); the closed form `z_pi 2^(|pi|-l)/2 / n!` is checked against the
//! calibration in the tests, and the d = 2, 3 identities validate it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::partition::{factorial, falling, OddPartition, Partition, StrictPartition};
use crate::profile::ZigzagProfile;
use crate::qfunctions::{PowerSumExpansion, QFunctions};
use crate::tableaux::{count_generalized, count_syt, BoundExceeded};
use crate::{rat, rat_to_f64, Rat};

/// Default size bound for the exact character oracle.
pub const ORACLE_BOUND: u64 = 9;

/// Default size bound for linear (Murnaghan--Nakayama) characters.
pub const LINEAR_BOUND: u64 = 12;

fn big_to_rat(b: BigInt) -> Rat {
    Rat::from_integer(b)
}

fn pow2_rat(k: i64) -> Rat {
    if k >= 0 {
        big_to_rat(BigInt::from(2).pow(k as u32))
    } else {
        Rat::new(BigInt::one(), BigInt::from(2).pow((-k) as u32))
    }
}

/// Exact oracle for spin character ratios on `SP_n`, `n <= bound`.
pub struct SpinOracle {
    bound: u64,
    qf: QFunctions,
    expansions: HashMap<StrictPartition, PowerSumExpansion>,
    calibration: HashMap<OddPartition, Rat>,
}

impl SpinOracle {
    pub fn new(bound: u64) -> Self {
        Self {
            bound,
            qf: QFunctions::new(),
            expansions: HashMap::new(),
            calibration: HashMap::new(),
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Power-sum expansion of `Q_xi`.
    pub fn schur_q_expansion(
        &mut self,
        xi: &StrictPartition,
    ) -> Result<&PowerSumExpansion, BoundExceeded> {
        if xi.size() > self.bound {
            return Err(BoundExceeded {
                size: xi.size(),
                bound: self.bound,
            });
        }
        if !self.expansions.contains_key(xi) {
            let e = self.qf.schur_q_expansion(xi);
            self.expansions.insert(xi.clone(), e);
        }
        Ok(&self.expansions[xi])
    }

    /// Class-only calibration factor for a padded class `pi` with `|pi| = n`,
    /// fixed by the d = 1 Schur--Weyl identity
    /// `chi^(n)(pi) = (sqrt 2)^(-|pi| + l(pi))`.
    fn calibration_b(&mut self, pi: &OddPartition) -> Rat {
        if let Some(b) = self.calibration.get(pi) {
            return b.clone();
        }
        let n = pi.size();
        let row = StrictPartition::new(vec![n as u32]).expect("one-row shape");
        let e = self.qf.schur_q_expansion(&row);
        let ones = OddPartition::new(vec![1; n as usize]).unwrap();
        let c_pi = e.coefficient(pi);
        let c_ones = e.coefficient(&ones);
        assert!(!c_pi.is_zero(), "q_n has positive coefficients");
        // ||pi|| is even for every odd partition
        debug_assert_eq!(pi.norm() % 2, 0);
        let b = pow2_rat(-(pi.norm() as i64) / 2) * c_ones / c_pi;
        self.calibration.insert(pi.clone(), b.clone());
        b
    }

    /// The closed form of the calibration factor, `z_pi 2^(||pi||/2) / n!`.
    pub fn calibration_closed_form(pi: &OddPartition) -> Rat {
        big_to_rat(pi.z_factor()) * pow2_rat(pi.norm() as i64 / 2)
            / big_to_rat(factorial(pi.size()))
    }

    /// Character ratio `chi^xi(pi)` for `|pi| <= |xi|`, using the padding
    /// extension `chi(pi) = chi(pi cup 1^(n - |pi|))`.
    pub fn char_ratio(
        &mut self,
        xi: &StrictPartition,
        pi: &OddPartition,
    ) -> Result<Rat, BoundExceeded> {
        let n = xi.size();
        assert!(pi.size() <= n, "class {pi} larger than {xi}");
        let padded = pad(pi, n);
        let b = self.calibration_b(&padded);
        let e = self.schur_q_expansion(xi)?;
        let ones = OddPartition::new(vec![1; n as usize]).unwrap();
        let c_pi = e.coefficient(&padded);
        let c_ones = e.coefficient(&ones);
        Ok(b * c_pi / c_ones)
    }

    /// Normalized spin character `Ch^spin_pi(xi)`:
    /// `n^(falling |pi|) 2^(||pi||/2) chi^xi(pi)` for `|pi| <= n`, else 0.
    pub fn normalized_spin_char(
        &mut self,
        pi: &OddPartition,
        xi: &StrictPartition,
    ) -> Result<Rat, BoundExceeded> {
        let n = xi.size();
        let k = pi.size();
        if k > n {
            return Ok(Rat::zero());
        }
        let ratio = self.char_ratio(xi, pi)?;
        Ok(big_to_rat(falling(n, k)) * pow2_rat(pi.norm() as i64 / 2) * ratio)
    }

    /// The character-ratio table of the measure-weighted mixture
    /// `chi^V = sum_xi P(xi) chi^xi`.
    pub fn table_of_measure(
        &mut self,
        p: &SPMeasure,
    ) -> Result<CharacterRatioTable, BoundExceeded> {
        let n = p.n;
        let mut values = BTreeMap::new();
        for pi in OddPartition::all(n) {
            let mut acc = Rat::zero();
            for (xi, w) in &p.weights {
                if w.is_zero() {
                    continue;
                }
                acc += w * self.char_ratio(xi, &pi)?;
            }
            values.insert(pi, acc);
        }
        Ok(CharacterRatioTable { n, values })
    }
}

fn pad(pi: &OddPartition, n: u64) -> OddPartition {
    let mut parts: Vec<u32> = pi.parts().to_vec();
    parts.extend(std::iter::repeat(1).take((n - pi.size()) as usize));
    OddPartition::new(parts).expect("padding with ones keeps parts odd")
}

/// A character ratio as a function on `OP_{<= n}`, stored on `OP_n` and
/// extended by the padding convention.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterRatioTable {
    n: u64,
    values: BTreeMap<OddPartition, Rat>,
}

impl CharacterRatioTable {
    pub fn new(n: u64, values: BTreeMap<OddPartition, Rat>) -> Self {
        Self { n, values }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The left-regular character ratio: 1 on `(1^k)`, 0 elsewhere.
    pub fn left_regular(n: u64) -> Self {
        let mut values = BTreeMap::new();
        for pi in OddPartition::all(n) {
            let v = if pi.is_all_ones() {
                Rat::one()
            } else {
                Rat::zero()
            };
            values.insert(pi, v);
        }
        Self { n, values }
    }

    /// The Schur--Weyl character ratio `(sqrt 2 d)^(-||pi||)`.
    pub fn schur_weyl(n: u64, d: u32) -> Self {
        let mut values = BTreeMap::new();
        for pi in OddPartition::all(n) {
            let v = pow_rat(
                &Rat::new(BigInt::one(), BigInt::from(2 * d as u64 * d as u64)),
                pi.norm() / 2,
            );
            values.insert(pi, v);
        }
        Self { n, values }
    }

    /// Evaluate on `OP_{<= n}` via the padding extension.
    pub fn eval(&self, pi: &OddPartition) -> Rat {
        assert!(pi.size() <= self.n, "class {pi} exceeds n = {}", self.n);
        self.values[&pad(pi, self.n)].clone()
    }

    pub fn values(&self) -> &BTreeMap<OddPartition, Rat> {
        &self.values
    }
}

fn pow_rat(base: &Rat, k: u64) -> Rat {
    let mut out = Rat::one();
    for _ in 0..k {
        out *= base;
    }
    out
}

/// Errors from measure construction.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureError {
    Bound(BoundExceeded),
    /// The character system is singular; the oracle is inconsistent.
    SingularSystem,
    /// The solved coefficients are not a probability vector.
    NotProbability(String),
}

impl fmt::Display for MeasureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureError::Bound(b) => write!(f, "{b}"),
            MeasureError::SingularSystem => write!(f, "singular character system"),
            MeasureError::NotProbability(s) => write!(f, "not a probability vector: {s}"),
        }
    }
}

impl std::error::Error for MeasureError {}

impl From<BoundExceeded> for MeasureError {
    fn from(b: BoundExceeded) -> Self {
        MeasureError::Bound(b)
    }
}

/// An exact probability measure on `SP_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SPMeasure {
    n: u64,
    weights: BTreeMap<StrictPartition, Rat>,
}

impl SPMeasure {
    pub fn new(n: u64, weights: BTreeMap<StrictPartition, Rat>) -> Result<Self, MeasureError> {
        let total: Rat = weights.values().sum();
        if !total.is_one() {
            return Err(MeasureError::NotProbability(format!("total mass {total}")));
        }
        if weights.values().any(|w| w.is_negative()) {
            return Err(MeasureError::NotProbability("negative weight".into()));
        }
        Ok(Self { n, weights })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn weight(&self, xi: &StrictPartition) -> Rat {
        self.weights.get(xi).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn weights(&self) -> &BTreeMap<StrictPartition, Rat> {
        &self.weights
    }

    /// Expectation of an exact statistic.
    pub fn expectation(&self, f: &mut dyn FnMut(&StrictPartition) -> Rat) -> Rat {
        self.weights.iter().map(|(xi, w)| w * f(xi)).sum()
    }
}

/// The shifted Plancherel measure `2^(n-l) (g^xi)^2 / n!`.
pub fn plancherel_measure(n: u64) -> SPMeasure {
    let mut weights = BTreeMap::new();
    let nf = big_to_rat(factorial(n));
    for xi in StrictPartition::all(n) {
        let g = big_to_rat(count_syt(&xi));
        let w = pow2_rat((n - xi.len() as u64) as i64) * &g * &g / &nf;
        weights.insert(xi, w);
    }
    SPMeasure::new(n, weights).expect("Plancherel weights sum to one")
}

/// The shifted Schur--Weyl measure `N_d(xi) g^xi / (2^l d^n)`.
pub fn schur_weyl_measure(n: u64, d: u32, bound: u64) -> Result<SPMeasure, MeasureError> {
    let mut weights = BTreeMap::new();
    let dn = pow_rat(&rat(d as i64, 1), n);
    for xi in StrictPartition::all(n) {
        let nd = big_to_rat(count_generalized(&xi, d, bound)?);
        let g = big_to_rat(count_syt(&xi));
        let w = nd * g / (pow2_rat(xi.len() as i64) * &dn);
        weights.insert(xi, w);
    }
    Ok(SPMeasure::new(n, weights).expect("Schur-Weyl weights sum to one"))
}

/// Number of saturated chains `zeta -> ... -> mu` in the shifted Young graph.
fn chains_up(zeta: &StrictPartition, mu: &StrictPartition) -> BigInt {
    fn contains(big: &StrictPartition, small: &StrictPartition) -> bool {
        small
            .parts()
            .iter()
            .enumerate()
            .all(|(i, &p)| big.part(i + 1) >= p)
    }
    fn rec(
        zeta: &StrictPartition,
        mu: &StrictPartition,
        memo: &mut HashMap<StrictPartition, BigInt>,
    ) -> BigInt {
        if zeta == mu {
            return BigInt::one();
        }
        if let Some(v) = memo.get(zeta) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for up in zeta.grow() {
            if contains(mu, &up) {
                total += rec(&up, mu, memo);
            }
        }
        memo.insert(zeta.clone(), total.clone());
        total
    }
    if !contains(mu, zeta) {
        return BigInt::zero();
    }
    rec(zeta, mu, &mut HashMap::new())
}

/// Level-set distribution of a uniform tableau with shape `mu`:
/// `P(xi) = g^xi #(chains xi -> mu) / g^mu` on `SP_m`.
pub fn restriction_measure(mu: &StrictPartition, m: u64) -> SPMeasure {
    assert!(m <= mu.size(), "restriction level {m} above |mu|");
    let gmu = big_to_rat(count_syt(mu));
    let mut weights = BTreeMap::new();
    for xi in StrictPartition::all(m) {
        let paths = chains_up(&xi, mu);
        if paths.is_zero() {
            continue;
        }
        let w = big_to_rat(count_syt(&xi)) * big_to_rat(paths) / &gmu;
        weights.insert(xi, w);
    }
    SPMeasure::new(m, weights).expect("restriction weights sum to one")
}

/// Solve `sum_xi P(xi) chi^xi = chi` for the coefficients `P(xi)`; unique by
/// the linear-basis property of the irreducible character ratios.
pub fn measure_from_ratios(
    oracle: &mut SpinOracle,
    chi: &CharacterRatioTable,
) -> Result<SPMeasure, MeasureError> {
    let n = chi.n();
    let shapes = StrictPartition::all(n);
    let classes = OddPartition::all(n);
    assert_eq!(shapes.len(), classes.len(), "|SP_n| = |OP_n|");
    let k = shapes.len();
    // rows: classes; columns: shapes; augmented with chi values
    let mut m: Vec<Vec<Rat>> = Vec::with_capacity(k);
    for pi in &classes {
        let mut row = Vec::with_capacity(k + 1);
        for xi in &shapes {
            row.push(oracle.char_ratio(xi, pi)?);
        }
        row.push(chi.eval(pi));
        m.push(row);
    }
    let sol = solve_exact(&mut m).ok_or(MeasureError::SingularSystem)?;
    let weights: BTreeMap<StrictPartition, Rat> = shapes
        .into_iter()
        .zip(sol)
        .filter(|(_, w)| !w.is_zero())
        .collect();
    SPMeasure::new(n, weights)
}

/// Gaussian elimination over the rationals; `m` is the augmented matrix.
fn solve_exact(m: &mut [Vec<Rat>]) -> Option<Vec<Rat>> {
    let k = m.len();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for v in m[col][col..].iter_mut() {
            *v /= &inv;
        }
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=k {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[k].clone()).collect())
}

/// Murnaghan--Nakayama evaluation of linear symmetric-group characters, with
/// memoization across calls.
#[derive(Default)]
pub struct LinearCharacters {
    cache: HashMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl LinearCharacters {
    pub fn new() -> Self {
        Self::default()
    }

    /// Irreducible character value `chi^lambda(rho)`.
    pub fn value(&mut self, lambda: &Partition, rho: &Partition) -> BigInt {
        assert_eq!(lambda.size(), rho.size(), "class size must match |lambda|");
        self.mn(lambda.parts().to_vec(), rho.parts().to_vec())
    }

    fn mn(&mut self, lambda: Vec<u32>, rho: Vec<u32>) -> BigInt {
        if rho.is_empty() {
            return if lambda.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let key = (lambda.clone(), rho.clone());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let k = rho[0];
        let rest: Vec<u32> = rho[1..].to_vec();
        let l = lambda.len();
        let mut total = BigInt::zero();
        // remove a border strip of size k spanning rows i..=j
        for i in 0..l {
            for j in i..l {
                let mut mu: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
                for r in i..j {
                    mu[r] = lambda[r + 1] as i64 - 1;
                }
                mu[j] = lambda[i] as i64 - k as i64 + (j - i) as i64;
                if mu[j] < 0 {
                    continue;
                }
                if mu.windows(2).any(|w| w[0] < w[1]) {
                    continue;
                }
                let mu: Vec<u32> = mu
                    .into_iter()
                    .filter(|&x| x > 0)
                    .map(|x| x as u32)
                    .collect();
                let sign = if (j - i) % 2 == 1 {
                    -BigInt::one()
                } else {
                    BigInt::one()
                };
                total += sign * self.mn(mu, rest.clone());
            }
        }
        self.cache.insert(key, total.clone());
        total
    }

    /// Dimension `chi^lambda(1^n)`.
    pub fn dim(&mut self, lambda: &Partition) -> BigInt {
        let ones = Partition::empty().pad_ones(lambda.size());
        self.value(lambda, &ones)
    }

    /// Normalized character `Ch_rho(lambda) = n^(falling k) tr rho^lambda(rho cup 1^(n-k))`,
    /// zero when `|rho| > |lambda|`.
    pub fn normalized(&mut self, rho: &Partition, lambda: &Partition) -> Rat {
        let n = lambda.size();
        let k = rho.size();
        if k > n {
            return Rat::zero();
        }
        let class = rho.pad_ones(n - k);
        let v = self.value(lambda, &class);
        let d = self.dim(lambda);
        big_to_rat(falling(n, k)) * big_to_rat(v) / big_to_rat(d)
    }
}

/// Verify `Ch_rho(D(xi)) = sum_(I subset rows of rho) Ch^spin_(rho_I) Ch^spin_(rho_Ic)`
/// for every `xi` in `SP_n`; returns the falsified triples (empty on success).
pub fn dstar_check(
    oracle: &mut SpinOracle,
    linear: &mut LinearCharacters,
    rho: &OddPartition,
    n: u64,
) -> Result<Vec<(StrictPartition, Rat, Rat)>, BoundExceeded> {
    let rho_parts = rho.parts().to_vec();
    let l = rho_parts.len();
    let rho_linear = Partition::new(rho_parts.clone()).expect("odd partition is a partition");
    let mut failures = Vec::new();
    for xi in StrictPartition::all(n) {
        let lhs = linear.normalized(&rho_linear, &xi.double());
        let mut rhs = Rat::zero();
        for mask in 0u32..(1 << l) {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, &p) in rho_parts.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(p);
                } else {
                    b.push(p);
                }
            }
            a.sort_unstable_by(|x, y| y.cmp(x));
            b.sort_unstable_by(|x, y| y.cmp(x));
            let pa = OddPartition::new(a).unwrap();
            let pb = OddPartition::new(b).unwrap();
            rhs +=
                oracle.normalized_spin_char(&pa, &xi)? * oracle.normalized_spin_char(&pb, &xi)?;
        }
        if lhs != rhs {
            failures.push((xi, lhs, rhs));
        }
    }
    Ok(failures)
}

/// Set partitions of `{0, ..., l-1}` as lists of blocks.
fn set_partitions(l: usize) -> Vec<Vec<Vec<usize>>> {
    if l == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for mut p in set_partitions(l - 1) {
        for b in 0..p.len() {
            let mut q = p.clone();
            q[b].push(l - 1);
            out.push(q);
        }
        p.push(vec![l - 1]);
        out.push(p);
    }
    out
}

/// Cumulant of classes with respect to a character ratio:
/// `kappa_l(pi_1, ..., pi_l)` from the set-partition expansion of the formal
/// log-Laplace definition (products of classes are concatenations).
pub fn char_cumulant(chi: &CharacterRatioTable, pis: &[OddPartition]) -> Rat {
    let total: u64 = pis.iter().map(|p| p.size()).sum();
    assert!(total <= chi.n(), "cumulant classes exceed n = {}", chi.n());
    let mut acc = Rat::zero();
    for sigma in set_partitions(pis.len()) {
        let blocks = sigma.len();
        let mut term = mobius_factor(blocks);
        for block in &sigma {
            let mut prod = OddPartition::empty();
            for &i in block {
                prod = prod.concat(&pis[i]);
            }
            term *= chi.eval(&prod);
        }
        acc += term;
    }
    acc
}

/// `(-1)^(b-1) (b-1)!` as a rational.
fn mobius_factor(blocks: usize) -> Rat {
    let mut f = BigInt::one();
    for i in 2..blocks {
        f *= BigInt::from(i);
    }
    if blocks % 2 == 0 {
        f = -f;
    }
    big_to_rat(f)
}

/// Joint cumulant of random variables on `SP_n` under a measure.
pub fn gamma_cumulant(p: &SPMeasure, xs: &[&dyn Fn(&StrictPartition) -> Rat]) -> Rat {
    let mut acc = Rat::zero();
    for sigma in set_partitions(xs.len()) {
        let mut term = mobius_factor(sigma.len());
        for block in &sigma {
            let mut e = Rat::zero();
            for (xi, w) in p.weights() {
                let mut prod = Rat::one();
                for &i in block {
                    prod *= xs[i](xi);
                }
                e += w * prod;
            }
            term *= e;
        }
        acc += term;
    }
    acc
}

/// Cumulant of normalized spin characters with the product replaced by
/// concatenation of classes (the disjoint product).
pub fn disjoint_cumulant(
    oracle: &mut SpinOracle,
    p: &SPMeasure,
    pis: &[OddPartition],
) -> Result<Rat, BoundExceeded> {
    let mut acc = Rat::zero();
    for sigma in set_partitions(pis.len()) {
        let mut term = mobius_factor(sigma.len());
        for block in &sigma {
            let mut prod = OddPartition::empty();
            for &i in block {
                prod = prod.concat(&pis[i]);
            }
            let mut e = Rat::zero();
            for (xi, w) in p.weights() {
                e += w * oracle.normalized_spin_char(&prod, xi)?;
            }
            term *= e;
        }
        acc += term;
    }
    Ok(acc)
}

/// Exponent `c_mu`: the number of even integers in `0..||mu||`.
pub fn bratteli_exponent(mu: &StrictPartition) -> u64 {
    mu.norm().div_ceil(2)
}

/// Dimension of the irreducible superrepresentation: the path sum over the
/// Bratteli diagram with edge multiplicity 2 on even-to-odd norm steps.
pub fn bratteli_dimension(mu: &StrictPartition, bound: u64) -> Result<BigInt, BoundExceeded> {
    if mu.size() > bound {
        return Err(BoundExceeded {
            size: mu.size(),
            bound,
        });
    }
    fn rec(mu: &StrictPartition, memo: &mut HashMap<StrictPartition, BigInt>) -> BigInt {
        if mu.is_empty() {
            return BigInt::one();
        }
        if let Some(v) = memo.get(mu) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for xi in mu.shrink() {
            let m = if xi.is_even_class() && !mu.is_even_class() {
                2
            } else {
                1
            };
            total += BigInt::from(m) * rec(&xi, memo);
        }
        memo.insert(mu.clone(), total.clone());
        total
    }
    Ok(rec(mu, &mut HashMap::new()))
}

/// Scaled cumulant sequence for approximate-factorization diagnostics:
/// per table, `kappa_l(pi_1, ..., pi_l) n^((sum ||pi_i|| + 2(l-1))/2)`.
pub fn afp_diagnostic(tables: &[(u64, CharacterRatioTable)], pis: &[OddPartition]) -> Vec<f64> {
    let norm_sum: u64 = pis.iter().map(|p| p.norm()).sum();
    let ell = pis.len() as u64;
    tables
        .iter()
        .map(|(n, chi)| {
            let kappa = rat_to_f64(&char_cumulant(chi, pis));
            kappa * (*n as f64).powf((norm_sum + 2 * (ell - 1)) as f64 / 2.0)
        })
        .collect()
}

/// Limit constants of a measure family: sparse containers for the first-order
/// constants `r` and the covariance-type constants, valid up to `max_order`.
#[derive(Debug, Clone, Default)]
pub struct LimitConstants {
    pub max_order: u64,
    r: BTreeMap<u64, f64>,
    cov: BTreeMap<(u64, u64), f64>,
}

impl LimitConstants {
    pub fn new(max_order: u64) -> Self {
        Self {
            max_order,
            r: BTreeMap::new(),
            cov: BTreeMap::new(),
        }
    }

    pub fn with_r(mut self, index: u64, value: f64) -> Self {
        assert!(index % 2 == 0, "r indices are even");
        self.r.insert(index, value);
        self
    }

    pub fn with_cov(mut self, i: u64, j: u64, value: f64) -> Self {
        self.cov.insert((i, j), value);
        self
    }

    /// Plancherel limits: `r_2 = 1`, everything else zero.
    pub fn plancherel(max_order: u64) -> Self {
        Self::new(max_order).with_r(2, 1.0)
    }

    /// Schur--Weyl limits for parameter `c`: `r_(k+1) = (c/sqrt 2)^(k-1)`.
    pub fn schur_weyl(c: f64, max_order: u64) -> Self {
        let mut out = Self::new(max_order);
        let mut k = 1u64;
        while k + 1 <= max_order {
            out.r
                .insert(k + 1, (c / std::f64::consts::SQRT_2).powi(k as i32 - 1));
            k += 2;
        }
        out
    }

    pub fn r(&self, index: u64) -> Result<f64, String> {
        if index > self.max_order {
            return Err(format!(
                "r_{index} beyond declared order {}",
                self.max_order
            ));
        }
        Ok(self.r.get(&index).copied().unwrap_or(0.0))
    }

    pub fn cov(&self, i: u64, j: u64) -> Result<f64, String> {
        if i.max(j) > self.max_order {
            return Err(format!(
                "entry ({i},{j}) beyond declared order {}",
                self.max_order
            ));
        }
        Ok(self
            .cov
            .get(&(i, j))
            .or_else(|| self.cov.get(&(j, i)))
            .copied()
            .unwrap_or(0.0))
    }
}

/// Covariance constants of the limiting Gaussian fluctuations:
/// `k_(k1+1,k2+1) = kbullet_(k1+1,k2+1) - 2 k1 k2 r_(k1+1) r_(k2+1)
///  + 2 sum_(r>=1) (k1 k2 / r) sum r_(a_1+b_1) ... r_(a_r+b_r)`
/// over positive tuples with `sum a = k1`, `sum b = k2`, every `a_i + b_i` even.
pub fn clt_covariance(
    r: &LimitConstants,
    kbullet: &LimitConstants,
    k1: u64,
    k2: u64,
) -> Result<f64, String> {
    assert!(k1 % 2 == 1 && k2 % 2 == 1, "k1, k2 must be odd");
    let mut total =
        kbullet.cov(k1 + 1, k2 + 1)? - 2.0 * (k1 * k2) as f64 * r.r(k1 + 1)? * r.r(k2 + 1)?;
    for parts in 1..=(k1.min(k2)) {
        let mut sum = 0.0;
        let mut a = Vec::new();
        compose_pairs(k1, k2, parts as usize, &mut a, &mut |pairs| {
            let mut prod = 1.0;
            for &(ai, bi) in pairs {
                prod *= match r.r(ai + bi) {
                    Ok(v) => v,
                    Err(_) => f64::NAN,
                };
            }
            sum += prod;
        })?;
        if sum.is_nan() {
            return Err("missing r entry in covariance sum".into());
        }
        total += 2.0 * (k1 * k2) as f64 / parts as f64 * sum;
    }
    Ok(total)
}

fn compose_pairs(
    k1: u64,
    k2: u64,
    parts: usize,
    acc: &mut Vec<(u64, u64)>,
    f: &mut impl FnMut(&[(u64, u64)]),
) -> Result<(), String> {
    if parts == 0 {
        if k1 == 0 && k2 == 0 {
            f(acc);
        }
        return Ok(());
    }
    let rem = parts as u64 - 1;
    for ai in 1..=(k1.saturating_sub(rem)) {
        for bi in 1..=(k2.saturating_sub(rem)) {
            if (ai + bi) % 2 != 0 {
                continue;
            }
            acc.push((ai, bi));
            compose_pairs(k1 - ai, k2 - bi, parts - 1, acc, f)?;
            acc.pop();
        }
    }
    Ok(())
}

/// Fast evaluation of `Ch^spin_3` through the profile of the double:
/// `Ch^spin_3(xi) = (Ch_3 of D(xi)) / 2` with `Ch_3 = R_4 + R_2` in the free
/// cumulants of the unscaled Russian profile. Cross-checked against the exact
/// oracle in the tests; used by the Monte Carlo variance studies where the
/// oracle bound is far exceeded.
pub fn spin_char_3_via_profile(xi: &StrictPartition) -> f64 {
    let omega = ZigzagProfile::of_russian(&xi.double());
    // float moments: S_2 and S_4 of sigma
    let s2 = sigma_moment_f64(&omega, 0);
    let s4 = 3.0 * sigma_moment_f64(&omega, 2);
    let r2 = s2;
    let r4 = s4 - 1.5 * s2 * s2;
    0.5 * (r4 + r2)
}

fn sigma_moment_f64(omega: &ZigzagProfile, power: u32) -> f64 {
    // piecewise-exact integration of z^power * sigma(z) in floats
    let mut nodes: Vec<f64> = omega.breakpoints().iter().map(rat_to_f64).collect();
    if !nodes.iter().any(|&z| z == 0.0) {
        nodes.push(0.0);
        nodes.sort_by(f64::total_cmp);
    }
    let mut total = 0.0;
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        let sa = (omega.eval_f64(a) - a.abs()) / 2.0;
        let sb = (omega.eval_f64(b) - b.abs()) / 2.0;
        if sa == 0.0 && sb == 0.0 {
            continue;
        }
        let slope = (sb - sa) / (b - a);
        let c0 = sa - slope * a;
        let k = power as i32;
        let p1 = (b.powi(k + 1) - a.powi(k + 1)) / (k as f64 + 1.0);
        let p2 = (b.powi(k + 2) - a.powi(k + 2)) / (k as f64 + 2.0);
        total += c0 * p1 + slope * p2;
    }
    total
}
