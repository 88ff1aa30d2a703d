//! Integral arithmetic of the monodromy logarithm of a type III K3
//! degeneration and of its mirror Lefschetz operator.
//!
//! On a lattice with pairing `(x·y)`, a primitive isotropic `γ` with a dual
//! vector `γ'` and `δ = Nγ'` determine
//! `N x = (x·γ)δ - (x·δ)γ`. The pair `(t, k)` is `t = (δ·δ)` and `k` the
//! divisibility of `δ`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::content;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Gcd of all entries.
    pub fn content(&self) -> u64 {
        content(&self.data)
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::InvalidArgument(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = 0i128;
                for (j, &x) in v.iter().enumerate() {
                    acc += self.get(i, j) as i128 * x as i128;
                }
                i64::try_from(acc).map_err(|_| Error::Overflow("matrix-vector product"))
            })
            .collect()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument(
                "matrix shapes do not compose".into(),
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0i128;
                for k in 0..self.cols {
                    acc += self.get(i, k) as i128 * rhs.get(k, j) as i128;
                }
                out.set(
                    i,
                    j,
                    i64::try_from(acc).map_err(|_| Error::Overflow("matrix product"))?,
                );
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, e: u32) -> Result<Self> {
        (0..e).try_fold(Self::identity(self.rows), |acc, _| acc.checked_mul(self))
    }

    /// Nonzero invariant factors, by Smith normal form reduction.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        let (r, c) = (self.rows, self.cols);
        let mut a: Vec<Vec<i128>> = (0..r)
            .map(|i| (0..c).map(|j| self.get(i, j) as i128).collect())
            .collect();
        let mut factors = Vec::new();
        for t in 0..r.min(c) {
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let mut dirty = false;
                for i in t + 1..r {
                    let q = a[i][t] / a[t][t];
                    if q != 0 {
                        let pivot_row = a[t].clone();
                        for (x, p) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                            *x -= q * p;
                        }
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..c {
                    let q = a[t][j] / a[t][t];
                    if q != 0 {
                        for row in a.iter_mut().skip(t) {
                            row[j] -= q * row[t];
                        }
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // pivot must divide the remaining block
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[i][j] % a[t][t] != 0));
                match bad {
                    Some(i) => {
                        let src = a[i].clone();
                        for (x, s) in a[t][t..].iter_mut().zip(&src[t..]) {
                            *x += s;
                        }
                    }
                    None => break,
                }
            }
            let f = u64::try_from(a[t][t].unsigned_abs())
                .map_err(|_| Error::Overflow("invariant factor"))?;
            factors.push(f);
        }
        Ok(factors)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A lattice with pairing and the vectors realizing the monodromy logarithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyData {
    gram: IntMatrix,
    gamma: Vec<i64>,
    gamma_prime: Vec<i64>,
    delta: Vec<i64>,
}

impl MonodromyData {
    /// Requires a symmetric pairing with `(γ·γ) = 0`, `(γ·γ') = 1`,
    /// `(γ·δ) = 0` and `(γ'·δ) = 0`; the last one says `N γ' = δ`.
    pub fn new(
        gram: IntMatrix,
        gamma: Vec<i64>,
        gamma_prime: Vec<i64>,
        delta: Vec<i64>,
    ) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::InvalidMonodromy(
                "pairing matrix is not symmetric".into(),
            ));
        }
        let n = gram.rows();
        if [&gamma, &gamma_prime, &delta].iter().any(|v| v.len() != n) {
            return Err(Error::InvalidMonodromy(format!(
                "vectors must have length {n}"
            )));
        }
        let d = Self {
            gram,
            gamma,
            gamma_prime,
            delta,
        };
        let checks = [
            ("(gamma.gamma)", d.pair(&d.gamma, &d.gamma)?, 0),
            ("(gamma.gamma')", d.pair(&d.gamma, &d.gamma_prime)?, 1),
            ("(gamma.delta)", d.pair(&d.gamma, &d.delta)?, 0),
            ("(gamma'.delta)", d.pair(&d.gamma_prime, &d.delta)?, 0),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(Error::InvalidMonodromy(format!(
                    "{what} = {got}, expected {want}"
                )));
            }
        }
        Ok(d)
    }

    /// The family `U ⊕ <2m>` with `γ = e1`, `γ' = e2`, `δ = a·e3`.
    pub fn hyperbolic_plus_rank_one(m: i64, a: i64) -> Result<Self> {
        let gram = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 2 * m]])?;
        Self::new(gram, vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, a])
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let gy = self.gram.apply(y)?;
        let acc: i128 = x
            .iter()
            .zip(&gy)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        i64::try_from(acc).map_err(|_| Error::Overflow("pairing"))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }
}

/// Matrix of `x ↦ (x·γ)δ - (x·δ)γ`; column `i` is the image of `e_i`.
pub fn fs_operator(d: &MonodromyData) -> Result<IntMatrix> {
    let n = d.gram.rows();
    let g_gamma = d.gram.apply(&d.gamma)?;
    let g_delta = d.gram.apply(&d.delta)?;
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for r in 0..n {
            let v = (g_gamma[i] as i128) * (d.delta[r] as i128)
                - (g_delta[i] as i128) * (d.gamma[r] as i128);
            out.set(
                r,
                i,
                i64::try_from(v).map_err(|_| Error::Overflow("monodromy operator"))?,
            );
        }
    }
    Ok(out)
}

/// `k` is either pinned down or known only up to a candidate set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum KValue {
    Determined(u64),
    Candidates(Vec<u64>),
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KValue::Determined(k) => write!(f, "{k}"),
            KValue::Candidates(ks) => {
                let s: Vec<String> = ks.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", s.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantPair {
    pub t: u64,
    pub k: KValue,
}

impl InvariantPair {
    pub fn determined(t: u64, k: u64) -> Result<Self> {
        if k == 0 || !t.is_multiple_of(k * k) {
            return Err(Error::Inconsistent(format!(
                "k^2 = {} does not divide t = {t}",
                k * k
            )));
        }
        Ok(Self {
            t,
            k: KValue::Determined(k),
        })
    }

    pub fn k_determined(&self) -> Option<u64> {
        match self.k {
            KValue::Determined(k) => Some(k),
            KValue::Candidates(_) => None,
        }
    }
}

/// Order of the cokernel of `N^2` onto the saturation of its image, from
/// Smith normal form. `N^2` has rank one with image in `Zγ`, so this is the
/// order of `coker(N^2: W4/W2 → W0)`.
pub fn n_squared_coker_order(d: &MonodromyData) -> Result<u64> {
    let n = fs_operator(d)?;
    let n2 = n.checked_pow(2)?;
    let factors = n2.invariant_factors()?;
    factors.iter().try_fold(1u64, |acc, &f| {
        acc.checked_mul(f).ok_or(Error::Overflow("coker order"))
    })
}

/// `(t, k)` with `t = (δ·δ)` and `k` the divisibility of `δ`.
///
/// `t` is cross-checked against the coker order of `N^2` and `k` against the
/// content of `N`. Fails with `Inconsistent` if `N^3 != 0`.
pub fn weight_invariants(d: &MonodromyData) -> Result<InvariantPair> {
    let t = d.pair(&d.delta, &d.delta)?;
    if t <= 0 {
        return Err(Error::InvalidMonodromy(format!(
            "(delta.delta) = {t} must be positive"
        )));
    }
    let t = t as u64;
    let n = fs_operator(d)?;
    if !n.checked_pow(3)?.is_zero() {
        return Err(Error::Inconsistent("N^3 is not zero".into()));
    }
    let coker = n_squared_coker_order(d)?;
    if coker != t {
        return Err(Error::Inconsistent(format!(
            "coker order of N^2 is {coker} but (delta.delta) = {t}"
        )));
    }
    let k = content(&d.delta);
    if n.content() != k {
        return Err(Error::Inconsistent(format!(
            "divisibility of N is {} but divisibility of delta is {k}",
            n.content()
        )));
    }
    InvariantPair::determined(t, k)
}

/// Values of `k` allowed by `k^2 | t` for a given triangle count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KFilter {
    pub candidates: Vec<u64>,
    /// `t/k^2 = 1`: the dual complex would be a single triangle.
    pub excluded_single_triangle: Vec<u64>,
    /// `t/k^2` in `{2, 3}`: no triangulated sphere has fewer than 4 triangles.
    pub excluded_strengthened: Vec<u64>,
}

pub fn k_candidates(t: u64) -> Result<KFilter> {
    if t < 4 || !t.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "t = {t} must be even and at least 4"
        )));
    }
    let mut filter = KFilter {
        candidates: vec![],
        excluded_single_triangle: vec![],
        excluded_strengthened: vec![],
    };
    let mut k = 1u64;
    while k * k <= t {
        if t.is_multiple_of(k * k) {
            match t / (k * k) {
                1 => filter.excluded_single_triangle.push(k),
                2 | 3 => filter.excluded_strengthened.push(k),
                _ => filter.candidates.push(k),
            }
        }
        k += 1;
    }
    Ok(filter)
}

/// Gcd of the weights of a tropical cycle; a lower bound dividing `k`.
pub fn cycle_gcd(weights: &[i64]) -> Result<u64> {
    match content(weights) {
        0 => Err(Error::InvalidArgument("cycle weights are all zero".into())),
        g => Ok(g),
    }
}

/// `|det[v w]|`, the local pairing of a cycle and a cocycle section at a
/// transverse intersection point.
pub fn transverse_pairing(v: [i64; 2], w: [i64; 2]) -> Result<u64> {
    crate::lattice::checked_cross((v[0], v[1]), (w[0], w[1])).map(i64::unsigned_abs)
}

/// Intersect the square filter with the multiples of `lower` and the common
/// divisors of the pairings.
pub fn determine_k(t: u64, lower: u64, pairings: &[i64]) -> Result<KValue> {
    if lower == 0 {
        return Err(Error::InvalidArgument(
            "lower bound must be at least 1".into(),
        ));
    }
    let filter = k_candidates(t)?;
    let set: Vec<u64> = filter
        .candidates
        .into_iter()
        .filter(|k| k % lower == 0)
        .filter(|k| pairings.iter().all(|p| p.unsigned_abs() % k == 0))
        .collect();
    match set.len() {
        0 => Err(Error::Inconsistent(format!(
            "no k satisfies k^2 | {t}, {lower} | k and k | every pairing in {pairings:?}"
        ))),
        1 => Ok(KValue::Determined(set[0])),
        _ => Ok(KValue::Candidates(set)),
    }
}

/// The analogues of `(t, k)` for cup product with a polarization `d·H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzPair {
    pub t_check: u64,
    pub k_check: u64,
}

/// For a polarization `d·H` with `H` primitive on a degree-`e` surface in
/// projective 3-space: `ǩ = d`, `ť = (dH)^2·(eH) = d^2·e`.
pub fn lefschetz_invariants(d: u64, e: u64) -> Result<LefschetzPair> {
    if d == 0 || e == 0 {
        return Err(Error::InvalidArgument(
            "polarization multiple and degree must be positive".into(),
        ));
    }
    let t_check = d
        .checked_mul(d)
        .and_then(|x| x.checked_mul(e))
        .ok_or(Error::Overflow("Lefschetz invariant"))?;
    Ok(LefschetzPair {
        t_check,
        k_check: d,
    })
}

/// One side of a mirror comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorSide {
    pub name: String,
    pub pair: InvariantPair,
    pub lefschetz: Option<LefschetzPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorCheck {
    pub from: String,
    pub to: String,
    pub quantity: &'static str,
    pub lhs: u64,
    pub rhs: u64,
    pub ok: bool,
}

impl fmt::Display for MirrorCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (q, lhs, rhs) = (self.quantity, self.lhs, self.rhs);
        if self.ok {
            write!(f, "{q}_check({})={lhs}={q}({}) OK", self.from, self.to)
        } else {
            write!(
                f,
                "{q}_check({})={lhs} != {q}({})={rhs} FAIL",
                self.from, self.to
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MirrorReport {
    pub checks: Vec<MirrorCheck>,
    pub ok: bool,
}

impl fmt::Display for MirrorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.checks.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Compare Lefschetz invariants of each side with the monodromy invariants
/// of the other, in every direction where Lefschetz data is present.
pub fn mirror_check(a: &MirrorSide, b: &MirrorSide) -> Result<MirrorReport> {
    let mut checks = Vec::new();
    for (x, y) in [(a, b), (b, a)] {
        let Some(l) = x.lefschetz else { continue };
        let k = y
            .pair
            .k_determined()
            .ok_or_else(|| Error::InvalidArgument(format!("k({}) is not determined", y.name)))?;
        checks.push(MirrorCheck {
            from: x.name.clone(),
            to: y.name.clone(),
            quantity: "t",
            lhs: l.t_check,
            rhs: y.pair.t,
            ok: l.t_check == y.pair.t,
        });
        checks.push(MirrorCheck {
            from: x.name.clone(),
            to: y.name.clone(),
            quantity: "k",
            lhs: l.k_check,
            rhs: k,
            ok: l.k_check == k,
        });
    }
    if checks.is_empty() {
        return Err(Error::InvalidArgument(
            "neither side carries Lefschetz data".into(),
        ));
    }
    let ok = checks.iter().all(|c| c.ok);
    Ok(MirrorReport { checks, ok })
}
