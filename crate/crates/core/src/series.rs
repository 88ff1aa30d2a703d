//! Polynomials in the Lefschetz class `L` and zeta functions written in the
//! basis `u = T/(1-T)`.
//!
//! Coefficients are `i64`. Ring operations panic on overflow rather than
//! wrap; every computation in scope stays many orders of magnitude below the
//! limit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

fn ck(v: Option<i64>) -> i64 {
    v.expect("integer overflow in LPolynomial arithmetic")
}

/// An element of `Z[L]`, coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct LPolynomial {
    coeffs: Vec<i64>,
}

impl From<Vec<i64>> for LPolynomial {
    fn from(coeffs: Vec<i64>) -> Self {
        Self::new(coeffs)
    }
}

impl From<LPolynomial> for Vec<i64> {
    fn from(p: LPolynomial) -> Self {
        p.coeffs
    }
}

impl LPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// The class of the affine line.
    pub fn l() -> Self {
        Self::new(vec![0, 1])
    }

    /// `(L - 1)^k`, the class of a `k`-dimensional torus.
    pub fn torus(k: u32) -> Self {
        (0..k).fold(Self::constant(1), |acc, _| &acc * &Self::new(vec![-1, 1]))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<i64> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| ck(c.checked_mul(k))).collect())
    }

    pub fn eval(&self, l: i64) -> i64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i64, |acc, &c| ck(ck(acc.checked_mul(l)).checked_add(c)))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        assert_eq!(divisor.coeffs[dd], 1, "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd];
            quot[k] = q;
            if q != 0 {
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = ck(rem[k + i].checked_sub(ck(q.checked_mul(d))));
                }
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Renders highest degree first, e.g. `142*L^2 - 260*L + 142`.
    pub fn to_string_descending(&self) -> String {
        render_terms(self.coeffs.iter().copied().enumerate().rev())
    }

    /// Renders lowest degree first, e.g. `2 + 20*L + 2*L^2`.
    pub fn to_string_ascending(&self) -> String {
        render_terms(self.coeffs.iter().copied().enumerate())
    }

    /// `k*(L-1)^2` when the polynomial is an integer multiple of `(L-1)^2`,
    /// otherwise the descending rendering.
    pub fn to_string_factored(&self) -> String {
        let (q, r) = self.div_rem_monic(&Self::torus(2));
        match (q.as_constant(), r.is_zero()) {
            (Some(k), true) if k != 0 => match k {
                1 => "(L-1)^2".to_string(),
                -1 => "-(L-1)^2".to_string(),
                _ => format!("{k}*(L-1)^2"),
            },
            _ => self.to_string_descending(),
        }
    }
}

fn render_terms(terms: impl Iterator<Item = (usize, i64)>) -> String {
    let mut out = String::new();
    for (d, c) in terms.filter(|&(_, c)| c != 0) {
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        match (d, mag) {
            (0, _) => out.push_str(&mag.to_string()),
            (1, 1) => out.push('L'),
            (1, _) => out.push_str(&format!("{mag}*L")),
            (_, 1) => out.push_str(&format!("L^{d}")),
            _ => out.push_str(&format!("{mag}*L^{d}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_descending())
    }
}

impl Add for &LPolynomial {
    type Output = LPolynomial;
    fn add(self, rhs: &LPolynomial) -> LPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPolynomial::new(
            (0..n)
                .map(|i| ck(self.coeff(i).checked_add(rhs.coeff(i))))
                .collect(),
        )
    }
}

impl Sub for &LPolynomial {
    type Output = LPolynomial;
    fn sub(self, rhs: &LPolynomial) -> LPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LPolynomial::new(
            (0..n)
                .map(|i| ck(self.coeff(i).checked_sub(rhs.coeff(i))))
                .collect(),
        )
    }
}

impl Mul for &LPolynomial {
    type Output = LPolynomial;
    fn mul(self, rhs: &LPolynomial) -> LPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = ck(out[i + j].checked_add(ck(a.checked_mul(b))));
            }
        }
        LPolynomial::new(out)
    }
}

impl Neg for &LPolynomial {
    type Output = LPolynomial;
    fn neg(self) -> LPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LPolynomial {
            type Output = LPolynomial;
            fn $m(self, rhs: LPolynomial) -> LPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `1 + 10L + L^2`, the degree-two motive appearing in every type III K3 zeta function.
pub fn k3_constant_class() -> LPolynomial {
    LPolynomial::new(vec![1, 10, 1])
}

/// `Σ_j c_j·u^j` with `u = T/(1-T)` and `j ≥ 1`. `coeffs[j-1]` holds `c_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<LPolynomial>", into = "Vec<LPolynomial>")]
pub struct UBasisSeries {
    coeffs: Vec<LPolynomial>,
}

impl From<Vec<LPolynomial>> for UBasisSeries {
    fn from(coeffs: Vec<LPolynomial>) -> Self {
        Self::new(coeffs)
    }
}

impl From<UBasisSeries> for Vec<LPolynomial> {
    fn from(s: UBasisSeries) -> Self {
        s.coeffs
    }
}

impl UBasisSeries {
    pub fn new(mut coeffs: Vec<LPolynomial>) -> Self {
        while coeffs.last().is_some_and(LPolynomial::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `c·u^j`.
    pub fn monomial(j: usize, c: LPolynomial) -> Self {
        assert!(j >= 1, "the u-basis starts at u^1");
        let mut coeffs = vec![LPolynomial::zero(); j];
        coeffs[j - 1] = c;
        Self::new(coeffs)
    }

    /// Series with integer coefficients `[c_1, c_2, ...]`.
    pub fn from_integers(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| LPolynomial::constant(c)).collect())
    }

    /// `c_j`, zero beyond the stored range.
    pub fn coeff(&self, j: usize) -> LPolynomial {
        assert!(j >= 1, "the u-basis starts at u^1");
        self.coeffs.get(j - 1).cloned().unwrap_or_default()
    }

    pub fn max_power(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[LPolynomial] {
        &self.coeffs
    }

    pub fn mul_poly(&self, p: &LPolynomial) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * p).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(k)).collect())
    }
}

impl Add for &UBasisSeries {
    type Output = UBasisSeries;
    fn add(self, rhs: &UBasisSeries) -> UBasisSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UBasisSeries::new((1..=n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Add for UBasisSeries {
    type Output = UBasisSeries;
    fn add(self, rhs: UBasisSeries) -> UBasisSeries {
        &self + &rhs
    }
}

impl Sub for &UBasisSeries {
    type Output = UBasisSeries;
    fn sub(self, rhs: &UBasisSeries) -> UBasisSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UBasisSeries::new((1..=n).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

/// Coefficients of `T^1..T^N` in `u^j`; the coefficient of `T^n` is
/// `binomial(n-1, j-1)`.
pub fn u_power_expand(j: usize, n_max: usize) -> Vec<i64> {
    assert!(j >= 1, "the u-basis starts at u^1");
    (1..=n_max)
        .map(|n| {
            if n < j {
                0
            } else {
                let b = num_integer::binomial((n - 1) as u128, (j - 1) as u128);
                i64::try_from(b).expect("binomial coefficient overflows i64")
            }
        })
        .collect()
}

/// Coefficients of `T^1..T^N`.
pub fn expand(z: &UBasisSeries, n_max: usize) -> Vec<LPolynomial> {
    let mut out = vec![LPolynomial::zero(); n_max];
    for j in 1..=z.max_power() {
        let c = z.coeff(j);
        if c.is_zero() {
            continue;
        }
        for (slot, b) in out.iter_mut().zip(u_power_expand(j, n_max)) {
            if b != 0 {
                *slot = &*slot + &c.scale(b);
            }
        }
    }
    out
}

/// The limit `T → ∞`, taken on the u-basis: `u ↦ -1`.
pub fn formal_limit(z: &UBasisSeries) -> LPolynomial {
    z.coeffs
        .iter()
        .enumerate()
        .fold(LPolynomial::zero(), |acc, (i, c)| {
            if i % 2 == 0 {
                &acc - c
            } else {
                &acc + c
            }
        })
}

/// Motivic volume `-lim_{T→∞} Z(T)`.
pub fn motivic_volume(z: &UBasisSeries) -> LPolynomial {
    -&formal_limit(z)
}

/// Coefficients of `T^1..T^N` specialized at `L = 1`.
pub fn euler_specialize(z: &UBasisSeries, n_max: usize) -> Vec<i64> {
    expand(z, n_max).iter().map(|c| c.eval(1)).collect()
}

/// Result of matching a series against
/// `(t/2)(L-1)^2·T(1+T)/(1-T)^3 + (1+10L+L^2)·2T/(1-T)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvForm {
    /// The extracted triangle count; meaningful only when `valid`.
    pub t: u64,
    pub valid: bool,
    pub residual_report: String,
}

impl SvForm {
    /// The series this form denotes.
    pub fn to_series(&self) -> UBasisSeries {
        sv_series(self.t)
    }
}

/// `(t/2)(L-1)^2(2u^3 + 3u^2 + u) + 2(1+10L+L^2)u` for even `t`.
pub fn sv_series(t: u64) -> UBasisSeries {
    assert!(t.is_multiple_of(2), "t must be even");
    let half = i64::try_from(t / 2).expect("t overflows i64");
    let torus = LPolynomial::torus(2).scale(half);
    let shape = UBasisSeries::from_integers(&[1, 3, 2]).mul_poly(&torus);
    &shape + &UBasisSeries::monomial(1, k3_constant_class().scale(2))
}

pub fn to_sv_form(z: &UBasisSeries) -> SvForm {
    let mut problems = Vec::new();
    if z.max_power() > 3 {
        problems.push(format!("nonzero u^{} coefficient", z.max_power()));
    }
    let (c1, c2, c3) = (z.coeff(1), z.coeff(2), z.coeff(3));
    let (q, r) = c3.div_rem_monic(&LPolynomial::torus(2));
    let mut t = None;
    if !r.is_zero() {
        problems.push(format!("c3 = {c3} leaves remainder {r} modulo (L-1)^2"));
    } else {
        match q.as_constant() {
            Some(k) if k >= 0 => t = Some(k as u64),
            _ => problems.push(format!("c3/(L-1)^2 = {q} is not a nonnegative integer")),
        }
    }
    if c2.scale(2) != c3.scale(3) {
        problems.push(format!(
            "2*c2 = {} differs from 3*c3 = {}",
            c2.scale(2),
            c3.scale(3)
        ));
    }
    match t {
        Some(t) if t % 2 != 0 => problems.push(format!("t = {t} is odd")),
        Some(t) => {
            let half = LPolynomial::torus(2).scale((t / 2) as i64);
            let residual = &(&c1 - &half) - &k3_constant_class().scale(2);
            if !residual.is_zero() {
                problems.push(format!(
                    "c1 - c3/2 - 2*(1+10*L+L^2) = {residual}, expected 0"
                ));
            }
        }
        None => {}
    }
    SvForm {
        t: t.unwrap_or(0),
        valid: problems.is_empty(),
        residual_report: problems.join("; "),
    }
}

fn u_power_text(j: usize) -> String {
    if j == 1 {
        "T/(1-T)".to_string()
    } else {
        format!("T^{j}/(1-T)^{j}")
    }
}

/// Human-readable closed form in `T`, in the canonical K3 shape when it applies.
pub fn render_closed_form(z: &UBasisSeries) -> String {
    let sv = to_sv_form(z);
    if sv.valid {
        let tail = "(1+10*L+L^2)*2*T/(1-T)";
        return if sv.t == 0 {
            tail.to_string()
        } else {
            format!("{}*(L-1)^2*T*(1+T)/(1-T)^3 + {tail}", sv.t / 2)
        };
    }
    let mut out = String::new();
    for j in 1..=z.max_power() {
        let c = z.coeff(j);
        if c.is_zero() {
            continue;
        }
        let (negative, coeff) = match c.as_constant() {
            Some(k) if k.unsigned_abs() == 1 => (k < 0, String::new()),
            Some(k) => (k < 0, format!("{}*", k.unsigned_abs())),
            None => (false, format!("({})*", c.to_string_descending())),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&coeff);
        out.push_str(&u_power_text(j));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
