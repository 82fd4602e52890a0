//! Exact integer Laurent polynomials in `y` and in `(y, z)`.
//!
//! Both types share one sparse representation: a vector of `(monomial,
//! coefficient)` pairs sorted by monomial, with no zero coefficients. Equal
//! polynomials are therefore structurally equal. Coefficients are `i64`;
//! every arithmetic path checks for overflow. The `std::ops` impls panic on
//! overflow, the `checked_*` methods return [`Error::Overflow`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

pub trait Monomial: Copy + Ord + fmt::Debug {
    fn one() -> Self;
    fn checked_mul(self, other: Self) -> Option<Self>;
}

/// Power of `y`.
impl Monomial for i32 {
    fn one() -> Self {
        0
    }

    fn checked_mul(self, other: Self) -> Option<Self> {
        self.checked_add(other)
    }
}

/// Monomial `y^y * z^z`, ordered by `(z, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YZ {
    pub z: i32,
    pub y: i32,
}

impl YZ {
    pub fn new(y: i32, z: i32) -> Self {
        YZ { z, y }
    }
}

impl Monomial for YZ {
    fn one() -> Self {
        YZ { z: 0, y: 0 }
    }

    fn checked_mul(self, other: Self) -> Option<Self> {
        Some(YZ {
            z: self.z.checked_add(other.z)?,
            y: self.y.checked_add(other.y)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<M: Monomial> {
    terms: Vec<(M, i64)>,
}

pub type LaurentPoly = Poly<i32>;
pub type BivariatePoly = Poly<YZ>;

impl<M: Monomial> Default for Poly<M> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<M: Monomial> Poly<M> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(M::one(), 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(M::one(), c)
    }

    pub fn monomial(m: M, c: i64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (M, i64)>>(terms: I) -> Result<Self> {
        let mut v: Vec<(M, i64)> = terms.into_iter().collect();
        v.sort_by_key(|a| a.0);
        Self::combine_sorted(v)
    }

    fn combine_sorted(v: Vec<(M, i64)>) -> Result<Self> {
        let mut out: Vec<(M, i64)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 = last.1.checked_add(c).ok_or(Error::Overflow)?;
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Ok(Poly { terms: out })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (M::one(), 1)
    }

    pub fn terms(&self) -> &[(M, i64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: M) -> i64 {
        match self.terms.binary_search_by(|t| t.0.cmp(&m)) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.checked_add(b[j].1).ok_or(Error::Overflow)?;
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Poly { terms: out })
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| c.checked_neg().map(|c| (m, c)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly { terms })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(Error::Overflow)?;
                let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                v.push((m, c));
            }
        }
        v.sort_by_key(|a| a.0);
        Self::combine_sorted(v)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| c.checked_mul(k).map(|c| (m, c)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly { terms })
    }

    /// Multiplies by a monomial.
    pub fn checked_shift(&self, m: M) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|&(t, c)| t.checked_mul(m).map(|t| (t, c)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        // multiplication by a monomial is order preserving
        Ok(Poly { terms })
    }

    pub fn checked_pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }
}

impl<M: Monomial> Add for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: Self) -> Poly<M> {
        self.checked_add(rhs).expect("coefficient overflow")
    }
}

impl<M: Monomial> Add for Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: Self) -> Poly<M> {
        &self + &rhs
    }
}

impl<M: Monomial> Sub for &Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: Self) -> Poly<M> {
        self.checked_sub(rhs).expect("coefficient overflow")
    }
}

impl<M: Monomial> Sub for Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: Self) -> Poly<M> {
        &self - &rhs
    }
}

impl<M: Monomial> Mul for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: Self) -> Poly<M> {
        self.checked_mul(rhs).expect("coefficient overflow")
    }
}

impl<M: Monomial> Mul for Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: Self) -> Poly<M> {
        &self * &rhs
    }
}

impl<M: Monomial> Neg for &Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        self.checked_neg().expect("coefficient overflow")
    }
}

impl<M: Monomial> Neg for Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        -&self
    }
}

impl LaurentPoly {
    pub fn y() -> Self {
        Self::monomial(1, 1)
    }

    pub fn y_pow(k: i32) -> Self {
        Self::monomial(k, 1)
    }

    /// `y + y^-1`
    pub fn y_plus_inv() -> Self {
        Poly {
            terms: vec![(-1, 1), (1, 1)],
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Value at `y = 1`.
    pub fn eval_one(&self) -> Result<i64> {
        self.terms
            .iter()
            .try_fold(0i64, |acc, t| acc.checked_add(t.1))
            .ok_or(Error::Overflow)
    }

    /// `y ↦ y^-1`
    pub fn subst_y_inverse(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|&(e, c)| (-e, c)).collect();
        terms.reverse();
        Poly { terms }
    }

    /// Embeds `p(y)` as `p(y) * z^k`.
    pub fn to_bivariate(&self, z_exp: i32) -> BivariatePoly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (YZ::new(e, z_exp), c))
                .collect(),
        }
    }
}

/// `y^w * (-1)^n * C(r-1, n) * (y + y^-1)^(r-n-1)`, zero outside `0 <= n <= r-1`.
pub fn pow_binom(w: i32, n: i64, r: u32) -> Result<LaurentPoly> {
    assert!(r >= 1, "pow_binom needs r >= 1");
    if n < 0 || n > i64::from(r) - 1 {
        return Ok(LaurentPoly::zero());
    }
    let n = n as u32;
    let b = binomial(r - 1, n).ok_or(Error::Overflow)?;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    LaurentPoly::y_plus_inv()
        .checked_pow(r - n - 1)?
        .checked_scale(sign * b)?
        .checked_shift(w)
}

pub fn binomial(n: u32, k: u32) -> Option<i64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(i64::from(n - i))? / i64::from(i + 1);
    }
    Some(acc)
}

impl BivariatePoly {
    pub fn y() -> Self {
        Self::monomial(YZ::new(1, 0), 1)
    }

    pub fn z() -> Self {
        Self::monomial(YZ::new(0, 1), 1)
    }

    pub fn y_pow(k: i32) -> Self {
        Self::monomial(YZ::new(k, 0), 1)
    }

    pub fn z_pow(k: i32) -> Self {
        Self::monomial(YZ::new(0, k), 1)
    }

    /// Multiplies by `z^k`.
    pub fn shift_z(&self, k: i32) -> Result<Self> {
        self.checked_shift(YZ::new(0, k))
    }

    /// Multiplies by `y^k`.
    pub fn shift_y(&self, k: i32) -> Result<Self> {
        self.checked_shift(YZ::new(k, 0))
    }

    /// `y ↦ y^-1`
    pub fn subst_y_inverse(&self) -> Self {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|&(m, c)| (YZ::new(-m.y, m.z), c))
            .collect();
        terms.sort_by_key(|a| a.0);
        Poly { terms }
    }

    /// Coefficient of `z^k` as a polynomial in `y`.
    pub fn z_coeff(&self, k: i32) -> LaurentPoly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|t| t.0.z == k)
                .map(|t| (t.0.y, t.1))
                .collect(),
        }
    }

    pub fn z_range(&self) -> Option<(i32, i32)> {
        Some((self.terms.first()?.0.z, self.terms.last()?.0.z))
    }

    /// Substitutes `y = 1`, leaving a Laurent polynomial in `z`.
    pub fn eval_y_one(&self) -> Result<LaurentPoly> {
        LaurentPoly::from_terms(self.terms.iter().map(|t| (t.0.z, t.1)))
    }
}

/// The unlink factor `z^-1 (y + y^-1) - 1`.
pub fn d_const() -> BivariatePoly {
    Poly {
        terms: vec![
            (YZ::new(-1, -1), 1),
            (YZ::new(1, -1), 1),
            (YZ::new(0, 0), -1),
        ],
    }
}

fn write_terms<M: Monomial>(
    f: &mut fmt::Formatter<'_>,
    terms: &[(M, i64)],
    mono: impl Fn(M) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, &(m, c)) in terms.iter().enumerate() {
        let s = mono(m);
        let abs = c.unsigned_abs();
        if i == 0 {
            if c < 0 {
                write!(f, "-")?;
            }
        } else if c < 0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match (s.is_empty(), abs) {
            (true, _) => write!(f, "{abs}")?,
            (false, 1) => write!(f, "{s}")?,
            (false, _) => write!(f, "{abs}*{s}")?,
        }
    }
    Ok(())
}

fn var_power(var: char, k: i32) -> Option<String> {
    match k {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{k}")),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |e| var_power('y', e).unwrap_or_default())
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |m| {
            [var_power('y', m.y), var_power('z', m.z)]
                .into_iter()
                .flatten()
                .collect::<Vec<_>>()
                .join("*")
        })
    }
}

/// Parses `[-]term (+|- term)*` where a term is `c`, `c*m` or `m`, and `m` is
/// a `*`-product of `v` or `v^k`.
fn parse_terms(s: &str, vars: &[char]) -> Result<Vec<(Vec<i32>, i64)>> {
    let err = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    if compact == "0" {
        return Ok(Vec::new());
    }
    // split on +/- that are not exponent signs
    let mut chunks: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut prev = '\0';
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && prev != '^' {
            if i > 0 {
                if cur.is_empty() {
                    return Err(err("dangling sign"));
                }
                chunks.push((sign, std::mem::take(&mut cur)));
            }
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            cur.push(ch);
        }
        prev = ch;
    }
    if cur.is_empty() {
        return Err(err("dangling sign"));
    }
    chunks.push((sign, cur));

    let mut out = Vec::with_capacity(chunks.len());
    for (sign, chunk) in chunks {
        let mut coeff: i64 = 1;
        let mut exps = vec![0i32; vars.len()];
        for (k, factor) in chunk.split('*').enumerate() {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            let first = factor.chars().next().unwrap();
            if first.is_ascii_digit() {
                if k != 0 {
                    return Err(err("coefficient must come first"));
                }
                coeff = factor.parse().map_err(|_| err("bad coefficient"))?;
                continue;
            }
            let vi = vars
                .iter()
                .position(|&v| v == first)
                .ok_or_else(|| err("unknown variable"))?;
            let rest = &factor[first.len_utf8()..];
            let e: i32 = if rest.is_empty() {
                1
            } else if let Some(num) = rest.strip_prefix('^') {
                num.parse().map_err(|_| err("bad exponent"))?
            } else {
                return Err(err("bad factor"));
            };
            exps[vi] = exps[vi].checked_add(e).ok_or(Error::Overflow)?;
        }
        out.push((exps, sign * coeff));
    }
    Ok(out)
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s, &['y'])?;
        Poly::from_terms(terms.into_iter().map(|(e, c)| (e[0], c)))
    }
}

impl FromStr for BivariatePoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s, &['y', 'z'])?;
        Poly::from_terms(terms.into_iter().map(|(e, c)| (YZ::new(e[0], e[1]), c)))
    }
}
