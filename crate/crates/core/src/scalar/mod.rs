//! Exact scalar fields on a 3-dimensional chart.
//!
//! A [`ScalarExpr`] is kept in canonical form: a sum of monomials
//!
//! ```text
//! c · x^a · y^b · z^c · exp(L) · Π sin(f·xᵢ)^s · cos(f·xᵢ)^n
//! ```
//!
//! with rational `c`, a homogeneous rational-linear form `L`, single-coordinate
//! trigonometric arguments with positive frequency, and `s ∈ {0, 1}`. Angle
//! addition is applied when a trigonometric atom is built and `sin² = 1 − cos²`
//! is applied on every product, so two expressions built from the same
//! function usually share a canonical form. The one case where they may not
//! (several frequencies on the same coordinate, e.g. `sin(2x)` against
//! `sin(x)cos(x)`) is settled by [`ScalarExpr::zero_test`] with seeded sampling.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use parse::ParseError;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Number of chart coordinates.
pub const DIM: usize = 3;

/// Coordinate names, in index order.
pub const COORD_NAMES: [&str; DIM] = ["x", "y", "z"];

const FALLBACK_SEED: u64 = 0x7453_4745_4f4d;
const FALLBACK_POINTS: usize = 16;
const FALLBACK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("expression `{0}` is not invertible; only nonzero constants and exponential terms can be inverted")]
    NotInvertible(String),
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// A homogeneous rational-linear form `Σ cᵢ xᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Linear(pub [Rational; DIM]);

impl Linear {
    pub fn zero() -> Self {
        Linear([Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn add(&self, other: &Linear) -> Linear {
        Linear([
            &self.0[0] + &other.0[0],
            &self.0[1] + &other.0[1],
            &self.0[2] + &other.0[2],
        ])
    }

    fn neg(&self) -> Linear {
        Linear([-&self.0[0], -&self.0[1], -&self.0[2]])
    }

    fn eval(&self, point: &[f64; DIM]) -> f64 {
        self.0
            .iter()
            .zip(point)
            .map(|(c, p)| rational_to_f64(c) * p)
            .sum()
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{}", COORD_NAMES[i])?;
            } else {
                write!(f, "{}*{}", mag, COORD_NAMES[i])?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `sin(freq·x_coord)^sin · cos(freq·x_coord)^cos` with `freq > 0`, `sin ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TrigFactor {
    coord: usize,
    freq: Rational,
    sin: u32,
    cos: u32,
}

impl TrigFactor {
    fn same_argument(&self, other: &TrigFactor) -> bool {
        self.coord == other.coord && self.freq == other.freq
    }

    fn eval(&self, point: &[f64; DIM]) -> f64 {
        let arg = rational_to_f64(&self.freq) * point[self.coord];
        arg.sin().powi(self.sin as i32) * arg.cos().powi(self.cos as i32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Monomial {
    pows: [u32; DIM],
    exp: Linear,
    trig: Vec<TrigFactor>,
}

impl Monomial {
    fn one() -> Self {
        Monomial {
            pows: [0; DIM],
            exp: Linear::zero(),
            trig: Vec::new(),
        }
    }

    fn is_one(&self) -> bool {
        self.pows == [0; DIM] && self.exp.is_zero() && self.trig.is_empty()
    }

    fn eval(&self, point: &[f64; DIM]) -> f64 {
        let mut v = 1.0;
        for (i, k) in self.pows.iter().enumerate() {
            if *k > 0 {
                v *= point[i].powi(*k as i32);
            }
        }
        if !self.exp.is_zero() {
            v *= self.exp.eval(point).exp();
        }
        for t in &self.trig {
            v *= t.eval(point);
        }
        v
    }

    /// Product of two monomials; `sin²` is rewritten as `1 − cos²`, so the
    /// result may have several terms.
    fn mul(&self, other: &Monomial) -> Vec<(Monomial, Rational)> {
        let mut pows = self.pows;
        for (p, q) in pows.iter_mut().zip(other.pows) {
            *p += q;
        }
        let exp = self.exp.add(&other.exp);

        let mut trig: Vec<TrigFactor> = Vec::with_capacity(self.trig.len() + other.trig.len());
        let (mut i, mut j) = (0, 0);
        while i < self.trig.len() || j < other.trig.len() {
            let take_left = match (self.trig.get(i), other.trig.get(j)) {
                (Some(a), Some(b)) if a.same_argument(b) => {
                    trig.push(TrigFactor {
                        coord: a.coord,
                        freq: a.freq.clone(),
                        sin: a.sin + b.sin,
                        cos: a.cos + b.cos,
                    });
                    i += 1;
                    j += 1;
                    continue;
                }
                (Some(a), Some(b)) => (a.coord, &a.freq) < (b.coord, &b.freq),
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                trig.push(self.trig[i].clone());
                i += 1;
            } else {
                trig.push(other.trig[j].clone());
                j += 1;
            }
        }

        let doubled: Vec<usize> = trig
            .iter()
            .enumerate()
            .filter(|(_, t)| t.sin >= 2)
            .map(|(k, _)| k)
            .collect();
        for &k in &doubled {
            trig[k].sin -= 2;
        }
        let mut out = vec![(
            Monomial {
                pows,
                exp,
                trig,
            },
            Rational::one(),
        )];
        for &k in &doubled {
            let mut next = Vec::with_capacity(out.len() * 2);
            for (m, c) in out {
                let mut shifted = m.clone();
                shifted.trig[k].cos += 2;
                next.push((m, c.clone()));
                next.push((shifted, -c));
            }
            out = next;
        }
        for (m, _) in out.iter_mut() {
            m.trig.retain(|t| t.sin > 0 || t.cos > 0);
        }
        out
    }

    /// `∂/∂x_coord` of the monomial as a list of weighted monomials.
    fn diff(&self, coord: usize) -> Vec<(Monomial, Rational)> {
        let mut out = Vec::new();
        let k = self.pows[coord];
        if k > 0 {
            let mut m = self.clone();
            m.pows[coord] -= 1;
            out.push((m, rat(k as i64)));
        }
        let lc = &self.exp.0[coord];
        if !lc.is_zero() {
            out.push((self.clone(), lc.clone()));
        }
        for (idx, t) in self.trig.iter().enumerate() {
            if t.coord != coord {
                continue;
            }
            let n = t.cos;
            let mut push = |sin: u32, cos: u32, c: Rational| {
                let mut m = self.clone();
                m.trig[idx].sin = sin;
                m.trig[idx].cos = cos;
                m.trig.retain(|t| t.sin > 0 || t.cos > 0);
                out.push((m, c));
            };
            if t.sin == 1 {
                // d/dx [sin cosⁿ] = f[(n+1)cosⁿ⁺¹ − n cosⁿ⁻¹] after sin² = 1 − cos²
                push(0, n + 1, &t.freq * rat(n as i64 + 1));
                if n > 0 {
                    push(0, n - 1, -(&t.freq * rat(n as i64)));
                }
            } else if n > 0 {
                push(1, n - 1, -(&t.freq * rat(n as i64)));
            }
        }
        out
    }
}

/// Verdict of [`ScalarExpr::zero_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroVerdict {
    /// Decided from the canonical form.
    Symbolic(bool),
    /// Decided by seeded sampling because the canonical form was inconclusive.
    Numeric(bool),
}

impl ZeroVerdict {
    pub fn is_zero(self) -> bool {
        matches!(self, ZeroVerdict::Symbolic(true) | ZeroVerdict::Numeric(true))
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, ZeroVerdict::Numeric(_))
    }
}

/// Exact closed-form scalar field in canonical form. Immutable; cheap to clone
/// for the small expressions that occur in frame computations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarExpr({self})")
    }
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr::default()
    }

    pub fn one() -> Self {
        ScalarExpr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        ScalarExpr::from_term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        ScalarExpr::constant(rat(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ScalarExpr::constant(ratio(n, d))
    }

    /// The coordinate function `x_coord` (0-based).
    pub fn var(coord: usize) -> Self {
        assert!(coord < DIM, "coordinate index out of range");
        let mut m = Monomial::one();
        m.pows[coord] = 1;
        ScalarExpr::from_term(m, Rational::one())
    }

    pub fn exp(arg: Linear) -> Self {
        let mut m = Monomial::one();
        m.exp = arg;
        ScalarExpr::from_term(m, Rational::one())
    }

    pub fn sin(arg: &Linear) -> Self {
        trig_pair(arg).0
    }

    pub fn cos(arg: &Linear) -> Self {
        trig_pair(arg).1
    }

    fn from_term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ScalarExpr { terms }
    }

    fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// True iff the canonical form is the empty sum.
    pub fn is_canonical_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Returns the value when the expression is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Returns the linear form when the expression is `Σ cᵢ xᵢ` with no
    /// constant term.
    pub fn as_linear(&self) -> Option<Linear> {
        let mut lin = Linear::zero();
        for (m, c) in &self.terms {
            if !m.exp.is_zero() || !m.trig.is_empty() || m.pows.iter().sum::<u32>() != 1 {
                return None;
            }
            let coord = m.pows.iter().position(|&k| k == 1)?;
            lin.0[coord] = c.clone();
        }
        Some(lin)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ScalarExpr::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a single term `c · exp(L)` with `c ≠ 0`.
    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        let not_invertible = || ScalarError::NotInvertible(self.to_string());
        if self.terms.len() != 1 {
            return Err(not_invertible());
        }
        let (m, c) = self.terms.iter().next().ok_or_else(not_invertible)?;
        if m.pows != [0; DIM] || !m.trig.is_empty() {
            return Err(not_invertible());
        }
        let mut inv = Monomial::one();
        inv.exp = m.exp.neg();
        Ok(ScalarExpr::from_term(inv, c.recip()))
    }

    pub fn try_div(&self, denom: &ScalarExpr) -> Result<Self, ScalarError> {
        Ok(self * &denom.try_inv()?)
    }

    pub fn powi(&self, n: i64) -> Result<Self, ScalarError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.try_inv()?.pow(n.unsigned_abs() as u32))
        }
    }

    /// Exact partial derivative `∂/∂x_coord` (0-based coordinate).
    pub fn diff(&self, coord: usize) -> Self {
        assert!(coord < DIM, "coordinate index out of range");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for (dm, dc) in m.diff(coord) {
                ScalarExpr::accumulate(&mut terms, dm, c * dc);
            }
        }
        ScalarExpr { terms }
    }

    /// IEEE double evaluation at a point.
    pub fn eval(&self, point: &[f64; DIM]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| rational_to_f64(c) * m.eval(point))
            .sum()
    }

    pub fn eval_rational(&self, point: &[Rational; DIM]) -> f64 {
        let p = [
            rational_to_f64(&point[0]),
            rational_to_f64(&point[1]),
            rational_to_f64(&point[2]),
        ];
        self.eval(&p)
    }

    /// True when distinct frequencies share a coordinate, the only situation
    /// in which a nonzero canonical form may still be the zero function.
    fn needs_sampling(&self) -> bool {
        let mut seen: BTreeMap<usize, BTreeSet<&Rational>> = BTreeMap::new();
        for m in self.terms.keys() {
            for t in &m.trig {
                seen.entry(t.coord).or_default().insert(&t.freq);
            }
        }
        seen.values().any(|freqs| freqs.len() > 1)
    }

    /// Zero test: exact on the canonical form, falling back to evaluation at
    /// 16 seeded rational points (relative tolerance 1e-9) when inconclusive.
    pub fn zero_test(&self) -> ZeroVerdict {
        if self.terms.is_empty() {
            return ZeroVerdict::Symbolic(true);
        }
        if !self.needs_sampling() {
            return ZeroVerdict::Symbolic(false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(FALLBACK_SEED);
        for _ in 0..FALLBACK_POINTS {
            let point: [Rational; DIM] = std::array::from_fn(|_| {
                let den: i64 = rng.gen_range(1..=16);
                let num: i64 = rng.gen_range(-2 * den..=2 * den);
                ratio(num, den)
            });
            let p = point.each_ref().map(rational_to_f64);
            let value = self.eval(&p);
            let scale: f64 = self
                .terms
                .iter()
                .map(|(m, c)| (rational_to_f64(c) * m.eval(&p)).abs())
                .sum::<f64>()
                .max(1.0);
            if value.is_nan() || value.abs() > FALLBACK_TOLERANCE * scale {
                return ZeroVerdict::Numeric(false);
            }
        }
        ZeroVerdict::Numeric(true)
    }

    pub fn is_zero(&self) -> bool {
        self.zero_test().is_zero()
    }
}

/// `(sin L, cos L)` expanded by angle addition into single-coordinate atoms.
fn trig_pair(arg: &Linear) -> (ScalarExpr, ScalarExpr) {
    let mut sin = ScalarExpr::zero();
    let mut cos = ScalarExpr::one();
    for (coord, f) in arg.0.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let atom = |s: u32, c: u32| {
            let mut m = Monomial::one();
            m.trig.push(TrigFactor {
                coord,
                freq: f.abs(),
                sin: s,
                cos: c,
            });
            ScalarExpr::from_term(m, Rational::one())
        };
        let s_part = if f.is_negative() { -atom(1, 0) } else { atom(1, 0) };
        let c_part = atom(0, 1);
        let new_sin = &(&sin * &c_part) + &(&cos * &s_part);
        let new_cos = &(&cos * &c_part) - &(&sin * &s_part);
        sin = new_sin;
        cos = new_cos;
    }
    (sin, cos)
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

impl From<Rational> for ScalarExpr {
    fn from(r: Rational) -> Self {
        ScalarExpr::constant(r)
    }
}

impl FromStr for ScalarExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;

    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            ScalarExpr::accumulate(&mut terms, m.clone(), c.clone());
        }
        ScalarExpr { terms }
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;

    fn neg(self) -> ScalarExpr {
        ScalarExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ScalarExpr {
    type Output = ScalarExpr;

    fn neg(self) -> ScalarExpr {
        -&self
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;

    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            ScalarExpr::accumulate(&mut terms, m.clone(), -c);
        }
        ScalarExpr { terms }
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;

    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                for (m, k) in ma.mul(mb) {
                    ScalarExpr::accumulate(&mut terms, m, &c * k);
                }
            }
        }
        ScalarExpr { terms }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$method(rhs)
            }
        }
        impl $trait<ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $method(self, rhs: ScalarExpr) -> ScalarExpr {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Sum for ScalarExpr {
    fn sum<I: Iterator<Item = ScalarExpr>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for e in iter {
            for (m, c) in e.terms {
                ScalarExpr::accumulate(&mut terms, m, c);
            }
        }
        ScalarExpr { terms }
    }
}

impl<'a> Sum<&'a ScalarExpr> for ScalarExpr {
    fn sum<I: Iterator<Item = &'a ScalarExpr>>(iter: I) -> Self {
        iter.cloned().sum()
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    for (i, k) in m.pows.iter().enumerate() {
        match k {
            0 => {}
            1 => factors.push(COORD_NAMES[i].to_string()),
            k => factors.push(format!("{}^{}", COORD_NAMES[i], k)),
        }
    }
    if !m.exp.is_zero() {
        factors.push(format!("exp({})", m.exp));
    }
    for t in &m.trig {
        let arg = if t.freq.is_one() {
            COORD_NAMES[t.coord].to_string()
        } else {
            format!("{}*{}", t.freq, COORD_NAMES[t.coord])
        };
        if t.sin == 1 {
            factors.push(format!("sin({arg})"));
        }
        match t.cos {
            0 => {}
            1 => factors.push(format!("cos({arg})")),
            n => factors.push(format!("cos({arg})^{n}")),
        }
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ScalarExpr {
        s.parse().unwrap()
    }

    #[test]
    fn diff_of_exp_atom() {
        assert_eq!(p("exp(2*z)").diff(2), p("2*exp(2*z)"));
    }

    #[test]
    fn diff_of_constant() {
        assert!(p("7/3").diff(0).is_canonical_zero());
    }

    #[test]
    fn diff_product_rule() {
        assert_eq!(p("x*exp(2*z)").diff(2), p("2*x*exp(2*z)"));
        assert_eq!(p("x*exp(2*z)").diff(0), p("exp(2*z)"));
    }

    #[test]
    fn diff_trig() {
        assert_eq!(p("sin(3*x)").diff(0), p("3*cos(3*x)"));
        assert_eq!(p("cos(x)^2").diff(0), p("-2*sin(x)*cos(x)"));
        assert!(!p("sin(x)^2").diff(0).is_zero());
        assert_eq!(p("sin(x)^2").diff(0), p("2*sin(x)*cos(x)"));
    }

    #[test]
    fn zero_test_cases() {
        assert_eq!(p("exp(2*z) - exp(2*z)").zero_test(), ZeroVerdict::Symbolic(true));
        assert_eq!(
            p("sin(x)^2 + cos(x)^2 - 1").zero_test(),
            ZeroVerdict::Symbolic(true)
        );
        assert_eq!(p("exp(2*z) - 1").zero_test(), ZeroVerdict::Symbolic(false));
    }

    #[test]
    fn angle_addition_is_canonical() {
        assert_eq!(
            p("sin(x + y)"),
            p("sin(x)*cos(y) + cos(x)*sin(y)")
        );
        assert_eq!(p("cos(-x)"), p("cos(x)"));
        assert_eq!(p("sin(-2*y)"), p("-sin(2*y)"));
    }

    #[test]
    fn mixed_frequencies_fall_back_to_sampling() {
        let v = p("sin(2*x) - 2*sin(x)*cos(x)").zero_test();
        assert_eq!(v, ZeroVerdict::Numeric(true));
        let v = p("sin(2*x) - sin(x)").zero_test();
        assert_eq!(v, ZeroVerdict::Numeric(false));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("exp(2*z)").eval(&[0.0, 0.0, 0.0]), 1.0);
        assert_eq!(
            p("x+y").eval_rational(&[ratio(1, 2), ratio(1, 2), rat(0)]),
            1.0
        );
        let e2 = p("exp(2*z)").eval(&[0.0, 0.0, 1.0]);
        assert!((e2 - std::f64::consts::E.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn inverse_only_for_exp_terms() {
        assert_eq!(p("3*exp(2*z)").try_inv().unwrap(), p("1/3*exp(-2*z)"));
        assert!(p("x").try_inv().is_err());
        assert!(p("1 + exp(z)").try_inv().is_err());
        assert!(p("0").try_inv().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "0",
            "-1/2",
            "x - 2*y^2*exp(-2*z)",
            "3/4*x*sin(x)*cos(2*y)^3 - exp(x + 1/2*y)",
            "-exp(-z)*cos(x)",
        ] {
            let e = p(s);
            assert_eq!(p(&e.to_string()), e, "round trip of {s}");
        }
    }

    #[test]
    fn constants_and_linear_forms() {
        assert_eq!(p("2/6").as_constant(), Some(ratio(1, 3)));
        assert_eq!(p("x").as_constant(), None);
        let lin = p("2*z - x").as_linear().unwrap();
        assert_eq!(lin.0, [rat(-1), rat(0), rat(2)]);
        assert!(p("x + 1").as_linear().is_none());
    }
}
