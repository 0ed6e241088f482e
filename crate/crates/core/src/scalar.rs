//! The coefficient field `Q(q)`.
//!
//! [`RationalFunction`] stores a numerator and denominator in `Z[q]` in a
//! canonical form: coprime over `Q`, denominator with positive leading
//! coefficient, and no common integer content. Structural equality is then
//! value equality.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in `q` with integer coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(alloc::vec![c])
    }

    /// `c · q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = alloc::vec![BigInt::zero(); k];
        v.push(c);
        Poly::from_coeffs(v)
    }

    pub fn q() -> Self {
        Poly::monomial(BigInt::one(), 1)
    }

    /// `q − r`.
    pub fn linear(r: i64) -> Self {
        Poly::from_coeffs(alloc::vec![BigInt::from(-r), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly(self.0.iter().map(|a| a / c).collect())
    }

    fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = alloc::vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, sign kept.
    pub fn primitive_part(&self) -> Poly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&c)
        }
    }

    fn pseudo_rem(&self, divisor: &Poly) -> Poly {
        let db = divisor.degree().expect("nonzero divisor");
        let lb = divisor.lead();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            r = &r.scale(&lb) - &divisor.scale(&lr).shift(dr - db);
            r = r.primitive_part();
        }
        r
    }

    /// Monic-up-to-content gcd: primitive, positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part().with_positive_lead();
        }
        if other.is_zero() {
            return self.primitive_part().with_positive_lead();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().with_positive_lead()
    }

    fn with_positive_lead(self) -> Poly {
        if self.lead().is_negative() {
            -self
        } else {
            self
        }
    }

    /// Quotient of an exact division in `Z[q]`.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let db = divisor.degree().expect("nonzero divisor");
        let lb = divisor.lead();
        let mut r = self.clone();
        let mut quot = alloc::vec![BigInt::zero(); self.0.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let (c, rem) = r.lead().div_rem(&lb);
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            quot[dr - db] = c.clone();
            r = &r - &divisor.scale(&c).shift(dr - db);
        }
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Poly::from_coeffs(quot)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = alloc::vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expanded(self))
    }
}

/// Element of `Q(q)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

pub type Rf = RationalFunction;

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivideByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.lead().is_negative() {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::from_poly(Poly::constant(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_poly(Poly::constant(n))
    }

    pub fn rational(n: i64, d: i64) -> Result<Self> {
        Self::new(Poly::constant(BigInt::from(n)), Poly::constant(BigInt::from(d)))
    }

    pub fn q() -> Self {
        Self::from_poly(Poly::q())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = Poly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RationalFunction {
                num: Poly::one(),
                den: m,
            }
        }
    }

    /// `(q − 1)^k` for any integer `k`.
    pub fn q_minus_one_pow(k: i64) -> Self {
        let m = Poly::linear(1).pow(k.unsigned_abs() as u32);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RationalFunction {
                num: Poly::one(),
                den: m,
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant() && self.den.is_one()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivideByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 {
            self.inv().expect("power of zero with negative exponent")
        } else {
            self.clone()
        };
        RationalFunction {
            num: base.num.pow(k.unsigned_abs() as u32),
            den: base.den.pow(k.unsigned_abs() as u32),
        }
    }

    pub fn evaluate(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    pub fn evaluate_int(&self, q0: i64) -> Result<BigRational> {
        self.evaluate(&BigRational::from_integer(BigInt::from(q0)))
    }

    /// Canonical fully factored rendering, e.g. `q^2*(q-1)/(q+1)`.
    pub fn render(&self) -> String {
        let num = render_poly(&self.num);
        if self.den.is_one() {
            return num;
        }
        let den = render_poly(&self.den);
        if has_top_level_star(&den) {
            alloc::format!("{num}/({den})")
        } else {
            alloc::format!("{num}/{den}")
        }
    }
}

fn has_top_level_star(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl Add<&Rf> for &Rf {
    type Output = Rf;
    fn add(self, rhs: &Rf) -> Rf {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Rf::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Rf::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&Rf> for &Rf {
    type Output = Rf;
    fn sub(self, rhs: &Rf) -> Rf {
        self + &(-rhs.clone())
    }
}

impl Mul<&Rf> for &Rf {
    type Output = Rf;
    fn mul(self, rhs: &Rf) -> Rf {
        if self.is_zero() || rhs.is_zero() {
            return Rf::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Rf::from_poly(&self.num * &rhs.num);
        }
        Rf::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] otherwise.
impl Div<&Rf> for &Rf {
    type Output = Rf;
    fn div(self, rhs: &Rf) -> Rf {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rf> for Rf {
            type Output = Rf;
            fn $m(self, rhs: Rf) -> Rf { (&self).$m(&rhs) }
        }
        impl $tr<&Rf> for Rf {
            type Output = Rf;
            fn $m(self, rhs: &Rf) -> Rf { (&self).$m(rhs) }
        }
        impl $tr<Rf> for &Rf {
            type Output = Rf;
            fn $m(self, rhs: Rf) -> Rf { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Rf {
    type Output = Rf;
    fn neg(self) -> Rf {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &Rf {
    type Output = Rf;
    fn neg(self) -> Rf {
        -self.clone()
    }
}

impl AddAssign<&Rf> for Rf {
    fn add_assign(&mut self, rhs: &Rf) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Rf {
    fn add_assign(&mut self, rhs: Rf) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Rf> for Rf {
    fn sub_assign(&mut self, rhs: &Rf) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rf> for Rf {
    fn mul_assign(&mut self, rhs: &Rf) {
        *self = &*self * rhs;
    }
}

impl Sum for Rf {
    fn sum<I: Iterator<Item = Rf>>(iter: I) -> Rf {
        iter.fold(Rf::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rf> for Rf {
    fn sum<I: Iterator<Item = &'a Rf>>(iter: I) -> Rf {
        iter.fold(Rf::zero(), |a, b| a + b)
    }
}

impl Product for Rf {
    fn product<I: Iterator<Item = Rf>>(iter: I) -> Rf {
        iter.fold(Rf::one(), |a, b| a * b)
    }
}

impl From<i64> for Rf {
    fn from(n: i64) -> Self {
        Rf::integer(n)
    }
}

impl From<Poly> for Rf {
    fn from(p: Poly) -> Self {
        Rf::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Expanded form, highest degree first: `q^2-3*q+2`.
fn expanded(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        let unit = abs.is_one();
        if k == 0 {
            let _ = write!(s, "{abs}");
        } else {
            if !unit {
                let _ = write!(s, "{abs}*");
            }
            s.push('q');
            if k > 1 {
                let _ = write!(s, "^{k}");
            }
        }
    }
    s
}

/// Integer roots tried when factoring for display.
const ROOT_RANGE: i64 = 16;

/// `c*q^k*(q-r1)^e1*...*(rest)`, factors ordered by `|r|` with positive roots first.
fn render_poly(p: &Poly) -> String {
    if p.is_constant() {
        return p.lead().to_string();
    }
    let lead_sign = if p.lead().is_negative() { -1 } else { 1 };
    let content = p.content() * BigInt::from(lead_sign);
    let mut rest = p.div_scalar_exact(&content);
    let zeros = rest.0.iter().take_while(|c| c.is_zero()).count();
    rest = Poly(rest.0[zeros..].to_vec());
    let mut roots: Vec<(i64, u32)> = Vec::new();
    let mut candidates: Vec<i64> = (1..=ROOT_RANGE).flat_map(|r| [r, -r]).collect();
    candidates.sort_by_key(|&r| (r.abs(), r < 0));
    for r in candidates {
        let mut mult = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.eval_int(&BigInt::from(r)).is_zero() {
            rest = rest.div_exact(&Poly::linear(r));
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    let mut factors: Vec<String> = Vec::new();
    if zeros > 0 {
        factors.push(if zeros == 1 {
            "q".into()
        } else {
            alloc::format!("q^{zeros}")
        });
    }
    for (r, e) in roots {
        let base = if r > 0 {
            alloc::format!("(q-{r})")
        } else {
            alloc::format!("(q+{})", -r)
        };
        factors.push(if e == 1 { base } else { alloc::format!("{base}^{e}") });
    }
    if !rest.is_constant() {
        factors.push(alloc::format!("({})", expanded(&rest)));
    } else {
        // rest is ±1 after removing content; fold its sign into the content
        debug_assert!(rest.lead().abs().is_one());
    }
    let constant = if rest.is_constant() { content * rest.lead() } else { content };
    let body = factors.join("*");
    if constant.is_one() {
        body
    } else if (-&constant).is_one() {
        alloc::format!("-{body}")
    } else {
        alloc::format!("{constant}*{body}")
    }
}

impl FromStr for RationalFunction {
    type Err = Error;

    /// Parses `+ - * / ^`, parentheses, integers and `q`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
            text: s,
        };
        let v = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.err());
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self) -> Error {
        Error::Parse(self.text.into())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Rf> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Rf> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == b'*' { acc * t } else { acc.checked_div(&t)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Rf> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Rf> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?.to_i64().ok_or_else(|| self.err())?;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(Error::DivideByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err());
        }
        self.text[start..self.pos].parse().map_err(|_| self.err())
    }

    fn atom(&mut self) -> Result<Rf> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Rf::q())
            }
            Some(c) if c.is_ascii_digit() => Ok(Rf::from_bigint(self.integer()?)),
            _ => Err(self.err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rf(s: &str) -> Rf {
        s.parse().unwrap()
    }

    #[test]
    fn field_examples() {
        assert_eq!(rf("(q-1)/q") + rf("1/q"), Rf::one());
        let v = Rf::q_pow(3) * rf("1-1/q") * rf("1/(1-q)");
        assert_eq!(v, -Rf::q_pow(2));
        let x = rf("(q-1)^2/q");
        assert_eq!(&x * &x.inv().unwrap(), Rf::one());
        assert_eq!(Rf::zero().inv(), Err(Error::DivideByZero));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(rf("q-1").evaluate_int(2).unwrap(), BigRational::one());
        assert!(rf("(q-1)*(q-2)").evaluate_int(2).unwrap().is_zero());
        assert_eq!(
            rf("q^2*(q-1)").evaluate_int(3).unwrap(),
            BigRational::from_integer(18.into())
        );
        assert!(matches!(rf("1/(q-1)").evaluate_int(1), Err(Error::Pole(_))));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(rf("(2*q-2)/(4*q)"), rf("(q-1)/(2*q)"));
        assert_eq!(rf("(q^2-1)/(q+1)"), rf("q-1"));
        assert_eq!(rf("1/(-q)"), rf("-1/q"));
        assert!(rf("-1/q").denominator().lead() > BigInt::zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(rf("q^3-q^2").render(), "q^2*(q-1)");
        assert_eq!(rf("q^2-3*q+2").render(), "(q-1)*(q-2)");
        assert_eq!(rf("q^3-3*q^2+2*q").render(), "q*(q-1)*(q-2)");
        assert_eq!(rf("1/(1-q)").render(), "-1/(q-1)");
        assert_eq!(rf("q^2*(q-1)/(q+1)").render(), "q^2*(q-1)/(q+1)");
        assert_eq!(rf("1/(q^2*(q-1))").render(), "1/(q^2*(q-1))");
        assert_eq!(rf("(q-1)^2/q").render(), "(q-1)^2/q");
        assert_eq!(rf("q^2+q+1").render(), "(q^2+q+1)");
        assert_eq!(rf("2*q-2").render(), "2*(q-1)");
        assert_eq!(rf("-3").render(), "-3");
        assert_eq!(rf("1/2").render(), "1/2");
        assert_eq!(rf("q/2").render(), "q/2");
        assert_eq!(Rf::zero().render(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!("q+".parse::<Rf>().is_err());
        assert!("x".parse::<Rf>().is_err());
        assert_eq!("1/0".parse::<Rf>(), Err(Error::DivideByZero));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-6i64..=6, 0..4)
            .prop_map(|v| Poly::from_coeffs(v.into_iter().map(BigInt::from).collect()))
    }

    fn arb_rf() -> impl Strategy<Value = Rf> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| Rf::new(n, d).ok())
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(x in arb_rf()) {
            prop_assert_eq!(x.render().parse::<Rf>().unwrap(), x);
        }

        #[test]
        fn evaluate_is_ring_homomorphism(x in arb_rf(), y in arb_rf(), q0 in 5i64..40) {
            let at = |z: &Rf| z.evaluate_int(q0);
            if let (Ok(a), Ok(b)) = (at(&x), at(&y)) {
                prop_assert_eq!(at(&(&x + &y)).unwrap(), &a + &b);
                prop_assert_eq!(at(&(&x * &y)).unwrap(), &a * &b);
            }
        }

        #[test]
        fn field_axioms(x in arb_rf(), y in arb_rf(), z in arb_rf()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x - &x, Rf::zero());
            if !x.is_zero() {
                prop_assert_eq!(&(&y / &x) * &x, y.clone());
            }
        }
    }
}
