use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// Univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The vector never carries trailing
/// zeros, so the zero polynomial is the empty vector and structural equality
/// is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    fn from_big_ints(coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(Rat::from_integer).collect())
    }

    /// `ints / den`, reducing each coefficient once.
    fn from_scaled_ints(ints: Vec<BigInt>, den: &BigInt) -> Self {
        if den.is_one() {
            return Self::from_big_ints(ints);
        }
        Self::from_coeffs(
            ints.into_iter()
                .map(|c| {
                    if c.is_zero() {
                        Rat::zero()
                    } else {
                        Rat::new(c, den.clone())
                    }
                })
                .collect(),
        )
    }

    fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// A common denominator `den` and integers `ints` with `self = ints / den`.
    fn to_ints(&self) -> (BigInt, Vec<BigInt>) {
        if self.is_integral() {
            return (
                BigInt::one(),
                self.coeffs.iter().map(|c| c.numer().clone()).collect(),
            );
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            if c.denom().is_one() {
                acc
            } else {
                acc.lcm(c.denom())
            }
        });
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (den, ints)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial maps to itself.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn eval(&self, x0: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x0 + c)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    ///
    /// Runs as a pseudo-division on integer numerators, so coefficients are
    /// reduced only once at the end. Panics if `d` is the zero polynomial.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let (den_n, mut r) = self.to_ints();
        let (den_d, b) = d.to_ints();
        let lc = &b[dd];
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        // lc^* scaling applied so far: mult * N = Q * B + R
        let mut mult = BigInt::one();
        for k in (0..=nd - dd).rev() {
            let c = std::mem::take(&mut r[k + dd]);
            if c.is_zero() {
                continue;
            }
            let g = c.gcd(lc);
            let (f, c) = (lc / &g, c / &g);
            if !f.is_one() {
                for v in r[..k + dd].iter_mut().chain(q[k + 1..].iter_mut()) {
                    *v *= &f;
                }
                mult *= &f;
            }
            for (j, bc) in b[..dd].iter().enumerate() {
                r[k + j] -= &c * bc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        let den = den_n * mult;
        let quot: Vec<BigInt> = q.into_iter().map(|v| v * &den_d).collect();
        (
            Poly::from_scaled_ints(quot, &den),
            Poly::from_scaled_ints(r, &den),
        )
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Splits `self` into `content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let (den, ints) = self.to_ints();
        let (g, prim) = int_primitive(ints);
        (Rat::new(g, den), prim)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Runs the primitive remainder sequence over the integers so coefficient
    /// sizes stay bounded by the inputs' content-free parts.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let (_, pa) = a.primitive_part();
        let (_, pb) = b.primitive_part();
        Poly::from_big_ints(int_gcd(pa, pb)).monic()
    }

    /// Formal derivative; used for square-free checks in tests.
    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }
}

fn int_trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn int_primitive(mut v: Vec<BigInt>) -> (BigInt, Vec<BigInt>) {
    int_trim(&mut v);
    let Some(lead) = v.last() else {
        return (BigInt::zero(), v);
    };
    let mut g = BigInt::zero();
    for c in v.iter().rev() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if lead.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    (g, v)
}

/// Sparse pseudo-remainder of `a` by `b` over the integers.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    int_trim(&mut r);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().cloned().unwrap();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &c * bc;
        }
        int_trim(&mut r);
    }
    r
}

/// Gcd of two primitive integer polynomials with positive leading
/// coefficients. Tries the heuristic evaluation gcd first and falls back to
/// the primitive remainder sequence.
fn int_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    heuristic_gcd(&a, &b).unwrap_or_else(|| prs_gcd(a, b))
}

fn max_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

fn eval_int(v: &[BigInt], x: &BigInt) -> BigInt {
    v.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact quotient `a / b` over the integers, or `None` if `b` does not divide `a`.
fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return a.iter().all(Zero::is_zero).then(Vec::new);
    }
    let lc = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &c * bc;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Char-Geddes-Gonnet heuristic gcd. With `xi > 2 min(|a|, |b|) + 1`, a
/// primitive candidate that divides both inputs is their gcd.
fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut xi = BigInt::from(2) * max_norm(a).min(max_norm(b)) + BigInt::from(29);
    for _ in 0..6 {
        let g = eval_int(a, &xi).gcd(&eval_int(b, &xi));
        let half = &xi / 2;
        let mut digits = Vec::new();
        let mut rest = g;
        while !rest.is_zero() {
            let mut d = rest.mod_floor(&xi);
            if d > half {
                d -= &xi;
            }
            rest = (rest - &d) / &xi;
            digits.push(d);
        }
        let (_, cand) = int_primitive(digits);
        if !cand.is_empty()
            && int_exact_div(a, &cand).is_some()
            && int_exact_div(b, &cand).is_some()
        {
            return Some(cand);
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

fn prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = int_prem(&a, &b);
        a = b;
        b = int_primitive(r).1;
    }
    a
}

/// Coefficientwise `a + sign * b`, on integer numerators over a common
/// denominator.
fn add_signed(a: &Poly, b: &Poly, negate: bool) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let (da, mut x) = a.to_ints();
    let (db, y) = b.to_ints();
    let (den, fa, fb) = if da == db {
        (da, BigInt::one(), BigInt::one())
    } else {
        let l = da.lcm(&db);
        let (fa, fb) = (&l / &da, &l / &db);
        (l, fa, fb)
    };
    if !fa.is_one() {
        for v in x.iter_mut() {
            *v *= &fa;
        }
    }
    x.resize(n, BigInt::zero());
    for (v, w) in x.iter_mut().zip(y) {
        let w = if fb.is_one() { w } else { w * &fb };
        if negate {
            *v -= w;
        } else {
            *v += w;
        }
    }
    Poly::from_scaled_ints(x, &den)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        add_signed(self, rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        if rhs.is_zero() {
            return self.clone();
        }
        add_signed(self, rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (da, a) = self.to_ints();
        let (db, b) = rhs.to_ints();
        let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Poly::from_scaled_ints(c, &(da * db))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical form: ascending degree, explicit `*`, no spaces, e.g. `-21-30*x+4*x^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str("x")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn primitive_of(c: &[i64]) -> Vec<BigInt> {
        int_primitive(c.iter().map(|&v| BigInt::from(v)).collect()).1
    }

    fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn nonzero_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..=20, 1..5)
            .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
    }

    proptest! {
        #[test]
        fn heuristic_gcd_agrees_with_prs(f in nonzero_poly(), g in nonzero_poly(), h in nonzero_poly()) {
            let (f, g, h) = (primitive_of(&f), primitive_of(&g), primitive_of(&h));
            let a = int_primitive(int_mul(&f, &h)).1;
            let b = int_primitive(int_mul(&g, &h)).1;
            let prs = prs_gcd(a.clone(), b.clone());
            if let Some(heur) = heuristic_gcd(&a, &b) {
                prop_assert_eq!(heur, prs.clone());
            }
            prop_assert!(int_exact_div(&prs, &h).is_some());
        }
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn gcd_common_linear_factor() {
        assert_eq!(Poly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let a = p(&[2, 4, 6]);
        assert_eq!(Poly::gcd(&a, &Poly::zero()), a.monic());
        assert_eq!(Poly::gcd(&Poly::zero(), &a), a.monic());
        assert!(Poly::gcd(&Poly::zero(), &Poly::zero()).is_zero());
    }

    #[test]
    fn gcd_square_and_difference_of_squares() {
        // (x+1)^2 and (x+1)(x-1)
        assert_eq!(Poly::gcd(&p(&[1, 2, 1]), &p(&[-1, 0, 1])), p(&[1, 1]));
    }

    #[test]
    fn gcd_coprime_and_rational_coefficients() {
        assert!(Poly::gcd(&p(&[1, 0, 1]), &p(&[-1, 1])).is_one());
        let half = Rat::new(1.into(), 2.into());
        let a = Poly::from_coeffs(vec![half.clone(), half.clone()]); // (x+1)/2
        let b = p(&[3, 6, 3]); // 3(x+1)^2
        assert_eq!(Poly::gcd(&a, &b), p(&[1, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[5, -3, 0, 2, 7]);
        let d = p(&[1, 0, 3]);
        let (q, r) = a.div_rem(&d);
        assert!(r.degree().unwrap() < 2);
        assert_eq!(&(&q * &d) + &r, a);
    }

    #[test]
    fn display_is_ascending_with_explicit_products() {
        assert_eq!(p(&[-21, -30, 4]).to_string(), "-21-30*x+4*x^2");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "-x+x^3");
        let c = Poly::from_coeffs(vec![Rat::zero(), Rat::new((-3).into(), 4.into())]);
        assert_eq!(c.to_string(), "-3/4*x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn eval_horner() {
        assert_eq!(
            p(&[1, 1]).eval(&Rat::from_integer(2.into())),
            Rat::from_integer(3.into())
        );
    }
}
