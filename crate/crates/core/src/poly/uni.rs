//! Dense univariate polynomials over the rationals.
//!
//! These carry the residual data on exceptional lines: restrictions of strict
//! transforms to the line, whose roots are the points that still need work.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{display, Rational};

/// Univariate polynomial, `coeffs[i]` the coefficient of the i-th power.
/// Invariant: the leading stored coefficient is nonzero (zero polynomial has
/// an empty coefficient vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            UniPoly::zero()
        } else {
            UniPoly { coeffs: vec![c] }
        }
    }

    pub fn var() -> Self {
        UniPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    /// Monic linear factor `t - root`.
    pub fn linear_from_root(root: &Rational) -> Self {
        UniPoly {
            coeffs: vec![-root.clone(), Rational::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0: index of the lowest nonzero coefficient.
    /// `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|p| p as u32)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * Rational::from_integer(BigInt::from(i)));
        }
        UniPoly::from_coeffs(out)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, rhs: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let dd = match self.degree() {
            None => return (UniPoly::zero(), UniPoly::zero()),
            Some(d) => d,
        };
        let rd = rhs.degree().unwrap();
        if dd < rd {
            return (UniPoly::zero(), self.clone());
        }
        let lc = rhs.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); dd - rd + 1];
        for k in (rd..=dd).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &lc;
            quot[k - rd] = q.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let idx = k - rd + j;
                let delta = &q * b;
                rem[idx] -= delta;
            }
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, rhs: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divmod(rhs);
        r.is_zero().then_some(q)
    }

    /// Multiplicity of `root` as a zero of the polynomial (0 when not a root).
    pub fn root_multiplicity(&self, root: &Rational) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let lin = UniPoly::linear_from_root(root);
        let mut mult = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.exact_div(&lin) {
                Some(q) => {
                    mult += 1;
                    cur = q;
                }
                None => break,
            }
        }
        mult
    }

    /// Clear denominators and common integer content; returns integer
    /// coefficients with positive leading coefficient, together with nothing —
    /// the rational scale is irrelevant everywhere this is used.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            g = BigInt::one();
        }
        if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
            g = -g;
        }
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        ints
    }

    pub fn from_integer_coeffs(coeffs: &[BigInt]) -> UniPoly {
        UniPoly::from_coeffs(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Primitive associate: integer coefficients, content 1, positive leading
    /// coefficient. The canonical representative used for gcds and reporting.
    pub fn primitive_associate(&self) -> UniPoly {
        UniPoly::from_integer_coeffs(&self.primitive_integer())
    }

    /// Greatest common divisor, returned as the primitive associate.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return rhs.primitive_associate();
        }
        if rhs.is_zero() {
            return self.primitive_associate();
        }
        // Monic Euclid over Q, then normalize. Residual degrees are small, so
        // coefficient growth is not a concern here.
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.primitive_associate()
    }

    /// Render with the given variable name, highest power first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                let _ = write!(out, "{}", display(&mag));
            }
            if i > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    let _ = write!(out, "^{i}");
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn divmod_exact() {
        // (t - 1)(t + 2) = t^2 + t - 2
        let p = UniPoly::from_i64(&[-2, 1, 1]);
        let lin = UniPoly::from_i64(&[-1, 1]);
        let (q, r) = p.divmod(&lin);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_i64(&[2, 1]));
    }

    #[test]
    fn root_multiplicity_counts() {
        // (t - 1)^2 (t + 3)
        let p = UniPoly::from_i64(&[-1, 1])
            .pow(2)
            .mul(&UniPoly::from_i64(&[3, 1]));
        assert_eq!(p.root_multiplicity(&int(1)), 2);
        assert_eq!(p.root_multiplicity(&int(-3)), 1);
        assert_eq!(p.root_multiplicity(&int(0)), 0);
        assert_eq!(p.root_multiplicity(&rat(1, 2)), 0);
    }

    #[test]
    fn gcd_primitive() {
        let a = UniPoly::from_i64(&[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_i64(&[1, 1]).scale(&rat(3, 7)); // (3/7)(t + 1)
        assert_eq!(a.gcd(&b), UniPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn display_readable() {
        let p = UniPoly::from_coeffs(vec![int(1), rat(-1, 2), int(0), int(2)]);
        assert_eq!(p.display_with("t"), "2*t^3 - 1/2*t + 1");
    }
}
