//! Sparse bivariate polynomials over the rationals: the germ representation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::parse::{parse_poly, ParsePolyError};
use super::uni::UniPoly;
use crate::rational::{display, Rational};

/// Bivariate polynomial in `x` and `y`, stored as a map from exponent pairs
/// to nonzero coefficients. The map is ordered, so iteration — and hence every
/// derived output — is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl SparsePoly2 {
    pub fn zero() -> Self {
        SparsePoly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        SparsePoly2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = SparsePoly2::zero();
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn var_x() -> Self {
        SparsePoly2::monomial(1, 0, Rational::one())
    }

    pub fn var_y() -> Self {
        SparsePoly2::monomial(0, 1, Rational::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = SparsePoly2::zero();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(iter: I) -> Self {
        let mut p = SparsePoly2::zero();
        for ((i, j), c) in iter {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow_rat(x, i) * pow_rat(y, j);
        }
        acc
    }

    pub fn add(&self, rhs: &SparsePoly2) -> SparsePoly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &SparsePoly2) -> SparsePoly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> SparsePoly2 {
        SparsePoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &SparsePoly2) -> SparsePoly2 {
        let mut out = SparsePoly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly2 {
        if c.is_zero() {
            return SparsePoly2::zero();
        }
        SparsePoly2 {
            terms: self.terms.iter().map(|(&k, a)| (k, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> SparsePoly2 {
        let mut base = self.clone();
        let mut acc = SparsePoly2::one();
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

    /// Smallest total degree of a term; `None` for the zero polynomial
    /// (order infinity). This is the multiplicity of the germ at the origin.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Exact composition `self(for_x, for_y)`.
    pub fn substitute(&self, for_x: &SparsePoly2, for_y: &SparsePoly2) -> SparsePoly2 {
        let max_i = self.degree_x().unwrap_or(0);
        let max_j = self.degree_y().unwrap_or(0);
        let xpows = power_table(for_x, max_i);
        let ypows = power_table(for_y, max_j);
        let mut out = SparsePoly2::zero();
        for (&(i, j), c) in &self.terms {
            let term = xpows[i as usize].mul(&ypows[j as usize]).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Pullback under the blow-up chart that keeps the first coordinate:
    /// `(x, y) <- (u, u·v)`. A term `x^i y^j` becomes `u^(i+j) v^j`.
    pub fn blowup_chart_first(&self) -> SparsePoly2 {
        SparsePoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + j, j), c.clone()))
                .collect(),
        }
    }

    /// Pullback under the chart that keeps the second coordinate:
    /// `(x, y) <- (u·v, v)`. A term `x^i y^j` becomes `u^i v^(i+j)`.
    pub fn blowup_chart_second(&self) -> SparsePoly2 {
        SparsePoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, i + j), c.clone()))
                .collect(),
        }
    }

    /// Order of vanishing along the first coordinate axis: the least power of
    /// `x` appearing. `None` for zero.
    pub fn order_first(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    pub fn order_second(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    /// Exact division by `x^k`; panics if some term has a smaller exponent.
    pub fn div_first_power(&self, k: u32) -> SparsePoly2 {
        SparsePoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(i >= k, "division by x^{k} is not exact");
                    ((i - k, j), c.clone())
                })
                .collect(),
        }
    }

    pub fn div_second_power(&self, k: u32) -> SparsePoly2 {
        SparsePoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| {
                    assert!(j >= k, "division by y^{k} is not exact");
                    ((i, j - k), c.clone())
                })
                .collect(),
        }
    }

    /// Restriction to the first axis `x = 0`, as a polynomial in the second
    /// variable.
    pub fn restrict_first_zero(&self) -> UniPoly {
        let deg = self.degree_y().unwrap_or(0) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                coeffs[j as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Restriction to the second axis `y = 0`, as a polynomial in the first
    /// variable.
    pub fn restrict_second_zero(&self) -> UniPoly {
        let deg = self.degree_x().unwrap_or(0) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Recenter the second coordinate: `p(x, y + c)`.
    pub fn shift_second(&self, c: &Rational) -> SparsePoly2 {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = SparsePoly2::zero();
        for (&(i, j), coeff) in &self.terms {
            // (y + c)^j expanded by the binomial theorem.
            let mut binom = BigInt::one();
            let mut cpow = Rational::one();
            for k in (0..=j).rev() {
                // coefficient of y^k is C(j, k) c^(j-k)
                let b = Rational::from_integer(binom.clone());
                out.add_term(i, k, coeff * &b * &cpow);
                if k > 0 {
                    binom = binom * BigInt::from(k) / BigInt::from(j - k + 1);
                    cpow *= c;
                }
            }
        }
        out
    }

    /// Derivative with respect to the first variable.
    pub fn derivative_x(&self) -> SparsePoly2 {
        let mut out = SparsePoly2::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * Rational::from_integer(BigInt::from(i)));
            }
        }
        out
    }

    pub fn derivative_y(&self) -> SparsePoly2 {
        let mut out = SparsePoly2::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * Rational::from_integer(BigInt::from(j)));
            }
        }
        out
    }

    /// Coefficient of `y^j`, as a polynomial in `x`.
    pub fn coeff_of_second(&self, j: u32) -> UniPoly {
        let deg = self.degree_x().unwrap_or(0) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); deg + 1];
        for (&(i, jj), c) in &self.terms {
            if jj == j {
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Rebuild from a dense-in-`y` view: `coeffs[j]` is the coefficient of `y^j`.
    pub fn from_second_dense(coeffs: &[UniPoly]) -> SparsePoly2 {
        let mut out = SparsePoly2::zero();
        for (j, u) in coeffs.iter().enumerate() {
            for (i, c) in u.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        out
    }

    /// Linear part `(∂/∂x, ∂/∂y)` at the origin.
    pub fn linear_part(&self) -> (Rational, Rational) {
        (self.coeff(1, 0), self.coeff(0, 1))
    }
}

fn pow_rat(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

fn power_table(p: &SparsePoly2, max: u32) -> Vec<SparsePoly2> {
    let mut table = Vec::with_capacity(max as usize + 1);
    table.push(SparsePoly2::one());
    for _ in 0..max {
        let next = table.last().unwrap().mul(p);
        table.push(next);
    }
    table
}

impl fmt::Display for SparsePoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first, then lexicographic in (i, j).
        let mut keys: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by(|a, b| {
            (b.0 + b.1, b.0)
                .cmp(&(a.0 + a.1, a.0))
        });
        let mut first = true;
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = (i == 0 && j == 0) || !mag.is_one();
            let mut wrote = false;
            if show_coeff {
                write!(f, "{}", display(&mag))?;
                wrote = true;
            }
            for (var, e) in [("x", i), ("y", j)] {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{var}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl FromStr for SparsePoly2 {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

/// Convenience used throughout the unit tests.
#[cfg(test)]
pub(crate) fn poly(s: &str) -> SparsePoly2 {
    s.parse().expect("literal polynomial must parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn order_examples() {
        assert_eq!(poly("x^2 + y^3").order_at_origin(), Some(2));
        assert_eq!(poly("x*y").order_at_origin(), Some(2));
        assert_eq!(poly("1 + x").order_at_origin(), Some(0));
        assert_eq!(SparsePoly2::zero().order_at_origin(), None);
    }

    #[test]
    fn substitute_examples() {
        // (x^2 + y^3)[x <- u, y <- u v] = u^2 (1 + u v^3)
        let p = poly("x^2 + y^3");
        let sub = p.substitute(&poly("x"), &poly("x*y"));
        assert_eq!(sub, poly("x^2 + x^3*y^3"));
        assert_eq!(sub, p.blowup_chart_first());

        let q = poly("x*y");
        assert_eq!(q.blowup_chart_first(), poly("x^2*y"));
        assert_eq!(q.substitute(&poly("x"), &poly("y")), q);
    }

    #[test]
    fn eval_commutes_with_substitution() {
        let p = poly("x^2 - 2*x*y + y^3 - 1/3");
        let fx = poly("x + y^2");
        let fy = poly("x*y - 2");
        let s = p.substitute(&fx, &fy);
        let (a, b) = (rat(3, 2), rat(-1, 3));
        assert_eq!(s.eval(&a, &b), p.eval(&fx.eval(&a, &b), &fy.eval(&a, &b)));
    }

    #[test]
    fn shift_recenters() {
        let p = poly("y^2 - 1");
        let shifted = p.shift_second(&int(1)); // (y+1)^2 - 1 = y^2 + 2y
        assert_eq!(shifted, poly("y^2 + 2*y"));
        assert!(shifted.constant_term().is_zero());
    }

    #[test]
    fn restrictions() {
        let p = poly("x^2 + x*y + y^3 + 2*y");
        assert_eq!(p.restrict_first_zero(), UniPoly::from_i64(&[0, 2, 0, 1]));
        assert_eq!(p.restrict_second_zero(), UniPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn display_roundtrip() {
        let p = poly("(1/2)*x*y^4 - y^7 + 3");
        let shown = alloc::format!("{p}");
        let back: SparsePoly2 = shown.parse().unwrap();
        assert_eq!(back, p);
    }
}
