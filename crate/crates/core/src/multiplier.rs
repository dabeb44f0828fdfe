//! Log canonical threshold, candidate jumping numbers, and inner jump
//! multiplicities, computed from resolution data by exact floor arithmetic.
//!
//! The one-sided limit that defines the inner jump divisor is evaluated
//! symbolically: for exponent `α = r/d` in lowest terms, the coefficient on a
//! component with `d | m` is `k + 1 − α·m`, and `k − ⌊α·m⌋` otherwise. No
//! small numeric parameter exists anywhere.
//!
//! The inner jump multiplicity itself is the Euler characteristic of a twist
//! on the curve `F` formed by the exceptional components whose multiplicity
//! is divisible by `d`. All such curves are rational, so
//! `χ(O_{P¹}(n)) = n + 1` per component and each node subtracts one.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rational::{denominator_divides, display, floor_mul, in_unit_interval, Rational};
use crate::resdata::ResolutionData;

/// Integer divisor on the resolution surface, one coefficient per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorOnY {
    coeffs: Vec<i64>,
}

impl DivisorOnY {
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, data: &ResolutionData, id: &str) -> Result<i64> {
        Ok(self.coeffs[data.index_of(id)?])
    }
}

/// Sorted table of positive spectrum multiplicities on `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpectrumTable {
    entries: Vec<(Rational, u64)>,
}

impl SpectrumTable {
    /// Build from exponent/multiplicity pairs, dropping zeros. Negative
    /// multiplicities are invalid and rejected.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, i64)>) -> Result<Self> {
        let mut map: BTreeMap<Rational, i64> = BTreeMap::new();
        for (alpha, n) in pairs {
            if n < 0 {
                return Err(Error::MalformedData {
                    detail: alloc::format!(
                        "negative multiplicity {n} at exponent {}",
                        display(&alpha)
                    ),
                });
            }
            if n > 0 {
                *map.entry(alpha).or_insert(0) += n;
            }
        }
        Ok(SpectrumTable {
            entries: map
                .into_iter()
                .map(|(a, n)| (a, n as u64))
                .collect(),
        })
    }

    pub fn entries(&self) -> &[(Rational, u64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, alpha: &Rational) -> u64 {
        self.entries
            .iter()
            .find(|(a, _)| a == alpha)
            .map(|(_, n)| *n)
            .unwrap_or(0)
    }
}

fn ensure_unit_interval(alpha: &Rational) -> Result<()> {
    if in_unit_interval(alpha) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange {
            alpha: display(alpha),
        })
    }
}

fn ensure_positive_multiplicities(data: &ResolutionData) -> Result<()> {
    for c in data.components() {
        if c.m <= 0 {
            return Err(Error::MalformedData {
                detail: alloc::format!("component `{}` has non-positive multiplicity", c.id),
            });
        }
    }
    Ok(())
}

/// Log canonical threshold: `min (k_i + 1) / m_i` over all components.
pub fn lct(data: &ResolutionData) -> Result<Rational> {
    if data.is_empty() {
        return Err(Error::EmptyComponents);
    }
    ensure_positive_multiplicities(data)?;
    data.components()
        .iter()
        .map(|c| Rational::new((c.k + 1).into(), c.m.into()))
        .min()
        .ok_or(Error::EmptyComponents)
}

/// Finite set of exponents in `(0, 1]` where any multiplier invariant can
/// change: `(k_i + 1 + n) / m_i` over components and nonnegative `n`.
pub fn candidate_alphas(data: &ResolutionData) -> Vec<Rational> {
    let one = Rational::from_integer(1.into());
    let mut set: Vec<Rational> = Vec::new();
    for c in data.components() {
        if c.m <= 0 {
            continue;
        }
        for n in 0..=c.m {
            let alpha = Rational::new((c.k + 1 + n).into(), c.m.into());
            if alpha > one {
                break;
            }
            if alpha.numer() > &0.into() && !set.contains(&alpha) {
                set.push(alpha);
            }
        }
    }
    set.sort();
    set
}

/// Integer divisor realizing the one-sided floor `K − ⌊(1−ε)α·(pullback)⌋`
/// for all small ε at once.
pub fn inner_coefficients(data: &ResolutionData, alpha: &Rational) -> Result<DivisorOnY> {
    ensure_unit_interval(alpha)?;
    let mut coeffs = Vec::with_capacity(data.len());
    for c in data.components() {
        let coeff = if denominator_divides(alpha, c.m) {
            // α m is an integer, so the floor just below α m is α m − 1
            let am = floor_mul(alpha, c.m);
            c.k + 1 - am.to_i64().ok_or(Error::Overflow)?
        } else {
            c.k - floor_mul(alpha, c.m).to_i64().ok_or(Error::Overflow)?
        };
        coeffs.push(coeff);
    }
    Ok(DivisorOnY { coeffs })
}

/// Indices of the exceptional-over-origin components whose multiplicity the
/// reduced denominator of `alpha` divides: the support of the inner jump.
pub fn inner_support(data: &ResolutionData, alpha: &Rational) -> Vec<usize> {
    data.exceptional_indices()
        .filter(|&i| {
            let c = data.component(i);
            c.over_origin && denominator_divides(alpha, c.m)
        })
        .collect()
}

/// Inner jump multiplicity at `alpha`, as the Euler characteristic of the
/// inner twist restricted to the divisibility-selected exceptional curves.
pub fn inner_jump_multiplicity(data: &ResolutionData, alpha: &Rational) -> Result<i64> {
    let twist = inner_coefficients(data, alpha)?;
    let support = inner_support(data, alpha);
    let mut total: i64 = 0;
    for &i in &support {
        let deg = data.restriction_degree(twist.coefficients(), i)?;
        total = total
            .checked_add(1)
            .and_then(|t| t.checked_add(deg))
            .ok_or(Error::Overflow)?;
    }
    for (a, &i) in support.iter().enumerate() {
        for &j in support.iter().skip(a + 1) {
            total = total
                .checked_sub(data.pair_count(i, j))
                .ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}

/// Table of inner jump multiplicities over the candidate exponents,
/// zero entries dropped.
pub fn inner_spectrum(data: &ResolutionData) -> Result<SpectrumTable> {
    let mut pairs = Vec::new();
    for alpha in candidate_alphas(data) {
        let n = inner_jump_multiplicity(data, &alpha)?;
        pairs.push((alpha, n));
    }
    SpectrumTable::from_pairs(pairs)
}

/// Render a spectrum table for error messages and reports.
pub fn spectrum_to_string(table: &SpectrumTable) -> String {
    use core::fmt::Write as _;
    let mut out = String::new();
    for (i, (alpha, n)) in table.entries().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{} -> {}", display(alpha), n);
    }
    out
}
