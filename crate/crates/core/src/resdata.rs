//! The validated resolution-data model every calculator consumes.
//!
//! A resolution is a list of components — exceptional curves with their
//! multiplicity `m`, discrepancy `k`, and self-intersection, plus strict
//! branches — together with a symmetric table of geometric intersection
//! counts. Two exact linear identities tie the numbers together and are
//! checked by [`ResolutionData::validate`]:
//!
//! * principality: the pulled-back divisor has degree 0 on every exceptional
//!   curve, `Σ_j m_j (E_j · E_i) = 0`;
//! * adjunction: exceptional curves are rational, so
//!   `Σ_j k_j (E_j · E_i) = -2 - E_i²` with `j` over exceptional components.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::SparsePoly2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentKind {
    Exceptional,
    Strict,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Exceptional => write!(f, "exceptional"),
            ComponentKind::Strict => write!(f, "strict"),
        }
    }
}

/// One irreducible piece of the total transform. A strict component with
/// `cluster_degree > 1` stands for a full conjugacy class of branches counted
/// together; intersection counts involving it are geometric point counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub kind: ComponentKind,
    /// Multiplicity in the pulled-back divisor.
    pub m: i64,
    /// Coefficient in the relative canonical divisor; 0 for strict components.
    pub k: i64,
    /// Whether the component maps to the origin (true exactly for
    /// exceptional components in this germ setting).
    pub over_origin: bool,
    /// Self-intersection on the resolution surface; exceptional only.
    pub self_intersection: Option<i64>,
    /// Size of the conjugacy class this component stands for (1 = rational).
    pub cluster_degree: i64,
}

impl Component {
    pub fn exceptional(id: &str, m: i64, k: i64, self_intersection: i64) -> Self {
        Component {
            id: id.to_string(),
            kind: ComponentKind::Exceptional,
            m,
            k,
            over_origin: true,
            self_intersection: Some(self_intersection),
            cluster_degree: 1,
        }
    }

    pub fn strict(id: &str, m: i64, cluster_degree: i64) -> Self {
        Component {
            id: id.to_string(),
            kind: ComponentKind::Strict,
            m,
            k: 0,
            over_origin: false,
            self_intersection: None,
            cluster_degree,
        }
    }

    pub fn is_exceptional(&self) -> bool {
        self.kind == ComponentKind::Exceptional
    }
}

/// A named failure of one of the structural identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `Σ_j m_j (E_j · E_i)` is nonzero on the named exceptional component.
    Principality { id: String, total: i64 },
    /// `Σ_j k_j (E_j · E_i)` differs from `-2 - E_i²`.
    Adjunction { id: String, lhs: i64, rhs: i64 },
    /// Field-level constraint broken (flags, ranges, missing data).
    Shape { id: String, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Principality { id, total } => write!(
                f,
                "principality fails at {id}: pulled-back divisor has degree {total}"
            ),
            Violation::Adjunction { id, lhs, rhs } => write!(
                f,
                "adjunction fails at {id}: canonical degree {lhs}, expected {rhs}"
            ),
            Violation::Shape { id, detail } => write!(f, "{id}: {detail}"),
        }
    }
}

/// Immutable resolution data. Construction performs structural checks only;
/// the numeric identities are reported by [`validate`](Self::validate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionData {
    components: Vec<Component>,
    index: BTreeMap<String, usize>,
    /// Geometric intersection point counts, keyed by `(i, j)` with `i < j`.
    intersections: BTreeMap<(usize, usize), i64>,
    /// Chart maps recorded by the resolver for exceptional components:
    /// original coordinates expressed in a chart where the component is the
    /// first coordinate axis.
    charts: BTreeMap<usize, (SparsePoly2, SparsePoly2)>,
}

impl ResolutionData {
    pub fn new(
        components: Vec<Component>,
        intersections: impl IntoIterator<Item = (String, String, i64)>,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, c) in components.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::MalformedData {
                    detail: alloc::format!("duplicate component id `{}`", c.id),
                });
            }
        }
        let mut data = ResolutionData {
            components,
            index,
            intersections: BTreeMap::new(),
            charts: BTreeMap::new(),
        };
        for (a, b, points) in intersections {
            let i = data.index_of(&a)?;
            let j = data.index_of(&b)?;
            if i == j {
                return Err(Error::MalformedData {
                    detail: alloc::format!("self-pair `{a}` in the intersection table"),
                });
            }
            if points < 0 {
                return Err(Error::MalformedData {
                    detail: alloc::format!("negative intersection count for `{a}`, `{b}`"),
                });
            }
            let key = (i.min(j), i.max(j));
            if data.intersections.insert(key, points).is_some() {
                return Err(Error::MalformedData {
                    detail: alloc::format!("duplicate intersection entry for `{a}`, `{b}`"),
                });
            }
        }
        data.intersections.retain(|_, v| *v != 0);
        Ok(data)
    }

    pub(crate) fn set_chart(&mut self, idx: usize, chart: (SparsePoly2, SparsePoly2)) {
        self.charts.insert(idx, chart);
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, idx: usize) -> &Component {
        &self.components[idx]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownComponent { id: id.to_string() })
    }

    /// Geometric intersection point count between two distinct components.
    pub fn pair_count(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 0;
        }
        let key = (i.min(j), i.max(j));
        self.intersections.get(&key).copied().unwrap_or(0)
    }

    /// All stored positive intersection entries, `(i, j, points)` with `i < j`.
    pub fn intersection_entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.intersections.iter().map(|(&(i, j), &p)| (i, j, p))
    }

    pub fn chart(&self, idx: usize) -> Option<&(SparsePoly2, SparsePoly2)> {
        self.charts.get(&idx)
    }

    pub fn exceptional_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_exceptional())
            .map(|(i, _)| i)
    }

    /// Degree on the i-th exceptional curve of the divisor with the given
    /// coefficients (self-intersection used for the diagonal term).
    pub fn restriction_degree(&self, coeffs: &[i64], i: usize) -> Result<i64> {
        let self_int = self.components[i]
            .self_intersection
            .ok_or_else(|| Error::NotExceptional {
                id: self.components[i].id.clone(),
            })?;
        let mut acc: i128 = coeffs[i] as i128 * self_int as i128;
        for j in 0..self.components.len() {
            if j == i {
                continue;
            }
            acc += coeffs[j] as i128 * self.pair_count(i, j) as i128;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }

    /// Check every invariant; an empty list means the data is coherent.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for c in &self.components {
            match c.kind {
                ComponentKind::Exceptional => {
                    if !c.over_origin {
                        out.push(Violation::Shape {
                            id: c.id.clone(),
                            detail: String::from("exceptional component must lie over the origin"),
                        });
                    }
                    if c.self_intersection.is_none() {
                        out.push(Violation::Shape {
                            id: c.id.clone(),
                            detail: String::from("exceptional component needs a self-intersection"),
                        });
                    }
                    if c.k < 0 {
                        out.push(Violation::Shape {
                            id: c.id.clone(),
                            detail: String::from("negative discrepancy"),
                        });
                    }
                }
                ComponentKind::Strict => {
                    if c.over_origin {
                        out.push(Violation::Shape {
                            id: c.id.clone(),
                            detail: String::from("strict component cannot lie over the origin"),
                        });
                    }
                    if c.k != 0 {
                        out.push(Violation::Shape {
                            id: c.id.clone(),
                            detail: String::from("strict component must have k = 0"),
                        });
                    }
                    if c.self_intersection.is_some() {
                        out.push(Violation::Shape {
                            id: c.id.clone(),
                            detail: String::from(
                                "self-intersection is recorded for exceptional components only",
                            ),
                        });
                    }
                }
            }
            if c.m <= 0 {
                out.push(Violation::Shape {
                    id: c.id.clone(),
                    detail: String::from("multiplicity must be positive"),
                });
            }
            if c.cluster_degree <= 0 {
                out.push(Violation::Shape {
                    id: c.id.clone(),
                    detail: String::from("cluster degree must be positive"),
                });
            }
        }
        for (i, j, points) in self.intersection_entries() {
            let both_exceptional =
                self.components[i].is_exceptional() && self.components[j].is_exceptional();
            if both_exceptional && points > 1 {
                out.push(Violation::Shape {
                    id: self.components[i].id.clone(),
                    detail: alloc::format!(
                        "exceptional components meet at most once, got {points} with {}",
                        self.components[j].id
                    ),
                });
            }
        }
        // identity checks need complete shape data
        if !out.is_empty() {
            return out;
        }
        let m_coeffs: Vec<i64> = self.components.iter().map(|c| c.m).collect();
        let k_coeffs: Vec<i64> = self
            .components
            .iter()
            .map(|c| if c.is_exceptional() { c.k } else { 0 })
            .collect();
        for i in self.exceptional_indices() {
            let c = &self.components[i];
            match self.restriction_degree(&m_coeffs, i) {
                Ok(0) => {}
                Ok(total) => out.push(Violation::Principality {
                    id: c.id.clone(),
                    total,
                }),
                Err(_) => out.push(Violation::Shape {
                    id: c.id.clone(),
                    detail: String::from("overflow while checking principality"),
                }),
            }
            // adjunction: only exceptional components carry k, and only
            // exceptional neighbors contribute
            let mut lhs: i128 = k_coeffs[i] as i128 * c.self_intersection.unwrap() as i128;
            for j in self.exceptional_indices() {
                if j != i {
                    lhs += k_coeffs[j] as i128 * self.pair_count(i, j) as i128;
                }
            }
            let rhs = -2i128 - c.self_intersection.unwrap() as i128;
            if lhs != rhs {
                out.push(Violation::Adjunction {
                    id: c.id.clone(),
                    lhs: lhs as i64,
                    rhs: rhs as i64,
                });
            }
        }
        out
    }

    /// Simulate one extra blow-up at a free point of the named exceptional
    /// component: a point on it and on no other component. The result is
    /// again valid data, and every downstream invariant is unchanged.
    pub fn extra_blowup(&self, id: &str) -> Result<ResolutionData> {
        let parent = self.index_of(id)?;
        if !self.components[parent].is_exceptional() {
            return Err(Error::NotExceptional { id: id.to_string() });
        }
        let mut out = self.clone();
        let new_id = out.fresh_exceptional_id();
        let p = &out.components[parent];
        let new = Component {
            id: new_id,
            kind: ComponentKind::Exceptional,
            m: p.m,
            k: p.k.checked_add(1).ok_or(Error::Overflow)?,
            over_origin: true,
            self_intersection: Some(-1),
            cluster_degree: 1,
        };
        let new_idx = out.components.len();
        out.index.insert(new.id.clone(), new_idx);
        out.components.push(new);
        out.intersections.insert((parent, new_idx), 1);
        let parent_self = out.components[parent]
            .self_intersection
            .expect("checked exceptional");
        out.components[parent].self_intersection = Some(parent_self - 1);
        // the free point is never constructed, so the new component carries
        // no chart map; the existing maps stay correct
        Ok(out)
    }

    fn fresh_exceptional_id(&self) -> String {
        let mut n = self.exceptional_indices().count() + 1;
        loop {
            let candidate = alloc::format!("E{n}");
            if !self.index.contains_key(&candidate) {
                return candidate;
            }
            n += 1;
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    fn pairs(entries: &[(&str, &str, i64)]) -> Vec<(String, String, i64)> {
        entries
            .iter()
            .map(|(a, b, p)| (String::from(*a), String::from(*b), *p))
            .collect()
    }

    /// The three-blow-up resolution of the cusp `x^2 + y^3`, written out by
    /// hand from the classical blow-up bookkeeping.
    pub fn cusp() -> ResolutionData {
        ResolutionData::new(
            alloc::vec![
                Component::exceptional("E1", 2, 1, -3),
                Component::exceptional("E2", 3, 2, -2),
                Component::exceptional("E3", 6, 4, -1),
                Component::strict("S1", 1, 1),
            ],
            pairs(&[("E1", "E3", 1), ("E2", "E3", 1), ("E3", "S1", 1)]),
        )
        .unwrap()
    }

    /// Single blow-up of the node `x·y`.
    pub fn node() -> ResolutionData {
        ResolutionData::new(
            alloc::vec![
                Component::exceptional("E1", 2, 1, -1),
                Component::strict("S1", 1, 1),
                Component::strict("S2", 1, 1),
            ],
            pairs(&[("E1", "S1", 1), ("E1", "S2", 1)]),
        )
        .unwrap()
    }

    /// Single blow-up of `x^3 + y^3`: one rational branch plus a conjugate
    /// pair recorded as a degree-2 cluster.
    pub fn three_lines() -> ResolutionData {
        ResolutionData::new(
            alloc::vec![
                Component::exceptional("E1", 3, 1, -1),
                Component::strict("S1", 1, 1),
                Component::strict("S2", 1, 2),
            ],
            pairs(&[("E1", "S1", 1), ("E1", "S2", 2)]),
        )
        .unwrap()
    }

    /// Unconditional single blow-up of the smooth germ `y`.
    pub fn smooth() -> ResolutionData {
        ResolutionData::new(
            alloc::vec![
                Component::exceptional("E1", 1, 1, -1),
                Component::strict("S1", 1, 1),
            ],
            pairs(&[("E1", "S1", 1)]),
        )
        .unwrap()
    }

    pub fn rebuild(data: &ResolutionData, components: Vec<Component>) -> ResolutionData {
        let entries: Vec<(String, String, i64)> = data
            .intersection_entries()
            .map(|(i, j, p)| {
                (
                    data.component(i).id.clone(),
                    data.component(j).id.clone(),
                    p,
                )
            })
            .collect();
        ResolutionData::new(components, entries).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn corpus_data_is_valid() {
        for data in [cusp(), node(), three_lines(), smooth()] {
            assert!(data.validate().is_empty(), "{:?}", data.validate());
        }
    }

    #[test]
    fn perturbed_multiplicity_breaks_principality() {
        let data = cusp();
        let mut components = data.components().to_vec();
        components[2].m = 5; // E3: 6 -> 5
        let broken = rebuild(&data, components);
        let violations = broken.validate();
        let ids: alloc::vec::Vec<&str> = violations
            .iter()
            .filter_map(|v| match v {
                Violation::Principality { id, .. } => Some(id.as_str()),
                _ => None,
            })
            .collect();
        assert_eq!(ids, alloc::vec!["E1", "E2", "E3"]);
    }

    #[test]
    fn perturbed_discrepancy_breaks_adjunction() {
        let data = cusp();
        let mut components = data.components().to_vec();
        components[1].k = 3; // E2: 2 -> 3
        let broken = rebuild(&data, components);
        let violations = broken.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::Adjunction { id, .. } if id == "E2")));
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::Adjunction { id, .. } if id == "E3")));
    }

    #[test]
    fn extra_blowup_examples() {
        let data = cusp();
        let bigger = data.extra_blowup("E3").unwrap();
        assert!(bigger.validate().is_empty());
        let new = bigger.component(4);
        assert_eq!(new.id, "E4");
        assert_eq!((new.m, new.k, new.self_intersection), (6, 5, Some(-1)));
        let e3 = bigger.component(2);
        assert_eq!(e3.self_intersection, Some(-2));
        assert_eq!(bigger.pair_count(2, 4), 1);

        let node_plus = node().extra_blowup("E1").unwrap();
        assert!(node_plus.validate().is_empty());
        let new = node_plus.component(3);
        assert_eq!((new.m, new.k), (2, 2));
    }

    #[test]
    fn extra_blowup_rejects_strict_and_unknown() {
        let data = node();
        assert!(matches!(
            data.extra_blowup("S1"),
            Err(Error::NotExceptional { .. })
        ));
        assert!(matches!(
            data.extra_blowup("Z9"),
            Err(Error::UnknownComponent { .. })
        ));
    }

    #[test]
    fn repeated_extra_blowups_stay_valid() {
        let mut data = three_lines();
        for _ in 0..5 {
            data = data.extra_blowup("E1").unwrap();
            assert!(data.validate().is_empty(), "{:?}", data.validate());
        }
    }
}
