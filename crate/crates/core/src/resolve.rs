//! Embedded resolution of a plane-curve germ by iterated point blow-ups.
//!
//! The worklist holds infinitely near points that must be blown up. Popping a
//! point performs the blow-up, records the new exceptional component with its
//! multiplicity and discrepancy, and then walks the new exceptional line in
//! its two standard charts looking for places where the total transform fails
//! to cross normally. Rational bad points go back on the worklist; conjugate
//! points are either simple transverse crossings (recorded as clusters by
//! their degree) or a hard error, since only rational centers are ever blown
//! up.
//!
//! The first blow-up happens unconditionally, so the fiber over the origin is
//! a divisor even for a smooth germ; this also principalizes the maximal
//! ideal of the origin, which downstream formulas assume.

use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{squarefree_decomposition2, squarefree_split, SparsePoly2};
use crate::rational::Rational;
use crate::resdata::{Component, ResolutionData};

/// Safety limits for the resolver.
#[derive(Debug, Clone, Copy)]
pub struct ResolveLimits {
    /// Maximum number of point blow-ups before giving up.
    pub max_blowups: u32,
    /// Degree cap handed to the univariate factorizer for residuals.
    pub max_factor_degree: u32,
}

impl Default for ResolveLimits {
    fn default() -> Self {
        ResolveLimits {
            max_blowups: 64,
            max_factor_degree: 16,
        }
    }
}

/// Verdict of a local normal-crossing inspection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Everything through this point crosses normally; leave it alone.
    Snc,
    /// The point must be blown up.
    BlowupNeeded,
}

/// Local state at a rational point: which of the two coordinate axes are
/// exceptional curves, and the strict factor germs vanishing at the point.
/// Coordinates are always centered at the point.
#[derive(Debug, Clone)]
pub struct LocalSite {
    pub axis_first: bool,
    pub axis_second: bool,
    pub factors: Vec<SparsePoly2>,
}

/// Decide whether the configuration at a rational point is simple normal
/// crossing: at most two curves in total, every factor smooth, transverse to
/// any axis present, and distinct factors transverse to each other.
pub fn inspect_point(site: &LocalSite) -> Verdict {
    let through: Vec<&SparsePoly2> = site
        .factors
        .iter()
        .filter(|g| g.constant_term().is_zero())
        .collect();
    let axes = usize::from(site.axis_first) + usize::from(site.axis_second);
    if axes + through.len() > 2 {
        return Verdict::BlowupNeeded;
    }
    for g in &through {
        if g.order_at_origin() != Some(1) {
            return Verdict::BlowupNeeded; // singular branch
        }
        if site.axis_first && g.restrict_first_zero().order_at_zero() != Some(1) {
            return Verdict::BlowupNeeded; // tangent to the first axis
        }
        if site.axis_second && g.restrict_second_zero().order_at_zero() != Some(1) {
            return Verdict::BlowupNeeded; // tangent to the second axis
        }
    }
    if through.len() == 2 {
        // two smooth branches: transverse iff their tangent lines differ
        let (a1, b1) = through[0].linear_part();
        let (a2, b2) = through[1].linear_part();
        if (&a1 * &b2 - &a2 * &b1).is_zero() {
            return Verdict::BlowupNeeded;
        }
    }
    Verdict::Snc
}

/// One blow-up event, kept for bookkeeping checks: the component that was
/// created and where the new multiplicity and discrepancy came from.
#[derive(Debug, Clone)]
pub struct BlowupRecord {
    pub new_component: usize,
    /// Exceptional components through the blown-up point (at most two).
    pub parent_components: Vec<usize>,
    /// Σ branch multiplicity × branch order at the point.
    pub strict_contribution: i64,
}

/// Output of the resolver: validated data plus the blow-up log.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub data: ResolutionData,
    pub log: Vec<BlowupRecord>,
}

struct PendingPoint {
    /// Exceptional component on `{first coordinate = 0}`, if any.
    axis_first: Option<usize>,
    axis_second: Option<usize>,
    /// Strict factor germs through the point with their multiplicities in f.
    factors: Vec<(SparsePoly2, i64)>,
    /// Original coordinates expressed in the local chart.
    chart: (SparsePoly2, SparsePoly2),
}

struct Builder {
    components: Vec<ComponentDraft>,
    intersections: Vec<(usize, usize, i64)>,
    charts: Vec<(usize, (SparsePoly2, SparsePoly2))>,
    log: Vec<BlowupRecord>,
    strict_count: usize,
    blowups: u32,
    limits: ResolveLimits,
}

struct ComponentDraft {
    kind_exceptional: bool,
    m: i64,
    k: i64,
    self_intersection: i64,
    cluster_degree: i64,
}

impl Builder {
    fn pair_entry(&mut self, i: usize, j: usize) -> &mut i64 {
        let key = (i.min(j), i.max(j));
        if let Some(pos) = self
            .intersections
            .iter()
            .position(|&(a, b, _)| (a, b) == key)
        {
            &mut self.intersections[pos].2
        } else {
            self.intersections.push((key.0, key.1, 0));
            let pos = self.intersections.len() - 1;
            &mut self.intersections[pos].2
        }
    }

    fn new_exceptional(&mut self, m: i64, k: i64) -> usize {
        self.components.push(ComponentDraft {
            kind_exceptional: true,
            m,
            k,
            self_intersection: -1,
            cluster_degree: 1,
        });
        self.components.len() - 1
    }

    fn new_strict(&mut self, m: i64, cluster_degree: i64, on: usize) -> usize {
        self.components.push(ComponentDraft {
            kind_exceptional: false,
            m,
            k: 0,
            self_intersection: 0,
            cluster_degree,
        });
        self.strict_count += 1;
        let idx = self.components.len() - 1;
        *self.pair_entry(on, idx) += cluster_degree;
        idx
    }
}

/// Resolve the germ `f` at the origin.
///
/// `f` must be nonzero and vanish at the origin. Factors of `f` that do not
/// vanish at the origin are irrelevant to the germ and are dropped up front.
pub fn resolve_germ(f: &SparsePoly2, limits: ResolveLimits) -> Result<Resolution> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::UnitGerm);
    }
    // Track squarefree layers with their multiplicities so non-reduced germs
    // keep exact multiplicity bookkeeping while the support is resolved.
    let layers: Vec<(SparsePoly2, i64)> = squarefree_decomposition2(f)
        .into_iter()
        .filter(|(p, _)| p.constant_term().is_zero())
        .map(|(p, m)| (p, m as i64))
        .collect();

    let mut builder = Builder {
        components: Vec::new(),
        intersections: Vec::new(),
        charts: Vec::new(),
        log: Vec::new(),
        strict_count: 0,
        blowups: 0,
        limits,
    };

    let mut queue: VecDeque<PendingPoint> = VecDeque::new();
    queue.push_back(PendingPoint {
        axis_first: None,
        axis_second: None,
        factors: layers,
        chart: (SparsePoly2::var_x(), SparsePoly2::var_y()),
    });

    while let Some(point) = queue.pop_front() {
        blow_up(&mut builder, &mut queue, point)?;
    }

    finish(builder)
}

fn blow_up(
    builder: &mut Builder,
    queue: &mut VecDeque<PendingPoint>,
    point: PendingPoint,
) -> Result<()> {
    builder.blowups += 1;
    if builder.blowups > builder.limits.max_blowups {
        return Err(Error::BlowupLimitExceeded {
            cap: builder.limits.max_blowups,
        });
    }

    // multiplicity and discrepancy of the new component
    let mut m_new: i64 = 0;
    let mut k_new: i64 = 1;
    let mut strict_contribution: i64 = 0;
    let mut parents = Vec::new();
    for axis in [point.axis_first, point.axis_second].into_iter().flatten() {
        m_new = m_new
            .checked_add(builder.components[axis].m)
            .ok_or(Error::Overflow)?;
        k_new = k_new
            .checked_add(builder.components[axis].k)
            .ok_or(Error::Overflow)?;
        parents.push(axis);
    }
    for (g, mult) in &point.factors {
        let ord = g.order_at_origin().ok_or(Error::ZeroPolynomial)? as i64;
        let add = mult.checked_mul(ord).ok_or(Error::Overflow)?;
        strict_contribution = strict_contribution.checked_add(add).ok_or(Error::Overflow)?;
    }
    m_new = m_new.checked_add(strict_contribution).ok_or(Error::Overflow)?;

    let new_idx = builder.new_exceptional(m_new, k_new);
    for &p in &parents {
        builder.components[p].self_intersection -= 1;
        *builder.pair_entry(p, new_idx) += 1;
    }
    if let [a, b] = parents[..] {
        // the two old components met exactly at the blown-up point
        let entry = builder.pair_entry(a, b);
        debug_assert_eq!(*entry, 1);
        *entry -= 1;
    }
    builder.log.push(BlowupRecord {
        new_component: new_idx,
        parent_components: parents,
        strict_contribution,
    });

    // chart that keeps the first coordinate: (s, t) = (u, u v);
    // the new exceptional curve is {u = 0} there
    let chart_a = (
        point.chart.0.blowup_chart_first(),
        point.chart.1.blowup_chart_first(),
    );
    builder.charts.push((new_idx, chart_a.clone()));

    // strict transforms in chart A
    let mut strict_a: Vec<(SparsePoly2, i64)> = Vec::new();
    for (g, mult) in &point.factors {
        let pulled = g.blowup_chart_first();
        let ord = pulled.order_first().expect("factor is nonzero");
        strict_a.push((pulled.div_first_power(ord), *mult));
    }

    // old {t = 0} axis appears in chart A as {v = 0}
    inspect_chart_a(
        builder,
        queue,
        new_idx,
        point.axis_second,
        &strict_a,
        &chart_a,
    )?;

    // chart that keeps the second coordinate: (s, t) = (u v, v);
    // only the single point missed by chart A needs a look, the origin there
    let chart_b = (
        point.chart.0.blowup_chart_second(),
        point.chart.1.blowup_chart_second(),
    );
    let mut strict_b: Vec<(SparsePoly2, i64)> = Vec::new();
    for (g, mult) in &point.factors {
        let pulled = g.blowup_chart_second();
        let ord = pulled.order_second().expect("factor is nonzero");
        strict_b.push((pulled.div_second_power(ord), *mult));
    }
    inspect_chart_b_origin(builder, queue, new_idx, point.axis_first, &strict_b, &chart_b)?;

    Ok(())
}

/// Walk the finite part of the new exceptional line `{u = 0}` in chart A.
fn inspect_chart_a(
    builder: &mut Builder,
    queue: &mut VecDeque<PendingPoint>,
    new_idx: usize,
    old_axis: Option<usize>,
    strict: &[(SparsePoly2, i64)],
    chart: &(SparsePoly2, SparsePoly2),
) -> Result<()> {
    // residual of each factor along the line; never zero because strict
    // transforms are not divisible by the exceptional coordinate
    let residuals: Vec<_> = strict
        .iter()
        .map(|(g, mult)| (g.restrict_first_zero(), g, *mult))
        .collect();

    // corner with the old axis at v = 0, if there is one
    if let Some(old) = old_axis {
        let through: Vec<(SparsePoly2, i64)> = strict
            .iter()
            .filter(|(g, _)| g.constant_term().is_zero())
            .cloned()
            .collect();
        if !through.is_empty() {
            queue.push_back(PendingPoint {
                axis_first: Some(new_idx),
                axis_second: Some(old),
                factors: through,
                chart: chart.clone(),
            });
        }
    }

    // rational root sites and conjugate clusters away from the corner
    let mut rational_sites: Vec<Rational> = Vec::new();
    let mut clusters: Vec<crate::poly::UniPoly> = Vec::new();
    for (r, _, _) in &residuals {
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        for part in squarefree_split(r, builder.limits.max_factor_degree)? {
            for irr in part.irreducibles {
                match irr.degree() {
                    Some(1) => {
                        let root = -(irr.coeff(0) / irr.coeff(1));
                        if root.is_zero() && old_axis.is_some() {
                            continue; // the corner, handled above
                        }
                        if !rational_sites.contains(&root) {
                            rational_sites.push(root);
                        }
                    }
                    Some(_) => {
                        if !clusters.contains(&irr) {
                            clusters.push(irr);
                        }
                    }
                    None => {}
                }
            }
        }
    }
    rational_sites.sort();

    for root in rational_sites {
        let moved: Vec<(SparsePoly2, i64)> = strict
            .iter()
            .map(|(g, mult)| (g.shift_second(&root), *mult))
            .filter(|(g, _)| g.constant_term().is_zero())
            .collect();
        let site = LocalSite {
            axis_first: true,
            axis_second: false,
            factors: moved.iter().map(|(g, _)| g.clone()).collect(),
        };
        match inspect_point(&site) {
            Verdict::Snc => {
                // exactly one smooth branch crossing transversally
                debug_assert_eq!(moved.len(), 1);
                let mult = moved[0].1;
                builder.new_strict(mult, 1, new_idx);
            }
            Verdict::BlowupNeeded => {
                queue.push_back(PendingPoint {
                    axis_first: Some(new_idx),
                    axis_second: None,
                    factors: moved,
                    chart: (chart.0.shift_second(&root), chart.1.shift_second(&root)),
                });
            }
        }
    }

    for w in clusters {
        // total intersection multiplicity of the transform with the line
        // along this conjugacy class, and the factor(s) meeting it
        let mut total: u32 = 0;
        let mut owner: Option<i64> = None;
        let mut owners = 0usize;
        for (r, _, mult) in &residuals {
            let mut k = 0u32;
            let mut cur = r.clone();
            while let Some(q) = cur.exact_div(&w) {
                k += 1;
                cur = q;
                if cur.is_zero() {
                    break;
                }
            }
            if k > 0 {
                total += k;
                owners += 1;
                owner = Some(*mult);
            }
        }
        if total == 1 && owners == 1 {
            // simple conjugate crossings: one cluster of transverse points
            let degree = w.degree().unwrap_or(0) as i64;
            builder.new_strict(owner.unwrap(), degree, new_idx);
        } else if total > 0 {
            return Err(Error::NonRationalCenter {
                residual: w.display_with("t"),
            });
        }
    }

    Ok(())
}

/// Inspect the single point of the new line not visible in chart A: the
/// origin of chart B, where the old `{s = 0}` axis (if exceptional) crosses.
fn inspect_chart_b_origin(
    builder: &mut Builder,
    queue: &mut VecDeque<PendingPoint>,
    new_idx: usize,
    old_axis: Option<usize>,
    strict: &[(SparsePoly2, i64)],
    chart: &(SparsePoly2, SparsePoly2),
) -> Result<()> {
    let through: Vec<(SparsePoly2, i64)> = strict
        .iter()
        .filter(|(g, _)| g.constant_term().is_zero())
        .cloned()
        .collect();
    if through.is_empty() {
        return Ok(());
    }
    let site = LocalSite {
        axis_first: old_axis.is_some(),
        axis_second: true,
        factors: through.iter().map(|(g, _)| g.clone()).collect(),
    };
    match inspect_point(&site) {
        Verdict::Snc => {
            debug_assert!(old_axis.is_none());
            debug_assert_eq!(through.len(), 1);
            builder.new_strict(through[0].1, 1, new_idx);
        }
        Verdict::BlowupNeeded => {
            queue.push_back(PendingPoint {
                axis_first: old_axis,
                axis_second: Some(new_idx),
                factors: through,
                chart: chart.clone(),
            });
        }
    }
    Ok(())
}

fn finish(builder: Builder) -> Result<Resolution> {
    let mut exceptional_seen = 0usize;
    let mut strict_seen = 0usize;
    let mut components = Vec::with_capacity(builder.components.len());
    for draft in &builder.components {
        if draft.kind_exceptional {
            exceptional_seen += 1;
            components.push(Component::exceptional(
                &alloc::format!("E{exceptional_seen}"),
                draft.m,
                draft.k,
                draft.self_intersection,
            ));
        } else {
            strict_seen += 1;
            components.push(Component::strict(
                &alloc::format!("S{strict_seen}"),
                draft.m,
                draft.cluster_degree,
            ));
        }
    }
    let names: Vec<String> = components.iter().map(|c| c.id.clone()).collect();
    let entries: Vec<(String, String, i64)> = builder
        .intersections
        .iter()
        .filter(|&&(_, _, p)| p != 0)
        .map(|&(i, j, p)| (names[i].clone(), names[j].clone(), p))
        .collect();
    let mut data = ResolutionData::new(components, entries)?;
    for (idx, chart) in builder.charts {
        data.set_chart(idx, chart);
    }
    let violations = data.validate();
    if !violations.is_empty() {
        // the construction rules guarantee both identities; reaching this
        // branch means a resolver bug, surfaced as malformed data
        return Err(Error::MalformedData {
            detail: violations[0].to_string(),
        });
    }
    Ok(Resolution {
        data,
        log: builder.log,
    })
}
