//! The exact linear systems whose kernels are the spaces of admissible
//! weight systems: the d0-kernel description over the combined basis of
//! chord and triple routes, and the equivalent trivial-condition + four-term
//! description over chord routes alone. Coefficients are exact rationals or
//! Z/2; enumerations over infinite groups are truncated to a word-length
//! ball and flagged as such.

use crate::diagrams::{enumerate_diagrams, enumerate_triple_diagrams};
use crate::error::{Error, Result};
use crate::exact::{self, Gf2};
use crate::groups::{GroupElement, GroupSpec};
use crate::routes::{
    canonical_loops, canonicalize, d0_row, d0_triple_row, fundamental_loops, greedy_tree,
    is_marginal, resolve_marked, s_orientable_order1, Configuration, DecoratedRoute,
    TripleCollapse,
};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Coefficient domain of a relation system. All arithmetic is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientField {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Z2")]
    Mod2,
}

/// Provenance of one relation row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowTag {
    #[serde(rename = "trivial-condition")]
    Trivial,
    #[serde(rename = "4T")]
    FourTerm,
    #[serde(rename = "d0-column")]
    D0,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub entries: Vec<(usize, i64)>,
    pub tag: RowTag,
}

/// A sparse exact linear system over an ordered basis of canonical routes.
#[derive(Debug, Clone)]
pub struct RelationSystem {
    /// Unknowns: chord routes first, then (in the d0 description) triple
    /// routes.
    pub columns: Vec<DecoratedRoute>,
    /// Number of leading columns indexed by chord-diagram routes.
    pub chord_columns: usize,
    pub rows: Vec<Row>,
    /// Some relation was dropped because it touches routes outside the ball.
    pub truncated: bool,
}

/// A kernel element: an exact-coefficient function on canonical chord
/// routes, vanishing outside its listed support.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSystem {
    pub order: usize,
    pub ball: usize,
    pub group: GroupSpec,
    pub field: CoefficientField,
    pub entries: BTreeMap<DecoratedRoute, BigRational>,
}

impl WeightSystem {
    pub fn value(&self, route: &DecoratedRoute) -> BigRational {
        self.entries.get(route).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Is enumeration at this ball exhaustive for the group?
pub fn enumeration_is_exact(spec: &GroupSpec, ball: usize) -> bool {
    match spec.max_element_len() {
        Some(max) => ball >= max,
        None => false,
    }
}

fn decorations_in_ball(
    spec: &GroupSpec,
    config: &Configuration,
    ball: usize,
) -> Vec<DecoratedRoute> {
    let tree = greedy_tree(config, false);
    let elements = spec.enumerate_elements(ball);
    let slots = tree.nontree_arcs.len();
    let mut indices = vec![0usize; slots];
    let mut out: BTreeSet<DecoratedRoute> = BTreeSet::new();
    loop {
        let mut labels = vec![GroupElement::default(); config.arcs()];
        for (k, &arc) in tree.nontree_arcs.iter().enumerate() {
            labels[arc] = elements[indices[k]].clone();
        }
        let route = DecoratedRoute { config: config.clone(), labels };
        let canonical = canonicalize(spec, &route);
        if canonical_loops(spec, &canonical)
            .iter()
            .all(|l| spec.letter_len(l) <= ball)
        {
            out.insert(canonical);
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == slots {
                return out.into_iter().collect();
            }
            indices[k] += 1;
            if indices[k] < elements.len() {
                break;
            }
            indices[k] = 0;
            k += 1;
        }
        if slots == 0 {
            return out.into_iter().collect();
        }
    }
}

/// All canonical chord-diagram routes of the given order within the ball,
/// each exactly once, in deterministic order.
pub fn enumerate_routes(order: usize, spec: &GroupSpec, ball: usize) -> Vec<DecoratedRoute> {
    if order == 0 {
        // routes of the empty configuration are conjugacy classes
        let mut seen: BTreeSet<DecoratedRoute> = BTreeSet::new();
        for e in spec.enumerate_elements(ball) {
            let r = DecoratedRoute::new(
                Configuration::Chord(crate::diagrams::ChordDiagram::empty()),
                vec![e],
            )
            .unwrap();
            let c = canonicalize(spec, &r);
            if spec.letter_len(&c.labels[0]) <= ball {
                seen.insert(c);
            }
        }
        return seen.into_iter().collect();
    }
    let diagrams = enumerate_diagrams(order);
    let mut out: Vec<DecoratedRoute> = diagrams
        .par_iter()
        .map(|d| decorations_in_ball(spec, &Configuration::Chord(d.clone()), ball))
        .reduce(Vec::new, |mut acc, mut v| {
            acc.append(&mut v);
            acc
        });
    out.sort();
    out.dedup();
    out
}

/// All canonical triple routes of the given order within the ball.
pub fn enumerate_triple_routes(order: usize, spec: &GroupSpec, ball: usize) -> Vec<DecoratedRoute> {
    let mut out: Vec<DecoratedRoute> = enumerate_triple_diagrams(order)
        .par_iter()
        .map(|d| decorations_in_ball(spec, &Configuration::Triple(d.clone()), ball))
        .reduce(Vec::new, |mut acc, mut v| {
            acc.append(&mut v);
            acc
        });
    out.sort();
    out.dedup();
    out
}

fn reject_nonorientable_rational(
    spec: &GroupSpec,
    order: usize,
    field: CoefficientField,
) -> Result<()> {
    if field == CoefficientField::Rational && !spec.w1_is_zero() && order >= 2 {
        return Err(Error::UnsupportedGroup(
            "integer coefficients over a non-orientable group are supported only at order <= 1; \
             use the Z2 field"
                .into(),
        ));
    }
    Ok(())
}

/// Rows forcing non-s-orientable order-1 routes to vanish (rational
/// coefficients over a non-orientable group).
fn s_orientability_rows(
    spec: &GroupSpec,
    columns: &[DecoratedRoute],
    field: CoefficientField,
) -> Result<Vec<Row>> {
    if field != CoefficientField::Rational || spec.w1_is_zero() {
        return Ok(vec![]);
    }
    let mut rows = Vec::new();
    for (idx, r) in columns.iter().enumerate() {
        if r.order() == 1 && !s_orientable_order1(spec, r)? {
            rows.push(Row { entries: vec![(idx, 1)], tag: RowTag::Trivial });
        }
    }
    Ok(rows)
}

/// The d0-kernel description: columns are chord and triple routes in the
/// ball; rows are indexed by the marked-triple and cusp generators their
/// boundaries hit. Rows whose support leaves the ball are dropped and the
/// system flagged as truncated.
pub fn build_d0_system(
    order: usize,
    spec: &GroupSpec,
    ball: usize,
    field: CoefficientField,
    collapse: TripleCollapse,
) -> Result<RelationSystem> {
    reject_nonorientable_rational(spec, order, field)?;
    let chord_routes = enumerate_routes(order, spec, ball);
    let triple_routes = if order >= 2 {
        enumerate_triple_routes(order, spec, ball)
    } else {
        vec![]
    };
    let chord_columns = chord_routes.len();
    let mut columns = chord_routes;
    columns.extend(triple_routes.iter().cloned());
    let col_index: BTreeMap<&DecoratedRoute, usize> =
        columns.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let triple_index: BTreeMap<&DecoratedRoute, usize> = columns[chord_columns..]
        .iter()
        .enumerate()
        .map(|(i, r)| (r, chord_columns + i))
        .collect();

    // generator -> accumulated signed column entries
    let mut gen_rows: BTreeMap<DecoratedRoute, Vec<(usize, i64)>> = BTreeMap::new();
    for (idx, route) in columns.iter().enumerate() {
        let contributions = if idx < chord_columns {
            d0_row(spec, route)?
        } else {
            d0_triple_row(spec, route, collapse)?
        };
        for (generator, coef) in contributions {
            gen_rows.entry(generator).or_default().push((idx, coef));
        }
    }

    let mut rows = Vec::new();
    let mut truncated = !enumeration_is_exact(spec, ball);
    for (generator, entries) in gen_rows {
        let complete = match &generator.config {
            Configuration::Star(_) => true,
            Configuration::Tilde(t) => {
                let (first, second) = resolve_marked(spec, &generator)?;
                let parent = canonicalize(
                    spec,
                    &DecoratedRoute {
                        config: Configuration::Triple(t.base().clone()),
                        labels: generator.labels.clone(),
                    },
                );
                col_index.contains_key(&first)
                    && col_index.contains_key(&second)
                    && triple_index.contains_key(&parent)
            }
            _ => unreachable!("boundary generators are marked triples or cusps"),
        };
        if !complete {
            truncated = true;
            continue;
        }
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (col, coef) in entries {
            *acc.entry(col).or_insert(0) += coef;
        }
        let entries: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        if !entries.is_empty() {
            rows.push(Row { entries, tag: RowTag::D0 });
        }
    }
    rows.extend(s_orientability_rows(spec, &columns[..chord_columns], field)?);
    Ok(RelationSystem { columns, chord_columns, rows, truncated })
}

/// The trivial-condition + four-term description over chord routes alone.
pub fn build_ft_system(
    order: usize,
    spec: &GroupSpec,
    ball: usize,
    field: CoefficientField,
) -> Result<RelationSystem> {
    reject_nonorientable_rational(spec, order, field)?;
    let columns = enumerate_routes(order, spec, ball);
    let col_index: BTreeMap<&DecoratedRoute, usize> =
        columns.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut rows = Vec::new();
    let mut truncated = !enumeration_is_exact(spec, ball);
    for (idx, route) in columns.iter().enumerate() {
        if is_marginal(spec, route) {
            rows.push(Row { entries: vec![(idx, 1)], tag: RowTag::Trivial });
        }
    }
    if order >= 2 {
        let triples = enumerate_triple_routes(order, spec, ball);
        for tau in &triples {
            let rel = four_term_rows(spec, tau, &col_index)?;
            truncated |= rel.truncated;
            rows.extend(rel.rows);
        }
    }
    rows.extend(s_orientability_rows(spec, &columns, field)?);
    let chord_columns = columns.len();
    Ok(RelationSystem { columns, chord_columns, rows, truncated })
}

struct FourTermRows {
    rows: Vec<Row>,
    truncated: bool,
}

/// The two independent difference relations D1 - D2 = 0, D2 - D3 = 0 of one
/// triple route, where Dk is the signed difference over the k-th ordered
/// resolution pair. Rows touching out-of-ball routes are skipped.
fn four_term_rows(
    spec: &GroupSpec,
    tau: &DecoratedRoute,
    col_index: &BTreeMap<&DecoratedRoute, usize>,
) -> Result<FourTermRows> {
    let t = match &tau.config {
        Configuration::Triple(t) => t.clone(),
        _ => return Err(Error::Usage("four-term rows need a triple route".into())),
    };
    let mut diffs: Vec<Option<Vec<(usize, i64)>>> = Vec::new();
    for marking in t.markings() {
        let marked = DecoratedRoute {
            config: Configuration::Tilde(marking),
            labels: tau.labels.clone(),
        };
        let (first, second) = resolve_marked(spec, &marked)?;
        let diff = match (col_index.get(&first), col_index.get(&second)) {
            (Some(&a), Some(&b)) => {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                *acc.entry(a).or_insert(0) += 1;
                *acc.entry(b).or_insert(0) -= 1;
                Some(acc.into_iter().filter(|&(_, c)| c != 0).collect())
            }
            _ => None,
        };
        diffs.push(diff);
    }
    let mut rows = Vec::new();
    let mut truncated = false;
    for pair in [(0usize, 1usize), (1, 2)] {
        match (&diffs[pair.0], &diffs[pair.1]) {
            (Some(a), Some(b)) => {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(c, v) in a {
                    *acc.entry(c).or_insert(0) += v;
                }
                for &(c, v) in b {
                    *acc.entry(c).or_insert(0) -= v;
                }
                let entries: Vec<(usize, i64)> =
                    acc.into_iter().filter(|&(_, c)| c != 0).collect();
                if !entries.is_empty() {
                    rows.push(Row { entries, tag: RowTag::FourTerm });
                }
            }
            _ => truncated = true,
        }
    }
    Ok(FourTermRows { rows, truncated })
}

/// Kernel basis of a relation system, restricted to its chord columns when
/// reporting weight systems. Pivoting is deterministic.
pub fn kernel_basis(
    system: &RelationSystem,
    field: CoefficientField,
    order: usize,
    ball: usize,
    spec: &GroupSpec,
) -> Vec<WeightSystem> {
    let entries: Vec<Vec<(usize, i64)>> = system.rows.iter().map(|r| r.entries.clone()).collect();
    let vectors: Vec<Vec<BigRational>> = match field {
        CoefficientField::Rational => {
            let mut basis = exact::kernel_basis::<BigRational>(&entries, system.columns.len());
            for v in &mut basis {
                exact::normalize_rational_vector(v);
            }
            basis
        }
        CoefficientField::Mod2 => exact::kernel_basis::<Gf2>(&entries, system.columns.len())
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|b| {
                        if b.0 {
                            BigRational::from_integer(1.into())
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect(),
    };
    vectors
        .into_iter()
        .map(|v| {
            let entries = system
                .columns
                .iter()
                .take(system.chord_columns)
                .zip(&v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(r, c)| (r.clone(), c.clone()))
                .collect();
            WeightSystem { order, ball, group: spec.clone(), field, entries }
        })
        .collect()
}

/// Dimension of the full kernel of the system.
pub fn kernel_dimension(system: &RelationSystem, field: CoefficientField) -> usize {
    let entries: Vec<Vec<(usize, i64)>> = system.rows.iter().map(|r| r.entries.clone()).collect();
    let ncols = system.columns.len();
    let rank = match field {
        CoefficientField::Rational => exact::rank::<BigRational>(&entries, ncols),
        CoefficientField::Mod2 => exact::rank::<Gf2>(&entries, ncols),
    };
    ncols - rank
}

/// Dimensions of the kernel's projection to the chord columns, and of the
/// part supported on triple columns only.
pub fn projection_dimensions(
    system: &RelationSystem,
    field: CoefficientField,
) -> (usize, usize) {
    let entries: Vec<Vec<(usize, i64)>> = system.rows.iter().map(|r| r.entries.clone()).collect();
    let ncols = system.columns.len();
    match field {
        CoefficientField::Rational => {
            let basis = exact::kernel_basis::<BigRational>(&entries, ncols);
            let projected: Vec<Vec<BigRational>> = basis
                .iter()
                .map(|v| v[..system.chord_columns].to_vec())
                .collect();
            let proj_rank = exact::rank_dense(&projected, system.chord_columns);
            (proj_rank, basis.len() - proj_rank)
        }
        CoefficientField::Mod2 => {
            let basis = exact::kernel_basis::<Gf2>(&entries, ncols);
            let projected: Vec<Vec<Gf2>> = basis
                .iter()
                .map(|v| v[..system.chord_columns].to_vec())
                .collect();
            let proj_rank = exact::rank_dense(&projected, system.chord_columns);
            (proj_rank, basis.len() - proj_rank)
        }
    }
}

/// Check a weight system against every relation of a system built over the
/// same column basis. Returns the first violated row if any.
pub fn verify_weight_system(
    system: &RelationSystem,
    gamma: &WeightSystem,
) -> std::result::Result<(), usize> {
    for (ridx, row) in system.rows.iter().enumerate() {
        let mut sum = BigRational::zero();
        for &(col, coef) in &row.entries {
            if col >= system.chord_columns {
                // triple-route unknowns do not constrain a chord-supported
                // function by themselves
                continue;
            }
            sum += BigRational::from_integer(coef.into()) * gamma.value(&system.columns[col]);
        }
        let violated = match gamma.field {
            CoefficientField::Rational => !sum.is_zero(),
            CoefficientField::Mod2 => sum.numer() % 2 != 0.into(),
        };
        if violated && row.entries.iter().all(|&(c, _)| c < system.chord_columns) {
            return Err(ridx);
        }
    }
    Ok(())
}

// ── JSON form ─────────────────────────────────────────────────────────

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightEntryJson {
    pub route: crate::routes::RouteJson,
    pub value: String,
}

/// Wire shape of a weight system: coefficients are decimal strings
/// ("3" or "3/2") so rationals stay exact.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightSystemJson {
    pub order: usize,
    pub ball: usize,
    pub group: GroupSpec,
    pub field: CoefficientField,
    pub entries: Vec<WeightEntryJson>,
}

pub fn weight_system_to_json(gamma: &WeightSystem) -> WeightSystemJson {
    WeightSystemJson {
        order: gamma.order,
        ball: gamma.ball,
        group: gamma.group.clone(),
        field: gamma.field,
        entries: gamma
            .entries
            .iter()
            .map(|(r, v)| WeightEntryJson {
                route: crate::routes::route_to_json(&gamma.group, r),
                value: v.to_string(),
            })
            .collect(),
    }
}

pub fn weight_system_from_json(json: &WeightSystemJson) -> Result<WeightSystem> {
    let mut entries = BTreeMap::new();
    for e in &json.entries {
        let route = crate::routes::route_from_json(&json.group, &e.route)?;
        let value: BigRational = e
            .value
            .parse()
            .map_err(|_| Error::Data(format!("bad coefficient '{}'", e.value)))?;
        entries.insert(canonicalize(&json.group, &route), value);
    }
    Ok(WeightSystem {
        order: json.order,
        ball: json.ball,
        group: json.group.clone(),
        field: json.field,
        entries,
    })
}

/// Generators of the order-1 space over an orientable group: unordered pairs
/// of nontrivial elements up to simultaneous conjugation, within the ball.
pub fn prop1_basis(spec: &GroupSpec, ball: usize) -> Result<Vec<(GroupElement, GroupElement)>> {
    if !spec.w1_is_zero() {
        return Err(Error::UnsupportedGroup(
            "the order-1 free-basis description assumes an orientable group; \
             apply the s-orientability filter instead"
                .into(),
        ));
    }
    let elements = spec.enumerate_elements(ball);
    let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
    for a in &elements {
        if spec.is_trivial(a) {
            continue;
        }
        for b in &elements {
            if spec.is_trivial(b) {
                continue;
            }
            let mut candidates = vec![
                spec.simultaneous_conj_canonical(&[a.clone(), b.clone()]),
                spec.simultaneous_conj_canonical(&[b.clone(), a.clone()]),
            ];
            candidates.sort_by(|x, y| crate::groups::tuple_cmp(spec, x, y));
            let canon = candidates.swap_remove(0);
            if canon.iter().all(|l| spec.letter_len(l) <= ball) {
                seen.insert(canon);
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|mut v| {
            let b = v.pop().unwrap();
            let a = v.pop().unwrap();
            (a, b)
        })
        .collect())
}

/// The canonical order-1 route with the given loop pair.
pub fn order1_route(spec: &GroupSpec, alpha: &GroupElement, beta: &GroupElement) -> DecoratedRoute {
    let d = crate::diagrams::ChordDiagram::new(1, vec![(0, 1)]).unwrap();
    let r = DecoratedRoute::new(
        Configuration::Chord(d),
        vec![alpha.clone(), beta.clone()],
    )
    .unwrap();
    canonicalize(spec, &r)
}

/// Loop pair of a canonical order-1 route.
pub fn order1_loops(spec: &GroupSpec, route: &DecoratedRoute) -> (GroupElement, GroupElement) {
    let loops = fundamental_loops(spec, route);
    (loops[0].clone(), loops[1].clone())
}
