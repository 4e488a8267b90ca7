//! The neighbor/relative layer on order-2 routes with trivial (non-crossing)
//! chord diagram: the move graph generated by triple-point perturbations, the
//! abelianized rank invariant that is constant along moves, indicator weight
//! systems supported on one move component, and the pairing of a weight
//! system against a user-supplied discriminant-crossing 1-cycle.

use crate::error::{Error, Result};
use crate::exact;
use crate::groups::GroupSpec;
use crate::routes::{
    canonical_loops, canonicalize, contract_decorated, is_marginal, resolve_marked, route_from_json,
    route_to_json, Configuration, DecoratedRoute, RouteJson,
};
use crate::weightspace::{CoefficientField, WeightSystem};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Union-Find over vertex indices.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            self.parent[x] = self.find(self.parent[x]);
        }
        self.parent[x]
    }

    pub fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return;
        }
        if self.rank[rx] < self.rank[ry] {
            self.parent[rx] = ry;
        } else if self.rank[rx] > self.rank[ry] {
            self.parent[ry] = rx;
        } else {
            self.parent[ry] = rx;
            self.rank[rx] += 1;
        }
    }
}

/// The trivial chord diagram of order 2 (two non-crossing chords).
pub fn trivial_chord_diagram() -> crate::diagrams::ChordDiagram {
    crate::diagrams::ChordDiagram::new(2, vec![(0, 1), (2, 3)])
        .unwrap()
        .canonical()
}

/// Is this the canonical route of a trivial-chord order-2 configuration?
pub fn is_trivial_chord(route: &DecoratedRoute) -> bool {
    match &route.config {
        Configuration::Chord(d) => d.order() == 2 && *d == trivial_chord_diagram(),
        _ => false,
    }
}

/// Split a triple-point route in the six locally different ways, grouped
/// into the three ordered pairs indexed by its markings (sorted by marked
/// point). The new short arc carries the identity; outputs are canonical.
pub fn six_resolutions(
    spec: &GroupSpec,
    route: &DecoratedRoute,
) -> Result<[[DecoratedRoute; 2]; 3]> {
    let canonical = canonicalize(spec, route);
    let t = match &canonical.config {
        Configuration::Triple(t) => t.clone(),
        _ => return Err(Error::Usage("six resolutions need a triple-point route".into())),
    };
    let mut out: Vec<[DecoratedRoute; 2]> = Vec::with_capacity(3);
    for marking in t.markings() {
        let marked = DecoratedRoute {
            config: Configuration::Tilde(marking),
            labels: canonical.labels.clone(),
        };
        let (first, second) = resolve_marked(spec, &marked)?;
        out.push([first, second]);
    }
    Ok(out.try_into().expect("a triple has three markings"))
}

/// Neighbor graph over trivial-chord order-2 routes inside the ball: an edge
/// joins two distinct routes that occur among the trivial-chord resolutions
/// of one in-ball triple route.
#[derive(Debug, Clone)]
pub struct NeighborGraph {
    pub vertices: Vec<DecoratedRoute>,
    /// Edges as vertex index pairs with the witnessing triple route.
    pub edges: Vec<(usize, usize, DecoratedRoute)>,
    pub ball: usize,
}

impl NeighborGraph {
    pub fn vertex_index(&self, route: &DecoratedRoute) -> Option<usize> {
        self.vertices.binary_search(route).ok()
    }

    /// Connected components as sorted vertex index lists, via union-find.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b, _) in &self.edges {
            uf.union(a, b);
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertices.len() {
            by_root.entry(uf.find(v)).or_default().push(v);
        }
        by_root.into_values().collect()
    }

    /// Components recomputed by breadth-first search; used as an independent
    /// cross-check of the union-find structure.
    pub fn components_bfs(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort();
        out
    }
}

fn in_ball_canonical(spec: &GroupSpec, canonical: &DecoratedRoute, ball: usize) -> bool {
    canonical_loops(spec, canonical)
        .iter()
        .all(|l| spec.letter_len(l) <= ball)
}

/// Neighbor moves out of one trivial-chord route: for each non-suspicious
/// segment contraction whose triple route stays in the ball, the other
/// in-ball trivial-chord resolutions of that triple, with the witness.
fn neighbor_moves(
    spec: &GroupSpec,
    route: &DecoratedRoute,
    ball: usize,
) -> Result<Vec<(DecoratedRoute, Vec<DecoratedRoute>)>> {
    let d = route
        .chord_diagram()
        .ok_or_else(|| Error::Usage("neighbor moves need a chord route".into()))?
        .clone();
    let n = d.points();
    let mut out = Vec::new();
    let mut seen_witness: BTreeSet<DecoratedRoute> = BTreeSet::new();
    for arc in 0..n {
        if d.partner(arc) == (arc + 1) % n {
            continue;
        }
        let contracted = contract_decorated(spec, route, crate::diagrams::Segment { arc })?;
        let tilde = match &contracted.route.config {
            Configuration::Tilde(t) => t.clone(),
            _ => unreachable!("non-suspicious contraction yields a marked triple"),
        };
        let tau = canonicalize(
            spec,
            &DecoratedRoute {
                config: Configuration::Triple(tilde.base().clone()),
                labels: contracted.route.labels.clone(),
            },
        );
        if !in_ball_canonical(spec, &tau, ball) || !seen_witness.insert(tau.clone()) {
            continue;
        }
        let mut hits = Vec::new();
        for pair in six_resolutions(spec, &tau)? {
            for res in pair {
                if is_trivial_chord(&res) && in_ball_canonical(spec, &res, ball) {
                    hits.push(res);
                }
            }
        }
        hits.sort();
        hits.dedup();
        out.push((tau, hits));
    }
    Ok(out)
}

/// Full neighbor graph over all in-ball trivial-chord routes.
pub fn neighbor_graph(spec: &GroupSpec, ball: usize) -> Result<NeighborGraph> {
    let routes = crate::weightspace::enumerate_routes(2, spec, ball);
    let vertices: Vec<DecoratedRoute> =
        routes.into_iter().filter(is_trivial_chord).collect();
    let mut edges = Vec::new();
    let mut seen_tau: BTreeSet<DecoratedRoute> = BTreeSet::new();
    for v in &vertices {
        for (tau, hits) in neighbor_moves(spec, v, ball)? {
            if !seen_tau.insert(tau.clone()) {
                continue;
            }
            let idx: Vec<usize> = hits
                .iter()
                .filter_map(|r| vertices.binary_search(r).ok())
                .collect();
            for i in 0..idx.len() {
                for j in (i + 1)..idx.len() {
                    edges.push((idx[i], idx[j], tau.clone()));
                }
            }
        }
    }
    Ok(NeighborGraph { vertices, edges, ball })
}

/// The connected component of a seed route in the in-ball neighbor graph,
/// explored move-by-move without enumerating the full vertex census.
pub fn seed_component(
    spec: &GroupSpec,
    seed: &DecoratedRoute,
    ball: usize,
) -> Result<NeighborGraph> {
    let seed = canonicalize(spec, seed);
    if !is_trivial_chord(&seed) {
        return Err(Error::Usage("the seed must be a trivial-chord order-2 route".into()));
    }
    if !in_ball_canonical(spec, &seed, ball) {
        return Err(Error::Usage("the seed lies outside the requested ball".into()));
    }
    let mut members: BTreeSet<DecoratedRoute> = BTreeSet::from([seed.clone()]);
    let mut frontier: VecDeque<DecoratedRoute> = VecDeque::from([seed]);
    let mut raw_edges: Vec<(DecoratedRoute, DecoratedRoute, DecoratedRoute)> = Vec::new();
    let mut seen_tau: BTreeSet<DecoratedRoute> = BTreeSet::new();
    while let Some(v) = frontier.pop_front() {
        for (tau, hits) in neighbor_moves(spec, &v, ball)? {
            if !seen_tau.insert(tau.clone()) {
                continue;
            }
            for i in 0..hits.len() {
                for j in (i + 1)..hits.len() {
                    raw_edges.push((hits[i].clone(), hits[j].clone(), tau.clone()));
                }
            }
            for r in hits {
                if members.insert(r.clone()) {
                    frontier.push_back(r);
                }
            }
        }
    }
    let vertices: Vec<DecoratedRoute> = members.into_iter().collect();
    let edges = raw_edges
        .into_iter()
        .filter_map(|(a, b, tau)| {
            let ia = vertices.binary_search(&a).ok()?;
            let ib = vertices.binary_search(&b).ok()?;
            Some((ia, ib, tau))
        })
        .collect();
    Ok(NeighborGraph { vertices, edges, ball })
}

/// Rank of the subgroup of H_1(M) generated by the cycles lying in the
/// immersed circle, with finite-order contributions reported separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    pub torsion: bool,
}

pub fn rank_invariant(spec: &GroupSpec, route: &DecoratedRoute) -> RankInfo {
    let canonical = canonicalize(spec, route);
    let loops = canonical_loops(spec, &canonical);
    let mut rows = Vec::new();
    let mut torsion = false;
    for l in &loops {
        let (v, t) = spec.abelianized(l);
        torsion |= t;
        rows.push(v);
    }
    RankInfo { rank: exact::integer_rank(&rows), torsion }
}

/// Indicator weight system of the seed's neighbor component, verified
/// against every in-ball trivial and four-term relation touching its
/// support.
pub fn relatives_gamma(
    spec: &GroupSpec,
    seed: &DecoratedRoute,
    ball: usize,
) -> Result<WeightSystem> {
    let canonical_seed = canonicalize(spec, seed);
    if is_marginal(spec, &canonical_seed) {
        return Err(Error::Usage(
            "the seed is marginal; its indicator cannot satisfy the trivial condition".into(),
        ));
    }
    let component = seed_component(spec, &canonical_seed, ball)?;
    let entries: BTreeMap<DecoratedRoute, BigRational> = component
        .vertices
        .iter()
        .map(|r| (r.clone(), BigRational::from_integer(1.into())))
        .collect();
    let gamma = WeightSystem {
        order: 2,
        ball,
        group: spec.clone(),
        field: CoefficientField::Rational,
        entries,
    };
    if let Some(bad) = component.vertices.iter().find(|r| is_marginal(spec, r)) {
        return Err(Error::Data(format!(
            "component contains a marginal route, so the indicator violates the trivial \
             condition: {:?}",
            route_to_json(spec, bad)
        )));
    }
    verify_gamma_locally(spec, &gamma, &component, ball)?;
    Ok(gamma)
}

/// Check every four-term relation whose support meets the component.
/// Relations not touching the support hold trivially (all terms vanish), so
/// this is a complete verification of the in-ball relation system.
fn verify_gamma_locally(
    spec: &GroupSpec,
    gamma: &WeightSystem,
    component: &NeighborGraph,
    ball: usize,
) -> Result<()> {
    let value = |r: &DecoratedRoute| -> BigRational { gamma.value(r) };
    let mut checked: BTreeSet<DecoratedRoute> = BTreeSet::new();
    for v in &component.vertices {
        let d = v.chord_diagram().unwrap().clone();
        let n = d.points();
        for arc in 0..n {
            if d.partner(arc) == (arc + 1) % n {
                continue;
            }
            let contracted = contract_decorated(spec, v, crate::diagrams::Segment { arc })?;
            let tilde = match &contracted.route.config {
                Configuration::Tilde(t) => t.clone(),
                _ => unreachable!(),
            };
            let tau = canonicalize(
                spec,
                &DecoratedRoute {
                    config: Configuration::Triple(tilde.base().clone()),
                    labels: contracted.route.labels.clone(),
                },
            );
            if !in_ball_canonical(spec, &tau, ball) || !checked.insert(tau.clone()) {
                continue;
            }
            let mut diffs: Vec<Option<BigRational>> = Vec::new();
            for pair in six_resolutions(spec, &tau)? {
                let ok = pair.iter().all(|r| in_ball_canonical(spec, r, ball));
                diffs.push(if ok {
                    Some(value(&pair[0]) - value(&pair[1]))
                } else {
                    None
                });
            }
            for (a, b) in [(0usize, 1usize), (1, 2)] {
                if let (Some(x), Some(y)) = (&diffs[a], &diffs[b]) {
                    if x != y {
                        return Err(Error::Data(format!(
                            "four-term relation violated at triple route {:?}",
                            route_to_json(spec, &tau)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// An ordered list of signed discriminant crossings along a path, encoding a
/// 1-cycle in the realization space of an ambient route.
#[derive(Debug, Clone)]
pub struct CrossingTrace {
    pub order: usize,
    pub events: Vec<(DecoratedRoute, i8)>,
}

impl CrossingTrace {
    pub fn new(order: usize, events: Vec<(DecoratedRoute, i8)>) -> Result<Self> {
        for (route, sign) in &events {
            if *sign != 1 && *sign != -1 {
                return Err(Error::Data(format!("event sign must be +1 or -1, got {sign}")));
            }
            if route.order() != order {
                return Err(Error::Data(format!(
                    "event route has order {}, trace has order {order}",
                    route.order()
                )));
            }
        }
        Ok(CrossingTrace { order, events })
    }
}

/// Signed sum of gamma over the trace events. Events outside gamma's ball
/// are a hard error rather than a silent zero.
pub fn pair_cycle(
    spec: &GroupSpec,
    gamma: &WeightSystem,
    trace: &CrossingTrace,
) -> Result<BigRational> {
    if trace.order != gamma.order {
        return Err(Error::OrderMismatch { expected: gamma.order, found: trace.order });
    }
    let mut sum = BigRational::zero();
    for (route, sign) in &trace.events {
        let canonical = canonicalize(spec, route);
        if !in_ball_canonical(spec, &canonical, gamma.ball) {
            return Err(Error::OutOfBall {
                route: serde_json::to_string(&route_to_json(spec, &canonical))
                    .unwrap_or_else(|_| "<route>".into()),
            });
        }
        sum += BigRational::from_integer((*sign as i64).into()) * gamma.value(&canonical);
    }
    Ok(sum)
}

// ── JSON forms ────────────────────────────────────────────────────────

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceEventJson {
    pub route: RouteJson,
    pub sign: i8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceJson {
    pub order: usize,
    pub events: Vec<TraceEventJson>,
}

pub fn trace_from_json(spec: &GroupSpec, json: &TraceJson) -> Result<CrossingTrace> {
    let events = json
        .events
        .iter()
        .map(|e| Ok((route_from_json(spec, &e.route)?, e.sign)))
        .collect::<Result<Vec<_>>>()?;
    CrossingTrace::new(json.order, events)
}

pub fn trace_to_json(spec: &GroupSpec, trace: &CrossingTrace) -> TraceJson {
    TraceJson {
        order: trace.order,
        events: trace
            .events
            .iter()
            .map(|(r, s)| TraceEventJson { route: route_to_json(spec, r), sign: *s })
            .collect(),
    }
}

/// The arc labels of the figure-eight-of-handles seed curve: one loop
/// through each of the three handles, trivial return arc.
pub fn fig4_seed(spec: &GroupSpec) -> Result<DecoratedRoute> {
    if spec.generator_count() < 3 {
        return Err(Error::Usage("the seed route needs three generators".into()));
    }
    let d = crate::diagrams::ChordDiagram::new(2, vec![(0, 1), (2, 3)])?;
    let labels = vec![
        spec.generator(0),
        spec.generator(1),
        spec.generator(2),
        spec.identity(),
    ];
    Ok(canonicalize(
        spec,
        &DecoratedRoute::new(Configuration::Chord(d), labels)?,
    ))
}
