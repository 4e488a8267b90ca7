//! Group-decorated configurations: a configuration plus one fundamental-group
//! label per circle arc, modulo the gauge action at double-point images and
//! diagram rotation. Canonical forms are computed by gauge-fixing a greedy
//! spanning tree of the quotient graph and minimizing the remaining loop
//! labels over rotations.

use crate::diagrams::{
    ChordDiagram, ContractedDiagram, DiagramJson, Segment, StarDiagram, TildeTripleDiagram,
    TripleDiagram,
};
use crate::error::{Error, Result};
use crate::groups::{tuple_cmp, GroupElement, GroupSpec};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// One of the four configuration kinds a route can decorate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Configuration {
    Chord(ChordDiagram),
    Triple(TripleDiagram),
    Tilde(TildeTripleDiagram),
    Star(StarDiagram),
}

impl Configuration {
    pub fn order(&self) -> usize {
        match self {
            Configuration::Chord(d) => d.order(),
            Configuration::Triple(d) => d.order(),
            Configuration::Tilde(d) => d.order(),
            Configuration::Star(d) => d.order(),
        }
    }

    pub fn points(&self) -> usize {
        match self {
            Configuration::Chord(d) => d.points(),
            Configuration::Triple(d) => d.points(),
            Configuration::Tilde(d) => d.points(),
            Configuration::Star(d) => d.points(),
        }
    }

    /// Number of circle arcs: one per configuration point, except the empty
    /// configuration whose circle is a single arc.
    pub fn arcs(&self) -> usize {
        self.points().max(1)
    }

    /// Point classes glued in the quotient graph: pairs, the triple, and the
    /// cusp point.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        match self {
            Configuration::Chord(d) => {
                for &(a, b) in d.pairs() {
                    out.push(vec![a, b]);
                }
            }
            Configuration::Triple(d) => {
                for &(a, b) in d.pairs() {
                    out.push(vec![a, b]);
                }
                out.push(d.triple().to_vec());
            }
            Configuration::Tilde(d) => {
                for &(a, b) in d.base().pairs() {
                    out.push(vec![a, b]);
                }
                out.push(d.base().triple().to_vec());
            }
            Configuration::Star(d) => {
                for &(a, b) in d.pairs() {
                    out.push(vec![a, b]);
                }
                out.push(vec![d.star()]);
            }
        }
        out.sort_by_key(|v| v[0]);
        out
    }

    pub fn rotate(&self, s: usize) -> Configuration {
        match self {
            Configuration::Chord(d) => Configuration::Chord(d.rotate(s)),
            Configuration::Triple(d) => Configuration::Triple(d.rotate(s)),
            Configuration::Tilde(d) => Configuration::Tilde(d.rotate(s)),
            Configuration::Star(d) => Configuration::Star(d.rotate(s)),
        }
    }

    pub fn canonical_rotations(&self) -> (Configuration, Vec<usize>) {
        match self {
            Configuration::Chord(d) => {
                let (c, r) = d.canonical_rotations();
                (Configuration::Chord(c), r)
            }
            Configuration::Triple(d) => {
                let (c, r) = d.canonical_rotations();
                (Configuration::Triple(c), r)
            }
            Configuration::Tilde(d) => {
                let (c, r) = d.canonical_rotations();
                (Configuration::Tilde(c), r)
            }
            Configuration::Star(d) => {
                let (c, r) = d.canonical_rotations();
                (Configuration::Star(c), r)
            }
        }
    }

    pub fn rotation_symmetries(&self) -> Vec<usize> {
        match self {
            Configuration::Chord(d) => d.rotation_symmetries(),
            Configuration::Triple(d) => d.rotation_symmetries(),
            Configuration::Tilde(d) => d.rotation_symmetries(),
            Configuration::Star(d) => d.rotation_symmetries(),
        }
    }

    pub fn to_json(&self) -> DiagramJson {
        match self {
            Configuration::Chord(d) => DiagramJson {
                order: d.order(),
                pairs: d.pairs().to_vec(),
                triple: None,
                marked: None,
                star: None,
            },
            Configuration::Triple(d) => DiagramJson {
                order: d.order(),
                pairs: d.pairs().to_vec(),
                triple: Some(d.triple()),
                marked: None,
                star: None,
            },
            Configuration::Tilde(d) => DiagramJson {
                order: d.order(),
                pairs: d.base().pairs().to_vec(),
                triple: Some(d.base().triple()),
                marked: Some(d.marked()),
                star: None,
            },
            Configuration::Star(d) => DiagramJson {
                order: d.order(),
                pairs: d.pairs().to_vec(),
                triple: None,
                marked: None,
                star: Some(d.star()),
            },
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<Configuration> {
        match (j.triple, j.marked, j.star) {
            (Some(t), Some(m), None) => Ok(Configuration::Tilde(TildeTripleDiagram::new(
                TripleDiagram::new(j.order, j.pairs.clone(), t)?,
                m,
            )?)),
            (Some(t), None, None) => Ok(Configuration::Triple(TripleDiagram::new(
                j.order,
                j.pairs.clone(),
                t,
            )?)),
            (None, None, Some(s)) => {
                Ok(Configuration::Star(StarDiagram::new(j.order, j.pairs.clone(), s)?))
            }
            (None, None, None) => Ok(Configuration::Chord(ChordDiagram::new(
                j.order,
                j.pairs.clone(),
            )?)),
            _ => Err(Error::Data("inconsistent diagram fields".into())),
        }
    }
}

/// A configuration decorated with arc labels in the fundamental group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedRoute {
    pub config: Configuration,
    pub labels: Vec<GroupElement>,
}

impl DecoratedRoute {
    pub fn new(config: Configuration, labels: Vec<GroupElement>) -> Result<Self> {
        if labels.len() != config.arcs() {
            return Err(Error::Data(format!(
                "expected {} arc labels, got {}",
                config.arcs(),
                labels.len()
            )));
        }
        Ok(DecoratedRoute { config, labels })
    }

    pub fn order(&self) -> usize {
        self.config.order()
    }

    /// Route over the same configuration with all labels trivial.
    pub fn undecorated(config: Configuration) -> Self {
        let labels = vec![GroupElement::default(); config.arcs()];
        DecoratedRoute { config, labels }
    }

    pub fn chord_diagram(&self) -> Option<&ChordDiagram> {
        match &self.config {
            Configuration::Chord(d) => Some(d),
            _ => None,
        }
    }
}

fn vertex_of(vertices: &[Vec<usize>], p: usize) -> usize {
    vertices
        .iter()
        .position(|v| v.contains(&p))
        .expect("every point lies in a vertex")
}

/// Right-multiply every arc ending at the vertex by h and left-multiply every
/// arc starting there by h^-1. Represents the same route.
pub fn gauge_act(
    spec: &GroupSpec,
    route: &DecoratedRoute,
    vertex: usize,
    h: &GroupElement,
) -> DecoratedRoute {
    let n = route.config.points();
    if n == 0 {
        return route.clone();
    }
    let vertices = route.config.vertices();
    let v = &vertices[vertex];
    let hinv = spec.inverse(h);
    let labels = route
        .labels
        .iter()
        .enumerate()
        .map(|(a, l)| {
            let mut out = l.clone();
            if v.contains(&((a + 1) % n)) {
                out = spec.multiply(&out, h);
            }
            if v.contains(&a) {
                out = spec.multiply(&hinv, &out);
            }
            out
        })
        .collect();
    DecoratedRoute { config: route.config.clone(), labels }
}

/// Relabel arcs after rotating the underlying configuration by s.
pub fn rotate_route(route: &DecoratedRoute, s: usize) -> DecoratedRoute {
    let n = route.config.points();
    if n == 0 {
        return route.clone();
    }
    let labels = (0..n).map(|k| route.labels[(k + s) % n].clone()).collect();
    DecoratedRoute { config: route.config.rotate(s), labels }
}

/// Spanning-tree arcs chosen greedily along the circle, plus the remaining
/// arcs whose gauge-fixed labels are the fundamental loops.
#[derive(Debug, Clone)]
pub(crate) struct TreeData {
    pub tree_arcs: Vec<usize>,
    pub nontree_arcs: Vec<usize>,
}

pub(crate) fn greedy_tree(config: &Configuration, reverse: bool) -> TreeData {
    let n = config.points();
    if n == 0 {
        return TreeData { tree_arcs: vec![], nontree_arcs: vec![0] };
    }
    let vertices = config.vertices();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let order: Vec<usize> = if reverse {
        (0..n).rev().collect()
    } else {
        (0..n).collect()
    };
    let mut tree = Vec::new();
    let mut nontree = Vec::new();
    for a in order {
        let u = find(&mut parent, vertex_of(&vertices, a));
        let v = find(&mut parent, vertex_of(&vertices, (a + 1) % n));
        if u != v {
            parent[u] = v;
            tree.push(a);
        } else {
            nontree.push(a);
        }
    }
    tree.sort_unstable();
    nontree.sort_unstable();
    TreeData { tree_arcs: tree, nontree_arcs: nontree }
}

/// Gauge every tree arc to the identity, starting from the vertex of point 0.
pub(crate) fn gauge_fix_tree(
    spec: &GroupSpec,
    route: &DecoratedRoute,
    tree: &TreeData,
) -> DecoratedRoute {
    let n = route.config.points();
    if n == 0 {
        return route.clone();
    }
    let vertices = route.config.vertices();
    let mut settled = vec![false; vertices.len()];
    settled[vertex_of(&vertices, 0)] = true;
    let mut out = route.clone();
    let mut remaining: Vec<usize> = tree.tree_arcs.clone();
    while !remaining.is_empty() {
        let mut progressed = false;
        let mut next = Vec::new();
        for &a in &remaining {
            let u = vertex_of(&vertices, a);
            let v = vertex_of(&vertices, (a + 1) % n);
            match (settled[u], settled[v]) {
                (true, false) => {
                    // arc ends at v: label * h = e
                    let h = spec.inverse(&out.labels[a]);
                    out = gauge_act(spec, &out, v, &h);
                    settled[v] = true;
                    progressed = true;
                }
                (false, true) => {
                    // arc starts at u: h^-1 * label = e
                    let h = out.labels[a].clone();
                    out = gauge_act(spec, &out, u, &h);
                    settled[u] = true;
                    progressed = true;
                }
                (true, true) => {
                    debug_assert!(spec.is_trivial(&out.labels[a]));
                    progressed = true;
                }
                (false, false) => next.push(a),
            }
        }
        assert!(progressed, "spanning tree must be connected to the root");
        remaining = next;
    }
    out
}

/// Images of a free basis of the quotient graph's fundamental group, read
/// off as the non-tree arc labels after gauge-fixing the greedy tree. The
/// tuple is well defined up to simultaneous conjugation.
pub fn fundamental_loops(spec: &GroupSpec, route: &DecoratedRoute) -> Vec<GroupElement> {
    debug_assert!(matches!(route.config, Configuration::Chord(_)));
    loops_with_tree(spec, route, false)
}

pub(crate) fn loops_with_tree(
    spec: &GroupSpec,
    route: &DecoratedRoute,
    reverse: bool,
) -> Vec<GroupElement> {
    let tree = greedy_tree(&route.config, reverse);
    let fixed = gauge_fix_tree(spec, route, &tree);
    tree.nontree_arcs.iter().map(|&a| fixed.labels[a].clone()).collect()
}

/// Deterministic canonical representative: constant on orbits of the group
/// generated by gauge moves and configuration rotations.
pub fn canonicalize(spec: &GroupSpec, route: &DecoratedRoute) -> DecoratedRoute {
    canonicalize_with_tree(spec, route, false)
}

pub(crate) fn canonicalize_with_tree(
    spec: &GroupSpec,
    route: &DecoratedRoute,
    reverse: bool,
) -> DecoratedRoute {
    let n = route.config.points();
    if n == 0 {
        let label = spec.conj_canonical(&route.labels[0]);
        return DecoratedRoute { config: route.config.clone(), labels: vec![label] };
    }
    let (canon_config, rotations) = route.config.canonical_rotations();
    let tree = greedy_tree(&canon_config, reverse);
    let mut best: Option<Vec<GroupElement>> = None;
    for s in rotations {
        let rotated = rotate_route(route, s);
        debug_assert_eq!(rotated.config, canon_config);
        let fixed = gauge_fix_tree(spec, &rotated, &tree);
        let tuple: Vec<GroupElement> =
            tree.nontree_arcs.iter().map(|&a| fixed.labels[a].clone()).collect();
        let tuple = spec.simultaneous_conj_canonical(&tuple);
        if best.as_ref().map_or(true, |b| tuple_cmp(spec, &tuple, b) == Ordering::Less) {
            best = Some(tuple);
        }
    }
    let tuple = best.unwrap();
    let mut labels = vec![GroupElement::default(); n];
    for (idx, &a) in tree.nontree_arcs.iter().enumerate() {
        labels[a] = tuple[idx].clone();
    }
    DecoratedRoute { config: canon_config, labels }
}

/// Loop labels of a canonical route (non-tree arc labels; for the empty
/// configuration, the single free label).
pub fn canonical_loops(spec: &GroupSpec, canonical: &DecoratedRoute) -> Vec<GroupElement> {
    if canonical.config.points() == 0 {
        return canonical.labels.clone();
    }
    let tree = greedy_tree(&canonical.config, false);
    let _ = spec;
    tree.nontree_arcs.iter().map(|&a| canonical.labels[a].clone()).collect()
}

/// Largest geodesic loop length of the canonical form.
pub fn ball_radius(spec: &GroupSpec, route: &DecoratedRoute) -> usize {
    let canonical = canonicalize(spec, route);
    canonical_loops(spec, &canonical)
        .iter()
        .map(|l| spec.letter_len(l))
        .max()
        .unwrap_or(0)
}

/// A route lies in ball L when every canonical fundamental-loop label has
/// geodesic length at most L.
pub fn in_ball(spec: &GroupSpec, route: &DecoratedRoute, ball: usize) -> bool {
    ball_radius(spec, route) <= ball
}

/// Conjugacy class of the loop traced by a segment.
pub fn route_loop(spec: &GroupSpec, route: &DecoratedRoute, seg: Segment) -> GroupElement {
    spec.conj_canonical(&route.labels[seg.arc])
}

/// True iff some suspicious segment's loop is contractible.
pub fn is_marginal(spec: &GroupSpec, route: &DecoratedRoute) -> bool {
    let Some(d) = route.chord_diagram() else {
        return false;
    };
    d.suspicious_segments()
        .iter()
        .any(|&seg| spec.is_trivial(&route_loop(spec, route, seg)))
}

/// Rotations that map the decorated route to itself (diagram symmetry whose
/// relabeled decoration is gauge-equivalent to the original).
pub fn route_symmetries(spec: &GroupSpec, canonical: &DecoratedRoute) -> Vec<usize> {
    let n = canonical.config.points();
    if n == 0 {
        return vec![0];
    }
    let tree = greedy_tree(&canonical.config, false);
    let own: Vec<GroupElement> = {
        let fixed = gauge_fix_tree(spec, canonical, &tree);
        let tuple: Vec<GroupElement> =
            tree.nontree_arcs.iter().map(|&a| fixed.labels[a].clone()).collect();
        spec.simultaneous_conj_canonical(&tuple)
    };
    canonical
        .config
        .rotation_symmetries()
        .into_iter()
        .filter(|&s| {
            let rotated = rotate_route(canonical, s);
            let fixed = gauge_fix_tree(spec, &rotated, &tree);
            let tuple: Vec<GroupElement> =
                tree.nontree_arcs.iter().map(|&a| fixed.labels[a].clone()).collect();
            spec.simultaneous_conj_canonical(&tuple) == own
        })
        .collect()
}

/// Contract one elementary segment of a chord-diagram route. A suspicious
/// segment must carry a trivial loop (the label is deleted as a cusp); a
/// non-suspicious segment's label is absorbed by a gauge move before the
/// merge, so adjacent labels pick it up.
pub fn contract_decorated(
    spec: &GroupSpec,
    route: &DecoratedRoute,
    seg: Segment,
) -> Result<DecoratedContraction> {
    let d = route
        .chord_diagram()
        .ok_or_else(|| Error::Usage("contraction needs a chord-diagram route".into()))?
        .clone();
    let n = d.points();
    let j = seg.arc;
    let j2 = (j + 1) % n;
    let suspicious = d.partner(j) == j2;
    let mut work = route.clone();
    if suspicious {
        if !spec.is_trivial(&work.labels[j]) {
            return Err(Error::Usage(
                "suspicious segment with noncontractible loop cannot be contracted".into(),
            ));
        }
    } else {
        // absorb the segment label into the arcs at the far vertex
        let vertices = work.config.vertices();
        let v2 = vertex_of(&vertices, j2);
        let h = spec.inverse(&work.labels[j]);
        work = gauge_act(spec, &work, v2, &h);
        debug_assert!(spec.is_trivial(&work.labels[j]));
    }
    let c = d.contract_segment(seg);
    let config = match &c.result {
        ContractedDiagram::Tilde(t) => Configuration::Tilde(t.clone()),
        ContractedDiagram::Star(s) => Configuration::Star(s.clone()),
    };
    let mut labels = vec![GroupElement::default(); config.arcs()];
    for a in 0..n {
        if a == j {
            continue;
        }
        labels[c.old_to_new[a]] = work.labels[a].clone();
    }
    let slot_first = if suspicious {
        None
    } else {
        let merged = c.old_to_new[j];
        let m = n - 1;
        let pu = c.old_to_new[d.partner(j)];
        let pv = c.old_to_new[d.partner(j2)];
        Some((pu + m - merged) % m < (pv + m - merged) % m)
    };
    Ok(DecoratedContraction {
        route: DecoratedRoute { config, labels },
        slot_first,
    })
}

/// A contracted decorated route; for triple-point contractions `slot_first`
/// records whether re-resolving the marking restores the source route as the
/// first member of the ordered resolution pair.
#[derive(Debug, Clone)]
pub struct DecoratedContraction {
    pub route: DecoratedRoute,
    pub slot_first: Option<bool>,
}

/// Split the marked triple point of a route; the new short arc carries the
/// identity. Returns the ordered pair of canonical chord-diagram routes.
pub fn resolve_marked(
    spec: &GroupSpec,
    route: &DecoratedRoute,
) -> Result<(DecoratedRoute, DecoratedRoute)> {
    let (a, b) = resolve_marked_raw(route)?;
    Ok((canonicalize(spec, &a), canonicalize(spec, &b)))
}

pub(crate) fn resolve_marked_raw(
    route: &DecoratedRoute,
) -> Result<(DecoratedRoute, DecoratedRoute)> {
    let t = match &route.config {
        Configuration::Tilde(t) => t.clone(),
        _ => return Err(Error::Usage("resolution needs a marked-triple route".into())),
    };
    let n = t.points();
    let m = t.marked();
    let r = t.resolve();
    let mut labels = vec![GroupElement::default(); n + 1];
    for a in 0..n {
        let new_arc = if a >= m { a + 1 } else { a };
        labels[new_arc] = route.labels[a].clone();
    }
    // inserted short arc between the split points keeps the identity label
    let first = DecoratedRoute { config: Configuration::Chord(r.first), labels: labels.clone() };
    let second = DecoratedRoute { config: Configuration::Chord(r.second), labels };
    Ok((first, second))
}

/// Switch between the two conventions for the coefficient of the single
/// generator that survives an order-3 symmetry of a triple route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleCollapse {
    One,
    Three,
}

/// Boundary of a chord-diagram route: one generator per symmetry class of
/// segments. Suspicious segments with contractible loops become cusp
/// generators (+1); other segments become marked-triple generators signed by
/// which member of the resolution pair the route re-inflates to.
pub fn d0_row(spec: &GroupSpec, route: &DecoratedRoute) -> Result<Vec<(DecoratedRoute, i64)>> {
    let canonical = canonicalize(spec, route);
    let d = canonical
        .chord_diagram()
        .ok_or_else(|| Error::Usage("d0 rows are defined for chord-diagram routes".into()))?
        .clone();
    let n = d.points();
    if n == 0 {
        return Ok(vec![]);
    }
    let syms = route_symmetries(spec, &canonical);
    // orbits of arcs under the route symmetry group
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<usize> = Vec::new();
    for a in 0..n {
        if orbit_of[a] != usize::MAX {
            continue;
        }
        for &s in &syms {
            orbit_of[(a + n - s) % n] = a;
        }
        orbits.push(a);
    }
    let mut acc: BTreeMap<DecoratedRoute, i64> = BTreeMap::new();
    for a in orbits {
        let seg = Segment { arc: a };
        let suspicious = d.partner(a) == (a + 1) % n;
        if suspicious {
            if !spec.is_trivial(&route_loop(spec, &canonical, seg)) {
                continue;
            }
            let c = contract_decorated(spec, &canonical, seg)?;
            let generator = canonicalize(spec, &c.route);
            *acc.entry(generator).or_insert(0) += 1;
        } else {
            let c = contract_decorated(spec, &canonical, seg)?;
            let generator = canonicalize(spec, &c.route);
            let coef = if c.slot_first == Some(true) { 1 } else { -1 };
            *acc.entry(generator).or_insert(0) += coef;
        }
    }
    Ok(acc.into_iter().filter(|&(_, c)| c != 0).collect())
}

/// Boundary of a triple route: its three markings, collapsed to a single
/// generator when an order-3 symmetry identifies them.
pub fn d0_triple_row(
    spec: &GroupSpec,
    route: &DecoratedRoute,
    collapse: TripleCollapse,
) -> Result<Vec<(DecoratedRoute, i64)>> {
    let canonical = canonicalize(spec, route);
    let t = match &canonical.config {
        Configuration::Triple(t) => t.clone(),
        _ => return Err(Error::Usage("triple rows are defined for triple routes".into())),
    };
    let mut generators: Vec<DecoratedRoute> = Vec::new();
    for marking in t.markings() {
        let marked = DecoratedRoute {
            config: Configuration::Tilde(marking),
            labels: canonical.labels.clone(),
        };
        generators.push(canonicalize(spec, &marked));
    }
    generators.sort();
    generators.dedup();
    let coef = match (generators.len(), collapse) {
        (1, TripleCollapse::One) => -1,
        (1, TripleCollapse::Three) => -3,
        (3, _) => -1,
        (k, _) => panic!("markings of a triple collapse to 1 or 3 classes, got {k}"),
    };
    Ok(generators.into_iter().map(|g| (g, coef)).collect())
}

/// Re-inflate a cusp generator into the unique chord-diagram route whose
/// contraction produces it: the cusp becomes a pair bounding a trivial loop.
pub fn inflate_star(spec: &GroupSpec, route: &DecoratedRoute) -> Result<DecoratedRoute> {
    let s = match &route.config {
        Configuration::Star(s) => s.clone(),
        _ => return Err(Error::Usage("inflation needs a cusp route".into())),
    };
    let n = s.points();
    let star = s.star();
    let (d, _map, _pair) = s.inflate();
    let mut labels = vec![GroupElement::default(); n + 1];
    for a in 0..n {
        let new_arc = if a >= star { a + 1 } else { a };
        labels[new_arc] = route.labels[a].clone();
    }
    let inflated = DecoratedRoute { config: Configuration::Chord(d), labels };
    Ok(canonicalize(spec, &inflated))
}

/// Decide s-orientability of a [1]_M-route per the conjugation criterion:
/// the stratum is non-orientable iff some orientation-destroying element
/// fixes both loops or swaps them.
pub fn s_orientable_order1(spec: &GroupSpec, route: &DecoratedRoute) -> Result<bool> {
    match &route.config {
        Configuration::Chord(d) if d.order() == 1 => {}
        _ => {
            return Err(Error::Usage(
                "s-orientability is decided only for order-1 chord routes".into(),
            ))
        }
    }
    let loops = fundamental_loops(spec, route);
    let (alpha, beta) = (&loops[0], &loops[1]);
    if spec.w1_is_zero() {
        return Ok(true);
    }
    if fixing_lambda_exists(spec, alpha, beta) {
        return Ok(false);
    }
    if alpha != beta && swapping_lambda_exists(spec, alpha, beta) {
        return Ok(false);
    }
    Ok(true)
}

/// Exists lambda with odd w1 centralizing both elements.
fn fixing_lambda_exists(spec: &GroupSpec, alpha: &GroupElement, beta: &GroupElement) -> bool {
    let ta = spec.is_trivial(alpha);
    let tb = spec.is_trivial(beta);
    match (ta, tb) {
        (true, true) => !spec.w1_is_zero(),
        (true, false) => centralizer_has_odd_w1(spec, beta),
        (false, true) => centralizer_has_odd_w1(spec, alpha),
        (false, false) => {
            let commute = spec.multiply(alpha, beta) == spec.multiply(beta, alpha);
            commute && centralizer_has_odd_w1(spec, alpha)
        }
    }
}

fn centralizer_has_odd_w1(spec: &GroupSpec, a: &GroupElement) -> bool {
    let (z, _) = spec.centralizer_data(a).expect("nontrivial element");
    spec.w1_value(&z) == 1
}

/// Exists lambda with odd w1 conjugating alpha to beta and beta to alpha.
fn swapping_lambda_exists(spec: &GroupSpec, alpha: &GroupElement, beta: &GroupElement) -> bool {
    if spec.is_trivial(alpha) || spec.is_trivial(beta) {
        return false;
    }
    let (ca, ua) = spec.conj_canonical_with_conjugator(alpha);
    let (cb, ub) = spec.conj_canonical_with_conjugator(beta);
    if ca != cb {
        return false;
    }
    // lambda1 conjugates alpha to beta; the full solution set of the swap
    // system is { z^j lambda1 } intersected with the beta-condition.
    let lambda1 = spec.multiply(&ua, &spec.inverse(&ub));
    debug_assert_eq!(spec.conjugate(alpha, &lambda1), *beta);
    let (z, ord) = spec.centralizer_data(alpha).expect("nontrivial element");
    // lambda = z^j lambda1 swaps iff z^-j beta z^j = lambda1 alpha lambda1^-1
    let alpha_target = spec.conjugate(alpha, &spec.inverse(&lambda1));
    let check = |j: i64| -> bool {
        let zj = spec.power(&z, j);
        if spec.conjugate(beta, &zj) != alpha_target {
            return false;
        }
        let lambda = spec.multiply(&zj, &lambda1);
        spec.w1_value(&lambda) == 1
    };
    match ord {
        crate::groups::CyclicOrder::Finite(k) => (0..k as i64).any(check),
        crate::groups::CyclicOrder::Infinite => {
            let bound =
                (spec.letter_len(beta) + spec.letter_len(&alpha_target) + 4) as i64;
            (-bound..=bound).any(check)
        }
    }
}

// ── JSON form ─────────────────────────────────────────────────────────

/// Wire shape of a route: diagram plus arc labels in exponent notation
/// (empty string = identity).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RouteJson {
    pub diagram: DiagramJson,
    pub arc_labels: Vec<String>,
}

pub fn route_to_json(spec: &GroupSpec, route: &DecoratedRoute) -> RouteJson {
    RouteJson {
        diagram: route.config.to_json(),
        arc_labels: route.labels.iter().map(|l| spec.format_element(l)).collect(),
    }
}

pub fn route_from_json(spec: &GroupSpec, json: &RouteJson) -> Result<DecoratedRoute> {
    let config = Configuration::from_json(&json.diagram)?;
    let labels = json
        .arc_labels
        .iter()
        .map(|s| spec.parse_element(s))
        .collect::<Result<Vec<_>>>()?;
    DecoratedRoute::new(config, labels)
}
