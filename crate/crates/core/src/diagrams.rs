//! Undecorated configuration combinatorics: chord diagrams and their
//! triple-point / cusp degenerations, all up to orientation-preserving circle
//! homeomorphisms (rotations of the cyclic point order), plus the
//! stratum-complexity formulas for general (A,b)-configurations.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Chord diagram: 2i points on an oriented circle matched into i pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    order: usize,
    pairs: Vec<(usize, usize)>,
}

/// Configuration with i-2 pairs and one triple on 2i-1 points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleDiagram {
    order: usize,
    pairs: Vec<(usize, usize)>,
    triple: [usize; 3],
}

/// A triple configuration with one distinguished point of the triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TildeTripleDiagram {
    base: TripleDiagram,
    marked: usize,
}

/// Configuration with i-1 pairs and one cusp point on 2i-1 points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarDiagram {
    order: usize,
    pairs: Vec<(usize, usize)>,
    star: usize,
}

/// An elementary circle segment between cyclically consecutive configuration
/// points: `arc` j runs from point j to point (j+1) mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub arc: usize,
}

fn sort_pair(p: (usize, usize)) -> (usize, usize) {
    if p.0 <= p.1 {
        p
    } else {
        (p.1, p.0)
    }
}

fn check_cover(points: impl Iterator<Item = usize>, n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    let mut count = 0;
    for p in points {
        if p >= n {
            return Err(Error::Data(format!("point {p} out of range 0..{n}")));
        }
        if seen[p] {
            return Err(Error::Data(format!("point {p} used twice")));
        }
        seen[p] = true;
        count += 1;
    }
    if count != n {
        return Err(Error::Data(format!("expected {n} points, got {count}")));
    }
    Ok(())
}

impl ChordDiagram {
    pub fn new(order: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.len() != order {
            return Err(Error::Data(format!(
                "order {order} diagram needs {order} pairs, got {}",
                pairs.len()
            )));
        }
        check_cover(pairs.iter().flat_map(|&(a, b)| [a, b]), 2 * order)?;
        let mut pairs: Vec<_> = pairs.into_iter().map(sort_pair).collect();
        pairs.sort_unstable();
        Ok(ChordDiagram { order, pairs })
    }

    pub fn empty() -> Self {
        ChordDiagram { order: 0, pairs: vec![] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn points(&self) -> usize {
        2 * self.order
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Partner of a point under the matching.
    pub fn partner(&self, p: usize) -> usize {
        for &(a, b) in &self.pairs {
            if a == p {
                return b;
            }
            if b == p {
                return a;
            }
        }
        panic!("point {p} not in diagram");
    }

    pub fn rotate(&self, s: usize) -> Self {
        let n = self.points();
        if n == 0 {
            return self.clone();
        }
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|&(a, b)| sort_pair(((a + n - s) % n, (b + n - s) % n)))
            .collect();
        pairs.sort_unstable();
        ChordDiagram { order: self.order, pairs }
    }

    /// Canonical representative together with every rotation that reaches it.
    pub fn canonical_rotations(&self) -> (Self, Vec<usize>) {
        canonical_rotations_impl(self, self.points(), ChordDiagram::rotate)
    }

    pub fn canonical(&self) -> Self {
        self.canonical_rotations().0
    }

    /// Rotations mapping the diagram to itself.
    pub fn rotation_symmetries(&self) -> Vec<usize> {
        let n = self.points().max(1);
        (0..n).filter(|&s| self.rotate(s) == *self).collect()
    }

    /// Segments bounded by the two points of one pair.
    pub fn suspicious_segments(&self) -> Vec<Segment> {
        let n = self.points();
        (0..n)
            .filter(|&j| self.partner(j) == (j + 1) % n)
            .map(|arc| Segment { arc })
            .collect()
    }

    /// The segment from `from` to `to`; errors when the two points are not
    /// cyclically consecutive (the segment would contain interior points).
    pub fn segment_between(&self, from: usize, to: usize) -> Result<Segment> {
        let n = self.points();
        if from >= n || to >= n {
            return Err(Error::Usage(format!("segment points {from}->{to} out of range")));
        }
        if (from + 1) % n != to {
            return Err(Error::Usage(format!(
                "segment {from}->{to} has interior configuration points"
            )));
        }
        Ok(Segment { arc: from })
    }

    /// Contract one elementary segment: a suspicious segment collapses its
    /// pair to a cusp point, any other segment merges its two boundary points
    /// into a distinguished triple point.
    pub fn contract_segment(&self, seg: Segment) -> Contraction {
        let n = self.points();
        assert!(seg.arc < n, "arc {} out of range", seg.arc);
        let j = seg.arc;
        let j2 = (j + 1) % n;
        // delete point j2, keep j as the merged point
        let old_to_new: Vec<usize> = (0..n)
            .map(|p| {
                let q = if p == j2 { j } else { p };
                if q > j2 {
                    q - 1
                } else {
                    q
                }
            })
            .collect();
        let merged = old_to_new[j];
        let suspicious = self.partner(j) == j2;
        let result = if suspicious {
            let pairs: Vec<(usize, usize)> = self
                .pairs
                .iter()
                .filter(|&&(a, b)| !(a == j.min(j2) && b == j.max(j2)))
                .map(|&(a, b)| sort_pair((old_to_new[a], old_to_new[b])))
                .collect();
            ContractedDiagram::Star(
                StarDiagram::new(self.order, pairs, merged).expect("contraction is well formed"),
            )
        } else {
            let (pj, pj2) = (self.partner(j), self.partner(j2));
            let pairs: Vec<(usize, usize)> = self
                .pairs
                .iter()
                .filter(|&&(a, b)| ![a, b].contains(&j) && ![a, b].contains(&j2))
                .map(|&(a, b)| sort_pair((old_to_new[a], old_to_new[b])))
                .collect();
            let mut triple = [merged, old_to_new[pj], old_to_new[pj2]];
            triple.sort_unstable();
            let base = TripleDiagram::new(self.order, pairs, triple)
                .expect("contraction is well formed");
            ContractedDiagram::Tilde(TildeTripleDiagram::new(base, merged).unwrap())
        };
        Contraction { result, old_to_new, contracted_arc: j }
    }
}

/// Result of contracting a segment, with the point renumbering.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub result: ContractedDiagram,
    /// Old point index -> new point index; both boundary points of the
    /// contracted arc map to the merged point.
    pub old_to_new: Vec<usize>,
    pub contracted_arc: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractedDiagram {
    Tilde(TildeTripleDiagram),
    Star(StarDiagram),
}

impl TripleDiagram {
    pub fn new(order: usize, pairs: Vec<(usize, usize)>, mut triple: [usize; 3]) -> Result<Self> {
        if order < 2 {
            return Err(Error::Data("triple configurations need order >= 2".into()));
        }
        if pairs.len() != order - 2 {
            return Err(Error::Data(format!(
                "order {order} triple diagram needs {} pairs, got {}",
                order - 2,
                pairs.len()
            )));
        }
        check_cover(
            pairs.iter().flat_map(|&(a, b)| [a, b]).chain(triple),
            2 * order - 1,
        )?;
        let mut pairs: Vec<_> = pairs.into_iter().map(sort_pair).collect();
        pairs.sort_unstable();
        triple.sort_unstable();
        Ok(TripleDiagram { order, pairs, triple })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn points(&self) -> usize {
        2 * self.order - 1
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn triple(&self) -> [usize; 3] {
        self.triple
    }

    pub fn rotate(&self, s: usize) -> Self {
        let n = self.points();
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|&(a, b)| sort_pair(((a + n - s) % n, (b + n - s) % n)))
            .collect();
        pairs.sort_unstable();
        let mut triple = self.triple.map(|t| (t + n - s) % n);
        triple.sort_unstable();
        TripleDiagram { order: self.order, pairs, triple }
    }

    pub fn canonical_rotations(&self) -> (Self, Vec<usize>) {
        canonical_rotations_impl(self, self.points(), TripleDiagram::rotate)
    }

    pub fn rotation_symmetries(&self) -> Vec<usize> {
        (0..self.points()).filter(|&s| self.rotate(s) == *self).collect()
    }

    /// The three markings of the triple.
    pub fn markings(&self) -> [TildeTripleDiagram; 3] {
        self.triple
            .map(|m| TildeTripleDiagram { base: self.clone(), marked: m })
    }
}

impl TildeTripleDiagram {
    pub fn new(base: TripleDiagram, marked: usize) -> Result<Self> {
        if !base.triple.contains(&marked) {
            return Err(Error::Data(format!("marked point {marked} is not in the triple")));
        }
        Ok(TildeTripleDiagram { base, marked })
    }

    pub fn base(&self) -> &TripleDiagram {
        &self.base
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn order(&self) -> usize {
        self.base.order
    }

    pub fn points(&self) -> usize {
        self.base.points()
    }

    pub fn rotate(&self, s: usize) -> Self {
        let n = self.points();
        TildeTripleDiagram {
            base: self.base.rotate(s),
            marked: (self.marked + n - s) % n,
        }
    }

    pub fn canonical_rotations(&self) -> (Self, Vec<usize>) {
        canonical_rotations_impl(self, self.points(), TildeTripleDiagram::rotate)
    }

    pub fn rotation_symmetries(&self) -> Vec<usize> {
        (0..self.points()).filter(|&s| self.rotate(s) == *self).collect()
    }

    /// Split the distinguished point into two nearby points joined to the
    /// other two triple points. The first member joins the earlier split
    /// point to the cyclically nearer triple point; this realizes the
    /// normative ordering of the two resolutions of a marking (the pairing of
    /// the six local perturbations of a triple point into three ordered
    /// pairs).
    pub fn resolve(&self) -> TripleResolution {
        let n = self.points();
        let m = self.marked;
        let mut others: Vec<usize> = self.base.triple.iter().copied().filter(|&t| t != m).collect();
        // first other triple point met walking forward from the marked point
        others.sort_by_key(|&t| (t + n - m) % n);
        let (u, v) = (others[0], others[1]);
        let shift = |p: usize| if p > m { p + 1 } else { p };
        let (m1, m2) = (m, m + 1);
        let base_pairs: Vec<(usize, usize)> = self
            .base
            .pairs
            .iter()
            .map(|&(a, b)| sort_pair((shift(a), shift(b))))
            .collect();
        let mut first_pairs = base_pairs.clone();
        first_pairs.push(sort_pair((m1, shift(u))));
        first_pairs.push(sort_pair((m2, shift(v))));
        let mut second_pairs = base_pairs;
        second_pairs.push(sort_pair((m1, shift(v))));
        second_pairs.push(sort_pair((m2, shift(u))));
        let order = self.order();
        TripleResolution {
            first: ChordDiagram::new(order, first_pairs).expect("resolution is well formed"),
            second: ChordDiagram::new(order, second_pairs).expect("resolution is well formed"),
            old_to_new: (0..n).map(shift).collect(),
            split: (m1, m2),
        }
    }
}

/// Ordered pair of chord diagrams obtained by splitting a marked triple
/// point, with the point renumbering (the marked point maps to the first
/// split point; the new second split point sits just after it).
#[derive(Debug, Clone)]
pub struct TripleResolution {
    pub first: ChordDiagram,
    pub second: ChordDiagram,
    pub old_to_new: Vec<usize>,
    pub split: (usize, usize),
}

/// Resolve the distinguished point of a marked triple configuration.
pub fn resolve_triple(t: &TildeTripleDiagram) -> (ChordDiagram, ChordDiagram) {
    let r = t.resolve();
    (r.first, r.second)
}

impl StarDiagram {
    pub fn new(order: usize, pairs: Vec<(usize, usize)>, star: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::Data("star configurations need order >= 1".into()));
        }
        if pairs.len() != order - 1 {
            return Err(Error::Data(format!(
                "order {order} star diagram needs {} pairs, got {}",
                order - 1,
                pairs.len()
            )));
        }
        check_cover(
            pairs.iter().flat_map(|&(a, b)| [a, b]).chain([star]),
            2 * order - 1,
        )?;
        let mut pairs: Vec<_> = pairs.into_iter().map(sort_pair).collect();
        pairs.sort_unstable();
        Ok(StarDiagram { order, pairs, star })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn points(&self) -> usize {
        2 * self.order - 1
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn star(&self) -> usize {
        self.star
    }

    pub fn rotate(&self, s: usize) -> Self {
        let n = self.points();
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|&(a, b)| sort_pair(((a + n - s) % n, (b + n - s) % n)))
            .collect();
        pairs.sort_unstable();
        StarDiagram { order: self.order, pairs, star: (self.star + n - s) % n }
    }

    pub fn canonical_rotations(&self) -> (Self, Vec<usize>) {
        canonical_rotations_impl(self, self.points(), StarDiagram::rotate)
    }

    pub fn rotation_symmetries(&self) -> Vec<usize> {
        (0..self.points()).filter(|&s| self.rotate(s) == *self).collect()
    }

    /// Inflate the cusp back into a pair bounding a short segment. Returns
    /// the chord diagram and the renumbering of the star diagram's points.
    pub fn inflate(&self) -> (ChordDiagram, Vec<usize>, (usize, usize)) {
        let n = self.points();
        let s = self.star;
        let shift = |p: usize| if p > s { p + 1 } else { p };
        let mut pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| sort_pair((shift(a), shift(b))))
            .collect();
        pairs.push((s, s + 1));
        let d = ChordDiagram::new(self.order, pairs).expect("inflation is well formed");
        (d, (0..n).map(shift).collect(), (s, s + 1))
    }
}

fn canonical_rotations_impl<T: Clone + Ord>(
    d: &T,
    points: usize,
    rotate: impl Fn(&T, usize) -> T,
) -> (T, Vec<usize>) {
    let n = points.max(1);
    let mut best = d.clone();
    for s in 1..n {
        let cand = rotate(d, s);
        if cand < best {
            best = cand;
        }
    }
    let rotations = (0..n).filter(|&s| rotate(d, s) == best).collect();
    (best, rotations)
}

/// All chord diagrams of the given order, one canonical representative per
/// rotation class, sorted.
pub fn enumerate_diagrams(order: usize) -> Vec<ChordDiagram> {
    let mut out: BTreeSet<ChordDiagram> = BTreeSet::new();
    let mut points: Vec<usize> = (0..2 * order).collect();
    let mut pairs = Vec::new();
    fn rec(
        points: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        order: usize,
        out: &mut BTreeSet<ChordDiagram>,
    ) {
        if points.is_empty() {
            let d = ChordDiagram::new(order, pairs.clone()).unwrap();
            out.insert(d.canonical());
            return;
        }
        let a = points[0];
        for idx in 1..points.len() {
            let b = points[idx];
            let mut rest: Vec<usize> = points.clone();
            rest.remove(idx);
            rest.remove(0);
            pairs.push((a, b));
            rec(&mut rest, pairs, order, out);
            pairs.pop();
        }
    }
    if order == 0 {
        return vec![ChordDiagram::empty()];
    }
    rec(&mut points, &mut pairs, order, &mut out);
    out.into_iter().collect()
}

/// All triple configurations of the given order up to rotation, sorted.
pub fn enumerate_triple_diagrams(order: usize) -> Vec<TripleDiagram> {
    if order < 2 {
        return vec![];
    }
    let n = 2 * order - 1;
    let mut out: BTreeSet<TripleDiagram> = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let rest: Vec<usize> =
                    (0..n).filter(|&p| p != i && p != j && p != k).collect();
                let mut pairs = Vec::new();
                fn rec(
                    points: &[usize],
                    pairs: &mut Vec<(usize, usize)>,
                    order: usize,
                    triple: [usize; 3],
                    out: &mut BTreeSet<TripleDiagram>,
                ) {
                    if points.is_empty() {
                        let d = TripleDiagram::new(order, pairs.clone(), triple).unwrap();
                        out.insert(d.canonical_rotations().0);
                        return;
                    }
                    let a = points[0];
                    for idx in 1..points.len() {
                        let b = points[idx];
                        let rest: Vec<usize> = points
                            .iter()
                            .copied()
                            .filter(|&p| p != a && p != b)
                            .collect();
                        pairs.push((a, b));
                        rec(&rest, pairs, order, triple, out);
                        pairs.pop();
                    }
                }
                rec(&rest, &mut pairs, order, [i, j, k], &mut out);
            }
        }
    }
    out.into_iter().collect()
}

// ── (A,b)-configuration formulas ──────────────────────────────────────

/// An (A,b)-configuration class: a multiset of group sizes (each >= 2) and a
/// number of singular points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ABConfiguration {
    a: Vec<u32>,
    b: u32,
}

impl ABConfiguration {
    pub fn new(mut a: Vec<u32>, b: u32) -> Result<Self> {
        if a.iter().any(|&x| x < 2) {
            return Err(Error::Data("all A-members must be >= 2".into()));
        }
        a.sort_unstable();
        Ok(ABConfiguration { a, b })
    }

    /// |A| - #A + b.
    pub fn complexity(&self) -> u64 {
        let total: u64 = self.a.iter().map(|&x| x as u64).sum();
        total - self.a.len() as u64 + self.b as u64
    }

    /// Number of vertices of the associated simplex: sum of C(a_j, 2) plus b.
    pub fn simplex_vertices(&self) -> u64 {
        let choose2 = |x: u64| x * (x - 1) / 2;
        self.a.iter().map(|&x| choose2(x as u64)).sum::<u64>() + self.b as u64
    }

    /// Rank of the only nontrivial reduced homology group of the simplex
    /// block: product of (a_j - 1)!.
    pub fn prop7_rank(&self) -> u64 {
        let fact = |x: u64| (1..=x).product::<u64>();
        self.a.iter().map(|&x| fact(x as u64 - 1)).product()
    }

    /// The only potentially nontrivial dimension: sum of (a_j - 1) + b - 1.
    pub fn prop7_dim(&self) -> i64 {
        self.a.iter().map(|&x| x as i64 - 1).sum::<i64>() + self.b as i64 - 1
    }
}

/// Support wedge of the spectral sequence: p < 0 and q + (n-2)p >= 0.
pub fn wedge_support(p: i64, q: i64, n: u32) -> bool {
    p < 0 && q + (n as i64 - 2) * p >= 0
}

// ── JSON form ─────────────────────────────────────────────────────────

/// Shared JSON shape for all four configuration kinds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    pub order: usize,
    pub pairs: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub triple: Option<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub marked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub star: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chord(order: usize, pairs: &[(usize, usize)]) -> ChordDiagram {
        ChordDiagram::new(order, pairs.to_vec()).unwrap()
    }

    /// Independent Burnside-lemma count of matchings on 2i cyclic points up
    /// to rotation: average over rotations of the number of fixed matchings.
    fn burnside_count(order: usize) -> usize {
        let n = 2 * order;
        let mut all: Vec<Vec<(usize, usize)>> = Vec::new();
        fn rec(free: &[usize], acc: &mut Vec<(usize, usize)>, all: &mut Vec<Vec<(usize, usize)>>) {
            if free.is_empty() {
                all.push(acc.clone());
                return;
            }
            let a = free[0];
            for idx in 1..free.len() {
                let b = free[idx];
                let rest: Vec<usize> = free.iter().copied().filter(|&p| p != a && p != b).collect();
                acc.push((a, b));
                rec(&rest, acc, all);
                acc.pop();
            }
        }
        let free: Vec<usize> = (0..n).collect();
        rec(&free, &mut Vec::new(), &mut all);
        let normalize = |m: &[(usize, usize)]| {
            let mut v: Vec<(usize, usize)> = m.iter().map(|&p| sort_pair(p)).collect();
            v.sort_unstable();
            v
        };
        let mut fixed_total = 0usize;
        for s in 0..n {
            for m in &all {
                let rotated: Vec<(usize, usize)> =
                    m.iter().map(|&(a, b)| ((a + n - s) % n, (b + n - s) % n)).collect();
                if normalize(&rotated) == normalize(m) {
                    fixed_total += 1;
                }
            }
        }
        fixed_total / n
    }

    #[test]
    fn enumerate_small_counts() {
        assert_eq!(enumerate_diagrams(1).len(), 1);
        assert_eq!(enumerate_diagrams(2).len(), 2);
        assert_eq!(enumerate_diagrams(3).len(), 5);
    }

    #[test]
    fn enumerate_matches_burnside_oracle() {
        for order in 1..=6 {
            assert_eq!(
                enumerate_diagrams(order).len(),
                burnside_count(order),
                "order {order}"
            );
        }
    }

    #[test]
    fn suspicious_examples() {
        let d1 = chord(1, &[(0, 1)]);
        assert_eq!(d1.suspicious_segments().len(), 2);
        let noncross = chord(2, &[(0, 1), (2, 3)]);
        assert_eq!(
            noncross.suspicious_segments(),
            vec![Segment { arc: 0 }, Segment { arc: 2 }]
        );
        let cross = chord(2, &[(0, 2), (1, 3)]);
        assert!(cross.suspicious_segments().is_empty());
    }

    #[test]
    fn segment_between_checks_adjacency() {
        let d = chord(2, &[(0, 2), (1, 3)]);
        assert!(d.segment_between(1, 2).is_ok());
        assert!(d.segment_between(3, 0).is_ok());
        assert!(d.segment_between(0, 2).is_err());
    }

    #[test]
    fn contract_crossing_segment_gives_marked_triple() {
        let cross = chord(2, &[(0, 2), (1, 3)]);
        let c = cross.contract_segment(Segment { arc: 1 });
        match c.result {
            ContractedDiagram::Tilde(t) => {
                assert_eq!(t.order(), 2);
                assert_eq!(t.base().triple(), [0, 1, 2]);
                assert_eq!(t.marked(), 1);
            }
            _ => panic!("expected a marked triple"),
        }
    }

    #[test]
    fn contract_suspicious_gives_star() {
        let d1 = chord(1, &[(0, 1)]);
        let c = d1.contract_segment(Segment { arc: 0 });
        match c.result {
            ContractedDiagram::Star(s) => {
                assert_eq!(s.order(), 1);
                assert_eq!(s.points(), 1);
                assert!(s.pairs().is_empty());
            }
            _ => panic!("expected a star"),
        }
        let noncross = chord(2, &[(0, 1), (2, 3)]);
        let c = noncross.contract_segment(Segment { arc: 0 });
        match c.result {
            ContractedDiagram::Star(s) => {
                assert_eq!(s.order(), 2);
                assert_eq!(s.pairs().len(), 1);
            }
            _ => panic!("expected a star"),
        }
    }

    #[test]
    fn six_resolutions_of_order2_triple() {
        let t = TripleDiagram::new(2, vec![], [0, 1, 2]).unwrap();
        let mut classes = BTreeSet::new();
        let mut count = 0;
        for marking in t.markings() {
            let (a, b) = resolve_triple(&marking);
            // each ordered pair is one crossing and one non-crossing diagram
            assert_eq!(a.canonical(), chord(2, &[(0, 2), (1, 3)]).canonical());
            assert_eq!(b.canonical(), chord(2, &[(0, 1), (2, 3)]).canonical());
            classes.insert(a.canonical());
            classes.insert(b.canonical());
            count += 2;
        }
        assert_eq!(count, 6);
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn resolutions_differ_only_at_split() {
        for order in 2..=4 {
            for d in enumerate_diagrams(order) {
                let n = d.points();
                for arc in 0..n {
                    if let ContractedDiagram::Tilde(t) =
                        d.contract_segment(Segment { arc }).result
                    {
                        let r = t.resolve();
                        let (m1, m2) = r.split;
                        let moved: Vec<(usize, usize)> = r
                            .first
                            .pairs()
                            .iter()
                            .chain(r.second.pairs())
                            .copied()
                            .filter(|&(a, b)| [a, b].contains(&m1) || [a, b].contains(&m2))
                            .collect();
                        let untouched_first: Vec<_> = r
                            .first
                            .pairs()
                            .iter()
                            .copied()
                            .filter(|&(a, b)| ![a, b].contains(&m1) && ![a, b].contains(&m2))
                            .collect();
                        let untouched_second: Vec<_> = r
                            .second
                            .pairs()
                            .iter()
                            .copied()
                            .filter(|&(a, b)| ![a, b].contains(&m1) && ![a, b].contains(&m2))
                            .collect();
                        assert_eq!(untouched_first, untouched_second);
                        assert_eq!(moved.len(), 4);
                    }
                }
            }
        }
    }

    #[test]
    fn contract_resolve_round_trip() {
        for order in 1..=4 {
            for d in enumerate_diagrams(order) {
                let n = d.points();
                for arc in 0..n {
                    let c = d.contract_segment(Segment { arc });
                    if let ContractedDiagram::Tilde(t) = c.result {
                        let r = t.resolve();
                        let key = d.canonical();
                        assert!(
                            r.first.canonical() == key || r.second.canonical() == key,
                            "round trip failed for order {order}, arc {arc}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_triple_markings_collapse() {
        let t = TripleDiagram::new(2, vec![], [0, 1, 2]).unwrap();
        let syms = t.rotation_symmetries();
        assert_eq!(syms.len(), 3);
        let keys: BTreeSet<_> = t
            .markings()
            .iter()
            .map(|m| m.canonical_rotations().0)
            .collect();
        assert_eq!(keys.len(), 1);
    }

    #[test]
    fn complexity_formulas() {
        let i3 = ABConfiguration::new(vec![2, 2, 2], 0).unwrap();
        assert_eq!(i3.complexity(), 3);
        assert_eq!(ABConfiguration::new(vec![3], 0).unwrap().complexity(), 2);
        assert_eq!(ABConfiguration::new(vec![2, 2], 1).unwrap().complexity(), 3);
        // the [i]-, <i>- and i*-configurations all have complexity i
        for i in 2..6u32 {
            let chord_cfg = ABConfiguration::new(vec![2; i as usize], 0).unwrap();
            let mut triple = vec![2; i as usize - 2];
            triple.push(3);
            let triple_cfg = ABConfiguration::new(triple, 0).unwrap();
            let star_cfg = ABConfiguration::new(vec![2; i as usize - 1], 1).unwrap();
            assert_eq!(chord_cfg.complexity(), i as u64);
            assert_eq!(triple_cfg.complexity(), i as u64);
            assert_eq!(star_cfg.complexity(), i as u64);
        }
    }

    #[test]
    fn simplex_vertices_formula() {
        assert_eq!(ABConfiguration::new(vec![2, 2], 0).unwrap().simplex_vertices(), 2);
        assert_eq!(ABConfiguration::new(vec![3], 0).unwrap().simplex_vertices(), 3);
        assert_eq!(ABConfiguration::new(vec![2], 1).unwrap().simplex_vertices(), 2);
    }

    #[test]
    fn prop7_formulas() {
        assert_eq!(ABConfiguration::new(vec![2, 2, 2], 0).unwrap().prop7_rank(), 1);
        let c = ABConfiguration::new(vec![3, 2], 0).unwrap();
        assert_eq!(c.prop7_rank(), 2);
        assert_eq!(c.prop7_dim(), 2);
        let c = ABConfiguration::new(vec![4], 1).unwrap();
        assert_eq!(c.prop7_rank(), 6);
        assert_eq!(c.prop7_dim(), 3);
        for i in 1..7 {
            let c = ABConfiguration::new(vec![2; i], 0).unwrap();
            assert_eq!(c.prop7_dim(), i as i64 - 1);
        }
    }

    #[test]
    fn wedge_examples() {
        assert!(wedge_support(-1, 1, 3));
        assert!(!wedge_support(0, 5, 3));
        assert!(!wedge_support(-2, 1, 3));
    }
}
