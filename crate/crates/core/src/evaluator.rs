//! Actuality-table evaluation of finite-order invariants for knots in R^3,
//! on signed Gauss codes, together with an independent Conway-polynomial
//! skein oracle.
//!
//! Evaluation descends to the unknot by switching every crossing first met
//! on the understrand; each switch contributes the first-order index of the
//! singular knot at the wall, weighted by the sign of the crossing being
//! switched. Indices of 1-singular knots are computed exactly for tables of
//! order <= 2: the wall-crossing identity determines them up to the table's
//! level-1 constant, and the remaining local weights are pinned by the
//! requirement that doubled crossings in 2-crossing diagrams have index 0.

use crate::diagrams::ChordDiagram;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// One passage through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingEntry {
    pub id: u32,
    pub over: bool,
    pub sign: i8,
}

/// A signed Gauss code of a knot diagram. Realizability is not checked
/// beyond the syntactic pairing rules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussCode {
    entries: Vec<CrossingEntry>,
}

impl GaussCode {
    pub fn new(entries: Vec<CrossingEntry>) -> Result<Self> {
        let code = GaussCode { entries };
        code.validate()?;
        Ok(code)
    }

    fn validate(&self) -> Result<()> {
        let mut seen: BTreeMap<u32, Vec<&CrossingEntry>> = BTreeMap::new();
        for e in &self.entries {
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::Data(format!("crossing {} has sign {}", e.id, e.sign)));
            }
            seen.entry(e.id).or_default().push(e);
        }
        for (id, passages) in &seen {
            if passages.len() != 2 {
                return Err(Error::Data(format!(
                    "crossing {id} appears {} times, expected 2",
                    passages.len()
                )));
            }
            if passages[0].over == passages[1].over {
                return Err(Error::Data(format!(
                    "crossing {id} must appear once over and once under"
                )));
            }
            if passages[0].sign != passages[1].sign {
                return Err(Error::Data(format!(
                    "crossing {id} has inconsistent signs"
                )));
            }
        }
        Ok(())
    }

    /// Parse the text form, e.g. "O1+ U2+ O3+ U1+ O2+ U3+". The empty
    /// string is the zero-crossing unknot.
    pub fn parse(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in s.split_whitespace() {
            let bytes = tok.as_bytes();
            if bytes.len() < 3 {
                return Err(Error::Data(format!("bad Gauss token '{tok}'")));
            }
            let over = match bytes[0] {
                b'O' | b'o' => true,
                b'U' | b'u' => false,
                _ => return Err(Error::Data(format!("bad Gauss token '{tok}'"))),
            };
            let sign = match bytes[bytes.len() - 1] {
                b'+' => 1i8,
                b'-' => -1,
                _ => return Err(Error::Data(format!("bad Gauss token '{tok}'"))),
            };
            let id: u32 = tok[1..tok.len() - 1]
                .parse()
                .map_err(|_| Error::Data(format!("bad crossing id in '{tok}'")))?;
            entries.push(CrossingEntry { id, over, sign });
        }
        GaussCode::new(entries)
    }

    pub fn entries(&self) -> &[CrossingEntry] {
        &self.entries
    }

    pub fn crossing_count(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn crossing_ids(&self) -> BTreeSet<u32> {
        self.entries.iter().map(|e| e.id).collect()
    }

    /// Positions of the two passages of a crossing, in code order.
    pub fn positions_of(&self, id: u32) -> (usize, usize) {
        let mut found = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            if e.id == id {
                found.push(i);
            }
        }
        (found[0], found[1])
    }

    pub fn sign_of(&self, id: u32) -> i8 {
        self.entries.iter().find(|e| e.id == id).expect("crossing exists").sign
    }

    /// Switch one crossing: over/under and sign flip at both passages.
    pub fn switch(&self, id: u32) -> GaussCode {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                if e.id == id {
                    CrossingEntry { id: e.id, over: !e.over, sign: -e.sign }
                } else {
                    *e
                }
            })
            .collect();
        GaussCode { entries }
    }

    /// Mirror image: every crossing switches.
    pub fn mirror(&self) -> GaussCode {
        let entries = self
            .entries
            .iter()
            .map(|e| CrossingEntry { id: e.id, over: !e.over, sign: -e.sign })
            .collect();
        GaussCode { entries }
    }

    /// Move the basepoint k symbols forward.
    pub fn rotate_basepoint(&self, k: usize) -> GaussCode {
        if self.entries.is_empty() {
            return self.clone();
        }
        let n = self.entries.len();
        let entries = (0..n).map(|i| self.entries[(i + k) % n]).collect();
        GaussCode { entries }
    }

    /// Connected sum by code concatenation, with the second code's ids
    /// shifted past the first's.
    pub fn connected_sum(&self, other: &GaussCode) -> GaussCode {
        let offset = self.crossing_ids().iter().max().copied().unwrap_or(0);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|e| CrossingEntry {
            id: e.id + offset,
            over: e.over,
            sign: e.sign,
        }));
        GaussCode { entries }
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{}{}{}",
                if e.over { 'O' } else { 'U' },
                e.id,
                if e.sign > 0 { '+' } else { '-' }
            )?;
        }
        Ok(())
    }
}

/// Chord diagram of the singular knot obtained by declaring the listed
/// crossings to be double points.
pub fn singular_diagram(code: &GaussCode, switched: &BTreeSet<u32>) -> ChordDiagram {
    let sub: Vec<u32> = code
        .entries
        .iter()
        .filter(|e| switched.contains(&e.id))
        .map(|e| e.id)
        .collect();
    let mut first_seen: BTreeMap<u32, usize> = BTreeMap::new();
    let mut pairs = Vec::new();
    for (pos, id) in sub.iter().enumerate() {
        match first_seen.get(id) {
            Some(&p) => pairs.push((p, pos)),
            None => {
                first_seen.insert(*id, pos);
            }
        }
    }
    ChordDiagram::new(switched.len(), pairs)
        .expect("paired occurrences form a matching")
        .canonical()
}

/// Order in which offending crossings are switched during the descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentStrategy {
    WalkOrder,
    ReverseWalk,
    ById,
}

/// Crossings whose first passage is on the understrand, in descent order.
/// Switching exactly these makes the diagram descending from the basepoint.
pub fn offending_crossings(code: &GaussCode, strategy: DescentStrategy) -> Vec<u32> {
    let mut seen = BTreeSet::new();
    let mut offenders = Vec::new();
    for e in &code.entries {
        if seen.insert(e.id) && !e.over {
            offenders.push(e.id);
        }
    }
    match strategy {
        DescentStrategy::WalkOrder => {}
        DescentStrategy::ReverseWalk => offenders.reverse(),
        DescentStrategy::ById => offenders.sort_unstable(),
    }
    offenders
}

/// Crossing changes that unknot the diagram, with surgery signs: a change
/// replacing the negative resolution by the positive one is positive.
pub fn descend(code: &GaussCode) -> Vec<(u32, i8)> {
    offending_crossings(code, DescentStrategy::WalkOrder)
        .into_iter()
        .map(|id| (id, -code.sign_of(id)))
        .collect()
}

// ── Actuality tables ──────────────────────────────────────────────────

/// Canonical string key of a chord diagram, used to index table cells.
pub fn diagram_key(d: &ChordDiagram) -> String {
    let c = d.canonical();
    c.pairs()
        .iter()
        .map(|&(a, b)| format!("{a}-{b}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Level-indexed index table of an order-i invariant. Level 0 is the value
/// at the distinguished unknot; level j maps canonical order-j diagram keys
/// to the index of the distinguished representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActualityTable {
    pub order: usize,
    pub base: i64,
    /// levels[j-1] holds level j for j = 1..=order.
    pub levels: Vec<BTreeMap<String, i64>>,
}

impl ActualityTable {
    pub fn new(order: usize, base: i64, levels: Vec<BTreeMap<String, i64>>) -> Result<Self> {
        if levels.len() != order {
            return Err(Error::Data(format!(
                "order {order} table needs {order} levels above the base, got {}",
                levels.len()
            )));
        }
        let table = ActualityTable { order, base, levels };
        if order >= 2 {
            // trivial condition at the top level: the non-crossing order-2
            // diagram must carry index 0
            let noncross = ChordDiagram::new(2, vec![(0, 1), (2, 3)]).unwrap();
            if order == 2 {
                let key = diagram_key(&noncross);
                match table.levels[1].get(&key) {
                    Some(0) => {}
                    Some(v) => {
                        return Err(Error::Data(format!(
                            "top-level cell {key} must be 0 by the trivial condition, got {v}"
                        )))
                    }
                    None => return Err(Error::MissingCell { level: 2, key }),
                }
            }
        }
        Ok(table)
    }

    fn cell(&self, level: usize, d: &ChordDiagram) -> Result<i64> {
        let key = diagram_key(d);
        self.levels[level - 1]
            .get(&key)
            .copied()
            .ok_or(Error::MissingCell { level, key })
    }

    /// The standard second-order invariant: 1 on the crossing diagram.
    pub fn v2() -> ActualityTable {
        let cross = ChordDiagram::new(2, vec![(0, 2), (1, 3)]).unwrap();
        let noncross = ChordDiagram::new(2, vec![(0, 1), (2, 3)]).unwrap();
        let single = ChordDiagram::new(1, vec![(0, 1)]).unwrap();
        let level1 = BTreeMap::from([(diagram_key(&single), 0)]);
        let level2 = BTreeMap::from([(diagram_key(&cross), 1), (diagram_key(&noncross), 0)]);
        ActualityTable::new(2, 0, vec![level1, level2]).unwrap()
    }
}

/// First-order index of the singular knot (code with `double` as its double
/// point), for tables of order <= 2.
///
/// The wall-crossing identity forces the index to change by the top-level
/// value of the interleaving diagram whenever another crossing is switched;
/// the weight of each interleaving crossing is therefore its sign times an
/// indicator fixed by normalization. Writing s for the crossing's first
/// passage and d1 for the double's first passage, the indicator counts
/// first-over crossings opening before d1 and first-under crossings opening
/// after d1. Normalization: a doubled crossing in any 2-crossing diagram has
/// index equal to the level-1 constant, since both of its resolutions are
/// unknots.
fn level1_index(table: &ActualityTable, code: &GaussCode, double: u32) -> Result<i64> {
    let single = ChordDiagram::new(1, vec![(0, 1)]).unwrap();
    let t1 = table.cell(1, &single)?;
    if table.order == 1 {
        return Ok(t1);
    }
    let cross = ChordDiagram::new(2, vec![(0, 2), (1, 3)]).unwrap();
    let gamma_cross = table.cell(2, &cross)?;
    let (d1, d2) = code.positions_of(double);
    let mut w = 0i64;
    for id in code.crossing_ids() {
        if id == double {
            continue;
        }
        let (s, t) = code.positions_of(id);
        let s_inside = d1 < s && s < d2;
        let t_inside = d1 < t && t < d2;
        if s_inside == t_inside {
            continue; // not interleaving the double point
        }
        let first_over = code.entries[s].over;
        let counts = if s < d1 { first_over } else { !first_over };
        if counts {
            w += code.entries[s].sign as i64;
        }
    }
    Ok(t1 + w * gamma_cross)
}

/// Evaluate an actuality table at a knot, descending in walk order.
pub fn evaluate(table: &ActualityTable, code: &GaussCode) -> Result<i64> {
    evaluate_with_strategy(table, code, DescentStrategy::WalkOrder)
}

/// Evaluate with a chosen descent order; the result is independent of it.
pub fn evaluate_with_strategy(
    table: &ActualityTable,
    code: &GaussCode,
    strategy: DescentStrategy,
) -> Result<i64> {
    code.validate()?;
    if table.order == 0 {
        return Ok(table.base);
    }
    if table.order > 2 {
        return Err(Error::Usage(
            "evaluation of tables of order >= 3 needs per-cell representative immersions; \
             only orders <= 2 are supported"
                .into(),
        ));
    }
    let mut state = code.clone();
    let mut total = table.base;
    for id in offending_crossings(code, strategy) {
        let sigma = state.sign_of(id) as i64;
        let a1 = level1_index(table, &state, id)?;
        total += sigma * a1;
        state = state.switch(id);
    }
    Ok(total)
}

// ── Conway polynomial oracle ──────────────────────────────────────────

const CONWAY_DEG: usize = 9;
type Poly = [i64; CONWAY_DEG];

fn poly_add(a: &mut Poly, b: &Poly, scale: i64, shift: usize) {
    for i in 0..CONWAY_DEG {
        if i + shift < CONWAY_DEG {
            a[i + shift] += scale * b[i];
        }
    }
}

/// An oriented link diagram as one Gauss sequence per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct LinkDiagram {
    comps: Vec<Vec<CrossingEntry>>,
}

impl LinkDiagram {
    fn from_knot(code: &GaussCode) -> Self {
        LinkDiagram { comps: vec![code.entries.to_vec()] }
    }

    fn key(&self) -> String {
        let mut s = String::new();
        for c in &self.comps {
            for e in c {
                s.push(if e.over { 'O' } else { 'U' });
                s.push_str(&e.id.to_string());
                s.push(if e.sign > 0 { '+' } else { '-' });
            }
            s.push('|');
        }
        s
    }

    /// Passages of a crossing in traversal order (component, position).
    fn passages(&self, id: u32) -> [(usize, usize); 2] {
        let mut found = Vec::new();
        for (ci, comp) in self.comps.iter().enumerate() {
            for (pi, e) in comp.iter().enumerate() {
                if e.id == id {
                    found.push((ci, pi));
                }
            }
        }
        [found[0], found[1]]
    }

    /// First crossing whose first traversal passage is on the understrand.
    /// A stacked-descending diagram (no such crossing) is an unlink.
    fn first_violation(&self) -> Option<u32> {
        let mut seen = BTreeSet::new();
        for comp in &self.comps {
            for e in comp {
                if seen.insert(e.id) && !e.over {
                    return Some(e.id);
                }
            }
        }
        None
    }

    fn switch(&self, id: u32) -> LinkDiagram {
        let comps = self
            .comps
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| {
                        if e.id == id {
                            CrossingEntry { id: e.id, over: !e.over, sign: -e.sign }
                        } else {
                            *e
                        }
                    })
                    .collect()
            })
            .collect();
        LinkDiagram { comps }
    }

    /// Oriented smoothing: reconnect the two strands respecting orientation.
    /// A self-crossing splits its component; a mixed crossing merges two.
    fn smooth(&self, id: u32) -> LinkDiagram {
        let [(ca, ia), (cb, ib)] = self.passages(id);
        let mut comps = self.comps.clone();
        if ca == cb {
            let comp = comps.remove(ca);
            let (first, second) = (ia.min(ib), ia.max(ib));
            let inner: Vec<CrossingEntry> = comp[first + 1..second].to_vec();
            let mut outer: Vec<CrossingEntry> = comp[second + 1..].to_vec();
            outer.extend_from_slice(&comp[..first]);
            comps.push(outer);
            comps.push(inner);
        } else {
            let (keep, other) = (ca.min(cb), ca.max(cb));
            let (ik, io) = if keep == ca { (ia, ib) } else { (ib, ia) };
            let comp_o = comps.remove(other);
            let comp_k = comps.remove(keep);
            let mut merged: Vec<CrossingEntry> = comp_k[..ik].to_vec();
            merged.extend_from_slice(&comp_o[io + 1..]);
            merged.extend_from_slice(&comp_o[..io]);
            merged.extend_from_slice(&comp_k[ik + 1..]);
            comps.push(merged);
        }
        LinkDiagram { comps }
    }
}

fn conway_rec(link: &LinkDiagram, memo: &mut HashMap<String, Poly>) -> Poly {
    let key = link.key();
    if let Some(p) = memo.get(&key) {
        return *p;
    }
    let result = match link.first_violation() {
        None => {
            // stacked descending: a split unlink
            let mut p = [0i64; CONWAY_DEG];
            if link.comps.len() == 1 {
                p[0] = 1;
            }
            p
        }
        Some(id) => {
            let sign = link
                .comps
                .iter()
                .flatten()
                .find(|e| e.id == id)
                .expect("crossing exists")
                .sign;
            let switched = conway_rec(&link.switch(id), memo);
            let smoothed = conway_rec(&link.smooth(id), memo);
            let mut p = switched;
            // nabla(L+) - nabla(L-) = z nabla(L0)
            poly_add(&mut p, &smoothed, sign as i64, 1);
            p
        }
    };
    memo.insert(key, result);
    result
}

/// Conway polynomial coefficients (index = degree in z) of a knot code.
pub fn conway_polynomial(code: &GaussCode) -> Vec<i64> {
    let mut memo = HashMap::new();
    conway_rec(&LinkDiagram::from_knot(code), &mut memo).to_vec()
}

/// The z^2 coefficient of the Conway polynomial.
pub fn conway_a2(code: &GaussCode) -> i64 {
    conway_polynomial(code)[2]
}

/// Knot determinant |Delta(-1)|, evaluated from the Conway polynomial at
/// z^2 = -4.
pub fn determinant(code: &GaussCode) -> i64 {
    let p = conway_polynomial(code);
    let mut acc = 0i64;
    let mut pow = 1i64;
    for k in 0..=(CONWAY_DEG - 1) / 2 {
        acc += p[2 * k] * pow;
        pow *= -4;
    }
    acc.abs()
}

// ── Braid closures ────────────────────────────────────────────────────

/// Signed Gauss code of the closure of a braid word. Letter k (1-based,
/// negative for inverse) crosses strand positions |k|-1 and |k|; a positive
/// letter takes the left strand over. Errors when the closure is not a knot.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<GaussCode> {
    if strands < 1 {
        return Err(Error::Data("braid needs at least one strand".into()));
    }
    for &w in word {
        let i = w.unsigned_abs() as usize;
        if w == 0 || i >= strands {
            return Err(Error::Data(format!("braid letter {w} out of range for {strands} strands")));
        }
    }
    // permutation of positions top -> bottom
    let mut perm: Vec<usize> = (0..strands).collect();
    for &w in word {
        let i = w.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    // closure components = cycles of the permutation
    let mut entries = Vec::new();
    let mut visited = vec![false; strands];
    let mut components = 0;
    for start in 0..strands {
        if visited[start] {
            continue;
        }
        components += 1;
        let mut pos = start;
        loop {
            visited[pos] = true;
            // walk down through the braid word
            for (k, &w) in word.iter().enumerate() {
                let i = w.unsigned_abs() as usize - 1;
                let id = (k + 1) as u32;
                let positive = w > 0;
                if pos == i {
                    entries.push(CrossingEntry { id, over: positive, sign: if positive { 1 } else { -1 } });
                    pos = i + 1;
                } else if pos == i + 1 {
                    entries.push(CrossingEntry { id, over: !positive, sign: if positive { 1 } else { -1 } });
                    pos = i;
                }
            }
            if pos == start {
                break;
            }
        }
    }
    if components != 1 {
        return Err(Error::Data(format!(
            "braid closure has {components} components, expected a knot"
        )));
    }
    let _ = perm;
    GaussCode::new(entries)
}

// ── JSON form ─────────────────────────────────────────────────────────

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LevelJson {
    level: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    base: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    cells: Option<BTreeMap<String, i64>>,
}

/// Wire shape of an actuality table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableJson {
    order: usize,
    levels: Vec<LevelJson>,
}

impl ActualityTable {
    pub fn from_json(json: &TableJson) -> Result<Self> {
        let mut base = None;
        let mut levels = vec![BTreeMap::new(); json.order];
        for lj in &json.levels {
            if lj.level == 0 {
                base = lj.base;
            } else if lj.level <= json.order {
                levels[lj.level - 1] = lj.cells.clone().unwrap_or_default();
            } else {
                return Err(Error::Data(format!(
                    "level {} exceeds table order {}",
                    lj.level, json.order
                )));
            }
        }
        let base = base.ok_or_else(|| Error::Data("table has no level-0 base value".into()))?;
        ActualityTable::new(json.order, base, levels)
    }

    pub fn to_json(&self) -> TableJson {
        let mut levels = vec![LevelJson { level: 0, base: Some(self.base), cells: None }];
        for (j, cells) in self.levels.iter().enumerate() {
            levels.push(LevelJson { level: j + 1, base: None, cells: Some(cells.clone()) });
        }
        TableJson { order: self.order, levels }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn trefoil() -> GaussCode {
        GaussCode::parse("O1+ U2+ O3+ U1+ O2+ U3+").unwrap()
    }

    fn figure_eight() -> GaussCode {
        braid_closure(3, &[1, -2, 1, -2]).unwrap()
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(trefoil().crossing_count(), 3);
        assert_eq!(trefoil().to_string(), "O1+ U2+ O3+ U1+ O2+ U3+");
        assert!(GaussCode::parse("O1+ U2+").is_err());
        assert!(GaussCode::parse("O1+ O1+").is_err());
        assert!(GaussCode::parse("O1+ U1-").is_err());
        assert!(GaussCode::parse("").unwrap().entries().is_empty());
    }

    #[test]
    fn braid_trefoil_matches_spec_string() {
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(t.to_string(), "O1+ U2+ O3+ U1+ O2+ U3+");
    }

    #[test]
    fn singular_diagram_examples() {
        let t = trefoil();
        let d1 = singular_diagram(&t, &BTreeSet::from([1]));
        assert_eq!(d1.order(), 1);
        let d2 = singular_diagram(&t, &BTreeSet::from([1, 2]));
        assert_eq!(diagram_key(&d2), "0-2,1-3");
        let d0 = singular_diagram(&t, &BTreeSet::new());
        assert_eq!(d0.order(), 0);
    }

    #[test]
    fn descend_examples() {
        assert!(descend(&GaussCode::parse("").unwrap()).is_empty());
        let t = trefoil();
        let events = descend(&t);
        assert_eq!(events.len(), 1);
        assert_eq!(events[0], (2, -1)); // switching a positive crossing is a negative surgery
        let granny = t.connected_sum(&t);
        assert_eq!(descend(&granny).len(), 2);
        // switching the listed crossings leaves a descending code
        let mut state = granny.clone();
        for (id, _) in descend(&granny) {
            state = state.switch(id);
        }
        assert!(offending_crossings(&state, DescentStrategy::WalkOrder).is_empty());
    }

    #[test]
    fn conway_examples() {
        assert_eq!(conway_a2(&GaussCode::parse("").unwrap()), 0);
        assert_eq!(conway_a2(&trefoil()), 1);
        assert_eq!(conway_polynomial(&trefoil())[..4], [1, 0, 1, 0]);
        assert_eq!(conway_a2(&figure_eight()), -1);
        assert_eq!(conway_polynomial(&figure_eight())[..4], [1, 0, -1, 0]);
        assert_eq!(determinant(&trefoil()), 3);
        assert_eq!(determinant(&figure_eight()), 5);
    }

    #[test]
    fn conway_torus_values() {
        // T(2,2k+1) has a2 = k(k+1)/2
        assert_eq!(conway_a2(&braid_closure(2, &[1; 5]).unwrap()), 3);
        assert_eq!(conway_a2(&braid_closure(2, &[1; 7]).unwrap()), 6);
        // T(3,4) = closure of (s1 s2)^4
        let t34 = braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(conway_a2(&t34), 5);
    }

    #[test]
    fn conway_additive_under_connected_sum() {
        let t = trefoil();
        let granny = t.connected_sum(&t);
        assert_eq!(conway_a2(&granny), 2);
        let square = t.connected_sum(&t.mirror());
        assert_eq!(conway_a2(&square), 2);
    }

    #[test]
    fn evaluate_v2_examples() {
        let v2 = ActualityTable::v2();
        assert_eq!(evaluate(&v2, &GaussCode::parse("").unwrap()).unwrap(), 0);
        assert_eq!(evaluate(&v2, &trefoil()).unwrap(), 1);
        assert_eq!(evaluate(&v2, &figure_eight()).unwrap(), -1);
    }

    #[test]
    fn evaluate_agrees_with_oracle_on_braid_sample() {
        let v2 = ActualityTable::v2();
        let mut rng = StdRng::seed_from_u64(41);
        let mut checked = 0;
        while checked < 60 {
            let strands = rng.gen_range(2..=4usize);
            let len = rng.gen_range(1..=8usize);
            let word: Vec<i32> = (0..len)
                .map(|_| {
                    let i = rng.gen_range(1..strands as i32);
                    if rng.gen_bool(0.5) {
                        i
                    } else {
                        -i
                    }
                })
                .collect();
            let Ok(code) = braid_closure(strands, &word) else {
                continue;
            };
            assert_eq!(
                evaluate(&v2, &code).unwrap(),
                conway_a2(&code),
                "braid {word:?} on {strands} strands"
            );
            checked += 1;
        }
    }

    /// The first-order index formula must match the index computed from the
    /// oracle on both resolutions of a doubled crossing.
    #[test]
    fn level1_index_matches_oracle() {
        let v2 = ActualityTable::v2();
        let mut rng = StdRng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 40 {
            let strands = rng.gen_range(2..=4usize);
            let len = rng.gen_range(2..=7usize);
            let word: Vec<i32> = (0..len)
                .map(|_| {
                    let i = rng.gen_range(1..strands as i32);
                    if rng.gen_bool(0.5) {
                        i
                    } else {
                        -i
                    }
                })
                .collect();
            let Ok(code) = braid_closure(strands, &word) else {
                continue;
            };
            for id in code.crossing_ids() {
                let (plus, minus) = if code.sign_of(id) > 0 {
                    (code.clone(), code.switch(id))
                } else {
                    (code.switch(id), code.clone())
                };
                let expected = conway_a2(&plus) - conway_a2(&minus);
                let got = level1_index(&v2, &code, id).unwrap();
                assert_eq!(got, expected, "word {word:?}, crossing {id}");
            }
            checked += 1;
        }
    }

    #[test]
    fn path_independence_and_rotation() {
        let v2 = ActualityTable::v2();
        let t34 = braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        for code in [trefoil(), figure_eight(), t34] {
            let reference = evaluate(&v2, &code).unwrap();
            for strategy in [
                DescentStrategy::WalkOrder,
                DescentStrategy::ReverseWalk,
                DescentStrategy::ById,
            ] {
                assert_eq!(evaluate_with_strategy(&v2, &code, strategy).unwrap(), reference);
            }
            for k in 0..code.entries().len() {
                assert_eq!(
                    evaluate(&v2, &code.rotate_basepoint(k)).unwrap(),
                    reference,
                    "basepoint {k}"
                );
            }
            assert_eq!(evaluate(&v2, &code.mirror()).unwrap(), reference);
        }
    }

    #[test]
    fn table_json_round_trip_and_validation() {
        let v2 = ActualityTable::v2();
        let json = serde_json::to_string(&v2.to_json()).unwrap();
        let parsed: TableJson = serde_json::from_str(&json).unwrap();
        assert_eq!(ActualityTable::from_json(&parsed).unwrap(), v2);

        // violating the trivial condition is rejected
        let bad = r#"{"order":2,"levels":[{"level":0,"base":0},{"level":1,"cells":{"0-1":0}},{"level":2,"cells":{"0-2,1-3":1,"0-1,2-3":7}}]}"#;
        let parsed: TableJson = serde_json::from_str(bad).unwrap();
        assert!(ActualityTable::from_json(&parsed).is_err());
    }

    #[test]
    fn missing_cell_is_structured() {
        let single = ChordDiagram::new(1, vec![(0, 1)]).unwrap();
        let level1 = BTreeMap::from([(diagram_key(&single), 0)]);
        let cross = ChordDiagram::new(2, vec![(0, 2), (1, 3)]).unwrap();
        let noncross = ChordDiagram::new(2, vec![(0, 1), (2, 3)]).unwrap();
        // level-2 table missing the crossing cell
        let level2 = BTreeMap::from([(diagram_key(&noncross), 0)]);
        let table = ActualityTable::new(2, 0, vec![level1, level2]).unwrap();
        match evaluate(&table, &trefoil()) {
            Err(Error::MissingCell { level: 2, key }) => assert_eq!(key, "0-2,1-3"),
            other => panic!("expected a missing-cell error, got {other:?}"),
        }
    }

    #[test]
    fn higher_order_tables_rejected() {
        let table = ActualityTable::new(
            3,
            0,
            vec![BTreeMap::new(), BTreeMap::new(), BTreeMap::new()],
        );
        // construction is fine; evaluation reports the limitation
        let table = table.unwrap();
        assert!(matches!(evaluate(&table, &trefoil()), Err(Error::Usage(_))));
    }
}
