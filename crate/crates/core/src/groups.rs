//! Word algebra for the supported class of fundamental groups: the trivial
//! group, free groups, and free products of cyclic groups. Elements are kept
//! in syllable normal form, with finite-factor exponents reduced to the
//! balanced range so that syllable data doubles as geodesic spelling.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Order of one cyclic factor of a free product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CyclicOrder {
    Finite(u32),
    Infinite,
}

/// Which class of group a [`GroupSpec`] describes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Trivial,
    Free { rank: usize },
    FreeProduct { orders: Vec<CyclicOrder> },
}

/// A finitely presented group of the supported class, together with
/// generator names and the orientation character w1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    kind: GroupKind,
    generator_names: Vec<String>,
    w1: Vec<u8>,
}

/// One syllable of a normal-form word: a generator with a nonzero exponent.
///
/// For generators of finite order k the exponent lives in the balanced range
/// (-k/2, k/2]; for infinite-order generators it is any nonzero integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A group element in syllable normal form. The identity is the empty word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    syllables: Vec<Syllable>,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, generator_names: Vec<String>, w1: Vec<u8>) -> Result<Self> {
        let expected = match &kind {
            GroupKind::Trivial => 0,
            GroupKind::Free { rank } => *rank,
            GroupKind::FreeProduct { orders } => {
                for o in orders {
                    if let CyclicOrder::Finite(k) = o {
                        if *k < 2 {
                            return Err(Error::Data(format!("cyclic factor order {k} < 2")));
                        }
                    }
                }
                orders.len()
            }
        };
        if generator_names.len() != expected {
            return Err(Error::Data(format!(
                "expected {expected} generator names, got {}",
                generator_names.len()
            )));
        }
        let names: BTreeSet<&str> = generator_names.iter().map(|s| s.as_str()).collect();
        if names.len() != generator_names.len() {
            return Err(Error::Data("generator names must be distinct".into()));
        }
        if w1.len() != expected {
            return Err(Error::Data(format!(
                "w1 must assign a value to each of the {expected} generators"
            )));
        }
        for (g, &v) in w1.iter().enumerate() {
            if v > 1 {
                return Err(Error::Data("w1 values must be 0 or 1".into()));
            }
            if v == 1 {
                if let CyclicOrder::Finite(k) = kind_order(&kind, g) {
                    if k % 2 == 1 {
                        return Err(Error::Data(format!(
                            "w1 cannot be 1 on a generator of odd order {k}"
                        )));
                    }
                }
            }
        }
        Ok(GroupSpec { kind, generator_names, w1 })
    }

    pub fn trivial() -> Self {
        GroupSpec::new(GroupKind::Trivial, vec![], vec![]).unwrap()
    }

    /// Free group of the given rank with default generator names a, b, c, ...
    pub fn free(rank: usize) -> Self {
        let names = default_names(rank);
        GroupSpec::new(GroupKind::Free { rank }, names, vec![0; rank]).unwrap()
    }

    pub fn free_named(names: &[&str]) -> Self {
        let rank = names.len();
        GroupSpec::new(
            GroupKind::Free { rank },
            names.iter().map(|s| s.to_string()).collect(),
            vec![0; rank],
        )
        .unwrap()
    }

    pub fn free_product(orders: Vec<CyclicOrder>, names: &[&str], w1: Vec<u8>) -> Result<Self> {
        GroupSpec::new(
            GroupKind::FreeProduct { orders },
            names.iter().map(|s| s.to_string()).collect(),
            w1,
        )
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn gen_order(&self, g: usize) -> CyclicOrder {
        kind_order(&self.kind, g)
    }

    /// True when the whole group is finite (trivial, or a single finite
    /// cyclic factor); enumeration is then exact rather than L-truncated.
    pub fn is_finite_group(&self) -> bool {
        match &self.kind {
            GroupKind::Trivial => true,
            GroupKind::Free { rank } => *rank == 0,
            GroupKind::FreeProduct { orders } => match orders.as_slice() {
                [] => true,
                [CyclicOrder::Finite(_)] => true,
                _ => false,
            },
        }
    }

    /// Maximal geodesic length of any element, when the group is finite.
    pub fn max_element_len(&self) -> Option<usize> {
        if !self.is_finite_group() {
            return None;
        }
        match &self.kind {
            GroupKind::FreeProduct { orders } => match orders.as_slice() {
                [CyclicOrder::Finite(k)] => Some((*k / 2) as usize),
                _ => Some(0),
            },
            _ => Some(0),
        }
    }

    pub fn w1_is_zero(&self) -> bool {
        self.w1.iter().all(|&v| v == 0)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::default()
    }

    pub fn generator(&self, g: usize) -> GroupElement {
        assert!(g < self.generator_count());
        let mut e = GroupElement::default();
        self.push_syllable(&mut e, g, 1);
        e
    }

    fn normalize_exp(&self, g: usize, exp: i64) -> i64 {
        match self.gen_order(g) {
            CyclicOrder::Infinite => exp,
            CyclicOrder::Finite(k) => {
                let k = k as i64;
                let mut e = exp.rem_euclid(k);
                if 2 * e > k {
                    e -= k;
                }
                e
            }
        }
    }

    fn push_syllable(&self, word: &mut GroupElement, g: usize, exp: i64) {
        debug_assert!(g < self.generator_count());
        if let Some(last) = word.syllables.last_mut() {
            if last.gen == g {
                let combined = self.normalize_exp(g, last.exp + exp);
                if combined == 0 {
                    word.syllables.pop();
                } else {
                    last.exp = combined;
                }
                return;
            }
        }
        let e = self.normalize_exp(g, exp);
        if e != 0 {
            word.syllables.push(Syllable { gen: g, exp: e });
        }
    }

    /// Product in normal form.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut out = a.clone();
        for s in &b.syllables {
            self.push_syllable(&mut out, s.gen, s.exp);
        }
        out
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let mut out = GroupElement::default();
        for s in a.syllables.iter().rev() {
            self.push_syllable(&mut out, s.gen, -s.exp);
        }
        out
    }

    /// g^-1 a g.
    pub fn conjugate(&self, a: &GroupElement, g: &GroupElement) -> GroupElement {
        self.multiply(&self.multiply(&self.inverse(g), a), g)
    }

    pub fn power(&self, a: &GroupElement, n: i64) -> GroupElement {
        let base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut out = GroupElement::default();
        for _ in 0..n.unsigned_abs() {
            out = self.multiply(&out, &base);
        }
        out
    }

    pub fn is_trivial(&self, a: &GroupElement) -> bool {
        a.syllables.is_empty()
    }

    /// Value of the orientation character on a.
    pub fn w1_value(&self, a: &GroupElement) -> u8 {
        let mut v: i64 = 0;
        for s in &a.syllables {
            v += s.exp.unsigned_abs() as i64 * self.w1[s.gen] as i64;
        }
        (v % 2) as u8
    }

    /// Canonical representative of the conjugacy class of `a`: cyclically
    /// reduced, then the lexicographically minimal letter rotation.
    pub fn conj_canonical(&self, a: &GroupElement) -> GroupElement {
        self.conj_canonical_with_conjugator(a).0
    }

    /// As [`GroupSpec::conj_canonical`], also returning u with
    /// canonical = u^-1 a u.
    pub fn conj_canonical_with_conjugator(&self, a: &GroupElement) -> (GroupElement, GroupElement) {
        let mut w = a.clone();
        let mut u = GroupElement::default();
        // cyclic reduction
        while w.syllables.len() >= 2 && w.syllables[0].gen == w.syllables.last().unwrap().gen {
            let s = GroupElement { syllables: vec![w.syllables[0]] };
            w = self.conjugate(&w, &s);
            u = self.multiply(&u, &s);
        }
        if w.syllables.is_empty() {
            return (w, GroupElement::default());
        }
        // minimal letter rotation
        let letters = self.letters(&w);
        let n = letters.len();
        let mut best_rot: Vec<(usize, i8)> = letters.clone();
        let mut best_r = 0usize;
        for r in 1..n {
            let cand: Vec<(usize, i8)> = letters[r..].iter().chain(&letters[..r]).copied().collect();
            if letters_lex(&cand, &best_rot) == Ordering::Less {
                best_rot = cand;
                best_r = r;
            }
        }
        let prefix = self.from_letters(&letters[..best_r]);
        let canon = self.from_letters(&best_rot);
        (canon, self.multiply(&u, &prefix))
    }

    /// Canonical representative of the orbit of a tuple under simultaneous
    /// conjugation. Conjugates so the first nontrivial entry is in
    /// conj_canonical form, then minimizes the tuple over the residual
    /// stabilizer (the centralizer of that entry).
    pub fn simultaneous_conj_canonical(&self, tuple: &[GroupElement]) -> Vec<GroupElement> {
        let Some(p) = tuple.iter().position(|t| !self.is_trivial(t)) else {
            return tuple.to_vec();
        };
        let (w, u) = self.conj_canonical_with_conjugator(&tuple[p]);
        let base: Vec<GroupElement> = tuple.iter().map(|t| self.conjugate(t, &u)).collect();
        let (z, ord) = self.centralizer_data(&w).expect("entry is nontrivial");
        let mut best = base.clone();
        let apply = |j: i64, best: &mut Vec<GroupElement>| {
            let zj = self.power(&z, j);
            let cand: Vec<GroupElement> = base.iter().map(|t| self.conjugate(t, &zj)).collect();
            if tuple_cmp(self, &cand, best) == Ordering::Less {
                *best = cand;
            }
        };
        match ord {
            CyclicOrder::Finite(k) => {
                for j in 1..k as i64 {
                    apply(j, &mut best);
                }
            }
            CyclicOrder::Infinite => {
                // All candidate minima lie within |j| <= total letter length;
                // beyond that every non-commuting entry strictly grows.
                let bound = base.iter().map(|t| self.letter_len(t)).sum::<usize>() as i64 + 4;
                for j in 1..=bound {
                    apply(j, &mut best);
                    apply(-j, &mut best);
                }
            }
        }
        best
    }

    /// Generating set of the centralizer of a nontrivial element.
    pub fn centralizer_generators(&self, a: &GroupElement) -> Result<Vec<GroupElement>> {
        let (z, _) = self.centralizer_data(a)?;
        Ok(vec![z])
    }

    /// Centralizer generator together with its order as a subgroup element.
    pub fn centralizer_data(&self, a: &GroupElement) -> Result<(GroupElement, CyclicOrder)> {
        if self.is_trivial(a) {
            return Err(Error::Usage(
                "centralizer of the identity is the whole group".into(),
            ));
        }
        let (w, u) = self.conj_canonical_with_conjugator(a);
        // w = u^-1 a u, so a = u w u^-1 and Z(a) = u Z(w) u^-1.
        let v = self.inverse(&u);
        let wrap = |z: &GroupElement| self.multiply(&self.multiply(&u, z), &v);
        if w.syllables.len() == 1 {
            let s = w.syllables[0];
            let g = GroupElement { syllables: vec![Syllable { gen: s.gen, exp: 1 }] };
            return Ok((wrap(&g), self.gen_order(s.gen)));
        }
        let root = self.primitive_root(&w);
        Ok((wrap(&root), CyclicOrder::Infinite))
    }

    /// Primitive root of a cyclically reduced multi-syllable word.
    fn primitive_root(&self, w: &GroupElement) -> GroupElement {
        let s = w.syllables.len();
        for m in (2..=s).rev() {
            if s % m != 0 {
                continue;
            }
            let period = s / m;
            let root = &w.syllables[..period];
            if (0..s).all(|i| w.syllables[i] == root[i % period]) {
                return GroupElement { syllables: root.to_vec() };
            }
        }
        w.clone()
    }

    /// Geodesic letter expansion of a normal-form word.
    pub fn letters(&self, a: &GroupElement) -> Vec<(usize, i8)> {
        let mut out = Vec::new();
        for s in &a.syllables {
            let sign: i8 = if s.exp < 0 { -1 } else { 1 };
            for _ in 0..s.exp.unsigned_abs() {
                out.push((s.gen, sign));
            }
        }
        out
    }

    fn from_letters(&self, letters: &[(usize, i8)]) -> GroupElement {
        let mut out = GroupElement::default();
        for &(g, sign) in letters {
            self.push_syllable(&mut out, g, sign as i64);
        }
        out
    }

    /// Geodesic word length.
    pub fn letter_len(&self, a: &GroupElement) -> usize {
        a.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    /// Total order on elements: by geodesic length, then lexicographically
    /// on letters with declaration order and generator-before-inverse.
    pub fn word_cmp(&self, a: &GroupElement, b: &GroupElement) -> Ordering {
        let (la, lb) = (self.letter_len(a), self.letter_len(b));
        la.cmp(&lb).then_with(|| letters_lex(&self.letters(a), &self.letters(b)))
    }

    /// All elements of geodesic length at most `max_len`, sorted.
    pub fn enumerate_elements(&self, max_len: usize) -> Vec<GroupElement> {
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(GroupElement::default());
        let mut frontier: Vec<GroupElement> = vec![GroupElement::default()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.generator_count() {
                    for sign in [1i64, -1] {
                        let mut cand = w.clone();
                        self.push_syllable(&mut cand, g, sign);
                        if self.letter_len(&cand) <= max_len && seen.insert(cand.clone()) {
                            next.push(cand);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<GroupElement> = seen.into_iter().collect();
        out.sort_by(|a, b| self.word_cmp(a, b));
        out
    }

    /// Parse exponent notation, e.g. "x y^-1 x^2". The empty string is the
    /// identity.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let mut out = GroupElement::default();
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| Error::Data(format!("bad exponent in token '{tok}'")))?;
                    (n, exp)
                }
                None => (tok, 1),
            };
            let g = self
                .generator_names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Data(format!("unknown generator '{name}'")))?;
            self.push_syllable(&mut out, g, exp);
        }
        Ok(out)
    }

    pub fn format_element(&self, a: &GroupElement) -> String {
        let mut s = String::new();
        for (i, syl) in a.syllables.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            if syl.exp == 1 {
                let _ = write!(s, "{}", self.generator_names[syl.gen]);
            } else {
                let _ = write!(s, "{}^{}", self.generator_names[syl.gen], syl.exp);
            }
        }
        s
    }

    /// Exponent-sum vector of `a` on the infinite-order generators, plus a
    /// flag recording whether any finite-order generator occurs.
    pub fn abelianized(&self, a: &GroupElement) -> (Vec<i64>, bool) {
        let infinite: Vec<usize> = (0..self.generator_count())
            .filter(|&g| self.gen_order(g) == CyclicOrder::Infinite)
            .collect();
        let mut v = vec![0i64; infinite.len()];
        let mut torsion = false;
        for s in &a.syllables {
            match infinite.iter().position(|&g| g == s.gen) {
                Some(idx) => v[idx] += s.exp,
                None => {
                    if self.normalize_exp(s.gen, s.exp) != 0 {
                        torsion = true;
                    }
                }
            }
        }
        (v, torsion)
    }
}

impl GroupElement {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }
}

fn kind_order(kind: &GroupKind, g: usize) -> CyclicOrder {
    match kind {
        GroupKind::Trivial => unreachable!("trivial group has no generators"),
        GroupKind::Free { .. } => CyclicOrder::Infinite,
        GroupKind::FreeProduct { orders } => orders[g],
    }
}

fn default_names(rank: usize) -> Vec<String> {
    (0..rank)
        .map(|i| {
            if rank <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

/// Letter order: declaration order, generator before its inverse.
fn letter_key(l: (usize, i8)) -> (usize, bool) {
    (l.0, l.1 < 0)
}

fn letters_lex(a: &[(usize, i8)], b: &[(usize, i8)]) -> Ordering {
    a.iter()
        .map(|&l| letter_key(l))
        .cmp(b.iter().map(|&l| letter_key(l)))
}

/// Tuple order used by simultaneous conjugacy minimization: total geodesic
/// length first, then entrywise word order.
pub fn tuple_cmp(spec: &GroupSpec, a: &[GroupElement], b: &[GroupElement]) -> Ordering {
    let la: usize = a.iter().map(|t| spec.letter_len(t)).sum();
    let lb: usize = b.iter().map(|t| spec.letter_len(t)).sum();
    la.cmp(&lb).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            match spec.word_cmp(x, y) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    })
}

// ── JSON form ─────────────────────────────────────────────────────────

#[derive(Serialize, Deserialize)]
struct GroupSpecJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    /// Cyclic factor orders; 0 encodes an infinite factor.
    #[serde(skip_serializing_if = "Option::is_none")]
    orders: Option<Vec<u32>>,
    generators: Vec<String>,
    w1: Vec<u8>,
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match &self.kind {
            GroupKind::Trivial => GroupSpecJson {
                kind: "trivial".into(),
                rank: None,
                orders: None,
                generators: vec![],
                w1: vec![],
            },
            GroupKind::Free { rank } => GroupSpecJson {
                kind: "free".into(),
                rank: Some(*rank),
                orders: None,
                generators: self.generator_names.clone(),
                w1: self.w1.clone(),
            },
            GroupKind::FreeProduct { orders } => GroupSpecJson {
                kind: "free_product".into(),
                rank: None,
                orders: Some(
                    orders
                        .iter()
                        .map(|o| match o {
                            CyclicOrder::Finite(k) => *k,
                            CyclicOrder::Infinite => 0,
                        })
                        .collect(),
                ),
                generators: self.generator_names.clone(),
                w1: self.w1.clone(),
            },
        };
        json.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let json = GroupSpecJson::deserialize(de)?;
        let kind = match json.kind.as_str() {
            "trivial" => GroupKind::Trivial,
            "free" => GroupKind::Free {
                rank: json.rank.unwrap_or(json.generators.len()),
            },
            "free_product" => GroupKind::FreeProduct {
                orders: json
                    .orders
                    .unwrap_or_default()
                    .iter()
                    .map(|&k| {
                        if k == 0 {
                            CyclicOrder::Infinite
                        } else {
                            CyclicOrder::Finite(k)
                        }
                    })
                    .collect(),
            },
            other => {
                return Err(serde::de::Error::custom(format!("unknown group kind '{other}'")))
            }
        };
        GroupSpec::new(kind, json.generators, json.w1).map_err(serde::de::Error::custom)
    }
}
