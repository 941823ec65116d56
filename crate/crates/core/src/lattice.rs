//! Finite bounded lattices viewed as skeletal categories.
//!
//! A morphism `x -> y` exists iff `x <= y`, and there is at most one. Every
//! comparable pair (identities included) gets a canonical index, ordered
//! lexicographically by `(source, target)` object index; map classes are
//! bitsets over these indices.

use std::fmt;

use thiserror::Error;

use crate::class::{MapClass, ObjectSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("order violation: {a} <= {b} and {b} <= {a} for distinct objects")]
    OrderViolation { a: String, b: String },
    #[error("{a} and {b} have no meet")]
    MissingMeet { a: String, b: String },
    #[error("{a} and {b} have no join")]
    MissingJoin { a: String, b: String },
    #[error("lattice has no objects")]
    Empty,
    #[error("duplicate object label {0}")]
    DuplicateLabel(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("{source_label} <= {target} does not hold, so there is no such map")]
    NotAMap { source_label: String, target: String },
    #[error("malformed map literal {0:?}")]
    BadMapLiteral(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A morphism `source -> target` of a lattice, by object index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeMap {
    pub source: usize,
    pub target: usize,
}

impl LatticeMap {
    pub fn new(source: usize, target: usize) -> Self {
        Self { source, target }
    }

    pub fn identity(object: usize) -> Self {
        Self::new(object, object)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// The same arrow read in the order-dual lattice.
    pub fn opposite(&self) -> Self {
        Self::new(self.target, self.source)
    }
}

const NO_MAP: u32 = u32::MAX;

pub struct FiniteLattice {
    name: String,
    labels: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    maps: Vec<LatticeMap>,
    map_ids: Vec<u32>,
    identities: MapClass,
    /// `lifts_right[l]` = maps `r` with `has_lift(l, r)`.
    lifts_right: Vec<MapClass>,
    /// `lifts_left[r]` = maps `l` with `has_lift(l, r)`.
    lifts_left: Vec<MapClass>,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("name", &self.name)
            .field("objects", &self.labels)
            .field("maps", &self.maps.len())
            .finish()
    }
}

/// Lattices are equal when they have the same labels in the same order and
/// the same order relation; the name is ignored.
impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds a lattice from generating relations `(a, b)` meaning `a <= b`.
    /// The order is their reflexive-transitive closure.
    pub fn from_relations(
        name: impl Into<String>,
        labels: Vec<String>,
        relations: &[(usize, usize)],
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in relations {
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        Self::from_order(name, labels, leq)
    }

    /// Builds a lattice from a full `n * n` row-major order matrix.
    pub fn from_order(name: impl Into<String>, labels: Vec<String>, leq: Vec<bool>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        assert_eq!(leq.len(), n * n, "order matrix has wrong size");
        for i in 0..n {
            if labels[..i].contains(&labels[i]) {
                return Err(LatticeError::DuplicateLabel(labels[i].clone()));
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            assert!(le(a, a), "order matrix is not reflexive");
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(LatticeError::OrderViolation {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                    });
                }
                for c in 0..n {
                    assert!(!(le(a, b) && le(b, c)) || le(a, c), "order matrix is not transitive");
                }
            }
        }

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&m| le(m, a) && le(m, b)).collect();
                meet[a * n + b] = lower
                    .iter()
                    .copied()
                    .find(|&m| lower.iter().all(|&x| le(x, m)))
                    .ok_or_else(|| LatticeError::MissingMeet {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                    })?;
                let upper: Vec<usize> = (0..n).filter(|&m| le(a, m) && le(b, m)).collect();
                join[a * n + b] = upper
                    .iter()
                    .copied()
                    .find(|&m| upper.iter().all(|&x| le(m, x)))
                    .ok_or_else(|| LatticeError::MissingJoin {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                    })?;
            }
        }
        let bottom = (1..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (1..n).fold(0, |acc, x| join[acc * n + x]);

        let mut maps = Vec::new();
        let mut map_ids = vec![NO_MAP; n * n];
        for a in 0..n {
            for b in 0..n {
                if le(a, b) {
                    map_ids[a * n + b] = maps.len() as u32;
                    maps.push(LatticeMap::new(a, b));
                }
            }
        }
        let m = maps.len();
        let identities = MapClass::from_indices(m, (0..n).map(|x| map_ids[x * n + x] as usize));

        let mut lifts_right = vec![MapClass::empty(m); m];
        let mut lifts_left = vec![MapClass::empty(m); m];
        for (li, l) in maps.iter().enumerate() {
            for (ri, r) in maps.iter().enumerate() {
                let square = le(l.source, r.source) && le(l.target, r.target);
                if !square || le(l.target, r.source) {
                    lifts_right[li].insert(ri);
                    lifts_left[ri].insert(li);
                }
            }
        }

        Ok(Self {
            name: name.into(),
            labels,
            leq,
            meet,
            join,
            bottom,
            top,
            maps,
            map_ids,
            identities,
            lifts_right,
            lifts_left,
        })
    }

    /// Parses the line-oriented lattice format:
    ///
    /// ```text
    /// # comment
    /// objects: bot a b top
    /// le: bot<=a, bot<=b
    /// le: a<=top, b<=top
    /// ```
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self, LatticeError> {
        let mut labels: Option<Vec<String>> = None;
        let mut pending: Vec<(usize, String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content.split_once(':').ok_or_else(|| LatticeError::Parse {
                line,
                message: format!("expected `objects:` or `le:`, found {content:?}"),
            })?;
            match key.trim() {
                "objects" => {
                    if labels.is_some() {
                        return Err(LatticeError::Parse {
                            line,
                            message: "`objects:` given twice".into(),
                        });
                    }
                    labels = Some(rest.split_whitespace().map(str::to_owned).collect());
                }
                "le" => {
                    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        let (a, b) = item.split_once("<=").ok_or_else(|| LatticeError::Parse {
                            line,
                            message: format!("expected `a<=b`, found {item:?}"),
                        })?;
                        pending.push((line, a.trim().to_owned(), b.trim().to_owned()));
                    }
                }
                other => {
                    return Err(LatticeError::Parse {
                        line,
                        message: format!("unknown key {other:?}"),
                    })
                }
            }
        }
        let labels = labels.ok_or(LatticeError::Parse {
            line: 0,
            message: "missing `objects:` line".into(),
        })?;
        let lookup = |line: usize, l: &str| {
            labels.iter().position(|x| x == l).ok_or_else(|| LatticeError::Parse {
                line,
                message: format!("unknown object {l:?}"),
            })
        };
        let mut relations = Vec::with_capacity(pending.len());
        for (line, a, b) in &pending {
            relations.push((lookup(*line, a)?, lookup(*line, b)?));
        }
        Self::from_relations(name, labels, &relations)
    }

    /// Serialises to the text format accepted by [`FiniteLattice::parse`],
    /// listing the covering relations.
    pub fn to_text(&self) -> String {
        let mut out = format!("objects: {}\n", self.labels.join(" "));
        let covers: Vec<String> = self.covers().into_iter().map(|m| self.format_map(m)).collect();
        if !covers.is_empty() {
            out.push_str(&format!("le: {}\n", covers.join(", ")));
        }
        out
    }

    /// Covering pairs `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<LatticeMap> {
        self.maps
            .iter()
            .copied()
            .filter(|m| {
                !m.is_identity()
                    && !(0..self.len())
                        .any(|z| z != m.source && z != m.target && self.leq(m.source, z) && self.leq(z, m.target))
            })
            .collect()
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(name: impl Into<String>, n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(name, labels, &rel).expect("chains are lattices")
    }

    /// The order-dual lattice, with the same labels and object indices.
    pub fn dual(&self) -> Self {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq(b, a);
            }
        }
        Self::from_order(format!("{}^op", self.name), self.labels.clone(), leq)
            .expect("the dual of a lattice is a lattice")
    }

    /// Cartesian product with componentwise order. Object `(i, j)` has index
    /// `i * other.len() + j`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, k) = (self.len(), other.len());
        let labels = (0..n * k)
            .map(|p| format!("({},{})", self.labels[p / k], other.labels[p % k]))
            .collect();
        let mut leq = vec![false; n * k * n * k];
        for p in 0..n * k {
            for q in 0..n * k {
                leq[p * n * k + q] = self.leq(p / k, q / k) && other.leq(p % k, q % k);
            }
        }
        Self::from_order(format!("{}x{}", self.name, other.name), labels, leq)
            .expect("products of lattices are lattices")
    }

    /// The full subposet on `subset`, if it is itself a lattice. Returns it
    /// with the embedding (sub index -> ambient index).
    pub fn induced(&self, name: impl Into<String>, subset: &ObjectSet) -> Result<(Self, Vec<usize>), LatticeError> {
        let embedding: Vec<usize> = subset.iter().collect();
        let k = embedding.len();
        let mut leq = vec![false; k * k];
        for (i, &a) in embedding.iter().enumerate() {
            for (j, &b) in embedding.iter().enumerate() {
                leq[i * k + j] = self.leq(a, b);
            }
        }
        let labels = embedding.iter().map(|&a| self.labels[a].clone()).collect();
        Ok((Self::from_order(name, labels, leq)?, embedding))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        Self::from_order(name, self.labels.clone(), self.leq.clone()).expect("already validated")
    }

    /// Number of objects.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, object: usize) -> &str {
        &self.labels[object]
    }

    pub fn object(&self, label: &str) -> Result<usize, LatticeError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| LatticeError::UnknownObject(label.to_owned()))
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// All maps in canonical order.
    pub fn maps(&self) -> &[LatticeMap] {
        &self.maps
    }

    pub fn map_count(&self) -> usize {
        self.maps.len()
    }

    pub fn non_identity_map_count(&self) -> usize {
        self.maps.len() - self.len()
    }

    #[inline]
    pub fn map_at(&self, index: usize) -> LatticeMap {
        self.maps[index]
    }

    /// The map `a -> b`, if `a <= b`.
    pub fn map(&self, a: usize, b: usize) -> Option<LatticeMap> {
        self.leq(a, b).then(|| LatticeMap::new(a, b))
    }

    pub fn try_map_index(&self, a: usize, b: usize) -> Option<usize> {
        let id = self.map_ids[a * self.len() + b];
        (id != NO_MAP).then_some(id as usize)
    }

    /// Index of a map. Panics if the endpoints are not comparable.
    #[inline]
    pub fn map_index(&self, m: LatticeMap) -> usize {
        let id = self.map_ids[m.source * self.len() + m.target];
        assert!(id != NO_MAP, "{} is not a map", self.format_map(m));
        id as usize
    }

    pub fn contains(&self, class: &MapClass, m: LatticeMap) -> bool {
        self.try_map_index(m.source, m.target)
            .is_some_and(|i| class.contains(i))
    }

    pub fn all_maps(&self) -> MapClass {
        MapClass::full(self.map_count())
    }

    pub fn identities(&self) -> MapClass {
        self.identities.clone()
    }

    pub fn no_maps(&self) -> MapClass {
        MapClass::empty(self.map_count())
    }

    pub fn all_objects(&self) -> ObjectSet {
        ObjectSet::full(self.len())
    }

    pub fn no_objects(&self) -> ObjectSet {
        ObjectSet::empty(self.len())
    }

    pub fn class_from_maps(&self, maps: impl IntoIterator<Item = LatticeMap>) -> MapClass {
        MapClass::from_indices(self.map_count(), maps.into_iter().map(|m| self.map_index(m)))
    }

    pub fn class_where(&self, mut pred: impl FnMut(LatticeMap) -> bool) -> MapClass {
        MapClass::from_indices(
            self.map_count(),
            self.maps.iter().enumerate().filter(|(_, m)| pred(**m)).map(|(i, _)| i),
        )
    }

    pub fn objects_where(&self, mut pred: impl FnMut(usize) -> bool) -> ObjectSet {
        ObjectSet::from_indices(self.len(), self.objects().filter(|&x| pred(x)))
    }

    pub fn members(&self, class: &MapClass) -> Vec<LatticeMap> {
        class.iter().map(|i| self.maps[i]).collect()
    }

    /// Whether `l` has the left lifting property against `r`: every commuting
    /// square `l.source <= r.source`, `l.target <= r.target` has a diagonal
    /// `l.target <= r.source`. Diagonals in a poset are unique when they exist.
    pub fn has_lift(&self, l: LatticeMap, r: LatticeMap) -> bool {
        let square = self.leq(l.source, r.source) && self.leq(l.target, r.target);
        !square || self.leq(l.target, r.source)
    }

    /// Maps lifting on the left against every member of `k`.
    pub fn llp(&self, k: &MapClass) -> MapClass {
        let mut out = self.all_maps();
        for r in k {
            out.intersect_with(&self.lifts_left[r]);
        }
        out
    }

    /// Maps lifting on the right against every member of `k`.
    pub fn rlp(&self, k: &MapClass) -> MapClass {
        let mut out = self.all_maps();
        for l in k {
            out.intersect_with(&self.lifts_right[l]);
        }
        out
    }

    /// `lifts_right(l)` = `{ r : has_lift(l, r) }`.
    pub fn lifts_right(&self, l: usize) -> &MapClass {
        &self.lifts_right[l]
    }

    /// `lifts_left(r)` = `{ l : has_lift(l, r) }`.
    pub fn lifts_left(&self, r: usize) -> &MapClass {
        &self.lifts_left[r]
    }

    /// `g . f` for `f: a -> b`, `g: b -> c`.
    pub fn compose(&self, f: LatticeMap, g: LatticeMap) -> Result<LatticeMap, LatticeError> {
        if f.target != g.source {
            return Err(LatticeError::Precondition(format!(
                "{} and {} are not composable",
                self.format_map(f),
                self.format_map(g)
            )));
        }
        Ok(LatticeMap::new(f.source, g.target))
    }

    /// Pushout of `w: x -> y` along `c: x -> z`: the map `z -> y v z`.
    pub fn pushout(&self, w: LatticeMap, c: LatticeMap) -> Result<LatticeMap, LatticeError> {
        if w.source != c.source {
            return Err(LatticeError::Precondition(format!(
                "pushout needs a common source, got {} and {}",
                self.format_map(w),
                self.format_map(c)
            )));
        }
        Ok(LatticeMap::new(c.target, self.join(w.target, c.target)))
    }

    /// Pullback of `w: y -> x` along `c: z -> x`: the map `y ^ z -> z`.
    pub fn pullback(&self, w: LatticeMap, c: LatticeMap) -> Result<LatticeMap, LatticeError> {
        if w.target != c.target {
            return Err(LatticeError::Precondition(format!(
                "pullback needs a common target, got {} and {}",
                self.format_map(w),
                self.format_map(c)
            )));
        }
        Ok(LatticeMap::new(self.meet(w.source, c.source), c.source))
    }

    pub fn format_map(&self, m: LatticeMap) -> String {
        format!("{}<={}", self.labels[m.source], self.labels[m.target])
    }

    pub fn format_class(&self, class: &MapClass) -> Vec<String> {
        class.iter().map(|i| self.format_map(self.maps[i])).collect()
    }

    pub fn format_objects(&self, set: &ObjectSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }

    /// Parses `"a<=b"`.
    pub fn parse_map(&self, literal: &str) -> Result<LatticeMap, LatticeError> {
        let (a, b) = literal
            .split_once("<=")
            .ok_or_else(|| LatticeError::BadMapLiteral(literal.to_owned()))?;
        self.map_between(a.trim(), b.trim())
    }

    pub fn map_between(&self, a: &str, b: &str) -> Result<LatticeMap, LatticeError> {
        let (s, t) = (self.object(a)?, self.object(b)?);
        self.map(s, t).ok_or_else(|| LatticeError::NotAMap {
            source_label: a.to_owned(),
            target: b.to_owned(),
        })
    }

    /// Parses a comma-separated list of map literals.
    pub fn parse_map_list(&self, csv: &str) -> Result<MapClass, LatticeError> {
        let mut class = self.no_maps();
        for item in csv.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            class.insert(self.map_index(self.parse_map(item)?));
        }
        Ok(class)
    }

    /// Parses a comma-separated list of object labels.
    pub fn parse_object_list(&self, csv: &str) -> Result<ObjectSet, LatticeError> {
        let mut set = self.no_objects();
        for item in csv.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            set.insert(self.object(item)?);
        }
        Ok(set)
    }

    /// Reindexes a class of `self` onto its order dual `dual` (same object
    /// indices, reversed order).
    pub fn dualize_class(&self, class: &MapClass, dual: &FiniteLattice) -> MapClass {
        dual.class_from_maps(class.iter().map(|i| self.maps[i].opposite()))
    }

    /// Least member of `set` above `x`, if one exists.
    pub fn least_above(&self, set: &ObjectSet, x: usize) -> Option<usize> {
        let above: Vec<usize> = set.iter().filter(|&b| self.leq(x, b)).collect();
        above.iter().copied().find(|&m| above.iter().all(|&b| self.leq(m, b)))
    }

    /// Greatest member of `set` below `x`, if one exists.
    pub fn greatest_below(&self, set: &ObjectSet, x: usize) -> Option<usize> {
        let below: Vec<usize> = set.iter().filter(|&b| self.leq(b, x)).collect();
        below.iter().copied().find(|&m| below.iter().all(|&b| self.leq(b, m)))
    }

    /// Whether `f: a -> b` and `g: b -> c` satisfy 2-of-3 in `w`; returns the
    /// first composable pair that does not.
    pub fn two_of_three_violation(&self, w: &MapClass) -> Option<(LatticeMap, LatticeMap)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let Some(f) = self.try_map_index(a, b) else { continue };
                for c in 0..n {
                    let Some(g) = self.try_map_index(b, c) else { continue };
                    let gf = self.map_index(LatticeMap::new(a, c));
                    let count = [f, g, gf].iter().filter(|&&i| w.contains(i)).count();
                    if count == 2 {
                        return Some((LatticeMap::new(a, b), LatticeMap::new(b, c)));
                    }
                }
            }
        }
        None
    }
}
