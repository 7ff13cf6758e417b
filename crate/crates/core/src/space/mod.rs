//! The tuple universe: interned tuples `ₙ((a_i, α_i))`, their recursive
//! distance, permissibility, retraction and the quotient by zero distance.

mod encoding;
pub mod sample;

pub use encoding::{format_encoding, parse_encoding, EncTerm};

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::dyadic::Dyadic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    /// The empty tuple of age 0.
    pub const EMPTY: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleNode {
    pub age: u32,
    pub entries: Vec<(NodeId, Dyadic)>,
}

impl TupleNode {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A permissible tuple regarded up to zero distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotPoint(NodeId);

impl QuotPoint {
    pub fn node(self) -> NodeId {
        self.0
    }

    /// Wraps a node that is permissible by construction.
    pub(crate) fn assume(id: NodeId) -> Self {
        QuotPoint(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("predecessor {predecessor} has age {predecessor_age}, not below {age}")]
    AgeViolation { predecessor: NodeId, predecessor_age: u32, age: u32 },
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("malformed encoding at term {position}: {reason}")]
    MalformedEncoding { position: usize, reason: String },
    #[error("encoding syntax error at column {column}: {reason}")]
    EncodingSyntax { column: usize, reason: String },
    #[error("node {0} is not permissible")]
    NotPermissible(NodeId),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// Append-only table of interned tuples with memoized distances.
///
/// The store is single-threaded; callers share it by `&mut` reference.
#[derive(Debug)]
pub struct Store {
    nodes: Vec<Rc<TupleNode>>,
    index: HashMap<Rc<TupleNode>, NodeId>,
    dist_memo: HashMap<(NodeId, NodeId), Dyadic>,
    permissible: Vec<Option<bool>>,
    retracts: HashMap<NodeId, NodeId>,
}

impl Default for Store {
    fn default() -> Self {
        Store::new()
    }
}

impl Store {
    pub fn new() -> Self {
        let mut store = Store {
            nodes: Vec::new(),
            index: HashMap::new(),
            dist_memo: HashMap::new(),
            permissible: Vec::new(),
            retracts: HashMap::new(),
        };
        let empty = store.insert(TupleNode { age: 0, entries: Vec::new() });
        debug_assert_eq!(empty, NodeId::EMPTY);
        store
    }

    fn insert(&mut self, node: TupleNode) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = NodeId(u32::try_from(self.nodes.len()).expect("store exhausted"));
        let node = Rc::new(node);
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        self.permissible.push(None);
        id
    }

    pub fn empty(&self) -> NodeId {
        NodeId::EMPTY
    }

    /// Number of interned nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.index() < self.nodes.len()
    }

    pub fn node(&self, id: NodeId) -> &TupleNode {
        &self.nodes[id.index()]
    }

    pub fn age(&self, id: NodeId) -> u32 {
        self.nodes[id.index()].age
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    /// Returns the id of `ₐ(entries)`, creating it if absent.
    pub fn intern(&mut self, age: u32, entries: Vec<(NodeId, Dyadic)>) -> Result<NodeId, SpaceError> {
        for (p, _) in &entries {
            if !self.contains(*p) {
                return Err(SpaceError::UnknownNode(*p));
            }
            let pa = self.age(*p);
            if pa >= age {
                return Err(SpaceError::AgeViolation { predecessor: *p, predecessor_age: pa, age });
            }
        }
        Ok(self.insert(TupleNode { age, entries }))
    }

    /// Interns `entries` at one more than the largest predecessor age
    /// (age 1 for the empty list).
    pub fn intern_next(&mut self, entries: Vec<(NodeId, Dyadic)>) -> Result<NodeId, SpaceError> {
        let age = entries.iter().map(|(p, _)| self.age(*p)).max().unwrap_or(0) + 1;
        self.intern(age, entries)
    }

    /// `d(a, b) = max(max_i |d(a_i, b) − α_i|, max_j |d(a, b_j) − β_j|)`,
    /// zero for two empty tuples.
    pub fn distance(&mut self, a: NodeId, b: NodeId) -> Dyadic {
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(d) = self.dist_memo.get(&key) {
            return d.clone();
        }
        let na = self.nodes[a.index()].clone();
        let nb = self.nodes[b.index()].clone();
        let mut best = Dyadic::zero();
        for (ai, alpha) in &na.entries {
            let d = self.distance(*ai, b).abs_diff(alpha);
            best = best.max(d);
        }
        for (bj, beta) in &nb.entries {
            let d = self.distance(a, *bj).abs_diff(beta);
            best = best.max(d);
        }
        self.dist_memo.insert(key, best.clone());
        best
    }

    pub fn norm(&mut self, a: NodeId) -> Dyadic {
        self.distance(a, NodeId::EMPTY)
    }

    /// Predecessors are permissible and `|d(a_i, a_j) − α_i| ≤ α_j` for all `i, j`.
    pub fn is_permissible(&mut self, a: NodeId) -> bool {
        if let Some(v) = self.permissible[a.index()] {
            return v;
        }
        let node = self.nodes[a.index()].clone();
        let mut ok = node.entries.iter().all(|(p, _)| self.is_permissible(*p));
        'outer: for (ai, alpha) in node.entries.iter().filter(|_| ok) {
            for (aj, beta) in &node.entries {
                if &self.distance(*ai, *aj).abs_diff(alpha) > beta {
                    ok = false;
                    break 'outer;
                }
            }
        }
        self.permissible[a.index()] = Some(ok);
        ok
    }

    /// `r(a) = ₐ((r(a_i), d(a, r(a_i))))`, the retraction onto permissible tuples.
    pub fn retract(&mut self, a: NodeId) -> NodeId {
        if let Some(&r) = self.retracts.get(&a) {
            return r;
        }
        let node = self.nodes[a.index()].clone();
        let mut entries = Vec::with_capacity(node.len());
        for (ai, _) in &node.entries {
            let r = self.retract(*ai);
            let d = self.distance(a, r);
            entries.push((r, d));
        }
        // retracted predecessors keep their ages, so this cannot fail
        let r = self.insert(TupleNode { age: node.age, entries });
        self.retracts.insert(a, r);
        r
    }

    pub fn quot(&mut self, a: NodeId) -> Result<QuotPoint, SpaceError> {
        if !self.contains(a) {
            return Err(SpaceError::UnknownNode(a));
        }
        if self.is_permissible(a) {
            Ok(QuotPoint(a))
        } else {
            Err(SpaceError::NotPermissible(a))
        }
    }

    pub fn empty_point(&self) -> QuotPoint {
        QuotPoint(NodeId::EMPTY)
    }

    pub fn dist(&mut self, x: QuotPoint, y: QuotPoint) -> Dyadic {
        self.distance(x.0, y.0)
    }

    pub fn quot_eq(&mut self, x: QuotPoint, y: QuotPoint) -> bool {
        self.distance(x.0, y.0).is_zero()
    }

    /// For permissible tuples of equal length with `|α_i − β_i| ≤ alpha_bound`
    /// and `d(a_i, b_i) ≤ point_bound`, reports whether
    /// `d(a, b) ≤ alpha_bound + point_bound`.
    pub fn perturbation_bound_check(
        &mut self,
        a: NodeId,
        b: NodeId,
        alpha_bound: &Dyadic,
        point_bound: &Dyadic,
    ) -> Result<bool, SpaceError> {
        for id in [a, b] {
            if !self.is_permissible(id) {
                return Err(SpaceError::NotPermissible(id));
            }
        }
        let na = self.nodes[a.index()].clone();
        let nb = self.nodes[b.index()].clone();
        if na.len() != nb.len() {
            return Err(SpaceError::HypothesisViolated(format!(
                "lengths differ: {} and {}",
                na.len(),
                nb.len()
            )));
        }
        for (i, ((ai, alpha), (bi, beta))) in na.entries.iter().zip(&nb.entries).enumerate() {
            if &alpha.abs_diff(beta) > alpha_bound {
                return Err(SpaceError::HypothesisViolated(format!("entry {i}: distances differ by more than {alpha_bound}")));
            }
            if &self.distance(*ai, *bi) > point_bound {
                return Err(SpaceError::HypothesisViolated(format!("entry {i}: predecessors further apart than {point_bound}")));
            }
        }
        Ok(self.distance(a, b) <= alpha_bound + point_bound)
    }

    /// Number of memoized distance pairs.
    pub fn memo_len(&self) -> usize {
        self.dist_memo.len()
    }
}
