//! Vertices, binary trees, and forests of the infinite rooted binary tree.
//!
//! A vertex is identified with its path from the root, a finite word over
//! `{0,1}` (`0` = left edge, `1` = right edge, empty word = root). A tree is
//! stored as the ordered list of its leaf words; validity means the leaf set
//! is a *complete antichain*: no word is a prefix of another and the dyadic
//! intervals attached to the leaves partition `[0,1]`. With this encoding,
//! grafting, composition and common refinement are prefix arithmetic on
//! words, and the antichain check is the single structural invariant.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("vertex words may only contain '0' and '1', got {0:?}")]
    BadCharacter(char),
    #[error("leaf words do not form a complete antichain")]
    NotAntichain,
    #[error("a tree must have at least one leaf")]
    Empty,
    #[error("elementary forest index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("arity mismatch: {leaves} leaves composed with {roots} roots")]
    ArityMismatch { leaves: usize, roots: usize },
    #[error("leaf words are too deep (max supported depth {0})")]
    TooDeep(usize),
}

/// Leaf words deeper than this overflow the exact antichain accounting.
const MAX_DEPTH: usize = 96;

/// A vertex of the infinite rooted binary tree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(String);

/// Where a vertex sits relative to the two boundary geodesics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Root,
    LeftSide,
    RightSide,
    Centre,
}

impl Vertex {
    pub fn new(word: impl Into<String>) -> Result<Self, ForestError> {
        let word = word.into();
        if let Some(c) = word.chars().find(|&c| c != '0' && c != '1') {
            return Err(ForestError::BadCharacter(c));
        }
        if word.len() > MAX_DEPTH {
            return Err(ForestError::TooDeep(MAX_DEPTH));
        }
        Ok(Vertex(word))
    }

    pub fn root() -> Self {
        Vertex(String::new())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// The child reached by appending one edge label.
    pub fn child(&self, bit: char) -> Self {
        debug_assert!(bit == '0' || bit == '1');
        let mut w = self.0.clone();
        w.push(bit);
        Vertex(w)
    }

    /// Concatenation `self · w` (descend from `self` along `w`).
    pub fn descend(&self, w: &str) -> Self {
        Vertex(format!("{}{}", self.0, w))
    }

    pub fn is_prefix_of(&self, other: &Vertex) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The remaining path when `prefix` is an ancestor of `self`.
    pub fn strip_prefix(&self, prefix: &Vertex) -> Option<&str> {
        self.0.strip_prefix(&prefix.0)
    }

    pub fn region(&self) -> Region {
        vertex_region(self)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({:?})", self.0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("<root>")
        } else {
            f.write_str(&self.0)
        }
    }
}

impl std::str::FromStr for Vertex {
    type Err = ForestError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Vertex::new(s)
    }
}

/// Classifies a vertex as root, all-left, all-right, or neither.
pub fn vertex_region(v: &Vertex) -> Region {
    if v.is_root() {
        Region::Root
    } else if v.0.bytes().all(|b| b == b'0') {
        Region::LeftSide
    } else if v.0.bytes().all(|b| b == b'1') {
        Region::RightSide
    } else {
        Region::Centre
    }
}

/// True iff neither word is a prefix of the other, i.e. the standard dyadic
/// intervals attached to the vertices are disjoint.
pub fn is_disjoint(v: &Vertex, w: &Vertex) -> bool {
    !v.is_prefix_of(w) && !w.is_prefix_of(v)
}

/// A finite binary tree, stored as its left-to-right leaf list.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Tree {
    leaves: Vec<Vertex>,
}

impl Tree {
    /// The trivial tree `e`: a single leaf at the root.
    pub fn trivial() -> Self {
        Tree {
            leaves: vec![Vertex::root()],
        }
    }

    /// The single caret with leaves `0`, `1`.
    pub fn caret() -> Self {
        Tree {
            leaves: vec![Vertex(String::from("0")), Vertex(String::from("1"))],
        }
    }

    /// Builds a tree from leaf words, sorting and validating the antichain.
    pub fn from_leaves<I, S>(words: I) -> Result<Self, ForestError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut leaves = words
            .into_iter()
            .map(|w| Vertex::new(w))
            .collect::<Result<Vec<_>, _>>()?;
        leaves.sort();
        let tree = Tree { leaves };
        tree.validate()?;
        Ok(tree)
    }

    /// Checks the complete-antichain invariant.
    ///
    /// Sorted leaf order puts any prefix immediately before its first
    /// descendant, so adjacency catches every prefix pair; exact dyadic mass
    /// accounting then forces the partition of `[0,1]`.
    pub fn validate(&self) -> Result<(), ForestError> {
        if self.leaves.is_empty() {
            return Err(ForestError::Empty);
        }
        let max_len = self.leaves.iter().map(Vertex::len).max().unwrap();
        if max_len > MAX_DEPTH {
            return Err(ForestError::TooDeep(MAX_DEPTH));
        }
        for pair in self.leaves.windows(2) {
            if pair[0].is_prefix_of(&pair[1]) {
                return Err(ForestError::NotAntichain);
            }
        }
        let total: u128 = self
            .leaves
            .iter()
            .map(|v| 1u128 << (max_len - v.len()))
            .sum();
        if total != 1u128 << max_len {
            return Err(ForestError::NotAntichain);
        }
        Ok(())
    }

    pub fn leaves(&self) -> &[Vertex] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.leaves.len() == 1
    }

    pub fn depth(&self) -> usize {
        self.leaves.iter().map(Vertex::len).max().unwrap_or(0)
    }

    /// Index of the unique leaf that is a prefix of `word`, if any.
    pub fn leaf_above(&self, word: &str) -> Option<usize> {
        self.leaves.iter().position(|l| word.starts_with(l.as_str()))
    }

    /// The minimal tree containing `v` as a leaf: the path to `v` together
    /// with the off-path siblings.
    pub fn path_tree(v: &Vertex) -> Self {
        if v.is_root() {
            return Tree::trivial();
        }
        let w = v.as_str();
        let mut leaves = Vec::with_capacity(w.len() + 1);
        for (i, c) in w.char_indices() {
            let sibling = if c == '0' { '1' } else { '0' };
            leaves.push(Vertex(format!("{}{}", &w[..i], sibling)));
        }
        leaves.push(v.clone());
        leaves.sort();
        Tree { leaves }
    }

    /// If `finer` refines `self` (i.e. `finer = self ∘ f` for some forest
    /// `f`), returns that forest.
    pub fn refinement_from(&self, finer: &Tree) -> Option<Forest> {
        let mut trees = Vec::with_capacity(self.leaf_count());
        let mut it = finer.leaves.iter().peekable();
        for leaf in &self.leaves {
            let mut sub = Vec::new();
            while let Some(f) = it.peek() {
                match f.strip_prefix(leaf) {
                    Some(rest) => {
                        sub.push(Vertex(rest.to_string()));
                        it.next();
                    }
                    None => break,
                }
            }
            if sub.is_empty() {
                return None;
            }
            trees.push(Tree { leaves: sub });
        }
        if it.next().is_some() {
            return None;
        }
        Some(Forest { trees })
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tree[{}]",
            self.leaves
                .iter()
                .map(|v| format!("{:?}", v.as_str()))
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl TryFrom<Vec<String>> for Tree {
    type Error = ForestError;
    fn try_from(words: Vec<String>) -> Result<Self, Self::Error> {
        Tree::from_leaves(words)
    }
}

impl From<Tree> for Vec<String> {
    fn from(t: Tree) -> Self {
        t.leaves.into_iter().map(|v| v.0).collect()
    }
}

/// An ordered, nonempty list of trees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn from_trees(trees: Vec<Tree>) -> Result<Self, ForestError> {
        if trees.is_empty() {
            return Err(ForestError::Empty);
        }
        Ok(Forest { trees })
    }

    /// `n` copies of the trivial tree side by side.
    pub fn trivial(n: usize) -> Self {
        Forest {
            trees: vec![Tree::trivial(); n.max(1)],
        }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn root_count(&self) -> usize {
        self.trees.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(Tree::is_trivial)
    }

    /// The single tree of a one-root forest.
    pub fn into_tree(mut self) -> Option<Tree> {
        if self.trees.len() == 1 {
            self.trees.pop()
        } else {
            None
        }
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        Forest { trees: vec![t] }
    }
}

/// The forest `f_{k,n} = I^{⊗(k-1)} ⊗ ∧ ⊗ I^{⊗(n-k)}`: `n` roots, `n+1`
/// leaves, with the single caret at position `k` (1-based).
pub fn elementary_forest(k: usize, n: usize) -> Result<Forest, ForestError> {
    if k < 1 || k > n {
        return Err(ForestError::IndexOutOfRange { k, n });
    }
    let trees = (1..=n)
        .map(|i| if i == k { Tree::caret() } else { Tree::trivial() })
        .collect();
    Ok(Forest { trees })
}

/// Vertical stacking `g ∘ f`: the `j`-th tree of `g` is grafted onto the
/// `j`-th leaf of `f`. Requires `leaf_count(f) = root_count(g)`.
pub fn compose_forests(f: &Forest, g: &Forest) -> Result<Forest, ForestError> {
    if f.leaf_count() != g.root_count() {
        return Err(ForestError::ArityMismatch {
            leaves: f.leaf_count(),
            roots: g.root_count(),
        });
    }
    let mut g_iter = g.trees.iter();
    let mut out = Vec::with_capacity(f.root_count());
    for tree in &f.trees {
        let mut leaves = Vec::new();
        for leaf in &tree.leaves {
            let graft = g_iter.next().expect("arity checked above");
            for sub in &graft.leaves {
                leaves.push(leaf.descend(sub.as_str()));
            }
        }
        out.push(Tree { leaves });
    }
    Ok(Forest { trees: out })
}

/// Grafts a forest under a single tree, `f ∘ t` in composition order.
pub fn compose_tree(t: &Tree, f: &Forest) -> Result<Tree, ForestError> {
    let composed = compose_forests(&Forest::from(t.clone()), f)?;
    Ok(composed.into_tree().expect("one root in, one root out"))
}

/// Horizontal concatenation `f ⊗ g`.
pub fn tensor(f: &Forest, g: &Forest) -> Forest {
    let mut trees = f.trees.clone();
    trees.extend(g.trees.iter().cloned());
    Forest { trees }
}

/// The least common refinement of two trees.
///
/// Returns `(r, f, g)` with `r = t ∘ f = s ∘ g`; the leaf set of `r` is the
/// coarsest antichain refining both leaf antichains.
pub fn common_refinement(t: &Tree, s: &Tree) -> (Tree, Forest, Forest) {
    let mut leaves: Vec<Vertex> = Vec::new();
    for u in &t.leaves {
        let below: Vec<&Vertex> = s
            .leaves
            .iter()
            .filter(|v| u.is_prefix_of(v) && v.len() > u.len())
            .collect();
        if below.is_empty() {
            leaves.push(u.clone());
        } else {
            leaves.extend(below.into_iter().cloned());
        }
    }
    leaves.sort();
    let r = Tree { leaves };
    debug_assert!(r.validate().is_ok());
    let f = t.refinement_from(&r).expect("r refines t by construction");
    let g = s.refinement_from(&r).expect("r refines s by construction");
    (r, f, g)
}
