//! Summation trees.
//!
//! A summation is a rooted full binary tree: leaves are summands and every
//! interior node is one addition. The same type carries both labeled trees
//! ([`SumTree`]) and unlabeled parenthetic forms ([`Shape`]); they differ
//! only in the leaf payload.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name of a summand: an identifier (`[A-Za-z_][A-Za-z0-9_]*`) or a
/// nonnegative integer index written in decimal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Label(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid label {0:?}: expected an identifier or a nonnegative integer")]
pub struct InvalidLabel(pub String);

impl Label {
    pub fn new(text: &str) -> Result<Self, InvalidLabel> {
        if is_identifier(text) || is_index(text) {
            Ok(Label(Arc::from(text)))
        } else {
            Err(InvalidLabel(text.to_string()))
        }
    }

    pub fn index(i: u64) -> Self {
        Label(Arc::from(i.to_string().as_str()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `a, b, ..., z` for `n <= 26`, otherwise `x1 .. xn`.
    pub fn alphabet(n: usize) -> Vec<Label> {
        if n <= 26 {
            (0..n)
                .map(|i| Label(Arc::from(((b'a' + i as u8) as char).to_string().as_str())))
                .collect()
        } else {
            (1..=n)
                .map(|i| Label(Arc::from(format!("x{i}").as_str())))
                .collect()
        }
    }
}

pub(crate) fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => chars.all(is_label_char),
        _ => false,
    }
}

fn is_index(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Label {
    type Err = InvalidLabel;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::new(s)
    }
}

impl TryFrom<String> for Label {
    type Error = InvalidLabel;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Label::new(&s)
    }
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        l.0.to_string()
    }
}

/// Leaf payload of an unlabeled tree. Serializes as `x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blank;

impl fmt::Display for Blank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("x")
    }
}

/// Rooted full binary tree with leaf payload `L` and a cached leaf count at
/// every node. Immutable; subtrees are shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tree<L> {
    Leaf(L),
    Node(Arc<Branch<L>>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Branch<L> {
    left: Tree<L>,
    right: Tree<L>,
    leaf_count: usize,
}

/// A labeled summation.
pub type SumTree = Tree<Label>;
/// A parenthetic form: a summation tree with its labels erased.
pub type Shape = Tree<Blank>;

/// The two labels an interior node can carry in an SD-tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SdLabel {
    /// Both children have the same number of descendant leaves.
    S,
    /// The children have different numbers of descendant leaves.
    D,
}

impl fmt::Display for SdLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SdLabel::S => "S",
            SdLabel::D => "D",
        })
    }
}

/// Which child to descend into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Address of a node as the sequence of turns from the root. Displays as a
/// string of `L`/`R`; the root is the empty path.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodePath(pub Vec<Side>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_char(match s {
                Side::Left => 'L',
                Side::Right => 'R',
            })?;
        }
        Ok(())
    }
}

impl Serialize for NodePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// SD label of one interior node, with the leaf counts that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SdNode {
    pub path: NodePath,
    pub label: SdLabel,
    pub left_leaves: usize,
    pub right_leaves: usize,
}

impl<L> Tree<L> {
    pub fn leaf(payload: L) -> Self {
        Tree::Leaf(payload)
    }

    pub fn node(left: Tree<L>, right: Tree<L>) -> Self {
        let leaf_count = left.leaf_count() + right.leaf_count();
        Tree::Node(Arc::new(Branch {
            left,
            right,
            leaf_count,
        }))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(b) => b.leaf_count,
        }
    }

    pub fn interior_count(&self) -> usize {
        self.leaf_count() - 1
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    pub fn children(&self) -> Option<(&Tree<L>, &Tree<L>)> {
        match self {
            Tree::Leaf(_) => None,
            Tree::Node(b) => Some((&b.left, &b.right)),
        }
    }

    pub fn payload(&self) -> Option<&L> {
        match self {
            Tree::Leaf(l) => Some(l),
            Tree::Node(_) => None,
        }
    }

    /// SD label of this node, `None` for a leaf.
    pub fn sd_label(&self) -> Option<SdLabel> {
        self.children().map(|(l, r)| {
            if l.leaf_count() == r.leaf_count() {
                SdLabel::S
            } else {
                SdLabel::D
            }
        })
    }

    /// Leaf payloads in left-to-right order.
    pub fn leaves(&self) -> Vec<&L> {
        let mut out = Vec::with_capacity(self.leaf_count());
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Tree::Leaf(l) => out.push(l),
                Tree::Node(b) => {
                    stack.push(&b.right);
                    stack.push(&b.left);
                }
            }
        }
        out
    }

    /// Interior nodes in pre-order, each with its SD label.
    pub fn sd_labels(&self) -> Vec<SdNode> {
        let mut out = Vec::with_capacity(self.interior_count());
        let mut stack = vec![(self, NodePath::default())];
        while let Some((t, path)) = stack.pop() {
            if let Some((l, r)) = t.children() {
                out.push(SdNode {
                    path: path.clone(),
                    label: t.sd_label().expect("interior node"),
                    left_leaves: l.leaf_count(),
                    right_leaves: r.leaf_count(),
                });
                let mut rp = path.clone();
                rp.0.push(Side::Right);
                let mut lp = path;
                lp.0.push(Side::Left);
                stack.push((r, rp));
                stack.push((l, lp));
            }
        }
        out
    }

    pub fn s_node_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(b) => {
                let here = usize::from(b.left.leaf_count() == b.right.leaf_count());
                here + b.left.s_node_count() + b.right.s_node_count()
            }
        }
    }

    pub fn d_node_count(&self) -> usize {
        self.interior_count() - self.s_node_count()
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(b) => 1 + b.left.depth().max(b.right.depth()),
        }
    }

    /// Paths of all interior nodes in pre-order.
    pub fn interior_paths(&self) -> Vec<NodePath> {
        self.sd_labels().into_iter().map(|n| n.path).collect()
    }

    pub fn subtree(&self, path: &NodePath) -> Option<&Tree<L>> {
        let mut t = self;
        for side in &path.0 {
            let (l, r) = t.children()?;
            t = match side {
                Side::Left => l,
                Side::Right => r,
            };
        }
        Some(t)
    }

    /// Checks the cached leaf counts against a fresh traversal.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Tree::Leaf(_) => true,
            Tree::Node(b) => {
                b.leaf_count == b.left.leaf_count() + b.right.leaf_count()
                    && b.left.is_well_formed()
                    && b.right.is_well_formed()
            }
        }
    }
}

impl<L: Clone> Tree<L> {
    /// Copy of the tree with the children of the node at `path` exchanged.
    /// Returns `None` if `path` does not address an interior node.
    pub fn swap_at(&self, path: &NodePath) -> Option<Tree<L>> {
        self.swap_from(&path.0)
    }

    fn swap_from(&self, path: &[Side]) -> Option<Tree<L>> {
        let (l, r) = self.children()?;
        match path.split_first() {
            None => Some(Tree::node(r.clone(), l.clone())),
            Some((Side::Left, rest)) => Some(Tree::node(l.swap_from(rest)?, r.clone())),
            Some((Side::Right, rest)) => Some(Tree::node(l.clone(), r.swap_from(rest)?)),
        }
    }

    /// Same structure with every payload replaced by `f(payload)`.
    pub fn map<M>(&self, f: &mut impl FnMut(&L) -> M) -> Tree<M> {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(l)),
            Tree::Node(b) => {
                let left = b.left.map(f);
                let right = b.right.map(f);
                Tree::node(left, right)
            }
        }
    }

    /// The parenthetic form of this tree.
    pub fn shape(&self) -> Shape {
        self.map(&mut |_| Blank)
    }

    /// Same structure with the leaves relabeled, in left-to-right order, from
    /// `payloads`. Returns `None` when the lengths differ.
    pub fn with_leaves<M: Clone>(&self, payloads: &[M]) -> Option<Tree<M>> {
        if payloads.len() != self.leaf_count() {
            return None;
        }
        let mut it = payloads.iter();
        Some(self.map(&mut |_| it.next().expect("length checked").clone()))
    }
}

impl<L: fmt::Display> Tree<L> {
    /// Fully parenthesized text, e.g. `(((a+b)+c)+d)`.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(self.leaf_count() * 4);
        self.write_to(&mut out);
        out
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Tree::Leaf(l) => {
                let _ = write!(out, "{l}");
            }
            Tree::Node(b) => {
                out.push('(');
                b.left.write_to(out);
                out.push('+');
                b.right.write_to(out);
                out.push(')');
            }
        }
    }
}

impl<L: fmt::Display> fmt::Display for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl<L: fmt::Display> fmt::Debug for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.serialize())
    }
}

impl<L: fmt::Display> Serialize for Tree<L> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Total order used by the canonical forms: leaf count first, then the
/// serialized text.
pub(crate) fn canonical_cmp(
    left_count: usize,
    left_text: &str,
    right_count: usize,
    right_text: &str,
) -> Ordering {
    left_count
        .cmp(&right_count)
        .then_with(|| left_text.cmp(right_text))
}

impl SumTree {
    pub fn labels(&self) -> Vec<&Label> {
        self.leaves()
    }

    /// First label that occurs more than once, if any.
    pub fn duplicate_label(&self) -> Option<Label> {
        let mut seen = std::collections::HashSet::new();
        self.leaves()
            .into_iter()
            .find(|l| !seen.insert(*l))
            .cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> SumTree {
        Tree::leaf(Label::new(s).unwrap())
    }

    #[test]
    fn label_validation() {
        assert!(Label::new("a").is_ok());
        assert!(Label::new("_x9").is_ok());
        assert!(Label::new("42").is_ok());
        assert!(Label::new("").is_err());
        assert!(Label::new("9a").is_err());
        assert!(Label::new("a-b").is_err());
        assert_eq!(Label::index(7).as_str(), "7");
        assert_eq!(
            Label::alphabet(3)
                .iter()
                .map(Label::as_str)
                .collect::<Vec<_>>(),
            ["a", "b", "c"]
        );
        assert_eq!(Label::alphabet(27)[26].as_str(), "x27");
    }

    #[test]
    fn leaf_counts_are_cached() {
        let t = Tree::node(Tree::node(l("a"), l("b")), l("c"));
        assert_eq!(t.leaf_count(), 3);
        assert_eq!(t.interior_count(), 2);
        assert!(t.is_well_formed());
        assert_eq!(t.serialize(), "((a+b)+c)");
    }

    #[test]
    fn sd_labels_of_figure_tree() {
        // (((a+b)+c)+((d+e)+f)): S at the root, D at both depth-1 nodes,
        // S at both two-leaf nodes.
        let t = Tree::node(
            Tree::node(Tree::node(l("a"), l("b")), l("c")),
            Tree::node(Tree::node(l("d"), l("e")), l("f")),
        );
        let labels: Vec<(String, SdLabel)> = t
            .sd_labels()
            .into_iter()
            .map(|n| (n.path.to_string(), n.label))
            .collect();
        assert_eq!(
            labels,
            vec![
                ("".into(), SdLabel::S),
                ("L".into(), SdLabel::D),
                ("LL".into(), SdLabel::S),
                ("R".into(), SdLabel::D),
                ("RL".into(), SdLabel::S),
            ]
        );
        assert_eq!(t.s_node_count(), 3);
        assert_eq!(t.d_node_count(), 2);
    }

    #[test]
    fn single_leaf_has_no_interior_nodes() {
        let t = l("x");
        assert!(t.sd_labels().is_empty());
        assert_eq!(t.s_node_count(), 0);
        assert_eq!(t.sd_label(), None);
    }

    #[test]
    fn swap_at_path() {
        let t = Tree::node(Tree::node(l("a"), l("b")), l("c"));
        let root = t.swap_at(&NodePath(vec![])).unwrap();
        assert_eq!(root.serialize(), "(c+(a+b))");
        let inner = t.swap_at(&NodePath(vec![Side::Left])).unwrap();
        assert_eq!(inner.serialize(), "((b+a)+c)");
        assert!(t.swap_at(&NodePath(vec![Side::Right])).is_none());
    }

    #[test]
    fn shape_erases_labels() {
        let t = Tree::node(l("a"), Tree::node(l("b"), l("c")));
        assert_eq!(t.shape().serialize(), "(x+(x+x))");
        assert_eq!(t.duplicate_label(), None);
        let d = Tree::node(l("a"), l("a"));
        assert_eq!(d.duplicate_label().unwrap().as_str(), "a");
    }
}
