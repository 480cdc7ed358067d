//! Duplicate-free generation of parenthetic forms and of one representative
//! per computational-equivalence class, plus the brute-force oracles that
//! count the same things by exhaustive enumeration and deduplication.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use thiserror::Error;

use crate::canon::{canonical_key, canonical_shape};
use crate::tree::{Blank, Label, Shape, SumTree, Tree};

/// Largest shape size accepted by [`oracle_class_count`].
pub const ORACLE_CLASS_CAP: usize = 8;
/// Largest size accepted by [`oracle_total_count`].
pub const ORACLE_TOTAL_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("a tree needs at least one leaf")]
    NoLeaves,
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("n = {n} exceeds the cap of {cap} for {what}")]
    AboveCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },
}

/// Which forms count as distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ShapeMode {
    /// One form per isomorphism class under child swaps.
    #[default]
    Isomorphism,
    /// Children of a D-node are ordered smaller-first, but the two halves
    /// under an S-node are kept as an ordered pair. This is the family the
    /// half-Catalan recursion and the `τ(n, s)` table count.
    SizeOrdered,
}

#[derive(Debug, Clone)]
struct Entry {
    shape: Shape,
    text: String,
    s_nodes: usize,
}

/// Deterministic stream of shapes with a fixed leaf count, ordered by the
/// left subtree's leaf count and then recursively by the subtrees' own
/// order. Holds the complete lists for smaller sizes, never the output.
#[derive(Debug, Clone)]
pub struct ShapeStream {
    n: usize,
    s_filter: Option<usize>,
    mode: ShapeMode,
    pools: Arc<Vec<Vec<Entry>>>,
    split: usize,
    a: usize,
    b: usize,
    done: bool,
}

impl ShapeStream {
    fn new(
        n: usize,
        s_filter: Option<usize>,
        mode: ShapeMode,
        pools: Arc<Vec<Vec<Entry>>>,
    ) -> Self {
        ShapeStream {
            n,
            s_filter,
            mode,
            pools,
            split: 1,
            a: 0,
            b: 0,
            done: false,
        }
    }

    fn next_entry(&mut self) -> Option<Entry> {
        if self.done {
            return None;
        }
        if self.n == 1 {
            self.done = true;
            let shape = Tree::leaf(Blank);
            return Some(Entry {
                text: shape.serialize(),
                shape,
                s_nodes: 0,
            });
        }
        loop {
            let i = self.split;
            if i > self.n / 2 {
                self.done = true;
                return None;
            }
            let left = &self.pools[i];
            let right = &self.pools[self.n - i];
            if self.a >= left.len() {
                self.split += 1;
                self.a = 0;
                self.b = 0;
                continue;
            }
            if self.b >= right.len() {
                self.a += 1;
                self.b = 0;
                continue;
            }
            let (x, y) = (&left[self.a], &right[self.b]);
            self.b += 1;
            let equal = 2 * i == self.n;
            if equal && self.mode == ShapeMode::Isomorphism && x.text > y.text {
                continue;
            }
            let s_nodes = x.s_nodes + y.s_nodes + usize::from(equal);
            if self.s_filter.is_some_and(|s| s != s_nodes) {
                continue;
            }
            return Some(Entry {
                shape: Tree::node(x.shape.clone(), y.shape.clone()),
                text: format!("({}+{})", x.text, y.text),
                s_nodes,
            });
        }
    }
}

impl Iterator for ShapeStream {
    type Item = Shape;

    fn next(&mut self) -> Option<Shape> {
        self.next_entry().map(|e| e.shape)
    }
}

fn pools(max: usize, mode: ShapeMode) -> Arc<Vec<Vec<Entry>>> {
    let mut pools: Vec<Vec<Entry>> = vec![Vec::new()];
    for k in 1..=max {
        let mut stream = ShapeStream::new(k, None, mode, Arc::new(pools));
        let mut list = Vec::new();
        while let Some(e) = stream.next_entry() {
            list.push(e);
        }
        pools = Arc::try_unwrap(stream.pools).expect("sole owner");
        pools.push(list);
    }
    Arc::new(pools)
}

/// Every shape with `n` leaves up to isomorphism, each in canonical form,
/// optionally restricted to exactly `s_filter` S-nodes.
pub fn shapes(n: usize, s_filter: Option<usize>) -> Result<ShapeStream, GenerateError> {
    shapes_with(n, s_filter, ShapeMode::Isomorphism)
}

pub fn shapes_with(
    n: usize,
    s_filter: Option<usize>,
    mode: ShapeMode,
) -> Result<ShapeStream, GenerateError> {
    if n == 0 {
        return Err(GenerateError::NoLeaves);
    }
    Ok(ShapeStream::new(n, s_filter, mode, pools(n - 1, mode)))
}

/// Canonical labeled trees, one per computational-equivalence class.
pub struct ClassStream {
    inner: Box<dyn Iterator<Item = SumTree> + Send>,
}

impl Iterator for ClassStream {
    type Item = SumTree;

    fn next(&mut self) -> Option<SumTree> {
        self.inner.next()
    }
}

impl std::fmt::Debug for ClassStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("ClassStream")
    }
}

fn check_labels(expected: usize, labels: &[Label]) -> Result<Arc<[Label]>, GenerateError> {
    if expected == 0 {
        return Err(GenerateError::NoLeaves);
    }
    if labels.len() != expected {
        return Err(GenerateError::LabelCount {
            expected,
            got: labels.len(),
        });
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l) {
            return Err(GenerateError::DuplicateLabel(l.to_string()));
        }
    }
    Ok(Arc::from(labels))
}

/// One canonical labeled tree for each inequivalent way of placing `labels`
/// on the leaves of `shape`. Yields `n! / 2^k` trees, where `k` counts the
/// nodes whose two subtrees are isomorphic.
pub fn class_representatives(
    shape: &Shape,
    labels: &[Label],
) -> Result<ClassStream, GenerateError> {
    let labels = check_labels(shape.leaf_count(), labels)?;
    Ok(ClassStream {
        inner: labelings(canonical_shape(shape), labels),
    })
}

/// One representative of every computational-equivalence class of sums of
/// `labels`: `(2n-3)!!` trees in total.
pub fn all_classes(labels: &[Label]) -> Result<ClassStream, GenerateError> {
    let labels = check_labels(labels.len(), labels)?;
    let inner = shapes(labels.len(), None)?.flat_map(move |s| labelings(s, labels.clone()));
    Ok(ClassStream {
        inner: Box::new(inner),
    })
}

/// Canonical labelings of a canonical shape. At a node whose subtrees are
/// isomorphic only label splits that send the first label left are
/// produced, which removes the swap symmetry before it is generated.
fn labelings(shape: Shape, labels: Arc<[Label]>) -> Box<dyn Iterator<Item = SumTree> + Send> {
    let Some((l, r)) = shape.children() else {
        return Box::new(std::iter::once(Tree::leaf(labels[0].clone())));
    };
    let (l, r) = (l.clone(), r.clone());
    let n = labels.len();
    let lc = l.leaf_count();
    let symmetric = lc == r.leaf_count() && l == r;
    let splits = (0..n)
        .combinations(lc)
        .filter(move |c| !symmetric || c[0] == 0);
    Box::new(splits.flat_map(move |chosen| {
        let mut mask = vec![false; n];
        for &i in &chosen {
            mask[i] = true;
        }
        let left: Arc<[Label]> = chosen.iter().map(|&i| labels[i].clone()).collect();
        let right: Arc<[Label]> = (0..n)
            .filter(|&i| !mask[i])
            .map(|i| labels[i].clone())
            .collect();
        let r = r.clone();
        labelings(l.clone(), left).flat_map(move |x| {
            labelings(r.clone(), right.clone()).map(move |y| ordered_node(x.clone(), y))
        })
    }))
}

fn ordered_node(x: SumTree, y: SumTree) -> SumTree {
    if x.leaf_count() == y.leaf_count() && x.serialize() > y.serialize() {
        Tree::node(y, x)
    } else {
        Tree::node(x, y)
    }
}

/// All `C(n-1)` plane full binary trees with `n` leaves (children ordered,
/// no identification under swaps).
pub fn plane_shapes(n: usize) -> Vec<Shape> {
    if n == 0 {
        return Vec::new();
    }
    let mut by_size: Vec<Vec<Shape>> = vec![Vec::new(), vec![Tree::leaf(Blank)]];
    for k in 2..=n {
        let mut out = Vec::new();
        for i in 1..k {
            for a in &by_size[i] {
                for b in &by_size[k - i] {
                    out.push(Tree::node(a.clone(), b.clone()));
                }
            }
        }
        by_size.push(out);
    }
    by_size.swap_remove(n)
}

/// Counts inequivalent labelings of `shape` by trying all `n!` placements
/// of `labels` and deduplicating canonical keys.
pub fn oracle_class_count(shape: &Shape, labels: &[Label]) -> Result<BigUint, GenerateError> {
    let n = shape.leaf_count();
    if n > ORACLE_CLASS_CAP {
        return Err(GenerateError::AboveCap {
            what: "oracle_class_count",
            n,
            cap: ORACLE_CLASS_CAP,
        });
    }
    let labels = check_labels(n, labels)?;
    let mut seen = HashSet::new();
    for perm in labels.iter().cloned().permutations(n) {
        let t = shape.with_leaves(&perm).expect("length checked");
        seen.insert(canonical_key(&t));
    }
    Ok(BigUint::from(seen.len()))
}

/// Counts all inequivalent summations of `labels` by trying every ordering
/// on every plane tree and deduplicating canonical keys.
pub fn oracle_total_count(labels: &[Label]) -> Result<BigUint, GenerateError> {
    let n = labels.len();
    if n > ORACLE_TOTAL_CAP {
        return Err(GenerateError::AboveCap {
            what: "oracle_total_count",
            n,
            cap: ORACLE_TOTAL_CAP,
        });
    }
    let labels = check_labels(n, labels)?;
    let trees = plane_shapes(n);
    let mut seen = HashSet::new();
    for perm in labels.iter().cloned().permutations(n) {
        for shape in &trees {
            let t = shape.with_leaves(&perm).expect("length checked");
            seen.insert(canonical_key(&t));
        }
    }
    Ok(BigUint::from(seen.len()))
}

/// Every tree reachable from `t` by child swaps, found by breadth-first
/// search, as serializations. Exponential; meant for small trees.
pub fn swap_closure<L: std::fmt::Display + Clone>(t: &Tree<L>) -> HashSet<String> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.serialize());
    queue.push_back(t.clone());
    while let Some(cur) = queue.pop_front() {
        for path in cur.interior_paths() {
            let next = cur.swap_at(&path).expect("interior path");
            if seen.insert(next.serialize()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{ladder_shape, pairwise_shape};
    use crate::canon::is_canonical;
    use crate::parse::parse_shape;

    fn texts<L: std::fmt::Display>(it: impl Iterator<Item = Tree<L>>) -> Vec<String> {
        it.map(|t| t.serialize()).collect()
    }

    #[test]
    fn four_leaf_shapes() {
        assert_eq!(
            texts(shapes(4, None).unwrap()),
            ["(x+(x+(x+x)))", "((x+x)+(x+x))"]
        );
    }

    #[test]
    fn one_leaf_shape() {
        assert_eq!(texts(shapes(1, None).unwrap()), ["x"]);
        assert_eq!(shapes(0, None).unwrap_err(), GenerateError::NoLeaves);
    }

    #[test]
    fn six_leaves_two_s_nodes() {
        let got: Vec<Shape> = shapes(6, Some(2)).unwrap().collect();
        assert_eq!(got.len(), 2);
        for fig in ["((((x+x)+x)+x)+(x+x))", "((((x+x)+x)+(x+x))+x)"] {
            let c = canonical_shape(&parse_shape(fig).unwrap());
            assert!(got.contains(&c), "{fig}");
        }
    }

    #[test]
    fn size_ordered_mode_keeps_ordered_halves() {
        let iso: Vec<Shape> = shapes(8, None).unwrap().collect();
        let ordered: Vec<Shape> = shapes_with(8, None, ShapeMode::SizeOrdered)
            .unwrap()
            .collect();
        assert_eq!(iso.len(), 23);
        assert_eq!(ordered.len(), 24);
        assert!(iso.iter().all(is_canonical));
    }

    #[test]
    fn representatives_of_small_shapes() {
        let abcd = Label::alphabet(4);
        let perfect = pairwise_shape(4);
        let reps: Vec<SumTree> = class_representatives(&perfect, &abcd).unwrap().collect();
        assert_eq!(reps.len(), 3);
        assert_eq!(
            texts(reps.into_iter()),
            ["((a+b)+(c+d))", "((a+c)+(b+d))", "((a+d)+(b+c))"]
        );
        let reps = class_representatives(&ladder_shape(3), &Label::alphabet(3)).unwrap();
        assert_eq!(texts(reps), ["(a+(b+c))", "(b+(a+c))", "(c+(a+b))"]);
        let one = class_representatives(&ladder_shape(1), &Label::alphabet(1)).unwrap();
        assert_eq!(one.count(), 1);
    }

    #[test]
    fn representative_errors() {
        let err = class_representatives(&ladder_shape(3), &Label::alphabet(2)).unwrap_err();
        assert_eq!(
            err,
            GenerateError::LabelCount {
                expected: 3,
                got: 2
            }
        );
        let dup = vec![Label::new("a").unwrap(); 3];
        assert!(matches!(
            class_representatives(&ladder_shape(3), &dup),
            Err(GenerateError::DuplicateLabel(_))
        ));
        assert!(matches!(
            oracle_class_count(&ladder_shape(9), &Label::alphabet(9)),
            Err(GenerateError::AboveCap { .. })
        ));
        assert!(matches!(
            oracle_total_count(&Label::alphabet(8)),
            Err(GenerateError::AboveCap { .. })
        ));
    }

    #[test]
    fn all_classes_small() {
        assert_eq!(all_classes(&Label::alphabet(1)).unwrap().count(), 1);
        let three = texts(all_classes(&Label::alphabet(3)).unwrap());
        assert_eq!(three, ["(a+(b+c))", "(b+(a+c))", "(c+(a+b))"]);
        assert_eq!(all_classes(&Label::alphabet(4)).unwrap().count(), 15);
    }

    #[test]
    fn oracles_small() {
        assert_eq!(
            oracle_class_count(&pairwise_shape(6), &Label::alphabet(6)).unwrap(),
            BigUint::from(90u32)
        );
        assert_eq!(
            oracle_class_count(&ladder_shape(5), &Label::alphabet(5)).unwrap(),
            BigUint::from(60u32)
        );
        assert_eq!(
            oracle_total_count(&Label::alphabet(5)).unwrap(),
            BigUint::from(105u32)
        );
        assert_eq!(plane_shapes(5).len(), 14);
    }

    #[test]
    fn swap_closure_of_three() {
        let t = crate::parse::parse("((a+b)+c)").unwrap();
        assert_eq!(swap_closure(&t).len(), 4);
    }
}
