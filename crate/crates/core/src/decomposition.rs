//! Substitution decomposition and the two block-wise simplicity predicates.
//!
//! Every permutation of length at least 2 is an inflation of a unique simple
//! skeleton. When the skeleton is `12` or `21` the blocks are not unique, so
//! the tree uses the maximal form: skeleton `1..k` (or `k..1`) with every
//! block indecomposable in the same direction.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Window};

/// Some proper prefix `1..m` of positions holds exactly the values `1..m`.
pub fn is_sum_decomposable(p: &Permutation) -> bool {
    sum_cuts(p.values()).next().is_some()
}

/// Some proper prefix of length `m` holds exactly the values `n-m+1..n`.
pub fn is_skew_decomposable(p: &Permutation) -> bool {
    skew_cuts(p.values()).next().is_some()
}

/// Prefix lengths `m < n` at which `values` splits as a direct sum.
fn sum_cuts(values: &[usize]) -> impl Iterator<Item = usize> + '_ {
    let n = values.len();
    let mut hi = 0;
    values[..n.saturating_sub(1)]
        .iter()
        .enumerate()
        .filter_map(move |(i, &v)| {
            hi = hi.max(v);
            (hi == i + 1).then_some(i + 1)
        })
}

fn skew_cuts(values: &[usize]) -> impl Iterator<Item = usize> + '_ {
    let n = values.len();
    let mut lo = usize::MAX;
    values[..n.saturating_sub(1)]
        .iter()
        .enumerate()
        .filter_map(move |(i, &v)| {
            lo = lo.min(v);
            (lo == n - i).then_some(i + 1)
        })
}

/// Whether the entries of `values` (assumed to be an interval of some larger
/// permutation) split as `p1 + p2` or `p1 - p2`.
pub(crate) fn window_is_decomposable(values: &[usize]) -> bool {
    let len = values.len();
    if len < 2 {
        return false;
    }
    let base_lo = *values.iter().min().unwrap();
    let base_hi = base_lo + len - 1;
    let (mut lo, mut hi) = (usize::MAX, 0);
    for (i, &v) in values[..len - 1].iter().enumerate() {
        lo = lo.min(v);
        hi = hi.max(v);
        if hi == base_lo + i || lo + i == base_hi {
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeKind {
    /// Simple skeleton of length at least 4.
    Simple,
    /// Skeleton `12..k`.
    LinearPlus,
    /// Skeleton `k..21`.
    LinearMinus,
}

/// One level of the substitution decomposition: `p = skeleton[blocks]`,
/// with `windows[i]` the positions of `p` that block `i` occupies.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Substitution {
    pub kind: NodeKind,
    pub skeleton: Permutation,
    pub blocks: Vec<Permutation>,
    pub windows: Vec<Window>,
}

pub fn skeleton_decompose(p: &Permutation) -> Result<Substitution> {
    let n = p.len();
    if n < 2 {
        return Err(Error::input(
            "a permutation of length 1 has no decomposition",
        ));
    }
    let values = p.values();

    let linear = |kind: NodeKind, cuts: Vec<usize>| {
        let mut bounds = vec![0];
        bounds.extend(cuts);
        bounds.push(n);
        let windows: Vec<Window> = bounds
            .windows(2)
            .map(|b| Window::new(b[0] + 1, b[1] - b[0]))
            .collect();
        let k = windows.len();
        let skeleton = match kind {
            NodeKind::LinearPlus => Permutation::identity(k),
            _ => Permutation::decreasing(k),
        };
        let blocks = windows
            .iter()
            .map(|&w| p.pattern_of(w).expect("window inside p"))
            .collect();
        Substitution {
            kind,
            skeleton,
            blocks,
            windows,
        }
    };

    let cuts: Vec<usize> = sum_cuts(values).collect();
    if !cuts.is_empty() {
        return Ok(linear(NodeKind::LinearPlus, cuts));
    }
    let cuts: Vec<usize> = skew_cuts(values).collect();
    if !cuts.is_empty() {
        return Ok(linear(NodeKind::LinearMinus, cuts));
    }

    // Maximal proper intervals partition the positions once p is neither a
    // sum nor a skew sum.
    let proper: Vec<Window> = p
        .interval_windows()
        .into_iter()
        .filter(|w| w.len >= 2 && w.len < n)
        .collect();
    let mut windows = Vec::new();
    let mut pos = 1;
    while pos <= n {
        let widest = proper
            .iter()
            .filter(|w| w.start <= pos && w.end() >= pos)
            .max_by_key(|w| w.len)
            .copied();
        let w = match widest {
            Some(w) if w.start == pos => w,
            Some(w) => {
                return Err(Error::internal(format!(
                    "maximal intervals of {p} overlap at position {pos} ({w:?})"
                )))
            }
            None => Window::new(pos, 1),
        };
        windows.push(w);
        pos = w.end() + 1;
    }
    let reps: Vec<usize> = windows.iter().map(|w| values[w.start - 1]).collect();
    let skeleton = Permutation::standardize(&reps);
    if !skeleton.is_simple_ge4() {
        return Err(Error::internal(format!(
            "skeleton {skeleton} of {p} is not simple of length >= 4"
        )));
    }
    let blocks = windows
        .iter()
        .map(|&w| p.pattern_of(w).expect("window inside p"))
        .collect();
    Ok(Substitution {
        kind: NodeKind::Simple,
        skeleton,
        blocks,
        windows,
    })
}

/// Substitution decomposition tree. Windows refer to positions of the
/// permutation the tree was built from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecompTree {
    Leaf {
        window: Window,
    },
    Node {
        kind: NodeKind,
        skeleton: Permutation,
        window: Window,
        children: Vec<DecompTree>,
    },
}

pub fn decomp_tree(p: &Permutation) -> DecompTree {
    build_tree(p, 0)
}

fn build_tree(p: &Permutation, offset: usize) -> DecompTree {
    let window = Window::new(offset + 1, p.len());
    if p.len() == 1 {
        return DecompTree::Leaf { window };
    }
    let sub = skeleton_decompose(p).expect("decomposition of a valid permutation");
    let children = sub
        .blocks
        .iter()
        .zip(&sub.windows)
        .map(|(b, w)| build_tree(b, offset + w.start - 1))
        .collect();
    DecompTree::Node {
        kind: sub.kind,
        skeleton: sub.skeleton,
        window,
        children,
    }
}

impl DecompTree {
    pub fn window(&self) -> Window {
        match self {
            DecompTree::Leaf { window } | DecompTree::Node { window, .. } => *window,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, DecompTree::Leaf { .. })
    }

    /// Rebuilds the permutation by inflating skeletons bottom-up.
    pub fn to_permutation(&self) -> Permutation {
        match self {
            DecompTree::Leaf { .. } => Permutation::identity(1),
            DecompTree::Node {
                skeleton, children, ..
            } => {
                let blocks: Vec<Permutation> =
                    children.iter().map(DecompTree::to_permutation).collect();
                skeleton
                    .inflate(&blocks)
                    .expect("arity matches by construction")
            }
        }
    }

    /// Pre-order walk over internal nodes.
    pub fn internal_nodes(&self) -> Vec<&DecompTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if let DecompTree::Node { children, .. } = t {
                out.push(t);
                stack.extend(children.iter().rev());
            }
        }
        out
    }

    fn kind(&self) -> Option<NodeKind> {
        match self {
            DecompTree::Leaf { .. } => None,
            DecompTree::Node { kind, .. } => Some(*kind),
        }
    }
}

impl fmt::Display for DecompTree {
    /// `2413[3142,1,1,1]`; a node whose children are all leaves prints as its
    /// skeleton alone.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompTree::Leaf { .. } => f.write_str("1"),
            DecompTree::Node {
                skeleton, children, ..
            } => {
                write!(f, "{skeleton}")?;
                if children.iter().all(DecompTree::is_leaf) {
                    return Ok(());
                }
                f.write_str("[")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// No interval of length >= 2 (the whole permutation included) is a direct
/// or skew sum.
pub fn is_blockwise_simple_by_intervals(p: &Permutation) -> bool {
    let values = p.values();
    let n = values.len();
    for i in 0..n {
        let (mut lo, mut hi) = (values[i], values[i]);
        for j in i + 1..n {
            lo = lo.min(values[j]);
            hi = hi.max(values[j]);
            if hi - lo == j - i && window_is_decomposable(&values[i..=j]) {
                return false;
            }
        }
    }
    true
}

/// Length 1, or every internal node of the decomposition tree carries a
/// simple skeleton of length at least 4.
pub fn is_blockwise_simple_recursive(p: &Permutation) -> bool {
    decomp_tree(p)
        .internal_nodes()
        .iter()
        .all(|t| t.kind() == Some(NodeKind::Simple))
}

pub fn is_blockwise_simple(p: &Permutation) -> bool {
    is_blockwise_simple_by_intervals(p)
}
