//! Rooted trees of stacked rectangles.

use serde::{Deserialize, Serialize};

/// One rectangle: its two upper and two lower corner labels.
///
/// In a ground-truth tree the pairs are `(left, right)`; in a reconstructed
/// tree they are sorted by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactNode {
    pub top: (usize, usize),
    pub bottom: (usize, usize),
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

impl ContactNode {
    pub fn labels(&self) -> [usize; 4] {
        [self.top.0, self.top.1, self.bottom.0, self.bottom.1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactTree {
    pub nodes: Vec<ContactNode>,
    pub root: usize,
}

impl ContactTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.nodes[v].children.is_empty()
    }

    /// Leaves in depth-first order following the stored child order.
    pub fn leaves(&self) -> Vec<usize> {
        self.preorder().into_iter().filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v].children.iter().rev());
        }
        out
    }

    /// Number of nodes in the subtree of every node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for &v in self.preorder().iter().rev() {
            if let Some(p) = self.nodes[v].parent {
                size[p] += size[v];
            }
        }
        size
    }

    /// Depth of every node, the root at 0.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for v in self.preorder() {
            for &c in &self.nodes[v].children {
                depth[c] = depth[v] + 1;
            }
        }
        depth
    }

    pub fn is_binary(&self) -> bool {
        self.nodes.iter().all(|n| n.children.len() <= 2)
    }

    /// Node owning each label, for labels `0..n`.
    pub fn node_of_label(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (v, node) in self.nodes.iter().enumerate() {
            for l in node.labels() {
                if l < n {
                    owner[l] = Some(v);
                }
            }
        }
        owner
    }

    /// Order-free encoding; two trees get the same string iff they are equal
    /// as unordered rooted trees whose nodes carry the same top and bottom
    /// label pairs.
    pub fn canonical_form(&self) -> String {
        self.canonical_at(self.root)
    }

    fn canonical_at(&self, v: usize) -> String {
        let node = &self.nodes[v];
        let pair = |(a, b): (usize, usize)| (a.min(b), a.max(b));
        let (t, b) = (pair(node.top), pair(node.bottom));
        let mut kids: Vec<String> = node.children.iter().map(|&c| self.canonical_at(c)).collect();
        kids.sort();
        format!("[{}-{}/{}-{}:{}]", t.0, t.1, b.0, b.1, kids.concat())
    }
}
