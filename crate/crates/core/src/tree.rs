//! n-iterates of a single generator `x` under one binary operation, stored as
//! full binary trees in a packed preorder code.
//!
//! The code of a tree is its preorder walk with `1` for an internal node and
//! `0` for a leaf, so an order-`n` tree has a code of exactly `2n + 1` symbols.
//! Leaves appear in the code in left-to-right order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest order whose code fits in the packed representation.
pub const MAX_ORDER: usize = 31;

/// Default cap on exhaustive enumeration. `S_16` is already about 3.5e7 trees.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// One n-iterate: a full binary tree with `order` internal nodes.
///
/// The code occupies the low `2 * order + 1` bits of `code`, first symbol in
/// the most significant position. Equality and hashing are by code.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IterateTree {
    order: u8,
    code: u64,
}

impl IterateTree {
    /// The bare generator `x`.
    pub const LEAF: IterateTree = IterateTree { order: 0, code: 0 };

    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Number of symbols in the code, `2n + 1`.
    pub fn code_len(&self) -> usize {
        2 * self.order as usize + 1
    }

    /// The packed code, most significant symbol first.
    pub fn code_bits(&self) -> u64 {
        self.code
    }

    pub fn is_leaf(&self) -> bool {
        self.order == 0
    }

    fn symbol(&self, pos: usize) -> bool {
        (self.code >> (self.code_len() - 1 - pos)) & 1 == 1
    }

    /// The code as a string of `0`/`1` characters.
    pub fn code_string(&self) -> String {
        (0..self.code_len())
            .map(|p| if self.symbol(p) { '1' } else { '0' })
            .collect()
    }

    /// Parses a `0`/`1` code string, rejecting anything that is not a full binary tree.
    pub fn from_code_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > 2 * MAX_ORDER + 1 {
            return Err(Error::arg(format!("code length {} out of range", s.len())));
        }
        let mut code = 0u64;
        let mut need = 1i64;
        let mut ones = 0usize;
        for (i, c) in s.chars().enumerate() {
            if need == 0 {
                return Err(Error::arg(format!("code {s:?} has trailing symbols at {i}")));
            }
            code <<= 1;
            match c {
                '1' => {
                    code |= 1;
                    ones += 1;
                    need += 1;
                }
                '0' => need -= 1,
                _ => return Err(Error::arg(format!("code {s:?} contains {c:?}"))),
            }
        }
        if need != 0 {
            return Err(Error::arg(format!("code {s:?} is incomplete")));
        }
        Ok(IterateTree { order: ones as u8, code })
    }

    /// Left and right subtrees, or `None` for the leaf.
    pub fn children(&self) -> Option<(IterateTree, IterateTree)> {
        if self.is_leaf() {
            return None;
        }
        let len = self.code_len();
        // the left subtree starts at 1 and ends where its pending-subtree count hits zero
        let mut need = 1i64;
        let mut ones = 0usize;
        let mut pos = 1;
        while need > 0 {
            if self.symbol(pos) {
                need += 1;
                ones += 1;
            } else {
                need -= 1;
            }
            pos += 1;
        }
        let right_len = len - pos;
        let left_len = pos - 1;
        let right_code = self.code & mask(right_len);
        let left_code = (self.code >> right_len) & mask(left_len);
        Some((
            IterateTree { order: ones as u8, code: left_code },
            IterateTree { order: (self.order as usize - ones - 1) as u8, code: right_code },
        ))
    }

    /// The fully parenthesized word over `x` and `·`, outermost product unbracketed.
    pub fn to_word(&self) -> String {
        let mut out = String::with_capacity(4 * self.code_len());
        self.write_word(&mut out, false);
        out
    }

    fn write_word(&self, out: &mut String, bracket: bool) {
        match self.children() {
            None => out.push('x'),
            Some((l, r)) => {
                if bracket {
                    out.push('(');
                }
                l.write_word(out, true);
                out.push('·');
                r.write_word(out, true);
                if bracket {
                    out.push(')');
                }
            }
        }
    }

    /// Whether the root's left child is the bare generator.
    pub fn root_left_is_leaf(&self) -> bool {
        self.order > 0 && !self.symbol(1)
    }

    /// Whether the root's right child is the bare generator.
    pub fn root_right_is_leaf(&self) -> bool {
        match self.children() {
            Some((_, r)) => r.is_leaf(),
            None => false,
        }
    }
}

fn mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Canonical order: codes compared symbol by symbol with `1` before `0`.
///
/// For codes of equal length this is descending numeric order on the packed value.
impl Ord for IterateTree {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.order == other.order {
            return other.code.cmp(&self.code);
        }
        let a = self.code_string();
        let b = other.code_string();
        // different orders: lexicographic with 1 < 0, prefix first
        for (x, y) in a.bytes().zip(b.bytes()) {
            if x != y {
                return y.cmp(&x);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for IterateTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IterateTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IterateTree({})", self.to_word())
    }
}

impl fmt::Display for IterateTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

/// The product `l · r`: a new root over the two operands.
///
/// # Panics
///
/// If the combined order exceeds [`MAX_ORDER`].
pub fn product(l: IterateTree, r: IterateTree) -> IterateTree {
    let order = l.order() + r.order() + 1;
    assert!(order <= MAX_ORDER, "product order {order} exceeds {MAX_ORDER}");
    let rl = r.code_len();
    let ll = l.code_len();
    IterateTree {
        order: order as u8,
        code: (1u64 << (ll + rl)) | (l.code << rl) | r.code,
    }
}

/// Replaces leaf `i` (1-based, left to right) of `p` with `x·x`.
pub fn substitute_leaf(p: IterateTree, i: usize) -> Result<IterateTree> {
    let leaves = p.order() + 1;
    if i == 0 || i > leaves {
        return Err(Error::arg(format!(
            "leaf index {i} out of range 1..={leaves} for order {}",
            p.order()
        )));
    }
    if p.order() + 1 > MAX_ORDER {
        return Err(Error::ResourceLimit {
            what: "iterate order",
            requested: p.order() + 1,
            cap: MAX_ORDER,
        });
    }
    let len = p.code_len();
    let mut seen = 0;
    let mut pos = 0;
    for q in 0..len {
        if !p.symbol(q) {
            seen += 1;
            if seen == i {
                pos = q;
                break;
            }
        }
    }
    let after = len - pos - 1;
    let high = p.code >> (after + 1);
    let low = p.code & mask(after);
    Ok(IterateTree {
        order: p.order + 1,
        code: (((high << 3) | 0b100) << after) | low,
    })
}

/// Number of internal nodes whose two children are both leaves.
pub fn cherry_count(t: IterateTree) -> Result<usize> {
    if t.is_leaf() {
        return Err(Error::arg("cherry count of the bare generator"));
    }
    // in preorder a cherry is exactly the pattern 1,0,0
    let len = t.code_len();
    let c = t.code;
    let hits = c & !(c << 1) & !(c << 2) & mask(len);
    // the final two symbols can never open a cherry, so the shifted-in zeros are harmless
    Ok(hits.count_ones() as usize)
}

/// Every order-`n` tree exactly once, in canonical order (codes ascending with `1` before `0`).
pub fn enumerate_iterates(n: usize, cap: usize) -> Result<Vec<IterateTree>> {
    let cap = cap.min(MAX_ORDER);
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "enumeration order",
            requested: n,
            cap,
        });
    }
    let mut out = Vec::new();
    let len = 2 * n + 1;
    fn walk(n: usize, len: usize, depth: usize, code: u64, ones: usize, need: usize, out: &mut Vec<IterateTree>) {
        if depth == len {
            out.push(IterateTree { order: n as u8, code });
            return;
        }
        if ones < n {
            walk(n, len, depth + 1, (code << 1) | 1, ones + 1, need + 1, out);
        }
        // a 0 may close the tree only once every internal node is placed
        if need > 1 || ones == n {
            walk(n, len, depth + 1, code << 1, ones, need - 1, out);
        }
    }
    walk(n, len, 0, 0, 0, 1, &mut out);
    Ok(out)
}

/// Position of `t` in an enumeration produced by [`enumerate_iterates`].
pub fn index_of(universe: &[IterateTree], t: IterateTree) -> Option<usize> {
    universe.binary_search_by(|probe| t.code.cmp(&probe.code)).ok()
}
