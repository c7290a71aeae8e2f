//! Truncated rooted q-homogeneous trees `B_n(T_q)`.
//!
//! Vertices are addressed by `(generation, offset)` with `offset < q^generation`.
//! Child `j` of `(g, k)` is `(g + 1, q·k + j)`, so the offset of a vertex is its
//! descent path from the root read as a base-q numeral. Vertices are enumerated
//! in level order: every generation occupies a contiguous index range.

use std::ops::Range;

use crate::error::{Error, Result};

/// Arity and depth of a truncated tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeShape {
    q: usize,
    depth: usize,
    count: usize,
}

/// A vertex of `B_n(T_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub generation: usize,
    pub offset: usize,
}

/// Child indices taken on the way down from an ancestor, first step first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    digits: Vec<usize>,
}

/// Position of two vertices relative to the ancestor partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparability {
    Equal,
    /// `u` is a strict ancestor of `v`; the path descends from `u` to `v`.
    UAncestorOfV { distance: usize, path: PathWord },
    /// `v` is a strict ancestor of `u`; the path descends from `v` to `u`.
    VAncestorOfU { distance: usize, path: PathWord },
    Incomparable,
}

impl Comparability {
    pub fn is_comparable(&self) -> bool {
        !matches!(self, Comparability::Incomparable)
    }
}

impl Vertex {
    pub const ROOT: Vertex = Vertex {
        generation: 0,
        offset: 0,
    };

    pub fn new(generation: usize, offset: usize) -> Self {
        Vertex { generation, offset }
    }

    /// Child `j` in a tree of arity `q` (no depth check).
    pub fn child(self, q: usize, j: usize) -> Vertex {
        debug_assert!(j < q);
        Vertex {
            generation: self.generation + 1,
            offset: self.offset * q + j,
        }
    }

    pub fn parent(self, q: usize) -> Option<Vertex> {
        (self.generation > 0).then(|| Vertex {
            generation: self.generation - 1,
            offset: self.offset / q,
        })
    }

    /// Index of this vertex among its siblings.
    pub fn child_index(self, q: usize) -> usize {
        self.offset % q
    }

    /// Ancestor `m` generations up, `None` if `m` exceeds the generation.
    pub fn ancestor(self, q: usize, m: usize) -> Option<Vertex> {
        if m > self.generation {
            return None;
        }
        Some(Vertex {
            generation: self.generation - m,
            offset: self.offset / q.pow(m as u32),
        })
    }
}

impl PathWord {
    pub fn new(digits: Vec<usize>) -> Self {
        PathWord { digits }
    }

    /// The `m` descent digits leading to `offset` from its ancestor `m` levels up.
    pub fn from_offset(offset: usize, q: usize, m: usize) -> Self {
        let mut digits = vec![0; m];
        let mut k = offset;
        for d in digits.iter_mut().rev() {
            *d = k % q;
            k /= q;
        }
        PathWord { digits }
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Offset of the descendant reached from an ancestor at `ancestor_offset`.
    pub fn descend(&self, ancestor_offset: usize, q: usize) -> usize {
        self.digits
            .iter()
            .fold(ancestor_offset, |k, &d| k * q + d)
    }
}

impl TreeShape {
    pub fn new(q: usize, depth: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidShape("arity q must be at least 1".into()));
        }
        let mut count: usize = 0;
        let mut level: usize = 1;
        for g in 0..=depth {
            count = count
                .checked_add(level)
                .ok_or_else(|| Error::InvalidShape(format!("vertex count overflows at generation {g}")))?;
            if g < depth {
                level = level
                    .checked_mul(q)
                    .ok_or_else(|| Error::InvalidShape(format!("generation {} too large", g + 1)))?;
            }
        }
        Ok(TreeShape { q, depth, count })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `|B_n(T_q)|`.
    pub fn vertex_count(&self) -> usize {
        self.count
    }

    /// Number of vertices in generation `g`, i.e. `q^g`.
    pub fn generation_size(&self, g: usize) -> usize {
        self.q.pow(g as u32)
    }

    /// Linear index of the first vertex of generation `g`.
    pub fn generation_start(&self, g: usize) -> usize {
        if self.q == 1 {
            g
        } else {
            (self.q.pow(g as u32) - 1) / (self.q - 1)
        }
    }

    pub fn generation_range(&self, g: usize) -> Range<usize> {
        let start = self.generation_start(g);
        start..start + self.generation_size(g)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.generation <= self.depth && v.offset < self.generation_size(v.generation)
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                generation: v.generation,
                offset: v.offset,
            })
        }
    }

    /// Level-order index: `(q^g − 1)/(q − 1) + k`.
    pub fn linear_index(&self, v: Vertex) -> Result<usize> {
        self.check(v)?;
        Ok(self.generation_start(v.generation) + v.offset)
    }

    /// Inverse of [`TreeShape::linear_index`].
    pub fn vertex_at(&self, index: usize) -> Result<Vertex> {
        if index >= self.count {
            return Err(Error::VertexOutOfRange {
                generation: self.depth + 1,
                offset: index,
            });
        }
        let mut g = 0;
        let mut start = 0;
        let mut size = 1;
        while index >= start + size {
            start += size;
            size *= self.q;
            g += 1;
        }
        Ok(Vertex::new(g, index - start))
    }

    /// Generation of every vertex, indexed by linear index.
    pub fn generations(&self) -> Vec<usize> {
        (0..=self.depth)
            .flat_map(|g| std::iter::repeat(g).take(self.generation_size(g)))
            .collect()
    }

    /// All vertices in level order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..=self.depth)
            .flat_map(move |g| (0..self.generation_size(g)).map(move |k| Vertex::new(g, k)))
    }

    /// Offsets at generation `g + m` of the descendants of `v` at distance `m`.
    pub fn descendants_range(&self, v: Vertex, m: usize) -> Result<Range<usize>> {
        self.check(v)?;
        if v.generation + m > self.depth {
            return Err(Error::DepthOverflow {
                generation: v.generation,
                steps: m,
                depth: self.depth,
            });
        }
        let width = self.q.pow(m as u32);
        Ok(v.offset * width..(v.offset + 1) * width)
    }

    /// Ancestor distance if `anc` is an ancestor of (or equal to) `v`.
    pub fn ancestor_distance(&self, anc: Vertex, v: Vertex) -> Option<usize> {
        if anc.generation > v.generation {
            return None;
        }
        let m = v.generation - anc.generation;
        (v.offset / self.q.pow(m as u32) == anc.offset).then_some(m)
    }

    /// Relation of `u` and `v` in the ancestor partial order.
    pub fn comparability(&self, u: Vertex, v: Vertex) -> Comparability {
        if u == v {
            return Comparability::Equal;
        }
        if let Some(m) = self.ancestor_distance(u, v) {
            return Comparability::UAncestorOfV {
                distance: m,
                path: PathWord::from_offset(v.offset, self.q, m),
            };
        }
        if let Some(m) = self.ancestor_distance(v, u) {
            return Comparability::VAncestorOfU {
                distance: m,
                path: PathWord::from_offset(u.offset, self.q, m),
            };
        }
        Comparability::Incomparable
    }

    /// Number of ordered comparable pairs `(u, v)` in `B_n`, including `u = v`.
    pub fn comparable_pair_count(&self) -> usize {
        // each vertex at generation g has g strict ancestors
        let strict: usize = (0..=self.depth)
            .map(|g| g * self.generation_size(g))
            .sum();
        self.count + 2 * strict
    }
}
