//! Finite simple graphs as bitset adjacency matrices.
//!
//! Edge-list text format: a header `n m`, then `m` lines `i j` with
//! `0 <= i < j < n` in ascending order. Lines starting with `#` are ignored
//! on input.

use std::fmt::Write;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self { n, words, rows: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(Error::Parse(format!("bad edge {i} {j} for {n} vertices")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row `i` as `words()` 64-bit blocks, vertex `j` at bit `j % 64` of
    /// block `j / 64`.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j, "no loops");
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
        self.rows[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (i, j) in edges {
            writeln!(out, "{i} {j}").expect("string write");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
        let nums = |l: &str| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad number `{t}`"))))
                .collect()
        };
        let [n, m] = nums(header)?[..] else {
            return Err(Error::Parse(format!("bad header `{header}`")));
        };
        let mut edges = Vec::with_capacity(m);
        for l in lines {
            let [i, j] = nums(l)?[..] else {
                return Err(Error::Parse(format!("bad edge line `{l}`")));
            };
            if i >= j {
                return Err(Error::Parse(format!("edge `{l}` must satisfy i < j")));
            }
            edges.push((i, j));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header says {m} edges, found {}", edges.len())));
        }
        Self::from_edges(n, &edges)
    }
}
