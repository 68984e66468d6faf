//! Vertex-surface enumeration over all quad types.
//!
//! A nonzero `x >= 0` with `A_q x = 0` spans an extreme ray of `C(T, q)`
//! exactly when the columns on its support form a circuit: a minimal
//! linearly dependent set. The search walks the tetrahedra in order and, for
//! each one, either leaves it empty or picks one of its three quad columns.
//! Only linearly independent selections are extended; the first column that
//! makes a selection dependent closes it, and the selection is recorded when
//! its unique dependency is supported everywhere with a single sign.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::SurfaceVector;
use crate::error::{Error, Result};
use crate::gluing::{rotate_exponents, GluingSystem, QuadType};
use crate::linalg::{kernel_basis, make_primitive, IntMatrix};

/// Default refusal threshold on the tetrahedron count.
pub const DEFAULT_CAP: usize = 16;

/// Depth of the prefix tree handed out to worker threads.
const SPLIT_DEPTH: usize = 3;

pub(crate) fn all_quad_types(n: usize) -> impl Iterator<Item = QuadType> {
    let total = 3usize.pow(n as u32);
    (0..total).map(move |mut k| {
        let mut t = vec![0u8; n];
        for slot in t.iter_mut() {
            *slot = (k % 3) as u8;
            k /= 3;
        }
        QuadType::new(t).expect("digits are 0..3")
    })
}

struct Search {
    n: usize,
    /// `columns[i][t]`: column of tetrahedron `i` under quad type `t`.
    columns: Vec<[Vec<BigInt>; 3]>,
}

/// Independent column set kept in reduced echelon form: every vector is zero
/// at the pivots of the others.
#[derive(Clone, Default)]
struct Echelon {
    vecs: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    /// Reduces `v` against the basis; `None` if it is dependent.
    fn reduce(&self, v: &[BigInt]) -> Option<(usize, Vec<BigInt>)> {
        let mut v = v.to_vec();
        for (p, b) in &self.vecs {
            if v[*p].is_zero() {
                continue;
            }
            let (bp, vp) = (b[*p].clone(), v[*p].clone());
            for (x, y) in v.iter_mut().zip(b) {
                *x = &bp * &*x - &vp * y;
            }
            make_primitive(&mut v);
        }
        let pivot = v.iter().position(|x| !x.is_zero())?;
        Some((pivot, v))
    }

    fn with(&self, pivot: usize, v: Vec<BigInt>) -> Self {
        let mut vecs = Vec::with_capacity(self.vecs.len() + 1);
        for (p, b) in &self.vecs {
            if b[pivot].is_zero() {
                vecs.push((*p, b.clone()));
                continue;
            }
            let (vp, bp) = (&v[pivot], &b[pivot]);
            let mut nb: Vec<BigInt> = b.iter().zip(&v).map(|(x, y)| vp * x - bp * y).collect();
            make_primitive(&mut nb);
            vecs.push((*p, nb));
        }
        vecs.push((pivot, v));
        Self { vecs }
    }
}

#[derive(Clone, Default)]
struct Node {
    chosen: Vec<(usize, u8)>,
    basis: Echelon,
}

enum Step {
    Independent(Node),
    Closed(Option<SurfaceVector>),
}

impl Search {
    fn new(sys: &GluingSystem) -> Self {
        let n = sys.num_tetrahedra();
        let columns = (0..n)
            .map(|i| {
                [0u8, 1, 2].map(|t| {
                    sys.edges()
                        .iter()
                        .map(|row| BigInt::from(rotate_exponents(row.a[i], row.b[i], t).0))
                        .collect()
                })
            })
            .collect();
        Self { n, columns }
    }

    fn step(&self, node: &Node, tet: usize, t: u8) -> Step {
        let col = &self.columns[tet][t as usize];
        match node.basis.reduce(col) {
            Some((pivot, v)) => {
                let mut chosen = node.chosen.clone();
                chosen.push((tet, t));
                Step::Independent(Node {
                    chosen,
                    basis: node.basis.with(pivot, v),
                })
            }
            None => Step::Closed(self.circuit_ray(&node.chosen, (tet, t))),
        }
    }

    /// The ray of the circuit `chosen ∪ {last}`, if it is a positive circuit.
    fn circuit_ray(&self, chosen: &[(usize, u8)], last: (usize, u8)) -> Option<SurfaceVector> {
        let support: Vec<(usize, u8)> = chosen.iter().copied().chain([last]).collect();
        let rows = self.columns.first().map_or(0, |c| c[0].len());
        let mut m = IntMatrix::zeros(rows, support.len());
        for (j, &(i, t)) in support.iter().enumerate() {
            for (r, x) in self.columns[i][t as usize].iter().enumerate() {
                m.set(r, j, x.clone());
            }
        }
        let kernel = kernel_basis(&m);
        debug_assert_eq!(kernel.len(), 1);
        let mut k = kernel.into_iter().next()?;
        if k.iter().any(Zero::is_zero) {
            return None;
        }
        let positive = k[0].is_positive();
        if k.iter().any(|x| x.is_positive() != positive) {
            return None;
        }
        if !positive {
            k.iter_mut().for_each(|x| *x = -&*x);
        }
        let mut weights = vec![BigInt::zero(); self.n];
        let mut types = vec![0u8; self.n];
        for (&(i, t), w) in support.iter().zip(k) {
            weights[i] = w;
            types[i] = t;
        }
        let q = QuadType::new(types).expect("types in range");
        Some(SurfaceVector::from_big(q, &weights))
    }

    /// Sequential depth-first search below `node`, starting at `tet`.
    fn dfs(&self, node: &Node, tet: usize, out: &mut Vec<SurfaceVector>) {
        if tet == self.n {
            return;
        }
        self.dfs(node, tet + 1, out);
        for t in 0..3 {
            match self.step(node, tet, t) {
                Step::Independent(child) => self.dfs(&child, tet + 1, out),
                Step::Closed(ray) => out.extend(ray),
            }
        }
    }

    /// Expands the first `depth` levels, returning the open nodes with the
    /// tetrahedron each resumes from.
    fn frontier(&self, depth: usize, out: &mut Vec<SurfaceVector>) -> Vec<(Node, usize)> {
        let mut level = vec![(Node::default(), 0usize)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (node, tet) in level {
                if tet == self.n {
                    next.push((node, tet));
                    continue;
                }
                next.push((node.clone(), tet + 1));
                for t in 0..3 {
                    match self.step(&node, tet, t) {
                        Step::Independent(child) => next.push((child, tet + 1)),
                        Step::Closed(ray) => out.extend(ray),
                    }
                }
            }
            level = next;
        }
        level
    }
}

/// All vertex surfaces of the admissible solution cone, deduplicated on
/// `q_coords` and sorted. Quad types are 0 wherever the weight is 0.
pub fn enumerate_vertex_surfaces(sys: &GluingSystem) -> Result<Vec<SurfaceVector>> {
    enumerate_vertex_surfaces_with_cap(sys, DEFAULT_CAP)
}

pub fn enumerate_vertex_surfaces_with_cap(sys: &GluingSystem, cap: usize) -> Result<Vec<SurfaceVector>> {
    let n = sys.num_tetrahedra();
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let search = Search::new(sys);
    let mut out = Vec::new();
    let frontier = search.frontier(SPLIT_DEPTH.min(n), &mut out);
    let found: Vec<Vec<SurfaceVector>> = frontier
        .par_iter()
        .map(|(node, tet)| {
            let mut local = Vec::new();
            search.dfs(node, *tet, &mut local);
            local
        })
        .collect();
    out.extend(found.into_iter().flatten());
    out.sort();
    out.dedup_by(|a, b| a.q_coords() == b.q_coords());
    Ok(out)
}
