//! Orthogonality graphs, their triad/dyad decomposition, and index
//! permutations induced by cube rotations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::catalog::CATALOG_SIZE;
use crate::error::{Error, Result};
use crate::majorana::{overlap2_mpairs, MPair};
use crate::rays::Ray;
use crate::scalar::{ExactComplex, QRoot2, Real, Scalar};

/// Anything that can report orthogonality between its 1-based entries.
pub trait OrthoSource {
    fn entry_count(&self) -> usize;
    /// Orthogonality of entries `i` and `j` (0-based).
    fn orthogonal(&self, i: usize, j: usize, tol: f64) -> bool;
}

impl<S: Scalar> OrthoSource for [Ray<S>] {
    fn entry_count(&self) -> usize {
        self.len()
    }
    fn orthogonal(&self, i: usize, j: usize, tol: f64) -> bool {
        self[i].is_orthogonal(&self[j], tol)
    }
}

impl<T: Real> OrthoSource for [MPair<T>] {
    fn entry_count(&self) -> usize {
        self.len()
    }
    fn orthogonal(&self, i: usize, j: usize, tol: f64) -> bool {
        overlap2_mpairs(&self[i], &self[j]).is_negligible(tol * tol)
    }
}

/// Unordered vertex pair `(lo, hi)`, 1-based.
pub type Edge = (u8, u8);

pub fn edge(a: u8, b: u8) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Orthogonality ("Kochen-Specker") graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoGraph {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl OrthoGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a == 0 || b == 0 || a as usize > n || b as usize > n {
                return Err(Error::InvalidArgument(format!("bad edge {{{a}, {b}}} for {n} vertices")));
            }
            set.insert(edge(a, b));
        }
        Ok(OrthoGraph { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        self.edges.contains(&edge(a, b))
    }

    pub fn neighbors(&self, v: u8) -> impl Iterator<Item = u8> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn degree(&self, v: u8) -> usize {
        self.neighbors(v).count()
    }

    /// Edges present in exactly one of the two graphs.
    pub fn symmetric_difference(&self, other: &OrthoGraph) -> Vec<Edge> {
        self.edges.symmetric_difference(&other.edges).copied().collect()
    }
}

/// Orthogonality graph of a 33-entry catalog.
pub fn build_graph<C: OrthoSource + ?Sized>(catalog: &C, tol: f64) -> Result<OrthoGraph> {
    let n = catalog.entry_count();
    if n != CATALOG_SIZE {
        return Err(Error::CatalogSize { expected: CATALOG_SIZE, found: n });
    }
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if catalog.orthogonal(i, j, tol) {
                edges.insert((i as u8 + 1, j as u8 + 1));
            }
        }
    }
    Ok(OrthoGraph { n, edges })
}

/// Triangles (triads) and triangle-free edges (dyads) of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriadDyadDecomposition {
    pub triads: Vec<[u8; 3]>,
    pub dyads: Vec<[u8; 2]>,
}

impl TriadDyadDecomposition {
    /// Sorts members and lists so that equality is set equality.
    pub fn canonical(mut self) -> Self {
        for t in &mut self.triads {
            t.sort_unstable();
        }
        for d in &mut self.dyads {
            d.sort_unstable();
        }
        self.triads.sort_unstable();
        self.dyads.sort_unstable();
        self
    }

    pub fn edge_count(&self) -> usize {
        3 * self.triads.len() + self.dyads.len()
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for &[a, b, c] in &self.triads {
            out.extend([edge(a, b), edge(a, c), edge(b, c)]);
        }
        for &[a, b] in &self.dyads {
            out.insert(edge(a, b));
        }
        out
    }

    pub fn contains_triad(&self, mut t: [u8; 3]) -> bool {
        t.sort_unstable();
        self.triads.contains(&t)
    }

    pub fn contains_dyad(&self, mut d: [u8; 2]) -> bool {
        d.sort_unstable();
        self.dyads.contains(&d)
    }
}

pub fn decompose(g: &OrthoGraph) -> Result<TriadDyadDecomposition> {
    let n = g.vertex_count() as u8;
    let mut triads = Vec::new();
    let mut covered: BTreeSet<Edge> = BTreeSet::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..=n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    for e in [(a, b), (a, c), (b, c)] {
                        if !covered.insert(e) {
                            return Err(Error::AmbiguousDecomposition(e.0, e.1));
                        }
                    }
                    triads.push([a, b, c]);
                }
            }
        }
    }
    let dyads = g.edges().iter().filter(|e| !covered.contains(e)).map(|&(a, b)| [a, b]).collect();
    Ok(TriadDyadDecomposition { triads, dyads }.canonical())
}

/// The common orthogonality table of the Peres and Penrose rays.
pub fn reference_decomposition() -> TriadDyadDecomposition {
    #[rustfmt::skip]
    let triads = vec![
        [1, 2, 3], [1, 4, 5], [1, 26, 33], [1, 29, 30], [2, 6, 7], [2, 22, 32], [2, 25, 31], [3, 8, 9],
        [3, 23, 28], [3, 24, 27], [4, 10, 13], [5, 11, 12], [6, 14, 17], [7, 15, 16], [8, 18, 21], [9, 19, 20],
    ];
    #[rustfmt::skip]
    let dyads = vec![
        [10, 24], [10, 25], [11, 23], [11, 25], [12, 22], [12, 24], [13, 22], [13, 23],
        [14, 28], [14, 29], [15, 27], [15, 29], [16, 26], [16, 28], [17, 26], [17, 27],
        [18, 32], [18, 33], [19, 31], [19, 33], [20, 30], [20, 32], [21, 30], [21, 31],
    ];
    TriadDyadDecomposition { triads, dyads }.canonical()
}

/// A bijection on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexPermutation {
    /// `images[i - 1] = π(i)`.
    images: Vec<u8>,
}

impl IndexPermutation {
    pub fn identity(n: usize) -> Self {
        IndexPermutation { images: (1..=n as u8).collect() }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidArgument(format!("not a permutation of 1..={n}")));
            }
        }
        Ok(IndexPermutation { images })
    }

    /// Swaps two points of the identity.
    pub fn transposition(n: usize, a: u8, b: u8) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a as usize - 1, b as usize - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &IndexPermutation) -> IndexPermutation {
        IndexPermutation { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn inverse(&self) -> IndexPermutation {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u8 + 1;
        }
        IndexPermutation { images }
    }

    pub fn maps_set_onto(&self, from: &[u8], to: &[u8]) -> bool {
        let image: BTreeSet<u8> = from.iter().map(|&i| self.apply(i)).collect();
        image == to.iter().copied().collect()
    }
}

/// Does `p` map the edge set of `g` onto itself?
pub fn is_automorphism(p: &IndexPermutation, g: &OrthoGraph) -> bool {
    p.len() == g.vertex_count() && g.edges().iter().all(|&(a, b)| g.has_edge(p.apply(a), p.apply(b)))
}

/// A proper rotation with integer entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rotation {
    pub matrix: [[i64; 3]; 3],
}

impl Rotation {
    pub fn new(matrix: [[i64; 3]; 3]) -> Result<Self> {
        let m = matrix;
        for i in 0..3 {
            for j in 0..3 {
                let d: i64 = (0..3).map(|k| m[i][k] * m[j][k]).sum();
                if d != i64::from(i == j) {
                    return Err(Error::NotARotation);
                }
            }
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det != 1 {
            return Err(Error::NotARotation);
        }
        Ok(Rotation { matrix })
    }

    pub fn identity() -> Self {
        Rotation { matrix: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] }
    }

    /// 120° about (1,1,1): x̂ → ŷ → ẑ → x̂.
    pub fn about_111() -> Self {
        Rotation { matrix: [[0, 0, 1], [1, 0, 0], [0, 1, 0]] }
    }

    /// `quarter_turns · 90°` about the x axis, counterclockwise.
    pub fn about_x(quarter_turns: u32) -> Self {
        let mut r = Self::identity();
        for _ in 0..quarter_turns % 4 {
            r = r.then(&Rotation { matrix: [[1, 0, 0], [0, 0, -1], [0, 1, 0]] });
        }
        r
    }

    /// The 24 proper rotations of the cube, as signed permutation matrices.
    pub fn cube_group() -> Vec<Rotation> {
        const AXES: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(24);
        for cols in AXES {
            for signs in 0..8u32 {
                let mut m = [[0i64; 3]; 3];
                for (row, &col) in cols.iter().enumerate() {
                    m[row][col] = if signs >> row & 1 == 1 { -1 } else { 1 };
                }
                if let Ok(r) = Rotation::new(m) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// `other · self`: apply `self` first.
    pub fn then(&self, other: &Rotation) -> Rotation {
        let (a, b) = (other.matrix, self.matrix);
        Rotation { matrix: std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum())) }
    }
}

/// Catalog items a rotation can act on.
pub trait Rotatable: Sized {
    /// Exact identity of catalog items: projective for rays, unordered
    /// directions for M-pairs.
    type Key: Ord;
    fn rotated(&self, r: &Rotation) -> Result<Self>;
    fn key(&self) -> Self::Key;
}

impl Rotatable for Ray<ExactComplex> {
    type Key = [(QRoot2, QRoot2); 3];
    fn rotated(&self, r: &Rotation) -> Result<Self> {
        let c = self.components();
        let c = r.matrix.map(|row| {
            row.iter().zip(c).fold(ExactComplex::zero(), |acc, (&m, z)| match m {
                0 => acc,
                1 => acc + z.clone(),
                -1 => acc - z.clone(),
                m => acc + ExactComplex::from_int(m) * z.clone(),
            })
        });
        let ray = Ray::new(c)?;
        Ok(match self.index() {
            Some(i) => ray.with_index(i),
            None => ray,
        })
    }
    fn key(&self) -> Self::Key {
        let c = self.components();
        let lead = c.iter().find(|z| !z.is_zero()).expect("rays are nonzero").clone();
        c.clone().map(|z| {
            let q = z.checked_div(&lead).expect("nonzero lead");
            (q.re, q.im)
        })
    }
}

impl Rotatable for MPair<QRoot2> {
    type Key = [[QRoot2; 3]; 2];
    fn rotated(&self, r: &Rotation) -> Result<Self> {
        self.rotate(&r.matrix)
    }
    fn key(&self) -> Self::Key {
        let mut k = [self.first.unit(), self.second.unit()];
        k.sort();
        k
    }
}

/// The permutation `π` with `rotation · item(i) ≅ item(π(i))`.
pub fn induced_permutation<T: Rotatable>(rotation: &Rotation, catalog: &[T]) -> Result<IndexPermutation> {
    let rotation = Rotation::new(rotation.matrix)?;
    let index: BTreeMap<T::Key, u8> = catalog.iter().zip(1u8..).map(|(c, i)| (c.key(), i)).collect();
    let mut images = Vec::with_capacity(catalog.len());
    for (item, i) in catalog.iter().zip(1u8..) {
        let moved = item.rotated(&rotation)?.key();
        images.push(*index.get(&moved).ok_or(Error::NotClosed(i))?);
    }
    IndexPermutation::from_images(images).map_err(|_| Error::NotClosed(0))
}

/// Index permutations induced by those cube rotations that map the catalog
/// onto itself.
pub fn cube_symmetries<T: Rotatable>(catalog: &[T]) -> Vec<IndexPermutation> {
    Rotation::cube_group().iter().filter_map(|r| induced_permutation(r, catalog).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::peres_rays;
    use crate::scalar::DEFAULT_TOL;

    #[test]
    fn reference_table_shape() {
        let t = reference_decomposition();
        assert_eq!(t.triads.len(), 16);
        assert_eq!(t.dyads.len(), 24);
        assert_eq!(t.edges().len(), 72);
        assert!(t.contains_triad([3, 24, 27]));
        assert!(t.contains_dyad([21, 31]));
    }

    #[test]
    fn decomposition_of_peres() {
        let g = build_graph(peres_rays().as_slice(), DEFAULT_TOL).unwrap();
        assert_eq!(g.edge_count(), 72);
        let d = decompose(&g).unwrap();
        assert_eq!(d.triads.len(), 16);
        assert_eq!(d.dyads.len(), 24);
        assert!(d.contains_triad([1, 2, 3]));
        assert!(d.contains_dyad([10, 24]));
        assert_eq!(d, reference_decomposition());
    }

    #[test]
    fn ambiguous_decomposition_rejected() {
        // K4: every edge lies in two triangles.
        let g = OrthoGraph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(matches!(decompose(&g), Err(Error::AmbiguousDecomposition(..))));
    }

    #[test]
    fn wrong_catalog_size_rejected() {
        let rays = peres_rays();
        assert_eq!(
            build_graph(&rays[..32], DEFAULT_TOL),
            Err(Error::CatalogSize { expected: 33, found: 32 })
        );
    }

    #[test]
    fn rotations_validated() {
        assert!(Rotation::new(Rotation::about_111().matrix).is_ok());
        assert_eq!(Rotation::new([[1, 0, 0], [0, 1, 0], [0, 0, -1]]), Err(Error::NotARotation));
        assert_eq!(Rotation::new([[1, 1, 0], [0, 1, 0], [0, 0, 1]]), Err(Error::NotARotation));
        assert_eq!(Rotation::about_x(4), Rotation::identity());
        assert_eq!(Rotation::about_x(1).then(&Rotation::about_x(3)), Rotation::identity());
    }

    #[test]
    fn induced_permutations_on_peres() {
        let rays = peres_rays();
        let g = build_graph(rays.as_slice(), DEFAULT_TOL).unwrap();
        let p = induced_permutation(&Rotation::about_111(), &rays).unwrap();
        assert_eq!(p.apply(1), 2);
        assert!(is_automorphism(&p, &g));
        let x2 = induced_permutation(&Rotation::about_x(2), &rays).unwrap();
        assert_eq!(x2.apply(1), 1);
        assert!(is_automorphism(&IndexPermutation::identity(33), &g));
        assert!(!is_automorphism(&IndexPermutation::transposition(33, 1, 2), &g));
    }

    #[test]
    fn non_closing_rotation_detected() {
        let rays: Vec<Ray<ExactComplex>> = peres_rays().into_iter().take(2).collect();
        assert_eq!(induced_permutation(&Rotation::about_x(1), &rays[..1]).unwrap().images(), &[1]);
        assert_eq!(induced_permutation(&Rotation::about_111(), &rays), Err(Error::NotClosed(2)));
    }

    #[test]
    fn permutation_algebra() {
        let p = IndexPermutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), IndexPermutation::identity(3));
        assert_eq!(p.compose(&p).compose(&p), IndexPermutation::identity(3));
        assert!(IndexPermutation::from_images(vec![1, 1, 2]).is_err());
        assert!(p.maps_set_onto(&[1, 2], &[2, 3]));
    }
}
