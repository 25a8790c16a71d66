//! Dissections of a convex polygon with vertices labeled 0..n.
//!
//! A dissection is obtained by drawing pairwise noncrossing diagonals; it is
//! recorded as its set of bounded faces, each face the strictly increasing
//! list of its polygon vertex labels (length >= 3). Faces keep global labels
//! so downstream formulas can consume them directly.
//!
//! Enumeration recurses on the unique face containing the edge (0, n): pick
//! its vertex set 0 = i_0 < i_1 < ... < i_k = n, then independently dissect
//! every gap (i_{l-1}, ..., i_l) that spans more than one edge. Each
//! dissection is produced exactly once.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DissectionError {
    #[error("polygon needs n >= 2, got {0}")]
    PolygonTooSmall(usize),
    #[error("enumeration is limited to n <= {MAX_ENUMERATION_N}, got {0}")]
    TooLarge(usize),
    #[error("face needs at least 3 strictly increasing vertices")]
    MalformedFace,
}

/// Enumeration walks 2^(n-1) face masks per sub-polygon; past this point it
/// would never finish, so refuse instead of overflowing the mask.
pub const MAX_ENUMERATION_N: usize = 32;

/// A bounded face: a strictly increasing vertex list of length >= 3.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<usize>);

impl Face {
    pub fn new(vertices: Vec<usize>) -> Result<Self, DissectionError> {
        if vertices.len() < 3 || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DissectionError::MalformedFace);
        }
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Length of the maximal initial run of unit steps
    /// (i_1 - i_0 = ... = i_t - i_{t-1} = 1).
    pub fn initial_unit_run(&self) -> usize {
        let mut t = 0;
        while t + 1 < self.0.len() && self.0[t + 1] - self.0[t] == 1 {
            t += 1;
        }
        t
    }

    /// Edges of the face boundary, each as an ordered pair (low, high).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let wrap = std::iter::once((self.0[0], self.0[self.0.len() - 1]));
        self.0.windows(2).map(|w| (w[0], w[1])).chain(wrap)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// A dissection of the polygon on vertices 0..n, as a canonically ordered
/// face list (faces sorted lexicographically by vertex list).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dissection {
    n: usize,
    faces: Vec<Face>,
}

impl Dissection {
    pub fn new(n: usize, mut faces: Vec<Face>) -> Self {
        faces.sort();
        Self { n, faces }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// True if every face is a triangle.
    pub fn is_full_triangulation(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3)
    }
}

// Serialized as a JSON array of faces, each face an array of integers.
impl Serialize for Dissection {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.faces.len()))?;
        for f in &self.faces {
            seq.serialize_element(f)?;
        }
        seq.end()
    }
}

/// Calls `visit` once per dissection of the polygon on 0..n with the current
/// face list. Faces arrive in recursion order, not canonically sorted; the
/// set of visited dissections is complete and duplicate-free.
pub fn for_each_dissection(
    n: usize,
    mut visit: impl FnMut(&[Face]),
) -> Result<(), DissectionError> {
    if n < 2 {
        return Err(DissectionError::PolygonTooSmall(n));
    }
    if n > MAX_ENUMERATION_N {
        return Err(DissectionError::TooLarge(n));
    }
    let mut pending = vec![(0usize, n)];
    let mut faces = Vec::new();
    recurse(&mut pending, &mut faces, &mut visit);
    Ok(())
}

fn recurse(
    pending: &mut Vec<(usize, usize)>,
    faces: &mut Vec<Face>,
    visit: &mut impl FnMut(&[Face]),
) {
    let Some((lo, hi)) = pending.pop() else {
        visit(faces);
        return;
    };
    // Choose the face containing edge (lo, hi): lo, a nonempty subset of the
    // interior lo+1..hi-1, and hi.
    let interior: Vec<usize> = (lo + 1..hi).collect();
    for mask in 1u64..(1 << interior.len()) {
        let mut verts = Vec::with_capacity(interior.len() + 2);
        verts.push(lo);
        for (bit, &v) in interior.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                verts.push(v);
            }
        }
        verts.push(hi);
        let before = pending.len();
        for w in verts.windows(2) {
            if w[1] - w[0] >= 2 {
                pending.push((w[0], w[1]));
            }
        }
        faces.push(Face(verts));
        recurse(pending, faces, visit);
        faces.pop();
        pending.truncate(before);
    }
    pending.push((lo, hi));
}

/// All dissections of the polygon on 0..n, canonically ordered: faces sorted
/// lexicographically within each dissection, dissections sorted
/// lexicographically by their face lists.
pub fn enumerate_dissections(n: usize) -> Result<Vec<Dissection>, DissectionError> {
    let mut out = Vec::new();
    for_each_dissection(n, |faces| {
        out.push(Dissection::new(n, faces.to_vec()));
    })?;
    out.sort();
    Ok(out)
}

/// Little Schroeder count of dissections:
/// (1/(n-1)) * sum_{k=1}^{n-1} C(n-1, k) * C(n-1+k, k-1).
/// The quotient is exact; this is asserted.
pub fn count_dissections_closed_form(n: usize) -> Result<BigInt, DissectionError> {
    if n < 2 {
        return Err(DissectionError::PolygonTooSmall(n));
    }
    let binom = |n: usize, k: usize| num_integer::binomial(BigInt::from(n), BigInt::from(k));
    let mut sum = BigInt::zero();
    for k in 1..n {
        sum += binom(n - 1, k) * binom(n - 1 + k, k - 1);
    }
    let (q, r) = sum.div_rem(&BigInt::from(n - 1));
    assert!(r.is_zero(), "little Schroeder sum not divisible by n-1");
    Ok(q)
}

/// Checks every dissection invariant:
/// - faces are within 0..n;
/// - every boundary edge (j, j+1) and (0, n) lies in exactly one face,
///   every interior diagonal in exactly two;
/// - face sizes satisfy sum (|f| - 2) = n - 1;
/// - no two diagonals cross.
pub fn validate_dissection(d: &Dissection) -> bool {
    let n = d.n();
    if n < 2 || d.faces().is_empty() {
        return false;
    }
    let mut edge_count = std::collections::BTreeMap::new();
    for face in d.faces() {
        if face.vertices().last().copied().unwrap_or(0) > n {
            return false;
        }
        for e in face.edges() {
            *edge_count.entry(e).or_insert(0usize) += 1;
        }
    }
    let is_boundary = |&(a, b): &(usize, usize)| b == a + 1 || (a == 0 && b == n);
    let mut diagonals = Vec::new();
    for (edge, count) in &edge_count {
        if is_boundary(edge) {
            if *count != 1 {
                return false;
            }
        } else {
            if *count != 2 {
                return false;
            }
            diagonals.push(*edge);
        }
    }
    // All n+1 boundary edges must be covered.
    let boundary_covered =
        (0..n).all(|j| edge_count.contains_key(&(j, j + 1))) && edge_count.contains_key(&(0, n));
    if !boundary_covered {
        return false;
    }
    let area: usize = d.faces().iter().map(|f| f.len() - 2).sum();
    if area != n - 1 {
        return false;
    }
    for (i, &d1) in diagonals.iter().enumerate() {
        for &d2 in &diagonals[i + 1..] {
            if diagonals_cross(d1, d2) {
                return false;
            }
        }
    }
    true
}

/// Two diagonals (a, b) and (c, d), each with first < second, cross iff
/// exactly one endpoint of the second lies strictly between a and b.
pub(crate) fn diagonals_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}
