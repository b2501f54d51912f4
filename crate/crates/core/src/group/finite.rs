use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::scalar::{QMatrix, QVector, DEFAULT_ABS_TOL, DEFAULT_DEDUPE_TOL};

pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// A group element as a float matrix, with its exact rational form when known.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub exact: Option<QMatrix>,
}

impl GroupElement {
    pub fn exact(m: QMatrix) -> Self {
        Self { matrix: m.to_f64(), exact: Some(m) }
    }

    pub fn float(m: Matrix) -> Self {
        Self { matrix: m, exact: None }
    }

    pub fn identity(dim: usize, exact: bool) -> Self {
        if exact {
            Self::exact(QMatrix::identity(dim))
        } else {
            Self::float(Matrix::identity(dim, dim))
        }
    }

    fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Ok(GroupElement::exact(a.mul(b)?)),
            _ => Ok(GroupElement::float(&self.matrix * &other.matrix)),
        }
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.matrix * x
    }

    pub fn apply_exact(&self, x: &QVector) -> Result<QVector> {
        self.exact.as_ref().ok_or(Error::Internal("element has no exact form".into()))?.apply(x)
    }
}

/// Finite orthogonal matrix group stored by its full, lexicographically
/// ordered element list.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    dim: usize,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteGroupSummary {
    pub dim: usize,
    pub order: usize,
    pub exact: bool,
    pub generators: usize,
}

/// Float dedupe by quantized keys; candidates in the same bucket are compared
/// by max-entry distance.
struct FloatIndex {
    tol: f64,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl FloatIndex {
    fn new(tol: f64) -> Self {
        Self { tol, buckets: HashMap::new() }
    }

    fn key(&self, m: &Matrix, offset: f64) -> Vec<i64> {
        let cell = self.tol * 1e3;
        m.iter().map(|x| ((x / cell) + offset).floor() as i64).collect()
    }

    fn find(&self, m: &Matrix, store: &[GroupElement]) -> Option<usize> {
        for offset in [0.0, 0.5] {
            if let Some(ids) = self.buckets.get(&self.key(m, offset)) {
                for &i in ids {
                    if linalg::max_abs_diff(&store[i].matrix, m) <= self.tol {
                        return Some(i);
                    }
                }
            }
        }
        None
    }

    fn insert(&mut self, m: &Matrix, id: usize) {
        for offset in [0.0, 0.5] {
            let k = self.key(m, offset);
            self.buckets.entry(k).or_default().push(id);
        }
    }
}

impl FiniteMatrixGroup {
    /// Close a generating set under products (`cap` bounds the order).
    pub fn close(dim: usize, generators: Vec<GroupElement>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.matrix.nrows() != dim || g.matrix.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: g.matrix.nrows() });
            }
            match &g.exact {
                Some(q) if !q.is_orthogonal() => return Err(Error::NotOrthogonal { deviation: f64::NAN }),
                Some(_) => {}
                None => {
                    let d = linalg::orthogonality_defect(&g.matrix);
                    if d > DEFAULT_ABS_TOL {
                        return Err(Error::NotOrthogonal { deviation: d });
                    }
                }
            }
        }
        let exact = generators.iter().all(|g| g.exact.is_some());
        let generators: Vec<GroupElement> =
            if exact { generators } else { generators.into_iter().map(|g| GroupElement::float(g.matrix)).collect() };

        let mut elements = vec![GroupElement::identity(dim, exact)];
        let mut seen_exact: BTreeSet<QMatrix> = BTreeSet::new();
        let mut index = FloatIndex::new(DEFAULT_DEDUPE_TOL);
        if exact {
            seen_exact.insert(elements[0].exact.clone().expect("exact identity"));
        } else {
            index.insert(&elements[0].matrix, 0);
        }
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let prod = g.compose(&elements[i])?;
                let fresh = if exact {
                    seen_exact.insert(prod.exact.clone().expect("exact product"))
                } else {
                    index.find(&prod.matrix, &elements).is_none()
                };
                if fresh {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCap { cap });
                    }
                    let id = elements.len();
                    if !exact {
                        index.insert(&prod.matrix, id);
                    }
                    elements.push(prod);
                    queue.push_back(id);
                }
            }
        }
        sort_elements(&mut elements);
        Ok(Self { dim, generators, elements })
    }

    pub fn from_exact(dim: usize, generators: Vec<QMatrix>) -> Result<Self> {
        Self::close(dim, generators.into_iter().map(GroupElement::exact).collect(), DEFAULT_CLOSURE_CAP)
    }

    pub fn from_float(dim: usize, generators: Vec<Matrix>) -> Result<Self> {
        Self::close(dim, generators.into_iter().map(GroupElement::float).collect(), DEFAULT_CLOSURE_CAP)
    }

    pub fn trivial(dim: usize) -> Self {
        Self { dim, generators: Vec::new(), elements: vec![GroupElement::identity(dim, true)] }
    }

    /// Subgroup given by an explicit (already closed) subset of elements.
    fn from_subset(dim: usize, elements: Vec<GroupElement>) -> Self {
        Self { dim, generators: elements.clone(), elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_exact(&self) -> bool {
        self.elements.iter().all(|e| e.exact.is_some())
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn summary(&self) -> FiniteGroupSummary {
        FiniteGroupSummary {
            dim: self.dim,
            order: self.order(),
            exact: self.is_exact(),
            generators: self.generators.len(),
        }
    }

    /// Orbit of `x`, deduplicated to `dedupe_tol` and sorted lexicographically.
    pub fn orbit(&self, x: &Vector) -> Result<Vec<Vector>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: x.len() });
        }
        let mut out: Vec<Vector> = Vec::new();
        for e in &self.elements {
            let y = e.apply(x);
            if !out.iter().any(|z| (z - &y).amax() <= DEFAULT_DEDUPE_TOL) {
                out.push(y);
            }
        }
        out.sort_by(|a, b| lex_f64(a.as_slice(), b.as_slice()));
        Ok(out)
    }

    /// Exact orbit of a rational point (exact groups only).
    pub fn orbit_exact(&self, x: &QVector) -> Result<Vec<QVector>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: x.len() });
        }
        let mut out = BTreeSet::new();
        for e in &self.elements {
            out.insert(e.apply_exact(x)?);
        }
        Ok(out.into_iter().collect())
    }

    pub fn stabilizer(&self, p: &Vector, tol: f64) -> FiniteMatrixGroup {
        let keep = self.elements.iter().filter(|e| (e.apply(p) - p).amax() <= tol).cloned().collect();
        Self::from_subset(self.dim, keep)
    }

    pub fn pointwise_stabilizer(&self, s: &Subspace, tol: f64) -> FiniteMatrixGroup {
        let basis: Vec<Vector> = (0..s.dim()).map(|j| s.basis_vector(j)).collect();
        let keep =
            self.elements.iter().filter(|e| basis.iter().all(|b| (e.apply(b) - b).amax() <= tol)).cloned().collect();
        Self::from_subset(self.dim, keep)
    }
}

fn sort_elements(elements: &mut [GroupElement]) {
    elements.sort_by(|a, b| match (&a.exact, &b.exact) {
        (Some(x), Some(y)) => x.entries().cmp(y.entries()),
        _ => lex_f64(a.matrix.transpose().as_slice(), b.matrix.transpose().as_slice()),
    });
}

pub fn lex_f64(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qvec;

    fn rot90() -> QMatrix {
        QMatrix::from_rows(&[qvec(&[0, -1]), qvec(&[1, 0])]).unwrap()
    }

    fn reflect_x() -> QMatrix {
        QMatrix::from_rows(&[qvec(&[1, 0]), qvec(&[0, -1])]).unwrap()
    }

    fn perm(p: [usize; 3]) -> QMatrix {
        let rows: Vec<QVector> =
            (0..3).map(|i| (0..3).map(|j| crate::scalar::int(i64::from(p[j] == i))).collect()).collect();
        QMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn cyclic_and_trivial_closures() {
        assert_eq!(FiniteMatrixGroup::from_exact(2, vec![rot90()]).unwrap().order(), 4);
        assert_eq!(FiniteMatrixGroup::from_exact(2, vec![QMatrix::identity(2)]).unwrap().order(), 1);
    }

    #[test]
    fn transpositions_generate_s3() {
        // Brute force: the six permutation matrices of {0,1,2}.
        let mut all = BTreeSet::new();
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            all.insert(perm(p));
        }
        let g = FiniteMatrixGroup::from_exact(3, vec![perm([1, 0, 2]), perm([0, 2, 1])]).unwrap();
        let got: BTreeSet<QMatrix> = g.elements().iter().map(|e| e.exact.clone().unwrap()).collect();
        assert_eq!(got, all);
    }

    #[test]
    fn rejects_non_orthogonal_and_caps() {
        let shear = QMatrix::from_rows(&[qvec(&[1, 1]), qvec(&[0, 1])]).unwrap();
        assert!(matches!(FiniteMatrixGroup::from_exact(2, vec![shear]), Err(Error::NotOrthogonal { .. })));
        let r = FiniteMatrixGroup::close(2, vec![GroupElement::exact(rot90())], 3);
        assert!(matches!(r, Err(Error::ClosureCap { cap: 3 })));
    }

    #[test]
    fn dihedral_orbits_and_stabilizers() {
        let d4 = FiniteMatrixGroup::from_exact(2, vec![rot90(), reflect_x()]).unwrap();
        assert_eq!(d4.order(), 8);
        let orbit = d4.orbit_exact(&qvec(&[1, 0])).unwrap();
        assert_eq!(orbit, vec![qvec(&[-1, 0]), qvec(&[0, -1]), qvec(&[0, 1]), qvec(&[1, 0])]);
        assert_eq!(d4.orbit_exact(&qvec(&[0, 0])).unwrap().len(), 1);
        let stab = d4.stabilizer(&Vector::from_vec(vec![1.0, 0.0]), 1e-12);
        assert_eq!(stab.order(), 2);
        let fix = d4.pointwise_stabilizer(&Subspace::coordinate(2, &[0]), 1e-12);
        assert_eq!(fix.order(), 2);
        assert_eq!(d4.pointwise_stabilizer(&Subspace::zero(2), 1e-12).order(), 8);
        assert_eq!(d4.stabilizer(&Vector::zeros(2), 1e-12).order(), 8);
    }

    #[test]
    fn s3_orbit_of_generic_point() {
        let g = FiniteMatrixGroup::from_exact(3, vec![perm([1, 0, 2]), perm([0, 2, 1])]).unwrap();
        let orbit = g.orbit_exact(&qvec(&[3, 2, 1])).unwrap();
        let mut expected: Vec<QVector> =
            [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]].iter().map(|p| qvec(p)).collect();
        expected.sort();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn float_closure_of_octagonal_dihedral_group() {
        let a = std::f64::consts::FRAC_PI_4;
        let rot = Matrix::from_row_slice(2, 2, &[a.cos(), -a.sin(), a.sin(), a.cos()]);
        let refl = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let g = FiniteMatrixGroup::from_float(2, vec![rot, refl]).unwrap();
        assert_eq!(g.order(), 16);
        assert!(!g.is_exact());
        assert_eq!(g.orbit(&Vector::from_vec(vec![1.0, 0.0])).unwrap().len(), 8);
        assert_eq!(g.orbit(&Vector::from_vec(vec![1.0, 0.3])).unwrap().len(), 16);
    }
}
