use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use super::OrbitPolytope;
use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::linalg::Vector;
use crate::scalar::{self, QVector, DEFAULT_DEDUPE_TOL};

/// A face of a polytope, given by its vertex ids (sorted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PFace {
    pub vertex_ids: Vec<usize>,
    /// Affine dimension; `-1` for the empty face.
    pub dim: isize,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "scalar::exact_serde::opt_vector")]
    pub exposing: Option<QVector>,
}

/// All faces of a polytope (including the empty face and the polytope),
/// ordered by dimension and then lexicographically by vertex ids.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<PFace>,
    /// Covering pairs `(smaller, larger)`.
    covers: Vec<(usize, usize)>,
    index: BTreeMap<Vec<usize>, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeNode {
    pub id: usize,
    pub dim: isize,
    pub vertex_ids: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exposing_vector: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeJson {
    pub vertices: Vec<Vec<String>>,
    pub nodes: Vec<LatticeNode>,
    pub edges: Vec<[usize; 2]>,
}

/// Orbits of a finite group acting on the nonempty faces.
#[derive(Clone, Debug, Serialize)]
pub struct FaceOrbitPartition {
    /// Face ids of each orbit, sorted; orbits ordered by their smallest id.
    pub orbits: Vec<Vec<usize>>,
    /// Vertex permutation induced by each group element.
    #[serde(skip)]
    pub vertex_permutations: Vec<Vec<usize>>,
}

impl FaceOrbitPartition {
    pub fn orbit_of(&self, face: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.binary_search(&face).is_ok())
    }
}

impl FaceLattice {
    pub fn new(p: &OrbitPolytope) -> Result<Self> {
        let n = p.vertices().len();
        let all: Vec<usize> = (0..n).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(Vec::new());
        sets.insert(all.clone());
        let mut frontier = vec![all];
        while let Some(f) = frontier.pop() {
            for inc in p.incidence() {
                let meet: Vec<usize> = f.iter().copied().filter(|i| inc.binary_search(i).is_ok()).collect();
                if sets.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut faces: Vec<PFace> = sets
            .into_iter()
            .map(|ids| {
                let dim = p.face_dim(&ids);
                PFace { vertex_ids: ids, dim, exposing: None }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertex_ids.cmp(&b.vertex_ids)));
        for f in faces.iter_mut() {
            if f.dim >= 0 {
                f.exposing = p.exposing_vector(&f.vertex_ids)?;
            }
        }
        let index: BTreeMap<Vec<usize>, usize> =
            faces.iter().enumerate().map(|(i, f)| (f.vertex_ids.clone(), i)).collect();
        let mut covers = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            for (j, g) in faces.iter().enumerate() {
                if g.dim == f.dim + 1 && is_subset(&f.vertex_ids, &g.vertex_ids) {
                    covers.push((i, j));
                }
            }
        }
        Ok(Self { faces, covers, index })
    }

    pub fn faces(&self) -> &[PFace] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn face(&self, id: usize) -> &PFace {
        &self.faces[id]
    }

    pub fn find(&self, vertex_ids: &[usize]) -> Option<usize> {
        let mut v = vertex_ids.to_vec();
        v.sort_unstable();
        self.index.get(&v).copied()
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Number of faces of each dimension `0..=dim P`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces[self.top()].dim.max(0) as usize;
        (0..=top).map(|d| self.faces.iter().filter(|f| f.dim == d as isize).count()).collect()
    }

    /// Faces covering `id`, in id order.
    pub fn upper_covers(&self, id: usize) -> Vec<usize> {
        self.covers.iter().filter(|(a, _)| *a == id).map(|(_, b)| *b).collect()
    }

    /// Maximal chain `face = F_n ⊊ ... ⊊ F_0 = P`, each step a covering
    /// relation; the smallest-id cover is taken at each step.
    pub fn maximal_chain(&self, id: usize) -> Result<Vec<usize>> {
        if id >= self.faces.len() {
            return Err(Error::UnknownFace);
        }
        let mut chain = vec![id];
        let mut cur = id;
        while cur != self.top() {
            cur = *self.upper_covers(cur).first().ok_or(Error::Internal("face without a cover".into()))?;
            chain.push(cur);
        }
        Ok(chain)
    }

    /// Checks that `n` random points of `P`, each drawn from the relative
    /// interior of a random face, lie in the relative interior of exactly one
    /// face. Exact arithmetic.
    pub fn verify_disjoint_relints<R: Rng + ?Sized>(&self, p: &OrbitPolytope, rng: &mut R, n: usize) -> Result<bool> {
        let facet_sets = p.incidence();
        // Facets containing each face.
        let containing: Vec<Vec<usize>> = self.faces.iter().map(|f| p.facets_containing(&f.vertex_ids)).collect();
        for _ in 0..n {
            let fid = rng.random_range(1..self.faces.len());
            let pts: Vec<QVector> = self.faces[fid].vertex_ids.iter().map(|&i| p.vertices()[i].clone()).collect();
            let x = super::random_combination(&pts, rng);
            let tight: Vec<bool> = p.facets().iter().map(|f| scalar::dot(&f.normal, &x) == f.offset).collect();
            let hits = (1..self.faces.len())
                .filter(|&g| (0..facet_sets.len()).all(|k| tight[k] == containing[g].contains(&k)))
                .count();
            if hits != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orbits of `w` (acting on the polytope's coordinates) on the nonempty
    /// faces. Fails if some element does not permute the vertex set.
    pub fn group_action(&self, p: &OrbitPolytope, w: &FiniteMatrixGroup) -> Result<FaceOrbitPartition> {
        if w.dim() != p.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: p.ambient_dim(), actual: w.dim() });
        }
        let floats = p.vertices_f64();
        let mut perms = Vec::with_capacity(w.order());
        for e in w.elements() {
            let mut perm = Vec::with_capacity(p.vertices().len());
            for (i, v) in p.vertices().iter().enumerate() {
                let img = match &e.exact {
                    Some(m) => p.vertex_index(&m.apply(v)?),
                    None => {
                        let y: Vector = e.apply(&floats[i]);
                        floats.iter().position(|z| (z - &y).amax() <= DEFAULT_DEDUPE_TOL)
                    }
                };
                perm.push(img.ok_or_else(|| Error::ActionMismatch(format!("vertex {i} is not mapped to a vertex")))?);
            }
            perms.push(perm);
        }
        let mut orbit_id: Vec<Option<usize>> = vec![None; self.faces.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 1..self.faces.len() {
            if orbit_id[start].is_some() {
                continue;
            }
            let mut members = BTreeSet::new();
            for perm in &perms {
                let img: Vec<usize> = self.faces[start].vertex_ids.iter().map(|&i| perm[i]).collect();
                let j = self.find(&img).ok_or_else(|| Error::ActionMismatch("face image is not a face".into()))?;
                if self.faces[j].dim != self.faces[start].dim {
                    return Err(Error::ActionMismatch("action changes a face dimension".into()));
                }
                members.insert(j);
            }
            for &m in &members {
                orbit_id[m] = Some(orbits.len());
            }
            orbits.push(members.into_iter().collect());
        }
        Ok(FaceOrbitPartition { orbits, vertex_permutations: perms })
    }

    pub fn to_json(&self, p: &OrbitPolytope) -> LatticeJson {
        LatticeJson {
            vertices: p.vertices().iter().map(|v| v.iter().map(scalar::format_rational).collect()).collect(),
            nodes: self
                .faces
                .iter()
                .enumerate()
                .map(|(id, f)| LatticeNode {
                    id,
                    dim: f.dim,
                    vertex_ids: f.vertex_ids.clone(),
                    exposing_vector: f.exposing.as_ref().map(|u| u.iter().map(scalar::format_rational).collect()),
                })
                .collect(),
            edges: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Hasse diagram in DOT format, bottom to top.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=box, fontsize=10];");
        for (id, f) in self.faces.iter().enumerate() {
            let label = if f.vertex_ids.is_empty() {
                "∅".to_string()
            } else {
                f.vertex_ids.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            };
            let _ = writeln!(s, "  f{id} [label=\"{{{label}}}\\ndim {}\"];", f.dim);
        }
        for (a, b) in &self.covers {
            let _ = writeln!(s, "  f{a} -> f{b};");
        }
        s.push_str("}\n");
        s
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qvec, QMatrix};

    fn hexagon() -> OrbitPolytope {
        let pts: Vec<QVector> =
            [[3, 2, 1], [3, 1, 2], [2, 3, 1], [2, 1, 3], [1, 3, 2], [1, 2, 3]].iter().map(|p| qvec(p)).collect();
        OrbitPolytope::hull(&pts).unwrap()
    }

    fn perm3(p: [usize; 3]) -> QMatrix {
        let rows: Vec<QVector> = (0..3).map(|i| (0..3).map(|j| scalar::int(i64::from(p[j] == i))).collect()).collect();
        QMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn small_lattices() {
        let seg = OrbitPolytope::hull(&[qvec(&[0]), qvec(&[1])]).unwrap();
        assert_eq!(FaceLattice::new(&seg).unwrap().len(), 4);
        let sq = OrbitPolytope::hull(&[qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, 0]), qvec(&[0, -1])]).unwrap();
        let l = FaceLattice::new(&sq).unwrap();
        assert_eq!(l.f_vector(), vec![4, 4, 1]);
        assert_eq!(l.len(), 10);
    }

    #[test]
    fn hexagon_lattice_and_chains() {
        let h = hexagon();
        let l = FaceLattice::new(&h).unwrap();
        assert_eq!(l.f_vector(), vec![6, 6, 1]);
        assert_eq!(l.len(), 14);
        // Brute force: nonempty faces are exactly intersections of facets,
        // every edge contains two vertices, every vertex lies on two edges.
        for v in 0..6 {
            let vid = l.find(&[v]).unwrap();
            assert_eq!(l.upper_covers(vid).len(), 2);
            let chain = l.maximal_chain(vid).unwrap();
            assert_eq!(chain.len(), 3);
            assert_eq!(chain.iter().map(|&c| l.face(c).dim).collect::<Vec<_>>(), vec![0, 1, 2]);
        }
        assert_eq!(l.maximal_chain(l.top()).unwrap(), vec![l.top()]);
        let mut r = crate::rng::seeded(1);
        assert!(l.verify_disjoint_relints(&h, &mut r, 1000).unwrap());
        for f in &l.faces()[1..] {
            assert!(h.is_face(&f.vertex_ids).unwrap());
        }
        assert!(l.to_dot("hexagon").contains("f13"));
    }

    #[test]
    fn hexagon_orbits_under_s3() {
        let h = hexagon();
        let l = FaceLattice::new(&h).unwrap();
        let s3 = FiniteMatrixGroup::from_exact(3, vec![perm3([1, 0, 2]), perm3([0, 2, 1])]).unwrap();
        let part = l.group_action(&h, &s3).unwrap();
        let mut sizes: Vec<(isize, usize)> = part.orbits.iter().map(|o| (l.face(o[0]).dim, o.len())).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(0, 6), (1, 3), (1, 3), (2, 1)]);
        let trivial = FiniteMatrixGroup::trivial(3);
        assert_eq!(l.group_action(&h, &trivial).unwrap().orbits.len(), 13);
    }

    #[test]
    fn square_orbits_under_d4_and_bad_actions() {
        let sq = OrbitPolytope::hull(&[qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, 0]), qvec(&[0, -1])]).unwrap();
        let l = FaceLattice::new(&sq).unwrap();
        let rot = QMatrix::from_rows(&[qvec(&[0, -1]), qvec(&[1, 0])]).unwrap();
        let refl = QMatrix::from_rows(&[qvec(&[1, 0]), qvec(&[0, -1])]).unwrap();
        let d4 = FiniteMatrixGroup::from_exact(2, vec![rot, refl]).unwrap();
        assert_eq!(l.group_action(&sq, &d4).unwrap().orbits.len(), 3);
        let box2 = OrbitPolytope::hull(&[qvec(&[2, 0]), qvec(&[0, 1]), qvec(&[-2, 0]), qvec(&[0, -1])]).unwrap();
        let lb = FaceLattice::new(&box2).unwrap();
        assert!(matches!(lb.group_action(&box2, &d4), Err(Error::ActionMismatch(_))));
    }
}
