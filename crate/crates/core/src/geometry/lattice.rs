use std::collections::HashMap;

use serde::Serialize;

use super::linalg::affine_dim;
use super::Point;

/// All proper faces of a polytope, as sorted vertex index sets.
#[derive(Debug, Clone, Serialize)]
pub struct FaceLattice {
    /// `faces[k]` lists the k-faces, sorted lexicographically
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `children[k][i]` indexes the (k-1)-faces of `faces[k][i]`
    #[serde(skip)]
    pub children: Vec<Vec<Vec<usize>>>,
}

impl FaceLattice {
    /// Downward closure from the facets: the (k-1)-faces of a k-face `F` are the
    /// sets `F ∩ G`, `G` a facet, of affine dimension exactly `k-1`.
    pub fn build(vertices: &[Point], facets: &[Vec<usize>], tol: f64) -> Self {
        let dim = vertices[0].len();
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim];
        let mut children: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim];
        let mut top = facets.to_vec();
        top.sort();
        faces[dim - 1] = top;
        for k in (1..dim).rev() {
            let mut found: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut level: Vec<Vec<usize>> = Vec::new();
            let mut kids: Vec<Vec<usize>> = Vec::with_capacity(faces[k].len());
            for face in &faces[k] {
                let mut mine = Vec::new();
                for g in facets {
                    let s = intersect(face, g);
                    if s.len() < k || s.len() == face.len() {
                        continue;
                    }
                    if let Some(&id) = found.get(&s) {
                        mine.push(id);
                        continue;
                    }
                    if affine_dim(vertices, &s, tol) == k - 1 {
                        found.insert(s.clone(), level.len());
                        mine.push(level.len());
                        level.push(s);
                    }
                }
                mine.sort_unstable();
                mine.dedup();
                kids.push(mine);
            }
            // renumber the new level in lexicographic order
            let mut order: Vec<usize> = (0..level.len()).collect();
            order.sort_by(|&a, &b| level[a].cmp(&level[b]));
            let mut rank = vec![0; level.len()];
            for (r, &o) in order.iter().enumerate() {
                rank[o] = r;
            }
            for list in kids.iter_mut() {
                for id in list.iter_mut() {
                    *id = rank[*id];
                }
                list.sort_unstable();
            }
            faces[k - 1] = order.into_iter().map(|o| level[o].clone()).collect();
            children[k] = kids;
        }
        children[0] = vec![Vec::new(); faces[0].len()];
        FaceLattice { faces, children }
    }

    pub fn dim(&self) -> usize {
        self.faces.len()
    }

    /// `(f_0, ..., f_{d-1})`
    pub fn fvector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Alternating sum `Σ (-1)^k f_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.fvector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Expected value of [`Self::euler_characteristic`] for a d-polytope.
    pub fn euler_target(&self) -> i64 {
        if self.dim() % 2 == 0 {
            0
        } else {
            2
        }
    }

    /// Facets (by index into `faces[d-1]`) whose vertex sets contain `face`.
    pub fn facets_containing(&self, face: &[usize]) -> Vec<usize> {
        let top = &self.faces[self.dim() - 1];
        (0..top.len()).filter(|&i| is_subset(face, &top[i])).collect()
    }
}

/// Tri-state result of a face-number inequality that only holds on part of the k range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Holds,
    Violated,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FaceInequalities {
    pub vertex_side: Check,
    pub facet_side: Check,
}

/// `f_k ≥ f_0` for `k ≤ ⌊d/2⌋` and `f_k ≥ f_{d-1}` for `k ≥ ⌈d/2⌉ - 1`.
pub fn check_face_inequalities(fv: &[usize], k: usize) -> FaceInequalities {
    let d = fv.len();
    let judge = |applies: bool, ok: bool| match (applies, ok) {
        (false, _) => Check::NotApplicable,
        (true, true) => Check::Holds,
        (true, false) => Check::Violated,
    };
    if k >= d {
        return FaceInequalities {
            vertex_side: Check::NotApplicable,
            facet_side: Check::NotApplicable,
        };
    }
    FaceInequalities {
        vertex_side: judge(vertex_side_applies(d, k), fv[k] >= fv[0]),
        facet_side: judge(facet_side_applies(d, k), fv[k] >= fv[d - 1]),
    }
}

pub fn vertex_side_applies(d: usize, k: usize) -> bool {
    k <= d / 2
}

pub fn facet_side_applies(d: usize, k: usize) -> bool {
    k + 1 >= d.div_ceil(2) && k < d
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert!(vertex_side_applies(3, 1) && facet_side_applies(3, 1));
        assert!(!vertex_side_applies(4, 3));
        assert!(!facet_side_applies(4, 0) && facet_side_applies(4, 1));
        assert!(facet_side_applies(2, 0));
    }

    #[test]
    fn subset_and_intersection() {
        assert!(is_subset(&[1, 3], &[0, 1, 2, 3]));
        assert!(!is_subset(&[1, 4], &[0, 1, 2, 3]));
        assert_eq!(intersect(&[0, 2, 4, 6], &[1, 2, 3, 4]), vec![2, 4]);
    }

    #[test]
    fn inequality_reporting() {
        let cube = [8, 12, 6];
        let r = check_face_inequalities(&cube, 1);
        assert_eq!(r.vertex_side, Check::Holds);
        assert_eq!(r.facet_side, Check::Holds);
        let r = check_face_inequalities(&[8, 24, 32, 16], 3);
        assert_eq!(r.vertex_side, Check::NotApplicable);
        assert_eq!(r.facet_side, Check::Holds);
    }
}
