//! Simplicial decomposition of faces and the volumes derived from it.

use super::lattice::FaceLattice;
use super::linalg::{cone_simplex_volume, simplex_volume};
use super::Point;

/// Triangulation of the k-face `faces[k][idx]` by fanning from its smallest
/// vertex index over the (k-1)-faces that miss it, recursively.
pub fn triangulate_face(lattice: &FaceLattice, k: usize, idx: usize) -> Vec<Vec<usize>> {
    let face = &lattice.faces[k][idx];
    if k == 0 {
        return vec![face.clone()];
    }
    let apex = face[0];
    let mut out = Vec::new();
    for &child in &lattice.children[k][idx] {
        if lattice.faces[k - 1][child].contains(&apex) {
            continue;
        }
        for mut s in triangulate_face(lattice, k - 1, child) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Measures {
    pub volume: f64,
    pub surface_area: f64,
    pub facet_volumes: Vec<f64>,
}

/// Volume by coning the facet triangulations to the vertex centroid.
pub fn measure(vertices: &[Point], lattice: &FaceLattice) -> Measures {
    let dim = vertices[0].len();
    let centroid = vertices.iter().fold(Point::zeros(dim), |acc, v| acc + v) / vertices.len() as f64;
    let top = dim - 1;
    let mut volume = 0.0;
    let mut facet_volumes = Vec::with_capacity(lattice.faces[top].len());
    for i in 0..lattice.faces[top].len() {
        let mut area = 0.0;
        for s in triangulate_face(lattice, top, i) {
            area += simplex_volume(vertices, &s);
            volume += cone_simplex_volume(&centroid, vertices, &s);
        }
        facet_volumes.push(area);
    }
    Measures {
        volume,
        surface_area: facet_volumes.iter().sum(),
        facet_volumes,
    }
}

/// k-dimensional volume of every k-face.
pub fn face_volumes(vertices: &[Point], lattice: &FaceLattice, k: usize) -> Vec<f64> {
    (0..lattice.faces[k].len())
        .map(|i| {
            triangulate_face(lattice, k, i)
                .iter()
                .map(|s| simplex_volume(vertices, s))
                .sum()
        })
        .collect()
}
