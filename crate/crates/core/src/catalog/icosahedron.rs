//! The rotation group of the regular icosahedron acting on its 12 vertices.

use crate::group::{GroupError, PermGroup};

type V3 = [f64; 3];

const PHI: f64 = 1.618_033_988_749_895;

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn scale(a: V3, s: f64) -> V3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(a: V3) -> V3 {
    scale(a, 1.0 / dot(a, a).sqrt())
}

/// The cyclic permutations of `(0, +-1, +-PHI)`.
pub fn vertices() -> Vec<V3> {
    let mut out = Vec::with_capacity(12);
    for shift in 0..3 {
        for s1 in [1.0, -1.0] {
            for s2 in [1.0, -1.0] {
                let base = [0.0, s1, s2 * PHI];
                out.push([base[(3 - shift) % 3], base[(4 - shift) % 3], base[(5 - shift) % 3]]);
            }
        }
    }
    out
}

/// Orthonormal frame (as columns) with first axis along `a` and `b` in the first two.
fn frame(a: V3, b: V3) -> [V3; 3] {
    let e1 = normalize(a);
    let e2 = normalize(sub(b, scale(e1, dot(b, e1))));
    [e1, e2, cross(e1, e2)]
}

/// `F_to * F_from^T` applied to `v`.
fn rotate(from: &[V3; 3], to: &[V3; 3], v: V3) -> V3 {
    let coords = [dot(from[0], v), dot(from[1], v), dot(from[2], v)];
    let mut out = [0.0; 3];
    for (k, c) in coords.iter().enumerate() {
        for (i, o) in out.iter_mut().enumerate() {
            *o += to[k][i] * c;
        }
    }
    out
}

fn nearest(points: &[V3], p: V3) -> (usize, f64) {
    points
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let d = sub(*q, p);
            (i, dot(d, d))
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty")
}

/// The 60 rotations as permutations of the vertices. A rotation is fixed by
/// where it sends vertex 0 and a chosen neighbour, giving 12 * 5 frames.
pub fn rotation_group() -> Result<PermGroup, GroupError> {
    let verts = vertices();
    let neighbours = |i: usize| -> Vec<usize> {
        (0..12)
            .filter(|&j| {
                let d = sub(verts[i], verts[j]);
                (dot(d, d) - 4.0).abs() < 1e-9
            })
            .collect()
    };
    let base = frame(verts[0], verts[neighbours(0)[0]]);
    let mut perms = Vec::with_capacity(60);
    for a in 0..12 {
        for b in neighbours(a) {
            let target = frame(verts[a], verts[b]);
            let perm: Vec<usize> = verts
                .iter()
                .map(|&v| {
                    let (j, d) = nearest(&verts, rotate(&base, &target, v));
                    assert!(d < 1e-9, "rotation does not map vertices to vertices");
                    j
                })
                .collect();
            perms.push(perm);
        }
    }
    PermGroup::from_elements(12, perms)
}

/// `antipode()[i]` is the vertex `-v_i`.
pub fn antipode() -> Vec<usize> {
    let verts = vertices();
    verts.iter().map(|&v| nearest(&verts, scale(v, -1.0)).0).collect()
}
