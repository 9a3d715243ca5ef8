//! The affine group `F_2^3 x| GL_3(F_2)` of order 1344 and the two instances built on it.

use std::collections::HashMap;
use std::sync::Arc;

use super::{finish, CatalogError, Expected, InstanceBundle};
use crate::action::GAction;
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::relations::{point_mask, r_relation, witnesses, Partition, WitnessPair};

type Mat = [[u8; 3]; 3];

const IDENTITY: Mat = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// Vectors of `F_2^3` are 3-bit codes with the first coordinate most significant.
fn coord(v: usize, i: usize) -> u8 {
    ((v >> (2 - i)) & 1) as u8
}

fn vector(c: [u8; 3]) -> usize {
    (c[0] as usize) << 2 | (c[1] as usize) << 1 | c[2] as usize
}

fn mat_from_code(code: usize) -> Mat {
    let mut m = [[0; 3]; 3];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = ((code >> (8 - (3 * r + c))) & 1) as u8;
        }
    }
    m
}

fn det(m: &Mat) -> u8 {
    let t = |a: u8, b: u8| a & b;
    (t(m[0][0], t(m[1][1], m[2][2]) ^ t(m[1][2], m[2][1]))
        ^ t(m[0][1], t(m[1][0], m[2][2]) ^ t(m[1][2], m[2][0]))
        ^ t(m[0][2], t(m[1][0], m[2][1]) ^ t(m[1][1], m[2][0])))
        & 1
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut m = [[0; 3]; 3];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = (0..3).fold(0, |acc, k| acc ^ (a[r][k] & b[k][c]));
        }
    }
    m
}

fn apply(a: &Mat, v: usize) -> usize {
    let mut out = [0; 3];
    for (r, o) in out.iter_mut().enumerate() {
        *o = (0..3).fold(0, |acc, k| acc ^ (a[r][k] & coord(v, k)));
    }
    vector(out)
}

/// `F_2^3 x| GL_3(F_2)` with element `(v, A)` at index `v * 168 + i`, where `i`
/// ranks `A` among invertible matrices by their row-major 9-bit code (first
/// entry most significant). The product is `(v, A)(w, B) = (v + Aw, AB)`.
pub struct AffineGroup {
    group: Arc<FiniteGroup>,
    matrices: Vec<Mat>,
    index: HashMap<Mat, usize>,
}

pub const GL3_F2_ORDER: usize = 168;

impl AffineGroup {
    pub fn new() -> Self {
        let matrices: Vec<Mat> = (0..512).map(mat_from_code).filter(|m| det(m) == 1).collect();
        assert_eq!(matrices.len(), GL3_F2_ORDER);
        let index: HashMap<Mat, usize> = matrices.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let k = GL3_F2_ORDER;
        let gl_mul: Vec<usize> = (0..k * k)
            .map(|ab| index[&mat_mul(&matrices[ab / k], &matrices[ab % k])])
            .collect();
        let gl_apply: Vec<usize> = (0..k * 8).map(|aw| apply(&matrices[aw / 8], aw % 8)).collect();
        let n = 8 * k;
        let mut mult = Vec::with_capacity(n * n);
        for x in 0..n {
            let (v, a) = (x / k, x % k);
            for y in 0..n {
                let (w, b) = (y / k, y % k);
                mult.push(((v ^ gl_apply[a * 8 + w]) * k + gl_mul[a * k + b]) as u32);
            }
        }
        let group = FiniteGroup::from_flat(n, mult).expect("affine table is a group");
        AffineGroup { group: Arc::new(group), matrices, index }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn element(&self, v: usize, a: &Mat) -> Elem {
        v * GL3_F2_ORDER + self.index[a]
    }

    pub fn linear_part(&self, g: Elem) -> &Mat {
        &self.matrices[g % GL3_F2_ORDER]
    }

    pub fn translation_part(&self, g: Elem) -> usize {
        g / GL3_F2_ORDER
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    /// Translations by the vectors of `subspace`, as a subgroup.
    pub fn translations(&self, subspace: &[usize]) -> Subgroup {
        let elems: Vec<Elem> = subspace.iter().map(|&v| self.element(v, &IDENTITY)).collect();
        self.group.subgroup_from_elements(&elems).expect("a subspace gives a subgroup")
    }

    /// `F^3 x {A : A in linear}`.
    fn full_fibres(&self, linear: impl Fn(Elem) -> bool) -> Vec<usize> {
        let mut out: Vec<usize> = (0..8)
            .flat_map(|v| (0..GL3_F2_ORDER).map(move |i| v * GL3_F2_ORDER + i))
            .filter(|&x| linear(self.element(0, &self.matrices[x % GL3_F2_ORDER])))
            .collect();
        out.sort_unstable();
        out
    }
}

impl Default for AffineGroup {
    fn default() -> Self {
        Self::new()
    }
}

/// Vectors with third coordinate zero: the plane `F^2 x {0}`.
pub fn plane() -> Vec<usize> {
    (0..8).filter(|&v| coord(v, 2) == 0).collect()
}

/// Multiples of the first basis vector: the line `F x {0}^2`.
pub fn line() -> Vec<usize> {
    vec![0, vector([1, 0, 0])]
}

fn subspace_image(a: &Mat, subspace: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = subspace.iter().map(|&v| apply(a, v)).collect();
    out.sort_unstable();
    out
}

/// The two maximal pairs on the regular action.
pub struct MaximalPairsInstance {
    pub affine: AffineGroup,
    pub action: GAction,
    pub relation: Partition,
    pub h1: Subgroup,
    pub h2: Subgroup,
    pub xt1: Vec<usize>,
    pub xt2: Vec<usize>,
}

pub fn maximal_pairs_instance() -> MaximalPairsInstance {
    let affine = AffineGroup::new();
    let g = affine.group().clone();
    let action = GAction::regular(g.clone());
    let h1 = affine.translations(&plane());
    let h2 = affine.translations(&line());
    // X~1: linear parts g with g^-1 H1 g = H1; X~2: linear parts with g^-1 H2 g <= H1.
    let xt1 = affine.full_fibres(|x| g.conjugate_subgroup(g.inv(x), &h1) == h1);
    let xt2 = affine.full_fibres(|x| g.conjugate_subgroup(g.inv(x), &h2).is_subgroup_of(&h1));
    let relation = r_relation(&action, &h1, &xt1)
        .expect("points in range")
        .to_partition()
        .expect("R of a pair is an equivalence here");
    MaximalPairsInstance { affine, action, relation, h1, h2, xt1, xt2 }
}

/// Plane classes on one copy of the group, line classes on the other.
pub struct DisjointUnionInstance {
    pub affine: AffineGroup,
    pub action: GAction,
    pub relation: Partition,
    pub subgroup: Subgroup,
    pub witness_set: Vec<usize>,
    pub matrices_a: Vec<usize>,
}

pub fn disjoint_union_instance() -> DisjointUnionInstance {
    let affine = AffineGroup::new();
    let g = affine.group().clone();
    let regular = GAction::regular(g.clone());
    let action = regular.disjoint_union(&regular).expect("same group");
    let n = g.order();
    let (pi, ell) = (plane(), line());
    // Class label: side, linear part, and the least element of x + A.S.
    let labels: Vec<(usize, usize, usize)> = (0..2 * n)
        .map(|p| {
            let (side, x) = (p / n, p % n);
            let a = affine.linear_part(x);
            let s = subspace_image(a, if side == 0 { &pi } else { &ell });
            let v = affine.translation_part(x);
            let least = s.iter().map(|&w| v ^ w).min().expect("nonempty subspace");
            (side, x % GL3_F2_ORDER, least)
        })
        .collect();
    let relation = Partition::from_labels(&labels);
    let subgroup = affine.translations(&ell);
    // A: the identity, and for each other nonzero p in the plane the first
    // matrix a with a^-1 e1 = p, so that the lines a^-1.l cover the plane.
    let e1 = vector([1, 0, 0]);
    let mut matrices_a = vec![affine.index[&IDENTITY]];
    for &p in pi.iter().filter(|&&p| p != 0 && p != e1) {
        let i = (0..GL3_F2_ORDER)
            .find(|&i| {
                let inv = g.inv(affine.element(0, &affine.matrices[i])) % GL3_F2_ORDER;
                apply(&affine.matrices[inv], e1) == p
            })
            .expect("GL_3 acts transitively on nonzero vectors");
        matrices_a.push(i);
    }
    let mut witness_set: Vec<usize> = vec![n + affine.element(0, &IDENTITY)];
    witness_set.extend(matrices_a.iter().map(|&i| affine.element(0, &affine.matrices[i])));
    witness_set.sort_unstable();
    DisjointUnionInstance { affine, action, relation, subgroup, witness_set, matrices_a }
}

pub(super) fn build(q: usize, variant: &str) -> Result<InstanceBundle, CatalogError> {
    if q != 2 {
        return Err(CatalogError::UnsupportedField(q));
    }
    match variant {
        "maximal_pairs" => {
            let inst = maximal_pairs_instance();
            let witness = WitnessPair {
                subgroup: inst.h1.clone(),
                witness_set: inst.xt1.clone(),
                subgroup_maximal: true,
                set_maximal: true,
            };
            finish(InstanceBundle {
                name: "affine_gl3".into(),
                description: "F_2^3 x| GL_3(F_2) acting on itself by left translation. E is R for \
                              H1 = plane translations and X~1 = all (v, A) with A preserving the plane; \
                              the classes are the left cosets x.H1. A second maximal pair uses line \
                              translations H2 and the larger set X~2."
                    .into(),
                params: [("q".into(), "2".into()), ("variant".into(), "maximal_pairs".into())].into_iter().collect(),
                action: inst.action,
                relation: inst.relation,
                witness: Some(witness),
                structure: None,
                expected: Expected {
                    invariant: true,
                    orbital: false,
                    weakly_orbital: true,
                    witness_shape: Some("maximal pair (plane translations, plane-preserving fibres)".into()),
                },
            })
        }
        "disjoint_union" => {
            let inst = disjoint_union_instance();
            let mask = point_mask(&inst.action, &inst.witness_set).expect("in range");
            if !witnesses(&inst.action, &inst.relation, &inst.subgroup, &mask) {
                return Err(CatalogError::ExpectationFailed {
                    name: "affine_gl3".into(),
                    property: "line translations with X~ witness E".into(),
                });
            }
            let witness = WitnessPair {
                subgroup: inst.subgroup.clone(),
                witness_set: inst.witness_set.clone(),
                subgroup_maximal: false,
                set_maximal: false,
            };
            finish(InstanceBundle {
                name: "affine_gl3".into(),
                description: "Two copies G, G' of F_2^3 x| GL_3(F_2) under left translation. On G, \
                              (x1, A) ~ (x2, A) when x1 - x2 lies in A.plane; on G', when it lies in \
                              A.line. Witnessed by line translations and {(0', I')} u {0} x A."
                    .into(),
                params: [("q".into(), "2".into()), ("variant".into(), "disjoint_union".into())].into_iter().collect(),
                action: inst.action,
                relation: inst.relation,
                witness: Some(witness),
                structure: None,
                expected: Expected {
                    invariant: true,
                    orbital: false,
                    weakly_orbital: true,
                    witness_shape: Some("no witness set meets each copy in exactly one point".into()),
                },
            })
        }
        other => Err(CatalogError::InvalidParameter(format!("unknown variant {other:?}"))),
    }
}
