//! Standard small groups.

use super::{FiniteGroup, GroupError, PermGroup};

pub fn trivial() -> FiniteGroup {
    cyclic(1)
}

/// The cyclic group `Z/n`, element `k` standing for the residue `k`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group of order 0");
    let mult = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
        .collect();
    FiniteGroup::from_flat(n, mult).expect("cyclic table is a group")
}

/// The direct product `a x b`; the pair `(i, j)` has index `i * |b| + j`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mult = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (i, j) = (x / nb, x % nb);
            let (k, l) = (y / nb, y % nb);
            mult.push((a.mul(i, k) * nb + b.mul(j, l)) as u32);
        }
    }
    FiniteGroup::from_flat(n, mult).expect("product of groups is a group")
}

pub fn klein_four() -> FiniteGroup {
    direct_product(&cyclic(2), &cyclic(2))
}

/// `S3` on the points `0, 1, 2`, with elements in the fixed order
/// `e, (01), (02), (12), (012), (021)`.
pub fn s3() -> PermGroup {
    let perms = vec![
        vec![0, 1, 2],
        vec![1, 0, 2],
        vec![2, 1, 0],
        vec![0, 2, 1],
        vec![1, 2, 0],
        vec![2, 0, 1],
    ];
    PermGroup::from_elements(3, perms).expect("S3 is closed")
}

pub fn symmetric(n: usize) -> Result<PermGroup, GroupError> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(swap);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    PermGroup::from_generators(n, &gens)
}

pub fn alternating(n: usize) -> Result<PermGroup, GroupError> {
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    PermGroup::from_generators(n, &gens)
}

/// The dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<PermGroup, GroupError> {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    PermGroup::from_generators(n, &[rot, refl])
}

/// The quaternion group; index `4s + u` stands for `(-1)^s * [1, i, j, k][u]`.
pub fn quaternion() -> FiniteGroup {
    // Products of the units 1, i, j, k as (sign, unit).
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mult = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (s, u) = UNIT[a % 4][b % 4];
            let sign = (a / 4 + b / 4 + s) % 2;
            mult.push((sign * 4 + u) as u32);
        }
    }
    FiniteGroup::from_flat(8, mult).expect("quaternion table is a group")
}

/// One group of every isomorphism type of order at most `max_order` (capped at 8).
pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for n in 1..=max_order.min(8) {
        out.push((format!("Z{n}"), cyclic(n)));
        match n {
            4 => out.push(("Z2xZ2".into(), klein_four())),
            6 => out.push(("S3".into(), s3().into_group())),
            8 => {
                out.push(("Z4xZ2".into(), direct_product(&cyclic(4), &cyclic(2))));
                out.push(("Z2xZ2xZ2".into(), direct_product(&klein_four(), &cyclic(2))));
                out.push(("D4".into(), dihedral(4).expect("D4").into_group()));
                out.push(("Q8".into(), quaternion()));
            }
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(4).unwrap().group().order(), 24);
        assert_eq!(alternating(5).unwrap().group().order(), 60);
        assert_eq!(dihedral(5).unwrap().group().order(), 10);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(small_groups(8).len(), 14);
        assert_eq!(small_groups(6).len(), 8);
    }

    #[test]
    fn s3_order_of_elements() {
        let g = s3();
        let orders: Vec<usize> = g.group().elements().map(|e| g.group().element_order(e)).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        assert_eq!(q.elements().filter(|&e| q.element_order(e) == 2).count(), 1);
        assert!(!q.is_commutative());
    }
}
