//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use invrel_core::catalog::{self, InstanceBundle};
use invrel_core::group::{enumerate_subgroups, library};
use invrel_core::relations::orbit_relation;
use invrel_core::{GAction, Partition};

pub fn icosahedron() -> InstanceBundle {
    catalog::icosahedron_antipodism().expect("catalog instance")
}

pub fn affine_maximal_pairs() -> InstanceBundle {
    catalog::affine_gl3(2, "maximal_pairs").expect("catalog instance")
}

pub fn s3_chain(k: usize) -> InstanceBundle {
    catalog::s3_chain(k).expect("catalog instance")
}

/// The regular action of S4 with the orbit relation of its normal Klein
/// four-subgroup.
pub fn s4_regular() -> (GAction, Partition) {
    let g = Arc::new(library::symmetric(4).expect("S4").into_group());
    let a = GAction::regular(g.clone());
    let v4 = enumerate_subgroups(&g, false)
        .expect("subgroups")
        .into_iter()
        .find(|h| h.order() == 4 && g.is_normal(h))
        .expect("Klein four-subgroup");
    let e = orbit_relation(&a, &v4);
    (a, e)
}
