use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{agree, LatticeError, SetLattice};
use crate::action::GAction;
use crate::group::Subgroup;
use crate::relations::orbit_relation;

/// The six spaces that carry a lattice in an agreeable structure.
///
/// Index conventions for the product universes, with `n = |G|` and `m = |X|`:
/// `(g, x)` is `g * m + x`, `(a, b)` is `a * m + b`, `(x, g)` is `x * n + g`,
/// and `(p, q)` in `(X x X)^2` is `p * m^2 + q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Slot {
    G,
    X,
    GxX,
    XxX,
    XxG,
    X2xX2,
}

impl Slot {
    pub const ALL: [Slot; 6] = [Slot::G, Slot::X, Slot::GxX, Slot::XxX, Slot::XxG, Slot::X2xX2];

    pub fn name(self) -> &'static str {
        match self {
            Slot::G => "G",
            Slot::X => "X",
            Slot::GxX => "GxX",
            Slot::XxX => "XxX",
            Slot::XxG => "XxG",
            Slot::X2xX2 => "X2xX2",
        }
    }

    pub fn parse(name: &str) -> Option<Slot> {
        Slot::ALL.into_iter().find(|s| s.name() == name)
    }

    /// The two factor slots of a product space.
    pub fn factors(self) -> Option<(Slot, Slot)> {
        match self {
            Slot::GxX => Some((Slot::G, Slot::X)),
            Slot::XxX => Some((Slot::X, Slot::X)),
            Slot::XxG => Some((Slot::X, Slot::G)),
            Slot::X2xX2 => Some((Slot::XxX, Slot::XxX)),
            Slot::G | Slot::X => None,
        }
    }

    pub fn universe(self, group_order: usize, domain: usize) -> usize {
        let (n, m) = (group_order, domain);
        match self {
            Slot::G => n,
            Slot::X => m,
            Slot::GxX | Slot::XxG => n * m,
            Slot::XxX => m * m,
            Slot::X2xX2 => m * m * m * m,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::fmt::Display for Slot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A G-space together with lattices on `G`, `X`, `G x X`, `X x X`, `X x G`
/// and `(X x X)^2`. Agreeability is checked separately.
#[derive(Clone, Debug, PartialEq)]
pub struct AgreeableStructure {
    action: GAction,
    lattices: [SetLattice; 6],
}

impl AgreeableStructure {
    /// Checks that each lattice lives on the right universe.
    pub fn new(action: GAction, lattices: [SetLattice; 6]) -> Result<Self, LatticeError> {
        let (n, m) = (action.group().order(), action.domain());
        for slot in Slot::ALL {
            let expected = slot.universe(n, m);
            let found = lattices[slot.index()].universe();
            if expected != found {
                return Err(LatticeError::UniverseMismatch { slot, expected, found });
            }
        }
        Ok(AgreeableStructure { action, lattices })
    }

    /// Product lattices on all product spaces.
    pub fn with_products(action: GAction, g: SetLattice, x: SetLattice) -> Result<Self, LatticeError> {
        let gx = SetLattice::product(g.clone(), x.clone());
        let xx = SetLattice::product(x.clone(), x.clone());
        let xg = SetLattice::product(x.clone(), g.clone());
        let x2x2 = SetLattice::product(xx.clone(), xx.clone());
        Self::new(action, [g, x, gx, xx, xg, x2x2])
    }

    /// Discrete lattices everywhere.
    pub fn discrete(action: GAction) -> Self {
        let (n, m) = (action.group().order(), action.domain());
        let lattices = Slot::ALL.map(|s| SetLattice::discrete(s.universe(n, m)));
        AgreeableStructure { action, lattices }
    }

    /// The structure induced by a normal subgroup `K`: unions of `K`-cosets on
    /// `G`, unions of `K`-orbits on `X`, and product lattices elsewhere. It is
    /// always agreeable.
    pub fn quotient(action: GAction, k: &Subgroup) -> Result<Self, LatticeError> {
        let g = action.group();
        if !g.is_normal(k) {
            return Err(LatticeError::NotALattice("the subgroup is not normal".into()));
        }
        let cosets = orbit_relation(&GAction::regular(action.group_arc().clone()), k);
        let orbits = orbit_relation(&action, k);
        let lg = SetLattice::from_down_sets((0..g.order()).map(|x| cosets.class_mask(x)).collect())?;
        let lx = SetLattice::from_down_sets((0..action.domain()).map(|x| orbits.class_mask(x)).collect())?;
        Self::with_products(action, lg, lx)
    }

    /// The least lattices on the product spaces that satisfy the axioms
    /// requiring sets to be pseudo-closed (products, preimages under the
    /// action, images of graphs and of the diagonal projection), for the given
    /// lattices on `G` and `X`.
    ///
    /// The remaining axioms only get harder as the product lattices grow, so
    /// `(L_G, L_X)` extends to an agreeable structure exactly when this one is
    /// agreeable.
    pub fn minimal_completion(action: GAction, g: SetLattice, x: SetLattice) -> Result<Self, LatticeError> {
        let (n, m) = (action.group().order(), action.domain());
        let gens = completion_generators(&action, &g, &x)?;
        let mut gx_gens = agree::rectangles(&g, &x);
        gx_gens.extend(agree::action_preimages(&action, &x));
        let gx = SetLattice::family_closure(n * m, &gx_gens)?;
        let xg = SetLattice::product(x.clone(), g.clone());
        let xx_gens: Vec<FixedBitSet> = gens.into_iter().map(|(_, s)| s).collect();
        let xx = SetLattice::family_closure(m * m, &xx_gens)?;
        let x2x2 = SetLattice::product(xx.clone(), xx.clone());
        Self::new(action, [g, x, gx, xx, xg, x2x2])
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    pub fn lattice(&self, slot: Slot) -> &SetLattice {
        &self.lattices[slot.index()]
    }

    pub fn lattices(&self) -> &[SetLattice; 6] {
        &self.lattices
    }

    /// Replaces one lattice, checking its universe.
    pub fn with_lattice(mut self, slot: Slot, lattice: SetLattice) -> Result<Self, LatticeError> {
        let expected = slot.universe(self.action.group().order(), self.action.domain());
        if lattice.universe() != expected {
            return Err(LatticeError::UniverseMismatch { slot, expected, found: lattice.universe() });
        }
        self.lattices[slot.index()] = lattice;
        Ok(self)
    }
}

/// Generators of `L_XxX` in the minimal completion, each tagged with the
/// axiom that requires it: rectangles (2), graph images (6), and diagonal
/// projections (5), the last added until the closure is stable.
pub fn completion_generators(
    action: &GAction,
    g: &SetLattice,
    x: &SetLattice,
) -> Result<Vec<(u8, FixedBitSet)>, LatticeError> {
    let (n, m) = (action.group().order(), action.domain());
    if g.universe() != n {
        return Err(LatticeError::UniverseMismatch { slot: Slot::G, expected: n, found: g.universe() });
    }
    if x.universe() != m {
        return Err(LatticeError::UniverseMismatch { slot: Slot::X, expected: m, found: x.universe() });
    }
    let xg = SetLattice::product(x.clone(), g.clone());
    let mut gens: Vec<(u8, FixedBitSet)> = agree::rectangles(x, x).into_iter().map(|s| (2, s)).collect();
    gens.extend(agree::graph_images(action, &xg).into_iter().map(|s| (6, s)));
    let pair_orbits = agree::pair_orbit_set(action);
    loop {
        let sets: Vec<FixedBitSet> = gens.iter().map(|(_, s)| s.clone()).collect();
        let xx = SetLattice::family_closure(m * m, &sets)?;
        let x2x2 = SetLattice::product(xx.clone(), xx.clone());
        let mut missing: Vec<FixedBitSet> = Vec::new();
        for s in agree::projection_images(action, &x2x2, &pair_orbits) {
            if !xx.contains(&s) && !missing.contains(&s) {
                missing.push(s);
            }
        }
        if missing.is_empty() {
            return Ok(gens);
        }
        gens.extend(missing.into_iter().map(|s| (5, s)));
    }
}
