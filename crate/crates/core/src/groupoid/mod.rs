//! Finite groupoids with fully materialised composition tables.
//!
//! Objects and morphisms are dense indices. `compose(g2, g1)` is "`g2` after
//! `g1`" and is defined exactly when `cod g1 == dom g2`. The table is stored
//! densely over composable pairs: the row of `g2` has one slot per morphism
//! into `dom g2`.

mod build;
mod structure;
mod sub;

pub use build::{
    coproduct, cyclic_group, group_as_groupoid, iso_bundle, pair_groupoid, permutations,
    product, symmetric_group, GroupTableError,
};
pub(crate) use sub::object_components;
pub use structure::{index, structure_decomposition, IndexReport, IndexTerm, StructureWitness};
pub use sub::{
    closure, connected_components, isotropy, ComponentDecomposition, Embedded, Subgroupoid,
    SubgroupoidError,
};

use std::fmt;

/// Object index.
pub type Obj = usize;
/// Morphism index.
pub type Mor = usize;

const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupoidError {
    #[error("the empty groupoid is not allowed")]
    Empty,
    #[error("{field}: expected {expected} entries, found {found}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{field}[{position}] = {value} is out of range")]
    IndexOutOfRange {
        field: &'static str,
        position: usize,
        value: usize,
    },
    #[error("missing composite for composable pair ({g2}, {g1})")]
    MissingCompose { g2: Mor, g1: Mor },
    #[error("composite for ({g2}, {g1}) given twice")]
    DuplicateCompose { g2: Mor, g1: Mor },
    #[error("({g2}, {g1}) is not a composable pair")]
    NotComposable { g2: Mor, g1: Mor },
    #[error("object {0} out of range")]
    ObjectOutOfRange(Obj),
    #[error("morphism {0} out of range")]
    MorphismOutOfRange(Mor),
    #[error("groupoid axioms violated: {}", .0.first().map(ToString::to_string).unwrap_or_default())]
    Invalid(Vec<Violation>),
    #[error("groupoid is not connected")]
    Disconnected,
}

/// Raw tables, the interchange shape of a groupoid before axiom checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidTables {
    pub objects: usize,
    pub dom: Vec<Obj>,
    pub cod: Vec<Obj>,
    pub identity: Vec<Mor>,
    pub inverse: Vec<Mor>,
    /// `(g2, g1, g2∘g1)` for every composable pair.
    pub compose: Vec<(Mor, Mor, Mor)>,
}

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IdentityEndpoints { object: Obj, identity: Mor },
    LeftIdentity { g: Mor },
    RightIdentity { g: Mor },
    ComposeEndpoints { g2: Mor, g1: Mor, result: Mor },
    Associativity { h: Mor, g: Mor, f: Mor },
    InverseEndpoints { g: Mor, inverse: Mor },
    LeftInverse { g: Mor },
    RightInverse { g: Mor },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityEndpoints { object, identity } => {
                write!(f, "identity {identity} of object {object} is not an endomorphism of it")
            }
            Violation::LeftIdentity { g } => write!(f, "left identity law fails at {g}"),
            Violation::RightIdentity { g } => write!(f, "right identity law fails at {g}"),
            Violation::ComposeEndpoints { g2, g1, result } => {
                write!(f, "composite {g2}∘{g1} = {result} has wrong endpoints")
            }
            Violation::Associativity { h, g, f: ff } => {
                write!(f, "associativity fails on triple ({h}, {g}, {ff})")
            }
            Violation::InverseEndpoints { g, inverse } => {
                write!(f, "inverse {inverse} of {g} has wrong endpoints")
            }
            Violation::LeftInverse { g } => write!(f, "inverse({g})∘{g} is not an identity"),
            Violation::RightInverse { g } => write!(f, "{g}∘inverse({g}) is not an identity"),
        }
    }
}

/// A finite groupoid. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    identity: Vec<Mor>,
    inverse: Vec<Mor>,
    incoming: Vec<Vec<Mor>>,
    outgoing: Vec<Vec<Mor>>,
    in_pos: Vec<usize>,
    row_offset: Vec<usize>,
    table: Vec<u32>,
}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroupoid")
            .field("objects", &self.object_count())
            .field("morphisms", &self.morphism_count())
            .finish()
    }
}

fn check_range(field: &'static str, v: &[usize], bound: usize) -> Result<(), GroupoidError> {
    match v.iter().position(|&x| x >= bound) {
        Some(position) => Err(GroupoidError::IndexOutOfRange {
            field,
            position,
            value: v[position],
        }),
        None => Ok(()),
    }
}

fn check_len(field: &'static str, v: &[usize], expected: usize) -> Result<(), GroupoidError> {
    if v.len() != expected {
        return Err(GroupoidError::LengthMismatch {
            field,
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

impl FiniteGroupoid {
    /// Builds the table skeleton and fills it from `compose`, which is called
    /// once per composable pair. No axiom is checked; see [`Self::validate`].
    pub fn from_fn(
        objects: usize,
        dom: Vec<Obj>,
        cod: Vec<Obj>,
        identity: Vec<Mor>,
        inverse: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Mor,
    ) -> Result<Self, GroupoidError> {
        let mut g = Self::skeleton(objects, dom, cod, identity, inverse)?;
        let m = g.morphism_count();
        for g2 in 0..m {
            let x = g.dom[g2];
            for k in 0..g.incoming[x].len() {
                let g1 = g.incoming[x][k];
                let r = compose(g2, g1);
                if r >= m {
                    return Err(GroupoidError::IndexOutOfRange {
                        field: "compose",
                        position: g.row_offset[g2] + k,
                        value: r,
                    });
                }
                g.table[g.row_offset[g2] + k] = r as u32;
            }
        }
        Ok(g)
    }

    /// Builds from raw tables, rejecting structural problems (lengths,
    /// ranges, missing, duplicate or non-composable compose entries).
    pub fn from_tables(t: &GroupoidTables) -> Result<Self, GroupoidError> {
        let mut g = Self::skeleton(
            t.objects,
            t.dom.clone(),
            t.cod.clone(),
            t.identity.clone(),
            t.inverse.clone(),
        )?;
        let m = g.morphism_count();
        for &(g2, g1, r) in &t.compose {
            if g2 >= m {
                return Err(GroupoidError::MorphismOutOfRange(g2));
            }
            if g1 >= m {
                return Err(GroupoidError::MorphismOutOfRange(g1));
            }
            if r >= m {
                return Err(GroupoidError::MorphismOutOfRange(r));
            }
            if g.cod[g1] != g.dom[g2] {
                return Err(GroupoidError::NotComposable { g2, g1 });
            }
            let slot = g.slot(g2, g1);
            if g.table[slot] != UNSET {
                return Err(GroupoidError::DuplicateCompose { g2, g1 });
            }
            g.table[slot] = r as u32;
        }
        for g2 in 0..m {
            for &g1 in &g.incoming[g.dom[g2]] {
                if g.table[g.slot(g2, g1)] == UNSET {
                    return Err(GroupoidError::MissingCompose { g2, g1 });
                }
            }
        }
        Ok(g)
    }

    /// [`Self::from_tables`] followed by [`Self::validate`].
    pub fn from_tables_validated(t: &GroupoidTables) -> Result<Self, GroupoidError> {
        let g = Self::from_tables(t)?;
        let report = g.validate();
        if report.is_empty() {
            Ok(g)
        } else {
            Err(GroupoidError::Invalid(report))
        }
    }

    fn skeleton(
        objects: usize,
        dom: Vec<Obj>,
        cod: Vec<Obj>,
        identity: Vec<Mor>,
        inverse: Vec<Mor>,
    ) -> Result<Self, GroupoidError> {
        if objects == 0 {
            return Err(GroupoidError::Empty);
        }
        let m = dom.len();
        check_len("cod", &cod, m)?;
        check_len("id", &identity, objects)?;
        check_len("inv", &inverse, m)?;
        check_range("dom", &dom, objects)?;
        check_range("cod", &cod, objects)?;
        check_range("id", &identity, m)?;
        check_range("inv", &inverse, m)?;

        let mut incoming = vec![Vec::new(); objects];
        let mut outgoing = vec![Vec::new(); objects];
        let mut in_pos = vec![0; m];
        for g in 0..m {
            in_pos[g] = incoming[cod[g]].len();
            incoming[cod[g]].push(g);
            outgoing[dom[g]].push(g);
        }
        let mut row_offset = Vec::with_capacity(m);
        let mut total = 0usize;
        for g in 0..m {
            row_offset.push(total);
            total += incoming[dom[g]].len();
        }
        Ok(FiniteGroupoid {
            dom,
            cod,
            identity,
            inverse,
            incoming,
            outgoing,
            in_pos,
            row_offset,
            table: vec![UNSET; total],
        })
    }

    #[inline]
    fn slot(&self, g2: Mor, g1: Mor) -> usize {
        self.row_offset[g2] + self.in_pos[g1]
    }

    pub fn object_count(&self) -> usize {
        self.identity.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, g: Mor) -> Obj {
        self.dom[g]
    }

    pub fn cod(&self, g: Mor) -> Obj {
        self.cod[g]
    }

    pub fn identity(&self, x: Obj) -> Mor {
        self.identity[x]
    }

    pub fn inverse(&self, g: Mor) -> Mor {
        self.inverse[g]
    }

    pub fn is_endo(&self, g: Mor) -> bool {
        self.dom[g] == self.cod[g]
    }

    /// `g2 ∘ g1`, or `None` when `cod g1 != dom g2`.
    pub fn compose(&self, g2: Mor, g1: Mor) -> Option<Mor> {
        (self.cod[g1] == self.dom[g2]).then(|| self.table[self.slot(g2, g1)] as Mor)
    }

    /// `g2 ∘ g1` for a pair known to be composable.
    ///
    /// Panics if the pair is not composable.
    #[inline]
    pub fn mul(&self, g2: Mor, g1: Mor) -> Mor {
        assert_eq!(
            self.cod[g1], self.dom[g2],
            "morphisms {g2} and {g1} are not composable"
        );
        self.table[self.slot(g2, g1)] as Mor
    }

    /// `Mor(−, x)`: every morphism with codomain `x`, ascending.
    pub fn incoming(&self, x: Obj) -> &[Mor] {
        &self.incoming[x]
    }

    /// `Mor(x, −)`: every morphism with domain `x`, ascending.
    pub fn outgoing(&self, x: Obj) -> &[Mor] {
        &self.outgoing[x]
    }

    /// `G(x, y)`, ascending.
    pub fn hom_set(&self, x: Obj, y: Obj) -> Result<Vec<Mor>, GroupoidError> {
        self.check_object(x)?;
        self.check_object(y)?;
        Ok(self.outgoing[x]
            .iter()
            .copied()
            .filter(|&g| self.cod[g] == y)
            .collect())
    }

    /// The isotropy group `G(x, x)` as morphism indices.
    pub fn endomorphisms(&self, x: Obj) -> Vec<Mor> {
        self.outgoing[x]
            .iter()
            .copied()
            .filter(|&g| self.cod[g] == x)
            .collect()
    }

    /// All morphisms of the group bundle `Iso G`.
    pub fn iso_morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphism_count()).filter(|&g| self.is_endo(g))
    }

    pub fn check_object(&self, x: Obj) -> Result<(), GroupoidError> {
        if x < self.object_count() {
            Ok(())
        } else {
            Err(GroupoidError::ObjectOutOfRange(x))
        }
    }

    pub fn check_morphism(&self, g: Mor) -> Result<(), GroupoidError> {
        if g < self.morphism_count() {
            Ok(())
        } else {
            Err(GroupoidError::MorphismOutOfRange(g))
        }
    }

    /// Exhaustive scan of every groupoid axiom instance. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let m = self.morphism_count();
        for x in 0..self.object_count() {
            let e = self.identity[x];
            if self.dom[e] != x || self.cod[e] != x {
                out.push(Violation::IdentityEndpoints {
                    object: x,
                    identity: e,
                });
            }
        }
        // coherence first: later checks read composites
        let mut coherent = true;
        for g2 in 0..m {
            for &g1 in &self.incoming[self.dom[g2]] {
                let r = self.mul(g2, g1);
                if self.dom[r] != self.dom[g1] || self.cod[r] != self.cod[g2] {
                    out.push(Violation::ComposeEndpoints { g2, g1, result: r });
                    coherent = false;
                }
            }
        }
        for g in 0..m {
            let (x, y) = (self.dom[g], self.cod[g]);
            if self.cod[self.identity[x]] == x && self.mul(g, self.identity[x]) != g {
                out.push(Violation::RightIdentity { g });
            }
            if self.dom[self.identity[y]] == y && self.mul(self.identity[y], g) != g {
                out.push(Violation::LeftIdentity { g });
            }
            let gi = self.inverse[g];
            if self.dom[gi] != y || self.cod[gi] != x {
                out.push(Violation::InverseEndpoints { g, inverse: gi });
                continue;
            }
            if self.mul(gi, g) != self.identity[x] {
                out.push(Violation::LeftInverse { g });
            }
            if self.mul(g, gi) != self.identity[y] {
                out.push(Violation::RightInverse { g });
            }
        }
        if coherent {
            for f in 0..m {
                for &g in &self.outgoing[self.cod[f]] {
                    let gf = self.mul(g, f);
                    for &h in &self.outgoing[self.cod[g]] {
                        if self.mul(h, gf) != self.mul(self.mul(h, g), f) {
                            out.push(Violation::Associativity { h, g, f });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The raw tables; compose entries ordered by `g2` then `g1`.
    pub fn to_tables(&self) -> GroupoidTables {
        let mut compose = Vec::with_capacity(self.table.len());
        for g2 in 0..self.morphism_count() {
            for &g1 in &self.incoming[self.dom[g2]] {
                compose.push((g2, g1, self.mul(g2, g1)));
            }
        }
        GroupoidTables {
            objects: self.object_count(),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            identity: self.identity.clone(),
            inverse: self.inverse.clone(),
            compose,
        }
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        sub::object_components(self)
            .iter()
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }
}
