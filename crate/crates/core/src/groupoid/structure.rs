//! The splitting `G ≅ G_x × Pair(G_0)` of a connected groupoid, and the
//! coset index of a wide subgroupoid.

use std::fmt;
use std::sync::Arc;

use super::{
    isotropy, pair_groupoid, product, FiniteGroupoid, GroupoidError, Mor, Obj, Subgroupoid,
    SubgroupoidError,
};

/// Mutually inverse functors between a connected `G` and `G_x × Pair(G_0)`.
///
/// Morphisms of the target are indexed as in [`product`]: the isotropy
/// element `u` (local index in `G_x`) paired with the pair-groupoid morphism
/// `(y, z)` has index `u·n² + y·n + z`. Object `y` of `G` maps to object `y`.
#[derive(Clone, Debug)]
pub struct StructureWitness {
    pub base: Obj,
    pub target: FiniteGroupoid,
    /// `f_y: x → y`, the lowest-index morphism in `G(x, y)`.
    pub transfers: Vec<Mor>,
    /// local index in `G_x` → morphism of `G`
    pub isotropy: Vec<Mor>,
    pub forward: Vec<Mor>,
    pub backward: Vec<Mor>,
}

impl StructureWitness {
    /// Exhaustively checks that both functors preserve identities and
    /// composition and that they are inverse to each other.
    pub fn verify(&self, g: &FiniteGroupoid) -> Vec<String> {
        let mut failures = Vec::new();
        let t = &self.target;
        for x in 0..g.object_count() {
            if self.forward[g.identity(x)] != t.identity(x) {
                failures.push(format!("forward does not preserve identity of {x}"));
            }
            if self.backward[t.identity(x)] != g.identity(x) {
                failures.push(format!("backward does not preserve identity of {x}"));
            }
        }
        for a in 0..g.morphism_count() {
            if self.backward[self.forward[a]] != a {
                failures.push(format!("backward∘forward moves {a}"));
            }
            for &b in g.outgoing(g.cod(a)) {
                if self.forward[g.mul(b, a)] != t.mul(self.forward[b], self.forward[a]) {
                    failures.push(format!("forward breaks composite {b}∘{a}"));
                }
            }
        }
        for a in 0..t.morphism_count() {
            if self.forward[self.backward[a]] != a {
                failures.push(format!("forward∘backward moves {a}"));
            }
            for &b in t.outgoing(t.cod(a)) {
                if self.backward[t.mul(b, a)] != g.mul(self.backward[b], self.backward[a]) {
                    failures.push(format!("backward breaks composite {b}∘{a}"));
                }
            }
        }
        failures
    }
}

pub fn structure_decomposition(
    g: &Arc<FiniteGroupoid>,
    x: Obj,
) -> Result<StructureWitness, GroupoidError> {
    g.check_object(x)?;
    if !g.is_connected() {
        return Err(GroupoidError::Disconnected);
    }
    let n = g.object_count();
    let iso = isotropy(g, x).map_err(|e| match e {
        SubgroupoidError::Groupoid(e) => e,
        other => unreachable!("isotropy: {other}"),
    })?;
    let local = iso.embed().expect("isotropy group is non-empty");
    let target = product(&local.groupoid, &pair_groupoid(n)?);
    let transfers: Vec<Mor> = (0..n)
        .map(|y| g.hom_set(x, y).map(|h| h[0]))
        .collect::<Result<_, _>>()?;
    let nn = n * n;
    let forward = (0..g.morphism_count())
        .map(|a| {
            let (y, z) = (g.dom(a), g.cod(a));
            let u = g.mul(g.inverse(transfers[z]), g.mul(a, transfers[y]));
            local.local_morphism[u].expect("u lies in G_x") * nn + y * n + z
        })
        .collect();
    let backward = (0..target.morphism_count())
        .map(|t| {
            let (u, p) = (local.morphisms[t / nn], t % nn);
            let (y, z) = (p / n, p % n);
            g.mul(transfers[z], g.mul(u, g.inverse(transfers[y])))
        })
        .collect();
    Ok(StructureWitness {
        base: x,
        target,
        transfers,
        isotropy: local.morphisms,
        forward,
        backward,
    })
}

/// One summand `(G_e : H_{e_i})` of the index formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTerm {
    pub component: usize,
    pub base_object: Obj,
    pub g_order: usize,
    pub h_order: usize,
}

/// Total left-coset count of a wide subgroupoid in a connected groupoid,
/// next to the closed form `|H_0| · Σ_i (G_e : H_{e_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    /// `Σ_x |Mor_G(−, x) / ∼_{H,x}|`, counted class by class.
    pub cosets: usize,
    pub h_objects: usize,
    pub terms: Vec<IndexTerm>,
    pub formula: usize,
}

impl IndexReport {
    pub fn holds(&self) -> bool {
        self.cosets == self.formula
    }
}

impl fmt::Display for IndexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| (t.g_order / t.h_order).to_string())
            .collect();
        write!(f, "{} * ({})", self.h_objects, terms.join("+"))
    }
}

/// Index of a wide subgroupoid `H` of a connected groupoid `G`.
pub fn index(g: &FiniteGroupoid, h: &Subgroupoid) -> Result<IndexReport, SubgroupoidError> {
    h.require_wide()?;
    if !g.is_connected() {
        return Err(GroupoidError::Disconnected.into());
    }
    let mut cosets = 0;
    for x in 0..g.object_count() {
        let into = g.incoming(x);
        let mut class = vec![usize::MAX; into.len()];
        for i in 0..into.len() {
            if class[i] != usize::MAX {
                continue;
            }
            for j in i..into.len() {
                let rel = g.mul(g.inverse(into[i]), into[j]);
                if h.contains_morphism(rel) {
                    class[j] = cosets;
                }
            }
            cosets += 1;
        }
    }
    let e = 0;
    let g_order = g.endomorphisms(e).len();
    let labels = h.component_labels();
    let count = h.component_count();
    let terms: Vec<IndexTerm> = (0..count)
        .map(|c| {
            let base_object = labels.iter().position(|&l| l == Some(c)).unwrap();
            IndexTerm {
                component: c,
                base_object,
                g_order,
                h_order: h.isotropy_order(base_object),
            }
        })
        .collect();
    // Lagrange: |H_{e_i}| divides |G_{e_i}| = |G_e|
    let sum: usize = terms.iter().map(|t| t.g_order / t.h_order).sum();
    Ok(IndexReport {
        cosets,
        h_objects: h.objects().len(),
        formula: h.objects().len() * sum,
        terms,
    })
}
