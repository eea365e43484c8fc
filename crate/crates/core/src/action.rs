//! Groupoid actions on finite sets, the action groupoid, orbits and the
//! Cauchy–Frobenius count.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::groupoid::object_components;
use crate::groupoid::{FiniteGroupoid, GroupoidError, Mor, Obj, Subgroupoid};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("{field}: expected {expected} entries, found {found}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("action of {g} sends {x} to {y}, outside the target fibre")]
    ImageOutOfRange { g: Mor, x: usize, y: usize },
    #[error("action of {0} is not a bijection")]
    NotBijective(Mor),
    #[error("identity of object {0} does not act trivially")]
    IdentityMoves(Obj),
    #[error("action is not functorial on ({g2}, {g1})")]
    NotFunctorial { g2: Mor, g1: Mor },
    #[error("element {x} is outside X({object})")]
    ElementOutOfRange { object: Obj, x: usize },
    #[error("morphism {0} is not an endomorphism")]
    NotEndomorphism(Mor),
    #[error("G-sets live over different groupoids")]
    BaseMismatch,
    #[error("fixed-point average {0} is not an integer")]
    NonIntegral(BigRational),
    #[error("fixed-point count {formula} differs from orbit count {orbits}")]
    OrbitMismatch { formula: BigRational, orbits: usize },
}

/// A functor from a groupoid to finite sets: fibre sizes per object and one
/// bijection per morphism, `action[g][x] = X(g)(x)`.
#[derive(Clone, Debug)]
pub struct GSet {
    base: Arc<FiniteGroupoid>,
    sizes: Vec<usize>,
    action: Vec<Vec<u32>>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
            && self.sizes == other.sizes
            && self.action == other.action
    }
}

impl Eq for GSet {}

impl GSet {
    /// Checks bijectivity, identities and functoriality exhaustively.
    pub fn new(
        base: Arc<FiniteGroupoid>,
        sizes: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, ActionError> {
        if sizes.len() != base.object_count() {
            return Err(ActionError::LengthMismatch {
                field: "sizes",
                expected: base.object_count(),
                found: sizes.len(),
            });
        }
        if action.len() != base.morphism_count() {
            return Err(ActionError::LengthMismatch {
                field: "action",
                expected: base.morphism_count(),
                found: action.len(),
            });
        }
        let mut packed = Vec::with_capacity(action.len());
        for (g, img) in action.into_iter().enumerate() {
            let (d, c) = (sizes[base.dom(g)], sizes[base.cod(g)]);
            if img.len() != d {
                return Err(ActionError::LengthMismatch {
                    field: "act",
                    expected: d,
                    found: img.len(),
                });
            }
            if let Some(x) = img.iter().position(|&y| y >= c) {
                return Err(ActionError::ImageOutOfRange { g, x, y: img[x] });
            }
            packed.push(img.into_iter().map(|y| y as u32).collect());
        }
        let x = GSet {
            base,
            sizes,
            action: packed,
        };
        x.check()?;
        Ok(x)
    }

    /// Builds the action from `f(g, x) = X(g)(x)` and checks it.
    pub fn from_fn(
        base: Arc<FiniteGroupoid>,
        sizes: Vec<usize>,
        f: impl Fn(Mor, usize) -> usize,
    ) -> Result<Self, ActionError> {
        let action = (0..base.morphism_count())
            .map(|g| (0..sizes[base.dom(g)]).map(|x| f(g, x)).collect())
            .collect();
        GSet::new(base, sizes, action)
    }

    fn check(&self) -> Result<(), ActionError> {
        let g = &*self.base;
        for a in 0..g.morphism_count() {
            let img = &self.action[a];
            if self.sizes[g.dom(a)] != self.sizes[g.cod(a)] {
                return Err(ActionError::NotBijective(a));
            }
            let mut seen = vec![false; img.len()];
            for &y in img {
                if std::mem::replace(&mut seen[y as usize], true) {
                    return Err(ActionError::NotBijective(a));
                }
            }
        }
        for x in 0..g.object_count() {
            let img = &self.action[g.identity(x)];
            if img.iter().enumerate().any(|(i, &y)| y as usize != i) {
                return Err(ActionError::IdentityMoves(x));
            }
        }
        for g1 in 0..g.morphism_count() {
            for &g2 in g.outgoing(g.cod(g1)) {
                let c = g.mul(g2, g1);
                let lhs = &self.action[c];
                let ok = (0..self.sizes[g.dom(g1)])
                    .all(|x| lhs[x] == self.action[g2][self.action[g1][x] as usize]);
                if !ok {
                    return Err(ActionError::NotFunctorial { g2, g1 });
                }
            }
        }
        Ok(())
    }

    /// The terminal G-set `△1`: one point over every object.
    pub fn terminal(base: Arc<FiniteGroupoid>) -> Self {
        let n = base.object_count();
        let action = vec![vec![0u32]; base.morphism_count()];
        GSet {
            base,
            sizes: vec![1; n],
            action,
        }
    }

    /// Fibrewise disjoint union over the same base; elements of `other`
    /// follow those of `self` in each fibre.
    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet, ActionError> {
        if !(Arc::ptr_eq(&self.base, &other.base) || self.base == other.base) {
            return Err(ActionError::BaseMismatch);
        }
        let sizes: Vec<usize> = self.sizes.iter().zip(&other.sizes).map(|(a, b)| a + b).collect();
        let g = &*self.base;
        let action = (0..g.morphism_count())
            .map(|a| {
                let shift = self.sizes[g.cod(a)] as u32;
                self.action[a]
                    .iter()
                    .copied()
                    .chain(other.action[a].iter().map(|&y| y + shift))
                    .collect()
            })
            .collect();
        Ok(GSet {
            base: self.base.clone(),
            sizes,
            action,
        })
    }

    pub fn base(&self) -> &Arc<FiniteGroupoid> {
        &self.base
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, x: Obj) -> usize {
        self.sizes[x]
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `X(g)(x)`.
    #[inline]
    pub fn act(&self, g: Mor, x: usize) -> usize {
        self.action[g][x] as usize
    }

    pub fn image(&self, g: Mor) -> &[u32] {
        &self.action[g]
    }

    /// `Fix(g)` for an endomorphism `g`.
    pub fn fix(&self, g: Mor) -> Result<Vec<usize>, ActionError> {
        self.base.check_morphism(g)?;
        if !self.base.is_endo(g) {
            return Err(ActionError::NotEndomorphism(g));
        }
        Ok((0..self.sizes[self.base.dom(g)])
            .filter(|&x| self.act(g, x) == x)
            .collect())
    }

    /// `Stab(x) = {g ∈ G(G, G) | X(g)(x) = x}` as a one-object subgroupoid.
    pub fn stabilizer(&self, object: Obj, x: usize) -> Result<Subgroupoid, ActionError> {
        self.base.check_object(object)?;
        if x >= self.sizes[object] {
            return Err(ActionError::ElementOutOfRange { object, x });
        }
        let morphisms: Vec<Mor> = self
            .base
            .endomorphisms(object)
            .into_iter()
            .filter(|&g| self.act(g, x) == x)
            .collect();
        Ok(Subgroupoid::new(self.base.clone(), [object], morphisms)
            .expect("stabilizers are subgroups"))
    }

    pub fn action_groupoid(&self) -> ActionGroupoid {
        ActionGroupoid::new(self)
    }

    /// Connected components of the action groupoid, as `(object, element)`
    /// lists sorted ascending; orbits are ordered by their first element.
    pub fn orbits(&self) -> Vec<Vec<(Obj, usize)>> {
        let ag = self.action_groupoid();
        let labels = object_components(&ag.groupoid);
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (o, &l) in labels.iter().enumerate() {
            out[l].push(ag.object_label[o]);
        }
        out
    }

    /// Transitive means the action groupoid is connected.
    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }
}

/// `G ⋊ X`: objects `⟨G, x⟩` with `x ∈ X(G)`, morphisms `(g, x)` from
/// `⟨dom g, x⟩` to `⟨cod g, X(g)(x)⟩`.
#[derive(Clone, Debug)]
pub struct ActionGroupoid {
    pub groupoid: FiniteGroupoid,
    pub object_label: Vec<(Obj, usize)>,
    /// underlying base morphism of each morphism
    pub morphism_label: Vec<Mor>,
    /// source element of each morphism
    pub morphism_source: Vec<usize>,
    object_offset: Vec<usize>,
    morphism_offset: Vec<usize>,
}

impl ActionGroupoid {
    fn new(x: &GSet) -> Self {
        let g = &*x.base;
        let mut object_offset = Vec::with_capacity(g.object_count());
        let mut object_label = Vec::new();
        for o in 0..g.object_count() {
            object_offset.push(object_label.len());
            object_label.extend((0..x.sizes[o]).map(|e| (o, e)));
        }
        let mut morphism_offset = Vec::with_capacity(g.morphism_count());
        let mut morphism_label = Vec::new();
        let mut morphism_source = Vec::new();
        for a in 0..g.morphism_count() {
            morphism_offset.push(morphism_label.len());
            for e in 0..x.sizes[g.dom(a)] {
                morphism_label.push(a);
                morphism_source.push(e);
            }
        }
        let obj = |o: Obj, e: usize| object_offset[o] + e;
        let mor = |a: Mor, e: usize| morphism_offset[a] + e;
        let dom = (0..morphism_label.len())
            .map(|k| obj(g.dom(morphism_label[k]), morphism_source[k]))
            .collect();
        let cod = (0..morphism_label.len())
            .map(|k| {
                let a = morphism_label[k];
                obj(g.cod(a), x.act(a, morphism_source[k]))
            })
            .collect();
        let identity = object_label
            .iter()
            .map(|&(o, e)| mor(g.identity(o), e))
            .collect();
        let inverse = (0..morphism_label.len())
            .map(|k| {
                let a = morphism_label[k];
                mor(g.inverse(a), x.act(a, morphism_source[k]))
            })
            .collect();
        let groupoid = FiniteGroupoid::from_fn(
            object_label.len().max(1),
            dom,
            cod,
            identity,
            inverse,
            |k2, k1| mor(g.mul(morphism_label[k2], morphism_label[k1]), morphism_source[k1]),
        );
        let groupoid = match groupoid {
            Ok(gp) => gp,
            // an empty G-set has an empty category of elements
            Err(_) => FiniteGroupoid::from_fn(1, vec![0], vec![0], vec![0], vec![0], |_, _| 0)
                .expect("trivial group"),
        };
        ActionGroupoid {
            groupoid,
            object_label,
            morphism_label,
            morphism_source,
            object_offset,
            morphism_offset,
        }
    }

    /// Index of `⟨object, x⟩`.
    pub fn object_of(&self, object: Obj, x: usize) -> usize {
        self.object_offset[object] + x
    }

    /// Index of the morphism `(g, x)`.
    pub fn morphism_of(&self, g: Mor, x: usize) -> usize {
        self.morphism_offset[g] + x
    }
}

/// The per-component terms of the fixed-point count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfTerm {
    pub component: usize,
    /// `|(Iso G_c)_1|`
    pub iso_order: usize,
    /// `Σ_{g ∈ (Iso G_c)_1} |Fix(g)|`
    pub fixed_points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfCount {
    pub terms: Vec<CfTerm>,
    /// `Σ_c (1/|(Iso G_c)_1|) Σ_{g ∈ (Iso G_c)_1} |Fix(g)|`
    pub value: BigRational,
    pub orbits: usize,
}

fn rational(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Fixed-point averages per connected component of the base.
pub fn cf_terms(x: &GSet) -> Vec<CfTerm> {
    let g = &*x.base;
    let labels = object_components(g);
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut terms: Vec<CfTerm> = (0..count)
        .map(|component| CfTerm {
            component,
            iso_order: 0,
            fixed_points: 0,
        })
        .collect();
    for a in g.iso_morphisms() {
        let t = &mut terms[labels[g.dom(a)]];
        t.iso_order += 1;
        t.fixed_points += (0..x.sizes[g.dom(a)]).filter(|&e| x.act(a, e) == e).count();
    }
    terms
}

/// The orbit count from fixed points, averaged over the group bundle of
/// each connected component of the base and summed. On a connected base
/// this is `(1/|(Iso G)_1|) Σ_{g ∈ (Iso G)_1} |Fix(g)|`. The value must be
/// an integer equal to the number of orbits; anything else is an error.
pub fn cf_count(x: &GSet) -> Result<CfCount, ActionError> {
    let terms = cf_terms(x);
    let value = cf_sum(&terms);
    let orbits = x.orbits().len();
    if !value.is_integer() {
        return Err(ActionError::NonIntegral(value));
    }
    if value != rational(orbits) {
        return Err(ActionError::OrbitMismatch {
            formula: value,
            orbits,
        });
    }
    Ok(CfCount {
        terms,
        value,
        orbits,
    })
}

fn cf_sum(terms: &[CfTerm]) -> BigRational {
    terms.iter().fold(BigRational::zero(), |acc, t| {
        acc + BigRational::new(BigInt::from(t.fixed_points), BigInt::from(t.iso_order))
    })
}

/// The per-component fixed-point sum of [`cf_count`], without any check.
pub fn cf_value(x: &GSet) -> BigRational {
    cf_sum(&cf_terms(x))
}

/// The single global average `(1/|(Iso G)_1|) Σ_{g ∈ (Iso G)_1} |Fix(g)|`
/// over the whole group bundle, without any check. It agrees with the orbit
/// count on connected bases only.
pub fn cf_global(x: &GSet) -> BigRational {
    let terms = cf_terms(x);
    let iso: usize = terms.iter().map(|t| t.iso_order).sum();
    let fixed: usize = terms.iter().map(|t| t.fixed_points).sum();
    BigRational::new(BigInt::from(fixed), BigInt::from(iso))
}

/// For every base object `G` and every orbit meeting `X(G)`, the stabilizer
/// orders over that intersection must sum to `|G_G|`. Returns the failures.
pub fn orbit_stabilizer_check(x: &GSet) -> Vec<String> {
    let g = &*x.base;
    let mut failures = Vec::new();
    for (i, orbit) in x.orbits().iter().enumerate() {
        for o in 0..g.object_count() {
            let elems: Vec<usize> = orbit
                .iter()
                .filter(|(b, _)| *b == o)
                .map(|&(_, e)| e)
                .collect();
            if elems.is_empty() {
                continue;
            }
            let sum: usize = elems
                .iter()
                .map(|&e| x.stabilizer(o, e).expect("in range").morphisms().len())
                .sum();
            let order = g.endomorphisms(o).len();
            if sum != order {
                failures.push(format!(
                    "orbit {i} at object {o}: stabilizer orders sum to {sum}, |G_{o}| = {order}"
                ));
            }
        }
    }
    failures
}
