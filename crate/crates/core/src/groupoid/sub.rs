//! Subgroupoids, generated subgroupoids and connected components.

use std::collections::VecDeque;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::{FiniteGroupoid, GroupoidError, Mor, Obj};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubgroupoidError {
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("identity of object {0} is missing")]
    MissingIdentity(Obj),
    #[error("morphism {0} has an endpoint outside the object set")]
    EndpointOutside(Mor),
    #[error("not closed under composition: {g2}∘{g1} is missing")]
    NotClosedCompose { g2: Mor, g1: Mor },
    #[error("not closed under inverses: inverse of {0} is missing")]
    NotClosedInverse(Mor),
    #[error("subgroupoid has no objects")]
    Empty,
    #[error("subgroupoid is not wide")]
    NotWide,
}

/// A subgroupoid of a shared parent groupoid. Object and morphism lists are
/// sorted ascending.
#[derive(Clone, Debug)]
pub struct Subgroupoid {
    parent: Arc<FiniteGroupoid>,
    objects: Vec<Obj>,
    morphisms: Vec<Mor>,
    has_object: Vec<bool>,
    has_morphism: Vec<bool>,
}

impl PartialEq for Subgroupoid {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent)
            && self.objects == other.objects
            && self.morphisms == other.morphisms
    }
}

impl Eq for Subgroupoid {}

/// A subgroupoid re-indexed as a groupoid of its own.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub groupoid: Arc<FiniteGroupoid>,
    /// local object → parent object
    pub objects: Vec<Obj>,
    /// local morphism → parent morphism
    pub morphisms: Vec<Mor>,
    /// parent object → local object
    pub local_object: Vec<Option<Obj>>,
    /// parent morphism → local morphism
    pub local_morphism: Vec<Option<Mor>>,
}

impl Subgroupoid {
    /// Checks every subgroupoid invariant against `parent`.
    pub fn new(
        parent: Arc<FiniteGroupoid>,
        objects: impl IntoIterator<Item = Obj>,
        morphisms: impl IntoIterator<Item = Mor>,
    ) -> Result<Self, SubgroupoidError> {
        let mut has_object = vec![false; parent.object_count()];
        for x in objects {
            parent.check_object(x)?;
            has_object[x] = true;
        }
        let mut has_morphism = vec![false; parent.morphism_count()];
        for g in morphisms {
            parent.check_morphism(g)?;
            has_morphism[g] = true;
        }
        let h = Self::from_masks(parent, has_object, has_morphism);
        h.check()?;
        Ok(h)
    }

    fn from_masks(parent: Arc<FiniteGroupoid>, has_object: Vec<bool>, has_morphism: Vec<bool>) -> Self {
        let objects = (0..has_object.len()).filter(|&x| has_object[x]).collect();
        let morphisms = (0..has_morphism.len()).filter(|&g| has_morphism[g]).collect();
        Subgroupoid {
            parent,
            objects,
            morphisms,
            has_object,
            has_morphism,
        }
    }

    fn check(&self) -> Result<(), SubgroupoidError> {
        let g = &*self.parent;
        for &x in &self.objects {
            if !self.has_morphism[g.identity(x)] {
                return Err(SubgroupoidError::MissingIdentity(x));
            }
        }
        for &a in &self.morphisms {
            if !self.has_object[g.dom(a)] || !self.has_object[g.cod(a)] {
                return Err(SubgroupoidError::EndpointOutside(a));
            }
            if !self.has_morphism[g.inverse(a)] {
                return Err(SubgroupoidError::NotClosedInverse(a));
            }
        }
        for &a in &self.morphisms {
            for &b in g.outgoing(g.cod(a)) {
                if self.has_morphism[b] && !self.has_morphism[g.mul(b, a)] {
                    return Err(SubgroupoidError::NotClosedCompose { g2: b, g1: a });
                }
            }
        }
        Ok(())
    }

    /// The whole parent as a (wide) subgroupoid.
    pub fn full(parent: Arc<FiniteGroupoid>) -> Self {
        let (n, m) = (parent.object_count(), parent.morphism_count());
        Self::from_masks(parent, vec![true; n], vec![true; m])
    }

    /// The wide subgroupoid of identities.
    pub fn discrete(parent: Arc<FiniteGroupoid>) -> Self {
        let mut has_morphism = vec![false; parent.morphism_count()];
        for x in 0..parent.object_count() {
            has_morphism[parent.identity(x)] = true;
        }
        let n = parent.object_count();
        Self::from_masks(parent, vec![true; n], has_morphism)
    }

    /// `Iso G` as a wide subgroupoid.
    pub fn iso_bundle(parent: Arc<FiniteGroupoid>) -> Self {
        let has_morphism = (0..parent.morphism_count()).map(|g| parent.is_endo(g)).collect();
        let n = parent.object_count();
        Self::from_masks(parent, vec![true; n], has_morphism)
    }

    pub fn parent(&self) -> &Arc<FiniteGroupoid> {
        &self.parent
    }

    pub fn objects(&self) -> &[Obj] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Mor] {
        &self.morphisms
    }

    pub fn contains_object(&self, x: Obj) -> bool {
        self.has_object[x]
    }

    pub fn contains_morphism(&self, g: Mor) -> bool {
        self.has_morphism[g]
    }

    pub fn is_wide(&self) -> bool {
        self.objects.len() == self.parent.object_count()
    }

    pub fn require_wide(&self) -> Result<(), SubgroupoidError> {
        if self.is_wide() {
            Ok(())
        } else {
            Err(SubgroupoidError::NotWide)
        }
    }

    /// `Mor_H(−, x)`.
    pub fn incoming(&self, x: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.parent
            .incoming(x)
            .iter()
            .copied()
            .filter(|&g| self.has_morphism[g])
    }

    /// `Mor_H(x, −)`.
    pub fn outgoing(&self, x: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.parent
            .outgoing(x)
            .iter()
            .copied()
            .filter(|&g| self.has_morphism[g])
    }

    /// `|H_x|`, zero when `x ∉ H_0`.
    pub fn isotropy_order(&self, x: Obj) -> usize {
        if !self.has_object[x] {
            return 0;
        }
        self.outgoing(x).filter(|&g| self.parent.cod(g) == x).count()
    }

    /// Component label of each parent object inside `H` (`None` off `H_0`),
    /// numbered by lowest object.
    pub fn component_labels(&self) -> Vec<Option<usize>> {
        let n = self.parent.object_count();
        let mut uf = UnionFind::new(n);
        for &g in &self.morphisms {
            uf.union(self.parent.dom(g), self.parent.cod(g));
        }
        label_roots(n, |x| uf.find(x), |x| self.has_object[x])
    }

    /// `|(H_λ)_0|` for the component `H_λ` containing `x`, zero off `H_0`.
    pub fn component_size_of(&self, x: Obj) -> usize {
        let labels = self.component_labels();
        match labels[x] {
            Some(l) => labels.iter().filter(|&&m| m == Some(l)).count(),
            None => 0,
        }
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().iter().flatten().max().map_or(0, |m| m + 1)
    }

    /// Re-indexes `H` as a standalone groupoid in increasing parent order.
    pub fn embed(&self) -> Result<Embedded, SubgroupoidError> {
        if self.objects.is_empty() {
            return Err(SubgroupoidError::Empty);
        }
        let g = &*self.parent;
        let mut local_object = vec![None; g.object_count()];
        for (i, &x) in self.objects.iter().enumerate() {
            local_object[x] = Some(i);
        }
        let mut local_morphism = vec![None; g.morphism_count()];
        for (i, &a) in self.morphisms.iter().enumerate() {
            local_morphism[a] = Some(i);
        }
        let lo = |x: Obj| local_object[x].expect("object in H");
        let lm = |a: Mor| local_morphism[a].expect("morphism in H");
        let groupoid = FiniteGroupoid::from_fn(
            self.objects.len(),
            self.morphisms.iter().map(|&a| lo(g.dom(a))).collect(),
            self.morphisms.iter().map(|&a| lo(g.cod(a))).collect(),
            self.objects.iter().map(|&x| lm(g.identity(x))).collect(),
            self.morphisms.iter().map(|&a| lm(g.inverse(a))).collect(),
            |b, a| lm(g.mul(self.morphisms[b], self.morphisms[a])),
        )?;
        Ok(Embedded {
            groupoid: Arc::new(groupoid),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            local_object,
            local_morphism,
        })
    }
}

fn label_roots(
    n: usize,
    mut root: impl FnMut(usize) -> usize,
    include: impl Fn(usize) -> bool,
) -> Vec<Option<usize>> {
    let mut label_of_root = vec![None; n];
    let mut next = 0;
    (0..n)
        .map(|x| {
            if !include(x) {
                return None;
            }
            let r = root(x);
            Some(*label_of_root[r].get_or_insert_with(|| {
                next += 1;
                next - 1
            }))
        })
        .collect()
}

/// Component id per object, numbered by lowest object index.
pub(crate) fn object_components(g: &FiniteGroupoid) -> Vec<usize> {
    let n = g.object_count();
    let mut uf = UnionFind::new(n);
    for a in 0..g.morphism_count() {
        uf.union(g.dom(a), g.cod(a));
    }
    label_roots(n, |x| uf.find(x), |_| true)
        .into_iter()
        .map(|l| l.expect("every object labelled"))
        .collect()
}

/// The connected components of a groupoid, each as a full subgroupoid.
#[derive(Clone, Debug)]
pub struct ComponentDecomposition {
    pub component_of_object: Vec<usize>,
    pub components: Vec<Subgroupoid>,
}

pub fn connected_components(g: &Arc<FiniteGroupoid>) -> ComponentDecomposition {
    let labels = object_components(g);
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let shared = g.clone();
    let components = (0..count)
        .map(|c| {
            let has_object = labels.iter().map(|&l| l == c).collect();
            let has_morphism = (0..g.morphism_count())
                .map(|a| labels[g.dom(a)] == c)
                .collect();
            Subgroupoid::from_masks(shared.clone(), has_object, has_morphism)
        })
        .collect();
    ComponentDecomposition {
        component_of_object: labels,
        components,
    }
}

/// `G_x` as a one-object subgroupoid.
pub fn isotropy(g: &Arc<FiniteGroupoid>, x: Obj) -> Result<Subgroupoid, SubgroupoidError> {
    g.check_object(x)?;
    let mut has_object = vec![false; g.object_count()];
    has_object[x] = true;
    let has_morphism = (0..g.morphism_count())
        .map(|a| g.dom(a) == x && g.cod(a) == x)
        .collect();
    Ok(Subgroupoid::from_masks(g.clone(), has_object, has_morphism))
}

/// The smallest subgroupoid containing `seed` (and every object, when
/// `make_wide`).
pub fn closure(
    g: &Arc<FiniteGroupoid>,
    seed: &[Mor],
    make_wide: bool,
) -> Result<Subgroupoid, SubgroupoidError> {
    let n = g.object_count();
    let mut has_object = vec![make_wide; n];
    let mut has_morphism = vec![false; g.morphism_count()];
    let mut queue = VecDeque::new();
    let push = |a: Mor, has_morphism: &mut Vec<bool>, queue: &mut VecDeque<Mor>| {
        if !has_morphism[a] {
            has_morphism[a] = true;
            queue.push_back(a);
        }
    };
    for &a in seed {
        g.check_morphism(a)?;
        has_object[g.dom(a)] = true;
        has_object[g.cod(a)] = true;
    }
    for x in 0..n {
        if has_object[x] {
            push(g.identity(x), &mut has_morphism, &mut queue);
        }
    }
    for &a in seed {
        push(a, &mut has_morphism, &mut queue);
    }
    while let Some(a) = queue.pop_front() {
        push(g.inverse(a), &mut has_morphism, &mut queue);
        let before: Vec<Mor> = g
            .incoming(g.dom(a))
            .iter()
            .copied()
            .filter(|&b| has_morphism[b])
            .collect();
        for b in before {
            push(g.mul(a, b), &mut has_morphism, &mut queue);
        }
        let after: Vec<Mor> = g
            .outgoing(g.cod(a))
            .iter()
            .copied()
            .filter(|&b| has_morphism[b])
            .collect();
        for b in after {
            push(g.mul(b, a), &mut has_morphism, &mut queue);
        }
    }
    let h = Subgroupoid::from_masks(g.clone(), has_object, has_morphism);
    debug_assert!(h.check().is_ok());
    Ok(h)
}
