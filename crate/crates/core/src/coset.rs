//! Left cosets, double cosets, the `X_{H,K}` action and the comma category
//! `Incl_K ↓ Incl_H`.

use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::action::{ActionError, ActionGroupoid, GSet};
use crate::groupoid::{
    product, Embedded, FiniteGroupoid, GroupoidError, Mor, Obj, Subgroupoid, SubgroupoidError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CosetError {
    #[error(transparent)]
    Subgroupoid(#[from] SubgroupoidError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("subgroupoids have different parents")]
    ParentMismatch,
    #[error("morphism {0} is not covered: H and K must be wide")]
    NotCovered(Mor),
    #[error("coset action is not well defined: {0}")]
    IllDefined(String),
}

fn same_parent(h: &Subgroupoid, k: &Subgroupoid) -> Result<(), CosetError> {
    if Arc::ptr_eq(h.parent(), k.parent()) || h.parent() == k.parent() {
        Ok(())
    } else {
        Err(CosetError::ParentMismatch)
    }
}

/// `G/H`: the fibre over `x` is `Mor_G(−, x)` modulo `a ∼ b ⇔ a⁻¹b ∈ H_1`,
/// acted on by post-composition.
#[derive(Clone, Debug)]
pub struct LeftCosets {
    pub gset: GSet,
    /// coset id of each morphism inside the fibre over its codomain
    pub coset_of: Vec<usize>,
    /// per object, the lowest-index member of each coset
    pub representatives: Vec<Vec<Mor>>,
}

impl LeftCosets {
    pub fn total(&self) -> usize {
        self.gset.total()
    }
}

pub fn left_cosets(h: &Subgroupoid) -> Result<LeftCosets, CosetError> {
    h.require_wide()?;
    let g = h.parent();
    let mut coset_of = vec![usize::MAX; g.morphism_count()];
    let mut representatives = Vec::with_capacity(g.object_count());
    for x in 0..g.object_count() {
        let into = g.incoming(x);
        let mut reps = Vec::new();
        for (i, &a) in into.iter().enumerate() {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            let ai = g.inverse(a);
            for &b in &into[i..] {
                if coset_of[b] == usize::MAX && h.contains_morphism(g.mul(ai, b)) {
                    coset_of[b] = id;
                }
            }
        }
        representatives.push(reps);
    }
    let sizes: Vec<usize> = representatives.iter().map(Vec::len).collect();
    let mut action = Vec::with_capacity(g.morphism_count());
    for a in 0..g.morphism_count() {
        let (x, y) = (g.dom(a), g.cod(a));
        let img: Vec<usize> = representatives[x]
            .iter()
            .map(|&r| coset_of[g.mul(a, r)])
            .collect();
        for &b in g.incoming(x) {
            if coset_of[g.mul(a, b)] != img[coset_of[b]] {
                return Err(CosetError::IllDefined(format!(
                    "{a} sends {b} and {} to different cosets over {y}",
                    representatives[x][coset_of[b]]
                )));
            }
        }
        action.push(img);
    }
    let gset = GSet::new(g.clone(), sizes, action)?;
    Ok(LeftCosets {
        gset,
        coset_of,
        representatives,
    })
}

/// The partition of `G_1` into blocks `HgK`.
#[derive(Clone, Debug)]
pub struct DoubleCosetPartition {
    pub h: Subgroupoid,
    pub k: Subgroupoid,
    /// sorted members, blocks ordered by lowest member
    pub blocks: Vec<Vec<Mor>>,
    pub block_of: Vec<usize>,
}

impl DoubleCosetPartition {
    pub fn base(&self) -> &Arc<FiniteGroupoid> {
        self.h.parent()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn representatives(&self) -> Vec<Mor> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Rescans every `h g k` and reports any that leaves its block.
    pub fn check_invariance(&self) -> Vec<String> {
        let g = self.base();
        let mut failures = Vec::new();
        for a in 0..g.morphism_count() {
            for hm in self.h.outgoing(g.cod(a)) {
                for km in self.k.incoming(g.dom(a)) {
                    let b = g.mul(hm, g.mul(a, km));
                    if self.block_of[b] != self.block_of[a] {
                        failures.push(format!("{hm}∘{a}∘{km} = {b} leaves the block of {a}"));
                    }
                }
            }
        }
        failures
    }
}

impl fmt::Display for DoubleCosetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let members: Vec<String> = b.iter().map(ToString::to_string).collect();
            writeln!(f, "block {}: {}", b[0], members.join(" "))?;
        }
        Ok(())
    }
}

pub fn double_cosets(h: &Subgroupoid, k: &Subgroupoid) -> Result<DoubleCosetPartition, CosetError> {
    same_parent(h, k)?;
    h.require_wide()?;
    k.require_wide()?;
    let g = h.parent();
    let m = g.morphism_count();
    let mut uf = UnionFind::<usize>::new(m);
    for a in 0..m {
        for hm in h.outgoing(g.cod(a)) {
            uf.union(a, g.mul(hm, a));
        }
        for km in k.incoming(g.dom(a)) {
            uf.union(a, g.mul(a, km));
        }
    }
    let mut block_of_root = vec![usize::MAX; m];
    let mut blocks: Vec<Vec<Mor>> = Vec::new();
    let mut block_of = vec![0; m];
    for a in 0..m {
        let r = uf.find(a);
        if block_of_root[r] == usize::MAX {
            block_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        block_of[a] = block_of_root[r];
        blocks[block_of[a]].push(a);
    }
    Ok(DoubleCosetPartition {
        h: h.clone(),
        k: k.clone(),
        blocks,
        block_of,
    })
}

/// The closed form `δ_g·|H_{cod g}|·|K_{dom g}|` next to the enumerated
/// block, with `δ_g = |(H_λ)_0|·|(K_μ)_0|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeFormula {
    pub g: Mor,
    pub delta: usize,
    pub h_order: usize,
    pub k_order: usize,
    /// `δ_g·|H_{cod g}|·|K_{dom g}|`
    pub value: usize,
    /// `|HgK|` by enumeration
    pub block_size: usize,
    /// `|H_{cod g} ∩ g K_{dom g} g⁻¹|`, the number of pairs `(h, k)` with
    /// the same product `hgk`
    pub overlap: usize,
}

impl SizeFormula {
    pub fn holds(&self) -> bool {
        self.value == self.block_size
    }

    /// `value / overlap`.
    pub fn corrected(&self) -> usize {
        self.value / self.overlap
    }
}

pub fn double_coset_size_formula(
    partition: &DoubleCosetPartition,
    a: Mor,
) -> Result<SizeFormula, CosetError> {
    let (h, k) = (&partition.h, &partition.k);
    let g = partition.base();
    g.check_morphism(a)?;
    let (d, c) = (g.dom(a), g.cod(a));
    if !h.contains_object(c) || !k.contains_object(d) {
        return Err(CosetError::NotCovered(a));
    }
    let delta = h.component_size_of(c) * k.component_size_of(d);
    let h_order = h.isotropy_order(c);
    let k_order = k.isotropy_order(d);
    let ai = g.inverse(a);
    let overlap = g
        .endomorphisms(c)
        .into_iter()
        .filter(|&u| h.contains_morphism(u) && k.contains_morphism(g.mul(ai, g.mul(u, a))))
        .count();
    Ok(SizeFormula {
        g: a,
        delta,
        h_order,
        k_order,
        value: delta * h_order * k_order,
        block_size: partition.blocks[partition.block_of[a]].len(),
        overlap,
    })
}

/// Size formula rows for every morphism of the base.
pub fn size_formula_all(partition: &DoubleCosetPartition) -> Result<Vec<SizeFormula>, CosetError> {
    (0..partition.base().morphism_count())
        .map(|a| double_coset_size_formula(partition, a))
        .collect()
}

/// `X_{H,K}: H × K → set`, `(s, t) ↦ G(t, s)`, with `(h, k)` acting by
/// `g ↦ h g k⁻¹`. The base is `product(H, K)` on the re-indexed groupoids.
#[derive(Clone, Debug)]
pub struct XhkAction {
    pub h: Embedded,
    pub k: Embedded,
    pub gset: GSet,
    /// per object of `H × K`, the morphisms of `G` forming the fibre
    pub fibers: Vec<Vec<Mor>>,
}

impl XhkAction {
    /// Local `(H, K)` components of a morphism of `H × K`.
    pub fn split(&self, m: Mor) -> (Mor, Mor) {
        let kn = self.k.morphisms.len();
        (self.h.morphisms[m / kn], self.k.morphisms[m % kn])
    }

    /// Parent objects `(s, t)` of an object of `H × K`.
    pub fn object(&self, o: Obj) -> (Obj, Obj) {
        let kn = self.k.objects.len();
        (self.h.objects[o / kn], self.k.objects[o % kn])
    }
}

pub fn x_hk_action(h: &Subgroupoid, k: &Subgroupoid) -> Result<XhkAction, CosetError> {
    same_parent(h, k)?;
    let g = h.parent().clone();
    let he = h.embed()?;
    let ke = k.embed()?;
    let base = Arc::new(product(&he.groupoid, &ke.groupoid));
    let kn = ke.objects.len();
    let fibers: Vec<Vec<Mor>> = (0..base.object_count())
        .map(|o| g.hom_set(ke.objects[o % kn], he.objects[o / kn]))
        .collect::<Result<_, _>>()?;
    let mut pos = vec![0usize; g.morphism_count()];
    for f in &fibers {
        for (i, &a) in f.iter().enumerate() {
            pos[a] = i;
        }
    }
    let km = ke.morphisms.len();
    let sizes = fibers.iter().map(Vec::len).collect();
    let gset = GSet::from_fn(base.clone(), sizes, |m, e| {
        let (hm, kk) = (he.morphisms[m / km], ke.morphisms[m % km]);
        let a = fibers[base.dom(m)][e];
        pos[g.mul(hm, g.mul(a, g.inverse(kk)))]
    })?;
    Ok(XhkAction {
        h: he,
        k: ke,
        gset,
        fibers,
    })
}

/// `Incl_K ↓ Incl_H`: objects are morphisms `g` of `G` with `dom g ∈ K_0`,
/// `cod g ∈ H_0`; a morphism `g → h g k⁻¹` is a pair `(k, h)`.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub groupoid: FiniteGroupoid,
    /// object → morphism of `G`
    pub object_label: Vec<Mor>,
    /// morphism of `G` → object, where defined
    pub object_of: Vec<Option<usize>>,
    /// morphism → `(k, h)`
    pub morphism_label: Vec<(Mor, Mor)>,
    offset: Vec<usize>,
    h_width: Vec<usize>,
    h_pos: Vec<usize>,
    k_pos: Vec<usize>,
}

impl CommaCategory {
    /// Index of the morphism `(k, h)` out of object `o`.
    pub fn morphism_of(&self, o: usize, k: Mor, h: Mor) -> usize {
        self.offset[o] + self.k_pos[k] * self.h_width[o] + self.h_pos[h]
    }
}

pub fn comma_category(h: &Subgroupoid, k: &Subgroupoid) -> Result<CommaCategory, CosetError> {
    same_parent(h, k)?;
    let g = h.parent();
    let out_h: Vec<Vec<Mor>> = (0..g.object_count()).map(|x| h.outgoing(x).collect()).collect();
    let out_k: Vec<Vec<Mor>> = (0..g.object_count()).map(|x| k.outgoing(x).collect()).collect();
    let mut h_pos = vec![usize::MAX; g.morphism_count()];
    let mut k_pos = vec![usize::MAX; g.morphism_count()];
    for x in 0..g.object_count() {
        out_h[x].iter().enumerate().for_each(|(i, &a)| h_pos[a] = i);
        out_k[x].iter().enumerate().for_each(|(i, &a)| k_pos[a] = i);
    }
    let object_label: Vec<Mor> = (0..g.morphism_count())
        .filter(|&a| k.contains_object(g.dom(a)) && h.contains_object(g.cod(a)))
        .collect();
    if object_label.is_empty() {
        return Err(SubgroupoidError::Empty.into());
    }
    let mut object_of = vec![None; g.morphism_count()];
    for (o, &a) in object_label.iter().enumerate() {
        object_of[a] = Some(o);
    }
    let mut offset = Vec::with_capacity(object_label.len());
    let mut h_width = Vec::with_capacity(object_label.len());
    let mut morphism_label = Vec::new();
    let mut source = Vec::new();
    for (o, &a) in object_label.iter().enumerate() {
        offset.push(morphism_label.len());
        let hs = &out_h[g.cod(a)];
        h_width.push(hs.len());
        for &km in &out_k[g.dom(a)] {
            for &hm in hs {
                morphism_label.push((km, hm));
                source.push(o);
            }
        }
    }
    let target = |i: usize| {
        let (km, hm) = morphism_label[i];
        let a = object_label[source[i]];
        object_of[g.mul(hm, g.mul(a, g.inverse(km)))].expect("endpoints stay in K_0, H_0")
    };
    let index = |o: usize, km: Mor, hm: Mor| offset[o] + k_pos[km] * h_width[o] + h_pos[hm];
    let cod: Vec<usize> = (0..morphism_label.len()).map(target).collect();
    let identity = object_label
        .iter()
        .enumerate()
        .map(|(o, &a)| index(o, g.identity(g.dom(a)), g.identity(g.cod(a))))
        .collect();
    let inverse = (0..morphism_label.len())
        .map(|i| {
            let (km, hm) = morphism_label[i];
            index(cod[i], g.inverse(km), g.inverse(hm))
        })
        .collect();
    let groupoid = FiniteGroupoid::from_fn(
        object_label.len(),
        source.clone(),
        cod.clone(),
        identity,
        inverse,
        |i2, i1| {
            let (k1, h1) = morphism_label[i1];
            let (k2, h2) = morphism_label[i2];
            index(source[i1], g.mul(k2, k1), g.mul(h2, h1))
        },
    )?;
    Ok(CommaCategory {
        groupoid,
        object_label,
        object_of,
        morphism_label,
        offset,
        h_width,
        h_pos,
        k_pos,
    })
}

/// Checks that `⟨(s, t), g⟩ ↦ g`, `(h, k) ↦ (k, h)` is an isomorphism from
/// the action groupoid of `X_{H,K}` onto `Incl_K ↓ Incl_H`.
pub fn comma_iso_check(h: &Subgroupoid, k: &Subgroupoid) -> Result<Vec<String>, CosetError> {
    h.require_wide()?;
    k.require_wide()?;
    let x = x_hk_action(h, k)?;
    let ag: ActionGroupoid = x.gset.action_groupoid();
    let comma = comma_category(h, k)?;
    let g = h.parent();
    let mut failures = Vec::new();

    let on_objects: Vec<usize> = ag
        .object_label
        .iter()
        .map(|&(o, e)| comma.object_of[x.fibers[o][e]].expect("fibre elements are comma objects"))
        .collect();
    let on_morphisms: Vec<usize> = (0..ag.groupoid.morphism_count())
        .map(|i| {
            let (hm, km) = x.split(ag.morphism_label[i]);
            comma.morphism_of(on_objects[ag.groupoid.dom(i)], km, hm)
        })
        .collect();

    let bijective = |map: &[usize], n: usize| {
        let mut seen = vec![false; n];
        map.len() == n && map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    };
    if !bijective(&on_objects, comma.groupoid.object_count()) {
        failures.push(format!(
            "not bijective on objects: {} vs {}",
            on_objects.len(),
            comma.groupoid.object_count()
        ));
    }
    if !bijective(&on_morphisms, comma.groupoid.morphism_count()) {
        failures.push(format!(
            "not bijective on morphisms: {} vs {}",
            on_morphisms.len(),
            comma.groupoid.morphism_count()
        ));
    }
    let a = &ag.groupoid;
    let c = &comma.groupoid;
    for o in 0..a.object_count() {
        if on_morphisms[a.identity(o)] != c.identity(on_objects[o]) {
            failures.push(format!("identity of object {o} not preserved"));
        }
    }
    for i in 0..a.morphism_count() {
        let fi = on_morphisms[i];
        if c.dom(fi) != on_objects[a.dom(i)] || c.cod(fi) != on_objects[a.cod(i)] {
            failures.push(format!("endpoints of morphism {i} not preserved"));
            continue;
        }
        for &j in a.outgoing(a.cod(i)) {
            if on_morphisms[a.mul(j, i)] != c.mul(on_morphisms[j], fi) {
                failures.push(format!("composite {j}∘{i} not preserved"));
            }
        }
    }
    let total: usize = x.gset.total();
    if total != g.morphism_count() {
        failures.push(format!(
            "Σ|G(t, s)| = {total} differs from |G_1| = {}",
            g.morphism_count()
        ));
    }
    Ok(failures)
}
