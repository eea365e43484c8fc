//! Linear representations over Gaussian rationals: characters, intertwiner
//! spaces, restriction and induction along wide subgroupoids.

use std::sync::Arc;

use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;

use crate::action::{ActionError, GSet};
use crate::coset::{left_cosets, CosetError};
use crate::groupoid::{
    closure, object_components, Embedded, FiniteGroupoid, Mor, Obj, Subgroupoid,
    SubgroupoidError,
};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::scalar::GaussQ;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Subgroupoid(#[from] SubgroupoidError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error("{field}: expected {expected} entries, found {found}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix of morphism {g} is {rows}×{cols}, expected {want_rows}×{want_cols}")]
    Shape {
        g: Mor,
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("identity of object {0} is not the identity matrix")]
    IdentityNotIdentity(Obj),
    #[error("representation is not functorial on ({g2}, {g1})")]
    NotFunctorial { g2: Mor, g1: Mor },
    #[error("representations live over different groupoids")]
    BaseMismatch,
    #[error("representation is not over the embedded subgroupoid")]
    NotOverSubgroupoid,
    #[error("induced {0} is not well defined on the quotient")]
    IllDefined(String),
}

/// A functor to finite-dimensional vector spaces: `mats[g]` is
/// `dims[cod g] × dims[dom g]`.
#[derive(Clone, Debug)]
pub struct Representation {
    base: Arc<FiniteGroupoid>,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base) && self.dims == other.dims && self.mats == other.mats
    }
}

impl Eq for Representation {}

fn same_base(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Representation {
    /// Checks shapes, identities and functoriality exhaustively; inverses
    /// follow from functoriality.
    pub fn new(
        base: Arc<FiniteGroupoid>,
        dims: Vec<usize>,
        mats: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        let r = Representation { base, dims, mats };
        r.check()?;
        Ok(r)
    }

    fn check(&self) -> Result<(), RepError> {
        let g = &*self.base;
        if self.dims.len() != g.object_count() {
            return Err(RepError::LengthMismatch {
                field: "dims",
                expected: g.object_count(),
                found: self.dims.len(),
            });
        }
        if self.mats.len() != g.morphism_count() {
            return Err(RepError::LengthMismatch {
                field: "mats",
                expected: g.morphism_count(),
                found: self.mats.len(),
            });
        }
        for (a, m) in self.mats.iter().enumerate() {
            let (want_rows, want_cols) = (self.dims[g.cod(a)], self.dims[g.dom(a)]);
            if (m.rows(), m.cols()) != (want_rows, want_cols) {
                return Err(RepError::Shape {
                    g: a,
                    rows: m.rows(),
                    cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        for x in 0..g.object_count() {
            if self.mats[g.identity(x)] != Matrix::identity(self.dims[x]) {
                return Err(RepError::IdentityNotIdentity(x));
            }
        }
        for g1 in 0..g.morphism_count() {
            for &g2 in g.outgoing(g.cod(g1)) {
                if self.mats[g.mul(g2, g1)] != self.mats[g2].mul(&self.mats[g1]) {
                    return Err(RepError::NotFunctorial { g2, g1 });
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FiniteGroupoid> {
        &self.base
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: Obj) -> usize {
        self.dims[x]
    }

    pub fn mat(&self, g: Mor) -> &Matrix {
        &self.mats[g]
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }
}

/// `Tri`: a line at every object, every morphism acting by `1`.
pub fn trivial_rep(base: Arc<FiniteGroupoid>) -> Representation {
    let n = base.object_count();
    let mats = vec![Matrix::identity(1); base.morphism_count()];
    Representation {
        base,
        dims: vec![1; n],
        mats,
    }
}

/// `ℂ[X]`: permutation matrices of the action.
pub fn permutation_rep(x: &GSet) -> Representation {
    let g = x.base();
    let mats = (0..g.morphism_count())
        .map(|a| Matrix::permutation(x.image(a), x.size(g.cod(a))))
        .collect();
    Representation {
        base: g.clone(),
        dims: x.sizes().to_vec(),
        mats,
    }
}

/// Trace on endomorphisms, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<GaussQ>,
}

pub fn character(r: &Representation) -> Character {
    let g = &*r.base;
    let values = (0..g.morphism_count())
        .map(|a| {
            if g.is_endo(a) {
                r.mats[a].trace()
            } else {
                GaussQ::zero()
            }
        })
        .collect();
    Character { values }
}

/// `(1/|G_x|) Σ_{g ∈ G_x} χ(g)·conj(χ′(g))`.
pub fn object_pairing(base: &FiniteGroupoid, chi: &Character, psi: &Character, x: Obj) -> GaussQ {
    let endo = base.endomorphisms(x);
    let n = endo.len();
    let sum: GaussQ = endo
        .into_iter()
        .map(|a| &chi.values[a] * &psi.values[a].conj())
        .sum();
    sum / GaussQ::from(n)
}

/// `Σ_c (1/|(G_c)_0|) Σ_{x ∈ (G_c)_0} ⟨χ_x, χ′_x⟩` over the connected
/// components `c`. Equals `(1/|G_0|) Σ_x ⟨χ_x, χ′_x⟩` on a connected base.
pub fn char_inner_product(
    base: &FiniteGroupoid,
    chi: &Character,
    psi: &Character,
) -> GaussQ {
    let labels = object_components(base);
    let mut size = vec![0usize; labels.iter().max().map_or(0, |m| m + 1)];
    for &l in &labels {
        size[l] += 1;
    }
    (0..base.object_count())
        .map(|x| object_pairing(base, chi, psi, x) / GaussQ::from(size[labels[x]]))
        .sum()
}

/// The single average `(1/|G_0|) Σ_x ⟨χ_x, χ′_x⟩` over all objects.
pub fn char_inner_product_global(
    base: &FiniteGroupoid,
    chi: &Character,
    psi: &Character,
) -> GaussQ {
    let n = base.object_count();
    let sum: GaussQ = (0..n).map(|x| object_pairing(base, chi, psi, x)).sum();
    sum / GaussQ::from(n)
}

pub fn rep_inner_product(r: &Representation, s: &Representation) -> Result<GaussQ, RepError> {
    if !same_base(&r.base, &s.base) {
        return Err(RepError::BaseMismatch);
    }
    Ok(char_inner_product(&r.base, &character(r), &character(s)))
}

/// A subset of morphisms whose closure is the whole groupoid, chosen
/// greedily in index order.
pub fn generating_set(g: &Arc<FiniteGroupoid>) -> Vec<Mor> {
    let mut gens = Vec::new();
    let mut reached = closure(g, &[], true).expect("identities");
    for a in 0..g.morphism_count() {
        if !reached.contains_morphism(a) {
            gens.push(a);
            reached = closure(g, &gens, true).expect("valid seed");
        }
    }
    gens
}

/// Natural transformations `R ⇒ R′` as per-object `dim′[x] × dim[x]`
/// matrices.
#[derive(Clone, Debug)]
pub struct NatSpace {
    pub basis: Vec<Vec<Matrix>>,
}

impl NatSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Does `{φ_x}` satisfy `φ_{cod g}·R(g) = R′(g)·φ_{dom g}` for every `g`?
pub fn is_natural(r: &Representation, s: &Representation, phi: &[Matrix]) -> bool {
    let g = &*r.base;
    (0..g.morphism_count())
        .all(|a| phi[g.cod(a)].mul(&r.mats[a]) == s.mats[a].mul(&phi[g.dom(a)]))
}

fn intertwiner_system(
    r: &Representation,
    s: &Representation,
    morphisms: &[Mor],
) -> (Echelon, Vec<usize>) {
    let g = &*r.base;
    let mut offset = Vec::with_capacity(g.object_count() + 1);
    let mut total = 0;
    for x in 0..g.object_count() {
        offset.push(total);
        total += s.dims[x] * r.dims[x];
    }
    offset.push(total);
    let var = |x: Obj, i: usize, j: usize| offset[x] + i * r.dims[x] + j;
    let mut ech = Echelon::new(total);
    for &a in morphisms {
        let (x, y) = (g.dom(a), g.cod(a));
        let (ra_t, sa) = (r.mats[a].transpose(), &s.mats[a]);
        for i in 0..s.dims[y] {
            for j in 0..r.dims[x] {
                // (φ_y R(a))_{ij} − (R′(a) φ_x)_{ij}
                let left = ra_t.row_entries(j).iter().map(|(l, v)| (var(y, i, *l), v.clone()));
                let right = sa.row_entries(i).iter().map(|(l, v)| (var(x, *l, j), -v));
                let row = SparseRow::from_terms(left.chain(right));
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    (ech, offset)
}

fn nat_from_system(
    r: &Representation,
    s: &Representation,
    ech: &Echelon,
    offset: &[usize],
) -> NatSpace {
    let n = r.base.object_count();
    let basis = ech
        .nullspace()
        .into_iter()
        .map(|v| {
            (0..n)
                .map(|x| {
                    let (rows, cols) = (s.dims[x], r.dims[x]);
                    let entries = &v[offset[x]..offset[x + 1]];
                    Matrix::from_rows(
                        (0..rows)
                            .map(|i| entries[i * cols..(i + 1) * cols].to_vec())
                            .collect(),
                        cols,
                    )
                })
                .collect()
        })
        .collect();
    NatSpace { basis }
}

/// Solves the intertwiner equations for a generating set of the base; the
/// equations for the remaining morphisms follow by functoriality.
pub fn nat_space(r: &Representation, s: &Representation) -> Result<NatSpace, RepError> {
    if !same_base(&r.base, &s.base) {
        return Err(RepError::BaseMismatch);
    }
    let gens = generating_set(&r.base);
    let (ech, offset) = intertwiner_system(r, s, &gens);
    Ok(nat_from_system(r, s, &ech, &offset))
}

/// The same space, with one block of equations for every morphism.
pub fn nat_space_exhaustive(r: &Representation, s: &Representation) -> Result<NatSpace, RepError> {
    if !same_base(&r.base, &s.base) {
        return Err(RepError::BaseMismatch);
    }
    let all: Vec<Mor> = (0..r.base.morphism_count()).collect();
    let (ech, offset) = intertwiner_system(r, s, &all);
    Ok(nat_from_system(r, s, &ech, &offset))
}

/// The nullity of the intertwiner system, without building a basis.
pub fn nat_space_dim(r: &Representation, s: &Representation) -> Result<usize, RepError> {
    if !same_base(&r.base, &s.base) {
        return Err(RepError::BaseMismatch);
    }
    let (ech, _) = intertwiner_system(r, s, &generating_set(&r.base));
    Ok(ech.nullity())
}

/// `Res^G_H R` over the re-indexed subgroupoid `H`.
pub fn restrict(r: &Representation, h: &Subgroupoid) -> Result<(Embedded, Representation), RepError> {
    if !same_base(&r.base, h.parent()) {
        return Err(RepError::BaseMismatch);
    }
    let e = h.embed()?;
    let dims = e.objects.iter().map(|&x| r.dims[x]).collect();
    let mats = e.morphisms.iter().map(|&a| r.mats[a].clone()).collect();
    let rep = Representation {
        base: e.groupoid.clone(),
        dims,
        mats,
    };
    Ok((e, rep))
}

fn check_over(e: &Embedded, base: &Arc<FiniteGroupoid>) -> Result<(), RepError> {
    if same_base(&e.groupoid, base) {
        Ok(())
    } else {
        Err(RepError::NotOverSubgroupoid)
    }
}

/// `Ind^G_H X`: the fibre over `y` is the set of pairs `⟨l, x⟩` with
/// `l ∈ Mor_G(−, y)`, `x ∈ X(dom l)`, modulo `⟨l∘h, x⟩ ∼ ⟨l, X(h)(x)⟩`.
#[derive(Clone, Debug)]
pub struct InducedGSet {
    pub gset: GSet,
    /// class of `⟨l, x⟩` inside the fibre over `cod l`, at
    /// `pair_offset[l] + x`
    pub class_of: Vec<usize>,
    pub pair_offset: Vec<usize>,
}

impl InducedGSet {
    pub fn class(&self, l: Mor, x: usize) -> usize {
        self.class_of[self.pair_offset[l] + x]
    }
}

pub fn induce_gset(h: &Subgroupoid, x: &GSet) -> Result<InducedGSet, RepError> {
    h.require_wide()?;
    let e = h.embed()?;
    check_over(&e, x.base())?;
    let g = h.parent();
    let local = |o: Obj| e.local_object[o].expect("wide");
    let mut pair_offset = Vec::with_capacity(g.morphism_count() + 1);
    let mut total = 0;
    for l in 0..g.morphism_count() {
        pair_offset.push(total);
        total += x.size(local(g.dom(l)));
    }
    pair_offset.push(total);
    let mut uf = UnionFind::<usize>::new(total);
    for l in 0..g.morphism_count() {
        for hm in h.incoming(g.dom(l)) {
            let lh = g.mul(l, hm);
            let hl = e.local_morphism[hm].expect("in H");
            for v in 0..x.size(local(g.dom(hm))) {
                uf.union(pair_offset[lh] + v, pair_offset[l] + x.act(hl, v));
            }
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut sizes = vec![0usize; g.object_count()];
    // per object, one representative pair per class
    let mut reps: Vec<Vec<(Mor, usize)>> = vec![Vec::new(); g.object_count()];
    let mut class_of_root = vec![usize::MAX; total];
    for y in 0..g.object_count() {
        for &l in g.incoming(y) {
            for v in 0..pair_offset[l + 1] - pair_offset[l] {
                let root = uf.find(pair_offset[l] + v);
                if class_of_root[root] == usize::MAX {
                    class_of_root[root] = sizes[y];
                    sizes[y] += 1;
                    reps[y].push((l, v));
                }
                class_of[pair_offset[l] + v] = class_of_root[root];
            }
        }
    }
    let mut action = Vec::with_capacity(g.morphism_count());
    for a in 0..g.morphism_count() {
        let y = g.dom(a);
        let img: Vec<usize> = reps[y]
            .iter()
            .map(|&(l, v)| class_of[pair_offset[g.mul(a, l)] + v])
            .collect();
        for &l in g.incoming(y) {
            for v in 0..pair_offset[l + 1] - pair_offset[l] {
                if class_of[pair_offset[g.mul(a, l)] + v] != img[class_of[pair_offset[l] + v]] {
                    return Err(RepError::IllDefined(format!("action of {a}")));
                }
            }
        }
        action.push(img);
    }
    let gset = GSet::new(g.clone(), sizes, action)?;
    Ok(InducedGSet {
        gset,
        class_of,
        pair_offset,
    })
}

/// Checks that `[⟨l, •⟩] ↦ lH` is a fibrewise bijection from
/// `Ind^G_H △1` to `G/H` commuting with the action.
pub fn induced_coset_iso_check(h: &Subgroupoid) -> Result<Vec<String>, RepError> {
    let e = h.embed()?;
    let ind = induce_gset(h, &GSet::terminal(e.groupoid.clone()))?;
    let cos = left_cosets(h)?;
    let g = h.parent();
    let mut failures = Vec::new();
    let mut map: Vec<Vec<usize>> = (0..g.object_count())
        .map(|y| vec![usize::MAX; ind.gset.size(y)])
        .collect();
    for l in 0..g.morphism_count() {
        let y = g.cod(l);
        let (c, t) = (ind.class(l, 0), cos.coset_of[l]);
        if map[y][c] == usize::MAX {
            map[y][c] = t;
        } else if map[y][c] != t {
            failures.push(format!("class {c} over {y} meets two cosets"));
        }
    }
    for y in 0..g.object_count() {
        let mut seen = vec![false; cos.gset.size(y)];
        let injective = map[y].iter().all(|&t| t != usize::MAX && !std::mem::replace(&mut seen[t], true));
        if ind.gset.size(y) != cos.gset.size(y) || !injective {
            failures.push(format!("fibre over {y} is not in bijection"));
        }
    }
    if failures.is_empty() {
        for a in 0..g.morphism_count() {
            let (y, z) = (g.dom(a), g.cod(a));
            for c in 0..ind.gset.size(y) {
                if map[z][ind.gset.act(a, c)] != cos.gset.act(a, map[y][c]) {
                    failures.push(format!("morphism {a} does not commute at class {c}"));
                }
            }
        }
    }
    Ok(failures)
}

/// `Ind^G_H R`: the fibre over `y` is `⊕_{l ∈ Mor_G(−, y)} R(dom l)` modulo
/// the span of `e_{l∘h}⊗v − e_l⊗R(h)v`. The quotient basis is the set of
/// non-pivot coordinates of the fully reduced relation system.
#[derive(Clone, Debug)]
pub struct InducedRep {
    pub rep: Representation,
    /// per object, the `(leg, coordinate)` of each basis vector
    pub basis: Vec<Vec<(Mor, usize)>>,
}

pub fn induce_rep(h: &Subgroupoid, r: &Representation) -> Result<InducedRep, RepError> {
    h.require_wide()?;
    let e = h.embed()?;
    check_over(&e, &r.base)?;
    let g = h.parent();
    let local = |o: Obj| e.local_object[o].expect("wide");
    let n = g.object_count();

    // coordinates of the sum over y: (leg position, coordinate)
    let mut leg_offset = vec![0usize; g.morphism_count()];
    let mut width = vec![0usize; n];
    for y in 0..n {
        for &l in g.incoming(y) {
            leg_offset[l] = width[y];
            width[y] += r.dims[local(g.dom(l))];
        }
    }
    let mut systems: Vec<Echelon> = width.iter().map(|&w| Echelon::new(w)).collect();
    for l in 0..g.morphism_count() {
        let y = g.cod(l);
        for hm in h.incoming(g.dom(l)) {
            let lh = g.mul(l, hm);
            let m_t = r.mats[e.local_morphism[hm].expect("in H")].transpose();
            for j in 0..m_t.rows() {
                let terms = std::iter::once((leg_offset[lh] + j, GaussQ::one())).chain(
                    m_t.row_entries(j).iter().map(|(i, v)| (leg_offset[l] + i, -v)),
                );
                let row = SparseRow::from_terms(terms);
                if !row.is_empty() {
                    systems[y].insert(row);
                }
            }
        }
    }
    let mut basis: Vec<Vec<(Mor, usize)>> = vec![Vec::new(); n];
    let mut free_index: Vec<Vec<usize>> = width.iter().map(|&w| vec![usize::MAX; w]).collect();
    for y in 0..n {
        for &l in g.incoming(y) {
            for j in 0..r.dims[local(g.dom(l))] {
                let c = leg_offset[l] + j;
                if !systems[y].is_pivot(c) {
                    free_index[y][c] = basis[y].len();
                    basis[y].push((l, j));
                }
            }
        }
    }
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let project = |z: Obj, coord: usize| -> Vec<(usize, GaussQ)> {
        let reduced = systems[z].reduce(SparseRow(vec![(coord, GaussQ::one())]));
        reduced
            .0
            .into_iter()
            .map(|(c, v)| (free_index[z][c], v))
            .collect()
    };
    let mats = (0..g.morphism_count())
        .map(|a| {
            let (y, z) = (g.dom(a), g.cod(a));
            let mut m = Matrix::zeros(dims[z], dims[y]);
            for (col, &(l, j)) in basis[y].iter().enumerate() {
                for (row, v) in project(z, leg_offset[g.mul(a, l)] + j) {
                    m.set(row, col, v);
                }
            }
            m
        })
        .collect();
    let rep = Representation {
        base: g.clone(),
        dims,
        mats,
    };
    rep.check()?;
    Ok(InducedRep { rep, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::{double_cosets, left_cosets};
    use crate::groupoid::{
        coproduct, cyclic_group, pair_groupoid, permutations, product, symmetric_group,
    };

    fn arc(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    fn s3_swap() -> Subgroupoid {
        let s3 = arc(symmetric_group(3));
        let swap = permutations(3).iter().position(|p| p == &[1, 0, 2]).unwrap();
        closure(&s3, &[swap], true).unwrap()
    }

    fn q(n: i64) -> GaussQ {
        GaussQ::from_int(n)
    }

    #[test]
    fn trivial_and_permutation() {
        let p = arc(pair_groupoid(3).unwrap());
        let t = trivial_rep(p.clone());
        assert!(t.check().is_ok());
        assert_eq!(permutation_rep(&GSet::terminal(p.clone())), t);
        let chi = character(&t);
        for x in 0..3 {
            assert_eq!(chi.values[p.identity(x)], q(1));
        }
        assert_eq!(chi.values[1], q(0));

        let cos = left_cosets(&s3_swap()).unwrap();
        let r = permutation_rep(&cos.gset);
        assert!(r.check().is_ok());
        assert_eq!(r.dims(), &[3]);
        let chi = character(&r);
        assert_eq!(chi.values[0], q(3));
        for a in 0..6 {
            assert_eq!(chi.values[a], GaussQ::from(cos.gset.fix(a).unwrap().len()));
        }
    }

    #[test]
    fn rejects_non_functors() {
        let c2 = arc(cyclic_group(2));
        let bad = Representation::new(
            c2.clone(),
            vec![1],
            vec![Matrix::identity(1), Matrix::from_rows(vec![vec![q(2)]], 1)],
        );
        assert!(matches!(bad, Err(RepError::NotFunctorial { .. })));
        let sign = Representation::new(
            c2,
            vec![1],
            vec![Matrix::identity(1), Matrix::from_rows(vec![vec![q(-1)]], 1)],
        )
        .unwrap();
        assert_eq!(character(&sign).values[1], q(-1));
    }

    #[test]
    fn inner_products() {
        let g = arc(product(&symmetric_group(3), &pair_groupoid(2).unwrap()));
        let t = trivial_rep(g.clone());
        assert_eq!(rep_inner_product(&t, &t).unwrap(), q(1));
        assert_eq!(nat_space_dim(&t, &t).unwrap(), 1);

        // three components: each contributes one constant
        let g = arc(coproduct(
            &coproduct(&pair_groupoid(2).unwrap(), &cyclic_group(2)),
            &symmetric_group(3),
        ));
        let t = trivial_rep(g.clone());
        assert_eq!(rep_inner_product(&t, &t).unwrap(), q(3));
        assert_eq!(nat_space_dim(&t, &t).unwrap(), 3);
        let (chi, psi) = (character(&t), character(&t));
        assert_eq!(char_inner_product_global(&g, &chi, &psi), q(1));
    }

    #[test]
    fn generators_give_the_same_system() {
        let cases = [
            arc(symmetric_group(3)),
            arc(product(&cyclic_group(2), &pair_groupoid(3).unwrap())),
            arc(coproduct(&pair_groupoid(2).unwrap(), &symmetric_group(3))),
        ];
        for g in cases {
            let h = closure(&g, &[1], true).unwrap();
            let r = permutation_rep(&left_cosets(&h).unwrap().gset);
            let t = trivial_rep(g.clone());
            for (a, b) in [(&r, &r), (&t, &r), (&r, &t)] {
                let fast = nat_space(a, b).unwrap();
                let slow = nat_space_exhaustive(a, b).unwrap();
                assert_eq!(fast.dim(), slow.dim());
                assert_eq!(fast.basis, slow.basis);
                assert!(fast.basis.iter().all(|phi| is_natural(a, b, phi)));
            }
        }
    }

    #[test]
    fn coset_reps_count_double_cosets() {
        let h = s3_swap();
        let r = permutation_rep(&left_cosets(&h).unwrap().gset);
        assert_eq!(nat_space_dim(&r, &r).unwrap(), 2);
        assert_eq!(rep_inner_product(&r, &r).unwrap(), q(2));
        assert_eq!(double_cosets(&h, &h).unwrap().len(), 2);

        let p = arc(pair_groupoid(2).unwrap());
        let d = Subgroupoid::discrete(p);
        let r = permutation_rep(&left_cosets(&d).unwrap().gset);
        assert_eq!(nat_space_dim(&r, &r).unwrap(), 4);
        assert_eq!(rep_inner_product(&r, &r).unwrap(), q(4));
    }

    #[test]
    fn restriction() {
        let g = arc(product(&cyclic_group(2), &pair_groupoid(2).unwrap()));
        let t = trivial_rep(g.clone());
        let full = Subgroupoid::full(g.clone());
        let (_, r) = restrict(&t, &full).unwrap();
        assert_eq!(r.mats(), t.mats());
        let iso = Subgroupoid::iso_bundle(g.clone());
        let (e, r) = restrict(&t, &iso).unwrap();
        assert_eq!(r, trivial_rep(e.groupoid.clone()));
    }

    #[test]
    fn induction_examples() {
        let p = arc(pair_groupoid(2).unwrap());
        let d = Subgroupoid::discrete(p.clone());
        let e = d.embed().unwrap();
        let ind = induce_gset(&d, &GSet::terminal(e.groupoid.clone())).unwrap();
        assert_eq!(ind.gset.sizes(), &[2, 2]);
        assert!(induced_coset_iso_check(&d).unwrap().is_empty());

        let h = s3_swap();
        assert!(induced_coset_iso_check(&h).unwrap().is_empty());
        let e = h.embed().unwrap();
        let ind = induce_rep(&h, &trivial_rep(e.groupoid.clone())).unwrap();
        assert_eq!(ind.rep.dims(), &[3]);
        let perm = permutation_rep(&left_cosets(&h).unwrap().gset);
        assert_eq!(character(&ind.rep), character(&perm));

        // H = G: induction changes nothing up to isomorphism
        let g = arc(product(&cyclic_group(3), &pair_groupoid(2).unwrap()));
        let full = Subgroupoid::full(g.clone());
        let e = full.embed().unwrap();
        let x = GSet::from_fn(e.groupoid.clone(), vec![3, 3], |a, v| {
            (v + a / 4) % 3
        })
        .unwrap();
        let ind = induce_gset(&full, &x).unwrap();
        assert_eq!(ind.gset.sizes(), x.sizes());
        let r = permutation_rep(&x);
        let ind = induce_rep(&full, &r).unwrap();
        assert_eq!(ind.rep.dims(), r.dims());
        let r_over_g = Representation::new(g.clone(), r.dims().to_vec(), r.mats().to_vec()).unwrap();
        let n = nat_space_dim(&r_over_g, &r_over_g).unwrap();
        assert_eq!(nat_space_dim(&ind.rep, &r_over_g).unwrap(), n);
        assert_eq!(character(&ind.rep), character(&r_over_g));
    }

    #[test]
    fn sign_induced_from_c3() {
        // Ind from A3 ≅ C3 of the trivial rep: the regular rep of C2 inflated
        let s3 = arc(symmetric_group(3));
        let perms = permutations(3);
        let even: Vec<Mor> = (0..6)
            .filter(|&a| {
                let p = &perms[a];
                (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count() % 2 == 0
            })
            .collect();
        let a3 = closure(&s3, &even, true).unwrap();
        assert_eq!(a3.morphisms().len(), 3);
        let e = a3.embed().unwrap();
        let ind = induce_rep(&a3, &trivial_rep(e.groupoid.clone())).unwrap();
        let chi = character(&ind.rep);
        for a in 0..6 {
            let expected = if even.contains(&a) { 2 } else { 0 };
            assert_eq!(chi.values[a], q(expected));
        }
    }
}
