//! Double-coset-invariant functions, the functor `Y_H` of right-invariant
//! functions, and the maps `S`, `T` between `ℂ_{H\G/K}` and
//! `vect^G(Y_H, Y_K)`.

use std::sync::Arc;

use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;

use crate::coset::{double_cosets, left_cosets, CosetError, DoubleCosetPartition};
use crate::groupoid::{FiniteGroupoid, Mor, Obj, Subgroupoid};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::linrep::{is_natural, nat_space, permutation_rep, RepError, Representation};
use crate::scalar::GaussQ;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FnSpaceError {
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("function has {found} values, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("function is not constant on double cosets: φ({moved}) ≠ φ({g})")]
    NotInvariant { g: Mor, moved: Mor },
    #[error("family is not a natural transformation")]
    NotNatural,
    #[error("image of a basis function is not right-invariant at {0}")]
    NotRightInvariant(Obj),
}

/// `φ(h⁻¹gk) = φ(g)` for every composable triple.
pub fn check_invariant(
    h: &Subgroupoid,
    k: &Subgroupoid,
    phi: &[GaussQ],
) -> Result<(), FnSpaceError> {
    let g = h.parent();
    if phi.len() != g.morphism_count() {
        return Err(FnSpaceError::Length {
            expected: g.morphism_count(),
            found: phi.len(),
        });
    }
    for a in 0..g.morphism_count() {
        for hm in h.incoming(g.cod(a)) {
            for km in k.incoming(g.dom(a)) {
                let moved = g.mul(g.inverse(hm), g.mul(a, km));
                if phi[moved] != phi[a] {
                    return Err(FnSpaceError::NotInvariant { g: a, moved });
                }
            }
        }
    }
    Ok(())
}

/// `ℂ_{H\G/K}` with the indicator basis of the double cosets and the rank
/// of its defining constraint system.
#[derive(Clone, Debug)]
pub struct InvariantFunctionSpace {
    pub partition: DoubleCosetPartition,
    pub basis: Vec<Vec<GaussQ>>,
    /// nullity of `{φ(h⁻¹gk) − φ(g) = 0}` over all composable triples
    pub constraint_dim: usize,
}

impl InvariantFunctionSpace {
    pub fn holds(&self) -> bool {
        self.constraint_dim == self.basis.len()
    }
}

pub fn invariant_function_space(
    h: &Subgroupoid,
    k: &Subgroupoid,
) -> Result<InvariantFunctionSpace, FnSpaceError> {
    let partition = double_cosets(h, k)?;
    let g = h.parent();
    let m = g.morphism_count();
    let basis = partition
        .blocks
        .iter()
        .map(|b| {
            let mut v = vec![GaussQ::zero(); m];
            for &a in b {
                v[a] = GaussQ::one();
            }
            v
        })
        .collect();
    let mut ech = Echelon::new(m);
    for a in 0..m {
        for hm in h.incoming(g.cod(a)) {
            for km in k.incoming(g.dom(a)) {
                let moved = g.mul(g.inverse(hm), g.mul(a, km));
                if moved != a {
                    ech.insert(SparseRow::from_terms([
                        (moved, GaussQ::one()),
                        (a, -GaussQ::one()),
                    ]));
                }
            }
        }
    }
    Ok(InvariantFunctionSpace {
        partition,
        basis,
        constraint_dim: ech.nullity(),
    })
}

/// `Y_H`: at `G`, functions on `G(−, G)` with `φ(gh) = φ(g)`, in the basis
/// of coset indicators `δ_{aH}`; `g` acts by `f ↦ f(g⁻¹−)`.
#[derive(Clone, Debug)]
pub struct YRep {
    pub rep: Representation,
    /// class of each morphism inside the fibre over its codomain
    pub class_of: Vec<usize>,
    /// per object, the lowest member of each class
    pub basis_label: Vec<Vec<Mor>>,
}

pub fn y_rep(h: &Subgroupoid) -> Result<YRep, FnSpaceError> {
    h.require_wide().map_err(CosetError::from)?;
    let g = h.parent();
    let m = g.morphism_count();
    let mut uf = UnionFind::<usize>::new(m);
    for a in 0..m {
        for hm in h.incoming(g.dom(a)) {
            uf.union(a, g.mul(a, hm));
        }
    }
    let mut class_of = vec![usize::MAX; m];
    let mut basis_label: Vec<Vec<Mor>> = vec![Vec::new(); g.object_count()];
    let mut class_of_root = vec![usize::MAX; m];
    for y in 0..g.object_count() {
        for &a in g.incoming(y) {
            let r = uf.find(a);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = basis_label[y].len();
                basis_label[y].push(a);
            }
            class_of[a] = class_of_root[r];
        }
    }
    let dims: Vec<usize> = basis_label.iter().map(Vec::len).collect();
    let mut mats = Vec::with_capacity(m);
    for a in 0..m {
        let (y, z) = (g.dom(a), g.cod(a));
        let ai = g.inverse(a);
        let mut mat = Matrix::zeros(dims[z], dims[y]);
        for j in 0..dims[y] {
            // (δ_j)(a⁻¹ x) for x ∈ G(−, z)
            let value = |x: Mor| class_of[g.mul(ai, x)] == j;
            for &x in g.incoming(z) {
                if value(x) != value(basis_label[z][class_of[x]]) {
                    return Err(FnSpaceError::NotRightInvariant(z));
                }
            }
            for (i, &b) in basis_label[z].iter().enumerate() {
                if value(b) {
                    mat.set(i, j, GaussQ::one());
                }
            }
        }
        mats.push(mat);
    }
    let rep = Representation::new(g.clone(), dims, mats)?;
    Ok(YRep {
        rep,
        class_of,
        basis_label,
    })
}

/// Checks that `gH ↦ δ_{gH}` is a natural isomorphism `ℂ[G/H] ⇒ Y_H`.
pub fn theta_iso_check(h: &Subgroupoid) -> Result<Vec<String>, FnSpaceError> {
    let cos = left_cosets(h)?;
    let perm = permutation_rep(&cos.gset);
    let y = y_rep(h)?;
    let g = h.parent();
    let mut failures = Vec::new();
    let mut theta = Vec::with_capacity(g.object_count());
    for x in 0..g.object_count() {
        let (dc, dy) = (perm.dim(x), y.rep.dim(x));
        if dc != dy {
            failures.push(format!("object {x}: dimensions {dc} and {dy}"));
            return Ok(failures);
        }
        let mut t = Matrix::zeros(dy, dc);
        let mut hit = vec![false; dy];
        for (c, &r) in cos.representatives[x].iter().enumerate() {
            let i = y.class_of[r];
            t.set(i, c, GaussQ::one());
            if std::mem::replace(&mut hit[i], true) {
                failures.push(format!("object {x}: θ is not injective"));
            }
        }
        theta.push(t);
    }
    for a in 0..g.morphism_count() {
        let (s, t) = (g.dom(a), g.cod(a));
        if theta[t].mul(perm.mat(a)) != y.rep.mat(a).mul(&theta[s]) {
            failures.push(format!("naturality square of {a} does not commute"));
        }
    }
    Ok(failures)
}

/// The weight `w_G` of `δ_G(g) = w_G` for `g ∈ H_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `|G_G| / |H_G|`
    Literal,
    /// `|(Iso G)_1| / |Mor_H(−, G)|`; equal to `|G_G| / |H_G|` when `H` is
    /// connected and wide
    PerComponent,
}

/// `S`, `T` and the two `Y` functors they connect.
#[derive(Clone, Debug)]
pub struct HomSpaces {
    pub h: Subgroupoid,
    pub k: Subgroupoid,
    pub yh: YRep,
    pub yk: YRep,
    pub normalization: Normalization,
}

impl HomSpaces {
    pub fn new(
        h: &Subgroupoid,
        k: &Subgroupoid,
        normalization: Normalization,
    ) -> Result<Self, FnSpaceError> {
        double_cosets(h, k)?;
        Ok(HomSpaces {
            h: h.clone(),
            k: k.clone(),
            yh: y_rep(h)?,
            yk: y_rep(k)?,
            normalization,
        })
    }

    fn base(&self) -> &Arc<FiniteGroupoid> {
        self.h.parent()
    }

    fn iso_order(&self) -> usize {
        self.base().iso_morphisms().count()
    }

    pub fn weight(&self, x: Obj) -> GaussQ {
        let g = self.base();
        match self.normalization {
            Normalization::Literal => {
                GaussQ::from(g.endomorphisms(x).len()) / GaussQ::from(self.h.isotropy_order(x))
            }
            Normalization::PerComponent => {
                GaussQ::from(self.iso_order()) / GaussQ::from(self.h.incoming(x).count())
            }
        }
    }

    /// `S(φ)_G(f)(g) = (1/|(Iso G)_1|) Σ_{x ∈ Mor_G(−, G)} φ(x⁻¹g) f(x)`, as
    /// matrices from the `δ_{aH}` basis to the `δ_{bK}` basis.
    pub fn s_map(&self, phi: &[GaussQ]) -> Result<Vec<Matrix>, FnSpaceError> {
        check_invariant(&self.h, &self.k, phi)?;
        let g = self.base();
        let scale = GaussQ::one() / GaussQ::from(self.iso_order());
        let mut out = Vec::with_capacity(g.object_count());
        for obj in 0..g.object_count() {
            let into = g.incoming(obj);
            let (dh, dk) = (self.yh.rep.dim(obj), self.yk.rep.dim(obj));
            // values[j][pos] = S(φ)(δ_j)(into[pos])
            let mut values = vec![vec![GaussQ::zero(); into.len()]; dh];
            for (pos, &b) in into.iter().enumerate() {
                for &x in into {
                    let v = &phi[g.mul(g.inverse(x), b)];
                    if !v.is_zero() {
                        values[self.yh.class_of[x]][pos] += v;
                    }
                }
            }
            let position = |m: Mor| into.iter().position(|&x| x == m).expect("incoming");
            let rep_pos: Vec<usize> = into
                .iter()
                .map(|&b| position(self.yk.basis_label[obj][self.yk.class_of[b]]))
                .collect();
            let mut mat = Matrix::zeros(dk, dh);
            for (j, column) in values.iter().enumerate() {
                if (0..into.len()).any(|pos| column[pos] != column[rep_pos[pos]]) {
                    return Err(FnSpaceError::NotRightInvariant(obj));
                }
                for (i, &b) in self.yk.basis_label[obj].iter().enumerate() {
                    mat.set(i, j, &column[position(b)] * &scale);
                }
            }
            out.push(mat);
        }
        Ok(out)
    }

    /// `T(ψ)(g) = ψ_{cod g}(δ_{cod g})(g)`.
    pub fn t_map(&self, psi: &[Matrix]) -> Result<Vec<GaussQ>, FnSpaceError> {
        if !is_natural(&self.yh.rep, &self.yk.rep, psi) {
            return Err(FnSpaceError::NotNatural);
        }
        let g = self.base();
        let deltas: Vec<Vec<GaussQ>> = (0..g.object_count())
            .map(|obj| {
                let w = self.weight(obj);
                self.yh.basis_label[obj]
                    .iter()
                    .map(|&a| {
                        if self.h.contains_morphism(a) {
                            w.clone()
                        } else {
                            GaussQ::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let images: Vec<Vec<GaussQ>> = (0..g.object_count())
            .map(|obj| psi[obj].mul_vec(&deltas[obj]))
            .collect();
        let phi: Vec<GaussQ> = (0..g.morphism_count())
            .map(|a| images[g.cod(a)][self.yk.class_of[a]].clone())
            .collect();
        check_invariant(&self.h, &self.k, &phi)?;
        Ok(phi)
    }

    /// `T∘S = id` on the indicator basis of `ℂ_{H\G/K}`; returns failures.
    pub fn ts_check(&self, space: &InvariantFunctionSpace) -> Result<Vec<String>, FnSpaceError> {
        let mut failures = Vec::new();
        for (i, phi) in space.basis.iter().enumerate() {
            let s = self.s_map(phi)?;
            if !is_natural(&self.yh.rep, &self.yk.rep, &s) {
                failures.push(format!("S of indicator {i} is not natural"));
                continue;
            }
            if self.t_map(&s)? != *phi {
                failures.push(format!("T∘S moves indicator {i}"));
            }
        }
        Ok(failures)
    }

    /// `S∘T = id` on a nullspace basis of the intertwiner system.
    pub fn st_check(&self) -> Result<(usize, Vec<String>), FnSpaceError> {
        let nat = nat_space(&self.yh.rep, &self.yk.rep)?;
        let mut failures = Vec::new();
        for (i, psi) in nat.basis.iter().enumerate() {
            let phi = self.t_map(psi)?;
            if self.s_map(&phi)? != *psi {
                failures.push(format!("S∘T moves intertwiner {i}"));
            }
        }
        Ok((nat.dim(), failures))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{
        closure, coproduct, cyclic_group, pair_groupoid, permutations, product, symmetric_group,
    };
    use crate::linrep::{character, nat_space_dim};

    fn arc(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
        Arc::new(g)
    }

    fn s3_swap() -> Subgroupoid {
        let s3 = arc(symmetric_group(3));
        let swap = permutations(3).iter().position(|p| p == &[1, 0, 2]).unwrap();
        closure(&s3, &[swap], true).unwrap()
    }

    #[test]
    fn invariant_dimensions() {
        let p = arc(pair_groupoid(2).unwrap());
        let d = Subgroupoid::discrete(p.clone());
        let s = invariant_function_space(&d, &d).unwrap();
        assert_eq!((s.basis.len(), s.constraint_dim), (4, 4));
        let f = Subgroupoid::full(p);
        let s = invariant_function_space(&f, &f).unwrap();
        assert_eq!((s.basis.len(), s.constraint_dim), (1, 1));
        let h = s3_swap();
        let s = invariant_function_space(&h, &h).unwrap();
        assert_eq!((s.basis.len(), s.constraint_dim), (2, 2));
        for phi in &s.basis {
            assert!(check_invariant(&h, &h, phi).is_ok());
        }
        let mut bad = s.basis[0].clone();
        bad[0] = GaussQ::from_int(5);
        assert!(check_invariant(&h, &h, &bad).is_err());
    }

    #[test]
    fn y_functor() {
        let p = arc(pair_groupoid(2).unwrap());
        let y = y_rep(&Subgroupoid::discrete(p.clone())).unwrap();
        assert_eq!(y.rep.dims(), &[2, 2]);
        let y = y_rep(&Subgroupoid::full(p)).unwrap();
        assert_eq!(y.rep.dims(), &[1, 1]);

        let h = s3_swap();
        let y = y_rep(&h).unwrap();
        let perm = permutation_rep(&left_cosets(&h).unwrap().gset);
        assert_eq!(character(&y.rep), character(&perm));
        assert!(theta_iso_check(&h).unwrap().is_empty());
    }

    #[test]
    fn s_and_t_are_inverse_on_connected_subgroupoids() {
        let cases = [
            (s3_swap(), s3_swap()),
            {
                let g = arc(product(&cyclic_group(2), &pair_groupoid(2).unwrap()));
                (Subgroupoid::full(g.clone()), closure(&g, &[1], true).unwrap())
            },
        ];
        for (h, k) in cases {
            for norm in [Normalization::Literal, Normalization::PerComponent] {
                let hs = HomSpaces::new(&h, &k, norm).unwrap();
                let space = invariant_function_space(&h, &k).unwrap();
                assert!(hs.ts_check(&space).unwrap().is_empty());
                let (dim, failures) = hs.st_check().unwrap();
                assert!(failures.is_empty());
                assert_eq!(dim, space.basis.len());
            }
        }
    }

    #[test]
    fn literal_weight_fails_on_disconnected_subgroupoids() {
        let p = arc(pair_groupoid(2).unwrap());
        let d = Subgroupoid::discrete(p);
        let space = invariant_function_space(&d, &d).unwrap();
        let literal = HomSpaces::new(&d, &d, Normalization::Literal).unwrap();
        // δ weight 1, sum over one morphism, divided by |(Iso G)_1| = 2
        let phi = &space.basis[0];
        let ts = literal.t_map(&literal.s_map(phi).unwrap()).unwrap();
        let half: Vec<GaussQ> = phi.iter().map(|v| v / &GaussQ::from_int(2)).collect();
        assert_eq!(ts, half);
        assert!(!literal.ts_check(&space).unwrap().is_empty());

        let fixed = HomSpaces::new(&d, &d, Normalization::PerComponent).unwrap();
        assert!(fixed.ts_check(&space).unwrap().is_empty());
        assert!(fixed.st_check().unwrap().1.is_empty());
    }

    #[test]
    fn disconnected_base() {
        let g = arc(coproduct(&symmetric_group(3), &pair_groupoid(2).unwrap()));
        let swap = permutations(3).iter().position(|p| p == &[1, 0, 2]).unwrap();
        let h = closure(&g, &[swap], true).unwrap();
        let k = Subgroupoid::full(g.clone());
        let space = invariant_function_space(&h, &k).unwrap();
        assert!(space.holds());
        let hs = HomSpaces::new(&h, &k, Normalization::PerComponent).unwrap();
        assert!(hs.ts_check(&space).unwrap().is_empty());
        let (dim, failures) = hs.st_check().unwrap();
        assert!(failures.is_empty());
        assert_eq!(dim, space.basis.len());
        assert_eq!(nat_space_dim(&hs.yh.rep, &hs.yk.rep).unwrap(), dim);
        assert!(theta_iso_check(&h).unwrap().is_empty());
    }

    #[test]
    fn s_is_linear() {
        let h = s3_swap();
        let hs = HomSpaces::new(&h, &h, Normalization::Literal).unwrap();
        let space = invariant_function_space(&h, &h).unwrap();
        let (a, b) = (GaussQ::from_int(3), GaussQ::ratio(-1, 2));
        let mix: Vec<GaussQ> = space.basis[0]
            .iter()
            .zip(&space.basis[1])
            .map(|(x, y)| &(&a * x) + &(&b * y))
            .collect();
        let lhs = hs.s_map(&mix).unwrap();
        let s0 = hs.s_map(&space.basis[0]).unwrap();
        let s1 = hs.s_map(&space.basis[1]).unwrap();
        for o in 0..lhs.len() {
            assert_eq!(lhs[o], s0[o].scale(&a).add(&s1[o].scale(&b)));
        }
    }
}
