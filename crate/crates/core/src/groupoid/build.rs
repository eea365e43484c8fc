//! Standard constructions: pair groupoids, groups, products, coproducts and
//! the group bundle.

use super::{FiniteGroupoid, GroupoidError, Mor, Obj};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupTableError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({a}·{b})·{c} != {a}·({b}·{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
}

/// `Pair([0, n))`: morphism `(x, y): x → y` has index `x·n + y`.
pub fn pair_groupoid(n: usize) -> Result<FiniteGroupoid, GroupoidError> {
    if n == 0 {
        return Err(GroupoidError::Empty);
    }
    let m = n * n;
    let dom = (0..m).map(|g| g / n).collect();
    let cod = (0..m).map(|g| g % n).collect();
    let identity = (0..n).map(|x| x * n + x).collect();
    let inverse = (0..m).map(|g| (g % n) * n + g / n).collect();
    FiniteGroupoid::from_fn(n, dom, cod, identity, inverse, |g2, g1| {
        (g1 / n) * n + g2 % n
    })
}

/// The one-object groupoid of a group given by its Cayley table, where
/// `table[a][b]` is the product `a·b` (apply `b` first). The element indices
/// become morphism indices.
pub fn group_as_groupoid(table: &[Vec<usize>]) -> Result<FiniteGroupoid, GroupTableError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupTableError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(GroupTableError::NotSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
        if let Some(col) = r.iter().position(|&v| v >= n) {
            return Err(GroupTableError::EntryOutOfRange {
                row,
                col,
                value: r[col],
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(GroupTableError::NonAssociative { a, b, c });
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or(GroupTableError::NoIdentity)?;
    let inverse = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| table[a][b] == e && table[b][a] == e)
                .ok_or(GroupTableError::NoInverse(a))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g = FiniteGroupoid::from_fn(1, vec![0; n], vec![0; n], vec![e], inverse, |g2, g1| {
        table[g2][g1]
    })
    .expect("one-object tables are structurally sound");
    Ok(g)
}

/// The cyclic group of order `n ≥ 1`; element `k` is rotation by `k`.
pub fn cyclic_group(n: usize) -> FiniteGroupoid {
    assert!(n >= 1, "cyclic group of order 0");
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    group_as_groupoid(&table).expect("cyclic table is a group")
}

/// All permutations of `[0, n)` in lexicographic order, as image vectors.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The symmetric group on `[0, n)`. Element indices follow
/// [`permutations`]; the product `σ·τ` is `i ↦ σ(τ(i))`.
pub fn symmetric_group(n: usize) -> FiniteGroupoid {
    assert!(n >= 1, "symmetric group on the empty set");
    let perms = permutations(n);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| {
                    let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                    index(&st)
                })
                .collect()
        })
        .collect();
    group_as_groupoid(&table).expect("symmetric table is a group")
}

/// `G × H`: object `(a, b)` has index `a·|H_0| + b`, morphism `(g, h)` has
/// index `g·|H_1| + h`.
pub fn product(g: &FiniteGroupoid, h: &FiniteGroupoid) -> FiniteGroupoid {
    let (n1, n2) = (g.object_count(), h.object_count());
    let m2 = h.morphism_count();
    let m = g.morphism_count() * m2;
    let split = |x: Mor| (x / m2, x % m2);
    let dom = (0..m)
        .map(|x| {
            let (a, b) = split(x);
            g.dom(a) * n2 + h.dom(b)
        })
        .collect();
    let cod = (0..m)
        .map(|x| {
            let (a, b) = split(x);
            g.cod(a) * n2 + h.cod(b)
        })
        .collect();
    let identity = (0..n1 * n2)
        .map(|o| g.identity(o / n2) * m2 + h.identity(o % n2))
        .collect();
    let inverse = (0..m)
        .map(|x| {
            let (a, b) = split(x);
            g.inverse(a) * m2 + h.inverse(b)
        })
        .collect();
    FiniteGroupoid::from_fn(n1 * n2, dom, cod, identity, inverse, |x2, x1| {
        let (a2, b2) = split(x2);
        let (a1, b1) = split(x1);
        g.mul(a2, a1) * m2 + h.mul(b2, b1)
    })
    .expect("product of groupoids")
}

/// `G ⊔ H`: the objects and morphisms of `H` follow those of `G`.
pub fn coproduct(g: &FiniteGroupoid, h: &FiniteGroupoid) -> FiniteGroupoid {
    let (n1, m1) = (g.object_count(), g.morphism_count());
    let m = m1 + h.morphism_count();
    let pick = |x: Mor| if x < m1 { (true, x) } else { (false, x - m1) };
    let dom = (0..m)
        .map(|x| match pick(x) {
            (true, a) => g.dom(a),
            (false, b) => n1 + h.dom(b),
        })
        .collect();
    let cod = (0..m)
        .map(|x| match pick(x) {
            (true, a) => g.cod(a),
            (false, b) => n1 + h.cod(b),
        })
        .collect();
    let identity = (0..n1 + h.object_count())
        .map(|o: Obj| {
            if o < n1 {
                g.identity(o)
            } else {
                m1 + h.identity(o - n1)
            }
        })
        .collect();
    let inverse = (0..m)
        .map(|x| match pick(x) {
            (true, a) => g.inverse(a),
            (false, b) => m1 + h.inverse(b),
        })
        .collect();
    FiniteGroupoid::from_fn(n1 + h.object_count(), dom, cod, identity, inverse, |x2, x1| {
        match (pick(x2), pick(x1)) {
            ((true, a2), (true, a1)) => g.mul(a2, a1),
            ((false, b2), (false, b1)) => m1 + h.mul(b2, b1),
            _ => unreachable!("no cross morphisms"),
        }
    })
    .expect("coproduct of groupoids")
}

/// `Iso G` as a groupoid in its own right, with the embedding of its
/// morphisms into `G`.
pub fn iso_bundle(g: &FiniteGroupoid) -> (FiniteGroupoid, Vec<Mor>) {
    let embed: Vec<Mor> = g.iso_morphisms().collect();
    let mut local = vec![usize::MAX; g.morphism_count()];
    for (i, &x) in embed.iter().enumerate() {
        local[x] = i;
    }
    let dom: Vec<Obj> = embed.iter().map(|&x| g.dom(x)).collect();
    let identity = (0..g.object_count()).map(|o| local[g.identity(o)]).collect();
    let inverse = embed.iter().map(|&x| local[g.inverse(x)]).collect();
    let bundle = FiniteGroupoid::from_fn(
        g.object_count(),
        dom.clone(),
        dom,
        identity,
        inverse,
        |a, b| local[g.mul(embed[a], embed[b])],
    )
    .expect("group bundle");
    (bundle, embed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_counts() {
        let p = pair_groupoid(3).unwrap();
        assert_eq!((p.object_count(), p.morphism_count()), (3, 9));
        assert!(p.is_connected());
        for x in 0..3 {
            assert_eq!(p.endomorphisms(x), vec![p.identity(x)]);
        }
        let one = pair_groupoid(1).unwrap();
        assert_eq!((one.object_count(), one.morphism_count()), (1, 1));
        assert_eq!(pair_groupoid(2).unwrap().hom_set(0, 1).unwrap().len(), 1);
        assert_eq!(pair_groupoid(0), Err(GroupoidError::Empty));
    }

    #[test]
    fn pair_composition_rule() {
        let n = 4;
        let p = pair_groupoid(n).unwrap();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    assert_eq!(p.mul(y * n + z, x * n + y), x * n + z);
                }
            }
        }
    }

    #[test]
    fn small_groups() {
        let c2 = cyclic_group(2);
        assert_eq!((c2.object_count(), c2.morphism_count()), (1, 2));
        let s3 = symmetric_group(3);
        assert_eq!((s3.object_count(), s3.morphism_count()), (1, 6));
    }

    #[test]
    fn rock_paper_scissors_is_rejected() {
        // 0 = rock, 1 = paper, 2 = scissors; a·b is the winner
        let t = vec![vec![0, 1, 0], vec![1, 1, 2], vec![0, 2, 2]];
        // exhaustive scan for the first non-associative triple
        let mut first = None;
        'outer: for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        first = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        let (a, b, c) = first.expect("rps is not associative");
        assert_eq!(
            group_as_groupoid(&t),
            Err(GroupTableError::NonAssociative { a, b, c })
        );
    }

    #[test]
    fn non_group_tables() {
        assert_eq!(group_as_groupoid(&[]), Err(GroupTableError::Empty));
        assert!(matches!(
            group_as_groupoid(&[vec![0, 1], vec![0]]),
            Err(GroupTableError::NotSquare { row: 1, .. })
        ));
        // constant zero map: associative, no identity
        assert_eq!(
            group_as_groupoid(&[vec![0, 0], vec![0, 0]]),
            Err(GroupTableError::NoIdentity)
        );
        // {0, 1} under max: monoid with identity 0, 1 has no inverse
        assert_eq!(
            group_as_groupoid(&[vec![0, 1], vec![1, 1]]),
            Err(GroupTableError::NoInverse(1))
        );
    }

    #[test]
    fn product_shapes() {
        let g = product(&cyclic_group(2), &pair_groupoid(2).unwrap());
        assert_eq!((g.object_count(), g.morphism_count()), (2, 8));
        assert!(g.is_connected());
        assert_eq!(g.endomorphisms(0).len(), 2);
        assert!(g.is_valid());

        let c6 = product(&cyclic_group(2), &cyclic_group(3));
        assert_eq!((c6.object_count(), c6.morphism_count()), (1, 6));

        let s3 = symmetric_group(3);
        assert_eq!(product(&s3, &cyclic_group(1)), s3);
    }

    #[test]
    fn coproduct_shapes() {
        let a = coproduct(&pair_groupoid(2).unwrap(), &cyclic_group(2));
        assert_eq!((a.object_count(), a.morphism_count()), (3, 6));
        assert_eq!(a.component_count(), 2);
        assert!(a.is_valid());
        let b = coproduct(&cyclic_group(2), &cyclic_group(2));
        assert_eq!(b.component_count(), 2);
        assert!(b.morphisms_are_endos());
    }

    #[test]
    fn iso_bundle_shapes() {
        let (b, embed) = iso_bundle(&pair_groupoid(3).unwrap());
        assert_eq!((b.object_count(), b.morphism_count()), (3, 3));
        assert_eq!(b.component_count(), 3);
        assert_eq!(embed, vec![0, 4, 8]);

        let g = product(&cyclic_group(2), &pair_groupoid(2).unwrap());
        let (b, _) = iso_bundle(&g);
        assert_eq!(b.morphism_count(), 4);
        assert!(b.is_valid());

        let s3 = symmetric_group(3);
        assert_eq!(iso_bundle(&s3).0, s3);
    }

    impl FiniteGroupoid {
        fn morphisms_are_endos(&self) -> bool {
            (0..self.morphism_count()).all(|g| self.is_endo(g))
        }
    }
}
