//! Seeded random instances `(G, H, K)`: `G` is a disjoint union of blocks
//! `group × Pair(k)` and `H`, `K` are wide closures of random seeds.

use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builder::Expr;
use crate::groupoid::{closure, FiniteGroupoid, Mor, Subgroupoid};

#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub expr: Expr,
    pub groupoid: Arc<FiniteGroupoid>,
    pub h_seed: Vec<Mor>,
    pub k_seed: Vec<Mor>,
    pub h: Subgroupoid,
    pub k: Subgroupoid,
}

impl RandomInstance {
    pub fn describe(&self) -> String {
        let seed = |s: &[Mor]| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        format!(
            "{} | closure({}) | closure({})",
            self.expr,
            seed(&self.h_seed),
            seed(&self.k_seed)
        )
    }
}

fn random_block(rng: &mut ChaCha8Rng, max_objects: usize, max_group_order: usize) -> Expr {
    let group = if max_group_order >= 6 && rng.gen_bool(0.25) {
        Expr::Sym(3)
    } else {
        Expr::Cyclic(rng.gen_range(1..=max_group_order))
    };
    let objects = rng.gen_range(1..=max_objects);
    Expr::Product(Box::new(group), Box::new(Expr::Pair(objects)))
}

fn random_seed(rng: &mut ChaCha8Rng, m: usize) -> Vec<Mor> {
    let n = rng.gen_range(0..=3);
    (0..n).map(|_| rng.gen_range(0..m)).collect()
}

/// Deterministic in its arguments. Bounds below 1 are raised to 1.
pub fn gen_random(seed: u64, max_objects: usize, max_group_order: usize) -> RandomInstance {
    let (max_objects, max_group_order) = (max_objects.max(1), max_group_order.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = rng.gen_range(1..=3);
    let mut expr = random_block(&mut rng, max_objects, max_group_order);
    for _ in 1..blocks {
        let next = random_block(&mut rng, max_objects, max_group_order);
        expr = Expr::Coproduct(Box::new(expr), Box::new(next));
    }
    let groupoid = Arc::new(expr.eval(Path::new(".")).expect("generated expressions are valid"));
    let m = groupoid.morphism_count();
    let h_seed = random_seed(&mut rng, m);
    let k_seed = random_seed(&mut rng, m);
    let h = closure(&groupoid, &h_seed, true).expect("seed in range");
    let k = closure(&groupoid, &k_seed, true).expect("seed in range");
    RandomInstance {
        expr,
        groupoid,
        h_seed,
        k_seed,
        h,
        k,
    }
}
