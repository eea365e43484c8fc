//! Acceptance suite: every identity on the seeded random corpus and the
//! shipped fixtures, compared exactly against brute-force oracles. Prints
//! one PASS/FAIL line per criterion and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use groupoid_core::action::{cf_count, GSet};
use groupoid_core::builder::{build, load_groupoid, parse_sub_spec};
use groupoid_core::coset::{
    comma_category, comma_iso_check, double_coset_size_formula, double_cosets, left_cosets,
    x_hk_action,
};
use groupoid_core::fnspace::{invariant_function_space, theta_iso_check, y_rep, HomSpaces, Normalization};
use groupoid_core::format::{
    parse_groupoid, parse_gset, parse_subgroupoid, serialize_groupoid, serialize_gset,
    serialize_subgroupoid,
};
use groupoid_core::groupoid::{index, structure_decomposition, Mor};
use groupoid_core::linrep::{
    character, induce_rep, induced_coset_iso_check, nat_space_dim, permutation_rep,
    rep_inner_product, trivial_rep, Representation,
};
use groupoid_core::random::gen_random;
use groupoid_core::{FiniteGroupoid, Subgroupoid};

const SEEDS: u64 = 120;
const MAX_OBJECTS: usize = 3;
const MAX_ORDER: usize = 6;

struct Instance {
    name: String,
    g: Arc<FiniteGroupoid>,
    h: Subgroupoid,
    k: Subgroupoid,
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(arg: &str, base: &Path) -> Arc<FiniteGroupoid> {
    let g = if arg.contains('(') {
        build(arg, base)
    } else {
        load_groupoid(&base.join(arg))
    };
    Arc::new(g.unwrap_or_else(|e| panic!("{arg}: {e}")))
}

fn sub(g: &Arc<FiniteGroupoid>, spec: &str, base: &Path) -> Subgroupoid {
    parse_sub_spec(spec)
        .and_then(|s| s.eval(g, base))
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn corpus() -> Vec<Instance> {
    let dir = fixtures();
    let text = std::fs::read_to_string(dir.join("corpus.txt")).unwrap();
    text.lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let (name, rest) = l.split_once(':').unwrap();
            let f: Vec<&str> = rest.split('|').map(str::trim).collect();
            let g = load(f[0], &dir);
            Instance {
                name: name.trim().to_owned(),
                h: sub(&g, f[1], &dir),
                k: sub(&g, f[2], &dir),
                g,
            }
        })
        .collect()
}

fn instances() -> Vec<Instance> {
    let mut all: Vec<Instance> = (0..SEEDS)
        .map(|seed| {
            let r = gen_random(seed, MAX_OBJECTS, MAX_ORDER);
            Instance {
                name: format!("seed {seed}"),
                g: r.groupoid,
                h: r.h,
                k: r.k,
            }
        })
        .collect();
    all.extend(corpus());
    all
}

// ---- oracles ----

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Orbit label of every element `(object, index)`, flattened object by object.
fn orbit_labels(x: &GSet) -> (Vec<usize>, Vec<usize>) {
    let g = x.base();
    let mut offset = vec![0; g.object_count() + 1];
    for o in 0..g.object_count() {
        offset[o + 1] = offset[o] + x.size(o);
    }
    let mut parent: Vec<usize> = (0..offset[g.object_count()]).collect();
    for a in 0..g.morphism_count() {
        for e in 0..x.size(g.dom(a)) {
            let (p, q) = (offset[g.dom(a)] + e, offset[g.cod(a)] + x.act(a, e));
            let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
            parent[rp] = rq;
        }
    }
    let labels = (0..parent.len()).map(|i| find(&mut parent, i)).collect();
    (labels, offset)
}

fn orbit_count(x: &GSet) -> usize {
    let (labels, _) = orbit_labels(x);
    labels.iter().collect::<BTreeSet<_>>().len()
}

/// For each object and orbit, stabilizer orders over the orbit's elements at
/// that object must sum to the isotropy order.
fn stabilizer_sums_hold(x: &GSet) -> bool {
    let g = x.base();
    let (labels, offset) = orbit_labels(x);
    (0..g.object_count()).all(|o| {
        let endo = g.endomorphisms(o);
        let orbits: BTreeSet<usize> = (0..x.size(o)).map(|e| labels[offset[o] + e]).collect();
        orbits.into_iter().all(|orbit| {
            let sum: usize = (0..x.size(o))
                .filter(|&e| labels[offset[o] + e] == orbit)
                .map(|e| endo.iter().filter(|&&a| x.act(a, e) == e).count())
                .sum();
            sum == endo.len()
        })
    })
}

/// `HgK` for every `g`, by enumerating `h∘g∘k`.
fn double_coset_blocks(h: &Subgroupoid, k: &Subgroupoid) -> Vec<BTreeSet<Mor>> {
    let g = h.parent();
    (0..g.morphism_count())
        .map(|a| {
            let mut block = BTreeSet::new();
            for hm in h.outgoing(g.cod(a)) {
                for km in k.incoming(g.dom(a)) {
                    block.insert(g.mul(hm, g.mul(a, km)));
                }
            }
            block
        })
        .collect()
}

fn double_coset_count(h: &Subgroupoid, k: &Subgroupoid) -> usize {
    double_coset_blocks(h, k).into_iter().collect::<BTreeSet<_>>().len()
}

/// `Σ_x |Mor_G(−, x) / ∼_H|` with `l ∼ l∘h`.
fn left_coset_count(h: &Subgroupoid) -> usize {
    let g = h.parent();
    let classes: BTreeSet<BTreeSet<Mor>> = (0..g.morphism_count())
        .map(|l| h.incoming(g.dom(l)).map(|hm| g.mul(l, hm)).collect())
        .collect();
    classes.len()
}

// ---- criteria ----

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

fn outcome(name: &'static str, checked: usize, failures: Vec<String>) -> Outcome {
    let pass = failures.is_empty();
    let detail = if pass {
        format!("{checked} checks")
    } else {
        format!("{} of {checked} checks failed; first: {}", failures.len(), failures[0])
    };
    Outcome {
        name,
        pass,
        detail,
        notes: Vec::new(),
    }
}

fn actions(i: &Instance) -> Vec<(&'static str, GSet)> {
    vec![
        ("X_HK", x_hk_action(&i.h, &i.k).unwrap().gset),
        ("G/H", left_cosets(&i.h).unwrap().gset),
        ("G/K", left_cosets(&i.k).unwrap().gset),
        ("terminal", GSet::terminal(i.g.clone())),
    ]
}

fn cauchy_frobenius(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    for i in all {
        for (label, x) in actions(i) {
            checked += 2;
            let want = orbit_count(&x);
            match cf_count(&x) {
                Ok(c) if c.value.to_string() == want.to_string() && c.orbits == want => {}
                Ok(c) => failures.push(format!("{} {label}: {} vs {want}", i.name, c.value)),
                Err(e) => failures.push(format!("{} {label}: {e}", i.name)),
            }
            if !stabilizer_sums_hold(&x) {
                failures.push(format!("{} {label}: stabilizer sums", i.name));
            }
        }
    }
    outcome("cauchy-frobenius orbit count", checked, failures)
}

fn size_formula(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    let mut corrected_ok = true;
    for i in all {
        let part = double_cosets(&i.h, &i.k).unwrap();
        let blocks = double_coset_blocks(&i.h, &i.k);
        for (a, block) in blocks.iter().enumerate() {
            checked += 1;
            let f = double_coset_size_formula(&part, a).unwrap();
            if f.value != block.len() {
                failures.push(format!(
                    "{} morphism {a}: formula {} vs |HgK| = {}",
                    i.name,
                    f.value,
                    block.len()
                ));
            }
            corrected_ok &= f.corrected() == block.len();
        }
    }
    let mut o = outcome("double-coset size formula", checked, failures);

    let spot = |expr: &str, h: &str, k: &str| -> BTreeSet<usize> {
        let g = load(expr, &fixtures());
        let (h, k) = (sub(&g, h, &fixtures()), sub(&g, k, &fixtures()));
        double_coset_blocks(&h, &k).iter().map(BTreeSet::len).collect()
    };
    let pair = spot("pair(2)", "discrete", "discrete");
    let s3 = spot("s3.gpd", "file(s3_swap.sub)", "file(s3_swap.sub)");
    let spots_ok = pair == BTreeSet::from([1]) && s3 == BTreeSet::from([2, 4]);
    if !spots_ok {
        o.pass = false;
    }
    o.notes.push(format!("block sizes: pair(2) discrete {pair:?}, sym(3) <(12)> {s3:?}"));
    o.notes.push(format!(
        "formula divided by |H_c ∩ g K_d g⁻¹| matches every block: {corrected_ok}"
    ));
    o
}

fn comma(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    for i in all {
        checked += 2;
        let bad = comma_iso_check(&i.h, &i.k).unwrap();
        if !bad.is_empty() {
            failures.push(format!("{}: {}", i.name, bad[0]));
        }
        let c = comma_category(&i.h, &i.k).unwrap();
        let want = double_coset_count(&i.h, &i.k);
        if c.groupoid.component_count() != want {
            failures.push(format!("{}: {} components vs {want}", i.name, c.groupoid.component_count()));
        }
    }
    outcome("comma-category isomorphism", checked, failures)
}

fn induction(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    for i in all {
        for (label, s) in [("H", &i.h), ("K", &i.k)] {
            checked += 2;
            let bad = induced_coset_iso_check(s).unwrap();
            if !bad.is_empty() {
                failures.push(format!("{} {label}: {}", i.name, bad[0]));
            }
            let e = s.embed().unwrap();
            let ind = induce_rep(s, &trivial_rep(e.groupoid.clone())).unwrap().rep;
            let perm = permutation_rep(&left_cosets(s).unwrap().gset);
            if character(&ind) != character(&perm) {
                failures.push(format!("{} {label}: characters differ", i.name));
            }
        }
    }
    outcome("induction from the terminal G-set", checked, failures)
}

fn function_space(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    for i in all {
        checked += 1;
        let s = invariant_function_space(&i.h, &i.k).unwrap();
        let want = double_coset_count(&i.h, &i.k);
        if s.constraint_dim != want || s.basis.len() != want {
            failures.push(format!("{}: dim {} vs {want}", i.name, s.constraint_dim));
        }
    }
    outcome("invariant function space dimension", checked, failures)
}

fn y_functor(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    for i in all {
        for (label, s) in [("H", &i.h), ("K", &i.k)] {
            checked += 1;
            let bad = theta_iso_check(s).unwrap();
            if !bad.is_empty() {
                failures.push(format!("{} {label}: {}", i.name, bad[0]));
            }
        }
    }
    outcome("Y-functor isomorphism", checked, failures)
}

fn inverse_pair(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    let mut literal_failing = 0;
    for i in all {
        checked += 2;
        let space = invariant_function_space(&i.h, &i.k).unwrap();
        let hs = HomSpaces::new(&i.h, &i.k, Normalization::PerComponent).unwrap();
        let ts = hs.ts_check(&space).unwrap();
        let (_, st) = hs.st_check().unwrap();
        for f in ts.iter().chain(&st).take(1) {
            failures.push(format!("{}: {f}", i.name));
        }
        let literal = HomSpaces::new(&i.h, &i.k, Normalization::Literal).unwrap();
        if !literal.ts_check(&space).unwrap().is_empty() {
            literal_failing += 1;
        }
    }
    let mut o = outcome("S and T are mutually inverse", checked, failures);
    o.notes.push(format!(
        "weight |G_x|/|H_x| breaks T after S on {literal_failing} of {} instances",
        all.len()
    ));
    o
}

fn character_count(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    let count = |h: &Subgroupoid, k: &Subgroupoid| {
        let ind = |s: &Subgroupoid| {
            let e = s.embed().unwrap();
            induce_rep(s, &trivial_rep(e.groupoid.clone())).unwrap().rep
        };
        rep_inner_product(&ind(h), &ind(k)).unwrap().to_usize()
    };
    for i in all {
        checked += 1;
        let want = double_coset_count(&i.h, &i.k);
        let got = count(&i.h, &i.k);
        if got != Some(want) {
            failures.push(format!("{}: {got:?} vs {want}", i.name));
        }
    }
    let dir = fixtures();
    for (expr, h, k, want) in [
        ("sym(3)", "full", "full", 1),
        ("pair(3)", "full", "full", 1),
        ("pair(2)", "discrete", "discrete", 4),
        ("s3.gpd", "file(s3_swap.sub)", "file(s3_swap.sub)", 2),
    ] {
        checked += 1;
        let g = load(expr, &dir);
        let got = count(&sub(&g, h, &dir), &sub(&g, k, &dir));
        if got != Some(want) {
            failures.push(format!("{expr} {h} {k}: {got:?} vs {want}"));
        }
    }
    outcome("character double-coset count", checked, failures)
}

fn intertwiner_dimension(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    for i in all {
        let family: Vec<(&str, Representation)> = vec![
            ("Tri", trivial_rep(i.g.clone())),
            ("C[G/H]", permutation_rep(&left_cosets(&i.h).unwrap().gset)),
            ("C[G/K]", permutation_rep(&left_cosets(&i.k).unwrap().gset)),
            ("Y_H", y_rep(&i.h).unwrap().rep),
            ("Y_K", y_rep(&i.k).unwrap().rep),
        ];
        for (a, r) in &family {
            for (b, s) in &family {
                checked += 1;
                let dim = nat_space_dim(r, s).unwrap();
                let ip = rep_inner_product(r, s).unwrap();
                if ip.to_usize() != Some(dim) {
                    failures.push(format!("{} <{a}, {b}>: {ip} vs dim {dim}", i.name));
                }
            }
        }
    }
    outcome("intertwiner dimension equals character product", checked, failures)
}

fn structure(all: &[Instance]) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    let dir = fixtures();
    let mut connected: Vec<(String, Arc<FiniteGroupoid>)> = Vec::new();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "gpd") {
            let g = Arc::new(load_groupoid(&path).unwrap());
            if g.is_connected() {
                connected.push((path.file_name().unwrap().to_string_lossy().into_owned(), g));
            }
        }
    }
    connected.sort_by(|a, b| a.0.cmp(&b.0));
    for (name, g) in &connected {
        for x in 0..g.object_count() {
            checked += 1;
            match structure_decomposition(g, x) {
                Ok(w) if w.verify(g).is_empty() => {}
                Ok(w) => failures.push(format!("{name} at {x}: {}", w.verify(g)[0])),
                Err(e) => failures.push(format!("{name} at {x}: {e}")),
            }
        }
    }
    let mut index_checks = |name: &str, h: &Subgroupoid| {
        let g = h.parent();
        checked += 1;
        let r = index(g, h).unwrap();
        let want = left_coset_count(h);
        if r.cosets != want || r.formula != want {
            failures.push(format!("{name}: index {} formula {} vs {want}", r.cosets, r.formula));
        }
    };
    for i in all.iter().filter(|i| i.g.is_connected()) {
        index_checks(&i.name, &i.h);
        index_checks(&i.name, &i.k);
    }
    let p = load("pair(2)", &dir);
    let r = index(&p, &sub(&p, "discrete", &dir)).unwrap();
    checked += 1;
    if (r.cosets, r.to_string().as_str()) != (4, "2 * (1+1)") {
        failures.push(format!("pair(2) discrete: {} = {}", r, r.cosets));
    }
    outcome("structure decomposition and index formula", checked, failures)
}

fn gpd(args: &[&str], cwd: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gpd"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("gpd runs")
}

fn cli_contract() -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    let dir = fixtures();

    checked += 1;
    let out = gpd(&["verify", "--corpus", "corpus.txt"], &dir);
    if out.status.code() != Some(0) {
        let text = String::from_utf8_lossy(&out.stdout);
        let failed: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
        failures.push(format!(
            "verify exited {:?} on the corpus ({} failing rows, e.g. `{}`)",
            out.status.code(),
            failed.len(),
            failed.first().map(|l| l.split_whitespace().collect::<Vec<_>>().join(" ")).unwrap_or_default()
        ));
    }

    let mut names: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .collect();
    names.sort();
    for path in &names {
        let text = std::fs::read_to_string(path).unwrap();
        let again = match path.extension().and_then(|e| e.to_str()) {
            Some("gpd") => serialize_groupoid(&parse_groupoid(&text).unwrap()),
            Some("sub") => {
                let doc = parse_subgroupoid(&text).unwrap();
                let parent = doc.parent.clone().unwrap();
                let g = Arc::new(load_groupoid(&dir.join(&parent)).unwrap());
                serialize_subgroupoid(&doc.build(g).unwrap(), Some(&parent))
            }
            Some("gset") => {
                let doc = parse_gset(&text).unwrap();
                let over = doc.over.clone();
                let g = Arc::new(load_groupoid(&dir.join(&over)).unwrap());
                serialize_gset(&doc.build(g).unwrap(), &over)
            }
            _ => continue,
        };
        checked += 1;
        if again != text {
            failures.push(format!("{} does not round-trip", path.display()));
        }
        if path.extension().is_some_and(|e| e == "gpd") {
            checked += 1;
            let name = path.file_name().unwrap().to_str().unwrap();
            if gpd(&["build", name], &dir).stdout != text.as_bytes() {
                failures.push(format!("gpd build {name} differs from the file"));
            }
        }
    }

    let tmp = tempfile::tempdir().unwrap();
    for seed in [0u64, 1, 7, 42, 99] {
        checked += 2;
        let a = gen_random(seed, MAX_OBJECTS, MAX_ORDER);
        let b = gen_random(seed, MAX_OBJECTS, MAX_ORDER);
        if serialize_groupoid(&a.groupoid) != serialize_groupoid(&b.groupoid) || a.describe() != b.describe() {
            failures.push(format!("gen_random({seed}) is not deterministic"));
        }
        let s = seed.to_string();
        let runs: Vec<(Vec<u8>, Vec<Vec<u8>>)> = ["a", "b"]
            .iter()
            .map(|run| {
                let out_dir = tmp.path().join(format!("{seed}{run}"));
                let out = gpd(&["gen", "--seed", &s, "--out", out_dir.to_str().unwrap()], &dir);
                let files = ["g.gpd", "h.sub", "k.sub"]
                    .iter()
                    .map(|f| std::fs::read(out_dir.join(f)).unwrap())
                    .collect();
                (out.stdout, files)
            })
            .collect();
        if runs[0] != runs[1] {
            failures.push(format!("gpd gen --seed {seed} is not deterministic"));
        }
    }
    outcome("command-line contract", checked, failures)
}

fn main() {
    let all = instances();
    let cases = |n: usize| format!("{n} instances");
    println!("{} ({} seeded, max {MAX_OBJECTS} objects per block, group order up to {MAX_ORDER})", cases(all.len()), SEEDS);
    let outcomes = [
        cauchy_frobenius(&all),
        size_formula(&all),
        comma(&all),
        induction(&all),
        function_space(&all),
        y_functor(&all),
        inverse_pair(&all),
        character_count(&all),
        intertwiner_dimension(&all),
        structure(&all),
        cli_contract(),
    ];
    for (n, o) in outcomes.iter().enumerate() {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {}: {}", n + 1, o.name, o.detail);
        for note in &o.notes {
            println!("        {note}");
        }
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("{} criteria, {failed} failed", outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
