//! Runs every identity on one instance `(G, H, K)` and collects one row per
//! check with the expected and the computed value.

use std::fmt;
use std::sync::Arc;

use crate::action::{cf_value, orbit_stabilizer_check, GSet};
use crate::coset::{
    comma_category, comma_iso_check, double_cosets, left_cosets, size_formula_all, CosetError,
};
use crate::fnspace::{
    invariant_function_space, theta_iso_check, FnSpaceError, HomSpaces, Normalization,
};
use crate::groupoid::{
    connected_components, index, structure_decomposition, Embedded, FiniteGroupoid, Subgroupoid,
    SubgroupoidError,
};
use crate::linrep::{
    character, induce_rep, induced_coset_iso_check, nat_space_dim, permutation_rep,
    rep_inner_product, trivial_rep, RepError, Representation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("{0} is not wide")]
    NotWide(&'static str),
    #[error(transparent)]
    Subgroupoid(#[from] SubgroupoidError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    FnSpace(#[from] FnSpaceError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub check: String,
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

impl Row {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }

    pub fn status(&self) -> &'static str {
        if self.ok() {
            "OK"
        } else {
            "FAIL"
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub rows: Vec<Row>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(Row::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.ok())
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.rows.extend(other.rows);
    }

    fn push(&mut self, check: &str, instance: &str, expected: impl ToString, actual: impl ToString) {
        self.rows.push(Row {
            check: check.to_owned(),
            instance: instance.to_owned(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    /// Tab-separated `check instance expected actual status` lines.
    pub fn to_records(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    r.check,
                    r.instance,
                    r.expected,
                    r.actual,
                    r.status()
                )
            })
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{:<4}  {:<26} {}  expected={} actual={}",
                r.status(),
                r.check,
                r.instance,
                r.expected,
                r.actual
            )?;
        }
        let failed = self.failures().count();
        writeln!(f, "{} checks, {} failed", self.rows.len(), failed)
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `H ∩ C` for a component `C`, as a subgroupoid of the embedded `C`.
fn restrict_to(h: &Subgroupoid, c: &Embedded) -> Result<Subgroupoid, SubgroupoidError> {
    let objects = c.objects.iter().filter_map(|&x| h.contains_object(x).then(|| c.local_object[x].unwrap()));
    let morphisms = h.morphisms().iter().filter_map(|&a| c.local_morphism[a]);
    Subgroupoid::new(c.groupoid.clone(), objects, morphisms)
}

/// Structure decomposition on every object and the index formula for `H`
/// and `K`, component by component.
fn structure_rows(
    report: &mut VerificationReport,
    name: &str,
    g: &Arc<FiniteGroupoid>,
    subs: [(&str, &Subgroupoid); 2],
) -> Result<(), VerifyError> {
    let comps = connected_components(g);
    let many = comps.components.len() > 1;
    for (ci, comp) in comps.components.iter().enumerate() {
        let inst = if many {
            format!("{name} [component {ci}]")
        } else {
            name.to_owned()
        };
        let e = comp.embed()?;
        let mut failures = 0;
        for x in 0..e.groupoid.object_count() {
            match structure_decomposition(&e.groupoid, x) {
                Ok(w) => failures += w.verify(&e.groupoid).len(),
                Err(_) => failures += 1,
            }
        }
        report.push("structure round-trip", &inst, 0, failures);
        for (label, h) in subs {
            let local = restrict_to(h, &e)?;
            let r = index(&e.groupoid, &local)?;
            report.push(
                &format!("index {label}"),
                &inst,
                format!("{} = {}", r, r.formula),
                format!("{} = {}", r, r.cosets),
            );
        }
    }
    Ok(())
}

fn cf_rows(report: &mut VerificationReport, name: &str, label: &str, x: &GSet) {
    report.push(&format!("cauchy-frobenius {label}"), name, x.orbits().len(), cf_value(x));
    report.push(
        &format!("orbit-stabilizer {label}"),
        name,
        0,
        orbit_stabilizer_check(x).len(),
    );
}

/// Runs every check on `(G, H, K)`.
pub fn verify_instance(
    name: &str,
    h: &Subgroupoid,
    k: &Subgroupoid,
) -> Result<VerificationReport, VerifyError> {
    if !h.is_wide() {
        return Err(VerifyError::NotWide("H"));
    }
    if !k.is_wide() {
        return Err(VerifyError::NotWide("K"));
    }
    let g = h.parent().clone();
    let mut report = VerificationReport::default();
    structure_rows(&mut report, name, &g, [("H", h), ("K", k)])?;

    let part = double_cosets(h, k)?;
    let blocks = part.len();
    let x = crate::coset::x_hk_action(h, k)?;
    let gh = left_cosets(h)?;
    let gk = left_cosets(k)?;
    cf_rows(&mut report, name, "X_HK", &x.gset);
    cf_rows(&mut report, name, "G/H", &gh.gset);
    cf_rows(&mut report, name, "G/K", &gk.gset);
    cf_rows(&mut report, name, "terminal", &GSet::terminal(g.clone()));
    report.push("orbits X_HK", name, blocks, x.gset.orbits().len());

    report.push("comma isomorphism", name, 0, comma_iso_check(h, k)?.len());
    let comma = comma_category(h, k)?;
    report.push("comma components", name, blocks, comma.groupoid.component_count());

    let sizes = size_formula_all(&part)?;
    let reps = part.representatives();
    report.push(
        "double-coset size",
        name,
        join(reps.iter().map(|&a| sizes[a].block_size)),
        join(reps.iter().map(|&a| sizes[a].value)),
    );

    for (label, sub, cos) in [("H", h, &gh), ("K", k, &gk)] {
        report.push(
            &format!("induced G-set {label}"),
            name,
            0,
            induced_coset_iso_check(sub)?.len(),
        );
        let e = sub.embed()?;
        let ind = induce_rep(sub, &trivial_rep(e.groupoid.clone()))?;
        let perm = permutation_rep(&cos.gset);
        let (a, b) = (character(&ind.rep), character(&perm));
        let differ = a.values.iter().zip(&b.values).filter(|(x, y)| x != y).count();
        report.push(&format!("induced character {label}"), name, 0, differ);
        report.push(&format!("theta {label}"), name, 0, theta_iso_check(sub)?.len());
    }

    let space = invariant_function_space(h, k)?;
    report.push("invariant functions", name, blocks, space.constraint_dim);

    let hs = HomSpaces::new(h, k, Normalization::PerComponent)?;
    report.push("T after S", name, 0, hs.ts_check(&space)?.len());
    let (nat_dim, st) = hs.st_check()?;
    report.push("S after T", name, 0, st.len());
    report.push("intertwiners Y_H Y_K", name, blocks, nat_dim);

    let e_h = h.embed()?;
    let e_k = k.embed()?;
    let ind_h = induce_rep(h, &trivial_rep(e_h.groupoid.clone()))?.rep;
    let ind_k = induce_rep(k, &trivial_rep(e_k.groupoid.clone()))?.rep;
    report.push("character count", name, blocks, rep_inner_product(&ind_h, &ind_k)?);

    let family: Vec<Representation> = vec![
        trivial_rep(g.clone()),
        permutation_rep(&gh.gset),
        permutation_rep(&gk.gset),
        hs.yh.rep.clone(),
        hs.yk.rep.clone(),
    ];
    let mut dims = Vec::new();
    let mut products = Vec::new();
    for r in &family {
        for s in &family {
            dims.push(nat_space_dim(r, s)?.to_string());
            products.push(rep_inner_product(r, s)?.to_string());
        }
    }
    report.push("intertwiner dimension", name, dims.join(" "), products.join(" "));
    Ok(report)
}
