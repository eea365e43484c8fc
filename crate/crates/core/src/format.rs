//! Line-oriented text formats for groupoids, subgroupoids, G-sets,
//! representations, functions on morphisms and natural transformations.
//!
//! Every format ignores `#` comments and blank lines, rejects duplicate keys
//! and reports errors with 1-based line numbers. The serializers emit the
//! canonical form, which parses back to the same value and re-serializes to
//! the same bytes.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::action::{ActionError, GSet};
use crate::groupoid::{FiniteGroupoid, GroupoidError, GroupoidTables, Subgroupoid, SubgroupoidError};
use crate::linalg::Matrix;
use crate::linrep::{RepError, Representation};
use crate::scalar::GaussQ;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Subgroupoid(#[from] SubgroupoidError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// A non-empty, comment-stripped line.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let t = raw.split('#').next().unwrap_or("").trim();
            (!t.is_empty()).then_some(Line {
                number: i + 1,
                text: t,
            })
        })
        .collect()
}

/// Splits `key: value`; `None` for lines without a colon.
fn key_value<'a>(line: &Line<'a>) -> Option<(&'a str, &'a str)> {
    line.text
        .split_once(':')
        .map(|(k, v)| (k.trim(), v.trim()))
}

fn naturals(line: &Line<'_>, value: &str) -> Result<Vec<usize>, FormatError> {
    value
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| err(line.number, format!("`{t}` is not a natural number")))
        })
        .collect()
}

fn natural(line: &Line<'_>, value: &str) -> Result<usize, FormatError> {
    match naturals(line, value)?.as_slice() {
        [n] => Ok(*n),
        _ => Err(err(line.number, "expected exactly one natural number")),
    }
}

fn scalars(line: &Line<'_>, value: &str) -> Result<Vec<GaussQ>, FormatError> {
    value
        .split_whitespace()
        .map(|t| {
            t.parse::<GaussQ>()
                .map_err(|e| err(line.number, format!("`{t}`: {}", e.0)))
        })
        .collect()
}

struct Keys(HashSet<String>);

impl Keys {
    fn new() -> Self {
        Keys(HashSet::new())
    }

    fn claim(&mut self, line: &Line<'_>, key: &str) -> Result<(), FormatError> {
        if self.0.insert(key.to_owned()) {
            Ok(())
        } else {
            Err(err(line.number, format!("duplicate key `{key}`")))
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn kv_line(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        writeln!(out, "{key}:").unwrap();
    } else {
        writeln!(out, "{key}: {value}").unwrap();
    }
}

// ---- groupoids ----

pub fn serialize_groupoid(g: &FiniteGroupoid) -> String {
    let t = g.to_tables();
    let mut out = String::new();
    kv_line(&mut out, "objects", &t.objects.to_string());
    kv_line(&mut out, "morphisms", &t.dom.len().to_string());
    kv_line(&mut out, "dom", &join(&t.dom));
    kv_line(&mut out, "cod", &join(&t.cod));
    kv_line(&mut out, "id", &join(&t.identity));
    kv_line(&mut out, "inv", &join(&t.inverse));
    out.push_str("compose:\n");
    for (g2, g1, r) in &t.compose {
        writeln!(out, "{g2} {g1} {r}").unwrap();
    }
    out
}

/// Parses and validates a groupoid.
pub fn parse_groupoid(text: &str) -> Result<FiniteGroupoid, FormatError> {
    let ls = lines(text);
    let mut keys = Keys::new();
    let mut objects = None;
    let mut morphisms = None;
    let (mut dom, mut cod, mut id, mut inv) = (None, None, None, None);
    let mut compose = Vec::new();
    let mut seen_pairs = HashSet::new();
    let mut in_compose = false;
    for line in &ls {
        match key_value(line) {
            Some((key, value)) => {
                keys.claim(line, key)?;
                in_compose = false;
                match key {
                    "objects" => objects = Some(natural(line, value)?),
                    "morphisms" => morphisms = Some(natural(line, value)?),
                    "dom" => dom = Some((line.number, naturals(line, value)?)),
                    "cod" => cod = Some((line.number, naturals(line, value)?)),
                    "id" => id = Some((line.number, naturals(line, value)?)),
                    "inv" => inv = Some((line.number, naturals(line, value)?)),
                    "compose" => {
                        if !value.is_empty() {
                            return Err(err(line.number, "`compose:` takes no value"));
                        }
                        in_compose = true;
                    }
                    other => return Err(err(line.number, format!("unknown key `{other}`"))),
                }
            }
            None if in_compose => match naturals(line, line.text)?.as_slice() {
                &[g2, g1, r] => {
                    if !seen_pairs.insert((g2, g1)) {
                        return Err(err(line.number, format!("duplicate compose entry ({g2}, {g1})")));
                    }
                    compose.push((g2, g1, r));
                }
                _ => return Err(err(line.number, "compose entries are `<g2> <g1> <result>`")),
            },
            None => return Err(err(line.number, "expected `key: value`")),
        }
    }
    let objects = objects.ok_or(FormatError::Missing("objects"))?;
    let m = morphisms.ok_or(FormatError::Missing("morphisms"))?;
    let take = |name: &'static str, v: Option<(usize, Vec<usize>)>, len: usize| {
        let (line, v) = v.ok_or(FormatError::Missing(name))?;
        if v.len() != len {
            return Err(err(line, format!("`{name}` has {} entries, expected {len}", v.len())));
        }
        Ok(v)
    };
    let tables = GroupoidTables {
        objects,
        dom: take("dom", dom, m)?,
        cod: take("cod", cod, m)?,
        identity: take("id", id, objects)?,
        inverse: take("inv", inv, m)?,
        compose,
    };
    Ok(FiniteGroupoid::from_tables_validated(&tables)?)
}

// ---- subgroupoids ----

/// A subgroupoid file: optional `parent:` path, then `objects:` and
/// `morphisms:` index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupoidDoc {
    pub parent: Option<String>,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl SubgroupoidDoc {
    pub fn build(&self, parent: Arc<FiniteGroupoid>) -> Result<Subgroupoid, FormatError> {
        Ok(Subgroupoid::new(
            parent,
            self.objects.iter().copied(),
            self.morphisms.iter().copied(),
        )?)
    }
}

pub fn parse_subgroupoid(text: &str) -> Result<SubgroupoidDoc, FormatError> {
    let mut keys = Keys::new();
    let mut doc = SubgroupoidDoc {
        parent: None,
        objects: Vec::new(),
        morphisms: Vec::new(),
    };
    let (mut has_objects, mut has_morphisms) = (false, false);
    for line in &lines(text) {
        let (key, value) = key_value(line).ok_or_else(|| err(line.number, "expected `key: value`"))?;
        keys.claim(line, key)?;
        match key {
            "parent" => doc.parent = Some(value.to_owned()),
            "objects" => {
                doc.objects = naturals(line, value)?;
                has_objects = true;
            }
            "morphisms" => {
                doc.morphisms = naturals(line, value)?;
                has_morphisms = true;
            }
            other => return Err(err(line.number, format!("unknown key `{other}`"))),
        }
    }
    if !has_objects {
        return Err(FormatError::Missing("objects"));
    }
    if !has_morphisms {
        return Err(FormatError::Missing("morphisms"));
    }
    Ok(doc)
}

pub fn serialize_subgroupoid(h: &Subgroupoid, parent: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(p) = parent {
        kv_line(&mut out, "parent", p);
    }
    kv_line(&mut out, "objects", &join(h.objects()));
    kv_line(&mut out, "morphisms", &join(h.morphisms()));
    out
}

// ---- G-sets ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetDoc {
    pub over: String,
    pub sizes: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

impl GSetDoc {
    pub fn build(self, base: Arc<FiniteGroupoid>) -> Result<GSet, FormatError> {
        Ok(GSet::new(base, self.sizes, self.action)?)
    }
}

/// `act <g>` keys must cover `0..m` in order.
fn indexed_key(line: &Line<'_>, key: &str, prefix: &str, expected: usize) -> Result<bool, FormatError> {
    let Some(rest) = key.strip_prefix(prefix) else {
        return Ok(false);
    };
    let idx: usize = rest
        .trim()
        .parse()
        .map_err(|_| err(line.number, format!("bad index in `{key}`")))?;
    if idx != expected {
        return Err(err(line.number, format!("expected `{prefix}{expected}`, found `{key}`")));
    }
    Ok(true)
}

pub fn parse_gset(text: &str) -> Result<GSetDoc, FormatError> {
    let mut keys = Keys::new();
    let mut over = None;
    let mut sizes = None;
    let mut action = Vec::new();
    for line in &lines(text) {
        let (key, value) = key_value(line).ok_or_else(|| err(line.number, "expected `key: value`"))?;
        keys.claim(line, key)?;
        match key {
            "gset over" => over = Some(value.to_owned()),
            "sizes" => sizes = Some(naturals(line, value)?),
            _ if indexed_key(line, key, "act ", action.len())? => action.push(naturals(line, value)?),
            other => return Err(err(line.number, format!("unknown key `{other}`"))),
        }
    }
    Ok(GSetDoc {
        over: over.ok_or(FormatError::Missing("gset over"))?,
        sizes: sizes.ok_or(FormatError::Missing("sizes"))?,
        action,
    })
}

pub fn serialize_gset(x: &GSet, over: &str) -> String {
    let mut out = String::new();
    kv_line(&mut out, "gset over", over);
    kv_line(&mut out, "sizes", &join(x.sizes()));
    for g in 0..x.base().morphism_count() {
        kv_line(&mut out, &format!("act {g}"), &join(x.image(g)));
    }
    out
}

// ---- representations ----

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDoc {
    pub over: String,
    pub dims: Vec<usize>,
    /// raw rows per morphism
    pub mats: Vec<(usize, Vec<Vec<GaussQ>>)>,
}

impl RepDoc {
    pub fn build(self, base: Arc<FiniteGroupoid>) -> Result<Representation, FormatError> {
        let mut mats = Vec::with_capacity(self.mats.len());
        for (g, (line, rows)) in self.mats.into_iter().enumerate() {
            if g >= base.morphism_count() {
                return Err(err(line, format!("morphism {g} is out of range")));
            }
            let cols = self.dims.get(base.dom(g)).copied().unwrap_or(0);
            if let Some(r) = rows.iter().find(|r| r.len() != cols) {
                return Err(err(line, format!("row of length {}, expected {cols}", r.len())));
            }
            mats.push(Matrix::from_rows(rows, cols));
        }
        Ok(Representation::new(base, self.dims, mats)?)
    }
}

pub fn parse_rep(text: &str) -> Result<RepDoc, FormatError> {
    let mut keys = Keys::new();
    let mut over = None;
    let mut dims = None;
    let mut mats: Vec<(usize, Vec<Vec<GaussQ>>)> = Vec::new();
    for line in &lines(text) {
        match key_value(line) {
            Some((key, value)) => {
                keys.claim(line, key)?;
                match key {
                    "rep over" => over = Some(value.to_owned()),
                    "dims" => dims = Some(naturals(line, value)?),
                    _ if indexed_key(line, key, "mat ", mats.len())? => {
                        if !value.is_empty() {
                            return Err(err(line.number, "matrix rows follow on their own lines"));
                        }
                        mats.push((line.number, Vec::new()));
                    }
                    other => return Err(err(line.number, format!("unknown key `{other}`"))),
                }
            }
            None => match mats.last_mut() {
                Some((_, rows)) => rows.push(scalars(line, line.text)?),
                None => return Err(err(line.number, "matrix row outside a `mat` block")),
            },
        }
    }
    Ok(RepDoc {
        over: over.ok_or(FormatError::Missing("rep over"))?,
        dims: dims.ok_or(FormatError::Missing("dims"))?,
        mats,
    })
}

fn write_rows(out: &mut String, m: &Matrix) {
    for i in 0..m.rows() {
        writeln!(out, "{}", join(m.row(i))).unwrap();
    }
}

pub fn serialize_rep(r: &Representation, over: &str) -> String {
    let mut out = String::new();
    kv_line(&mut out, "rep over", over);
    kv_line(&mut out, "dims", &join(r.dims()));
    for (g, m) in r.mats().iter().enumerate() {
        writeln!(out, "mat {g}:").unwrap();
        write_rows(&mut out, m);
    }
    out
}

// ---- functions and natural transformations ----

pub fn serialize_fn(phi: &[GaussQ]) -> String {
    let mut out = String::new();
    kv_line(&mut out, "fn", &join(phi));
    out
}

pub fn parse_fn(text: &str) -> Result<Vec<GaussQ>, FormatError> {
    let mut keys = Keys::new();
    let mut phi = None;
    for line in &lines(text) {
        let (key, value) = key_value(line).ok_or_else(|| err(line.number, "expected `key: value`"))?;
        keys.claim(line, key)?;
        match key {
            "fn" => phi = Some(scalars(line, value)?),
            other => return Err(err(line.number, format!("unknown key `{other}`"))),
        }
    }
    phi.ok_or(FormatError::Missing("fn"))
}

/// One block `nat <x>: <rows> <cols>` per object, followed by its rows.
pub fn serialize_nat(phi: &[Matrix]) -> String {
    let mut out = String::new();
    for (x, m) in phi.iter().enumerate() {
        writeln!(out, "nat {x}: {} {}", m.rows(), m.cols()).unwrap();
        write_rows(&mut out, m);
    }
    out
}

pub fn parse_nat(text: &str) -> Result<Vec<Matrix>, FormatError> {
    let mut keys = Keys::new();
    let mut blocks: Vec<(usize, usize, usize, Vec<Vec<GaussQ>>)> = Vec::new();
    for line in &lines(text) {
        match key_value(line) {
            Some((key, value)) => {
                keys.claim(line, key)?;
                if !indexed_key(line, key, "nat ", blocks.len())? {
                    return Err(err(line.number, format!("unknown key `{key}`")));
                }
                match naturals(line, value)?.as_slice() {
                    &[r, c] => blocks.push((line.number, r, c, Vec::new())),
                    _ => return Err(err(line.number, "expected `<rows> <cols>`")),
                }
            }
            None => match blocks.last_mut() {
                Some((_, _, _, rows)) => rows.push(scalars(line, line.text)?),
                None => return Err(err(line.number, "matrix row outside a `nat` block")),
            },
        }
    }
    blocks
        .into_iter()
        .map(|(line, r, c, rows)| {
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(err(line, format!("block is not {r}×{c}")));
            }
            Ok(Matrix::from_rows(rows, c))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{
        closure, coproduct, cyclic_group, pair_groupoid, permutations, product, symmetric_group,
    };
    use crate::linrep::{permutation_rep, trivial_rep};

    fn round_trip(g: &FiniteGroupoid) {
        let text = serialize_groupoid(g);
        let back = parse_groupoid(&text).unwrap();
        assert_eq!(&back, g);
        assert_eq!(serialize_groupoid(&back), text);
    }

    #[test]
    fn groupoid_round_trips() {
        round_trip(&pair_groupoid(2).unwrap());
        round_trip(&symmetric_group(3));
        round_trip(&product(&cyclic_group(2), &pair_groupoid(2).unwrap()));
        round_trip(&coproduct(&pair_groupoid(2).unwrap(), &cyclic_group(3)));
    }

    #[test]
    fn pair2_text() {
        let text = serialize_groupoid(&pair_groupoid(2).unwrap());
        assert!(text.starts_with("objects: 2\nmorphisms: 4\n"));
        let commented = format!("# pair groupoid on two points\n\n{}", text.replace("objects: 2", "objects: 2   # n"));
        assert_eq!(parse_groupoid(&commented).unwrap(), pair_groupoid(2).unwrap());
    }

    #[test]
    fn groupoid_errors() {
        let text = serialize_groupoid(&pair_groupoid(2).unwrap());
        // missing composable pair
        let missing: String = text.lines().filter(|l| *l != "1 2 3").map(|l| format!("{l}\n")).collect();
        assert_ne!(missing, text);
        let e = parse_groupoid(&missing).unwrap_err();
        assert!(matches!(e, FormatError::Groupoid(GroupoidError::MissingCompose { g2: 1, g1: 2 })), "{e}");

        let dup = text.replace("id: 0 3", "id: 0 3\nid: 0 3");
        assert_eq!(
            parse_groupoid(&dup).unwrap_err(),
            FormatError::Parse { line: 6, message: "duplicate key `id`".into() }
        );
        let bad = text.replace("dom: 0 0 1 1", "dom: 0 x 1 1");
        assert!(matches!(parse_groupoid(&bad), Err(FormatError::Parse { line: 3, .. })));

        // patch (0,1)∘(1,0) to the wrong identity
        let patched = text.replace("1 2 3", "1 2 0");
        assert!(matches!(
            parse_groupoid(&patched),
            Err(FormatError::Groupoid(GroupoidError::Invalid(_)))
        ));
    }

    #[test]
    fn other_round_trips() {
        let s3 = Arc::new(symmetric_group(3));
        let swap = permutations(3).iter().position(|p| p == &[1, 0, 2]).unwrap();
        let h = closure(&s3, &[swap], true).unwrap();
        let text = serialize_subgroupoid(&h, Some("s3.gpd"));
        let doc = parse_subgroupoid(&text).unwrap();
        assert_eq!(doc.parent.as_deref(), Some("s3.gpd"));
        assert_eq!(doc.build(s3.clone()).unwrap(), h);

        let perms = permutations(3);
        let x = GSet::from_fn(s3.clone(), vec![3], |g, e| perms[g][e]).unwrap();
        let text = serialize_gset(&x, "s3.gpd");
        let doc = parse_gset(&text).unwrap();
        assert_eq!(doc.over, "s3.gpd");
        let back = doc.build(s3.clone()).unwrap();
        assert_eq!(back, x);
        assert_eq!(serialize_gset(&back, "s3.gpd"), text);

        let r = permutation_rep(&x);
        let text = serialize_rep(&r, "s3.gpd");
        let back = parse_rep(&text).unwrap().build(s3.clone()).unwrap();
        assert_eq!(back, r);
        assert_eq!(serialize_rep(&back, "s3.gpd"), text);
        assert_eq!(parse_rep(&serialize_rep(&trivial_rep(s3.clone()), "x")).unwrap().dims, vec![1]);

        let phi = vec![GaussQ::ratio(1, 2), GaussQ::i(), GaussQ::from_int(-3)];
        assert_eq!(parse_fn(&serialize_fn(&phi)).unwrap(), phi);
        let nat = vec![Matrix::identity(2), Matrix::zeros(1, 3)];
        assert_eq!(parse_nat(&serialize_nat(&nat)).unwrap(), nat);
    }

    #[test]
    fn gset_errors() {
        let text = "gset over: c2\nsizes: 2\nact 0: 0 1\nact 0: 1 0\n";
        assert!(matches!(parse_gset(text), Err(FormatError::Parse { line: 4, .. })));
        let c2 = Arc::new(cyclic_group(2));
        let text = "gset over: c2\nsizes: 2\nact 0: 0 1\nact 1: 0 0\n";
        assert!(parse_gset(text).unwrap().build(c2).is_err());
    }
}
