//! Builder expressions: `pair(n)`, `cyclic(n)`, `sym(n)`, `product(e, e)`,
//! `coproduct(e, e)` and `file(path)`, plus subgroupoid specifications
//! `full`, `discrete`, `iso`, `closure(i j …)` and `file(path)`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::format::{parse_groupoid, parse_subgroupoid, FormatError};
use crate::groupoid::{
    closure, coproduct, cyclic_group, pair_groupoid, product, symmetric_group, FiniteGroupoid,
    Mor, Subgroupoid, SubgroupoidError,
};

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error("at offset {at}: {message}")]
    Syntax { at: usize, message: String },
    #[error("{path}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Subgroupoid(#[from] SubgroupoidError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Pair(usize),
    Cyclic(usize),
    Sym(usize),
    Product(Box<Expr>, Box<Expr>),
    Coproduct(Box<Expr>, Box<Expr>),
    File(String),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Pair(n) => write!(f, "pair({n})"),
            Expr::Cyclic(n) => write!(f, "cyclic({n})"),
            Expr::Sym(n) => write!(f, "sym({n})"),
            Expr::Product(a, b) => write!(f, "product({a}, {b})"),
            Expr::Coproduct(a, b) => write!(f, "coproduct({a}, {b})"),
            Expr::File(p) => write!(f, "file({p})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, BuildError> {
        Err(BuildError::Syntax {
            at: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: char) -> Result<(), BuildError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<&'a str, BuildError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.fail("expected a name");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<usize, BuildError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        match rest[..len].parse() {
            Ok(n) => {
                self.pos += len;
                Ok(n)
            }
            Err(_) => self.fail("expected a natural number"),
        }
    }

    /// Raw text up to the matching `)`.
    fn raw_arg(&mut self) -> Result<String, BuildError> {
        let rest = &self.src[self.pos..];
        match rest.find(')') {
            Some(end) => {
                self.pos += end;
                Ok(rest[..end].trim().to_owned())
            }
            None => self.fail("unterminated argument"),
        }
    }

    fn finish(&mut self) -> Result<(), BuildError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.fail("trailing input")
        }
    }

    fn expr(&mut self) -> Result<Expr, BuildError> {
        let start = self.pos;
        let name = self.ident()?;
        self.eat('(')?;
        let e = match name {
            "pair" => Expr::Pair(self.number()?),
            "cyclic" => Expr::Cyclic(self.number()?),
            "sym" => Expr::Sym(self.number()?),
            "product" | "coproduct" => {
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                if name == "product" {
                    Expr::Product(Box::new(a), Box::new(b))
                } else {
                    Expr::Coproduct(Box::new(a), Box::new(b))
                }
            }
            "file" => Expr::File(self.raw_arg()?),
            other => {
                self.pos = start;
                return self.fail(format!("unknown constructor `{other}`"));
            }
        };
        self.eat(')')?;
        Ok(e)
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, BuildError> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

fn resolve(base: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn read(path: &Path) -> Result<String, BuildError> {
    std::fs::read_to_string(path).map_err(|source| BuildError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and validates a groupoid file.
pub fn load_groupoid(path: &Path) -> Result<FiniteGroupoid, BuildError> {
    parse_groupoid(&read(path)?).map_err(|source| BuildError::Format {
        path: path.to_path_buf(),
        source,
    })
}

impl Expr {
    /// Builds the groupoid; `file` paths are relative to `base`.
    pub fn eval(&self, base: &Path) -> Result<FiniteGroupoid, BuildError> {
        Ok(match self {
            Expr::Pair(n) => pair_groupoid(*n).map_err(|e| BuildError::Invalid(e.to_string()))?,
            Expr::Cyclic(0) | Expr::Sym(0) => {
                return Err(BuildError::Invalid("groups need at least one element".into()))
            }
            Expr::Cyclic(n) => cyclic_group(*n),
            Expr::Sym(n) if *n > 5 => {
                return Err(BuildError::Invalid(format!("sym({n}) is too large")))
            }
            Expr::Sym(n) => symmetric_group(*n),
            Expr::Product(a, b) => product(&a.eval(base)?, &b.eval(base)?),
            Expr::Coproduct(a, b) => coproduct(&a.eval(base)?, &b.eval(base)?),
            Expr::File(p) => load_groupoid(&resolve(base, p))?,
        })
    }
}

/// Parses and evaluates a builder expression.
pub fn build(src: &str, base: &Path) -> Result<FiniteGroupoid, BuildError> {
    parse_expr(src)?.eval(base)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubSpec {
    Full,
    Discrete,
    Iso,
    /// wide closure of the listed morphisms
    Closure(Vec<Mor>),
    File(String),
}

impl fmt::Display for SubSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubSpec::Full => f.write_str("full"),
            SubSpec::Discrete => f.write_str("discrete"),
            SubSpec::Iso => f.write_str("iso"),
            SubSpec::Closure(seed) => {
                let s: Vec<String> = seed.iter().map(ToString::to_string).collect();
                write!(f, "closure({})", s.join(" "))
            }
            SubSpec::File(p) => write!(f, "file({p})"),
        }
    }
}

pub fn parse_sub_spec(src: &str) -> Result<SubSpec, BuildError> {
    let mut p = Parser::new(src);
    let name = p.ident()?;
    let spec = match name {
        "full" => SubSpec::Full,
        "discrete" => SubSpec::Discrete,
        "iso" => SubSpec::Iso,
        "closure" => {
            p.eat('(')?;
            let raw = p.raw_arg()?;
            p.eat(')')?;
            let seed = raw
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse().map_err(|_| BuildError::Syntax {
                        at: 0,
                        message: format!("`{t}` is not a morphism index"),
                    })
                })
                .collect::<Result<_, _>>()?;
            SubSpec::Closure(seed)
        }
        "file" => {
            p.eat('(')?;
            let path = p.raw_arg()?;
            p.eat(')')?;
            SubSpec::File(path)
        }
        other => return p.fail(format!("unknown subgroupoid `{other}`")),
    };
    p.finish()?;
    Ok(spec)
}

impl SubSpec {
    pub fn eval(&self, g: &Arc<FiniteGroupoid>, base: &Path) -> Result<Subgroupoid, BuildError> {
        Ok(match self {
            SubSpec::Full => Subgroupoid::full(g.clone()),
            SubSpec::Discrete => Subgroupoid::discrete(g.clone()),
            SubSpec::Iso => Subgroupoid::iso_bundle(g.clone()),
            SubSpec::Closure(seed) => closure(g, seed, true)?,
            SubSpec::File(p) => {
                let path = resolve(base, p);
                let doc = parse_subgroupoid(&read(&path)?).map_err(|source| BuildError::Format {
                    path: path.clone(),
                    source,
                })?;
                doc.build(g.clone())
                    .map_err(|source| BuildError::Format { path, source })?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let here = Path::new(".");
        let g = build("pair(2)", here).unwrap();
        assert_eq!((g.object_count(), g.morphism_count()), (2, 4));
        let g = build(" product( cyclic(2) , pair(2) ) ", here).unwrap();
        assert_eq!((g.object_count(), g.morphism_count()), (2, 8));
        let g = build("coproduct(pair(2), cyclic(2))", here).unwrap();
        assert_eq!((g.object_count(), g.morphism_count(), g.component_count()), (3, 6, 2));
        assert_eq!(build("sym(3)", here).unwrap().morphism_count(), 6);
        let e = parse_expr("product(sym(3), coproduct(pair(1), file(a b.gpd)))").unwrap();
        assert_eq!(e.to_string(), "product(sym(3), coproduct(pair(1), file(a b.gpd)))");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn syntax_errors() {
        let here = Path::new(".");
        assert!(matches!(parse_expr("pair(2"), Err(BuildError::Syntax { .. })));
        assert!(matches!(parse_expr("pair(2) x"), Err(BuildError::Syntax { .. })));
        assert!(matches!(parse_expr("cube(2)"), Err(BuildError::Syntax { at: 0, .. })));
        assert!(matches!(build("pair(0)", here), Err(BuildError::Invalid(_))));
        assert!(matches!(build("file(/nonexistent.gpd)", here), Err(BuildError::Io { .. })));
    }

    #[test]
    fn sub_specs() {
        let here = Path::new(".");
        let g = Arc::new(build("product(cyclic(2), pair(2))", here).unwrap());
        assert_eq!(parse_sub_spec("discrete").unwrap().eval(&g, here).unwrap().morphisms().len(), 2);
        assert_eq!(parse_sub_spec("iso").unwrap().eval(&g, here).unwrap().morphisms().len(), 4);
        assert_eq!(parse_sub_spec("full").unwrap().eval(&g, here).unwrap().morphisms().len(), 8);
        let spec = parse_sub_spec("closure(1, 2)").unwrap();
        assert_eq!(spec, SubSpec::Closure(vec![1, 2]));
        assert_eq!(parse_sub_spec(&spec.to_string()).unwrap(), spec);
        assert!(parse_sub_spec("closure(x)").is_err());
        assert!(parse_sub_spec("half").is_err());
    }
}
