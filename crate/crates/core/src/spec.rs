//! Declarative family descriptions with a canonical string form, e.g.
//! `dl:cp:3@r4`, `m:3,2@r5`, `j:2@m6`, `t:3@r3`, `y:5@d2`,
//! `line(dl:cycle:8@r4)`.
//!
//! Grammar:
//! ```text
//! spec   := "line(" spec ")" | family
//! family := "dl:" base "@r" N | "dl:tree:" A "," B "@r" N
//!         | "j:" R "@m" M | "t:" R "@r" N | "cayley:" N "," K "@r" N
//!         | "m:" N "," K "@r" N | "y:" N ("@d" D | "@r" N)
//!         | "dcycle:" N | base | "tree:" A "," B "," DEPTH
//! base   := "cycle:" M | "complete:" M "," N | "cp:" N
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::ball::{FiniteBall, LabeledBall};
use crate::bipartite::{make_bipartite, BipartiteKind};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::families::{
    line_ball, make_cayley_free_product_ball, make_dl_ball, make_dl_tree_ball, make_j_segment, make_m_ball,
    make_t_ball, make_y_ball, make_y_ball_radius,
};

/// How far a `Y_n` construction reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YExtent {
    /// Gluing generations.
    Depth(usize),
    /// Underlying-graph radius around the center.
    Radius(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DlBase {
    Finite(BipartiteKind),
    /// The infinite semiregular tree `T_{a,b}`.
    Tree(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// A finite bipartite graph oriented from `X` to `Y`, taken whole.
    Bipartite(BipartiteKind),
    DirectedCycle(usize),
    Dl { base: DlBase, radius: usize },
    J { r: usize, m: usize },
    T { r: usize, radius: usize },
    Cayley { n: usize, k: usize, radius: usize },
    M { n: usize, k: usize, radius: usize },
    Y { n: usize, extent: YExtent },
    Line(Box<FamilySpec>),
}

fn base_str(k: &BipartiteKind) -> String {
    match k {
        BipartiteKind::Cycle(m) => format!("cycle:{m}"),
        BipartiteKind::Complete(m, n) => format!("complete:{m},{n}"),
        BipartiteKind::Cp(n) => format!("cp:{n}"),
        BipartiteKind::TreeFragment(a, b, d) => format!("tree:{a},{b},{d}"),
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Bipartite(k) => write!(f, "{}", base_str(k)),
            FamilySpec::DirectedCycle(n) => write!(f, "dcycle:{n}"),
            FamilySpec::Dl {
                base: DlBase::Finite(k),
                radius,
            } => write!(f, "dl:{}@r{radius}", base_str(k)),
            FamilySpec::Dl {
                base: DlBase::Tree(a, b),
                radius,
            } => write!(f, "dl:tree:{a},{b}@r{radius}"),
            FamilySpec::J { r, m } => write!(f, "j:{r}@m{m}"),
            FamilySpec::T { r, radius } => write!(f, "t:{r}@r{radius}"),
            FamilySpec::Cayley { n, k, radius } => write!(f, "cayley:{n},{k}@r{radius}"),
            FamilySpec::M { n, k, radius } => write!(f, "m:{n},{k}@r{radius}"),
            FamilySpec::Y {
                n,
                extent: YExtent::Depth(d),
            } => write!(f, "y:{n}@d{d}"),
            FamilySpec::Y {
                n,
                extent: YExtent::Radius(r),
            } => write!(f, "y:{n}@r{r}"),
            FamilySpec::Line(inner) => write!(f, "line({inner})"),
        }
    }
}

struct Parser<'a> {
    full: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            spec: self.full.to_string(),
            reason: reason.into(),
        }
    }

    fn numbers(&self, s: &str, count: usize) -> Result<Vec<usize>> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != count {
            return Err(self.err(format!("expected {count} comma-separated numbers, got `{s}`")));
        }
        parts
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| self.err(format!("`{p}` is not a natural number"))))
            .collect()
    }

    /// Splits `body@<tag><n>` and checks the tag.
    fn extent<'s>(&self, s: &'s str, tags: &[char]) -> Result<(&'s str, char, usize)> {
        let (body, ext) = s
            .split_once('@')
            .ok_or_else(|| self.err(format!("missing extent, expected `@{}<n>`", tags[0])))?;
        let mut chars = ext.chars();
        let tag = chars.next().ok_or_else(|| self.err("empty extent"))?;
        if !tags.contains(&tag) {
            return Err(self.err(format!("extent `@{ext}` must start with one of {tags:?}")));
        }
        let n = chars
            .as_str()
            .parse()
            .map_err(|_| self.err(format!("bad extent `@{ext}`")))?;
        Ok((body, tag, n))
    }

    fn base(&self, s: &str) -> Result<BipartiteKind> {
        let (name, args) = s.split_once(':').ok_or_else(|| self.err(format!("unknown base `{s}`")))?;
        let kind = match name {
            "cycle" => {
                let m = self.numbers(args, 1)?[0];
                if m < 4 || m % 2 == 1 {
                    return Err(self.err("cycle length must be even and at least 4"));
                }
                BipartiteKind::Cycle(m)
            }
            "complete" => {
                let v = self.numbers(args, 2)?;
                if v[0] == 0 || v[1] == 0 {
                    return Err(self.err("complete bipartite parts must be non-empty"));
                }
                BipartiteKind::Complete(v[0], v[1])
            }
            "cp" => {
                let n = self.numbers(args, 1)?[0];
                if n == 0 {
                    return Err(self.err("cp(n) needs n >= 1"));
                }
                BipartiteKind::Cp(n)
            }
            _ => return Err(self.err(format!("unknown base `{name}`"))),
        };
        Ok(kind)
    }

    fn spec(&self, s: &str) -> Result<FamilySpec> {
        if let Some(inner) = s.strip_prefix("line(") {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| self.err("unbalanced `line(`"))?;
            return Ok(FamilySpec::Line(Box::new(self.spec(inner)?)));
        }
        let (name, rest) = s.split_once(':').ok_or_else(|| self.err("expected `family:parameters`"))?;
        let at_least = |v: usize, lo: usize, what: &str| {
            if v < lo {
                Err(self.err(format!("{what} needs a value >= {lo}, got {v}")))
            } else {
                Ok(v)
            }
        };
        match name {
            "dl" => {
                let (body, _, radius) = self.extent(rest, &['r'])?;
                if let Some(args) = body.strip_prefix("tree:") {
                    let v = self.numbers(args, 2)?;
                    if v[0] == 0 || v[1] == 0 {
                        return Err(self.err("tree degrees must be positive"));
                    }
                    return Ok(FamilySpec::Dl {
                        base: DlBase::Tree(v[0], v[1]),
                        radius,
                    });
                }
                Ok(FamilySpec::Dl {
                    base: DlBase::Finite(self.base(body)?),
                    radius,
                })
            }
            "j" => {
                let (body, _, m) = self.extent(rest, &['m'])?;
                let r = at_least(self.numbers(body, 1)?[0], 1, "j(r)")?;
                Ok(FamilySpec::J {
                    r,
                    m: at_least(m, 1, "j segment extent")?,
                })
            }
            "t" => {
                let (body, _, radius) = self.extent(rest, &['r'])?;
                Ok(FamilySpec::T {
                    r: at_least(self.numbers(body, 1)?[0], 1, "t(r)")?,
                    radius,
                })
            }
            "cayley" => {
                let (body, _, radius) = self.extent(rest, &['r'])?;
                let v = self.numbers(body, 2)?;
                Ok(FamilySpec::Cayley {
                    n: at_least(v[0], 1, "cayley n")?,
                    k: at_least(v[1], 2, "cayley k")?,
                    radius,
                })
            }
            "m" => {
                let (body, _, radius) = self.extent(rest, &['r'])?;
                let v = self.numbers(body, 2)?;
                Ok(FamilySpec::M {
                    n: at_least(v[0], 3, "m(n,k) n")?,
                    k: at_least(v[1], 2, "m(n,k) k")?,
                    radius,
                })
            }
            "y" => {
                let (body, tag, e) = self.extent(rest, &['d', 'r'])?;
                let n = at_least(self.numbers(body, 1)?[0], 3, "y(n)")?;
                let extent = if tag == 'd' {
                    YExtent::Depth(at_least(e, 1, "y depth")?)
                } else {
                    YExtent::Radius(e)
                };
                Ok(FamilySpec::Y { n, extent })
            }
            "dcycle" => Ok(FamilySpec::DirectedCycle(at_least(self.numbers(rest, 1)?[0], 3, "dcycle")?)),
            "tree" => {
                let v = self.numbers(rest, 3)?;
                if v[0] == 0 || v[1] == 0 {
                    return Err(self.err("tree degrees must be positive"));
                }
                Ok(FamilySpec::Bipartite(BipartiteKind::TreeFragment(v[0], v[1], v[2])))
            }
            _ => Ok(FamilySpec::Bipartite(self.base(s)?)),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        Parser { full: trimmed }.spec(trimmed)
    }
}

fn whole(d: Digraph) -> Result<LabeledBall> {
    let center = d.vertices().next().ok_or_else(|| Error::Construction("empty graph".into()))?;
    Ok(LabeledBall::unlabeled(FiniteBall::whole(d, center)?))
}

impl FamilySpec {
    pub fn build(&self) -> Result<LabeledBall> {
        match self {
            FamilySpec::Bipartite(k) => {
                let b = make_bipartite(*k)?;
                let lb = whole(b.oriented())?;
                let labels: BTreeMap<usize, String> = lb
                    .labels
                    .keys()
                    .map(|&v| (v, if b.part_x().contains(&v) { format!("x{v}") } else { format!("y{v}") }))
                    .collect();
                LabeledBall::new(lb.ball, labels)
            }
            FamilySpec::DirectedCycle(n) => whole(Digraph::directed_cycle(*n)?),
            FamilySpec::Dl {
                base: DlBase::Finite(k),
                radius,
            } => make_dl_ball(&make_bipartite(*k)?, *radius),
            FamilySpec::Dl {
                base: DlBase::Tree(a, b),
                radius,
            } => make_dl_tree_ball(*a, *b, *radius),
            FamilySpec::J { r, m } => make_j_segment(*r, *m),
            FamilySpec::T { r, radius } => make_t_ball(*r, *radius),
            FamilySpec::Cayley { n, k, radius } => make_cayley_free_product_ball(*n, *k, *radius),
            FamilySpec::M { n, k, radius } => make_m_ball(*n, *k, *radius),
            FamilySpec::Y {
                n,
                extent: YExtent::Depth(d),
            } => make_y_ball(*n, *d),
            FamilySpec::Y {
                n,
                extent: YExtent::Radius(r),
            } => make_y_ball_radius(*n, *r),
            FamilySpec::Line(inner) => line_ball(&inner.build()?),
        }
    }

    /// Short family name used to look up defaults.
    pub fn family_key(&self) -> String {
        match self {
            FamilySpec::Bipartite(k) => base_str(k).split(':').next().unwrap_or_default().to_string(),
            FamilySpec::DirectedCycle(_) => "dcycle".into(),
            FamilySpec::Dl { .. } => "dl".into(),
            FamilySpec::J { .. } => "j".into(),
            FamilySpec::T { .. } => "t".into(),
            FamilySpec::Cayley { .. } => "cayley".into(),
            FamilySpec::M { .. } => "m".into(),
            FamilySpec::Y { .. } => "y".into(),
            FamilySpec::Line(_) => "line".into(),
        }
    }
}
