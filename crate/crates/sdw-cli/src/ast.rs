use std::fmt;

/// A parsed session file: declarations and checks in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    pub statements: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Ring(String, RingExpr),
    Ideal(String, IdealExpr),
    Module(String, ModuleExpr),
    Check(Check),
    Report { format: ReportFormat, path: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    Polynomial {
        characteristic: u32,
        vars: Vec<String>,
        weights: Vec<u32>,
    },
    Quotient {
        ring: String,
        ideal: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealExpr {
    pub ring: String,
    pub gens: Vec<PolyExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleExpr {
    Coker {
        ring: String,
        degrees: Vec<i64>,
        matrix: Vec<Vec<PolyExpr>>,
    },
    Ext {
        i: usize,
        source: String,
        target: String,
    },
    Canonical {
        ring: String,
    },
    Jls {
        ring: String,
        over: String,
    },
    Syzygy {
        i: usize,
        module: String,
    },
}

/// Polynomial expression tree (kept symbolic for round-trip printing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Int(i64),
    Var(String),
    Pow(Box<PolyExpr>, u32),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Neg(Box<PolyExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub args: Vec<Arg>,
    pub expect: Option<Expectation>,
    pub bound: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Name(String),
    Int(i64),
    List(Vec<Arg>),
}

/// Expected verdicts; `VerifiedUpToBound` matches any bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    True,
    False,
    VerifiedUpToBound,
    Unknown,
    Unsupported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring(name, expr) => write!(f, "ring {name} = {expr};"),
            Stmt::Ideal(name, expr) => write!(f, "ideal {name} = {expr};"),
            Stmt::Module(name, expr) => write!(f, "module {name} = {expr};"),
            Stmt::Check(c) => write!(f, "{c}"),
            Stmt::Report { format, path } => write!(f, "report {format} {path};"),
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Polynomial {
                characteristic,
                vars,
                weights,
            } => write!(
                f,
                "polynomial_ring(char {characteristic}, vars [{}], weights [{}])",
                vars.join(", "),
                weights
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            RingExpr::Quotient { ring, ideal } => write!(f, "quotient({ring}, {ideal})"),
        }
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ideal({}; {})",
            self.ring,
            self.gens
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Coker {
                ring,
                degrees,
                matrix,
            } => {
                let degs = degrees
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let rows = matrix
                    .iter()
                    .map(|row| {
                        format!(
                            "[{}]",
                            row.iter()
                                .map(|e| e.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(", ");
                write!(f, "coker({ring}; degrees [{degs}]; matrix [{rows}])")
            }
            ModuleExpr::Ext { i, source, target } => write!(f, "ext({i}, {source}, {target})"),
            ModuleExpr::Canonical { ring } => write!(f, "canonical({ring})"),
            ModuleExpr::Jls { ring, over } => write!(f, "jls({ring}, {over})"),
            ModuleExpr::Syzygy { i, module } => write!(f, "syzygy({i}, {module})"),
        }
    }
}

impl PolyExpr {
    fn precedence(&self) -> u8 {
        match self {
            PolyExpr::Add(..) | PolyExpr::Sub(..) => 0,
            PolyExpr::Neg(..) => 1,
            PolyExpr::Mul(..) => 2,
            PolyExpr::Pow(..) => 3,
            PolyExpr::Int(_) | PolyExpr::Var(_) => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        let me = self.precedence();
        if me < parent {
            write!(f, "(")?;
        }
        match self {
            PolyExpr::Int(n) => write!(f, "{n}")?,
            PolyExpr::Var(v) => write!(f, "{v}")?,
            PolyExpr::Pow(b, e) => {
                b.fmt_at(f, 4)?;
                write!(f, "^{e}")?;
            }
            PolyExpr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)?;
            }
            PolyExpr::Add(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " + ")?;
                b.fmt_at(f, 1)?;
            }
            PolyExpr::Sub(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " - ")?;
                b.fmt_at(f, 1)?;
            }
            PolyExpr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(f, 2)?;
            }
        }
        if me < parent {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check {}({})",
            self.name,
            self.args
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )?;
        if let Some(e) = &self.expect {
            write!(f, " expect {e}")?;
        }
        if let Some(b) = self.bound {
            write!(f, " bound {b}")?;
        }
        write!(f, ";")
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => write!(f, "{n}"),
            Arg::Int(i) => write!(f, "{i}"),
            Arg::List(items) => write!(
                f,
                "[{}]",
                items
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Expectation::True => "true",
            Expectation::False => "false",
            Expectation::VerifiedUpToBound => "verified_up_to_bound",
            Expectation::Unknown => "unknown",
            Expectation::Unsupported => "unsupported",
        };
        write!(f, "{s}")
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportFormat::Json => write!(f, "json"),
            ReportFormat::Text => write!(f, "text"),
        }
    }
}
