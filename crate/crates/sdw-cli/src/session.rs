use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use sdw_core::field::PrimeField;
use sdw_core::homology::ExtCalculator;
use sdw_core::module::{is_isomorphic, mu, IsoResult, Module, PresentedModule};
use sdw_core::poly::{PolyRing, Polynomial};
use sdw_core::report::{CheckRecord, CheckReport, Provenance, Verdict};
use sdw_core::ring::QuotientRing;
use sdw_core::semidual::{
    canonical_module, cross_semidualizing_check, ext_vanishing_probe, is_n_c_syzygy,
    is_n_c_torsionfree, is_semidualizing, is_totally_c_reflexive, jls_module, theorem_lg_check,
    theorem_tf_battery, universal_pushforward, SyzygyVerdict,
};
use sdw_core::serre::{
    check_g_condition, depth_graded, is_cm_module, is_gorenstein, is_locally_gorenstein_at,
    krull_dim, ring_invariants, satisfies_sn, satisfies_sn_tilde, GVerdict, HypothesisFlags,
    SnTildeVerdict, SnVerdict,
};

use crate::ast::*;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Runtime configuration (mirrors the command-line flags).
#[derive(Debug, Clone, Default)]
pub struct Config {
    pub char_override: Option<u32>,
    pub ext_bound: Option<u32>,
    pub seed: u64,
    pub timeout_s: Option<u64>,
}

/// Session-level (non-check) evaluation error: undefined names, invalid
/// declarations and the like. Mapped to exit code 2.
#[derive(Debug)]
pub struct SessionError(pub String);

impl std::fmt::Display for SessionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for SessionError {}

#[derive(Clone)]
enum Value {
    Ring(Arc<QuotientRing>),
    Ideal {
        ring: Arc<QuotientRing>,
        gens: Vec<Polynomial>,
    },
    Module(Module),
}

/// Result of running a session.
pub struct RunOutcome {
    pub report: CheckReport,
    pub exit_code: i32,
    /// `report FORMAT PATH` statements collected from the file.
    pub sinks: Vec<(ReportFormat, String)>,
}

struct Evaluator {
    config: Config,
    symbols: BTreeMap<String, Value>,
    omega_cache: BTreeMap<String, Module>,
    ring_names: BTreeMap<String, String>, // value name -> ring name owning it
}

impl Evaluator {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SessionError> {
        Err(SessionError(msg.into()))
    }

    fn define(&mut self, name: &str, v: Value) -> Result<(), SessionError> {
        if self.symbols.contains_key(name) {
            return self.err(format!("'{name}' is already defined"));
        }
        self.symbols.insert(name.to_string(), v);
        Ok(())
    }

    fn ring(&self, name: &str) -> Result<Arc<QuotientRing>, SessionError> {
        match self.symbols.get(name) {
            Some(Value::Ring(r)) => Ok(r.clone()),
            Some(_) => self.err(format!("'{name}' is not a ring")),
            None => self.err(format!("undefined symbol '{name}'")),
        }
    }

    fn module(&self, name: &str) -> Result<Module, SessionError> {
        match self.symbols.get(name) {
            Some(Value::Module(m)) => Ok(m.clone()),
            Some(Value::Ring(r)) => Ok(PresentedModule::ring_module(r.clone())),
            Some(_) => self.err(format!("'{name}' is not a module")),
            None => self.err(format!("undefined symbol '{name}'")),
        }
    }

    fn ideal(&self, name: &str) -> Result<(Arc<QuotientRing>, Vec<Polynomial>), SessionError> {
        match self.symbols.get(name) {
            Some(Value::Ideal { ring, gens }) => Ok((ring.clone(), gens.clone())),
            Some(_) => self.err(format!("'{name}' is not an ideal")),
            None => self.err(format!("undefined symbol '{name}'")),
        }
    }

    fn eval_poly(&self, ring: &Arc<PolyRing>, e: &PolyExpr) -> Result<Polynomial, SessionError> {
        Ok(match e {
            PolyExpr::Int(n) => ring.constant(*n),
            PolyExpr::Var(v) => match ring.var_index(v) {
                Some(i) => ring.var(i),
                None => return self.err(format!("unknown variable '{v}'")),
            },
            PolyExpr::Pow(b, e) => {
                let base = self.eval_poly(ring, b)?;
                let mut acc = ring.one();
                for _ in 0..*e {
                    acc = ring.mul(&acc, &base);
                }
                acc
            }
            PolyExpr::Mul(a, b) => ring.mul(&self.eval_poly(ring, a)?, &self.eval_poly(ring, b)?),
            PolyExpr::Add(a, b) => ring.add(&self.eval_poly(ring, a)?, &self.eval_poly(ring, b)?),
            PolyExpr::Sub(a, b) => ring.sub(&self.eval_poly(ring, a)?, &self.eval_poly(ring, b)?),
            PolyExpr::Neg(a) => ring.neg(&self.eval_poly(ring, a)?),
        })
    }

    fn omega(&mut self, ring_name: &str) -> Result<Module, String> {
        if let Some(w) = self.omega_cache.get(ring_name) {
            return Ok(w.clone());
        }
        let ring = self.ring(ring_name).map_err(|e| e.0)?;
        let w = canonical_module(&ring).map_err(|e| e.to_string())?;
        self.omega_cache.insert(ring_name.to_string(), w.clone());
        Ok(w)
    }

    fn declare(&mut self, stmt: &Stmt) -> Result<(), SessionError> {
        match stmt {
            Stmt::Ring(name, RingExpr::Polynomial {
                characteristic,
                vars,
                weights,
            }) => {
                let p = self.config.char_override.unwrap_or(*characteristic);
                let field = match PrimeField::new(p) {
                    Ok(f) => f,
                    Err(e) => return self.err(format!("ring {name}: {e}")),
                };
                let ring = PolyRing::new(field, vars.clone(), weights.clone())
                    .map_err(|e| SessionError(format!("ring {name}: {e}")))?;
                let q = QuotientRing::polynomial(ring);
                self.ring_names.insert(name.clone(), name.clone());
                self.define(name, Value::Ring(q))
            }
            Stmt::Ring(name, RingExpr::Quotient { ring, ideal }) => {
                let base = self.ring(ring)?;
                let (iring, gens) = self.ideal(ideal)?;
                if iring.poly_ring() != base.poly_ring() {
                    return self.err(format!(
                        "ring {name}: ideal '{ideal}' lives over a different polynomial ring"
                    ));
                }
                let mut all = base.ideal_gens().to_vec();
                all.extend(gens);
                let q = QuotientRing::new(base.poly_ring().clone(), all)
                    .map_err(|e| SessionError(format!("ring {name}: {e}")))?;
                self.ring_names.insert(name.clone(), name.clone());
                self.define(name, Value::Ring(q))
            }
            Stmt::Ideal(name, IdealExpr { ring, gens }) => {
                let base = self.ring(ring)?;
                let poly = base.poly_ring().clone();
                let mut out = Vec::with_capacity(gens.len());
                for g in gens {
                    let p = self.eval_poly(&poly, g)?;
                    if !poly.is_homogeneous(&p) {
                        return self.err(format!(
                            "ideal {name}: inhomogeneous generator {}",
                            poly.fmt_poly(&p)
                        ));
                    }
                    out.push(p);
                }
                self.define(
                    name,
                    Value::Ideal {
                        ring: base,
                        gens: out,
                    },
                )
            }
            Stmt::Module(name, expr) => {
                let m = self.eval_module(name, expr)?;
                self.define(name, Value::Module(m))
            }
            Stmt::Check(_) | Stmt::Report { .. } => Ok(()),
        }
    }

    fn eval_module(&mut self, name: &str, expr: &ModuleExpr) -> Result<Module, SessionError> {
        match expr {
            ModuleExpr::Coker {
                ring,
                degrees,
                matrix,
            } => {
                let base = self.ring(ring)?;
                let poly = base.poly_ring().clone();
                if matrix.len() != degrees.len() {
                    return self.err(format!(
                        "module {name}: matrix has {} rows for {} generators",
                        matrix.len(),
                        degrees.len()
                    ));
                }
                let n_cols = matrix.first().map(|r| r.len()).unwrap_or(0);
                if matrix.iter().any(|r| r.len() != n_cols) {
                    return self.err(format!("module {name}: ragged matrix"));
                }
                let mut cols = Vec::with_capacity(n_cols);
                for j in 0..n_cols {
                    let mut col = sdw_core::free::ModElement::zero();
                    for (i, row) in matrix.iter().enumerate() {
                        let entry = self.eval_poly(&poly, &row[j])?;
                        if !entry.is_zero() {
                            col = col.add(
                                &poly,
                                &sdw_core::free::ModElement::from_poly(&entry, i as u32),
                            );
                        }
                    }
                    cols.push(col);
                }
                PresentedModule::new(base, degrees.clone(), cols)
                    .map_err(|e| SessionError(format!("module {name}: {e}")))
            }
            ModuleExpr::Ext { i, source, target } => {
                let m = self.module(source)?;
                let n = self.module(target)?;
                if m.ring() != n.ring() {
                    return self.err(format!("module {name}: Ext over mismatched rings"));
                }
                Ok(sdw_core::homology::ext_module(*i, &m, &n))
            }
            ModuleExpr::Canonical { ring } => {
                let _ = self.ring(ring)?;
                self.omega(ring)
                    .map_err(|e| SessionError(format!("module {name}: {e}")))
            }
            ModuleExpr::Jls { ring, over } => {
                let r = self.ring(ring)?;
                let s = self.ring(over)?;
                jls_module(&r, &s).map_err(|e| SessionError(format!("module {name}: {e}")))
            }
            ModuleExpr::Syzygy { i, module } => {
                let m = self.module(module)?;
                Ok(sdw_core::homology::syzygy_module(&m, *i))
            }
        }
    }

    fn default_bound(&self, ring: &Arc<QuotientRing>, check_bound: Option<u32>) -> u32 {
        check_bound
            .or(self.config.ext_bound)
            .unwrap_or(ring.poly_ring().n_vars() as u32 + 2)
    }

    /// Runs one check; returns (verdict, witness, extra absorbed records).
    fn run_check(&mut self, c: &Check) -> Result<(Verdict, String, Vec<CheckRecord>), String> {
        let name_arg = |i: usize| -> Result<&str, String> {
            match c.args.get(i) {
                Some(Arg::Name(n)) => Ok(n),
                other => Err(format!("argument {i} must be a name, found {other:?}")),
            }
        };
        let int_arg = |i: usize| -> Result<i64, String> {
            match c.args.get(i) {
                Some(Arg::Int(n)) => Ok(*n),
                other => Err(format!("argument {i} must be an integer, found {other:?}")),
            }
        };
        let list_arg = |i: usize| -> Result<&[Arg], String> {
            match c.args.get(i) {
                Some(Arg::List(items)) => Ok(items),
                other => Err(format!("argument {i} must be a list, found {other:?}")),
            }
        };
        let module_list = |me: &Self, items: &[Arg]| -> Result<Vec<(String, Module)>, String> {
            items
                .iter()
                .map(|a| match a {
                    Arg::Name(n) => Ok((n.clone(), me.module(n).map_err(|e| e.0)?)),
                    other => Err(format!("expected module name, found {other:?}")),
                })
                .collect()
        };

        match c.name.as_str() {
            "dim_is" => {
                let x = name_arg(0)?;
                let expected = int_arg(1)?;
                let actual = match self.symbols.get(x) {
                    Some(Value::Ring(r)) => ring_invariants(r).dim,
                    Some(Value::Module(m)) => krull_dim(m),
                    _ => return Err(format!("'{x}' is not a ring or module")),
                };
                Ok((
                    Verdict::from_bool(actual == expected),
                    format!("dimension {actual}"),
                    vec![],
                ))
            }
            "depth_is" => {
                let x = name_arg(0)?;
                let expected = int_arg(1)?;
                let actual = match self.symbols.get(x) {
                    Some(Value::Ring(r)) => ring_invariants(r).depth,
                    Some(Value::Module(m)) => depth_graded(m).map_err(|e| e.to_string())?,
                    _ => return Err(format!("'{x}' is not a ring or module")),
                };
                Ok((
                    Verdict::from_bool(actual == expected),
                    format!("depth {actual}"),
                    vec![],
                ))
            }
            "is_cm" => {
                let x = name_arg(0)?;
                let (v, w) = match self.symbols.get(x) {
                    Some(Value::Ring(r)) => {
                        let inv = ring_invariants(r);
                        (inv.is_cm, format!("depth {} dim {}", inv.depth, inv.dim))
                    }
                    Some(Value::Module(m)) => {
                        let cm = is_cm_module(m).map_err(|e| e.to_string())?;
                        (cm, String::new())
                    }
                    _ => return Err(format!("'{x}' is not a ring or module")),
                };
                Ok((Verdict::from_bool(v), w, vec![]))
            }
            "is_gorenstein" => {
                let rname = name_arg(0)?.to_string();
                let ring = self.ring(&rname).map_err(|e| e.0)?;
                let omega = self.omega(&rname)?;
                let g = is_gorenstein(&ring, &omega);
                Ok((
                    Verdict::from_bool(g),
                    format!("canonical module has {} generator(s)", mu(&omega)),
                    vec![],
                ))
            }
            "mu_is" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let expected = int_arg(1)?;
                let actual = mu(&m) as i64;
                Ok((
                    Verdict::from_bool(actual == expected),
                    format!("mu = {actual}"),
                    vec![],
                ))
            }
            "hilbert_is" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let expected: Vec<i64> = list_arg(1)?
                    .iter()
                    .map(|a| match a {
                        Arg::Int(n) => Ok(*n),
                        other => Err(format!("expected integer, found {other:?}")),
                    })
                    .collect::<Result<_, String>>()?;
                let actual = m.hilbert_function(0, expected.len() as i64 - 1);
                let ok = actual.iter().map(|&x| x as i64).eq(expected.iter().copied());
                Ok((
                    Verdict::from_bool(ok),
                    format!("hilbert {:?}", actual),
                    vec![],
                ))
            }
            "is_isomorphic" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let n = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let res = is_isomorphic(&m, &n, 24, self.config.seed);
                Ok(match res {
                    IsoResult::Yes(_) => (Verdict::True, "explicit isomorphism found".into(), vec![]),
                    IsoResult::No(cert) => (Verdict::False, format!("{cert:?}"), vec![]),
                    IsoResult::Unknown => {
                        (Verdict::Unknown, "trial budget exhausted".into(), vec![])
                    }
                })
            }
            "is_semidualizing" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let b = self.default_bound(m.ring(), c.bound);
                let cert = is_semidualizing(&m, b);
                let verdict = if cert.certified {
                    Verdict::VerifiedUpToBound(b)
                } else {
                    Verdict::False
                };
                Ok((
                    verdict,
                    format!(
                        "homothety iso: {}, ext generator counts: {:?}",
                        cert.homothety_iso, cert.ext_dims
                    ),
                    vec![],
                ))
            }
            "serre_s" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let n = int_arg(1)?;
                Ok(match satisfies_sn(&m, n) {
                    SnVerdict::True => (Verdict::True, String::new(), vec![]),
                    SnVerdict::False { witness_j } => (
                        Verdict::False,
                        format!("codimension bound fails at j = {witness_j}"),
                        vec![],
                    ),
                    SnVerdict::Unknown => (
                        Verdict::Unknown,
                        "ring not verified Cohen-Macaulay".into(),
                        vec![],
                    ),
                })
            }
            "serre_s_tilde" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let n = int_arg(1)?;
                Ok(match satisfies_sn_tilde(&m, n) {
                    SnTildeVerdict::True => (Verdict::True, String::new(), vec![]),
                    SnTildeVerdict::False { witness_j } => (
                        Verdict::False,
                        format!("codimension bound fails at j = {witness_j}"),
                        vec![],
                    ),
                    SnTildeVerdict::Unsupported => (
                        Verdict::Unsupported,
                        "only supported over verified Cohen-Macaulay rings".into(),
                        vec![],
                    ),
                })
            }
            "g_condition" => {
                let rname = name_arg(0)?.to_string();
                let cmod = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let n = int_arg(2)?;
                let omega = self.omega(&rname)?;
                Ok(match check_g_condition(&cmod, &omega, n) {
                    GVerdict::True => (Verdict::True, String::new(), vec![]),
                    GVerdict::False { locus_r_codim } => (
                        Verdict::False,
                        format!("non-canonical locus has codimension {locus_r_codim}"),
                        vec![],
                    ),
                    GVerdict::Unknown => (
                        Verdict::Unknown,
                        "ring not verified Cohen-Macaulay".into(),
                        vec![],
                    ),
                })
            }
            "locally_gorenstein" => {
                let rname = name_arg(0)?.to_string();
                let ring = self.ring(&rname).map_err(|e| e.0)?;
                let (iring, gens) = self.ideal(name_arg(1)?).map_err(|e| e.0)?;
                if iring.poly_ring() != ring.poly_ring() {
                    return Err("prime lives over a different polynomial ring".into());
                }
                let omega = self.omega(&rname)?;
                let v = is_locally_gorenstein_at(&ring, &omega, &gens)
                    .map_err(|e| e.to_string())?;
                Ok((Verdict::from_bool(v), String::new(), vec![]))
            }
            "torsionfree" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let cmod = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let n = int_arg(2)?;
                if n < 1 {
                    return Err("level must be at least 1".into());
                }
                let v = is_n_c_torsionfree(&m, &cmod, n as usize);
                Ok((
                    Verdict::from_bool(v.holds),
                    format!("ext generator counts {:?}", v.ext_dims),
                    vec![],
                ))
            }
            "pushforward" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let cmod = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let n = int_arg(2)?;
                if n < 1 {
                    return Err("level must be at least 1".into());
                }
                Ok(match universal_pushforward(&m, &cmod, n as usize) {
                    Ok(seq) => (
                        Verdict::from_bool(seq.certified()),
                        format!(
                            "chain of {} stage(s), certificates {}",
                            seq.stages.len(),
                            seq.certified()
                        ),
                        vec![],
                    ),
                    Err(fail) => (
                        Verdict::False,
                        format!("obstruction at stage {}", fail.stage),
                        vec![],
                    ),
                })
            }
            "n_syzygy" => {
                let mname = name_arg(0)?.to_string();
                let m = self.module(&mname).map_err(|e| e.0)?;
                let cmod = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let n = int_arg(2)?;
                if n < 1 {
                    return Err("level must be at least 1".into());
                }
                let ring_name = self.owning_ring_name(&mname);
                let omega = ring_name.and_then(|rn| self.omega(&rn).ok());
                let (v, hyps) =
                    is_n_c_syzygy(&m, &cmod, n as usize, omega.as_ref(), self.config.seed);
                let hyp_text = hyps
                    .iter()
                    .map(|(h, _)| h.as_str())
                    .collect::<Vec<_>>()
                    .join("; ");
                Ok(match v {
                    SyzygyVerdict::Yes => (Verdict::True, "pushforward witness".into(), vec![]),
                    SyzygyVerdict::No(why) => {
                        (Verdict::False, format!("{why} [{hyp_text}]"), vec![])
                    }
                    SyzygyVerdict::Unknown => (
                        Verdict::Unknown,
                        "no decision route applies".into(),
                        vec![],
                    ),
                })
            }
            "totally_reflexive" => {
                let m = self.module(name_arg(0)?).map_err(|e| e.0)?;
                let cmod = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let b = self.default_bound(m.ring(), c.bound);
                let v = is_totally_c_reflexive(&m, &cmod, b);
                Ok(match v {
                    sdw_core::semidual::ReflexiveVerdict::CertifiedUpTo(b) => {
                        (Verdict::VerifiedUpToBound(b), String::new(), vec![])
                    }
                    sdw_core::semidual::ReflexiveVerdict::False(why) => {
                        (Verdict::False, why, vec![])
                    }
                })
            }
            "ext_zero" => {
                let i = int_arg(0)?;
                let m = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let n = self.module(name_arg(2)?).map_err(|e| e.0)?;
                if i < 0 {
                    return Err("index must be nonnegative".into());
                }
                let calc = ExtCalculator::new(&m, &n, i as usize);
                Ok((
                    Verdict::from_bool(calc.ext_is_zero(i as usize)),
                    String::new(),
                    vec![],
                ))
            }
            "tf_battery" => {
                let rname = name_arg(0)?.to_string();
                let ring = self.ring(&rname).map_err(|e| e.0)?;
                let cmod = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let mods = module_list(self, list_arg(2)?)?;
                let n_max = int_arg(3)?;
                let omega = self.omega(&rname)?;
                let rep = theorem_tf_battery(
                    &ring,
                    &cmod,
                    &omega,
                    &mods,
                    n_max as usize,
                    self.config.seed,
                );
                let ok = rep.all_positive();
                Ok((
                    Verdict::from_bool(ok),
                    format!("{} record(s)", rep.records.len()),
                    rep.records,
                ))
            }
            "lg_check" => {
                let rname = name_arg(0)?.to_string();
                let ring = self.ring(&rname).map_err(|e| e.0)?;
                let cmod = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let n = int_arg(2)?;
                let omega = self.omega(&rname)?;
                let rep = theorem_lg_check(&ring, &cmod, &omega, n as usize, self.config.seed);
                let ok = rep.all_positive();
                Ok((
                    Verdict::from_bool(ok),
                    format!("{} record(s)", rep.records.len()),
                    rep.records,
                ))
            }
            "cross_check" => {
                let c1 = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let c2 = self.module(name_arg(2)?).map_err(|e| e.0)?;
                let mods = module_list(self, list_arg(3)?)?;
                let n = int_arg(4)?;
                let rep =
                    cross_semidualizing_check(&c1, &c2, &mods, n as usize, self.config.seed);
                let ok = rep.all_positive();
                Ok((
                    Verdict::from_bool(ok),
                    format!("{} record(s)", rep.records.len()),
                    rep.records,
                ))
            }
            "ext_probe" => {
                let rname = name_arg(0)?.to_string();
                let ring = self.ring(&rname).map_err(|e| e.0)?;
                let cmod = self.module(name_arg(1)?).map_err(|e| e.0)?;
                let mods = module_list(self, list_arg(2)?)?;
                let mut flags = HypothesisFlags::default();
                if let Ok(flag_args) = list_arg(3) {
                    for a in flag_args {
                        match a {
                            Arg::Name(n) if n == "es" => {
                                flags.es_condition = Some((1, Provenance::AssertedByUser));
                            }
                            Arg::Name(n) if n == "generically_gorenstein" => {
                                flags.generically_gorenstein =
                                    Some(Provenance::AssertedByUser);
                            }
                            other => return Err(format!("unknown hypothesis flag {other:?}")),
                        }
                    }
                }
                let omega = self.omega(&rname)?;
                let b = self.default_bound(&ring, c.bound);
                let rep =
                    ext_vanishing_probe(&ring, &cmod, &omega, &mods, b, &flags, self.config.seed)
                        .map_err(|e| e.to_string())?;
                let ok = rep.all_positive();
                Ok((
                    Verdict::from_bool(ok),
                    format!("{} record(s)", rep.records.len()),
                    rep.records,
                ))
            }
            other => Err(format!("unknown check '{other}'")),
        }
    }

    /// Ring name a module value belongs to, recovered from the symbol
    /// table (needed to locate the cached canonical module).
    fn owning_ring_name(&self, module_name: &str) -> Option<String> {
        let m = match self.symbols.get(module_name) {
            Some(Value::Module(m)) => m.clone(),
            Some(Value::Ring(_)) => return Some(module_name.to_string()),
            _ => return None,
        };
        for (name, v) in &self.symbols {
            if let Value::Ring(r) = v {
                if r == m.ring() {
                    return Some(name.clone());
                }
            }
        }
        None
    }
}

/// Executes a parsed session. Declaration errors abort with a
/// [`SessionError`] (exit code 2); per-check errors are recorded as
/// `unknown` verdicts and the run continues.
pub fn run_session(session: &Session, config: &Config) -> Result<RunOutcome, SessionError> {
    let mut eval = Evaluator {
        config: config.clone(),
        symbols: BTreeMap::new(),
        omega_cache: BTreeMap::new(),
        ring_names: BTreeMap::new(),
    };
    let mut report = CheckReport::new(VERSION, config.seed);
    let mut sinks = Vec::new();
    let mut exit_code = 0;
    for stmt in &session.statements {
        match stmt {
            Stmt::Check(c) => {
                let started = Instant::now();
                let inputs = c
                    .args
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let outcome = match config.timeout_s {
                    None => eval.run_check(c),
                    Some(secs) => {
                        // snapshot state into a worker; abandoned workers
                        // keep running but their results are discarded
                        let mut worker = Evaluator {
                            config: eval.config.clone(),
                            symbols: eval.symbols.clone(),
                            omega_cache: eval.omega_cache.clone(),
                            ring_names: eval.ring_names.clone(),
                        };
                        let check = c.clone();
                        let (tx, rx) = std::sync::mpsc::channel();
                        std::thread::spawn(move || {
                            let r = worker.run_check(&check);
                            let _ = tx.send((r, worker.omega_cache));
                        });
                        match rx.recv_timeout(std::time::Duration::from_secs(secs)) {
                            Ok((r, cache)) => {
                                eval.omega_cache = cache;
                                r
                            }
                            Err(_) => Err(format!("timed out after {secs} s")),
                        }
                    }
                };
                let (verdict, witness, extra) = match outcome {
                    Ok(v) => v,
                    Err(msg) => (Verdict::Unknown, format!("error: {msg}"), vec![]),
                };
                let mut rec = CheckRecord::new(&c.name, &inputs, verdict.clone(), &witness);
                rec.timing_ms = started.elapsed().as_millis() as u64;
                if let Some(expect) = &c.expect {
                    let matched = expectation_matches(expect, &verdict);
                    if !matched {
                        exit_code = 1;
                        rec.witness = format!(
                            "{} [expected {expect}, got {verdict}]",
                            rec.witness
                        );
                    }
                }
                report.push(rec);
                for mut sub in extra {
                    sub.name = format!("{}.{}", c.name, sub.name);
                    report.push(sub);
                }
            }
            Stmt::Report { format, path } => sinks.push((*format, path.clone())),
            decl => eval.declare(decl)?,
        }
    }
    Ok(RunOutcome {
        report,
        exit_code,
        sinks,
    })
}

pub fn expectation_matches(e: &Expectation, v: &Verdict) -> bool {
    matches!(
        (e, v),
        (Expectation::True, Verdict::True)
            | (Expectation::False, Verdict::False)
            | (Expectation::VerifiedUpToBound, Verdict::VerifiedUpToBound(_))
            | (Expectation::Unknown, Verdict::Unknown)
            | (Expectation::Unsupported, Verdict::Unsupported)
    )
}

/// Renders a report in the human-oriented text format (not stable).
pub fn render_text(report: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "version {}  seed {}", report.version, report.seed);
    for r in &report.records {
        let _ = write!(s, "{}({}): {}", r.name, r.inputs, r.verdict);
        if !r.witness.is_empty() {
            let _ = write!(s, "  -- {}", r.witness);
        }
        let _ = writeln!(s, "  [{} ms]", r.timing_ms);
    }
    let pass = report
        .records
        .iter()
        .filter(|r| r.verdict.is_positive())
        .count();
    let _ = writeln!(s, "{pass}/{} positive", report.records.len());
    s
}

/// Renders the stable structured format.
pub fn render_json(report: &CheckReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization")
}
