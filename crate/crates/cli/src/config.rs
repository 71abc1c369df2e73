//! Suite configuration: parsing, validation and construction of modules.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use num::Zero;
use serde::{Deserialize, Serialize};
use vircalc::poly::parse_scalar;
use vircalc::scalar::parse_rational;
use vircalc::whittaker::TrivialModule;
use vircalc::{
    Alphabet, BModuleSpec, Factor, HPoly, IndCaps, ModuleError, OmegaLZSpec, OmegaSpec, PolyTS, Rational, Scalar,
    WhittakerModule, WhittakerSpec, WindowPlan,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {path}: {msg}")]
    Syntax { line: usize, column: usize, path: String, msg: String },
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
}

fn invalid(path: impl Into<String>, msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { path: path.into(), msg: msg.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMode {
    #[default]
    Concrete,
    Generic,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub schema: u32,
    #[serde(default)]
    pub scalar_mode: ScalarMode,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDef>,
    #[serde(default)]
    pub checks: Vec<CheckDef>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default)]
    pub symbols: Vec<SymbolDef>,
    /// Values used in concrete mode, as `"p/q"` strings.
    #[serde(default)]
    pub bindings: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolDef {
    pub name: String,
    #[serde(default)]
    pub invertible: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDef {
    Omega { lambda: String, alpha: String, h: String },
    OmegaLz { mu: String, b: String },
    Verma { h: String, theta: String, grade_cap: i64 },
    Whittaker { n: u32, a: Vec<String>, theta: String, grade_cap: i64 },
    Trivial,
    BModule { lambda: String, n: u32, alpha: String, h: String, a: Vec<String> },
    /// `left ⊗ right` with `left` an `omega` module and `right` a factor.
    Tensor { left: String, right: String },
    /// `first ⊗ second ⊗ w` with two `omega_lz` modules and a factor.
    LzPair { first: String, second: String, w: String },
}

#[derive(Debug, Clone, Deserialize)]
pub struct CheckDef {
    pub name: String,
    #[serde(flatten)]
    pub spec: CheckSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    BracketCheck,
    OmegaSignature,
    IsoCheck,
    IrreducibilityProbe,
    InducedCheck,
    Identities,
    Extract,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::BracketCheck => "bracket-check",
            CheckKind::OmegaSignature => "omega-signature",
            CheckKind::IsoCheck => "iso-check",
            CheckKind::IrreducibilityProbe => "irreducibility-probe",
            CheckKind::InducedCheck => "induced-check",
            CheckKind::Identities => "identities",
            CheckKind::Extract => "extract",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckSpec {
    BracketCheck(BracketParams),
    OmegaSignature(SignatureParams),
    IsoCheck(IsoParams),
    IrreducibilityProbe(ProbeParams),
    InducedCheck(InducedParams),
    Identities(IdentityParams),
    Extract(ExtractParams),
}

impl CheckSpec {
    pub fn kind(&self) -> CheckKind {
        match self {
            CheckSpec::BracketCheck(_) => CheckKind::BracketCheck,
            CheckSpec::OmegaSignature(_) => CheckKind::OmegaSignature,
            CheckSpec::IsoCheck(_) => CheckKind::IsoCheck,
            CheckSpec::IrreducibilityProbe(_) => CheckKind::IrreducibilityProbe,
            CheckSpec::InducedCheck(_) => CheckKind::InducedCheck,
            CheckSpec::Identities(_) => CheckKind::Identities,
            CheckSpec::Extract(_) => CheckKind::Extract,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketParams {
    pub module: String,
    /// `i, j` range.
    pub window: (i64, i64),
    /// Per module kind: `[a_max, b_max]` for `omega`, `[b_max]` for
    /// `omega_lz`, `[grade]` for Verma/Whittaker, `[a_max, b_max, grade]`
    /// for `tensor`, `[deg]` for `b_module`, `[b1, b2, grade]` for `lz_pair`.
    pub caps: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureParams {
    pub module: String,
    pub r_max: u32,
    pub plan: WindowPlan,
    #[serde(default)]
    pub expect_vanishing: Option<Vec<u32>>,
    #[serde(default)]
    pub expect_nonvanishing: Option<Vec<u32>>,
    /// Closed form of `ω^{(4)}` and vanishing of `ω^{(5)}, ω^{(6)}` on a grid.
    #[serde(default)]
    pub closed_form: Option<ClosedFormParams>,
    /// Non-vanishing of `ω^{(r)}_{l,−(r+2)}` on `Ω ⊗ V`.
    #[serde(default)]
    pub lowering: Option<OrdersParams>,
    /// The `s_1 ⊗ s_2` coefficient for `lz_pair`.
    #[serde(default)]
    pub pair_coefficients: Option<OrdersParams>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedFormParams {
    pub a_max: u32,
    pub b_max: u32,
    pub range: (i64, i64),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrdersParams {
    pub orders: Vec<u32>,
    pub span: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoExpectation {
    #[default]
    Isomorphic,
    CriterionFailure,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoParams {
    pub source: String,
    pub target: String,
    pub i_max: u32,
    pub n_max: u32,
    pub m_window: (i64, i64),
    #[serde(default)]
    pub force: bool,
    #[serde(default)]
    pub expect: IsoExpectation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeExpectation {
    Fill,
    /// Every witness subspace is confirmed stable and proper; the seed
    /// itself may lie outside it and fill the window.
    Reducible,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeParams {
    pub module: String,
    /// Left factor of the seed, a polynomial in `t, s` (`t` only for `b_module`).
    pub seed: String,
    /// Right factor of the seed as a word in the `d_j`; empty means `𝟙`.
    #[serde(default)]
    pub word: Vec<i64>,
    #[serde(default = "default_t_max")]
    pub t_max: u32,
    #[serde(default = "default_s_max")]
    pub s_max: u32,
    #[serde(default)]
    pub grade_max: u32,
    #[serde(default = "default_m_window")]
    pub m_window: (i64, i64),
    #[serde(default)]
    pub k_window: Option<(i64, i64)>,
    #[serde(default)]
    pub expect: Option<ProbeExpectation>,
}

fn default_t_max() -> u32 {
    4
}

fn default_s_max() -> u32 {
    3
}

fn default_m_window() -> (i64, i64) {
    (-2, 2)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InducedParams {
    pub module: String,
    pub theta: String,
    pub grade_cap: i64,
    pub caps: IndCapsDef,
    pub j_window: (i64, i64),
    /// Verma level dimensions are compared with `p(k)` for `k ≤ verma_levels`.
    #[serde(default = "default_verma_levels")]
    pub verma_levels: u32,
}

fn default_verma_levels() -> u32 {
    8
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndCapsDef {
    pub level: u32,
    pub len: u32,
    pub t_deg: u32,
}

impl From<IndCapsDef> for IndCaps {
    fn from(c: IndCapsDef) -> Self {
        IndCaps { level: c.level, len: c.len, t_deg: c.t_deg }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentityParams {
    /// `Σ (−1)^{r−i} C(r,i) i^j = 0` for `j < r ≤ r_max`, `= r!` at `j = r ≤ factorial_r_max`.
    #[serde(default)]
    pub binomial: Option<BinomialParams>,
    #[serde(default)]
    pub gn: Option<GnParams>,
    /// Closed forms of `F` and `G` on powers of `h` for an `omega` module.
    #[serde(default)]
    pub closed_forms: Option<ClosedFormsParams>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinomialParams {
    pub r_max: u32,
    pub factorial_r_max: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GnParams {
    pub delta_eta: String,
    pub n_max: u32,
    #[serde(default)]
    pub inverse_n_max: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedFormsParams {
    pub module: String,
    pub n_max: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractParams {
    pub module: String,
    pub seeds: Vec<SeedDef>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedDef {
    /// Sum of `poly ⊗ word` terms.
    pub terms: Vec<SeedTerm>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedTerm {
    pub poly: String,
    #[serde(default)]
    pub word: Vec<i64>,
}

/// Parses a configuration, reporting the line, column and field path of
/// any schema violation.
pub fn parse_config(text: &str) -> Result<SuiteConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: SuiteConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::Syntax { line: inner.line(), column: inner.column(), path, msg: inner.to_string() }
    })?;
    if config.schema != SCHEMA_VERSION {
        return Err(invalid("schema", format!("unsupported schema {}, expected {SCHEMA_VERSION}", config.schema)));
    }
    Ok(config)
}

pub fn load_config(path: &std::path::Path) -> Result<(SuiteConfig, String), ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    Ok((parse_config(&text)?, text))
}

/// Scalar resolution for one mode.
#[derive(Debug, Clone)]
pub struct Scalars {
    pub mode: ScalarMode,
    alphabet: Option<Arc<Alphabet>>,
    bindings: BTreeMap<String, Rational>,
}

impl Scalars {
    pub fn new(params: &Parameters, mode: ScalarMode) -> Result<Self, ConfigError> {
        let mut bindings = BTreeMap::new();
        for (name, value) in &params.bindings {
            let r = parse_rational(value).map_err(|e| invalid(format!("parameters.bindings.{name}"), e.to_string()))?;
            if r.is_zero()
                && params.symbols.iter().any(|s| s.name == *name && s.invertible)
            {
                return Err(invalid(
                    format!("parameters.bindings.{name}"),
                    format!("`{name}` is declared invertible and cannot be bound to 0"),
                ));
            }
            bindings.insert(name.clone(), r);
        }
        let alphabet = match mode {
            ScalarMode::Concrete => None,
            ScalarMode::Generic => Some(
                Alphabet::new(params.symbols.iter().map(|s| (s.name.clone(), s.invertible)))
                    .map_err(|e| invalid("parameters.symbols", e.to_string()))?,
            ),
        };
        Ok(Scalars { mode, alphabet, bindings })
    }

    fn resolve(&self, name: &str) -> Option<Scalar> {
        match &self.alphabet {
            Some(a) => a.var(name).ok(),
            None => self.bindings.get(name).cloned().map(Scalar::Concrete),
        }
    }

    fn unknown_hint(&self) -> &'static str {
        match self.mode {
            ScalarMode::Concrete => " (concrete mode needs a binding for every symbol)",
            ScalarMode::Generic => " (generic mode needs every symbol declared)",
        }
    }

    pub fn scalar(&self, path: &str, text: &str) -> Result<Scalar, ConfigError> {
        parse_scalar(text, &|n| self.resolve(n))
            .map_err(|e| invalid(path, format!("{e}{}", self.unknown_hint())))
    }

    pub fn poly(&self, path: &str, text: &str) -> Result<PolyTS, ConfigError> {
        PolyTS::parse(text, &|n| self.resolve(n)).map_err(|e| invalid(path, format!("{e}{}", self.unknown_hint())))
    }

    fn h_poly(&self, path: &str, text: &str) -> Result<HPoly, ConfigError> {
        HPoly::from_poly(&self.poly(path, text)?).map_err(|e| invalid(path, e.to_string()))
    }
}

/// A validated module.
#[derive(Debug, Clone)]
pub enum Built {
    Omega(OmegaSpec),
    OmegaLZ(OmegaLZSpec),
    Factor(Factor),
    BModule(BModuleSpec),
    Tensor(OmegaSpec, Factor),
    LZPair(OmegaLZSpec, OmegaLZSpec, Factor),
}

impl Built {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Built::Omega(_) => "omega",
            Built::OmegaLZ(_) => "omega_lz",
            Built::Factor(_) => "factor",
            Built::BModule(_) => "b_module",
            Built::Tensor(..) => "tensor",
            Built::LZPair(..) => "lz_pair",
        }
    }
}

fn spec_error(path: &str, e: ModuleError) -> ConfigError {
    let msg = match &e {
        ModuleError::InvalidSpec(m) if m.contains("nonzero") || m.contains("invertible") => {
            format!("{m} (invertibility constraint)")
        }
        _ => e.to_string(),
    };
    invalid(path, msg)
}

/// Validated modules by name.
#[derive(Debug, Clone)]
pub struct Registry {
    pub scalars: Scalars,
    modules: BTreeMap<String, Built>,
}

impl Registry {
    pub fn build(config: &SuiteConfig, mode: ScalarMode) -> Result<Self, ConfigError> {
        let scalars = Scalars::new(&config.parameters, mode)?;
        let mut reg = Registry { scalars, modules: BTreeMap::new() };
        // plain modules first, then products that refer to them
        let (plain, products): (Vec<_>, Vec<_>) = config
            .modules
            .iter()
            .partition(|(_, d)| !matches!(d, ModuleDef::Tensor { .. } | ModuleDef::LzPair { .. }));
        for (name, def) in plain.into_iter().chain(products) {
            let built = reg.build_one(name, def)?;
            reg.modules.insert(name.clone(), built);
        }
        Ok(reg)
    }

    fn build_one(&self, name: &str, def: &ModuleDef) -> Result<Built, ConfigError> {
        let sc = &self.scalars;
        let at = |field: &str| format!("modules.{name}.{field}");
        Ok(match def {
            ModuleDef::Omega { lambda, alpha, h } => {
                let spec = OmegaSpec::new(sc.scalar(&at("lambda"), lambda)?, sc.scalar(&at("alpha"), alpha)?, sc.h_poly(&at("h"), h)?)
                    .map_err(|e| spec_error(&at("lambda"), e))?;
                Built::Omega(spec)
            }
            ModuleDef::OmegaLz { mu, b } => Built::OmegaLZ(
                OmegaLZSpec::new(sc.scalar(&at("mu"), mu)?, sc.scalar(&at("b"), b)?, 1).map_err(|e| spec_error(&at("mu"), e))?,
            ),
            ModuleDef::Verma { h, theta, grade_cap } => {
                let spec = WhittakerSpec::verma(sc.scalar(&at("h"), h)?, sc.scalar(&at("theta"), theta)?);
                Built::Factor(Factor::Whittaker(WhittakerModule::new(spec, *grade_cap)))
            }
            ModuleDef::Whittaker { n, a, theta, grade_cap } => {
                let a = a
                    .iter()
                    .enumerate()
                    .map(|(i, x)| sc.scalar(&at(&format!("a[{i}]")), x))
                    .collect::<Result<Vec<_>, _>>()?;
                let spec = WhittakerSpec::new(*n, a, sc.scalar(&at("theta"), theta)?).map_err(|e| spec_error(&at("a"), e))?;
                Built::Factor(Factor::Whittaker(WhittakerModule::new(spec, *grade_cap)))
            }
            ModuleDef::Trivial => Built::Factor(Factor::Trivial(TrivialModule)),
            ModuleDef::BModule { lambda, n, alpha, h, a } => {
                let a = a
                    .iter()
                    .enumerate()
                    .map(|(i, x)| sc.scalar(&at(&format!("a[{i}]")), x))
                    .collect::<Result<Vec<_>, _>>()?;
                let spec = BModuleSpec::new(sc.scalar(&at("lambda"), lambda)?, *n, sc.scalar(&at("alpha"), alpha)?, sc.h_poly(&at("h"), h)?, a)
                    .map_err(|e| spec_error(&at("lambda"), e))?;
                Built::BModule(spec)
            }
            ModuleDef::Tensor { left, right } => {
                Built::Tensor(self.omega(&at("left"), left)?, self.factor(&at("right"), right)?)
            }
            ModuleDef::LzPair { first, second, w } => {
                let mut s2 = self.lz(&at("second"), second)?;
                s2.var_id = 2;
                Built::LZPair(self.lz(&at("first"), first)?, s2, self.factor(&at("w"), w)?)
            }
        })
    }

    pub fn get(&self, path: &str, name: &str) -> Result<&Built, ConfigError> {
        self.modules.get(name).ok_or_else(|| invalid(path, format!("unknown module `{name}`")))
    }

    fn wrong(path: &str, name: &str, want: &str, got: &Built) -> ConfigError {
        invalid(path, format!("module `{name}` is {}, expected {want}", got.kind_name()))
    }

    pub fn omega(&self, path: &str, name: &str) -> Result<OmegaSpec, ConfigError> {
        match self.get(path, name)? {
            Built::Omega(s) => Ok(s.clone()),
            other => Err(Self::wrong(path, name, "omega", other)),
        }
    }

    pub fn lz(&self, path: &str, name: &str) -> Result<OmegaLZSpec, ConfigError> {
        match self.get(path, name)? {
            Built::OmegaLZ(s) => Ok(s.clone()),
            other => Err(Self::wrong(path, name, "omega_lz", other)),
        }
    }

    pub fn factor(&self, path: &str, name: &str) -> Result<Factor, ConfigError> {
        match self.get(path, name)? {
            Built::Factor(f) => Ok(f.clone()),
            other => Err(Self::wrong(path, name, "verma, whittaker or trivial", other)),
        }
    }

    pub fn b_module(&self, path: &str, name: &str) -> Result<BModuleSpec, ConfigError> {
        match self.get(path, name)? {
            Built::BModule(s) => Ok(s.clone()),
            other => Err(Self::wrong(path, name, "b_module", other)),
        }
    }
}

fn check_window(path: &str, w: (i64, i64)) -> Result<(), ConfigError> {
    if w.0 > w.1 {
        return Err(invalid(path, format!("empty window [{}, {}]", w.0, w.1)));
    }
    Ok(())
}

/// Structural checks that do not need any computation: module references,
/// window orientation, cap shapes and unique names.
pub fn validate_checks(config: &SuiteConfig, reg: &Registry) -> Result<(), ConfigError> {
    let mut names = std::collections::BTreeSet::new();
    for (i, check) in config.checks.iter().enumerate() {
        let at = |field: &str| format!("checks[{i}].{field}");
        if !names.insert(check.name.as_str()) {
            return Err(invalid(at("name"), format!("duplicate check name `{}`", check.name)));
        }
        match &check.spec {
            CheckSpec::BracketCheck(p) => {
                check_window(&at("window"), p.window)?;
                let want = match reg.get(&at("module"), &p.module)? {
                    Built::Omega(_) => 2,
                    Built::OmegaLZ(_) | Built::Factor(_) | Built::BModule(_) => 1,
                    Built::Tensor(..) | Built::LZPair(..) => 3,
                };
                if p.caps.len() != want {
                    return Err(invalid(at("caps"), format!("expected {want} caps for module `{}`", p.module)));
                }
            }
            CheckSpec::OmegaSignature(p) => {
                let m = reg.get(&at("module"), &p.module)?;
                if matches!(m, Built::Factor(_) | Built::BModule(_)) {
                    return Err(invalid(at("module"), "signatures need omega, omega_lz, tensor or lz_pair"));
                }
                if p.closed_form.is_some() && !matches!(m, Built::Omega(_)) {
                    return Err(invalid(at("closed_form"), "only for omega modules"));
                }
                if p.lowering.is_some() && !matches!(m, Built::Tensor(..)) {
                    return Err(invalid(at("lowering"), "only for tensor modules"));
                }
                if p.pair_coefficients.is_some() && !matches!(m, Built::LZPair(..)) {
                    return Err(invalid(at("pair_coefficients"), "only for lz_pair modules"));
                }
                if p.r_max == 0 {
                    return Err(invalid(at("r_max"), "must be positive"));
                }
            }
            CheckSpec::IsoCheck(p) => {
                reg.omega(&at("source"), &p.source)?;
                reg.omega(&at("target"), &p.target)?;
                check_window(&at("m_window"), p.m_window)?;
            }
            CheckSpec::IrreducibilityProbe(p) => {
                check_window(&at("m_window"), p.m_window)?;
                match reg.get(&at("module"), &p.module)? {
                    Built::Omega(_) | Built::Tensor(..) => {}
                    Built::BModule(s) => {
                        let k = p.k_window.ok_or_else(|| invalid(at("k_window"), "required for b_module probes"))?;
                        check_window(&at("k_window"), k)?;
                        if k.0 <= i64::from(s.n) {
                            return Err(invalid(at("k_window"), format!("generators start at n + 1 = {}", s.n + 1)));
                        }
                    }
                    other => return Err(Registry::wrong(&at("module"), &p.module, "omega, tensor or b_module", other)),
                }
                reg.scalars.poly(&at("seed"), &p.seed)?;
            }
            CheckSpec::InducedCheck(p) => {
                reg.b_module(&at("module"), &p.module)?;
                reg.scalars.scalar(&at("theta"), &p.theta)?;
                check_window(&at("j_window"), p.j_window)?;
            }
            CheckSpec::Identities(p) => {
                if let Some(g) = &p.gn {
                    reg.scalars.scalar(&at("gn.delta_eta"), &g.delta_eta)?;
                }
                if let Some(c) = &p.closed_forms {
                    reg.omega(&at("closed_forms.module"), &c.module)?;
                }
            }
            CheckSpec::Extract(p) => {
                match reg.get(&at("module"), &p.module)? {
                    Built::Tensor(..) => {}
                    other => return Err(Registry::wrong(&at("module"), &p.module, "tensor", other)),
                }
                for (k, seed) in p.seeds.iter().enumerate() {
                    for (q, term) in seed.terms.iter().enumerate() {
                        reg.scalars.poly(&at(&format!("seeds[{k}].terms[{q}].poly")), &term.poly)?;
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(body: &str) -> Result<SuiteConfig, ConfigError> {
        parse_config(body)
    }

    #[test]
    fn minimal_config() {
        let c = cfg(r#"{"schema": 1}"#).unwrap();
        assert!(c.checks.is_empty());
        assert_eq!(c.scalar_mode, ScalarMode::Concrete);
    }

    #[test]
    fn wrong_schema() {
        assert!(matches!(cfg(r#"{"schema": 2}"#), Err(ConfigError::Invalid { .. })));
    }

    #[test]
    fn syntax_error_has_path() {
        let err = cfg("{\"schema\": 1,\n \"checks\": [{\"name\": \"x\", \"kind\": \"bracket-check\", \"module\": \"m\", \"window\": 3, \"caps\": []}]}")
            .unwrap_err();
        match err {
            ConfigError::Syntax { line, path, .. } => {
                assert_eq!(line, 2);
                assert!(path.starts_with("checks[0]"), "{path}");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn zero_lambda_is_rejected() {
        let c = cfg(r#"{"schema": 1, "modules": {"om": {"kind": "omega", "lambda": "0", "alpha": "1", "h": "3*t+1"}}}"#).unwrap();
        let err = Registry::build(&c, ScalarMode::Concrete).unwrap_err().to_string();
        assert!(err.contains("modules.om.lambda") && err.contains("invertib"), "{err}");
    }

    #[test]
    fn generic_modules() {
        let c = cfg(
            r#"{"schema": 1, "scalar_mode": "generic",
                "parameters": {"symbols": [{"name": "lambda", "invertible": true}, {"name": "alpha"}]},
                "modules": {"om": {"kind": "omega", "lambda": "lambda", "alpha": "alpha", "h": "2*t"}}}"#,
        )
        .unwrap();
        let reg = Registry::build(&c, c.scalar_mode).unwrap();
        assert!(matches!(reg.get("m", "om").unwrap(), Built::Omega(_)));
        let err = Registry::build(&c, ScalarMode::Concrete).unwrap_err().to_string();
        assert!(err.contains("binding"), "{err}");
    }
}
