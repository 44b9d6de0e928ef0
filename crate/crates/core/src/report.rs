//! Machine-readable reports behind the command-line tool.
//!
//! Every report is a JSON object with `"schema": 1` and a `"command"` field.
//! Big integers are written as decimal strings. Key order is fixed, so the
//! output is byte-stable for a given configuration (timings aside).

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::character::{homology_character, homology_character_fixing_root, lie_character, Character};
use crate::complex::{build_complex, build_tree_complex, ComplexDump, SpaceKind};
use crate::cycle::{
    boundary_of_module_chain, build_fundamental_cycle, caterpillar_pairings, cycle_terms_with, export_terms,
    shape_census, verify_invariance, SplitOrder,
};
use crate::error::{Error, Result};
use crate::homology::{check_boundary_squared, complex_homology, DegreeHomology, HomologyResult};
use crate::lie::{assoc_expand, normalize, normalize_sum, parse_bracket_sum, theta, BracketExpr, Flavor};
use crate::perm::{factorial, LabelPermutation};
use crate::tree::binary_tree_count;
use crate::whitehouse::{
    build_complement_subcomplex, exactness_check, hat_lie_character, relative_homology, sub_homology,
    whitehouse_character_check,
};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Depth {
    #[default]
    Quick,
    Full,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::Quick => "quick",
            Depth::Full => "full",
        })
    }
}

impl std::str::FromStr for Depth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Depth::Quick),
            "full" => Ok(Depth::Full),
            _ => Err(Error::Parse(format!("unknown depth {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Module {
    Lie,
    SuperLie,
    HatLie,
}

impl std::str::FromStr for Module {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(Module::Lie),
            "superlie" => Ok(Module::SuperLie),
            "hatlie" => Ok(Module::HatLie),
            _ => Err(Error::Parse(format!("unknown module {s:?}"))),
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Module::Lie => "lie",
            Module::SuperLie => "superlie",
            Module::HatLie => "hatlie",
        })
    }
}

/// Options shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub space: SpaceKind,
    pub depth: Depth,
    pub seed: u64,
    /// Include wall-clock timings in `verify` reports.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { n: 4, space: SpaceKind::TreeSpace, depth: Depth::Quick, seed: 0, timings: true }
    }
}

/// A finished report and whether everything it checked held.
#[derive(Clone, Debug)]
pub struct Report {
    pub value: Value,
    pub ok: bool,
}

impl Report {
    fn ok(value: Value) -> Self {
        Self { value, ok: true }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_text(&self.value, 0, &mut out);
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar(x) || is_scalar_list(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_scalar(x) || is_scalar_list(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn is_scalar_list(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.iter().all(is_scalar))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

fn check_range(command: &str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::OutOfRange(format!("{command} supports {lo} <= n <= {hi}, got {n}")));
    }
    Ok(())
}

pub fn character_json(c: &Character) -> Value {
    let mut m = Map::new();
    for (k, v) in c.table() {
        m.insert(k, json!(v));
    }
    Value::Object(m)
}

fn homology_json(h: &HomologyResult) -> Value {
    let degrees: Vec<&DegreeHomology> = h.degrees.iter().collect();
    json!({
        "reduced": h.reduced,
        "degrees": degrees,
    })
}

// enumerate

pub fn cmd_enumerate(cfg: &RunConfig, list: bool) -> Result<Report> {
    check_range("enumerate", cfg.n, 1, 8)?;
    let mut m = header("enumerate");
    m.insert("space".into(), json!(cfg.space.to_string()));
    m.insert("n".into(), json!(cfg.n));
    let c = build_complex(cfg.space, cfg.n)?;
    if let Some(d) = c.diagnostic() {
        m.insert("empty".into(), json!(true));
        m.insert("notice".into(), json!(d));
        m.insert("f_vector".into(), json!([]));
        return Ok(Report::ok(Value::Object(m)));
    }
    m.insert("empty".into(), json!(false));
    m.insert("dimension".into(), json!(c.dim()));
    m.insert("f_vector".into(), json!(c.f_vector()));
    m.insert("total".into(), json!(c.f_vector().iter().sum::<usize>()));
    m.insert("top_simplices".into(), json!(c.num_simplices(c.dim() as usize)));
    m.insert("euler_characteristic".into(), json!(c.euler_characteristic()));
    if cfg.space == SpaceKind::TreeSpace {
        m.insert("expected_top".into(), json!(binary_tree_count(cfg.n).to_string()));
    }
    if list {
        let levels: Vec<Vec<String>> = (0..=c.dim() as usize)
            .map(|k| (0..c.num_simplices(k)).map(|i| c.label(k, i).to_string()).collect())
            .collect();
        m.insert("simplices".into(), json!(levels));
    }
    Ok(Report::ok(Value::Object(m)))
}

// homology

pub fn cmd_homology(cfg: &RunConfig) -> Result<Report> {
    let hi = if cfg.space == SpaceKind::TreeSpace { 6 } else { 5 };
    check_range("homology", cfg.n, 3, hi)?;
    let c = build_complex(cfg.space, cfg.n)?;
    let reduced = complex_homology(&c, true)?;
    let unreduced = complex_homology(&c, false)?;
    let mut m = header("homology");
    m.insert("space".into(), json!(cfg.space.to_string()));
    m.insert("n".into(), json!(cfg.n));
    m.insert("f_vector".into(), json!(c.f_vector()));
    m.insert("euler_characteristic".into(), json!(c.euler_characteristic()));
    m.insert("reduced".into(), homology_json(&reduced));
    m.insert("unreduced".into(), homology_json(&unreduced));
    m.insert("torsion_free".into(), json!(reduced.is_torsion_free()));
    if reduced.is_torsion_free() {
        let top = cfg.n - 3;
        let (group, chi) = match cfg.space {
            SpaceKind::TreeSpace => (format!("S{}", cfg.n + 1), homology_character(&c, top)?),
            SpaceKind::PartitionNerve => (format!("S{}", cfg.n), homology_character_fixing_root(&c, top)?),
        };
        m.insert("character".into(), json!({"degree": top, "group": group, "values": character_json(&chi)}));
    }
    Ok(Report::ok(Value::Object(m)))
}

// character

pub fn cmd_character(cfg: &RunConfig, module: Module) -> Result<Report> {
    let chi = match module {
        Module::Lie | Module::SuperLie => {
            check_range("character", cfg.n, 1, 7)?;
            lie_character(cfg.n, if module == Module::Lie { Flavor::Ordinary } else { Flavor::Super })?
        }
        Module::HatLie => {
            check_range("character --module hatlie", cfg.n, 3, 6)?;
            hat_lie_character(cfg.n)?
        }
    };
    let mut m = header("character");
    m.insert("module".into(), json!(module.to_string()));
    m.insert("n".into(), json!(cfg.n));
    m.insert("group".into(), json!(format!("S{}", chi.degree())));
    m.insert("dimension".into(), json!(chi.dimension()));
    m.insert("values".into(), character_json(&chi));
    Ok(Report::ok(Value::Object(m)))
}

// whitehouse

pub fn cmd_whitehouse(cfg: &RunConfig) -> Result<Report> {
    check_range("whitehouse", cfg.n, 3, 5)?;
    let n = cfg.n;
    let mut m = header("whitehouse");
    m.insert("n".into(), json!(n));
    let chars = whitehouse_character_check(n)?;
    let mut ok = chars.holds;
    let mut ch = Map::new();
    ch.insert("holds".into(), json!(chars.holds));
    for row in &chars.rows {
        let mut vals = Map::new();
        for (k, v) in &row.values {
            vals.insert(k.clone(), json!(v));
        }
        ch.insert(row.name.clone(), Value::Object(vals));
    }
    ch.insert("mismatches".into(), json!(chars.mismatches));
    if n <= 4 || cfg.depth == Depth::Full {
        let p = build_complement_subcomplex(n)?;
        let mut fv = Map::new();
        fv.insert("ambient".into(), json!(p.ambient.f_vector()));
        fv.insert("subcomplex".into(), json!(p.sub_f_vector()));
        fv.insert("relative".into(), json!(p.relative_f_vector()));
        m.insert("f_vectors".into(), Value::Object(fv));
        let mut hom = Map::new();
        hom.insert("ambient".into(), homology_json(&complex_homology(&p.ambient, true)?));
        hom.insert("subcomplex".into(), homology_json(&sub_homology(&p, true)?));
        hom.insert("relative".into(), homology_json(&relative_homology(&p)?));
        m.insert("homology".into(), Value::Object(hom));
        let ex = exactness_check(&p)?;
        ok &= ex.exact;
        m.insert("exactness".into(), serde_json::to_value(&ex)?);
    } else {
        m.insert("exactness".into(), json!({"skipped": "use --depth full for n = 5"}));
    }
    m.insert("characters".into(), Value::Object(ch));
    m.insert("ok".into(), json!(ok));
    Ok(Report { value: Value::Object(m), ok })
}

// cycle

pub fn cmd_cycle(cfg: &RunConfig, order: SplitOrder) -> Result<Report> {
    check_range("cycle", cfg.n, 3, 7)?;
    let n = cfg.n;
    let terms = cycle_terms_with(n, order)?;
    let c = build_tree_complex(n)?;
    let f = build_fundamental_cycle(n)?;
    let boundary_zero = if n > 3 { boundary_of_module_chain(&f, &c)?.is_zero() } else { true };
    let mut m = header("cycle");
    m.insert("n".into(), json!(n));
    m.insert("terms_count".into(), json!(terms.len()));
    m.insert("boundary_zero".into(), json!(boundary_zero));
    let census: Vec<Value> = shape_census(&terms)
        .into_iter()
        .map(|((sign, shape), count)| json!({"sign": if sign > 0 { "+" } else { "-" }, "shape": shape, "count": count}))
        .collect();
    m.insert("census".into(), json!(census));
    m.insert("terms".into(), serde_json::to_value(export_terms(&terms))?);
    Ok(Report { value: Value::Object(m), ok: boundary_zero })
}

// complex export

pub fn cmd_complex(cfg: &RunConfig) -> Result<Report> {
    check_range("complex", cfg.n, 1, 6)?;
    let c = build_complex(cfg.space, cfg.n)?;
    Ok(Report::ok(serde_json::to_value(c.export())?))
}

// normalize

pub fn cmd_normalize(text: &str, flavor: Flavor, apply_theta: bool) -> Result<Report> {
    let parsed = parse_bracket_sum(text)?;
    let element = normalize_sum(&parsed.terms, flavor)?;
    let element = if apply_theta { theta(&element)? } else { element };
    let names = parsed.names.as_deref();
    let mut m = header("normalize");
    m.insert("flavor".into(), json!(element.flavor().to_string()));
    m.insert("input".into(), json!(text));
    m.insert("theta".into(), json!(apply_theta));
    m.insert("result".into(), json!(element.to_text_named(names)));
    let coeffs: BTreeMap<String, String> = element
        .terms()
        .map(|(w, c)| (w.iter().map(u8::to_string).collect::<Vec<_>>().join(" "), c.to_string()))
        .collect();
    m.insert("coefficients".into(), json!(coeffs));
    Ok(Report::ok(Value::Object(m)))
}

// verify

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

struct Checks {
    timings: bool,
    list: Vec<CheckOutcome>,
}

impl Checks {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let t0 = Instant::now();
        let (passed, detail) = match f() {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        let elapsed_ms = self.timings.then(|| t0.elapsed().as_millis() as u64);
        self.list.push(CheckOutcome { name: name.into(), passed, detail, elapsed_ms });
    }
}

/// Check a dumped complex: shapes and `∂² = 0`.
pub fn verify_dump(text: &str) -> Result<(bool, String)> {
    let dump = ComplexDump::from_json(text)?;
    let mats = dump.boundary_matrices()?;
    match check_boundary_squared(&mats) {
        Ok(()) => Ok((true, format!("f-vector {:?}, boundary squares to zero", dump.f_vector))),
        Err(e) => Ok((false, e.to_string())),
    }
}

pub fn cmd_verify(cfg: &RunConfig, dump: Option<&str>) -> Result<Report> {
    let mut checks = Checks { timings: cfg.timings, list: Vec::new() };
    let mut m = header("verify");
    if let Some(text) = dump {
        checks.run("complex dump: boundary squared is zero", || verify_dump(text));
        m.insert("source".into(), json!("dump"));
    } else {
        check_range("verify", cfg.n, 3, 7)?;
        m.insert("n".into(), json!(cfg.n));
        m.insert("depth".into(), json!(cfg.depth.to_string()));
        m.insert("seed".into(), json!(cfg.seed));
        run_checks(cfg, &mut checks)?;
    }
    let ok = checks.list.iter().all(|c| c.passed);
    m.insert("checks".into(), serde_json::to_value(&checks.list)?);
    m.insert("passed".into(), json!(checks.list.iter().filter(|c| c.passed).count()));
    m.insert("failed".into(), json!(checks.list.iter().filter(|c| !c.passed).count()));
    m.insert("ok".into(), json!(ok));
    Ok(Report { value: Value::Object(m), ok })
}

fn run_checks(cfg: &RunConfig, checks: &mut Checks) -> Result<()> {
    let n = cfg.n;
    let full = cfg.depth == Depth::Full;
    let t = build_tree_complex(n)?;
    checks.run("census", || {
        let top = t.num_simplices(n - 3) as u128;
        Ok((top == binary_tree_count(n), format!("{top} top simplices, (2n-3)!! = {}", binary_tree_count(n))))
    });
    checks.run("boundary squared is zero", || {
        check_boundary_squared(t.boundaries())?;
        Ok((true, format!("f-vector {:?}", t.f_vector())))
    });
    if n >= 4 {
        checks.run("incidence", || {
            let h = t.codim1_incidence_report();
            let text = h.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", ");
            Ok((h.len() == 1 && h.contains_key(&3), format!("histogram {{{text}}}")))
        });
    }
    let homology_cap = if full { 6 } else { 5 };
    if n <= homology_cap {
        checks.run("homology", || {
            let h = complex_homology(&t, true)?;
            let want = factorial(n as u128 - 1) as usize;
            let ok = h.support() == vec![n as isize - 3] && h.betti(n as isize - 3) == want && h.is_torsion_free();
            Ok((ok, format!("reduced rank {} in degree {}, expected {want}", h.betti(n as isize - 3), n - 3)))
        });
    }
    if full && n <= 5 {
        checks.run("partition nerve homology", || {
            let l = build_complex(SpaceKind::PartitionNerve, n)?;
            let h = complex_homology(&l, true)?;
            let want = factorial(n as u128 - 1) as usize;
            let ok = h.support() == vec![n as isize - 3] && h.betti(n as isize - 3) == want && h.is_torsion_free();
            Ok((ok, format!("reduced rank {} in degree {}, Euler characteristic {}", h.betti(n as isize - 3), n - 3, l.euler_characteristic())))
        });
    }
    if n >= 4 {
        let f = build_fundamental_cycle(n)?;
        checks.run(&format!("∂F{} = 0", subscript(n)), || {
            let b = boundary_of_module_chain(&f, &t)?;
            Ok((b.is_zero(), format!("{} terms, {} faces with nonzero coefficient", f.len(), b.len())))
        });
        if n <= 6 {
            checks.run("invariance", || {
                let mut bad = Vec::new();
                for i in 1..n as u8 {
                    let s = LabelPermutation::transposition(n + 1, i, i + 1)?;
                    if !verify_invariance(&f, &t, &s)? {
                        bad.push(format!("({i} {})", i + 1));
                    }
                }
                Ok((bad.is_empty(), if bad.is_empty() { format!("{} generators", n - 1) } else { format!("fails for {}", bad.join(" ")) }))
            });
            checks.run("theta pairing", || {
                let pairs = caterpillar_pairings(&f, &t)?;
                let want = factorial(n as u128 - 1) as usize;
                Ok((pairs.len() == want, format!("{} caterpillars map to ± their basis elements", pairs.len())))
            });
        }
    }
    if n == 5 {
        checks.run("census of F_5 by shape", || {
            let terms = cycle_terms_with(5, SplitOrder::SmallerFirst)?;
            let census = shape_census(&terms);
            let want = [(1, "[*,[*,[*,[*,*]]]]", 60), (-1, "[[*,*],[*,[*,*]]]", 30), (-1, "[*,[[*,*],[*,*]]]", 15)];
            let ok = census.len() == 3 && want.iter().all(|(s, sh, c)| census.get(&(*s, sh.to_string())) == Some(c));
            let text = census.iter().map(|((s, sh), c)| format!("{c} x {}{sh}", if *s > 0 { "+" } else { "-" })).collect::<Vec<_>>().join(", ");
            Ok((ok, text))
        });
    }
    if full {
        checks.run("oracle equivalence", || {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let samples = 200;
            let labels = crate::lie::generators(n.min(6));
            for flavor in [Flavor::Ordinary, Flavor::Super] {
                for _ in 0..samples {
                    let e = BracketExpr::random(labels, &mut rng)?;
                    if normalize(&e, flavor)?.assoc_expand()? != assoc_expand(&e, flavor)? {
                        return Ok((false, format!("{flavor} mismatch at {}", e.to_text_named(None))));
                    }
                }
            }
            Ok((true, format!("{samples} random monomials per flavor, seed {}", cfg.seed)))
        });
        checks.run("restriction is regular", || {
            if n > 5 {
                return Ok((true, "skipped above n = 5".into()));
            }
            let chi = crate::character::homology_character(&t, n - 3)?;
            let res = chi.restrict()?.restrict()?;
            Ok((res == Character::regular(n - 1), format!("{res}")))
        });
        if n <= 5 {
            checks.run("whitehouse characters", || {
                let w = whitehouse_character_check(n)?;
                Ok((w.holds, if w.holds { "induced = lie_next + hat_lie".into() } else { w.mismatches.join("; ") }))
            });
        }
        if n <= 4 {
            checks.run("whitehouse exactness", || {
                let p = build_complement_subcomplex(n)?;
                let r = exactness_check(&p)?;
                Ok((r.exact, format!("ranks {} -> {} -> {}", r.ranks[0], r.ranks[1], r.ranks[2])))
            });
        }
    }
    Ok(())
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|d| char::from_u32(0x2080 + d.to_digit(10).unwrap()).unwrap()).collect()
}
