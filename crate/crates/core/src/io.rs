//! JSON data files.
//!
//! * scalar: `{"order": N, "coeffs": [[num, den], ...]}` in the power basis of
//!   `ζ_N`; integers, `"p/q"` strings and `[num, den]` pairs are accepted on input.
//! * matrix: `{"rows": r, "cols": c, "entries": [[i, j, scalar], ...]}`, or a
//!   dense list of rows on input.
//! * category: `{"name", "field": {"cyclotomic_order": N}, "dim", "mult",
//!   "unit", "comult", "counit", "antipode", "rmatrix", "ribbon"}`.
//! * representation: `{"dim", "actions": [matrix per basis element]}`.
//! * complex: `{"category", "support": [lo, hi], "components": {deg: rep},
//!   "diffs": {deg: matrix}}`.
//! * surface: `{"category", "genus", "markings": [{"complex", "sign"}]}`.
//! * diagram: see [`Loader::diagram`].
//!
//! References are file paths relative to the referring file, or
//! `builtin:<name>`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::cochain::{ChainHomotopy, ChainMap, ChainObject, Equivalence};
use crate::cyclotomic::Cyclo;
use crate::datasets;
use crate::diagram::{ChainDiagram, Coupon, RepDiagram, RibbonDiagram, Strand, Token};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebraData;
use crate::linalg::Matrix;
use crate::rep::{RepCategory, RepObject};
use crate::ribbon::{ChainCategory, RibbonCategory};
use crate::strings::{GradedStringDiagram, Orient};
use crate::tqft::{MarkedSurface, Marking};
use crate::words::WordMap;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| perr(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| perr(format!("not an integer: {s}"))),
        _ => Err(perr(format!("not an integer: {v}"))),
    }
}

fn ratio(num: BigInt, den: BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(perr("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Rationals are written with order 1.
pub fn scalar_to_json(c: &Cyclo) -> Value {
    let (order, coeffs) = match c.as_rational() {
        Some(q) => (1, vec![q]),
        None => (c.order(), c.coeffs().to_vec()),
    };
    let coeffs: Vec<Value> = coeffs.iter().map(|q| json!([int_json(q.numer()), int_json(q.denom())])).collect();
    json!({"order": order, "coeffs": coeffs})
}

pub fn scalar_from_json(v: &Value) -> Result<Cyclo> {
    match v {
        Value::Number(_) => Ok(Cyclo::from_rational(BigRational::from_integer(int_from_json(v)?))),
        Value::String(s) => {
            let q = match s.split_once('/') {
                Some((a, b)) => ratio(int_from_json(&json!(a))?, int_from_json(&json!(b))?)?,
                None => BigRational::from_integer(int_from_json(v)?),
            };
            Ok(Cyclo::from_rational(q))
        }
        Value::Array(p) if p.len() == 2 => Ok(Cyclo::from_rational(ratio(int_from_json(&p[0])?, int_from_json(&p[1])?)?)),
        Value::Object(o) => {
            let order = o.get("order").and_then(Value::as_u64).ok_or_else(|| perr("scalar needs a positive \"order\""))?;
            let order = u32::try_from(order).map_err(|_| perr("order too large"))?;
            let coeffs = o.get("coeffs").and_then(Value::as_array).ok_or_else(|| perr("scalar needs \"coeffs\""))?;
            let poly = coeffs
                .iter()
                .map(|p| match p.as_array().map(Vec::as_slice) {
                    Some([n, d]) => ratio(int_from_json(n)?, int_from_json(d)?),
                    _ => Err(perr(format!("coefficient must be [num, den]: {p}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if poly.is_empty() {
                return Err(perr("empty coefficient list"));
            }
            Cyclo::from_poly(order, poly)
        }
        _ => Err(perr(format!("not a scalar: {v}"))),
    }
}

/// The scalar in a readable exact form, plus a decimal approximation when
/// asked for (display only).
pub fn scalar_display(c: &Cyclo, approx: bool) -> Value {
    let mut v = json!({"exact": c.to_string(), "value": scalar_to_json(c)});
    if approx {
        let (re, im) = c.approx();
        v["approx_display_only"] = json!(format!("{re:.12} {} {:.12}i", if im < 0.0 { "-" } else { "+" }, im.abs()));
    }
    v
}

pub fn matrix_to_json(m: &Matrix<Cyclo>) -> Value {
    let entries: Vec<Value> = m.entries().map(|(i, j, c)| json!([i, j, scalar_to_json(c)])).collect();
    json!({"rows": m.nrows(), "cols": m.ncols(), "entries": entries})
}

pub fn matrix_from_json(v: &Value, shape: Option<(usize, usize)>) -> Result<Matrix<Cyclo>> {
    let m = match v {
        Value::Object(o) => {
            let get = |k: &str| o.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| perr(format!("matrix needs \"{k}\"")));
            let (r, c) = (get("rows")?, get("cols")?);
            let entries = o.get("entries").and_then(Value::as_array).ok_or_else(|| perr("matrix needs \"entries\""))?;
            let mut triples = Vec::with_capacity(entries.len());
            for e in entries {
                let Some([i, j, s]) = e.as_array().map(Vec::as_slice) else {
                    return Err(perr(format!("matrix entry must be [i, j, scalar]: {e}")));
                };
                let (i, j) = (i.as_u64().ok_or_else(|| perr("bad row index"))? as usize, j.as_u64().ok_or_else(|| perr("bad column index"))? as usize);
                if i >= r || j >= c {
                    return Err(perr(format!("entry ({i}, {j}) outside {r}x{c}")));
                }
                triples.push((i, j, scalar_from_json(s)?));
            }
            Matrix::from_triples(r, c, triples)
        }
        Value::Array(rows) => {
            let dense = rows
                .iter()
                .map(|row| row.as_array().ok_or_else(|| perr("dense matrix rows must be lists"))?.iter().map(scalar_from_json).collect())
                .collect::<Result<Vec<Vec<Cyclo>>>>()?;
            let cols = match (dense.first(), shape) {
                (Some(r), _) => r.len(),
                (None, Some((_, c))) => c,
                (None, None) => 0,
            };
            Matrix::from_dense(dense.len(), cols, dense).map_err(|e| perr(e.to_string()))?
        }
        _ => return Err(perr(format!("not a matrix: {v}"))),
    };
    if let Some(s) = shape {
        if m.shape() != s {
            return Err(perr(format!("matrix has shape {:?}, expected {:?}", m.shape(), s)));
        }
    }
    Ok(m)
}

/// Smallest order containing every structure constant.
fn field_order(h: &HopfAlgebraData<Cyclo>) -> u32 {
    use num_integer::Integer;
    let all = h
        .mult
        .iter()
        .map(|t| &t.3)
        .chain(h.comult.iter().map(|t| &t.3))
        .chain(h.antipode.iter().map(|t| &t.2))
        .chain(h.rmatrix.iter().map(|t| &t.2))
        .chain(h.unit.iter())
        .chain(h.counit.iter())
        .chain(h.ribbon.iter());
    all.filter(|c| c.as_rational().is_none()).fold(1u32, |acc, c| acc.lcm(&c.order()))
}

pub fn category_to_json(h: &HopfAlgebraData<Cyclo>) -> Value {
    let s = scalar_to_json;
    json!({
        "name": h.name,
        "field": {"cyclotomic_order": field_order(h)},
        "dim": h.dim,
        "mult": h.mult.iter().map(|(i, j, k, c)| json!([i, j, k, s(c)])).collect::<Vec<_>>(),
        "unit": h.unit.iter().map(s).collect::<Vec<_>>(),
        "comult": h.comult.iter().map(|(i, j, k, c)| json!([i, j, k, s(c)])).collect::<Vec<_>>(),
        "counit": h.counit.iter().map(s).collect::<Vec<_>>(),
        "antipode": h.antipode.iter().map(|(i, j, c)| json!([i, j, s(c)])).collect::<Vec<_>>(),
        "rmatrix": h.rmatrix.iter().map(|(i, j, c)| json!([i, j, s(c)])).collect::<Vec<_>>(),
        "ribbon": h.ribbon.iter().map(s).collect::<Vec<_>>(),
    })
}

fn field<'a>(o: &'a Map<String, Value>, k: &str, what: &str) -> Result<&'a Value> {
    o.get(k).ok_or_else(|| perr(format!("{what}: missing field \"{k}\"")))
}

fn list<'a>(o: &'a Map<String, Value>, k: &str, what: &str) -> Result<&'a Vec<Value>> {
    field(o, k, what)?.as_array().ok_or_else(|| perr(format!("{what}: \"{k}\" must be a list")))
}

fn index(v: &Value, bound: usize, what: &str) -> Result<usize> {
    let i = v.as_u64().ok_or_else(|| perr(format!("{what}: index expected, got {v}")))? as usize;
    if i >= bound {
        return Err(perr(format!("{what}: index {i} out of range 0..{bound}")));
    }
    Ok(i)
}

pub fn category_from_json(v: &Value) -> Result<HopfAlgebraData<Cyclo>> {
    let o = v.as_object().ok_or_else(|| perr("category must be an object"))?;
    let what = "category";
    let name = o.get("name").and_then(Value::as_str).unwrap_or("unnamed").to_string();
    let order = o.get("field").and_then(|f| f.get("cyclotomic_order")).and_then(Value::as_u64).unwrap_or(1) as u32;
    if order == 0 {
        return Err(perr("category: cyclotomic_order must be positive"));
    }
    let dim = field(o, "dim", what)?.as_u64().ok_or_else(|| perr("category: \"dim\" must be a positive integer"))? as usize;
    if dim == 0 {
        return Err(perr("category: \"dim\" must be positive"));
    }
    let sc = |v: &Value, ctx: &str| -> Result<Cyclo> {
        let c = scalar_from_json(v).map_err(|e| perr(format!("{ctx}: {e}")))?;
        if c.as_rational().is_none() && order % c.order() != 0 {
            return Err(perr(format!("{ctx}: scalar of order {} outside the declared field of order {order}", c.order())));
        }
        Ok(c)
    };
    let quads = |k: &str| -> Result<Vec<(usize, usize, usize, Cyclo)>> {
        list(o, k, what)?
            .iter()
            .enumerate()
            .map(|(n, e)| match e.as_array().map(Vec::as_slice) {
                Some([i, j, l, s]) => {
                    let ctx = format!("{k}[{n}]");
                    Ok((index(i, dim, &ctx)?, index(j, dim, &ctx)?, index(l, dim, &ctx)?, sc(s, &ctx)?))
                }
                _ => Err(perr(format!("{k}[{n}]: expected [i, j, k, scalar]"))),
            })
            .collect()
    };
    let triples = |k: &str| -> Result<Vec<(usize, usize, Cyclo)>> {
        list(o, k, what)?
            .iter()
            .enumerate()
            .map(|(n, e)| match e.as_array().map(Vec::as_slice) {
                Some([i, j, s]) => {
                    let ctx = format!("{k}[{n}]");
                    Ok((index(i, dim, &ctx)?, index(j, dim, &ctx)?, sc(s, &ctx)?))
                }
                _ => Err(perr(format!("{k}[{n}]: expected [i, j, scalar]"))),
            })
            .collect()
    };
    let vector = |k: &str| -> Result<Vec<Cyclo>> {
        let l = list(o, k, what)?;
        if l.len() != dim {
            return Err(perr(format!("{k}: expected {dim} entries, got {}", l.len())));
        }
        l.iter().enumerate().map(|(n, s)| sc(s, &format!("{k}[{n}]"))).collect()
    };
    Ok(HopfAlgebraData {
        name,
        dim,
        mult: quads("mult")?,
        unit: vector("unit")?,
        comult: quads("comult")?,
        counit: vector("counit")?,
        antipode: triples("antipode")?,
        rmatrix: triples("rmatrix")?,
        ribbon: vector("ribbon")?,
    })
}

pub fn rep_to_json(x: &RepObject<Cyclo>) -> Value {
    json!({"dim": x.dim, "actions": x.actions.iter().map(matrix_to_json).collect::<Vec<_>>()})
}

fn rep_from_value(v: &Value, cat: &RepCategory<Cyclo>) -> Result<RepObject<Cyclo>> {
    let o = v.as_object().ok_or_else(|| perr("representation must be an object"))?;
    let dim = field(o, "dim", "representation")?.as_u64().ok_or_else(|| perr("representation: bad \"dim\""))? as usize;
    let acts = list(o, "actions", "representation")?;
    if acts.len() != cat.algebra_dim() {
        return Err(perr(format!("representation: {} actions for an algebra of dimension {}", acts.len(), cat.algebra_dim())));
    }
    let actions = acts.iter().map(|m| matrix_from_json(m, Some((dim, dim)))).collect::<Result<Vec<_>>>()?;
    let x = RepObject::new(dim, actions);
    if !cat.is_module(&x) {
        return Err(Error::Shape("representation: actions do not define a module".into()));
    }
    Ok(x)
}

pub fn complex_to_json(x: &ChainObject<Cyclo>) -> Value {
    if x.is_empty() {
        return json!({"support": [0, -1], "components": {}, "diffs": {}});
    }
    let comps: Map<String, Value> = x.degrees().map(|n| (n.to_string(), rep_to_json(&x.component_or_zero(n)))).collect();
    let diffs: Map<String, Value> = (x.lo()..x.hi()).map(|n| (n.to_string(), matrix_to_json(&x.diff(n)))).collect();
    json!({"support": [x.lo(), x.hi()], "components": comps, "diffs": diffs})
}

fn degree_key(k: &str) -> Result<i64> {
    k.trim().parse().map_err(|_| perr(format!("degree key expected, got \"{k}\"")))
}

fn components_to_json(comps: &BTreeMap<i64, Matrix<Cyclo>>) -> Value {
    Value::Object(comps.iter().map(|(n, m)| (n.to_string(), matrix_to_json(m))).collect())
}

pub fn chain_map_to_json(f: &ChainMap<Cyclo>) -> Value {
    json!({
        "source": complex_to_json(&f.source),
        "target": complex_to_json(&f.target),
        "degree": f.degree,
        "components": components_to_json(f.components()),
    })
}

/// A homotopy or equivalence witness, replayable with `--verify`.
#[derive(Clone, Debug)]
pub enum Witness {
    Homotopy { f: ChainMap<Cyclo>, g: ChainMap<Cyclo>, homotopy: ChainHomotopy<Cyclo> },
    Equivalence(Equivalence<Cyclo>),
}

impl Witness {
    pub fn verify(&self) -> bool {
        match self {
            Witness::Homotopy { f, g, homotopy } => {
                f.is_chain_map() && g.is_chain_map() && homotopy.degree == -1 && f.is_homotopic_via(g, homotopy)
            }
            Witness::Equivalence(e) => e.verify(),
        }
    }

    pub fn to_json(&self, category: &str) -> Value {
        match self {
            Witness::Homotopy { f, g, homotopy } => json!({
                "kind": "homotopy",
                "category": category,
                "f": chain_map_to_json(f),
                "g": chain_map_to_json(g),
                "homotopy": chain_map_to_json(homotopy),
            }),
            Witness::Equivalence(e) => json!({
                "kind": "equivalence",
                "category": category,
                "map": chain_map_to_json(&e.map),
                "inverse": chain_map_to_json(&e.inverse),
                "source_homotopy": chain_map_to_json(&e.source_homotopy),
                "target_homotopy": chain_map_to_json(&e.target_homotopy),
            }),
        }
    }
}

/// Any diagram file: a diagram of graded lines, or a ribbon diagram labeled
/// in `rep(H)` or in complexes.
pub enum DiagramFile {
    Graded(GradedStringDiagram),
    Rep(RepDiagram<Cyclo>),
    Chain(ChainDiagram<Cyclo>),
}

/// Reads files and resolves references.
#[derive(Default)]
pub struct Loader {
    pub category_override: Option<String>,
}

impl Loader {
    pub fn read(&self, path: &Path) -> Result<Value> {
        let text = fs::read_to_string(path).map_err(|e| perr(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| perr(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))
    }

    /// Inline value, or the parsed file a string reference points to, with
    /// the directory further references resolve against.
    fn resolve(&self, base: &Path, v: &Value) -> Result<(Value, PathBuf)> {
        match v {
            Value::String(s) if !s.starts_with("builtin:") => {
                let p = base.join(s);
                let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
                Ok((self.read(&p)?, dir))
            }
            _ => Ok((v.clone(), base.to_path_buf())),
        }
    }

    /// A category reference: `builtin:<name>` or a file path.
    pub fn category(&self, reference: &str, base: &Path) -> Result<(String, HopfAlgebraData<Cyclo>)> {
        if let Some(name) = reference.strip_prefix("builtin:") {
            let h = datasets::builtin(name).ok_or_else(|| perr(format!("unknown builtin category \"{name}\"")))?;
            return Ok((reference.to_string(), h));
        }
        let (v, _) = self.resolve(base, &json!(reference))?;
        Ok((reference.to_string(), category_from_json(&v)?))
    }

    /// The category named by `--category`, else by the file's own field.
    pub fn category_for(&self, file: &Value, base: &Path) -> Result<(String, HopfAlgebraData<Cyclo>)> {
        if let Some(c) = &self.category_override {
            return self.category(c, Path::new("."));
        }
        let r = file.get("category").and_then(Value::as_str).ok_or_else(|| perr("no category given (use --category)"))?;
        self.category(r, base)
    }

    pub fn rep(&self, cat: &RepCategory<Cyclo>, v: &Value, base: &Path) -> Result<RepObject<Cyclo>> {
        if let Some(name) = v.as_str().and_then(|s| s.strip_prefix("builtin:")) {
            return builtin_rep(cat, name);
        }
        let (v, _) = self.resolve(base, v)?;
        rep_from_value(&v, cat)
    }

    pub fn complex(&self, cat: &RepCategory<Cyclo>, v: &Value, base: &Path) -> Result<ChainObject<Cyclo>> {
        if let Some(name) = v.as_str().and_then(|s| s.strip_prefix("builtin:")) {
            return Ok(ChainObject::concentrated(builtin_rep(cat, name)?, 0));
        }
        let (v, dir) = self.resolve(base, v)?;
        let o = v.as_object().ok_or_else(|| perr("complex must be an object"))?;
        if o.contains_key("actions") {
            return Ok(ChainObject::concentrated(rep_from_value(&v, cat)?, 0));
        }
        let sup = list(o, "support", "complex")?;
        let (lo, hi) = match sup.as_slice() {
            [a, b] => (a.as_i64().ok_or_else(|| perr("complex: bad support"))?, b.as_i64().ok_or_else(|| perr("complex: bad support"))?),
            _ => return Err(perr("complex: support must be [lo, hi]")),
        };
        if hi < lo {
            return Ok(ChainObject::zero(cat.algebra_dim()));
        }
        let empty = Map::new();
        let comps_v = o.get("components").and_then(Value::as_object).unwrap_or(&empty);
        let mut comps: Vec<RepObject<Cyclo>> = vec![cat.zero_object(); (hi - lo + 1) as usize];
        for (k, r) in comps_v {
            let n = degree_key(k)?;
            if n < lo || n > hi {
                return Err(perr(format!("complex: component in degree {n} outside the support")));
            }
            comps[(n - lo) as usize] = self.rep(cat, r, &dir)?;
        }
        let diffs_v = o.get("diffs").and_then(Value::as_object).unwrap_or(&empty);
        let mut diffs: Vec<Matrix<Cyclo>> = (lo..hi).map(|n| Matrix::zeros(comps[(n + 1 - lo) as usize].dim, comps[(n - lo) as usize].dim)).collect();
        for (k, m) in diffs_v {
            let n = degree_key(k)?;
            if n < lo || n >= hi {
                return Err(perr(format!("complex: differential in degree {n} outside the support")));
            }
            let i = (n - lo) as usize;
            diffs[i] = matrix_from_json(m, Some((comps[i + 1].dim, comps[i].dim))).map_err(|e| perr(format!("complex: diffs[{n}]: {e}")))?;
        }
        ChainObject::new(cat, lo, comps, diffs)
    }

    pub fn chain_map(&self, cat: &RepCategory<Cyclo>, v: &Value, base: &Path) -> Result<ChainMap<Cyclo>> {
        let (v, dir) = self.resolve(base, v)?;
        let o = v.as_object().ok_or_else(|| perr("map must be an object"))?;
        let source = self.complex(cat, field(o, "source", "map")?, &dir)?;
        let target = self.complex(cat, field(o, "target", "map")?, &dir)?;
        let degree = o.get("degree").and_then(Value::as_i64).unwrap_or(0);
        let comps = self.components(o.get("components"), |n| (target.dim(n + degree), source.dim(n)))?;
        ChainMap::new(source, target, degree, comps)
    }

    fn components(&self, v: Option<&Value>, shape: impl Fn(i64) -> (usize, usize)) -> Result<BTreeMap<i64, Matrix<Cyclo>>> {
        let Some(v) = v else { return Ok(BTreeMap::new()) };
        let o = v.as_object().ok_or_else(|| perr("components must map degrees to matrices"))?;
        o.iter()
            .map(|(k, m)| {
                let n = degree_key(k)?;
                Ok((n, matrix_from_json(m, Some(shape(n)))?))
            })
            .collect()
    }

    pub fn witness(&self, cat: &RepCategory<Cyclo>, v: &Value, base: &Path) -> Result<Witness> {
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| perr("witness needs \"kind\""))?;
        let get = |k: &str| v.get(k).ok_or_else(|| perr(format!("witness: missing \"{k}\"")));
        match kind {
            "homotopy" => Ok(Witness::Homotopy {
                f: self.chain_map(cat, get("f")?, base)?,
                g: self.chain_map(cat, get("g")?, base)?,
                homotopy: self.chain_map(cat, get("homotopy")?, base)?,
            }),
            "equivalence" => Ok(Witness::Equivalence(Equivalence {
                map: self.chain_map(cat, get("map")?, base)?,
                inverse: self.chain_map(cat, get("inverse")?, base)?,
                source_homotopy: self.chain_map(cat, get("source_homotopy")?, base)?,
                target_homotopy: self.chain_map(cat, get("target_homotopy")?, base)?,
            })),
            other => Err(perr(format!("unknown witness kind \"{other}\""))),
        }
    }

    pub fn surface(&self, cat: &RepCategory<Cyclo>, v: &Value, base: &Path) -> Result<MarkedSurface<Cyclo>> {
        let o = v.as_object().ok_or_else(|| perr("surface must be an object"))?;
        let genus = field(o, "genus", "surface")?.as_u64().ok_or_else(|| perr("surface: bad genus"))? as usize;
        let empty = Vec::new();
        let marks = o.get("markings").and_then(Value::as_array).unwrap_or(&empty);
        let markings = marks
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let c = m.get("complex").ok_or_else(|| perr(format!("markings[{i}]: missing \"complex\"")))?;
                let sign: Orient = serde_json::from_value(m.get("sign").cloned().unwrap_or(json!("+")))
                    .map_err(|_| perr(format!("markings[{i}]: sign must be \"+\" or \"-\"")))?;
                Ok(Marking { complex: self.complex(cat, c, base)?, sign })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MarkedSurface { genus, markings })
    }

    /// Diagram files. Without `"labels"` the file is a diagram of graded
    /// lines: `{"source": [[m, "+"]...], "target", "slices"}` with tokens
    /// `id`, `cross`, `cap`, `cup{degree, orient}`, `coupon{inputs, outputs}`.
    /// Otherwise: `{"category", "over": "rep"|"complex", "labels": [refs],
    /// "source": [[label, "+"]...], "target"?, "coupons": [{"name", "source",
    /// "target", "morphism"}], "slices"}` with tokens `id`, `cross_pos`,
    /// `cross_neg`, `twist_pos`, `twist_neg`, `cap`, `cup{label, orient}`,
    /// `coupon{index}`. Over complexes a coupon morphism maps degrees to
    /// matrices between the realized words.
    pub fn diagram(&self, cat: Option<&RepCategory<Cyclo>>, v: &Value, base: &Path) -> Result<DiagramFile> {
        let o = v.as_object().ok_or_else(|| perr("diagram must be an object"))?;
        if !o.contains_key("labels") {
            let d: GradedStringDiagram = serde_json::from_value(v.clone()).map_err(|e| perr(format!("diagram: {e}")))?;
            return Ok(DiagramFile::Graded(d));
        }
        let cat = cat.ok_or_else(|| perr("labeled diagram needs a category"))?;
        let strands = |k: &str| -> Result<Vec<Strand>> {
            let Some(l) = o.get(k) else { return Ok(Vec::new()) };
            let pairs: Vec<(usize, Orient)> = serde_json::from_value(l.clone()).map_err(|e| perr(format!("diagram: {k}: {e}")))?;
            Ok(pairs.into_iter().map(|(label, orient)| Strand { label, orient }).collect())
        };
        let source = strands("source")?;
        let slices: Vec<Vec<Token>> =
            serde_json::from_value(o.get("slices").cloned().unwrap_or(json!([]))).map_err(|e| perr(format!("diagram: slices: {e}")))?;
        let labels_v = list(o, "labels", "diagram")?;
        let coupons_v = o.get("coupons").and_then(Value::as_array).cloned().unwrap_or_default();
        let over = o.get("over").and_then(Value::as_str).unwrap_or("rep");
        let coupon_heads = coupons_v
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let src: Vec<(usize, Orient)> = serde_json::from_value(c.get("source").cloned().unwrap_or(json!([])))
                    .map_err(|e| perr(format!("coupons[{i}].source: {e}")))?;
                let tgt: Vec<(usize, Orient)> = serde_json::from_value(c.get("target").cloned().unwrap_or(json!([])))
                    .map_err(|e| perr(format!("coupons[{i}].target: {e}")))?;
                let name = c.get("name").and_then(Value::as_str).unwrap_or("f").to_string();
                let st = |v: Vec<(usize, Orient)>| v.into_iter().map(|(label, orient)| Strand { label, orient }).collect::<Vec<_>>();
                Ok((name, st(src), st(tgt), c.get("morphism").cloned().unwrap_or(Value::Null)))
            })
            .collect::<Result<Vec<_>>>()?;
        let check_target = |d: &dyn Fn() -> Result<Vec<Strand>>| -> Result<()> {
            if o.contains_key("target") {
                let want = strands("target")?;
                if d()? != want {
                    return Err(Error::InvalidDiagram("slices do not end at the declared target".into()));
                }
            }
            Ok(())
        };
        match over {
            "rep" => {
                let labels = labels_v.iter().map(|l| self.rep(cat, l, base)).collect::<Result<Vec<_>>>()?;
                let mut d = RibbonDiagram { labels, coupons: Vec::new(), source, slices };
                for (name, src, tgt, m) in coupon_heads {
                    let dims = |s: &[Strand]| -> Result<usize> {
                        s.iter().map(|x| d.labels.get(x.label).map(|o| o.dim).ok_or_else(|| perr("coupon strand label out of range"))).product()
                    };
                    let m = matrix_from_json(&m, Some((dims(&tgt)?, dims(&src)?))).map_err(|e| perr(format!("coupon {name}: {e}")))?;
                    let objs = |s: &[Strand]| s.iter().map(|x| strand_object(cat, &d.labels, x)).collect::<Vec<_>>();
                    let (x, y) = (cat.tensor_all(objs(&src).iter()), cat.tensor_all(objs(&tgt).iter()));
                    if !crate::rep::is_intertwiner(&x, &y, &m) {
                        return Err(Error::NotIntertwiner(format!("coupon {name}")));
                    }
                    d.coupons.push(Coupon { name, source: src, target: tgt, morphism: m });
                }
                check_target(&|| d.target())?;
                Ok(DiagramFile::Rep(d))
            }
            "complex" => {
                let labels = labels_v.iter().map(|l| self.complex(cat, l, base)).collect::<Result<Vec<_>>>()?;
                let ch = ChainCategory::new(cat);
                let mut d = RibbonDiagram { labels, coupons: Vec::new(), source, slices };
                for (name, src, tgt, m) in coupon_heads {
                    let word = |s: &[Strand]| -> Result<Vec<ChainObject<Cyclo>>> {
                        s.iter()
                            .map(|x| {
                                let l = d.labels.get(x.label).ok_or_else(|| perr("coupon strand label out of range"))?;
                                Ok(if x.orient == Orient::Pos { l.clone() } else { ch.dual(l) })
                            })
                            .collect()
                    };
                    let (sw, tw) = (word(&src)?, word(&tgt)?);
                    let shell = WordMap::new(sw.clone(), tw.clone(), BTreeMap::new())?;
                    let comps = self.components(Some(&m), |n| (shell.target_layout().dim(n), shell.source_layout().dim(n)))?;
                    let wm = WordMap::new(sw, tw, comps)?;
                    let f = wm.to_chain_map(cat);
                    if !f.is_chain_map() || f.components().iter().any(|(n, m)| !crate::rep::is_intertwiner(&f.source.component_or_zero(*n), &f.target.component_or_zero(*n), m)) {
                        return Err(Error::NotIntertwiner(format!("coupon {name} is not a chain map")));
                    }
                    d.coupons.push(Coupon { name, source: src, target: tgt, morphism: wm });
                }
                check_target(&|| d.target())?;
                Ok(DiagramFile::Chain(d))
            }
            other => Err(perr(format!("diagram: \"over\" must be \"rep\" or \"complex\", got \"{other}\""))),
        }
    }
}

fn strand_object(cat: &RepCategory<Cyclo>, labels: &[RepObject<Cyclo>], s: &Strand) -> RepObject<Cyclo> {
    match s.orient {
        Orient::Pos => labels[s.label].clone(),
        Orient::Neg => cat.dual(&labels[s.label]),
    }
}

/// `unit`, `adjoint`, `trivial<d>` (the unit `d` times), `chi<a>` for the
/// characters of `Fun(Z/n)`, and `sign`, `projective` for the Sweedler
/// algebras.
pub fn builtin_rep(cat: &RepCategory<Cyclo>, name: &str) -> Result<RepObject<Cyclo>> {
    let n = cat.algebra_dim();
    let parse_num = |s: &str| s.parse::<i64>().map_err(|_| perr(format!("bad builtin representation \"{name}\"")));
    let sweedler = || {
        if n != 4 {
            return Err(perr(format!("builtin representation \"{name}\" needs a Sweedler algebra")));
        }
        Ok(())
    };
    let x = match name {
        "unit" => cat.unit(),
        "adjoint" => cat.adjoint(),
        "sign" => {
            sweedler()?;
            datasets::sweedler_character(false)
        }
        "projective" => {
            sweedler()?;
            datasets::sweedler_projective()
        }
        _ if name.starts_with("trivial") => {
            let d = parse_num(&name["trivial".len()..])?;
            (0..d.max(0)).fold(cat.zero_object(), |acc, _| cat.direct_sum(&acc, &cat.unit()))
        }
        _ if name.starts_with("chi") => datasets::fun_zn_character(n as u32, parse_num(&name[3..])?),
        _ => return Err(perr(format!("unknown builtin representation \"{name}\""))),
    };
    if !cat.is_module(&x) {
        return Err(perr(format!("builtin representation \"{name}\" does not fit this category")));
    }
    Ok(x)
}

/// Sorted map from degree to rank, as JSON with string keys.
pub fn ranks_json(m: &BTreeMap<i64, usize>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

/// Compact exact text for small rational scalars, used by reports.
pub fn is_integer(c: &Cyclo) -> Option<i64> {
    let q = c.as_rational()?;
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars_round_trip() {
        for c in [Cyclo::root_of_unity(3, 2).unwrap(), Cyclo::from_ratio(-7, 3), Cyclo::root_of_unity(5, 1).unwrap()] {
            assert_eq!(scalar_from_json(&scalar_to_json(&c)).unwrap(), c);
        }
        assert_eq!(scalar_from_json(&json!("3/6")).unwrap(), Cyclo::from_ratio(1, 2));
        assert_eq!(scalar_from_json(&json!([2, 4])).unwrap(), Cyclo::from_ratio(1, 2));
        assert!(scalar_from_json(&json!([1, 0])).is_err());
    }

    #[test]
    fn categories_round_trip() {
        for name in ["trivial", "fun_z3", "fun_z5", "sweedler", "sweedler_alpha1"] {
            let h = datasets::builtin(name).unwrap();
            let back = category_from_json(&category_to_json(&h)).unwrap();
            assert_eq!(category_to_json(&back), category_to_json(&h));
        }
    }

    #[test]
    fn complexes_round_trip() {
        let cat = RepCategory::new(datasets::fun_zn(3).unwrap()).unwrap();
        let x = crate::corpus::complex(&cat, &[datasets::fun_zn_character(3, 1), cat.unit()], 3, &mut {
            use rand::SeedableRng;
            rand_chacha::ChaCha8Rng::seed_from_u64(9)
        });
        let l = Loader::default();
        assert_eq!(l.complex(&cat, &complex_to_json(&x), Path::new(".")).unwrap(), x);
    }
}
