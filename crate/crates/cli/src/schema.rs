//! JSON specifications of rings and multipliers.
//!
//! Specs are parsed from `serde_json::Value` by hand so that every error
//! carries a JSON-pointer path to the offending field.

use fusion_mult::builders::{
    build_free_product, build_group_ring, build_product, build_sun_bounded, build_tlj_ainf_exact,
    build_tlj_finite, grading_kernel, grading_of_sun, integer_grading, GroupSpec,
};
use fusion_mult::builders::sun::DEFAULT_MAX_BOXES;
use fusion_mult::fusion::invariants::validate_ring;
use fusion_mult::multiplier::{
    extend_by_zero, free_product_multiplier, regular_multiplier, trivial_multiplier,
};
use fusion_mult::scalar::parse_rational;
use fusion_mult::tlj::{multiplier_from_measure, phi_point};
use fusion_mult::{Complex64, FusionError, FusionRing, Multiplier, Rational, Result, Scalar};
use num::traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// Pair level for the invariant suite run on every parsed ring.
pub const SPEC_VALIDATION_LEVEL: usize = 3;
/// Level for the exhaustive associativity check on parsed rings.
pub const SPEC_ASSOCIATIVITY_LEVEL: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub enum RingSpec {
    TljAinf { lambda_inv: Rational },
    TljFinite { m: u32 },
    Group(GroupSpec),
    SuN { n: u32, q: f64, max_boxes: u32 },
    Product(Box<RingSpec>, Box<RingSpec>),
    FreeProduct(Box<RingSpec>, Box<RingSpec>),
    /// Kernel of the canonical grading: `|λ| mod n` for `SU(n)`, `k mod modulus` for `Z`.
    GradingKernel { parent: Box<RingSpec>, modulus: Option<u32> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum SubringSpec {
    GradingKernel { modulus: Option<u32> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum MultiplierSpec {
    Point { t: Rational },
    Measure { atoms: Vec<(Rational, Rational)> },
    Regular,
    Trivial,
    Table { values: Vec<(String, f64, f64)>, default: (f64, f64) },
    FreeProduct { r: Rational, parts: Box<(MultiplierSpec, MultiplierSpec)> },
    ExtendZero { subring: SubringSpec, inner: Box<MultiplierSpec> },
}

fn err(path: &str, message: impl Into<String>) -> FusionError {
    FusionError::Parse {
        path: if path.is_empty() { "/".into() } else { path.to_string() },
        message: message.into(),
    }
}

fn child(path: &str, key: &str) -> String {
    format!("{path}/{}", key.replace('~', "~0").replace('/', "~1"))
}

fn object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    value.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(path, format!("missing field `{key}`")))
}

fn only_fields(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(err(&child(path, k), format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

fn uint(value: &Value, path: &str) -> Result<u32> {
    value
        .as_u64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| err(path, "expected a non-negative integer"))
}

fn float(value: &Value, path: &str) -> Result<f64> {
    value
        .as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| err(path, "expected a finite number"))
}

/// A JSON number is read through its shortest decimal form, so `5.1` means
/// `51/10`; strings such as `"51/10"` are accepted as well.
pub fn rational(value: &Value, path: &str) -> Result<Rational> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(err(path, "expected a number or a rational string")),
    };
    parse_rational(&text).ok_or_else(|| err(path, format!("`{text}` is not a rational number")))
}

/// Emits a rational as a JSON number when that round-trips, else as `"p/q"`.
pub fn rational_value(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.to_integer().to_i64() {
            return json!(i);
        }
    }
    if let Some(x) = ToPrimitive::to_f64(r) {
        if x.is_finite() && parse_rational(&x.to_string()).as_ref() == Some(r) {
            return json!(x);
        }
    }
    json!(r.to_string())
}

fn check_version(obj: &Map<String, Value>, path: &str) -> Result<()> {
    if let Some(v) = obj.get("schema_version") {
        let p = child(path, "schema_version");
        let version = v.as_u64().ok_or_else(|| err(&p, "expected an integer"))?;
        if version != SCHEMA_VERSION {
            return Err(err(&p, format!("unsupported schema version {version}")));
        }
    }
    Ok(())
}

fn kind<'a>(obj: &'a Map<String, Value>, path: &str) -> Result<&'a str> {
    field(obj, "kind", path)?
        .as_str()
        .ok_or_else(|| err(&child(path, "kind"), "expected a string"))
}

fn pair<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<(&'a Value, &'a Value, String)> {
    let p = child(path, key);
    let items = field(obj, key, path)?
        .as_array()
        .ok_or_else(|| err(&p, "expected an array of two entries"))?;
    if items.len() != 2 {
        return Err(err(&p, format!("expected 2 entries, got {}", items.len())));
    }
    Ok((&items[0], &items[1], p))
}

impl RingSpec {
    pub fn from_value(value: &Value, path: &str) -> Result<Self> {
        let obj = object(value, path)?;
        check_version(obj, path)?;
        let kind = kind(obj, path)?;
        let common = ["kind", "schema_version"];
        let allow = |extra: &[&str]| {
            let mut all = common.to_vec();
            all.extend_from_slice(extra);
            only_fields(obj, &all, path)
        };
        Ok(match kind {
            "tlj_ainf" => {
                allow(&["lambda_inv"])?;
                let lambda_inv = rational(field(obj, "lambda_inv", path)?, &child(path, "lambda_inv"))?;
                RingSpec::TljAinf { lambda_inv }
            }
            "tlj_finite" => {
                allow(&["m"])?;
                RingSpec::TljFinite {
                    m: uint(field(obj, "m", path)?, &child(path, "m"))?,
                }
            }
            "group" => {
                allow(&["family", "params"])?;
                let inner = json!({
                    "family": field(obj, "family", path)?,
                    "params": obj.get("params").cloned().unwrap_or_else(|| json!({})),
                });
                let spec: GroupSpec = serde_json::from_value(inner)
                    .map_err(|e| err(&child(path, "params"), e.to_string()))?;
                RingSpec::Group(spec)
            }
            "su_n" => {
                allow(&["n", "q", "max_boxes"])?;
                let n = uint(field(obj, "n", path)?, &child(path, "n"))?;
                let q = match obj.get("q") {
                    Some(v) => float(v, &child(path, "q"))?,
                    None => 1.0,
                };
                let max_boxes = match obj.get("max_boxes") {
                    Some(v) => uint(v, &child(path, "max_boxes"))?,
                    None => DEFAULT_MAX_BOXES,
                };
                RingSpec::SuN { n, q, max_boxes }
            }
            "product" | "free_product" => {
                allow(&["factors"])?;
                let (a, b, p) = pair(obj, "factors", path)?;
                let a = Box::new(RingSpec::from_value(a, &child(&p, "0"))?);
                let b = Box::new(RingSpec::from_value(b, &child(&p, "1"))?);
                if kind == "product" {
                    RingSpec::Product(a, b)
                } else {
                    RingSpec::FreeProduct(a, b)
                }
            }
            "grading_kernel" => {
                allow(&["parent", "modulus"])?;
                let parent = Box::new(RingSpec::from_value(field(obj, "parent", path)?, &child(path, "parent"))?);
                let modulus = obj.get("modulus").map(|v| uint(v, &child(path, "modulus"))).transpose()?;
                RingSpec::GradingKernel { parent, modulus }
            }
            other => return Err(err(&child(path, "kind"), format!("unknown ring kind `{other}`"))),
        })
    }

    /// Canonical JSON form; `top` adds the schema version.
    pub fn to_value(&self, top: bool) -> Value {
        let mut v = match self {
            RingSpec::TljAinf { lambda_inv } => json!({"kind": "tlj_ainf", "lambda_inv": rational_value(lambda_inv)}),
            RingSpec::TljFinite { m } => json!({"kind": "tlj_finite", "m": m}),
            RingSpec::Group(g) => {
                let mut v = serde_json::to_value(g).expect("group spec serializes");
                v["kind"] = json!("group");
                v
            }
            RingSpec::SuN { n, q, max_boxes } => json!({"kind": "su_n", "n": n, "q": q, "max_boxes": max_boxes}),
            RingSpec::Product(a, b) => json!({"kind": "product", "factors": [a.to_value(false), b.to_value(false)]}),
            RingSpec::FreeProduct(a, b) => {
                json!({"kind": "free_product", "factors": [a.to_value(false), b.to_value(false)]})
            }
            RingSpec::GradingKernel { parent, modulus } => {
                let mut v = json!({"kind": "grading_kernel", "parent": parent.to_value(false)});
                if let Some(m) = modulus {
                    v["modulus"] = json!(m);
                }
                v
            }
        };
        if top {
            v["schema_version"] = json!(SCHEMA_VERSION);
        }
        v
    }

    /// Constructs the ring without running the invariant suite.
    pub fn build_unchecked(&self) -> Result<FusionRing> {
        match self {
            RingSpec::TljAinf { lambda_inv } => build_tlj_ainf_exact(lambda_inv.clone()),
            RingSpec::TljFinite { m } => build_tlj_finite(*m),
            RingSpec::Group(g) => build_group_ring(g),
            RingSpec::SuN { n, q, max_boxes } => build_sun_bounded(*n, *q, *max_boxes),
            RingSpec::Product(a, b) => Ok(build_product(&a.build_unchecked()?, &b.build_unchecked()?)),
            RingSpec::FreeProduct(a, b) => Ok(build_free_product(&a.build_unchecked()?, &b.build_unchecked()?)),
            RingSpec::GradingKernel { parent, modulus } => {
                let parent = parent.build_unchecked()?;
                kernel_of(&parent, *modulus)
            }
        }
    }

    /// Constructs the ring and validates it on low levels.
    pub fn build(&self) -> Result<FusionRing> {
        let ring = self.build_unchecked()?;
        validate_ring(&ring, SPEC_VALIDATION_LEVEL, SPEC_ASSOCIATIVITY_LEVEL)?;
        Ok(ring)
    }
}

fn kernel_of(parent: &FusionRing, modulus: Option<u32>) -> Result<FusionRing> {
    let grading = match modulus {
        Some(m) => integer_grading(parent, m)?,
        None => grading_of_sun(parent)?,
    };
    grading_kernel(parent, &grading)
}

/// Parses and validates a ring spec from JSON text.
pub fn parse_ring_spec(text: &str) -> Result<FusionRing> {
    read_ring_spec(text)?.build()
}

/// Parses a ring spec from JSON text without building it.
pub fn read_ring_spec(text: &str) -> Result<RingSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| err("", e.to_string()))?;
    RingSpec::from_value(&value, "")
}

impl SubringSpec {
    fn from_value(value: &Value, path: &str) -> Result<Self> {
        let obj = object(value, path)?;
        match kind(obj, path)? {
            "grading_kernel" => {
                only_fields(obj, &["kind", "modulus"], path)?;
                let modulus = obj.get("modulus").map(|v| uint(v, &child(path, "modulus"))).transpose()?;
                Ok(SubringSpec::GradingKernel { modulus })
            }
            other => Err(err(&child(path, "kind"), format!("unknown subring kind `{other}`"))),
        }
    }

    fn to_value(&self) -> Value {
        match self {
            SubringSpec::GradingKernel { modulus } => {
                let mut v = json!({"kind": "grading_kernel"});
                if let Some(m) = modulus {
                    v["modulus"] = json!(m);
                }
                v
            }
        }
    }

    pub fn build(&self, ring: &FusionRing) -> Result<FusionRing> {
        match self {
            SubringSpec::GradingKernel { modulus } => kernel_of(ring, *modulus),
        }
    }
}

fn complex_value(value: &Value, path: &str) -> Result<(f64, f64)> {
    match value {
        Value::Array(items) if items.len() == 2 => Ok((
            float(&items[0], &child(path, "0"))?,
            float(&items[1], &child(path, "1"))?,
        )),
        other => Ok((float(other, path)?, 0.0)),
    }
}

impl MultiplierSpec {
    pub fn from_value(value: &Value, path: &str) -> Result<Self> {
        let obj = object(value, path)?;
        check_version(obj, path)?;
        let kind = kind(obj, path)?;
        let allow = |extra: &[&str]| {
            let mut all = vec!["kind", "schema_version"];
            all.extend_from_slice(extra);
            only_fields(obj, &all, path)
        };
        Ok(match kind {
            "point" => {
                allow(&["t"])?;
                MultiplierSpec::Point {
                    t: rational(field(obj, "t", path)?, &child(path, "t"))?,
                }
            }
            "measure" => {
                allow(&["atoms"])?;
                let p = child(path, "atoms");
                let items = field(obj, "atoms", path)?
                    .as_array()
                    .ok_or_else(|| err(&p, "expected an array of [t, w] pairs"))?;
                let atoms = items
                    .iter()
                    .enumerate()
                    .map(|(i, item)| {
                        let ip = child(&p, &i.to_string());
                        match item.as_array().map(Vec::as_slice) {
                            Some([t, w]) => Ok((rational(t, &child(&ip, "0"))?, rational(w, &child(&ip, "1"))?)),
                            _ => Err(err(&ip, "expected [t, w]")),
                        }
                    })
                    .collect::<Result<_>>()?;
                MultiplierSpec::Measure { atoms }
            }
            "regular" => {
                allow(&[])?;
                MultiplierSpec::Regular
            }
            "trivial" => {
                allow(&[])?;
                MultiplierSpec::Trivial
            }
            "table" => {
                allow(&["values", "default"])?;
                let p = child(path, "values");
                let items = field(obj, "values", path)?
                    .as_array()
                    .ok_or_else(|| err(&p, "expected an array of [label, re, im] entries"))?;
                let values = items
                    .iter()
                    .enumerate()
                    .map(|(i, item)| {
                        let ip = child(&p, &i.to_string());
                        match item.as_array().map(Vec::as_slice) {
                            Some([l, re, rest @ ..]) if rest.len() <= 1 => {
                                let label = l.as_str().ok_or_else(|| err(&child(&ip, "0"), "expected a label string"))?;
                                let re = float(re, &child(&ip, "1"))?;
                                let im = match rest.first() {
                                    Some(v) => float(v, &child(&ip, "2"))?,
                                    None => 0.0,
                                };
                                Ok((label.to_string(), re, im))
                            }
                            _ => Err(err(&ip, "expected [label, re, im]")),
                        }
                    })
                    .collect::<Result<_>>()?;
                let default = match obj.get("default") {
                    Some(v) => complex_value(v, &child(path, "default"))?,
                    None => (0.0, 0.0),
                };
                MultiplierSpec::Table { values, default }
            }
            "free_product" => {
                allow(&["r", "parts"])?;
                let r = rational(field(obj, "r", path)?, &child(path, "r"))?;
                let (a, b, p) = pair(obj, "parts", path)?;
                let parts = Box::new((
                    MultiplierSpec::from_value(a, &child(&p, "0"))?,
                    MultiplierSpec::from_value(b, &child(&p, "1"))?,
                ));
                MultiplierSpec::FreeProduct { r, parts }
            }
            "extend_zero" => {
                allow(&["subring", "inner"])?;
                let subring = SubringSpec::from_value(field(obj, "subring", path)?, &child(path, "subring"))?;
                let inner = Box::new(MultiplierSpec::from_value(field(obj, "inner", path)?, &child(path, "inner"))?);
                MultiplierSpec::ExtendZero { subring, inner }
            }
            other => return Err(err(&child(path, "kind"), format!("unknown multiplier kind `{other}`"))),
        })
    }

    pub fn to_value(&self, top: bool) -> Value {
        let mut v = match self {
            MultiplierSpec::Point { t } => json!({"kind": "point", "t": rational_value(t)}),
            MultiplierSpec::Measure { atoms } => json!({
                "kind": "measure",
                "atoms": atoms.iter().map(|(t, w)| json!([rational_value(t), rational_value(w)])).collect::<Vec<_>>(),
            }),
            MultiplierSpec::Regular => json!({"kind": "regular"}),
            MultiplierSpec::Trivial => json!({"kind": "trivial"}),
            MultiplierSpec::Table { values, default } => json!({
                "kind": "table",
                "values": values.iter().map(|(l, re, im)| json!([l, re, im])).collect::<Vec<_>>(),
                "default": [default.0, default.1],
            }),
            MultiplierSpec::FreeProduct { r, parts } => json!({
                "kind": "free_product",
                "r": rational_value(r),
                "parts": [parts.0.to_value(false), parts.1.to_value(false)],
            }),
            MultiplierSpec::ExtendZero { subring, inner } => json!({
                "kind": "extend_zero",
                "subring": subring.to_value(),
                "inner": inner.to_value(false),
            }),
        };
        if top {
            v["schema_version"] = json!(SCHEMA_VERSION);
        }
        v
    }

    /// Builds the multiplier on `ring` with coefficients in `S`.
    pub fn build<S: SpecScalar>(&self, ring: &FusionRing) -> Result<Multiplier<S>> {
        match self {
            MultiplierSpec::Point { t } => S::point(ring, t),
            MultiplierSpec::Measure { atoms } => S::measure(ring, atoms),
            MultiplierSpec::Regular => Ok(regular_multiplier(ring)),
            MultiplierSpec::Trivial => Ok(trivial_multiplier(ring)),
            MultiplierSpec::Table { values, default } => {
                let entries = values
                    .iter()
                    .map(|(l, re, im)| {
                        let label = ring.parse_label(l)?;
                        let value = S::from_parts(*re, *im)
                            .ok_or_else(|| FusionError::Parameter(format!("value ({re}, {im}) at {l} not representable")))?;
                        Ok((label, value))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let default = S::from_parts(default.0, default.1)
                    .ok_or_else(|| FusionError::Parameter("default value not representable".into()))?;
                Multiplier::from_table(ring, entries, default)
            }
            MultiplierSpec::FreeProduct { r, parts } => {
                let fp = ring
                    .downcast::<fusion_mult::builders::FreeProduct>()
                    .ok_or_else(|| FusionError::Parameter(format!("{} is not a free product", ring.name())))?;
                let (f1, f2) = fp.factors();
                let phi1 = parts.0.build(f1)?;
                let phi2 = parts.1.build(f2)?;
                free_product_multiplier(ring, &phi1, &phi2, S::from_rational(r))
            }
            MultiplierSpec::ExtendZero { subring, inner } => {
                let sub = subring.build(ring)?;
                let phi = inner.build(&sub)?;
                extend_by_zero(ring, &sub, &phi)
            }
        }
    }
}

/// Parses a multiplier spec from JSON text.
pub fn read_multiplier_spec(text: &str) -> Result<MultiplierSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| err("", e.to_string()))?;
    MultiplierSpec::from_value(&value, "")
}

/// Scalars that multiplier specs can be built over.
pub trait SpecScalar: Scalar {
    fn point(ring: &FusionRing, t: &Rational) -> Result<Multiplier<Self>>;
    fn measure(ring: &FusionRing, atoms: &[(Rational, Rational)]) -> Result<Multiplier<Self>>;
    /// `re + i·im`; real types refuse a non-zero imaginary part.
    fn from_parts(re: f64, im: f64) -> Option<Self>;
}

impl SpecScalar for f64 {
    fn point(ring: &FusionRing, t: &Rational) -> Result<Multiplier<Self>> {
        phi_point(ring, f64::from_rational(t))
    }
    fn measure(ring: &FusionRing, atoms: &[(Rational, Rational)]) -> Result<Multiplier<Self>> {
        let atoms: Vec<(f64, f64)> = atoms
            .iter()
            .map(|(t, w)| (f64::from_rational(t), f64::from_rational(w)))
            .collect();
        multiplier_from_measure(ring, &atoms)
    }
    fn from_parts(re: f64, im: f64) -> Option<Self> {
        (im == 0.0).then_some(re)
    }
}

impl SpecScalar for Rational {
    fn point(ring: &FusionRing, t: &Rational) -> Result<Multiplier<Self>> {
        phi_point(ring, t.clone())
    }
    fn measure(ring: &FusionRing, atoms: &[(Rational, Rational)]) -> Result<Multiplier<Self>> {
        multiplier_from_measure(ring, atoms)
    }
    fn from_parts(re: f64, im: f64) -> Option<Self> {
        if im != 0.0 {
            return None;
        }
        parse_rational(&re.to_string())
    }
}

fn lift(phi: Multiplier<f64>) -> Multiplier<Complex64> {
    let ring = phi.ring().clone();
    let description = phi.description().to_string();
    let cp = phi.claimed_cp();
    Multiplier::new(&ring, description, cp, move |l| Ok(Complex64::new(phi.eval(l)?, 0.0)))
}

impl SpecScalar for Complex64 {
    fn point(ring: &FusionRing, t: &Rational) -> Result<Multiplier<Self>> {
        f64::point(ring, t).map(lift)
    }
    fn measure(ring: &FusionRing, atoms: &[(Rational, Rational)]) -> Result<Multiplier<Self>> {
        f64::measure(ring, atoms).map(lift)
    }
    fn from_parts(re: f64, im: f64) -> Option<Self> {
        Some(Complex64::new(re, im))
    }
}
