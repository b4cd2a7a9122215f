//! JSON formats for resolution data and twist bundles, plus the shipped
//! fixtures.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbolic::{canonical, parse_rational_function};
use crate::zeta::{check_z_at_zero, z_at_zero, ResolutionData, ZetaBundle};

fn json_error<E: std::fmt::Display>(err: serde_path_to_error::Error<serde_json::Error>, what: E) -> Error {
    let path = err.path().to_string();
    let inner = err.into_inner();
    let at = if path.is_empty() || path == "." {
        String::new()
    } else {
        format!(" at field '{path}'")
    };
    let msg = inner.to_string();
    let suffix = format!(" at line {} column {}", inner.line(), inner.column());
    let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
    Error::Json(format!(
        "{what}: line {}, column {}{at}: {msg}",
        inner.line(),
        inner.column()
    ))
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| json_error(e, what))
}

/// A parsed input together with the warnings raised while reading it.
#[derive(Clone, Debug)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

/// Reads and validates resolution data; a failed `Z(0) = 1` check is a
/// warning.
pub fn parse_resolution(text: &str) -> Result<Parsed<ResolutionData>> {
    let value: ResolutionData = from_json(text, "resolution data")?;
    value.validate()?;
    let mut warnings = Vec::new();
    if !check_z_at_zero(&value) {
        let msg = format!(
            "sum of chi(E_I°)/prod nu_i is {}, not 1; the data may not come from a resolution",
            z_at_zero(&value)
        );
        log::warn!("{msg}");
        warnings.push(msg);
    }
    Ok(Parsed { value, warnings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleEntryJson {
    pub twist: u64,
    pub num: String,
    pub den: String,
}

fn default_true() -> bool {
    true
}

fn default_variable() -> String {
    "s".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    #[serde(default = "default_variable")]
    pub variable: String,
    pub entries: Vec<BundleEntryJson>,
    #[serde(rename = "defaultZero", default = "default_true")]
    pub default_zero: bool,
}

pub fn parse_bundle(text: &str) -> Result<ZetaBundle> {
    let raw: BundleJson = from_json(text, "bundle")?;
    if raw.variable != "s" && raw.variable != "t" {
        return Err(Error::Invalid(format!(
            "bundle variable must be \"s\" or \"t\", found \"{}\"",
            raw.variable
        )));
    }
    let mut entries = BTreeMap::new();
    for (i, e) in raw.entries.iter().enumerate() {
        let field = |name: &str, src: &str| {
            parse_rational_function(src, &raw.variable)
                .map_err(|err| Error::Invalid(format!("entries[{i}].{name} (twist {}): {err}", e.twist)))
        };
        let num = field("num", &e.num)?;
        let den = field("den", &e.den)?;
        let z = num
            .checked_div(&den)
            .map_err(|_| Error::Invalid(format!("entries[{i}].den (twist {}) is zero", e.twist)))?;
        if entries.insert(e.twist, z).is_some() {
            return Err(Error::Invalid(format!("twist {} appears twice", e.twist)));
        }
    }
    ZetaBundle::new(entries, raw.default_zero)
}

pub fn bundle_to_json(bundle: &ZetaBundle) -> BundleJson {
    BundleJson {
        variable: "s".into(),
        entries: bundle
            .entries()
            .iter()
            .map(|(&twist, z)| BundleEntryJson {
                twist,
                num: canonical(&crate::symbolic::RationalFunction::from_poly(z.num().clone()), "s"),
                den: canonical(&crate::symbolic::RationalFunction::from_poly(z.den().clone()), "s"),
            })
            .collect(),
        default_zero: bundle.default_zero,
    }
}

/// Fixtures compiled into the binary, by file name.
pub const FIXTURES: &[(&str, &str)] = &[
    ("fermat_q2.json", include_str!("../fixtures/fermat_q2.json")),
    ("fermat_q3.json", include_str!("../fixtures/fermat_q3.json")),
    ("fermat_q4.json", include_str!("../fixtures/fermat_q4.json")),
    ("fermat_q5.json", include_str!("../fixtures/fermat_q5.json")),
    ("fermat_q6.json", include_str!("../fixtures/fermat_q6.json")),
    ("fermat_q7.json", include_str!("../fixtures/fermat_q7.json")),
    ("fermat_q8.json", include_str!("../fixtures/fermat_q8.json")),
    ("fermat_q9.json", include_str!("../fixtures/fermat_q9.json")),
    ("fermat_q10.json", include_str!("../fixtures/fermat_q10.json")),
    ("fermat_q11.json", include_str!("../fixtures/fermat_q11.json")),
    ("fermat_q12.json", include_str!("../fixtures/fermat_q12.json")),
    ("x5y6.json", include_str!("../fixtures/x5y6.json")),
    ("x5y6_resolution.json", include_str!("../fixtures/x5y6_resolution.json")),
    ("lvp.json", include_str!("../fixtures/lvp.json")),
    ("z2_minus_x2.json", include_str!("../fixtures/z2_minus_x2.json")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn fermat_resolution(q: i64) -> Option<ResolutionData> {
    fixture(&format!("fermat_q{q}.json")).map(|t| parse_resolution(t).expect("shipped fixture").value)
}
