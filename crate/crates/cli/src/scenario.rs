//! Scenario files: JSON with a top-level `kind` discriminator and a kind-specific `body`.

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use std::fmt;

/// A parse or validation failure; exit status 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    LagrangianIntersection,
    Kirwan,
    Localsys,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub homological: usize,
    pub internal: i64,
}

/// Hypotheses without a finite certificate, recorded as metadata.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub proper_over_affine: bool,
    #[serde(default)]
    pub finite_invariants: bool,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub kind: Kind,
    pub body: Body,
    pub window: Option<WindowSpec>,
    pub truncate: Option<usize>,
    pub flags: Flags,
}

#[derive(Clone, Debug)]
pub enum Body {
    Lagrangian(LagrangianBody),
    Kirwan(KirwanBody),
    Localsys(LocalsysBody),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangianBody {
    pub variables: Vec<String>,
    #[serde(default)]
    pub degrees: Option<Vec<u32>>,
    #[serde(default = "default_symplectic_degree")]
    pub symplectic_degree: u32,
    #[serde(default)]
    pub weights: Option<Vec<Vec<i64>>>,
    pub first: DescriptorSpec,
    pub second: DescriptorSpec,
    #[serde(default)]
    pub twists: TwistPair,
    #[serde(default)]
    pub expect: LagrangianExpect,
}

fn default_symplectic_degree() -> u32 {
    2
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DescriptorSpec {
    ZeroSection,
    GraphPotential { potential: String },
    GraphForm { components: Vec<String> },
    Conormal { coordinates: Vec<String> },
    /// Rational vectors in coordinates `(z.., w..)`, entries like `"1"` or `"-1/2"`.
    Linear { vectors: Vec<Vec<String>> },
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistPair {
    #[serde(default)]
    pub first: TwistSpec,
    #[serde(default)]
    pub second: TwistSpec,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum TwistSpec {
    #[default]
    Trivial,
    HalfCanonical,
    Character { degree: i64, weight: Vec<i64> },
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangianExpect {
    /// Error tag when construction must fail, e.g. `"intersection_not_clean"`.
    #[serde(default)]
    pub rejected: Option<String>,
    #[serde(default)]
    pub dim_b: Option<usize>,
    #[serde(default)]
    pub excess_rank: Option<usize>,
    /// `tor_rows[k]` lists `dim H^{-k}` at internal degrees `0, 1, ..`.
    #[serde(default)]
    pub tor_rows: Option<Vec<Vec<usize>>>,
    /// Equivariant Ext dimensions by total degree.
    #[serde(default)]
    pub equivariant_total: Option<Vec<usize>>,
    #[serde(default)]
    pub hessian: Option<HessianExpect>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HessianExpect {
    pub rank: usize,
    pub minor: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KirwanBody {
    pub weights: Vec<Vec<i64>>,
    pub chi: Vec<i64>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    /// Also run the induced action on the cotangent bundle.
    #[serde(default)]
    pub cotangent: bool,
    #[serde(default)]
    pub expect: KirwanExpect,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KirwanExpect {
    #[serde(default)]
    pub semistable: Option<String>,
    #[serde(default)]
    pub cotangent_semistable: Option<String>,
    /// Coefficients of `P_G(M^ss)`; missing higher coefficients are zero.
    #[serde(default)]
    pub residual: Option<Vec<i64>>,
    #[serde(default)]
    pub cotangent_residual: Option<Vec<i64>>,
    #[serde(default)]
    pub codims: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalsysBody {
    pub complex: ComplexSpec,
    pub monodromy: MonodromySpec,
    /// Number of sheets; defaults to the exact order of the monodromy.
    #[serde(default)]
    pub cover: Option<u32>,
    #[serde(default)]
    pub expect: LocalsysExpect,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComplexSpec {
    Point,
    Circle { vertices: usize },
    Torus { grid: usize },
    Facets { vertices: usize, facets: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromySpec {
    pub order: u32,
    /// `(u, v, a)`: transport along `u -> v` is `ζ^a`.
    #[serde(default)]
    pub edges: Vec<(usize, usize, i64)>,
    #[serde(default)]
    pub preset: Option<Preset>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    TorusSeam,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalsysExpect {
    #[serde(default)]
    pub base: Option<Vec<usize>>,
    #[serde(default)]
    pub twisted: Option<Vec<usize>>,
    #[serde(default)]
    pub cover: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario<'a> {
    kind: Kind,
    name: String,
    #[serde(borrow)]
    body: &'a RawValue,
    #[serde(default)]
    window: Option<WindowSpec>,
    #[serde(default)]
    truncate: Option<usize>,
    #[serde(default)]
    flags: Flags,
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

fn body_error(label: &str, src: &str, body: &RawValue, e: serde_json::Error) -> InputError {
    let offset = body.get().as_ptr() as usize - src.as_ptr() as usize;
    let (bl, bc) = line_col(src, offset);
    let (line, col) = if e.line() <= 1 { (bl, bc + e.column().saturating_sub(1)) } else { (bl + e.line() - 1, e.column()) };
    InputError(format!("{label}:{line}:{col}: body: {}", strip_position(&e)))
}

fn parse_body<'de, T: Deserialize<'de>>(label: &str, src: &str, body: &'de RawValue) -> Result<T, InputError> {
    serde_json::from_str(body.get()).map_err(|e| body_error(label, src, body, e))
}

/// Parses a scenario; diagnostics are prefixed with `label:line:column`.
pub fn parse_scenario(label: &str, src: &str) -> Result<Scenario, InputError> {
    let raw: RawScenario =
        serde_json::from_str(src).map_err(|e| InputError(format!("{label}:{}:{}: {}", e.line(), e.column(), strip_position(&e))))?;
    let body = match raw.kind {
        Kind::LagrangianIntersection => Body::Lagrangian(parse_body(label, src, raw.body)?),
        Kind::Kirwan => Body::Kirwan(parse_body(label, src, raw.body)?),
        Kind::Localsys => Body::Localsys(parse_body(label, src, raw.body)?),
    };
    Ok(Scenario { name: raw.name, kind: raw.kind, body, window: raw.window, truncate: raw.truncate, flags: raw.flags })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let k = parse_scenario("k", r#"{"kind":"kirwan","name":"c2","body":{"weights":[[1],[-1]],"chi":[1]}}"#).unwrap();
        assert!(matches!(k.body, Body::Kirwan(_)));
        let l = parse_scenario(
            "l",
            r#"{"kind":"localsys","name":"s1","body":{"complex":{"type":"circle","vertices":4},"monodromy":{"order":2,"edges":[[0,1,1]]}}}"#,
        )
        .unwrap();
        assert_eq!(l.kind, Kind::Localsys);
        let g = parse_scenario(
            "g",
            r#"{"kind":"lagrangian_intersection","name":"sq","body":{"variables":["x"],"first":{"type":"zero_section"},"second":{"type":"graph_potential","potential":"x^2"}},"window":{"homological":2,"internal":5},"flags":{"proper_over_affine":true}}"#,
        )
        .unwrap();
        assert!(g.flags.proper_over_affine && !g.flags.finite_invariants);
    }

    #[test]
    fn positions_point_into_the_file() {
        let e = parse_scenario("f.scn", "{\n  \"kind\": \"kirwan\",\n  \"name\": 3\n}").unwrap_err();
        assert!(e.0.starts_with("f.scn:3:"), "{e}");
        let src = "{\"kind\": \"kirwan\", \"name\": \"a\",\n \"body\": {\"weights\": [[1]],\n   \"chi\": [1], \"oops\": 1}}";
        let e = parse_scenario("f.scn", src).unwrap_err();
        assert!(e.0.starts_with("f.scn:3:") && e.0.contains("oops"), "{e}");
        let e = parse_scenario("f.scn", "{\"kind\": \"other\"}").unwrap_err();
        assert!(e.0.contains("unknown variant"), "{e}");
    }
}
