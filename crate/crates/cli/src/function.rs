//! JSON descriptions of slice functions.

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use slice_bergman::{Holo, KernelId, Quaternion, SliceFunction, StemPair, UnitImaginary};

use crate::CliError;

/// A function as given on the command line: a JSON object whose `type`
/// selects one of the shapes below.
#[derive(Debug)]
pub enum FunctionSpec {
    Polynomial(PolynomialSpec),
    IntrinsicRational(RationalSpec),
    Stem(StemSpec),
    KernelSection(KernelSectionSpec),
}

/// `Σ qⁿ cₙ`, coefficients as `[w, x, y, z]`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    coeffs: Vec<[f64; 4]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalSpec {
    num: Vec<f64>,
    den: Vec<f64>,
    den_pow: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StemSpec {
    #[serde(rename = "F")]
    f: HoloSpec,
    #[serde(rename = "G")]
    g: HoloSpec,
    i: [f64; 3],
    j: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSectionSpec {
    kernel: String,
    r: [f64; 4],
}

/// A holomorphic stem component.
#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum HoloSpec {
    /// Complex coefficients `[re, im]`, lowest degree first.
    Polynomial { coeffs: Vec<[f64; 2]> },
    RealRational { num: Vec<f64>, den: Vec<f64>, pow: u32 },
}

impl HoloSpec {
    fn build(self) -> Holo {
        match self {
            HoloSpec::Polynomial { coeffs } => Holo::Polynomial(coeffs.into_iter().map(|[a, b]| Complex64::new(a, b)).collect()),
            HoloSpec::RealRational { num, den, pow } => Holo::RealRational { num, den, pow },
        }
    }
}

impl FunctionSpec {
    pub fn build(self) -> Result<SliceFunction, CliError> {
        Ok(match self {
            FunctionSpec::Polynomial(p) => SliceFunction::polynomial(p.coeffs.into_iter().map(Quaternion::from_array).collect()),
            FunctionSpec::IntrinsicRational(r) => SliceFunction::intrinsic_rational(r.num, r.den, r.den_pow)?,
            FunctionSpec::Stem(s) => {
                let i = UnitImaginary::from_array(s.i)?;
                let j = UnitImaginary::from_array(s.j)?;
                SliceFunction::Stem(StemPair::new(s.f.build(), s.g.build(), i, j)?)
            }
            FunctionSpec::KernelSection(k) => {
                SliceFunction::kernel_section(k.kernel.parse::<KernelId>()?, Quaternion::from_array(k.r))?
            }
        })
    }
}

const TYPES: &str = "polynomial, intrinsic_rational, stem, kernel_section";

fn fields<T: DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        CliError::Function(format!("at `{path}`: {}", e.into_inner()))
    })
}

/// Parses `text` (or the file named after a leading `@`) into a function.
pub fn parse_function(text: &str) -> Result<SliceFunction, CliError> {
    let owned;
    let json = match text.strip_prefix('@') {
        Some(path) => {
            owned = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("reading {path}: {e}")))?;
            owned.as_str()
        }
        None => text,
    };
    let mut v: Value = serde_json::from_str(json)
        .map_err(|e| CliError::Function(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let obj = v.as_object_mut().ok_or_else(|| CliError::Function("expected a JSON object".into()))?;
    let ty = match obj.remove("type") {
        Some(Value::String(s)) => s,
        Some(other) => return Err(CliError::Function(format!("at `type`: expected a string, got {other}"))),
        None => return Err(CliError::Function(format!("missing field `type` (one of {TYPES})"))),
    };
    let spec = match ty.as_str() {
        "polynomial" => FunctionSpec::Polynomial(fields(v)?),
        "intrinsic_rational" => FunctionSpec::IntrinsicRational(fields(v)?),
        "stem" => FunctionSpec::Stem(fields(v)?),
        "kernel_section" => FunctionSpec::KernelSection(fields(v)?),
        other => return Err(CliError::Function(format!("at `type`: unknown function type `{other}` (one of {TYPES})"))),
    };
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_variant() {
        let f = parse_function(r#"{"type":"polynomial","coeffs":[[0,0,0,0],[1,0,0,0]]}"#).unwrap();
        assert!(matches!(f, SliceFunction::QuaternionPolynomial(ref c) if c.len() == 2));
        assert!(parse_function(r#"{"type":"polynomial","coeffs":[[0,0,0,0]],"extra":1}"#).is_err());
        let f = parse_function(r#"{"type":"intrinsic_rational","num":[1],"den":[1,-0.5],"den_pow":1}"#).unwrap();
        assert!(f.is_intrinsic());
        let f = parse_function(
            r#"{"type":"stem","F":{"type":"polynomial","coeffs":[[0,0],[1,0]]},"G":{"type":"real_rational","num":[1],"den":[2,1],"pow":1},"i":[1,0,0],"j":[0,1,0]}"#,
        )
        .unwrap();
        assert!(matches!(f, SliceFunction::Stem(_)));
        let f = parse_function(r#"{"type":"kernel_section","kernel":"ball_I","r":[0.3,0,0,0]}"#).unwrap();
        assert!(matches!(f, SliceFunction::KernelSection { .. }));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = parse_function(r#"{"type":"polynomial","coeffs":[[0,0,0,0],[1,0,0]]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("coeffs[1]"), "{msg}");
        let err = parse_function(r#"{"type":"polynomial","coeffs":[[0,0,0,0],"#).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let err = parse_function(r#"{"type":"polynomial","coefs":[]}"#).unwrap_err();
        assert!(err.to_string().contains("coefs"), "{err}");
        assert!(parse_function(r#"{"type":"nope"}"#).is_err());
        assert!(parse_function(r#"{"type":"kernel_section","kernel":"bf","r":[0,0,0,0]}"#).is_err());
    }
}
