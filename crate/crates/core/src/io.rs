//! JSON and CSV encodings.
//!
//! Exact rationals are written as `{"num": "...", "den": "..."}` with both
//! parts as decimal strings, so documents re-parse without loss. Floating
//! values are plain JSON numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dist::{JointPmf, Mode, MomentReport, Probability};
use crate::error::{Error, Result};
use crate::qcomb::Composition;

/// Wire form of an exact rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for BigRational {
    type Error = Error;

    fn try_from(r: &RationalJson) -> Result<Self> {
        let num: BigInt = r
            .num
            .parse()
            .map_err(|e| Error::Parse(format!("num {:?}: {e}", r.num)))?;
        let den: BigInt = r
            .den
            .parse()
            .map_err(|e| Error::Parse(format!("den {:?}: {e}", r.den)))?;
        if den == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

/// Mode-specific JSON encoding of a probability value.
pub trait JsonValue: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonValue for BigRational {
    fn to_json(&self) -> Value {
        serde_json::to_value(RationalJson::from(self)).expect("plain struct")
    }

    fn from_json(v: &Value) -> Result<Self> {
        let r: RationalJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("rational value: {e}")))?;
        BigRational::try_from(&r)
    }
}

impl JsonValue for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        v.as_f64()
            .ok_or_else(|| Error::Parse(format!("expected a number, got {v}")))
    }
}

/// Optional rational as JSON, `null` when absent.
pub fn optional_rational_json(r: Option<&BigRational>) -> Value {
    r.map_or(Value::Null, JsonValue::to_json)
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn u64_field(v: &Value, name: &str) -> Result<u64> {
    field(v, name)?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("field {name:?} is not an unsigned integer")))
}

fn check_mode<P: Probability>(doc: &Value) -> Result<()> {
    let mode: Mode = serde_json::from_value(field(doc, "mode")?.clone())
        .map_err(|e| Error::Parse(format!("mode: {e}")))?;
    if mode != P::MODE {
        return Err(Error::Parse(format!(
            "document mode is {mode}, expected {}",
            P::MODE
        )));
    }
    Ok(())
}

fn parse_doc(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))
}

pub fn joint_to_json<P: Probability + JsonValue>(pmf: &JointPmf<P>) -> Value {
    let entries: Vec<Value> = pmf
        .entries()
        .iter()
        .map(|((y, i), p)| json!({ "y": y.parts(), "i": i, "p": p.to_json() }))
        .collect();
    json!({ "n": pmf.n(), "k": pmf.k(), "mode": P::MODE, "entries": entries })
}

pub fn joint_from_json<P: Probability + JsonValue>(text: &str) -> Result<JointPmf<P>> {
    let doc = parse_doc(text)?;
    check_mode::<P>(&doc)?;
    let n = u32::try_from(u64_field(&doc, "n")?).map_err(|e| Error::Parse(e.to_string()))?;
    let k = u64_field(&doc, "k")? as usize;
    let mut entries = BTreeMap::new();
    let list = field(&doc, "entries")?
        .as_array()
        .ok_or_else(|| Error::Parse("entries is not an array".into()))?;
    for e in list {
        let parts: Vec<u32> = serde_json::from_value(field(e, "y")?.clone())
            .map_err(|err| Error::Parse(format!("y: {err}")))?;
        let y = Composition::new(parts)?;
        let i = u64_field(e, "i")?;
        let p = P::from_json(field(e, "p")?)?;
        entries.insert((y, i), p);
    }
    JointPmf::from_entries(n, k, entries)
}

/// Marginal pmf of `I` with its context.
pub fn marginal_to_json<P: Probability + JsonValue>(n: u32, k: usize, pmf: &[P]) -> Value {
    let rows: Vec<Value> = pmf
        .iter()
        .enumerate()
        .map(|(i, p)| json!({ "i": i, "p": p.to_json() }))
        .collect();
    json!({ "n": n, "k": k, "mode": P::MODE, "pmf": rows })
}

/// Inverse of [`marginal_to_json`]: `(n, k, pmf)`.
pub fn marginal_from_json<P: Probability + JsonValue>(text: &str) -> Result<(u32, usize, Vec<P>)> {
    let doc = parse_doc(text)?;
    check_mode::<P>(&doc)?;
    let n = u32::try_from(u64_field(&doc, "n")?).map_err(|e| Error::Parse(e.to_string()))?;
    let k = u64_field(&doc, "k")? as usize;
    let rows = field(&doc, "pmf")?
        .as_array()
        .ok_or_else(|| Error::Parse("pmf is not an array".into()))?;
    let mut pmf = Vec::with_capacity(rows.len());
    for (idx, row) in rows.iter().enumerate() {
        if u64_field(row, "i")? != idx as u64 {
            return Err(Error::Parse(format!("pmf row {idx} is out of order")));
        }
        pmf.push(P::from_json(field(row, "p")?)?);
    }
    Ok((n, k, pmf))
}

pub fn moments_to_json<P: Probability + JsonValue>(n: u32, k: usize, m: &MomentReport<P>) -> Value {
    json!({
        "n": n,
        "k": k,
        "mode": m.mode,
        "e_i": m.e_i.to_json(),
        "e_i2": m.e_i2.to_json(),
        "v_i": m.v_i.to_json(),
    })
}

pub fn moments_from_json<P: Probability + JsonValue>(text: &str) -> Result<MomentReport<P>> {
    let doc = parse_doc(text)?;
    check_mode::<P>(&doc)?;
    MomentReport::from_parts(
        P::from_json(field(&doc, "e_i")?)?,
        P::from_json(field(&doc, "e_i2")?)?,
        P::from_json(field(&doc, "v_i")?)?,
    )
}

/// Renders `v` with `digits` significant digits, shortest form.
pub fn format_float(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), v)
        .parse()
        .expect("formatted float parses");
    rounded.to_string()
}

/// Exact rational text, `a/b` or `a` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

/// Text rendering of a probability in its own mode.
pub trait Render {
    fn render(&self, digits: usize) -> String;
}

impl Render for BigRational {
    fn render(&self, _digits: usize) -> String {
        format_rational(self)
    }
}

impl Render for f64 {
    fn render(&self, digits: usize) -> String {
        format_float(*self, digits)
    }
}

/// Write CSV records (header first) into a string.
pub fn csv_string<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// Long-format joint table: `y, i, probability, decimal`.
pub fn joint_to_csv<P: Probability + Render>(pmf: &JointPmf<P>, digits: usize) -> Result<String> {
    csv_string(
        &["y", "i", "probability", "decimal"],
        pmf.entries().iter().map(|((y, i), p)| {
            [
                y.to_string(),
                i.to_string(),
                p.render(digits),
                format_float(p.as_f64(), digits),
            ]
        }),
    )
}

/// `i, probability, decimal`.
pub fn marginal_to_csv<P: Probability + Render>(pmf: &[P], digits: usize) -> Result<String> {
    csv_string(
        &["i", "probability", "decimal"],
        pmf.iter().enumerate().map(|(i, p)| {
            [
                i.to_string(),
                p.render(digits),
                format_float(p.as_f64(), digits),
            ]
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{joint_pmf, marginal_i_pmf, moments_of_i, ProbVector};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_wire_form() {
        let v = q(2, 27).to_json();
        assert_eq!(v, json!({ "num": "2", "den": "27" }));
        assert_eq!(BigRational::from_json(&v).unwrap(), q(2, 27));
        assert!(BigRational::from_json(&json!({ "num": "1", "den": "0" })).is_err());
        assert!(BigRational::from_json(&json!(0.5)).is_err());
    }

    #[test]
    fn joint_round_trip() {
        let p = ProbVector::new(vec![q(1, 2), q(1, 3), q(1, 6)]).unwrap();
        let pmf = joint_pmf(4, &p);
        let text = joint_to_json(&pmf).to_string();
        assert_eq!(joint_from_json::<BigRational>(&text).unwrap(), pmf);
        assert!(joint_from_json::<f64>(&text).is_err());
    }

    #[test]
    fn marginal_and_moment_round_trip() {
        let p = ProbVector::new(vec![q(1, 4), q(3, 4)]).unwrap();
        let pmf = marginal_i_pmf(5, &p);
        let text = marginal_to_json(5, 2, &pmf).to_string();
        assert_eq!(
            marginal_from_json::<BigRational>(&text).unwrap(),
            (5, 2, pmf)
        );

        let m = moments_of_i(5, &p);
        let text = moments_to_json(5, 2, &m).to_string();
        assert_eq!(moments_from_json::<BigRational>(&text).unwrap(), m);
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_float(0.0, 12), "0");
        assert_eq!(format_float(2.5e-20, 3), "0.000000000000000000025");
        assert_eq!(format_float(0.25, 12), "0.25");
    }

    #[test]
    fn csv_layout() {
        let p = ProbVector::<BigRational>::equal(2).unwrap();
        let text = joint_to_csv(&joint_pmf(1, &p), 6).unwrap();
        assert_eq!(
            text,
            "y,i,probability,decimal\n\"(0,1)\",0,1/2,0.5\n\"(1,0)\",0,1/2,0.5\n"
        );
    }
}
