//! JSON wire formats. Rationals are written as `"p/q"` strings in lowest
//! terms with `q > 0`; integers as JSON numbers when they fit in `i64`.
//! Objects use sorted keys, so equal values serialize to equal bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::bv::{euler_characteristic, hodge_numbers, BVData};
use crate::catalog::CatalogName;
use crate::census::{total_euler, FiberCensus, FiberRecord, Kodaira, ValidatedCensus};
use crate::complex::ComplexRational;
use crate::error::{Error, Result};
use crate::involution::{LatticeInvolution, RealFiberType};
use crate::lattice::{IntMatrix, IntegerLattice, LatticeVector, RationalVector, Sublattice};
use crate::leray::{SpectralTable, TensorPeriod};
use crate::mirror_lattice::{check_admissible, construct_mirror, MirrorSplit};
use crate::period::{PeriodVector, TubePoint};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => Value::String(n.to_string()),
    }
}

pub fn rational_to_json(q: &BigRational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn complex_to_json(z: &ComplexRational) -> Value {
    json!({ "re": rational_to_json(&z.re), "im": rational_to_json(&z.im) })
}

pub fn parse_rational_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(parse_err(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational_str(s),
        Value::Number(n) => n
            .as_i64()
            .map(|x| BigRational::from_integer(x.into()))
            .ok_or_else(|| {
                parse_err(format!(
                    "non-integer number {n}; write rationals as \"p/q\""
                ))
            }),
        _ => Err(parse_err(format!("expected a rational, found {v}"))),
    }
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_err(format!("expected an integer, found {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("expected an integer, found {s:?}"))),
        _ => Err(parse_err(format!("expected an integer, found {v}"))),
    }
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

pub fn parse_int_vec(v: &Value) -> Result<Vec<BigInt>> {
    as_array(v, "vector")?.iter().map(parse_int).collect()
}

pub fn parse_rational_vec(v: &Value) -> Result<RationalVector> {
    Ok(RationalVector(
        as_array(v, "vector")?
            .iter()
            .map(parse_rational)
            .collect::<Result<_>>()?,
    ))
}

pub fn parse_int_matrix(v: &Value, cols: Option<usize>) -> Result<IntMatrix> {
    let rows: Vec<Vec<BigInt>> = as_array(v, "matrix")?
        .iter()
        .map(parse_int_vec)
        .collect::<Result<_>>()?;
    let cols = cols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    IntMatrix::from_rows(&rows, cols)
}

pub fn int_vec_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn rational_vec_to_json(v: &RationalVector) -> Value {
    Value::Array(v.0.iter().map(rational_to_json).collect())
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(m.iter_rows().map(int_vec_to_json).collect())
}

/// A comma-separated list such as `1,0,-1/2`, or a JSON array.
pub fn parse_rational_list(s: &str) -> Result<RationalVector> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| parse_err(e.to_string()))?;
        return parse_rational_vec(&v);
    }
    if t.is_empty() {
        return Ok(RationalVector(Vec::new()));
    }
    Ok(RationalVector(
        t.split(',')
            .map(parse_rational_str)
            .collect::<Result<_>>()?,
    ))
}

pub fn parse_int_list(s: &str) -> Result<LatticeVector> {
    let q = parse_rational_list(s)?;
    let ints =
        q.0.iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer())
                } else {
                    Err(parse_err(format!("expected an integer, found {x}")))
                }
            })
            .collect::<Result<_>>()?;
    Ok(LatticeVector(ints))
}

/// A catalog name, a `+`-separated direct sum of names (`"U+U+E8-"`, where
/// a bare `U` means `U:1`), a Gram matrix, or `{"gram": [[...]]}`.
pub fn parse_lattice(v: &Value) -> Result<IntegerLattice> {
    match v {
        Value::String(s) => {
            let mut acc = IntegerLattice::empty();
            for part in s.split('+') {
                let part = part.trim();
                let name: CatalogName = if part == "U" {
                    CatalogName::U(1)
                } else {
                    part.parse()?
                };
                acc = acc.direct_sum(&name.lattice()?);
            }
            Ok(acc)
        }
        Value::Array(_) => IntegerLattice::new(parse_int_matrix(v, None)?),
        Value::Object(_) => IntegerLattice::new(parse_int_matrix(field(v, "gram")?, None)?),
        _ => Err(parse_err(
            "lattice: expected a name, a Gram matrix, or an object",
        )),
    }
}

pub fn lattice_to_json(l: &IntegerLattice) -> Value {
    json!({ "rank": l.rank(), "gram": int_matrix_to_json(l.gram()) })
}

pub fn lattice_info(l: &IntegerLattice) -> Value {
    let (det, inertia) = l.det_and_signature();
    json!({
        "rank": l.rank(),
        "signature": [inertia.positive, inertia.negative],
        "even": l.is_even(),
        "det": int_to_json(&det),
    })
}

pub fn sublattice_to_json(s: &Sublattice) -> Value {
    json!({ "ambient": lattice_to_json(s.ambient()), "basis": int_matrix_to_json(s.basis()) })
}

pub fn parse_sublattice(v: &Value) -> Result<Sublattice> {
    let l = parse_lattice(field(v, "ambient")?)?;
    let basis = parse_int_matrix(field(v, "basis")?, Some(l.rank()))?;
    Sublattice::spanned_by(&l, &basis)
}

pub fn split_to_json(s: &MirrorSplit) -> Value {
    json!({
        "lattice": lattice_to_json(s.t().ambient()),
        "t": int_matrix_to_json(s.t().basis()),
        "e": int_vec_to_json(&s.e().0),
        "e_prime": int_vec_to_json(&s.e_prime().0),
        "m": int_to_json(s.m()),
        "p": int_matrix_to_json(s.p().basis()),
        "m_check": int_matrix_to_json(s.m_check().basis()),
        "m_check_gram": int_matrix_to_json(&s.m_check().gram()),
        "section_class": int_vec_to_json(&s.section_class().0),
    })
}

/// Rebuilds a split from `lattice`, `t`, `e`, `e_prime` and `m`, rerunning
/// every admissibility check; other fields are ignored.
pub fn parse_split(v: &Value) -> Result<MirrorSplit> {
    let l = parse_lattice(field(v, "lattice")?)?;
    let t = match v.get("t") {
        Some(b) => Sublattice::spanned_by(&l, &parse_int_matrix(b, Some(l.rank()))?)?,
        None => Sublattice::full(&l),
    };
    let e = LatticeVector(parse_int_vec(field(v, "e")?)?);
    let e_prime = LatticeVector(parse_int_vec(field(v, "e_prime")?)?);
    let m = parse_int(field(v, "m")?)?;
    construct_mirror(&check_admissible(&t, &e, &e_prime, &m)?)
}

pub fn period_to_json(p: &PeriodVector) -> Value {
    json!({ "re": rational_vec_to_json(p.re()), "im": rational_vec_to_json(p.im()) })
}

pub fn tube_to_json(p: &TubePoint) -> Value {
    json!({ "b": rational_vec_to_json(p.b()), "omega": rational_vec_to_json(p.omega()) })
}

pub fn involution_to_json(rho: &LatticeInvolution) -> Value {
    json!({ "lattice": lattice_to_json(rho.lattice()), "matrix": int_matrix_to_json(rho.matrix()) })
}

pub fn parse_involution(v: &Value) -> Result<LatticeInvolution> {
    let l = parse_lattice(field(v, "lattice")?)?;
    let a = parse_int_matrix(field(v, "matrix")?, Some(l.rank()))?;
    LatticeInvolution::new(l, a)
}

fn record_to_json(r: &FiberRecord) -> Value {
    json!({
        "kodaira": r.kodaira.as_str(),
        "fixed": r.fixed,
        "real": r.real.map(|t| t.as_str()),
    })
}

fn parse_record(v: &Value) -> Result<FiberRecord> {
    let kodaira: Kodaira = field(v, "kodaira")?
        .as_str()
        .ok_or_else(|| parse_err("kodaira: expected a string"))?
        .parse()?;
    let fixed = field(v, "fixed")?
        .as_bool()
        .ok_or_else(|| parse_err("fixed: expected a boolean"))?;
    let real = match v.get("real") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse::<RealFiberType>()?),
        Some(other) => {
            return Err(parse_err(format!(
                "real: expected a string or null, found {other}"
            )))
        }
    };
    Ok(FiberRecord {
        kodaira,
        fixed,
        real,
    })
}

pub fn census_to_json(c: &FiberCensus) -> Value {
    json!({
        "n": c.bv.n(),
        "nprime": c.bv.n_prime(),
        "fibers": c.records.iter().map(record_to_json).collect::<Vec<_>>(),
    })
}

pub fn parse_census(v: &Value) -> Result<FiberCensus> {
    let n = field(v, "n")?
        .as_i64()
        .ok_or_else(|| parse_err("n: expected an integer"))?;
    let np = field(v, "nprime")?
        .as_i64()
        .ok_or_else(|| parse_err("nprime: expected an integer"))?;
    let records = as_array(field(v, "fibers")?, "fibers")?
        .iter()
        .map(parse_record)
        .collect::<Result<_>>()?;
    Ok(FiberCensus {
        bv: BVData::new(n, np)?,
        records,
    })
}

pub fn census_report(c: &ValidatedCensus) -> Result<Value> {
    Ok(json!({
        "valid": true,
        "k": c.k(),
        "total_euler": total_euler(c)?,
    }))
}

pub fn hodge_to_json(d: &BVData) -> Result<Value> {
    let h = hodge_numbers(d)?;
    Ok(json!({ "h11": h.h11, "h21": h.h21, "euler": euler_characteristic(d) }))
}

pub fn table_to_json(t: &SpectralTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .iter()
        .map(|(&(p, q), e)| json!({ "p": p, "q": q, "dim": e.dim(), "label": e.label() }))
        .collect();
    json!({ "entries": entries, "antidiagonal_sums": t.antidiagonal_sums() })
}

pub fn tensor_period_to_json(t: &TensorPeriod) -> Value {
    let mut m = Map::new();
    for ((b, c), z) in &t.components {
        m.insert(format!("{b}⊗{c}"), complex_to_json(z));
    }
    json!({ "components": Value::Object(m) })
}

pub fn error_to_json(e: &Error) -> Value {
    json!({ "error": { "code": e.code(), "message": e.to_string() } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip_canonically() {
        let q = parse_rational_str("6/-4").unwrap();
        assert_eq!(rational_to_json(&q), json!("-3/2"));
        assert_eq!(
            rational_to_json(&parse_rational(&json!(5)).unwrap()),
            json!("5/1")
        );
        assert!(parse_rational_str("1/0").is_err());
        assert!(parse_rational(&json!(0.5)).is_err());
        assert_eq!(
            parse_rational_list("1, -1/2 ,0").unwrap(),
            RationalVector::from_ratios(&[(1, 1), (-1, 2), (0, 1)])
        );
        assert_eq!(
            parse_int_list("[1,0,\"-2\"]").unwrap(),
            LatticeVector::from_i64(&[1, 0, -2])
        );
        assert!(parse_int_list("1/2").is_err());
    }

    #[test]
    fn lattice_specs() {
        let k3 = parse_lattice(&json!("K3")).unwrap();
        assert_eq!(
            serde_json::to_string(&lattice_info(&k3)).unwrap(),
            r#"{"det":-1,"even":true,"rank":22,"signature":[3,19]}"#
        );
        let uuu = parse_lattice(&json!("U+U+U")).unwrap();
        assert_eq!(uuu.rank(), 6);
        let g = parse_lattice(&json!({"gram": [[0, 2], [2, 0]]})).unwrap();
        assert_eq!(g, parse_lattice(&json!("U:2")).unwrap());
        assert!(parse_lattice(&json!([[0, 1], [2, 0]])).is_err());
    }

    #[test]
    fn split_round_trip() {
        let v = json!({"lattice": "U+U", "e": [1, 0, 0, 0], "e_prime": [0, 1, 0, 0], "m": 1});
        let s = parse_split(&v).unwrap();
        let out = split_to_json(&s);
        assert_eq!(parse_split(&out).unwrap(), s);
    }

    #[test]
    fn census_round_trip() {
        let c = crate::census::census_from_counts(BVData::new(3, 4).unwrap(), 0, 1, 0).unwrap();
        let v = census_to_json(c.census());
        assert_eq!(&parse_census(&v).unwrap(), c.census());
        assert_eq!(
            census_report(&c).unwrap(),
            json!({"valid": true, "k": 0, "total_euler": -12})
        );
    }
}
