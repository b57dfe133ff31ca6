//! JSON forms of the library objects. Field elements are lowercase hex
//! strings of their representative; projective points are written
//! normalized, and the read paths normalize again, so `read(write(x)) == x`.

use serde::{Deserialize, Serialize};

use crate::divisor::{HyperCurve, Infinity, MumfordDivisor};
use crate::edwards::EPoint;
use crate::error::{Error, Result};
use crate::family::{self, CurveParams};
use crate::field::{Fe, PrimeField};
use crate::model::ModelPoint;
use crate::poly::Poly;
use crate::proj;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub p: String,
    pub a: String,
    pub b: String,
    pub c: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frak_a: Option<String>,
    pub d: String,
    pub e: String,
    pub f: String,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    pub sextic: Vec<String>,
}

/// A model point (four coordinates per factor) or an Edwards point (two).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub u: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerJson {
    pub k: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LJson {
    pub l: Vec<String>,
}

/// `inf` is present only when the multiplicities at infinity do not follow
/// from the weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub u: Vec<String>,
    pub v: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inf: Option<[u8; 2]>,
}

fn parse_p(s: &str) -> Result<PrimeField> {
    let t = s.trim();
    let t = t.strip_prefix("0x").unwrap_or(t);
    let p =
        u64::from_str_radix(t, 16).map_err(|_| Error::Parse(format!("bad hex modulus {s:?}")))?;
    PrimeField::new(p)
}

fn parse_vec<const N: usize>(k: PrimeField, v: &[String], what: &str) -> Result<[Fe; N]> {
    if v.len() != N {
        return Err(Error::Parse(format!(
            "{what}: expected {N} entries, got {}",
            v.len()
        )));
    }
    let mut out = [k.zero(); N];
    for (o, s) in out.iter_mut().zip(v) {
        *o = k.parse_hex(s)?;
    }
    Ok(out)
}

fn hex<const N: usize>(v: &[Fe; N]) -> Vec<String> {
    v.iter().map(Fe::to_hex).collect()
}

pub fn field_to_json(k: PrimeField) -> FieldJson {
    FieldJson {
        p: format!("{:x}", k.modulus()),
    }
}

pub fn field_from_json(j: &FieldJson) -> Result<PrimeField> {
    parse_p(&j.p)
}

pub fn params_to_json(p: &CurveParams) -> ParamsJson {
    ParamsJson {
        p: format!("{:x}", p.field.modulus()),
        a: p.a.to_hex(),
        b: p.b.to_hex(),
        c: p.c.to_hex(),
        frak_a: p.frak_a.map(|x| x.to_hex()),
        d: p.d.to_hex(),
        e: p.e.to_hex(),
        f: p.f.to_hex(),
        g: p.g.to_hex(),
        delta: p.delta.map(|x| x.to_hex()),
        rho: p.rho.map(|x| x.to_hex()),
        sextic: hex(&p.sextic),
    }
}

/// Rebuilds the parameters from `frak_a, b, c` (or `a, b, c`) and checks
/// every derived field against the recomputed value.
pub fn params_from_json(j: &ParamsJson) -> Result<CurveParams> {
    let k = parse_p(&j.p)?;
    let [a, b, c] = parse_vec(k, &[j.a.clone(), j.b.clone(), j.c.clone()], "a, b, c")?;
    let params = match &j.frak_a {
        Some(s) => family::params_from_frak(k.parse_hex(s)?, b, c)?,
        None => family::params_from_abc(a, b, c)?,
    };
    if params_to_json(&params) != *j {
        return Err(Error::Parse(
            "derived constants do not match a, b, c".into(),
        ));
    }
    Ok(params)
}

pub fn model_point_to_json(p: &ModelPoint) -> PointJson {
    PointJson {
        u: hex(p.u()),
        y: hex(p.y()),
    }
}

pub fn model_point_from_json(k: PrimeField, j: &PointJson) -> Result<ModelPoint> {
    ModelPoint::new(parse_vec(k, &j.u, "u")?, parse_vec(k, &j.y, "y")?)
}

pub fn edwards_point_to_json(p: &EPoint) -> PointJson {
    PointJson {
        u: hex(p.u()),
        y: hex(p.y()),
    }
}

pub fn edwards_point_from_json(k: PrimeField, j: &PointJson) -> Result<EPoint> {
    EPoint::new(parse_vec(k, &j.u, "u")?, parse_vec(k, &j.y, "y")?)
}

pub fn kummer_to_json(k: &[Fe; 4]) -> KummerJson {
    KummerJson {
        k: hex(&proj::normalize(*k)),
    }
}

pub fn kummer_from_json(field: PrimeField, j: &KummerJson) -> Result<[Fe; 4]> {
    let v = parse_vec(field, &j.k, "k")?;
    if proj::is_zero_vec(&v) {
        return Err(Error::InvalidPoint("zero vector".into()));
    }
    Ok(proj::normalize(v))
}

pub fn l_to_json(l: &[Fe; 4]) -> LJson {
    LJson {
        l: hex(&proj::normalize(*l)),
    }
}

pub fn l_from_json(field: PrimeField, j: &LJson) -> Result<[Fe; 4]> {
    let v = parse_vec(field, &j.l, "l")?;
    if proj::is_zero_vec(&v) {
        return Err(Error::InvalidPoint("zero vector".into()));
    }
    Ok(proj::normalize(v))
}

/// Multiplicities at infinity implied by the weight, if unique.
fn implied_inf(curve: &HyperCurve, weight: usize) -> Option<[u8; 2]> {
    let rest = (2 - weight) as u8;
    match (curve.infinity(), weight) {
        (Infinity::Ramified, _) => Some([rest, 0]),
        (_, 0) => Some([1, 1]),
        (_, 2) => Some([0, 0]),
        _ => None,
    }
}

pub fn divisor_to_json(curve: &HyperCurve, d: &MumfordDivisor) -> DivisorJson {
    let inf = (implied_inf(curve, d.weight()) != Some(d.inf)).then_some(d.inf);
    DivisorJson {
        u: d.u.to_hex(),
        v: d.v.to_hex(),
        inf,
    }
}

pub fn divisor_from_json(curve: &HyperCurve, j: &DivisorJson) -> Result<MumfordDivisor> {
    let k = curve.field();
    let poly = |v: &[String]| -> Result<Poly> {
        Ok(Poly::new(
            k,
            v.iter()
                .map(|s| k.parse_hex(s))
                .collect::<Result<Vec<_>>>()?,
        ))
    };
    let (u, v) = (poly(&j.u)?, poly(&j.v)?);
    let w = u.deg().max(0) as usize;
    if w > 2 {
        return Err(Error::InvalidDivisor("u has degree above 2".into()));
    }
    let inf = match j.inf {
        Some(i) => i,
        None => implied_inf(curve, w)
            .ok_or_else(|| Error::Parse("inf is required for this divisor".into()))?,
    };
    let d = MumfordDivisor { u, v, inf };
    curve.validate(&d)?;
    Ok(d)
}

pub fn to_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn from_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edwards::EdwardsParams;
    use crate::{kummer, model};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example() -> CurveParams {
        let k = PrimeField::new(1201).unwrap();
        family::params_from_frak(k.elem(6), k.elem(7), k.elem(11)).unwrap()
    }

    #[test]
    fn params_round_trip() {
        let p = example();
        let j = params_to_json(&p);
        assert_eq!(j.p, "4b1");
        assert_eq!(j.c, "b");
        assert_eq!(j.sextic.len(), 7);
        let s = to_string(&j);
        let back = params_from_json(&from_str(&s).unwrap()).unwrap();
        assert_eq!(back, p);
        assert_eq!(params_to_json(&back), j);
        let k = p.field;
        let plain = family::params_from_abc(p.a, k.elem(3), k.elem(5)).unwrap();
        let pj = params_to_json(&plain);
        assert!(!to_string(&pj).contains("frak_a"));
        assert_eq!(params_from_json(&pj).unwrap(), plain);
    }

    #[test]
    fn params_reject_tampered_constants() {
        let mut j = params_to_json(&example());
        j.d = "1".into();
        assert!(matches!(params_from_json(&j), Err(Error::Parse(_))));
    }

    #[test]
    fn field_round_trip() {
        let k = PrimeField::new(1201).unwrap();
        let s = to_string(&field_to_json(k));
        assert_eq!(s, r#"{"p":"4b1"}"#);
        assert_eq!(field_from_json(&from_str(&s).unwrap()).unwrap(), k);
    }

    #[test]
    fn points_and_divisors_round_trip() {
        let p = example();
        let curve = p.jacobian_curve();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut samples = vec![curve.identity(), kummer::make_d1(&p).unwrap()];
        samples.extend((1..4).map(|i| kummer::torsion_e(&p, i)));
        samples.extend((0..30).map(|_| curve.random_class(&mut rng)));
        for d in &samples {
            let dj = divisor_to_json(curve, d);
            let back = divisor_from_json(curve, &from_str(&to_string(&dj)).unwrap()).unwrap();
            assert_eq!(&back, d);
            let pt = model::embed(&p, d).unwrap();
            let pj = model_point_to_json(&pt);
            assert_eq!(
                model_point_from_json(p.field, &from_str(&to_string(&pj)).unwrap()).unwrap(),
                pt
            );
            let kp = kummer::kummer_from_mumford(&p, d);
            let kj = kummer_to_json(&kp);
            assert!(proj::proj_eq(&kummer_from_json(p.field, &kj).unwrap(), &kp));
            let lp = kummer::l_of(&p, d);
            assert!(proj::proj_eq(
                &l_from_json(p.field, &l_to_json(&lp)).unwrap(),
                &lp
            ));
        }
        let id = divisor_to_json(curve, &curve.identity());
        assert_eq!(to_string(&id), r#"{"u":["1"],"v":[]}"#);
    }

    #[test]
    fn edwards_round_trip() {
        let k = PrimeField::new(1009).unwrap();
        let c = EdwardsParams::new(k.elem(11)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..20 {
            let p = c.embed(&c.random_w_point(&mut rng));
            let j = edwards_point_to_json(&p);
            assert_eq!(
                edwards_point_from_json(k, &from_str(&to_string(&j)).unwrap()).unwrap(),
                p
            );
        }
    }

    #[test]
    fn rejects_malformed() {
        let k = PrimeField::new(101).unwrap();
        let bad = PointJson {
            u: vec!["1".into(); 3],
            y: vec!["1".into(); 4],
        };
        assert!(matches!(
            model_point_from_json(k, &bad),
            Err(Error::Parse(_))
        ));
        let unreduced = PointJson {
            u: vec!["ff".into(); 4],
            y: vec!["1".into(); 4],
        };
        assert!(matches!(
            model_point_from_json(k, &unreduced),
            Err(Error::Parse(_))
        ));
        assert!(from_str::<PointJson>("{").is_err());
    }
}
