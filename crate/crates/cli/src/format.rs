//! JSON encodings. Every integer that can outgrow 64 bits is a decimal string.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use wittsen_core::sen::{Lattice, QMatrix, RationalSenModule, SenModule, SenRing};
use wittsen_core::series::{DigitElem, DigitRing, Dual, Eisenstein, SRing, SRingElem};
use wittsen_core::witt::WittVec;
use wittsen_core::{BaseRing, PAdic, ZPoly};

/// Input that does not match the expected shape.
#[derive(Debug, Error)]
#[error("schema: {0}")]
pub struct SchemaError(pub String);

pub type SchemaResult<T> = Result<T, SchemaError>;

pub fn schema<T>(msg: impl Into<String>) -> SchemaResult<T> {
    Err(SchemaError(msg.into()))
}

pub fn parse_biguint(s: &str) -> SchemaResult<BigUint> {
    s.parse().map_err(|_| SchemaError(format!("{s:?} is not a nonnegative decimal integer")))
}

pub fn parse_bigint(s: &str) -> SchemaResult<BigInt> {
    s.parse().map_err(|_| SchemaError(format!("{s:?} is not a decimal integer")))
}

pub fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn eisenstein(p: u64, coeffs: &[String]) -> SchemaResult<Eisenstein> {
    if !is_prime(p) {
        return schema(format!("p = {p} is not prime"));
    }
    let c = coeffs.iter().map(|s| parse_bigint(s)).collect::<SchemaResult<Vec<_>>>()?;
    Eisenstein::new(p, ZPoly::new(c)).map_err(|e| SchemaError(e.to_string()))
}

fn check_prec(n: u32) -> SchemaResult<u32> {
    if n == 0 || n > 100_000 {
        return schema(format!("precision {n} out of range"));
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PAdicJson {
    pub p: u64,
    #[serde(rename = "N")]
    pub prec: u32,
    pub residue: String,
}

impl PAdicJson {
    pub fn encode(x: &PAdic) -> Self {
        PAdicJson { p: x.prime(), prec: x.precision(), residue: x.residue().to_string() }
    }

    pub fn decode(&self) -> SchemaResult<PAdic> {
        if !is_prime(self.p) {
            return schema(format!("p = {} is not prime", self.p));
        }
        Ok(PAdic::new(self.p, check_prec(self.prec)?, parse_biguint(&self.residue)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SRingJson {
    #[serde(rename = "E")]
    pub e: Vec<String>,
    pub m: usize,
    #[serde(rename = "N")]
    pub prec: u32,
    pub coeffs: Vec<String>,
}

impl SRingJson {
    pub fn encode(x: &SRingElem) -> Self {
        let ring = x.ring();
        SRingJson {
            e: strings(ring.eisenstein().poly().coeffs()),
            m: ring.order(),
            prec: x.precision(),
            coeffs: strings(x.coeffs()),
        }
    }

    pub fn ring(&self, p: u64) -> SchemaResult<SRing> {
        Ok(SRing::new(eisenstein(p, &self.e)?, self.m))
    }

    pub fn decode_in(&self, ring: &SRing) -> SchemaResult<SRingElem> {
        let c = self.coeffs.iter().map(|s| parse_biguint(s)).collect::<SchemaResult<Vec<_>>>()?;
        ring.from_residues(c, check_prec(self.prec)?).map_err(|e| SchemaError(e.to_string()))
    }
}

/// Digits of `sum_j d_j(u) (E/p)^j`, with the ring they live in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DigitJson {
    #[serde(rename = "E")]
    pub e: Vec<String>,
    pub n: usize,
    #[serde(rename = "N")]
    pub prec: u32,
    pub digits: Vec<Vec<String>>,
}

impl DigitJson {
    pub fn encode(x: &DigitElem) -> Self {
        let ring = x.ring();
        DigitJson {
            e: strings(ring.eisenstein().poly().coeffs()),
            n: ring.digits(),
            prec: x.precision(),
            digits: x.digits().iter().map(|d| strings(d)).collect(),
        }
    }

    pub fn ring(&self, p: u64) -> SchemaResult<DigitRing> {
        Ok(DigitRing::new(eisenstein(p, &self.e)?, self.n))
    }

    pub fn decode_in(&self, ring: &DigitRing) -> SchemaResult<DigitElem> {
        let d = self
            .digits
            .iter()
            .map(|row| row.iter().map(|s| parse_biguint(s)).collect::<SchemaResult<Vec<_>>>())
            .collect::<SchemaResult<Vec<_>>>()?;
        ring.from_digits(d, check_prec(self.prec)?).map_err(|e| SchemaError(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualJson<T> {
    pub re: T,
    pub eps: T,
}

/// The ring of the components of a Witt vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Base {
    #[serde(rename = "Zp")]
    Zp { p: u64 },
    /// `Z_p[u]/(E^m)[eps]`.
    #[serde(rename = "S[eps]")]
    SDual { p: u64 },
    /// `S[[E/p]]/(E/p)^n [eps]`.
    #[serde(rename = "digits[eps]")]
    DigitDual { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elem {
    Zp(PAdicJson),
    SDual(DualJson<SRingJson>),
    DigitDual(DualJson<DigitJson>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WittJson {
    pub base: Base,
    #[serde(rename = "L")]
    pub length: usize,
    pub comps: Vec<Elem>,
}

/// Witt vectors over the rings the constructions use.
pub trait WittCodec: BaseRing {
    fn encode_witt(x: &WittVec<Self>) -> WittJson;
    fn decode_witt(j: &WittJson) -> SchemaResult<WittVec<Self>>;
}

fn witt_shape(j: &WittJson, expected: &str) -> SchemaResult<u64> {
    if j.comps.len() != j.length || j.length == 0 {
        return schema(format!("Witt vector claims L = {} but has {} components", j.length, j.comps.len()));
    }
    let p = match (&j.base, expected) {
        (Base::Zp { p }, "Zp") | (Base::SDual { p }, "S[eps]") | (Base::DigitDual { p }, "digits[eps]") => *p,
        (b, _) => return schema(format!("expected base {expected}, found {b:?}")),
    };
    if !is_prime(p) {
        return schema(format!("p = {p} is not prime"));
    }
    Ok(p)
}

impl WittCodec for PAdic {
    fn encode_witt(x: &WittVec<Self>) -> WittJson {
        WittJson {
            base: Base::Zp { p: x.prime() },
            length: x.len(),
            comps: x.comps().iter().map(|c| Elem::Zp(PAdicJson::encode(c))).collect(),
        }
    }

    fn decode_witt(j: &WittJson) -> SchemaResult<WittVec<Self>> {
        let p = witt_shape(j, "Zp")?;
        let comps = j
            .comps
            .iter()
            .map(|c| match c {
                Elem::Zp(x) if x.p == p => x.decode(),
                other => schema(format!("expected a p-adic over p = {p}, found {other:?}")),
            })
            .collect::<SchemaResult<_>>()?;
        Ok(WittVec::new(comps))
    }
}

impl WittCodec for Dual<SRingElem> {
    fn encode_witt(x: &WittVec<Self>) -> WittJson {
        WittJson {
            base: Base::SDual { p: x.prime() },
            length: x.len(),
            comps: x
                .comps()
                .iter()
                .map(|c| Elem::SDual(DualJson { re: SRingJson::encode(&c.re), eps: SRingJson::encode(&c.eps) }))
                .collect(),
        }
    }

    fn decode_witt(j: &WittJson) -> SchemaResult<WittVec<Self>> {
        let p = witt_shape(j, "S[eps]")?;
        let mut ring: Option<SRing> = None;
        let mut comps = Vec::new();
        for c in &j.comps {
            let Elem::SDual(d) = c else { return schema(format!("expected a dual S-element, found {c:?}")) };
            let r = match &ring {
                Some(r) => r.clone(),
                None => ring.insert(d.re.ring(p)?).clone(),
            };
            if d.re.ring(p)? != r || d.eps.ring(p)? != r {
                return schema("components live in different rings");
            }
            comps.push(Dual::new(d.re.decode_in(&r)?, d.eps.decode_in(&r)?));
        }
        Ok(WittVec::new(comps))
    }
}

impl WittCodec for Dual<DigitElem> {
    fn encode_witt(x: &WittVec<Self>) -> WittJson {
        WittJson {
            base: Base::DigitDual { p: x.prime() },
            length: x.len(),
            comps: x
                .comps()
                .iter()
                .map(|c| Elem::DigitDual(DualJson { re: DigitJson::encode(&c.re), eps: DigitJson::encode(&c.eps) }))
                .collect(),
        }
    }

    fn decode_witt(j: &WittJson) -> SchemaResult<WittVec<Self>> {
        let p = witt_shape(j, "digits[eps]")?;
        let mut ring: Option<DigitRing> = None;
        let mut comps = Vec::new();
        for c in &j.comps {
            let Elem::DigitDual(d) = c else { return schema(format!("expected a dual digit element, found {c:?}")) };
            let r = match &ring {
                Some(r) => r.clone(),
                None => ring.insert(d.re.ring(p)?).clone(),
            };
            if d.re.ring(p)? != r || d.eps.ring(p)? != r {
                return schema("components live in different rings");
            }
            comps.push(Dual::new(d.re.decode_in(&r)?, d.eps.decode_in(&r)?));
        }
        Ok(WittVec::new(comps))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SenRingJson {
    #[serde(rename = "E")]
    pub e: Vec<String>,
    pub n: usize,
    #[serde(rename = "N")]
    pub prec: u32,
}

/// `theta[i][j]` is the `u`-polynomial coefficient of `e_i` in `Theta(e_j)`, constant term first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SenModuleJson {
    pub p: u64,
    pub ring: SenRingJson,
    pub rank: usize,
    pub theta: Vec<Vec<Vec<String>>>,
}

fn square(rank: usize, rows: usize, cols: impl Iterator<Item = usize>) -> SchemaResult<()> {
    let mut cols = cols;
    if rows != rank || !cols.all(|c| c == rank) {
        return schema(format!("theta must be a {rank}x{rank} matrix"));
    }
    Ok(())
}

fn poly(coeffs: &[String]) -> SchemaResult<ZPoly> {
    Ok(ZPoly::new(coeffs.iter().map(|s| parse_bigint(s)).collect::<SchemaResult<_>>()?))
}

impl SenModuleJson {
    pub fn encode(m: &SenModule) -> Self {
        let base = m.base();
        SenModuleJson {
            p: base.prime(),
            ring: SenRingJson {
                e: strings(base.eisenstein().poly().coeffs()),
                n: base.order(),
                prec: base.precision(),
            },
            rank: m.rank(),
            theta: m.theta().iter().map(|row| row.iter().map(|x| strings(x.to_zpoly().coeffs())).collect()).collect(),
        }
    }

    pub fn decode(&self) -> SchemaResult<SenModule> {
        let e = eisenstein(self.p, &self.ring.e)?;
        if self.ring.n == 0 {
            return schema("n must be positive");
        }
        square(self.rank, self.theta.len(), self.theta.iter().map(Vec::len))?;
        let base = SenRing::new(e, self.ring.n, check_prec(self.ring.prec)?);
        let theta = self
            .theta
            .iter()
            .map(|row| row.iter().map(|c| Ok(base.ring().from_poly(&poly(c)?, base.precision()))).collect())
            .collect::<SchemaResult<Vec<Vec<_>>>>()?;
        SenModule::new(base, theta).map_err(|e| SchemaError(e.to_string()))
    }
}

/// Entry `{"num": f, "den_exp": s}` stands for `f(u) / p^s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalEntry {
    pub num: Vec<String>,
    pub den_exp: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalModuleJson {
    pub p: u64,
    #[serde(rename = "E")]
    pub e: Vec<String>,
    pub n: usize,
    pub rank: usize,
    pub theta: Vec<Vec<RationalEntry>>,
}

impl RationalModuleJson {
    pub fn encode(m: &RationalSenModule) -> Self {
        let ring = m.ring();
        RationalModuleJson {
            p: ring.prime(),
            e: strings(ring.eisenstein().poly().coeffs()),
            n: ring.order(),
            rank: m.rank(),
            theta: m
                .theta()
                .iter()
                .map(|row| row.iter().map(|(f, s)| RationalEntry { num: strings(f.coeffs()), den_exp: *s }).collect())
                .collect(),
        }
    }

    pub fn decode(&self) -> SchemaResult<RationalSenModule> {
        let e = eisenstein(self.p, &self.e)?;
        if self.n == 0 {
            return schema("n must be positive");
        }
        square(self.rank, self.theta.len(), self.theta.iter().map(Vec::len))?;
        let theta = self
            .theta
            .iter()
            .map(|row| row.iter().map(|x| Ok((poly(&x.num)?, x.den_exp))).collect())
            .collect::<SchemaResult<Vec<Vec<_>>>>()?;
        RationalSenModule::new(SRing::new(e, self.n), theta).map_err(|e| SchemaError(e.to_string()))
    }
}

pub fn rational(x: &BigRational) -> String {
    x.to_string()
}

pub fn rational_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(rational).collect()).collect()
}

pub fn qmatrix(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.size()).map(|i| (0..m.size()).map(|j| rational(m.get(i, j))).collect()).collect()
}

pub fn lattice_basis(l: &Lattice) -> Vec<Vec<String>> {
    rational_rows(l.basis())
}
