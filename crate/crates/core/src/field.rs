//! Exact field arithmetic: arbitrary-precision rationals, machine-word prime
//! fields F_p, and simple extensions F[x]/(f).
//!
//! Every scalar carries its [`FieldSpec`] and is kept in canonical form:
//! reduced sign-normalized fractions, residues in `[0, p)`, and extension
//! elements reduced below the modulus degree with trailing zeros trimmed.
//! Equality of scalars is therefore equality of mathematical values.

use crate::poly::Polynomial;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field spec mismatch: {left} vs {right}")]
    SpecMismatch { left: String, right: String },
    #[error("element not invertible; the modulus is reducible with factor `{factor}`")]
    NotInvertible { factor: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad extension modulus: {0}")]
    BadModulus(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Description of a coefficient field: the rationals, a prime field with a
/// machine-word modulus, or a simple extension of another field spec.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    Extension(Arc<ExtensionSpec>),
}

/// F[x]/(modulus). The modulus must be monic and non-constant; irreducibility
/// is verified by root search through degree 3 (a root would be a linear
/// factor, and degree 2 or 3 polynomials are reducible exactly when they have
/// one). Above degree 3, or over bases where no root search is available,
/// irreducibility is taken on trust and `irreducibility_verified` stays false
/// so reports can flag it.
#[derive(PartialEq, Eq, Hash, Debug)]
pub struct ExtensionSpec {
    base: FieldSpec,
    modulus: Polynomial,
    irreducibility_verified: bool,
}

impl ExtensionSpec {
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("modulus is non-constant")
    }

    pub fn irreducibility_verified(&self) -> bool {
        self.irreducibility_verified
    }
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// Build F[x]/(modulus). Rejects non-monic or constant moduli and moduli
    /// of degree <= 3 that have a root in the base field.
    pub fn extension(base: FieldSpec, modulus: Polynomial) -> Result<Self, FieldError> {
        if modulus.spec() != &base {
            return Err(FieldError::SpecMismatch {
                left: modulus.spec().to_string(),
                right: base.to_string(),
            });
        }
        let deg = match modulus.degree() {
            None | Some(0) => {
                return Err(FieldError::BadModulus("modulus must be non-constant".into()))
            }
            Some(d) => d,
        };
        if !modulus.leading_coefficient().is_one() {
            return Err(FieldError::BadModulus("modulus must be monic".into()));
        }
        let mut verified = false;
        if deg <= 3 {
            match base_root_exists(&base, &modulus) {
                Some(true) => {
                    return Err(FieldError::BadModulus(format!(
                        "modulus `{modulus}` has a root in {base}, so it is reducible"
                    )))
                }
                Some(false) => verified = true,
                None => {}
            }
        }
        if deg == 1 {
            verified = true;
        }
        Ok(FieldSpec::Extension(Arc::new(ExtensionSpec {
            base,
            modulus,
            irreducibility_verified: verified,
        })))
    }

    /// Characteristic as a u64, with 0 meaning characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
            FieldSpec::Extension(ext) => ext.base.characteristic(),
        }
    }

    /// Number of elements for finite fields (towers over some F_p).
    pub fn element_count(&self) -> Option<BigUint> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(BigUint::from(*p)),
            FieldSpec::Extension(ext) => ext
                .base
                .element_count()
                .map(|q| q.pow(ext.degree() as u32)),
        }
    }

    /// True when some extension level in this spec could not have its modulus
    /// verified irreducible.
    pub fn has_unverified_modulus(&self) -> bool {
        match self {
            FieldSpec::Rationals | FieldSpec::Prime(_) => false,
            FieldSpec::Extension(ext) => {
                !ext.irreducibility_verified || ext.base.has_unverified_modulus()
            }
        }
    }

    pub fn zero(&self) -> FieldScalar {
        match self {
            FieldSpec::Rationals => FieldScalar {
                spec: self.clone(),
                repr: Repr::Rat(BigRational::zero()),
            },
            FieldSpec::Prime(_) => FieldScalar {
                spec: self.clone(),
                repr: Repr::Mod(0),
            },
            FieldSpec::Extension(_) => FieldScalar {
                spec: self.clone(),
                repr: Repr::Ext(Vec::new()),
            },
        }
    }

    pub fn one(&self) -> FieldScalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldScalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldScalar {
        match self {
            FieldSpec::Rationals => FieldScalar {
                spec: self.clone(),
                repr: Repr::Rat(BigRational::from_integer(v.clone())),
            },
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                FieldScalar {
                    spec: self.clone(),
                    repr: Repr::Mod(r.to_u64().expect("reduced residue fits u64")),
                }
            }
            FieldSpec::Extension(ext) => FieldScalar::ext_from_coeffs(
                self.clone(),
                vec![ext.base.from_bigint(v)],
            ),
        }
    }

    /// Uniform sample: residues over F_p, small integers over the rationals,
    /// coefficient-wise over extensions.
    pub fn sample(&self, rng: &mut impl Rng) -> FieldScalar {
        match self {
            FieldSpec::Rationals => self.from_int(rng.gen_range(-3..=3)),
            FieldSpec::Prime(p) => FieldScalar {
                spec: self.clone(),
                repr: Repr::Mod(rng.gen_range(0..*p)),
            },
            FieldSpec::Extension(ext) => {
                let coeffs = (0..ext.degree()).map(|_| ext.base.sample(rng)).collect();
                FieldScalar::ext_from_coeffs(self.clone(), coeffs)
            }
        }
    }

    pub fn sample_nonzero(&self, rng: &mut impl Rng) -> FieldScalar {
        loop {
            let s = self.sample(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Parse the CLI spec syntax: `q` | `fp:<p>` | `ext:<base>:<coeffs>`,
    /// with coefficients comma-separated, lowest degree first.
    pub fn parse_spec(text: &str) -> Result<Self, FieldError> {
        let (spec, rest) = Self::parse_prefix(text.trim())?;
        if !rest.is_empty() {
            return Err(FieldError::Parse(format!(
                "trailing input `{rest}` after field spec"
            )));
        }
        Ok(spec)
    }

    fn parse_prefix(text: &str) -> Result<(Self, &str), FieldError> {
        if let Some(rest) = text.strip_prefix("ext:") {
            let (base, rest) = Self::parse_prefix(rest)?;
            let rest = rest
                .strip_prefix(':')
                .ok_or_else(|| FieldError::Parse("expected `:<modulus>` after extension base".into()))?;
            let end = rest.find(':').unwrap_or(rest.len());
            let (coeff_text, rest) = rest.split_at(end);
            let coeffs = split_top_level_commas(coeff_text)
                .into_iter()
                .map(|c| base.parse_scalar(c))
                .collect::<Result<Vec<_>, _>>()?;
            let modulus = Polynomial::new(base.clone(), coeffs);
            Ok((Self::extension(base, modulus)?, rest))
        } else if let Some(rest) = text.strip_prefix("fp:") {
            let end = rest.find(':').unwrap_or(rest.len());
            let (digits, rest) = rest.split_at(end);
            let p: u64 = digits
                .parse()
                .map_err(|_| FieldError::Parse(format!("bad prime `{digits}`")))?;
            Ok((Self::prime(p)?, rest))
        } else if let Some(rest) = text.strip_prefix('q') {
            Ok((FieldSpec::Rationals, rest))
        } else {
            Err(FieldError::Parse(format!(
                "unknown field spec `{text}` (expected `q`, `fp:<p>`, or `ext:<base>:<coeffs>`)"
            )))
        }
    }

    /// Parse one scalar in this field's text form: `p/q` or `p` over the
    /// rationals, a residue over F_p, and comma-separated base coefficients
    /// (lowest first, parenthesized when themselves lists) over extensions.
    pub fn parse_scalar(&self, text: &str) -> Result<FieldScalar, FieldError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(FieldError::Parse("empty scalar".into()));
        }
        match self {
            FieldSpec::Rationals => {
                let r: BigRational = text
                    .parse()
                    .map_err(|e| FieldError::Parse(format!("bad rational `{text}`: {e}")))?;
                Ok(FieldScalar {
                    spec: self.clone(),
                    repr: Repr::Rat(r),
                })
            }
            FieldSpec::Prime(_) => {
                let v: BigInt = text
                    .parse()
                    .map_err(|e| FieldError::Parse(format!("bad residue `{text}`: {e}")))?;
                Ok(self.from_bigint(&v))
            }
            FieldSpec::Extension(ext) => {
                let text = strip_outer_parens(text);
                let coeffs = split_top_level_commas(text)
                    .into_iter()
                    .map(|c| ext.base.parse_scalar(strip_outer_parens(c)))
                    .collect::<Result<Vec<_>, _>>()?;
                if coeffs.len() > ext.degree() {
                    return Err(FieldError::Parse(format!(
                        "extension scalar `{text}` has {} coefficients, max {}",
                        coeffs.len(),
                        ext.degree()
                    )));
                }
                Ok(FieldScalar::ext_from_coeffs(self.clone(), coeffs))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
            FieldSpec::Extension(ext) => {
                let coeffs: Vec<String> = ext
                    .modulus
                    .coefficients()
                    .iter()
                    .map(|c| c.to_list_item())
                    .collect();
                write!(f, "ext:{}:{}", ext.base, coeffs.join(","))
            }
        }
    }
}

/// Split on commas that are not nested inside parentheses.
fn split_top_level_commas(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Strip one layer of parentheses, but only when the opening paren is matched
/// by the final character (so "(1),(2)" is left alone).
fn strip_outer_parens(text: &str) -> &str {
    let t = text.trim();
    if !t.starts_with('(') || !t.ends_with(')') {
        return t;
    }
    let mut depth = 0usize;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return if i == t.len() - 1 { &t[1..t.len() - 1] } else { t };
                }
            }
            _ => {}
        }
    }
    t
}

/// An exact element of some [`FieldSpec`], always in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldScalar {
    spec: FieldSpec,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
    /// Coefficients over the base field, lowest degree first, trailing zeros
    /// trimmed, length < extension degree.
    Ext(Vec<FieldScalar>),
}

impl FieldScalar {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod(v) => *v == 0,
            Repr::Ext(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod(v) => *v == 1,
            Repr::Ext(c) => c.len() == 1 && c[0].is_one(),
        }
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(v) => Some(*v),
            _ => None,
        }
    }

    /// Coefficients over the base field for extension elements, padded to the
    /// extension degree.
    pub fn extension_coefficients(&self) -> Option<Vec<FieldScalar>> {
        let ext = match &self.spec {
            FieldSpec::Extension(ext) => ext,
            _ => return None,
        };
        let coeffs = match &self.repr {
            Repr::Ext(c) => c,
            _ => return None,
        };
        let mut padded = coeffs.clone();
        while padded.len() < ext.degree() {
            padded.push(ext.base.zero());
        }
        Some(padded)
    }

    /// The generator x of F[x]/(f) (zero in degree-1 extensions).
    pub fn extension_generator(spec: &FieldSpec) -> Option<FieldScalar> {
        match spec {
            FieldSpec::Extension(ext) => {
                let base = &ext.base;
                Some(FieldScalar::ext_from_coeffs(
                    spec.clone(),
                    vec![base.zero(), base.one()],
                ))
            }
            _ => None,
        }
    }

    /// Embed a base-field scalar into an extension of it.
    pub fn embed_into(&self, ext_spec: &FieldSpec) -> Result<FieldScalar, FieldError> {
        match ext_spec {
            FieldSpec::Extension(ext) if ext.base == self.spec => Ok(FieldScalar::ext_from_coeffs(
                ext_spec.clone(),
                vec![self.clone()],
            )),
            _ => Err(FieldError::SpecMismatch {
                left: self.spec.to_string(),
                right: ext_spec.to_string(),
            }),
        }
    }

    fn ext_from_coeffs(spec: FieldSpec, mut coeffs: Vec<FieldScalar>) -> FieldScalar {
        let ext = match &spec {
            FieldSpec::Extension(ext) => ext.clone(),
            _ => panic!("ext_from_coeffs requires an extension spec"),
        };
        if coeffs.len() > ext.degree() {
            // Degree reached the modulus degree; reduce.
            let poly = Polynomial::new(ext.base.clone(), coeffs);
            let (_, rem) = poly
                .divmod(&ext.modulus)
                .expect("modulus is nonzero");
            coeffs = rem.into_coefficients();
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FieldScalar { spec, repr: Repr::Ext(coeffs) }
    }

    fn assert_same_spec(&self, rhs: &FieldScalar) {
        assert!(
            self.spec == rhs.spec,
            "field spec mismatch: {} vs {}",
            self.spec,
            rhs.spec
        );
    }

    fn check_same_spec(&self, rhs: &FieldScalar) -> Result<(), FieldError> {
        if self.spec == rhs.spec {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch {
                left: self.spec.to_string(),
                right: rhs.spec.to_string(),
            })
        }
    }

    pub fn add(&self, rhs: &FieldScalar) -> FieldScalar {
        self.assert_same_spec(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldScalar {
                spec: self.spec.clone(),
                repr: Repr::Rat(a + b),
            },
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.prime_modulus();
                FieldScalar {
                    spec: self.spec.clone(),
                    repr: Repr::Mod(addmod(*a, *b, p)),
                }
            }
            (Repr::Ext(a), Repr::Ext(b)) => {
                let n = a.len().max(b.len());
                let base = self.ext_base();
                let coeffs = (0..n)
                    .map(|i| {
                        let x = a.get(i).cloned().unwrap_or_else(|| base.zero());
                        let y = b.get(i).cloned().unwrap_or_else(|| base.zero());
                        x.add(&y)
                    })
                    .collect();
                FieldScalar::ext_from_coeffs(self.spec.clone(), coeffs)
            }
            _ => unreachable!("matching specs imply matching representations"),
        }
    }

    pub fn sub(&self, rhs: &FieldScalar) -> FieldScalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FieldScalar {
        match &self.repr {
            Repr::Rat(r) => FieldScalar {
                spec: self.spec.clone(),
                repr: Repr::Rat(-r),
            },
            Repr::Mod(v) => {
                let p = self.prime_modulus();
                FieldScalar {
                    spec: self.spec.clone(),
                    repr: Repr::Mod(if *v == 0 { 0 } else { p - *v }),
                }
            }
            Repr::Ext(c) => FieldScalar {
                spec: self.spec.clone(),
                repr: Repr::Ext(c.iter().map(|x| x.neg()).collect()),
            },
        }
    }

    pub fn mul(&self, rhs: &FieldScalar) -> FieldScalar {
        self.assert_same_spec(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => FieldScalar {
                spec: self.spec.clone(),
                repr: Repr::Rat(a * b),
            },
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.prime_modulus();
                FieldScalar {
                    spec: self.spec.clone(),
                    repr: Repr::Mod(mulmod(*a, *b, p)),
                }
            }
            (Repr::Ext(a), Repr::Ext(b)) => {
                if a.is_empty() || b.is_empty() {
                    return self.spec.zero();
                }
                let base = self.ext_base();
                let product = Polynomial::new(base.clone(), a.clone())
                    .mul(&Polynomial::new(base.clone(), b.clone()));
                FieldScalar::ext_from_coeffs(self.spec.clone(), product.into_coefficients())
            }
            _ => unreachable!("matching specs imply matching representations"),
        }
    }

    /// Multiplicative inverse. For extension elements this runs the extended
    /// Euclidean algorithm against the modulus; a nontrivial gcd is a
    /// certificate that the modulus is reducible and is reported, not
    /// panicked on.
    pub fn inv(&self) -> Result<FieldScalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &self.repr {
            Repr::Rat(r) => Ok(FieldScalar {
                spec: self.spec.clone(),
                repr: Repr::Rat(r.recip()),
            }),
            Repr::Mod(v) => {
                let p = self.prime_modulus();
                Ok(FieldScalar {
                    spec: self.spec.clone(),
                    repr: Repr::Mod(invmod(*v, p)?),
                })
            }
            Repr::Ext(coeffs) => {
                let ext = match &self.spec {
                    FieldSpec::Extension(ext) => ext.clone(),
                    _ => unreachable!(),
                };
                let a = Polynomial::new(ext.base.clone(), coeffs.clone());
                let (g, s, _) = a.extended_gcd(&ext.modulus);
                match g.degree() {
                    Some(0) => {
                        let scale = g.coefficient(0).inv()?;
                        let inv_poly = s.scale(&scale);
                        let (_, rem) = inv_poly.divmod(&ext.modulus).expect("modulus nonzero");
                        Ok(FieldScalar::ext_from_coeffs(
                            self.spec.clone(),
                            rem.into_coefficients(),
                        ))
                    }
                    _ => Err(FieldError::NotInvertible {
                        factor: g.monic().to_string(),
                    }),
                }
            }
        }
    }

    pub fn div(&self, rhs: &FieldScalar) -> Result<FieldScalar, FieldError> {
        self.check_same_spec(rhs)?;
        Ok(self.mul(&rhs.inv()?))
    }

    /// Checked arithmetic dispatch; reports `SpecMismatch` instead of
    /// panicking, for use at API boundaries.
    pub fn arith(&self, rhs: &FieldScalar, op: ScalarOp) -> Result<FieldScalar, FieldError> {
        self.check_same_spec(rhs)?;
        match op {
            ScalarOp::Add => Ok(self.add(rhs)),
            ScalarOp::Sub => Ok(self.sub(rhs)),
            ScalarOp::Mul => Ok(self.mul(rhs)),
            ScalarOp::Div => self.div(rhs),
        }
    }

    pub fn pow(&self, exp: u64) -> FieldScalar {
        let mut result = self.spec.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn pow_i64(&self, exp: i64) -> Result<FieldScalar, FieldError> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    fn prime_modulus(&self) -> u64 {
        match &self.spec {
            FieldSpec::Prime(p) => *p,
            _ => unreachable!("Mod repr implies prime spec"),
        }
    }

    fn ext_base(&self) -> &FieldSpec {
        match &self.spec {
            FieldSpec::Extension(ext) => &ext.base,
            _ => unreachable!("Ext repr implies extension spec"),
        }
    }

    /// Text form usable inside comma-separated lists: parenthesized when the
    /// plain form itself contains commas (nested extensions).
    pub fn to_list_item(&self) -> String {
        let s = self.to_string();
        if s.contains(',') {
            format!("({s})")
        } else {
            s
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => write!(f, "{r}"),
            Repr::Mod(v) => write!(f, "{v}"),
            Repr::Ext(c) => {
                if c.is_empty() {
                    return write!(f, "0");
                }
                let items: Vec<String> = c.iter().map(|x| x.to_list_item()).collect();
                write!(f, "{}", items.join(","))
            }
        }
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> Result<u64, FieldError> {
    // Extended Euclid on (a, p); p prime and a in (0, p).
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(FieldError::DivisionByZero);
    }
    let mut s = s0 % p as i128;
    if s < 0 {
        s += p as i128;
    }
    Ok(s as u64)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Does `poly` have a root in `base`? `None` when no search is available
/// (extensions of the rationals, or rational coefficients too large to
/// enumerate divisors for).
fn base_root_exists(base: &FieldSpec, poly: &Polynomial) -> Option<bool> {
    if poly.coefficient(0).is_zero() {
        return Some(true);
    }
    match base.element_count() {
        // Finite field with q elements: x^q - x is the product of all monic
        // linear polynomials, so gcd(x^q - x, f) is nontrivial exactly when
        // f has a root.
        Some(q) => {
            let xq = Polynomial::x(base.clone()).modpow(&q, poly);
            let x = Polynomial::x(base.clone());
            let g = xq.sub(&x).gcd(poly);
            Some(g.degree().map(|d| d >= 1).unwrap_or(false))
        }
        None => {
            if base != &FieldSpec::Rationals {
                return None;
            }
            rational_root_exists(poly)
        }
    }
}

/// Rational root theorem with trial-division divisor enumeration; gives up
/// (None) when the scaled constant or leading coefficient exceeds u64.
fn rational_root_exists(poly: &Polynomial) -> Option<bool> {
    // Clear denominators: multiply by the lcm of all coefficient denominators.
    let mut lcm = BigInt::one();
    for c in poly.coefficients() {
        let den = c.rational().expect("rational coefficients").denom().clone();
        lcm = num_integer::lcm(lcm, den);
    }
    let ints: Vec<BigInt> = poly
        .coefficients()
        .iter()
        .map(|c| {
            let r = c.rational().unwrap() * BigRational::from_integer(lcm.clone());
            r.to_integer()
        })
        .collect();
    let a0 = ints.first()?.abs();
    let an = ints.last()?.abs();
    let a0: u64 = a0.to_u64()?;
    let an: u64 = an.to_u64()?;
    if a0 == 0 {
        return Some(true);
    }
    if a0 > 1_000_000_000 || an > 1_000_000_000 {
        return None;
    }
    let spec = FieldSpec::Rationals;
    for p in divisors(a0) {
        for q in divisors(an) {
            for sign in [1i64, -1] {
                let candidate = FieldScalar {
                    spec: spec.clone(),
                    repr: Repr::Rat(BigRational::new(
                        BigInt::from(sign) * BigInt::from(p),
                        BigInt::from(q),
                    )),
                };
                if poly.eval(&candidate).is_zero() {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    fn qsqrt2() -> FieldSpec {
        // q[x]/(x^2 - 2)
        let base = q();
        let modulus = Polynomial::new(
            base.clone(),
            vec![base.from_int(-2), base.zero(), base.one()],
        );
        FieldSpec::extension(base, modulus).unwrap()
    }

    fn f7_i() -> FieldSpec {
        // F_7[x]/(x^2 + 1); -1 is not a square mod 7.
        let base = f7();
        let modulus = Polynomial::new(
            base.clone(),
            vec![base.one(), base.zero(), base.one()],
        );
        FieldSpec::extension(base, modulus).unwrap()
    }

    #[test]
    fn rational_arithmetic_canonical() {
        let spec = q();
        let half = spec.parse_scalar("1/2").unwrap();
        let third = spec.parse_scalar("1/3").unwrap();
        assert_eq!(half.add(&third), spec.parse_scalar("5/6").unwrap());

        // mul(-2/4, 3) reduces to -3/2.
        let a = spec.parse_scalar("-2/4").unwrap();
        let b = spec.from_int(3);
        let prod = a.mul(&b);
        assert_eq!(prod, spec.parse_scalar("-3/2").unwrap());
        assert_eq!(prod.to_string(), "-3/2");
    }

    #[test]
    fn prime_field_division() {
        let spec = f7();
        let one = spec.one();
        let three = spec.from_int(3);
        // 3 * 5 = 15 = 1 mod 7.
        assert_eq!(one.div(&three).unwrap(), spec.from_int(5));
        assert!(three.div(&spec.zero()).is_err());
    }

    #[test]
    fn extension_inverse_of_generator() {
        // In q[x]/(x^2-2): x * (x/2) = x^2/2 = 1.
        let spec = qsqrt2();
        let x = FieldScalar::extension_generator(&spec).unwrap();
        let inv = x.inv().unwrap();
        assert_eq!(inv, spec.parse_scalar("0,1/2").unwrap());
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn extension_inverse_in_f7_i() {
        // Value frozen after verifying (x+1)*(3x+4) = 3x^2+7x+4 = -3+4 = 1 mod 7.
        let spec = f7_i();
        let a = spec.parse_scalar("1,1").unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(inv, spec.parse_scalar("4,3").unwrap());
        assert!(a.mul(&inv).is_one(), "extended-gcd inverse fails product check");
        assert!(spec.one().inv().unwrap().is_one());
    }

    #[test]
    fn reducible_modulus_detected_by_inverse() {
        // x^2 - 1 factors, but passes no degree check if we sneak past the
        // constructor... the constructor itself must reject it.
        let base = q();
        let modulus = Polynomial::new(
            base.clone(),
            vec![base.from_int(-1), base.zero(), base.one()],
        );
        let err = FieldSpec::extension(base, modulus).unwrap_err();
        assert!(matches!(err, FieldError::BadModulus(_)));
    }

    #[test]
    fn unverified_modulus_above_degree_three() {
        // Degree 4: not checked, flagged unverified.
        let base = q();
        let modulus = Polynomial::new(
            base.clone(),
            vec![
                base.from_int(2),
                base.zero(),
                base.zero(),
                base.zero(),
                base.one(),
            ],
        );
        let spec = FieldSpec::extension(base, modulus).unwrap();
        assert!(spec.has_unverified_modulus());
        assert!(!qsqrt2().has_unverified_modulus());
    }

    #[test]
    fn spec_parse_round_trip() {
        for text in ["q", "fp:101", "ext:q:-2,0,1", "ext:fp:7:1,0,1"] {
            let spec = FieldSpec::parse_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(FieldSpec::parse_spec(&spec.to_string()).unwrap(), spec);
        }
        assert!(FieldSpec::parse_spec("fp:6").is_err());
        assert!(FieldSpec::parse_spec("zz").is_err());
    }

    #[test]
    fn nested_extension_scalars() {
        // (q[x]/(x^2-2))[y]/(y^2 - x) -- modulus y^2 - x over the base ext.
        let inner = qsqrt2();
        let x = FieldScalar::extension_generator(&inner).unwrap();
        let modulus = Polynomial::new(
            inner.clone(),
            vec![x.neg(), inner.zero(), inner.one()],
        );
        let outer = FieldSpec::extension(inner.clone(), modulus).unwrap();
        let y = FieldScalar::extension_generator(&outer).unwrap();
        let y2 = y.mul(&y);
        // y^2 = x embeds as constant coefficient x.
        assert_eq!(y2, x.embed_into(&outer).unwrap());
        // Round-trip the comma/paren text form.
        let parsed = outer.parse_scalar(&y2.to_list_item()).unwrap();
        assert_eq!(parsed, y2);
        let spec_text = outer.to_string();
        assert_eq!(FieldSpec::parse_spec(&spec_text).unwrap(), outer);
    }

    #[test]
    fn field_axioms_random_triples() {
        let specs = [q(), FieldSpec::prime(101).unwrap(), f7_i(), qsqrt2()];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in &specs {
            for _ in 0..1000 {
                let a = spec.sample(&mut rng);
                let b = spec.sample(&mut rng);
                let c = spec.sample(&mut rng);
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn canonical_forms_unique() {
        let spec = q();
        let a = spec.parse_scalar("2/4").unwrap();
        let b = spec.parse_scalar("1/2").unwrap();
        assert_eq!(a, b);
        let spec = f7();
        assert_eq!(spec.from_int(-1), spec.from_int(6));
        assert_eq!(spec.from_int(700), spec.zero());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(101));
        assert!(is_prime_u64(18446744073709551557)); // largest u64 prime
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(6));
    }

    #[test]
    fn spec_mismatch_reported() {
        let a = q().one();
        let b = f7().one();
        assert!(matches!(
            a.arith(&b, ScalarOp::Add),
            Err(FieldError::SpecMismatch { .. })
        ));
    }
}
