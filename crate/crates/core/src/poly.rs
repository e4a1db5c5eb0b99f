//! Dense univariate polynomials over any [`FieldSpec`].
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial has an empty coefficient list. The text form is
//! space-separated coefficients, lowest degree first.

use crate::field::{FieldError, FieldScalar, FieldSpec};
use num_bigint::BigUint;
use num_traits::Zero;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<FieldScalar>,
}

impl Polynomial {
    /// Trailing zeros are trimmed; all coefficients must share `spec`.
    pub fn new(spec: FieldSpec, mut coeffs: Vec<FieldScalar>) -> Self {
        for c in &coeffs {
            assert!(
                c.spec() == &spec,
                "coefficient spec {} does not match polynomial spec {}",
                c.spec(),
                spec
            );
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { spec, coeffs }
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Polynomial { spec, coeffs: Vec::new() }
    }

    pub fn one(spec: FieldSpec) -> Self {
        let one = spec.one();
        Polynomial::new(spec, vec![one])
    }

    pub fn x(spec: FieldSpec) -> Self {
        let coeffs = vec![spec.zero(), spec.one()];
        Polynomial::new(spec, coeffs)
    }

    pub fn constant(value: FieldScalar) -> Self {
        Polynomial::new(value.spec().clone(), vec![value.clone()])
    }

    /// Monic x - root.
    pub fn linear_from_root(root: &FieldScalar) -> Self {
        Polynomial::new(root.spec().clone(), vec![root.neg(), root.spec().one()])
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[FieldScalar] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<FieldScalar> {
        self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coefficient(&self, i: usize) -> FieldScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn leading_coefficient(&self) -> FieldScalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coefficient(i).add(&rhs.coefficient(i)))
            .collect();
        Polynomial::new(self.spec.clone(), coeffs)
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            spec: self.spec.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.spec.clone());
        }
        let mut coeffs = vec![self.spec.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Polynomial::new(self.spec.clone(), coeffs)
    }

    pub fn scale(&self, factor: &FieldScalar) -> Polynomial {
        Polynomial::new(
            self.spec.clone(),
            self.coeffs.iter().map(|c| c.mul(factor)).collect(),
        )
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.spec.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial::new(self.spec.clone(), coeffs)
    }

    /// Exact division with remainder: self = q*g + r with deg r < deg g.
    pub fn divmod(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial), FieldError> {
        if g.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let glead_inv = g.leading_coefficient().inv()?;
        let gdeg = g.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= gdeg {
            return Ok((Polynomial::zero(self.spec.clone()), self.clone()));
        }
        let mut quot = vec![self.spec.zero(); rem.len() - gdeg];
        while rem.len() > gdeg {
            let lead = rem.last().unwrap().clone();
            let k = rem.len() - 1 - gdeg;
            let factor = lead.mul(&glead_inv);
            if !factor.is_zero() {
                for (i, gc) in g.coeffs.iter().enumerate() {
                    rem[k + i] = rem[k + i].sub(&factor.mul(gc));
                }
                quot[k] = factor;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) && rem.len() > gdeg {
                rem.pop();
            }
        }
        Ok((
            Polynomial::new(self.spec.clone(), quot),
            Polynomial::new(self.spec.clone(), rem),
        ))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*other = g.
    /// g is not normalized monic here; callers scale as needed.
    pub fn extended_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let spec = self.spec.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::one(spec.clone()), Polynomial::zero(spec.clone()));
        let (mut t0, mut t1) = (Polynomial::zero(spec.clone()), Polynomial::one(spec));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("r1 nonzero");
            (r0, r1) = (r1, r);
            let s = s0.sub(&q.mul(&s1));
            (s0, s1) = (s1, s);
            let t = t0.sub(&q.mul(&t1));
            (t0, t1) = (t1, t);
        }
        (r0, s0, t0)
    }

    /// Normalize to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .leading_coefficient()
            .inv()
            .expect("leading coefficient nonzero");
        self.scale(&inv)
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &FieldScalar) -> FieldScalar {
        let mut acc = at.spec().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// x^e mod m, by square and multiply; the exponent may be astronomically
    /// large (finite-field orders), hence BigUint.
    pub fn modpow(&self, e: &BigUint, m: &Polynomial) -> Polynomial {
        let reduce = |p: &Polynomial| p.divmod(m).expect("modulus nonzero").1;
        let mut result = reduce(&Polynomial::one(self.spec.clone()));
        let mut base = reduce(self);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = reduce(&result.mul(&base));
            }
            if i + 1 < bits {
                base = reduce(&base.mul(&base));
            }
        }
        if e.is_zero() {
            result = reduce(&Polynomial::one(self.spec.clone()));
        }
        result
    }

    /// Parse whitespace-separated coefficients, lowest degree first.
    pub fn parse_text(spec: &FieldSpec, text: &str) -> Result<Polynomial, FieldError> {
        let coeffs = text
            .split_whitespace()
            .map(|tok| spec.parse_scalar(tok))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(spec.clone(), coeffs))
    }

    /// Parse comma-separated coefficients (the `--modulus`/field-spec form).
    pub fn parse_comma_list(spec: &FieldSpec, text: &str) -> Result<Polynomial, FieldError> {
        let mut coeffs = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    coeffs.push(spec.parse_scalar(trim_parens(&text[start..i]))?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        coeffs.push(spec.parse_scalar(trim_parens(&text[start..]))?);
        Ok(Polynomial::new(spec.clone(), coeffs))
    }
}

fn trim_parens(t: &str) -> &str {
    let t = t.trim();
    t.strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn qpoly(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(q(), coeffs.iter().map(|&c| q().from_int(c)).collect())
    }

    #[test]
    fn product_of_linear_factors() {
        // (x-1)(x-2) = x^2 - 3x + 2
        let f = qpoly(&[-1, 1]).mul(&qpoly(&[-2, 1]));
        assert_eq!(f, qpoly(&[2, -3, 1]));
    }

    #[test]
    fn gcd_is_monic_and_divides() {
        let f = qpoly(&[-1, 0, 1]); // x^2 - 1
        let g = qpoly(&[-1, 1]); // x - 1
        let d = f.gcd(&g);
        assert_eq!(d, qpoly(&[-1, 1]));
        let (_, r1) = f.divmod(&d).unwrap();
        let (_, r2) = g.divmod(&d).unwrap();
        assert!(r1.is_zero() && r2.is_zero());
    }

    #[test]
    fn divmod_exact_powers() {
        let f = qpoly(&[0, 0, 0, 1]); // x^3
        let g = qpoly(&[0, 0, 1]); // x^2
        let (quot, rem) = f.divmod(&g).unwrap();
        assert_eq!(quot, qpoly(&[0, 1]));
        assert!(rem.is_zero());
        assert!(f.divmod(&Polynomial::zero(q())).is_err());
    }

    #[test]
    fn divmod_reconstructs() {
        let f = qpoly(&[3, -2, 0, 7, 1]);
        let g = qpoly(&[1, 5, 2]);
        let (quot, rem) = f.divmod(&g).unwrap();
        assert_eq!(quot.mul(&g).add(&rem), f);
        assert!(rem.degree() < g.degree());
    }

    #[test]
    fn extended_gcd_bezout() {
        let f = qpoly(&[2, 3, 1]); // (x+1)(x+2)
        let g = qpoly(&[1, 1]); // x + 1
        let (d, s, t) = f.extended_gcd(&g);
        assert_eq!(s.mul(&f).add(&t.mul(&g)), d);
        assert_eq!(d.monic(), qpoly(&[1, 1]));
    }

    #[test]
    fn gcd_divides_both_property() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let fp = FieldSpec::prime(101).unwrap();
        for _ in 0..200 {
            let fdeg = rng.gen_range(0..5);
            let gdeg = rng.gen_range(0..5);
            let f = Polynomial::new(
                fp.clone(),
                (0..=fdeg).map(|_| fp.sample(&mut rng)).collect(),
            );
            let g = Polynomial::new(
                fp.clone(),
                (0..=gdeg).map(|_| fp.sample(&mut rng)).collect(),
            );
            let d = f.gcd(&g);
            if d.is_zero() {
                assert!(f.is_zero() && g.is_zero());
                continue;
            }
            assert!(d.leading_coefficient().is_one());
            assert!(f.divmod(&d).unwrap().1.is_zero());
            assert!(g.divmod(&d).unwrap().1.is_zero());
        }
    }

    #[test]
    fn eval_horner() {
        let f = qpoly(&[2, -3, 1]);
        assert!(f.eval(&q().from_int(1)).is_zero());
        assert!(f.eval(&q().from_int(2)).is_zero());
        assert_eq!(f.eval(&q().from_int(3)), q().from_int(2));
    }

    #[test]
    fn text_round_trip() {
        let f = Polynomial::parse_text(&q(), "2 -3 1").unwrap();
        assert_eq!(f, qpoly(&[2, -3, 1]));
        assert_eq!(f.to_string(), "2 -3 1");
        assert_eq!(Polynomial::zero(q()).to_string(), "0");
    }

    #[test]
    fn modpow_small() {
        // x^5 mod (x^2 - 1) over F_7: x^2 = 1, so x^5 = x.
        let fp = FieldSpec::prime(7).unwrap();
        let m = Polynomial::new(
            fp.clone(),
            vec![fp.from_int(-1), fp.zero(), fp.one()],
        );
        let r = Polynomial::x(fp.clone()).modpow(&BigUint::from(5u32), &m);
        assert_eq!(r, Polynomial::x(fp));
    }
}
