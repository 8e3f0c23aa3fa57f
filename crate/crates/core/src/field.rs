//! Exact arithmetic in F_q, q = p^e with p an odd prime, together with the
//! fixed nontrivial additive character theta.
//!
//! Elements are stored as indices 0..q encoding the power-basis coordinate
//! vector in base p (low-degree digit least significant), so the index order
//! doubles as the canonical field-element order. All operations go through
//! lookup tables built once per [`FieldSpec`].
//!
//! theta(a) = zeta_p^Tr(a); any nontrivial additive character gives an
//! isomorphic theory, and the trace form is canonical and deterministic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclotomic::Cyclo;

/// Hard bound on q so the q x q operation tables stay small.
pub const MAX_Q: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    NotOddPrime(u32),
    BadDegree(u32),
    TooLarge { q: u64 },
    BadModulus(String),
    Reducible(String),
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotOddPrime(p) => write!(f, "p = {p} is not an odd prime"),
            FieldError::BadDegree(e) => write!(f, "extension degree {e} is not positive"),
            FieldError::TooLarge { q } => write!(f, "q = {q} exceeds the field cap {MAX_Q}"),
            FieldError::BadModulus(s) => write!(f, "bad modulus: {s}"),
            FieldError::Reducible(s) => write!(f, "modulus {s} is reducible over F_p"),
            FieldError::DivisionByZero => write!(f, "inversion of zero"),
        }
    }
}

/// Element of F_q, a compact index into the owning [`FieldSpec`]'s tables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomials over F_p, low-degree first, used only during table
/// construction.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, modulus, p)
}

fn poly_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut rem: Vec<u32> = a.to_vec();
    if rem.len() < e {
        rem.resize(e, 0);
    }
    for k in (e..rem.len()).rev() {
        let c = rem[k];
        if c != 0 {
            // modulus is monic
            for (i, &m) in modulus.iter().enumerate() {
                let idx = k - e + i;
                rem[idx] = (rem[idx] + p * p - (c * m) % p) % p;
            }
        }
    }
    rem.truncate(e);
    rem
}

fn poly_is_zero(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Trial factorization: a monic polynomial of degree e is irreducible iff no
/// monic polynomial of degree 1..=e/2 divides it.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    for d in 1..=e / 2 {
        // all monic divisor candidates of degree d
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = vec![0u32; d + 1];
            let mut t = idx;
            for c in cand.iter_mut().take(d) {
                *c = (t % p as u64) as u32;
                t /= p as u64;
            }
            cand[d] = 1;
            // remainder of modulus by cand
            let mut rem: Vec<u32> = modulus.to_vec();
            for k in (d..rem.len()).rev() {
                let c = rem[k];
                if c != 0 {
                    for (i, &m) in cand.iter().enumerate() {
                        let j = k - d + i;
                        rem[j] = (rem[j] + p * p - (c * m) % p) % p;
                    }
                }
            }
            rem.truncate(d);
            if poly_is_zero(&rem) {
                return false;
            }
        }
    }
    true
}

fn poly_string(coeffs: &[u32]) -> String {
    let mut s = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if !s.is_empty() {
            s.push_str(" + ");
        }
        match k {
            0 => s.push_str(&format!("{c}")),
            1 => s.push_str(&format!("{c}*t")),
            _ => s.push_str(&format!("{c}*t^{k}")),
        }
    }
    s
}

/// The field F_q with its operation tables, trace table and the additive
/// character theta.
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
    trace_t: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (p={}, e={})", self.q, self.p, self.e)
    }
}

impl FieldSpec {
    /// Builds F_(p^e). With `modulus = None` the lexicographically smallest
    /// monic irreducible of degree e is chosen (coefficients compared
    /// low-degree-first), which for e = 1 is just t.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<FieldSpec, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        if e == 0 {
            return Err(FieldError::BadDegree(e));
        }
        let q64 = (p as u64)
            .checked_pow(e)
            .ok_or(FieldError::TooLarge { q: u64::MAX })?;
        if q64 > MAX_Q as u64 {
            return Err(FieldError::TooLarge { q: q64 });
        }
        let q = q64 as u32;

        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(FieldError::BadModulus(format!(
                        "expected degree {e}, got {} coefficients",
                        m.len()
                    )));
                }
                let m: Vec<u32> = m.iter().map(|&c| c % p).collect();
                if m[e as usize] != 1 {
                    return Err(FieldError::BadModulus("modulus must be monic".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(FieldError::Reducible(poly_string(&m)));
                }
                m
            }
            None => Self::default_modulus(p, e),
        };

        // element idx <-> coefficient digits, low-degree least significant
        let digits = |idx: u32| -> Vec<u32> {
            let mut d = vec![0u32; e as usize];
            let mut t = idx;
            for dk in d.iter_mut() {
                *dk = t % p;
                t /= p;
            }
            d
        };
        let undigits = |d: &[u32]| -> u32 {
            let mut idx = 0u32;
            for &c in d.iter().rev() {
                idx = idx * p + c;
            }
            idx
        };

        let mut add_t = vec![0u16; (q * q) as usize];
        let mut mul_t = vec![0u16; (q * q) as usize];
        let mut neg_t = vec![0u16; q as usize];
        for a in 0..q {
            let da = digits(a);
            let dn: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            neg_t[a as usize] = undigits(&dn) as u16;
            for b in 0..=a {
                let db = digits(b);
                let ds: Vec<u32> = da
                    .iter()
                    .zip(db.iter())
                    .map(|(&x, &y)| (x + y) % p)
                    .collect();
                let s = undigits(&ds) as u16;
                add_t[(a * q + b) as usize] = s;
                add_t[(b * q + a) as usize] = s;
                let dm = poly_mul_mod(&da, &db, &modulus, p);
                let m = undigits(&dm) as u16;
                mul_t[(a * q + b) as usize] = m;
                mul_t[(b * q + a) as usize] = m;
            }
        }
        let mut inv_t = vec![0u16; q as usize];
        for a in 1..q {
            let mut found = false;
            for b in 1..q {
                if mul_t[(a * q + b) as usize] == 1 {
                    inv_t[a as usize] = b as u16;
                    found = true;
                    break;
                }
            }
            assert!(found, "no inverse found; modulus not irreducible?");
        }
        // trace: a + a^p + ... + a^(p^(e-1))
        let mut trace_t = vec![0u32; q as usize];
        for a in 0..q {
            let mut acc = 0u16;
            let mut pw = a as u16;
            for _ in 0..e {
                acc = add_t[(acc as u32 * q + pw as u32) as usize];
                // pw <- pw^p
                let mut fp = 1u16;
                for _ in 0..p {
                    fp = mul_t[(fp as u32 * q + pw as u32) as usize];
                }
                pw = fp;
            }
            let d = digits(acc as u32);
            assert!(
                d[1..].iter().all(|&c| c == 0),
                "trace landed outside the prime field"
            );
            trace_t[a as usize] = d[0];
        }

        let fs = FieldSpec {
            p,
            e,
            q,
            modulus,
            add_t,
            mul_t,
            neg_t,
            inv_t,
            trace_t,
        };
        debug_assert!(fs.trace_is_surjective());
        Ok(fs)
    }

    fn default_modulus(p: u32, e: u32) -> Vec<u32> {
        if e == 1 {
            return vec![0, 1];
        }
        let count = (p as u64).pow(e);
        for idx in 0..count {
            // lexicographic order, c0 most significant
            let mut cand = vec![0u32; e as usize + 1];
            let mut t = idx;
            for k in (0..e as usize).rev() {
                cand[k] = (t % p as u64) as u32;
                t /= p as u64;
            }
            cand[e as usize] = 1;
            if is_irreducible(&cand, p) {
                return cand;
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    fn trace_is_surjective(&self) -> bool {
        let mut seen = vec![false; self.p as usize];
        for a in 0..self.q {
            seen[self.trace_t[a as usize] as usize] = true;
        }
        seen.iter().all(|&s| s)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        poly_string(&self.modulus)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elt(&self, idx: u32) -> FieldElement {
        assert!(idx < self.q);
        FieldElement(idx as u16)
    }

    /// Embedding of the integers (reduction mod p into the prime field).
    pub fn from_int(&self, n: i128) -> FieldElement {
        let p = self.p as i128;
        FieldElement(((n % p + p) % p) as u16)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_t[a.index() * self.q as usize + b.index()])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_t[a.index() * self.q as usize + b.index()])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_t[a.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElement(self.inv_t[a.index()]))
    }

    /// 1/2, which exists since p is odd.
    pub fn half(&self) -> FieldElement {
        self.inv(self.from_int(2)).unwrap()
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Absolute trace into F_p, returned as an integer 0..p.
    pub fn trace_int(&self, a: FieldElement) -> u32 {
        self.trace_t[a.index()]
    }

    /// Absolute trace as an element of the prime subfield.
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.trace_t[a.index()] as u16)
    }

    /// The fixed nontrivial additive character: theta(a) = zeta_p^Tr(a).
    pub fn theta(&self, a: FieldElement) -> Cyclo {
        Cyclo::zeta_pow(self.p, self.trace_int(a))
    }

    /// Power-basis coordinates of an element, length e, low-degree first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut d = vec![0u32; self.e as usize];
        let mut t = a.0 as u32;
        for dk in d.iter_mut() {
            *dk = t % self.p;
            t /= self.p;
        }
        d
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| FieldElement(i as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(|i| FieldElement(i as u16))
    }

    /// The set of nonzero squares of F_q.
    pub fn nonzero_squares(&self) -> Vec<FieldElement> {
        let mut out: Vec<FieldElement> = self.nonzero_elements().map(|a| self.mul(a, a)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn prime_field_arith() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        // 1 + 2 = 0 in characteristic 3
        assert_eq!(f3.add(f3.elt(1), f3.elt(2)), f3.zero());
        // inv(2) = 2 since 2*2 = 4 = 1
        assert_eq!(f3.inv(f3.elt(2)).unwrap(), f3.elt(2));
        assert_eq!(f3.inv(f3.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn default_modulus_f9() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        // lexicographically smallest irreducible over F_3 is t^2 + 1
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // t*t reduces to -1 = 2
        let t = f9.elt(3); // digits (0,1)
        assert_eq!(f9.coeffs(t), vec![0, 1]);
        assert_eq!(f9.mul(t, t), f9.elt(2));
    }

    #[test]
    fn traces() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f3.trace_int(f3.elt(2)), 2);
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        // Tr(1) = e * 1 = 2 in F_3
        assert_eq!(f9.trace_int(f9.one()), 2);
        // Tr(t) = t + t^3 = t - t = 0 for modulus t^2 + 1
        assert_eq!(f9.trace_int(f9.elt(3)), 0);
    }

    #[test]
    fn theta_is_an_additive_character() {
        for (p, e) in [(3u32, 1u32), (3, 2), (5, 1)] {
            let fs = FieldSpec::new(p, e, None).unwrap();
            // theta(0) = 1 and the full character sum vanishes
            assert_eq!(fs.theta(fs.zero()), Cyclo::one(p));
            let mut sum = Cyclo::zero(p);
            for a in fs.elements() {
                sum = sum.add(&fs.theta(a));
            }
            assert!(sum.is_zero());
            // theta(a+b) = theta(a) theta(b), theta(a) theta(-a) = 1
            for a in fs.elements() {
                assert_eq!(fs.theta(a).mul(&fs.theta(fs.neg(a))), Cyclo::one(p));
                for b in fs.elements() {
                    assert_eq!(fs.theta(fs.add(a, b)), fs.theta(a).mul(&fs.theta(b)));
                }
            }
            // nontrivial
            assert!(fs.elements().any(|a| fs.theta(a) != Cyclo::one(p)));
        }
    }

    #[test]
    fn theta_convention_q3() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f3.theta(f3.one()), Cyclo::zeta_pow(3, 1));
    }

    #[test]
    fn scaled_theta_stays_nontrivial() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        for r in f9.nonzero_elements() {
            let mut sum = Cyclo::zero(3);
            let mut all_one = true;
            for a in f9.elements() {
                let v = f9.theta(f9.mul(r, a));
                if v != Cyclo::one(3) {
                    all_one = false;
                }
                sum = sum.add(&v);
            }
            assert!(!all_one);
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(3u32, 1u32), (3, 2)] {
            let fs = FieldSpec::new(p, e, None).unwrap();
            for a in fs.elements() {
                for b in fs.elements() {
                    assert_eq!(fs.add(a, b), fs.add(b, a));
                    assert_eq!(fs.mul(a, b), fs.mul(b, a));
                    for c in fs.elements() {
                        assert_eq!(fs.add(fs.add(a, b), c), fs.add(a, fs.add(b, c)));
                        assert_eq!(fs.mul(fs.mul(a, b), c), fs.mul(a, fs.mul(b, c)));
                        assert_eq!(fs.mul(a, fs.add(b, c)), fs.add(fs.mul(a, b), fs.mul(a, c)));
                    }
                }
                // Frobenius closure x^q = x
                assert_eq!(fs.pow(a, fs.q() as u64), a);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldSpec::new(2, 1, None).is_err());
        assert!(FieldSpec::new(9, 1, None).is_err());
        assert!(FieldSpec::new(3, 0, None).is_err());
        // t^2 + 2t + 1 = (t+1)^2 is reducible
        assert!(matches!(
            FieldSpec::new(3, 2, Some(&[1, 2, 1])),
            Err(FieldError::Reducible(_))
        ));
    }

    #[test]
    fn theta_values_are_unit_modulus() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        for a in f5.elements() {
            let v = f5.theta(a);
            let norm = v.mul(&v.conjugate());
            assert_eq!(norm.as_rational(), Ok(Rational::ONE));
        }
    }
}
