//! Exact arithmetic in cyclotomic fields.
//!
//! [`Cyclo`] is the workhorse: an element of Q(zeta_p) for the odd prime p of
//! the base field, stored densely on the power basis 1, zeta, ..., zeta^(p-2).
//! Every supercharacter value the library produces lives here. Reduction
//! modulo 1 + x + ... + x^(p-1) makes the representation canonical, so
//! equality is coefficient equality.
//!
//! [`CyclotomicRing`] is the widened variant Q(zeta_N) for arbitrary small N,
//! needed only by the small-group irreducible-table oracle whose values may
//! involve roots of unity of order the group exponent.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;

/// Element of Q(zeta_p), p an odd prime: coefficients of 1, zeta, ..., zeta^(p-2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    p: u32,
    c: Vec<Rational>,
}

/// Error returned when a value expected to be rational is not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotRational;

impl fmt::Display for NotRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyclotomic value is not rational")
    }
}

impl Cyclo {
    pub fn zero(p: u32) -> Cyclo {
        Cyclo {
            p,
            c: vec![Rational::ZERO; (p - 1) as usize],
        }
    }

    pub fn one(p: u32) -> Cyclo {
        Cyclo::from_rational(p, Rational::ONE)
    }

    pub fn from_rational(p: u32, r: Rational) -> Cyclo {
        let mut z = Cyclo::zero(p);
        z.c[0] = r;
        z
    }

    pub fn from_int(p: u32, n: i128) -> Cyclo {
        Cyclo::from_rational(p, Rational::from_int(n))
    }

    /// Builds the combination sum of counts(k) zeta^k from a length-p tally.
    pub fn from_counts(p: u32, counts: &[i128]) -> Cyclo {
        debug_assert_eq!(counts.len(), p as usize);
        let v: Vec<Rational> = counts.iter().map(|&c| Rational::from_int(c)).collect();
        Cyclo::from_power_vec(p, v)
    }

    /// zeta_p^k, reduced to the canonical basis.
    pub fn zeta_pow(p: u32, k: u32) -> Cyclo {
        let k = k % p;
        let mut z = Cyclo::zero(p);
        if k == p - 1 {
            for c in z.c.iter_mut() {
                *c = -Rational::ONE;
            }
        } else {
            z.c[k as usize] = Rational::ONE;
        }
        z
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.is_zero())
    }

    fn check_p(&self, other: &Cyclo) {
        assert_eq!(self.p, other.p, "cyclotomic order mismatch");
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        self.check_p(other);
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(other.c.iter()) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.check_p(other);
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(other.c.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn neg(&self) -> Cyclo {
        let mut out = self.clone();
        for a in out.c.iter_mut() {
            *a = -*a;
        }
        out
    }

    /// Reduces a power-indexed accumulator (length p) to the canonical basis
    /// using zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).
    fn from_power_vec(p: u32, v: Vec<Rational>) -> Cyclo {
        let top = v[(p - 1) as usize];
        let mut c = Vec::with_capacity((p - 1) as usize);
        for k in 0..(p - 1) as usize {
            c.push(v[k] - top);
        }
        Cyclo { p, c }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        self.check_p(other);
        let p = self.p as usize;
        let mut v = vec![Rational::ZERO; p];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[(i + j) % p] += *a * *b;
            }
        }
        Cyclo::from_power_vec(self.p, v)
    }

    pub fn scale(&self, r: Rational) -> Cyclo {
        let mut out = self.clone();
        for a in out.c.iter_mut() {
            *a *= r;
        }
        out
    }

    /// Galois map zeta |-> zeta^k for k coprime to p.
    pub fn galois(&self, k: u32) -> Cyclo {
        let p = self.p;
        assert!(k % p != 0, "galois exponent divisible by p");
        let mut v = vec![Rational::ZERO; p as usize];
        for (j, a) in self.c.iter().enumerate() {
            v[(j * k as usize) % p as usize] += *a;
        }
        Cyclo::from_power_vec(p, v)
    }

    /// Complex conjugation: zeta |-> zeta^(p-1).
    pub fn conjugate(&self) -> Cyclo {
        self.galois(self.p - 1)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Result<Rational, NotRational> {
        if self.c[1..].iter().all(|r| r.is_zero()) {
            Ok(self.c[0])
        } else {
            Err(NotRational)
        }
    }

    /// Canonical "num/den" strings of the basis coefficients, length p-1.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.c.iter().map(|r| r.to_string()).collect()
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{a}")?;
            } else if k == 1 {
                write!(f, "{a}*z")?;
            } else {
                write!(f, "{a}*z^{k}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer polynomials, dense, used only to compute cyclotomic polynomials.
fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    // den is monic; division must be exact.
    let mut rem: Vec<i128> = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1);
    let mut quot = vec![0i128; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
    quot
}

/// The N-th cyclotomic polynomial, monic, coefficients low-degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i128> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut out = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            out = poly_div_exact(&out, &phi_d);
        }
    }
    out
}

/// Arithmetic context for Q(zeta_N); values are [`CycN`] coefficient vectors
/// on the basis 1, zeta, ..., zeta^(phi(N)-1) reduced mod Phi_N.
pub struct CyclotomicRing {
    n: u32,
    phi: Vec<i128>,
    deg: usize,
    /// zeta^k reduced, for k in 0..N.
    power_table: Vec<Vec<Rational>>,
}

/// Element of Q(zeta_N); operate through the owning [`CyclotomicRing`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycN(Vec<Rational>);

impl CyclotomicRing {
    pub fn new(n: u32) -> CyclotomicRing {
        assert!(n >= 1);
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        // Power table by repeated multiplication by x with reduction.
        let mut power_table: Vec<Vec<Rational>> = Vec::with_capacity(n as usize);
        let mut cur = vec![Rational::ZERO; deg];
        cur[0] = Rational::ONE;
        for _ in 0..n {
            power_table.push(cur.clone());
            // multiply by x
            let mut next = vec![Rational::ZERO; deg + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = *c;
            }
            // reduce the top coefficient
            let top = next[deg];
            if !top.is_zero() {
                for i in 0..deg {
                    next[i] -= top * Rational::from_int(phi[i]);
                }
            }
            next.truncate(deg);
            cur = next;
        }
        CyclotomicRing {
            n,
            phi,
            deg,
            power_table,
        }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn modulus(&self) -> &[i128] {
        &self.phi
    }

    pub fn zero(&self) -> CycN {
        CycN(vec![Rational::ZERO; self.deg])
    }

    pub fn one(&self) -> CycN {
        self.from_rational(Rational::ONE)
    }

    pub fn from_rational(&self, r: Rational) -> CycN {
        let mut v = self.zero();
        v.0[0] = r;
        v
    }

    pub fn zeta_pow(&self, k: u32) -> CycN {
        CycN(self.power_table[(k % self.n) as usize].clone())
    }

    pub fn add(&self, a: &CycN, b: &CycN) -> CycN {
        let mut out = a.clone();
        for (x, y) in out.0.iter_mut().zip(b.0.iter()) {
            *x += *y;
        }
        out
    }

    pub fn sub(&self, a: &CycN, b: &CycN) -> CycN {
        let mut out = a.clone();
        for (x, y) in out.0.iter_mut().zip(b.0.iter()) {
            *x -= *y;
        }
        out
    }

    pub fn scale(&self, a: &CycN, r: Rational) -> CycN {
        CycN(a.0.iter().map(|x| *x * r).collect())
    }

    pub fn mul(&self, a: &CycN, b: &CycN) -> CycN {
        let mut out = self.zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let prod = *x * *y;
                // zeta^(i+j): i+j < 2*deg <= 2N, reduce via the power table
                let pw = &self.power_table[(i + j) % self.n as usize];
                debug_assert!((i + j) < 2 * self.n as usize);
                if (i + j) < self.n as usize {
                    for (k, c) in pw.iter().enumerate() {
                        out.0[k] += prod * *c;
                    }
                } else {
                    // zeta^n = 1
                    let pw = &self.power_table[i + j - self.n as usize];
                    for (k, c) in pw.iter().enumerate() {
                        out.0[k] += prod * *c;
                    }
                }
            }
        }
        out
    }

    /// Galois map zeta |-> zeta^k, k coprime to N.
    pub fn galois(&self, a: &CycN, k: u32) -> CycN {
        let mut out = self.zero();
        for (j, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let pw = &self.power_table[(j * k as usize) % self.n as usize];
            for (t, c) in pw.iter().enumerate() {
                out.0[t] += *x * *c;
            }
        }
        out
    }

    pub fn conjugate(&self, a: &CycN) -> CycN {
        if self.n == 1 {
            return a.clone();
        }
        self.galois(a, self.n - 1)
    }

    pub fn is_zero(&self, a: &CycN) -> bool {
        a.0.iter().all(|r| r.is_zero())
    }

    pub fn as_rational(&self, a: &CycN) -> Result<Rational, NotRational> {
        if a.0[1..].iter().all(|r| r.is_zero()) {
            Ok(a.0[0])
        } else {
            Err(NotRational)
        }
    }

    /// Embeds Q(zeta_p) into Q(zeta_N); requires p | N.
    pub fn embed(&self, x: &Cyclo) -> CycN {
        let p = x.p();
        assert_eq!(self.n % p, 0, "embedding requires p | N");
        let step = self.n / p;
        let mut out = self.zero();
        for (j, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = self.zeta_pow(j as u32 * step);
            for (t, w) in pw.0.iter().enumerate() {
                out.0[t] += *c * *w;
            }
        }
        out
    }
}

impl CycN {
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta3_sum_is_minus_one() {
        // 1 + z + z^2 = 0 as a computed identity
        let mut s = Cyclo::zero(3);
        for k in 0..3 {
            s = s.add(&Cyclo::zeta_pow(3, k));
        }
        assert!(s.is_zero());
        let z = Cyclo::zeta_pow(3, 1);
        let z2 = Cyclo::zeta_pow(3, 2);
        assert_eq!(z.add(&z2), Cyclo::from_int(3, -1));
    }

    #[test]
    fn product_identity_p3() {
        // (1+z)(1+z^2) = 1 + z + z^2 + z^3 = 0 + 1 = 1
        let a = Cyclo::one(3).add(&Cyclo::zeta_pow(3, 1));
        let b = Cyclo::one(3).add(&Cyclo::zeta_pow(3, 2));
        assert_eq!(a.mul(&b), Cyclo::one(3));
    }

    #[test]
    fn conjugation() {
        let z = Cyclo::zeta_pow(3, 1);
        assert_eq!(z.conjugate(), Cyclo::zeta_pow(3, 2));
        assert_eq!(z.conjugate().conjugate(), z);
        let r = Cyclo::from_rational(5, crate::rational::Rational::new(5, 2));
        assert_eq!(r.conjugate(), r);
        // real element of Q(zeta_5)
        let real = Cyclo::zeta_pow(5, 1).add(&Cyclo::zeta_pow(5, 4));
        assert_eq!(real.conjugate(), real);
    }

    #[test]
    fn rationality() {
        assert_eq!(
            Cyclo::from_int(3, 3).as_rational(),
            Ok(Rational::from_int(3))
        );
        let z_plus_z2 = Cyclo::zeta_pow(3, 1).add(&Cyclo::zeta_pow(3, 2));
        assert_eq!(z_plus_z2.as_rational(), Ok(Rational::from_int(-1)));
        assert_eq!(Cyclo::zeta_pow(3, 1).as_rational(), Err(NotRational));
    }

    #[test]
    fn rational_iff_galois_fixed() {
        // |z|^2 of a sample Z[zeta_5] element is rational exactly when fixed
        // by the whole Galois group.
        let x = Cyclo::zeta_pow(5, 1)
            .add(&Cyclo::zeta_pow(5, 3).scale(Rational::from_int(2)))
            .add(&Cyclo::from_int(5, 1));
        let norm = x.mul(&x.conjugate());
        let fixed = (2..5).all(|k| norm.galois(k) == norm);
        assert_eq!(norm.as_rational().is_ok(), fixed);
        // and the norm of x itself is not rational but is Galois-stable only
        // under conjugation
        assert!(x.as_rational().is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn ring_matches_prime_cyclo() {
        let ring = CyclotomicRing::new(9);
        // zeta_9^3 behaves as zeta_3
        let z3 = ring.zeta_pow(3);
        let mut s = ring.one();
        s = ring.add(&s, &z3);
        s = ring.add(&s, &ring.mul(&z3, &z3));
        assert!(ring.is_zero(&s));
        // embedding is a ring map on a sample
        let a = Cyclo::zeta_pow(3, 1).add(&Cyclo::from_int(3, 2));
        let b = Cyclo::zeta_pow(3, 2).scale(Rational::new(1, 2));
        let lhs = ring.embed(&a.mul(&b));
        let rhs = ring.mul(&ring.embed(&a), &ring.embed(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn full_zeta_sum_general() {
        let ring = CyclotomicRing::new(9);
        let mut s = ring.zero();
        for k in 0..9 {
            s = ring.add(&s, &ring.zeta_pow(k));
        }
        assert!(ring.is_zero(&s));
    }
}
