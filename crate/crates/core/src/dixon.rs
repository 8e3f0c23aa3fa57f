//! Small-group irreducible character table oracle.
//!
//! Classic class-algebra eigenvector method: the structure-constant matrices
//! M_i of the class sums commute and are simultaneously diagonalizable over
//! F_l for a prime l = 1 (mod exponent) with l > 2 sqrt(|G|). Their common
//! eigenvectors are the central characters; degrees come from the second
//! orthogonality relation, and the exact character values are recovered by
//! Fourier inversion over the cyclic group generated by each class
//! representative, landing in Q(zeta_N) with N the group exponent.
//!
//! Everything is verified before returning: row count equals class count,
//! sum of squared degrees equals |G|, and the first orthogonality relations
//! hold exactly in Q(zeta_N).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::chars::ClassFunction;
use crate::cyclotomic::{CycN, CyclotomicRing};
use crate::group::GroupTable;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DixonError {
    CapExceeded(String),
    Degenerate(String),
}

impl core::fmt::Display for DixonError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DixonError::CapExceeded(s) => write!(f, "oracle cap exceeded: {s}"),
            DixonError::Degenerate(s) => write!(f, "oracle failed an internal check: {s}"),
        }
    }
}

pub const MAX_ORDER: usize = 4096;
pub const MAX_CLASSES: usize = 256;

/// The full irreducible character table of a small group, exact in
/// Q(zeta_N), rows sorted by (degree, values).
pub struct IrrTable {
    pub ring: CyclotomicRing,
    pub degrees: Vec<u128>,
    /// rows x classes, in the canonical class order of the group table
    pub values: Vec<Vec<CycN>>,
}

fn modpow(mut a: u64, mut e: u64, l: u64) -> u64 {
    let mut acc = 1u64;
    a %= l;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % l;
        }
        a = a * a % l;
        e >>= 1;
    }
    acc
}

fn modinv(a: u64, l: u64) -> u64 {
    modpow(a % l, l - 2, l)
}

fn is_prime_u64(n: u64) -> bool {
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

fn isqrt(n: u64) -> u64 {
    let mut r = 0u64;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn primitive_root(l: u64) -> u64 {
    let order = l - 1;
    let mut factors = Vec::new();
    let mut n = order;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    'outer: for g in 2..l {
        for &f in factors.iter() {
            if modpow(g, order / f, l) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("prime fields have primitive roots")
}

/// Order of a group element by repeated multiplication.
fn element_order(table: &GroupTable, idx: usize) -> u32 {
    let fs = table.field();
    let x = table.element(idx);
    let mut y = x.clone();
    let mut ord = 1u32;
    while !y.is_identity() {
        y = y.mul(fs, x);
        ord += 1;
    }
    ord
}

/// Exponent of the group: the lcm of element orders (a p-power here).
pub fn group_exponent(table: &GroupTable) -> u32 {
    let mut e = 1u32;
    for c in 0..table.class_count() {
        let ord = element_order(table, table.class_rep(c));
        e = lcm(e, ord);
    }
    e
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Characteristic polynomial mod l via Hessenberg reduction, monic,
/// low-degree-first coefficients of det(lambda I - M).
fn charpoly_mod(mut h: Vec<Vec<u64>>, l: u64) -> Vec<u64> {
    let n = h.len();
    // similarity reduction to upper Hessenberg form
    for j in 0..n.saturating_sub(2) {
        let pivot = ((j + 1)..n).find(|&r| h[r][j] != 0);
        let Some(pivot) = pivot else { continue };
        if pivot != j + 1 {
            h.swap(pivot, j + 1);
            for row in h.iter_mut() {
                row.swap(pivot, j + 1);
            }
        }
        let inv = modinv(h[j + 1][j], l);
        for r in (j + 2)..n {
            let factor = h[r][j] * inv % l;
            if factor == 0 {
                continue;
            }
            for c in 0..n {
                let sub = factor * h[j + 1][c] % l;
                h[r][c] = (h[r][c] + l - sub) % l;
            }
            // column compensation: col_(j+1) += factor * col_r
            for row in h.iter_mut() {
                let add = factor * row[r] % l;
                row[j + 1] = (row[j + 1] + add) % l;
            }
        }
    }
    // p_0 = 1; p_m = (x - h[m-1][m-1]) p_(m-1)
    //             - sum_k h[m-1-k][m-1] (prod subdiagonals) p_(m-1-k)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut pm = poly_shift_sub(&polys[m - 1], h[m - 1][m - 1], l);
        let mut beta = 1u64;
        for k in 1..m {
            beta = beta * h[m - k][m - k - 1] % l;
            if beta == 0 {
                break;
            }
            let coeff = h[m - 1 - k][m - 1] * beta % l;
            if coeff == 0 {
                continue;
            }
            for (t, &c) in polys[m - 1 - k].iter().enumerate() {
                let sub = coeff * c % l;
                while pm.len() <= t {
                    pm.push(0);
                }
                pm[t] = (pm[t] + l - sub) % l;
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

/// (x - a) * p
fn poly_shift_sub(p: &[u64], a: u64, l: u64) -> Vec<u64> {
    let mut out = vec![0u64; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        out[k + 1] = (out[k + 1] + c) % l;
        out[k] = (out[k] + (l - a % l) * c) % l;
    }
    out
}

fn poly_eval(p: &[u64], x: u64, l: u64) -> u64 {
    let mut acc = 0u64;
    for &c in p.iter().rev() {
        acc = (acc * x + c) % l;
    }
    acc
}

/// Reduced-row-echelon basis of the row space.
fn rref(mut rows: Vec<Vec<u64>>, l: u64) -> Vec<Vec<u64>> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| rows[r][col] != 0);
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = modinv(rows[rank][col], l);
        for c in 0..ncols {
            rows[rank][c] = rows[rank][c] * inv % l;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..ncols {
                    let sub = factor * rows[rank][c] % l;
                    rows[r][c] = (rows[r][c] + l - sub) % l;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

fn pivot_cols(rows: &[Vec<u64>]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|&c| c == 1).unwrap())
        .collect()
}

/// Kernel basis (RREF rows) of a square matrix mod l.
fn kernel(mat: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let reduced = rref(mat.to_vec(), l);
    let pivots = pivot_cols(&reduced);
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (l - reduced[r][free] % l) % l;
        }
        basis.push(v);
    }
    rref(basis, l)
}

struct CentralData {
    class_sizes: Vec<u64>,
    inverse_class: Vec<usize>,
    /// structure-constant matrices: m[i][j][k] = #{(x,y) in C_i x C_j : xy = g_k}
    mats: Vec<Vec<Vec<u64>>>,
}

fn central_data(table: &GroupTable, l: u64) -> CentralData {
    let k = table.class_count();
    let class_sizes: Vec<u64> = (0..k).map(|c| table.class_size(c)).collect();
    let inverse_class: Vec<usize> = (0..k)
        .map(|c| table.class_of(table.inverse_of(table.class_rep(c))))
        .collect();
    let mut mats = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        let members: Vec<u32> = table.class_members(i).to_vec();
        for kk in 0..k {
            let gk = table.class_rep(kk);
            for &x in members.iter() {
                let xi = table.inverse_of(x as usize);
                let y = table.mul_idx(xi, gk);
                let j = table.class_of(y);
                mats[i][j][kk] = (mats[i][j][kk] + 1) % l;
            }
        }
    }
    CentralData {
        class_sizes,
        inverse_class,
        mats,
    }
}

/// Restriction of M to the invariant subspace with RREF basis rows; errors
/// if the subspace fails to be invariant.
fn restrict(m: &[Vec<u64>], basis: &[Vec<u64>], l: u64) -> Result<Vec<Vec<u64>>, DixonError> {
    let d = basis.len();
    let n = basis.first().map(|b| b.len()).unwrap_or(0);
    let pivots = pivot_cols(basis);
    let mut r = vec![vec![0u64; d]; d];
    for (t, b) in basis.iter().enumerate() {
        // image = M b (b as a column vector)
        let mut img = vec![0u64; n];
        for (row, ir) in img.iter_mut().enumerate() {
            let mut acc = 0u64;
            for c in 0..n {
                acc = (acc + m[row][c] * b[c]) % l;
            }
            *ir = acc;
        }
        // express in the basis via pivot reads
        let coeffs: Vec<u64> = pivots.iter().map(|&pc| img[pc]).collect();
        for (s, &cs) in coeffs.iter().enumerate() {
            for c in 0..n {
                let sub = cs * basis[s][c] % l;
                img[c] = (img[c] + l - sub) % l;
            }
            r[s][t] = cs;
        }
        if img.iter().any(|&x| x != 0) {
            return Err(DixonError::Degenerate(
                "subspace not invariant under a class matrix".into(),
            ));
        }
    }
    Ok(r)
}

/// Computes the full irreducible character table of a group within the caps.
pub fn dixon_table(table: &GroupTable) -> Result<IrrTable, DixonError> {
    let size = table.size();
    let k = table.class_count();
    if size > MAX_ORDER {
        return Err(DixonError::CapExceeded(format!(
            "|G| = {size} > {MAX_ORDER}"
        )));
    }
    if k > MAX_CLASSES {
        return Err(DixonError::CapExceeded(format!(
            "{k} classes > {MAX_CLASSES}"
        )));
    }

    let exponent = group_exponent(table);
    // smallest prime l = 1 (mod exponent) with l > 2 sqrt(|G|)
    let bound = 2 * isqrt(size as u64);
    let mut l = exponent as u64 + 1;
    while !(l > bound && is_prime_u64(l)) {
        l += exponent as u64;
    }

    let data = central_data(table, l);

    // split the coordinate space into common eigenlines
    let full: Vec<Vec<u64>> = (0..k)
        .map(|r| {
            let mut v = vec![0u64; k];
            v[r] = 1;
            v
        })
        .collect();
    let mut spaces = vec![full];
    for mi in data.mats.iter() {
        let mut next = Vec::new();
        for space in spaces.into_iter() {
            if space.len() <= 1 {
                next.push(space);
                continue;
            }
            let r = restrict(mi, &space, l)?;
            let cp = charpoly_mod(r.clone(), l);
            let d = space.len();
            let mut split_any = false;
            let mut parts = Vec::new();
            for lambda in 0..l {
                if poly_eval(&cp, lambda, l) != 0 {
                    continue;
                }
                // kernel of (R - lambda I), mapped back to ambient rows
                let mut shifted = r.clone();
                for t in 0..d {
                    shifted[t][t] = (shifted[t][t] + l - lambda) % l;
                }
                let ker = kernel(&shifted, l);
                if ker.is_empty() {
                    continue;
                }
                if ker.len() < d {
                    split_any = true;
                }
                let ambient: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coord| {
                        let mut v = vec![0u64; k];
                        for (t, &ct) in coord.iter().enumerate() {
                            for c in 0..k {
                                v[c] = (v[c] + ct * space[t][c]) % l;
                            }
                        }
                        v
                    })
                    .collect();
                parts.push(rref(ambient, l));
            }
            let covered: usize = parts.iter().map(|p| p.len()).sum();
            if covered != d {
                return Err(DixonError::Degenerate(
                    "eigenspaces fail to span an invariant subspace".into(),
                ));
            }
            if split_any {
                next.extend(parts);
            } else {
                next.push(space);
            }
        }
        spaces = next;
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(DixonError::Degenerate(format!(
            "splitting produced {} eigenlines for {k} classes",
            spaces.len()
        )));
    }

    // central characters, degrees, and values mod l
    let p = table.field().p() as u64;
    let sqrt_bound = isqrt(size as u64);
    let ring = CyclotomicRing::new(exponent);
    let g_l = primitive_root(l);
    let w_n = modpow(g_l, (l - 1) / exponent as u64, l);

    // power-class map and per-class element orders
    let orders: Vec<u32> = (0..k)
        .map(|c| element_order(table, table.class_rep(c)))
        .collect();
    let mut power_class = vec![Vec::new(); k];
    for (c, pcs) in power_class.iter_mut().enumerate() {
        let rep = table.class_rep(c);
        let fs = table.field();
        let mut y = crate::matrix::Mat::identity(table.scope().m());
        for _ in 0..orders[c] {
            pcs.push(table.class_of(table.index_of(&y)));
            y = y.mul(fs, table.element(rep));
        }
    }

    let mut rows: Vec<(u128, Vec<CycN>)> = Vec::new();
    for space in spaces.iter() {
        let v = &space[0];
        if v[0] == 0 {
            return Err(DixonError::Degenerate(
                "central character vanishes on the identity class".into(),
            ));
        }
        let v0_inv = modinv(v[0], l);
        let omega: Vec<u64> = v.iter().map(|&x| x * v0_inv % l).collect();
        // 1/chi(1)^2 = (sum_k omega_k omega_(k*) / |C_k|) / |G|
        let mut s = 0u64;
        for c in 0..k {
            let term = omega[c] * omega[data.inverse_class[c]] % l;
            s = (s + term * modinv(data.class_sizes[c] % l, l)) % l;
        }
        let deg_sq = (size as u64 % l) * modinv(s, l) % l;
        // the degree is a p-power at most sqrt(|G|)
        let mut degree = 0u64;
        let mut cand = 1u64;
        let mut found = 0usize;
        while cand <= sqrt_bound {
            if cand * cand % l == deg_sq {
                degree = cand;
                found += 1;
            }
            cand *= p;
        }
        if found != 1 {
            return Err(DixonError::Degenerate(format!(
                "degree candidates not unique ({found} matches)"
            )));
        }
        // chi(g_c) mod l
        let chi_mod: Vec<u64> = (0..k)
            .map(|c| degree % l * omega[c] % l * modinv(data.class_sizes[c] % l, l) % l)
            .collect();
        // lift each value by Fourier inversion on <g_c>
        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            let d = orders[c] as u64;
            let w_d = modpow(w_n, exponent as u64 / d, l);
            let d_inv = modinv(d % l, l);
            let mut val = ring.zero();
            let mut total = 0u64;
            for t in 0..d {
                let mut acc = 0u64;
                for e in 0..d {
                    let x = chi_mod[power_class[c][e as usize]];
                    let w = modpow(w_d, (d - 1) * e * t % d, l); // w_d^(-et)
                    acc = (acc + x * w) % l;
                }
                let m_t = acc * d_inv % l;
                if m_t > degree {
                    return Err(DixonError::Degenerate(format!(
                        "eigenvalue multiplicity {m_t} exceeds the degree {degree}"
                    )));
                }
                total += m_t;
                if m_t != 0 {
                    let zeta = ring.zeta_pow(t as u32 * (exponent / d as u32));
                    val = ring.add(&val, &ring.scale(&zeta, Rational::from_int(m_t as i128)));
                }
            }
            if total != degree {
                return Err(DixonError::Degenerate(format!(
                    "multiplicities sum to {total}, expected the degree {degree}"
                )));
            }
            values.push(val);
        }
        rows.push((degree as u128, values));
    }

    // canonical row order: by degree, then by the value key
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            let ka: Vec<String> = a.1.iter().map(|v| format!("{:?}", v.coeffs())).collect();
            let kb: Vec<String> = b.1.iter().map(|v| format!("{:?}", v.coeffs())).collect();
            ka.cmp(&kb)
        })
    });
    let degrees: Vec<u128> = rows.iter().map(|r| r.0).collect();
    let values: Vec<Vec<CycN>> = rows.into_iter().map(|r| r.1).collect();

    // verification: degree identity and first orthogonality
    let sum_sq: u128 = degrees.iter().map(|d| d * d).sum();
    if sum_sq != size as u128 {
        return Err(DixonError::Degenerate(format!(
            "sum of squared degrees {sum_sq} is not |G| = {size}"
        )));
    }
    for a in 0..k {
        for b in a..k {
            let mut acc = ring.zero();
            for c in 0..k {
                let term = ring.mul(&values[a][c], &ring.conjugate(&values[b][c]));
                acc = ring.add(
                    &acc,
                    &ring.scale(&term, Rational::from_int(table.class_size(c) as i128)),
                );
            }
            let acc = ring.scale(&acc, Rational::new(1, size as i128));
            let want = if a == b { ring.one() } else { ring.zero() };
            if acc != want {
                return Err(DixonError::Degenerate(format!(
                    "first orthogonality fails at rows ({a},{b})"
                )));
            }
        }
    }

    Ok(IrrTable {
        ring,
        degrees,
        values,
    })
}

impl IrrTable {
    pub fn row_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_degree(&self) -> u128 {
        self.degrees.iter().copied().max().unwrap_or(1)
    }

    pub fn count_of_degree(&self, d: u128) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }

    /// Frobenius product of one oracle row with a Q(zeta_p)-valued class
    /// function, exact; the result must be rational.
    pub fn pair_with(
        &self,
        table: &GroupTable,
        row: usize,
        cf: &ClassFunction,
    ) -> Result<Rational, DixonError> {
        let k = table.class_count();
        let mut acc = self.ring.zero();
        for c in 0..k {
            let xi = self.ring.embed(cf.value(c));
            let term = self
                .ring
                .mul(&self.values[row][c], &self.ring.conjugate(&xi));
            acc = self.ring.add(
                &acc,
                &self
                    .ring
                    .scale(&term, Rational::from_int(table.class_size(c) as i128)),
            );
        }
        let acc = self
            .ring
            .scale(&acc, Rational::new(1, table.size() as i128));
        self.ring
            .as_rational(&acc)
            .map_err(|_| DixonError::Degenerate("non-rational inner product".into()))
    }

    /// True when the row equals the embedded class function.
    pub fn row_matches(&self, cf: &ClassFunction, row: usize) -> bool {
        cf.values()
            .iter()
            .zip(self.values[row].iter())
            .all(|(a, b)| self.ring.embed(a) == *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::group::{GroupTable, DEFAULT_CAP};
    use crate::roots::{Family, GroupKind};

    #[test]
    fn dixon_on_heisenberg_u3() {
        // U_3(3) is extraspecial of order 27: 11 classes, degrees 1^9 3^2
        let fs = FieldSpec::new(3, 1, None).unwrap();
        let t = GroupTable::build_ambient(3, fs, DEFAULT_CAP).unwrap();
        let irr = dixon_table(&t).unwrap();
        assert_eq!(irr.row_count(), 11);
        assert_eq!(irr.degrees.iter().filter(|&&d| d == 1).count(), 9);
        assert_eq!(irr.degrees.iter().filter(|&&d| d == 3).count(), 2);
        assert_eq!(irr.max_degree(), 3);
    }

    #[test]
    fn dixon_exponent_and_caps() {
        let fs = FieldSpec::new(3, 1, None).unwrap();
        let t = GroupTable::build_ambient(3, fs, DEFAULT_CAP).unwrap();
        assert_eq!(group_exponent(&t), 3);
        let fs = FieldSpec::new(3, 1, None).unwrap();
        let t4 = GroupTable::build_ambient(4, fs, DEFAULT_CAP).unwrap();
        assert_eq!(group_exponent(&t4), 9);
    }

    #[test]
    fn dixon_c2_q3_degree_identity() {
        let fs = FieldSpec::new(3, 1, None).unwrap();
        let kind = GroupKind::new(Family::Symplectic, 2).unwrap();
        let t = GroupTable::build_classical(kind, fs, DEFAULT_CAP).unwrap();
        let irr = dixon_table(&t).unwrap();
        assert_eq!(irr.row_count(), t.class_count());
        let sum: u128 = irr.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sum, 81);
        // the trivial character appears among the degree-1 rows
        assert_eq!(irr.degrees[0], 1);
        let triv = ClassFunction::trivial(&t);
        assert!((0..irr.row_count()).any(|r| irr.row_matches(&triv, r)));
    }
}
