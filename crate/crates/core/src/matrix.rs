//! Small dense matrices over F_q, indexed by mirror positions.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::field::{FieldElement, FieldSpec};
use crate::roots::{Entry, MirrorIndex};

/// An m x m matrix of field elements, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    m: usize,
    a: Vec<u16>,
}

impl Mat {
    pub fn zero(m: usize) -> Mat {
        Mat {
            m,
            a: vec![0; m * m],
        }
    }

    pub fn identity(m: usize) -> Mat {
        let mut out = Mat::zero(m);
        for i in 0..m {
            out.a[i * m + i] = 1;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        FieldElement(self.a[r * self.m + c])
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.a[r * self.m + c] = v.0;
    }

    pub fn get_entry(&self, e: Entry) -> FieldElement {
        self.get(e.row.pos(self.m), e.col.pos(self.m))
    }

    pub fn set_entry(&mut self, e: Entry, v: FieldElement) {
        let (r, c) = (e.row.pos(self.m), e.col.pos(self.m));
        self.set(r, c, v);
    }

    pub fn get_mirror(&self, row: MirrorIndex, col: MirrorIndex) -> FieldElement {
        self.get(row.pos(self.m), col.pos(self.m))
    }

    pub fn mul(&self, fs: &FieldSpec, other: &Mat) -> Mat {
        debug_assert_eq!(self.m, other.m);
        let m = self.m;
        let mut out = Mat::zero(m);
        for i in 0..m {
            for k in 0..m {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j);
                    out.set(i, j, fs.add(cur, fs.mul(aik, b)));
                }
            }
        }
        out
    }

    pub fn add(&self, fs: &FieldSpec, other: &Mat) -> Mat {
        debug_assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(other.a.iter()) {
            *x = fs.add(FieldElement(*x), FieldElement(*y)).0;
        }
        out
    }

    pub fn sub(&self, fs: &FieldSpec, other: &Mat) -> Mat {
        debug_assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(other.a.iter()) {
            *x = fs.sub(FieldElement(*x), FieldElement(*y)).0;
        }
        out
    }

    pub fn scale(&self, fs: &FieldSpec, s: FieldElement) -> Mat {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = fs.mul(FieldElement(*x), s).0;
        }
        out
    }

    pub fn neg(&self, fs: &FieldSpec) -> Mat {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = fs.neg(FieldElement(*x)).0;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let m = self.m;
        let mut out = Mat::zero(m);
        for i in 0..m {
            for j in 0..m {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        let m = self.m;
        for i in 0..m {
            for j in 0..m {
                let want = if i == j { 1 } else { 0 };
                if self.a[i * m + j] != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_unitriangular(&self) -> bool {
        let m = self.m;
        for i in 0..m {
            if self.a[i * m + i] != 1 {
                return false;
            }
            for j in 0..i {
                if self.a[i * m + j] != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_strictly_upper(&self) -> bool {
        let m = self.m;
        for i in 0..m {
            for j in 0..=i {
                if self.a[i * m + j] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse of a unitriangular matrix via the nilpotent part:
    /// (1+N)^-1 = 1 - N + N^2 - ...
    pub fn inv_unitriangular(&self, fs: &FieldSpec) -> Mat {
        debug_assert!(self.is_unitriangular());
        let m = self.m;
        let nil = self.sub(fs, &Mat::identity(m));
        let mut acc = Mat::identity(m);
        let mut pw = Mat::identity(m);
        let mut sign = false;
        for _ in 1..m {
            pw = pw.mul(fs, &nil);
            sign = !sign;
            if pw.is_zero() {
                break;
            }
            let term = if sign { pw.neg(fs) } else { pw.clone() };
            acc = acc.add(fs, &term);
        }
        debug_assert!(acc.mul(fs, self).is_identity());
        acc
    }

    /// Deterministic row-major comparison on raw entries.
    pub fn row_major_cmp(&self, other: &Mat) -> Ordering {
        self.a.cmp(&other.a)
    }

    pub fn raw(&self) -> &[u16] {
        &self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitriangular_inverse() {
        let fs = FieldSpec::new(3, 1, None).unwrap();
        let mut x = Mat::identity(4);
        x.set(0, 1, fs.elt(2));
        x.set(1, 3, fs.elt(1));
        x.set(0, 3, fs.elt(2));
        let xi = x.inv_unitriangular(&fs);
        assert!(x.mul(&fs, &xi).is_identity());
        assert!(xi.mul(&fs, &x).is_identity());
    }

    #[test]
    fn entry_access_by_mirror_index() {
        let mut x = Mat::zero(4);
        x.set_entry(Entry::new(1, -1), FieldElement(2));
        assert_eq!(x.get(0, 3), FieldElement(2));
        assert_eq!(x.get_entry(Entry::new(1, -1)), FieldElement(2));
    }
}
