//! The groups U = G ∩ U_m(q) for G symplectic or orthogonal, the ambient
//! unitriangular group U_m(q), their Lie algebras, and exhaustive
//! enumeration/conjugacy machinery.
//!
//! Matrices are kept in block form: for rank n and r = m - 2n,
//!
//! ```text
//!   group:  [ x  xv  xw ]        lie:  [ a  v   w     ]
//!           [ 0  I_r -v'J ]            [ 0  0  -v'J   ]
//!           [ 0  0   Jx^-TJ ]          [ 0  0  -Ja'J  ]
//! ```
//!
//! with the w-block constrained per type. Membership of a group element is
//! double-checked against the invariant bilinear form reconstructed from the
//! block shape (skew for Sp, symmetric for the orthogonal types).
//!
//! Elements of U are indexed by the E+ coordinates of the Lie companion a_z,
//! one coordinate per positive root; this perfect hash also certifies
//! |U| = q^|Phi|.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Mat;
use crate::roots::{all_entries, phi_set, Entry, Family, GroupKind, Root};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    CapExceeded { size: u128, cap: u128 },
    NotInGroup(String),
    NotClosed(String),
    ExpUnavailable { p: u32, n: usize },
    KindMismatch,
}

impl core::fmt::Display for GroupError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GroupError::CapExceeded { size, cap } => {
                write!(f, "group size {size} exceeds the enumeration cap {cap}")
            }
            GroupError::NotInGroup(s) => write!(f, "matrix violates the block conditions: {s}"),
            GroupError::NotClosed(s) => write!(f, "subset is not a subgroup: {s}"),
            GroupError::ExpUnavailable { p, n } => {
                write!(f, "exponential map needs p >= 2n (p = {p}, n = {n})")
            }
            GroupError::KindMismatch => write!(f, "parameter mismatch between elements"),
        }
    }
}

/// Which group a table enumerates: one of the classical U, or the ambient
/// unitriangular group U_m(q).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scope {
    Classical(GroupKind),
    Ambient { m: usize },
}

impl Scope {
    pub fn m(self) -> usize {
        match self {
            Scope::Classical(k) => k.m(),
            Scope::Ambient { m } => m,
        }
    }

    pub fn kind(self) -> Option<GroupKind> {
        match self {
            Scope::Classical(k) => Some(k),
            Scope::Ambient { .. } => None,
        }
    }
}

fn rank_r(kind: GroupKind) -> usize {
    match kind.family() {
        Family::OddOrthogonal => 1,
        _ => 0,
    }
}

/// The basis matrix e_alpha of the Lie algebra u.
pub fn e_alpha(fs: &FieldSpec, kind: GroupKind, alpha: Root) -> Mat {
    debug_assert!(alpha.valid_for(kind));
    let m = kind.m();
    let n = kind.n();
    let one = fs.one();
    let neg_one = fs.neg(one);
    let mut out = Mat::zero(m);
    match alpha {
        Root::EpsMinus(i, j) => {
            out.set(i - 1, j - 1, one);
            out.set(m - j, m - i, neg_one);
        }
        Root::EpsPlus(i, j) => {
            out.set(i - 1, m - j, one);
            let sign = if kind.family() == Family::Symplectic {
                one
            } else {
                neg_one
            };
            out.set(j - 1, m - i, sign);
        }
        Root::TwoEps(i) => {
            out.set(i - 1, m - i, one);
        }
        Root::Eps(i) => {
            out.set(i - 1, n, one);
            out.set(n, m - i, neg_one);
        }
    }
    out
}

/// The indexed basis {e_alpha : alpha in Phi} in the root order.
pub fn lie_basis(fs: &FieldSpec, kind: GroupKind) -> Vec<Mat> {
    phi_set(kind)
        .into_iter()
        .map(|alpha| e_alpha(fs, kind, alpha))
        .collect()
}

/// Conjugation g x g^-1.
pub fn conjugate(fs: &FieldSpec, g: &Mat, x: &Mat) -> Mat {
    g.mul(fs, x).mul(fs, &g.inv_unitriangular(fs))
}

/// Root-subgroup generator 1 + t e_alpha + (t^2/2) e_alpha^2. The square term
/// vanishes except for the short roots of the odd orthogonal group.
pub fn root_generator(fs: &FieldSpec, kind: GroupKind, alpha: Root, t: FieldElement) -> Mat {
    let m = kind.m();
    let e = e_alpha(fs, kind, alpha);
    let te = e.scale(fs, t);
    let mut out = Mat::identity(m).add(fs, &te);
    let sq = te.mul(fs, &te);
    if !sq.is_zero() {
        out = out.add(fs, &sq.scale(fs, fs.half()));
    }
    out
}

/// The invariant bilinear form implied by the block shape: antidiagonal, with
/// the lower half negated in the symplectic case.
pub fn invariant_form(fs: &FieldSpec, kind: GroupKind) -> Mat {
    let m = kind.m();
    let n = kind.n();
    let mut omega = Mat::zero(m);
    let one = fs.one();
    for pos in 0..m {
        let mirror = m - 1 - pos;
        let v = if kind.family() == Family::Symplectic && pos >= n {
            fs.neg(one)
        } else {
            one
        };
        omega.set(pos, mirror, v);
    }
    omega
}

fn block_x(mat: &Mat, n: usize) -> Mat {
    let mut x = Mat::zero(n);
    for i in 0..n {
        for j in 0..n {
            x.set(i, j, mat.get(i, j));
        }
    }
    x
}

fn block_right(mat: &Mat, n: usize, r: usize) -> Mat {
    let mut w = Mat::zero(n);
    for i in 0..n {
        for j in 0..n {
            w.set(i, j, mat.get(i, n + r + j));
        }
    }
    w
}

fn block_mid(mat: &Mat, n: usize, r: usize) -> Vec<FieldElement> {
    let mut v = Vec::with_capacity(n * r);
    if r == 1 {
        for i in 0..n {
            v.push(mat.get(i, n));
        }
    }
    v
}

fn mat_vec(fs: &FieldSpec, a: &Mat, v: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.dim();
    let mut out = vec![fs.zero(); n];
    for i in 0..n {
        let mut acc = fs.zero();
        for (k, &vk) in v.iter().enumerate() {
            acc = fs.add(acc, fs.mul(a.get(i, k), vk));
        }
        out[i] = acc;
    }
    out
}

/// s := w J, so that s[a][b] is the matrix entry in row a+1, column -(b+1).
fn w_to_s(w: &Mat) -> Mat {
    let n = w.dim();
    let mut s = Mat::zero(n);
    for a in 0..n {
        for b in 0..n {
            s.set(a, b, w.get(a, n - 1 - b));
        }
    }
    s
}

fn s_to_w(s: &Mat) -> Mat {
    w_to_s(s)
}

fn check_w_condition(
    fs: &FieldSpec,
    kind: GroupKind,
    w: &Mat,
    v: &[FieldElement],
) -> Result<(), String> {
    let n = kind.n();
    let s = w_to_s(w);
    for a in 0..n {
        for b in 0..n {
            let lhs = match kind.family() {
                // J w' - w J = 0: s symmetric
                Family::Symplectic => fs.sub(s.get(b, a), s.get(a, b)),
                // J w' + w J = 0: s antisymmetric
                Family::EvenOrthogonal => fs.add(s.get(b, a), s.get(a, b)),
                // J w' + w J = -v v'
                Family::OddOrthogonal => {
                    fs.add(fs.add(s.get(b, a), s.get(a, b)), fs.mul(v[a], v[b]))
                }
            };
            if !lhs.is_zero() {
                return Err(format!("w-block condition fails at ({a},{b})"));
            }
        }
    }
    Ok(())
}

/// Membership test for U per the defining block conditions, cross-checked
/// against the invariant bilinear form.
pub fn group_check(fs: &FieldSpec, kind: GroupKind, mat: &Mat) -> Result<(), GroupError> {
    let m = kind.m();
    let n = kind.n();
    let r = rank_r(kind);
    if mat.dim() != m {
        return Err(GroupError::KindMismatch);
    }
    if !mat.is_unitriangular() {
        return Err(GroupError::NotInGroup("not unitriangular".into()));
    }
    let x = block_x(mat, n);
    let xi = x.inv_unitriangular(fs);
    let v = if r == 1 {
        mat_vec(fs, &xi, &block_mid(mat, n, r))
    } else {
        Vec::new()
    };
    let w = xi.mul(fs, &block_right(mat, n, r));

    // middle row must be [0 I_r -v'J]
    if r == 1 {
        for j in 0..n {
            let got = mat.get(n, n + 1 + j);
            let want = fs.neg(v[n - 1 - j]);
            if got != want {
                return Err(GroupError::NotInGroup("middle row is not -v'J".into()));
            }
        }
    }
    // bottom-right must be J x^-T J
    for i in 0..n {
        for j in 0..n {
            let got = mat.get(n + r + i, n + r + j);
            let want = xi.get(n - 1 - j, n - 1 - i);
            if got != want {
                return Err(GroupError::NotInGroup("bottom-right is not Jx^-TJ".into()));
            }
        }
    }
    check_w_condition(fs, kind, &w, &v).map_err(GroupError::NotInGroup)?;

    // independent route: the defining bilinear form is preserved
    let omega = invariant_form(fs, kind);
    if mat.transpose().mul(fs, &omega).mul(fs, mat) != omega {
        return Err(GroupError::NotInGroup(
            "invariant bilinear form not preserved".into(),
        ));
    }
    Ok(())
}

/// The companion Lie element a_z of a group element z: copy the blocks
/// (x-1, v, w) into the Lie shape.
pub fn a_of_z(fs: &FieldSpec, kind: GroupKind, z: &Mat) -> Mat {
    let m = kind.m();
    let n = kind.n();
    let r = rank_r(kind);
    let x = block_x(z, n);
    let xi = x.inv_unitriangular(fs);
    let v = if r == 1 {
        mat_vec(fs, &xi, &block_mid(z, n, r))
    } else {
        Vec::new()
    };
    let w = xi.mul(fs, &block_right(z, n, r));
    let mut a = Mat::zero(m);
    // top-left: x - 1
    for i in 0..n {
        for j in (i + 1)..n {
            a.set(i, j, x.get(i, j));
        }
    }
    // middle column and row
    if r == 1 {
        for i in 0..n {
            a.set(i, n, v[i]);
            a.set(n, n + 1 + i, fs.neg(v[n - 1 - i]));
        }
    }
    // right block and its mirror: -J(x-1)'J
    for i in 0..n {
        for j in 0..n {
            a.set(i, n + r + j, w.get(i, j));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            // entry (-j-1, -i-1) = -(x-1)[i][j] mirrored
            a.set(m - 1 - j, m - 1 - i, fs.neg(x.get(i, j)));
        }
    }
    a
}

/// Inverse of [`a_of_z`]: rebuild the group element from the Lie companion.
pub fn z_of_a(fs: &FieldSpec, kind: GroupKind, a: &Mat) -> Mat {
    let m = kind.m();
    let n = kind.n();
    let r = rank_r(kind);
    let mut x = Mat::identity(n);
    for i in 0..n {
        for j in (i + 1)..n {
            x.set(i, j, a.get(i, j));
        }
    }
    let v: Vec<FieldElement> = if r == 1 {
        (0..n).map(|i| a.get(i, n)).collect()
    } else {
        Vec::new()
    };
    let mut w = Mat::zero(n);
    for i in 0..n {
        for j in 0..n {
            w.set(i, j, a.get(i, n + r + j));
        }
    }
    let mut z = Mat::identity(m);
    for i in 0..n {
        for j in (i + 1)..n {
            z.set(i, j, x.get(i, j));
        }
    }
    if r == 1 {
        let xv = mat_vec(fs, &x, &v);
        for i in 0..n {
            z.set(i, n, xv[i]);
            z.set(n, n + 1 + i, fs.neg(v[n - 1 - i]));
        }
    }
    let xw = x.mul(fs, &w);
    for i in 0..n {
        for j in 0..n {
            z.set(i, n + r + j, xw.get(i, j));
        }
    }
    let xi = x.inv_unitriangular(fs);
    for i in 0..n {
        for j in 0..n {
            z.set(n + r + i, n + r + j, xi.get(n - 1 - j, n - 1 - i));
        }
    }
    z
}

/// Does a strictly upper matrix lie in the span of the e_alpha basis?
pub fn in_lie_algebra(fs: &FieldSpec, kind: GroupKind, a: &Mat) -> bool {
    if !a.is_strictly_upper() {
        return false;
    }
    let mut rebuilt = Mat::zero(kind.m());
    for alpha in phi_set(kind) {
        let c = a.get_entry(alpha.e_plus());
        if !c.is_zero() {
            rebuilt = rebuilt.add(fs, &e_alpha(fs, kind, alpha).scale(fs, c));
        }
    }
    rebuilt == *a
}

/// E+ coordinates of a Lie element (or of any matrix; reads the E+ entries).
pub fn e_plus_coords(phi: &[Root], a: &Mat) -> Vec<FieldElement> {
    phi.iter().map(|r| a.get_entry(r.e_plus())).collect()
}

/// Entry positions that must vanish for membership in U_alpha / u_alpha.
pub fn vanishing_positions(kind: GroupKind, alpha: Root) -> Vec<(usize, usize)> {
    let n = kind.n();
    let mut out = Vec::new();
    match alpha {
        Root::EpsMinus(i, j) => {
            for k in (i + 1)..j {
                out.push((i - 1, k - 1));
            }
        }
        Root::EpsPlus(i, j) => {
            for k in (i + 1)..=n {
                out.push((i - 1, k - 1));
            }
            for l in (j + 1)..=n {
                out.push((j - 1, l - 1));
            }
            if kind.family() == Family::OddOrthogonal {
                out.push((j - 1, n));
            }
        }
        Root::TwoEps(i) | Root::Eps(i) => {
            for k in (i + 1)..=n {
                out.push((i - 1, k - 1));
            }
        }
    }
    out
}

/// The roots beta with e_beta inside u_alpha.
pub fn phi_alpha(kind: GroupKind, alpha: Root) -> Vec<Root> {
    let m = kind.m();
    let vanish = vanishing_positions(kind, alpha);
    phi_set(kind)
        .into_iter()
        .filter(|beta| {
            beta.entries(kind).iter().all(|e| {
                let p = (e.row.pos(m), e.col.pos(m));
                !vanish.contains(&p)
            })
        })
        .collect()
}

/// Exponential map, available when p >= 2n (then a^p = 0 and the factorials
/// below the nilpotency degree are invertible).
pub fn exp_map(fs: &FieldSpec, kind: GroupKind, a: &Mat) -> Result<Mat, GroupError> {
    let n = kind.n();
    if (fs.p() as usize) < 2 * n {
        return Err(GroupError::ExpUnavailable { p: fs.p(), n });
    }
    let m = kind.m();
    let mut acc = Mat::identity(m);
    let mut pw = Mat::identity(m);
    let mut fact = fs.one();
    for k in 1..m {
        pw = pw.mul(fs, a);
        if pw.is_zero() {
            break;
        }
        fact = fs.mul(fact, fs.from_int(k as i128));
        let coeff = fs.inv(fact).expect("factorial invertible for p >= 2n");
        acc = acc.add(fs, &pw.scale(fs, coeff));
    }
    Ok(acc)
}

/// Fully enumerated group with conjugacy data. Elements are stored in
/// coordinate (perfect-hash) order, the identity at index 0.
pub struct GroupTable {
    scope: Scope,
    fs: FieldSpec,
    phi: Vec<Root>,
    coord_entries: Vec<Entry>,
    elements: Vec<Mat>,
    inv_idx: Vec<u32>,
    class_of: Vec<u32>,
    class_reps: Vec<u32>,
    class_sizes: Vec<u64>,
    class_members: Vec<Vec<u32>>,
    gens: Vec<u32>,
}

pub const DEFAULT_CAP: u128 = 20_000_000;

impl GroupTable {
    pub fn build(scope: Scope, fs: FieldSpec, cap: u128) -> Result<GroupTable, GroupError> {
        let (phi, coord_entries): (Vec<Root>, Vec<Entry>) = match scope {
            Scope::Classical(kind) => {
                let phi = phi_set(kind);
                let entries = phi.iter().map(|r| r.e_plus()).collect();
                (phi, entries)
            }
            Scope::Ambient { m } => (Vec::new(), crate::roots::ambient_entries(m)),
        };
        let d = coord_entries.len();
        let size = (fs.q() as u128)
            .checked_pow(d as u32)
            .ok_or(GroupError::CapExceeded {
                size: u128::MAX,
                cap,
            })?;
        if size > cap {
            return Err(GroupError::CapExceeded { size, cap });
        }
        let size = size as usize;

        let mut table = GroupTable {
            scope,
            fs,
            phi,
            coord_entries,
            elements: Vec::with_capacity(size),
            inv_idx: Vec::new(),
            class_of: Vec::new(),
            class_reps: Vec::new(),
            class_sizes: Vec::new(),
            class_members: Vec::new(),
            gens: Vec::new(),
        };

        for idx in 0..size {
            let coords = table.digits(idx);
            let z = table.element_from_coords(&coords);
            table.elements.push(z);
        }

        // membership verification: full at small scale, sampled above it,
        // always including the first and last elements
        if let Scope::Classical(kind) = scope {
            let step = if size <= 100_000 { 1 } else { 997 };
            let mut idx = 0;
            while idx < size {
                group_check(&table.fs, kind, &table.elements[idx])?;
                idx += step;
            }
            group_check(&table.fs, kind, &table.elements[size - 1])?;
        }
        debug_assert!(table.elements[0].is_identity());

        // round-trip of the perfect hash on a sample
        let probe = [0usize, size / 2, size - 1];
        for &i in probe.iter() {
            assert_eq!(table.index_of(&table.elements[i]), i);
        }

        table.inv_idx = (0..size)
            .map(|i| {
                let inv = table.elements[i].inv_unitriangular(&table.fs);
                table.index_of(&inv) as u32
            })
            .collect();

        table.gens = table.generator_indices();
        table.assert_generated();
        table.build_classes();
        Ok(table)
    }

    pub fn build_classical(
        kind: GroupKind,
        fs: FieldSpec,
        cap: u128,
    ) -> Result<GroupTable, GroupError> {
        GroupTable::build(Scope::Classical(kind), fs, cap)
    }

    pub fn build_ambient(m: usize, fs: FieldSpec, cap: u128) -> Result<GroupTable, GroupError> {
        GroupTable::build(Scope::Ambient { m }, fs, cap)
    }

    fn digits(&self, mut idx: usize) -> Vec<FieldElement> {
        let q = self.fs.q() as usize;
        let mut out = vec![self.fs.zero(); self.coord_entries.len()];
        for o in out.iter_mut() {
            *o = self.fs.elt((idx % q) as u32);
            idx /= q;
        }
        out
    }

    fn coords_to_index(&self, coords: &[FieldElement]) -> usize {
        let q = self.fs.q() as usize;
        let mut idx = 0usize;
        for c in coords.iter().rev() {
            idx = idx * q + c.index();
        }
        idx
    }

    fn element_from_coords(&self, coords: &[FieldElement]) -> Mat {
        match self.scope {
            Scope::Ambient { m } => {
                let mut z = Mat::identity(m);
                for (e, c) in self.coord_entries.iter().zip(coords.iter()) {
                    z.set_entry(*e, *c);
                }
                z
            }
            Scope::Classical(kind) => {
                let a = self.lie_companion_from_coords(kind, coords);
                z_of_a(&self.fs, kind, &a)
            }
        }
    }

    /// Builds the Lie companion matrix a_z whose E+ coordinates are given,
    /// completing the mirrored and constrained entries per type.
    fn lie_companion_from_coords(&self, kind: GroupKind, coords: &[FieldElement]) -> Mat {
        let fs = &self.fs;
        let m = kind.m();
        let n = kind.n();
        let r = rank_r(kind);
        let mut a = Mat::zero(m);
        let mut v = vec![fs.zero(); n];
        let mut s = Mat::zero(n); // s[a][b] = entry (a+1, -(b+1))
        for (root, c) in self.phi.iter().zip(coords.iter()) {
            match *root {
                Root::EpsMinus(i, j) => {
                    a.set(i - 1, j - 1, *c);
                    a.set(m - j, m - i, fs.neg(*c));
                }
                Root::EpsPlus(i, j) => s.set(i - 1, j - 1, *c),
                Root::TwoEps(i) => s.set(i - 1, i - 1, *c),
                Root::Eps(i) => v[i - 1] = *c,
            }
        }
        // complete s below the diagonal (and on it for the orthogonal types)
        match kind.family() {
            Family::Symplectic => {
                for i in 0..n {
                    for j in (i + 1)..n {
                        s.set(j, i, s.get(i, j));
                    }
                }
            }
            Family::EvenOrthogonal => {
                for i in 0..n {
                    for j in (i + 1)..n {
                        s.set(j, i, fs.neg(s.get(i, j)));
                    }
                }
            }
            Family::OddOrthogonal => {
                let half = fs.half();
                for i in 0..n {
                    for j in (i + 1)..n {
                        let val = fs.neg(fs.add(s.get(i, j), fs.mul(v[i], v[j])));
                        s.set(j, i, val);
                    }
                    let d = fs.neg(fs.mul(half, fs.mul(v[i], v[i])));
                    s.set(i, i, d);
                }
            }
        }
        let w = s_to_w(&s);
        for i in 0..n {
            for j in 0..n {
                a.set(i, n + r + j, w.get(i, j));
            }
        }
        if r == 1 {
            for i in 0..n {
                a.set(i, n, v[i]);
                a.set(n, n + 1 + i, fs.neg(v[n - 1 - i]));
            }
        }
        a
    }

    /// Perfect-hash index of an element.
    pub fn index_of(&self, z: &Mat) -> usize {
        let coords = match self.scope {
            Scope::Ambient { .. } => self
                .coord_entries
                .iter()
                .map(|e| z.get_entry(*e))
                .collect::<Vec<_>>(),
            Scope::Classical(kind) => {
                let a = a_of_z(&self.fs, kind, z);
                e_plus_coords(&self.phi, &a)
            }
        };
        self.coords_to_index(&coords)
    }

    fn generator_indices(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        match self.scope {
            Scope::Classical(kind) => {
                for alpha in self.phi.iter() {
                    for t in self.fs.nonzero_elements() {
                        let g = root_generator(&self.fs, kind, *alpha, t);
                        gens.push(self.index_of(&g) as u32);
                    }
                }
            }
            Scope::Ambient { m } => {
                for k in 0..(m - 1) {
                    for t in self.fs.nonzero_elements() {
                        let mut g = Mat::identity(m);
                        g.set(k, k + 1, t);
                        gens.push(self.index_of(&g) as u32);
                    }
                }
            }
        }
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    fn assert_generated(&self) {
        let size = self.elements.len();
        let mut seen = vec![false; size];
        seen[0] = true;
        let mut queue: Vec<u32> = vec![0];
        while let Some(x) = queue.pop() {
            for &g in self.gens.iter() {
                let y = self.mul_idx(x as usize, g as usize) as u32;
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        assert!(
            seen.iter().all(|&s| s),
            "root generators fail to generate the group"
        );
    }

    fn build_classes(&mut self) {
        let size = self.elements.len();
        let gen_mats: Vec<(Mat, Mat)> = self
            .gens
            .iter()
            .map(|&g| {
                let gm = self.elements[g as usize].clone();
                let gi = self.elements[self.inv_idx[g as usize] as usize].clone();
                (gm, gi)
            })
            .collect();
        let mut class_of = vec![u32::MAX; size];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for start in 0..size {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![start as u32];
            class_of[start] = id;
            let mut queue = vec![start as u32];
            while let Some(x) = queue.pop() {
                let xm = &self.elements[x as usize];
                for (gm, gi) in gen_mats.iter() {
                    let y = gm.mul(&self.fs, xm).mul(&self.fs, gi);
                    let yi = self.index_of(&y) as u32;
                    if class_of[yi as usize] == u32::MAX {
                        class_of[yi as usize] = id;
                        members.push(yi);
                        queue.push(yi);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        // canonical order: by the row-major minimal representative
        let mut reps: Vec<u32> = classes
            .iter()
            .map(|members| {
                *members
                    .iter()
                    .min_by(|&&a, &&b| {
                        self.elements[a as usize].row_major_cmp(&self.elements[b as usize])
                    })
                    .unwrap()
            })
            .collect();
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by(|&a, &b| {
            self.elements[reps[a] as usize].row_major_cmp(&self.elements[reps[b] as usize])
        });
        let mut new_of = vec![0u32; classes.len()];
        for (new_id, &old_id) in order.iter().enumerate() {
            new_of[old_id] = new_id as u32;
        }
        let mut new_classes = Vec::with_capacity(classes.len());
        let mut new_reps = Vec::with_capacity(classes.len());
        for &old_id in order.iter() {
            new_classes.push(core::mem::take(&mut classes[old_id]));
            new_reps.push(reps[old_id]);
        }
        reps = new_reps;
        for c in class_of.iter_mut() {
            *c = new_of[*c as usize];
        }
        self.class_sizes = new_classes.iter().map(|c| c.len() as u64).collect();
        self.class_reps = reps;
        self.class_members = new_classes;
        self.class_of = class_of;
        debug_assert_eq!(self.class_of[0], 0);
        debug_assert_eq!(self.class_sizes[0], 1);
        debug_assert_eq!(
            self.class_sizes.iter().sum::<u64>(),
            self.elements.len() as u64
        );
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn kind(&self) -> Option<GroupKind> {
        self.scope.kind()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.fs
    }

    pub fn phi(&self) -> &[Root] {
        &self.phi
    }

    pub fn entries(&self) -> Vec<Entry> {
        match self.scope {
            Scope::Classical(kind) => all_entries(kind),
            Scope::Ambient { m } => crate::roots::ambient_entries(m),
        }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: usize) -> &Mat {
        &self.elements[idx]
    }

    pub fn inverse_of(&self, idx: usize) -> usize {
        self.inv_idx[idx] as usize
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.elements[a].mul(&self.fs, &self.elements[b]))
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_of(&self, idx: usize) -> usize {
        self.class_of[idx] as usize
    }

    pub fn class_rep(&self, class: usize) -> usize {
        self.class_reps[class] as usize
    }

    pub fn class_size(&self, class: usize) -> u64 {
        self.class_sizes[class]
    }

    pub fn class_members(&self, class: usize) -> &[u32] {
        &self.class_members[class]
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    /// E+ coordinates of the Lie companion of an element (classical only).
    pub fn coords_of(&self, idx: usize) -> Vec<FieldElement> {
        let kind = self.kind().expect("coordinates require a classical group");
        let a = a_of_z(&self.fs, kind, &self.elements[idx]);
        e_plus_coords(&self.phi, &a)
    }

    /// Subgroup from an entry predicate; closure is certified.
    pub fn subgroup<F: Fn(&Mat) -> bool>(&self, pred: F) -> Result<Subgroup, GroupError> {
        let members: Vec<u32> = (0..self.size())
            .filter(|&i| pred(&self.elements[i]))
            .map(|i| i as u32)
            .collect();
        Subgroup::new(self, members)
    }

    /// The subgroup U_alpha cut out by the root's vanishing entry conditions.
    pub fn u_alpha(&self, alpha: Root) -> Result<Subgroup, GroupError> {
        self.u_d(core::slice::from_ref(&alpha))
    }

    /// U_D: the intersection of U_alpha over alpha in D.
    pub fn u_d(&self, roots: &[Root]) -> Result<Subgroup, GroupError> {
        let kind = self.kind().expect("U_D requires a classical group");
        let mut vanish: Vec<(usize, usize)> = Vec::new();
        for alpha in roots {
            if !alpha.valid_for(kind) {
                return Err(GroupError::NotInGroup(format!(
                    "{alpha} is not a positive root of {kind}"
                )));
            }
            vanish.extend(vanishing_positions(kind, *alpha));
        }
        self.subgroup(|z| vanish.iter().all(|&(r, c)| z.get(r, c).is_zero()))
    }
}

/// Enumerated subgroup with a membership mask; construction certifies closure.
pub struct Subgroup {
    pub members: Vec<u32>,
    pub mask: Vec<bool>,
}

impl Subgroup {
    pub fn new(table: &GroupTable, members: Vec<u32>) -> Result<Subgroup, GroupError> {
        let mut mask = vec![false; table.size()];
        for &m in members.iter() {
            mask[m as usize] = true;
        }
        if members.is_empty() || !mask[0] {
            return Err(GroupError::NotClosed("missing identity".into()));
        }
        // grow a generating set; the BFS closure must equal the member set
        let mut known = vec![false; table.size()];
        known[0] = true;
        let mut known_list: Vec<u32> = vec![0];
        let mut gens: Vec<u32> = Vec::new();
        for &h in members.iter() {
            if known[h as usize] {
                continue;
            }
            gens.push(h);
            let mut queue: Vec<u32> = known_list.clone();
            while let Some(x) = queue.pop() {
                for &g in gens.iter() {
                    let y = table.mul_idx(x as usize, g as usize) as u32;
                    if !known[y as usize] {
                        if !mask[y as usize] {
                            return Err(GroupError::NotClosed(format!(
                                "product escapes the subset at index {y}"
                            )));
                        }
                        known[y as usize] = true;
                        known_list.push(y);
                        queue.push(y);
                    }
                }
            }
        }
        if known_list.len() != members.len() {
            return Err(GroupError::NotClosed("closure smaller than subset".into()));
        }
        Ok(Subgroup { members, mask })
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.mask[idx]
    }

    /// Left-coset transversal: the smallest-index representative of each coset.
    pub fn transversal(&self, table: &GroupTable) -> Vec<u32> {
        let mut covered = vec![false; table.size()];
        let mut reps = Vec::with_capacity(table.size() / self.size());
        for g in 0..table.size() {
            if covered[g] {
                continue;
            }
            reps.push(g as u32);
            for &h in self.members.iter() {
                covered[table.mul_idx(g, h as usize)] = true;
            }
        }
        reps
    }
}
