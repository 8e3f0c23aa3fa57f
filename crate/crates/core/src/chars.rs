//! Exact class-function arithmetic: induction from linear characters,
//! Frobenius products, elementary characters, supercharacters (product and
//! induced routes), decomposition into supercharacters, and restriction of
//! unitriangular elementary characters to U.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclotomic::Cyclo;
use crate::field::{FieldElement, FieldSpec};
use crate::group::{GroupError, GroupTable, Scope, Subgroup};
use crate::matrix::Mat;
use crate::rational::Rational;
use crate::roots::{BasicPair, Entry, Family, GroupKind, Root};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharsError {
    GroupMismatch,
    NotRational(String),
    NotLinear(String),
    NotInSpan(String),
    Group(GroupError),
    BadParameters(String),
}

impl core::fmt::Display for CharsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CharsError::GroupMismatch => write!(f, "class functions live on different groups"),
            CharsError::NotRational(s) => write!(f, "expected a rational value: {s}"),
            CharsError::NotLinear(s) => write!(f, "value rule is not multiplicative: {s}"),
            CharsError::NotInSpan(s) => write!(f, "not in the span of supercharacters: {s}"),
            CharsError::Group(e) => write!(f, "{e}"),
            CharsError::BadParameters(s) => write!(f, "{s}"),
        }
    }
}

impl From<GroupError> for CharsError {
    fn from(e: GroupError) -> Self {
        CharsError::Group(e)
    }
}

/// Identifies the group a class function lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TableFingerprint {
    pub scope: Scope,
    pub q: u32,
    pub classes: usize,
}

impl TableFingerprint {
    pub fn of(table: &GroupTable) -> TableFingerprint {
        TableFingerprint {
            scope: table.scope(),
            q: table.field().q(),
            classes: table.class_count(),
        }
    }
}

/// Exact class function: one cyclotomic value per conjugacy class, in the
/// canonical class order of the owning table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassFunction {
    fp: TableFingerprint,
    values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(table: &GroupTable, values: Vec<Cyclo>) -> ClassFunction {
        assert_eq!(values.len(), table.class_count());
        ClassFunction {
            fp: TableFingerprint::of(table),
            values,
        }
    }

    pub fn trivial(table: &GroupTable) -> ClassFunction {
        let p = table.field().p();
        ClassFunction::new(table, vec![Cyclo::one(p); table.class_count()])
    }

    pub fn fingerprint(&self) -> TableFingerprint {
        self.fp
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclo {
        &self.values[class]
    }

    /// Value at the identity class as an exact rational.
    pub fn degree(&self) -> Result<Rational, CharsError> {
        self.values[0]
            .as_rational()
            .map_err(|_| CharsError::NotRational("degree".into()))
    }

    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction, CharsError> {
        if self.fp != other.fp {
            return Err(CharsError::GroupMismatch);
        }
        Ok(ClassFunction {
            fp: self.fp,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, CharsError> {
        if self.fp != other.fp {
            return Err(CharsError::GroupMismatch);
        }
        Ok(ClassFunction {
            fp: self.fp,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, CharsError> {
        if self.fp != other.fp {
            return Err(CharsError::GroupMismatch);
        }
        Ok(ClassFunction {
            fp: self.fp,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scale(&self, r: Rational) -> ClassFunction {
        ClassFunction {
            fp: self.fp,
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// Frobenius scalar product of two class functions, computed class-wise with
/// class sizes. Characters always pair to a rational; a non-rational result
/// is reported as an error.
pub fn frobenius(
    table: &GroupTable,
    a: &ClassFunction,
    b: &ClassFunction,
) -> Result<Rational, CharsError> {
    let v = frobenius_cyclo(table, a, b)?;
    v.as_rational()
        .map_err(|_| CharsError::NotRational(format!("<.,.> = {v}")))
}

pub fn frobenius_cyclo(
    table: &GroupTable,
    a: &ClassFunction,
    b: &ClassFunction,
) -> Result<Cyclo, CharsError> {
    let fp = TableFingerprint::of(table);
    if a.fp != fp || b.fp != fp {
        return Err(CharsError::GroupMismatch);
    }
    let p = table.field().p();
    let mut acc = Cyclo::zero(p);
    for c in 0..table.class_count() {
        let term = a.values[c].mul(&b.values[c].conjugate());
        acc = acc.add(&term.scale(Rational::from_int(table.class_size(c) as i128)));
    }
    Ok(acc.scale(Rational::new(1, table.size() as i128)))
}

pub fn norm(table: &GroupTable, a: &ClassFunction) -> Result<Rational, CharsError> {
    frobenius(table, a, a)
}

/// A linear character given by a subgroup and an entry rule
/// z -> theta(sum r_k z_(entry_k)); multiplicativity is certified at
/// construction (exhaustively for |H| <= 10^4, on a deterministic sample
/// above that).
pub struct LinearChar {
    pub sub: Subgroup,
    pub terms: Vec<(Entry, FieldElement)>,
}

impl LinearChar {
    pub fn new(
        table: &GroupTable,
        sub: Subgroup,
        terms: Vec<(Entry, FieldElement)>,
    ) -> Result<LinearChar, CharsError> {
        let lc = LinearChar { sub, terms };
        lc.check_multiplicative(table)?;
        Ok(lc)
    }

    /// The exponent t of the value zeta^t, i.e. Tr(sum r z_e).
    #[inline]
    pub fn exponent(&self, fs: &FieldSpec, z: &Mat) -> u32 {
        let mut acc = fs.zero();
        for (e, r) in self.terms.iter() {
            acc = fs.add(acc, fs.mul(*r, z.get_entry(*e)));
        }
        fs.trace_int(acc)
    }

    pub fn value(&self, fs: &FieldSpec, z: &Mat) -> Cyclo {
        Cyclo::zeta_pow(fs.p(), self.exponent(fs, z))
    }

    /// Exponent of the value at a product x y, touching only the term
    /// entries of the product.
    #[inline]
    fn exponent_of_product(&self, fs: &FieldSpec, x: &Mat, y: &Mat) -> u32 {
        let m = x.dim();
        let mut acc = fs.zero();
        for (e, r) in self.terms.iter() {
            let (row, col) = (e.row.pos(m), e.col.pos(m));
            let mut entry = fs.zero();
            for k in 0..m {
                entry = fs.add(entry, fs.mul(x.get(row, k), y.get(k, col)));
            }
            acc = fs.add(acc, fs.mul(*r, entry));
        }
        fs.trace_int(acc)
    }

    fn check_multiplicative(&self, table: &GroupTable) -> Result<(), CharsError> {
        let fs = table.field();
        let p = fs.p();
        let h = &self.sub.members;
        let n = h.len();
        let exps: Vec<u32> = h
            .iter()
            .map(|&i| self.exponent(fs, table.element(i as usize)))
            .collect();
        let check_pair = |a: usize, b: usize| -> Result<(), CharsError> {
            let x = table.element(h[a] as usize);
            let y = table.element(h[b] as usize);
            let lhs = self.exponent_of_product(fs, x, y);
            let rhs = (exps[a] + exps[b]) % p;
            if lhs != rhs {
                return Err(CharsError::NotLinear(format!("at member pair ({a},{b})")));
            }
            Ok(())
        };
        if n <= 10_000 {
            for a in 0..n {
                for b in 0..n {
                    check_pair(a, b)?;
                }
            }
        } else {
            let stride = n / 97 + 1;
            let mut a = 0;
            while a < n {
                let mut b = 0;
                while b < n {
                    check_pair(a, b)?;
                    b += stride;
                }
                a += stride;
            }
        }
        Ok(())
    }
}

/// Induced character (lambda)^G tabulated on the classes of the table:
/// the value at z sums lambda(x^-1 z x) over coset representatives x with
/// x^-1 z x in H.
pub fn induce(table: &GroupTable, lin: &LinearChar) -> ClassFunction {
    let fs = table.field();
    let p = fs.p() as usize;
    let transversal = lin.sub.transversal(table);
    let trans: Vec<(Mat, Mat)> = transversal
        .iter()
        .map(|&x| {
            let xm = table.element(x as usize).clone();
            let xi = table.element(table.inverse_of(x as usize)).clone();
            (xm, xi)
        })
        .collect();
    let mut values = Vec::with_capacity(table.class_count());
    for c in 0..table.class_count() {
        let z = table.element(table.class_rep(c));
        let mut counts = vec![0i128; p];
        for (xm, xi) in trans.iter() {
            let y = xi.mul(fs, z).mul(fs, xm);
            if lin.sub.contains(table.index_of(&y)) {
                counts[lin.exponent(fs, &y) as usize] += 1;
            }
        }
        values.push(Cyclo::from_counts(fs.p(), &counts));
    }
    ClassFunction::new(table, values)
}

/// The elementary character: lambda_(alpha,r) on U_alpha, induced to U.
pub fn elementary(
    table: &GroupTable,
    alpha: Root,
    r: FieldElement,
) -> Result<ClassFunction, CharsError> {
    let kind = table
        .kind()
        .ok_or_else(|| CharsError::BadParameters("elementary needs a classical group".into()))?;
    if !alpha.valid_for(kind) {
        return Err(CharsError::BadParameters(format!(
            "{alpha} is not a root of {kind}"
        )));
    }
    if r.is_zero() {
        return Err(CharsError::BadParameters("zero label".into()));
    }
    let sub = table.u_alpha(alpha)?;
    let lin = LinearChar::new(table, sub, vec![(alpha.e_plus(), r)])?;
    Ok(induce(table, &lin))
}

/// Supercharacter by the induced route: lambda_(D,phi) on U_D = cap U_alpha.
pub fn supercharacter_induced(
    table: &GroupTable,
    pair: &BasicPair,
) -> Result<ClassFunction, CharsError> {
    if pair.is_empty() {
        return Ok(ClassFunction::trivial(table));
    }
    let sub = table.u_d(pair.roots())?;
    let terms: Vec<(Entry, FieldElement)> = pair.iter().map(|(a, v)| (a.e_plus(), v)).collect();
    let lin = LinearChar::new(table, sub, terms)?;
    Ok(induce(table, &lin))
}

/// Character tabulation with caching of elementary characters and
/// supercharacters keyed by their canonical encodings.
pub struct CharCtx<'a> {
    pub table: &'a GroupTable,
    elementary_cache: BTreeMap<(String, u16), ClassFunction>,
    super_cache: BTreeMap<String, ClassFunction>,
}

impl<'a> CharCtx<'a> {
    pub fn new(table: &'a GroupTable) -> CharCtx<'a> {
        CharCtx {
            table,
            elementary_cache: BTreeMap::new(),
            super_cache: BTreeMap::new(),
        }
    }

    pub fn elementary(
        &mut self,
        alpha: Root,
        r: FieldElement,
    ) -> Result<ClassFunction, CharsError> {
        let key = (format!("{alpha}"), r.0);
        if let Some(cf) = self.elementary_cache.get(&key) {
            return Ok(cf.clone());
        }
        let cf = elementary(self.table, alpha, r)?;
        self.elementary_cache.insert(key, cf.clone());
        Ok(cf)
    }

    /// Supercharacter as the product of elementary characters (the defining
    /// route); the empty pair gives the unit character.
    pub fn supercharacter(&mut self, pair: &BasicPair) -> Result<ClassFunction, CharsError> {
        let key = pair.key();
        if let Some(cf) = self.super_cache.get(&key) {
            return Ok(cf.clone());
        }
        let mut cf = ClassFunction::trivial(self.table);
        for (alpha, r) in pair.iter() {
            cf = cf.mul(&self.elementary(alpha, r)?)?;
        }
        self.super_cache.insert(key, cf.clone());
        Ok(cf)
    }
}

/// Orthogonality-based decomposition into supercharacters: coefficients
/// <chi, xi>/<xi, xi> with an exact residual check.
pub fn decompose_into_supercharacters(
    table: &GroupTable,
    pairs: &[BasicPair],
    supers: &[ClassFunction],
    chi: &ClassFunction,
) -> Result<Vec<Rational>, CharsError> {
    assert_eq!(pairs.len(), supers.len());
    let mut coeffs = Vec::with_capacity(pairs.len());
    let mut residual = chi.clone();
    for xi in supers.iter() {
        let num = frobenius(table, chi, xi)
            .map_err(|_| CharsError::NotInSpan("non-rational pairing".into()))?;
        let den = frobenius(table, xi, xi)?;
        let c = num * den.recip();
        if !c.is_zero() {
            residual = residual.sub(&xi.scale(c))?;
        }
        coeffs.push(c);
    }
    if !residual.is_zero() {
        return Err(CharsError::NotInSpan("nonzero residual".into()));
    }
    Ok(coeffs)
}

/// Subgroup U_(i,j) of the ambient unitriangular group: row i vanishes
/// strictly between columns i and j in the mirror order.
pub fn ambient_subgroup_mu(ambient: &GroupTable, entry: Entry) -> Result<Subgroup, GroupError> {
    let m = ambient.scope().m();
    let rp = entry.row.pos(m);
    let cp = entry.col.pos(m);
    ambient.subgroup(|z| ((rp + 1)..cp).all(|k| z.get(rp, k).is_zero()))
}

/// The alternative subgroup U'_(i,-j) for an entry (i,-j) with
/// 1 <= i < j <= n: row i vanishes up to the middle column, and column -j
/// vanishes from the middle row down.
pub fn ambient_subgroup_nu(ambient: &GroupTable, entry: Entry) -> Result<Subgroup, GroupError> {
    let m = ambient.scope().m();
    let n = m / 2;
    let i = entry.row.0;
    let j = -entry.col.0;
    assert!(
        i >= 1 && j > i && (j as usize) <= n,
        "nu route needs an entry (i,-j) with i < j"
    );
    let rp = entry.row.pos(m);
    let cp = entry.col.pos(m);
    // columns b with i < b <= 0 in the mirror order
    let mid_end = if m % 2 == 1 { n } else { n - 1 };
    let row_cols: Vec<usize> = ((rp + 1)..=mid_end).collect();
    // rows -a for j < a < 0; the strict upper end keeps |U_m : U'| equal to
    // |U_m : U_(i,-j)|, which the induced characters must share
    let col_rows: Vec<usize> = ((j as usize + 1)..=n).map(|a| m - a).collect();
    ambient.subgroup(|z| {
        row_cols.iter().all(|&k| z.get(rp, k).is_zero())
            && col_rows.iter().all(|&k| z.get(k, cp).is_zero())
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AmbientRoute {
    /// Induce from U_(i,j).
    Mu,
    /// Induce from U'_(i,-j) (only for entries (i,-j), 1 <= i < j <= n).
    Nu,
}

/// The elementary character zeta_(i,j,r) of the ambient unitriangular group,
/// tabulated on the ambient classes.
pub fn unitriangular_elementary(
    ambient: &GroupTable,
    entry: Entry,
    r: FieldElement,
    route: AmbientRoute,
) -> Result<ClassFunction, CharsError> {
    let sub = match route {
        AmbientRoute::Mu => ambient_subgroup_mu(ambient, entry)?,
        AmbientRoute::Nu => ambient_subgroup_nu(ambient, entry)?,
    };
    let lin = LinearChar::new(ambient, sub, vec![(entry, r)])?;
    Ok(induce(ambient, &lin))
}

/// Restriction of zeta_(i,j,r) to U, tabulated on the classes of U: the
/// induced value is evaluated directly in the ambient group at each class
/// representative of U.
pub fn restrict_ambient_elementary(
    u_table: &GroupTable,
    ambient: &GroupTable,
    entry: Entry,
    r: FieldElement,
    route: AmbientRoute,
) -> Result<ClassFunction, CharsError> {
    if u_table.scope().m() != ambient.scope().m() || u_table.field() != ambient.field() {
        return Err(CharsError::GroupMismatch);
    }
    let fs = ambient.field();
    let p = fs.p() as usize;
    let sub = match route {
        AmbientRoute::Mu => ambient_subgroup_mu(ambient, entry)?,
        AmbientRoute::Nu => ambient_subgroup_nu(ambient, entry)?,
    };
    let lin = LinearChar::new(ambient, sub, vec![(entry, r)])?;
    let transversal = lin.sub.transversal(ambient);
    let trans: Vec<(Mat, Mat)> = transversal
        .iter()
        .map(|&x| {
            let xm = ambient.element(x as usize).clone();
            let xi = ambient.element(ambient.inverse_of(x as usize)).clone();
            (xm, xi)
        })
        .collect();
    let mut values = Vec::with_capacity(u_table.class_count());
    for c in 0..u_table.class_count() {
        let z = u_table.element(u_table.class_rep(c));
        let mut counts = vec![0i128; p];
        for (xm, xi) in trans.iter() {
            let y = xi.mul(fs, z).mul(fs, xm);
            if lin.sub.contains(ambient.index_of(&y)) {
                counts[lin.exponent(fs, &y) as usize] += 1;
            }
        }
        values.push(Cyclo::from_counts(fs.p(), &counts));
    }
    Ok(ClassFunction::new(u_table, values))
}

/// The irreducible constituents chi_s of xi_(alpha,r) for orthogonal U and
/// alpha = eps_i + eps_j: induced from the linear character
/// z -> theta(r z_(i,-j) + s z_(i,j)) of V = {z : a_z in u_alpha + F_q e_beta},
/// beta = eps_i - eps_j, with s ranging over all of F_q.
pub fn chi_s(
    u_table: &GroupTable,
    i: usize,
    j: usize,
    r: FieldElement,
    s: FieldElement,
) -> Result<ClassFunction, CharsError> {
    let kind = u_table
        .kind()
        .ok_or_else(|| CharsError::BadParameters("chi_s needs a classical group".into()))?;
    if kind.family() == Family::Symplectic {
        return Err(CharsError::BadParameters(
            "chi_s is defined for the orthogonal types only".into(),
        ));
    }
    let alpha = Root::EpsPlus(i, j);
    let beta = Root::EpsMinus(i, j);
    if !alpha.valid_for(kind) || r.is_zero() {
        return Err(CharsError::BadParameters(format!(
            "bad parameters (i,j,r) = ({i},{j},{})",
            r.index()
        )));
    }
    let mut support = crate::group::phi_alpha(kind, alpha);
    if !support.contains(&beta) {
        support.push(beta);
    }
    let phi = u_table.phi().to_vec();
    let support_mask: Vec<bool> = phi.iter().map(|root| support.contains(root)).collect();
    let members: Vec<u32> = (0..u_table.size())
        .filter(|&idx| {
            let coords = u_table.coords_of(idx);
            coords
                .iter()
                .zip(support_mask.iter())
                .all(|(c, &ok)| ok || c.is_zero())
        })
        .map(|idx| idx as u32)
        .collect();
    let sub = Subgroup::new(u_table, members)?;
    let terms = vec![
        (Entry::new(i as i32, -(j as i32)), r),
        (Entry::new(i as i32, j as i32), s),
    ];
    let lin = LinearChar::new(u_table, sub, terms)?;
    Ok(induce(u_table, &lin))
}

/// Degree of a class function as an exact positive integer.
pub fn degree_as_u128(cf: &ClassFunction) -> Result<u128, CharsError> {
    let d = cf.degree()?;
    match d.as_integer() {
        Some(v) if v > 0 => Ok(v as u128),
        _ => Err(CharsError::NotRational(format!("degree {d}"))),
    }
}

/// The Gamma set: the long roots (symplectic only) together with the
/// consecutive sums eps_i + eps_(i+1).
pub fn gamma_set(kind: GroupKind) -> Vec<Root> {
    let n = kind.n();
    let mut out = Vec::new();
    if kind.family() == Family::Symplectic {
        for i in 1..=n {
            out.push(Root::TwoEps(i));
        }
    }
    for i in 1..n {
        out.push(Root::EpsPlus(i, i + 1));
    }
    out
}
