//! The dual space u*, the coadjoint action, basic subvarieties cut out by
//! determinant functionals, orbit sums, and Kirillov functions.
//!
//! A functional f = sum f_alpha e*_alpha is a coordinate vector over Phi.
//! Evaluation against group elements goes through the E+ coordinates of the
//! Lie companion a_z, the same coordinates that index the group elements, so
//! sums of theta_f(a_z) over a subvariety reduce to tallies of trace values.
//!
//! The lift u(f) realizes f as a trace pairing, f(v) = Tr(u(f)^T v), and its
//! entry grid is the ambient functional f-hat on the full niltriangular
//! algebra; the determinants Delta read f-hat at window submatrices.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::chars::ClassFunction;
use crate::cyclotomic::Cyclo;
use crate::field::{FieldElement, FieldSpec};
use crate::group::{e_alpha, GroupTable};
use crate::matrix::Mat;
use crate::rational::Rational;
use crate::roots::{ambient_entries, d_window, regular_entries, BasicPair, Entry, Family, Root};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoadjointError {
    NotClassical,
    OddOrbit { size: u128 },
    BadParameters(String),
}

impl core::fmt::Display for CoadjointError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CoadjointError::NotClassical => write!(f, "operation needs a classical group"),
            CoadjointError::OddOrbit { size } => {
                write!(f, "orbit size {size} is not an even power of q")
            }
            CoadjointError::BadParameters(s) => write!(f, "{s}"),
        }
    }
}

/// Element of u* as coordinates in the dual basis e*_alpha, Phi order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Functional {
    pub coords: Vec<FieldElement>,
}

impl Functional {
    pub fn zero(dim: usize) -> Functional {
        Functional {
            coords: vec![FieldElement::ZERO; dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, fs: &FieldSpec, other: &Functional) -> Functional {
        Functional {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| fs.add(*a, *b))
                .collect(),
        }
    }
}

/// Index of a functional in the q^|Phi| sweep order (same mixed radix as the
/// group's perfect hash).
pub fn functional_index(table: &GroupTable, f: &Functional) -> usize {
    let q = table.field().q() as usize;
    let mut idx = 0usize;
    for c in f.coords.iter().rev() {
        idx = idx * q + c.index();
    }
    idx
}

pub fn functional_at(table: &GroupTable, mut idx: usize) -> Functional {
    let q = table.field().q() as usize;
    let d = table.phi().len();
    let mut coords = vec![table.field().zero(); d];
    for c in coords.iter_mut() {
        *c = table.field().elt((idx % q) as u32);
        idx /= q;
    }
    Functional { coords }
}

pub fn dual_space_size(table: &GroupTable) -> usize {
    (table.field().q() as usize).pow(table.phi().len() as u32)
}

/// f_(D,phi) = sum over alpha in D of phi(alpha) e*_alpha.
pub fn f_d_phi(table: &GroupTable, pair: &BasicPair) -> Functional {
    let mut f = Functional::zero(table.phi().len());
    for (root, v) in pair.iter() {
        let k = table
            .phi()
            .iter()
            .position(|r| *r == root)
            .expect("root outside Phi");
        f.coords[k] = v;
    }
    f
}

/// The lift u(f): coefficient f(e_alpha)/2 on e_alpha for the paired-entry
/// roots, f(e_alpha) for the symplectic long roots.
pub fn u_of_f(table: &GroupTable, f: &Functional) -> Mat {
    let kind = table.kind().expect("u(f) needs a classical group");
    let fs = table.field();
    let half = fs.half();
    let mut out = Mat::zero(kind.m());
    for (root, c) in table.phi().iter().zip(f.coords.iter()) {
        if c.is_zero() {
            continue;
        }
        let coeff = match root {
            Root::TwoEps(_) => *c,
            _ => fs.mul(half, *c),
        };
        out = out.add(fs, &e_alpha(fs, kind, *root).scale(fs, coeff));
    }
    out
}

/// The ambient functional f-hat: f-hat(e_(i,j)) is the (i,j) entry of u(f),
/// defined on every strictly upper entry of the m x m grid.
pub fn hat(table: &GroupTable, f: &Functional) -> Mat {
    u_of_f(table, f)
}

/// Determinant over F_q by Gaussian elimination.
pub fn determinant(fs: &FieldSpec, mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    let mut det = fs.one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else {
            return fs.zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = fs.neg(det);
        }
        let pv = m[col][col];
        det = fs.mul(det, pv);
        let pv_inv = fs.inv(pv).unwrap();
        for r in (col + 1)..n {
            let factor = fs.mul(m[r][col], pv_inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = fs.mul(factor, m[col][c]);
                m[r][c] = fs.sub(m[r][c], sub);
            }
        }
    }
    det
}

/// Delta^D_(i,j)(g) for a basic entry set: the window determinant whose rows
/// are the window rows ascending then i, and whose columns are j then the
/// window columns ascending; an empty window reduces to g(e_(i,j)).
pub fn delta(fs: &FieldSpec, basic: &[Entry], at: Entry, g: &Mat) -> FieldElement {
    let m = g.dim();
    let w = d_window(basic, at, m);
    if w.by_col.is_empty() {
        return g.get_entry(at);
    }
    let mut rows = w.rows_sorted.clone();
    rows.push(at.row);
    let mut cols = vec![at.col];
    cols.extend(w.cols_sorted.iter().copied());
    let mat: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| g.get_mirror(*r, *c)).collect())
        .collect();
    determinant(fs, mat)
}

/// A basic subvariety O*_(D,phi) given by its defining determinant equations:
/// membership is Delta agreement with f_(D,phi) on every D-regular entry.
pub struct VarietySpec {
    pub pair: BasicPair,
    basic_entries: Vec<Entry>,
    regular: Vec<Entry>,
    targets: Vec<FieldElement>,
}

impl VarietySpec {
    pub fn new(table: &GroupTable, pair: &BasicPair) -> VarietySpec {
        let kind = table.kind().expect("varieties need a classical group");
        let fs = table.field();
        let basic_entries: Vec<Entry> = pair.roots().iter().flat_map(|r| r.entries(kind)).collect();
        let regular = regular_entries(kind, pair.roots());
        let rep = f_d_phi(table, pair);
        let rep_hat = hat(table, &rep);
        let targets = regular
            .iter()
            .map(|e| delta(fs, &basic_entries, *e, &rep_hat))
            .collect();
        VarietySpec {
            pair: pair.clone(),
            basic_entries,
            regular,
            targets,
        }
    }

    pub fn contains(&self, table: &GroupTable, f: &Functional) -> bool {
        let fs = table.field();
        let g = hat(table, f);
        self.regular
            .iter()
            .zip(self.targets.iter())
            .all(|(e, t)| delta(fs, &self.basic_entries, *e, &g) == *t)
    }

    pub fn basic_entries(&self) -> &[Entry] {
        &self.basic_entries
    }

    pub fn regular_entries(&self) -> &[Entry] {
        &self.regular
    }

    pub fn targets(&self) -> &[FieldElement] {
        &self.targets
    }
}

/// Enumerates the subvariety by a full sweep of u*, ascending functional
/// indices.
pub fn enumerate_variety(table: &GroupTable, spec: &VarietySpec) -> Vec<u32> {
    let total = dual_space_size(table);
    let mut out = Vec::new();
    for idx in 0..total {
        let f = functional_at(table, idx);
        if spec.contains(table, &f) {
            out.push(idx as u32);
        }
    }
    out
}

/// The d x d coordinate matrix of the coadjoint action of one group element
/// x: column beta holds the coordinates of x^-1 e_beta x.
pub fn coadjoint_matrix(table: &GroupTable, x: &Mat) -> Vec<Vec<FieldElement>> {
    let kind = table
        .kind()
        .expect("coadjoint action needs a classical group");
    let fs = table.field();
    let xi = x.inv_unitriangular(fs);
    let phi = table.phi();
    let mut cols = Vec::with_capacity(phi.len());
    for beta in phi.iter() {
        let conj = xi.mul(fs, &e_alpha(fs, kind, *beta)).mul(fs, x);
        debug_assert!(crate::group::in_lie_algebra(fs, kind, &conj));
        cols.push(crate::group::e_plus_coords(phi, &conj));
    }
    cols
}

/// Applies the coadjoint action (x.f)(a) = f(x^-1 a x) on coordinates.
pub fn coadjoint_apply(
    fs: &FieldSpec,
    action_cols: &[Vec<FieldElement>],
    f: &Functional,
) -> Functional {
    let d = f.coords.len();
    let mut out = Functional::zero(d);
    for beta in 0..d {
        let mut acc = fs.zero();
        for gamma in 0..d {
            acc = fs.add(acc, fs.mul(f.coords[gamma], action_cols[beta][gamma]));
        }
        out.coords[beta] = acc;
    }
    out
}

/// The coadjoint orbit of f, as sorted functional indices; the size is
/// asserted to be a power of q.
pub fn coadjoint_orbit(table: &GroupTable, f: &Functional) -> Vec<u32> {
    let fs = table.field();
    let gen_actions: Vec<Vec<Vec<FieldElement>>> = table
        .generators()
        .iter()
        .map(|&g| coadjoint_matrix(table, table.element(g as usize)))
        .collect();
    let total = dual_space_size(table);
    let mut seen = vec![false; total];
    let start = functional_index(table, f);
    seen[start] = true;
    let mut queue = vec![start as u32];
    let mut members = vec![start as u32];
    while let Some(x) = queue.pop() {
        let fx = functional_at(table, x as usize);
        for act in gen_actions.iter() {
            let fy = coadjoint_apply(fs, act, &fx);
            let idx = functional_index(table, &fy);
            if !seen[idx] {
                seen[idx] = true;
                queue.push(idx as u32);
                members.push(idx as u32);
            }
        }
    }
    members.sort_unstable();
    let q = fs.q() as u128;
    let mut sz = members.len() as u128;
    while sz > 1 {
        assert_eq!(sz % q, 0, "orbit size must be a power of q");
        sz /= q;
    }
    members
}

/// Sum of theta_f(a_z) over a set of functionals, tabulated per class.
fn orbit_sum_values(table: &GroupTable, members: &[u32]) -> Vec<Cyclo> {
    let fs = table.field();
    let p = fs.p() as usize;
    let member_coords: Vec<Vec<FieldElement>> = members
        .iter()
        .map(|&i| functional_at(table, i as usize).coords)
        .collect();
    let mut out = Vec::with_capacity(table.class_count());
    for c in 0..table.class_count() {
        let z_coords = table.coords_of(table.class_rep(c));
        let mut counts = vec![0i128; p];
        for fc in member_coords.iter() {
            let mut acc = fs.zero();
            for (a, b) in fc.iter().zip(z_coords.iter()) {
                acc = fs.add(acc, fs.mul(*a, *b));
            }
            counts[fs.trace_int(acc) as usize] += 1;
        }
        out.push(Cyclo::from_counts(fs.p(), &counts));
    }
    out
}

/// Degree of xi_(D,phi) computed independently of any tabulation, as the
/// product of the subgroup indices |U : U_alpha|.
pub fn supercharacter_degree(table: &GroupTable, pair: &BasicPair) -> u128 {
    let mut deg: u128 = 1;
    for (alpha, _) in pair.iter() {
        let h = table.u_alpha(alpha).expect("U_alpha is a subgroup");
        deg *= (table.size() / h.size()) as u128;
    }
    deg
}

/// The orbit-sum route to the supercharacter: xi(z) = (xi(1)/|O*|)
/// sum_(f in O*) theta_f(a_z), tabulated on the classes.
pub fn orbit_formula_class_function(
    table: &GroupTable,
    pair: &BasicPair,
    members: &[u32],
) -> ClassFunction {
    let deg = supercharacter_degree(table, pair);
    let scale = Rational::new(deg as i128, members.len() as i128);
    let values = orbit_sum_values(table, members)
        .into_iter()
        .map(|v| v.scale(scale))
        .collect();
    ClassFunction::new(table, values)
}

/// The Kirillov function of a coadjoint orbit:
/// phi_O(z) = |O|^(-1/2) sum_(f in O) theta_f(a_z). The orbit size must be an
/// even power of q; the square root is taken exactly as q^(k/2).
pub fn kirillov(table: &GroupTable, members: &[u32]) -> Result<ClassFunction, CoadjointError> {
    let q = table.field().q() as u128;
    let size = members.len() as u128;
    let mut k = 0u32;
    let mut s = size;
    while s > 1 {
        if s % q != 0 {
            return Err(CoadjointError::OddOrbit { size });
        }
        s /= q;
        k += 1;
    }
    if k % 2 != 0 {
        return Err(CoadjointError::OddOrbit { size });
    }
    let sqrt = q.pow(k / 2);
    let values = orbit_sum_values(table, members)
        .into_iter()
        .map(|v| v.scale(Rational::new(1, sqrt as i128)))
        .collect();
    Ok(ClassFunction::new(table, values))
}

/// Report of the partition check over the whole dual space.
pub struct PartitionReport {
    pub total: usize,
    pub sizes: Vec<usize>,
    pub disjoint: bool,
    pub covers: bool,
    pub invariant: bool,
    pub elementary_sum_law: bool,
    pub counterexample: Option<String>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.disjoint && self.covers && self.invariant && self.elementary_sum_law
    }
}

/// Checks that u* is the disjoint union of the basic subvarieties, that each
/// is invariant under every root-subgroup generator, and that each equals
/// the setwise sum of its elementary subvarieties.
pub fn partition_report(table: &GroupTable, pairs: &[BasicPair]) -> PartitionReport {
    let fs = table.field();
    let total = dual_space_size(table);
    let specs: Vec<VarietySpec> = pairs.iter().map(|p| VarietySpec::new(table, p)).collect();
    let mut owner: Vec<Option<usize>> = vec![None; total];
    let mut disjoint = true;
    let mut covers = true;
    let mut counterexample = None;
    let mut sizes = vec![0usize; specs.len()];
    for idx in 0..total {
        let f = functional_at(table, idx);
        let mut hits = 0usize;
        for (k, spec) in specs.iter().enumerate() {
            if spec.contains(table, &f) {
                hits += 1;
                owner[idx] = Some(k);
                sizes[k] += 1;
            }
        }
        if hits == 0 {
            covers = false;
            counterexample.get_or_insert_with(|| format!("functional {idx} lies in no subvariety"));
        } else if hits > 1 {
            disjoint = false;
            counterexample
                .get_or_insert_with(|| format!("functional {idx} lies in {hits} subvarieties"));
        }
    }

    // invariance under every root-subgroup generator
    let gen_actions: Vec<Vec<Vec<FieldElement>>> = table
        .generators()
        .iter()
        .map(|&g| coadjoint_matrix(table, table.element(g as usize)))
        .collect();
    let mut invariant = true;
    'inv: for idx in 0..total {
        let Some(k) = owner[idx] else { continue };
        let f = functional_at(table, idx);
        for act in gen_actions.iter() {
            let fy = coadjoint_apply(fs, act, &f);
            let target = functional_index(table, &fy);
            if owner[target] != Some(k) {
                invariant = false;
                counterexample.get_or_insert_with(|| {
                    format!("coadjoint image of functional {idx} escapes its subvariety")
                });
                break 'inv;
            }
        }
    }

    // setwise-sum law: O*_(D,phi) = sum of its elementary subvarieties
    let kind = table.kind().expect("classical group");
    let mut elementary_sum_law = true;
    'sum: for (k, pair) in pairs.iter().enumerate() {
        if pair.len() < 2 {
            continue;
        }
        let mut sum: Vec<u32> = vec![0];
        for (root, v) in pair.iter() {
            let single = BasicPair::new(kind, &[(root, v)]).unwrap();
            let spec = VarietySpec::new(table, &single);
            let part = enumerate_variety(table, &spec);
            let mut next: Vec<u32> = Vec::new();
            for &a in sum.iter() {
                let fa = functional_at(table, a as usize);
                for &b in part.iter() {
                    let fb = functional_at(table, b as usize);
                    next.push(functional_index(table, &fa.add(fs, &fb)) as u32);
                }
            }
            next.sort_unstable();
            next.dedup();
            sum = next;
        }
        let direct = enumerate_variety(table, &specs[k]);
        if sum != direct {
            elementary_sum_law = false;
            counterexample.get_or_insert_with(|| {
                format!(
                    "setwise sum of elementary subvarieties differs for pair {}",
                    pair.key()
                )
            });
            break 'sum;
        }
    }

    PartitionReport {
        total,
        sizes,
        disjoint,
        covers,
        invariant,
        elementary_sum_law,
        counterexample,
    }
}

/// Ambient functionals on the niltriangular algebra of U_m(q), as coordinate
/// vectors over the strictly upper entries (row-major), under the two-sided
/// action (x.f.y)(a) = f(x a y).
pub struct AmbientOrbits<'a> {
    ambient: &'a GroupTable,
    entries: Vec<Entry>,
}

impl<'a> AmbientOrbits<'a> {
    pub fn new(ambient: &'a GroupTable) -> AmbientOrbits<'a> {
        let m = ambient.scope().m();
        AmbientOrbits {
            ambient,
            entries: ambient_entries(m),
        }
    }

    pub fn coords_of_mat(&self, g: &Mat) -> Vec<FieldElement> {
        self.entries.iter().map(|e| g.get_entry(*e)).collect()
    }

    fn mat_of_coords(&self, coords: &[FieldElement]) -> Mat {
        let m = self.ambient.scope().m();
        let mut g = Mat::zero(m);
        for (e, c) in self.entries.iter().zip(coords.iter()) {
            g.set_entry(*e, *c);
        }
        g
    }

    fn key(&self, coords: &[FieldElement]) -> Vec<u16> {
        coords.iter().map(|c| c.0).collect()
    }

    /// Two-sided orbit U_m(q) g U_m(q) of an ambient functional, as a sorted
    /// set of coordinate keys.
    pub fn two_sided_orbit(&self, g0: &Mat) -> Vec<Vec<u16>> {
        let fs = self.ambient.field();
        let m = self.ambient.scope().m();
        let gens: Vec<Mat> = self
            .ambient
            .generators()
            .iter()
            .map(|&g| self.ambient.element(g as usize).clone())
            .collect();
        let project = |mut mat: Mat| -> Mat {
            for r in 0..m {
                for c in 0..=r {
                    mat.set(r, c, fs.zero());
                }
            }
            mat
        };
        let start = self.coords_of_mat(g0);
        let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
        seen.insert(self.key(&start));
        let mut queue = vec![start];
        while let Some(coords) = queue.pop() {
            let f = self.mat_of_coords(&coords);
            for g in gens.iter() {
                // left action by x: f'(a) = f(x a), so F' = x^T F;
                // right action by y: f'(a) = f(a y), so F' = F y^T;
                // both projected back to the strictly upper grid
                let left = project(g.transpose().mul(fs, &f));
                let right = project(f.mul(fs, &g.transpose()));
                for img in [left, right] {
                    let c = self.coords_of_mat(&img);
                    let k = self.key(&c);
                    if seen.insert(k) {
                        queue.push(c);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Setwise sum of two orbit sets.
    pub fn set_sum(&self, a: &[Vec<u16>], b: &[Vec<u16>]) -> Vec<Vec<u16>> {
        let fs = self.ambient.field();
        let mut out: BTreeSet<Vec<u16>> = BTreeSet::new();
        for ka in a.iter() {
            for kb in b.iter() {
                let sum: Vec<u16> = ka
                    .iter()
                    .zip(kb.iter())
                    .map(|(x, y)| fs.add(FieldElement(*x), FieldElement(*y)).0)
                    .collect();
                out.insert(sum);
            }
        }
        out.into_iter().collect()
    }
}

/// Checks the ambient-orbit description of an elementary subvariety: f lies
/// in O*_(alpha,r) iff f-hat lies in the setwise sum of the two-sided orbits
/// of the rank-one components of f-hat_(alpha,r). Materialized at m = 4.
pub fn elementary_variety_ambient_check(
    u_table: &GroupTable,
    ambient: &GroupTable,
    alpha: Root,
    r: FieldElement,
) -> Result<bool, CoadjointError> {
    let kind = u_table.kind().ok_or(CoadjointError::NotClassical)?;
    if kind.family() == Family::OddOrthogonal {
        return Err(CoadjointError::BadParameters(
            "ambient orbit check is materialized at m = 4 only".into(),
        ));
    }
    let pair = BasicPair::new(kind, &[(alpha, r)])
        .map_err(|e| CoadjointError::BadParameters(format!("{e}")))?;
    let spec = VarietySpec::new(u_table, &pair);
    let rep_hat = hat(u_table, &f_d_phi(u_table, &pair));
    let orbits = AmbientOrbits::new(ambient);

    // rank-one components of f-hat at the entries of E(alpha)
    let m = kind.m();
    let mut sumset: Option<Vec<Vec<u16>>> = None;
    for e in alpha.entries(kind) {
        let mut comp = Mat::zero(m);
        comp.set_entry(e, rep_hat.get_entry(e));
        let orbit = orbits.two_sided_orbit(&comp);
        sumset = Some(match sumset {
            None => orbit,
            Some(prev) => orbits.set_sum(&prev, &orbit),
        });
    }
    let sumset = sumset.unwrap();

    let total = dual_space_size(u_table);
    for idx in 0..total {
        let f = functional_at(u_table, idx);
        let in_variety = spec.contains(u_table, &f);
        let fh = hat(u_table, &f);
        let key: Vec<u16> = orbits.coords_of_mat(&fh).iter().map(|c| c.0).collect();
        let in_sumset = sumset.binary_search(&key).is_ok();
        if in_variety != in_sumset {
            return Ok(false);
        }
    }
    Ok(true)
}
