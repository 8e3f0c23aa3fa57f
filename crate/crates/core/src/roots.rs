//! Positive roots and matrix-entry combinatorics for types C_n, B_n, D_n.
//!
//! Rows and columns of the ambient m x m matrices are indexed by the mirror
//! order 1 < 2 < ... < n < 0 < -n < ... < -1 (0 present only for odd m).
//! Each positive root alpha owns a small set of matrix entries E(alpha); the
//! union E of these is the support available to the groups and Lie algebras.
//! E+ picks one distinguished entry per root, giving the bijection used both
//! for the total order on roots and for coordinates on U and u*.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// C_n: Sp_2n(q)
    Symplectic,
    /// D_n: O_2n(q)
    EvenOrthogonal,
    /// B_n: O_2n+1(q)
    OddOrthogonal,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::Symplectic => 'C',
            Family::EvenOrthogonal => 'D',
            Family::OddOrthogonal => 'B',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootsError {
    BadRank { family: Family, n: usize },
    RootNotInPhi(String),
    NotBasic(String),
    ZeroLabel(String),
}

impl fmt::Display for RootsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootsError::BadRank { family, n } => {
                write!(
                    f,
                    "rank n = {n} is not supported for type {}",
                    family.letter()
                )
            }
            RootsError::RootNotInPhi(s) => write!(f, "root {s} is not a positive root here"),
            RootsError::NotBasic(s) => write!(f, "subset {s} is not basic"),
            RootsError::ZeroLabel(s) => write!(f, "zero label on root {s}"),
        }
    }
}

/// One of the classical families together with its rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupKind {
    family: Family,
    n: usize,
}

impl GroupKind {
    pub fn new(family: Family, n: usize) -> Result<GroupKind, RootsError> {
        let ok = match family {
            Family::EvenOrthogonal => n >= 2,
            _ => n >= 1,
        };
        if !ok {
            return Err(RootsError::BadRank { family, n });
        }
        Ok(GroupKind { family, n })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Size of the ambient matrices: 2n, or 2n+1 in the odd orthogonal case.
    pub fn m(self) -> usize {
        match self.family {
            Family::OddOrthogonal => 2 * self.n + 1,
            _ => 2 * self.n,
        }
    }

    pub fn phi_size(self) -> usize {
        match self.family {
            Family::Symplectic | Family::OddOrthogonal => self.n * self.n,
            Family::EvenOrthogonal => self.n * (self.n - 1),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.n)
    }
}

/// Signed row/column index in the mirror order; 0 only occurs when m is odd.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MirrorIndex(pub i32);

impl MirrorIndex {
    /// Position (0-based) of this index among the m indices in mirror order.
    pub fn pos(self, m: usize) -> usize {
        let n = m / 2;
        let v = self.0;
        if v > 0 {
            debug_assert!(v as usize <= n);
            (v - 1) as usize
        } else if v == 0 {
            debug_assert!(m % 2 == 1);
            n
        } else {
            debug_assert!((-v) as usize <= n);
            m - (-v) as usize
        }
    }

    /// The index sitting at a given mirror position.
    pub fn at_pos(m: usize, pos: usize) -> MirrorIndex {
        let n = m / 2;
        if pos < n {
            MirrorIndex(pos as i32 + 1)
        } else if m % 2 == 1 && pos == n {
            MirrorIndex(0)
        } else {
            MirrorIndex(-((m - pos) as i32))
        }
    }

    pub fn precedes(self, other: MirrorIndex, m: usize) -> bool {
        self.pos(m) < other.pos(m)
    }
}

impl fmt::Display for MirrorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Matrix entry (row, col) with row strictly before col in the mirror order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Entry {
    pub row: MirrorIndex,
    pub col: MirrorIndex,
}

impl Entry {
    pub fn new(row: i32, col: i32) -> Entry {
        Entry {
            row: MirrorIndex(row),
            col: MirrorIndex(col),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Positive root of Phi. Indices satisfy 1 <= i < j <= n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Root {
    /// eps_i - eps_j
    EpsMinus(usize, usize),
    /// eps_i + eps_j
    EpsPlus(usize, usize),
    /// 2 eps_i (symplectic only)
    TwoEps(usize),
    /// eps_i (odd orthogonal only)
    Eps(usize),
}

impl Root {
    pub fn valid_for(self, kind: GroupKind) -> bool {
        let n = kind.n();
        match self {
            Root::EpsMinus(i, j) | Root::EpsPlus(i, j) => 1 <= i && i < j && j <= n,
            Root::TwoEps(i) => kind.family() == Family::Symplectic && 1 <= i && i <= n,
            Root::Eps(i) => kind.family() == Family::OddOrthogonal && 1 <= i && i <= n,
        }
    }

    /// The matrix entries E(alpha) attached to this root.
    pub fn entries(self, kind: GroupKind) -> Vec<Entry> {
        debug_assert!(self.valid_for(kind));
        match self {
            Root::EpsMinus(i, j) => vec![
                Entry::new(i as i32, j as i32),
                Entry::new(-(j as i32), -(i as i32)),
            ],
            Root::EpsPlus(i, j) => vec![
                Entry::new(i as i32, -(j as i32)),
                Entry::new(j as i32, -(i as i32)),
            ],
            Root::TwoEps(i) => vec![Entry::new(i as i32, -(i as i32))],
            Root::Eps(i) => vec![Entry::new(i as i32, 0), Entry::new(0, -(i as i32))],
        }
    }

    /// The distinguished entry in E+(alpha).
    pub fn e_plus(self) -> Entry {
        match self {
            Root::EpsMinus(i, j) => Entry::new(i as i32, j as i32),
            Root::EpsPlus(i, j) => Entry::new(i as i32, -(j as i32)),
            Root::TwoEps(i) => Entry::new(i as i32, -(i as i32)),
            Root::Eps(i) => Entry::new(i as i32, 0),
        }
    }

    /// Total order on roots, read off from the E+ representatives:
    /// alpha < beta iff the column of beta precedes the column of alpha, or
    /// the columns agree and the row of alpha precedes the row of beta.
    pub fn order_cmp(self, other: Root, m: usize) -> Ordering {
        let a = self.e_plus();
        let b = other.e_plus();
        let (ja, jb) = (a.col.pos(m), b.col.pos(m));
        if jb < ja {
            Ordering::Less
        } else if jb > ja {
            Ordering::Greater
        } else {
            a.row.pos(m).cmp(&b.row.pos(m))
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::EpsMinus(i, j) => write!(f, "e{i}-e{j}"),
            Root::EpsPlus(i, j) => write!(f, "e{i}+e{j}"),
            Root::TwoEps(i) => write!(f, "2e{i}"),
            Root::Eps(i) => write!(f, "e{i}"),
        }
    }
}

/// All positive roots, ascending in the total order.
pub fn phi_set(kind: GroupKind) -> Vec<Root> {
    let n = kind.n();
    let mut roots = Vec::with_capacity(kind.phi_size());
    for i in 1..=n {
        for j in (i + 1)..=n {
            roots.push(Root::EpsMinus(i, j));
            roots.push(Root::EpsPlus(i, j));
        }
    }
    match kind.family() {
        Family::Symplectic => {
            for i in 1..=n {
                roots.push(Root::TwoEps(i));
            }
        }
        Family::OddOrthogonal => {
            for i in 1..=n {
                roots.push(Root::Eps(i));
            }
        }
        Family::EvenOrthogonal => {}
    }
    let m = kind.m();
    roots.sort_by(|a, b| a.order_cmp(*b, m));
    debug_assert_eq!(roots.len(), kind.phi_size());
    roots
}

/// All entries of E, sorted by (row position, column position).
pub fn all_entries(kind: GroupKind) -> Vec<Entry> {
    let m = kind.m();
    let mut out: Vec<Entry> = phi_set(kind)
        .into_iter()
        .flat_map(|r| r.entries(kind))
        .collect();
    out.sort_by_key(|e| (e.row.pos(m), e.col.pos(m)));
    out
}

/// All strictly upper entries of the ambient m x m grid, row-major.
pub fn ambient_entries(m: usize) -> Vec<Entry> {
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for rp in 0..m {
        for cp in (rp + 1)..m {
            out.push(Entry {
                row: MirrorIndex::at_pos(m, rp),
                col: MirrorIndex::at_pos(m, cp),
            });
        }
    }
    out
}

/// A set of entries is basic when no two share a row or a column.
pub fn is_basic_entries(entries: &[Entry]) -> bool {
    for (a, ea) in entries.iter().enumerate() {
        for eb in entries.iter().skip(a + 1) {
            if ea.row == eb.row || ea.col == eb.col {
                return false;
            }
        }
    }
    true
}

/// D subset of Phi is basic iff E(D) is basic.
pub fn is_basic(kind: GroupKind, roots: &[Root]) -> bool {
    let entries: Vec<Entry> = roots.iter().flat_map(|r| r.entries(kind)).collect();
    is_basic_entries(&entries)
}

/// A basic subset D of Phi together with a labelling phi: D -> F_q^x.
/// Roots are kept ascending in the total order; an empty D (with the empty
/// map) denotes the unit character.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicPair {
    roots: Vec<Root>,
    values: Vec<FieldElement>,
}

impl BasicPair {
    pub fn empty() -> BasicPair {
        BasicPair {
            roots: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn new(kind: GroupKind, items: &[(Root, FieldElement)]) -> Result<BasicPair, RootsError> {
        let m = kind.m();
        let mut items: Vec<(Root, FieldElement)> = items.to_vec();
        items.sort_by(|a, b| a.0.order_cmp(b.0, m));
        for w in items.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(RootsError::NotBasic(format!("{} repeated", w[0].0)));
            }
        }
        for (r, v) in items.iter() {
            if !r.valid_for(kind) {
                return Err(RootsError::RootNotInPhi(r.to_string()));
            }
            if v.is_zero() {
                return Err(RootsError::ZeroLabel(r.to_string()));
            }
        }
        let roots: Vec<Root> = items.iter().map(|p| p.0).collect();
        if !is_basic(kind, &roots) {
            return Err(RootsError::NotBasic(format!("{}", DisplayRoots(&roots))));
        }
        Ok(BasicPair {
            roots,
            values: items.iter().map(|p| p.1).collect(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Root, FieldElement)> + '_ {
        self.roots.iter().copied().zip(self.values.iter().copied())
    }

    pub fn value_of(&self, root: Root) -> Option<FieldElement> {
        self.roots
            .iter()
            .position(|r| *r == root)
            .map(|k| self.values[k])
    }

    /// Canonical string key, e.g. "e1-e2:1,2e2:2"; the empty pair is "1".
    pub fn key(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(r, v)| format!("{}:{}", r, v.index()))
            .collect();
        parts.join(",")
    }
}

impl fmt::Display for BasicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

struct DisplayRoots<'a>(&'a [Root]);

impl fmt::Display for DisplayRoots<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, r) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

fn rec_basic_sets(
    kind: GroupKind,
    phi: &[Root],
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<Root>>,
) {
    out.push(stack.iter().map(|&k| phi[k]).collect());
    for k in start..phi.len() {
        stack.push(k);
        let roots: Vec<Root> = stack.iter().map(|&i| phi[i]).collect();
        if is_basic(kind, &roots) {
            rec_basic_sets(kind, phi, k + 1, stack, out);
        }
        stack.pop();
    }
}

/// All basic subsets of Phi, as ascending root-index lists in lexicographic
/// order (the empty set first).
pub fn enumerate_basic_sets(kind: GroupKind) -> Vec<Vec<Root>> {
    let phi = phi_set(kind);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    rec_basic_sets(kind, &phi, 0, &mut stack, &mut out);
    out
}

/// All basic pairs (D, phi), deterministically ordered: D in lexicographic
/// order as above, then the labels in odometer order with the last root
/// fastest.
pub fn enumerate_basic_pairs(kind: GroupKind, fs: &FieldSpec) -> Vec<BasicPair> {
    let qm1 = (fs.q() - 1) as usize;
    let mut out = Vec::new();
    for roots in enumerate_basic_sets(kind) {
        let d = roots.len();
        let total = qm1.pow(d as u32);
        for mut t in 0..total {
            let mut values = vec![FieldElement::ZERO; d];
            for k in (0..d).rev() {
                values[k] = fs.elt((t % qm1) as u32 + 1);
                t /= qm1;
            }
            out.push(BasicPair {
                roots: roots.clone(),
                values,
            });
        }
    }
    out
}

/// The hook S(i,j): entries of the universe strictly left in the same row or
/// strictly below in the same column.
pub fn s_hook(universe: &[Entry], entry: Entry, m: usize) -> Vec<Entry> {
    universe
        .iter()
        .copied()
        .filter(|e| {
            (e.row == entry.row && e.col.pos(m) < entry.col.pos(m))
                || (e.col == entry.col && e.row.pos(m) > entry.row.pos(m))
        })
        .collect()
}

/// Regular entries of the universe relative to a basic entry set.
pub fn regular_entries_in(universe: &[Entry], basic: &[Entry], m: usize) -> Vec<Entry> {
    let mut singular = vec![false; universe.len()];
    for &b in basic {
        for (k, e) in universe.iter().enumerate() {
            if (e.row == b.row && e.col.pos(m) < b.col.pos(m))
                || (e.col == b.col && e.row.pos(m) > b.row.pos(m))
            {
                singular[k] = true;
            }
        }
    }
    universe
        .iter()
        .copied()
        .zip(singular)
        .filter_map(|(e, s)| if s { None } else { Some(e) })
        .collect()
}

/// D-regular entries of E for a basic subset D of Phi.
pub fn regular_entries(kind: GroupKind, d: &[Root]) -> Vec<Entry> {
    let universe = all_entries(kind);
    let basic: Vec<Entry> = d.iter().flat_map(|r| r.entries(kind)).collect();
    regular_entries_in(&universe, &basic, kind.m())
}

/// The window D(i,j) of a basic entry set relative to an entry: the members
/// strictly up-left-past it in the mirror order (row before i, column after
/// j), plus the sorting data used by the determinant.
pub struct DWindow {
    /// Window entries sorted by column position.
    pub by_col: Vec<Entry>,
    /// Permutation sigma making the window rows ascend: by_col(sigma(a)).row.
    pub sigma: Vec<usize>,
    /// Row indices in sigma order (ascending positions).
    pub rows_sorted: Vec<MirrorIndex>,
    /// Column indices ascending.
    pub cols_sorted: Vec<MirrorIndex>,
}

pub fn d_window(basic: &[Entry], entry: Entry, m: usize) -> DWindow {
    let rp = entry.row.pos(m);
    let cp = entry.col.pos(m);
    let mut by_col: Vec<Entry> = basic
        .iter()
        .copied()
        .filter(|e| e.row.pos(m) < rp && e.col.pos(m) > cp)
        .collect();
    by_col.sort_by_key(|e| e.col.pos(m));
    let mut sigma: Vec<usize> = (0..by_col.len()).collect();
    sigma.sort_by_key(|&a| by_col[a].row.pos(m));
    let rows_sorted: Vec<MirrorIndex> = sigma.iter().map(|&a| by_col[a].row).collect();
    let cols_sorted: Vec<MirrorIndex> = by_col.iter().map(|e| e.col).collect();
    DWindow {
        by_col,
        sigma,
        rows_sorted,
        cols_sorted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(f: Family, n: usize) -> GroupKind {
        GroupKind::new(f, n).unwrap()
    }

    #[test]
    fn rank_validation() {
        assert!(GroupKind::new(Family::EvenOrthogonal, 1).is_err());
        assert!(GroupKind::new(Family::EvenOrthogonal, 2).is_ok());
        assert!(GroupKind::new(Family::Symplectic, 1).is_ok());
        assert!(GroupKind::new(Family::Symplectic, 0).is_err());
    }

    #[test]
    fn mirror_positions() {
        // m = 4: 1, 2, -2, -1
        assert_eq!(MirrorIndex(1).pos(4), 0);
        assert_eq!(MirrorIndex(2).pos(4), 1);
        assert_eq!(MirrorIndex(-2).pos(4), 2);
        assert_eq!(MirrorIndex(-1).pos(4), 3);
        // m = 5: 1, 2, 0, -2, -1
        assert_eq!(MirrorIndex(0).pos(5), 2);
        assert_eq!(MirrorIndex(-2).pos(5), 3);
        for m in [2usize, 3, 4, 5, 6, 7] {
            for pos in 0..m {
                assert_eq!(MirrorIndex::at_pos(m, pos).pos(m), pos);
            }
        }
    }

    #[test]
    fn phi_counts() {
        // |Phi| = n^2 for C_n and B_n, n(n-1) for D_n
        for n in 1..=4 {
            assert_eq!(phi_set(kind(Family::Symplectic, n)).len(), n * n);
            assert_eq!(phi_set(kind(Family::OddOrthogonal, n)).len(), n * n);
        }
        for n in 2..=4 {
            assert_eq!(phi_set(kind(Family::EvenOrthogonal, n)).len(), n * (n - 1));
        }
        assert_eq!(phi_set(kind(Family::Symplectic, 2)).len(), 4);
        assert_eq!(phi_set(kind(Family::EvenOrthogonal, 2)).len(), 2);
        assert_eq!(phi_set(kind(Family::OddOrthogonal, 3)).len(), 9);
    }

    #[test]
    fn entry_sets_match_case_list() {
        let c2 = kind(Family::Symplectic, 2);
        assert_eq!(
            Root::EpsMinus(1, 2).entries(c2),
            vec![Entry::new(1, 2), Entry::new(-2, -1)]
        );
        assert_eq!(Root::TwoEps(1).entries(c2), vec![Entry::new(1, -1)]);
        let b2 = kind(Family::OddOrthogonal, 2);
        assert_eq!(
            Root::Eps(2).entries(b2),
            vec![Entry::new(2, 0), Entry::new(0, -2)]
        );
    }

    #[test]
    fn e_plus_is_a_bijection_and_entries_disjoint() {
        for k in [
            kind(Family::Symplectic, 3),
            kind(Family::EvenOrthogonal, 3),
            kind(Family::OddOrthogonal, 3),
        ] {
            let phi = phi_set(k);
            let m = k.m();
            let mut plus: Vec<usize> = phi
                .iter()
                .map(|r| {
                    let e = r.e_plus();
                    e.row.pos(m) * m + e.col.pos(m)
                })
                .collect();
            plus.sort_unstable();
            plus.dedup();
            assert_eq!(plus.len(), phi.len());
            // E+ entries satisfy 1 <= i <= n, i < j <= -i
            for r in &phi {
                let e = r.e_plus();
                assert!(e.row.0 >= 1 && e.row.0 as usize <= k.n());
                assert!(e.row.pos(m) < e.col.pos(m));
                assert!(e.col.pos(m) <= MirrorIndex(-e.row.0).pos(m));
            }
            // E(alpha) pairwise disjoint
            let mut all: Vec<usize> = phi
                .iter()
                .flat_map(|r| r.entries(k))
                .map(|e| e.row.pos(m) * m + e.col.pos(m))
                .collect();
            let total = all.len();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len(), total);
        }
    }

    #[test]
    fn root_order_c2() {
        let c2 = kind(Family::Symplectic, 2);
        let phi = phi_set(c2);
        assert_eq!(
            phi,
            vec![
                Root::TwoEps(1),
                Root::EpsPlus(1, 2),
                Root::TwoEps(2),
                Root::EpsMinus(1, 2)
            ]
        );
        // the maximum root is eps_1 - eps_2
        assert_eq!(*phi.last().unwrap(), Root::EpsMinus(1, 2));
    }

    #[test]
    fn maximal_root_is_eps1_minus_eps2() {
        for k in [
            kind(Family::Symplectic, 2),
            kind(Family::EvenOrthogonal, 2),
            kind(Family::OddOrthogonal, 2),
            kind(Family::Symplectic, 3),
        ] {
            let phi = phi_set(k);
            assert_eq!(*phi.last().unwrap(), Root::EpsMinus(1, 2));
        }
    }

    #[test]
    fn basicness_examples() {
        let c2 = kind(Family::Symplectic, 2);
        assert!(is_basic(c2, &[Root::TwoEps(1)]));
        assert!(!is_basic(c2, &[Root::EpsMinus(1, 2), Root::EpsPlus(1, 2)]));
        assert!(!is_basic(c2, &[Root::EpsPlus(1, 2), Root::TwoEps(1)]));
        assert!(is_basic(c2, &[Root::TwoEps(1), Root::TwoEps(2)]));
        assert!(is_basic(c2, &[Root::EpsMinus(1, 2), Root::TwoEps(2)]));
    }

    /// Independent oracle: filter all subsets of Phi by the row/column rule
    /// applied directly to the entry lists.
    fn brute_force_basic_sets(k: GroupKind) -> usize {
        let phi = phi_set(k);
        let mut count = 0usize;
        for mask in 0u32..(1 << phi.len()) {
            let roots: Vec<Root> = phi
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, r)| *r)
                .collect();
            let entries: Vec<Entry> = roots.iter().flat_map(|r| r.entries(k)).collect();
            let mut ok = true;
            'outer: for (a, ea) in entries.iter().enumerate() {
                for eb in entries.iter().take(a) {
                    if ea.row == eb.row || ea.col == eb.col {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn basic_pair_enumeration_counts() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        // C_1, q=3: D empty or {2e1} with 2 labels
        let c1 = kind(Family::Symplectic, 1);
        assert_eq!(enumerate_basic_pairs(c1, &f3).len(), 3);
        // D_2, q=3: {eps1-eps2, eps1+eps2} is not basic, so 1 + 2*2 = 5
        let d2 = kind(Family::EvenOrthogonal, 2);
        assert_eq!(enumerate_basic_pairs(d2, &f3).len(), 5);
        // C_2, q=3: empty + 4 singletons + {2e1,2e2}, {e1-e2,2e2}
        let c2 = kind(Family::Symplectic, 2);
        assert_eq!(enumerate_basic_pairs(c2, &f3).len(), 1 + 4 * 2 + 2 * 4);
        // B_2, q=3: empty + 4 singletons + {e1-e2, e2}
        let b2 = kind(Family::OddOrthogonal, 2);
        assert_eq!(enumerate_basic_pairs(b2, &f3).len(), 1 + 4 * 2 + 4);
        // brute-force subset filter agrees on the number of basic sets
        for k in [c1, d2, c2, b2, kind(Family::OddOrthogonal, 3)] {
            assert_eq!(enumerate_basic_sets(k).len(), brute_force_basic_sets(k));
        }
        // the empty pair appears exactly once
        let pairs = enumerate_basic_pairs(c2, &f3);
        assert_eq!(pairs.iter().filter(|p| p.is_empty()).count(), 1);
        assert!(pairs[0].is_empty());
    }

    #[test]
    fn pair_keys_unique_and_order_deterministic() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let c2 = kind(Family::Symplectic, 2);
        let pairs = enumerate_basic_pairs(c2, &f3);
        let mut keys: Vec<String> = pairs.iter().map(|p| p.key()).collect();
        let orig = keys.clone();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), orig.len());
        assert_eq!(pairs[0].key(), "1");
    }

    #[test]
    fn regular_entries_c2_long_root() {
        let c2 = kind(Family::Symplectic, 2);
        // D = empty: everything regular
        assert_eq!(regular_entries(c2, &[]).len(), all_entries(c2).len());
        // D = {2e1}: E_R = {(1,-1), (2,-2)}
        let reg = regular_entries(c2, &[Root::TwoEps(1)]);
        assert_eq!(reg, vec![Entry::new(1, -1), Entry::new(2, -2)]);
        // E(D) is always regular
        for d in enumerate_basic_sets(c2) {
            let reg = regular_entries(c2, &d);
            for e in d.iter().flat_map(|r| r.entries(c2)) {
                assert!(reg.contains(&e));
            }
        }
    }

    #[test]
    fn singular_union_matches_per_root_hooks() {
        // E_S(D) computed from per-alpha hooks equals the direct computation
        for k in [kind(Family::Symplectic, 2), kind(Family::OddOrthogonal, 2)] {
            let universe = all_entries(k);
            let m = k.m();
            for d in enumerate_basic_sets(k) {
                let reg = regular_entries(k, &d);
                let mut singular_via_hooks: Vec<Entry> = Vec::new();
                for r in &d {
                    for e in r.entries(k) {
                        singular_via_hooks.extend(s_hook(&universe, e, m));
                    }
                }
                for e in &universe {
                    let is_reg = reg.contains(e);
                    let is_sing = singular_via_hooks.contains(e);
                    assert_eq!(is_reg, !is_sing);
                }
            }
        }
    }

    #[test]
    fn d_window_examples() {
        let c2 = kind(Family::Symplectic, 2);
        let m = c2.m();
        // empty set: empty window
        let w = d_window(&[], Entry::new(2, -2), m);
        assert!(w.by_col.is_empty());
        // E(D) = {(1,-1)}, entry (2,-2): window contains (1,-1)
        let w = d_window(&[Entry::new(1, -1)], Entry::new(2, -2), m);
        assert_eq!(w.by_col, vec![Entry::new(1, -1)]);
        assert_eq!(w.sigma, vec![0]);
        // entry (1,2): nothing is strictly above row 1
        let w = d_window(&[Entry::new(1, -1)], Entry::new(1, 2), m);
        assert!(w.by_col.is_empty());
    }

    #[test]
    fn basic_pair_validation() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        let c2 = kind(Family::Symplectic, 2);
        let one = f3.one();
        assert!(BasicPair::new(c2, &[(Root::TwoEps(1), one)]).is_ok());
        assert!(BasicPair::new(c2, &[(Root::TwoEps(1), f3.zero())]).is_err());
        assert!(BasicPair::new(
            c2,
            &[(Root::EpsMinus(1, 2), one), (Root::EpsPlus(1, 2), one)]
        )
        .is_err());
        assert!(BasicPair::new(c2, &[(Root::Eps(1), one)]).is_err());
        // roots are sorted ascending regardless of input order
        let p = BasicPair::new(c2, &[(Root::EpsMinus(1, 2), one), (Root::TwoEps(2), one)]).unwrap();
        assert_eq!(p.roots(), &[Root::TwoEps(2), Root::EpsMinus(1, 2)]);
        assert_eq!(p.key(), "2e2:1,e1-e2:1");
    }
}
