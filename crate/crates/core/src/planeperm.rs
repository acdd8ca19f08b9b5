//! Plane permutations: pairs `(s, pi)` with their diagonal, two-line
//! arrays, localization at a vertex, and inflation back.
//!
//! A plane permutation is a pair `(s, pi)` of permutations of the same
//! ground set. Its *diagonal* is `D = s . pi^-1` (right factor first).
//! Reading the cycles of `s` as rows gives the *two-line array*: the top
//! line lists each `s`-cycle in order, the bottom line carries `pi` of
//! each top entry, and the diagonal is recovered by the pair rule
//! `D(bottom[i]) = top[i + 1]` (cyclically within each row).
//!
//! When `s` is a single cycle the pair is called *cyclic*. Cutting the
//! two-line array down to the columns of a vertex `nu` (a cycle of `pi`)
//! is *localization*; substituting the removed column runs back in is
//! *inflation*. These two operations are mutually inverse and are the
//! device that reduces questions about reembedding one vertex of a map to
//! questions about permutation factorizations on `deg(nu)` symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A pair `(s, pi)` of permutations of `{1, ..., n}`. The number of
/// `s`-cycles is cached because it is consulted constantly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanePermutation {
    s: Permutation,
    pi: Permutation,
    k: usize,
}

impl PlanePermutation {
    /// Pairs `s` with `pi`; the two must live on the same ground set.
    pub fn new(s: Permutation, pi: Permutation) -> Result<Self> {
        if s.size() != pi.size() {
            return Err(Error::SizeMismatch {
                left: s.size(),
                right: pi.size(),
            });
        }
        let k = s.num_cycles();
        Ok(PlanePermutation { s, pi, k })
    }

    /// The first component `s` (face permutation of an embedding).
    pub fn s(&self) -> &Permutation {
        &self.s
    }

    /// The second component `pi` (vertex permutation of an embedding).
    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    /// Ground set size.
    pub fn size(&self) -> usize {
        self.s.size()
    }

    /// Number of `s`-cycles.
    pub fn num_s_cycles(&self) -> usize {
        self.k
    }

    /// True when `s` is a single cycle.
    pub fn is_cyclic(&self) -> bool {
        self.k == 1
    }

    /// The diagonal `D = s . pi^-1`.
    pub fn diagonal(&self) -> Permutation {
        self.s
            .compose(&self.pi.inverse())
            .expect("components have equal size")
    }

    /// Canonical two-line array: `s`-cycles sorted by smallest element,
    /// each row starting at its smallest element.
    pub fn two_line(&self) -> TwoLine {
        let cycles = self
            .s
            .cycles()
            .into_iter()
            .map(|tops| {
                let bottoms = tops.iter().map(|&x| self.pi.apply(x)).collect();
                TwoLineCycle { tops, bottoms }
            })
            .collect();
        TwoLine { cycles }
    }

    /// Cuts the two-line array down to the columns of `nu`, which must be
    /// a single `pi`-cycle (a vertex).
    ///
    /// Column order within each row is inherited from the canonical
    /// two-line array of `self`, so the local array starts at the first
    /// retained column, not necessarily at the smallest label. Rows are
    /// ordered by their smallest contained half-edge. The ground set of
    /// the relabeled local pair is `1..=deg(nu)`; external labels stay
    /// available through [`Localization::labels`] and the local two-line
    /// array.
    pub fn localize(&self, nu: &[usize]) -> Result<Localization> {
        let labels = self.check_vertex(nu)?;
        let nu_set: BTreeSet<usize> = labels.iter().copied().collect();
        let mut rows: Vec<TwoLineCycle> = Vec::new();
        for cycle in self.two_line().cycles {
            let mut tops = Vec::new();
            let mut bottoms = Vec::new();
            for (t, b) in cycle.tops.iter().zip(cycle.bottoms.iter()) {
                if nu_set.contains(t) {
                    // pi maps nu onto nu, so the bottom is retained with it.
                    debug_assert!(nu_set.contains(b));
                    tops.push(*t);
                    bottoms.push(*b);
                }
            }
            if !tops.is_empty() {
                rows.push(TwoLineCycle { tops, bottoms });
            }
        }
        rows.sort_by_key(|row| *row.tops.iter().min().expect("row is non-empty"));
        let q = rows.len();
        let two_line = TwoLine { cycles: rows };
        let (local, table) = two_line.to_plane_permutation()?;
        debug_assert_eq!(table, labels);
        let d_nu = local.diagonal();
        Ok(Localization {
            vertex: labels,
            local,
            two_line,
            d_nu,
            q,
        })
    }

    /// The `|nu|` diagonal blocks that the columns of `nu` cut out of a
    /// cyclic plane permutation, in circular order starting at the first
    /// retained column.
    pub fn diagonal_blocks(&self, nu: &[usize]) -> Result<Vec<DiagonalBlock>> {
        if !self.is_cyclic() {
            return Err(Error::NotCyclic);
        }
        let labels = self.check_vertex(nu)?;
        let nu_set: BTreeSet<usize> = labels.iter().copied().collect();
        let row = &self.two_line().cycles[0];
        Ok(blocks_of_row(row, &nu_set))
    }

    /// Rearranges a cyclic plane permutation by permuting the columns of
    /// its canonical two-line array: column 0 stays put and column `j`
    /// receives old column `h(j)`. The diagonal is unchanged.
    pub fn act(&self, h: &Permutation) -> Result<PlanePermutation> {
        if !self.is_cyclic() {
            return Err(Error::NotCyclic);
        }
        let (p, table) = self.two_line().act(h)?.to_plane_permutation()?;
        debug_assert!(table.iter().enumerate().all(|(i, &x)| x == i + 1));
        Ok(p)
    }

    /// Substitutes a rearranged local array back into `self`.
    ///
    /// `local` must use the half-edges of one vertex `nu` of `self` as its
    /// labels, its bottom row must form a single cycle on `nu` (it is the
    /// new rotation of the vertex), and its diagonal must equal the
    /// diagonal of the localization of `self` at `nu`. Each diagonal pair
    /// of `local` is replaced by the diagonal block of `self` having that
    /// pair as corners; rows of `self` that do not meet `nu` are copied
    /// unchanged.
    pub fn inflate(&self, local: &TwoLine) -> Result<PlanePermutation> {
        let nu = local.labels();
        let loc = self.localize(&nu)?;

        // The new bottom row must be one cycle on nu: it is a vertex rotation.
        let (local_pair, _) = local.to_plane_permutation()?;
        if local_pair.pi().num_cycles() != 1 {
            return Err(Error::InvalidTwoLine(
                "bottom row of the local array must form a single cycle".into(),
            ));
        }

        // Same diagonal, compared on external labels.
        let want = loc.two_line.diagonal_map();
        let got = local.diagonal_map();
        if want != got {
            return Err(Error::DiagonalMismatch(format!(
                "expected {}, got {}",
                format_map(&want),
                format_map(&got)
            )));
        }

        // Diagonal blocks of self keyed by lower corner.
        let nu_set: BTreeSet<usize> = nu.iter().copied().collect();
        let mut middles: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        let mut untouched_rows: Vec<TwoLineCycle> = Vec::new();
        for row in self.two_line().cycles {
            if row.tops.iter().any(|t| nu_set.contains(t)) {
                for block in blocks_of_row(&row, &nu_set) {
                    middles.insert(block.lower, block.columns);
                }
            } else {
                untouched_rows.push(row);
            }
        }

        // Walk the local rows, splicing each block in after its lower corner.
        let mut rows: Vec<TwoLineCycle> = Vec::new();
        for row in &local.cycles {
            let mut tops = Vec::new();
            let mut bottoms = Vec::new();
            for (t, b) in row.tops.iter().zip(row.bottoms.iter()) {
                tops.push(*t);
                bottoms.push(*b);
                for (mt, mb) in middles.remove(b).expect("each corner used once") {
                    tops.push(mt);
                    bottoms.push(mb);
                }
            }
            rows.push(TwoLineCycle { tops, bottoms });
        }
        debug_assert!(middles.is_empty());
        rows.extend(untouched_rows);

        let (inflated, table) = TwoLine { cycles: rows }.to_plane_permutation()?;
        debug_assert_eq!(table.len(), self.size());
        debug_assert_eq!(inflated.diagonal(), self.diagonal());
        Ok(inflated)
    }

    /// Validates that `nu` is a single `pi`-cycle and returns it sorted.
    fn check_vertex(&self, nu: &[usize]) -> Result<Vec<usize>> {
        if nu.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        let mut labels: Vec<usize> = nu.to_vec();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != nu.len() {
            return Err(Error::NotAPiBlock(format!("{nu:?} lists a label twice")));
        }
        for &x in &labels {
            if x == 0 || x > self.size() {
                return Err(Error::LabelOutOfRange {
                    label: x,
                    n: self.size(),
                });
            }
        }
        // One pi-cycle: following pi from the smallest element must visit
        // exactly the requested labels.
        let mut orbit = Vec::with_capacity(labels.len());
        let mut x = labels[0];
        loop {
            orbit.push(x);
            x = self.pi.apply(x);
            if x == labels[0] {
                break;
            }
            if orbit.len() > labels.len() {
                return Err(Error::NotAPiBlock(format!("{labels:?}")));
            }
        }
        orbit.sort_unstable();
        if orbit != labels {
            return Err(Error::NotAPiBlock(format!("{labels:?}")));
        }
        Ok(labels)
    }
}

impl fmt::Debug for PlanePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanePermutation(s={}, pi={})", self.s, self.pi)
    }
}

/// Cuts the diagonal blocks out of one two-line row. Corners are the
/// bottom of each retained column and the top of the next retained column
/// (cyclically); the block carries the full columns strictly in between.
fn blocks_of_row(row: &TwoLineCycle, nu_set: &BTreeSet<usize>) -> Vec<DiagonalBlock> {
    let len = row.tops.len();
    let kept: Vec<usize> = (0..len).filter(|&i| nu_set.contains(&row.tops[i])).collect();
    let mut blocks = Vec::with_capacity(kept.len());
    for (j, &start) in kept.iter().enumerate() {
        let end = kept[(j + 1) % kept.len()];
        let mut columns = Vec::new();
        let mut i = (start + 1) % len;
        while i != end {
            columns.push((row.tops[i], row.bottoms[i]));
            i = (i + 1) % len;
        }
        blocks.push(DiagonalBlock {
            lower: row.bottoms[start],
            upper: row.tops[end],
            columns,
        });
    }
    blocks
}

fn format_map(map: &BTreeMap<usize, usize>) -> String {
    let entries: Vec<String> = map.iter().map(|(k, v)| format!("{k}->{v}")).collect();
    entries.join(" ")
}

/// One row of a two-line array: an `s`-cycle on top, its `pi`-images below.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoLineCycle {
    tops: Vec<usize>,
    bottoms: Vec<usize>,
}

impl TwoLineCycle {
    /// Top entries in row order.
    pub fn tops(&self) -> &[usize] {
        &self.tops
    }

    /// Bottom entries in row order.
    pub fn bottoms(&self) -> &[usize] {
        &self.bottoms
    }
}

/// A two-line array over arbitrary distinct positive labels. This is the
/// label-flexible face of [`PlanePermutation`]: localizations keep their
/// original half-edge names here, and rearranged local arrays are fed to
/// [`PlanePermutation::inflate`] in this form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoLine {
    cycles: Vec<TwoLineCycle>,
}

impl TwoLine {
    /// Builds a two-line array from `(tops, bottoms)` rows, validating
    /// that the bottom entries are a bijection of the top entries.
    pub fn from_rows(rows: Vec<(Vec<usize>, Vec<usize>)>) -> Result<TwoLine> {
        let mut tops_seen = BTreeSet::new();
        let mut bottoms_seen = BTreeSet::new();
        if rows.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        for (tops, bottoms) in &rows {
            if tops.is_empty() {
                return Err(Error::InvalidTwoLine("empty row".into()));
            }
            if tops.len() != bottoms.len() {
                return Err(Error::InvalidTwoLine(format!(
                    "row has {} tops but {} bottoms",
                    tops.len(),
                    bottoms.len()
                )));
            }
            for &x in tops.iter().chain(bottoms.iter()) {
                if x == 0 {
                    return Err(Error::LabelOutOfRange { label: 0, n: 0 });
                }
            }
            for &t in tops {
                if !tops_seen.insert(t) {
                    return Err(Error::DuplicateLabel(t));
                }
            }
            for &b in bottoms {
                if !bottoms_seen.insert(b) {
                    return Err(Error::DuplicateLabel(b));
                }
            }
        }
        if tops_seen != bottoms_seen {
            return Err(Error::InvalidTwoLine(
                "bottom row is not a bijection of the top row".into(),
            ));
        }
        Ok(TwoLine {
            cycles: rows
                .into_iter()
                .map(|(tops, bottoms)| TwoLineCycle { tops, bottoms })
                .collect(),
        })
    }

    /// Rows of the array.
    pub fn cycles(&self) -> &[TwoLineCycle] {
        &self.cycles
    }

    /// All labels, sorted ascending.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels: Vec<usize> = self.cycles.iter().flat_map(|c| c.tops.clone()).collect();
        labels.sort_unstable();
        labels
    }

    /// The diagonal as a map on the array's own labels, obtained by the
    /// pair rule `D(bottom[i]) = top[i + 1]` within each row.
    pub fn diagonal_map(&self) -> BTreeMap<usize, usize> {
        let mut map = BTreeMap::new();
        for row in &self.cycles {
            let len = row.tops.len();
            for i in 0..len {
                map.insert(row.bottoms[i], row.tops[(i + 1) % len]);
            }
        }
        map
    }

    /// Relabels onto `1..=n` (labels taken in increasing order) and
    /// returns the plane permutation together with the label table.
    pub fn to_plane_permutation(&self) -> Result<(PlanePermutation, Vec<usize>)> {
        let table = self.labels();
        let index = |x: usize| -> Result<usize> {
            table
                .binary_search(&x)
                .map(|i| i + 1)
                .map_err(|_| Error::InvalidTwoLine(format!("label {x} missing from top row")))
        };
        let mut s_cycles = Vec::with_capacity(self.cycles.len());
        let mut pi_images = vec![0usize; table.len()];
        for row in &self.cycles {
            let mut cycle = Vec::with_capacity(row.tops.len());
            for (&t, &b) in row.tops.iter().zip(row.bottoms.iter()) {
                let ti = index(t)?;
                cycle.push(ti);
                pi_images[ti - 1] = index(b)?;
            }
            s_cycles.push(cycle);
        }
        let s = Permutation::from_cycles(&s_cycles, table.len())?;
        let pi = Permutation::from_images(pi_images)?;
        Ok((PlanePermutation::new(s, pi)?, table))
    }

    /// Column action for a single-row array: column 0 is fixed and column
    /// `j` receives old column `h(j)`. The new top row is the rearranged
    /// old top row; the new bottom row is recomputed so that the diagonal
    /// stays exactly the same.
    pub fn act(&self, h: &Permutation) -> Result<TwoLine> {
        if self.cycles.len() != 1 {
            return Err(Error::NotCyclic);
        }
        let row = &self.cycles[0];
        let n = row.tops.len();
        if n < 2 {
            return Ok(self.clone());
        }
        if h.size() != n - 1 {
            return Err(Error::SizeMismatch {
                left: h.size(),
                right: n - 1,
            });
        }
        let mut d_inv: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..n {
            d_inv.insert(row.tops[(i + 1) % n], row.bottoms[i]);
        }
        let mut tops = Vec::with_capacity(n);
        tops.push(row.tops[0]);
        for j in 1..n {
            tops.push(row.tops[h.apply(j)]);
        }
        let bottoms = (0..n).map(|j| d_inv[&tops[(j + 1) % n]]).collect();
        Ok(TwoLine {
            cycles: vec![TwoLineCycle { tops, bottoms }],
        })
    }

    /// The generic diagonal block with lower-left corner `lower` (a bottom
    /// entry) and upper-right corner `upper` (a top entry). Both corners
    /// must lie in the same row.
    pub fn block_between(&self, lower: usize, upper: usize) -> Result<DiagonalBlock> {
        for row in &self.cycles {
            let lo = row.bottoms.iter().position(|&b| b == lower);
            let up = row.tops.iter().position(|&t| t == upper);
            match (lo, up) {
                (Some(i), Some(j)) => {
                    let len = row.tops.len();
                    let mut columns = Vec::new();
                    let mut k = (i + 1) % len;
                    while k != j {
                        columns.push((row.tops[k], row.bottoms[k]));
                        k = (k + 1) % len;
                    }
                    return Ok(DiagonalBlock {
                        lower,
                        upper,
                        columns,
                    });
                }
                (None, None) => continue,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "corners {lower} and {upper} lie in different rows"
                    )))
                }
            }
        }
        Err(Error::InvalidArgument(format!(
            "no row has bottom {lower} and top {upper}"
        )))
    }

    /// Renders the array as two aligned text lines. Rows are separated by
    /// `" | "`; the first top and the last bottom of each row (the corner
    /// cells of the cyclic cut) are boxed as `[x]`. Cells are right
    /// aligned within each column.
    pub fn render(&self) -> String {
        let mut top_line = String::new();
        let mut bottom_line = String::new();
        for (r, row) in self.cycles.iter().enumerate() {
            if r > 0 {
                top_line.push_str(" | ");
                bottom_line.push_str(" | ");
            }
            let len = row.tops.len();
            for i in 0..len {
                let top = if i == 0 {
                    format!("[{}]", row.tops[i])
                } else {
                    row.tops[i].to_string()
                };
                let bottom = if i == len - 1 {
                    format!("[{}]", row.bottoms[i])
                } else {
                    row.bottoms[i].to_string()
                };
                let width = top.len().max(bottom.len());
                if i > 0 {
                    top_line.push(' ');
                    bottom_line.push(' ');
                }
                top_line.push_str(&format!("{top:>width$}"));
                bottom_line.push_str(&format!("{bottom:>width$}"));
            }
        }
        format!("{top_line}\n{bottom_line}")
    }
}

/// A maximal run of columns between two retained columns of a cyclic
/// two-line array: the *lower* corner is a bottom entry, the *upper*
/// corner is a top entry, and `columns` lists the full columns strictly
/// in between.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalBlock {
    lower: usize,
    upper: usize,
    columns: Vec<(usize, usize)>,
}

impl DiagonalBlock {
    /// Lower-left corner (a bottom entry).
    pub fn lower(&self) -> usize {
        self.lower
    }

    /// Upper-right corner (a top entry).
    pub fn upper(&self) -> usize {
        self.upper
    }

    /// Full `(top, bottom)` columns strictly between the corners.
    pub fn columns(&self) -> &[(usize, usize)] {
        &self.columns
    }

    /// Top entries spanned by the block, upper corner included.
    pub fn tops_spanned(&self) -> Vec<usize> {
        let mut tops: Vec<usize> = self.columns.iter().map(|&(t, _)| t).collect();
        tops.push(self.upper);
        tops
    }

    /// Bottom entries spanned by the block, lower corner included.
    pub fn bottoms_spanned(&self) -> Vec<usize> {
        let mut bottoms = vec![self.lower];
        bottoms.extend(self.columns.iter().map(|&(_, b)| b));
        bottoms
    }
}

impl fmt::Display for DiagonalBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.lower, self.upper)
    }
}

/// The result of cutting a plane permutation down to one vertex.
#[derive(Clone, Debug)]
pub struct Localization {
    vertex: Vec<usize>,
    local: PlanePermutation,
    two_line: TwoLine,
    d_nu: Permutation,
    q: usize,
}

impl Localization {
    /// The half-edges of the vertex, sorted ascending. These are also the
    /// label table of [`Localization::local`]: external label
    /// `labels()[i - 1]` is internal `i`.
    pub fn labels(&self) -> &[usize] {
        &self.vertex
    }

    /// The local pair `(s_nu, pi_nu)` relabeled onto `1..=deg(nu)`.
    pub fn local(&self) -> &PlanePermutation {
        &self.local
    }

    /// The local two-line array in external labels, column order inherited
    /// from the parent.
    pub fn two_line(&self) -> &TwoLine {
        &self.two_line
    }

    /// The local diagonal `D_nu = s_nu . pi_nu^-1` on the relabeled
    /// ground set.
    pub fn d_nu(&self) -> &Permutation {
        &self.d_nu
    }

    /// `D_nu` printed in external labels.
    pub fn d_nu_external(&self) -> String {
        self.d_nu
            .format_cycles_with(|i| self.vertex[i - 1].to_string())
    }

    /// Number of `s`-cycles meeting the vertex — the number of distinct
    /// incident faces when the pair encodes an embedding.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Cycle type of the local diagonal.
    pub fn lambda(&self) -> crate::perm::CycleType {
        self.d_nu.cycle_type()
    }

    /// Vertex degree.
    pub fn degree(&self) -> usize {
        self.vertex.len()
    }
}
